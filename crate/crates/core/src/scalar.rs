//! Exact coefficient rings: rationals, polynomials in the central variable `k`,
//! and rational functions in `k`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds a rational from a small numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Ring operations needed by module vectors and matrix assembly.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// Pivot preference during elimination; smaller is preferred.
    fn pivot_weight(&self) -> usize {
        0
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A coefficient ring that is a field.
pub trait Field: Coeff {
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn pivot_weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Polynomial in `k` with rational coefficients, lowest degree first.
///
/// Never stores trailing zero coefficients; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(q: Rational) -> Self {
        Poly::new(vec![q])
    }

    /// The variable `k`.
    pub fn k() -> Self {
        Poly::monomial(<Rational as One>::one(), 1)
    }

    /// `q * k^exp`
    pub fn monomial(q: Rational, exp: usize) -> Self {
        let mut coeffs = vec![<Rational as Zero>::zero(); exp + 1];
        coeffs[exp] = q;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> Rational {
        self.coeffs.get(exp).cloned().unwrap_or_else(Zero::zero)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, q: &Rational) -> Poly {
        if Zero::is_zero(q) {
            return Poly::default();
        }
        Poly { coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(<Rational as Zero>::zero(), |acc, c| acc * at + c)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => Poly::default(),
        }
    }

    /// Polynomial long division: `(quotient, remainder)`.
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::default(), self.clone());
        }
        let mut quot = vec![<Rational as Zero>::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let factor = &rem[i + dd] * &lead_inv;
            if Zero::is_zero(&factor) {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &factor * dc;
            }
            quot[i] = factor;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !Coeff::is_zero(&y) {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        Coeff::is_zero(&r).then_some(q)
    }

    /// Lowest common multiple of the coefficient denominators.
    fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Rational multiple making the coefficients coprime integers with a
    /// positive leading coefficient.
    pub fn primitive_scale(&self) -> Rational {
        if Coeff::is_zero(self) {
            return <Rational as One>::one();
        }
        let den = self.denominator_lcm();
        let g = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
        let sign = if self.leading().is_some_and(Signed::is_negative) { -1 } else { 1 };
        Rational::new(den * sign, g)
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::constant(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::default();
        }
        let mut out = vec![<Rational as Zero>::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
    fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        Poly::constant(q.clone())
    }
    fn pivot_weight(&self) -> usize {
        self.degree().unwrap_or(0)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Writes `k^2 - 3/2*k + 1` style text; zero prints as `0`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let var = match exp {
                0 => String::new(),
                1 => "k".to_string(),
                e => format!("k^{e}"),
            };
            if var.is_empty() {
                f.write_str(&format_rational(&abs))?;
            } else if One::is_one(&abs) {
                f.write_str(&var)?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), var)?;
            }
        }
        Ok(())
    }
}

/// Reduced fraction of polynomials in `k` with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!Coeff::is_zero(&den), "zero denominator");
        if Coeff::is_zero(&num) {
            return RatFunc { num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let lead = den.leading().expect("nonzero").recip();
        num = num.scale(&lead);
        den = den.scale(&lead);
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    /// Evaluates at a point; `None` if the denominator vanishes there.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        Coeff::is_zero(&self.num)
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_rational(q: &Rational) -> Self {
        RatFunc::from_poly(Poly::constant(q.clone()))
    }
    fn pivot_weight(&self) -> usize {
        self.num.pivot_weight() + self.den.pivot_weight()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// A coefficient of any of the three kinds, used at the text boundary.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    PolyK(Poly),
    RatFuncK(RatFunc),
}

impl Scalar {
    /// Widens to a polynomial; rational functions with a non-constant
    /// denominator are rejected.
    pub fn to_poly(&self) -> Option<Poly> {
        match self {
            Scalar::Rational(q) => Some(Poly::constant(q.clone())),
            Scalar::PolyK(p) => Some(p.clone()),
            Scalar::RatFuncK(r) => r.denom().is_one().then(|| r.numer().clone()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => f.write_str(&format_rational(q)),
            Scalar::PolyK(p) => write!(f, "{p}"),
            Scalar::RatFuncK(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(parse_rational("3/2"), Some(rat(3, 2)));
        assert_eq!(parse_rational("-4/6"), Some(rat(-2, 3)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rat(-2, 3)), "-2/3");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn poly_trims_and_divides() {
        let a = Poly::new(vec![int(1), int(0), int(0)]);
        assert_eq!(a.degree(), Some(0));
        // (k^2 - 1) / (k - 1) = k + 1
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1]));
        assert!(Coeff::is_zero(&r));
        assert_eq!(Poly::gcd(&p(&[-1, 0, 1]), &p(&[2, 2])), p(&[1, 1]));
        assert_eq!(p(&[1, -3, 2]).to_string(), "2*k^2 - 3*k + 1");
        assert_eq!(p(&[]).to_string(), "0");
    }

    #[test]
    fn primitive_scale_clears_denominators() {
        let q = Poly::new(vec![rat(1, 2), rat(-3, 4)]);
        let s = q.primitive_scale();
        assert_eq!(q.scale(&s), Poly::new(vec![int(-2), int(3)]));
    }

    #[test]
    fn ratfunc_reduces() {
        let r = RatFunc::new(p(&[-1, 0, 1]), p(&[-2, 2]));
        assert_eq!(r.numer(), &Poly::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(r.denom(), &Poly::one());
        let s = RatFunc::new(p(&[1]), p(&[0, 2]));
        assert_eq!(s.denom(), &p(&[0, 1]));
        assert_eq!(s.eval(&int(0)), None);
        assert_eq!(s.eval(&int(2)), Some(rat(1, 4)));
        assert!(Coeff::is_zero(&r.sub(&r)));
        assert_eq!(r.mul(&r.inv()), RatFunc::one());
    }

    /// Ring laws over small operand sets for all three kinds.
    #[test]
    fn ring_laws_on_small_operands() {
        let qs: Vec<Rational> = vec![int(0), int(1), rat(-1, 2), rat(3, 5)];
        let ps: Vec<Poly> = vec![p(&[]), p(&[1]), p(&[0, 1]), p(&[-1, 0, 2]), Poly::new(vec![rat(1, 3), int(-1)])];
        let fs: Vec<RatFunc> = vec![
            RatFunc::zero(),
            RatFunc::one(),
            RatFunc::new(p(&[1]), p(&[0, 1])),
            RatFunc::new(p(&[1, 1]), p(&[-1, 1])),
        ];
        check_laws(&qs);
        check_laws(&ps);
        check_laws(&fs);
    }

    fn check_laws<C: Coeff>(xs: &[C]) {
        for a in xs {
            for b in xs {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                assert_eq!(a.sub(b).add(b), *a);
                for c in xs {
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
            }
        }
    }
}
