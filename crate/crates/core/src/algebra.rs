//! Generators and structure constants of the twisted affine Nappi-Witten
//! algebra, in the basis `A = (a+b)`, `B = (a-b)`, `c`, `d`, `k`.
//!
//! `A` lives on even modes, `B`, `c`, `d` on odd modes, and `k` is central.
//! The bracket is `[x(m), y(n)] = [x, y](m+n) + m (x, y) δ_{m+n,0} k`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::scalar::{format_rational, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// `a + b`
    A,
    /// `a - b`
    B,
    C,
    D,
    /// the central element
    K,
}

impl Letter {
    pub fn symbol(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'c',
            Letter::D => 'd',
            Letter::K => 'k',
        }
    }
}

/// One spanning element `x(mode)` of the algebra, parity checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    letter: Letter,
    mode: i64,
}

impl Generator {
    pub fn new(letter: Letter, mode: i64) -> Result<Self, Error> {
        let reason = match letter {
            Letter::A if mode % 2 != 0 => Some("A requires an even mode"),
            Letter::B | Letter::C | Letter::D if mode % 2 == 0 => Some("B, c and d require odd modes"),
            Letter::K if mode != 0 => Some("k has no mode"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::Parity { letter: letter.symbol(), mode, reason }),
            None => Ok(Generator { letter, mode }),
        }
    }

    fn checked(letter: Letter, mode: i64) -> Self {
        Generator::new(letter, mode).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `(a+b)(mode)`; panics on an odd mode.
    pub fn a(mode: i64) -> Self {
        Self::checked(Letter::A, mode)
    }

    /// `(a-b)(mode)`; panics on an even mode.
    pub fn b(mode: i64) -> Self {
        Self::checked(Letter::B, mode)
    }

    /// `c(mode)`; panics on an even mode.
    pub fn c(mode: i64) -> Self {
        Self::checked(Letter::C, mode)
    }

    /// `d(mode)`; panics on an even mode.
    pub fn d(mode: i64) -> Self {
        Self::checked(Letter::D, mode)
    }

    pub fn k() -> Self {
        Generator { letter: Letter::K, mode: 0 }
    }

    pub fn letter(self) -> Letter {
        self.letter
    }

    pub fn mode(self) -> i64 {
        self.mode
    }

    pub fn is_central(self) -> bool {
        self.letter == Letter::K
    }

    /// In the positive part `Ĥ₄[τ]⁽⁺⁾`.
    pub fn is_positive(self) -> bool {
        self.letter != Letter::K && self.mode > 0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.letter {
            Letter::K => f.write_str("k"),
            l => write!(f, "{}({})", l.symbol(), self.mode),
        }
    }
}

/// Every positive generator with mode ≤ `max_mode`, ordered by (mode, letter).
pub fn positive_generators(max_mode: i64) -> Vec<Generator> {
    let mut out = Vec::new();
    for mode in 1..=max_mode {
        if mode % 2 == 0 {
            out.push(Generator::a(mode));
        } else {
            out.extend([Generator::b(mode), Generator::c(mode), Generator::d(mode)]);
        }
    }
    out
}

/// Every non-central generator with `|mode| ≤ max_abs_mode`.
pub fn generators_in_range(max_abs_mode: i64) -> Vec<Generator> {
    let mut out = Vec::new();
    for mode in -max_abs_mode..=max_abs_mode {
        if mode % 2 == 0 {
            out.push(Generator::a(mode));
        } else {
            out.extend([Generator::b(mode), Generator::c(mode), Generator::d(mode)]);
        }
    }
    out
}

/// Finite linear combination of generators; never stores zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    terms: BTreeMap<Generator, Rational>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: Generator, coeff: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(g, coeff);
        e
    }

    pub fn add_term(&mut self, g: Generator, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, scale: &Rational) {
        for (g, c) in &other.terms {
            self.add_term(*g, c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &Generator) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Rational)> {
        self.terms.iter()
    }

    pub fn neg(&self) -> Self {
        LieElement { terms: self.terms.iter().map(|(g, c)| (*g, -c)).collect() }
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{}*{g}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// Bracket of the finite-dimensional letters `A, B, c, d` (no modes).
fn letter_bracket(x: Letter, y: Letter) -> Option<(Letter, i64)> {
    use Letter::*;
    match (x, y) {
        (A, B) => Some((C, -2)),
        (B, A) => Some((C, 2)),
        (D, A) => Some((B, 1)),
        (A, D) => Some((B, -1)),
        (D, B) => Some((A, 1)),
        (B, D) => Some((A, -1)),
        _ => None,
    }
}

/// The invariant form on the letters: `(A,A)=2`, `(B,B)=-2`, `(c,d)=1`.
pub fn invariant_form(x: Letter, y: Letter) -> Result<Rational, Error> {
    use Letter::*;
    let v = match (x, y) {
        (K, _) | (_, K) => return Err(Error::FormOnCentral),
        (A, A) => 2,
        (B, B) => -2,
        (C, D) | (D, C) => 1,
        _ => 0,
    };
    Ok(int(v))
}

/// `[x, y]`, expanded exactly in the generator basis.
pub fn bracket(x: Generator, y: Generator) -> Result<LieElement, Error> {
    // re-validate: generators may come from outside via Copy
    Generator::new(x.letter, x.mode)?;
    Generator::new(y.letter, y.mode)?;
    Ok(bracket_unchecked(x, y))
}

pub(crate) fn bracket_unchecked(x: Generator, y: Generator) -> LieElement {
    let mut out = LieElement::zero();
    if x.is_central() || y.is_central() {
        return out;
    }
    let mode = x.mode + y.mode;
    if let Some((letter, coeff)) = letter_bracket(x.letter, y.letter) {
        out.add_term(Generator { letter, mode }, int(coeff));
    }
    if mode == 0 {
        let form = invariant_form(x.letter, y.letter).expect("non-central letters");
        out.add_term(Generator::k(), form * int(x.mode));
    }
    out
}

/// Bilinear extension of [`bracket`].
pub fn bracket_elements(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (gx, cx) in x.terms() {
        for (gy, cy) in y.terms() {
            out.add_scaled(&bracket_unchecked(*gx, *gy), &(cx * cy));
        }
    }
    out
}

/// A Lie homomorphism `ψ` on the positive part.
///
/// Only `ψ(c(1))`, `ψ((a-b)(1))` and finitely many `ψ(d(m))` may be nonzero;
/// all other positive generators are forced to zero by the bracket relations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WhittakerType {
    c1: Rational,
    sigma1: Rational,
    dvals: BTreeMap<u32, Rational>,
    injected: BTreeMap<Generator, Rational>,
}

impl WhittakerType {
    pub fn new(c1: Rational, sigma1: Rational, dvals: BTreeMap<u32, Rational>) -> Result<Self, Error> {
        if let Some(m) = dvals.keys().find(|m| *m % 2 == 0) {
            return Err(Error::InvalidPsi(format!("d({m}) has an even mode")));
        }
        let dvals = dvals.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(WhittakerType { c1, sigma1, dvals, injected: BTreeMap::new() })
    }

    /// The identically zero homomorphism.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn c1(&self) -> &Rational {
        &self.c1
    }

    pub fn sigma1(&self) -> &Rational {
        &self.sigma1
    }

    pub fn dvals(&self) -> &BTreeMap<u32, Rational> {
        &self.dvals
    }

    /// Nonsingular means `ψ(c(1)) ≠ 0`.
    pub fn is_nonsingular(&self) -> bool {
        !self.c1.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.sigma1.is_zero() && self.dvals.is_empty() && self.injected.is_empty()
    }

    /// Largest mode with a nonzero value.
    pub fn support_bound(&self) -> i64 {
        let d = self.dvals.keys().next_back().copied().unwrap_or(0) as i64;
        d.max(1)
    }

    /// Overrides the value on one generator, bypassing the forced zeros.
    /// Only meant for exercising [`check_homomorphism`].
    #[doc(hidden)]
    pub fn inject_value_for_testing(&mut self, g: Generator, value: Rational) {
        self.injected.insert(g, value);
    }

    pub(crate) fn value(&self, g: Generator) -> Rational {
        if let Some(v) = self.injected.get(&g) {
            return v.clone();
        }
        match (g.letter, g.mode) {
            (Letter::C, 1) => self.c1.clone(),
            (Letter::B, 1) => self.sigma1.clone(),
            (Letter::D, m) => self.dvals.get(&(m as u32)).cloned().unwrap_or_else(Rational::zero),
            _ => Rational::zero(),
        }
    }
}

/// `ψ(g)` for a positive-mode generator.
pub fn psi_eval(psi: &WhittakerType, g: Generator) -> Result<Rational, Error> {
    if !g.is_positive() {
        return Err(Error::NotPositive(g));
    }
    Ok(psi.value(g))
}

/// Checks `ψ([x, y]) = 0` for all positive generator pairs with modes ≤ `mode_bound`.
pub fn check_homomorphism(psi: &WhittakerType, mode_bound: i64) -> bool {
    let gens = positive_generators(mode_bound);
    gens.iter().all(|&x| {
        gens.iter().all(|&y| {
            bracket_unchecked(x, y)
                .terms()
                .fold(Rational::zero(), |acc, (g, c)| acc + c * psi.value(*g))
                .is_zero()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn all_generators(max: i64) -> Vec<Generator> {
        let mut gens = generators_in_range(max);
        gens.push(Generator::k());
        gens
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(
            bracket(Generator::a(2), Generator::a(-2)).unwrap(),
            LieElement::single(Generator::k(), int(4))
        );
        assert_eq!(
            bracket(Generator::a(2), Generator::b(-1)).unwrap(),
            LieElement::single(Generator::c(1), int(-2))
        );
        assert!(bracket(Generator::c(3), Generator::c(-3)).unwrap().is_zero());
        assert_eq!(
            bracket(Generator::d(3), Generator::b(-3)).unwrap(),
            LieElement::single(Generator::a(0), int(1))
        );
        assert_eq!(bracket(Generator::a(2), Generator::b(-1)).unwrap().to_string(), "-2*c(1)");
    }

    #[test]
    fn parity_is_enforced() {
        assert!(Generator::new(Letter::A, 1).is_err());
        assert!(Generator::new(Letter::B, 2).is_err());
        assert!(Generator::new(Letter::C, 0).is_err());
        assert!(Generator::new(Letter::K, 3).is_err());
        let forged = Generator { letter: Letter::A, mode: 3 };
        assert!(bracket(forged, Generator::b(1)).is_err());
    }

    #[test]
    fn form_values() {
        assert_eq!(invariant_form(Letter::A, Letter::A).unwrap(), int(2));
        assert_eq!(invariant_form(Letter::A, Letter::B).unwrap(), int(0));
        assert_eq!(invariant_form(Letter::C, Letter::D).unwrap(), int(1));
        assert_eq!(invariant_form(Letter::B, Letter::B).unwrap(), int(-2));
        assert!(invariant_form(Letter::K, Letter::A).is_err());
        for x in [Letter::A, Letter::B, Letter::C, Letter::D] {
            for y in [Letter::A, Letter::B, Letter::C, Letter::D] {
                assert_eq!(invariant_form(x, y), invariant_form(y, x));
            }
        }
    }

    /// Cross-check the A,B table against the a,b basis relations
    /// `[a,b]=c, [d,a]=a, [d,b]=-b`.
    #[test]
    fn letter_table_matches_ab_basis() {
        // letters as coordinate vectors over (a, b, c, d)
        fn vec_of(l: Letter) -> [i64; 4] {
            match l {
                Letter::A => [1, 1, 0, 0],
                Letter::B => [1, -1, 0, 0],
                Letter::C => [0, 0, 1, 0],
                Letter::D => [0, 0, 0, 1],
                Letter::K => unreachable!(),
            }
        }
        fn br(u: [i64; 4], v: [i64; 4]) -> [i64; 4] {
            // basis brackets: [a,b]=c, [d,a]=a, [d,b]=-b
            let (a1, b1, _, d1) = (u[0], u[1], u[2], u[3]);
            let (a2, b2, _, d2) = (v[0], v[1], v[2], v[3]);
            let c = a1 * b2 - b1 * a2;
            let a = d1 * a2 - a1 * d2;
            let b = -(d1 * b2 - b1 * d2);
            [a, b, c, 0]
        }
        let letters = [Letter::A, Letter::B, Letter::C, Letter::D];
        for x in letters {
            for y in letters {
                let expected = br(vec_of(x), vec_of(y));
                let got = match letter_bracket(x, y) {
                    Some((l, c)) => vec_of(l).map(|e| e * c),
                    None => [0; 4],
                };
                assert_eq!(got, expected, "[{x:?},{y:?}]");
            }
        }
    }

    #[test]
    fn jacobi_and_antisymmetry() {
        let gens = all_generators(4);
        for &x in &gens {
            for &y in &gens {
                let xy = bracket_unchecked(x, y);
                assert_eq!(xy, bracket_unchecked(y, x).neg());
                for (g, _) in xy.terms() {
                    assert!(Generator::new(g.letter(), g.mode()).is_ok());
                }
            }
        }
        let small = all_generators(2);
        for &x in &small {
            for &y in &small {
                for &z in &small {
                    let (ex, ey, ez) = (
                        LieElement::single(x, int(1)),
                        LieElement::single(y, int(1)),
                        LieElement::single(z, int(1)),
                    );
                    let mut sum = bracket_elements(&ex, &bracket_elements(&ey, &ez));
                    sum.add_scaled(&bracket_elements(&ey, &bracket_elements(&ez, &ex)), &int(1));
                    sum.add_scaled(&bracket_elements(&ez, &bracket_elements(&ex, &ey)), &int(1));
                    assert!(sum.is_zero());
                }
            }
        }
    }

    #[test]
    fn psi_evaluation() {
        let psi = WhittakerType::new(int(1), int(0), BTreeMap::new()).unwrap();
        assert_eq!(psi_eval(&psi, Generator::c(1)).unwrap(), int(1));
        assert_eq!(psi_eval(&psi, Generator::a(4)).unwrap(), int(0));
        let psi2 = WhittakerType::new(int(0), int(3), BTreeMap::from([(1, rat(1, 2))])).unwrap();
        assert_eq!(psi_eval(&psi2, Generator::d(1)).unwrap(), rat(1, 2));
        assert_eq!(psi_eval(&psi2, Generator::b(1)).unwrap(), int(3));
        assert_eq!(psi_eval(&psi2, Generator::b(3)).unwrap(), int(0));
        assert!(psi_eval(&psi, Generator::c(-1)).is_err());
        assert!(psi_eval(&psi, Generator::k()).is_err());
        assert!(psi_eval(&psi, Generator::a(0)).is_err());
        assert!(WhittakerType::new(int(0), int(0), BTreeMap::from([(2, int(1))])).is_err());
    }

    #[test]
    fn homomorphism_check() {
        let psi = WhittakerType::new(rat(2, 3), int(5), BTreeMap::from([(1, int(1)), (3, rat(-1, 2))])).unwrap();
        assert!(check_homomorphism(&psi, 10));
        assert!(check_homomorphism(&WhittakerType::zero(), 20));
        let mut bad = psi.clone();
        bad.inject_value_for_testing(Generator::c(3), int(1));
        assert!(!check_homomorphism(&bad, 10));
    }
}
