//! The element text grammar.
//!
//! ```text
//! element := term (('+' | '-') term)*
//! term    := sign? scalar? ('*' factor)* 'w'      (the first '*' is omitted without a scalar)
//! factor  := generator ('^' posint)? | 'k' ('^' posint)?
//! scalar  := rational | '(' polynomial in k ')'
//! ```
//!
//! `E` and `F` are accepted for `A` and `B` on input. The output side is the
//! `Display` impl of [`ModuleVector`].

use num_traits::One;

use crate::algebra::{Generator, Letter};
use crate::envelope::{ModuleVector, Word};
use crate::error::Error;
use crate::modules::ModuleContext;
use crate::scalar::{parse_rational, Rational};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let sign_len = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign_len..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        self.pos += sign_len + digits;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Syntax { offset: start, message: "integer out of range".into() })
    }

    fn exponent(&mut self) -> Result<u32, Error> {
        if !self.eat('^') {
            return Ok(1);
        }
        self.skip_ws();
        let start = self.pos;
        let e = self.integer()?;
        if e < 1 || self.src[start..].starts_with(['-', '+']) {
            return Err(Error::Syntax { offset: start, message: "exponent must be a positive integer".into() });
        }
        u32::try_from(e).map_err(|_| Error::Syntax { offset: start, message: "exponent too large".into() })
    }

    /// An unsigned rational `p` or `p/q`.
    fn rational(&mut self) -> Result<Rational, Error> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let mut len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        if rest[len..].starts_with('/') {
            let den = rest[len + 1..].bytes().take_while(u8::is_ascii_digit).count();
            if den == 0 {
                return Err(Error::Syntax { offset: start + len + 1, message: "expected a denominator".into() });
            }
            len += 1 + den;
        }
        self.pos += len;
        parse_rational(&self.src[start..self.pos])
            .ok_or(Error::Syntax { offset: start, message: "zero denominator".into() })
    }

    /// Letter of a generator starting here, if any.
    fn letter(&self) -> Option<Letter> {
        let mut chars = self.rest().chars();
        let letter = match chars.next()? {
            'A' | 'E' => Letter::A,
            'B' | 'F' => Letter::B,
            'c' => Letter::C,
            'd' => Letter::D,
            'k' => return Some(Letter::K),
            _ => return None,
        };
        (chars.next() == Some('(')).then_some(letter)
    }

    fn generator(&mut self) -> Result<Generator, Error> {
        self.skip_ws();
        let start = self.pos;
        let letter = self.letter().ok_or_else(|| self.error("expected a generator"))?;
        self.pos += 1;
        if letter == Letter::K {
            return Ok(Generator::k());
        }
        self.expect('(')?;
        let mode = self.integer()?;
        self.expect(')')?;
        Generator::new(letter, mode).map_err(|e| Error::ParityAt { offset: start, message: e.to_string() })
    }

    /// `scalar := rational | '(' polynomial ')'`, as a list of `(coeff, k power)`.
    fn scalar(&mut self) -> Result<Vec<(Rational, u32)>, Error> {
        if !self.eat('(') {
            return Ok(vec![(self.rational()?, 0)]);
        }
        let mut out = Vec::new();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else {
                if !self.eat('+') && !first {
                    break;
                }
                false
            };
            first = false;
            self.skip_ws();
            let mut coeff = <Rational as One>::one();
            let mut power = 0;
            let mut has_coeff = false;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                coeff = self.rational()?;
                has_coeff = true;
                if self.eat('*') {
                    self.skip_ws();
                    if self.peek() != Some('k') {
                        return Err(self.error("expected 'k'"));
                    }
                }
            }
            self.skip_ws();
            if self.peek() == Some('k') {
                self.pos += 1;
                power = self.exponent()?;
            } else if !has_coeff {
                return Err(self.error("expected a coefficient or 'k'"));
            }
            out.push((if negative { -coeff } else { coeff }, power));
        }
        self.expect(')')?;
        Ok(out)
    }

    /// One term, already signed; expands a polynomial scalar into words.
    fn term(&mut self, negative: bool) -> Result<Vec<Word>, Error> {
        self.skip_ws();
        let scalars = if self.peek().is_some_and(|c| c.is_ascii_digit() || c == '(') {
            let s = self.scalar()?;
            self.skip_ws();
            if self.peek() != Some('*') {
                return Err(self.error("expected '*' after the scalar"));
            }
            self.pos += 1;
            s
        } else {
            vec![(<Rational as One>::one(), 0)]
        };
        let mut gens = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() == Some('w') {
                self.pos += 1;
                break;
            }
            let g = self.generator()?;
            let e = self.exponent()?;
            gens.extend(std::iter::repeat_n(g, e as usize));
            self.expect('*').map_err(|_| self.error("expected '*' or 'w'"))?;
        }
        Ok(scalars
            .into_iter()
            .map(|(c, power)| {
                let mut word = std::iter::repeat_n(Generator::k(), power as usize).collect::<Vec<_>>();
                word.extend(gens.iter().copied());
                Word::new(if negative { -c } else { c }, word)
            })
            .collect())
    }
}

/// Parses `A(n)`, `B(n)`, `c(n)`, `d(n)` or `k`, checking mode parity.
pub fn parse_generator(text: &str) -> Result<Generator, Error> {
    let mut p = Parser::new(text);
    let g = p.generator()?;
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(g)
}

/// Parses an element into a sum of words applied to the cyclic vector.
pub fn parse_element(text: &str) -> Result<Vec<Word>, Error> {
    let mut p = Parser::new(text);
    let mut words = Vec::new();
    if p.eat('0') && p.at_end() {
        return Ok(words);
    }
    p.pos = 0;
    let mut negative = p.eat('-');
    loop {
        words.extend(p.term(negative)?);
        if p.at_end() {
            break;
        }
        negative = if p.eat('-') {
            true
        } else if p.eat('+') {
            false
        } else {
            return Err(p.error("expected '+', '-' or end of input"));
        };
    }
    Ok(words)
}

/// Normal form of a parsed element in `ctx`.
pub fn evaluate(words: &[Word], ctx: &ModuleContext) -> ModuleVector {
    let mut rw = crate::envelope::Rewriter::new(ctx);
    let mut out = ModuleVector::zero();
    for w in words {
        out = out.add(&rw.apply_word(w));
    }
    out
}

/// Parses and normal-orders in one step.
pub fn parse_vector(text: &str, ctx: &ModuleContext) -> Result<ModuleVector, Error> {
    let v = evaluate(&parse_element(text)?, ctx);
    if let Some(m) = v.monomials().find(|m| !ctx.allows(m)) {
        return Err(Error::IllegalMonomial(m.to_string()));
    }
    Ok(v)
}

/// Canonical text of a vector.
pub fn format_element(v: &ModuleVector) -> String {
    v.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::WhittakerType;
    use crate::envelope::PBWMonomial;
    use crate::partitions::{EvenPseudoPartition, OddPartition};
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn universal() -> ModuleContext {
        ModuleContext::Universal { psi: WhittakerType::zero() }
    }

    #[test]
    fn examples() {
        assert_eq!(parse_element("w").unwrap(), vec![Word::unit()]);
        assert_eq!(
            parse_element("3/2*A(0)^2*c(-1)*w").unwrap(),
            vec![Word::new(rat(3, 2), vec![Generator::a(0), Generator::a(0), Generator::c(-1)])]
        );
        assert!(matches!(parse_element("A(1)*w"), Err(Error::ParityAt { offset: 0, .. })));
        assert!(matches!(parse_element("2*w + B(2)*w"), Err(Error::ParityAt { offset: 6, .. })));
    }

    #[test]
    fn aliases_and_signs() {
        let words = parse_element("-E(2)*F(-1)*w + 1/3*w").unwrap();
        assert_eq!(words[0], Word::new(int(-1), vec![Generator::a(2), Generator::b(-1)]));
        assert_eq!(words[1], Word::new(rat(1, 3), vec![]));
    }

    #[test]
    fn polynomial_scalars() {
        let words = parse_element("(2*k^2 - k + 3)*c(-1)*w").unwrap();
        let v = evaluate(&words, &universal());
        assert_eq!(v.to_string(), "3*c(-1)*w - k*c(-1)*w + 2*k^2*c(-1)*w");
        let v = evaluate(&parse_element("k*c(-3)*w").unwrap(), &universal());
        assert_eq!(v.to_string(), "k*c(-3)*w");
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        for (text, offset) in [("", 0), ("3*", 2), ("A(2", 3), ("A(2)*w +", 8), ("2 w", 2), ("A(x)*w", 2), ("3/0*w", 0)] {
            match parse_element(text) {
                Err(Error::Syntax { offset: o, .. }) => assert_eq!(o, offset, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn generators() {
        assert_eq!(parse_generator("A(-2)").unwrap(), Generator::a(-2));
        assert_eq!(parse_generator(" d(3) ").unwrap(), Generator::d(3));
        assert_eq!(parse_generator("k").unwrap(), Generator::k());
        assert!(parse_generator("c(2)").is_err());
        assert!(parse_generator("A(2) x").is_err());
    }

    #[test]
    fn zero_and_illegal() {
        assert!(parse_element("0").unwrap().is_empty());
        let q = ModuleContext::Quotient { psi: WhittakerType::zero(), xi: int(1) };
        assert!(parse_vector("k*w", &q).unwrap() == ModuleVector::term(PBWMonomial::empty(), int(1)));
        let v = ModuleContext::Verma { xi: int(1), l: int(3) };
        assert_eq!(parse_vector("A(0)*w", &v).unwrap().to_string(), "3*w");
    }

    fn odd_partition() -> impl Strategy<Value = OddPartition> {
        prop::collection::vec(0u32..3, 0..3).prop_map(|v| OddPartition::new(v.into_iter().map(|x| 2 * x + 1).collect()).unwrap())
    }

    fn monomial() -> impl Strategy<Value = PBWMonomial> {
        (prop::collection::vec(0u32..3, 0..3), odd_partition(), odd_partition(), odd_partition(), 0u32..3).prop_map(
            |(mu, nu, lam, eta, kexp)| {
                let mu = EvenPseudoPartition::new(mu.into_iter().map(|x| 2 * x).collect()).unwrap();
                PBWMonomial::new(mu, nu, lam, eta).with_kexp(kexp)
            },
        )
    }

    fn element() -> impl Strategy<Value = ModuleVector> {
        prop::collection::vec((monomial(), -20i64..20, 1i64..6), 0..5).prop_map(|terms| {
            let mut v = ModuleVector::zero();
            for (m, n, d) in terms {
                v.add_term(m, rat(n, d));
            }
            v
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn parse_format_round_trip(v in element()) {
            let text = format_element(&v);
            let back = evaluate(&parse_element(&text).unwrap(), &universal());
            prop_assert_eq!(&back, &v);
            prop_assert_eq!(format_element(&back), text);
        }
    }
}
