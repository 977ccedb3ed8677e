//! PBW normal ordering.
//!
//! A basis vector is `k^t (a+b)(-μ̃) (a-b)(-ν) d(-λ) c(-η) ω`, factors in that
//! block order and modes non-increasing inside each block. Any word of
//! generators applied to the cyclic vector is rewritten to this form using
//! the bracket, the central action of `k`, and the Whittaker condition on
//! positive generators that reach `ω`. In a Verma context `(a+b)(0)` is pushed
//! to `ω` as well and acts there by `l`.
//!
//! Two independent reducers exist: [`Rewriter`] acts one generator at a time
//! from the right with memoisation, and [`Strategy::LeftmostSwap`] rewrites
//! whole words by always resolving the leftmost out-of-order pair.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::algebra::{bracket_unchecked, Generator, LieElement, Letter};
use crate::modules::ModuleContext;
use crate::partitions::{EvenPseudoPartition, OddPartition};
use crate::scalar::{format_rational, Coeff, Poly, Rational};

/// One basis monomial of a Whittaker or Verma module.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PBWMonomial {
    pub mu: EvenPseudoPartition,
    pub nu: OddPartition,
    pub lam: OddPartition,
    pub eta: OddPartition,
    pub kexp: u32,
}

/// Sort key of a non-positive, non-central generator inside a monomial.
fn block_key(g: Generator) -> (u8, i64) {
    let block = match g.letter() {
        Letter::A => 0,
        Letter::B => 1,
        Letter::D => 2,
        Letter::C => 3,
        Letter::K => unreachable!("k is never a monomial factor"),
    };
    (block, -g.mode())
}

impl PBWMonomial {
    /// The cyclic vector itself.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mu: EvenPseudoPartition, nu: OddPartition, lam: OddPartition, eta: OddPartition) -> Self {
        PBWMonomial { mu, nu, lam, eta, kexp: 0 }
    }

    pub fn with_kexp(mut self, kexp: u32) -> Self {
        self.kexp = kexp;
        self
    }

    /// `|μ̃| + |ν| + |λ| + |η|`
    pub fn degree(&self) -> u32 {
        self.mu.size() + self.nu.size() + self.lam.size() + self.eta.size()
    }

    /// `#(μ̃, ν, λ, η)`
    pub fn factor_count(&self) -> usize {
        self.mu.count() + self.nu.count() + self.lam.count() + self.eta.count()
    }

    pub fn zero_count(&self) -> usize {
        self.mu.zero_count()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factor_count() == 0 && self.kexp == 0
    }

    /// Factors in canonical order (excluding `k`).
    pub fn factors(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.factor_count());
        out.extend(self.mu.parts().iter().map(|&p| Generator::a(-(p as i64))));
        out.extend(self.nu.parts().iter().map(|&p| Generator::b(-(p as i64))));
        out.extend(self.lam.parts().iter().map(|&p| Generator::d(-(p as i64))));
        out.extend(self.eta.parts().iter().map(|&p| Generator::c(-(p as i64))));
        out
    }

    /// Builds a monomial from commuting-order-free factors; every factor must
    /// be non-central with non-positive mode.
    pub fn from_factors(gens: &[Generator]) -> Self {
        let mut m = PBWMonomial::empty();
        for &g in gens {
            m.insert_factor(g);
        }
        m
    }

    fn insert_factor(&mut self, g: Generator) {
        assert!(g.mode() <= 0 && !g.is_central(), "{g} is not a monomial factor");
        let part = (-g.mode()) as u32;
        match g.letter() {
            Letter::A => self.mu.insert(part),
            Letter::B => self.nu.insert(part),
            Letter::D => self.lam.insert(part),
            Letter::C => self.eta.insert(part),
            Letter::K => unreachable!(),
        }
    }

    /// First factor in canonical order and the remaining monomial.
    fn split_first(&self) -> Option<(Generator, PBWMonomial)> {
        let mut tail = self.clone();
        let g = if let Some(&p) = self.mu.parts().first() {
            tail.mu = self.mu.without_index(0);
            Generator::a(-(p as i64))
        } else if let Some(&p) = self.nu.parts().first() {
            tail.nu = self.nu.without_index(0);
            Generator::b(-(p as i64))
        } else if let Some(&p) = self.lam.parts().first() {
            tail.lam = self.lam.without_index(0);
            Generator::d(-(p as i64))
        } else if let Some(&p) = self.eta.parts().first() {
            tail.eta = self.eta.without_index(0);
            Generator::c(-(p as i64))
        } else {
            return None;
        };
        Some((g, tail))
    }

    fn without_kexp(&self) -> PBWMonomial {
        PBWMonomial { kexp: 0, ..self.clone() }
    }
}

impl Ord for PBWMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.kexp.cmp(&other.kexp))
            .then_with(|| self.mu.cmp(&other.mu))
            .then_with(|| self.nu.cmp(&other.nu))
            .then_with(|| self.lam.cmp(&other.lam))
            .then_with(|| self.eta.cmp(&other.eta))
    }
}

impl PartialOrd for PBWMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Writes `k^t*A(0)^2*B(-1)*w`; equal adjacent factors become powers.
impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kexp {
            0 => {}
            1 => f.write_str("k*")?,
            t => write!(f, "k^{t}*")?,
        }
        let factors = self.factors();
        let mut i = 0;
        while i < factors.len() {
            let run = factors[i..].iter().take_while(|&&g| g == factors[i]).count();
            if run == 1 {
                write!(f, "{}*", factors[i])?;
            } else {
                write!(f, "{}^{run}*", factors[i])?;
            }
            i += run;
        }
        f.write_str("w")
    }
}

/// `degree` as a free function, matching the other operations.
pub fn degree(m: &PBWMonomial) -> u32 {
    m.degree()
}

/// Finite combination of basis monomials. Never stores zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector<C = Rational> {
    terms: BTreeMap<PBWMonomial, C>,
}

impl<C: Coeff> Default for ModuleVector<C> {
    fn default() -> Self {
        ModuleVector { terms: BTreeMap::new() }
    }
}

impl<C: Coeff> ModuleVector<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: PBWMonomial) -> Self {
        Self::term(m, C::one())
    }

    pub fn term(m: PBWMonomial, coeff: C) -> Self {
        let mut v = Self::zero();
        v.add_term(m, coeff);
        v
    }

    /// The cyclic vector `ω` (or `ω̄`, `ω̄̄`).
    pub fn cyclic() -> Self {
        Self::monomial(PBWMonomial::empty())
    }

    pub fn add_term(&mut self, m: PBWMonomial, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = slot.add(&coeff);
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleVector<C>, scale: &C) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.mul(scale));
        }
    }

    pub fn add(&self, other: &ModuleVector<C>) -> ModuleVector<C> {
        let mut out = self.clone();
        out.add_scaled(other, &C::one());
        out
    }

    pub fn sub(&self, other: &ModuleVector<C>) -> ModuleVector<C> {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().neg());
        out
    }

    pub fn scale(&self, s: &C) -> ModuleVector<C> {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &C)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &PBWMonomial> {
        self.terms.keys()
    }

    /// Largest degree among the terms; `None` for the zero vector.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(PBWMonomial::degree).max()
    }

    pub fn max_zero_count(&self) -> Option<usize> {
        self.terms.keys().map(PBWMonomial::zero_count).max()
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&PBWMonomial) -> bool) -> ModuleVector<C> {
        ModuleVector { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    fn shift_kexp(&self, by: u32) -> ModuleVector<C> {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone().with_kexp(m.kexp + by), c.clone()))
                .collect(),
        }
    }
}

impl ModuleVector<Rational> {
    /// Folds `k` exponents into polynomial coefficients.
    pub fn fold_k(&self) -> ModuleVector<Poly> {
        let mut out = ModuleVector::<Poly>::zero();
        for (m, c) in &self.terms {
            out.add_term(m.without_kexp(), Poly::monomial(c.clone(), m.kexp as usize));
        }
        out
    }
}

impl ModuleVector<Poly> {
    /// Inverse of [`ModuleVector::fold_k`]: one rational term per power of `k`.
    pub fn expand_k(&self) -> ModuleVector<Rational> {
        let mut out = ModuleVector::<Rational>::zero();
        for (m, p) in &self.terms {
            for (t, c) in p.coeffs().iter().enumerate() {
                out.add_term(m.clone().with_kexp(m.kexp + t as u32), c.clone());
            }
        }
        out
    }
}

/// Canonical element text, e.g. `3/2*A(0)^2*B(-1)*w + k*c(-3)*w`.
impl fmt::Display for ModuleVector<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &<Rational as Zero>::zero();
            let abs = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !One::is_one(&abs) {
                write!(f, "{}*", format_rational(&abs))?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Display for ModuleVector<Poly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expand_k())
    }
}

/// A scalar times a word of generators, applied to the cyclic vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Word {
    pub scalar: Rational,
    pub gens: Vec<Generator>,
}

impl Word {
    pub fn new(scalar: Rational, gens: Vec<Generator>) -> Self {
        Word { scalar, gens }
    }

    pub fn unit() -> Self {
        Word { scalar: <Rational as One>::one(), gens: Vec::new() }
    }
}

/// Rewrite order used by [`reduce_word`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Apply generators to `ω` from the right, one at a time.
    #[default]
    RightmostFirst,
    /// Repeatedly resolve the leftmost out-of-order adjacent pair in the word.
    LeftmostSwap,
}

/// Memoising generator action on basis monomials of one module context.
pub struct Rewriter<'c> {
    ctx: &'c ModuleContext,
    memo: HashMap<(Generator, PBWMonomial), Rc<ModuleVector>>,
}

impl<'c> Rewriter<'c> {
    pub fn new(ctx: &'c ModuleContext) -> Self {
        Rewriter { ctx, memo: HashMap::new() }
    }

    pub fn context(&self) -> &ModuleContext {
        self.ctx
    }

    /// `g · m` in normal form.
    pub fn apply(&mut self, g: Generator, m: &PBWMonomial) -> Rc<ModuleVector> {
        if m.kexp > 0 {
            let base = self.apply(g, &m.without_kexp());
            return Rc::new(base.shift_kexp(m.kexp));
        }
        let key = (g, m.clone());
        if let Some(hit) = self.memo.get(&key) {
            return Rc::clone(hit);
        }
        let out = Rc::new(self.compute(g, m));
        self.memo.insert(key, Rc::clone(&out));
        out
    }

    fn compute(&mut self, g: Generator, m: &PBWMonomial) -> ModuleVector {
        if g.is_central() {
            return self.central_on(m);
        }
        let absorbing = self.ctx.is_absorbing(g);
        let Some((first, tail)) = m.split_first() else {
            return if absorbing {
                ModuleVector::term(PBWMonomial::empty(), self.ctx.absorb_value(g))
            } else {
                ModuleVector::monomial(PBWMonomial::from_factors(&[g]))
            };
        };
        if !absorbing && block_key(g) <= block_key(first) {
            let mut prepended = m.clone();
            prepended.insert_factor(g);
            return ModuleVector::monomial(prepended);
        }
        // g x t = x (g t) + [g, x] t
        let inner = self.apply(g, &tail);
        let mut out = self.act(first, &inner);
        let commutator = bracket_unchecked(g, first);
        out.add_scaled(&self.act_lie(&commutator, &tail), &<Rational as One>::one());
        out
    }

    fn central_on(&self, m: &PBWMonomial) -> ModuleVector {
        match self.ctx.central_value() {
            None => ModuleVector::monomial(m.clone().with_kexp(m.kexp + 1)),
            Some(xi) => ModuleVector::term(m.clone(), xi.clone()),
        }
    }

    fn act_lie(&mut self, x: &LieElement, m: &PBWMonomial) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (g, c) in x.terms() {
            out.add_scaled(&self.apply(*g, m), c);
        }
        out
    }

    /// Linear extension of [`Rewriter::apply`].
    pub fn act(&mut self, g: Generator, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (m, c) in v.terms() {
            let image = self.apply(g, m);
            out.add_scaled(&image, c);
        }
        out
    }

    /// `x · v` for a Lie algebra element `x`.
    pub fn act_element(&mut self, x: &LieElement, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (g, c) in x.terms() {
            out.add_scaled(&self.act(*g, v), c);
        }
        out
    }

    /// `(g - ψ(g)) · v` for a positive generator.
    pub fn act_shifted(&mut self, g: Generator, v: &ModuleVector) -> ModuleVector {
        let mut out = self.act(g, v);
        out.add_scaled(v, &-self.ctx.psi_value(g));
        out
    }

    /// `w · ω`, applying the word's generators right to left.
    pub fn apply_word(&mut self, word: &Word) -> ModuleVector {
        let mut v = ModuleVector::term(PBWMonomial::empty(), word.scalar.clone());
        for &g in word.gens.iter().rev() {
            v = self.act(g, &v);
        }
        v
    }
}

/// Normal form of `w · ω` in `ctx`.
pub fn reduce_word(w: &Word, ctx: &ModuleContext, strategy: Strategy) -> ModuleVector {
    match strategy {
        Strategy::RightmostFirst => Rewriter::new(ctx).apply_word(w),
        Strategy::LeftmostSwap => reduce_word_counting(w, ctx).0,
    }
}

/// `g · v` in `ctx`.
pub fn act(g: Generator, v: &ModuleVector, ctx: &ModuleContext) -> ModuleVector {
    Rewriter::new(ctx).act(g, v)
}

struct PendingTerm {
    coeff: Rational,
    kexp: u32,
    gens: Vec<Generator>,
}

/// Leftmost-swap reduction, also returning the number of rewrite steps taken.
pub fn reduce_word_counting(w: &Word, ctx: &ModuleContext) -> (ModuleVector, usize) {
    let mut out = ModuleVector::zero();
    let mut steps = 0usize;
    let mut stack = vec![PendingTerm { coeff: w.scalar.clone(), kexp: 0, gens: w.gens.clone() }];
    let out_of_order = |x: Generator, y: Generator| match (ctx.is_absorbing(x), ctx.is_absorbing(y)) {
        (true, false) => true,
        (false, false) => block_key(x) > block_key(y),
        _ => false,
    };
    while let Some(mut term) = stack.pop() {
        if Zero::is_zero(&term.coeff) {
            continue;
        }
        steps += 1;
        if let Some(pos) = term.gens.iter().position(|g| g.is_central()) {
            term.gens.remove(pos);
            match ctx.central_value() {
                None => term.kexp += 1,
                Some(xi) => term.coeff *= xi,
            }
            stack.push(term);
            continue;
        }
        if let Some(&last) = term.gens.last() {
            if ctx.is_absorbing(last) {
                term.gens.pop();
                term.coeff *= ctx.absorb_value(last);
                stack.push(term);
                continue;
            }
        }
        let swap_at = (0..term.gens.len().saturating_sub(1)).find(|&i| out_of_order(term.gens[i], term.gens[i + 1]));
        match swap_at {
            Some(i) => {
                let (x, y) = (term.gens[i], term.gens[i + 1]);
                for (h, c) in bracket_unchecked(x, y).terms() {
                    let mut gens = Vec::with_capacity(term.gens.len() - 1);
                    gens.extend_from_slice(&term.gens[..i]);
                    gens.push(*h);
                    gens.extend_from_slice(&term.gens[i + 2..]);
                    stack.push(PendingTerm { coeff: &term.coeff * c, kexp: term.kexp, gens });
                }
                term.gens.swap(i, i + 1);
                stack.push(term);
            }
            None => {
                let m = PBWMonomial::from_factors(&term.gens).with_kexp(term.kexp);
                out.add_term(m, term.coeff);
            }
        }
    }
    (out, steps)
}
