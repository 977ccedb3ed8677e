//! Module contexts, truncated bases, and truncated submodule generation.

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;

use crate::algebra::{generators_in_range, Generator, Letter, WhittakerType};
use crate::envelope::{ModuleVector, PBWMonomial, Rewriter};
use crate::linalg::SpanBasis;
use crate::partitions::{enumerate_even_pseudopartitions, enumerate_odd_partitions};
use crate::scalar::Rational;

/// Which module the computation happens in.
#[derive(Clone, Debug, PartialEq)]
pub enum ModuleContext {
    /// The universal Whittaker module `M_ψ`; `k` acts freely.
    Universal { psi: WhittakerType },
    /// `L_{ψ,ξ} = M_ψ / (k - ξ) M_ψ`.
    Quotient { psi: WhittakerType, xi: Rational },
    /// `M(ξ, l) = L_{0,ξ} / U·((a+b)(0) - l)ω̄`.
    Verma { xi: Rational, l: Rational },
}

impl ModuleContext {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ModuleContext::Universal { .. } => "universal",
            ModuleContext::Quotient { .. } => "quotient",
            ModuleContext::Verma { .. } => "verma",
        }
    }

    /// `ψ(g)` for a positive generator; zero in a Verma module.
    pub fn psi_value(&self, g: Generator) -> Rational {
        match self {
            ModuleContext::Universal { psi } | ModuleContext::Quotient { psi, .. } => psi.value(g),
            ModuleContext::Verma { .. } => Rational::zero(),
        }
    }

    pub fn psi(&self) -> WhittakerType {
        match self {
            ModuleContext::Universal { psi } | ModuleContext::Quotient { psi, .. } => psi.clone(),
            ModuleContext::Verma { .. } => WhittakerType::zero(),
        }
    }

    /// The scalar by which `k` acts, or `None` when `k` acts freely.
    pub fn central_value(&self) -> Option<&Rational> {
        match self {
            ModuleContext::Universal { .. } => None,
            ModuleContext::Quotient { xi, .. } | ModuleContext::Verma { xi, .. } => Some(xi),
        }
    }

    /// Generators that are moved right onto the cyclic vector and evaluated.
    pub fn is_absorbing(&self, g: Generator) -> bool {
        g.is_positive() || (matches!(self, ModuleContext::Verma { .. }) && g.letter() == Letter::A && g.mode() == 0)
    }

    pub(crate) fn absorb_value(&self, g: Generator) -> Rational {
        match self {
            ModuleContext::Verma { l, .. } if g.mode() == 0 => l.clone(),
            _ => self.psi_value(g),
        }
    }

    /// Whether a monomial is a basis element of this module.
    pub fn allows(&self, m: &PBWMonomial) -> bool {
        match self {
            ModuleContext::Universal { .. } => true,
            ModuleContext::Quotient { .. } => m.kexp == 0,
            ModuleContext::Verma { .. } => m.kexp == 0 && m.zero_count() == 0,
        }
    }
}

/// A finite window onto an infinite-dimensional module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub max_degree: u32,
    /// Cap on `μ(0)`, the exponent of `(a+b)(0)`.
    pub a0_cap: usize,
    /// Cap on the `k` exponent; ignored outside the universal module.
    pub kexp_cap: u32,
}

impl Truncation {
    pub fn new(max_degree: u32, a0_cap: usize) -> Self {
        Truncation { max_degree, a0_cap, kexp_cap: 0 }
    }

    pub fn with_kexp_cap(mut self, kexp_cap: u32) -> Self {
        self.kexp_cap = kexp_cap;
        self
    }

    pub fn contains(&self, m: &PBWMonomial) -> bool {
        m.degree() <= self.max_degree && m.zero_count() <= self.a0_cap && m.kexp <= self.kexp_cap
    }
}

/// Every basis monomial of `ctx` inside the window, in canonical order.
pub fn basis(ctx: &ModuleContext, tr: &Truncation) -> Vec<PBWMonomial> {
    let n = tr.max_degree;
    let zero_cap = match ctx {
        ModuleContext::Verma { .. } => 0,
        _ => tr.a0_cap,
    };
    let kexp_cap = match ctx {
        ModuleContext::Universal { .. } => tr.kexp_cap,
        _ => 0,
    };
    let mus = enumerate_even_pseudopartitions(n, zero_cap);
    let odds = enumerate_odd_partitions(n);
    let mut out = Vec::new();
    for mu in &mus {
        for nu in odds.iter().take_while(|p| mu.size() + p.size() <= n) {
            for lam in odds.iter().take_while(|p| mu.size() + nu.size() + p.size() <= n) {
                for eta in odds.iter().take_while(|p| mu.size() + nu.size() + lam.size() + p.size() <= n) {
                    for kexp in 0..=kexp_cap {
                        out.push(PBWMonomial::new(mu.clone(), nu.clone(), lam.clone(), eta.clone()).with_kexp(kexp));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// A truncated submodule: the span accumulated by [`submodule_closure`].
#[derive(Clone, Debug)]
pub struct Closure {
    basis: Vec<PBWMonomial>,
    index: HashMap<PBWMonomial, usize>,
    span: SpanBasis<Rational>,
}

impl Closure {
    fn new(basis: Vec<PBWMonomial>) -> Self {
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let span = SpanBasis::new(basis.len());
        Closure { basis, index, span }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PBWMonomial] {
        &self.basis
    }

    /// Coordinates over the window basis; components outside are dropped.
    pub fn coordinates(&self, v: &ModuleVector) -> Vec<(usize, Rational)> {
        let mut coords: Vec<(usize, Rational)> = v
            .terms()
            .filter_map(|(m, c)| self.index.get(m).map(|&i| (i, c.clone())))
            .collect();
        coords.sort_by_key(|(i, _)| *i);
        coords
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.span.contains_sparse(&self.coordinates(v))
    }

    fn insert(&mut self, v: &ModuleVector) -> bool {
        self.span.insert_sparse(self.coordinates(v))
    }

    /// The span's basis as module vectors.
    pub fn vectors(&self) -> Vec<ModuleVector> {
        self.span
            .vectors()
            .into_iter()
            .map(|dense| {
                let mut v = ModuleVector::zero();
                for (i, c) in dense.into_iter().enumerate() {
                    v.add_term(self.basis[i].clone(), c);
                }
                v
            })
            .collect()
    }

    /// Number of span dimensions living in each degree, assuming the span is
    /// spanned by homogeneous vectors (true for graded modules such as ψ = 0).
    pub fn graded_dims(&self) -> Vec<usize> {
        let top = self.basis.iter().map(PBWMonomial::degree).max().unwrap_or(0) as usize;
        let mut dims = vec![0; top + 1];
        for d in 0..=top {
            let mut s = SpanBasis::<Rational>::new(self.basis.len());
            for v in self.span.vectors() {
                let homogeneous: Vec<Rational> = v
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| if self.basis[i].degree() as usize == d { c } else { Rational::zero() })
                    .collect();
                s.insert(&homogeneous);
            }
            dims[d] = s.dim();
        }
        dims
    }
}

/// Generators used by [`submodule_closure`]: `k` and every generator with
/// `|mode| ≤ mode_bound`.
pub fn closure_generators(mode_bound: i64) -> Vec<Generator> {
    let mut gens = generators_in_range(mode_bound);
    gens.push(Generator::k());
    gens
}

/// Least span containing `seeds` and closed under `k` and all generators with
/// `|mode| ≤ mode_bound`, with images projected onto the window.
///
/// The projection drops out-of-window components, so the result is only a
/// lower approximation when the true submodule is not spanned by monomials.
pub fn submodule_closure(seeds: &[ModuleVector], ctx: &ModuleContext, tr: &Truncation, mode_bound: i64) -> Closure {
    submodule_closure_with(seeds, ctx, tr, &closure_generators(mode_bound))
}

/// [`submodule_closure`] with an explicit generator set.
pub fn submodule_closure_with(seeds: &[ModuleVector], ctx: &ModuleContext, tr: &Truncation, gens: &[Generator]) -> Closure {
    let mut closure = Closure::new(basis(ctx, tr));
    let mut rewriter = Rewriter::new(ctx);
    let mut queue: VecDeque<ModuleVector> = seeds.iter().map(|s| s.filter(|m| tr.contains(m))).collect();
    while let Some(v) = queue.pop_front() {
        if v.is_zero() || !closure.insert(&v) {
            continue;
        }
        for &g in gens {
            let image = rewriter.act(g, &v).filter(|m| tr.contains(m) && ctx.allows(m));
            if !image.is_zero() {
                queue.push_back(image);
            }
        }
    }
    closure
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{count_even_partitions, count_odd_partitions, EvenPseudoPartition, OddPartition};
    use crate::scalar::int;
    use std::collections::BTreeMap;

    fn q_ctx(xi: i64) -> ModuleContext {
        ModuleContext::Quotient { psi: WhittakerType::new(int(1), int(0), BTreeMap::new()).unwrap(), xi: int(xi) }
    }

    fn single(g: Generator) -> PBWMonomial {
        PBWMonomial::from_factors(&[g])
    }

    #[test]
    fn basis_examples() {
        let b = basis(&q_ctx(1), &Truncation::new(0, 1));
        assert_eq!(b, vec![PBWMonomial::empty(), single(Generator::a(0))]);

        let v = basis(&ModuleContext::Verma { xi: int(0), l: int(1) }, &Truncation::new(1, 5));
        assert_eq!(v.len(), 4);
        for g in [Generator::b(-1), Generator::d(-1), Generator::c(-1)] {
            assert!(v.contains(&single(g)));
        }

        let b = basis(&q_ctx(1), &Truncation::new(2, 0));
        assert_eq!(b.len(), 11);
        assert!(b.contains(&single(Generator::a(-2))));
        assert!(b.contains(&PBWMonomial::from_factors(&[Generator::b(-1), Generator::c(-1)])));
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn universal_basis_has_k_powers() {
        let ctx = ModuleContext::Universal { psi: WhittakerType::zero() };
        let b = basis(&ctx, &Truncation::new(1, 0).with_kexp_cap(2));
        assert_eq!(b.len(), 4 * 3);
    }

    /// Degree-n basis counts against a convolution of partition counts.
    #[test]
    fn basis_counts_match_convolution() {
        for t in 0..=3usize {
            let b = basis(&q_ctx(1), &Truncation::new(10, t));
            let odd: Vec<u64> = (0..=10).map(count_odd_partitions).collect();
            let even: Vec<u64> = (0..=10).map(count_even_partitions).collect();
            let conv = |a: &[u64], b: &[u64]| -> Vec<u64> {
                (0..=10).map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum()).collect()
            };
            let total = conv(&conv(&conv(&even, &odd), &odd), &odd);
            for n in 0..=10u32 {
                let listed = b.iter().filter(|m| m.degree() == n).count() as u64;
                assert_eq!(listed, total[n as usize] * (t as u64 + 1), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn cyclic_seed_generates_window() {
        let ctx = q_ctx(1);
        let tr = Truncation::new(3, 1);
        let c = submodule_closure(&[ModuleVector::cyclic()], &ctx, &tr, 4);
        assert_eq!(c.dim(), c.ambient_dim());
    }

    #[test]
    fn level_zero_maximal_window() {
        let ctx = ModuleContext::Quotient { psi: WhittakerType::zero(), xi: int(0) };
        let tr = Truncation::new(3, 1);
        let seeds: Vec<ModuleVector> = enumerate_odd_partitions(3)
            .into_iter()
            .filter(|lam| !lam.is_empty())
            .map(|lam| ModuleVector::monomial(PBWMonomial::new(EvenPseudoPartition::empty(), OddPartition::empty(), lam, OddPartition::empty())))
            .collect();
        let c = submodule_closure(&seeds, &ctx, &tr, 4);
        assert_eq!(c.dim(), c.ambient_dim() - 1);
        assert!(!c.contains(&ModuleVector::cyclic()));
    }

    #[test]
    fn verma_c_seed_is_proper() {
        let ctx = ModuleContext::Verma { xi: int(0), l: int(1) };
        let tr = Truncation::new(3, 0);
        let seed = ModuleVector::monomial(single(Generator::c(-1)));
        let c = submodule_closure(&[seed], &ctx, &tr, 4);
        assert!(c.dim() < c.ambient_dim());
        assert!(!c.contains(&ModuleVector::cyclic()));
    }

    #[test]
    fn closure_is_monotone() {
        let ctx = ModuleContext::Verma { xi: int(0), l: int(0) };
        let tr = Truncation::new(3, 0);
        let c1 = ModuleVector::monomial(single(Generator::c(-1)));
        let d1 = ModuleVector::monomial(single(Generator::d(-1)));
        let small = submodule_closure(std::slice::from_ref(&c1), &ctx, &tr, 3);
        let big = submodule_closure(&[c1, d1], &ctx, &tr, 4);
        for v in small.vectors() {
            assert!(big.contains(&v));
        }
        let again = submodule_closure(&big.vectors(), &ctx, &tr, 4);
        assert_eq!(again.dim(), big.dim());
    }
}
