//! Closed-form actions of positive `A(n)`, `B(m)` on single-block monomials.
//!
//! These are written out directly from the commutation relations rather
//! than through the rewriter, so the two can be checked against each other.

use num_traits::Zero;

use crate::algebra::Generator;
use crate::envelope::{ModuleVector, PBWMonomial};
use crate::modules::ModuleContext;
use crate::partitions::{EvenPseudoPartition, OddPartition};
use crate::scalar::{int, Rational};

/// `k` acting on a monomial: a scalar in the quotients, a `k` power otherwise.
fn central(ctx: &ModuleContext, m: PBWMonomial, coeff: Rational) -> (PBWMonomial, Rational) {
    match ctx.central_value() {
        Some(xi) => (m, coeff * xi),
        None => {
            let kexp = m.kexp + 1;
            (m.with_kexp(kexp), coeff)
        }
    }
}

fn a_block(mu: EvenPseudoPartition) -> PBWMonomial {
    PBWMonomial::new(mu, OddPartition::empty(), OddPartition::empty(), OddPartition::empty())
}

fn b_block(nu: OddPartition) -> PBWMonomial {
    PBWMonomial::new(EvenPseudoPartition::empty(), nu, OddPartition::empty(), OddPartition::empty())
}

/// `c(j)` standing next to the cyclic vector, behind a monomial `rest` that
/// commutes with it: evaluated by `ψ` for `j > 0`, appended to `η` otherwise.
fn with_c(ctx: &ModuleContext, rest: PBWMonomial, j: i64, coeff: Rational, out: &mut ModuleVector) {
    if j > 0 {
        let value = ctx.psi_value(Generator::c(j));
        if !value.is_zero() {
            out.add_term(rest, coeff * value);
        }
    } else {
        let mut eta = rest.eta.clone();
        eta.insert((-j) as u32);
        let m = PBWMonomial { eta, ..rest };
        out.add_term(m, coeff);
    }
}

/// `A(n)·A(-μ̃)ω̄` for even `n ≥ 2`.
pub fn a_on_a_block(n: i64, mu: &EvenPseudoPartition, ctx: &ModuleContext) -> ModuleVector {
    assert!(n >= 2 && n % 2 == 0, "A(n) needs a positive even mode");
    let mut out = ModuleVector::zero();
    for (i, &part) in mu.parts().iter().enumerate() {
        if i64::from(part) == n {
            let (m, c) = central(ctx, a_block(mu.without_index(i)), int(2 * n));
            out.add_term(m, c);
        }
    }
    out
}

/// `A(n)·B(-ν)ω̄` for even `n ≥ 2`.
pub fn a_on_b_block(n: i64, nu: &OddPartition, ctx: &ModuleContext) -> ModuleVector {
    assert!(n >= 2 && n % 2 == 0, "A(n) needs a positive even mode");
    let mut out = ModuleVector::zero();
    for (i, &part) in nu.parts().iter().enumerate() {
        with_c(ctx, b_block(nu.without_index(i)), n - i64::from(part), int(-2), &mut out);
    }
    out
}

/// `B(m)·A(-μ̃)ω̄` for odd `m ≥ 1`.
pub fn b_on_a_block(m: i64, mu: &EvenPseudoPartition, ctx: &ModuleContext) -> ModuleVector {
    assert!(m >= 1 && m % 2 == 1, "B(m) needs a positive odd mode");
    let mut out = ModuleVector::zero();
    for (i, &part) in mu.parts().iter().enumerate() {
        with_c(ctx, a_block(mu.without_index(i)), m - i64::from(part), int(2), &mut out);
    }
    let psi = ctx.psi_value(Generator::b(m));
    if !psi.is_zero() {
        out.add_term(a_block(mu.clone()), psi);
    }
    out
}

/// `B(m)·B(-ν)ω̄` for odd `m ≥ 1`.
pub fn b_on_b_block(m: i64, nu: &OddPartition, ctx: &ModuleContext) -> ModuleVector {
    assert!(m >= 1 && m % 2 == 1, "B(m) needs a positive odd mode");
    let mut out = ModuleVector::zero();
    for (i, &part) in nu.parts().iter().enumerate() {
        if i64::from(part) == m {
            let (mono, c) = central(ctx, b_block(nu.without_index(i)), int(-2 * m));
            out.add_term(mono, c);
        }
    }
    let psi = ctx.psi_value(Generator::b(m));
    if !psi.is_zero() {
        out.add_term(b_block(nu.clone()), psi);
    }
    out
}

/// One formula instance whose rewriter output disagreed with the closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulaMismatch {
    pub generator: Generator,
    pub monomial: PBWMonomial,
    pub expected: ModuleVector,
    pub got: ModuleVector,
}

/// Checks all four closed forms against the rewriter over the given ranges.
/// Returns the number of instances checked and any mismatches.
pub fn check_block_formulas(
    ctx: &ModuleContext,
    max_count: usize,
    max_even_part: u32,
    max_zero: usize,
    max_odd_part: u32,
    max_mode: i64,
) -> (usize, Vec<FormulaMismatch>) {
    let zero_cap = if matches!(ctx, ModuleContext::Verma { .. }) { 0 } else { max_zero };
    let mus = crate::partitions::enumerate_even_pseudopartitions(max_even_part * max_count as u32, zero_cap)
        .into_iter()
        .filter(|p| p.count() <= max_count && p.parts().iter().all(|&x| x <= max_even_part));
    let mus: Vec<EvenPseudoPartition> = mus.collect();
    let nus: Vec<OddPartition> = crate::partitions::enumerate_odd_partitions(max_odd_part * max_count as u32)
        .into_iter()
        .filter(|p| p.count() <= max_count && p.parts().iter().all(|&x| x <= max_odd_part))
        .collect();

    let mut rewriter = crate::envelope::Rewriter::new(ctx);
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut check = |g: Generator, mono: PBWMonomial, expected: ModuleVector, bad: &mut Vec<FormulaMismatch>| {
        let got = rewriter.act(g, &ModuleVector::monomial(mono.clone()));
        if got != expected {
            bad.push(FormulaMismatch { generator: g, monomial: mono, expected, got });
        }
    };
    for n in (2..=max_mode).step_by(2) {
        for mu in &mus {
            check(Generator::a(n), a_block(mu.clone()), a_on_a_block(n, mu, ctx), &mut bad);
            checked += 1;
        }
        for nu in &nus {
            check(Generator::a(n), b_block(nu.clone()), a_on_b_block(n, nu, ctx), &mut bad);
            checked += 1;
        }
    }
    for m in (1..=max_mode).step_by(2) {
        for mu in &mus {
            check(Generator::b(m), a_block(mu.clone()), b_on_a_block(m, mu, ctx), &mut bad);
            checked += 1;
        }
        for nu in &nus {
            check(Generator::b(m), b_block(nu.clone()), b_on_b_block(m, nu, ctx), &mut bad);
            checked += 1;
        }
    }
    (checked, bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::WhittakerType;
    use crate::scalar::rat;
    use std::collections::BTreeMap;

    fn psi() -> WhittakerType {
        WhittakerType::new(rat(2, 3), int(5), BTreeMap::from([(1, int(1)), (3, rat(-1, 2))])).unwrap()
    }

    #[test]
    fn a_on_repeated_part() {
        let ctx = ModuleContext::Quotient { psi: psi(), xi: int(3) };
        let mu = EvenPseudoPartition::new(vec![0, 2, 2]).unwrap();
        let v = a_on_a_block(2, &mu, &ctx);
        let expected = ModuleVector::term(a_block(EvenPseudoPartition::new(vec![0, 2]).unwrap()), int(24));
        assert_eq!(v, expected);
    }

    #[test]
    fn b_on_zero_part_picks_up_c1() {
        // B(1)·A(0)ω̄ = 2c(1)ω̄ + σ1·A(0)ω̄
        let ctx = ModuleContext::Quotient { psi: psi(), xi: int(3) };
        let v = b_on_a_block(1, &EvenPseudoPartition::new(vec![0]).unwrap(), &ctx);
        let mut expected = ModuleVector::term(PBWMonomial::empty(), rat(4, 3));
        expected.add_term(a_block(EvenPseudoPartition::new(vec![0]).unwrap()), int(5));
        assert_eq!(v, expected);
    }

    #[test]
    fn rewriter_agrees_in_every_context() {
        let contexts = [
            ModuleContext::Universal { psi: psi() },
            ModuleContext::Quotient { psi: psi(), xi: int(-2) },
            ModuleContext::Verma { xi: int(1), l: int(2) },
        ];
        for ctx in &contexts {
            let (checked, bad) = check_block_formulas(ctx, 2, 4, 1, 5, 6);
            assert!(checked > 0);
            assert!(bad.is_empty(), "{:?}", bad.first());
        }
    }
}
