//! Randomized checks of the algebraic identities the engine relies on.

use std::collections::BTreeMap;

use nw_whittaker::algebra::{bracket, bracket_elements, Generator, LieElement, WhittakerType};
use nw_whittaker::envelope::{reduce_word, ModuleVector, Rewriter, Strategy as Order, Word};
use nw_whittaker::modules::ModuleContext;
use nw_whittaker::partitions::{count_even_partitions, count_odd_partitions};
use nw_whittaker::scalar::Rational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (-3i64..=3).prop_map(|m| Generator::a(2 * m)),
        (-3i64..=2).prop_map(|m| Generator::b(2 * m + 1)),
        (-3i64..=2).prop_map(|m| Generator::c(2 * m + 1)),
        (-3i64..=2).prop_map(|m| Generator::d(2 * m + 1)),
        Just(Generator::k()),
    ]
}

fn small_q() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn context() -> impl Strategy<Value = ModuleContext> {
    let psi = || {
        (small_q(), small_q(), small_q(), small_q())
            .prop_map(|(c1, s1, d1, d3)| WhittakerType::new(c1, s1, BTreeMap::from([(1, d1), (3, d3)])).unwrap())
    };
    prop_oneof![
        psi().prop_map(|psi| ModuleContext::Universal { psi }),
        (psi(), small_q()).prop_map(|(psi, xi)| ModuleContext::Quotient { psi, xi }),
        (small_q(), small_q()).prop_map(|(xi, l)| ModuleContext::Verma { xi, l }),
    ]
}

fn word() -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(generator(), 0..5)
}

fn single(g: Generator) -> LieElement {
    LieElement::single(g, q(1, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bracket_is_antisymmetric(x in generator(), y in generator()) {
        let xy = bracket(x, y).unwrap();
        let yx = bracket(y, x).unwrap();
        prop_assert_eq!(xy, yx.neg());
    }

    #[test]
    fn bracket_satisfies_jacobi(x in generator(), y in generator(), z in generator()) {
        let (x, y, z) = (single(x), single(y), single(z));
        let mut sum = bracket_elements(&x, &bracket_elements(&y, &z));
        sum.add_scaled(&bracket_elements(&y, &bracket_elements(&z, &x)), &q(1, 1));
        sum.add_scaled(&bracket_elements(&z, &bracket_elements(&x, &y)), &q(1, 1));
        prop_assert!(sum.is_zero(), "{}", sum);
    }

    #[test]
    fn bracket_preserves_mode(x in generator(), y in generator()) {
        let total = x.mode() + y.mode();
        for (g, _) in bracket(x, y).unwrap().terms() {
            prop_assert!(g.is_central() || g.mode() == total);
        }
    }

    // x·(y·v) − y·(x·v) = [x,y]·v: the rewriter really defines a module.
    #[test]
    fn action_is_a_representation(ctx in context(), x in generator(), y in generator(), w in word()) {
        let mut rw = Rewriter::new(&ctx);
        let v = rw.apply_word(&Word::new(q(1, 1), w));
        let yv = rw.act(y, &v);
        let xv = rw.act(x, &v);
        let lhs = rw.act(x, &yv).sub(&rw.act(y, &xv));
        let rhs = rw.act_element(&bracket(x, y).unwrap(), &v);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn strategies_agree(ctx in context(), w in word(), s in small_q()) {
        let w = Word::new(s, w);
        prop_assert_eq!(reduce_word(&w, &ctx, Order::RightmostFirst), reduce_word(&w, &ctx, Order::LeftmostSwap));
    }

    #[test]
    fn positive_generators_act_by_psi_on_cyclic(ctx in context(), g in generator()) {
        prop_assume!(g.is_positive());
        let v = Rewriter::new(&ctx).act(g, &ModuleVector::cyclic());
        let expected = ModuleVector::term(nw_whittaker::envelope::PBWMonomial::empty(), ctx.psi_value(g));
        prop_assert_eq!(v, expected);
    }

    #[test]
    fn k_folding_round_trips(w in word()) {
        let ctx = ModuleContext::Universal { psi: WhittakerType::new(q(1, 1), q(2, 1), BTreeMap::new()).unwrap() };
        let v = reduce_word(&Word::new(q(1, 1), w), &ctx, Order::RightmostFirst);
        prop_assert_eq!(v.fold_k().expand_k(), v);
    }
}

/// Coefficients of ∏ 1/(1 − x^j) over the allowed part sizes.
fn series(n: usize, parts: impl Iterator<Item = usize>) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for p in parts {
        for i in p..=n {
            c[i] += c[i - p];
        }
    }
    c
}

#[test]
fn partition_counts_match_generating_functions() {
    let n = 40;
    let odd = series(n, (1..=n).step_by(2));
    let even = series(n, (2..=n).step_by(2));
    for i in 0..=n {
        assert_eq!(count_odd_partitions(i as u32), odd[i], "odd {i}");
        assert_eq!(count_even_partitions(i as u32), even[i], "even {i}");
    }
}
