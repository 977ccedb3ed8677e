//! Reference implementations shared by the integration tests. Nothing here
//! uses the library's linear algebra.

#![allow(dead_code)]

use nw_whittaker::algebra::positive_generators;
use nw_whittaker::envelope::{reduce_word, ModuleVector, PBWMonomial, Strategy, Word};
use nw_whittaker::modules::{basis, ModuleContext, Truncation};
use nw_whittaker::scalar::Rational;
use num_traits::{One, Zero};

/// Number of partitions of `n` into parts drawn from `parts` (coin change).
pub fn count_with_parts(n: usize, parts: impl Iterator<Item = usize>) -> Vec<u64> {
    let mut ways = vec![0u64; n + 1];
    ways[0] = 1;
    for p in parts {
        for total in p..=n {
            ways[total] += ways[total - p];
        }
    }
    ways
}

/// Per-degree counts of PBW monomials with at most `t` zero parts, by
/// convolving (even parts ≥ 2) × (odd)³ and multiplying by `t + 1`.
pub fn census(n: usize, t: usize) -> Vec<u64> {
    let even = count_with_parts(n, (2..=n).step_by(2));
    let odd = count_with_parts(n, (1..=n).step_by(2));
    let conv = |a: &[u64], b: &[u64]| -> Vec<u64> { (0..=n).map(|d| (0..=d).map(|i| a[i] * b[d - i]).sum()).collect() };
    let total = conv(&conv(&conv(&even, &odd), &odd), &odd);
    total.into_iter().map(|c| c * (t as u64 + 1)).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Kernel of the linear map whose columns are given (each as a vector).
fn kernel(columns: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = columns.len();
    let m = columns.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = (0..m).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    if m == 0 {
        return (0..n).map(|j| (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    }
    let pivots = rref(&mut rows);
    let mut out = Vec::new();
    for free in (0..n).filter(|j| !pivots.contains(j)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -rows[r][free].clone();
        }
        out.push(v);
    }
    out
}

fn combine(candidates: &[PBWMonomial], coords: &[Rational]) -> ModuleVector {
    let mut v = ModuleVector::zero();
    for (m, c) in candidates.iter().zip(coords) {
        v.add_term(m.clone(), c.clone());
    }
    v
}

/// Whittaker vectors in the window, found one generator at a time: the
/// current space is cut down by the kernel of `g - ψ(g)` restricted to it.
/// Actions come from leftmost-swap word reduction.
pub fn brute_force_whittaker(ctx: &ModuleContext, tr: &Truncation, mode_bound: i64) -> Vec<ModuleVector> {
    let candidates = basis(ctx, tr);
    let n = candidates.len();
    let mut space: Vec<Vec<Rational>> =
        (0..n).map(|j| (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    for g in positive_generators(mode_bound) {
        let psi = ctx.psi_value(g);
        let images: Vec<ModuleVector> = space
            .iter()
            .map(|coords| {
                let mut image = ModuleVector::zero();
                for (m, c) in candidates.iter().zip(coords) {
                    if c.is_zero() {
                        continue;
                    }
                    let mut gens = vec![g];
                    gens.extend(m.factors());
                    let w = reduce_word(&Word::new(c.clone(), gens), ctx, Strategy::LeftmostSwap);
                    image = image.add(&w);
                    image.add_term(m.clone(), -(c * &psi));
                }
                image
            })
            .collect();
        let mut index: Vec<PBWMonomial> = images.iter().flat_map(|v| v.monomials().cloned()).collect();
        index.sort();
        index.dedup();
        let columns: Vec<Vec<Rational>> = images.iter().map(|v| index.iter().map(|m| v.coeff(m)).collect()).collect();
        let combos = kernel(&columns);
        space = combos
            .iter()
            .map(|k| {
                let mut v = vec![Rational::zero(); n];
                for (coef, basis_vec) in k.iter().zip(&space) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(basis_vec) {
                        *x += coef * y;
                    }
                }
                v
            })
            .collect();
    }
    space.iter().map(|c| combine(&candidates, c)).collect()
}
