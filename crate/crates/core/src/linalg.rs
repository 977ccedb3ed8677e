//! Exact sparse linear algebra: rank, nullspace and span membership.
//!
//! Elimination runs column by column in the caller's column order. Rows are
//! bucketed by their leading column, so each step only touches rows that
//! actually have an entry in the pivot column. Over `Q[k]` the elimination is
//! fraction-free: rows are cross-multiplied and then divided by their
//! polynomial content, and only the final back-substitution moves to `Q(k)`.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::scalar::{Coeff, Field, Poly, RatFunc};

/// Sparse matrix with a single coefficient kind. Never stores zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), F>,
}

impl<F: Coeff> SparseMatrix<F> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Panics if the index is out of range.
    pub fn set(&mut self, row: usize, col: usize, value: F) {
        assert!(row < self.rows && col < self.cols, "index ({row},{col}) out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> F {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(F::zero)
    }

    /// Adds `value` onto an entry.
    pub fn add_to(&mut self, row: usize, col: usize, value: &F) {
        let updated = self.get(row, col).add(value);
        self.set(row, col, updated);
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![F::zero(); self.rows];
        for ((r, c), x) in &self.entries {
            out[*r] = out[*r].add(&x.mul(&v[*c]));
        }
        out
    }

    fn sparse_rows(&self) -> Vec<SparseRow<F>> {
        let mut rows: Vec<SparseRow<F>> = vec![Vec::new(); self.rows];
        for ((r, c), x) in &self.entries {
            rows[*r].push((*c, x.clone()));
        }
        rows
    }
}

type SparseRow<F> = Vec<(usize, F)>;

/// `row - scale * other`, both sorted by column.
fn sub_scaled<F: Coeff>(row: &[(usize, F)], scale: &F, other: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push(row[i].clone());
            i += 1;
        } else if take_right {
            out.push((other[j].0, other[j].1.mul(scale).neg()));
            j += 1;
        } else {
            let v = row[i].1.sub(&other[j].1.mul(scale));
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn pick_pivot<F: Coeff>(bucket: &[SparseRow<F>]) -> usize {
    bucket
        .iter()
        .enumerate()
        .min_by_key(|(_, r)| (r[0].1.pivot_weight(), r.len()))
        .map(|(i, _)| i)
        .expect("non-empty bucket")
}

/// Row echelon form: `(pivot column, pivot row)` in increasing column order.
struct Echelon<F> {
    cols: usize,
    pivots: Vec<(usize, SparseRow<F>)>,
}

impl<F> Echelon<F> {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for (c, _) in &self.pivots {
            is_pivot[*c] = true;
        }
        (0..self.cols).filter(|c| !is_pivot[*c]).collect()
    }
}

fn echelon_field<F: Field>(rows: Vec<SparseRow<F>>, cols: usize) -> Echelon<F> {
    let mut buckets: Vec<Vec<SparseRow<F>>> = vec![Vec::new(); cols];
    for r in rows.into_iter().filter(|r| !r.is_empty()) {
        buckets[r[0].0].push(r);
    }
    let mut pivots = Vec::new();
    for c in 0..cols {
        let mut bucket = std::mem::take(&mut buckets[c]);
        if bucket.is_empty() {
            continue;
        }
        let pivot = bucket.swap_remove(pick_pivot(&bucket));
        let inv = pivot[0].1.inv();
        let pivot: SparseRow<F> = pivot.into_iter().map(|(j, x)| (j, x.mul(&inv))).collect();
        for row in bucket {
            let reduced = sub_scaled(&row, &row[0].1, &pivot);
            if let Some(&(lead, _)) = reduced.first() {
                buckets[lead].push(reduced);
            }
        }
        pivots.push((c, pivot));
    }
    Echelon { cols, pivots }
}

fn remove_content(row: SparseRow<Poly>) -> SparseRow<Poly> {
    let mut g = Poly::zero();
    for (_, p) in &row {
        g = Poly::gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    let row: SparseRow<Poly> = if g.is_one() || g.is_zero() {
        row
    } else {
        row.into_iter().map(|(j, p)| (j, p.div_exact(&g).expect("content divides"))).collect()
    };
    // clear rational coefficient growth using the first entry's scale
    let scale = row.first().map(|(_, p)| p.primitive_scale());
    match scale {
        Some(s) if !num_traits::One::is_one(&s) => row.into_iter().map(|(j, p)| (j, p.scale(&s))).collect(),
        _ => row,
    }
}

fn echelon_fraction_free(rows: Vec<SparseRow<Poly>>, cols: usize) -> Echelon<Poly> {
    let mut buckets: Vec<Vec<SparseRow<Poly>>> = vec![Vec::new(); cols];
    for r in rows.into_iter().filter(|r| !r.is_empty()) {
        buckets[r[0].0].push(remove_content(r));
    }
    let mut pivots = Vec::new();
    for c in 0..cols {
        let mut bucket = std::mem::take(&mut buckets[c]);
        if bucket.is_empty() {
            continue;
        }
        let pivot = bucket.swap_remove(pick_pivot(&bucket));
        let lead = pivot[0].1.clone();
        for row in bucket {
            // lead * row - row_lead * pivot
            let scaled: SparseRow<Poly> = row.iter().map(|(j, x)| (*j, x.mul(&lead))).collect();
            let reduced = sub_scaled(&scaled, &row[0].1, &pivot);
            if !reduced.is_empty() {
                let reduced = remove_content(reduced);
                buckets[reduced[0].0].push(reduced);
            }
        }
        pivots.push((c, pivot));
    }
    Echelon { cols, pivots }
}

/// Nullspace from an echelon form, solving in the field `G` into which the
/// row entries embed via `lift`.
fn back_substitute<F, G: Field>(ech: &Echelon<F>, lift: impl Fn(&F) -> G) -> Vec<Vec<G>> {
    let mut basis = Vec::new();
    for free in ech.free_columns() {
        let mut x = vec![G::zero(); ech.cols];
        x[free] = G::one();
        for (c, row) in ech.pivots.iter().rev() {
            let mut acc = G::zero();
            for (j, v) in row.iter().skip(1) {
                if !x[*j].is_zero() {
                    acc = acc.add(&lift(v).mul(&x[*j]));
                }
            }
            if !acc.is_zero() {
                x[*c] = acc.neg().div(&lift(&row[0].1));
            }
        }
        basis.push(normalize_first(x));
    }
    basis
}

fn normalize_first<G: Field>(x: Vec<G>) -> Vec<G> {
    match x.iter().find(|v| !v.is_zero()).cloned() {
        Some(lead) if !lead.is_one() => {
            let inv = lead.inv();
            x.into_iter().map(|v| v.mul(&inv)).collect()
        }
        _ => x,
    }
}

/// Basis of `{v : Mv = 0}`, each vector scaled so its first nonzero entry is 1.
pub fn nullspace<F: Field>(m: &SparseMatrix<F>) -> Vec<Vec<F>> {
    let ech = echelon_field(m.sparse_rows(), m.cols);
    back_substitute(&ech, F::clone)
}

pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    echelon_field(m.sparse_rows(), m.cols).rank()
}

/// Nullspace of a polynomial matrix over the field of fractions `Q(k)`,
/// computed by fraction-free elimination.
pub fn nullspace_fraction_free(m: &SparseMatrix<Poly>) -> Vec<Vec<RatFunc>> {
    let ech = echelon_fraction_free(m.sparse_rows(), m.cols);
    back_substitute(&ech, |p| RatFunc::from_poly(p.clone()))
}

/// Rank over `Q(k)` by fraction-free elimination.
pub fn rank_fraction_free(m: &SparseMatrix<Poly>) -> usize {
    echelon_fraction_free(m.sparse_rows(), m.cols).rank()
}

/// Rank of a family of dense vectors of a common length.
pub fn rank_of_vectors<F: Field>(vectors: &[Vec<F>], len: usize) -> Result<usize, Error> {
    let mut rows = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.len() != len {
            return Err(Error::DimensionMismatch { expected: len, got: v.len() });
        }
        rows.push(v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect());
    }
    Ok(echelon_field(rows, len).rank())
}

/// Whether `v` is a linear combination of `span`.
pub fn in_span<F: Field>(v: &[F], span: &[Vec<F>]) -> Result<bool, Error> {
    let len = v.len();
    let base = rank_of_vectors(span, len)?;
    let mut all = span.to_vec();
    all.push(v.to_vec());
    Ok(rank_of_vectors(&all, len)? == base)
}

/// Whether two families span the same subspace.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>], len: usize) -> Result<bool, Error> {
    let ra = rank_of_vectors(a, len)?;
    let rb = rank_of_vectors(b, len)?;
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    let rab = rank_of_vectors(&all, len)?;
    Ok(ra == rab && rb == rab)
}

/// Incrementally maintained row-echelon basis of a subspace of `F^len`.
#[derive(Clone, Debug)]
pub struct SpanBasis<F> {
    len: usize,
    // pivot column -> normalized row (pivot entry 1)
    rows: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> SpanBasis<F> {
    pub fn new(len: usize) -> Self {
        SpanBasis { len, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    fn reduce(&self, mut v: SparseRow<F>) -> SparseRow<F> {
        // rows are fully reduced, so subtracting one never reintroduces a pivot column
        while let Some((col, coef)) = v.iter().find(|(c, _)| self.rows.contains_key(c)).cloned() {
            v = sub_scaled(&v, &coef, &self.rows[&col]);
        }
        v
    }

    /// Inserts a sparse vector; returns true if it enlarged the span.
    pub fn insert_sparse(&mut self, v: SparseRow<F>) -> bool {
        let reduced = self.reduce(v);
        let Some((lead, coef)) = reduced.iter().find(|(c, _)| !self.rows.contains_key(c)).cloned() else {
            return false;
        };
        let inv = coef.inv();
        let normalized: SparseRow<F> = reduced.into_iter().map(|(j, x)| (j, x.mul(&inv))).collect();
        // keep the pivot column unique across rows
        let ids: Vec<usize> = self.rows.keys().copied().collect();
        for id in ids {
            let row = &self.rows[&id];
            if let Some((_, c)) = row.iter().find(|(j, _)| *j == lead) {
                let c = c.clone();
                let updated = sub_scaled(row, &c, &normalized);
                self.rows.insert(id, updated);
            }
        }
        self.rows.insert(lead, normalized);
        true
    }

    pub fn contains_sparse(&self, v: &[(usize, F)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    pub fn insert(&mut self, v: &[F]) -> bool {
        self.insert_sparse(v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.contains_sparse(&v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect::<Vec<_>>())
    }

    /// The basis as dense vectors, in pivot order.
    pub fn vectors(&self) -> Vec<Vec<F>> {
        self.rows
            .values()
            .map(|row| {
                let mut dense = vec![F::zero(); self.len];
                for (j, x) in row {
                    dense[*j] = x.clone();
                }
                dense
            })
            .collect()
    }
}
