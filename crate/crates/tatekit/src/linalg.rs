//! Exact integer linear algebra: Smith and Hermite normal forms, lattice
//! membership, kernels, and quotient invariants.
//!
//! Everything is arbitrary precision. Dense matrices are row-major; the
//! differential assembly works on sparse columns and only the reduced data
//! ever gets densified.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, TateError};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        let mut out = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &IntMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * k)
    }

    /// Kronecker product; block (i, k) ⊗ (j, l) lands at (i*other.rows + j,
    /// k*other.cols + l).
    pub fn kron(&self, other: &IntMatrix) -> Self {
        Self::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                self.at(i1, j1) * other.at(i2, j2)
            },
        )
    }

    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        for c in cols {
            assert_eq!(c.len(), rows, "column length mismatch");
        }
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }
}

/// Smith normal form `U*A*V = S` with unimodular transforms and a positive
/// divisibility chain on the diagonal.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        (0..self.s.rows.min(self.s.cols))
            .take_while(|&i| !self.s.at(i, i).is_zero())
            .count()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s.at(i, i).clone()).collect()
    }
}

struct SnfWork {
    s: IntMatrix,
    u: Option<IntMatrix>,
    uinv: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl SnfWork {
    fn new(a: &IntMatrix, want_u: bool, want_uinv: bool, want_v: bool) -> Self {
        SnfWork {
            s: a.clone(),
            u: want_u.then(|| IntMatrix::identity(a.rows)),
            uinv: want_uinv.then(|| IntMatrix::identity(a.rows)),
            v: want_v.then(|| IntMatrix::identity(a.cols)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.s.cols {
            let tmp = self.s.at(i, c).clone();
            *self.s.at_mut(i, c) = self.s.at(j, c).clone();
            *self.s.at_mut(j, c) = tmp;
        }
        if let Some(u) = &mut self.u {
            for c in 0..u.cols {
                let tmp = u.at(i, c).clone();
                *u.at_mut(i, c) = u.at(j, c).clone();
                *u.at_mut(j, c) = tmp;
            }
        }
        if let Some(w) = &mut self.uinv {
            for r in 0..w.rows {
                let tmp = w.at(r, i).clone();
                *w.at_mut(r, i) = w.at(r, j).clone();
                *w.at_mut(r, j) = tmp;
            }
        }
    }

    /// row_i += q * row_j; the inverse transform is a column operation on uinv.
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.s.cols {
            let add = q * self.s.at(j, c);
            if !add.is_zero() {
                *self.s.at_mut(i, c) += add;
            }
        }
        if let Some(u) = &mut self.u {
            for c in 0..u.cols {
                let add = q * u.at(j, c);
                if !add.is_zero() {
                    *u.at_mut(i, c) += add;
                }
            }
        }
        if let Some(w) = &mut self.uinv {
            for r in 0..w.rows {
                let sub = q * w.at(r, i);
                if !sub.is_zero() {
                    *w.at_mut(r, j) -= sub;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.s.cols {
            let v = -self.s.at(i, c).clone();
            *self.s.at_mut(i, c) = v;
        }
        if let Some(u) = &mut self.u {
            for c in 0..u.cols {
                let v = -u.at(i, c).clone();
                *u.at_mut(i, c) = v;
            }
        }
        if let Some(w) = &mut self.uinv {
            for r in 0..w.rows {
                let v = -w.at(r, i).clone();
                *w.at_mut(r, i) = v;
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.s.rows {
            let tmp = self.s.at(r, i).clone();
            *self.s.at_mut(r, i) = self.s.at(r, j).clone();
            *self.s.at_mut(r, j) = tmp;
        }
        if let Some(v) = &mut self.v {
            for r in 0..v.rows {
                let tmp = v.at(r, i).clone();
                *v.at_mut(r, i) = v.at(r, j).clone();
                *v.at_mut(r, j) = tmp;
            }
        }
    }

    /// col_i += q * col_j.
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.s.rows {
            let add = q * self.s.at(r, j);
            if !add.is_zero() {
                *self.s.at_mut(r, i) += add;
            }
        }
        if let Some(v) = &mut self.v {
            for r in 0..v.rows {
                let add = q * v.at(r, j);
                if !add.is_zero() {
                    *v.at_mut(r, i) += add;
                }
            }
        }
    }

    /// Clears row t and column t outside the pivot, Euclid-style.
    fn clear_pivot(&mut self, t: usize) {
        'outer: loop {
            for i in t + 1..self.s.rows {
                if self.s.at(i, t).is_zero() {
                    continue;
                }
                let q = self.s.at(i, t).div_rem(self.s.at(t, t)).0;
                self.add_row(i, t, &-q);
                if !self.s.at(i, t).is_zero() {
                    self.swap_rows(i, t);
                    continue 'outer;
                }
            }
            for j in t + 1..self.s.cols {
                if self.s.at(t, j).is_zero() {
                    continue;
                }
                let q = self.s.at(t, j).div_rem(self.s.at(t, t)).0;
                self.add_col(j, t, &-q);
                if !self.s.at(t, j).is_zero() {
                    self.swap_cols(j, t);
                    continue 'outer;
                }
            }
            return;
        }
    }
}

fn snf_engine(
    a: &IntMatrix,
    want_u: bool,
    want_uinv: bool,
    want_v: bool,
) -> (IntMatrix, Option<IntMatrix>, Option<IntMatrix>, Option<IntMatrix>) {
    let mut w = SnfWork::new(a, want_u, want_uinv, want_v);
    let dim = a.rows.min(a.cols);
    for t in 0..dim {
        // Move the submatrix entry of minimal nonzero absolute value to the
        // pivot; first position wins ties, keeping runs deterministic.
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = BigInt::zero();
        for i in t..w.s.rows {
            for j in t..w.s.cols {
                let e = w.s.at(i, j);
                if e.is_zero() {
                    continue;
                }
                let e_abs = e.abs();
                if best.is_none() || e_abs < best_abs {
                    best = Some((i, j));
                    best_abs = e_abs;
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            w.clear_pivot(t);
            // The pivot must divide every remaining entry so that the
            // diagonal forms a divisibility chain.
            let p = w.s.at(t, t).clone();
            let mut fix: Option<usize> = None;
            'scan: for i in t + 1..w.s.rows {
                for j in t + 1..w.s.cols {
                    if !w.s.at(i, j).mod_floor(&p).is_zero() {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.s.at(t, t).sign() == num_bigint::Sign::Minus {
            w.negate_row(t);
        }
    }
    (w.s, w.u, w.uinv, w.v)
}

/// Full Smith decomposition with both transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (s, u, _, v) = snf_engine(a, true, false, true);
    SmithDecomposition {
        u: u.unwrap(),
        s,
        v: v.unwrap(),
    }
}

/// Smith data plus the inverse of U, for quotient representatives.
pub(crate) fn smith_with_uinv(a: &IntMatrix) -> (SmithDecomposition, IntMatrix) {
    let (s, u, uinv, v) = snf_engine(a, true, true, true);
    (
        SmithDecomposition {
            u: u.unwrap(),
            s,
            v: v.unwrap(),
        },
        uinv.unwrap(),
    )
}

/// Row-style Hermite normal form: `H = U*A` with echelon rows, positive
/// pivots, and entries above each pivot reduced into [0, pivot).
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut w = SnfWork::new(a, true, false, false);
    let mut r = 0usize;
    for c in 0..a.cols {
        if r == w.s.rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            let mut best_abs = BigInt::zero();
            for i in r..w.s.rows {
                let e = w.s.at(i, c);
                if e.is_zero() {
                    continue;
                }
                let e_abs = e.abs();
                if best.is_none() || e_abs < best_abs {
                    best = Some(i);
                    best_abs = e_abs;
                }
            }
            let Some(i) = best else { break };
            w.swap_rows(r, i);
            let mut clean = true;
            for i in r + 1..w.s.rows {
                if w.s.at(i, c).is_zero() {
                    continue;
                }
                let q = w.s.at(i, c).div_rem(w.s.at(r, c)).0;
                w.add_row(i, r, &-q);
                if !w.s.at(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if w.s.at(r, c).is_zero() {
            continue;
        }
        if w.s.at(r, c).sign() == num_bigint::Sign::Minus {
            w.negate_row(r);
        }
        for i in 0..r {
            let q = w.s.at(i, c).div_floor(w.s.at(r, c));
            w.add_row(i, r, &-q);
        }
        r += 1;
    }
    (w.s, w.u.unwrap())
}

/// Canonical basis of the lattice spanned by the columns of `a`: echelon
/// columns with strictly increasing pivot rows and positive pivots.
pub fn lattice_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(&a.transpose());
    let rank = (0..h.rows)
        .take_while(|&i| (0..h.cols).any(|j| !h.at(i, j).is_zero()))
        .count();
    IntMatrix::from_fn(a.rows, rank, |i, j| h.at(j, i).clone())
}

/// Pivot row of each column of an echelon column basis.
pub fn echelon_pivots(b: &IntMatrix) -> Vec<usize> {
    let mut out = Vec::with_capacity(b.cols);
    let mut prev: Option<usize> = None;
    for j in 0..b.cols {
        let r = (0..b.rows)
            .find(|&i| !b.at(i, j).is_zero())
            .expect("echelon basis has no zero columns");
        debug_assert!(prev.is_none_or(|p| p < r), "pivot rows must increase");
        prev = Some(r);
        out.push(r);
    }
    out
}

/// Exact representation of `target` in an echelon column basis.
pub fn solve_echelon(b: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(target.len(), b.rows, "target length mismatch");
    let pivots = echelon_pivots(b);
    let mut v = target.to_vec();
    let mut x = vec![BigInt::zero(); b.cols];
    for j in 0..b.cols {
        let r = pivots[j];
        let (q, rem) = v[r].div_rem(b.at(r, j));
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for i in r..b.rows {
                let sub = &q * b.at(i, j);
                if !sub.is_zero() {
                    v[i] -= sub;
                }
            }
        }
        x[j] = q;
    }
    if v.iter().all(|e| e.is_zero()) {
        Some(x)
    } else {
        None
    }
}

/// Canonical residue of `v` modulo the lattice spanned by an echelon column
/// basis: pivot-row entries land in [0, pivot); representatives are unique
/// per coset.
pub fn reduce_mod_echelon(b: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(v.len(), b.rows, "vector length mismatch");
    let pivots = echelon_pivots(b);
    let mut w = v.to_vec();
    for j in 0..b.cols {
        let r = pivots[j];
        let q = w[r].div_floor(b.at(r, j));
        if !q.is_zero() {
            for i in r..b.rows {
                let sub = &q * b.at(i, j);
                if !sub.is_zero() {
                    w[i] -= sub;
                }
            }
        }
    }
    w
}

/// Solves `A*x = b` over the integers, if `b` lies in the column lattice.
pub fn solve_in_lattice(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows {
        return Err(TateError::Dimension {
            context: "solve_in_lattice",
            expected: a.rows,
            got: b.len(),
        });
    }
    let dec = smith_normal_form(a);
    let rank = dec.rank();
    let c = dec.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, ci) in c.iter().enumerate() {
        if i < rank {
            let (q, rem) = ci.div_rem(dec.s.at(i, i));
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(dec.v.mul_vec(&y)))
}

/// Columns form a basis of the integer kernel of `a`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let (s, _, _, v) = snf_engine(a, false, false, true);
    let v = v.unwrap();
    let rank = (0..a.rows.min(a.cols))
        .take_while(|&i| !s.at(i, i).is_zero())
        .count();
    IntMatrix::from_fn(a.cols, a.cols - rank, |i, j| v.at(i, rank + j).clone())
}

/// Invariant factors of (lattice spanned by `l`) / (lattice spanned by `m`):
/// factors of 1 suppressed, free rank as trailing zeros.
pub fn quotient_invariants(l: &IntMatrix, m: &IntMatrix) -> Result<Vec<BigInt>> {
    if m.cols > 0 && m.rows != l.rows {
        return Err(TateError::Dimension {
            context: "quotient_invariants",
            expected: l.rows,
            got: m.rows,
        });
    }
    let basis = lattice_basis(l);
    let mut x = IntMatrix::zeros(basis.cols, m.cols);
    for j in 0..m.cols {
        let sol =
            solve_echelon(&basis, &m.col(j)).ok_or(TateError::Containment { col: j })?;
        for (i, e) in sol.into_iter().enumerate() {
            x.set(i, j, e);
        }
    }
    let dec = smith_normal_form(&x);
    let rank = dec.rank();
    let mut out: Vec<BigInt> = dec
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    out.extend(std::iter::repeat_with(BigInt::zero).take(basis.cols - rank));
    Ok(out)
}

/// Inverse of a unimodular matrix; errors if `u` is not unimodular.
pub fn invert_unimodular(u: &IntMatrix) -> Result<IntMatrix> {
    if u.rows != u.cols {
        return Err(TateError::Dimension {
            context: "invert_unimodular",
            expected: u.rows,
            got: u.cols,
        });
    }
    let (h, w) = hermite_normal_form(u);
    if h != IntMatrix::identity(u.rows) {
        return Err(TateError::Internal {
            context: "invert_unimodular on a non-unimodular matrix",
        });
    }
    Ok(w)
}

/// Sparse column: row index -> nonzero entry.
pub type SparseVec = BTreeMap<usize, BigInt>;

pub fn sparse_from_dense(v: &[BigInt]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| (i, e.clone()))
        .collect()
}

struct EchelonCol {
    a: SparseVec,
    coeff: SparseVec,
}

fn col_axpy(dst: &mut EchelonCol, src: &EchelonCol, q: &BigInt) {
    for (part_dst, part_src) in [(&mut dst.a, &src.a), (&mut dst.coeff, &src.coeff)] {
        for (&r, val) in part_src {
            let e = part_dst.entry(r).or_insert_with(BigInt::zero);
            *e -= q * val;
            if e.is_zero() {
                part_dst.remove(&r);
            }
        }
    }
}

/// Kernel of the matrix whose columns are `cols` (with `nrows` rows),
/// projected to the coefficients on the first `keep` columns.
///
/// This is the augmented-kernel computation used for finitely presented
/// cochain groups: append relation columns, take the kernel, and read off the
/// generator-level part. Deterministic: rows are eliminated in order with
/// minimal-absolute-value pivots.
pub fn sparse_kernel_keep(cols: &[SparseVec], nrows: usize, keep: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<EchelonCol> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| EchelonCol {
            a: c.clone(),
            coeff: if j < keep {
                std::iter::once((j, BigInt::one())).collect()
            } else {
                SparseVec::new()
            },
        })
        .collect();
    let mut used = vec![false; work.len()];
    for row in 0..nrows {
        loop {
            let live: Vec<usize> = (0..work.len())
                .filter(|&j| !used[j] && work[j].a.contains_key(&row))
                .collect();
            if live.len() <= 1 {
                if let Some(&j) = live.first() {
                    used[j] = true;
                }
                break;
            }
            let pivot = *live
                .iter()
                .min_by_key(|&&j| (work[j].a[&row].abs(), j))
                .unwrap();
            for &j in &live {
                if j == pivot {
                    continue;
                }
                let q = work[j].a[&row].div_rem(&work[pivot].a[&row]).0;
                if q.is_zero() {
                    continue;
                }
                let (src, dst) = if pivot < j {
                    let (lo, hi) = work.split_at_mut(j);
                    (&lo[pivot], &mut hi[0])
                } else {
                    let (lo, hi) = work.split_at_mut(pivot);
                    (&hi[0], &mut lo[j])
                };
                col_axpy(dst, src, &q);
            }
        }
    }
    let mut out = Vec::new();
    for (j, col) in work.iter().enumerate() {
        if used[j] {
            continue;
        }
        debug_assert!(col.a.is_empty(), "unused column with residue");
        let mut dense = vec![BigInt::zero(); keep];
        for (&r, val) in &col.coeff {
            dense[r] = val.clone();
        }
        out.push(dense);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn snf_small_examples() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        let dec = smith_normal_form(&a);
        assert_eq!(dec.invariant_factors(), vec![big(2), big(4)]);
        assert_eq!(dec.u.mul(&a).mul(&dec.v), dec.s);

        let id3 = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id3).s, id3);

        let z = IntMatrix::from_i64_rows(&[vec![0]]);
        assert_eq!(smith_normal_form(&z).invariant_factors(), Vec::<BigInt>::new());
    }

    #[test]
    fn snf_transforms_are_unimodular() {
        let a = IntMatrix::from_i64_rows(&[vec![4, -6, 2], vec![2, 8, 0], vec![0, 10, -4]]);
        let dec = smith_normal_form(&a);
        assert_eq!(dec.u.mul(&a).mul(&dec.v), dec.s);
        let uinv = invert_unimodular(&dec.u).unwrap();
        let vinv = invert_unimodular(&dec.v).unwrap();
        assert_eq!(uinv.mul(&dec.s).mul(&vinv), a);
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let dec = smith_normal_form(&a);
        assert_eq!(dec.invariant_factors(), vec![big(1), big(6)]);
    }

    fn det(m: &IntMatrix) -> BigInt {
        assert_eq!(m.rows, m.cols);
        if m.rows == 0 {
            return BigInt::one();
        }
        if m.rows == 1 {
            return m.at(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..m.cols {
            if m.at(0, j).is_zero() {
                continue;
            }
            let minor = IntMatrix::from_fn(m.rows - 1, m.cols - 1, |r, c| {
                m.at(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.at(0, j) * det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// gcd of all k x k minors, the classical characterization of d_1...d_k.
    fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
        let mut g = BigInt::zero();
        for rs in subsets(a.rows, k) {
            for cs in subsets(a.cols, k) {
                let m = IntMatrix::from_fn(k, k, |i, j| a.at(rs[i], cs[j]).clone());
                g = g.gcd(&det(&m));
            }
        }
        g
    }

    #[test]
    fn snf_matches_minor_gcd_oracle() {
        let cases = [
            IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]),
            IntMatrix::from_i64_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]),
            IntMatrix::from_i64_rows(&[vec![0, -3], vec![6, 0], vec![9, 12]]),
            IntMatrix::from_i64_rows(&[
                vec![3, 1, -2, 4],
                vec![0, 5, 7, -1],
                vec![2, 2, 2, 2],
                vec![-4, 0, 6, 8],
            ]),
        ];
        for a in &cases {
            let dec = smith_normal_form(a);
            let factors = dec.invariant_factors();
            let mut prod = BigInt::one();
            for (k, d) in factors.iter().enumerate() {
                prod *= d;
                assert_eq!(prod.abs(), minor_gcd(a, k + 1).abs(), "k = {}", k + 1);
            }
            assert_eq!(dec.u.mul(a).mul(&dec.v), dec.s);
        }
    }

    #[test]
    fn hnf_examples() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, a);
        assert_eq!(u.mul(&a), h);

        let a = IntMatrix::from_i64_rows(&[vec![1, 2], vec![1, 2]]);
        let (h, _) = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::from_i64_rows(&[vec![1, 2], vec![0, 0]]));

        let a = IntMatrix::from_i64_rows(&[vec![3], vec![5]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::from_i64_rows(&[vec![1], vec![0]]));
        assert_eq!(u.mul(&a), h);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = IntMatrix::from_i64_rows(&[vec![7, 13], vec![2, 5]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a), h);
        for j in 0..h.cols {
            if let Some(r) = (0..h.rows).find(|&i| !h.at(i, j).is_zero()) {
                let p = h.at(r, j);
                assert!(p > &BigInt::zero());
                for i in 0..r {
                    assert!(h.at(i, j) >= &BigInt::zero() && h.at(i, j) < p);
                }
            }
        }
    }

    #[test]
    fn solve_in_lattice_examples() {
        let a = IntMatrix::from_i64_rows(&[vec![2]]);
        assert_eq!(solve_in_lattice(&a, &[big(4)]).unwrap(), Some(vec![big(2)]));
        assert_eq!(solve_in_lattice(&a, &[big(3)]).unwrap(), None);

        let a = IntMatrix::from_i64_rows(&[vec![-1, -1], vec![1, -2]]);
        assert_eq!(solve_in_lattice(&a, &[big(1), big(0)]).unwrap(), None);
        let sol = solve_in_lattice(&a, &[big(-3), big(-3)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&sol), vec![big(-3), big(-3)]);
    }

    #[test]
    fn kernel_examples() {
        let a = IntMatrix::from_i64_rows(&[vec![1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols, 1);
        assert!(a.mul(&k).is_zero());

        assert_eq!(kernel_basis(&IntMatrix::identity(2)).cols, 0);

        let a = IntMatrix::from_i64_rows(&[vec![2, 4]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols, 1);
        assert!(a.mul(&k).is_zero());
        // The kernel vector must be primitive: (2, -1) up to sign.
        assert_eq!(k.at(0, 0).abs(), big(2));
        assert_eq!(k.at(1, 0).abs(), big(1));
    }

    #[test]
    fn kernel_rank_consistency() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4, 6], vec![1, 2, 3]]);
        let dec = smith_normal_form(&a);
        let k = kernel_basis(&a);
        assert_eq!(dec.rank() + k.cols, a.cols);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn quotient_examples() {
        let l = IntMatrix::identity(1);
        let m = IntMatrix::from_i64_rows(&[vec![3]]);
        assert_eq!(quotient_invariants(&l, &m).unwrap(), vec![big(3)]);

        let l = IntMatrix::identity(2);
        let m = IntMatrix::from_i64_rows(&[vec![-1, -1], vec![1, -2]]);
        assert_eq!(quotient_invariants(&l, &m).unwrap(), vec![big(3)]);

        let m = IntMatrix::zeros(2, 0);
        assert_eq!(
            quotient_invariants(&l, &m).unwrap(),
            vec![big(0), big(0)]
        );
    }

    #[test]
    fn quotient_rejects_non_contained() {
        let l = IntMatrix::from_i64_rows(&[vec![2]]);
        let m = IntMatrix::from_i64_rows(&[vec![3]]);
        assert!(matches!(
            quotient_invariants(&l, &m),
            Err(TateError::Containment { col: 0 })
        ));
    }

    #[test]
    fn lattice_basis_is_canonical() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4, 0], vec![0, 0, 5]]);
        let b = lattice_basis(&a);
        assert_eq!(b.cols, 2);
        // Reordering or mixing the generators leaves the basis unchanged.
        let a2 = IntMatrix::from_i64_rows(&[vec![4, 0, 2, 6], vec![0, 5, 0, 5]]);
        assert_eq!(lattice_basis(&a2), b);
    }

    #[test]
    fn echelon_solve_and_reduce() {
        let b = IntMatrix::from_i64_rows(&[vec![2, 0], vec![1, 3]]);
        let x = solve_echelon(&b, &[big(4), big(5)]).unwrap();
        assert_eq!(b.mul_vec(&x), vec![big(4), big(5)]);
        assert_eq!(solve_echelon(&b, &[big(1), big(0)]), None);

        let r = reduce_mod_echelon(&b, &[big(5), big(7)]);
        assert_eq!(r[0], big(1));
        assert!(r[1] >= big(0) && r[1] < big(3));
        // Reduction is constant on cosets.
        let shifted = [big(5) + big(2) * big(3), big(7) + big(1) * big(3) + big(3) * big(2)];
        let r2 = reduce_mod_echelon(&b, &[shifted[0].clone(), shifted[1].clone()]);
        assert_eq!(r, r2);
    }

    #[test]
    fn sparse_kernel_matches_dense() {
        let a = IntMatrix::from_i64_rows(&[vec![2, 4, 1], vec![0, 2, 1]]);
        let cols: Vec<SparseVec> = (0..a.cols).map(|j| sparse_from_dense(&a.col(j))).collect();
        let got = sparse_kernel_keep(&cols, a.rows, a.cols);
        let want = kernel_basis(&a);
        // Compare as lattices.
        let got_mat = IntMatrix::from_cols(a.cols, &got);
        assert_eq!(lattice_basis(&got_mat), lattice_basis(&want));
        for v in &got {
            assert!(a.mul_vec(v).iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn sparse_kernel_projection_keeps_prefix() {
        // Columns: [2, 0], [0, 3], and an appended "relation" column [2, 3];
        // kernel vectors project onto the first two coordinates.
        let cols = vec![
            sparse_from_dense(&[big(2), big(0)]),
            sparse_from_dense(&[big(0), big(3)]),
            sparse_from_dense(&[big(2), big(3)]),
        ];
        let ker = sparse_kernel_keep(&cols, 2, 2);
        assert_eq!(ker.len(), 1);
        // v1*2 + r*2 = 0 and v2*3 + r*3 = 0 forces v1 = v2 = -r: the
        // projection is (1, 1) up to sign.
        assert_eq!(ker[0][0].abs(), big(1));
        assert_eq!(ker[0][1].abs(), big(1));
        assert_eq!(ker[0][0], ker[0][1]);
    }

    #[test]
    fn empty_shapes_are_legal() {
        let a = IntMatrix::zeros(0, 3);
        assert_eq!(kernel_basis(&a).cols, 3);
        let dec = smith_normal_form(&a);
        assert_eq!(dec.rank(), 0);
        let b = IntMatrix::zeros(3, 0);
        assert_eq!(kernel_basis(&b).cols, 0);
        let (h, u) = hermite_normal_form(&b);
        assert_eq!(h.cols, 0);
        assert_eq!(u, IntMatrix::identity(3));
        assert_eq!(lattice_basis(&b).cols, 0);
    }
}
