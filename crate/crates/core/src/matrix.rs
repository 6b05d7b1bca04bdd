//! Exact integer linear algebra: sparse matrices, Smith normal form, and
//! kernel-basis helpers.
//!
//! All arithmetic is over arbitrary-precision integers; entry growth during
//! elimination is the known failure mode of naive integer elimination, so
//! nothing here ever rounds or overflows.
//!
//! [`smith_normal_form`] is the workhorse for boundary matrices: a two-phase
//! sparse elimination that first consumes unit pivots chosen by minimal
//! fill-in (smallest Markowitz cost), then finishes the usually tiny
//! remainder with a dense Smith normal form. Unit pivots split off a `(1)`
//! block without changing the elementary divisors of the rest, so the two
//! phases compose exactly.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix, stored column-major: `columns[c]` is the sorted
/// list of `(row, value)` pairs with nonzero value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, cols: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        assert_eq!(columns.len(), cols);
        for col in &columns {
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
            debug_assert!(col.iter().all(|(r, v)| *r < rows && !v.is_zero()));
        }
        SparseMat {
            rows,
            cols,
            columns,
        }
    }

    pub fn from_dense_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut columns = vec![Vec::new(); c];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense input");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    columns[j].push((i, BigInt::from(v)));
                }
            }
        }
        SparseMat {
            rows: r,
            cols: c,
            columns,
        }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut columns: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols);
            if !v.is_zero() {
                columns[c].push((r, v));
            }
        }
        for col in &mut columns {
            col.sort_by_key(|&(r, _)| r);
            debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0), "duplicate entry");
        }
        SparseMat {
            rows,
            cols,
            columns,
        }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        SparseMat {
            rows: n,
            cols: n,
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match self.columns[c].binary_search_by_key(&r, |&(row, _)| row) {
            Ok(i) => self.columns[c][i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMat {
        let mut columns: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r].push((c, v.clone()));
            }
        }
        SparseMat {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    /// Sparse product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut columns = Vec::with_capacity(rhs.cols);
        let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
        for c in 0..rhs.cols {
            acc.clear();
            for (mid, w) in &rhs.columns[c] {
                for (r, v) in &self.columns[*mid] {
                    let e = acc.entry(*r).or_insert_with(BigInt::zero);
                    *e += v * w;
                }
            }
            columns.push(
                acc.iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(r, v)| (*r, v.clone()))
                    .collect(),
            );
        }
        SparseMat {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        }
    }

    pub fn to_dense(&self) -> DenseMat {
        let mut d = DenseMat::zero(self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                d.set(*r, c, v.clone());
            }
        }
        d
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }
}

/// Dense integer matrix, row-major. Used for transform tracking and for the
/// small remainders left after sparse elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl DenseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        DenseMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = DenseMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, rhs: &DenseMat) -> DenseMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = DenseMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Product with a sparse right factor, keeping only rows `from..` of self.
    pub fn rows_from_mul_sparse(&self, from: usize, rhs: &SparseMat) -> DenseMat {
        assert_eq!(self.cols, rhs.rows());
        let out_rows = self.rows - from;
        let mut out = DenseMat::zero(out_rows, rhs.cols());
        for c in 0..rhs.cols() {
            for (mid, w) in rhs.column(c) {
                for i in 0..out_rows {
                    let a = self.get(from + i, *mid);
                    if !a.is_zero() {
                        let idx = i * rhs.cols() + c;
                        out.data[idx] += a * w;
                    }
                }
            }
        }
        out
    }

    pub fn to_sparse(&self) -> SparseMat {
        SparseMat::from_triplets(
            self.rows,
            self.cols,
            (0..self.rows).flat_map(|r| {
                (0..self.cols).filter_map(move |c| {
                    let v = self.get(r, c);
                    (!v.is_zero()).then(|| (r, c, v.clone()))
                })
            }),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] -= q * row[b]
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * self.get(b, j);
            self.data[a * self.cols + j] -= t;
        }
    }

    /// col[a] -= q * col[b]
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * self.get(i, b);
            self.data[i * self.cols + a] -= t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let idx = a * self.cols + j;
            let v = std::mem::take(&mut self.data[idx]);
            self.data[idx] = -v;
        }
    }
}

/// Result of a Smith normal form computation.
///
/// `diagonal` has length `min(rows, cols)`, is nonnegative, and satisfies the
/// divisibility chain `d1 | d2 | ...` (zeros at the end). When transforms are
/// requested, `U * A * V` equals the diagonal matrix exactly and both
/// transforms are unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub transforms: Option<(DenseMat, DenseMat)>,
}

impl SnfResult {
    /// Elementary divisors greater than one, in chain order.
    pub fn torsion_divisors(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

/// Rank of an integer matrix over the rationals.
pub fn rank(a: &SparseMat) -> usize {
    smith_normal_form(a).rank
}

/// Smith normal form without transforms: sparse unit-pivot elimination, then
/// a dense pass on the remainder.
pub fn smith_normal_form(a: &SparseMat) -> SnfResult {
    let mut elim = SparseElim::new(a);
    let mut units = 0usize;
    while let Some((r, c)) = elim.select_unit_pivot() {
        elim.eliminate(r, c);
        units += 1;
    }
    let remainder = elim.remainder_to_dense();
    let rem_diag = dense_snf(remainder, false, false, false).diagonal;
    let len = a.rows().min(a.cols());
    let mut diagonal = Vec::with_capacity(len);
    diagonal.extend(std::iter::repeat_with(BigInt::one).take(units));
    diagonal.extend(rem_diag.into_iter().filter(|d| !d.is_zero()));
    let rank = diagonal.len();
    debug_assert!(rank <= len);
    diagonal.resize(len, BigInt::zero());
    SnfResult {
        diagonal,
        rank,
        transforms: None,
    }
}

/// Smith normal form with unimodular transforms `U`, `V` such that
/// `U * A * V = diag`. Dense; intended for modest sizes.
pub fn smith_normal_form_with_transforms(a: &SparseMat) -> SnfResult {
    let snf = dense_snf(a.to_dense(), true, true, false);
    SnfResult {
        diagonal: snf.diagonal,
        rank: snf.rank,
        transforms: Some((snf.u.expect("requested"), snf.v.expect("requested"))),
    }
}

pub(crate) struct DenseSnf {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: Option<DenseMat>,
    pub v: Option<DenseMat>,
    /// Inverse of `V`, maintained by applying the inverse of every column
    /// operation as a row operation.
    pub vinv: Option<DenseMat>,
}

/// Textbook Smith normal form on a dense matrix with optional transform
/// tracking. Enforces the divisibility chain as it goes: after clearing a
/// pivot row and column it checks the remaining submatrix for an entry the
/// pivot does not divide, folds that row in, and re-reduces.
pub(crate) fn dense_snf(mut a: DenseMat, want_u: bool, want_v: bool, want_vinv: bool) -> DenseSnf {
    let (rows, cols) = (a.rows(), a.cols());
    let mut u = want_u.then(|| DenseMat::identity(rows));
    let mut v = want_v.then(|| DenseMat::identity(cols));
    let mut vinv = want_vinv.then(|| DenseMat::identity(cols));
    let steps = rows.min(cols);
    let mut rank = 0usize;
    'outer: for k in 0..steps {
        'pivot: loop {
            // Smallest nonzero entry of the trailing submatrix becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let val = a.get(i, j);
                    if val.is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if val.magnitude() < a.get(bi, bj).magnitude() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            a.swap_rows(k, pi);
            if let Some(u) = u.as_mut() {
                u.swap_rows(k, pi);
            }
            a.swap_cols(k, pj);
            if let Some(v) = v.as_mut() {
                v.swap_cols(k, pj);
            }
            if let Some(w) = vinv.as_mut() {
                w.swap_rows(k, pj);
            }
            // Clear column k.
            for i in k + 1..rows {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let q = a.get(i, k) / a.get(k, k);
                a.row_sub(i, k, &q);
                if let Some(u) = u.as_mut() {
                    u.row_sub(i, k, &q);
                }
                if !a.get(i, k).is_zero() {
                    continue 'pivot; // smaller remainder found; reselect
                }
            }
            // Clear row k.
            for j in k + 1..cols {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let q = a.get(k, j) / a.get(k, k);
                a.col_sub(j, k, &q);
                if let Some(v) = v.as_mut() {
                    v.col_sub(j, k, &q);
                }
                if let Some(w) = vinv.as_mut() {
                    // inverse of col_j -= q col_k is row_k += q row_j
                    let nq = -q.clone();
                    w.row_sub(k, j, &nq);
                }
                if !a.get(k, j).is_zero() {
                    continue 'pivot;
                }
            }
            // Enforce the divisibility chain against the trailing submatrix.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(a.get(i, j) % a.get(k, k)).is_zero() {
                        let minus_one = BigInt::from(-1);
                        a.row_sub(k, i, &minus_one); // row_k += row_i
                        if let Some(u) = u.as_mut() {
                            u.row_sub(k, i, &minus_one);
                        }
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if a.get(k, k).is_negative() {
            a.negate_row(k);
            if let Some(u) = u.as_mut() {
                u.negate_row(k);
            }
        }
        rank = k + 1;
    }
    let diagonal: Vec<BigInt> = (0..steps).map(|k| a.get(k, k).clone()).collect();
    debug_assert!(diagonal
        .windows(2)
        .all(|w| w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero())));
    DenseSnf {
        diagonal,
        rank,
        u,
        v,
        vinv,
    }
}

/// Coordinates of the columns of `g` in a kernel basis of `f`, given
/// `f * g = 0`. Rows of the result index the kernel basis vectors (the last
/// `nullity(f)` columns of the `V` transform of `f`), columns index the
/// columns of `g`.
pub fn image_in_kernel_basis(f: &SparseMat, g: &SparseMat) -> DenseMat {
    assert_eq!(f.cols(), g.rows(), "maps must be composable");
    debug_assert!(f.mul(g).is_zero(), "composite must vanish");
    let snf = dense_snf(f.to_dense(), false, false, true);
    let vinv = snf.vinv.expect("requested");
    vinv.rows_from_mul_sparse(snf.rank, g)
}

/// A basis of the integer kernel of `a`, as the columns of the returned
/// matrix.
pub fn kernel_basis(a: &SparseMat) -> DenseMat {
    let snf = dense_snf(a.to_dense(), false, true, false);
    let v = snf.v.expect("requested");
    let nullity = a.cols() - snf.rank;
    let mut out = DenseMat::zero(a.cols(), nullity);
    for j in 0..nullity {
        for i in 0..a.cols() {
            out.set(i, j, v.get(i, snf.rank + j).clone());
        }
    }
    out
}

/// Sparse elimination state for the unit-pivot phase.
struct SparseElim {
    cols: Vec<Option<Vec<(u32, BigInt)>>>,
    row_cols: Vec<HashSet<u32>>,
}

impl SparseElim {
    fn new(a: &SparseMat) -> Self {
        let mut row_cols = vec![HashSet::new(); a.rows()];
        let cols = (0..a.cols())
            .map(|c| {
                let col: Vec<(u32, BigInt)> = a
                    .column(c)
                    .iter()
                    .map(|(r, v)| (*r as u32, v.clone()))
                    .collect();
                for (r, _) in &col {
                    row_cols[*r as usize].insert(c as u32);
                }
                Some(col)
            })
            .collect();
        SparseElim { cols, row_cols }
    }

    /// Best unit pivot by Markowitz cost `(col_nnz - 1)(row_nnz - 1)`;
    /// a zero-cost pivot is taken immediately.
    fn select_unit_pivot(&self) -> Option<(u32, u32)> {
        let mut best: Option<(usize, u32, u32)> = None;
        for (c, col) in self.cols.iter().enumerate() {
            let Some(col) = col else { continue };
            let cn = col.len();
            if cn == 0 {
                continue;
            }
            for (r, v) in col {
                if v.magnitude().bits() != 1 {
                    continue; // not a unit
                }
                let rn = self.row_cols[*r as usize].len();
                let score = (cn - 1) * (rn - 1);
                if score == 0 {
                    return Some((*r, c as u32));
                }
                if best.is_none_or(|(s, _, _)| score < s) {
                    best = Some((score, *r, c as u32));
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    /// Clears the pivot row with column operations, then retires the pivot
    /// row and column. Valid only for unit pivots.
    fn eliminate(&mut self, r: u32, c: u32) {
        let pivot = self.cols[c as usize].take().expect("active column");
        for (pr, _) in &pivot {
            self.row_cols[*pr as usize].remove(&c);
        }
        let pv = {
            let i = pivot.binary_search_by_key(&r, |&(row, _)| row).expect("pivot entry");
            pivot[i].1.clone()
        };
        debug_assert!(pv.magnitude().bits() == 1);
        let targets: Vec<u32> = self.row_cols[r as usize].iter().copied().collect();
        for tc in targets {
            let col = self.cols[tc as usize].take().expect("active column");
            let a = {
                let i = col.binary_search_by_key(&r, |&(row, _)| row).expect("entry at pivot row");
                col[i].1.clone()
            };
            let f = &a * &pv; // a / pv since pv is a unit
            let merged = self.merge_sub(col, &pivot, &f, tc);
            self.cols[tc as usize] = Some(merged);
        }
        debug_assert!(self.row_cols[r as usize].is_empty());
    }

    /// col - f * pivot, maintaining the row index.
    fn merge_sub(
        &mut self,
        col: Vec<(u32, BigInt)>,
        pivot: &[(u32, BigInt)],
        f: &BigInt,
        col_id: u32,
    ) -> Vec<(u32, BigInt)> {
        let mut out = Vec::with_capacity(col.len() + pivot.len());
        let mut i = 0;
        let mut j = 0;
        while i < col.len() || j < pivot.len() {
            if j >= pivot.len() || (i < col.len() && col[i].0 < pivot[j].0) {
                out.push(col[i].clone());
                i += 1;
            } else if i >= col.len() || pivot[j].0 < col[i].0 {
                let v = -(f * &pivot[j].1);
                if !v.is_zero() {
                    self.row_cols[pivot[j].0 as usize].insert(col_id);
                    out.push((pivot[j].0, v));
                }
                j += 1;
            } else {
                let v = &col[i].1 - f * &pivot[j].1;
                if v.is_zero() {
                    self.row_cols[col[i].0 as usize].remove(&col_id);
                } else {
                    out.push((col[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Packs the surviving entries into a dense matrix for the final pass.
    fn remainder_to_dense(&self) -> DenseMat {
        let mut live_rows: Vec<u32> = self
            .row_cols
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty())
            .map(|(r, _)| r as u32)
            .collect();
        live_rows.sort_unstable();
        let row_pos: std::collections::HashMap<u32, usize> = live_rows
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, i))
            .collect();
        let live_cols: Vec<usize> = self
            .cols
            .iter()
            .enumerate()
            .filter(|(_, c)| c.as_ref().is_some_and(|col| !col.is_empty()))
            .map(|(c, _)| c)
            .collect();
        let mut out = DenseMat::zero(live_rows.len(), live_cols.len());
        for (j, &c) in live_cols.iter().enumerate() {
            for (r, v) in self.cols[c].as_ref().expect("live") {
                out.set(row_pos[r], j, v.clone());
            }
        }
        out
    }
}
