//! Shared test utilities: independent oracles (dense naive Smith normal
//! form, determinants, brute-force associativity and ideal enumeration) and
//! the exhaustive small-order corpora. Everything here is deliberately
//! written from scratch, without reusing the library's elimination code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use bsemi_core::semigroup::FiniteSemigroup;

/// Independent associativity check by the obvious triple loop.
pub fn is_associative(order: usize, flat: &[usize]) -> bool {
    for i in 0..order {
        for j in 0..order {
            for k in 0..order {
                let ij = flat[i * order + j];
                let jk = flat[j * order + k];
                if flat[ij * order + k] != flat[i * order + jk] {
                    return false;
                }
            }
        }
    }
    true
}

/// Every associative table of the given order (1..=3 is practical), with the
/// production validator cross-checked against the independent triple loop.
pub fn semigroups_of_order(order: usize) -> Vec<FiniteSemigroup> {
    let cells = order * order;
    let total = (order as u64).pow(cells as u32);
    let mut out = Vec::new();
    let mut flat = vec![0usize; cells];
    for code in 0..total {
        let mut v = code;
        for cell in flat.iter_mut() {
            *cell = (v % order as u64) as usize;
            v /= order as u64;
        }
        let oracle_says = is_associative(order, &flat);
        match FiniteSemigroup::from_flat(order, flat.clone()) {
            Ok(s) => {
                assert!(oracle_says, "validator accepted a non-associative table");
                out.push(s);
            }
            Err(_) => assert!(!oracle_says, "validator rejected an associative table"),
        }
    }
    out
}

/// Every monoid of the given order with the identity fixed as element 0
/// (any monoid is a relabeling of one of these).
pub fn monoids_of_order(order: usize) -> Vec<FiniteSemigroup> {
    let free = (order - 1) * (order - 1);
    let total = (order as u64).pow(free as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut flat = vec![0usize; order * order];
        for i in 0..order {
            flat[i] = i;
            flat[i * order] = i;
        }
        let mut v = code;
        for i in 1..order {
            for j in 1..order {
                flat[i * order + j] = (v % order as u64) as usize;
                v /= order as u64;
            }
        }
        if let Ok(s) = FiniteSemigroup::from_flat(order, flat) {
            if s.identity() == Some(0) {
                out.push(s);
            }
        }
    }
    out
}

/// All two-sided ideals by exhaustive subset enumeration (order <= 16).
pub fn all_ideals_brute_force(s: &FiniteSemigroup) -> Vec<Vec<usize>> {
    let n = s.order();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let elements: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let closed = elements.iter().all(|&x| {
            (0..n).all(|t| {
                mask & (1 << s.mul(t, x)) != 0 && mask & (1 << s.mul(x, t)) != 0
            })
        });
        if closed {
            out.push(elements);
        }
    }
    out
}

/// Textbook dense Smith normal form: repeatedly move the smallest nonzero
/// entry of the trailing submatrix to the corner, clear its row and column
/// with Euclidean steps, and fold in any entry the corner fails to divide.
pub fn naive_snf_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let steps = rows.min(cols);
    let mut k = 0usize;
    while k < steps {
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let mut dirty = false;
        for i in k + 1..rows {
            if !a[i][k].is_zero() {
                let q = &a[i][k] / &a[k][k];
                for j in k..cols {
                    let t = &q * &a[k][j];
                    a[i][j] -= t;
                }
                if !a[i][k].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in k + 1..cols {
            if !a[k][j].is_zero() {
                let q = &a[k][j] / &a[k][k];
                for i in k..rows {
                    let t = &q * &a[i][k];
                    a[i][j] -= t;
                }
                if !a[k][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue;
        }
        let mut fold = None;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !(&a[i][j] % &a[k][k]).is_zero() {
                    fold = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = fold {
            for j in k..cols {
                let t = a[i][j].clone();
                a[k][j] += t;
            }
            continue;
        }
        if a[k][k].is_negative() {
            for j in k..cols {
                let t = std::mem::take(&mut a[k][j]);
                a[k][j] = -t;
            }
        }
        k += 1;
    }
    (0..steps).map(|i| a[i][i].clone()).collect()
}

/// Smith diagonal via determinant divisors: `d_k = D_k / D_{k-1}` where
/// `D_k` is the gcd of all k x k minors. Exponential; only for tiny inputs,
/// but a mathematically independent route.
pub fn determinant_divisor_snf(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let steps = rows.min(cols);
    assert!(steps <= 6, "determinant-divisor route is exponential");
    let mut prev = BigInt::one();
    let mut out = Vec::with_capacity(steps);
    for k in 1..=steps {
        let mut gcd = BigInt::zero();
        for rsel in subsets(rows, k) {
            for csel in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rsel
                    .iter()
                    .map(|&i| csel.iter().map(|&j| a[i][j].clone()).collect())
                    .collect();
                gcd = gcd.gcd(&laplace_det(&minor));
            }
        }
        if gcd.is_zero() {
            out.push(BigInt::zero());
        } else {
            out.push(&gcd / &prev);
            prev = gcd;
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Cofactor-expansion determinant; fine up to 8 x 8.
pub fn laplace_det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut det = BigInt::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| a[i][c].clone())
                    .collect()
            })
            .collect();
        let term = &a[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Bareiss fraction-free determinant: exact over the integers at any size.
pub fn bareiss_det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

pub fn dense_bigint(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}
