//! The explicit semigroup families used throughout the crate: rectangular
//! bands, cyclic groups, the Moore-space semigroups `S_n` and `M_n`, the
//! suspension monoid `J(S)` and the wedge monoid.

use crate::semigroup::{FiniteSemigroup, SemigroupError};

/// The one-element monoid.
pub fn trivial_monoid() -> FiniteSemigroup {
    FiniteSemigroup::from_table(&[vec![0]])
        .expect("trivial table")
        .with_names(vec!["1".to_string()])
}

/// The rectangular band on `A x B` with `(a,b)(a',b') = (a,b')`.
/// Element `(p, q)` has index `p * b + q`.
pub fn rectangular_band(a: usize, b: usize) -> FiniteSemigroup {
    assert!(a >= 1 && b >= 1, "rectangular band needs a, b >= 1");
    let m = a * b;
    let mut table = vec![0usize; m * m];
    for p in 0..a {
        for q in 0..b {
            for p2 in 0..a {
                for q2 in 0..b {
                    table[(p * b + q) * m + (p2 * b + q2)] = p * b + q2;
                }
            }
        }
    }
    let names = (0..a)
        .flat_map(|p| (0..b).map(move |q| format!("({p}, {q})")))
        .collect();
    FiniteSemigroup::from_flat(m, table)
        .expect("rectangular band is associative")
        .with_names(names)
}

/// The cyclic group of order `n` as addition modulo `n`, identity 0.
pub fn cyclic_group(n: usize) -> FiniteSemigroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = (i + j) % n;
        }
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    FiniteSemigroup::from_flat(n, table)
        .expect("cyclic group is associative")
        .with_names(names)
}

/// The suspension monoid `J(S) = S ∪ K` of a monoid `S`, where
/// `K = {1,2} x S` is a rectangular band and also the minimal ideal.
///
/// Products: within `S` as before; `(i,s)(j,s') = (i,s')` within `K`;
/// `s (i,s') = (i,s')` and `(i,s') s = (i, s's)` across. Elements of `S` keep
/// their indices; `(i, s)` has index `|S| + (i-1)|S| + s`.
pub fn suspension_monoid(s: &FiniteSemigroup) -> Result<FiniteSemigroup, SemigroupError> {
    if !s.is_monoid() {
        return Err(SemigroupError::NotAMonoid);
    }
    let n = s.order();
    let m = 3 * n;
    let k_index = |i: usize, x: usize| n + (i - 1) * n + x;
    let mut table = vec![0usize; m * m];
    let mut set = |a: usize, b: usize, v: usize| table[a * m + b] = v;
    for x in 0..n {
        for y in 0..n {
            set(x, y, s.mul(x, y));
        }
    }
    for i in 1..=2 {
        for x in 0..n {
            let kx = k_index(i, x);
            for j in 1..=2 {
                for y in 0..n {
                    set(kx, k_index(j, y), k_index(i, y));
                }
            }
            for y in 0..n {
                set(y, kx, kx);
                set(kx, y, k_index(i, s.mul(x, y)));
            }
        }
    }
    let mut names: Vec<String> = (0..n).map(|x| s.name(x)).collect();
    for i in 1..=2 {
        for x in 0..n {
            names.push(format!("({i}, {})", s.name(x)));
        }
    }
    Ok(FiniteSemigroup::from_flat(m, table)?.with_names(names))
}

/// The wedge monoid `(M x {1}) ∪ (K x N)` inside `M x N`, together with the
/// witnesses for the embedding into the direct product.
#[derive(Clone, Debug)]
pub struct WedgeMonoid {
    pub semigroup: FiniteSemigroup,
    /// For each element of the wedge, its coordinates `(m, n)` in `M x N`.
    pub pairs: Vec<(usize, usize)>,
    /// The minimal ideal `K` of `M`, in `M`'s indices.
    pub k_ideal: Vec<usize>,
}

/// Builds the wedge monoid of `M` and `N`. Requires both to be monoids and
/// the minimal ideal `K` of `M` to be a rectangular band. The result has
/// `|M| + |K| (|N| - 1)` elements; if `J` is the minimal ideal of `N`, the
/// minimal ideal of the wedge is `K x J`.
pub fn wedge_monoid(
    m: &FiniteSemigroup,
    n: &FiniteSemigroup,
) -> Result<WedgeMonoid, SemigroupError> {
    let (one_m, one_n) = match (m.identity(), n.identity()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(SemigroupError::NotAMonoid),
    };
    let k = m.minimal_ideal();
    if !m.is_rectangular_band_on(&k.elements) {
        return Err(SemigroupError::MinimalIdealNotRectangular);
    }
    // M x {1} first in M's order, then K x (N \ {1}) lexicographically.
    let mut pairs: Vec<(usize, usize)> = (0..m.order()).map(|x| (x, one_n)).collect();
    for &kx in &k.elements {
        for y in 0..n.order() {
            if y != one_n {
                pairs.push((kx, y));
            }
        }
    }
    let order = pairs.len();
    let mut index = std::collections::HashMap::with_capacity(order);
    for (i, &p) in pairs.iter().enumerate() {
        index.insert(p, i);
    }
    let mut table = vec![0usize; order * order];
    for (i, &(a1, b1)) in pairs.iter().enumerate() {
        for (j, &(a2, b2)) in pairs.iter().enumerate() {
            let p = (m.mul(a1, a2), n.mul(b1, b2));
            table[i * order + j] = *index
                .get(&p)
                .expect("the wedge is closed under the product of M x N");
        }
    }
    let names = pairs
        .iter()
        .map(|&(a, b)| format!("({}, {})", m.name(a), n.name(b)))
        .collect();
    let semigroup = FiniteSemigroup::from_flat(order, table)?.with_names(names);
    debug_assert_eq!(semigroup.identity(), Some(one_m));
    Ok(WedgeMonoid {
        semigroup,
        pairs,
        k_ideal: k.elements,
    })
}

/// Row labels of the rectangular band `K_n`: `x`, `y`, or a residue mod `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KRow {
    X,
    Y,
    Num(usize),
}

/// Second coordinate of `T_n = C_n x {s, t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TLetter {
    S,
    T,
}

/// An element of `S_n` in layout coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MooreElement {
    K(KRow, usize),
    T(usize, TLetter),
}

/// Index bookkeeping for `S_n = K_n ⊔ T_n` and `M_n = S_n` plus identity.
///
/// `K_n` comes first in row-major order with rows ordered `x, y, 0..n-1`;
/// then `T_n` ordered `(0,s), (0,t), (1,s), ...`; the identity of `M_n` is
/// the last index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MooreSemigroupLayout {
    pub n: usize,
}

impl MooreSemigroupLayout {
    pub fn k_size(&self) -> usize {
        (self.n + 2) * self.n
    }

    pub fn t_size(&self) -> usize {
        2 * self.n
    }

    pub fn s_size(&self) -> usize {
        self.k_size() + self.t_size()
    }

    /// Identity index in `M_n`.
    pub fn identity_index(&self) -> usize {
        self.s_size()
    }

    fn row_index(&self, row: KRow) -> usize {
        match row {
            KRow::X => 0,
            KRow::Y => 1,
            KRow::Num(l) => {
                debug_assert!(l < self.n);
                2 + l
            }
        }
    }

    pub fn k_index(&self, row: KRow, j: usize) -> usize {
        debug_assert!(j < self.n);
        self.row_index(row) * self.n + j
    }

    pub fn t_index(&self, k: usize, z: TLetter) -> usize {
        debug_assert!(k < self.n);
        self.k_size() + 2 * k + if z == TLetter::S { 0 } else { 1 }
    }

    /// Decodes an `S_n` index (the identity of `M_n` is not an `S_n` element).
    pub fn decode(&self, idx: usize) -> MooreElement {
        if idx < self.k_size() {
            let row = match idx / self.n {
                0 => KRow::X,
                1 => KRow::Y,
                r => KRow::Num(r - 2),
            };
            MooreElement::K(row, idx % self.n)
        } else {
            let off = idx - self.k_size();
            debug_assert!(off < self.t_size());
            let z = if off % 2 == 0 { TLetter::S } else { TLetter::T };
            MooreElement::T(off / 2, z)
        }
    }

    pub fn k_indices(&self) -> Vec<usize> {
        (0..self.k_size()).collect()
    }

    fn name(&self, idx: usize) -> String {
        match self.decode(idx) {
            MooreElement::K(KRow::X, j) => format!("(x, {j})"),
            MooreElement::K(KRow::Y, j) => format!("(y, {j})"),
            MooreElement::K(KRow::Num(l), j) => format!("({l}, {j})"),
            MooreElement::T(k, TLetter::S) => format!("({k}, s)"),
            MooreElement::T(k, TLetter::T) => format!("({k}, t)"),
        }
    }
}

/// Builds the semigroup `S_n` (whose monoid `M_n = S_n` plus identity has a
/// Moore space of type `M(C_n, 2)` as classifying space) together with `M_n`
/// and the index layout.
///
/// `S_n = K_n ⊔ T_n` where `K_n` is the `(n+2) x n` rectangular band with
/// rows labelled `x, y, 0..n-1`, `T_n = C_n x {s,t}` with
/// `(k,z)(l,w) = (k+l,w)`, and the mixed products are
/// `(i,j)(k,z) = (i, k+j)`, `(k,z)(x,i) = (x,i)`, `(k,z)(l,i) = (k+l, i)`,
/// `(k,s)(y,i) = (k-1, i)`, `(k,t)(y,i) = (k, i)`, all mod `n`.
pub fn moore_semigroup(
    n: usize,
) -> (FiniteSemigroup, FiniteSemigroup, MooreSemigroupLayout) {
    assert!(n >= 2, "Moore semigroup needs n >= 2");
    let layout = MooreSemigroupLayout { n };
    let size = layout.s_size();
    let modn = |v: usize| v % n;
    let mut table = vec![0usize; size * size];
    for a in 0..size {
        for b in 0..size {
            use MooreElement::{K, T};
            let product = match (layout.decode(a), layout.decode(b)) {
                (K(i, _j), K(k, l)) => {
                    let _ = k;
                    layout.k_index(i, l)
                }
                (T(k, _z), T(l, w)) => layout.t_index(modn(k + l), w),
                (K(i, j), T(k, _z)) => layout.k_index(i, modn(k + j)),
                (T(k, z), K(row, i)) => match row {
                    KRow::X => layout.k_index(KRow::X, i),
                    KRow::Num(l) => layout.k_index(KRow::Num(modn(k + l)), i),
                    KRow::Y => match z {
                        TLetter::S => layout.k_index(KRow::Num(modn(k + n - 1)), i),
                        TLetter::T => layout.k_index(KRow::Num(k), i),
                    },
                },
            };
            table[a * size + b] = product;
        }
    }
    let names = (0..size).map(|i| layout.name(i)).collect();
    let s_n = FiniteSemigroup::from_flat(size, table)
        .expect("the seven product rules are associative")
        .with_names(names);
    let m_n = s_n.adjoin_identity();
    (s_n, m_n, layout)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rb11_is_trivial() {
        assert_eq!(rectangular_band(1, 1).order(), 1);
    }

    #[test]
    fn rb22_is_an_idempotent_square() {
        let s = rectangular_band(2, 2);
        assert_eq!(s.order(), 4);
        assert!(s.is_rectangular_band());
    }

    #[test]
    fn rb32_satisfies_xyx_exhaustively() {
        let s = rectangular_band(3, 2);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(s.mul(s.mul(x, y), x), x);
            }
        }
    }

    #[test]
    fn cyclic_tables() {
        assert_eq!(cyclic_group(1).order(), 1);
        assert_eq!(cyclic_group(2).table(), &[0, 1, 1, 0]);
        assert_eq!(cyclic_group(5).identity(), Some(0));
    }

    #[test]
    fn c6_matches_c2_times_c3_on_element_orders() {
        let order_of = |s: &FiniteSemigroup, g: usize| {
            let e = s.identity().unwrap();
            let mut x = g;
            let mut k = 1;
            while x != e {
                x = s.mul(x, g);
                k += 1;
            }
            k
        };
        let c6 = cyclic_group(6);
        let p = cyclic_group(2).direct_product(&cyclic_group(3));
        let mut a: Vec<usize> = (0..6).map(|g| order_of(&c6, g)).collect();
        let mut b: Vec<usize> = (0..6).map(|g| order_of(&p, g)).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn suspension_of_trivial_monoid() {
        let j = suspension_monoid(&trivial_monoid()).unwrap();
        assert_eq!(j.order(), 3);
        let k = j.minimal_ideal();
        assert_eq!(k.elements, vec![1, 2]);
        assert!(j.is_rectangular_band_on(&k.elements));
    }

    #[test]
    fn suspension_of_c2() {
        let j = suspension_monoid(&cyclic_group(2)).unwrap();
        assert_eq!(j.order(), 6);
        let k = j.minimal_ideal();
        assert_eq!(k.elements.len(), 4);
        assert!(j.is_rectangular_band_on(&k.elements));
        assert_eq!(j.identity(), Some(0));
    }

    #[test]
    fn suspension_requires_monoid() {
        let err = suspension_monoid(&rectangular_band(2, 2)).unwrap_err();
        assert_eq!(err, SemigroupError::NotAMonoid);
    }

    #[test]
    fn suspension_validates_at_order_13() {
        let (_, m2, _) = moore_semigroup(2);
        // from_flat inside suspension_monoid runs the full triple loop.
        let j = suspension_monoid(&m2).unwrap();
        assert_eq!(j.order(), 39);
    }

    #[test]
    fn wedge_with_trivial_n_is_m_itself() {
        let m = rectangular_band(2, 2).adjoin_identity();
        let w = wedge_monoid(&m, &trivial_monoid()).unwrap();
        assert_eq!(w.semigroup.order(), 5);
        assert_eq!(w.semigroup.table(), m.table());
    }

    #[test]
    fn wedge_of_two_rb22_monoids() {
        let m = rectangular_band(2, 2).adjoin_identity();
        let w = wedge_monoid(&m, &m).unwrap();
        assert_eq!(w.semigroup.order(), 5 + 4 * 4);
        assert!(w.semigroup.is_monoid());
    }

    #[test]
    fn wedge_is_a_submonoid_of_the_product() {
        let m = rectangular_band(2, 2).adjoin_identity();
        let n = suspension_monoid(&trivial_monoid()).unwrap();
        let w = wedge_monoid(&m, &n).unwrap();
        let s = &w.semigroup;
        for i in 0..s.order() {
            for j in 0..s.order() {
                let (a1, b1) = w.pairs[i];
                let (a2, b2) = w.pairs[j];
                assert_eq!(w.pairs[s.mul(i, j)], (m.mul(a1, a2), n.mul(b1, b2)));
            }
        }
    }

    #[test]
    fn wedge_minimal_ideal_is_k_times_j() {
        let m = rectangular_band(2, 2).adjoin_identity();
        let (_, m2, layout) = moore_semigroup(2);
        let w = wedgemonoid_for_test(&m, &m2);
        let min = w.semigroup.minimal_ideal();
        assert_eq!(min.elements.len(), 4 * layout.k_size());
        let j_min: std::collections::BTreeSet<usize> =
            m2.minimal_ideal().elements.into_iter().collect();
        for &i in &min.elements {
            let (a, b) = w.pairs[i];
            assert!(w.k_ideal.contains(&a));
            assert!(j_min.contains(&b));
        }
    }

    fn wedgemonoid_for_test(m: &FiniteSemigroup, n: &FiniteSemigroup) -> WedgeMonoid {
        wedge_monoid(m, n).unwrap()
    }

    #[test]
    fn wedge_rejects_non_rectangular_minimal_ideal() {
        let err = wedge_monoid(&cyclic_group(2), &trivial_monoid()).unwrap_err();
        assert_eq!(err, SemigroupError::MinimalIdealNotRectangular);
    }

    #[test]
    fn wedge_rejects_non_monoid() {
        let m = rectangular_band(2, 2).adjoin_identity();
        let err = wedge_monoid(&m, &rectangular_band(2, 2)).unwrap_err();
        assert_eq!(err, SemigroupError::NotAMonoid);
    }

    #[test]
    fn moore_sizes() {
        let (s2, m2, layout) = moore_semigroup(2);
        assert_eq!(s2.order(), 12);
        assert_eq!(m2.order(), 13);
        assert_eq!(layout.k_size(), 8);
        assert_eq!(layout.t_size(), 4);
        assert_eq!(m2.identity(), Some(12));
    }

    #[test]
    fn moore_sample_products_n3() {
        let (s3, _, l) = moore_semigroup(3);
        // (1,s)(y,0) = (0,0) and (1,t)(y,0) = (1,0)
        assert_eq!(
            s3.mul(l.t_index(1, TLetter::S), l.k_index(KRow::Y, 0)),
            l.k_index(KRow::Num(0), 0)
        );
        assert_eq!(
            s3.mul(l.t_index(1, TLetter::T), l.k_index(KRow::Y, 0)),
            l.k_index(KRow::Num(1), 0)
        );
        // (i,j)(2,t) = (i, 2+j) for every (i,j) in K
        for idx in l.k_indices() {
            let MooreElement::K(row, j) = l.decode(idx) else {
                unreachable!()
            };
            assert_eq!(
                s3.mul(idx, l.t_index(2, TLetter::T)),
                l.k_index(row, (2 + j) % 3)
            );
        }
    }

    #[test]
    fn moore_s4_is_associative() {
        // from_flat already runs the full 24^3 triple loop.
        let (s4, _, _) = moore_semigroup(4);
        assert_eq!(s4.order(), 32);
    }

    #[test]
    fn moore_k_block_is_an_idempotent_ideal() {
        let (s3, m3, l) = moore_semigroup(3);
        let k = l.k_indices();
        for &e in &k {
            assert_eq!(s3.mul(e, e), e);
        }
        assert!(s3.is_ideal(&k));
        assert!(m3.is_ideal(&k));
        assert!(s3.is_rectangular_band_on(&k));
        // T products never land in K.
        for a in l.k_size()..l.s_size() {
            for b in l.k_size()..l.s_size() {
                assert!(s3.mul(a, b) >= l.k_size());
            }
        }
    }

    #[test]
    fn moore_minimal_ideal_is_k() {
        let (_, m2, l) = moore_semigroup(2);
        assert_eq!(m2.minimal_ideal().elements, l.k_indices());
    }

    #[test]
    fn moore_is_not_aperiodic_and_t_units_are_cyclic() {
        let (_, m3, l) = moore_semigroup(3);
        assert!(!m3.is_aperiodic());
        assert!(!m3.is_aperiodic_by_power_stabilization());
        let g = m3.maximal_subgroup(l.t_index(0, TLetter::T)).unwrap();
        assert_eq!(g.elements.len(), 3);
        assert_eq!(g.table.table(), cyclic_group(3).table());
        let g = m3.maximal_subgroup(l.t_index(0, TLetter::S)).unwrap();
        assert_eq!(g.elements.len(), 3);
    }

    #[test]
    fn moore_idempotents_are_k_plus_two() {
        let (s2, _, l) = moore_semigroup(2);
        let idem = s2.idempotents();
        assert_eq!(idem.len(), l.k_size() + 2);
        assert!(idem.contains(&l.t_index(0, TLetter::S)));
        assert!(idem.contains(&l.t_index(0, TLetter::T)));
    }

    #[test]
    fn moore_principal_series_m2() {
        let (_, m2, l) = moore_semigroup(2);
        let series = m2.principal_series();
        assert!(series.certified);
        let sizes: Vec<usize> = series.ideals.iter().map(|i| i.elements.len()).collect();
        assert_eq!(sizes, vec![13, 12, 8]);
        assert_eq!(series.ideals[2].elements, l.k_indices());
    }

    #[test]
    fn moore_rees_quotient_size() {
        let (_, m2, _) = moore_semigroup(2);
        let q = m2.rees_quotient(&m2.minimal_ideal()).unwrap();
        assert_eq!(q.order(), 13 - 8 + 1);
    }

    #[test]
    fn moore_is_regular() {
        for n in 2..=4 {
            let (s, m, _) = moore_semigroup(n);
            assert!(s.is_regular());
            assert!(m.is_regular());
        }
    }
}
