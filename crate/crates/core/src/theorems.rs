//! Numerical verification suites: the explicit projective resolution behind
//! the Moore-space monoids `M_n`, the suspension homology shift, wedge
//! additivity, and homology vanishing for regular monoids.
//!
//! The resolution of the trivial module over `Z M_n` is
//!
//! ```text
//! 0 <- Z <-eps- ZM(x,0) <-phi- ZM <-psi- ZM(0,t) (+) ZK <-xi- ZK <- 0
//! ```
//!
//! with `eps` the augmentation, `phi` right multiplication by
//! `(y,0) - (x,0)`, `psi` sending the cyclic generator `(0,t)` to
//! `(0,t) - (1,s)` and including `ZK`, and
//! `xi(w,i) = ((w,i)(0,t), (w,i+1) - (w,i))`. Every module here is free as
//! an abelian group on an explicitly enumerated basis, so exactness of the
//! module maps is equivalent to exactness of their integer matrices, which
//! is what gets checked. Tensoring with the trivial module collapses each
//! cyclic summand to a copy of `Z` and leaves the small integer matrices
//! whose homology is `(Z, 0, Z/n, 0)`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::constructions::{
    moore_semigroup, suspension_monoid, wedge_monoid, KRow, MooreSemigroupLayout, TLetter,
};
use crate::homology::{bar_complex, homology_profile, ChainComplex, HomologyError, HomologyGroup};
use crate::matrix::{self, DenseMat, SparseMat};
use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error("exactness fails at {position}: {defect}")]
    ExactnessFailure { position: String, defect: String },
    #[error("semigroup is not regular")]
    NotRegular,
    #[error("degree {degree} is blocked by the column cap {cap} (would need {rank} columns)")]
    InfeasibleDegree {
        degree: usize,
        rank: usize,
        cap: usize,
    },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One verified claim: what was asserted, what was expected, what came out.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub claim: String,
    pub parameters: BTreeMap<String, String>,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

fn report(
    claim: impl Into<String>,
    parameters: BTreeMap<String, String>,
    expected: impl ToString,
    computed: impl ToString,
    started: Instant,
) -> CheckReport {
    let expected = expected.to_string();
    let computed = computed.to_string();
    let verdict = if expected == computed {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    CheckReport {
        claim: claim.into(),
        parameters,
        expected,
        computed,
        verdict,
        elapsed_ms: started.elapsed().as_millis(),
    }
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// The four maps of the resolution realized as integer matrices over
/// enumerated bases, together with the monoid and layout they came from.
#[derive(Clone, Debug)]
pub struct ResolutionData {
    pub n: usize,
    /// Basis of `ZM(x,0)`: the orbit `M_n (x,0)`, ascending element indices.
    pub basis_orbit_x0: Vec<usize>,
    /// Basis of `ZM(0,t)`: the orbit `M_n (0,t)`, ascending element indices.
    pub basis_orbit_0t: Vec<usize>,
    /// Basis of `ZK_n`: the `K_n` block, ascending element indices.
    pub basis_k: Vec<usize>,
    pub eps: SparseMat,
    pub phi: SparseMat,
    pub psi: SparseMat,
    pub xi: SparseMat,
    pub monoid: FiniteSemigroup,
    pub layout: MooreSemigroupLayout,
}

impl ResolutionData {
    /// Dimension of the middle term `ZM(0,t) (+) ZK`.
    pub fn middle_dim(&self) -> usize {
        self.basis_orbit_0t.len() + self.basis_k.len()
    }
}

fn orbit(m: &FiniteSemigroup, seed: usize) -> Vec<usize> {
    let mut set: std::collections::BTreeSet<usize> =
        (0..m.order()).map(|a| m.mul(a, seed)).collect();
    set.insert(seed);
    set.into_iter().collect()
}

/// Builds the resolution matrices for a given modulus `n >= 2`. The orbits
/// are enumerated from the multiplication table, not assumed.
pub fn build_resolution(n: usize) -> ResolutionData {
    assert!(n >= 2);
    let (_, m_n, layout) = moore_semigroup(n);
    let x0 = layout.k_index(KRow::X, 0);
    let y0 = layout.k_index(KRow::Y, 0);
    let e0t = layout.t_index(0, TLetter::T);
    let e1s = layout.t_index(1, TLetter::S);
    let basis_orbit_x0 = orbit(&m_n, x0);
    let basis_orbit_0t = orbit(&m_n, e0t);
    let basis_k = layout.k_indices();
    let pos_x0 = |e: usize| basis_orbit_x0.binary_search(&e).expect("orbit member");
    let pos_0t = |e: usize| basis_orbit_0t.binary_search(&e).expect("orbit member");
    let pos_k = |e: usize| basis_k.binary_search(&e).expect("K member");

    // eps: augmentation, every orbit element maps to 1.
    let eps = SparseMat::from_triplets(
        1,
        basis_orbit_x0.len(),
        (0..basis_orbit_x0.len()).map(|c| (0usize, c, BigInt::one())),
    );

    // phi: m -> m (y,0) - m (x,0).
    let order = m_n.order();
    let mut phi_cols: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(order);
    for a in 0..order {
        let plus = pos_x0(m_n.mul(a, y0));
        let minus = pos_x0(m_n.mul(a, x0));
        if plus == minus {
            phi_cols.push(Vec::new());
        } else {
            let mut col = vec![
                (plus, BigInt::one()),
                (minus, -BigInt::one()),
            ];
            col.sort_by_key(|&(r, _)| r);
            phi_cols.push(col);
        }
    }
    let phi = SparseMat::from_columns(basis_orbit_x0.len(), order, phi_cols);

    // psi: on the orbit summand u -> u - u (1,s); on the K summand the
    // inclusion. Well-defined because (1,s) = (0,t)(1,s), so the value at an
    // orbit element is witness-independent.
    let middle = basis_orbit_0t.len() + basis_k.len();
    let mut psi_cols: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(middle);
    for &u in &basis_orbit_0t {
        let mut col = vec![
            (u, BigInt::one()),
            (m_n.mul(u, e1s), -BigInt::one()),
        ];
        col.sort_by_key(|&(r, _)| r);
        psi_cols.push(col);
    }
    for &w in &basis_k {
        psi_cols.push(vec![(w, BigInt::one())]);
    }
    let psi = SparseMat::from_columns(order, middle, psi_cols);

    // xi(w,i) = ((w,i)(0,t), (w,i+1) - (w,i)), with i+1 taken mod n on the
    // layout coordinate.
    let mut xi_cols: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(basis_k.len());
    for &w in &basis_k {
        let first = pos_0t(m_n.mul(w, e0t));
        let crate::constructions::MooreElement::K(row, j) = layout.decode(w) else {
            unreachable!("basis_k holds K elements")
        };
        let up = layout.k_index(row, (j + 1) % n);
        let mut col = vec![
            (first, BigInt::one()),
            (basis_orbit_0t.len() + pos_k(up), BigInt::one()),
            (basis_orbit_0t.len() + pos_k(w), -BigInt::one()),
        ];
        col.sort_by_key(|&(r, _)| r);
        xi_cols.push(col);
    }
    let xi = SparseMat::from_columns(middle, basis_k.len(), xi_cols);

    ResolutionData {
        n,
        basis_orbit_x0,
        basis_orbit_0t,
        basis_k,
        eps,
        phi,
        psi,
        xi,
        monoid: m_n,
        layout,
    }
}

/// Exactness of the resolution over the integers:
/// (a) consecutive composites vanish, (b) ranks of incoming and outgoing
/// maps add up to each interior dimension, (c) each image saturates the
/// kernel it lands in (all elementary divisors 1 at full rank),
/// (d) `xi` is injective, (e) `eps` is surjective.
pub fn verify_exactness(r: &ResolutionData) -> Result<Vec<CheckReport>, TheoremError> {
    let mut reports = Vec::new();
    let n_param = params(&[("n", r.n.to_string())]);
    let fail = |position: &str, defect: String| TheoremError::ExactnessFailure {
        position: position.to_string(),
        defect,
    };

    // (a) composites vanish
    for (name, left, right) in [
        ("eps . phi", &r.eps, &r.phi),
        ("phi . psi", &r.phi, &r.psi),
        ("psi . xi", &r.psi, &r.xi),
    ] {
        let started = Instant::now();
        let zero = left.mul(right).is_zero();
        reports.push(report(
            format!("(a) {name} = 0"),
            n_param.clone(),
            true,
            zero,
            started,
        ));
        if !zero {
            return Err(fail(name, "composite is nonzero".into()));
        }
    }

    let rank_eps = matrix::rank(&r.eps);
    let rank_phi = matrix::rank(&r.phi);
    let rank_psi = matrix::rank(&r.psi);
    let rank_xi = matrix::rank(&r.xi);

    // (b) rank splits at interior terms
    for (name, sum, dim) in [
        ("ZM(x,0)", rank_eps + rank_phi, r.basis_orbit_x0.len()),
        ("ZM", rank_phi + rank_psi, r.monoid.order()),
        ("ZM(0,t) (+) ZK", rank_psi + rank_xi, r.middle_dim()),
    ] {
        let started = Instant::now();
        reports.push(report(
            format!("(b) rank split at {name}"),
            n_param.clone(),
            dim,
            sum,
            started,
        ));
        if sum != dim {
            return Err(fail(name, format!("ranks sum to {sum}, dimension is {dim}")));
        }
    }

    // (c) image = kernel, not merely finite index
    for (name, outgoing, incoming, dim) in [
        ("im phi in ker eps", &r.eps, &r.phi, r.basis_orbit_x0.len()),
        ("im psi in ker phi", &r.phi, &r.psi, r.monoid.order()),
        ("im xi in ker psi", &r.psi, &r.xi, r.middle_dim()),
    ] {
        let started = Instant::now();
        let coords = matrix::image_in_kernel_basis(outgoing, incoming);
        let snf = matrix::smith_normal_form(&coords.to_sparse());
        let nullity = dim - matrix::rank(outgoing);
        let saturated =
            snf.rank == nullity && snf.diagonal.iter().take(snf.rank).all(One::is_one);
        reports.push(report(
            format!("(c) {name} saturates"),
            n_param.clone(),
            true,
            saturated,
            started,
        ));
        if !saturated {
            return Err(fail(
                name,
                format!(
                    "kernel coordinates have rank {} of {}, divisors {:?}",
                    snf.rank, nullity, snf.diagonal
                ),
            ));
        }
    }

    // (d) xi injective
    let started = Instant::now();
    reports.push(report(
        "(d) xi is injective",
        n_param.clone(),
        r.basis_k.len(),
        rank_xi,
        started,
    ));
    if rank_xi != r.basis_k.len() {
        return Err(fail("xi", "not injective".into()));
    }

    // (e) eps surjective onto Z
    let started = Instant::now();
    let snf_eps = matrix::smith_normal_form(&r.eps);
    let surjective = rank_eps == 1 && snf_eps.diagonal[0].is_one();
    reports.push(report(
        "(e) eps is surjective",
        n_param,
        true,
        surjective,
        started,
    ));
    if !surjective {
        return Err(fail("eps", "augmentation is not surjective".into()));
    }
    Ok(reports)
}

/// The chain complex left after tensoring the resolution with the trivial
/// module, in the row-vector convention: `A` is `(n+1) x 1` and `B` is
/// `n x (n+1)`.
#[derive(Clone, Debug)]
pub struct TensoredComplex {
    pub n: usize,
    pub a: DenseMat,
    pub b: DenseMat,
}

impl TensoredComplex {
    /// The expected column `(0, 1, ..., 1)^T`.
    pub fn expected_a(n: usize) -> DenseMat {
        let mut a = DenseMat::zero(n + 1, 1);
        for i in 1..=n {
            a.set(i, 0, BigInt::one());
        }
        a
    }

    /// First column all ones, `-1` on the diagonal of the remaining block,
    /// `+1` one step to the right, wrapping cyclically.
    pub fn expected_b(n: usize) -> DenseMat {
        let mut b = DenseMat::zero(n, n + 1);
        for i in 0..n {
            b.set(i, 0, BigInt::one());
            b.set(i, 1 + i, -BigInt::one());
            b.set(i, 1 + (i + 1) % n, BigInt::one());
        }
        b
    }

    pub fn row_sums_of_b(&self) -> Vec<BigInt> {
        (0..self.b.cols())
            .map(|j| (0..self.b.rows()).map(|i| self.b.get(i, j).clone()).sum())
            .collect()
    }
}

/// Collapses each cyclic summand of the resolution to `Z` by summing the
/// coefficients in the image of its generator.
pub fn tensored_complex(r: &ResolutionData) -> TensoredComplex {
    let n = r.n;
    let layout = r.layout;
    let orbit_len = r.basis_orbit_0t.len();
    let pos_0t = |e: usize| r.basis_orbit_0t.binary_search(&e).expect("orbit member");
    let pos_k = |e: usize| r.basis_k.binary_search(&e).expect("K member");

    // Generators of the middle-term summands: (0,t), then (x,0), ..., (x,n-1).
    let mut a = DenseMat::zero(n + 1, 1);
    let gen_cols: Vec<usize> = std::iter::once(pos_0t(layout.t_index(0, TLetter::T)))
        .chain((0..n).map(|i| orbit_len + pos_k(layout.k_index(KRow::X, i))))
        .collect();
    for (summand, &col) in gen_cols.iter().enumerate() {
        let total: BigInt = r.psi.column(col).iter().map(|(_, v)| v.clone()).sum();
        a.set(summand, 0, total);
    }

    let mut b = DenseMat::zero(n, n + 1);
    for i in 0..n {
        let col = pos_k(layout.k_index(KRow::X, i));
        for (row, v) in r.xi.column(col) {
            let block = if *row < orbit_len {
                0
            } else {
                let element = r.basis_k[*row - orbit_len];
                let crate::constructions::MooreElement::K(_, j) = layout.decode(element) else {
                    unreachable!()
                };
                1 + j
            };
            let new = b.get(i, block) + v;
            b.set(i, block, new);
        }
    }
    TensoredComplex { n, a, b }
}

/// Sum of the coefficients of `phi` applied to the monoid generator; the
/// tensored `phi` is this single integer and must vanish.
pub fn tensored_phi(r: &ResolutionData) -> BigInt {
    let identity = r.monoid.identity().expect("M_n is a monoid");
    r.phi.column(identity).iter().map(|(_, v)| v.clone()).sum()
}

/// Homology of `0 <- Z <-0- Z <-A- Z^{n+1} <-B- Z^n <- 0` in degrees 0..=3.
pub fn homology_from_resolution(r: &ResolutionData) -> Vec<HomologyGroup> {
    let t = tensored_complex(r);
    let n = t.n;
    let dims = vec![1, 1, n + 1, n, 0];
    let boundaries = vec![
        SparseMat::zero(1, 1),
        t.a.to_sparse().transpose(),
        t.b.to_sparse().transpose(),
        SparseMat::zero(n, 0),
    ];
    ChainComplex::new(dims, boundaries).homology_all()
}

/// The full per-`n` suite behind the Moore-space theorem: exactness of the
/// resolution, the tensored matrices, and homology `(Z, 0, Z/n, 0)`.
pub fn verify_moore(n: usize) -> Result<Vec<CheckReport>, TheoremError> {
    let r = build_resolution(n);
    let mut reports = verify_exactness(&r)?;
    let p = params(&[("n", n.to_string())]);

    let started = Instant::now();
    let t = tensored_complex(&r);
    reports.push(report(
        "tensored A is (0,1,...,1)^T",
        p.clone(),
        true,
        t.a == TensoredComplex::expected_a(n),
        started,
    ));
    let started = Instant::now();
    reports.push(report(
        "tensored B matches the banded pattern",
        p.clone(),
        true,
        t.b == TensoredComplex::expected_b(n),
        started,
    ));
    let started = Instant::now();
    let mut expected_row_sum = vec![BigInt::zero(); n + 1];
    expected_row_sum[0] = BigInt::from(n as i64);
    reports.push(report(
        "rows of B sum to (n, 0, ..., 0)",
        p.clone(),
        format!("{expected_row_sum:?}"),
        format!("{:?}", t.row_sums_of_b()),
        started,
    ));
    let started = Instant::now();
    reports.push(report(
        "tensored phi vanishes",
        p.clone(),
        BigInt::zero(),
        tensored_phi(&r),
        started,
    ));

    let started = Instant::now();
    let h = homology_from_resolution(&r);
    let expected = vec![
        HomologyGroup::free(1),
        HomologyGroup::zero(),
        HomologyGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(n as i64)],
        },
        HomologyGroup::zero(),
    ];
    reports.push(report(
        "resolution homology is (Z, 0, Z/n, 0)",
        p.clone(),
        display_profile(&expected),
        display_profile(&h),
        started,
    ));
    let started = Instant::now();
    reports.push(report(
        "B is injective",
        p,
        n,
        matrix::rank(&t.b.to_sparse()),
        started,
    ));
    Ok(reports)
}

pub fn display_profile(groups: &[HomologyGroup]) -> String {
    let parts: Vec<String> = groups.iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Suspension shift: `H_1(BJ(S)) = 0` and `H_q(BJ(S)) = H_{q-1}(BS)` for
/// `2 <= q <= qmax-1`.
pub fn check_suspension_shift(
    s: &FiniteSemigroup,
    qmax: usize,
    column_cap: usize,
) -> Result<Vec<CheckReport>, TheoremError> {
    if qmax < 2 {
        return Err(TheoremError::BadParameters(
            "suspension shift needs qmax >= 2".into(),
        ));
    }
    let j = suspension_monoid(s)?;
    let p = params(&[
        ("|S|", s.order().to_string()),
        ("|J(S)|", j.order().to_string()),
        ("qmax", qmax.to_string()),
    ]);
    let started = Instant::now();
    let hj = homology_profile(&j, qmax, true, column_cap)?;
    let hs = homology_profile(s, qmax - 1, true, column_cap)?;
    let mut reports = vec![report(
        "H_1(BJ(S)) = 0",
        p.clone(),
        HomologyGroup::zero(),
        &hj[1],
        started,
    )];
    for q in 2..qmax {
        let started = Instant::now();
        reports.push(report(
            format!("H_{q}(BJ(S)) = H_{}(BS)", q - 1),
            p.clone(),
            &hs[q - 1],
            &hj[q],
            started,
        ));
    }
    Ok(reports)
}

/// Wedge additivity: reduced homology of the wedge monoid is the direct sum
/// of the reduced homologies of the factors in every degree below `qmax`.
pub fn check_wedge_additivity(
    m: &FiniteSemigroup,
    n: &FiniteSemigroup,
    qmax: usize,
    column_cap: usize,
) -> Result<Vec<CheckReport>, TheoremError> {
    if qmax < 1 {
        return Err(TheoremError::BadParameters(
            "wedge additivity needs qmax >= 1".into(),
        ));
    }
    let w = wedge_monoid(m, n)?;
    let p = params(&[
        ("|M|", m.order().to_string()),
        ("|N|", n.order().to_string()),
        ("|W|", w.semigroup.order().to_string()),
        ("qmax", qmax.to_string()),
    ]);
    let hw = homology_profile(&w.semigroup, qmax, true, column_cap)?;
    let hm = homology_profile(m, qmax, true, column_cap)?;
    let hn = homology_profile(n, qmax, true, column_cap)?;
    let mut reports = Vec::new();
    for q in 1..qmax {
        let started = Instant::now();
        reports.push(report(
            format!("H_{q}(BW) = H_{q}(BM) (+) H_{q}(BN)"),
            p.clone(),
            hm[q].direct_sum(&hn[q]),
            &hw[q],
            started,
        ));
    }
    Ok(reports)
}

/// Vanishing for regular monoids: integral homology vanishes on the given
/// range for aperiodic regular monoids (beyond the `3j - 2` bound from the
/// principal series length `j`), rational Betti numbers vanish for general
/// regular monoids.
pub fn check_regular_vanishing(
    s: &FiniteSemigroup,
    q_lo: usize,
    q_hi: usize,
    column_cap: usize,
) -> Result<Vec<CheckReport>, TheoremError> {
    if !s.is_regular() {
        return Err(TheoremError::NotRegular);
    }
    if q_lo < 1 || q_hi < q_lo {
        return Err(TheoremError::BadParameters(format!(
            "bad degree range {q_lo}..{q_hi}"
        )));
    }
    let series = s.principal_series();
    let j_classes = series.ideals.len();
    let bound = 3 * j_classes - 2;
    let aperiodic = s.is_aperiodic();
    let p = params(&[
        ("order", s.order().to_string()),
        ("j_classes", j_classes.to_string()),
        ("bound_3j_minus_2", bound.to_string()),
        ("aperiodic", aperiodic.to_string()),
        ("range", format!("{q_lo}..={q_hi}")),
    ]);
    let complex = bar_complex(s, q_hi + 1, true, column_cap).map_err(|e| match e {
        HomologyError::DegreeTooLarge { degree, rank, cap } => {
            TheoremError::InfeasibleDegree { degree, rank, cap }
        }
        other => TheoremError::Homology(other),
    })?;
    let mut reports = Vec::new();
    if aperiodic {
        let h = complex.homology_all();
        for q in q_lo..=q_hi {
            let started = Instant::now();
            reports.push(report(
                format!("H_{q} = 0 (aperiodic regular)"),
                p.clone(),
                HomologyGroup::zero(),
                &h[q],
                started,
            ));
        }
    } else {
        for q in q_lo..=q_hi {
            let started = Instant::now();
            let betti = complex.rational_betti(q)?;
            reports.push(report(
                format!("rational betti_{q} = 0 (regular)"),
                p.clone(),
                0,
                betti,
                started,
            ));
        }
    }
    Ok(reports)
}
