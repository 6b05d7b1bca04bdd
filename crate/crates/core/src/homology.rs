//! The bar chain complex of a finite monoid and integral homology of its
//! classifying space.
//!
//! Degree `q` of the (normalized) bar complex is free on `q`-tuples of
//! non-identity elements; the boundary is the alternating sum of the face
//! maps: drop the first entry, multiply an adjacent pair, drop the last
//! entry. In normalized mode a face whose tuple contains the identity
//! contributes nothing. Degree 0 is a single vertex, so `C_0 = Z`.
//!
//! Homology of a complex of free abelian groups is read off from Smith
//! normal forms: since `∂_q ∂_{q+1} = 0` and kernels of maps into free
//! groups are pure subgroups, the torsion of `H_q` equals the elementary
//! divisors (> 1) of `∂_{q+1}` and the free rank is
//! `nullity(∂_q) - rank(∂_{q+1})`. A slower reference route that changes
//! basis into an explicit kernel basis is kept alongside and cross-checked
//! in the tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::matrix::{self, dense_snf, SparseMat};
use crate::semigroup::FiniteSemigroup;

/// Default cap on the number of columns of any chain group.
pub const DEFAULT_COLUMN_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("chain group C_{degree} would have {rank} columns, over the cap {cap}")]
    DegreeTooLarge {
        degree: usize,
        rank: usize,
        cap: usize,
    },
    #[error("homology at degree {degree} needs boundaries up to degree {needed}, complex has qmax {qmax}")]
    InsufficientDegrees {
        degree: usize,
        needed: usize,
        qmax: usize,
    },
    #[error("normalized bar complex requires a monoid")]
    RequiresMonoid,
}

/// A finitely generated abelian group in invariant-factor form: a free part
/// and a divisibility chain of torsion coefficients, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 2);
        HomologyGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(n)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, renormalizing the combined torsion into a divisibility
    /// chain (e.g. `Z/2 ⊕ Z/3` becomes `Z/6`).
    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        let mut torsion: Vec<BigInt> = self
            .torsion
            .iter()
            .chain(other.torsion.iter())
            .cloned()
            .collect();
        normalize_chain(&mut torsion);
        torsion.retain(|d| !d.is_one());
        HomologyGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }
}

/// Repeated gcd/lcm sweeps turn an arbitrary diagonal into the unique
/// divisibility chain with the same p-adic content.
fn normalize_chain(d: &mut [BigInt]) {
    loop {
        let mut changed = false;
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                if !(&d[j] % &d[i]).is_zero() {
                    let g = d[i].gcd(&d[j]);
                    let l = (&d[i] * &d[j]) / &g;
                    d[i] = g;
                    d[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    d.sort();
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for HomologyGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            free_rank: usize,
            torsion: Vec<String>,
            display: &'a str,
        }
        Repr {
            free_rank: self.free_rank,
            torsion: self.torsion.iter().map(|t| t.to_string()).collect(),
            display: &self.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HomologyGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            free_rank: usize,
            torsion: Vec<String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let torsion = repr
            .torsion
            .iter()
            .map(|t| t.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HomologyGroup {
            free_rank: repr.free_rank,
            torsion,
        })
    }
}

/// A chain complex of free abelian groups: ranks `dims[q]` for
/// `q = 0..=qmax` and boundary matrices `∂_q : C_q -> C_{q-1}`.
/// `∂ ∘ ∂ = 0` is asserted at construction, not assumed.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<SparseMat>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseMat>) -> Self {
        assert!(!dims.is_empty());
        assert_eq!(boundaries.len(), dims.len() - 1);
        for (q, b) in boundaries.iter().enumerate() {
            assert_eq!(b.rows(), dims[q], "∂_{} row count", q + 1);
            assert_eq!(b.cols(), dims[q + 1], "∂_{} column count", q + 1);
        }
        let complex = ChainComplex { dims, boundaries };
        complex.assert_composition_vanishes();
        complex
    }

    fn assert_composition_vanishes(&self) {
        for q in 1..self.boundaries.len() {
            assert!(
                self.boundaries[q - 1].mul(&self.boundaries[q]).is_zero(),
                "∂_{} ∘ ∂_{} != 0",
                q,
                q + 1
            );
        }
    }

    pub fn qmax(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, q: usize) -> usize {
        self.dims[q]
    }

    /// The boundary `∂_q : C_q -> C_{q-1}`, for `1 <= q <= qmax`.
    pub fn boundary(&self, q: usize) -> &SparseMat {
        &self.boundaries[q - 1]
    }

    fn check_degree(&self, q: usize) -> Result<(), HomologyError> {
        if q + 1 > self.qmax() {
            return Err(HomologyError::InsufficientDegrees {
                degree: q,
                needed: q + 1,
                qmax: self.qmax(),
            });
        }
        Ok(())
    }

    /// `H_q = ker ∂_q / im ∂_{q+1}`. Needs `q + 1 <= qmax`.
    pub fn homology(&self, q: usize) -> Result<HomologyGroup, HomologyError> {
        self.check_degree(q)?;
        let rank_q = if q == 0 {
            0
        } else {
            matrix::smith_normal_form(self.boundary(q)).rank
        };
        let snf_next = matrix::smith_normal_form(self.boundary(q + 1));
        Ok(HomologyGroup {
            free_rank: self.dims[q] - rank_q - snf_next.rank,
            torsion: snf_next.torsion_divisors(),
        })
    }

    /// Homology at every degree `0..qmax`, computing one Smith normal form
    /// per boundary matrix.
    pub fn homology_all(&self) -> Vec<HomologyGroup> {
        let snfs: Vec<_> = self
            .boundaries
            .iter()
            .map(matrix::smith_normal_form)
            .collect();
        (0..self.qmax())
            .map(|q| {
                let rank_q = if q == 0 { 0 } else { snfs[q - 1].rank };
                HomologyGroup {
                    free_rank: self.dims[q] - rank_q - snfs[q].rank,
                    torsion: snfs[q].torsion_divisors(),
                }
            })
            .collect()
    }

    /// Free rank of `H_q`, from ranks alone.
    pub fn rational_betti(&self, q: usize) -> Result<usize, HomologyError> {
        self.check_degree(q)?;
        let rank_q = if q == 0 {
            0
        } else {
            matrix::rank(self.boundary(q))
        };
        Ok(self.dims[q] - rank_q - matrix::rank(self.boundary(q + 1)))
    }

    /// Reference route: expresses `im ∂_{q+1}` in an explicit kernel basis of
    /// `∂_q` (obtained from the inverse column transform of its Smith normal
    /// form) and reads the quotient off that matrix. Dense; use on small
    /// complexes.
    pub fn homology_via_kernel_basis(&self, q: usize) -> Result<HomologyGroup, HomologyError> {
        self.check_degree(q)?;
        let outgoing = if q == 0 {
            SparseMat::zero(0, self.dims[0])
        } else {
            self.boundary(q).clone()
        };
        let coords = matrix::image_in_kernel_basis(&outgoing, self.boundary(q + 1));
        let nullity = coords.rows();
        let snf = dense_snf(coords, false, false, false);
        Ok(HomologyGroup {
            free_rank: nullity - snf.rank,
            torsion: snf
                .diagonal
                .into_iter()
                .filter(|d| !d.is_zero() && !d.is_one())
                .collect(),
        })
    }
}

/// Builds the bar chain complex of `m` through degree `qmax`.
///
/// Normalized mode needs an identity and is free on tuples of non-identity
/// elements (`(|M|-1)^q` columns in degree `q`); unnormalized mode works for
/// any semigroup with `|S|^q` columns. Fails with `DegreeTooLarge` when a
/// chain group would exceed `column_cap` columns.
pub fn bar_complex(
    m: &FiniteSemigroup,
    qmax: usize,
    normalized: bool,
    column_cap: usize,
) -> Result<ChainComplex, HomologyError> {
    let identity = m.identity();
    if normalized && identity.is_none() {
        return Err(HomologyError::RequiresMonoid);
    }
    let letters: Vec<usize> = if normalized {
        let e = identity.expect("checked");
        (0..m.order()).filter(|&x| x != e).collect()
    } else {
        (0..m.order()).collect()
    };
    let base = letters.len();
    let mut dims = Vec::with_capacity(qmax + 1);
    for q in 0..=qmax {
        let rank = base.checked_pow(q as u32).filter(|&r| r <= column_cap);
        match (q, rank) {
            (0, _) => dims.push(1),
            (_, Some(r)) => dims.push(r),
            (_, None) => {
                return Err(HomologyError::DegreeTooLarge {
                    degree: q,
                    rank: base.checked_pow(q as u32).unwrap_or(usize::MAX),
                    cap: column_cap,
                })
            }
        }
    }
    // Position of each letter, usable as a digit in base `base`.
    let mut digit = vec![usize::MAX; m.order()];
    for (d, &x) in letters.iter().enumerate() {
        digit[x] = d;
    }
    let encode = |tuple: &[usize]| -> Option<usize> {
        let mut idx = 0usize;
        for &x in tuple {
            let d = digit[x];
            if d == usize::MAX {
                return None; // contains the identity: degenerate
            }
            idx = idx * base + d;
        }
        Some(idx)
    };
    let mut boundaries = Vec::with_capacity(qmax);
    let mut tuple = Vec::new();
    let mut face = Vec::new();
    for q in 1..=qmax {
        let mut columns: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(dims[q]);
        let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
        for col in 0..dims[q] {
            // Decode the tuple for this column, most significant digit first.
            tuple.clear();
            let mut rest = col;
            for k in (0..q).rev() {
                let p = base.pow(k as u32);
                tuple.push(letters[rest / p]);
                rest %= p;
            }
            acc.clear();
            for i in 0..=q {
                face.clear();
                if i == 0 {
                    face.extend_from_slice(&tuple[1..]);
                } else if i == q {
                    face.extend_from_slice(&tuple[..q - 1]);
                } else {
                    face.extend_from_slice(&tuple[..i - 1]);
                    face.push(m.mul(tuple[i - 1], tuple[i]));
                    face.extend_from_slice(&tuple[i + 1..]);
                }
                if let Some(row) = encode(&face) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    *acc.entry(row).or_insert(0) += sign;
                }
            }
            columns.push(
                acc.iter()
                    .filter(|&(_, &v)| v != 0)
                    .map(|(&r, &v)| (r, BigInt::from(v)))
                    .collect(),
            );
        }
        boundaries.push(SparseMat::from_columns(dims[q - 1], dims[q], columns));
    }
    Ok(ChainComplex::new(dims, boundaries))
}

/// Homology of the classifying space of `m` in degrees `0..qmax`, from a
/// single bar-complex build.
pub fn homology_profile(
    m: &FiniteSemigroup,
    qmax: usize,
    normalized: bool,
    column_cap: usize,
) -> Result<Vec<HomologyGroup>, HomologyError> {
    Ok(bar_complex(m, qmax, normalized, column_cap)?.homology_all())
}
