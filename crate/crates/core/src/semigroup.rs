//! Finite semigroups and monoids presented by multiplication tables.
//!
//! Elements are dense indices `0..order`; `table[i][j]` is the index of the
//! product `i * j`. Validation checks associativity by a full triple loop and
//! records the identity and zero elements when present.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    /// Ragged, empty, or out-of-range multiplication table.
    #[error("invalid table shape: {0}")]
    Shape(String),
    /// The first triple violating `(i j) k = i (j k)`, in lexicographic order.
    #[error("multiplication not associative at triple ({i}, {j}, {k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("the given element set is not a two-sided ideal")]
    NotAnIdeal,
    #[error("operation requires a monoid, but the semigroup has no identity")]
    NotAMonoid,
    #[error("minimal ideal is not a rectangular band")]
    MinimalIdealNotRectangular,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A finite semigroup with elements `0..order` and operation `table`.
///
/// Immutable after construction; the identity and zero fields are detected
/// during validation, never supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<usize>,
    identity: Option<usize>,
    zero: Option<usize>,
    names: Option<Vec<String>>,
}

/// A two-sided ideal of some parent semigroup, as a sorted element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealData {
    pub elements: Vec<usize>,
    pub is_minimal: bool,
}

/// An unrefinable chain of two-sided ideals from the whole semigroup down to
/// the minimal ideal. `certified` is false when the semigroup was too large
/// for the exhaustive unrefinability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalSeries {
    pub ideals: Vec<IdealData>,
    pub certified: bool,
}

/// The maximal subgroup at an idempotent `e`: the group of units of `eSe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalSubgroupData {
    /// The idempotent `e`, in parent indices.
    pub idempotent: usize,
    /// Group elements, as sorted parent indices.
    pub elements: Vec<usize>,
    /// The induced group multiplication table on `elements`.
    pub table: FiniteSemigroup,
}

/// Validates a raw square table and returns the semigroup it presents.
pub fn validate(table: &[Vec<usize>]) -> Result<FiniteSemigroup, SemigroupError> {
    FiniteSemigroup::from_table(table)
}

impl FiniteSemigroup {
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, SemigroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(SemigroupError::Shape("table is empty".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(SemigroupError::Shape(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    order
                )));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(order, flat)
    }

    pub fn from_flat(order: usize, table: Vec<usize>) -> Result<Self, SemigroupError> {
        if order == 0 || table.len() != order * order {
            return Err(SemigroupError::Shape(format!(
                "flat table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(SemigroupError::Shape(format!(
                "entry {} at ({}, {}) is out of range for order {}",
                table[pos],
                pos / order,
                pos % order,
                order
            )));
        }
        // Full triple loop; reports the first violation in lexicographic order.
        for i in 0..order {
            for j in 0..order {
                let ij = table[i * order + j];
                for k in 0..order {
                    let jk = table[j * order + k];
                    if table[ij * order + k] != table[i * order + jk] {
                        return Err(SemigroupError::NonAssociative { i, j, k });
                    }
                }
            }
        }
        let mut s = FiniteSemigroup {
            order,
            table,
            identity: None,
            zero: None,
            names: None,
        };
        s.identity = s.detect_identity();
        s.zero = s.detect_zero();
        Ok(s)
    }

    fn detect_identity(&self) -> Option<usize> {
        (0..self.order)
            .find(|&e| (0..self.order).all(|i| self.mul(e, i) == i && self.mul(i, e) == i))
    }

    fn detect_zero(&self) -> Option<usize> {
        (0..self.order)
            .find(|&z| (0..self.order).all(|i| self.mul(z, i) == z && self.mul(i, z) == z))
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order, "one name per element");
        self.names = Some(names);
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element, falling back to its index.
    pub fn name(&self, i: usize) -> String {
        match &self.names {
            Some(n) => n[i].clone(),
            None => i.to_string(),
        }
    }

    /// Adjoins a fresh two-sided identity as the last element, even when the
    /// semigroup already is a monoid.
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        let n = self.order;
        let m = n + 1;
        let mut table = vec![0usize; m * m];
        for i in 0..n {
            for j in 0..n {
                table[i * m + j] = self.mul(i, j);
            }
        }
        for i in 0..m {
            table[i * m + n] = i;
            table[n * m + i] = i;
        }
        let mut names = match &self.names {
            Some(names) => names.clone(),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        names.push("1".to_string());
        FiniteSemigroup::from_flat(m, table)
            .expect("adjoining an identity preserves associativity")
            .with_names(names)
    }

    /// Adjoins a fresh absorbing zero as the last element.
    pub fn adjoin_zero(&self) -> FiniteSemigroup {
        let n = self.order;
        let m = n + 1;
        let mut table = vec![n; m * m];
        for i in 0..n {
            for j in 0..n {
                table[i * m + j] = self.mul(i, j);
            }
        }
        let mut names = match &self.names {
            Some(names) => names.clone(),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        names.push("0".to_string());
        FiniteSemigroup::from_flat(m, table)
            .expect("adjoining a zero preserves associativity")
            .with_names(names)
    }

    /// Componentwise product on pairs `(s, t)`, indexed `s * |T| + t`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let (a, b) = (self.order, other.order);
        let m = a * b;
        let mut table = vec![0usize; m * m];
        for s1 in 0..a {
            for t1 in 0..b {
                for s2 in 0..a {
                    for t2 in 0..b {
                        let p = self.mul(s1, s2) * b + other.mul(t1, t2);
                        table[(s1 * b + t1) * m + (s2 * b + t2)] = p;
                    }
                }
            }
        }
        let names = (0..a)
            .flat_map(|s| (0..b).map(move |t| format!("({}, {})", self.name(s), other.name(t))))
            .collect();
        FiniteSemigroup::from_flat(m, table)
            .expect("direct products preserve associativity")
            .with_names(names)
    }

    /// Relabels elements by a permutation: new index of old `i` is `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteSemigroup {
        assert_eq!(perm.len(), self.order);
        let n = self.order;
        let mut inv = vec![0usize; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut table = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = perm[self.mul(inv[x], inv[y])];
            }
        }
        let s = FiniteSemigroup::from_flat(n, table).expect("relabeling preserves associativity");
        match &self.names {
            Some(names) => {
                let mut renamed = vec![String::new(); n];
                for (old, &new) in perm.iter().enumerate() {
                    renamed[new] = names[old].clone();
                }
                s.with_names(renamed)
            }
            None => s,
        }
    }

    /// Exactly the set `{ e : e e = e }`; nonempty for every finite semigroup.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&e| self.mul(e, e) == e).collect()
    }

    pub fn is_band(&self) -> bool {
        (0..self.order).all(|e| self.mul(e, e) == e)
    }

    /// A band satisfying the identity `x y x = x`.
    pub fn is_rectangular_band(&self) -> bool {
        self.is_band()
            && (0..self.order)
                .all(|x| (0..self.order).all(|y| self.mul(self.mul(x, y), x) == x))
    }

    /// Same test restricted to a multiplicatively closed subset.
    pub fn is_rectangular_band_on(&self, elements: &[usize]) -> bool {
        elements.iter().all(|&x| self.mul(x, x) == x)
            && elements
                .iter()
                .all(|&x| elements.iter().all(|&y| self.mul(self.mul(x, y), x) == x))
    }

    /// Von Neumann regularity: every `s` has a `t` with `s t s = s`.
    pub fn is_regular(&self) -> bool {
        (0..self.order)
            .all(|s| (0..self.order).any(|t| self.mul(self.mul(s, t), s) == s))
    }

    /// True iff every maximal subgroup is trivial.
    pub fn is_aperiodic(&self) -> bool {
        self.idempotents().into_iter().all(|e| {
            self.maximal_subgroup(e)
                .map(|g| g.elements.len() == 1)
                .unwrap_or(false)
        })
    }

    /// The equivalent finite-semigroup test: every element satisfies
    /// `s^k = s^(k+1)` for some `k`.
    pub fn is_aperiodic_by_power_stabilization(&self) -> bool {
        (0..self.order).all(|s| {
            let mut x = s;
            for _ in 0..2 * self.order {
                let y = self.mul(x, s);
                if y == x {
                    return true;
                }
                x = y;
            }
            false
        })
    }

    /// The group of units of the monoid `eSe`, for an idempotent `e`.
    pub fn maximal_subgroup(&self, e: usize) -> Result<MaximalSubgroupData, SemigroupError> {
        if e >= self.order {
            return Err(SemigroupError::Shape(format!("element {e} out of range")));
        }
        if self.mul(e, e) != e {
            return Err(SemigroupError::NotIdempotent(e));
        }
        let local: BTreeSet<usize> = (0..self.order)
            .map(|s| self.mul(self.mul(e, s), e))
            .collect();
        let units: Vec<usize> = local
            .iter()
            .copied()
            .filter(|&g| {
                local
                    .iter()
                    .any(|&h| self.mul(g, h) == e && self.mul(h, g) == e)
            })
            .collect();
        let k = units.len();
        let pos = |x: usize| units.binary_search(&x).expect("unit group is closed");
        let mut table = vec![0usize; k * k];
        for (i, &g) in units.iter().enumerate() {
            for (j, &h) in units.iter().enumerate() {
                table[i * k + j] = pos(self.mul(g, h));
            }
        }
        let names = units.iter().map(|&g| self.name(g)).collect();
        let table = FiniteSemigroup::from_flat(k, table)
            .expect("group of units is associative")
            .with_names(names);
        Ok(MaximalSubgroupData {
            idempotent: e,
            elements: units,
            table,
        })
    }

    /// True iff `elements` is nonempty and closed under multiplication by the
    /// whole semigroup on both sides.
    pub fn is_ideal(&self, elements: &[usize]) -> bool {
        if elements.is_empty() || elements.iter().any(|&x| x >= self.order) {
            return false;
        }
        let member: BTreeSet<usize> = elements.iter().copied().collect();
        member.iter().all(|&x| {
            (0..self.order)
                .all(|s| member.contains(&self.mul(s, x)) && member.contains(&self.mul(x, s)))
        })
    }

    /// The principal two-sided ideal generated by `s`.
    pub fn principal_ideal(&self, s: usize) -> BTreeSet<usize> {
        let mut ideal: BTreeSet<usize> = BTreeSet::new();
        let mut frontier = vec![s];
        ideal.insert(s);
        while let Some(x) = frontier.pop() {
            for t in 0..self.order {
                for y in [self.mul(t, x), self.mul(x, t)] {
                    if ideal.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        ideal
    }

    /// The unique minimal two-sided ideal: the intersection of all principal
    /// two-sided ideals.
    pub fn minimal_ideal(&self) -> IdealData {
        let mut min: Option<BTreeSet<usize>> = None;
        for s in 0..self.order {
            let p = self.principal_ideal(s);
            min = Some(match min {
                None => p,
                Some(cur) => cur.intersection(&p).copied().collect(),
            });
        }
        let elements: Vec<usize> = min.expect("semigroup is nonempty").into_iter().collect();
        debug_assert!(self.is_ideal(&elements));
        IdealData {
            elements,
            is_minimal: true,
        }
    }

    /// An unrefinable chain of ideals from the whole semigroup down to the
    /// minimal ideal. Each step removes a maximal J-class; for orders up to
    /// 25 the chain is certified by checking that each Rees factor is
    /// 0-simple or null.
    pub fn principal_series(&self) -> PrincipalSeries {
        let principal: Vec<BTreeSet<usize>> =
            (0..self.order).map(|s| self.principal_ideal(s)).collect();
        let mut current: BTreeSet<usize> = (0..self.order).collect();
        let mut chain: Vec<BTreeSet<usize>> = vec![current.clone()];
        loop {
            // Distinct J-classes inside `current`, keyed by principal ideal.
            let mut classes: Vec<(&BTreeSet<usize>, Vec<usize>)> = Vec::new();
            for &s in &current {
                match classes.iter_mut().find(|(p, _)| **p == principal[s]) {
                    Some((_, members)) => members.push(s),
                    None => classes.push((&principal[s], vec![s])),
                }
            }
            if classes.len() <= 1 {
                break;
            }
            // Remove the maximal J-class with the least member index.
            let maximal: Vec<usize> = (0..classes.len())
                .filter(|&i| {
                    !(0..classes.len())
                        .any(|j| j != i && classes[i].0.is_subset(classes[j].0))
                })
                .collect();
            let pick = *maximal
                .iter()
                .min_by_key(|&&i| classes[i].1[0])
                .expect("at least one maximal class");
            for &s in &classes[pick].1 {
                current.remove(&s);
            }
            chain.push(current.clone());
        }
        let certified = self.order <= 25 && self.certify_series(&chain);
        let last = chain.len() - 1;
        let ideals = chain
            .into_iter()
            .enumerate()
            .map(|(i, set)| IdealData {
                elements: set.into_iter().collect(),
                is_minimal: i == last,
            })
            .collect();
        PrincipalSeries { ideals, certified }
    }

    /// Checks every consecutive Rees factor of the chain is 0-simple or null,
    /// and the last term is simple. This rules out intermediate ideals.
    fn certify_series(&self, chain: &[BTreeSet<usize>]) -> bool {
        for w in chain.windows(2) {
            if !self.factor_is_zero_simple_or_null(&w[0], &w[1]) {
                return false;
            }
        }
        let last = chain.last().expect("chain is nonempty");
        last.iter()
            .all(|&s| self.principal_ideal(s).iter().eq(last.iter()))
    }

    fn factor_is_zero_simple_or_null(
        &self,
        upper: &BTreeSet<usize>,
        lower: &BTreeSet<usize>,
    ) -> bool {
        let nonzero: Vec<usize> = upper.difference(lower).copied().collect();
        // Product in the factor: collapse everything in `lower` to zero.
        let in_lower = |x: usize| lower.contains(&x);
        let null = nonzero
            .iter()
            .all(|&a| nonzero.iter().all(|&b| in_lower(self.mul(a, b))));
        if null {
            return true;
        }
        // 0-simple: every nonzero element generates the whole factor.
        nonzero.iter().all(|&s| {
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            let mut frontier = vec![s];
            seen.insert(s);
            while let Some(x) = frontier.pop() {
                for &t in &nonzero {
                    for y in [self.mul(t, x), self.mul(x, t)] {
                        if !in_lower(y) && seen.insert(y) {
                            frontier.push(y);
                        }
                    }
                }
            }
            seen.len() == nonzero.len()
        })
    }

    /// The Rees quotient `S/I`: collapse the ideal to a single zero element,
    /// which becomes the last element of the quotient.
    pub fn rees_quotient(&self, ideal: &IdealData) -> Result<FiniteSemigroup, SemigroupError> {
        if !self.is_ideal(&ideal.elements) {
            return Err(SemigroupError::NotAnIdeal);
        }
        let in_ideal: BTreeSet<usize> = ideal.elements.iter().copied().collect();
        let survivors: Vec<usize> = (0..self.order).filter(|s| !in_ideal.contains(s)).collect();
        let m = survivors.len() + 1;
        let zero = m - 1;
        let index_of = |x: usize| -> usize {
            if in_ideal.contains(&x) {
                zero
            } else {
                survivors.binary_search(&x).expect("survivor")
            }
        };
        let mut table = vec![zero; m * m];
        for (i, &a) in survivors.iter().enumerate() {
            for (j, &b) in survivors.iter().enumerate() {
                table[i * m + j] = index_of(self.mul(a, b));
            }
        }
        let mut names: Vec<String> = survivors.iter().map(|&s| self.name(s)).collect();
        names.push("0".to_string());
        Ok(FiniteSemigroup::from_flat(m, table)
            .expect("Rees quotients preserve associativity")
            .with_names(names))
    }
}
