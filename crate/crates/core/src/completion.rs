//! Group completion of a finite semigroup by coset enumeration.
//!
//! The presentation has one generator per element and one relation
//! `x_s x_t = x_{st}` per ordered pair, plus `x_e = 1` when an identity is
//! present. Viewing it as a group presentation and enumerating cosets of the
//! trivial subgroup yields the group completion `G(S)`, which is also the
//! fundamental group of the classifying space. `G(S)` is a homomorphic image
//! of `S`, so the enumeration always closes within `|S|` live cosets.

use thiserror::Error;

use crate::homology::HomologyGroup;
use crate::matrix::{self, SparseMat};
use crate::semigroup::FiniteSemigroup;
use num_bigint::BigInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("coset enumeration exceeded the cap of {cap} cosets")]
    CosetCapExceeded { cap: usize },
}

/// A letter in a relator word: generator index plus inversion flag.
pub type Letter = (usize, bool);

/// Multiplication-table presentation of a semigroup, read as a group
/// presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generator_count: usize,
    /// Relators, each equal to the identity in the presented group.
    pub relations: Vec<Vec<Letter>>,
}

/// The enumerated group completion: a validated group table plus the image
/// of each semigroup element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    pub order: usize,
    pub table: FiniteSemigroup,
    pub generator_images: Vec<usize>,
}

/// The full multiplication-table presentation: `order^2` relators of the
/// shape `x_s x_t x_{st}^{-1}`, plus `x_e` when `e` is an identity.
pub fn presentation(s: &FiniteSemigroup) -> GroupPresentation {
    let n = s.order();
    let mut relations = Vec::with_capacity(n * n + 1);
    if let Some(e) = s.identity() {
        relations.push(vec![(e, false)]);
    }
    for a in 0..n {
        for b in 0..n {
            relations.push(vec![(a, false), (b, false), (s.mul(a, b), true)]);
        }
    }
    GroupPresentation {
        generator_count: n,
        relations,
    }
}

/// HLT-style coset enumeration over the trivial subgroup with immediate
/// coincidence processing. Deterministic: cosets are numbered in definition
/// order and merges keep the smaller number.
pub fn todd_coxeter(
    p: &GroupPresentation,
    max_cosets: usize,
) -> Result<FiniteGroupTable, CompletionError> {
    let mut e = Enumerator::new(p.generator_count, max_cosets);
    e.run(&p.relations)?;
    Ok(e.into_group_table(p))
}

/// The group completion `G(S)`, with the default coset cap `4 |S|`.
pub fn group_completion(s: &FiniteSemigroup) -> Result<FiniteGroupTable, CompletionError> {
    let p = presentation(s);
    todd_coxeter(&p, 4 * s.order())
}

/// The classifying space of `S` is simply connected exactly when the group
/// completion is trivial.
pub fn is_simply_connected(s: &FiniteSemigroup) -> Result<bool, CompletionError> {
    Ok(group_completion(s)?.order == 1)
}

/// Abelianization of a finite group given by its table: Smith normal form of
/// the abelianized relation matrix of the multiplication-table presentation.
pub fn abelianization(g: &FiniteGroupTable) -> HomologyGroup {
    let n = g.table.order();
    let mut triplets: Vec<(usize, usize, BigInt)> = Vec::new();
    let mut row = 0usize;
    // x_a + x_b - x_{ab} = 0 for every pair, and x_e = 0.
    for a in 0..n {
        for b in 0..n {
            let mut add = |col: usize, v: i64| triplets.push((row, col, BigInt::from(v)));
            let ab = g.table.mul(a, b);
            if ab == a {
                add(b, 1);
            } else if ab == b {
                add(a, 1);
            } else {
                add(a, 1);
                add(b, 1);
                add(ab, -1);
            }
            row += 1;
        }
    }
    if let Some(e) = g.table.identity() {
        triplets.push((row, e, BigInt::from(1)));
        row += 1;
    }
    let mat = SparseMat::from_triplets(row, n, merge_duplicate_triplets(triplets));
    let snf = matrix::smith_normal_form(&mat);
    HomologyGroup {
        free_rank: n - snf.rank,
        torsion: snf.torsion_divisors(),
    }
}

fn merge_duplicate_triplets(
    mut triplets: Vec<(usize, usize, BigInt)>,
) -> Vec<(usize, usize, BigInt)> {
    use num_traits::Zero;
    triplets.sort_by_key(|&(r, c, _)| (c, r));
    let mut out: Vec<(usize, usize, BigInt)> = Vec::with_capacity(triplets.len());
    for (r, c, v) in triplets {
        match out.last_mut() {
            Some(last) if last.0 == r && last.1 == c => last.2 += v,
            _ => out.push((r, c, v)),
        }
    }
    out.retain(|(_, _, v)| !v.is_zero());
    out
}

struct Enumerator {
    gens: usize,
    cap: usize,
    /// Transition table over 2*gens letters (generator, then its inverse).
    table: Vec<Vec<Option<u32>>>,
    /// Union-find parent for coincidence handling.
    parent: Vec<u32>,
    /// Definition witness: (parent coset, letter) for every coset except 0.
    def_from: Vec<(u32, u16)>,
    pending: Vec<(u32, u32)>,
    /// Bumped on every table write or merge; used for fixpoint detection.
    version: u64,
}

impl Enumerator {
    fn new(gens: usize, cap: usize) -> Self {
        let mut e = Enumerator {
            gens,
            cap: cap.max(1),
            table: Vec::new(),
            parent: Vec::new(),
            def_from: Vec::new(),
            pending: Vec::new(),
            version: 0,
        };
        e.table.push(vec![None; 2 * gens]);
        e.parent.push(0);
        e.def_from.push((0, u16::MAX));
        e
    }

    fn letter(gen: usize, inverse: bool) -> usize {
        2 * gen + inverse as usize
    }

    fn inverse_letter(letter: usize) -> usize {
        letter ^ 1
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn get(&mut self, coset: u32, letter: usize) -> Option<u32> {
        let c = self.find(coset);
        self.table[c as usize][letter].map(|d| self.find(d))
    }

    fn set(&mut self, coset: u32, letter: usize, target: u32) {
        let c = self.find(coset);
        let t = self.find(target);
        match self.table[c as usize][letter] {
            Some(existing) => {
                let existing = self.find(existing);
                if existing != t {
                    self.pending.push((existing, t));
                }
            }
            None => {
                self.table[c as usize][letter] = Some(t);
                self.version += 1;
            }
        }
        let inv = Self::inverse_letter(letter);
        let t = self.find(t);
        let c = self.find(c);
        match self.table[t as usize][inv] {
            Some(existing) => {
                let existing = self.find(existing);
                if existing != c {
                    self.pending.push((existing, c));
                }
            }
            None => {
                self.table[t as usize][inv] = Some(c);
                self.version += 1;
            }
        }
    }

    fn define(&mut self, coset: u32, letter: usize) -> Result<u32, CompletionError> {
        if self.table.len() >= self.cap {
            return Err(CompletionError::CosetCapExceeded { cap: self.cap });
        }
        let new = self.table.len() as u32;
        self.table.push(vec![None; 2 * self.gens]);
        self.parent.push(new);
        let parent_coset = self.find(coset);
        self.def_from.push((parent_coset, letter as u16));
        self.set(coset, letter, new);
        self.process_coincidences();
        Ok(self.find(new))
    }

    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (winner, loser) = if a < b { (a, b) } else { (b, a) };
            self.parent[loser as usize] = winner;
            self.version += 1;
            let row = std::mem::take(&mut self.table[loser as usize]);
            for (letter, entry) in row.into_iter().enumerate() {
                if let Some(d) = entry {
                    let d = self.find(d);
                    match self.table[winner as usize][letter] {
                        Some(existing) => {
                            let existing = self.find(existing);
                            if existing != d {
                                self.pending.push((existing, d));
                            }
                        }
                        None => self.table[winner as usize][letter] = Some(d),
                    }
                }
            }
        }
    }

    /// Scans a relator from `coset`, filling exactly one undefined transition
    /// per pass (defining new cosets when the gap is wider) and recording a
    /// coincidence when the two ends meet in different cosets.
    fn scan_and_fill(&mut self, coset: u32, word: &[Letter]) -> Result<(), CompletionError> {
        let letters: Vec<usize> = word
            .iter()
            .map(|&(g, inv)| Self::letter(g, inv))
            .collect();
        loop {
            let mut f = self.find(coset);
            let mut fi = 0usize;
            while fi < letters.len() {
                match self.get(f, letters[fi]) {
                    Some(next) => {
                        f = next;
                        fi += 1;
                    }
                    None => break,
                }
            }
            if fi == letters.len() {
                let start = self.find(coset);
                if f != start {
                    self.pending.push((f, start));
                    self.process_coincidences();
                }
                return Ok(());
            }
            let mut b = self.find(coset);
            let mut bi = letters.len();
            while bi > fi {
                match self.get(b, Self::inverse_letter(letters[bi - 1])) {
                    Some(prev) => {
                        b = prev;
                        bi -= 1;
                    }
                    None => break,
                }
            }
            if bi == fi {
                // The scans met: both ends name the coset at this position.
                if f != b {
                    self.pending.push((f, b));
                    self.process_coincidences();
                }
                return Ok(());
            }
            if bi == fi + 1 {
                // Single gap: deduction.
                self.set(f, letters[fi], b);
                self.process_coincidences();
                return Ok(());
            }
            // Wider gap: define one coset and rescan.
            self.define(f, letters[fi])?;
        }
    }

    fn live_cosets(&mut self) -> Vec<u32> {
        (0..self.table.len() as u32)
            .filter(|&c| self.find(c) == c)
            .collect()
    }

    fn run(&mut self, relations: &[Vec<Letter>]) -> Result<(), CompletionError> {
        // Iterate to a fixpoint: every live coset scans every relator and has
        // a fully defined row. Tiny inputs make the extra passes cheap.
        loop {
            let mut changed = false;
            let mut idx = 0u32;
            while (idx as usize) < self.table.len() {
                let c = idx;
                idx += 1;
                if self.find(c) != c {
                    continue;
                }
                for rel in relations {
                    let before = self.version;
                    let root = self.find(c);
                    self.scan_and_fill(root, rel)?;
                    if self.version != before {
                        changed = true;
                    }
                }
                let c = self.find(c);
                for letter in 0..2 * self.gens {
                    if self.get(c, letter).is_none() {
                        self.define(c, letter)?;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Representative word for a coset, as letters from coset 0.
    fn rep_word(&mut self, coset: u32) -> Vec<usize> {
        let mut letters = Vec::new();
        let mut c = coset;
        while c != 0 {
            let (p, l) = self.def_from[c as usize];
            letters.push(l as usize);
            c = p;
        }
        letters.reverse();
        letters
    }

    fn trace(&mut self, start: u32, word: &[usize]) -> u32 {
        word.iter()
            .fold(start, |c, &l| self.get(c, l).expect("table is complete"))
    }

    fn into_group_table(mut self, p: &GroupPresentation) -> FiniteGroupTable {
        let live = self.live_cosets();
        let order = live.len();
        let pos_of = |cosets: &[u32], c: u32| -> usize {
            cosets.binary_search(&c).expect("live coset")
        };
        let words: Vec<Vec<usize>> = live.iter().map(|&c| self.rep_word(c)).collect();
        let mut table = vec![0usize; order * order];
        for (i, &ci) in live.iter().enumerate() {
            for (j, w) in words.iter().enumerate() {
                table[i * order + j] = pos_of(&live, self.trace(ci, w));
            }
        }
        let table = FiniteSemigroup::from_flat(order, table)
            .expect("coset multiplication is a group law");
        debug_assert_eq!(table.identity(), Some(0));
        let generator_images = (0..p.generator_count)
            .map(|g| pos_of(&live, self.get(0, Enumerator::letter(g, false)).expect("complete")))
            .collect();
        FiniteGroupTable {
            order,
            table,
            generator_images,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        cyclic_group, moore_semigroup, rectangular_band, suspension_monoid, trivial_monoid,
        wedge_monoid,
    };

    /// Symmetric group on three letters, by composing permutations.
    fn sym3() -> FiniteSemigroup {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let index = |r: &[usize; 3]| perms.iter().position(|p| p == r).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| index(&compose(p, q))).collect())
            .collect();
        FiniteSemigroup::from_table(&table).unwrap()
    }

    #[test]
    fn presentation_counts() {
        let p = presentation(&trivial_monoid());
        assert_eq!(p.generator_count, 1);
        assert_eq!(p.relations.len(), 2);
        let p = presentation(&rectangular_band(2, 2));
        assert_eq!(p.generator_count, 4);
        assert_eq!(p.relations.len(), 16);
        let p = presentation(&cyclic_group(3));
        assert_eq!(p.relations.len(), 10);
    }

    #[test]
    fn completion_of_cyclic_groups() {
        for n in 1..=12 {
            let g = group_completion(&cyclic_group(n)).unwrap();
            assert_eq!(g.order, n, "G(C_{n})");
            // Cyclic: the image of the generator 1 has order n.
            if n > 1 {
                let x = g.generator_images[1];
                let mut y = x;
                let mut k = 1;
                while y != g.table.identity().unwrap() {
                    y = g.table.mul(y, x);
                    k += 1;
                }
                assert_eq!(k, n);
            }
        }
    }

    #[test]
    fn completion_of_rectangular_band_monoid_is_trivial() {
        let m = rectangular_band(2, 2).adjoin_identity();
        assert_eq!(group_completion(&m).unwrap().order, 1);
        assert!(is_simply_connected(&m).unwrap());
        assert!(is_simply_connected(&rectangular_band(3, 2).adjoin_identity()).unwrap());
    }

    #[test]
    fn completion_of_moore_monoids_is_trivial() {
        for n in 2..=3 {
            let (_, m, _) = moore_semigroup(n);
            assert!(is_simply_connected(&m).unwrap());
        }
    }

    #[test]
    fn completion_of_suspensions_is_trivial() {
        for s in [trivial_monoid(), cyclic_group(2), cyclic_group(3)] {
            let j = suspension_monoid(&s).unwrap();
            assert!(is_simply_connected(&j).unwrap());
        }
    }

    #[test]
    fn completion_of_wedge_is_trivial() {
        let m = rectangular_band(2, 2).adjoin_identity();
        let w = wedge_monoid(&m, &m).unwrap();
        assert!(is_simply_connected(&w.semigroup).unwrap());
    }

    #[test]
    fn c2_is_not_simply_connected() {
        assert!(!is_simply_connected(&cyclic_group(2)).unwrap());
    }

    #[test]
    fn generator_images_form_a_homomorphism() {
        for s in [
            cyclic_group(6),
            rectangular_band(2, 3),
            sym3(),
            suspension_monoid(&cyclic_group(2)).unwrap(),
        ] {
            let g = group_completion(&s).unwrap();
            for a in 0..s.order() {
                for b in 0..s.order() {
                    assert_eq!(
                        g.table
                            .mul(g.generator_images[a], g.generator_images[b]),
                        g.generator_images[s.mul(a, b)]
                    );
                }
            }
            assert!(g.order <= s.order());
        }
    }

    #[test]
    fn completion_of_sym3_is_itself() {
        let g = group_completion(&sym3()).unwrap();
        assert_eq!(g.order, 6);
        assert!(!g.table.is_aperiodic());
    }

    #[test]
    fn enumerated_tables_are_groups() {
        for s in [cyclic_group(6), sym3(), rectangular_band(2, 3)] {
            let g = group_completion(&s).unwrap();
            let e = g.table.identity().expect("groups have an identity");
            for x in 0..g.order {
                assert!((0..g.order)
                    .any(|y| g.table.mul(x, y) == e && g.table.mul(y, x) == e));
            }
        }
    }

    #[test]
    fn abelianizations() {
        let triv = group_completion(&trivial_monoid()).unwrap();
        assert!(abelianization(&triv).is_zero());
        let c6 = group_completion(&cyclic_group(6)).unwrap();
        assert_eq!(abelianization(&c6), HomologyGroup::cyclic(6));
        let s3 = group_completion(&sym3()).unwrap();
        assert_eq!(abelianization(&s3), HomologyGroup::cyclic(2));
    }

    #[test]
    fn cap_is_reported() {
        let p = presentation(&cyclic_group(8));
        let err = todd_coxeter(&p, 2).unwrap_err();
        assert_eq!(err, CompletionError::CosetCapExceeded { cap: 2 });
    }

    #[test]
    fn completion_without_identity_relation() {
        // A semigroup without identity still has a group completion; for the
        // null semigroup all generators coincide and are idempotent, so the
        // group is trivial.
        let null2 = FiniteSemigroup::from_table(&[vec![0, 0], vec![0, 0]]).unwrap();
        let g = group_completion(&null2).unwrap();
        assert_eq!(g.order, 1);
    }
}
