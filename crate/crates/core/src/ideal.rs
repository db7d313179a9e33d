//! Upper-sets ("ideals") of the complex, stored by their minimal generators.
//!
//! An ideal `<g1, ..., gt>` denotes every atom containing at least one
//! generator. Unions concatenate generators and intersections take all
//! pairwise products `g h = g ∪ h`; both are re-minimalized so the stored
//! antichain is unique for a given upper-set.

use std::fmt;

use crate::atom::{for_each_combination, Atom, AtomSet};
use crate::error::Result;
use crate::measure::{mu_set, MuTable, MU_TABLE_MAX_OUTCOMES};
use crate::space::{Distribution, OutcomeSpace};

/// An upper-set of the complex.
///
/// The generator list is always a minimal antichain of atoms of degree at
/// least two, sorted in atom order. The empty ideal is allowed; it arises
/// from constant variables and is reported as degenerate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    space: OutcomeSpace,
    generators: Vec<Atom>,
}

impl Ideal {
    /// The ideal generated by `gens`.
    ///
    /// Empty and singleton generators are accepted: `<ω>` is replaced by the
    /// pairs `ωω'`, which generate the same atoms of the complex.
    pub fn from_generators<I: IntoIterator<Item = Atom>>(
        space: OutcomeSpace,
        gens: I,
    ) -> Result<Self> {
        let n = space.len();
        let mut expanded = Vec::new();
        for g in gens {
            space.check_atom(g)?;
            if g.is_entropic() {
                expanded.push(g);
            } else if g.is_empty() {
                for_each_combination(n, 2, |pair| expanded.push(pair));
            } else {
                expanded.extend(
                    (0..n)
                        .filter(|&other| !g.contains_outcome(other))
                        .map(|other| g.with_outcome(other)),
                );
            }
        }
        Ok(Self::from_raw(space, expanded))
    }

    pub fn from_atom_set(set: &AtomSet) -> Self {
        Self::from_raw(set.space().clone(), set.atoms().to_vec())
    }

    /// For generators already known to be entropic and inside the space.
    pub(crate) fn from_raw(space: OutcomeSpace, gens: Vec<Atom>) -> Self {
        let generators = minimalize(space.len(), gens);
        Self { space, generators }
    }

    pub fn empty(space: OutcomeSpace) -> Self {
        Self {
            space,
            generators: Vec::new(),
        }
    }

    /// The whole complex, `<all pairs>`.
    pub fn full(space: OutcomeSpace) -> Self {
        let n = space.len();
        let mut gens = Vec::new();
        for_each_combination(n, 2, |a| gens.push(a));
        Self {
            space,
            generators: gens,
        }
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn generators(&self) -> &[Atom] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Empty ideals are representable but are not ideals in the strict
    /// sense, which requires a nonempty upper-set.
    pub fn is_degenerate(&self) -> bool {
        self.is_empty()
    }

    pub fn contains(&self, b: Atom) -> bool {
        b.is_entropic() && self.generators.iter().any(|g| g.is_subset_of(b))
    }

    pub fn union(&self, other: &Ideal) -> Result<Ideal> {
        self.space.ensure_same(&other.space)?;
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Ok(Self::from_raw(self.space.clone(), gens))
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.space.ensure_same(&other.space)?;
        Ok(Self::from_raw(
            self.space.clone(),
            products(&self.generators, &other.generators),
        ))
    }

    /// Atoms of `self` that are not in `other`; generally not an upper-set.
    pub fn difference(&self, other: &Ideal) -> Result<AtomSet> {
        self.space.ensure_same(&other.space)?;
        let atoms = self
            .enumerate()
            .atoms()
            .iter()
            .copied()
            .filter(|&a| !other.contains(a))
            .collect();
        Ok(AtomSet::from_sorted(self.space.clone(), atoms))
    }

    /// Every atom of the upper-set, in atom order.
    pub fn enumerate(&self) -> AtomSet {
        let n = self.space.len();
        let mut atoms = Vec::new();
        if self.generators.is_empty() {
            return AtomSet::from_sorted(self.space.clone(), atoms);
        }
        if n <= MU_TABLE_MAX_OUTCOMES {
            let up = upward_closure(n, &self.generators);
            for k in 2..=n {
                for_each_combination(n, k, |a| {
                    if up[a.bits() as usize] {
                        atoms.push(a);
                    }
                });
            }
        } else {
            for k in 2..=n {
                for_each_combination(n, k, |a| {
                    if self.contains(a) {
                        atoms.push(a);
                    }
                });
            }
        }
        AtomSet::from_sorted(self.space.clone(), atoms)
    }

    /// Number of atoms in the upper-set.
    pub fn size(&self) -> usize {
        self.enumerate().len()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut degrees: Vec<u32> = self.generators.iter().map(|g| g.degree()).collect();
        degrees.sort_unstable();
        DegreeProfile { degrees }
    }

    /// Measure of the upper-set.
    pub fn measure(&self, dist: &Distribution) -> Result<f64> {
        self.space.ensure_same(dist.space())?;
        if self.generators.is_empty() {
            return Ok(0.0);
        }
        if self.space.len() <= MU_TABLE_MAX_OUTCOMES {
            Ok(self.measure_with(&MuTable::new(dist)?))
        } else {
            mu_set(dist, &self.enumerate())
        }
    }

    /// Measure using a precomputed table for the same space.
    pub fn measure_with(&self, table: &MuTable) -> f64 {
        table.sum(self.enumerate().atoms())
    }

    pub fn format_generators(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|&g| self.space.format_atom(g))
            .collect()
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.format_generators().join(", "))
    }
}

/// Parity shape of a generator antichain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    Empty,
    PureEven,
    PureOdd,
    Mixed,
}

/// Sorted degrees of the minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeProfile {
    pub degrees: Vec<u32>,
}

impl DegreeProfile {
    pub fn kind(&self) -> ProfileKind {
        let even = self.degrees.iter().any(|d| d % 2 == 0);
        let odd = self.degrees.iter().any(|d| d % 2 == 1);
        match (even, odd) {
            (false, false) => ProfileKind::Empty,
            (true, false) => ProfileKind::PureEven,
            (false, true) => ProfileKind::PureOdd,
            (true, true) => ProfileKind::Mixed,
        }
    }

    pub fn max(&self) -> Option<u32> {
        self.degrees.last().copied()
    }

    pub fn min(&self) -> Option<u32> {
        self.degrees.first().copied()
    }
}

/// All pairwise products, deduplicated.
pub(crate) fn products(a: &[Atom], b: &[Atom]) -> Vec<Atom> {
    let mut out: Vec<Atom> = a
        .iter()
        .flat_map(|&g| b.iter().map(move |&h| g.product(h)))
        .collect();
    out.sort_unstable_by_key(|x| x.bits());
    out.dedup();
    out
}

/// Reduces a generating list to its minimal antichain, in atom order.
pub(crate) fn minimalize(n: usize, mut gens: Vec<Atom>) -> Vec<Atom> {
    gens.sort_unstable();
    gens.dedup();
    let k = gens.len();
    if k <= 1 {
        return gens;
    }
    if n <= MU_TABLE_MAX_OUTCOMES && (k * k) > (n << n) {
        let below = upward_closure(n, &gens);
        gens.retain(|g| {
            !g.members()
                .any(|i| below[(g.bits() & !(1u32 << i)) as usize])
        });
        gens
    } else {
        let mut kept: Vec<Atom> = Vec::with_capacity(k);
        for g in gens {
            // sorted by degree, so any generator below g is already kept
            if !kept.iter().any(|h| h.is_subset_of(g)) {
                kept.push(g);
            }
        }
        kept.sort_unstable();
        kept
    }
}

/// `up[s]` is true when some generator is a subset of `s`.
fn upward_closure(n: usize, gens: &[Atom]) -> Vec<bool> {
    let size = 1usize << n;
    let mut up = vec![false; size];
    for g in gens {
        up[g.bits() as usize] = true;
    }
    for i in 0..n {
        let bit = 1usize << i;
        for s in 0..size {
            if s & bit != 0 && up[s ^ bit] {
                up[s] = true;
            }
        }
    }
    up
}

/// Free-function form of [`Ideal::from_atom_set`].
pub fn ideal_from_generators(gens: &AtomSet) -> Ideal {
    Ideal::from_atom_set(gens)
}

pub fn ideal_union(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.union(j)
}

pub fn ideal_intersection(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.intersection(j)
}

pub fn ideal_difference(i: &Ideal, j: &Ideal) -> Result<AtomSet> {
    i.difference(j)
}

pub fn enumerate_ideal(ideal: &Ideal) -> AtomSet {
    ideal.enumerate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn atom(s: &str) -> Atom {
        Atom::from_indices(s.bytes().map(|b| (b - b'1') as usize))
    }

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        Ideal::from_generators(OutcomeSpace::new(n).unwrap(), gens.iter().map(|g| atom(g))).unwrap()
    }

    fn names(set: &AtomSet) -> Vec<String> {
        set.format()
    }

    #[test]
    fn redundant_generators_are_dropped() {
        assert_eq!(ideal(3, &["12", "123"]).generators(), [atom("12")]);
        assert!(ideal(3, &[]).is_degenerate());
    }

    #[test]
    fn ideal_of_two_pairs() {
        let i = ideal(4, &["12", "13"]);
        assert_eq!(
            names(&i.enumerate()),
            ["12", "13", "123", "124", "134", "1234"]
        );
        assert_eq!(i.size(), 6);
    }

    #[test]
    fn membership() {
        let i = ideal(4, &["12"]);
        assert!(i.contains(atom("123")));
        assert!(!i.contains(atom("13")));
        assert!(ideal(4, &["14", "123"]).contains(atom("1234")));
    }

    #[test]
    fn unions() {
        assert_eq!(
            ideal(4, &["12"]).union(&ideal(4, &["13"])).unwrap(),
            ideal(4, &["12", "13"])
        );
        assert_eq!(
            ideal(4, &["12"]).union(&ideal(4, &["123"])).unwrap(),
            ideal(4, &["12"])
        );
        let u = ideal(4, &["13", "23"])
            .union(&ideal(4, &["14", "24"]))
            .unwrap()
            .union(&ideal(4, &["34"]))
            .unwrap();
        assert_eq!(u.format_generators(), ["13", "14", "23", "24", "34"]);
    }

    #[test]
    fn intersections() {
        assert_eq!(
            ideal(4, &["12", "23"])
                .intersection(&ideal(4, &["23"]))
                .unwrap(),
            ideal(4, &["23"])
        );
        assert_eq!(
            ideal(4, &["123"])
                .intersection(&ideal(4, &["234"]))
                .unwrap(),
            ideal(4, &["1234"])
        );
        let i = ideal(4, &["12", "13", "14"])
            .intersection(&ideal(4, &["23", "24", "34"]))
            .unwrap();
        // 234 misses outcome 1, so it is not in the left ideal.
        assert_eq!(i.format_generators(), ["123", "124", "134"]);
        assert_eq!(i.size(), 4);
    }

    #[test]
    fn differences() {
        let d = ideal(4, &["123"]).difference(&ideal(4, &["1234"])).unwrap();
        assert_eq!(names(&d), ["123"]);
        let i = ideal(4, &["12", "34"]);
        assert!(i.difference(&i).unwrap().is_empty());
        assert_eq!(
            names(&ideal(3, &["12"]).difference(&ideal(3, &["13"])).unwrap()),
            ["12"]
        );
    }

    #[test]
    fn enumeration() {
        assert_eq!(names(&ideal(3, &["12"]).enumerate()), ["12", "123"]);
        assert_eq!(names(&ideal(4, &["1234"]).enumerate()), ["1234"]);
    }

    #[test]
    fn degree_profiles() {
        let p = ideal(4, &["14", "123"]).degree_profile();
        assert_eq!(p.degrees, [2, 3]);
        assert_eq!(p.kind(), ProfileKind::Mixed);
        let p = ideal(4, &["123", "124", "134", "234"]).degree_profile();
        assert_eq!(p.degrees, [3, 3, 3, 3]);
        assert_eq!(p.kind(), ProfileKind::PureOdd);
        assert_eq!(
            ideal(3, &["12", "23"]).degree_profile().kind(),
            ProfileKind::PureEven
        );
        assert_eq!(ideal(3, &[]).degree_profile().kind(), ProfileKind::Empty);
    }

    #[test]
    fn singleton_generators_expand_to_pairs() {
        // <1> = every atom containing outcome 1
        let i = ideal(3, &["1"]);
        assert_eq!(i.format_generators(), ["12", "13"]);
        let everything =
            Ideal::from_generators(OutcomeSpace::new(3).unwrap(), [Atom::EMPTY]).unwrap();
        assert_eq!(everything, Ideal::full(OutcomeSpace::new(3).unwrap()));
        assert_eq!(everything.size(), 4);
    }

    #[test]
    fn mismatched_spaces() {
        assert_eq!(
            ideal(3, &["12"]).union(&ideal(4, &["12"])).unwrap_err(),
            Error::SpaceMismatch
        );
    }

    #[test]
    fn dense_and_pairwise_minimalization_agree() {
        let n = 6;
        let mut gens = Vec::new();
        for bits in 0u32..64 {
            if bits.count_ones() >= 2 && bits % 3 == 0 {
                gens.push(Atom::from_bits(bits));
            }
        }
        let dense = minimalize(n, gens.clone());
        let mut kept: Vec<Atom> = Vec::new();
        let mut sorted = gens;
        sorted.sort();
        for g in sorted {
            if !kept.iter().any(|h| h.is_subset_of(g)) {
                kept.push(g);
            }
        }
        assert_eq!(dense, kept);
    }
}
