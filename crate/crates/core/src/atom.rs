//! Atoms (subsets of the outcome space) and finite sets of them.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::space::OutcomeSpace;

/// A subset of outcomes stored as a bit pattern; bit `i` is outcome `i`.
///
/// Elements of the complex have degree at least two. Empty and singleton
/// patterns are representable because ideal algebra passes through them, but
/// they never carry measure.
///
/// Atoms order by degree first and then lexicographically by member
/// sequence, which is how they are conventionally listed:
/// `12 < 13 < 14 < 23 < ... < 123 < ... < 1234`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Atom(u32);

impl Atom {
    pub const EMPTY: Atom = Atom(0);

    pub const fn from_bits(bits: u32) -> Self {
        Atom(bits)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Atom(indices.into_iter().fold(0, |acc, i| acc | (1u32 << i)))
    }

    pub fn singleton(index: usize) -> Self {
        Atom(1 << index)
    }

    /// The atom holding outcomes `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            Atom(u32::MAX)
        } else {
            Atom((1u32 << n) - 1)
        }
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn degree(self) -> u32 {
        self.0.count_ones()
    }

    /// True for elements of the complex (degree at least two).
    pub const fn is_entropic(self) -> bool {
        self.0.count_ones() >= 2
    }

    pub const fn non_entropic(self) -> bool {
        !self.is_entropic()
    }

    pub const fn is_even(self) -> bool {
        self.0.count_ones().is_multiple_of(2)
    }

    /// `(-1)^degree`.
    pub const fn parity_sign(self) -> i8 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    pub const fn contains_outcome(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    /// `self ⊆ other`.
    pub const fn is_subset_of(self, other: Atom) -> bool {
        self.0 & !other.0 == 0
    }

    /// `other ⊆ self`.
    pub const fn contains(self, other: Atom) -> bool {
        other.is_subset_of(self)
    }

    /// The atom product `b_S b_T = b_{S ∪ T}`.
    pub const fn product(self, other: Atom) -> Atom {
        Atom(self.0 | other.0)
    }

    pub const fn intersect(self, other: Atom) -> Atom {
        Atom(self.0 & other.0)
    }

    pub const fn without(self, other: Atom) -> Atom {
        Atom(self.0 & !other.0)
    }

    pub const fn with_outcome(self, index: usize) -> Atom {
        Atom(self.0 | (1 << index))
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Member indices in ascending order.
    pub fn members(self) -> Members {
        Members(self.0)
    }

    /// Nonempty subsets in ascending bit-pattern order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            current: 0,
        }
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // first differing member belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b")?;
        let mut sep = "";
        for i in self.members() {
            write!(f, "{sep}{}", i + 1)?;
            sep = ".";
        }
        Ok(())
    }
}

pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

pub struct Subsets {
    mask: u32,
    current: u32,
}

impl Iterator for Subsets {
    type Item = Atom;

    fn next(&mut self) -> Option<Atom> {
        self.current = self.current.wrapping_sub(self.mask) & self.mask;
        (self.current != 0).then_some(Atom(self.current))
    }
}

/// Calls `visit` with every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(Atom)) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(Atom::from_indices(idx.iter().copied()));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// A duplicate-free, sorted set of complex elements over one space.
#[derive(Clone, PartialEq, Eq)]
pub struct AtomSet {
    space: OutcomeSpace,
    atoms: Vec<Atom>,
}

impl AtomSet {
    /// Builds a set, rejecting atoms of degree below two or outside the space.
    pub fn new<I: IntoIterator<Item = Atom>>(space: OutcomeSpace, atoms: I) -> Result<Self> {
        let mut atoms: Vec<Atom> = atoms.into_iter().collect();
        for &a in &atoms {
            space.check_atom(a)?;
            if a.non_entropic() {
                return Err(Error::Degree(a.degree()));
            }
        }
        atoms.sort_unstable();
        atoms.dedup();
        Ok(Self { space, atoms })
    }

    pub fn empty(space: OutcomeSpace) -> Self {
        Self {
            space,
            atoms: Vec::new(),
        }
    }

    /// For atoms already known to be sorted, unique and entropic.
    pub(crate) fn from_sorted(space: OutcomeSpace, atoms: Vec<Atom>) -> Self {
        debug_assert!(atoms.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(atoms.iter().all(|a| a.is_entropic()));
        Self { space, atoms }
    }

    pub(crate) fn from_unsorted(space: OutcomeSpace, mut atoms: Vec<Atom>) -> Self {
        atoms.sort_unstable();
        atoms.dedup();
        Self::from_sorted(space, atoms)
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Atom> {
        self.atoms.iter()
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.atoms.binary_search(&atom).is_ok()
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.atoms.iter().all(|&a| other.contains(a))
    }

    pub fn union(&self, other: &AtomSet) -> Result<AtomSet> {
        self.space.ensure_same(&other.space)?;
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Ok(Self::from_unsorted(self.space.clone(), atoms))
    }

    pub fn intersection(&self, other: &AtomSet) -> Result<AtomSet> {
        self.space.ensure_same(&other.space)?;
        let atoms = self
            .atoms
            .iter()
            .copied()
            .filter(|&a| other.contains(a))
            .collect();
        Ok(Self::from_sorted(self.space.clone(), atoms))
    }

    pub fn difference(&self, other: &AtomSet) -> Result<AtomSet> {
        self.space.ensure_same(&other.space)?;
        let atoms = self
            .atoms
            .iter()
            .copied()
            .filter(|&a| !other.contains(a))
            .collect();
        Ok(Self::from_sorted(self.space.clone(), atoms))
    }

    /// The restriction `W_S`: atoms of this set lying entirely inside `s`.
    pub fn restrict(&self, s: Atom) -> AtomSet {
        let atoms = self
            .atoms
            .iter()
            .copied()
            .filter(|a| a.is_subset_of(s))
            .collect();
        Self::from_sorted(self.space.clone(), atoms)
    }

    pub fn format(&self) -> Vec<String> {
        self.atoms
            .iter()
            .map(|&a| self.space.format_atom(a))
            .collect()
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.format().join(", "))
    }
}

impl<'a> IntoIterator for &'a AtomSet {
    type Item = &'a Atom;
    type IntoIter = std::slice::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.atoms.iter()
    }
}

/// Number of atoms in the complex of an `n`-outcome space, `2^n - n - 1`.
pub fn complex_size(n: usize) -> u64 {
    (1u64 << n) - n as u64 - 1
}

/// Every element of the complex: all subsets of degree at least two.
pub fn enumerate_complex(space: &OutcomeSpace) -> AtomSet {
    let n = space.len();
    let mut atoms = Vec::with_capacity(complex_size(n) as usize);
    for k in 2..=n {
        for_each_combination(n, k, |a| atoms.push(a));
    }
    AtomSet::from_sorted(space.clone(), atoms)
}

/// Free-function form of [`AtomSet::restrict`].
pub fn restrict(set: &AtomSet, s: Atom) -> AtomSet {
    set.restrict(s)
}
