//! Random variables as partitions of the outcome space.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::atom::Atom;
use crate::error::{Error, Result};
use crate::space::OutcomeSpace;

/// A partition of the outcome space into nonempty blocks.
///
/// Block indices are assigned in order of first appearance, so two
/// partitions compare equal exactly when they have the same blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    space: OutcomeSpace,
    block_of: Vec<u32>,
    block_count: usize,
}

impl Partition {
    /// Builds a partition from arbitrary per-outcome block labels.
    pub fn new<L: Hash + Eq>(space: OutcomeSpace, labels: &[L]) -> Result<Self> {
        if labels.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                found: labels.len(),
            });
        }
        let mut seen: HashMap<&L, u32> = HashMap::new();
        let block_of = labels
            .iter()
            .map(|l| {
                let next = seen.len() as u32;
                *seen.entry(l).or_insert(next)
            })
            .collect();
        Ok(Self {
            space,
            block_count: seen.len(),
            block_of,
        })
    }

    /// Builds a partition from explicit blocks of outcome indices.
    pub fn from_blocks(space: OutcomeSpace, blocks: &[Vec<usize>]) -> Result<Self> {
        let n = space.len();
        let mut labels: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            for &i in block {
                if i >= n {
                    return Err(Error::OutOfRange { index: i, n });
                }
                if labels[i].replace(b).is_some() {
                    return Err(Error::Postcondition(format!(
                        "outcome {i} appears in more than one block"
                    )));
                }
            }
        }
        let labels: Vec<usize> = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or(Error::Postcondition(format!("outcome {i} is in no block"))))
            .collect::<Result<_>>()?;
        Self::new(space, &labels)
    }

    /// Every outcome in its own block.
    pub fn discrete(space: OutcomeSpace) -> Self {
        let n = space.len();
        Self {
            space,
            block_of: (0..n as u32).collect(),
            block_count: n,
        }
    }

    /// A single block: the constant variable.
    pub fn trivial(space: OutcomeSpace) -> Self {
        let n = space.len();
        Self {
            space,
            block_of: vec![0; n],
            block_count: 1,
        }
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block_of(&self, outcome: usize) -> usize {
        self.block_of[outcome] as usize
    }

    pub fn assignment(&self) -> &[u32] {
        &self.block_of
    }

    /// Blocks as atoms (bit patterns), in block-index order.
    pub fn block_masks(&self) -> Vec<Atom> {
        let mut masks = vec![Atom::EMPTY; self.block_count];
        for (i, &b) in self.block_of.iter().enumerate() {
            masks[b as usize] = masks[b as usize].with_outcome(i);
        }
        masks
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.block_masks()
            .into_iter()
            .map(|m| m.members().collect())
            .collect()
    }

    /// Whether some two members of `atom` lie in different blocks.
    pub fn separates(&self, atom: Atom) -> bool {
        let mut members = atom.members();
        match members.next() {
            Some(first) => {
                let b = self.block_of[first];
                members.any(|i| self.block_of[i] != b)
            }
            None => false,
        }
    }

    /// True when every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.space != other.space {
            return false;
        }
        let mut image: Vec<Option<u32>> = vec![None; self.block_count];
        self.block_of
            .iter()
            .zip(&other.block_of)
            .all(|(&a, &b)| *image[a as usize].get_or_insert(b) == b)
    }

    /// Coarsest partition finer than both: the joint variable.
    pub fn common_refinement(&self, other: &Partition) -> Result<Partition> {
        self.space.ensure_same(&other.space)?;
        let pairs: Vec<(u32, u32)> = self
            .block_of
            .iter()
            .copied()
            .zip(other.block_of.iter().copied())
            .collect();
        Partition::new(self.space.clone(), &pairs)
    }

    /// Finest partition coarser than both: connected components of the
    /// block-overlap relation.
    pub fn common_coarsening(&self, other: &Partition) -> Result<Partition> {
        self.space.ensure_same(&other.space)?;
        let n = self.space.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for part in [self, other] {
            let mut first: Vec<Option<usize>> = vec![None; part.block_count];
            for i in 0..n {
                let b = part.block_of[i] as usize;
                match first[b] {
                    None => first[b] = Some(i),
                    Some(r) => {
                        let (ri, rr) = (find(&mut parent, i), find(&mut parent, r));
                        parent[ri] = rr;
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        Partition::new(self.space.clone(), &roots)
    }

    /// Joint variable of a nonempty list of partitions.
    pub fn join_all<'a, I>(parts: I) -> Result<Partition>
    where
        I: IntoIterator<Item = &'a Partition>,
    {
        let mut iter = parts.into_iter();
        let first = iter.next().ok_or(Error::TooFew {
            expected: 1,
            found: 0,
        })?;
        iter.try_fold(first.clone(), |acc, p| acc.common_refinement(p))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .block_masks()
            .into_iter()
            .map(|m| self.space.format_atom(m))
            .collect();
        write!(f, "{{{}}}", blocks.join("|"))
    }
}

/// Free-function form of [`Partition::common_refinement`].
pub fn common_refinement(a: &Partition, b: &Partition) -> Result<Partition> {
    a.common_refinement(b)
}

/// Free-function form of [`Partition::common_coarsening`].
pub fn common_coarsening(a: &Partition, b: &Partition) -> Result<Partition> {
    a.common_coarsening(b)
}

/// All partitions of an `n`-outcome space as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn rec(pos: usize, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for v in 0..=max + 1 {
            current[pos] = v;
            rec(pos + 1, max.max(v), current, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    rec(1, 0, &mut current, &mut out);
    out
}
