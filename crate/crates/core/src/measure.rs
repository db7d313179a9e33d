//! The interior-loss measure on atoms, Shannon entropy, and merge losses.
//!
//! Every value is in bits. For an atom `S` with member weights `p_i` the
//! measure is the alternating subset sum
//!
//! ```text
//! mu(S) = Σ_{∅ ≠ T ⊆ S} (-1)^{|S| - |T|} · m(T) log2 m(T),   m(T) = Σ_{i ∈ T} p_i
//! ```
//!
//! which is the logarithm of the alternating product of `m^m` terms written
//! out term by term. Its sign is `(-1)^|S|` whenever every member weight is
//! positive, and it is exactly zero when some member weight is zero.

use crate::atom::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::space::{Distribution, OutcomeSpace};

/// Absolute tolerance for equalities between measure values.
pub const TOLERANCE: f64 = 1e-9;

/// Margin used when a strict inequality is asserted.
pub const STRICT_MARGIN: f64 = 1e-12;

/// Largest space for which [`MuTable`] materializes every subset.
pub const MU_TABLE_MAX_OUTCOMES: usize = 20;

/// `x log2 x` with the continuous extension `0 log 0 = 0`.
pub fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Measure of the atom whose members carry `weights`.
///
/// Subsets are visited in ascending bit-pattern order so the summation order
/// is fixed.
pub fn mu_weights(weights: &[f64]) -> Result<f64> {
    if weights.len() < 2 {
        return Err(Error::Degree(weights.len() as u32));
    }
    if weights.len() > 32 {
        return Err(Error::Capacity {
            requested: weights.len(),
            limit: 32,
        });
    }
    if let Some((index, &value)) = weights
        .iter()
        .enumerate()
        .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
    {
        return Err(Error::Domain { index, value });
    }
    if weights.contains(&0.0) {
        return Ok(0.0);
    }
    Ok(alternating_sum(weights))
}

fn alternating_sum(weights: &[f64]) -> f64 {
    let d = weights.len();
    let full = Atom::full(d);
    if d <= 20 {
        // mass[T] built from mass[T without its lowest member]
        let mut mass = vec![0.0f64; 1 << d];
        let mut total = 0.0;
        for t in full.subsets() {
            let bits = t.bits();
            let low = bits.trailing_zeros() as usize;
            let m = mass[(bits & (bits - 1)) as usize] + weights[low];
            mass[bits as usize] = m;
            let term = xlog2x(m);
            if (d as u32 - t.degree()).is_multiple_of(2) {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    } else {
        full.subsets()
            .map(|t| {
                let m: f64 = t.members().map(|i| weights[i]).sum();
                if (d as u32 - t.degree()).is_multiple_of(2) {
                    xlog2x(m)
                } else {
                    -xlog2x(m)
                }
            })
            .sum()
    }
}

/// Measure of a single atom under `dist`. Normalization is not required.
pub fn mu_atom(dist: &Distribution, atom: Atom) -> Result<f64> {
    dist.space().check_atom(atom)?;
    if atom.non_entropic() {
        return Err(Error::Degree(atom.degree()));
    }
    let weights: Vec<f64> = atom.members().map(|i| dist.weight(i)).collect();
    mu_weights(&weights)
}

/// Sum of the measure over a set of atoms.
pub fn mu_set(dist: &Distribution, set: &AtomSet) -> Result<f64> {
    dist.space().ensure_same(set.space())?;
    set.iter()
        .try_fold(0.0, |acc, &a| Ok(acc + mu_atom(dist, a)?))
}

/// Measure of every subset of a small space, computed at once by a fast
/// Möbius transform over the subset lattice.
///
/// This is the route used when many atoms are measured under one
/// distribution. Entries of degree below two read as zero.
#[derive(Clone, Debug)]
pub struct MuTable {
    space: OutcomeSpace,
    values: Vec<f64>,
}

impl MuTable {
    pub fn new(dist: &Distribution) -> Result<Self> {
        let n = dist.space().len();
        if n > MU_TABLE_MAX_OUTCOMES {
            return Err(Error::Capacity {
                requested: n,
                limit: MU_TABLE_MAX_OUTCOMES,
            });
        }
        let w = dist.weights();
        let size = 1usize << n;
        let mut values = vec![0.0f64; size];
        let mut mass = vec![0.0f64; size];
        for bits in 1..size {
            let low = bits.trailing_zeros() as usize;
            mass[bits] = mass[bits & (bits - 1)] + w[low];
            values[bits] = xlog2x(mass[bits]);
        }
        for i in 0..n {
            let bit = 1usize << i;
            for s in 0..size {
                if s & bit != 0 {
                    values[s] -= values[s ^ bit];
                }
            }
        }
        let zero_mask = (0..n)
            .filter(|&i| w[i] == 0.0)
            .fold(0usize, |acc, i| acc | (1 << i));
        for (s, v) in values.iter_mut().enumerate() {
            if s.count_ones() < 2 || s & zero_mask != 0 {
                *v = 0.0;
            }
        }
        Ok(Self {
            space: dist.space().clone(),
            values,
        })
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn get(&self, atom: Atom) -> f64 {
        self.values[atom.bits() as usize]
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Atom>>(&self, atoms: I) -> f64 {
        atoms.into_iter().map(|&a| self.get(a)).sum()
    }

    pub fn sum_set(&self, set: &AtomSet) -> Result<f64> {
        self.space.ensure_same(set.space())?;
        Ok(self.sum(set))
    }
}

/// Shannon entropy (bits) of a partition under a normalized distribution.
pub fn entropy(dist: &Distribution, part: &Partition) -> Result<f64> {
    dist.space().ensure_same(part.space())?;
    dist.require_normalized()?;
    Ok(entropy_unchecked(dist, part))
}

pub(crate) fn entropy_unchecked(dist: &Distribution, part: &Partition) -> f64 {
    let mut masses = vec![0.0f64; part.block_count()];
    for (i, &w) in dist.weights().iter().enumerate() {
        masses[part.block_of(i)] += w;
    }
    -masses.iter().map(|&q| xlog2x(q)).sum::<f64>()
}

/// Entropy lost when the members of `s` are merged into a single outcome.
pub fn merge_loss(dist: &Distribution, s: Atom) -> Result<f64> {
    dist.space().check_atom(s)?;
    if s.non_entropic() {
        return Err(Error::Degree(s.degree()));
    }
    let space = dist.space().clone();
    let labels: Vec<usize> = (0..space.len())
        .map(|i| if s.contains_outcome(i) { usize::MAX } else { i })
        .collect();
    let merged = Partition::new(space.clone(), &labels)?;
    Ok(entropy(dist, &Partition::discrete(space))? - entropy(dist, &merged)?)
}

/// Central finite-difference estimate of the `order`-th derivative of the
/// atom's measure with respect to the weight of `member`.
///
/// Order zero returns the measure itself. The perturbed weightings are not
/// renormalized.
pub fn finite_difference_derivative(
    dist: &Distribution,
    atom: Atom,
    member: usize,
    order: u32,
    step: f64,
) -> Result<f64> {
    if !atom.contains_outcome(member) {
        return Err(Error::NotMember(member));
    }
    let at = |x: f64| -> Result<f64> { mu_atom(&dist.with_weight(member, x)?, atom) };
    let x = dist.weight(member);
    if order == 0 {
        return mu_atom(dist, atom);
    }
    if !(step > 0.0 && x > step) {
        return Err(Error::StepUnderflow { step, weight: x });
    }
    match order {
        1 => Ok((at(x + step)? - at(x - step)?) / (2.0 * step)),
        2 => Ok((at(x + step)? - 2.0 * at(x)? + at(x - step)?) / (step * step)),
        other => Err(Error::DerivativeOrder(other)),
    }
}
