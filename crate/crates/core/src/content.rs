//! Contents of random variables and the correspondence between co-information
//! and ideals.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::atom::{complex_size, enumerate_complex, for_each_combination, Atom, AtomSet};
use crate::error::{Error, Result};
use crate::ideal::{products, Ideal};
use crate::measure::entropy_unchecked;
use crate::partition::Partition;
use crate::space::{Distribution, OutcomeSpace, MAX_OUTCOMES};

/// Largest space scanned by [`content_bruteforce`].
pub const BRUTEFORCE_MAX_OUTCOMES: usize = 16;

/// Cap on the number of partitions built by [`ideal_to_variables`].
pub const VARIABLE_CONSTRUCTION_LIMIT: usize = 1_000_000;

/// The content `ΔX` of a variable as an ideal.
///
/// Built as `∪_t <ω ∈ Q_t> ∩ <ω' ∉ Q_t>` over the blocks `Q_t`; the products
/// of singleton generators are exactly the cross-block pairs.
pub fn content(part: &Partition) -> Ideal {
    let space = part.space();
    let full = space.full();
    let mut gens = Vec::new();
    for block in part.block_masks() {
        let inside: Vec<Atom> = block.members().map(Atom::singleton).collect();
        let outside: Vec<Atom> = full.without(block).members().map(Atom::singleton).collect();
        gens.extend(products(&inside, &outside));
    }
    Ideal::from_raw(space.clone(), gens)
}

/// The content scanned atom by atom: every atom meeting two blocks.
pub fn content_bruteforce(part: &Partition) -> Result<AtomSet> {
    let space = part.space();
    let n = space.len();
    if n > BRUTEFORCE_MAX_OUTCOMES {
        return Err(Error::Capacity {
            requested: n,
            limit: BRUTEFORCE_MAX_OUTCOMES,
        });
    }
    let atoms = (0u32..1 << n)
        .map(Atom::from_bits)
        .filter(|&a| a.is_entropic() && part.separates(a))
        .collect();
    Ok(AtomSet::from_unsorted(space.clone(), atoms))
}

/// The ideal `ΔX1 ∩ ... ∩ ΔXM` whose measure is the co-information.
///
/// Fails loudly if a minimal generator exceeds degree `max(M, 2)`.
pub fn coinformation_content(parts: &[Partition]) -> Result<Ideal> {
    let (first, rest) = parts.split_first().ok_or(Error::TooFew {
        expected: 1,
        found: 0,
    })?;
    let mut acc = content(first);
    for p in rest {
        acc = acc.intersection(&content(p))?;
    }
    let bound = parts.len().max(2) as u32;
    if let Some(degree) = acc.degree_profile().max() {
        if degree > bound {
            return Err(Error::DegreeBound {
                variables: parts.len(),
                degree,
            });
        }
    }
    Ok(acc)
}

/// Co-information by inclusion–exclusion over joint entropies.
pub fn coinformation_numeric(dist: &Distribution, parts: &[Partition]) -> Result<f64> {
    if parts.is_empty() {
        return Err(Error::TooFew {
            expected: 1,
            found: 0,
        });
    }
    if parts.len() > 16 {
        return Err(Error::Capacity {
            requested: parts.len(),
            limit: 16,
        });
    }
    for p in parts {
        dist.space().ensure_same(p.space())?;
    }
    dist.require_normalized()?;
    Ok(coinformation_unchecked(dist, parts))
}

pub(crate) fn coinformation_unchecked(dist: &Distribution, parts: &[Partition]) -> f64 {
    let m = parts.len();
    let mut total = 0.0;
    for mask in 1u32..1 << m {
        let joint = Partition::join_all((0..m).filter(|i| mask & (1 << i) != 0).map(|i| &parts[i]))
            .expect("spaces checked by caller");
        let h = entropy_unchecked(dist, &joint);
        if mask.count_ones() % 2 == 1 {
            total += h;
        } else {
            total -= h;
        }
    }
    total
}

/// `I(X;Y)` from entropies.
pub fn mutual_information(dist: &Distribution, x: &Partition, y: &Partition) -> Result<f64> {
    coinformation_numeric(dist, &[x.clone(), y.clone()])
}

/// Whether `set` is the content of some partition; returns that partition.
///
/// Outcomes are merged exactly when their pair atom is missing. The set is
/// representable iff that relation is transitive and the content of the
/// induced partition is the set itself.
pub fn is_representable(set: &AtomSet) -> Option<Partition> {
    let space = set.space();
    let n = space.len();
    let mut class: Vec<usize> = (0..n).collect();
    fn find(class: &mut [usize], mut x: usize) -> usize {
        while class[x] != x {
            class[x] = class[class[x]];
            x = class[x];
        }
        x
    }
    let mut pairs = Vec::new();
    for_each_combination(n, 2, |a| pairs.push(a));
    for &pair in &pairs {
        if !set.contains(pair) {
            let mut m = pair.members();
            let (i, j) = (m.next().unwrap(), m.next().unwrap());
            let (ri, rj) = (find(&mut class, i), find(&mut class, j));
            class[ri] = rj;
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut class, i)).collect();
    let transitive = pairs.iter().all(|&pair| {
        let mut m = pair.members();
        let (i, j) = (m.next().unwrap(), m.next().unwrap());
        roots[i] != roots[j] || !set.contains(pair)
    });
    if !transitive {
        return None;
    }
    let candidate = Partition::new(space.clone(), &roots).ok()?;
    (content(&candidate).enumerate() == *set).then_some(candidate)
}

/// Gács–Körner common information of two variables as an ideal, together
/// with the common coarsening that realizes it.
pub fn gacs_korner(x: &Partition, y: &Partition) -> Result<(Ideal, Partition)> {
    let common = x.common_coarsening(y)?;
    let ideal = content(&common);
    let mi = coinformation_content(&[x.clone(), y.clone()])?;
    if let Some(&g) = ideal.generators().iter().find(|g| g.degree() != 2) {
        return Err(Error::Postcondition(format!(
            "common-information generator {g:?} is not a pair"
        )));
    }
    if let Some(&g) = ideal
        .generators()
        .iter()
        .find(|g| !mi.generators().contains(g))
    {
        return Err(Error::Postcondition(format!(
            "common-information generator {g:?} is not a generator of the mutual information"
        )));
    }
    Ok((ideal, common))
}

/// Variables whose co-information content is exactly `ideal`.
///
/// Each generator with support `S` contributes the two-block partitions
/// `{(Ω∖S) ∪ Q, S∖Q}` over proper nonempty `Q ⊂ S`; the result is every
/// meet that picks one such partition per generator. Duplicate partitions
/// are dropped as the meets are built, which keeps the working set bounded
/// by the number of partitions of the space.
pub fn ideal_to_variables(ideal: &Ideal) -> Result<Vec<Partition>> {
    if ideal.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let space = ideal.space();
    let mut working: Vec<Partition> = Vec::new();
    for (k, &g) in ideal.generators().iter().enumerate() {
        let spreads = spreads(space, g)?;
        if k == 0 {
            working = spreads;
            continue;
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for y in &working {
            for x in &spreads {
                let meet = y.common_refinement(x)?;
                if seen.insert(meet.clone()) {
                    next.push(meet);
                    if next.len() > VARIABLE_CONSTRUCTION_LIMIT {
                        return Err(Error::BlowUp(next.len()));
                    }
                }
            }
        }
        working = next;
    }
    Ok(working)
}

/// The distinct two-block spreads of a generator's support.
fn spreads(space: &OutcomeSpace, g: Atom) -> Result<Vec<Partition>> {
    let full = space.full();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for q in g.subsets() {
        if q == g {
            continue;
        }
        let side = full.without(g).product(q);
        let labels: Vec<bool> = (0..space.len()).map(|i| side.contains_outcome(i)).collect();
        let p = Partition::new(space.clone(), &labels)?;
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Ideals `I = <b>` and `C = ∪_{ω ∉ b} <bω>` with `I ∖ C = {b}`.
pub fn extract_atom(space: &OutcomeSpace, b: Atom) -> Result<(Ideal, Ideal)> {
    space.check_atom(b)?;
    if b.non_entropic() {
        return Err(Error::Degree(b.degree()));
    }
    let above = Ideal::from_raw(space.clone(), vec![b]);
    let higher = (0..space.len())
        .filter(|&w| !b.contains_outcome(w))
        .map(|w| b.with_outcome(w))
        .collect();
    Ok((above, Ideal::from_raw(space.clone(), higher)))
}

/// Number of entropy expressions without multiplicity, `2^(2^n - n - 1)`.
pub fn count_expressions(n: usize) -> Result<BigUint> {
    if n == 0 || n > MAX_OUTCOMES {
        return Err(Error::Capacity {
            requested: n,
            limit: MAX_OUTCOMES,
        });
    }
    Ok(BigUint::from(1u8) << complex_size(n))
}

/// Largest space for which [`enumerate_expression_regions`] runs.
pub const REGION_ENUMERATION_MAX_OUTCOMES: usize = 4;

/// Counts distinct regions built by combining single-atom extractions over
/// every subset of the complex. Each subset is rebuilt from its atoms'
/// `I ∖ C` differences and checked to reproduce itself.
pub fn enumerate_expression_regions(space: &OutcomeSpace) -> Result<usize> {
    let n = space.len();
    if n > REGION_ENUMERATION_MAX_OUTCOMES {
        return Err(Error::Capacity {
            requested: n,
            limit: REGION_ENUMERATION_MAX_OUTCOMES,
        });
    }
    let complex = enumerate_complex(space);
    let extracted: Vec<AtomSet> = complex
        .iter()
        .map(|&b| {
            let (i, c) = extract_atom(space, b)?;
            i.difference(&c)
        })
        .collect::<Result<_>>()?;
    let mut regions: HashSet<Vec<Atom>> = HashSet::new();
    for subset in 0u64..1 << complex.len() {
        let mut region = AtomSet::empty(space.clone());
        for (k, piece) in extracted.iter().enumerate() {
            if subset & (1 << k) != 0 {
                region = region.union(piece)?;
            }
        }
        let wanted: Vec<Atom> = (0..complex.len())
            .filter(|k| subset & (1 << k) != 0)
            .map(|k| complex.atoms()[k])
            .collect();
        if region.atoms() != wanted.as_slice() {
            return Err(Error::Postcondition(format!(
                "extraction of {wanted:?} produced {region:?}"
            )));
        }
        regions.insert(wanted);
    }
    Ok(regions.len())
}
