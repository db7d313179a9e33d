//! Deterministic two-input gates `Z = f(X, Y)` and the census of their
//! co-information signs.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;

use crate::content::{coinformation_content, coinformation_unchecked};
use crate::error::{Error, Result};
use crate::ideal::{DegreeProfile, Ideal};
use crate::parity::{
    classify_parity, witness_distributions, ParityClass, Witnesses, DEFAULT_BUDGET,
    DEFAULT_EPSILON_SCHEDULE,
};
use crate::partition::{set_partitions, Partition};
use crate::space::OutcomeSpace;
use crate::survey::{sign_survey_with, SignSurvey};

/// Largest joint space handled by [`classify_gate`].
pub const GATE_MAX_CELLS: usize = 12;

/// Largest input alphabet accepted by [`census`].
pub const CENSUS_MAX_SIDE: usize = 3;

/// Joint space of `(x, y)` cells in row-major order with the partitions
/// induced by `X`, `Y` and `Z = f(X, Y)`.
#[derive(Clone, PartialEq, Eq)]
pub struct GateSystem {
    nx: usize,
    ny: usize,
    table: Vec<u32>,
    space: OutcomeSpace,
    x: Partition,
    y: Partition,
    z: Partition,
}

impl GateSystem {
    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Output symbol of every cell, relabeled by first appearance.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn x(&self) -> &Partition {
        &self.x
    }

    pub fn y(&self) -> &Partition {
        &self.y
    }

    pub fn z(&self) -> &Partition {
        &self.z
    }

    pub fn partitions(&self) -> [Partition; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn output_count(&self) -> usize {
        self.z.block_count()
    }

    pub fn is_constant(&self) -> bool {
        self.output_count() == 1
    }

    /// Outcome index of the cell `(x, y)`.
    pub fn cell(&self, x: usize, y: usize) -> usize {
        x * self.ny + y
    }

    /// `nx! · ny! · k!` for `k` distinct outputs.
    pub fn group_order(&self) -> u64 {
        factorial(self.nx) * factorial(self.ny) * factorial(self.output_count())
    }
}

impl fmt::Debug for GateSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GateSystem({}x{} {})",
            self.nx,
            self.ny,
            format_table(self.ny, &self.table)
        )
    }
}

/// Rows separated by `/`, e.g. `01/10` for XOR.
pub fn format_table(ny: usize, table: &[u32]) -> String {
    table
        .chunks(ny.max(1))
        .map(|row| {
            row.iter()
                .map(|v| {
                    char::from_digit(*v, 36).map_or_else(|| format!("[{v}]"), |c| c.to_string())
                })
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("/")
}

/// Builds the gate with truth table `table[x * ny + y]`.
pub fn build_gate<T: Hash + Eq>(nx: usize, ny: usize, table: &[T]) -> Result<GateSystem> {
    if nx == 0 || ny == 0 {
        return Err(Error::GateShape { nx, ny });
    }
    let cells = nx * ny;
    if table.len() != cells {
        return Err(Error::LengthMismatch {
            expected: cells,
            found: table.len(),
        });
    }
    let space = OutcomeSpace::new(cells)?;
    let rows: Vec<usize> = (0..cells).map(|i| i / ny).collect();
    let cols: Vec<usize> = (0..cells).map(|i| i % ny).collect();
    let x = Partition::new(space.clone(), &rows)?;
    let y = Partition::new(space.clone(), &cols)?;
    let z = Partition::new(space.clone(), table)?;
    Ok(GateSystem {
        nx,
        ny,
        table: z.assignment().to_vec(),
        space,
        x,
        y,
        z,
    })
}

/// A gate from a name: `xor`, `xnor`, `or`, `and`, `copy` (`Z = X`),
/// `add` (sum modulo the larger alphabet), `sum` (integer sum) or
/// `constant`.
pub fn named_gate(name: &str, nx: usize, ny: usize) -> Result<GateSystem> {
    let k = nx.max(ny);
    let f: Box<dyn Fn(usize, usize) -> usize> = match name {
        "xor" => Box::new(|x, y| (x + y) % 2),
        "xnor" => Box::new(|x, y| (x + y + 1) % 2),
        "or" => Box::new(|x, y| x.max(y)),
        "and" => Box::new(|x, y| x.min(y)),
        "copy" => Box::new(|x, _| x),
        "add" => Box::new(move |x, y| (x + y) % k),
        "sum" => Box::new(|x, y| x + y),
        "constant" => Box::new(|_, _| 0),
        other => return Err(Error::UnknownGate(other.to_string())),
    };
    let table: Vec<usize> = (0..nx * ny)
        .map(|i| f(i / ny.max(1), i % ny.max(1)))
        .collect();
    build_gate(nx, ny, &table)
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..k).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

fn relabel(table: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut map: Vec<Option<u32>> = Vec::new();
    let mut next = 0;
    table
        .map(|v| {
            let v = v as usize;
            if map.len() <= v {
                map.resize(v + 1, None);
            }
            *map[v].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

fn permuted<'a>(
    gate: &'a GateSystem,
    rows: &'a [usize],
    cols: &'a [usize],
) -> impl Iterator<Item = u32> + 'a {
    let ny = gate.ny;
    (0..gate.nx * ny).map(move |i| gate.table[rows[i / ny] * ny + cols[i % ny]])
}

/// Lexicographically least table over row permutations, column
/// permutations and output relabelings.
///
/// Inputs are never transposed, so `nx x ny` and `ny x nx` gates stay
/// distinct classes.
pub fn canonicalize(gate: &GateSystem) -> Vec<u32> {
    let rows = permutations(gate.nx);
    let cols = permutations(gate.ny);
    let mut best: Option<Vec<u32>> = None;
    for r in &rows {
        for c in &cols {
            let t = relabel(permuted(gate, r, c));
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
    }
    best.expect("at least one permutation")
}

/// Every raw table (outputs `0..k`) reachable from the gate under the
/// symmetry group.
pub fn orbit(gate: &GateSystem) -> BTreeSet<Vec<u32>> {
    let rows = permutations(gate.nx);
    let cols = permutations(gate.ny);
    let outs = permutations(gate.output_count());
    let mut out = BTreeSet::new();
    for r in &rows {
        for c in &cols {
            let base: Vec<u32> = permuted(gate, r, c).collect();
            for o in &outs {
                out.insert(base.iter().map(|&v| o[v as usize] as u32).collect());
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    AlwaysNegative,
    AlwaysNonnegativeOrZero,
    MixedSign,
    ZeroCoinformation,
    /// Neither structure nor sampling settles the sign.
    Unresolved,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::AlwaysNegative => "AlwaysNegative",
            Verdict::AlwaysNonnegativeOrZero => "AlwaysNonnegativeOrZero",
            Verdict::MixedSign => "MixedSign",
            Verdict::ZeroCoinformation => "ZeroCoinformation",
            Verdict::Unresolved => "Unresolved",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct GateClassification {
    pub nx: usize,
    pub ny: usize,
    pub canonical: Vec<u32>,
    pub ideal: Ideal,
    pub profile: DegreeProfile,
    /// `None` when the triple ideal is empty.
    pub parity: Option<ParityClass>,
    pub survey: SignSurvey,
    pub witnesses: Option<Witnesses>,
    pub verdict: Verdict,
}

impl GateClassification {
    pub fn has_degree_two_generator(&self) -> bool {
        self.profile.degrees.contains(&2)
    }

    pub fn is_constant(&self) -> bool {
        self.canonical.iter().all(|&v| v == 0)
    }

    pub fn table_string(&self) -> String {
        format_table(self.ny, &self.canonical)
    }
}

/// Structural and sampled sign of the co-information `I(X;Y;Z)`.
///
/// `AlwaysNegative` needs an odd certificate and a survey with no positive
/// and at least one negative value. `MixedSign` needs both witnesses.
pub fn classify_gate(gate: &GateSystem, samples: u64, seed: u64) -> Result<GateClassification> {
    let cells = gate.space.len();
    if cells > GATE_MAX_CELLS {
        return Err(Error::Capacity {
            requested: cells,
            limit: GATE_MAX_CELLS,
        });
    }
    let parts = gate.partitions();
    let ideal = coinformation_content(&parts)?;
    let profile = ideal.degree_profile();
    let survey = sign_survey_with(&gate.space, samples, seed, |d| {
        Ok(coinformation_unchecked(d, &parts))
    })?;
    let (parity, witnesses, verdict) = if ideal.is_empty() {
        (None, None, Verdict::ZeroCoinformation)
    } else {
        let parity = classify_parity(&ideal, DEFAULT_BUDGET)?;
        let mut witnesses = None;
        let verdict = match &parity {
            ParityClass::CertifiedOdd(_) => {
                if survey.positives > 0 {
                    return Err(Error::Postcondition(format!(
                        "odd certificate contradicted by a positive sample ({})",
                        survey.max.value
                    )));
                }
                if survey.negatives > 0 {
                    Verdict::AlwaysNegative
                } else {
                    Verdict::Unresolved
                }
            }
            ParityClass::CertifiedEven(_) => {
                if survey.negatives > 0 {
                    return Err(Error::Postcondition(format!(
                        "even certificate contradicted by a negative sample ({})",
                        survey.min.value
                    )));
                }
                Verdict::AlwaysNonnegativeOrZero
            }
            ParityClass::StronglyMixed => {
                let w = witness_distributions(&ideal, &DEFAULT_EPSILON_SCHEDULE)?;
                let both = w.positive.is_some() && w.negative.is_some();
                witnesses = Some(w);
                if both {
                    Verdict::MixedSign
                } else {
                    Verdict::Unresolved
                }
            }
            ParityClass::Undetermined { .. } => {
                if survey.both_signs() {
                    Verdict::MixedSign
                } else if profile.kind() == crate::ideal::ProfileKind::PureEven
                    && survey.negatives == 0
                {
                    Verdict::AlwaysNonnegativeOrZero
                } else {
                    Verdict::Unresolved
                }
            }
        };
        (Some(parity), witnesses, verdict)
    };
    Ok(GateClassification {
        nx: gate.nx,
        ny: gate.ny,
        canonical: canonicalize(gate),
        ideal,
        profile,
        parity,
        survey,
        witnesses,
        verdict,
    })
}

/// Canonical tables of all `nx x ny` gates, in increasing order.
pub fn canonical_gates(nx: usize, ny: usize) -> Result<Vec<Vec<u32>>> {
    if nx == 0 || ny == 0 {
        return Err(Error::GateShape { nx, ny });
    }
    let side = nx.max(ny);
    if side > CENSUS_MAX_SIDE {
        return Err(Error::Capacity {
            requested: side,
            limit: CENSUS_MAX_SIDE,
        });
    }
    let classes: BTreeSet<Vec<u32>> = set_partitions(nx * ny)
        .into_par_iter()
        .map(|t| canonicalize(&build_gate(nx, ny, &t).expect("valid shape")))
        .collect();
    Ok(classes.into_iter().collect())
}

/// Classifies every gate of shape exactly `nx x ny` up to symmetry.
///
/// Every class is surveyed with the same seed, so results are reproducible
/// regardless of thread count.
pub fn census(nx: usize, ny: usize, samples: u64, seed: u64) -> Result<Vec<GateClassification>> {
    canonical_gates(nx, ny)?
        .into_par_iter()
        .map(|t| classify_gate(&build_gate(nx, ny, &t)?, samples, seed))
        .collect()
}
