//! Finite outcome spaces and (possibly unnormalized) weightings over them.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::atom::Atom;
use crate::error::{Error, Result};

/// Largest supported outcome space. Atoms are stored in a `u32` and the full
/// complex at this size holds about 16M atoms.
pub const MAX_OUTCOMES: usize = 24;

/// Tolerance on total mass for a distribution to count as normalized.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// A finite set of labelled outcomes, indexed densely as `0..n`.
///
/// Cloning is cheap; labels are shared.
#[derive(Clone)]
pub struct OutcomeSpace {
    labels: Arc<[String]>,
}

impl OutcomeSpace {
    /// Space with labels `"1"..="n"`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_labels((1..=n).map(|i| i.to_string()))
    }

    pub fn with_labels<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        if labels.len() > MAX_OUTCOMES {
            return Err(Error::Capacity {
                requested: labels.len(),
                limit: MAX_OUTCOMES,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; spaces hold at least one outcome.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The atom holding every outcome.
    pub fn full(&self) -> Atom {
        Atom::full(self.len())
    }

    /// Checks that `atom` only references outcomes of this space.
    pub fn check_atom(&self, atom: Atom) -> Result<()> {
        let n = self.len();
        match atom.members().find(|&i| i >= n) {
            Some(index) => Err(Error::OutOfRange { index, n }),
            None => Ok(()),
        }
    }

    /// Renders an atom the way it is usually written: `123` when every label
    /// is a single character, `{a,b,c}` otherwise.
    pub fn format_atom(&self, atom: Atom) -> String {
        let compact = self.labels.iter().all(|l| l.chars().count() == 1);
        let parts: Vec<&str> = atom.members().map(|i| self.label(i)).collect();
        if compact {
            parts.concat()
        } else {
            format!("{{{}}}", parts.join(","))
        }
    }

    pub(crate) fn ensure_same(&self, other: &OutcomeSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

impl PartialEq for OutcomeSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for OutcomeSpace {}

impl Hash for OutcomeSpace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.labels().hash(state);
    }
}

impl fmt::Debug for OutcomeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// Nonnegative weights on the outcomes of a space.
///
/// Weights need not sum to one: the analytic properties of the measure are
/// stated over all positive reals, so unnormalized weightings are legal. Use
/// [`Distribution::is_normalized`] where a probability distribution is
/// required.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    space: OutcomeSpace,
    weights: Vec<f64>,
}

impl Distribution {
    pub fn new(space: OutcomeSpace, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                found: weights.len(),
            });
        }
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
        {
            return Err(Error::Domain { index, value });
        }
        Ok(Self { space, weights })
    }

    pub fn uniform(space: OutcomeSpace) -> Self {
        let n = space.len();
        Self {
            weights: vec![1.0 / n as f64; n],
            space,
        }
    }

    /// Rescales to total mass one. Fails on an all-zero weighting.
    pub fn normalized(&self) -> Result<Self> {
        let total = self.total();
        if total <= 0.0 {
            return Err(Error::Unnormalized(total));
        }
        Ok(Self {
            space: self.space.clone(),
            weights: self.weights.iter().map(|w| w / total).collect(),
        })
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> f64 {
        self.weights[index]
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.total() - 1.0).abs() <= NORMALIZATION_TOLERANCE
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::Unnormalized(self.total()))
        }
    }

    /// Total weight of the members of `atom`.
    pub fn mass(&self, atom: Atom) -> f64 {
        atom.members().map(|i| self.weights[i]).sum()
    }

    /// Copy with a single weight replaced.
    pub fn with_weight(&self, index: usize, value: f64) -> Result<Self> {
        let mut weights = self.weights.clone();
        if index >= weights.len() {
            return Err(Error::OutOfRange {
                index,
                n: weights.len(),
            });
        }
        weights[index] = value;
        Self::new(self.space.clone(), weights)
    }
}
