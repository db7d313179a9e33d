//! Monte Carlo sign surveys over the probability simplex.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Exp1};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::measure::{MuTable, MU_TABLE_MAX_OUTCOMES, TOLERANCE};
use crate::space::{Distribution, OutcomeSpace};

/// The `index`-th point of a seeded stream of uniform draws from the simplex
/// (symmetric Dirichlet with unit concentration).
///
/// Each index owns its own generator stream, so draws do not depend on how
/// work is split across threads.
pub fn dirichlet_sample(space: &OutcomeSpace, seed: u64, index: u64) -> Distribution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut weights: Vec<f64> = (0..space.len())
        .map(|_| {
            let x: f64 = Exp1.sample(&mut rng);
            x.max(f64::MIN_POSITIVE)
        })
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Distribution::new(space.clone(), weights).expect("positive finite weights")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extreme {
    pub value: f64,
    pub sample: u64,
    pub distribution: Distribution,
}

/// Signs of a quantity over random distributions; values within
/// [`TOLERANCE`] of zero count as zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SignSurvey {
    pub samples: u64,
    pub positives: u64,
    pub negatives: u64,
    pub zeros: u64,
    pub min: Extreme,
    pub max: Extreme,
    pub seed: u64,
}

impl SignSurvey {
    pub fn all_positive(&self) -> bool {
        self.positives == self.samples
    }

    pub fn all_negative(&self) -> bool {
        self.negatives == self.samples
    }

    pub fn both_signs(&self) -> bool {
        self.positives > 0 && self.negatives > 0
    }
}

/// Samples `f` on `samples` draws from the simplex over `space`.
pub fn sign_survey_with<F>(
    space: &OutcomeSpace,
    samples: u64,
    seed: u64,
    f: F,
) -> Result<SignSurvey>
where
    F: Fn(&Distribution) -> Result<f64> + Sync,
{
    if samples == 0 {
        return Err(Error::TooFew {
            expected: 1,
            found: 0,
        });
    }
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| f(&dirichlet_sample(space, seed, i)))
        .collect::<Result<_>>()?;
    let (mut positives, mut negatives, mut zeros) = (0, 0, 0);
    let (mut lo, mut hi) = (0usize, 0usize);
    for (i, &v) in values.iter().enumerate() {
        if v > TOLERANCE {
            positives += 1;
        } else if v < -TOLERANCE {
            negatives += 1;
        } else {
            zeros += 1;
        }
        if v < values[lo] {
            lo = i;
        }
        if v > values[hi] {
            hi = i;
        }
    }
    let extreme = |i: usize| Extreme {
        value: values[i],
        sample: i as u64,
        distribution: dirichlet_sample(space, seed, i as u64),
    };
    Ok(SignSurvey {
        samples,
        positives,
        negatives,
        zeros,
        min: extreme(lo),
        max: extreme(hi),
        seed,
    })
}

/// Survey of `μ(ideal)`.
pub fn sign_survey(ideal: &Ideal, samples: u64, seed: u64) -> Result<SignSurvey> {
    let space = ideal.space();
    if space.len() <= MU_TABLE_MAX_OUTCOMES {
        let atoms = ideal.enumerate();
        sign_survey_with(space, samples, seed, |d| MuTable::new(d)?.sum_set(&atoms))
    } else {
        sign_survey_with(space, samples, seed, |d| ideal.measure(d))
    }
}
