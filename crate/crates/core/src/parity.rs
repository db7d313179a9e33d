//! Parity classification of ideals, sign certificates and witness
//! distributions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::atom::Atom;
use crate::error::{Error, Result};
use crate::ideal::{minimalize, Ideal, ProfileKind};
use crate::measure::{MuTable, TOLERANCE};
use crate::space::Distribution;

/// Default number of expansion nodes explored by [`classify_parity`].
pub const DEFAULT_BUDGET: usize = 10_000;

/// Floor weights tried, in order, when building witnesses.
pub const DEFAULT_EPSILON_SCHEDULE: [f64; 7] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];

/// Smallest magnitude a witness value must exceed.
pub const WITNESS_MARGIN: f64 = 10.0 * TOLERANCE;

/// `μ(J) = Σ c · μ(<g>)` over single-generator ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    terms: Vec<(i64, Atom)>,
}

impl Certificate {
    /// Nonzero terms `(coefficient, generator)` in atom order.
    pub fn terms(&self) -> &[(i64, Atom)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The sign every term `c · μ(<g>)` is guaranteed to have, if they agree.
    pub fn uniform_sign(&self) -> Option<i8> {
        let mut signs = self
            .terms
            .iter()
            .map(|&(c, g)| c.signum() as i8 * g.parity_sign());
        let first = signs.next()?;
        signs.all(|s| s == first).then_some(first)
    }

    /// Evaluates the right-hand side, one full-space ideal per leaf.
    pub fn evaluate(&self, table: &MuTable) -> f64 {
        let space = table.space();
        self.terms
            .iter()
            .map(|&(c, g)| c as f64 * Ideal::from_raw(space.clone(), vec![g]).measure_with(table))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityClass {
    CertifiedEven(Certificate),
    CertifiedOdd(Certificate),
    /// Minimal generators of both parities.
    StronglyMixed,
    /// Pure parity without a sign-uniform expansion. The expansion is kept
    /// unless the budget ran out.
    Undetermined {
        expansion: Option<Certificate>,
    },
}

impl ParityClass {
    pub fn tag(&self) -> &'static str {
        match self {
            ParityClass::CertifiedEven(_) => "CertifiedEven",
            ParityClass::CertifiedOdd(_) => "CertifiedOdd",
            ParityClass::StronglyMixed => "StronglyMixed",
            ParityClass::Undetermined { .. } => "Undetermined",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ParityClass::CertifiedEven(c) | ParityClass::CertifiedOdd(c) => Some(c),
            _ => None,
        }
    }

    /// `+1` for certified even, `-1` for certified odd.
    pub fn parity(&self) -> Option<i8> {
        match self {
            ParityClass::CertifiedEven(_) => Some(1),
            ParityClass::CertifiedOdd(_) => Some(-1),
            _ => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.parity().is_some()
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

type Coefficients = Rc<BTreeMap<Atom, i64>>;

struct Expander {
    n: usize,
    budget: usize,
    nodes: usize,
    memo: HashMap<Vec<Atom>, Coefficients>,
}

impl Expander {
    /// `μ<g1..gk> = μ<g1..gk-1> + μ<gk> - μ<g1gk, ..., gk-1gk>`, recursively.
    fn expand(&mut self, gens: &[Atom]) -> Option<Coefficients> {
        if let Some(c) = self.memo.get(gens) {
            return Some(c.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let mut out = BTreeMap::new();
        if let Some((&last, rest)) = gens.split_last() {
            let head = self.expand(rest)?;
            let meets = minimalize(self.n, rest.iter().map(|g| g.product(last)).collect());
            let tail = self.expand(&meets)?;
            for (&g, &c) in head.iter() {
                *out.entry(g).or_insert(0) += c;
            }
            *out.entry(last).or_insert(0) += 1;
            for (&g, &c) in tail.iter() {
                *out.entry(g).or_insert(0) -= c;
            }
            out.retain(|_, c| *c != 0);
        }
        let out = Rc::new(out);
        self.memo.insert(gens.to_vec(), out.clone());
        Some(out)
    }
}

/// Expresses `μ(ideal)` as a signed sum over single-generator ideals, or
/// `None` once more than `budget` distinct subproblems are needed.
///
/// Like terms are combined, so the result does not depend on the order in
/// which generators are peeled.
pub fn expand_ideal(ideal: &Ideal, budget: usize) -> Option<Certificate> {
    let mut ex = Expander {
        n: ideal.space().len(),
        budget,
        nodes: 0,
        memo: HashMap::new(),
    };
    let coefs = ex.expand(ideal.generators())?;
    Some(Certificate {
        terms: coefs.iter().map(|(&g, &c)| (c, g)).collect(),
    })
}

/// Classifies an ideal by the degrees of its minimal generators, certifying
/// a fixed sign when every leaf of its expansion agrees.
pub fn classify_parity(ideal: &Ideal, budget: usize) -> Result<ParityClass> {
    match ideal.degree_profile().kind() {
        ProfileKind::Empty => return Err(Error::EmptyIdeal),
        ProfileKind::Mixed => return Ok(ParityClass::StronglyMixed),
        ProfileKind::PureEven | ProfileKind::PureOdd => {}
    }
    let Some(cert) = expand_ideal(ideal, budget) else {
        return Ok(ParityClass::Undetermined { expansion: None });
    };
    Ok(match cert.uniform_sign() {
        Some(1) => ParityClass::CertifiedEven(cert),
        Some(_) => ParityClass::CertifiedOdd(cert),
        None => ParityClass::Undetermined {
            expansion: Some(cert),
        },
    })
}

/// Sign of `μ(<g>)` over the whole space, checked against `(-1)^deg(g)`.
pub fn single_generator_sign(dist: &Distribution, g: Atom) -> Result<i8> {
    let space = dist.space();
    space.check_atom(g)?;
    if !g.is_entropic() {
        return Err(Error::Degree(g.degree()));
    }
    if g.members().any(|i| dist.weight(i) <= 0.0) {
        return Err(Error::UndefinedSign);
    }
    let value = Ideal::from_raw(space.clone(), vec![g]).measure(dist)?;
    let expected = g.parity_sign();
    let sign = if value > 0.0 {
        1
    } else if value < 0.0 {
        -1
    } else {
        0
    };
    if sign != expected {
        return Err(Error::SignLaw { expected, value });
    }
    Ok(sign)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// Generator whose support carries the mass.
    pub generator: Atom,
    pub epsilon: f64,
    pub distribution: Distribution,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Witnesses {
    pub positive: Option<Witness>,
    pub negative: Option<Witness>,
}

/// Distributions on which `μ(ideal)` is positive (from an even generator)
/// and negative (from an odd one).
///
/// Mass is spread uniformly over a generator's members with weight `ε` on
/// every other outcome. A side is left empty when no generator of that
/// parity exists; it is an error when some exist but none works.
pub fn witness_distributions(ideal: &Ideal, schedule: &[f64]) -> Result<Witnesses> {
    if ideal.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let mut out = Witnesses::default();
    for (sign, slot) in [(1i8, &mut out.positive), (-1, &mut out.negative)] {
        let candidates: Vec<Atom> = ideal
            .generators()
            .iter()
            .copied()
            .filter(|g| g.parity_sign() == sign)
            .collect();
        if candidates.is_empty() {
            continue;
        }
        *slot = Some(find_witness(ideal, &candidates, sign, schedule)?);
    }
    Ok(out)
}

fn find_witness(ideal: &Ideal, candidates: &[Atom], sign: i8, schedule: &[f64]) -> Result<Witness> {
    let space = ideal.space();
    for &g in candidates {
        for &eps in schedule {
            let weights = (0..space.len())
                .map(|i| if g.contains_outcome(i) { 1.0 } else { eps })
                .collect();
            let dist = Distribution::new(space.clone(), weights)?.normalized()?;
            let value = ideal.measure(&dist)?;
            if value * f64::from(sign) > WITNESS_MARGIN {
                return Ok(Witness {
                    generator: g,
                    epsilon: eps,
                    distribution: dist,
                    value,
                });
            }
        }
    }
    Err(Error::NoWitness(space.format_atom(candidates[0])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::OutcomeSpace;

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        let space = OutcomeSpace::new(n).unwrap();
        let atoms: Vec<Atom> = gens
            .iter()
            .map(|g| Atom::from_indices(g.bytes().map(|b| (b - b'1') as usize)))
            .collect();
        Ideal::from_generators(space, atoms).unwrap()
    }

    fn terms(c: &Certificate, space: &OutcomeSpace) -> Vec<(i64, String)> {
        c.terms()
            .iter()
            .map(|&(k, g)| (k, space.format_atom(g)))
            .collect()
    }

    #[test]
    fn even_pair_is_certified() {
        let i = ideal(3, &["12", "23"]);
        let class = classify_parity(&i, DEFAULT_BUDGET).unwrap();
        assert_eq!(class.parity(), Some(1));
        let t = terms(class.certificate().unwrap(), i.space());
        assert_eq!(t, [(1, "12".into()), (1, "23".into()), (-1, "123".into())]);
    }

    #[test]
    fn xor_ideal_is_certified_odd() {
        let i = ideal(4, &["123", "124", "134", "234"]);
        let class = classify_parity(&i, DEFAULT_BUDGET).unwrap();
        assert_eq!(class.tag(), "CertifiedOdd");
        let t = terms(class.certificate().unwrap(), i.space());
        assert_eq!(
            t,
            [
                (1, "123".into()),
                (1, "124".into()),
                (1, "134".into()),
                (1, "234".into()),
                (-3, "1234".into())
            ]
        );
    }

    #[test]
    fn mixed_and_undetermined() {
        assert_eq!(
            classify_parity(&ideal(4, &["14", "123"]), DEFAULT_BUDGET).unwrap(),
            ParityClass::StronglyMixed
        );
        let mi = classify_parity(&ideal(4, &["14", "23"]), DEFAULT_BUDGET).unwrap();
        assert!(matches!(
            mi,
            ParityClass::Undetermined { expansion: Some(_) }
        ));
        let starved = classify_parity(&ideal(4, &["12", "23", "34"]), 1).unwrap();
        assert_eq!(starved, ParityClass::Undetermined { expansion: None });
        let empty = Ideal::empty(OutcomeSpace::new(3).unwrap());
        assert_eq!(classify_parity(&empty, 10), Err(Error::EmptyIdeal));
    }

    #[test]
    fn certificate_matches_measure() {
        let i = ideal(4, &["123", "124", "134", "234"]);
        let cert = expand_ideal(&i, DEFAULT_BUDGET).unwrap();
        let dist = Distribution::new(i.space().clone(), vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let table = MuTable::new(&dist).unwrap();
        assert!((cert.evaluate(&table) - i.measure(&dist).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn generator_signs() {
        let s = OutcomeSpace::new(4).unwrap();
        let d = Distribution::new(s.clone(), vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(
            single_generator_sign(&d, Atom::from_indices([0, 1])).unwrap(),
            1
        );
        assert_eq!(
            single_generator_sign(&d, Atom::from_indices([0, 1, 2])).unwrap(),
            -1
        );
        let top = Atom::full(4);
        assert_eq!(single_generator_sign(&d, top).unwrap(), 1);
        let alone = Ideal::from_raw(s.clone(), vec![top]).measure(&d).unwrap();
        assert!((alone - crate::measure::mu_atom(&d, top).unwrap()).abs() < 1e-15);
        let z = Distribution::new(s, vec![0.0, 0.5, 0.25, 0.25]).unwrap();
        assert_eq!(
            single_generator_sign(&z, Atom::from_indices([0, 1])),
            Err(Error::UndefinedSign)
        );
    }

    #[test]
    fn witnesses() {
        let or = ideal(4, &["14", "123"]);
        let w = witness_distributions(&or, &DEFAULT_EPSILON_SCHEDULE).unwrap();
        let pos = w.positive.unwrap();
        let neg = w.negative.unwrap();
        assert!(pos.value > WITNESS_MARGIN && neg.value < -WITNESS_MARGIN);
        assert_eq!(or.space().format_atom(pos.generator), "14");
        assert_eq!(or.space().format_atom(neg.generator), "123");
        let even = witness_distributions(&ideal(3, &["12"]), &DEFAULT_EPSILON_SCHEDULE).unwrap();
        assert!(even.positive.is_some() && even.negative.is_none());
    }
}
