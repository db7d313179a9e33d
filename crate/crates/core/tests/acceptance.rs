//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use logdec_core::{
    census, classify_gate, coinformation_content, coinformation_numeric, content,
    content_bruteforce, count_expressions, dirichlet_sample, enumerate_expression_regions,
    ideal_to_variables, mu_weights, named_gate, set_partitions, single_generator_sign, Atom,
    Distribution, GateClassification, Ideal, MuTable, OutcomeSpace, ParityClass, Partition,
    SetExpression, Verdict,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const OR_TOLERANCE: f64 = 0.005;
const OR_UNIFORM: f64 = -0.19;
const OR_BIASED: f64 = 0.52;
const OR_RUNTIME: Duration = Duration::from_secs(1);
const CONSISTENCY_TOLERANCE: f64 = 1e-9;
const CONSISTENCY_SYSTEMS: usize = 500;
const RANDOM_PAIRS: usize = 500;
const SIGN_CASES: usize = 10_000;
const VANISHING_WEIGHT: f64 = 1e-9;
const VANISHING_TOLERANCE: f64 = 1e-6;
const INFINITY_WEIGHT: f64 = 1e6;
const INFINITY_TOLERANCE: f64 = 1e-3;
const CENSUS_SAMPLES: u64 = 1000;
const CENSUS_SEED: u64 = 0x5eed;
const WITNESS_MAGNITUDE: f64 = 1e-8;
const ROUND_TRIPS: usize = 100;

fn report(criterion: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {criterion} [{name}]: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_labels(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
    let k = rng.random_range(1..=n) as u32;
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

fn partition(n: usize, labels: &[u32]) -> Partition {
    Partition::new(OutcomeSpace::new(n).unwrap(), labels).unwrap()
}

// Independent oracles: plain sums over explicit label vectors and bit masks.

fn oracle_entropy(weights: &[f64], labels: &[Vec<u32>]) -> f64 {
    let mut mass: HashMap<Vec<u32>, f64> = HashMap::new();
    for (i, &w) in weights.iter().enumerate() {
        let key: Vec<u32> = labels.iter().map(|l| l[i]).collect();
        *mass.entry(key).or_insert(0.0) += w;
    }
    mass.values()
        .filter(|&&q| q > 0.0)
        .map(|&q| -q * q.log2())
        .sum()
}

fn oracle_coinformation(weights: &[f64], vars: &[Vec<u32>]) -> f64 {
    let m = vars.len();
    (1u32..1 << m)
        .map(|mask| {
            let chosen: Vec<Vec<u32>> = (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| vars[i].clone())
                .collect();
            let sign = if mask.count_ones() % 2 == 1 {
                1.0
            } else {
                -1.0
            };
            sign * oracle_entropy(weights, &chosen)
        })
        .sum()
}

fn oracle_mu(weights: &[f64], bits: u32) -> f64 {
    let d = bits.count_ones();
    let mut total = 0.0;
    let mut t = bits;
    while t != 0 {
        let mass: f64 = (0..32)
            .filter(|i| t & (1 << i) != 0)
            .map(|i| weights[i])
            .sum();
        let sign = if (d - t.count_ones()).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        if mass > 0.0 {
            total += sign * mass * mass.log2();
        }
        t = (t - 1) & bits;
    }
    total
}

fn oracle_content(labels: &[u32]) -> Vec<u32> {
    let n = labels.len();
    (0u32..1 << n)
        .filter(|&s| {
            let mut seen = (0..n).filter(|i| s & (1 << i) != 0).map(|i| labels[i]);
            let first = seen.next();
            first.is_some() && seen.any(|l| Some(l) != first)
        })
        .collect()
}

fn bits(atoms: &[Atom]) -> Vec<u32> {
    let mut out: Vec<u32> = atoms.iter().map(|a| a.bits()).collect();
    out.sort_unstable();
    out
}

#[test]
fn criterion_1_or_gate_regression() {
    let start = Instant::now();
    let or = named_gate("or", 2, 2).unwrap();
    let parts = or.partitions();
    let space = or.space().clone();
    let uniform = Distribution::uniform(space.clone());
    let biased = Distribution::new(space, vec![0.45, 0.05, 0.05, 0.45]).unwrap();
    let u = coinformation_numeric(&uniform, &parts).unwrap();
    let b = coinformation_numeric(&biased, &parts).unwrap();
    let ideal = coinformation_content(&parts).unwrap();
    let su = ideal.measure(&uniform).unwrap();
    let sb = ideal.measure(&biased).unwrap();
    let elapsed = start.elapsed();
    let ok = (u - OR_UNIFORM).abs() <= OR_TOLERANCE
        && (b - OR_BIASED).abs() <= OR_TOLERANCE
        && (su - u).abs() < CONSISTENCY_TOLERANCE
        && (sb - b).abs() < CONSISTENCY_TOLERANCE
        && elapsed < OR_RUNTIME;
    report(
        1,
        "OR gate regression",
        ok,
        &format!("uniform {u:.4} bits, biased {b:.4} bits, {elapsed:?}"),
    );
}

#[test]
fn criterion_2_measure_matches_entropy_oracle() {
    let start = Instant::now();
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for k in 0..CONSISTENCY_SYSTEMS {
        let n = r.random_range(2..=8);
        let m = r.random_range(2..=3);
        let space = OutcomeSpace::new(n).unwrap();
        let dist = dirichlet_sample(&space, 2, k as u64);
        let table = MuTable::new(&dist).unwrap();
        let labels: Vec<Vec<u32>> = (0..m).map(|_| random_labels(&mut r, n)).collect();
        let names = ["X", "Y", "Z"];
        let bindings: HashMap<String, Partition> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                (
                    names[i].to_string(),
                    Partition::new(space.clone(), l).unwrap(),
                )
            })
            .collect();
        let w = dist.weights();
        let regions = [
            (SetExpression::var("X"), oracle_entropy(w, &labels[..1])),
            (
                SetExpression::all_of(&names[..2]).unwrap(),
                oracle_coinformation(w, &labels[..2]),
            ),
            (
                SetExpression::all_of(&names[..m]).unwrap(),
                oracle_coinformation(w, &labels),
            ),
        ];
        for (expr, expected) in regions {
            let value = table.sum_set(&expr.evaluate(&bindings).unwrap()).unwrap();
            worst = worst.max((value - expected).abs());
        }
    }
    let elapsed = start.elapsed();
    report(
        2,
        "measure of content expressions equals entropy oracle",
        worst < CONSISTENCY_TOLERANCE && elapsed < Duration::from_secs(60),
        &format!("{CONSISTENCY_SYSTEMS} systems, max error {worst:.2e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_3_structural_laws() {
    let mut violations = 0usize;
    let mut checked_pairs = 0usize;
    // Mutual information ideals are generated in degree two.
    for n in 2..=5 {
        let all = set_partitions(n);
        for a in &all {
            for b in &all {
                let ideal = coinformation_content(&[partition(n, a), partition(n, b)]).unwrap();
                checked_pairs += 1;
                violations += ideal
                    .generators()
                    .iter()
                    .filter(|g| g.degree() != 2)
                    .count();
            }
        }
    }
    let mut r = rng(3);
    for _ in 0..RANDOM_PAIRS {
        let n = r.random_range(6..=8);
        let (a, b) = (random_labels(&mut r, n), random_labels(&mut r, n));
        let ideal = coinformation_content(&[partition(n, &a), partition(n, &b)]).unwrap();
        checked_pairs += 1;
        violations += ideal
            .generators()
            .iter()
            .filter(|g| g.degree() != 2)
            .count();
    }
    // M-variable co-information ideals have generators of degree at most M.
    let mut systems = 0usize;
    for m in [3usize, 4] {
        for _ in 0..RANDOM_PAIRS {
            let n = r.random_range(3..=8);
            let parts: Vec<Partition> = (0..m)
                .map(|_| partition(n, &random_labels(&mut r, n)))
                .collect();
            systems += 1;
            match coinformation_content(&parts) {
                Ok(ideal) => {
                    violations += ideal
                        .generators()
                        .iter()
                        .filter(|g| g.degree() as usize > m)
                        .count()
                }
                Err(_) => violations += 1,
            }
        }
    }
    // Contents from pair generators match the atom-by-atom scan.
    let mut partitions = 0usize;
    for n in 1..=6 {
        for labels in set_partitions(n) {
            let p = partition(n, &labels);
            let built = bits(content(&p).enumerate().atoms());
            let scanned = bits(content_bruteforce(&p).unwrap().atoms());
            partitions += 1;
            if built != scanned || built != oracle_content(&labels) {
                violations += 1;
            }
        }
    }
    report(
        3,
        "structural laws",
        violations == 0,
        &format!(
            "{checked_pairs} pairs, {systems} systems, {partitions} partitions, {violations} violations"
        ),
    );
}

#[test]
fn criterion_4_sign_laws() {
    let mut r = rng(4);
    let mut violations = 0usize;
    for k in 0..SIGN_CASES {
        let n = r.random_range(2..=8);
        let space = OutcomeSpace::new(n).unwrap();
        let dist = dirichlet_sample(&space, 4, k as u64);
        let g = loop {
            let b = r.random_range(0u32..1 << n);
            if b.count_ones() >= 2 {
                break Atom::from_bits(b);
            }
        };
        let expected: i8 = if g.degree() % 2 == 0 { 1 } else { -1 };
        let direct: f64 = (0u32..1 << n)
            .filter(|&b| b & g.bits() == g.bits())
            .map(|b| oracle_mu(dist.weights(), b))
            .sum();
        let ok =
            single_generator_sign(&dist, g) == Ok(expected) && direct * f64::from(expected) > 0.0;
        violations += usize::from(!ok);
    }
    let mut magnitude = 0usize;
    let mut vanishing = 0usize;
    let mut infinity = 0usize;
    for _ in 0..SIGN_CASES {
        let d = r.random_range(3..=8);
        let p: Vec<f64> = (0..d - 1).map(|_| r.random_range(0.01..1.0)).collect();
        let base = mu_weights(&p).unwrap().abs();
        let tau = r.random_range(1e-6..1.0);
        let with = |x: f64| {
            let mut q = p.clone();
            q.push(x);
            mu_weights(&q).unwrap()
        };
        if with(tau).abs() >= base {
            magnitude += 1;
        }
        if with(VANISHING_WEIGHT).abs() >= VANISHING_TOLERANCE {
            vanishing += 1;
        }
        if (with(INFINITY_WEIGHT).abs() - base).abs() >= INFINITY_TOLERANCE {
            infinity += 1;
        }
    }
    let total = violations + magnitude + vanishing + infinity;
    report(
        4,
        "sign laws and limits",
        total == 0,
        &format!(
            "sign {violations}, magnitude {magnitude}, vanishing {vanishing}, infinity {infinity} violations over {SIGN_CASES} cases each"
        ),
    );
}

fn xor_certificate_ok(c: &GateClassification) -> bool {
    let ParityClass::CertifiedOdd(cert) = c.parity.as_ref().unwrap() else {
        return false;
    };
    let terms: Vec<(i64, u32)> = cert.terms().iter().map(|&(k, g)| (k, g.bits())).collect();
    terms
        == [
            (1, 0b0111),
            (1, 0b1011),
            (1, 0b1101),
            (1, 0b1110),
            (-3, 0b1111),
        ]
}

#[test]
fn criterion_5_xor_is_the_only_negative_gate() {
    let start = Instant::now();
    let mut negative = Vec::new();
    let mut classes = 0usize;
    let mut violations = Vec::new();
    for (nx, ny) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
        let all = census(nx, ny, CENSUS_SAMPLES, CENSUS_SEED).unwrap();
        classes += all.len();
        for c in all {
            if c.verdict == Verdict::AlwaysNegative {
                negative.push(c.clone());
            }
            if c.survey.samples < CENSUS_SAMPLES {
                violations.push(format!("{nx}x{ny} {} undersampled", c.table_string()));
            }
            let is_xor = (nx, ny) == (2, 2) && c.canonical == [0, 1, 1, 0];
            if c.is_constant() || is_xor {
                continue;
            }
            let zero = c.ideal.is_empty() && c.survey.zeros == c.survey.samples;
            if !c.has_degree_two_generator() && !zero {
                violations.push(format!("{nx}x{ny} {}", c.table_string()));
            }
        }
    }
    let elapsed = start.elapsed();
    let xor_ok = negative.len() == 1
        && (negative[0].nx, negative[0].ny) == (2, 2)
        && negative[0].canonical == [0, 1, 1, 0]
        && xor_certificate_ok(&negative[0])
        && negative[0].survey.all_negative();
    report(
        5,
        "XOR census",
        xor_ok && violations.is_empty(),
        &format!(
            "{classes} classes, {} AlwaysNegative, violations {violations:?}, {elapsed:?}",
            negative.len()
        ),
    );
}

#[test]
fn criterion_6_mixed_gates_have_witnesses() {
    let mut mixed = 0usize;
    let mut failures = Vec::new();
    for (nx, ny) in [(2, 2), (3, 2)] {
        for c in census(nx, ny, 100, CENSUS_SEED).unwrap() {
            if c.parity != Some(ParityClass::StronglyMixed) {
                continue;
            }
            mixed += 1;
            let gate = logdec_core::build_gate(nx, ny, &c.canonical).unwrap();
            let labels: Vec<Vec<u32>> = gate
                .partitions()
                .iter()
                .map(|p| p.assignment().to_vec())
                .collect();
            let w = c.witnesses.as_ref().unwrap();
            let ok = match (&w.positive, &w.negative) {
                (Some(p), Some(n)) => {
                    let vp = oracle_coinformation(p.distribution.weights(), &labels);
                    let vn = oracle_coinformation(n.distribution.weights(), &labels);
                    vp > WITNESS_MAGNITUDE
                        && vn < -WITNESS_MAGNITUDE
                        && (vp - p.value).abs() < CONSISTENCY_TOLERANCE
                        && (vn - n.value).abs() < CONSISTENCY_TOLERANCE
                }
                _ => false,
            };
            if !ok {
                failures.push(format!("{nx}x{ny} {}", c.table_string()));
            }
        }
    }
    report(
        6,
        "mixed-parity witnesses",
        mixed > 0 && failures.is_empty(),
        &format!("{mixed} mixed gates, failures {failures:?}"),
    );
}

#[test]
fn criterion_7_ideal_variable_round_trip() {
    let start = Instant::now();
    let mut r = rng(7);
    let mut failures = 0usize;
    let mut largest = 0usize;
    for _ in 0..ROUND_TRIPS {
        let n = r.random_range(2..=5);
        let space = OutcomeSpace::new(n).unwrap();
        let count = r.random_range(1..=4);
        let gens: Vec<Atom> = (0..count)
            .map(|_| loop {
                let b = r.random_range(0u32..1 << n);
                if b.count_ones() >= 2 {
                    break Atom::from_bits(b);
                }
            })
            .collect();
        let ideal = Ideal::from_generators(space, gens).unwrap();
        let vars = ideal_to_variables(&ideal).unwrap();
        largest = largest.max(vars.len());
        if coinformation_content(&vars).ok() != Some(ideal) {
            failures += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        7,
        "ideal to variables round trip",
        failures == 0 && elapsed < Duration::from_secs(60),
        &format!(
            "{ROUND_TRIPS} ideals, up to {largest} variables, {failures} failures, {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_8_expression_count() {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 2..=5usize {
        let expected = BigUint::from(1u8) << ((1u64 << n) - n as u64 - 1);
        let formula = count_expressions(n).unwrap();
        ok &= formula == expected;
        if n <= 4 {
            let enumerated = enumerate_expression_regions(&OutcomeSpace::new(n).unwrap()).unwrap();
            ok &= BigUint::from(enumerated) == expected;
            detail.push(format!("n={n}: {enumerated} enumerated"));
        } else {
            detail.push(format!("n={n}: {formula} by formula"));
        }
    }
    report(8, "entropy expression count", ok, &detail.join(", "));
}

#[test]
fn or_gate_classification_is_mixed() {
    let c = classify_gate(
        &named_gate("or", 2, 2).unwrap(),
        CENSUS_SAMPLES,
        CENSUS_SEED,
    )
    .unwrap();
    assert_eq!(c.verdict, Verdict::MixedSign);
    assert!(c.survey.both_signs());
}
