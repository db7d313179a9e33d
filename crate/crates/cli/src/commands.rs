use logdec_core::{
    census, classify_parity, coinformation_content, coinformation_numeric, content, entropy,
    enumerate_complex, witness_distributions, Distribution, Ideal, MuTable, ParityClass, Partition,
    ProfileKind, Verdict, Witness, DEFAULT_BUDGET, DEFAULT_EPSILON_SCHEDULE,
};
use serde_json::{json, Value};

use crate::report::{num, table};
use crate::system::System;
use crate::CliError;

/// Structured results and their human rendering.
pub struct Output {
    pub results: Value,
    pub text: String,
}

pub fn decompose(system: &System, variable: Option<&str>) -> Result<Output, CliError> {
    let dist = system.distribution()?;
    let mu = MuTable::new(dist)?;
    let space = &system.space;
    let atoms = match variable {
        Some(name) => {
            let (_, part) = system.select(&[name.to_string()])?.remove(0);
            content(&part).enumerate()
        }
        None => enumerate_complex(space),
    };
    let atom_rows: Vec<Value> = atoms
        .iter()
        .map(|&a| json!({"atom": space.format_atom(a), "degree": a.degree(), "mu": mu.get(a)}))
        .collect();
    let mut text = table(
        &["atom", "degree", "mu"],
        &atoms
            .iter()
            .map(|&a| vec![space.format_atom(a), a.degree().to_string(), num(mu.get(a))])
            .collect::<Vec<_>>(),
    );

    let mut totals = Vec::new();
    let mut total_rows = Vec::new();
    for (name, part) in system.select(&[])? {
        let measure = mu.sum_set(&content(&part).enumerate())?;
        let h = entropy(dist, &part)?;
        totals.push(json!({"variable": name, "content_measure": measure, "entropy": h}));
        total_rows.push(vec![name, num(measure), num(h)]);
    }
    let mut results = json!({"atoms": atom_rows, "variables": totals});
    if let Some(name) = variable {
        results["selected"] = json!(name);
    }
    if !total_rows.is_empty() {
        text.push('\n');
        text.push_str(&table(
            &["variable", "content measure", "entropy"],
            &total_rows,
        ));
    }
    if system.variables.len() >= 2 {
        let parts: Vec<Partition> = system.variables.values().cloned().collect();
        let shared = coinformation_content(&parts)?.measure_with(&mu);
        results["shared_region"] = json!({
            "variables": system.variables.keys().collect::<Vec<_>>(),
            "measure": shared,
        });
        text.push_str(&format!(
            "\nshared region of all variables: {}\n",
            num(shared)
        ));
    }
    Ok(Output { results, text })
}

fn structure(ideal: &Ideal) -> Result<(Value, String), CliError> {
    let profile = ideal.degree_profile();
    let kind = match profile.kind() {
        ProfileKind::Empty => "empty",
        ProfileKind::PureEven => "pure even",
        ProfileKind::PureOdd => "pure odd",
        ProfileKind::Mixed => "mixed",
    };
    let generators = ideal.format_generators();
    let mut value = json!({
        "generators": generators,
        "degrees": profile.degrees,
        "profile": kind,
    });
    let mut text = format!(
        "generators: <{}>\ndegrees: {:?} ({kind})\n",
        generators.join(", "),
        profile.degrees
    );
    if ideal.is_empty() {
        value["parity"] = Value::Null;
        return Ok((value, text));
    }
    let class = classify_parity(ideal, DEFAULT_BUDGET)?;
    value["parity"] = json!(class.tag());
    text.push_str(&format!("parity: {}\n", class.tag()));
    if let Some(cert) = class.certificate() {
        let terms: Vec<Value> = cert
            .terms()
            .iter()
            .map(|&(c, g)| json!({"coefficient": c, "generator": ideal.space().format_atom(g)}))
            .collect();
        let written: Vec<String> = cert
            .terms()
            .iter()
            .map(|&(c, g)| format!("{c:+} mu<{}>", ideal.space().format_atom(g)))
            .collect();
        text.push_str(&format!("certificate: {}\n", written.join(" ")));
        value["certificate"] = json!(terms);
    }
    Ok((value, text))
}

fn selected(system: &System, names: &[String]) -> Result<(Vec<String>, Vec<Partition>), CliError> {
    let chosen = system.select(names)?;
    if chosen.len() < 2 {
        return Err(CliError::parse(format!(
            "co-information needs at least two variables, got {}",
            chosen.len()
        )));
    }
    Ok(chosen.into_iter().unzip())
}

pub fn coinfo(system: &System, names: &[String], with_structure: bool) -> Result<Output, CliError> {
    let (names, parts) = selected(system, names)?;
    let value = match (&system.dist, with_structure) {
        (Some(d), _) => Some(coinformation_numeric(d, &parts)?),
        (None, true) => None,
        (None, false) => return Err(system.distribution().unwrap_err()),
    };
    let mut results = json!({"variables": names, "coinformation": value});
    let mut text = match value {
        Some(v) => format!("I({}) = {} bits\n", names.join(";"), num(v)),
        None => format!("I({}): no distribution given\n", names.join(";")),
    };
    if with_structure {
        let (s, t) = structure(&coinformation_content(&parts)?)?;
        results["structure"] = s;
        text.push_str(&t);
    }
    Ok(Output { results, text })
}

pub fn run_census(nx: usize, ny: usize, samples: u64, seed: u64) -> Result<Output, CliError> {
    let classes = census(nx, ny, samples, seed)?;
    let negative = classes
        .iter()
        .filter(|c| c.verdict == Verdict::AlwaysNegative)
        .count();
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for c in &classes {
        let parity = c.parity.as_ref().map_or("none", ParityClass::tag);
        let degrees: Vec<String> = c.profile.degrees.iter().map(u32::to_string).collect();
        rows.push(vec![
            c.table_string(),
            if degrees.is_empty() {
                "-".into()
            } else {
                degrees.join(",")
            },
            parity.to_string(),
            format!(
                "{}/{}/{}",
                c.survey.positives, c.survey.negatives, c.survey.zeros
            ),
            c.verdict.to_string(),
        ]);
        values.push(json!({
            "table": c.canonical,
            "generators": c.ideal.format_generators(),
            "degrees": c.profile.degrees,
            "parity": c.parity.as_ref().map(ParityClass::tag),
            "survey": {
                "samples": c.survey.samples,
                "positives": c.survey.positives,
                "negatives": c.survey.negatives,
                "zeros": c.survey.zeros,
                "min": c.survey.min.value,
                "max": c.survey.max.value,
            },
            "verdict": c.verdict.name(),
        }));
    }
    let mut text = table(&["table", "degrees", "parity", "+/-/0", "verdict"], &rows);
    text.push_str(&format!("\nAlwaysNegative classes: {negative}\n"));
    Ok(Output {
        results: json!({
            "nx": nx,
            "ny": ny,
            "samples": samples,
            "classes": values,
            "always_negative_classes": negative,
        }),
        text,
    })
}

fn witness_value(system: &System, parts: &[Partition], w: &Witness) -> Result<Value, CliError> {
    let weights: serde_json::Map<String, Value> = system
        .space
        .labels()
        .iter()
        .zip(w.distribution.weights())
        .map(|(l, &p)| (l.clone(), json!(p)))
        .collect();
    Ok(json!({
        "generator": system.space.format_atom(w.generator),
        "epsilon": w.epsilon,
        "p": weights,
        "coinformation": coinformation_numeric(&w.distribution, parts)?,
    }))
}

fn render(d: &Distribution) -> String {
    let labels = d.space().labels();
    labels
        .iter()
        .zip(d.weights())
        .map(|(l, p)| format!("{l}={p:.6}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn witness(system: &System, names: &[String]) -> Result<Output, CliError> {
    let (names, parts) = selected(system, names)?;
    let ideal = coinformation_content(&parts)?;
    if ideal.is_empty() {
        return Err(CliError::precondition(
            "the co-information is identically zero; there is nothing to witness".into(),
        ));
    }
    let class = classify_parity(&ideal, DEFAULT_BUDGET)?;
    if class != ParityClass::StronglyMixed {
        let why = match class.parity() {
            Some(1) => "its sign is fixed nonnegative".to_string(),
            Some(_) => "its sign is fixed nonpositive".to_string(),
            None => "its generators all share one parity".to_string(),
        };
        return Err(CliError::precondition(format!(
            "co-information ideal <{}> is {}: {why}",
            ideal.format_generators().join(", "),
            class.tag()
        )));
    }
    let w = witness_distributions(&ideal, &DEFAULT_EPSILON_SCHEDULE)?;
    let (Some(pos), Some(neg)) = (&w.positive, &w.negative) else {
        return Err(CliError::precondition(
            "only one sign could be witnessed".into(),
        ));
    };
    let results = json!({
        "variables": names,
        "generators": ideal.format_generators(),
        "positive": witness_value(system, &parts, pos)?,
        "negative": witness_value(system, &parts, neg)?,
    });
    let text = format!(
        "positive: I = {} from <{}>\n  {}\nnegative: I = {} from <{}>\n  {}\n",
        num(coinformation_numeric(&pos.distribution, &parts)?),
        system.space.format_atom(pos.generator),
        render(&pos.distribution),
        num(coinformation_numeric(&neg.distribution, &parts)?),
        system.space.format_atom(neg.generator),
        render(&neg.distribution),
    );
    Ok(Output { results, text })
}
