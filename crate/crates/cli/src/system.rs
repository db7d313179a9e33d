use std::path::Path;

use indexmap::IndexMap;
use logdec_core::{build_gate, named_gate, Distribution, GateSystem, OutcomeSpace, Partition};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// On-disk description of a system of variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub outcomes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
    pub variables: IndexMap<String, Vec<u32>>,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            CliError::parse(format!(
                "line {}, column {}: {}",
                e.line(),
                e.column(),
                strip_position(&e.to_string())
            ))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system files always serialize")
    }

    pub fn from_gate(gate: &GateSystem) -> Self {
        let n = gate.space().len();
        let assignment = |p: &Partition| p.assignment().to_vec();
        Self {
            outcomes: gate.space().labels().to_vec(),
            p: Some(vec![1.0 / n as f64; n]),
            variables: IndexMap::from([
                ("X".to_string(), assignment(gate.x())),
                ("Y".to_string(), assignment(gate.y())),
                ("Z".to_string(), assignment(gate.z())),
            ]),
        }
    }
}

fn strip_position(message: &str) -> &str {
    message.split(" at line ").next().unwrap_or(message)
}

/// A validated system ready for computation.
#[derive(Clone, Debug)]
pub struct System {
    pub space: OutcomeSpace,
    pub dist: Option<Distribution>,
    pub variables: IndexMap<String, Partition>,
}

impl System {
    pub fn from_file(file: &SystemFile) -> Result<Self, CliError> {
        let space = OutcomeSpace::with_labels(file.outcomes.iter().cloned())?;
        let dist = match &file.p {
            Some(p) => {
                let d = Distribution::new(space.clone(), p.clone())?;
                if !d.is_normalized() {
                    return Err(CliError::parse(format!(
                        "\"p\" sums to {}, expected 1",
                        d.total()
                    )));
                }
                Some(d)
            }
            None => None,
        };
        let mut variables = IndexMap::new();
        for (name, blocks) in &file.variables {
            let part = Partition::new(space.clone(), blocks)
                .map_err(|e| CliError::parse(format!("variable {name:?}: {e}")))?;
            variables.insert(name.clone(), part);
        }
        Ok(Self {
            space,
            dist,
            variables,
        })
    }

    pub fn distribution(&self) -> Result<&Distribution, CliError> {
        self.dist
            .as_ref()
            .ok_or_else(|| CliError::parse("the system file has no distribution \"p\"".into()))
    }

    /// The named variables, or all of them when `names` is empty.
    pub fn select(&self, names: &[String]) -> Result<Vec<(String, Partition)>, CliError> {
        if names.is_empty() {
            return Ok(self
                .variables
                .iter()
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect());
        }
        names
            .iter()
            .map(|n| {
                self.variables
                    .get(n)
                    .map(|p| (n.clone(), p.clone()))
                    .ok_or_else(|| CliError::parse(format!("unknown variable {n:?}")))
            })
            .collect()
    }
}

/// Where a system comes from on the command line.
#[derive(Clone, Debug, Default)]
pub struct Source {
    pub file: Option<std::path::PathBuf>,
    pub gate: Option<String>,
    pub table: Option<String>,
    pub shape: Option<String>,
}

impl Source {
    pub fn load(&self) -> Result<SystemFile, CliError> {
        match (&self.file, &self.gate, &self.table) {
            (Some(path), None, None) => read_file(path),
            (None, Some(spec), None) => {
                let (name, shape) = spec.split_once(':').unwrap_or((spec.as_str(), "2x2"));
                let (nx, ny) = parse_shape(shape)?;
                Ok(SystemFile::from_gate(&named_gate(name, nx, ny)?))
            }
            (None, None, Some(table)) => {
                let cells: Vec<&str> = table.split(',').map(str::trim).collect();
                let (nx, ny) = match &self.shape {
                    Some(s) => parse_shape(s)?,
                    None => square(cells.len())?,
                };
                Ok(SystemFile::from_gate(&build_gate(nx, ny, &cells)?))
            }
            (None, None, None) => Err(CliError::parse(
                "give a system file, --gate or --table".into(),
            )),
            _ => Err(CliError::parse(
                "a system file, --gate and --table are mutually exclusive".into(),
            )),
        }
    }
}

fn read_file(path: &Path) -> Result<SystemFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    SystemFile::parse(&text)
        .map_err(|e| CliError::parse(format!("{}: {}", path.display(), e.message)))
}

pub fn parse_shape(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::parse(format!("shape {s:?} is not of the form NXxNY"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn square(len: usize) -> Result<(usize, usize), CliError> {
    let side = (len as f64).sqrt().round() as usize;
    if side * side == len {
        Ok((side, side))
    } else {
        Err(CliError::parse(format!(
            "a table of {len} cells is not square; pass --shape"
        )))
    }
}
