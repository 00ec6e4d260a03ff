//! Command reports: one structured document per invocation, reproducible byte
//! for byte from the same input and flags.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::decompose::{catalog, identify_extended_type, Family};
use crate::error::Result;
use crate::io::LatticeFile;
use crate::lattice::{Lattice, LatticeVector};
use crate::oracle::oracle_check;
use crate::pairs::screening_pairs;
use crate::rank2::rank2_check;
use crate::screeners::{all_screeners, check_properties, l_phi, screener_norm_bound, z_phi};

pub const WARN_PAIRS_DOUBLED: &str = "W_PAIRS_ODD_DOUBLED";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warning {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub args: BTreeMap<String, String>,
    /// sha256 of the raw input file, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub results: Value,
    pub warnings: Vec<Warning>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Input lattice together with the raw bytes it was read from.
pub struct Input<'a> {
    pub file: &'a LatticeFile,
    pub lattice: &'a Lattice,
    pub raw: &'a [u8],
}

impl Report {
    fn new(command: &str, args: BTreeMap<String, String>, input: Option<&Input>, results: Value) -> Self {
        Report {
            command: command.to_string(),
            args,
            input_digest: input.map(|i| digest(i.raw)),
            results,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Indented `key: value` rendering for reading at a terminal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.args {
            let _ = writeln!(out, "  --{k} {v}");
        }
        if let Some(d) = &self.input_digest {
            let _ = writeln!(out, "input sha256: {d}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning {}: {}", w.code, w.message);
        }
        render(&mut out, &self.results, 0);
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render(out, x, depth + 1);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}- {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render(out, x, depth + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

fn lattice_header(input: &Input) -> Value {
    json!({
        "name": input.file.name,
        "gram": input.lattice.gram(),
        "determinant": input.lattice.determinant(),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

/// `Φ` with norms, root flags, `ZΦ`, `L_Φ` and the structural property checks.
pub fn cmd_screeners(input: &Input, args: BTreeMap<String, String>) -> Result<Report> {
    let l = input.lattice;
    let set = all_screeners(l);
    let screeners: Vec<Value> = set
        .iter()
        .map(|(v, n)| json!({"vector": v, "norm": n, "root": n == 2}))
        .collect();
    let nonroot = set.iter().filter(|(_, n)| *n != 2).count();
    let mut results = json!({
        "count": set.full_count(),
        "canonical_count": set.len(),
        "nonroot_canonical_count": nonroot,
        "norm_bound": screener_norm_bound(l),
        "screeners": screeners,
    });
    if !set.is_empty() {
        let z = z_phi(&set)?;
        let lp = l_phi(l, &set)?;
        results = merge(
            results,
            json!({
                "z_phi": {"rank": z.rank, "index": z.index, "basis": z.basis},
                "l_phi": {"index": lp.index, "basis": lp.basis},
                "properties": check_properties(&set)?,
            }),
        );
    }
    Ok(Report::new("screeners", args, Some(input), merge(lattice_header(input), results)))
}

/// Orthogonal components `√p K` of a lattice generated by its screeners.
pub fn cmd_decompose(input: &Input, args: BTreeMap<String, String>) -> Result<Report> {
    let c = identify_extended_type(input.lattice)?;
    let results = json!({
        "reduced_basis": c.reduced_basis,
        "components": c.components(),
    });
    Ok(Report::new("decompose", args, Some(input), merge(lattice_header(input), results)))
}

/// Extended root systems of `Φ` with expected and actual screener counts.
pub fn cmd_classify(input: &Input, args: BTreeMap<String, String>) -> Result<Report> {
    let c = identify_extended_type(input.lattice)?;
    let groups: Vec<Value> = c
        .groups
        .iter()
        .map(|g| {
            let parts: Vec<String> = g
                .components
                .iter()
                .map(|k| format!("{}({})", k.root_type, k.scale))
                .collect();
            json!({
                "type": g.extended.root_type,
                "scale": g.extended.scale,
                "expected_screener_count": g.extended.expected_screener_count,
                "actual_screener_count": g.actual_screener_count,
                "components": parts,
            })
        })
        .collect();
    let label: Vec<String> = c
        .groups
        .iter()
        .map(|g| format!("{}({})", g.extended.root_type, g.extended.scale))
        .collect();
    let results = json!({
        "screener_count": c.screeners.full_count(),
        "extended_type": label.join(" + "),
        "groups": groups,
    });
    Ok(Report::new("classify", args, Some(input), merge(lattice_header(input), results)))
}

/// Rank-2 normal form with its predicted screener list against `Φ`.
pub fn cmd_rank2(input: &Input, args: BTreeMap<String, String>) -> Result<Report> {
    let check = rank2_check(input.lattice)?;
    let mut report = Report::new(
        "rank2",
        args,
        Some(input),
        merge(lattice_header(input), serde_json::to_value(&check).expect("serializable")),
    );
    if let (Some(code), Some(f)) = (check.warning, &check.form) {
        report.warnings.push(Warning {
            code: code.to_string(),
            message: format!(
                "subtype 2b with odd p = {}: the second normal-form basis vector has odd norm and the predicted list does not apply; {} canonical screeners found",
                f.p,
                check.actual.len()
            ),
        });
    }
    Ok(report)
}

/// Screening-pair data for one momentum, or for every screener when none is given.
pub fn cmd_pairs(
    input: &Input,
    vector: Option<&LatticeVector>,
    max_r: i64,
    args: BTreeMap<String, String>,
) -> Result<Report> {
    let l = input.lattice;
    let targets: Vec<LatticeVector> = match vector {
        Some(v) => vec![v.clone()],
        None => all_screeners(l).screeners,
    };
    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    for a in &targets {
        let r = screening_pairs(l, a, max_r)?;
        if r.doubled {
            warnings.push(Warning {
                code: WARN_PAIRS_DOUBLED.to_string(),
                message: format!("{a} has odd norm; pairs are reported for 2{a} = {}", r.alpha),
            });
        }
        entries.push(json!({"input": a, "pairs": r}));
    }
    let results = json!({"max_r": max_r, "momenta": entries});
    let mut report = Report::new("pairs", args, Some(input), merge(lattice_header(input), results));
    report.warnings = warnings;
    Ok(report)
}

/// Gram matrix of `√p X_n`.
pub fn cmd_catalog(family: Family, rank: usize, scale: i64, args: BTreeMap<String, String>) -> Result<Report> {
    let l = catalog(family, rank, scale)?;
    let results = json!({
        "type": format!("{}_{}", family.letter(), rank),
        "scale": scale,
        "gram": l.gram(),
        "determinant": l.determinant(),
    });
    Ok(Report::new("catalog", args, None, results))
}

/// Random lattices checked against the box search. Per-case wall times are
/// returned beside the report, not inside it, so the report stays reproducible.
pub fn cmd_oracle_check(
    seed: u64,
    cases: usize,
    max_rank: usize,
    max_entry: i64,
    args: BTreeMap<String, String>,
) -> (Report, Vec<std::time::Duration>) {
    let (check, times) = oracle_check(seed, cases, max_rank, max_entry);
    let mut results = serde_json::to_value(&check).expect("serializable");
    results["status"] = json!(if check.passed() { "PASS" } else { "FAIL" });
    (Report::new("oracle-check", args, None, results), times)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_lattice_file;

    fn with_input<T>(text: &str, f: impl FnOnce(&Input) -> T) -> T {
        let file = parse_lattice_file(text).unwrap();
        let lattice = file.lattice().unwrap();
        f(&Input {
            file: &file,
            lattice: &lattice,
            raw: text.as_bytes(),
        })
    }

    #[test]
    fn screeners_on_a3() {
        let r = with_input(r#"{"gram": [[2,-1,0],[-1,2,-1],[0,-1,2]], "name": "A3"}"#, |i| {
            cmd_screeners(i, BTreeMap::new()).unwrap()
        });
        assert_eq!(r.results["canonical_count"], 9);
        assert_eq!(r.results["count"], 18);
        let nonroot: Vec<&Value> = r.results["screeners"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|s| s["root"] == false)
            .collect();
        assert_eq!(nonroot.len(), 3);
        assert!(nonroot.iter().all(|s| s["norm"] == 4));
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        assert!(r.results["properties"].as_array().unwrap().iter().all(|p| p["passed"] == true));
    }

    #[test]
    fn classify_d4() {
        let d4 = catalog(Family::D, 4, 1).unwrap();
        let text = serde_json::to_string(&json!({"gram": d4.gram()})).unwrap();
        let r = with_input(&text, |i| cmd_classify(i, BTreeMap::new()).unwrap());
        assert_eq!(r.results["extended_type"], "F_4(1)");
        assert_eq!(r.results["screener_count"], 48);
    }

    #[test]
    fn rank2_warning_iff_odd_2b() {
        let r = with_input("2 -1\n-1 1\n", |i| cmd_rank2(i, BTreeMap::new()).unwrap());
        assert_eq!(r.warnings.len(), 1);
        assert_eq!(r.warnings[0].code, crate::rank2::WARN_2B_ODD_P);
        let r = with_input("2 0\n0 2\n", |i| cmd_rank2(i, BTreeMap::new()).unwrap());
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn reports_are_deterministic() {
        let text = "4 0\n0 6\n";
        let a = with_input(text, |i| cmd_pairs(i, None, 10, BTreeMap::new()).unwrap());
        let b = with_input(text, |i| cmd_pairs(i, None, 10, BTreeMap::new()).unwrap());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_text(), b.to_text());
        let (x, _) = cmd_oracle_check(3, 5, 2, 5, BTreeMap::new());
        let (y, _) = cmd_oracle_check(3, 5, 2, 5, BTreeMap::new());
        assert_eq!(x.to_json(), y.to_json());
        assert_eq!(x.results["status"], "PASS");
    }

    #[test]
    fn odd_pairs_are_noted() {
        let r = with_input("1 0\n0 3\n", |i| {
            cmd_pairs(i, Some(&LatticeVector::new([1, 0])), 10, BTreeMap::new()).unwrap()
        });
        assert_eq!(r.warnings[0].code, WARN_PAIRS_DOUBLED);
    }
}
