#![allow(dead_code)]

use std::path::PathBuf;

use hamiltonian_cli::cocycle::{format_cocycle, parse_cocycle};
use hamiltonian_cli::derivation::{format_derivation, parse_derivation};
use hamiltonian_cli::element::{element_from_json, element_to_json, format_element, parse_element};
use hamiltonian_cli::iso::{format_iso, parse_iso};
use hamiltonian_cli::spec::{format_spec, parse_spec};
use hamiltonian_core::fixtures;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn data_arg(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

pub struct Case {
    pub kind: String,
    pub algebra: String,
    pub text: String,
}

pub fn corpus() -> Vec<Case> {
    let text = std::fs::read_to_string(data("corpus.txt")).expect("corpus file");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.splitn(3, " | ").collect();
            assert_eq!(f.len(), 3, "bad corpus line {l}");
            Case { kind: f[0].into(), algebra: f[1].into(), text: f[2].into() }
        })
        .collect()
}

/// parse -> format -> parse gives the same value, and the normal form is a
/// fixed point of formatting.
pub fn round_trip(c: &Case) -> Result<(), String> {
    macro_rules! check {
        ($parse:expr, $format:expr, $input:expr) => {{
            let a = $parse($input).map_err(|e| format!("parse: {e}"))?;
            let s = $format(&a);
            let b = $parse(&s).map_err(|e| format!("reparse of `{s}`: {e}"))?;
            if a != b {
                return Err(format!("`{s}` reparses to a different value"));
            }
            if $format(&b) != s {
                return Err(format!("`{s}` is not a fixed point"));
            }
        }};
    }
    let alg = || fixtures::by_name(&c.algebra).ok_or(format!("unknown algebra {}", c.algebra));
    match c.kind.as_str() {
        "element" => {
            let a = alg()?;
            check!(|t: &str| parse_element(t, &a), format_element, &c.text);
            let u = parse_element(&c.text, &a).map_err(|e| e.to_string())?;
            if element_from_json(&element_to_json(&u), &a)? != u {
                return Err("json round trip differs".into());
            }
        }
        "derivation" => {
            let a = alg()?;
            check!(|t: &str| parse_derivation(t, &a), |d| format_derivation(d, &a), &c.text);
        }
        "cocycle" => {
            let a = alg()?;
            check!(|t: &str| parse_cocycle(t, &a), |x| format_cocycle(x, &a), &c.text);
        }
        "spec" => {
            let text = std::fs::read_to_string(data(&c.text)).map_err(|e| e.to_string())?;
            check!(parse_spec, format_spec, &text);
        }
        "iso" => {
            let text = std::fs::read_to_string(data(&c.text)).map_err(|e| e.to_string())?;
            check!(parse_iso, format_iso, &text);
        }
        k => return Err(format!("unknown kind {k}")),
    }
    Ok(())
}

/// Invocations whose reports must be reproducible byte for byte.
pub fn seeded_commands() -> Vec<Vec<String>> {
    let f1 = data_arg("f1.alg");
    let mixed = data_arg("mixed.alg");
    let raw: Vec<Vec<&str>> = vec![
        vec!["check", "jacobi", "--spec", &f1, "--samples", "200", "--seed", "7"],
        vec!["check", "oracle-equivalence", "--fixture", "F3", "--samples", "200", "--seed", "7", "--json"],
        vec!["check", "derivation-law", "--fixture", "F5", "--samples", "50", "--seed", "2"],
        vec!["check", "cocycle-law", "--fixture", "F6", "--samples", "50", "--seed", "2", "--json"],
        vec!["check", "morphism", "--spec", &mixed, "--samples", "50", "--seed", "5"],
        vec!["check", "nilpotency", "--fixture", "F2", "--samples", "50", "--seed", "5", "--json"],
        vec!["classify", "x[(1,0)]", "--fixture", "F1", "--samples", "4", "--seed", "3", "--json"],
        vec!["h2", "--fixture", "F6", "--json"],
    ];
    raw.into_iter()
        .map(|v| std::iter::once("hamlie").chain(v).map(str::to_string).collect())
        .collect()
}
