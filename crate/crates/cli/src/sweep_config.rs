//! Sweep config files: `key = value` lines, one run per blank-line separated
//! block, `#` starts a comment. Keys are the `run` flag names without dashes.
//!
//! ```text
//! # Fig. 1, bottom right
//! noise = adn
//! ttau = 2pi
//! tdec = 1
//! out = adn_2pi_td1.csv
//!
//! noise = none
//! ttau = 2pi
//! out = none_2pi.csv
//! ```

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::error::CliError;
use crate::spec::{
    fmt_float, parse_bool, parse_positive_count, parse_punish, parse_reward, parse_tdec,
    parse_ttau, RunSpec,
};

pub const KEYS: [&str; 11] = [
    "noise",
    "ttau",
    "tdec",
    "reward",
    "punish",
    "iters",
    "realizations",
    "seed",
    "dual-basis",
    "out",
    "svg",
];

fn set(spec: &mut RunSpec, key: &str, value: &str) -> Result<(), String> {
    match key {
        "noise" => spec.noise = value.parse()?,
        "ttau" => spec.ttau = parse_ttau(value)?,
        "tdec" => spec.tdec = parse_tdec(value)?,
        "reward" => spec.reward = parse_reward(value)?,
        "punish" => spec.punish = parse_punish(value)?,
        "iters" => spec.iters = parse_positive_count(value)?,
        "realizations" => spec.realizations = parse_positive_count(value)?,
        "seed" => {
            spec.seed = value
                .parse()
                .map_err(|_| format!("seed: `{value}` is not a u64"))?
        }
        "dual-basis" => spec.dual_basis = parse_bool(value)?,
        "out" => spec.out = Some(PathBuf::from(value)),
        "svg" => spec.svg = Some(PathBuf::from(value)),
        other => {
            return Err(format!(
                "unknown key `{other}` (expected one of: {})",
                KEYS.join(", ")
            ))
        }
    }
    Ok(())
}

/// Parses every block of `text` into a validated [`RunSpec`].
pub fn parse_sweep(text: &str) -> Result<Vec<RunSpec>, CliError> {
    let mut specs = Vec::new();
    let mut current: Option<(RunSpec, Vec<&str>)> = None;

    let finish =
        |block: Option<(RunSpec, Vec<&str>)>, specs: &mut Vec<RunSpec>| -> Result<(), CliError> {
            if let Some((spec, _)) = block {
                spec.validate()
                    .map_err(|e| CliError::Usage(format!("block {}: {e}", specs.len() + 1)))?;
                specs.push(spec);
            }
            Ok(())
        };

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if raw.trim().is_empty() {
            finish(current.take(), &mut specs)?;
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::Usage(format!("line {}: {msg}", lineno + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let (spec, seen) = current.get_or_insert_with(|| (RunSpec::default(), Vec::new()));
        if seen.contains(&key) {
            return Err(err(format!("duplicate key `{key}` in block")));
        }
        set(spec, key, value).map_err(err)?;
        seen.push(key);
    }
    finish(current.take(), &mut specs)?;

    if specs.is_empty() {
        return Err(CliError::Usage(
            "sweep config contains no run blocks".into(),
        ));
    }
    Ok(specs)
}

/// Serializes specs back to config text; every key is written explicitly.
pub fn to_sweep_text(specs: &[RunSpec]) -> String {
    let mut out = String::new();
    for (i, s) in specs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "noise = {}", s.noise);
        let _ = writeln!(out, "ttau = {}", fmt_float(s.ttau));
        let _ = writeln!(out, "tdec = {}", fmt_float(s.tdec));
        let _ = writeln!(out, "reward = {}", s.reward);
        let _ = writeln!(out, "punish = {}", s.punish);
        let _ = writeln!(out, "iters = {}", s.iters);
        let _ = writeln!(out, "realizations = {}", s.realizations);
        let _ = writeln!(out, "seed = {}", s.seed);
        let _ = writeln!(out, "dual-basis = {}", s.dual_basis);
        if let Some(p) = &s.out {
            let _ = writeln!(out, "out = {}", p.display());
        }
        if let Some(p) = &s.svg {
            let _ = writeln!(out, "svg = {}", p.display());
        }
    }
    out
}
