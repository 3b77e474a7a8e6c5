//! `key=value` settings shared by config files and command-line flags.
//!
//! Keys are the flag names (`B`, `Delta`, `J0`, `alpha`, `axis`, `obs`, ...).
//! Files are read first and flags are layered on top.

use std::collections::BTreeMap;
use std::str::FromStr;

use diamond_chain::ChainParams;

use crate::error::{CliError, Result};
use crate::observables::parse_observables;
use crate::sweep::{Axis, SweepSpec};

pub type Settings = BTreeMap<String, String>;

const KNOWN_KEYS: [&str; 18] = [
    "J", "Delta", "J0", "B", "T", "alpha", "eta", "gamma", "Omega", "axis", "lo", "hi", "points",
    "obs", "theta", "phi", "out", "model",
];

/// Parses config text. Blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Settings> {
    let mut out = Settings::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| CliError::Config {
            line: i + 1,
            msg: format!("expected key=value, got `{line}`"),
        })?;
        let key = key.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::Config {
                line: i + 1,
                msg: format!("unknown key `{key}`"),
            });
        }
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn get<T: FromStr>(s: &Settings, key: &str, default: T) -> Result<T> {
    match s.get(key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| CliError::BadValue {
            key: key.to_string(),
            value: v.clone(),
        }),
    }
}

pub fn params_from(s: &Settings) -> Result<ChainParams> {
    let d = ChainParams::default();
    Ok(ChainParams {
        j: get(s, "J", d.j)?,
        delta: get(s, "Delta", d.delta)?,
        j0: get(s, "J0", d.j0)?,
        b: get(s, "B", d.b)?,
        t: get(s, "T", d.t)?,
        alpha: get(s, "alpha", d.alpha)?,
        eta: get(s, "eta", d.eta)?,
        gamma: get(s, "gamma", d.gamma)?,
        omega: get(s, "Omega", d.omega)?,
    })
}

pub fn sweep_from(s: &Settings) -> Result<SweepSpec> {
    let axis: Axis = s.get("axis").map(String::as_str).unwrap_or("T").parse()?;
    let spec = SweepSpec {
        axis,
        lo: get(s, "lo", 0.01)?,
        hi: get(s, "hi", 4.0)?,
        points: get(s, "points", 400)?,
        fixed: params_from(s)?,
        observables: parse_observables(s.get("obs").map(String::as_str).unwrap_or("C"))?,
        theta: get(s, "theta", std::f64::consts::FRAC_PI_2)?,
        phi: get(s, "phi", 0.0)?,
    };
    spec.validate()?;
    Ok(spec)
}
