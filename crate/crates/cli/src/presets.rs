//! Named parameter sets for the figure presets.
//!
//! Every preset expands into one sweep per curve value: the field `B` for
//! temperature sweeps, the temperature for the field sweeps of `fig6`.

use diamond_chain::ChainParams;

use crate::error::{CliError, Result};
use crate::observables::{Model, Observable, Quantity};
use crate::sweep::{Axis, SweepSpec, LOW_TEMPERATURE};

pub const PRESET_NAMES: [&str; 14] = [
    "fig2", "fig3", "fig5a", "fig5b", "fig6a", "fig6b", "fig7", "fig8", "fig9a", "fig9b", "fig10",
    "fig11", "fig12a", "fig12b",
];

pub const DEFAULT_FIELDS: [f64; 2] = [1.0, 2.0];
pub const T_RANGE: (f64, f64) = (LOW_TEMPERATURE, 4.0);
pub const B_RANGE: (f64, f64) = (0.0, 4.0);
pub const PRESET_POINTS: usize = 400;

/// One CSV of a preset.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetCurve {
    /// File stem, e.g. `fig2_B1`.
    pub stem: String,
    pub spec: SweepSpec,
}

/// Diamond impurity with a weakened pair of Ising bonds.
fn diamond(alpha: f64) -> ChainParams {
    ChainParams {
        delta: 1.0,
        alpha,
        eta: -0.5,
        gamma: -0.6,
        omega: 0.8,
        ..Default::default()
    }
}

/// Impurity with one Ising bond removed (`J1 = 0`).
fn broken_bond(alpha: f64) -> ChainParams {
    ChainParams {
        delta: 1.3,
        alpha,
        eta: -1.0,
        gamma: -0.8,
        omega: 0.8,
        ..Default::default()
    }
}

fn both(q: Quantity) -> Vec<Observable> {
    vec![
        Observable::new(q, Model::Impurity),
        Observable::new(q, Model::Host),
    ]
}

fn label(x: f64) -> String {
    format!("{x}")
}

/// Curves of preset `name`. `curve_values` overrides the per-curve fields
/// (or temperatures for `fig6a`/`fig6b`).
pub fn preset(name: &str, curve_values: Option<&[f64]>) -> Result<Vec<PresetCurve>> {
    let (base, quantity) = match name {
        "fig2" => (diamond(0.0), Quantity::C),
        "fig3" => (diamond(0.5), Quantity::C),
        "fig5a" => (broken_bond(0.0), Quantity::C),
        "fig5b" => (broken_bond(0.5), Quantity::C),
        "fig6a" | "fig6b" => return field_sweep(name, curve_values),
        "fig7" => (diamond(0.0), Quantity::Cl1),
        "fig8" => (diamond(0.5), Quantity::Cl1),
        "fig9a" => (broken_bond(0.0), Quantity::Cl1),
        "fig9b" => (broken_bond(0.5), Quantity::Cl1),
        "fig10" => (diamond(0.0), Quantity::Fa),
        "fig11" => (diamond(0.5), Quantity::Fa),
        "fig12a" => (broken_bond(0.0), Quantity::Fa),
        "fig12b" => (broken_bond(0.5), Quantity::Fa),
        _ => return Err(CliError::UnknownPreset(name.to_string())),
    };
    let fields = curve_values.unwrap_or(&DEFAULT_FIELDS);
    Ok(fields
        .iter()
        .map(|&b| PresetCurve {
            stem: format!("{name}_B{}", label(b)),
            spec: SweepSpec {
                axis: Axis::T,
                lo: T_RANGE.0,
                hi: T_RANGE.1,
                points: PRESET_POINTS,
                fixed: base.with_field(b),
                observables: both(quantity),
                theta: std::f64::consts::FRAC_PI_2,
                phi: 0.0,
            },
        })
        .collect())
}

fn field_sweep(name: &str, curve_values: Option<&[f64]>) -> Result<Vec<PresetCurve>> {
    let (delta, temps): (f64, &[f64]) = if name == "fig6a" {
        (1.0, &[0.002, 0.4])
    } else {
        (1.3, &[0.2, 0.4])
    };
    let base = ChainParams {
        delta,
        ..diamond(0.0)
    };
    Ok(curve_values
        .unwrap_or(temps)
        .iter()
        .map(|&t| PresetCurve {
            stem: format!("{name}_T{}", label(t)),
            spec: SweepSpec {
                axis: Axis::B,
                lo: B_RANGE.0,
                hi: B_RANGE.1,
                points: PRESET_POINTS,
                fixed: base.with_temperature(t),
                observables: both(Quantity::C),
                theta: std::f64::consts::FRAC_PI_2,
                phi: 0.0,
            },
        })
        .collect())
}
