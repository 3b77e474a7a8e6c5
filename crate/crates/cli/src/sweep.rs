//! One-dimensional parameter sweeps rendered as CSV.

use std::fmt;
use std::str::FromStr;

use diamond_chain::{host_density, impurity_density, ChainParams, InputState};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::observables::{Model, Observable};

/// Lowest temperature of the default grids; colder points are allowed but flagged.
pub const LOW_TEMPERATURE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    T,
    B,
    Delta,
    Alpha,
    Eta,
    Gamma,
    Omega,
    J0,
}

impl Axis {
    pub fn apply(self, p: &mut ChainParams, value: f64) {
        let slot = match self {
            Axis::T => &mut p.t,
            Axis::B => &mut p.b,
            Axis::Delta => &mut p.delta,
            Axis::Alpha => &mut p.alpha,
            Axis::Eta => &mut p.eta,
            Axis::Gamma => &mut p.gamma,
            Axis::Omega => &mut p.omega,
            Axis::J0 => &mut p.j0,
        };
        *slot = value;
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::T => "T",
            Axis::B => "B",
            Axis::Delta => "Delta",
            Axis::Alpha => "alpha",
            Axis::Eta => "eta",
            Axis::Gamma => "gamma",
            Axis::Omega => "Omega",
            Axis::J0 => "J0",
        })
    }
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(Axis::T),
            "B" => Ok(Axis::B),
            "Delta" => Ok(Axis::Delta),
            "alpha" => Ok(Axis::Alpha),
            "eta" => Ok(Axis::Eta),
            "gamma" => Ok(Axis::Gamma),
            "Omega" => Ok(Axis::Omega),
            "J0" => Ok(Axis::J0),
            _ => Err(CliError::UnknownAxis(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    /// Values of every non-axis parameter; the axis slot is overwritten per point.
    pub fixed: ChainParams,
    pub observables: Vec<Observable>,
    /// Input-state angles for `Cout` columns.
    pub theta: f64,
    pub phi: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.lo.is_nan() || self.hi.is_nan() || self.lo >= self.hi {
            return Err(CliError::InvalidRange {
                lo: self.lo,
                hi: self.hi,
            });
        }
        if self.axis == Axis::T && self.lo <= 0.0 {
            return Err(CliError::NonPositiveTemperatureAxis(self.lo));
        }
        if self.points < 2 {
            return Err(CliError::TooFewPoints(self.points));
        }
        Ok(())
    }

    /// Linear grid, endpoints exact.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * (i as f64 / last)
                }
            })
            .collect()
    }

    /// True when any evaluated temperature lies below [`LOW_TEMPERATURE`].
    pub fn below_default_grid(&self) -> bool {
        match self.axis {
            Axis::T => self.lo < LOW_TEMPERATURE,
            _ => self.fixed.t < LOW_TEMPERATURE,
        }
    }

    pub fn header(&self) -> Vec<String> {
        std::iter::once(self.axis.to_string())
            .chain(self.observables.iter().flat_map(Observable::columns))
            .collect()
    }
}

fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

fn evaluate(spec: &SweepSpec, value: f64) -> Result<Vec<f64>> {
    let mut p = spec.fixed;
    spec.axis.apply(&mut p, value);
    let input = InputState::new(spec.theta, spec.phi);
    let wants = |m: Model| spec.observables.iter().any(|o| o.model == m);
    let imp = if wants(Model::Impurity) {
        Some(impurity_density(&p)?)
    } else {
        None
    };
    let host = if wants(Model::Host) {
        Some(host_density(&p)?)
    } else {
        None
    };
    let mut row = vec![value];
    for obs in &spec.observables {
        // both options are filled whenever an observable asks for them
        let rho = match obs.model {
            Model::Impurity => imp.as_ref(),
            Model::Host => host.as_ref(),
        }
        .expect("density computed for requested model");
        row.extend(obs.values(rho, &input));
    }
    Ok(row)
}

/// Evaluates every grid point in parallel and returns the rows in grid order.
pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<Vec<f64>>> {
    spec.validate()?;
    spec.grid().par_iter().map(|&x| evaluate(spec, x)).collect()
}

/// The sweep as CSV text: one header row, then one row per grid point with
/// every value printed to 17 significant digits.
pub fn run_sweep(spec: &SweepSpec) -> Result<String> {
    let rows = sweep_rows(spec)?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(spec.header())?;
    for row in rows {
        writer.write_record(row.into_iter().map(format_value))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}
