//! Threshold crossings: entanglement-vanishing and fidelity-threshold
//! temperatures, and the entanglement-vanishing field.

use std::fmt;
use std::str::FromStr;

use diamond_chain::{
    average_fidelity, concurrence_x, impurity_density, ChainParams, CLASSICAL_FIDELITY,
};

use crate::error::{CliError, Result};

/// Concurrence below this counts as vanished.
pub const CONCURRENCE_FLOOR: f64 = 1e-9;
/// Bracket width at which bisection stops.
pub const TOLERANCE: f64 = 1e-6;
pub const DEFAULT_T_BRACKET: (f64, f64) = (0.01, 50.0);
pub const DEFAULT_B_BRACKET: (f64, f64) = (0.0, 20.0);
/// Scan resolution used to bracket the crossing before bisection.
const SCAN_POINTS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalKind {
    EntanglementT,
    FidelityT,
    CriticalB,
}

impl CriticalKind {
    pub fn name(self) -> &'static str {
        match self {
            CriticalKind::EntanglementT => "entanglement_T",
            CriticalKind::FidelityT => "fidelity_T",
            CriticalKind::CriticalB => "critical_B",
        }
    }

    pub fn default_bracket(self) -> (f64, f64) {
        match self {
            CriticalKind::CriticalB => DEFAULT_B_BRACKET,
            _ => DEFAULT_T_BRACKET,
        }
    }

    /// Signed distance above the threshold at axis value `x`.
    fn excess(self, p: &ChainParams, x: f64) -> Result<f64> {
        let q = match self {
            CriticalKind::CriticalB => p.with_field(x),
            _ => p.with_temperature(x),
        };
        let rho = impurity_density(&q)?;
        Ok(match self {
            CriticalKind::FidelityT => average_fidelity(&rho) - CLASSICAL_FIDELITY,
            _ => concurrence_x(&rho) - CONCURRENCE_FLOOR,
        })
    }

    fn grid(self, lo: f64, hi: f64) -> Vec<f64> {
        let last = (SCAN_POINTS - 1) as f64;
        (0..SCAN_POINTS)
            .map(|i| {
                let s = i as f64 / last;
                match self {
                    // temperatures span decades
                    CriticalKind::CriticalB => lo + (hi - lo) * s,
                    _ => lo * (hi / lo).powf(s),
                }
            })
            .collect()
    }
}

impl fmt::Display for CriticalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CriticalKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "entanglement_T" => Ok(CriticalKind::EntanglementT),
            "fidelity_T" => Ok(CriticalKind::FidelityT),
            "critical_B" => Ok(CriticalKind::CriticalB),
            _ => Err(CliError::UnknownKind(s.to_string())),
        }
    }
}

/// Location where the observable of `kind` last drops through its threshold
/// inside `[lo, hi]`, for the model described by `p`.
///
/// The bracket is scanned on a fixed grid (geometric in T, linear in B) and
/// the final above-to-below step is bisected to [`TOLERANCE`]. Re-entrant
/// curves therefore report their outermost vanishing point.
pub fn find_critical(kind: CriticalKind, p: &ChainParams, (lo, hi): (f64, f64)) -> Result<f64> {
    let no_crossing = CliError::NoCrossingFound {
        kind: kind.name(),
        lo,
        hi,
    };
    let temperature = kind != CriticalKind::CriticalB;
    if lo.is_nan() || hi.is_nan() || lo >= hi || (temperature && lo <= 0.0) {
        return Err(CliError::InvalidRange { lo, hi });
    }
    let grid = kind.grid(lo, hi);
    let values = grid
        .iter()
        .map(|&x| kind.excess(p, x))
        .collect::<Result<Vec<f64>>>()?;
    let step = (1..grid.len())
        .rev()
        .find(|&i| values[i - 1] > 0.0 && values[i] <= 0.0)
        .ok_or(no_crossing)?;
    let (mut a, mut b) = (grid[step - 1], grid[step]);
    while b - a > TOLERANCE {
        let mid = 0.5 * (a + b);
        if kind.excess(p, mid)? > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
