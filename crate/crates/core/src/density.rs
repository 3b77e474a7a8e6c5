//! Reduced density matrix of the impurity Heisenberg dimer.
//!
//! In the product basis every thermal block operator is X-shaped with zero
//! corners: four populations and one real `|01>`/`<10|` coherence. Those
//! five numbers are the canonical representation; a full 4x4 matrix is only
//! built on request.

use nalgebra::Matrix4;

use crate::error::{Error, Result};
use crate::params::ChainParams;
use crate::spectra::BlockSpectrum;
use crate::transfer::{scaled_power, ChainSpectra, TransferData, DEGENERATE_Q};

/// Real X-form two-qubit matrix `[[r11,0,0,0],[0,r22,r23,0],[0,r23,r33,0],[0,0,0,r44]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerDensity {
    pub r11: f64,
    pub r22: f64,
    pub r33: f64,
    pub r44: f64,
    pub r23: f64,
}

/// Unnormalized thermal operator of one block; same X shape as [`DimerDensity`].
pub type BlockOperator = DimerDensity;

impl DimerDensity {
    pub fn new(r11: f64, r22: f64, r33: f64, r44: f64, r23: f64) -> Self {
        Self {
            r11,
            r22,
            r33,
            r44,
            r23,
        }
    }

    /// `|Psi-><Psi-|` with `|Psi-> = (|01> - |10>)/sqrt 2`.
    pub fn singlet() -> Self {
        Self::new(0.0, 0.5, 0.5, 0.0, -0.5)
    }

    pub fn maximally_mixed() -> Self {
        Self::new(0.25, 0.25, 0.25, 0.25, 0.0)
    }

    pub fn trace(&self) -> f64 {
        self.r11 + self.r22 + self.r33 + self.r44
    }

    /// Divides every element by the trace.
    pub fn normalized(&self) -> Self {
        self.scaled(1.0 / self.trace())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(
            self.r11 * factor,
            self.r22 * factor,
            self.r33 * factor,
            self.r44 * factor,
            self.r23 * factor,
        )
    }

    /// Eigenvalues `r11, r44` and the two of the central block.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mean = 0.5 * (self.r22 + self.r33);
        let radius = (0.5 * (self.r22 - self.r33)).hypot(self.r23);
        [self.r11, mean + radius, mean - radius, self.r44]
    }

    pub fn to_matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = self.r11;
        m[(1, 1)] = self.r22;
        m[(2, 2)] = self.r33;
        m[(3, 3)] = self.r44;
        m[(1, 2)] = self.r23;
        m[(2, 1)] = self.r23;
        m
    }

    /// Unit trace and positive semidefinite within `tol`.
    pub fn check(&self, tol: f64) -> Result<()> {
        if (self.trace() - 1.0).abs() > tol {
            return Err(Error::NotADensityMatrix(format!("trace {}", self.trace())));
        }
        let min = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -tol {
            return Err(Error::NotADensityMatrix(format!("eigenvalue {min}")));
        }
        Ok(())
    }

    fn combine(a: &Self, wa: f64, b: &Self, wb: f64) -> Self {
        Self::new(
            a.r11 * wa + b.r11 * wb,
            a.r22 * wa + b.r22 * wb,
            a.r33 * wa + b.r33 * wb,
            a.r44 * wa + b.r44 * wb,
            a.r23 * wa + b.r23 * wb,
        )
    }
}

/// `sum_j exp(-beta (e_j - shift)) |phi_j><phi_j|` for one block.
///
/// The trace equals the block's Boltzmann weight with the same shift.
pub fn unnormalized_block_operator(spec: &BlockSpectrum, beta: f64, shift: f64) -> BlockOperator {
    let mut op = DimerDensity::new(0.0, 0.0, 0.0, 0.0, 0.0);
    for (e, v) in spec.energies.iter().zip(spec.eigvecs.iter()) {
        let w = (-beta * (e - shift)).exp();
        op.r11 += w * v[0] * v[0];
        op.r22 += w * v[1] * v[1];
        op.r33 += w * v[2] * v[2];
        op.r44 += w * v[3] * v[3];
        op.r23 += w * v[1] * v[2];
    }
    op
}

/// Thermodynamic-limit density of the tracked plaquette of `spectra`.
///
/// Each element is `(A + B) / M` with
/// `A = Q (x++ + x--) + 4 w+- x+-`, `B = (x++ - x--)(w++ - w--)` and
/// `M = Q (w~++ + w~--) + 4 w+- w~+- + (w~++ - w~--)(w++ - w--)`.
/// `Q (x++ + x--) + (x++ - x--)(w++ - w--)` is regrouped as
/// `x++ (Q + w++ - w--) + x-- (Q - w++ + w--)`, where both brackets are
/// non-negative, and the mixed term uses the average of the `(+,-)` and
/// `(-,+)` operators because both orientations enter the trace against the
/// symmetric `W^(N-1)`.
pub fn density_from_spectra(spectra: &ChainSpectra, beta: f64) -> Result<DimerDensity> {
    let td = TransferData::from_spectra(spectra, beta)?;
    let ops = spectra
        .impurity
        .map(|b| unnormalized_block_operator(&b, beta, td.impurity_shift));
    let (up, down, cross) = if td.q < DEGENERATE_Q {
        (1.0, 1.0, 0.0)
    } else {
        let (q_plus, q_minus) = td.perron_split();
        (q_plus, q_minus, 2.0 * td.w_pm)
    };
    let mixed = DimerDensity::combine(&ops[1], cross, &ops[2], cross);
    let diag = DimerDensity::combine(&ops[0], up, &ops[3], down);
    let numerator = DimerDensity::combine(&diag, 1.0, &mixed, 1.0);
    let norm = td.wt_pp * up + td.wt_mm * down + 2.0 * cross * td.wt_pm;
    Ok(numerator.scaled(1.0 / norm))
}

/// Reduced density of the impurity dimer in the infinite chain.
pub fn impurity_density(p: &ChainParams) -> Result<DimerDensity> {
    p.validate()?;
    density_from_spectra(&ChainSpectra::new(p), p.beta())
}

/// Dimer density of the original model: `impurity_density` with every
/// distortion zeroed.
pub fn host_density(p: &ChainParams) -> Result<DimerDensity> {
    impurity_density(&p.host_limit())
}

/// Original-model dimer density evaluated from the host spectra alone.
pub fn uniform_host_density(p: &ChainParams) -> Result<DimerDensity> {
    p.validate()?;
    density_from_spectra(&ChainSpectra::uniform_host(p), p.beta())
}

/// `Tr(P~ W^(n-1)) / Tr(W~ W^(n-1))` for a ring of `n` plaquettes.
pub fn finite_ring_density(spectra: &ChainSpectra, beta: f64, n: usize) -> Result<DimerDensity> {
    if n == 0 {
        return Err(Error::ZeroPlaquettes);
    }
    let td = TransferData::from_spectra(spectra, beta)?;
    let ops = spectra
        .impurity
        .map(|b| unnormalized_block_operator(&b, beta, td.impurity_shift));
    let (power, _) = scaled_power(&td.host_matrix(), n - 1);
    // Tr(P M) = P++ M++ + P+- M-+ + P-+ M+- + P-- M--
    let weight = [power[(0, 0)], power[(1, 0)], power[(0, 1)], power[(1, 1)]];
    let mut acc = DimerDensity::new(0.0, 0.0, 0.0, 0.0, 0.0);
    for (op, w) in ops.iter().zip(weight) {
        acc = DimerDensity::combine(&acc, 1.0, op, w);
    }
    Ok(acc.normalized())
}

/// Finite-ring density of the impurity dimer through the transfer-matrix trace.
pub fn impurity_density_finite(p: &ChainParams, n: usize) -> Result<DimerDensity> {
    p.validate()?;
    finite_ring_density(&ChainSpectra::new(p), p.beta(), n)
}
