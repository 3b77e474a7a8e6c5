//! Standard teleportation of a two-qubit state through a pair of thermal
//! dimers.
//!
//! With a mixed resource the protocol acts on each qubit as a generalized
//! depolarizing channel whose Pauli probabilities are the Bell-state
//! populations of the resource. The channel density here is always an X
//! state with zero corners, so the two `Phi` populations coincide and the
//! output keeps the X form.

use nalgebra::Matrix4;

use crate::correlations::C64;
use crate::density::DimerDensity;

/// Best average fidelity reachable by measure-and-prepare strategies.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    PsiMinus,
    PhiMinus,
    PhiPlus,
    PsiPlus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// Channel index `i` -> (projector `E^i`, Pauli operator `sigma_i`).
///
/// The resource overlap with `E^i` is the probability that the channel
/// applies `sigma_i`; a perfect `Psi-` resource is the identity channel.
pub const CHANNEL_TABLE: [(BellState, Pauli); 4] = [
    (BellState::PsiMinus, Pauli::I),
    (BellState::PhiMinus, Pauli::X),
    (BellState::PhiPlus, Pauli::Y),
    (BellState::PsiPlus, Pauli::Z),
];

/// `|psi_in> = cos(theta/2)|10> + e^{i phi} sin(theta/2)|01>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputState {
    pub theta: f64,
    pub phi: f64,
}

impl InputState {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Amplitudes on `{|00>, |01>, |10>, |11>}`.
    pub fn amplitudes(&self) -> [C64; 4] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        [
            C64::new(0.0, 0.0),
            C64::from_polar(s, self.phi),
            C64::new(c, 0.0),
            C64::new(0.0, 0.0),
        ]
    }

    /// `|sin theta|`.
    pub fn concurrence(&self) -> f64 {
        self.theta.sin().abs()
    }
}

/// X-form output `[[c,0,0,0],[0,f,chi,0],[0,chi*,g,0],[0,0,0,c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputState {
    pub c: f64,
    pub f: f64,
    pub g: f64,
    pub chi: C64,
}

impl OutputState {
    pub fn to_matrix(&self) -> Matrix4<C64> {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = C64::new(self.c, 0.0);
        m[(1, 1)] = C64::new(self.f, 0.0);
        m[(2, 2)] = C64::new(self.g, 0.0);
        m[(3, 3)] = C64::new(self.c, 0.0);
        m[(1, 2)] = self.chi;
        m[(2, 1)] = self.chi.conj();
        m
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.c + self.f + self.g
    }

    /// `<psi|rho_out|psi>` evaluated from the matrix elements.
    pub fn overlap(&self, input: &InputState) -> f64 {
        let psi = input.amplitudes();
        let m = self.to_matrix();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                acc += psi[i].conj() * m[(i, j)] * psi[j];
            }
        }
        acc.re
    }
}

/// `(r11 + r44, r22 + r33)`.
fn population_sums(rho: &DimerDensity) -> (f64, f64) {
    (rho.r11 + rho.r44, rho.r22 + rho.r33)
}

/// Bell populations `p_i = tr(E^i rho)` in [`CHANNEL_TABLE`] order.
pub fn bell_probabilities(rho: &DimerDensity) -> [f64; 4] {
    let (outer, inner) = population_sums(rho);
    [
        0.5 * inner - rho.r23,
        0.5 * outer,
        0.5 * outer,
        0.5 * inner + rho.r23,
    ]
}

/// Closed-form output of teleporting `input` through two copies of `rho`.
pub fn output_state(rho: &DimerDensity, input: &InputState) -> OutputState {
    let (outer, inner) = population_sums(rho);
    let (s, c) = (0.5 * input.theta).sin_cos();
    let (s2, c2) = (s * s, c * c);
    OutputState {
        c: inner * outer,
        f: outer * outer * c2 + inner * inner * s2,
        g: inner * inner * c2 + outer * outer * s2,
        chi: C64::from_polar(2.0 * rho.r23 * rho.r23 * input.theta.sin(), input.phi),
    }
}

/// Both evaluations of the output concurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputConcurrence {
    /// Wootters concurrence of the output state, `2 max(|chi| - c, 0)`.
    pub wootters: f64,
    /// `2 max(2 r23^2 C_in - 2 |r22| |r11 - r44|, 0)`, kept for comparison.
    pub printed: f64,
}

pub fn concurrence_out(rho: &DimerDensity, input: &InputState) -> OutputConcurrence {
    let out = output_state(rho, input);
    let wootters = (2.0 * (out.chi.norm() - out.c)).max(0.0);
    let printed = (2.0
        * (2.0 * rho.r23 * rho.r23 * input.concurrence()
            - 2.0 * rho.r22.abs() * (rho.r11 - rho.r44).abs()))
    .max(0.0);
    OutputConcurrence { wootters, printed }
}

/// `F = (sin^2 theta / 2) [(r11+r44)^2 + 4 r23^2 - (r22+r33)^2] + (r22+r33)^2`.
pub fn fidelity(rho: &DimerDensity, input: &InputState) -> f64 {
    let (outer, inner) = population_sums(rho);
    let st = input.theta.sin();
    0.5 * st * st * (outer * outer + 4.0 * rho.r23 * rho.r23 - inner * inner) + inner * inner
}

/// Fidelity averaged over the Bloch sphere of inputs.
///
/// `sin^2 theta` averages to `2/3`, giving
/// `F_A = [(r11+r44)^2 + 4 r23^2 - (r22+r33)^2] / 3 + (r22+r33)^2`.
pub fn average_fidelity(rho: &DimerDensity) -> f64 {
    let (outer, inner) = population_sums(rho);
    (outer * outer + 4.0 * rho.r23 * rho.r23 - inner * inner) / 3.0 + inner * inner
}

/// Whether `F_A` beats every classical strategy.
pub fn beats_classical(average_fidelity: f64) -> bool {
    average_fidelity > CLASSICAL_FIDELITY
}
