//! Brute-force references for the closed-form paths.
//!
//! Nothing here calls into the spectra, transfer, density or teleportation
//! formulas. Block Hamiltonians are assembled from explicit spin-1/2
//! operators, exponentiated through a numerical eigensolver, and the chain
//! is summed configuration by configuration.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};

use crate::correlations::C64;
use crate::density::DimerDensity;
use crate::error::{Error, Result};
use crate::params::ChainParams;
use crate::teleport::{BellState, InputState, Pauli, CHANNEL_TABLE};

/// Largest ring handled by exhaustive enumeration.
pub const MAX_PLAQUETTES: usize = 20;

const GAUSS_NODES: usize = 64;
const PHI_NODES: usize = 64;

fn kron2(a: &Matrix2<f64>, b: &Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    m
}

/// Block Hamiltonian built from `S = sigma/2` operators.
fn spin_hamiltonian(jxy: f64, jz: f64, field_a: f64, field_b: f64, constant: f64) -> Matrix4<f64> {
    // S^y (x) S^y is real: (i sy/2)(x)(i sy/2) with a sign
    let sx = Matrix2::new(0.0, 0.5, 0.5, 0.0);
    let isy = Matrix2::new(0.0, 0.5, -0.5, 0.0);
    let sz = Matrix2::new(0.5, 0.0, 0.0, -0.5);
    let id = Matrix2::identity();
    let sysy = -kron2(&isy, &isy);
    kron2(&sx, &sx) * jxy
        + sysy * jxy
        + kron2(&sz, &sz) * jz
        + kron2(&sz, &id) * field_a
        + kron2(&id, &sz) * field_b
        + Matrix4::identity() * constant
}

/// Host plaquette for nodal spins `left`, `right` in `{+1/2, -1/2}`.
pub fn host_block(p: &ChainParams, left: f64, right: f64) -> Matrix4<f64> {
    let mu = left + right;
    let field = p.j0 * mu - p.b;
    spin_hamiltonian(p.j, p.j * p.delta, field, field, -0.5 * p.b * mu)
}

/// Impurity plaquette for nodal spins `left`, `right`.
pub fn impurity_block(p: &ChainParams, left: f64, right: f64) -> Matrix4<f64> {
    let j1 = p.j0 * (1.0 + p.eta);
    let j2 = p.j0 * (1.0 + p.gamma);
    let jt = p.j * (1.0 + p.alpha);
    let dt = p.delta * (1.0 + p.omega);
    spin_hamiltonian(
        jt,
        jt * dt,
        j1 * left + j2 * right - p.b,
        j1 * right + j2 * left - p.b,
        -0.5 * p.b * (left + right),
    )
}

fn spin_value(up: bool) -> f64 {
    if up {
        0.5
    } else {
        -0.5
    }
}

/// Numerically diagonalized block, exponentiated around a reference energy.
struct ThermalBlock {
    energies: [f64; 4],
    vectors: Matrix4<f64>,
}

impl ThermalBlock {
    fn new(h: Matrix4<f64>) -> Self {
        let eig = SymmetricEigen::new(h);
        Self {
            energies: [
                eig.eigenvalues[0],
                eig.eigenvalues[1],
                eig.eigenvalues[2],
                eig.eigenvalues[3],
            ],
            vectors: eig.eigenvectors,
        }
    }

    fn ground(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn exp_matrix(&self, beta: f64, reference: f64) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        for k in 0..4 {
            let w = (-beta * (self.energies[k] - reference)).exp();
            let v = self.vectors.column(k);
            m += v * v.transpose() * w;
        }
        m
    }
}

/// Thermal operators for every nodal pair, indexed `[left_up][right_up]`.
struct RingModel {
    beta: f64,
    reference: f64,
    host_weight: [[f64; 2]; 2],
    impurity_weight: [[f64; 2]; 2],
    impurity_state: [[Matrix4<f64>; 2]; 2],
}

impl RingModel {
    fn new(p: &ChainParams) -> Result<Self> {
        if !(p.t.is_finite() && p.t > 0.0) {
            return Err(Error::NonPositiveTemperature(p.t));
        }
        let beta = 1.0 / p.t;
        let blocks = |imp: bool| {
            [false, true].map(|l| {
                [false, true].map(|r| {
                    let (ml, mr) = (spin_value(l), spin_value(r));
                    ThermalBlock::new(if imp {
                        impurity_block(p, ml, mr)
                    } else {
                        host_block(p, ml, mr)
                    })
                })
            })
        };
        let host = blocks(false);
        let imp = blocks(true);
        let reference = host
            .iter()
            .chain(imp.iter())
            .flatten()
            .map(ThermalBlock::ground)
            .fold(f64::INFINITY, f64::min);
        let host_weight = host.each_ref().map(|row| {
            row.each_ref()
                .map(|b| b.exp_matrix(beta, reference).trace())
        });
        let impurity_state = imp
            .each_ref()
            .map(|row| row.each_ref().map(|b| b.exp_matrix(beta, reference)));
        let impurity_weight = impurity_state
            .each_ref()
            .map(|row| row.each_ref().map(|m| m.trace()));
        Ok(Self {
            beta,
            reference,
            host_weight,
            impurity_weight,
            impurity_state,
        })
    }

    /// Nodal spins of configuration `bits`; plaquette `i` joins spins `i` and `i+1 mod n`.
    fn spins(bits: u32, n: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..n).map(move |i| {
            let l = (bits >> i) & 1;
            let r = (bits >> ((i + 1) % n)) & 1;
            (l as usize, r as usize)
        })
    }

    /// Log weight of the host plaquettes 1..n of configuration `bits`.
    fn log_host_weight(&self, bits: u32, n: usize) -> f64 {
        Self::spins(bits, n)
            .skip(1)
            .map(|(l, r)| self.host_weight[l][r].ln())
            .sum()
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroPlaquettes);
    }
    if n > MAX_PLAQUETTES {
        return Err(Error::ChainTooLarge {
            got: n,
            max: MAX_PLAQUETTES,
        });
    }
    Ok(())
}

/// Pairwise sum, fixed reduction order.
fn tree_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        len => {
            let (a, b) = values.split_at(len / 2);
            tree_sum(a) + tree_sum(b)
        }
    }
}

/// `log Z` of a periodic ring of `n` plaquettes whose first plaquette is the
/// impurity, by summing all `2^n` nodal configurations.
pub fn enumerate_partition(p: &ChainParams, n: usize) -> Result<f64> {
    check_size(n)?;
    let model = RingModel::new(p)?;
    let logs: Vec<f64> = (0..1u32 << n)
        .map(|bits| {
            let (l, r) = RingModel::spins(bits, n).next().unwrap();
            model.impurity_weight[l][r].ln() + model.log_host_weight(bits, n)
        })
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = logs.iter().map(|x| (x - top).exp()).collect();
    Ok(top + tree_sum(&scaled).ln() - model.beta * model.reference * n as f64)
}

/// Exact reduced density of the impurity dimer in a ring of `n` plaquettes.
pub fn enumerate_impurity_density(p: &ChainParams, n: usize) -> Result<DimerDensity> {
    check_size(n)?;
    let model = RingModel::new(p)?;
    let configs: Vec<(usize, usize, f64)> = (0..1u32 << n)
        .map(|bits| {
            let (l, r) = RingModel::spins(bits, n).next().unwrap();
            (l, r, model.log_host_weight(bits, n))
        })
        .collect();
    let top = configs
        .iter()
        .map(|&(l, r, lw)| lw + model.impurity_weight[l][r].ln())
        .fold(f64::NEG_INFINITY, f64::max);
    let mut acc = Matrix4::<f64>::zeros();
    for &(l, r, lw) in &configs {
        acc += model.impurity_state[l][r] * (lw - top).exp();
    }
    let acc = acc / acc.trace();
    Ok(DimerDensity::new(
        acc[(0, 0)],
        acc[(1, 1)],
        acc[(2, 2)],
        acc[(3, 3)],
        0.5 * (acc[(1, 2)] + acc[(2, 1)]),
    ))
}

fn pauli(op: Pauli) -> [[C64; 2]; 2] {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match op {
        Pauli::I => [[one, z], [z, one]],
        Pauli::X => [[z, one], [one, z]],
        Pauli::Y => [[z, -i], [i, z]],
        Pauli::Z => [[one, z], [z, -one]],
    }
}

fn pauli_pair(a: Pauli, b: Pauli) -> Matrix4<C64> {
    let (pa, pb) = (pauli(a), pauli(b));
    Matrix4::from_fn(|row, col| pa[row / 2][col / 2] * pb[row % 2][col % 2])
}

fn bell_vector(state: BellState) -> [C64; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (z, pos, neg) = (C64::new(0.0, 0.0), C64::new(h, 0.0), C64::new(-h, 0.0));
    match state {
        BellState::PhiPlus => [pos, z, z, pos],
        BellState::PhiMinus => [pos, z, z, neg],
        BellState::PsiPlus => [z, pos, pos, z],
        BellState::PsiMinus => [z, pos, neg, z],
    }
}

fn expectation(m: &Matrix4<C64>, v: &[C64; 4]) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            acc += v[i].conj() * m[(i, j)] * v[j];
        }
    }
    acc
}

fn channel_probabilities(rho: &DimerDensity) -> [f64; 4] {
    let m = rho.to_matrix().map(|x| C64::new(x, 0.0));
    CHANNEL_TABLE.map(|(bell, _)| expectation(&m, &bell_vector(bell)).re)
}

/// `sum_ij p_i p_j (s_i (x) s_j) rho_in (s_i (x) s_j)` with explicit Pauli
/// matrices and Bell-projector probabilities.
pub fn channel_sum(rho: &DimerDensity, input: &InputState) -> Matrix4<C64> {
    let probs = channel_probabilities(rho);
    let psi = input.amplitudes();
    let rho_in = Matrix4::from_fn(|i, j| psi[i] * psi[j].conj());
    let mut out = Matrix4::zeros();
    for (i, &(_, si)) in CHANNEL_TABLE.iter().enumerate() {
        for (j, &(_, sj)) in CHANNEL_TABLE.iter().enumerate() {
            let op = pauli_pair(si, sj);
            out += (op * rho_in * op) * C64::new(probs[i] * probs[j], 0.0);
        }
    }
    out
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut derivative = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            derivative = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / derivative;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        out.push((x, w));
    }
    out
}

/// `(1/4 pi) int dphi int F sin(theta) dtheta` with `F = <psi|rho_out|psi>`
/// from [`channel_sum`]'s Pauli expansion; Gauss-Legendre in `cos theta`
/// and a uniform grid in `phi`.
pub fn quadrature_average_fidelity(rho: &DimerDensity) -> f64 {
    let probs = channel_probabilities(rho);
    let ops: Vec<(f64, Matrix4<C64>)> = CHANNEL_TABLE
        .iter()
        .enumerate()
        .flat_map(|(i, &(_, si))| {
            CHANNEL_TABLE
                .iter()
                .enumerate()
                .map(move |(j, &(_, sj))| (i, j, si, sj))
        })
        .map(|(i, j, si, sj)| (probs[i] * probs[j], pauli_pair(si, sj)))
        .collect();
    let nodes = gauss_legendre(GAUSS_NODES);
    let dphi = 2.0 * std::f64::consts::PI / PHI_NODES as f64;
    let mut total = 0.0;
    for k in 0..PHI_NODES {
        let phi = k as f64 * dphi;
        let ring: Vec<f64> = nodes
            .iter()
            .map(|&(x, w)| {
                let psi = InputState::new(x.acos(), phi).amplitudes();
                // <psi|rho_out|psi> = sum_ij p_i p_j |<psi|s_i s_j|psi>|^2
                let f: f64 = ops
                    .iter()
                    .map(|(prob, op)| prob * expectation(op, &psi).norm_sqr())
                    .sum();
                w * f
            })
            .collect();
        total += tree_sum(&ring) * dphi;
    }
    total / (4.0 * std::f64::consts::PI)
}
