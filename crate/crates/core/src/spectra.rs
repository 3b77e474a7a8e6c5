//! Dimer-block Hamiltonians and their eigensystems.
//!
//! For fixed nodal Ising spins each plaquette reduces to a two-spin XXZ
//! problem on the ordered basis `{|00>, |01>, |10>, |11>}` where `|0>` is
//! spin up (`S^z = +1/2`). The block conserves total `S^z`, so only the
//! `|01>`/`|10>` sector needs a 2x2 diagonalization.
//!
//! The explicit block matrix is the reference; the closed forms below are
//! the fast path and are reconciled against it in tests.

use nalgebra::{Matrix4, SymmetricEigen};

use crate::params::{ChainParams, IsingPair};

const BASIS_DIM: usize = 4;

/// Four levels of one dimer block with their real eigenvectors.
///
/// `eigvecs[k]` is the eigenvector of `energies[k]`, expressed in the
/// ordered product basis. For analytic spectra index 0 is `|00>`, index 3 is
/// `|11>` and indices 1, 2 span the `|01>`/`|10>` sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockSpectrum {
    pub energies: [f64; BASIS_DIM],
    pub eigvecs: [[f64; BASIS_DIM]; BASIS_DIM],
}

impl BlockSpectrum {
    /// `<01|phi_2>`.
    pub fn m_plus(&self) -> f64 {
        self.eigvecs[1][1]
    }

    /// `<10|phi_2>`.
    pub fn n_plus(&self) -> f64 {
        self.eigvecs[1][2]
    }

    pub fn m_minus(&self) -> f64 {
        self.eigvecs[2][1]
    }

    pub fn n_minus(&self) -> f64 {
        self.eigvecs[2][2]
    }

    pub fn min_energy(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Same eigenvectors with every level moved by `offset`.
    pub fn shifted(&self, offset: f64) -> Self {
        let mut out = *self;
        for e in out.energies.iter_mut() {
            *e += offset;
        }
        out
    }
}

/// Generic dimer: `jxy (SxSx + SySy) + jz SzSz + ha Sz_a + hb Sz_b + constant`.
fn dimer_block(jxy: f64, jz: f64, field_a: f64, field_b: f64, constant: f64) -> Matrix4<f64> {
    let mut h = Matrix4::zeros();
    h[(0, 0)] = jz / 4.0 + (field_a + field_b) / 2.0 + constant;
    h[(1, 1)] = -jz / 4.0 + (field_a - field_b) / 2.0 + constant;
    h[(2, 2)] = -jz / 4.0 - (field_a - field_b) / 2.0 + constant;
    h[(3, 3)] = jz / 4.0 - (field_a + field_b) / 2.0 + constant;
    h[(1, 2)] = jxy / 2.0;
    h[(2, 1)] = jxy / 2.0;
    h
}

/// Host plaquette Hamiltonian for the nodal pair `s`.
pub fn build_host_block(p: &ChainParams, s: IsingPair) -> Matrix4<f64> {
    let mu = s.sum();
    let field = p.j0 * mu - p.b;
    dimer_block(p.j, p.j * p.delta, field, field, -0.5 * p.b * mu)
}

/// Impurity plaquette Hamiltonian for the nodal pair `s`.
///
/// Spin `a` couples with `J1` to the left nodal spin and `J2` to the right
/// one; spin `b` the other way round. The Zeeman term acts on both
/// Heisenberg spins, `-B (Sz_a + Sz_b)`.
pub fn build_impurity_block(p: &ChainParams, s: IsingPair) -> Matrix4<f64> {
    let (ml, mr) = (s.mu_left(), s.mu_right());
    let (j1, j2) = (p.j1(), p.j2());
    let j_imp = p.j_imp();
    dimer_block(
        j_imp,
        j_imp * p.delta_imp(),
        j1 * ml + j2 * mr - p.b,
        j1 * mr + j2 * ml - p.b,
        -0.5 * p.b * s.sum(),
    )
}

/// Closed-form spectrum of the host block.
///
/// `e1,4 = J Delta/4 +- J0 (mu+mu') -+ B - (B/2)(mu+mu')` for `|00>`, `|11>`
/// and `e2,3 = -J Delta/4 +- J/2 - (B/2)(mu+mu')` for `(|01> +- |10>)/sqrt 2`.
/// The fully polarized levels shift by the whole `-+B` of the two-spin
/// Zeeman term, as the block matrix dictates.
pub fn eval_host_energies(p: &ChainParams, s: IsingPair) -> BlockSpectrum {
    let mu = s.sum();
    let jz = p.j * p.delta / 4.0;
    let nodal = -0.5 * p.b * mu;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    BlockSpectrum {
        energies: [
            jz + p.j0 * mu - p.b + nodal,
            -jz + p.j / 2.0 + nodal,
            -jz - p.j / 2.0 + nodal,
            jz - p.j0 * mu + p.b + nodal,
        ],
        eigvecs: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, r, r, 0.0],
            [0.0, r, -r, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    }
}

/// Mixing coefficients `(M+, N+, M-, N-)` of the `|01>`/`|10>` sector with
/// diagonal splitting `sigma` and hopping `j_imp`.
///
/// Evaluated as `M+ = sgn(J~) sqrt((R+S)/2R)`, `N+ = sqrt((R-S)/2R)`,
/// `M- = sgn(J~) sqrt((R-S)/2R)`, `N- = -sqrt((R+S)/2R)` with
/// `R = sqrt(S^2 + J~^2)`. This equals the ratio form
/// `M+- = J~ / sqrt(2J~^2 + 2S^2 -+ 2S R)` without its `0/0` at `J~ = 0`
/// and the cancellation in `R - S` when `|J~| << |S|`.
fn sector_mixing(sigma: f64, j_imp: f64) -> (f64, f64, f64, f64) {
    let r = sigma.hypot(j_imp);
    if r == 0.0 {
        return (1.0, 0.0, 0.0, 1.0);
    }
    if sigma == 0.0 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let sgn = if j_imp < 0.0 { -1.0 } else { 1.0 };
        return (sgn * h, h, sgn * h, -h);
    }
    let (r_plus, r_minus) = if sigma > 0.0 {
        let rp = r + sigma;
        (rp, j_imp * j_imp / rp)
    } else {
        let rm = r - sigma;
        (j_imp * j_imp / rm, rm)
    };
    let sgn = if j_imp < 0.0 { -1.0 } else { 1.0 };
    let big = (r_plus / (2.0 * r)).sqrt();
    let small = (r_minus / (2.0 * r)).sqrt();
    (sgn * big, small, sgn * small, -big)
}

/// Closed-form spectrum of the impurity block.
///
/// `e~2,3 = -J~ Delta~/4 - (B/2)(mu+mu') +- sqrt(S^2 + J~^2)/2` with
/// `S = (J1 - J2)(mu - mu')`, eigenvectors `M+- |01> + N+- |10>`.
pub fn eval_impurity_energies(p: &ChainParams, s: IsingPair) -> BlockSpectrum {
    let mu = s.sum();
    let (j1, j2) = (p.j1(), p.j2());
    let j_imp = p.j_imp();
    let jz = j_imp * p.delta_imp() / 4.0;
    let nodal = -0.5 * p.b * mu;
    let sigma = (j1 - j2) * (s.mu_left() - s.mu_right());
    let half_gap = 0.5 * sigma.hypot(j_imp);
    let ising = 0.5 * (j1 + j2) * mu;
    let (mp, np, mm, nm) = sector_mixing(sigma, j_imp);
    BlockSpectrum {
        energies: [
            jz + ising - p.b + nodal,
            -jz + nodal + half_gap,
            -jz + nodal - half_gap,
            jz - ising + p.b + nodal,
        ],
        eigvecs: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, mp, np, 0.0],
            [0.0, mm, nm, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    }
}

/// Numerical eigensystem of a real symmetric 4x4 block, energies ascending.
pub fn diagonalize(block: &Matrix4<f64>) -> BlockSpectrum {
    let eig = SymmetricEigen::new(*block);
    let mut order: Vec<usize> = (0..BASIS_DIM).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut out = BlockSpectrum {
        energies: [0.0; BASIS_DIM],
        eigvecs: [[0.0; BASIS_DIM]; BASIS_DIM],
    };
    for (k, &col) in order.iter().enumerate() {
        out.energies[k] = eig.eigenvalues[col];
        for row in 0..BASIS_DIM {
            out.eigvecs[k][row] = eig.eigenvectors[(row, col)];
        }
    }
    out
}

/// Rebuilds `sum_k e_k |v_k><v_k|`, for checking a spectrum against its block.
pub fn reconstruct(spec: &BlockSpectrum) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for (e, v) in spec.energies.iter().zip(spec.eigvecs.iter()) {
        for i in 0..BASIS_DIM {
            for j in 0..BASIS_DIM {
                m[(i, j)] += e * v[i] * v[j];
            }
        }
    }
    m
}
