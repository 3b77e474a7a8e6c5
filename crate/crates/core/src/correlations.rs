//! Entanglement and coherence of two-qubit states.

use nalgebra::{Complex, Matrix4, SymmetricEigen};

use crate::density::DimerDensity;
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Trace and positivity tolerance accepted by [`concurrence_general`].
const DENSITY_TOL: f64 = 1e-8;

/// Wootters concurrence of an X state with zero corners:
/// `2 max(|r23| - sqrt(r11 r44), 0)`.
pub fn concurrence_x(rho: &DimerDensity) -> f64 {
    let corner = (rho.r11 * rho.r44).max(0.0).sqrt();
    (2.0 * (rho.r23.abs() - corner)).max(0.0)
}

/// l1-norm of coherence, the sum of off-diagonal magnitudes: `2 |r23|`.
pub fn coherence_l1(rho: &DimerDensity) -> f64 {
    2.0 * rho.r23.abs()
}

/// Spin-flip operator `sigma_y (x) sigma_y`.
fn spin_flip() -> Matrix4<C64> {
    // sigma_y (x) sigma_y is real: anti-diagonal (-1, 1, 1, -1)
    let mut m = Matrix4::zeros();
    m[(0, 3)] = C64::new(-1.0, 0.0);
    m[(1, 2)] = C64::new(1.0, 0.0);
    m[(2, 1)] = C64::new(1.0, 0.0);
    m[(3, 0)] = C64::new(-1.0, 0.0);
    m
}

/// Density eigenvalues below this are rounding noise of a rank-deficient state.
const RANK_TOL: f64 = 1e-14;

fn hermitian_sqrt(rho: &Matrix4<C64>) -> Matrix4<C64> {
    let eig = SymmetricEigen::new(*rho);
    let v = eig.eigenvectors;
    let mut scaled = v;
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let root = if lambda > RANK_TOL {
            lambda.sqrt()
        } else {
            0.0
        };
        for row in 0..4 {
            scaled[(row, k)] *= root;
        }
    }
    scaled * v.adjoint()
}

/// Checks Hermiticity, unit trace and positivity of a 4x4 density matrix.
pub fn validate_density(rho: &Matrix4<C64>) -> Result<()> {
    let asym = (rho - rho.adjoint()).camax();
    if asym > DENSITY_TOL {
        return Err(Error::NotADensityMatrix(format!("non-Hermitian by {asym}")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
        return Err(Error::NotADensityMatrix(format!("trace {tr}")));
    }
    let min = SymmetricEigen::new(*rho)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    if min < -DENSITY_TOL {
        return Err(Error::NotADensityMatrix(format!("eigenvalue {min}")));
    }
    Ok(())
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)` of an arbitrary
/// two-qubit state, where `l_i^2` are the eigenvalues, in decreasing order,
/// of `R = rho (sy sy) rho* (sy sy)`.
///
/// The `l_i` are taken directly as the singular values of
/// `sqrt(rho) (sy sy) sqrt(rho)* (sy sy)`. Squaring first and diagonalizing
/// `R` would turn rounding of order 1e-16 in a vanishing `l_i^2` into an
/// error of order 1e-8 in `l_i`.
pub fn concurrence_general(rho: &Matrix4<C64>) -> Result<f64> {
    validate_density(rho)?;
    let flip = spin_flip();
    let root = hermitian_sqrt(rho);
    let root_tilde = flip * root.map(|z| z.conj()) * flip;
    let mut lambdas: Vec<f64> = (root * root_tilde)
        .singular_values()
        .iter()
        .copied()
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Complex 4x4 form of an X-state density.
pub fn to_complex(rho: &DimerDensity) -> Matrix4<C64> {
    rho.to_matrix().map(|x| C64::new(x, 0.0))
}
