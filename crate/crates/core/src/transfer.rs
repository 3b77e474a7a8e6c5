//! Boltzmann weights, the 2x2 transfer matrices and the partition function.
//!
//! Host weights are built from energies measured relative to the lowest host
//! level and impurity weights relative to the lowest impurity level, so every
//! exponent is non-positive and the largest weight of each kind is at least
//! one. Absolute partition functions are only exposed through their logarithm.

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::params::{ChainParams, IsingPair};
use crate::spectra::{eval_host_energies, eval_impurity_energies, BlockSpectrum};

/// Weights below this discriminant are treated as the degenerate `W = w I` case.
pub(crate) const DEGENERATE_Q: f64 = 1e-300;

/// Relative tolerance for the reflection symmetry `w(+,-) = w(-,+)`.
const SYMMETRY_TOL: f64 = 1e-12;

/// Host and impurity block spectra for the four nodal pairs, in
/// [`IsingPair::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpectra {
    pub host: [BlockSpectrum; 4],
    pub impurity: [BlockSpectrum; 4],
}

impl ChainSpectra {
    /// Closed-form spectra of the chain with its impurity plaquette.
    pub fn new(p: &ChainParams) -> Self {
        Self {
            host: IsingPair::ALL.map(|s| eval_host_energies(p, s)),
            impurity: IsingPair::ALL.map(|s| eval_impurity_energies(p, s)),
        }
    }

    /// Original model: the tracked plaquette is an ordinary host plaquette.
    pub fn uniform_host(p: &ChainParams) -> Self {
        let host = IsingPair::ALL.map(|s| eval_host_energies(p, s));
        Self {
            host,
            impurity: host,
        }
    }

    /// Ground levels `(host, impurity)` over the four blocks of each kind.
    pub fn min_energies(&self) -> (f64, f64) {
        let lowest = |blocks: &[BlockSpectrum; 4]| {
            blocks
                .iter()
                .map(BlockSpectrum::min_energy)
                .fold(f64::INFINITY, f64::min)
        };
        (lowest(&self.host), lowest(&self.impurity))
    }

    /// Every level of every block moved by `offset`.
    pub fn shifted(&self, offset: f64) -> Self {
        Self {
            host: self.host.map(|b| b.shifted(offset)),
            impurity: self.impurity.map(|b| b.shifted(offset)),
        }
    }
}

/// `sum_j exp(-beta (e_j - shift))` over the four levels of a block.
pub fn block_weight(spec: &BlockSpectrum, beta: f64, shift: f64) -> f64 {
    spec.energies
        .iter()
        .map(|e| (-beta * (e - shift)).exp())
        .sum()
}

/// Transfer-matrix data of the chain at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferData {
    pub w_pp: f64,
    pub w_mm: f64,
    pub w_pm: f64,
    pub wt_pp: f64,
    pub wt_mm: f64,
    pub wt_pm: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// Discriminant `sqrt((w_pp - w_mm)^2 + 4 w_pm^2)`.
    pub q: f64,
    pub a: f64,
    pub d: f64,
    /// Energy subtracted from every host level before exponentiation.
    pub shift: f64,
    /// Energy subtracted from every impurity level.
    pub impurity_shift: f64,
    pub beta: f64,
}

fn symmetric_pair(pm: f64, mp: f64) -> Result<f64> {
    let scale = pm.abs().max(mp.abs());
    if (pm - mp).abs() > SYMMETRY_TOL * scale {
        return Err(Error::AsymmetricWeights { pm, mp });
    }
    Ok(pm)
}

impl TransferData {
    /// Builds the transfer data from already shifted weights given in
    /// [`IsingPair::ALL`] order.
    pub fn from_weights(
        host: [f64; 4],
        impurity: [f64; 4],
        beta: f64,
        (shift, impurity_shift): (f64, f64),
    ) -> Result<Self> {
        let w_pm = symmetric_pair(host[1], host[2])?;
        let wt_pm = symmetric_pair(impurity[1], impurity[2])?;
        let (w_pp, w_mm) = (host[0], host[3]);
        let (wt_pp, wt_mm) = (impurity[0], impurity[3]);

        let q = (w_pp - w_mm).hypot(2.0 * w_pm);
        let lambda_plus = 0.5 * (w_pp + w_mm + q);
        let lambda_minus = 0.5 * (w_pp + w_mm - q);

        let (a, d) = if q < DEGENERATE_Q {
            let half = 0.5 * (wt_pp + wt_mm);
            (half, half)
        } else {
            let (q_plus, q_minus) = split_discriminant(w_pp, w_mm, w_pm, q);
            let cross = 4.0 * w_pm * wt_pm;
            (
                (wt_pp * q_plus + wt_mm * q_minus + cross) / (2.0 * q),
                (wt_pp * q_minus + wt_mm * q_plus - cross) / (2.0 * q),
            )
        };

        Ok(Self {
            w_pp,
            w_mm,
            w_pm,
            wt_pp,
            wt_mm,
            wt_pm,
            lambda_plus,
            lambda_minus,
            q,
            a,
            d,
            shift,
            impurity_shift,
            beta,
        })
    }

    /// Weights of `spectra` at inverse temperature `beta`, each kind shifted
    /// by its own ground level.
    pub fn from_spectra(spectra: &ChainSpectra, beta: f64) -> Result<Self> {
        let (host_min, imp_min) = spectra.min_energies();
        let host = spectra.host.map(|b| block_weight(&b, beta, host_min));
        let imp = spectra.impurity.map(|b| block_weight(&b, beta, imp_min));
        Self::from_weights(host, imp, beta, (host_min, imp_min))
    }

    pub fn host_matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.w_pp, self.w_pm, self.w_pm, self.w_mm)
    }

    pub fn impurity_matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.wt_pp, self.wt_pm, self.wt_pm, self.wt_mm)
    }

    /// `(Q + (w_pp - w_mm), Q - (w_pp - w_mm))`, both non-negative.
    ///
    /// These are `2Q` times the squared components of the Perron vector of
    /// `W`; the smaller one is formed as `4 w_pm^2` over the larger so it
    /// keeps full relative precision.
    pub fn perron_split(&self) -> (f64, f64) {
        split_discriminant(self.w_pp, self.w_mm, self.w_pm, self.q)
    }

    /// `log Tr(W~ W^(n-1))` in shifted units.
    pub fn log_trace_shifted(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::ZeroPlaquettes);
        }
        let (power, log_scale) = scaled_power(&self.host_matrix(), n - 1);
        Ok((self.impurity_matrix() * power).trace().ln() + log_scale)
    }

    /// `beta` times the energy removed from a ring of `n` plaquettes by the shifts.
    fn removed(&self, n: usize) -> f64 {
        self.beta * (self.impurity_shift + self.shift * (n - 1) as f64)
    }

    /// Exact `log Z` of a ring of `n` plaquettes.
    pub fn log_partition_finite(&self, n: usize) -> Result<f64> {
        Ok(self.log_trace_shifted(n)? - self.removed(n))
    }

    /// `log Z` of the ring in the large-`n` form `a Lambda+^(n-1)`.
    pub fn log_partition_limit(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::ZeroPlaquettes);
        }
        Ok(self.a.ln() + (n - 1) as f64 * self.lambda_plus.ln() - self.removed(n))
    }
}

fn split_discriminant(w_pp: f64, w_mm: f64, w_pm: f64, q: f64) -> (f64, f64) {
    let diff = w_pp - w_mm;
    let off = 4.0 * w_pm * w_pm;
    if diff >= 0.0 {
        let big = q + diff;
        (big, if big > 0.0 { off / big } else { 0.0 })
    } else {
        let big = q - diff;
        (off / big, big)
    }
}

/// `m^k` as `(matrix, log_scale)` with the matrix renormalized to unit
/// max-entry after every product.
pub(crate) fn scaled_power(m: &Matrix2<f64>, mut k: usize) -> (Matrix2<f64>, f64) {
    let mut result = Matrix2::identity();
    let mut log_result = 0.0;
    let mut base = *m;
    let mut log_base = 0.0;
    loop {
        if k & 1 == 1 {
            result *= base;
            log_result += log_base;
            let s: f64 = result.amax();
            result /= s;
            log_result += s.ln();
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        base *= base;
        log_base *= 2.0;
        let s = base.amax();
        base /= s;
        log_base += s.ln();
    }
    (result, log_result)
}

/// Transfer data of `p` with its impurity plaquette.
pub fn boltzmann_weights(p: &ChainParams) -> Result<TransferData> {
    p.validate()?;
    TransferData::from_spectra(&ChainSpectra::new(p), p.beta())
}

/// Exact `log Z` of a periodic ring of `n` plaquettes, one of them the impurity.
pub fn partition_function_finite(p: &ChainParams, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroPlaquettes);
    }
    boltzmann_weights(p)?.log_partition_finite(n)
}

/// Relative distance between the finite ring and its large-`n` form at one size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitGap {
    pub n: usize,
    /// `|Z_n - a Lambda+^(n-1)| / Z_n`.
    pub gap: f64,
}

/// Convergence of the finite-ring partition function to `a Lambda+^(n-1)`.
///
/// The subleading term is `d Lambda-^(n-1)`, so with `|Lambda-| < Lambda+`
/// and `a > 0` the gap shrinks geometrically with ratio `|Lambda-|/Lambda+`.
pub fn check_thermo_limit(p: &ChainParams, sizes: &[usize]) -> Result<Vec<LimitGap>> {
    thermo_limit_gaps(&boltzmann_weights(p)?, sizes)
}

pub fn thermo_limit_gaps(td: &TransferData, sizes: &[usize]) -> Result<Vec<LimitGap>> {
    sizes
        .iter()
        .map(|&n| {
            let exact = td.log_trace_shifted(n)?;
            let limit = td.a.ln() + (n - 1) as f64 * td.lambda_plus.ln();
            Ok(LimitGap {
                n,
                gap: (1.0 - (limit - exact).exp()).abs(),
            })
        })
        .collect()
}
