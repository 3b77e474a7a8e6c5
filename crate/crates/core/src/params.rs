//! Model parameters of the diamond chain and the Ising-spin labels of a plaquette.

use crate::error::{Error, Result};

/// Couplings, field and temperature of the host chain and its impurity plaquette.
///
/// Energies are in units where `k_B = 1`. The impurity couplings are stored as
/// dimensionless distortions of the host ones and derived on demand:
/// `J1 = J0 (1 + eta)`, `J2 = J0 (1 + gamma)`, `J~ = J (1 + alpha)`,
/// `Delta~ = Delta (1 + omega)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    /// XY exchange between the two Heisenberg spins of a plaquette.
    pub j: f64,
    /// XXZ anisotropy of the host dimers.
    pub delta: f64,
    /// Ising coupling between nodal and interstitial spins.
    pub j0: f64,
    /// Longitudinal magnetic field.
    pub b: f64,
    /// Temperature.
    pub t: f64,
    pub alpha: f64,
    pub eta: f64,
    pub gamma: f64,
    pub omega: f64,
}

impl Default for ChainParams {
    fn default() -> Self {
        Self {
            j: 1.0,
            delta: 1.0,
            j0: 1.0,
            b: 0.0,
            t: 1.0,
            alpha: 0.0,
            eta: 0.0,
            gamma: 0.0,
            omega: 0.0,
        }
    }
}

impl ChainParams {
    /// Ising coupling of the impurity's left nodal spin to Heisenberg spin `a`.
    pub fn j1(&self) -> f64 {
        self.j0 * (1.0 + self.eta)
    }

    pub fn j2(&self) -> f64 {
        self.j0 * (1.0 + self.gamma)
    }

    /// XY exchange inside the impurity dimer.
    pub fn j_imp(&self) -> f64 {
        self.j * (1.0 + self.alpha)
    }

    /// Anisotropy inside the impurity dimer.
    pub fn delta_imp(&self) -> f64 {
        self.delta * (1.0 + self.omega)
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.t
    }

    /// Same chain with every impurity distortion set to zero (the original model).
    pub fn host_limit(&self) -> Self {
        Self {
            alpha: 0.0,
            eta: 0.0,
            gamma: 0.0,
            omega: 0.0,
            ..*self
        }
    }

    pub fn with_temperature(&self, t: f64) -> Self {
        Self { t, ..*self }
    }

    pub fn with_field(&self, b: f64) -> Self {
        Self { b, ..*self }
    }

    /// Checks finiteness of every field and `T > 0`.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("J", self.j),
            ("Delta", self.delta),
            ("J0", self.j0),
            ("B", self.b),
            ("alpha", self.alpha),
            ("eta", self.eta),
            ("gamma", self.gamma),
            ("Omega", self.omega),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::NonFiniteParameter { name, value });
            }
        }
        if !(self.t.is_finite() && self.t > 0.0) {
            return Err(Error::NonPositiveTemperature(self.t));
        }
        Ok(())
    }
}

/// Values of the two nodal Ising spins bracketing one plaquette.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsingPair {
    UpUp,
    UpDown,
    DownUp,
    DownDown,
}

impl IsingPair {
    /// Transfer-matrix order: `(+,+), (+,-), (-,+), (-,-)`.
    pub const ALL: [IsingPair; 4] = [
        IsingPair::UpUp,
        IsingPair::UpDown,
        IsingPair::DownUp,
        IsingPair::DownDown,
    ];

    pub fn from_spins(left_up: bool, right_up: bool) -> Self {
        match (left_up, right_up) {
            (true, true) => IsingPair::UpUp,
            (true, false) => IsingPair::UpDown,
            (false, true) => IsingPair::DownUp,
            (false, false) => IsingPair::DownDown,
        }
    }

    pub fn mu_left(self) -> f64 {
        match self {
            IsingPair::UpUp | IsingPair::UpDown => 0.5,
            IsingPair::DownUp | IsingPair::DownDown => -0.5,
        }
    }

    pub fn mu_right(self) -> f64 {
        match self {
            IsingPair::UpUp | IsingPair::DownUp => 0.5,
            IsingPair::UpDown | IsingPair::DownDown => -0.5,
        }
    }

    pub fn sum(self) -> f64 {
        self.mu_left() + self.mu_right()
    }

    /// Position in [`IsingPair::ALL`].
    pub fn index(self) -> usize {
        match self {
            IsingPair::UpUp => 0,
            IsingPair::UpDown => 1,
            IsingPair::DownUp => 2,
            IsingPair::DownDown => 3,
        }
    }

    /// The pair with left and right spins exchanged.
    pub fn reversed(self) -> Self {
        match self {
            IsingPair::UpDown => IsingPair::DownUp,
            IsingPair::DownUp => IsingPair::UpDown,
            same => same,
        }
    }
}
