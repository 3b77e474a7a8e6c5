//! Columns a sweep can emit.

use std::fmt;
use std::str::FromStr;

use diamond_chain::teleport::concurrence_out;
use diamond_chain::{average_fidelity, coherence_l1, concurrence_x, DimerDensity, InputState};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Impurity,
    Host,
}

impl Model {
    pub fn suffix(self) -> &'static str {
        match self {
            Model::Impurity => "imp",
            Model::Host => "host",
        }
    }
}

impl FromStr for Model {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "imp" | "impurity" => Ok(Model::Impurity),
            "host" => Ok(Model::Host),
            _ => Err(CliError::UnknownModel(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// Concurrence of the dimer density.
    C,
    /// l1-norm coherence.
    Cl1,
    /// Average teleportation fidelity.
    Fa,
    /// Concurrence of the teleported state for the sweep's input angles.
    Cout,
    /// The five stored density elements.
    Rho,
}

/// One quantity of one model, e.g. `C_imp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Observable {
    pub quantity: Quantity,
    pub model: Model,
}

const RHO_NAMES: [&str; 5] = ["r11", "r22", "r33", "r44", "r23"];

impl Observable {
    pub fn new(quantity: Quantity, model: Model) -> Self {
        Self { quantity, model }
    }

    /// Header cells of this observable.
    pub fn columns(&self) -> Vec<String> {
        let m = self.model.suffix();
        match self.quantity {
            Quantity::C => vec![format!("C_{m}")],
            Quantity::Cl1 => vec![format!("Cl1_{m}")],
            Quantity::Fa => vec![format!("FA_{m}")],
            Quantity::Cout => vec![format!("Cout_{m}")],
            Quantity::Rho => RHO_NAMES.iter().map(|r| format!("{r}_{m}")).collect(),
        }
    }

    /// Values of this observable for a channel density, in column order.
    pub fn values(&self, rho: &DimerDensity, input: &InputState) -> Vec<f64> {
        match self.quantity {
            Quantity::C => vec![concurrence_x(rho)],
            Quantity::Cl1 => vec![coherence_l1(rho)],
            Quantity::Fa => vec![average_fidelity(rho)],
            Quantity::Cout => vec![concurrence_out(rho, input).wootters],
            Quantity::Rho => vec![rho.r11, rho.r22, rho.r33, rho.r44, rho.r23],
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.quantity {
            Quantity::C => "C",
            Quantity::Cl1 => "Cl1",
            Quantity::Fa => "FA",
            Quantity::Cout => "Cout",
            Quantity::Rho => "rho_elements",
        };
        write!(f, "{name}_{}", self.model.suffix())
    }
}

fn quantity(name: &str) -> Option<Quantity> {
    match name {
        "C" => Some(Quantity::C),
        "Cl1" => Some(Quantity::Cl1),
        "FA" => Some(Quantity::Fa),
        "Cout" => Some(Quantity::Cout),
        "rho" | "rho_elements" => Some(Quantity::Rho),
        _ => None,
    }
}

/// Parses a comma list such as `C,Cl1_imp,FA_host`. A bare quantity name
/// expands to its impurity and host columns.
pub fn parse_observables(list: &str) -> Result<Vec<Observable>, CliError> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some(q) = quantity(item) {
            out.push(Observable::new(q, Model::Impurity));
            out.push(Observable::new(q, Model::Host));
            continue;
        }
        let parsed = item.rsplit_once('_').and_then(|(head, tail)| {
            let q = quantity(head)?;
            let m = tail.parse::<Model>().ok()?;
            Some(Observable::new(q, m))
        });
        out.push(parsed.ok_or_else(|| CliError::UnknownObservable(item.to_string()))?);
    }
    if out.is_empty() {
        return Err(CliError::UnknownObservable(list.to_string()));
    }
    Ok(out)
}
