//! Zitterbewegung laboratory.
//!
//! Closed-form zitterbewegung observables for Dirac wave packets in
//! commutative and noncommutative phase space, 3+1D Landau spectra and
//! graphene 2+1D series, each paired with an independent numerical oracle.

pub mod constants;
pub mod dirac_packet;
pub mod error;
pub mod graphene;
pub mod hermite;
pub mod landau;
pub mod nc_moment;
pub mod nc_phase_space;
pub mod quadrature;
pub mod spinor;
pub mod units;
pub mod zbw;

pub use constants::{load_constants, PhysicalConstants};
pub use error::{Error, Result};
pub use units::{convert, Dimension, Quantity, UnitFrame};

pub type Vector3 = nalgebra::Vector3<f64>;

/// Spin orientation of the initial packet along z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// +1 for up, −1 for down.
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

impl std::str::FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "up" | "+" | "+1" => Ok(Spin::Up),
            "down" | "-" | "-1" => Ok(Spin::Down),
            other => Err(error::Error::InvalidParameter {
                name: "spin",
                reason: format!("expected `up` or `down`, got `{other}`"),
            }),
        }
    }
}
