//! Unit systems and the pinned CODATA-2018 constant table.
//!
//! Simulations run in natural units (hbar = m = 1). The old-quantum
//! formulas need the electromagnetic constants and therefore SI.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// CODATA-2018 values, 10+ significant digits. `h`, `c` and `e` are exact.
pub mod codata {
    pub const PLANCK_H: f64 = 6.626_070_15e-34;
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
    pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
    pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;
    pub const RYDBERG_INFINITY: f64 = 10_973_731.568_160;
    /// Joules per electron-volt.
    pub const ELECTRON_VOLT: f64 = ELEMENTARY_CHARGE;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UnitSystem {
    #[default]
    Natural,
    Si,
}

impl std::str::FromStr for UnitSystem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "natural" => Ok(UnitSystem::Natural),
            "si" => Ok(UnitSystem::Si),
            other => Err(format!("unknown unit system `{other}` (expected natural|si)")),
        }
    }
}

impl std::fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            UnitSystem::Natural => "natural",
            UnitSystem::Si => "si",
        })
    }
}

/// Electromagnetic and atomic constants; only present in SI mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Electromagnetic {
    pub c: f64,
    pub e_charge: f64,
    pub eps0: f64,
    /// Coulomb constant `1 / (4 pi eps0)`.
    pub k_e: f64,
    /// Bohr radius `hbar^2 / (m_e e^2 k_e)`, computed from the table so the
    /// orbit formulas close exactly. Differs from [`codata::BOHR_RADIUS`] by ~1e-10.
    pub a0: f64,
    /// Tabulated infinite-mass Rydberg constant.
    pub r_inf: f64,
}

impl Electromagnetic {
    /// Reduced-mass hydrogen Rydberg constant `R_inf / (1 + m_e / m_p)`.
    /// Only for comparison against measured hydrogen lines.
    pub fn rydberg_hydrogen(&self) -> f64 {
        self.r_inf / (1.0 + codata::ELECTRON_MASS / codata::PROTON_MASS)
    }
}

/// Physical constants used by every module.
///
/// `mass` is the particle mass (the electron mass in SI mode); CLI configs may
/// override it together with `hbar`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub unit_system: UnitSystem,
    pub hbar: f64,
    pub h: f64,
    pub mass: f64,
    em: Option<Electromagnetic>,
}

impl Constants {
    pub fn new(unit_system: UnitSystem) -> Self {
        match unit_system {
            UnitSystem::Natural => Self::natural(),
            UnitSystem::Si => Self::si(),
        }
    }

    pub const NATURAL: Constants = Constants {
        unit_system: UnitSystem::Natural,
        hbar: 1.0,
        h: 2.0 * PI,
        mass: 1.0,
        em: None,
    };

    /// hbar = m = 1; electromagnetic constants unset.
    pub fn natural() -> Self {
        Self::NATURAL
    }

    pub fn si() -> Self {
        let h = codata::PLANCK_H;
        let hbar = h / (2.0 * PI);
        let m_e = codata::ELECTRON_MASS;
        let e = codata::ELEMENTARY_CHARGE;
        let eps0 = codata::VACUUM_PERMITTIVITY;
        let k_e = 1.0 / (4.0 * PI * eps0);
        let a0 = hbar * hbar / (m_e * e * e * k_e);
        Constants {
            unit_system: UnitSystem::Si,
            hbar,
            h,
            mass: m_e,
            em: Some(Electromagnetic {
                c: codata::SPEED_OF_LIGHT,
                e_charge: e,
                eps0,
                k_e,
                a0,
                r_inf: codata::RYDBERG_INFINITY,
            }),
        }
    }

    /// Replace `hbar` (and `h = 2 pi hbar` with it).
    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self.h = 2.0 * PI * hbar;
        self
    }

    pub fn with_mass(mut self, mass: f64) -> Self {
        self.mass = mass;
        self
    }

    /// Electromagnetic constants, or [`Error::NaturalUnitsUnsupported`].
    pub fn em(&self) -> Result<&Electromagnetic> {
        self.em.as_ref().ok_or(Error::NaturalUnitsUnsupported)
    }

    /// SI constants with the Bohr radius replaced; everything that derives
    /// from `a0` downstream scales accordingly.
    pub fn with_bohr_radius(mut self, a0: f64) -> Result<Self> {
        let em = self.em.as_mut().ok_or(Error::NaturalUnitsUnsupported)?;
        em.a0 = a0;
        Ok(self)
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::natural()
    }
}
