//! Photon energy, the photoelectric threshold, and the Bohr model of hydrogen.
//!
//! Energies are in joules; use [`ev`] and [`to_ev`] at the edges. The Bohr
//! formulas use infinite nuclear mass, so the Rydberg constant they produce
//! is `R_inf`. Wavelengths are vacuum wavelengths.

use crate::constants::{codata, Constants};
use crate::error::{Error, Result};

pub fn ev(energy_ev: f64) -> f64 {
    energy_ev * codata::ELECTRON_VOLT
}

pub fn to_ev(energy_j: f64) -> f64 {
    energy_j / codata::ELECTRON_VOLT
}

/// `E = h f`.
pub fn photon_energy(frequency: f64, constants: &Constants) -> Result<f64> {
    if !(frequency > 0.0) {
        return Err(Error::NonPositiveFrequency(frequency));
    }
    Ok(constants.h * frequency)
}

/// `E = hbar omega`.
pub fn photon_energy_from_omega(omega: f64, constants: &Constants) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::NonPositiveFrequency(omega));
    }
    Ok(constants.hbar * omega)
}

/// Coulomb force magnitude `k_e q1 q2 / r^2` (positive means repulsive).
pub fn coulomb_force(q1: f64, q2: f64, r: f64, constants: &Constants) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    Ok(constants.em()?.k_e * q1 * q2 / (r * r))
}

/// `m v^2 / r`.
pub fn centripetal_force(m: f64, v: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    Ok(m * v * v / r)
}

/// Circular orbit of quantum number `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BohrState {
    pub n: u64,
    pub r_n: f64,
    pub e_n: f64,
    pub v_n: f64,
    pub l_n: f64,
}

/// Orbit from `L = n hbar` and Coulomb = centripetal:
/// `r_n = n^2 hbar^2 / (m e^2 k_e)`, `E_n = -k_e e^2 / (2 n^2 a0)`,
/// `v_n = n hbar / (m r_n)`.
pub fn bohr_state(n: u64, constants: &Constants) -> Result<BohrState> {
    if n == 0 {
        return Err(Error::NonPositiveQuantumNumber);
    }
    let em = constants.em()?;
    let (hbar, m, e) = (constants.hbar, constants.mass, em.e_charge);
    let nf = n as f64;
    let r_n = nf * nf * em.a0;
    let e_n = -em.k_e * e * e / (2.0 * nf * nf * em.a0);
    let v_n = nf * hbar / (m * r_n);
    Ok(BohrState {
        n,
        r_n,
        e_n,
        v_n,
        l_n: m * v_n * r_n,
    })
}

/// `1/lambda = R (1/m^2 - 1/n^2)`.
pub fn rydberg_wavelength(lower: u64, upper: u64, rydberg: f64) -> Result<f64> {
    if lower == 0 || lower >= upper {
        return Err(Error::BadQuantumNumbers { lower, upper });
    }
    let (m, n) = (lower as f64, upper as f64);
    Ok(1.0 / (rydberg * (1.0 / (m * m) - 1.0 / (n * n))))
}

/// `R = k_e e^2 / (2 a0 h c)`.
pub fn derived_rydberg_constant(constants: &Constants) -> Result<f64> {
    let em = constants.em()?;
    Ok(em.k_e * em.e_charge * em.e_charge / (2.0 * em.a0 * constants.h * em.c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub n_upper: u64,
    pub n_lower: u64,
    pub e_gamma: f64,
    pub frequency: f64,
    pub lambda: f64,
}

/// Photon emitted in the jump `n_upper -> n_lower`. `E_gamma = |E_n - E_m|`,
/// since `E_n - E_m` is negative for the Bohr energies as written.
pub fn transition(n_upper: u64, n_lower: u64, constants: &Constants) -> Result<SpectralLine> {
    if n_lower == 0 || n_lower >= n_upper {
        return Err(Error::BadQuantumNumbers {
            lower: n_lower,
            upper: n_upper,
        });
    }
    let c = constants.em()?.c;
    let e_gamma = (bohr_state(n_upper, constants)?.e_n - bohr_state(n_lower, constants)?.e_n).abs();
    let frequency = e_gamma / constants.h;
    Ok(SpectralLine {
        n_upper,
        n_lower,
        e_gamma,
        frequency,
        lambda: c / frequency,
    })
}

/// Named hydrogen series by lower level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    Lyman,
    Balmer,
    Paschen,
}

impl Series {
    pub fn lower(self) -> u64 {
        match self {
            Series::Lyman => 1,
            Series::Balmer => 2,
            Series::Paschen => 3,
        }
    }

    /// Lines from `lower + 1` up to `max_upper`, longest wavelength first.
    pub fn lines(self, max_upper: u64, constants: &Constants) -> Result<Vec<SpectralLine>> {
        let m = self.lower();
        (m + 1..=max_upper).map(|n| transition(n, m, constants)).collect()
    }
}

impl std::str::FromStr for Series {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lyman" => Ok(Series::Lyman),
            "balmer" => Ok(Series::Balmer),
            "paschen" => Ok(Series::Paschen),
            other => Err(format!("unknown series `{other}` (expected lyman|balmer|paschen)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhotonInput {
    /// Photon energy in joules.
    Energy(f64),
    Frequency(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotoelectricResult {
    pub photon_energy: f64,
    pub work_function: f64,
    pub threshold_frequency: f64,
    pub emitted: bool,
    /// `photon_energy - work_function` when emitted.
    pub ke_max: Option<f64>,
}

/// Emission needs `E > phi` strictly; at `E = phi` nothing leaves the metal.
pub fn photoelectric(photon: PhotonInput, work_function: f64, constants: &Constants) -> Result<PhotoelectricResult> {
    if !(work_function > 0.0) {
        return Err(Error::NonPositiveWorkFunction(work_function));
    }
    let photon_energy = match photon {
        PhotonInput::Energy(e) => e,
        PhotonInput::Frequency(f) => photon_energy(f, constants)?,
    };
    let emitted = photon_energy > work_function;
    Ok(PhotoelectricResult {
        photon_energy,
        work_function,
        threshold_frequency: work_function / constants.h,
        emitted,
        ke_max: emitted.then_some(photon_energy - work_function),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn photon_energy_paths() {
        let nat = Constants::natural();
        assert!((photon_energy(1.0 / nat.h, &nat).unwrap() - 1.0).abs() < 1e-15);
        let si = Constants::si();
        let f = 5.0e14;
        let e = photon_energy(f, &si).unwrap();
        // 6.62607015e-34 * 5e14 = 3.313035075e-19 J
        assert!(rel(e, 3.313e-19) < 1e-4);
        assert!(rel(to_ev(e), 2.068) < 1e-4);
        let via_omega = photon_energy_from_omega(2.0 * std::f64::consts::PI * f, &si).unwrap();
        assert!(rel(via_omega, e) < 1e-15);
        assert_eq!(photon_energy(0.0, &si), Err(Error::NonPositiveFrequency(0.0)));
    }

    #[test]
    fn coulomb_scaling() {
        let c = Constants::si();
        let q = 1e-6;
        let f = coulomb_force(q, q, 1.0, &c).unwrap();
        assert!(rel(coulomb_force(2.0 * q, q, 1.0, &c).unwrap(), 2.0 * f) < 1e-15);
        assert!(rel(coulomb_force(q, q, 2.0, &c).unwrap(), f / 4.0) < 1e-15);
        assert_eq!(coulomb_force(q, q, 0.0, &c), Err(Error::NonPositiveRadius(0.0)));
        assert_eq!(coulomb_force(q, q, 1.0, &Constants::natural()), Err(Error::NaturalUnitsUnsupported));
        assert_eq!(centripetal_force(1.0, 1.0, -1.0), Err(Error::NonPositiveRadius(-1.0)));
    }

    #[test]
    fn ground_state_force_balance() {
        let c = Constants::si();
        let em = *c.em().unwrap();
        let s = bohr_state(1, &c).unwrap();
        // closed form v_1 = k_e e^2 / hbar
        let v1 = em.k_e * em.e_charge.powi(2) / c.hbar;
        assert!(rel(s.v_n, v1) < 1e-12);
        let fc = coulomb_force(em.e_charge, em.e_charge, s.r_n, &c).unwrap();
        let fz = centripetal_force(c.mass, v1, s.r_n).unwrap();
        assert!(((fc - fz) / fc).abs() < 1e-10);
    }

    #[test]
    fn bohr_scalings() {
        let c = Constants::si();
        let s1 = bohr_state(1, &c).unwrap();
        // -k_e e^2 / (2 a0) = -13.6057 eV
        assert!(rel(to_ev(s1.e_n), -13.606) < 1e-4);
        assert_eq!(bohr_state(2, &c).unwrap().r_n / s1.r_n, 4.0);
        assert!(rel(bohr_state(3, &c).unwrap().e_n / s1.e_n, 1.0 / 9.0) < 1e-12);
        assert_eq!(bohr_state(0, &c), Err(Error::NonPositiveQuantumNumber));
        assert_eq!(bohr_state(1, &Constants::natural()), Err(Error::NaturalUnitsUnsupported));
    }

    #[test]
    fn rydberg_formula() {
        let r_h = 1.096_775_8e7;
        let l = rydberg_wavelength(2, 3, r_h).unwrap();
        assert!(rel(l, 36.0 / (5.0 * r_h)) < 1e-15);
        assert!(rel(l, 656.5e-9) < 5e-4);
        assert!(rel(rydberg_wavelength(1, 1_000_000, r_h).unwrap(), 1.0 / r_h) < 1e-9);
        assert_eq!(rydberg_wavelength(3, 2, r_h), Err(Error::BadQuantumNumbers { lower: 3, upper: 2 }));
        assert!(rydberg_wavelength(0, 2, r_h).is_err());
    }

    #[test]
    fn derived_rydberg() {
        let c = Constants::si();
        let r = derived_rydberg_constant(&c).unwrap();
        assert!(rel(r, 1.097_373_156_8e7) < 1e-4);
        let doubled = c.with_bohr_radius(2.0 * c.em().unwrap().a0).unwrap();
        assert!(rel(derived_rydberg_constant(&doubled).unwrap(), r / 2.0) < 1e-15);
        assert_eq!(derived_rydberg_constant(&Constants::natural()), Err(Error::NaturalUnitsUnsupported));
    }

    #[test]
    fn transitions() {
        let c = Constants::si();
        let r_inf = c.em().unwrap().r_inf;
        let h_alpha = transition(3, 2, &c).unwrap();
        assert!(rel(h_alpha.lambda, 36.0 / (5.0 * r_inf)) < 5e-4);
        assert!(rel(h_alpha.lambda, 656.1e-9) < 5e-4);
        let r_derived = derived_rydberg_constant(&c).unwrap();
        assert!(rel(h_alpha.lambda, rydberg_wavelength(2, 3, r_derived).unwrap()) < 1e-10);
        // E_1 (1 - 1/4) with E_1 = -13.6057 eV
        let ly_alpha = transition(2, 1, &c).unwrap();
        assert!(rel(to_ev(ly_alpha.e_gamma), 10.20) < 1e-3);
        assert!(rel(to_ev(ly_alpha.e_gamma), 13.605_693 * 0.75) < 1e-4);
        let mut last = f64::INFINITY;
        for n in 2..30 {
            let e = transition(n, n - 1, &c).unwrap().e_gamma;
            assert!(e < last);
            last = e;
        }
        assert!(transition(2, 2, &c).is_err());
    }

    #[test]
    fn balmer_series() {
        let c = Constants::si();
        let lines = Series::Balmer.lines(6, &c).unwrap();
        assert_eq!(lines.len(), 4);
        let nm: Vec<f64> = lines.iter().map(|l| l.lambda * 1e9).collect();
        assert!((nm[0] - 656.1).abs() < 0.5);
        assert!((nm[1] - 486.0).abs() < 0.5);
        assert!(nm.iter().all(|&l| (380.0..700.0).contains(&l)));
    }

    #[test]
    fn photoelectric_cases() {
        let c = Constants::si();
        let r = photoelectric(PhotonInput::Energy(ev(3.0)), ev(2.0), &c).unwrap();
        assert!(r.emitted);
        assert!(rel(to_ev(r.ke_max.unwrap()), 1.0) < 1e-12);
        assert_eq!(r.ke_max.unwrap(), ev(3.0) - ev(2.0));
        let edge = photoelectric(PhotonInput::Energy(ev(2.0)), ev(2.0), &c).unwrap();
        assert!(!edge.emitted);
        assert_eq!(edge.ke_max, None);
        let r = photoelectric(PhotonInput::Frequency(1e15), ev(2.3), &c).unwrap();
        // 2.30 eV / h = 3.68500e-19 / 6.62607015e-34 = 5.5614e14 Hz
        assert!(rel(r.threshold_frequency, 5.56e14) < 1e-3);
        assert!(rel(r.work_function, c.h * r.threshold_frequency) < 1e-12);
        assert_eq!(
            photoelectric(PhotonInput::Energy(1.0), 0.0, &c),
            Err(Error::NonPositiveWorkFunction(0.0))
        );
    }
}
