//! Candidate-equation gate.
//!
//! Substitutes the traveling wave `exp(i(kx - omega t))`, with `omega` from
//! the free dispersion relation, into `d^r psi/dt^r = gamma d^2 psi/dx^2` for
//! `r = 2` and `r = 1`, and solves for `gamma`. A candidate is admissible
//! only if `gamma` comes out the same for every wavenumber: a coefficient
//! that depends on `k` would stop superpositions of different `k` from
//! solving the same equation.

use num_complex::Complex64;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::evolve::{Propagator, Scheme};
use crate::potential::Potential;
use crate::wavefunction::plane_wave_box;
use crate::grid::SpatialGrid;

/// Absolute spread below which `gamma` counts as constant.
pub const GATE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Candidate {
    /// `psi_tt = gamma psi_xx`, the classical wave equation.
    SecondOrderTime,
    /// `psi_t = gamma psi_xx`.
    FirstOrderTime,
}

impl Candidate {
    pub const ALL: [Candidate; 2] = [Candidate::SecondOrderTime, Candidate::FirstOrderTime];

    pub fn name(self) -> &'static str {
        match self {
            Candidate::SecondOrderTime => "second_order_time",
            Candidate::FirstOrderTime => "first_order_time",
        }
    }

    fn time_order(self) -> i32 {
        match self {
            Candidate::SecondOrderTime => 2,
            Candidate::FirstOrderTime => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialGamma {
    pub candidate: Candidate,
    pub k: f64,
    pub gamma: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateReport {
    pub candidate: Candidate,
    pub gamma_samples: Vec<TrialGamma>,
    pub max_pairwise_spread: f64,
    pub k_independent: bool,
}

/// `omega = hbar k^2 / (2m)`: `E = p^2/2m` with `E = hbar omega`, `p = hbar k`.
pub fn dispersion_omega(k: f64, constants: &Constants) -> f64 {
    constants.hbar * k * k / (2.0 * constants.mass)
}

/// Each derivative of the plane wave pulls down a factor: `-i omega` per time
/// derivative, `i k` per space derivative. `gamma` is their ratio.
pub fn trial_gamma(candidate: Candidate, k: f64, constants: &Constants) -> Result<TrialGamma> {
    if k == 0.0 {
        return Err(Error::ZeroWavenumber);
    }
    let omega = dispersion_omega(k, constants);
    let time_factor = Complex64::new(0.0, -omega).powi(candidate.time_order());
    let space_factor = -k * k;
    Ok(TrialGamma {
        candidate,
        k,
        gamma: time_factor / space_factor,
    })
}

fn report(candidate: Candidate, ks: &[f64], constants: &Constants, tolerance: f64) -> Result<GateReport> {
    let samples = ks
        .iter()
        .map(|&k| trial_gamma(candidate, k, constants))
        .collect::<Result<Vec<_>>>()?;
    let mut spread = 0.0f64;
    for (i, a) in samples.iter().enumerate() {
        for b in &samples[i + 1..] {
            spread = spread.max((a.gamma - b.gamma).norm());
        }
    }
    Ok(GateReport {
        candidate,
        gamma_samples: samples,
        max_pairwise_spread: spread,
        k_independent: spread < tolerance,
    })
}

/// Reports for (second-order, first-order) candidates.
///
/// Needs at least two distinct nonzero wavenumbers. Samples that differ only
/// in sign give the same `gamma` for both candidates, since `gamma` depends on
/// `|k|` alone.
pub fn run_gate(ks: &[f64], constants: &Constants, tolerance: f64) -> Result<(GateReport, GateReport)> {
    if ks.contains(&0.0) {
        return Err(Error::ZeroWavenumber);
    }
    let mut distinct: Vec<f64> = ks.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: distinct.len(),
        });
    }
    Ok((
        report(Candidate::SecondOrderTime, ks, constants, tolerance)?,
        report(Candidate::FirstOrderTime, ks, constants, tolerance)?,
    ))
}

/// Evolves box mode `mode` freely to `t` in `steps` split steps and returns
/// the L2 distance to `exp(-i omega_ref t) psi_0`.
pub fn evolution_residual_against(
    grid: &SpatialGrid,
    mode: i64,
    t: f64,
    steps: usize,
    constants: &Constants,
    omega_ref: f64,
) -> Result<f64> {
    if steps == 0 {
        return Err(Error::NoSteps);
    }
    let psi0 = plane_wave_box(grid, mode, 0.0, 0.0)?;
    let free = Potential::free((*grid).into());
    let mut prop = Propagator::new(Scheme::SplitStep, &free, t / steps as f64, constants)?;
    let evolved = prop.run(&psi0, steps)?;
    let expected = plane_wave_box(grid, mode, t, omega_ref)?;
    evolved.distance(&expected)
}

/// Residual against the free dispersion relation.
pub fn free_evolution_residual(
    grid: &SpatialGrid,
    mode: i64,
    t: f64,
    steps: usize,
    constants: &Constants,
) -> Result<f64> {
    let k = 2.0 * std::f64::consts::PI * mode as f64 / grid.length();
    evolution_residual_against(grid, mode, t, steps, constants, dispersion_omega(k, constants))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const NAT: Constants = Constants::NATURAL;

    #[test]
    fn dispersion_values() {
        assert_eq!(dispersion_omega(1.0, &NAT), 0.5);
        assert_eq!(dispersion_omega(0.0, &NAT), 0.0);
        assert_eq!(dispersion_omega(2.0, &NAT), 2.0);
    }

    #[test]
    fn second_order_gamma_is_p_squared_over_four_m_squared() {
        let g = trial_gamma(Candidate::SecondOrderTime, 2.0, &NAT).unwrap();
        assert_eq!(g.gamma, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn first_order_gamma_is_i_hbar_over_two_m() {
        for k in [2.0, 7.0] {
            let g = trial_gamma(Candidate::FirstOrderTime, k, &NAT).unwrap();
            assert_eq!(g.gamma, Complex64::new(0.0, 0.5), "k = {k}");
        }
    }

    #[test]
    fn zero_wavenumber_rejected() {
        assert_eq!(trial_gamma(Candidate::FirstOrderTime, 0.0, &NAT), Err(Error::ZeroWavenumber));
        assert_eq!(run_gate(&[0.0, 1.0, 2.0], &NAT, GATE_TOLERANCE), Err(Error::ZeroWavenumber));
    }

    #[test]
    fn gate_rejects_wave_equation() {
        let (second, first) = run_gate(&[1.0, 2.0, 3.0], &NAT, GATE_TOLERANCE).unwrap();
        // hand arithmetic: omega^2/k^2 = k^2/4
        let expect = [0.25, 1.0, 2.25];
        for (s, e) in second.gamma_samples.iter().zip(expect) {
            assert!((s.gamma - Complex64::new(e, 0.0)).norm() < 1e-15);
        }
        assert!(!second.k_independent);
        assert_eq!(second.max_pairwise_spread, 2.0);
        assert!(first.k_independent);
        assert!(first.gamma_samples.iter().all(|s| s.gamma == Complex64::new(0.0, 0.5)));
    }

    #[test]
    fn opposite_wavenumbers_do_not_discriminate() {
        let (second, first) = run_gate(&[2.0, -2.0], &NAT, GATE_TOLERANCE).unwrap();
        assert!(second.k_independent);
        assert!(first.k_independent);
    }

    #[test]
    fn single_sample_is_insufficient() {
        assert_eq!(
            run_gate(&[1.0, 1.0], &NAT, GATE_TOLERANCE),
            Err(Error::InsufficientSamples { needed: 2, got: 1 })
        );
    }

    #[test]
    fn free_mode_zero_is_stationary() {
        let g = SpatialGrid::new(0.0, 10.0, 64).unwrap();
        assert!(free_evolution_residual(&g, 0, 3.7, 10, &NAT).unwrap() < 1e-12);
    }

    #[test]
    fn free_mode_matches_dispersion() {
        let g = SpatialGrid::new(0.0, 10.0, 64).unwrap();
        assert!(free_evolution_residual(&g, 3, 1.0, 1000, &NAT).unwrap() < 1e-10);
    }

    #[test]
    fn wrong_dispersion_is_detected() {
        let g = SpatialGrid::new(0.0, 10.0, 64).unwrap();
        let k = 2.0 * PI * 3.0 / 10.0;
        let omega = dispersion_omega(k, &NAT);
        let t = PI / omega;
        let wrong = NAT.hbar * k * k / NAT.mass;
        let r = evolution_residual_against(&g, 3, t, 500, &NAT, wrong).unwrap();
        // |exp(-i w t) - exp(-2 i w t)| = |1 - exp(-i pi)| = 2 at unit norm
        assert!((r - 2.0).abs() < 1e-9, "{r}");
    }
}
