mod common;

use std::f64::consts::PI;

use common::{localized_states, noisy_packet, random_complex, rng};
use proptest::prelude::*;
use wavelab::observe::{
    apply_momentum, de_broglie_wavelength, eigen_residual, expectation, expectation_position, kinetic_energy,
    momentum_eigenfunction, momentum_from_wavelength, momentum_squared_consistency, potential_energy, probability,
    report, sample_positions, total_energy, Hamiltonian, Momentum,
};
use wavelab::wavefunction::{gaussian_packet, plane_wave_box};
use wavelab::{build_potential, Complex64, Constants, Grid, PotentialSpec, SpatialGrid, WaveFunction};

fn nat() -> Constants {
    Constants::natural()
}

fn grid() -> SpatialGrid {
    SpatialGrid::new(-20.0, 20.0, 1024).unwrap()
}

fn potentials(g: SpatialGrid) -> Vec<wavelab::Potential> {
    let grid: Grid = g.into();
    [
        PotentialSpec::Free,
        PotentialSpec::Harmonic { omega: 0.8 },
        PotentialSpec::SquareWell { depth: 3.0, width: 4.0 },
        PotentialSpec::Barrier { height: 5.0, width: 1.0, center: 1.0 },
    ]
    .iter()
    .map(|s| build_potential(s, &grid, &nat()).unwrap())
    .collect()
}

#[test]
fn momentum_and_hamiltonian_are_hermitian() {
    let g = grid();
    let pots = potentials(g);
    for (i, psi) in localized_states(&g, 30, 11, &nat()).iter().enumerate() {
        let p = expectation(psi, &Momentum(nat())).unwrap();
        assert!(p.im().abs() < 1e-10, "state {i}: Im<p> = {:e}", p.im());
        let pot = &pots[i % pots.len()];
        let h = expectation(psi, &Hamiltonian { constants: nat(), potential: pot }).unwrap();
        assert!(h.im().abs() < 1e-10, "state {i}: Im<H> = {:e}", h.im());
    }
}

#[test]
fn box_eigenfunctions_are_complete() {
    let g = SpatialGrid::new(-8.0, 8.0, 128).unwrap();
    let psi = noisy_packet(&g, &mut rng(3));
    let half = (g.len() / 2) as i64;
    let mut resummed = WaveFunction::zeros(g, 0.0);
    for m in -half..half {
        let e = plane_wave_box(&g, m, 0.0, 0.0).unwrap();
        let c = e.inner(&psi).unwrap();
        resummed = &resummed + &e.scaled(c);
    }
    assert!(resummed.distance(&psi).unwrap() < 1e-10);
}

#[test]
fn uncertainty_bound_holds_on_fifty_states() {
    let g = grid();
    let free = wavelab::Potential::free(g.into());
    for (i, psi) in localized_states(&g, 50, 5, &nat()).iter().enumerate() {
        let r = report(psi, &free, &nat()).unwrap();
        assert!(r.uncertainty_product >= 0.5 - 1e-9, "state {i}: {}", r.uncertainty_product);
    }
}

#[test]
fn gaussians_saturate_the_uncertainty_bound() {
    let g = grid();
    let free = wavelab::Potential::free(g.into());
    for (x0, p0, sigma) in [(0.0, 0.0, 1.0), (-3.0, 2.0, 0.6), (2.5, -1.0, 1.7)] {
        let psi = gaussian_packet(&g, x0, p0, sigma, &nat()).unwrap();
        let r = report(&psi, &free, &nat()).unwrap();
        assert!((r.uncertainty_product / 0.5 - 1.0).abs() < 1e-6, "{}", r.uncertainty_product);
    }
}

#[test]
fn momentum_eigenfunctions_on_256_points() {
    let g = SpatialGrid::new(-5.0, 5.0, 256).unwrap();
    let c = nat();
    for j in -128i64..128 {
        let p = c.hbar * 2.0 * PI * j as f64 / g.length();
        let f = momentum_eigenfunction(&g, p, &c).unwrap();
        let r = eigen_residual(&Momentum(c), &f.samples, Complex64::new(p, 0.0)).unwrap();
        assert!(r < 1e-10, "j={j}: {r:e}");
        if j != 0 {
            assert!(((p * f.lambda) / c.h - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn momentum_squared_matches_the_laplacian_on_random_states() {
    let g = grid();
    let mut r = rng(17);
    for _ in 0..20 {
        let psi = noisy_packet(&g, &mut r);
        assert!(momentum_squared_consistency(&psi, &nat()).unwrap() < 1e-12);
    }
}

#[test]
fn total_energy_is_kinetic_plus_potential() {
    let g = grid();
    let pots = potentials(g);
    for (i, psi) in localized_states(&g, 20, 23, &nat()).iter().enumerate() {
        let pot = &pots[i % pots.len()];
        let t = kinetic_energy(psi, &nat()).unwrap();
        let v = potential_energy(psi, pot).unwrap();
        assert!((total_energy(psi, pot, &nat()).unwrap() - (t + v)).abs() < 1e-12);
        let rep = report(psi, pot, &nat()).unwrap();
        assert!((rep.total_energy - (t + v)).abs() < 1e-10 * (t + v).abs().max(1.0));
    }
}

#[test]
fn ensemble_of_position_samples_reproduces_the_mean() {
    let g = grid();
    let psi = gaussian_packet(&g, 1.3, 0.0, 1.1, &nat()).unwrap();
    let n = 1_000_000;
    let xs = sample_positions(&psi, n, &mut rng(99)).unwrap();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let se = (var / n as f64).sqrt();
    let want = expectation_position(&psi).unwrap();
    assert!((mean - want).abs() < 4.0 * se, "mean {mean} vs {want} (se {se})");
}

#[test]
fn de_broglie_relations() {
    let c = nat();
    assert!((de_broglie_wavelength(c.h, &c).unwrap() - 1.0).abs() < 1e-15);
    let si = Constants::si();
    let m_e = wavelab::constants::codata::ELECTRON_MASS;
    let lambda = de_broglie_wavelength(m_e * 1e6, &si).unwrap();
    assert!((lambda / 7.274e-10 - 1.0).abs() < 1e-4);
    for p in [0.1, 1.0, 7.5, 1e3] {
        let back = momentum_from_wavelength(de_broglie_wavelength(p, &c).unwrap(), &c).unwrap();
        assert!((back / p - 1.0).abs() < 1e-15);
    }
}

#[test]
fn momentum_of_a_constant_is_zero() {
    let g = SpatialGrid::new(0.0, 1.0, 64).unwrap();
    let flat = WaveFunction::from_fn(g, 0.0, |_, _| Complex64::new(1.0, 0.0));
    let p = apply_momentum(&flat, &nat()).unwrap();
    assert!(p.norm() < 1e-13);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn probability_is_additive(x0 in -5.0f64..5.0, s in 0.5f64..2.0, a in -19.0f64..-1.0, db in 0.0f64..10.0, dc in 0.0f64..10.0) {
        let psi = gaussian_packet(&grid(), x0, 1.0, s, &nat()).unwrap();
        let (b, c) = (a + db, a + db + dc);
        let lhs = probability(&psi, a, b).unwrap() + probability(&psi, b, c).unwrap();
        prop_assert!((lhs - probability(&psi, a, c).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn probability_is_bounded(x0 in -5.0f64..5.0, a in -20.0f64..0.0, len in 0.0f64..20.0) {
        let psi = gaussian_packet(&grid(), x0, 0.0, 1.0, &nat()).unwrap();
        let p = probability(&psi, a, a + len).unwrap();
        prop_assert!((0.0..=1.0 + 1e-10).contains(&p));
    }

    #[test]
    fn normalize_is_idempotent_and_scale_free(seed in any::<u64>(), scale in 0.1f64..50.0) {
        let g = SpatialGrid::new(-8.0, 8.0, 64).unwrap();
        let mut r = rng(seed);
        let psi = noisy_packet(&g, &mut r);
        let z = random_complex(&mut r) * scale;
        let once = psi.scaled(z).normalize().unwrap();
        let twice = once.normalize().unwrap();
        prop_assert!((once.norm() - 1.0).abs() < 1e-12);
        prop_assert!(once.distance(&twice).unwrap() < 1e-14);
        let phase = z / z.norm();
        prop_assert!(once.distance(&psi.scaled(phase)).unwrap() < 1e-12);
    }

    #[test]
    fn expectation_is_invariant_under_global_phase(theta in 0.0f64..6.3, seed in any::<u64>()) {
        let g = SpatialGrid::new(-8.0, 8.0, 128).unwrap();
        let psi = noisy_packet(&g, &mut rng(seed));
        let rotated = psi.scaled(Complex64::from_polar(1.0, theta));
        let a = expectation(&psi, &Momentum(nat())).unwrap().re();
        let b = expectation(&rotated, &Momentum(nat())).unwrap().re();
        prop_assert!((a - b).abs() < 1e-10 * a.abs().max(1.0));
    }
}
