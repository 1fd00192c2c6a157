#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wavelab::wavefunction::gaussian_packet;
use wavelab::{Complex64, Constants, SpatialGrid, WaveFunction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// White noise under a Gaussian envelope of width 2 centred at the origin.
pub fn noisy_packet<R: Rng>(grid: &SpatialGrid, rng: &mut R) -> WaveFunction {
    let amps = grid
        .coordinates()
        .into_iter()
        .map(|x| random_complex(rng) * (-x * x / 8.0).exp())
        .collect();
    WaveFunction::new(*grid, amps, 0.0).unwrap().normalize().unwrap()
}

pub fn random_gaussian<R: Rng>(grid: &SpatialGrid, rng: &mut R, c: &Constants) -> WaveFunction {
    let x0 = rng.random_range(-4.0..4.0);
    let p0 = rng.random_range(-3.0..3.0);
    let sigma = rng.random_range(0.5..2.0);
    gaussian_packet(grid, x0, p0, sigma, c).unwrap()
}

/// Sum of two or three random Gaussians with random complex weights.
pub fn random_superposition<R: Rng>(grid: &SpatialGrid, rng: &mut R, c: &Constants) -> WaveFunction {
    let terms = rng.random_range(2..=3);
    let mut psi = WaveFunction::zeros(*grid, 0.0);
    for _ in 0..terms {
        let g = random_gaussian(grid, rng, c);
        psi = &psi + &g.scaled(random_complex(rng));
    }
    psi.normalize().unwrap()
}

/// Gaussians, superpositions and noisy packets, all well inside the box.
pub fn localized_states(grid: &SpatialGrid, count: usize, seed: u64, c: &Constants) -> Vec<WaveFunction> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| match i % 3 {
            0 => random_gaussian(grid, &mut r, c),
            1 => random_superposition(grid, &mut r, c),
            _ => noisy_packet(grid, &mut r),
        })
        .collect()
}
