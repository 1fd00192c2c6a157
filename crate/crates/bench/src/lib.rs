//! Fixtures shared by the kernel benchmarks.

use wavelab::wavefunction::gaussian_packet;
use wavelab::{build_potential, Constants, Grid, Potential, PotentialSpec, SpatialGrid, SpatialGrid2D, WaveFunction};

/// Harmonic well and a displaced Gaussian on `[-20, 20)` with `n` samples.
pub fn harmonic_1d(n: usize) -> (Potential, WaveFunction) {
    let c = Constants::natural();
    let g = SpatialGrid::new(-20.0, 20.0, n).expect("valid grid");
    let pot = build_potential(&PotentialSpec::Harmonic { omega: 1.0 }, &g.into(), &c).expect("valid potential");
    (pot, gaussian_packet(&g, 1.0, 0.5, 1.0, &c).expect("valid packet"))
}

/// Free `n × n` grid on `[-20, 20)²` with a normalized 2D Gaussian.
pub fn free_2d(n: usize) -> (Potential, WaveFunction) {
    let axis = SpatialGrid::new(-20.0, 20.0, n).expect("valid grid");
    let grid = Grid::Two(SpatialGrid2D::new(axis, axis));
    let psi = WaveFunction::from_fn(grid, 0.0, |x, y| {
        let r2 = x * x + y * y;
        wavelab::Complex64::from_polar((-r2 / 4.0).exp(), 2.0 * x)
    });
    (Potential::free(grid), psi.normalize().expect("nonzero state"))
}
