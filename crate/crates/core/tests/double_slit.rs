use wavelab::double_slit::{double_slit_run, DoubleSlitConfig};
use wavelab::potential::SlitMask;

fn central_intensity(p: &wavelab::double_slit::ScreenProfile) -> f64 {
    let j = p.y.iter().position(|&y| y == 0.0).unwrap();
    p.intensity[j]
}

#[test]
fn default_geometry_shows_fraunhofer_fringes() {
    let both = DoubleSlitConfig::default();
    let dy = both.grid.y.dx();
    let profile = double_slit_run(&both).unwrap();
    let fringes = both.analyze(&profile);
    assert!(fringes.maxima.len() >= 3, "{:?}", fringes.maxima);
    assert!(fringes.central.unwrap().abs() < 2.0 * dy);
    let want = both.fraunhofer_spacing().unwrap();
    let got = fringes.spacing.unwrap();
    assert!((got / want - 1.0).abs() < 0.05, "spacing {got} vs {want}");

    let mut singles = Vec::new();
    for open in [SlitMask::Upper, SlitMask::Lower] {
        let cfg = DoubleSlitConfig::default().with_slits(open);
        let p = double_slit_run(&cfg).unwrap();
        let f = cfg.analyze(&p);
        assert_eq!(f.maxima.len(), 1, "{open}: {:?}", f.maxima);
        singles.push(central_intensity(&p));
    }
    let single = singles.iter().copied().fold(0.0, f64::max);
    assert!(central_intensity(&profile) > 2.0 * single);
}
