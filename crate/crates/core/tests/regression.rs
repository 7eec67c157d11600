//! Seeded outputs frozen on first verified run. A change here means the random
//! streams or the statistics changed and records are no longer comparable.

use affchar::characters::{random_character, CharacterLaw};
use affchar::dynamics::{equidistribution_stats, sp_walk, Points, WalkConfig};
use affchar::rng::StreamRng;
use num_complex::Complex64;

#[test]
fn stream_matches_chacha20_keystream() {
    // ChaCha20 with a zero key and zero nonce: keystream bytes
    // 76 b8 e0 ad a0 f1 3d 90 | 40 5d 6a e5 53 86 bd 28 read little-endian.
    let mut r = StreamRng::new(0, 0);
    assert_eq!(r.next_u64(), 0x903d_f1a0_ade0_b876);
    assert_eq!(r.next_u64(), 0x28bd_8653_e56a_5d40);
}

#[test]
fn derived_draws_are_frozen() {
    let mut r = StreamRng::new(0x5eed, 3);
    assert_eq!(r.uniform(), 0.43487596273810725);
    assert_eq!(r.index(1000), 367);
    assert_eq!(r.gaussian(), 1.01449442245367);
}

#[test]
fn random_characters_are_frozen() {
    let c = Complex64::new;
    let a = random_character(42, 2, CharacterLaw::TorusGaussian);
    let expected = [
        c(-0.5420608345749109, 0.30906480802358116),
        c(0.14915725326407467, 0.20530805772414618),
        c(2.8512459522006535, 4.43236686566396),
        c(-0.1779416433150189, 0.21549894389796587),
    ];
    assert_eq!(a.values(), &expected);
    let u = random_character(42, 2, CharacterLaw::Unitary);
    assert_eq!(u.values()[0], c(-0.8687151190036828, 0.49531206528250177));
    assert!(u.values().iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
}

#[test]
fn iid_fubini_study_sample_is_near_uniform() {
    let mut rng = StreamRng::new(77, 0);
    let mut g = || Complex64::new(rng.gaussian(), rng.gaussian());
    let pts: Vec<Vec<Complex64>> = (0..100_000).map(|_| vec![g(), g()]).collect();
    let s = equidistribution_stats(&Points::Projective(pts)).unwrap();
    assert_eq!(s.visited_cells, 200);
    assert!((s.equidistribution - 0.01622).abs() < 1e-12, "{}", s.equidistribution);
    assert!(s.equidistribution < 0.02);
}

#[test]
fn sp_walk_float_fixture() {
    let x = [
        std::f64::consts::SQRT_2,
        3f64.sqrt(),
        std::f64::consts::PI,
        std::f64::consts::E,
    ];
    let y = [0.3, -0.7, 0.11, 0.5];
    let rec = sp_walk(&x, &y, &WalkConfig::new(9, 100_000), true).unwrap();
    assert!(rec.conserved[0].max_drift <= 1e-12, "{}", rec.conserved[0].max_drift);
    let s = rec.stats.unwrap();
    assert_eq!(s.visited_cells, 200);
    assert!((s.equidistribution - 0.04289).abs() < 1e-12, "{}", s.equidistribution);
}

#[test]
fn dyadic_torus_orbit_stays_on_its_grid() {
    // Integer matrices preserve denominators: x ∈ (⅛ℤ)⁴ visits at most 8×8
    // points per coordinate pair, one per cell of the 20×10 grid.
    let rec = sp_walk(
        &[0.5, 0.25, -0.125, 1.0],
        &[0.75, -0.5, 0.375, 0.0625],
        &WalkConfig::new(9, 10_000),
        true,
    )
    .unwrap();
    assert_eq!(rec.stats.unwrap().visited_cells, 64);
}
