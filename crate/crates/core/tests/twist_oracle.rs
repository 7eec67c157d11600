//! Twist actions computed from β-data, checked against word substitution and
//! against the closed-form matrices.

use affchar::characters::{random_character_from, Character, CharacterLaw};
use affchar::dehn_twist::{
    genus2_fixture, genus2_standard_twists, higher_genus_rep, matrix_in_classes, standard_curve_system,
    twist_action_on_z1, twist_cocycle_mu, TwistAction,
};
use affchar::linalg::CMatrix;
use affchar::rng::StreamRng;
use affchar::surface_group::Letter;
use affchar::twisted_cohomology::{cohomology_basis, eval_cocycle, volume, Cocycle, CohomologyBasis};
use num_complex::Complex64;

fn random_cocycle(rng: &mut StreamRng, basis: &CohomologyBasis) -> Cocycle {
    let coords: Vec<Complex64> = (0..basis.dim())
        .map(|_| Complex64::new(rng.gaussian(), rng.gaussian()))
        .collect();
    let z = Complex64::new(rng.gaussian(), rng.gaussian());
    basis
        .combine(&coords)
        .add(&affchar::twisted_cohomology::coboundary(basis.character(), z))
        .unwrap()
}

fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn class_matrix(action: &TwistAction, basis: &CohomologyBasis, classes: &[Cocycle]) -> CMatrix {
    let m = action.matrix_in_basis(basis).unwrap();
    matrix_in_classes(&m, basis, classes).unwrap()
}

#[test]
fn word_substitution_agrees_with_beta_data() {
    let mut rng = StreamRng::new(11, 0);
    for g in 2..=4 {
        let sys = standard_curve_system(g);
        for _ in 0..10 {
            let alpha = random_character_from(&mut rng, g, CharacterLaw::TorusGaussian);
            let basis = cohomology_basis(&alpha).unwrap();
            let lam = random_cocycle(&mut rng, &basis);
            for twist in &sys.twists {
                let action = twist_action_on_z1(&alpha, &twist.twist_data()).unwrap();
                let image = action.apply(&lam).unwrap();
                let auto = twist.automorphism();
                for x in 0..2 * g {
                    let direct = eval_cocycle(&lam, auto.image(x)).unwrap();
                    let scale = 1.0 + lam.max_abs() * action.mu().max_abs();
                    assert!(
                        (direct - image.values()[x]).norm() < 1e-9 * scale,
                        "g={g} {} {}: {direct} vs {}",
                        twist.name,
                        Letter::new(x, false),
                        image.values()[x]
                    );
                }
            }
        }
    }
}

#[test]
fn genus2_matches_closed_form() {
    let (d1, d2) = genus2_fixture();
    let mut rng = StreamRng::new(12, 0);
    let mut checked = 0;
    while checked < 100 {
        let alpha = random_character_from(&mut rng, 2, CharacterLaw::TorusGaussian);
        let Ok((m1, m2)) = genus2_standard_twists(&alpha) else {
            continue;
        };
        let basis = cohomology_basis(&alpha).unwrap();
        let mu = [
            twist_cocycle_mu(&alpha, &d1).unwrap(),
            twist_cocycle_mu(&alpha, &d2).unwrap(),
        ];
        let a1 = class_matrix(&twist_action_on_z1(&alpha, &d1).unwrap(), &basis, &mu);
        let a2 = class_matrix(&twist_action_on_z1(&alpha, &d2).unwrap(), &basis, &mu);
        let m1 = CMatrix::from_fn(2, 2, |i, j| m1[(i, j)]);
        let m2 = CMatrix::from_fn(2, 2, |i, j| m2[(i, j)]);
        let scale = 1.0 + m1[(0, 1)].norm() + m2[(1, 0)].norm();
        assert!(max_diff(&a1, &m1) <= 1e-10 * scale, "{alpha}: {a1} vs {m1}");
        assert!(max_diff(&a2, &m2) <= 1e-10 * scale, "{alpha}: {a2} vs {m2}");
        checked += 1;
    }
}

#[test]
fn spec_character_values() {
    // α(a1)=2, α(a2)=3: the δ1 cocycle on δ̃2 is 1 − 2 + 6 − 3 = 2.
    let alpha = Character::from_real(&[2.0, 1.0, 3.0, 1.0]).unwrap();
    let (d1, d2) = genus2_fixture();
    let mu1 = twist_cocycle_mu(&alpha, &d1).unwrap();
    let mu2 = twist_cocycle_mu(&alpha, &d2).unwrap();
    assert!((eval_cocycle(&mu1, &d2.based_curve).unwrap() - 2.0).norm() < 1e-12);
    assert!((eval_cocycle(&mu2, &d1.based_curve).unwrap() - 1.0 / 3.0).norm() < 1e-12);
    assert!(eval_cocycle(&mu1, &d1.based_curve).unwrap().norm() < 1e-12);
    assert!(eval_cocycle(&mu2, &d2.based_curve).unwrap().norm() < 1e-12);
}

#[test]
fn higher_genus_matches_block_representation() {
    let mut rng = StreamRng::new(13, 0);
    for g in 2..=5 {
        let sys = standard_curve_system(g);
        let data = sys.twist_data();
        for _ in 0..10 {
            let alpha = random_character_from(&mut rng, g, CharacterLaw::TorusGaussian);
            let rep = higher_genus_rep(&alpha).unwrap();
            let basis = cohomology_basis(&alpha).unwrap();
            let classes: Vec<Cocycle> = data.iter().map(|d| twist_cocycle_mu(&alpha, d).unwrap()).collect();
            for (d, expected) in data.iter().zip(&rep.generators) {
                let m = class_matrix(&twist_action_on_z1(&alpha, d).unwrap(), &basis, &classes);
                let scale = 1.0 + expected.iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(
                    max_diff(&m, expected) <= 1e-9 * scale,
                    "g={g} {}: {m} vs {expected}",
                    d.name
                );
            }
        }
    }
}

#[test]
fn twists_preserve_volume() {
    let mut rng = StreamRng::new(14, 0);
    for g in 2..=4 {
        let data = standard_curve_system(g).twist_data();
        for _ in 0..10 {
            let alpha = random_character_from(&mut rng, g, CharacterLaw::Unitary);
            let basis = cohomology_basis(&alpha).unwrap();
            let lam = random_cocycle(&mut rng, &basis);
            let v = volume(&lam).unwrap();
            for d in &data {
                let t = twist_action_on_z1(&alpha, d).unwrap();
                let w = volume(&t.apply(&lam).unwrap()).unwrap();
                assert!((w - v).abs() <= 1e-9 * v.abs().max(1.0), "{v} vs {w}");
            }
        }
    }
}

#[test]
fn degenerate_character_is_refused() {
    let alpha = Character::from_real(&[1.0, 2.0, 3.0, 0.5]).unwrap();
    assert!(genus2_standard_twists(&alpha).is_err());
    assert!(higher_genus_rep(&alpha).is_err());
}
