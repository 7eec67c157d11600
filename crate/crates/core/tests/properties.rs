use affchar::characters::parse_rational;
use affchar::characters::{eval_character, random_character, Character, CharacterLaw};
use affchar::dynamics::{jorgensen_value, projective_walk, Points, WalkConfig};
use affchar::haupt::{haupt_check, GaussianRational, PeriodCharacter};
use affchar::linalg::CMatrix;
use affchar::surface_group::{abelianize, free_reduce, relator_word, Letter, Word};
use affchar::twisted_cohomology::{
    closed_form_residual, coboundary, cohomology_basis, eval_cocycle, hermitian_volume, is_coboundary,
    relator_residual, volume, Cocycle,
};
use nalgebra::Matrix2;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

fn letter(genus: usize) -> impl Strategy<Value = Letter> {
    (0..2 * genus, any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv))
}

fn word(genus: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(genus), 0..max).prop_map(free_reduce)
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn character(genus: usize) -> impl Strategy<Value = Character> {
    prop::collection::vec((-1.0..1.0f64, 0.0..std::f64::consts::TAU), 2 * genus)
        .prop_map(|v| Character::new(v.into_iter().map(|(r, t)| Complex64::from_polar(r.exp(), t)).collect()).unwrap())
}

fn unitary(genus: usize) -> impl Strategy<Value = Character> {
    prop::collection::vec(0.05..std::f64::consts::TAU - 0.05, 2 * genus)
        .prop_map(|v| Character::new(v.into_iter().map(|t| Complex64::from_polar(1.0, t)).collect()).unwrap())
}

/// A cocycle over `alpha`: random coordinates in the cohomology basis plus a coboundary.
fn cocycle_over(alpha: &Character, coords: &[Complex64], z: Complex64) -> Cocycle {
    let basis = cohomology_basis(alpha).unwrap();
    basis
        .combine(&coords[..basis.dim()])
        .add(&coboundary(alpha, z))
        .unwrap()
}

proptest! {
    #[test]
    fn word_inverse_cancels(w in word(3, 20)) {
        prop_assert!(w.concat(&w.inverse()).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w.clone());
    }

    #[test]
    fn word_text_round_trips(w in word(3, 20)) {
        let text = w.to_string();
        prop_assert_eq!(text.parse::<Word>().unwrap(), w);
    }

    #[test]
    fn abelianization_is_additive(u in word(3, 15), v in word(3, 15)) {
        prop_assert_eq!(abelianize(&u.concat(&v), 3), abelianize(&u, 3).add(&abelianize(&v, 3)));
    }

    #[test]
    fn character_is_multiplicative(alpha in character(2), u in word(2, 12), v in word(2, 12)) {
        let lhs = eval_character(&alpha, &u.concat(&v)).unwrap();
        let rhs = eval_character(&alpha, &u).unwrap() * eval_character(&alpha, &v).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0));
    }

    #[test]
    fn cocycle_rule_holds_on_words(
        alpha in character(2),
        coords in prop::collection::vec(complex(), 2),
        z in complex(),
        u in word(2, 10),
        v in word(2, 10),
    ) {
        let lambda = cocycle_over(&alpha, &coords, z);
        let lhs = eval_cocycle(&lambda, &u.concat(&v)).unwrap();
        let rhs = eval_cocycle(&lambda, &u).unwrap()
            + eval_character(&alpha, &u).unwrap() * eval_cocycle(&lambda, &v).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-8 * (1.0 + lhs.norm() + rhs.norm()));
    }

    #[test]
    fn coboundaries_are_detected(alpha in character(3), z in complex()) {
        prop_assume!(z.norm() > 1e-3);
        let b = coboundary(&alpha, z);
        prop_assert!(is_coboundary(&b, 1e-9));
        prop_assert!(eval_cocycle(&b, &relator_word(3)).unwrap().norm() <= 1e-9);
    }

    #[test]
    fn volume_is_real_and_quadratic(
        alpha in unitary(2),
        coords in prop::collection::vec(complex(), 2),
        z in complex(),
        c in complex(),
    ) {
        prop_assume!(cohomology_basis(&alpha).is_ok());
        let lambda = cocycle_over(&alpha, &coords, z);
        let h = hermitian_volume(&lambda, &lambda).unwrap();
        let scale = lambda.max_abs().powi(2).max(1.0);
        prop_assert!(h.im.abs() <= 1e-9 * scale);
        let v = volume(&lambda).unwrap();
        let w = volume(&lambda.scale(c)).unwrap();
        prop_assert!((w - c.norm_sqr() * v).abs() <= 1e-9 * scale * c.norm_sqr().max(1.0));
        let shifted = lambda.add(&coboundary(&alpha, c)).unwrap();
        prop_assert!((volume(&shifted).unwrap() - v).abs() <= 1e-9 * scale.max(shifted.max_abs().powi(2)));
    }

    #[test]
    fn jorgensen_is_conjugation_invariant(a in complex(), b in complex(), p in complex(), q in complex(), r in complex()) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let ma = Matrix2::new(one, a, zero, one);
        let mb = Matrix2::new(one, zero, b, one);
        // Conjugate by an SL(2,ℂ) element built from p, q, r.
        prop_assume!(p.norm() > 0.1);
        let c = Matrix2::new(p, q, r, (one + q * r) / p);
        let ci = Matrix2::new(c[(1, 1)], -c[(0, 1)], -c[(1, 0)], c[(0, 0)]);
        let base = jorgensen_value(&ma, &mb).unwrap();
        let conj = jorgensen_value(&(c * ma * ci), &(c * mb * ci)).unwrap();
        let scale = c.norm().powi(4).max(1.0);
        prop_assert!((base - conj).abs() <= 1e-9 * scale * base.max(1.0));
    }
}

#[test]
fn closed_form_agrees_with_relator() {
    let mut rng = affchar::rng::StreamRng::new(21, 0);
    for k in 0..1000 {
        let g = 2 + k % 4;
        let alpha = random_character(k as u64, g, CharacterLaw::TorusGaussian);
        let values: Vec<Complex64> = (0..2 * g)
            .map(|_| Complex64::new(rng.gaussian(), rng.gaussian()))
            .collect();
        let a = relator_residual(&alpha, &values);
        let b = closed_form_residual(&alpha, &values);
        let scale = 1.0 + alpha.values().iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((a - b).norm() <= 1e-10 * scale * scale, "{a} vs {b}");
    }
}

#[test]
fn projective_walk_ignores_generator_scaling() {
    let c = Complex64::new;
    let gens = vec![
        CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.3, -0.2), c(0.0, 0.0), c(1.0, 0.0)]),
        CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(-0.1, 0.4), c(1.0, 0.0)]),
    ];
    let scaled: Vec<CMatrix> = gens
        .iter()
        .zip([c(2.0, 1.0), c(-0.5, 3.0)])
        .map(|(m, s)| m * s)
        .collect();
    let cfg = WalkConfig::new(5, 2000);
    let start = [c(0.2, 0.1), c(1.0, 0.0)];
    let a = projective_walk(&gens, &start, &cfg).unwrap();
    let b = projective_walk(&scaled, &[start[0] * 7.0, start[1] * 7.0], &cfg).unwrap();
    let (Some(Points::Projective(pa)), Some(Points::Projective(pb))) = (a.points, b.points) else {
        panic!()
    };
    for (u, v) in pa.iter().zip(&pb) {
        for (x, y) in u.iter().zip(v) {
            assert!((x - y).norm() < 1e-8, "{x} vs {y}");
        }
    }
}

fn lattice_index(values: &[(i64, i64)]) -> BigInt {
    // Index of the lattice spanned by integer vectors: gcd of all 2×2 minors.
    let mut g = BigInt::from(0);
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            g = g.gcd(&BigInt::from(a.0 * b.1 - a.1 * b.0));
        }
    }
    g
}

#[test]
fn haupt_covolume_matches_minor_gcd() {
    let mut rng = affchar::rng::StreamRng::new(22, 0);
    let mut lattices = 0;
    for _ in 0..300 {
        let den = 1 + rng.index(6) as i64;
        let pts: Vec<(i64, i64)> = (0..4)
            .map(|_| (rng.index(13) as i64 - 6, rng.index(13) as i64 - 6))
            .collect();
        let values = pts
            .iter()
            .map(|&(re, im)| {
                GaussianRational::new(
                    BigRational::new(BigInt::from(re), BigInt::from(den)),
                    BigRational::new(BigInt::from(im), BigInt::from(den)),
                )
            })
            .collect();
        let report = haupt_check(&PeriodCharacter::exact(values));
        let index = lattice_index(&pts);
        if index == BigInt::from(0) {
            assert!(!report.lattice.is_lattice || report.lattice.rank < 2);
            continue;
        }
        lattices += 1;
        assert!(report.lattice.is_lattice);
        let covol = parse_rational(report.lattice.exact_covolume.as_deref().unwrap()).unwrap();
        assert_eq!(
            covol,
            BigRational::new(index, BigInt::from(den * den)),
            "{pts:?} / {den}"
        );
    }
    assert!(lattices > 200);
}

#[test]
fn haupt_verdict_is_scale_invariant() {
    let mut rng = affchar::rng::StreamRng::new(23, 0);
    for _ in 0..200 {
        let values: Vec<GaussianRational> = (0..4)
            .map(|_| GaussianRational::from_ints(rng.index(9) as i64 - 4, rng.index(9) as i64 - 4))
            .collect();
        let omega = PeriodCharacter::exact(values);
        let c = GaussianRational::from_ints(rng.index(5) as i64 + 1, rng.index(5) as i64 - 2);
        let a = haupt_check(&omega);
        let b = haupt_check(&omega.scale(&c));
        assert_eq!(a.status, b.status);
    }
}
