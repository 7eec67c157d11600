//! Twisted cocycles `λ(γγ') = λ(γ) + α(γ)λ(γ')`, the cohomology `H¹_α`, the
//! cup pairing and the Hermitian volume form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::{classify_character, Character, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::surface_group::{relator_word, Word};

/// Absolute tolerance of the relator constraint on unit-scale data.
pub const CONSTRAINT_TOL: f64 = 1e-10;

/// Normalization of the volume form: `v(λ) = Re(N · λ∧λ̄)` with `N = i/2`.
/// With this choice the untwisted cocycle `λ(a1) = 1, λ(b1) = i` has volume +1.
pub const VOLUME_NORMALIZATION: Complex64 = Complex64::new(0.0, 0.5);

/// A cocycle in `Z¹_α`, given by its values on the generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CocycleJson", into = "CocycleJson")]
pub struct Cocycle {
    character: Character,
    values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CocycleJson {
    alpha: Character,
    values: Vec<ComplexJson>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

impl TryFrom<CocycleJson> for Cocycle {
    type Error = Error;

    fn try_from(j: CocycleJson) -> Result<Self> {
        make_cocycle(&j.alpha, j.values.iter().map(|z| Complex64::new(z.re, z.im)).collect())
    }
}

impl From<Cocycle> for CocycleJson {
    fn from(c: Cocycle) -> Self {
        CocycleJson {
            values: c.values.iter().map(|z| ComplexJson { re: z.re, im: z.im }).collect(),
            alpha: c.character,
        }
    }
}

impl Cocycle {
    /// Wraps values without checking the relator constraint.
    pub fn unchecked(character: &Character, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != character.values().len() {
            return Err(Error::DimensionMismatch {
                expected: character.values().len(),
                found: values.len(),
            });
        }
        Ok(Cocycle {
            character: character.clone(),
            values,
        })
    }

    pub fn zero(character: &Character) -> Self {
        Cocycle {
            character: character.clone(),
            values: vec![Complex64::new(0.0, 0.0); character.values().len()],
        }
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn genus(&self) -> usize {
        self.character.genus()
    }

    pub fn relator_residual(&self) -> Complex64 {
        relator_residual(&self.character, &self.values)
    }

    pub fn check_constraint(&self, tol: f64) -> Result<()> {
        let residual = self.relator_residual();
        if residual.norm() > tol * constraint_scale(&self.character, &self.values) {
            return Err(Error::ConstraintViolated { residual });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        self.check_same_character(other)?;
        Ok(self.map_with(other, |x, y| x + y))
    }

    pub fn sub(&self, other: &Cocycle) -> Result<Cocycle> {
        self.check_same_character(other)?;
        Ok(self.map_with(other, |x, y| x - y))
    }

    pub fn scale(&self, a: Complex64) -> Cocycle {
        Cocycle {
            character: self.character.clone(),
            values: self.values.iter().map(|z| a * z).collect(),
        }
    }

    /// `γ ↦ conj(λ(γ))`, a cocycle over `ᾱ`.
    pub fn conj(&self) -> Cocycle {
        Cocycle {
            character: self.character.conj(),
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn map_with(&self, other: &Cocycle, f: impl Fn(Complex64, Complex64) -> Complex64) -> Cocycle {
        Cocycle {
            character: self.character.clone(),
            values: self.values.iter().zip(&other.values).map(|(&x, &y)| f(x, y)).collect(),
        }
    }

    fn check_same_character(&self, other: &Cocycle) -> Result<()> {
        if self.character.values() != other.character.values() {
            return Err(Error::CharacterMismatch);
        }
        Ok(())
    }
}

/// Twisted evaluation of raw generator values on a word, left to right.
fn eval_values(alpha: &[Complex64], values: &[Complex64], w: &Word) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prefix = Complex64::new(1.0, 0.0);
    for l in w.letters() {
        let k = l.generator;
        if l.inverse {
            prefix /= alpha[k];
            sum -= prefix * values[k];
        } else {
            sum += prefix * values[k];
            prefix *= alpha[k];
        }
    }
    sum
}

pub fn eval_cocycle(lambda: &Cocycle, w: &Word) -> Result<Complex64> {
    w.check_genus(lambda.genus())?;
    Ok(eval_values(lambda.character.values(), &lambda.values, w))
}

/// Coefficients `c_k` with `λ(w) = Σ c_k λ(x_k)` for every cocycle `λ` over `α`
/// (the Fox derivatives of `w` evaluated at `α`).
pub fn evaluation_functional(alpha: &Character, w: &Word) -> Result<Vec<Complex64>> {
    w.check_genus(alpha.genus())?;
    let n = alpha.values().len();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    let mut prefix = Complex64::new(1.0, 0.0);
    for l in w.letters() {
        let k = l.generator;
        if l.inverse {
            prefix /= alpha.value(k);
            coeffs[k] -= prefix;
        } else {
            coeffs[k] += prefix;
            prefix *= alpha.value(k);
        }
    }
    Ok(coeffs)
}

/// `λ(relator)` for candidate generator values.
pub fn relator_residual(alpha: &Character, values: &[Complex64]) -> Complex64 {
    eval_values(alpha.values(), values, &relator_word(alpha.genus()))
}

/// `Σ λ(a_i)(1−α(b_i)) + λ(b_i)(α(a_i)−1)`, the relator constraint in closed form.
pub fn closed_form_residual(alpha: &Character, values: &[Complex64]) -> Complex64 {
    relation_row(alpha).iter().zip(values).map(|(r, v)| r * v).sum()
}

/// Coefficients of the closed-form constraint.
pub fn relation_row(alpha: &Character) -> Vec<Complex64> {
    let a = alpha.values();
    let mut row = Vec::with_capacity(a.len());
    for h in a.chunks(2) {
        row.push(1.0 - h[1]);
        row.push(h[0] - 1.0);
    }
    row
}

fn constraint_scale(alpha: &Character, values: &[Complex64]) -> f64 {
    let lam = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let spread = alpha.values().iter().map(|z| (1.0 - z).norm()).fold(1.0, f64::max);
    1.0f64.max(lam * spread)
}

/// Validates the relator constraint at [`CONSTRAINT_TOL`].
pub fn make_cocycle(alpha: &Character, values: Vec<Complex64>) -> Result<Cocycle> {
    let c = Cocycle::unchecked(alpha, values)?;
    c.check_constraint(CONSTRAINT_TOL)?;
    Ok(c)
}

/// `z·(1−α(·))`.
pub fn coboundary(alpha: &Character, z: Complex64) -> Cocycle {
    Cocycle {
        character: alpha.clone(),
        values: alpha.values().iter().map(|a| z * (1.0 - a)).collect(),
    }
}

/// `b(1−α) + aλ`, the effect on `λ` of conjugating `ρ` by `z ↦ az + b`.
pub fn conjugate_action(a: Complex64, b: Complex64, lambda: &Cocycle) -> Result<Cocycle> {
    if a.norm() == 0.0 {
        return Err(Error::ZeroScalar);
    }
    lambda.scale(a).add(&coboundary(&lambda.character, b))
}

fn argmax_norm(v: &[Complex64], skip: Option<usize>) -> usize {
    let mut best = None;
    for (k, z) in v.iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        match best {
            Some((_, m)) if z.norm() <= m => {}
            _ => best = Some((k, z.norm())),
        }
    }
    best.map(|(k, _)| k).unwrap_or(0)
}

/// Whether `λ` lies on the coboundary line, up to `tol` relative to `max|λ|`.
pub fn is_coboundary(lambda: &Cocycle, tol: f64) -> bool {
    let c = coboundary(&lambda.character, Complex64::new(1.0, 0.0));
    let scale = 1.0f64.max(lambda.max_abs());
    if c.max_abs() <= tol {
        return lambda.max_abs() <= tol * scale;
    }
    let q = argmax_norm(c.values(), None);
    let z = lambda.values[q] / c.values[q];
    lambda
        .values
        .iter()
        .zip(&c.values)
        .all(|(l, cv)| (l - z * cv).norm() <= tol * scale)
}

fn is_numerically_trivial(alpha: &Character) -> bool {
    match alpha.exact_values() {
        Some(_) => classify_character(alpha, 0.0).trivial,
        None => alpha.values().iter().all(|z| (1.0 - z).norm() <= 1e-12),
    }
}

/// Representatives of a basis of `H¹_α`, completing `1−α` to a basis of `Z¹_α`.
///
/// The relation row is solved for its largest coefficient (index `p`), the
/// coboundary direction is pinned by its largest remaining coordinate
/// (index `q`), and the representative for each other index `k` is
/// `e_k − (r_k/r_p) e_p`. Ties go to the lowest index.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyBasis {
    character: Character,
    relation_pivot: usize,
    coboundary_pivot: usize,
    free: Vec<usize>,
    representatives: Vec<Cocycle>,
}

impl CohomologyBasis {
    pub fn character(&self) -> &Character {
        &self.character
    }

    pub fn representatives(&self) -> &[Cocycle] {
        &self.representatives
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn relation_pivot(&self) -> usize {
        self.relation_pivot
    }

    pub fn coboundary_pivot(&self) -> usize {
        self.coboundary_pivot
    }

    /// Generator indices used as free coordinates, in representative order.
    pub fn free_indices(&self) -> &[usize] {
        &self.free
    }

    /// Splits `λ = Σ x_k rep_k + z(1−α)` and returns `(x, z)`.
    pub fn decompose(&self, lambda: &Cocycle) -> Result<(Vec<Complex64>, Complex64)> {
        if lambda.character.values() != self.character.values() {
            return Err(Error::CharacterMismatch);
        }
        let c = coboundary(&self.character, Complex64::new(1.0, 0.0));
        let q = self.coboundary_pivot;
        let z = lambda.values[q] / c.values[q];
        let coords = self.free.iter().map(|&k| lambda.values[k] - z * c.values[k]).collect();
        Ok((coords, z))
    }

    /// `Σ x_k rep_k` (the coboundary part dropped).
    pub fn combine(&self, coords: &[Complex64]) -> Cocycle {
        let mut out = Cocycle::zero(&self.character);
        for (x, rep) in coords.iter().zip(&self.representatives) {
            out = out.add(&rep.scale(*x)).expect("same character");
        }
        out
    }

    /// `rep_1,…,rep_{2g−2}, 1−α` as matrix columns.
    pub fn z1_matrix(&self) -> CMatrix {
        let n = self.character.values().len();
        let c = coboundary(&self.character, Complex64::new(1.0, 0.0));
        let cols: Vec<&Cocycle> = self.representatives.iter().chain(std::iter::once(&c)).collect();
        CMatrix::from_fn(n, cols.len(), |i, j| cols[j].values[i])
    }
}

pub fn cohomology_basis(alpha: &Character) -> Result<CohomologyBasis> {
    if is_numerically_trivial(alpha) {
        return Err(Error::TrivialCharacter);
    }
    let r = relation_row(alpha);
    let p = argmax_norm(&r, None);
    let c = coboundary(alpha, Complex64::new(1.0, 0.0));
    let q = argmax_norm(c.values(), Some(p));
    let free: Vec<usize> = (0..r.len()).filter(|&k| k != p && k != q).collect();
    let representatives = free
        .iter()
        .map(|&k| {
            let mut v = vec![Complex64::new(0.0, 0.0); r.len()];
            v[k] = Complex64::new(1.0, 0.0);
            v[p] = -r[k] / r[p];
            Cocycle {
                character: alpha.clone(),
                values: v,
            }
        })
        .collect();
    Ok(CohomologyBasis {
        character: alpha.clone(),
        relation_pivot: p,
        coboundary_pivot: q,
        free,
        representatives,
    })
}

/// Coordinates of the class of `λ` in the basis.
pub fn cohomology_class(lambda: &Cocycle, basis: &CohomologyBasis) -> Result<Vec<Complex64>> {
    Ok(basis.decompose(lambda)?.0)
}

/// Dimension counts with their singular-value certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dimensions {
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
    /// Singular values of the relator-evaluation map `ℂ^{2g} → ℂ`.
    pub relator_singular_values: Vec<f64>,
    /// Singular values of the coboundary map `ℂ → Z¹_α`.
    pub coboundary_singular_values: Vec<f64>,
}

/// `dim Z¹_α`, `dim B¹_α` and `dim H¹_α` by numeric rank.
///
/// The relator-evaluation map is assembled by evaluating the relator word on
/// unit vectors, independently of the closed-form relation.
pub fn cohomology_dimensions(alpha: &Character) -> Dimensions {
    let n = alpha.values().len();
    let rel = relator_word(alpha.genus());
    let row: Vec<Complex64> = (0..n)
        .map(|k| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[k] = Complex64::new(1.0, 0.0);
            eval_values(alpha.values(), &e, &rel)
        })
        .collect();
    let rsv = linalg::singular_values(&CMatrix::from_row_slice(1, n, &row));
    let c = coboundary(alpha, Complex64::new(1.0, 0.0));
    let csv = linalg::singular_values(&CMatrix::from_column_slice(n, 1, c.values()));
    let z1 = n - linalg::numeric_rank(&rsv);
    let b1 = linalg::numeric_rank(&csv);
    Dimensions {
        z1,
        b1,
        h1: z1 - b1,
        relator_singular_values: rsv,
        coboundary_singular_values: csv,
    }
}

/// The cup product `u∧v ∈ H²_{αβ}` evaluated on the fundamental class of the
/// relator, for `u` over `α` and `v` over `β`.
///
/// The chain is the Fox-calculus 2-cycle: a letter `x` at step `k` contributes
/// `+[p_{k−1}|x]`, a letter `x⁻¹` contributes `−[p_k|x]`, where `p_k` is the
/// prefix of length `k`. A bar 2-cochain `[g|h] ↦ u(g)β(g)v(h)` is evaluated
/// on it.
pub fn cup_pairing(u: &Cocycle, v: &Cocycle) -> Result<Complex64> {
    if u.genus() != v.genus() {
        return Err(Error::GenusMismatch {
            expected: u.genus(),
            found: v.genus(),
        });
    }
    let alpha = u.character.values();
    let beta = v.character.values();
    let mut total = Complex64::new(0.0, 0.0);
    // u, α and β on the current prefix.
    let mut up = Complex64::new(0.0, 0.0);
    let mut ap = Complex64::new(1.0, 0.0);
    let mut bp = Complex64::new(1.0, 0.0);
    for l in relator_word(u.genus()).letters() {
        let k = l.generator;
        if l.inverse {
            ap /= alpha[k];
            up -= ap * u.values[k];
            bp /= beta[k];
            total -= up * bp * v.values[k];
        } else {
            total += up * bp * v.values[k];
            up += ap * u.values[k];
            ap *= alpha[k];
            bp *= beta[k];
        }
    }
    Ok(total)
}

fn require_volume_character(alpha: &Character) -> Result<()> {
    if !classify_character(alpha, DEFAULT_TOL).unitary {
        return Err(Error::NotUnitary);
    }
    if is_numerically_trivial(alpha) {
        return Err(Error::TrivialCharacter);
    }
    Ok(())
}

/// `N · λ∧μ̄`, sesquilinear in `(λ, μ)`.
pub fn hermitian_volume(lambda: &Cocycle, mu: &Cocycle) -> Result<Complex64> {
    require_volume_character(lambda.character())?;
    if lambda.character.values() != mu.character.values() {
        return Err(Error::CharacterMismatch);
    }
    Ok(VOLUME_NORMALIZATION * cup_pairing(lambda, &mu.conj())?)
}

/// The volume `v(λ)` of a cocycle over a nontrivial unitary character.
pub fn volume(lambda: &Cocycle) -> Result<f64> {
    Ok(hermitian_volume(lambda, lambda)?.re)
}

/// Gram matrix of the volume form in a cohomology basis.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianGram {
    pub character: Character,
    pub matrix: CMatrix,
}

impl HermitianGram {
    pub fn hermitian_defect(&self) -> f64 {
        linalg::hermitian_defect(&self.matrix)
    }

    /// Smallest singular value divided by the largest.
    pub fn conditioning(&self) -> f64 {
        let sv = linalg::singular_values(&self.matrix);
        match (sv.first(), sv.last()) {
            (Some(&hi), Some(&lo)) if hi > 0.0 => lo / hi,
            _ => 0.0,
        }
    }
}

pub fn volume_gram(alpha: &Character, basis: &CohomologyBasis) -> Result<HermitianGram> {
    require_volume_character(alpha)?;
    if basis.character.values() != alpha.values() {
        return Err(Error::CharacterMismatch);
    }
    let reps = basis.representatives();
    let n = reps.len();
    let mut m = CMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            m[(j, k)] = hermitian_volume(&reps[j], &reps[k])?;
        }
    }
    Ok(HermitianGram {
        character: alpha.clone(),
        matrix: m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub near_zero: usize,
}

/// Eigenvalue sign counts of a Hermitian matrix; eigenvalues with `|λ| < tol`
/// count as near zero. The Hermitian check uses the same tolerance scaled by
/// the largest entry.
pub fn signature(m: &CMatrix, tol: f64) -> Result<Signature> {
    let defect = linalg::hermitian_defect(m);
    if defect > tol * linalg::max_abs(m).max(1.0) {
        return Err(Error::NonHermitian { defect });
    }
    let mut s = Signature {
        positive: 0,
        negative: 0,
        near_zero: 0,
    };
    for e in linalg::hermitian_eigenvalues(m) {
        if e.abs() < tol {
            s.near_zero += 1;
        } else if e > 0.0 {
            s.positive += 1;
        } else {
            s.negative += 1;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reals(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| c(x, 0.0)).collect()
    }

    #[test]
    fn cocycle_rule_by_hand() {
        let alpha = Character::from_real(&[2.0, 1.0]).unwrap();
        let lam = Cocycle::unchecked(&alpha, reals(&[5.0, 0.0])).unwrap();
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(eval_cocycle(&lam, &w("a1 a1")).unwrap(), c(15.0, 0.0));
        assert_eq!(eval_cocycle(&lam, &w("a1'")).unwrap(), c(-2.5, 0.0));
        assert_eq!(eval_cocycle(&lam, &Word::empty()).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn make_cocycle_examples() {
        // α(a1)=1, α(b1)=2, α(a2)=1, α(b2)=3: the relation is −λ(a1) − 2λ(a2) = 0.
        let alpha = Character::from_real(&[1.0, 2.0, 1.0, 3.0]).unwrap();
        assert!(make_cocycle(&alpha, reals(&[2.0, 7.0, -1.0, 0.0])).is_ok());
        assert!(make_cocycle(&alpha, reals(&[0.0; 4])).is_ok());
        match make_cocycle(&alpha, reals(&[1.0, 0.0, 0.0, 0.0])) {
            Err(Error::ConstraintViolated { residual }) => assert_eq!(residual, c(-1.0, 0.0)),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            closed_form_residual(&alpha, &reals(&[1.0, 0.0, 0.0, 0.0])),
            c(-1.0, 0.0)
        );
    }

    #[test]
    fn coboundaries() {
        let alpha = Character::from_real(&[2.0, 1.0, 3.0, 1.0]).unwrap();
        assert_eq!(coboundary(&alpha, c(1.0, 0.0)).values()[0], c(-1.0, 0.0));
        assert_eq!(coboundary(&alpha, c(0.0, 0.0)).max_abs(), 0.0);
        assert_eq!(coboundary(&Character::trivial(2), c(3.0, 1.0)).max_abs(), 0.0);
        assert!(coboundary(&alpha, c(0.3, -2.0))
            .check_constraint(CONSTRAINT_TOL)
            .is_ok());
        let lam = make_cocycle(&alpha, reals(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        let moved = conjugate_action(c(1.0, 0.0), c(1.0, 0.0), &lam).unwrap();
        assert_eq!(moved, lam.add(&coboundary(&alpha, c(1.0, 0.0))).unwrap());
        assert_eq!(conjugate_action(c(1.0, 0.0), c(0.0, 0.0), &lam).unwrap(), lam);
        assert!(conjugate_action(c(0.0, 0.0), c(1.0, 0.0), &lam).is_err());
    }

    #[test]
    fn basis_and_coordinates() {
        let alpha = Character::new(vec![c(2.0, 1.0), c(0.5, -0.2), c(-1.0, 0.3), c(1.5, 0.0)]).unwrap();
        let basis = cohomology_basis(&alpha).unwrap();
        assert_eq!(basis.dim(), 2);
        assert_eq!(linalg::numeric_rank(&linalg::singular_values(&basis.z1_matrix())), 3);
        for rep in basis.representatives() {
            rep.check_constraint(CONSTRAINT_TOL).unwrap();
        }
        let r0 = &basis.representatives()[0];
        let shifted = r0.add(&coboundary(&alpha, c(1.0, 0.0))).unwrap();
        let x = cohomology_class(&shifted, &basis).unwrap();
        assert!((x[0] - 1.0).norm() < 1e-14 && x[1].norm() < 1e-14);
        let x = cohomology_class(&coboundary(&alpha, c(0.7, 0.1)), &basis).unwrap();
        assert!(x.iter().all(|z| z.norm() < 1e-14));
        let doubled = conjugate_action(c(2.0, 0.0), c(0.0, 0.0), r0).unwrap();
        assert!((cohomology_class(&doubled, &basis).unwrap()[0] - 2.0).norm() < 1e-14);
        assert_eq!(cohomology_basis(&Character::trivial(2)), Err(Error::TrivialCharacter));
        let g3 = Character::new(vec![c(2.0, 1.0); 6]).unwrap();
        assert_eq!(cohomology_basis(&g3).unwrap().dim(), 4);
    }

    #[test]
    fn dimensions() {
        let alpha = Character::new(vec![c(2.0, 1.0), c(0.5, -0.2), c(-1.0, 0.3), c(1.5, 0.0)]).unwrap();
        let d = cohomology_dimensions(&alpha);
        assert_eq!((d.z1, d.b1, d.h1), (3, 1, 2));
        let d = cohomology_dimensions(&Character::trivial(2));
        assert_eq!((d.z1, d.b1, d.h1), (4, 0, 4));
    }

    #[test]
    fn untwisted_cup_is_intersection_form() {
        let one = Character::trivial(2);
        let u = Cocycle::unchecked(&one, reals(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        let v = Cocycle::unchecked(&one, reals(&[0.0, 1.0, 0.0, 0.0])).unwrap();
        assert_eq!(cup_pairing(&u, &v).unwrap(), c(1.0, 0.0));
        assert_eq!(cup_pairing(&v, &u).unwrap(), c(-1.0, 0.0));
        assert_eq!(cup_pairing(&u, &Cocycle::zero(&one)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn volume_normalization_is_positive_on_holomorphic_like_vector() {
        let one = Character::trivial(1);
        let lam = Cocycle::unchecked(&one, vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let v = VOLUME_NORMALIZATION * cup_pairing(&lam, &lam.conj()).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
    }

    #[test]
    fn signature_examples() {
        let id = CMatrix::identity(2, 2);
        assert_eq!(
            signature(&id, 1e-9).unwrap(),
            Signature {
                positive: 2,
                negative: 0,
                near_zero: 0
            }
        );
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0)]));
        assert_eq!(
            signature(&d, 1e-9).unwrap(),
            Signature {
                positive: 1,
                negative: 1,
                near_zero: 0
            }
        );
        let z = CMatrix::zeros(3, 3);
        assert_eq!(signature(&z, 1e-9).unwrap().near_zero, 3);
        let mut bad = CMatrix::identity(2, 2);
        bad[(0, 1)] = c(1.0, 0.0);
        assert!(signature(&bad, 1e-9).is_err());
    }
}
