//! Separating Dehn twists acting on twisted cocycles.
//!
//! A twist `T` along a separating curve with based representative `δ̃`
//! changes a cocycle by `λ(T γ) = λ(γ) + μ(γ) λ(δ̃)`, where
//! `μ(γ) = α(γ) Σ_i ε_i α(β_i)⁻¹` is read off the signed crossings of `γ`
//! with the curve. [`TwistData`] stores those crossings per generator.

pub mod curves;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::{handle_parameters, Character, HandleConvention};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::surface_group::{abelianize, HomologyVector, Word};
use crate::twisted_cohomology::{
    coboundary, eval_cocycle, evaluation_functional, Cocycle, CohomologyBasis, CONSTRAINT_TOL,
};

pub use curves::{standard_curve_system, CurveSystem, SeparatingTwist};

/// Tolerance below which a handle factor counts as vanishing.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaTerm {
    pub sign: i8,
    pub class: HomologyVector,
}

impl BetaTerm {
    pub fn new(sign: i8, class: HomologyVector) -> Self {
        BetaTerm { sign, class }
    }
}

/// Removes adjacent terms of opposite sign and equal class. The result still
/// alternates in sign and gives the same twist coefficient.
pub fn reduce_beta_terms(terms: &[BetaTerm]) -> Vec<BetaTerm> {
    let mut out: Vec<BetaTerm> = Vec::new();
    for t in terms {
        match out.last() {
            Some(top) if top.sign == -t.sign && top.class == t.class => {
                out.pop();
            }
            _ => out.push(t.clone()),
        }
    }
    out
}

/// `α(γ) Σ ε_i α(β_i)⁻¹`.
pub fn twist_coefficient(alpha: &Character, gamma: &HomologyVector, terms: &[BetaTerm]) -> Result<Complex64> {
    let ag = alpha.eval_homology(gamma)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for t in terms {
        sum += f64::from(t.sign) / alpha.eval_homology(&t.class)?;
    }
    Ok(ag * sum)
}

/// A twist along a based separating curve, with signed β-classes per generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistData {
    pub name: String,
    pub based_curve: Word,
    pub beta: Vec<Vec<BetaTerm>>,
}

impl TwistData {
    pub fn genus(&self) -> usize {
        self.beta.len() / 2
    }

    pub fn is_null_homologous(&self) -> bool {
        abelianize(&self.based_curve, self.genus()).is_zero()
    }

    /// Shape checks: one list per generator, classes of the right length, and
    /// signs alternating from `+`.
    pub fn validate(&self) -> Result<()> {
        let g = self.genus();
        if self.beta.len() != 2 * g || g == 0 {
            return Err(Error::DimensionMismatch {
                expected: 2 * g.max(1),
                found: self.beta.len(),
            });
        }
        self.based_curve.check_genus(g)?;
        for (x, terms) in self.beta.iter().enumerate() {
            for (k, t) in terms.iter().enumerate() {
                if t.class.0.len() != 2 * g {
                    return Err(Error::DimensionMismatch {
                        expected: 2 * g,
                        found: t.class.0.len(),
                    });
                }
                let expected = if k % 2 == 0 { 1 } else { -1 };
                if t.sign != expected {
                    return Err(Error::BetaOrder { generator: x });
                }
            }
        }
        Ok(())
    }
}

/// The cocycle `μ` of a twist.
pub fn twist_cocycle_mu(alpha: &Character, data: &TwistData) -> Result<Cocycle> {
    data.validate()?;
    alpha.check_same_genus(data.genus())?;
    let g = alpha.genus();
    let values = data
        .beta
        .iter()
        .enumerate()
        .map(|(x, terms)| twist_coefficient(alpha, &HomologyVector::basis(g, x), terms))
        .collect::<Result<Vec<_>>>()?;
    let mu = Cocycle::unchecked(alpha, values)?;
    mu.check_constraint(CONSTRAINT_TOL)
        .map_err(|_| Error::InconsistentBetaData {
            residual: mu.relator_residual(),
        })?;
    Ok(mu)
}

/// `λ ↦ λ + λ(δ̃)·μ` on `Z¹_α`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistAction {
    mu: Cocycle,
    curve: Word,
    functional: Vec<Complex64>,
}

impl TwistAction {
    pub fn mu(&self) -> &Cocycle {
        &self.mu
    }

    pub fn curve(&self) -> &Word {
        &self.curve
    }

    /// Coefficients of `λ ↦ λ(δ̃)`.
    pub fn functional(&self) -> &[Complex64] {
        &self.functional
    }

    fn shift(&self, lambda: &Cocycle, sign: f64) -> Result<Cocycle> {
        let k = eval_cocycle(lambda, &self.curve)?;
        lambda.add(&self.mu.scale(k * sign))
    }

    pub fn apply(&self, lambda: &Cocycle) -> Result<Cocycle> {
        self.shift(lambda, 1.0)
    }

    pub fn apply_inverse(&self, lambda: &Cocycle) -> Result<Cocycle> {
        self.shift(lambda, -1.0)
    }

    /// Matrix on generator values `ℂ^{2g}`: `I + μ φᵀ`.
    pub fn matrix(&self) -> CMatrix {
        let n = self.functional.len();
        CMatrix::from_fn(n, n, |i, j| {
            let id = if i == j { 1.0 } else { 0.0 };
            Complex64::new(id, 0.0) + self.mu.values()[i] * self.functional[j]
        })
    }

    /// Matrix of the induced map on `H¹_α` in the basis coordinates.
    pub fn matrix_in_basis(&self, basis: &CohomologyBasis) -> Result<CMatrix> {
        let n = basis.dim();
        let mut m = CMatrix::zeros(n, n);
        for (j, rep) in basis.representatives().iter().enumerate() {
            let (coords, _) = basis.decompose(&self.apply(rep)?)?;
            for i in 0..n {
                m[(i, j)] = coords[i];
            }
        }
        Ok(m)
    }

    /// Matrix of the induced map on `H¹_α` in the basis of the classes of
    /// `classes`, solved directly on cocycle values modulo the coboundary line.
    /// Better conditioned than going through [`CohomologyBasis`] when `α` has
    /// large entries.
    pub fn matrix_on_classes(&self, classes: &[Cocycle]) -> Result<CMatrix> {
        let Some(first) = classes.first() else {
            return Err(Error::Empty);
        };
        let alpha = first.character();
        let n = classes.len();
        let dim = alpha.values().len();
        let cob = coboundary(alpha, Complex64::new(1.0, 0.0));
        let mut columns = CMatrix::zeros(dim, n + 1);
        let mut norms = Vec::with_capacity(n + 1);
        for (j, v) in classes.iter().map(|c| c.values()).chain([cob.values()]).enumerate() {
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::ZeroValue(j));
            }
            norms.push(norm);
            for (i, z) in v.iter().enumerate() {
                columns[(i, j)] = z / norm;
            }
        }
        let mut out = CMatrix::zeros(n, n);
        for (j, c) in classes.iter().enumerate() {
            let image = self.apply(c)?;
            let x = linalg::solve_in_span(&columns, &CVector::from_column_slice(image.values()), 1e-9)?;
            for i in 0..n {
                out[(i, j)] = x[i] / norms[i];
            }
        }
        Ok(out)
    }
}

pub fn twist_action_on_z1(alpha: &Character, data: &TwistData) -> Result<TwistAction> {
    let mu = twist_cocycle_mu(alpha, data)?;
    let self_value = eval_cocycle(&mu, &data.based_curve)?;
    if self_value.norm() > CONSTRAINT_TOL * 1f64.max(mu.max_abs()) {
        return Err(Error::NotUnipotent { value: self_value });
    }
    let functional = evaluation_functional(alpha, &data.based_curve)?;
    Ok(TwistAction {
        mu,
        curve: data.based_curve.clone(),
        functional,
    })
}

/// Expresses a linear map on `H¹_α`, given in basis coordinates, in the basis
/// formed by the classes of `classes`.
pub fn matrix_in_classes(basis_matrix: &CMatrix, basis: &CohomologyBasis, classes: &[Cocycle]) -> Result<CMatrix> {
    let n = basis.dim();
    if classes.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: classes.len(),
        });
    }
    let mut b = CMatrix::zeros(n, n);
    for (j, c) in classes.iter().enumerate() {
        let (coords, _) = basis.decompose(c)?;
        for i in 0..n {
            b[(i, j)] = coords[i];
        }
    }
    let mut out = CMatrix::zeros(n, n);
    let image = basis_matrix * &b;
    for j in 0..n {
        let col = linalg::solve_in_span(&b, &CVector::from_column_slice(image.column(j).as_slice()), 1e-9)?;
        out.set_column(j, &col);
    }
    Ok(out)
}

/// True iff the twist acts trivially on `H₁`: every generator image differs
/// from the generator by `(Σ ε_i)·[δ̃]`, so this holds when `[δ̃] = 0` or every
/// β-list has zero signed count.
pub fn verify_torelli(data: &TwistData) -> bool {
    let g = data.genus().max(data.based_curve.min_genus());
    let curve = abelianize(&data.based_curve, g);
    data.beta.iter().all(|terms| {
        let total: i64 = terms.iter().map(|t| i64::from(t.sign)).sum();
        curve.scale(total).is_zero()
    })
}

fn factor(alpha: &Character, generator: usize, inverse: bool, label: &str) -> Result<Complex64> {
    let z = alpha.value(generator);
    let f = 1.0 - if inverse { z.inv() } else { z };
    if f.norm() <= DEGENERACY_TOL {
        return Err(Error::Degenerate {
            factor: label.to_string(),
        });
    }
    Ok(f)
}

/// `M₁ = [[1, (1−α(a1)⁻¹)(1−α(a2)⁻¹)], [0, 1]]`, `M₂ = [[1, 0], [(1−α(a1))(1−α(a2)), 1]]`.
pub fn genus2_standard_twists(alpha: &Character) -> Result<(Matrix2<Complex64>, Matrix2<Complex64>)> {
    alpha.check_same_genus(2)?;
    let t = factor(alpha, 0, false, "1−α(a1)")? * factor(alpha, 2, false, "1−α(a2)")?;
    let s = factor(alpha, 0, true, "1−α(a1)⁻¹")? * factor(alpha, 2, true, "1−α(a2)⁻¹")?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    Ok((Matrix2::new(one, s, zero, one), Matrix2::new(one, zero, t, one)))
}

/// The Torelli representation on `H¹_α` in the basis `[μ_1],[ν_1],…`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorelliRep {
    pub character: Character,
    /// `(t_i, s_i)` per handle.
    pub handle_params: Vec<(Complex64, Complex64)>,
    /// `δ_1, η_1, δ_2, η_2, …`: the `δ_i` generator is `[[1, s_i],[0, 1]]` on
    /// block `i`, the `η_i` generator `[[1, 0],[t_i, 1]]`.
    pub generators: Vec<CMatrix>,
}

pub fn higher_genus_rep(alpha: &Character) -> Result<TorelliRep> {
    higher_genus_rep_with(alpha, &HandleConvention::standard(alpha.genus()))
}

pub fn higher_genus_rep_with(alpha: &Character, convention: &HandleConvention) -> Result<TorelliRep> {
    let g = alpha.genus();
    if g < 2 {
        return Err(Error::GenusOutOfScope(g));
    }
    alpha.check_same_genus(convention.genus())?;
    let n = 2 * (g - 1);
    let mut params = Vec::with_capacity(g - 1);
    let mut generators = Vec::with_capacity(n);
    for i in 1..g {
        let (x, y) = &convention.handles[i - 1];
        for c in [x, y] {
            if (1.0 - alpha.eval_homology(c)?).norm() <= DEGENERACY_TOL {
                return Err(Error::Degenerate {
                    factor: format!("1−α({c})"),
                });
            }
        }
        let (t, s) = handle_parameters(alpha, i, convention)?;
        if t.norm() <= DEGENERACY_TOL || s.norm() <= DEGENERACY_TOL {
            return Err(Error::Degenerate {
                factor: format!("t_{i}·s_{i}"),
            });
        }
        params.push((t, s));
        let b = 2 * (i - 1);
        let mut d = CMatrix::identity(n, n);
        d[(b, b + 1)] = s;
        let mut e = CMatrix::identity(n, n);
        e[(b + 1, b)] = t;
        generators.push(d);
        generators.push(e);
    }
    Ok(TorelliRep {
        character: alpha.clone(),
        handle_params: params,
        generators,
    })
}

/// The genus-2 twists along `δ1` and `δ2`, shipped as a versioned asset.
pub fn genus2_fixture() -> (TwistData, TwistData) {
    #[derive(Deserialize)]
    struct Asset {
        version: u32,
        twists: Vec<TwistData>,
    }
    let asset: Asset =
        serde_json::from_str(include_str!("../../assets/genus2_twists.json")).expect("bundled asset parses");
    assert_eq!(asset.version, 1);
    let mut it = asset.twists.into_iter();
    (it.next().expect("delta1"), it.next().expect("delta2"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn coefficient_walkthrough() {
        // β-classes 0, a1⁻¹, a1⁻¹a2⁻¹, a2⁻¹ with alternating signs.
        let terms: Vec<BetaTerm> = [
            (1, [0, 0, 0, 0]),
            (-1, [-1, 0, 0, 0]),
            (1, [-1, 0, -1, 0]),
            (-1, [0, 0, -1, 0]),
        ]
        .into_iter()
        .map(|(s, v)| BetaTerm::new(s, HomologyVector(v.to_vec())))
        .collect();
        let alpha = Character::from_real(&[2.0, 1.0, 3.0, 1.0]).unwrap();
        let v = twist_coefficient(&alpha, &HomologyVector::zero(2), &terms).unwrap();
        assert!((v - c(2.0)).norm() < 1e-14);
        assert_eq!(
            twist_coefficient(&alpha, &HomologyVector::basis(2, 0), &[]).unwrap(),
            c(0.0)
        );
    }

    #[test]
    fn standard_matrices() {
        let alpha = Character::from_real(&[2.0, 1.0, 3.0, 1.0]).unwrap();
        let (m1, m2) = genus2_standard_twists(&alpha).unwrap();
        assert!((m1[(0, 1)] - c(1.0 / 3.0)).norm() < 1e-15);
        assert!((m2[(1, 0)] - c(2.0)).norm() < 1e-15);
        let bad = Character::from_real(&[1.0, 2.0, 3.0, 1.0]).unwrap();
        assert_eq!(
            genus2_standard_twists(&bad),
            Err(Error::Degenerate {
                factor: "1−α(a1)".into()
            })
        );
    }

    #[test]
    fn torelli_check() {
        let (d1, d2) = genus2_fixture();
        assert!(verify_torelli(&d1) && verify_torelli(&d2));
        let trivial = TwistData {
            name: "id".into(),
            based_curve: Word::empty(),
            beta: vec![Vec::new(); 4],
        };
        assert!(verify_torelli(&trivial));
        // A nonseparating curve a1 crossed once by b1.
        let mut beta = vec![Vec::new(); 4];
        beta[1] = vec![BetaTerm::new(1, HomologyVector::basis(2, 1))];
        let synthetic = TwistData {
            name: "a1".into(),
            based_curve: "a1".parse().unwrap(),
            beta,
        };
        assert!(!verify_torelli(&synthetic));
    }

    #[test]
    fn beta_order_is_checked() {
        let (mut d1, _) = genus2_fixture();
        d1.beta[0].swap(0, 1);
        assert_eq!(d1.validate(), Err(Error::BetaOrder { generator: 0 }));
    }
}
