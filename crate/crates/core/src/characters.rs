//! Characters `α ∈ Hom(H₁(S,ℤ), ℂ*)` and affine representations `ρ = (α, λ)`.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::StreamRng;
use crate::surface_group::{abelianize, HomologyVector, Word};
use crate::twisted_cohomology::{is_coboundary, Cocycle};

/// Default tolerance for unit-circle and real-line membership.
pub const DEFAULT_TOL: f64 = 1e-9;

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => match s.split_once('.') {
            // Finite decimals are exact: "-0.125" is -125/1000.
            Some((int, frac)) if !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit()) => {
                let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
                Ok(BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32)))
            }
            Some(_) => Err(bad()),
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        },
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// An exact nonzero value `modulus · e^{2πi·turns}` with rational modulus > 0
/// and rational `turns` reduced into `[0,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactValue {
    modulus: BigRational,
    turns: BigRational,
}

impl ExactValue {
    pub fn new(modulus: BigRational, turns: BigRational) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(Error::Parse("exact modulus must be positive".into()));
        }
        let turns = &turns - turns.floor();
        Ok(ExactValue { modulus, turns })
    }

    pub fn parse(modulus: &str, turns: &str) -> Result<Self> {
        Self::new(parse_rational(modulus)?, parse_rational(turns)?)
    }

    pub fn one() -> Self {
        ExactValue {
            modulus: BigRational::one(),
            turns: BigRational::zero(),
        }
    }

    pub fn modulus(&self) -> &BigRational {
        &self.modulus
    }

    /// The argument divided by 2π.
    pub fn turns(&self) -> &BigRational {
        &self.turns
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(rational_to_f64(&self.modulus), TAU * rational_to_f64(&self.turns))
    }

    pub fn pow(&self, k: i64) -> Self {
        let modulus = num_traits::pow::Pow::pow(&self.modulus, k as i32);
        let turns = &self.turns * BigRational::from_integer(k.into());
        ExactValue::new(modulus, turns).expect("powers of a positive modulus are positive")
    }

    pub fn mul(&self, other: &Self) -> Self {
        ExactValue::new(&self.modulus * &other.modulus, &self.turns + &other.turns)
            .expect("products of positive moduli are positive")
    }

    pub fn is_one(&self) -> bool {
        self.modulus.is_one() && self.turns.is_zero()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    #[default]
    Float,
    Exact,
}

/// A character of the genus-g surface group, stored by its values on
/// `a1,b1,…,ag,bg`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CharacterJson", into = "CharacterJson")]
pub struct Character {
    values: Vec<Complex64>,
    exact: Option<Vec<ExactValue>>,
}

impl Character {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() || !values.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2 * (values.len() / 2).max(1),
                found: values.len(),
            });
        }
        if let Some(k) = values.iter().position(|z| z.norm() == 0.0 || !z.is_finite()) {
            return Err(Error::ZeroValue(k));
        }
        Ok(Character { values, exact: None })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn exact(values: Vec<ExactValue>) -> Result<Self> {
        let mut c = Self::new(values.iter().map(ExactValue::to_complex).collect())?;
        c.exact = Some(values);
        Ok(c)
    }

    pub fn trivial(genus: usize) -> Self {
        Self::exact(vec![ExactValue::one(); 2 * genus]).expect("nonempty")
    }

    pub fn genus(&self) -> usize {
        self.values.len() / 2
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, generator: usize) -> Complex64 {
        self.values[generator]
    }

    pub fn exact_values(&self) -> Option<&[ExactValue]> {
        self.exact.as_deref()
    }

    pub fn mode(&self) -> NumericMode {
        if self.exact.is_some() {
            NumericMode::Exact
        } else {
            NumericMode::Float
        }
    }

    /// Drops the exact data, keeping the floating values.
    pub fn to_float(&self) -> Character {
        Character {
            values: self.values.clone(),
            exact: None,
        }
    }

    pub fn conj(&self) -> Character {
        Character {
            values: self.values.iter().map(|z| z.conj()).collect(),
            exact: self.exact.as_ref().map(|ex| {
                ex.iter()
                    .map(|e| ExactValue::new(e.modulus.clone(), -e.turns.clone()).unwrap())
                    .collect()
            }),
        }
    }

    pub fn inv(&self) -> Character {
        Character {
            values: self.values.iter().map(|z| z.inv()).collect(),
            exact: self.exact.as_ref().map(|ex| ex.iter().map(|e| e.pow(-1)).collect()),
        }
    }

    /// Pointwise product `αβ`.
    pub fn mul(&self, other: &Character) -> Result<Character> {
        self.check_same_genus(other.genus())?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        let exact = match (&self.exact, &other.exact) {
            (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(a, b)| a.mul(b)).collect()),
            _ => None,
        };
        Ok(Character { values, exact })
    }

    pub fn check_same_genus(&self, genus: usize) -> Result<()> {
        if self.genus() != genus {
            return Err(Error::GenusMismatch {
                expected: self.genus(),
                found: genus,
            });
        }
        Ok(())
    }

    /// `α` on a homology class: `∏ α(x_k)^{v_k}`.
    pub fn eval_homology(&self, v: &HomologyVector) -> Result<Complex64> {
        if v.0.len() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                found: v.0.len(),
            });
        }
        Ok(self.values.iter().zip(&v.0).map(|(z, &k)| z.powi(k as i32)).product())
    }

    pub fn eval_homology_exact(&self, v: &HomologyVector) -> Option<ExactValue> {
        let ex = self.exact.as_ref()?;
        Some(
            ex.iter()
                .zip(&v.0)
                .fold(ExactValue::one(), |acc, (e, &k)| acc.mul(&e.pow(k))),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ValueJson {
    Float {
        re: f64,
        im: f64,
    },
    Exact {
        #[serde(rename = "mod")]
        modulus: String,
        arg: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacterJson {
    genus: usize,
    #[serde(default)]
    mode: NumericMode,
    values: Vec<ValueJson>,
}

impl TryFrom<CharacterJson> for Character {
    type Error = Error;

    fn try_from(j: CharacterJson) -> Result<Self> {
        if j.values.len() != 2 * j.genus {
            return Err(Error::DimensionMismatch {
                expected: 2 * j.genus,
                found: j.values.len(),
            });
        }
        match j.mode {
            NumericMode::Float => {
                let values = j
                    .values
                    .into_iter()
                    .map(|v| match v {
                        ValueJson::Float { re, im } => Ok(Complex64::new(re, im)),
                        ValueJson::Exact { .. } => Err(Error::Parse("exact value in float-mode character".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Character::new(values)
            }
            NumericMode::Exact => {
                let values = j
                    .values
                    .into_iter()
                    .map(|v| match v {
                        ValueJson::Exact { modulus, arg } => ExactValue::parse(&modulus, &arg),
                        ValueJson::Float { .. } => Err(Error::Parse("float value in exact-mode character".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Character::exact(values)
            }
        }
    }
}

impl From<Character> for CharacterJson {
    fn from(c: Character) -> Self {
        let genus = c.genus();
        match c.exact {
            Some(ex) => CharacterJson {
                genus,
                mode: NumericMode::Exact,
                values: ex
                    .iter()
                    .map(|e| ValueJson::Exact {
                        modulus: format_rational(&e.modulus),
                        arg: format_rational(&e.turns),
                    })
                    .collect(),
            },
            None => CharacterJson {
                genus,
                mode: NumericMode::Float,
                values: c
                    .values
                    .iter()
                    .map(|z| ValueJson::Float { re: z.re, im: z.im })
                    .collect(),
            },
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, z) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Character {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn eval_character(alpha: &Character, w: &Word) -> Result<Complex64> {
    w.check_genus(alpha.genus())?;
    alpha.eval_homology(&abelianize(w, alpha.genus()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationFlags {
    pub trivial: bool,
    pub unitary: bool,
    pub real: bool,
    /// Only known for exact characters.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub almost_real: Option<bool>,
}

/// Classifies a character. Exact characters are classified exactly and `tol`
/// is ignored; floating characters use `tol` for unit-circle and real-line
/// membership and leave `almost_real` unset.
pub fn classify_character(alpha: &Character, tol: f64) -> ClassificationFlags {
    match alpha.exact_values() {
        Some(ex) => {
            let half = BigRational::new(1.into(), 2.into());
            let unitary = ex.iter().all(|e| e.modulus.is_one());
            let real = ex.iter().all(|e| e.turns.is_zero() || e.turns == half);
            ClassificationFlags {
                trivial: ex.iter().all(ExactValue::is_one),
                unitary,
                real,
                // Every exact argument is a rational multiple of 2π.
                almost_real: Some(true),
            }
        }
        None => {
            let vs = alpha.values();
            ClassificationFlags {
                trivial: vs.iter().all(|z| (z - 1.0).norm() <= tol),
                unitary: vs.iter().all(|z| (z.norm() - 1.0).abs() <= tol),
                real: vs.iter().all(|z| z.im.abs() <= tol * z.norm().max(1.0)),
                almost_real: None,
            }
        }
    }
}

/// Whether every argument is a rational multiple of π.
pub fn almost_real(alpha: &Character) -> Result<bool> {
    classify_character(alpha, DEFAULT_TOL)
        .almost_real
        .ok_or(Error::UndecidableInFloatingMode("almost_real"))
}

/// An affine representation `γ ↦ (z ↦ α(γ)z + λ(γ))`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineRepresentation {
    translation: Cocycle,
}

impl AffineRepresentation {
    pub fn new(translation: Cocycle) -> Self {
        AffineRepresentation { translation }
    }

    pub fn character(&self) -> &Character {
        self.translation.character()
    }

    pub fn translation(&self) -> &Cocycle {
        &self.translation
    }

    /// `(A_i, U_i, B_i, V_i)` per handle: linear and translation parts of the
    /// images of `a_i` and `b_i`.
    pub fn handle_tuples(&self) -> Vec<[Complex64; 4]> {
        let a = self.character().values();
        let l = self.translation.values();
        (0..self.character().genus())
            .map(|i| [a[2 * i], l[2 * i], a[2 * i + 1], l[2 * i + 1]])
            .collect()
    }

    /// The affine map of a generator as `(linear, translation)`.
    pub fn generator_image(&self, generator: usize) -> (Complex64, Complex64) {
        (self.character().value(generator), self.translation.values()[generator])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationFlags {
    pub abelian: bool,
    pub unitary: bool,
    pub real: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub almost_real: Option<bool>,
    /// Not abelian, not unitary, not real, and not known to be almost real.
    pub strictly_affine: bool,
}

pub fn classify_representation(rho: &AffineRepresentation, tol: f64) -> Result<RepresentationFlags> {
    rho.translation.check_constraint(tol)?;
    let c = classify_character(rho.character(), tol);
    let abelian = c.trivial || is_coboundary(&rho.translation, tol);
    Ok(RepresentationFlags {
        abelian,
        unitary: c.unitary,
        real: c.real,
        almost_real: c.almost_real,
        strictly_affine: !abelian && !c.unitary && !c.real && c.almost_real != Some(true),
    })
}

/// Componentwise `(arg/2π mod 1, log|·|)`.
pub fn torus_coordinates(alpha: &Character) -> (Vec<f64>, Vec<f64>) {
    alpha
        .values()
        .iter()
        .map(|z| {
            let t = z.arg() / TAU;
            (t - t.floor(), z.norm().ln())
        })
        .unzip()
}

pub fn from_torus_coordinates(x: &[f64], y: &[f64]) -> Result<Character> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Character::new(
        x.iter()
            .zip(y)
            .map(|(&t, &r)| Complex64::from_polar(r.exp(), TAU * t))
            .collect(),
    )
}

/// `P = (1−α(a1))(1−α(a2))(1−α(a1)⁻¹)(1−α(a2)⁻¹)` for a genus-2 character.
pub fn u_product(alpha: &Character) -> Result<Complex64> {
    if alpha.genus() != 2 {
        return Err(Error::GenusMismatch {
            expected: 2,
            found: alpha.genus(),
        });
    }
    let (x, y) = (alpha.value(0), alpha.value(2));
    Ok((1.0 - x) * (1.0 - y) * (1.0 - x.inv()) * (1.0 - y.inv()))
}

/// `|P| < 1` and `P` not real (`|Im P| > tol`).
pub fn in_set_u(alpha: &Character, tol: f64) -> Result<bool> {
    let p = u_product(alpha)?;
    Ok(p.norm() < 1.0 && p.im.abs() > tol)
}

/// Homology classes `(x_i, y_i)` attached to each handle `i = 1..g-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleConvention {
    pub handles: Vec<(HomologyVector, HomologyVector)>,
}

impl HandleConvention {
    /// The convention of the standard curve system: handle `i < g−1` uses
    /// `(a_i, a_{i+1}⁻¹)` and the last handle uses `(a_{g−1}, a_g)`.
    pub fn standard(genus: usize) -> Self {
        let a = |i: usize| HomologyVector::basis(genus, 2 * (i - 1));
        let handles = (1..genus)
            .map(|i| {
                if i + 1 < genus {
                    (a(i), a(i + 1).scale(-1))
                } else {
                    (a(i), a(i + 1))
                }
            })
            .collect();
        HandleConvention { handles }
    }

    pub fn genus(&self) -> usize {
        self.handles.len() + 1
    }
}

/// `t_i = (1−α(x_i))(1−α(y_i))`, `s_i = (1−α(x_i)⁻¹)(1−α(y_i)⁻¹)` for handle `i` (1-based).
pub fn handle_parameters(alpha: &Character, i: usize, convention: &HandleConvention) -> Result<(Complex64, Complex64)> {
    let max = convention.handles.len();
    if i == 0 || i > max {
        return Err(Error::IndexOutOfRange { index: i, max });
    }
    let (x, y) = &convention.handles[i - 1];
    let ax = alpha.eval_homology(x)?;
    let ay = alpha.eval_homology(y)?;
    Ok(((1.0 - ax) * (1.0 - ay), (1.0 - ax.inv()) * (1.0 - ay.inv())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharacterLaw {
    /// Argument uniform on the circle, log-modulus standard gaussian.
    TorusGaussian,
    /// Argument uniform on the circle, modulus 1.
    Unitary,
}

pub fn random_character(seed: u64, genus: usize, law: CharacterLaw) -> Character {
    let mut rng = StreamRng::new(seed, 0);
    random_character_from(&mut rng, genus, law)
}

pub fn random_character_from(rng: &mut StreamRng, genus: usize, law: CharacterLaw) -> Character {
    let values = (0..2 * genus)
        .map(|_| {
            let theta = TAU * rng.uniform();
            let r = match law {
                CharacterLaw::TorusGaussian => rng.gaussian().exp(),
                CharacterLaw::Unitary => 1.0,
            };
            Complex64::from_polar(r, theta)
        })
        .collect();
    Character::new(values).expect("polar values are nonzero")
}
