//! Haupt's conditions for a period character `ω ∈ Hom(H₁(S,ℤ), ℂ)` to be the
//! period map of a translation surface:
//!
//! 1. `vol(ω) = Σ Re ω(a_i) Im ω(b_i) − Re ω(b_i) Im ω(a_i) > 0`;
//! 2. if the image of `ω` is a lattice `Λ`, then `vol(ω) > covol(Λ)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{format_rational, parse_rational, rational_to_f64};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn parse(re: &str, im: &str) -> Result<Self> {
        Ok(GaussianRational::new(parse_rational(re)?, parse_rational(im)?))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussianRational::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn sub_scaled(&self, k: &BigRational, other: &Self) -> Self {
        GaussianRational::new(&self.re - k * &other.re, &self.im - k * &other.im)
    }

    /// Real inner product `Re(conj(self)·other)`.
    fn dot(&self, other: &Self) -> BigRational {
        &self.re * &other.re + &self.im * &other.im
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PeriodValues {
    Float(Vec<Complex64>),
    Exact(Vec<GaussianRational>),
}

/// Values of `ω` on `a1,b1,…,ag,bg`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PeriodJson", into = "PeriodJson")]
pub struct PeriodCharacter {
    values: PeriodValues,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Part {
    Number(f64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct PeriodValueJson {
    re: Part,
    im: Part,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PeriodJson {
    genus: usize,
    values: Vec<PeriodValueJson>,
}

impl TryFrom<PeriodJson> for PeriodCharacter {
    type Error = Error;

    fn try_from(j: PeriodJson) -> Result<Self> {
        if j.values.len() != 2 * j.genus || j.genus == 0 {
            return Err(Error::DimensionMismatch {
                expected: 2 * j.genus,
                found: j.values.len(),
            });
        }
        let all_text = j
            .values
            .iter()
            .all(|v| matches!((&v.re, &v.im), (Part::Text(_), Part::Text(_))));
        if all_text {
            let vals = j
                .values
                .iter()
                .map(|v| match (&v.re, &v.im) {
                    (Part::Text(r), Part::Text(i)) => GaussianRational::parse(r, i),
                    _ => unreachable!(),
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(PeriodCharacter::exact(vals));
        }
        let num = |p: &Part| match p {
            Part::Number(x) => Ok(*x),
            Part::Text(s) => s.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {s:?}"))),
        };
        let vals = j
            .values
            .iter()
            .map(|v| Ok(Complex64::new(num(&v.re)?, num(&v.im)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodCharacter::float(vals))
    }
}

impl From<PeriodCharacter> for PeriodJson {
    fn from(p: PeriodCharacter) -> Self {
        let genus = p.genus();
        let values = match p.values {
            PeriodValues::Float(v) => v
                .iter()
                .map(|z| PeriodValueJson {
                    re: Part::Number(z.re),
                    im: Part::Number(z.im),
                })
                .collect(),
            PeriodValues::Exact(v) => v
                .iter()
                .map(|z| PeriodValueJson {
                    re: Part::Text(format_rational(&z.re)),
                    im: Part::Text(format_rational(&z.im)),
                })
                .collect(),
        };
        PeriodJson { genus, values }
    }
}

impl PeriodCharacter {
    pub fn float(values: Vec<Complex64>) -> Self {
        PeriodCharacter {
            values: PeriodValues::Float(values),
        }
    }

    pub fn exact(values: Vec<GaussianRational>) -> Self {
        PeriodCharacter {
            values: PeriodValues::Exact(values),
        }
    }

    pub fn genus(&self) -> usize {
        self.len() / 2
    }

    fn len(&self) -> usize {
        match &self.values {
            PeriodValues::Float(v) => v.len(),
            PeriodValues::Exact(v) => v.len(),
        }
    }

    pub fn values(&self) -> &PeriodValues {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, PeriodValues::Exact(_))
    }

    pub fn complex_values(&self) -> Vec<Complex64> {
        match &self.values {
            PeriodValues::Float(v) => v.clone(),
            PeriodValues::Exact(v) => v.iter().map(GaussianRational::to_complex).collect(),
        }
    }

    /// `c·ω` for an exact scalar; exact characters stay exact.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        match &self.values {
            PeriodValues::Float(v) => {
                let cz = c.to_complex();
                PeriodCharacter::float(v.iter().map(|z| z * cz).collect())
            }
            PeriodValues::Exact(v) => PeriodCharacter::exact(v.iter().map(|z| z.mul(c)).collect()),
        }
    }

    pub fn conj(&self) -> Self {
        match &self.values {
            PeriodValues::Float(v) => PeriodCharacter::float(v.iter().map(|z| z.conj()).collect()),
            PeriodValues::Exact(v) => PeriodCharacter::exact(
                v.iter()
                    .map(|z| GaussianRational::new(z.re.clone(), -z.im.clone()))
                    .collect(),
            ),
        }
    }
}

pub fn symplectic_volume(omega: &PeriodCharacter) -> f64 {
    match symplectic_volume_exact(omega) {
        Some(v) => rational_to_f64(&v),
        None => omega
            .complex_values()
            .chunks(2)
            .map(|h| h[0].re * h[1].im - h[1].re * h[0].im)
            .sum(),
    }
}

pub fn symplectic_volume_exact(omega: &PeriodCharacter) -> Option<BigRational> {
    match &omega.values {
        PeriodValues::Exact(v) => Some(
            v.chunks(2)
                .map(|h| &h[0].re * &h[1].im - &h[1].re * &h[0].im)
                .fold(BigRational::zero(), |a, b| a + b),
        ),
        PeriodValues::Float(_) => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeInfo {
    pub is_lattice: bool,
    /// Rank of the subgroup over ℤ when it is discrete; in floating mode the
    /// rank of the fitted group.
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<[Complex64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covolume: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_basis: Option<[[String; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_covolume: Option<String>,
    /// Set when the answer comes from a floating-point fit.
    pub heuristic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Echelon basis of a subgroup of ℤ²: `u = (u1, u2)` with `u1 > 0` and
/// `w = (0, w2)` with `w2 > 0`, either possibly absent.
fn integer_echelon(vectors: &[(BigInt, BigInt)]) -> (Option<(BigInt, BigInt)>, BigInt) {
    let mut u: Option<(BigInt, BigInt)> = None;
    let mut w2 = BigInt::zero();
    for (x, y) in vectors {
        if x.is_zero() {
            w2 = w2.gcd(y);
            continue;
        }
        match u.take() {
            None => u = Some((x.clone(), y.clone())),
            Some((ux, uy)) => {
                let e = ux.extended_gcd(x);
                let g = e.gcd;
                let nu = (g.clone(), &e.x * &uy + &e.y * y);
                let rest = (x / &g) * &uy - (&ux / &g) * y;
                w2 = w2.gcd(&rest);
                u = Some(nu);
            }
        }
    }
    let u = u.map(|(x, y)| if x.is_negative() { (-x, -y) } else { (x, y) });
    let u = match u {
        Some((x, y)) if !w2.is_zero() => Some((x, y.mod_floor(&w2))),
        other => other,
    };
    (u, w2)
}

fn lagrange_reduce(mut b1: GaussianRational, mut b2: GaussianRational) -> (GaussianRational, GaussianRational) {
    if b2.norm_sqr() < b1.norm_sqr() {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        let mu = (b1.dot(&b2) / b1.norm_sqr()).round();
        if mu.is_zero() {
            return (b1, b2);
        }
        b2 = b2.sub_scaled(&mu, &b1);
        // Stopping here rather than re-rounding avoids cycling on ±½ ties.
        if b2.norm_sqr() >= b1.norm_sqr() {
            return (b1, b2);
        }
        std::mem::swap(&mut b1, &mut b2);
    }
}

fn cross(z: &GaussianRational, w: &GaussianRational) -> BigRational {
    &z.re * &w.im - &z.im * &w.re
}

fn exact_lattice(values: &[GaussianRational]) -> LatticeInfo {
    let mut d = BigInt::one();
    for z in values {
        d = d.lcm(z.re.denom()).lcm(z.im.denom());
    }
    let dr = BigRational::from_integer(d.clone());
    let ints: Vec<(BigInt, BigInt)> = values
        .iter()
        .map(|z| ((&z.re * &dr).to_integer(), (&z.im * &dr).to_integer()))
        .collect();
    let (u, w2) = integer_echelon(&ints);
    let rank = usize::from(u.is_some()) + usize::from(!w2.is_zero());
    let Some((u1, u2)) = u.filter(|_| rank == 2) else {
        return LatticeInfo {
            is_lattice: false,
            rank,
            basis: None,
            covolume: None,
            exact_basis: None,
            exact_covolume: None,
            heuristic: false,
            note: None,
        };
    };
    let b1 = GaussianRational::new(BigRational::new(u1, d.clone()), BigRational::new(u2, d.clone()));
    let b2 = GaussianRational::new(BigRational::zero(), BigRational::new(w2, d));
    let (b1, b2) = lagrange_reduce(b1, b2);
    let covol = cross(&b1, &b2).abs();
    LatticeInfo {
        is_lattice: true,
        rank,
        basis: Some([b1.to_complex(), b2.to_complex()]),
        covolume: Some(rational_to_f64(&covol)),
        exact_basis: Some([
            [format_rational(&b1.re), format_rational(&b1.im)],
            [format_rational(&b2.re), format_rational(&b2.im)],
        ]),
        exact_covolume: Some(format_rational(&covol)),
        heuristic: false,
        note: None,
    }
}

/// Largest denominator tried by the floating lattice fit.
pub const FLOAT_FIT_MAX_DENOMINATOR: i64 = 1000;
/// Tolerance of the floating lattice fit, relative to the value scale.
pub const FLOAT_FIT_TOL: f64 = 1e-9;

fn float_lattice(values: &[Complex64]) -> LatticeInfo {
    let heuristic = |rank, note: &str| LatticeInfo {
        is_lattice: false,
        rank,
        basis: None,
        covolume: None,
        exact_basis: None,
        exact_covolume: None,
        heuristic: true,
        note: Some(note.to_string()),
    };
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return heuristic(0, "all periods vanish");
    }
    let cr = |z: Complex64, w: Complex64| z.re * w.im - z.im * w.re;
    let mut best = (0, 0, 0.0f64);
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let c = cr(values[i], values[j]).abs();
            if c > best.2 {
                best = (i, j, c);
            }
        }
    }
    if best.2 <= FLOAT_FIT_TOL * scale * scale {
        return heuristic(1, "periods are collinear within tolerance");
    }
    let (u, w) = (values[best.0], values[best.1]);
    let det = cr(u, w);
    let coords: Vec<(f64, f64)> = values.iter().map(|&z| (cr(z, w) / det, cr(u, z) / det)).collect();
    let near_int = |x: f64| (x - x.round()).abs() <= FLOAT_FIT_TOL * (1.0 + x.abs());
    for q in 1..=FLOAT_FIT_MAX_DENOMINATOR {
        let qf = q as f64;
        if coords.iter().all(|&(p, r)| near_int(p * qf) && near_int(r * qf)) {
            let ints: Vec<(BigInt, BigInt)> = coords
                .iter()
                .map(|&(p, r)| {
                    (
                        BigInt::from((p * qf).round() as i64),
                        BigInt::from((r * qf).round() as i64),
                    )
                })
                .collect();
            let (uu, w2) = integer_echelon(&ints);
            let (u1, u2) = uu.expect("rank two by construction");
            let to_c = |a: &BigInt, b: &BigInt| {
                let (a, b) = (
                    a.to_string().parse::<f64>().unwrap(),
                    b.to_string().parse::<f64>().unwrap(),
                );
                (u * a + w * b) / qf
            };
            let b1 = to_c(&u1, &u2);
            let b2 = to_c(&BigInt::zero(), &w2);
            let covol = cr(b1, b2).abs();
            return LatticeInfo {
                is_lattice: true,
                rank: 2,
                basis: Some([b1, b2]),
                covolume: Some(covol),
                exact_basis: None,
                exact_covolume: None,
                heuristic: true,
                note: Some(format!("fitted with common denominator {q}")),
            };
        }
    }
    heuristic(2, "no rational fit with small denominator; treated as indiscrete")
}

/// Decides whether the subgroup generated by the periods is a lattice.
/// Exact characters get a decisive answer; floating ones a labelled fit.
pub fn detect_lattice(omega: &PeriodCharacter) -> LatticeInfo {
    match &omega.values {
        PeriodValues::Exact(v) => exact_lattice(v),
        PeriodValues::Float(v) => float_lattice(v),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HauptStatus {
    Realizable,
    FailsPositivity,
    FailsLatticeVolume,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HauptReport {
    pub status: HauptStatus,
    pub volume: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_volume: Option<String>,
    pub lattice: LatticeInfo,
}

pub fn haupt_check(omega: &PeriodCharacter) -> HauptReport {
    let lattice = detect_lattice(omega);
    let volume = symplectic_volume(omega);
    let exact_volume = symplectic_volume_exact(omega);
    let status = match &exact_volume {
        Some(v) => {
            if !v.is_positive() {
                HauptStatus::FailsPositivity
            } else if lattice.is_lattice {
                let covol =
                    parse_rational(lattice.exact_covolume.as_deref().expect("exact lattice")).expect("own formatting");
                if *v <= covol {
                    HauptStatus::FailsLatticeVolume
                } else {
                    HauptStatus::Realizable
                }
            } else {
                HauptStatus::Realizable
            }
        }
        None => {
            if volume <= 0.0 {
                HauptStatus::FailsPositivity
            } else if lattice.is_lattice && volume <= lattice.covolume.unwrap_or(0.0) {
                HauptStatus::FailsLatticeVolume
            } else {
                HauptStatus::Realizable
            }
        }
    };
    HauptReport {
        status,
        volume,
        exact_volume: exact_volume.as_ref().map(format_rational),
        lattice,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(v: &[(i64, i64)]) -> PeriodCharacter {
        PeriodCharacter::exact(v.iter().map(|&(a, b)| GaussianRational::from_ints(a, b)).collect())
    }

    #[test]
    fn volume_examples() {
        let w = exact(&[(1, 0), (0, 1), (1, 0), (0, 1)]);
        assert_eq!(symplectic_volume(&w), 2.0);
        assert_eq!(symplectic_volume(&exact(&[(1, 0), (3, 0), (2, 0), (5, 0)])), 0.0);
        assert_eq!(symplectic_volume(&w.conj()), -2.0);
    }

    #[test]
    fn echelon() {
        let v = |a: i64, b: i64| (BigInt::from(a), BigInt::from(b));
        let (u, w2) = integer_echelon(&[v(4, 1), v(6, 3), v(0, 0)]);
        // ⟨(4,1),(6,3)⟩ has index |4·3−6·1| = 6.
        let (u1, _) = u.unwrap();
        assert_eq!(&u1 * &w2, BigInt::from(6));
    }

    #[test]
    fn verdicts() {
        let r = haupt_check(&exact(&[(1, 0), (0, 1), (1, 0), (0, 1)]));
        assert_eq!(r.status, HauptStatus::Realizable);
        assert_eq!(r.lattice.exact_covolume.as_deref(), Some("1"));
        let r = haupt_check(&exact(&[(1, 0), (0, 1), (0, 0), (0, 0)]));
        assert_eq!(r.status, HauptStatus::FailsLatticeVolume);
        let r = haupt_check(&exact(&[(1, 0), (2, 0), (3, 0), (4, 0)]));
        assert_eq!(r.status, HauptStatus::FailsPositivity);
    }

    #[test]
    fn half_integers_are_rank_one() {
        let w = PeriodCharacter::exact(vec![
            GaussianRational::from_ints(1, 0),
            GaussianRational::parse("1/2", "0").unwrap(),
        ]);
        let info = detect_lattice(&w);
        assert!(!info.is_lattice);
        assert_eq!(info.rank, 1);
    }

    #[test]
    fn float_fit_is_labelled() {
        let w = PeriodCharacter::float(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.5, 0.5),
            Complex64::new(0.0, 0.0),
        ]);
        let info = detect_lattice(&w);
        assert!(info.is_lattice && info.heuristic);
        assert!((info.covolume.unwrap() - 0.5).abs() < 1e-12);
        let w = PeriodCharacter::float(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(2f64.sqrt(), 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ]);
        let info = detect_lattice(&w);
        assert!(!info.is_lattice && info.heuristic);
    }

    #[test]
    fn json_modes() {
        let w: PeriodCharacter =
            serde_json::from_str(r#"{"genus":1,"values":[{"re":"1","im":"0"},{"re":"0","im":"1/2"}]}"#).unwrap();
        assert!(w.is_exact());
        let w: PeriodCharacter =
            serde_json::from_str(r#"{"genus":1,"values":[{"re":1,"im":0},{"re":0,"im":0.5}]}"#).unwrap();
        assert!(!w.is_exact());
    }

    #[test]
    fn reduction_terminates_on_half_ties() {
        // (2,0) and (1,5) have dot/norm exactly ½.
        let info = detect_lattice(&exact(&[(2, 0), (1, 5), (0, 0), (0, 0)]));
        assert_eq!(info.exact_covolume.as_deref(), Some("10"));
        let (b1, b2) = lagrange_reduce(GaussianRational::from_ints(2, 0), GaussianRational::from_ints(1, 5));
        assert_eq!(cross(&b1, &b2).abs(), BigRational::from_integer(BigInt::from(10)));
    }
}
