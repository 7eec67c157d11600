//! Discreteness tests and seeded random-walk experiments.
//!
//! The walks are sanity and regression experiments. They give evidence about
//! orbit distribution; they do not test ergodicity.
//!
//! Cells of ℂP¹ ≅ S²: a point `[v0:v1]` has height
//! `h = (|v0|²−|v1|²)/(|v0|²+|v1|²)` and longitude `arg(v0·conj v1)`.
//! Twenty bands of equal height (equal area, by Archimedes) times ten equal
//! longitude sectors give 200 cells of equal Fubini–Study measure:
//!
//! ```text
//!   h = +1   band 19 | 190 191 … 199 |
//!              …     |      …        |
//!   h = -1   band 0  |  0   1  …  9  |
//!                    0   longitude  2π
//! ```

use nalgebra::{DMatrix, Matrix2};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::rational_to_f64;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::rng::{StreamRng, STREAM_VERSION};

pub const BANDS: usize = 20;
pub const SECTORS: usize = 10;
pub const CELLS: usize = BANDS * SECTORS;

pub const RECORD_VERSION: u32 = 1;

type M2 = Matrix2<Complex64>;

fn det2(m: &M2) -> Complex64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

fn inv2(m: &M2) -> M2 {
    let d = det2(m);
    M2::new(m[(1, 1)] / d, -m[(0, 1)] / d, -m[(1, 0)] / d, m[(0, 0)] / d)
}

/// `|Tr(A)²−4| + |Tr(ABA⁻¹B⁻¹)−2|`.
pub fn jorgensen_value(a: &M2, b: &M2) -> Result<f64> {
    for m in [a, b] {
        let det = det2(m);
        if (det - 1.0).norm() > 1e-10 {
            return Err(Error::Determinant { det });
        }
    }
    let comm = a * b * inv2(a) * inv2(b);
    Ok((a.trace() * a.trace() - 4.0).norm() + (comm.trace() - 2.0).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NondiscretenessHint {
    NondiscreteNonelementary,
    Inconclusive,
    Elementary,
}

/// Hint for `⟨[[1,a],[0,1]], [[1,0],[b,1]]⟩`: Jorgensen fails exactly when `|ab| < 1`.
pub fn nondiscreteness_hint(a: Complex64, b: Complex64) -> NondiscretenessHint {
    if a == Complex64::zero() || b == Complex64::zero() {
        NondiscretenessHint::Elementary
    } else if (a * b).norm() < 1.0 {
        NondiscretenessHint::NondiscreteNonelementary
    } else {
        NondiscretenessHint::Inconclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureHint {
    #[serde(rename = "full_SL2C_like")]
    FullSl2cLike,
    RealFormLike,
    UnitaryLike,
    Undetermined,
}

/// Norm above which a sampled product counts as unbounded.
pub const CLOSURE_NORM_BOUND: f64 = 1e3;
const CLOSURE_WORD_LENGTH: usize = 4;
const CLOSURE_SAMPLE_STEPS: usize = 4000;
const CLOSURE_SEED: u64 = 0x5eed;

/// Heuristic guess of the Zariski-closure type of a subgroup of SL(2,ℂ).
///
/// Traces are checked on every word of length ≤ 4 in the generators and
/// their inverses; boundedness on a fixed-seed random walk. Scalar
/// generators give `Undetermined`; bounded with real traces gives
/// `UnitaryLike` (compact groups, finite extensions of SU(2) included);
/// unbounded with real traces gives `RealFormLike`; unbounded with a
/// non-real trace gives `FullSl2cLike`.
pub fn closure_hint(matrices: &[M2], tol: f64) -> Result<ClosureHint> {
    for m in matrices {
        let det = det2(m);
        if (det - 1.0).norm() > 1e-10 {
            return Err(Error::Determinant { det });
        }
    }
    let scalar = |m: &M2| m[(0, 1)].norm() <= tol && m[(1, 0)].norm() <= tol && (m[(0, 0)] - m[(1, 1)]).norm() <= tol;
    if matrices.iter().all(scalar) {
        return Ok(ClosureHint::Undetermined);
    }
    let mut gens: Vec<M2> = matrices.to_vec();
    gens.extend(matrices.iter().map(inv2));

    let mut real = true;
    let mut layer = vec![M2::identity()];
    for _ in 0..CLOSURE_WORD_LENGTH {
        let mut next = Vec::with_capacity(layer.len() * gens.len());
        for w in &layer {
            for g in &gens {
                let p = w * g;
                let tr = p.trace();
                if tr.im.abs() > tol * tr.norm().max(1.0) {
                    real = false;
                }
                next.push(p);
            }
        }
        layer = next;
    }

    let mut rng = StreamRng::new(CLOSURE_SEED, 0);
    let mut p = M2::identity();
    let mut bounded = true;
    for _ in 0..CLOSURE_SAMPLE_STEPS {
        p = gens[rng.index(gens.len())] * p;
        if p.norm() > CLOSURE_NORM_BOUND {
            bounded = false;
            break;
        }
    }
    Ok(match (bounded, real) {
        (true, true) => ClosureHint::UnitaryLike,
        (false, true) => ClosureHint::RealFormLike,
        (false, false) => ClosureHint::FullSl2cLike,
        (true, false) => ClosureHint::Undetermined,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    pub seed: u64,
    #[serde(default)]
    pub stream: u64,
    pub steps: usize,
    #[serde(default)]
    pub burn_in: usize,
}

impl WalkConfig {
    pub fn new(seed: u64, steps: usize) -> Self {
        WalkConfig {
            seed,
            stream: 0,
            steps,
            burn_in: 0,
        }
    }

    fn check(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::Empty);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Points {
    Projective(Vec<Vec<Complex64>>),
    Torus(Vec<Vec<f64>>),
}

impl Points {
    pub fn len(&self) -> usize {
        match self {
            Points::Projective(p) => p.len(),
            Points::Torus(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquidistributionStats {
    /// Total-variation distance to uniform, maximized over coordinate-pair projections.
    pub equidistribution: f64,
    /// Nonempty cells, minimized over coordinate-pair projections.
    pub visited_cells: usize,
    pub cells: usize,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conserved {
    pub name: String,
    pub max_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub version: u32,
    pub rng_version: u32,
    pub kind: String,
    pub config: WalkConfig,
    pub stats: Option<EquidistributionStats>,
    pub conserved: Vec<Conserved>,
    #[serde(skip)]
    pub points: Option<Points>,
}

/// Unit vector with the (first) largest-modulus coordinate real and positive.
pub fn canonical_representative(v: &[Complex64]) -> Vec<Complex64> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut k = 0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[k].norm() {
            k = i;
        }
    }
    if norm == 0.0 {
        return v.to_vec();
    }
    let phase = if v[k].norm() > 0.0 {
        v[k] / v[k].norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let scale = phase.conj() / norm;
    v.iter().map(|z| z * scale).collect()
}

/// Random walk `v ← M v` with `M` uniform over the generators and their inverses.
pub fn projective_walk(generators: &[CMatrix], start: &[Complex64], cfg: &WalkConfig) -> Result<ExperimentRecord> {
    cfg.check()?;
    let n = start.len();
    if generators.is_empty() {
        return Err(Error::Empty);
    }
    let mut gens = Vec::with_capacity(2 * generators.len());
    for m in generators {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.nrows(),
            });
        }
        gens.push(m.clone());
    }
    for m in generators {
        let inv = m
            .clone()
            .try_inverse()
            .ok_or(Error::Determinant { det: Complex64::zero() })?;
        gens.push(inv);
    }
    if start.iter().all(|z| z.norm() == 0.0) {
        return Err(Error::ZeroScalar);
    }
    let mut rng = StreamRng::new(cfg.seed, cfg.stream);
    let mut v = CVector::from_vec(canonical_representative(start));
    let mut points = Vec::with_capacity(cfg.steps);
    for step in 0..cfg.burn_in + cfg.steps {
        let m = &gens[rng.index(gens.len())];
        v = m * v;
        let canon = canonical_representative(v.as_slice());
        v = CVector::from_vec(canon);
        if step >= cfg.burn_in {
            points.push(v.as_slice().to_vec());
        }
    }
    let points = Points::Projective(points);
    let stats = equidistribution_stats(&points)?;
    Ok(ExperimentRecord {
        version: RECORD_VERSION,
        rng_version: STREAM_VERSION,
        kind: "projective_walk".into(),
        config: *cfg,
        stats: Some(stats),
        conserved: Vec::new(),
        points: Some(points),
    })
}

/// Cell index of `[v0:v1]` in the 200-cell partition of ℂP¹.
pub fn cp1_cell(v0: Complex64, v1: Complex64) -> usize {
    let (p, q) = (v0.norm_sqr(), v1.norm_sqr());
    let h = if p + q > 0.0 { (p - q) / (p + q) } else { 0.0 };
    let band = (((h + 1.0) / 2.0 * BANDS as f64) as usize).min(BANDS - 1);
    let turn = (v0 * v1.conj()).arg() / std::f64::consts::TAU;
    let turn = turn - turn.floor();
    let sector = ((turn * SECTORS as f64) as usize).min(SECTORS - 1);
    band * SECTORS + sector
}

/// Cell index of a point of the 2-torus `[0,1)²` in a 20×10 grid.
pub fn torus_cell(x: f64, y: f64) -> usize {
    let fx = x - x.floor();
    let fy = y - y.floor();
    let i = ((fx * BANDS as f64) as usize).min(BANDS - 1);
    let j = ((fy * SECTORS as f64) as usize).min(SECTORS - 1);
    i * SECTORS + j
}

fn tv_from_counts(counts: &[usize], total: usize) -> (f64, usize) {
    let u = 1.0 / counts.len() as f64;
    let tv = 0.5 * counts.iter().map(|&c| (c as f64 / total as f64 - u).abs()).sum::<f64>();
    (tv, counts.iter().filter(|&&c| c > 0).count())
}

pub fn equidistribution_stats(points: &Points) -> Result<EquidistributionStats> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let mut worst = 0.0f64;
    let mut visited = usize::MAX;
    let mut any = false;
    let mut consider = |cells: &mut dyn Iterator<Item = usize>| {
        let mut counts = vec![0usize; CELLS];
        let mut total = 0;
        for c in cells {
            counts[c] += 1;
            total += 1;
        }
        let (tv, vis) = tv_from_counts(&counts, total);
        worst = worst.max(tv);
        visited = visited.min(vis);
        any = true;
    };
    match points {
        Points::Projective(ps) => {
            let n = ps[0].len();
            for i in 0..n {
                for j in i + 1..n {
                    consider(&mut ps.iter().map(|v| cp1_cell(v[i], v[j])));
                }
            }
        }
        Points::Torus(ps) => {
            let n = ps[0].len();
            for i in 0..n {
                for j in i + 1..n {
                    consider(&mut ps.iter().map(|v| torus_cell(v[i], v[j])));
                }
            }
        }
    }
    if !any {
        return Err(Error::DimensionMismatch { expected: 2, found: 1 });
    }
    Ok(EquidistributionStats {
        equidistribution: worst,
        visited_cells: visited,
        cells: CELLS,
        points: points.len(),
    })
}

/// Total-variation distance of the cell histogram from uniform; 0 is perfect.
pub fn equidistribution_stat(points: &Points) -> Result<f64> {
    Ok(equidistribution_stats(points)?.equidistribution)
}

/// The standard symplectic form `J` in the basis `a1,b1,…,ag,bg`.
pub fn symplectic_form(genus: usize) -> DMatrix<i64> {
    let mut j = DMatrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        j[(2 * i, 2 * i + 1)] = 1;
        j[(2 * i + 1, 2 * i)] = -1;
    }
    j
}

/// Vectors `a_i`, `b_i` and `a_{i+1} − a_i` whose transvections generate Sp(2g,ℤ).
pub fn transvection_vectors(genus: usize) -> Vec<Vec<i64>> {
    let n = 2 * genus;
    let e = |k: usize| {
        let mut v = vec![0; n];
        v[k] = 1;
        v
    };
    let mut out = Vec::new();
    for i in 0..genus {
        out.push(e(2 * i));
        out.push(e(2 * i + 1));
    }
    for i in 0..genus.saturating_sub(1) {
        let mut v = e(2 * (i + 1));
        v[2 * i] = -1;
        out.push(v);
    }
    out
}

/// Transvection matrices `x ↦ x + ω(x,v)v`, i.e. `I + v vᵀ Jᵀ`.
pub fn sp_generators(genus: usize) -> Vec<DMatrix<i64>> {
    let jt = symplectic_form(genus).transpose();
    transvection_vectors(genus)
        .into_iter()
        .map(|v| {
            let col = DMatrix::from_column_slice(v.len(), 1, &v);
            DMatrix::identity(v.len(), v.len()) + &col * col.transpose() * &jt
        })
        .collect()
}

fn omega<T>(x: &[T], y: &[T]) -> T
where
    T: Clone + std::ops::Mul<Output = T> + std::ops::Sub<Output = T> + std::iter::Sum<T>,
{
    x.chunks(2)
        .zip(y.chunks(2))
        .map(|(u, v)| u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone())
        .sum()
}

fn omega_f64(x: &[f64], y: &[f64]) -> f64 {
    omega(x, y)
}

/// One random symmetric transvection step: index of the vector and the sign.
fn pick_step(rng: &mut StreamRng, count: usize) -> (usize, f64) {
    let k = rng.index(2 * count);
    (k % count, if k < count { 1.0 } else { -1.0 })
}

fn transvect_f64(x: &mut [f64], v: &[i64], sign: f64) {
    let vf: Vec<f64> = v.iter().map(|&c| c as f64).collect();
    let w = sign * omega_f64(x, &vf);
    for (xi, vi) in x.iter_mut().zip(&vf) {
        *xi += w * vi;
    }
}

fn rescale(x: &mut [f64], exponent: &mut i32) {
    let m = x.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    if m == 0.0 {
        return;
    }
    let e = m.log2().floor() as i32;
    if e.abs() > 64 {
        let f = 2f64.powi(-e);
        for xi in x.iter_mut() {
            *xi *= f;
        }
        *exponent += e;
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn sp_record(cfg: &WalkConfig, kind: &str, drift: f64, torus: Option<Vec<Vec<f64>>>) -> Result<ExperimentRecord> {
    let points = torus.map(Points::Torus);
    let stats = match &points {
        Some(p) => Some(equidistribution_stats(p)?),
        None => None,
    };
    Ok(ExperimentRecord {
        version: RECORD_VERSION,
        rng_version: STREAM_VERSION,
        kind: kind.into(),
        config: *cfg,
        stats,
        conserved: vec![Conserved {
            name: "omega".into(),
            max_drift: drift,
        }],
        points,
    })
}

/// Random walk of Sp(2g,ℤ) acting diagonally on `(x, y)` in floating point.
///
/// The lifted vectors grow exponentially, so each carries a power-of-two
/// scale. The conserved entry is the largest relative drift
/// `|ω(x_t,y_t) − ω(x_0,y_0)| / (|x_t||y_t|)`. With `project_to_torus` the
/// record also holds `x mod ℤ^{2g}`, tracked separately and reduced every step.
pub fn sp_walk(x: &[f64], y: &[f64], cfg: &WalkConfig, project_to_torus: bool) -> Result<ExperimentRecord> {
    cfg.check()?;
    if x.len() != y.len() || !x.len().is_multiple_of(2) || x.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let vectors = transvection_vectors(x.len() / 2);
    let mut rng = StreamRng::new(cfg.seed, cfg.stream);
    let (mut xs, mut ys) = (x.to_vec(), y.to_vec());
    let (mut ex, mut ey) = (0i32, 0i32);
    let omega0 = omega_f64(x, y);
    let mut xt: Vec<f64> = x.iter().map(|v| v - v.floor()).collect();
    let mut torus = project_to_torus.then(Vec::new);
    let mut drift = 0.0f64;
    for step in 0..cfg.burn_in + cfg.steps {
        let (k, sign) = pick_step(&mut rng, vectors.len());
        transvect_f64(&mut xs, &vectors[k], sign);
        transvect_f64(&mut ys, &vectors[k], sign);
        rescale(&mut xs, &mut ex);
        rescale(&mut ys, &mut ey);
        let denom = norm(&xs) * norm(&ys);
        if denom > 0.0 {
            let target = omega0 * 2f64.powi(-(ex + ey));
            drift = drift.max((omega_f64(&xs, &ys) - target).abs() / denom);
        }
        if let Some(points) = torus.as_mut() {
            transvect_f64(&mut xt, &vectors[k], sign);
            for v in xt.iter_mut() {
                *v -= v.floor();
            }
            if step >= cfg.burn_in {
                points.push(xt.clone());
            }
        }
    }
    sp_record(cfg, "sp_walk_float", drift, torus)
}

/// Exact rational version of [`sp_walk`]; the drift entry is `|ω_t − ω_0|`
/// converted to `f64` and is zero whenever the invariant holds.
///
/// Integer transvections keep a common denominator fixed, so the walk runs
/// on integer numerators over one denominator per vector.
pub fn sp_walk_exact(
    x: &[BigRational],
    y: &[BigRational],
    cfg: &WalkConfig,
    project_to_torus: bool,
) -> Result<ExperimentRecord> {
    cfg.check()?;
    if x.len() != y.len() || !x.len().is_multiple_of(2) || x.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let vectors = transvection_vectors(x.len() / 2);
    let mut rng = StreamRng::new(cfg.seed, cfg.stream);
    let (mut xs, dx) = numerators(x);
    let (mut ys, dy) = numerators(y);
    let omega0 = omega(&xs, &ys);
    let mut torus = project_to_torus.then(Vec::new);
    let mut drift = BigInt::zero();
    let step = |z: &mut [BigInt], v: &[i64], sign: f64| {
        let mut w: BigInt = z
            .chunks(2)
            .zip(v.chunks(2))
            .map(|(u, e)| &u[0] * e[1] - &u[1] * e[0])
            .sum();
        if sign < 0.0 {
            w = -w;
        }
        for (zi, &vi) in z.iter_mut().zip(v) {
            if vi != 0 {
                *zi += &w * vi;
            }
        }
    };
    for k_step in 0..cfg.burn_in + cfg.steps {
        let (k, sign) = pick_step(&mut rng, vectors.len());
        step(&mut xs, &vectors[k], sign);
        step(&mut ys, &vectors[k], sign);
        let d = (omega(&xs, &ys) - &omega0).abs();
        if d > drift {
            drift = d;
        }
        if let Some(points) = torus.as_mut() {
            if k_step >= cfg.burn_in {
                points.push(
                    xs.iter()
                        .map(|v| rational_to_f64(&BigRational::new(v.mod_floor(&dx), dx.clone())))
                        .collect(),
                );
            }
        }
    }
    let drift = BigRational::new(drift, dx * dy);
    sp_record(cfg, "sp_walk_exact", rational_to_f64(&drift), torus)
}

/// Numerators over the least common denominator.
fn numerators(x: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let d = x.iter().fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let nums = x.iter().map(|r| r.numer() * (&d / r.denom())).collect();
    (nums, d)
}

/// Exact rational value of a finite double.
pub fn exact_rational(x: f64) -> Result<BigRational> {
    BigRational::from_f64(x).ok_or_else(|| Error::Parse(format!("not finite: {x}")))
}
