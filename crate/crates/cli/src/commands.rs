use std::path::Path;

use affchar::characters::{classify_character, in_set_u, parse_rational, rational_to_f64, Character};
use affchar::dehn_twist::{higher_genus_rep, standard_curve_system};
use affchar::dynamics::{
    closure_hint, exact_rational, nondiscreteness_hint, projective_walk, sp_walk, sp_walk_exact, WalkConfig,
};
use affchar::error::Error;
use affchar::haupt::{haupt_check, GaussianRational, PeriodCharacter, PeriodValues};
use affchar::linalg::CMatrix;
use affchar::rng::StreamRng;
use affchar::surface_group::Letter;
use affchar::twisted_cohomology::{cohomology_basis, cohomology_dimensions, signature, volume, volume_gram, Cocycle};
use anyhow::{anyhow, Context, Result};
use nalgebra::Matrix2;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::output::{Session, ToleranceFailure};
use crate::{Command, WalkKind, WalkOptions};

/// Offset of the stream used to draw random start points, so they do not
/// reuse the walk's own stream.
const START_STREAM_OFFSET: u64 = 1 << 32;

pub fn run(command: &Command, session: &mut Session) -> Result<()> {
    match command {
        Command::Cohomology { character } => cohomology(session, character),
        Command::Twist { character } => twist(session, character),
        Command::Walk { kind } => match kind {
            WalkKind::Sp {
                genus,
                x,
                y,
                torus,
                walk,
            } => walk_sp(session, *genus, x, y, *torus, walk),
            WalkKind::Torelli { character, start, walk } => walk_torelli(session, character, start, walk),
        },
        Command::Haupt { periods } => haupt(session, periods),
        Command::Classify { character } => classify(session, character),
        Command::Volume { character, cocycle } => volume_cmd(session, character, cocycle.as_deref()),
    }
}

fn cj(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn matrix_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| cj(m[(i, j)])).collect()))
            .collect(),
    )
}

fn letter(generator: usize) -> String {
    Letter::new(generator, false).to_string()
}

fn read_character(session: &mut Session, path: &Path) -> Result<Character> {
    let text = session.read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("malformed character JSON in {}", path.display()))
}

fn cohomology(session: &mut Session, path: &Path) -> Result<()> {
    let alpha = read_character(session, path)?;
    let basis = cohomology_basis(&alpha)?;
    let dims = cohomology_dimensions(&alpha);
    let g = alpha.genus();
    let summary = json!({
        "command": "cohomology",
        "genus": g,
        "dims": { "Z1": dims.z1, "B1": dims.b1, "H1": dims.h1 },
        "rank_certificate": {
            "relator_singular_values": dims.relator_singular_values,
            "coboundary_singular_values": dims.coboundary_singular_values,
        },
        "basis": {
            "relation_pivot": letter(basis.relation_pivot()),
            "coboundary_pivot": letter(basis.coboundary_pivot()),
            "free": basis.free_indices().iter().map(|&k| letter(k)).collect::<Vec<_>>(),
            "representatives": basis
                .representatives()
                .iter()
                .map(|r| r.values().iter().map(|&z| cj(z)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        },
    });
    session.emit("cohomology", &summary, None)?;
    if dims.z1 != 2 * g - 1 || dims.h1 != 2 * g - 2 || basis.dim() != dims.h1 {
        return Err(ToleranceFailure(format!(
            "numeric rank gives Z1 = {}, H1 = {}; expected {} and {}",
            dims.z1,
            dims.h1,
            2 * g - 1,
            2 * g - 2
        ))
        .into());
    }
    Ok(())
}

fn twist(session: &mut Session, path: &Path) -> Result<()> {
    let alpha = read_character(session, path)?;
    let rep = higher_genus_rep(&alpha)?;
    let names: Vec<String> = standard_curve_system(alpha.genus())
        .twists
        .iter()
        .map(|t| t.name.clone())
        .collect();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut handles = Vec::new();
    for (i, &(t, s)) in rep.handle_params.iter().enumerate() {
        let blocks = [Matrix2::new(one, s, zero, one), Matrix2::new(one, zero, t, one)];
        handles.push(json!({
            "handle": i + 1,
            "t": cj(t),
            "s": cj(s),
            "nondiscreteness_hint": nondiscreteness_hint(s, t),
            "closure_hint": closure_hint(&blocks, session.global.tol)?,
        }));
    }
    let generators: Vec<Value> = names
        .iter()
        .zip(&rep.generators)
        .map(|(name, m)| json!({ "name": name, "matrix": matrix_json(m) }))
        .collect();
    let summary = json!({
        "command": "twist",
        "genus": alpha.genus(),
        "handles": handles,
        "generators": generators,
    });
    session.emit("twist", &summary, None)
}

fn walk_config(session: &Session, w: &WalkOptions) -> WalkConfig {
    WalkConfig {
        seed: session.global.seed,
        stream: w.stream,
        steps: w.steps,
        burn_in: w.burn_in,
    }
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn walk_sp(
    session: &mut Session,
    genus: usize,
    x: &Option<String>,
    y: &Option<String>,
    torus: bool,
    w: &WalkOptions,
) -> Result<()> {
    if genus == 0 {
        return Err(Error::GenusOutOfScope(genus).into());
    }
    let cfg = walk_config(session, w);
    let n = 2 * genus;
    let mut rng = StreamRng::new(cfg.seed, cfg.stream.wrapping_add(START_STREAM_OFFSET));
    let mut coords = |given: &Option<String>| -> Result<Vec<String>> {
        match given {
            Some(s) => {
                let parts: Vec<String> = split_list(s).into_iter().map(String::from).collect();
                if parts.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: parts.len(),
                    }
                    .into());
                }
                Ok(parts)
            }
            None => Ok((0..n).map(|_| format!("{:?}", rng.uniform())).collect()),
        }
    };
    let (xs, ys) = (coords(x)?, coords(y)?);
    let record = if session.global.exact {
        let parse = |v: &[String]| -> Result<Vec<_>> {
            v.iter()
                .map(|s| match parse_rational(s) {
                    Ok(r) => Ok(r),
                    Err(_) => Ok(exact_rational(
                        s.parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad number {s:?}")))?,
                    )?),
                })
                .collect()
        };
        sp_walk_exact(&parse(&xs)?, &parse(&ys)?, &cfg, torus)?
    } else {
        let parse = |v: &[String]| -> Result<Vec<f64>> {
            v.iter()
                .map(|s| match s.parse::<f64>() {
                    Ok(f) => Ok(f),
                    Err(_) => Ok(rational_to_f64(&parse_rational(s)?)),
                })
                .collect()
        };
        sp_walk(&parse(&xs)?, &parse(&ys)?, &cfg, torus)?
    };
    let mut summary = serde_json::to_value(&record)?;
    summary["command"] = json!("walk_sp");
    summary["start"] = json!({ "x": xs, "y": ys });
    session.emit("walk-sp", &summary, record.points.as_ref())
}

fn parse_start(s: &str, n: usize) -> Result<Vec<Complex64>> {
    let bad = || Error::Parse(format!("bad start vector {s:?}; expected `re,im;re,im;…`"));
    let v = s
        .split(';')
        .map(|pair| {
            let parts = split_list(pair);
            match parts.as_slice() {
                [re, im] => Ok(Complex64::new(
                    re.parse().map_err(|_| bad())?,
                    im.parse().map_err(|_| bad())?,
                )),
                _ => Err(bad()),
            }
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        }
        .into());
    }
    Ok(v)
}

fn walk_torelli(session: &mut Session, path: &Path, start: &Option<String>, w: &WalkOptions) -> Result<()> {
    let alpha = read_character(session, path)?;
    let rep = higher_genus_rep(&alpha)?;
    let cfg = walk_config(session, w);
    let n = rep.generators[0].nrows();
    let start = match start {
        Some(s) => parse_start(s, n)?,
        None => {
            let mut rng = StreamRng::new(cfg.seed, cfg.stream.wrapping_add(START_STREAM_OFFSET));
            (0..n).map(|_| Complex64::new(rng.gaussian(), rng.gaussian())).collect()
        }
    };
    let record = projective_walk(&rep.generators, &start, &cfg)?;
    let mut summary = serde_json::to_value(&record)?;
    summary["command"] = json!("walk_torelli");
    summary["genus"] = json!(alpha.genus());
    summary["handle_params"] = Value::Array(
        rep.handle_params
            .iter()
            .map(|&(t, s)| json!({ "t": cj(t), "s": cj(s) }))
            .collect(),
    );
    summary["start"] = Value::Array(start.iter().map(|&z| cj(z)).collect());
    session.emit("walk-torelli", &summary, record.points.as_ref())
}

fn haupt(session: &mut Session, path: &Path) -> Result<()> {
    let text = session.read_input(path)?;
    let mut omega: PeriodCharacter =
        serde_json::from_str(&text).with_context(|| format!("malformed period JSON in {}", path.display()))?;
    if session.global.exact {
        if let PeriodValues::Float(v) = omega.values() {
            let exact = v
                .iter()
                .map(|z| Ok(GaussianRational::new(exact_rational(z.re)?, exact_rational(z.im)?)))
                .collect::<affchar::error::Result<Vec<_>>>()?;
            omega = PeriodCharacter::exact(exact);
        }
    }
    let report = haupt_check(&omega);
    let mut summary = serde_json::to_value(&report)?;
    summary["command"] = json!("haupt");
    summary["genus"] = json!(omega.genus());
    summary["exact"] = json!(omega.is_exact());
    session.emit("haupt", &summary, None)
}

fn classify(session: &mut Session, path: &Path) -> Result<()> {
    let alpha = read_character(session, path)?;
    if session.global.exact && alpha.exact_values().is_none() {
        return Err(Error::UndecidableInFloatingMode("exact classification").into());
    }
    let flags = classify_character(&alpha, session.global.tol);
    let mut summary = serde_json::to_value(flags)?;
    summary["command"] = json!("classify");
    summary["genus"] = json!(alpha.genus());
    summary["mode"] = serde_json::to_value(alpha.mode())?;
    if alpha.genus() == 2 {
        summary["in_set_U"] = json!(in_set_u(&alpha, session.global.tol)?);
    }
    session.emit("classify", &summary, None)
}

fn volume_cmd(session: &mut Session, path: &Path, cocycle: Option<&Path>) -> Result<()> {
    let alpha = read_character(session, path)?;
    let basis = cohomology_basis(&alpha)?;
    let gram = volume_gram(&alpha, &basis)?;
    let scale = affchar::linalg::max_abs(&gram.matrix).max(1.0);
    let sig = signature(&gram.matrix, session.global.tol * scale)?;
    let g = alpha.genus();
    let mut summary = json!({
        "command": "volume",
        "genus": g,
        "gram": matrix_json(&gram.matrix),
        "hermitian_defect": gram.hermitian_defect(),
        "conditioning": gram.conditioning(),
        "signature": sig,
        "expected_signature": [g - 1, g - 1],
    });
    if let Some(cpath) = cocycle {
        let text = session.read_input(cpath)?;
        let lambda: Cocycle =
            serde_json::from_str(&text).with_context(|| format!("malformed cocycle JSON in {}", cpath.display()))?;
        if lambda.character().values() != alpha.values() {
            return Err(Error::CharacterMismatch.into());
        }
        summary["volume"] = json!(volume(&lambda)?);
    }
    session.emit("volume", &summary, None)?;
    if (sig.positive, sig.negative, sig.near_zero) != (g - 1, g - 1, 0) {
        return Err(anyhow!(ToleranceFailure(format!(
            "signature ({}, {}) with {} near-zero eigenvalues; expected ({}, {})",
            sig.positive,
            sig.negative,
            sig.near_zero,
            g - 1,
            g - 1
        ))));
    }
    Ok(())
}
