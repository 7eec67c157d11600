use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use affchar::dynamics::Points;
use affchar::error::ErrorKind;
use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::Global;

pub const MANIFEST_FILE: &str = "manifest.jsonl";

/// Append-only record of one invocation that wrote artifacts.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub run: usize,
    pub command: String,
    pub version: &'static str,
    pub seeds: Vec<u64>,
    /// sha256 of each input file, keyed by the path as given.
    pub input_digests: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    pub wall_time_s: f64,
}

pub struct Session {
    pub global: Global,
    started: Instant,
    inputs: BTreeMap<String, String>,
}

impl Session {
    pub fn new(global: Global) -> Self {
        Session {
            global,
            started: Instant::now(),
            inputs: BTreeMap::new(),
        }
    }

    /// Reads a file (or stdin for `-`) and records its digest.
    pub fn read_input(&mut self, path: &Path) -> Result<String> {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        } else {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        };
        let digest = hex::encode(Sha256::digest(text.as_bytes()));
        self.inputs.insert(path.display().to_string(), digest);
        Ok(text)
    }

    /// Prints the summary and, with `--out`, writes it and the point stream
    /// as artifacts referenced by a new manifest line.
    pub fn emit(&self, command: &str, summary: &Value, points: Option<&Points>) -> Result<()> {
        let text = if self.global.json {
            serde_json::to_string(summary)?
        } else {
            serde_json::to_string_pretty(summary)?
        };
        println!("{text}");
        let Some(dir) = &self.global.out else { return Ok(()) };
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let manifest_path = dir.join(MANIFEST_FILE);
        let run = match fs::read_to_string(&manifest_path) {
            Ok(s) => s.lines().filter(|l| !l.trim().is_empty()).count() + 1,
            Err(e) if e.kind() == io::ErrorKind::NotFound => 1,
            Err(e) => return Err(e).context("reading manifest"),
        };
        let stem = format!("{run:04}-{command}");
        let mut outputs = Vec::new();
        let summary_path = dir.join(format!("{stem}.json"));
        fs::write(&summary_path, serde_json::to_string_pretty(summary)? + "\n")?;
        outputs.push(summary_path);
        if let Some(points) = points {
            let csv_path = dir.join(format!("{stem}-points.csv"));
            write_points(&csv_path, points)?;
            outputs.push(csv_path);
        }
        let manifest = RunManifest {
            run,
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            seeds: vec![self.global.seed],
            input_digests: self.inputs.clone(),
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
            wall_time_s: self.started.elapsed().as_secs_f64(),
        };
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&manifest_path)
            .context("opening manifest")?;
        writeln!(f, "{}", serde_json::to_string(&manifest)?)?;
        Ok(())
    }
}

fn write_points(path: &PathBuf, points: &Points) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    match points {
        Points::Projective(ps) => {
            let n = ps.first().map_or(0, Vec::len);
            let header: Vec<String> = (0..n).flat_map(|i| [format!("re{i}"), format!("im{i}")]).collect();
            w.write_record(&header)?;
            for p in ps {
                w.write_record(p.iter().flat_map(|z| [z.re.to_string(), z.im.to_string()]))?;
            }
        }
        Points::Torus(ps) => {
            let n = ps.first().map_or(0, Vec::len);
            w.write_record((0..n).map(|i| format!("x{i}")))?;
            for p in ps {
                w.write_record(p.iter().map(f64::to_string))?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// A computed result that is out of tolerance after the summary was printed.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ToleranceFailure(pub String);

/// Exit status and stderr JSON for an error: 1 input, 2 precondition, 3 tolerance.
pub fn describe_error(e: &anyhow::Error) -> (u8, String) {
    let lib = e.chain().find_map(|c| c.downcast_ref::<affchar::error::Error>());
    let (status, code) = match lib {
        None if e.chain().any(|c| c.is::<ToleranceFailure>()) => (3, "tolerance"),
        Some(err) => (
            match err.kind() {
                ErrorKind::Input => 1,
                ErrorKind::Precondition => 2,
                ErrorKind::Tolerance => 3,
            },
            err.code(),
        ),
        None if e.chain().any(|c| c.is::<serde_json::Error>()) => (1, "parse"),
        None if e.chain().any(|c| c.is::<io::Error>()) => (1, "io"),
        None => (1, "input"),
    };
    let mut body = json!({ "error": code, "message": format!("{e:#}") });
    if let Some(affchar::error::Error::Degenerate { factor }) = lib {
        body["factor"] = json!(factor);
    }
    (status, body.to_string())
}
