//! Reports, file formats and the command-line front end for
//! [`newton_compact_core`].

pub mod json;
pub mod svg;
pub mod text;

use std::path::Path;
use std::thread;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use newton_compact_core::criteria::{
    analyze, analyze_with_verdicts, face_sign_verdict, Analysis, AnalyzeOptions, Geometry,
};
use newton_compact_core::newton::NewtonPolytope;
use newton_compact_core::polynomial::{parse, parse_inferring_count, Polynomial};
use newton_compact_core::signcheck::{Budget, SignVerdict};
use newton_compact_core::{BigInt, Rational};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub use newton_compact_core as core;

/// Parses a polynomial, inferring the variable count unless `n` is given.
pub fn parse_polynomial(text: &str, n: Option<usize>) -> Result<Polynomial> {
    let text = text.trim();
    let f = match n {
        Some(n) => parse(text, n)?,
        None => parse_inferring_count(text)?.0,
    };
    Ok(f)
}

/// Reads a polynomial file: one expression, `#` comments and blank lines ignored.
pub fn read_polynomial_file(path: &Path) -> Result<String> {
    let raw = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let body: Vec<&str> = expressions(&raw).collect();
    if body.is_empty() {
        bail!("{} contains no polynomial", path.display());
    }
    Ok(body.join(" "))
}

/// Non-empty, non-comment lines of a list file.
pub fn expressions(raw: &str) -> impl Iterator<Item = &str> {
    raw.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

/// Parses `p/q`, an integer or a decimal such as `0.01` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            bail!("invalid number '{text}'");
        }
        let numer: BigInt = digits.parse().map_err(|_| anyhow::anyhow!("invalid number '{text}'"))?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    t.parse::<Rational>()
        .map_err(|_| anyhow::anyhow!("invalid number '{text}'"))
}

/// SHA-256 of the canonical polytope JSON.
pub fn geometry_digest(polytope: &Value) -> String {
    hex::encode(Sha256::digest(polytope.to_string().as_bytes()))
}

/// Face sign verdicts on up to `threads` workers. Each face has its own seed,
/// so the result does not depend on the thread count.
pub fn face_verdicts(g: &Geometry, budget: &Budget, threads: usize) -> Result<Vec<SignVerdict>> {
    let count = g.boundary().len();
    let threads = threads.clamp(1, count.max(1));
    if threads == 1 {
        return Ok(newton_compact_core::criteria::face_sign_verdicts(g, budget)?);
    }
    let mut slots: Vec<Option<SignVerdict>> = vec![None; count];
    thread::scope(|s| -> Result<()> {
        let workers: Vec<_> = (0..threads)
            .map(|w| {
                s.spawn(move || {
                    (w..count)
                        .step_by(threads)
                        .map(|k| face_sign_verdict(g, k, budget).map(|v| (k, v)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for worker in workers {
            let done = worker.join().map_err(|_| anyhow::anyhow!("face worker panicked"))?;
            for item in done {
                let (k, v) = item?;
                slots[k] = Some(v);
            }
        }
        Ok(())
    })?;
    Ok(slots.into_iter().map(|v| v.expect("every face assigned")).collect())
}

/// Wall-clock durations of the analysis stages, in seconds.
#[derive(Clone, Debug, Default)]
pub struct Timings {
    pub geometry: f64,
    pub face_signs: f64,
    pub criteria: f64,
}

impl Timings {
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "geometry": self.geometry,
            "face_signs": self.face_signs,
            "criteria": self.criteria,
        })
    }
}

pub struct Run {
    pub geometry: Option<Geometry>,
    pub analysis: Analysis,
    pub timings: Timings,
}

impl Run {
    pub fn polytope(&self) -> Option<&NewtonPolytope> {
        self.geometry.as_ref().map(Geometry::polytope)
    }
}

/// Runs the full analysis with face signs spread over `threads` workers.
pub fn run_analysis(f: &Polynomial, options: &AnalyzeOptions, threads: usize) -> Result<Run> {
    let mut timings = Timings::default();
    if f.nvars() == 1 {
        let start = Instant::now();
        let analysis = analyze(f, options)?;
        timings.criteria = start.elapsed().as_secs_f64();
        let geometry = Geometry::new(f).ok();
        return Ok(Run {
            geometry,
            analysis,
            timings,
        });
    }
    let start = Instant::now();
    let g = Geometry::new(f)?;
    timings.geometry = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let verdicts = face_verdicts(&g, &options.face_budget(), threads)?;
    timings.face_signs = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let analysis = analyze_with_verdicts(&g, verdicts, options)?;
    timings.criteria = start.elapsed().as_secs_f64();
    Ok(Run {
        geometry: Some(g),
        analysis,
        timings,
    })
}

/// The versioned JSON report for a finished run.
pub fn report_json(f: &Polynomial, run: &Run, options: &AnalyzeOptions, timings: bool) -> Value {
    let faces = run.geometry.as_ref().map(|g| g.faces()).unwrap_or(&[]);
    let polytope_json = run.polytope().map(|p| json::polytope(p, faces));
    let digest = polytope_json.as_ref().map(geometry_digest);
    let input = serde_json::json!({
        "polynomial": json::polynomial(f),
        "n": f.nvars(),
    });
    json::report(
        input,
        digest.as_deref(),
        run.polytope(),
        faces,
        &run.analysis,
        options,
        timings.then(|| run.timings.to_json()),
    )
}
