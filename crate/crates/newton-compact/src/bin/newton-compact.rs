use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use newton_compact::core::criteria::{
    epsilon_estimate, eventual_sign_probe, numeric_compactness_probe, overall_verdict, perturb, sandwich_check,
    stable_compactness, trial_seed, AnalyzeOptions, Geometry, Overall, PerturbationMode, PerturbationSpec, ProbeBudget,
    StabilityVerdict,
};
use newton_compact::core::newton::{annotated_faces, newton_polytope};
use newton_compact::core::polynomial::{
    parse, parse_inferring_count, semialgebraic_to_zero_set, ExponentVector, Polynomial,
};
use newton_compact::{
    json, parse_polynomial, parse_rational, read_polynomial_file, report_json, run_analysis, svg, text,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "newton-compact",
    version,
    about = "Compactness of real zero sets via Newton polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Polynomial expression, e.g. "x1^2 + x2^2 - 1".
    #[arg(short = 'e', long = "expr", conflicts_with = "file")]
    expr: Option<String>,
    /// File holding one polynomial expression.
    #[arg(short = 'f', long = "file")]
    file: Option<PathBuf>,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(short = 'n')]
    n: Option<usize>,
}

impl Input {
    fn polynomial(&self) -> Result<Polynomial> {
        let text = match (&self.expr, &self.file) {
            (Some(e), None) => e.clone(),
            (None, Some(path)) => read_polynomial_file(path)?,
            _ => bail!("give exactly one of --expr or --file"),
        };
        parse_polynomial(&text, self.n)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    #[arg(long, env = "NEWTON_COMPACT_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for the per-face sign checks.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl Output {
    fn no_svg(&self) -> Result<()> {
        if self.format == Format::Svg {
            bail!("svg output is only available for the newton command");
        }
        Ok(())
    }

    fn emit(&self, json_value: &Value, text: impl FnOnce() -> String) -> Result<()> {
        let body = match self.format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(json_value)?),
            Format::Text => text(),
            Format::Svg => unreachable!("checked by the caller"),
        };
        self.write(&body)
    }

    fn write(&self, body: &str) -> Result<()> {
        match &self.output {
            Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(body.as_bytes())?;
                Ok(out.flush()?)
            }
        }
    }
}

#[derive(Args)]
struct Effort {
    /// Random samples per orthant in the face sign checks.
    #[arg(long)]
    samples: Option<usize>,
    /// Sphere radii for the numeric probe, comma separated.
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
    /// Include stage timings in the report.
    #[arg(long)]
    timings: bool,
}

impl Effort {
    fn options(&self, seed: u64) -> AnalyzeOptions {
        let mut o = AnalyzeOptions {
            seed,
            ..AnalyzeOptions::default()
        };
        if let Some(s) = self.samples {
            o.budget.samples_per_orthant = s;
        }
        if let Some(r) = &self.radii {
            o.radii = r.clone();
        }
        o
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full compactness and stability report.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        effort: Effort,
    },
    /// Newton polytope, faces and the boundary at infinity.
    Newton {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Faces at infinity with their face polynomials and sign verdicts.
    Faces {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        effort: Effort,
    },
    /// Compactness verdict only.
    CheckCompact {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        effort: Effort,
    },
    /// Stable compactness verdict only.
    CheckStable {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        effort: Effort,
    },
    /// Numeric search for zeros on large spheres.
    Probe {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[arg(long, value_delimiter = ',', default_values_t = [10.0, 100.0])]
        radii: Vec<f64>,
    },
    /// Perturbs the coefficients repeatedly and probes each result.
    PerturbExperiment {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        /// Perturbation size; defaults to the estimate for stably compact input.
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Subtract epsilon times this monomial instead, e.g. "2,0" for x1^2.
        #[arg(long)]
        directed: Option<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [10.0, 100.0])]
        radii: Vec<f64>,
    },
    /// Aggregates equations g = 0 and inequalities h >= 0 into one polynomial.
    Semialgebraic {
        #[arg(long = "eq")]
        eq: Vec<String>,
        #[arg(long = "ineq")]
        ineq: Vec<String>,
        /// File with one equation polynomial per line.
        #[arg(long = "eq-file")]
        eq_file: Option<PathBuf>,
        /// File with one inequality polynomial per line.
        #[arg(long = "ineq-file")]
        ineq_file: Option<PathBuf>,
        #[arg(short = 'n')]
        n: Option<usize>,
        /// Also analyze the aggregate polynomial.
        #[arg(long)]
        analyze: bool,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        effort: Effort,
    },
}

const DEFINITIVE: u8 = 0;
const INCONCLUSIVE: u8 = 2;

fn analyze_cmd(input: &Input, out: &Output, effort: &Effort, part: Option<&str>) -> Result<u8> {
    out.no_svg()?;
    let f = input.polynomial()?;
    if f.is_zero() {
        return Err(newton_compact::core::Error::ZeroPolynomial.into());
    }
    let options = effort.options(out.seed);
    let run = run_analysis(&f, &options, out.threads)?;
    let mut report = report_json(&f, &run, &options, effort.timings);
    if let (Some(keep), Value::Object(map)) = (part, &mut report) {
        let drop = if keep == "compactness" {
            "stability"
        } else {
            "compactness"
        };
        map.remove(drop);
    }
    let faces = run.geometry.as_ref().map(|g| g.faces()).unwrap_or(&[]);
    out.emit(&report, || text::analysis(&f, run.polytope(), faces, &run.analysis))?;
    let a = &run.analysis;
    let definitive = match part {
        Some("stability") => a.stability.verdict != StabilityVerdict::Inconclusive,
        _ => a.compactness.overall != Overall::Inconclusive,
    };
    Ok(if definitive { DEFINITIVE } else { INCONCLUSIVE })
}

fn newton_cmd(input: &Input, out: &Output) -> Result<u8> {
    let f = input.polynomial()?;
    let p = newton_polytope(&f)?;
    let faces = annotated_faces(&p)?;
    match out.format {
        Format::Svg => out.write(&svg::render(&p, &faces)?)?,
        _ => out.emit(&json::polytope(&p, &faces), || text::polytope(&p, &faces))?,
    }
    Ok(DEFINITIVE)
}

fn faces_cmd(input: &Input, out: &Output, effort: &Effort) -> Result<u8> {
    out.no_svg()?;
    let f = input.polynomial()?;
    let g = Geometry::new(&f)?;
    let options = effort.options(out.seed);
    let budget = options.face_budget();
    let verdicts = newton_compact::face_verdicts(&g, &budget, out.threads)?;
    let entries: Vec<Value> = g
        .boundary_faces()
        .zip(&verdicts)
        .map(|((_, face, poly), v)| {
            json!({
                "face": json::face(g.polytope(), face),
                "polynomial": json::polynomial(poly),
                "verdict": json::verdict(v, &budget),
            })
        })
        .collect();
    let value = json!({ "n": f.nvars(), "faces_at_infinity": entries });
    out.emit(&value, || {
        let mut s = String::from("Newton boundary at infinity:\n");
        for ((_, face, poly), v) in g.boundary_faces().zip(&verdicts) {
            s += &format!(
                "  {}  f_face = {}  sign: {}\n",
                text::face(g.polytope(), face),
                poly,
                v.kind.as_str()
            );
        }
        s
    })?;
    Ok(DEFINITIVE)
}

fn probe_cmd(input: &Input, out: &Output, radii: &[f64]) -> Result<u8> {
    out.no_svg()?;
    let f = input.polynomial()?;
    if f.is_zero() || f.is_constant() {
        bail!("probe needs a nonconstant polynomial");
    }
    let options = AnalyzeOptions {
        seed: out.seed,
        ..AnalyzeOptions::default()
    };
    let evidence = numeric_compactness_probe(&f, radii, &ProbeBudget::default(), options.probe_seed());
    let eventual = eventual_sign_probe(&f, radii, options.eventual_samples, options.eventual_seed());
    let value = json!({
        "polynomial": json::polynomial(&f),
        "probe": json::probe(&evidence),
        "eventual_sign": eventual.name(),
        "seed": out.seed,
    });
    out.emit(&value, || {
        format!("probe: {}\neventual sign: {}\n", evidence.name(), eventual.name())
    })?;
    Ok(DEFINITIVE)
}

fn parse_exponent(text: &str, n: usize) -> Result<ExponentVector> {
    let parts: Vec<u32> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| anyhow!("invalid exponent list '{text}'"))
        })
        .collect::<Result<_>>()?;
    if parts.len() != n {
        bail!("directed exponent has {} entries, expected {n}", parts.len());
    }
    Ok(ExponentVector::new(parts))
}

fn perturb_cmd(
    input: &Input,
    out: &Output,
    epsilon: Option<&str>,
    trials: usize,
    directed: Option<&str>,
    radii: &[f64],
) -> Result<u8> {
    out.no_svg()?;
    let f = input.polynomial()?;
    let g = Geometry::new(&f)?;
    let options = AnalyzeOptions {
        seed: out.seed,
        radii: radii.to_vec(),
        ..AnalyzeOptions::default()
    };
    let (epsilon, source) = match epsilon {
        Some(e) => (parse_rational(e)?, "flag"),
        None if directed.is_some() => bail!("--epsilon is required with --directed"),
        None => (estimated_epsilon(&g, &options, out.threads)?, "estimate"),
    };
    let mode = match directed {
        Some(d) => PerturbationMode::Directed(parse_exponent(d, f.nvars())?),
        None => PerturbationMode::Random,
    };
    let spec = PerturbationSpec { epsilon, mode };
    let budget = options.face_budget();
    let mut far = 0;
    let mut refuted = 0;
    let mut rows = Vec::with_capacity(trials);
    for t in 0..trials as u64 {
        let h = &f + &perturb(&g, &spec, out.seed, t)?;
        let seed = trial_seed(out.seed, t);
        let evidence = numeric_compactness_probe(&h, radii, &ProbeBudget::default(), seed);
        let overall = if h.is_constant() {
            None
        } else {
            Some(overall_verdict(&h, &budget.with_seed(seed))?)
        };
        far += usize::from(evidence.found_far_zeros());
        refuted += usize::from(overall == Some(Overall::NotCompactCertified));
        rows.push(json!({
            "trial": t,
            "seed": seed,
            "polynomial": h.to_string(),
            "far_zeros": evidence.found_far_zeros(),
            "overall": overall.map(Overall::as_str),
        }));
    }
    let value = json!({
        "polynomial": json::polynomial(&f),
        "epsilon": json::rational(&spec.epsilon),
        "epsilon_source": source,
        "mode": match &spec.mode {
            PerturbationMode::Random => json!("random"),
            PerturbationMode::Directed(a) => json!({ "directed": a.as_slice() }),
        },
        "radii": radii,
        "seed": out.seed,
        "trials": trials,
        "far_zero_trials": far,
        "not_compact_trials": refuted,
        "per_trial": rows,
    });
    out.emit(&value, || {
        format!(
            "epsilon = {} ({source})\ntrials: {trials}\nfar-zero trials: {far}\nnot-compact trials: {refuted}\n",
            spec.epsilon
        )
    })?;
    Ok(DEFINITIVE)
}

fn estimated_epsilon(g: &Geometry, options: &AnalyzeOptions, threads: usize) -> Result<newton_compact::core::Rational> {
    let verdicts = newton_compact::face_verdicts(g, &options.face_budget(), threads)?;
    let stability = stable_compactness(g, &verdicts)?;
    let StabilityVerdict::StablyCompactCertified(sign) = stability.verdict else {
        bail!("no perturbation size available: the input is not certified stably compact; pass --epsilon");
    };
    let est = sandwich_check(
        g,
        sign,
        options.sandwich_radius,
        options.sandwich_samples,
        options.sandwich_seed(),
    )?;
    Ok(epsilon_estimate(g, &stability, &est)?.value)
}

#[allow(clippy::too_many_arguments)]
fn semialgebraic_cmd(
    eq: &[String],
    ineq: &[String],
    eq_file: Option<&PathBuf>,
    ineq_file: Option<&PathBuf>,
    n: Option<usize>,
    analyze: bool,
    out: &Output,
    effort: &Effort,
) -> Result<u8> {
    out.no_svg()?;
    let gather = |inline: &[String], file: Option<&PathBuf>| -> Result<Vec<String>> {
        let mut all: Vec<String> = inline.to_vec();
        if let Some(path) = file {
            let raw = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            all.extend(newton_compact::expressions(&raw).map(str::to_string));
        }
        Ok(all)
    };
    let eqs = gather(eq, eq_file)?;
    let ineqs = gather(ineq, ineq_file)?;
    if eqs.is_empty() && ineqs.is_empty() {
        bail!("no equations or inequalities given");
    }
    let n = match n {
        Some(n) => n,
        None => eqs
            .iter()
            .chain(&ineqs)
            .map(|t| parse_inferring_count(t).map(|(_, k)| k))
            .collect::<std::result::Result<Vec<_>, _>>()?
            .into_iter()
            .max()
            .unwrap_or(1),
    };
    let parse_all = |list: &[String]| -> Result<Vec<Polynomial>> { list.iter().map(|t| Ok(parse(t, n)?)).collect() };
    let aggregate = semialgebraic_to_zero_set(&parse_all(&eqs)?, &parse_all(&ineqs)?)?;
    let mut code = DEFINITIVE;
    let mut report = Value::Null;
    let mut summary = String::new();
    if analyze {
        let options = effort.options(out.seed);
        let run = run_analysis(&aggregate, &options, out.threads)?;
        report = report_json(&aggregate, &run, &options, effort.timings);
        let faces = run.geometry.as_ref().map(|g| g.faces()).unwrap_or(&[]);
        summary = text::analysis(&aggregate, run.polytope(), faces, &run.analysis);
        if run.analysis.compactness.overall == Overall::Inconclusive {
            code = INCONCLUSIVE;
        }
    }
    let value = json!({
        "n": n,
        "equations": eqs,
        "inequalities": ineqs,
        "aggregate": json::polynomial(&aggregate),
        "report": report,
    });
    out.emit(&value, || format!("aggregate: {aggregate}\n{summary}"))?;
    Ok(code)
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Analyze { input, out, effort } => analyze_cmd(input, out, effort, None),
        Command::CheckCompact { input, out, effort } => analyze_cmd(input, out, effort, Some("compactness")),
        Command::CheckStable { input, out, effort } => analyze_cmd(input, out, effort, Some("stability")),
        Command::Newton { input, out } => newton_cmd(input, out),
        Command::Faces { input, out, effort } => faces_cmd(input, out, effort),
        Command::Probe { input, out, radii } => probe_cmd(input, out, radii),
        Command::PerturbExperiment {
            input,
            out,
            epsilon,
            trials,
            directed,
            radii,
        } => perturb_cmd(input, out, epsilon.as_deref(), *trials, directed.as_deref(), radii),
        Command::Semialgebraic {
            eq,
            ineq,
            eq_file,
            ineq_file,
            n,
            analyze,
            out,
            effort,
        } => semialgebraic_cmd(
            eq,
            ineq,
            eq_file.as_ref(),
            ineq_file.as_ref(),
            *n,
            *analyze,
            out,
            effort,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
