//! The `charvar` command line: exact lemma suites, certificates and
//! continuation probes.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on usage or input errors.

use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{certify_manifold, ManifoldRecord, TauMode};
use crate::continuation::{target_sweep, unipotent_isolation_probe};
use crate::deform::PeripheralClass;
use crate::error::{Error, Result};
use crate::manifold::Manifold;
use crate::verify::verify_lemmas;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Version tag written into every certificate document.
pub const CERTIFICATE_SCHEMA: &str = "charvar-certificate/1";

#[derive(Debug, Parser)]
#[command(name = "charvar", version, about = "Exact certificates for σ-coordinates near χ_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the exact representation-theory suites for each n.
    VerifyLemmas {
        /// Dimension or inclusive range such as `2..6`.
        #[arg(long, default_value = "2..10", value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Emit Jacobian certificates for each cusp of a manifold.
    Certify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "2..10", value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = TauArg::Formal)]
        tau: TauArg,
        /// Peripheral class `p,q` meaning meridian^p longitude^q; repeatable.
        #[arg(long = "class", value_parser = parse_class)]
        classes: Vec<PeripheralClass>,
        /// Write the certificate document here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Newton continuation: σ-target sweeps and the isolation probe.
    Continue {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "2..4", value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Largest n accepted.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1e-2)]
        radius: f64,
        #[arg(long, default_value_t = 1e-3)]
        target_perturb: f64,
        /// Random target vectors in addition to the coordinate directions.
        #[arg(long, default_value_t = 4)]
        random_targets: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct Source {
    /// Built-in manifold: fig8.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Manifold description file.
    #[arg(long)]
    pub manifold: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<Manifold> {
        match (&self.builtin, &self.manifold) {
            (_, Some(path)) => Manifold::load(path),
            (Some(name), None) => {
                Manifold::builtin(name).ok_or_else(|| Error::Usage(format!("unknown builtin manifold {name:?}")))
            }
            (None, None) => Ok(Manifold::figure_eight()),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TauArg {
    Formal,
    Specialize,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let number = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid dimension {t:?}"));
    let range = match s.split_once("..") {
        Some((lo, hi)) => number(lo)?..=number(hi.strip_prefix('=').unwrap_or(hi))?,
        None => {
            let n = number(s)?;
            n..=n
        }
    };
    if *range.start() < 2 {
        return Err(format!("n must be at least 2, got {}", range.start()));
    }
    if range.is_empty() {
        return Err(format!("empty range {s:?}"));
    }
    Ok(range)
}

fn parse_class(s: &str) -> std::result::Result<PeripheralClass, String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("expected p,q, got {s:?}"))?;
    let p: i64 = p.trim().parse().map_err(|_| format!("invalid integer {p:?}"))?;
    let q: i64 = q.trim().parse().map_err(|_| format!("invalid integer {q:?}"))?;
    if p == 0 && q == 0 {
        return Err("the class 0,0 is trivial".to_string());
    }
    Ok(PeripheralClass::new(p, q))
}

#[derive(Serialize)]
struct CertificateDocument {
    schema: &'static str,
    records: Vec<ManifoldRecord>,
}

/// A finished command: text for standard output and the exit status.
pub struct Outcome {
    pub stdout: String,
    pub status: u8,
}

fn status(ok: bool) -> u8 {
    if ok {
        EXIT_PASS
    } else {
        EXIT_FAILED
    }
}

fn run_verify(range: RangeInclusive<usize>, seed: u64) -> Result<Outcome> {
    let results = range
        .clone()
        .into_par_iter()
        .map(|n| verify_lemmas(n, seed))
        .collect::<Result<Vec<_>>>()?;
    let mut out = String::new();
    let mut ok = true;
    for check in results.iter().flatten() {
        ok &= check.passed;
        let verdict = if check.passed { "pass" } else { "FAIL" };
        writeln!(out, "n={:<3} {:<30} {verdict}  {}", check.n, check.lemma, check.detail).unwrap();
    }
    writeln!(out, "verify-lemmas: {}", if ok { "all passed" } else { "FAILED" }).unwrap();
    Ok(Outcome {
        stdout: out,
        status: status(ok),
    })
}

fn run_certify(
    manifold: &Manifold,
    range: RangeInclusive<usize>,
    tau: TauArg,
    classes: &[PeripheralClass],
    output: Option<&PathBuf>,
) -> Result<Outcome> {
    let mode = match tau {
        TauArg::Formal => TauMode::Formal,
        TauArg::Specialize => TauMode::Specialize,
    };
    let classes = if classes.is_empty() {
        vec![PeripheralClass::MERIDIAN, PeripheralClass::new(1, 1)]
    } else {
        classes.to_vec()
    };
    let certificates = range
        .into_par_iter()
        .map(|n| certify_manifold(manifold, n, mode, &classes))
        .collect::<Result<Vec<_>>>()?;
    let ok = certificates.iter().all(|c| c.certified());
    let document = CertificateDocument {
        schema: CERTIFICATE_SCHEMA,
        records: certificates.iter().map(|c| c.record()).collect(),
    };
    let json = serde_json::to_string_pretty(&document).expect("records serialize") + "\n";
    let mut summary = String::new();
    for cert in &certificates {
        for cusp in &cert.cusps {
            for (word, j) in &cusp.classes {
                let det = if j.tau_factor_power > 0 {
                    format!("({})^{} · {}", cusp.shape.parameter(j.class.p, j.class.q), j.tau_factor_power, j.cofactor)
                } else {
                    j.determinant.to_string()
                };
                writeln!(
                    summary,
                    "n={:<3} cusp {} γ={word:<12} det J = {det}  {}",
                    cert.n,
                    cusp.cusp,
                    if j.certified { "certified" } else { "FAILED" }
                )
                .unwrap();
            }
        }
    }
    let stdout = match output {
        Some(path) => {
            std::fs::write(path, &json).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            summary + &format!("certificate written to {}\n", path.display())
        }
        None => json,
    };
    Ok(Outcome {
        stdout,
        status: status(ok),
    })
}

#[allow(clippy::too_many_arguments)]
fn run_continue(
    manifold: &Manifold,
    range: RangeInclusive<usize>,
    trials: usize,
    radius: f64,
    perturbation: f64,
    random_targets: usize,
    seed: u64,
) -> Result<Outcome> {
    let mut out = String::new();
    let mut ok = true;
    writeln!(
        out,
        "{:<3} {:<9} {:>9} {:>10} {:>12} {:>12} {:>12}",
        "n", "probe", "converged", "iterations", "residual", "target err", "distance"
    )
    .unwrap();
    for n in range {
        let sweep = target_sweep(manifold, n, perturbation, random_targets, seed)?;
        let converged: Vec<_> = sweep.trials.iter().filter(|t| t.converged).collect();
        let worst = |f: fn(&crate::continuation::TrialOutcome) -> f64| {
            converged.iter().map(|t| f(t)).fold(0.0, f64::max)
        };
        let max_iter = converged.iter().map(|t| t.iterations).max().unwrap_or(0);
        let sweep_ok = converged.len() == sweep.trials.len()
            && worst(|t| t.residual) < 1e-10
            && worst(|t| t.target_error) < 1e-9
            && sweep.min_pairwise_distance > 1e-6;
        writeln!(
            out,
            "{n:<3} {:<9} {:>5}/{:<3} {max_iter:>10} {:>12.3e} {:>12.3e} {:>12.3e}",
            "targets",
            converged.len(),
            sweep.trials.len(),
            worst(|t| t.residual),
            worst(|t| t.target_error),
            sweep.min_pairwise_distance,
        )
        .unwrap();

        let probe = unipotent_isolation_probe(manifold, n, trials, radius, seed)?;
        let max_iter = probe.trials.iter().filter(|t| t.converged).map(|t| t.iterations).max().unwrap_or(0);
        let worst_residual = probe
            .trials
            .iter()
            .filter(|t| t.converged)
            .map(|t| t.residual)
            .fold(0.0, f64::max);
        let probe_ok = probe.violations == 0 && probe.converged > 0;
        writeln!(
            out,
            "{n:<3} {:<9} {:>5}/{:<3} {max_iter:>10} {worst_residual:>12.3e} {:>12} {:>12.3e}",
            "isolation",
            probe.converged,
            probe.trials.len(),
            "-",
            probe.max_distance,
        )
        .unwrap();
        if probe.converged < probe.trials.len() {
            writeln!(out, "    {} isolation trials did not converge", probe.trials.len() - probe.converged).unwrap();
        }
        if probe.violations > 0 {
            writeln!(out, "    {} trials ended farther than {:e} from χ_n", probe.violations, probe.threshold).unwrap();
        }
        ok &= sweep_ok && probe_ok;
    }
    writeln!(
        out,
        "targets: distance column is the smallest pairwise character distance; isolation: largest distance to χ_n"
    )
    .unwrap();
    writeln!(out, "continue: {}", if ok { "all checks passed" } else { "FAILED" }).unwrap();
    Ok(Outcome {
        stdout: out,
        status: status(ok),
    })
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::VerifyLemmas { n, seed } => run_verify(n.clone(), *seed),
        Command::Certify {
            source,
            n,
            tau,
            classes,
            output,
        } => run_certify(&source.load()?, n.clone(), *tau, classes, output.as_ref()),
        Command::Continue {
            source,
            n,
            max_n,
            trials,
            radius,
            target_perturb,
            random_targets,
            seed,
        } => {
            if *n.end() > *max_n {
                return Err(Error::Usage(format!(
                    "n = {} exceeds the continuation cap {max_n}; raise --max-n to allow it",
                    n.end()
                )));
            }
            run_continue(
                &source.load()?,
                n.clone(),
                *trials,
                *radius,
                *target_perturb,
                *random_targets,
                *seed,
            )
        }
    }
}

/// Parses `args`, runs the command and writes its output; returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            outcome.status
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Parse { .. }
                | Error::Usage(_)
                | Error::Io(_)
                | Error::NotParabolic { .. }
                | Error::NonCommuting(..)
                | Error::RealCuspShape
                | Error::UndefinedGenerator(_)
                | Error::DimensionTooSmall(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            }
        }
    }
}
