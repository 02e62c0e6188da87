use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use super::{exit_code, Command, ExperimentPlan, EXIT_CANT_CREATE, EXIT_NEGATIVE, EXIT_OK, EXIT_RESOURCE, EXIT_UNSUPPORTED};
use crate::dehn::DehnContext;
use crate::error::Error;
use crate::growth::{check_length_function, growth_curve, Factor, NOracleConfig, ProductGroup, RipsFactor};
use crate::lipschitz::lip_estimate;
use crate::metrics::{
    heisenberg_eval, metric_for, radius_for_z_powers, HeisenbergElement, HeisenbergMetric, HeisenbergOracle,
    NormMode, QMetric,
};
use crate::numeric::fmt12;
use crate::presentations::{check_small_cancellation, Presentation};
use crate::rips::{rips_presentation, RipsMode, RipsOutput};
use crate::words::{cyclic_reduce, Letter, Word};

/// Auto-chosen Q ball radius never exceeds this; larger powers become gaps.
const AUTO_Q_RADIUS_CAP: u32 = 80;
/// Enumeration radius for Q metrics that are not Heisenberg or free.
const DEFAULT_BALL_RADIUS: u32 = 8;

enum Failure {
    Lib(Error),
    Write(PathBuf, io::Error),
    /// Already-explained outcome with a fixed exit code.
    Exit(i32, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<i32, Failure>;

/// Writes `bytes` to a temporary file in the target directory and renames
/// it into place, so readers never observe a truncated file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn save(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    write_atomic(path, bytes).map_err(|e| Failure::Write(path.to_path_buf(), e))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// JSON to `out` when given (plus `summary` on stdout), else JSON on stdout.
fn emit_json(stdout: &mut dyn Write, out: Option<&Path>, json: &str, summary: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            save(p, json.as_bytes())?;
            let _ = writeln!(stdout, "{summary} -> {}", p.display());
        }
        None => {
            let _ = stdout.write_all(json.as_bytes());
        }
    }
    Ok(())
}

/// Runs a validated plan. Artifacts are written atomically; stdout receives
/// a one-line summary, or the artifact itself when no output path was given.
pub fn execute(plan: &ExperimentPlan, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match run(plan, stdout) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {}: {e}", plan.command.name());
            exit_code(&e)
        }
        Err(Failure::Write(p, e)) => {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", p.display());
            EXIT_CANT_CREATE
        }
        Err(Failure::Exit(code, msg)) => {
            let _ = writeln!(stderr, "error: {}: {msg}", plan.command.name());
            code
        }
    }
}

fn run(plan: &ExperimentPlan, stdout: &mut dyn Write) -> Outcome {
    match &plan.command {
        Command::Parse { input, out } => {
            let p = &input.presentation;
            let text = p.to_text();
            match out {
                Some(path) => {
                    save(path, text.as_bytes())?;
                    let _ = writeln!(
                        stdout,
                        "parse: {} generators, {} relators, total length {} -> {}",
                        p.alphabet().len(),
                        p.relators().len(),
                        p.total_relator_length(),
                        path.display()
                    );
                }
                None => {
                    let _ = stdout.write_all(text.as_bytes());
                }
            }
            Ok(EXIT_OK)
        }
        Command::ScCheck { input, lambda, rips, out } => {
            let built;
            let p: &Presentation = match rips {
                Some(s) => {
                    built = rips_presentation(&input.presentation, *s)?;
                    built.g_presentation()
                }
                None => &input.presentation,
            };
            let report = check_small_cancellation(p, *lambda)?;
            let verdict = if report.passed() { "pass" } else { "fail" };
            let summary = format!("sc-check: C'({}/{}) {verdict}", lambda.numer(), lambda.denom());
            emit_json(stdout, out.as_deref(), &to_json(&report), &summary)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::RipsGen { input, scheme, out } => {
            let rips = rips_presentation(&input.presentation, *scheme)?;
            let g = rips.g_presentation();
            let sidecar = sidecar_path(out);
            save(&sidecar, to_json(&rips_sidecar(&rips)).as_bytes())?;
            save(out, g.to_text().as_bytes())?;
            let _ = writeln!(
                stdout,
                "rips-gen: k={} {}, {} relators, total length {} -> {} (+ {})",
                scheme.k,
                mode_name(scheme.mode),
                g.relators().len(),
                g.total_relator_length(),
                out.display(),
                sidecar.display()
            );
            Ok(EXIT_OK)
        }
        Command::Dehn { input, word } => {
            let p = &input.presentation;
            let ctx = DehnContext::new(p.clone());
            let reduced = ctx.dehn_reduce(word);
            let shown = if reduced.is_empty() { "(empty)".to_string() } else { p.format_word(&reduced) };
            let (verdict, code) = if reduced.is_empty() {
                ("trivial", EXIT_OK)
            } else if ctx.sc_verified() {
                ("non-trivial", EXIT_NEGATIVE)
            } else {
                ("undecided: presentation is not C'(1/6)", EXIT_UNSUPPORTED)
            };
            let _ = writeln!(stdout, "dehn: {verdict}; reduced word: {shown}");
            Ok(code)
        }
        Command::Heisenberg { n_max, radius, csv } => {
            let oracle = HeisenbergOracle::new(*radius)?;
            let mut text = String::from("n,z_power_length,four_sqrt_bound\n");
            let mut gaps = 0;
            for n in 1..=*n_max as i64 {
                let len = match oracle.length(HeisenbergElement::z_power(n)) {
                    Ok(l) => l.to_string(),
                    Err(Error::RadiusExceeded { .. }) => {
                        gaps += 1;
                        String::new()
                    }
                    Err(e) => return Err(e.into()),
                };
                text.push_str(&format!("{n},{len},{}\n", fmt12(4.0 * (n as f64).sqrt())));
            }
            save(csv, text.as_bytes())?;
            let _ = writeln!(
                stdout,
                "heisenberg: n in [1, {n_max}] at radius {radius}, {} exact, {gaps} beyond radius -> {}",
                *n_max - gaps,
                csv.display()
            );
            Ok(EXIT_OK)
        }
        Command::Growth { input, scheme, q, class, n_max, mode, csv, q_radius, oracle_radius } => {
            let qp = &input.presentation;
            let rips = rips_presentation(qp, *scheme)?;
            let radius = q_radius.unwrap_or(auto_q_radius(qp, q, *n_max as u64)?);
            let metric = metric_for(qp, radius)?;
            let ctx;
            let n_oracle = match oracle_radius {
                Some(r) => {
                    ctx = DehnContext::new(rips.g_presentation().clone());
                    Some(NOracleConfig { ctx: &ctx, radius: *r, conj_radius: 1 })
                }
                None => None,
            };
            let ns: Vec<i64> = (0..=*n_max).collect();
            let c = cyclic_reduce(class).0;
            let curve = growth_curve(&rips, q, &c, &ns, metric.as_ref(), *mode, n_oracle)?;
            if *mode == NormMode::Materialize {
                if let Some(s) = curve.samples.iter().find(|s| s.gap.as_deref().is_some_and(is_resource_gap)) {
                    return Err(Failure::Exit(
                        EXIT_RESOURCE,
                        format!(
                            "materialized image at n = {} exceeds the word budget; rerun with --mode counts, \
                             which bounds the norm from letter counts without building the word",
                            s.n
                        ),
                    ));
                }
            }
            save(csv, curve.to_csv().as_bytes())?;
            let defined = curve.defined_domain().len();
            let _ = writeln!(
                stdout,
                "growth: n in [0, {n_max}], {defined} defined, {} gaps, q-metric {} radius {radius} -> {}",
                ns.len() - defined,
                metric.backing(),
                csv.display()
            );
            Ok(EXIT_OK)
        }
        Command::Lenfun { function, lambda, r_max, samples, out } => {
            let report = check_length_function(function, *r_max, *lambda, *samples, plan.seed)?;
            let summary = format!("lenfun: {} {}", report.function, if report.pass { "pass" } else { "fail" });
            emit_json(stdout, out.as_deref(), &to_json(&report), &summary)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::ProductGrowth { input, schemes, q, classes, n_max, csv, q_radius } => {
            let qp = &input.presentation;
            let radius = q_radius.unwrap_or(auto_q_radius(qp, q, *n_max as u64)?);
            let metric: Arc<dyn QMetric> = Arc::from(metric_for(qp, radius)?);
            let mut factors: Vec<Box<dyn Factor>> = Vec::new();
            for s in schemes {
                let rips = Arc::new(rips_presentation(qp, *s)?);
                factors.push(Box::new(RipsFactor::new(rips, q.clone(), metric.clone())));
            }
            let group = ProductGroup::new(factors);
            let ns: Vec<u32> = (0..=*n_max).collect();
            let curve = group.product_growth_curve(classes, &ns)?;
            let mut text = String::from("n,ln_upper\n");
            for s in &curve.samples {
                text.push_str(&format!("{},{}\n", s.n, s.ln_upper.map(fmt12).unwrap_or_default()));
            }
            save(csv, text.as_bytes())?;
            let _ = writeln!(
                stdout,
                "product-growth: {} factors, support {:?}{} -> {}",
                schemes.len(),
                curve.meta.support,
                if curve.meta.degenerate { " (degenerate: identically 0)" } else { "" },
                csv.display()
            );
            Ok(EXIT_OK)
        }
        Command::Lip { input, scheme, q, radius, out } => {
            let rips = rips_presentation(&input.presentation, *scheme)?;
            let ctx = DehnContext::new(rips.g_presentation().clone());
            let phi = rips.outer(q.clone())?;
            let est = lip_estimate(&phi, *radius, &ctx)?;
            let body = json!({
                "lower": est.lower,
                "upper": est.upper,
                "witness": est.witness,
                "certified": est.certified,
            });
            let summary = format!("lip: [{}, {}]", fmt12(est.lower), fmt12(est.upper));
            emit_json(stdout, out.as_deref(), &to_json(&body), &summary)?;
            if est.lower > est.upper + 1e-9 {
                return Err(Failure::Exit(EXIT_NEGATIVE, "lower estimate exceeds the upper bound".into()));
            }
            Ok(EXIT_OK)
        }
    }
}

fn is_resource_gap(gap: &str) -> bool {
    let prefix = Error::Resource(String::new()).to_string();
    gap.starts_with(&prefix)
}

fn mode_name(m: RipsMode) -> &'static str {
    match m {
        RipsMode::XOnly => "paper",
        RipsMode::Complete => "complete",
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Smallest Q ball that holds every `q^n`, `n <= n_max`, capped at
/// [`AUTO_Q_RADIUS_CAP`]. Central Heisenberg elements use the `z^m` bound.
fn auto_q_radius(q: &Presentation, q_word: &Word, n_max: u64) -> crate::Result<u32> {
    if q.relators().is_empty() {
        return Ok(0);
    }
    let Some((a, b)) = HeisenbergMetric::detect(q) else {
        return Ok(DEFAULT_BALL_RADIUS);
    };
    let e = heisenberg_eval(q_word, a, b)?;
    let need = if e.p == 0 && e.q == 0 {
        let m = n_max.saturating_mul(e.r.unsigned_abs());
        if m > 1 << 20 {
            u32::MAX
        } else {
            radius_for_z_powers(m)
        }
    } else {
        u32::try_from(n_max.saturating_mul(q_word.len() as u64)).unwrap_or(u32::MAX)
    };
    Ok(need.min(AUTO_Q_RADIUS_CAP))
}

#[derive(Serialize)]
struct RuleRow {
    generator: String,
    target: String,
    rhs_length: usize,
    rhs: String,
}

fn rips_sidecar(rips: &RipsOutput) -> serde_json::Value {
    let g = rips.g_presentation();
    let nq = rips.q_presentation().alphabet().len() as u32;
    let mut rules = Vec::new();
    for s in 0..nq {
        for inverse in [false, true] {
            let sl = Letter::new(s, inverse);
            for t in [rips.x(), rips.y()] {
                if let Ok(rhs) = rips.conjugation_rule(sl, t) {
                    rules.push(RuleRow {
                        generator: g.format_word(&Word::letter(sl)),
                        target: g.format_word(&Word::letter(t)),
                        rhs_length: rhs.len(),
                        rhs: g.format_word(&rhs),
                    });
                }
            }
        }
    }
    let scheme = rips.scheme();
    json!({
        "k": scheme.k,
        "mode": mode_name(scheme.mode),
        "rules": rules,
        "block_table": rips.block_table(),
    })
}
