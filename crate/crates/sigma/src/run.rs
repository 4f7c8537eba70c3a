//! The commands behind the `sigma` binary.
//!
//! Each command returns an [`Outcome`]: the exit code (0 definitive, 2
//! undecided) and the text for stdout. Errors map to exit code 1 in `main`.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};
use sigma_core::builders::{builtin, BUILTIN_NAMES};
use sigma_core::complex::BasedFreeComplex;
use sigma_core::decide::{sigma_membership, SigmaStatus, SigmaVerdict};
use sigma_core::domination::{describe_homology, finite_type_reduce};
use sigma_core::movable::{check_movable_witness, movable_to_infinity, Movability};
use sigma_core::report::{assemble_report, auto_directions, cat_upper_bound, promote, with_category_bound, PromotionFlags, SigmaReport};
use sigma_core::{Character, CoeffRing, GroupRingElem};

use crate::error::{CliError, CliResult};
use crate::format::{complex_to_string, from_file, parse_elem, read_text, to_file, to_pretty, write_text};
use crate::table::write_csv;
use crate::report::{category_bound_value, domination_value, movability_value, report_value, verify_report};

/// Doublings of the window after an undecided verdict are capped here.
pub const MAX_RETRIES: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// A path to a complex file or a builtin name.
    pub input: String,
    pub k: usize,
    /// Coefficients; `None` keeps those of the file (builtins default to ℤ).
    pub ring: Option<CoeffRing>,
    /// `None` scans the automatic sample.
    pub directions: Option<Vec<Character>>,
    pub window: Option<i64>,
    pub retries: u32,
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub sigma2_pi1: bool,
}

impl RunConfig {
    pub fn new(input: impl Into<String>) -> Self {
        RunConfig {
            input: input.into(),
            k: 1,
            ring: None,
            directions: None,
            window: None,
            retries: MAX_RETRIES,
            jobs: 1,
            out: None,
            csv: None,
            sigma2_pi1: false,
        }
    }

    fn check(&self, c: &BasedFreeComplex) -> CliResult<()> {
        if matches!(self.window, Some(w) if w <= 0) {
            return Err(CliError::Usage("window must be positive".into()));
        }
        for xi in self.directions.iter().flatten() {
            if xi.rank() != c.deck_rank() {
                return Err(CliError::Usage(format!("direction {xi} has length {}, deck rank is {}", xi.rank(), c.deck_rank())));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout }
    }
}

pub fn parse_ring(s: &str) -> CliResult<CoeffRing> {
    match s {
        "Z" => Ok(CoeffRing::Integers),
        "Q" => Ok(CoeffRing::Rationals),
        _ => match s.strip_prefix('F').and_then(|p| p.parse::<u64>().ok()) {
            Some(p) if p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0) => Ok(CoeffRing::PrimeField(p)),
            _ => Err(CliError::Usage(format!("unknown coefficients {s:?}; use Z, Q or F<prime>"))),
        },
    }
}

/// Loads the input and changes coefficients if asked; returns an id too.
pub fn load(input: &str, ring: Option<CoeffRing>) -> CliResult<(String, BasedFreeComplex)> {
    let path = Path::new(input);
    if path.is_file() {
        let c = from_file(path)?;
        let id = path.file_stem().map_or_else(|| input.to_string(), |s| s.to_string_lossy().into_owned());
        let c = match ring {
            Some(r) if r != c.ring() => c.tensor_coefficients(r)?,
            _ => c,
        };
        return Ok((id, c));
    }
    Ok((input.to_string(), builtin(input, ring.unwrap_or(CoeffRing::Integers))?))
}

/// Runs the decision, doubling the window after each undecided verdict.
pub fn decide_with_retry(c: &BasedFreeComplex, xi: &Character, k: usize, window: Option<i64>, retries: u32) -> CliResult<SigmaVerdict> {
    let mut w = window.unwrap_or_else(|| c.default_window(xi));
    let mut v = sigma_membership(c, xi, k, Some(w))?;
    for _ in 0..retries.min(MAX_RETRIES) {
        if !matches!(v.status, SigmaStatus::Undecided(_)) {
            break;
        }
        w *= 2;
        v = sigma_membership(c, xi, k, Some(w))?;
    }
    Ok(v)
}

fn scan_report(cfg: &RunConfig, id: &str, c: &BasedFreeComplex, dirs: Option<Vec<Character>>) -> CliResult<SigmaReport> {
    let auto = dirs.is_none();
    let dirs = dirs.unwrap_or_else(|| auto_directions(c.deck_rank()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let verdicts = pool.install(|| {
        dirs.par_iter().map(|xi| decide_with_retry(c, xi, cfg.k, cfg.window, cfg.retries)).collect::<CliResult<Vec<_>>>()
    })?;
    let report = assemble_report(id, c, cfg.k, verdicts, auto);
    Ok(promote(&report, &PromotionFlags { sigma2_pi1_asserted: cfg.sigma2_pi1, connectivity: None }))
}

fn emit(out: &Option<PathBuf>, json: &Value, summary: String) -> CliResult<String> {
    match out {
        Some(path) => {
            write_text(path, &to_pretty(json))?;
            Ok(summary)
        }
        None => Ok(to_pretty(json)),
    }
}

fn verdict_line(v: &SigmaVerdict) -> String {
    format!("{} k={} {}: {}\n", v.xi, v.k, v.ring, v.status_name())
}

fn exit_code(report: &SigmaReport) -> i32 {
    if report.any_undecided() {
        2
    } else {
        0
    }
}

pub fn cmd_validate(cfg: &RunConfig) -> CliResult<Outcome> {
    let (id, c) = load(&cfg.input, cfg.ring)?;
    c.validate()?;
    Ok(Outcome::ok(format!("{id}: valid, ranks {:?}, coefficients {}, deck rank {}\n", c.ranks(), c.ring(), c.deck_rank())))
}

pub fn cmd_scan(cfg: &RunConfig) -> CliResult<Outcome> {
    let (id, c) = load(&cfg.input, cfg.ring)?;
    cfg.check(&c)?;
    let report = scan_report(cfg, &id, &c, cfg.directions.clone())?;
    if let Some(path) = &cfg.csv {
        write_csv(path, &report)?;
    }
    let mut summary: String = report.verdicts.iter().map(verdict_line).collect();
    for conc in &report.conclusions {
        summary.push_str(&format!("{}\n", conc.claim));
    }
    let stdout = emit(&cfg.out, &report_value(&report, &c), summary)?;
    Ok(Outcome { code: exit_code(&report), stdout })
}

/// A scan restricted to the given direction(s).
pub fn cmd_decide(cfg: &RunConfig) -> CliResult<Outcome> {
    if cfg.directions.as_ref().map_or(true, Vec::is_empty) {
        return Err(CliError::Usage("decide needs --xi".into()));
    }
    cmd_scan(cfg)
}

pub fn cmd_cat_bound(cfg: &RunConfig) -> CliResult<Outcome> {
    let (id, c) = load(&cfg.input, cfg.ring)?;
    cfg.check(&c)?;
    let xi = match cfg.directions.as_deref() {
        Some([xi]) => xi.clone(),
        _ => return Err(CliError::Usage("cat-bound needs exactly one --xi".into())),
    };
    let report = scan_report(cfg, &id, &c, Some(vec![xi.clone(), xi.negated()]))?;
    let bound = cat_upper_bound(&report, &xi)?;
    let full = with_category_bound(&report, &bound);
    let mut v = report_value(&full, &c);
    v.as_object_mut().expect("object").insert("category_bound".into(), category_bound_value(&bound));
    let mut summary = format!("Cat(X,{xi}) <= {}\n", bound.bound);
    if let Some((b, hyps)) = &bound.conditional {
        summary.push_str(&format!("Cat(X,{xi}) <= {b} if {}\n", hyps.join(", ")));
    }
    let stdout = emit(&cfg.out, &v, summary)?;
    Ok(Outcome { code: exit_code(&full), stdout })
}

/// Which cycle `sigma movable` tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleSpec {
    /// The basis element with this index.
    Basis(usize),
    /// A JSON array of elements, one per basis element of the degree.
    Json(String),
}

pub fn cmd_movable(cfg: &RunConfig, degree: usize, cycle: &CycleSpec) -> CliResult<Outcome> {
    let (_, c) = load(&cfg.input, cfg.ring)?;
    cfg.check(&c)?;
    let xi = match cfg.directions.as_deref() {
        Some([xi]) => xi.clone(),
        _ => return Err(CliError::Usage("movable needs exactly one --xi".into())),
    };
    let n = c.rank(degree);
    let z: Vec<GroupRingElem> = match cycle {
        CycleSpec::Basis(j) if *j < n => {
            (0..n).map(|i| if i == *j { GroupRingElem::one(c.ring(), c.deck_rank()) } else { GroupRingElem::zero(c.ring(), c.deck_rank()) }).collect()
        }
        CycleSpec::Basis(j) => return Err(CliError::Usage(format!("degree {degree} has rank {n}, no basis element {j}"))),
        CycleSpec::Json(s) => {
            let v: Value = serde_json::from_str(s)?;
            let items = v.as_array().ok_or_else(|| CliError::Usage("cycle must be a JSON array".into()))?;
            items.iter().enumerate().map(|(i, e)| parse_elem(e, c.ring(), c.deck_rank(), &format!("cycle[{i}]"))).collect::<CliResult<_>>()?
        }
    };
    let m = movable_to_infinity(&c, degree, &z, &xi)?;
    let mut v = movability_value(&m);
    let (code, line) = match &m {
        Movability::Movable { delta, witness } => {
            let ok = check_movable_witness(&c, degree, &z, &xi, delta, witness)?;
            v.as_object_mut().expect("object").insert("rechecked".into(), json!(ok));
            if !ok {
                return Err(CliError::Verify("movability witness does not satisfy Δ·z = ∂w".into()));
            }
            (0, format!("Movable, delta = {delta}\n"))
        }
        Movability::NotMovable { reason, .. } => (0, format!("NotMovable: {reason}\n")),
        Movability::Undecided { diagnostics } => (2, format!("Undecided: {diagnostics}\n")),
    };
    let stdout = emit(&cfg.out, &v, line)?;
    Ok(Outcome { code, stdout })
}

pub fn cmd_dominate(cfg: &RunConfig) -> CliResult<Outcome> {
    let (_, c) = load(&cfg.input, cfg.ring)?;
    cfg.check(&c)?;
    let mut r = finite_type_reduce(&c, cfg.k, cfg.window)?;
    let text = describe_homology(&r.homology());
    let v = domination_value(&mut r)?;
    let summary = format!("{text}\nD ranks {:?}, radius {}\n", r.d.ranks(), r.radius());
    let stdout = match &cfg.out {
        Some(path) => {
            write_text(path, &to_pretty(&v))?;
            summary
        }
        None => format!("{summary}{}", to_pretty(&v)),
    };
    Ok(Outcome::ok(stdout))
}

/// Lists the builtins, or writes each as `<name>.json` into `dir`.
pub fn cmd_examples(dir: Option<&Path>) -> CliResult<Outcome> {
    let mut out = String::new();
    for name in BUILTIN_NAMES {
        let c = builtin(name, CoeffRing::Integers)?;
        match dir {
            Some(d) => {
                let path = d.join(format!("{name}.json"));
                to_file(&c, &path)?;
                out.push_str(&format!("{}\n", path.display()));
            }
            None => out.push_str(&format!("{name}: ranks {:?}, deck rank {}\n", c.ranks(), c.deck_rank())),
        }
    }
    Ok(Outcome::ok(out))
}

pub fn cmd_verify(report: &Path) -> CliResult<Outcome> {
    let v: Value = serde_json::from_str(&read_text(report)?)?;
    let checks = verify_report(&v)?;
    let mut out = String::new();
    let mut failed = 0;
    for c in &checks {
        out.push_str(&format!("verdict {} ({}): {} {}\n", c.index, c.status, if c.ok { "ok" } else { "FAILED" }, c.detail));
        failed += usize::from(!c.ok);
    }
    if failed > 0 {
        return Err(CliError::Verify(format!("{failed} of {} verdicts failed\n{out}", checks.len())));
    }
    Ok(Outcome::ok(out))
}

/// The canonical text of a loaded complex, as `sigma validate --print` shows it.
pub fn canonical_text(input: &str, ring: Option<CoeffRing>) -> CliResult<String> {
    Ok(complex_to_string(&load(input, ring)?.1))
}
