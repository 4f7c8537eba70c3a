//! Scans over directions and the conclusions drawn from their verdicts.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::BasedFreeComplex;
use crate::decide::{sigma_membership, SigmaStatus, SigmaVerdict};
use crate::error::{Error, Result};
use crate::lattice::Character;
use crate::ring::CoeffRing;

/// Rule names cited in provenance chains.
pub mod rules {
    /// Σ^k membership as vanishing of Novikov homology in degrees ≤ k.
    pub const NOVIKOV_VANISHING: &str = "novikov-vanishing";
    pub const SIGMA1_EQUALITY: &str = "sigma1-homological-equals-homotopical";
    pub const HUREWICZ: &str = "hurewicz-promotion";
    pub const USER_ASSERTION: &str = "user-assertion";
    pub const CATEGORY_BOUND: &str = "category-bound";
    pub const FINITE_TYPE: &str = "finite-type-criterion";
    pub const MONOTONICITY: &str = "monotonicity";
    pub const DIMENSION_CLAMP: &str = "dimension-clamp";
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    InSigma { xi: Character, k: usize, ring: CoeffRing },
    NotInSigma { xi: Character, k: usize, ring: CoeffRing },
    InSigmaHomotopical { xi: Character, k: usize },
    /// The cover's chain complex is of finite type through degree k.
    CoverFiniteType { k: usize, ring: CoeffRing, homotopical: bool, sample_only: bool },
    CoverNotFiniteType { k: usize, ring: CoeffRing },
    CategoryBound { xi: Character, bound: usize, conditional: bool },
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::InSigma { xi, k, ring } => write!(f, "{xi} in Sigma^{k}(X;{ring})"),
            Claim::NotInSigma { xi, k, ring } => write!(f, "{xi} not in Sigma^{k}(X;{ring})"),
            Claim::InSigmaHomotopical { xi, k } => write!(f, "{xi} in Sigma^{k}(X)"),
            Claim::CoverFiniteType { k, ring, homotopical, sample_only } => {
                if *homotopical {
                    write!(f, "cover is homotopy equivalent to a complex with finite {k}-skeleton")?;
                } else {
                    write!(f, "cover chain complex over {ring} is of finite type through degree {k}")?;
                }
                if *sample_only {
                    write!(f, " (on the sampled directions only)")?;
                }
                Ok(())
            }
            Claim::CoverNotFiniteType { k, ring } => {
                write!(f, "cover is NOT of finite type through degree {k} (coefficients {ring})")
            }
            Claim::CategoryBound { xi, bound, conditional } => {
                write!(f, "Cat(X,{xi}) <= {bound}")?;
                if *conditional {
                    write!(f, " (conditional)")?;
                }
                Ok(())
            }
        }
    }
}

/// A derived statement with the verdicts and rules it rests on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conclusion {
    pub claim: Claim,
    pub rules: Vec<String>,
    pub hypotheses: Vec<String>,
    pub verdicts: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PromotionFlags {
    pub sigma2_pi1_asserted: bool,
    /// Recorded as a hypothesis; it does not change any conclusion.
    pub connectivity: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub complex_id: String,
    pub dim: usize,
    pub deck_rank: usize,
    pub ring: CoeffRing,
    pub k: usize,
    pub sample_only: bool,
    pub verdicts: Vec<SigmaVerdict>,
    pub conclusions: Vec<Conclusion>,
    pub hypotheses: Vec<String>,
}

impl SigmaReport {
    pub fn verdicts_for(&self, xi: &Character) -> impl Iterator<Item = (usize, &SigmaVerdict)> {
        let xi = xi.clone();
        self.verdicts.iter().enumerate().filter(move |(_, v)| v.xi == xi)
    }

    fn push(&mut self, c: Conclusion) {
        if !self.conclusions.iter().any(|d| d.claim == c.claim) {
            self.conclusions.push(c);
        }
    }

    pub fn any_undecided(&self) -> bool {
        self.verdicts.iter().any(|v| matches!(v.status, SigmaStatus::Undecided(_)))
    }
}

/// The automatic sample: `{+1, −1}` in rank one, otherwise every primitive
/// vector with entries in `[−2, 2]`.
pub fn auto_directions(deck_rank: usize) -> Vec<Character> {
    if deck_rank == 1 {
        return vec![Character::from_ints(&[1]).unwrap(), Character::from_ints(&[-1]).unwrap()];
    }
    let mut out: Vec<Character> = Vec::new();
    let total = 5usize.pow(deck_rank as u32);
    for code in 0..total {
        let mut v = Vec::with_capacity(deck_rank);
        let mut x = code;
        for _ in 0..deck_rank {
            v.push((x % 5) as i64 - 2);
            x /= 5;
        }
        if let Ok(ch) = Character::from_ints(&v) {
            if ch.coeffs() == v.as_slice() && !out.contains(&ch) {
                out.push(ch);
            }
        }
    }
    out
}

fn k_eff(v: &SigmaVerdict, dim: usize) -> usize {
    v.k.min(dim)
}

fn base_rules(v: &SigmaVerdict, dim: usize) -> Vec<String> {
    let mut r = vec![rules::NOVIKOV_VANISHING.to_string()];
    if v.k > dim {
        r.push(rules::DIMENSION_CLAMP.to_string());
    }
    r
}

/// Builds the report for verdicts computed on `directions` (which must be
/// the full scan for the finite-type conclusion to be drawn).
pub fn assemble_report(id: &str, c: &BasedFreeComplex, k: usize, verdicts: Vec<SigmaVerdict>, auto_sample: bool) -> SigmaReport {
    let dim = c.dim();
    let mut report = SigmaReport {
        complex_id: id.to_string(),
        dim,
        deck_rank: c.deck_rank(),
        ring: c.ring(),
        k,
        sample_only: c.deck_rank() > 1 || !auto_sample,
        verdicts,
        conclusions: Vec::new(),
        hypotheses: Vec::new(),
    };
    let verdicts = report.verdicts.clone();
    for (i, v) in verdicts.iter().enumerate() {
        let ke = k_eff(v, dim);
        let claim = match v.status {
            SigmaStatus::Yes(_) => Claim::InSigma { xi: v.xi.clone(), k: ke, ring: v.ring },
            SigmaStatus::No(_) => Claim::NotInSigma { xi: v.xi.clone(), k: ke, ring: v.ring },
            SigmaStatus::Undecided(_) => continue,
        };
        report.push(Conclusion { claim, rules: base_rules(v, dim), hypotheses: Vec::new(), verdicts: vec![i] });
    }
    if let Some((i, v)) = verdicts.iter().enumerate().find(|(_, v)| v.is_no()) {
        report.push(Conclusion {
            claim: Claim::CoverNotFiniteType { k: k_eff(v, dim), ring: v.ring },
            rules: vec![rules::NOVIKOV_VANISHING.to_string(), rules::FINITE_TYPE.to_string()],
            hypotheses: Vec::new(),
            verdicts: vec![i],
        });
    } else if !verdicts.is_empty() && verdicts.iter().all(SigmaVerdict::is_yes) && auto_sample {
        let ke = verdicts.iter().map(|v| k_eff(v, dim)).min().unwrap_or(0);
        let homotopical = ke <= 1 && c.ring() == CoeffRing::Integers;
        let mut r = vec![rules::NOVIKOV_VANISHING.to_string(), rules::FINITE_TYPE.to_string()];
        if homotopical {
            r.push(rules::SIGMA1_EQUALITY.to_string());
        }
        report.push(Conclusion {
            claim: Claim::CoverFiniteType { k: ke, ring: c.ring(), homotopical, sample_only: c.deck_rank() > 1 },
            rules: r,
            hypotheses: Vec::new(),
            verdicts: (0..verdicts.len()).collect(),
        });
    }
    report
}

/// Runs the decision on every direction (sequentially) and assembles the
/// report. `None` uses the automatic sample.
pub fn sphere_scan(id: &str, c: &BasedFreeComplex, k: usize, directions: Option<Vec<Character>>, window: Option<i64>) -> Result<SigmaReport> {
    let auto = directions.is_none();
    let dirs = directions.unwrap_or_else(|| auto_directions(c.deck_rank()));
    if dirs.is_empty() {
        return Err(Error::InvalidCoefficient("empty direction list".into()));
    }
    let verdicts = dirs.iter().map(|xi| sigma_membership(c, xi, k, window)).collect::<Result<Vec<_>>>()?;
    Ok(assemble_report(id, c, k, verdicts, auto))
}

/// Adds homotopical conclusions licensed by the verdicts and the flags.
pub fn promote(report: &SigmaReport, flags: &PromotionFlags) -> SigmaReport {
    let mut out = report.clone();
    if flags.sigma2_pi1_asserted {
        out.hypotheses.push("user asserts xi in Sigma^2(pi_1 X) for the promoted directions".into());
    }
    if let Some(c) = flags.connectivity {
        out.hypotheses.push(format!("user states connectivity {c} (recorded only)"));
    }
    for (i, v) in report.verdicts.iter().enumerate() {
        if !v.is_yes() || v.ring != CoeffRing::Integers {
            continue;
        }
        let ke = k_eff(v, report.dim);
        if ke >= 1 {
            let mut r = vec![rules::NOVIKOV_VANISHING.to_string(), rules::SIGMA1_EQUALITY.to_string()];
            if ke > 1 {
                r.push(rules::MONOTONICITY.to_string());
            }
            out.push(Conclusion { claim: Claim::InSigmaHomotopical { xi: v.xi.clone(), k: 1 }, rules: r, hypotheses: Vec::new(), verdicts: vec![i] });
        }
        if ke >= 2 && flags.sigma2_pi1_asserted {
            out.push(Conclusion {
                claim: Claim::InSigmaHomotopical { xi: v.xi.clone(), k: ke },
                rules: vec![rules::NOVIKOV_VANISHING.to_string(), rules::HUREWICZ.to_string(), rules::USER_ASSERTION.to_string()],
                hypotheses: vec![format!("{} in Sigma^2(pi_1 X)", v.xi)],
                verdicts: vec![i],
            });
        }
    }
    out
}

/// Upper bound for Cat(X, ξ) from what the report knows about −ξ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryBound {
    pub xi: Character,
    pub bound: usize,
    /// A sharper bound valid under the listed hypotheses.
    pub conditional: Option<(usize, Vec<String>)>,
    pub note: Option<String>,
    pub conclusion: Conclusion,
}

pub fn cat_upper_bound(report: &SigmaReport, xi: &Character) -> Result<CategoryBound> {
    let minus = xi.negated();
    let found: Vec<(usize, &SigmaVerdict)> = report.verdicts_for(&minus).collect();
    if found.is_empty() {
        return Err(Error::MissingDirection(minus));
    }
    let n = report.dim;
    let homotopical = report
        .conclusions
        .iter()
        .filter_map(|c| match &c.claim {
            Claim::InSigmaHomotopical { xi: x, k } if *x == minus => Some((*k, c.verdicts.clone())),
            _ => None,
        })
        .max_by_key(|(k, _)| *k);
    let integral_yes = found.iter().filter(|(_, v)| v.is_yes() && v.ring == CoeffRing::Integers).max_by_key(|(_, v)| k_eff(v, n));
    let (kstar, cited, mut rule_list) = match (&homotopical, integral_yes) {
        (Some((k, cited)), _) => (*k, cited.clone(), vec![rules::CATEGORY_BOUND.to_string()]),
        (None, Some((i, v))) if k_eff(v, n) >= 1 => {
            (1, vec![*i], vec![rules::SIGMA1_EQUALITY.to_string(), rules::CATEGORY_BOUND.to_string()])
        }
        _ => (0, found.iter().map(|(i, _)| *i).collect(), vec![rules::CATEGORY_BOUND.to_string()]),
    };
    let note = (kstar == 0).then(|| format!("{minus} is not known to lie in Sigma^1(X); only the trivial bound dim X = {n} applies"));
    let conditional = integral_yes.and_then(|(_, v)| {
        let ke = k_eff(v, n);
        (ke > kstar && ke >= 2).then(|| (n - ke, vec![format!("{minus} in Sigma^2(pi_1 X)")]))
    });
    if kstar >= 1 {
        rule_list.insert(0, rules::NOVIKOV_VANISHING.to_string());
    }
    let bound = n - kstar.min(n);
    let conclusion = Conclusion {
        claim: Claim::CategoryBound { xi: xi.clone(), bound, conditional: false },
        rules: rule_list,
        hypotheses: Vec::new(),
        verdicts: cited,
    };
    Ok(CategoryBound { xi: xi.clone(), bound, conditional, note, conclusion })
}

/// Appends the bound (and its conditional refinement) to the report.
pub fn with_category_bound(report: &SigmaReport, b: &CategoryBound) -> SigmaReport {
    let mut out = report.clone();
    out.push(b.conclusion.clone());
    if let Some((bound, hyps)) = &b.conditional {
        out.push(Conclusion {
            claim: Claim::CategoryBound { xi: b.xi.clone(), bound: *bound, conditional: true },
            rules: vec![rules::NOVIKOV_VANISHING.to_string(), rules::HUREWICZ.to_string(), rules::CATEGORY_BOUND.to_string()],
            hypotheses: hyps.clone(),
            verdicts: b.conclusion.verdicts.clone(),
        });
    }
    out
}
