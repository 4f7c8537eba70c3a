//! JSON encodings of verdicts, certificates, witnesses, reports and
//! domination results, and the independent re-check behind `sigma verify`.

use serde_json::{json, Map, Value};
use sigma_core::certificate::{verify_certificate, SigmaCertificate};
use sigma_core::chain::{ChainHomotopy, ChainMap};
use sigma_core::complex::BasedFreeComplex;
use sigma_core::decide::{NoWitness, SigmaStatus, SigmaVerdict};
use sigma_core::domination::{describe_homology, Cell, DominationResult};
use sigma_core::movable::{movable_to_infinity, Movability};
use sigma_core::report::{CategoryBound, Claim, Conclusion, SigmaReport};
use sigma_core::smith::AbelianGroup;
use sigma_core::specialize::{verify_witness, Specialization, SpecializationWitness, WitnessCycle};
use sigma_core::{Character, CoeffRing, InnerProduct};

use crate::error::{schema, CliError, CliResult};
use crate::format::{
    character_value, complex_value, elem_value, int_value, matrix_value, parse_complex, parse_elem, parse_matrix, parse_scalar, scalar_value,
};

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut o = Map::new();
    for (k, v) in pairs {
        o.insert(k.to_string(), v);
    }
    Value::Object(o)
}

fn get<'a>(v: &'a Value, key: &str, at: &str) -> CliResult<&'a Value> {
    v.get(key).ok_or_else(|| CliError::Schema(format!("{at}: missing field {key:?}")))
}

fn get_usize(v: &Value, key: &str, at: &str) -> CliResult<usize> {
    get(v, key, at)?.as_u64().map(|x| x as usize).ok_or_else(|| CliError::Schema(format!("{at}.{key}: expected an integer")))
}

fn get_array<'a>(v: &'a Value, key: &str, at: &str) -> CliResult<&'a Vec<Value>> {
    get(v, key, at)?.as_array().ok_or_else(|| CliError::Schema(format!("{at}.{key}: expected an array")))
}

pub fn ring_name(ring: CoeffRing) -> String {
    ring.to_string()
}

/// The character with its metric when it is not the standard one.
pub fn direction_value(xi: &Character) -> Value {
    if xi.metric().is_identity() {
        character_value(xi)
    } else {
        obj(vec![("coeffs", character_value(xi)), ("gram", Value::Array(xi.metric().gram().iter().map(scalar_value).collect()))])
    }
}

pub fn parse_direction_value(v: &Value, at: &str) -> CliResult<Character> {
    let (coeffs, gram) = match v {
        Value::Array(_) => (v, None),
        _ => (get(v, "coeffs", at)?, Some(get_array(v, "gram", at)?)),
    };
    let coeffs = coeffs
        .as_array()
        .ok_or_else(|| CliError::Schema(format!("{at}: expected an array")))?
        .iter()
        .map(|c| parse_scalar(c, at))
        .collect::<CliResult<Vec<_>>>()?;
    let metric = match gram {
        None => InnerProduct::identity(coeffs.len()),
        Some(g) => InnerProduct::from_gram(coeffs.len(), g.iter().map(|x| parse_scalar(x, at)).collect::<CliResult<_>>()?)?,
    };
    Ok(Character::with_metric(&coeffs, metric)?)
}

pub fn certificate_value(cert: &SigmaCertificate) -> Value {
    obj(vec![
        ("xi", direction_value(cert.xi())),
        ("k", json!(cert.k())),
        ("epsilon", scalar_value(cert.epsilon())),
        ("map", Value::Array(cert.map().maps.iter().map(matrix_value).collect())),
        ("homotopy", Value::Array(cert.homotopy().maps.iter().map(matrix_value).collect())),
    ])
}

pub fn parse_certificate(v: &Value, ring: CoeffRing, rank: usize, at: &str) -> CliResult<SigmaCertificate> {
    let xi = parse_direction_value(get(v, "xi", at)?, &format!("{at}.xi"))?;
    let k = get_usize(v, "k", at)?;
    let epsilon = parse_scalar(get(v, "epsilon", at)?, &format!("{at}.epsilon"))?;
    let mats = |key: &str| -> CliResult<Vec<_>> {
        get_array(v, key, at)?
            .iter()
            .enumerate()
            .map(|(i, m)| parse_matrix(m, ring, rank, &format!("{at}.{key}[{i}]")))
            .collect()
    };
    let a = ChainMap { maps: mats("map")? };
    let delta = ChainHomotopy { maps: mats("homotopy")? };
    Ok(SigmaCertificate::new(xi, k, epsilon, a, delta)?)
}

fn specialization_value(s: &Specialization) -> Value {
    match s {
        Specialization::FractionField => obj(vec![("map", json!("fraction-field"))]),
        Specialization::ModP(p) => obj(vec![("map", json!("mod-p")), ("p", json!(p))]),
        Specialization::Evaluate(a) => obj(vec![("map", json!("evaluate")), ("at", scalar_value(a))]),
    }
}

fn parse_specialization(v: &Value, at: &str) -> CliResult<Specialization> {
    match get(v, "map", at)?.as_str() {
        Some("fraction-field") => Ok(Specialization::FractionField),
        Some("mod-p") => Ok(Specialization::ModP(get(v, "p", at)?.as_u64().ok_or_else(|| CliError::Schema(format!("{at}.p")))?)),
        Some("evaluate") => Ok(Specialization::Evaluate(parse_scalar(get(v, "at", at)?, at)?)),
        _ => schema(format!("{at}.map: unknown specialization")),
    }
}

pub fn witness_value(w: &NoWitness) -> Value {
    match w {
        NoWitness::SurvivingCycle { degree, cycle } => obj(vec![
            ("kind", json!("surviving-cycle")),
            ("degree", json!(degree)),
            ("cycle", Value::Array(cycle.iter().map(elem_value).collect())),
        ]),
        NoWitness::Specialized(s) => {
            let cycle = match &s.cycle {
                WitnessCycle::Laurent(z) => obj(vec![("laurent", Value::Array(z.iter().map(elem_value).collect()))]),
                WitnessCycle::Rational(z) => obj(vec![("rational", Value::Array(z.iter().map(scalar_value).collect()))]),
            };
            obj(vec![
                ("kind", json!("specialization")),
                ("degree", json!(s.degree)),
                ("target", specialization_value(&s.target)),
                ("cycle", cycle),
            ])
        }
    }
}

pub fn parse_witness(v: &Value, ring: CoeffRing, rank: usize, at: &str) -> CliResult<NoWitness> {
    let degree = get_usize(v, "degree", at)?;
    let elems = |a: &Vec<Value>, r: CoeffRing| -> CliResult<Vec<_>> {
        a.iter().enumerate().map(|(i, e)| parse_elem(e, r, rank, &format!("{at}.cycle[{i}]"))).collect()
    };
    match get(v, "kind", at)?.as_str() {
        Some("surviving-cycle") => Ok(NoWitness::SurvivingCycle { degree, cycle: elems(get_array(v, "cycle", at)?, ring)? }),
        Some("specialization") => {
            let target = parse_specialization(get(v, "target", at)?, &format!("{at}.target"))?;
            let c = get(v, "cycle", at)?;
            let cycle = if let Some(z) = c.get("laurent").and_then(Value::as_array) {
                let r = match target {
                    Specialization::ModP(p) => CoeffRing::PrimeField(p),
                    _ => CoeffRing::Rationals,
                };
                WitnessCycle::Laurent(elems(z, r)?)
            } else if let Some(z) = c.get("rational").and_then(Value::as_array) {
                WitnessCycle::Rational(z.iter().map(|x| parse_scalar(x, at)).collect::<CliResult<_>>()?)
            } else {
                return schema(format!("{at}.cycle: expected \"laurent\" or \"rational\""));
            };
            Ok(NoWitness::Specialized(SpecializationWitness { degree, target, cycle }))
        }
        _ => schema(format!("{at}.kind: unknown witness kind")),
    }
}

pub fn verdict_value(v: &SigmaVerdict) -> Value {
    let mut pairs = vec![
        ("xi", direction_value(&v.xi)),
        ("k", json!(v.k)),
        ("ring", json!(ring_name(v.ring))),
        ("status", json!(v.status_name())),
    ];
    match &v.status {
        SigmaStatus::Yes(cert) => pairs.push(("certificate", certificate_value(cert))),
        SigmaStatus::No(w) => pairs.push(("witness", witness_value(w))),
        SigmaStatus::Undecided(u) => {
            pairs.push(("window", json!(u.window)));
            pairs.push(("diagnostics", json!(u.diagnostics)));
        }
    }
    obj(pairs)
}

fn claim_value(c: &Claim) -> Value {
    let (kind, mut pairs) = match c {
        Claim::InSigma { xi, k, ring } => {
            ("in-sigma", vec![("xi", direction_value(xi)), ("k", json!(k)), ("ring", json!(ring_name(*ring)))])
        }
        Claim::NotInSigma { xi, k, ring } => {
            ("not-in-sigma", vec![("xi", direction_value(xi)), ("k", json!(k)), ("ring", json!(ring_name(*ring)))])
        }
        Claim::InSigmaHomotopical { xi, k } => ("in-sigma-homotopical", vec![("xi", direction_value(xi)), ("k", json!(k))]),
        Claim::CoverFiniteType { k, ring, homotopical, sample_only } => (
            "cover-finite-type",
            vec![
                ("k", json!(k)),
                ("ring", json!(ring_name(*ring))),
                ("homotopical", json!(homotopical)),
                ("sample_only", json!(sample_only)),
            ],
        ),
        Claim::CoverNotFiniteType { k, ring } => {
            ("cover-not-finite-type", vec![("k", json!(k)), ("ring", json!(ring_name(*ring)))])
        }
        Claim::CategoryBound { xi, bound, conditional } => (
            "category-bound",
            vec![("xi", direction_value(xi)), ("bound", json!(bound)), ("conditional", json!(conditional))],
        ),
    };
    pairs.insert(0, ("kind", json!(kind)));
    obj(pairs)
}

pub fn conclusion_value(c: &Conclusion) -> Value {
    obj(vec![
        ("statement", json!(c.claim.to_string())),
        ("claim", claim_value(&c.claim)),
        ("rules", json!(c.rules)),
        ("hypotheses", json!(c.hypotheses)),
        ("verdicts", json!(c.verdicts)),
    ])
}

/// The whole report, with the complex embedded so it can be re-checked.
pub fn report_value(r: &SigmaReport, c: &BasedFreeComplex) -> Value {
    obj(vec![
        ("complex_id", json!(r.complex_id)),
        ("dim", json!(r.dim)),
        ("deck_rank", json!(r.deck_rank)),
        ("ring", json!(ring_name(r.ring))),
        ("k", json!(r.k)),
        ("sample_only", json!(r.sample_only)),
        ("complex", complex_value(c)),
        ("verdicts", Value::Array(r.verdicts.iter().map(verdict_value).collect())),
        ("conclusions", Value::Array(r.conclusions.iter().map(conclusion_value).collect())),
        ("hypotheses", json!(r.hypotheses)),
    ])
}

pub fn category_bound_value(b: &CategoryBound) -> Value {
    let conditional = match &b.conditional {
        Some((bound, hyps)) => obj(vec![("bound", json!(bound)), ("hypotheses", json!(hyps))]),
        None => Value::Null,
    };
    obj(vec![
        ("xi", direction_value(&b.xi)),
        ("bound", json!(b.bound)),
        ("conditional", conditional),
        ("note", b.note.as_ref().map_or(Value::Null, |n| json!(n))),
        ("conclusion", conclusion_value(&b.conclusion)),
    ])
}

pub fn movability_value(m: &Movability) -> Value {
    match m {
        Movability::Movable { delta, witness } => obj(vec![
            ("status", json!("Movable")),
            ("delta", elem_value(delta)),
            ("witness", Value::Array(witness.iter().map(elem_value).collect())),
        ]),
        Movability::NotMovable { reason, specialization } => obj(vec![
            ("status", json!("NotMovable")),
            ("reason", json!(reason)),
            ("specialization", specialization.as_ref().map_or(Value::Null, specialization_value)),
        ]),
        Movability::Undecided { diagnostics } => obj(vec![("status", json!("Undecided")), ("diagnostics", json!(diagnostics))]),
    }
}

fn group_value(g: &AbelianGroup) -> Value {
    obj(vec![("free_rank", json!(g.free_rank)), ("torsion", Value::Array(g.torsion.iter().map(int_value).collect()))])
}

fn chain_value(z: &sigma_core::domination::CoverChain) -> Value {
    Value::Array(z.terms().iter().map(|((q, j), c)| json!([q, j, int_value(c)])).collect())
}

/// `D` in the complex format, followed by the maps on the basis cells of
/// `C` (position 0), the constants and the extent of the exhaustive checks.
pub fn domination_value(r: &mut DominationResult) -> CliResult<Value> {
    let mut v = complex_value(&r.d);
    let o = v.as_object_mut().expect("complex is an object");
    let a: Vec<Value> = (0..r.model.cells.len())
        .map(|s| Value::Array(r.model.cells[s].iter().map(|&(q, j)| json!([q, j])).collect()))
        .collect();
    let top = r.model.top;
    let mut b = Vec::new();
    let mut phi = Vec::new();
    for s in 0..=top {
        let cells: Vec<Cell> = (0..r.reducer.cover().rank(s)).map(|j| (0, j)).collect();
        let mut bs = Vec::new();
        let mut ps = Vec::new();
        for cell in cells {
            bs.push(Value::Array(r.b(s, cell)?.iter().map(int_value).collect()));
            ps.push(chain_value(&r.homotopy(s, cell)));
        }
        b.push(Value::Array(bs));
        phi.push(Value::Array(ps));
    }
    let k = &r.constants;
    o.insert(
        "domination".into(),
        obj(vec![
            ("n", json!(r.n)),
            ("truncated", json!(r.truncated)),
            ("homology", Value::Array(r.homology().iter().map(group_value).collect())),
            ("homology_text", json!(describe_homology(&r.homology()))),
            ("a", Value::Array(a)),
            ("b_on_basis", Value::Array(b)),
            ("homotopy_on_basis", Value::Array(phi)),
            (
                "constants",
                obj(vec![
                    ("r", json!(r.atlas_r)),
                    ("m", json!(r.atlas_m)),
                    ("l", json!(r.atlas_l)),
                    ("push_r", scalar_value(&k.r)),
                    ("push_m", scalar_value(&k.m)),
                    ("a", scalar_value(&k.a)),
                    ("l_prime", scalar_value(&k.l_prime)),
                    ("radius", scalar_value(&r.radius())),
                ]),
            ),
            (
                "iterations",
                Value::Array(r.iterations.iter().map(|(xi, m)| obj(vec![("xi", direction_value(xi)), ("iterations", json!(m))])).collect()),
            ),
            (
                "checks",
                obj(vec![
                    ("working_radius", json!(r.checks.working_radius)),
                    ("push_cells", json!(r.checks.push_cells)),
                    ("reducer_cells", json!(r.checks.reducer_cells)),
                    ("starstar_cells", json!(r.checks.starstar_cells)),
                    ("domination_cells", json!(r.checks.domination_cells)),
                ]),
            ),
        ]),
    );
    Ok(v)
}

/// Outcome of re-checking one verdict of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recheck {
    pub index: usize,
    pub status: String,
    pub ok: bool,
    pub detail: String,
}

/// Re-checks every Yes certificate with the exact verifier and every No
/// witness against the embedded complex.
pub fn verify_report(v: &Value) -> CliResult<Vec<Recheck>> {
    let c = parse_complex(get(v, "complex", "report")?)?;
    let mut out = Vec::new();
    for (i, verdict) in get_array(v, "verdicts", "report")?.iter().enumerate() {
        let at = format!("verdicts[{i}]");
        let status = get(verdict, "status", &at)?.as_str().unwrap_or_default().to_string();
        let xi = parse_direction_value(get(verdict, "xi", &at)?, &at)?;
        let k = get_usize(verdict, "k", &at)?;
        let ring = match get(verdict, "ring", &at)?.as_str() {
            Some(r) if r == ring_name(c.ring()) => c.ring(),
            Some("Q") => CoeffRing::Rationals,
            Some("Z") => CoeffRing::Integers,
            Some(r) if r.starts_with('F') => CoeffRing::PrimeField(r[1..].parse().map_err(|_| CliError::Schema(format!("{at}.ring")))?),
            _ => return schema(format!("{at}.ring")),
        };
        let cv = if ring == c.ring() { c.clone() } else { c.tensor_coefficients(ring)? };
        let (ok, detail) = match status.as_str() {
            "Yes" => {
                let cert = parse_certificate(get(verdict, "certificate", &at)?, ring, c.deck_rank(), &format!("{at}.certificate"))?;
                if cert.xi() != &xi || cert.k() < k.min(cv.dim()) {
                    (false, "certificate is for another direction or degree".to_string())
                } else {
                    match verify_certificate(&cv, &cert) {
                        Ok(()) => (true, "certificate verified".to_string()),
                        Err(e) => (false, e.to_string()),
                    }
                }
            }
            "No" => match parse_witness(get(verdict, "witness", &at)?, ring, c.deck_rank(), &format!("{at}.witness"))? {
                NoWitness::Specialized(w) => {
                    let ok = verify_witness(&cv, &xi, k, &w)?;
                    (ok, if ok { "specialization witness verified" } else { "specialization witness rejected" }.to_string())
                }
                NoWitness::SurvivingCycle { degree, cycle } => {
                    let ok = degree <= k && matches!(movable_to_infinity(&cv, degree, &cycle, &xi)?, Movability::NotMovable { .. });
                    (ok, if ok { "cycle survives the localization" } else { "cycle does not survive" }.to_string())
                }
            },
            _ => (true, "nothing to check".to_string()),
        };
        out.push(Recheck { index: i, status, ok, detail });
    }
    Ok(out)
}
