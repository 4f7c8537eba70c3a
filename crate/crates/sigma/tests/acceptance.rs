//! Acceptance suite: one PASS/FAIL line per criterion, with its time limit.
//!
//! Runs without the libtest harness so the lines always print.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sigma_cli::run::{cmd_scan, RunConfig};
use sigma_core::builders::{builtin, random_complex, RandomShape, BUILTIN_NAMES};
use sigma_core::certificate::{reverify_at, verify_certificate};
use sigma_core::complex::BasedFreeComplex;
use sigma_core::decide::{sigma_membership, NoWitness, SigmaStatus};
use sigma_core::domination::{finite_type_reduce, random_total_input, total_complex_assemble, two_term_resolution};
use sigma_core::movable::{check_movable_witness, movable_to_infinity, Movability};
use sigma_core::report::{auto_directions, cat_upper_bound, sphere_scan, Claim};
use sigma_core::smith::homology_lambda;
use sigma_core::specialize::verify_witness;
use sigma_core::{Character, CoeffRing, GroupRingElem, Scalar};

type Check = Result<String, String>;

fn source(seed: u64) -> impl FnMut(u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    move |n| rng.gen_range(0..n)
}

fn dir(v: &[i64]) -> Character {
    Character::from_ints(v).unwrap()
}

fn z(name: &str) -> BasedFreeComplex {
    builtin(name, CoeffRing::Integers).unwrap()
}

fn q(name: &str) -> BasedFreeComplex {
    builtin(name, CoeffRing::Rationals).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn status(c: &BasedFreeComplex, xi: &Character, k: usize) -> Result<&'static str, String> {
    let v = sigma_membership(c, xi, k, None).map_err(|e| e.to_string())?;
    if let Some(cert) = v.certificate() {
        verify_certificate(c, cert).map_err(|e| format!("{xi} k={k}: {e}"))?;
    }
    Ok(v.status_name())
}

fn structural() -> Check {
    for name in BUILTIN_NAMES {
        z(name).validate().map_err(|e| format!("{name}: {e}"))?;
    }
    for seed in 0..200u64 {
        let deck = 1 + (seed % 2) as usize;
        let shape = RandomShape { max_rank: 4, ..RandomShape::small(deck) };
        let c = random_complex(&mut source(seed), CoeffRing::Integers, &shape);
        ensure(c.dim() <= 3 && c.ranks().iter().all(|&r| r <= 4), format!("seed {seed}: shape out of range"))?;
        c.validate().map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok(format!("{} builtins, 200 fuzzed", BUILTIN_NAMES.len()))
}

fn circle() -> Check {
    let c = z("circle");
    for xi in [dir(&[1]), dir(&[-1])] {
        ensure(status(&c, &xi, 1)? == "Yes", format!("{xi} is not Yes"))?;
    }
    let report = sphere_scan("circle", &c, 1, None, None).map_err(|e| e.to_string())?;
    let bound = cat_upper_bound(&report, &dir(&[1])).map_err(|e| e.to_string())?;
    ensure(bound.bound == 0, format!("Cat bound {}", bound.bound))?;
    Ok("both directions Yes, Cat <= 0".into())
}

fn bs12() -> Check {
    let c = z("bs12");
    for k in 1..=2 {
        ensure(status(&c, &dir(&[-1]), k)? == "Yes", format!("-xi not Yes at k = {k}"))?;
    }
    let plus = sigma_membership(&c, &dir(&[1]), 1, None).map_err(|e| e.to_string())?;
    match &plus.status {
        SigmaStatus::No(NoWitness::Specialized(w)) => {
            ensure(verify_witness(&c, &plus.xi, 1, w).map_err(|e| e.to_string())?, "witness does not re-verify")?
        }
        other => return Err(format!("+xi over Z: {other:?}")),
    }
    let cq = q("bs12");
    for xi in [dir(&[1]), dir(&[-1])] {
        ensure(status(&cq, &xi, 1)? == "Yes", format!("{xi} over Q is not Yes"))?;
    }
    let report = sphere_scan("bs12", &c, 1, None, None).map_err(|e| e.to_string())?;
    ensure(
        report.conclusions.iter().any(|d| matches!(d.claim, Claim::CoverNotFiniteType { .. })),
        "scan does not conclude the cover is not of finite type",
    )?;
    Ok("-xi Yes k<=2, +xi No (witness rechecked), Q both Yes, cover not finite type".into())
}

fn trefoil() -> Check {
    let h = homology_lambda(&q("trefoil")).map_err(|e| e.to_string())?;
    let alexander = GroupRingElem::laurent(CoeffRing::Rationals, 0, &[1, -1, 1]);
    ensure(h[1].free_rank == 0 && h[1].torsion == vec![alexander.clone()], format!("H1 = {:?}", h[1]))?;
    let c = z("trefoil");
    for k in 1..=2 {
        for xi in [dir(&[1]), dir(&[-1])] {
            ensure(status(&c, &xi, k)? == "Yes", format!("{xi} not Yes at k = {k}"))?;
        }
    }
    let r = finite_type_reduce(&c, 2, None).map_err(|e| e.to_string())?;
    let hd = r.homology();
    // Z[t, 1/t]/(t^2 - t + 1) is free abelian on 1, t.
    let span = sigma_core::laurent::span(&alexander) as usize;
    ensure(hd[0].free_rank == 1 && hd[0].torsion.is_empty(), format!("H0(D) = {:?}", hd[0]))?;
    ensure(hd[1].free_rank == span && hd[1].torsion.is_empty(), format!("H1(D) = {:?}", hd[1]))?;
    ensure(r.checks.domination_cells > 0, "ab ~ id was not checked")?;
    Ok(format!("H1 = Lambda/(t^2-t+1), H0(D)=Z, H1(D)=Z^{span}, ab~id on {} cells", r.checks.domination_cells))
}

fn identities() -> Check {
    let e = two_term_resolution(CoeffRing::Integers);
    let shape = RandomShape::small(1);
    let mut sums = 0;
    for seed in 0..100u64 {
        let mut src = source(7000 + seed);
        let c = random_complex(&mut src, CoeffRing::Integers, &shape);
        let input = random_total_input(&mut src, &e, &c, &shape);
        let out = total_complex_assemble(&input).map_err(|err| format!("seed {seed}: {err}"))?;
        ensure(out.checks.chain_f > 0, format!("seed {seed}: chain map identity not exercised"))?;
        sums += out.checks.sum_zero;
    }
    let mut bounds = 0;
    for (name, n) in [("circle", 1), ("trefoil", 1), ("trefoil", 2)] {
        let r = finite_type_reduce(&z(name), n, None).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.checks.reducer_cells > 0 && r.checks.starstar_cells > 0, format!("{name}: bounds not exercised"))?;
        bounds += r.checks.reducer_cells + r.checks.starstar_cells;
    }
    Ok(format!("100 assemblies ({sums} alternating sums), {bounds} bound checks"))
}

fn movability() -> Check {
    let c = z("wedge-s1-s2");
    let xi = dir(&[1]);
    let point = vec![GroupRingElem::one(CoeffRing::Integers, 1)];
    match movable_to_infinity(&c, 0, &point, &xi).map_err(|e| e.to_string())? {
        Movability::Movable { delta, witness } => {
            ensure(delta.lowest_part(&xi).is_ok_and(|l| l.is_one()), format!("delta = {delta}"))?;
            ensure(check_movable_witness(&c, 0, &point, &xi, &delta, &witness).map_err(|e| e.to_string())?, "delta z not a boundary")?;
        }
        other => return Err(format!("H0: {other:?}")),
    }
    let cq = q("wedge-s1-s2");
    let sphere = vec![GroupRingElem::one(CoeffRing::Rationals, 1)];
    match movable_to_infinity(&cq, 2, &sphere, &xi).map_err(|e| e.to_string())? {
        Movability::NotMovable { .. } => {}
        other => return Err(format!("H2: {other:?}")),
    }
    Ok("H0 Movable (rechecked), H2 NotMovable over Q".into())
}

/// Nudges one coordinate at a time by ±1/7 and ±1/3.
fn perturbations(xi: &Character) -> Vec<Character> {
    let base: Vec<Scalar> = xi.coeffs().iter().map(|&x| Scalar::from_integer(x.into())).collect();
    let mut out = Vec::new();
    for i in 0..base.len() {
        for (n, d) in [(1, 7), (-1, 7), (1, 3), (-1, 3)] {
            let mut v = base.clone();
            v[i] += Scalar::new(n.into(), d.into());
            if let Ok(c) = Character::new(&v) {
                out.push(c);
            }
        }
    }
    out
}

fn openness() -> Check {
    let mut certs = 0;
    for name in BUILTIN_NAMES {
        let c = z(name);
        for xi in auto_directions(c.deck_rank()) {
            for k in 1..=2 {
                let v = sigma_membership(&c, &xi, k, None).map_err(|e| e.to_string())?;
                let Some(cert) = v.certificate() else { continue };
                certs += 1;
                let ok = perturbations(&xi).iter().filter(|eta| reverify_at(&c, cert, eta).is_ok()).count();
                ensure(ok >= 3, format!("{name} {xi} k={k}: only {ok} perturbed directions re-verify"))?;
            }
        }
    }
    Ok(format!("{certs} certificates, each re-verified at >= 3 nearby directions"))
}

fn field_symmetry() -> Check {
    let mut pairs = 0;
    for name in BUILTIN_NAMES {
        for ring in [CoeffRing::Rationals, CoeffRing::PrimeField(2), CoeffRing::PrimeField(3)] {
            let c = builtin(name, ring).map_err(|e| e.to_string())?;
            if c.deck_rank() != 1 {
                continue;
            }
            for k in 0..=c.dim() {
                let (a, b) = (status(&c, &dir(&[1]), k)?, status(&c, &dir(&[-1]), k)?);
                ensure(a == b, format!("{name} over {ring} k={k}: +xi {a}, -xi {b}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} direction pairs agree"))
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut bytes = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("r{run}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_sigma"))
            .args(["scan", "torus", "--k", "2", "--jobs", "4", "--out"])
            .arg(&path)
            .env_remove("SIGMA_DEFAULT_WINDOW")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), String::from_utf8_lossy(&out.stderr).into_owned())?;
        bytes.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(bytes[0] == bytes[1], "binary reports differ")?;
    let cfg = RunConfig { k: 2, jobs: 3, ..RunConfig::new("trefoil") };
    let a = cmd_scan(&cfg).map_err(|e| e.to_string())?;
    let b = cmd_scan(&cfg).map_err(|e| e.to_string())?;
    ensure(a == b, "library reports differ")?;
    Ok(format!("{} bytes identical across runs", bytes[0].len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Check); 9] = [
        ("structural suite", Some(Duration::from_secs(5)), structural),
        ("circle", Some(Duration::from_secs(1)), circle),
        ("BS(1,2)", Some(Duration::from_secs(2)), bs12),
        ("trefoil", Some(Duration::from_secs(10)), trefoil),
        ("construction identities", Some(Duration::from_secs(30)), identities),
        ("movability", Some(Duration::from_secs(1)), movability),
        ("certificate openness", Some(Duration::from_secs(2)), openness),
        ("field symmetry", None, field_symmetry),
        ("determinism", None, determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if took > *l => Err(format!("took {took:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({took:.2?}) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({took:.2?}) {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
