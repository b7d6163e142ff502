//! Corpus runs: the gin criterion, ray decompositions and the socle lemmas
//! over seeded random instances, fanned out on a bounded thread pool.

use std::fmt::Write;

use edepth::cone::{self, ConeMode};
use edepth::corpus::{self, CorpusKind, Instance};
use edepth::gin::check_gin_criterion;
use edepth::parse::submodule_text;
use edepth::resolution::GradedPresentation;
use edepth::socle::{run_harness, HarnessSummary, PairKind};
use edepth::{Error, Ring};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::render::{grid, strings, Output};
use crate::{Failure, Status};

pub struct Config {
    pub kind: CorpusKind,
    pub ring: Ring,
    pub count: usize,
    pub seed: u64,
    pub t: Option<usize>,
    pub pairs: usize,
    pub jobs: Option<usize>,
}

/// A failed check with enough data to reproduce it.
struct FailureRecord {
    harness: &'static str,
    label: String,
    detail: String,
    certification: bool,
    fixture: String,
}

enum Decomp {
    Skipped,
    Exact { sequentially_cm: bool },
    Failed,
}

struct InstanceReport {
    label: String,
    edepth: usize,
    sequentially_cm: bool,
    gin_checks: usize,
    gin_consistent: usize,
    edepth_below_t: usize,
    decomposition: Decomp,
    failures: Vec<FailureRecord>,
}

/// Per-item seed, independent of scheduling.
fn derive(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k.wrapping_mul(1_000_003)).wrapping_add(1)
}

fn fixture(inst: &Instance) -> String {
    format!("{}\n{}", inst.submodule.ring().header(), submodule_text("U", &inst.submodule))
}

fn evaluate(inst: &Instance, k: usize, cfg: &Config) -> InstanceReport {
    let seed = derive(cfg.seed, k as u64);
    let mut failures = Vec::new();
    let mut record = |harness, detail: String, certification| {
        failures.push(FailureRecord { harness, label: inst.label.clone(), detail, certification, fixture: fixture(inst) });
    };
    let m = match GradedPresentation::new(inst.submodule.clone()) {
        Ok(m) => m,
        Err(e) => {
            record("input", e.to_string(), false);
            return InstanceReport {
                label: inst.label.clone(),
                edepth: 0,
                sequentially_cm: false,
                gin_checks: 0,
                gin_consistent: 0,
                edepth_below_t: 0,
                decomposition: Decomp::Failed,
                failures,
            };
        }
    };
    let n = m.nvars();
    let ts: Vec<usize> = match cfg.t {
        Some(t) => vec![t.min(n)],
        None => (0..=n).collect(),
    };
    let (mut checks, mut consistent, mut below) = (0, 0, 0);
    for t in ts {
        checks += 1;
        match check_gin_criterion(&inst.submodule, t, seed.wrapping_add(t as u64)) {
            Ok(r) => {
                below += usize::from(!r.lhs);
                if r.consistent {
                    consistent += 1;
                } else {
                    record("gin", format!("t = {t}: E-depth {} but tables {} (first differing row {:?})", r.edepth, if r.rhs { "equal" } else { "differ" }, r.differing_row), false);
                }
            }
            Err(e) => {
                let cert = matches!(e, Error::CertificationFailed { .. });
                record("gin", format!("t = {t}: {e}"), cert);
            }
        }
    }
    let decomposition = match cone::decompose(&m, seed) {
        Err(Error::EdepthTooSmall { .. }) => Decomp::Skipped,
        Err(e) => {
            let cert = matches!(e, Error::CertificationFailed { .. } | Error::Infeasible(_));
            record("decompose", e.to_string(), cert);
            Decomp::Failed
        }
        Ok(d) => {
            let exact = cone::reconstruct(&d.coefficients) == d.delta;
            let nonneg = d.coefficients.is_nonnegative();
            let seq_ok = !d.sequentially_cm || (d.coefficients.j.is_empty() && d.coefficients.s_integral());
            let member = cone::cone_membership(&d.delta, cone::default_window(&d.delta), ConeMode::Edepth).map(|r| r.member).unwrap_or(false);
            if exact && nonneg && seq_ok && member {
                Decomp::Exact { sequentially_cm: d.sequentially_cm }
            } else {
                record("decompose", format!("exact {exact}, nonnegative {nonneg}, sequential form {seq_ok}, in cone {member}"), false);
                Decomp::Failed
            }
        }
    };
    InstanceReport {
        label: inst.label.clone(),
        edepth: m.edepth(),
        sequentially_cm: m.is_sequentially_cm(),
        gin_checks: checks,
        gin_consistent: consistent,
        edepth_below_t: below,
        decomposition,
        failures,
    }
}

fn socle_harness(cfg: &Config) -> Result<Vec<(PairKind, HarnessSummary)>, Error> {
    let n = cfg.ring.nvars();
    let mut out = Vec::new();
    for (kk, kind) in PairKind::ALL.into_iter().enumerate() {
        let parts: Vec<Result<HarnessSummary, Error>> =
            (0..cfg.pairs).into_par_iter().map(|k| run_harness(kind, n, 1, derive(cfg.seed ^ (kk as u64 + 1) << 32, k as u64))).collect();
        let mut total = HarnessSummary::default();
        for p in parts {
            total.merge(p?);
        }
        out.push((kind, total));
    }
    Ok(out)
}

pub fn run(cfg: &Config) -> Result<(Output, Status), Failure> {
    let n = cfg.ring.nvars();
    if n == 0 {
        return Err(Failure { status: Status::InputError, message: "corpus runs need at least one variable".into() });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure { status: Status::InputError, message: format!("--jobs: {e}") })?;
    let instances = corpus::generate(cfg.kind, &[n], cfg.count, cfg.seed, cfg.ring.characteristic())?;
    let (reports, socle) = pool.install(|| {
        let reports: Vec<InstanceReport> = instances.par_iter().enumerate().map(|(k, inst)| evaluate(inst, k, cfg)).collect();
        (reports, socle_harness(cfg))
    });
    let socle = socle?;

    let failures: Vec<&FailureRecord> = reports.iter().flat_map(|r| &r.failures).collect();
    let sum = |f: fn(&InstanceReport) -> usize| reports.iter().map(f).sum::<usize>();
    let gin_checks = sum(|r| r.gin_checks);
    let gin_consistent = sum(|r| r.gin_consistent);
    let below = sum(|r| r.edepth_below_t);
    let count = |f: fn(&Decomp) -> bool| reports.iter().filter(|r| f(&r.decomposition)).count();
    let exact = count(|d| matches!(d, Decomp::Exact { .. }));
    let seq = count(|d| matches!(d, Decomp::Exact { sequentially_cm: true }));
    let skipped = count(|d| matches!(d, Decomp::Skipped));
    let cert_failures = failures.iter().filter(|f| f.certification).count();
    let mut socle_total = HarnessSummary::default();
    for (_, s) in &socle {
        socle_total.merge(s.clone());
    }
    let violations = failures.len() - cert_failures + socle_total.counterexamples.len();
    let status = if violations > 0 {
        Status::Violation
    } else if cert_failures > 0 {
        Status::CertificationFailure
    } else {
        Status::Ok
    };

    let instance_json: Vec<Value> = reports
        .iter()
        .map(|r| {
            let d = match r.decomposition {
                Decomp::Skipped => "skipped",
                Decomp::Exact { .. } => "exact",
                Decomp::Failed => "failed",
            };
            json!({"label": r.label, "edepth": r.edepth, "sequentially_cm": r.sequentially_cm, "gin_checks": r.gin_checks, "gin_consistent": r.gin_consistent, "decomposition": d})
        })
        .collect();
    let mut failure_json: Vec<Value> =
        failures.iter().map(|f| json!({"harness": f.harness, "label": f.label, "detail": f.detail, "certification": f.certification, "fixture": f.fixture})).collect();
    for (kind, s) in &socle {
        for fx in &s.counterexamples {
            failure_json.push(json!({"harness": "socle", "label": format!("{kind:?}"), "detail": "all hypotheses hold but A != B", "certification": false, "fixture": fx}));
        }
    }
    let json = json!({
        "kind": cfg.kind.name(),
        "n": n,
        "p": cfg.ring.characteristic(),
        "count": cfg.count,
        "seed": cfg.seed,
        "gin": {"checks": gin_checks, "consistent": gin_consistent, "edepth_below_t": below},
        "decompose": {"exact": exact, "sequentially_cm": seq, "skipped_edepth_too_small": skipped, "failed": reports.len() - exact - skipped},
        "socle": socle.iter().map(|(k, s)| json!({"lemma": k, "summary": s})).collect::<Vec<_>>(),
        "certification_failures": cert_failures,
        "instances": instance_json,
        "failures": failure_json,
    });

    let mut rows = vec![strings(["label", "edepth", "sequentially_cm", "gin_checks", "gin_consistent", "decomposition"])];
    for v in &instance_json {
        rows.push(vec![
            v["label"].as_str().unwrap_or_default().to_string(),
            v["edepth"].to_string(),
            v["sequentially_cm"].to_string(),
            v["gin_checks"].to_string(),
            v["gin_consistent"].to_string(),
            v["decomposition"].as_str().unwrap_or_default().to_string(),
        ]);
    }
    let mut frows = vec![strings(["harness", "label", "detail"])];
    for f in &failure_json {
        frows.push(["harness", "label", "detail"].iter().map(|k| f[*k].as_str().unwrap_or_default().to_string()).collect());
    }

    let mut pretty = String::new();
    let _ = writeln!(pretty, "corpus: {} {} instances, n = {n}, p = {}, seed {}", cfg.count, cfg.kind.name(), cfg.ring.characteristic(), cfg.seed);
    let _ = writeln!(pretty, "gin criterion: {gin_consistent}/{gin_checks} consistent ({below} with E-depth < t)");
    let _ = writeln!(pretty, "decompositions: {exact} exact ({seq} sequentially CM), {skipped} below E-depth n-2");
    let socle_rows: Vec<Vec<String>> = socle
        .iter()
        .map(|(k, s)| vec![format!("{k:?}"), s.drawn.to_string(), s.qualified.to_string(), s.socle_inequality_failed.to_string(), s.counterexamples.len().to_string()])
        .collect();
    pretty.push_str(&grid(&strings(["socle lemma", "drawn", "qualified", "inequality fails", "counterexamples"]), &socle_rows));
    if failure_json.is_empty() {
        pretty.push_str("no failures\n");
    } else {
        let _ = writeln!(pretty, "{} failures:", failure_json.len());
        for f in &failure_json {
            let _ = writeln!(pretty, "- [{}] {}: {}", f["harness"].as_str().unwrap_or_default(), f["label"].as_str().unwrap_or_default(), f["detail"].as_str().unwrap_or_default());
            for line in f["fixture"].as_str().unwrap_or_default().lines() {
                let _ = writeln!(pretty, "    {line}");
            }
        }
    }
    Ok((Output { json, csv: vec![rows, frows], pretty }, status))
}
