//! Single-instance commands.

use std::fmt::Write;

use edepth::cohomology::{lc_table, socle_table, CohomologyTable};
use edepth::cone::{self, export_window, DeltaTable};
use edepth::gin::{check_gin_criterion, gin_rev_t};
use edepth::parse::{submodule_text, Document};
use edepth::resolution::GradedPresentation;
use edepth::socle::{artinian_socle_check, seq_cm_socle_check, socle_lemma_check, Verdict};
use edepth::submodule::Submodule;
use serde_json::{json, Value};

use crate::render::{grid, strings, Output};
use crate::{Failure, Status};

type CmdResult = Result<(Output, Status), Failure>;

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn edepth(u: &Submodule) -> CmdResult {
    let m = GradedPresentation::new(u.clone())?;
    let n = m.nvars();
    let exts: Vec<(usize, bool, Option<u32>, Option<usize>)> =
        m.all_ext().iter().enumerate().map(|(i, e)| (i, e.is_zero(), e.krull_dim(), e.depth())).collect();
    let (dim, depth, ed, seq) = (m.krull_dim(), m.depth(), m.edepth(), m.is_sequentially_cm());
    let json = json!({
        "n": n,
        "krull_dim": dim,
        "depth": depth,
        "edepth": ed,
        "sequentially_cm": seq,
        "ext": exts.iter().map(|&(i, z, d, dp)| json!({"i": i, "zero": z, "dim": d, "depth": dp})).collect::<Vec<_>>(),
    });
    let summary = vec![strings(["n", "krull_dim", "depth", "edepth", "sequentially_cm"]), vec![n.to_string(), opt(dim), opt(depth), ed.to_string(), seq.to_string()]];
    let mut ext_rows = vec![strings(["i", "zero", "dim", "depth"])];
    ext_rows.extend(exts.iter().map(|&(i, z, d, dp)| vec![i.to_string(), z.to_string(), opt(d), opt(dp)]));
    let mut pretty = format!("n = {n}, dim = {}, depth = {}\nE-depth = {ed}\nsequentially Cohen-Macaulay: {}\n\n", opt(dim), opt(depth), if seq { "yes" } else { "no" });
    let rows: Vec<Vec<String>> = exts
        .iter()
        .filter(|e| !e.1)
        .map(|&(i, _, d, dp)| vec![format!("Ext^{i}"), opt(d), opt(dp)])
        .collect();
    pretty.push_str(&grid(&strings(["", "dim", "depth"]), &rows));
    Ok((Output { json, csv: vec![summary, ext_rows], pretty }, Status::Ok))
}

fn lc_rows(t: &CohomologyTable, w: (i32, i32)) -> Vec<Vec<String>> {
    (0..=t.n).map(|i| std::iter::once(i.to_string()).chain((w.0..=w.1).map(|j| t.h(i, j).to_string())).collect()).collect()
}

fn delta_rows(d: &DeltaTable, w: (i32, i32)) -> Vec<Vec<String>> {
    (0..=d.n()).map(|i| std::iter::once(i.to_string()).chain((w.0..=w.1).map(|j| d.get(i, j).to_string())).collect()).collect()
}

fn column_header(first: &str, w: (i32, i32)) -> Vec<String> {
    std::iter::once(first.to_string()).chain((w.0..=w.1).map(|j| j.to_string())).collect()
}

fn with_label(label: &str, rows: Vec<Vec<String>>) -> Vec<Vec<String>> {
    rows.into_iter().map(|r| std::iter::once(label.to_string()).chain(r).collect()).collect()
}

pub fn table(u: &Submodule, window: Option<(i32, i32)>) -> CmdResult {
    let m = GradedPresentation::new(u.clone())?;
    let lc = lc_table(&m);
    let d = cone::delta(&lc);
    let soc = socle_table(&m);
    let w = window.unwrap_or_else(|| export_window(&d));
    let json = json!({"n": lc.n, "lc": lc.to_json(w), "delta": d.to_json(w), "socle": soc.to_json()});
    let soc_rows: Vec<Vec<String>> =
        (0..=soc.n).map(|i| std::iter::once(i.to_string()).chain((w.0..=w.1).map(|j| soc.get(i, j).to_string())).collect()).collect();

    let mut header = vec!["table".to_string()];
    header.extend(column_header("i", w));
    let mut csv = vec![header];
    csv.extend(with_label("lc", lc_rows(&lc, w)));
    csv.extend(with_label("delta", delta_rows(&d, w)));
    csv.extend(with_label("socle", soc_rows.clone()));

    let mut pretty = String::new();
    let _ = writeln!(pretty, "dim H^i_m(M)_j, columns j = {}..{}", w.0, w.1);
    pretty.push_str(&grid(&column_header("i\\j", w), &lc_rows(&lc, w)));
    let _ = writeln!(pretty, "\nΔ table");
    pretty.push_str(&grid(&column_header("i\\j", w), &delta_rows(&d, w)));
    let _ = writeln!(pretty, "\nsocle dimensions of H^i_m(M)");
    pretty.push_str(&grid(&column_header("i\\j", w), &soc_rows));
    let outside = soc.rows.iter().flat_map(|r| r.keys()).any(|&j| j < w.0 || j > w.1);
    if outside {
        let _ = writeln!(pretty, "(socle entries outside the window are in the JSON output)");
    }
    Ok((Output { json: json!(json), csv: vec![csv], pretty }, Status::Ok))
}

pub fn gin(u: &Submodule, t: usize, seed: u64) -> CmdResult {
    let r = gin_rev_t(u, t, seed)?;
    let rank = r.gin.ambient().rank();
    let gens: Vec<String> = r.gin.gens().iter().map(|g| g.to_text(r.gin.ring(), rank)).collect();
    let n = u.ring().nvars();
    let change: Vec<Vec<u32>> = (0..n).map(|i| r.change.row(i).to_vec()).collect();
    let json = json!({
        "t": t,
        "seed": seed,
        "shifts": r.gin.shifts(),
        "generators": gens,
        "certificate": r.certificate,
        "change": change,
    });
    let mut csv = vec![vec!["generator".to_string()]];
    csv.extend(gens.iter().map(|g| vec![g.clone()]));
    let mut pretty = submodule_text(&format!("gin_rev_{t}"), &r.gin);
    let c = &r.certificate;
    let _ = writeln!(pretty, "# certified: samples {} and {} agree on {} (retries: {})", c.seeds.0, c.seeds.1, c.compared.join(", "), c.retries);
    Ok((Output { json, csv: vec![csv], pretty }, Status::Ok))
}

pub fn verify_gin(u: &Submodule, t: Option<usize>, seed: u64) -> CmdResult {
    let n = u.ring().nvars();
    let ts: Vec<usize> = match t {
        Some(t) => vec![t],
        None => (0..=n).collect(),
    };
    let mut reports = Vec::new();
    for t in ts {
        reports.push(check_gin_criterion(u, t, seed.wrapping_add(t as u64))?);
    }
    let status = if reports.iter().all(|r| r.consistent) { Status::Ok } else { Status::Violation };
    let edepth = reports.first().map(|r| r.edepth);
    let json = json!({"edepth": edepth, "reports": reports});
    let header = strings(["t", "edepth", "edepth_at_least_t", "tables_equal", "consistent", "differing_row"]);
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| vec![r.t.to_string(), r.edepth.to_string(), r.lhs.to_string(), r.rhs.to_string(), r.consistent.to_string(), opt(r.differing_row)])
        .collect();
    let mut csv = vec![header.clone()];
    csv.extend(rows.clone());
    let mut pretty = grid(&header, &rows);
    if status != Status::Ok {
        pretty.push_str("inconsistent: a table comparison disagrees with the E-depth bound\n");
    }
    Ok((Output { json, csv: vec![csv], pretty }, status))
}

pub fn decompose(u: &Submodule, window: Option<(i32, i32)>, seed: u64) -> CmdResult {
    let m = GradedPresentation::new(u.clone())?;
    let d = cone::decompose(&m, seed)?;
    let diff = cone::reconstruct(&d.coefficients).sub(&d.delta);
    let w = window.unwrap_or_else(|| export_window(&d.delta));
    let exact = diff.is_zero();
    let json = json!({
        "n": d.delta.n(),
        "edepth": d.edepth,
        "sequentially_cm": d.sequentially_cm,
        "coefficients": d.coefficients.to_json(),
        "delta": d.delta.to_json(w),
        "reconstruction_diff": diff.to_json(w),
        "exact": exact,
        "certificate": d.certificate.as_ref().map_or(Value::Null, |c| json!(c)),
    });
    let mut rows = Vec::new();
    for (&(i, j), v) in &d.coefficients.s {
        rows.push(vec!["S".to_string(), i.to_string(), j.to_string(), v.to_string()]);
    }
    for (&(k, j), v) in &d.coefficients.j {
        rows.push(vec!["J".to_string(), k.to_string(), j.to_string(), v.to_string()]);
    }
    let header = strings(["ray", "index", "shift", "coefficient"]);
    let mut csv = vec![header];
    csv.extend(rows);
    let mut pretty = format!("E-depth {} of {}{}\n", d.edepth, d.delta.n(), if d.sequentially_cm { " (sequentially Cohen-Macaulay)" } else { "" });
    for (&(i, j), v) in &d.coefficients.s {
        let _ = writeln!(pretty, "  {v} * [S_{i}({})]", -j);
    }
    for (&(k, j), v) in &d.coefficients.j {
        let _ = writeln!(pretty, "  {v} * [J^{k}({})]", -j);
    }
    if d.coefficients.s.is_empty() && d.coefficients.j.is_empty() {
        pretty.push_str("  zero table\n");
    }
    pretty.push_str(if exact { "reconstruction: exact\n" } else { "reconstruction: MISMATCH\n" });
    let status = if exact { Status::Ok } else { Status::CertificationFailure };
    Ok((Output { json, csv: vec![csv], pretty }, status))
}

pub fn socle(doc: &Document) -> CmdResult {
    let need = |name: &str| doc.get(name).cloned().ok_or_else(|| Failure { status: Status::InputError, message: format!("missing submodule block `{name}`") });
    let (a, b) = (need("A")?, need("B")?);
    let (lemma, report) = if let Some(c) = doc.get("C") {
        ("finite length", artinian_socle_check(&a, &b, c)?)
    } else if let Some(ells) = doc.get("ELLS") {
        ("filter regular", socle_lemma_check(&a, &b, ells.gens())?)
    } else {
        ("sequentially Cohen-Macaulay", seq_cm_socle_check(&a, &b)?)
    };
    let status = match report.verdict {
        Verdict::Equal => Status::Ok,
        Verdict::HypothesisUnmet => Status::HypothesisUnmet,
        Verdict::Counterexample => Status::Violation,
    };
    let mut rows: Vec<Vec<String>> = report.hypotheses.iter().map(|h| vec![h.name.clone(), h.holds.to_string(), opt(h.witness.clone())]).collect();
    let mut csv = vec![strings(["hypothesis", "holds", "witness"])];
    csv.append(&mut rows.clone());
    let verdict = serde_json::to_value(report.verdict).expect("serializable");
    let verdict = verdict.as_str().unwrap_or_default().to_string();
    let mut pretty = format!("{lemma} socle lemma\n");
    rows.iter_mut().for_each(|r| r[1] = if r[1] == "true" { "holds".into() } else { "fails".into() });
    pretty.push_str(&grid(&strings(["hypothesis", "", "witness"]), &rows));
    let _ = writeln!(pretty, "verdict: {verdict}");
    let json = json!({"lemma": lemma, "report": report});
    Ok((Output { json, csv: vec![csv], pretty }, status))
}
