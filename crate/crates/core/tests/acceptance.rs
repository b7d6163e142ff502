//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any of them fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use edepth::cohomology::{h0_by_saturation, kunneth_lift, lc_table, CohomologyTable};
use edepth::cone::{cone_membership, decompose, default_window, delta, realize_sequential, reconstruct, ConeMode, DeltaTable};
use edepth::corpus::{self, CorpusKind, Instance};
use edepth::gin::check_gin_criterion;
use edepth::resolution::GradedPresentation;
use edepth::socle::{random_linear_forms, run_harness, HarnessSummary, PairKind};
use edepth::Ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u32 = 32003;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

/// A corpus module together with its (cached) table.
struct Entry {
    inst: Instance,
    m: GradedPresentation,
    table: CohomologyTable,
}

fn corpus() -> Vec<Entry> {
    let mut insts = Vec::new();
    insts.extend(corpus::generate(CorpusKind::Monomial, &[2, 3, 4], 36, 101, P).unwrap());
    insts.extend(corpus::generate(CorpusKind::Binomial, &[2, 3, 4], 36, 102, P).unwrap());
    insts.extend(corpus::generate(CorpusKind::Module, &[2, 3, 4], 20, 103, P).unwrap());
    insts.extend(corpus::generate(CorpusKind::Toric, &[3, 4], 10, 104, P).unwrap());
    insts.extend(corpus::generate(CorpusKind::Determinantal, &[3, 4], 10, 105, P).unwrap());
    insts
        .into_iter()
        .map(|inst| {
            let m = GradedPresentation::new(inst.submodule.clone()).unwrap();
            let table = lc_table(&m);
            Entry { inst, m, table }
        })
        .collect()
}

fn toric_example() -> Outcome {
    let u = corpus::rational_quartic(Ring::new(P, 4).unwrap()).unwrap();
    let m = GradedPresentation::new(u).unwrap();
    let nonzero: Vec<usize> = (0..=4).filter(|&i| !m.ext(i).unwrap().is_zero()).collect();
    let ext3 = m.ext(3).unwrap();
    let got = (m.depth(), m.edepth(), ext3.krull_dim(), nonzero.clone());
    if got == (Some(1), 0, Some(0), vec![2, 3]) {
        pass("depth 1, E-depth 0, Ext^3 of finite length, nonzero Ext in {2, 3}")
    } else {
        fail(format!("got (depth, edepth, dim Ext^3, nonzero Ext) = {got:?}"))
    }
}

fn x2_xy_example() -> Outcome {
    let m = GradedPresentation::new(corpus::x2_xy(Ring::new(P, 2).unwrap())).unwrap();
    let e1 = m.ext(1).unwrap();
    let e2 = m.ext(2).unwrap();
    let cm = |e: &GradedPresentation, d: usize| e.krull_dim() == Some(d as u32) && e.depth() == Some(d);
    let ok = m.depth() == Some(0) && m.edepth() == 2 && m.is_sequentially_cm() && cm(&e1, 1) && cm(&e2, 0);
    if ok {
        pass("depth 0, E-depth 2, sequentially CM, Ext^1 CM of dim 1, Ext^2 CM of dim 0")
    } else {
        fail(format!("depth {:?}, edepth {}, dims {:?}/{:?}", m.depth(), m.edepth(), e1.krull_dim(), e2.krull_dim()))
    }
}

fn gin_criterion(entries: &[Entry]) -> Outcome {
    let (mut checks, mut below) = (0, 0);
    for (k, e) in entries.iter().enumerate() {
        for t in 0..=e.m.nvars() {
            match check_gin_criterion(&e.inst.submodule, t, 1000 + k as u64) {
                Ok(r) if r.consistent => {
                    checks += 1;
                    below += usize::from(!r.lhs);
                }
                Ok(r) => return fail(format!("{} t={t}: lhs {} rhs {} (row {:?})", e.inst.label, r.lhs, r.rhs, r.differing_row)),
                Err(err) => return fail(format!("{} t={t}: {err}", e.inst.label)),
            }
        }
    }
    pass(format!("{} instances, {checks} (instance, t) checks consistent, {below} with E-depth < t", entries.len()))
}

fn ray_decompositions(entries: &[Entry]) -> Outcome {
    let (mut checked, mut seq) = (0, 0);
    for (k, e) in entries.iter().enumerate() {
        let n = e.m.nvars();
        if e.m.edepth() + 2 < n {
            continue;
        }
        let d = match decompose(&e.m, 2000 + k as u64) {
            Ok(d) => d,
            Err(err) => return fail(format!("{}: {err}", e.inst.label)),
        };
        if reconstruct(&d.coefficients) != delta(&e.table) || !d.coefficients.is_nonnegative() {
            return fail(format!("{}: reconstruction mismatch or negative coefficient", e.inst.label));
        }
        if d.sequentially_cm {
            if !d.coefficients.j.is_empty() || !d.coefficients.s_integral() {
                return fail(format!("{}: sequentially CM but J-coefficients or fractional S-coefficients", e.inst.label));
            }
            seq += 1;
        }
        checked += 1;
    }
    if checked == 0 {
        return fail("no corpus module with E-depth >= n - 2");
    }
    pass(format!("{checked} decompositions reconstruct exactly ({seq} sequentially CM)"))
}

fn random_nonnegative_table(rng: &mut ChaCha8Rng) -> DeltaTable {
    let n = rng.gen_range(1..=4usize);
    let a = rng.gen_range(-3..=1);
    let width = rng.gen_range(1..=6);
    let mut entries = Vec::new();
    for i in 0..=n {
        for j in a..a + width {
            if rng.gen_bool(0.3) {
                entries.push((i, j, rng.gen_range(1..=3i64)));
            }
        }
    }
    DeltaTable::from_entries(n, entries)
}

fn cone(entries: &[Entry]) -> Outcome {
    let mut tested = 0;
    for e in entries {
        let n = e.m.nvars();
        let d = delta(&e.table);
        if e.m.is_sequentially_cm() && !d.is_nonnegative() {
            return fail(format!("{}: sequentially CM with a negative entry", e.inst.label));
        }
        if e.m.edepth() + 2 < n {
            continue;
        }
        let w = default_window(&d);
        let r = cone_membership(&d, w, ConeMode::Edepth).unwrap();
        if !r.member {
            return fail(format!("{}: functional {} negative", e.inst.label, r.violated[0].0));
        }
        tested += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let draws = 40;
    for k in 0..draws {
        let t = random_nonnegative_table(&mut rng);
        let m = match realize_sequential(Ring::new(P, t.n()).unwrap(), &t) {
            Ok(m) => m,
            Err(err) => return fail(format!("draw {k}: {err}")),
        };
        if delta(&lc_table(&m)) != t {
            return fail(format!("draw {k}: realized module has a different table"));
        }
    }
    pass(format!("{tested} corpus tables in the cone; {draws} random matrices realized"))
}

fn kunneth() -> Outcome {
    let insts = corpus::generate(CorpusKind::Module, &[2], 30, 106, P).unwrap();
    for inst in &insts {
        let base = lc_table(&GradedPresentation::new(inst.submodule.clone()).unwrap());
        for j in 1..=2 {
            let ext = GradedPresentation::new(inst.submodule.extend_ring(j).unwrap()).unwrap();
            if lc_table(&ext) != kunneth_lift(&base, j) {
                return fail(format!("{} j={j}", inst.label));
            }
        }
    }
    pass(format!("{} modules over S_2, j in {{1, 2}}", insts.len()))
}

fn local_duality(entries: &[Entry]) -> Outcome {
    for e in entries {
        let by_sat = h0_by_saturation(&e.m);
        let by_ext = &e.table.rows[0];
        let (Some(values), Some(mut sat)) = (by_ext.finite_values(), by_sat.finite_values()) else {
            return fail(format!("{}: H^0 is not of finite length", e.inst.label));
        };
        let mut flipped: Vec<(i32, i64)> = values.iter().map(|&(k, c)| (-k, c)).collect();
        flipped.sort();
        sat.sort();
        if flipped != sat {
            return fail(format!("{}: {flipped:?} vs {sat:?}", e.inst.label));
        }
    }
    pass(format!("{} corpus modules", entries.len()))
}

fn socle() -> Outcome {
    let mut total = HarnessSummary::default();
    let mut seed = 500;
    while total.qualified < 200 && total.drawn < 5000 {
        for kind in PairKind::ALL {
            for n in 2..=3 {
                seed += 1;
                match run_harness(kind, n, 10, seed) {
                    Ok(s) => total.merge(s),
                    Err(err) => return fail(format!("{kind:?} n={n}: {err}")),
                }
            }
        }
    }
    if !total.counterexamples.is_empty() {
        return fail(format!("counterexample fixture:\n{}", total.counterexamples[0]));
    }
    if total.qualified < 200 {
        return fail(format!("only {} qualified pairs among {}", total.qualified, total.drawn));
    }
    if total.socle_inequality_failed != total.qualified {
        return fail("a qualified pair satisfied the socle inequality without A = B");
    }
    pass(format!("{} qualified strict pairs of {} drawn; inequality fails on each", total.qualified, total.drawn))
}

fn basic_properties() -> Outcome {
    let mut pool: Vec<GradedPresentation> = Vec::new();
    for (kind, seed) in [(CorpusKind::Module, 201), (CorpusKind::Binomial, 202), (CorpusKind::Monomial, 203)] {
        for inst in corpus::generate(kind, &[2, 3, 4], 60, seed, P).unwrap() {
            pool.push(GradedPresentation::new(inst.submodule).unwrap());
        }
    }
    let mut sums = 0;
    for (a, b) in pool.iter().zip(pool.iter().skip(3)) {
        if a.nvars() != b.nvars() {
            continue;
        }
        if a.direct_sum(&b.twist(1)).edepth() != a.edepth().min(b.edepth()) {
            return fail("E-depth of a direct sum differs from the minimum");
        }
        sums += 1;
    }
    for m in &pool {
        if m.modulo_torsion().edepth() != m.edepth() {
            return fail("E-depth changed after removing H^0");
        }
    }
    // Modules with 0 < E-depth < n are rare among the mixed pool; draw
    // module instances until enough of them admit a strictly filter regular form.
    let mut drops = 0;
    let mut seed = 204;
    while drops < 50 && seed < 230 {
        for (k, inst) in corpus::generate(CorpusKind::Module, &[3, 4], 40, seed, P).unwrap().into_iter().enumerate() {
            let m = GradedPresentation::new(inst.submodule).unwrap();
            let (n, t) = (m.nvars(), m.edepth());
            if t == 0 || t >= n {
                continue;
            }
            let ell = random_linear_forms(m.ring(), 1, seed * 100 + k as u64).remove(0);
            if !m.is_strictly_filter_regular(&ell) {
                continue;
            }
            let cut = m.modulo_torsion().modulo_poly(&ell);
            if cut.edepth() != t - 1 {
                return fail(format!("{}: E-depth {t}, cut has {}", inst.label, cut.edepth()));
            }
            drops += 1;
        }
        seed += 1;
    }
    let counts = (sums, pool.len(), drops);
    if sums < 50 || drops < 50 {
        return fail(format!("too few instances (sum, torsion, drop) = {counts:?}"));
    }
    pass(format!("instances (sum, torsion, drop) = {counts:?}"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, limit: Option<Duration>, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if let Some(limit) = limit {
            if took > limit && out.pass {
                out = fail(format!("took {took:.1?}, limit {limit:?}"));
            }
        }
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {id} [{status}] {name} ({took:.2?}): {}", out.detail);
        if !out.pass {
            failed += 1;
        }
    };
    report(1, "toric example", Some(Duration::from_secs(30)), &mut toric_example);
    report(2, "(x^2, xy) example", Some(Duration::from_secs(1)), &mut x2_xy_example);
    let entries = corpus();
    report(3, "gin criterion for E-depth", Some(Duration::from_secs(900)), &mut || gin_criterion(&entries));
    report(4, "decomposition into rays", None, &mut || ray_decompositions(&entries));
    report(5, "cone membership and realization", Some(Duration::from_secs(300)), &mut || cone(&entries));
    report(6, "Kunneth lift", None, &mut kunneth);
    report(7, "local duality for H^0", None, &mut || local_duality(&entries));
    report(8, "socle lemmas", None, &mut socle);
    report(9, "basic properties of E-depth", None, &mut basic_properties);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
