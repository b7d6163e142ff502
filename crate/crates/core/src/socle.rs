//! Socle lemmas as checked statements: every hypothesis is verified, and the
//! conclusion `A = B` is only examined once all of them hold.
//!
//! Also contains the randomized harnesses that look for counterexamples among
//! strict pairs `A ⊊ B`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::socle_table;
use crate::corpus::random_monomial_ideal;
use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;
use crate::monomial::Monomial;
use crate::parse::submodule_text;
use crate::poly::{PolyVector, Term};
use crate::resolution::GradedPresentation;
use crate::ring::Ring;
use crate::submodule::{monomials_of_degree, Submodule};

/// One checked hypothesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    /// Where it fails, e.g. the first offending degree.
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// All hypotheses hold and `A = B`.
    Equal,
    /// Some hypothesis fails; nothing is claimed.
    HypothesisUnmet,
    /// All hypotheses hold but `A ≠ B`.
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleLemmaReport {
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion_checked: bool,
    /// `A = B`, when checked.
    pub equal: Option<bool>,
    /// For the finite-length lemma: whether `soc(C/A) -> soc(C/B)` is injective
    /// in every degree, when the socle inequality holds.
    pub socle_map_injective: Option<bool>,
    pub verdict: Verdict,
}

impl SocleLemmaReport {
    fn conclude(hypotheses: Vec<Hypothesis>, a: &Submodule, b: &Submodule) -> Self {
        if !hypotheses.iter().all(|h| h.holds) {
            return SocleLemmaReport {
                hypotheses,
                conclusion_checked: false,
                equal: None,
                socle_map_injective: None,
                verdict: Verdict::HypothesisUnmet,
            };
        }
        let equal = a.contains_submodule(b);
        SocleLemmaReport {
            hypotheses,
            conclusion_checked: true,
            equal: Some(equal),
            socle_map_injective: None,
            verdict: if equal { Verdict::Equal } else { Verdict::Counterexample },
        }
    }

    pub fn all_hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }
}

fn holds(name: &str) -> Hypothesis {
    Hypothesis { name: name.into(), holds: true, witness: None }
}

fn fails(name: &str, witness: String) -> Hypothesis {
    Hypothesis { name: name.into(), holds: false, witness: Some(witness) }
}

fn check_containment(a: &Submodule, b: &Submodule) -> Result<()> {
    if a.ambient() != b.ambient() || a.ring() != b.ring() {
        return Err(Error::AmbientMismatch("A and B must live in the same free module".into()));
    }
    if !b.contains_submodule(a) {
        return Err(Error::ContainmentViolated("A is not contained in B".into()));
    }
    Ok(())
}

/// `HS(soc(C/A)) = HS(((A : m) ∩ C) / A)` for `A ⊆ C` with `C/A` of finite length.
pub fn socle_series(c: &Submodule, a: &Submodule) -> HilbertSeries {
    let soc = a.colon_maximal().intersect(c);
    a.quotient_series().sub(&soc.quotient_series())
}

/// First degree where the finite series `lhs` exceeds `rhs`.
fn first_excess(lhs: &HilbertSeries, rhs: &HilbertSeries) -> Option<i32> {
    let diff = lhs.sub(rhs);
    let values = diff.finite_values().expect("socles of finite length modules");
    values.into_iter().find(|&(_, v)| v > 0).map(|(d, _)| d)
}

/// Finite-length socle lemma for `A ⊆ B ⊆ C` with `C/A` of finite length:
/// `HF(soc(C/A)) <= HF(soc(C/B))` forces `A = B`.
pub fn artinian_socle_check(a: &Submodule, b: &Submodule, c: &Submodule) -> Result<SocleLemmaReport> {
    check_containment(a, b)?;
    if c.ambient() != b.ambient() || !c.contains_submodule(b) {
        return Err(Error::ContainmentViolated("B is not contained in C".into()));
    }
    let length = a.quotient_series().sub(&c.quotient_series());
    if !length.is_polynomial() {
        return Err(Error::NotArtinian("C/A".into()));
    }
    let soc_a = socle_series(c, a);
    let soc_b = socle_series(c, b);
    let mut hyps = vec![holds("A ⊆ B ⊆ C"), holds("C/A has finite length")];
    let ineq = match first_excess(&soc_a, &soc_b) {
        None => holds("HF(soc(C/A)) <= HF(soc(C/B))"),
        Some(d) => fails("HF(soc(C/A)) <= HF(soc(C/B))", format!("degree {d}")),
    };
    let inequality_holds = ineq.holds;
    hyps.push(ineq);
    let mut report = SocleLemmaReport::conclude(hyps, a, b);
    if inequality_holds {
        // Kernel of soc(C/A) -> soc(C/B) is ((A : m) ∩ C ∩ B) / A.
        let kernel = a.colon_maximal().intersect(c).intersect(b);
        report.socle_map_injective = Some(kernel.quotient_series() == a.quotient_series());
    }
    Ok(report)
}

/// Checks that `ells` is a filter regular sequence on `F/U`; returns the first failing index.
fn filter_regular_failure(u: &Submodule, ells: &[PolyVector]) -> Option<usize> {
    let mut cur = u.clone();
    for (k, l) in ells.iter().enumerate() {
        let m = GradedPresentation::from_relations(cur.clone());
        if !m.is_filter_regular(l) {
            return Some(k);
        }
        cur = cur.plus_poly_multiple(l);
    }
    None
}

fn plus_all(u: &Submodule, ells: &[PolyVector]) -> Submodule {
    ells.iter().fold(u.clone(), |acc, l| acc.plus_poly_multiple(l))
}

fn socle_inequality(a: &GradedPresentation, b: &GradedPresentation, rows: std::ops::RangeInclusive<usize>) -> Hypothesis {
    let name = format!("HF(soc H^i(F/A)) <= HF(soc H^i(F/B)) for {} <= i <= {}", rows.start(), rows.end());
    match socle_table(a).first_excess(&socle_table(b), rows) {
        None => holds(&name),
        Some((i, j)) => fails(&name, format!("i = {i}, degree {j}")),
    }
}

/// The non-finite-length socle lemma for `A ⊆ B ⊆ F` and linear forms `ℓ_1..ℓ_t`.
pub fn socle_lemma_check(a: &Submodule, b: &Submodule, ells: &[PolyVector]) -> Result<SocleLemmaReport> {
    check_containment(a, b)?;
    let ring = a.ring();
    let n = ring.nvars();
    let t = ells.len();
    for l in ells {
        if l.max_comp().unwrap_or(0) != 0 || !l.terms().iter().all(|term| term.mono.degree() == 1) {
            return Err(Error::OutOfRange("the ℓ_i must be nonzero linear forms".into()));
        }
    }
    let (pa, pb) = (GradedPresentation::from_relations(a.clone()), GradedPresentation::from_relations(b.clone()));
    let mut hyps = vec![holds("A ⊆ B")];
    for (name, u) in [("F/A", a), ("F/B", b)] {
        let h = format!("ℓ_1..ℓ_{t} filter regular on {name}");
        hyps.push(match filter_regular_failure(u, ells) {
            None => holds(&h),
            Some(k) => fails(&h, format!("ℓ_{}", k + 1)),
        });
    }
    let sa = plus_all(a, ells).saturation().quotient_series();
    let sb = plus_all(b, ells).saturation().quotient_series();
    let h = "HF((A+(ℓ)F)^sat) = HF((B+(ℓ)F)^sat)";
    hyps.push(if sa == sb { holds(h) } else { fails(h, format!("{sa:?} vs {sb:?}")) });
    hyps.push(socle_inequality(&pa, &pb, 0..=t.min(n)));
    let e = pa.edepth().min(pb.edepth());
    let h = "min E-depth >= t - 1";
    hyps.push(if e + 1 >= t { holds(h) } else { fails(h, format!("E-depth {e}, t = {t}")) });
    Ok(SocleLemmaReport::conclude(hyps, a, b))
}

/// The sequentially Cohen–Macaulay socle lemma: socle inequality in every
/// cohomological degree forces `A = B`.
pub fn seq_cm_socle_check(a: &Submodule, b: &Submodule) -> Result<SocleLemmaReport> {
    check_containment(a, b)?;
    let n = a.ring().nvars();
    let (pa, pb) = (GradedPresentation::from_relations(a.clone()), GradedPresentation::from_relations(b.clone()));
    let mut hyps = vec![holds("A ⊆ B")];
    for (name, p) in [("F/A", &pa), ("F/B", &pb)] {
        let h = format!("{name} sequentially Cohen-Macaulay");
        hyps.push(if p.is_sequentially_cm() { holds(&h) } else { fails(&h, format!("E-depth {}", p.edepth())) });
    }
    hyps.push(socle_inequality(&pa, &pb, 0..=n));
    Ok(SocleLemmaReport::conclude(hyps, a, b))
}

/// `t` random linear forms (nonzero coefficient on every variable).
pub fn random_linear_forms(ring: &Ring, t: usize, seed: u64) -> Vec<PolyVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ring.characteristic();
    (0..t)
        .map(|_| {
            let terms = (0..ring.nvars()).map(|i| Term::new(rng.gen_range(1..p), Monomial::var(i), 0)).collect();
            PolyVector::from_terms(ring.field(), terms)
        })
        .collect()
}

/// Which lemma a harness exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Artinian,
    FilterRegular,
    Sequential,
}

impl PairKind {
    pub const ALL: [PairKind; 3] = [PairKind::Artinian, PairKind::FilterRegular, PairKind::Sequential];
}

/// A strict pair `A ⊊ B` and the data the lemma needs.
#[derive(Clone, Debug)]
pub struct StrictPair {
    pub kind: PairKind,
    pub a: Submodule,
    pub b: Submodule,
    /// `C` for the finite-length lemma.
    pub c: Option<Submodule>,
    pub ells: Vec<PolyVector>,
}

impl StrictPair {
    pub fn check(&self) -> Result<SocleLemmaReport> {
        match self.kind {
            PairKind::Artinian => artinian_socle_check(&self.a, &self.b, self.c.as_ref().expect("C is set")),
            PairKind::FilterRegular => socle_lemma_check(&self.a, &self.b, &self.ells),
            PairKind::Sequential => seq_cm_socle_check(&self.a, &self.b),
        }
    }

    /// The pair in the text grammar, for reproducing a failure.
    pub fn fixture(&self) -> String {
        let mut s = self.a.ring().header();
        s.push('\n');
        s.push_str(&submodule_text("A", &self.a));
        s.push_str(&submodule_text("B", &self.b));
        if let Some(c) = &self.c {
            s.push_str(&submodule_text("C", c));
        }
        if !self.ells.is_empty() {
            let ells = self.a.with_gens(self.ells.clone());
            s.push_str(&submodule_text("ELLS", &ells));
        }
        s
    }
}

/// Monomials of degree `<= max_deg` outside the monomial ideal `a`.
fn standard_monomials(a: &Submodule, max_deg: u32) -> Vec<Monomial> {
    let n = a.ring().nvars();
    (0..=max_deg)
        .flat_map(|d| monomials_of_degree(n, d))
        .filter(|m| !a.contains(&PolyVector::monomial(*m, 0)))
        .collect()
}

fn with_pure_powers(a: &Submodule, rng: &mut ChaCha8Rng) -> Submodule {
    let n = a.ring().nvars();
    let mut gens = a.gens().to_vec();
    for i in 0..n {
        gens.push(PolyVector::monomial(Monomial::var_pow(i, rng.gen_range(2..=4)), 0));
    }
    a.with_gens(gens).minimalized()
}

/// A random element of `big` outside `small`, times a random monomial of degree at most one.
fn element_outside(big: &Submodule, small: &Submodule, rng: &mut ChaCha8Rng) -> Option<PolyVector> {
    let mut cands: Vec<PolyVector> = big.minimal_generators().into_iter().filter(|g| !small.contains(g)).collect();
    cands.shuffle(rng);
    let g = cands.into_iter().next()?;
    let n = big.ring().nvars();
    if rng.gen_bool(0.4) {
        let v = g.mul_monomial(&Monomial::var(rng.gen_range(0..n)));
        if !small.contains(&v) {
            return Some(v);
        }
    }
    Some(g)
}

/// Draws a strict pair for `kind` over `ring`; `None` when the draw is not strict.
pub fn random_strict_pair(kind: PairKind, ring: Ring, rng: &mut ChaCha8Rng) -> Option<StrictPair> {
    let f = ring.field();
    match kind {
        PairKind::Artinian => {
            let gens = rng.gen_range(0..=3);
            let a = with_pure_powers(&random_monomial_ideal(ring, rng, gens.max(1), 3), rng);
            let std = standard_monomials(&a, 8);
            let m = *std.choose(rng)?;
            let mut extra = PolyVector::monomial(m, 0);
            let same: Vec<&Monomial> = std.iter().filter(|o| o.degree() == m.degree() && **o != m).collect();
            if let Some(o) = same.choose(rng) {
                if rng.gen_bool(0.5) {
                    extra = extra.add(&PolyVector::term(rng.gen_range(1..f.characteristic()), **o, 0), f);
                }
            }
            let b = a.with_gens(a.gens().iter().cloned().chain([extra]).collect());
            let c = Submodule::whole(ring, a.ambient().clone());
            Some(StrictPair { kind, a, b, c: Some(c), ells: Vec::new() })
        }
        PairKind::Sequential => {
            let gens = rng.gen_range(1..=3);
            let a = random_monomial_ideal(ring, rng, gens, 3);
            let std = standard_monomials(&a, 5);
            let m = *std.iter().filter(|m| m.degree() > 0).collect::<Vec<_>>().choose(rng)?;
            let b = a.with_gens(a.gens().iter().cloned().chain([PolyVector::monomial(*m, 0)]).collect());
            Some(StrictPair { kind, a, b, c: None, ells: Vec::new() })
        }
        PairKind::FilterRegular => {
            let gens = rng.gen_range(1..=3);
            let a = random_monomial_ideal(ring, rng, gens, 3);
            let t = rng.gen_range(1..=ring.nvars().saturating_sub(1).max(1));
            let ells = random_linear_forms(&ring, t, rng.gen());
            let sat = plus_all(&a, &ells).saturation();
            let extra = element_outside(&sat, &a, rng)?;
            let b = a.with_gens(a.gens().iter().cloned().chain([extra]).collect());
            Some(StrictPair { kind, a, b, c: None, ells })
        }
    }
}

/// Aggregate of a harness run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct HarnessSummary {
    pub drawn: usize,
    /// Strict pairs meeting every hypothesis other than the socle inequality.
    pub qualified: usize,
    /// Qualified pairs on which the socle inequality fails.
    pub socle_inequality_failed: usize,
    /// Fixtures of pairs with every hypothesis met and `A ≠ B`.
    pub counterexamples: Vec<String>,
}

impl HarnessSummary {
    pub fn merge(&mut self, other: HarnessSummary) {
        self.drawn += other.drawn;
        self.qualified += other.qualified;
        self.socle_inequality_failed += other.socle_inequality_failed;
        self.counterexamples.extend(other.counterexamples);
    }
}

/// Classifies one strict pair into a harness summary.
pub fn evaluate_pair(pair: &StrictPair) -> Result<HarnessSummary> {
    let mut s = HarnessSummary { drawn: 1, ..Default::default() };
    if pair.a.contains_submodule(&pair.b) {
        return Ok(s);
    }
    let r = pair.check()?;
    let others_hold = r.hypotheses.iter().filter(|h| !h.name.starts_with("HF(soc")).all(|h| h.holds);
    if !others_hold {
        return Ok(s);
    }
    s.qualified = 1;
    match r.verdict {
        Verdict::HypothesisUnmet => s.socle_inequality_failed = 1,
        Verdict::Counterexample => s.counterexamples.push(pair.fixture()),
        Verdict::Equal => unreachable!("the pair is strict"),
    }
    Ok(s)
}

/// Draws `count` pairs of `kind` in `n` variables from `seed` and evaluates them.
pub fn run_harness(kind: PairKind, n: usize, count: usize, seed: u64) -> Result<HarnessSummary> {
    let ring = Ring::with_vars(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = HarnessSummary::default();
    for _ in 0..count {
        match random_strict_pair(kind, ring, &mut rng) {
            Some(pair) => total.merge(evaluate_pair(&pair)?),
            None => total.drawn += 1,
        }
    }
    Ok(total)
}
