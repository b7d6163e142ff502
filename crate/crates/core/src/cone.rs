//! `Δ`-tables of local cohomology tables, the functionals `μ`, `τ`, `π` that
//! cut out the cones of tables, the extremal rays `S_i(-j)` and `J^m(-j)` with
//! `J = (x_1, x_2)`, and decomposition of a table into those rays.
//!
//! Column convention: entry `(i, j)` of `Δ[H(M)]` is the coefficient of
//! `u^i z^j` in `HS(H^i) (1 - z^{-1})^i`, so `Δ[H(S_i(-i))]` is a single `1`
//! at `(i, 0)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::cohomology::{filtration_modules, lc_table, CohomologyTable};
use crate::corpus::j_power;
use crate::error::{Error, Result};
use crate::gin::{gin_rev_t, GenericityCertificate};
use crate::lp::nonnegative_solution;
use crate::poly::PolyVector;
use crate::resolution::{subquotient, GradedPresentation};
use crate::ring::{FreeModule, Ring};
use crate::submodule::Submodule;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn rational_json(v: &BigRational) -> (Value, Value) {
    (json!(v.numer().to_i64()), json!(v.denom().to_i64()))
}

/// A finitely supported table `(a_{i,j})`, `0 <= i <= n`, with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaTable {
    n: usize,
    entries: BTreeMap<(usize, i32), BigRational>,
}

impl DeltaTable {
    pub fn zero(n: usize) -> Self {
        DeltaTable { n, entries: BTreeMap::new() }
    }

    /// From integer entries `(i, j, a_{i,j})`; repeated positions add up.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, i32, i64)>) -> Self {
        let mut t = Self::zero(n);
        for (i, j, v) in entries {
            t.add_at(i, j, &q(v));
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: i32) -> BigRational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i32, &BigRational)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (i32, &BigRational)> {
        self.entries.range((i, i32::MIN)..=(i, i32::MAX)).map(|(&(_, j), v)| (j, v))
    }

    pub fn add_at(&mut self, i: usize, j: i32, v: &BigRational) {
        assert!(i <= self.n, "row {i} outside a table with n = {}", self.n);
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j)).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &DeltaTable, c: &BigRational) {
        assert_eq!(self.n, other.n);
        for (i, j, v) in other.entries() {
            self.add_at(i, j, &(v * c));
        }
    }

    pub fn sub(&self, other: &DeltaTable) -> DeltaTable {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }

    /// Moves every entry `k` columns to the right (the table of `M(-k)`).
    pub fn shifted(&self, k: i32) -> DeltaTable {
        DeltaTable { n: self.n, entries: self.entries.iter().map(|(&(i, j), v)| ((i, j + k), v.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|v| !v.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    /// Smallest and largest column carrying a nonzero entry.
    pub fn support(&self) -> Option<(i32, i32)> {
        let lo = self.entries.keys().map(|k| k.1).min()?;
        let hi = self.entries.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }

    /// Support restricted to the rows in `rows`.
    pub fn support_in_rows(&self, rows: std::ops::RangeInclusive<usize>) -> Option<(i32, i32)> {
        let cols: Vec<i32> = self.entries.keys().filter(|k| rows.contains(&k.0)).map(|k| k.1).collect();
        Some((*cols.iter().min()?, *cols.iter().max()?))
    }

    pub fn within(&self, a: i32, b: i32) -> bool {
        self.entries.keys().all(|&(_, j)| a <= j && j <= b)
    }

    /// `{"n": n, "rows": [{"i": i, "entries": [[j, num, den], ..]}, ..], "window": [a, b]}`.
    pub fn to_json(&self, window: (i32, i32)) -> Value {
        let rows: Vec<Value> = (0..=self.n)
            .map(|i| {
                let entries: Vec<Value> = self
                    .row(i)
                    .map(|(j, v)| {
                        let (num, den) = rational_json(v);
                        json!([j, num, den])
                    })
                    .collect();
                json!({"i": i, "entries": entries})
            })
            .collect();
        json!({"n": self.n, "rows": rows, "window": [window.0, window.1]})
    }
}

/// `Δ[T]`: row `i` is `HS(H^i) (1 - z^{-1})^i`.
pub fn delta(t: &CohomologyTable) -> DeltaTable {
    let mut out = DeltaTable::zero(t.n);
    for i in 0..=t.n {
        for (e, c) in t.delta_row(i).terms() {
            out.add_at(i, -e, &q(c));
        }
    }
    out
}

/// `μ^{(i)}_j(A) = a_{i,j}`.
pub fn mu(a: &DeltaTable, i: usize, j: i32) -> BigRational {
    a.get(i, j)
}

fn sum_row(a: &DeltaTable, i: Option<usize>, pred: impl Fn(i32) -> bool) -> BigRational {
    match i {
        Some(i) if i <= a.n => a.row(i).filter(|(s, _)| pred(*s)).map(|(_, v)| v.clone()).sum(),
        _ => BigRational::zero(),
    }
}

/// `τ_j(A) = a_{n-1,j} + Σ_{s <= j-1} a_{n,s}`.
pub fn tau(a: &DeltaTable, j: i32) -> BigRational {
    let n = a.n;
    let top = n.checked_sub(1).map(|i| a.get(i, j)).unwrap_or_else(BigRational::zero);
    top + sum_row(a, Some(n), |s| s < j)
}

/// `π_{m,j}(A) = Σ_{s > j+m} a_{n-1,s} + (m+1) a_{n-1,j+m} + Σ_{s=0}^{m-1} (s+1) a_{n,j+s}`.
pub fn pi(a: &DeltaTable, m: u32, j: i32) -> BigRational {
    let n = a.n;
    let jm = j + m as i32;
    let mut v = sum_row(a, n.checked_sub(1), |s| s > jm);
    if let Some(i) = n.checked_sub(1) {
        v += a.get(i, jm) * q(m as i64 + 1);
    }
    for s in 0..m as i32 {
        v += a.get(n, j + s) * q(s as i64 + 1);
    }
    v
}

/// A supporting functional of the cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Functional {
    Mu { i: usize, j: i32 },
    Tau { j: i32 },
    Pi { m: u32, j: i32 },
}

impl Functional {
    pub fn eval(&self, a: &DeltaTable) -> BigRational {
        match *self {
            Functional::Mu { i, j } => mu(a, i, j),
            Functional::Tau { j } => tau(a, j),
            Functional::Pi { m, j } => pi(a, m, j),
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functional::Mu { i, j } => write!(f, "mu^({i})_{j}"),
            Functional::Tau { j } => write!(f, "tau_{j}"),
            Functional::Pi { m, j } => write!(f, "pi_({m},{j})"),
        }
    }
}

/// Which cone a membership test refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeMode {
    /// Tables of sequentially Cohen–Macaulay modules: every entry is nonnegative.
    Seq,
    /// Tables of modules of E-depth at least `n - 2`.
    Edepth,
}

/// The finite list of functionals defining the cone on tables supported in `[a, b]`.
///
/// The `π_{m,j}` family runs over `1 <= m <= b - a - 2`, `a + 1 <= j < b - m`.
/// For `n <= 1` every module is sequentially Cohen–Macaulay and only the `μ` appear.
pub fn hyperplanes(n: usize, a: i32, b: i32, mode: ConeMode) -> Vec<Functional> {
    let mut out = Vec::new();
    if mode == ConeMode::Seq || n <= 1 {
        for i in 0..=n {
            out.extend((a..=b).map(|j| Functional::Mu { i, j }));
        }
        return out;
    }
    for i in (0..=n - 2).chain([n]) {
        out.extend((a..=b).map(|j| Functional::Mu { i, j }));
    }
    out.extend((a..b).map(|j| Functional::Tau { j }));
    out.extend((a + 1..=b).map(|j| Functional::Pi { m: 0, j }));
    for m in 1..=(b - a - 2).max(0) {
        out.extend((a + 1..b - m).map(|j| Functional::Pi { m: m as u32, j }));
    }
    out
}

/// Outcome of a cone membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub window: (i32, i32),
    /// Functionals taking a negative value, with that value.
    pub violated: Vec<(Functional, BigRational)>,
}

/// Tests whether `A`, supported in `[a, b]`, satisfies every functional of the cone.
pub fn cone_membership(table: &DeltaTable, window: (i32, i32), mode: ConeMode) -> Result<Membership> {
    let (a, b) = window;
    if a > b || !table.within(a, b) {
        return Err(Error::OutOfRange(format!("table support {:?} is not inside [{a}, {b}]", table.support())));
    }
    let violated: Vec<(Functional, BigRational)> = hyperplanes(table.n, a, b, mode)
        .into_iter()
        .filter_map(|f| {
            let v = f.eval(table);
            v.is_negative().then_some((f, v))
        })
        .collect();
    Ok(Membership { member: violated.is_empty(), window, violated })
}

/// Support of the table, or `[0, 0]` for the zero table.
pub fn default_window(table: &DeltaTable) -> (i32, i32) {
    table.support().unwrap_or((0, 0))
}

/// Extra columns on each side of the support in exported tables.
pub const GUARD_COLUMNS: i32 = 2;

/// The support widened by [`GUARD_COLUMNS`] on both sides.
pub fn export_window(table: &DeltaTable) -> (i32, i32) {
    let (a, b) = default_window(table);
    (a - GUARD_COLUMNS, b + GUARD_COLUMNS)
}

/// An extremal ray of the cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ray {
    /// `[H(S_i(-j))]`, `S_i = k[x_1..x_i]`.
    S { i: usize, j: i32 },
    /// `[H(J^m(-j))]`, `J = (x_1, x_2) S`.
    J { m: u32, j: i32 },
}

/// `Δ[H(S_i(-j))]`: a single `1` at `(i, j - i)`.
pub fn s_ray_table(n: usize, i: usize, j: i32) -> DeltaTable {
    DeltaTable::from_entries(n, [(i, j - i as i32, 1)])
}

/// `J^m` as a module (not the quotient by it), over `S_n`.
pub fn j_power_module(ring: Ring, m: u32) -> GradedPresentation {
    let ideal: Submodule = j_power(ring, m);
    let gens: Vec<PolyVector> = ideal.gens().to_vec();
    subquotient(&ring, &FreeModule::free(1), &gens, &[])
}

/// `Δ[H(J^m(-j))]` over `S_n` computed directly from the presentation of `J^m`.
pub fn j_ray_table_direct(n: usize, m: u32, j: i32) -> DeltaTable {
    assert!(n >= 2 && m >= 1);
    delta(&lc_table(&j_power_module(Ring::with_vars(n), m))).shifted(j)
}

/// Ray tables of `J^m(-j)`, built from the table of `m_2^m` over `k[x_1, x_2]`
/// and lifted to `n` variables; the base tables are computed once per `m`.
#[derive(Default)]
pub struct RayBook {
    bases: HashMap<u32, DeltaTable>,
}

impl RayBook {
    pub fn new() -> Self {
        Self::default()
    }

    fn base(&mut self, m: u32) -> &DeltaTable {
        self.bases.entry(m).or_insert_with(|| j_ray_table_direct(2, m, 0))
    }

    /// `Δ[H(J^m(-j))]` over `S_n`: rows move up by `n - 2` and columns by `j - (n - 2)`.
    pub fn j_ray(&mut self, n: usize, m: u32, j: i32) -> DeltaTable {
        assert!(n >= 2 && m >= 1, "J-rays need n >= 2 and m >= 1");
        let lift = n - 2;
        let base = self.base(m);
        let mut out = DeltaTable::zero(n);
        for (i, c, v) in base.entries() {
            out.add_at(i + lift, c - lift as i32 + j, v);
        }
        out
    }

    pub fn ray(&mut self, n: usize, ray: Ray) -> DeltaTable {
        match ray {
            Ray::S { i, j } => s_ray_table(n, i, j),
            Ray::J { m, j } => self.j_ray(n, m, j),
        }
    }
}

/// Nonnegative coefficients `r_{i,j}` on `[H(S_i(-j))]` and `r'_{m,j}` on `[H(J^m(-j))]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RayCoefficients {
    pub n: usize,
    pub s: BTreeMap<(usize, i32), BigRational>,
    pub j: BTreeMap<(u32, i32), BigRational>,
}

impl RayCoefficients {
    pub fn new(n: usize) -> Self {
        RayCoefficients { n, ..Default::default() }
    }

    fn add_s(&mut self, i: usize, j: i32, v: BigRational) {
        if !v.is_zero() {
            *self.s.entry((i, j)).or_insert_with(BigRational::zero) += v;
        }
    }

    fn add_j(&mut self, m: u32, j: i32, v: BigRational) {
        if !v.is_zero() {
            *self.j.entry((m, j)).or_insert_with(BigRational::zero) += v;
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.s.values().chain(self.j.values()).all(|v| !v.is_negative())
    }

    pub fn s_integral(&self) -> bool {
        self.s.values().all(|v| v.is_integer())
    }

    /// `{"S_rays": [[i, j, num, den], ..], "J_rays": [[m, j, num, den], ..]}`.
    pub fn to_json(&self) -> Value {
        let s: Vec<Value> = self
            .s
            .iter()
            .map(|(&(i, j), v)| {
                let (num, den) = rational_json(v);
                json!([i, j, num, den])
            })
            .collect();
        let jr: Vec<Value> = self
            .j
            .iter()
            .map(|(&(m, j), v)| {
                let (num, den) = rational_json(v);
                json!([m, j, num, den])
            })
            .collect();
        json!({"S_rays": s, "J_rays": jr})
    }
}

/// `Σ r_{i,j} Δ[H(S_i(-j))] + Σ r'_{m,j} Δ[H(J^m(-j))]`.
pub fn reconstruct(c: &RayCoefficients) -> DeltaTable {
    let mut book = RayBook::new();
    reconstruct_with(c, &mut book)
}

pub fn reconstruct_with(c: &RayCoefficients, book: &mut RayBook) -> DeltaTable {
    let mut out = DeltaTable::zero(c.n);
    for (&(i, j), v) in &c.s {
        out.add_scaled(&s_ray_table(c.n, i, j), v);
    }
    for (&(m, j), v) in &c.j {
        out.add_scaled(&book.j_ray(c.n, m, j), v);
    }
    out
}

/// A decomposition together with what it was computed from.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub coefficients: RayCoefficients,
    pub delta: DeltaTable,
    pub edepth: usize,
    pub sequentially_cm: bool,
    /// Certificate of the `gin_{rev_{n-2}}` used for the low rows, when one was needed.
    pub certificate: Option<GenericityCertificate>,
}

/// Maximum number of window enlargements tried by the last-rows solve.
const SOLVE_ATTEMPTS: usize = 4;

/// Writes `Δ[H(M)]` as a nonnegative combination of ray tables.
///
/// Sequentially Cohen–Macaulay modules are read off entrywise. Otherwise
/// `E-depth(M) >= n - 2` is required: rows `0..n-3` come from the filtration of
/// `F / gin_{rev_{n-2}}(U)` and rows `n-2..n` from an exact feasibility solve
/// against the `S_{n-1}`, `S_n` and `J^m` rays.
pub fn decompose(m: &GradedPresentation, seed: u64) -> Result<Decomposition> {
    let n = m.nvars();
    let table = delta(&lc_table(m));
    let edepth = m.edepth();
    if edepth == n {
        let coefficients = decompose_sequential(&table)?;
        return Ok(Decomposition { coefficients, delta: table, edepth, sequentially_cm: true, certificate: None });
    }
    if edepth + 2 < n {
        return Err(Error::EdepthTooSmall { edepth, required: n - 2 });
    }
    let mut c = RayCoefficients::new(n);
    let mut certificate = None;
    if n >= 3 {
        let g = gin_rev_t(m.relations(), n - 2, seed)?;
        let quotient = GradedPresentation::from_relations(g.gin.clone());
        let filtration = filtration_modules(&quotient, n - 2)?;
        for (i, mi) in filtration.iter().take(n - 2).enumerate() {
            let values = mi.finite_values().ok_or_else(|| Error::CertificationFailed {
                retries: g.certificate.retries,
                detail: format!("filtration module M_{i} is not of finite length"),
            })?;
            let mut row = DeltaTable::zero(n);
            for (j, r) in values {
                c.add_s(i, j, q(r));
                row.add_at(i, j - i as i32, &q(r));
            }
            let expected: Vec<_> = table.row(i).map(|(j, v)| (j, v.clone())).collect();
            let got: Vec<_> = row.row(i).map(|(j, v)| (j, v.clone())).collect();
            if expected != got {
                return Err(Error::CertificationFailed {
                    retries: g.certificate.retries,
                    detail: format!("filtration module M_{i} does not match row {i} of the table"),
                });
            }
        }
        certificate = Some(g.certificate);
    }
    for (col, v) in table.row(n - 2) {
        if v.is_negative() {
            return Err(Error::Infeasible(format!("negative entry at ({}, {col})", n - 2)));
        }
        c.add_s(n - 2, col + (n - 2) as i32, v.clone());
    }
    solve_last_rows(&table, &mut c)?;
    Ok(Decomposition { coefficients: c, delta: table, edepth, sequentially_cm: false, certificate })
}

/// Entrywise reading of a table with nonnegative entries: `r_{i, j+i} = a_{i,j}`.
pub fn decompose_sequential(table: &DeltaTable) -> Result<RayCoefficients> {
    let mut c = RayCoefficients::new(table.n);
    for (i, j, v) in table.entries() {
        if v.is_negative() {
            return Err(Error::Infeasible(format!("negative entry {v} at ({i}, {j}) of a sequentially Cohen-Macaulay table")));
        }
        c.add_s(i, j + i as i32, v.clone());
    }
    Ok(c)
}

/// Rows `n-1` and `n`: `S_{n-1}`, `S_n` and `J^m` rays supported in a window
/// around the support, enlarged on infeasibility.
fn solve_last_rows(table: &DeltaTable, c: &mut RayCoefficients) -> Result<()> {
    let n = table.n;
    let Some((lo, hi)) = table.support_in_rows(n - 1..=n) else { return Ok(()) };
    let mut book = RayBook::new();
    let mut pad = 0;
    for _ in 0..SOLVE_ATTEMPTS {
        let (a, b) = (lo - pad, hi + pad);
        let rays = candidate_rays(n, a, b, &mut book);
        let width = (b - a + 1) as usize;
        let idx = |i: usize, j: i32| (i - (n - 1)) * width + (j - a) as usize;
        let mut mat = vec![vec![BigRational::zero(); rays.len()]; 2 * width];
        for (k, (_, t)) in rays.iter().enumerate() {
            for (i, j, v) in t.entries() {
                mat[idx(i, j)][k] = v.clone();
            }
        }
        let mut rhs = vec![BigRational::zero(); 2 * width];
        for i in n - 1..=n {
            for (j, v) in table.row(i) {
                rhs[idx(i, j)] = v.clone();
            }
        }
        if let Some(x) = nonnegative_solution(&mat, &rhs) {
            for ((ray, _), v) in rays.iter().zip(x) {
                match *ray {
                    Ray::S { i, j } => c.add_s(i, j, v),
                    Ray::J { m, j } => c.add_j(m, j, v),
                }
            }
            return Ok(());
        }
        pad = if pad == 0 { 2 } else { 2 * pad };
    }
    Err(Error::Infeasible(format!("no nonnegative combination of rays reproduces rows {}..{n} on columns [{lo}, {hi}]", n - 1)))
}

/// Rays touching only rows `n-1..n` whose tables lie inside `[a, b]`.
pub fn candidate_rays(n: usize, a: i32, b: i32, book: &mut RayBook) -> Vec<(Ray, DeltaTable)> {
    let mut out = Vec::new();
    for i in [n - 1, n] {
        for col in a..=b {
            let ray = Ray::S { i, j: col + i as i32 };
            out.push((ray, book.ray(n, ray)));
        }
    }
    let max_m = (b - a + 1).max(1) as u32;
    for m in 1..=max_m {
        let (l, h) = book.j_ray(n, m, 0).support().expect("J-ray tables are nonzero");
        for j in a - l..=b - h {
            let ray = Ray::J { m, j };
            out.push((ray, book.ray(n, ray)));
        }
    }
    out
}

/// Whether `ray` is not a nonnegative combination of the other candidate rays
/// supported in `[a, b]`.
pub fn is_extremal_in_window(n: usize, ray: Ray, a: i32, b: i32) -> bool {
    let mut book = RayBook::new();
    let target = book.ray(n, ray);
    let mut others: Vec<DeltaTable> = Vec::new();
    for i in 0..=n {
        for col in a..=b {
            let r = Ray::S { i, j: col + i as i32 };
            if r != ray {
                others.push(book.ray(n, r));
            }
        }
    }
    if n >= 2 {
        others.extend(candidate_rays(n, a, b, &mut book).into_iter().filter(|(r, _)| matches!(r, Ray::J { .. }) && *r != ray).map(|(_, t)| t));
    }
    let width = (b - a + 1) as usize;
    let idx = |i: usize, j: i32| i * width + (j - a) as usize;
    let rows = (n + 1) * width;
    let mut mat = vec![vec![BigRational::zero(); others.len()]; rows];
    for (k, t) in others.iter().enumerate() {
        for (i, j, v) in t.entries() {
            mat[idx(i, j)][k] = v.clone();
        }
    }
    let mut rhs = vec![BigRational::zero(); rows];
    for (i, j, v) in target.entries() {
        if j < a || j > b {
            return true;
        }
        rhs[idx(i, j)] = v.clone();
    }
    nonnegative_solution(&mat, &rhs).is_none()
}

/// `S_i(-j) = (S / (x_{i+1}, .., x_n))(-j)` over `ring`.
pub fn truncated_ring(ring: Ring, i: usize, j: i32) -> GradedPresentation {
    let n = ring.nvars();
    assert!(i <= n);
    let gens = (i..n).map(PolyVector::var).collect();
    let rel = Submodule::new(ring, FreeModule::new(vec![j]), gens).expect("variables generate a homogeneous submodule");
    GradedPresentation::from_relations(rel)
}

/// The direct sum `⊕ S_i(-j-i)^{a_{i,j}}` realizing a table with nonnegative integer entries.
pub fn realize_sequential(ring: Ring, table: &DeltaTable) -> Result<GradedPresentation> {
    if table.n != ring.nvars() {
        return Err(Error::AmbientMismatch(format!("table has n = {}, ring has {} variables", table.n, ring.nvars())));
    }
    let mut out = GradedPresentation::free(ring, FreeModule::zero());
    for (i, j, v) in table.entries() {
        if v.is_negative() || !v.is_integer() {
            return Err(Error::OutOfRange(format!("entry {v} at ({i}, {j}) is not a nonnegative integer")));
        }
        let k = v.to_integer().to_u32().ok_or_else(|| Error::OutOfRange("entry too large".into()))?;
        let piece = truncated_ring(ring, i, j + i as i32);
        for _ in 0..k {
            out = out.direct_sum(&piece);
        }
    }
    Ok(out)
}
