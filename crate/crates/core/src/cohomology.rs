//! Local cohomology tables through graded local duality, socle tables, the
//! filtration modules `M_i` and the family `N_j`.
//!
//! A row is stored as a Hilbert series in `w = z^{-1}`: the coefficient of
//! `w^k` is `h^i_{-k} = dim H^i_m(M)_{-k}`. With this convention
//! `row_i(w) = w^n HS(Ext^{n-i}(M, S))(w)`, a rational function with
//! denominator `(1 - w)^d`, `d <= i`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hilbert::{HilbertSeries, LaurentPoly};
use crate::poly::PolyVector;
use crate::resolution::GradedPresentation;
use crate::submodule::Submodule;

/// `[H^•_m(M)]`: rows `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyTable {
    pub n: usize,
    pub rows: Vec<HilbertSeries>,
}

impl CohomologyTable {
    pub fn zero(n: usize) -> Self {
        CohomologyTable { n, rows: vec![HilbertSeries::zero(); n + 1] }
    }

    /// `h^i_j`.
    pub fn h(&self, i: usize, j: i32) -> i64 {
        self.rows[i].coeff(-j)
    }

    /// The row as a finite list `(j, h^i_j)` when it has finite support.
    pub fn finite_row(&self, i: usize) -> Option<Vec<(i32, i64)>> {
        self.rows[i].finite_values().map(|v| {
            let mut out: Vec<(i32, i64)> = v.into_iter().map(|(k, c)| (-k, c)).collect();
            out.sort();
            out
        })
    }

    /// The `Δ`-transform of row `i`: `row_i (1 - w)^i`, as a Laurent polynomial in `w`.
    pub fn delta_row(&self, i: usize) -> LaurentPoly {
        self.rows[i]
            .times_one_minus_z_pow(i as u32)
            .expect("row i of a local cohomology table has a pole of order at most i")
    }

    /// Entrywise sum (tables of a direct sum).
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        CohomologyTable { n: self.n, rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.add(b)).collect() }
    }

    /// Whether every row vanishes.
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    /// Tail polynomiality: `row_i (1 - w)^i` is a Laurent polynomial for every `i`.
    pub fn rows_have_polynomial_tails(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.denominator_power() as usize <= i)
    }

    /// Entries `h^i_j` for `j` in `[a, b]`.
    pub fn window(&self, a: i32, b: i32) -> Vec<Vec<i64>> {
        (0..=self.n).map(|i| (a..=b).map(|j| self.h(i, j)).collect()).collect()
    }

    /// `{"rows": [{"i": i, "entries": [[j, h^i_j], ..]}, ..], "window": [a, b]}`, every `j` in the window.
    pub fn to_json(&self, window: (i32, i32)) -> Value {
        let rows: Vec<Value> = (0..=self.n)
            .map(|i| {
                let entries: Vec<Value> = (window.0..=window.1).map(|j| json!([j, self.h(i, j)])).collect();
                json!({"i": i, "entries": entries})
            })
            .collect();
        json!({"rows": rows, "window": [window.0, window.1]})
    }
}

/// `HF(soc H^i_m(M))` for each `i`, as sparse `degree -> dimension` maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SocleTable {
    pub n: usize,
    pub rows: Vec<BTreeMap<i32, usize>>,
}

impl SocleTable {
    pub fn get(&self, i: usize, j: i32) -> usize {
        self.rows[i].get(&j).copied().unwrap_or(0)
    }

    /// `{"rows": [{"i": i, "entries": [[j, dim], ..]}, ..]}`, nonzero entries only.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| json!({"i": i, "entries": r.iter().map(|(j, v)| json!([j, v])).collect::<Vec<_>>()}))
            .collect();
        json!({"rows": rows})
    }

    /// First `(i, j)` where `self > other`, if any.
    pub fn first_excess(&self, other: &SocleTable, rows: std::ops::RangeInclusive<usize>) -> Option<(usize, i32)> {
        for i in rows {
            for (&j, &v) in &self.rows[i] {
                if v > other.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// `HS(H^i_m(M))` in `w = z^{-1}`.
pub fn lc_row(m: &GradedPresentation, i: usize) -> Result<HilbertSeries> {
    let n = m.nvars();
    if i > n {
        return Err(Error::OutOfRange(format!("cohomological index {i} exceeds n = {n}")));
    }
    let ext = m.ext(n - i)?;
    let hs = ext.hilbert_series();
    Ok(HilbertSeries::new(hs.numerator().shift(n as i32), hs.denominator_power()))
}

pub fn lc_table(m: &GradedPresentation) -> CohomologyTable {
    let n = m.nvars();
    CohomologyTable { n, rows: (0..=n).map(|i| lc_row(m, i).expect("index in range")).collect() }
}

/// Socle dimensions of `H^i_m(M)`: minimal generators of `Ext^{n-i}(M, S)` in
/// degree `-j-n` give socle elements of `H^i` in degree `j`.
pub fn socle_table(m: &GradedPresentation) -> SocleTable {
    let n = m.nvars();
    let rows = (0..=n)
        .map(|i| {
            let ext = &m.all_ext()[n - i];
            ext.minimal_generator_degrees().into_iter().map(|(d, c)| (-d - n as i32, c)).collect()
        })
        .collect();
    SocleTable { n, rows }
}

/// `HS(H^0_m(F/U)) = HS(U^sat / U)` in `z`, computed by saturation.
pub fn h0_by_saturation(m: &GradedPresentation) -> HilbertSeries {
    let sat = m.relations().saturation();
    m.hilbert_series().sub(&sat.quotient_series())
}

/// `HS(H^j_m(S_j))` in `w`: `w^j / (1 - w)^j`.
pub fn top_cohomology_of_polynomial_ring(j: usize) -> HilbertSeries {
    HilbertSeries::new(LaurentPoly::monomial(1, j as i32), j as u32)
}

/// The table of `N ⊗_k k[y_1..y_j]` over `S_{n+j}` from the table of `N` over `S_n`.
pub fn kunneth_lift(table: &CohomologyTable, j: usize) -> CohomologyTable {
    let factor = top_cohomology_of_polynomial_ring(j);
    let n = table.n + j;
    let mut rows = vec![HilbertSeries::zero(); n + 1];
    for (i, r) in table.rows.iter().enumerate() {
        rows[i + j] = r.mul(&factor);
    }
    CohomologyTable { n, rows }
}

/// Checks that `x_n, .., x_{n-t+1}` is a filter regular sequence on `F/U`.
pub fn check_filter_regular_tail(u: &Submodule, t: usize) -> Result<()> {
    let n = u.ring().nvars();
    let mut cur = u.clone();
    for k in 0..t {
        let j = n - 1 - k;
        let m = GradedPresentation::from_relations(cur.clone());
        if !m.is_filter_regular(&PolyVector::var(j)) {
            return Err(Error::NotFilterRegular(format!("x{} on the quotient by the previous variables", j + 1)));
        }
        cur = cur.plus_var_multiple(j);
    }
    Ok(())
}

/// Hilbert series of the filtration quotients `M_0, .., M_t` of `M = F/U`
/// (`Q_i = (x_{n-i+1}, .., x_n) M :_M x_{n-i}^∞`, `M_i = Q_i / (Q_{i-1} + x_{n-i+1} M)`),
/// with `Q_n = M`.
pub fn filtration_modules(m: &GradedPresentation, t: usize) -> Result<Vec<HilbertSeries>> {
    let u = m.relations();
    let n = u.ring().nvars();
    if t > n {
        return Err(Error::OutOfRange(format!("t = {t} exceeds n = {n}")));
    }
    check_filter_regular_tail(u, t)?;
    let whole = Submodule::whole(*u.ring(), u.ambient().clone());
    let q = |i: usize| -> Submodule {
        if i == n {
            return whole.clone();
        }
        let mut base = u.clone();
        for k in 0..i {
            base = base.plus_var_multiple(n - 1 - k);
        }
        base.colon_var(n - 1 - i, None)
    };
    let mut out = Vec::with_capacity(t + 1);
    let mut prev = q(0);
    out.push(m.hilbert_series().sub(&prev.quotient_series()));
    for i in 1..=t {
        let cur = q(i);
        let lower = prev.plus_var_multiple(n - i);
        out.push(lower.quotient_series().sub(&cur.quotient_series()));
        prev = cur;
    }
    Ok(out)
}

/// The family `N_n, N_{n-1}, .., N_{n-t}`: `N_{j-1} = (U_j : x_j^∞ + x_j F) / x_j F`
/// over `k[x_1..x_{j-1}]`.
pub fn family_n(m: &GradedPresentation, t: usize) -> Result<Vec<GradedPresentation>> {
    let u = m.relations();
    let n = u.ring().nvars();
    if t > n {
        return Err(Error::OutOfRange(format!("t = {t} exceeds n = {n}")));
    }
    if !u.is_multihomogeneous(t) {
        return Err(Error::NotMultihomogeneous(t));
    }
    check_filter_regular_tail(u, t)?;
    let mut out = vec![m.clone()];
    let mut cur = u.clone();
    for k in 0..t {
        let j = n - 1 - k;
        cur = cur.colon_var(j, None).quotient_mod_variable(j);
        out.push(GradedPresentation::from_relations(cur.clone()));
    }
    Ok(out)
}
