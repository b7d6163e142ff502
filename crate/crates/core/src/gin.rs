//! Partial generic initial submodules `gin_{rev_t}(U)` and the checks built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{lc_table, CohomologyTable};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::{PolyVector, Term};
use crate::resolution::GradedPresentation;
use crate::submodule::Submodule;

/// Number of certification attempts before giving up.
pub const DEFAULT_RETRIES: usize = 5;

/// Record of the two-sample agreement test behind a gin computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericityCertificate {
    pub seeds: (u64, u64),
    pub agreed: bool,
    pub retries: usize,
    /// Invariants compared between the samples.
    pub compared: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct GinResult {
    pub gin: Submodule,
    pub certificate: GenericityCertificate,
    /// The matrix whose rows are the linear forms sent to `x_{n-t+1}, .., x_n`.
    pub change: Matrix,
}

/// A random upper-triangular change of the last `t` coordinates: identity on
/// `x_1..x_{n-t}`; row `i > n-t` is a linear form supported on `x_1..x_i` with
/// a nonzero coefficient on `x_i`.
pub fn random_change(field: &Field, n: usize, t: usize, seed: u64) -> Matrix {
    assert!(t <= n);
    let p = field.characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::identity(n);
    for i in n - t..n {
        for k in 0..i {
            m.set(i, k, rng.gen_range(0..p));
        }
        m.set(i, i, rng.gen_range(1..p));
    }
    m
}

/// Applies the change of coordinates sending the linear form `row_i(g) . x` to `x_i`:
/// each variable is replaced by the corresponding entry of `g^{-1} x`.
pub fn apply_coordinate_change(u: &Submodule, g: &Matrix) -> Result<Submodule> {
    let n = u.ring().nvars();
    if g.rows() != n || g.cols() != n {
        return Err(Error::OutOfRange(format!("coordinate change must be {n}x{n}")));
    }
    let field = u.ring().field();
    let inv = g.inverse(field)?;
    let images: Vec<PolyVector> = (0..n)
        .map(|k| {
            let terms = (0..n).map(|m| Term::new(inv.get(k, m), Monomial::var(m), 0)).collect();
            PolyVector::from_terms(field, terms)
        })
        .collect();
    Ok(u.substitute(&images))
}

fn sample(u: &Submodule, t: usize, seed: u64) -> Result<(Submodule, Matrix)> {
    let n = u.ring().nvars();
    let g = random_change(u.ring().field(), n, t, seed);
    let moved = apply_coordinate_change(u, &g)?;
    let init = moved.initial_submodule(TermOrder::rev(n, t)).minimalized();
    Ok((init, g))
}

/// `gin_{rev_t}(U)`, certified by two independent samples agreeing on the
/// Hilbert series of the quotient and on every local cohomology row.
pub fn gin_rev_t(u: &Submodule, t: usize, seed: u64) -> Result<GinResult> {
    gin_rev_t_with_retries(u, t, seed, DEFAULT_RETRIES)
}

pub fn gin_rev_t_with_retries(u: &Submodule, t: usize, seed: u64, retries: usize) -> Result<GinResult> {
    let n = u.ring().nvars();
    if t > n {
        return Err(Error::OutOfRange(format!("t = {t} exceeds n = {n}")));
    }
    if !u.is_homogeneous() {
        return Err(Error::NotHomogeneous("gin needs a homogeneous submodule".into()));
    }
    let compared = vec!["quotient Hilbert series".to_string(), "local cohomology rows".to_string()];
    if t == 0 {
        return Ok(GinResult {
            gin: u.clone(),
            certificate: GenericityCertificate { seeds: (seed, seed), agreed: true, retries: 0, compared },
            change: Matrix::identity(n),
        });
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for attempt in 0..retries.max(1) {
        let (s1, s2): (u64, u64) = (master.gen(), master.gen());
        let (a, ga) = sample(u, t, s1)?;
        let (b, _) = sample(u, t, s2)?;
        let pa = GradedPresentation::from_relations(a.clone());
        let pb = GradedPresentation::from_relations(b);
        let (ha, hb) = (pa.hilbert_series(), pb.hilbert_series());
        let (ta, tb) = (lc_table(&pa), lc_table(&pb));
        if ha == hb && ta == tb {
            return Ok(GinResult {
                gin: a,
                certificate: GenericityCertificate { seeds: (s1, s2), agreed: true, retries: attempt, compared },
                change: ga,
            });
        }
        last = format!("seeds {s1} and {s2}: series {ha:?} vs {hb:?}, tables {:?} vs {:?}", ta.rows, tb.rows);
    }
    Err(Error::CertificationFailed { retries: retries.max(1), detail: last })
}

/// Outcome of comparing the two sides of the E-depth criterion for gin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GinCriterionReport {
    pub t: usize,
    pub edepth: usize,
    /// `edepth(F/U) >= t`.
    pub lhs: bool,
    /// All local cohomology rows of `F/U` and `F/gin_{rev_t}(U)` agree.
    pub rhs: bool,
    pub consistent: bool,
    /// First row where the tables differ, if any.
    pub differing_row: Option<usize>,
    pub certificate: GenericityCertificate,
}

pub fn check_gin_criterion(u: &Submodule, t: usize, seed: u64) -> Result<GinCriterionReport> {
    let m = GradedPresentation::new(u.clone())?;
    let g = gin_rev_t(u, t, seed)?;
    let edepth = m.edepth();
    let tm = lc_table(&m);
    let tg = lc_table(&GradedPresentation::from_relations(g.gin));
    let differing_row = (0..tm.rows.len()).find(|&i| tm.rows[i] != tg.rows[i]);
    let lhs = edepth >= t;
    let rhs = differing_row.is_none();
    Ok(GinCriterionReport { t, edepth, lhs, rhs, consistent: lhs == rhs, differing_row, certificate: g.certificate })
}

/// `HF(H^i(F/U)) <= HF(H^i(F/gin_{rev_t}(U)))` for every `i` and degree.
pub fn semicontinuity_check(u: &Submodule, t: usize, seed: u64) -> Result<bool> {
    let m = GradedPresentation::new(u.clone())?;
    let g = gin_rev_t(u, t, seed)?;
    let tm = lc_table(&m);
    let tg = lc_table(&GradedPresentation::from_relations(g.gin));
    Ok(table_le(&tm, &tg))
}

/// Entrywise `a <= b` for local cohomology tables.
pub fn table_le(a: &CohomologyTable, b: &CohomologyTable) -> bool {
    a.rows.iter().zip(&b.rows).all(|(x, y)| y.sub(x).is_nonnegative())
}
