//! Elements of graded free modules: finite sums of `c * m * e_i`.

use std::cmp::Ordering;

use crate::field::Field;
use crate::monomial::{Monomial, MAX_VARS};
use crate::ring::Ring;

/// One term `coeff * mono * e_comp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub mono: Monomial,
    pub comp: u32,
}

impl Term {
    pub fn new(coeff: u32, mono: Monomial, comp: u32) -> Self {
        Term { coeff, mono, comp }
    }

    /// Degree of the term inside a free module with the given shifts.
    #[inline]
    pub fn degree(&self, shifts: &[i32]) -> i32 {
        self.mono.degree() as i32 + shifts[self.comp as usize]
    }
}

/// Canonical storage order: by component, then degree-descending reverse lexicographic.
pub(crate) fn canonical_cmp(a: &(Monomial, u32), b: &(Monomial, u32)) -> Ordering {
    match a.1.cmp(&b.1) {
        Ordering::Equal => {}
        o => return o,
    }
    match b.0.degree().cmp(&a.0.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        match a.0.exp(i).cmp(&b.0.exp(i)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// An element of a free module, kept in canonical form: terms sorted by
/// [`canonical_cmp`], no zero coefficients, no repeated `(mono, comp)`.
///
/// Rank-one elements (all terms in component 0) double as polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyVector {
    terms: Vec<Term>,
}

impl PolyVector {
    pub fn zero() -> Self {
        PolyVector { terms: Vec::new() }
    }

    /// Builds a canonical element from arbitrary terms, combining duplicates.
    pub fn from_terms(field: &Field, mut terms: Vec<Term>) -> Self {
        terms.retain(|t| t.coeff != 0);
        terms.sort_by(|a, b| canonical_cmp(&(a.mono, a.comp), &(b.mono, b.comp)));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.comp == t.comp => {
                    last.coeff = field.add(last.coeff, t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0);
        PolyVector { terms: out }
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted_unchecked(terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| canonical_cmp(&(w[0].mono, w[0].comp), &(w[1].mono, w[1].comp)) == Ordering::Less));
        PolyVector { terms }
    }

    pub fn term(coeff: u32, mono: Monomial, comp: u32) -> Self {
        if coeff == 0 {
            return PolyVector::zero();
        }
        PolyVector { terms: vec![Term::new(coeff, mono, comp)] }
    }

    /// The monomial `mono * e_comp` with coefficient one.
    pub fn monomial(mono: Monomial, comp: u32) -> Self {
        PolyVector::term(1, mono, comp)
    }

    /// Basis vector `e_comp`.
    pub fn basis(comp: u32) -> Self {
        PolyVector::term(1, Monomial::one(), comp)
    }

    /// Variable `x_{i+1}` as a polynomial.
    pub fn var(i: usize) -> Self {
        PolyVector::monomial(Monomial::var(i), 0)
    }

    pub fn constant(c: u32) -> Self {
        PolyVector::term(c, Monomial::one(), 0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    /// Largest component index used, if any.
    pub fn max_comp(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.comp).max()
    }

    fn merge(&self, other: &PolyVector, field: &Field, scale_other: u32) -> PolyVector {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match canonical_cmp(&(a[i].mono, a[i].comp), &(b[j].mono, b[j].comp)) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    let c = field.mul(b[j].coeff, scale_other);
                    if c != 0 {
                        out.push(Term { coeff: c, ..b[j] });
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(a[i].coeff, field.mul(b[j].coeff, scale_other));
                    if c != 0 {
                        out.push(Term { coeff: c, ..a[i] });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = field.mul(t.coeff, scale_other);
            if c != 0 {
                out.push(Term { coeff: c, ..*t });
            }
        }
        PolyVector { terms: out }
    }

    pub fn add(&self, other: &PolyVector, field: &Field) -> PolyVector {
        self.merge(other, field, 1)
    }

    pub fn sub(&self, other: &PolyVector, field: &Field) -> PolyVector {
        self.merge(other, field, field.neg(1))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: u32, other: &PolyVector, field: &Field) -> PolyVector {
        if c == 0 {
            return self.clone();
        }
        self.merge(other, field, c)
    }

    pub fn neg(&self, field: &Field) -> PolyVector {
        self.scale(field.neg(1), field)
    }

    pub fn scale(&self, c: u32, field: &Field) -> PolyVector {
        if c == 0 {
            return PolyVector::zero();
        }
        PolyVector { terms: self.terms.iter().map(|t| Term { coeff: field.mul(t.coeff, c), ..*t }).collect() }
    }

    /// Multiplication by `c * m`; multiplying by a monomial preserves the canonical order.
    pub fn mul_term(&self, c: u32, m: &Monomial, field: &Field) -> PolyVector {
        if c == 0 {
            return PolyVector::zero();
        }
        PolyVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: field.mul(t.coeff, c), mono: t.mono.mul(m), comp: t.comp })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> PolyVector {
        PolyVector { terms: self.terms.iter().map(|t| Term { mono: t.mono.mul(m), ..*t }).collect() }
    }

    /// Product with a polynomial (a rank-one element; its components are ignored).
    pub fn mul_poly(&self, p: &PolyVector, field: &Field) -> PolyVector {
        let mut acc = PolyVector::zero();
        for t in &p.terms {
            acc = acc.add(&self.mul_term(t.coeff, &t.mono, field), field);
        }
        acc
    }

    /// The polynomial in component `k`.
    pub fn component(&self, k: u32) -> PolyVector {
        PolyVector {
            terms: self.terms.iter().filter(|t| t.comp == k).map(|t| Term { comp: 0, ..*t }).collect(),
        }
    }

    /// Places a polynomial into component `k`.
    pub fn placed_at(&self, k: u32) -> PolyVector {
        PolyVector { terms: self.terms.iter().map(|t| Term { comp: k, ..*t }).collect() }
    }

    /// Rewrites component indices with `f`; `None` drops the term.
    pub fn map_comps(&self, field: &Field, f: impl Fn(u32) -> Option<u32>) -> PolyVector {
        let terms = self.terms.iter().filter_map(|t| f(t.comp).map(|c| Term { comp: c, ..*t })).collect();
        PolyVector::from_terms(field, terms)
    }

    /// Rewrites every monomial with `f`; `None` drops the term.
    pub fn map_monos(&self, field: &Field, f: impl Fn(&Monomial) -> Option<Monomial>) -> PolyVector {
        let terms = self.terms.iter().filter_map(|t| f(&t.mono).map(|m| Term { mono: m, ..*t })).collect();
        PolyVector::from_terms(field, terms)
    }

    /// The common degree of all terms, if the element is homogeneous and nonzero.
    pub fn degree(&self, shifts: &[i32]) -> Option<i32> {
        let d = self.terms.first()?.degree(shifts);
        self.terms.iter().all(|t| t.degree(shifts) == d).then_some(d)
    }

    pub fn is_homogeneous(&self, shifts: &[i32]) -> bool {
        self.is_zero() || self.degree(shifts).is_some()
    }

    /// Whether all terms share one `Z x Z^t` multidegree; shifts count toward the `Z` part.
    pub fn is_multihomogeneous(&self, n: usize, t: usize, shifts: &[i32]) -> bool {
        let md = |term: &Term| {
            let mut v = term.mono.multidegree(n, t);
            v[0] += shifts[term.comp as usize] as i64;
            v
        };
        match self.terms.first() {
            None => true,
            Some(first) => {
                let d = md(first);
                self.terms.iter().all(|x| md(x) == d)
            }
        }
    }

    /// Makes the element monic with respect to its first canonical term.
    pub fn leading_coefficient_canonical(&self) -> Option<u32> {
        self.terms.first().map(|t| t.coeff)
    }

    /// Substitutes `x_i -> images[i]` (polynomials) in every component.
    pub fn substitute(&self, ring: &Ring, images: &[PolyVector]) -> PolyVector {
        let field = ring.field();
        let n = ring.nvars();
        let mut out = PolyVector::zero();
        let mut cache: std::collections::HashMap<(usize, u16), PolyVector> = std::collections::HashMap::new();
        for t in &self.terms {
            let mut prod = PolyVector::constant(t.coeff);
            for i in 0..n {
                let e = t.mono.exp(i);
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, e))
                    .or_insert_with(|| {
                        let mut p = PolyVector::constant(1);
                        for _ in 0..e {
                            p = p.mul_poly(&images[i], field);
                        }
                        p
                    })
                    .clone();
                prod = prod.mul_poly(&pw, field);
            }
            out = out.add(&prod.placed_at(t.comp), field);
        }
        out
    }

    /// Text form in the input grammar. Rank-one elements print as polynomials,
    /// higher rank as `[f1, f2, ...]`.
    pub fn to_text(&self, ring: &Ring, rank: usize) -> String {
        if rank <= 1 {
            return poly_text(self, ring);
        }
        let parts: Vec<String> = (0..rank as u32).map(|k| poly_text(&self.component(k), ring)).collect();
        format!("[{}]", parts.join(", "))
    }
}

fn poly_text(p: &PolyVector, ring: &Ring) -> String {
    use std::fmt::Write;
    if p.is_zero() {
        return "0".to_string();
    }
    let field = ring.field();
    let mut s = String::new();
    for (idx, t) in p.terms.iter().enumerate() {
        let c = field.to_signed(t.coeff);
        let (neg, mag) = if c < 0 { (true, -c) } else { (false, c) };
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if t.mono.degree() == 0 {
            write!(s, "{mag}").unwrap();
        } else {
            if mag != 1 {
                write!(s, "{mag}*").unwrap();
            }
            t.mono.fmt_vars(ring.nvars(), &mut s).unwrap();
        }
    }
    s
}
