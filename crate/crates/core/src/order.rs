//! Term orders on module monomials `m * e_i`.
//!
//! Every order is realised as lexicographic comparison of an integer key, which
//! keeps comparison, sorting and heap-based reduction on one code path.

use std::cmp::Ordering;

use crate::monomial::{Monomial, MAX_VARS};
use crate::poly::{PolyVector, Term};

/// Length of an order key.
pub const KEY_LEN: usize = MAX_VARS + 4;

/// Comparable key of a module monomial.
pub type OrderKey = [i32; KEY_LEN];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// `rev_t`: total degree, then the rows of the weight matrix that penalise
    /// `x_n, x_{n-1}, .., x_{n-t+1}` in turn, then basis index (smaller index is
    /// larger), then reverse lexicographic on `x_1..x_{n-t}`.
    Rev(usize),
    /// Elimination of the first `k` variables: degree in `x_1..x_k` first, then
    /// graded reverse lexicographic, then basis index.
    Elim(usize),
}

/// A term order on a free module over `k[x_1..x_n]`.
///
/// When `split` is set, terms in components `< split` dominate every term in
/// the remaining components (a block order used for elimination of module
/// components).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub n: usize,
    pub kind: OrderKind,
    pub split: Option<u32>,
}

impl TermOrder {
    /// The partial reverse lexicographic order `rev_t`, refined to a term order.
    pub fn rev(n: usize, t: usize) -> Self {
        assert!(t <= n && n <= MAX_VARS, "rev_t needs t <= n");
        TermOrder { n, kind: OrderKind::Rev(t), split: None }
    }

    /// Graded reverse lexicographic order (`rev_n`).
    pub fn grevlex(n: usize) -> Self {
        Self::rev(n, n)
    }

    pub fn elim(n: usize, k: usize) -> Self {
        assert!(k <= n && n <= MAX_VARS);
        TermOrder { n, kind: OrderKind::Elim(k), split: None }
    }

    pub fn with_split(self, split: u32) -> Self {
        TermOrder { split: Some(split), ..self }
    }

    /// The number of weight rows that define initial forms.
    pub fn weight_rows(&self) -> usize {
        match self.kind {
            OrderKind::Rev(t) => t,
            OrderKind::Elim(_) => 0,
        }
    }

    pub fn key(&self, mono: &Monomial, comp: u32, shifts: &[i32]) -> OrderKey {
        let mut k = [0i32; KEY_LEN];
        let n = self.n;
        k[0] = match self.split {
            Some(s) if comp < s => 1,
            _ => 0,
        };
        let deg = mono.degree() as i32 + shifts[comp as usize];
        match self.kind {
            OrderKind::Rev(t) => {
                k[1] = deg;
                let mut p = 2;
                for i in (n - t..n).rev() {
                    k[p] = -(mono.exp(i) as i32);
                    p += 1;
                }
                k[p] = -(comp as i32);
                p += 1;
                for i in (0..n - t).rev() {
                    k[p] = -(mono.exp(i) as i32);
                    p += 1;
                }
            }
            OrderKind::Elim(e) => {
                k[1] = (0..e).map(|i| mono.exp(i) as i32).sum();
                k[2] = deg;
                let mut p = 3;
                for i in (0..n).rev() {
                    k[p] = -(mono.exp(i) as i32);
                    p += 1;
                }
                k[p] = -(comp as i32);
            }
        }
        k
    }

    #[inline]
    pub fn term_key(&self, t: &Term, shifts: &[i32]) -> OrderKey {
        self.key(&t.mono, t.comp, shifts)
    }

    pub fn compare(&self, a: (&Monomial, u32), b: (&Monomial, u32), shifts: &[i32]) -> Ordering {
        self.key(a.0, a.1, shifts).cmp(&self.key(b.0, b.1, shifts))
    }

    /// Weight vector of a term under the rows of the weight matrix only.
    pub fn weight(&self, mono: &Monomial) -> Vec<i32> {
        let t = self.weight_rows();
        (self.n - t..self.n).rev().map(|i| -(mono.exp(i) as i32)).collect()
    }

    /// Leading term of a nonzero element.
    pub fn leading_term(&self, f: &PolyVector, shifts: &[i32]) -> Option<Term> {
        f.terms().iter().max_by_key(|t| self.term_key(t, shifts)).copied()
    }

    /// Sum of the terms of `f` whose weight vector is maximal. With `t = 0` the
    /// whole element is returned; with `t = n` a single term (for homogeneous `f`).
    pub fn initial_form(&self, f: &PolyVector, shifts: &[i32]) -> Option<PolyVector> {
        let lead = self.leading_term(f, shifts)?;
        let w = self.weight(&lead.mono);
        let d = lead.degree(shifts);
        let sb = |c: u32| matches!(self.split, Some(s) if c < s);
        let terms: Vec<Term> = f
            .terms()
            .iter()
            .filter(|t| t.degree(shifts) == d && sb(t.comp) == sb(lead.comp) && self.weight(&t.mono) == w)
            .copied()
            .collect();
        Some(PolyVector::from_sorted_unchecked(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn omega_rows_decide() {
        let o = TermOrder::rev(4, 2);
        let z = [0];
        assert_eq!(o.compare((&m(&[0, 0, 1, 0]), 0), (&m(&[0, 0, 0, 1]), 0), &z), Ordering::Greater);
        assert_eq!(o.compare((&m(&[1, 0, 0, 1]), 0), (&m(&[0, 2, 0, 0]), 0), &z), Ordering::Less);
        let g = TermOrder::grevlex(2);
        assert_eq!(g.compare((&m(&[1, 0]), 0), (&m(&[0, 1]), 0), &z), Ordering::Greater);
    }

    #[test]
    fn lower_index_wins_after_weights() {
        let o = TermOrder::grevlex(2);
        let s = [0, 0];
        assert_eq!(o.compare((&m(&[1, 0]), 0), (&m(&[1, 0]), 1), &s), Ordering::Greater);
    }

    #[test]
    fn initial_forms() {
        let f = Field::default();
        let p = PolyVector::from_terms(
            &f,
            vec![
                Term::new(1, m(&[1, 0, 1, 0]), 0),
                Term::new(1, m(&[0, 1, 1, 0]), 0),
                Term::new(1, m(&[1, 0, 0, 1]), 0),
            ],
        );
        let o = TermOrder::rev(4, 2);
        let want = PolyVector::from_terms(&f, vec![Term::new(1, m(&[1, 0, 1, 0]), 0), Term::new(1, m(&[0, 1, 1, 0]), 0)]);
        assert_eq!(o.initial_form(&p, &[0]).unwrap(), want);
        assert_eq!(TermOrder::rev(4, 0).initial_form(&p, &[0]).unwrap(), p);
        let q = PolyVector::from_terms(&f, vec![Term::new(1, m(&[2, 0]), 0), Term::new(1, m(&[1, 1]), 0)]);
        assert_eq!(TermOrder::grevlex(2).initial_form(&q, &[0]).unwrap(), PolyVector::monomial(m(&[2, 0]), 0));
        assert!(o.initial_form(&PolyVector::zero(), &[0]).is_none());
    }
}
