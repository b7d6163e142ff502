//! Laurent polynomials and exact Hilbert series.

use std::collections::BTreeMap;
use std::fmt;

use crate::monomial::Monomial;

/// A Laurent polynomial with integer coefficients, stored densely from its
/// lowest exponent. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    lo: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * z^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        LaurentPoly { lo: e, coeffs: vec![c] }.normalized()
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut m: BTreeMap<i32, i64> = BTreeMap::new();
        for (e, c) in pairs {
            *m.entry(e).or_insert(0) += c;
        }
        let (Some(&lo), Some(&hi)) = (m.keys().next(), m.keys().next_back()) else {
            return Self::zero();
        };
        let mut coeffs = vec![0; (hi - lo + 1) as usize];
        for (e, c) in m {
            coeffs[(e - lo) as usize] = c;
        }
        LaurentPoly { lo, coeffs }.normalized()
    }

    /// `1 - z^d`.
    pub fn one_minus_power(d: i32) -> Self {
        Self::from_pairs([(0, 1), (d, -1)])
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.coeffs.len() {
            return Self::zero();
        }
        self.coeffs.drain(..lead_zeros);
        self.lo += lead_zeros as i32;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let k = e - self.lo;
        if k < 0 || k as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[k as usize]
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> Vec<(i32, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (self.lo + k as i32, c))
            .collect()
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.high_degree().unwrap().max(other.high_degree().unwrap());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + other.coeff(e)).collect();
        LaurentPoly { lo, coeffs }.normalized()
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> Self {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|x| x * c).collect() }.normalized()
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly { lo: self.lo + other.lo, coeffs }.normalized()
    }

    /// Multiplication by `(1 - z)^k`.
    pub fn mul_one_minus_z_pow(&self, k: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.sub(&p.shift(1));
        }
        p
    }

    /// Exact division by `1 - z`, if possible.
    pub fn div_one_minus_z(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.eval_one() != 0 {
            return None;
        }
        // q_k = sum_{i <= k} p_i
        let mut acc = 0;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs[..self.coeffs.len() - 1] {
            acc += c;
            coeffs.push(acc);
        }
        Some(LaurentPoly { lo: self.lo, coeffs }.normalized())
    }

    /// Substitutes `z -> z^{-1}`.
    pub fn reflect(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let hi = self.high_degree().unwrap();
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { lo: -hi, coeffs }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().iter().map(|(e, c)| format!("{c}z^{e}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `numer / (1 - z)^den`, normalized so that `numer(1) != 0` unless the series is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HilbertSeries {
    numer: LaurentPoly,
    den: u32,
}

impl HilbertSeries {
    pub fn new(numer: LaurentPoly, den: u32) -> Self {
        let mut s = HilbertSeries { numer, den };
        while s.den > 0 {
            match s.numer.div_one_minus_z() {
                Some(q) if !s.numer.is_zero() && s.numer.eval_one() == 0 => {
                    s.numer = q;
                    s.den -= 1;
                }
                _ => break,
            }
        }
        if s.numer.is_zero() {
            s.den = 0;
        }
        s
    }

    pub fn zero() -> Self {
        HilbertSeries { numer: LaurentPoly::zero(), den: 0 }
    }

    /// Series of a finite-length module from its Hilbert function.
    pub fn polynomial(p: LaurentPoly) -> Self {
        Self::new(p, 0)
    }

    /// `z^s / (1 - z)^n`: a free module `S(-s)` in `n` variables.
    pub fn free(n: u32, s: i32) -> Self {
        Self::new(LaurentPoly::monomial(1, s), n)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numer
    }

    pub fn denominator_power(&self) -> u32 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Krull dimension: the pole order at `z = 1`; `None` for the zero module.
    pub fn dimension(&self) -> Option<u32> {
        (!self.is_zero()).then_some(self.den)
    }

    /// Whether the series is a Laurent polynomial (finite length).
    pub fn is_polynomial(&self) -> bool {
        self.den == 0
    }

    pub fn coeff(&self, j: i32) -> i64 {
        if self.den == 0 {
            return self.numer.coeff(j);
        }
        let d = self.den as i64;
        self.numer
            .terms()
            .iter()
            .filter(|(e, _)| *e <= j)
            .map(|(e, c)| c * binomial((j - e) as i64 + d - 1, d - 1))
            .sum()
    }

    fn with_den(&self, d: u32) -> LaurentPoly {
        debug_assert!(d >= self.den);
        self.numer.mul_one_minus_z_pow(d - self.den)
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.den.max(other.den);
        Self::new(self.with_den(d).add(&other.with_den(d)), d)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.den.max(other.den);
        Self::new(self.with_den(d).sub(&other.with_den(d)), d)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.numer.scale(c), self.den)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        HilbertSeries { numer: self.numer.shift(k), den: self.den }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.numer.mul(&other.numer), self.den + other.den)
    }

    /// Multiplication by a Laurent polynomial.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::new(self.numer.mul(p), self.den)
    }

    /// Multiplication by `(1 - z)^k`; stays a series.
    pub fn mul_one_minus_z_pow(&self, k: u32) -> Self {
        if k <= self.den {
            Self::new(self.numer.clone(), self.den - k)
        } else {
            Self::new(self.numer.mul_one_minus_z_pow(k - self.den), 0)
        }
    }

    /// The Laurent polynomial `self * (1 - z)^k`, if it is one.
    pub fn times_one_minus_z_pow(&self, k: u32) -> Option<LaurentPoly> {
        (k >= self.den).then(|| self.numer.mul_one_minus_z_pow(k - self.den))
    }

    /// Whether every coefficient is `>= 0`.
    ///
    /// Beyond the numerator's support the coefficients follow a polynomial `p`
    /// of degree `den - 1`; scanning stops at the first `k0` where all forward
    /// differences of `p` are nonnegative, which bounds `p` from below for
    /// every later degree.
    pub fn is_nonnegative(&self) -> bool {
        let Some(lo) = self.numer.low_degree() else {
            return true;
        };
        let hi = self.numer.high_degree().unwrap();
        if (lo..=hi).any(|j| self.coeff(j) < 0) {
            return false;
        }
        if self.den == 0 {
            return true;
        }
        if self.numer.eval_one() < 0 {
            return false;
        }
        let d = self.den as usize;
        let mut k0 = hi;
        loop {
            let vals: Vec<i64> = (0..d as i32).map(|m| self.coeff(k0 + m)).collect();
            if vals[0] < 0 {
                return false;
            }
            let mut diffs = vals.clone();
            let mut ok = true;
            for level in 0..d {
                if diffs[0] < 0 {
                    ok = false;
                    break;
                }
                for m in 0..d - 1 - level {
                    diffs[m] = diffs[m + 1] - diffs[m];
                }
            }
            if ok {
                return true;
            }
            k0 += 1;
        }
    }

    /// Nonzero values of a finite-length series as `(degree, value)`.
    pub fn finite_values(&self) -> Option<Vec<(i32, i64)>> {
        self.is_polynomial().then(|| self.numer.terms())
    }

    /// Entrywise comparison `self <= other` for finite-length series.
    pub fn le_finite(&self, other: &Self) -> Option<bool> {
        let d = other.sub(self);
        d.finite_values().map(|v| v.iter().all(|(_, c)| *c >= 0))
    }
}

impl fmt::Debug for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/(1-z)^{}", self.numer, self.den)
    }
}

/// Keeps only the minimal elements under divisibility, sorted and deduplicated.
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut g: Vec<Monomial> = gens.to_vec();
    g.sort_by_key(|m| (m.degree(), *m));
    g.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(g.len());
    for m in g {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `K` with `HS(S/I) = K(z) / (1 - z)^n` for the monomial ideal `I`
/// generated by `gens` (the K-polynomial, independent of `n`).
pub fn k_polynomial(gens: &[Monomial]) -> LaurentPoly {
    k_poly_rec(minimalize(gens))
}

fn k_poly_rec(gens: Vec<Monomial>) -> LaurentPoly {
    if gens.is_empty() {
        return LaurentPoly::one();
    }
    if gens.iter().any(|g| g.degree() == 0) {
        return LaurentPoly::zero();
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens.iter().fold(LaurentPoly::one(), |acc, g| acc.mul(&LaurentPoly::one_minus_power(g.degree() as i32)));
    }
    // Pivot on the variable occurring in most non-coprime generators.
    let mut count = [0usize; crate::monomial::MAX_VARS];
    for g in &gens {
        for (i, c) in count.iter_mut().enumerate() {
            if g.exp(i) > 0 {
                *c += 1;
            }
        }
    }
    let v = (0..crate::monomial::MAX_VARS).max_by_key(|&i| (count[i], std::cmp::Reverse(i))).unwrap();
    // Pivot x_v^e with e the smallest positive exponent among generators of
    // degree > 1 in x_v's support keeps both branches smaller.
    let e = gens.iter().map(|g| g.exp(v)).filter(|&e| e > 0).min().unwrap();
    let p = Monomial::var_pow(v, e);
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| !p.divides(g)).copied().collect();
    plus.push(p);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.with_exp(v, g.exp(v).saturating_sub(e))).collect();
    let a = k_poly_rec(minimalize(&plus));
    let b = k_poly_rec(minimalize(&colon));
    a.add(&b.shift(e as i32))
}

/// Hilbert series of `F / M` where `F = ⊕ S(-shift_c)` in `n` variables and
/// `M` is the monomial submodule with the given generators `(mono, comp)`.
pub fn monomial_quotient_series(n: usize, shifts: &[i32], leads: &[(Monomial, u32)]) -> HilbertSeries {
    let mut numer = LaurentPoly::zero();
    for (c, &s) in shifts.iter().enumerate() {
        let gens: Vec<Monomial> = leads.iter().filter(|(_, k)| *k as usize == c).map(|(m, _)| *m).collect();
        numer = numer.add(&k_polynomial(&gens).shift(s));
    }
    HilbertSeries::new(numer, n as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn series_of_free_module() {
        let hs = HilbertSeries::free(2, 0);
        assert_eq!((0..4).map(|j| hs.coeff(j)).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        let f = monomial_quotient_series(1, &[1, 0], &[]);
        assert_eq!(f.numerator(), &LaurentPoly::from_pairs([(0, 1), (1, 1)]));
        assert_eq!(f.denominator_power(), 1);
    }

    #[test]
    fn series_of_x2_xy() {
        let hs = monomial_quotient_series(2, &[0], &[(m(&[2, 0]), 0), (m(&[1, 1]), 0)]);
        assert_eq!(hs.dimension(), Some(1));
        assert_eq!((0..5).map(|j| hs.coeff(j)).collect::<Vec<_>>(), vec![1, 2, 1, 1, 1]);
    }

    #[test]
    fn artinian_series_is_polynomial() {
        let hs = monomial_quotient_series(2, &[0], &[(m(&[2, 0]), 0), (m(&[1, 1]), 0), (m(&[0, 2]), 0)]);
        assert!(hs.is_polynomial());
        assert_eq!(hs.finite_values().unwrap(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn division_by_one_minus_z() {
        let p = LaurentPoly::from_pairs([(-1, 1), (2, -1)]);
        let q = p.div_one_minus_z().unwrap();
        assert_eq!(q, LaurentPoly::from_pairs([(-1, 1), (0, 1), (1, 1)]));
        assert_eq!(p.reflect(), LaurentPoly::from_pairs([(1, 1), (-2, -1)]));
    }
}
