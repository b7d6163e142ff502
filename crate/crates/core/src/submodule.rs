//! Graded submodules of free modules and the operations on them.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::gb::Groebner;
use crate::hilbert::{monomial_quotient_series, HilbertSeries};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::{PolyVector, Term};
use crate::ring::{FreeModule, Ring};

/// A submodule `U` of a graded free module `F`, given by generators.
///
/// Gröbner bases are computed on demand and cached per order; the cache is
/// write-once per order and safe to share between threads.
pub struct Submodule {
    ring: Ring,
    ambient: FreeModule,
    gens: Vec<PolyVector>,
    cache: RwLock<HashMap<TermOrder, Arc<Groebner>>>,
}

impl Clone for Submodule {
    fn clone(&self) -> Self {
        let cache = self.cache.read().expect("gb cache poisoned").clone();
        Submodule { ring: self.ring, ambient: self.ambient.clone(), gens: self.gens.clone(), cache: RwLock::new(cache) }
    }
}

impl std::fmt::Debug for Submodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Submodule").field("ring", &self.ring).field("ambient", &self.ambient).field("gens", &self.gens).finish()
    }
}

impl Submodule {
    /// Builds a submodule, discarding zero generators.
    pub fn new(ring: Ring, ambient: FreeModule, gens: Vec<PolyVector>) -> Result<Self> {
        let rank = ambient.rank() as u32;
        for g in &gens {
            if g.max_comp().is_some_and(|c| c >= rank) {
                return Err(Error::AmbientMismatch(format!("generator uses a component beyond rank {rank}")));
            }
            if g.terms().iter().any(|t| (ring.nvars()..crate::monomial::MAX_VARS).any(|i| t.mono.exp(i) > 0)) {
                return Err(Error::AmbientMismatch(format!("generator uses a variable beyond x{}", ring.nvars())));
            }
        }
        Ok(Self::from_parts(ring, ambient, gens))
    }

    pub(crate) fn from_parts(ring: Ring, ambient: FreeModule, gens: Vec<PolyVector>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Submodule { ring, ambient, gens, cache: RwLock::new(HashMap::new()) }
    }

    /// An ideal of `S`, as a submodule of `S` itself.
    pub fn ideal(ring: Ring, gens: Vec<PolyVector>) -> Result<Self> {
        Self::new(ring, FreeModule::free(1), gens)
    }

    pub fn zero(ring: Ring, ambient: FreeModule) -> Self {
        Self::from_parts(ring, ambient, Vec::new())
    }

    /// The whole free module.
    pub fn whole(ring: Ring, ambient: FreeModule) -> Self {
        let gens = (0..ambient.rank() as u32).map(PolyVector::basis).collect();
        Self::from_parts(ring, ambient, gens)
    }

    /// `m^d F`: all monomial multiples of degree `d` of the basis.
    pub fn power_of_maximal(ring: Ring, ambient: FreeModule, d: u32) -> Self {
        let monos = monomials_of_degree(ring.nvars(), d);
        let gens = (0..ambient.rank() as u32).flat_map(|c| monos.iter().map(move |m| PolyVector::monomial(*m, c))).collect();
        Self::from_parts(ring, ambient, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn shifts(&self) -> &[i32] {
        self.ambient.shifts()
    }

    pub fn gens(&self) -> &[PolyVector] {
        &self.gens
    }

    pub fn is_zero_module(&self) -> bool {
        self.gens.is_empty()
    }

    fn default_order(&self) -> TermOrder {
        TermOrder::grevlex(self.ring.nvars())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous(self.shifts()))
    }

    pub fn is_multihomogeneous(&self, t: usize) -> bool {
        self.gens.iter().all(|g| g.is_multihomogeneous(self.ring.nvars(), t, self.shifts()))
    }

    /// Gröbner basis for `order`, computed once and cached.
    pub fn groebner(&self, order: TermOrder) -> Arc<Groebner> {
        if let Some(g) = self.cache.read().expect("gb cache poisoned").get(&order) {
            return g.clone();
        }
        let g = Arc::new(Groebner::compute(self.ring.field(), self.shifts(), &self.gens, order));
        self.cache.write().expect("gb cache poisoned").entry(order).or_insert(g).clone()
    }

    /// Gröbner basis in graded reverse lexicographic order.
    pub fn gb(&self) -> Arc<Groebner> {
        self.groebner(self.default_order())
    }

    pub fn normal_form(&self, f: &PolyVector) -> PolyVector {
        self.gb().normal_form(f)
    }

    pub fn contains(&self, f: &PolyVector) -> bool {
        self.gb().contains(f)
    }

    /// Whether `other ⊆ self`.
    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        let g = self.gb();
        other.gens.iter().all(|f| g.contains(f))
    }

    pub fn equals(&self, other: &Submodule) -> bool {
        self.ambient == other.ambient && self.contains_submodule(other) && other.contains_submodule(self)
    }

    /// Whether `U = F`.
    pub fn is_whole(&self) -> bool {
        (0..self.ambient.rank() as u32).all(|c| self.gb().lead_divides(&Monomial::one(), c))
    }

    /// A minimal generating set (homogeneous input), otherwise the reduced basis.
    pub fn minimal_generators(&self) -> Vec<PolyVector> {
        let g = self.gb();
        match g.minimal_generators() {
            Some(m) => m.to_vec(),
            None => g.basis(),
        }
    }

    /// The same submodule presented by a minimal generating set.
    pub fn minimalized(&self) -> Submodule {
        Self::from_parts(self.ring, self.ambient.clone(), self.minimal_generators())
    }

    pub fn with_gens(&self, gens: Vec<PolyVector>) -> Submodule {
        Self::from_parts(self.ring, self.ambient.clone(), gens)
    }

    /// `U + V`.
    pub fn sum(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.ambient, other.ambient, "sum of submodules of different free modules");
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        self.with_gens(gens)
    }

    /// `U + x_j F`.
    pub fn plus_var_multiple(&self, j: usize) -> Submodule {
        let mut gens = self.gens.clone();
        for c in 0..self.ambient.rank() as u32 {
            gens.push(PolyVector::monomial(Monomial::var(j), c));
        }
        self.with_gens(gens)
    }

    /// `U + f F` for a polynomial `f`.
    pub fn plus_poly_multiple(&self, f: &PolyVector) -> Submodule {
        let mut gens = self.gens.clone();
        for c in 0..self.ambient.rank() as u32 {
            gens.push(f.placed_at(c));
        }
        self.with_gens(gens)
    }

    /// Hilbert series of `F/U`.
    pub fn quotient_series(&self) -> HilbertSeries {
        let g = self.gb();
        monomial_quotient_series(self.ring.nvars(), self.shifts(), &g.leading_monomials())
    }

    /// Hilbert series of `U` itself.
    pub fn series(&self) -> HilbertSeries {
        let f = monomial_quotient_series(self.ring.nvars(), self.shifts(), &[]);
        f.sub(&self.quotient_series())
    }

    /// Whether `F/U` has finite length.
    pub fn quotient_is_artinian(&self) -> bool {
        self.quotient_series().is_polynomial()
    }

    /// The initial submodule for `order`: generated by the initial forms (with
    /// respect to the weight rows only) of a Gröbner basis for the full order.
    pub fn initial_submodule(&self, order: TermOrder) -> Submodule {
        let g = self.groebner(order);
        let gens = g.basis().iter().filter_map(|f| order.initial_form(f, self.shifts())).collect();
        self.with_gens(gens)
    }

    /// Linear change of coordinates `x_i -> images[i]` applied to the generators.
    pub fn substitute(&self, images: &[PolyVector]) -> Submodule {
        assert_eq!(images.len(), self.ring.nvars());
        let gens = self.gens.iter().map(|g| g.substitute(&self.ring, images)).collect();
        self.with_gens(gens)
    }

    /// Swaps variables `i` and `j` throughout.
    pub fn swap_vars(&self, i: usize, j: usize) -> Submodule {
        let f = self.ring.field();
        let gens = self.gens.iter().map(|g| g.map_monos(f, |m| Some(m.swap_vars(i, j)))).collect();
        self.with_gens(gens)
    }

    /// `(U + x_j F) / x_j F` as a submodule of the free module with the same
    /// shifts over the ring without `x_j`.
    pub fn quotient_mod_variable(&self, j: usize) -> Submodule {
        let ring = self.ring.drop_var();
        let f = self.ring.field();
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_monos(f, |m| (m.exp(j) == 0).then(|| m.drop_var(j))))
            .collect();
        Submodule::from_parts(ring, self.ambient.clone(), gens)
    }

    /// The same generators viewed over a ring with `extra` new trailing variables.
    pub fn extend_ring(&self, extra: usize) -> Result<Submodule> {
        Ok(Submodule::from_parts(self.ring.extend(extra)?, self.ambient.clone(), self.gens.clone()))
    }

    /// `U : x_j^s`, or `U : x_j^∞` when `s` is `None`.
    pub fn colon_var(&self, j: usize, s: Option<u32>) -> Submodule {
        if !self.is_homogeneous() {
            return self.colon_var_iterated(j, s);
        }
        let n = self.ring.nvars();
        let last = n - 1;
        // Graded revlex with x_j moved last: leading terms divisible by x_j^k
        // force the whole element to be.
        let swapped = if j == last { self.clone() } else { self.swap_vars(j, last) };
        let g = swapped.gb();
        let gens: Vec<PolyVector> = g
            .ordered_terms()
            .iter()
            .map(|p| {
                let k = p.iter().map(|t| t.mono.exp(last)).min().unwrap_or(0) as u32;
                let k = s.map_or(k, |s| s.min(k)) as u16;
                let terms = p.iter().map(|t| Term::new(t.coeff, t.mono.with_exp(last, t.mono.exp(last) - k), t.comp)).collect();
                PolyVector::from_terms(self.ring.field(), terms)
            })
            .collect();
        let out = swapped.with_gens(gens);
        if j == last {
            out
        } else {
            out.swap_vars(j, last)
        }
    }

    fn colon_var_iterated(&self, j: usize, s: Option<u32>) -> Submodule {
        let x = PolyVector::var(j);
        let mut cur = self.clone();
        let mut steps = 0;
        loop {
            if s.is_some_and(|s| steps >= s) {
                return cur;
            }
            let next = cur.colon_poly(&x);
            steps += 1;
            if s.is_none() && next.equals(&cur) {
                return cur;
            }
            cur = next;
        }
    }

    /// `U : f` for a polynomial `f`, via syzygies of `(f e_1, .., f e_r, u_1, .., u_s)`.
    pub fn colon_poly(&self, f: &PolyVector) -> Submodule {
        let r = self.ambient.rank();
        let mut cols: Vec<PolyVector> = (0..r as u32).map(|c| f.placed_at(c)).collect();
        cols.extend(self.gens.iter().cloned());
        let syz = syzygy_module(&self.ring, &self.ambient, &cols);
        let fr = self.ring.field();
        let gens = syz.gens.iter().map(|v| v.map_comps(fr, |c| ((c as usize) < r).then_some(c))).collect();
        self.with_gens(gens)
    }

    /// `U : m^∞`.
    pub fn saturation(&self) -> Submodule {
        let n = self.ring.nvars();
        if n == 0 {
            return self.clone();
        }
        let mut acc = self.colon_var(n - 1, None);
        for j in (0..n - 1).rev() {
            acc = acc.intersect(&self.colon_var(j, None));
        }
        acc.minimalized()
    }

    /// `U : m`.
    pub fn colon_maximal(&self) -> Submodule {
        let n = self.ring.nvars();
        let mut acc = self.colon_var(0, Some(1));
        for j in 1..n {
            acc = acc.intersect(&self.colon_var(j, Some(1)));
        }
        acc.minimalized()
    }

    /// `U ∩ V` by eliminating the first summand of `F ⊕ F`.
    pub fn intersect(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero_module() || other.is_zero_module() {
            return Submodule::zero(self.ring, self.ambient.clone());
        }
        if self.contains_submodule(other) {
            return other.clone();
        }
        if other.contains_submodule(self) {
            return self.clone();
        }
        let r = self.ambient.rank() as u32;
        let big = self.ambient.direct_sum(&self.ambient);
        let fr = self.ring.field();
        let mut gens: Vec<PolyVector> = self.gens.iter().map(|u| u.add(&u.map_comps(fr, |c| Some(c + r)), fr)).collect();
        gens.extend(other.gens.iter().cloned());
        let order = TermOrder::grevlex(self.ring.nvars()).with_split(r);
        let g = Groebner::compute(fr, big.shifts(), &gens, order);
        let out = g
            .basis()
            .into_iter()
            .filter(|v| v.terms().iter().all(|t| t.comp >= r))
            .map(|v| v.map_comps(fr, |c| Some(c - r)))
            .collect();
        self.with_gens(out).minimalized()
    }
}

/// Generators of the syzygy module of `cols` (elements of `ambient`), as a
/// submodule of `S^s` whose basis element `e_k` sits in degree `deg(cols[k])`.
/// Zero or non-homogeneous columns get degree 0; use
/// [`syzygy_module_with_shifts`] to fix the degrees explicitly.
pub fn syzygy_module(ring: &Ring, ambient: &FreeModule, cols: &[PolyVector]) -> Submodule {
    let col_shifts: Vec<i32> = cols.iter().map(|c| c.degree(ambient.shifts()).unwrap_or(0)).collect();
    syzygy_module_with_shifts(ring, ambient, cols, col_shifts)
}

/// Syzygies of `cols` inside `S^s` with basis degrees `col_shifts`, computed by
/// eliminating the first summand of `ambient ⊕ S^s` from the graph `(c_k, e_k)`.
pub fn syzygy_module_with_shifts(ring: &Ring, ambient: &FreeModule, cols: &[PolyVector], col_shifts: Vec<i32>) -> Submodule {
    let r = ambient.rank() as u32;
    let target = FreeModule::new(col_shifts);
    if cols.is_empty() {
        return Submodule::zero(*ring, target);
    }
    let fr = ring.field();
    let big = ambient.direct_sum(&target);
    let gens: Vec<PolyVector> = cols
        .iter()
        .enumerate()
        .map(|(k, c)| c.add(&PolyVector::basis(r + k as u32), fr))
        .collect();
    let order = TermOrder::grevlex(ring.nvars()).with_split(r);
    let g = Groebner::compute(fr, big.shifts(), &gens, order);
    let syz = g
        .basis()
        .into_iter()
        .filter(|v| v.terms().iter().all(|t| t.comp >= r))
        .map(|v| v.map_comps(fr, |c| Some(c - r)))
        .collect();
    Submodule::from_parts(*ring, target, syz)
}

/// All monomials of degree `d` in `n` variables, in a fixed order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let n = exps.len();
        if i + 1 == n {
            exps[i] = left as u16;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e as u16;
            rec(i + 1, left - e, exps, out);
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out
}
