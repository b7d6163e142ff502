//! Buchberger's algorithm for submodules of graded free modules.
//!
//! Polynomials are kept sorted descending in the active order while the
//! algorithm runs; reduction accumulates into a hash map driven by a max-heap
//! of order keys.

use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::{OrderKey, TermOrder};
use crate::poly::{PolyVector, Term};

/// A reduced Gröbner basis together with the data needed to reduce against it.
#[derive(Clone, Debug)]
pub struct Groebner {
    order: TermOrder,
    shifts: Vec<i32>,
    field: Field,
    /// Monic, sorted descending in `order`; ascending by leading key across the list.
    polys: Vec<Vec<Term>>,
    index: LeadIndex,
    min_gens: Option<Vec<PolyVector>>,
}

#[derive(Clone, Debug, Default)]
struct LeadIndex {
    by_comp: Vec<Vec<(Monomial, usize)>>,
}

impl LeadIndex {
    fn new(rank: usize) -> Self {
        LeadIndex { by_comp: vec![Vec::new(); rank] }
    }

    fn push(&mut self, lead: &Term, idx: usize) {
        self.by_comp[lead.comp as usize].push((lead.mono, idx));
    }

    fn find(&self, mono: &Monomial, comp: u32) -> Option<(usize, Monomial)> {
        self.by_comp[comp as usize]
            .iter()
            .find(|(m, _)| m.divides(mono))
            .map(|(m, i)| (*i, m.quotient_of(mono)))
    }

    fn find_excluding(&self, mono: &Monomial, comp: u32, skip: usize) -> Option<(usize, Monomial)> {
        self.by_comp[comp as usize]
            .iter()
            .find(|(m, i)| *i != skip && m.divides(mono))
            .map(|(m, i)| (*i, m.quotient_of(mono)))
    }
}

struct Reducer<'a> {
    order: &'a TermOrder,
    shifts: &'a [i32],
    field: &'a Field,
    coeffs: FxHashMap<(Monomial, u32), u32>,
    heap: BinaryHeap<(OrderKey, u32, Monomial)>,
}

impl<'a> Reducer<'a> {
    fn new(order: &'a TermOrder, shifts: &'a [i32], field: &'a Field) -> Self {
        Reducer { order, shifts, field, coeffs: FxHashMap::default(), heap: BinaryHeap::new() }
    }

    fn add(&mut self, c: u32, mono: Monomial, comp: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.coeffs.entry((mono, comp)) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = f.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
                self.heap.push((self.order.key(&mono, comp, self.shifts), comp, mono));
            }
        }
    }

    fn pop(&mut self) -> Option<Term> {
        while let Some((_, comp, mono)) = self.heap.pop() {
            if let Some(c) = self.coeffs.remove(&(mono, comp)) {
                return Some(Term::new(c, mono, comp));
            }
        }
        None
    }

    /// Subtracts `c * q * g` where `g` is monic with leading term `g[0]`; the
    /// leading term itself is assumed to cancel and is skipped.
    fn sub_multiple(&mut self, c: u32, q: &Monomial, g: &[Term]) {
        let nc = self.field.neg(c);
        for t in &g[1..] {
            self.add(self.field.mul(nc, t.coeff), t.mono.mul(q), t.comp);
        }
    }

    fn drain_sorted(&mut self) -> Vec<Term> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        while let Some(t) = self.pop() {
            out.push(t);
        }
        out
    }
}

/// Reduces `f` against `polys`. With `full` every term is reduced, otherwise
/// reduction stops at the first irreducible leading term. `skip` excludes one
/// basis element (used for interreduction).
fn reduce(
    f: &[Term],
    polys: &[Vec<Term>],
    index: &LeadIndex,
    order: &TermOrder,
    shifts: &[i32],
    field: &Field,
    full: bool,
    skip: Option<usize>,
) -> Vec<Term> {
    let mut r = Reducer::new(order, shifts, field);
    for t in f {
        r.add(t.coeff, t.mono, t.comp);
    }
    let mut out = Vec::new();
    while let Some(t) = r.pop() {
        let hit = match skip {
            Some(s) => index.find_excluding(&t.mono, t.comp, s),
            None => index.find(&t.mono, t.comp),
        };
        match hit {
            Some((i, q)) => r.sub_multiple(t.coeff, &q, &polys[i]),
            None => {
                out.push(t);
                if !full {
                    out.extend(r.drain_sorted());
                    break;
                }
            }
        }
    }
    out
}

fn make_monic(f: &mut [Term], field: &Field) {
    if let Some(lead) = f.first() {
        if lead.coeff != 1 {
            let inv = field.inv(lead.coeff);
            for t in f.iter_mut() {
                t.coeff = field.mul(t.coeff, inv);
            }
        }
    }
}

fn sort_desc(terms: &mut [Term], order: &TermOrder, shifts: &[i32]) {
    terms.sort_by_cached_key(|t| std::cmp::Reverse(order.term_key(t, shifts)));
}

#[derive(Clone, Copy, Debug)]
enum Item {
    Gen(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
struct Pending {
    sugar: i32,
    lcm: Monomial,
    comp: u32,
    key: OrderKey,
    item: Item,
}

impl Pending {
    fn rank(&self) -> (i32, u8, OrderKey) {
        let kind = match self.item {
            Item::Pair(..) => 0,
            Item::Gen(_) => 1,
        };
        (self.sugar, kind, self.key)
    }
}

impl Groebner {
    /// Computes the reduced Gröbner basis of the submodule generated by `gens`
    /// inside the free module with the given shifts.
    pub fn compute(field: &Field, shifts: &[i32], gens: &[PolyVector], order: TermOrder) -> Groebner {
        let rank = shifts.len();
        let homogeneous = gens.iter().all(|g| g.is_homogeneous(shifts));
        let product_criterion = rank == 1;

        let mut inputs: Vec<Vec<Term>> = Vec::new();
        let mut input_src: Vec<usize> = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let mut t = g.terms().to_vec();
            sort_desc(&mut t, &order, shifts);
            inputs.push(t);
            input_src.push(k);
        }

        let mut polys: Vec<Vec<Term>> = Vec::new();
        let mut sugars: Vec<i32> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut index = LeadIndex::new(rank);
        let mut queue: Vec<Pending> = Vec::new();
        let mut min_gens = Vec::new();

        for (k, t) in inputs.iter().enumerate() {
            let sugar = t.iter().map(|x| x.degree(shifts)).max().unwrap();
            queue.push(Pending { sugar, lcm: t[0].mono, comp: t[0].comp, key: order.term_key(&t[0], shifts), item: Item::Gen(k) });
        }

        while !queue.is_empty() {
            let best = (0..queue.len()).min_by_key(|&i| queue[i].rank()).unwrap();
            let p = queue.swap_remove(best);
            let (spoly, sugar) = match p.item {
                Item::Gen(k) => (inputs[k].clone(), p.sugar),
                Item::Pair(i, j) => {
                    let (gi, gj) = (&polys[i], &polys[j]);
                    let ui = gi[0].mono.quotient_of(&p.lcm);
                    let uj = gj[0].mono.quotient_of(&p.lcm);
                    let mut s: Vec<Term> = Vec::with_capacity(gi.len() + gj.len());
                    for t in &gi[1..] {
                        s.push(Term::new(t.coeff, t.mono.mul(&ui), t.comp));
                    }
                    for t in &gj[1..] {
                        s.push(Term::new(field.neg(t.coeff), t.mono.mul(&uj), t.comp));
                    }
                    (s, p.sugar)
                }
            };
            let mut h = reduce(&spoly, &polys, &index, &order, shifts, field, true, None);
            if h.is_empty() {
                continue;
            }
            if let Item::Gen(k) = p.item {
                min_gens.push(input_src[k]);
            }
            make_monic(&mut h, field);
            let hn = polys.len();
            let lh = h[0];
            update_pairs(&mut queue, &polys, &active, &lh, hn, sugar, &sugars, &order, shifts, product_criterion);
            for (g, act) in polys.iter().zip(active.iter_mut()) {
                if *act && g[0].comp == lh.comp && lh.mono.divides(&g[0].mono) {
                    *act = false;
                }
            }
            index.push(&lh, hn);
            polys.push(h);
            sugars.push(sugar);
            active.push(true);
        }

        // Interreduce the surviving elements.
        let keep: Vec<usize> = (0..polys.len()).filter(|&i| active[i]).collect();
        let mut min_index = LeadIndex::new(rank);
        for &i in &keep {
            min_index.push(&polys[i][0], i);
        }
        let mut out: Vec<Vec<Term>> = keep
            .iter()
            .map(|&i| {
                let lead = polys[i][0];
                let tail = reduce(&polys[i][1..], &polys, &min_index, &order, shifts, field, true, Some(i));
                let mut r = Vec::with_capacity(tail.len() + 1);
                r.push(lead);
                r.extend(tail);
                r
            })
            .collect();
        out.sort_by_cached_key(|p| order.term_key(&p[0], shifts));
        let mut index = LeadIndex::new(rank);
        for (i, p) in out.iter().enumerate() {
            index.push(&p[0], i);
        }
        let min_gens = homogeneous.then(|| min_gens.iter().map(|&k| gens[k].clone()).collect());
        Groebner { order, shifts: shifts.to_vec(), field: *field, polys: out, index, min_gens }
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Basis elements in canonical form.
    pub fn basis(&self) -> Vec<PolyVector> {
        self.polys.iter().map(|p| PolyVector::from_terms(&self.field, p.clone())).collect()
    }

    /// Basis elements as term lists sorted descending in the order.
    pub fn ordered_terms(&self) -> &[Vec<Term>] {
        &self.polys
    }

    /// Leading module monomials `(mono, comp)`.
    pub fn leading_monomials(&self) -> Vec<(Monomial, u32)> {
        self.polys.iter().map(|p| (p[0].mono, p[0].comp)).collect()
    }

    /// For homogeneous input: the input generators that form a minimal generating set.
    pub fn minimal_generators(&self) -> Option<&[PolyVector]> {
        self.min_gens.as_deref()
    }

    pub fn normal_form(&self, f: &PolyVector) -> PolyVector {
        let r = reduce(f.terms(), &self.polys, &self.index, &self.order, &self.shifts, &self.field, true, None);
        PolyVector::from_terms(&self.field, r)
    }

    pub fn contains(&self, f: &PolyVector) -> bool {
        if f.is_zero() {
            return true;
        }
        reduce(f.terms(), &self.polys, &self.index, &self.order, &self.shifts, &self.field, false, None).is_empty()
    }

    /// Whether some basis element has leading module monomial dividing `m * e_comp`.
    pub fn lead_divides(&self, m: &Monomial, comp: u32) -> bool {
        self.index.find(m, comp).is_some()
    }
}

#[allow(clippy::too_many_arguments)]
fn update_pairs(
    queue: &mut Vec<Pending>,
    polys: &[Vec<Term>],
    active: &[bool],
    lh: &Term,
    hn: usize,
    sugar_h: i32,
    sugars: &[i32],
    order: &TermOrder,
    shifts: &[i32],
    product_criterion: bool,
) {
    // Candidate pairs (g, h).
    struct Cand {
        g: usize,
        lcm: Monomial,
        coprime: bool,
    }
    let mut cands: Vec<Cand> = (0..polys.len())
        .filter(|&g| active[g] && polys[g][0].comp == lh.comp)
        .map(|g| {
            let lg = &polys[g][0];
            Cand { g, lcm: lg.mono.lcm(&lh.mono), coprime: product_criterion && lg.mono.is_coprime(&lh.mono) }
        })
        .collect();

    // Chain criterion on the new pairs, keeping one pair per lcm.
    let mut kept: Vec<Cand> = Vec::new();
    while let Some(c) = cands.pop() {
        let dominated = cands.iter().chain(kept.iter()).any(|o| o.lcm.divides(&c.lcm));
        if c.coprime || !dominated {
            kept.push(c);
        }
    }

    // Chain criterion on the old pairs.
    queue.retain(|p| match p.item {
        Item::Pair(i, j) => {
            if p.comp != lh.comp || !lh.mono.divides(&p.lcm) {
                return true;
            }
            let li = polys[i][0].mono.lcm(&lh.mono);
            let lj = polys[j][0].mono.lcm(&lh.mono);
            li == p.lcm || lj == p.lcm
        }
        Item::Gen(_) => true,
    });

    for c in kept.into_iter().filter(|c| !c.coprime) {
        let lg = &polys[c.g][0];
        let sg = sugars[c.g] + (c.lcm.degree() - lg.mono.degree()) as i32;
        let sh = sugar_h + (c.lcm.degree() - lh.mono.degree()) as i32;
        queue.push(Pending {
            sugar: sg.max(sh),
            lcm: c.lcm,
            comp: lh.comp,
            key: order.key(&c.lcm, lh.comp, shifts),
            item: Item::Pair(c.g, hn),
        });
    }
}
