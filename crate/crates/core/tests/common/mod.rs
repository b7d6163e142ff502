//! Degreewise linear algebra over F_p, independent of the Gröbner machinery:
//! graded pieces of a submodule are spanned by monomial multiples of its
//! generators and measured by plain Gaussian elimination.

#![allow(dead_code)]

use std::collections::HashMap;

use edepth::submodule::Submodule;
use edepth::PolyVector;

/// Exponent vectors of total degree `d` in `n` variables.
pub fn exponents_of_degree(n: usize, d: u32) -> Vec<Vec<u16>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents_of_degree(n - 1, d - first) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

/// Coordinates of the degree-`d` piece of the ambient free module.
pub struct Piece {
    pub n: usize,
    pub d: i32,
    pub basis: Vec<(Vec<u16>, u32)>,
    index: HashMap<(Vec<u16>, u32), usize>,
}

impl Piece {
    pub fn new(n: usize, shifts: &[i32], d: i32) -> Self {
        let mut basis = Vec::new();
        for (k, &s) in shifts.iter().enumerate() {
            if d >= s {
                for e in exponents_of_degree(n, (d - s) as u32) {
                    basis.push((e, k as u32));
                }
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        Piece { n, d, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, f: &PolyVector, p: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.dim()];
        for t in f.terms() {
            let key = (t.mono.exponents(self.n).to_vec(), t.comp);
            let i = *self.index.get(&key).expect("term of the right degree");
            v[i] = (v[i] + t.coeff as u64) % p;
        }
        v
    }
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row echelon form with pivot columns, reduced on insertion.
pub struct Echelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(p: u64) -> Self {
        Echelon { p, rows: Vec::new() }
    }

    pub fn reduce(&self, v: &mut [u64]) {
        for (c, r) in &self.rows {
            let f = v[*c];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + self.p - f * y % self.p) % self.p;
                }
            }
        }
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else { return false };
        let s = inv(v[c], self.p);
        for x in v.iter_mut() {
            *x = *x * s % self.p;
        }
        for (_, r) in self.rows.iter_mut() {
            let f = r[c];
            if f != 0 {
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = (*x + self.p - f * y % self.p) % self.p;
                }
            }
        }
        self.rows.push((c, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn generator_degree(g: &PolyVector, shifts: &[i32]) -> i32 {
    let t = &g.terms()[0];
    t.mono.degree() as i32 + shifts[t.comp as usize]
}

fn multiply(g: &PolyVector, e: &[u16], p: u64) -> Vec<(Vec<u16>, u32, u64)> {
    g.terms()
        .iter()
        .map(|t| {
            let mut x = t.mono.exponents(e.len()).to_vec();
            for (a, b) in x.iter_mut().zip(e) {
                *a += b;
            }
            (x, t.comp, t.coeff as u64 % p)
        })
        .collect()
}

/// Echelon basis of `U_d` in the coordinates of `piece`.
pub fn submodule_piece(u: &Submodule, piece: &Piece) -> Echelon {
    let p = u.ring().characteristic() as u64;
    let n = piece.n;
    let mut ech = Echelon::new(p);
    for g in u.gens() {
        let gd = generator_degree(g, u.shifts());
        if gd > piece.d {
            continue;
        }
        for e in exponents_of_degree(n, (piece.d - gd) as u32) {
            let mut v = vec![0u64; piece.dim()];
            for (x, comp, c) in multiply(g, &e, p) {
                let i = piece.index[&(x, comp)];
                v[i] = (v[i] + c) % p;
            }
            ech.insert(v);
        }
    }
    ech
}

/// `dim_k (F/U)_d`.
pub fn hf_quotient(u: &Submodule, d: i32) -> usize {
    let piece = Piece::new(u.ring().nvars(), u.shifts(), d);
    piece.dim() - submodule_piece(u, &piece).rank()
}

/// Whether the homogeneous element `f` of degree `d` lies in `U`.
pub fn contains(u: &Submodule, f: &PolyVector, d: i32) -> bool {
    let piece = Piece::new(u.ring().nvars(), u.shifts(), d);
    let ech = submodule_piece(u, &piece);
    let mut v = piece.coords(f, u.ring().characteristic() as u64);
    ech.reduce(&mut v);
    v.iter().all(|&x| x == 0)
}

/// `dim_k (U : m^k)_d / U_d`: elements of `F_d` sent into `U` by every monomial of degree `k`.
pub fn torsion_dim(u: &Submodule, d: i32, k: u32) -> usize {
    let n = u.ring().nvars();
    let p = u.ring().characteristic() as u64;
    let src = Piece::new(n, u.shifts(), d);
    let dst = Piece::new(n, u.shifts(), d + k as i32);
    let target = submodule_piece(u, &dst);
    let monos = exponents_of_degree(n, k);
    // Rows: basis element of F_d -> images of its products with all monomials, mod U.
    let mut map = Echelon::new(p);
    let width = dst.dim() * monos.len();
    let mut image_rank = 0;
    for (e, comp) in &src.basis {
        let mut row = vec![0u64; width];
        for (mi, m) in monos.iter().enumerate() {
            let x: Vec<u16> = e.iter().zip(m).map(|(a, b)| a + b).collect();
            let mut v = vec![0u64; dst.dim()];
            v[dst.index[&(x, *comp)]] = 1;
            target.reduce(&mut v);
            row[mi * dst.dim()..(mi + 1) * dst.dim()].copy_from_slice(&v);
        }
        if map.insert(row) {
            image_rank += 1;
        }
    }
    let kernel = src.dim() - image_rank;
    kernel - submodule_piece(u, &src).rank()
}

/// `dim_k soc(F/U)_d`.
pub fn socle_dim(u: &Submodule, d: i32) -> usize {
    torsion_dim(u, d, 1)
}
