//! Named examples and seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::{PolyVector, Term};
use crate::resolution::{subquotient, GradedPresentation};
use crate::ring::{FreeModule, Ring};
use crate::submodule::{monomials_of_degree, Submodule};

/// Kernel of `k[x_1..x_m] -> k[s_1..s_k]`, `x_i -> s^{exps[i]}`, by elimination.
pub fn toric_ideal(ring: Ring, exps: &[Vec<u16>]) -> Result<Submodule> {
    let m = ring.nvars();
    assert_eq!(exps.len(), m, "one monomial per variable");
    let k = exps[0].len();
    let big = ring.extend(k)?;
    let f = big.field();
    // Parameters first (x_1..x_k), then the original variables.
    let gens: Vec<PolyVector> = exps
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let x = Monomial::var(k + i);
            let s = Monomial::from_exponents(e);
            PolyVector::from_terms(f, vec![Term::new(1, x, 0), Term::new(f.neg(1), s, 0)])
        })
        .collect();
    let elim = Submodule::ideal(big, gens)?;
    let g = elim.groebner(TermOrder::elim(k + m, k));
    let kernel: Vec<PolyVector> = g
        .basis()
        .into_iter()
        .filter(|p| p.terms().iter().all(|t| (0..k).all(|v| t.mono.exp(v) == 0)))
        .map(|p| {
            p.map_monos(f, |mono| {
                let mut out = *mono;
                for _ in 0..k {
                    out = out.drop_var(0);
                }
                Some(out)
            })
        })
        .collect();
    Ok(Submodule::ideal(ring, kernel)?.minimalized())
}

/// The monomial curve `(s^4, s^3 t, s t^3, t^4)` in four variables.
pub fn rational_quartic(ring: Ring) -> Result<Submodule> {
    toric_ideal(ring, &[vec![4, 0], vec![3, 1], vec![1, 3], vec![0, 4]])
}

/// `(x_1^2, x_1 x_2)` in `k[x_1, x_2]`.
pub fn x2_xy(ring: Ring) -> Submodule {
    Submodule::ideal(
        ring,
        vec![
            PolyVector::monomial(Monomial::from_exponents(&[2, 0]), 0),
            PolyVector::monomial(Monomial::from_exponents(&[1, 1]), 0),
        ],
    )
    .expect("two variables")
}

/// `J^m = (x_1, x_2)^m` in `k[x_1..x_n]`.
pub fn j_power(ring: Ring, m: u32) -> Submodule {
    let gens = monomials_of_degree(2, m)
        .into_iter()
        .map(|mono| PolyVector::monomial(Monomial::from_exponents(mono.exponents(2)), 0))
        .collect();
    Submodule::ideal(ring, gens).expect("at least two variables")
}

/// Families of random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    Monomial,
    Binomial,
    Toric,
    Determinantal,
    Module,
}

impl CorpusKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "monomial" => CorpusKind::Monomial,
            "binomial" => CorpusKind::Binomial,
            "toric" => CorpusKind::Toric,
            "determinantal" => CorpusKind::Determinantal,
            "module" => CorpusKind::Module,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            CorpusKind::Monomial => "monomial",
            CorpusKind::Binomial => "binomial",
            CorpusKind::Toric => "toric",
            CorpusKind::Determinantal => "determinantal",
            CorpusKind::Module => "module",
        }
    }
}

/// One corpus entry.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub kind: CorpusKind,
    pub submodule: Submodule,
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Monomial {
    let mut e = vec![0u16; n];
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exponents(&e)
}

/// A random monomial ideal with `gens` generators of degree `1..=max_deg`.
pub fn random_monomial_ideal(ring: Ring, rng: &mut ChaCha8Rng, gens: usize, max_deg: u32) -> Submodule {
    let n = ring.nvars();
    let g = (0..gens)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            PolyVector::monomial(random_monomial(rng, n, d), 0)
        })
        .collect();
    Submodule::ideal(ring, g).expect("valid ring").minimalized()
}

/// The edge ideal of a random graph on the variables (at least one edge).
pub fn random_edge_ideal(ring: Ring, rng: &mut ChaCha8Rng) -> Submodule {
    let n = ring.nvars();
    let mut gens = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.5) {
                gens.push(PolyVector::monomial(Monomial::var(a).mul(&Monomial::var(b)), 0));
            }
        }
    }
    if gens.is_empty() {
        gens.push(PolyVector::monomial(Monomial::var(0).mul(&Monomial::var(n - 1)), 0));
    }
    Submodule::ideal(ring, gens).expect("valid ring")
}

/// An intersection of two or three ideals generated by random sets of
/// variables, one of them possibly squared: a squarefree-like ideal whose
/// components usually have different dimensions.
pub fn random_mixed_ideal(ring: Ring, rng: &mut ChaCha8Rng) -> Submodule {
    let n = ring.nvars();
    let pieces = rng.gen_range(2..=3);
    let mut out: Option<Submodule> = None;
    for _ in 0..pieces {
        let mut vars: Vec<usize> = (0..n).collect();
        vars.shuffle(rng);
        let size = if n >= 4 && rng.gen_bool(0.5) { n / 2 } else { rng.gen_range(1..n.max(2)) };
        let squared = rng.gen_bool(0.3);
        let gens = vars[..size]
            .iter()
            .enumerate()
            .map(|(k, &v)| PolyVector::monomial(Monomial::var_pow(v, if squared && k == 0 { 2 } else { 1 }), 0))
            .collect();
        let p = Submodule::ideal(ring, gens).expect("valid ring");
        out = Some(match out {
            None => p,
            Some(q) => q.intersect(&p),
        });
    }
    out.expect("at least one piece").minimalized()
}

/// `(x_1..x_k)^m` for random `2 <= k <= n`, `m <= 2`, presented as a quotient
/// of a free module, sometimes summed with a random cyclic module.
pub fn random_power_module(ring: Ring, rng: &mut ChaCha8Rng) -> Submodule {
    let n = ring.nvars();
    let k = rng.gen_range(2..=n.max(2));
    let m = rng.gen_range(1..=2);
    let gens: Vec<PolyVector> = monomials_of_degree(k, m)
        .into_iter()
        .map(|mono| {
            let mut e = mono.exponents(k).to_vec();
            e.resize(n, 0);
            PolyVector::monomial(Monomial::from_exponents(&e), 0)
        })
        .collect();
    let mut module = subquotient(&ring, &FreeModule::free(1), &gens, &[]);
    if rng.gen_bool(0.5) {
        let other = if rng.gen_bool(0.5) { random_mixed_ideal(ring, rng) } else { random_monomial_ideal(ring, rng, 2, 3) };
        let shift = rng.gen_range(0..=2);
        module = module.direct_sum(&GradedPresentation::new(other).expect("homogeneous").twist(-shift));
    }
    module.relations().clone()
}

/// A random ideal generated by homogeneous binomials `x^a - c x^b`.
pub fn random_binomial_ideal(ring: Ring, rng: &mut ChaCha8Rng, gens: usize, max_deg: u32) -> Submodule {
    let n = ring.nvars();
    let f = ring.field();
    let g = (0..gens)
        .map(|_| {
            let d = rng.gen_range(2..=max_deg.max(2));
            let a = random_monomial(rng, n, d);
            let b = random_monomial(rng, n, d);
            let c = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..f.characteristic()) };
            PolyVector::from_terms(f, vec![Term::new(1, a, 0), Term::new(f.neg(c), b, 0)])
        })
        .collect();
    Submodule::ideal(ring, g).expect("valid ring").minimalized()
}

/// A random projective monomial curve or surface: the toric ideal of `n`
/// random monomials of a common degree in two or three parameters.
pub fn random_toric_ideal(ring: Ring, rng: &mut ChaCha8Rng) -> Result<Submodule> {
    let n = ring.nvars();
    let k = if n >= 4 && rng.gen_bool(0.3) { 3 } else { 2 };
    let d = rng.gen_range(3..=6u16);
    // Distinct exponent vectors summing to d, always including the pure powers
    // of the first two parameters so the parametrization is not degenerate.
    let mut all: Vec<Vec<u16>> = monomials_of_degree(k, d as u32).iter().map(|m| m.exponents(k).to_vec()).collect();
    all.shuffle(rng);
    let mut chosen: Vec<Vec<u16>> = Vec::new();
    let mut p0 = vec![0u16; k];
    p0[0] = d;
    let mut p1 = vec![0u16; k];
    p1[1] = d;
    chosen.push(p0);
    chosen.push(p1);
    for e in all {
        if chosen.len() == n {
            break;
        }
        if !chosen.contains(&e) {
            chosen.push(e);
        }
    }
    while chosen.len() < n {
        chosen.push(chosen[chosen.len() - 1].clone());
    }
    chosen.sort();
    chosen.reverse();
    toric_ideal(ring, &chosen)
}

/// The 2x2 minors of a 2 x c matrix of random linear forms (`c <= n`), or of
/// a generic-looking matrix in the variables.
pub fn random_determinantal_ideal(ring: Ring, rng: &mut ChaCha8Rng) -> Submodule {
    let n = ring.nvars();
    let f = ring.field();
    let p = f.characteristic();
    let c = rng.gen_range(2..=n.clamp(2, 3));
    let linear = |rng: &mut ChaCha8Rng| -> PolyVector {
        let support = rng.gen_range(1..=n.min(2));
        let terms = (0..support)
            .map(|_| Term::new(rng.gen_range(1..p), Monomial::var(rng.gen_range(0..n)), 0))
            .collect();
        PolyVector::from_terms(f, terms)
    };
    let m: Vec<Vec<PolyVector>> = (0..2).map(|_| (0..c).map(|_| linear(rng)).collect()).collect();
    let mut gens = Vec::new();
    for a in 0..c {
        for b in a + 1..c {
            gens.push(m[0][a].mul_poly(&m[1][b], f).sub(&m[0][b].mul_poly(&m[1][a], f), f));
        }
    }
    Submodule::ideal(ring, gens).expect("valid ring").minimalized()
}

/// A random submodule of `S^2` (shifts 0 and 1) generated by monomial and binomial vectors.
pub fn random_module(ring: Ring, rng: &mut ChaCha8Rng) -> Submodule {
    let n = ring.nvars();
    let f = ring.field();
    let ambient = FreeModule::new(vec![0, 1]);
    let count = rng.gen_range(2..=5);
    let gens = (0..count)
        .map(|_| {
            let d = rng.gen_range(2..=3u32);
            let mut v = PolyVector::monomial(random_monomial(rng, n, d), 0);
            if rng.gen_bool(0.6) {
                let c = rng.gen_range(1..f.characteristic());
                v = v.add(&PolyVector::term(c, random_monomial(rng, n, d - 1), 1), f);
            }
            if rng.gen_bool(0.3) {
                v = PolyVector::monomial(random_monomial(rng, n, d - 1), 1);
            }
            v
        })
        .collect();
    Submodule::new(ring, ambient, gens).expect("valid ring").minimalized()
}

/// `count` instances of `kind` with `n` drawn from `ns`, deterministic in `seed`.
pub fn generate(kind: CorpusKind, ns: &[usize], count: usize, seed: u64, p: u32) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let n = ns[idx % ns.len()];
        let ring = Ring::new(p, n)?;
        let submodule = match kind {
            CorpusKind::Monomial if n >= 2 && rng.gen_bool(0.2) => random_edge_ideal(ring, &mut rng),
            CorpusKind::Monomial if n >= 2 && rng.gen_bool(0.5) => random_mixed_ideal(ring, &mut rng),
            CorpusKind::Monomial => {
                let g = rng.gen_range(1..=6);
                random_monomial_ideal(ring, &mut rng, g, 4)
            }
            CorpusKind::Binomial => {
                let g = rng.gen_range(1..=4);
                random_binomial_ideal(ring, &mut rng, g, 3)
            }
            CorpusKind::Toric => random_toric_ideal(ring, &mut rng)?,
            CorpusKind::Determinantal => random_determinantal_ideal(ring, &mut rng),
            CorpusKind::Module if n >= 2 && rng.gen_bool(0.4) => random_power_module(ring, &mut rng),
            CorpusKind::Module => random_module(ring, &mut rng),
        };
        out.push(Instance { label: format!("{}-{idx}-n{n}", kind.name()), kind, submodule });
    }
    Ok(out)
}
