//! Graded presentations, minimal free resolutions, Ext modules, depth and E-depth.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::hilbert::HilbertSeries;
use crate::monomial::Monomial;
use crate::poly::PolyVector;
use crate::ring::{FreeModule, Ring};
use crate::submodule::{syzygy_module_with_shifts, Submodule};

/// A graded module `M = F/U` given by a free module and a homogeneous relation submodule.
#[derive(Clone, Debug)]
pub struct GradedPresentation {
    relations: Submodule,
    resolution: OnceLock<Arc<Resolution>>,
    ext: OnceLock<Arc<Vec<GradedPresentation>>>,
}

/// A minimal graded free resolution `0 -> F_p -> .. -> F_0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Ring,
    /// `F_0, .., F_p`.
    pub modules: Vec<FreeModule>,
    /// `maps[i]` lists the images in `F_i` of the basis of `F_{i+1}`.
    pub maps: Vec<Vec<PolyVector>>,
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.modules.len().saturating_sub(1)
    }

    pub fn betti(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, f) in self.modules.iter().enumerate() {
            for (d, c) in f.degree_counts() {
                entries.insert((i, d), c);
            }
        }
        BettiTable { entries }
    }
}

impl GradedPresentation {
    /// `F/U`. Fails if `U` is not homogeneous.
    pub fn new(relations: Submodule) -> Result<Self> {
        if !relations.is_homogeneous() {
            return Err(Error::NotHomogeneous("relations of a graded presentation must be homogeneous".into()));
        }
        Ok(Self::from_relations(relations))
    }

    pub(crate) fn from_relations(relations: Submodule) -> Self {
        GradedPresentation { relations, resolution: OnceLock::new(), ext: OnceLock::new() }
    }

    /// The free module `S(-s_1) ⊕ ..` itself.
    pub fn free(ring: Ring, ambient: FreeModule) -> Self {
        Self::from_relations(Submodule::zero(ring, ambient))
    }

    pub fn ring(&self) -> &Ring {
        self.relations.ring()
    }

    pub fn ambient(&self) -> &FreeModule {
        self.relations.ambient()
    }

    pub fn relations(&self) -> &Submodule {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        self.relations.quotient_series()
    }

    pub fn is_zero(&self) -> bool {
        self.relations.is_whole()
    }

    /// Krull dimension, `None` for the zero module.
    pub fn krull_dim(&self) -> Option<u32> {
        self.hilbert_series().dimension()
    }

    /// `M ⊕ N`.
    pub fn direct_sum(&self, other: &GradedPresentation) -> GradedPresentation {
        assert_eq!(self.ring(), other.ring());
        let r = self.ambient().rank() as u32;
        let ambient = self.ambient().direct_sum(other.ambient());
        let fr = self.ring().field();
        let mut gens: Vec<PolyVector> = self.relations.gens().to_vec();
        gens.extend(other.relations.gens().iter().map(|g| g.map_comps(fr, |c| Some(c + r))));
        Self::from_relations(Submodule::from_parts(*self.ring(), ambient, gens))
    }

    /// `M(d)`: degrees move down by `d`.
    pub fn twist(&self, d: i32) -> GradedPresentation {
        let ambient = self.ambient().twisted(-d);
        Self::from_relations(Submodule::from_parts(*self.ring(), ambient, self.relations.gens().to_vec()))
    }

    /// An isomorphic presentation with a minimal set of generators: relations
    /// with a unit entry are used to eliminate the corresponding generator.
    pub fn pruned(&self) -> GradedPresentation {
        let (ambient, rels) = prune(self.ring(), self.ambient().clone(), self.relations.minimal_generators());
        Self::from_relations(Submodule::from_parts(*self.ring(), ambient, rels).minimalized())
    }

    /// The minimal free resolution (computed once).
    pub fn resolution(&self) -> Arc<Resolution> {
        self.resolution.get_or_init(|| Arc::new(self.compute_resolution())).clone()
    }

    fn compute_resolution(&self) -> Resolution {
        let ring = *self.ring();
        let min = self.pruned();
        let mut modules = vec![min.ambient().clone()];
        let mut maps: Vec<Vec<PolyVector>> = Vec::new();
        let mut cols: Vec<PolyVector> = min.relations.gens().to_vec();
        loop {
            if cols.is_empty() {
                break;
            }
            let prev = modules.last().unwrap().clone();
            let shifts: Vec<i32> = cols.iter().map(|c| c.degree(prev.shifts()).expect("homogeneous column")).collect();
            let next = FreeModule::new(shifts.clone());
            let syz = syzygy_module_with_shifts(&ring, &prev, &cols, shifts);
            maps.push(std::mem::take(&mut cols));
            modules.push(next);
            cols = syz.minimal_generators();
        }
        if min.ambient().rank() == 0 {
            modules.clear();
        }
        Resolution { ring, modules, maps }
    }

    pub fn betti(&self) -> BettiTable {
        self.resolution().betti()
    }

    /// Projective dimension, `None` for the zero module.
    pub fn projective_dimension(&self) -> Option<usize> {
        let r = self.resolution();
        (!r.modules.is_empty()).then(|| r.length())
    }

    /// Depth by Auslander–Buchsbaum; `None` stands for `depth(0) = +∞`.
    pub fn depth(&self) -> Option<usize> {
        self.projective_dimension().map(|pd| self.nvars() - pd)
    }

    /// Number of minimal generators in each degree.
    pub fn minimal_generator_degrees(&self) -> Vec<(i32, usize)> {
        self.resolution().modules.first().map(|f| f.degree_counts()).unwrap_or_default()
    }

    /// `Ext^i_S(M, S)` for `0 <= i <= n`, as pruned presentations.
    pub fn ext(&self, i: usize) -> Result<&GradedPresentation> {
        if i > self.nvars() {
            return Err(Error::OutOfRange(format!("Ext index {i} exceeds n = {}", self.nvars())));
        }
        Ok(&self.all_ext()[i])
    }

    /// `Ext^0, .., Ext^n`.
    pub fn all_ext(&self) -> &[GradedPresentation] {
        self.ext.get_or_init(|| Arc::new(self.compute_ext()))
    }

    fn compute_ext(&self) -> Vec<GradedPresentation> {
        let res = self.resolution();
        let ring = *self.ring();
        let fr = ring.field();
        let n = ring.nvars();
        let duals: Vec<FreeModule> = res.modules.iter().map(|f| f.dual()).collect();
        // dt[i][a] = image of e*_a (basis of F_i^*) in F_{i+1}^*.
        let dt: Vec<Vec<PolyVector>> = res
            .maps
            .iter()
            .enumerate()
            .map(|(i, cols)| {
                (0..res.modules[i].rank() as u32)
                    .map(|a| {
                        let mut v = PolyVector::zero();
                        for (b, col) in cols.iter().enumerate() {
                            v = v.add(&col.component(a).placed_at(b as u32), fr);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        (0..=n)
            .map(|i| {
                if i >= duals.len() {
                    return GradedPresentation::free(ring, FreeModule::zero());
                }
                let fi = &duals[i];
                let kernel: Vec<PolyVector> = if i + 1 < duals.len() {
                    let syz = syzygy_module_with_shifts(&ring, &duals[i + 1], &dt[i], fi.shifts().to_vec());
                    syz.minimal_generators()
                } else {
                    (0..fi.rank() as u32).map(PolyVector::basis).collect()
                };
                let image: Vec<PolyVector> = if i > 0 { dt[i - 1].clone() } else { Vec::new() };
                subquotient(&ring, fi, &kernel, &image).pruned()
            })
            .collect()
    }

    /// `(0 :_M f)` has finite length.
    pub fn is_filter_regular(&self, f: &PolyVector) -> bool {
        let colon = self.relations.colon_poly(f);
        self.hilbert_series().sub(&colon.quotient_series()).is_polynomial()
    }

    /// `(0 :_{Ext^i(M,S)} f)` has finite length for every `i`.
    pub fn is_strictly_filter_regular(&self, f: &PolyVector) -> bool {
        self.all_ext().iter().all(|e| e.is_zero() || e.is_filter_regular(f))
    }

    /// E-depth: the largest `t <= n` with `depth Ext^i >= min(t, n - i)` for all `i`.
    pub fn edepth(&self) -> usize {
        let n = self.nvars();
        let mut e = n;
        for (i, ext) in self.all_ext().iter().enumerate() {
            if let Some(d) = ext.depth() {
                if d < n - i {
                    e = e.min(d);
                }
            }
        }
        e
    }

    pub fn is_sequentially_cm(&self) -> bool {
        self.edepth() == self.nvars()
    }

    /// Each `Ext^i` is zero or Cohen–Macaulay of dimension `n - i`.
    pub fn peskine_criterion(&self) -> bool {
        let n = self.nvars();
        self.all_ext().iter().enumerate().all(|(i, e)| {
            e.is_zero() || (e.krull_dim() == Some((n - i) as u32) && e.depth() == Some(n - i))
        })
    }

    /// `M / H^0_m(M) = F / U^sat`.
    pub fn modulo_torsion(&self) -> GradedPresentation {
        Self::from_relations(self.relations.saturation())
    }

    /// `M / f M`.
    pub fn modulo_poly(&self, f: &PolyVector) -> GradedPresentation {
        Self::from_relations(self.relations.plus_poly_multiple(f))
    }

    /// `M / x_j M` over the ring without `x_j`.
    pub fn modulo_variable(&self, j: usize) -> GradedPresentation {
        Self::from_relations(self.relations.quotient_mod_variable(j))
    }
}

/// `K / I` for `I ⊆ K ⊆ F` given by generators, presented on the generators of `K`.
pub fn subquotient(ring: &Ring, ambient: &FreeModule, k: &[PolyVector], image: &[PolyVector]) -> GradedPresentation {
    let r = k.len();
    let shifts: Vec<i32> = k.iter().map(|v| v.degree(ambient.shifts()).expect("homogeneous kernel generator")).collect();
    let mut cols = k.to_vec();
    cols.extend(image.iter().cloned());
    let mut all_shifts = shifts.clone();
    all_shifts.extend(image.iter().map(|v| v.degree(ambient.shifts()).unwrap_or(0)));
    let syz = syzygy_module_with_shifts(ring, ambient, &cols, all_shifts);
    let fr = ring.field();
    let rels: Vec<PolyVector> = syz.gens().iter().map(|v| v.map_comps(fr, |c| ((c as usize) < r).then_some(c))).collect();
    GradedPresentation::from_relations(Submodule::from_parts(*ring, FreeModule::new(shifts), rels))
}

/// Removes generators that some relation expresses as a combination of the others.
fn prune(ring: &Ring, mut ambient: FreeModule, mut rels: Vec<PolyVector>) -> (FreeModule, Vec<PolyVector>) {
    let fr = ring.field();
    loop {
        let unit = rels.iter().enumerate().find_map(|(ri, r)| {
            r.terms().iter().find(|t| t.mono == Monomial::one()).map(|t| (ri, t.comp, t.coeff))
        });
        let Some((ri, k, c)) = unit else {
            break;
        };
        let pivot = rels.swap_remove(ri);
        let inv = fr.inv(c);
        rels = rels
            .into_iter()
            .map(|r| {
                let coeff = r.component(k);
                if coeff.is_zero() {
                    return r;
                }
                // r - (r_k / c) * pivot
                let m = pivot.mul_poly(&coeff, fr).scale(fr.neg(inv), fr);
                r.add(&m, fr)
            })
            .map(|r| r.map_comps(fr, |x| if x == k { None } else if x > k { Some(x - 1) } else { Some(x) }))
            .filter(|r| !r.is_zero())
            .collect();
        let mut shifts = ambient.shifts().to_vec();
        shifts.remove(k as usize);
        ambient = FreeModule::new(shifts);
    }
    (ambient, rels)
}
