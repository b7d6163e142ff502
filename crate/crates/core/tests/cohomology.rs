mod common;

use edepth::cohomology::*;
use edepth::corpus::{self, CorpusKind};
use edepth::gin::*;
use edepth::hilbert::{HilbertSeries, LaurentPoly};
use edepth::resolution::GradedPresentation;
use edepth::submodule::Submodule;
use edepth::{FreeModule, Monomial, PolyVector, Ring};

fn mono(e: &[u16]) -> PolyVector {
    PolyVector::monomial(Monomial::from_exponents(e), 0)
}

fn x2_xy() -> GradedPresentation {
    GradedPresentation::new(corpus::x2_xy(Ring::with_vars(2))).unwrap()
}

fn small_corpus() -> Vec<corpus::Instance> {
    let mut out = Vec::new();
    for kind in [CorpusKind::Monomial, CorpusKind::Binomial, CorpusKind::Module] {
        out.extend(corpus::generate(kind, &[2, 3], 8, 77, 32003).unwrap());
    }
    out
}

/// A finite Hilbert function in `z`, rewritten in `w = z^{-1}`.
fn to_w(hs: &HilbertSeries) -> HilbertSeries {
    let v = hs.finite_values().expect("finite length");
    HilbertSeries::polynomial(LaurentPoly::from_pairs(v.into_iter().map(|(d, c)| (-d, c))))
}

#[test]
fn hilbert_series_examples() {
    let s = GradedPresentation::free(Ring::with_vars(2), FreeModule::free(1));
    assert_eq!(s.hilbert_series(), HilbertSeries::free(2, 0));
    let hs = x2_xy().hilbert_series();
    assert_eq!((0..6).map(|d| hs.coeff(d)).collect::<Vec<_>>(), vec![1, 2, 1, 1, 1, 1]);
    let f = GradedPresentation::free(Ring::with_vars(1), FreeModule::new(vec![1, 0]));
    assert_eq!(f.hilbert_series(), HilbertSeries::new(LaurentPoly::from_pairs([(0, 1), (1, 1)]), 1));
}

#[test]
fn local_cohomology_examples() {
    let kx = GradedPresentation::free(Ring::with_vars(1), FreeModule::free(1));
    let t = lc_table(&kx);
    assert!(t.rows[0].is_zero());
    assert!((-6..=-1).all(|j| t.h(1, j) == 1) && (0..4).all(|j| t.h(1, j) == 0));

    let t = lc_table(&x2_xy());
    assert_eq!(t.finite_row(0), Some(vec![(1, 1)]));
    assert!((-6..=-1).all(|j| t.h(1, j) == 1) && (0..4).all(|j| t.h(1, j) == 0));
    assert!(t.rows[2].is_zero());

    let r = GradedPresentation::new(corpus::rational_quartic(Ring::with_vars(4)).unwrap()).unwrap();
    let t = lc_table(&r);
    let row = t.finite_row(1).expect("H^1 has finite length");
    assert!(row.iter().any(|&(_, v)| v != 0));
    assert!(t.rows[0].is_zero() && t.rows[3].is_zero() && t.rows[4].is_zero());
}

#[test]
fn tables_of_free_modules_and_sums() {
    let ring = Ring::with_vars(3);
    let f = GradedPresentation::free(ring, FreeModule::new(vec![0, 2]));
    let t = lc_table(&f);
    assert!((0..3).all(|i| t.rows[i].is_zero()));
    assert_eq!(t.rows[3], top_cohomology_of_polynomial_ring(3).add(&top_cohomology_of_polynomial_ring(3).shift(-2)));
    for inst in small_corpus().into_iter().take(10) {
        let m = GradedPresentation::new(inst.submodule).unwrap();
        let sum = m.direct_sum(&m.twist(1));
        assert_eq!(lc_table(&sum), lc_table(&m).add(&lc_table(&m.twist(1))));
    }
}

#[test]
fn socle_examples() {
    let r2 = Ring::with_vars(2);
    let k = GradedPresentation::new(Submodule::power_of_maximal(r2, FreeModule::free(1), 1)).unwrap();
    assert_eq!(socle_table(&k).rows[0].iter().collect::<Vec<_>>(), vec![(&0, &1)]);
    let kx = GradedPresentation::free(Ring::with_vars(1), FreeModule::free(1));
    assert_eq!(socle_table(&kx).rows[1].iter().collect::<Vec<_>>(), vec![(&-1, &1)]);
    let s = socle_table(&x2_xy());
    assert_eq!(s.rows[0].iter().collect::<Vec<_>>(), vec![(&1, &1)]);
    assert_eq!(s.rows[1].iter().collect::<Vec<_>>(), vec![(&-1, &1)]);
}

#[test]
fn socle_of_h0_matches_linear_algebra() {
    for inst in small_corpus() {
        let u = inst.submodule;
        let m = GradedPresentation::new(u.clone()).unwrap();
        let s = socle_table(&m);
        for d in -1..=6 {
            assert_eq!(s.get(0, d), common::socle_dim(&u, d), "{} degree {d}", inst.label);
        }
    }
}

#[test]
fn duality_agrees_with_saturation_and_oracle() {
    for inst in small_corpus() {
        let u = inst.submodule;
        let m = GradedPresentation::new(u.clone()).unwrap();
        let by_sat = h0_by_saturation(&m);
        let t = lc_table(&m);
        for d in -2..=7 {
            assert_eq!(t.h(0, d), by_sat.coeff(d), "{} degree {d}", inst.label);
            if d >= 0 {
                assert_eq!(by_sat.coeff(d), common::torsion_dim(&u, d, 8) as i64, "{} degree {d}", inst.label);
            }
        }
    }
}

#[test]
fn rows_have_polynomial_tails_and_respect_grothendieck() {
    for inst in small_corpus() {
        let m = GradedPresentation::new(inst.submodule).unwrap();
        if m.is_zero() {
            continue;
        }
        let t = lc_table(&m);
        let (depth, dim) = (m.depth().unwrap(), m.krull_dim().unwrap() as usize);
        for i in 0..=m.nvars() {
            let _ = t.delta_row(i);
            assert!(t.rows[i].is_nonnegative());
            if i < depth || i > dim {
                assert!(t.rows[i].is_zero(), "{} row {i}", inst.label);
            }
        }
        assert!(!t.rows[depth].is_zero() && !t.rows[dim].is_zero(), "{}", inst.label);
    }
}

#[test]
fn filtration_examples() {
    let f = filtration_modules(&x2_xy(), 2).unwrap();
    assert_eq!(f[0].finite_values(), Some(vec![(1, 1)]));
    assert_eq!(f[1].finite_values(), Some(vec![(0, 1)]));
    assert!(f[2].is_zero());

    let s = GradedPresentation::free(Ring::with_vars(2), FreeModule::free(1));
    let f = filtration_modules(&s, 2).unwrap();
    assert!(f[0].is_zero() && f[1].is_zero());
    assert_eq!(f[2].finite_values(), Some(vec![(0, 1)]));

    let art = GradedPresentation::new(Submodule::power_of_maximal(Ring::with_vars(2), FreeModule::free(1), 3)).unwrap();
    let f = filtration_modules(&art, 2).unwrap();
    assert_eq!(f[0], art.hilbert_series());
    assert!(f[1].is_zero() && f[2].is_zero());

    let bad = GradedPresentation::new(Submodule::ideal(Ring::with_vars(2), vec![mono(&[0, 2]), mono(&[1, 1])]).unwrap()).unwrap();
    assert!(matches!(filtration_modules(&bad, 1), Err(edepth::Error::NotFilterRegular(_))));
}

#[test]
fn family_examples() {
    for n in 1..=3 {
        let s = GradedPresentation::free(Ring::with_vars(n), FreeModule::free(1));
        let fam = family_n(&s, n).unwrap();
        for (k, nj) in fam.iter().enumerate() {
            assert_eq!(nj.nvars(), n - k);
            assert_eq!(nj.hilbert_series(), HilbertSeries::free((n - k) as u32, 0));
        }
    }
    let art = GradedPresentation::new(Submodule::power_of_maximal(Ring::with_vars(2), FreeModule::free(1), 2)).unwrap();
    assert!(family_n(&art, 1).unwrap()[1].is_zero());
    let r = corpus::rational_quartic(Ring::with_vars(4)).unwrap();
    assert!(matches!(family_n(&GradedPresentation::new(r).unwrap(), 1), Err(edepth::Error::NotMultihomogeneous(1))));
}

#[test]
fn kunneth_examples() {
    let k0 = GradedPresentation::free(Ring::with_vars(0), FreeModule::free(1));
    for n in 1..=3 {
        let lifted = kunneth_lift(&lc_table(&k0), n);
        let s = GradedPresentation::free(Ring::with_vars(n), FreeModule::free(1));
        assert_eq!(lifted, lc_table(&s));
    }
    let kx = GradedPresentation::free(Ring::with_vars(1), FreeModule::free(1));
    assert_eq!(kunneth_lift(&lc_table(&kx), 1), lc_table(&GradedPresentation::free(Ring::with_vars(2), FreeModule::free(1))));
    let t = lc_table(&x2_xy());
    assert_eq!(kunneth_lift(&t, 0), t);
    for inst in corpus::generate(CorpusKind::Module, &[2], 6, 4, 32003).unwrap() {
        let u = inst.submodule;
        let base = lc_table(&GradedPresentation::new(u.clone()).unwrap());
        for j in 1..=2 {
            let ext = GradedPresentation::new(u.extend_ring(j).unwrap()).unwrap();
            assert_eq!(lc_table(&ext), kunneth_lift(&base, j), "{} j={j}", inst.label);
        }
    }
}

#[test]
fn splitting_of_multigraded_cohomology() {
    // On F/gin_{rev_t}(U) the low rows come from the filtration quotients and
    // the high rows from the last member of the family.
    let mut checked = 0;
    for inst in corpus::generate(CorpusKind::Binomial, &[2, 3], 8, 19, 32003).unwrap() {
        let u = inst.submodule;
        let n = u.ring().nvars();
        for t in 1..=n {
            let g = gin_rev_t(&u, t, 9).unwrap().gin;
            let m = GradedPresentation::new(g).unwrap();
            let table = lc_table(&m);
            let pieces = filtration_modules(&m, t).unwrap();
            for j in 0..t {
                let expected = to_w(&pieces[j]).mul(&top_cohomology_of_polynomial_ring(j));
                assert_eq!(table.rows[j], expected, "{} t={t} row {j}", inst.label);
            }
            let fam = family_n(&m, t).unwrap();
            let lifted = kunneth_lift(&lc_table(fam.last().unwrap()), t);
            for j in t..=n {
                assert_eq!(table.rows[j], lifted.rows[j], "{} t={t} row {j}", inst.label);
            }
            checked += 1;
        }
    }
    assert!(checked >= 20);
}

#[test]
fn generic_hyperplane_section_shifts_rows() {
    // For edepth > 0 and a generic linear form: HS(H^i(M))(z - 1) = HS(H^{i-1}(N / lN)), N = M/H^0(M).
    for inst in small_corpus() {
        let m = GradedPresentation::new(inst.submodule.clone()).unwrap();
        if m.is_zero() || m.edepth() == 0 {
            continue;
        }
        let n = m.nvars();
        let ell = edepth::socle::random_linear_forms(m.ring(), 1, 31).remove(0);
        let cut = m.modulo_torsion().modulo_poly(&ell);
        let (tm, tc) = (lc_table(&m), lc_table(&cut));
        // z - 1 = w^{-1}(1 - w)
        let factor = LaurentPoly::from_pairs([(-1, 1), (0, -1)]);
        for i in 1..=n {
            assert_eq!(tm.rows[i].mul_poly(&factor), tc.rows[i - 1], "{} row {i}", inst.label);
        }
    }
}

#[test]
fn random_change_properties() {
    let ring = Ring::with_vars(4);
    let f = ring.field();
    assert_eq!(random_change(f, 4, 0, 3), edepth::matrix::Matrix::identity(4));
    for t in 0..=4 {
        let g = random_change(f, 4, t, 11);
        assert_eq!(g, random_change(f, 4, t, 11));
        assert!((0..4).all(|i| g.get(i, i) != 0));
        assert!((0..4).all(|i| (i + 1..4).all(|k| g.get(i, k) == 0)));
        assert_eq!(g.rank(f), 4);
    }
}

#[test]
fn gin_examples() {
    let u = corpus::x2_xy(Ring::with_vars(2));
    let g = gin_rev_t(&u, 2, 5).unwrap();
    assert!(g.gin.equals(&u) && g.certificate.agreed);
    for t in 0..=2 {
        assert!(gin_rev_t(&u, t, 1).unwrap().gin.equals(&u));
    }
    let b = corpus::generate(CorpusKind::Binomial, &[3], 1, 2, 32003).unwrap().remove(0).submodule;
    assert!(gin_rev_t(&b, 0, 1).unwrap().gin.equals(&b));
    for n in 2..=4 {
        let ring = Ring::with_vars(n);
        let ell = edepth::socle::random_linear_forms(&ring, 1, n as u64).remove(0);
        let u = Submodule::ideal(ring, vec![ell]).unwrap();
        for t in n - 1..=n {
            let g = gin_rev_t(&u, t, 4).unwrap().gin;
            assert!(g.contains(&PolyVector::var(0)), "n={n} t={t}");
        }
    }
}

#[test]
fn gin_invariants_on_corpus() {
    for inst in small_corpus() {
        let u = inst.submodule;
        let n = u.ring().nvars();
        for t in 0..=n {
            let r = gin_rev_t(&u, t, 13).unwrap();
            assert!(r.certificate.agreed);
            assert!(r.gin.is_multihomogeneous(t), "{} t={t}", inst.label);
            assert_eq!(r.gin.quotient_series(), u.quotient_series());
            assert!(check_filter_regular_tail(&r.gin, t).is_ok());
            let mg = GradedPresentation::new(r.gin.clone()).unwrap();
            assert!(mg.edepth() >= t, "{} t={t}", inst.label);
            assert!(semicontinuity_check(&u, t, 13).unwrap(), "{} t={t}", inst.label);
        }
    }
}

#[test]
fn gin_criterion_examples() {
    let u = corpus::x2_xy(Ring::with_vars(2));
    let r = check_gin_criterion(&u, 2, 3).unwrap();
    assert_eq!((r.lhs, r.rhs, r.consistent), (true, true, true));

    let q = corpus::rational_quartic(Ring::with_vars(4)).unwrap();
    let r = check_gin_criterion(&q, 1, 3).unwrap();
    assert_eq!((r.lhs, r.rhs, r.consistent), (false, false, true));
    assert!(r.differing_row.is_some());
    assert!(semicontinuity_check(&q, 1, 3).unwrap());

    for n in 1..=3 {
        let ring = Ring::with_vars(n);
        let f = Submodule::zero(ring, FreeModule::new(vec![0, 1]));
        for t in 0..=n {
            let r = check_gin_criterion(&f, t, 2).unwrap();
            assert_eq!((r.lhs, r.rhs, r.consistent), (true, true, true));
        }
    }
}

#[test]
fn full_gin_detects_sequentially_cm() {
    for inst in small_corpus() {
        let u = inst.submodule;
        let n = u.ring().nvars();
        let r = check_gin_criterion(&u, n, 17).unwrap();
        let m = GradedPresentation::new(u).unwrap();
        assert!(r.consistent);
        assert_eq!(r.rhs, m.is_sequentially_cm(), "{}", inst.label);
    }
}
