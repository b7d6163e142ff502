use edepth::cohomology::{kunneth_lift, lc_table};
use edepth::cone::*;
use edepth::corpus::{self, CorpusKind};
use edepth::resolution::GradedPresentation;
use edepth::{FreeModule, Ring};
use num_rational::BigRational;
use num_traits::Zero;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[test]
fn j_rays_lie_in_the_cone() {
    let mut book = RayBook::new();
    for n in 2..=4 {
        for m in 1..=4 {
            for j in -2..=2 {
                let t = book.j_ray(n, m, j);
                let (a, b) = default_window(&t);
                for pad in 0..3 {
                    let r = cone_membership(&t, (a - pad, b + pad), ConeMode::Edepth).unwrap();
                    assert!(r.member, "J^{m}(-{j}) n={n} pad={pad}: {:?}", r.violated);
                }
            }
        }
    }
}

#[test]
fn s_rays_lie_in_both_cones() {
    for n in 0..=4 {
        for i in 0..=n {
            let t = s_ray_table(n, i, 1);
            let w = default_window(&t);
            assert!(cone_membership(&t, w, ConeMode::Seq).unwrap().member);
            assert!(cone_membership(&t, (w.0 - 2, w.1 + 2), ConeMode::Edepth).unwrap().member);
        }
    }
}

#[test]
fn j_ray_lift_agrees_with_direct_computation() {
    let mut book = RayBook::new();
    for m in 1..=3 {
        assert_eq!(book.j_ray(3, m, 1), j_ray_table_direct(3, m, 1));
        let base = lc_table(&j_power_module(Ring::with_vars(2), m));
        assert_eq!(book.j_ray(3, m, 0), delta(&kunneth_lift(&base, 1)).shifted(0));
    }
    assert_eq!(book.j_ray(4, 2, -1), j_ray_table_direct(4, 2, -1));
}

#[test]
fn j_one_over_two_variables_is_the_maximal_ideal() {
    let m2 = j_power_module(Ring::with_vars(2), 1);
    let mut book = RayBook::new();
    assert_eq!(book.j_ray(2, 1, 0), delta(&lc_table(&m2)));
}

#[test]
fn rays_are_extremal_in_a_window() {
    for n in 2..=3 {
        for i in 0..=n {
            assert!(is_extremal_in_window(n, Ray::S { i, j: i as i32 }, -4, 4));
        }
        for m in 1..=3 {
            assert!(is_extremal_in_window(n, Ray::J { m, j: 0 }, -4, 4), "J^{m} n={n}");
        }
    }
}

#[test]
fn decompose_x2_xy() {
    let m = GradedPresentation::new(corpus::x2_xy(Ring::with_vars(2))).unwrap();
    let d = decompose(&m, 1).unwrap();
    assert!(d.sequentially_cm);
    assert!(d.coefficients.j.is_empty());
    let expected = [((0usize, 1i32), q(1)), ((1, 0), q(1))].into_iter().collect();
    assert_eq!(d.coefficients.s, expected);
    assert_eq!(reconstruct(&d.coefficients), d.delta);
}

#[test]
fn decompose_free_module() {
    for n in 1..=3 {
        let m = GradedPresentation::free(Ring::with_vars(n), FreeModule::new(vec![2]));
        let d = decompose(&m, 1).unwrap();
        assert_eq!(d.coefficients.s.len(), 1);
        assert_eq!(d.coefficients.s.get(&(n, 2)), Some(&q(1)));
    }
}

#[test]
fn decompose_powers_of_j() {
    for n in 2..=3 {
        for m in 1..=3 {
            let module = j_power_module(Ring::with_vars(n), m).twist(-1);
            let d = decompose(&module, 7).unwrap();
            assert!(!d.sequentially_cm);
            assert!(d.coefficients.is_nonnegative());
            assert_eq!(reconstruct(&d.coefficients), d.delta, "J^{m} n={n}");
        }
    }
}

#[test]
fn decompose_requires_edepth() {
    let u = corpus::rational_quartic(Ring::with_vars(4)).unwrap();
    let m = GradedPresentation::new(u).unwrap();
    assert!(matches!(decompose(&m, 1), Err(edepth::Error::EdepthTooSmall { edepth: 0, required: 2 })));
}

#[test]
fn corpus_modules_decompose_exactly() {
    let mut checked = 0;
    for kind in [CorpusKind::Monomial, CorpusKind::Binomial, CorpusKind::Module] {
        for inst in corpus::generate(kind, &[2, 3], 12, 11, 32003).unwrap() {
            let m = GradedPresentation::new(inst.submodule).unwrap();
            let n = m.nvars();
            if m.edepth() + 2 < n {
                continue;
            }
            let d = decompose(&m, 3).unwrap();
            assert!(d.coefficients.is_nonnegative(), "{}", inst.label);
            assert_eq!(reconstruct(&d.coefficients), d.delta, "{}", inst.label);
            let w = default_window(&d.delta);
            assert!(cone_membership(&d.delta, w, ConeMode::Edepth).unwrap().member, "{}", inst.label);
            if d.sequentially_cm {
                assert!(d.coefficients.j.is_empty() && d.coefficients.s_integral());
            }
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn realized_sequential_tables() {
    let ring = Ring::with_vars(3);
    let t = DeltaTable::from_entries(3, [(0, 1, 2), (1, 0, 1), (3, -1, 1), (2, 2, 1)]);
    let m = realize_sequential(ring, &t).unwrap();
    assert_eq!(delta(&lc_table(&m)), t);
    assert!(t.entries().all(|(_, _, v)| !v.is_zero()));
}
