//! Exact feasibility for `A x = b, x >= 0` over the rationals: phase one of the
//! simplex method on a dense tableau, with Bland's rule against cycling.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Returns some `x >= 0` with `A x = b`, or `None` if there is none.
///
/// `a` is given row by row; every row must have the same length.
pub fn nonnegative_solution(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    assert_eq!(m, b.len());
    let k = a.first().map_or(0, |r| r.len());
    assert!(a.iter().all(|r| r.len() == k), "ragged constraint matrix");
    if m == 0 {
        return Some(vec![BigRational::zero(); k]);
    }
    let width = k + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r = Vec::with_capacity(width);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for l in 0..m {
            r.push(if l == i { BigRational::from_integer(1.into()) } else { BigRational::zero() });
        }
        r.push(if flip { -rhs.clone() } else { rhs.clone() });
        t.push(r);
    }
    // Reduced costs of the phase-one objective (sum of artificials), rhs slot = -objective.
    let mut cost = vec![BigRational::zero(); width];
    for r in &t {
        for j in 0..k {
            cost[j] -= &r[j];
        }
        cost[width - 1] -= &r[width - 1];
    }
    let mut basis: Vec<usize> = (k..k + m).collect();
    loop {
        let Some(enter) = (0..k + m).find(|&j| cost[j].is_negative()) else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so an improving column always has a pivot.
        let (p, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, p, enter);
        basis[p] = enter;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < k {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], p: usize, q: usize) {
    let inv = t[p][q].recip();
    for v in t[p].iter_mut() {
        *v *= &inv;
    }
    let prow = t[p].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == p || row[q].is_zero() {
            continue;
        }
        let f = row[q].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    if !cost[q].is_zero() {
        let f = cost[q].clone();
        for (v, pv) in cost.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigRational>> {
        v.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    fn check(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, rhs) in a.iter().zip(b) {
            let s: BigRational = row.iter().zip(x).map(|(p, v)| p * v).sum();
            assert_eq!(&s, rhs);
        }
    }

    #[test]
    fn feasible_system() {
        let a = rows(&[&[1, 1, 0], &[0, 1, 1]]);
        let b = vec![q(2), q(3)];
        let x = nonnegative_solution(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn negative_rhs_and_fractions() {
        let a = rows(&[&[-3, 2], &[3, 0]]);
        let b = vec![q(-1), q(1)];
        let x = nonnegative_solution(&a, &b).unwrap();
        check(&a, &b, &x);
        assert_eq!(x[0], BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn infeasible_system() {
        let a = rows(&[&[1, 1], &[1, 1]]);
        assert!(nonnegative_solution(&a, &[q(1), q(2)]).is_none());
        let a = rows(&[&[1, -1]]);
        assert!(nonnegative_solution(&a, &[q(1)]).is_some());
        let a = rows(&[&[1, 2]]);
        assert!(nonnegative_solution(&a, &[q(-1)]).is_none());
    }

    #[test]
    fn degenerate_rows() {
        let a = rows(&[&[1, 0, 1], &[0, 0, 0], &[1, 0, 1]]);
        let b = vec![q(1), q(0), q(1)];
        let x = nonnegative_solution(&a, &b).unwrap();
        check(&a, &b, &x);
    }
}
