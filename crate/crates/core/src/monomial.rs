//! Dense exponent vectors and the refined `Z x Z^t` multidegree.

use std::fmt;

/// Upper bound on the number of variables a ring may have.
pub const MAX_VARS: usize = 12;

/// A monomial `x_1^a_1 ... x_n^a_n`, stored densely with a cached total degree.
///
/// Slots beyond the ring's variable count are always zero, so equality and
/// hashing do not need to know `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], deg: 0 }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = e;
            m.deg += e as u32;
        }
        m
    }

    /// The variable `x_{i+1}` (zero-based index).
    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn var_pow(i: usize, e: u16) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self, n: usize) -> &[u16] {
        &self.exps[..n]
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m.deg += other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Sets the exponent of variable `i`.
    pub fn with_exp(&self, i: usize, e: u16) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u32 + e as u32;
        m.exps[i] = e;
        m
    }

    /// Removes variable `i`, shifting later variables down by one.
    pub fn drop_var(&self, i: usize) -> Monomial {
        let mut m = Monomial::one();
        let mut k = 0;
        for j in 0..MAX_VARS {
            if j == i {
                continue;
            }
            m.exps[k] = self.exps[j];
            m.deg += self.exps[j] as u32;
            k += 1;
        }
        m
    }

    /// Swaps variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Monomial {
        let mut m = *self;
        m.exps.swap(i, j);
        m
    }

    /// Multidegree under the `Z x Z^t` grading of a ring in `n` variables:
    /// the degree in `x_1..x_{n-t}` followed by the exponents of `x_{n-t+1}..x_n`.
    pub fn multidegree(&self, n: usize, t: usize) -> Vec<i64> {
        assert!(t <= n);
        let mut out = Vec::with_capacity(t + 1);
        out.push(self.exps[..n - t].iter().map(|&e| e as i64).sum());
        out.extend(self.exps[n - t..n].iter().map(|&e| e as i64));
        out
    }

    /// Writes the monomial in the text grammar (`x1^2*x3`), `1` for the unit.
    pub fn fmt_vars(&self, n: usize, f: &mut impl fmt::Write) -> fmt::Result {
        if self.deg == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for i in 0..n {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        self.fmt_vars(n, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multidegree_examples() {
        let m = Monomial::from_exponents(&[1, 0, 0, 1]);
        assert_eq!(m.multidegree(4, 2), vec![1, 0, 1]);
        assert_eq!(m.multidegree(4, 0), vec![2]);
        let m = Monomial::from_exponents(&[2, 0, 1]);
        assert_eq!(m.multidegree(3, 3), vec![0, 2, 0, 1]);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[1, 2]);
        let b = Monomial::from_exponents(&[2, 1]);
        let l = a.lcm(&b);
        assert_eq!(l, Monomial::from_exponents(&[2, 2]));
        assert!(a.divides(&l) && b.divides(&l));
        assert_eq!(a.quotient_of(&l), Monomial::var(0));
        assert!(!a.is_coprime(&b));
    }

    #[test]
    fn drop_and_swap() {
        let m = Monomial::from_exponents(&[1, 2, 3]);
        assert_eq!(m.drop_var(1), Monomial::from_exponents(&[1, 3]));
        assert_eq!(m.swap_vars(0, 2), Monomial::from_exponents(&[3, 2, 1]));
    }
}
