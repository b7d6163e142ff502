//! Polynomial rings over prime fields and their graded free modules.

use crate::error::{Error, Result};
use crate::field::{Field, DEFAULT_PRIME};
use crate::monomial::MAX_VARS;

/// `S = F_p[x_1..x_n]` with the standard grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    n: usize,
}

impl Ring {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::InvalidRing(format!("at most {MAX_VARS} variables are supported, got {n}")));
        }
        Ok(Ring { field: Field::new(p)?, n })
    }

    /// Ring with the default characteristic 32003.
    pub fn with_vars(n: usize) -> Self {
        Ring::new(DEFAULT_PRIME, n).expect("default ring")
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    /// The ring with one variable fewer, `S_{n-1}`.
    pub fn drop_var(&self) -> Ring {
        assert!(self.n > 0);
        Ring { field: self.field, n: self.n - 1 }
    }

    /// The ring with `extra` additional trailing variables.
    pub fn extend(&self, extra: usize) -> Result<Ring> {
        Ring::new(self.field.characteristic(), self.n + extra)
    }

    pub fn header(&self) -> String {
        format!("ring p={} n={}", self.characteristic(), self.n)
    }
}

/// A graded free module `⊕ S(-shift_i)`; basis element `e_i` sits in degree `shift_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeModule {
    shifts: Vec<i32>,
}

impl FreeModule {
    pub fn new(shifts: Vec<i32>) -> Self {
        FreeModule { shifts }
    }

    /// `S^r` with all generators in degree zero.
    pub fn free(rank: usize) -> Self {
        FreeModule { shifts: vec![0; rank] }
    }

    pub fn zero() -> Self {
        FreeModule { shifts: Vec::new() }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    #[inline]
    pub fn shift(&self, i: usize) -> i32 {
        self.shifts[i]
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut s = self.shifts.clone();
        s.extend_from_slice(&other.shifts);
        FreeModule { shifts: s }
    }

    /// Twist by `d`: every basis element moves up `d` degrees.
    pub fn twisted(&self, d: i32) -> FreeModule {
        FreeModule { shifts: self.shifts.iter().map(|s| s + d).collect() }
    }

    /// The graded dual `Hom(F, S)`.
    pub fn dual(&self) -> FreeModule {
        FreeModule { shifts: self.shifts.iter().map(|s| -s).collect() }
    }

    /// Multiset of shifts as a sorted `(degree, count)` list.
    pub fn degree_counts(&self) -> Vec<(i32, usize)> {
        let mut s = self.shifts.clone();
        s.sort_unstable();
        let mut out: Vec<(i32, usize)> = Vec::new();
        for d in s {
            match out.last_mut() {
                Some((e, c)) if *e == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }
}
