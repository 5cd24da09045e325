//! Additive characters `psi_a(x) = e(Tr(a x) / p)` and exact sums of p-th
//! roots of unity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::field::{FieldCtx, FieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveCharacter {
    pub a: FieldElement,
}

impl AdditiveCharacter {
    /// `x -> e(Tr(x)/p)`.
    pub const CANONICAL: AdditiveCharacter = AdditiveCharacter { a: FieldElement::from_index(1) };

    pub fn new(a: FieldElement) -> Self {
        AdditiveCharacter { a }
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_zero()
    }
}

/// A sum of p-th roots of unity kept as a histogram: `counts[j]` is the
/// multiplicity of `e(j/p)`.
///
/// The representation is unique up to adding the same integer to every
/// count, since `1 + e(1/p) + ... + e((p-1)/p) = 0` is the only rational
/// relation among the roots. [`CyclotomicSum::same_value`] compares values
/// exactly on that basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicSum {
    pub counts: Vec<i64>,
}

impl CyclotomicSum {
    pub fn zero(p: u32) -> Self {
        CyclotomicSum { counts: vec![0; p as usize] }
    }

    pub fn p(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn push(&mut self, exponent: u32) {
        self.counts[exponent as usize] += 1;
    }

    pub fn push_n(&mut self, exponent: u32, k: i64) {
        self.counts[exponent as usize] += k;
    }

    pub fn merge(&mut self, other: &CyclotomicSum) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    /// Total number of summands, for sums built by accumulation.
    pub fn weight(&self) -> i64 {
        self.counts.iter().sum()
    }

    /// Canonical form: every count shifted so the minimum is zero.
    pub fn normalized(&self) -> CyclotomicSum {
        let m = self.counts.iter().copied().min().unwrap_or(0);
        CyclotomicSum { counts: self.counts.iter().map(|c| c - m).collect() }
    }

    /// Exact equality of the complex values.
    pub fn same_value(&self, other: &CyclotomicSum) -> bool {
        self.counts.len() == other.counts.len() && self.normalized() == other.normalized()
    }

    /// Whether the value is exactly zero (all counts equal).
    pub fn is_zero(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }

    /// Value as an integer when it is rational, i.e. when all nonconstant
    /// roots share one count.
    pub fn as_integer(&self) -> Option<i64> {
        let rest = &self.counts[1..];
        let c = rest.first().copied().unwrap_or(0);
        rest.iter().all(|&x| x == c).then(|| self.counts[0] - c)
    }

    pub fn eval_complex(&self) -> Complex64 {
        eval_complex(self)
    }
}

pub fn eval_complex(cs: &CyclotomicSum) -> Complex64 {
    let p = cs.p() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &c) in cs.counts.iter().enumerate() {
        if c != 0 {
            acc += Complex64::from_polar(1.0, TAU * j as f64 / p) * c as f64;
        }
    }
    acc
}

/// Lookup of `e(j/p)` for all `j`.
#[derive(Clone, Debug)]
pub struct RootTable {
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(p: u32) -> Self {
        let pf = p as f64;
        RootTable { roots: (0..p).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / pf)).collect() }
    }

    pub fn root(&self, j: u32) -> Complex64 {
        self.roots[j as usize]
    }

    pub fn eval(&self, cs: &CyclotomicSum) -> Complex64 {
        cs.counts.iter().zip(&self.roots).filter(|(c, _)| **c != 0).map(|(&c, r)| r * c as f64).sum()
    }
}

/// `Tr(a x)`, so that `psi_a(x) = e(psi_exponent / p)`.
pub fn psi_exponent(ctx: &FieldCtx, chi: AdditiveCharacter, x: FieldElement) -> u32 {
    ctx.trace(ctx.mul(chi.a, x))
}

/// Exact `sum_{s in set} psi_a(s)`.
pub fn char_sum<I>(ctx: &FieldCtx, chi: AdditiveCharacter, set: I) -> CyclotomicSum
where
    I: IntoIterator<Item = FieldElement>,
{
    let mut cs = CyclotomicSum::zero(ctx.p());
    for s in set {
        cs.push(psi_exponent(ctx, chi, s));
    }
    cs
}
