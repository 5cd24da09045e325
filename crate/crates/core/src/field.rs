//! Arithmetic in F_{p^n} = F_p[X]/(f).
//!
//! Elements are stored as their coefficient index `c_0 + c_1 p + ... +
//! c_{n-1} p^{n-1}`, so the numeric order of the index is the element order
//! used everywhere (constant term fastest, zero first). Construction picks the
//! first monic irreducible modulus in that same index order.
//!
//! Fields up to the table cap carry discrete log, inverse and trace tables.
//! Every table-backed operation also has a table-free route (`mul_poly`,
//! `inv_euclid`, `trace_frobenius`) that the tests use as an oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{self, Poly};

/// Largest field order accepted by [`make_field`].
pub const DEFAULT_SIZE_CAP: u64 = 1 << 20;
/// Largest order for which lookup tables are built.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 20;
pub const MAX_DEGREE: u32 = 24;

/// An element of a field, identified by its coefficient index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// Wraps an index without range checking; use [`FieldCtx::element`] for
    /// checked construction.
    pub const fn from_index(i: u32) -> Self {
        FieldElement(i)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u32,
    pub n: u32,
    /// Monic modulus, constant term first, length `n + 1`.
    pub modulus: Vec<u32>,
}

#[derive(Clone, Copy, Debug)]
pub struct FieldCaps {
    pub size_cap: u64,
    pub table_cap: u64,
}

impl Default for FieldCaps {
    fn default() -> Self {
        FieldCaps { size_cap: DEFAULT_SIZE_CAP, table_cap: DEFAULT_TABLE_CAP }
    }
}

#[derive(Debug)]
struct Tables {
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// `exp[k] = g^k` for `0 <= k < q - 1`.
    exp: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
}

#[derive(Debug)]
pub struct FieldCtx {
    params: FieldParams,
    q: u32,
    place: Vec<u32>,
    /// `Tr(X^j)` for the polynomial basis.
    basis_trace: Vec<u32>,
    tables: Option<Tables>,
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Builds F_{p^n} with the default caps.
pub fn make_field(p: u64, n: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, n, FieldCaps::default())
}

impl FieldCtx {
    pub fn new(p: u64, n: u32, caps: FieldCaps) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::BadDegree(n));
        }
        let q = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
        if q > caps.size_cap as u128 || q > u32::MAX as u128 {
            return Err(Error::FieldTooLarge { p, n, cap: caps.size_cap });
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = if n == 1 {
            // F_p itself; X is irreducible and reduces every constant to itself.
            vec![0, 1]
        } else {
            poly::smallest_irreducible(p, n).ok_or(Error::NoIrreducible { p, n })?
        };
        let place: Vec<u32> = (0..n).map(|j| p.pow(j)).collect();
        let mut ctx =
            FieldCtx { params: FieldParams { p, n, modulus }, q, place, basis_trace: Vec::new(), tables: None };
        ctx.basis_trace = (0..n)
            .map(|j| {
                let mut xj = vec![0u32; j as usize + 1];
                xj[j as usize] = 1;
                ctx.trace_of_poly(&xj)
            })
            .collect();
        let gram: Vec<Vec<u32>> =
            (0..n as usize).map(|i| (0..n as usize).map(|j| ctx.basis_trace_of_product(i, j)).collect()).collect();
        assert_eq!(linalg::rank(&gram, n as usize, p), n as usize, "trace form is degenerate");
        if (q as u64) <= caps.table_cap {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    fn basis_trace_of_product(&self, i: usize, j: usize) -> u32 {
        let mut m = vec![0u32; i + j + 1];
        m[i + j] = 1;
        let r = poly::rem(&m, &self.params.modulus, self.params.p);
        self.trace_of_poly(&r)
    }

    /// Frobenius orbit sum of a reduced polynomial.
    fn trace_of_poly(&self, a: &[u32]) -> u32 {
        let p = self.params.p;
        let f = &self.params.modulus;
        let mut acc: Poly = Vec::new();
        let mut cur: Poly = poly::rem(a, f, p);
        for _ in 0..self.params.n {
            let len = acc.len().max(cur.len());
            acc = (0..len).map(|i| (acc.get(i).unwrap_or(&0) + cur.get(i).unwrap_or(&0)) % p).collect();
            cur = poly::powmod(&cur, p as u128, f, p);
        }
        while acc.last() == Some(&0) {
            acc.pop();
        }
        assert!(acc.len() <= 1, "trace left the prime field");
        acc.first().copied().unwrap_or(0)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let order = self.q as u64 - 1;
        let factors = prime_factors(order);
        let p = self.params.p;
        let f = &self.params.modulus;
        let generator = (1..self.q)
            .map(FieldElement)
            .find(|&g| {
                let gp = self.to_poly(g);
                factors.iter().all(|&r| poly::powmod(&gp, (order / r) as u128, f, p) != vec![1])
            })
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![0u32; q];
        let mut cur = FieldElement(1);
        for k in 0..(q - 1) as u32 {
            exp.push(cur.0);
            log[cur.0 as usize] = k;
            cur = self.mul_poly(cur, generator);
        }
        debug_assert_eq!(cur, FieldElement(1));
        let mut inv = vec![0u32; q];
        for x in 1..q {
            let k = log[x] as usize;
            inv[x] = exp[(q - 1 - k) % (q - 1)];
        }
        let trace = (0..self.q).map(|x| self.trace_linear(FieldElement(x))).collect();
        Tables { log, exp, inv, trace }
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    /// Field order `p^n`.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.params.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Checked element from an index.
    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidElement(format!("index {index} not below q = {}", self.q)))
        }
    }

    /// Embeds an integer of the prime field.
    pub fn from_int(&self, k: u64) -> FieldElement {
        FieldElement((k % self.params.p as u64) as u32)
    }

    /// Element from a coefficient list (constant term first). Shorter lists
    /// are zero-padded.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.params.n as usize {
            return Err(Error::InvalidElement(format!(
                "{} coefficients given for degree {}",
                coeffs.len(),
                self.params.n
            )));
        }
        let mut idx = 0u32;
        for (j, &c) in coeffs.iter().enumerate() {
            if c >= self.params.p {
                return Err(Error::InvalidElement(format!("coefficient {c} not reduced mod {}", self.params.p)));
            }
            idx += c * self.place[j];
        }
        Ok(FieldElement(idx))
    }

    /// Length-`n` coefficient vector, constant term first.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let p = self.params.p;
        let mut v = Vec::with_capacity(self.params.n as usize);
        let mut r = x.0;
        for _ in 0..self.params.n {
            v.push(r % p);
            r /= p;
        }
        v
    }

    fn to_poly(&self, x: FieldElement) -> Poly {
        let mut v = self.coeffs(x);
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn element_of_poly(&self, a: &[u32]) -> FieldElement {
        FieldElement(a.iter().zip(&self.place).map(|(&c, &w)| c * w).sum())
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    /// Nonzero elements in index order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.q).map(FieldElement)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.params.p;
        if p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u32;
        for &w in &self.place {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let p = self.params.p;
        if p == 2 {
            return x;
        }
        let mut a = x.0;
        let mut out = 0u32;
        for &w in &self.place {
            out += ((p - a % p) % p) * w;
            a /= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    /// Multiplication by an element of the prime field.
    pub fn scale(&self, c: u32, x: FieldElement) -> FieldElement {
        let p = self.params.p;
        let c = c % p;
        let mut a = x.0;
        let mut out = 0u32;
        for &w in &self.place {
            out += ((a % p) * c % p) * w;
            a /= p;
        }
        FieldElement(out)
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => {
                if x.0 == 0 || y.0 == 0 {
                    return FieldElement::ZERO;
                }
                let ord = self.q as u64 - 1;
                let k = (t.log[x.0 as usize] as u64 + t.log[y.0 as usize] as u64) % ord;
                FieldElement(t.exp[k as usize])
            }
            None => self.mul_poly(x, y),
        }
    }

    /// Polynomial product reduced by the modulus, bypassing the tables.
    pub fn mul_poly(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let r = poly::mulmod(&self.to_poly(x), &self.to_poly(y), &self.params.modulus, self.params.p);
        self.element_of_poly(&r)
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        match &self.tables {
            Some(t) => Ok(FieldElement(t.inv[x.0 as usize])),
            None => self.inv_euclid(x),
        }
    }

    /// Inverse by the extended Euclidean algorithm on polynomials.
    pub fn inv_euclid(&self, x: FieldElement) -> Result<FieldElement> {
        poly::inv_mod(&self.to_poly(x), &self.params.modulus, self.params.p)
            .map(|r| self.element_of_poly(&r))
            .ok_or(Error::ZeroInverse)
    }

    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to F_p, as an integer in `[0, p)`.
    pub fn trace(&self, x: FieldElement) -> u32 {
        match &self.tables {
            Some(t) => t.trace[x.0 as usize],
            None => self.trace_linear(x),
        }
    }

    fn trace_linear(&self, x: FieldElement) -> u32 {
        let p = self.params.p as u64;
        let mut a = x.0;
        let mut acc = 0u64;
        for &t in &self.basis_trace {
            acc += (a % self.params.p) as u64 * t as u64;
            a /= self.params.p;
        }
        (acc % p) as u32
    }

    /// `x + x^p + ... + x^{p^{n-1}}` summed directly.
    pub fn trace_frobenius(&self, x: FieldElement) -> u32 {
        self.trace_of_poly(&self.to_poly(x))
    }

    /// Order of the largest proper subfield: `p^m` with `m` the largest proper
    /// divisor of `n`, and 1 for the prime field.
    pub fn largest_proper_subfield_size(&self) -> u64 {
        let n = self.params.n;
        if n == 1 {
            return 1;
        }
        let m = (1..n).rev().find(|d| n.is_multiple_of(*d)).unwrap_or(1);
        (self.params.p as u64).pow(m)
    }
}
