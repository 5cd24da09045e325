//! Dense univariate polynomials over a prime field, constant term first.
//!
//! Only what field construction needs: products, remainders, gcd, modular
//! powers and an irreducibility test. The zero polynomial is the empty vector
//! and every other value is kept without trailing zeros.

pub(crate) type Poly = Vec<u32>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod_p(a, p - 2, p)
}

pub(crate) fn pow_mod_p(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64 % p64;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push((x + p - y) % p);
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: Poly = acc.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn divrem(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let p64 = p as u64;
    let lead_inv = inv_mod_p(*b.last().unwrap(), p) as u64;
    let mut quot = vec![0u32; rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let factor = (*rem.last().unwrap() as u64 * lead_inv % p64) as u32;
        quot[shift] = factor;
        for (j, &c) in b.iter().enumerate() {
            let t = (c as u64 * factor as u64 % p64) as u32;
            rem[shift + j] = (rem[shift + j] + p - t) % p;
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> Poly {
    divrem(a, b, p).1
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn make_monic(a: &mut Poly, p: u32) {
    if let Some(&lead) = a.last() {
        let li = inv_mod_p(lead, p) as u64;
        for c in a.iter_mut() {
            *c = (*c as u64 * li % p as u64) as u32;
        }
    }
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&mut x, p);
    x
}

/// `base^exp mod m`, with `exp` given as a u128 so that `p^k` fits for every
/// supported field.
pub(crate) fn powmod(base: &[u32], mut exp: u128, m: &[u32], p: u32) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo an irreducible `m` by the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: &[u32], m: &[u32], p: u32) -> Option<Poly> {
    let mut r0: Poly = m.to_vec();
    let mut r1: Poly = rem(a, m, p);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Poly = Vec::new();
    let mut s1: Poly = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 is a nonzero constant when gcd is 1.
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod_p(r0[0], p);
    Some(rem(&mul(&s0, &[c], p), m, p))
}

/// Monic polynomials of degree `d`, enumerated by their coefficient index
/// (constant term least significant).
fn monic_of_degree(d: u32, p: u32) -> impl Iterator<Item = Poly> {
    let count = (p as u64).pow(d);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        for _ in 0..d {
            coeffs.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        coeffs.push(1);
        coeffs
    })
}

/// Irreducibility of a monic polynomial of degree `n`.
///
/// Degrees up to 4 use trial division by every monic polynomial of degree at
/// most `n/2`; larger degrees use the criterion
/// `gcd(f, X^{p^k} - X) = 1` for all `1 <= k <= n/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len().saturating_sub(1) as u32;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if n <= 4 {
        for d in 1..=n / 2 {
            for g in monic_of_degree(d, p) {
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut frob = x.clone();
    for _ in 1..=n / 2 {
        frob = powmod(&frob, p as u128, f, p);
        let g = gcd(f, &sub(&frob, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// First monic irreducible of degree `n` in coefficient-index order.
pub(crate) fn smallest_irreducible(p: u32, n: u32) -> Option<Poly> {
    monic_of_degree(n, p).find(|f| is_irreducible(f, p))
}
