//! F_p-linear and affine subspaces of F_q, viewed as F_p^n in the polynomial
//! basis, with orthogonal complements under the trace form `<x, y> = Tr(xy)`.
//!
//! A [`SubspaceBasis`] is always in reduced row echelon form with each pivot at
//! the highest nonzero coordinate of its row, so equal subspaces have equal
//! bases. An [`AffineSubspace`] stores the minimum member of the coset as its
//! base point, which is what reduction against that basis produces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::{self, Row};

/// Cap on `p^dim` for member enumeration.
pub const MEMBER_CAP: u64 = 1 << 20;
/// Cap on the number of subspaces returned by [`enumerate_subspaces`].
pub const SUBSPACE_ENUM_CAP: u128 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubspaceBasis {
    n: u32,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(n: u32) -> Self {
        SubspaceBasis { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ctx: &FieldCtx) -> Self {
        let n = ctx.n() as usize;
        let rows: Vec<Row> = (0..n)
            .rev()
            .map(|j| {
                let mut r = vec![0; n];
                r[j] = 1;
                r
            })
            .collect();
        SubspaceBasis { n: ctx.n(), pivots: (0..n).rev().collect(), rows }
    }

    pub fn dim(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// `p^dim`.
    pub fn size(&self, ctx: &FieldCtx) -> u64 {
        (ctx.p() as u64).pow(self.dim())
    }

    pub fn basis_elements(&self, ctx: &FieldCtx) -> Vec<FieldElement> {
        self.rows.iter().map(|r| ctx.from_coeffs(r).expect("reduced row")).collect()
    }

    pub fn contains(&self, ctx: &FieldCtx, x: FieldElement) -> bool {
        let mut v = ctx.coeffs(x);
        linalg::reduce(&mut v, &self.rows, &self.pivots, ctx.p());
        v.iter().all(|&c| c == 0)
    }

    /// Minimum member of `x + L`.
    pub fn reduce(&self, ctx: &FieldCtx, x: FieldElement) -> FieldElement {
        let mut v = ctx.coeffs(x);
        linalg::reduce(&mut v, &self.rows, &self.pivots, ctx.p());
        ctx.from_coeffs(&v).expect("reduced vector")
    }

    /// All members, coefficient combinations in lexicographic order with the
    /// first basis row's coefficient varying fastest.
    pub fn members(&self, ctx: &FieldCtx) -> Result<Vec<FieldElement>> {
        check_member_cap(ctx, self.dim())?;
        let mut out = vec![ctx.zero()];
        for b in self.basis_elements(ctx) {
            let prev = std::mem::take(&mut out);
            for c in 0..ctx.p() {
                let step = ctx.scale(c, b);
                out.extend(prev.iter().map(|&m| ctx.add(m, step)));
            }
        }
        Ok(out)
    }

    /// Textual form `[e;e;...]` with comma-separated coefficient lists.
    pub fn to_literal(&self) -> String {
        let rows: Vec<String> = self.rows.iter().map(|r| coeff_literal(r)).collect();
        format!("[{}]", rows.join(";"))
    }
}

fn check_member_cap(ctx: &FieldCtx, dim: u32) -> Result<()> {
    let count = (ctx.p() as u128).pow(dim);
    if count > MEMBER_CAP as u128 {
        return Err(Error::CapExceeded { what: "subspace members", count, cap: MEMBER_CAP as u128 });
    }
    Ok(())
}

fn coeff_literal(c: &[u32]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// A translate `base + directions`, with `base` the minimum member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineSubspace {
    base: FieldElement,
    directions: SubspaceBasis,
}

impl AffineSubspace {
    pub fn new(ctx: &FieldCtx, base: FieldElement, directions: SubspaceBasis) -> Self {
        let base = directions.reduce(ctx, base);
        AffineSubspace { base, directions }
    }

    pub fn linear(directions: SubspaceBasis) -> Self {
        AffineSubspace { base: FieldElement::ZERO, directions }
    }

    pub fn point(ctx: &FieldCtx, x: FieldElement) -> Self {
        AffineSubspace { base: x, directions: SubspaceBasis::zero(ctx.n()) }
    }

    pub fn base(&self) -> FieldElement {
        self.base
    }

    pub fn directions(&self) -> &SubspaceBasis {
        &self.directions
    }

    pub fn dim(&self) -> u32 {
        self.directions.dim()
    }

    pub fn size(&self, ctx: &FieldCtx) -> u64 {
        self.directions.size(ctx)
    }

    pub fn is_linear(&self) -> bool {
        self.base.is_zero()
    }

    pub fn contains(&self, ctx: &FieldCtx, x: FieldElement) -> bool {
        self.directions.contains(ctx, ctx.sub(x, self.base))
    }

    pub fn members(&self, ctx: &FieldCtx) -> Result<Vec<FieldElement>> {
        Ok(self.directions.members(ctx)?.into_iter().map(|m| ctx.add(self.base, m)).collect())
    }

    /// `basis=[e;e;...] base=e`.
    pub fn to_literal(&self, ctx: &FieldCtx) -> String {
        format!("basis={} base={}", self.directions.to_literal(), coeff_literal(&ctx.coeffs(self.base)))
    }

    /// Parses `basis=[e;...] base=e`. The separator before `base=` may be
    /// whitespace or `;`, and `base=` may be omitted for a linear subspace.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidElement(format!("{m} in subspace literal {s:?}"));
        let s = s.trim();
        let rest = s.strip_prefix("basis=[").ok_or_else(|| bad("missing basis=["))?;
        let close = rest.find(']').ok_or_else(|| bad("missing ]"))?;
        let vectors = parse_element_list(ctx, &rest[..close])?;
        let tail = rest[close + 1..].trim_start_matches(|c: char| c == ';' || c.is_whitespace());
        let base = if tail.is_empty() {
            ctx.zero()
        } else {
            let b = tail.strip_prefix("base=").ok_or_else(|| bad("expected base="))?;
            parse_element(ctx, b.trim())?
        };
        Ok(AffineSubspace::new(ctx, base, span(ctx, &vectors)))
    }
}

/// Parses a comma-separated coefficient list such as `1,0,1`.
pub fn parse_element(ctx: &FieldCtx, s: &str) -> Result<FieldElement> {
    let coeffs = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| Error::InvalidElement(format!("bad coefficient {t:?}"))))
        .collect::<Result<Vec<u32>>>()?;
    ctx.from_coeffs(&coeffs)
}

/// Parses `e;e;...`; an empty string is the empty list.
pub fn parse_element_list(ctx: &FieldCtx, s: &str) -> Result<Vec<FieldElement>> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty()).map(|t| parse_element(ctx, t)).collect()
}

pub fn element_literal(ctx: &FieldCtx, x: FieldElement) -> String {
    coeff_literal(&ctx.coeffs(x))
}

pub fn span(ctx: &FieldCtx, vectors: &[FieldElement]) -> SubspaceBasis {
    let rows: Vec<Row> = vectors.iter().map(|&v| ctx.coeffs(v)).collect();
    let (rows, pivots) = linalg::rref(&rows, ctx.n() as usize, ctx.p());
    SubspaceBasis { n: ctx.n(), rows, pivots }
}

/// `{y : Tr(x y) = 0 for all x in L}`, the kernel of the matrix
/// `Tr(b_i X^j)` over basis rows `b_i`.
pub fn orthogonal_complement(ctx: &FieldCtx, l: &SubspaceBasis) -> SubspaceBasis {
    let n = ctx.n() as usize;
    let coord: Vec<FieldElement> = (0..n)
        .map(|j| {
            let mut c = vec![0; n];
            c[j] = 1;
            ctx.from_coeffs(&c).unwrap()
        })
        .collect();
    let m: Vec<Row> =
        l.basis_elements(ctx).into_iter().map(|b| coord.iter().map(|&e| ctx.trace(ctx.mul(b, e))).collect()).collect();
    let ker = linalg::kernel(&m, n, ctx.p());
    let (rows, pivots) = linalg::rref(&ker, n, ctx.p());
    SubspaceBasis { n: ctx.n(), rows, pivots }
}

/// Number of `k`-dimensional subspaces of F_p^n.
pub fn gaussian_binomial(n: u32, k: u32, p: u32) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    // G(n, i + 1) = G(n, i) (p^{n-i} - 1) / (p^{i+1} - 1), exact at every step.
    let mut g = 1u128;
    for i in 0..k {
        let num = p.checked_pow(n - i).map(|x| x - 1);
        let den = p.pow(i + 1) - 1;
        match num.and_then(|m| g.checked_mul(m)) {
            Some(t) => g = t / den,
            None => return u128::MAX,
        }
    }
    g
}

/// Every `dim`-dimensional subspace exactly once, by pivot pattern.
///
/// Pivot sets are visited in lexicographic order of their descending column
/// lists, and within a pattern the free entries vary with the lowest free slot
/// fastest.
pub fn enumerate_subspaces(ctx: &FieldCtx, dim: u32) -> Result<Vec<SubspaceBasis>> {
    let n = ctx.n();
    if dim > n {
        return Err(Error::BadDimension { dim, n });
    }
    let count = gaussian_binomial(n, dim, ctx.p());
    if count > SUBSPACE_ENUM_CAP {
        return Err(Error::CapExceeded { what: "subspaces (sample instead)", count, cap: SUBSPACE_ENUM_CAP });
    }
    let n = n as usize;
    let p = ctx.p();
    let mut out = Vec::with_capacity(count as usize);
    for pivots in descending_combinations(n, dim as usize) {
        // Free slots per row: columns below the pivot that are not pivots.
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| (0..pc).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as u64).pow(slots.len() as u32);
        for mut idx in 0..total {
            let mut rows: Vec<Row> = pivots
                .iter()
                .map(|&pc| {
                    let mut r = vec![0; n];
                    r[pc] = 1;
                    r
                })
                .collect();
            for &(r, c) in &slots {
                rows[r][c] = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            out.push(SubspaceBasis { n: ctx.n(), rows, pivots: pivots.clone() });
        }
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

fn descending_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for c in (k - 1..start).rev() {
            cur.push(c);
            go(c, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// All subspaces of every dimension, lowest dimension first.
pub fn enumerate_all_subspaces(ctx: &FieldCtx) -> Result<Vec<SubspaceBasis>> {
    let mut out = Vec::new();
    for d in 0..=ctx.n() {
        out.extend(enumerate_subspaces(ctx, d)?);
    }
    Ok(out)
}

pub fn random_subspace<R: Rng>(ctx: &FieldCtx, dim: u32, rng: &mut R) -> Result<SubspaceBasis> {
    if dim > ctx.n() {
        return Err(Error::BadDimension { dim, n: ctx.n() });
    }
    if dim == ctx.n() {
        return Ok(SubspaceBasis::full(ctx));
    }
    let mut vectors: Vec<FieldElement> = Vec::with_capacity(dim as usize);
    let mut basis = SubspaceBasis::zero(ctx.n());
    while basis.dim() < dim {
        let v = FieldElement::from_index(rng.gen_range(0..ctx.q()));
        if basis.contains(ctx, v) {
            continue;
        }
        vectors.push(v);
        basis = span(ctx, &vectors);
    }
    Ok(basis)
}

pub fn random_affine_subspace_with<R: Rng>(ctx: &FieldCtx, dim: u32, rng: &mut R) -> Result<AffineSubspace> {
    let directions = random_subspace(ctx, dim, rng)?;
    let base = FieldElement::from_index(rng.gen_range(0..ctx.q()));
    Ok(AffineSubspace::new(ctx, base, directions))
}

/// Seeded random translate of a random `dim`-dimensional subspace.
pub fn random_affine_subspace(ctx: &FieldCtx, dim: u32, seed: u64) -> Result<AffineSubspace> {
    random_affine_subspace_with(ctx, dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn span_examples() {
        let f8 = make_field(2, 3).unwrap();
        assert_eq!(span(&f8, &[]).dim(), 0);
        let x = f8.from_coeffs(&[0, 1, 0]).unwrap();
        assert!(span(&f8, &[x, x]).dim() <= 1);
        let s = span(&f8, &[f8.one(), x]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.members(&f8).unwrap().len(), 4);
        // idempotent
        assert_eq!(span(&f8, &s.basis_elements(&f8)), s);
    }

    #[test]
    fn member_examples() {
        let ctx = make_field(3, 3).unwrap();
        assert_eq!(SubspaceBasis::zero(3).members(&ctx).unwrap(), vec![ctx.zero()]);
        let mut all = SubspaceBasis::full(&ctx).members(&ctx).unwrap();
        all.sort();
        assert_eq!(all, ctx.elements().collect::<Vec<_>>());
        let b = ctx.element(17).unwrap();
        assert_eq!(AffineSubspace::point(&ctx, b).members(&ctx).unwrap(), vec![b]);
    }

    #[test]
    fn member_cap() {
        let ctx = make_field(2, 20).unwrap();
        assert!(SubspaceBasis::full(&ctx).members(&ctx).is_ok());
        let caps = crate::field::FieldCaps { size_cap: 1 << 21, table_cap: 0 };
        let ctx = FieldCtx::new(3, 13, caps).unwrap();
        assert!(matches!(SubspaceBasis::full(&ctx).members(&ctx), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn complement_examples() {
        let f8 = make_field(2, 3).unwrap();
        assert_eq!(orthogonal_complement(&f8, &SubspaceBasis::zero(3)), SubspaceBasis::full(&f8));
        assert_eq!(orthogonal_complement(&f8, &SubspaceBasis::full(&f8)).dim(), 0);
        // Oracle: the trace-zero elements by direct enumeration.
        let l = span(&f8, &[f8.one()]);
        let perp = orthogonal_complement(&f8, &l);
        let mut members = perp.members(&f8).unwrap();
        members.sort();
        let direct: Vec<_> = f8.elements().filter(|&y| f8.trace(y) == 0).collect();
        assert_eq!(members, direct);
        assert_eq!(members.len(), 4);
        assert!(!perp.contains(&f8, f8.one()));
    }

    #[test]
    fn subspace_counts() {
        let ctx = make_field(3, 3).unwrap();
        assert_eq!(enumerate_subspaces(&ctx, 1).unwrap().len(), 13);
        assert_eq!(enumerate_all_subspaces(&ctx).unwrap().len(), 28);
        assert_eq!(enumerate_subspaces(&ctx, 0).unwrap().len(), 1);
        assert!(enumerate_subspaces(&ctx, 4).is_err());
        let big = make_field(2, 20).unwrap();
        assert!(matches!(enumerate_subspaces(&big, 10), Err(Error::CapExceeded { .. })));
        assert_eq!(gaussian_binomial(5, 2, 2), 155);
        assert_eq!(gaussian_binomial(5, 3, 3), 1210);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        for (p, n) in [(2, 5), (3, 3), (2, 4)] {
            let ctx = make_field(p, n).unwrap();
            let all = enumerate_all_subspaces(&ctx).unwrap();
            let mut seen = std::collections::HashSet::new();
            for s in &all {
                assert_eq!(&span(&ctx, &s.basis_elements(&ctx)), s);
                assert!(seen.insert(s.clone()));
            }
        }
    }

    #[test]
    fn random_affine_examples() {
        let ctx = make_field(3, 5).unwrap();
        for dim in 0..=5 {
            let a = random_affine_subspace(&ctx, dim, 42).unwrap();
            assert_eq!(a, random_affine_subspace(&ctx, dim, 42).unwrap());
            assert_eq!(a.dim(), dim);
        }
        let full = random_affine_subspace(&ctx, 5, 1).unwrap();
        assert_eq!(full.directions(), &SubspaceBasis::full(&ctx));
        assert!(full.is_linear());
        assert_eq!(random_affine_subspace(&ctx, 0, 3).unwrap().size(&ctx), 1);
    }

    #[test]
    fn base_is_minimum_member() {
        let ctx = make_field(3, 4).unwrap();
        for seed in 0..40 {
            let a = random_affine_subspace(&ctx, (seed % 4) as u32, seed).unwrap();
            let min = *a.members(&ctx).unwrap().iter().min().unwrap();
            assert_eq!(a.base(), min);
            for m in a.members(&ctx).unwrap() {
                assert_eq!(AffineSubspace::new(&ctx, m, a.directions().clone()), a);
                assert!(a.contains(&ctx, m));
            }
        }
    }

    #[test]
    fn literal_round_trip() {
        let ctx = make_field(2, 3).unwrap();
        let a = AffineSubspace::parse(&ctx, "basis=[1,0,1;0,1,0] base=1,1,1").unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(AffineSubspace::parse(&ctx, &a.to_literal(&ctx)).unwrap(), a);
        let b = AffineSubspace::parse(&ctx, "basis=[1,0,1;0,1,0];base=1,1,1").unwrap();
        assert_eq!(a, b);
        let lin = AffineSubspace::parse(&ctx, "basis=[]").unwrap();
        assert_eq!(lin.size(&ctx), 1);
        assert!(AffineSubspace::parse(&ctx, "basis=[1,2,0]").is_err());
        assert!(AffineSubspace::parse(&ctx, "span=[1,0,0]").is_err());
    }
}
