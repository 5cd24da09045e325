//! Double sums of Kloosterman sums over sets and affine subspaces.
//!
//! Direct evaluations reorder `sum_u sum_v K(u, v)` into
//! `sum_{x != 0} (sum_u psi(u x)) (sum_v psi(v / x))`, which costs
//! `O(q (#U + #V))`. For affine `A = a0 + L` and `B = b0 + M` the inner
//! factors collapse by orthogonality, leaving
//! `#A #B sum_{x in S} psi(a0 x + b0 / x)` over the critical set
//! `S = {x != 0 : x in L^perp, 1/x in M^perp}`. The triple-loop evaluations
//! (`*_oracle`) exist only to cross-check the other two.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::bounds::{argmax, Exponent};
use crate::characters::{psi_exponent, AdditiveCharacter, CyclotomicSum, RootTable};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::kloosterman::{kloosterman, kloosterman_row_exact};
use crate::subspace::{orthogonal_complement, AffineSubspace, SubspaceBasis};

/// Work cap (terms) for direct and oracle evaluations.
pub const EVAL_BUDGET: u128 = 1 << 34;

pub const THM1_EXPONENTS: [Exponent; 4] =
    [Exponent::new(52, 153), Exponent::new(831, 832), Exponent::new(761, 760), Exponent::new(-1, 760)];
pub const THM2_EXPONENTS: [Exponent; 4] =
    [Exponent::new(13, 51), Exponent::new(935, 1248), Exponent::new(-1, 1140), Exponent::new(214, 285)];
/// `A >= q^{415/831}` is where the affine-pair bound beats the trivial one.
pub const THM1_NONTRIVIAL: Exponent = Exponent::new(415, 831);

fn check_budget(what: &'static str, count: u128) -> Result<()> {
    if count > EVAL_BUDGET {
        return Err(Error::CapExceeded { what, count, cap: EVAL_BUDGET });
    }
    Ok(())
}

fn require_nontrivial(chi: AdditiveCharacter) -> Result<()> {
    if chi.is_trivial() {
        Err(Error::TrivialCharacter)
    } else {
        Ok(())
    }
}

/// Complex weights `alpha_v` on a finite support.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    entries: BTreeMap<FieldElement, Complex64>,
}

impl WeightVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (FieldElement, Complex64)>>(pairs: I) -> Self {
        WeightVector { entries: pairs.into_iter().collect() }
    }

    /// Weight one on every element of `support`.
    pub fn ones<I: IntoIterator<Item = FieldElement>>(support: I) -> Self {
        Self::from_pairs(support.into_iter().map(|v| (v, Complex64::new(1.0, 0.0))))
    }

    pub fn insert(&mut self, v: FieldElement, w: Complex64) {
        self.entries.insert(v, w);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> Vec<FieldElement> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (FieldElement, Complex64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn scaled(&self, c: f64) -> WeightVector {
        WeightVector { entries: self.entries.iter().map(|(&k, &v)| (k, v * c)).collect() }
    }
}

/// `(sum |alpha_v|^rho)^{1/rho}`.
pub fn norm_rho(alpha: &WeightVector, rho: f64) -> Result<f64> {
    if rho.is_nan() || rho <= 0.0 {
        return Err(Error::NonPositiveRho(rho));
    }
    let s: f64 = alpha.iter().map(|(_, w)| w.norm().powf(rho)).sum();
    Ok(s.powf(1.0 / rho))
}

/// Direct evaluation of `sum_{u in U} sum_{v in V} K(u, v)` by reordering.
pub fn double_sum_direct(
    ctx: &FieldCtx,
    chi: AdditiveCharacter,
    u_set: &[FieldElement],
    v_set: &[FieldElement],
) -> Result<Complex64> {
    check_budget("direct double-sum terms", ctx.q() as u128 * (u_set.len() + v_set.len()) as u128)?;
    let roots = RootTable::new(ctx.p());
    let mut total = Complex64::new(0.0, 0.0);
    for x in ctx.nonzero_elements() {
        let xi = ctx.inv(x)?;
        let mut hu = CyclotomicSum::zero(ctx.p());
        for &u in u_set {
            hu.push(psi_exponent(ctx, chi, ctx.mul(u, x)));
        }
        let mut hv = CyclotomicSum::zero(ctx.p());
        for &v in v_set {
            hv.push(psi_exponent(ctx, chi, ctx.mul(v, xi)));
        }
        total += roots.eval(&hu) * roots.eval(&hv);
    }
    Ok(total)
}

/// Exact `sum_{u in U} sum_{v in V} K(u, v)` from whole Kloosterman rows.
pub fn double_sum_oracle(
    ctx: &FieldCtx,
    chi: AdditiveCharacter,
    u_set: &[FieldElement],
    v_set: &[FieldElement],
) -> Result<CyclotomicSum> {
    let q = ctx.q() as u128;
    check_budget("oracle double-sum terms", u_set.len() as u128 * q * q)?;
    let mut total = CyclotomicSum::zero(ctx.p());
    for &u in u_set {
        let row = kloosterman_row_exact(ctx, chi, u);
        for &v in v_set {
            total.merge(&row[v.index() as usize]);
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalSet {
    pub elements: Vec<FieldElement>,
    pub l_perp_size: u64,
    pub m_perp_size: u64,
}

impl CriticalSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `{x != 0 : x in L^perp, 1/x in M^perp}` for the canonical character.
pub fn critical_set(ctx: &FieldCtx, l: &SubspaceBasis, m: &SubspaceBasis) -> Result<CriticalSet> {
    critical_set_for(ctx, AdditiveCharacter::CANONICAL, l, m)
}

/// Critical set for `psi_a`: `{x != 0 : a x in L^perp, a / x in M^perp}`.
/// Iterates the smaller complement and tests membership in the other.
pub fn critical_set_for(
    ctx: &FieldCtx,
    chi: AdditiveCharacter,
    l: &SubspaceBasis,
    m: &SubspaceBasis,
) -> Result<CriticalSet> {
    require_nontrivial(chi)?;
    let a = chi.a;
    let a_inv = ctx.inv(a)?;
    let lp = orthogonal_complement(ctx, l);
    let mp = orthogonal_complement(ctx, m);
    let (l_perp_size, m_perp_size) = (lp.size(ctx), mp.size(ctx));
    let mut elements: Vec<FieldElement> = if l_perp_size <= m_perp_size {
        lp.members(ctx)?
            .into_iter()
            .filter(|y| !y.is_zero())
            .map(|y| ctx.mul(a_inv, y))
            .filter(|&x| mp.contains(ctx, ctx.mul(a, ctx.inv(x).expect("nonzero"))))
            .collect()
    } else {
        mp.members(ctx)?
            .into_iter()
            .filter(|z| !z.is_zero())
            .map(|z| ctx.mul(a, ctx.inv(z).expect("nonzero")))
            .filter(|&x| lp.contains(ctx, ctx.mul(a, x)))
            .collect()
    };
    elements.sort();
    Ok(CriticalSet { elements, l_perp_size, m_perp_size })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineDoubleSum {
    /// Exact value, already multiplied by `#A #B`.
    pub exact: CyclotomicSum,
    pub value: Complex64,
    pub critical: CriticalSet,
}

/// `#A #B sum_{x in S} psi(a0 x + b0 / x)`.
pub fn double_sum_affine(
    ctx: &FieldCtx,
    chi: AdditiveCharacter,
    a_sub: &AffineSubspace,
    b_sub: &AffineSubspace,
) -> Result<AffineDoubleSum> {
    let critical = critical_set_for(ctx, chi, a_sub.directions(), b_sub.directions())?;
    let scale = (a_sub.size(ctx) * b_sub.size(ctx)) as i64;
    let (a0, b0) = (a_sub.base(), b_sub.base());
    let mut exact = CyclotomicSum::zero(ctx.p());
    for &x in &critical.elements {
        let xi = ctx.inv(x)?;
        exact.push_n(psi_exponent(ctx, chi, ctx.add(ctx.mul(a0, x), ctx.mul(b0, xi))), scale);
    }
    let value = RootTable::new(ctx.p()).eval(&exact);
    Ok(AffineDoubleSum { exact, value, critical })
}

/// `sum_{u in A} sum_v alpha_v K(u, v)` via
/// `#A sum_{x : a x in L^perp, x != 0} psi(a0 x) sum_v alpha_v psi(v / x)`.
pub fn weighted_sum(
    ctx: &FieldCtx,
    chi: AdditiveCharacter,
    alpha: &WeightVector,
    a_sub: &AffineSubspace,
) -> Result<Complex64> {
    require_nontrivial(chi)?;
    let lp = orthogonal_complement(ctx, a_sub.directions());
    check_budget("weighted-sum terms", lp.size(ctx) as u128 * alpha.len() as u128)?;
    let a_inv = ctx.inv(chi.a)?;
    let roots = RootTable::new(ctx.p());
    let mut total = Complex64::new(0.0, 0.0);
    for y in lp.members(ctx)? {
        if y.is_zero() {
            continue;
        }
        let x = ctx.mul(a_inv, y);
        let xi = ctx.inv(x)?;
        let inner: Complex64 = alpha.iter().map(|(v, w)| w * roots.root(psi_exponent(ctx, chi, ctx.mul(v, xi)))).sum();
        total += roots.root(psi_exponent(ctx, chi, ctx.mul(a_sub.base(), x))) * inner;
    }
    Ok(total * a_sub.size(ctx) as f64)
}

/// Triple-loop `sum_{u in U} sum_v alpha_v K(u, v)`.
pub fn weighted_sum_oracle(
    ctx: &FieldCtx,
    chi: AdditiveCharacter,
    alpha: &WeightVector,
    u_set: &[FieldElement],
) -> Result<Complex64> {
    check_budget("oracle weighted-sum terms", u_set.len() as u128 * alpha.len() as u128 * ctx.q() as u128)?;
    let mut total = Complex64::new(0.0, 0.0);
    for &u in u_set {
        for (v, w) in alpha.iter() {
            total += w * kloosterman(ctx, chi, u, v).value;
        }
    }
    Ok(total)
}

/// `2 #A sqrt(q) ||alpha||_1`.
pub fn trivial_bound(a_size: u64, q: u32, alpha: &WeightVector) -> f64 {
    let l1: f64 = alpha.iter().map(|(_, w)| w.norm()).sum();
    2.0 * a_size as f64 * (q as f64).sqrt() * l1
}

/// The unweighted case of [`trivial_bound`], `2 A B sqrt(q)`.
pub fn trivial_bound_unweighted(a_size: u64, b_size: u64, q: u32) -> f64 {
    2.0 * a_size as f64 * b_size as f64 * (q as f64).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundTerms {
    pub terms: [f64; 3],
    pub max: f64,
    /// Index of the term attaining the max.
    pub active: usize,
}

impl BoundTerms {
    fn from_terms(terms: [f64; 3]) -> Self {
        let active = argmax(&terms);
        BoundTerms { terms, max: terms[active], active }
    }
}

/// `max{q^{52/153}, (q/A)^{831/832}, (q/A)^{761/760} q^{-1/760}}`, to be
/// multiplied by `A B`.
pub fn thm1_rhs(q: u32, a_size: u64) -> BoundTerms {
    let qf = q as f64;
    let r = qf / a_size as f64;
    let [e0, e1, e2, e3] = THM1_EXPONENTS;
    BoundTerms::from_terms([e0.pow(qf), e1.pow(r), e2.pow(r) * e3.pow(qf)])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thm2Rhs {
    pub factor: BoundTerms,
    pub norm1: f64,
    pub norm2: f64,
    pub value: f64,
}

/// `A q^{1/4} sqrt(||alpha||_1 ||alpha||_2) max{q^{13/51}, (q/A)^{935/1248},
/// q^{-1/1140} (q/A)^{214/285}}`.
pub fn thm2_rhs(q: u32, a_size: u64, alpha: &WeightVector) -> Result<Thm2Rhs> {
    if alpha.is_empty() {
        return Err(Error::EmptyWeights);
    }
    let qf = q as f64;
    let r = qf / a_size as f64;
    let [e0, e1, e2, e3] = THM2_EXPONENTS;
    let factor = BoundTerms::from_terms([e0.pow(qf), e1.pow(r), e2.pow(qf) * e3.pow(r)]);
    let norm1 = norm_rho(alpha, 1.0)?;
    let norm2 = norm_rho(alpha, 2.0)?;
    let value = a_size as f64 * Exponent::new(1, 4).pow(qf) * (norm1 * norm2).sqrt() * factor.max;
    Ok(Thm2Rhs { factor, norm1, norm2, value })
}

pub fn thm1_nontrivial(q: u32, a_size: u64) -> bool {
    a_size as f64 >= THM1_NONTRIVIAL.pow(q as f64)
}

/// `A^{935/623} V^{312/623} > q`, compared in log space.
pub fn thm2_nontrivial(q: u32, a_size: u64, v_size: u64) -> bool {
    if a_size == 0 || v_size == 0 {
        return false;
    }
    935.0 * (a_size as f64).ln() + 312.0 * (v_size as f64).ln() > 623.0 * (q as f64).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::subspace::{enumerate_all_subspaces, random_affine_subspace, span};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-6 * b.norm().max(1.0)
    }

    #[test]
    fn direct_examples() {
        let ctx = make_field(3, 3).unwrap();
        let psi = AdditiveCharacter::CANONICAL;
        let all: Vec<_> = ctx.elements().collect();
        let zero = [ctx.zero()];
        assert!(double_sum_direct(&ctx, psi, &all, &all).unwrap().norm() < 1e-9);
        assert!(close(double_sum_direct(&ctx, psi, &zero, &zero).unwrap(), Complex64::new(26.0, 0.0)));
        assert!(double_sum_direct(&ctx, psi, &zero, &all).unwrap().norm() < 1e-9);
    }

    #[test]
    fn direct_matches_oracle_on_random_sets() {
        let ctx = make_field(5, 2).unwrap();
        let psi = AdditiveCharacter::new(ctx.element(7).unwrap());
        let u: Vec<_> = ctx.elements().filter(|x| x.index() % 3 == 1).collect();
        let v: Vec<_> = ctx.elements().filter(|x| x.index() % 4 == 2).collect();
        let direct = double_sum_direct(&ctx, psi, &u, &v).unwrap();
        let oracle = double_sum_oracle(&ctx, psi, &u, &v).unwrap();
        assert!(close(direct, oracle.eval_complex()));
    }

    #[test]
    fn critical_set_examples() {
        let f8 = make_field(2, 3).unwrap();
        let zero = SubspaceBasis::zero(3);
        let all = critical_set(&f8, &zero, &zero).unwrap();
        assert_eq!(all.elements, f8.nonzero_elements().collect::<Vec<_>>());
        let full = SubspaceBasis::full(&f8);
        assert!(critical_set(&f8, &full, &zero).unwrap().is_empty());
        // Trace-zero hyperplane of F_8 is span{X, X^2}; its complement is {0, 1}.
        let h = span(&f8, &[f8.from_coeffs(&[0, 1, 0]).unwrap(), f8.from_coeffs(&[0, 0, 1]).unwrap()]);
        let s = critical_set(&f8, &h, &h).unwrap();
        assert_eq!(s.elements, vec![f8.one()]);
        assert_eq!((s.l_perp_size, s.m_perp_size), (2, 2));
    }

    #[test]
    fn affine_examples() {
        let f8 = make_field(2, 3).unwrap();
        let psi = AdditiveCharacter::CANONICAL;
        let h = span(&f8, &[f8.from_coeffs(&[0, 1, 0]).unwrap(), f8.from_coeffs(&[0, 0, 1]).unwrap()]);
        let a = AffineSubspace::linear(h.clone());
        let r = double_sum_affine(&f8, psi, &a, &a).unwrap();
        assert_eq!(r.exact.as_integer(), Some(16));
        // Oracle: 16 Kloosterman sums summed exactly.
        let members = a.members(&f8).unwrap();
        assert_eq!(double_sum_oracle(&f8, psi, &members, &members).unwrap().as_integer(), Some(16));

        let pt = AffineSubspace::point(&f8, f8.zero());
        assert_eq!(double_sum_affine(&f8, psi, &pt, &pt).unwrap().exact.as_integer(), Some(7));
        let full = AffineSubspace::linear(SubspaceBasis::full(&f8));
        let r = double_sum_affine(&f8, psi, &full, &pt).unwrap();
        assert!(r.critical.is_empty());
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
        assert_eq!(
            double_sum_affine(&f8, AdditiveCharacter::new(f8.zero()), &pt, &pt).unwrap_err(),
            Error::TrivialCharacter
        );
    }

    #[test]
    fn reduction_matches_direct_all_linear_pairs_f27() {
        let ctx = make_field(3, 3).unwrap();
        let psi = AdditiveCharacter::CANONICAL;
        let subs = enumerate_all_subspaces(&ctx).unwrap();
        let members: Vec<_> = subs.iter().map(|s| s.members(&ctx).unwrap()).collect();
        for (i, l) in subs.iter().enumerate() {
            for (j, m) in subs.iter().enumerate() {
                let a = AffineSubspace::linear(l.clone());
                let b = AffineSubspace::linear(m.clone());
                let red = double_sum_affine(&ctx, psi, &a, &b).unwrap();
                let direct = double_sum_direct(&ctx, psi, &members[i], &members[j]).unwrap();
                assert!(close(red.value, direct), "{i} {j}");
                let bound = (l.size(&ctx) * m.size(&ctx)) as f64 * red.critical.len() as f64;
                assert!(red.value.norm() <= bound + 1e-9 * bound.max(1.0));
            }
        }
    }

    #[test]
    fn reduction_exact_for_twisted_translates() {
        let ctx = make_field(2, 5).unwrap();
        for seed in 0..12u64 {
            let chi = AdditiveCharacter::new(ctx.element(1 + (seed as u32 * 7) % 31).unwrap());
            let a = random_affine_subspace(&ctx, (seed % 4) as u32 + 1, seed).unwrap();
            let b = random_affine_subspace(&ctx, (seed % 3) as u32 + 2, seed + 100).unwrap();
            let red = double_sum_affine(&ctx, chi, &a, &b).unwrap();
            let oracle = double_sum_oracle(&ctx, chi, &a.members(&ctx).unwrap(), &b.members(&ctx).unwrap()).unwrap();
            assert!(red.exact.same_value(&oracle), "seed {seed}");
        }
    }

    #[test]
    fn weighted_examples() {
        let ctx = make_field(3, 3).unwrap();
        let psi = AdditiveCharacter::CANONICAL;
        let a = random_affine_subspace(&ctx, 2, 5).unwrap();
        let v: Vec<_> = ctx.elements().filter(|x| x.index() % 5 == 0).collect();
        let ones = WeightVector::ones(v.iter().copied());
        let w = weighted_sum(&ctx, psi, &ones, &a).unwrap();
        let d = double_sum_direct(&ctx, psi, &a.members(&ctx).unwrap(), &v).unwrap();
        assert!(close(w, d));
        let zeros = ones.scaled(0.0);
        assert!(weighted_sum(&ctx, psi, &zeros, &a).unwrap().norm() < 1e-12);
        let v0 = ctx.element(11).unwrap();
        let single = WeightVector::ones([v0]);
        let expect: Complex64 = a.members(&ctx).unwrap().iter().map(|&u| kloosterman(&ctx, psi, u, v0).value).sum();
        assert!(close(weighted_sum(&ctx, psi, &single, &a).unwrap(), expect));
    }

    #[test]
    fn weighted_matches_oracle_with_complex_weights() {
        let ctx = make_field(5, 2).unwrap();
        let chi = AdditiveCharacter::new(ctx.element(3).unwrap());
        let alpha = WeightVector::from_pairs(
            ctx.elements()
                .step_by(4)
                .enumerate()
                .map(|(i, v)| (v, Complex64::from_polar(0.5 + 0.1 * i as f64, i as f64))),
        );
        for seed in 0..6 {
            let a = random_affine_subspace(&ctx, (seed % 3) as u32, seed).unwrap();
            let fast = weighted_sum(&ctx, chi, &alpha, &a).unwrap();
            let slow = weighted_sum_oracle(&ctx, chi, &alpha, &a.members(&ctx).unwrap()).unwrap();
            assert!(close(fast, slow));
            assert!(fast.norm() <= trivial_bound(a.size(&ctx), ctx.q(), &alpha));
        }
    }

    #[test]
    fn norms() {
        let ctx = make_field(7, 1).unwrap();
        let ones = WeightVector::ones(ctx.elements());
        assert!((norm_rho(&ones, 1.0).unwrap() - 7.0).abs() < 1e-12);
        assert!((norm_rho(&ones, 2.0).unwrap() - 7f64.sqrt()).abs() < 1e-12);
        let single = WeightVector::from_pairs([(ctx.one(), Complex64::new(3.0, -4.0))]);
        for rho in [0.5, 1.0, 2.0, 3.7] {
            assert!((norm_rho(&single, rho).unwrap() - 5.0).abs() < 1e-12);
        }
        assert_eq!(norm_rho(&ones, 0.0), Err(Error::NonPositiveRho(0.0)));
        assert!(norm_rho(&ones, -1.0).is_err());
    }

    #[test]
    fn trivial_bound_examples() {
        let ctx = make_field(3, 3).unwrap();
        let v = WeightVector::ones(ctx.elements().take(5));
        assert!((trivial_bound(9, 27, &v) - 2.0 * 9.0 * 5.0 * 27f64.sqrt()).abs() < 1e-9);
        assert!((trivial_bound_unweighted(9, 5, 27) - trivial_bound(9, 27, &v)).abs() < 1e-9);
        assert_eq!(trivial_bound(9, 27, &v.scaled(0.0)), 0.0);
    }

    #[test]
    fn thm1_examples() {
        let t = thm1_rhs(243, 243);
        assert!((t.terms[0] - 243f64.powf(52.0 / 153.0)).abs() < 1e-12);
        assert!((t.terms[1] - 1.0).abs() < 1e-15);
        assert!((t.terms[2] - 243f64.powf(-1.0 / 760.0)).abs() < 1e-12);
        assert_eq!(t.active, 0);
        let t = thm1_rhs(243, 27);
        assert_eq!(t.active, 1);
        assert!((t.max - 8.977).abs() < 1e-3);
        let mut prev = f64::INFINITY;
        for a in 1..=243 {
            let m = thm1_rhs(243, a).max;
            assert!(m <= prev);
            prev = m;
        }
    }

    #[test]
    fn thm2_examples() {
        let ctx = make_field(3, 5).unwrap();
        let q = ctx.q();
        let unit = WeightVector::ones([ctx.one()]);
        let r = thm2_rhs(q, q as u64, &unit).unwrap();
        let expect = (q as f64).powf(1.25) * (q as f64).powf(13.0 / 51.0);
        assert!((r.value - expect).abs() <= 1e-10 * expect);
        // sqrt(||alpha||_1 ||alpha||_2) is homogeneous of degree one.
        let alpha = WeightVector::ones(ctx.elements().take(27));
        let base = thm2_rhs(q, 27, &alpha).unwrap().value;
        let doubled = thm2_rhs(q, 27, &alpha.scaled(2.0)).unwrap().value;
        assert!((doubled / base - 2.0).abs() < 1e-12);
        assert!(base.is_finite() && base > 0.0);
        assert_eq!(thm2_rhs(q, 27, &WeightVector::new()).unwrap_err(), Error::EmptyWeights);
    }

    #[test]
    fn nontriviality_flags() {
        let q = 243;
        let threshold = (q as f64).powf(415.0 / 831.0);
        assert!(!thm1_nontrivial(q, threshold.floor() as u64));
        assert!(thm1_nontrivial(q, threshold.ceil() as u64));
        assert!(thm2_nontrivial(q, 243, 243));
        assert!(!thm2_nontrivial(q, 3, 3));
        assert!(!thm2_nontrivial(q, 0, 3));
    }
}
