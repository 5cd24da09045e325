//! Sumsets, inverse sets and additive energy, plus evaluators for the energy
//! and sumset-growth inequalities that are checked empirically.
//!
//! Sets are sorted, deduplicated element vectors.

use serde::{Deserialize, Serialize};

use crate::bounds::Exponent;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

pub const ENERGY_CAP: usize = 100_000;
pub const ENERGY_ORACLE_CAP: usize = 200;

pub const LEMMA_EXPONENTS: [Exponent; 4] =
    [Exponent::new(173, 104), Exponent::new(-1, 285), Exponent::new(476, 285), Exponent::new(4, 3)];
pub const COROLLARY_EXPONENTS: [Exponent; 3] =
    [Exponent::new(832, 831), Exponent::new(1, 761), Exponent::new(760, 761)];
/// `T >= (#G)^{52/51}`.
pub const SUBFIELD_EXPONENT: Exponent = Exponent::new(52, 51);

pub fn normalize_set(mut s: Vec<FieldElement>) -> Vec<FieldElement> {
    s.sort_unstable();
    s.dedup();
    s
}

/// `{s + t : s, t in S}`.
pub fn sumset_2s(ctx: &FieldCtx, set: &[FieldElement]) -> Vec<FieldElement> {
    let mut seen = vec![false; ctx.q() as usize];
    for (i, &s) in set.iter().enumerate() {
        for &t in &set[i..] {
            seen[ctx.add(s, t).index() as usize] = true;
        }
    }
    seen.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| FieldElement::from_index(i as u32)).collect()
}

/// `{1/s : s in S}`.
pub fn inverse_set(ctx: &FieldCtx, set: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let inv = set.iter().map(|&s| ctx.inv(s).map_err(|_| Error::ZeroInSet)).collect::<Result<Vec<_>>>()?;
    Ok(normalize_set(inv))
}

/// `E(S) = sum_w r(w)^2` with `r(w)` the number of ordered pairs summing to `w`.
pub fn additive_energy(ctx: &FieldCtx, set: &[FieldElement]) -> Result<u64> {
    if set.len() > ENERGY_CAP {
        return Err(Error::CapExceeded { what: "energy set size", count: set.len() as u128, cap: ENERGY_CAP as u128 });
    }
    let mut r = vec![0u64; ctx.q() as usize];
    for &s in set {
        for &t in set {
            r[ctx.add(s, t).index() as usize] += 1;
        }
    }
    Ok(r.iter().map(|c| c * c).sum())
}

/// Quadruple count by four nested loops.
pub fn additive_energy_oracle(ctx: &FieldCtx, set: &[FieldElement]) -> Result<u64> {
    if set.len() > ENERGY_ORACLE_CAP {
        return Err(Error::CapExceeded {
            what: "energy oracle set size",
            count: set.len() as u128,
            cap: ENERGY_ORACLE_CAP as u128,
        });
    }
    let mut count = 0u64;
    for &s1 in set {
        for &s2 in set {
            let lhs = ctx.add(s1, s2);
            for &s3 in set {
                for &s4 in set {
                    if ctx.add(s3, s4) == lhs {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// `(T^{173/104} + q^{-1/285} T^{476/285}) S^{4/3}`.
pub fn lemma_rhs(s_size: u64, t_size: u64, q: u32) -> f64 {
    let [a, b, c, d] = LEMMA_EXPONENTS;
    let (s, t, q) = (s_size as f64, t_size as f64, q as f64);
    (a.pow(t) + b.pow(q) * c.pow(t)) * d.pow(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryRhs {
    /// `S^{832/831}`.
    pub first: f64,
    /// `q^{1/761} S^{760/761}`.
    pub second: f64,
    pub min: f64,
    pub first_active: bool,
}

/// `min{S^{832/831}, q^{1/761} S^{760/761}}`.
pub fn corollary_rhs(s_size: u64, q: u32) -> CorollaryRhs {
    let [a, b, c] = COROLLARY_EXPONENTS;
    let s = s_size as f64;
    let first = a.pow(s);
    let second = b.pow(q as f64) * c.pow(s);
    let first_active = first <= second;
    CorollaryRhs { first, second, min: if first_active { first } else { second }, first_active }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyCheck {
    /// `S^4`.
    pub lhs: u128,
    /// `#(2 S^{-1}) E(S^{-1})`.
    pub rhs: u128,
    pub holds: bool,
    /// `rhs / lhs`.
    pub slack: f64,
}

/// `S^4 <= #(2 S^{-1}) E(S^{-1})` in exact integers.
pub fn cauchy_check(ctx: &FieldCtx, set: &[FieldElement]) -> Result<CauchyCheck> {
    let set = normalize_set(set.to_vec());
    let inv = inverse_set(ctx, &set)?;
    let s = set.len() as u128;
    let lhs = s.pow(4);
    let rhs = sumset_2s(ctx, &inv).len() as u128 * additive_energy(ctx, &inv)? as u128;
    Ok(CauchyCheck {
        lhs,
        rhs,
        holds: lhs <= rhs,
        slack: if lhs == 0 { f64::INFINITY } else { rhs as f64 / lhs as f64 },
    })
}

/// `T >= (#G)^{52/51}` for the largest proper subfield `G`.
pub fn subfield_condition(ctx: &FieldCtx, t_size: u64) -> bool {
    let g = ctx.largest_proper_subfield_size();
    if g <= 1 {
        return true;
    }
    if t_size == 0 {
        return false;
    }
    let e = SUBFIELD_EXPONENT;
    e.den as f64 * (t_size as f64).ln() >= e.num as f64 * (g as f64).ln()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub s_size: u64,
    /// `#(2S)`.
    pub t_size: u64,
    /// `#(2 S^{-1})`.
    pub u_size: u64,
    /// `E(S^{-1})`.
    pub energy: u64,
    pub lemma_rhs: f64,
    /// `E(S^{-1}) / lemma_rhs`.
    pub lemma_ratio: Option<f64>,
    pub corollary: CorollaryRhs,
    /// `max{T, U} / corollary_rhs`.
    pub corollary_ratio: Option<f64>,
    pub subfield_ok: bool,
    pub cauchy: CauchyCheck,
}

pub fn energy_report(ctx: &FieldCtx, set: &[FieldElement]) -> Result<EnergyReport> {
    let set = normalize_set(set.to_vec());
    let inv = inverse_set(ctx, &set)?;
    let s_size = set.len() as u64;
    let t_size = sumset_2s(ctx, &set).len() as u64;
    let u_size = sumset_2s(ctx, &inv).len() as u64;
    let energy = additive_energy(ctx, &inv)?;
    let lemma = lemma_rhs(s_size, t_size, ctx.q());
    let corollary = corollary_rhs(s_size, ctx.q());
    let nonempty = s_size > 0;
    let lhs = (s_size as u128).pow(4);
    let rhs = u_size as u128 * energy as u128;
    Ok(EnergyReport {
        s_size,
        t_size,
        u_size,
        energy,
        lemma_rhs: lemma,
        lemma_ratio: nonempty.then(|| energy as f64 / lemma),
        corollary,
        corollary_ratio: nonempty.then(|| t_size.max(u_size) as f64 / corollary.min),
        subfield_ok: subfield_condition(ctx, t_size),
        cauchy: CauchyCheck {
            lhs,
            rhs,
            holds: lhs <= rhs,
            slack: if lhs == 0 { f64::INFINITY } else { rhs as f64 / lhs as f64 },
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::subspace::{enumerate_all_subspaces, span};

    fn ints(ctx: &FieldCtx, xs: &[u64]) -> Vec<FieldElement> {
        normalize_set(xs.iter().map(|&x| ctx.from_int(x)).collect())
    }

    #[test]
    fn sumset_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(sumset_2s(&f7, &ints(&f7, &[1, 2, 3])), ints(&f7, &[2, 3, 4, 5, 6]));
        assert_eq!(sumset_2s(&f7, &ints(&f7, &[3])), ints(&f7, &[6]));
        let f27 = make_field(3, 3).unwrap();
        for l in enumerate_all_subspaces(&f27).unwrap() {
            let m = normalize_set(l.members(&f27).unwrap());
            assert_eq!(sumset_2s(&f27, &m), m);
        }
    }

    #[test]
    fn inverse_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(inverse_set(&f7, &ints(&f7, &[2, 3])).unwrap(), ints(&f7, &[4, 5]));
        assert_eq!(inverse_set(&f7, &ints(&f7, &[1])).unwrap(), ints(&f7, &[1]));
        let s = ints(&f7, &[1, 3, 6]);
        assert_eq!(inverse_set(&f7, &inverse_set(&f7, &s).unwrap()).unwrap(), s);
        assert_eq!(inverse_set(&f7, &ints(&f7, &[0, 1])), Err(Error::ZeroInSet));
    }

    #[test]
    fn energy_examples() {
        let f7 = make_field(7, 1).unwrap();
        let s = ints(&f7, &[1, 2, 3]);
        assert_eq!(additive_energy(&f7, &s).unwrap(), 19);
        assert_eq!(additive_energy_oracle(&f7, &s).unwrap(), 19);
        assert_eq!(additive_energy(&f7, &ints(&f7, &[4])).unwrap(), 1);
        assert_eq!(additive_energy_oracle(&f7, &[]).unwrap(), 0);
        assert_eq!(additive_energy_oracle(&f7, &ints(&f7, &[2, 5])).unwrap(), 6);
        let f8 = make_field(2, 3).unwrap();
        let l = span(&f8, &[f8.one(), f8.element(2).unwrap()]);
        assert_eq!(additive_energy(&f8, &l.members(&f8).unwrap()).unwrap(), 64);
    }

    #[test]
    fn caps() {
        let f = make_field(2, 10).unwrap();
        let big: Vec<_> = f.elements().take(201).collect();
        assert!(matches!(additive_energy_oracle(&f, &big), Err(Error::CapExceeded { .. })));
        assert!(additive_energy(&f, &big).is_ok());
    }

    #[test]
    fn lemma_and_corollary_examples() {
        let q = 243;
        assert!((lemma_rhs(1, 1, q) - (1.0 + 243f64.powf(-1.0 / 285.0))).abs() < 1e-12);
        let mut prev = 0.0;
        for t in 1..50 {
            let v = lemma_rhs(9, t, q);
            assert!(v > prev);
            prev = v;
        }
        let c = corollary_rhs(1, q);
        assert_eq!(c.min, 1.0);
        assert!(c.first_active);
        // First branch active iff S^{1592/(831*761)} <= q^{1/761}, i.e.
        // S <= q^{831/1592} (about 17.6 for q = 243).
        assert!(corollary_rhs(17, q).first_active);
        assert!(!corollary_rhs(18, q).first_active);
        let c = corollary_rhs(1000, q);
        assert_eq!(c.min, c.second);
    }

    #[test]
    fn cauchy_examples() {
        let f7 = make_field(7, 1).unwrap();
        let c = cauchy_check(&f7, &ints(&f7, &[1])).unwrap();
        assert_eq!((c.lhs, c.rhs), (1, 1));
        assert!(c.holds);
        assert!(cauchy_check(&f7, &ints(&f7, &[0, 2])).is_err());
    }

    #[test]
    fn subfield_condition_examples() {
        let f = make_field(3, 5).unwrap();
        assert!(!subfield_condition(&f, 3));
        assert!(subfield_condition(&f, 9));
        assert!(subfield_condition(&make_field(7, 1).unwrap(), 1));
        let f64_ = make_field(2, 6).unwrap();
        // G = F_8: 8^{52/51} ~ 8.33.
        assert!(!subfield_condition(&f64_, 8));
        assert!(subfield_condition(&f64_, 9));
    }

    #[test]
    fn energy_report_fields() {
        let f = make_field(3, 5).unwrap();
        let s: Vec<_> = f.nonzero_elements().step_by(7).take(20).collect();
        let r = energy_report(&f, &s).unwrap();
        assert_eq!(r.s_size, 20);
        assert!(r.s_size.pow(2) <= r.energy && r.energy <= r.s_size.pow(3));
        assert!(r.cauchy.holds);
        assert_eq!(r.cauchy, cauchy_check(&f, &s).unwrap());
        assert!(r.lemma_ratio.unwrap().is_finite());
        assert!(r.corollary_ratio.unwrap().is_finite());
    }
}
