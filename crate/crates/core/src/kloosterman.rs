//! Kloosterman sums `K(u, v) = sum_{x != 0} psi(u x + v / x)` and Weil-bound
//! scans.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::{psi_exponent, AdditiveCharacter, CyclotomicSum, RootTable};
use crate::field::{FieldCtx, FieldElement};
use crate::par::{self, Exec};

/// Absolute slack allowed over `2 sqrt(q)`.
pub const WEIL_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KloostermanValue {
    pub exact: CyclotomicSum,
    pub value: Complex64,
    /// `2 sqrt(q) - |value|`.
    pub weil_margin: f64,
    pub trivial_character: bool,
}

impl KloostermanValue {
    fn from_exact(ctx: &FieldCtx, chi: AdditiveCharacter, exact: CyclotomicSum, roots: &RootTable) -> Self {
        let value = roots.eval(&exact);
        KloostermanValue {
            weil_margin: weil_bound(ctx.q()) - value.norm(),
            exact,
            value,
            trivial_character: chi.is_trivial(),
        }
    }
}

pub fn weil_bound(q: u32) -> f64 {
    2.0 * (q as f64).sqrt()
}

/// Direct evaluation over all `q - 1` nonzero `x`.
pub fn kloosterman(ctx: &FieldCtx, chi: AdditiveCharacter, u: FieldElement, v: FieldElement) -> KloostermanValue {
    let mut exact = CyclotomicSum::zero(ctx.p());
    for x in ctx.nonzero_elements() {
        let xi = ctx.inv(x).expect("nonzero");
        exact.push(psi_exponent(ctx, chi, ctx.add(ctx.mul(u, x), ctx.mul(v, xi))));
    }
    KloostermanValue::from_exact(ctx, chi, exact, &RootTable::new(ctx.p()))
}

/// Precomputed per-`u` data shared across a row of `v` values.
struct RowKernel {
    /// `Tr(a u x)` for each nonzero `x`.
    ux_exp: Vec<u32>,
    /// `a / x` for each nonzero `x`.
    scaled_inv: Vec<FieldElement>,
}

impl RowKernel {
    fn new(ctx: &FieldCtx, chi: AdditiveCharacter, u: FieldElement) -> Self {
        let au = ctx.mul(chi.a, u);
        let ux_exp = ctx.nonzero_elements().map(|x| ctx.trace(ctx.mul(au, x))).collect();
        let scaled_inv = ctx.nonzero_elements().map(|x| ctx.mul(chi.a, ctx.inv(x).expect("nonzero"))).collect();
        RowKernel { ux_exp, scaled_inv }
    }

    fn exact(&self, ctx: &FieldCtx, v: FieldElement) -> CyclotomicSum {
        let p = ctx.p();
        let mut exact = CyclotomicSum::zero(p);
        if v.is_zero() {
            for &e in &self.ux_exp {
                exact.push(e);
            }
            return exact;
        }
        for (&e, &y) in self.ux_exp.iter().zip(&self.scaled_inv) {
            let t = e + ctx.trace(ctx.mul(v, y));
            exact.push(if t >= p { t - p } else { t });
        }
        exact
    }
}

/// `K(u, v)` for every `v` in element order.
pub fn kloosterman_row(ctx: &FieldCtx, chi: AdditiveCharacter, u: FieldElement) -> Vec<KloostermanValue> {
    let kernel = RowKernel::new(ctx, chi, u);
    let roots = RootTable::new(ctx.p());
    ctx.elements().map(|v| KloostermanValue::from_exact(ctx, chi, kernel.exact(ctx, v), &roots)).collect()
}

/// Exact histograms of one row, without complex evaluation.
pub fn kloosterman_row_exact(ctx: &FieldCtx, chi: AdditiveCharacter, u: FieldElement) -> Vec<CyclotomicSum> {
    let kernel = RowKernel::new(ctx, chi, u);
    ctx.elements().map(|v| kernel.exact(ctx, v)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeilViolation {
    pub u: FieldElement,
    pub v: FieldElement,
    pub abs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeilScan {
    pub q: u32,
    pub bound: f64,
    /// Pairs other than `(0, 0)` that were checked.
    pub pairs: u64,
    /// Largest `|K| / (2 sqrt(q))` over `(u, v) != (0, 0)`.
    pub max_ratio: f64,
    pub argmax: (FieldElement, FieldElement),
    pub max_imag: f64,
    /// `K(0, 0)`, reported separately; it equals `q - 1` for nontrivial psi.
    pub k00: Option<i64>,
    pub violations: Vec<WeilViolation>,
}

impl WeilScan {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Statistics of one row `u` of the scan over all `v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeilRow {
    pub u: FieldElement,
    /// Pairs of this row that enter the statistics (`(0, 0)` is skipped).
    pub pairs: u64,
    pub max_abs: f64,
    pub max_ratio: f64,
    pub argmax_v: FieldElement,
    pub max_imag: f64,
    pub k00: Option<i64>,
    pub violations: Vec<WeilViolation>,
}

fn weil_row(ctx: &FieldCtx, chi: AdditiveCharacter, roots: &RootTable, u: FieldElement) -> WeilRow {
    let bound = weil_bound(ctx.q());
    let kernel = RowKernel::new(ctx, chi, u);
    let mut row = WeilRow {
        u,
        pairs: 0,
        max_abs: 0.0,
        max_ratio: f64::NEG_INFINITY,
        argmax_v: FieldElement::ZERO,
        max_imag: 0.0,
        k00: None,
        violations: Vec::new(),
    };
    for v in ctx.elements() {
        let exact = kernel.exact(ctx, v);
        let value = roots.eval(&exact);
        row.max_imag = row.max_imag.max(value.im.abs());
        if u.is_zero() && v.is_zero() {
            row.k00 = exact.as_integer();
            continue;
        }
        row.pairs += 1;
        let abs = value.norm();
        if abs / bound > row.max_ratio {
            row.max_ratio = abs / bound;
            row.max_abs = abs;
            row.argmax_v = v;
        }
        if abs > bound + WEIL_TOLERANCE {
            row.violations.push(WeilViolation { u, v, abs });
        }
    }
    row
}

/// Scan rows for the given `u` values, returned in input order.
pub fn weil_rows_with(ctx: &FieldCtx, chi: AdditiveCharacter, us: &[FieldElement], exec: Exec) -> Vec<WeilRow> {
    let roots = RootTable::new(ctx.p());
    par::map_slice(exec, us, |&u| weil_row(ctx, chi, &roots, u))
}

impl WeilScan {
    /// Folds row statistics in order; ties keep the earliest row.
    pub fn from_rows(q: u32, rows: &[WeilRow]) -> Self {
        let mut scan = WeilScan {
            q,
            bound: weil_bound(q),
            pairs: 0,
            max_ratio: f64::NEG_INFINITY,
            argmax: (FieldElement::ZERO, FieldElement::ZERO),
            max_imag: 0.0,
            k00: None,
            violations: Vec::new(),
        };
        for row in rows {
            scan.pairs += row.pairs;
            if row.max_ratio > scan.max_ratio {
                scan.max_ratio = row.max_ratio;
                scan.argmax = (row.u, row.argmax_v);
            }
            scan.max_imag = scan.max_imag.max(row.max_imag);
            if row.k00.is_some() {
                scan.k00 = row.k00;
            }
            scan.violations.extend(row.violations.iter().cloned());
        }
        scan
    }
}

pub fn weil_scan(ctx: &FieldCtx, chi: AdditiveCharacter) -> WeilScan {
    weil_scan_with(ctx, chi, Exec::default())
}

/// Exhaustive scan over `F_q^2`, parallel over `u`.
pub fn weil_scan_with(ctx: &FieldCtx, chi: AdditiveCharacter, exec: Exec) -> WeilScan {
    let us: Vec<FieldElement> = ctx.elements().collect();
    WeilScan::from_rows(ctx.q(), &weil_rows_with(ctx, chi, &us, exec))
}
