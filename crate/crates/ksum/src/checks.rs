//! The sweeps behind `ksum verify`. Each check draws its cases sequentially
//! from its own seeded stream, evaluates them in parallel, and keeps task
//! order in the report.

use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ksum_core::additive::{additive_energy, additive_energy_oracle, energy_report, EnergyReport};
use ksum_core::kloosterman::{weil_bound, WeilScan};
use ksum_core::par::{self, Exec};
use ksum_core::subspace::{
    element_literal, enumerate_all_subspaces, gaussian_binomial, random_affine_subspace_with, random_subspace,
    SUBSPACE_ENUM_CAP,
};
use ksum_core::sums::{
    critical_set, thm1_nontrivial, thm1_rhs, thm2_nontrivial, thm2_rhs, trivial_bound, trivial_bound_unweighted,
};
use ksum_core::{
    double_sum_affine, double_sum_direct, make_field, weighted_sum, weil_rows_with, AdditiveCharacter, AffineSubspace,
    Complex64, FieldCtx, FieldElement, SubspaceBasis,
};

use crate::cases::{make_weights, SetSpec};
use crate::config::{DimRange, Mode, Stream, SweepConfig, DEFAULT_FIELDS};
use crate::report::{AllReport, CheckReport, Direction, ReportBuilder, Statement};
use crate::HarnessError;

pub const WEIL_EXHAUSTIVE_MAX_Q: u32 = 1 << 10;
pub const REDUCTION_TOLERANCE: f64 = 1e-6;
/// Relative slack for float comparisons against exact bounds.
pub const BOUND_SLACK: f64 = 1e-9;
/// Linear pairs the reduction check enumerates without being asked.
pub const REDUCTION_AUTO_PAIRS: u128 = 10_000;
pub const THM1_DEFAULT_SAMPLES: usize = 500;
pub const THM2_DEFAULT_SAMPLES: usize = 50;
pub const ENERGY_DEFAULT_SETS: usize = 200;
pub const ENERGY_MAX_SET: usize = 50;
/// Sets up to this size are also checked against the quadruple loop.
pub const ENERGY_ORACLE_MAX: usize = 50;
/// Subspaces enumerated by the energy check before it falls back to sampling.
pub const ENERGY_AUTO_SUBSPACES: u128 = 1_000;
pub const ENERGY_SAMPLED_SUBSPACES: usize = 50;

const PSI: AdditiveCharacter = AdditiveCharacter::CANONICAL;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

fn within(lhs: f64, bound: f64) -> bool {
    lhs <= bound * (1.0 + BOUND_SLACK) + BOUND_SLACK
}

fn field(cfg: &SweepConfig) -> Result<FieldCtx, HarnessError> {
    Ok(make_field(cfg.p, cfg.n)?)
}

fn dims(cfg_range: DimRange, ctx: &FieldCtx, which: &str) -> Result<Vec<u32>, HarnessError> {
    let d: Vec<u32> = cfg_range.within(ctx.n()).collect();
    if d.is_empty() {
        return Err(HarnessError::Config(format!("no {which} dimension in range for n = {}", ctx.n())));
    }
    Ok(d)
}

fn count_subspaces(ctx: &FieldCtx, dims: &[u32]) -> u128 {
    dims.iter().fold(0u128, |acc, &d| acc.saturating_add(gaussian_binomial(ctx.n(), d, ctx.p())))
}

fn subspaces_in(ctx: &FieldCtx, dims: &[u32]) -> Result<Vec<SubspaceBasis>, HarnessError> {
    Ok(enumerate_all_subspaces(ctx)?.into_iter().filter(|s| dims.contains(&s.dim())).collect())
}

fn collect<T>(results: Vec<Result<T, HarnessError>>) -> Result<Vec<T>, HarnessError> {
    results.into_iter().collect()
}

fn lit(ctx: &FieldCtx, x: FieldElement) -> String {
    element_literal(ctx, x)
}

// ---------------------------------------------------------------- weil

#[derive(Serialize)]
struct WeilRowOut {
    u: String,
    u_index: u32,
    pairs: u64,
    max_abs: f64,
    max_ratio: f64,
    argmax_v: String,
    max_imag: f64,
    violations: usize,
}

pub fn cmd_weil(cfg: &SweepConfig, exec: Exec) -> Result<CheckReport, HarnessError> {
    let ctx = field(cfg)?;
    let q = ctx.q();
    let mode = cfg.mode.unwrap_or(Mode::Exhaustive);
    let us: Vec<FieldElement> = match mode {
        Mode::Exhaustive => {
            if q > WEIL_EXHAUSTIVE_MAX_Q {
                return Err(HarnessError::Config(format!(
                    "exhaustive Weil scan needs q <= {WEIL_EXHAUSTIVE_MAX_Q}, got {q}"
                )));
            }
            ctx.elements().collect()
        }
        Mode::Sample(k) => {
            let mut rng = cfg.rng(Stream::Weil);
            let mut picked: Vec<u32> =
                index::sample(&mut rng, q as usize, k.min(q as usize)).into_iter().map(|i| i as u32).collect();
            picked.sort_unstable();
            picked.into_iter().map(FieldElement::from_index).collect()
        }
    };
    let rows = weil_rows_with(&ctx, PSI, &us, exec);
    let scan = WeilScan::from_rows(q, &rows);
    let out: Vec<WeilRowOut> = rows
        .iter()
        .map(|r| WeilRowOut {
            u: lit(&ctx, r.u),
            u_index: r.u.index(),
            pairs: r.pairs,
            max_abs: r.max_abs,
            max_ratio: r.max_ratio,
            argmax_v: lit(&ctx, r.argmax_v),
            max_imag: r.max_imag,
            violations: r.violations.len(),
        })
        .collect();
    let imag_cap = 1e-9 * q as f64;
    let mut b = ReportBuilder::new("weil", &ctx, cfg.seed, mode.to_string(), "rows u in element order, all v".into());
    b.rows(&out)
        .statement(Statement::assertion(
            "weil_bound",
            rows.iter().enumerate().map(|(i, r)| (i, r.violations.is_empty())),
        ))
        .statement(Statement::assertion("realness", rows.iter().enumerate().map(|(i, r)| (i, r.max_imag <= imag_cap))))
        .headline(rows.iter().enumerate().map(|(i, r)| (i, r.max_ratio)))
        .empirical_constant(Some(scan.max_ratio))
        .extra("bound", weil_bound(q))
        .extra("pairs", scan.pairs)
        .extra("max_imag", scan.max_imag)
        .extra("argmax_pair", [lit(&ctx, scan.argmax.0), lit(&ctx, scan.argmax.1)]);
    if let Some(i) = rows.iter().position(|r| r.u.is_zero()) {
        b.statement(Statement::assertion("k00_exact", [(i, scan.k00 == Some(q as i64 - 1))]));
        b.extra("k00", scan.k00);
    }
    Ok(b.build())
}

// ---------------------------------------------------------------- reduction

#[derive(Serialize)]
struct ReductionRow {
    kind: &'static str,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    a_size: u64,
    b_size: u64,
    direct: Cx,
    reduced: Cx,
    abs_diff: f64,
    tolerance: f64,
    critical_size: usize,
    critical_bound_ok: bool,
    pass: bool,
}

fn random_pair(
    ctx: &FieldCtx,
    pairs: &[(u32, u32)],
    rng: &mut ChaCha8Rng,
) -> Result<(AffineSubspace, AffineSubspace), HarnessError> {
    let (dl, dm) = pairs[rng.gen_range(0..pairs.len())];
    let a = random_affine_subspace_with(ctx, dl, rng)?;
    let b = random_affine_subspace_with(ctx, dm, rng)?;
    Ok((a, b))
}

fn dim_pairs(cfg: &SweepConfig, ctx: &FieldCtx, ordered: bool) -> Result<Vec<(u32, u32)>, HarnessError> {
    let dl = dims(cfg.dims_l, ctx, "L")?;
    let dm = dims(cfg.dims_m, ctx, "M")?;
    let pairs: Vec<(u32, u32)> =
        dl.iter().flat_map(|&l| dm.iter().map(move |&m| (l, m))).filter(|&(l, m)| !ordered || l <= m).collect();
    if pairs.is_empty() {
        return Err(HarnessError::Config("no dimension pair with dim L <= dim M in range".into()));
    }
    Ok(pairs)
}

pub fn cmd_reduction(cfg: &SweepConfig, exec: Exec) -> Result<CheckReport, HarnessError> {
    let ctx = field(cfg)?;
    let dl = dims(cfg.dims_l, &ctx, "L")?;
    let dm = dims(cfg.dims_m, &ctx, "M")?;
    let linear_pairs = count_subspaces(&ctx, &dl).saturating_mul(count_subspaces(&ctx, &dm));
    let mode = match cfg.mode {
        Some(m) => m,
        None if linear_pairs <= REDUCTION_AUTO_PAIRS => Mode::Exhaustive,
        None => Mode::Sample(cfg.translates),
    };
    let mut cases: Vec<(&'static str, AffineSubspace, AffineSubspace)> = Vec::new();
    let translates = match mode {
        Mode::Exhaustive => {
            if linear_pairs > SUBSPACE_ENUM_CAP {
                return Err(HarnessError::Config(format!(
                    "{linear_pairs} linear subspace pairs exceed the exhaustive cap {SUBSPACE_ENUM_CAP}"
                )));
            }
            let ls = subspaces_in(&ctx, &dl)?;
            let ms = subspaces_in(&ctx, &dm)?;
            for l in &ls {
                for m in &ms {
                    cases.push(("linear", AffineSubspace::linear(l.clone()), AffineSubspace::linear(m.clone())));
                }
            }
            cfg.translates
        }
        Mode::Sample(k) => k,
    };
    let pairs = dim_pairs(cfg, &ctx, false)?;
    let mut rng = cfg.rng(Stream::Reduction);
    for _ in 0..translates {
        let (a, b) = random_pair(&ctx, &pairs, &mut rng)?;
        cases.push(("translate", a, b));
    }
    let rows = collect(par::map_slice(exec, &cases, |(kind, a, b)| -> Result<ReductionRow, HarnessError> {
        let direct = double_sum_direct(&ctx, PSI, &a.members(&ctx)?, &b.members(&ctx)?)?;
        let reduced = double_sum_affine(&ctx, PSI, a, b)?;
        let (a_size, b_size) = (a.size(&ctx), b.size(&ctx));
        let abs_diff = (direct - reduced.value).norm();
        let tolerance = REDUCTION_TOLERANCE * direct.norm().max(1.0);
        let crit = (a_size * b_size) as f64 * reduced.critical.len() as f64;
        Ok(ReductionRow {
            kind,
            a: a.to_literal(&ctx),
            b: b.to_literal(&ctx),
            a_size,
            b_size,
            direct: direct.into(),
            reduced: reduced.value.into(),
            abs_diff,
            tolerance,
            critical_size: reduced.critical.len(),
            critical_bound_ok: within(reduced.value.norm(), crit),
            pass: abs_diff <= tolerance,
        })
    }))?;
    let linear = cases.iter().filter(|c| c.0 == "linear").count();
    let sampling = format!(
        "{linear} linear pairs (all), {translates} translate pairs: dims uniform, then uniform subspace and base"
    );
    let mut b = ReportBuilder::new("reduction", &ctx, cfg.seed, mode.to_string(), sampling);
    b.rows(&rows)
        .statement(Statement::assertion("reduction_identity", rows.iter().enumerate().map(|(i, r)| (i, r.pass))))
        .statement(Statement::assertion(
            "critical_set_bound",
            rows.iter().enumerate().map(|(i, r)| (i, r.critical_bound_ok)),
        ))
        .headline(rows.iter().enumerate().map(|(i, r)| (i, r.abs_diff / r.tolerance)))
        .extra("linear_pairs", linear)
        .extra("translate_pairs", translates)
        .extra("tolerance", REDUCTION_TOLERANCE);
    Ok(b.build())
}

// ---------------------------------------------------------------- thm1

#[derive(Serialize)]
struct Thm1Row {
    dim_l: u32,
    dim_m: u32,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    a_size: u64,
    b_size: u64,
    abs_sum: f64,
    critical_size: usize,
    thm1_terms: [f64; 3],
    thm1_active: usize,
    rhs: f64,
    ratio: f64,
    trivial_bound: f64,
    trivial_ok: bool,
    critical_bound_ok: bool,
    nontrivial_regime: bool,
}

/// Sampled `(A, B)` pairs with `dim A <= dim B`; the energy check reuses the
/// leading cases of the same stream.
fn thm1_samples(
    cfg: &SweepConfig,
    ctx: &FieldCtx,
    count: usize,
) -> Result<Vec<(AffineSubspace, AffineSubspace)>, HarnessError> {
    let pairs = dim_pairs(cfg, ctx, true)?;
    let mut rng = cfg.rng(Stream::Thm1);
    (0..count).map(|_| random_pair(ctx, &pairs, &mut rng)).collect()
}

pub fn cmd_thm1(cfg: &SweepConfig, exec: Exec) -> Result<CheckReport, HarnessError> {
    let ctx = field(cfg)?;
    let q = ctx.q();
    let mode = cfg.mode.unwrap_or(Mode::Sample(THM1_DEFAULT_SAMPLES));
    let (cases, sampling) = match mode {
        Mode::Sample(k) => (
            thm1_samples(cfg, &ctx, k)?,
            format!("{k} pairs: (dim L, dim M) uniform over dim L <= dim M, then uniform subspaces and bases"),
        ),
        Mode::Exhaustive => {
            let dl = dims(cfg.dims_l, &ctx, "L")?;
            let dm = dims(cfg.dims_m, &ctx, "M")?;
            let count = count_subspaces(&ctx, &dl).saturating_mul(count_subspaces(&ctx, &dm));
            if count > SUBSPACE_ENUM_CAP {
                return Err(HarnessError::Config(format!(
                    "{count} linear subspace pairs exceed the exhaustive cap {SUBSPACE_ENUM_CAP}"
                )));
            }
            let ls = subspaces_in(&ctx, &dl)?;
            let ms = subspaces_in(&ctx, &dm)?;
            let mut cases = Vec::new();
            for l in &ls {
                for m in ms.iter().filter(|m| l.dim() <= m.dim()) {
                    cases.push((AffineSubspace::linear(l.clone()), AffineSubspace::linear(m.clone())));
                }
            }
            (cases, "all linear pairs with dim L <= dim M".to_string())
        }
    };
    let rows = collect(par::map_slice(exec, &cases, |(a, b)| -> Result<Thm1Row, HarnessError> {
        let s = double_sum_affine(&ctx, PSI, a, b)?;
        let (a_size, b_size) = (a.size(&ctx), b.size(&ctx));
        let terms = thm1_rhs(q, a_size);
        let ab = (a_size * b_size) as f64;
        let abs_sum = s.value.norm();
        let trivial = trivial_bound_unweighted(a_size, b_size, q);
        Ok(Thm1Row {
            dim_l: a.dim(),
            dim_m: b.dim(),
            a: a.to_literal(&ctx),
            b: b.to_literal(&ctx),
            a_size,
            b_size,
            abs_sum,
            critical_size: s.critical.len(),
            thm1_terms: terms.terms,
            thm1_active: terms.active,
            rhs: ab * terms.max,
            ratio: abs_sum / (ab * terms.max),
            trivial_bound: trivial,
            trivial_ok: within(abs_sum, trivial),
            critical_bound_ok: within(abs_sum, ab * s.critical.len() as f64),
            nontrivial_regime: thm1_nontrivial(q, a_size),
        })
    }))?;
    let mut b = ReportBuilder::new("thm1", &ctx, cfg.seed, mode.to_string(), sampling);
    let ratios = || rows.iter().enumerate().map(|(i, r)| (i, r.ratio));
    let upper = Statement::empirical("thm1_ratio", Direction::Upper, ratios());
    b.rows(&rows)
        .statement(Statement::assertion("trivial_bound", rows.iter().enumerate().map(|(i, r)| (i, r.trivial_ok))))
        .statement(Statement::assertion(
            "critical_set_bound",
            rows.iter().enumerate().map(|(i, r)| (i, r.critical_bound_ok)),
        ))
        .empirical_constant(upper.empirical_constant)
        .statement(upper)
        .statement(Statement::empirical(
            "thm1_ratio_nontrivial_regime",
            Direction::Upper,
            ratios().filter(|&(i, _)| rows[i].nontrivial_regime),
        ))
        .headline(ratios())
        .extra("odd_degree", ctx.n() % 2 == 1)
        .extra("nontrivial_rows", rows.iter().filter(|r| r.nontrivial_regime).count());
    if ctx.n() % 2 == 0 {
        b.extra("warning", "even extension degree: the bound is stated for odd degree; rows are reported anyway");
    }
    Ok(b.build())
}

// ---------------------------------------------------------------- thm2

#[derive(Serialize)]
struct Thm2Row {
    scheme: &'static str,
    #[serde(rename = "A")]
    a: String,
    dim_a: u32,
    a_size: u64,
    v_size: u64,
    weight_seed: u64,
    abs_sum: f64,
    norm1: f64,
    norm2: f64,
    thm2_terms: [f64; 3],
    thm2_rhs: f64,
    ratio: f64,
    trivial_bound: f64,
    trivial_ok: bool,
    nontrivial: bool,
}

pub fn cmd_thm2(cfg: &SweepConfig, exec: Exec) -> Result<CheckReport, HarnessError> {
    let ctx = field(cfg)?;
    let q = ctx.q();
    let mode = cfg.mode.unwrap_or(Mode::Sample(THM2_DEFAULT_SAMPLES));
    let dl = dims(cfg.dims_l, &ctx, "L")?;
    let mut rng = cfg.rng(Stream::Thm2);
    let mut cases: Vec<(crate::config::WeightScheme, AffineSubspace, u64)> = Vec::new();
    let sampling = match mode {
        Mode::Sample(k) => {
            for &scheme in &cfg.schemes {
                for _ in 0..k {
                    let d = dl[rng.gen_range(0..dl.len())];
                    let a = random_affine_subspace_with(&ctx, d, &mut rng)?;
                    cases.push((scheme, a, rng.gen()));
                }
            }
            format!("{k} per scheme: dim A uniform, uniform subspace and base; V a seeded set with #V = #A")
        }
        Mode::Exhaustive => {
            let count = count_subspaces(&ctx, &dl);
            if count > SUBSPACE_ENUM_CAP {
                return Err(HarnessError::Config(format!(
                    "{count} subspaces exceed the exhaustive cap {SUBSPACE_ENUM_CAP}"
                )));
            }
            let ls = subspaces_in(&ctx, &dl)?;
            for &scheme in &cfg.schemes {
                for l in &ls {
                    cases.push((scheme, AffineSubspace::linear(l.clone()), rng.gen()));
                }
            }
            "every linear A per scheme; V a seeded set with #V = #A".to_string()
        }
    };
    let rows = collect(par::map_slice(exec, &cases, |(scheme, a, seed)| -> Result<Thm2Row, HarnessError> {
        let a_size = a.size(&ctx);
        let v_size = a_size.min(q as u64);
        let alpha = make_weights(&ctx, *scheme, v_size as usize, *seed)?;
        let abs_sum = weighted_sum(&ctx, PSI, &alpha, a)?.norm();
        let rhs = thm2_rhs(q, a_size, &alpha)?;
        let trivial = trivial_bound(a_size, q, &alpha);
        Ok(Thm2Row {
            scheme: scheme.name(),
            a: a.to_literal(&ctx),
            dim_a: a.dim(),
            a_size,
            v_size,
            weight_seed: *seed,
            abs_sum,
            norm1: rhs.norm1,
            norm2: rhs.norm2,
            thm2_terms: rhs.factor.terms,
            thm2_rhs: rhs.value,
            ratio: abs_sum / rhs.value,
            trivial_bound: trivial,
            trivial_ok: within(abs_sum, trivial),
            nontrivial: thm2_nontrivial(q, a_size, v_size),
        })
    }))?;
    let ratios = || rows.iter().enumerate().map(|(i, r)| (i, r.ratio));
    let upper = Statement::empirical("thm2_ratio", Direction::Upper, ratios());
    let mut b = ReportBuilder::new("thm2", &ctx, cfg.seed, mode.to_string(), sampling);
    b.rows(&rows)
        .statement(Statement::assertion("trivial_bound", rows.iter().enumerate().map(|(i, r)| (i, r.trivial_ok))))
        .empirical_constant(upper.empirical_constant)
        .statement(upper);
    for scheme in &cfg.schemes {
        b.statement(Statement::empirical(
            &format!("thm2_ratio_{}", scheme.name()),
            Direction::Upper,
            ratios().filter(|&(i, _)| rows[i].scheme == scheme.name()),
        ));
    }
    b.statement(Statement::empirical(
        "thm2_ratio_nontrivial_regime",
        Direction::Upper,
        ratios().filter(|&(i, _)| rows[i].nontrivial),
    ))
    .headline(ratios())
    .extra("odd_degree", ctx.n() % 2 == 1)
    .extra("nontrivial_rows", rows.iter().filter(|r| r.nontrivial).count());
    Ok(b.build())
}

// ---------------------------------------------------------------- energy

#[derive(Serialize)]
pub(crate) struct EnergyRow {
    kind: &'static str,
    set_spec: String,
    s_size: u64,
    set_energy: u64,
    set_energy_oracle: Option<u64>,
    oracle_ok: Option<bool>,
    energy_bounds_ok: bool,
    expected_energy: Option<u64>,
    subspace_ok: Option<bool>,
    t_size: Option<u64>,
    u_size: Option<u64>,
    inverse_energy: Option<u64>,
    cauchy_lhs: Option<u128>,
    cauchy_rhs: Option<u128>,
    cauchy_ok: Option<bool>,
    lemma_rhs: Option<f64>,
    lemma_ratio: Option<f64>,
    subfield_ok: Option<bool>,
    corollary_rhs: Option<f64>,
    corollary_first_active: Option<bool>,
    corollary_ratio: Option<f64>,
    /// Index of the sampled pair in the thm1 stream, for critical sets.
    thm1_case: Option<usize>,
}

pub(crate) fn energy_row(
    ctx: &FieldCtx,
    kind: &'static str,
    spec: &SetSpec,
    thm1_case: Option<usize>,
) -> Result<EnergyRow, HarnessError> {
    let set = spec.build(ctx)?;
    let s = set.len() as u64;
    let set_energy = additive_energy(ctx, &set)?;
    let oracle = if set.len() <= ENERGY_ORACLE_MAX { Some(additive_energy_oracle(ctx, &set)?) } else { None };
    let expected = matches!(spec, SetSpec::Subspace(_)).then(|| s.pow(3));
    let report: Option<EnergyReport> =
        if set.iter().any(|x| x.is_zero()) { None } else { Some(energy_report(ctx, &set)?) };
    let r = report.as_ref();
    Ok(EnergyRow {
        kind,
        set_spec: spec.to_literal(ctx),
        s_size: s,
        set_energy,
        set_energy_oracle: oracle,
        oracle_ok: oracle.map(|o| o == set_energy),
        energy_bounds_ok: s * s <= set_energy && set_energy <= s.pow(3),
        expected_energy: expected,
        subspace_ok: expected.map(|e| e == set_energy),
        t_size: r.map(|r| r.t_size),
        u_size: r.map(|r| r.u_size),
        inverse_energy: r.map(|r| r.energy),
        cauchy_lhs: r.map(|r| r.cauchy.lhs),
        cauchy_rhs: r.map(|r| r.cauchy.rhs),
        cauchy_ok: r.map(|r| r.cauchy.holds),
        lemma_rhs: r.map(|r| r.lemma_rhs),
        lemma_ratio: r.and_then(|r| r.lemma_ratio),
        subfield_ok: r.map(|r| r.subfield_ok),
        corollary_rhs: r.map(|r| r.corollary.min),
        corollary_first_active: r.map(|r| r.corollary.first_active),
        corollary_ratio: r.and_then(|r| r.corollary_ratio),
        thm1_case,
    })
}

pub fn cmd_energy(cfg: &SweepConfig, exec: Exec) -> Result<CheckReport, HarnessError> {
    let ctx = field(cfg)?;
    let q = ctx.q();
    let mode = cfg.mode.unwrap_or(Mode::Sample(ENERGY_DEFAULT_SETS));
    let mut rng = cfg.rng(Stream::Energy);
    let mut cases: Vec<(&'static str, SetSpec, Option<usize>)> = Vec::new();

    let random_sets = match mode {
        Mode::Sample(k) => k,
        Mode::Exhaustive => ENERGY_DEFAULT_SETS,
    };
    let max_size = ENERGY_MAX_SET.min(q as usize - 1);
    for _ in 0..random_sets {
        let size = rng.gen_range(1..=max_size);
        cases.push(("random", SetSpec::Random { size, seed: rng.gen() }, None));
    }

    let all_dims: Vec<u32> = (0..=ctx.n()).collect();
    let total = count_subspaces(&ctx, &all_dims);
    let enumerate = match mode {
        Mode::Exhaustive if total > SUBSPACE_ENUM_CAP => {
            return Err(HarnessError::Config(format!(
                "{total} subspaces exceed the exhaustive cap {SUBSPACE_ENUM_CAP}"
            )));
        }
        Mode::Exhaustive => true,
        Mode::Sample(_) => total <= ENERGY_AUTO_SUBSPACES,
    };
    let subspaces: Vec<SubspaceBasis> = if enumerate {
        enumerate_all_subspaces(&ctx)?
    } else {
        let mut v = Vec::new();
        for _ in 0..ENERGY_SAMPLED_SUBSPACES {
            let d = rng.gen_range(0..=ctx.n());
            v.push(random_subspace(&ctx, d, &mut rng)?);
        }
        v
    };
    for l in subspaces {
        cases.push(("subspace", SetSpec::Subspace(l), None));
    }

    for (i, (a, b)) in thm1_samples(cfg, &ctx, cfg.critical_pairs)?.into_iter().enumerate() {
        if !critical_set(&ctx, a.directions(), b.directions())?.is_empty() {
            let spec = SetSpec::SubspaceCritical { l: a.directions().clone(), m: b.directions().clone() };
            cases.push(("critical", spec, Some(i)));
        }
    }

    let rows = collect(par::map_slice(exec, &cases, |(kind, spec, case)| energy_row(&ctx, kind, spec, *case)))?;
    let indexed = || rows.iter().enumerate();
    let lemma = |kind: &'static str| {
        Statement::empirical(
            &format!("lemma_ratio_{kind}"),
            Direction::Upper,
            indexed()
                .filter(move |(_, r)| r.kind == kind && r.subfield_ok == Some(true))
                .filter_map(|(i, r)| r.lemma_ratio.map(|x| (i, x))),
        )
    };
    let corollary = |kind: &'static str| {
        Statement::empirical(
            &format!("corollary_ratio_{kind}"),
            Direction::Lower,
            indexed().filter(move |(_, r)| r.kind == kind).filter_map(|(i, r)| r.corollary_ratio.map(|x| (i, x))),
        )
    };
    let lemma_critical = lemma("critical");
    let sampling = format!(
        "{random_sets} random subsets of F_q^* (size uniform in 1..={max_size}); {} subspaces; critical sets of the first {} thm1 pairs",
        if enumerate { "all" } else { "50 sampled" },
        cfg.critical_pairs
    );
    let mut b = ReportBuilder::new("energy", &ctx, cfg.seed, mode.to_string(), sampling);
    b.rows(&rows)
        .statement(Statement::assertion("energy_oracle", indexed().filter_map(|(i, r)| r.oracle_ok.map(|ok| (i, ok)))))
        .statement(Statement::assertion("energy_trivial_bounds", indexed().map(|(i, r)| (i, r.energy_bounds_ok))))
        .statement(Statement::assertion(
            "subspace_energy",
            indexed().filter_map(|(i, r)| r.subspace_ok.map(|ok| (i, ok))),
        ))
        .statement(Statement::assertion("cauchy", indexed().filter_map(|(i, r)| r.cauchy_ok.map(|ok| (i, ok)))))
        .headline(
            indexed()
                .filter(|(_, r)| r.kind == "critical" && r.subfield_ok == Some(true))
                .filter_map(|(i, r)| r.lemma_ratio.map(|x| (i, x))),
        )
        .empirical_constant(lemma_critical.empirical_constant)
        .statement(lemma_critical)
        .statement(lemma("random"))
        .statement(corollary("critical"))
        .statement(corollary("random"))
        .extra("largest_proper_subfield", ctx.largest_proper_subfield_size());
    Ok(b.build())
}

// ---------------------------------------------------------------- all

pub type CheckFn = fn(&SweepConfig, Exec) -> Result<CheckReport, HarnessError>;

pub const CHECKS: [(&str, CheckFn); 5] =
    [("weil", cmd_weil), ("reduction", cmd_reduction), ("thm1", cmd_thm1), ("thm2", cmd_thm2), ("energy", cmd_energy)];

/// Every check on every default field, field by field.
pub fn cmd_all(seed: u64, exec: Exec) -> Result<AllReport, HarnessError> {
    let mut reports = Vec::new();
    for (p, n) in DEFAULT_FIELDS {
        let cfg = SweepConfig::new(p, n).with_seed(seed);
        for (_, check) in CHECKS {
            reports.push(check(&cfg, exec)?);
        }
    }
    Ok(AllReport::new(seed, reports))
}
