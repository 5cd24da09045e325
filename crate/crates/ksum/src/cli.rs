use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ksum_core::kloosterman::weil_bound;
use ksum_core::subspace::{element_literal, parse_element};
use ksum_core::sums::{thm1_rhs, thm2_nontrivial, thm2_rhs, trivial_bound, weighted_sum_oracle, EVAL_BUDGET};
use ksum_core::{
    double_sum_affine, double_sum_direct, kloosterman, make_field, weighted_sum, AdditiveCharacter, AffineSubspace,
    Exec, FieldCtx,
};

use crate::cases::{make_weights, SetSpec};
use crate::checks::{self, energy_row, Cx};
use crate::config::{DimRange, Mode, SweepConfig, WeightScheme, DEFAULT_SEED};
use crate::report::Output;
use crate::HarnessError;

/// Oracle weighted sums are only attempted below this many terms.
const WSUM_ORACLE_TERMS: u128 = 10_000_000;

#[derive(Parser, Debug)]
#[command(name = "ksum", version, about = "Kloosterman sums over affine subspaces of finite fields")]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every sampled case (and for `wsum` weights).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads; 1 runs sequentially. Output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Record wall time in `meta.walltime_ms` (output is then not reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Field parameters: modulus, trace of the power basis, largest proper subfield.
    Field(FieldArgs),
    /// One Kloosterman sum K(u, v) with its exact histogram.
    Kloosterman {
        #[command(flatten)]
        field: FieldArgs,
        /// Character parameter a of psi_a (coefficient list), default 1.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Exhaustive Weil-bound scan of one field.
    Weil {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Double sum over two affine subspaces, direct and reduced.
    Dsum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Weighted double sum over an affine subspace and a seeded weight vector.
    Wsum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "A")]
        a: String,
        #[arg(long, default_value = "ones")]
        weights: WeightScheme,
        #[arg(long)]
        support_size: usize,
    },
    /// Energy report for a set: `random:SIZE:SEED`, `subspace-critical:L:M`,
    /// `subspace:[...]` or `literal:e;e;...`.
    Energy {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        set_spec: String,
    },
    /// Sweeps with pass/fail assertions and empirical-constant summaries.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// `exhaustive` or `sample:COUNT`; each check has its own default.
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Dimensions of A's direction space L, as `d` or `lo..hi`.
    #[arg(long)]
    pub dim_l: Option<DimRange>,
    /// Dimensions of B's direction space M.
    #[arg(long)]
    pub dim_m: Option<DimRange>,
    /// Weight schemes for thm2, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<WeightScheme>>,
    /// Affine translate pairs in the reduction check.
    #[arg(long)]
    pub translates: Option<usize>,
    /// Sampled subspace pairs whose critical sets enter the energy check.
    #[arg(long)]
    pub critical_pairs: Option<usize>,
}

impl SweepArgs {
    fn config(&self, seed: u64) -> SweepConfig {
        let mut c = SweepConfig::new(self.field.p, self.field.n).with_seed(seed);
        c.mode = self.mode;
        if let Some(d) = self.dim_l {
            c.dims_l = d;
        }
        if let Some(d) = self.dim_m {
            c.dims_m = d;
        }
        if let Some(w) = &self.weights {
            c.schemes = w.clone();
        }
        if let Some(t) = self.translates {
            c.translates = t;
        }
        if let Some(k) = self.critical_pairs {
            c.critical_pairs = k;
        }
        c
    }
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    Weil(SweepArgs),
    Reduction(SweepArgs),
    Thm1(SweepArgs),
    Thm2(SweepArgs),
    Energy(SweepArgs),
    /// Every check on the default fields F_32, F_27, F_125, F_243, F_343.
    All,
}

fn make(f: &FieldArgs) -> Result<FieldCtx, HarnessError> {
    Ok(make_field(f.p, f.n)?)
}

fn field_record(ctx: &FieldCtx) -> Value {
    let x = ctx.from_coeffs(&[0, 1]).unwrap_or(ctx.one());
    let basis_traces: Vec<u32> = (0..ctx.n()).map(|j| ctx.trace(ctx.pow(x, j as u64))).collect();
    json!({
        "p": ctx.p(),
        "n": ctx.n(),
        "q": ctx.q(),
        "modulus": ctx.modulus(),
        "basis_traces": basis_traces,
        "largest_proper_subfield": ctx.largest_proper_subfield_size(),
        "tables": ctx.has_tables(),
    })
}

fn run_command(cli: &Cli, exec: Exec) -> Result<Output, HarnessError> {
    let seed = cli.seed;
    let out = match &cli.command {
        Command::Field(f) => Output::Record(field_record(&make(f)?)),
        Command::Kloosterman { field, a, u, v } => {
            let ctx = make(field)?;
            let a = match a {
                Some(s) => parse_element(&ctx, s)?,
                None => ctx.one(),
            };
            let (u, v) = (parse_element(&ctx, u)?, parse_element(&ctx, v)?);
            let k = kloosterman(&ctx, AdditiveCharacter::new(a), u, v);
            Output::Record(json!({
                "p": ctx.p(),
                "n": ctx.n(),
                "a": element_literal(&ctx, a),
                "u": element_literal(&ctx, u),
                "v": element_literal(&ctx, v),
                "histogram": k.exact.counts,
                "integer": k.exact.as_integer(),
                "value": Cx::from(k.value),
                "abs": k.value.norm(),
                "weil_bound": weil_bound(ctx.q()),
                "weil_margin": k.weil_margin,
                "trivial_character": k.trivial_character,
            }))
        }
        Command::Weil { field, mode } => {
            let mut cfg = SweepConfig::new(field.p, field.n).with_seed(seed);
            cfg.mode = *mode;
            Output::Check(Box::new(checks::cmd_weil(&cfg, exec)?))
        }
        Command::Dsum { field, a, b } => {
            let ctx = make(field)?;
            let (a, b) = (AffineSubspace::parse(&ctx, a)?, AffineSubspace::parse(&ctx, b)?);
            let psi = AdditiveCharacter::CANONICAL;
            let direct = double_sum_direct(&ctx, psi, &a.members(&ctx)?, &b.members(&ctx)?)?;
            let reduced = double_sum_affine(&ctx, psi, &a, &b)?;
            let (sa, sb) = (a.size(&ctx), b.size(&ctx));
            let terms = thm1_rhs(ctx.q(), sa);
            Output::Record(json!({
                "p": ctx.p(),
                "n": ctx.n(),
                "A": a.to_literal(&ctx),
                "B": b.to_literal(&ctx),
                "a_size": sa,
                "b_size": sb,
                "direct": Cx::from(direct),
                "reduced": Cx::from(reduced.value),
                "reduced_histogram": reduced.exact.counts,
                "critical_size": reduced.critical.len(),
                "critical_set": reduced.critical.elements.iter().map(|&x| element_literal(&ctx, x)).collect::<Vec<_>>(),
                "thm1_terms": terms.terms,
                "ratio": reduced.value.norm() / ((sa * sb) as f64 * terms.max),
            }))
        }
        Command::Wsum { field, a, weights, support_size } => {
            let ctx = make(field)?;
            let a = AffineSubspace::parse(&ctx, a)?;
            let psi = AdditiveCharacter::CANONICAL;
            let alpha = make_weights(&ctx, *weights, *support_size, seed)?;
            let (sa, q) = (a.size(&ctx), ctx.q());
            let value = weighted_sum(&ctx, psi, &alpha, &a)?;
            let terms = sa as u128 * alpha.len() as u128 * q as u128;
            let oracle = if terms <= WSUM_ORACLE_TERMS.min(EVAL_BUDGET) {
                Some(Cx::from(weighted_sum_oracle(&ctx, psi, &alpha, &a.members(&ctx)?)?))
            } else {
                None
            };
            let rhs = thm2_rhs(q, sa, &alpha)?;
            Output::Record(json!({
                "p": ctx.p(),
                "n": ctx.n(),
                "A": a.to_literal(&ctx),
                "weights": weights.name(),
                "support_size": alpha.len(),
                "seed": seed,
                "weighted": Cx::from(value),
                "oracle": oracle,
                "norm1": rhs.norm1,
                "norm2": rhs.norm2,
                "thm2_terms": rhs.factor.terms,
                "thm2_rhs": rhs.value,
                "ratio": value.norm() / rhs.value,
                "trivial_bound": trivial_bound(sa, q, &alpha),
                "nontrivial": thm2_nontrivial(q, sa, alpha.len() as u64),
            }))
        }
        Command::Energy { field, set_spec } => {
            let ctx = make(field)?;
            let spec = SetSpec::parse(&ctx, set_spec)?;
            let row = serde_json::to_value(energy_row(&ctx, "spec", &spec, None)?).expect("row serializes");
            let mut rec = serde_json::Map::new();
            rec.insert("p".into(), ctx.p().into());
            rec.insert("n".into(), ctx.n().into());
            if let Value::Object(m) = row {
                rec.extend(m.into_iter().filter(|(k, _)| k != "kind" && k != "thm1_case"));
            }
            Output::Record(Value::Object(rec))
        }
        Command::Verify { check } => match check {
            VerifyCommand::Weil(a) => Output::Check(Box::new(checks::cmd_weil(&a.config(seed), exec)?)),
            VerifyCommand::Reduction(a) => Output::Check(Box::new(checks::cmd_reduction(&a.config(seed), exec)?)),
            VerifyCommand::Thm1(a) => Output::Check(Box::new(checks::cmd_thm1(&a.config(seed), exec)?)),
            VerifyCommand::Thm2(a) => Output::Check(Box::new(checks::cmd_thm2(&a.config(seed), exec)?)),
            VerifyCommand::Energy(a) => Output::Check(Box::new(checks::cmd_energy(&a.config(seed), exec)?)),
            VerifyCommand::All => Output::All(Box::new(checks::cmd_all(seed, exec)?)),
        },
    };
    Ok(out)
}

fn configure_pool(jobs: Option<usize>) -> Result<Exec, HarnessError> {
    match jobs {
        Some(0) => Err(HarnessError::Config("--jobs must be at least 1".into())),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            // Fails only if a pool already exists, in which case it is reused.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Ok(Exec::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Exec::Sequential),
        None => Ok(Exec::default()),
    }
}

/// Runs the CLI and returns the process exit code: 0 when every assertion
/// passed, 1 on any violation, 2 on usage or configuration errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    exit_code(execute(&cli))
}

pub fn exit_code(outcome: Result<bool, HarnessError>) -> i32 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("ksum: {e}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, HarnessError> {
    let exec = configure_pool(cli.jobs)?;
    let start = Instant::now();
    let mut out = run_command(cli, exec)?;
    if cli.timing {
        out.set_walltime(start.elapsed().as_millis() as u64);
    }
    let text = match cli.format {
        Format::Json => out.to_json(),
        Format::Csv => out.to_csv(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        },
    }
    Ok(out.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(Ok(true)), 0);
        assert_eq!(exit_code(Ok(false)), 1);
        assert_eq!(exit_code(Err(HarnessError::Config("x".into()))), 2);
        assert_eq!(run(["ksum", "field", "--p", "4", "--n", "1"]), 2);
        assert_eq!(run(["ksum", "--jobs", "0", "field", "--p", "3", "--n", "1"]), 2);
    }
}
