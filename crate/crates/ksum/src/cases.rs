//! Seeded inputs that single-case commands can rebuild from a report row:
//! weight vectors and the `--set-spec` forms of `ksum energy`.

use std::f64::consts::TAU;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ksum_core::additive::normalize_set;
use ksum_core::subspace::{parse_element_list, AffineSubspace, SubspaceBasis};
use ksum_core::sums::critical_set;
use ksum_core::{Complex64, FieldCtx, FieldElement, WeightVector};

use crate::config::WeightScheme;
use crate::HarnessError;

/// `size` distinct elements of `F_q`, or of `F_q^*` with `nonzero`, sorted.
pub fn random_set(ctx: &FieldCtx, size: usize, nonzero: bool, seed: u64) -> Result<Vec<FieldElement>, HarnessError> {
    let offset = nonzero as u32;
    let pool = (ctx.q() - offset) as usize;
    if size > pool {
        return Err(HarnessError::Config(format!("set size {size} exceeds the {pool} available elements")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = index::sample(&mut rng, pool, size).into_iter().map(|i| FieldElement::from_index(i as u32 + offset));
    Ok(normalize_set(picked.collect()))
}

/// Weight vector on a random `support_size`-subset of `F_q`. Phases are
/// uniform on the circle; random-complex weights are uniform on the unit disc.
pub fn make_weights(
    ctx: &FieldCtx,
    scheme: WeightScheme,
    support_size: usize,
    seed: u64,
) -> Result<WeightVector, HarnessError> {
    let support = random_set(ctx, support_size, false, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5745_4947_4854);
    let weights = support.into_iter().map(|v| {
        let w = match scheme {
            WeightScheme::Ones => Complex64::new(1.0, 0.0),
            WeightScheme::RandomPhase => Complex64::from_polar(1.0, rng.gen::<f64>() * TAU),
            WeightScheme::RandomComplex => loop {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                if z.norm_sqr() <= 1.0 {
                    break z;
                }
            },
        };
        (v, w)
    });
    Ok(WeightVector::from_pairs(weights))
}

#[derive(Clone, Debug, PartialEq)]
pub enum SetSpec {
    /// `random:SIZE:SEED`, a seeded subset of `F_q^*`.
    Random { size: usize, seed: u64 },
    /// `subspace-critical:L:M`, the critical set of two linear subspaces.
    SubspaceCritical { l: SubspaceBasis, m: SubspaceBasis },
    /// `subspace:[e;...]`, the members of a linear subspace.
    Subspace(SubspaceBasis),
    /// `literal:e;e;...`.
    Literal(Vec<FieldElement>),
}

fn parse_basis(ctx: &FieldCtx, s: &str) -> Result<SubspaceBasis, HarnessError> {
    let s = s.trim();
    let literal = if s.starts_with("basis=") { s.to_string() } else { format!("basis={s}") };
    Ok(AffineSubspace::parse(ctx, &literal)?.directions().clone())
}

impl SetSpec {
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self, HarnessError> {
        let bad = || HarnessError::Config(format!("unrecognised set spec {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "random" => {
                let (size, seed) = rest.split_once(':').ok_or_else(bad)?;
                Ok(SetSpec::Random { size: size.parse().map_err(|_| bad())?, seed: seed.parse().map_err(|_| bad())? })
            }
            "subspace-critical" => {
                // Bases are bracketed, so split after the first `]`.
                let close = rest.find(']').ok_or_else(bad)?;
                let (l, m) = rest.split_at(close + 1);
                let m = m.strip_prefix(':').ok_or_else(bad)?;
                Ok(SetSpec::SubspaceCritical { l: parse_basis(ctx, l)?, m: parse_basis(ctx, m)? })
            }
            "subspace" => Ok(SetSpec::Subspace(parse_basis(ctx, rest)?)),
            "literal" => Ok(SetSpec::Literal(normalize_set(parse_element_list(ctx, rest)?))),
            _ => Err(bad()),
        }
    }

    pub fn to_literal(&self, ctx: &FieldCtx) -> String {
        use ksum_core::subspace::element_literal;
        match self {
            SetSpec::Random { size, seed } => format!("random:{size}:{seed}"),
            SetSpec::SubspaceCritical { l, m } => format!("subspace-critical:{}:{}", l.to_literal(), m.to_literal()),
            SetSpec::Subspace(b) => format!("subspace:{}", b.to_literal()),
            SetSpec::Literal(s) => {
                let parts: Vec<String> = s.iter().map(|&x| element_literal(ctx, x)).collect();
                format!("literal:{}", parts.join(";"))
            }
        }
    }

    pub fn build(&self, ctx: &FieldCtx) -> Result<Vec<FieldElement>, HarnessError> {
        match self {
            SetSpec::Random { size, seed } => random_set(ctx, *size, true, *seed),
            SetSpec::SubspaceCritical { l, m } => Ok(critical_set(ctx, l, m)?.elements),
            SetSpec::Subspace(b) => Ok(b.members(ctx)?),
            SetSpec::Literal(s) => Ok(s.clone()),
        }
    }
}
