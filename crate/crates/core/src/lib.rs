//! Exact computation of Kloosterman sums and their double sums over affine
//! subspaces of finite fields `F_{p^n}`, with the additive-combinatorics
//! quantities (sumsets, inverse sets, additive energy) used to bound them.
//!
//! Character sums are accumulated as integer histograms over the p-th roots
//! of unity ([`CyclotomicSum`]); complex doubles only appear when a value is
//! compared against a real bound. Exhaustive sweeps run in parallel with the
//! `parallel` feature (on by default) and produce identical results without it.

pub mod additive;
pub mod bounds;
pub mod characters;
pub mod error;
pub mod field;
pub mod kloosterman;
mod linalg;
pub mod par;
mod poly;
pub mod subspace;
pub mod sums;

pub use characters::{char_sum, eval_complex, psi_exponent, AdditiveCharacter, CyclotomicSum};
pub use error::{Error, Result};
pub use field::{make_field, FieldCaps, FieldCtx, FieldElement, FieldParams};
pub use kloosterman::{kloosterman, kloosterman_row, weil_rows_with, weil_scan, KloostermanValue, WeilRow, WeilScan};
pub use par::Exec;
pub use subspace::{orthogonal_complement, span, AffineSubspace, SubspaceBasis};
pub use sums::{double_sum_affine, double_sum_direct, weighted_sum, CriticalSet, WeightVector};

pub use num_complex::Complex64;
