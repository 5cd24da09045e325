use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample(usize),
}

impl FromStr for Mode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "exhaustive" {
            return Ok(Mode::Exhaustive);
        }
        s.strip_prefix("sample:")
            .and_then(|c| c.parse().ok())
            .map(Mode::Sample)
            .ok_or_else(|| HarnessError::Config(format!("mode must be `exhaustive` or `sample:COUNT`, got {s:?}")))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "exhaustive"),
            Mode::Sample(k) => write!(f, "sample:{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WeightScheme {
    Ones,
    RandomPhase,
    RandomComplex,
}

impl WeightScheme {
    pub const ALL: [WeightScheme; 3] = [WeightScheme::Ones, WeightScheme::RandomPhase, WeightScheme::RandomComplex];

    pub fn name(self) -> &'static str {
        match self {
            WeightScheme::Ones => "ones",
            WeightScheme::RandomPhase => "random-phase",
            WeightScheme::RandomComplex => "random-complex",
        }
    }
}

impl FromStr for WeightScheme {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WeightScheme::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown weight scheme {s:?}")))
    }
}

/// Inclusive range of subspace dimensions, written `a` or `a..b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimRange {
    pub lo: u32,
    pub hi: u32,
}

impl DimRange {
    pub fn any() -> Self {
        DimRange { lo: 0, hi: u32::MAX }
    }

    /// Clamped to `0..=n`; empty if the range lies above `n`.
    pub fn within(self, n: u32) -> RangeInclusive<u32> {
        self.lo..=self.hi.min(n)
    }
}

impl FromStr for DimRange {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HarnessError::Config(format!("dimension range must be `a` or `a..b`, got {s:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let d = s.trim().parse().map_err(|_| bad())?;
                (d, d)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        Ok(DimRange { lo, hi })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub p: u64,
    pub n: u32,
    /// `None` selects the check's default.
    pub mode: Option<Mode>,
    pub seed: u64,
    pub dims_l: DimRange,
    pub dims_m: DimRange,
    pub schemes: Vec<WeightScheme>,
    /// Affine translate pairs compared by the reduction check.
    pub translates: usize,
    /// Subspace pairs whose critical sets feed the energy check.
    pub critical_pairs: usize,
}

pub const DEFAULT_SEED: u64 = 20240917;

impl SweepConfig {
    pub fn new(p: u64, n: u32) -> Self {
        SweepConfig {
            p,
            n,
            mode: None,
            seed: DEFAULT_SEED,
            dims_l: DimRange::any(),
            dims_m: DimRange::any(),
            schemes: WeightScheme::ALL.to_vec(),
            translates: 50,
            critical_pairs: 100,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = Some(mode);
        self
    }

    /// Independent ChaCha8 stream per (check, field), so a check draws the
    /// same cases whether it runs alone or inside `verify all`.
    pub fn rng(&self, stream: Stream) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((stream as u64) << 48) | (self.p << 8) | self.n as u64);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    Weil = 1,
    Reduction = 2,
    Thm1 = 3,
    Thm2 = 4,
    Energy = 5,
}

/// Fields covered by `verify all`.
pub const DEFAULT_FIELDS: [(u64, u32); 5] = [(2, 5), (3, 3), (5, 3), (3, 5), (7, 3)];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_modes() {
        assert_eq!("exhaustive".parse::<Mode>().unwrap(), Mode::Exhaustive);
        assert_eq!("sample:12".parse::<Mode>().unwrap(), Mode::Sample(12));
        assert!("sample:".parse::<Mode>().is_err());
        assert!("all".parse::<Mode>().is_err());
        assert_eq!(Mode::Sample(7).to_string(), "sample:7");
    }

    #[test]
    fn parse_dims() {
        assert_eq!("2".parse::<DimRange>().unwrap(), DimRange { lo: 2, hi: 2 });
        assert_eq!("1..3".parse::<DimRange>().unwrap(), DimRange { lo: 1, hi: 3 });
        assert!("3..1".parse::<DimRange>().is_err());
        assert_eq!(DimRange::any().within(5), 0..=5);
    }

    #[test]
    fn schemes_round_trip() {
        for w in WeightScheme::ALL {
            assert_eq!(w.name().parse::<WeightScheme>().unwrap(), w);
        }
    }

    #[test]
    fn streams_differ() {
        use rand::RngCore;
        let c = SweepConfig::new(3, 5);
        assert_ne!(c.rng(Stream::Thm1).next_u64(), c.rng(Stream::Thm2).next_u64());
        assert_eq!(c.rng(Stream::Thm1).next_u64(), c.rng(Stream::Thm1).next_u64());
        assert_ne!(c.rng(Stream::Thm1).next_u64(), SweepConfig::new(7, 3).rng(Stream::Thm1).next_u64());
    }
}
