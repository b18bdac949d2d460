//! Logical flip rates and success probabilities of block codes under the
//! per-position flip rate `f_u` and erasure rate `f_n`.

mod classical;
mod golay;
mod steane;

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

pub use classical::{
    enumerate_logical_rate, enumerate_with_mass, sample_logical_rate, ClassicalCode, PatternModel, SampledRates,
    Symbol, TieSet, MAX_ENUMERATION_LENGTH, MAX_LENGTH,
};
pub use golay::golay_table_rates;
pub use steane::steane_table_rates;

use crate::error::{Error, Result};

/// Logical flip probability per logical bit and probability of not aborting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalRates {
    pub flip: f64,
    pub success: f64,
}

/// When a block with lost positions triggers an abort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbortPolicy {
    /// Abort when more than this many positions are lost.
    MaxLosses(u32),
    Never,
}

impl AbortPolicy {
    pub fn accepts(self, losses: u32) -> bool {
        match self {
            AbortPolicy::MaxLosses(m) => losses <= m,
            AbortPolicy::Never => true,
        }
    }
}

/// No encoding: a lost qubit is fatal.
pub fn unencoded_rates(f_u: f64, f_n: f64) -> LogicalRates {
    LogicalRates {
        flip: f_u,
        success: 1.0 - f_n,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RateModel {
    Unencoded,
    SteaneTable { max_losses: u32 },
    GolayTable,
    /// Exhaustive enumeration over a small code.
    Enumerated(ClassicalCode),
}

/// A code as seen by the planner: block parameters plus its rate function.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    pub name: String,
    pub n: u32,
    pub k: u32,
    pub d: u32,
    pub abort: AbortPolicy,
    pub model: RateModel,
}

impl CodeSpec {
    pub fn unencoded() -> Self {
        CodeSpec {
            name: "none".to_string(),
            n: 1,
            k: 1,
            d: 1,
            abort: AbortPolicy::MaxLosses(0),
            model: RateModel::Unencoded,
        }
    }

    pub fn steane(max_losses: u32) -> Result<Self> {
        if max_losses > 7 {
            return Err(Error::AbortThresholdOutOfRange { n_max: max_losses, n: 7 });
        }
        Ok(CodeSpec {
            name: format!("steane:{max_losses}"),
            n: 7,
            k: 1,
            d: 3,
            abort: AbortPolicy::MaxLosses(max_losses),
            model: RateModel::SteaneTable { max_losses },
        })
    }

    pub fn golay() -> Self {
        CodeSpec {
            name: "golay".to_string(),
            n: 23,
            k: 1,
            d: 7,
            abort: AbortPolicy::Never,
            model: RateModel::GolayTable,
        }
    }

    /// A code whose rates come from exhaustive enumeration.
    pub fn enumerated(name: &str, code: ClassicalCode, abort: AbortPolicy) -> Result<Self> {
        if code.length() > MAX_ENUMERATION_LENGTH {
            return Err(Error::CodeTooLarge(code.length()));
        }
        if let AbortPolicy::MaxLosses(m) = abort {
            if m as usize > code.length() {
                return Err(Error::AbortThresholdOutOfRange {
                    n_max: m,
                    n: code.length() as u32,
                });
            }
        }
        Ok(CodeSpec {
            name: name.to_string(),
            n: code.length() as u32,
            k: code.logical_bits() as u32,
            d: code.min_distance(),
            abort,
            model: RateModel::Enumerated(code),
        })
    }

    pub fn rates(&self, f_u: f64, f_n: f64) -> Result<LogicalRates> {
        for (name, value) in [("f_u", f_u), ("f_n", f_n)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        let r = match &self.model {
            RateModel::Unencoded => unencoded_rates(f_u, f_n),
            RateModel::SteaneTable { max_losses } => steane_table_rates(f_u, f_n, *max_losses)?,
            RateModel::GolayTable => golay_table_rates(f_u, f_n),
            RateModel::Enumerated(code) => enumerate_logical_rate(code, self.abort, f_u, f_n)?,
        };
        // Expanded polynomials can round a hair outside [0, 1] near f = 1.
        Ok(LogicalRates {
            flip: r.flip.clamp(0.0, 1.0),
            success: r.success.clamp(0.0, 1.0),
        })
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for CodeSpec {
    type Err = Error;

    /// Parses `none`, `steane:<n_max>` or `golay`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "none" => Ok(CodeSpec::unencoded()),
            "golay" => Ok(CodeSpec::golay()),
            other => {
                let n_max = other
                    .strip_prefix("steane:")
                    .and_then(|m| m.parse::<u32>().ok())
                    .ok_or_else(|| Error::UnknownCode(other.to_string()))?;
                CodeSpec::steane(n_max)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_selectors() {
        assert_eq!("none".parse::<CodeSpec>().unwrap(), CodeSpec::unencoded());
        assert_eq!("golay".parse::<CodeSpec>().unwrap().n, 23);
        let s: CodeSpec = "steane:3".parse().unwrap();
        assert_eq!(s.abort, AbortPolicy::MaxLosses(3));
        assert_eq!(s.to_string(), "steane:3");
        assert!(matches!("steane:9".parse::<CodeSpec>(), Err(Error::AbortThresholdOutOfRange { .. })));
        assert!(matches!("steane".parse::<CodeSpec>(), Err(Error::UnknownCode(_))));
        assert!(matches!("shor".parse::<CodeSpec>(), Err(Error::UnknownCode(_))));
    }

    #[test]
    fn unencoded_examples() {
        assert_eq!(unencoded_rates(0.0, 0.0), LogicalRates { flip: 0.0, success: 1.0 });
        assert_eq!(unencoded_rates(0.01, 0.0), LogicalRates { flip: 0.01, success: 1.0 });
        assert_eq!(unencoded_rates(0.0, 0.3), LogicalRates { flip: 0.0, success: 0.7 });
    }

    #[test]
    fn enumerated_spec_matches_table() {
        let spec = CodeSpec::enumerated("hamming", ClassicalCode::steane(), AbortPolicy::MaxLosses(2)).unwrap();
        let a = spec.rates(0.05, 0.1).unwrap();
        let b = steane_table_rates(0.05, 0.1, 2).unwrap();
        assert!((a.flip - b.flip).abs() < 1e-12 && (a.success - b.success).abs() < 1e-12);
        assert!(CodeSpec::enumerated("g", ClassicalCode::golay(), AbortPolicy::Never).is_err());
    }
}
