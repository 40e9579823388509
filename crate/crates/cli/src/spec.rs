//! Run descriptions shared by the `run` flags and sweep config blocks.

use std::f64::consts::TAU;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qrl_core::{AlgorithmParams, BasisBit, Channel, EnergyBasis, EnsembleConfigF64, NoiseKind};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Noise {
    #[default]
    None,
    Pdn,
    Adn,
}

impl FromStr for Noise {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Noise::None),
            "pdn" => Ok(Noise::Pdn),
            "adn" => Ok(Noise::Adn),
            other => Err(format!(
                "unknown noise kind `{other}` (expected none, pdn or adn)"
            )),
        }
    }
}

impl fmt::Display for Noise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Noise::None => "none",
            Noise::Pdn => "pdn",
            Noise::Adn => "adn",
        })
    }
}

/// Evolution time τ̃; accepts `2pi` for the degenerate time.
pub fn parse_ttau(s: &str) -> Result<f64, String> {
    let v = if s.trim() == "2pi" {
        TAU
    } else {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("ttau: `{s}` is not a number"))?
    };
    if !(v.is_finite() && v > 0.0) {
        return Err(format!("ttau must be finite and > 0, got {s}"));
    }
    Ok(v)
}

/// Decoherence time T̃_D; `inf` selects noiseless evolution.
pub fn parse_tdec(s: &str) -> Result<f64, String> {
    let v = match s.trim() {
        "inf" | "infinity" => f64::INFINITY,
        t => t
            .parse::<f64>()
            .map_err(|_| format!("tdec: `{s}` is not a number or `inf`"))?,
    };
    if v.is_nan() || v <= 0.0 {
        return Err(format!("tdec must be > 0 or `inf`, got {s}"));
    }
    Ok(v)
}

pub fn parse_reward(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("reward: `{s}` is not a number"))?;
    if !(v > 0.0 && v < 1.0) {
        return Err(format!("reward rate must be in (0, 1), got {s}"));
    }
    Ok(v)
}

pub fn parse_punish(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("punish: `{s}` is not a number"))?;
    if !(v > 1.0 && v.is_finite()) {
        return Err(format!("punishment rate must be finite and > 1, got {s}"));
    }
    Ok(v)
}

pub fn parse_positive_count(s: &str) -> Result<usize, String> {
    let v: usize = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if v == 0 {
        return Err("count must be at least 1".into());
    }
    Ok(v)
}

pub fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("`{other}` is not a boolean")),
    }
}

/// One ensemble run plus where to write its output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub noise: Noise,
    pub ttau: f64,
    pub tdec: f64,
    pub reward: f64,
    pub punish: f64,
    pub iters: usize,
    pub realizations: usize,
    pub seed: u64,
    pub dual_basis: bool,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            noise: Noise::None,
            ttau: 1.0,
            tdec: f64::INFINITY,
            reward: qrl_core::agent::DEFAULT_REWARD,
            punish: qrl_core::agent::DEFAULT_PUNISH,
            iters: qrl_core::agent::DEFAULT_ITERATIONS,
            realizations: qrl_core::ensemble::DEFAULT_REALIZATIONS,
            seed: DEFAULT_SEED,
            dual_basis: false,
            out: None,
            svg: None,
        }
    }
}

impl RunSpec {
    /// Cross-field checks not covered by the per-value parsers.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.noise == Noise::None && self.tdec.is_finite() {
            return Err(CliError::Usage(format!(
                "tdec = {} requires noise pdn or adn (noise none is the tdec = inf case)",
                self.tdec
            )));
        }
        self.to_config().map(|_| ())
    }

    pub fn channel_kind(&self) -> NoiseKind {
        match (self.noise, self.tdec.is_finite()) {
            (_, false) | (Noise::None, _) => NoiseKind::Noiseless,
            (Noise::Pdn, true) => NoiseKind::PhaseDamping,
            (Noise::Adn, true) => NoiseKind::AmplitudeDamping,
        }
    }

    pub fn to_config(&self) -> Result<EnsembleConfigF64, CliError> {
        let usage = |e: qrl_core::Error| CliError::Usage(e.to_string());
        let channel = Channel::new(
            self.channel_kind(),
            self.ttau,
            self.tdec,
            EnergyBasis::standard(),
        )
        .map_err(usage)?;
        let params = AlgorithmParams::new(self.reward, self.punish, self.iters, BasisBit::Zero)
            .map_err(usage)?;
        EnsembleConfigF64::new(
            channel,
            params,
            self.realizations,
            self.seed,
            self.dual_basis,
        )
        .map_err(usage)
    }

    /// Legend label used in plots.
    pub fn label(&self) -> String {
        match self.channel_kind() {
            NoiseKind::Noiseless => format!("none ttau={} tdec=inf", fmt_float(self.ttau)),
            _ => format!(
                "{} ttau={} tdec={}",
                self.noise,
                fmt_float(self.ttau),
                fmt_float(self.tdec)
            ),
        }
    }
}

pub(crate) fn fmt_float(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else if v == TAU {
        "2pi".to_string()
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_parsers() {
        assert_eq!(parse_ttau("2pi").unwrap(), TAU);
        assert_eq!(parse_ttau("6.5").unwrap(), 6.5);
        assert!(parse_ttau("0").is_err());
        assert!(parse_ttau("-1").is_err());
        assert!(parse_ttau("abc").is_err());
        assert_eq!(parse_tdec("inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_tdec("10").unwrap(), 10.0);
        assert!(parse_tdec("0").is_err());
        assert!(parse_reward("1.5").is_err());
        assert!(parse_reward("1").is_err());
        assert_eq!(parse_reward("0.8").unwrap(), 0.8);
        assert!(parse_punish("1").is_err());
        assert!(parse_positive_count("0").is_err());
        assert!(parse_bool("maybe").is_err());
    }

    #[test]
    fn channel_kind_mapping() {
        let mut spec = RunSpec::default();
        assert_eq!(spec.channel_kind(), NoiseKind::Noiseless);
        spec.noise = Noise::Adn;
        assert_eq!(spec.channel_kind(), NoiseKind::Noiseless);
        spec.tdec = 1.0;
        assert_eq!(spec.channel_kind(), NoiseKind::AmplitudeDamping);
        spec.noise = Noise::None;
        assert!(spec.validate().is_err());
    }
}
