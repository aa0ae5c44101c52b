use std::time::Duration;

use ghw_core::{EnumerationOptions, DEFAULT_CAP, MAX_DIM};

pub const CAP_ENV: &str = "GHW_MAX_DIM";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub cap: usize,
    /// Wall-clock limit for one enumeration.
    pub budget: Duration,
    /// Worker threads; `None` uses every core.
    pub workers: Option<usize>,
    pub extended: bool,
    /// Suppresses timing and progress output so runs compare byte for byte.
    pub deterministic: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cap: DEFAULT_CAP,
            budget: Duration::from_secs(30 * 60),
            workers: None,
            extended: false,
            deterministic: false,
        }
    }
}

impl Config {
    /// Default configuration with the cap taken from `GHW_MAX_DIM` if set.
    pub fn from_env() -> anyhow::Result<Self> {
        let mut config = Config::default();
        if let Ok(value) = std::env::var(CAP_ENV) {
            config.cap =
                value.trim().parse().map_err(|_| anyhow::anyhow!("{CAP_ENV} must be an integer, got `{value}`"))?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        anyhow::ensure!((2..=MAX_DIM).contains(&self.cap), "cap must lie in 2..={MAX_DIM}");
        anyhow::ensure!(!self.budget.is_zero(), "budget must be positive");
        anyhow::ensure!(self.workers != Some(0), "worker count must be positive");
        Ok(())
    }

    pub fn options(&self) -> EnumerationOptions {
        EnumerationOptions { cap: self.cap, extended: self.extended }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Config::default().validate().is_ok());
        let bad = Config { cap: 1, ..Config::default() };
        assert!(bad.validate().is_err());
        let bad = Config { budget: Duration::ZERO, ..Config::default() };
        assert!(bad.validate().is_err());
        let bad = Config { workers: Some(0), ..Config::default() };
        assert!(bad.validate().is_err());
    }
}
