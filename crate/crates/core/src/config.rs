//! Line-oriented `key = value` settings.

use std::path::Path;

use crate::coefficients::{CoefRing, Generators};
use crate::error::{Error, Result};
use crate::presentation::{Engine, EngineConfig};

/// Environment variable naming a config file.
pub const CONFIG_ENV: &str = "BORDCALC_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub max_degree: i64,
    pub fuel: u64,
    pub slack_cap: u32,
    pub window_height: u32,
    pub coef_max_degree: u32,
    pub coef_generators: Generators,
}

impl Default for Config {
    fn default() -> Self {
        let engine = EngineConfig::default();
        let ring = CoefRing::default();
        Self {
            max_degree: 6,
            fuel: engine.fuel,
            slack_cap: engine.slack_cap,
            window_height: engine.window_height,
            coef_max_degree: ring.max_degree(),
            coef_generators: Generators::Auto,
        }
    }
}

fn number<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| {
        Error::Config(format!(
            "line {line}: `{key}` expects an integer, got `{value}`"
        ))
    })
}

impl Config {
    /// Parse config text; `#` starts a comment, later keys override earlier ones.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {line}: expected `key = value`"
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "max_degree" => cfg.max_degree = number(line, key, value)?,
                "fuel" => cfg.fuel = number(line, key, value)?,
                "slack" | "slack_cap" => cfg.slack_cap = number(line, key, value)?,
                "window" | "window_height" => cfg.window_height = number(line, key, value)?,
                "coef.max_degree" => cfg.coef_max_degree = number(line, key, value)?,
                "coef.generators" => {
                    cfg.coef_generators = if value == "auto" {
                        Generators::Auto
                    } else {
                        Generators::Explicit(
                            value
                                .split(',')
                                .map(|v| number(line, key, v.trim()))
                                .collect::<Result<_>>()?,
                        )
                    }
                }
                _ => return Err(Error::Config(format!("line {line}: unknown key `{key}`"))),
            }
        }
        cfg.ring()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Explicit path if given, else the file named by `BORDCALC_CONFIG`, else defaults.
    pub fn resolve(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }

    pub fn ring(&self) -> Result<CoefRing> {
        CoefRing::new(self.coef_max_degree, self.coef_generators.clone())
    }

    pub fn engine(&self) -> Result<Engine> {
        Ok(Engine::new(
            EngineConfig {
                fuel: self.fuel,
                slack_cap: self.slack_cap,
                window_height: self.window_height,
            },
            self.ring()?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let cfg = Config::parse(
            "# sweep settings\nmax_degree = 8\nfuel=5000\nslack = 2 # fewer\ncoef.max_degree = 12\ncoef.generators = 2, 4, 5\n",
        )
        .unwrap();
        assert_eq!(cfg.max_degree, 8);
        assert_eq!(cfg.fuel, 5000);
        assert_eq!(cfg.slack_cap, 2);
        assert_eq!(cfg.coef_max_degree, 12);
        assert_eq!(cfg.coef_generators, Generators::Explicit(vec![2, 4, 5]));
        assert_eq!(cfg.engine().unwrap().config.fuel, 5000);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Config::parse("fuel").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("fuel = lots").is_err());
        assert!(Config::parse("coef.generators = 3").is_err());
        assert!(Config::parse("coef.max_degree = 200").is_err());
        assert_eq!(Config::parse("").unwrap(), Config::default());
    }
}
