//! Run configuration merged from flags, environment variables and an
//! optional `key = value` file.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::CliError;
use crate::report::Format;

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Format,
    pub step_cap: Option<usize>,
    pub threads: Option<usize>,
    pub values: BTreeMap<String, String>,
}

impl RunConfig {
    /// Reads a config file. Blank lines and lines starting with `#` are
    /// skipped; every other line must be `key = value`.
    pub fn parse_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
        let mut out = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", n + 1))
            })?;
            let k = k.trim().replace('_', "-");
            if k.is_empty() {
                return Err(CliError::Usage(format!("config line {}: empty key", n + 1)));
            }
            out.insert(k, v.trim().to_string());
        }
        Ok(out)
    }

    pub fn load(
        path: Option<&Path>,
        format: Option<Format>,
        step_cap: Option<usize>,
        threads: Option<usize>,
    ) -> Result<RunConfig, CliError> {
        let values = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
                RunConfig::parse_file(&text)?
            }
            None => BTreeMap::new(),
        };
        let mut config = RunConfig {
            format: Format::Json,
            step_cap: None,
            threads: None,
            values,
        };
        config.format = match format {
            Some(f) => f,
            None => match config.values.get("format") {
                Some(f) => f.parse()?,
                None => Format::Json,
            },
        };
        config.step_cap = step_cap.or(config.get("step-cap")?);
        config.threads = threads.or(config.get("threads")?);
        if config.step_cap == Some(0) || config.threads == Some(0) {
            return Err(CliError::Usage(
                "caps and thread counts must be positive".into(),
            ));
        }
        Ok(config)
    }

    /// A typed value from the config file.
    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("bad value {v:?} for config key {key}"))),
        }
    }

    /// A flag value, falling back to the config file and then `default`.
    pub fn pick<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, CliError> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.get(key)?.unwrap_or(default)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_lines() {
        let v = RunConfig::parse_file("# comment\nformat = csv\n\nstep_cap=500\n").unwrap();
        assert_eq!(v.get("format").map(String::as_str), Some("csv"));
        assert_eq!(v.get("step-cap").map(String::as_str), Some("500"));
        assert!(RunConfig::parse_file("nonsense").is_err());
    }

    #[test]
    fn flags_override_the_file() {
        let mut c = RunConfig::load(None, None, None, None).unwrap();
        c.values.insert("depth".into(), "4".into());
        assert_eq!(c.pick(Some(7usize), "depth", 6).unwrap(), 7);
        assert_eq!(c.pick(None, "depth", 6usize).unwrap(), 4);
        assert_eq!(c.pick(None, "radius", 2usize).unwrap(), 2);
    }
}
