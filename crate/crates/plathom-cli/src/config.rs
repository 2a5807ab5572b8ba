//! `plathom.conf`: optional `key = value` lines mirroring the long flags.

use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub window_margin: Option<i64>,
    pub format: Option<String>,
    pub jobs: Option<usize>,
    pub degree_bound: Option<usize>,
    pub no_cache: Option<bool>,
}

fn value<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> Result<T, CliError> {
    v.parse().map_err(|_| CliError::Config(format!("line {line}: bad value {v:?} for {key}")))
}

impl FileConfig {
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut c = FileConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", i + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "window-margin" => c.window_margin = Some(value(k, v, i + 1)?),
                "format" => c.format = Some(v.to_string()),
                "jobs" => c.jobs = Some(value(k, v, i + 1)?),
                "degree-bound" => c.degree_bound = Some(value(k, v, i + 1)?),
                "no-cache" => c.no_cache = Some(value(k, v, i + 1)?),
                _ => return Err(CliError::Config(format!("line {}: unknown key {k:?}", i + 1))),
            }
        }
        Ok(c)
    }

    /// A missing file is an empty configuration.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        match std::fs::read_to_string(path) {
            Ok(text) => Self::parse(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::default()),
            Err(e) => Err(CliError::Io(format!("{}: {e}", path.display()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let c = FileConfig::parse("# defaults\nwindow-margin = 2\n\nformat=json-like\nno-cache = true\n").unwrap();
        assert_eq!(c.window_margin, Some(2));
        assert_eq!(c.format.as_deref(), Some("json-like"));
        assert_eq!(c.no_cache, Some(true));
        assert_eq!(c.jobs, None);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(FileConfig::parse("colour = red").is_err());
        assert!(FileConfig::parse("jobs = many").is_err());
        assert!(FileConfig::parse("jobs").is_err());
    }
}
