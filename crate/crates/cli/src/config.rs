//! Defaults file: one `key = value` per line, keys named after the flags.
//! `#` starts a comment.

use std::path::Path;

use crate::error::CliError;

pub const CONFIG_ENV: &str = "ZGRADE_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!("unknown output format '{other}' (json or text)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeName {
    Exhaustive,
    Sampled,
    Targeted,
}

impl std::str::FromStr for ModeName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(ModeName::Exhaustive),
            "sampled" => Ok(ModeName::Sampled),
            "targeted" => Ok(ModeName::Targeted),
            other => Err(format!("unknown mode '{other}' (exhaustive, sampled or targeted)")),
        }
    }
}

/// Values read from a defaults file. Unset keys fall back to built-in
/// defaults; flags on the command line win over both.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub gens: Option<u32>,
    pub max_len: Option<usize>,
    pub window: Option<i64>,
    pub count: Option<usize>,
    pub mode: Option<ModeName>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub output: Option<OutputFormat>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = FileConfig::default();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| CliError::Config {
                line: number + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key = value, got '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            fn num<T: std::str::FromStr>(value: &str) -> Result<T, String> {
                value.parse().map_err(|_| format!("'{value}' is not a valid number"))
            }
            match key {
                "gens" => cfg.gens = Some(num(value).map_err(bad)?),
                "max-len" => cfg.max_len = Some(num(value).map_err(bad)?),
                "window" => cfg.window = Some(num(value).map_err(bad)?),
                "count" => cfg.count = Some(num(value).map_err(bad)?),
                "seed" => cfg.seed = Some(num(value).map_err(bad)?),
                "samples" => cfg.samples = Some(num(value).map_err(bad)?),
                "mode" => cfg.mode = Some(value.parse().map_err(bad)?),
                "output" => cfg.output = Some(value.parse().map_err(bad)?),
                other => return Err(bad(format!("unknown key '{other}'"))),
            }
        }
        Ok(cfg)
    }

    /// Reads `explicit`, else the file named by `ZGRADE_CONFIG`, else
    /// nothing.
    pub fn load(explicit: Option<&Path>) -> Result<Self, CliError> {
        let from_env = std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty());
        let path = match (explicit, &from_env) {
            (Some(p), _) => p.to_path_buf(),
            (None, Some(p)) => p.into(),
            (None, None) => return Ok(FileConfig::default()),
        };
        let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        FileConfig::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let cfg = FileConfig::parse("gens = 12\n# comment\nmax-len=4 # trailing\nmode = sampled\noutput=text\n").unwrap();
        assert_eq!(cfg.gens, Some(12));
        assert_eq!(cfg.max_len, Some(4));
        assert_eq!(cfg.mode, Some(ModeName::Sampled));
        assert_eq!(cfg.output, Some(OutputFormat::Text));
        assert_eq!(cfg.seed, None);
    }

    #[test]
    fn reports_line_numbers() {
        match FileConfig::parse("gens = 8\nbogus = 1\n") {
            Err(CliError::Config { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(FileConfig::parse("gens = many").is_err());
        assert!(FileConfig::parse("gens").is_err());
    }
}
