//! Job configuration: a text file of `key = value` lines, `#` comments,
//! rationals written `p/q`.
//!
//! ```text
//! realization = two-point          # or multi-point, or import
//! in_points = 0, 1                 # multi-point only
//! out_points = 2, inf
//! import = genus0.real             # import only, relative to the config file
//! expansion_depth = 8
//! algebra = sl:2                   # or abelian:r
//! level = 1/1
//! weight = 1/1                     # χ_0, fundamental-weight basis
//! lambda_e = 0/1
//! ordering = default               # or a file of `m n +|-` lines
//! range = 5
//! depth = 8
//! k = 3
//! r = 4
//! zero_mode_cap = 2
//! out = tables
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::exact::scalar::parse_scalar;
use crate::exact::{Point, Scalar};
use crate::realization::{import, Realization, RealizationError, RealizationSpec};
use crate::rep::ordering::NormalOrdering;
use crate::suites::SuiteOptions;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("ordering file {path}: {msg}")]
    Ordering { path: PathBuf, msg: String },
    #[error(transparent)]
    Realization(#[from] RealizationError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizationChoice {
    TwoPoint,
    MultiPoint { in_points: Vec<Point>, out_points: Vec<Point> },
    Import(PathBuf),
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub realization: RealizationChoice,
    pub expansion_depth: i64,
    pub options: SuiteOptions,
    pub out: PathBuf,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            realization: RealizationChoice::TwoPoint,
            expansion_depth: 8,
            options: SuiteOptions::default(),
            out: PathBuf::from("tables"),
        }
    }
}

fn read(path: &Path) -> Result<String, ConfigError> {
    fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let base = path.parent().unwrap_or(Path::new("."));
        JobConfig::parse(&read(path)?, base)
    }

    /// Parse config text; relative paths are resolved against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let mut cfg = JobConfig::default();
        let mut kind = "two-point".to_string();
        let (mut ins, mut outs, mut imported) = (None, None, None);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| ConfigError::Parse { line: i + 1, msg };
            let Some((key, value)) = line.split_once('=') else {
                return Err(err("expected `key = value`".into()));
            };
            let (key, value) = (key.trim(), value.trim());
            let int = |v: &str| v.parse::<i64>().map_err(|_| err(format!("`{key}` needs an integer, got `{v}`")));
            let rat = |v: &str| parse_scalar(v).map_err(|e| err(format!("`{key}`: {e}")));
            let points = |v: &str| -> Result<Vec<Point>, ConfigError> {
                v.split(',').map(|p| Point::parse(p.trim()).map_err(|e| err(format!("`{key}`: {e}")))).collect()
            };
            match key {
                "realization" => match value {
                    "two-point" | "multi-point" | "import" => kind = value.to_string(),
                    _ => return Err(err(format!("unknown realization `{value}`"))),
                },
                "in_points" => ins = Some(points(value)?),
                "out_points" => outs = Some(points(value)?),
                "import" => imported = Some(base.join(value)),
                "expansion_depth" => cfg.expansion_depth = int(value)?,
                "algebra" => cfg.options.algebra = value.to_string(),
                "level" => cfg.options.level = rat(value)?,
                "weight" => {
                    cfg.options.chi = Some(value.split(',').map(|v| rat(v.trim())).collect::<Result<Vec<Scalar>, _>>()?)
                }
                "lambda_e" => cfg.options.lambda_e = rat(value)?,
                "ordering" => {
                    cfg.options.ordering = if value == "default" {
                        NormalOrdering::standard()
                    } else {
                        let path = base.join(value);
                        NormalOrdering::parse(&read(&path)?)
                            .map_err(|e| ConfigError::Ordering { path, msg: e.to_string() })?
                    }
                }
                "range" => cfg.options.range = int(value)?,
                "depth" => cfg.options.depth = int(value)?,
                "k" => cfg.options.k = int(value)?,
                "r" => cfg.options.r = int(value)?,
                "zero_mode_cap" => {
                    cfg.options.zero_mode_cap =
                        usize::try_from(int(value)?).map_err(|_| err("`zero_mode_cap` must be nonnegative".into()))?
                }
                "out" => cfg.out = base.join(value),
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        cfg.realization = match kind.as_str() {
            "two-point" => RealizationChoice::TwoPoint,
            "multi-point" => RealizationChoice::MultiPoint {
                in_points: ins.ok_or_else(|| ConfigError::Parse { line: 0, msg: "multi-point needs `in_points`".into() })?,
                out_points: outs
                    .ok_or_else(|| ConfigError::Parse { line: 0, msg: "multi-point needs `out_points`".into() })?,
            },
            _ => RealizationChoice::Import(
                imported.ok_or_else(|| ConfigError::Parse { line: 0, msg: "import needs `import`".into() })?,
            ),
        };
        Ok(cfg)
    }

    pub fn realization(&self) -> Result<Arc<Realization>, ConfigError> {
        let real = match &self.realization {
            RealizationChoice::TwoPoint => Realization::new(RealizationSpec::two_point(self.expansion_depth))?,
            RealizationChoice::MultiPoint { in_points, out_points } => Realization::new(RealizationSpec::multi_point(
                in_points.clone(),
                out_points.clone(),
                self.expansion_depth,
            )?)?,
            RealizationChoice::Import(path) => import::parse(&read(path)?)?,
        };
        Ok(Arc::new(real))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::frac;

    #[test]
    fn parses_keys_and_rationals() {
        let text = "realization = multi-point\nin_points = 0, 1\nout_points = 2, inf\nlevel = 3/2 # comment\nweight = 1/1\nk = 2\n";
        let cfg = JobConfig::parse(text, Path::new(".")).unwrap();
        assert_eq!(cfg.options.level, frac(3, 2));
        assert_eq!(cfg.options.k, 2);
        assert_eq!(
            cfg.realization,
            RealizationChoice::MultiPoint {
                in_points: vec![Point::int(0), Point::int(1)],
                out_points: vec![Point::int(2), Point::Infinity]
            }
        );
        assert_eq!(cfg.realization().unwrap().spec().branches(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        match JobConfig::parse("depth = 4\ncolour = red\n", Path::new(".")) {
            Err(ConfigError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(JobConfig::parse("level = x", Path::new(".")).is_err());
    }

    #[test]
    fn ordering_file_is_read() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("flip.ord"), "0 0 -\n").unwrap();
        let cfg = JobConfig::parse("ordering = flip.ord\n", dir.path()).unwrap();
        assert_eq!(cfg.options.ordering, NormalOrdering::flipped(&[(0, 0)]));
    }
}
