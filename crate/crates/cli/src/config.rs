//! Run configuration: a flat `key = value` file overlaid by command-line flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use helixkit_core::{Family, HelixSpec, Interval, MnConstants, Omega, Tolerances};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("missing family (use --family; `helixkit list` shows the choices)")]
    MissingFamily,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} has no parameter `{name}`")]
    UnknownParam { family: Family, name: String },
    #[error("parameter {name}: cannot parse `{value}` ({expected})")]
    BadValue {
        name: String,
        value: String,
        expected: &'static str,
    },
    #[error("unknown tolerance `{0}`")]
    UnknownTolerance(String),
    #[error("samples must be at least 2, got {0}")]
    TooFewSamples(usize),
    #[error("range `{0}`: expected a:b with a < b")]
    BadRange(String),
    #[error("format `{0}`: expected json or csv")]
    BadFormat(String),
    #[error("expected key=value, got `{0}`")]
    BadPair(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(ConfigError::BadFormat(s.to_string())),
        }
    }
}

/// Unvalidated settings, as read from a file or from flags.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub family: Option<String>,
    pub params: Vec<(String, String)>,
    pub samples: Option<String>,
    pub range: Option<String>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub tols: Vec<(String, String)>,
}

impl RawConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw = RawConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::Syntax { line: i + 1 })?;
            let (key, value) = (key.trim(), value.trim().to_string());
            if key.is_empty() {
                return Err(ConfigError::Syntax { line: i + 1 });
            }
            match key {
                "family" => raw.family = Some(value),
                "samples" => raw.samples = Some(value),
                "range" => raw.range = Some(value),
                "format" => raw.format = Some(value),
                "out" => raw.out = Some(PathBuf::from(value)),
                _ => match key.strip_prefix("tol.") {
                    Some(name) => raw.tols.push((name.to_string(), value)),
                    None => raw.params.push((key.to_string(), value)),
                },
            }
        }
        Ok(raw)
    }

    /// Values set in `other` win.
    pub fn overlay(mut self, other: RawConfig) -> Self {
        self.family = other.family.or(self.family);
        self.samples = other.samples.or(self.samples);
        self.range = other.range.or(self.range);
        self.format = other.format.or(self.format);
        self.out = other.out.or(self.out);
        self.params.extend(other.params);
        self.tols.extend(other.tols);
        self
    }
}

pub fn split_pair(s: &str) -> Result<(String, String), ConfigError> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(ConfigError::BadPair(s.to_string())),
    }
}

/// A validated run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub family: Family,
    /// Every parameter of the family, defaults filled in, in schema order.
    pub params: Vec<(&'static str, String)>,
    pub spec: HelixSpec,
    pub demand_lancret: bool,
    pub samples: usize,
    pub range: Option<Interval>,
    pub tolerances: Tolerances,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_raw(raw: RawConfig) -> Result<Self, ConfigError> {
        let name = raw.family.ok_or(ConfigError::MissingFamily)?;
        let family = Family::from_name(&name).ok_or(ConfigError::UnknownFamily(name))?;

        let mut values: BTreeMap<&'static str, String> = family
            .parameters()
            .iter()
            .map(|(k, v)| (*k, v.to_string()))
            .collect();
        for (k, v) in raw.params {
            let slot = family
                .parameters()
                .iter()
                .find(|(name, _)| *name == k)
                .ok_or(ConfigError::UnknownParam { family, name: k })?;
            values.insert(slot.0, v);
        }
        let params: Vec<(&'static str, String)> = family
            .parameters()
            .iter()
            .map(|(k, _)| (*k, values[k].clone()))
            .collect();
        let get = |k: &str| parse_number(k, &values[k]);

        let mut demand_lancret = false;
        let spec = match family {
            Family::EuclideanRotational => HelixSpec::EuclideanRotational {
                r: get("r")?,
                theta: get("theta")?,
            },
            Family::HypDilation => HelixSpec::HypDilation {
                m: get("m")?,
                c: get("c")?,
                theta: get("theta")?,
            },
            Family::HypElliptic => HelixSpec::HypElliptic {
                m: get("m")?,
                c: get("c")?,
                theta: get("theta")?,
            },
            Family::HypParabolic => HelixSpec::HypParabolic {
                x0: get("x0")?,
                y0: get("y0")?,
                c: get("c")?,
                theta: get("theta")?,
            },
            Family::PositionAngle => HelixSpec::PositionAngle {
                r: get("r")?,
                h: get("h")?,
            },
            Family::ConstantAngleMn => {
                demand_lancret = match values["lancret"].as_str() {
                    "1" | "true" | "yes" => true,
                    "0" | "false" | "no" => false,
                    v => {
                        return Err(ConfigError::BadValue {
                            name: "lancret".into(),
                            value: v.into(),
                            expected: "0 or 1",
                        })
                    }
                };
                let constants = match (values["r0"].as_str(), values["z0"].as_str()) {
                    ("canonical", "canonical") => MnConstants::Canonical,
                    ("canonical", _) => {
                        return Err(ConfigError::BadValue {
                            name: "r0".into(),
                            value: "canonical".into(),
                            expected: "a number whenever z0 is given",
                        })
                    }
                    (_, "canonical") => MnConstants::Explicit {
                        r0: get("r0")?,
                        z0: 0.0,
                    },
                    _ => MnConstants::Explicit {
                        r0: get("r0")?,
                        z0: get("z0")?,
                    },
                };
                HelixSpec::ConstantAngleMn {
                    omega: parse_omega(&values["omega"])?,
                    theta: get("theta")?,
                    constants,
                }
            }
        };

        let samples = match raw.samples {
            None => 100,
            Some(s) => s.parse::<usize>().map_err(|_| ConfigError::BadValue {
                name: "samples".into(),
                value: s,
                expected: "a positive integer",
            })?,
        };
        if samples < 2 {
            return Err(ConfigError::TooFewSamples(samples));
        }

        let range = raw.range.map(|r| parse_range(&r)).transpose()?;

        let mut tolerances = Tolerances::default();
        for (k, v) in raw.tols {
            let value = parse_number(&k, &v)?;
            if !tolerances.set(&k, value) {
                return Err(ConfigError::UnknownTolerance(k));
            }
        }

        let format = raw
            .format
            .as_deref()
            .map(Format::parse)
            .transpose()?
            .unwrap_or(Format::Json);

        Ok(RunConfig {
            family,
            params,
            spec,
            demand_lancret,
            samples,
            range,
            tolerances,
            format,
            out: raw.out,
        })
    }
}

/// A real number, or degrees with a `deg:` prefix.
pub fn parse_number(name: &str, value: &str) -> Result<f64, ConfigError> {
    let bad = || ConfigError::BadValue {
        name: name.to_string(),
        value: value.to_string(),
        expected: "a number, optionally prefixed with deg:",
    };
    let (text, scale) = match value.strip_prefix("deg:") {
        Some(rest) => (rest, std::f64::consts::PI / 180.0),
        None => (value, 1.0),
    };
    let v: f64 = text.trim().parse().map_err(|_| bad())?;
    if !v.is_finite() {
        return Err(bad());
    }
    Ok(v * scale)
}

fn parse_range(s: &str) -> Result<Interval, ConfigError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| ConfigError::BadRange(s.to_string()))?;
    let a = parse_number("range", a)?;
    let b = parse_number("range", b)?;
    Interval::new(a, b).map_err(|_| ConfigError::BadRange(s.to_string()))
}

/// `const:w`, `s`, or `linear:a,b` for `ω(s) = a·s + b`.
fn parse_omega(s: &str) -> Result<Omega, ConfigError> {
    let bad = || ConfigError::BadValue {
        name: "omega".into(),
        value: s.into(),
        expected: "const:w, s or linear:a,b",
    };
    if s == "s" {
        return Ok(Omega::Affine {
            slope: 1.0,
            offset: 0.0,
        });
    }
    if let Some(w) = s.strip_prefix("const:") {
        return Ok(Omega::Constant(parse_number("omega", w)?));
    }
    if let Some(ab) = s.strip_prefix("linear:") {
        let (a, b) = ab.split_once(',').ok_or_else(bad)?;
        return Ok(Omega::Affine {
            slope: parse_number("omega", a)?,
            offset: parse_number("omega", b)?,
        });
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(family: &str, params: &[(&str, &str)]) -> RawConfig {
        RawConfig {
            family: Some(family.into()),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            ..Default::default()
        }
    }

    #[test]
    fn file_syntax() {
        let r = RawConfig::parse(
            "# comment\nfamily = hyp-dilation\nc = 2 # trailing\n\ntol.geodesic = 1e-4\n",
        )
        .unwrap();
        assert_eq!(r.family.as_deref(), Some("hyp-dilation"));
        assert_eq!(r.params, vec![("c".to_string(), "2".to_string())]);
        assert_eq!(r.tols, vec![("geodesic".to_string(), "1e-4".to_string())]);
        assert!(matches!(
            RawConfig::parse("oops"),
            Err(ConfigError::Syntax { line: 1 })
        ));
    }

    #[test]
    fn flags_override_file() {
        let file = RawConfig::parse("family = hyp-dilation\nc = 2\nsamples = 10").unwrap();
        let flags = RawConfig {
            params: vec![("c".into(), "3".into())],
            samples: Some("20".into()),
            ..Default::default()
        };
        let cfg = RunConfig::from_raw(file.overlay(flags)).unwrap();
        assert_eq!(cfg.samples, 20);
        assert!(matches!(cfg.spec, HelixSpec::HypDilation { c, .. } if c == 3.0));
    }

    #[test]
    fn degrees_and_defaults() {
        let cfg = RunConfig::from_raw(raw("euclidean-rotational", &[("theta", "deg:30")])).unwrap();
        match cfg.spec {
            HelixSpec::EuclideanRotational { r, theta } => {
                assert_eq!(r, 1.0);
                assert!((theta - std::f64::consts::FRAC_PI_6).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.samples, 100);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            RunConfig::from_raw(raw("hyp-dilation", &[("q", "1")])),
            Err(ConfigError::UnknownParam { .. })
        ));
        assert!(matches!(
            RunConfig::from_raw(raw("nope", &[])),
            Err(ConfigError::UnknownFamily(_))
        ));
        assert!(matches!(
            RunConfig::from_raw(raw("hyp-dilation", &[("c", "abc")])),
            Err(ConfigError::BadValue { .. })
        ));
        let mut r = raw("hyp-dilation", &[]);
        r.samples = Some("1".into());
        assert!(matches!(
            RunConfig::from_raw(r),
            Err(ConfigError::TooFewSamples(1))
        ));
        let mut r = raw("hyp-dilation", &[]);
        r.range = Some("3:1".into());
        assert!(matches!(
            RunConfig::from_raw(r),
            Err(ConfigError::BadRange(_))
        ));
    }

    #[test]
    fn omega_forms() {
        assert!(
            matches!(parse_omega("s"), Ok(Omega::Affine { slope, offset }) if slope == 1.0 && offset == 0.0)
        );
        assert!(matches!(parse_omega("const:0.5"), Ok(Omega::Constant(w)) if w == 0.5));
        assert!(
            matches!(parse_omega("linear:2,1"), Ok(Omega::Affine { slope, offset }) if slope == 2.0 && offset == 1.0)
        );
        assert!(parse_omega("cubic").is_err());
    }
}
