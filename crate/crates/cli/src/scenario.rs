//! Scenario files: TOML with a few sections, weights given as integer
//! coefficient lists over fundamental weights.

use std::path::{Path, PathBuf};

use holo24::affine::{HVector, ProductAlgebra, WeightFilter};
use holo24::orbifold::{OrbifoldScenario, SemisimpleShape};
use holo24::rational::{parse_q, Q};
use holo24::rootsys::SimpleType;
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {msg}")]
    Parse { path: PathBuf, msg: String },
}

/// How the twisted sector and the seeds are obtained.
#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// From affine modules of the ambient algebra.
    #[default]
    Affine,
    /// From the `A_4^6` Niemeier lattice.
    Lattice,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: String,
    ambient: String,
    #[serde(default = "one")]
    h_scale: String,
    h: Vec<Vec<i64>>,
    #[serde(default)]
    model: Model,
    #[serde(default)]
    assumptions: Vec<String>,
    #[serde(default)]
    notes: Vec<String>,
    expect: RawExpect,
    spectrum: Option<RawSpectrum>,
    #[serde(default)]
    seeds: RawSeeds,
    twisted: Option<RawTwisted>,
}

fn one() -> String {
    "1".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpect {
    hh: String,
    fixed: String,
    dim_v1: u64,
    dim_half: u64,
    dim_tilde1: i64,
    dim_g2: i64,
    spectrum_rows: Option<usize>,
    result: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    max_weight: Option<String>,
    weights: Option<Vec<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeeds {
    #[serde(default)]
    fixed: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTwisted {
    #[serde(default = "one")]
    scale: String,
    base: Vec<Vec<Vec<i64>>>,
    fixed_roots: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    negatives: bool,
    expect: String,
}

#[derive(Clone, Debug)]
pub struct TwistedSpec {
    pub base: Vec<HVector>,
    pub fixed_roots: Vec<HVector>,
    pub negatives: bool,
    pub expect: (SimpleType, u32),
}

#[derive(Clone, Debug)]
pub struct ScenarioFile {
    pub path: PathBuf,
    pub scenario: OrbifoldScenario,
    pub model: Model,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
    pub hh: Q,
    pub dim_v1: u64,
    pub dim_half: u64,
    pub dim_tilde1: i64,
    pub dim_g2: i64,
    /// Expected row count and weight filter of the integral spectrum
    /// table; absent when the ambient modules do not describe `V`.
    pub spectrum: Option<(usize, WeightFilter)>,
    pub fixed_seeds: Vec<(SimpleType, u32)>,
    pub twisted: Option<TwistedSpec>,
}

/// Parses `D5:3`.
pub fn parse_ideal(s: &str) -> Result<(SimpleType, u32), String> {
    let (t, k) = s.split_once(':').ok_or_else(|| format!("expected TYPE:LEVEL, got {s:?}"))?;
    let t: SimpleType = t.trim().parse().map_err(|e| format!("{e}"))?;
    let k: u32 = k.trim().parse().map_err(|_| format!("bad level in {s:?}"))?;
    Ok((t, k))
}

fn q_field(s: &str, what: &str) -> Result<Q, String> {
    parse_q(s).map_err(|e| format!("{what}: {e}"))
}

impl ScenarioFile {
    pub fn load(path: &Path) -> Result<ScenarioFile, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        ScenarioFile::parse(path, &text).map_err(|msg| LoadError::Parse {
            path: path.to_path_buf(),
            msg,
        })
    }

    pub fn parse(path: &Path, text: &str) -> Result<ScenarioFile, String> {
        let raw: RawFile = toml::from_str(text).map_err(|e| e.message().to_string())?;
        let ambient: ProductAlgebra = raw.ambient.parse().map_err(|e| format!("ambient: {e}"))?;
        let scale = q_field(&raw.h_scale, "h_scale")?;
        let h = HVector::from_scaled(&scale, &raw.h);
        let fixed: SemisimpleShape = raw.expect.fixed.parse().map_err(|e| format!("expect.fixed: {e}"))?;
        let result: SemisimpleShape = raw.expect.result.parse().map_err(|e| format!("expect.result: {e}"))?;
        let scenario =
            OrbifoldScenario::new(&raw.name, ambient.clone(), h, fixed, result).map_err(|e| e.to_string())?;
        let spectrum = match (raw.spectrum, raw.expect.spectrum_rows) {
            (None, None) => None,
            (Some(sp), Some(rows)) => {
                let filter = match (&sp.max_weight, &sp.weights) {
                    (Some(m), None) => WeightFilter::AtMost(q_field(m, "spectrum.max_weight")?),
                    (None, Some(ws)) => WeightFilter::OneOf(
                        ws.iter()
                            .map(|w| q_field(w, "spectrum.weights"))
                            .collect::<Result<_, _>>()?,
                    ),
                    _ => return Err("spectrum needs exactly one of max_weight and weights".into()),
                };
                Some((rows, filter))
            }
            _ => return Err("[spectrum] and expect.spectrum_rows must be given together".into()),
        };
        let fixed_seeds = raw.seeds.fixed.iter().map(|s| parse_ideal(s)).collect::<Result<_, _>>()?;
        let twisted = match raw.twisted {
            None => None,
            Some(t) => {
                let s = q_field(&t.scale, "twisted.scale")?;
                let to_h = |v: &Vec<Vec<i64>>| -> Result<HVector, String> {
                    let h = HVector::from_scaled(&s, v);
                    ambient.hh(&h).map_err(|e| format!("twisted vector {h}: {e}"))?;
                    Ok(h)
                };
                Some(TwistedSpec {
                    base: t.base.iter().map(to_h).collect::<Result<_, _>>()?,
                    fixed_roots: t.fixed_roots.iter().map(to_h).collect::<Result<_, _>>()?,
                    negatives: t.negatives,
                    expect: parse_ideal(&t.expect)?,
                })
            }
        };
        Ok(ScenarioFile {
            path: path.to_path_buf(),
            scenario,
            model: raw.model,
            assumptions: raw.assumptions,
            notes: raw.notes,
            hh: q_field(&raw.expect.hh, "expect.hh")?,
            dim_v1: raw.expect.dim_v1,
            dim_half: raw.expect.dim_half,
            dim_tilde1: raw.expect.dim_tilde1,
            dim_g2: raw.expect.dim_g2,
            spectrum,
            fixed_seeds,
            twisted,
        })
    }

    pub fn name(&self) -> &str {
        &self.scenario.name
    }
}

/// Scenario files (`*.toml`) in `dir`, sorted by file name.
pub fn scenario_paths(dir: &Path) -> Result<Vec<PathBuf>, LoadError> {
    let io = |source| LoadError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let p = entry.map_err(io)?.path();
        if p.extension().is_some_and(|e| e == "toml") {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}
