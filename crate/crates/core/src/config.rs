//! Scenario documents: a TOML tree with dotted sections `profile.*`,
//! `run.*`, `state.*`, `grid.*` and `output.*`, parsed strictly.

use std::collections::BTreeMap;
use std::path::PathBuf;

use toml::Value;

use crate::error::{Error, Result};
use crate::states::CoherentLabel;
use crate::tomography::{PhaseSpaceGridSpec, QuadratureGridSpec, WignerQuadrature};
use crate::trajectory::{FrequencyProfile, ProfileShape, MAX_STEP};

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub profile: FrequencyProfile,
    pub t_max: f64,
    pub step: f64,
    /// Permits `step > MAX_STEP`; only useful to demonstrate integration failure.
    pub allow_coarse_step: bool,
    pub alpha: CoherentLabel,
    pub phase_grid: Option<PhaseSpaceGridSpec>,
    pub x_grid: Option<QuadratureGridSpec>,
    pub wigner_quadrature: Option<WignerQuadrature>,
    pub output: Option<PathBuf>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            profile: FrequencyProfile::constant(1.0).expect("unit profile"),
            t_max: 20.0,
            step: 1e-3,
            allow_coarse_step: false,
            alpha: CoherentLabel::from_parts(1.0, 0.0).expect("finite alpha"),
            phase_grid: None,
            x_grid: None,
            wigner_quadrature: None,
            output: None,
        }
    }
}

/// The document equivalent to [`ScenarioConfig::default`], used when no
/// scenario file is given.
pub const DEFAULT_SCENARIO: &str = "\
[profile]
kind = \"constant\"
omega0 = 1.0

[run]
t_max = 20.0
step = 1e-3

[state]
alpha_re = 1.0
alpha_im = 0.0
";

/// Parses and validates a scenario document.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    parse_config_with_overrides(text, &[])
}

/// As [`parse_config`], with `key=value` overrides applied on top of the
/// document. Override values are TOML literals; anything that does not
/// parse as one is taken as a bare string.
pub fn parse_config_with_overrides(text: &str, overrides: &[String]) -> Result<ScenarioConfig> {
    let table: toml::Table = toml::from_str(text).map_err(|e| Error::Config {
        key: "<document>".into(),
        reason: e.to_string(),
    })?;
    let mut flat = BTreeMap::new();
    flatten("", &table, &mut flat);
    for item in overrides {
        let (key, value) = parse_override(item)?;
        flat.insert(key, value);
    }
    build(Fields { map: flat })
}

fn flatten(prefix: &str, table: &toml::Table, out: &mut BTreeMap<String, Value>) {
    for (k, v) in table {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Table(inner) => flatten(&key, inner, out),
            other => {
                out.insert(key, other.clone());
            }
        }
    }
}

fn parse_override(item: &str) -> Result<(String, Value)> {
    let (key, raw) = item.split_once('=').ok_or_else(|| Error::Config {
        key: item.into(),
        reason: "override must have the form key=value".into(),
    })?;
    let key = key.trim().to_string();
    if key.is_empty() {
        return Err(Error::Config {
            key: item.into(),
            reason: "override key is empty".into(),
        });
    }
    let raw = raw.trim();
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()));
    Ok((key, value))
}

struct Fields {
    map: BTreeMap<String, Value>,
}

fn config_err(key: &str, reason: impl Into<String>) -> Error {
    Error::Config {
        key: key.into(),
        reason: reason.into(),
    }
}

impl Fields {
    fn take(&mut self, key: &str) -> Option<Value> {
        self.map.remove(key)
    }

    fn f64_opt(&mut self, key: &str) -> Result<Option<f64>> {
        match self.take(key) {
            None => Ok(None),
            Some(v) => {
                let x = match v {
                    Value::Float(f) => f,
                    Value::Integer(i) => i as f64,
                    other => {
                        return Err(config_err(key, format!("expected a number, got {other}")))
                    }
                };
                if !x.is_finite() {
                    return Err(config_err(key, format!("must be finite, got {x}")));
                }
                Ok(Some(x))
            }
        }
    }

    fn f64_req(&mut self, key: &str) -> Result<f64> {
        self.f64_opt(key)?
            .ok_or_else(|| config_err(key, "required key is missing"))
    }

    fn usize_opt(&mut self, key: &str) -> Result<Option<usize>> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Integer(i)) if i >= 0 => Ok(Some(i as usize)),
            Some(other) => Err(config_err(
                key,
                format!("expected a non-negative integer, got {other}"),
            )),
        }
    }

    fn bool_opt(&mut self, key: &str) -> Result<Option<bool>> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::Boolean(b)) => Ok(Some(b)),
            Some(other) => Err(config_err(
                key,
                format!("expected true or false, got {other}"),
            )),
        }
    }

    fn str_opt(&mut self, key: &str) -> Result<Option<String>> {
        match self.take(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(other) => Err(config_err(key, format!("expected a string, got {other}"))),
        }
    }

    fn f64_list(&mut self, key: &str) -> Result<Vec<f64>> {
        match self.take(key) {
            None => Err(config_err(key, "required key is missing")),
            Some(Value::Array(items)) => items
                .into_iter()
                .map(|v| match v {
                    Value::Float(f) if f.is_finite() => Ok(f),
                    Value::Integer(i) => Ok(i as f64),
                    other => Err(config_err(
                        key,
                        format!("expected finite numbers, got {other}"),
                    )),
                })
                .collect(),
            Some(other) => Err(config_err(
                key,
                format!("expected an array of numbers, got {other}"),
            )),
        }
    }
}

fn build(mut fields: Fields) -> Result<ScenarioConfig> {
    let profile = build_profile(&mut fields)?;

    let t_max = fields.f64_req("run.t_max")?;
    if !(t_max > 0.0) {
        return Err(config_err(
            "run.t_max",
            format!("must be positive, got {t_max}"),
        ));
    }
    let step = fields.f64_req("run.step")?;
    let allow_coarse_step = fields.bool_opt("run.allow_coarse_step")?.unwrap_or(false);
    if !(step > 0.0) || (step > MAX_STEP && !allow_coarse_step) {
        return Err(config_err(
            "run.step",
            format!("must lie in (0, {MAX_STEP}], got {step}"),
        ));
    }

    let alpha_re = fields.f64_req("state.alpha_re")?;
    let alpha_im = fields.f64_req("state.alpha_im")?;
    let alpha = CoherentLabel::from_parts(alpha_re, alpha_im)
        .map_err(|e| config_err("state.alpha_re", e.to_string()))?;

    let phase_grid = {
        let q_min = fields.f64_opt("grid.q_min")?;
        let q_max = fields.f64_opt("grid.q_max")?;
        let p_min = fields.f64_opt("grid.p_min")?;
        let p_max = fields.f64_opt("grid.p_max")?;
        let n_q = fields.usize_opt("grid.n_q")?;
        let n_p = fields.usize_opt("grid.n_p")?;
        match (q_min, q_max, p_min, p_max, n_q, n_p) {
            (None, None, None, None, None, None) => None,
            (Some(a), Some(b), Some(c), Some(d), Some(n), Some(m)) => Some(
                PhaseSpaceGridSpec::new(a, b, c, d, n, m)
                    .map_err(|e| config_err("grid", e.to_string()))?,
            ),
            _ => {
                return Err(config_err(
                    "grid",
                    "phase-space grid needs all of q_min, q_max, p_min, p_max, n_q, n_p",
                ))
            }
        }
    };

    let x_grid = {
        let x_min = fields.f64_opt("grid.x_min")?;
        let x_max = fields.f64_opt("grid.x_max")?;
        let n_x = fields.usize_opt("grid.n_x")?;
        match (x_min, x_max, n_x) {
            (None, None, None) => None,
            (Some(a), Some(b), Some(n)) => Some(
                QuadratureGridSpec::new(a, b, n)
                    .map_err(|e| config_err("grid.x_min", e.to_string()))?,
            ),
            _ => {
                return Err(config_err(
                    "grid",
                    "quadrature grid needs all of x_min, x_max, n_x",
                ))
            }
        }
    };

    let wigner_quadrature = match (fields.f64_opt("grid.u_max")?, fields.usize_opt("grid.n_u")?) {
        (None, None) => None,
        (Some(u_max), Some(n_u)) => {
            if !(u_max > 0.0) {
                return Err(config_err(
                    "grid.u_max",
                    format!("must be positive, got {u_max}"),
                ));
            }
            if n_u < 3 {
                return Err(config_err(
                    "grid.n_u",
                    format!("must be at least 3, got {n_u}"),
                ));
            }
            Some(WignerQuadrature { u_max, n_u })
        }
        _ => {
            return Err(config_err(
                "grid",
                "Wigner quadrature needs both u_max and n_u",
            ))
        }
    };

    let output = fields.str_opt("output.path")?.map(PathBuf::from);

    if let Some(key) = fields.map.keys().next() {
        return Err(config_err(key, "unknown key"));
    }

    Ok(ScenarioConfig {
        profile,
        t_max,
        step,
        allow_coarse_step,
        alpha,
        phase_grid,
        x_grid,
        wigner_quadrature,
        output,
    })
}

fn build_profile(fields: &mut Fields) -> Result<FrequencyProfile> {
    let kind = fields
        .str_opt("profile.kind")?
        .ok_or_else(|| config_err("profile.kind", "required key is missing"))?;
    let allow = fields
        .bool_opt("profile.allow_nonunit_omega0")?
        .unwrap_or(false);

    let shape = match kind.as_str() {
        "constant" => ProfileShape::Constant {
            omega0: fields.f64_req("profile.omega0")?,
        },
        "sinusoidal" => {
            let omega0 = fields.f64_req("profile.omega0")?;
            let kappa = fields.f64_req("profile.kappa")?;
            let gamma = fields.f64_req("profile.gamma")?;
            if !(kappa.abs() < 1.0) {
                return Err(config_err(
                    "profile.kappa",
                    format!("|kappa| < 1 violated, got {kappa}"),
                ));
            }
            ProfileShape::Sinusoidal {
                omega0,
                kappa,
                gamma,
            }
        }
        "piecewise" | "tabulated" => {
            let times = fields.f64_list("profile.times")?;
            let omegas = fields.f64_list("profile.omegas")?;
            if times.first() != Some(&0.0) {
                return Err(config_err("profile.times", "must start at 0"));
            }
            if let Some(w) = times.windows(2).find(|w| !(w[1] > w[0])) {
                return Err(config_err(
                    "profile.times",
                    format!("must be strictly increasing, got {} after {}", w[1], w[0]),
                ));
            }
            if times.len() != omegas.len() {
                return Err(config_err(
                    "profile.omegas",
                    format!("expected {} frequencies, got {}", times.len(), omegas.len()),
                ));
            }
            if kind == "piecewise" {
                ProfileShape::PiecewiseConstant { times, omegas }
            } else {
                ProfileShape::Tabulated { times, omegas }
            }
        }
        other => {
            return Err(config_err(
                "profile.kind",
                format!("expected constant, piecewise, sinusoidal or tabulated, got {other:?}"),
            ))
        }
    };
    FrequencyProfile::new(shape, allow).map_err(|e| config_err("profile", e.to_string()))
}
