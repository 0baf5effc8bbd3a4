//! Declarative sweep configuration: a TOML file and/or command-line flags,
//! with flags taking precedence, resolved into a [`SweepPlan`].
//!
//! Every sweepable numeric key accepts a single number, an inclusive range
//! `start:stop:step`, or a comma-separated list. `prep` takes one or more
//! three-letter `g`/`e` patterns.
//!
//! ```toml
//! state = "mixed"          # vacuum | ghz | w | gsd | gsd-sym1 | gsd-sym2 | mixed | tstate
//! p = "0:1:0.1"            # family parameter (mixed)
//! # alpha_sq = 0.5         # family parameter (ghz)
//! # coeffs = [1, 1, 1, 1, 1]       # family parameter (gsd forms)
//! # gamma1_sq = 0.6        # family parameters (tstate)
//! # omega_sq = "0:20:0.4"
//! T = 1.0
//! gtau = "0:9.42477796077:0.0523598775598"
//! prep = "ggg"             # or ["ggg", "eee"]
//! tail_tolerance = 1e-8
//! renormalize = false
//! out = "sweep.csv"
//! jobs = 4
//! ```

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use crate::model::{GaussianOptions, PointSpec, StateSpec};
use crate::sweep::{
    no_derived, tstate_derived, tstate_derived_columns, Axis, AxisValue, SweepPlan,
};
use entransfer::states::GsdForm;

/// A number, an inclusive `start:stop:step` range, or an explicit list.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ValueSpec {
    Number(f64),
    Text(String),
    List(Vec<f64>),
}

impl ValueSpec {
    /// Expands to the concrete axis values.
    pub fn resolve(&self, key: &str) -> Result<Vec<f64>> {
        match self {
            ValueSpec::Number(x) => Ok(vec![*x]),
            ValueSpec::List(values) => {
                if values.is_empty() {
                    bail!("{key}: empty value list");
                }
                Ok(values.clone())
            }
            ValueSpec::Text(text) => parse_value_text(key, text),
        }
    }
}

pub fn parse_value_text(key: &str, text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            bail!("{key}: range '{text}' must be start:stop:step");
        }
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| anyhow!("{key}: range '{text}': {e}"))?;
        let (start, stop, step) = (nums[0], nums[1], nums[2]);
        if step <= 0.0 || !step.is_finite() {
            bail!("{key}: range step must be positive, got {step}");
        }
        if stop < start {
            bail!("{key}: range stop {stop} below start {start}");
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|i| start + i as f64 * step).collect())
    } else if text.contains(',') {
        text.split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|e| anyhow!("{key}: list item '{p}': {e}"))
            })
            .collect()
    } else {
        Ok(vec![text
            .parse::<f64>()
            .map_err(|e| anyhow!("{key}: '{text}': {e}"))?])
    }
}

/// One or more preparation patterns.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PrepSpec {
    One(String),
    Many(Vec<String>),
}

impl PrepSpec {
    fn resolve(&self) -> Result<Vec<String>> {
        let patterns = match self {
            PrepSpec::One(s) => s.split(',').map(|p| p.trim().to_string()).collect(),
            PrepSpec::Many(v) => v.clone(),
        };
        if patterns.is_empty() {
            bail!("prep: empty pattern list");
        }
        for p in &patterns {
            crate::model::parse_prep(p)?;
        }
        Ok(patterns)
    }
}

/// The file/flag-level sweep description before resolution.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub state: Option<String>,
    pub alpha_sq: Option<ValueSpec>,
    pub coeffs: Option<[f64; 5]>,
    pub p: Option<ValueSpec>,
    pub gamma1_sq: Option<ValueSpec>,
    pub omega_sq: Option<ValueSpec>,
    #[serde(rename = "T")]
    pub transmittance: Option<ValueSpec>,
    pub gtau: Option<ValueSpec>,
    pub prep: Option<PrepSpec>,
    pub tail_tolerance: Option<f64>,
    pub renormalize: Option<bool>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl SweepConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Overlays `self` (flag values) on top of `base` (file values).
    pub fn overlay(self, base: SweepConfig) -> SweepConfig {
        SweepConfig {
            state: self.state.or(base.state),
            alpha_sq: self.alpha_sq.or(base.alpha_sq),
            coeffs: self.coeffs.or(base.coeffs),
            p: self.p.or(base.p),
            gamma1_sq: self.gamma1_sq.or(base.gamma1_sq),
            omega_sq: self.omega_sq.or(base.omega_sq),
            transmittance: self.transmittance.or(base.transmittance),
            gtau: self.gtau.or(base.gtau),
            prep: self.prep.or(base.prep),
            tail_tolerance: self.tail_tolerance.or(base.tail_tolerance),
            renormalize: self.renormalize.or(base.renormalize),
            out: self.out.or(base.out),
            jobs: self.jobs.or(base.jobs),
        }
    }

    /// Resolves into axes and a point builder.
    pub fn plan(&self) -> Result<SweepPlan> {
        let family = self.state.as_deref().ok_or_missing("state")?;

        let gaussian = GaussianOptions {
            tail_tolerance: self.tail_tolerance.unwrap_or(1e-8),
            renormalize: self.renormalize.unwrap_or(false),
        };

        // family axes (state-selecting)
        let mut axes: Vec<Axis> = Vec::new();
        enum FamilyKind {
            Fixed(StateSpec),
            Ghz(Vec<f64>),
            Mixed(Vec<f64>),
            TState(Vec<f64>, Vec<f64>),
        }
        let kind = match family {
            "vacuum" => FamilyKind::Fixed(StateSpec::Vacuum),
            "w" => FamilyKind::Fixed(StateSpec::W),
            "gsd" | "gsd-sym1" | "gsd-sym2" => {
                let form = match family {
                    "gsd" => GsdForm::Standard,
                    "gsd-sym1" => GsdForm::SymSingle,
                    _ => GsdForm::SymDouble,
                };
                let coeffs = self.coeffs.unwrap_or([1.0; 5]);
                FamilyKind::Fixed(StateSpec::Gsd { form, coeffs })
            }
            "ghz" => {
                let values = match &self.alpha_sq {
                    Some(spec) => spec.resolve("alpha_sq")?,
                    None => vec![0.5],
                };
                FamilyKind::Ghz(values)
            }
            "mixed" => {
                let spec = self
                    .p
                    .as_ref()
                    .ok_or_missing("p (required for state 'mixed')")?;
                FamilyKind::Mixed(spec.resolve("p")?)
            }
            "tstate" => {
                let g1 = self
                    .gamma1_sq
                    .as_ref()
                    .ok_or_missing("gamma1sq (required for state 'tstate')")?
                    .resolve("gamma1sq")?;
                let o2 = self
                    .omega_sq
                    .as_ref()
                    .ok_or_missing("omegasq (required for state 'tstate')")?
                    .resolve("omegasq")?;
                FamilyKind::TState(g1, o2)
            }
            other => bail!(
                "state: unknown family '{other}' (expected vacuum, ghz, w, gsd, gsd-sym1, \
                 gsd-sym2, mixed, tstate)"
            ),
        };

        match &kind {
            FamilyKind::Fixed(_) => {}
            FamilyKind::Ghz(v) => axes.push(Axis {
                name: "alpha_sq".into(),
                values: v.iter().map(|x| AxisValue::Number(*x)).collect(),
                selects_state: true,
            }),
            FamilyKind::Mixed(v) => axes.push(Axis {
                name: "p".into(),
                values: v.iter().map(|x| AxisValue::Number(*x)).collect(),
                selects_state: true,
            }),
            FamilyKind::TState(g1, o2) => {
                axes.push(Axis {
                    name: "gamma1_sq".into(),
                    values: g1.iter().map(|x| AxisValue::Number(*x)).collect(),
                    selects_state: true,
                });
                axes.push(Axis {
                    name: "omega_sq".into(),
                    values: o2.iter().map(|x| AxisValue::Number(*x)).collect(),
                    selects_state: true,
                });
            }
        }

        let t_values = match &self.transmittance {
            Some(spec) => spec.resolve("T")?,
            None => vec![1.0],
        };
        for t in &t_values {
            if !(0.0..=1.0).contains(t) {
                bail!("T: value {t} outside [0, 1]");
            }
        }
        axes.push(Axis {
            name: "T".into(),
            values: t_values.iter().map(|x| AxisValue::Number(*x)).collect(),
            selects_state: false,
        });

        let preps = match &self.prep {
            Some(spec) => spec.resolve()?,
            None => vec!["ggg".to_string()],
        };
        axes.push(Axis {
            name: "prep".into(),
            values: preps.iter().map(|p| AxisValue::Label(p.clone())).collect(),
            selects_state: false,
        });

        let gtau_values = self.gtau.as_ref().ok_or_missing("gtau")?.resolve("gtau")?;
        axes.push(Axis {
            name: "gtau".into(),
            values: gtau_values.iter().map(|x| AxisValue::Number(*x)).collect(),
            selects_state: false,
        });

        // positions: family axes first, then T, prep, gtau
        let n_family = axes.len() - 3;
        type StateOf = Arc<dyn Fn(&[usize]) -> StateSpec + Send + Sync>;
        let state_of: StateOf = match kind {
            FamilyKind::Fixed(spec) => {
                let spec = spec.clone();
                Arc::new(move |_| spec.clone())
            }
            FamilyKind::Ghz(values) => Arc::new(move |idx| StateSpec::Ghz {
                alpha_sq: values[idx[0]],
            }),
            FamilyKind::Mixed(values) => {
                Arc::new(move |idx| StateSpec::Mixed { p: values[idx[0]] })
            }
            FamilyKind::TState(g1, o2) => Arc::new(move |idx| StateSpec::TState {
                gamma1_sq: g1[idx[0]],
                omega_sq: o2[idx[1]],
            }),
        };

        let preps_arc = Arc::new(preps);
        let t_arc = Arc::new(t_values);
        let gtau_arc = Arc::new(gtau_values);
        let builder = {
            let preps = Arc::clone(&preps_arc);
            let ts = Arc::clone(&t_arc);
            let gtaus = Arc::clone(&gtau_arc);
            let state_of = Arc::clone(&state_of);
            Arc::new(move |idx: &[usize]| PointSpec {
                state: state_of(idx),
                transmittance: ts[idx[n_family]],
                prep_pattern: preps[idx[n_family + 1]].clone(),
                g_tau: gtaus[idx[n_family + 2]],
                gaussian,
            })
        };

        let (derived_columns, derived) = if family == "tstate" {
            (
                tstate_derived_columns(),
                Arc::new(tstate_derived) as crate::sweep::DerivedFn,
            )
        } else {
            no_derived()
        };

        Ok(SweepPlan {
            axes,
            builder,
            derived_columns,
            derived,
        })
    }
}

trait OrMissing<T> {
    fn ok_or_missing(self, field: &str) -> Result<T>;
}

impl<T> OrMissing<T> for Option<T> {
    fn ok_or_missing(self, field: &str) -> Result<T> {
        self.ok_or_else(|| anyhow!("missing required field --{field}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_expansion() {
        let v = parse_value_text("p", "0:1:0.25").unwrap();
        assert_eq!(v.len(), 5);
        assert!((v[4] - 1.0).abs() < 1e-12);
        assert!(parse_value_text("p", "1:0:0.5").is_err());
        assert!(parse_value_text("p", "0:1:0").is_err());
        assert_eq!(parse_value_text("p", "0.5").unwrap(), vec![0.5]);
        assert_eq!(parse_value_text("p", "0.1,0.9").unwrap(), vec![0.1, 0.9]);
    }

    #[test]
    fn toml_round_trip() {
        let cfg: SweepConfig = toml::from_str(
            r#"
state = "mixed"
p = "0:1:0.5"
T = 1.0
gtau = [0.0, 1.5707963268]
prep = ["ggg", "eee"]
out = "mixed.csv"
"#,
        )
        .unwrap();
        let plan = cfg.plan().unwrap();
        let names: Vec<&str> = plan.axes.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["p", "T", "prep", "gtau"]);
        assert_eq!(plan.grid_size(), 12); // 3 p x 1 T x 2 prep x 2 gtau
    }

    #[test]
    fn unknown_family_and_missing_fields_are_named() {
        let cfg = SweepConfig {
            state: Some("quux".into()),
            gtau: Some(ValueSpec::Number(0.0)),
            ..Default::default()
        };
        let err = cfg.plan().unwrap_err().to_string();
        assert!(err.contains("quux"));

        let cfg = SweepConfig {
            state: Some("tstate".into()),
            gtau: Some(ValueSpec::Number(0.0)),
            ..Default::default()
        };
        let err = cfg.plan().unwrap_err().to_string();
        assert!(err.contains("gamma1sq"), "{err}");
    }
}
