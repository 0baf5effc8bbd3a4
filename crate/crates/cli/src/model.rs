//! Resolved evaluation inputs shared by the point, sweep and figure
//! commands: a concrete field state, channel settings, and an atomic
//! preparation, plus the pipeline call that turns them into a report row.

use anyhow::{anyhow, bail, Result};
use entransfer::measures::{report, EntanglementReport};
use entransfer::states::{
    self, gaussian_t_state, gaussian_t_state_at_cutoff, gsd_state, mixed_ghz_w, t_state_params,
    GsdCoefficients, GsdForm, ThreeModeDensity, MODE1_CAP,
};
use entransfer::transfer::{
    atomic_density_general, atomic_density_ground, inject, AtomicPreparation, Level,
};
use entransfer::{Error, C64};

/// A fully resolved field-state request.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Vacuum,
    /// `sqrt(alpha_sq)|000> + sqrt(1-alpha_sq)|111>`.
    Ghz {
        alpha_sq: f64,
    },
    /// `(|001> + |010> + |100>)/sqrt(3)`.
    W,
    /// Five-term qubit-like expansion with real coefficients (normalized on
    /// construction).
    Gsd {
        form: GsdForm,
        coeffs: [f64; 5],
    },
    /// `p |GHZ><GHZ| + (1-p) |W><W|`.
    Mixed {
        p: f64,
    },
    /// Gaussian three-mode state from the squared couplings.
    TState {
        gamma1_sq: f64,
        omega_sq: f64,
    },
}

impl StateSpec {
    /// Family tag as used on the command line and in CSV cells.
    pub fn family(&self) -> &'static str {
        match self {
            StateSpec::Vacuum => "vacuum",
            StateSpec::Ghz { .. } => "ghz",
            StateSpec::W => "w",
            StateSpec::Gsd {
                form: GsdForm::Standard,
                ..
            } => "gsd",
            StateSpec::Gsd {
                form: GsdForm::SymSingle,
                ..
            } => "gsd-sym1",
            StateSpec::Gsd {
                form: GsdForm::SymDouble,
                ..
            } => "gsd-sym2",
            StateSpec::Mixed { .. } => "mixed",
            StateSpec::TState { .. } => "tstate",
        }
    }

    /// Builds the field state. Gaussian states that cannot reach the tail
    /// tolerance under the photon cap fall back to the capped truncation,
    /// leaving the deficit visible in `trace_residual`.
    pub fn build(&self, opts: &GaussianOptions) -> Result<ThreeModeDensity> {
        let state = match self {
            StateSpec::Vacuum => {
                states::pure_state_density(&[([0, 0, 0], C64::new(1.0, 0.0))]).expect("vacuum ket")
            }
            StateSpec::Ghz { alpha_sq } => {
                if !(0.0..=1.0).contains(alpha_sq) {
                    bail!("field alpha-sq: value {alpha_sq} outside [0, 1]");
                }
                states::ghz_like(
                    C64::new(alpha_sq.sqrt(), 0.0),
                    C64::new((1.0 - alpha_sq).sqrt(), 0.0),
                )
                .map_err(|e| anyhow!("field alpha-sq: {e}"))?
            }
            StateSpec::W => states::w_state(),
            StateSpec::Gsd { form, coeffs } => {
                let c = GsdCoefficients::from_real(*form, *coeffs)
                    .map_err(|e| anyhow!("field coeffs: {e}"))?;
                gsd_state(&c)
            }
            StateSpec::Mixed { p } => mixed_ghz_w(*p).map_err(|e| anyhow!("field p: {e}"))?,
            StateSpec::TState {
                gamma1_sq,
                omega_sq,
            } => {
                let params = t_state_params(*gamma1_sq, *omega_sq)
                    .map_err(|e| anyhow!("field gamma1sq/omegasq: {e}"))?;
                match gaussian_t_state(&params, opts.tail_tolerance) {
                    Ok(state) => {
                        if opts.renormalize {
                            state.renormalized()
                        } else {
                            state
                        }
                    }
                    Err(Error::CutoffCapExceeded { .. }) => {
                        gaussian_t_state_at_cutoff(&params, MODE1_CAP, opts.renormalize)
                    }
                    Err(e) => bail!("field tail-tolerance: {e}"),
                }
            }
        };
        Ok(state)
    }

    /// `(n2, n3)` mean photon numbers for Gaussian states, `None` otherwise.
    pub fn photon_numbers(&self) -> Option<(f64, f64)> {
        match self {
            StateSpec::TState {
                gamma1_sq,
                omega_sq,
            } => {
                let p = t_state_params(*gamma1_sq, *omega_sq).ok()?;
                Some((p.n2, p.n3))
            }
            _ => None,
        }
    }
}

/// Truncation controls for Gaussian states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianOptions {
    pub tail_tolerance: f64,
    pub renormalize: bool,
}

impl Default for GaussianOptions {
    fn default() -> Self {
        Self {
            tail_tolerance: 1e-8,
            renormalize: false,
        }
    }
}

/// Parses a preparation pattern such as `ggg` or `geg` into basis levels.
pub fn parse_prep(pattern: &str) -> Result<AtomicPreparation> {
    let chars: Vec<char> = pattern.chars().collect();
    if chars.len() != 3 {
        bail!("prep: pattern '{pattern}' must have exactly three of 'g'/'e'");
    }
    let mut levels = [Level::Ground; 3];
    for (i, ch) in chars.iter().enumerate() {
        levels[i] = match ch {
            'g' => Level::Ground,
            'e' => Level::Excited,
            other => bail!("prep: unknown level '{other}' in pattern '{pattern}'"),
        };
    }
    Ok(AtomicPreparation::from_levels(levels))
}

/// One grid point ready for evaluation.
#[derive(Debug, Clone)]
pub struct PointSpec {
    pub state: StateSpec,
    pub transmittance: f64,
    pub g_tau: f64,
    pub prep_pattern: String,
    pub gaussian: GaussianOptions,
}

impl PointSpec {
    pub fn evaluate(&self) -> Result<EntanglementReport> {
        let field = self.state.build(&self.gaussian)?;
        evaluate_with_field(&field, self)
    }
}

/// Evaluates one point against an already-built field state (so sweeps can
/// reuse the state across grid points that share it).
pub fn evaluate_with_field(
    field: &ThreeModeDensity,
    point: &PointSpec,
) -> Result<EntanglementReport> {
    let cavity_owned;
    let cavity = if point.transmittance == 1.0 {
        field
    } else {
        cavity_owned = inject(field, point.transmittance).map_err(|e| anyhow!("T: {e}"))?;
        &cavity_owned
    };
    let prep = parse_prep(&point.prep_pattern)?;
    let rho = if prep.is_ground() {
        atomic_density_ground(cavity, point.g_tau)
    } else {
        atomic_density_general(cavity, &prep, point.g_tau)
    };
    report(&rho, cavity.trace_residual()).map_err(|e| anyhow!("measures: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prep_parsing() {
        assert!(parse_prep("ggg").unwrap().is_ground());
        assert!(!parse_prep("geg").unwrap().is_ground());
        assert!(parse_prep("gg").is_err());
        assert!(parse_prep("gxg").is_err());
    }

    #[test]
    fn vacuum_point() {
        let point = PointSpec {
            state: StateSpec::Vacuum,
            transmittance: 0.3,
            g_tau: 2.2,
            prep_pattern: "ggg".into(),
            gaussian: GaussianOptions::default(),
        };
        let r = point.evaluate().unwrap();
        assert_eq!(r.tripartite_negativity, 0.0);
        assert!((r.purity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn capped_gaussian_falls_back_with_residual() {
        let point = PointSpec {
            state: StateSpec::TState {
                gamma1_sq: 2.0,
                omega_sq: 0.0,
            },
            transmittance: 1.0,
            g_tau: 0.4,
            prep_pattern: "ggg".into(),
            gaussian: GaussianOptions::default(),
        };
        let r = point.evaluate().unwrap();
        assert!(r.trace_residual > 0.0);
    }
}
