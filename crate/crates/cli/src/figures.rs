//! Preset parameter grids for the canonical figure datasets (ids 2 through 12).
//!
//! Axis ranges that the figure captions pin down are used verbatim; the few
//! unstated extents (the coupling ranges of the Gaussian-state surfaces) use
//! visually plausible values and are documented in each preset description.

use std::f64::consts::PI;
use std::sync::Arc;

use anyhow::{bail, Result};

use crate::model::{GaussianOptions, PointSpec, StateSpec};
use crate::sweep::{
    no_derived, tstate_derived, tstate_derived_columns, Axis, AxisValue, SweepPlan,
};
use entransfer::states::GsdForm;

/// Default interaction-time step, fine enough to resolve every oscillation.
const GTAU_STEP: f64 = PI / 60.0;
/// Default 2-D surface resolution.
const SURFACE_PRIMARY: usize = 61;
const SURFACE_SECONDARY: usize = 51;

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    (0..count).map(|i| start + i as f64 * step).collect()
}

fn stepped(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| start + i as f64 * step).collect()
}

fn number_axis(name: &str, values: &[f64], selects_state: bool) -> Axis {
    Axis {
        name: name.into(),
        values: values.iter().map(|x| AxisValue::Number(*x)).collect(),
        selects_state,
    }
}

fn label_axis(name: &str, labels: &[&str], selects_state: bool) -> Axis {
    Axis {
        name: name.into(),
        values: labels
            .iter()
            .map(|l| AxisValue::Label((*l).into()))
            .collect(),
        selects_state,
    }
}

/// A figure preset: the resolved sweep plus a short description of the grid
/// and any assumed ranges.
pub struct FigurePreset {
    pub id: u8,
    pub description: &'static str,
    pub plan: SweepPlan,
}

/// Builds the preset for one figure id (2 through 12).
pub fn preset(id: u8) -> Result<FigurePreset> {
    let gaussian = GaussianOptions::default();
    let (description, plan): (&'static str, SweepPlan) = match id {
        2 => {
            let gtaus = stepped(0.0, 3.0 * PI, GTAU_STEP);
            let (derived_columns, derived) = no_derived();
            (
                "uniform standard-form qubit-like state, T = 1, gtau in [0, 3pi]",
                SweepPlan {
                    axes: vec![number_axis("gtau", &gtaus, false)],
                    builder: Arc::new(move |idx| PointSpec {
                        state: StateSpec::Gsd {
                            form: GsdForm::Standard,
                            coeffs: [1.0; 5],
                        },
                        transmittance: 1.0,
                        g_tau: idx[0] as f64 * GTAU_STEP,
                        prep_pattern: "ggg".into(),
                        gaussian,
                    }),
                    derived_columns,
                    derived,
                },
            )
        }
        3 => {
            let alphas = linspace(0.0, 1.0, SURFACE_SECONDARY);
            let gtaus = linspace(0.0, 3.0 * PI, SURFACE_PRIMARY);
            let (derived_columns, derived) = no_derived();
            let alphas_b = alphas.clone();
            let gtaus_b = gtaus.clone();
            (
                "W-like family (a2 = a5 = 0, equal split of the rest) over alpha_sq in \
                 [0, 1] x gtau in [0, 3pi], T = 1",
                SweepPlan {
                    axes: vec![
                        number_axis("alpha_sq", &alphas, true),
                        number_axis("gtau", &gtaus, false),
                    ],
                    builder: Arc::new(move |idx| {
                        let alpha_sq = alphas_b[idx[0]];
                        let side = ((1.0 - alpha_sq) / 2.0).sqrt();
                        PointSpec {
                            state: StateSpec::Gsd {
                                form: GsdForm::Standard,
                                coeffs: [alpha_sq.sqrt(), 0.0, side, side, 0.0],
                            },
                            transmittance: 1.0,
                            g_tau: gtaus_b[idx[1]],
                            prep_pattern: "ggg".into(),
                            gaussian,
                        }
                    }),
                    derived_columns,
                    derived,
                },
            )
        }
        4 => {
            let ts = [1.0, 0.8, 0.6, 0.4];
            let gtaus = stepped(0.0, 2.0 * PI, GTAU_STEP);
            let gtaus_b = gtaus.clone();
            let (derived_columns, derived) = no_derived();
            (
                "balanced GHZ state under mirror loss, T in {1, 0.8, 0.6, 0.4}, gtau in [0, 2pi]",
                SweepPlan {
                    axes: vec![
                        number_axis("T", &ts, false),
                        number_axis("gtau", &gtaus, false),
                    ],
                    builder: Arc::new(move |idx| PointSpec {
                        state: StateSpec::Ghz { alpha_sq: 0.5 },
                        transmittance: [1.0, 0.8, 0.6, 0.4][idx[0]],
                        g_tau: gtaus_b[idx[1]],
                        prep_pattern: "ggg".into(),
                        gaussian,
                    }),
                    derived_columns,
                    derived,
                },
            )
        }
        5 => {
            let gtaus = stepped(0.0, 3.0 * PI, GTAU_STEP);
            let gtaus_b = gtaus.clone();
            let (derived_columns, derived) = no_derived();
            (
                "uniform coefficients on the three five-term forms, T = 1, gtau in [0, 3pi]",
                SweepPlan {
                    axes: vec![
                        label_axis("form", &["gsd", "gsd-sym1", "gsd-sym2"], true),
                        number_axis("gtau", &gtaus, false),
                    ],
                    builder: Arc::new(move |idx| {
                        let form =
                            [GsdForm::Standard, GsdForm::SymSingle, GsdForm::SymDouble][idx[0]];
                        PointSpec {
                            state: StateSpec::Gsd {
                                form,
                                coeffs: [1.0; 5],
                            },
                            transmittance: 1.0,
                            g_tau: gtaus_b[idx[1]],
                            prep_pattern: "ggg".into(),
                            gaussian,
                        }
                    }),
                    derived_columns,
                    derived,
                },
            )
        }
        6 => {
            let ps = linspace(0.0, 1.0, SURFACE_SECONDARY);
            let gtaus = linspace(0.0, 3.0 * PI, SURFACE_PRIMARY);
            let (ps_b, gtaus_b) = (ps.clone(), gtaus.clone());
            let (derived_columns, derived) = no_derived();
            (
                "GHZ/W mixture over p in [0, 1] x gtau in [0, 3pi], T = 1",
                SweepPlan {
                    axes: vec![
                        number_axis("p", &ps, true),
                        number_axis("gtau", &gtaus, false),
                    ],
                    builder: Arc::new(move |idx| PointSpec {
                        state: StateSpec::Mixed { p: ps_b[idx[0]] },
                        transmittance: 1.0,
                        g_tau: gtaus_b[idx[1]],
                        prep_pattern: "ggg".into(),
                        gaussian,
                    }),
                    derived_columns,
                    derived,
                },
            )
        }
        7 => {
            let g1s = linspace(0.0, 2.0, SURFACE_SECONDARY);
            let gtaus = linspace(0.0, 3.0 * PI, SURFACE_PRIMARY);
            let (g1_b, gtaus_b) = (g1s.clone(), gtaus.clone());
            (
                "Gaussian state with equal couplings (omega_sq = 0) over gamma1_sq in \
                 [0, 2] (assumed extent) x gtau in [0, 3pi], T = 1",
                SweepPlan {
                    axes: vec![
                        number_axis("gamma1_sq", &g1s, true),
                        number_axis("gtau", &gtaus, false),
                    ],
                    builder: Arc::new(move |idx| PointSpec {
                        state: StateSpec::TState {
                            gamma1_sq: g1_b[idx[0]],
                            omega_sq: 0.0,
                        },
                        transmittance: 1.0,
                        g_tau: gtaus_b[idx[1]],
                        prep_pattern: "ggg".into(),
                        gaussian,
                    }),
                    derived_columns: tstate_derived_columns(),
                    derived: Arc::new(tstate_derived),
                },
            )
        }
        8 => {
            let o2s = linspace(0.0, 20.0, SURFACE_SECONDARY);
            let gtaus = linspace(0.0, 3.0 * PI, SURFACE_PRIMARY);
            let (o2_b, gtaus_b) = (o2s.clone(), gtaus.clone());
            (
                "Gaussian state at gamma1_sq = 0.6 over omega_sq in [0, 20] (assumed \
                 extent) x gtau in [0, 3pi], T = 1",
                SweepPlan {
                    axes: vec![
                        number_axis("omega_sq", &o2s, true),
                        number_axis("gtau", &gtaus, false),
                    ],
                    builder: Arc::new(move |idx| PointSpec {
                        state: StateSpec::TState {
                            gamma1_sq: 0.6,
                            omega_sq: o2_b[idx[0]],
                        },
                        transmittance: 1.0,
                        g_tau: gtaus_b[idx[1]],
                        prep_pattern: "ggg".into(),
                        gaussian,
                    }),
                    derived_columns: tstate_derived_columns(),
                    derived: Arc::new(tstate_derived),
                },
            )
        }
        9 | 10 => {
            let g1s = linspace(0.05, 2.0, SURFACE_PRIMARY);
            let o2s = linspace(0.0, 20.0, SURFACE_SECONDARY);
            let (g1_b, o2_b) = (g1s.clone(), o2s.clone());
            (
                "Gaussian state at gtau = pi/2 over gamma1_sq in [0.05, 2] x omega_sq in \
                 [0, 20] (assumed extents); pair negativities are in the standard columns",
                SweepPlan {
                    axes: vec![
                        number_axis("gamma1_sq", &g1s, true),
                        number_axis("omega_sq", &o2s, true),
                    ],
                    builder: Arc::new(move |idx| PointSpec {
                        state: StateSpec::TState {
                            gamma1_sq: g1_b[idx[0]],
                            omega_sq: o2_b[idx[1]],
                        },
                        transmittance: 1.0,
                        g_tau: std::f64::consts::FRAC_PI_2,
                        prep_pattern: "ggg".into(),
                        gaussian,
                    }),
                    derived_columns: tstate_derived_columns(),
                    derived: Arc::new(tstate_derived),
                },
            )
        }
        11 => {
            let gtaus = stepped(0.0, 3.0 * PI, GTAU_STEP);
            let gtaus_b = gtaus.clone();
            let (derived_columns, derived) = no_derived();
            (
                "uniform standard-form state under the four basis preparations, T = 1, \
                 gtau in [0, 3pi]",
                SweepPlan {
                    axes: vec![
                        label_axis("prep", &["ggg", "geg", "ege", "eee"], false),
                        number_axis("gtau", &gtaus, false),
                    ],
                    builder: Arc::new(move |idx| PointSpec {
                        state: StateSpec::Gsd {
                            form: GsdForm::Standard,
                            coeffs: [1.0; 5],
                        },
                        transmittance: 1.0,
                        g_tau: gtaus_b[idx[1]],
                        prep_pattern: ["ggg", "geg", "ege", "eee"][idx[0]].into(),
                        gaussian,
                    }),
                    derived_columns,
                    derived,
                },
            )
        }
        12 => {
            let gtaus = stepped(0.0, 3.0 * PI, GTAU_STEP);
            let gtaus_b = gtaus.clone();
            (
                "Gaussian state at gamma1_sq = 0.6, omega_sq = 0 under the four basis \
                 preparations, T = 1, gtau in [0, 3pi]",
                SweepPlan {
                    axes: vec![
                        label_axis("prep", &["ggg", "geg", "ege", "eee"], false),
                        number_axis("gtau", &gtaus, false),
                    ],
                    builder: Arc::new(move |idx| PointSpec {
                        state: StateSpec::TState {
                            gamma1_sq: 0.6,
                            omega_sq: 0.0,
                        },
                        transmittance: 1.0,
                        g_tau: gtaus_b[idx[1]],
                        prep_pattern: ["ggg", "geg", "ege", "eee"][idx[0]].into(),
                        gaussian,
                    }),
                    derived_columns: tstate_derived_columns(),
                    derived: Arc::new(tstate_derived),
                },
            )
        }
        other => bail!("unknown figure id {other} (expected 2 through 12)"),
    };
    Ok(FigurePreset {
        id,
        description,
        plan,
    })
}
