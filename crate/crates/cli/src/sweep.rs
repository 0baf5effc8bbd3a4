//! Sweep execution: cartesian grids over declared axes, a worker pool over
//! field-state groups, and deterministic CSV emission.
//!
//! Rows are written in lexicographic grid order regardless of the
//! parallelism degree, and floats are formatted with 12 significant digits,
//! so identical configurations produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use crate::model::{evaluate_with_field, GaussianOptions, PointSpec, StateSpec};

/// Guard against accidentally exploding grids.
pub const MAX_GRID_POINTS: usize = 10_000_000;

/// Report columns shared by every sweep, in emission order.
pub const REPORT_COLUMNS: [&str; 9] = [
    "purity",
    "neg_a_bc",
    "neg_b_ac",
    "neg_c_ab",
    "tripartite_negativity",
    "neg_ab",
    "neg_ac",
    "neg_bc",
    "trace_residual",
];

/// One swept parameter: a column name and its values, either numeric or
/// categorical labels (preparation patterns, expansion forms).
#[derive(Debug, Clone)]
pub struct Axis {
    pub name: String,
    pub values: Vec<AxisValue>,
    /// Axes flagged `true` select the field state; grid points sharing them
    /// reuse one constructed state.
    pub selects_state: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AxisValue {
    Number(f64),
    Label(String),
}

impl AxisValue {
    fn cell(&self) -> String {
        match self {
            AxisValue::Number(x) => format_float(*x),
            AxisValue::Label(s) => s.clone(),
        }
    }
}

/// Floats carry 12 significant digits with no locale dependence.
pub fn format_float(x: f64) -> String {
    format!("{:.11e}", x)
}

type PointBuilder = dyn Fn(&[usize]) -> PointSpec + Send + Sync;
/// Derived-column evaluator: extra numeric cells for one grid point.
pub type DerivedFn = Arc<dyn Fn(&PointSpec) -> Vec<f64> + Send + Sync>;

/// A fully resolved sweep: axes (slowest first), a builder mapping axis
/// indices to evaluation inputs, and optional derived parameter columns.
pub struct SweepPlan {
    pub axes: Vec<Axis>,
    pub builder: Arc<PointBuilder>,
    /// Names of derived per-point parameter columns (between the axis
    /// columns and the report columns).
    pub derived_columns: Vec<&'static str>,
    /// Derived parameter cells for a point (same length as
    /// `derived_columns`).
    pub derived: DerivedFn,
}

impl std::fmt::Debug for SweepPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SweepPlan")
            .field("axes", &self.axes)
            .field("derived_columns", &self.derived_columns)
            .field("grid_size", &self.grid_size())
            .finish()
    }
}

impl SweepPlan {
    pub fn grid_size(&self) -> usize {
        self.axes.iter().map(|a| a.values.len().max(1)).product()
    }

    fn indices_of(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.axes.len()];
        for (i, axis) in self.axes.iter().enumerate().rev() {
            let len = axis.values.len().max(1);
            idx[i] = flat % len;
            flat /= len;
        }
        idx
    }

    /// The flat indices grouped by shared state-selecting axis values, in
    /// grid order within each group.
    fn state_groups(&self) -> Vec<Vec<usize>> {
        let size = self.grid_size();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut key_of: std::collections::BTreeMap<Vec<usize>, usize> =
            std::collections::BTreeMap::new();
        for flat in 0..size {
            let idx = self.indices_of(flat);
            let key: Vec<usize> = self
                .axes
                .iter()
                .enumerate()
                .filter(|(_, a)| a.selects_state)
                .map(|(i, _)| idx[i])
                .collect();
            let slot = *key_of.entry(key).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[slot].push(flat);
        }
        groups
    }
}

/// Runs the sweep on a pool of `jobs` workers and returns the CSV text.
pub fn run_to_csv(plan: &SweepPlan, jobs: usize) -> Result<String> {
    let size = plan.grid_size();
    if size == 0 {
        bail!("sweep grid is empty");
    }
    if size > MAX_GRID_POINTS {
        bail!("sweep grid has {size} points, above the {MAX_GRID_POINTS} guard");
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("worker pool")?;

    type Row = (usize, Vec<f64>);
    let groups = plan.state_groups();
    let evaluated: Result<Vec<Vec<Row>>> = pool.install(|| {
        groups
            .par_iter()
            .map(|members| {
                let mut rows = Vec::with_capacity(members.len());
                let mut field: Option<(StateSpec, GaussianOptions, _)> = None;
                for &flat in members {
                    let point = (plan.builder)(&plan.indices_of(flat));
                    let rebuild = match &field {
                        Some((spec, opts, _)) => *spec != point.state || *opts != point.gaussian,
                        None => true,
                    };
                    if rebuild {
                        let built = point.state.build(&point.gaussian)?;
                        field = Some((point.state.clone(), point.gaussian, built));
                    }
                    let (_, _, state) = field.as_ref().expect("field built");
                    let report = evaluate_with_field(state, &point)?;
                    let mut cells = Vec::with_capacity(9 + plan.derived_columns.len());
                    cells.extend((plan.derived)(&point));
                    cells.extend([
                        report.purity,
                        report.neg_a_bc,
                        report.neg_b_ac,
                        report.neg_c_ab,
                        report.tripartite_negativity,
                        report.neg_ab,
                        report.neg_ac,
                        report.neg_bc,
                        report.trace_residual,
                    ]);
                    rows.push((flat, cells));
                }
                Ok(rows)
            })
            .collect()
    });
    let mut rows: Vec<Row> = evaluated?.into_iter().flatten().collect();
    rows.sort_by_key(|(flat, _)| *flat);

    let mut out = String::new();
    for axis in &plan.axes {
        write!(out, "{},", axis.name)?;
    }
    for name in &plan.derived_columns {
        write!(out, "{name},")?;
    }
    out.push_str(&REPORT_COLUMNS.join(","));
    out.push('\n');

    for (flat, cells) in &rows {
        let idx = plan.indices_of(*flat);
        for (axis, &i) in plan.axes.iter().zip(&idx) {
            write!(out, "{},", axis.values[i].cell())?;
        }
        let mut first = true;
        for value in cells {
            if !first {
                out.push(',');
            }
            out.push_str(&format_float(*value));
            first = false;
        }
        out.push('\n');
    }
    Ok(out)
}

/// Runs the sweep and writes the CSV to `path`.
pub fn run_to_file(plan: &SweepPlan, jobs: usize, path: &Path) -> Result<()> {
    let csv = run_to_csv(plan, jobs)?;
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Derived photon-statistics columns for Gaussian-state sweeps.
pub fn tstate_derived_columns() -> Vec<&'static str> {
    vec!["n2", "n3", "b000_sq", "b110_sq", "b101_sq", "bstat_sum"]
}

pub fn tstate_derived(point: &PointSpec) -> Vec<f64> {
    match point.state.photon_numbers() {
        Some((n2, n3)) => {
            let base = 1.0 + n2 + n3;
            let b000 = base.recip();
            let b110 = n2 / (base * base);
            let b101 = n3 / (base * base);
            vec![n2, n3, b000, b110, b101, b000 + b110 + b101]
        }
        None => vec![f64::NAN; 6],
    }
}

/// No derived columns.
pub fn no_derived() -> (Vec<&'static str>, DerivedFn) {
    (Vec::new(), Arc::new(|_: &PointSpec| Vec::new()))
}
