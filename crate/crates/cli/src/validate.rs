//! The full cross-check suite: oracle equivalence between the two channel
//! implementations, channel invariants, closed-form-vs-pipeline grids,
//! frozen regression baselines, and the errata ledger for published formula
//! variants that fail basic invariants.
//!
//! Gating checks must pass; errata entries must *fail* in the documented way
//! (a published defect silently disappearing would mean the corrected forms
//! no longer describe this implementation). Info entries are report-only.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use entransfer::analytic::{
    class_negativity, describe_inputs, ghz_loss_formulas, mixed_formulas,
    mixed_pt_eigenvalues_published, mixed_purity_full_published, t_photon_stats,
    transferred_pure_state, w_like_purity, FormulaCheck, KParity, PureClass, Variant,
};
use entransfer::measures::{
    bipartition_negativity, bipartition_negativity_with_threshold, pair_negativity, report,
};
use entransfer::qmath::{
    hermitian_eigenvalues, partial_transpose, pure_fidelity, purity, Qubit, QubitPair,
    QubitRegisterDensity,
};
use entransfer::states::{
    gaussian_t_state, gaussian_t_state_at_cutoff, ghz_like, ghz_state, gsd_state, mixed_ghz_w,
    mixture, pure_state_density, t_state_params, w_state, GsdCoefficients, GsdForm,
    ThreeModeDensity, MODE1_CAP,
};
use entransfer::transfer::{
    atomic_density_general, atomic_density_ground, inject, AtomicPreparation,
};
use entransfer::C64;

/// Frozen regression baselines, confirmed once against the independent
/// generic-unitary path and locked in.
pub mod baselines {
    /// Tripartite negativity of the uniform standard-form state at the first
    /// transfer peak; equals `(16 sqrt(3) / 125)^(1/3)`.
    pub const UNIFORM_GSD_PEAK_NEGATIVITY: f64 = 0.605234299769161;
    /// The `A` vs rest negativity there, `2 sqrt(3) / 5`.
    pub const UNIFORM_GSD_PEAK_NEG_A: f64 = 0.692820323027551;
    /// Gaussian state at `gamma1_sq = 0.6`, `omega_sq = 0`, `gtau = pi/2`,
    /// tail tolerance 1e-8.
    pub const TSTATE_PEAK_NEGATIVITY: f64 = 0.519913968801285;
    pub const TSTATE_PEAK_PURITY: f64 = 0.767961171141742;
    pub const TSTATE_PEAK_NEG_AB: f64 = 0.060507969546809;
    /// Balanced GHZ under heavy loss, `T = 0.2`, `gtau = 0.3`: a deliberately
    /// tiny negativity that any loosened eigenvalue threshold would zero out.
    pub const GHZ_LOSS_SMALL_NEGATIVITY: f64 = 1.597258680147558e-5;
    /// Uniform standard-form state with the middle atom excited (`geg`) at
    /// the second peak `gtau = 3pi/2`, where the preparation change costs
    /// the least entanglement.
    pub const GEG_SECOND_PEAK_NEGATIVITY: f64 = 0.555169940578726;
    pub const GEG_SECOND_PEAK_PURITY: f64 = 0.939710108432602;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Must pass.
    Gate,
    /// Documents a published-formula defect; the defect must reproduce.
    ExpectedFail,
    /// Report-only.
    Info,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub kind: CheckKind,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn gate(name: &'static str, ok: bool, detail: String) -> Self {
        Self {
            name,
            kind: CheckKind::Gate,
            ok,
            detail,
        }
    }

    fn expected_fail(name: &'static str, reproduced: bool, detail: String) -> Self {
        Self {
            name,
            kind: CheckKind::ExpectedFail,
            ok: reproduced,
            detail,
        }
    }

    fn info(name: &'static str, detail: String) -> Self {
        Self {
            name,
            kind: CheckKind::Info,
            ok: true,
            detail,
        }
    }
}

fn random_qubit_like_ket(rng: &mut StdRng) -> ThreeModeDensity {
    loop {
        let kets: Vec<([u32; 3], C64)> = (0..8)
            .map(|i| {
                (
                    [(i >> 2) & 1, (i >> 1) & 1, i & 1],
                    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        if let Ok(state) = pure_state_density(&kets) {
            return state;
        }
    }
}

fn random_qubit_like_field(rng: &mut StdRng) -> ThreeModeDensity {
    if rng.gen_bool(0.7) {
        random_qubit_like_ket(rng)
    } else {
        let p: f64 = rng.gen_range(0.0..1.0);
        let a = random_qubit_like_ket(rng);
        let b = random_qubit_like_ket(rng);
        mixture(&[(p, &a), (1.0 - p, &b)]).unwrap()
    }
}

/// Max entry-wise deviation between the two channel implementations. The
/// `flip_sign` knob corrupts the closed-form path's coherences so tests can
/// prove the comparison actually detects a broken implementation.
pub fn oracle_difference(cavity: &ThreeModeDensity, g_tau: f64, flip_sign: bool) -> f64 {
    let mut a = atomic_density_ground(cavity, g_tau);
    if flip_sign {
        let mut m = a.matrix().clone();
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    let v = m[(i, j)];
                    m[(i, j)] = C64::new(v.re, -v.im);
                }
            }
        }
        a = QubitRegisterDensity::new(3, m).unwrap();
    }
    let b = atomic_density_general(cavity, &AtomicPreparation::ground(), g_tau);
    a.matrix().max_abs_diff(b.matrix())
}

fn check_oracle_qubit_like() -> Check {
    let mut rng = StdRng::seed_from_u64(0xace_0001);
    let settings = [
        (1.0, 0.31),
        (1.0, FRAC_PI_2),
        (0.8, 1.7),
        (0.55, 2.9),
        (0.25, 4.2),
    ];
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let field = random_qubit_like_field(&mut rng);
        for (t, g_tau) in settings {
            let cavity = inject(&field, t).unwrap();
            worst = worst.max(oracle_difference(&cavity, g_tau, false));
        }
    }
    Check::gate(
        "oracle_equivalence_qubit_like",
        worst <= 1e-12,
        format!("100 random fields x 5 settings, max |delta| = {worst:.3e} (<= 1e-12)"),
    )
}

fn check_oracle_gaussian() -> Check {
    let mut rng = StdRng::seed_from_u64(0xace_0002);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let params = t_state_params(rng.gen_range(0.05..1.0), rng.gen_range(0.0..10.0)).unwrap();
        let field = gaussian_t_state(&params, 1e-8).unwrap();
        worst = worst.max(oracle_difference(&field, rng.gen_range(0.2..4.5), false));
    }
    Check::gate(
        "oracle_equivalence_gaussian",
        worst <= 1e-12,
        format!("10 random truncated states, max |delta| = {worst:.3e} (<= 1e-12)"),
    )
}

fn check_injection_endpoints() -> Check {
    let mut rng = StdRng::seed_from_u64(0xace_0003);
    let mut ok = true;
    let mut detail = String::new();
    for _ in 0..10 {
        let field = random_qubit_like_field(&mut rng);
        let at_unit = inject(&field, 1.0).unwrap();
        if at_unit != field {
            ok = false;
            detail = "T = 1 is not the identity".into();
            break;
        }
        let at_zero = inject(&field, 0.0).unwrap();
        if at_zero.len() != 1 || (at_zero.coeff([0, 0, 0], [0, 0, 0]).re - 1.0).abs() > 1e-12 {
            ok = false;
            detail = "T = 0 does not map to vacuum".into();
            break;
        }
    }
    if ok {
        detail = "T = 1 identity (exact), T = 0 vacuum (<= 1e-12), 10 random fields".into();
    }
    Check::gate("injection_endpoints", ok, detail)
}

fn check_channel_conservation() -> Check {
    let mut rng = StdRng::seed_from_u64(0xace_0004);
    let mut worst_trace = 0.0f64;
    let mut worst_herm = 0.0f64;
    let mut worst_eig = 0.0f64;
    for _ in 0..20 {
        let field = random_qubit_like_field(&mut rng);
        let t = rng.gen_range(0.0..=1.0);
        let cavity = inject(&field, t).unwrap();
        worst_trace = worst_trace.max((cavity.trace() - 1.0).abs());
        worst_herm = worst_herm.max(cavity.hermiticity_error());
        let rho = atomic_density_ground(&cavity, rng.gen_range(0.0..2.0 * PI));
        worst_trace = worst_trace.max((rho.trace() - 1.0).abs());
        worst_herm = worst_herm.max(rho.matrix().hermiticity_error());
        let evals = hermitian_eigenvalues(rho.matrix()).unwrap();
        worst_eig = worst_eig.max(-evals[0]);
    }
    Check::gate(
        "channel_trace_hermiticity_positivity",
        worst_trace <= 1e-12 && worst_herm <= 1e-12 && worst_eig <= 1e-10,
        format!(
            "max |trace - 1| = {worst_trace:.3e}, max asymmetry = {worst_herm:.3e}, \
             min eigenvalue >= -{worst_eig:.3e}"
        ),
    )
}

fn check_periodicity() -> Check {
    let families: Vec<(&str, ThreeModeDensity)> = vec![
        (
            "uniform",
            gsd_state(&GsdCoefficients::uniform(GsdForm::Standard)),
        ),
        ("ghz", ghz_state()),
        ("w", w_state()),
        (
            "sym-single",
            gsd_state(&GsdCoefficients::uniform(GsdForm::SymSingle)),
        ),
        (
            "sym-double",
            gsd_state(&GsdCoefficients::uniform(GsdForm::SymDouble)),
        ),
    ];
    let ground = QubitRegisterDensity::all_ground(3);
    let mut worst_revival = 0.0f64;
    let mut worst_purity = 0.0f64;
    let mut worst_period = 0.0f64;
    for (_, field) in &families {
        for k in 1..=3 {
            let rho = atomic_density_ground(field, k as f64 * PI);
            worst_revival = worst_revival.max(rho.matrix().max_abs_diff(ground.matrix()));
        }
        for k in 0..=6 {
            let rho = atomic_density_ground(field, k as f64 * FRAC_PI_2);
            worst_purity = worst_purity.max((purity(&rho) - 1.0).abs());
        }
        for g_tau in [0.4, 1.3, 2.9] {
            let a = atomic_density_ground(field, g_tau);
            let b = atomic_density_ground(field, g_tau + 2.0 * PI);
            worst_period = worst_period.max(a.matrix().max_abs_diff(b.matrix()));
        }
    }
    Check::gate(
        "periodicity_and_revival",
        worst_revival <= 1e-10 && worst_purity <= 1e-10 && worst_period <= 1e-12,
        format!(
            "ground revival at k*pi <= {worst_revival:.3e}, purity defect at k*pi/2 <= \
             {worst_purity:.3e}, 2pi periodicity <= {worst_period:.3e}"
        ),
    )
}

fn check_mode_atom_covariance() -> Check {
    let mut rng = StdRng::seed_from_u64(0xace_0005);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let field = random_qubit_like_field(&mut rng);
        let g_tau = rng.gen_range(0.2..4.0);
        let t = rng.gen_range(0.3..=1.0);
        let base = atomic_density_ground(&inject(&field, t).unwrap(), g_tau);
        for perm in [[1usize, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0]] {
            let permuted_field = field.permuted_modes(perm);
            let permuted = atomic_density_ground(&inject(&permuted_field, t).unwrap(), g_tau);
            let map = |idx: usize| -> usize {
                let bits = [idx >> 2 & 1, idx >> 1 & 1, idx & 1];
                let mut out = 0;
                for (i, b) in bits.iter().enumerate() {
                    out |= b << (2 - perm[i]);
                }
                out
            };
            for i in 0..8 {
                for j in 0..8 {
                    let d = (permuted.matrix()[(map(i), map(j))] - base.matrix()[(i, j)]).norm();
                    worst = worst.max(d);
                }
            }
        }
    }
    Check::gate(
        "mode_atom_relabeling_covariance",
        worst <= 1e-12,
        format!("max |delta| over 4 permutations x 10 fields = {worst:.3e}"),
    )
}

fn check_peak_state_fidelity() -> Check {
    let mut rng = StdRng::seed_from_u64(0xace_0006);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let amps: [C64; 5] =
            std::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let Ok(coeffs) = GsdCoefficients::new(GsdForm::Standard, amps) else {
            continue;
        };
        let field = gsd_state(&coeffs);
        for (parity, k) in [(KParity::Even, 0u32), (KParity::Odd, 1), (KParity::Even, 2)] {
            let g_tau = (2 * k + 1) as f64 * FRAC_PI_2;
            let rho = atomic_density_ground(&field, g_tau);
            let ket = transferred_pure_state(&coeffs, parity).unwrap();
            let fid = pure_fidelity(&rho, &ket).unwrap();
            worst = worst.max((fid - 1.0).abs());
        }
    }
    Check::gate(
        "peak_pure_state_fidelity",
        worst <= 1e-10,
        format!("max |1 - fidelity| = {worst:.3e} over random coefficients x 3 peaks"),
    )
}

fn class_grid(class: PureClass) -> Vec<GsdCoefficients> {
    let mut out = Vec::new();
    let steps = 5usize;
    for i in 1..steps {
        for j in 1..steps {
            let x = i as f64 / steps as f64;
            let y = j as f64 / steps as f64;
            let amps = match class {
                PureClass::GhzLike => [x, 0.0, 0.0, 0.0, y],
                PureClass::Chain => [x, y, 0.0, 0.0, 0.7],
                PureClass::Star => [x, y, 0.0, 0.4, 0.8],
                PureClass::WLike => [x, 0.0, y, 0.5, 0.0],
            };
            if let Ok(c) = GsdCoefficients::from_real(GsdForm::Standard, amps) {
                out.push(c);
            }
        }
    }
    out
}

fn check_class_formula(name: &'static str, class: PureClass) -> Check {
    let mut worst = 0.0f64;
    let mut count = 0;
    for coeffs in class_grid(class) {
        let closed = class_negativity(class, &coeffs).unwrap();
        let field = gsd_state(&coeffs);
        for k in [0u32, 1] {
            let g_tau = (2 * k + 1) as f64 * FRAC_PI_2;
            let rho = atomic_density_ground(&field, g_tau);
            let numeric = entransfer::measures::tripartite_negativity(&rho).unwrap();
            worst = worst.max((closed - numeric).abs());
            count += 1;
        }
    }
    Check::gate(
        name,
        worst <= 1e-9,
        format!("{count} grid points, max |closed - pipeline| = {worst:.3e} (<= 1e-9)"),
    )
}

fn check_chain_pair_structure() -> Check {
    let mut worst_bc = 0.0f64;
    let mut worst_rest = 0.0f64;
    for coeffs in class_grid(PureClass::Chain) {
        let [a1, a2, _, _, a5] = coeffs.amps().map(|a| a.norm());
        let _ = a1;
        let rho = atomic_density_ground(&gsd_state(&coeffs), FRAC_PI_2);
        let r = report(&rho, 0.0).unwrap();
        worst_bc = worst_bc.max((r.neg_bc - 2.0 * a2 * a5).abs());
        worst_rest = worst_rest.max(r.neg_ab.max(r.neg_ac));
    }
    Check::gate(
        "chain_class_pair_structure",
        worst_bc <= 1e-9 && worst_rest <= 1e-12,
        format!(
            "BC matches twice the coefficient product to {worst_bc:.3e}; AB/AC stay \
             below {worst_rest:.3e}"
        ),
    )
}

fn check_w_like_pairs_entangled() -> Check {
    let mut min_pair = f64::INFINITY;
    for coeffs in class_grid(PureClass::WLike) {
        let rho = atomic_density_ground(&gsd_state(&coeffs), FRAC_PI_2);
        for pair in QubitPair::ALL {
            min_pair = min_pair.min(pair_negativity(&rho, pair).unwrap());
        }
    }
    Check::gate(
        "w_like_class_pairs_entangled",
        min_pair > 0.0,
        format!("smallest pair negativity over the class grid = {min_pair:.3e} (> 0)"),
    )
}

fn check_w_like_purity_grid() -> Check {
    let mut worst = 0.0f64;
    for i in 0..=10 {
        let alpha_sq = i as f64 / 10.0;
        let side = ((1.0 - alpha_sq) / 2.0).sqrt();
        let coeffs =
            GsdCoefficients::from_real(GsdForm::Standard, [alpha_sq.sqrt(), 0.0, side, side, 0.0])
                .unwrap();
        let field = gsd_state(&coeffs);
        for step in 0..=180 {
            let g_tau = step as f64 * (PI / 60.0);
            let closed = w_like_purity(g_tau, alpha_sq, Variant::Corrected).unwrap();
            let rho = atomic_density_ground(&field, g_tau);
            worst = worst.max((closed - purity(&rho)).abs());
        }
    }
    Check::gate(
        "w_like_purity_corrected",
        worst <= 1e-9,
        format!("11 x 181 grid, max |closed - pipeline| = {worst:.3e} (<= 1e-9)"),
    )
}

fn ghz_loss_grid() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for ti in 0..=4 {
        let t = 0.2 + ti as f64 * 0.2;
        for step in 0..=120 {
            out.push((t, step as f64 * (2.0 * PI / 120.0)));
        }
    }
    out
}

fn check_ghz_loss_grids() -> Vec<Check> {
    let alpha = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let omega = alpha;
    let field = ghz_like(alpha, omega).unwrap();
    let mut worst_elem = 0.0f64;
    let mut worst_purity = 0.0f64;
    let mut worst_neg = 0.0f64;
    let mut min_above_half = f64::INFINITY;
    let mut last_t = -1.0;
    let mut cavity = field.clone();
    for (t, g_tau) in ghz_loss_grid() {
        if t != last_t {
            cavity = inject(&field, t).unwrap();
            last_t = t;
        }
        let rho = atomic_density_ground(&cavity, g_tau);
        let f = ghz_loss_formulas(g_tau, t, alpha, omega, Variant::Corrected).unwrap();
        worst_elem = worst_elem.max(f.elements.max_abs_diff(rho.matrix()));
        worst_purity = worst_purity.max((f.purity - purity(&rho)).abs());
        let want = (-2.0 * f.lambda_minus.min(0.0)) + 0.0;
        let got = bipartition_negativity(&rho, Qubit::A).unwrap();
        worst_neg = worst_neg.max((want - got).abs());
        if t > 0.5 && (g_tau - FRAC_PI_2).abs() < 1e-9 {
            min_above_half =
                min_above_half.min(entransfer::measures::tripartite_negativity(&rho).unwrap());
        }
    }
    vec![
        Check::gate(
            "loss_elements_corrected",
            worst_elem <= 1e-9,
            format!("max entry-wise |closed - pipeline| = {worst_elem:.3e} (<= 1e-9)"),
        ),
        Check::gate(
            "loss_purity_closed_form",
            worst_purity <= 1e-9,
            format!("max |closed - pipeline| = {worst_purity:.3e} (<= 1e-9)"),
        ),
        Check::gate(
            "loss_eigenvalue_negativity_corrected",
            worst_neg <= 1e-9,
            format!("max |(-2 min(lambda, 0)) - pipeline| = {worst_neg:.3e} (<= 1e-9)"),
        ),
        Check::gate(
            "loss_transfer_above_half_transmittance",
            min_above_half > 0.0,
            format!(
                "tripartite negativity at the peak stays positive for T > 0.5 (min = \
                 {min_above_half:.3e})"
            ),
        ),
    ]
}

fn check_mixed_grids() -> Vec<Check> {
    let mut worst_elem = 0.0f64;
    let mut worst_trace = 0.0f64;
    let mut worst_peak_purity = 0.0f64;
    let mut worst_peak_neg = 0.0f64;
    let mut worst_brute = 0.0f64;
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let field = mixed_ghz_w(p).unwrap();
        let f_peak = mixed_formulas(FRAC_PI_2, p).unwrap();
        let rho_peak = atomic_density_ground(&field, FRAC_PI_2);
        worst_peak_purity =
            worst_peak_purity.max((f_peak.purity_at_peak - purity(&rho_peak)).abs());
        let numeric = entransfer::measures::tripartite_negativity(&rho_peak).unwrap();
        worst_peak_neg = worst_peak_neg.max((f_peak.negativity_at_peak.max(0.0) - numeric).abs());

        // brute-force PT spectra of the closed-form element matrix
        let closed_rho = QubitRegisterDensity::new(3, f_peak.elements.clone()).unwrap();
        let mut cuts = [0.0f64; 3];
        for (slot, q) in Qubit::ALL.iter().enumerate() {
            let evals =
                hermitian_eigenvalues(&partial_transpose(&closed_rho, *q).unwrap()).unwrap();
            let neg_sum: f64 = evals.iter().copied().filter(|v| *v < -1e-12).sum();
            cuts[slot] = -2.0 * neg_sum;
        }
        let brute = if cuts.iter().any(|n| *n <= 0.0) {
            0.0
        } else {
            (cuts[0] * cuts[1] * cuts[2]).cbrt()
        };
        worst_brute = worst_brute.max((brute - f_peak.negativity_at_peak.max(0.0)).abs());

        for step in 0..=90 {
            let g_tau = step as f64 * (3.0 * PI / 90.0);
            let f = mixed_formulas(g_tau, p).unwrap();
            worst_trace = worst_trace.max((f.elements.trace().re - 1.0).abs());
            let rho = atomic_density_ground(&field, g_tau);
            worst_elem = worst_elem.max(f.elements.max_abs_diff(rho.matrix()));
        }
    }
    vec![
        Check::gate(
            "mixed_elements_closed_form",
            worst_elem <= 1e-9 && worst_trace <= 1e-12,
            format!(
                "max entry-wise |closed - pipeline| = {worst_elem:.3e}; published trace \
                 identity holds to {worst_trace:.3e}"
            ),
        ),
        Check::gate(
            "mixed_peak_purity",
            worst_peak_purity <= 1e-9,
            format!("max |2p^2 - 2p + 1 - pipeline| = {worst_peak_purity:.3e} (<= 1e-9)"),
        ),
        Check::gate(
            "mixed_peak_negativity",
            worst_peak_neg <= 1e-9 && worst_brute <= 1e-9,
            format!(
                "closed form vs pipeline <= {worst_peak_neg:.3e}; vs brute-force \
                 transpose spectra <= {worst_brute:.3e}"
            ),
        ),
    ]
}

fn check_photon_statistics() -> Check {
    let mut worst = 0.0f64;
    for i in 0..=20 {
        for j in 0..=10 {
            let params = t_state_params(i as f64 * 0.1, j as f64 * 2.0).unwrap();
            let stats = t_photon_stats(&params);
            // compare against the constructed state's diagonal
            let state = gaussian_t_state_at_cutoff(&params, 12, false);
            worst = worst
                .max((stats.b000_sq - state.coeff([0, 0, 0], [0, 0, 0]).re).abs())
                .max((stats.b110_sq - state.coeff([1, 1, 0], [1, 1, 0]).re).abs())
                .max((stats.b101_sq - state.coeff([1, 0, 1], [1, 0, 1]).re).abs());
        }
    }
    // stationary point of the single-photon mode-3 weight for equal couplings
    let mut best = (0.0f64, 0.0f64);
    for i in 0..=2000 {
        let g1 = i as f64 * 0.001;
        let stats = t_photon_stats(&t_state_params(g1, 0.0).unwrap());
        if stats.b101_sq > best.1 {
            best = (g1, stats.b101_sq);
        }
    }
    let argmax_ok = (best.0 - 2.0 / 3.0).abs() < 2e-3;
    Check::gate(
        "gaussian_photon_statistics",
        worst <= 1e-12 && argmax_ok,
        format!(
            "formula vs constructed state <= {worst:.3e}; single-photon weight peaks at \
             gamma1_sq = {:.4}",
            best.0
        ),
    )
}

fn check_gaussian_pair_separability() -> Check {
    let grid: Vec<(f64, f64)> = (0..10)
        .flat_map(|i| {
            (0..10).map(move |j| (0.05 + i as f64 * (1.95 / 9.0), j as f64 * (20.0 / 9.0)))
        })
        .collect();
    let worst = grid
        .par_iter()
        .map(|&(g1, o2)| {
            let params = t_state_params(g1, o2).unwrap();
            let field = gaussian_t_state(&params, 1e-8)
                .unwrap_or_else(|_| gaussian_t_state_at_cutoff(&params, MODE1_CAP, false));
            let rho = atomic_density_ground(&field, FRAC_PI_2);
            pair_negativity(&rho, QubitPair::BC).unwrap()
        })
        .reduce(|| 0.0, f64::max);
    Check::gate(
        "gaussian_bc_pair_separability",
        worst <= 1e-10,
        format!("10 x 10 coupling grid at the peak, max BC negativity = {worst:.3e}"),
    )
}

fn check_sym_form_dominates() -> Check {
    let standard = gsd_state(&GsdCoefficients::uniform(GsdForm::Standard));
    let sym = gsd_state(&GsdCoefficients::uniform(GsdForm::SymSingle));
    let r_std = report(&atomic_density_ground(&standard, FRAC_PI_2), 0.0).unwrap();
    let r_sym = report(&atomic_density_ground(&sym, FRAC_PI_2), 0.0).unwrap();
    Check::gate(
        "fully_symmetric_form_dominates",
        r_sym.tripartite_negativity > r_std.tripartite_negativity
            && r_sym.purity >= r_std.purity - 1e-12,
        format!(
            "peak negativity {:.6} (symmetric) vs {:.6} (standard); purity {:.6} vs {:.6}",
            r_sym.tripartite_negativity, r_std.tripartite_negativity, r_sym.purity, r_std.purity
        ),
    )
}

/// Frozen-value regression checks; `threshold` lets the mutation test lower
/// the eigenvalue noise floor and watch the small-negativity baseline drift.
pub fn regression_checks(threshold: f64) -> Vec<FormulaCheck> {
    let mut out = Vec::new();

    let field = gsd_state(&GsdCoefficients::uniform(GsdForm::Standard));
    let rho = atomic_density_ground(&field, FRAC_PI_2);
    let r = report(&rho, 0.0).unwrap();
    out.push(FormulaCheck::new(
        "regression_uniform_peak_negativity",
        Variant::Corrected,
        describe_inputs(&[("gtau", FRAC_PI_2)]),
        baselines::UNIFORM_GSD_PEAK_NEGATIVITY,
        r.tripartite_negativity,
        1e-9,
    ));
    out.push(FormulaCheck::new(
        "regression_uniform_peak_cut_a",
        Variant::Corrected,
        describe_inputs(&[("gtau", FRAC_PI_2)]),
        baselines::UNIFORM_GSD_PEAK_NEG_A,
        r.neg_a_bc,
        1e-9,
    ));

    let params = t_state_params(0.6, 0.0).unwrap();
    let field = gaussian_t_state(&params, 1e-8).unwrap();
    let rho = atomic_density_ground(&field, FRAC_PI_2);
    let r = report(&rho, field.trace_residual()).unwrap();
    out.push(FormulaCheck::new(
        "regression_gaussian_peak_negativity",
        Variant::Corrected,
        describe_inputs(&[("gamma1_sq", 0.6), ("omega_sq", 0.0)]),
        baselines::TSTATE_PEAK_NEGATIVITY,
        r.tripartite_negativity,
        1e-9,
    ));
    out.push(FormulaCheck::new(
        "regression_gaussian_peak_purity",
        Variant::Corrected,
        describe_inputs(&[("gamma1_sq", 0.6), ("omega_sq", 0.0)]),
        baselines::TSTATE_PEAK_PURITY,
        r.purity,
        1e-9,
    ));
    out.push(FormulaCheck::new(
        "regression_gaussian_peak_pair_ab",
        Variant::Corrected,
        describe_inputs(&[("gamma1_sq", 0.6), ("omega_sq", 0.0)]),
        baselines::TSTATE_PEAK_NEG_AB,
        r.neg_ab,
        1e-9,
    ));

    let cavity = inject(&ghz_state(), 0.2).unwrap();
    let rho = atomic_density_ground(&cavity, 0.3);
    let small = bipartition_negativity_with_threshold(&rho, Qubit::A, threshold).unwrap();
    out.push(FormulaCheck::new(
        "regression_loss_small_negativity",
        Variant::Corrected,
        describe_inputs(&[("T", 0.2), ("gtau", 0.3)]),
        baselines::GHZ_LOSS_SMALL_NEGATIVITY,
        small,
        1e-12,
    ));

    let field = gsd_state(&GsdCoefficients::uniform(GsdForm::Standard));
    let prep = AtomicPreparation::from_levels([
        entransfer::transfer::Level::Ground,
        entransfer::transfer::Level::Excited,
        entransfer::transfer::Level::Ground,
    ]);
    let rho = atomic_density_general(&field, &prep, 1.5 * PI);
    let r = report(&rho, 0.0).unwrap();
    out.push(FormulaCheck::new(
        "regression_excited_prep_second_peak_negativity",
        Variant::Corrected,
        describe_inputs(&[("gtau", 1.5 * PI)]),
        baselines::GEG_SECOND_PEAK_NEGATIVITY,
        r.tripartite_negativity,
        1e-9,
    ));
    out.push(FormulaCheck::new(
        "regression_excited_prep_second_peak_purity",
        Variant::Corrected,
        describe_inputs(&[("gtau", 1.5 * PI)]),
        baselines::GEG_SECOND_PEAK_PURITY,
        r.purity,
        1e-9,
    ));
    out
}

/// Preparations other than all-ground lower the final purity, and the
/// second peak tolerates the change much better than the first.
fn check_excited_preparations() -> Check {
    let field = gsd_state(&GsdCoefficients::uniform(GsdForm::Standard));
    let preps = [
        [
            entransfer::transfer::Level::Ground,
            entransfer::transfer::Level::Excited,
            entransfer::transfer::Level::Ground,
        ],
        [
            entransfer::transfer::Level::Excited,
            entransfer::transfer::Level::Ground,
            entransfer::transfer::Level::Excited,
        ],
        [entransfer::transfer::Level::Excited; 3],
    ];
    let n_ground_first =
        entransfer::measures::tripartite_negativity(&atomic_density_ground(&field, FRAC_PI_2))
            .unwrap();
    let n_ground_second =
        entransfer::measures::tripartite_negativity(&atomic_density_ground(&field, 1.5 * PI))
            .unwrap();
    let mut ok = true;
    let mut max_gap_first = 0.0f64;
    let mut max_gap_second = 0.0f64;
    for levels in preps {
        let prep = AtomicPreparation::from_levels(levels);
        let first = report(&atomic_density_general(&field, &prep, FRAC_PI_2), 0.0).unwrap();
        let second = report(&atomic_density_general(&field, &prep, 1.5 * PI), 0.0).unwrap();
        ok &= first.purity < 1.0 - 1e-6 && second.purity < 1.0 - 1e-6;
        max_gap_first = max_gap_first.max(n_ground_first - first.tripartite_negativity);
        max_gap_second = max_gap_second.max(n_ground_second - second.tripartite_negativity);
    }
    ok &= max_gap_second < max_gap_first;
    Check::gate(
        "excited_preparations_cost_purity",
        ok,
        format!(
            "all non-ground preparations mix the register; negativity loss at the second \
             peak ({max_gap_second:.3}) stays below the first-peak loss ({max_gap_first:.3})"
        ),
    )
}

fn check_regressions() -> Check {
    let checks = regression_checks(entransfer::measures::NEGATIVE_EIGENVALUE_THRESHOLD);
    let worst = checks
        .iter()
        .map(|c| c.difference() / c.tolerance)
        .fold(0.0f64, f64::max);
    let ok = checks.iter().all(|c| c.passed());
    Check::gate(
        "regression_baselines",
        ok,
        format!(
            "{} frozen values, worst |delta|/tolerance = {worst:.3}",
            checks.len()
        ),
    )
}

fn errata_checks() -> Vec<Check> {
    let mut out = Vec::new();

    let published = w_like_purity(1.3, 1.0, Variant::AsPublished).unwrap();
    out.push(Check::expected_fail(
        "published_w_like_purity_bound",
        (published - 1.0 / 16.0).abs() < 1e-12,
        format!(
            "separable input alpha_sq = 1 yields purity {published:.6} instead of 1 \
             (corrected variant returns 1)"
        ),
    ));

    let alpha = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let f = ghz_loss_formulas(FRAC_PI_2, 0.5, alpha, alpha, Variant::AsPublished).unwrap();
    out.push(Check::expected_fail(
        "published_loss_elements_trace",
        (f.elements.trace().re - 1.25).abs() < 1e-12,
        format!(
            "element trace at T = 0.5, gtau = pi/2 is {:.6} instead of 1 (corrected \
             variant has unit trace)",
            f.elements.trace().re
        ),
    ));

    let product = ghz_loss_formulas(
        PI / 6.0,
        1.0,
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        Variant::AsPublished,
    )
    .unwrap();
    let fixed = ghz_loss_formulas(
        PI / 6.0,
        1.0,
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        Variant::Corrected,
    )
    .unwrap();
    out.push(Check::expected_fail(
        "published_loss_eigenvalue_product_state",
        product.lambda_minus < -1e-6 && fixed.lambda_minus >= 0.0,
        format!(
            "published eigenvalue {:.6e} certifies entanglement for a product input at \
             Y = 1/4 (corrected: {:.6e} >= 0)",
            product.lambda_minus, fixed.lambda_minus
        ),
    ));

    let b1 = mixed_purity_full_published(FRAC_PI_2, 0.5);
    let pipeline = purity(&atomic_density_ground(
        &mixed_ghz_w(0.5).unwrap(),
        FRAC_PI_2,
    ));
    out.push(Check::expected_fail(
        "published_mixed_purity_general_time",
        (b1 - 0.75).abs() < 1e-12 && (pipeline - 0.5).abs() < 1e-12,
        format!(
            "general-time purity at gtau = pi/2, p = 1/2 evaluates to {b1:.6} while the \
             pipeline gives {pipeline:.6} (the peak form 2p^2 - 2p + 1 agrees with the \
             pipeline)"
        ),
    ));

    out
}

fn info_mixed_eigenvalue_reading() -> Check {
    let mut worst = 0.0f64;
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let field = mixed_ghz_w(p).unwrap();
        for step in 1..=60 {
            let g_tau = step as f64 * (3.0 * PI / 60.0);
            let (l1, l2) = mixed_pt_eigenvalues_published(g_tau, p);
            let published = -2.0 * (l1.min(0.0) + l2.min(0.0));
            let rho = atomic_density_ground(&field, g_tau);
            let numeric = entransfer::measures::tripartite_negativity(&rho).unwrap();
            worst = worst.max((published - numeric).abs());
        }
    }
    Check::info(
        "published_mixed_eigenvalues_as_read",
        format!(
            "under the adopted reading of the garbled inner factor, max \
             |(-2 sum min(lambda, 0)) - pipeline tripartite negativity| = {worst:.3e} \
             over the (gtau, p) grid; report-only, not gating"
        ),
    )
}

/// Runs every check; `jobs` sizes the worker pool used by the heavier grid
/// checks.
pub fn run_all(jobs: usize) -> Vec<Check> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("worker pool");
    pool.install(|| {
        let mut checks = vec![
            check_oracle_qubit_like(),
            check_oracle_gaussian(),
            check_injection_endpoints(),
            check_channel_conservation(),
            check_periodicity(),
            check_mode_atom_covariance(),
            check_peak_state_fidelity(),
            check_class_formula("ghz_like_negativity_closed_form", PureClass::GhzLike),
            check_class_formula("chain_negativity_closed_form", PureClass::Chain),
            check_class_formula("star_negativity_closed_form", PureClass::Star),
            check_class_formula("w_like_negativity_closed_form", PureClass::WLike),
            check_chain_pair_structure(),
            check_w_like_pairs_entangled(),
            check_w_like_purity_grid(),
        ];
        checks.extend(check_ghz_loss_grids());
        checks.extend(check_mixed_grids());
        checks.push(check_photon_statistics());
        checks.push(check_gaussian_pair_separability());
        checks.push(check_sym_form_dominates());
        checks.push(check_excited_preparations());
        checks.push(check_regressions());
        checks.extend(errata_checks());
        checks.push(info_mixed_eigenvalue_reading());
        checks
    })
}

/// Renders the report and returns `true` when every gating check passed and
/// every documented defect reproduced.
pub fn render_report(checks: &[Check], out: &mut String) -> bool {
    let mut all_ok = true;
    writeln!(out, "validation report").unwrap();
    writeln!(out, "=================").unwrap();
    for check in checks {
        let tag = match (check.kind, check.ok) {
            (CheckKind::Gate, true) => "[PASS] ",
            (CheckKind::Gate, false) => "[FAIL] ",
            (CheckKind::ExpectedFail, true) => "[XFAIL]",
            (CheckKind::ExpectedFail, false) => "[XPASS]",
            (CheckKind::Info, _) => "[INFO] ",
        };
        if !check.ok && check.kind != CheckKind::Info {
            all_ok = false;
        }
        writeln!(out, "{tag} {} - {}", check.name, check.detail).unwrap();
    }
    let gates = checks.iter().filter(|c| c.kind == CheckKind::Gate).count();
    let xfails = checks
        .iter()
        .filter(|c| c.kind == CheckKind::ExpectedFail)
        .count();
    writeln!(
        out,
        "{} gating checks, {} documented published-formula defects, overall: {}",
        gates,
        xfails,
        if all_ok { "PASS" } else { "FAIL" }
    )
    .unwrap();
    all_ok
}

/// Entry point for the `validate` subcommand.
pub fn run(jobs: usize) -> anyhow::Result<bool> {
    let start = Instant::now();
    let checks = run_all(jobs);
    let mut out = String::new();
    let ok = render_report(&checks, &mut out);
    print!("{out}");
    println!("elapsed: {:.1?}", start.elapsed());
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_difference_detects_mutation() {
        let cavity = ghz_state();
        assert!(oracle_difference(&cavity, 1.1, false) <= 1e-12);
        assert!(oracle_difference(&cavity, 1.1, true) > 1e-3);
    }

    #[test]
    fn loosened_threshold_breaks_small_negativity_baseline() {
        let strict = regression_checks(entransfer::measures::NEGATIVE_EIGENVALUE_THRESHOLD);
        assert!(strict.iter().all(|c| c.passed()));

        let loose = regression_checks(1e-3);
        let small = loose
            .iter()
            .find(|c| c.formula == "regression_loss_small_negativity")
            .unwrap();
        assert!(!small.passed(), "drift not detected: {}", small.pipeline);
        assert_eq!(small.pipeline, 0.0);
        // the coarse structural check is unaffected by the loosened threshold
        let bc = check_gaussian_pair_separability();
        assert!(bc.ok);
    }

    #[test]
    fn errata_entries_reproduce() {
        for check in errata_checks() {
            assert!(
                check.ok,
                "{} did not reproduce: {}",
                check.name, check.detail
            );
        }
    }
}
