//! Constructors for the three-mode field states fed into the transfer
//! pipeline, represented as sparse Fock-basis density coefficient maps.
//!
//! Qubit-like states (per-mode photon numbers restricted to {0, 1}) are
//! exact; the Gaussian three-mode state is truncated at a controlled tail
//! tolerance with the discarded probability recorded in `trace_residual`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_complex::Complex64 as C64;
#[allow(unused_imports)] // used by the no_std build; test builds see std's inherent methods
use num_traits::Float;

use crate::Error;

/// Hard cap on the mode-1 photon index of truncated Gaussian states.
pub const MODE1_CAP: u32 = 40;

/// Below this value of `Omega = sqrt(omega_sq)` the mean photon numbers are
/// evaluated from their analytic limits; `1 - cos(Omega)` loses precision
/// quadratically.
const OMEGA_SERIES_THRESHOLD: f64 = 1e-6;

/// Photon index pair `(ket, bra)` keying one density coefficient
/// `<ket| rho |bra>`.
pub type FockPair = ([u32; 3], [u32; 3]);

/// Sparse Hermitian coefficient map over the truncated three-mode Fock
/// space, stored as a key-sorted vector.
///
/// Both halves of every conjugate pair are stored, so Hermitian symmetry is
/// testable by a full scan. Diagonal entries are real and nonnegative; the
/// diagonal sums to `1 - trace_residual`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeModeDensity {
    coeffs: Vec<(FockPair, C64)>,
    n_max: u32,
    trace_residual: f64,
}

/// Accumulating builder for scatter-style constructions (loss channel,
/// mixtures); collapses duplicate keys before freezing into the sorted
/// vector representation.
pub(crate) struct DensityBuilder {
    map: BTreeMap<FockPair, C64>,
    n_max: u32,
    trace_residual: f64,
}

impl DensityBuilder {
    pub(crate) fn new(n_max: u32, trace_residual: f64) -> Self {
        Self {
            map: BTreeMap::new(),
            n_max,
            trace_residual,
        }
    }

    pub(crate) fn add(&mut self, ket: [u32; 3], bra: [u32; 3], value: C64) {
        if value == C64::new(0.0, 0.0) {
            return;
        }
        *self.map.entry((ket, bra)).or_insert(C64::new(0.0, 0.0)) += value;
    }

    pub(crate) fn finish(self) -> ThreeModeDensity {
        ThreeModeDensity {
            coeffs: self.map.into_iter().collect(),
            n_max: self.n_max,
            trace_residual: self.trace_residual.max(0.0),
        }
    }
}

impl ThreeModeDensity {
    /// Freezes an already key-sorted, duplicate-free entry list.
    fn from_sorted(coeffs: Vec<(FockPair, C64)>, n_max: u32, trace_residual: f64) -> Self {
        debug_assert!(coeffs.windows(2).all(|w| w[0].0 < w[1].0));
        Self {
            coeffs,
            n_max,
            trace_residual: trace_residual.max(0.0),
        }
    }

    /// Coefficient `<ket| rho |bra>`, zero when not stored.
    pub fn coeff(&self, ket: [u32; 3], bra: [u32; 3]) -> C64 {
        match self
            .coeffs
            .binary_search_by(|(key, _)| key.cmp(&(ket, bra)))
        {
            Ok(pos) => self.coeffs[pos].1,
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockPair, &C64)> {
        self.coeffs.iter().map(|(key, value)| (key, value))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Per-mode photon cutoff; no stored index exceeds it.
    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// Probability mass discarded by truncation (zero for exact states).
    pub fn trace_residual(&self) -> f64 {
        self.trace_residual
    }

    /// Sum of diagonal coefficients.
    pub fn trace(&self) -> f64 {
        self.coeffs
            .iter()
            .filter(|((k, b), _)| k == b)
            .map(|(_, v)| v.re)
            .sum()
    }

    /// Max over stored keys of `|a_{kb} - conj(a_{bk})|` (full scan).
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for ((ket, bra), v) in &self.coeffs {
            let mirror = self.coeff(*bra, *ket);
            worst = worst.max((v - mirror.conj()).norm());
        }
        worst
    }

    /// The same state with the three modes relabeled: mode `perm[m]` of the
    /// result is mode `m` of the input.
    pub fn permuted_modes(&self, perm: [usize; 3]) -> Self {
        let mut coeffs: Vec<(FockPair, C64)> = self
            .coeffs
            .iter()
            .map(|((ket, bra), v)| {
                let mut k = [0u32; 3];
                let mut b = [0u32; 3];
                for m in 0..3 {
                    k[perm[m]] = ket[m];
                    b[perm[m]] = bra[m];
                }
                ((k, b), *v)
            })
            .collect();
        coeffs.sort_unstable_by_key(|(key, _)| *key);
        Self::from_sorted(coeffs, self.n_max, self.trace_residual)
    }

    /// Rescales the map to unit trace and clears the stored residual.
    pub fn renormalized(&self) -> Self {
        let tr = self.trace();
        let mut out = self.clone();
        if tr > 0.0 {
            let inv = 1.0 / tr;
            for (_, v) in &mut out.coeffs {
                *v *= inv;
            }
        }
        out.trace_residual = 0.0;
        out
    }
}

/// Convex mixture of field states; weights must be nonnegative (they are
/// not rescaled, so they should sum to one for a normalized result).
pub fn mixture(parts: &[(f64, &ThreeModeDensity)]) -> Result<ThreeModeDensity, Error> {
    if parts.is_empty() {
        return Err(Error::ZeroKet);
    }
    let mut n_max = 0;
    for (w, part) in parts {
        if *w < 0.0 || w.is_nan() {
            return Err(Error::InvalidProbability(*w));
        }
        n_max = n_max.max(part.n_max);
    }
    let residual = parts.iter().map(|(w, part)| w * part.trace_residual).sum();
    let mut builder = DensityBuilder::new(n_max, residual);
    for (w, part) in parts {
        for ((ket, bra), v) in &part.coeffs {
            builder.add(*ket, *bra, v * *w);
        }
    }
    Ok(builder.finish())
}

/// Binomial coefficient as a float; exactness is not required, only the
/// ~1e-15 relative accuracy of the multiplicative evaluation.
pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 1..=k {
        acc *= (n - k + i) as f64 / i as f64;
    }
    acc
}

/// Density of the pure state given by an unnormalized ket expansion over
/// Fock triples. Duplicate triples are merged by amplitude addition.
pub fn pure_state_density(kets: &[([u32; 3], C64)]) -> Result<ThreeModeDensity, Error> {
    let mut merged: BTreeMap<[u32; 3], C64> = BTreeMap::new();
    for (idx, amp) in kets {
        *merged.entry(*idx).or_insert(C64::new(0.0, 0.0)) += amp;
    }
    merged.retain(|_, a| *a != C64::new(0.0, 0.0));
    let norm_sq: f64 = merged.values().map(|a| a.norm_sqr()).sum();
    if norm_sq <= 0.0 {
        return Err(Error::ZeroKet);
    }
    let scale = norm_sq.sqrt().recip();
    let amps: Vec<([u32; 3], C64)> = merged
        .into_iter()
        .map(|(idx, a)| (idx, a * scale))
        .collect();
    let n_max = amps
        .iter()
        .map(|(idx, _)| idx.iter().copied().max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    Ok(outer_product(&amps, n_max, 0.0))
}

/// Outer product of a key-sorted, duplicate-free ket expansion; the pair
/// keys come out in lexicographic order by construction.
fn outer_product(amps: &[([u32; 3], C64)], n_max: u32, trace_residual: f64) -> ThreeModeDensity {
    let mut coeffs = Vec::with_capacity(amps.len() * amps.len());
    for (ki, ai) in amps {
        for (kj, aj) in amps {
            let value = ai * aj.conj();
            if value != C64::new(0.0, 0.0) {
                coeffs.push(((*ki, *kj), value));
            }
        }
    }
    ThreeModeDensity::from_sorted(coeffs, n_max, trace_residual)
}

/// The five-term generalized Schmidt decomposition forms used for qubit-like
/// fields, distinguished by which basis kets carry the coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsdForm {
    /// `a1|000> + a2|100> + a3|110> + a4|101> + a5|111>`, symmetric under
    /// interchange of the last two modes.
    Standard,
    /// `a1|000> + a2|001> + a3|010> + a4|100> + a5|111>`, symmetric under any
    /// mode exchange, single-photon support.
    SymSingle,
    /// `a1|000> + a2|011> + a3|101> + a4|110> + a5|111>`, symmetric under any
    /// mode exchange, two-photon support.
    SymDouble,
}

impl GsdForm {
    pub fn basis(self) -> [[u32; 3]; 5] {
        match self {
            GsdForm::Standard => [[0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1]],
            GsdForm::SymSingle => [[0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0], [1, 1, 1]],
            GsdForm::SymDouble => [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]],
        }
    }
}

/// Normalized coefficient vector for one of the [`GsdForm`] expansions.
///
/// Inputs are normalized on construction; the downstream formulas assume
/// `sum |a_i|^2 = 1` and silent misnormalization would corrupt every
/// derived number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsdCoefficients {
    form: GsdForm,
    amps: [C64; 5],
}

impl GsdCoefficients {
    pub fn new(form: GsdForm, amps: [C64; 5]) -> Result<Self, Error> {
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(Error::ZeroKet);
        }
        let scale = norm_sq.sqrt().recip();
        let mut normalized = amps;
        for a in &mut normalized {
            *a *= scale;
        }
        Ok(Self {
            form,
            amps: normalized,
        })
    }

    /// Real coefficient convenience constructor.
    pub fn from_real(form: GsdForm, amps: [f64; 5]) -> Result<Self, Error> {
        Self::new(form, amps.map(|a| C64::new(a, 0.0)))
    }

    /// `1/sqrt(5)` on every basis ket.
    pub fn uniform(form: GsdForm) -> Self {
        Self::from_real(form, [1.0; 5]).expect("nonzero")
    }

    pub fn form(&self) -> GsdForm {
        self.form
    }

    pub fn amps(&self) -> &[C64; 5] {
        &self.amps
    }
}

/// Pure-state density of a five-term GSD expansion; `n_max = 1`.
pub fn gsd_state(c: &GsdCoefficients) -> ThreeModeDensity {
    let basis = c.form.basis();
    let kets: Vec<([u32; 3], C64)> = basis
        .iter()
        .zip(c.amps.iter())
        .map(|(idx, a)| (*idx, *a))
        .collect();
    pure_state_density(&kets).expect("normalized coefficients")
}

/// GHZ-like superposition `alpha|000> + omega|111>` (normalized on input).
pub fn ghz_like(alpha: C64, omega: C64) -> Result<ThreeModeDensity, Error> {
    pure_state_density(&[([0, 0, 0], alpha), ([1, 1, 1], omega)])
}

/// The balanced GHZ state `(|000> + |111>)/sqrt(2)`.
pub fn ghz_state() -> ThreeModeDensity {
    ghz_like(C64::new(1.0, 0.0), C64::new(1.0, 0.0)).expect("nonzero")
}

/// The symmetric single-photon state `(|001> + |010> + |100>)/sqrt(3)`.
pub fn w_state() -> ThreeModeDensity {
    let one = C64::new(1.0, 0.0);
    pure_state_density(&[([0, 0, 1], one), ([0, 1, 0], one), ([1, 0, 0], one)]).expect("nonzero")
}

/// Rank-two mixture `p |GHZ><GHZ| + (1 - p) |W><W|`.
pub fn mixed_ghz_w(p: f64) -> Result<ThreeModeDensity, Error> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidProbability(p));
    }
    mixture(&[(p, &ghz_state()), (1.0 - p, &w_state())])
}

/// Parameters of the Gaussian three-mode state: squared couplings and the
/// derived per-mode mean photon numbers, with `n1 = n2 + n3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TStateParams {
    pub gamma1_sq: f64,
    pub omega_sq: f64,
    pub n1: f64,
    pub n2: f64,
    pub n3: f64,
}

/// Derives the mean photon numbers from the squared dimensionless couplings
/// `gamma1_sq = |gamma_1|^2` and `omega_sq = |gamma_2|^2 - |gamma_1|^2`.
///
/// `n3 = (gamma1_sq / omega_sq) sin^2(Omega)` and
/// `n2 = (gamma1_sq * gamma2_sq / omega_sq^2) (1 - cos(Omega))^2`; below the
/// series threshold the limits `n3 = gamma1_sq`,
/// `n2 = gamma1_sq * gamma2_sq / 4` are used instead. The hyperbolic regime
/// `omega_sq < 0` is rejected.
pub fn t_state_params(gamma1_sq: f64, omega_sq: f64) -> Result<TStateParams, Error> {
    if gamma1_sq < 0.0 || gamma1_sq.is_nan() {
        return Err(Error::NegativeParameter {
            name: "gamma1_sq",
            value: gamma1_sq,
        });
    }
    if omega_sq < 0.0 || omega_sq.is_nan() {
        return Err(Error::NegativeParameter {
            name: "omega_sq",
            value: omega_sq,
        });
    }
    let gamma2_sq = gamma1_sq + omega_sq;
    let omega = omega_sq.sqrt();
    let (n2, n3) = if omega < OMEGA_SERIES_THRESHOLD {
        (gamma1_sq * gamma2_sq / 4.0, gamma1_sq)
    } else {
        let s = omega.sin();
        // 1 - cos(x) evaluated as 2 sin^2(x/2) to avoid cancellation
        let half_sin = (0.5 * omega).sin();
        let one_minus_cos = 2.0 * half_sin * half_sin;
        (
            gamma1_sq * gamma2_sq / (omega_sq * omega_sq) * one_minus_cos * one_minus_cos,
            gamma1_sq / omega_sq * s * s,
        )
    };
    Ok(TStateParams {
        gamma1_sq,
        omega_sq,
        n1: n2 + n3,
        n2,
        n3,
    })
}

/// Ket amplitude of `|p+q, p, q>` in the Gaussian three-mode state.
fn t_state_amplitude(params: &TStateParams, p: u32, q: u32) -> f64 {
    let base = 1.0 + params.n1;
    let x = params.n2 / base;
    let y = params.n3 / base;
    base.sqrt().recip()
        * x.sqrt().powi(p as i32)
        * y.sqrt().powi(q as i32)
        * binomial(p + q, p).sqrt()
}

fn t_state_kets(params: &TStateParams, cutoff: u32) -> (Vec<([u32; 3], C64)>, f64) {
    let mut kets = Vec::new();
    let mut captured = 0.0;
    for total in 0..=cutoff {
        for p in 0..=total {
            let q = total - p;
            let b = t_state_amplitude(params, p, q);
            if b != 0.0 {
                captured += b * b;
                kets.push(([total, p, q], C64::new(b, 0.0)));
            }
        }
    }
    (kets, captured)
}

fn t_state_from_kets(kets: &[([u32; 3], C64)], captured: f64, cutoff: u32) -> ThreeModeDensity {
    outer_product(kets, cutoff, 1.0 - captured)
}

/// Pure-state density of the Gaussian three-mode state, truncated at the
/// smallest mode-1 cutoff where the captured probability reaches
/// `1 - tail_tolerance` (hard cap [`MODE1_CAP`]).
///
/// The output is *not* renormalized: the discarded mass stays visible as
/// `trace_residual`. Use [`gaussian_t_state_at_cutoff`] with `renormalize`
/// for convergence studies or to accept cap-limited truncations.
pub fn gaussian_t_state(
    params: &TStateParams,
    tail_tolerance: f64,
) -> Result<ThreeModeDensity, Error> {
    if !(tail_tolerance > 0.0 && tail_tolerance <= 1e-2) {
        return Err(Error::InvalidTailTolerance(tail_tolerance));
    }
    let base = 1.0 + params.n1;
    let shell_ratio = params.n1 / base;
    let mut captured = 0.0;
    let mut shell = base.recip(); // probability mass of the p+q = 0 shell
    let mut cutoff = None;
    for s in 0..=MODE1_CAP {
        captured += shell;
        shell *= shell_ratio;
        if captured >= 1.0 - tail_tolerance {
            cutoff = Some(s);
            break;
        }
    }
    let cutoff = cutoff.ok_or(Error::CutoffCapExceeded {
        cap: MODE1_CAP,
        captured,
    })?;
    let (kets, captured) = t_state_kets(params, cutoff);
    Ok(t_state_from_kets(&kets, captured, cutoff))
}

/// Gaussian three-mode state truncated at an explicit mode-1 cutoff.
pub fn gaussian_t_state_at_cutoff(
    params: &TStateParams,
    cutoff: u32,
    renormalize: bool,
) -> ThreeModeDensity {
    let (kets, captured) = t_state_kets(params, cutoff);
    let state = t_state_from_kets(&kets, captured, cutoff);
    if renormalize {
        state.renormalized()
    } else {
        state
    }
}
