//! The two physical channels: beam-splitter injection of the field into the
//! cavities and resonant Jaynes-Cummings evolution producing the three-qubit
//! atomic density matrix.
//!
//! Two independent implementations of the atomic channel are kept on
//! purpose. [`atomic_density_ground`] transcribes the closed-form matrix
//! elements for all atoms prepared in the ground state;
//! [`atomic_density_general`] contracts the explicit per-atom JC unitary
//! action against an arbitrary product preparation and traces out the modes.
//! For the ground preparation the two must agree entry-wise to 1e-12; this
//! pair is the project's central self-oracle.
//!
//! Phase convention of the JC unitary (resonant, interaction time written as
//! the dimensionless `g_tau`):
//!
//! ```text
//! U|g,n> = cos(g_tau sqrt(n)) |g,n> - i sin(g_tau sqrt(n)) |e,n-1>   (n >= 1)
//! U|g,0> = |g,0>
//! U|e,n> = cos(g_tau sqrt(n+1)) |e,n> - i sin(g_tau sqrt(n+1)) |g,n+1>
//! ```

use alloc::vec::Vec;
use num_complex::Complex64 as C64;
#[allow(unused_imports)] // used by the no_std build; test builds see std's inherent methods
use num_traits::Float;

use crate::qmath::{ComplexMatrix, QubitRegisterDensity};
use crate::states::{binomial, ThreeModeDensity};
use crate::Error;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Atomic level labels matching the register bit convention (`e` = 0,
/// `g` = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Excited,
    Ground,
}

impl Level {
    fn bit(self) -> usize {
        match self {
            Level::Excited => 0,
            Level::Ground => 1,
        }
    }
}

/// Product of three single-qubit pure states, each stored as a normalized
/// `(amp_g, amp_e)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomicPreparation {
    amps: [(C64, C64); 3],
}

impl AtomicPreparation {
    /// Normalizes each atom's amplitude pair; errors if any pair is zero.
    pub fn new(amps: [(C64, C64); 3]) -> Result<Self, Error> {
        let mut normalized = amps;
        for pair in &mut normalized {
            let norm_sq = pair.0.norm_sqr() + pair.1.norm_sqr();
            if norm_sq <= 0.0 {
                return Err(Error::ZeroKet);
            }
            let scale = norm_sq.sqrt().recip();
            pair.0 *= scale;
            pair.1 *= scale;
        }
        Ok(Self { amps: normalized })
    }

    /// All atoms in the ground state.
    pub fn ground() -> Self {
        let one = C64::new(1.0, 0.0);
        Self {
            amps: [(one, ZERO); 3],
        }
    }

    /// Basis product preparation, e.g. `[Ground, Excited, Ground]`.
    pub fn from_levels(levels: [Level; 3]) -> Self {
        let one = C64::new(1.0, 0.0);
        let amps = levels.map(|l| match l {
            Level::Ground => (one, ZERO),
            Level::Excited => (ZERO, one),
        });
        Self { amps }
    }

    /// `(amp_g, amp_e)` for one atom.
    pub fn atom(&self, index: usize) -> (C64, C64) {
        self.amps[index]
    }

    /// True when every atom is exactly in the ground state.
    pub fn is_ground(&self) -> bool {
        self.amps
            .iter()
            .all(|(g, e)| *e == ZERO && g.im == 0.0 && g.re > 0.0)
    }

    /// The same preparation with atoms relabeled: atom `perm[i]` of the
    /// result is atom `i` of the input.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let mut amps = self.amps;
        for i in 0..3 {
            amps[perm[i]] = self.amps[i];
        }
        Self { amps }
    }
}

/// Channel parameters: mirror transmittance `T` (fraction of the flying mode
/// transferred into the cavity; `T = 1` is lossless) and the dimensionless
/// interaction time `g_tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferSettings {
    pub transmittance: f64,
    pub g_tau: f64,
}

impl TransferSettings {
    pub fn new(transmittance: f64, g_tau: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&transmittance) || transmittance.is_nan() {
            return Err(Error::InvalidTransmittance(transmittance));
        }
        if !g_tau.is_finite() {
            return Err(Error::NonFiniteInteractionTime(g_tau));
        }
        Ok(Self {
            transmittance,
            g_tau,
        })
    }
}

/// Beam-splitter injection of the field into the (initially vacuum) cavity
/// modes with transmittance `T = cos^2(theta)`.
///
/// Evaluated in scatter form: every stored field coefficient distributes
/// over the photon numbers lost to the outgoing port, so the sums terminate
/// at the stored indices. `T = 1` returns the map unchanged; the trace and
/// the recorded truncation residual are preserved for every `T`.
pub fn inject(field: &ThreeModeDensity, transmittance: f64) -> Result<ThreeModeDensity, Error> {
    if !(0.0..=1.0).contains(&transmittance) || transmittance.is_nan() {
        return Err(Error::InvalidTransmittance(transmittance));
    }
    if transmittance == 1.0 {
        return Ok(field.clone());
    }
    let cos_theta = transmittance.sqrt();
    let loss = 1.0 - transmittance; // sin^2(theta)

    let mut out = crate::states::DensityBuilder::new(field.n_max(), field.trace_residual());
    for ((ket, bra), &a) in field.iter() {
        // per-mode loss weights: w[m][l] for l photons leaking out of mode m
        let mut weights: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for m in 0..3 {
            let l_max = ket[m].min(bra[m]);
            weights[m] = (0..=l_max)
                .map(|l| {
                    let kept = (ket[m] - l) + (bra[m] - l);
                    cos_theta.powi(kept as i32)
                        * loss.powi(l as i32)
                        * (binomial(ket[m], l) * binomial(bra[m], l)).sqrt()
                })
                .collect();
        }
        for (l, wl) in weights[0].iter().enumerate() {
            for (m, wm) in weights[1].iter().enumerate() {
                for (n, wn) in weights[2].iter().enumerate() {
                    let k = [ket[0] - l as u32, ket[1] - m as u32, ket[2] - n as u32];
                    let b = [bra[0] - l as u32, bra[1] - m as u32, bra[2] - n as u32];
                    out.add(k, b, a * (wl * wm * wn));
                }
            }
        }
    }
    Ok(out.finish())
}

/// Table of `(sin(g_tau sqrt(n)), cos(g_tau sqrt(n)))` for `n = 0..=n_max+1`.
fn trig_table(n_max: u32, g_tau: f64) -> Vec<(f64, f64)> {
    (0..=n_max + 1)
        .map(|n| {
            let arg = g_tau * (n as f64).sqrt();
            (arg.sin(), arg.cos())
        })
        .collect()
}

/// Three-qubit atomic density matrix after resonant JC interaction with all
/// atoms prepared in the ground state, by direct transcription of the
/// closed-form matrix elements.
///
/// Each stored cavity coefficient `c_{(n)(n')}` contributes to the atomic
/// element `(u, w)` whose per-mode bra/ket levels satisfy
/// `n - [u = e] = n' - [w = e]`, with factors
///
/// ```text
/// (e,e): sin^2(g_tau sqrt(n))          (g,g): cos^2(g_tau sqrt(n))
/// (e,g): -i sin(g_tau sqrt(n)) cos(g_tau sqrt(n'))
/// (g,e): +i cos(g_tau sqrt(n)) sin(g_tau sqrt(n'))
/// ```
pub fn atomic_density_ground(cavity: &ThreeModeDensity, g_tau: f64) -> QubitRegisterDensity {
    let trig = trig_table(cavity.n_max(), g_tau);
    let mut rho = ComplexMatrix::zeros(8);

    // per-mode options: (bra bit, ket bit, factor)
    let mut opts: [[(usize, usize, C64); 2]; 3] = [[(0, 0, ZERO); 2]; 3];
    let mut counts = [0usize; 3];

    'entries: for ((ket, bra), &a) in cavity.iter() {
        for m in 0..3 {
            let n = ket[m];
            let np = bra[m];
            counts[m] = 0;
            if n == np {
                let (_, c) = trig[n as usize];
                opts[m][counts[m]] = (
                    Level::Ground.bit(),
                    Level::Ground.bit(),
                    C64::new(c * c, 0.0),
                );
                counts[m] += 1;
                if n >= 1 {
                    let (s, _) = trig[n as usize];
                    opts[m][counts[m]] = (
                        Level::Excited.bit(),
                        Level::Excited.bit(),
                        C64::new(s * s, 0.0),
                    );
                    counts[m] += 1;
                }
            } else if n == np + 1 {
                let (s, _) = trig[n as usize];
                let (_, c) = trig[np as usize];
                opts[m][counts[m]] = (
                    Level::Excited.bit(),
                    Level::Ground.bit(),
                    C64::new(0.0, -s * c),
                );
                counts[m] += 1;
            } else if np == n + 1 {
                let (_, c) = trig[n as usize];
                let (s, _) = trig[np as usize];
                opts[m][counts[m]] = (
                    Level::Ground.bit(),
                    Level::Excited.bit(),
                    C64::new(0.0, c * s),
                );
                counts[m] += 1;
            } else {
                continue 'entries;
            }
        }
        for ia in 0..counts[0] {
            let (ua, wa, fa) = opts[0][ia];
            for ib in 0..counts[1] {
                let (ub, wb, fb) = opts[1][ib];
                let fab = fa * fb;
                for &(uc, wc, fc) in opts[2].iter().take(counts[2]) {
                    let row = (ua << 2) | (ub << 1) | uc;
                    let col = (wa << 2) | (wb << 1) | wc;
                    rho[(row, col)] += a * fab * fc;
                }
            }
        }
    }
    QubitRegisterDensity::new(3, rho).expect("8x8 register")
}

/// Terms of `U (amp_g |g,n> + amp_e |e,n>)`: up to four `(level bit, photon
/// count, amplitude)` entries.
fn jc_action(
    amp_g: C64,
    amp_e: C64,
    n: u32,
    trig: &[(f64, f64)],
) -> ([(usize, u32, C64); 4], usize) {
    let mut terms = [(0usize, 0u32, ZERO); 4];
    let mut len = 0;
    if amp_g != ZERO {
        let (s, c) = trig[n as usize];
        terms[len] = (Level::Ground.bit(), n, amp_g * c);
        len += 1;
        if n >= 1 {
            terms[len] = (Level::Excited.bit(), n - 1, amp_g * C64::new(0.0, -s));
            len += 1;
        }
    }
    if amp_e != ZERO {
        let (s, c) = trig[(n + 1) as usize];
        terms[len] = (Level::Excited.bit(), n, amp_e * c);
        len += 1;
        terms[len] = (Level::Ground.bit(), n + 1, amp_e * C64::new(0.0, -s));
        len += 1;
    }
    (terms, len)
}

/// Three-qubit atomic density matrix for an arbitrary product preparation:
/// the JC unitary is applied per atom-mode pair to the joint atom x cavity
/// density built from `prep (x) cavity`, and all three modes are traced out.
///
/// For the ground preparation this agrees entry-wise with
/// [`atomic_density_ground`] to 1e-12 by construction requirement.
pub fn atomic_density_general(
    cavity: &ThreeModeDensity,
    prep: &AtomicPreparation,
    g_tau: f64,
) -> QubitRegisterDensity {
    let trig = trig_table(cavity.n_max(), g_tau);
    let mut rho = ComplexMatrix::zeros(8);

    'entries: for ((ket, bra), &a) in cavity.iter() {
        // per-mode kernel G_m[s][s'] = sum_nu <s,nu|U|chi,n> conj(<s',nu|U|chi,n'>)
        let mut kernel = [[[ZERO; 2]; 2]; 3];
        for m in 0..3 {
            let n = ket[m];
            let np = bra[m];
            if n.abs_diff(np) > 2 {
                continue 'entries;
            }
            let (amp_g, amp_e) = prep.atom(m);
            let (ket_terms, ket_len) = jc_action(amp_g, amp_e, n, &trig);
            let (bra_terms, bra_len) = jc_action(amp_g, amp_e, np, &trig);
            let mut g = [[ZERO; 2]; 2];
            for (s, nu, c) in &ket_terms[..ket_len] {
                for (sp, nup, cp) in &bra_terms[..bra_len] {
                    if nu == nup {
                        g[*s][*sp] += c * cp.conj();
                    }
                }
            }
            kernel[m] = g;
        }
        for row in 0..8usize {
            let (ua, ub, uc) = (row >> 2 & 1, row >> 1 & 1, row & 1);
            for col in 0..8usize {
                let (wa, wb, wc) = (col >> 2 & 1, col >> 1 & 1, col & 1);
                let k = kernel[0][ua][wa] * kernel[1][ub][wb] * kernel[2][uc][wc];
                if k != ZERO {
                    rho[(row, col)] += a * k;
                }
            }
        }
    }
    QubitRegisterDensity::new(3, rho).expect("8x8 register")
}

/// Full channel: injection at the configured transmittance followed by JC
/// evolution. The closed-form path is used for the ground preparation, the
/// generic-unitary path otherwise.
pub fn transfer_pipeline(
    field: &ThreeModeDensity,
    settings: &TransferSettings,
    prep: &AtomicPreparation,
) -> Result<QubitRegisterDensity, Error> {
    let cavity = inject(field, settings.transmittance)?;
    Ok(if prep.is_ground() {
        atomic_density_ground(&cavity, settings.g_tau)
    } else {
        atomic_density_general(&cavity, prep, settings.g_tau)
    })
}
