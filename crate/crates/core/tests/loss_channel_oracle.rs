//! Independent dense oracle for the injection channel.
//!
//! The two-port mixing unitary conserves the total photon number, so its
//! amplitudes are integrated numerically per total-photon block (RK4 on the
//! generator, no closed-form binomials anywhere) and contracted against the
//! field density by tracing the outgoing port. The scatter implementation
//! must agree entry-wise.

use std::collections::BTreeMap;

use entransfer::states::{
    gaussian_t_state_at_cutoff, mixture, pure_state_density, t_state_params, ThreeModeDensity,
};
use entransfer::transfer::inject;
use entransfer::C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Amplitudes `<n-c, c| B |n, 0>` for one total-photon block, indexed by the
/// cavity count `c`, from an RK4 integration of `d psi / d phi = -A psi`
/// with `A = f^dag c - f c^dag` restricted to the block.
fn mixing_amplitudes(n: usize, phi: f64) -> Vec<f64> {
    let dim = n + 1;
    let apply = |psi: &[f64]| -> Vec<f64> {
        // (-A psi)_idx accumulated from the two ladder terms
        let mut out = vec![0.0; dim];
        for c in 0..dim {
            let f = n - c;
            // f^dag c: |f, c> -> sqrt((f+1) c) |f+1, c-1>
            if c >= 1 {
                out[c - 1] -= (((f + 1) * c) as f64).sqrt() * psi[c];
            }
            // -f c^dag: |f, c> -> -sqrt(f (c+1)) |f-1, c+1>
            if f >= 1 {
                out[c + 1] += ((f * (c + 1)) as f64).sqrt() * psi[c];
            }
        }
        out
    };

    let steps = 4000;
    let h = phi / steps as f64;
    let mut psi = vec![0.0; dim];
    psi[0] = 1.0;
    for _ in 0..steps {
        let k1 = apply(&psi);
        let mid1: Vec<f64> = psi.iter().zip(&k1).map(|(p, k)| p + 0.5 * h * k).collect();
        let k2 = apply(&mid1);
        let mid2: Vec<f64> = psi.iter().zip(&k2).map(|(p, k)| p + 0.5 * h * k).collect();
        let k3 = apply(&mid2);
        let end: Vec<f64> = psi.iter().zip(&k3).map(|(p, k)| p + h * k).collect();
        let k4 = apply(&end);
        for c in 0..dim {
            psi[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
    }
    psi
}

/// Dense-oracle injection: trace the outgoing port of the mixed two-port
/// state, mode by mode.
fn inject_oracle(
    field: &ThreeModeDensity,
    transmittance: f64,
) -> BTreeMap<([u32; 3], [u32; 3]), C64> {
    // the cavity-side single-photon amplitude is sin(phi) = sqrt(T)
    let phi = transmittance.sqrt().asin();
    let blocks: Vec<Vec<f64>> = (0..=field.n_max() as usize)
        .map(|n| mixing_amplitudes(n, phi))
        .collect();

    let mut out: BTreeMap<([u32; 3], [u32; 3]), C64> = BTreeMap::new();
    for ((ket, bra), &a) in field.iter() {
        // per mode, the traced outgoing port forces equal leftover photons
        let mut options: [Vec<(u32, u32, f64)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for m in 0..3 {
            let (n, np) = (ket[m], bra[m]);
            for c in 0..=n {
                let leftover = n - c;
                if np < leftover {
                    continue;
                }
                let cp = np - leftover;
                let w = blocks[n as usize][c as usize] * blocks[np as usize][cp as usize];
                options[m].push((c, cp, w));
            }
        }
        for (c1, cp1, w1) in &options[0] {
            for (c2, cp2, w2) in &options[1] {
                for (c3, cp3, w3) in &options[2] {
                    let key = ([*c1, *c2, *c3], [*cp1, *cp2, *cp3]);
                    *out.entry(key).or_insert(C64::new(0.0, 0.0)) += a * (w1 * w2 * w3);
                }
            }
        }
    }
    out.retain(|_, v| v.norm() > 1e-15);
    out
}

fn max_difference(scatter: &ThreeModeDensity, oracle: &BTreeMap<([u32; 3], [u32; 3]), C64>) -> f64 {
    let mut worst = 0.0f64;
    for ((ket, bra), v) in scatter.iter() {
        let reference = oracle
            .get(&(*ket, *bra))
            .copied()
            .unwrap_or(C64::new(0.0, 0.0));
        worst = worst.max((v - reference).norm());
    }
    for ((ket, bra), v) in oracle {
        worst = worst.max((scatter.coeff(*ket, *bra) - v).norm());
    }
    worst
}

/// The integrated block amplitudes must reproduce the split of a single
/// photon and stay normalized in every block.
#[test]
fn mixing_amplitudes_are_consistent() {
    let phi = 0.7f64;
    let one = mixing_amplitudes(1, phi);
    assert!((one[0] - phi.cos()).abs() < 1e-12);
    assert!((one[1] - phi.sin()).abs() < 1e-12);
    for n in 0..=6 {
        let psi = mixing_amplitudes(n, phi);
        let norm: f64 = psi.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-12, "block {n} norm {norm}");
    }
}

#[test]
fn scatter_injection_matches_dense_oracle_on_random_fields() {
    let mut rng = StdRng::seed_from_u64(0x1055_5eed);
    for trial in 0..12 {
        // random pure expansion over up to two photons per mode, sometimes
        // mixed with a second draw
        let draw = |rng: &mut StdRng| -> ThreeModeDensity {
            loop {
                let kets: Vec<([u32; 3], C64)> = (0..10)
                    .map(|_| {
                        (
                            [
                                rng.gen_range(0..=2u32),
                                rng.gen_range(0..=2u32),
                                rng.gen_range(0..=2u32),
                            ],
                            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                        )
                    })
                    .collect();
                if let Ok(state) = pure_state_density(&kets) {
                    return state;
                }
            }
        };
        let field = if trial % 3 == 0 {
            let (a, b) = (draw(&mut rng), draw(&mut rng));
            let p = rng.gen_range(0.0..1.0);
            mixture(&[(p, &a), (1.0 - p, &b)]).unwrap()
        } else {
            draw(&mut rng)
        };
        for t in [0.15, 0.5, 0.85] {
            let scatter = inject(&field, t).unwrap();
            let oracle = inject_oracle(&field, t);
            let diff = max_difference(&scatter, &oracle);
            assert!(
                diff < 1e-10,
                "trial {trial}, T = {t}: max |delta| = {diff:.3e}"
            );
        }
    }
}

#[test]
fn scatter_injection_matches_dense_oracle_on_gaussian_state() {
    let params = t_state_params(0.7, 1.3).unwrap();
    let field = gaussian_t_state_at_cutoff(&params, 3, false);
    for t in [0.2, 0.65, 0.95] {
        let scatter = inject(&field, t).unwrap();
        let oracle = inject_oracle(&field, t);
        let diff = max_difference(&scatter, &oracle);
        assert!(diff < 1e-10, "T = {t}: max |delta| = {diff:.3e}");
    }
}
