//! Entanglement and mixedness figures of merit for the three-qubit atomic
//! state: bipartition negativities, their geometric mean, two-qubit
//! subsystem negativities, and purity, bundled into one report per
//! parameter point.

#[allow(unused_imports)] // used by the no_std build; test builds see std's inherent methods
use num_traits::Float;

use crate::qmath::{
    self, hermitian_eigenvalues, partial_trace, partial_transpose, Qubit, QubitPair,
    QubitRegisterDensity,
};
use crate::Error;

/// Partial-transpose eigenvalues above `-NEGATIVE_EIGENVALUE_THRESHOLD`
/// count as zero; spectra of these small matrices are resolved far below
/// this at double precision, so anything smaller is eigensolver noise.
pub const NEGATIVE_EIGENVALUE_THRESHOLD: f64 = 1e-12;

/// All figures of merit for one parameter point.
///
/// `trace_residual` is propagated from truncated field states so consumers
/// can see when truncation might bias the measures; it is zero for exact
/// (qubit-like) inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub purity: f64,
    pub neg_a_bc: f64,
    pub neg_b_ac: f64,
    pub neg_c_ab: f64,
    pub tripartite_negativity: f64,
    pub neg_ab: f64,
    pub neg_ac: f64,
    pub neg_bc: f64,
    pub trace_residual: f64,
}

fn negativity_from_spectrum(evals: &[f64], threshold: f64) -> f64 {
    let neg_sum: f64 = evals.iter().copied().filter(|v| *v < -threshold).sum();
    -2.0 * neg_sum + 0.0 // the +0.0 turns -0.0 into +0.0
}

/// Negativity of the `I` vs rest bipartition with an explicit noise
/// threshold on the partial-transpose eigenvalues.
pub fn bipartition_negativity_with_threshold(
    rho: &QubitRegisterDensity,
    subsystem: Qubit,
    threshold: f64,
) -> Result<f64, Error> {
    let pt = partial_transpose(rho, subsystem)?;
    let evals = hermitian_eigenvalues(&pt)?;
    Ok(negativity_from_spectrum(&evals, threshold))
}

/// `-2` times the sum of negative partial-transpose eigenvalues for the
/// cut separating `subsystem` from the other qubits.
pub fn bipartition_negativity(rho: &QubitRegisterDensity, subsystem: Qubit) -> Result<f64, Error> {
    bipartition_negativity_with_threshold(rho, subsystem, NEGATIVE_EIGENVALUE_THRESHOLD)
}

/// Geometric mean of the three bipartition negativities; zero as soon as
/// any factor is zero (the product-then-root path never sees a log of
/// zero).
pub fn tripartite_negativity(rho: &QubitRegisterDensity) -> Result<f64, Error> {
    let a = bipartition_negativity(rho, Qubit::A)?;
    if a <= 0.0 {
        return Ok(0.0);
    }
    let b = bipartition_negativity(rho, Qubit::B)?;
    if b <= 0.0 {
        return Ok(0.0);
    }
    let c = bipartition_negativity(rho, Qubit::C)?;
    if c <= 0.0 {
        return Ok(0.0);
    }
    Ok((a * b * c).cbrt())
}

/// Negativity of a two-qubit subsystem: the complement qubit is traced out
/// and the 4x4 partial transpose analyzed.
pub fn pair_negativity(rho: &QubitRegisterDensity, pair: QubitPair) -> Result<f64, Error> {
    let reduced = partial_trace(rho, pair.complement())?;
    // either qubit of the pair gives the same spectrum; transpose the first
    let pt = qmath::partial_transpose_matrix(reduced.matrix(), 2, 0)?;
    let evals = hermitian_eigenvalues(&pt)?;
    Ok(negativity_from_spectrum(
        &evals,
        NEGATIVE_EIGENVALUE_THRESHOLD,
    ))
}

/// Computes all seven measures from the same input state.
pub fn report(
    rho: &QubitRegisterDensity,
    trace_residual: f64,
) -> Result<EntanglementReport, Error> {
    let neg_a_bc = bipartition_negativity(rho, Qubit::A)?;
    let neg_b_ac = bipartition_negativity(rho, Qubit::B)?;
    let neg_c_ab = bipartition_negativity(rho, Qubit::C)?;
    let tripartite = if neg_a_bc <= 0.0 || neg_b_ac <= 0.0 || neg_c_ab <= 0.0 {
        0.0
    } else {
        (neg_a_bc * neg_b_ac * neg_c_ab).cbrt()
    };
    Ok(EntanglementReport {
        purity: qmath::purity(rho),
        neg_a_bc,
        neg_b_ac,
        neg_c_ab,
        tripartite_negativity: tripartite,
        neg_ab: pair_negativity(rho, QubitPair::AB)?,
        neg_ac: pair_negativity(rho, QubitPair::AC)?,
        neg_bc: pair_negativity(rho, QubitPair::BC)?,
        trace_residual,
    })
}
