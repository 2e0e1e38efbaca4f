//! State evolution, measurement statistics and the quantum hitting time.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, SqwError};
use crate::linalg::CVec;
use crate::operator::Operator;
use crate::tessellation::TOL_VERIFY;

/// Complex amplitude per vertex with unit 2-norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: CVec,
}

impl StateVector {
    /// Normalizes the supplied amplitudes; zero norm is unrecoverable.
    pub fn new(amps: CVec) -> Result<Self> {
        let norm = amps.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(SqwError::NotNormalized(norm));
        }
        Ok(StateVector { amps: amps / Complex64::new(norm, 0.0) })
    }

    /// Basis state |k>.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(SqwError::VertexOutOfRange { vertex: k, n });
        }
        let mut amps = CVec::zeros(n);
        amps[k] = Complex64::ONE;
        Ok(StateVector { amps })
    }

    /// Accepts an evolved vector without renormalizing, so that norm
    /// drift is detected instead of silently absorbed.
    pub(crate) fn from_evolved(amps: CVec) -> Result<Self> {
        let norm = amps.norm();
        if (norm - 1.0).abs() > TOL_VERIFY {
            return Err(SqwError::NotNormalized(norm));
        }
        Ok(StateVector { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// Squared 2-norm distance to another state.
    pub fn distance_sq(&self, other: &StateVector) -> f64 {
        (&self.amps - &other.amps).norm_squared()
    }
}

/// Amplitude 1/sqrt(n) on every vertex.
pub fn uniform_state(n: usize) -> Result<StateVector> {
    if n == 0 {
        return Err(SqwError::DimensionMismatch { expected: 1, got: 0 });
    }
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    Ok(StateVector { amps: CVec::from_element(n, amp) })
}

/// Born-rule readout: p_k = |psi_k|^2.
pub fn vertex_distribution(psi: &StateVector) -> Result<Vec<f64>> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > TOL_VERIFY {
        return Err(SqwError::NotNormalized(norm));
    }
    Ok(psi.amps.iter().map(|a| a.norm_sqr()).collect())
}

/// States psi(0), ..., psi(steps) by repeated application of `u`.
/// The operator is checked for unitarity once; per-step norms are
/// verified to catch accumulation.
pub fn evolve(u: &Operator, psi0: &StateVector, steps: usize) -> Result<Vec<StateVector>> {
    if u.dim() != psi0.dim() {
        return Err(SqwError::DimensionMismatch { expected: u.dim(), got: psi0.dim() });
    }
    let defect = u.unitarity_defect();
    if defect > TOL_VERIFY {
        return Err(SqwError::NotUnitary(defect));
    }
    let mut trajectory = Vec::with_capacity(steps + 1);
    trajectory.push(psi0.clone());
    for _ in 0..steps {
        let next = u.apply_vec(trajectory.last().unwrap().amplitudes());
        trajectory.push(StateVector::from_evolved(next)?);
    }
    Ok(trajectory)
}

/// Result of a hitting-time run. `trace[t]` is the running average
/// F(t) = (1/(t+1)) * sum_{s<=t} ||psi(s) - psi(0)||^2; the hitting time
/// is the first t where it reaches 1 - |M|/N.
#[derive(Debug, Clone, Serialize)]
pub struct HittingTimeResult {
    #[serde(rename = "T")]
    pub steps: Option<usize>,
    pub threshold: f64,
    pub trace: Vec<f64>,
    #[serde(skip)]
    pub converged: bool,
}

/// Smallest T <= t_max with F(T) >= 1 - marked_count/n, evolving under
/// `u_m` by repeated application. The accumulated sum uses compensated
/// summation so long traces stay stable.
pub fn hitting_time(
    u_m: &Operator,
    psi0: &StateVector,
    marked_count: usize,
    n: usize,
    t_max: usize,
) -> Result<HittingTimeResult> {
    if marked_count == 0 || marked_count > n {
        return Err(SqwError::InvalidMarkedCount { marked: marked_count, n });
    }
    if u_m.dim() != psi0.dim() {
        return Err(SqwError::DimensionMismatch { expected: u_m.dim(), got: psi0.dim() });
    }
    let defect = u_m.unitarity_defect();
    if defect > TOL_VERIFY {
        return Err(SqwError::NotUnitary(defect));
    }

    let threshold = 1.0 - marked_count as f64 / n as f64;
    let mut trace = Vec::with_capacity(t_max + 1);
    let mut psi = psi0.clone();
    let mut sum = 0.0f64;
    let mut carry = 0.0f64; // Kahan compensation
    for t in 0..=t_max {
        if t > 0 {
            psi = StateVector::from_evolved(u_m.apply_vec(psi.amplitudes()))?;
        }
        let term = psi.distance_sq(psi0) - carry;
        let fresh = sum + term;
        carry = (fresh - sum) - term;
        sum = fresh;
        let f_t = sum / (t + 1) as f64;
        trace.push(f_t);
        if f_t >= threshold {
            return Ok(HittingTimeResult { steps: Some(t), threshold, trace, converged: true });
        }
    }
    Ok(HittingTimeResult { steps: None, threshold, trace, converged: false })
}

/// Default step cap: classical hitting times at desk scale are O(N^2),
/// so ten times that bounds any sensible quantum run.
pub fn default_t_max(n: usize) -> usize {
    10 * n * n
}
