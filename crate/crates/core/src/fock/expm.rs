//! Matrix exponentials of truncated generators.
//!
//! [`expm`] forms the full operator by scaling and squaring around a Taylor
//! core; [`expm_apply`] evolves a single vector without ever materializing
//! the exponential, which is what the identity checks use on larger spaces.

use std::sync::Arc;

use num_complex::Complex64;

use super::operator::LinearOperator;
use super::state::StateVector;
use crate::error::{Error, Result};

/// Scaled 1-norm targeted before the Taylor core runs.
const SCALED_NORM: f64 = 0.5;
/// Relative size of the last Taylor term kept.
const SERIES_TOL: f64 = 1e-17;
const MAX_ORDER: usize = 80;

/// `exp(scale · g)` by scaling and squaring.
pub fn expm(g: &LinearOperator, scale: Complex64) -> Result<LinearOperator> {
    let a = g.scaled(scale);
    let norm = a.norm_one();
    if !norm.is_finite() {
        return Err(Error::Numerical("generator norm is not finite".into()));
    }
    let identity = LinearOperator::identity(a.space());
    if norm == 0.0 {
        return Ok(identity);
    }
    let squarings = if norm > SCALED_NORM { (norm / SCALED_NORM).log2().ceil() as i32 } else { 0 };
    let b = a.scaled(Complex64::new(2f64.powi(-squarings), 0.0));

    let mut sum = identity.clone();
    let mut term = identity;
    let mut converged = false;
    for k in 1..=MAX_ORDER {
        term = term.try_mul(&b)?.scaled(Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.try_add(&term)?;
        if term.norm_one() <= SERIES_TOL * sum.norm_one() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!("Taylor series did not converge within {MAX_ORDER} terms")));
    }
    for _ in 0..squarings {
        sum = sum.try_mul(&sum)?;
    }
    Ok(sum)
}

/// `exp(scale · g) ψ`, computed by splitting the exponent into unit-norm
/// steps and summing a Taylor series per step.
pub fn expm_apply(g: &LinearOperator, scale: Complex64, psi: &StateVector) -> Result<StateVector> {
    if **g.space() != **psi.space() {
        return Err(Error::SpaceMismatch);
    }
    let amplitudes = expm_apply_slice(g, scale, psi.amplitudes())?;
    StateVector::from_amplitudes(psi.space(), amplitudes)
}

pub(crate) fn expm_apply_slice(g: &LinearOperator, scale: Complex64, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let norm = g.norm_one() * scale.norm();
    if !norm.is_finite() {
        return Err(Error::Numerical("generator norm is not finite".into()));
    }
    if norm == 0.0 {
        return Ok(v.to_vec());
    }
    let steps = norm.ceil().max(1.0) as usize;
    let step_scale = scale / steps as f64;
    let mut w = v.to_vec();
    for _ in 0..steps {
        let mut term = w.clone();
        let mut converged = false;
        for k in 1..=MAX_ORDER {
            let factor = step_scale / k as f64;
            term = g.apply_slice(&term).into_iter().map(|x| x * factor).collect();
            let mut term_norm = 0.0f64;
            let mut sum_norm = 0.0f64;
            for (wi, ti) in w.iter_mut().zip(&term) {
                *wi += ti;
                term_norm = term_norm.max(ti.norm());
                sum_norm = sum_norm.max(wi.norm());
            }
            if term_norm <= SERIES_TOL * sum_norm || term_norm == 0.0 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numerical(format!("Taylor series did not converge within {MAX_ORDER} terms")));
        }
    }
    Ok(w)
}

/// Applies a sequence of exponentials `exp(s_1 g_1)`, then `exp(s_2 g_2)`, …
/// to a vector, in that order.
pub(crate) fn evolve(steps: &[(&LinearOperator, Complex64)], v: &[Complex64]) -> Result<Vec<Complex64>> {
    steps.iter().try_fold(v.to_vec(), |w, (g, s)| expm_apply_slice(g, *s, &w))
}

/// Columns `U e_j` of a product of exponentials, for the requested basis indices.
pub(crate) fn evolve_columns(
    space: &Arc<crate::fock::FockSpace>,
    steps: &[(&LinearOperator, Complex64)],
    columns: &[usize],
) -> Result<Vec<Vec<Complex64>>> {
    columns
        .iter()
        .map(|&j| {
            let mut e = vec![Complex64::new(0.0, 0.0); space.dimension()];
            e[j] = Complex64::new(1.0, 0.0);
            evolve(steps, &e)
        })
        .collect()
}
