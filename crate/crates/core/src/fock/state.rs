use std::sync::Arc;

use num_complex::Complex64;

use super::space::FockSpace;
use crate::error::{Error, Result};

/// Tolerance for calling a state normalized.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Dense amplitude vector over the basis of a [`FockSpace`].
#[derive(Clone, Debug)]
pub struct StateVector {
    space: Arc<FockSpace>,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(space: &Arc<FockSpace>) -> Self {
        StateVector { space: Arc::clone(space), amplitudes: vec![Complex64::new(0.0, 0.0); space.dimension()] }
    }

    pub fn vacuum(space: &Arc<FockSpace>) -> Self {
        let mut psi = Self::zero(space);
        psi.amplitudes[0] = Complex64::new(1.0, 0.0);
        psi
    }

    /// The number state with the given occupations.
    pub fn basis(space: &Arc<FockSpace>, occupation: &[u32]) -> Result<Self> {
        let index = space
            .index_of(occupation)
            .ok_or_else(|| Error::Capacity(format!("occupation {occupation:?} is not in the truncated space")))?;
        let mut psi = Self::zero(space);
        psi.amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(psi)
    }

    pub fn from_amplitudes(space: &Arc<FockSpace>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.dimension() {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes for a space of dimension {}",
                amplitudes.len(),
                space.dimension()
            )));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::Numerical("non-finite amplitude".into()));
        }
        Ok(StateVector { space: Arc::clone(space), amplitudes })
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude_of(&self, occupation: &[u32]) -> Complex64 {
        self.space.index_of(occupation).map_or(Complex64::new(0.0, 0.0), |i| self.amplitudes[i])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORMALIZATION_TOL
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::Numerical("cannot normalize the zero vector".into()));
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        StateVector { space: Arc::clone(&self.space), amplitudes: self.amplitudes.iter().map(|a| a * factor).collect() }
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if *self.space != *other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// Largest amplitude difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        if *self.space != *other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }
}
