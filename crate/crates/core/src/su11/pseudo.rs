use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{annihilation, FockSpace, LinearOperator};

/// Tolerance on `Σ|c_l|² = 1` for caller-supplied coefficient vectors.
pub const PSEUDO_NORM_TOL: f64 = 1e-12;

/// A normalized combination `Â = Σ_l c_l â_l` of annihilation operators.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoBoson {
    modes: Vec<usize>,
    coefficients: Vec<Complex64>,
}

/// Chain coefficients `c_l = (−1)^{l−1}/√(2^l)` for `l < r` and
/// `c_r = (−1)^{r−1}/√(2^{r−1})`, as `(sign, exponent)` pairs meaning
/// `sign / √(2^exponent)`.
fn chain_terms(r: usize) -> Vec<(f64, u32)> {
    (1..=r)
        .map(|l| {
            let sign = if (l - 1) % 2 == 0 { 1.0 } else { -1.0 };
            let exponent = if l < r { l } else { r - 1 } as u32;
            (sign, exponent)
        })
        .collect()
}

/// Coefficients of the beamsplitter-chain pseudo-boson over `r ≥ 2` modes.
pub fn chain_coefficients(r: usize) -> Result<Vec<f64>> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("pseudo-boson chain needs r >= 2, got {r}")));
    }
    if r > 127 {
        return Err(Error::InvalidArgument(format!("pseudo-boson chain of length {r} is too long")));
    }
    let terms = chain_terms(r);
    // Σ c_l² over the common denominator 2^{r−1} is Σ 2^{r−1−e_l} = 2^{r−1}.
    let numerator: u128 = terms.iter().map(|&(_, e)| 1u128 << (r as u32 - 1 - e)).sum();
    debug_assert_eq!(numerator, 1u128 << (r - 1));
    Ok(terms.into_iter().map(|(sign, e)| sign / 2f64.powi(e as i32).sqrt()).collect())
}

impl PseudoBoson {
    pub fn new(modes: Vec<usize>, coefficients: Vec<Complex64>) -> Result<Self> {
        if modes.is_empty() || modes.len() != coefficients.len() {
            return Err(Error::InvalidArgument("pseudo-boson needs one coefficient per mode".into()));
        }
        let mut sorted = modes.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("pseudo-boson modes must be distinct".into()));
        }
        let norm: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > PSEUDO_NORM_TOL {
            return Err(Error::InvalidArgument(format!("pseudo-boson coefficients have Σ|c|² = {norm}")));
        }
        Ok(PseudoBoson { modes, coefficients })
    }

    /// The chain pseudo-boson over `modes` (in order `l = 1..r`), `r ≥ 2`.
    pub fn chain(modes: Vec<usize>) -> Result<Self> {
        let coefficients = chain_coefficients(modes.len())?;
        Self::new(modes, coefficients.into_iter().map(|c| Complex64::new(c, 0.0)).collect())
    }

    /// A bare mode, `Â = â_m`.
    pub fn single(mode: usize) -> Self {
        PseudoBoson { modes: vec![mode], coefficients: vec![Complex64::new(1.0, 0.0)] }
    }

    /// The chain for `r ≥ 2` modes, or the bare mode when `r = 1`.
    pub fn default_for(modes: Vec<usize>) -> Result<Self> {
        match modes.len() {
            1 => Ok(Self::single(modes[0])),
            _ => Self::chain(modes),
        }
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn overlaps(&self, other: &PseudoBoson) -> bool {
        self.modes.iter().any(|m| other.modes.contains(m))
    }

    pub fn annihilation(&self, space: &Arc<FockSpace>) -> Result<LinearOperator> {
        let mut acc = LinearOperator::zero(space);
        for (&m, &c) in self.modes.iter().zip(&self.coefficients) {
            acc = acc.linear_combination(Complex64::new(1.0, 0.0), &annihilation(space, m)?, c)?;
        }
        Ok(acc)
    }

    pub fn creation(&self, space: &Arc<FockSpace>) -> Result<LinearOperator> {
        Ok(self.annihilation(space)?.adjoint())
    }

    /// Pseudo-number operator `Â†Â`.
    pub fn number(&self, space: &Arc<FockSpace>) -> Result<LinearOperator> {
        let a = self.annihilation(space)?;
        Ok(a.adjoint().try_mul(&a)?.with_hermitian_hint(true))
    }
}
