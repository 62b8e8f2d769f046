use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which pseudo-mode carries the surplus photons.
///
/// `APlus` covers `n_A ≥ n_B` (including the single `k = 1/2` copy);
/// `BPlus` covers `n_B > n_A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "A")]
    APlus,
    #[serde(rename = "B")]
    BPlus,
}

/// Irrep of the positive discrete series, stored as `2k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLabel {
    two_k: u32,
    branch: Branch,
}

impl IrrepLabel {
    pub fn new(two_k: u32, branch: Branch) -> Result<Self> {
        if two_k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        if branch == Branch::BPlus && two_k == 1 {
            return Err(Error::InvalidArgument("k = 1/2 occurs only once, on the A branch".into()));
        }
        Ok(IrrepLabel { two_k, branch })
    }

    pub fn two_k(&self) -> u32 {
        self.two_k
    }

    pub fn k(&self) -> f64 {
        self.two_k as f64 / 2.0
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// Casimir eigenvalue `k(k − 1)`.
    pub fn casimir_eigenvalue(&self) -> f64 {
        let k = self.k();
        k * (k - 1.0)
    }
}

/// Weight `μ = k + m` inside an irrep, stored as `2μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightLabel {
    irrep: IrrepLabel,
    two_mu: u32,
}

impl WeightLabel {
    pub fn new(two_k: u32, two_mu: u32, branch: Branch) -> Result<Self> {
        let irrep = IrrepLabel::new(two_k, branch)?;
        if two_mu < two_k || !(two_mu - two_k).is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("weight 2μ = {two_mu} is not 2k + 2m for 2k = {two_k}")));
        }
        Ok(WeightLabel { irrep, two_mu })
    }

    /// Labels carried by the pseudo-number state `|n_A, n_B}`:
    /// `k = (|n_A − n_B| + 1)/2`, `μ = (n_A + n_B + 1)/2`. Ties go to `APlus`.
    pub fn from_occupations(n_a: u32, n_b: u32) -> Self {
        let branch = if n_a >= n_b { Branch::APlus } else { Branch::BPlus };
        WeightLabel { irrep: IrrepLabel { two_k: n_a.abs_diff(n_b) + 1, branch }, two_mu: n_a + n_b + 1 }
    }

    /// Inverse of [`WeightLabel::from_occupations`]: `(n_A, n_B)`.
    pub fn pseudo_occupations(&self) -> (u32, u32) {
        let high = (self.irrep.two_k + self.two_mu) / 2 - 1; // k + μ − 1
        let low = (self.two_mu - self.irrep.two_k) / 2; // μ − k
        match self.irrep.branch {
            Branch::APlus => (high, low),
            Branch::BPlus => (low, high),
        }
    }

    pub fn irrep(&self) -> IrrepLabel {
        self.irrep
    }

    pub fn two_k(&self) -> u32 {
        self.irrep.two_k
    }

    pub fn two_mu(&self) -> u32 {
        self.two_mu
    }

    pub fn k(&self) -> f64 {
        self.irrep.k()
    }

    pub fn mu(&self) -> f64 {
        self.two_mu as f64 / 2.0
    }

    pub fn branch(&self) -> Branch {
        self.irrep.branch
    }

    /// The label one step up the ladder, `μ → μ + 1`.
    pub fn raised(&self) -> Self {
        WeightLabel { irrep: self.irrep, two_mu: self.two_mu + 2 }
    }

    /// `√((μ + k)(μ − k + 1))`, the matrix element of `K₊` into `μ + 1`.
    pub fn raising_coefficient(&self) -> f64 {
        let (k, mu) = (self.k(), self.mu());
        ((mu + k) * (mu - k + 1.0)).sqrt()
    }

    /// `√((μ − k)(μ + k − 1))`, the matrix element of `K₋` into `μ − 1`.
    pub fn lowering_coefficient(&self) -> f64 {
        let (k, mu) = (self.k(), self.mu());
        ((mu - k) * (mu + k - 1.0)).sqrt()
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let branch = match self.branch() {
            Branch::APlus => "A",
            Branch::BPlus => "B",
        };
        write!(f, "|k={}/2, mu={}/2; {branch}>", self.two_k(), self.two_mu)
    }
}

/// Every weight label whose pseudo-occupations satisfy `n_A + n_B ≤ max_total`
/// and `n_A, n_B ≤ max_single`, ordered by `(n_A, n_B)`.
pub fn labels_up_to(max_total: u32, max_single: u32) -> Vec<WeightLabel> {
    let mut out = Vec::new();
    for n_a in 0..=max_single.min(max_total) {
        for n_b in 0..=max_single.min(max_total - n_a) {
            out.push(WeightLabel::from_occupations(n_a, n_b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn occupation_examples() {
        let vac = WeightLabel::from_occupations(0, 0);
        assert_eq!((vac.two_k(), vac.two_mu(), vac.branch()), (1, 1, Branch::APlus));
        let l = WeightLabel::from_occupations(3, 1);
        assert_eq!((l.two_k(), l.two_mu(), l.branch()), (3, 5, Branch::APlus));
        let l = WeightLabel::from_occupations(1, 3);
        assert_eq!((l.two_k(), l.two_mu(), l.branch()), (3, 5, Branch::BPlus));
    }

    #[test]
    fn round_trip_through_pseudo_occupations() {
        for n_a in 0..8 {
            for n_b in 0..8 {
                let l = WeightLabel::from_occupations(n_a, n_b);
                assert_eq!(l.pseudo_occupations(), (n_a, n_b));
                assert_eq!(WeightLabel::new(l.two_k(), l.two_mu(), l.branch()).unwrap(), l);
            }
        }
    }

    #[test]
    fn invalid_labels() {
        assert!(WeightLabel::new(0, 1, Branch::APlus).is_err());
        assert!(WeightLabel::new(3, 4, Branch::APlus).is_err());
        assert!(WeightLabel::new(3, 1, Branch::APlus).is_err());
        assert!(WeightLabel::new(1, 3, Branch::BPlus).is_err());
    }

    #[test]
    fn casimir_values() {
        let l = WeightLabel::from_occupations(2, 0);
        assert_eq!(l.irrep().casimir_eigenvalue(), 0.75);
        assert_eq!(WeightLabel::from_occupations(0, 0).irrep().casimir_eigenvalue(), -0.25);
    }

    #[test]
    fn enumeration_counts() {
        // pairs (n_A, n_B) with n_A + n_B <= 3
        assert_eq!(labels_up_to(3, 3).len(), 10);
        // both occupations capped at 1
        assert_eq!(labels_up_to(3, 1).len(), 4);
    }
}
