use std::fmt;

use crate::error::{Error, Result};

/// Default ceiling on the number of basis states a space may hold.
pub const DEFAULT_MAX_DIMENSION: usize = 10_000_000;

/// Environment variable that overrides [`DEFAULT_MAX_DIMENSION`].
pub const MAX_DIM_ENV: &str = "SU11_MAX_DIM";

/// Capacity limit in effect: `SU11_MAX_DIM` if set and parseable, else the default.
pub fn max_dimension() -> usize {
    std::env::var(MAX_DIM_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_DIMENSION)
}

/// A truncated multimode bosonic Fock space.
///
/// Each mode holds `0..cutoff` photons. An optional total-photon cap further
/// removes every occupation vector whose photon sum exceeds the cap. Basis
/// vectors are enumerated in lexicographic order of their occupations (the
/// first mode is the most significant digit).
#[derive(Clone)]
pub struct FockSpace {
    num_modes: usize,
    cutoff: u32,
    total_photon_cap: Option<u32>,
    // Flattened occupations, `num_modes` entries per basis state.
    occupations: Vec<u32>,
    totals: Vec<u32>,
}

impl FockSpace {
    /// Builds a space under the capacity limit from [`max_dimension`].
    pub fn new(num_modes: usize, cutoff: u32, total_photon_cap: Option<u32>) -> Result<Self> {
        Self::with_limit(num_modes, cutoff, total_photon_cap, max_dimension())
    }

    pub fn with_limit(num_modes: usize, cutoff: u32, total_photon_cap: Option<u32>, max_dim: usize) -> Result<Self> {
        if num_modes == 0 {
            return Err(Error::InvalidArgument("a Fock space needs at least one mode".into()));
        }
        if cutoff < 2 {
            return Err(Error::InvalidArgument(format!("cutoff must be at least 2, got {cutoff}")));
        }
        let dim = count_states(num_modes, cutoff, total_photon_cap, max_dim).ok_or_else(|| {
            Error::Capacity(format!(
                "{num_modes} modes with cutoff {cutoff} (cap {total_photon_cap:?}) exceed {max_dim} basis states"
            ))
        })?;

        let mut occupations = Vec::with_capacity(dim * num_modes);
        let mut totals = Vec::with_capacity(dim);
        let mut current = vec![0u32; num_modes];
        let mut total = 0u32;
        loop {
            if total_photon_cap.is_none_or(|cap| total <= cap) {
                occupations.extend_from_slice(&current);
                totals.push(total);
            }
            // Odometer step, last mode fastest. Once the cap is exceeded, the
            // remaining digits of the current prefix only grow the total.
            let mut m = num_modes;
            loop {
                if m == 0 {
                    debug_assert_eq!(totals.len(), dim);
                    return Ok(FockSpace { num_modes, cutoff, total_photon_cap, occupations, totals });
                }
                m -= 1;
                let over_cap = total_photon_cap.is_some_and(|cap| total + 1 > cap);
                if current[m] + 1 < cutoff && !over_cap {
                    current[m] += 1;
                    total += 1;
                    break;
                }
                total -= current[m];
                current[m] = 0;
            }
        }
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn total_photon_cap(&self) -> Option<u32> {
        self.total_photon_cap
    }

    pub fn dimension(&self) -> usize {
        self.totals.len()
    }

    /// Largest photon number any single basis state can carry.
    pub fn max_total_photons(&self) -> u32 {
        let per_mode = (self.cutoff - 1) * self.num_modes as u32;
        self.total_photon_cap.map_or(per_mode, |cap| cap.min(per_mode))
    }

    /// Largest photon number that can sit in one mode.
    pub fn max_single_mode_photons(&self) -> u32 {
        let per_mode = self.cutoff - 1;
        self.total_photon_cap.map_or(per_mode, |cap| cap.min(per_mode))
    }

    /// Photon bound below which products of two quadratic generators never
    /// touch the truncation edge: `d − 3`, or `cap − 2` when that is tighter.
    pub fn default_safe_bound(&self) -> u32 {
        let per_mode = self.cutoff.saturating_sub(3);
        self.total_photon_cap.map_or(per_mode, |cap| per_mode.min(cap.saturating_sub(2)))
    }

    pub fn occupation(&self, index: usize) -> &[u32] {
        &self.occupations[index * self.num_modes..(index + 1) * self.num_modes]
    }

    pub fn total_photons(&self, index: usize) -> u32 {
        self.totals[index]
    }

    /// Dense index of an occupation vector, if it belongs to the space.
    pub fn index_of(&self, occupation: &[u32]) -> Option<usize> {
        if occupation.len() != self.num_modes {
            return None;
        }
        let (mut lo, mut hi) = (0, self.dimension());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.occupation(mid).cmp(occupation) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn check_mode(&self, mode: usize) -> Result<()> {
        if mode < self.num_modes {
            Ok(())
        } else {
            Err(Error::BadMode { mode, num_modes: self.num_modes })
        }
    }

    /// Indices of basis states with at most `bound` photons in total.
    pub fn indices_up_to(&self, bound: u32) -> Vec<usize> {
        (0..self.dimension()).filter(|&i| self.totals[i] <= bound).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.occupations.chunks_exact(self.num_modes)
    }
}

impl PartialEq for FockSpace {
    fn eq(&self, other: &Self) -> bool {
        self.num_modes == other.num_modes
            && self.cutoff == other.cutoff
            && self.total_photon_cap == other.total_photon_cap
    }
}

impl fmt::Debug for FockSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FockSpace")
            .field("num_modes", &self.num_modes)
            .field("cutoff", &self.cutoff)
            .field("total_photon_cap", &self.total_photon_cap)
            .field("dimension", &self.dimension())
            .finish()
    }
}

/// Number of basis states, or `None` once it exceeds `limit`.
fn count_states(num_modes: usize, cutoff: u32, cap: Option<u32>, limit: usize) -> Option<usize> {
    match cap {
        None => {
            let mut dim: usize = 1;
            for _ in 0..num_modes {
                dim = dim.checked_mul(cutoff as usize)?;
                if dim > limit {
                    return None;
                }
            }
            Some(dim)
        }
        Some(cap) => {
            // ways[t] = number of occupation prefixes with total t.
            let cap = cap as usize;
            let mut ways = vec![0usize; cap + 1];
            ways[0] = 1;
            for _ in 0..num_modes {
                let mut next = vec![0usize; cap + 1];
                for (t, &w) in ways.iter().enumerate() {
                    if w == 0 {
                        continue;
                    }
                    for n in 0..cutoff as usize {
                        if t + n > cap {
                            break;
                        }
                        next[t + n] = next[t + n].checked_add(w)?;
                    }
                }
                ways = next;
            }
            let dim = ways.iter().try_fold(0usize, |acc, &w| acc.checked_add(w))?;
            (dim <= limit).then_some(dim)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(FockSpace::new(1, 2, None).unwrap().dimension(), 2);
        assert_eq!(FockSpace::new(3, 4, None).unwrap().dimension(), 64);
    }

    #[test]
    fn capped_dimension_matches_brute_force() {
        let space = FockSpace::new(3, 6, Some(5)).unwrap();
        let mut brute = 0;
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    if a + b + c <= 5 {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(brute, 56);
        assert_eq!(space.dimension(), brute);
    }

    #[test]
    fn lexicographic_order() {
        let space = FockSpace::new(2, 3, None).unwrap();
        let occ: Vec<Vec<u32>> = space.iter().map(|o| o.to_vec()).collect();
        assert_eq!(occ[0], vec![0, 0]);
        assert_eq!(occ[1], vec![0, 1]);
        assert_eq!(occ[3], vec![1, 0]);
        assert!(occ.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn index_round_trip() {
        let space = FockSpace::new(4, 4, Some(6)).unwrap();
        for i in 0..space.dimension() {
            assert_eq!(space.index_of(space.occupation(i)), Some(i));
        }
        assert_eq!(space.index_of(&[3, 3, 1, 0]), None);
        assert_eq!(space.index_of(&[0, 0]), None);
    }

    #[test]
    fn capacity_and_argument_errors() {
        assert!(matches!(FockSpace::with_limit(10, 10, None, 1000), Err(Error::Capacity(_))));
        assert!(matches!(FockSpace::with_limit(5, 10, Some(9), 100), Err(Error::Capacity(_))));
        assert!(matches!(FockSpace::new(0, 4, None), Err(Error::InvalidArgument(_))));
        assert!(matches!(FockSpace::new(2, 1, None), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn safe_bounds() {
        assert_eq!(FockSpace::new(2, 6, None).unwrap().default_safe_bound(), 3);
        assert_eq!(FockSpace::new(2, 8, Some(5)).unwrap().default_safe_bound(), 3);
    }
}
