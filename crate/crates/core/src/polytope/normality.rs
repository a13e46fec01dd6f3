//! Dilations and the normality test `(P ∩ M) + (kP ∩ M) = (k+1)P ∩ M`.

use std::collections::BTreeSet;

use super::LatticePolytope;
use crate::linalg::{Int, IntVector};

/// Very ampleness is only ever certified through normality, so there is no
/// definite negative answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VeryAmple {
    Yes,
    Inconclusive,
}

impl VeryAmple {
    pub fn as_str(self) -> &'static str {
        match self {
            VeryAmple::Yes => "true",
            VeryAmple::Inconclusive => "inconclusive",
        }
    }
}

impl LatticePolytope {
    /// Lattice points of `k * P`, sorted. `k = 0` gives the origin.
    pub fn dilation_points(&self, k: u32) -> Vec<IntVector> {
        self.scaled_points(&Int::from(k), None)
    }

    /// `max(n - 1, 1)`.
    pub fn default_normality_bound(&self) -> u32 {
        (self.dim as u32).saturating_sub(1).max(1)
    }

    /// Checks the sum-set identity for every `1 <= k <= kmax`.
    pub fn is_normal(&self, kmax: u32) -> bool {
        self.first_normality_failure(kmax).is_none()
    }

    /// Smallest `k` at which `(k+1)P` has a lattice point that is not a sum.
    pub fn first_normality_failure(&self, kmax: u32) -> Option<u32> {
        let base = self.lattice_points();
        let mut layer = base.clone();
        for k in 1..=kmax {
            let sums: BTreeSet<IntVector> = base
                .iter()
                .flat_map(|a| layer.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
                .collect();
            let next = self.dilation_points(k + 1);
            if sums.len() != next.len() || !next.iter().all(|p| sums.contains(p)) {
                return Some(k);
            }
            layer = next;
        }
        None
    }

    pub fn is_very_ample(&self) -> VeryAmple {
        self.very_ample_with_bound(self.default_normality_bound())
    }

    pub fn very_ample_with_bound(&self, kmax: u32) -> VeryAmple {
        if self.is_normal(kmax) {
            VeryAmple::Yes
        } else {
            VeryAmple::Inconclusive
        }
    }
}
