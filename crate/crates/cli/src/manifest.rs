use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use pgcl_core::group::is_prime;
use pgcl_core::multiplier::MAX_HOMOLOGY_BOUND;

/// Families of in-class groups enumerated by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constructor {
    /// `ES(p,m,±)`.
    Extraspecial,
    /// `ES(p,m,±) x ElemAb(p,k)`, k ≥ 1.
    ExtraspecialTimesElemAb,
    /// `ES(p,m,±) . Cyc(p²)`, optionally `x ElemAb(p,k)`.
    CentralCyclic,
}

impl Constructor {
    pub const ALL: [Constructor; 3] =
        [Constructor::Extraspecial, Constructor::ExtraspecialTimesElemAb, Constructor::CentralCyclic];

    pub fn name(self) -> &'static str {
        match self {
            Constructor::Extraspecial => "extraspecial",
            Constructor::ExtraspecialTimesElemAb => "extraspecial-times-elem-ab",
            Constructor::CentralCyclic => "central-cyclic",
        }
    }

    pub fn from_name(s: &str) -> Option<Constructor> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepManifest {
    pub primes: Vec<u64>,
    pub max_order: usize,
    pub homology_bound: usize,
    pub constructors: Vec<Constructor>,
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
    #[serde(skip)]
    pub workers: usize,
}

impl Default for SweepManifest {
    fn default() -> Self {
        SweepManifest {
            primes: vec![2, 3],
            max_order: 64,
            homology_bound: pgcl_core::multiplier::DEFAULT_HOMOLOGY_BOUND,
            constructors: Constructor::ALL.to_vec(),
            out_dir: None,
            workers: 1,
        }
    }
}

impl SweepManifest {
    pub fn validate(&self) -> Result<(), String> {
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return Err(format!("{p} is not prime"));
        }
        if self.homology_bound > MAX_HOMOLOGY_BOUND {
            return Err(format!("homology bound {} exceeds {MAX_HOMOLOGY_BOUND}", self.homology_bound));
        }
        if self.max_order > pgcl_core::group::MAX_ORDER {
            return Err(format!("max order {} exceeds {}", self.max_order, pgcl_core::group::MAX_ORDER));
        }
        if self.workers == 0 {
            return Err("worker count must be positive".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SweepManifest::default().validate().is_ok());
        let bad = SweepManifest { primes: vec![4], ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SweepManifest { homology_bound: 200, ..Default::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn constructor_names_round_trip() {
        for c in Constructor::ALL {
            assert_eq!(Constructor::from_name(c.name()), Some(c));
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(json, format!("\"{}\"", c.name()));
        }
    }
}
