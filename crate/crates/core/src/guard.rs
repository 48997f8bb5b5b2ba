//! Size guards for the exponential or enumerative routines.
//!
//! Defaults can be overridden through the `CAYLEYNET_GUARD` environment
//! variable, a comma-separated list of `key=value` pairs such as
//! `closure=5000000,aut_vertices=400`.

use crate::error::{Error, Result};

pub const GUARD_ENV: &str = "CAYLEYNET_GUARD";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guards {
    /// Maximum number of group elements produced by a closure.
    pub closure: usize,
    /// Maximum vertex count accepted by automorphism and isomorphism search.
    pub aut_vertices: usize,
    /// Maximum number of automorphisms stored.
    pub aut_order: usize,
    /// Maximum number of search-tree nodes visited by one automorphism search.
    pub search_nodes: usize,
    /// Atom enumeration limits.
    pub atom_vertices: usize,
    pub atom_kappa: usize,
    /// Work budget (sum over BFS sources of |V| + |E|) for exact diameter.
    pub diameter_work: u64,
    /// Node budget for the regular-subgroup search.
    pub regular_subgroup_nodes: usize,
    /// Maximum |H| for brute-force Aut(H, S).
    pub aut_hs_group: usize,
    /// Maximum k-arcs enumerated by the transitivity report.
    pub arc_count: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            closure: 10_000_000,
            aut_vertices: 200,
            aut_order: 2_000_000,
            search_nodes: 20_000_000,
            atom_vertices: 24,
            atom_kappa: 5,
            diameter_work: 20_000_000_000,
            regular_subgroup_nodes: 200_000,
            aut_hs_group: 100_000,
            arc_count: 2_000_000,
        }
    }
}

impl Guards {
    /// Defaults overridden by `CAYLEYNET_GUARD` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(GUARD_ENV) {
            Ok(text) => Guards::default().with_overrides(&text),
            Err(_) => Ok(Guards::default()),
        }
    }

    pub fn with_overrides(mut self, text: &str) -> Result<Self> {
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("guard override `{item}` is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("guard value `{value}` is not an integer")))?;
            let v = value as usize;
            match key.trim() {
                "closure" => self.closure = v,
                "aut_vertices" => self.aut_vertices = v,
                "aut_order" => self.aut_order = v,
                "search_nodes" => self.search_nodes = v,
                "atom_vertices" => self.atom_vertices = v,
                "atom_kappa" => self.atom_kappa = v,
                "diameter_work" => self.diameter_work = value,
                "regular_subgroup_nodes" => self.regular_subgroup_nodes = v,
                "aut_hs_group" => self.aut_hs_group = v,
                "arc_count" => self.arc_count = v,
                other => return Err(Error::Parse(format!("unknown guard `{other}`"))),
            }
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let g = Guards::default()
            .with_overrides("closure=10, atom_kappa=3")
            .unwrap();
        assert_eq!(g.closure, 10);
        assert_eq!(g.atom_kappa, 3);
        assert_eq!(g.aut_vertices, 200);
        assert!(Guards::default().with_overrides("bogus=1").is_err());
        assert!(Guards::default().with_overrides("closure").is_err());
    }
}
