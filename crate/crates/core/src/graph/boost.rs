//! Lift sequences that push the girth up.
//!
//! Each round lifts the current graph by the signing giving the largest girth
//! among the candidates: every signing when there are at most
//! `exhaustive_cap` of them, otherwise `samples` seeded random ones. Since a
//! lift never lowers the girth, the sequence is nondecreasing in girth.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::SeededRng;

use super::random::random_signing;
use super::{apply_lift, Graph, Signing};

#[derive(Clone, Debug)]
pub struct GirthBoostConfig {
    pub target: usize,
    /// Consecutive rounds without girth improvement before giving up.
    pub budget: usize,
    /// Signings drawn per round in sampling mode.
    pub samples: usize,
    pub exhaustive_cap: u64,
    /// Rounds stop before the lifted graph would exceed this many vertices.
    pub max_vertices: usize,
    pub seed: u64,
}

impl Default for GirthBoostConfig {
    fn default() -> Self {
        GirthBoostConfig {
            target: 3,
            budget: 3,
            samples: 2048,
            exhaustive_cap: 1 << 16,
            max_vertices: 1 << 12,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoostStatus {
    Reached,
    Unreached,
}

#[derive(Clone, Debug, Serialize)]
pub struct GirthBoost {
    pub graphs: Vec<Graph>,
    /// Girth of each graph; `None` is infinite.
    pub girths: Vec<Option<usize>>,
    /// Signing used for each step, as `±1` vectors.
    pub signings: Vec<Vec<i8>>,
    /// Whether each step scanned every signing.
    pub exhaustive: Vec<bool>,
    pub status: BoostStatus,
}

impl GirthBoost {
    pub fn last(&self) -> &Graph {
        self.graphs.last().expect("sequence starts with the input")
    }

    pub fn final_girth(&self) -> Option<usize> {
        *self.girths.last().expect("nonempty")
    }
}

fn reaches(girth: Option<usize>, target: usize) -> bool {
    girth.is_none_or(|g| g >= target)
}

fn girth_key(girth: Option<usize>) -> usize {
    girth.unwrap_or(usize::MAX)
}

fn best_signing(g: &Graph, cfg: &GirthBoostConfig, rng: &mut SeededRng) -> (Vec<i8>, Option<usize>, bool) {
    let m = g.m();
    let exhaustive = m < 64 && (1u64 << m) <= cfg.exhaustive_cap;
    let candidates: Vec<Vec<i8>> = if exhaustive {
        (0..1u64 << m)
            .map(|i| Signing::from_index(g, i).signs().to_vec())
            .collect()
    } else {
        (0..cfg.samples)
            .map(|_| random_signing(g, rng).signs().to_vec())
            .collect()
    };
    let girths: Vec<Option<usize>> = candidates
        .par_iter()
        .map(|s| apply_lift(&Signing::new(g, s.clone()).expect("valid")).girth())
        .collect();
    // first maximum: lexicographically smallest in exhaustive mode,
    // first drawn in sampling mode
    let mut best = 0;
    for (i, gi) in girths.iter().enumerate() {
        if girth_key(*gi) > girth_key(girths[best]) {
            best = i;
        }
    }
    (candidates[best].clone(), girths[best], exhaustive)
}

/// Builds `G = G₀, G₁, …` with each graph a 2-lift of the previous one,
/// until the girth reaches `target` or the stall budget runs out.
pub fn girth_boost(g: &Graph, cfg: &GirthBoostConfig) -> Result<GirthBoost> {
    if !g.is_connected() {
        return Err(Error::InvalidArgument("girth boosting needs a connected graph".into()));
    }
    let mut rng = SeededRng::new(cfg.seed);
    let mut out = GirthBoost {
        graphs: vec![g.clone()],
        girths: vec![g.girth()],
        signings: Vec::new(),
        exhaustive: Vec::new(),
        status: BoostStatus::Unreached,
    };
    let mut stale = 0;
    while !reaches(out.final_girth(), cfg.target) {
        let current = out.last().clone();
        if stale >= cfg.budget || 2 * current.n() > cfg.max_vertices || current.m() == 0 {
            return Ok(out);
        }
        let before = out.final_girth();
        let (signs, girth, exhaustive) = best_signing(&current, cfg, &mut rng);
        let lifted = apply_lift(&Signing::new(&current, signs.clone())?);
        if girth_key(girth) > girth_key(before) {
            stale = 0;
        } else {
            stale += 1;
        }
        out.graphs.push(lifted);
        out.girths.push(girth);
        out.signings.push(signs);
        out.exhaustive.push(exhaustive);
    }
    out.status = BoostStatus::Reached;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    #[test]
    fn already_satisfied_returns_input() {
        let cfg = GirthBoostConfig { target: 5, ..Default::default() };
        let r = girth_boost(&cycle(5), &cfg).unwrap();
        assert_eq!(r.graphs.len(), 1);
        assert_eq!(r.status, BoostStatus::Reached);
    }

    #[test]
    fn k4_reaches_girth_four_in_one_step() {
        let cfg = GirthBoostConfig { target: 4, ..Default::default() };
        let r = girth_boost(&complete(4), &cfg).unwrap();
        assert_eq!(r.status, BoostStatus::Reached);
        assert_eq!(r.graphs.len(), 2);
        assert!(r.final_girth().unwrap() >= 4);
        assert!(r.exhaustive[0]);
    }

    #[test]
    fn girth_is_nondecreasing_and_graphs_are_lifts() {
        let cfg = GirthBoostConfig { target: 6, ..Default::default() };
        let r = girth_boost(&complete(4), &cfg).unwrap();
        assert_eq!(r.status, BoostStatus::Reached);
        for w in r.girths.windows(2) {
            assert!(girth_key(w[1]) >= girth_key(w[0]));
        }
        for (i, s) in r.signings.iter().enumerate() {
            let lifted = apply_lift(&Signing::new(&r.graphs[i], s.clone()).unwrap());
            assert_eq!(lifted, r.graphs[i + 1]);
            assert_eq!(lifted.regular_degree(), Some(3));
        }
    }

    #[test]
    fn unreachable_target_is_flagged() {
        let cfg = GirthBoostConfig {
            target: 50,
            max_vertices: 64,
            ..Default::default()
        };
        let r = girth_boost(&complete(4), &cfg).unwrap();
        assert_eq!(r.status, BoostStatus::Unreached);
        assert!(r.graphs.len() >= 2);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = super::super::disjoint_union(&cycle(3), &cycle(3));
        assert!(girth_boost(&g, &GirthBoostConfig::default()).is_err());
    }
}
