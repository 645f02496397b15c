//! Random instances: `G(n, p)` graphs, `⌊cn⌋` colors, and each color placed
//! in each list independently with probability `q`.
//!
//! Draw order is fixed so that a seed always produces the same instance:
//! edges in lexicographic pair order, then list memberships in
//! `(vertex, color)` order, then empty-list repairs, then weights.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{build_instance, Color, Instance};

/// Name of the generator algorithm, echoed in generated files.
pub const PRNG_NAME: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightMode {
    Unit,
    /// Independent uniform integers in `lo..=hi`.
    Uniform { lo: u64, hi: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmptyListPolicy {
    /// Give the vertex one uniformly random color.
    Repair,
    /// Throw the whole instance away and draw again.
    Redraw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    pub p: f64,
    pub c: f64,
    pub q: f64,
    pub weights: WeightMode,
    pub seed: u64,
    pub empty_lists: EmptyListPolicy,
}

impl GenConfig {
    pub fn new(n: usize, p: f64, c: f64, q: f64, seed: u64) -> Self {
        GenConfig {
            n,
            p,
            c,
            q,
            weights: WeightMode::Unit,
            seed,
            empty_lists: EmptyListPolicy::Repair,
        }
    }

    pub fn num_colors(&self) -> usize {
        (self.c * self.n as f64).floor() as usize
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.p > 0.0 && self.p <= 1.0) {
            return bad(format!("edge probability p={} must lie in (0, 1]", self.p));
        }
        if !(self.q > 0.0 && self.q <= 1.0) {
            return bad(format!("membership probability q={} must lie in (0, 1]", self.q));
        }
        if !(self.c > 0.0) {
            return bad(format!("color ratio c={} must be positive", self.c));
        }
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.num_colors() == 0 {
            return bad(format!("floor(c*n) = floor({}*{}) is zero", self.c, self.n));
        }
        if let WeightMode::Uniform { lo, hi } = self.weights {
            if lo > hi {
                return bad(format!("weight range {lo}..={hi} is empty"));
            }
        }
        Ok(())
    }
}

pub fn generate(cfg: &GenConfig) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.n;
    let k = cfg.num_colors();
    loop {
        let mut graph = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < cfg.p {
                    graph.add_edge(u, v);
                }
            }
        }
        let mut lists: Vec<Vec<Color>> = (0..n)
            .map(|_| (0..k).filter(|_| rng.gen::<f64>() < cfg.q).collect())
            .collect();
        if lists.iter().any(Vec::is_empty) {
            if cfg.empty_lists == EmptyListPolicy::Redraw {
                continue;
            }
            for list in lists.iter_mut().filter(|l| l.is_empty()) {
                list.push(rng.gen_range(0..k));
            }
        }
        let weights = match cfg.weights {
            WeightMode::Unit => vec![1; k],
            WeightMode::Uniform { lo, hi } => (0..k).map(|_| rng.gen_range(lo..=hi)).collect(),
        };
        return build_instance(graph, weights, lists);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partition_colors;

    #[test]
    fn full_membership_is_a_gcp_instance() {
        let inst = generate(&GenConfig::new(12, 0.5, 1.0, 1.0, 3)).unwrap();
        assert!(inst.lists().iter().all(|l| l.len() == 12));
        assert_eq!(partition_colors(&inst).len(), 1);
    }

    #[test]
    fn same_seed_same_instance() {
        let cfg = GenConfig::new(20, 0.3, 1.5, 0.4, 99);
        assert_eq!(generate(&cfg).unwrap(), generate(&cfg).unwrap());
        let other = GenConfig { seed: 100, ..cfg.clone() };
        assert_ne!(generate(&cfg).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn color_count_is_floor() {
        let cfg = GenConfig::new(50, 0.5, 0.5, 0.5, 1);
        assert_eq!(cfg.num_colors(), 25);
        assert_eq!(generate(&cfg).unwrap().num_declared_colors(), 25);
    }

    #[test]
    fn rejects_bad_parameters() {
        for cfg in [
            GenConfig::new(10, 1.5, 1.0, 0.5, 0),
            GenConfig::new(10, 0.5, 1.0, 0.0, 0),
            GenConfig::new(10, 0.5, 0.05, 0.5, 0),
            GenConfig::new(0, 0.5, 1.0, 0.5, 0),
        ] {
            assert!(matches!(generate(&cfg), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn sparse_lists_get_repaired_or_redrawn() {
        let mut cfg = GenConfig::new(15, 0.5, 0.5, 0.05, 7);
        let inst = generate(&cfg).unwrap();
        assert!(inst.lists().iter().all(|l| !l.is_empty()));
        cfg.empty_lists = EmptyListPolicy::Redraw;
        cfg.n = 4;
        cfg.c = 2.0;
        cfg.q = 0.3;
        assert!(generate(&cfg).unwrap().lists().iter().all(|l| !l.is_empty()));
    }

    #[test]
    fn uniform_weights_stay_in_range() {
        let cfg = GenConfig {
            weights: WeightMode::Uniform { lo: 2, hi: 9 },
            ..GenConfig::new(10, 0.5, 1.0, 0.5, 5)
        };
        let inst = generate(&cfg).unwrap();
        assert!(inst.weights().iter().all(|&w| (2..=9).contains(&w)));
    }
}
