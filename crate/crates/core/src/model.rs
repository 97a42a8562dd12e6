//! Random complete-graph instances and the path statistics everything else
//! consumes.
//!
//! An [`Instance`] is a complete graph on `n` vertices with symmetric i.i.d.
//! exponential edge weights (mean `mean_param`, canonically `n`). Weights are
//! stored in a flat upper-triangular array indexed by pair rank and are a pure
//! function of `(n, mean_param, seed)`: regenerating with the same triple is
//! bit-identical, across runs and thread counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{stream_u64, unit_open};

/// Complete graph with symmetric positive edge weights.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct Instance {
    n: usize,
    mean_param: f64,
    seed: Option<u64>,
    weights: Vec<f64>,
}

/// Rank of the unordered pair `(i, j)`, `i < j`, in lexicographic order.
#[inline]
fn pair_rank(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

#[inline]
fn weight_at(mean_param: f64, seed: u64, rank: usize) -> f64 {
    -mean_param * unit_open(stream_u64(seed, rank as u64)).ln()
}

/// Generate an instance with i.i.d. exponential(mean `mean_param`) weights.
///
/// Sampling is inverse-CDF over a counter-based stream with one position per
/// pair rank, so edge `(i, j)` gets the same weight no matter how or where the
/// instance is built.
pub fn generate_instance(n: usize, mean_param: f64, seed: u64) -> Result<Instance> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "instance needs at least 2 vertices, got {n}"
        )));
    }
    if !(mean_param > 0.0) || !mean_param.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "mean_param must be positive and finite, got {mean_param}"
        )));
    }
    let m = n * (n - 1) / 2;
    let weights: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|rank| weight_at(mean_param, seed, rank))
        .collect();
    Ok(Instance {
        n,
        mean_param,
        seed: Some(seed),
        weights,
    })
}

impl Instance {
    /// Build an instance from an explicit weight table (lexicographic pair
    /// order, length `n(n-1)/2`). Intended for hand-built fixtures; the result
    /// is not seed-backed and refuses the `(n, mean, seed)` dump.
    pub fn from_weights(n: usize, mean_param: f64, weights: Vec<f64>) -> Result<Instance> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "instance needs at least 2 vertices, got {n}"
            )));
        }
        if !(mean_param > 0.0) || !mean_param.is_finite() {
            return Err(Error::InvalidArgument(
                "mean_param must be positive and finite".into(),
            ));
        }
        if weights.len() != n * (n - 1) / 2 {
            return Err(Error::InvalidArgument(format!(
                "expected {} weights for n = {n}, got {}",
                n * (n - 1) / 2,
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "weights must be strictly positive and finite, found {w}"
            )));
        }
        Ok(Instance {
            n,
            mean_param,
            seed: None,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mean_param(&self) -> f64 {
        self.mean_param
    }

    /// Seed the weights were generated from; `None` for fixture instances.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    /// Weight of the edge `{u, v}`. Panics if `u == v` or either id is out of
    /// range.
    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        assert!(u != v, "no self-loops");
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        self.weights[pair_rank(self.n, i, j)]
    }

    /// The portable `(n, mean_param, seed)` description. Weights are always
    /// regenerated from the seed rather than shipped.
    pub fn spec(&self) -> Result<InstanceSpec> {
        match self.seed {
            Some(seed) => Ok(InstanceSpec {
                n: self.n,
                mean_param: self.mean_param,
                seed,
            }),
            None => Err(Error::InvalidArgument(
                "instance was built from explicit weights and has no generating seed".into(),
            )),
        }
    }
}

/// Serializable instance description; the whole persistence format.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub n: usize,
    pub mean_param: f64,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn regenerate(&self) -> Result<Instance> {
        generate_instance(self.n, self.mean_param, self.seed)
    }
}

/// Ordered tuple of vertex ids. A path of graph-length `m` has `m + 1`
/// entries; validity against a concrete instance (distinctness, range) is
/// checked by the operations that consume it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    pub fn new(vertices: Vec<usize>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("a path needs at least one vertex".into()));
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Graph length: the number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.vertices.clone();
        v.reverse();
        Path { vertices: v }
    }

    /// The lexicographically smaller of the two orientations.
    pub fn canonical(&self) -> Path {
        let rev = self.reversed();
        if rev.vertices < self.vertices {
            rev
        } else {
            self.clone()
        }
    }
}

/// Violations reported by [`validate_path`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathViolation {
    DuplicateVertex { vertex: usize, position: usize },
    OutOfRange { vertex: usize, position: usize },
}

/// Check a path against an instance without mutating anything; an empty
/// report means the path is valid.
pub fn validate_path(instance: &Instance, path: &Path) -> Vec<PathViolation> {
    let mut seen = vec![false; instance.n()];
    let mut violations = Vec::new();
    for (position, &vertex) in path.vertices().iter().enumerate() {
        if vertex >= instance.n() {
            violations.push(PathViolation::OutOfRange { vertex, position });
        } else if seen[vertex] {
            violations.push(PathViolation::DuplicateVertex { vertex, position });
        } else {
            seen[vertex] = true;
        }
    }
    violations
}

/// Length, total weight, average weight, and maximum deviation of a path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathStats {
    pub length: usize,
    pub total_weight: f64,
    pub average: f64,
    pub max_deviation: f64,
}

impl PathStats {
    /// Statistics of an explicit edge-weight sequence (in path order).
    ///
    /// The maximum deviation is `sup_k |S_k - (k/m) W|` over partial sums
    /// `S_k`, i.e. the worst gap between the weight profile and the straight
    /// line from 0 to the total.
    pub fn from_weights(weights: &[f64]) -> Result<PathStats> {
        let m = weights.len();
        if m == 0 {
            return Err(Error::InvalidArgument(
                "average weight is undefined for zero-length paths".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        let mut partial = 0.0;
        let mut max_dev = 0.0f64;
        for (k, w) in weights.iter().enumerate() {
            partial += w;
            let dev = (partial - ((k + 1) as f64 / m as f64) * total).abs();
            max_dev = max_dev.max(dev);
        }
        Ok(PathStats {
            length: m,
            total_weight: total,
            average: total / m as f64,
            max_deviation: max_dev,
        })
    }
}

/// Edge weights along a path, in path order.
pub fn path_weights(instance: &Instance, path: &Path) -> Result<Vec<f64>> {
    let violations = validate_path(instance, path);
    if !violations.is_empty() {
        return Err(Error::InvalidPath(format!("{violations:?}")));
    }
    Ok(path.edges().map(|(u, v)| instance.weight(u, v)).collect())
}

/// Compute [`PathStats`] for a path in an instance.
pub fn path_stats(instance: &Instance, path: &Path) -> Result<PathStats> {
    let weights = path_weights(instance, path)?;
    PathStats::from_weights(&weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_deterministic() {
        let a = generate_instance(2, 1.0, 99).unwrap();
        let b = generate_instance(2, 1.0, 99).unwrap();
        assert_eq!(a.weight(0, 1).to_bits(), b.weight(0, 1).to_bits());
    }

    #[test]
    fn weights_are_positive_and_complete() {
        let inst = generate_instance(5, 5.0, 7).unwrap();
        assert_eq!(inst.edge_count(), 10);
        for i in 0..5 {
            for j in (i + 1)..5 {
                assert!(inst.weight(i, j) > 0.0);
                assert_eq!(inst.weight(i, j), inst.weight(j, i));
            }
        }
    }

    #[test]
    fn different_seeds_differ() {
        let a = generate_instance(4, 4.0, 1).unwrap();
        let b = generate_instance(4, 4.0, 2).unwrap();
        assert_ne!(a.weight(0, 1), b.weight(0, 1));
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(generate_instance(1, 1.0, 0).is_err());
        assert!(generate_instance(3, 0.0, 0).is_err());
        assert!(generate_instance(3, -1.0, 0).is_err());
        assert!(generate_instance(3, f64::NAN, 0).is_err());
    }

    #[test]
    fn fixed_edge_empirical_mean_matches_exponential() {
        // Mean of a fixed edge over 1e5 seeds: within 3 sigma of 200.
        let n_draws = 100_000;
        let mean = 200.0;
        let sum: f64 = (0..n_draws).map(|s| weight_at(mean, s as u64, 0)).sum();
        let empirical = sum / n_draws as f64;
        let tol = 3.0 * mean / (n_draws as f64).sqrt();
        assert!(
            (empirical - mean).abs() < tol,
            "empirical mean {empirical} outside {mean} +- {tol}"
        );
    }

    #[test]
    fn spec_round_trip_regenerates_identical_weights() {
        let inst = generate_instance(6, 6.0, 12345).unwrap();
        let spec = inst.spec().unwrap();
        let again = spec.regenerate().unwrap();
        for i in 0..6 {
            for j in (i + 1)..6 {
                assert_eq!(inst.weight(i, j).to_bits(), again.weight(i, j).to_bits());
            }
        }
    }

    #[test]
    fn fixture_instances_have_no_spec() {
        let inst = Instance::from_weights(2, 1.0, vec![0.5]).unwrap();
        assert!(inst.spec().is_err());
        assert_eq!(inst.seed(), None);
    }

    #[test]
    fn from_weights_validates() {
        assert!(Instance::from_weights(3, 1.0, vec![1.0]).is_err());
        assert!(Instance::from_weights(3, 1.0, vec![1.0, 0.0, 1.0]).is_err());
        assert!(Instance::from_weights(3, 1.0, vec![1.0, -1.0, 1.0]).is_err());
    }

    #[test]
    fn stats_basic_arithmetic() {
        let s = PathStats::from_weights(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.length, 3);
        assert_eq!(s.total_weight, 6.0);
        assert_eq!(s.average, 2.0);
    }

    #[test]
    fn constant_weights_have_zero_deviation() {
        for c in [0.1, 1.0, 17.5] {
            let s = PathStats::from_weights(&[c; 6]).unwrap();
            assert!(s.max_deviation.abs() < 1e-12 * s.total_weight);
        }
    }

    #[test]
    fn two_edge_deviation_example() {
        // Partial sum after edge 1 is 2; the line predicts W/2.
        let s = PathStats::from_weights(&[2.0, 0.0001]).unwrap();
        let expected = (2.0 - 2.0001 / 2.0_f64).abs();
        assert!((s.max_deviation - expected).abs() < 1e-15);
        assert!((s.max_deviation - 0.99995).abs() < 1e-9);
    }

    #[test]
    fn zero_length_path_is_rejected() {
        assert!(PathStats::from_weights(&[]).is_err());
        let inst = generate_instance(3, 3.0, 0).unwrap();
        let p = Path::new(vec![1]).unwrap();
        assert!(path_stats(&inst, &p).is_err());
    }

    #[test]
    fn validate_reports_violations() {
        let inst = generate_instance(5, 5.0, 0).unwrap();
        let ok = Path::new(vec![0, 1, 2]).unwrap();
        assert!(validate_path(&inst, &ok).is_empty());

        let dup = Path::new(vec![0, 1, 0]).unwrap();
        assert_eq!(
            validate_path(&inst, &dup),
            vec![PathViolation::DuplicateVertex { vertex: 0, position: 2 }]
        );

        let range = Path::new(vec![0, 7]).unwrap();
        assert_eq!(
            validate_path(&inst, &range),
            vec![PathViolation::OutOfRange { vertex: 7, position: 1 }]
        );
    }

    #[test]
    fn path_stats_rejects_invalid_paths() {
        let inst = generate_instance(5, 5.0, 0).unwrap();
        assert!(path_stats(&inst, &Path::new(vec![0, 1, 0]).unwrap()).is_err());
        assert!(path_stats(&inst, &Path::new(vec![0, 9]).unwrap()).is_err());
    }

    #[test]
    fn canonical_picks_smaller_orientation() {
        let p = Path::new(vec![3, 1, 2]).unwrap();
        assert_eq!(p.canonical().vertices(), &[2, 1, 3]);
        let q = Path::new(vec![0, 5]).unwrap();
        assert_eq!(q.canonical().vertices(), &[0, 5]);
    }
}
