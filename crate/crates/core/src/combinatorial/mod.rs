//! Ant colony optimization on complete graphs, with a small TSP harness.

use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::record::RunRecord;
use crate::rng::RngStream;

/// Lower bound applied to every pheromone value after an update.
pub const PHEROMONE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AcoConfig {
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    pub ants: usize,
    pub q: f64,
    pub initial_pheromone: f64,
}

impl Default for AcoConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 2.0,
            rho: 0.5,
            ants: 10,
            q: 1.0,
            initial_pheromone: 1.0,
        }
    }
}

impl AcoConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return Err(Error::config("alpha", self.alpha, "(0, inf)"));
        }
        if !(self.beta > 0.0) {
            return Err(Error::config("beta", self.beta, "(0, inf)"));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::config("rho", self.rho, "(0, 1)"));
        }
        if self.ants == 0 {
            return Err(Error::config("ants", self.ants, "[1, inf)"));
        }
        if !(self.q > 0.0) {
            return Err(Error::config("q", self.q, "(0, inf)"));
        }
        check_range("initial_pheromone", self.initial_pheromone, PHEROMONE_FLOOR, f64::INFINITY, "[1e-9, inf)")?;
        Ok(())
    }

    /// Upper bound on any pheromone value reachable from `initial_pheromone`
    /// when every tour is at least `min_length` long.
    pub fn pheromone_bound(&self, min_length: f64) -> f64 {
        self.ants as f64 * self.q / (self.rho * min_length) + self.initial_pheromone.max(PHEROMONE_FLOOR)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteGraph {
    distances: Vec<Vec<f64>>,
    pheromone: Vec<Vec<f64>>,
}

impl RouteGraph {
    pub fn new(distances: Vec<Vec<f64>>, initial_pheromone: f64) -> Result<Self> {
        let m = distances.len();
        if m < 2 {
            return Err(Error::InvalidProblem(format!("need at least 2 nodes, got {m}")));
        }
        for (i, row) in distances.iter().enumerate() {
            if row.len() != m {
                return Err(Error::LengthMismatch { expected: m, got: row.len() });
            }
            for (j, &s) in row.iter().enumerate() {
                if i == j {
                    if s != 0.0 {
                        return Err(Error::InvalidProblem(format!("nonzero diagonal at node {i}")));
                    }
                } else if !(s > 0.0 && s.is_finite()) {
                    return Err(Error::InvalidProblem(format!("distance ({i}, {j}) = {s} is not positive")));
                } else if s != distances[j][i] {
                    return Err(Error::InvalidProblem(format!("distance ({i}, {j}) is not symmetric")));
                }
            }
        }
        if !(initial_pheromone > 0.0) {
            return Err(Error::config("initial_pheromone", initial_pheromone, "(0, inf)"));
        }
        let pheromone = vec![vec![initial_pheromone.max(PHEROMONE_FLOOR); m]; m];
        Ok(Self { distances, pheromone })
    }

    /// Random symmetric instance with distances uniform in `[1, 100)`.
    #[allow(clippy::needless_range_loop)]
    pub fn random(m: usize, rng: &mut RngStream) -> Self {
        let mut d = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let s = rng.uniform_in(1.0, 100.0);
                d[i][j] = s;
                d[j][i] = s;
            }
        }
        Self::new(d, 1.0).expect("random instance is valid")
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.distances[i][j]
    }

    pub fn desirability(&self, i: usize, j: usize) -> f64 {
        1.0 / self.distances[i][j]
    }

    pub fn pheromone(&self, i: usize, j: usize) -> f64 {
        self.pheromone[i][j]
    }

    pub fn set_pheromone(&mut self, i: usize, j: usize, value: f64) {
        let v = value.max(PHEROMONE_FLOOR);
        self.pheromone[i][j] = v;
        self.pheromone[j][i] = v;
    }

    /// Sets every pheromone value to `value` (floored).
    pub fn reset_pheromone(&mut self, value: f64) {
        let v = value.max(PHEROMONE_FLOOR);
        self.pheromone.iter_mut().for_each(|row| row.iter_mut().for_each(|p| *p = v));
    }

    pub fn distances(&self) -> &[Vec<f64>] {
        &self.distances
    }

    /// Length of the closed tour.
    pub fn tour_length(&self, tour: &[usize]) -> f64 {
        let n = tour.len();
        (0..n).map(|k| self.distances[tour[k]][tour[(k + 1) % n]]).sum()
    }

    /// Parses `m` on the first line followed by `m` rows of distances.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::InvalidProblem("empty TSP file".into()))?;
        let m: usize = header
            .parse()
            .map_err(|_| Error::InvalidProblem(format!("bad node count `{header}`")))?;
        let mut rows = Vec::with_capacity(m);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|_| Error::InvalidProblem(format!("bad distance `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != m {
            return Err(Error::InvalidProblem(format!("expected {m} rows, got {}", rows.len())));
        }
        Self::new(rows, 1.0)
    }

    pub fn format(&self) -> String {
        let mut out = format!("{}\n", self.len());
        for row in &self.distances {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn format_tour(tour: &[usize]) -> String {
    tour.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_tour(text: &str) -> Result<Vec<usize>> {
    text.trim()
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::InvalidProblem(format!("bad node index `{t}`"))))
        .collect()
}

/// Transition probabilities from `current` to each node of `allowed`,
/// proportional to `φ^α d^β` and normalized over the allowed moves.
pub fn route_probabilities(graph: &RouteGraph, config: &AcoConfig, current: usize, allowed: &[usize]) -> Result<Vec<f64>> {
    if allowed.is_empty() {
        return Err(Error::EmptyNeighborhood { node: current });
    }
    let weights: Vec<f64> = allowed
        .iter()
        .map(|&j| graph.pheromone(current, j).powf(config.alpha) * graph.desirability(current, j).powf(config.beta))
        .collect();
    let total: f64 = weights.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        // Underflow or overflow of the weights: fall back to the ratio form
        // relative to the largest log-weight.
        let logs: Vec<f64> = allowed
            .iter()
            .map(|&j| {
                config.alpha * graph.pheromone(current, j).ln() + config.beta * graph.desirability(current, j).ln()
            })
            .collect();
        let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let w: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
        let t: f64 = w.iter().sum();
        return Ok(w.into_iter().map(|v| v / t).collect());
    }
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Samples a Hamiltonian tour starting at `start`.
pub fn construct_tour(graph: &RouteGraph, config: &AcoConfig, start: usize, rng: &mut RngStream) -> Vec<usize> {
    let m = graph.len();
    let mut tour = Vec::with_capacity(m);
    tour.push(start);
    let mut allowed: Vec<usize> = (0..m).filter(|&j| j != start).collect();
    let mut current = start;
    while !allowed.is_empty() {
        let probs = route_probabilities(graph, config, current, &allowed).expect("allowed is nonempty");
        let u = rng.uniform();
        let mut acc = 0.0;
        let mut pick = allowed.len() - 1;
        for (k, p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                pick = k;
                break;
            }
        }
        current = allowed.remove(pick);
        tour.push(current);
    }
    tour
}

/// Evaporation followed by a `Q/length` deposit on every edge of every tour.
pub fn update_pheromone(graph: &mut RouteGraph, tours: &[Vec<usize>], lengths: &[f64], config: &AcoConfig) -> Result<()> {
    if tours.len() != lengths.len() {
        return Err(Error::LengthMismatch { expected: tours.len(), got: lengths.len() });
    }
    for row in graph.pheromone.iter_mut() {
        for v in row.iter_mut() {
            *v *= 1.0 - config.rho;
        }
    }
    for (tour, &len) in tours.iter().zip(lengths) {
        if !(len > 0.0) {
            return Err(Error::Domain(format!("tour length must be positive, got {len}")));
        }
        let deposit = config.q / len;
        for k in 0..tour.len() {
            let (i, j) = (tour[k], tour[(k + 1) % tour.len()]);
            if i == j {
                continue;
            }
            graph.pheromone[i][j] += deposit;
            graph.pheromone[j][i] = graph.pheromone[i][j];
        }
    }
    for row in graph.pheromone.iter_mut() {
        for v in row.iter_mut() {
            *v = v.max(PHEROMONE_FLOOR);
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcoResult {
    pub tour: Vec<usize>,
    pub length: f64,
    pub record: RunRecord,
    pub graph: RouteGraph,
}

/// Runs construct/update iterations until `max_constructions` tours have
/// been built, starting from `config.initial_pheromone` on every edge. Each
/// iteration's ants share a pheromone snapshot; ant `k` of iteration `t`
/// draws from its own stream, so results depend only on `seed`.
pub fn aco_optimize(graph: &RouteGraph, config: &AcoConfig, max_constructions: u64, seed: u64) -> Result<AcoResult> {
    config.validate()?;
    if max_constructions == 0 {
        return Err(Error::config("budget", max_constructions, "[1, inf)"));
    }
    let mut graph = graph.clone();
    graph.reset_pheromone(config.initial_pheromone);
    let m = graph.len();
    let mut best: Option<(Vec<usize>, f64)> = None;
    let mut curve = Vec::new();
    let mut used = 0u64;
    let mut iteration = 0u64;
    while used < max_constructions {
        let batch = (config.ants as u64).min(max_constructions - used);
        let mut tours = Vec::with_capacity(batch as usize);
        let mut lengths = Vec::with_capacity(batch as usize);
        for ant in 0..batch {
            let mut rng = RngStream::derive(seed, iteration, ant);
            let start = rng.index(m);
            let tour = construct_tour(&graph, config, start, &mut rng);
            let len = graph.tour_length(&tour);
            if best.as_ref().is_none_or(|(_, b)| len < *b) {
                best = Some((tour.clone(), len));
            }
            tours.push(tour);
            lengths.push(len);
        }
        used += batch;
        update_pheromone(&mut graph, &tours, &lengths, config)?;
        let value = best.as_ref().map(|(_, b)| *b).expect("at least one tour");
        curve.push((used, value));
        iteration += 1;
    }
    let (tour, length) = best.expect("at least one tour");
    let record = RunRecord {
        algorithm: "aco".into(),
        seed,
        budget: max_constructions,
        target_accuracy: None,
        curve,
        final_best: length,
        final_best_position: tour.iter().map(|&i| i as f64).collect(),
        evals_to_accuracy: None,
    };
    Ok(AcoResult { tour, length, record, graph })
}

/// Shortest closed tour by enumeration, with node 0 fixed as the start.
pub fn brute_force_tsp(graph: &RouteGraph) -> (Vec<usize>, f64) {
    fn permute(rest: &mut Vec<usize>, k: usize, graph: &RouteGraph, best: &mut (Vec<usize>, f64)) {
        if k == rest.len() {
            let mut tour = vec![0];
            tour.extend_from_slice(rest);
            let len = graph.tour_length(&tour);
            if len < best.1 {
                *best = (tour, len);
            }
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(rest, k + 1, graph, best);
            rest.swap(k, i);
        }
    }
    let mut rest: Vec<usize> = (1..graph.len()).collect();
    let mut best = (Vec::new(), f64::INFINITY);
    permute(&mut rest, 0, graph, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uniform(m: usize) -> RouteGraph {
        let d = (0..m).map(|i| (0..m).map(|j| if i == j { 0.0 } else { 1.0 }).collect()).collect();
        RouteGraph::new(d, 1.0).unwrap()
    }

    #[test]
    fn probability_examples() {
        let g = uniform(5);
        let cfg = AcoConfig::default();
        let p = route_probabilities(&g, &cfg, 0, &[1, 2, 3, 4]).unwrap();
        assert!(p.iter().all(|&v| (v - 0.25).abs() < 1e-15));

        let mut g = uniform(3);
        g.set_pheromone(0, 1, 2.0);
        let cfg = AcoConfig { alpha: 1.0, beta: 1.0, ..Default::default() };
        let p = route_probabilities(&g, &cfg, 0, &[1, 2]).unwrap();
        assert!((p[0] - 2.0 / 3.0).abs() < 1e-15 && (p[1] - 1.0 / 3.0).abs() < 1e-15);

        let g = RouteGraph::random(6, &mut RngStream::new(1));
        let cfg = AcoConfig { alpha: 0.0, beta: 0.0, ..Default::default() };
        let p = route_probabilities(&g, &cfg, 2, &[0, 1, 5]).unwrap();
        assert!(p.iter().all(|&v| (v - 1.0 / 3.0).abs() < 1e-15));

        assert_eq!(route_probabilities(&g, &cfg, 2, &[]), Err(Error::EmptyNeighborhood { node: 2 }));
    }

    #[test]
    fn two_nodes() {
        let g = uniform(2);
        for seed in 0..5 {
            let t = construct_tour(&g, &AcoConfig::default(), 0, &mut RngStream::new(seed));
            assert_eq!(t, vec![0, 1]);
        }
    }

    #[test]
    fn three_node_tours_are_equally_likely() {
        let g = uniform(3);
        let cfg = AcoConfig::default();
        let trials = 10_000;
        let forward = (0..trials)
            .filter(|&s| construct_tour(&g, &cfg, 0, &mut RngStream::new(s)) == vec![0, 1, 2])
            .count();
        let freq = forward as f64 / trials as f64;
        assert!((freq - 0.5).abs() < 0.02, "{freq}");
    }

    #[test]
    fn reinforced_tour_dominates() {
        let mut g = uniform(5);
        let tour = [0, 3, 1, 4, 2];
        for k in 0..5 {
            g.set_pheromone(tour[k], tour[(k + 1) % 5], 1e6);
        }
        let cfg = AcoConfig::default();
        for s in 0..200 {
            let t = construct_tour(&g, &cfg, 0, &mut RngStream::new(s));
            let rev: Vec<usize> = std::iter::once(0).chain(tour[1..].iter().rev().copied()).collect();
            assert!(t == tour || t == rev, "{t:?}");
        }
    }

    #[test]
    fn pheromone_update_examples() {
        let mut g = uniform(4);
        let cfg = AcoConfig { rho: 1.0, ..Default::default() };
        update_pheromone(&mut g, &[], &[], &cfg).unwrap();
        assert!((0..4).all(|i| (0..4).all(|j| g.pheromone(i, j) == PHEROMONE_FLOOR)));

        let mut g = uniform(4);
        let cfg = AcoConfig { rho: 0.0, q: 1.0, ..Default::default() };
        update_pheromone(&mut g, &[vec![0, 1, 2, 3]], &[4.0], &cfg).unwrap();
        assert_eq!(g.pheromone(0, 1), 1.25);
        assert_eq!(g.pheromone(3, 0), 1.25);
        assert_eq!(g.pheromone(0, 2), 1.0);

        let mut g = uniform(4);
        let cfg = AcoConfig::default();
        update_pheromone(&mut g, &[vec![0, 1, 2, 3], vec![0, 2, 1, 3]], &[3.0, 5.0], &cfg).unwrap();
        // Edge (0,1) is unique to the shorter tour, (0,2) to the longer one.
        assert!(g.pheromone(0, 1) > g.pheromone(0, 2));
    }

    #[test]
    fn small_instances_are_solved() {
        let g = RouteGraph::random(3, &mut RngStream::new(3));
        let r = aco_optimize(&g, &AcoConfig::default(), 1, 0).unwrap();
        assert!((r.length - brute_force_tsp(&g).1).abs() < 1e-12);

        let g = RouteGraph::random(6, &mut RngStream::new(4));
        let cfg = AcoConfig { ants: 7, ..Default::default() };
        let r = aco_optimize(&g, &cfg, 7, 11).unwrap();
        let sample_min = (0..7u64)
            .map(|ant| {
                let mut rng = RngStream::derive(11, 0, ant);
                let start = rng.index(6);
                g.tour_length(&construct_tour(&g, &cfg, start, &mut rng))
            })
            .fold(f64::INFINITY, f64::min);
        assert_eq!(r.length, sample_min);
        assert_eq!(r.record.curve, vec![(7, sample_min)]);
    }

    #[test]
    fn file_round_trip() {
        let g = RouteGraph::random(4, &mut RngStream::new(9));
        let back = RouteGraph::parse(&g.format()).unwrap();
        assert_eq!(back.distances(), g.distances());
        assert_eq!(parse_tour(&format_tour(&[2, 0, 3, 1])).unwrap(), vec![2, 0, 3, 1]);
        assert!(RouteGraph::parse("2\n0 1\n2 0\n").is_err());
    }

    proptest! {
        #[test]
        fn probabilities_are_a_distribution(seed in any::<u64>(), m in 3usize..9, k in 1usize..8) {
            let mut rng = RngStream::new(seed);
            let mut g = RouteGraph::random(m, &mut rng);
            for i in 0..m {
                for j in i + 1..m {
                    g.set_pheromone(i, j, rng.uniform_in(1e-6, 10.0));
                }
            }
            let allowed: Vec<usize> = (1..m).take(k).collect();
            let p = route_probabilities(&g, &AcoConfig::default(), 0, &allowed).unwrap();
            prop_assert!(p.iter().all(|&v| v >= 0.0));
            prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn pheromone_scale_invariance(seed in any::<u64>(), c in 1e-3f64..1e3) {
            let mut rng = RngStream::new(seed);
            let mut g = RouteGraph::random(6, &mut rng);
            for i in 0..6 {
                for j in i + 1..6 {
                    g.set_pheromone(i, j, rng.uniform_in(0.1, 10.0));
                }
            }
            let mut scaled = g.clone();
            for i in 0..6 {
                for j in i + 1..6 {
                    scaled.set_pheromone(i, j, c * g.pheromone(i, j));
                }
            }
            let cfg = AcoConfig { alpha: 1.3, beta: 2.0, ..Default::default() };
            let p = route_probabilities(&g, &cfg, 0, &[1, 2, 3, 4, 5]).unwrap();
            let q = route_probabilities(&scaled, &cfg, 0, &[1, 2, 3, 4, 5]).unwrap();
            for (a, b) in p.iter().zip(&q) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn best_length_monotone_and_pheromone_bounded(seed in 0u64..10_000, m in 3usize..8) {
            let g = RouteGraph::random(m, &mut RngStream::new(seed ^ 0xabc));
            let cfg = AcoConfig { ants: 4, rho: 0.3, initial_pheromone: 5.0, ..Default::default() };
            let r = aco_optimize(&g, &cfg, 200, seed).unwrap();
            prop_assert!(r.record.curve_is_monotone());
            let min_edge = (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| g.distance(i, j)).fold(f64::INFINITY, f64::min);
            let bound = cfg.pheromone_bound(m as f64 * min_edge);
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        prop_assert!(r.graph.pheromone(i, j) >= PHEROMONE_FLOOR);
                        prop_assert!(r.graph.pheromone(i, j) <= bound);
                    }
                }
            }
        }
    }
}
