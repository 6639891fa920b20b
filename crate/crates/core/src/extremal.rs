//! Exact maximum t-intersecting families on small instances, checks of
//! their canonical structure, and cross-intersecting product checks.
//!
//! A t-intersecting family is a clique in the graph joining matchings that
//! share at least `t` edges. The group acts transitively on matchings, so
//! some maximum clique contains `m*` and the search is rooted there.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, resource, Result};
use crate::matchings::{
    all_edge_sets, canonical_family, cycle_type, enumerate_matchings, is_t_intersecting, EdgeSet,
    PerfectMatching,
};
use crate::partitions::{enumerate_partitions, odd_double_factorial};
use crate::spectral::{cross_ratio_value, CrossRatio};

/// Largest `n` searched by default.
pub const SEARCH_CAP: u32 = 4;
/// `n = 5` is reachable for `t = 1` when explicitly requested.
pub const EXTENDED_SEARCH_CAP: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchResult {
    pub n: u32,
    pub t: u32,
    pub optimum: u64,
    pub witness: Vec<PerfectMatching>,
    /// Edges common to every witness member.
    pub common_edges: EdgeSet,
    pub matches_canonical: bool,
    /// False when the optimum was taken from a valid certificate instead of
    /// being searched.
    pub searched: bool,
    /// Wall-clock time; not serialized so documents stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Edges shared by every member of a non-empty family.
pub fn common_edges(family: &[PerfectMatching]) -> EdgeSet {
    let Some(first) = family.first() else {
        return EdgeSet::new(&[]).expect("empty edge set");
    };
    let edges: Vec<(u32, u32)> = first
        .edges()
        .into_iter()
        .filter(|&(u, v)| family.iter().all(|m| m.contains_edge(u, v)))
        .collect();
    EdgeSet::new(&edges).expect("edges of a matching are disjoint")
}

/// `(2(n-t)-1)!!`
pub fn canonical_size(n: u32, t: u32) -> BigUint {
    odd_double_factorial(n.saturating_sub(t))
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

/// The intersection graph on the neighbourhood of `m*`, relabelled so the
/// candidates are ordered by their cycle type against `m*`.
struct RootedGraph {
    matchings: Vec<PerfectMatching>,
    root: usize,
    /// Candidate vertices (indices into `matchings`), excluding the root.
    candidates: Vec<usize>,
    /// Adjacency among candidates, indexed by candidate position.
    adj: Vec<Bits>,
}

fn check_caps(n: u32, t: u32, extended: bool) -> Result<()> {
    if n < 2 || t == 0 || t > n {
        return domain(format!("search needs n >= 2 and 1 <= t <= n (n={n}, t={t})"));
    }
    let cap = if extended && t == 1 { EXTENDED_SEARCH_CAP } else { SEARCH_CAP };
    if n > cap {
        return resource(format!("exact search capped at n={cap} for t={t}"));
    }
    Ok(())
}

fn rooted_graph(n: u32, t: u32) -> Result<RootedGraph> {
    let matchings = enumerate_matchings(n)?;
    let base = PerfectMatching::base(n);
    let root = matchings.iter().position(|m| *m == base).expect("m* is enumerated");
    let labels = enumerate_partitions(n);
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for (i, m) in matchings.iter().enumerate() {
        if i != root && m.shared_edges(&base) >= t as usize {
            let rank = labels.iter().position(|l| *l == cycle_type(&base, m).expect("same n")).expect("label");
            candidates.push((rank, i));
        }
    }
    candidates.sort_unstable();
    let candidates: Vec<usize> = candidates.into_iter().map(|(_, i)| i).collect();
    let size = candidates.len();
    let mut adj = vec![Bits::new(size); size];
    for a in 0..size {
        for b in a + 1..size {
            if matchings[candidates[a]].shared_edges(&matchings[candidates[b]]) >= t as usize {
                adj[a].set(b);
                adj[b].set(a);
            }
        }
    }
    Ok(RootedGraph { matchings, root, candidates, adj })
}

/// Greedy colouring of `p` in order; returns vertices sorted by colour with
/// the colour bound of each prefix.
fn colour_sort(adj: &[Bits], p: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in p {
        match classes.iter_mut().find(|c| c.iter().all(|&u| !adj[v].get(u))) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(p.len());
    let mut bounds = Vec::with_capacity(p.len());
    for (k, c) in classes.into_iter().enumerate() {
        for v in c {
            order.push(v);
            bounds.push(k + 1);
        }
    }
    (order, bounds)
}

/// Visits cliques extending `r` whose size can reach `*target`. With
/// `strict`, only strictly larger cliques are reported and `*target` rises
/// to each one found; otherwise every clique of size exactly `*target` is
/// reported.
fn expand(
    adj: &[Bits],
    r: &mut Vec<usize>,
    p: Vec<usize>,
    target: &mut usize,
    strict: bool,
    report: &mut dyn FnMut(&[usize]),
) {
    if p.is_empty() {
        if (strict && r.len() > *target) || (!strict && r.len() == *target) {
            if strict {
                *target = r.len();
            }
            report(r);
        }
        return;
    }
    let (order, bounds) = colour_sort(adj, &p);
    let mut remaining = order.clone();
    for idx in (0..order.len()).rev() {
        let reach = r.len() + bounds[idx];
        if (strict && reach <= *target) || (!strict && reach < *target) {
            return;
        }
        let v = order[idx];
        remaining.pop();
        let next: Vec<usize> = remaining.iter().copied().filter(|&u| adj[v].get(u)).collect();
        r.push(v);
        expand(adj, r, next, target, strict, report);
        r.pop();
    }
    // a clique that stops here is maximal only if nothing remained
}

fn family_of(graph: &RootedGraph, clique: &[usize]) -> Vec<PerfectMatching> {
    let mut family: Vec<PerfectMatching> = std::iter::once(graph.root)
        .chain(clique.iter().map(|&c| graph.candidates[c]))
        .map(|i| graph.matchings[i].clone())
        .collect();
    family.sort();
    family
}

/// Exact size of the largest t-intersecting family of perfect matchings of
/// `K_{2n}`, with a deterministic witness. `extended` allows `n = 5, t = 1`.
pub fn max_independent_exact(n: u32, t: u32, extended: bool) -> Result<SearchResult> {
    check_caps(n, t, extended)?;
    let start = Instant::now();
    let graph = rooted_graph(n, t)?;
    let base = PerfectMatching::base(n);
    let fixed = EdgeSet::new(&base.edges()[..t as usize])?;
    let mut witness = canonical_family(&fixed, n)?;
    // the canonical family through m* is the incumbent; search for larger
    let mut target = witness.len() - 1;
    let all: Vec<usize> = (0..graph.candidates.len()).collect();
    let mut best: Option<Vec<usize>> = None;
    expand(&graph.adj, &mut Vec::new(), all, &mut target, true, &mut |c| best = Some(c.to_vec()));
    if let Some(clique) = best {
        witness = family_of(&graph, &clique);
    }
    let common = common_edges(&witness);
    Ok(SearchResult {
        n,
        t,
        optimum: witness.len() as u64,
        matches_canonical: common.len() >= t as usize,
        common_edges: common,
        witness,
        searched: true,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtremalReport {
    pub n: u32,
    pub t: u32,
    pub optimum: u64,
    /// Maximum families containing `m*`; every maximum family is a
    /// translate of one of these.
    pub families: usize,
    /// Common edge set of each family, in discovery order.
    pub fixed_edge_sets: Vec<EdgeSet>,
    pub non_canonical: usize,
    pub all_canonical: bool,
}

/// Enumerates every maximum family through `m*` and checks that each one
/// is canonical.
pub fn verify_extremal(n: u32, t: u32, extended: bool) -> Result<ExtremalReport> {
    let optimum = max_independent_exact(n, t, extended)?.optimum as usize;
    let graph = rooted_graph(n, t)?;
    let all: Vec<usize> = (0..graph.candidates.len()).collect();
    let mut target = optimum - 1;
    let mut fixed_edge_sets = Vec::new();
    let mut non_canonical = 0;
    expand(&graph.adj, &mut Vec::new(), all, &mut target, false, &mut |c| {
        let common = common_edges(&family_of(&graph, c));
        if common.len() < t as usize {
            non_canonical += 1;
        }
        fixed_edge_sets.push(common);
    });
    Ok(ExtremalReport {
        n,
        t,
        optimum: optimum as u64,
        families: fixed_edge_sets.len(),
        fixed_edge_sets,
        non_canonical,
        all_canonical: non_canonical == 0,
    })
}

fn cross_intersecting(a: &[PerfectMatching], b: &[PerfectMatching], t: u32) -> bool {
    a.iter().all(|x| b.iter().all(|y| x.shared_edges(y) >= t as usize))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossProductReport {
    pub n: u32,
    pub t: u32,
    pub seed: u64,
    /// `((2(n-t)-1)!!)^2`
    pub bound: u64,
    pub canonical_pairs: usize,
    /// Pairs `F_T, F_T'` that are t-cross-intersecting.
    pub cross_intersecting_pairs: usize,
    /// Pairs with `T != T'` that are nevertheless t-cross-intersecting.
    pub unexpected_pairs: usize,
    pub canonical_products_equal_bound: bool,
    pub samples: usize,
    pub max_sampled_product: u64,
    /// Whether the bound is proven at `(n, t)`, so an excess would be a
    /// contradiction rather than a small-`n` observation.
    pub enforced: bool,
    pub within_bound: bool,
}

/// Builds a random maximal t-cross-intersecting pair by scanning the
/// matchings in random order and offering each to a random side.
fn sample_pair(matchings: &[PerfectMatching], t: u32, rng: &mut ChaCha8Rng) -> (usize, usize) {
    let mut order: Vec<usize> = (0..matchings.len()).collect();
    order.shuffle(rng);
    let mut sides: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for v in order {
        let first = rng.gen_range(0..2);
        for side in [first, 1 - first] {
            let other = &sides[1 - side];
            if other.iter().all(|&u| matchings[u].shared_edges(&matchings[v]) >= t as usize) {
                sides[side].push(v);
                break;
            }
        }
    }
    (sides[0].len(), sides[1].len())
}

/// Checks all pairs of canonical families and samples random
/// t-cross-intersecting pairs with a seeded generator.
pub fn cross_product_check(n: u32, t: u32, seed: u64, samples: usize) -> Result<CrossProductReport> {
    check_caps(n, t, false)?;
    let size = canonical_size(n, t);
    let bound = u64::try_from(&size * &size).expect("small n");
    let edge_sets = all_edge_sets(n, t);
    let families: Vec<Vec<PerfectMatching>> =
        edge_sets.iter().map(|e| canonical_family(e, n)).collect::<Result<_>>()?;
    let mut cross_pairs = 0;
    let mut unexpected = 0;
    let mut products_equal = true;
    for (i, a) in families.iter().enumerate() {
        for (j, b) in families.iter().enumerate() {
            products_equal &= (a.len() * b.len()) as u64 == bound;
            if cross_intersecting(a, b, t) {
                cross_pairs += 1;
                if i != j {
                    unexpected += 1;
                }
            }
        }
    }
    let matchings = enumerate_matchings(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_product = 0u64;
    for _ in 0..samples {
        let (a, b) = sample_pair(&matchings, t, &mut rng);
        max_product = max_product.max((a * b) as u64);
    }
    let enforced = 2 * t < n && matches!(cross_ratio_value(n, t)?, CrossRatio::Value { .. });
    let within_bound = max_product <= bound;
    Ok(CrossProductReport {
        n,
        t,
        seed,
        bound,
        canonical_pairs: families.len() * families.len(),
        cross_intersecting_pairs: cross_pairs,
        unexpected_pairs: unexpected,
        canonical_products_equal_bound: products_equal,
        samples,
        max_sampled_product: max_product,
        enforced,
        within_bound,
    })
}

/// `true` when the family is t-intersecting and has the canonical size.
pub fn is_extremal_candidate(family: &[PerfectMatching], n: u32, t: u32) -> bool {
    is_t_intersecting(family, t) && BigUint::from(family.len()) == canonical_size(n, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::certify;

    #[test]
    fn small_optima() {
        for (n, t, expected) in [(2, 1, 1), (3, 1, 3), (3, 2, 1), (4, 2, 3)] {
            let r = max_independent_exact(n, t, false).unwrap();
            assert_eq!(r.optimum, expected, "n={n} t={t}");
            assert!(is_t_intersecting(&r.witness, t));
            assert_eq!(r.witness.len() as u64, r.optimum);
            assert!(r.matches_canonical);
        }
    }

    #[test]
    fn n4_t1_matches_certificate() {
        let r = max_independent_exact(4, 1, false).unwrap();
        assert_eq!(r.optimum, 15);
        assert!(is_extremal_candidate(&r.witness, 4, 1));
        let cert = certify(4, 1).unwrap();
        assert_eq!(cert.bound().unwrap(), r.optimum.into());
        let again = max_independent_exact(4, 1, false).unwrap();
        assert_eq!((again.optimum, again.witness), (r.optimum, r.witness));
    }

    #[test]
    fn extended_n5_t1() {
        let r = max_independent_exact(5, 1, true).unwrap();
        assert_eq!(r.optimum, 105);
        assert!(r.matches_canonical);
    }

    #[test]
    fn outside_the_proven_range_products_can_exceed() {
        // at (4, 2) nothing is proven and larger cross-intersecting pairs exist
        let r = cross_product_check(4, 2, 0, 500).unwrap();
        assert!(!r.enforced);
        assert!(r.canonical_products_equal_bound);
        assert_eq!(r.unexpected_pairs, 0);
    }

    #[test]
    fn caps() {
        assert!(matches!(max_independent_exact(5, 2, true), Err(crate::Error::Resource(_))));
        assert!(matches!(max_independent_exact(5, 1, false), Err(crate::Error::Resource(_))));
        assert!(max_independent_exact(3, 0, false).is_err());
    }

    #[test]
    fn extremal_families_are_canonical() {
        let r = verify_extremal(3, 1, false).unwrap();
        assert!(r.all_canonical);
        // through m* = 1 2|3 4|5 6 the maximum families are F_{12}, F_{34}, F_{56}
        assert_eq!(r.families, 3);
        assert!(r.fixed_edge_sets.iter().all(|e| e.len() == 1));
        let r = verify_extremal(2, 1, false).unwrap();
        assert_eq!(r.optimum, 1);
        assert!(r.all_canonical);
        let r = verify_extremal(4, 1, false).unwrap();
        assert_eq!(r.optimum, 15);
        assert!(r.families >= 4);
    }

    #[test]
    fn canonical_cross_pairs() {
        let a = canonical_family(&"1 2".parse().unwrap(), 4).unwrap();
        let b = canonical_family(&"3 4".parse().unwrap(), 4).unwrap();
        assert_eq!(a.len() * a.len(), 225);
        assert!(cross_intersecting(&a, &a, 1));
        assert!(!cross_intersecting(&a, &b, 1));
        let r = cross_product_check(3, 1, 7, 200).unwrap();
        assert!(r.canonical_products_equal_bound);
        assert_eq!(r.bound, 9);
        assert!(r.within_bound, "max product {}", r.max_sampled_product);
        assert_eq!(r, cross_product_check(3, 1, 7, 200).unwrap());
    }

    #[test]
    fn search_result_json() {
        let r = max_independent_exact(3, 1, false).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: SearchResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, SearchResult { elapsed: Duration::ZERO, ..r });
    }
}
