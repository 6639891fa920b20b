//! Perfect and near-perfect matchings of complete graphs, cycle types,
//! spheres, the natural group action and canonical families.
//!
//! Vertex labels are 1-based in every public signature; `1 2|3 4` is the
//! base matching `m*` on four vertices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, resource, Error, Result};
use crate::partitions::{aut_weight, even_double_factorial, Partition};

/// Largest `n` for which `M_{2n}` is enumerated explicitly (135135 matchings).
pub const MATCHING_CAP: u32 = 7;

/// A fixed-point-free involution on `1..=2n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    partner: Vec<u8>,
}

impl PerfectMatching {
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let size = pairs.len() * 2;
        let mut partner = vec![u8::MAX; size];
        for &(u, v) in pairs {
            if u == v || u == 0 || v == 0 || u as usize > size || v as usize > size {
                return domain(format!("bad edge {u} {v} for {size} vertices"));
            }
            let (a, b) = (u as usize - 1, v as usize - 1);
            if partner[a] != u8::MAX || partner[b] != u8::MAX {
                return domain(format!("edges are not disjoint at {u} {v}"));
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        Ok(PerfectMatching { partner })
    }

    /// `m* = 1 2|3 4|...|2n-1 2n`.
    pub fn base(n: u32) -> Self {
        let partner = (0..2 * n as usize).map(|v| (v ^ 1) as u8).collect();
        PerfectMatching { partner }
    }

    pub(crate) fn from_partner(partner: Vec<u8>) -> Self {
        debug_assert!(partner.iter().enumerate().all(|(v, &p)| p as usize != v
            && partner[p as usize] as usize == v));
        PerfectMatching { partner }
    }

    pub(crate) fn partner_array(&self) -> &[u8] {
        &self.partner
    }

    /// Number of edges.
    pub fn n(&self) -> u32 {
        (self.partner.len() / 2) as u32
    }

    pub fn partner(&self, v: u32) -> u32 {
        self.partner[v as usize - 1] as u32 + 1
    }

    /// Edges `(u, v)` with `u < v`, sorted by `u`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|(v, &p)| *v < p as usize)
            .map(|(v, &p)| (v as u32 + 1, p as u32 + 1))
            .collect()
    }

    pub fn contains_edge(&self, u: u32, v: u32) -> bool {
        u != v
            && u >= 1
            && v >= 1
            && (u as usize) <= self.partner.len()
            && (v as usize) <= self.partner.len()
            && self.partner(u) == v
    }

    pub fn shared_edges(&self, other: &PerfectMatching) -> usize {
        self.partner
            .iter()
            .zip(&other.partner)
            .enumerate()
            .filter(|(v, (a, b))| a == b && *v < **a as usize)
            .count()
    }
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u} {v}")).collect();
        f.write_str(&parts.join("|"))
    }
}

fn parse_pairs(s: &str) -> Result<(Vec<(u32, u32)>, Vec<u32>)> {
    let mut pairs = Vec::new();
    let mut singles = Vec::new();
    for block in s.split('|') {
        let nums = block
            .split_whitespace()
            .map(|x| x.parse::<u32>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        match nums.as_slice() {
            [u, v] => pairs.push((*u, *v)),
            [u] => singles.push(*u),
            _ => return Err(Error::Parse(format!("bad block {block:?} in {s:?}"))),
        }
    }
    Ok((pairs, singles))
}

impl FromStr for PerfectMatching {
    type Err = Error;

    /// Parses `"2 3|4 5|6 7|1 8"`.
    fn from_str(s: &str) -> Result<Self> {
        let (pairs, singles) = parse_pairs(s)?;
        if !singles.is_empty() {
            return Err(Error::Parse(format!("unmatched vertex in {s:?}")));
        }
        PerfectMatching::from_pairs(&pairs)
    }
}

/// Serializes through `Display` / `FromStr`.
macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let raw = String::deserialize(d)?;
                raw.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(PerfectMatching);
string_serde!(EdgeSet);
string_serde!(NearPerfectMatching);

/// Matchings of the given (sorted) vertex list, pairing the smallest
/// unmatched vertex first. Vertices are 0-based; `partner` is prefilled.
fn extend_matchings(
    partner: &mut Vec<u8>,
    free: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) {
    if free.is_empty() {
        out.push(partner.clone());
        return;
    }
    let first = free.remove(0);
    for idx in 0..free.len() {
        let other = free.remove(idx);
        partner[first as usize] = other;
        partner[other as usize] = first;
        extend_matchings(partner, free, out);
        free.insert(idx, other);
    }
    free.insert(0, first);
}

/// All `(2n-1)!!` perfect matchings of `K_{2n}`, lexicographic by partner
/// array.
pub fn enumerate_matchings(n: u32) -> Result<Vec<PerfectMatching>> {
    if n > MATCHING_CAP {
        return resource(format!("refusing to enumerate M_(2n) for n={n} > {MATCHING_CAP}"));
    }
    let size = 2 * n as usize;
    let mut out = Vec::new();
    let mut partner = vec![0u8; size];
    let mut free: Vec<u8> = (0..size as u8).collect();
    extend_matchings(&mut partner, &mut free, &mut out);
    Ok(out.into_iter().map(PerfectMatching::from_partner).collect())
}

/// Half-lengths of the cycles of `m ∪ m'`, sorted decreasing.
pub fn cycle_type(m: &PerfectMatching, other: &PerfectMatching) -> Result<Partition> {
    if m.partner.len() != other.partner.len() {
        return domain(format!("matchings of different sizes ({} vs {})", m.n(), other.n()));
    }
    Ok(Partition::from_unsorted(cycle_half_lengths(&m.partner, &other.partner)))
}

pub(crate) fn cycle_half_lengths(a: &[u8], b: &[u8]) -> Vec<u32> {
    let size = a.len();
    let mut seen = vec![false; size];
    let mut parts = Vec::with_capacity(size / 2);
    for start in 0..size {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut v = start;
        loop {
            seen[v] = true;
            let w = a[v] as usize;
            seen[w] = true;
            len += 1;
            v = b[w] as usize;
            if v == start {
                break;
            }
        }
        parts.push(len);
    }
    parts
}

/// `|Omega_lambda| = (2n)!! / (2^{l(lambda)} z_lambda)`.
pub fn sphere_size(lambda: &Partition, n: u32) -> Result<BigUint> {
    if lambda.size() != n {
        return domain(format!("{lambda} is not a partition of {n}"));
    }
    let denom = BigUint::from(2u32).pow(lambda.len() as u32) * aut_weight(lambda);
    let (q, r) = even_double_factorial(n).div_rem(&denom);
    debug_assert!(r == BigUint::from(0u32));
    Ok(q)
}

/// A matching whose cycle type against `m*` is `lambda`: each part `k` is
/// realized as a `2k`-cycle on `k` consecutive edges of `m*`.
pub fn sphere_representative(lambda: &Partition) -> PerfectMatching {
    let mut pairs = Vec::new();
    let mut start = 1u32;
    for &k in lambda.parts() {
        if k == 1 {
            pairs.push((start, start + 1));
        } else {
            for i in 0..k - 1 {
                pairs.push((start + 2 * i + 1, start + 2 * i + 2));
            }
            pairs.push((start, start + 2 * k - 1));
        }
        start += 2 * k;
    }
    PerfectMatching::from_pairs(&pairs).expect("disjoint by construction")
}

fn check_permutation(sigma: &[u32]) -> Result<()> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s == 0 || s as usize > sigma.len() || seen[s as usize - 1] {
            return domain(format!("{sigma:?} is not a permutation of 1..={}", sigma.len()));
        }
        seen[s as usize - 1] = true;
    }
    Ok(())
}

/// `sigma m`: the edge `{u, v}` becomes `{sigma(u), sigma(v)}`. `sigma` is
/// given in 1-based one-line notation.
pub fn apply_permutation(sigma: &[u32], m: &PerfectMatching) -> Result<PerfectMatching> {
    if sigma.len() != m.partner.len() {
        return domain(format!("permutation of {} points acting on {} vertices", sigma.len(), m.partner.len()));
    }
    check_permutation(sigma)?;
    Ok(apply_unchecked(sigma, m))
}

pub(crate) fn apply_unchecked(sigma: &[u32], m: &PerfectMatching) -> PerfectMatching {
    let mut partner = vec![0u8; m.partner.len()];
    for (v, &p) in m.partner.iter().enumerate() {
        partner[sigma[v] as usize - 1] = (sigma[p as usize] - 1) as u8;
    }
    PerfectMatching { partner }
}

/// The stabilizer of `m*` in `S_{2n}` (the hyperoctahedral group, order
/// `2^n n!`), as 1-based one-line permutations.
pub fn base_stabilizer(n: u32) -> Vec<Vec<u32>> {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let n = n as usize;
    let mut out = Vec::new();
    for block_perm in perms(n) {
        for flips in 0..(1u32 << n) {
            let mut sigma = vec![0u32; 2 * n];
            for (i, &target) in block_perm.iter().enumerate() {
                let flip = (flips >> i) & 1 == 1;
                let (a, b) = (2 * target as u32 + 1, 2 * target as u32 + 2);
                let (a, b) = if flip { (b, a) } else { (a, b) };
                sigma[2 * i] = a;
                sigma[2 * i + 1] = b;
            }
            out.push(sigma);
        }
    }
    out
}

/// A set of pairwise vertex-disjoint edges, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    edges: Vec<(u32, u32)>,
}

impl EdgeSet {
    pub fn new(edges: &[(u32, u32)]) -> Result<Self> {
        let mut norm: Vec<(u32, u32)> =
            edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        norm.sort_unstable();
        let mut used = std::collections::HashSet::new();
        for &(u, v) in &norm {
            if u == v || u == 0 {
                return domain(format!("bad edge {u} {v}"));
            }
            if !used.insert(u) || !used.insert(v) {
                return domain(format!("edges overlap at {u} {v}"));
            }
        }
        Ok(EdgeSet { edges: norm })
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn max_vertex(&self) -> u32 {
        self.edges.iter().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn is_subset_of(&self, m: &PerfectMatching) -> bool {
        self.edges.iter().all(|&(u, v)| m.contains_edge(u, v))
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u} {v}")).collect();
        f.write_str(&parts.join("|"))
    }
}

impl FromStr for EdgeSet {
    type Err = Error;

    /// Parses `"1 2|3 4"`; the empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return EdgeSet::new(&[]);
        }
        let (pairs, singles) = parse_pairs(s)?;
        if !singles.is_empty() {
            return Err(Error::Parse(format!("lone vertex in edge set {s:?}")));
        }
        EdgeSet::new(&pairs)
    }
}

/// Every collection of `t` pairwise disjoint edges of `K_{2n}`, each sorted.
pub fn all_edge_sets(n: u32, t: u32) -> Vec<EdgeSet> {
    let size = 2 * n;
    let all_edges: Vec<(u32, u32)> =
        (1..=size).flat_map(|u| (u + 1..=size).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    fn rec(
        all: &[(u32, u32)],
        from: usize,
        t: u32,
        used: &mut Vec<u32>,
        chosen: &mut Vec<(u32, u32)>,
        out: &mut Vec<EdgeSet>,
    ) {
        if chosen.len() == t as usize {
            out.push(EdgeSet::new(chosen).expect("disjoint"));
            return;
        }
        for i in from..all.len() {
            let (u, v) = all[i];
            if used.contains(&u) || used.contains(&v) {
                continue;
            }
            used.extend([u, v]);
            chosen.push((u, v));
            rec(all, i + 1, t, used, chosen, out);
            chosen.pop();
            used.truncate(used.len() - 2);
        }
    }
    rec(&all_edges, 0, t, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// `F_T = { m : T ⊆ m }`, in lexicographic order.
pub fn canonical_family(fixed: &EdgeSet, n: u32) -> Result<Vec<PerfectMatching>> {
    if fixed.max_vertex() > 2 * n {
        return domain(format!("edge set {fixed} does not fit in K_{}", 2 * n));
    }
    if n - (fixed.len() as u32) > MATCHING_CAP {
        return resource(format!("canonical family too large for n={n}"));
    }
    let size = 2 * n as usize;
    let mut partner = vec![0u8; size];
    let mut covered = vec![false; size];
    for &(u, v) in fixed.edges() {
        let (a, b) = (u as usize - 1, v as usize - 1);
        partner[a] = b as u8;
        partner[b] = a as u8;
        covered[a] = true;
        covered[b] = true;
    }
    let mut free: Vec<u8> = (0..size).filter(|&v| !covered[v]).map(|v| v as u8).collect();
    let mut out = Vec::new();
    extend_matchings(&mut partner, &mut free, &mut out);
    let mut out: Vec<PerfectMatching> = out.into_iter().map(PerfectMatching::from_partner).collect();
    out.sort();
    Ok(out)
}

/// Every pair (including a member with itself) shares at least `t` edges.
pub fn is_t_intersecting(family: &[PerfectMatching], t: u32) -> bool {
    family.iter().enumerate().all(|(i, a)| {
        family[i + 1..].iter().all(|b| a.shared_edges(b) >= t as usize)
    }) && family.iter().all(|m| m.n() >= t)
}

/// A matching of `K_{2n-1}` leaving exactly one vertex unmatched.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NearPerfectMatching {
    /// `partner[v] == v` marks the unmatched vertex.
    partner: Vec<u8>,
}

impl NearPerfectMatching {
    /// `vertices` must be odd; every vertex but one must be covered.
    pub fn from_pairs(vertices: u32, pairs: &[(u32, u32)]) -> Result<Self> {
        if vertices % 2 == 0 || pairs.len() as u32 * 2 + 1 != vertices {
            return domain(format!("{} edges cannot nearly match {vertices} vertices", pairs.len()));
        }
        let size = vertices as usize;
        let mut partner = vec![u8::MAX; size];
        for &(u, v) in pairs {
            if u == v || u == 0 || v == 0 || u as usize > size || v as usize > size {
                return domain(format!("bad edge {u} {v}"));
            }
            let (a, b) = (u as usize - 1, v as usize - 1);
            if partner[a] != u8::MAX || partner[b] != u8::MAX {
                return domain(format!("edges are not disjoint at {u} {v}"));
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        let free = partner.iter().position(|&p| p == u8::MAX).expect("one vertex left");
        partner[free] = free as u8;
        Ok(NearPerfectMatching { partner })
    }

    /// `n` such that this is a matching of `K_{2n-1}`.
    pub fn n(&self) -> u32 {
        (self.partner.len() as u32).div_ceil(2)
    }

    pub fn unmatched(&self) -> u32 {
        self.partner.iter().enumerate().find(|(v, &p)| p as usize == *v).unwrap().0 as u32 + 1
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|(v, &p)| *v < p as usize)
            .map(|(v, &p)| (v as u32 + 1, p as u32 + 1))
            .collect()
    }

    pub fn shared_edges(&self, other: &NearPerfectMatching) -> usize {
        self.partner
            .iter()
            .zip(&other.partner)
            .enumerate()
            .filter(|(v, (a, b))| a == b && *v < **a as usize)
            .count()
    }
}

impl fmt::Display for NearPerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(u32, String)> =
            self.edges().iter().map(|(u, v)| (*u, format!("{u} {v}"))).collect();
        let free = self.unmatched();
        parts.push((free, free.to_string()));
        parts.sort();
        let joined: Vec<String> = parts.into_iter().map(|p| p.1).collect();
        f.write_str(&joined.join("|"))
    }
}

impl FromStr for NearPerfectMatching {
    type Err = Error;

    /// Parses `"1 2|3"`; the singleton block is the unmatched vertex.
    fn from_str(s: &str) -> Result<Self> {
        let (pairs, singles) = parse_pairs(s)?;
        if singles.len() != 1 {
            return Err(Error::Parse(format!("need exactly one unmatched vertex in {s:?}")));
        }
        NearPerfectMatching::from_pairs(pairs.len() as u32 * 2 + 1, &pairs)
    }
}

/// All `(2n-1)!!` near-perfect matchings of `K_{2n-1}`.
pub fn enumerate_near_matchings(n: u32) -> Result<Vec<NearPerfectMatching>> {
    if n == 0 {
        return domain("near-perfect matchings need n >= 1");
    }
    if n > MATCHING_CAP {
        return resource(format!("refusing to enumerate M_(2n-1) for n={n} > {MATCHING_CAP}"));
    }
    let size = 2 * n as usize - 1;
    let mut out = Vec::new();
    for free in 0..size {
        let mut partner = vec![0u8; size];
        partner[free] = free as u8;
        let mut rest: Vec<u8> = (0..size).filter(|&v| v != free).map(|v| v as u8).collect();
        let mut perfect = Vec::new();
        extend_matchings(&mut partner, &mut rest, &mut perfect);
        out.extend(perfect.into_iter().map(|partner| NearPerfectMatching { partner }));
    }
    out.sort();
    Ok(out)
}

/// Component vertex counts of `m ∪ m'`: every cycle of length `2c` gives the
/// even part `2c` (a doubled edge gives 2), and the single path between the
/// two unmatched vertices gives its odd vertex count.
pub fn near_cycle_type(m: &NearPerfectMatching, other: &NearPerfectMatching) -> Result<Partition> {
    if m.partner.len() != other.partner.len() {
        return domain("near-perfect matchings of different sizes");
    }
    let size = m.partner.len();
    let mut seen = vec![false; size];
    let mut parts = Vec::new();
    // The path starts at m's unmatched vertex and alternates m', m, ...
    let start = m.unmatched() as usize - 1;
    let mut count = 0u32;
    let mut v = start;
    let mut use_other = true;
    loop {
        seen[v] = true;
        count += 1;
        let next = if use_other { other.partner[v] } else { m.partner[v] } as usize;
        if next == v {
            break;
        }
        v = next;
        use_other = !use_other;
    }
    parts.push(count);
    for s in 0..size {
        if seen[s] {
            continue;
        }
        let mut count = 0u32;
        let mut v = s;
        loop {
            seen[v] = true;
            let w = m.partner[v] as usize;
            seen[w] = true;
            count += 2;
            v = other.partner[w] as usize;
            if v == s {
                break;
            }
        }
        parts.push(count);
    }
    Ok(Partition::from_unsorted(parts))
}

/// `psi`: match vertex `2n` with the unmatched vertex.
pub fn lift_near(m: &NearPerfectMatching) -> PerfectMatching {
    let size = m.partner.len();
    let mut partner = m.partner.clone();
    let free = m.unmatched() as usize - 1;
    partner[free] = size as u8;
    partner.push(free as u8);
    PerfectMatching { partner }
}
