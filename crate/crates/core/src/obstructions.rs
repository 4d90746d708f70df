//! Kneser graphs, chromatic numbers and the coloring bound on the index of
//! a deleted join.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complexes::{Complex, Label};
use crate::error::{Error, Result};

/// Largest component colored exactly by default.
pub const EXACT_COLORING_CAP: usize = 32;

/// A simple undirected graph with named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let edges = self.edges().into_iter().map(|(u, v)| [self.names[u].clone(), self.names[v].clone()]).collect();
        GraphJson { vertices: self.names.clone(), edges }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(deserializer)?;
        let index = |name: &str| {
            raw.vertices
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| serde::de::Error::custom(format!("unknown vertex {name:?}")))
        };
        let mut edges = Vec::with_capacity(raw.edges.len());
        for [u, v] in &raw.edges {
            edges.push((index(u)?, index(v)?));
        }
        Graph::new(raw.vertices.clone(), &edges).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut seen = BTreeSet::new();
        if let Some(dup) = names.iter().find(|x| !seen.insert(*x)) {
            return Err(Error::DuplicateLabel(dup.clone()));
        }
        let mut g = Self::empty(names);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::IndexOutOfRange { index: u.max(v), len: n });
            }
            if u == v {
                return Err(Error::InvalidInput(format!("loop at {}", g.names[u])));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Vertices `0..n`, no edges.
    pub fn edgeless(n: usize) -> Self {
        Self::empty((0..n).map(|i| i.to_string()).collect())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::edgeless(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::edgeless(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    fn empty(names: Vec<String>) -> Self {
        let n = names.len();
        Self { names, adj: vec![vec![false; n]; n] }
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u][v] = true;
        self.adj[v][u] = true;
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].iter().filter(|&&e| e).count()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.num_vertices();
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| self.adj[u][v]).map(move |v| (u, v))).collect()
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Self::empty(vertices.iter().map(|&v| self.names[v].clone()).collect());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adj[u][v] {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Connected components of the complement. The graph is the bipartite
    /// sum of the subgraphs they induce.
    pub fn complement_components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if v != u && !self.adj[u][v] && comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.num_vertices() && self.edges().iter().all(|&(u, v)| colors[u] != colors[v])
    }
}

fn set_name(set: &[Label]) -> String {
    format!("{{{}}}", set.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

/// One vertex per set, an edge between disjoint sets.
pub fn kneser_graph(family: &[Vec<Label>]) -> Graph {
    let sets: Vec<BTreeSet<&Label>> = family.iter().map(|s| s.iter().collect()).collect();
    let mut g = Graph::empty(family.iter().map(|s| set_name(s)).collect());
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].is_disjoint(&sets[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// `KG_{n,k}`: the `k`-subsets of `1..=n`.
pub fn kneser_nk(n: usize, k: usize) -> Graph {
    use itertools::Itertools;
    let family: Vec<Vec<Label>> =
        (1..=n as u64).combinations(k).map(|c| c.into_iter().map(Label::Int).collect()).collect();
    kneser_graph(&family)
}

/// Disjoint union of `g` and `h` plus every edge between them. Names are
/// prefixed `1:` and `2:`.
pub fn bipartite_sum(g: &Graph, h: &Graph) -> Graph {
    let (n, m) = (g.num_vertices(), h.num_vertices());
    let names = g.names.iter().map(|s| format!("1:{s}")).chain(h.names.iter().map(|s| format!("2:{s}"))).collect();
    let mut out = Graph::empty(names);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(n + u, n + v);
    }
    for u in 0..n {
        for v in 0..m {
            out.add_edge(u, n + v);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiMode {
    Exact,
    GreedyUpper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Chromatic {
    pub value: usize,
    pub exact: bool,
}

/// Chromatic number, summed over the bipartite-sum decomposition given by
/// [`Graph::complement_components`]. Exact mode colors each component by
/// branch and bound and refuses components above `EXACT_COLORING_CAP`.
pub fn chromatic_number(g: &Graph, mode: ChiMode) -> Result<Chromatic> {
    chromatic_number_capped(g, mode, EXACT_COLORING_CAP)
}

pub fn chromatic_number_capped(g: &Graph, mode: ChiMode, cap: usize) -> Result<Chromatic> {
    let mut total = 0;
    for comp in g.complement_components() {
        let sub = g.induced(&comp);
        total += match mode {
            ChiMode::GreedyUpper => greedy_coloring(&sub).into_iter().max().map_or(0, |c| c + 1),
            ChiMode::Exact => {
                if comp.len() > cap {
                    return Err(Error::TooLargeForExact { vertices: comp.len(), cap });
                }
                exact_chromatic(&sub)
            }
        };
    }
    Ok(Chromatic { value: total, exact: mode == ChiMode::Exact })
}

/// Largest-degree-first greedy coloring.
pub fn greedy_coloring(g: &Graph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colors = vec![usize::MAX; n];
    for &v in &order {
        let used: BTreeSet<usize> = (0..n).filter(|&u| g.adj[v][u] && colors[u] != usize::MAX).map(|u| colors[u]).collect();
        colors[v] = (0..).find(|c| !used.contains(c)).expect("unbounded range");
    }
    colors
}

fn greedy_clique(masks: &[u64]) -> Vec<usize> {
    let n = masks.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(masks[v].count_ones()));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| masks[v] >> u & 1 == 1) {
            clique.push(v);
        }
    }
    clique
}

struct Search<'a> {
    masks: &'a [u64],
    colors: Vec<Option<usize>>,
    best: usize,
}

impl Search<'_> {
    fn neighbor_colors(&self, v: usize) -> u64 {
        let mut seen = 0u64;
        let mut m = self.masks[v];
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            if let Some(c) = self.colors[u] {
                seen |= 1 << c;
            }
        }
        seen
    }

    /// Uncolored vertex with the most distinct neighbor colors, ties by degree.
    fn pick(&self) -> Option<usize> {
        (0..self.masks.len())
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| (self.neighbor_colors(v).count_ones(), self.masks[v].count_ones(), std::cmp::Reverse(v)))
    }

    fn run(&mut self, used: usize, lower: usize) {
        if used >= self.best {
            return;
        }
        let Some(v) = self.pick() else {
            self.best = used;
            return;
        };
        let forbidden = self.neighbor_colors(v);
        for c in 0..=used {
            if c == used && used + 1 >= self.best {
                break;
            }
            if forbidden >> c & 1 == 1 {
                continue;
            }
            self.colors[v] = Some(c);
            self.run(used.max(c + 1), lower);
            self.colors[v] = None;
            if self.best == lower {
                return;
            }
        }
    }
}

/// Exact chromatic number of a graph with at most 64 vertices.
fn exact_chromatic(g: &Graph) -> usize {
    let n = g.num_vertices();
    if n == 0 {
        return 0;
    }
    assert!(n <= 64, "bitmask search handles at most 64 vertices");
    let masks: Vec<u64> =
        (0..n).map(|v| (0..n).filter(|&u| g.adj[v][u]).fold(0u64, |m, u| m | 1 << u)).collect();
    let clique = greedy_clique(&masks);
    let upper = greedy_coloring(g).into_iter().max().map_or(0, |c| c + 1);
    if clique.len() == upper {
        return upper;
    }
    let mut s = Search { masks: &masks, colors: vec![None; n], best: upper };
    for (c, &v) in clique.iter().enumerate() {
        s.colors[v] = Some(c);
    }
    s.run(clique.len(), clique.len());
    s.best
}

/// `n - 2k + 2`, valid for `0 < 2k - 1 <= n`.
pub fn lovasz_kneser_chi(n: usize, k: usize) -> Result<usize> {
    if k == 0 || 2 * k - 1 > n {
        return Err(Error::OutOfTheoremRange { n, k });
    }
    Ok(n + 2 - 2 * k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Embeddable {
    No,
    Unknown,
}

/// Bounds on the index of the deleted join of a complex on `n` vertices,
/// and what they say about embedding it into a sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionVerdict {
    pub complex_size: usize,
    pub chi_used: usize,
    pub chi_is_exact: bool,
    pub sarkaria_lower: i64,
    pub djn_dim_upper: i64,
    pub target_sphere: i64,
    pub embeddable: Embeddable,
    /// `sarkaria_lower <= djn_dim_upper`; only meaningful when `chi_is_exact`.
    pub interval_consistent: bool,
}

/// The coloring bound `n - chi(KG(nf K)) - 1` together with the chromatic
/// number used.
pub fn sarkaria_bound(k: &Complex, mode: ChiMode) -> Result<(i64, Chromatic)> {
    let chi = chromatic_number(&kneser_graph(&k.minimal_nonfaces()), mode)?;
    Ok((k.num_vertices() as i64 - chi.value as i64 - 1, chi))
}

/// The same bound for `K_1 * ... * K_r` computed factor by factor: the
/// minimal non-faces of a join are those of the factors, and non-faces from
/// different factors are disjoint, so chromatic numbers add.
pub fn sarkaria_bound_join(factors: &[Complex], mode: ChiMode) -> Result<(i64, Chromatic)> {
    let mut n = 0;
    let mut chi = Chromatic { value: 0, exact: true };
    for f in factors {
        let c = chromatic_number(&kneser_graph(&f.minimal_nonfaces()), mode)?;
        n += f.num_vertices();
        chi.value += c.value;
        chi.exact &= c.exact;
    }
    Ok((n as i64 - chi.value as i64 - 1, chi))
}

/// `dim djn K`, an upper bound for its index.
pub fn djn_dim_upper(k: &Complex) -> i64 {
    k.deleted_join_dim() as i64
}

fn verdict(n: usize, lower: i64, chi: Chromatic, upper: i64, d: i64) -> ObstructionVerdict {
    ObstructionVerdict {
        complex_size: n,
        chi_used: chi.value,
        chi_is_exact: chi.exact,
        sarkaria_lower: lower,
        djn_dim_upper: upper,
        target_sphere: d,
        embeddable: if lower > d { Embeddable::No } else { Embeddable::Unknown },
        interval_consistent: lower <= upper,
    }
}

/// `No` when the coloring bound exceeds `d`: then `K` does not embed into
/// the `d`-sphere. Otherwise nothing is concluded.
pub fn nonembeddable(k: &Complex, d: i64, mode: ChiMode) -> Result<ObstructionVerdict> {
    let (lower, chi) = sarkaria_bound(k, mode)?;
    Ok(verdict(k.num_vertices(), lower, chi, djn_dim_upper(k), d))
}

/// [`nonembeddable`] for a join given by its factors; the dimension bound is
/// still computed on the join itself.
pub fn nonembeddable_join(factors: &[Complex], joined: &Complex, d: i64, mode: ChiMode) -> Result<ObstructionVerdict> {
    let (lower, chi) = sarkaria_bound_join(factors, mode)?;
    Ok(verdict(joined.num_vertices(), lower, chi, djn_dim_upper(joined), d))
}
