//! Simple undirected graphs and the constructions used by the sieving checks.
//!
//! Vertex ids are pinned per family so actions and golden tests are
//! reproducible:
//!
//! | family        | ids                                                        |
//! |---------------|------------------------------------------------------------|
//! | `whisker(G)`  | core `0..n`, pendant of `v` is `v + n`                     |
//! | `gear(n)`     | outer cycle `0..2n`, hub `2n`                              |
//! | `helm(n)`     | cycle `0..n`, pendants `n..2n`, center `2n`                |
//! | `book(n)`     | `(i, +1) -> i`, `(i, -1) -> n + 1 + i` for `i in 0..=n`    |

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::actions::Permutation;
use crate::error::{invalid, Error, Result};

/// Name and integer parameters of the construction that produced a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTag {
    pub name: String,
    pub params: BTreeMap<String, i64>,
}

impl FamilyTag {
    pub fn new<'a>(name: &str, params: impl IntoIterator<Item = (&'a str, i64)>) -> Self {
        Self {
            name: name.to_owned(),
            params: params.into_iter().map(|(k, v)| (k.to_owned(), v)).collect(),
        }
    }

    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).copied()
    }
}

/// Parameter key under which a whiskering records its core vertex count.
pub const WHISKER_CORE_KEY: &str = "core_vertices";

/// A finite simple graph on `0..n_vertices` with sorted neighbor lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    family: Option<FamilyTag>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            family: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
            nb.dedup();
        }
        Ok(Self {
            adjacency,
            family: None,
        })
    }

    pub fn with_family(mut self, tag: FamilyTag) -> Self {
        self.family = Some(tag);
        self
    }

    pub fn family(&self) -> Option<&FamilyTag> {
        self.family.as_ref()
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|nb| nb.binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// True when no two of `ids` are adjacent.
    pub fn is_independent(&self, ids: &[usize]) -> bool {
        ids.iter()
            .enumerate()
            .all(|(i, &u)| ids[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Neighborhoods as bitmasks, available when the graph has at most 64 vertices.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        (self.n_vertices() <= 64).then(|| {
            self.adjacency
                .iter()
                .map(|nb| nb.iter().fold(0u64, |m, &v| m | (1u64 << v)))
                .collect()
        })
    }

    /// Edge-set equality, ignoring family tags.
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.adjacency == other.adjacency
    }

    /// Core vertex count if this graph is a recorded whiskering.
    pub fn whisker_core(&self) -> Option<usize> {
        let tag = self.family.as_ref()?;
        if !tag.name.starts_with("whisker") {
            return None;
        }
        let core = usize::try_from(tag.param(WHISKER_CORE_KEY)?).ok()?;
        (2 * core == self.n_vertices()).then_some(core)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n_vertices())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .field("family", &self.family)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    family: Option<FamilyTag>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n_vertices(),
            edges: self.edges().collect(),
            family: self.family.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        let g = Graph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)?;
        Ok(match repr.family {
            Some(tag) => g.with_family(tag),
            None => g,
        })
    }
}

/// A strictly increasing list of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(ids: Vec<usize>) -> Result<Self> {
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("vertex ids must be strictly increasing"));
        }
        Ok(Self(ids))
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = Error;

    fn try_from(ids: Vec<usize>) -> Result<Self> {
        Self::new(ids)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The `r`-th power of the `n`-cycle: `i ~ j` iff their circular distance
/// lies in `1..=r`. Requires `2r < n`.
pub fn cycle_power(n: usize, r: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("cycle power needs n >= 1"));
    }
    if 2 * r >= n {
        return Err(invalid(format!(
            "cycle power needs 2r < n, got n = {n}, r = {r}"
        )));
    }
    let edges = (0..n).flat_map(|i| (1..=r).map(move |l| (i, (i + l) % n)));
    Ok(Graph::from_edges(n, edges)?.with_family(FamilyTag::new(
        "cycle-power",
        [("n", n as i64), ("r", r as i64)],
    )))
}

/// The `r`-th power of the path on `n` vertices: `i ~ j` iff `1 <= |i - j| <= r`.
pub fn path_power(n: usize, r: usize) -> Graph {
    let edges = (0..n).flat_map(|i| (1..=r).filter(move |l| i + l < n).map(move |l| (i, i + l)));
    Graph::from_edges(n, edges)
        .expect("path power edges are in range")
        .with_family(FamilyTag::new(
            "path-power",
            [("n", n as i64), ("r", r as i64)],
        ))
}

/// Attaches a pendant vertex `v + n` to every vertex `v` of `g`.
pub fn whisker(g: &Graph) -> Graph {
    let n = g.n_vertices();
    let edges = g.edges().chain((0..n).map(|v| (v, v + n)));
    let (name, mut params) = match g.family() {
        Some(tag) => (format!("whisker-{}", tag.name), tag.params.clone()),
        None => ("whisker".to_owned(), BTreeMap::new()),
    };
    params.insert(WHISKER_CORE_KEY.to_owned(), n as i64);
    Graph::from_edges(2 * n, edges)
        .expect("whisker edges are in range")
        .with_family(FamilyTag { name, params })
}

/// Gear graph: the `2n`-cycle plus a hub `2n` joined to every even vertex.
pub fn gear(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(invalid(format!("gear graph needs n >= 2, got {n}")));
    }
    let m = 2 * n;
    let cycle = (0..m).map(|i| (i, (i + 1) % m));
    let spokes = (0..n).map(|i| (2 * i, m));
    Ok(Graph::from_edges(m + 1, cycle.chain(spokes))?
        .with_family(FamilyTag::new("gear", [("n", n as i64)])))
}

/// Helm graph: whiskered `n`-cycle plus a center `2n` joined to the cycle.
pub fn helm(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid(format!("helm graph needs n >= 3, got {n}")));
    }
    let cycle = (0..n).map(|i| (i, (i + 1) % n));
    let whiskers = (0..n).map(|i| (i, i + n));
    let spokes = (0..n).map(|i| (i, 2 * n));
    Ok(
        Graph::from_edges(2 * n + 1, cycle.chain(whiskers).chain(spokes))?
            .with_family(FamilyTag::new("helm", [("n", n as i64)])),
    )
}

/// Vertex id of `(i, sign)` in [`book`]`(n)`.
pub fn book_vertex(n: usize, i: usize, positive: bool) -> usize {
    debug_assert!(i <= n);
    if positive {
        i
    } else {
        n + 1 + i
    }
}

/// Book graph: `n` quadrilateral pages sharing the spine `(n,+1) ~ (n,-1)`.
pub fn book(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("book graph needs n >= 1"));
    }
    let v = |i, s| book_vertex(n, i, s);
    let mut edges = Vec::with_capacity(3 * n + 1);
    for i in 0..n {
        edges.push((v(i, true), v(n, true)));
        edges.push((v(i, false), v(n, false)));
        edges.push((v(i, true), v(i, false)));
    }
    edges.push((v(n, true), v(n, false)));
    Ok(Graph::from_edges(2 * n + 2, edges)?.with_family(FamilyTag::new("book", [("n", n as i64)])))
}

/// An induced subgraph together with the id remapping that produced it.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

/// Induced subgraph on the vertices satisfying `keep`, renumbered in order.
pub fn induced_subgraph(g: &Graph, keep: impl Fn(usize) -> bool) -> InducedSubgraph {
    let new_to_old: Vec<usize> = (0..g.n_vertices()).filter(|&v| keep(v)).collect();
    let mut old_to_new = vec![None; g.n_vertices()];
    for (new, &old) in new_to_old.iter().enumerate() {
        old_to_new[old] = Some(new);
    }
    let edges = g
        .edges()
        .filter_map(|(u, v)| Some((old_to_new[u]?, old_to_new[v]?)));
    let graph = Graph::from_edges(new_to_old.len(), edges).expect("induced edges are in range");
    InducedSubgraph {
        graph,
        old_to_new,
        new_to_old,
    }
}

fn check_vertex(g: &Graph, x: usize) -> Result<()> {
    if x >= g.n_vertices() {
        return Err(invalid(format!(
            "vertex {x} out of range for {} vertices",
            g.n_vertices()
        )));
    }
    Ok(())
}

/// `G \ x`.
pub fn delete_vertex(g: &Graph, x: usize) -> Result<InducedSubgraph> {
    check_vertex(g, x)?;
    Ok(induced_subgraph(g, |v| v != x))
}

/// `G \ N[x]`, removing `x` and all its neighbors.
pub fn delete_closed_neighborhood(g: &Graph, x: usize) -> Result<InducedSubgraph> {
    check_vertex(g, x)?;
    Ok(induced_subgraph(g, |v| v != x && !g.has_edge(x, v)))
}

/// Quotient of a graph by an automorphism.
///
/// Vertex `i` of `graph` is the `i`-th cycle of the automorphism ordered by
/// minimum element, and `labels[i]` is that minimum. A cycle containing an
/// edge of the original graph cannot be represented by a simple-graph vertex;
/// such cycles are flagged in `looped` and can never lie in a fixed
/// independent set.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub graph: Graph,
    pub labels: Vec<usize>,
    pub class_of: Vec<usize>,
    pub looped: Vec<bool>,
}

impl Quotient {
    /// Quotient graph relabeled through `C -> min C`, when the minima are
    /// exactly `0..m` for `m` cycles.
    pub fn min_label_graph(&self) -> Option<Graph> {
        let m = self.labels.len();
        if self.labels.iter().any(|&l| l >= m) {
            return None;
        }
        let edges = self
            .graph
            .edges()
            .map(|(u, v)| (self.labels[u], self.labels[v]));
        Graph::from_edges(m, edges).ok()
    }

    pub fn has_loops(&self) -> bool {
        self.looped.iter().any(|&l| l)
    }
}

pub fn quotient(g: &Graph, perm: &Permutation) -> Result<Quotient> {
    if !perm.is_automorphism_of(g) {
        return Err(Error::NotAutomorphism);
    }
    let cycles = perm.cycles();
    let mut class_of = vec![0; g.n_vertices()];
    for (c, cycle) in cycles.iter().enumerate() {
        for &v in cycle {
            class_of[v] = c;
        }
    }
    let mut looped = vec![false; cycles.len()];
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (cu, cv) = (class_of[u], class_of[v]);
        if cu == cv {
            looped[cu] = true;
        } else {
            edges.push((cu, cv));
        }
    }
    let graph = Graph::from_edges(cycles.len(), edges)?;
    Ok(Quotient {
        graph,
        labels: cycles.iter().map(|c| c[0]).collect(),
        class_of,
        looped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_simple_symmetric(g: &Graph) {
        for v in 0..g.n_vertices() {
            let nb = g.neighbors(v);
            assert!(nb.windows(2).all(|w| w[0] < w[1]), "sorted, no duplicates");
            assert!(!nb.contains(&v), "no loops");
            for &u in nb {
                assert!(g.has_edge(u, v), "symmetric");
            }
        }
    }

    #[test]
    fn cycle_power_examples() {
        let g = cycle_power(4, 0).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (4, 0));
        let g = cycle_power(6, 1).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (6, 6));
        let g = cycle_power(12, 2).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (12, 24));
        assert!((0..12).all(|v| g.degree(v) == 4));
        assert!(cycle_power(4, 2).is_err());
        assert!(cycle_power(0, 0).is_err());
        assert_eq!(cycle_power(1, 0).unwrap().n_vertices(), 1);
    }

    #[test]
    fn path_power_examples() {
        let g = path_power(5, 2);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(
            edges,
            vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
        );
        assert_eq!(path_power(7, 0).n_edges(), 0);
    }

    #[test]
    fn whisker_examples() {
        let w = whisker(&cycle_power(6, 1).unwrap());
        assert_eq!((w.n_vertices(), w.n_edges()), (12, 12));
        assert_eq!(w.whisker_core(), Some(6));
        assert_eq!(w.family().unwrap().name, "whisker-cycle-power");
        let k2 = whisker(&Graph::empty(1));
        assert_eq!(k2.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let w = whisker(&cycle_power(6, 2).unwrap());
        assert_eq!((w.n_vertices(), w.n_edges()), (12, 18));
        assert!((6..12).all(|v| w.degree(v) == 1));
    }

    #[test]
    fn gear_examples() {
        let g = gear(3).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (7, 9));
        assert_eq!(g.neighbors(6), &[0, 2, 4]);
        let g = gear(4).unwrap();
        assert_eq!((g.n_vertices(), g.n_edges()), (9, 12));
        assert!(gear(1).is_err());
    }

    #[test]
    fn helm_examples() {
        let h = helm(6).unwrap();
        assert_eq!((h.n_vertices(), h.n_edges()), (13, 18));
        assert!((6..12).all(|v| h.degree(v) == 1));
        let h = helm(3).unwrap();
        assert_eq!((h.n_vertices(), h.n_edges()), (7, 9));
        assert!(helm(2).is_err());
    }

    #[test]
    fn book_examples() {
        let b = book(4).unwrap();
        assert_eq!((b.n_vertices(), b.n_edges()), (10, 13));
        assert!(b.has_edge(book_vertex(4, 4, true), book_vertex(4, 4, false)));
        let b1 = book(1).unwrap();
        // 0=(0,+) 1=(1,+) 2=(0,-) 3=(1,-): the 4-cycle 0-1-3-2-0
        assert_eq!(
            b1.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 3), (2, 3)]
        );
        assert!((0..4).all(|v| b1.degree(v) == 2));
        for n in 1..6 {
            let b = book(n).unwrap();
            assert!(b.has_edge(n, 2 * n + 1));
        }
        assert!(book(0).is_err());
    }

    #[test]
    fn family_edge_counts() {
        for n in 1..=16 {
            for r in (0..n).filter(|r| 2 * r < n) {
                let g = cycle_power(n, r).unwrap();
                assert_eq!(g.n_edges(), n * r);
                assert_simple_symmetric(&g);
                let w = whisker(&g);
                assert_eq!(w.n_edges(), g.n_edges() + g.n_vertices());
                assert_simple_symmetric(&w);
            }
            assert_simple_symmetric(&path_power(n, n / 3));
            assert_eq!(book(n).unwrap().n_edges(), 3 * n + 1);
            assert_simple_symmetric(&book(n).unwrap());
            if n >= 2 {
                assert_eq!(gear(n).unwrap().n_edges(), 3 * n);
                assert_simple_symmetric(&gear(n).unwrap());
            }
            if n >= 3 {
                assert_eq!(helm(n).unwrap().n_edges(), 3 * n);
                assert_simple_symmetric(&helm(n).unwrap());
            }
        }
    }

    #[test]
    fn deletions() {
        let gear3 = gear(3).unwrap();
        let sub = delete_vertex(&gear3, 6).unwrap();
        assert!(sub.graph.same_structure(&cycle_power(6, 1).unwrap()));
        assert_eq!(sub.old_to_new[6], None);
        assert_eq!(sub.new_to_old, vec![0, 1, 2, 3, 4, 5]);

        let sub = delete_closed_neighborhood(&helm(6).unwrap(), 12).unwrap();
        assert!(sub.graph.same_structure(&Graph::empty(6)));
        assert_eq!(sub.new_to_old, vec![6, 7, 8, 9, 10, 11]);

        let b4 = book(4).unwrap();
        let sub = delete_closed_neighborhood(&b4, book_vertex(4, 4, true)).unwrap();
        assert!(sub.graph.same_structure(&Graph::empty(4)));
        let sub = delete_closed_neighborhood(&b4, book_vertex(4, 4, false)).unwrap();
        assert!(sub.graph.same_structure(&Graph::empty(4)));

        assert!(delete_vertex(&gear3, 7).is_err());
        assert!(delete_closed_neighborhood(&gear3, 99).is_err());
    }

    #[test]
    fn quotient_examples() {
        let g = cycle_power(12, 1).unwrap();
        let q = quotient(&g, &Permutation::rotation(12, 4)).unwrap();
        assert_eq!(q.labels, vec![0, 1, 2, 3]);
        assert!(!q.has_loops());
        assert!(q
            .min_label_graph()
            .unwrap()
            .same_structure(&cycle_power(4, 1).unwrap()));

        let q = quotient(&g, &Permutation::identity(12)).unwrap();
        assert!(q.graph.same_structure(&g));

        // rotation by 2 on C_12^2 puts 0 and 2 in one cycle: a degenerate quotient
        let g = cycle_power(12, 2).unwrap();
        let q = quotient(&g, &Permutation::rotation(12, 2)).unwrap();
        assert_eq!(q.labels, vec![0, 1]);
        assert_eq!(q.looped, vec![true, true]);

        let p6 = path_power(6, 1);
        assert_eq!(
            quotient(&p6, &Permutation::rotation(6, 1)).unwrap_err(),
            Error::NotAutomorphism
        );
    }

    #[test]
    fn graph_json() {
        let g = gear(3).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert!(
            s.starts_with(r#"{"n":7,"edges":[[0,1],[0,5],[0,6],"#),
            "{s}"
        );
        assert!(
            s.ends_with(r#""family":{"name":"gear","params":{"n":3}}}"#),
            "{s}"
        );
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]],"family":null}"#).is_err());
    }

    #[test]
    fn vertex_set_invariants() {
        assert!(VertexSet::new(vec![0, 2, 2]).is_err());
        assert!(VertexSet::new(vec![3, 1]).is_err());
        let s = VertexSet::from_unsorted(vec![4, 0, 4, 2]);
        assert_eq!(s.ids(), &[0, 2, 4]);
        assert_eq!(s.to_string(), "0,2,4");
        assert!(serde_json::from_str::<VertexSet>("[2,1]").is_err());
    }
}
