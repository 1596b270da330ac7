//! Cyclic group actions on graphs.
//!
//! A [`CyclicAction`] is a generator permutation checked to be an automorphism
//! of the graph it acts on. Fixed independent sets of any group element are
//! found by composing whole orbits of that element rather than by filtering
//! every independent set; the filter is kept as an oracle.

use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graphs::{self, book_vertex, induced_subgraph, Graph, VertexSet};
use crate::indep;

/// A bijection on `0..n`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            if v >= image.len() || std::mem::replace(&mut seen[v], true) {
                return Err(invalid("image array is not a bijection"));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    /// `i -> i + shift (mod n)`.
    pub fn rotation(n: usize, shift: i64) -> Self {
        if n == 0 {
            return Self::identity(0);
        }
        let s = shift.rem_euclid(n as i64) as usize;
        Self {
            image: (0..n).map(|i| (i + s) % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `other ∘ self`: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    /// `self^t` for any integer `t`, computed cycle by cycle.
    pub fn pow(&self, t: i64) -> Permutation {
        let mut image = vec![0; self.len()];
        for cycle in self.cycles() {
            let len = cycle.len() as i64;
            let step = t.rem_euclid(len) as usize;
            for (pos, &v) in cycle.iter().enumerate() {
                image[v] = cycle[(pos + step) % cycle.len()];
            }
        }
        Permutation { image }
    }

    /// Cycles in canonical form: each starts at its minimum element and the
    /// list is sorted by those minima. Fixed points appear as singletons.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.image[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.image[v];
            }
            out.push(cycle);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| acc.lcm(&c.len()))
    }

    /// Whether `<self>` acts freely, i.e. every cycle has length `order()`.
    pub fn acts_freely(&self) -> bool {
        let cycles = self.cycles();
        let order = cycles.iter().fold(1, |acc: usize, c| acc.lcm(&c.len()));
        cycles.iter().all(|c| c.len() == order)
    }

    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.len() == g.n_vertices()
            && g.edges()
                .all(|(u, v)| g.has_edge(self.image[u], self.image[v]))
    }

    pub fn apply_set(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_unsorted(s.ids().iter().map(|&v| self.image[v]).collect())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<usize>) -> Result<Self> {
        Self::new(image)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.image
    }
}

pub fn order_of(perm: &Permutation) -> usize {
    perm.order()
}

pub fn orbits(perm: &Permutation) -> Vec<Vec<usize>> {
    perm.cycles()
}

/// A cyclic group acting on a graph through a generating automorphism.
#[derive(Clone, Debug)]
pub struct CyclicAction {
    generator: Permutation,
    order: usize,
    graph: Arc<Graph>,
}

impl CyclicAction {
    pub fn new(graph: Arc<Graph>, generator: Permutation) -> Result<Self> {
        if generator.len() != graph.n_vertices() {
            return Err(invalid(format!(
                "generator acts on {} points but the graph has {} vertices",
                generator.len(),
                graph.n_vertices()
            )));
        }
        if !generator.is_automorphism_of(&graph) {
            return Err(Error::NotAutomorphism);
        }
        let order = generator.order();
        Ok(Self {
            generator,
            order,
            graph,
        })
    }

    pub fn generator(&self) -> &Permutation {
        &self.generator
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// The group element `generator^t`.
    pub fn element(&self, t: i64) -> Permutation {
        self.generator.pow(t)
    }

    /// One element of each order `d | order()`, as `(d, t)` with the element
    /// being `generator^t`, `t = order / d`. Ascending in `d`.
    pub fn divisor_representatives(&self) -> Vec<(usize, usize)> {
        (1..=self.order)
            .filter(|d| self.order % d == 0)
            .map(|d| (d, self.order / d))
            .collect()
    }

    pub fn is_free(&self) -> bool {
        self.generator.acts_freely()
    }
}

/// `i -> i + 1 (mod n)` on a graph with vertex set `0..n`.
pub fn rotation_action(n: usize, graph: Arc<Graph>) -> Result<CyclicAction> {
    if graph.n_vertices() != n {
        return Err(invalid(format!(
            "rotation of order {n} needs {n} vertices, graph has {}",
            graph.n_vertices()
        )));
    }
    CyclicAction::new(graph, Permutation::rotation(n, 1))
}

/// Extends an action to the whiskering of its graph: `v + n -> g(v) + n`.
pub fn whisker_extend(action: &CyclicAction, whiskered: Arc<Graph>) -> Result<CyclicAction> {
    let n = action.graph.n_vertices();
    if whiskered.whisker_core() != Some(n) {
        return Err(invalid(format!(
            "graph is not a recorded whiskering of a {n}-vertex graph"
        )));
    }
    let g = &action.generator;
    let image = (0..n)
        .map(|v| g.apply(v))
        .chain((0..n).map(|v| g.apply(v) + n));
    CyclicAction::new(whiskered, Permutation::new(image.collect())?)
}

fn require_structure(graph: &Graph, expected: Result<Graph>, what: &str) -> Result<()> {
    match expected {
        Ok(e) if e.same_structure(graph) => Ok(()),
        Ok(_) => Err(invalid(format!("graph is not the {what}"))),
        Err(e) => Err(e),
    }
}

/// Order-`n` action on `gear(n)`: rotate the outer cycle by two, fix the hub.
pub fn gear_action(n: usize, graph: Arc<Graph>) -> Result<CyclicAction> {
    require_structure(&graph, graphs::gear(n), &format!("gear graph G_{n}"))?;
    let m = 2 * n;
    let image = (0..m).map(|i| (i + 2) % m).chain([m]);
    CyclicAction::new(graph, Permutation::new(image.collect())?)
}

/// Order-`n` action on `helm(n)`: rotate cycle and pendants, fix the center.
pub fn helm_action(n: usize, graph: Arc<Graph>) -> Result<CyclicAction> {
    require_structure(&graph, graphs::helm(n), &format!("helm graph H_{n}"))?;
    let image = (0..n)
        .map(|i| (i + 1) % n)
        .chain((0..n).map(|i| n + (i + 1) % n))
        .chain([2 * n]);
    CyclicAction::new(graph, Permutation::new(image.collect())?)
}

/// Action on `book(n)` by page rotation `i -> i + 1 (mod n)`; spine fixed.
pub fn book_action(n: usize, graph: Arc<Graph>) -> Result<CyclicAction> {
    book_action_with(n, graph, &Permutation::rotation(n, 1))
}

/// Action on `book(n)` through an arbitrary free permutation of the pages.
pub fn book_action_with(n: usize, graph: Arc<Graph>, pages: &Permutation) -> Result<CyclicAction> {
    require_structure(&graph, graphs::book(n), &format!("book graph B_{n}"))?;
    if pages.len() != n || !pages.acts_freely() {
        return Err(invalid("page permutation must act freely on 0..n"));
    }
    let mut image = vec![0; 2 * n + 2];
    for i in 0..=n {
        let j = if i < n { pages.apply(i) } else { n };
        image[book_vertex(n, i, true)] = book_vertex(n, j, true);
        image[book_vertex(n, i, false)] = book_vertex(n, j, false);
    }
    CyclicAction::new(graph, Permutation::new(image)?)
}

/// All `S` in `I_k(g)` with `perm(S) = S`, lexicographically sorted.
///
/// A fixed set is a union of whole cycles of `perm`, so the search picks
/// cycles (skipping those that contain an edge) whose sizes sum to `k`.
pub fn fixed_independent_sets(g: &Graph, perm: &Permutation, k: usize) -> Result<Vec<VertexSet>> {
    if !perm.is_automorphism_of(g) {
        return Err(Error::NotAutomorphism);
    }
    let orbits: Vec<Vec<usize>> = perm
        .cycles()
        .into_iter()
        .filter(|c| g.is_independent(c))
        .collect();
    let m = orbits.len();
    let mut class = vec![usize::MAX; g.n_vertices()];
    for (i, c) in orbits.iter().enumerate() {
        for &v in c {
            class[v] = i;
        }
    }
    let mut conflict = vec![vec![false; m]; m];
    for (u, v) in g.edges() {
        let (a, b) = (class[u], class[v]);
        if a != usize::MAX && b != usize::MAX {
            conflict[a][b] = true;
            conflict[b][a] = true;
        }
    }
    // suffix sums of orbit sizes bound how much more can be collected
    let mut suffix = vec![0; m + 1];
    for i in (0..m).rev() {
        suffix[i] = suffix[i + 1] + orbits[i].len();
    }

    struct Search<'a> {
        orbits: &'a [Vec<usize>],
        conflict: &'a [Vec<bool>],
        suffix: &'a [usize],
        chosen: Vec<usize>,
        out: Vec<VertexSet>,
    }

    impl Search<'_> {
        fn run(&mut self, from: usize, remaining: usize) {
            if remaining == 0 {
                let ids = self
                    .chosen
                    .iter()
                    .flat_map(|&i| self.orbits[i].iter().copied())
                    .collect();
                self.out.push(VertexSet::from_unsorted(ids));
                return;
            }
            if self.suffix[from] < remaining {
                return;
            }
            for i in from..self.orbits.len() {
                if self.suffix[i] < remaining {
                    break;
                }
                let size = self.orbits[i].len();
                if size > remaining || self.chosen.iter().any(|&c| self.conflict[c][i]) {
                    continue;
                }
                self.chosen.push(i);
                self.run(i + 1, remaining - size);
                self.chosen.pop();
            }
        }
    }

    let mut search = Search {
        orbits: &orbits,
        conflict: &conflict,
        suffix: &suffix,
        chosen: Vec::new(),
        out: Vec::new(),
    };
    search.run(0, k);
    let mut out = search.out;
    out.sort_unstable();
    Ok(out)
}

/// Brute-force oracle for [`fixed_independent_sets`]: enumerate `I_k(g)` and
/// keep the sets that `perm` maps to themselves.
pub fn fixed_sets_by_filter(g: &Graph, perm: &Permutation, k: usize) -> Result<Vec<VertexSet>> {
    if !perm.is_automorphism_of(g) {
        return Err(Error::NotAutomorphism);
    }
    Ok(indep::enumerate_sets(g, k)
        .into_iter()
        .filter(|s| perm.apply_set(s) == *s)
        .collect())
}

/// `|I_k(G)^e|` for `e = generator^t` through the quotient graph: the count of
/// independent `k/d`-sets of `G/e` when `d = order(e)` divides `k`, else 0.
pub fn fixed_count_via_quotient(action: &CyclicAction, t: i64, k: usize) -> Result<u64> {
    let element = action.element(t);
    if !element.acts_freely() {
        return Err(Error::NotFreeAction);
    }
    let d = element.order();
    if k % d != 0 {
        return Ok(0);
    }
    let q = graphs::quotient(action.graph(), &element)?;
    let usable = induced_subgraph(&q.graph, |c| !q.looped[c]);
    Ok(indep::count(&usable.graph, k / d))
}
