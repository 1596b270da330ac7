//! Fixed-size independent sets, the shifted-sum statistic, and generating functions.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::actions::Permutation;
use crate::error::{invalid, Error, Result};
use crate::graphs::{Graph, VertexSet};
use crate::qpoly::IntLaurentPoly;

/// A family of size-`k` independent sets of one graph, sorted and duplicate free.
///
/// `complete` records whether the family is all of `I_k(graph)` or a
/// subfamily picked out by a filter.
#[derive(Clone, Debug)]
pub struct IndepFamily {
    graph: Arc<Graph>,
    k: usize,
    sets: Vec<VertexSet>,
    complete: bool,
}

impl IndepFamily {
    /// Wraps a subfamily. Every set must be independent of size `k`.
    pub fn from_sets(graph: Arc<Graph>, k: usize, mut sets: Vec<VertexSet>) -> Result<Self> {
        for s in &sets {
            if s.len() != k {
                return Err(Error::SizeMismatch {
                    expected: k,
                    found: s.len(),
                });
            }
            if s.ids().last().is_some_and(|&v| v >= graph.n_vertices()) {
                return Err(invalid(format!("set {{{s}}} has an out-of-range vertex")));
            }
            if !graph.is_independent(s.ids()) {
                return Err(invalid(format!("set {{{s}}} is not independent")));
            }
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(Self {
            graph,
            k,
            sets,
            complete: false,
        })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.sets.binary_search(s).is_ok()
    }

    pub fn subfamily(&self, keep: impl Fn(&VertexSet) -> bool) -> IndepFamily {
        IndepFamily {
            graph: self.graph.clone(),
            k: self.k,
            sets: self.sets.iter().filter(|s| keep(s)).cloned().collect(),
            complete: false,
        }
    }

    /// Whether `perm` maps the family onto itself.
    pub fn is_invariant_under(&self, perm: &Permutation) -> bool {
        self.sets.iter().all(|s| self.contains(&perm.apply_set(s)))
    }

    /// `Σ_A q^{ssum_r(A)}` over the family.
    pub fn gen_fun(&self, r: usize) -> IntLaurentPoly {
        gen_fun(&self.sets, StatParams { r, k: self.k }).expect("family members have size k")
    }
}

/// `I_k(g)`, lexicographically ordered.
pub fn enumerate(g: &Arc<Graph>, k: usize) -> IndepFamily {
    IndepFamily {
        graph: g.clone(),
        k,
        sets: enumerate_sets(g, k),
        complete: true,
    }
}

/// All independent sets of size `k`, lexicographically ordered.
pub fn enumerate_sets(g: &Graph, k: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    match g.neighbor_masks() {
        Some(masks) => {
            let all = if g.n_vertices() == 64 {
                u64::MAX
            } else {
                (1u64 << g.n_vertices()) - 1
            };
            masks_visit(&masks, all, k, &mut chosen, &mut |s| {
                out.push(VertexSet::new(s.to_vec()).expect("ascending"))
            });
        }
        None => lists_visit(g, 0, k, &mut chosen, &mut |s| {
            out.push(VertexSet::new(s.to_vec()).expect("ascending"))
        }),
    }
    out
}

/// `|I_k(g)|` without materializing the sets.
pub fn count(g: &Graph, k: usize) -> u64 {
    let mut n = 0u64;
    let mut chosen = Vec::with_capacity(k);
    match g.neighbor_masks() {
        Some(masks) => {
            let all = if g.n_vertices() == 64 {
                u64::MAX
            } else {
                (1u64 << g.n_vertices()) - 1
            };
            masks_visit(&masks, all, k, &mut chosen, &mut |_| n += 1);
        }
        None => lists_visit(g, 0, k, &mut chosen, &mut |_| n += 1),
    }
    n
}

// Candidates are the vertices above the last choice that are not adjacent to
// any choice so far; visiting them in ascending order yields lexicographic output.
fn masks_visit(
    masks: &[u64],
    candidates: u64,
    remaining: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        visit(chosen);
        return;
    }
    let mut rest = candidates;
    while rest.count_ones() as usize >= remaining {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        chosen.push(v);
        masks_visit(masks, rest & !masks[v], remaining - 1, chosen, visit);
        chosen.pop();
    }
}

fn lists_visit(
    g: &Graph,
    from: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        visit(chosen);
        return;
    }
    for v in from..g.n_vertices() {
        if g.n_vertices() - v < remaining {
            break;
        }
        if chosen.iter().any(|&u| g.has_edge(u, v)) {
            continue;
        }
        chosen.push(v);
        lists_visit(g, v + 1, remaining - 1, chosen, visit);
        chosen.pop();
    }
}

/// The `r` and `k` of the shifted-sum statistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StatParams {
    pub r: usize,
    pub k: usize,
}

/// `ssum_r(A) = -(r + 1) C(k, 2) + Σ_{a ∈ A} a`.
pub fn ssum(a: &VertexSet, p: StatParams) -> Result<i64> {
    if a.len() != p.k {
        return Err(Error::SizeMismatch {
            expected: p.k,
            found: a.len(),
        });
    }
    let k = p.k as i64;
    let sum: i64 = a.ids().iter().map(|&v| v as i64).sum();
    Ok(sum - (p.r as i64 + 1) * (k * (k - 1) / 2))
}

/// `Σ_A q^{ssum_r(A)}` over an arbitrary collection of `k`-sets.
pub fn gen_fun(sets: &[VertexSet], p: StatParams) -> Result<IntLaurentPoly> {
    let exps = sets
        .iter()
        .map(|s| ssum(s, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntLaurentPoly::from_terms(exps.into_iter().map(|e| (e, 1))))
}

/// Partitions a family on a whiskered graph by `j = |A ∩ V|`, where `V` is
/// the core vertex set. Every `j` in `0..=k` gets an entry, possibly empty.
pub fn split_by_core(fam: &IndepFamily) -> Result<BTreeMap<usize, IndepFamily>> {
    let core = fam
        .graph
        .whisker_core()
        .ok_or_else(|| invalid("family graph carries no whiskering metadata"))?;
    let mut parts: BTreeMap<usize, Vec<VertexSet>> = (0..=fam.k).map(|j| (j, Vec::new())).collect();
    for s in &fam.sets {
        let j = s.ids().iter().take_while(|&&v| v < core).count();
        parts.get_mut(&j).expect("j <= k").push(s.clone());
    }
    Ok(parts
        .into_iter()
        .map(|(j, sets)| {
            (
                j,
                IndepFamily {
                    graph: fam.graph.clone(),
                    k: fam.k,
                    sets,
                    complete: false,
                },
            )
        })
        .collect())
}
