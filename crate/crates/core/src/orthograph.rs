//! Finite orthogonality spaces: a set of points with a symmetric, irreflexive
//! relation, stored as adjacency bitsets.
//!
//! All quantified properties are decided by exhaustive search. The checks
//! return typed reports whose `Option` fields hold the first counterexample
//! found, or `None` when the property holds.

use crate::pointset::{PointSet, MAX_POINTS};
use crate::report::{Check, CheckReport};
use serde::Serialize;
use serde_json::json;
use std::collections::HashMap;
use thiserror::Error;

/// Default bound on the number of orthoclosed sets materialized.
pub const DEFAULT_FAMILY_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("an orthogonality space needs at least one point")]
    Empty,
    #[error("at most {MAX_POINTS} points are supported, got {0}")]
    TooManyPoints(usize),
    #[error("point {index} out of range for {n} points")]
    OutOfRange { index: usize, n: usize },
    #[error("orthogonality is irreflexive: self-loop at {0}")]
    SelfLoop(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("not a congruence: orthogonal points {0} and {1} share a block")]
    NotACongruence(usize, usize),
    #[error("not a bijection of the points: {0}")]
    NotABijection(String),
    #[error("permutation {0:?} is not an automorphism")]
    NotAnAutomorphism(Vec<usize>),
    #[error("more than {0} orthoclosed sets")]
    FamilyCap(usize),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;

/// A finite orthogonality space `(X, _|_)` on `X = {0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrthoGraph {
    adj: Vec<PointSet>,
}

impl OrthoGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_POINTS {
            return Err(GraphError::TooManyPoints(n));
        }
        let mut adj = vec![PointSet::EMPTY; n];
        for &(a, b) in edges {
            for i in [a, b] {
                if i >= n {
                    return Err(GraphError::OutOfRange { index: i, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a] = adj[a].with(b);
            adj[b] = adj[b].with(a);
        }
        Ok(OrthoGraph { adj })
    }

    /// Builds a graph from adjacency sets, symmetrizing nothing: the caller
    /// guarantees symmetry and irreflexivity.
    fn from_adj(adj: Vec<PointSet>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(i, a)| !a.contains(i)
            && a.iter().all(|j| adj[j].contains(i))));
        OrthoGraph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.n())
    }

    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    /// `{e}^_|_`.
    pub fn neighbours(&self, e: usize) -> PointSet {
        self.adj[e]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|a| self.adj[a].iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn check_subset(&self, a: PointSet) -> Result<()> {
        match a.difference(self.points()).first() {
            None => Ok(()),
            Some(index) => Err(GraphError::OutOfRange { index, n: self.n() }),
        }
    }

    pub(crate) fn perp_of(&self, a: PointSet) -> PointSet {
        a.iter().fold(self.points(), |acc, e| acc.intersection(self.adj[e]))
    }

    pub(crate) fn closure_of(&self, a: PointSet) -> PointSet {
        self.perp_of(self.perp_of(a))
    }

    /// `A^_|_ = { e : e _|_ a for all a in A }`; `perp(empty) = X`.
    pub fn perp(&self, a: PointSet) -> Result<PointSet> {
        self.check_subset(a)?;
        Ok(self.perp_of(a))
    }

    /// `A^_|__|_`.
    pub fn closure(&self, a: PointSet) -> Result<PointSet> {
        self.check_subset(a)?;
        Ok(self.closure_of(a))
    }

    pub fn is_orthogonal_set(&self, d: PointSet) -> bool {
        d.iter().all(|e| d.without(e).is_subset(self.adj[e]))
    }

    /// Maximum number of mutually orthogonal points.
    pub fn rank(&self) -> usize {
        self.maximum_orthogonal_set().len()
    }

    /// A largest orthogonal set, by branch and bound with a greedy colouring
    /// bound.
    pub fn maximum_orthogonal_set(&self) -> PointSet {
        let mut best = PointSet::EMPTY;
        self.expand_clique(PointSet::EMPTY, self.points(), &mut best);
        best
    }

    fn expand_clique(&self, current: PointSet, mut cand: PointSet, best: &mut PointSet) {
        let (order, bounds) = self.colour_order(cand);
        for k in (0..order.len()).rev() {
            if current.len() + bounds[k] <= best.len() {
                return;
            }
            let v = order[k];
            let next = current.with(v);
            let sub = cand.intersection(self.adj[v]);
            if sub.is_empty() {
                if next.len() > best.len() {
                    *best = next;
                }
            } else {
                self.expand_clique(next, sub, best);
            }
            cand = cand.without(v);
        }
    }

    /// Vertices of `cand` ordered by greedy colour class, with the colour
    /// number (an upper bound on the clique size among the prefix).
    fn colour_order(&self, cand: PointSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(cand.len());
        let mut bounds = Vec::with_capacity(cand.len());
        let mut uncoloured = cand;
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured;
            while let Some(v) = q.first() {
                q = q.difference(self.adj[v]).without(v);
                uncoloured = uncoloured.without(v);
                order.push(v);
                bounds.push(colour);
            }
        }
        (order, bounds)
    }

    /// All maximal orthogonal subsets of `a` (pivoting Bron-Kerbosch).
    pub fn maximal_orthogonal_subsets(&self, a: PointSet) -> Vec<PointSet> {
        let mut out = Vec::new();
        self.bron_kerbosch(PointSet::EMPTY, a, PointSet::EMPTY, &mut out);
        out
    }

    fn bron_kerbosch(&self, r: PointSet, mut p: PointSet, mut x: PointSet, out: &mut Vec<PointSet>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| p.intersection(self.adj[u]).len())
            .expect("non-empty");
        for v in p.difference(self.adj[pivot]).iter() {
            self.bron_kerbosch(r.with(v), p.intersection(self.adj[v]), x.intersection(self.adj[v]), out);
            p = p.without(v);
            x = x.with(v);
        }
    }

    /// Every orthoclosed subset, i.e. every intersection of point perps,
    /// ordered by size and then by bitmask.
    pub fn closed_sets(&self, cap: usize) -> Result<Vec<PointSet>> {
        let gens: Vec<PointSet> = {
            let mut g: Vec<_> = self.adj.clone();
            g.sort();
            g.dedup();
            g
        };
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.points()];
        seen.insert(self.points());
        while let Some(a) = stack.pop() {
            for &g in &gens {
                let b = a.intersection(g);
                if seen.insert(b) {
                    if seen.len() > cap {
                        return Err(GraphError::FamilyCap(cap));
                    }
                    stack.push(b);
                }
            }
        }
        let mut all: Vec<_> = seen.into_iter().collect();
        all.sort_by_key(|s| (s.len(), s.bits()));
        Ok(all)
    }

    pub fn irredundance(&self) -> IrredundanceReport {
        let mut duplicates = Vec::new();
        for e in 0..self.n() {
            for f in e + 1..self.n() {
                if self.adj[e] == self.adj[f] {
                    duplicates.push((e, f));
                }
            }
        }
        IrredundanceReport { duplicates }
    }

    /// Identifies points with equal perps. Such points are never orthogonal,
    /// so this is a congruence and the quotient is irredundant.
    pub fn irredundant_quotient(&self) -> (OrthoGraph, Partition) {
        let mut by_perp: HashMap<PointSet, usize> = HashMap::new();
        let mut labels = Vec::with_capacity(self.n());
        for e in 0..self.n() {
            let next = by_perp.len();
            labels.push(*by_perp.entry(self.adj[e]).or_insert(next));
        }
        let theta = Partition::from_labels(&labels);
        let q = self.quotient(&theta).expect("equal-perp classes form a congruence");
        (q, theta)
    }

    pub fn linearity(&self) -> LinearityReport {
        let n = self.n();
        let l1 = (0..n)
            .flat_map(|e| (0..n).filter(move |&f| f != e).map(move |f| (e, f)))
            .find(|&(e, f)| {
                let target = self.adj[e].intersection(self.adj[f]);
                !self.adj[e].iter().any(|g| self.adj[e].intersection(self.adj[g]) == target)
            });
        let l2 = (0..n)
            .flat_map(|e| self.adj[e].iter().map(move |g| (e, g)))
            .find(|&(e, g)| {
                let target = self.adj[e].intersection(self.adj[g]);
                !(0..n).any(|f| f != e && f != g && self.adj[e].intersection(self.adj[f]) == target)
            });
        let point_closed = (0..n).find(|&e| self.closure_of(PointSet::singleton(e)) != PointSet::singleton(e));
        LinearityReport { l1, l2, point_closed }
    }

    /// For orthogonal `d` and `e` outside its closure, an `f _|_ d` with
    /// `(d + e)^_|__|_ = (d + f)^_|__|_`, found by exhaustive search.
    pub fn orthogonal_replacement(&self, d: PointSet, e: usize) -> Option<usize> {
        let target = self.closure_of(d.with(e));
        self.perp_of(d).iter().find(|&f| self.closure_of(d.with(f)) == target)
    }

    /// Every orthogonal pair spans a closed set with a third point.
    pub fn third_point_on_lines(&self) -> Option<(usize, usize)> {
        self.edges()
            .into_iter()
            .find(|&(e, f)| self.closure_of(PointSet::singleton(e).with(f)).len() < 3)
    }

    /// `X` is reducible when it splits into two non-empty parts with every
    /// cross pair orthogonal, i.e. when the non-orthogonality graph on
    /// distinct points is disconnected. Returns such a part as witness.
    pub fn reducible_part(&self) -> Option<PointSet> {
        let all = self.points();
        let mut reached = PointSet::singleton(0);
        let mut frontier = reached;
        while let Some(v) = frontier.first() {
            frontier = frontier.without(v);
            let next = all.difference(self.adj[v]).without(v).difference(reached);
            reached = reached.union(next);
            frontier = frontier.union(next);
        }
        (reached != all).then_some(reached)
    }

    pub fn is_irreducible(&self) -> bool {
        self.reducible_part().is_none()
    }

    /// Dacey's criterion over all orthoclosed sets.
    pub fn dacey(&self, cap: usize) -> Result<DaceyReport> {
        let closed = self.closed_sets(cap)?;
        for &a in &closed {
            for d in self.maximal_orthogonal_subsets(a) {
                if self.closure_of(d) != a {
                    return Ok(DaceyReport {
                        closed_sets: closed.len(),
                        violation: Some(DaceyWitness { closed: a, orthogonal: d }),
                    });
                }
            }
        }
        Ok(DaceyReport {
            closed_sets: closed.len(),
            violation: None,
        })
    }

    fn check_partition(&self, theta: &Partition) -> Result<()> {
        if theta.n() != self.n() {
            return Err(GraphError::InvalidPartition(format!(
                "partition covers {} points, graph has {}",
                theta.n(),
                self.n()
            )));
        }
        Ok(())
    }

    pub fn congruence(&self, theta: &Partition) -> Result<CongruenceReport> {
        self.check_partition(theta)?;
        let violation = self
            .edges()
            .into_iter()
            .find(|&(a, b)| theta.block_of(a) == theta.block_of(b));
        Ok(CongruenceReport { violation })
    }

    /// The quotient space: blocks are orthogonal when some members are.
    pub fn quotient(&self, theta: &Partition) -> Result<OrthoGraph> {
        if let Some((a, b)) = self.congruence(theta)?.violation {
            return Err(GraphError::NotACongruence(a, b));
        }
        let adj = theta
            .blocks()
            .iter()
            .map(|&blk| {
                let reach = blk.iter().fold(PointSet::EMPTY, |acc, e| acc.union(self.adj[e]));
                theta
                    .blocks()
                    .iter()
                    .enumerate()
                    .filter(|(_, &other)| !other.intersection(reach).is_empty())
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Ok(OrthoGraph::from_adj(adj))
    }

    fn check_permutation(&self, pi: &[usize]) -> Result<()> {
        if pi.len() != self.n() {
            return Err(GraphError::NotABijection(format!(
                "length {} for {} points",
                pi.len(),
                self.n()
            )));
        }
        let image: PointSet = pi.iter().copied().filter(|&i| i < self.n()).collect();
        if image != self.points() {
            return Err(GraphError::NotABijection(format!("{pi:?}")));
        }
        Ok(())
    }

    /// Whether the bijection `pi` preserves orthogonality in both directions.
    pub fn is_automorphism(&self, pi: &[usize]) -> Result<bool> {
        self.check_permutation(pi)?;
        Ok((0..self.n()).all(|a| (0..self.n()).all(|b| self.orthogonal(a, b) == self.orthogonal(pi[a], pi[b]))))
    }

    /// Whether `theta` is invariant under every member of `group`, each of
    /// which must be an automorphism.
    pub fn invariant_congruence(&self, theta: &Partition, group: &[Vec<usize>]) -> Result<bool> {
        self.check_partition(theta)?;
        for pi in group {
            if !self.is_automorphism(pi)? {
                return Err(GraphError::NotAnAutomorphism(pi.clone()));
            }
        }
        let n = self.n();
        Ok(group.iter().all(|pi| {
            (0..n).all(|e| {
                (0..n).all(|f| theta.same_block(e, f) == theta.same_block(pi[e], pi[f]))
            })
        }))
    }
}

/// A partition of the points into non-empty disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    blocks: Vec<PointSet>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        let mut sets = Vec::with_capacity(blocks.len());
        for (k, blk) in blocks.iter().enumerate() {
            if blk.is_empty() {
                return Err(GraphError::InvalidPartition(format!("block {k} is empty")));
            }
            for &i in blk {
                if i >= n {
                    return Err(GraphError::OutOfRange { index: i, n });
                }
                if block_of[i] != usize::MAX {
                    return Err(GraphError::InvalidPartition(format!("point {i} appears twice")));
                }
                block_of[i] = k;
            }
            sets.push(blk.iter().copied().collect());
        }
        if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(GraphError::InvalidPartition(format!("point {i} is not covered")));
        }
        Ok(Partition { blocks: sets, block_of })
    }

    /// Blocks numbered by first occurrence of each label.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renum: HashMap<usize, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            let next = renum.len();
            let k = *renum.entry(*l).or_insert(next);
            if k == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[k].push(i);
        }
        Partition::new(labels.len(), blocks).expect("labels define a partition")
    }

    /// The trivial congruence.
    pub fn identity(n: usize) -> Self {
        Partition::new(n, (0..n).map(|i| vec![i]).collect()).expect("singletons")
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == self.n()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrredundanceReport {
    /// Pairs of distinct points with equal perps.
    pub duplicates: Vec<(usize, usize)>,
}

impl IrredundanceReport {
    pub fn is_irredundant(&self) -> bool {
        self.duplicates.is_empty()
    }
}

impl From<&IrredundanceReport> for CheckReport {
    fn from(r: &IrredundanceReport) -> Self {
        CheckReport {
            checks: vec![Check::from_violation("irredundant", r.duplicates.first())
                .with_detail(json!({ "equal_perp_pairs": r.duplicates }))],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearityReport {
    /// `(e, f)` with no `g _|_ e` such that `{e,g}^_|_ = {e,f}^_|_`.
    pub l1: Option<(usize, usize)>,
    /// `(e, g)`, `e _|_ g`, with no third `f` such that `{e,f}^_|_ = {e,g}^_|_`.
    pub l2: Option<(usize, usize)>,
    /// A point whose singleton is not orthoclosed.
    pub point_closed: Option<usize>,
}

impl From<&LinearityReport> for CheckReport {
    fn from(r: &LinearityReport) -> Self {
        let pair = |p: Option<(usize, usize)>, a: &str, b: &str| p.map(|(x, y)| json!({ a: x, b: y }));
        CheckReport {
            checks: vec![
                Check::from_violation("L1", pair(r.l1, "e", "f")),
                Check::from_violation("L2", pair(r.l2, "e", "g")),
                Check::from_violation("point_closed", r.point_closed.map(|e| json!({ "e": e }))),
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DaceyWitness {
    /// An orthoclosed set `A`.
    pub closed: PointSet,
    /// A maximal orthogonal subset `D` of `A` with `D^_|__|_ != A`.
    pub orthogonal: PointSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DaceyReport {
    pub closed_sets: usize,
    pub violation: Option<DaceyWitness>,
}

impl DaceyReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl From<&DaceyReport> for CheckReport {
    fn from(r: &DaceyReport) -> Self {
        CheckReport {
            checks: vec![Check::from_violation("dacey", r.violation)
                .with_detail(json!({ "closed_sets": r.closed_sets }))],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    /// An orthogonal pair inside one block.
    pub violation: Option<(usize, usize)>,
}

impl CongruenceReport {
    pub fn is_congruence(&self) -> bool {
        self.violation.is_none()
    }
}

/// Small graphs used throughout examples and tests.
pub mod fixtures {
    use super::OrthoGraph;

    /// Edges `0-1` and `2-3`.
    pub fn two_edges() -> OrthoGraph {
        OrthoGraph::new(4, &[(0, 1), (2, 3)]).unwrap()
    }

    /// The 4-cycle `0-1-2-3-0`.
    pub fn square() -> OrthoGraph {
        OrthoGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    pub fn k4() -> OrthoGraph {
        OrthoGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn c6() -> OrthoGraph {
        OrthoGraph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap()
    }

    pub fn single_point() -> OrthoGraph {
        OrthoGraph::new(1, &[]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn set(xs: &[usize]) -> PointSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn perp_examples() {
        assert_eq!(k4().perp(set(&[0, 1])).unwrap(), set(&[2, 3]));
        assert_eq!(c6().perp(PointSet::EMPTY).unwrap(), c6().points());
        assert_eq!(c6().perp(set(&[0, 2])).unwrap(), set(&[1]));
        assert_eq!(k4().perp(set(&[4])), Err(GraphError::OutOfRange { index: 4, n: 4 }));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(square().closure(set(&[0])).unwrap(), set(&[0, 2]));
        assert_eq!(k4().closure(set(&[0])).unwrap(), set(&[0]));
        assert_eq!(two_edges().closure(set(&[0, 2])).unwrap(), set(&[0, 1, 2, 3]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(k4().rank(), 4);
        assert_eq!(two_edges().rank(), 2);
        assert_eq!(single_point().rank(), 1);
        assert_eq!(c6().rank(), 2);
        // Petersen graph complement has triangles; Petersen itself has rank 2.
        let petersen = OrthoGraph::new(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        assert_eq!(petersen.rank(), 2);
    }

    #[test]
    fn irredundance_examples() {
        assert!(two_edges().irredundance().is_irredundant());
        let r = square().irredundance();
        assert_eq!(r.duplicates.first(), Some(&(0, 2)));
        let (q, theta) = square().irredundant_quotient();
        assert_eq!(q.n(), 2);
        assert_eq!(q.edges(), vec![(0, 1)]);
        assert_eq!(theta.blocks(), &[set(&[0, 2]), set(&[1, 3])]);
        assert!(q.irredundance().is_irredundant());
    }

    #[test]
    fn linearity_examples() {
        let r = k4().linearity();
        assert_eq!(r.l1, None);
        assert_eq!(r.l2, Some((0, 1)));
        assert_eq!(r.point_closed, None);

        assert_eq!(c6().linearity().l1, Some((0, 2)));

        let r = two_edges().linearity();
        assert_eq!((r.l1, r.l2, r.point_closed), (None, None, None));
    }

    #[test]
    fn dacey_examples() {
        assert!(k4().dacey(DEFAULT_FAMILY_CAP).unwrap().passed());
        assert!(two_edges().dacey(DEFAULT_FAMILY_CAP).unwrap().passed());

        let g = c6();
        let w = g.dacey(DEFAULT_FAMILY_CAP).unwrap().violation.expect("C6 violates Dacey");
        assert_eq!(g.closure_of(w.closed), w.closed);
        assert!(w.orthogonal.is_subset(w.closed));
        assert_ne!(g.closure_of(w.orthogonal), w.closed);
        // The pair ({1,5}, {1}) is one such violation.
        assert_eq!(g.closure_of(set(&[1, 5])), set(&[1, 5]));
        assert!(g.maximal_orthogonal_subsets(set(&[1, 5])).contains(&set(&[1])));
        assert_eq!(g.closure_of(set(&[1])), set(&[1]));
    }

    #[test]
    fn congruence_examples() {
        let theta = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(square().congruence(&theta).unwrap().is_congruence());
        let q = square().quotient(&theta).unwrap();
        assert_eq!((q.n(), q.edges()), (2, vec![(0, 1)]));

        let theta = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(k4().congruence(&theta).unwrap().violation, Some((0, 1)));
        assert_eq!(k4().quotient(&theta), Err(GraphError::NotACongruence(0, 1)));

        for g in [two_edges(), square(), k4(), c6()] {
            let id = Partition::identity(g.n());
            assert!(g.congruence(&id).unwrap().is_congruence());
            assert_eq!(g.quotient(&id).unwrap(), g);
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1, 5]]).is_err());
    }

    #[test]
    fn automorphism_examples() {
        for g in [two_edges(), square(), k4(), c6()] {
            let id: Vec<usize> = (0..g.n()).collect();
            assert!(g.is_automorphism(&id).unwrap());
        }
        assert!(two_edges().is_automorphism(&[2, 3, 0, 1]).unwrap());
        assert!(!two_edges().is_automorphism(&[0, 2, 1, 3]).unwrap());
        assert!(matches!(two_edges().is_automorphism(&[0, 0, 1, 2]), Err(GraphError::NotABijection(_))));

        let theta = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let rot = vec![1, 2, 3, 0];
        assert!(square().invariant_congruence(&theta, &[rot]).unwrap());
        let bad = Partition::new(4, vec![vec![0], vec![2], vec![1, 3]]).unwrap();
        assert!(!square().invariant_congruence(&bad, &[vec![1, 2, 3, 0]]).unwrap());
        assert!(matches!(
            square().invariant_congruence(&theta, &[vec![0, 2, 1, 3]]),
            Err(GraphError::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn reducibility() {
        assert_eq!(k4().reducible_part(), Some(set(&[0])));
        assert!(two_edges().is_irreducible());
        assert!(single_point().is_irreducible());
        assert_eq!(square().reducible_part(), Some(set(&[0, 2])));
    }

    #[test]
    fn closed_sets_of_c6() {
        let sets = c6().closed_sets(DEFAULT_FAMILY_CAP).unwrap();
        // empty, six points, six "lines" {i, i+2}, X
        assert_eq!(sets.len(), 14);
        assert_eq!(sets[0], PointSet::EMPTY);
        assert_eq!(*sets.last().unwrap(), c6().points());
        assert_eq!(k4().closed_sets(3), Err(GraphError::FamilyCap(3)));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(OrthoGraph::new(0, &[]), Err(GraphError::Empty));
        assert_eq!(OrthoGraph::new(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(OrthoGraph::new(2, &[(0, 2)]), Err(GraphError::OutOfRange { index: 2, n: 2 }));
    }
}
