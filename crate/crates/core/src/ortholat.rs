//! The ortholattice `C(X, _|_)` of orthoclosed subsets of a finite
//! orthogonality space.

use crate::orthograph::{GraphError, OrthoGraph, DEFAULT_FAMILY_CAP};
use crate::pointset::PointSet;
use crate::report::{Check, CheckReport};
use serde::Serialize;
use serde_json::json;
use std::collections::HashMap;

/// Orthoclosed sets ordered by size and then bitmask, so index 0 is the
/// bottom, the last index is the top, and every element precedes its proper
/// supersets.
#[derive(Debug, Clone)]
pub struct OrthoLattice {
    graph: OrthoGraph,
    elements: Vec<PointSet>,
    index: HashMap<PointSet, usize>,
    ortho: Vec<usize>,
    lower_covers: Vec<Vec<usize>>,
    atoms: Vec<usize>,
}

impl OrthoLattice {
    pub fn build(graph: &OrthoGraph) -> Result<Self, GraphError> {
        Self::build_capped(graph, DEFAULT_FAMILY_CAP)
    }

    pub fn build_capped(graph: &OrthoGraph, cap: usize) -> Result<Self, GraphError> {
        let elements = graph.closed_sets(cap)?;
        let index: HashMap<_, _> = elements.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let ortho = elements.iter().map(|&a| index[&graph.perp_of(a)]).collect();
        let lower_covers = hasse(&elements);
        let atoms = (0..elements.len()).filter(|&i| lower_covers[i] == [0]).collect();
        Ok(OrthoLattice {
            graph: graph.clone(),
            elements,
            index,
            ortho,
            lower_covers,
            atoms,
        })
    }

    pub fn graph(&self) -> &OrthoGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PointSet] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> PointSet {
        self.elements[i]
    }

    pub fn index_of(&self, a: PointSet) -> Option<usize> {
        self.index.get(&a).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn ortho(&self, i: usize) -> usize {
        self.ortho[i]
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset(self.elements[b])
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].intersection(self.elements[b])]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.index[&self.graph.closure_of(self.elements[a].union(self.elements[b]))]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    /// Covering pairs `(lower, upper)` by index.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.lower_covers
            .iter()
            .enumerate()
            .flat_map(|(hi, lows)| lows.iter().map(move |&lo| (lo, hi)))
            .collect()
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.len()];
        for i in 0..self.len() {
            h[i] = self.lower_covers[i].iter().map(|&j| h[j] + 1).max().unwrap_or(0);
        }
        h
    }

    pub fn length(&self) -> usize {
        self.heights()[self.top()]
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.len();
        (0..m).flat_map(move |a| (0..m).map(move |b| (a, b)))
    }

    fn orthocomplementation_violation(&self) -> Option<OrthoViolation> {
        let (bot, top) = (self.bottom(), self.top());
        if let Some(a) = (0..self.len()).find(|&a| self.ortho[self.ortho[a]] != a) {
            return Some(OrthoViolation::NotInvolutive(self.elements[a]));
        }
        if let Some(a) = (0..self.len()).find(|&a| self.meet(a, self.ortho[a]) != bot || self.join(a, self.ortho[a]) != top) {
            return Some(OrthoViolation::NotComplement(self.elements[a]));
        }
        self.pairs()
            .find(|&(a, b)| self.leq(a, b) && !self.leq(self.ortho[b], self.ortho[a]))
            .map(|(a, b)| OrthoViolation::NotAntitone(self.elements[a], self.elements[b]))
    }

    /// `a <= b` with `a v (b ^ a')` different from `b`.
    pub fn orthomodular_violation(&self) -> Option<(PointSet, PointSet)> {
        self.pairs()
            .filter(|&(a, b)| a != b && self.leq(a, b))
            .find(|&(a, b)| self.join(a, self.meet(b, self.ortho[a])) != b)
            .map(|(a, b)| (self.elements[a], self.elements[b]))
    }

    /// A triple `a <= c` with `a v (b ^ c) != (a v b) ^ c`.
    pub fn modular_violation(&self) -> Option<[PointSet; 3]> {
        // A lattice of finite length is modular exactly when its height
        // function is a valuation; the triple search only runs on failure.
        let h = self.heights();
        let valuation = self
            .pairs()
            .all(|(a, b)| h[a] + h[b] == h[self.meet(a, b)] + h[self.join(a, b)]);
        if valuation {
            return None;
        }
        let m = self.len();
        for a in 0..m {
            for c in (a + 1..m).filter(|&c| self.leq(a, c)) {
                for b in 0..m {
                    if self.join(a, self.meet(b, c)) != self.meet(self.join(a, b), c) {
                        return Some([self.elements[a], self.elements[b], self.elements[c]]);
                    }
                }
            }
        }
        unreachable!("height valuation fails only in non-modular lattices")
    }

    /// An element that is not the join of the atoms below it.
    pub fn atomistic_violation(&self) -> Option<PointSet> {
        (0..self.len())
            .find(|&a| {
                let below = self
                    .atoms
                    .iter()
                    .filter(|&&p| self.leq(p, a))
                    .fold(self.bottom(), |acc, &p| self.join(acc, p));
                below != a
            })
            .map(|a| self.elements[a])
    }

    /// `(a, p)` with `p` an atom not below `a` and `a v p` not covering `a`.
    pub fn covering_violation(&self) -> Option<(PointSet, PointSet)> {
        (0..self.len())
            .flat_map(|a| self.atoms.iter().map(move |&p| (a, p)))
            .filter(|&(a, p)| !self.leq(p, a))
            .find(|&(a, p)| !self.lower_covers[self.join(a, p)].contains(&a))
            .map(|(a, p)| (self.elements[a], self.elements[p]))
    }

    /// Elements `z` with `a = (a ^ z) v (a ^ z')` for every `a`.
    pub fn center(&self) -> Vec<PointSet> {
        (0..self.len())
            .filter(|&z| {
                (0..self.len()).all(|a| self.join(self.meet(a, z), self.meet(a, self.ortho[z])) == a)
            })
            .map(|z| self.elements[z])
            .collect()
    }

    /// A central element other than the bottom and top, if any.
    pub fn nontrivial_central(&self) -> Option<PointSet> {
        let (bot, top) = (self.element(self.bottom()), self.element(self.top()));
        self.center().into_iter().find(|&z| z != bot && z != top)
    }

    pub fn properties(&self) -> LatticeProperties {
        LatticeProperties {
            elements: self.len(),
            ortholattice: self.orthocomplementation_violation(),
            orthomodular: self.orthomodular_violation(),
            modular: self.modular_violation(),
            atomistic: self.atomistic_violation(),
            covering: self.covering_violation(),
            irreducible: self.nontrivial_central(),
            length: self.length(),
        }
    }

    pub fn export(&self) -> LatticeExport {
        LatticeExport {
            elements: self.elements.clone(),
            hasse: self.hasse_edges(),
            ortho: self.ortho.clone(),
            atoms: self.atoms.clone(),
        }
    }

    /// Applies `pi` pointwise to each orthoclosed set.
    pub fn lift_automorphism(&self, pi: &[usize]) -> Result<LatticeMap, GraphError> {
        if !self.graph.is_automorphism(pi)? {
            return Err(GraphError::NotAnAutomorphism(pi.to_vec()));
        }
        let image = self
            .elements
            .iter()
            .map(|a| {
                let b: PointSet = a.iter().map(|e| pi[e]).collect();
                self.index[&b]
            })
            .collect();
        Ok(LatticeMap { image })
    }
}

/// Lower covers of each element, given elements sorted so that proper subsets
/// come first.
fn hasse(elements: &[PointSet]) -> Vec<Vec<usize>> {
    let mut covers = vec![Vec::new(); elements.len()];
    for (hi, &b) in elements.iter().enumerate() {
        let below: Vec<usize> = (0..hi).filter(|&lo| elements[lo].is_proper_subset(b)).collect();
        covers[hi] = below
            .iter()
            .copied()
            .filter(|&lo| {
                !below
                    .iter()
                    .any(|&mid| mid != lo && elements[lo].is_proper_subset(elements[mid]))
            })
            .collect();
    }
    covers
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "law", content = "elements", rename_all = "snake_case")]
pub enum OrthoViolation {
    NotInvolutive(PointSet),
    NotComplement(PointSet),
    NotAntitone(PointSet, PointSet),
}

/// Lattice-theoretic verdicts. Each `Option` is a counterexample, `None`
/// meaning the property holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeProperties {
    pub elements: usize,
    pub ortholattice: Option<OrthoViolation>,
    pub orthomodular: Option<(PointSet, PointSet)>,
    pub modular: Option<[PointSet; 3]>,
    pub atomistic: Option<PointSet>,
    pub covering: Option<(PointSet, PointSet)>,
    /// A non-trivial central element.
    pub irreducible: Option<PointSet>,
    pub length: usize,
}

impl LatticeProperties {
    pub fn is_orthomodular(&self) -> bool {
        self.orthomodular.is_none()
    }

    pub fn is_modular(&self) -> bool {
        self.modular.is_none()
    }

    pub fn is_atomistic(&self) -> bool {
        self.atomistic.is_none()
    }

    pub fn has_covering(&self) -> bool {
        self.covering.is_none()
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible.is_none()
    }
}

impl From<&LatticeProperties> for CheckReport {
    fn from(p: &LatticeProperties) -> Self {
        CheckReport {
            checks: vec![
                Check::from_violation("ortholattice", p.ortholattice)
                    .with_detail(json!({ "elements": p.elements })),
                Check::from_violation("orthomodular", p.orthomodular.map(|(a, b)| json!({ "a": a, "b": b }))),
                Check::from_violation("modular", p.modular.map(|[a, b, c]| json!({ "a": a, "b": b, "c": c }))),
                Check::from_violation("atomistic", p.atomistic),
                Check::from_violation("covering", p.covering.map(|(a, p)| json!({ "a": a, "atom": p }))),
                Check::from_violation("irreducible", p.irreducible.map(|z| json!({ "central": z }))),
                Check::pass("length").with_detail(json!(p.length)),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeExport {
    pub elements: Vec<PointSet>,
    /// Covering pairs `[lower, upper]` as element indices.
    pub hasse: Vec<(usize, usize)>,
    pub ortho: Vec<usize>,
    pub atoms: Vec<usize>,
}

/// A map on lattice elements, by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeMap {
    pub image: Vec<usize>,
}

impl LatticeMap {
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    /// First failure of bijectivity or of preservation of order, meet, join
    /// and orthocomplement.
    pub fn automorphism_violation(&self, lat: &OrthoLattice) -> Option<String> {
        let f = |a: usize| self.image[a];
        let mut seen = vec![false; lat.len()];
        for a in 0..lat.len() {
            if std::mem::replace(&mut seen[f(a)], true) {
                return Some(format!("not injective at {}", lat.element(a)));
            }
            if f(lat.ortho(a)) != lat.ortho(f(a)) {
                return Some(format!("does not commute with ortho at {}", lat.element(a)));
            }
        }
        for (a, b) in lat.pairs() {
            let (ea, eb) = (lat.element(a), lat.element(b));
            if lat.leq(a, b) != lat.leq(f(a), f(b)) {
                return Some(format!("order not preserved at ({ea}, {eb})"));
            }
            if f(lat.meet(a, b)) != lat.meet(f(a), f(b)) {
                return Some(format!("meet not preserved at ({ea}, {eb})"));
            }
            if f(lat.join(a, b)) != lat.join(f(a), f(b)) {
                return Some(format!("join not preserved at ({ea}, {eb})"));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthograph::fixtures::*;

    fn set(xs: &[usize]) -> PointSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn element_counts() {
        assert_eq!(OrthoLattice::build(&k4()).unwrap().len(), 16);
        let l = OrthoLattice::build(&two_edges()).unwrap();
        assert_eq!(
            l.elements(),
            &[set(&[]), set(&[0]), set(&[1]), set(&[2]), set(&[3]), set(&[0, 1, 2, 3])]
        );
        let l = OrthoLattice::build(&single_point()).unwrap();
        assert_eq!(l.elements(), &[set(&[]), set(&[0])]);
        assert_eq!(l.ortho(0), 1);
    }

    #[test]
    fn c6_is_not_orthomodular() {
        let l = OrthoLattice::build(&c6()).unwrap();
        let p = l.properties();
        let (a, b) = p.orthomodular.expect("violation");
        let (ia, ib) = (l.index_of(a).unwrap(), l.index_of(b).unwrap());
        assert!(l.leq(ia, ib));
        assert_ne!(l.join(ia, l.meet(ib, l.ortho(ia))), ib);
        // ({1}, {1,5}) is one such pair.
        let (ia, ib) = (l.index_of(set(&[1])).unwrap(), l.index_of(set(&[1, 5])).unwrap());
        assert_eq!(l.element(l.join(ia, l.meet(ib, l.ortho(ia)))), set(&[1]));
        assert_eq!(p.ortholattice, None);
    }

    #[test]
    fn k4_is_boolean() {
        let p = OrthoLattice::build(&k4()).unwrap().properties();
        assert_eq!(p.ortholattice, None);
        assert!(p.is_orthomodular() && p.is_modular() && p.is_atomistic() && p.has_covering());
        assert!(!p.is_irreducible());
        assert_eq!(p.length, 4);
    }

    #[test]
    fn two_edges_is_mo2() {
        let p = OrthoLattice::build(&two_edges()).unwrap().properties();
        assert!(p.is_orthomodular() && p.is_modular() && p.is_atomistic() && p.is_irreducible());
        assert_eq!(p.length, 2);
    }

    #[test]
    fn non_modular_witness() {
        // The benzene ring's lattice contains a pentagon.
        let l = OrthoLattice::build(&c6()).unwrap();
        let [a, b, c] = l.properties().modular.expect("C6 is not modular");
        let (a, b, c) = (l.index_of(a).unwrap(), l.index_of(b).unwrap(), l.index_of(c).unwrap());
        assert!(l.leq(a, c));
        assert_ne!(l.join(a, l.meet(b, c)), l.meet(l.join(a, b), c));
    }

    #[test]
    fn lifted_automorphisms() {
        let l = OrthoLattice::build(&two_edges()).unwrap();
        let id = l.lift_automorphism(&[0, 1, 2, 3]).unwrap();
        assert!((0..l.len()).all(|a| id.apply(a) == a));
        let m = l.lift_automorphism(&[2, 3, 0, 1]).unwrap();
        let img = |xs: &[usize]| l.element(m.apply(l.index_of(set(xs)).unwrap()));
        assert_eq!(img(&[0]), set(&[2]));
        assert_eq!(img(&[1]), set(&[3]));
        assert_eq!(img(&[]), set(&[]));
        assert_eq!(img(&[0, 1, 2, 3]), set(&[0, 1, 2, 3]));
        assert_eq!(m.automorphism_violation(&l), None);

        let l = OrthoLattice::build(&square()).unwrap();
        let m = l.lift_automorphism(&[1, 2, 3, 0]).unwrap();
        let i02 = l.index_of(set(&[0, 2])).unwrap();
        assert_eq!(l.element(m.apply(i02)), set(&[1, 3]));
        assert_eq!(m.automorphism_violation(&l), None);

        assert!(matches!(
            OrthoLattice::build(&two_edges()).unwrap().lift_automorphism(&[0, 2, 1, 3]),
            Err(GraphError::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn export_shape() {
        let e = OrthoLattice::build(&two_edges()).unwrap().export();
        assert_eq!(e.hasse.len(), 8);
        assert_eq!(e.atoms, vec![1, 2, 3, 4]);
        assert_eq!(e.ortho, vec![5, 2, 1, 4, 3, 0]);
    }
}
