//! Green's relations by patterns and by principal ideals.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::counting;
use crate::enumerate::{CayleyGraph, ElementSet};
use crate::error::{Error, Result};
use crate::families::FamilyKind;
use crate::pattern::Pattern;
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    R,
    L,
    H,
    D,
    J,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::R => "r",
            Relation::L => "l",
            Relation::H => "h",
            Relation::D => "d",
            Relation::J => "j",
        };
        f.write_str(s)
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Ok(Relation::R),
            "l" => Ok(Relation::L),
            "h" => Ok(Relation::H),
            "d" => Ok(Relation::D),
            "j" => Ok(Relation::J),
            _ => Err(Error::parse(0, format!("unknown relation {s:?}"))),
        }
    }
}

/// A partition of the indices of an [`ElementSet`] into classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreensPartition {
    pub relation: Relation,
    /// Classes ordered by least member; members ascending.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl GreensPartition {
    fn from_keys<K: std::hash::Hash + Eq>(relation: Relation, keys: impl IntoIterator<Item = K>) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::new();
        for (i, key) in keys.into_iter().enumerate() {
            let next = ids.len();
            let c = *ids.entry(key).or_insert(next);
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(i);
            class_of.push(c);
        }
        GreensPartition {
            relation,
            classes,
            class_of,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Whether every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &GreensPartition) -> bool {
        self.classes.iter().all(|c| {
            let target = coarser.class_of[c[0]];
            c.iter().all(|&i| coarser.class_of[i] == target)
        })
    }
}

/// Every (upper, lower) pattern pair realized in a star-closed set.
#[derive(Debug, Clone)]
pub struct PatternIndex {
    pairs: HashSet<(Pattern, Pattern)>,
}

impl PatternIndex {
    pub fn new(set: &ElementSet) -> Result<Self> {
        if !set.is_star_closed() {
            return Err(Error::NotStarClosed);
        }
        let pairs = set.iter().map(|a| (a.upper_pattern(), a.lower_pattern())).collect();
        Ok(PatternIndex { pairs })
    }

    pub fn compatible(&self, p: &Pattern, q: &Pattern) -> bool {
        self.pairs.contains(&(p.clone(), q.clone()))
    }

    /// Upper patterns that occur in the set.
    pub fn admissible(&self) -> Vec<Pattern> {
        let mut out: Vec<Pattern> = self.pairs.iter().map(|(p, _)| p.clone()).collect();
        out.sort();
        out.dedup();
        out
    }
}

pub fn pattern_compatible(set: &ElementSet, p: &Pattern, q: &Pattern) -> Result<bool> {
    Ok(PatternIndex::new(set)?.compatible(p, q))
}

/// Classes from pattern equality (R, L, H) or pattern compatibility (D, J).
pub fn classes_by_pattern(set: &ElementSet, relation: Relation) -> Result<GreensPartition> {
    if !set.is_star_closed() {
        return Err(Error::NotStarClosed);
    }
    let partition = match relation {
        Relation::R => GreensPartition::from_keys(relation, set.iter().map(|a| a.upper_pattern())),
        Relation::L => GreensPartition::from_keys(relation, set.iter().map(|a| a.lower_pattern())),
        Relation::H => GreensPartition::from_keys(
            relation,
            set.iter().map(|a| (a.upper_pattern(), a.lower_pattern())),
        ),
        Relation::D | Relation::J => {
            let mut ids: HashMap<Pattern, usize> = HashMap::new();
            let mut edges = Vec::with_capacity(set.len());
            for a in set {
                let mut id = |p: Pattern| {
                    let next = ids.len();
                    *ids.entry(p).or_insert(next)
                };
                let u = id(a.upper_pattern());
                let l = id(a.lower_pattern());
                edges.push((u, l));
            }
            let mut uf = UnionFind::new(ids.len());
            for &(u, l) in &edges {
                uf.union(u, l);
            }
            GreensPartition::from_keys(relation, edges.iter().map(|&(u, _)| uf.find(u)))
        }
    };
    Ok(partition)
}

fn scc_labels(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (a, b) in edges {
        graph.add_edge(nodes[a], nodes[b], ());
    }
    let mut label = vec![0; n];
    for (c, comp) in tarjan_scc(&graph).into_iter().enumerate() {
        for node in comp {
            label[node.index()] = c;
        }
    }
    label
}

fn edges(table: &[Vec<usize>]) -> impl Iterator<Item = (usize, usize)> + '_ {
    table
        .iter()
        .enumerate()
        .flat_map(|(x, row)| row.iter().map(move |&y| (x, y)))
}

/// Classes from mutual reachability in the Cayley graph.
pub fn classes_by_ideals(graph: &CayleyGraph, relation: Relation) -> GreensPartition {
    let n = graph.elements.len();
    let right = || scc_labels(n, edges(&graph.right));
    let left = || scc_labels(n, edges(&graph.left));
    match relation {
        Relation::R => GreensPartition::from_keys(relation, right()),
        Relation::L => GreensPartition::from_keys(relation, left()),
        Relation::H => {
            let (r, l) = (right(), left());
            GreensPartition::from_keys(relation, r.into_iter().zip(l))
        }
        Relation::D => {
            let (r, l) = (right(), left());
            let mut uf = UnionFind::new(n);
            for labels in [&r, &l] {
                let mut first: HashMap<usize, usize> = HashMap::new();
                for (i, &c) in labels.iter().enumerate() {
                    let rep = *first.entry(c).or_insert(i);
                    uf.union(rep, i);
                }
            }
            GreensPartition::from_keys(relation, (0..n).map(|i| uf.find(i)).collect::<Vec<_>>())
        }
        Relation::J => GreensPartition::from_keys(
            relation,
            scc_labels(n, edges(&graph.right).chain(edges(&graph.left))),
        ),
    }
}

/// Number of D-classes from the closed formulas.
pub fn count_d_classes(kind: FamilyKind, k: usize) -> Result<BigUint> {
    match kind {
        FamilyKind::PMod(m) => counting::d_classes_pmod(m, k),
        FamilyKind::PlanarPartition => counting::d_classes_pmod(1, k),
        FamilyKind::Mod(m) => counting::d_classes_mod(m, k),
        FamilyKind::Partition => counting::d_classes_mod(1, k),
        other => Err(Error::UnsupportedFamily(other.to_string())),
    }
}

/// Number of R-classes (equivalently L-classes) from the closed formulas.
pub fn count_r_classes(kind: FamilyKind, k: usize) -> Result<BigUint> {
    match kind {
        FamilyKind::PMod(m) => counting::r_classes_pmod(m, k),
        FamilyKind::PlanarPartition => counting::r_classes_pmod(1, k),
        FamilyKind::Mod(m) => counting::r_classes_mod(m, k),
        FamilyKind::Partition => counting::r_classes_mod(1, k),
        other => Err(Error::UnsupportedFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{cayley, close};
    use crate::families::Family;
    use crate::Bipartition;

    fn set(kind: FamilyKind, k: usize) -> ElementSet {
        close(k, &Family::new(kind, k).unwrap().generating_set(), 100_000).unwrap()
    }

    #[test]
    fn pmod2_small_counts() {
        assert_eq!(classes_by_pattern(&set(FamilyKind::PMod(2), 2), Relation::D).unwrap().len(), 3);
        let s3 = set(FamilyKind::PMod(2), 3);
        assert_eq!(classes_by_pattern(&s3, Relation::D).unwrap().len(), 4);
        assert_eq!(classes_by_pattern(&s3, Relation::R).unwrap().len(), 6);
    }

    #[test]
    fn mod2_k4_counts() {
        let s = set(FamilyKind::Mod(2), 4);
        assert_eq!(classes_by_pattern(&s, Relation::D).unwrap().len(), 6);
        assert_eq!(classes_by_pattern(&s, Relation::R).unwrap().len(), 31);
    }

    #[test]
    fn symmetric_group_is_one_class() {
        let kind = FamilyKind::Symmetric;
        let g = cayley(3, &Family::new(kind, 3).unwrap().generating_set(), 100).unwrap();
        for rel in [Relation::R, Relation::L, Relation::H, Relation::D, Relation::J] {
            assert_eq!(classes_by_ideals(&g, rel).len(), 1);
        }
    }

    #[test]
    fn jones_d_classes_are_rank_levels() {
        let g = cayley(4, &Family::new(FamilyKind::Jones, 4).unwrap().generating_set(), 100).unwrap();
        let d = classes_by_ideals(&g, Relation::D);
        assert_eq!(d.len(), 3);
        for class in &d.classes {
            let r = g.elements.get(class[0]).rank();
            assert!(class.iter().all(|&i| g.elements.get(i).rank() == r));
        }
    }

    #[test]
    fn pattern_guard_rejects_non_star_closed() {
        let a: Bipartition = "[[1,2],[1',2']]".parse().unwrap();
        let b: Bipartition = "[[1,2,1'],[2']]".parse().unwrap();
        let s = ElementSet::new(2, [a, b]).unwrap();
        assert!(matches!(classes_by_pattern(&s, Relation::R), Err(Error::NotStarClosed)));
    }

    #[test]
    fn compatibility_in_pmod3_k5() {
        let s = set(FamilyKind::PMod(3), 5);
        let index = PatternIndex::new(&s).unwrap();
        let p = Pattern::new(5, &[vec![2, 3, 4]], &[vec![1], vec![5]]).unwrap();
        let q = Pattern::new(5, &[], &[vec![1], vec![2, 3, 4, 5]]).unwrap();
        assert!(index.compatible(&p, &q));
        for p in index.admissible() {
            assert!(index.compatible(&p, &p));
        }
    }

    #[test]
    fn formula_counts() {
        assert_eq!(count_d_classes(FamilyKind::PMod(2), 10).unwrap(), BigUint::from(144u32));
        assert_eq!(count_r_classes(FamilyKind::PMod(2), 6).unwrap(), BigUint::from(108u32));
        assert_eq!(count_r_classes(FamilyKind::Mod(1), 5).unwrap(), BigUint::from(454u32));
        assert!(count_d_classes(FamilyKind::Jones, 4).is_err());
    }
}
