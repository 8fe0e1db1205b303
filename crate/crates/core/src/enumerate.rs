//! Generated submonoids, Cayley graphs and exhaustive bipartition iteration.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::bipartition::{Bipartition, BlockType};
use crate::error::{Error, Result};

/// Default bound on the size of a generated set.
pub const DEFAULT_MAX_ELEMENTS: usize = 2_000_000;
/// Default bound on the degree accepted by [`all_bipartitions`].
pub const DEFAULT_MAX_BELL_DEGREE: usize = 5;

/// A duplicate-free set of bipartitions of one degree, in canonical order.
#[derive(Debug, Clone)]
pub struct ElementSet {
    degree: usize,
    elements: Vec<Bipartition>,
    index: HashMap<Bipartition, usize>,
}

impl ElementSet {
    pub fn new(degree: usize, items: impl IntoIterator<Item = Bipartition>) -> Result<Self> {
        let mut elements: Vec<Bipartition> = items.into_iter().collect();
        if let Some(bad) = elements.iter().find(|e| e.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, bad.degree()));
        }
        elements.par_sort_unstable();
        elements.dedup();
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(ElementSet {
            degree,
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Bipartition] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Bipartition {
        &self.elements[i]
    }

    pub fn position(&self, a: &Bipartition) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn contains(&self, a: &Bipartition) -> bool {
        self.index.contains_key(a)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Bipartition> {
        self.elements.iter()
    }

    pub fn is_star_closed(&self) -> bool {
        self.elements.par_iter().all(|a| self.contains(&a.star()))
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = &'a Bipartition;
    type IntoIter = std::slice::Iter<'a, Bipartition>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for ElementSet {}

fn check_degrees(k: usize, gens: &[Bipartition]) -> Result<()> {
    match gens.iter().find(|g| g.degree() != k) {
        Some(g) => Err(Error::DegreeMismatch(k, g.degree())),
        None => Ok(()),
    }
}

/// The monoid generated by `gens` together with the identity of degree `k`.
pub fn close(k: usize, gens: &[Bipartition], cap: usize) -> Result<ElementSet> {
    check_degrees(k, gens)?;
    let mut seen: HashSet<Bipartition> = HashSet::new();
    let mut frontier: Vec<Bipartition> = std::iter::once(Bipartition::identity(k))
        .chain(gens.iter().cloned())
        .collect();
    frontier.sort_unstable();
    frontier.dedup();
    seen.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        if seen.len() > cap {
            return Err(Error::ExplosionGuard(cap));
        }
        let mut next: Vec<Bipartition> = frontier
            .par_iter()
            .flat_map_iter(|x| gens.iter().map(move |g| x * g))
            .filter(|p| !seen.contains(p))
            .collect();
        next.par_sort_unstable();
        next.dedup();
        seen.extend(next.iter().cloned());
        frontier = next;
    }
    if seen.len() > cap {
        return Err(Error::ExplosionGuard(cap));
    }
    ElementSet::new(k, seen)
}

/// Right and left multiplication tables of a generated monoid.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    pub elements: ElementSet,
    pub generators: Vec<Bipartition>,
    /// `right[x][g]` is the index of `x·g`.
    pub right: Vec<Vec<usize>>,
    /// `left[x][g]` is the index of `g·x`.
    pub left: Vec<Vec<usize>>,
}

impl CayleyGraph {
    pub fn identity_index(&self) -> usize {
        self.elements
            .position(&Bipartition::identity(self.elements.degree()))
            .expect("identity is always generated")
    }
}

pub fn cayley(k: usize, gens: &[Bipartition], cap: usize) -> Result<CayleyGraph> {
    let elements = close(k, gens, cap)?;
    let table = |side_right: bool| -> Vec<Vec<usize>> {
        elements
            .elements()
            .par_iter()
            .map(|x| {
                gens.iter()
                    .map(|g| {
                        let p = if side_right { x * g } else { g * x };
                        elements.position(&p).expect("closed under generators")
                    })
                    .collect()
            })
            .collect()
    };
    let right = table(true);
    let left = table(false);
    Ok(CayleyGraph {
        elements,
        generators: gens.to_vec(),
        right,
        left,
    })
}

/// Every bipartition of degree `k`, via restricted-growth strings over the `2k` slots.
pub fn all_bipartitions(k: usize, max_degree: usize) -> Result<AllBipartitions> {
    if k > max_degree {
        return Err(Error::LimitExceeded {
            degree: k,
            limit: max_degree,
        });
    }
    Ok(AllBipartitions {
        k,
        word: vec![0; 2 * k],
        done: false,
    })
}

/// Iterator returned by [`all_bipartitions`].
#[derive(Debug, Clone)]
pub struct AllBipartitions {
    k: usize,
    word: Vec<usize>,
    done: bool,
}

impl Iterator for AllBipartitions {
    type Item = Bipartition;

    fn next(&mut self) -> Option<Bipartition> {
        if self.done {
            return None;
        }
        let current = Bipartition::from_labels(self.k, &self.word);
        // Advance to the next restricted-growth string.
        let n = self.word.len();
        let mut pos = n;
        loop {
            if pos <= 1 {
                self.done = true;
                break;
            }
            pos -= 1;
            let bound = self.word[..pos].iter().max().copied().unwrap_or(0) + 1;
            if self.word[pos] < bound {
                self.word[pos] += 1;
                self.word[pos + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
        Some(current)
    }
}

/// All non-crossing bipartitions of degree `k` whose blocks pass `block_ok`.
///
/// Points are visited in boundary order `1..k, k'..1'`.
pub fn noncrossing_bipartitions(k: usize, block_ok: impl Fn(BlockType) -> bool) -> Vec<Bipartition> {
    let n = 2 * k;
    let kind = |pos: usize| pos < k;
    let mut memo: HashMap<(usize, usize), Vec<Vec<Vec<usize>>>> = HashMap::new();
    let partitions = noncrossing(0, n, &kind, &block_ok, &mut memo);
    let slot = |pos: usize| if pos < k { pos } else { k + (n - 1 - pos) };
    let mut out: Vec<Bipartition> = partitions
        .iter()
        .map(|blocks| {
            let mut labels = vec![0usize; n];
            for (b, block) in blocks.iter().enumerate() {
                for &p in block {
                    labels[slot(p)] = b;
                }
            }
            Bipartition::from_labels(k, &labels)
        })
        .collect();
    out.sort_unstable();
    out
}

type Blocks = Vec<Vec<usize>>;

fn noncrossing(
    lo: usize,
    hi: usize,
    is_upper: &impl Fn(usize) -> bool,
    block_ok: &impl Fn(BlockType) -> bool,
    memo: &mut HashMap<(usize, usize), Vec<Blocks>>,
) -> Vec<Blocks> {
    if lo >= hi {
        return vec![Vec::new()];
    }
    if let Some(hit) = memo.get(&(lo, hi)) {
        return hit.clone();
    }
    let mut out = Vec::new();
    let mut block = vec![lo];
    extend_block(hi, &mut block, is_upper, block_ok, memo, &mut out);
    memo.insert((lo, hi), out.clone());
    out
}

/// Chooses the remaining members of the block containing `block[0]`.
fn extend_block(
    hi: usize,
    block: &mut Vec<usize>,
    is_upper: &impl Fn(usize) -> bool,
    block_ok: &impl Fn(BlockType) -> bool,
    memo: &mut HashMap<(usize, usize), Vec<Blocks>>,
    out: &mut Vec<Blocks>,
) {
    let upper = block.iter().filter(|&&p| is_upper(p)).count();
    if block_ok(BlockType {
        upper,
        lower: block.len() - upper,
    }) {
        let mut gaps: Vec<(usize, usize)> = block.windows(2).map(|w| (w[0] + 1, w[1])).collect();
        gaps.push((block[block.len() - 1] + 1, hi));
        let mut combos: Vec<Blocks> = vec![vec![block.clone()]];
        for (a, b) in gaps {
            let parts = noncrossing(a, b, is_upper, block_ok, memo);
            if parts.is_empty() {
                combos.clear();
                break;
            }
            combos = combos
                .iter()
                .flat_map(|c| {
                    parts.iter().map(move |p| {
                        let mut merged = c.clone();
                        merged.extend(p.iter().cloned());
                        merged
                    })
                })
                .collect();
        }
        out.extend(combos);
    }
    let last = block[block.len() - 1];
    for next in last + 1..hi {
        block.push(next);
        extend_block(hi, block, is_upper, block_ok, memo, out);
        block.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Family, FamilyKind};
    use crate::generators::apsis;

    #[test]
    fn bell_counts() {
        assert_eq!(all_bipartitions(0, 5).unwrap().count(), 1);
        assert_eq!(all_bipartitions(1, 5).unwrap().count(), 2);
        assert_eq!(all_bipartitions(2, 5).unwrap().count(), 15);
        assert_eq!(all_bipartitions(3, 5).unwrap().count(), 203);
        assert_eq!(all_bipartitions(4, 5).unwrap().count(), 4140);
        assert!(matches!(all_bipartitions(6, 5), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn small_closures() {
        let gens = Family::new(FamilyKind::PMod(2), 3).unwrap().generating_set();
        assert_eq!(close(3, &gens, 1000).unwrap().len(), 12);
        let jones = [apsis(3, 2, 1).unwrap(), apsis(3, 2, 2).unwrap()];
        assert_eq!(close(3, &jones, 1000).unwrap().len(), 5);
        let gens = Family::new(FamilyKind::Apsis(3), 6).unwrap().generating_set();
        assert_eq!(close(6, &gens, 1000).unwrap().len(), 74);
    }

    #[test]
    fn explosion_guard() {
        let gens = Family::new(FamilyKind::Partition, 3).unwrap().generating_set();
        assert!(matches!(close(3, &gens, 50), Err(Error::ExplosionGuard(50))));
    }

    #[test]
    fn cayley_edges() {
        let gens = Family::new(FamilyKind::PMod(2), 4).unwrap().generating_set();
        let g = cayley(4, &gens, 1000).unwrap();
        assert_eq!(g.elements.len(), 55);
        assert!(g.right.iter().all(|row| row.len() == gens.len()));
        let id = g.identity_index();
        for (j, gen) in gens.iter().enumerate() {
            assert_eq!(g.elements.get(g.right[id][j]), gen);
        }
    }

    #[test]
    fn noncrossing_matches_filter() {
        for k in 0..=4 {
            let direct = noncrossing_bipartitions(k, |_| true);
            let filtered: Vec<_> = all_bipartitions(k, 5).unwrap().filter(|a| a.is_planar()).collect();
            let mut filtered = filtered;
            filtered.sort_unstable();
            assert_eq!(direct, filtered, "k={k}");
        }
        assert_eq!(noncrossing_bipartitions(5, |_| true).len(), 16796);
    }
}
