//! Upper and lower patterns of bipartitions.

use std::fmt;

/// One row of a bipartition: how its vertices are grouped, and which groups
/// continue to the other row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    labels: Box<[u8]>,
    transversal: Box<[bool]>,
}

impl Pattern {
    /// Builds the pattern of the row `own` of a bipartition whose other row is `other`.
    pub(crate) fn from_rows(own: &[u8], other: &[u8]) -> Self {
        let mut map = [u8::MAX; 256];
        let mut transversal = Vec::new();
        let labels = own
            .iter()
            .map(|&b| {
                if map[b as usize] == u8::MAX {
                    map[b as usize] = transversal.len() as u8;
                    transversal.push(other.contains(&b));
                }
                map[b as usize]
            })
            .collect();
        Pattern {
            labels,
            transversal: transversal.into_boxed_slice(),
        }
    }

    /// Builds a pattern from explicit vertex sets over `{1..k}`.
    pub fn new(k: usize, non_transversals: &[Vec<usize>], transversals: &[Vec<usize>]) -> Option<Self> {
        let mut raw = vec![usize::MAX; k];
        let mut kinds = Vec::new();
        for (set, is_trans) in non_transversals
            .iter()
            .map(|s| (s, false))
            .chain(transversals.iter().map(|s| (s, true)))
        {
            let id = kinds.len();
            kinds.push(is_trans);
            for &v in set {
                if v == 0 || v > k || raw[v - 1] != usize::MAX {
                    return None;
                }
                raw[v - 1] = id;
            }
        }
        if raw.contains(&usize::MAX) {
            return None;
        }
        let mut map = vec![u8::MAX; kinds.len()];
        let mut transversal = Vec::new();
        let labels = raw
            .iter()
            .map(|&id| {
                if map[id] == u8::MAX {
                    map[id] = transversal.len() as u8;
                    transversal.push(kinds[id]);
                }
                map[id]
            })
            .collect();
        Some(Pattern {
            labels,
            transversal: transversal.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    fn groups(&self, want: bool) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.transversal.len()];
        for (i, &l) in self.labels.iter().enumerate() {
            groups[l as usize].push(i + 1);
        }
        groups
            .into_iter()
            .zip(self.transversal.iter())
            .filter(|(_, &t)| t == want)
            .map(|(g, _)| g)
            .collect()
    }

    /// Vertex sets of the non-transversal blocks on this row, sorted.
    pub fn non_transversals(&self) -> Vec<Vec<usize>> {
        self.groups(false)
    }

    /// This row's share of each transversal block, sorted.
    pub fn transversals(&self) -> Vec<Vec<usize>> {
        self.groups(true)
    }

    /// Sizes of the transversal parts, left to right.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.transversals().iter().map(Vec::len).collect()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |f: &mut fmt::Formatter<'_>, sets: &[Vec<usize>]| -> fmt::Result {
            f.write_str("{")?;
            for (i, s) in sets.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                let inner: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", inner.join(","))?;
            }
            f.write_str("}")
        };
        f.write_str("(")?;
        show(f, &self.non_transversals())?;
        f.write_str(", ")?;
        show(f, &self.transversals())?;
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use crate::Bipartition;

    #[test]
    fn worked_example_k8() {
        let a: Bipartition = "[[1,5,2',3',6',7'],[2,3,4],[6,7,8,8'],[1'],[4',5']]".parse().unwrap();
        let up = a.upper_pattern();
        assert_eq!(up.non_transversals(), vec![vec![2, 3, 4]]);
        assert_eq!(up.transversals(), vec![vec![1, 5], vec![6, 7, 8]]);
        let low = a.lower_pattern();
        assert_eq!(low.non_transversals(), vec![vec![1], vec![4, 5]]);
        assert_eq!(low.transversals(), vec![vec![2, 3, 6, 7], vec![8]]);
        assert_eq!(low, a.star().upper_pattern());
    }

    #[test]
    fn identity_pattern() {
        let p = Bipartition::identity(3).upper_pattern();
        assert!(p.non_transversals().is_empty());
        assert_eq!(p.transversals(), vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn explicit_construction_matches() {
        let a: Bipartition = "[[1,5,2',3',6',7'],[2,3,4],[6,7,8,8'],[1'],[4',5']]".parse().unwrap();
        let p = super::Pattern::new(8, &[vec![2, 3, 4]], &[vec![1, 5], vec![6, 7, 8]]).unwrap();
        assert_eq!(p, a.upper_pattern());
        assert_eq!(p.to_string(), "({{2,3,4}}, {{1,5},{6,7,8}})");
    }
}
