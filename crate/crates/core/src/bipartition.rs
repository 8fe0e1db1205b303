//! Bipartitions of `{1..k} ∪ {1'..k'}` in canonical form.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::unionfind::UnionFind;

/// Largest supported degree; block ids are stored in a byte.
pub const MAX_DEGREE: usize = 127;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Upper,
    Lower,
}

/// A point of a bipartition: `j` on the upper row or `j'` on the lower row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub fn upper(index: usize) -> Self {
        Vertex {
            side: Side::Upper,
            index,
        }
    }

    pub fn lower(index: usize) -> Self {
        Vertex {
            side: Side::Lower,
            index,
        }
    }

    /// Position in the flat id array of a degree-`k` bipartition.
    fn slot(self, k: usize) -> usize {
        match self.side {
            Side::Upper => self.index - 1,
            Side::Lower => k + self.index - 1,
        }
    }

    fn from_slot(slot: usize, k: usize) -> Self {
        if slot < k {
            Vertex::upper(slot + 1)
        } else {
            Vertex::lower(slot - k + 1)
        }
    }

    /// Signed encoding used by the JSON format.
    pub fn signed(self) -> i64 {
        match self.side {
            Side::Upper => self.index as i64,
            Side::Lower => -(self.index as i64),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Upper => write!(f, "{}", self.index),
            Side::Lower => write!(f, "{}'", self.index),
        }
    }
}

/// Upper and lower vertex counts of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockType {
    pub upper: usize,
    pub lower: usize,
}

impl BlockType {
    pub fn is_transversal(self) -> bool {
        self.upper > 0 && self.lower > 0
    }
}

pub fn block_type(block: &[Vertex]) -> BlockType {
    let upper = block.iter().filter(|v| v.side == Side::Upper).count();
    BlockType {
        upper,
        lower: block.len() - upper,
    }
}

/// True when the block is `m` consecutive vertices on a single side.
pub fn is_m_apsis(block: &[Vertex], m: usize) -> bool {
    if block.len() != m || m == 0 {
        return false;
    }
    let side = block[0].side;
    if block.iter().any(|v| v.side != side) {
        return false;
    }
    let mut idx: Vec<usize> = block.iter().map(|v| v.index).collect();
    idx.sort_unstable();
    idx.windows(2).all(|w| w[1] == w[0] + 1)
}

pub fn is_transversal_line(block: &[Vertex]) -> bool {
    block_type(block) == BlockType { upper: 1, lower: 1 }
}

/// A block is uniform when it has as many upper as lower vertices.
pub fn is_uniform(block: &[Vertex]) -> bool {
    let t = block_type(block);
    t.upper == t.lower
}

/// A set partition of `2k` points. Equality is equality of canonical ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    degree: usize,
    ids: Box<[u8]>,
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bipartition({}: {})", self.degree, self)
    }
}

impl Bipartition {
    /// Builds a bipartition from its blocks, validating coverage.
    pub fn new(k: usize, blocks: &[Vec<Vertex>]) -> Result<Self> {
        check_degree(k)?;
        let mut raw = vec![usize::MAX; 2 * k];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                if v.index == 0 || v.index > k {
                    return Err(Error::IndexOutOfRange {
                        index: v.index,
                        max: k,
                    });
                }
                let slot = v.slot(k);
                if raw[slot] != usize::MAX {
                    return Err(Error::DuplicateVertex(v.to_string()));
                }
                raw[slot] = b;
            }
        }
        if let Some(slot) = raw.iter().position(|&b| b == usize::MAX) {
            return Err(Error::MissingVertex(Vertex::from_slot(slot, k).to_string()));
        }
        Ok(Self::from_labels(k, &raw))
    }

    /// Canonicalises an arbitrary labelling of the `2k` slots
    /// (upper `1..k` then lower `1..k`).
    pub fn from_labels(k: usize, labels: &[usize]) -> Self {
        debug_assert_eq!(labels.len(), 2 * k);
        let mut map = std::collections::HashMap::new();
        let ids = labels
            .iter()
            .map(|&l| {
                let next = map.len() as u8;
                *map.entry(l).or_insert(next)
            })
            .collect();
        Bipartition { degree: k, ids }
    }

    /// Like [`from_labels`](Self::from_labels) for labels bounded by `bound`.
    fn from_small_labels(k: usize, labels: &[u16], bound: usize) -> Self {
        let mut map = vec![u8::MAX; bound];
        let mut next = 0u8;
        let ids = labels
            .iter()
            .map(|&l| {
                let slot = &mut map[l as usize];
                if *slot == u8::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        Bipartition { degree: k, ids }
    }

    pub fn identity(k: usize) -> Self {
        let labels: Vec<usize> = (0..k).chain(0..k).collect();
        Self::from_labels(k, &labels)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Canonical block ids, upper `1..k` followed by lower `1..k`.
    pub fn ids(&self) -> &[u8] {
        &self.ids
    }

    pub fn upper_ids(&self) -> &[u8] {
        &self.ids[..self.degree]
    }

    pub fn lower_ids(&self) -> &[u8] {
        &self.ids[self.degree..]
    }

    pub fn num_blocks(&self) -> usize {
        self.ids.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    pub fn block_id(&self, v: Vertex) -> usize {
        self.ids[v.slot(self.degree)] as usize
    }

    /// Blocks in canonical order, each listing upper then lower vertices ascending.
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (slot, &b) in self.ids.iter().enumerate() {
            blocks[b as usize].push(Vertex::from_slot(slot, self.degree));
        }
        blocks
    }

    /// Upper and lower counts for every block, indexed by block id.
    pub fn block_types(&self) -> Vec<BlockType> {
        let mut types = vec![BlockType { upper: 0, lower: 0 }; self.num_blocks()];
        for &b in self.upper_ids() {
            types[b as usize].upper += 1;
        }
        for &b in self.lower_ids() {
            types[b as usize].lower += 1;
        }
        types
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(self.compose(other))
    }

    /// Product of two bipartitions of equal degree.
    fn compose(&self, other: &Self) -> Self {
        let k = self.degree;
        // Nodes: upper row 0..k, middle row k..2k, lower row 2k..3k.
        let mut uf = UnionFind::new(3 * k);
        let mut first = [u16::MAX; 2 * MAX_DEGREE];
        for (slot, &b) in self.ids.iter().enumerate() {
            let node = slot as u16;
            let rep = &mut first[b as usize];
            if *rep == u16::MAX {
                *rep = node;
            } else {
                uf.union(*rep as usize, node as usize);
            }
        }
        let mut first = [u16::MAX; 2 * MAX_DEGREE];
        for (slot, &b) in other.ids.iter().enumerate() {
            let node = (slot + k) as u16;
            let rep = &mut first[b as usize];
            if *rep == u16::MAX {
                *rep = node;
            } else {
                uf.union(*rep as usize, node as usize);
            }
        }
        let mut labels = [0u16; 2 * MAX_DEGREE];
        for i in 0..k {
            labels[i] = uf.find(i) as u16;
            labels[k + i] = uf.find(2 * k + i) as u16;
        }
        Self::from_small_labels(k, &labels[..2 * k], 3 * k)
    }

    /// Swaps the upper and lower rows.
    pub fn star(&self) -> Self {
        let k = self.degree;
        let labels: Vec<u16> = self.lower_ids().iter().chain(self.upper_ids()).map(|&b| b as u16).collect();
        Self::from_small_labels(k, &labels, 2 * k)
    }

    /// Horizontal sum: `other` placed to the right of `self`.
    pub fn hsum(&self, other: &Self) -> Self {
        let (k1, k2) = (self.degree, other.degree);
        let shift = self.num_blocks();
        let mut labels = Vec::with_capacity(2 * (k1 + k2));
        labels.extend(self.upper_ids().iter().map(|&b| b as usize));
        labels.extend(other.upper_ids().iter().map(|&b| b as usize + shift));
        labels.extend(self.lower_ids().iter().map(|&b| b as usize));
        labels.extend(other.lower_ids().iter().map(|&b| b as usize + shift));
        Self::from_labels(k1 + k2, &labels)
    }

    /// Number of transversal blocks.
    pub fn rank(&self) -> usize {
        self.block_types().iter().filter(|t| t.is_transversal()).count()
    }

    pub fn is_identity(&self) -> bool {
        self.upper_ids() == self.lower_ids() && self.num_blocks() == self.degree
    }

    /// Every block is a transversal line.
    pub fn is_permutation(&self) -> bool {
        self.block_types().iter().all(|t| t.upper == 1 && t.lower == 1)
    }

    /// Non-crossing test on the boundary cycle `1..k, k'..1'`.
    pub fn is_planar(&self) -> bool {
        let k = self.degree;
        let order = (0..k).chain((k..2 * k).rev());
        let mut last = vec![0usize; self.num_blocks()];
        for (pos, slot) in order.clone().enumerate() {
            last[self.ids[slot] as usize] = pos;
        }
        let mut seen = vec![false; last.len()];
        let mut stack: Vec<u8> = Vec::new();
        for (pos, slot) in order.enumerate() {
            let b = self.ids[slot];
            if seen[b as usize] {
                if stack.last() != Some(&b) {
                    return false;
                }
                if last[b as usize] == pos {
                    stack.pop();
                }
            } else {
                seen[b as usize] = true;
                if last[b as usize] != pos {
                    stack.push(b);
                }
            }
        }
        true
    }

    /// Every block has `u ≡ l (mod m)`.
    pub fn is_modular(&self, m: usize) -> bool {
        m >= 1
            && self
                .block_types()
                .iter()
                .all(|t| t.upper % m == t.lower % m)
    }

    /// Whether some upper block is an `m`-apsis.
    pub fn has_upper_apsis(&self, m: usize) -> bool {
        self.blocks()
            .iter()
            .any(|b| b[0].side == Side::Upper && is_m_apsis(b, m))
    }

    pub fn has_lower_apsis(&self, m: usize) -> bool {
        self.blocks()
            .iter()
            .any(|b| b[0].side == Side::Lower && is_m_apsis(b, m))
    }

    pub fn upper_pattern(&self) -> Pattern {
        Pattern::from_rows(self.upper_ids(), self.lower_ids())
    }

    pub fn lower_pattern(&self) -> Pattern {
        Pattern::from_rows(self.lower_ids(), self.upper_ids())
    }

    /// Canonical text form, e.g. `[[1,1'],[2,2']]`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the text form; the degree is the largest index present.
    pub fn from_text(s: &str) -> Result<Self> {
        let blocks = parse_blocks(s)?;
        let k = blocks
            .iter()
            .flatten()
            .map(|v| v.index)
            .max()
            .unwrap_or(0);
        build_from_parsed(k, &blocks, s)
    }

    /// Parses the text form at a given degree.
    pub fn from_text_with_degree(s: &str, k: usize) -> Result<Self> {
        let blocks = parse_blocks(s)?;
        build_from_parsed(k, &blocks, s)
    }

    pub fn to_json(&self) -> BipartitionJson {
        BipartitionJson {
            k: self.degree,
            blocks: self
                .blocks()
                .iter()
                .map(|b| b.iter().map(|v| v.signed()).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &BipartitionJson) -> Result<Self> {
        let blocks: Vec<Vec<Vertex>> = json
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| {
                        if x > 0 {
                            Ok(Vertex::upper(x as usize))
                        } else if x < 0 {
                            Ok(Vertex::lower(x.unsigned_abs() as usize))
                        } else {
                            Err(Error::IndexOutOfRange {
                                index: 0,
                                max: json.k,
                            })
                        }
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::new(json.k, &blocks)
    }
}

fn check_degree(k: usize) -> Result<()> {
    if k > MAX_DEGREE {
        Err(Error::LimitExceeded {
            degree: k,
            limit: MAX_DEGREE,
        })
    } else {
        Ok(())
    }
}

impl Mul for &Bipartition {
    type Output = Bipartition;

    /// Panics on a degree mismatch; use [`Bipartition::product`] to get an error instead.
    fn mul(self, rhs: &Bipartition) -> Bipartition {
        assert_eq!(self.degree, rhs.degree, "degree mismatch in product");
        self.compose(rhs)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, v) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_text(s)
    }
}

/// JSON shape: lower vertex `j'` is written as `-j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionJson {
    pub k: usize,
    pub blocks: Vec<Vec<i64>>,
}

impl Serialize for Bipartition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Bipartition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = BipartitionJson::deserialize(deserializer)?;
        Bipartition::from_json(&json).map_err(serde::de::Error::custom)
    }
}

fn build_from_parsed(k: usize, blocks: &[Vec<Vertex>], s: &str) -> Result<Bipartition> {
    let end = s.chars().count();
    Bipartition::new(k, blocks).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(end, other.to_string()),
    })
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.chars.last().map_or(0, |&(i, _)| i + 1))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(Error::parse(self.offset(), format!("expected '{c}', found '{x}'"))),
            None => Err(Error::parse(self.offset(), format!("expected '{c}', found end of input"))),
        }
    }

    fn vertex(&mut self) -> Result<Vertex> {
        let start = self.offset();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(Error::parse(start, "expected a vertex index"));
        }
        let index: usize = digits
            .parse()
            .map_err(|_| Error::parse(start, "vertex index too large"))?;
        if index == 0 {
            return Err(Error::parse(start, "vertex indices start at 1"));
        }
        if self.peek() == Some('\'') {
            self.pos += 1;
            Ok(Vertex::lower(index))
        } else {
            Ok(Vertex::upper(index))
        }
    }
}

fn parse_blocks(s: &str) -> Result<Vec<Vec<Vertex>>> {
    let mut cur = Cursor::new(s);
    cur.expect('[')?;
    let mut blocks = Vec::new();
    if cur.peek() == Some(']') {
        cur.pos += 1;
    } else {
        loop {
            cur.expect('[')?;
            let mut block = vec![cur.vertex()?];
            while cur.peek() == Some(',') {
                cur.pos += 1;
                block.push(cur.vertex()?);
            }
            cur.expect(']')?;
            blocks.push(block);
            match cur.peek() {
                Some(',') => cur.pos += 1,
                _ => break,
            }
        }
        cur.expect(']')?;
    }
    if let Some(c) = cur.peek() {
        return Err(Error::parse(cur.offset(), format!("unexpected trailing '{c}'")));
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(s: &str) -> Bipartition {
        s.parse().unwrap()
    }

    #[test]
    fn identity_text() {
        assert_eq!(Bipartition::identity(2).to_text(), "[[1,1'],[2,2']]");
        assert_eq!(Bipartition::identity(0).to_text(), "[]");
    }

    #[test]
    fn figure_product() {
        let a = bp("[[1,5,4',5'],[2,3,4],[1'],[2',3']]");
        let b = bp("[[1,4,5,1',2',3'],[2,3],[4',5']]");
        let ab = &a * &b;
        assert_eq!(ab.to_text(), "[[1,5,1',2',3'],[2,3,4],[4',5']]");
        assert_eq!(ab.rank(), 1);
    }

    #[test]
    fn missing_lower_side_is_rejected() {
        let blocks = vec![vec![Vertex::upper(1), Vertex::upper(2)], vec![Vertex::upper(3)]];
        assert!(matches!(Bipartition::new(3, &blocks), Err(Error::MissingVertex(_))));
        assert!(matches!(
            Bipartition::from_text_with_degree("[[1],[2]]", 2),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn duplicate_and_range() {
        let dup = vec![vec![Vertex::upper(1), Vertex::upper(1), Vertex::lower(1)]];
        assert!(matches!(Bipartition::new(1, &dup), Err(Error::DuplicateVertex(_))));
        let far = vec![vec![Vertex::upper(3)]];
        assert!(matches!(Bipartition::new(1, &far), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn parse_errors_carry_position() {
        match Bipartition::from_text("[[1,x]]") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Bipartition::from_text(" [ [1 , 1' ] ] ").is_ok());
    }

    #[test]
    fn vertical_flip_figure() {
        let a = bp("[[1,2],[3,6,5',6'],[4,5],[1',4'],[2',3']]");
        let expected = bp("[[1,4],[2,3],[5,6,3',6'],[1',2'],[4',5']]");
        assert_eq!(a.star(), expected);
    }

    #[test]
    fn horizontal_sum_figure() {
        let a = bp("[[1,2],[3,6,5',6'],[4,5],[1',4'],[2',3']]");
        let b = bp("[[1,2,3,3',4'],[4,8,5'],[5,6,7],[1',2'],[6',7',8']]");
        let expected = bp(
            "[[1,2],[3,6,5',6'],[4,5],[1',4'],[2',3'],[7,8,9,9',10'],[10,14,11'],[11,12,13],[7',8'],[12',13',14']]",
        );
        let sum = a.hsum(&b);
        assert_eq!(sum.degree(), 14);
        assert_eq!(sum, expected);
        assert_eq!(sum.rank(), a.rank() + b.rank());
    }

    #[test]
    fn planarity_of_small_generators() {
        assert!(!bp("[[1,2'],[2,1']]").is_planar());
        assert!(bp("[[1,2],[1',2']]").is_planar());
        assert!(bp("[[1,3],[2],[1',2',3']]").is_planar());
        assert!(!bp("[[1,3],[2,1'],[2'],[3']]").is_planar());
    }

    #[test]
    fn block_predicates() {
        let tri = [Vertex::upper(3), Vertex::upper(4), Vertex::upper(5)];
        assert!(is_m_apsis(&tri, 3));
        let gappy = [Vertex::upper(1), Vertex::upper(3), Vertex::upper(5)];
        assert!(!is_m_apsis(&gappy, 3));
        assert!(is_transversal_line(&[Vertex::upper(2), Vertex::lower(2)]));
        assert!(is_uniform(&[Vertex::upper(1), Vertex::upper(2), Vertex::lower(1), Vertex::lower(3)]));
    }

    #[test]
    fn modular_figure_elements() {
        assert!(bp("[[1,2,3,2'],[1',3']]").is_modular(2));
        assert!(bp("[[1,2,4,2'],[3,1',3',4']]").is_modular(2));
        assert!(bp("[[1,3,5],[2,4,1',2',3',4',5']]").is_modular(3));
        assert!(!bp("[[1,3,5],[2],[4],[1',2',3',4',5']]").is_modular(3));
    }

    #[test]
    fn json_round_trip() {
        let a = bp("[[1,5,4',5'],[2,3,4],[1'],[2',3']]");
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"k":5,"blocks":[[1,5,-4,-5],[2,3,4],[-1],[-2,-3]]}"#);
        let back: Bipartition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
