//! Generator words, relation sets, congruence enumeration and normal forms.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::bipartition::Bipartition;
use crate::enumerate::{cayley, CayleyGraph};
use crate::error::{Error, Result};
use crate::families::{Family, FamilyKind};
use crate::generators::Generator;

const ALIASES: [(char, Generator); 12] = [
    ('a', Generator::Apsis { width: 2, index: 1 }),
    ('A', Generator::Transapsis(1)),
    ('b', Generator::Apsis { width: 2, index: 2 }),
    ('B', Generator::Transapsis(2)),
    ('c', Generator::Apsis { width: 2, index: 3 }),
    ('C', Generator::Transapsis(3)),
    ('d', Generator::Apsis { width: 2, index: 4 }),
    ('D', Generator::Transapsis(4)),
    ('f', Generator::Apsis { width: 2, index: 5 }),
    ('F', Generator::Transapsis(5)),
    ('g', Generator::Apsis { width: 2, index: 6 }),
    ('G', Generator::Transapsis(6)),
];

fn h(i: usize) -> Generator {
    Generator::diapsis(i)
}

fn t(i: usize) -> Generator {
    Generator::Transapsis(i)
}

fn s(i: usize) -> Generator {
    Generator::Transposition(i)
}

fn e(i: usize) -> Generator {
    Generator::monapsis(i)
}

/// Parses one letter: a generator name or a single alias character.
pub fn parse_letter(token: &str) -> Result<Generator> {
    let mut chars = token.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        if let Some(&(_, g)) = ALIASES.iter().find(|(a, _)| *a == c) {
            return Ok(g);
        }
    }
    token.parse()
}

fn alias_of(g: Generator) -> Option<char> {
    ALIASES.iter().find(|(_, x)| *x == g).map(|&(c, _)| c)
}

/// A word in named generators at a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenWord {
    pub degree: usize,
    pub letters: Vec<Generator>,
}

impl GenWord {
    pub fn new(degree: usize, letters: Vec<Generator>) -> Self {
        GenWord { degree, letters }
    }

    pub fn empty(degree: usize) -> Self {
        GenWord::new(degree, Vec::new())
    }

    /// Whitespace-separated letters; `id` or an empty string is the empty word.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .filter(|tok| *tok != "id")
            .map(parse_letter)
            .collect::<Result<Vec<_>>>()?;
        Ok(GenWord::new(degree, letters))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Left-to-right product of the letters.
    pub fn eval(&self) -> Result<Bipartition> {
        let mut acc = Bipartition::identity(self.degree);
        for &g in &self.letters {
            let x = g
                .build(self.degree)
                .map_err(|_| Error::IllegalLetter(format!("{g} at degree {}", self.degree)))?;
            acc = &acc * &x;
        }
        Ok(acc)
    }

    pub fn concat(&self, other: &GenWord) -> GenWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GenWord::new(self.degree, letters)
    }

    /// Alias spelling (`a` for `h1`, `A` for `t1`, …) when every letter has one.
    pub fn to_alias_string(&self) -> Option<String> {
        let parts: Option<Vec<String>> = self.letters.iter().map(|&g| alias_of(g).map(String::from)).collect();
        parts.map(|p| p.join(" "))
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        for (n, g) in self.letters.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// The named presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresentationName {
    Jones,
    Brauer1,
    Brauer2,
    Brauer3,
    Mod(usize),
    Mod2Alt,
    PlanarUbb,
    PlanarPartition,
    Ubb1,
    Ubb2,
    SymInv,
    PlanarSymInv,
    PMod2,
    PMod2Implied,
}

impl PresentationName {
    pub const ALL_FIXED: [PresentationName; 13] = [
        PresentationName::Jones,
        PresentationName::Brauer1,
        PresentationName::Brauer2,
        PresentationName::Brauer3,
        PresentationName::Mod2Alt,
        PresentationName::PlanarUbb,
        PresentationName::PlanarPartition,
        PresentationName::Ubb1,
        PresentationName::Ubb2,
        PresentationName::SymInv,
        PresentationName::PlanarSymInv,
        PresentationName::PMod2,
        PresentationName::PMod2Implied,
    ];

    /// Generator alphabet at degree `k`.
    pub fn alphabet(self, k: usize) -> Vec<Generator> {
        let low = 1..k;
        match self {
            PresentationName::Jones => low.map(h).collect(),
            PresentationName::Brauer1 | PresentationName::Brauer2 | PresentationName::Brauer3 => {
                low.clone().map(s).chain(low.map(h)).collect()
            }
            PresentationName::Mod(m) => low
                .clone()
                .map(s)
                .chain(low.map(t))
                .chain((1..=(k + 1).saturating_sub(m)).map(|i| Generator::Apsis { width: m, index: i }))
                .collect(),
            PresentationName::Mod2Alt => low.clone().map(s).chain(low.clone().map(t)).chain(low.map(h)).collect(),
            PresentationName::PlanarUbb => low.map(t).collect(),
            PresentationName::PlanarPartition => (1..=k).map(e).chain(low.map(t)).collect(),
            PresentationName::Ubb1 => low.clone().map(s).chain((k >= 2).then(|| t(1))).collect(),
            PresentationName::Ubb2 => low.clone().map(s).chain(low.map(t)).collect(),
            PresentationName::SymInv => low.map(s).chain((1..=k).map(e)).collect(),
            PresentationName::PlanarSymInv => (1..=k)
                .map(Generator::PfForward)
                .chain((1..=k).map(Generator::PfBackward))
                .collect(),
            PresentationName::PMod2 | PresentationName::PMod2Implied => low.clone().map(t).chain(low.map(h)).collect(),
        }
    }

    /// The family the presentation describes.
    pub fn family(self) -> FamilyKind {
        match self {
            PresentationName::Jones => FamilyKind::Jones,
            PresentationName::Brauer1 | PresentationName::Brauer2 | PresentationName::Brauer3 => FamilyKind::Brauer,
            PresentationName::Mod(m) => FamilyKind::Mod(m),
            PresentationName::Mod2Alt => FamilyKind::Mod(2),
            PresentationName::PlanarUbb => FamilyKind::PlanarUbb,
            PresentationName::PlanarPartition => FamilyKind::PlanarPartition,
            PresentationName::Ubb1 | PresentationName::Ubb2 => FamilyKind::Ubb,
            PresentationName::SymInv => FamilyKind::SymInv,
            PresentationName::PlanarSymInv => FamilyKind::PlanarSymInv,
            PresentationName::PMod2 | PresentationName::PMod2Implied => FamilyKind::PMod(2),
        }
    }
}

impl fmt::Display for PresentationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationName::Jones => f.write_str("jones"),
            PresentationName::Brauer1 => f.write_str("brauer1"),
            PresentationName::Brauer2 => f.write_str("brauer2"),
            PresentationName::Brauer3 => f.write_str("brauer3"),
            PresentationName::Mod(m) => write!(f, "mod_m:{m}"),
            PresentationName::Mod2Alt => f.write_str("mod_m2"),
            PresentationName::PlanarUbb => f.write_str("pubb"),
            PresentationName::PlanarPartition => f.write_str("ppttn"),
            PresentationName::Ubb1 => f.write_str("ubb1"),
            PresentationName::Ubb2 => f.write_str("ubb2"),
            PresentationName::SymInv => f.write_str("syminv"),
            PresentationName::PlanarSymInv => f.write_str("planarsyminv"),
            PresentationName::PMod2 => f.write_str("pmod2"),
            PresentationName::PMod2Implied => f.write_str("pmod2_implied"),
        }
    }
}

impl FromStr for PresentationName {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let name = match text {
            "jones" => PresentationName::Jones,
            "brauer1" => PresentationName::Brauer1,
            "brauer2" => PresentationName::Brauer2,
            "brauer3" => PresentationName::Brauer3,
            "mod_m" => PresentationName::Mod(2),
            "mod_m2" => PresentationName::Mod2Alt,
            "pubb" => PresentationName::PlanarUbb,
            "ppttn" => PresentationName::PlanarPartition,
            "ubb1" => PresentationName::Ubb1,
            "ubb2" => PresentationName::Ubb2,
            "syminv" => PresentationName::SymInv,
            "planarsyminv" => PresentationName::PlanarSymInv,
            "pmod2" => PresentationName::PMod2,
            "pmod2_implied" => PresentationName::PMod2Implied,
            other => match other.strip_prefix("mod_m:").map(str::parse::<usize>) {
                Some(Ok(m)) if m >= 2 => PresentationName::Mod(m),
                _ => return Err(Error::UnsupportedFamily(text.to_string())),
            },
        };
        Ok(name)
    }
}

/// A list of instantiated relation pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub name: String,
    pub degree: usize,
    pub pairs: Vec<(GenWord, GenWord)>,
}

impl RelationSet {
    /// Parses `lhs = rhs` lines.
    pub fn parse(name: &str, degree: usize, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (l, r) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(n, format!("missing '=' in {line:?}")))?;
            pairs.push((GenWord::parse(degree, l)?, GenWord::parse(degree, r)?));
        }
        Ok(RelationSet {
            name: name.to_string(),
            degree,
            pairs,
        })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

struct Builder {
    k: usize,
    pairs: Vec<(GenWord, GenWord)>,
}

impl Builder {
    fn rel(&mut self, lhs: &[Generator], rhs: &[Generator]) {
        self.pairs
            .push((GenWord::new(self.k, lhs.to_vec()), GenWord::new(self.k, rhs.to_vec())));
    }

    /// `x_i^2 = x_i` for `i` in `range`.
    fn idempotent(&mut self, range: impl Iterator<Item = usize>, x: fn(usize) -> Generator) {
        for i in range {
            self.rel(&[x(i), x(i)], &[x(i)]);
        }
    }

    fn involution(&mut self, range: impl Iterator<Item = usize>, x: fn(usize) -> Generator) {
        for i in range {
            self.rel(&[x(i), x(i)], &[]);
        }
    }

    /// `x_j y_i = y_i x_j` over the given index pairs.
    fn commute(&mut self, pairs: impl Iterator<Item = (usize, usize)>, x: fn(usize) -> Generator, y: fn(usize) -> Generator) {
        for (j, i) in pairs {
            self.rel(&[x(j), y(i)], &[y(i), x(j)]);
        }
    }

    fn symmetric_group(&mut self) {
        let k = self.k;
        self.involution(1..k, s);
        for i in 1..k.saturating_sub(1) {
            self.rel(&[s(i + 1), s(i), s(i + 1)], &[s(i), s(i + 1), s(i)]);
        }
        self.commute(far_pairs(k - 1), s, s);
    }
}

/// Ordered index pairs `(j, i)` in `1..=n` with `j - i >= 2`.
fn far_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 2..=n).map(move |j| (j, i)))
}

/// Ordered index pairs with `|j - i| >= gap`.
fn apart(n1: usize, n2: usize, gap: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n1).flat_map(move |j| (1..=n2).filter(move |&i| j.abs_diff(i) >= gap).map(move |i| (j, i)))
}

/// Ordered neighbouring pairs `(i, j)` with `|j - i| = 1`, `i, j <= n`.
fn neighbours(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| [i.wrapping_sub(1), i + 1].into_iter().filter(move |&j| j >= 1 && j <= n).map(move |j| (i, j)))
}

fn distinct_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (j, i)))
}

/// Fully instantiated relations of a named presentation at degree `k`.
pub fn relations(name: PresentationName, k: usize) -> Result<RelationSet> {
    if k < 1 {
        return Err(Error::Range("presentations need degree at least 1".into()));
    }
    let mut b = Builder { k, pairs: Vec::new() };
    let n = k - 1;
    match name {
        PresentationName::Jones => {
            b.idempotent(1..k, h);
            for (i, j) in neighbours(n) {
                b.rel(&[h(i), h(j), h(i)], &[h(i)]);
            }
            b.commute(far_pairs(n), h, h);
        }
        PresentationName::Brauer1 | PresentationName::Brauer2 => {
            b.symmetric_group();
            b.idempotent(1..k, h);
            for (i, j) in neighbours(n) {
                b.rel(&[h(i), h(j), h(i)], &[h(i)]);
            }
            b.commute(far_pairs(n), h, h);
            if name == PresentationName::Brauer1 {
                for i in 1..k {
                    b.rel(&[s(i), h(i)], &[h(i)]);
                    b.rel(&[h(i), s(i)], &[h(i)]);
                }
                for (i, j) in neighbours(n) {
                    b.rel(&[h(i), h(j), s(i)], &[h(i), s(j)]);
                }
                for (i, j) in neighbours(n) {
                    b.rel(&[s(i), h(j), h(i)], &[s(j), h(i)]);
                }
                b.commute(apart(n, n, 2), h, s);
            } else {
                if k >= 2 {
                    b.rel(&[s(1), h(1)], &[h(1)]);
                    b.rel(&[h(1), s(1)], &[h(1)]);
                }
                for i in 1..n {
                    b.rel(&[h(i), h(i + 1), s(i)], &[h(i), s(i + 1)]);
                }
                for i in 1..n {
                    b.rel(&[s(i), h(i + 1), h(i)], &[s(i + 1), h(i)]);
                }
                b.commute(far_pairs(n), h, s);
            }
        }
        PresentationName::Brauer3 => {
            b.symmetric_group();
            b.idempotent(1..k, h);
            b.commute(far_pairs(n), h, h);
            if k >= 2 {
                b.rel(&[s(1), h(1)], &[h(1)]);
                b.rel(&[h(1), s(1)], &[h(1)]);
            }
            for i in 1..n {
                b.rel(&[h(i + 1)], &[s(i), s(i + 1), h(i), s(i + 1), s(i)]);
            }
            if k >= 3 {
                b.rel(&[h(1), s(2), h(1)], &[h(1)]);
            }
            b.commute(far_pairs(n), h, s);
        }
        PresentationName::Mod(m) => mod_relations(&mut b, m)?,
        PresentationName::Mod2Alt => {
            b.symmetric_group();
            b.idempotent(1..k, t);
            b.commute(distinct_pairs(n), t, t);
            b.idempotent(1..k, h);
            for (i, j) in neighbours(n) {
                b.rel(&[h(i), h(j), h(i)], &[h(i)]);
            }
            b.commute(far_pairs(n), h, h);
            for i in 1..k {
                b.rel(&[t(i), s(i)], &[t(i)]);
                b.rel(&[s(i), t(i)], &[t(i)]);
            }
            for i in 1..n {
                b.rel(&[s(i), s(i + 1), t(i), s(i + 1), s(i)], &[t(i + 1)]);
            }
            b.commute(apart(n, n, 2), t, s);
            for i in 1..k {
                b.rel(&[h(i), s(i)], &[h(i)]);
                b.rel(&[s(i), h(i)], &[h(i)]);
            }
            for i in 1..n {
                b.rel(&[h(i), h(i + 1), s(i)], &[h(i), s(i + 1)]);
            }
            for i in 1..n {
                b.rel(&[s(i), h(i + 1), h(i)], &[s(i + 1), h(i)]);
            }
            b.commute(apart(n, n, 2), h, s);
            for i in 1..k {
                b.rel(&[h(i), t(i)], &[h(i)]);
                b.rel(&[t(i), h(i)], &[h(i)]);
            }
            for i in 1..n {
                b.rel(&[t(i), h(i + 1), t(i)], &[t(i), t(i + 1)]);
                b.rel(&[t(i + 1), h(i), t(i + 1)], &[t(i), t(i + 1)]);
            }
            b.commute(apart(n, n, 2), h, t);
        }
        PresentationName::PlanarUbb => {
            b.idempotent(1..k, t);
            b.commute(distinct_pairs(n), t, t);
        }
        PresentationName::PlanarPartition => {
            b.idempotent(1..=k, e);
            b.commute(distinct_pairs(k), e, e);
            b.idempotent(1..k, t);
            b.commute(distinct_pairs(n), t, t);
            for i in 1..=k {
                for j in [i.wrapping_sub(1), i].into_iter().filter(|&j| (1..=n).contains(&j)) {
                    b.rel(&[e(i), t(j), e(i)], &[e(i)]);
                }
            }
        }
        PresentationName::Ubb1 => {
            b.symmetric_group();
            if k >= 2 {
                b.idempotent(1..2, t);
                b.rel(&[s(1), t(1)], &[t(1)]);
                b.rel(&[t(1), s(1)], &[t(1)]);
            }
            if k >= 3 {
                b.rel(&[s(2), t(1), s(2), t(1)], &[t(1), s(2), t(1), s(2)]);
            }
            if k >= 4 {
                let conj = [s(2), s(1), s(3), s(2)];
                let mut lhs = conj.to_vec();
                lhs.push(t(1));
                lhs.extend_from_within(..);
                let mut rhs = vec![t(1)];
                rhs.extend_from_slice(&conj);
                rhs.extend_from_within(..);
                b.rel(&lhs, &rhs);
            }
            for i in 3..k {
                b.rel(&[s(i), t(1)], &[t(1), s(i)]);
            }
        }
        PresentationName::Ubb2 => {
            b.symmetric_group();
            b.idempotent(1..k, t);
            b.commute(distinct_pairs(n), t, t);
            for i in 1..k {
                b.rel(&[s(i), t(i)], &[t(i)]);
                b.rel(&[t(i), s(i)], &[t(i)]);
            }
            for i in 1..n {
                b.rel(&[s(i + 1), t(i), s(i + 1)], &[s(i), t(i + 1), s(i)]);
            }
            b.commute(apart(n, n, 2), s, t);
        }
        PresentationName::SymInv => {
            b.symmetric_group();
            b.idempotent(1..=k, e);
            b.commute(distinct_pairs(k), e, e);
            for i in 1..k {
                b.rel(&[s(i), e(i)], &[e(i + 1), s(i)]);
                b.rel(&[e(i + 1), s(i)], &[s(i), e(i)]);
            }
            for j in 1..k {
                for i in (1..=k).filter(|&i| i != j && i != j + 1) {
                    b.rel(&[s(j), e(i)], &[e(i), s(j)]);
                }
            }
        }
        PresentationName::PlanarSymInv => {
            let f = Generator::PfForward;
            let bk = Generator::PfBackward;
            for i in 1..k {
                for j in i..k {
                    b.rel(&[f(j), f(i)], &[f(i), f(j + 1)]);
                }
            }
            for i in 1..=k {
                b.rel(&[f(k), f(i)], &[f(i)]);
            }
            for i in 1..k {
                for j in i..k {
                    b.rel(&[bk(i), bk(j)], &[bk(j + 1), bk(i)]);
                }
            }
            for i in 1..=k {
                b.rel(&[bk(i), bk(k)], &[bk(i)]);
            }
            for i in 1..=k {
                for j in 1..=k {
                    match i.cmp(&j) {
                        std::cmp::Ordering::Less => b.rel(&[f(j), bk(i)], &[bk(i), f(j - 1), f(k)]),
                        std::cmp::Ordering::Equal => b.rel(&[f(i), bk(i)], &[f(k)]),
                        std::cmp::Ordering::Greater => b.rel(&[f(j), bk(i)], &[bk(i - 1), f(j), f(k)]),
                    }
                }
            }
            b.rel(&[f(k)], &[bk(k)]);
        }
        PresentationName::PMod2 => pmod2_relations(&mut b),
        PresentationName::PMod2Implied => {
            for i in 1..n {
                b.rel(&[h(i), t(i + 1), h(i)], &[h(i)]);
                b.rel(&[h(i + 1), h(i), t(i + 1)], &[h(i + 1), t(i)]);
                b.rel(&[t(i + 1), h(i), h(i + 1)], &[t(i), h(i + 1)]);
                b.rel(&[t(i + 1), h(i), t(i + 1)], &[t(i), t(i + 1)]);
                b.rel(&[t(i), h(i + 1), h(i)], &[t(i + 1), h(i)]);
                b.rel(&[h(i), h(i + 1), t(i)], &[h(i), t(i + 1)]);
                b.rel(&[h(i + 1), t(i), h(i + 1)], &[h(i + 1)]);
            }
        }
    }
    Ok(RelationSet {
        name: name.to_string(),
        degree: k,
        pairs: b.pairs,
    })
}

fn pmod2_relations(b: &mut Builder) {
    let k = b.k;
    let n = k - 1;
    b.idempotent(1..k, h);
    for (i, j) in neighbours(n) {
        b.rel(&[h(i), h(j), h(i)], &[h(i)]);
    }
    b.commute(far_pairs(n), h, h);
    b.idempotent(1..k, t);
    b.commute(distinct_pairs(n), t, t);
    for i in 1..k {
        b.rel(&[h(i), t(i)], &[h(i)]);
    }
    for i in 1..k {
        b.rel(&[t(i), h(i)], &[h(i)]);
    }
    for i in 1..n {
        b.rel(&[t(i), h(i + 1), t(i)], &[t(i), t(i + 1)]);
    }
    b.commute(far_pairs(n), h, t);
    b.commute(far_pairs(n), t, h);
}

fn mod_relations(b: &mut Builder, m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::UnsupportedRange("the mod-m presentation needs m >= 2".into()));
    }
    let k = b.k;
    let n = k - 1;
    let na = (k + 1).saturating_sub(m);
    let a = move |i: usize| Generator::Apsis { width: m, index: i };
    b.symmetric_group();
    b.idempotent(1..k, t);
    b.commute(distinct_pairs(n), t, t);
    for i in 1..=na {
        b.rel(&[a(i), a(i)], &[a(i)]);
    }
    for (j, i) in (1..=na).flat_map(|i| (i + m..=na).map(move |j| (j, i))) {
        b.rel(&[a(j), a(i)], &[a(i), a(j)]);
    }
    for i in 1..k {
        b.rel(&[t(i), s(i)], &[t(i)]);
        b.rel(&[s(i), t(i)], &[t(i)]);
    }
    for i in 1..n {
        b.rel(&[s(i), s(i + 1), t(i), s(i + 1), s(i)], &[t(i + 1)]);
    }
    b.commute(apart(n, n, 2), t, s);
    for i in 1..=na {
        for j in i..=i + m - 2 {
            b.rel(&[a(i), s(j)], &[a(i)]);
            b.rel(&[s(j), a(i)], &[a(i)]);
        }
        if i + m - 1 <= n {
            b.rel(&[a(i), s(i + m - 1), a(i)], &[a(i)]);
        }
        if i >= 2 {
            b.rel(&[a(i), s(i - 1), a(i)], &[a(i)]);
        }
        if i < na {
            let up: Vec<Generator> = (i..i + m).map(s).collect();
            let mut lhs = up.clone();
            lhs.push(a(i));
            lhs.extend(up.iter().rev());
            b.rel(&lhs, &[a(i + 1)]);
        }
        for j in (1..=n).filter(|&j| j + 1 < i || j >= i + m) {
            b.rel(&[a(i), s(j)], &[s(j), a(i)]);
        }
        for j in i..=(i + m - 1).min(n) {
            if j == i {
                b.rel(&[a(i), t(i)], &[a(i)]);
                b.rel(&[t(i), a(i)], &[a(i)]);
            }
        }
        if i < na {
            let run: Vec<Generator> = (i..i + m).map(t).collect();
            b.rel(&[t(i), a(i + 1), t(i)], &run);
            b.rel(&[t(i + m - 1), a(i), t(i + m - 1)], &run);
        }
        for j in (1..=n).filter(|&j| j + 1 < i || j >= i + m) {
            b.rel(&[a(i), t(j)], &[t(j), a(i)]);
        }
    }
    Ok(())
}

/// Indices of relation pairs whose sides evaluate differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessReport {
    pub checked: usize,
    pub failures: Vec<usize>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_soundness(rs: &RelationSet) -> Result<SoundnessReport> {
    let mut failures = Vec::new();
    for (n, (l, r)) in rs.pairs.iter().enumerate() {
        if l.eval()? != r.eval()? {
            failures.push(n);
        }
    }
    Ok(SoundnessReport {
        checked: rs.pairs.len(),
        failures,
    })
}

/// Outcome of a bounded congruence enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub class_count: usize,
    /// Every class has an edge for every letter.
    pub complete: bool,
    /// Distinct classes evaluate to distinct bipartitions.
    pub injective: bool,
    /// Shortest representative word per class, in discovery order.
    pub representatives: Vec<GenWord>,
}

const NONE: u32 = u32::MAX;

/// Coset table over the free monoid, with definitions limited to a depth.
struct CosetTable {
    letters: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    depth: Vec<u32>,
    depth_cap: u32,
    max_nodes: usize,
}

impl CosetTable {
    fn new(letters: usize, depth_cap: usize, max_nodes: usize) -> Self {
        CosetTable {
            letters,
            table: vec![NONE; letters],
            forward: vec![0],
            depth: vec![0],
            depth_cap: depth_cap as u32,
            max_nodes,
        }
    }

    fn len(&self) -> usize {
        self.forward.len()
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.forward[x] as usize != x {
            let next = self.forward[x] as usize;
            self.forward[x] = self.forward[next];
            x = next;
        }
        x
    }

    fn edge(&mut self, node: usize, x: usize) -> Option<usize> {
        match self.table[node * self.letters + x] {
            NONE => None,
            target => Some(self.find(target as usize)),
        }
    }

    fn set(&mut self, node: usize, x: usize, target: usize) {
        self.table[node * self.letters + x] = target as u32;
    }

    fn define(&mut self, node: usize, x: usize) -> Result<Option<usize>> {
        if self.depth[node] >= self.depth_cap {
            return Ok(None);
        }
        let fresh = self.len();
        if fresh >= self.max_nodes {
            return Err(Error::ExplosionGuard(self.max_nodes));
        }
        self.forward.push(fresh as u32);
        self.depth.push(self.depth[node] + 1);
        self.table.extend(std::iter::repeat_n(NONE, self.letters));
        self.set(node, x, fresh);
        Ok(Some(fresh))
    }

    fn trace(&mut self, mut node: usize, word: &[usize]) -> Result<Option<usize>> {
        for &x in word {
            node = match self.edge(node, x) {
                Some(next) => next,
                None => match self.define(node, x)? {
                    Some(next) => next,
                    None => return Ok(None),
                },
            };
        }
        Ok(Some(node))
    }

    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, drop) = (a.min(b), a.max(b));
            self.forward[drop] = keep as u32;
            self.depth[keep] = self.depth[keep].min(self.depth[drop]);
            for x in 0..self.letters {
                let raw = self.table[drop * self.letters + x];
                if raw == NONE {
                    continue;
                }
                let target = self.find(raw as usize);
                match self.edge(keep, x) {
                    None => self.set(keep, x, target),
                    Some(existing) if existing != target => queue.push((existing, target)),
                    _ => {}
                }
            }
        }
    }

    /// Applies `node·lhs = node·rhs`, deducing the final edge where possible.
    fn push_relation(&mut self, node: usize, lhs: &[usize], rhs: &[usize]) -> Result<()> {
        let (long, short) = if lhs.len() >= rhs.len() { (lhs, rhs) } else { (rhs, lhs) };
        let Some(end_short) = self.trace(node, short)? else {
            return Ok(());
        };
        let Some((&last, head)) = long.split_last() else {
            return Ok(());
        };
        let Some(before) = self.trace(node, head)? else {
            return Ok(());
        };
        let end_short = self.find(end_short);
        match self.edge(before, last) {
            Some(end_long) => self.coincide(end_long, end_short),
            None => self.set(before, last, end_short),
        }
        Ok(())
    }
}

/// Enumerates the classes of the monoid presented by `alphabet` and `rs`.
///
/// Words are explored only up to length `depth_cap`, so the count is exact
/// once the report is complete and stable under a larger cap.
pub fn congruence_size(
    alphabet: &[Generator],
    rs: &RelationSet,
    depth_cap: usize,
    max_nodes: usize,
) -> Result<CongruenceReport> {
    let k = rs.degree;
    let position: HashMap<Generator, usize> = alphabet.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let encode = |w: &GenWord| -> Result<Vec<usize>> {
        w.letters
            .iter()
            .map(|g| position.get(g).copied().ok_or_else(|| Error::IllegalLetter(g.to_string())))
            .collect()
    };
    let rels: Vec<(Vec<usize>, Vec<usize>)> = rs
        .pairs
        .iter()
        .map(|(l, r)| Ok((encode(l)?, encode(r)?)))
        .collect::<Result<_>>()?;
    let mut ct = CosetTable::new(alphabet.len(), depth_cap, max_nodes);
    let mut p = 0;
    while p < ct.len() {
        if ct.find(p) == p {
            for (l, r) in &rels {
                if ct.find(p) != p {
                    break;
                }
                ct.push_relation(p, l, r)?;
            }
            for x in 0..alphabet.len() {
                if ct.find(p) != p {
                    break;
                }
                if ct.edge(p, x).is_none() {
                    ct.define(p, x)?;
                }
            }
        }
        p += 1;
    }
    // Shortest words by breadth-first search from the root.
    let mut words: HashMap<usize, Vec<usize>> = HashMap::from([(0, Vec::new())]);
    let mut order = vec![0usize];
    let mut queue = VecDeque::from([0usize]);
    let mut complete = true;
    while let Some(node) = queue.pop_front() {
        for x in 0..alphabet.len() {
            match ct.edge(node, x) {
                None => complete = false,
                Some(next) if !words.contains_key(&next) => {
                    let mut w = words[&node].clone();
                    w.push(x);
                    words.insert(next, w);
                    order.push(next);
                    queue.push_back(next);
                }
                Some(_) => {}
            }
        }
    }
    let live = (0..ct.len()).filter(|&i| ct.find(i) == i).count();
    let representatives: Vec<GenWord> = order
        .iter()
        .map(|node| GenWord::new(k, words[node].iter().map(|&x| alphabet[x]).collect()))
        .collect();
    let mut values = HashSet::new();
    for w in &representatives {
        values.insert(w.eval()?);
    }
    Ok(CongruenceReport {
        class_count: live,
        complete: complete && live == representatives.len(),
        injective: values.len() == representatives.len(),
        representatives,
    })
}

/// Result of checking a presentation at two caps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationCheck {
    pub class_count: usize,
    pub stabilized: bool,
    pub soundness: SoundnessReport,
}

/// Soundness plus bounded enumeration at `cap` and `cap + 2`.
pub fn presentation_check(name: PresentationName, k: usize, cap: usize, max_nodes: usize) -> Result<PresentationCheck> {
    let rs = relations(name, k)?;
    let soundness = check_soundness(&rs)?;
    let alphabet = name.alphabet(k);
    let first = congruence_size(&alphabet, &rs, cap, max_nodes)?;
    let second = congruence_size(&alphabet, &rs, cap + 2, max_nodes)?;
    Ok(PresentationCheck {
        class_count: first.class_count,
        stabilized: first.complete && first.injective && first.class_count == second.class_count && second.complete,
        soundness,
    })
}

/// `r_{j,i}`: diapses from index `j` down to `i`.
pub fn jones_run(k: usize, j: usize, i: usize) -> GenWord {
    GenWord::new(k, (i..=j).rev().map(h).collect())
}

/// Products of runs with strictly increasing start and end indices.
pub fn jones_normal_forms(k: usize) -> Vec<GenWord> {
    fn extend(k: usize, last: Option<(usize, usize)>, prefix: &GenWord, out: &mut Vec<GenWord>) {
        let (min_j, min_i) = last.map_or((1, 1), |(j, i)| (j + 1, i + 1));
        for j in min_j..k {
            for i in min_i..=j {
                let w = prefix.concat(&jones_run(k, j, i));
                out.push(w.clone());
                extend(k, Some((j, i)), &w, out);
            }
        }
    }
    let mut out = vec![GenWord::empty(k)];
    extend(k, None, &GenWord::empty(k), &mut out);
    out
}

/// Which letter leads within an index when ordering words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LetterOrder {
    DiapsisFirst,
    TransapsisFirst,
}

impl FromStr for LetterOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diapsis-first" => Ok(LetterOrder::DiapsisFirst),
            "transapsis-first" => Ok(LetterOrder::TransapsisFirst),
            _ => Err(Error::parse(0, format!("unknown order {s:?}"))),
        }
    }
}

impl fmt::Display for LetterOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LetterOrder::DiapsisFirst => "diapsis-first",
            LetterOrder::TransapsisFirst => "transapsis-first",
        })
    }
}

/// Diapsis and transapsis generators sorted by index, then by `order`.
pub fn ordered_pmod2_letters(k: usize, order: LetterOrder) -> Vec<Generator> {
    (1..k)
        .flat_map(|i| match order {
            LetterOrder::DiapsisFirst => [h(i), t(i)],
            LetterOrder::TransapsisFirst => [t(i), h(i)],
        })
        .collect()
}

/// Shortlex-least geodesic word for every element of the planar mod-2 monoid.
pub fn geodesic_lex_words(k: usize, order: LetterOrder, max_elements: usize) -> Result<Vec<(Bipartition, GenWord)>> {
    let letters = ordered_pmod2_letters(k, order);
    let gens = letters
        .iter()
        .map(|g| g.build(k))
        .collect::<Result<Vec<_>>>()?;
    let graph = cayley(k, &gens, max_elements)?;
    Ok(shortlex_words(&graph, &letters))
}

/// Breadth-first search in letter order yields shortlex-least words.
pub fn shortlex_words(graph: &CayleyGraph, letters: &[Generator]) -> Vec<(Bipartition, GenWord)> {
    let k = graph.elements.degree();
    let root = graph.identity_index();
    let mut word: Vec<Option<Vec<usize>>> = vec![None; graph.elements.len()];
    word[root] = Some(Vec::new());
    let mut level = vec![root];
    let mut visit = vec![root];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &x in &level {
            for (g, &y) in graph.right[x].iter().enumerate() {
                if word[y].is_none() {
                    let mut w = word[x].clone().unwrap_or_default();
                    w.push(g);
                    word[y] = Some(w);
                    next.push(y);
                }
            }
        }
        visit.extend(next.iter().copied());
        level = next;
    }
    visit
        .into_iter()
        .map(|i| {
            let letters = word[i].as_ref().map_or_else(Vec::new, |w| w.iter().map(|&g| letters[g]).collect());
            (graph.elements.get(i).clone(), GenWord::new(k, letters))
        })
        .collect()
}

/// Maximal runs of consecutive letters whose index drops by one each step.
fn runs(w: &GenWord) -> Vec<&[Generator]> {
    let mut out = Vec::new();
    let mut start = 0;
    for n in 1..=w.letters.len() {
        if n == w.letters.len() || w.letters[n].index() + 1 != w.letters[n - 1].index() {
            out.push(&w.letters[start..n]);
            start = n;
        }
    }
    out
}

fn is_diapsis_or_transapsis(g: Generator) -> bool {
    matches!(g, Generator::Transapsis(_) | Generator::Apsis { width: 2, .. })
}

/// Start and end index of every run, when the indices increase strictly.
pub fn run_decomposition(w: &GenWord) -> Option<Vec<(usize, usize)>> {
    if w.is_empty() || !w.letters.iter().all(|&g| is_diapsis_or_transapsis(g)) {
        return None;
    }
    let bounds: Vec<(usize, usize)> = runs(w)
        .iter()
        .map(|r| (r[0].index(), r[r.len() - 1].index()))
        .collect();
    let increasing = bounds.windows(2).all(|p| p[0].0 < p[1].0 && p[0].1 < p[1].1);
    increasing.then_some(bounds)
}

/// The final run `(j, i)` of a word in run form.
pub fn end_run(w: &GenWord) -> Option<(usize, usize)> {
    run_decomposition(w).and_then(|b| b.last().copied())
}

/// Run form with no two adjacent transapses inside a run.
pub fn in_run_form(w: &GenWord) -> bool {
    run_decomposition(w).is_some()
        && runs(w).iter().all(|r| {
            r.windows(2)
                .all(|p| !matches!((p[0], p[1]), (Generator::Transapsis(_), Generator::Transapsis(_))))
        })
}

/// A word in `Run(j, i)`: one diapsis or transapsis per index, descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RunWord {
    pub top: usize,
    pub bottom: usize,
    pub letters: Vec<Generator>,
}

impl RunWord {
    pub fn to_word(&self, k: usize) -> GenWord {
        GenWord::new(k, self.letters.clone())
    }
}

/// Every member of `Run(j, i)`.
pub fn run_set(j: usize, i: usize) -> Vec<RunWord> {
    if i == 0 || i > j {
        return Vec::new();
    }
    let mut words: Vec<Vec<Generator>> = vec![vec![h(j)], vec![t(j)]];
    for l in (i..j).rev() {
        words = words
            .into_iter()
            .flat_map(|w| {
                let mut out = Vec::with_capacity(2);
                let mut with_h = w.clone();
                with_h.push(h(l));
                out.push(with_h);
                if !matches!(w.last(), Some(Generator::Transapsis(_))) {
                    let mut with_t = w;
                    with_t.push(t(l));
                    out.push(with_t);
                }
                out
            })
            .collect();
    }
    words
        .into_iter()
        .map(|letters| RunWord {
            top: j,
            bottom: i,
            letters,
        })
        .collect()
}

/// Count of words per terminal run `(j, i)`; the empty word is skipped.
pub fn terminal_run_counts<'a>(words: impl IntoIterator<Item = &'a GenWord>) -> BTreeMap<(usize, usize), usize> {
    let mut counts = BTreeMap::new();
    for w in words {
        if let Some(end) = end_run(w) {
            *counts.entry(end).or_insert(0) += 1;
        }
    }
    counts
}

/// A conjectural closed form compared with observed counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureRow {
    pub label: &'static str,
    pub top: usize,
    pub observed: usize,
    pub predicted: u128,
}

impl ConjectureRow {
    pub fn agrees(&self) -> bool {
        self.observed as u128 == self.predicted
    }
}

/// Rows for words ending in `Run(j, 1)` and `Run(j, 2)`, for `j < k`.
pub fn conjecture_rows(counts: &BTreeMap<(usize, usize), usize>, k: usize) -> Vec<ConjectureRow> {
    let fib = |n: usize| -> u128 {
        let (mut a, mut b) = (0u128, 1u128);
        for _ in 0..n {
            let c = a + b;
            a = b;
            b = c;
        }
        a
    };
    let mut rows = Vec::new();
    for j in 1..k {
        rows.push(ConjectureRow {
            label: "run(j,1) fibonacci",
            top: j,
            observed: counts.get(&(j, 1)).copied().unwrap_or(0),
            predicted: fib(j + 2),
        });
        if j >= 2 {
            let predicted = (2 * j as u128 - 1) * fib(j + 1) + 1 - (1u128 << (j - 2));
            rows.push(ConjectureRow {
                label: "run(j,2) closed form",
                top: j,
                observed: counts.get(&(j, 2)).copied().unwrap_or(0),
                predicted,
            });
        }
    }
    rows
}

/// Elements of the family in generator order, with words, for presentations.
pub fn family_generators(kind: FamilyKind, k: usize) -> Result<Vec<Bipartition>> {
    Ok(Family::new(kind, k)?.generating_set())
}
