//! Named diagram monoids: membership by characterization and generating sets.

use std::fmt;
use std::str::FromStr;

use crate::bipartition::{Bipartition, BlockType};
use crate::error::{Error, Result};
use crate::generators::{apsis, pf_backward, pf_forward, transapsis, transposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Partition,
    PlanarPartition,
    Symmetric,
    Jones,
    Brauer,
    SymInv,
    PlanarSymInv,
    Ubb,
    PlanarUbb,
    Mod(usize),
    PMod(usize),
    Apsis(usize),
    CrossedApsis(usize),
}

impl FamilyKind {
    pub fn modulus(self) -> Option<usize> {
        match self {
            FamilyKind::Mod(m)
            | FamilyKind::PMod(m)
            | FamilyKind::Apsis(m)
            | FamilyKind::CrossedApsis(m) => Some(m),
            _ => None,
        }
    }

    /// Whether every element is non-crossing.
    pub fn is_planar(self) -> bool {
        matches!(
            self,
            FamilyKind::PlanarPartition
                | FamilyKind::Jones
                | FamilyKind::PlanarSymInv
                | FamilyKind::PlanarUbb
                | FamilyKind::PMod(_)
                | FamilyKind::Apsis(_)
        )
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Partition => f.write_str("partition"),
            FamilyKind::PlanarPartition => f.write_str("planar"),
            FamilyKind::Symmetric => f.write_str("sym"),
            FamilyKind::Jones => f.write_str("jones"),
            FamilyKind::Brauer => f.write_str("brauer"),
            FamilyKind::SymInv => f.write_str("syminv"),
            FamilyKind::PlanarSymInv => f.write_str("planarsyminv"),
            FamilyKind::Ubb => f.write_str("ubb"),
            FamilyKind::PlanarUbb => f.write_str("pubb"),
            FamilyKind::Mod(m) => write!(f, "mod:{m}"),
            FamilyKind::PMod(m) => write!(f, "pmod:{m}"),
            FamilyKind::Apsis(m) => write!(f, "apsis:{m}"),
            FamilyKind::CrossedApsis(m) => write!(f, "xapsis:{m}"),
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnsupportedFamily(s.to_string());
        let (name, modulus) = match s.split_once(':') {
            Some((name, m)) => {
                let m: usize = m.parse().map_err(|_| unknown())?;
                if m == 0 {
                    return Err(Error::Range("modulus must be positive".into()));
                }
                (name, Some(m))
            }
            None => (s, None),
        };
        let kind = match (name, modulus) {
            ("partition", None) => FamilyKind::Partition,
            ("planar", None) => FamilyKind::PlanarPartition,
            ("sym", None) => FamilyKind::Symmetric,
            ("jones", None) => FamilyKind::Jones,
            ("brauer", None) => FamilyKind::Brauer,
            ("syminv", None) => FamilyKind::SymInv,
            ("planarsyminv", None) => FamilyKind::PlanarSymInv,
            ("ubb", None) => FamilyKind::Ubb,
            ("pubb", None) => FamilyKind::PlanarUbb,
            ("mod", Some(m)) => FamilyKind::Mod(m),
            ("pmod", Some(m)) => FamilyKind::PMod(m),
            ("apsis", Some(m)) => FamilyKind::Apsis(m),
            ("xapsis", Some(m)) => FamilyKind::CrossedApsis(m),
            _ => return Err(unknown()),
        };
        Ok(kind)
    }
}

/// A family at a fixed degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    pub kind: FamilyKind,
    pub degree: usize,
}

impl Family {
    pub fn new(kind: FamilyKind, degree: usize) -> Result<Self> {
        if kind.modulus() == Some(0) {
            return Err(Error::Range("modulus must be positive".into()));
        }
        Ok(Family { kind, degree })
    }

    /// Membership by the set characterization of the family.
    pub fn member(&self, a: &Bipartition) -> Result<bool> {
        if a.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, a.degree()));
        }
        Ok(is_member(self.kind, a))
    }

    /// Generators in index order; the modular planar and apsis families also list the identity.
    /// The planar symmetric inverse family uses `f_i`, `b_i` for `i` up to `k`.
    pub fn generating_set(&self) -> Vec<Bipartition> {
        let k = self.degree;
        let s = || (1..k).map(move |i| transposition(k, i).expect("index in range"));
        let t = || (1..k).map(move |i| transapsis(k, i).expect("index in range"));
        let a = |m: usize| {
            (1..=(k + 1).saturating_sub(m)).map(move |i| apsis(k, m, i).expect("index in range"))
        };
        let id = || std::iter::once(Bipartition::identity(k));
        match self.kind {
            FamilyKind::Partition => s().chain(t()).chain(a(1)).collect(),
            FamilyKind::PlanarPartition => a(1).chain(t()).collect(),
            FamilyKind::Symmetric => s().collect(),
            FamilyKind::Jones => a(2).collect(),
            FamilyKind::Brauer => s().chain(a(2)).collect(),
            FamilyKind::SymInv => s().chain(a(1)).collect(),
            FamilyKind::PlanarSymInv => (1..=k)
                .map(|i| pf_forward(k, i).expect("index in range"))
                .chain((1..=k).map(|i| pf_backward(k, i).expect("index in range")))
                .collect(),
            FamilyKind::Ubb => s()
                .chain((k >= 2).then(|| transapsis(k, 1).expect("index in range")))
                .collect(),
            FamilyKind::PlanarUbb => t().collect(),
            FamilyKind::Mod(m) => s().chain(t()).chain(a(m)).collect(),
            FamilyKind::PMod(m) => t().chain(a(m)).chain(id()).collect(),
            FamilyKind::Apsis(m) => a(m).chain(id()).collect(),
            FamilyKind::CrossedApsis(m) => a(m).chain(s()).collect(),
        }
    }
}

fn all_blocks(a: &Bipartition, pred: impl Fn(BlockType) -> bool) -> bool {
    a.block_types().into_iter().all(pred)
}

fn is_partial_identity(a: &Bipartition) -> bool {
    a.blocks().iter().all(|b| match b.as_slice() {
        [_] => true,
        [u, l] => u.index == l.index && u.side != l.side,
        _ => false,
    })
}

fn has_block(a: &Bipartition, want: BlockType) -> bool {
    a.block_types().contains(&want)
}

fn is_member(kind: FamilyKind, a: &Bipartition) -> bool {
    let pairs = || all_blocks(a, |t| t.upper + t.lower == 2);
    let partial_bijection = || all_blocks(a, |t| t.upper + t.lower == 1 || (t.upper == 1 && t.lower == 1));
    let uniform = || all_blocks(a, |t| t.upper == t.lower);
    match kind {
        FamilyKind::Partition => true,
        FamilyKind::PlanarPartition => a.is_planar(),
        FamilyKind::Symmetric => a.is_permutation(),
        FamilyKind::Jones => pairs() && a.is_planar(),
        FamilyKind::Brauer => pairs(),
        FamilyKind::SymInv => partial_bijection(),
        FamilyKind::PlanarSymInv => partial_bijection() && a.is_planar(),
        FamilyKind::Ubb => uniform(),
        FamilyKind::PlanarUbb => uniform() && a.is_planar(),
        FamilyKind::Mod(m) => a.is_modular(m),
        FamilyKind::PMod(m) => a.is_planar() && a.is_modular(m),
        FamilyKind::Apsis(1) => is_partial_identity(a),
        FamilyKind::Apsis(2) => is_member(FamilyKind::Jones, a),
        FamilyKind::Apsis(m) => {
            is_member(FamilyKind::PMod(m), a)
                && (a.is_identity() || (a.has_upper_apsis(m) && a.has_lower_apsis(m)))
        }
        FamilyKind::CrossedApsis(1) => is_member(FamilyKind::SymInv, a),
        FamilyKind::CrossedApsis(2) => is_member(FamilyKind::Brauer, a),
        FamilyKind::CrossedApsis(m) => {
            a.is_modular(m)
                && (a.is_permutation()
                    || (has_block(a, BlockType { upper: m, lower: 0 })
                        && has_block(a, BlockType { upper: 0, lower: m })))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str, k: usize) -> Family {
        Family::new(s.parse().unwrap(), k).unwrap()
    }

    #[test]
    fn parse_names() {
        for name in ["partition", "planar", "sym", "jones", "brauer", "syminv", "planarsyminv", "ubb", "pubb", "mod:3", "pmod:2", "apsis:3", "xapsis:4"] {
            assert_eq!(name.parse::<FamilyKind>().unwrap().to_string(), name);
        }
        assert!("pmod".parse::<FamilyKind>().is_err());
        assert!("pmod:0".parse::<FamilyKind>().is_err());
        assert!("motzkin".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn generating_set_sizes() {
        assert_eq!(fam("pmod:2", 4).generating_set().len(), 7);
        assert_eq!(fam("jones", 4).generating_set().len(), 3);
        let a35 = fam("apsis:3", 5).generating_set();
        assert_eq!(a35.len(), 4);
        assert!(a35.contains(&Bipartition::identity(5)));
    }

    #[test]
    fn apsis_counterexample() {
        let x: Bipartition = "[[1,8,9],[2,3,4,5,6,7],[1',2',3'],[4',5',6'],[7',8',9']]".parse().unwrap();
        assert!(fam("pmod:3", 9).member(&x).unwrap());
        assert!(!fam("apsis:3", 9).member(&x).unwrap());
    }

    #[test]
    fn identity_in_every_family() {
        for name in ["partition", "planar", "sym", "jones", "brauer", "syminv", "planarsyminv", "ubb", "pubb", "mod:3", "pmod:2", "apsis:3", "xapsis:3", "apsis:1", "xapsis:2"] {
            assert!(fam(name, 5).member(&Bipartition::identity(5)).unwrap(), "{name}");
        }
    }

    #[test]
    fn degree_mismatch() {
        assert!(matches!(
            fam("jones", 3).member(&Bipartition::identity(4)),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }
}
