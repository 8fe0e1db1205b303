//! Generator families and the building-block elements assembled from them.

use std::fmt;
use std::str::FromStr;

use crate::bipartition::{Bipartition, Vertex};
use crate::error::{Error, Result};

/// A named generator, independent of degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `s_i`, swapping `i` and `i+1`.
    Transposition(usize),
    /// `t_i`, the block `{i, i+1, i', (i+1)'}`.
    Transapsis(usize),
    /// `a^m_i`, upper and lower `m`-apses starting at `i`.
    Apsis { width: usize, index: usize },
    /// `f_i`, shifting `i..k-1` one step right.
    PfForward(usize),
    /// `b_i`, shifting `i+1..k` one step left.
    PfBackward(usize),
}

impl Generator {
    pub fn diapsis(i: usize) -> Self {
        Generator::Apsis { width: 2, index: i }
    }

    pub fn monapsis(i: usize) -> Self {
        Generator::Apsis { width: 1, index: i }
    }

    pub fn index(self) -> usize {
        match self {
            Generator::Transposition(i)
            | Generator::Transapsis(i)
            | Generator::PfForward(i)
            | Generator::PfBackward(i)
            | Generator::Apsis { index: i, .. } => i,
        }
    }

    /// The bipartition this generator denotes at degree `k`.
    pub fn build(self, k: usize) -> Result<Bipartition> {
        match self {
            Generator::Transposition(i) => transposition(k, i),
            Generator::Transapsis(i) => transapsis(k, i),
            Generator::Apsis { width, index } => apsis(k, width, index),
            Generator::PfForward(i) => pf_forward(k, i),
            Generator::PfBackward(i) => pf_backward(k, i),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Transposition(i) => write!(f, "s{i}"),
            Generator::Transapsis(i) => write!(f, "t{i}"),
            Generator::Apsis { width: 1, index } => write!(f, "e{index}"),
            Generator::Apsis { width: 2, index } => write!(f, "h{index}"),
            Generator::Apsis { width, index } => write!(f, "a{width}_{index}"),
            Generator::PfForward(i) => write!(f, "f{i}"),
            Generator::PfBackward(i) => write!(f, "b{i}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::IllegalLetter(s.to_string());
        let num = |t: &str| t.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(bad);
        let (head, rest) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        match head {
            "s" => Ok(Generator::Transposition(num(rest)?)),
            "t" => Ok(Generator::Transapsis(num(rest)?)),
            "h" => Ok(Generator::diapsis(num(rest)?)),
            "e" => Ok(Generator::monapsis(num(rest)?)),
            "f" => Ok(Generator::PfForward(num(rest)?)),
            "b" => Ok(Generator::PfBackward(num(rest)?)),
            "a" => {
                let (w, i) = rest.split_once('_').ok_or_else(bad)?;
                Ok(Generator::Apsis {
                    width: num(w)?,
                    index: num(i)?,
                })
            }
            _ => Err(bad()),
        }
    }
}

fn up(i: usize) -> Vertex {
    Vertex::upper(i)
}

fn low(i: usize) -> Vertex {
    Vertex::lower(i)
}

fn check_index(i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        Err(Error::IndexOutOfRange { index: i, max })
    } else {
        Ok(())
    }
}

fn vertical(range: impl Iterator<Item = usize>) -> impl Iterator<Item = Vec<Vertex>> {
    range.map(|j| vec![up(j), low(j)])
}

pub fn transposition(k: usize, i: usize) -> Result<Bipartition> {
    check_index(i, k.saturating_sub(1))?;
    let mut blocks: Vec<Vec<Vertex>> = vertical((1..i).chain(i + 2..=k)).collect();
    blocks.push(vec![up(i), low(i + 1)]);
    blocks.push(vec![up(i + 1), low(i)]);
    Bipartition::new(k, &blocks)
}

pub fn transapsis(k: usize, i: usize) -> Result<Bipartition> {
    check_index(i, k.saturating_sub(1))?;
    let mut blocks: Vec<Vec<Vertex>> = vertical((1..i).chain(i + 2..=k)).collect();
    blocks.push(vec![up(i), up(i + 1), low(i), low(i + 1)]);
    Bipartition::new(k, &blocks)
}

/// `a^m_i`; `m = 1` gives monapses and `m = 2` the diapsis `h_i`.
pub fn apsis(k: usize, m: usize, i: usize) -> Result<Bipartition> {
    if m == 0 || m > k {
        return Err(Error::Range(format!("apsis width {m} at degree {k}")));
    }
    check_index(i, k + 1 - m)?;
    let mut blocks: Vec<Vec<Vertex>> = vertical((1..i).chain(i + m..=k)).collect();
    blocks.push((i..i + m).map(up).collect());
    blocks.push((i..i + m).map(low).collect());
    Bipartition::new(k, &blocks)
}

/// `f_i`; index `k` is accepted and gives the monapsis generator `a^1_k`.
pub fn pf_forward(k: usize, i: usize) -> Result<Bipartition> {
    check_index(i, k)?;
    let mut blocks: Vec<Vec<Vertex>> = vertical(1..i).collect();
    blocks.push(vec![up(k)]);
    blocks.push(vec![low(i)]);
    blocks.extend((i..k).map(|j| vec![up(j), low(j + 1)]));
    Bipartition::new(k, &blocks)
}

/// `b_i`, the mirror image of `f_i`.
pub fn pf_backward(k: usize, i: usize) -> Result<Bipartition> {
    check_index(i, k)?;
    let mut blocks: Vec<Vec<Vertex>> = vertical(1..i).collect();
    blocks.push(vec![up(i)]);
    blocks.push(vec![low(k)]);
    blocks.extend((i..k).map(|j| vec![up(j + 1), low(j)]));
    Bipartition::new(k, &blocks)
}

/// Upper `m`-apses at `uppers`, lower ones at `lowers`, and the remaining
/// vertices joined by order-preserving lines.
pub fn apmorph(k: usize, m: usize, uppers: &[usize], lowers: &[usize]) -> Result<Bipartition> {
    if m == 0 || m > k {
        return Err(Error::Range(format!("apsis width {m} at degree {k}")));
    }
    if uppers.len() != lowers.len() {
        return Err(Error::Overlap(format!(
            "{} upper apses but {} lower apses",
            uppers.len(),
            lowers.len()
        )));
    }
    for starts in [uppers, lowers] {
        for &s in starts {
            check_index(s, k + 1 - m)?;
        }
        if starts.windows(2).any(|w| w[0] + m > w[1]) {
            return Err(Error::Overlap(format!("{starts:?} with width {m}")));
        }
    }
    let covered = |starts: &[usize], j: usize| starts.iter().any(|&s| (s..s + m).contains(&j));
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    blocks.extend(uppers.iter().map(|&s| (s..s + m).map(up).collect()));
    blocks.extend(lowers.iter().map(|&s| (s..s + m).map(low).collect()));
    let free_up = (1..=k).filter(|&j| !covered(uppers, j));
    let free_low = (1..=k).filter(|&j| !covered(lowers, j));
    blocks.extend(free_up.zip(free_low).map(|(u, l)| vec![up(u), low(l)]));
    Bipartition::new(k, &blocks)
}

/// `r_{i,j}`: upper `m`-apsis at `i`, lower at `j`, lines elsewhere.
pub fn run(k: usize, m: usize, i: usize, j: usize) -> Result<Bipartition> {
    apmorph(k, m, &[i], &[j])
}

/// The product `a^m_i a^m_{i±1} … a^m_j` of consecutive apsis generators.
pub fn run_product(k: usize, m: usize, i: usize, j: usize) -> Result<Bipartition> {
    let indices: Vec<usize> = if i <= j {
        (i..=j).collect()
    } else {
        (j..=i).rev().collect()
    };
    let mut acc = Bipartition::identity(k);
    for idx in indices {
        acc = &acc * &apsis(k, m, idx)?;
    }
    Ok(acc)
}

fn check_pair(m: usize, mu: usize, gamma: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Range("modulus must be positive".into()));
    }
    if mu + gamma == 0 {
        return Err(Error::Range("the block must be non-empty".into()));
    }
    if mu % m != gamma % m {
        return Err(Error::CongruenceViolation(format!("{mu} and {gamma} differ mod {m}")));
    }
    Ok(())
}

fn apses(start: usize, count: usize, m: usize, side: fn(usize) -> Vertex) -> impl Iterator<Item = Vec<Vertex>> {
    (0..count).map(move |j| (start + m * j..start + m * (j + 1)).map(side).collect())
}

/// The block `{1..μ, 1'..γ'}` followed by `m`-apses filling both rows.
pub fn omega(k: usize, m: usize, mu: usize, gamma: usize) -> Result<Bipartition> {
    check_pair(m, mu, gamma)?;
    if mu > k || gamma > k {
        return Err(Error::Range(format!("({mu},{gamma}) exceeds degree {k}")));
    }
    if mu % m != k % m {
        return Err(Error::CongruenceViolation(format!("{mu} and {k} differ mod {m}")));
    }
    let mut blocks = vec![(1..=mu).map(up).chain((1..=gamma).map(low)).collect::<Vec<_>>()];
    blocks.extend(apses(mu + 1, (k - mu) / m, m, up));
    blocks.extend(apses(gamma + 1, (k - gamma) / m, m, low));
    Bipartition::new(k, &blocks)
}

/// As [`omega`] on the first `max(μ,γ)` points, with vertical lines after.
pub fn omega_bar(k: usize, m: usize, mu: usize, gamma: usize) -> Result<Bipartition> {
    check_pair(m, mu, gamma)?;
    let top = mu.max(gamma);
    if top > k {
        return Err(Error::Range(format!("({mu},{gamma}) exceeds degree {k}")));
    }
    let mut blocks = vec![(1..=mu).map(up).chain((1..=gamma).map(low)).collect::<Vec<_>>()];
    blocks.extend(apses(mu + 1, (top - mu) / m, m, up));
    blocks.extend(apses(gamma + 1, (top - gamma) / m, m, low));
    blocks.extend(vertical(top + 1..=k));
    Bipartition::new(k, &blocks)
}

fn check_chain(k: usize, m: usize, pairs: &[(usize, usize)]) -> Result<(usize, usize)> {
    if m == 0 {
        return Err(Error::Range("modulus must be positive".into()));
    }
    for &(mu, gamma) in pairs {
        if mu == 0 || gamma == 0 {
            return Err(Error::Range(format!("transversal ({mu},{gamma}) must meet both rows")));
        }
        check_pair(m, mu, gamma)?;
    }
    let total_up: usize = pairs.iter().map(|p| p.0).sum();
    let total_low: usize = pairs.iter().map(|p| p.1).sum();
    if total_up > k || total_low > k {
        return Err(Error::Range(format!("transversals exceed degree {k}")));
    }
    if total_up % m != k % m {
        return Err(Error::CongruenceViolation(format!("{total_up} and {k} differ mod {m}")));
    }
    Ok((total_up, total_low))
}

/// Transversal `j ≥ from` of a chain, placed flush right.
fn right_transversals(k: usize, pairs: &[(usize, usize)], from: usize) -> Vec<Vec<Vertex>> {
    (from..pairs.len())
        .map(|j| {
            let up_after: usize = pairs[j + 1..].iter().map(|p| p.0).sum();
            let low_after: usize = pairs[j + 1..].iter().map(|p| p.1).sum();
            let (mu, gamma) = pairs[j];
            (k - up_after - mu + 1..=k - up_after)
                .map(up)
                .chain((k - low_after - gamma + 1..=k - low_after).map(low))
                .collect()
        })
        .collect()
}

/// First transversal at the left, apses after it, remaining transversals flush right.
pub fn omega_chain(k: usize, m: usize, pairs: &[(usize, usize)]) -> Result<Bipartition> {
    let (total_up, total_low) = check_chain(k, m, pairs)?;
    let (mu1, gamma1) = pairs.first().copied().unwrap_or((0, 0));
    let mut blocks = Vec::new();
    if mu1 + gamma1 > 0 {
        blocks.push((1..=mu1).map(up).chain((1..=gamma1).map(low)).collect());
    }
    blocks.extend(apses(mu1 + 1, (k - total_up) / m, m, up));
    blocks.extend(apses(gamma1 + 1, (k - total_low) / m, m, low));
    blocks.extend(right_transversals(k, pairs, 1));
    Bipartition::new(k, &blocks)
}

/// Apses at the left of both rows, every transversal flush right.
pub fn upsilon_chain(k: usize, m: usize, pairs: &[(usize, usize)]) -> Result<Bipartition> {
    let (total_up, total_low) = check_chain(k, m, pairs)?;
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    blocks.extend(apses(1, (k - total_up) / m, m, up));
    blocks.extend(apses(1, (k - total_low) / m, m, low));
    blocks.extend(right_transversals(k, pairs, 0));
    Bipartition::new(k, &blocks)
}
