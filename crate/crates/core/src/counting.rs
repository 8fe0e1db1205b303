//! Exact cardinalities and class counts over arbitrary-precision integers.
//!
//! Recurrences are memoized in thread-local tables keyed by their full
//! argument list, so results never depend on the calling thread.
//!
//! # Panics
//!
//! The raw recurrences (`pt`, `pn_vec`, …) panic when the modulus `m` is zero.
//! The cardinality functions report that case as [`Error::Range`].

use std::cell::RefCell;
use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigUint;
use num_integer::binomial as big_binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type BigNat = BigUint;

type VecKey = (usize, usize, Vec<usize>);
type Table3 = HashMap<(usize, usize, usize), BigNat>;

#[derive(Default)]
struct Memo {
    pt: Table3,
    xt: Table3,
    pn: HashMap<VecKey, BigNat>,
    pnb: HashMap<VecKey, BigNat>,
    xn: HashMap<VecKey, BigNat>,
    bell: Vec<BigNat>,
    triangle: HashMap<(usize, usize), BigNat>,
}

thread_local! {
    static MEMO: RefCell<Memo> = RefCell::new(Memo::default());
}

fn memoized<K, F>(table: fn(&mut Memo) -> &mut HashMap<K, BigNat>, key: K, compute: F) -> BigNat
where
    K: Hash + Eq + Clone,
    F: FnOnce() -> BigNat,
{
    if let Some(hit) = MEMO.with(|m| table(&mut m.borrow_mut()).get(&key).cloned()) {
        return hit;
    }
    let value = compute();
    MEMO.with(|m| table(&mut m.borrow_mut()).insert(key, value.clone()));
    value
}

fn check_modulus(m: usize) {
    assert!(m >= 1, "modulus must be positive");
}

fn binomial(n: usize, r: usize) -> BigNat {
    if r > n {
        BigNat::zero()
    } else {
        big_binomial(BigNat::from(n), BigNat::from(r))
    }
}

pub fn binom(n: usize, r: usize) -> BigNat {
    binomial(n, r)
}

pub fn factorial(n: usize) -> BigNat {
    (1..=n).fold(BigNat::one(), |acc, i| acc * i)
}

fn pow2(e: usize) -> BigNat {
    BigNat::one() << e
}

fn congruent(a: usize, b: usize, m: usize) -> bool {
    a % m == b % m
}

fn trimmed(t: &[usize]) -> Vec<usize> {
    let len = t.iter().rposition(|&x| x > 0).map_or(0, |p| p + 1);
    t[..len].to_vec()
}

fn weight(m: usize, t: &[usize]) -> usize {
    t.iter().enumerate().map(|(i, &ti)| (i + 1) * m * ti).sum()
}

fn decrement(t: &[usize], i: usize) -> Vec<usize> {
    let mut out = t.to_vec();
    out[i] -= 1;
    trimmed(&out)
}

/// Planar ways to join `k1` upper and `k2` lower points by congruent transversals.
pub fn pt(m: usize, k1: usize, k2: usize) -> BigNat {
    check_modulus(m);
    transversal_count(m, k1, k2, true)
}

/// Non-planar analogue of [`pt`].
pub fn xt(m: usize, k1: usize, k2: usize) -> BigNat {
    check_modulus(m);
    transversal_count(m, k1, k2, false)
}

fn transversal_count(m: usize, k1: usize, k2: usize, planar: bool) -> BigNat {
    if k1 == 0 && k2 == 0 {
        return BigNat::one();
    }
    if k1 == 0 || k2 == 0 || !congruent(k1, k2, m) {
        return BigNat::zero();
    }
    let table: fn(&mut Memo) -> &mut Table3 =
        if planar { |memo| &mut memo.pt } else { |memo| &mut memo.xt };
    memoized(table, (m, k1, k2), || {
        let mut total = BigNat::zero();
        for a in 1..=k1 {
            for b in (1..=k2).filter(|&b| congruent(a, b, m)) {
                let rest = transversal_count(m, k1 - a, k2 - b, planar);
                if rest.is_zero() {
                    continue;
                }
                total += if planar {
                    rest
                } else {
                    binomial(k1 - 1, a - 1) * binomial(k2, b) * rest
                };
            }
        }
        total
    })
}

/// Multiplicity vectors `t` with `Σ (i+1)·t[i] = units`, in lexicographic order.
pub fn compositions(units: usize) -> Vec<Vec<usize>> {
    fn fill(part: usize, remaining: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if part == 0 {
            if remaining == 0 {
                out.push(acc.clone());
            }
            return;
        }
        for count in 0..=remaining / part {
            acc[part - 1] = count;
            fill(part - 1, remaining - count * part, acc, out);
        }
        acc[part - 1] = 0;
    }
    let mut out = Vec::new();
    fill(units, units, &mut vec![0; units], &mut out);
    out.sort();
    out
}

/// Planar upper non-transversal patterns with `t[i]` blocks of size `(i+1)·m`.
pub fn pn_vec(m: usize, k: usize, t: &[usize]) -> BigNat {
    check_modulus(m);
    pn_inner(m, k, trimmed(t))
}

fn pn_inner(m: usize, k: usize, t: Vec<usize>) -> BigNat {
    if t.is_empty() {
        return BigNat::one();
    }
    if weight(m, &t) > k {
        return BigNat::zero();
    }
    memoized(|memo| &mut memo.pn, (m, k, t.clone()), || {
        let mut total = pn_inner(m, k - 1, t.clone());
        for i in (0..t.len()).filter(|&i| t[i] > 0) {
            total += pn_inner(m, k - 1, decrement(&t, i));
        }
        total
    })
}

/// Non-planar analogue of [`pn_vec`].
pub fn xn_vec(m: usize, k: usize, t: &[usize]) -> BigNat {
    check_modulus(m);
    xn_inner(m, k, trimmed(t))
}

fn xn_inner(m: usize, k: usize, t: Vec<usize>) -> BigNat {
    if t.is_empty() {
        return BigNat::one();
    }
    if weight(m, &t) > k {
        return BigNat::zero();
    }
    memoized(|memo| &mut memo.xn, (m, k, t.clone()), || {
        let mut total = xn_inner(m, k - 1, t.clone());
        for i in (0..t.len()).filter(|&i| t[i] > 0) {
            let size = (i + 1) * m;
            total += binomial(k - 1, size - 1) * xn_inner(m, k - size, decrement(&t, i));
        }
        total
    })
}

/// Planar patterns as in [`pn_vec`] that contain at least one `m`-apsis.
pub fn pnb_vec(m: usize, k: usize, t: &[usize]) -> BigNat {
    check_modulus(m);
    pnb_inner(m, k, trimmed(t))
}

fn pnb_inner(m: usize, k: usize, t: Vec<usize>) -> BigNat {
    if t.is_empty() {
        return BigNat::one();
    }
    if t[0] == 0 || weight(m, &t) > k {
        return BigNat::zero();
    }
    memoized(|memo| &mut memo.pnb, (m, k, t.clone()), || {
        let mut total = pnb_inner(m, k - 1, t.clone());
        for i in (0..t.len()).filter(|&i| t[i] > 0) {
            total += pnb_inner(m, k - 1, decrement(&t, i));
        }
        total + pn_without_apsis(m, k - m, decrement(&t, 0))
    })
}

/// Patterns in which no block of size `m` is an apsis; zero for the empty vector.
fn pn_without_apsis(m: usize, k: usize, t: Vec<usize>) -> BigNat {
    if t.is_empty() {
        return BigNat::zero();
    }
    pn_inner(m, k, t.clone()) - pnb_inner(m, k, t)
}

/// Non-planar patterns with at least one block of size exactly `m`.
pub fn xnb_vec(m: usize, k: usize, t: &[usize]) -> BigNat {
    check_modulus(m);
    let t = trimmed(t);
    match t.first() {
        None => BigNat::one(),
        Some(0) => BigNat::zero(),
        Some(_) => xn_inner(m, k, t),
    }
}

fn aggregate(m: usize, total: usize, each: impl Fn(&[usize]) -> BigNat) -> BigNat {
    check_modulus(m);
    if !total.is_multiple_of(m) {
        return BigNat::zero();
    }
    compositions(total / m).iter().map(|t| each(t)).sum()
}

/// Sum of [`pn_vec`] over all vectors covering exactly `total` points.
pub fn pn(m: usize, k: usize, total: usize) -> BigNat {
    aggregate(m, total, |t| pn_vec(m, k, t))
}

pub fn xn(m: usize, k: usize, total: usize) -> BigNat {
    aggregate(m, total, |t| xn_vec(m, k, t))
}

pub fn pnb(m: usize, k: usize, total: usize) -> BigNat {
    aggregate(m, total, |t| pnb_vec(m, k, t))
}

pub fn xnb(m: usize, k: usize, total: usize) -> BigNat {
    aggregate(m, total, |t| xnb_vec(m, k, t))
}

fn require_modulus(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::Range("modulus must be positive".into()))
    } else {
        Ok(())
    }
}

fn apsis_range(m: usize, k: usize) -> Result<()> {
    if m < 3 || k < m {
        Err(Error::UnsupportedRange(format!(
            "apsis counts need m >= 3 and k >= m, got m={m}, k={k}"
        )))
    } else {
        Ok(())
    }
}

fn card_sum(
    m: usize,
    k: usize,
    from: usize,
    patterns: impl Fn(usize) -> BigNat,
    transversals: impl Fn(usize, usize) -> BigNat,
) -> BigNat {
    let top = k / m;
    let counts: Vec<BigNat> = (0..=top).map(|u| patterns(m * u)).collect();
    let mut total = BigNat::zero();
    for u in from..=top {
        for l in from..=top {
            total += &counts[u] * &counts[l] * transversals(k - m * u, k - m * l);
        }
    }
    total
}

/// Size of the planar mod-`m` monoid of degree `k`.
pub fn pm_card(m: usize, k: usize) -> Result<BigNat> {
    require_modulus(m)?;
    Ok(card_sum(m, k, 0, |t| pn(m, k, t), |a, b| pt(m, a, b)))
}

/// Size of the mod-`m` monoid of degree `k`.
pub fn mod_card(m: usize, k: usize) -> Result<BigNat> {
    require_modulus(m)?;
    Ok(card_sum(m, k, 0, |t| xn(m, k, t), |a, b| xt(m, a, b)))
}

/// Size of the monoid generated by the `m`-apsis generators.
pub fn apsis_card(m: usize, k: usize) -> Result<BigNat> {
    apsis_range(m, k)?;
    Ok(BigNat::one() + card_sum(m, k, 1, |t| pnb(m, k, t), |a, b| pt(m, a, b)))
}

/// Size of the monoid generated by the `m`-apses together with the transpositions.
pub fn xapsis_card(m: usize, k: usize) -> Result<BigNat> {
    apsis_range(m, k)?;
    Ok(factorial(k) + card_sum(m, k, 1, |t| xnb(m, k, t), |a, b| xt(m, a, b)))
}

/// Bell number: set partitions of an `n`-set.
pub fn bell(n: usize) -> BigNat {
    MEMO.with(|memo| {
        let bells = &mut memo.borrow_mut().bell;
        if bells.len() <= n {
            let mut row = vec![BigNat::one()];
            bells.clear();
            bells.push(BigNat::one());
            for _ in 0..n {
                let mut next = Vec::with_capacity(row.len() + 1);
                next.push(row.last().cloned().unwrap_or_default());
                for x in &row {
                    let v = next.last().cloned().unwrap_or_default() + x;
                    next.push(v);
                }
                row = next;
                bells.push(row[0].clone());
            }
        }
        bells[n].clone()
    })
}

pub fn catalan(n: usize) -> BigNat {
    binomial(2 * n, n) / BigNat::from(n + 1)
}

/// Fibonacci numbers with `F(1) = F(2) = 1`.
pub fn fibonacci(n: usize) -> BigNat {
    let (mut a, mut b) = (BigNat::zero(), BigNat::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Partitions of `k` into parts of size at most `m`.
pub fn p_parts_bounded(m: usize, k: usize) -> BigNat {
    let mut ways = vec![BigNat::zero(); k + 1];
    ways[0] = BigNat::one();
    for part in 1..=m.min(k) {
        for n in part..=k {
            let add = ways[n - part].clone();
            ways[n] += add;
        }
    }
    ways[k].clone()
}

pub fn p_parts(k: usize) -> BigNat {
    p_parts_bounded(k, k)
}

/// Ordered partitions of `k` into parts of size at most `m`.
pub fn o_parts_bounded(m: usize, k: usize) -> BigNat {
    let mut ways = vec![BigNat::zero(); k + 1];
    ways[0] = BigNat::one();
    for n in 1..=k {
        ways[n] = (1..=m.min(n)).map(|p| ways[n - p].clone()).sum();
    }
    ways[k].clone()
}

pub fn o_parts(k: usize) -> BigNat {
    pow2(k.saturating_sub(1))
}

pub fn d_classes_pmod(m: usize, k: usize) -> Result<BigNat> {
    require_modulus(m)?;
    let mut total = BigNat::zero();
    let mut n = k;
    while n >= m {
        total += o_parts_bounded(m, n);
        n -= m;
    }
    Ok(total + pow2(n.saturating_sub(1)))
}

pub fn d_classes_mod(m: usize, k: usize) -> Result<BigNat> {
    require_modulus(m)?;
    let mut total = BigNat::zero();
    let mut n = k;
    while n >= m {
        total += p_parts_bounded(m, n);
        n -= m;
    }
    Ok(total + p_parts_bounded(m, n))
}

pub fn r_classes_pmod(m: usize, k: usize) -> Result<BigNat> {
    require_modulus(m)?;
    if m > k {
        return Ok(pow2(k.saturating_sub(1)));
    }
    Ok((0..=k / m)
        .map(|u| pn(m, k, m * u) * pow2((k - m * u).saturating_sub(1)))
        .sum())
}

pub fn r_classes_mod(m: usize, k: usize) -> Result<BigNat> {
    require_modulus(m)?;
    if m > k {
        return Ok(bell(k));
    }
    Ok((0..=k / m).map(|u| xn(m, k, m * u) * bell(k - m * u)).sum())
}

/// Entry `(j, i)` of Catalan's triangle, for `1 <= i <= j`.
pub fn catalan_triangle(j: usize, i: usize) -> Result<BigNat> {
    if i == 0 || i > j {
        return Err(Error::Range(format!("triangle entry ({j},{i}) needs 1 <= i <= j")));
    }
    Ok(triangle_inner(j, i))
}

fn triangle_inner(j: usize, i: usize) -> BigNat {
    if i == 1 {
        return BigNat::one();
    }
    memoized(|memo| &mut memo.triangle, (j, i), || {
        let mut total = BigNat::one();
        for jj in 1..j {
            for ii in 1..=jj.min(i - 1) {
                total += triangle_inner(jj, ii);
            }
        }
        total
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigNat {
        BigNat::from(x)
    }

    #[test]
    fn transversal_counts() {
        assert_eq!(pt(3, 6, 3), n(8));
        assert_eq!(pt(2, 4, 4), n(10));
        assert_eq!(pt(2, 0, 0), n(1));
        assert_eq!(pt(2, 5, 0), n(0));
        assert_eq!(xt(2, 3, 3), n(16));
        assert_eq!(xt(3, 5, 5), n(1521));
        assert_eq!(xt(4, 3, 0), n(0));
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(pn_vec(2, 6, &[1, 1]), n(6));
        assert_eq!(pn(2, 6, 6), n(12));
        assert_eq!(pn_vec(3, 12, &[0, 0, 0, 1]), n(1));
        assert_eq!(pnb_vec(3, 9, &[1, 1]), n(7));
        assert_eq!(pnb(3, 9, 9), n(19));
        assert_eq!(pnb_vec(3, 6, &[0, 1]), n(0));
        assert_eq!(xn_vec(2, 6, &[3, 0, 0]), n(15));
        assert_eq!(xn(2, 6, 6), n(31));
        assert_eq!(xn_vec(3, 9, &[3, 0, 0]), n(280));
        assert_eq!(xnb_vec(3, 9, &[0, 1, 0]), n(0));
    }

    #[test]
    fn cardinalities() {
        assert_eq!(pm_card(2, 6).unwrap(), n(1428));
        assert_eq!(pm_card(3, 9).unwrap(), n(9856));
        assert_eq!(pm_card(2, 8).unwrap(), n(43263));
        assert_eq!(mod_card(2, 4).unwrap(), n(379));
        assert_eq!(mod_card(3, 6).unwrap(), n(36243));
        assert_eq!(
            mod_card(2, 15).unwrap().to_string(),
            "802221679220975886631"
        );
        assert_eq!(apsis_card(3, 9).unwrap(), n(5732));
        assert_eq!(apsis_card(4, 12).unwrap(), n(32246));
        assert_eq!(apsis_card(3, 3).unwrap(), n(2));
        assert_eq!(xapsis_card(3, 6).unwrap(), n(7220));
        assert_eq!(xapsis_card(4, 12).unwrap(), n(2570506151400));
        assert!(matches!(apsis_card(3, 2), Err(Error::UnsupportedRange(_))));
    }

    #[test]
    fn small_k_pm_card_counts_planar_uniform() {
        assert_eq!(pm_card(5, 3).unwrap(), o_parts(3));
    }

    #[test]
    fn classic_sequences() {
        assert_eq!(bell(4), n(15));
        assert_eq!(bell(0), n(1));
        assert_eq!(bell(8), n(4140));
        assert_eq!(catalan(4), n(14));
        assert_eq!(fibonacci(5), n(5));
        assert_eq!(fibonacci(1), n(1));
        assert_eq!(p_parts_bounded(3, 10), n(14));
        assert_eq!(o_parts_bounded(2, 10), n(89));
        assert_eq!(o_parts(6), n(32));
        assert_eq!(o_parts(0), n(1));
    }

    #[test]
    fn class_counts() {
        assert_eq!(d_classes_pmod(2, 10).unwrap(), n(144));
        assert_eq!(d_classes_pmod(2, 2).unwrap(), n(3));
        assert_eq!(d_classes_mod(2, 4).unwrap(), n(6));
        assert_eq!(r_classes_pmod(1, 5).unwrap(), n(252));
        assert_eq!(r_classes_pmod(2, 6).unwrap(), n(108));
        assert_eq!(r_classes_mod(2, 5).unwrap(), n(122));
        assert_eq!(r_classes_mod(1, 5).unwrap(), n(454));
    }

    #[test]
    fn triangle() {
        assert_eq!(catalan_triangle(3, 3).unwrap(), n(5));
        assert_eq!(catalan_triangle(10, 10).unwrap(), n(16796));
        assert_eq!(catalan_triangle(7, 1).unwrap(), n(1));
        assert!(catalan_triangle(2, 3).is_err());
    }

    #[test]
    fn compositions_cover_partitions() {
        assert_eq!(compositions(3), vec![vec![0, 0, 1], vec![1, 1, 0], vec![3, 0, 0]]);
        assert_eq!(compositions(0), vec![Vec::<usize>::new()]);
        assert_eq!(compositions(6).len(), 11);
    }
}
