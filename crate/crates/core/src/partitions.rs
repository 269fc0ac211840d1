//! Integer partitions and the support / repetition-support combinatorics
//! used by the homology computations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest `n` accepted by the enumeration and counting helpers.
pub const MAX_PARTITION_N: usize = 10_000;

/// A partition of `n`: weakly decreasing positive parts summing to `n`.
///
/// The empty partition is the unique partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The class of a transposition, `(2, 1, ..., 1)`. Needs `n >= 2`.
    pub fn transposition_class(n: usize) -> Option<Self> {
        if n < 2 {
            return None;
        }
        let mut parts = vec![2];
        parts.resize(n - 1, 1);
        Some(Partition { parts })
    }

    /// The class of the identity, `(1, ..., 1)`.
    pub fn identity_class(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, u: usize) -> usize {
        self.parts.iter().filter(|&&p| p == u).count()
    }

    /// Checks that this is a partition of `n`.
    pub fn expect_n(&self, n: usize) -> Result<()> {
        let got = self.n();
        if got != n {
            return Err(Error::PartitionSize { expected: n, got });
        }
        Ok(())
    }

    /// Distinct part sizes.
    pub fn support(&self) -> BTreeSet<usize> {
        self.parts.iter().copied().collect()
    }

    /// Part sizes occurring at least twice.
    pub fn rsupport(&self) -> BTreeSet<usize> {
        self.support()
            .into_iter()
            .filter(|&u| self.multiplicity(u) >= 2)
            .collect()
    }

    /// `#RSupp - 1` if the repetition support has an odd element, else `#RSupp`.
    pub fn r_of(&self) -> usize {
        let rs = self.rsupport();
        if rs.iter().any(|v| v % 2 == 1) {
            rs.len() - 1
        } else {
            rs.len()
        }
    }

    pub fn has_odd_repeated_part(&self) -> bool {
        self.rsupport().iter().any(|v| v % 2 == 1)
    }

    /// The distinguished even part `2h`, where among the half-values `h`
    /// of the even parts, `h` has minimal 2-adic valuation and is the
    /// smallest such. `None` if there is no even part.
    pub fn m_of(&self) -> Option<usize> {
        self.support()
            .into_iter()
            .filter(|u| u % 2 == 0)
            .min_by_key(|&u| (two_adic_valuation(u / 2), u))
    }

    /// Whether permutations of this cycle type are odd.
    pub fn is_odd_class(&self) -> bool {
        self.parts.iter().map(|&p| p - 1).sum::<usize>() % 2 == 1
    }

    /// Reflection length of any permutation of this cycle type.
    pub fn reflection_length(&self) -> usize {
        self.n() - self.len()
    }

    /// Comma-separated parts, e.g. `3,2,1,1`; the empty partition prints as `""`.
    pub fn to_csv(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing: {s:?}"
            )));
        }
        Partition::new(parts)
    }
}

/// Exponent of the largest power of 2 dividing `x` (`x > 0`).
pub fn two_adic_valuation(x: usize) -> u32 {
    debug_assert!(x > 0);
    x.trailing_zeros()
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_PARTITION_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 0,
            max: MAX_PARTITION_N,
        });
    }
    Ok(())
}

/// All partitions of `n` in reverse-lexicographic order, starting with `(n)`.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>> {
    guard(n)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill(rest: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        current.push(part);
        fill(rest - part, part, current, out);
        current.pop();
    }
}

/// The partition number `P(n)`, by dynamic programming over the largest part.
pub fn partition_count(n: usize) -> Result<BigUint> {
    guard(n)?;
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in 1..=n {
        for total in part..=n {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    Ok(ways.swap_remove(n))
}

/// Number of `λ ⊢ n` with no odd repeated part, `u ∈ Supp(λ)`, `v₂(u) ≤ v₂(u')`
/// for every other even part size `u'`, and `u` minimal among the even part
/// sizes with that property.
pub fn s_count(n: usize, u: usize) -> Result<usize> {
    if u % 2 == 1 || u < 2 || u > n {
        return Err(Error::InvalidArgument(format!(
            "s(n, u) needs an even u with 2 <= u <= n, got n = {n}, u = {u}"
        )));
    }
    let count = partitions_of(n)?
        .into_iter()
        .filter(|lambda| qualifies_for_s(lambda, u))
        .count();
    Ok(count)
}

fn qualifies_for_s(lambda: &Partition, u: usize) -> bool {
    if lambda.has_odd_repeated_part() {
        return false;
    }
    let supp = lambda.support();
    let divides_others = |w: usize| {
        supp.iter()
            .filter(|&&x| x % 2 == 0 && x != w)
            .all(|&x| two_adic_valuation(w) <= two_adic_valuation(x))
    };
    if !supp.contains(&u) || !divides_others(u) {
        return false;
    }
    supp.iter()
        .filter(|&&w| w % 2 == 0 && w < u)
        .all(|&w| !divides_others(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerates_partitions_of_four_in_reverse_lex_order() {
        let got = partitions_of(4).unwrap();
        let want = vec![
            p(&[4]),
            p(&[3, 1]),
            p(&[2, 2]),
            p(&[2, 1, 1]),
            p(&[1, 1, 1, 1]),
        ];
        assert_eq!(got, want);
        assert_eq!(partitions_of(0).unwrap(), vec![Partition::empty()]);
        assert_eq!(partitions_of(7).unwrap().len(), 15);
    }

    #[test]
    fn small_partition_numbers() {
        assert_eq!(partition_count(0).unwrap(), BigUint::from(1u32));
        assert_eq!(partition_count(5).unwrap(), BigUint::from(7u32));
        assert_eq!(partition_count(6).unwrap(), BigUint::from(11u32));
        assert!(partition_count(MAX_PARTITION_N + 1).is_err());
    }

    #[test]
    fn supports() {
        let l = p(&[4, 2, 2, 1]);
        assert_eq!(l.support(), [1, 2, 4].into_iter().collect());
        assert_eq!(l.rsupport(), [2].into_iter().collect());
        assert_eq!(p(&[5]).rsupport(), BTreeSet::new());
        assert_eq!(p(&[1, 1]).rsupport(), [1].into_iter().collect());
    }

    #[test]
    fn r_values() {
        assert_eq!(p(&[2, 2, 1, 1]).r_of(), 1);
        assert_eq!(p(&[3, 3, 2, 2]).r_of(), 1);
        assert_eq!(p(&[2, 2]).r_of(), 1);
        assert_eq!(p(&[3]).r_of(), 0);
    }

    #[test]
    fn m_values() {
        assert_eq!(p(&[4, 2]).m_of(), Some(2));
        assert_eq!(p(&[3, 1]).m_of(), None);
        assert_eq!(p(&[8, 4]).m_of(), Some(4));
        assert_eq!(p(&[12, 8]).m_of(), Some(12));
        assert_eq!(p(&[6, 2]).m_of(), Some(2));
    }

    #[test]
    fn s_values() {
        assert_eq!(s_count(4, 2).unwrap(), 1);
        assert_eq!(s_count(4, 4).unwrap(), 1);
        assert_eq!(s_count(6, 2).unwrap(), 3);
        assert!(s_count(4, 3).is_err());
        assert!(s_count(4, 6).is_err());
        assert!(s_count(4, 0).is_err());
    }

    #[test]
    fn parses_comma_separated_parts() {
        assert_eq!("3,2,1,1".parse::<Partition>().unwrap(), p(&[3, 2, 1, 1]));
        assert_eq!(p(&[3, 2, 1, 1]).to_csv(), "3,2,1,1");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn class_parity_and_length() {
        assert!(p(&[2, 1]).is_odd_class());
        assert!(!p(&[3]).is_odd_class());
        assert_eq!(p(&[3, 2]).reflection_length(), 3);
        assert_eq!(Partition::transposition_class(4), Some(p(&[2, 1, 1])));
        assert_eq!(Partition::transposition_class(1), None);
    }
}
