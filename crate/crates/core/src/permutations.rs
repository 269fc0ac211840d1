//! Permutations of `{1..n}`.
//!
//! Products are read left to right: `p.compose(q)` applies `p` first and
//! then `q`. With this convention `conjugate(a, b) = b⁻¹ab` is the right
//! action of `b` on `a`, so that e.g. `conjugate((1 2), (2 3)) = (1 3)`.
//! Points are 1-based in every public constructor and accessor.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::partitions::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// From 1-based images: entry `i` is the image of point `i + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation(
                "degree must be at least 1".into(),
            ));
        }
        let mut seen = vec![false; n];
        let mut map = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[img - 1] = true;
            map.push(img - 1);
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation of degree `n` from disjoint cycles of 1-based points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation(
                "degree must be at least 1".into(),
            ));
        }
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 || pt > n || used[pt - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on 1..={n}"
                    )));
                }
                used[pt - 1] = true;
            }
            for (k, &pt) in cycle.iter().enumerate() {
                map[pt - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { map })
    }

    /// The transposition swapping the 1-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidPermutation(format!(
                "({i} {j}) is not a transposition"
            )));
        }
        Self::from_cycles(n, &[vec![i, j]])
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"`; `"()"` or `""` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_end = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')'))
                .ok_or_else(|| Error::Parse(format!("bad cycle notation {text:?}")))?;
            let body = &rest[1..=body_end];
            let pts = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {t:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = rest[body_end + 2..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&x| x + 1).collect()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.degree()];
        for (i, &x) in self.map.iter().enumerate() {
            map[x] = i;
        }
        Permutation { map }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// `other⁻¹ · self · other`, the quandle operation `self ⋆ other` of Conj(Sₙ).
    pub fn conjugate(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(self.conj_by(other))
    }

    pub(crate) fn conj_by(&self, b: &Permutation) -> Permutation {
        // b⁻¹ab sends b(i) to b(a(i))
        let mut map = vec![0; self.degree()];
        for (i, &ai) in self.map.iter().enumerate() {
            map[b.map[i]] = b.map[ai];
        }
        Permutation { map }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.degree() == other.degree() && self.then(other) == other.then(self)
    }

    /// Nontrivial cycles as 1-based points, each starting at its smallest
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.map[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.all_cycles().len()
    }

    /// Parity: 0 for even, 1 for odd.
    pub fn sign(&self) -> u8 {
        (self.reflection_length() % 2) as u8
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.all_cycles().iter().map(Vec::len).collect())
            .expect("cycle lengths are positive")
    }

    /// Minimal number of transpositions whose product is `self`.
    pub fn reflection_length(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    pub fn is_transposition(&self) -> bool {
        self.reflection_length() == 1
    }

    pub fn order(&self) -> u64 {
        self.all_cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Minimal-length transposition word whose left-to-right product is `self`.
    ///
    /// The smallest non-fixed point `i` is repeatedly sent to its target by
    /// the transposition `(i, p(i))`; each step fixes one more point.
    pub fn transposition_word(&self) -> Vec<Permutation> {
        let n = self.degree();
        let mut rest = self.clone();
        let mut word = Vec::with_capacity(self.reflection_length());
        while let Some(i) = (0..n).find(|&i| rest.map[i] != i) {
            let j = rest.map[i];
            let mut t = Permutation::identity(n);
            t.map.swap(i, j);
            rest = t.then(&rest);
            word.push(t);
        }
        word
    }

    /// Rank among all permutations of the same degree in lexicographic order of images.
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.map[i + 1..]
                .iter()
                .filter(|&&x| x < self.map[i])
                .count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product; panics on degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All permutations of degree `n` in lexicographic order of their image arrays.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if current.len() == n {
            out.push(Permutation {
                map: current.clone(),
            });
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                current.push(x);
                rec(n, current, used, out);
                current.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// All transpositions of degree `n`, ordered lexicographically by `(i, j)`, `i < j`.
pub fn all_transpositions(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut t = Permutation::identity(n);
            t.map.swap(i, j);
            out.push(t);
        }
    }
    out
}

/// Canonical representative of the class `λ`: cycles of lengths
/// `λ₁ ≥ λ₂ ≥ …` on consecutive blocks of points starting at 1.
pub fn class_representative(lambda: &Partition, n: usize) -> Result<Permutation> {
    lambda.expect_n(n)?;
    if n == 0 {
        return Err(Error::InvalidPermutation(
            "degree must be at least 1".into(),
        ));
    }
    let mut map: Vec<usize> = (0..n).collect();
    let mut start = 0;
    for &len in lambda.parts() {
        for k in 0..len {
            map[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    Ok(Permutation { map })
}

/// Generators of the centralizer of `class_representative(λ, n)`: one cycle
/// per part of length at least 2, and for every repeated part size a swap of
/// each pair of adjacent equal-length blocks.
pub fn stabilizer_generators(lambda: &Partition, n: usize) -> Result<Vec<Permutation>> {
    let rep = class_representative(lambda, n)?;
    let parts = lambda.parts();
    let mut starts = Vec::with_capacity(parts.len());
    let mut s = 0;
    for &len in parts {
        starts.push(s);
        s += len;
    }
    let mut gens = Vec::new();
    for (idx, &len) in parts.iter().enumerate() {
        if len >= 2 {
            let mut map: Vec<usize> = (0..n).collect();
            for k in 0..len {
                map[starts[idx] + k] = rep.map[starts[idx] + k];
            }
            gens.push(Permutation { map });
        }
    }
    for idx in 0..parts.len().saturating_sub(1) {
        if parts[idx] == parts[idx + 1] {
            let len = parts[idx];
            let mut map: Vec<usize> = (0..n).collect();
            for k in 0..len {
                let a = starts[idx] + k;
                let b = starts[idx + 1] + k;
                map.swap(a, b);
            }
            gens.push(Permutation { map });
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        let got = cyc(3, "(1 2)").compose(&cyc(3, "(1 3)")).unwrap();
        assert_eq!(got, cyc(3, "(1 2 3)"));
        let p = cyc(4, "(1 3 4)");
        assert_eq!(p.compose(&Permutation::identity(4)).unwrap(), p);
        assert!(cyc(3, "(1 2)")
            .compose(&cyc(3, "(1 2)"))
            .unwrap()
            .is_identity());
        assert_eq!(
            cyc(3, "(1 2)").compose(&cyc(4, "(1 2)")),
            Err(Error::DegreeMismatch(3, 4))
        );
    }

    #[test]
    fn conjugation_convention() {
        let a = cyc(3, "(1 2)");
        assert_eq!(a.conjugate(&a).unwrap(), a);
        assert_eq!(a.conjugate(&cyc(3, "(2 3)")).unwrap(), cyc(3, "(1 3)"));
        // σᵢ ⋆ σᵢ₊₁ = (i, i+2)
        for n in 3..7 {
            for i in 1..n - 1 {
                let si = Permutation::transposition(n, i, i + 1).unwrap();
                let sj = Permutation::transposition(n, i + 1, i + 2).unwrap();
                let want = Permutation::transposition(n, i, i + 2).unwrap();
                assert_eq!(si.conjugate(&sj).unwrap(), want);
            }
        }
        // σᵢ ⋆ σⱼ = σᵢ for |i - j| ≥ 2
        let s1 = Permutation::transposition(5, 1, 2).unwrap();
        let s3 = Permutation::transposition(5, 3, 4).unwrap();
        assert_eq!(s1.conjugate(&s3).unwrap(), s1);
        // b⁻¹ab computed as a product
        let a = cyc(5, "(1 2 3)(4 5)");
        let b = cyc(5, "(1 4 2)");
        assert_eq!(a.conjugate(&b).unwrap(), &(&b.inverse() * &a) * &b);
    }

    #[test]
    fn sign_and_length() {
        assert_eq!(Permutation::identity(4).sign(), 0);
        assert_eq!(cyc(4, "(2 4)").sign(), 1);
        assert_eq!(cyc(3, "(1 2 3)").sign(), 0);
        assert_eq!(Permutation::identity(4).reflection_length(), 0);
        assert_eq!(cyc(4, "(1 3)").reflection_length(), 1);
        assert_eq!(cyc(5, "(1 2 3)(4 5)").reflection_length(), 3);
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
        assert_eq!(cyc(4, "(1 2)").cycle_type().parts(), &[2, 1, 1]);
        assert_eq!(cyc(5, "(1 2 3)(4 5)").cycle_type().parts(), &[3, 2]);
    }

    #[test]
    fn transposition_words() {
        assert!(Permutation::identity(3).transposition_word().is_empty());
        assert_eq!(cyc(3, "(1 2)").transposition_word(), vec![cyc(3, "(1 2)")]);
        assert_eq!(
            cyc(3, "(1 2 3)").transposition_word(),
            vec![cyc(3, "(1 2)"), cyc(3, "(1 3)")]
        );
    }

    #[test]
    fn class_representatives() {
        let l = Partition::new(vec![3, 2]).unwrap();
        assert_eq!(class_representative(&l, 5).unwrap(), cyc(5, "(1 2 3)(4 5)"));
        assert!(class_representative(&Partition::identity_class(4), 4)
            .unwrap()
            .is_identity());
        let full = Partition::new(vec![5]).unwrap();
        assert_eq!(
            class_representative(&full, 5).unwrap(),
            cyc(5, "(1 2 3 4 5)")
        );
        assert!(class_representative(&l, 6).is_err());
    }

    #[test]
    fn stabilizer_generator_sets() {
        let l = Partition::new(vec![2, 2]).unwrap();
        assert_eq!(
            stabilizer_generators(&l, 4).unwrap(),
            vec![cyc(4, "(1 2)"), cyc(4, "(3 4)"), cyc(4, "(1 3)(2 4)")]
        );
        let l = Partition::new(vec![4]).unwrap();
        assert_eq!(
            stabilizer_generators(&l, 4).unwrap(),
            vec![cyc(4, "(1 2 3 4)")]
        );
        let l = Partition::new(vec![2, 1, 1]).unwrap();
        assert_eq!(
            stabilizer_generators(&l, 4).unwrap(),
            vec![cyc(4, "(1 2)"), cyc(4, "(3 4)")]
        );
    }

    #[test]
    fn display_and_parse() {
        let p = cyc(5, "(1 2 3)(4 5)");
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(
            Permutation::parse_cycles(3, "").unwrap(),
            Permutation::identity(3)
        );
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2").is_err());
        assert_eq!(p.images(), vec![2, 3, 1, 5, 4]);
        assert_eq!(Permutation::from_images(&p.images()).unwrap(), p);
        assert!(Permutation::from_images(&[1, 1]).is_err());
    }

    #[test]
    fn lex_rank_matches_enumeration_order() {
        for n in 1..6 {
            for (i, p) in all_permutations(n).iter().enumerate() {
                assert_eq!(p.lex_rank(), i);
            }
        }
    }

    #[test]
    fn powers_and_orders() {
        let p = cyc(5, "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(7), p);
    }
}
