//! Exact arithmetic in the structure group `A(Sₙ)`.
//!
//! An element is a pair `(σ, x)` with `σ ∈ Sₙ` and `x ∈ Z^{P(n)}` indexed
//! by cycle types, subject to `sign(σ) ≡ Σ_{λ odd} x_λ (mod 2)`. The group
//! law is componentwise, the generator `e_a` is `(a, c_{type(a)})`, and the
//! defining relations `e_a e_b = e_b e_{a⋆b}` hold because conjugate
//! permutations share a cycle type.

mod dehn;
mod kernel;
mod word;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::permutations::Permutation;

pub use dehn::{dehn_generator, DehnElement, SemidirectElement};
pub use kernel::{central_t, cocycle_closed_form, cocycle_phi, kernel_coordinates, KernelCoords};
pub use word::{evaluate, express, GeneratorWord, Letter};

/// Largest degree accepted for elements of `A(Sₙ)`.
pub const MAX_A_DEGREE: usize = 12;

fn guard_degree(n: usize) -> Result<()> {
    if !(1..=MAX_A_DEGREE).contains(&n) {
        return Err(Error::OutOfRange {
            what: "degree",
            value: n,
            min: 1,
            max: MAX_A_DEGREE,
        });
    }
    Ok(())
}

/// Finitely supported integer vector on the conjugacy classes of `Sₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassVector {
    n: usize,
    // zero coordinates are never stored
    coords: BTreeMap<Partition, i64>,
}

impl ClassVector {
    pub fn zero(n: usize) -> Self {
        ClassVector {
            n,
            coords: BTreeMap::new(),
        }
    }

    pub fn unit(lambda: &Partition) -> Self {
        let mut v = ClassVector::zero(lambda.n());
        v.add_at(lambda, 1);
        v
    }

    pub fn from_coords(
        n: usize,
        coords: impl IntoIterator<Item = (Partition, i64)>,
    ) -> Result<Self> {
        let mut v = ClassVector::zero(n);
        for (lambda, x) in coords {
            lambda.expect_n(n)?;
            v.add_at(&lambda, x);
        }
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, lambda: &Partition) -> i64 {
        self.coords.get(lambda).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.coords.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub(crate) fn add_at(&mut self, lambda: &Partition, x: i64) {
        if x == 0 {
            return;
        }
        let entry = self.coords.entry(lambda.clone()).or_insert(0);
        *entry += x;
        if *entry == 0 {
            self.coords.remove(lambda);
        }
    }

    pub fn add(&self, other: &ClassVector) -> ClassVector {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_at(k, v);
        }
        out
    }

    pub fn neg(&self) -> ClassVector {
        ClassVector {
            n: self.n,
            coords: self.coords.iter().map(|(k, &v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> ClassVector {
        if k == 0 {
            return ClassVector::zero(self.n);
        }
        ClassVector {
            n: self.n,
            coords: self
                .coords
                .iter()
                .map(|(p, &v)| (p.clone(), v * k))
                .collect(),
        }
    }

    /// Sum of all coordinates (the degree map).
    pub fn total(&self) -> i64 {
        self.coords.values().sum()
    }

    /// Parity of the coordinate sum over odd classes.
    pub fn odd_parity(&self) -> u8 {
        let s: i64 = self
            .coords
            .iter()
            .filter(|(k, _)| k.is_odd_class())
            .map(|(_, &v)| v)
            .sum();
        s.rem_euclid(2) as u8
    }
}

/// Element of `A(Sₙ)` as a constrained pair `(permutation, class vector)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AElement {
    perm: Permutation,
    vec: ClassVector,
}

impl AElement {
    pub fn new(perm: Permutation, vec: ClassVector) -> Result<Self> {
        guard_degree(perm.degree())?;
        if perm.degree() != vec.n() {
            return Err(Error::DegreeMismatch(perm.degree(), vec.n()));
        }
        if perm.sign() != vec.odd_parity() {
            return Err(Error::Constraint(format!(
                "sign of {perm} is {} but the odd-class coordinates sum to parity {}",
                perm.sign(),
                vec.odd_parity()
            )));
        }
        Ok(AElement { perm, vec })
    }

    fn from_parts(perm: Permutation, vec: ClassVector) -> Self {
        debug_assert_eq!(perm.sign(), vec.odd_parity(), "pullback constraint");
        AElement { perm, vec }
    }

    pub fn identity(n: usize) -> Self {
        AElement {
            perm: Permutation::identity(n),
            vec: ClassVector::zero(n),
        }
    }

    /// The generator `e_a = (a, c_{type(a)})`.
    pub fn generator(a: &Permutation) -> Self {
        AElement {
            vec: ClassVector::unit(&a.cycle_type()),
            perm: a.clone(),
        }
    }

    pub fn degree_n(&self) -> usize {
        self.perm.degree()
    }

    /// Projection `π` to `Sₙ`.
    pub fn pi(&self) -> &Permutation {
        &self.perm
    }

    /// Abelianization `Ab` to `Z^{P(n)}`.
    pub fn ab(&self) -> &ClassVector {
        &self.vec
    }

    /// The degree map `ε`: sum of all class coordinates.
    pub fn degree(&self) -> i64 {
        self.vec.total()
    }

    pub fn multiply(&self, other: &AElement) -> Result<AElement> {
        if self.degree_n() != other.degree_n() {
            return Err(Error::DegreeMismatch(self.degree_n(), other.degree_n()));
        }
        Ok(AElement::from_parts(
            self.perm.then(&other.perm),
            self.vec.add(&other.vec),
        ))
    }

    pub fn inverse(&self) -> AElement {
        AElement::from_parts(self.perm.inverse(), self.vec.neg())
    }

    pub fn pow(&self, k: i64) -> AElement {
        AElement::from_parts(self.perm.pow(k), self.vec.scale(k))
    }

    /// Central iff `π(f)` is central in `Sₙ`.
    pub fn is_central(&self) -> bool {
        let n = self.degree_n();
        (1..n).all(|i| {
            let s = Permutation::transposition(n, i, i + 1).expect("valid transposition");
            self.perm.commutes_with(&s)
        })
    }

    /// Torsion iff the class vector vanishes.
    pub fn is_torsion(&self) -> bool {
        self.vec.is_zero()
    }

    pub fn torsion_order(&self) -> Option<u64> {
        self.is_torsion().then(|| self.perm.order())
    }

    /// `f` and `g` commute iff their projections commute.
    pub fn commutes_with(&self, other: &AElement) -> bool {
        self.perm.commutes_with(&other.perm)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = AElementJson {
            perm: self.perm.images(),
            vec: self.vec.iter().map(|(k, v)| (k.to_csv(), v)).collect(),
        };
        serde_json::to_value(json).expect("serializable")
    }

    /// Parses `{"perm": [images], "vec": {"3,2": 1, …}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let json: AElementJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("element JSON: {e}")))?;
        let perm = Permutation::from_images(&json.perm)?;
        let n = perm.degree();
        let coords = json
            .vec
            .into_iter()
            .map(|(k, v)| Ok((k.parse::<Partition>()?, v)))
            .collect::<Result<Vec<_>>>()?;
        AElement::new(perm, ClassVector::from_coords(n, coords)?)
    }
}

impl Mul for &AElement {
    type Output = AElement;

    /// Panics on degree mismatch.
    fn mul(self, rhs: &AElement) -> AElement {
        self.multiply(rhs).expect("degree mismatch")
    }
}

impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.vec.iter().map(|(k, v)| format!("{v}*c{k}")).collect();
        let vec = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        write!(f, "({}, {})", self.perm, vec)
    }
}

#[derive(Serialize, Deserialize)]
struct AElementJson {
    perm: Vec<usize>,
    #[serde(default)]
    vec: BTreeMap<String, i64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn generators_carry_their_class() {
        let e = AElement::generator(&Permutation::identity(3));
        assert_eq!(e.ab(), &ClassVector::unit(&part("1,1,1")));
        let e = AElement::generator(&cyc(3, "(1 2)"));
        assert_eq!(e.ab(), &ClassVector::unit(&part("2,1")));
        assert_eq!(e.degree(), 1);
        let e = AElement::generator(&cyc(3, "(1 2 3)"));
        assert_eq!(e.pi(), &cyc(3, "(1 2 3)"));
        assert_eq!(e.ab(), &ClassVector::unit(&part("3")));
    }

    #[test]
    fn componentwise_products() {
        let a = AElement::generator(&cyc(3, "(1 2)"));
        let b = AElement::generator(&cyc(3, "(1 3)"));
        let ab = a.multiply(&b).unwrap();
        assert_eq!(ab.pi(), &cyc(3, "(1 2 3)"));
        assert_eq!(ab.ab(), &ClassVector::unit(&part("2,1")).scale(2));
        let sq = &a * &a;
        assert!(sq.pi().is_identity());
        assert_eq!(sq.degree(), 2);
        assert_eq!(&ab * &ab.inverse(), AElement::identity(3));
        assert_eq!(AElement::identity(3).degree(), 0);
        assert!(a.multiply(&AElement::identity(4)).is_err());
    }

    #[test]
    fn constraint_is_enforced() {
        let v = ClassVector::unit(&part("3"));
        assert!(AElement::new(cyc(3, "(1 2)"), v.clone()).is_err());
        assert!(AElement::new(Permutation::identity(3), v).is_ok());
        assert!(AElement::new(Permutation::identity(3), ClassVector::unit(&part("2,1"))).is_err());
        assert!(AElement::new(Permutation::identity(13), ClassVector::zero(13)).is_err());
    }

    #[test]
    fn predicates() {
        let t = central_t(&part("2,1,1"), 4).unwrap();
        assert!(t.is_central());
        assert!(!t.is_torsion());
        let three = AElement::new(cyc(4, "(1 2 3)"), ClassVector::zero(4)).unwrap();
        assert!(three.is_torsion());
        assert_eq!(three.torsion_order(), Some(3));
        assert_eq!(three.pow(3), AElement::identity(4));
        assert!(!three.is_central());
        let a = AElement::generator(&cyc(4, "(1 2)"));
        let b = AElement::generator(&cyc(4, "(3 4)"));
        assert!(a.commutes_with(&b));
        assert_eq!(&a * &b, &b * &a);
        assert!(!a.commutes_with(&AElement::generator(&cyc(4, "(2 3)"))));
    }

    #[test]
    fn json_round_trip() {
        let f = AElement::new(
            cyc(5, "(1 2 3)(4 5)"),
            ClassVector::from_coords(5, [(part("3,2"), 1), (part("1,1,1,1,1"), -2)]).unwrap(),
        )
        .unwrap();
        let text = f.to_json().to_string();
        assert_eq!(AElement::from_json(&text).unwrap(), f);
        assert!(AElement::from_json(r#"{"perm": [2, 1, 3], "vec": {}}"#).is_err());
        assert!(AElement::from_json(r#"{"perm": [2, 1, 3], "vec": {"2,1": 1}}"#).is_ok());
        assert!(AElement::from_json(r#"{"perm": [2, 1, 3], "vec": {"2,2": 1}}"#).is_err());
    }
}
