//! The Dehn-type lift `Sₙᴰ = As(Tₙ)` as the pullback `{(σ, k) : sign σ ≡ k mod 2}`,
//! its embedding into `A(Sₙ)`, and its splitting as `Aₙ ⋊ Z`.

use std::fmt;

use super::{AElement, ClassVector};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::permutations::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DehnElement {
    perm: Permutation,
    k: i64,
}

impl DehnElement {
    pub fn new(perm: Permutation, k: i64) -> Result<Self> {
        super::guard_degree(perm.degree())?;
        if perm.degree() < 2 {
            return Err(Error::OutOfRange {
                what: "degree",
                value: perm.degree(),
                min: 2,
                max: super::MAX_A_DEGREE,
            });
        }
        if i64::from(perm.sign()) != k.rem_euclid(2) {
            return Err(Error::Constraint(format!(
                "sign of {perm} does not match the parity of {k}"
            )));
        }
        Ok(DehnElement { perm, k })
    }

    pub fn identity(n: usize) -> Self {
        DehnElement {
            perm: Permutation::identity(n),
            k: 0,
        }
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// The degree coordinate.
    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn multiply(&self, other: &DehnElement) -> Result<DehnElement> {
        Ok(DehnElement {
            perm: self.perm.compose(&other.perm)?,
            k: self.k + other.k,
        })
    }

    pub fn inverse(&self) -> DehnElement {
        DehnElement {
            perm: self.perm.inverse(),
            k: -self.k,
        }
    }

    /// `(σ, k) ↦ (σ, k·c_T)` in `A(Sₙ)`.
    pub fn embed(&self) -> AElement {
        let n = self.perm.degree();
        let t = Partition::transposition_class(n).expect("degree >= 2");
        let mut vec = ClassVector::zero(n);
        vec.add_at(&t, self.k);
        AElement::from_parts(self.perm.clone(), vec)
    }

    /// `(α, k)` with `α = σ · σ₁^{-k}` even, `σ₁ = (1 2)`.
    pub fn to_semidirect(&self) -> SemidirectElement {
        let s1 = first_transposition(self.perm.degree());
        SemidirectElement {
            alt: self.perm.then(&s1.pow(-self.k)),
            k: self.k,
        }
    }
}

impl fmt::Display for DehnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.perm, self.k)
    }
}

/// The generator `e_τ = (τ, 1)` of `Sₙᴰ`.
pub fn dehn_generator(tau: &Permutation) -> Result<DehnElement> {
    if !tau.is_transposition() {
        return Err(Error::NotTransposition(tau.to_string()));
    }
    DehnElement::new(tau.clone(), 1)
}

fn first_transposition(n: usize) -> Permutation {
    Permutation::transposition(n, 1, 2).expect("degree >= 2")
}

/// Element `(α, k)` of `Aₙ ⋊ Z`, where `1 ∈ Z` acts on `Aₙ` by conjugation with `σ₁ = (1 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    alt: Permutation,
    k: i64,
}

impl SemidirectElement {
    pub fn new(alt: Permutation, k: i64) -> Result<Self> {
        if alt.degree() < 2 {
            return Err(Error::OutOfRange {
                what: "degree",
                value: alt.degree(),
                min: 2,
                max: super::MAX_A_DEGREE,
            });
        }
        if alt.sign() != 0 {
            return Err(Error::Constraint(format!("{alt} is not even")));
        }
        Ok(SemidirectElement { alt, k })
    }

    pub fn alt(&self) -> &Permutation {
        &self.alt
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// `(α₁, k₁)(α₂, k₂) = (α₁ · σ₁^{k₁} α₂ σ₁^{-k₁}, k₁ + k₂)`.
    pub fn multiply(&self, other: &SemidirectElement) -> Result<SemidirectElement> {
        let s = first_transposition(self.alt.degree()).pow(self.k);
        let acted = other.alt.conjugate(&s.inverse())?;
        Ok(SemidirectElement {
            alt: self.alt.then(&acted),
            k: self.k + other.k,
        })
    }

    pub fn to_dehn(&self) -> DehnElement {
        let s1 = first_transposition(self.alt.degree());
        DehnElement {
            perm: self.alt.then(&s1.pow(self.k)),
            k: self.k,
        }
    }
}
