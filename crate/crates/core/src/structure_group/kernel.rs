//! The kernel of `π: A(Sₙ) → Sₙ`, its basis of central elements, and the
//! extension 2-cocycle `φ(a, b) = e_{ab}⁻¹ e_a e_b`.
//!
//! Basis: `t_λ = e_{a_λ} · e_{w_k}⁻¹ ⋯ e_{w_1}⁻¹` for every class `λ` other
//! than the transpositions, where `w_1 ⋯ w_k` is the canonical minimal
//! transposition word of the class representative `a_λ`, and `t_T = e_τ²`
//! for the transposition class. In class coordinates
//! `t_λ = c_λ − lg(λ)·c_T` and `t_T = 2·c_T`, a triangular system.

use std::collections::BTreeMap;
use std::fmt;

use super::{AElement, ClassVector};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::permutations::Permutation;

/// Coordinates of a kernel element over the `t`-basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KernelCoords {
    pub n: usize,
    /// Exponents of `t_λ` for non-transposition classes; zeros omitted.
    pub classes: BTreeMap<Partition, i64>,
    /// Exponent of `t_T = e_τ²`.
    pub t: i64,
}

impl KernelCoords {
    pub fn zero(n: usize) -> Self {
        KernelCoords {
            n,
            classes: BTreeMap::new(),
            t: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty() && self.t == 0
    }

    /// Dense vector over `partitions_of(n)`, the transposition slot holding `t`.
    pub fn to_dense(&self) -> Vec<i64> {
        let transposition = Partition::transposition_class(self.n);
        partitions_of(self.n)
            .expect("small n")
            .iter()
            .map(|lambda| {
                if Some(lambda) == transposition.as_ref() {
                    self.t
                } else {
                    self.classes.get(lambda).copied().unwrap_or(0)
                }
            })
            .collect()
    }

    pub fn add(&self, other: &KernelCoords) -> KernelCoords {
        let mut classes = self.classes.clone();
        for (k, &v) in &other.classes {
            let e = classes.entry(k.clone()).or_insert(0);
            *e += v;
            if *e == 0 {
                classes.remove(k);
            }
        }
        KernelCoords {
            n: self.n,
            classes,
            t: self.t + other.t,
        }
    }

    pub fn neg(&self) -> KernelCoords {
        KernelCoords {
            n: self.n,
            classes: self.classes.iter().map(|(k, &v)| (k.clone(), -v)).collect(),
            t: -self.t,
        }
    }

    pub fn sub(&self, other: &KernelCoords) -> KernelCoords {
        self.add(&other.neg())
    }
}

impl fmt::Display for KernelCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .classes
            .iter()
            .map(|(k, v)| format!("t{k}^{v}"))
            .collect();
        if self.t != 0 {
            terms.push(format!("tT^{}", self.t));
        }
        if terms.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", terms.join(" "))
        }
    }
}

/// The central element `t_λ` of `A(Sₙ)`.
pub fn central_t(lambda: &Partition, n: usize) -> Result<AElement> {
    super::guard_degree(n)?;
    lambda.expect_n(n)?;
    let transposition = Partition::transposition_class(n);
    let mut vec = ClassVector::zero(n);
    if Some(lambda) == transposition.as_ref() {
        vec.add_at(lambda, 2);
    } else {
        vec.add_at(lambda, 1);
        if let Some(t) = &transposition {
            vec.add_at(t, -(lambda.reflection_length() as i64));
        }
    }
    AElement::new(Permutation::identity(n), vec)
}

/// Exponents of `f` over the `t`-basis; `f` must project to the identity.
pub fn kernel_coordinates(f: &AElement) -> Result<KernelCoords> {
    if !f.pi().is_identity() {
        return Err(Error::NotInKernel(f.to_string()));
    }
    let n = f.degree_n();
    let transposition = Partition::transposition_class(n);
    let mut classes = BTreeMap::new();
    let mut twice_t = 0i64;
    for (lambda, x) in f.ab().iter() {
        if Some(lambda) == transposition.as_ref() {
            twice_t += x;
        } else {
            classes.insert(lambda.clone(), x);
            twice_t += x * lambda.reflection_length() as i64;
        }
    }
    if twice_t % 2 != 0 {
        return Err(Error::Constraint(format!(
            "odd transposition-class residue in {f}"
        )));
    }
    Ok(KernelCoords {
        n,
        classes,
        t: twice_t / 2,
    })
}

/// `φ(α, β) = e_{αβ}⁻¹ e_α e_β`, computed in the pullback model.
pub fn cocycle_phi(alpha: &Permutation, beta: &Permutation) -> Result<KernelCoords> {
    let product = alpha.compose(beta)?;
    let value = AElement::generator(&product)
        .inverse()
        .multiply(&AElement::generator(alpha))?
        .multiply(&AElement::generator(beta))?;
    kernel_coordinates(&value)
}

/// The same cocycle from its closed form: class part
/// `−c_{O(αβ)} + c_{O(α)} + c_{O(β)}` off the transposition class, and
/// `t`-exponent `(−lg(αβ) + lg(α) + lg(β)) / 2`.
pub fn cocycle_closed_form(alpha: &Permutation, beta: &Permutation) -> Result<KernelCoords> {
    let product = alpha.compose(beta)?;
    let n = alpha.degree();
    let transposition = Partition::transposition_class(n);
    let mut classes: BTreeMap<Partition, i64> = BTreeMap::new();
    for (p, sign) in [(&product, -1i64), (alpha, 1), (beta, 1)] {
        let lambda = p.cycle_type();
        if Some(&lambda) == transposition.as_ref() {
            continue;
        }
        let e = classes.entry(lambda.clone()).or_insert(0);
        *e += sign;
        if *e == 0 {
            classes.remove(&lambda);
        }
    }
    let lg = |p: &Permutation| p.reflection_length() as i64;
    let twice = -lg(&product) + lg(alpha) + lg(beta);
    debug_assert!(twice % 2 == 0);
    Ok(KernelCoords {
        n,
        classes,
        t: twice / 2,
    })
}
