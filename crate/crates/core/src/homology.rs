//! Second quandle homology of `Conj(Sₙ)` and of the transposition quandle.
//!
//! Each orbit contributes the abelianized stabilizer of its representative
//! inside the Dehn-type lift plus a free padding. The stabilizer is
//! presented by generators `e_u` (one `u`-cycle), `f_v` (swap of two
//! `v`-cycles) and the central `t`, with relations `e_u^u = t^{u(u−1)/2}` and
//! `f_v² = t^v`. Two routes read off the group: Smith normal form of that
//! matrix, and the closed formula.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{
    abelian_from_matrix, smith_normal_form, unimodular_inverse, AbelianGroup, IntMatrix,
};
use crate::error::{Error, Result};
use crate::partitions::{partition_count, partitions_of, s_count, Partition};

/// Default upper bound on `n` for the closed formula.
pub const MAX_CLOSED_N: usize = 30;
/// Default upper bound on `n` for the matrix route.
pub const MAX_SNF_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Snf,
    Closed,
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "snf" => Ok(Method::Snf),
            "closed" => Ok(Method::Closed),
            "both" => Ok(Method::Both),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Snf => "snf",
            Method::Closed => "closed",
            Method::Both => "both",
        })
    }
}

/// Guards on `n`; raise them deliberately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub closed: usize,
    pub snf: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            closed: MAX_CLOSED_N,
            snf: MAX_SNF_N,
        }
    }
}

impl Limits {
    fn check(&self, n: usize, method: Method) -> Result<()> {
        let max = match method {
            Method::Closed => self.closed,
            Method::Snf | Method::Both => self.snf,
        };
        if !(1..=max).contains(&n) {
            return Err(Error::OutOfRange {
                what: "n",
                value: n,
                min: 1,
                max,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabGenerator {
    /// A single `u`-cycle.
    E(usize),
    /// Swap of two `v`-cycles.
    F(usize),
    T,
}

impl fmt::Display for StabGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabGenerator::E(u) => write!(f, "e{u}"),
            StabGenerator::F(v) => write!(f, "f{v}"),
            StabGenerator::T => write!(f, "t"),
        }
    }
}

/// Abelianized stabilizer presentation for one cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerPresentation {
    pub lambda: Partition,
    /// `e_u` ascending, then `f_v` ascending, then `t`.
    pub generators: Vec<StabGenerator>,
    pub relations: IntMatrix,
}

impl StabilizerPresentation {
    /// The degree map `ε`: letters per generator in the transposition alphabet.
    pub fn degrees(&self) -> Vec<i64> {
        self.generators
            .iter()
            .map(|g| match *g {
                StabGenerator::E(u) => u as i64 - 1,
                StabGenerator::F(v) => v as i64,
                StabGenerator::T => 2,
            })
            .collect()
    }
}

impl fmt::Display for StabilizerPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        writeln!(f, "generators: {}", labels.join(" "))?;
        write!(f, "{}", self.relations)
    }
}

pub fn stabilizer_presentation(lambda: &Partition, n: usize) -> Result<StabilizerPresentation> {
    lambda.expect_n(n)?;
    let mut generators: Vec<StabGenerator> = lambda
        .support()
        .into_iter()
        .filter(|&u| u >= 2)
        .map(StabGenerator::E)
        .collect();
    generators.extend(lambda.rsupport().into_iter().map(StabGenerator::F));
    // for n = 1 the lift has no transpositions, hence no t
    if n >= 2 {
        generators.push(StabGenerator::T);
    }
    let cols = generators.len();
    let mut rows = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let (power, t_exp) = match *g {
            StabGenerator::E(u) => (u as i64, (u * (u - 1) / 2) as i64),
            StabGenerator::F(v) => (2, v as i64),
            StabGenerator::T => continue,
        };
        let mut row = vec![0i64; cols];
        row[i] = power;
        row[cols - 1] = -t_exp;
        rows.push(row);
    }
    let relations = if rows.is_empty() {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows(cols, &rows)?
    };
    Ok(StabilizerPresentation {
        lambda: lambda.clone(),
        generators,
        relations,
    })
}

pub fn stabilizer_ab_snf(lambda: &Partition, n: usize) -> Result<AbelianGroup> {
    abelian_from_matrix(&stabilizer_presentation(lambda, n)?.relations)
}

/// Same as [`stabilizer_ab_snf`] with the first nonzero pivot doubled.
/// Only for exercising failure paths of the verification driver.
pub fn stabilizer_ab_snf_corrupted(lambda: &Partition, n: usize) -> Result<AbelianGroup> {
    let pres = stabilizer_presentation(lambda, n)?;
    let mut d = smith_normal_form(&pres.relations).d;
    if let Some(i) = (0..d.rows().min(d.cols())).find(|&i| !d[(i, i)].is_zero()) {
        d[(i, i)] *= 2;
    }
    abelian_from_matrix(&d)
}

pub fn stabilizer_ab_closed(lambda: &Partition, n: usize) -> Result<AbelianGroup> {
    lambda.expect_n(n)?;
    if n == 1 {
        return Ok(AbelianGroup::trivial());
    }
    let supp = lambda.support();
    let rsupp = lambda.rsupport();
    let mut orders: Vec<u64> = Vec::new();
    if lambda.has_odd_repeated_part() {
        orders.extend(supp.iter().map(|&u| u as u64));
        orders.extend(std::iter::repeat_n(2, rsupp.len() - 1));
    } else {
        let m = lambda.m_of();
        if let Some(m) = m {
            orders.push(m as u64 / 2);
        }
        orders.extend(supp.iter().filter(|&&u| Some(u) != m).map(|&u| u as u64));
        orders.extend(std::iter::repeat_n(2, rsupp.len()));
    }
    Ok(AbelianGroup::from_cyclic(1, &orders))
}

fn small_partition_count(n: usize) -> Result<usize> {
    partition_count(n)?
        .to_usize()
        .ok_or_else(|| Error::Overflow(format!("P({n})")))
}

/// Free padding per orbit: the classes other than the identity and the orbit's own `t` direction.
fn padding(n: usize) -> Result<usize> {
    Ok(small_partition_count(n)?.saturating_sub(2))
}

/// `H₂(Conj(Sₙ))` with default guards.
pub fn h2_conj_sn(n: usize, method: Method) -> Result<AbelianGroup> {
    h2_conj_sn_with(n, method, &Limits::default())
}

pub fn h2_conj_sn_with(n: usize, method: Method, limits: &Limits) -> Result<AbelianGroup> {
    limits.check(n, method)?;
    let pad = AbelianGroup::free(padding(n)?);
    let mut total = AbelianGroup::trivial();
    for lambda in partitions_of(n)? {
        let stab = match method {
            Method::Snf => stabilizer_ab_snf(&lambda, n)?,
            Method::Closed => stabilizer_ab_closed(&lambda, n)?,
            Method::Both => {
                let snf = stabilizer_ab_snf(&lambda, n)?;
                let closed = stabilizer_ab_closed(&lambda, n)?;
                if snf != closed {
                    return Err(Error::MethodDisagreement {
                        partition: lambda.to_csv(),
                        snf: snf.to_string(),
                        closed: closed.to_string(),
                    });
                }
                snf
            }
        };
        total = total.direct_sum(&stab).direct_sum(&pad);
    }
    Ok(total)
}

/// The closed formula for the whole group, without per-orbit assembly.
pub fn h2_closed_theorem(n: usize) -> Result<AbelianGroup> {
    h2_closed_theorem_with(n, &Limits::default())
}

pub fn h2_closed_theorem_with(n: usize, limits: &Limits) -> Result<AbelianGroup> {
    limits.check(n, Method::Closed)?;
    let p = small_partition_count(n)?;
    let r_total: usize = partitions_of(n)?.iter().map(Partition::r_of).sum();
    let mut orders: Vec<u64> = vec![2; r_total];
    for u in 2..=n {
        let rest = small_partition_count(n - u)?;
        if u % 2 == 1 {
            orders.extend(std::iter::repeat_n(u as u64, rest));
        } else {
            let s = s_count(n, u)?;
            orders.extend(std::iter::repeat_n(u as u64, rest - s));
            orders.extend(std::iter::repeat_n(u as u64 / 2, s));
        }
    }
    Ok(AbelianGroup::from_cyclic(p * (p - 1), &orders))
}

/// Cokernel of the relations of `pres` restricted to the kernel of its degree map.
fn degree_kernel_ab(pres: &StabilizerPresentation) -> Result<AbelianGroup> {
    let g = pres.generators.len();
    let eps = IntMatrix::from_rows(g, &[pres.degrees()])?;
    let form = smith_normal_form(&eps);
    // columns 1.. of V span Ker ε
    let v_inv = unimodular_inverse(&form.v)?;
    let coords = pres.relations.mul(&v_inv.transpose())?;
    let mut sub = IntMatrix::zeros(coords.rows(), g - 1);
    for i in 0..coords.rows() {
        if !coords[(i, 0)].is_zero() {
            return Err(Error::InvalidArgument(format!(
                "relation {i} of {} has nonzero degree",
                pres.lambda
            )));
        }
        for j in 1..g {
            sub[(i, j - 1)] = coords[(i, j)].clone();
        }
    }
    abelian_from_matrix(&sub)
}

/// `H₂` of the transposition quandle `Tₙ`.
pub fn h2_transposition_quandle(n: usize) -> Result<AbelianGroup> {
    let lambda = Partition::transposition_class(n).ok_or(Error::OutOfRange {
        what: "n",
        value: n,
        min: 2,
        max: usize::MAX,
    })?;
    degree_kernel_ab(&stabilizer_presentation(&lambda, n)?)
}

/// The two matrices compared in the difficult case, for half-values `h`.
///
/// `h` is first reordered so that `h₁` has minimal 2-adic valuation (smallest
/// such value first). `M₁` has rows `2hᵢ·eᵢ − hᵢ·e_{s+1}`; `M₂` is diagonal
/// `(h₁, 2h₂, …, 2h_s)` padded with a zero column.
pub fn difficult_case_matrices(h: &[u64]) -> Result<(IntMatrix, IntMatrix)> {
    if h.contains(&0) {
        return Err(Error::InvalidArgument(
            "half-values must be positive".into(),
        ));
    }
    let mut h = h.to_vec();
    if let Some(pos) = (0..h.len()).min_by_key(|&i| (h[i].trailing_zeros(), h[i])) {
        h.swap(0, pos);
    }
    let s = h.len();
    let mut m1 = IntMatrix::zeros(s, s + 1);
    let mut m2 = IntMatrix::zeros(s, s + 1);
    for (i, &hi) in h.iter().enumerate() {
        m1[(i, i)] = BigInt::from(2 * hi);
        m1[(i, s)] = -BigInt::from(hi);
        m2[(i, i)] = BigInt::from(if i == 0 { hi } else { 2 * hi });
    }
    Ok((m1, m2))
}
