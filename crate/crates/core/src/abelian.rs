//! Integer matrices, Smith normal form, and finitely generated abelian groups.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix with `cols` columns from row vectors.
    pub fn from_rows<T: Into<BigInt> + Copy>(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x.into();
            }
        }
        Ok(m)
    }

    pub fn diagonal<T: Into<BigInt> + Copy>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = x.into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Diagonal entries `D[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` in Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, all positive and each dividing the next.
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        self.d
            .diagonal_entries()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.nonzero_diagonal().len()
    }
}

/// Smith normal form with transforms.
///
/// Pivot rule: the entry of smallest nonzero absolute value in the remaining
/// block, ties broken by row-major position. The output is deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = smallest_entry(&d, t) else {
                return SmithForm { d, u, v };
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let offender = (t + 1..rows)
                .cartesian_product(t + 1..cols)
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d, u, v }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Inverse of a unimodular square matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension(format!(
            "inverse of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    // U m V = D = I, so m⁻¹ = V U
    let form = smith_normal_form(m);
    if form.d != IntMatrix::identity(m.rows()) {
        return Err(Error::InvalidArgument("matrix is not unimodular".into()));
    }
    form.v.mul(&form.u)
}

impl IntMatrix {
    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }
}

/// Gcd of all `i × i` minors (0 if all vanish). Valid for `1 ≤ i ≤ min(rows, cols)`.
pub fn minor_gcd(m: &IntMatrix, i: usize) -> Result<BigInt> {
    let max = m.rows.min(m.cols);
    if i == 0 || i > max {
        return Err(Error::OutOfRange {
            what: "minor size",
            value: i,
            min: 1,
            max,
        });
    }
    let mut g = BigInt::zero();
    for rows in (0..m.rows).combinations(i) {
        for cols in (0..m.cols).combinations(i) {
            let det = m.submatrix(&rows, &cols).determinant()?;
            g = g.gcd(&det);
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

/// Finitely generated abelian group `Z^r ⊕ Z_{d1} ⊕ … ⊕ Z_{dk}` in
/// invariant-factor form: `d1 | d2 | … | dk`, every `di ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z^free_rank ⊕ ⊕ Z_{o}` for arbitrary cyclic orders; orders of 1 are
    /// dropped and orders of 0 count as free factors.
    pub fn from_cyclic(free_rank: usize, orders: &[u64]) -> Self {
        let mut free = free_rank;
        let mut prime_powers: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &o in orders {
            if o == 0 {
                free += 1;
                continue;
            }
            for (p, e) in factorize(o) {
                prime_powers.entry(p).or_default().push(e);
            }
        }
        AbelianGroup {
            free_rank: free,
            invariant_factors: invariant_factors_from_primary(prime_powers),
        }
    }

    /// Reads off the cokernel of a matrix already in Smith normal form.
    fn from_smith(form: &SmithForm, num_gens: usize) -> Result<Self> {
        let diag = form.nonzero_diagonal();
        let mut orders = Vec::new();
        for d in &diag {
            if !d.is_one() {
                orders.push(d.to_u64().ok_or_else(|| {
                    Error::Overflow(format!("invariant factor {d} exceeds 64 bits"))
                })?);
            }
        }
        Ok(AbelianGroup {
            free_rank: num_gens - diag.len(),
            invariant_factors: orders,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<u64> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .copied()
            .collect();
        AbelianGroup::from_cyclic(self.free_rank + other.free_rank, &orders)
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self == other
    }

    /// Prime → exponents of the prime-power cyclic factors, largest first.
    pub fn primary_decomposition(&self) -> BTreeMap<u64, Vec<u32>> {
        let mut out: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &d in &self.invariant_factors {
            for (p, e) in factorize(d) {
                out.entry(p).or_default().push(e);
            }
        }
        for exps in out.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        out
    }

    /// `Z^r x Z_{d1} x …`.
    pub fn invariant_factor_string(&self) -> String {
        let mut terms = Vec::new();
        if self.free_rank > 0 {
            terms.push(power_term("Z", self.free_rank));
        }
        terms.extend(self.invariant_factors.iter().map(|d| format!("Z_{d}")));
        join_terms(terms)
    }

    /// Prime-power factors grouped by order, e.g. `Z^20 x Z_2^3 x Z_3`.
    pub fn primary_string(&self) -> String {
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for (p, exps) in self.primary_decomposition() {
            for e in exps {
                *counts.entry(p.pow(e)).or_default() += 1;
            }
        }
        let mut terms = Vec::new();
        if self.free_rank > 0 {
            terms.push(power_term("Z", self.free_rank));
        }
        terms.extend(
            counts
                .into_iter()
                .map(|(q, c)| power_term(&format!("Z_{q}"), c)),
        );
        join_terms(terms)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.primary_string())
    }
}

fn power_term(base: &str, exp: usize) -> String {
    if exp == 1 {
        base.to_string()
    } else {
        format!("{base}^{exp}")
    }
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" x ")
    }
}

fn invariant_factors_from_primary(mut primary: BTreeMap<u64, Vec<u32>>) -> Vec<u64> {
    for exps in primary.values_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
    }
    let k = primary.values().map(Vec::len).max().unwrap_or(0);
    // factor i (largest first) takes the i-th largest power of every prime
    let mut factors: Vec<u64> = (0..k)
        .map(|i| {
            primary
                .iter()
                .filter_map(|(p, exps)| exps.get(i).map(|&e| p.pow(e)))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}

fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= x {
        if x.is_multiple_of(p) {
            let mut e = 0;
            while x.is_multiple_of(p) {
                x /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Abelian group with `num_gens` generators subject to the given relation vectors.
pub fn abelian_from_relations(num_gens: usize, relations: &[Vec<i64>]) -> Result<AbelianGroup> {
    let m = IntMatrix::from_rows(num_gens, relations)?;
    abelian_from_matrix(&m)
}

/// Cokernel of the row lattice of `m` in `Z^{cols}`.
pub fn abelian_from_matrix(m: &IntMatrix) -> Result<AbelianGroup> {
    AbelianGroup::from_smith(&smith_normal_form(m), m.cols())
}

/// Coordinates map from `Z^{num_gens}` onto a presented abelian group.
///
/// Generator vectors are written in the basis adapted to the relation
/// lattice; coordinate `i` is reduced modulo the `i`-th diagonal entry and
/// coordinates with diagonal entry 1 are dropped.
#[derive(Debug, Clone)]
pub struct CokernelMap {
    group: AbelianGroup,
    v: IntMatrix,
    // per kept coordinate: (column of V, modulus; 0 means free)
    kept: Vec<(usize, BigInt)>,
}

impl CokernelMap {
    pub fn new(num_gens: usize, relations: &IntMatrix) -> Result<Self> {
        if relations.cols() != num_gens {
            return Err(Error::Dimension(format!(
                "relation matrix has {} columns for {num_gens} generators",
                relations.cols()
            )));
        }
        let form = smith_normal_form(relations);
        let group = AbelianGroup::from_smith(&form, num_gens)?;
        let diag = form.d.diagonal_entries();
        let kept = (0..num_gens)
            .filter_map(|j| {
                let d = diag.get(j).cloned().unwrap_or_else(BigInt::zero);
                (!d.is_one()).then_some((j, d))
            })
            .collect();
        Ok(CokernelMap {
            group,
            v: form.v,
            kept,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Number of coordinates of an image vector.
    pub fn width(&self) -> usize {
        self.kept.len()
    }

    /// Image of a generator-exponent vector; torsion coordinates lie in `0..d`.
    pub fn image(&self, x: &[i64]) -> Vec<BigInt> {
        self.kept
            .iter()
            .map(|(j, d)| {
                let mut s = BigInt::zero();
                for (k, &xk) in x.iter().enumerate() {
                    if xk != 0 {
                        s += &self.v[(k, *j)] * BigInt::from(xk);
                    }
                }
                if d.is_zero() {
                    s
                } else {
                    s.mod_floor(d)
                }
            })
            .collect()
    }

    pub fn is_zero_image(&self, x: &[i64]) -> bool {
        self.image(x).iter().all(Zero::is_zero)
    }
}
