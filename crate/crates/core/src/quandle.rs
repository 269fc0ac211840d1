//! Finite quandles given by their operation tables.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{AxiomViolation, Error, Result};
use crate::permutations::{all_permutations, all_transpositions, Permutation};

/// Largest degree accepted by [`conj_quandle`] (the table has `(n!)²` entries).
pub const MAX_CONJ_DEGREE: usize = 7;

/// A finite quandle on `0..size`; `op(a, b)` is `a ⋆ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    size: usize,
    table: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FiniteQuandle {
    /// Validates a table (`table[a][b] = a ⋆ b`, 0-based) against the three axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let size = table.len();
        let mut flat = Vec::with_capacity(size * size);
        for (a, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(AxiomViolation::Shape {
                    size,
                    detail: format!("row {a} has {} entries", row.len()),
                }
                .into());
            }
            for &x in row {
                if x >= size {
                    return Err(AxiomViolation::Shape {
                        size,
                        detail: format!("entry {x} in row {a} is out of range"),
                    }
                    .into());
                }
                flat.push(x as u32);
            }
        }
        let q = FiniteQuandle {
            size,
            table: flat,
            labels: None,
        };
        q.check_axioms()?;
        Ok(q)
    }

    fn from_flat_unchecked(size: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        FiniteQuandle {
            size,
            table,
            labels,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::InvalidArgument(format!(
                "{} labels for a quandle of size {}",
                labels.len(),
                self.size
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => (a + 1).to_string(),
        }
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    /// Checks idempotence, bijectivity of right translations and
    /// self-distributivity, in that order, reporting the first failure.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        let s = self.size;
        for a in 0..s {
            let v = self.op(a, a);
            if v != a {
                return Err(AxiomViolation::Idempotence { a, value: v });
            }
        }
        for b in 0..s {
            let mut preimage = vec![usize::MAX; s];
            for a in 0..s {
                let x = self.op(a, b);
                if preimage[x] != usize::MAX {
                    return Err(AxiomViolation::Bijectivity {
                        b,
                        a1: preimage[x],
                        a2: a,
                    });
                }
                preimage[x] = a;
            }
        }
        for a in 0..s {
            for b in 0..s {
                for c in 0..s {
                    self.check_distributive(a, b, c)?;
                }
            }
        }
        Ok(())
    }

    /// Self-distributivity at one triple.
    pub fn check_distributive(
        &self,
        a: usize,
        b: usize,
        c: usize,
    ) -> std::result::Result<(), AxiomViolation> {
        if self.op(self.op(a, b), c) != self.op(self.op(a, c), self.op(b, c)) {
            return Err(AxiomViolation::SelfDistributivity { a, b, c });
        }
        Ok(())
    }

    /// Orbits under the inner group generated by all right translations,
    /// each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let s = self.size;
        let mut orbit_of = vec![usize::MAX; s];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..s {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            orbit_of[start] = id;
            let mut queue = VecDeque::from([start]);
            // the right translations are bijections of a finite set, so
            // forward closure already gives the orbit under the group
            while let Some(a) = queue.pop_front() {
                for b in 0..s {
                    let x = self.op(a, b);
                    if orbit_of[x] == usize::MAX {
                        orbit_of[x] = id;
                        members.push(x);
                        queue.push_back(x);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Generators and relations `e_a e_b = e_b e_{a⋆b}` of the structure group.
    pub fn as_presentation(&self) -> QuandlePresentation {
        let generators = (0..self.size)
            .map(|a| format!("e_{}", self.label(a)))
            .collect();
        let mut relations = Vec::with_capacity(self.size * self.size);
        for a in 0..self.size {
            for b in 0..self.size {
                relations.push((a, b, self.op(a, b)));
            }
        }
        QuandlePresentation {
            generators,
            relations,
        }
    }

    /// Parses the text format: the size on the first line, then one line per
    /// element `i` listing `i ⋆ j` for `j = 1..size`, 1-based.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in quandle file")))
        });
        let size = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty quandle file".into()))??;
        let mut table = vec![vec![0; size]; size];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let v = tokens.next().ok_or_else(|| {
                    Error::Parse(format!(
                        "quandle file ends before entry ({}, {})",
                        i + 1,
                        j + 1
                    ))
                })??;
                if v == 0 || v > size {
                    return Err(Error::Parse(format!(
                        "entry {v} at ({}, {}) is outside 1..={size}",
                        i + 1,
                        j + 1
                    )));
                }
                *cell = v - 1;
            }
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing data after quandle table".into()));
        }
        FiniteQuandle::from_table(table)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.size);
        for a in 0..self.size {
            let row: Vec<String> = (0..self.size)
                .map(|b| (self.op(a, b) + 1).to_string())
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// Presentation of `As(Q)`: a generator per element, a relation
/// `e_a e_b = e_b e_c` per ordered pair, stored as `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandlePresentation {
    pub generators: Vec<String>,
    pub relations: Vec<(usize, usize, usize)>,
}

fn conjugation_quandle_of(
    elements: &[Permutation],
    index: impl Fn(&Permutation) -> usize,
) -> FiniteQuandle {
    let s = elements.len();
    let mut table = Vec::with_capacity(s * s);
    for a in elements {
        for b in elements {
            table.push(index(&a.conj_by(b)) as u32);
        }
    }
    let labels = elements.iter().map(|p| p.to_string()).collect();
    FiniteQuandle::from_flat_unchecked(s, table, Some(labels))
}

/// `Conj(Sₙ)`, elements in lexicographic order of their image arrays.
pub fn conj_quandle(n: usize) -> Result<FiniteQuandle> {
    if !(1..=MAX_CONJ_DEGREE).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: MAX_CONJ_DEGREE,
        });
    }
    let elements = all_permutations(n);
    Ok(conjugation_quandle_of(&elements, Permutation::lex_rank))
}

/// The quandle `Tₙ` of transpositions under conjugation, ordered by `(i, j)`.
pub fn dehn_transposition_quandle(n: usize) -> Result<FiniteQuandle> {
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 2,
            max: usize::MAX,
        });
    }
    let elements = all_transpositions(n);
    // (i, j) with i < j, 0-based, sits at i(2n - i - 1)/2 + (j - i - 1)
    let index = |t: &Permutation| {
        let cyc = &t.cycles()[0];
        let (i, j) = (cyc[0] - 1, cyc[1] - 1);
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    };
    Ok(conjugation_quandle_of(&elements, index))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_small_tables() {
        let q = FiniteQuandle::from_table(vec![vec![0]]).unwrap();
        assert_eq!(q.size(), 1);
        let trivial =
            FiniteQuandle::from_table(vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
        assert_eq!(trivial.orbits().len(), 3);
    }

    #[test]
    fn reports_each_axiom() {
        let e = FiniteQuandle::from_table(vec![vec![1, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(
            e,
            Error::Axiom(AxiomViolation::Idempotence { a: 0, value: 1 })
        );
        let e = FiniteQuandle::from_table(vec![vec![0, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(
            e,
            Error::Axiom(AxiomViolation::Bijectivity { b: 0, a1: 0, a2: 1 })
        );
        // translations (1 2), id, (0 1): not closed under conjugation
        let e = FiniteQuandle::from_table(vec![vec![0, 0, 1], vec![2, 1, 0], vec![1, 2, 2]])
            .unwrap_err();
        assert!(matches!(
            e,
            Error::Axiom(AxiomViolation::SelfDistributivity { .. })
        ));
        let e = FiniteQuandle::from_table(vec![vec![0, 1], vec![0]]).unwrap_err();
        assert!(matches!(e, Error::Axiom(AxiomViolation::Shape { .. })));
    }

    #[test]
    fn conjugation_quandles_of_small_symmetric_groups() {
        assert_eq!(conj_quandle(1).unwrap().size(), 1);
        let q3 = conj_quandle(3).unwrap();
        assert_eq!(q3.size(), 6);
        q3.check_axioms().unwrap();
        let mut sizes: Vec<usize> = q3.orbits().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let q4 = conj_quandle(4).unwrap();
        assert_eq!(q4.size(), 24);
        assert_eq!(q4.orbits().len(), 5);
        assert!(conj_quandle(0).is_err());
        assert!(conj_quandle(8).is_err());
    }

    #[test]
    fn transposition_quandles() {
        assert_eq!(dehn_transposition_quandle(2).unwrap().size(), 1);
        for n in 3..7 {
            let t = dehn_transposition_quandle(n).unwrap();
            assert_eq!(t.size(), n * (n - 1) / 2);
            t.check_axioms().unwrap();
            assert_eq!(t.orbits().len(), 1);
        }
        assert!(dehn_transposition_quandle(1).is_err());
    }

    #[test]
    fn presentations_have_a_relation_per_pair() {
        let p = FiniteQuandle::from_table(vec![vec![0]])
            .unwrap()
            .as_presentation();
        assert_eq!((p.generators.len(), p.relations.len()), (1, 1));
        let p = dehn_transposition_quandle(3).unwrap().as_presentation();
        assert_eq!((p.generators.len(), p.relations.len()), (3, 9));
        let p = conj_quandle(3).unwrap().as_presentation();
        assert_eq!((p.generators.len(), p.relations.len()), (6, 36));
    }

    #[test]
    fn text_round_trip() {
        let t = dehn_transposition_quandle(4).unwrap();
        let back = FiniteQuandle::from_text(&t.to_text()).unwrap();
        assert_eq!(back.to_text(), t.to_text());
        assert!(FiniteQuandle::from_text("2\n1 1\n2").is_err());
        assert!(FiniteQuandle::from_text("1\n2").is_err());
        assert!(FiniteQuandle::from_text("").is_err());
    }
}
