//! Words in the generators `e_a` and the `express` / `evaluate` pair.

use serde::{Deserialize, Serialize};

use super::{AElement, ClassVector};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::permutations::{class_representative, Permutation};

/// One letter `e_perm^{exp}`, `exp = ±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub perm: Permutation,
    pub exp: i8,
}

impl Letter {
    fn pos(perm: Permutation) -> Self {
        Letter { perm, exp: 1 }
    }

    fn neg(perm: Permutation) -> Self {
        Letter { perm, exp: -1 }
    }

    fn inverse(&self) -> Self {
        Letter {
            perm: self.perm.clone(),
            exp: -self.exp,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GeneratorWord {
    pub letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn push_power(&mut self, block: &[Letter], k: i64) {
        if k >= 0 {
            for _ in 0..k {
                self.letters.extend_from_slice(block);
            }
        } else {
            let inv: Vec<Letter> = block.iter().rev().map(Letter::inverse).collect();
            for _ in 0..-k {
                self.letters.extend_from_slice(&inv);
            }
        }
    }

    /// Cancels adjacent `e_a^{±1} e_a^{∓1}` pairs.
    pub fn reduced(&self) -> GeneratorWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match out.last() {
                Some(top) if top.perm == l.perm && top.exp == -l.exp => {
                    out.pop();
                }
                _ => out.push(l.clone()),
            }
        }
        GeneratorWord { letters: out }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<LetterJson> = self
            .letters
            .iter()
            .map(|l| LetterJson {
                perm: l.perm.images(),
                exp: l.exp,
            })
            .collect();
        serde_json::to_value(items).expect("serializable")
    }

    /// Parses `[{"perm": [images], "exp": 1 | -1}, …]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let items: Vec<LetterJson> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("word JSON: {e}")))?;
        let letters = items
            .into_iter()
            .map(|it| {
                if it.exp != 1 && it.exp != -1 {
                    return Err(Error::Parse(format!("exponent {} is not ±1", it.exp)));
                }
                Ok(Letter {
                    perm: Permutation::from_images(&it.perm)?,
                    exp: it.exp,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = letters.first() {
            let n = first.perm.degree();
            if let Some(bad) = letters.iter().find(|l| l.perm.degree() != n) {
                return Err(Error::DegreeMismatch(n, bad.perm.degree()));
            }
        }
        Ok(GeneratorWord { letters })
    }
}

#[derive(Serialize, Deserialize)]
struct LetterJson {
    perm: Vec<usize>,
    exp: i8,
}

/// The letters of `t_λ` for a non-transposition class `λ`.
fn t_block(lambda: &Partition, n: usize) -> Result<Vec<Letter>> {
    let rep = class_representative(lambda, n)?;
    let mut block = vec![Letter::pos(rep.clone())];
    block.extend(rep.transposition_word().into_iter().rev().map(Letter::neg));
    Ok(block)
}

/// A word in the generators evaluating to `f`.
///
/// Central factors `t_λ` absorb every non-transposition class coordinate,
/// the projection is then spelled by its minimal transposition word, and the
/// remaining (even) transposition-class coordinate is made up by `(e_{(1 2)})^{±2}`.
pub fn express(f: &AElement) -> Result<GeneratorWord> {
    let n = f.degree_n();
    let transposition = Partition::transposition_class(n);
    let mut word = GeneratorWord::default();
    let mut covered = ClassVector::zero(n);

    for (lambda, x) in f.ab().iter() {
        if Some(lambda) == transposition.as_ref() {
            continue;
        }
        word.push_power(&t_block(lambda, n)?, x);
        covered = covered.add(&super::central_t(lambda, n)?.ab().scale(x));
    }

    let perm_word = f.pi().transposition_word();
    for t in &perm_word {
        covered.add_at(&t.cycle_type(), 1);
    }
    word.letters.extend(perm_word.into_iter().map(Letter::pos));

    if let Some(tc) = &transposition {
        let residue = f.ab().get(tc) - covered.get(tc);
        if residue % 2 != 0 {
            return Err(Error::Constraint(format!(
                "odd residue while expressing {f}"
            )));
        }
        let tau = Permutation::transposition(n, 1, 2)?;
        let square = [Letter::pos(tau.clone()), Letter::pos(tau)];
        word.push_power(&square, residue / 2);
    }
    Ok(word.reduced())
}

/// Product of the letters of `w` in `A(Sₙ)` of degree `n`.
pub fn evaluate(w: &GeneratorWord, n: usize) -> Result<AElement> {
    super::guard_degree(n)?;
    let mut acc = AElement::identity(n);
    for l in &w.letters {
        let g = AElement::generator(&l.perm);
        let g = if l.exp < 0 { g.inverse() } else { g };
        acc = acc.multiply(&g)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn identity_expresses_as_empty_word() {
        assert!(express(&AElement::identity(4)).unwrap().is_empty());
    }

    #[test]
    fn generators_round_trip() {
        for s in ["(1 2)", "(1 2 3)", "()", "(1 2)(3 4)", "(1 4 2 3)"] {
            let g = AElement::generator(&cyc(4, s));
            let w = express(&g).unwrap();
            assert_eq!(evaluate(&w, 4).unwrap(), g, "{s}");
        }
    }

    #[test]
    fn transposition_with_extra_square() {
        let t: Partition = "2,1".parse().unwrap();
        let f = AElement::new(cyc(3, "(1 2)"), ClassVector::unit(&t).scale(3)).unwrap();
        let w = express(&f).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(evaluate(&w, 3).unwrap(), f);
    }

    #[test]
    fn word_json_round_trip() {
        let f = AElement::new(
            cyc(4, "(1 2 3)"),
            ClassVector::from_coords(
                4,
                [("4".parse().unwrap(), -2), ("2,1,1".parse().unwrap(), 4)],
            )
            .unwrap(),
        )
        .unwrap();
        let w = express(&f).unwrap();
        let back = GeneratorWord::from_json(&w.to_json().to_string()).unwrap();
        assert_eq!(back, w);
        assert_eq!(evaluate(&back, 4).unwrap(), f);
        assert!(GeneratorWord::from_json(r#"[{"perm": [2, 1], "exp": 2}]"#).is_err());
        assert!(GeneratorWord::from_json(
            r#"[{"perm": [2, 1], "exp": 1}, {"perm": [1, 2, 3], "exp": 1}]"#
        )
        .is_err());
    }
}
