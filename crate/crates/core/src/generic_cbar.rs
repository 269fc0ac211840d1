//! Finite permutation groups given by conjugation and power relations
//! between generators, and their structure groups as pullbacks.
//!
//! Everything is enumerated: the group by breadth-first closure, classes by
//! closure under conjugation. Elements are addressed by their index in BFS
//! order; index 0 is the identity.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::abelian::{abelian_from_relations, AbelianGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::permutations::Permutation;

/// Largest group order accepted by [`validate`].
pub const MAX_GROUP_ORDER: usize = 20_000;
/// Above this order the corollary checks only test against generators.
pub const MAX_EXHAUSTIVE_ORDER: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbarPresentation {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    /// `(i, j, k)`: `gen_j⁻¹ gen_i gen_j = gen_k`.
    pub conj_relations: Vec<(usize, usize, usize)>,
    /// `(i, k)`: `gen_i^k = 1`.
    pub power_relations: Vec<(usize, u64)>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    degree: usize,
    generators: Vec<Vec<usize>>,
    #[serde(default)]
    conj_relations: Vec<(usize, usize, usize)>,
    #[serde(default)]
    power_relations: Vec<(usize, u64)>,
}

impl CbarPresentation {
    pub fn new(
        degree: usize,
        generators: Vec<Permutation>,
        conj_relations: Vec<(usize, usize, usize)>,
        power_relations: Vec<(usize, u64)>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let g = generators.len();
        let out_of_range = |i: usize| {
            (i >= g).then(|| {
                Error::InvalidArgument(format!("generator index {i} out of range (have {g})"))
            })
        };
        for &(i, j, k) in &conj_relations {
            if let Some(e) = [i, j, k].into_iter().find_map(out_of_range) {
                return Err(e);
            }
        }
        for &(i, k) in &power_relations {
            if let Some(e) = out_of_range(i) {
                return Err(e);
            }
            if k < 2 {
                return Err(Error::InvalidArgument(format!(
                    "power relation exponent {k} for generator {i} must be at least 2"
                )));
            }
        }
        Ok(CbarPresentation {
            degree,
            generators,
            conj_relations,
            power_relations,
        })
    }

    /// Parses the JSON layout; generator images are 1-based, indices 0-based.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PresentationJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("presentation JSON: {e}")))?;
        let generators = raw
            .generators
            .iter()
            .map(|imgs| Permutation::from_images(imgs))
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            raw.degree,
            generators,
            raw.conj_relations,
            raw.power_relations,
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PresentationJson {
            degree: self.degree,
            generators: self.generators.iter().map(Permutation::images).collect(),
            conj_relations: self.conj_relations.clone(),
            power_relations: self.power_relations.clone(),
        })
        .expect("serializable")
    }

    /// `Sₙ` on `σᵢ = (i i+1)` and `σ_{i,i+1} = (i i+2)`, with `σᵢ ⋆ σⱼ = σᵢ`
    /// for `i < j−1`, `σᵢ ⋆ σᵢ₊₁ = σ_{i,i+1}`, `σ_{i,i+1} ⋆ σᵢ = σᵢ₊₁`, and a
    /// single power relation `σ₁² = 1` for the one generator class.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange {
                what: "n",
                value: n,
                min: 2,
                max: usize::MAX,
            });
        }
        let mut gens: Vec<Permutation> = (1..n)
            .map(|i| Permutation::transposition(n, i, i + 1))
            .collect::<Result<_>>()?;
        // σ_i at index i-1, σ_{i,i+1} at index n-2+i
        for i in 1..n.saturating_sub(1) {
            gens.push(Permutation::transposition(n, i, i + 2)?);
        }
        let s = |i: usize| i - 1;
        let s2 = |i: usize| n - 2 + i;
        let mut conj = Vec::new();
        for i in 1..n {
            for j in i + 2..n {
                conj.push((s(i), s(j), s(i)));
            }
        }
        for i in 1..n - 1 {
            conj.push((s(i), s(i + 1), s2(i)));
            conj.push((s2(i), s(i), s(i + 1)));
        }
        Self::new(n, gens, conj, vec![(0, 2)])
    }

    /// Symmetries of the square with vertices 1, 2, 3, 4 in cyclic order:
    /// `a = (1 3)`, `b = (1 2)(3 4)`, `c = (2 4)`.
    pub fn dihedral4() -> Self {
        let gens = ["(1 3)", "(1 2)(3 4)", "(2 4)"]
            .iter()
            .map(|s| Permutation::parse_cycles(4, s).expect("fixture"))
            .collect();
        Self::new(4, gens, vec![(0, 1, 2), (0, 2, 0)], vec![(0, 2), (1, 2)]).expect("fixture")
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree.max(1), Vec::new(), Vec::new(), Vec::new()).expect("fixture")
    }
}

/// A validated presentation together with the enumerated group.
#[derive(Debug, Clone)]
pub struct FiniteGroupTable {
    presentation: CbarPresentation,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    // BFS tree: (parent, generator) per element, None for the identity
    parent: Vec<Option<(usize, usize)>>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    generator_class: Vec<usize>,
    /// class → exponent `k(O)` for generator classes.
    class_power: HashMap<usize, u64>,
}

pub fn validate(p: &CbarPresentation) -> Result<FiniteGroupTable> {
    validate_with(p, MAX_GROUP_ORDER)
}

pub fn validate_with(p: &CbarPresentation, max_order: usize) -> Result<FiniteGroupTable> {
    for &(i, j, k) in &p.conj_relations {
        let lhs = p.generators[i].conj_by(&p.generators[j]);
        if lhs != p.generators[k] {
            return Err(Error::RelationFails(format!(
                "({i}, {j}, {k}): gen{j}^-1 gen{i} gen{j} = {lhs}, but gen{k} = {}",
                p.generators[k]
            )));
        }
    }
    for &(i, k) in &p.power_relations {
        let power = p.generators[i].pow(k as i64);
        if !power.is_identity() {
            return Err(Error::RelationFails(format!(
                "({i}, {k}): gen{i}^{k} = {power}"
            )));
        }
    }

    let id = Permutation::identity(p.degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut parent = vec![None];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (gi, g) in p.generators.iter().enumerate() {
            let y = elements[x].then(g);
            if index.contains_key(&y) {
                continue;
            }
            if elements.len() >= max_order {
                return Err(Error::GroupTooLarge(max_order));
            }
            index.insert(y.clone(), elements.len());
            elements.push(y);
            parent.push(Some((x, gi)));
            queue.push_back(elements.len() - 1);
        }
    }

    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..elements.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = vec![start];
        class_of[start] = c;
        let mut i = 0;
        while i < members.len() {
            let x = &elements[members[i]];
            for g in &p.generators {
                let y = index[&x.conj_by(g)];
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }

    let generator_class: Vec<usize> = p.generators.iter().map(|g| class_of[index[g]]).collect();
    let mut class_power: HashMap<usize, u64> = HashMap::new();
    let mut class_power_source: HashMap<usize, usize> = HashMap::new();
    for &(i, k) in &p.power_relations {
        let c = generator_class[i];
        if let Some(&prev) = class_power_source.get(&c) {
            return Err(Error::DuplicatePowerRelation(prev, i));
        }
        let order = p.generators[i].order();
        if k != order {
            return Err(Error::PowerOrderMismatch {
                generator: i,
                exponent: k,
                order,
            });
        }
        class_power_source.insert(c, i);
        class_power.insert(c, k);
    }
    if let Some(i) =
        (0..p.generators.len()).find(|&i| !class_power.contains_key(&generator_class[i]))
    {
        return Err(Error::InfiniteOrderGenerator(i));
    }

    Ok(FiniteGroupTable {
        presentation: p.clone(),
        elements,
        index,
        parent,
        class_of,
        classes,
        generator_class,
        class_power,
    })
}

impl FiniteGroupTable {
    pub fn presentation(&self) -> &CbarPresentation {
        &self.presentation
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Index of `b⁻¹ab`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].conj_by(&self.elements[b])]
    }

    /// Shortest word (generator indices, earliest generator first on ties).
    pub fn word(&self, mut x: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, g)) = self.parent[x] {
            w.push(g);
            x = p;
        }
        w.reverse();
        w
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_members(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    /// Classes containing a generator, ascending.
    pub fn generator_classes(&self) -> Vec<usize> {
        self.generator_class
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn non_generator_classes(&self) -> Vec<usize> {
        let gen: BTreeSet<usize> = self.generator_class.iter().copied().collect();
        (0..self.classes.len())
            .filter(|c| !gen.contains(c))
            .collect()
    }

    /// `k(O)` for a generator class.
    pub fn class_power(&self, c: usize) -> Option<u64> {
        self.class_power.get(&c).copied()
    }

    /// Generator class → (first generator in it, `k(O)`), ascending by class.
    fn generator_class_data(&self) -> Vec<(usize, usize, u64)> {
        self.generator_classes()
            .into_iter()
            .map(|c| {
                let gen = self
                    .generator_class
                    .iter()
                    .position(|&x| x == c)
                    .expect("generator class");
                (c, gen, self.class_power[&c])
            })
            .collect()
    }

    /// Abelianization by Smith normal form of the abelianized relations.
    pub fn ab_group(&self) -> Result<AbelianGroup> {
        let g = self.presentation.generators.len();
        let mut rows = Vec::new();
        for &(i, _, k) in &self.presentation.conj_relations {
            let mut r = vec![0i64; g];
            r[i] += 1;
            r[k] -= 1;
            rows.push(r);
        }
        for &(i, k) in &self.presentation.power_relations {
            let mut r = vec![0i64; g];
            r[i] = k as i64;
            rows.push(r);
        }
        abelian_from_relations(g, &rows)
    }

    /// Image of `x` in `⊕_{generator classes} Z_{k(O)}`: letters of its word per class.
    pub fn ab_of_element(&self, x: usize) -> Vec<u64> {
        let data = self.generator_class_data();
        let mut counts = vec![0u64; data.len()];
        for gi in self.word(x) {
            let c = self.generator_class[gi];
            let slot = data.iter().position(|d| d.0 == c).expect("generator class");
            counts[slot] += 1;
        }
        counts.iter().zip(&data).map(|(x, d)| x % d.2).collect()
    }

    /// `π̄(c_O)`; all members of the class must agree.
    pub fn pibar(&self, class: usize) -> Result<Vec<u64>> {
        let members = &self.classes[class];
        let first = self.ab_of_element(members[0]);
        for &m in members.iter().skip(1).take(8) {
            let other = self.ab_of_element(m);
            if other != first {
                return Err(Error::CorollaryFailed {
                    corollary: "pibar",
                    detail: format!(
                        "class {class}: {} maps to {first:?} but {} maps to {other:?}",
                        self.elements[members[0]], self.elements[m]
                    ),
                });
            }
        }
        Ok(first)
    }

    fn add_ab(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(self.generator_class_data())
            .map(|((x, y), d)| (x + y) % d.2)
            .collect()
    }

    /// Subgroup generated by `seeds`, closed under conjugation by the generators.
    fn normal_closure(&self, seeds: &[usize]) -> BTreeSet<usize> {
        let mut gens: Vec<usize> = seeds.to_vec();
        loop {
            let mut h = BTreeSet::from([0usize]);
            let mut queue = VecDeque::from([0usize]);
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    let y = self.mul(x, s);
                    if h.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            let missing: Vec<usize> = gens
                .iter()
                .flat_map(|&s| {
                    self.presentation
                        .generators
                        .iter()
                        .map(move |g| self.index[&self.elements[s].conj_by(g)])
                })
                .filter(|y| !h.contains(y))
                .collect();
            if missing.is_empty() {
                return h;
            }
            gens.extend(missing);
        }
    }

    fn generator_indices(&self) -> Vec<usize> {
        self.presentation
            .generators
            .iter()
            .map(|g| self.index[g])
            .collect()
    }

    pub fn derived_subgroup(&self) -> BTreeSet<usize> {
        let gens = self.generator_indices();
        let mut seeds = Vec::new();
        for &a in &gens {
            for &b in &gens {
                // a⁻¹ b⁻¹ a b
                seeds.push(self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)));
            }
        }
        self.normal_closure(&seeds)
    }

    pub fn center(&self) -> BTreeSet<usize> {
        let gens = &self.presentation.generators;
        (0..self.order())
            .filter(|&x| gens.iter().all(|g| self.elements[x].commutes_with(g)))
            .collect()
    }

    pub fn build_a(&self) -> PullbackGroup<'_> {
        PullbackGroup { table: self }
    }
}

/// Element `(g, x)` of the pullback, `g` an element index, `x` over classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CbarElement {
    pub g: usize,
    pub x: Vec<i64>,
}

/// `e_a^{exp}` with `a` an element index.
pub type CbarLetter = (usize, i8);

/// `A(G)` as the pullback of `G → Ab(G) ← Z^{classes}`.
#[derive(Debug, Clone, Copy)]
pub struct PullbackGroup<'a> {
    table: &'a FiniteGroupTable,
}

impl<'a> PullbackGroup<'a> {
    pub fn table(&self) -> &'a FiniteGroupTable {
        self.table
    }

    fn pibar_vec(&self, x: &[i64]) -> Vec<u64> {
        let data = self.table.generator_class_data();
        let mut acc = vec![0i64; data.len()];
        for (c, &xc) in x.iter().enumerate() {
            if xc == 0 {
                continue;
            }
            for (slot, &v) in self
                .table
                .ab_of_element(self.table.classes[c][0])
                .iter()
                .enumerate()
            {
                acc[slot] += xc * v as i64;
            }
        }
        acc.iter()
            .zip(&data)
            .map(|(&a, d)| a.rem_euclid(d.2 as i64) as u64)
            .collect()
    }

    pub fn element(&self, g: usize, x: Vec<i64>) -> Result<CbarElement> {
        if g >= self.table.order() || x.len() != self.table.class_count() {
            return Err(Error::Dimension(format!(
                "element ({g}, {x:?}) does not fit a group of order {} with {} classes",
                self.table.order(),
                self.table.class_count()
            )));
        }
        if self.table.ab_of_element(g) != self.pibar_vec(&x) {
            return Err(Error::Constraint(format!(
                "Ab({}) differs from the image of {x:?}",
                self.table.elements[g]
            )));
        }
        Ok(CbarElement { g, x })
    }

    pub fn identity(&self) -> CbarElement {
        CbarElement {
            g: 0,
            x: vec![0; self.table.class_count()],
        }
    }

    /// `e_a = (a, c_{class(a)})`.
    pub fn generator(&self, a: usize) -> CbarElement {
        let mut x = vec![0; self.table.class_count()];
        x[self.table.class_of[a]] = 1;
        CbarElement { g: a, x }
    }

    pub fn multiply(&self, p: &CbarElement, q: &CbarElement) -> CbarElement {
        CbarElement {
            g: self.table.mul(p.g, q.g),
            x: p.x.iter().zip(&q.x).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self, p: &CbarElement) -> CbarElement {
        CbarElement {
            g: self.table.inv(p.g),
            x: p.x.iter().map(|a| -a).collect(),
        }
    }

    pub fn pi(&self, p: &CbarElement) -> usize {
        p.g
    }

    pub fn ab<'b>(&self, p: &'b CbarElement) -> &'b [i64] {
        &p.x
    }

    pub fn evaluate(&self, word: &[CbarLetter]) -> CbarElement {
        word.iter().fold(self.identity(), |acc, &(a, e)| {
            let g = self.generator(a);
            let g = if e < 0 { self.inverse(&g) } else { g };
            self.multiply(&acc, &g)
        })
    }

    /// Word for the central basis element `t_O`.
    pub fn t_word(&self, class: usize) -> Vec<CbarLetter> {
        let t = self.table;
        if let Some(k) = t.class_power(class) {
            let gen = t
                .generator_class
                .iter()
                .position(|&c| c == class)
                .expect("generator class");
            let a = t.index[&t.presentation.generators[gen]];
            return vec![(a, 1); k as usize];
        }
        let rep = t.classes[class][0];
        let mut w = vec![(rep, 1)];
        w.extend(
            t.word(rep)
                .into_iter()
                .rev()
                .map(|gi| (t.index[&t.presentation.generators[gi]], -1)),
        );
        w
    }

    /// Class coordinates of `t_O`.
    pub fn t_vector(&self, class: usize) -> Vec<i64> {
        self.evaluate(&self.t_word(class)).x
    }

    pub fn express(&self, p: &CbarElement) -> Result<Vec<CbarLetter>> {
        let t = self.table;
        let mut word: Vec<CbarLetter> = Vec::new();
        let mut covered = vec![0i64; t.class_count()];
        let push_power = |word: &mut Vec<CbarLetter>, block: &[CbarLetter], k: i64| {
            if k >= 0 {
                for _ in 0..k {
                    word.extend_from_slice(block);
                }
            } else {
                let inv: Vec<CbarLetter> = block.iter().rev().map(|&(a, e)| (a, -e)).collect();
                for _ in 0..-k {
                    word.extend_from_slice(&inv);
                }
            }
        };
        for c in t.non_generator_classes() {
            if p.x[c] == 0 {
                continue;
            }
            push_power(&mut word, &self.t_word(c), p.x[c]);
            for (cv, tv) in covered.iter_mut().zip(self.t_vector(c)) {
                *cv += p.x[c] * tv;
            }
        }
        for gi in t.word(p.g) {
            word.push((t.index[&t.presentation.generators[gi]], 1));
            covered[t.generator_class[gi]] += 1;
        }
        for c in t.generator_classes() {
            let k = t.class_power[&c] as i64;
            let residue = p.x[c] - covered[c];
            if residue % k != 0 {
                return Err(Error::Constraint(format!(
                    "residue {residue} in class {c} is not a multiple of {k}"
                )));
            }
            push_power(&mut word, &self.t_word(c), residue / k);
        }
        Ok(word)
    }
}

/// Outcome of the structure-group corollary checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub order: usize,
    pub classes: usize,
    pub generator_classes: usize,
    pub non_generator_classes: usize,
    pub ab: AbelianGroup,
    pub center_order: usize,
    /// Whether the center of the pullback is strictly larger than `Ker π`.
    pub center_exceeds_kernel: bool,
    pub derived_order: usize,
    pub torsion_order: usize,
    pub kernel_rank: usize,
    pub exhaustive: bool,
}

impl fmt::Display for CorollaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order: {}", self.order)?;
        writeln!(
            f,
            "classes: {} ({} generator, {} other)",
            self.classes, self.generator_classes, self.non_generator_classes
        )?;
        writeln!(f, "Ab(G): {}", self.ab)?;
        writeln!(
            f,
            "center: preimage of Z(G), |Z(G)| = {}{}",
            self.center_order,
            if self.center_exceeds_kernel {
                ", strictly larger than Ker(pi)"
            } else {
                ""
            }
        )?;
        writeln!(
            f,
            "torsion: {} elements, equal to the derived subgroup",
            self.torsion_order
        )?;
        writeln!(
            f,
            "derived subgroup: maps isomorphically onto G' of order {}",
            self.derived_order
        )?;
        write!(f, "Ker(pi): free abelian of rank {}", self.kernel_rank)
    }
}

fn fail(corollary: &'static str, detail: String) -> Error {
    Error::CorollaryFailed { corollary, detail }
}

pub fn check_corollaries(t: &FiniteGroupTable) -> Result<CorollaryReport> {
    let pb = t.build_a();
    let exhaustive = t.order() <= MAX_EXHAUSTIVE_ORDER;
    let probes: Vec<usize> = if exhaustive {
        (0..t.order()).collect()
    } else {
        t.generator_indices()
    };
    let gen_classes = t.generator_class_data();

    // Ab(G) = ⊕ Z_{k(O)}, of order [G : G']
    let ab = t.ab_group()?;
    let ks: Vec<u64> = gen_classes.iter().map(|d| d.2).collect();
    let expected = AbelianGroup::from_cyclic(0, &ks);
    if ab != expected {
        return Err(fail(
            "abelianization",
            format!("relation matrix gives {ab}, expected {expected}"),
        ));
    }
    let derived = t.derived_subgroup();
    if ab.free_rank != 0 || ab.torsion_order() * derived.len() as u128 != t.order() as u128 {
        return Err(fail(
            "abelianization",
            format!(
                "|Ab| = {} but [G : G'] = {}/{}",
                ab.torsion_order(),
                t.order(),
                derived.len()
            ),
        ));
    }
    for c in 0..t.class_count() {
        t.pibar(c)?;
    }
    for x in 0..t.order() {
        for gi in 0..t.presentation.generators.len() {
            let y = t.index[&t.elements[x].then(&t.presentation.generators[gi])];
            let one = t.ab_of_element(t.index[&t.presentation.generators[gi]]);
            if t.ab_of_element(y) != t.add_ab(&t.ab_of_element(x), &one) {
                return Err(fail(
                    "abelianization",
                    format!("Ab is not additive at {}", t.elements[x]),
                ));
            }
        }
    }

    // Ker π is free on the t_O
    let n = t.class_count();
    let rows: Vec<Vec<i64>> = (0..n).map(|c| pb.t_vector(c)).collect();
    for (c, row) in rows.iter().enumerate() {
        if !t.elements[pb.evaluate(&pb.t_word(c)).g].is_identity() {
            return Err(fail(
                "kernel",
                format!("t for class {c} does not project to 1 ({row:?})"),
            ));
        }
    }
    let det = IntMatrix::from_rows(n, &rows)?.determinant()?;
    let det = det.abs().to_u128().unwrap_or(u128::MAX);
    if det == 0 || det != ab.torsion_order() {
        return Err(fail(
            "kernel",
            format!(
                "t-basis has determinant {det}, expected index |Ab(G)| = {}",
                ab.torsion_order()
            ),
        ));
    }

    // center of A(G) is π⁻¹(Z(G))
    let center = t.center();
    let lift = |x: usize| {
        pb.evaluate(
            &t.word(x)
                .iter()
                .map(|&gi| (t.index[&t.presentation.generators[gi]], 1))
                .collect::<Vec<_>>(),
        )
    };
    for x in 0..t.order() {
        let f = lift(x);
        let central = probes.iter().all(|&a| {
            let e = pb.generator(a);
            pb.multiply(&f, &e) == pb.multiply(&e, &f)
        });
        if central != center.contains(&x) {
            return Err(fail(
                "center",
                format!(
                    "lift of {} central in A(G): {central}, in Z(G): {}",
                    t.elements[x], !central
                ),
            ));
        }
    }

    // torsion {(g, 0) : Ab(g) = 0} is exactly G'
    let zero = vec![0u64; gen_classes.len()];
    let torsion: BTreeSet<usize> = (0..t.order())
        .filter(|&x| t.ab_of_element(x) == zero)
        .collect();
    if torsion != derived {
        return Err(fail(
            "torsion",
            format!(
                "{} elements with trivial Ab vs |G'| = {}",
                torsion.len(),
                derived.len()
            ),
        ));
    }
    for &x in &torsion {
        let f = pb.element(x, vec![0; n])?;
        let order = t.elements[x].order() as usize;
        let mut acc = pb.identity();
        for _ in 0..order {
            acc = pb.multiply(&acc, &f);
        }
        if acc != pb.identity() {
            return Err(fail(
                "torsion",
                format!("({}, 0) has infinite order", t.elements[x]),
            ));
        }
    }

    // derived subgroup of A(G) maps isomorphically onto G'
    let mut commutators = Vec::new();
    for &a in &probes {
        for &b in &probes {
            let (ea, eb) = (pb.generator(a), pb.generator(b));
            let c = pb.multiply(
                &pb.multiply(&pb.inverse(&ea), &pb.inverse(&eb)),
                &pb.multiply(&ea, &eb),
            );
            if c.x.iter().any(|&v| v != 0) {
                return Err(fail(
                    "derived",
                    format!("commutator of e_{a}, e_{b} leaves the zero section"),
                ));
            }
            commutators.push(c.g);
        }
    }
    let derived_a = t.normal_closure(&commutators);
    if derived_a != derived {
        return Err(fail(
            "derived",
            format!(
                "image has {} elements, G' has {}",
                derived_a.len(),
                derived.len()
            ),
        ));
    }

    Ok(CorollaryReport {
        order: t.order(),
        classes: n,
        generator_classes: gen_classes.len(),
        non_generator_classes: n - gen_classes.len(),
        ab,
        center_order: center.len(),
        center_exceeds_kernel: center.len() > 1,
        derived_order: derived.len(),
        torsion_order: torsion.len(),
        kernel_rank: n,
        exhaustive,
    })
}

/// A lifted presentation: generators with conjugation relations, and
/// centrality relations `(i, k, j)` meaning `e_i^k e_j = e_j e_i^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftPresentation {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    pub conj_relations: Vec<(usize, usize, usize)>,
    pub power_relations: Vec<(usize, u64)>,
    pub centrality_relations: Vec<(usize, u64, usize)>,
}

impl fmt::Display for LiftPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            writeln!(f, "gen{i} = {g:?}")?;
        }
        for (i, j, k) in &self.conj_relations {
            writeln!(f, "gen{j}^-1 gen{i} gen{j} = gen{k}")?;
        }
        for (i, k) in &self.power_relations {
            writeln!(f, "gen{i}^{k} = 1")?;
        }
        for (i, k, j) in &self.centrality_relations {
            writeln!(f, "gen{i}^{k} gen{j} = gen{j} gen{i}^{k}")?;
        }
        Ok(())
    }
}

/// `(Gᴬ, Gᴰ)`: drop the power relations, or replace each by centrality of the power.
pub fn export_lifts(p: &CbarPresentation) -> (LiftPresentation, LiftPresentation) {
    let generators: Vec<Vec<usize>> = p.generators.iter().map(Permutation::images).collect();
    let artin = LiftPresentation {
        degree: p.degree,
        generators: generators.clone(),
        conj_relations: p.conj_relations.clone(),
        power_relations: Vec::new(),
        centrality_relations: Vec::new(),
    };
    let mut dehn = artin.clone();
    for &(i, k) in &p.power_relations {
        dehn.centrality_relations
            .extend((0..p.generators.len()).map(|j| (i, k, j)));
    }
    (artin, dehn)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_fixture() {
        let p = CbarPresentation::symmetric(3).unwrap();
        assert_eq!(p.generators.len(), 3);
        let t = validate(&p).unwrap();
        assert_eq!(t.order(), 6);
        assert_eq!(t.class_count(), 3);
        assert_eq!(t.generator_classes().len(), 1);
        assert_eq!(t.ab_group().unwrap(), AbelianGroup::from_cyclic(0, &[2]));
        assert_eq!(t.ab_of_element(0), vec![0]);
        let tc = t.class_of(t.index_of(&p.generators[0]).unwrap());
        assert_eq!(t.pibar(tc).unwrap(), vec![1]);
        assert_eq!(t.pibar(t.class_of(0)).unwrap(), vec![0]);
    }

    #[test]
    fn d4_fixture() {
        let p = CbarPresentation::dihedral4();
        let t = validate(&p).unwrap();
        assert_eq!(t.order(), 8);
        assert_eq!(t.class_count(), 5);
        assert_eq!(t.generator_classes().len(), 2);
        assert_eq!(t.ab_group().unwrap(), AbelianGroup::from_cyclic(0, &[2, 2]));
        let r = t.index_of(&p.generators[0].then(&p.generators[1])).unwrap();
        assert_eq!(t.pibar(t.class_of(r)).unwrap(), vec![1, 1]);
    }

    #[test]
    fn validation_errors() {
        let mut p = CbarPresentation::dihedral4();
        p.conj_relations.push((1, 0, 0));
        assert!(matches!(validate(&p), Err(Error::RelationFails(m)) if m.starts_with("(1, 0, 0)")));

        let mut p = CbarPresentation::symmetric(3).unwrap();
        p.power_relations.push((1, 2));
        assert_eq!(
            validate(&p).unwrap_err(),
            Error::DuplicatePowerRelation(0, 1)
        );

        let mut p = CbarPresentation::dihedral4();
        p.power_relations.pop();
        assert_eq!(validate(&p).unwrap_err(), Error::InfiniteOrderGenerator(1));

        let mut p = CbarPresentation::dihedral4();
        p.power_relations[0].1 = 4;
        assert!(matches!(
            validate(&p),
            Err(Error::PowerOrderMismatch { generator: 0, .. })
        ));

        let p = CbarPresentation::symmetric(5).unwrap();
        assert_eq!(
            validate_with(&p, 100).unwrap_err(),
            Error::GroupTooLarge(100)
        );
        assert!(
            CbarPresentation::new(3, vec![Permutation::identity(3)], vec![(0, 0, 1)], vec![])
                .is_err()
        );
    }

    #[test]
    fn pullback_relations_and_express() {
        let t = validate(&CbarPresentation::dihedral4()).unwrap();
        let pb = t.build_a();
        for a in 0..t.order() {
            for b in 0..t.order() {
                let lhs = pb.multiply(&pb.generator(a), &pb.generator(b));
                let rhs = pb.multiply(&pb.generator(b), &pb.generator(t.conj(a, b)));
                assert_eq!(lhs, rhs);
            }
            let g = pb.generator(a);
            assert_eq!(pb.evaluate(&pb.express(&g).unwrap()), g);
        }
        let f = pb.multiply(&pb.generator(3), &pb.evaluate(&pb.t_word(1)));
        assert_eq!(pb.evaluate(&pb.express(&f).unwrap()), f);
        assert!(pb.element(1, vec![0; 5]).is_err());
    }

    #[test]
    fn corollaries() {
        let r = check_corollaries(&validate(&CbarPresentation::symmetric(3).unwrap()).unwrap())
            .unwrap();
        assert_eq!((r.torsion_order, r.kernel_rank, r.center_order), (3, 3, 1));
        let r = check_corollaries(&validate(&CbarPresentation::dihedral4()).unwrap()).unwrap();
        assert_eq!((r.torsion_order, r.center_order), (2, 2));
        assert!(r.center_exceeds_kernel);
        let r = check_corollaries(&validate(&CbarPresentation::trivial(2)).unwrap()).unwrap();
        assert_eq!((r.order, r.kernel_rank), (1, 1));
    }

    #[test]
    fn lifts() {
        let (artin, dehn) = export_lifts(&CbarPresentation::dihedral4());
        assert!(artin.power_relations.is_empty() && artin.centrality_relations.is_empty());
        let families: BTreeSet<(usize, u64)> = dehn
            .centrality_relations
            .iter()
            .map(|&(i, k, _)| (i, k))
            .collect();
        assert_eq!(families.len(), 2);
        let p = CbarPresentation::new(3, vec![Permutation::identity(3)], vec![(0, 0, 0)], vec![])
            .unwrap();
        let (artin, dehn) = export_lifts(&p);
        assert_eq!(artin, dehn);
    }

    #[test]
    fn json_round_trip() {
        let p = CbarPresentation::symmetric(4).unwrap();
        assert_eq!(
            CbarPresentation::from_json(&p.to_json().to_string()).unwrap(),
            p
        );
        assert!(CbarPresentation::from_json("{\"degree\": 2}").is_err());
    }
}
