use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;
use qsg_core::partitions::partitions_of;
use qsg_core::permutations::{all_permutations, class_representative, stabilizer_generators};
use qsg_core::Permutation;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn closure(n: usize, gens: &[Permutation]) -> usize {
    let id = Permutation::identity(n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

#[test]
fn transposition_words_are_minimal() {
    for n in 1..=5 {
        for s in all_permutations(n) {
            let w = s.transposition_word();
            assert_eq!(w.len(), s.reflection_length(), "{s}");
            assert_eq!(w.len() % 2, usize::from(s.sign()), "{s}");
            assert!(w.iter().all(Permutation::is_transposition));
            let product = w.iter().fold(Permutation::identity(n), |acc, t| &acc * t);
            assert_eq!(product, s);
        }
    }
}

#[test]
fn stabilizers_have_the_centralizer_order() {
    // |C(σ)| = ∏ u^{m_u} m_u!
    for n in 1..=6 {
        for lambda in partitions_of(n).unwrap() {
            let rep = class_representative(&lambda, n).unwrap();
            let gens = stabilizer_generators(&lambda, n).unwrap();
            assert!(gens.iter().all(|g| g.commutes_with(&rep)), "{lambda}");
            let want: usize = lambda
                .support()
                .into_iter()
                .map(|u| {
                    let m = lambda.multiplicity(u);
                    u.pow(m as u32) * (1..=m).product::<usize>()
                })
                .product();
            assert_eq!(closure(n, &gens), want, "{lambda}");
        }
    }
}

#[test]
fn enumeration_counts() {
    for n in 1..=6 {
        let all = all_permutations(n);
        assert_eq!(all.len(), (1..=n).product::<usize>());
        assert!(all.iter().enumerate().all(|(i, p)| p.lex_rank() == i));
    }
}

proptest! {
    #[test]
    fn group_laws(a in perm(6), b in perm(6), c in perm(6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a * &a.inverse()).is_identity());
        // a ⋆ b = b⁻¹ab
        prop_assert_eq!(a.conjugate(&b).unwrap(), &(&b.inverse() * &a) * &b);
        prop_assert_eq!(a.conjugate(&b).unwrap().cycle_type(), a.cycle_type());
        prop_assert_eq!((a.sign() + b.sign()) % 2, (&a * &b).sign());
    }

    #[test]
    fn order_and_powers(a in perm(7), k in -20i64..20) {
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.pow(k), a.inverse().pow(-k));
    }
}
