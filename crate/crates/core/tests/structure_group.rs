use proptest::prelude::*;
use qsg_core::partitions::{partitions_of, Partition};
use qsg_core::permutations::all_permutations;
use qsg_core::structure_group::{
    central_t, cocycle_closed_form, cocycle_phi, evaluate, express, kernel_coordinates, AElement,
    ClassVector, DehnElement,
};
use qsg_core::{IntMatrix, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

/// Valid elements of A(Sₙ): random permutation and class vector, parity fixed on the transposition class.
fn a_element(n: usize) -> impl Strategy<Value = AElement> {
    let classes = partitions_of(n).unwrap();
    let k = classes.len();
    (perm(n), proptest::collection::vec(-4i64..=4, k)).prop_map(move |(p, xs)| {
        let mut coords: Vec<(Partition, i64)> = classes.iter().cloned().zip(xs).collect();
        let parity: i64 = coords
            .iter()
            .filter(|(l, _)| l.is_odd_class())
            .map(|(_, x)| x)
            .sum();
        if parity.rem_euclid(2) != i64::from(p.sign()) {
            let t = Partition::transposition_class(n).unwrap();
            coords.iter_mut().find(|(l, _)| *l == t).unwrap().1 += 1;
        }
        AElement::new(p, ClassVector::from_coords(n, coords).unwrap()).unwrap()
    })
}

#[test]
fn defining_relations_hold_exhaustively() {
    for n in 1..=4 {
        let perms = all_permutations(n);
        for a in &perms {
            for b in &perms {
                let lhs = &AElement::generator(a) * &AElement::generator(b);
                let rhs = &AElement::generator(b) * &AElement::generator(&a.conjugate(b).unwrap());
                assert_eq!(lhs, rhs, "a = {a}, b = {b}");
            }
        }
    }
}

#[test]
fn cocycle_identities_in_s3() {
    let perms = all_permutations(3);
    let id = Permutation::identity(3);
    let e1 = kernel_coordinates(&AElement::generator(&id)).unwrap();
    let phi = |a: &Permutation, b: &Permutation| cocycle_phi(a, b).unwrap();
    for a in &perms {
        assert_eq!(phi(a, &id), e1);
        assert_eq!(phi(&id, a), e1);
        for b in &perms {
            assert_eq!(phi(a, b), cocycle_closed_form(a, b).unwrap());
            assert_eq!(phi(a, b), phi(b, a));
            for c in &perms {
                let lhs = phi(b, c).sub(&phi(&(a * b), c)).add(&phi(a, &(b * c)));
                assert_eq!(lhs, phi(a, b), "({a}, {b}, {c})");
                assert_eq!(
                    phi(&a.conjugate(c).unwrap(), &b.conjugate(c).unwrap()),
                    phi(a, b)
                );
            }
        }
    }
}

#[test]
fn central_basis_is_independent() {
    for n in 2..=6 {
        let classes = partitions_of(n).unwrap();
        let rows: Vec<Vec<i64>> = classes
            .iter()
            .map(|l| {
                let t = central_t(l, n).unwrap();
                classes.iter().map(|m| t.ab().get(m)).collect()
            })
            .collect();
        let det = IntMatrix::from_rows(classes.len(), &rows)
            .unwrap()
            .determinant()
            .unwrap();
        assert_eq!(det.magnitude().to_string(), "2", "n = {n}");
        for l in &classes {
            assert!(central_t(l, n).unwrap().is_central());
        }
    }
}

#[test]
fn torsion_is_the_alternating_group() {
    for n in 2..=5 {
        let mut torsion = 0;
        for s in all_permutations(n) {
            match AElement::new(s.clone(), ClassVector::zero(n)) {
                Ok(f) => {
                    assert!(f.is_torsion());
                    assert_eq!(f.torsion_order(), Some(s.order()));
                    assert_eq!(s.sign(), 0);
                    torsion += 1;
                }
                Err(_) => assert_eq!(s.sign(), 1),
            }
        }
        assert_eq!(torsion, (1..=n).product::<usize>() / 2);
    }
}

#[test]
fn center_is_the_kernel() {
    for n in 3..=5 {
        let perms = all_permutations(n);
        let gens: Vec<AElement> = perms.iter().map(AElement::generator).collect();
        for s in &perms {
            let f = AElement::generator(s);
            let central = gens.iter().all(|g| &f * g == g * &f);
            assert_eq!(central, s.is_identity(), "{s}");
            assert_eq!(central, f.is_central());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn express_round_trips(f in (1usize..=6).prop_flat_map(a_element)) {
        let w = express(&f).unwrap();
        prop_assert_eq!(evaluate(&w, f.degree_n()).unwrap(), f);
    }

    #[test]
    fn group_laws(f in a_element(5), g in a_element(5), h in a_element(5)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &f.inverse(), AElement::identity(5));
        prop_assert_eq!(f.commutes_with(&g), &f * &g == &g * &f);
        let json = f.to_json().to_string();
        prop_assert_eq!(AElement::from_json(&json).unwrap(), f);
    }

    #[test]
    fn phi_is_a_cocycle_in_s6(a in perm(6), b in perm(6), c in perm(6)) {
        let phi = |x: &Permutation, y: &Permutation| cocycle_phi(x, y).unwrap();
        let lhs = phi(&b, &c).sub(&phi(&(&a * &b), &c)).add(&phi(&a, &(&b * &c)));
        prop_assert_eq!(lhs, phi(&a, &b));
    }

    #[test]
    fn semidirect_transport(p in perm(6), q in perm(6), k in -6i64..6, l in -6i64..6) {
        let fix = |s: &Permutation, k: i64| if k.rem_euclid(2) == i64::from(s.sign()) { k } else { k + 1 };
        let d1 = DehnElement::new(p.clone(), fix(&p, k)).unwrap();
        let d2 = DehnElement::new(q.clone(), fix(&q, l)).unwrap();
        let direct = d1.multiply(&d2).unwrap();
        let transported = d1.to_semidirect().multiply(&d2.to_semidirect()).unwrap();
        prop_assert_eq!(transported.to_dehn(), direct.clone());
        prop_assert_eq!(direct.embed(), &d1.embed() * &d2.embed());
    }
}
