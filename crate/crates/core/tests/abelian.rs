use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qsg_core::abelian::{abelian_from_matrix, minor_gcd, smith_normal_form, CokernelMap};
use qsg_core::{AbelianGroup, IntMatrix};

fn matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
            .prop_map(move |rows| IntMatrix::from_rows(c, &rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_valid(m in matrix(5)) {
        let f = smith_normal_form(&m);
        prop_assert_eq!(f.u.mul(&m).unwrap().mul(&f.v).unwrap(), f.d.clone());
        prop_assert_eq!(f.u.determinant().unwrap().magnitude().clone(), One::one());
        prop_assert_eq!(f.v.determinant().unwrap().magnitude().clone(), One::one());
        for i in 0..f.d.rows() {
            for j in 0..f.d.cols() {
                if i != j {
                    prop_assert!(f.d[(i, j)].is_zero());
                }
            }
        }
        let diag = f.nonzero_diagonal();
        prop_assert!(diag.iter().all(|d| d > &BigInt::zero()));
        prop_assert!(diag.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    }

    #[test]
    fn minor_gcds_are_diagonal_products(m in matrix(4)) {
        let diag = smith_normal_form(&m).d.diagonal_entries();
        for i in 1..=m.rows().min(m.cols()) {
            let prod: BigInt = diag[..i].iter().product();
            prop_assert_eq!(minor_gcd(&m, i).unwrap(), prod);
        }
    }

    #[test]
    fn cokernel_kills_relations(m in matrix(4), x in proptest::collection::vec(-5i64..=5, 4)) {
        let map = CokernelMap::new(m.cols(), &m).unwrap();
        prop_assert_eq!(map.group(), &abelian_from_matrix(&m).unwrap());
        for i in 0..m.rows() {
            let row: Vec<i64> = m.row(i).iter().map(|v| i64::try_from(v).unwrap()).collect();
            prop_assert!(map.is_zero_image(&row));
        }
        // images are invariant under adding a relation
        let x = &x[..m.cols()];
        let shifted: Vec<i64> = x
            .iter()
            .zip(m.row(0))
            .map(|(v, r)| v + i64::try_from(r).unwrap())
            .collect();
        prop_assert_eq!(map.image(x), map.image(&shifted));
    }

    #[test]
    fn direct_sums_are_canonical(a in proptest::collection::vec(0u64..30, 0..6), b in proptest::collection::vec(0u64..30, 0..6)) {
        let ga = AbelianGroup::from_cyclic(0, &a);
        let gb = AbelianGroup::from_cyclic(0, &b);
        let joined: Vec<u64> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(ga.direct_sum(&gb), AbelianGroup::from_cyclic(0, &joined));
        let diag = IntMatrix::diagonal(&joined.iter().map(|&x| x as i64).collect::<Vec<_>>());
        let from_matrix = abelian_from_matrix(&diag).unwrap();
        prop_assert_eq!(from_matrix, AbelianGroup::from_cyclic(0, &joined));
    }
}
