use num_bigint::BigUint;
use proptest::prelude::*;
use qsg_core::partitions::{partition_count, partitions_of, s_count, Partition};

/// Euler's pentagonal recurrence, independent of the DP in the crate.
fn pentagonal(max: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = vec![BigUint::from(1u32)];
    for n in 1..=max {
        let (mut plus, mut minus) = (BigUint::from(0u32), BigUint::from(0u32));
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign_plus = k % 2 == 1;
            for g in [g1, k * (3 * k + 1) / 2] {
                if g <= n {
                    if sign_plus {
                        plus += &p[n - g];
                    } else {
                        minus += &p[n - g];
                    }
                }
            }
        }
        p.push(plus - minus);
    }
    p
}

#[test]
fn partition_numbers_match_pentagonal_recurrence() {
    let oracle = pentagonal(50);
    for (n, want) in oracle.iter().enumerate() {
        assert_eq!(&partition_count(n).unwrap(), want, "P({n})");
    }
    assert_eq!(partition_count(50).unwrap(), BigUint::from(204_226u32));
}

#[test]
fn enumeration_is_complete_and_ordered() {
    for n in 0..=20 {
        let all = partitions_of(n).unwrap();
        assert_eq!(BigUint::from(all.len()), partition_count(n).unwrap());
        assert!(
            all.windows(2).all(|w| w[0] > w[1]),
            "reverse-lex order at n = {n}"
        );
        assert!(all.iter().all(|p| p.n() == n));
    }
}

#[test]
fn s_counts_cover_the_even_case() {
    // every λ without odd repeated part but with an even part is counted exactly once
    for n in 2..=20 {
        let direct = partitions_of(n)
            .unwrap()
            .into_iter()
            .filter(|l| !l.has_odd_repeated_part() && l.m_of().is_some())
            .count();
        let summed: usize = (2..=n).step_by(2).map(|u| s_count(n, u).unwrap()).sum();
        assert_eq!(summed, direct, "n = {n}");
        for u in (2..=n).step_by(2) {
            let by_m = partitions_of(n)
                .unwrap()
                .into_iter()
                .filter(|l| !l.has_odd_repeated_part() && l.m_of() == Some(u))
                .count();
            assert_eq!(s_count(n, u).unwrap(), by_m, "s({n}, {u})");
        }
    }
}

proptest! {
    #[test]
    fn text_round_trip(parts in proptest::collection::vec(1usize..9, 0..8)) {
        let p = Partition::new(parts).unwrap();
        let back: Partition = p.to_csv().parse().unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(p.reflection_length() % 2 == 1, p.is_odd_class());
    }

    #[test]
    fn r_of_is_bounded_by_rsupport(parts in proptest::collection::vec(1usize..6, 1..10)) {
        let p = Partition::new(parts).unwrap();
        let rs = p.rsupport().len();
        prop_assert!(p.r_of() == rs || p.r_of() + 1 == rs);
        prop_assert_eq!(p.r_of() + 1 == rs, p.has_odd_repeated_part());
    }
}
