use qsg_core::generic_cbar::{check_corollaries, export_lifts, validate, CbarPresentation};
use qsg_core::AbelianGroup;

#[test]
fn s4_corollaries() {
    let t = validate(&CbarPresentation::symmetric(4).unwrap()).unwrap();
    assert_eq!((t.order(), t.class_count()), (24, 5));
    let r = check_corollaries(&t).unwrap();
    assert_eq!(r.torsion_order, 12);
    assert_eq!(r.derived_order, 12);
    assert_eq!(r.kernel_rank, 5);
    assert_eq!(r.center_order, 1);
    assert_eq!(r.ab, AbelianGroup::from_cyclic(0, &[2]));
}

#[test]
fn pullback_relations_for_small_groups() {
    for p in [
        CbarPresentation::symmetric(3).unwrap(),
        CbarPresentation::symmetric(4).unwrap(),
        CbarPresentation::dihedral4(),
    ] {
        let t = validate(&p).unwrap();
        let pb = t.build_a();
        assert_eq!(
            pb.identity(),
            pb.element(0, vec![0; t.class_count()]).unwrap()
        );
        for a in 0..t.order() {
            for b in 0..t.order() {
                let lhs = pb.multiply(&pb.generator(a), &pb.generator(b));
                let rhs = pb.multiply(&pb.generator(b), &pb.generator(t.conj(a, b)));
                assert_eq!(lhs, rhs);
                let f = pb.multiply(&lhs, &pb.inverse(&pb.generator(t.conj(b, a))));
                assert_eq!(pb.evaluate(&pb.express(&f).unwrap()), f);
            }
        }
    }
}

#[test]
fn pibar_is_well_defined() {
    let t = validate(&CbarPresentation::dihedral4()).unwrap();
    for c in 0..t.class_count() {
        let v = t.pibar(c).unwrap();
        for &m in t.class_members(c) {
            assert_eq!(t.ab_of_element(m), v);
        }
    }
}

#[test]
fn artin_lift_of_s3_is_the_braid_presentation() {
    let p = CbarPresentation::symmetric(3).unwrap();
    let (artin, dehn) = export_lifts(&p);
    assert!(artin.power_relations.is_empty());
    assert_eq!(artin.conj_relations, p.conj_relations);
    assert_eq!(dehn.centrality_relations.len(), p.generators.len());
}
