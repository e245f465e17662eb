//! Cross-module pipelines: constructions that thread groups, groupoids,
//! crossed modules, liftings and coverings through each other.

use std::sync::Arc;

use xmodkit_core::catalog::generate_groups;
use xmodkit_core::equivalence::{delta, eta};
use xmodkit_core::group::{FiniteGroup, GroupAction, GroupHom, Subgroup};
use xmodkit_core::group_groupoid::action_group_groupoid;
use xmodkit_core::groupoid::{classify_transitivity, is_covering_morphism, is_universal_covering};
use xmodkit_core::lifting::{
    action_from_lifting, connecting_morphism, enumerate_liftings, lifting_from_action,
    theta_psi_roundtrip_action, theta_psi_roundtrip_lifting, universal_lifting, Connecting,
};
use xmodkit_core::xmod::{
    validate_xmod, validate_xmod_morphism, xmod_from_normal_subgroup, xmod_inner_automorphism,
    CrossedModule,
};

fn mod2_base() -> Arc<CrossedModule> {
    let z4 = FiniteGroup::cyclic(4);
    let z2 = FiniteGroup::cyclic(2);
    let alpha = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
    Arc::new(validate_xmod(alpha, GroupAction::trivial(&z2, &z4)).unwrap())
}

#[test]
fn action_group_groupoid_realizes_the_lifted_crossed_module() {
    // the crossed module of the total group-groupoid of psi(L) is (A, X, phi),
    // table for table
    for base in [mod2_base(), Arc::new(xmod_inner_automorphism(&FiniteGroup::cyclic(4)))] {
        for l in enumerate_liftings(&base) {
            let act = action_from_lifting(&l);
            let (total, p) = action_group_groupoid(&act).unwrap();
            assert!(is_covering_morphism(p.underlying()).is_covering());
            let d = delta(&total);
            assert!(d.table_eq(&l.as_xmod()));
        }
    }
}

#[test]
fn universal_lifting_gives_a_universal_covering_groupoid() {
    // over the mod-2 base, psi of the universal lifting produces a simply
    // connected transitive total groupoid: a universal covering
    let base = mod2_base();
    let (u, _) = universal_lifting(&base);
    let act = action_from_lifting(&u);
    let (total, p) = action_group_groupoid(&act).unwrap();
    assert!(classify_transitivity(total.groupoid()).one_transitive);
    assert!(is_universal_covering(p.underlying()).unwrap());
}

#[test]
fn inner_xmod_of_z4_has_three_liftings() {
    // abelian group: the inner map is zero into Aut(Z4), which still acts
    let base = Arc::new(xmod_inner_automorphism(&FiniteGroup::cyclic(4)));
    assert!(!base.action().is_trivial());
    let liftings = enumerate_liftings(&base);
    assert_eq!(liftings.len(), 3);
    for l in &liftings {
        theta_psi_roundtrip_lifting(l).unwrap();
        let act = action_from_lifting(l);
        theta_psi_roundtrip_action(&act, &base).unwrap();
    }
}

#[test]
fn simply_transitive_inclusion_pipeline() {
    let s3 = FiniteGroup::symmetric(3);
    let a3 = s3.normal_subgroups().into_iter().find(|s| s.order() == 3).unwrap();
    let base = Arc::new(xmod_from_normal_subgroup(&s3, &a3).unwrap());
    let liftings = enumerate_liftings(&base);
    assert_eq!(liftings.len(), 1); // trivial kernel
    let l = &liftings[0];
    assert!(l.phi().is_injective());
    let act = action_from_lifting(l);
    let back = lifting_from_action(&act, &base).unwrap();
    assert!(back.table_eq(l));
}

#[test]
fn connecting_morphism_through_a_nontrivial_automorphism() {
    let base = mod2_base();
    // f = multiplication by 3 on Z4 over the identity on Z2
    let f1 = GroupHom::new(base.a(), base.a(), vec![0, 3, 2, 1]).unwrap();
    let m = validate_xmod_morphism(&base, &base, f1, GroupHom::identity(base.b())).unwrap();
    let even = Subgroup::new(base.a(), vec![0, 2]).unwrap();
    let nat = xmodkit_core::lifting::lifting_from_central_subgroup(&base, &even).unwrap();
    match connecting_morphism(&m, &nat).unwrap() {
        Connecting::Found(w) => {
            // the factorization stays over the original map
            for b in base.b().elements() {
                assert_eq!(nat.omega().apply(w.f2().apply(b)), b);
            }
        }
        other => panic!("expected a factorization, got {other:?}"),
    }
}

#[test]
fn collapse_onto_one_object_groupoid_is_a_covering() {
    // folding the 1-transitive realization of the identity crossed module on
    // Z2 onto the one-object groupoid: stars are 2 against 2 and the
    // exhaustive star comparison shows the collapse really is a covering
    let z2 = FiniteGroup::cyclic(2);
    let xm = validate_xmod(GroupHom::identity(&z2), GroupAction::trivial(&z2, &z2)).unwrap();
    let gg = eta(&xm);
    let one = xmodkit_core::groupoid::Groupoid::one_object(&z2);
    let nb = 2;
    let mor_map: Vec<usize> = (0..gg.n_morphisms()).map(|g| g / nb).collect();
    let collapse = xmodkit_core::groupoid::GroupoidMorphism::new(
        gg.groupoid(),
        &one,
        vec![0; nb],
        mor_map,
    )
    .unwrap();
    assert!(is_covering_morphism(&collapse).is_covering());
}

#[test]
fn eta_preserves_star_sizes_across_the_catalog_families() {
    // stars of the semidirect realization always have |A| morphisms
    for g in generate_groups(6) {
        let xm = Arc::new(xmod_inner_automorphism(&g));
        let gg = eta(&xm);
        for b in 0..gg.obj_group().order() {
            assert_eq!(gg.groupoid().star(b).unwrap().len(), xm.a().order());
        }
    }
}
