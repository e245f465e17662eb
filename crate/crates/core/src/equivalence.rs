//! The two mutually inverse functors between crossed modules and
//! group-groupoids, with computational round-trip witnesses.
//!
//! One direction takes the kernel of the source map with the target map as
//! structure morphism; the other builds the semidirect-product group-groupoid
//! whose morphisms are pairs `(a, b)` from `b` to `alpha(a) + b`, enumerated in
//! row-major `(a, b)` order. That enumeration fixes all downstream indexing.

use crate::error::{Error, Result};
use crate::group::{semidirect_product, GroupAction, GroupHom};
use crate::group_groupoid::{
    validate_group_groupoid, GroupGroupoid, GroupGroupoidData, GroupGroupoidMorphism,
};
use crate::groupoid::{classify_transitivity, Groupoid, GroupoidData, TransitivityFlags};
use crate::xmod::{
    classify_xmod_transitivity, validate_xmod, validate_xmod_morphism, CrossedModule, XModMorphism,
};

/// The crossed module of a group-groupoid: `Ker d0` over the object group,
/// with the target map as structure morphism and the conjugation-by-identities
/// action `b·a = 1_b + a - 1_b`.
pub fn delta(gg: &GroupGroupoid) -> CrossedModule {
    let kernel = gg.ker_d0();
    let (a, members) = kernel.as_group(format!("ker_d0({})", gg.mor_group().label()));
    let b = gg.obj_group().clone();
    let alpha_map: Vec<usize> = members.iter().map(|&m| gg.groupoid().d1(m)).collect();
    let alpha = GroupHom::new(&a, &b, alpha_map).expect("d1 restricts to the kernel");
    let mor = gg.mor_group();
    let position = |m: usize| members.binary_search(&m).expect("kernel is closed");
    let mut table = Vec::with_capacity(b.order() * a.order());
    for bb in b.elements() {
        let one_b = gg.groupoid().id(bb);
        for &m in &members {
            table.push(position(mor.op(mor.op(one_b, m), mor.inv(one_b))));
        }
    }
    let action = GroupAction::new(&b, &a, table).expect("conjugation by identities");
    validate_xmod(alpha, action).expect("kernel of d0 over the objects is a crossed module")
}

/// Morphism index of the pair `(a, b)` in the semidirect enumeration.
#[inline]
pub fn eta_pair_index(xm: &CrossedModule, a: usize, b: usize) -> usize {
    a * xm.b().order() + b
}

/// The group-groupoid of a crossed module: objects `B`, morphisms `A ⋊ B`.
pub fn eta(xm: &CrossedModule) -> GroupGroupoid {
    let (na, nb) = (xm.a().order(), xm.b().order());
    let mor_group = semidirect_product(xm.a(), xm.b(), xm.action());
    let m = na * nb;
    let idx = |a: usize, b: usize| a * nb + b;
    let mut d0 = vec![0usize; m];
    let mut d1 = vec![0usize; m];
    for a in 0..na {
        for b in 0..nb {
            d0[idx(a, b)] = b;
            d1[idx(a, b)] = xm.b().op(xm.alpha().apply(a), b);
        }
    }
    let id: Vec<usize> = (0..nb).map(|b| idx(0, b)).collect();
    let mut comp = vec![None; m * m];
    for a1 in 0..na {
        for b1 in 0..nb {
            let left = idx(a1, b1);
            for a in 0..na {
                for b in 0..nb {
                    let right = idx(a, b);
                    if d1[right] == b1 {
                        comp[left * m + right] = Some(idx(xm.a().op(a1, a), b));
                    }
                }
            }
        }
    }
    let inv: Vec<usize> = (0..m)
        .map(|g| {
            let (a, b) = (g / nb, g % nb);
            idx(xm.a().inv(a), xm.b().op(xm.alpha().apply(a), b))
        })
        .collect();
    let groupoid = Groupoid::validate(GroupoidData {
        n_objects: nb,
        d0,
        d1,
        id,
        comp,
        inv,
    })
    .expect("semidirect pairs form a groupoid");
    validate_group_groupoid(GroupGroupoidData {
        groupoid,
        obj_group: xm.b().clone(),
        mor_group,
    })
    .expect("semidirect pairs form a group-groupoid")
}

/// Functor action on morphisms: `(a, b) -> (f1 a, f2 b)` over `f2` on objects.
pub fn eta_morphism(m: &XModMorphism) -> Result<GroupGroupoidMorphism> {
    let src = eta(m.source());
    let tgt = eta(m.target());
    let nb_src = m.source().b().order();
    let nb_tgt = m.target().b().order();
    let mor_map: Vec<usize> = (0..src.n_morphisms())
        .map(|g| {
            let (a, b) = (g / nb_src, g % nb_src);
            m.f1().apply(a) * nb_tgt + m.f2().apply(b)
        })
        .collect();
    GroupGroupoidMorphism::new(&src, &tgt, m.f2().map().to_vec(), mor_map)
}

/// Functor action on morphisms in the other direction: restriction to the
/// kernel of the source map plus the object map.
pub fn delta_morphism(f: &GroupGroupoidMorphism, src: &GroupGroupoid, tgt: &GroupGroupoid) -> Result<XModMorphism> {
    let dsrc = delta(src);
    let dtgt = delta(tgt);
    let src_members = src.ker_d0().elements().to_vec();
    let tgt_members = tgt.ker_d0().elements().to_vec();
    let f1_map: Vec<usize> = src_members
        .iter()
        .map(|&m| {
            let im = f.apply_mor(m);
            tgt_members
                .binary_search(&im)
                .map_err(|_| Error::WitnessFails(format!("image of kernel morphism {m} leaves the kernel")))
        })
        .collect::<Result<_>>()?;
    let f1 = GroupHom::new(dsrc.a(), dtgt.a(), f1_map)?;
    let f2 = GroupHom::new(dsrc.b(), dtgt.b(), f.obj_hom().map().to_vec())?;
    validate_xmod_morphism(&dsrc, &dtgt, f1, f2)
}

/// A validated witness for one of the two round trips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivWitness {
    /// Crossed-module isomorphism `xm -> delta(eta(xm))`.
    DeltaEta { f1: Vec<usize>, f2: Vec<usize> },
    /// Group-groupoid isomorphism `eta(delta(G)) -> G`.
    EtaDelta { iso_obj: Vec<usize>, iso_mor: Vec<usize> },
}

/// Exhibits `a -> (a, 0)` with the identity on `B` as an isomorphism
/// `xm -> delta(eta(xm))`.
pub fn roundtrip_xmod(xm: &CrossedModule) -> Result<EquivWitness> {
    roundtrip_xmod_on(xm, &eta(xm))
}

/// `roundtrip_xmod` against a caller-supplied realization of `eta(xm)`.
pub(crate) fn roundtrip_xmod_on(xm: &CrossedModule, e: &GroupGroupoid) -> Result<EquivWitness> {
    let d = delta(e);
    let members = e.ker_d0().elements().to_vec();
    let f1_map: Vec<usize> = xm
        .a()
        .elements()
        .map(|a| {
            let mor = eta_pair_index(xm, a, 0);
            members
                .binary_search(&mor)
                .map_err(|_| Error::WitnessFails(format!("pair ({a}, 0) missing from the kernel")))
        })
        .collect::<Result<_>>()?;
    let f1 = GroupHom::new(xm.a(), d.a(), f1_map)?;
    let f2 = GroupHom::new(xm.b(), d.b(), (0..xm.b().order()).collect())?;
    let witness = validate_xmod_morphism(xm, &d, f1, f2)
        .map_err(|err| Error::WitnessFails(format!("canonical map is not a morphism: {err}")))?;
    if !witness.is_isomorphism() {
        return Err(Error::WitnessFails("canonical map is not bijective".into()));
    }
    Ok(EquivWitness::DeltaEta {
        f1: witness.f1().map().to_vec(),
        f2: witness.f2().map().to_vec(),
    })
}

/// Exhibits `(a, b) -> a + 1_b` as an isomorphism `eta(delta(G)) -> G`.
pub fn roundtrip_gg(gg: &GroupGroupoid) -> Result<EquivWitness> {
    let d = delta(gg);
    let e = eta(&d);
    let members = gg.ker_d0().elements().to_vec();
    let nb = d.b().order();
    let mor_map: Vec<usize> = (0..e.n_morphisms())
        .map(|g| {
            let (a, b) = (g / nb, g % nb);
            gg.mor_group().op(members[a], gg.groupoid().id(b))
        })
        .collect();
    let obj_map: Vec<usize> = (0..nb).collect();
    let witness = GroupGroupoidMorphism::new(&e, gg, obj_map, mor_map)
        .map_err(|err| Error::WitnessFails(format!("canonical map is not a morphism: {err}")))?;
    if !witness.is_bijective() {
        return Err(Error::WitnessFails("canonical map is not bijective".into()));
    }
    Ok(EquivWitness::EtaDelta {
        iso_obj: witness.obj_hom().map().to_vec(),
        iso_mor: witness.mor_hom().map().to_vec(),
    })
}

/// Both classifications of one crossed module, side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub xmod_flags: TransitivityFlags,
    pub groupoid_flags: TransitivityFlags,
}

impl CorrespondenceReport {
    pub fn agree(&self) -> bool {
        self.xmod_flags == self.groupoid_flags
    }
}

/// Compares the crossed-module flags with the flags of its group-groupoid.
pub fn transitivity_correspondence(xm: &CrossedModule) -> CorrespondenceReport {
    CorrespondenceReport {
        xmod_flags: classify_xmod_transitivity(xm),
        groupoid_flags: classify_transitivity(eta(xm).groupoid()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, GroupAction};

    fn zero_xmod_z2() -> CrossedModule {
        let z2 = FiniteGroup::cyclic(2);
        validate_xmod(GroupHom::zero(&z2, &z2), GroupAction::trivial(&z2, &z2)).unwrap()
    }

    fn id_xmod_z2() -> CrossedModule {
        let z2 = FiniteGroup::cyclic(2);
        validate_xmod(GroupHom::identity(&z2), GroupAction::trivial(&z2, &z2)).unwrap()
    }

    fn mod2_xmod() -> CrossedModule {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let alpha = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        validate_xmod(alpha, GroupAction::trivial(&z2, &z4)).unwrap()
    }

    #[test]
    fn eta_of_zero_xmod() {
        let gg = eta(&zero_xmod_z2());
        assert_eq!(gg.n_morphisms(), 4);
        assert_eq!(gg.groupoid().star(0).unwrap().len(), 2);
        let flags = classify_transitivity(gg.groupoid());
        assert!(flags.totally_intransitive);
        assert!(!flags.transitive && !flags.simply_transitive && !flags.one_transitive);
    }

    #[test]
    fn eta_of_identity_xmod_is_one_transitive() {
        let gg = eta(&id_xmod_z2());
        assert_eq!(gg.n_morphisms(), 4);
        assert!(classify_transitivity(gg.groupoid()).one_transitive);
    }

    #[test]
    fn eta_of_trivial_a_is_discrete() {
        let z1 = FiniteGroup::trivial();
        let b = FiniteGroup::klein();
        let xm = validate_xmod(GroupHom::zero(&z1, &b), GroupAction::trivial(&b, &z1)).unwrap();
        let gg = eta(&xm);
        assert_eq!(gg.n_morphisms(), 4);
        assert!(gg.groupoid().data().d0 == gg.groupoid().data().d1);
    }

    #[test]
    fn delta_of_discrete_group_groupoid() {
        let gg = GroupGroupoid::discrete(&FiniteGroup::klein());
        let xm = delta(&gg);
        assert_eq!(xm.a().order(), 1);
        assert_eq!(xm.b().order(), 4);
    }

    #[test]
    fn delta_of_eta_zero_xmod() {
        let xm = delta(&eta(&zero_xmod_z2()));
        assert_eq!(xm.a().order(), 2);
        assert_eq!(xm.b().order(), 2);
        assert!(xm.alpha().map().iter().all(|&v| v == 0));
    }

    #[test]
    fn morphism_count_is_product() {
        for xm in [zero_xmod_z2(), id_xmod_z2(), mod2_xmod()] {
            assert_eq!(eta(&xm).n_morphisms(), xm.a().order() * xm.b().order());
        }
    }

    #[test]
    fn roundtrip_xmod_witnesses() {
        for xm in [zero_xmod_z2(), id_xmod_z2(), mod2_xmod()] {
            match roundtrip_xmod(&xm).unwrap() {
                EquivWitness::DeltaEta { f1, f2 } => {
                    assert_eq!(f1.len(), xm.a().order());
                    assert_eq!(f2, (0..xm.b().order()).collect::<Vec<_>>());
                }
                other => panic!("unexpected witness {other:?}"),
            }
        }
    }

    #[test]
    fn roundtrip_gg_witnesses() {
        let cases = [
            GroupGroupoid::discrete(&FiniteGroup::klein()),
            eta(&mod2_xmod()),
            eta(&zero_xmod_z2()),
        ];
        for gg in cases {
            match roundtrip_gg(&gg).unwrap() {
                EquivWitness::EtaDelta { iso_mor, .. } => {
                    assert_eq!(iso_mor.len(), gg.n_morphisms());
                }
                other => panic!("unexpected witness {other:?}"),
            }
        }
    }

    #[test]
    fn roundtrip_gg_of_discrete_is_identity() {
        let gg = GroupGroupoid::discrete(&FiniteGroup::klein());
        match roundtrip_gg(&gg).unwrap() {
            EquivWitness::EtaDelta { iso_obj, iso_mor } => {
                assert_eq!(iso_obj, (0..4).collect::<Vec<_>>());
                assert_eq!(iso_mor, (0..4).collect::<Vec<_>>());
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn transitivity_correspondence_examples() {
        let r = transitivity_correspondence(&mod2_xmod());
        assert!(r.agree() && r.xmod_flags.transitive && !r.xmod_flags.simply_transitive);

        let r = transitivity_correspondence(&zero_xmod_z2());
        assert!(r.agree() && r.xmod_flags.totally_intransitive && !r.xmod_flags.simply_transitive);

        let r = transitivity_correspondence(&id_xmod_z2());
        assert!(r.agree() && r.xmod_flags.one_transitive);
    }

    #[test]
    fn eta_is_functorial_on_sampled_pairs() {
        // f: zero(Z2,Z2) -> mod2 via (a -> 2a? no hom A=Z2 -> Z4 doubling), then
        // g: mod2 -> mod2 identity; compare eta(g∘f) with eta(g)∘eta(f) tables
        let src = zero_xmod_z2();
        let mid = mod2_xmod();
        let f1 = GroupHom::new(src.a(), mid.a(), vec![0, 2]).unwrap();
        let f2 = GroupHom::new(src.b(), mid.b(), vec![0, 0]).unwrap();
        let f = validate_xmod_morphism(&src, &mid, f1, f2).unwrap();
        let g = validate_xmod_morphism(
            &mid,
            &mid,
            GroupHom::identity(mid.a()),
            GroupHom::identity(mid.b()),
        )
        .unwrap();
        let gf = f.then(&g).unwrap();
        let eta_f = eta_morphism(&f).unwrap();
        let eta_g = eta_morphism(&g).unwrap();
        let eta_gf = eta_morphism(&gf).unwrap();
        let composed: Vec<usize> = (0..eta_f.mor_hom().source().order())
            .map(|m| eta_g.apply_mor(eta_f.apply_mor(m)))
            .collect();
        assert_eq!(eta_gf.mor_hom().map(), composed.as_slice());
    }

    #[test]
    fn delta_morphism_restricts_kernels() {
        let xm = mod2_xmod();
        let gg = eta(&xm);
        let f = GroupGroupoidMorphism::new(
            &gg,
            &gg,
            (0..gg.obj_group().order()).collect(),
            (0..gg.n_morphisms()).collect(),
        )
        .unwrap();
        let dm = delta_morphism(&f, &gg, &gg).unwrap();
        assert!(dm.is_isomorphism());
    }
}
