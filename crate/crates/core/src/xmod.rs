//! Crossed modules of finite groups: the two axioms as checkable invariants,
//! the three standard constructions, structural properties and transitivity.

use crate::error::{Error, Result};
use crate::group::{
    automorphism_group, FiniteGroup, GroupAction, GroupHom, Subgroup,
};
use crate::groupoid::TransitivityFlags;

/// A crossed module `(A, B, alpha)` with an action of `B` on `A` satisfying
/// equivariance (`alpha(b·a) = b + alpha(a) - b`) and the Peiffer identity
/// (`alpha(a)·a1 = a + a1 - a`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    a: FiniteGroup,
    b: FiniteGroup,
    alpha: GroupHom,
    action: GroupAction,
}

/// Checks both axioms over all pairs.
pub fn validate_xmod(alpha: GroupHom, action: GroupAction) -> Result<CrossedModule> {
    let a = alpha.source().clone();
    let b = alpha.target().clone();
    if !action.actor().table_eq(&b) || !action.target().table_eq(&a) {
        return Err(Error::BadAction(
            "action endpoints do not match the structure morphism".into(),
        ));
    }
    for bb in b.elements() {
        for aa in a.elements() {
            if alpha.apply(action.act(bb, aa)) != b.conj(bb, alpha.apply(aa)) {
                return Err(Error::Cm1Fails { b: bb, a: aa });
            }
        }
    }
    for aa in a.elements() {
        for a1 in a.elements() {
            if action.act(alpha.apply(aa), a1) != a.conj(aa, a1) {
                return Err(Error::Cm2Fails { a: aa, a1 });
            }
        }
    }
    Ok(CrossedModule { a, b, alpha, action })
}

impl CrossedModule {
    pub fn a(&self) -> &FiniteGroup {
        &self.a
    }

    pub fn b(&self) -> &FiniteGroup {
        &self.b
    }

    pub fn alpha(&self) -> &GroupHom {
        &self.alpha
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn ker_alpha(&self) -> Subgroup {
        self.alpha.kernel()
    }

    pub fn im_alpha(&self) -> Subgroup {
        self.alpha.image()
    }

    /// Table-level equality, ignoring labels.
    pub fn table_eq(&self, other: &CrossedModule) -> bool {
        self.a.table_eq(&other.a)
            && self.b.table_eq(&other.b)
            && self.alpha.map() == other.alpha.map()
            && self.action.raw_table() == other.action.raw_table()
    }
}

/// Inclusion of a normal subgroup with the conjugation action.
pub fn xmod_from_normal_subgroup(g: &FiniteGroup, n: &Subgroup) -> Result<CrossedModule> {
    if let Some((w, e)) = n.normality_witness() {
        return Err(Error::NotNormal { g: w, n: e });
    }
    let (a, embed) = n.as_group(format!("{}<{}", n_label(n), g.label()));
    let alpha = GroupHom::new(&a, g, embed.clone())?;
    let position = |elem: usize| embed.iter().position(|&x| x == elem).unwrap();
    let mut table = Vec::with_capacity(g.order() * a.order());
    for gg in g.elements() {
        for &nn in &embed {
            table.push(position(g.conj(gg, nn)));
        }
    }
    let action = GroupAction::new(g, &a, table)?;
    validate_xmod(alpha, action)
}

fn n_label(n: &Subgroup) -> String {
    let inner: Vec<String> = n.elements().iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// The zero morphism out of a module: requires `m` abelian.
pub fn xmod_zero_module(
    m: &FiniteGroup,
    g: &FiniteGroup,
    action: GroupAction,
) -> Result<CrossedModule> {
    if let Some((a, b)) = m.abelian_witness() {
        return Err(Error::NotAbelian { a, b });
    }
    validate_xmod(GroupHom::zero(m, g), action)
}

/// The inner-automorphism crossed module `G -> Aut(G)` with the evaluation action.
pub fn xmod_inner_automorphism(g: &FiniteGroup) -> CrossedModule {
    let (aut, eval) = automorphism_group(g);
    let alpha_map: Vec<usize> = g
        .elements()
        .map(|x| {
            let conj_map: Vec<usize> = g.elements().map(|h| g.conj(x, h)).collect();
            eval.iter().position(|m| *m == conj_map).expect("conjugation is an automorphism")
        })
        .collect();
    let alpha = GroupHom::new(g, &aut, alpha_map).expect("conjugation is a homomorphism");
    let table: Vec<usize> = eval.iter().flatten().copied().collect();
    let action = GroupAction::new(&aut, g, table).expect("evaluation is an action");
    validate_xmod(alpha, action).expect("inner automorphisms form a crossed module")
}

/// Structural facts that hold in every crossed module, materialized: the
/// cokernel and its induced module structures on the kernel and the center.
#[derive(Debug, Clone)]
pub struct XModProperties {
    pub image: Subgroup,
    pub kernel: Subgroup,
    pub center: Subgroup,
    pub cokernel: FiniteGroup,
    /// cokernel acting on the kernel of alpha (as a standalone group)
    pub cok_action_on_kernel: GroupAction,
    /// cokernel acting on the center of A (as a standalone group)
    pub cok_action_on_center: GroupAction,
}

/// Verifies the standard properties and materializes the cokernel actions.
/// Violations mean the input was not a crossed module, so they surface as
/// internal contradictions rather than ordinary errors.
pub fn xmod_properties(xm: &CrossedModule) -> Result<XModProperties> {
    let contradiction = |msg: String| Err(Error::InternalContradiction(msg));
    let image = xm.im_alpha();
    let kernel = xm.ker_alpha();
    let center = xm.a().center();
    if let Some((g, n)) = image.normality_witness() {
        return contradiction(format!("image is not normal in B at ({g}, {n})"));
    }
    for k in kernel.elements() {
        if !center.contains(*k) {
            return contradiction(format!("kernel element {k} is not central in A"));
        }
    }
    for aa in xm.a().elements() {
        for z in center.elements() {
            if xm.action().act(xm.alpha().apply(aa), *z) != *z {
                return contradiction(format!("alpha({aa}) moves the central element {z}"));
            }
        }
    }
    let (cokernel, proj) = xm.b().quotient(&image)?;
    let induced = |sub: &Subgroup, label: &str| -> Result<GroupAction> {
        let (group, members) = sub.as_group(label.to_string());
        let position = |elem: usize| members.iter().position(|&x| x == elem).unwrap();
        let mut table = Vec::with_capacity(cokernel.order() * group.order());
        for coset in cokernel.elements() {
            let reps: Vec<usize> =
                xm.b().elements().filter(|&bb| proj.apply(bb) == coset).collect();
            for &m in &members {
                let results: Vec<usize> = reps.iter().map(|&bb| xm.action().act(bb, m)).collect();
                if results.windows(2).any(|w| w[0] != w[1]) {
                    return Err(Error::InternalContradiction(format!(
                        "cokernel action on {label} is not well defined at ({coset}, {m})"
                    )));
                }
                if !members.contains(&results[0]) {
                    return Err(Error::InternalContradiction(format!(
                        "cokernel action does not preserve {label} at ({coset}, {m})"
                    )));
                }
                table.push(position(results[0]));
            }
        }
        GroupAction::new(&cokernel, &group, table)
            .map_err(|e| Error::InternalContradiction(format!("cokernel action on {label}: {e}")))
    };
    let cok_action_on_kernel = induced(&kernel, "ker")?;
    let cok_action_on_center = induced(&center, "center")?;
    Ok(XModProperties {
        image,
        kernel,
        center,
        cokernel,
        cok_action_on_kernel,
        cok_action_on_center,
    })
}

/// Transitivity flags of a crossed module, read off the structure morphism.
pub fn classify_xmod_transitivity(xm: &CrossedModule) -> TransitivityFlags {
    let surjective = xm.alpha().is_surjective();
    let injective = xm.alpha().is_injective();
    let zero = xm.alpha().map().iter().all(|&v| v == 0);
    TransitivityFlags {
        transitive: surjective,
        simply_transitive: injective,
        one_transitive: surjective && injective,
        totally_intransitive: zero && xm.a().is_abelian(),
    }
}

/// A morphism of crossed modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XModMorphism {
    source: CrossedModule,
    target: CrossedModule,
    f1: GroupHom,
    f2: GroupHom,
}

/// Checks the commuting square `f2 ∘ alpha = alpha' ∘ f1` and equivariance
/// `f1(b·a) = f2(b)·f1(a)`.
pub fn validate_xmod_morphism(
    source: &CrossedModule,
    target: &CrossedModule,
    f1: GroupHom,
    f2: GroupHom,
) -> Result<XModMorphism> {
    if !f1.source().table_eq(source.a())
        || !f1.target().table_eq(target.a())
        || !f2.source().table_eq(source.b())
        || !f2.target().table_eq(target.b())
    {
        return Err(Error::MalformedTable("morphism endpoints do not line up".into()));
    }
    for aa in source.a().elements() {
        if f2.apply(source.alpha().apply(aa)) != target.alpha().apply(f1.apply(aa)) {
            return Err(Error::SquareFails { a: aa });
        }
    }
    for bb in source.b().elements() {
        for aa in source.a().elements() {
            if f1.apply(source.action().act(bb, aa))
                != target.action().act(f2.apply(bb), f1.apply(aa))
            {
                return Err(Error::EquivarianceFails { b: bb, a: aa });
            }
        }
    }
    Ok(XModMorphism {
        source: source.clone(),
        target: target.clone(),
        f1,
        f2,
    })
}

impl XModMorphism {
    pub fn source(&self) -> &CrossedModule {
        &self.source
    }

    pub fn target(&self) -> &CrossedModule {
        &self.target
    }

    pub fn f1(&self) -> &GroupHom {
        &self.f1
    }

    pub fn f2(&self) -> &GroupHom {
        &self.f2
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f1.is_bijective() && self.f2.is_bijective()
    }

    /// `other` after `self`; sources and targets must line up.
    pub fn then(&self, other: &XModMorphism) -> Result<XModMorphism> {
        validate_xmod_morphism(
            &self.source,
            &other.target,
            self.f1.then(&other.f1)?,
            self.f2.then(&other.f2)?,
        )
    }
}

/// Searches for an isomorphism of crossed modules (pairs of bijective
/// homomorphisms satisfying the morphism laws). Exhaustive, desk scale.
pub fn find_xmod_isomorphism(xm1: &CrossedModule, xm2: &CrossedModule) -> Option<XModMorphism> {
    if xm1.a().order() != xm2.a().order() || xm1.b().order() != xm2.b().order() {
        return None;
    }
    let f1s: Vec<GroupHom> = crate::group::enumerate_homs(xm1.a(), xm2.a())
        .into_iter()
        .filter(|h| h.is_bijective())
        .collect();
    if f1s.is_empty() {
        return None;
    }
    let f2s: Vec<GroupHom> = crate::group::enumerate_homs(xm1.b(), xm2.b())
        .into_iter()
        .filter(|h| h.is_bijective())
        .collect();
    for f1 in &f1s {
        for f2 in &f2s {
            if let Ok(m) = validate_xmod_morphism(xm1, xm2, f1.clone(), f2.clone()) {
                return Some(m);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_actions;

    pub(crate) fn mod2_xmod() -> CrossedModule {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let alpha = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        validate_xmod(alpha, GroupAction::trivial(&z2, &z4)).unwrap()
    }

    #[test]
    fn identity_xmod_is_valid() {
        let z2 = FiniteGroup::cyclic(2);
        let xm = validate_xmod(GroupHom::identity(&z2), GroupAction::trivial(&z2, &z2)).unwrap();
        let flags = classify_xmod_transitivity(&xm);
        assert!(flags.one_transitive && flags.transitive && flags.simply_transitive);
    }

    #[test]
    fn mod2_xmod_is_valid_and_transitive_only() {
        let xm = mod2_xmod();
        let flags = classify_xmod_transitivity(&xm);
        assert!(flags.transitive);
        assert!(!flags.simply_transitive && !flags.one_transitive && !flags.totally_intransitive);
    }

    #[test]
    fn shifted_action_is_rejected_as_action() {
        let z2 = FiniteGroup::cyclic(2);
        // 1·a = a + 1 is not an automorphism; the action constructor refuses it
        assert!(matches!(
            GroupAction::new(&z2, &z2, vec![0, 1, 1, 0]),
            Err(Error::BadAction(_))
        ));
    }

    #[test]
    fn cm2_violation_is_reported() {
        // inversion action of Z2 on Z4 with the zero map breaks nothing;
        // with alpha = mod2 it breaks the Peiffer identity
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let inversion = enumerate_actions(&z2, &z4).into_iter().nth(1).unwrap();
        let alpha = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let err = validate_xmod(alpha, inversion).unwrap_err();
        assert!(matches!(err, Error::Cm2Fails { .. }));
    }

    #[test]
    fn inclusion_xmod_of_a3() {
        let s3 = FiniteGroup::symmetric(3);
        let a3 = s3.normal_subgroups().into_iter().find(|s| s.order() == 3).unwrap();
        let xm = xmod_from_normal_subgroup(&s3, &a3).unwrap();
        let flags = classify_xmod_transitivity(&xm);
        assert!(flags.simply_transitive && !flags.transitive);
    }

    #[test]
    fn inclusion_xmod_of_full_subgroup_is_one_transitive() {
        let g = FiniteGroup::klein();
        let full = Subgroup::new(&g, (0..4).collect()).unwrap();
        let xm = xmod_from_normal_subgroup(&g, &full).unwrap();
        assert!(classify_xmod_transitivity(&xm).one_transitive);
    }

    #[test]
    fn inclusion_xmod_of_z4_even_part() {
        let z4 = FiniteGroup::cyclic(4);
        let n = Subgroup::new(&z4, vec![0, 2]).unwrap();
        let xm = xmod_from_normal_subgroup(&z4, &n).unwrap();
        assert!(xm.alpha().is_injective());
        assert!(!xm.alpha().is_surjective());
    }

    #[test]
    fn zero_module_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let xm = xmod_zero_module(&z2, &z2, GroupAction::trivial(&z2, &z2)).unwrap();
        assert!(classify_xmod_transitivity(&xm).totally_intransitive);

        let z3 = FiniteGroup::cyclic(3);
        let inversion = enumerate_actions(&z2, &z3).into_iter().nth(1).unwrap();
        xmod_zero_module(&z3, &z2, inversion).unwrap();

        let s3 = FiniteGroup::symmetric(3);
        assert!(matches!(
            xmod_zero_module(&s3, &z2, GroupAction::trivial(&z2, &s3)),
            Err(Error::NotAbelian { .. })
        ));
    }

    #[test]
    fn inner_automorphism_examples() {
        let xm = xmod_inner_automorphism(&FiniteGroup::cyclic(2));
        assert_eq!(xm.b().order(), 1);
        assert!(xm.alpha().map().iter().all(|&v| v == 0));

        let xm = xmod_inner_automorphism(&FiniteGroup::symmetric(3));
        assert_eq!(xm.b().order(), 6);
        assert!(xm.alpha().is_injective()); // trivial center

        let xm = xmod_inner_automorphism(&FiniteGroup::cyclic(3));
        assert_eq!(xm.b().order(), 2);
        assert!(xm.alpha().map().iter().all(|&v| v == 0));
    }

    #[test]
    fn properties_of_mod2_xmod() {
        let props = xmod_properties(&mod2_xmod()).unwrap();
        assert_eq!(props.kernel.elements(), &[0, 2]);
        assert!(props.center.is_full());
        assert_eq!(props.cokernel.order(), 1);
    }

    #[test]
    fn properties_of_inner_s3() {
        let props = xmod_properties(&xmod_inner_automorphism(&FiniteGroup::symmetric(3))).unwrap();
        assert!(props.kernel.is_trivial());
        assert_eq!(props.image.order(), 6);
        assert_eq!(props.cokernel.order(), 1);
    }

    #[test]
    fn properties_of_zero_xmod() {
        let z2 = FiniteGroup::cyclic(2);
        let xm = xmod_zero_module(&z2, &z2, GroupAction::trivial(&z2, &z2)).unwrap();
        let props = xmod_properties(&xm).unwrap();
        assert_eq!(props.cokernel.order(), 2);
        assert_eq!(props.cok_action_on_kernel.target().order(), 2);
    }

    #[test]
    fn morphism_validation() {
        let xm = mod2_xmod();
        validate_xmod_morphism(
            &xm,
            &xm,
            GroupHom::identity(xm.a()),
            GroupHom::identity(xm.b()),
        )
        .unwrap();
        // the zero f2 breaks the square against the identity f1
        let err = validate_xmod_morphism(
            &xm,
            &xm,
            GroupHom::identity(xm.a()),
            GroupHom::zero(xm.b(), xm.b()),
        )
        .unwrap_err();
        assert!(matches!(err, Error::SquareFails { .. }));
    }

    #[test]
    fn xmod_isomorphism_search() {
        let xm = mod2_xmod();
        assert!(find_xmod_isomorphism(&xm, &xm).is_some());
        let z2 = FiniteGroup::cyclic(2);
        let other = xmod_zero_module(&z2, &z2, GroupAction::trivial(&z2, &z2)).unwrap();
        assert!(find_xmod_isomorphism(&other, &other).is_some());
    }
}
