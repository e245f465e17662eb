//! Liftings of a crossed module through a group morphism into its base:
//! construction, enumeration, classification, and the equivalences with
//! group-groupoid actions and with covering morphisms of crossed modules.
//!
//! A lifting stores only `phi` and `omega`; the action of `X` on `A` is always
//! derived by pulling the base action back along `omega`, never stored twice.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::equivalence::{delta, eta};
use crate::group::{
    enumerate_homs, semidirect_product, FiniteGroup, GroupAction, GroupHom, Subgroup,
};
use crate::group_groupoid::{
    validate_gg_action, GroupGroupoid, GroupGroupoidAction,
};
use crate::xmod::{validate_xmod, validate_xmod_morphism, CrossedModule, XModMorphism};

/// A lifting `(phi, X, omega)` of a crossed module `(A, B, alpha)`:
/// `omega ∘ phi = alpha` and `(A, X, phi)` is a crossed module for the action
/// pulled back along `omega`.
#[derive(Debug, Clone)]
pub struct Lifting {
    base: Arc<CrossedModule>,
    x_group: FiniteGroup,
    omega: GroupHom,
    phi: GroupHom,
}

impl Lifting {
    pub fn base(&self) -> &Arc<CrossedModule> {
        &self.base
    }

    pub fn x_group(&self) -> &FiniteGroup {
        &self.x_group
    }

    pub fn omega(&self) -> &GroupHom {
        &self.omega
    }

    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    /// The action of `X` on `A`, derived through `omega`.
    pub fn induced_action(&self) -> GroupAction {
        self.base
            .action()
            .pulled_back(&self.omega)
            .expect("omega lands in the actor")
    }

    /// `(A, X, phi)` as a crossed module with the derived action.
    pub fn as_xmod(&self) -> CrossedModule {
        validate_xmod(self.phi.clone(), self.induced_action())
            .expect("validated lifting carries a crossed module")
    }

    pub fn kernel(&self) -> Subgroup {
        self.phi.kernel()
    }

    /// `|Ker omega|` when the base is transitive (the class the notion is
    /// defined for), `None` otherwise.
    pub fn degree(&self) -> Option<usize> {
        self.base
            .alpha()
            .is_surjective()
            .then(|| self.omega.kernel().order())
    }

    /// The identity lifting `(alpha, B, 1_B)`.
    pub fn identity(base: &Arc<CrossedModule>) -> Self {
        validate_lifting(
            base,
            base.b().clone(),
            GroupHom::identity(base.b()),
            base.alpha().clone(),
        )
        .expect("every crossed module lifts to itself over the identity")
    }

    /// Strict table equality: same base tables, group table, and both maps.
    pub fn table_eq(&self, other: &Lifting) -> bool {
        self.base.table_eq(&other.base)
            && self.x_group.table_eq(&other.x_group)
            && self.omega.map() == other.omega.map()
            && self.phi.map() == other.phi.map()
    }
}

/// Both characterizations of a lifting candidate, computed independently:
/// the two crossed-module axioms for `(A, X, phi)` under the pulled-back
/// action, and the homomorphism property of `(a, x) -> phi(a) + x` on `A ⋊ X`.
pub fn dual_lifting_checks(
    base: &CrossedModule,
    x_group: &FiniteGroup,
    omega: &GroupHom,
    phi: &GroupHom,
) -> (bool, bool) {
    let a = base.a();
    let induced = base.action().pulled_back(omega).expect("omega lands in B");
    let cm_ok = {
        let cm1 = x_group.elements().all(|x| {
            a.elements()
                .all(|aa| phi.apply(induced.act(x, aa)) == x_group.conj(x, phi.apply(aa)))
        });
        let cm2 = a.elements().all(|aa| {
            a.elements()
                .all(|a1| induced.act(phi.apply(aa), a1) == a.conj(aa, a1))
        });
        cm1 && cm2
    };
    let phibar_ok = {
        let sd = semidirect_product(a, x_group, &induced);
        let nx = x_group.order();
        let reduce = |p: usize| x_group.op(phi.apply(p / nx), p % nx);
        (0..sd.order()).all(|p| {
            (0..sd.order()).all(|q| reduce(sd.op(p, q)) == x_group.op(reduce(p), reduce(q)))
        })
    };
    (cm_ok, phibar_ok)
}

/// Validates a lifting candidate. The commuting triangle is checked first;
/// then the two characterizations above, which must agree. When `omega` is
/// injective the triangle alone suffices, so release builds skip the scan.
pub fn validate_lifting(
    base: &Arc<CrossedModule>,
    x_group: FiniteGroup,
    omega: GroupHom,
    phi: GroupHom,
) -> Result<Lifting> {
    if !phi.source().table_eq(base.a())
        || !phi.target().table_eq(&x_group)
        || !omega.source().table_eq(&x_group)
        || !omega.target().table_eq(base.b())
    {
        return Err(Error::MalformedTable("lifting maps do not line up with the base".into()));
    }
    for aa in base.a().elements() {
        if omega.apply(phi.apply(aa)) != base.alpha().apply(aa) {
            return Err(Error::DiagramFails { a: aa });
        }
    }
    let fast = omega.is_injective();
    if !fast || cfg!(debug_assertions) {
        let (cm_ok, phibar_ok) = dual_lifting_checks(base, &x_group, &omega, &phi);
        if cm_ok != phibar_ok {
            return Err(Error::InternalContradiction(format!(
                "axiom check ({cm_ok}) disagrees with reduced-morphism check ({phibar_ok})"
            )));
        }
        if fast && !cm_ok {
            return Err(Error::InternalContradiction(
                "injective omega with a commuting triangle must be a lifting".into(),
            ));
        }
        if !cm_ok {
            return Err(Error::NotCrossedModule(
                "pulled-back action violates the crossed-module axioms".into(),
            ));
        }
    }
    Ok(Lifting {
        base: base.clone(),
        x_group,
        omega,
        phi,
    })
}

fn gg_table_eq(g1: &GroupGroupoid, g2: &GroupGroupoid) -> bool {
    g1.groupoid().data() == g2.groupoid().data()
        && g1.obj_group().table_eq(g2.obj_group())
        && g1.mor_group().table_eq(g2.mor_group())
}

/// The lifting of a group-groupoid action: `phi(a) = a • 0` with the anchor as
/// `omega`. The action's group-groupoid must realize the given base.
pub fn lifting_from_action(
    act: &GroupGroupoidAction,
    base: &Arc<CrossedModule>,
) -> Result<Lifting> {
    let d = delta(act.group_groupoid());
    if !d.table_eq(base) {
        return Err(Error::BaseMismatch(
            "the crossed module of the acting group-groupoid differs from the base".into(),
        ));
    }
    let members = act.group_groupoid().ker_d0().elements().to_vec();
    let phi_map: Vec<usize> = members
        .iter()
        .map(|&m| act.act(m, 0).expect("kernel morphisms start at the identity object"))
        .collect();
    let phi = GroupHom::new(base.a(), act.x_group(), phi_map)?;
    let omega = GroupHom::new(act.x_group(), base.b(), act.anchor().map().to_vec())?;
    validate_lifting(base, act.x_group().clone(), omega, phi)
}

/// The action of the base's group-groupoid on `X` recovered from a lifting:
/// `g • x = phi(g - 1_{d0 g}) + x` on the semidirect realization.
pub fn action_from_lifting(l: &Lifting) -> GroupGroupoidAction {
    action_from_lifting_on(&eta(l.base()), l)
}

/// Same construction against a caller-supplied semidirect realization of the
/// base, so bulk verification can build it once per base.
pub(crate) fn action_from_lifting_on(gg: &GroupGroupoid, l: &Lifting) -> GroupGroupoidAction {
    let x = l.x_group();
    let mor = gg.mor_group();
    let members = gg.ker_d0().elements().to_vec();
    let nx = x.order();
    let mut act = vec![None; gg.n_morphisms() * nx];
    for g in 0..gg.n_morphisms() {
        let translated = mor.op(g, mor.inv(gg.groupoid().id(gg.groupoid().d0(g))));
        let a = members
            .binary_search(&translated)
            .expect("g - 1_{d0 g} lies in the kernel of d0");
        for xx in 0..nx {
            if l.omega().apply(xx) == gg.groupoid().d0(g) {
                act[g * nx + xx] = Some(x.op(l.phi().apply(a), xx));
            }
        }
    }
    validate_gg_action(gg, x, l.omega().map().to_vec(), act)
        .expect("a lifting induces a group-groupoid action")
}

/// Checks that action -> lifting -> action is the identity on tables.
pub fn theta_psi_roundtrip_action(
    act: &GroupGroupoidAction,
    base: &Arc<CrossedModule>,
) -> Result<()> {
    let l = lifting_from_action(act, base)?;
    let back = action_from_lifting(&l);
    if !gg_table_eq(act.group_groupoid(), back.group_groupoid()) {
        return Err(Error::RoundtripFails(
            "acting group-groupoid is not in canonical semidirect form".into(),
        ));
    }
    if act.anchor().map() != back.anchor().map() {
        return Err(Error::RoundtripFails("anchors differ".into()));
    }
    for g in 0..back.group_groupoid().n_morphisms() {
        for xx in back.x_group().elements() {
            if act.act(g, xx) != back.act(g, xx) {
                return Err(Error::RoundtripFails(format!("action differs at ({g}, {xx})")));
            }
        }
    }
    Ok(())
}

/// Checks that lifting -> action -> lifting is the identity on tables.
pub fn theta_psi_roundtrip_lifting(l: &Lifting) -> Result<()> {
    let act = action_from_lifting(l);
    let back = lifting_from_action(&act, l.base())?;
    if !l.table_eq(&back) {
        return Err(Error::RoundtripFails("lifting tables differ after the round trip".into()));
    }
    Ok(())
}

/// The quotient lifting through `A / C` for a subgroup `C` of the kernel of
/// `alpha` (central, hence normal): `phi` is the projection and
/// `omega(a + C) = alpha(a)`.
pub fn lifting_from_central_subgroup(
    base: &Arc<CrossedModule>,
    c: &Subgroup,
) -> Result<Lifting> {
    if !c.parent().table_eq(base.a()) {
        return Err(Error::BaseMismatch("subgroup does not live in A".into()));
    }
    let ker = base.ker_alpha();
    if let Some(&bad) = c.elements().iter().find(|&&e| !ker.contains(e)) {
        return Err(Error::NotSubgroupOfKernel { element: bad });
    }
    let (x_group, proj) = base.a().quotient(c)?;
    let mut omega_map = vec![0usize; x_group.order()];
    for aa in base.a().elements() {
        omega_map[proj.apply(aa)] = base.alpha().apply(aa);
    }
    let omega = GroupHom::new(&x_group, base.b(), omega_map)?;
    let lifting = validate_lifting(base, x_group, omega, proj)?;
    if lifting.kernel().elements() != c.elements() {
        return Err(Error::InternalContradiction("projection kernel differs from C".into()));
    }
    if lifting.omega().kernel().order() * c.order() != ker.order() {
        return Err(Error::InternalContradiction(
            "kernel sizes violate |Ker omega| * |C| = |Ker alpha|".into(),
        ));
    }
    if !lifting.phi().is_surjective() {
        return Err(Error::InternalContradiction("quotient projection must be surjective".into()));
    }
    Ok(lifting)
}

/// The lifting through `A / Ker alpha`. Also checks that `alpha` corestricted
/// to its image is a transitive crossed module for the restricted action.
pub fn natural_lifting(base: &Arc<CrossedModule>) -> Lifting {
    let lifting = lifting_from_central_subgroup(base, &base.ker_alpha())
        .expect("the kernel is a subgroup of itself");
    let image = base.im_alpha();
    let (im_group, members) = image.as_group(format!("im({})", base.a().label()));
    let alpha_map: Vec<usize> = base
        .a()
        .elements()
        .map(|aa| {
            members
                .binary_search(&base.alpha().apply(aa))
                .expect("alpha lands in its image")
        })
        .collect();
    let alpha_corestricted =
        GroupHom::new(base.a(), &im_group, alpha_map).expect("corestriction is a homomorphism");
    let na = base.a().order();
    let table: Vec<usize> = members
        .iter()
        .flat_map(|&b| (0..na).map(move |aa| (b, aa)))
        .map(|(b, aa)| base.action().act(b, aa))
        .collect();
    let restricted = GroupAction::new(&im_group, base.a(), table).expect("restricted action");
    let image_xmod =
        validate_xmod(alpha_corestricted, restricted).expect("image crossed module");
    debug_assert!(image_xmod.alpha().is_surjective());
    lifting
}

/// One quotient lifting per subgroup of `Ker alpha`, ordered by kernel.
/// For transitive bases these are pairwise non-isomorphic (distinct kernels),
/// which the classification suite re-checks by exhaustive search.
pub fn enumerate_liftings(base: &Arc<CrossedModule>) -> Vec<Lifting> {
    let ker = base.ker_alpha();
    base.a()
        .subgroups()
        .into_iter()
        .filter(|s| s.is_subset_of(&ker))
        .map(|c| {
            lifting_from_central_subgroup(base, &c)
                .expect("subgroups of the kernel always produce liftings")
        })
        .collect()
}

/// A morphism of liftings over the same base: `f ∘ phi = phi'`, `omega' ∘ f = omega`.
#[derive(Debug, Clone)]
pub struct LiftingMorphism {
    source: Lifting,
    target: Lifting,
    f: GroupHom,
}

impl LiftingMorphism {
    pub fn new(source: &Lifting, target: &Lifting, f: GroupHom) -> Result<Self> {
        if !source.base().table_eq(target.base()) {
            return Err(Error::BaseMismatch("liftings have different bases".into()));
        }
        if !f.source().table_eq(source.x_group()) || !f.target().table_eq(target.x_group()) {
            return Err(Error::MalformedTable("morphism endpoints do not line up".into()));
        }
        for aa in source.base().a().elements() {
            if f.apply(source.phi().apply(aa)) != target.phi().apply(aa) {
                return Err(Error::SquareFails { a: aa });
            }
        }
        for xx in source.x_group().elements() {
            if target.omega().apply(f.apply(xx)) != source.omega().apply(xx) {
                return Err(Error::AnchorMismatch(format!(
                    "omega' (f({xx})) differs from omega({xx})"
                )));
            }
        }
        Ok(LiftingMorphism {
            source: source.clone(),
            target: target.clone(),
            f,
        })
    }

    pub fn source(&self) -> &Lifting {
        &self.source
    }

    pub fn target(&self) -> &Lifting {
        &self.target
    }

    pub fn f(&self) -> &GroupHom {
        &self.f
    }

    pub fn is_isomorphism(&self) -> bool {
        self.f.is_bijective()
    }
}

/// Isomorphism search in the lifting category: a bijective morphism.
pub fn find_lifting_isomorphism(l1: &Lifting, l2: &Lifting) -> Option<LiftingMorphism> {
    if l1.x_group().order() != l2.x_group().order() {
        return None;
    }
    enumerate_homs(l1.x_group(), l2.x_group())
        .into_iter()
        .filter(|h| h.is_bijective())
        .find_map(|h| LiftingMorphism::new(l1, l2, h).ok())
}

/// The universal lifting `(1_A, A, alpha)` together with a validated connecting
/// morphism into every enumerated lifting of the base.
pub fn universal_lifting(base: &Arc<CrossedModule>) -> (Lifting, Vec<LiftingMorphism>) {
    let trivial = Subgroup::new(base.a(), vec![0]).expect("trivial subgroup");
    let universal = lifting_from_central_subgroup(base, &trivial)
        .expect("the trivial subgroup always produces the universal lifting");
    let connections = enumerate_liftings(base)
        .iter()
        .map(|l| {
            // f phi_U = phi forces f = phi, and omega f = alpha = omega_U holds
            LiftingMorphism::new(&universal, l, l.phi().clone())
                .expect("the universal lifting maps onto every quotient lifting")
        })
        .collect();
    (universal, connections)
}

/// For a 1-lifting of a transitive base, `omega` is an isomorphism; returns
/// the crossed-module isomorphism `(1_A, omega): (A, X, phi) -> (A, B, alpha)`.
pub fn one_lifting_check(l: &Lifting) -> Result<XModMorphism> {
    if !l.base().alpha().is_surjective() {
        return Err(Error::PreconditionFails("base is not transitive".into()));
    }
    if l.omega().kernel().order() != 1 {
        return Err(Error::PreconditionFails(format!(
            "|Ker omega| = {}, expected 1",
            l.omega().kernel().order()
        )));
    }
    if !l.omega().is_bijective() {
        return Err(Error::InternalContradiction(
            "injective omega over a transitive base must be onto".into(),
        ));
    }
    let witness = validate_xmod_morphism(
        &l.as_xmod(),
        l.base(),
        GroupHom::identity(l.base().a()),
        l.omega().clone(),
    )?;
    debug_assert!(witness.is_isomorphism());
    Ok(witness)
}

/// Outcome of the unique-factorization construction.
#[derive(Debug, Clone)]
pub enum Connecting {
    Found(XModMorphism),
    /// An element of `f(Ker alpha~)` outside `Ker phi`.
    Obstructed { kernel_element: usize },
}

/// Given a morphism `(f, g)` from a transitive crossed module into the base of
/// `l`, factors it uniquely through `(A, X, phi)` when `f(Ker alpha~) ⊆ Ker phi`:
/// `g~(b~) = phi(f(a~))` for any preimage `a~` of `b~`. Well-definedness and
/// uniqueness are both verified by exhaustive search, not assumed.
pub fn connecting_morphism(m: &XModMorphism, l: &Lifting) -> Result<Connecting> {
    if !m.target().table_eq(l.base()) {
        return Err(Error::BaseMismatch("morphism does not land in the lifting's base".into()));
    }
    if !m.source().alpha().is_surjective() {
        return Err(Error::NotTransitiveSource);
    }
    let lifted_xmod = l.as_xmod();
    // obstruction: f must send the kernel into Ker phi
    for a_tilde in m.source().ker_alpha().elements() {
        let image = m.f1().apply(*a_tilde);
        if l.phi().apply(image) != 0 {
            return Ok(Connecting::Obstructed { kernel_element: image });
        }
    }
    let b_tilde_group = m.source().b();
    let mut g_tilde_map = vec![0usize; b_tilde_group.order()];
    for b_tilde in b_tilde_group.elements() {
        let values: Vec<usize> = m
            .source()
            .a()
            .elements()
            .filter(|&a_tilde| m.source().alpha().apply(a_tilde) == b_tilde)
            .map(|a_tilde| l.phi().apply(m.f1().apply(a_tilde)))
            .collect();
        if values.is_empty() {
            return Err(Error::NotTransitiveSource);
        }
        if values.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::InternalContradiction(format!(
                "factorization is not well defined at {b_tilde}"
            )));
        }
        g_tilde_map[b_tilde] = values[0];
    }
    let g_tilde = GroupHom::new(b_tilde_group, l.x_group(), g_tilde_map)?;
    // omega g~ = g
    for b_tilde in b_tilde_group.elements() {
        if l.omega().apply(g_tilde.apply(b_tilde)) != m.f2().apply(b_tilde) {
            return Err(Error::InternalContradiction(format!(
                "omega ∘ g~ differs from g at {b_tilde}"
            )));
        }
    }
    let witness = validate_xmod_morphism(m.source(), &lifted_xmod, m.f1().clone(), g_tilde)?;
    // uniqueness by brute force over all candidate second components
    let matches = enumerate_homs(b_tilde_group, l.x_group())
        .into_iter()
        .filter(|h| {
            h.map()
                .iter()
                .enumerate()
                .all(|(b_tilde, &x)| l.omega().apply(x) == m.f2().apply(b_tilde))
                && validate_xmod_morphism(m.source(), &lifted_xmod, m.f1().clone(), h.clone())
                    .is_ok()
        })
        .count();
    if matches != 1 {
        return Err(Error::InternalContradiction(format!(
            "{matches} factorizations found, expected exactly one"
        )));
    }
    Ok(Connecting::Found(witness))
}

/// Outcome of the kernel-criterion test between two liftings of one base.
#[derive(Debug, Clone)]
pub enum LiftingOfLifting {
    /// `l2` is a lifting of `(A, X1, phi1)`, witnessed over the returned map.
    Yes(Lifting),
    No { kernel_witness: usize },
}

impl LiftingOfLifting {
    pub fn holds(&self) -> bool {
        matches!(self, LiftingOfLifting::Yes(_))
    }
}

/// Decides whether `l2` is a lifting of `l1`'s crossed module (the kernel
/// criterion `Ker phi2 ⊆ Ker phi1`), constructing the witnessing lifting when
/// it is. Requires `(A, X2, phi2)` transitive.
pub fn is_lifting_of_lifting(l1: &Lifting, l2: &Lifting) -> Result<LiftingOfLifting> {
    if !l1.base().table_eq(l2.base()) {
        return Err(Error::BaseMismatch("liftings have different bases".into()));
    }
    if !l2.phi().is_surjective() {
        return Err(Error::PreconditionFails("(A, X2, phi2) is not transitive".into()));
    }
    let ker1 = l1.kernel();
    if let Some(&bad) = l2.kernel().elements().iter().find(|&&e| !ker1.contains(e)) {
        return Ok(LiftingOfLifting::No { kernel_witness: bad });
    }
    // factor (1_A, omega2) through (A, X1, phi1)
    let m = validate_xmod_morphism(
        &l2.as_xmod(),
        l1.base(),
        GroupHom::identity(l1.base().a()),
        l2.omega().clone(),
    )?;
    match connecting_morphism(&m, l1)? {
        Connecting::Found(witness) => {
            let over = Arc::new(l1.as_xmod());
            let lifted = validate_lifting(
                &over,
                l2.x_group().clone(),
                witness.f2().clone(),
                l2.phi().clone(),
            )?;
            Ok(LiftingOfLifting::Yes(lifted))
        }
        Connecting::Obstructed { kernel_element } => {
            Err(Error::InternalContradiction(format!(
                "kernel inclusion held but factorization was obstructed at {kernel_element}"
            )))
        }
    }
}

/// Composes a lifting of a lifting down to the original base:
/// `(phi', X', omega ∘ omega')`.
pub fn compose_liftings(l: &Lifting, l2: &Lifting) -> Result<Lifting> {
    if !l2.base().table_eq(&l.as_xmod()) {
        return Err(Error::BaseMismatch(
            "second lifting does not live over the first lifting's crossed module".into(),
        ));
    }
    let omega = l2.omega().then(l.omega())?;
    validate_lifting(l.base(), l2.x_group().clone(), omega, l2.phi().clone())
}

/// Transports a lifting along isomorphisms `f: B -> B'` and `g: X' -> X`:
/// the base becomes `(A, B', f ∘ alpha)` and the lifting `(g⁻¹ ∘ phi, X', f ∘ omega ∘ g)`.
pub fn transport_lifting(l: &Lifting, f: &GroupHom, g: &GroupHom) -> Result<Lifting> {
    if !f.is_bijective() {
        return Err(Error::NotIso("f is not an isomorphism".into()));
    }
    if !g.is_bijective() {
        return Err(Error::NotIso("g is not an isomorphism".into()));
    }
    if !f.source().table_eq(l.base().b()) || !g.target().table_eq(l.x_group()) {
        return Err(Error::MalformedTable("transport maps do not line up".into()));
    }
    let f_inv = f.inverse()?;
    let g_inv = g.inverse()?;
    let alpha2 = l.base().alpha().then(f)?;
    let na = l.base().a().order();
    let action2_table: Vec<usize> = f
        .target()
        .elements()
        .flat_map(|b2| (0..na).map(move |aa| (b2, aa)))
        .map(|(b2, aa)| l.base().action().act(f_inv.apply(b2), aa))
        .collect();
    let action2 = GroupAction::new(f.target(), l.base().a(), action2_table)?;
    let base2 = Arc::new(validate_xmod(alpha2, action2)?);
    let phi2 = l.phi().then(&g_inv)?;
    let omega2 = g.then(l.omega())?.then(f)?;
    validate_lifting(&base2, g.source().clone(), omega2, phi2)
}

/// A covering morphism of crossed modules: a morphism whose `A`-component is
/// an isomorphism.
#[derive(Debug, Clone)]
pub struct XModCovering {
    morphism: XModMorphism,
}

impl XModCovering {
    pub fn new(morphism: XModMorphism) -> Result<Self> {
        if !morphism.f1().is_bijective() {
            return Err(Error::NotCovering("A-component is not an isomorphism".into()));
        }
        Ok(XModCovering { morphism })
    }

    pub fn morphism(&self) -> &XModMorphism {
        &self.morphism
    }
}

/// A lifting, viewed as the covering `(1_A, omega): (A, X, phi) -> (A, B, alpha)`.
pub fn lifting_to_covering(l: &Lifting) -> Result<XModCovering> {
    let witness = validate_xmod_morphism(
        &l.as_xmod(),
        l.base(),
        GroupHom::identity(l.base().a()),
        l.omega().clone(),
    )?;
    XModCovering::new(witness)
}

/// A covering, viewed as a lifting: `phi = alpha~ ∘ f1⁻¹` over `omega = f2`.
pub fn covering_to_lifting(c: &XModCovering) -> Result<Lifting> {
    let m = c.morphism();
    let base = Arc::new(m.target().clone());
    let phi = m.f1().inverse()?.then(m.source().alpha())?;
    validate_lifting(&base, m.source().b().clone(), m.f2().clone(), phi)
}

/// A group-groupoid acts on `Ker d0 / G(0)` by `b • (a + G(0)) = (b ∘ a) + G(0)`,
/// anchored by the target map.
pub fn gg_action_on_kernel_quotient(gg: &GroupGroupoid) -> Result<GroupGroupoidAction> {
    let kernel = gg.ker_d0();
    let members = kernel.elements().to_vec();
    let (k_group, _) = kernel.as_group("ker_d0");
    let vertex = gg.vertex_group_at_identity();
    let vertex_positions: Vec<usize> = vertex
        .elements()
        .iter()
        .map(|&v| members.binary_search(&v).expect("G(0) sits inside Ker d0"))
        .collect();
    let vertex_in_kernel = Subgroup::new(&k_group, vertex_positions)?;
    let (x_group, proj) = k_group.quotient(&vertex_in_kernel)?;
    let mut omega_map = vec![0usize; x_group.order()];
    for (pos, &m) in members.iter().enumerate() {
        omega_map[proj.apply(pos)] = gg.groupoid().d1(m);
    }
    let nx = x_group.order();
    let mut act = vec![None; gg.n_morphisms() * nx];
    for b in 0..gg.n_morphisms() {
        for x in 0..nx {
            if gg.groupoid().d0(b) != omega_map[x] {
                continue;
            }
            let results: Vec<usize> = members
                .iter()
                .enumerate()
                .filter(|&(pos, _)| proj.apply(pos) == x)
                .map(|(_, &a)| {
                    let composite = gg
                        .groupoid()
                        .comp(b, a)
                        .expect("anchor equals the target of every representative");
                    proj.apply(
                        members
                            .binary_search(&composite)
                            .expect("composites with kernel morphisms stay in the kernel"),
                    )
                })
                .collect();
            if results.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::InternalContradiction(format!(
                    "kernel-quotient action is not well defined at ({b}, {x})"
                )));
            }
            act[b * nx + x] = Some(results[0]);
        }
    }
    validate_gg_action(gg, &x_group, omega_map, act)
}

/// Exhaustive search mode: every `(phi, omega)` pair over the supplied
/// candidate groups that validates as a lifting. With `transitive_only`, only
/// surjective `phi` are considered, the class the classification results cover.
pub fn exhaustive_liftings(
    base: &Arc<CrossedModule>,
    candidates: &[FiniteGroup],
    transitive_only: bool,
) -> Vec<Lifting> {
    let mut out = Vec::new();
    for x in candidates {
        for phi in enumerate_homs(base.a(), x) {
            if transitive_only && !phi.is_surjective() {
                continue;
            }
            for omega in enumerate_homs(x, base.b()) {
                let composed: Vec<usize> =
                    base.a().elements().map(|aa| omega.apply(phi.apply(aa))).collect();
                if composed != base.alpha().map() {
                    continue;
                }
                if let Ok(l) = validate_lifting(base, x.clone(), omega.clone(), phi.clone()) {
                    out.push(l);
                }
            }
        }
    }
    out
}

/// Deduplicates a lifting list up to isomorphism, keeping first representatives.
pub fn distinct_up_to_isomorphism(liftings: &[Lifting]) -> Vec<&Lifting> {
    let mut reps: Vec<&Lifting> = Vec::new();
    for l in liftings {
        if !reps.iter().any(|r| find_lifting_isomorphism(r, l).is_some()) {
            reps.push(l);
        }
    }
    reps
}
