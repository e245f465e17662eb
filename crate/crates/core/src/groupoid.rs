//! Finite groupoids as explicit tables: stars, transitivity classification,
//! covering morphisms, actions on sets and the action groupoid.
//!
//! Composition is `comp(h, g) = h ∘ g`, defined exactly when `d0(h) = d1(g)`
//! (apply `g` first). The table keeps an explicit definedness mask since
//! groupoid composition is partial.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Raw groupoid tables, prior to validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidData {
    pub n_objects: usize,
    pub d0: Vec<usize>,
    pub d1: Vec<usize>,
    /// object -> identity morphism
    pub id: Vec<usize>,
    /// row-major `comp[h * n_morphisms + g]`, `Some` exactly on the pullback
    pub comp: Vec<Option<usize>>,
    pub inv: Vec<usize>,
}

/// A validated finite groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Groupoid {
    data: GroupoidData,
}

impl Groupoid {
    pub fn validate(data: GroupoidData) -> Result<Self> {
        let n = data.n_objects;
        let m = data.d0.len();
        let fail = |msg: String| Err(Error::InvalidGroupoid(msg));
        if data.d1.len() != m || data.inv.len() != m || data.id.len() != n {
            return fail("table sizes disagree".into());
        }
        if data.comp.len() != m * m {
            return fail(format!(
                "composition table has {} entries, expected {}",
                data.comp.len(),
                m * m
            ));
        }
        if data.d0.iter().chain(&data.d1).any(|&x| x >= n) {
            return fail("source/target out of range".into());
        }
        if data.id.iter().chain(&data.inv).any(|&x| x >= m) {
            return fail("identity/inverse out of range".into());
        }
        for x in 0..n {
            let e = data.id[x];
            if data.d0[e] != x || data.d1[e] != x {
                return fail(format!("identity of object {x} has wrong endpoints"));
            }
        }
        for h in 0..m {
            for g in 0..m {
                let entry = data.comp[h * m + g];
                if (data.d0[h] == data.d1[g]) != entry.is_some() {
                    return fail(format!("composite of {h} and {g} has wrong definedness"));
                }
                if let Some(c) = entry {
                    if c >= m {
                        return fail(format!("composite of {h} and {g} out of range"));
                    }
                    if data.d0[c] != data.d0[g] || data.d1[c] != data.d1[h] {
                        return fail(format!("composite of {h} and {g} has wrong endpoints"));
                    }
                }
            }
        }
        let comp = |h: usize, g: usize| data.comp[h * m + g];
        for g in 0..m {
            if comp(g, data.id[data.d0[g]]) != Some(g) || comp(data.id[data.d1[g]], g) != Some(g) {
                return fail(format!("identities are not units for morphism {g}"));
            }
            let i = data.inv[g];
            if data.d0[i] != data.d1[g] || data.d1[i] != data.d0[g] {
                return fail(format!("inverse of {g} has wrong endpoints"));
            }
            if comp(i, g) != Some(data.id[data.d0[g]]) || comp(g, i) != Some(data.id[data.d1[g]]) {
                return fail(format!("inverse law fails for morphism {g}"));
            }
        }
        // associativity over all composable triples
        for a in 0..m {
            for b in 0..m {
                let Some(ab) = comp(a, b) else { continue };
                for c in 0..m {
                    if let Some(bc) = comp(b, c) {
                        if comp(ab, c) != comp(a, bc) {
                            return fail(format!("associativity fails at ({a}, {b}, {c})"));
                        }
                    }
                }
            }
        }
        Ok(Groupoid { data })
    }

    pub fn n_objects(&self) -> usize {
        self.data.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.data.d0.len()
    }

    #[inline]
    pub fn d0(&self, g: usize) -> usize {
        self.data.d0[g]
    }

    #[inline]
    pub fn d1(&self, g: usize) -> usize {
        self.data.d1[g]
    }

    #[inline]
    pub fn id(&self, x: usize) -> usize {
        self.data.id[x]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.data.inv[g]
    }

    /// `h ∘ g` when `d0(h) = d1(g)`.
    #[inline]
    pub fn comp(&self, h: usize, g: usize) -> Option<usize> {
        self.data.comp[h * self.n_morphisms() + g]
    }

    pub fn data(&self) -> &GroupoidData {
        &self.data
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.data.id[self.data.d0[g]] == g
    }

    /// One-object groupoid carrying a group: morphisms are the group elements.
    pub fn one_object(g: &FiniteGroup) -> Self {
        let m = g.order();
        let data = GroupoidData {
            n_objects: 1,
            d0: vec![0; m],
            d1: vec![0; m],
            id: vec![0],
            comp: (0..m)
                .flat_map(|h| (0..m).map(move |k| (h, k)))
                .map(|(h, k)| Some(g.op(h, k)))
                .collect(),
            inv: (0..m).map(|h| g.inv(h)).collect(),
        };
        Groupoid::validate(data).expect("one-object groupoid from a group")
    }

    /// Discrete groupoid: identities only.
    pub fn discrete(n_objects: usize) -> Self {
        let data = GroupoidData {
            n_objects,
            d0: (0..n_objects).collect(),
            d1: (0..n_objects).collect(),
            id: (0..n_objects).collect(),
            comp: (0..n_objects)
                .flat_map(|h| (0..n_objects).map(move |g| (h, g)))
                .map(|(h, g)| (h == g).then_some(h))
                .collect(),
            inv: (0..n_objects).collect(),
        };
        Groupoid::validate(data).expect("discrete groupoid")
    }

    /// Morphisms with source `x`.
    pub fn star(&self, x: usize) -> Result<Vec<usize>> {
        self.check_object(x)?;
        Ok((0..self.n_morphisms()).filter(|&g| self.d0(g) == x).collect())
    }

    /// Morphisms with target `x`.
    pub fn costar(&self, x: usize) -> Result<Vec<usize>> {
        self.check_object(x)?;
        Ok((0..self.n_morphisms()).filter(|&g| self.d1(g) == x).collect())
    }

    pub fn hom_set(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.n_morphisms())
            .filter(|&g| self.d0(g) == x && self.d1(g) == y)
            .collect()
    }

    /// The object group `G(x, x)` as a standalone group, with the relabeling
    /// `group element -> morphism index` (identity morphism first).
    pub fn object_group(&self, x: usize) -> Result<(FiniteGroup, Vec<usize>)> {
        self.check_object(x)?;
        let mut members = self.hom_set(x, x);
        let e = self.id(x);
        members.retain(|&g| g != e);
        members.insert(0, e);
        let position = |g: usize| members.iter().position(|&h| h == g).unwrap();
        let k = members.len();
        let mut table = vec![vec![0usize; k]; k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i][j] = position(self.comp(a, b).expect("object group is closed"));
            }
        }
        let group = FiniteGroup::validate(&table, format!("objgrp({x})"))?;
        Ok((group, members))
    }

    fn check_object(&self, x: usize) -> Result<()> {
        if x < self.n_objects() {
            Ok(())
        } else {
            Err(Error::UnknownObject { object: x })
        }
    }
}

/// Transitivity flags; the four conditions overlap, so each is independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitivityFlags {
    pub transitive: bool,
    pub simply_transitive: bool,
    pub one_transitive: bool,
    pub totally_intransitive: bool,
}

impl TransitivityFlags {
    pub fn none(&self) -> bool {
        !(self.transitive
            || self.simply_transitive
            || self.one_transitive
            || self.totally_intransitive)
    }
}

impl std::fmt::Display for TransitivityFlags {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut names = Vec::new();
        if self.transitive {
            names.push("transitive");
        }
        if self.simply_transitive {
            names.push("simply-transitive");
        }
        if self.one_transitive {
            names.push("1-transitive");
        }
        if self.totally_intransitive {
            names.push("totally-intransitive");
        }
        if names.is_empty() {
            names.push("none-of-these");
        }
        write!(f, "{}", names.join("+"))
    }
}

/// Classifies a groupoid. Emptiness conditions range over distinct object
/// pairs; the cardinality bounds also constrain the object groups, which is
/// what makes the flags agree with the crossed-module classifier.
pub fn classify_transitivity(g: &Groupoid) -> TransitivityFlags {
    let n = g.n_objects();
    let mut counts = vec![0usize; n * n];
    for m in 0..g.n_morphisms() {
        counts[g.d0(m) * n + g.d1(m)] += 1;
    }
    let mut flags = TransitivityFlags {
        transitive: true,
        simply_transitive: true,
        one_transitive: true,
        totally_intransitive: true,
    };
    for x in 0..n {
        for y in 0..n {
            let c = counts[x * n + y];
            if x != y {
                flags.transitive &= c > 0;
                flags.totally_intransitive &= c == 0;
            }
            flags.simply_transitive &= c <= 1;
            flags.one_transitive &= c == 1;
        }
    }
    flags
}

/// A morphism of groupoids, carrying its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidMorphism {
    source: Groupoid,
    target: Groupoid,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
}

impl GroupoidMorphism {
    pub fn new(
        source: &Groupoid,
        target: &Groupoid,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self> {
        let fail = |msg: String| Err(Error::InvalidGroupoidMorphism(msg));
        if obj_map.len() != source.n_objects() || mor_map.len() != source.n_morphisms() {
            return fail("map sizes disagree with the source".into());
        }
        if obj_map.iter().any(|&x| x >= target.n_objects())
            || mor_map.iter().any(|&g| g >= target.n_morphisms())
        {
            return fail("map values out of range".into());
        }
        for g in 0..source.n_morphisms() {
            if target.d0(mor_map[g]) != obj_map[source.d0(g)]
                || target.d1(mor_map[g]) != obj_map[source.d1(g)]
            {
                return fail(format!("does not commute with endpoints at morphism {g}"));
            }
            if mor_map[source.inv(g)] != target.inv(mor_map[g]) {
                return fail(format!("does not commute with inverse at morphism {g}"));
            }
        }
        for x in 0..source.n_objects() {
            if mor_map[source.id(x)] != target.id(obj_map[x]) {
                return fail(format!("does not preserve the identity at object {x}"));
            }
        }
        for h in 0..source.n_morphisms() {
            for g in 0..source.n_morphisms() {
                if let Some(c) = source.comp(h, g) {
                    if target.comp(mor_map[h], mor_map[g]) != Some(mor_map[c]) {
                        return fail(format!("does not commute with composition at ({h}, {g})"));
                    }
                }
            }
        }
        Ok(GroupoidMorphism {
            source: source.clone(),
            target: target.clone(),
            obj_map,
            mor_map,
        })
    }

    pub fn identity(g: &Groupoid) -> Self {
        GroupoidMorphism {
            source: g.clone(),
            target: g.clone(),
            obj_map: (0..g.n_objects()).collect(),
            mor_map: (0..g.n_morphisms()).collect(),
        }
    }

    pub fn source(&self) -> &Groupoid {
        &self.source
    }

    pub fn target(&self) -> &Groupoid {
        &self.target
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[usize] {
        &self.mor_map
    }

    pub fn apply_obj(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    pub fn apply_mor(&self, g: usize) -> usize {
        self.mor_map[g]
    }

    pub fn is_bijective(&self) -> bool {
        is_permutation(&self.obj_map, self.target.n_objects())
            && is_permutation(&self.mor_map, self.target.n_morphisms())
    }
}

fn is_permutation(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

/// Verdict of the star-bijectivity test, with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoveringCheck {
    Covering,
    /// Two distinct morphisms in the star at `object` with the same image.
    StarNotInjective { object: usize, m1: usize, m2: usize },
    /// A morphism of the target star hit by nothing from the star at `object`.
    StarNotSurjective { object: usize, missing: usize },
}

impl CoveringCheck {
    pub fn is_covering(&self) -> bool {
        matches!(self, CoveringCheck::Covering)
    }
}

/// Checks star-by-star bijectivity of a groupoid morphism.
pub fn is_covering_morphism(p: &GroupoidMorphism) -> CoveringCheck {
    let src = p.source();
    let tgt = p.target();
    for x in 0..src.n_objects() {
        let star = src.star(x).expect("object in range");
        let target_star = tgt.star(p.apply_obj(x)).expect("object in range");
        let mut hit: Vec<Option<usize>> = vec![None; tgt.n_morphisms()];
        for &m in &star {
            let im = p.apply_mor(m);
            if let Some(prev) = hit[im] {
                return CoveringCheck::StarNotInjective { object: x, m1: prev, m2: m };
            }
            hit[im] = Some(m);
        }
        if let Some(&missing) = target_star.iter().find(|&&t| hit[t].is_none()) {
            return CoveringCheck::StarNotSurjective { object: x, missing };
        }
    }
    CoveringCheck::Covering
}

/// The unique morphism in the star at `x_tilde` over `a`; inverse of the
/// pairing `(p, d0)`.
pub fn lifting_function(p: &GroupoidMorphism, a: usize, x_tilde: usize) -> Result<usize> {
    match is_covering_morphism(p) {
        CoveringCheck::Covering => {}
        other => return Err(Error::NotCovering(format!("{other:?}"))),
    }
    if p.apply_obj(x_tilde) != p.target().d0(a) {
        return Err(Error::AnchorMismatch(format!(
            "object {x_tilde} sits over {}, morphism {a} starts at {}",
            p.apply_obj(x_tilde),
            p.target().d0(a)
        )));
    }
    let hits: Vec<usize> = p
        .source()
        .star(x_tilde)?
        .into_iter()
        .filter(|&b| p.apply_mor(b) == a)
        .collect();
    match hits.as_slice() {
        [b] => Ok(*b),
        _ => Err(Error::InternalContradiction(format!(
            "star at {x_tilde} has {} preimages of {a}",
            hits.len()
        ))),
    }
}

/// A covering is universal when both groupoids are transitive and the source
/// has at most one morphism in every hom-set.
pub fn is_universal_covering(p: &GroupoidMorphism) -> Result<bool> {
    match is_covering_morphism(p) {
        CoveringCheck::Covering => {}
        other => return Err(Error::NotCovering(format!("{other:?}"))),
    }
    let src_flags = classify_transitivity(p.source());
    let tgt_flags = classify_transitivity(p.target());
    if !(src_flags.transitive && tgt_flags.transitive) {
        return Ok(false);
    }
    let src = p.source();
    for x in 0..src.n_objects() {
        for y in 0..src.n_objects() {
            if src.hom_set(x, y).len() > 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An action of a groupoid on a finite set via an anchor map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidAction {
    groupoid: Groupoid,
    carrier: usize,
    anchor: Vec<usize>,
    /// row-major `act[g * carrier + s]`, `Some` exactly when `d0(g) = anchor(s)`
    act: Vec<Option<usize>>,
}

impl GroupoidAction {
    pub fn new(groupoid: &Groupoid, anchor: Vec<usize>, act: Vec<Option<usize>>) -> Result<Self> {
        let carrier = anchor.len();
        let m = groupoid.n_morphisms();
        let fail = |msg: String| Err(Error::InvalidAction(msg));
        if act.len() != m * carrier {
            return fail(format!(
                "action table has {} entries, expected {}",
                act.len(),
                m * carrier
            ));
        }
        if anchor.iter().any(|&x| x >= groupoid.n_objects()) {
            return fail("anchor out of range".into());
        }
        let at = |g: usize, s: usize| act[g * carrier + s];
        for g in 0..m {
            for s in 0..carrier {
                let defined = groupoid.d0(g) == anchor[s];
                match at(g, s) {
                    Some(v) if !defined => {
                        return fail(format!("{g}•{s} = {v} defined off the pullback"));
                    }
                    None if defined => return fail(format!("{g}•{s} undefined on the pullback")),
                    Some(v) if v >= carrier => return fail(format!("{g}•{s} out of range")),
                    Some(v) => {
                        if anchor[v] != groupoid.d1(g) {
                            return fail(format!("anchor({g}•{s}) differs from the target of {g}"));
                        }
                    }
                    None => {}
                }
            }
        }
        for s in 0..carrier {
            if at(groupoid.id(anchor[s]), s) != Some(s) {
                return fail(format!("identity does not fix {s}"));
            }
        }
        for h in 0..m {
            for g in 0..m {
                let Some(hg) = groupoid.comp(h, g) else { continue };
                for s in 0..carrier {
                    let Some(gs) = at(g, s) else { continue };
                    if at(hg, s) != at(h, gs) {
                        return fail(format!("composition law fails at ({h}, {g}, {s})"));
                    }
                }
            }
        }
        Ok(GroupoidAction {
            groupoid: groupoid.clone(),
            carrier,
            anchor,
            act,
        })
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn anchor(&self) -> &[usize] {
        &self.anchor
    }

    #[inline]
    pub fn act(&self, g: usize, s: usize) -> Option<usize> {
        self.act[g * self.carrier + s]
    }
}

/// Verdict for a map between two actions of the same groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionMorphismCheck {
    Morphism,
    DifferentGroupoid,
    AnchorBroken { s: usize },
    NotEquivariant { g: usize, s: usize },
}

impl ActionMorphismCheck {
    pub fn is_morphism(&self) -> bool {
        matches!(self, ActionMorphismCheck::Morphism)
    }
}

/// Checks that `f: S -> S'` commutes with the anchors and the action.
pub fn act_morphism_check(
    f: &[usize],
    act: &GroupoidAction,
    act2: &GroupoidAction,
) -> ActionMorphismCheck {
    if act.groupoid() != act2.groupoid() {
        return ActionMorphismCheck::DifferentGroupoid;
    }
    for s in 0..act.carrier() {
        if act2.anchor()[f[s]] != act.anchor()[s] {
            return ActionMorphismCheck::AnchorBroken { s };
        }
    }
    for g in 0..act.groupoid().n_morphisms() {
        for s in 0..act.carrier() {
            if let Some(gs) = act.act(g, s) {
                if act2.act(g, f[s]) != Some(f[gs]) {
                    return ActionMorphismCheck::NotEquivariant { g, s };
                }
            }
        }
    }
    ActionMorphismCheck::Morphism
}

/// Pairs `(g, s)` with `d0(g) = anchor(s)`, in lexicographic `(g, s)` order.
pub(crate) fn action_pairs(act: &GroupoidAction) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for g in 0..act.groupoid().n_morphisms() {
        for s in 0..act.carrier() {
            if act.groupoid().d0(g) == act.anchor()[s] {
                pairs.push((g, s));
            }
        }
    }
    pairs
}

/// The action groupoid `G ⋉ S` and its covering projection onto `G`.
///
/// Objects are the carrier points; the morphism `(g, s)` runs from `s` to
/// `g•s`, and the composite of `(g, s)` followed by `(g', g•s)` has first
/// component the composite of `g` followed by `g'`.
pub fn action_groupoid(act: &GroupoidAction) -> Result<(Groupoid, GroupoidMorphism)> {
    let g = act.groupoid();
    let pairs = action_pairs(act);
    let index_of =
        |gg: usize, s: usize| -> usize { pairs.binary_search(&(gg, s)).expect("pair in the pullback") };
    let m = pairs.len();
    let d0: Vec<usize> = pairs.iter().map(|&(_, s)| s).collect();
    let d1: Vec<usize> = pairs
        .iter()
        .map(|&(gg, s)| act.act(gg, s).expect("pair in the pullback"))
        .collect();
    let id: Vec<usize> = (0..act.carrier())
        .map(|s| index_of(g.id(act.anchor()[s]), s))
        .collect();
    let mut comp = vec![None; m * m];
    for (j, &(g2, s2)) in pairs.iter().enumerate() {
        for (i, &(g1, s1)) in pairs.iter().enumerate() {
            if s2 == d1[i] {
                let composite = g.comp(g2, g1).expect("targets line up through the anchor");
                comp[j * m + i] = Some(index_of(composite, s1));
            }
        }
    }
    let inv: Vec<usize> = (0..m)
        .map(|i| {
            let (gg, _) = pairs[i];
            index_of(g.inv(gg), d1[i])
        })
        .collect();
    let total = Groupoid::validate(GroupoidData {
        n_objects: act.carrier(),
        d0,
        d1,
        id,
        comp,
        inv,
    })
    .map_err(|e| Error::InvalidAction(format!("action groupoid is not a groupoid: {e}")))?;
    let obj_map = act.anchor().to_vec();
    let mor_map: Vec<usize> = pairs.iter().map(|&(gg, _)| gg).collect();
    let projection = GroupoidMorphism::new(&total, g, obj_map, mor_map)?;
    debug_assert!(is_covering_morphism(&projection).is_covering());
    Ok((total, projection))
}

/// The action of the base on the object fibers of a covering:
/// `g • s = d1(S_q(g, s))`, anchored by the object map.
pub fn action_from_covering(q: &GroupoidMorphism) -> Result<GroupoidAction> {
    match is_covering_morphism(q) {
        CoveringCheck::Covering => {}
        other => return Err(Error::NotCovering(format!("{other:?}"))),
    }
    let src = q.source();
    let tgt = q.target();
    let carrier = src.n_objects();
    let anchor = q.obj_map().to_vec();
    let mut act = vec![None; tgt.n_morphisms() * carrier];
    for g in 0..tgt.n_morphisms() {
        for s in 0..carrier {
            if tgt.d0(g) == anchor[s] {
                let lifted = lifting_function(q, g, s)?;
                act[g * carrier + s] = Some(src.d1(lifted));
            }
        }
    }
    GroupoidAction::new(tgt, anchor, act)
}

/// Backtracking isomorphism search: object bijection first, then star-by-star
/// morphism matching with immediate composition checks.
pub fn find_groupoid_isomorphism(g: &Groupoid, h: &Groupoid) -> Option<GroupoidMorphism> {
    if g.n_objects() != h.n_objects() || g.n_morphisms() != h.n_morphisms() {
        return None;
    }
    let n = g.n_objects();
    let profile = |k: &Groupoid, x: usize| {
        let mut sizes: Vec<usize> = (0..k.n_objects()).map(|y| k.hom_set(x, y).len()).collect();
        sizes.sort_unstable();
        sizes
    };
    let g_profiles: Vec<Vec<usize>> = (0..n).map(|x| profile(g, x)).collect();
    let h_profiles: Vec<Vec<usize>> = (0..n).map(|x| profile(h, x)).collect();

    fn assign_objects(
        g: &Groupoid,
        h: &Groupoid,
        g_profiles: &[Vec<usize>],
        h_profiles: &[Vec<usize>],
        obj_map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> Option<GroupoidMorphism> {
        let n = g.n_objects();
        if depth == n {
            let objs: Vec<usize> = obj_map.iter().map(|o| o.unwrap()).collect();
            return assign_morphisms(g, h, &objs);
        }
        for y in 0..n {
            if used[y] || g_profiles[depth] != h_profiles[y] {
                continue;
            }
            let ok = (0..depth).all(|x| {
                let yx = obj_map[x].unwrap();
                g.hom_set(depth, x).len() == h.hom_set(y, yx).len()
                    && g.hom_set(x, depth).len() == h.hom_set(yx, y).len()
            }) && g.hom_set(depth, depth).len() == h.hom_set(y, y).len();
            if !ok {
                continue;
            }
            obj_map[depth] = Some(y);
            used[y] = true;
            if let Some(found) = assign_objects(g, h, g_profiles, h_profiles, obj_map, used, depth + 1)
            {
                return Some(found);
            }
            obj_map[depth] = None;
            used[y] = false;
        }
        None
    }

    fn assign_morphisms(g: &Groupoid, h: &Groupoid, objs: &[usize]) -> Option<GroupoidMorphism> {
        let m = g.n_morphisms();
        let mut mor_map: Vec<Option<usize>> = vec![None; m];
        let mut used = vec![false; m];
        for x in 0..g.n_objects() {
            let im = h.id(objs[x]);
            mor_map[g.id(x)] = Some(im);
            used[im] = true;
        }
        let free: Vec<usize> = (0..m).filter(|&i| mor_map[i].is_none()).collect();
        fn backtrack(
            g: &Groupoid,
            h: &Groupoid,
            objs: &[usize],
            free: &[usize],
            at: usize,
            mor_map: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
        ) -> bool {
            if at == free.len() {
                return true;
            }
            let a = free[at];
            for b in h.hom_set(objs[g.d0(a)], objs[g.d1(a)]) {
                if used[b] {
                    continue;
                }
                let consistent = (0..g.n_morphisms()).all(|c| {
                    let Some(cb) = mor_map[c] else { return true };
                    let fwd = match (g.comp(a, c), h.comp(b, cb)) {
                        (Some(ac), Some(bc)) => mor_map[ac].map_or(!used[bc], |im| im == bc),
                        (None, None) => true,
                        _ => false,
                    };
                    let bwd = match (g.comp(c, a), h.comp(cb, b)) {
                        (Some(ca), Some(cb2)) => mor_map[ca].map_or(!used[cb2], |im| im == cb2),
                        (None, None) => true,
                        _ => false,
                    };
                    fwd && bwd
                });
                if !consistent {
                    continue;
                }
                mor_map[a] = Some(b);
                used[b] = true;
                if backtrack(g, h, objs, free, at + 1, mor_map, used) {
                    return true;
                }
                mor_map[a] = None;
                used[b] = false;
            }
            false
        }
        if backtrack(g, h, objs, &free, 0, &mut mor_map, &mut used) {
            let mor: Vec<usize> = mor_map.iter().map(|v| v.unwrap()).collect();
            GroupoidMorphism::new(g, h, objs.to_vec(), mor).ok()
        } else {
            None
        }
    }

    let mut obj_map = vec![None; n];
    let mut used = vec![false; n];
    assign_objects(g, h, &g_profiles, &h_profiles, &mut obj_map, &mut used, 0)
}

/// Deterministic DOT rendering; identities are skipped unless requested.
pub fn to_dot(g: &Groupoid, name: &str, include_identities: bool) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n"));
    for x in 0..g.n_objects() {
        out.push_str(&format!("  o{x};\n"));
    }
    for m in 0..g.n_morphisms() {
        if !include_identities && g.is_identity(m) {
            continue;
        }
        out.push_str(&format!("  o{} -> o{} [label=\"m{}\"];\n", g.d0(m), g.d1(m), m));
    }
    out.push_str("}\n");
    out
}
