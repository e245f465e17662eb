//! Finite groups as operation tables, with the subgroup / quotient /
//! homomorphism machinery every other module consumes.
//!
//! Elements are integer indices `0..order` and the identity is always index 0;
//! [`FiniteGroup::validate`] relabels the input table if needed. Groups are
//! written additively in the doc comments but nothing assumes commutativity.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// A finite group given by its full operation table.
///
/// Invariants (enforced by [`FiniteGroup::validate`]): the table is associative,
/// index 0 is a two-sided identity and `inv` holds two-sided inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    op: Vec<usize>, // row-major, op[a * order + b] = a + b
    inv: Vec<usize>,
    label: String,
}

impl FiniteGroup {
    /// Validates an operation table and returns the group in canonical form
    /// (identity relabeled to index 0 if necessary).
    pub fn validate(table: &[Vec<usize>], label: impl Into<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        for row in table {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "table is {}x{}, expected {0}x{0}",
                    n,
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::MalformedTable(format!(
                    "entry {bad} out of range 0..{n}"
                )));
            }
        }
        let at = |a: usize, b: usize| table[a][b];
        // two-sided identity
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(Error::NoIdentity)?;
        // two-sided inverses
        for a in 0..n {
            (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(Error::NoInverse { element: a })?;
        }
        // associativity, witnesses reported in the input labeling
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        // canonical form: swap identity into slot 0
        let relabel: Vec<usize> = (0..n)
            .map(|i| {
                if i == identity {
                    0
                } else if i == 0 {
                    identity
                } else {
                    i
                }
            })
            .collect();
        let mut op = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                op[relabel[a] * n + relabel[b]] = relabel[at(a, b)];
            }
        }
        let mut inv = vec![0usize; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| op[a * n + b] == 0).unwrap();
        }
        Ok(FiniteGroup {
            order: n,
            op,
            inv,
            label: label.into(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// a + b - a
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.op(self.op(a, b), self.inv(a))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// The table as nested rows (the serialization layout).
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.op(a, b)).collect())
            .collect()
    }

    /// Same underlying table, ignoring labels.
    pub fn table_eq(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.op == other.op
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_witness().is_none()
    }

    pub(crate) fn abelian_witness(&self) -> Option<(usize, usize)> {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.op(a, b) != self.op(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, g);
            k += 1;
        }
        k
    }

    // ---- standard families -------------------------------------------------

    /// Cyclic group of order `n`, labeled `Zn`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::validate(&table, format!("Z{n}")).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n` (symmetries of the regular n-gon), labeled `Dn`.
    ///
    /// Element `j*n + i` is `s^j r^i`; the relation is `r s = s r^(n-1)`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let idx = |j: usize, i: usize| j * n + i;
        let mut table = vec![vec![0usize; 2 * n]; 2 * n];
        for j1 in 0..2 {
            for i1 in 0..n {
                for j2 in 0..2 {
                    for i2 in 0..n {
                        // (s^j1 r^i1)(s^j2 r^i2) = s^(j1+j2) r^(±i1 + i2)
                        let i = if j2 == 0 { (i1 + i2) % n } else { (n - i1 % n + i2) % n };
                        table[idx(j1, i1)][idx(j2, i2)] = idx((j1 + j2) % 2, i);
                    }
                }
            }
        }
        Self::validate(&table, format!("D{n}")).expect("dihedral table is a group")
    }

    /// Symmetric group on `n` letters with permutations in lexicographic order,
    /// composed as `(p * q)(i) = p(q(i))`. Labeled `Sn`.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=5).contains(&n), "desk scale");
        let perms = permutations(n);
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let m = perms.len();
        let mut table = vec![vec![0usize; m]; m];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..n).map(|i| p[q[i]]).collect();
                table[a][b] = index[&composed];
            }
        }
        Self::validate(&table, format!("S{n}")).expect("symmetric table is a group")
    }

    /// Direct product with pair `(a, b)` at index `a * |H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let n = g.order * h.order;
        let idx = |a: usize, b: usize| a * h.order + b;
        let mut table = vec![vec![0usize; n]; n];
        for a1 in 0..g.order {
            for b1 in 0..h.order {
                for a2 in 0..g.order {
                    for b2 in 0..h.order {
                        table[idx(a1, b1)][idx(a2, b2)] = idx(g.op(a1, a2), h.op(b1, b2));
                    }
                }
            }
        }
        Self::validate(&table, format!("{}x{}", g.label, h.label)).expect("product of groups")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn klein() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    // ---- subgroups -----------------------------------------------------------

    /// The subgroup generated by `seed`, as a sorted element list.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(0);
        for &g in seed {
            if !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
        let mut members = vec![0usize];
        while let Some(g) = queue.pop_front() {
            if g != 0 {
                members.push(g);
            }
            let candidates: Vec<usize> = seed
                .iter()
                .map(|&s| self.op(g, s))
                .chain(std::iter::once(self.inv(g)))
                .collect();
            for c in candidates {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// All subgroups, in lexicographic order of their sorted element lists.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
        found.insert(vec![0]);
        while let Some(h) = frontier.pop() {
            for g in 1..self.order {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut seed = h.clone();
                seed.push(g);
                let bigger = self.closure(&seed);
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        found
            .into_iter()
            .map(|elements| Subgroup {
                parent: self.clone(),
                elements,
            })
            .collect()
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.subgroups()
            .into_iter()
            .filter(|s| s.normality_witness().is_none())
            .collect()
    }

    pub fn center(&self) -> Subgroup {
        let elements: Vec<usize> = (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.op(z, g) == self.op(g, z)))
            .collect();
        Subgroup {
            parent: self.clone(),
            elements,
        }
    }

    /// Quotient by a normal subgroup, with cosets ordered by least member,
    /// plus the projection homomorphism.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
        n.check_parent(self)?;
        if let Some((g, h)) = n.normality_witness() {
            return Err(Error::NotNormal { g, n: h });
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = n.elements.iter().map(|&x| self.op(g, x)).collect();
            members.sort_unstable();
            let id = cosets.len();
            for &m in &members {
                coset_of[m] = id;
            }
            cosets.push(members);
        }
        // cosets were discovered in least-member order because g scans upward
        let q = cosets.len();
        let mut table = vec![vec![0usize; q]; q];
        for (i, ci) in cosets.iter().enumerate() {
            for (j, cj) in cosets.iter().enumerate() {
                table[i][j] = coset_of[self.op(ci[0], cj[0])];
            }
        }
        let quotient = FiniteGroup::validate(&table, format!("{}/{}", self.label, n.describe()))?;
        let proj = GroupHom::new(self, &quotient, coset_of)?;
        Ok((quotient, proj))
    }

    /// Smallest generating sequence found by a greedy sweep in index order.
    pub fn minimal_generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut reach = vec![0usize];
        for g in 1..self.order {
            if reach.binary_search(&g).is_err() {
                gens.push(g);
                reach = self.closure(&gens);
                if reach.len() == self.order {
                    break;
                }
            }
        }
        gens
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// A subgroup, stored as the sorted element list of its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks closure under the operation and inverses.
    pub fn new(parent: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.binary_search(&0).is_err() {
            return Err(Error::NotSubgroup("missing the identity".into()));
        }
        for &a in &elements {
            if a >= parent.order() {
                return Err(Error::NotSubgroup(format!("element {a} out of range")));
            }
            if elements.binary_search(&parent.inv(a)).is_err() {
                return Err(Error::NotSubgroup(format!("not closed under inverse of {a}")));
            }
            for &b in &elements {
                if elements.binary_search(&parent.op(a, b)).is_err() {
                    return Err(Error::NotSubgroup(format!("not closed under {a} + {b}")));
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            elements,
        })
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    fn check_parent(&self, g: &FiniteGroup) -> Result<()> {
        if self.parent.table_eq(g) {
            Ok(())
        } else {
            Err(Error::NotSubgroup("subgroup belongs to a different group".into()))
        }
    }

    /// `Some((g, n))` with `g + n - g` outside the subgroup, `None` if normal.
    pub fn normality_witness(&self) -> Option<(usize, usize)> {
        for g in 0..self.parent.order() {
            for &n in &self.elements {
                if !self.contains(self.parent.conj(g, n)) {
                    return Some((g, n));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    /// The subgroup as a standalone group plus the relabeling `new index -> parent element`.
    pub fn as_group(&self, label: impl Into<String>) -> (FiniteGroup, Vec<usize>) {
        let position: HashMap<usize, usize> =
            self.elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let k = self.elements.len();
        let mut table = vec![vec![0usize; k]; k];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i][j] = position[&self.parent.op(a, b)];
            }
        }
        let group = FiniteGroup::validate(&table, label).expect("subgroup table is a group");
        (group, self.elements.clone())
    }

    fn describe(&self) -> String {
        let inner: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// A group homomorphism as a total element table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::MalformedTable(format!(
                "hom map has length {}, expected {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::MalformedTable(format!("image {bad} out of range")));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.op(a, b)] != target.op(map[a], map[b]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        debug_assert_eq!(map[0], 0, "homs send identity to identity");
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            map: (0..g.order()).collect(),
        }
    }

    pub fn zero(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            map: vec![0; source.order()],
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other` after `self` (`other ∘ self`); sources and targets must line up.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if !self.target.table_eq(&other.source) {
            return Err(Error::MalformedTable(
                "composition mismatch: target differs from source".into(),
            ));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        })
    }

    pub fn kernel(&self) -> Subgroup {
        let elements: Vec<usize> = (0..self.source.order()).filter(|&a| self.map[a] == 0).collect();
        Subgroup {
            parent: self.source.clone(),
            elements,
        }
    }

    pub fn image(&self) -> Subgroup {
        let mut elements: Vec<usize> = self.map.clone();
        elements.sort_unstable();
        elements.dedup();
        Subgroup {
            parent: self.target.clone(),
            elements,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective() && self.is_surjective()
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_bijective() {
            return Err(Error::NotIso("hom is not bijective".into()));
        }
        let mut map = vec![0usize; self.target.order()];
        for (a, &b) in self.map.iter().enumerate() {
            map[b] = a;
        }
        Ok(GroupHom {
            source: self.target.clone(),
            target: self.source.clone(),
            map,
        })
    }
}

/// Kernel and image of a homomorphism in one call.
pub fn hom_invariants(h: &GroupHom) -> (Subgroup, Subgroup) {
    (h.kernel(), h.image())
}

// ---- homomorphism enumeration ------------------------------------------------

/// Minimal multiplication interface for hom-search targets; lets the search run
/// against automorphism groups without materializing their Cayley tables.
pub(crate) trait MulTable {
    fn size(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn elem_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

impl MulTable for FiniteGroup {
    fn size(&self) -> usize {
        self.order
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.op(a, b)
    }
}

/// All maps `source -> target element indices` that are homomorphisms, found by
/// backtracking over generator images, returned in lexicographic map order.
pub(crate) fn enumerate_hom_maps(source: &FiniteGroup, target: &impl MulTable) -> Vec<Vec<usize>> {
    let gens = source.minimal_generators();
    if gens.is_empty() {
        return vec![vec![0]]; // trivial source
    }
    let orders: Vec<usize> = gens.iter().map(|&g| source.element_order(g)).collect();
    let mut results: Vec<Vec<usize>> = Vec::new();
    let mut partial: Vec<Option<usize>> = vec![None; source.order()];
    partial[0] = Some(0);
    search(source, target, &gens, &orders, 0, &mut partial, &mut results);
    results.sort_unstable();
    results
}

fn search(
    source: &FiniteGroup,
    target: &impl MulTable,
    gens: &[usize],
    gen_orders: &[usize],
    depth: usize,
    partial: &mut Vec<Option<usize>>,
    results: &mut Vec<Vec<usize>>,
) {
    if depth == gens.len() {
        if let Some(map) = complete(source, target, partial) {
            results.push(map);
        }
        return;
    }
    let g = gens[depth];
    for img in 0..target.size() {
        if gen_orders[depth] % target.elem_order(img) != 0 {
            continue;
        }
        let saved = partial.clone();
        partial[g] = Some(img);
        if propagate(source, target, partial) {
            search(source, target, gens, gen_orders, depth + 1, partial, results);
        }
        *partial = saved;
    }
}

/// Closes the partial map under products; returns false on contradiction.
fn propagate(source: &FiniteGroup, target: &impl MulTable, partial: &mut [Option<usize>]) -> bool {
    loop {
        let mut changed = false;
        let known: Vec<usize> = (0..source.order()).filter(|&a| partial[a].is_some()).collect();
        for &a in &known {
            for &b in &known {
                let ab = source.op(a, b);
                let img = target.mul(partial[a].unwrap(), partial[b].unwrap());
                match partial[ab] {
                    Some(existing) if existing != img => return false,
                    Some(_) => {}
                    None => {
                        partial[ab] = Some(img);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn complete(
    source: &FiniteGroup,
    target: &impl MulTable,
    partial: &[Option<usize>],
) -> Option<Vec<usize>> {
    let map: Vec<usize> = partial.iter().map(|v| v.expect("generators span the group"))
        .collect();
    for a in 0..source.order() {
        for b in 0..source.order() {
            if map[source.op(a, b)] != target.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}

/// Every group homomorphism `source -> target`, deterministic order.
pub fn enumerate_homs(source: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupHom> {
    enumerate_hom_maps(source, target)
        .into_iter()
        .map(|map| GroupHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
        .collect()
}

/// Some isomorphism `g -> h`, or `None`; searches bijective homs with early exit.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupHom> {
    if g.order() != h.order() {
        return None;
    }
    // cheap invariant screens before the search
    if g.is_abelian() != h.is_abelian() {
        return None;
    }
    let mut g_orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let mut h_orders: Vec<usize> = (0..h.order()).map(|x| h.element_order(x)).collect();
    g_orders.sort_unstable();
    h_orders.sort_unstable();
    if g_orders != h_orders {
        return None;
    }
    enumerate_homs(g, h).into_iter().find(|hom| hom.is_bijective())
}

pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    find_isomorphism(g, h).is_some()
}

// ---- automorphisms -------------------------------------------------------------

/// Automorphisms of `g` as raw maps, lexicographically sorted (identity first).
pub fn automorphism_maps(g: &FiniteGroup) -> Vec<Vec<usize>> {
    enumerate_hom_maps(g, g)
        .into_iter()
        .filter(|map| {
            let mut seen = vec![false; map.len()];
            map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
        .collect()
}

/// Aut expressed through its sorted map list; multiplication is composition
/// `(a ∘ b)(g) = a(b(g))` resolved by hash lookup.
pub(crate) struct AutGroup {
    pub maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl AutGroup {
    pub fn new(g: &FiniteGroup) -> Self {
        let maps = automorphism_maps(g);
        let index = maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        AutGroup { maps, index }
    }
}

impl MulTable for AutGroup {
    fn size(&self) -> usize {
        self.maps.len()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (fa, fb) = (&self.maps[a], &self.maps[b]);
        let composed: Vec<usize> = (0..fa.len()).map(|g| fa[fb[g]]).collect();
        self.index[&composed]
    }
}

/// The automorphism group as a `FiniteGroup` over automorphism indices, plus the
/// evaluation table `eval[aut][g] = aut(g)`. Composition order is `(a∘b)(g) = a(b(g))`.
pub fn automorphism_group(g: &FiniteGroup) -> (FiniteGroup, Vec<Vec<usize>>) {
    let aut = AutGroup::new(g);
    let k = aut.maps.len();
    assert!(k <= 4096, "automorphism table materialization is desk-scale only");
    let mut table = vec![vec![0usize; k]; k];
    for a in 0..k {
        for b in 0..k {
            table[a][b] = aut.mul(a, b);
        }
    }
    // identity map is lexicographically least, so it already sits at index 0
    let group = FiniteGroup::validate(&table, format!("Aut({})", g.label()))
        .expect("automorphism composition is a group");
    (group, aut.maps)
}

// ---- group actions on groups ------------------------------------------------

/// An action of `actor` on `target` by automorphisms, as a full table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    actor: FiniteGroup,  // B
    target: FiniteGroup, // A
    table: Vec<usize>,   // table[b * |A| + a] = b . a
}

impl GroupAction {
    pub fn new(actor: &FiniteGroup, target: &FiniteGroup, table: Vec<usize>) -> Result<Self> {
        let (nb, na) = (actor.order(), target.order());
        if table.len() != nb * na {
            return Err(Error::BadAction(format!(
                "action table has {} entries, expected {}",
                table.len(),
                nb * na
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= na) {
            return Err(Error::BadAction(format!("action value {bad} out of range")));
        }
        let act = |b: usize, a: usize| table[b * na + a];
        for a in 0..na {
            if act(0, a) != a {
                return Err(Error::BadAction(format!("identity actor moves {a}")));
            }
        }
        for b1 in 0..nb {
            for b2 in 0..nb {
                for a in 0..na {
                    if act(actor.op(b1, b2), a) != act(b1, act(b2, a)) {
                        return Err(Error::BadAction(format!(
                            "not compatible with the actor operation at ({b1}, {b2}, {a})"
                        )));
                    }
                }
            }
        }
        for b in 0..nb {
            for a1 in 0..na {
                for a2 in 0..na {
                    if act(b, target.op(a1, a2)) != target.op(act(b, a1), act(b, a2)) {
                        return Err(Error::BadAction(format!(
                            "actor {b} is not an endomorphism at ({a1}, {a2})"
                        )));
                    }
                }
            }
            let mut seen = vec![false; na];
            for a in 0..na {
                if std::mem::replace(&mut seen[act(b, a)], true) {
                    return Err(Error::BadAction(format!("actor {b} is not injective")));
                }
            }
        }
        Ok(GroupAction {
            actor: actor.clone(),
            target: target.clone(),
            table,
        })
    }

    pub fn trivial(actor: &FiniteGroup, target: &FiniteGroup) -> Self {
        let table = (0..actor.order()).flat_map(|_| 0..target.order()).collect();
        GroupAction {
            actor: actor.clone(),
            target: target.clone(),
            table,
        }
    }

    /// Conjugation of a group on itself.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        let n = g.order();
        let table = (0..n).flat_map(|b| (0..n).map(move |a| (b, a))).map(|(b, a)| g.conj(b, a)).collect();
        GroupAction {
            actor: g.clone(),
            target: g.clone(),
            table,
        }
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    #[inline]
    pub fn act(&self, b: usize, a: usize) -> usize {
        self.table[b * self.target.order() + a]
    }

    pub fn raw_table(&self) -> &[usize] {
        &self.table
    }

    /// Table as `|B|` rows of length `|A|` (the serialization layout).
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let na = self.target.order();
        (0..self.actor.order())
            .map(|b| self.table[b * na..(b + 1) * na].to_vec())
            .collect()
    }

    /// Pullback along a homomorphism into the actor.
    pub fn pulled_back(&self, along: &GroupHom) -> Result<GroupAction> {
        if !along.target().table_eq(&self.actor) {
            return Err(Error::BadAction("pullback target differs from actor".into()));
        }
        let na = self.target.order();
        let mut table = Vec::with_capacity(along.source().order() * na);
        for x in 0..along.source().order() {
            let b = along.apply(x);
            table.extend((0..na).map(|a| self.act(b, a)));
        }
        Ok(GroupAction {
            actor: along.source().clone(),
            target: self.target.clone(),
            table,
        })
    }

    pub fn is_trivial(&self) -> bool {
        let na = self.target.order();
        (0..self.actor.order()).all(|b| (0..na).all(|a| self.act(b, a) == a))
    }
}

/// Every action of `actor` on `target` (equivalently every hom into Aut(target)),
/// deterministic order.
pub fn enumerate_actions(actor: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupAction> {
    let aut = AutGroup::new(target);
    enumerate_hom_maps(actor, &aut)
        .into_iter()
        .map(|hom_map| {
            let na = target.order();
            let mut table = Vec::with_capacity(actor.order() * na);
            for b in 0..actor.order() {
                table.extend_from_slice(&aut.maps[hom_map[b]]);
                debug_assert_eq!(aut.maps[hom_map[b]].len(), na);
            }
            GroupAction {
                actor: actor.clone(),
                target: target.clone(),
                table,
            }
        })
        .collect()
}

/// Semidirect product `A ⋊ X` for an action of `X` on `A`:
/// `(a1, x1) + (a, x) = (a1 + x1·a, x1 + x)`, pair `(a, x)` at index `a * |X| + x`.
pub fn semidirect_product(a: &FiniteGroup, x: &FiniteGroup, action: &GroupAction) -> FiniteGroup {
    assert!(action.actor().table_eq(x) && action.target().table_eq(a));
    let (na, nx) = (a.order(), x.order());
    let idx = |p: usize, q: usize| p * nx + q;
    let n = na * nx;
    let mut table = vec![vec![0usize; n]; n];
    for a1 in 0..na {
        for x1 in 0..nx {
            for a2 in 0..na {
                for x2 in 0..nx {
                    table[idx(a1, x1)][idx(a2, x2)] =
                        idx(a.op(a1, action.act(x1, a2)), x.op(x1, x2));
                }
            }
        }
    }
    FiniteGroup::validate(&table, format!("{}x|{}", a.label(), x.label()))
        .expect("semidirect product is a group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn z2_is_a_group() {
        let g = FiniteGroup::validate(&[vec![0, 1], vec![1, 0]], "Z2").unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.is_abelian());
    }

    #[test]
    fn monoid_without_inverse_is_rejected() {
        let err = FiniteGroup::validate(&[vec![0, 1], vec![1, 1]], "").unwrap_err();
        assert!(matches!(err, Error::NoInverse { element: 1 }));
    }

    #[test]
    fn identity_is_relocated_to_zero() {
        // Z2 with identity at index 1
        let g = FiniteGroup::validate(&[vec![1, 0], vec![0, 1]], "").unwrap();
        assert_eq!(g.op(0, 0), 0);
        assert_eq!(g.op(1, 1), 0);
    }

    /// Independent oracle: S3 as explicit permutation composition.
    #[test]
    fn symmetric_group_matches_permutation_oracle() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let perms = permutations(3);
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..3).map(|i| p[q[i]]).collect();
                let c = perms.iter().position(|r| *r == composed).unwrap();
                assert_eq!(s3.op(a, b), c);
            }
        }
    }

    /// Independent oracle: all subsets closed under op and inverse.
    fn subgroup_oracle(g: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        assert!(n <= 12);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = set.iter().all(|&a| {
                set.binary_search(&g.inv(a)).is_ok()
                    && set.iter().all(|&b| set.binary_search(&g.op(a, b)).is_ok())
            });
            if ok {
                out.push(set);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(FiniteGroup::cyclic(1).subgroups().len(), 1);
        let z4 = FiniteGroup::cyclic(4);
        let subs = z4.subgroups();
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().any(|s| s.elements() == [0, 2]));
        assert_eq!(FiniteGroup::symmetric(3).subgroups().len(), 6);
    }

    #[test]
    fn subgroups_match_subset_closure_oracle() {
        for g in [
            FiniteGroup::cyclic(8),
            FiniteGroup::cyclic(12),
            FiniteGroup::symmetric(3),
            FiniteGroup::dihedral(4),
            FiniteGroup::klein(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)),
        ] {
            let got: Vec<Vec<usize>> =
                g.subgroups().into_iter().map(|s| s.elements().to_vec()).collect();
            assert_eq!(got, subgroup_oracle(&g), "subgroups of {}", g.label());
        }
    }

    #[test]
    fn quotient_of_z4() {
        let z4 = FiniteGroup::cyclic(4);
        let n = Subgroup::new(&z4, vec![0, 2]).unwrap();
        let (q, p) = z4.quotient(&n).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(p.apply(1), 1);
        assert_eq!(p.kernel().elements(), &[0, 2]);
    }

    #[test]
    fn quotient_by_trivial_is_bijective() {
        let s3 = FiniteGroup::symmetric(3);
        let n = Subgroup::new(&s3, vec![0]).unwrap();
        let (q, p) = s3.quotient(&n).unwrap();
        assert_eq!(q.order(), 6);
        assert!(p.is_bijective());
    }

    #[test]
    fn quotient_s3_by_a3() {
        let s3 = FiniteGroup::symmetric(3);
        let a3 = s3
            .normal_subgroups()
            .into_iter()
            .find(|s| s.order() == 3)
            .unwrap();
        let (q, _) = s3.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn non_normal_subgroup_is_rejected() {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3
            .subgroups()
            .into_iter()
            .find(|s| s.order() == 2)
            .unwrap();
        assert!(matches!(s3.quotient(&h), Err(Error::NotNormal { .. })));
    }

    /// Independent oracle: raw scan over all set maps for tiny groups.
    fn hom_oracle(g: &FiniteGroup, h: &FiniteGroup) -> usize {
        let (n, m) = (g.order(), h.order());
        let total: usize = m.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let map: Vec<usize> = (0..n)
                    .scan(code, |c, _| {
                        let v = *c % m;
                        *c /= m;
                        Some(v)
                    })
                    .collect();
                (0..n).all(|a| (0..n).all(|b| map[g.op(a, b)] == h.op(map[a], map[b])))
            })
            .count()
    }

    #[test]
    fn hom_enumeration_counts() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(enumerate_homs(&z2, &z2).len(), 2);
        assert_eq!(enumerate_homs(&z3, &z2).len(), 1);
        assert_eq!(enumerate_homs(&FiniteGroup::symmetric(3), &FiniteGroup::trivial()).len(), 1);
        for (g, h) in [
            (FiniteGroup::cyclic(4), FiniteGroup::cyclic(2)),
            (FiniteGroup::symmetric(3), FiniteGroup::cyclic(2)),
            (FiniteGroup::klein(), FiniteGroup::klein()),
            (FiniteGroup::symmetric(3), FiniteGroup::symmetric(3)),
        ] {
            assert_eq!(enumerate_homs(&g, &h).len(), hom_oracle(&g, &h), "{} -> {}", g.label(), h.label());
        }
    }

    #[test]
    fn first_isomorphism_theorem_numerically() {
        let pairs = [
            (FiniteGroup::cyclic(4), FiniteGroup::cyclic(2)),
            (FiniteGroup::symmetric(3), FiniteGroup::symmetric(3)),
            (FiniteGroup::dihedral(4), FiniteGroup::cyclic(2)),
        ];
        for (g, h) in pairs {
            for hom in enumerate_homs(&g, &h) {
                let (k, im) = hom_invariants(&hom);
                assert_eq!(g.order(), k.order() * im.order());
                assert!(Subgroup::new(&h, im.elements().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn kernel_image_of_mod2() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let h = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(h.kernel().elements(), &[0, 2]);
        assert!(h.is_surjective());
    }

    #[test]
    fn center_of_s3_is_trivial() {
        assert!(FiniteGroup::symmetric(3).center().is_trivial());
        assert!(FiniteGroup::cyclic(5).center().is_full());
    }

    #[test]
    fn automorphism_groups() {
        let (aut_z3, _) = automorphism_group(&FiniteGroup::cyclic(3));
        assert_eq!(aut_z3.order(), 2);
        let (aut_z2, _) = automorphism_group(&FiniteGroup::cyclic(2));
        assert_eq!(aut_z2.order(), 1);
        let (aut_v4, eval) = automorphism_group(&FiniteGroup::klein());
        assert_eq!(aut_v4.order(), 6);
        // faithful: distinct automorphisms give distinct permutations
        for i in 0..eval.len() {
            for j in (i + 1)..eval.len() {
                assert_ne!(eval[i], eval[j]);
            }
        }
    }

    #[test]
    fn automorphism_composition_convention() {
        // (a ∘ b)(g) = a(b(g))
        let g = FiniteGroup::klein();
        let (aut, eval) = automorphism_group(&g);
        for a in 0..aut.order() {
            for b in 0..aut.order() {
                let c = aut.op(a, b);
                for x in g.elements() {
                    assert_eq!(eval[c][x], eval[a][eval[b][x]]);
                }
            }
        }
    }

    #[test]
    fn dihedral_groups_are_groups() {
        for n in 1..=6 {
            let d = FiniteGroup::dihedral(n);
            assert_eq!(d.order(), 2 * n);
        }
        assert!(are_isomorphic(&FiniteGroup::dihedral(3), &FiniteGroup::symmetric(3)));
        assert!(!are_isomorphic(&FiniteGroup::dihedral(4), &FiniteGroup::cyclic(8)));
    }

    #[test]
    fn conjugation_action_is_valid() {
        let s3 = FiniteGroup::symmetric(3);
        let act = GroupAction::conjugation(&s3);
        GroupAction::new(&s3, &s3, act.raw_table().to_vec()).unwrap();
    }

    #[test]
    fn shifted_action_is_rejected() {
        // 1·a = a + 1 is not an automorphism (does not fix 0)
        let z2 = FiniteGroup::cyclic(2);
        let err = GroupAction::new(&z2, &z2, vec![0, 1, 1, 0]).unwrap_err();
        assert!(matches!(err, Error::BadAction(_)));
    }

    #[test]
    fn action_enumeration_matches_aut_homs() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        // Aut(Z3) = Z2, so there are two actions of Z2 on Z3
        let actions = enumerate_actions(&z2, &z3);
        assert_eq!(actions.len(), 2);
        assert!(actions[0].is_trivial());
        assert_eq!(actions[1].act(1, 1), 2); // inversion
    }

    #[test]
    fn semidirect_of_inversion_is_s3 () {
        let z3 = FiniteGroup::cyclic(3);
        let z2 = FiniteGroup::cyclic(2);
        let inversion = enumerate_actions(&z2, &z3).pop().unwrap();
        assert!(!inversion.is_trivial());
        let sd = semidirect_product(&z3, &z2, &inversion);
        assert!(are_isomorphic(&sd, &FiniteGroup::symmetric(3)));
    }

    proptest! {
        #[test]
        fn closure_of_random_subset_is_a_subgroup(n in 1usize..=10, mask in 0usize..1024) {
            let g = FiniteGroup::cyclic(n);
            let seed: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let members = g.closure(&seed);
            prop_assert!(Subgroup::new(&g, members).is_ok());
        }

        #[test]
        fn product_groups_validate(a in 1usize..=4, b in 1usize..=4) {
            let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(a), &FiniteGroup::cyclic(b));
            prop_assert_eq!(g.order(), a * b);
            prop_assert!(FiniteGroup::validate(&g.table(), "roundtrip").is_ok());
        }
    }
}
