//! Catalog generation and persistence: named group families up to a cap,
//! every crossed module over catalog pairs within the order-product cap, and
//! the quotient liftings of each.

use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{are_isomorphic, enumerate_actions, enumerate_homs, FiniteGroup, GroupHom};
use crate::lifting::{enumerate_liftings, validate_lifting, Lifting};
use crate::serial::{GroupJson, LiftingJson, XModJson};
use crate::xmod::{validate_xmod, CrossedModule};

pub const DEFAULT_MAX_ORDER: usize = 16;
pub const HARD_CAP: usize = 24;
pub const PRODUCT_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub version: String,
    pub max_order: usize,
    pub product_cap: usize,
}

#[derive(Debug, Clone)]
pub struct CatalogXMod {
    pub id: String,
    pub xmod: Arc<CrossedModule>,
}

#[derive(Debug, Clone)]
pub struct CatalogLifting {
    pub base_id: String,
    pub lifting: Lifting,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub provenance: Provenance,
    pub groups: Vec<FiniteGroup>,
    pub xmods: Vec<CatalogXMod>,
    pub liftings: Vec<CatalogLifting>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CatalogJson {
    provenance: Provenance,
    groups: Vec<GroupJson>,
    xmods: Vec<XModJson>,
    liftings: Vec<LiftingJson>,
}

/// All catalog groups up to `max_order`: cyclic, symmetric, dihedral families
/// and direct products of previously accepted groups, isomorph-rejected in
/// generation order.
pub fn generate_groups(max_order: usize) -> Vec<FiniteGroup> {
    let mut groups: Vec<FiniteGroup> = Vec::new();
    let push = |g: FiniteGroup, groups: &mut Vec<FiniteGroup>| {
        if g.order() <= max_order && !groups.iter().any(|h| are_isomorphic(h, &g)) {
            groups.push(g);
        }
    };
    for n in 1..=max_order {
        push(FiniteGroup::cyclic(n), &mut groups);
    }
    for n in 3..=4 {
        if factorial(n) <= max_order {
            push(FiniteGroup::symmetric(n), &mut groups);
        }
    }
    for n in 3..=max_order / 2 {
        push(FiniteGroup::dihedral(n), &mut groups);
    }
    // close under binary direct products
    let mut frontier = 0;
    while frontier < groups.len() {
        let current = groups.len();
        for i in 0..current {
            for j in frontier..current {
                if groups[i].order() * groups[j].order() <= max_order {
                    push(
                        FiniteGroup::direct_product(&groups[i], &groups[j]),
                        &mut groups,
                    );
                }
            }
        }
        frontier = current;
    }
    groups.sort_by_key(|g| g.order());
    groups
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Every crossed module over ordered catalog pairs with `|A|·|B| <= cap`,
/// found by enumerating structure morphisms and compatible actions.
pub fn generate_xmods(groups: &[FiniteGroup], product_cap: usize) -> Vec<Arc<CrossedModule>> {
    let pairs: Vec<(usize, usize)> = (0..groups.len())
        .flat_map(|i| (0..groups.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| groups[i].order() * groups[j].order() <= product_cap)
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&groups[i], &groups[j]);
            let mut found = Vec::new();
            let actions = enumerate_actions(b, a);
            for alpha in enumerate_homs(a, b) {
                for action in &actions {
                    if let Ok(xm) = validate_xmod(alpha.clone(), action.clone()) {
                        found.push(Arc::new(xm));
                    }
                }
            }
            found
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Generates the full catalog. `max_order` must stay at or below the hard cap.
pub fn generate_catalog(max_order: usize) -> Result<Catalog> {
    if max_order == 0 || max_order > HARD_CAP {
        return Err(Error::CapExceeded {
            requested: max_order,
            cap: HARD_CAP,
        });
    }
    let groups = generate_groups(max_order);
    let xmods: Vec<CatalogXMod> = generate_xmods(&groups, PRODUCT_CAP)
        .into_iter()
        .enumerate()
        .map(|(i, xmod)| CatalogXMod {
            id: format!("xm{i:05}"),
            xmod,
        })
        .collect();
    let liftings: Vec<CatalogLifting> = xmods
        .par_iter()
        .map(|entry| {
            enumerate_liftings(&entry.xmod)
                .into_iter()
                .map(|lifting| CatalogLifting {
                    base_id: entry.id.clone(),
                    lifting,
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(Catalog {
        provenance: Provenance {
            generator: "xmodkit".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            max_order,
            product_cap: PRODUCT_CAP,
        },
        groups,
        xmods,
        liftings,
    })
}

impl Catalog {
    pub fn group(&self, label: &str) -> Result<&FiniteGroup> {
        self.groups
            .iter()
            .find(|g| g.label() == label)
            .ok_or_else(|| Error::NotFound(format!("group {label}")))
    }

    pub fn xmod(&self, id: &str) -> Result<&CatalogXMod> {
        self.xmods
            .iter()
            .find(|x| x.id == id)
            .ok_or_else(|| Error::NotFound(format!("crossed module {id}")))
    }

    pub fn liftings_of(&self, id: &str) -> Vec<&CatalogLifting> {
        self.liftings.iter().filter(|l| l.base_id == id).collect()
    }

    fn to_json(&self) -> CatalogJson {
        CatalogJson {
            provenance: self.provenance.clone(),
            groups: self.groups.iter().map(GroupJson::of).collect(),
            xmods: self
                .xmods
                .iter()
                .map(|x| XModJson::of(Some(x.id.clone()), &x.xmod))
                .collect(),
            liftings: self
                .liftings
                .iter()
                .map(|l| LiftingJson {
                    base: l.base_id.clone(),
                    x: GroupJson::of(l.lifting.x_group()),
                    omega: l.lifting.omega().map().to_vec(),
                    phi: l.lifting.phi().map().to_vec(),
                    degree: l.lifting.degree(),
                })
                .collect(),
        }
    }

    /// Writes the catalog as compact JSON with stable key order.
    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string(&self.to_json())?)?;
        Ok(())
    }

    /// Reads and revalidates a catalog; the first invalid entry is an error.
    pub fn load(path: &Path) -> Result<Catalog> {
        match load_report(path)? {
            (Some(catalog), _) => Ok(catalog),
            (None, failures) => Err(Error::MalformedTable(
                failures.into_iter().next().unwrap_or_else(|| "empty catalog".into()),
            )),
        }
    }
}

/// Reads a catalog, revalidating every entry; failures are collected rather
/// than short-circuiting so a verification run can report them all.
pub fn load_report(path: &Path) -> Result<(Option<Catalog>, Vec<String>)> {
    let text = std::fs::read_to_string(path)?;
    let json: CatalogJson = serde_json::from_str(&text)?;
    let mut failures = Vec::new();
    let mut groups = Vec::new();
    for g in &json.groups {
        match g.to_group() {
            Ok(group) => {
                if groups.iter().any(|h: &FiniteGroup| h.label() == group.label()) {
                    failures.push(format!("duplicate group label {}", group.label()));
                }
                groups.push(group);
            }
            Err(e) => failures.push(format!("group {}: {e}", g.label)),
        }
    }
    let mut xmods: Vec<CatalogXMod> = Vec::new();
    for x in &json.xmods {
        let id = x.id.clone().unwrap_or_else(|| "<missing id>".into());
        match x.to_xmod() {
            Ok(xm) => xmods.push(CatalogXMod {
                id,
                xmod: Arc::new(xm),
            }),
            Err(e) => failures.push(format!("crossed module {id}: {e}")),
        }
    }
    if xmods.iter().map(|x| &x.id).collect::<std::collections::BTreeSet<_>>().len() != xmods.len()
    {
        failures.push("duplicate crossed-module ids".into());
    }
    let mut liftings = Vec::new();
    for (i, l) in json.liftings.iter().enumerate() {
        let base = match xmods.iter().find(|x| x.id == l.base) {
            Some(b) => b,
            None => {
                failures.push(format!("lifting {i}: unknown base {}", l.base));
                continue;
            }
        };
        let built = l.x.to_group().and_then(|x_group| {
            let omega = GroupHom::new(&x_group, base.xmod.b(), l.omega.clone())?;
            let phi = GroupHom::new(base.xmod.a(), &x_group, l.phi.clone())?;
            validate_lifting(&base.xmod, x_group, omega, phi)
        });
        match built {
            Ok(lifting) => {
                if lifting.degree() != l.degree {
                    failures.push(format!("lifting {i}: stored degree differs"));
                }
                liftings.push(CatalogLifting {
                    base_id: base.id.clone(),
                    lifting,
                });
            }
            Err(e) => failures.push(format!("lifting {i}: {e}")),
        }
    }
    if failures.is_empty() {
        Ok((
            Some(Catalog {
                provenance: json.provenance,
                groups,
                xmods,
                liftings,
            }),
            failures,
        ))
    } else {
        Ok((None, failures))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_up_to_four() {
        let groups = generate_groups(4);
        let labels: Vec<&str> = groups.iter().map(|g| g.label()).collect();
        assert_eq!(labels, vec!["Z1", "Z2", "Z3", "Z4", "Z2xZ2"]);
    }

    #[test]
    fn groups_up_to_one() {
        assert_eq!(generate_groups(1).len(), 1);
    }

    #[test]
    fn groups_up_to_six_include_s3() {
        let groups = generate_groups(6);
        assert!(groups.iter().any(|g| g.label() == "S3"));
        // D3 is isomorphic to S3 and must have been rejected
        assert!(!groups.iter().any(|g| g.label() == "D3"));
    }

    #[test]
    fn groups_up_to_eight() {
        let groups = generate_groups(8);
        let labels: Vec<&str> = groups.iter().map(|g| g.label()).collect();
        // all order-8 families except the quaternion group, which no family covers
        assert_eq!(
            labels,
            vec![
                "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "D4", "Z2xZ4",
                "Z2xZ2xZ2"
            ]
        );
    }

    #[test]
    fn max_order_one_catalog_has_only_the_trivial_xmod() {
        let catalog = generate_catalog(1).unwrap();
        assert_eq!(catalog.groups.len(), 1);
        assert_eq!(catalog.xmods.len(), 1);
        assert_eq!(catalog.liftings.len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            generate_catalog(25),
            Err(Error::CapExceeded { requested: 25, cap: 24 })
        ));
    }

    #[test]
    fn catalog_roundtrips_byte_exactly() {
        let catalog = generate_catalog(4).unwrap();
        let dir = std::env::temp_dir().join("xmodkit-test-catalog");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("catalog4.json");
        catalog.save(&path).unwrap();
        let first = std::fs::read(&path).unwrap();
        let loaded = Catalog::load(&path).unwrap();
        loaded.save(&path).unwrap();
        let second = std::fs::read(&path).unwrap();
        assert_eq!(first, second);
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let catalog = generate_catalog(2).unwrap();
        let dir = std::env::temp_dir().join("xmodkit-test-catalog");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("corrupt.json");
        catalog.save(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        // break one group table entry: Z2 has rows [[0,1],[1,0]]
        let broken = text.replacen("[[0,1],[1,0]]", "[[0,1],[1,1]]", 1);
        assert_ne!(text, broken);
        std::fs::write(&path, broken).unwrap();
        let (catalog, failures) = load_report(&path).unwrap();
        assert!(catalog.is_none());
        assert!(!failures.is_empty());
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn inner_automorphism_xmod_of_s3_is_in_the_catalog() {
        use crate::xmod::{find_xmod_isomorphism, xmod_inner_automorphism};
        let catalog = generate_catalog(6).unwrap();
        let inner = xmod_inner_automorphism(catalog.group("S3").unwrap());
        assert!(catalog
            .xmods
            .iter()
            .filter(|x| x.xmod.a().order() == 6 && x.xmod.b().order() == 6)
            .any(|x| find_xmod_isomorphism(&inner, &x.xmod).is_some()));
    }
}
