//! JSON mirror types for the shared catalog format. Domain values are always
//! revalidated when read back; these structs are pure layout.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{FiniteGroup, GroupAction, GroupHom};
use crate::group_groupoid::{validate_group_groupoid, GroupGroupoid, GroupGroupoidData};
use crate::groupoid::{Groupoid, GroupoidData};
use crate::xmod::{validate_xmod, CrossedModule};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub label: String,
}

impl GroupJson {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupJson {
            order: g.order(),
            table: g.table(),
            label: g.label().to_string(),
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::validate(&self.table, self.label.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

impl HomJson {
    pub fn of(h: &GroupHom) -> Self {
        HomJson {
            source: h.source().label().to_string(),
            target: h.target().label().to_string(),
            map: h.map().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XModJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(rename = "A")]
    pub a: GroupJson,
    #[serde(rename = "B")]
    pub b: GroupJson,
    pub alpha: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

impl XModJson {
    pub fn of(id: Option<String>, xm: &CrossedModule) -> Self {
        XModJson {
            id,
            a: GroupJson::of(xm.a()),
            b: GroupJson::of(xm.b()),
            alpha: xm.alpha().map().to_vec(),
            action: xm.action().rows(),
        }
    }

    pub fn to_xmod(&self) -> Result<CrossedModule> {
        let a = self.a.to_group()?;
        let b = self.b.to_group()?;
        let alpha = GroupHom::new(&a, &b, self.alpha.clone())?;
        let action = GroupAction::new(&b, &a, self.action.concat())?;
        validate_xmod(alpha, action)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingJson {
    pub base: String,
    #[serde(rename = "X")]
    pub x: GroupJson,
    pub omega: Vec<usize>,
    pub phi: Vec<usize>,
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub objects: usize,
    pub d0: Vec<usize>,
    pub d1: Vec<usize>,
    pub id: Vec<usize>,
    pub comp: Vec<Vec<Option<usize>>>,
    pub inv: Vec<usize>,
}

impl GroupoidJson {
    pub fn of(g: &Groupoid) -> Self {
        let m = g.n_morphisms();
        let comp = (0..m)
            .map(|h| (0..m).map(|k| g.comp(h, k)).collect())
            .collect();
        GroupoidJson {
            objects: g.n_objects(),
            d0: g.data().d0.clone(),
            d1: g.data().d1.clone(),
            id: g.data().id.clone(),
            comp,
            inv: g.data().inv.clone(),
        }
    }

    pub fn to_groupoid(&self) -> Result<Groupoid> {
        Groupoid::validate(GroupoidData {
            n_objects: self.objects,
            d0: self.d0.clone(),
            d1: self.d1.clone(),
            id: self.id.clone(),
            comp: self.comp.concat(),
            inv: self.inv.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupGroupoidJson {
    pub objects: usize,
    pub d0: Vec<usize>,
    pub d1: Vec<usize>,
    pub id: Vec<usize>,
    pub comp: Vec<Vec<Option<usize>>>,
    pub inv: Vec<usize>,
    pub obj_group: GroupJson,
    pub mor_group: GroupJson,
}

impl GroupGroupoidJson {
    pub fn of(g: &GroupGroupoid) -> Self {
        let base = GroupoidJson::of(g.groupoid());
        GroupGroupoidJson {
            objects: base.objects,
            d0: base.d0,
            d1: base.d1,
            id: base.id,
            comp: base.comp,
            inv: base.inv,
            obj_group: GroupJson::of(g.obj_group()),
            mor_group: GroupJson::of(g.mor_group()),
        }
    }

    pub fn to_group_groupoid(&self) -> Result<GroupGroupoid> {
        let groupoid = Groupoid::validate(GroupoidData {
            n_objects: self.objects,
            d0: self.d0.clone(),
            d1: self.d1.clone(),
            id: self.id.clone(),
            comp: self.comp.concat(),
            inv: self.inv.clone(),
        })?;
        validate_group_groupoid(GroupGroupoidData {
            groupoid,
            obj_group: self.obj_group.to_group()?,
            mor_group: self.mor_group.to_group()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::eta;
    use crate::group::GroupAction;
    use proptest::prelude::*;

    #[test]
    fn group_groupoid_json_roundtrip() {
        let z2 = FiniteGroup::cyclic(2);
        let xm = validate_xmod(GroupHom::identity(&z2), GroupAction::trivial(&z2, &z2)).unwrap();
        let gg = eta(&xm);
        let json = GroupGroupoidJson::of(&gg);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: GroupGroupoidJson = serde_json::from_str(&text).unwrap();
        let back = parsed.to_group_groupoid().unwrap();
        assert_eq!(GroupGroupoidJson::of(&back), json);
    }

    proptest! {
        #[test]
        fn group_json_roundtrips(n in 1usize..=8) {
            let g = FiniteGroup::cyclic(n);
            let text = serde_json::to_string(&GroupJson::of(&g)).unwrap();
            let parsed: GroupJson = serde_json::from_str(&text).unwrap();
            let back = parsed.to_group()?;
            prop_assert!(back.table_eq(&g));
            prop_assert_eq!(back.label(), g.label());
        }
    }
}
