//! JSON documents for groups, presentations, covers, systems and cylinders.
//!
//! Field order follows the struct declarations, and maps are `BTreeMap`s,
//! so emitted documents are byte-stable for a fixed input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cover::PostCoverGroup;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::measure::CylinderSet;
use crate::nary::FiniteNaryGroup;
use crate::presentation::HGPresentation;
use crate::set::ElementSet;
use crate::system::{DirectedIndex, InverseSystem};
use crate::Element;

/// An ordinary group: binary table plus identity; covers add a grading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteGroupDoc {
    pub size: usize,
    pub table: Vec<Element>,
    pub identity: Element,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<usize>>,
}

impl FiniteGroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        FiniteGroupDoc {
            size: g.size(),
            table: g.table().to_vec(),
            identity: g.identity(),
            names: g.names().map(<[String]>::to_vec),
            grading: None,
        }
    }

    pub fn from_cover(c: &PostCoverGroup) -> Self {
        FiniteGroupDoc {
            grading: Some(c.grading()),
            ..FiniteGroupDoc::from_group(c.group())
        }
    }

    /// Builds the group; a declared identity that is not the identity of the
    /// table is an axiom failure.
    pub fn to_group(&self) -> Result<FiniteGroup> {
        let g = FiniteGroup::from_table(self.size, self.table.clone())?;
        if g.identity() != self.identity {
            return Err(Error::GroupAxiom {
                axiom: "declared identity",
                witness: vec![self.identity, g.identity()],
            });
        }
        Ok(match &self.names {
            Some(names) => g.with_names(names.clone()),
            None => g,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub n: usize,
    pub base: FiniteGroupDoc,
    pub theta: Vec<Element>,
    pub b: Element,
}

impl PresentationDoc {
    pub fn from_presentation(p: &HGPresentation) -> Self {
        PresentationDoc {
            n: p.arity(),
            base: FiniteGroupDoc::from_group(p.base()),
            theta: p.theta().to_vec(),
            b: p.b(),
        }
    }

    /// Checks shape and base-group axioms; the Hosszu-Gloskin conditions are
    /// left to [`HGPresentation::validate`].
    pub fn to_presentation(&self) -> Result<HGPresentation> {
        HGPresentation::new(self.n, self.base.to_group()?, self.theta.clone(), self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableGroupDoc {
    pub arity: usize,
    pub size: usize,
    pub table: Vec<Element>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentedGroupDoc {
    pub arity: usize,
    pub presentation: PresentationDoc,
}

/// An n-ary group, either tabulated or given by a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    Table(TableGroupDoc),
    Presented(PresentedGroupDoc),
}

impl GroupDoc {
    /// Presentation-backed groups are written in presentation form, others
    /// as tables.
    pub fn from_group(g: &FiniteNaryGroup) -> Result<Self> {
        match g.presentation() {
            Some(p) => Ok(GroupDoc::Presented(PresentedGroupDoc {
                arity: g.arity(),
                presentation: PresentationDoc::from_presentation(p),
            })),
            None => GroupDoc::table_of(g),
        }
    }

    pub fn table_of(g: &FiniteNaryGroup) -> Result<Self> {
        let tabled = g.clone().with_table()?;
        Ok(GroupDoc::Table(TableGroupDoc {
            arity: g.arity(),
            size: g.size(),
            table: tabled.table().expect("tabulated").to_vec(),
            names: g.names().map(<[String]>::to_vec),
        }))
    }

    pub fn to_group(&self) -> Result<FiniteNaryGroup> {
        match self {
            GroupDoc::Table(t) => {
                let g = FiniteNaryGroup::from_table(t.arity, t.size, t.table.clone())?;
                Ok(match &t.names {
                    Some(names) => g.with_names(names.clone()),
                    None => g,
                })
            }
            GroupDoc::Presented(p) => {
                if p.arity != p.presentation.n {
                    return Err(Error::Schema(format!(
                        "arity {} disagrees with presentation n = {}",
                        p.arity, p.presentation.n
                    )));
                }
                p.presentation.to_presentation()?.derive()
            }
        }
    }
}

/// `{ "levels": {id: group}, "order": [[i, j]] (j <= i), "maps": {"i>j": images}, "top": id }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub levels: BTreeMap<String, GroupDoc>,
    pub order: Vec<[String; 2]>,
    pub maps: BTreeMap<String, Vec<Element>>,
    pub top: String,
}

impl SystemDoc {
    pub fn from_system(s: &InverseSystem) -> Result<Self> {
        let index = s.index();
        let levels = (0..index.len())
            .map(|k| Ok((index.id(k).to_string(), GroupDoc::from_group(s.level(k))?)))
            .collect::<Result<_>>()?;
        let order = index
            .strict_pairs()
            .into_iter()
            .map(|(i, j)| [index.id(i).to_string(), index.id(j).to_string()])
            .collect();
        let maps = s
            .maps()
            .iter()
            .map(|(&(i, j), m)| (format!("{}>{}", index.id(i), index.id(j)), m.clone()))
            .collect();
        Ok(SystemDoc {
            levels,
            order,
            maps,
            top: index.id(index.top()).to_string(),
        })
    }

    pub fn to_system(&self) -> Result<InverseSystem> {
        let ids: Vec<String> = self.levels.keys().cloned().collect();
        let relations: Vec<(String, String)> = self
            .order
            .iter()
            .map(|[i, j]| (i.clone(), j.clone()))
            .collect();
        let index = DirectedIndex::new(ids, &relations, &self.top)?;
        let levels = self
            .levels
            .values()
            .map(GroupDoc::to_group)
            .collect::<Result<Vec<_>>>()?;
        let mut maps = BTreeMap::new();
        for (key, images) in &self.maps {
            let (i, j) = key
                .split_once('>')
                .ok_or_else(|| Error::Schema(format!("map key {key:?} is not of the form \"i>j\"")))?;
            maps.insert((index.position(i)?, index.position(j)?), images.clone());
        }
        InverseSystem::new(index, levels, maps)
    }
}

/// `{ "level": id, "subset": [indices] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CylinderDoc {
    pub level: String,
    pub subset: Vec<Element>,
}

impl CylinderDoc {
    pub fn from_cylinder(s: &InverseSystem, c: &CylinderSet) -> Self {
        CylinderDoc {
            level: s.index().id(c.level).to_string(),
            subset: c.subset.to_vec(),
        }
    }

    pub fn to_cylinder(&self, s: &InverseSystem) -> Result<CylinderSet> {
        let level = s.index().position(&self.level)?;
        let size = s.level(level).size();
        CylinderSet::new(s, level, ElementSet::from_elements(size, self.subset.iter().copied())?)
    }
}

/// Any input document, told apart by its keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Group(GroupDoc),
    Presentation(PresentationDoc),
    System(SystemDoc),
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Schema("document must be a JSON object".into()))?;
        if obj.contains_key("levels") {
            Ok(Document::System(serde_json::from_value(value)?))
        } else if obj.contains_key("presentation") {
            Ok(Document::Group(GroupDoc::Presented(serde_json::from_value(value)?)))
        } else if obj.contains_key("arity") {
            Ok(Document::Group(GroupDoc::Table(serde_json::from_value(value)?)))
        } else if obj.contains_key("theta") {
            Ok(Document::Presentation(serde_json::from_value(value)?))
        } else {
            Err(Error::Schema(
                "expected a group, presentation or system document".into(),
            ))
        }
    }
}

/// Compact JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents serialize");
    s.push('\n');
    s
}
