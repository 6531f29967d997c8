//! Plain descriptions of groupoids and functors, as read from files.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groupoid::Groupoid;
use crate::morphisms::functor::Functor;

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowRecord {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// An unvalidated groupoid: every table is spelled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidDocument {
    pub format_version: String,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowRecord>,
    /// `(object, unit arrow)`
    pub units: Vec<(String, String)>,
    /// `(arrow, inverse)`
    pub inverses: Vec<(String, String)>,
    /// `(left, right, left ∘ right)`
    pub compose: Vec<(String, String, String)>,
}

impl Default for GroupoidDocument {
    fn default() -> Self {
        GroupoidDocument {
            format_version: FORMAT_VERSION.to_string(),
            objects: Vec::new(),
            arrows: Vec::new(),
            units: Vec::new(),
            inverses: Vec::new(),
            compose: Vec::new(),
        }
    }
}

impl GroupoidDocument {
    pub fn from_groupoid(g: &Groupoid) -> Self {
        let label = |a| g.arrow_label(a).to_string();
        GroupoidDocument {
            format_version: FORMAT_VERSION.to_string(),
            objects: g.object_labels().to_vec(),
            arrows: g
                .arrow_ids()
                .map(|a| ArrowRecord {
                    id: label(a),
                    src: g.object_label(g.src(a)).to_string(),
                    tgt: g.object_label(g.tgt(a)).to_string(),
                })
                .collect(),
            units: g
                .object_ids()
                .map(|b| (g.object_label(b).to_string(), label(g.unit(b))))
                .collect(),
            inverses: g.arrow_ids().map(|a| (label(a), label(g.inv(a)))).collect(),
            compose: g
                .arrow_ids()
                .flat_map(|x| g.incoming(g.src(x)).iter().map(move |&y| (x, y)))
                .map(|(x, y)| (label(x), label(y), label(g.mul(x, y))))
                .collect(),
        }
    }
}

/// Where a functor document finds one of its groupoids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupoidRef {
    Path(String),
    Inline(GroupoidDocument),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDocument {
    pub format_version: String,
    pub source: GroupoidRef,
    pub target: GroupoidRef,
    pub object_map: Vec<(String, String)>,
    pub arrow_map: Vec<(String, String)>,
}

impl FunctorDocument {
    /// Both groupoids written inline.
    pub fn inline(f: &Functor) -> Self {
        FunctorDocument {
            format_version: FORMAT_VERSION.to_string(),
            source: GroupoidRef::Inline(GroupoidDocument::from_groupoid(f.source())),
            target: GroupoidRef::Inline(GroupoidDocument::from_groupoid(f.target())),
            object_map: f.object_label_map(),
            arrow_map: f.arrow_label_map(),
        }
    }

    /// Validates both groupoids and the maps. `load` reads a groupoid given
    /// by path.
    pub fn resolve(&self, mut load: impl FnMut(&str) -> Result<GroupoidDocument>) -> Result<Functor> {
        let mut side = |r: &GroupoidRef| -> Result<Arc<Groupoid>> {
            let doc = match r {
                GroupoidRef::Path(p) => load(p)?,
                GroupoidRef::Inline(d) => d.clone(),
            };
            Ok(Arc::new(Groupoid::validate(&doc)?))
        };
        let source = side(&self.source)?;
        let target = side(&self.target)?;
        Functor::from_labels(source, target, &self.object_map, &self.arrow_map)
    }
}
