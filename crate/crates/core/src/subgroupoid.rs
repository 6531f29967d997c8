use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, Groupoid};
use crate::morphisms::functor::Functor;

/// A wide subgroupoid: a set of arrows containing every unit, closed under
/// composition and inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WideSubgroupoid {
    member: Vec<bool>,
}

impl WideSubgroupoid {
    pub fn new(g: &Groupoid, arrows: impl IntoIterator<Item = ArrowId>) -> Result<WideSubgroupoid> {
        let mut member = vec![false; g.arrow_count()];
        for a in arrows {
            if a.index() >= member.len() {
                return Err(Error::NotWideSubgroupoid(format!("arrow #{} out of range", a.index())));
            }
            member[a.index()] = true;
        }
        let s = WideSubgroupoid { member };
        s.check(g)?;
        Ok(s)
    }

    pub fn from_labels<S: AsRef<str>>(g: &Groupoid, labels: &[S]) -> Result<WideSubgroupoid> {
        let ids = labels
            .iter()
            .map(|l| g.arrow(l.as_ref()).ok_or_else(|| Error::UnknownArrow(l.as_ref().into())))
            .collect::<Result<Vec<_>>>()?;
        WideSubgroupoid::new(g, ids)
    }

    /// Checks that this is a wide subgroupoid of `g`.
    pub fn check(&self, g: &Groupoid) -> Result<()> {
        if self.member.len() != g.arrow_count() {
            return Err(Error::NotWideSubgroupoid("arrow set belongs to another groupoid".into()));
        }
        for b in g.object_ids() {
            if !self.contains(g.unit(b)) {
                return Err(Error::NotWideSubgroupoid(format!(
                    "unit of {} missing",
                    g.object_label(b)
                )));
            }
        }
        for a in self.arrows() {
            if !self.contains(g.inv(a)) {
                return Err(Error::NotWideSubgroupoid(format!(
                    "not closed under inverse at {}",
                    g.arrow_label(a)
                )));
            }
        }
        for (x, y) in g.composable_pairs() {
            if self.contains(x) && self.contains(y) && !self.contains(g.mul(x, y)) {
                return Err(Error::NotWideSubgroupoid(format!(
                    "not closed under composition at ({}, {})",
                    g.arrow_label(x),
                    g.arrow_label(y)
                )));
            }
        }
        Ok(())
    }

    /// Units only.
    pub fn units(g: &Groupoid) -> WideSubgroupoid {
        let mut member = vec![false; g.arrow_count()];
        for b in g.object_ids() {
            member[g.unit(b).index()] = true;
        }
        WideSubgroupoid { member }
    }

    pub fn full(g: &Groupoid) -> WideSubgroupoid {
        WideSubgroupoid { member: vec![true; g.arrow_count()] }
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.member[a.index()]
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.member.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| ArrowId::new(i))
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn intersection(&self, other: &WideSubgroupoid) -> WideSubgroupoid {
        WideSubgroupoid {
            member: self.member.iter().zip(&other.member).map(|(a, b)| *a && *b).collect(),
        }
    }

    /// The subgroupoid as a groupoid on the same objects, with its inclusion.
    pub fn to_groupoid(&self, g: &Arc<Groupoid>) -> (Arc<Groupoid>, Functor) {
        let kept: Vec<ArrowId> = self.arrows().collect();
        let mut new_id = vec![ArrowId::new(0); g.arrow_count()];
        for (i, &a) in kept.iter().enumerate() {
            new_id[a.index()] = ArrowId::new(i);
        }
        let sub = Arc::new(Groupoid::assemble(
            g.object_labels().to_vec(),
            kept.iter().map(|&a| g.arrow_label(a).to_string()).collect(),
            kept.iter().map(|&a| g.src(a)).collect(),
            kept.iter().map(|&a| g.tgt(a)).collect(),
            g.object_ids().map(|b| new_id[g.unit(b).index()]).collect(),
            kept.iter().map(|&a| new_id[g.inv(a).index()]).collect(),
            |x, y| new_id[g.mul(kept[x.index()], kept[y.index()]).index()],
        ));
        let inclusion = Functor::new_unchecked(sub.clone(), g.clone(), g.object_ids().collect(), kept);
        (sub, inclusion)
    }
}

/// Arrows of the source mapped to units.
pub fn kernel(f: &Functor) -> WideSubgroupoid {
    let g = f.target();
    WideSubgroupoid {
        member: f.source().arrow_ids().map(|a| g.is_unit(f.arr(a))).collect(),
    }
}

/// The kernel as a groupoid on the source objects.
pub fn kernel_groupoid(f: &Functor) -> Arc<Groupoid> {
    kernel(f).to_groupoid(f.source()).0
}

/// The subgroupoid of arrows in the image of an injective-on-arrows functor.
pub fn image_of(f: &Functor) -> Result<WideSubgroupoid> {
    let mut member = vec![false; f.target().arrow_count()];
    for a in f.arrow_map() {
        member[a.index()] = true;
    }
    let s = WideSubgroupoid { member };
    s.check(f.target())?;
    Ok(s)
}
