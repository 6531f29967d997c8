use std::fmt;
use std::sync::Arc;

use crate::error::{Error, FunctorViolation, Result};
use crate::groupoid::{ArrowId, Groupoid, ObjectId};

/// A functor between two finite groupoids, stored as its two maps.
#[derive(Clone)]
pub struct Functor {
    source: Arc<Groupoid>,
    target: Arc<Groupoid>,
    object_map: Vec<ObjectId>,
    arrow_map: Vec<ArrowId>,
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for a in self.source.arrow_ids() {
            m.entry(&self.source.arrow_label(a), &self.target.arrow_label(self.arr(a)));
        }
        m.finish()
    }
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        same_groupoid(&self.source, &other.source)
            && same_groupoid(&self.target, &other.target)
            && self.object_map == other.object_map
            && self.arrow_map == other.arrow_map
    }
}

pub(crate) fn same_groupoid(a: &Arc<Groupoid>, b: &Arc<Groupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Functor {
    /// Validates both maps against every commutation square.
    pub fn new(
        source: Arc<Groupoid>,
        target: Arc<Groupoid>,
        object_map: Vec<ObjectId>,
        arrow_map: Vec<ArrowId>,
    ) -> Result<Functor> {
        let mut violations = Vec::new();
        if object_map.len() != source.object_count() || arrow_map.len() != source.arrow_count() {
            return Err(Error::Precondition("functor maps have the wrong length".into()));
        }
        if let Some(b) = object_map.iter().find(|b| b.index() >= target.object_count()) {
            violations.push(FunctorViolation::UnknownImage { image: format!("object #{}", b.index()) });
        }
        if let Some(a) = arrow_map.iter().find(|a| a.index() >= target.arrow_count()) {
            violations.push(FunctorViolation::UnknownImage { image: format!("arrow #{}", a.index()) });
        }
        if !violations.is_empty() {
            return Err(Error::Functor(violations));
        }
        let f = Functor { source, target, object_map, arrow_map };
        let violations = f.violations();
        if violations.is_empty() {
            Ok(f)
        } else {
            Err(Error::Functor(violations))
        }
    }

    pub(crate) fn new_unchecked(
        source: Arc<Groupoid>,
        target: Arc<Groupoid>,
        object_map: Vec<ObjectId>,
        arrow_map: Vec<ArrowId>,
    ) -> Functor {
        let f = Functor { source, target, object_map, arrow_map };
        debug_assert!(f.violations().is_empty(), "{:?}", f.violations());
        f
    }

    /// Builds a functor from label maps, reporting every problem at once.
    pub fn from_labels<S: AsRef<str>>(
        source: Arc<Groupoid>,
        target: Arc<Groupoid>,
        object_map: &[(S, S)],
        arrow_map: &[(S, S)],
    ) -> Result<Functor> {
        let mut violations = Vec::new();
        let mut objects: Vec<Option<ObjectId>> = vec![None; source.object_count()];
        for (k, v) in object_map {
            let (k, v) = (k.as_ref(), v.as_ref());
            match (source.object(k), target.object(v)) {
                (None, _) => violations.push(FunctorViolation::UnknownObject { object: k.into() }),
                (_, None) => violations.push(FunctorViolation::UnknownImage { image: v.into() }),
                (Some(b), Some(c)) => {
                    if objects[b.index()].replace(c).is_some() {
                        violations.push(FunctorViolation::DuplicateEntry { key: k.into() });
                    }
                }
            }
        }
        let mut arrows: Vec<Option<ArrowId>> = vec![None; source.arrow_count()];
        for (k, v) in arrow_map {
            let (k, v) = (k.as_ref(), v.as_ref());
            match (source.arrow(k), target.arrow(v)) {
                (None, _) => violations.push(FunctorViolation::UnknownArrow { arrow: k.into() }),
                (_, None) => violations.push(FunctorViolation::UnknownImage { image: v.into() }),
                (Some(a), Some(c)) => {
                    if arrows[a.index()].replace(c).is_some() {
                        violations.push(FunctorViolation::DuplicateEntry { key: k.into() });
                    }
                }
            }
        }
        for b in source.object_ids() {
            if objects[b.index()].is_none() {
                violations.push(FunctorViolation::ObjectUnmapped {
                    object: source.object_label(b).into(),
                });
            }
        }
        for a in source.arrow_ids() {
            if arrows[a.index()].is_none() {
                violations.push(FunctorViolation::ArrowUnmapped { arrow: source.arrow_label(a).into() });
            }
        }
        if !violations.is_empty() {
            return Err(Error::Functor(violations));
        }
        Functor::new(
            source,
            target,
            objects.into_iter().map(Option::unwrap).collect(),
            arrows.into_iter().map(Option::unwrap).collect(),
        )
    }

    /// Every failed commutation square.
    pub fn violations(&self) -> Vec<FunctorViolation> {
        let (h, g) = (&*self.source, &*self.target);
        let mut out = Vec::new();
        let label = |a: ArrowId| h.arrow_label(a).to_string();
        for b in h.object_ids() {
            if self.arr(h.unit(b)) != g.unit(self.obj(b)) {
                out.push(FunctorViolation::UnitSquare { object: h.object_label(b).into() });
            }
        }
        for a in h.arrow_ids() {
            let fa = self.arr(a);
            if g.src(fa) != self.obj(h.src(a)) {
                out.push(FunctorViolation::SrcSquare { arrow: label(a) });
            }
            if g.tgt(fa) != self.obj(h.tgt(a)) {
                out.push(FunctorViolation::TgtSquare { arrow: label(a) });
            }
            if self.arr(h.inv(a)) != g.inv(fa) {
                out.push(FunctorViolation::InverseSquare { arrow: label(a) });
            }
        }
        for (x, y) in h.composable_pairs() {
            if g.compose(self.arr(x), self.arr(y)) != Some(self.arr(h.mul(x, y))) {
                out.push(FunctorViolation::CompositionSquare { left: label(x), right: label(y) });
            }
        }
        out
    }

    pub fn identity(g: Arc<Groupoid>) -> Functor {
        let object_map = g.object_ids().collect();
        let arrow_map = g.arrow_ids().collect();
        Functor { source: g.clone(), target: g, object_map, arrow_map }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Functor) -> Result<Functor> {
        if !same_groupoid(&inner.target, &self.source) {
            return Err(Error::Precondition(
                "functors are not composable: target and source differ".into(),
            ));
        }
        Ok(Functor {
            source: inner.source.clone(),
            target: self.target.clone(),
            object_map: inner.object_map.iter().map(|&b| self.obj(b)).collect(),
            arrow_map: inner.arrow_map.iter().map(|&a| self.arr(a)).collect(),
        })
    }

    /// The same maps seen as a functor into `target`, which must equal the
    /// current target.
    pub fn retarget(&self, target: Arc<Groupoid>) -> Functor {
        assert!(same_groupoid(&self.target, &target));
        Functor { target, ..self.clone() }
    }

    pub fn source(&self) -> &Arc<Groupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Groupoid> {
        &self.target
    }

    pub fn obj(&self, b: ObjectId) -> ObjectId {
        self.object_map[b.index()]
    }

    pub fn arr(&self, a: ArrowId) -> ArrowId {
        self.arrow_map[a.index()]
    }

    pub fn object_map(&self) -> &[ObjectId] {
        &self.object_map
    }

    pub fn arrow_map(&self) -> &[ArrowId] {
        &self.arrow_map
    }

    pub fn object_label_map(&self) -> Vec<(String, String)> {
        self.source
            .object_ids()
            .map(|b| {
                (self.source.object_label(b).to_string(), self.target.object_label(self.obj(b)).to_string())
            })
            .collect()
    }

    pub fn arrow_label_map(&self) -> Vec<(String, String)> {
        self.source
            .arrow_ids()
            .map(|a| {
                (self.source.arrow_label(a).to_string(), self.target.arrow_label(self.arr(a)).to_string())
            })
            .collect()
    }

    pub fn is_object_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.object_count()];
        for b in &self.object_map {
            hit[b.index()] = true;
        }
        hit.iter().all(|&h| h)
    }

    pub fn is_arrow_injective(&self) -> bool {
        let mut hit = vec![false; self.target.arrow_count()];
        self.arrow_map.iter().all(|a| !std::mem::replace(&mut hit[a.index()], true))
    }

    pub fn is_arrow_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.arrow_count()];
        for a in &self.arrow_map {
            hit[a.index()] = true;
        }
        hit.iter().all(|&h| h)
    }

    /// Inverse of a bijective functor.
    pub fn inverse(&self) -> Option<Functor> {
        let mut objects = vec![None; self.target.object_count()];
        for b in self.source.object_ids() {
            if objects[self.obj(b).index()].replace(b).is_some() {
                return None;
            }
        }
        let mut arrows = vec![None; self.target.arrow_count()];
        for a in self.source.arrow_ids() {
            if arrows[self.arr(a).index()].replace(a).is_some() {
                return None;
            }
        }
        Some(Functor {
            source: self.target.clone(),
            target: self.source.clone(),
            object_map: objects.into_iter().collect::<Option<_>>()?,
            arrow_map: arrows.into_iter().collect::<Option<_>>()?,
        })
    }

    /// A functor from an explicitly labelled map of arrows; the object map is
    /// read off the units.
    pub fn from_arrow_fn(
        source: Arc<Groupoid>,
        target: Arc<Groupoid>,
        f: impl Fn(ArrowId) -> ArrowId,
    ) -> Result<Functor> {
        let arrow_map: Vec<ArrowId> = source.arrow_ids().map(&f).collect();
        let object_map = source.object_ids().map(|b| target.src(f(source.unit(b)))).collect();
        Functor::new(source, target, object_map, arrow_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;

    #[test]
    fn identity_and_swap() {
        let p = Arc::new(pair(&["1", "2"]));
        let id = Functor::identity(p.clone());
        assert!(id.violations().is_empty());
        let objs = [("1", "1"), ("2", "2")];
        let arrs = [("(1,1)", "(1,1)"), ("(1,2)", "(2,1)"), ("(2,1)", "(1,2)"), ("(2,2)", "(2,2)")];
        let Err(Error::Functor(v)) = Functor::from_labels(p.clone(), p, &objs, &arrs) else {
            panic!("expected violations")
        };
        assert!(v.iter().any(|x| x.to_string() == "src square violated at arrow (1,2)"));
    }

    #[test]
    fn sign_map() {
        let z4 = Arc::new(from_group(&GroupTable::cyclic(4)));
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let f = Functor::from_arrow_fn(z4, z2, |a| ArrowId::new(a.index() % 2)).unwrap();
        assert!(f.is_arrow_surjective());
        assert!(f.inverse().is_none());
    }
}
