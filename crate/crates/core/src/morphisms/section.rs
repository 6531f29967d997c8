use std::sync::Arc;

use crate::construct::restrict;
use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::classify::t_square;
use crate::morphisms::functor::Functor;

/// A functor `σ` with `q σ = id` for a surjective-on-objects fully faithful
/// `q`. `choice[h]` picks the object over `h`; by default the first one.
pub fn section_of(q: &Functor, choice: Option<&[ObjectId]>) -> Result<Functor> {
    let (k, h) = (q.source(), q.target());
    if !t_square(q).bijective() {
        return Err(Error::Precondition("functor is not fully faithful, no section".into()));
    }
    let objects: Vec<ObjectId> = match choice {
        Some(c) => {
            if c.len() != h.object_count() || h.object_ids().any(|b| q.obj(c[b.index()]) != b) {
                return Err(Error::Precondition("object choice is not a section".into()));
            }
            c.to_vec()
        }
        None => {
            let mut first = vec![None; h.object_count()];
            for e in k.object_ids() {
                first[q.obj(e).index()].get_or_insert(e);
            }
            first
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Precondition("functor is not surjective on objects, no section".into()))?
        }
    };
    let arrows = h
        .arrow_ids()
        .map(|a| {
            let (s, t) = (objects[h.src(a).index()], objects[h.tgt(a).index()]);
            k.hom(s, t).find(|&x| q.arr(x) == a).expect("fully faithful")
        })
        .collect();
    Functor::new(h.clone(), k.clone(), objects, arrows)
}

/// The full subgroupoid on `keep` with its inclusion.
pub fn full_subgroupoid(g: &Arc<Groupoid>, keep: &[ObjectId]) -> (Arc<Groupoid>, Functor) {
    let (sub, kept) = restrict(g, keep);
    let sub = Arc::new(sub);
    let inclusion = Functor::new_unchecked(sub.clone(), g.clone(), keep.to_vec(), kept);
    (sub, inclusion)
}

/// Arrow ids of `g` as a dense lookup `(src, tgt, image) → arrow` for a
/// faithful functor.
pub(crate) fn faithful_lookup(f: &Functor) -> std::collections::HashMap<(ObjectId, ObjectId, ArrowId), ArrowId> {
    let g = f.source();
    g.arrow_ids().map(|a| ((g.src(a), g.tgt(a), f.arr(a)), a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;
    use crate::morphisms::pullback::pullback_groupoid;

    #[test]
    fn sections_of_pullback_projections() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let (k, q) = pullback_groupoid(&z2, &["a", "b"], &[ObjectId::new(0); 2]);
        let s = section_of(&q, None).unwrap();
        assert_eq!(q.after(&s).unwrap(), Functor::identity(z2.clone()));
        let s = section_of(&q, Some(&[ObjectId::new(1)])).unwrap();
        assert_eq!(s.obj(ObjectId::new(0)), ObjectId::new(1));
        let bad = Functor::identity(k);
        assert!(section_of(&bad, Some(&[ObjectId::new(0)])).is_err());
        let p = Arc::new(pair_n(2));
        let (sub, inc) = full_subgroupoid(&p, &[ObjectId::new(1)]);
        assert_eq!(sub.arrow_count(), 1);
        assert_eq!(p.arrow_label(inc.arr(ArrowId::new(0))), "(1,1)");
    }
}
