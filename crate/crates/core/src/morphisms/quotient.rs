use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::functor::Functor;
use crate::subgroupoid::WideSubgroupoid;

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.0[hi] = lo;
        }
    }

    /// Dense class numbering, classes ordered by their smallest member.
    pub(crate) fn classes(&mut self) -> (Vec<usize>, Vec<usize>) {
        let n = self.0.len();
        let mut class_of_root = vec![usize::MAX; n];
        let mut class = vec![0; n];
        let mut reps = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = reps.len();
                reps.push(x);
            }
            class[x] = class_of_root[r];
        }
        (class, reps)
    }
}

/// `H // K`: objects are the `K`-orbits, arrows the classes `K h K`.
///
/// Each object and arrow of the quotient keeps the label of its smallest
/// representative. Fails if composition of classes is not well defined.
pub fn bilateral_quotient(h: &Arc<Groupoid>, k: &WideSubgroupoid) -> Result<(Arc<Groupoid>, Functor)> {
    let mut objs = UnionFind::new(h.object_count());
    for a in k.arrows() {
        objs.union(h.src(a).index(), h.tgt(a).index());
    }
    let (obj_class, obj_reps) = objs.classes();

    let mut arrs = UnionFind::new(h.arrow_count());
    for x in h.arrow_ids() {
        for &kk in h.outgoing(h.tgt(x)) {
            if k.contains(kk) {
                arrs.union(x.index(), h.mul(kk, x).index());
            }
        }
        for &kk in h.incoming(h.src(x)) {
            if k.contains(kk) {
                arrs.union(x.index(), h.mul(x, kk).index());
            }
        }
    }
    let (arr_class, arr_reps) = arrs.classes();
    let objects = obj_reps.iter().map(|&b| h.object_label(ObjectId::new(b)).to_string()).collect();
    quotient_by_partition(h, &obj_class, objects, &arr_class, &arr_reps)
}

/// The quotient of `h` by a partition of its objects and arrows, provided
/// composition of classes is well defined. Arrow classes keep the label of
/// their representative.
pub(crate) fn quotient_by_partition(
    h: &Arc<Groupoid>,
    obj_class: &[usize],
    objects: Vec<String>,
    arr_class: &[usize],
    arr_reps: &[usize],
) -> Result<(Arc<Groupoid>, Functor)> {
    let nc = arr_reps.len();
    // class composition table, filled from composable representatives
    let mut table: Vec<Option<(usize, (ArrowId, ArrowId))>> = vec![None; nc * nc];
    for (x, y) in h.composable_pairs() {
        let (cx, cy) = (arr_class[x.index()], arr_class[y.index()]);
        let c = arr_class[h.mul(x, y).index()];
        match table[cx * nc + cy] {
            None => table[cx * nc + cy] = Some((c, (x, y))),
            Some((c0, (x0, y0))) if c0 != c => {
                return Err(Error::QuotientNotWellDefined {
                    left: h.arrow_label(ArrowId::new(arr_reps[cx])).into(),
                    right: h.arrow_label(ArrowId::new(arr_reps[cy])).into(),
                    first: h.arrow_label(h.mul(x0, y0)).into(),
                    second: h.arrow_label(h.mul(x, y)).into(),
                });
            }
            Some(_) => {}
        }
    }

    let rep = |c: usize| ArrowId::new(arr_reps[c]);
    let mut obj_rep = vec![usize::MAX; objects.len()];
    for (b, &c) in obj_class.iter().enumerate().rev() {
        obj_rep[c] = b;
    }
    let arrows = (0..nc).map(|c| h.arrow_label(rep(c)).to_string()).collect();
    let src = (0..nc).map(|c| ObjectId::new(obj_class[h.src(rep(c)).index()])).collect();
    let tgt = (0..nc).map(|c| ObjectId::new(obj_class[h.tgt(rep(c)).index()])).collect();
    let unit = obj_rep
        .iter()
        .map(|&b| ArrowId::new(arr_class[h.unit(ObjectId::new(b)).index()]))
        .collect();
    let inv = (0..nc).map(|c| ArrowId::new(arr_class[h.inv(rep(c)).index()])).collect();
    let quotient = Arc::new(Groupoid::assemble(objects, arrows, src, tgt, unit, inv, |x, y| {
        let (c, _) = table[x.index() * nc + y.index()].expect("composable classes have representatives");
        ArrowId::new(c)
    }));
    let projection = Functor::new(
        h.clone(),
        quotient.clone(),
        h.object_ids().map(|b| ObjectId::new(obj_class[b.index()])).collect(),
        h.arrow_ids().map(|a| ArrowId::new(arr_class[a.index()])).collect(),
    )?;
    Ok((quotient, projection))
}

/// Quotient by a functor `f` whose classes are `Ker f`-double cosets: the
/// induced map `H // Ker f → target(f)`.
pub fn induced_map(projection: &Functor, f: &Functor) -> Result<Functor> {
    let q = projection.target();
    let mut objects = vec![None; q.object_count()];
    for b in f.source().object_ids() {
        let c = projection.obj(b);
        match objects[c.index()] {
            None => objects[c.index()] = Some(f.obj(b)),
            Some(prev) if prev != f.obj(b) => {
                return Err(Error::Precondition("map is not constant on quotient objects".into()))
            }
            _ => {}
        }
    }
    let mut arrows = vec![None; q.arrow_count()];
    for a in f.source().arrow_ids() {
        let c = projection.arr(a);
        match arrows[c.index()] {
            None => arrows[c.index()] = Some(f.arr(a)),
            Some(prev) if prev != f.arr(a) => {
                return Err(Error::Precondition("map is not constant on quotient classes".into()))
            }
            _ => {}
        }
    }
    Functor::new(
        q.clone(),
        f.target().clone(),
        objects.into_iter().map(|o| o.expect("projection is surjective")).collect(),
        arrows.into_iter().map(|a| a.expect("projection is surjective")).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;

    #[test]
    fn group_quotients() {
        let z4 = Arc::new(from_group(&GroupTable::cyclic(4)));
        let k = WideSubgroupoid::from_labels(&z4, &["0", "2"]).unwrap();
        let (q, proj) = bilateral_quotient(&z4, &k).unwrap();
        assert_eq!(q.arrow_count(), 2);
        assert!(q.axiom_violations().is_empty());
        assert_eq!(proj.arr(ArrowId::new(3)), ArrowId::new(1));

        let s3 = Arc::new(from_group(&GroupTable::symmetric(3)));
        let k = WideSubgroupoid::from_labels(&s3, &["012", "102"]).unwrap();
        assert!(matches!(bilateral_quotient(&s3, &k), Err(Error::QuotientNotWellDefined { .. })));
    }

    #[test]
    fn pair_collapses() {
        let p = Arc::new(pair(&["1", "2"]));
        let (q, _) = bilateral_quotient(&p, &WideSubgroupoid::full(&p)).unwrap();
        assert_eq!((q.object_count(), q.arrow_count()), (1, 1));
        let (q, _) = bilateral_quotient(&p, &WideSubgroupoid::units(&p)).unwrap();
        assert_eq!(*q, *p);
    }
}
