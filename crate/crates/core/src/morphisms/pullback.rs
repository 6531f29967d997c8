use std::collections::HashMap;
use std::sync::Arc;

use crate::construct::product;
use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::functor::{same_groupoid, Functor};

/// The groupoid `p**(G)` induced along `p: E → objects(G)`: arrows are
/// triples `(e', g, e)` with `g: p(e) → p(e')`. Returns it with the
/// canonical projection to `G`.
pub fn pullback_groupoid<S: AsRef<str>>(
    g: &Arc<Groupoid>,
    space: &[S],
    p: &[ObjectId],
) -> (Arc<Groupoid>, Functor) {
    assert_eq!(space.len(), p.len());
    let n = space.len();
    let objects: Vec<String> = space.iter().map(|s| s.as_ref().to_string()).collect();
    let mut arrows = Vec::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut middle = Vec::new();
    let mut index: HashMap<(usize, ArrowId, usize), ArrowId> = HashMap::new();
    for e1 in 0..n {
        for e0 in 0..n {
            for a in g.hom(p[e0], p[e1]) {
                index.insert((e1, a, e0), ArrowId::new(arrows.len()));
                arrows.push(format!("({},{},{})", objects[e1], g.arrow_label(a), objects[e0]));
                src.push(ObjectId::new(e0));
                tgt.push(ObjectId::new(e1));
                middle.push(a);
            }
        }
    }
    let unit = (0..n).map(|e| index[&(e, g.unit(p[e]), e)]).collect();
    let inv = (0..arrows.len())
        .map(|k| index[&(src[k].index(), g.inv(middle[k]), tgt[k].index())])
        .collect();
    let pb = Arc::new(Groupoid::assemble(
        objects,
        arrows,
        src.clone(),
        tgt.clone(),
        unit,
        inv,
        |x, y| index[&(tgt[x.index()].index(), g.mul(middle[x.index()], middle[y.index()]), src[y.index()].index())],
    ));
    let proj = Functor::new_unchecked(pb.clone(), g.clone(), p.to_vec(), middle);
    (pb, proj)
}

/// `pullback_groupoid` with `p` given by object labels.
pub fn pullback_groupoid_labels<S: AsRef<str>>(
    g: &Arc<Groupoid>,
    along: &[(S, S)],
) -> Result<(Arc<Groupoid>, Functor)> {
    let space: Vec<&str> = along.iter().map(|(e, _)| e.as_ref()).collect();
    let mut seen = std::collections::HashSet::new();
    if let Some(d) = space.iter().find(|e| !seen.insert(**e)) {
        return Err(Error::Precondition(format!("point {d} listed twice")));
    }
    let p = along
        .iter()
        .map(|(_, b)| g.object(b.as_ref()).ok_or_else(|| Error::UnknownObject(b.as_ref().into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(pullback_groupoid(g, &space, &p))
}

/// The fibre product `H ×_G K` of two functors with a common target.
#[derive(Clone, Debug)]
pub struct FibreProduct {
    pub groupoid: Arc<Groupoid>,
    pub left: Functor,
    pub right: Functor,
}

pub fn fibre_product(f: &Functor, k: &Functor) -> Result<FibreProduct> {
    fibre_product_on(f, k, &|_, _| true)
}

/// The full subgroupoid of `H ×_G K` on the object pairs accepted by `keep`,
/// built without the rest of the fibre product.
pub fn fibre_product_on(f: &Functor, k: &Functor, keep: &dyn Fn(ObjectId, ObjectId) -> bool) -> Result<FibreProduct> {
    if !same_groupoid(f.target(), k.target()) {
        return Err(Error::Precondition("fibre product of functors with different targets".into()));
    }
    let (h, kk, g) = (f.source(), k.source(), f.target());
    let mut over: Vec<Vec<ObjectId>> = vec![Vec::new(); g.object_count()];
    for y in kk.object_ids() {
        over[k.obj(y).index()].push(y);
    }
    let mut objects = Vec::new();
    let mut obj_pairs = Vec::new();
    let mut obj_index = HashMap::new();
    for x in h.object_ids() {
        for &y in over[f.obj(x).index()].iter().filter(|&&y| keep(x, y)) {
            obj_index.insert((x, y), ObjectId::new(obj_pairs.len()));
            objects.push(format!("({},{})", h.object_label(x), kk.object_label(y)));
            obj_pairs.push((x, y));
        }
    }
    let mut arrows_over: Vec<Vec<ArrowId>> = vec![Vec::new(); g.arrow_count()];
    for b in kk.arrow_ids() {
        arrows_over[k.arr(b).index()].push(b);
    }
    let mut arrows = Vec::new();
    let mut arr_pairs = Vec::new();
    let mut arr_index = HashMap::new();
    for a in h.arrow_ids() {
        for &b in &arrows_over[f.arr(a).index()] {
            if !obj_index.contains_key(&(h.src(a), kk.src(b))) || !obj_index.contains_key(&(h.tgt(a), kk.tgt(b))) {
                continue;
            }
            arr_index.insert((a, b), ArrowId::new(arr_pairs.len()));
            arrows.push(format!("({},{})", h.arrow_label(a), kk.arrow_label(b)));
            arr_pairs.push((a, b));
        }
    }
    let src: Vec<ObjectId> = arr_pairs.iter().map(|&(a, b)| obj_index[&(h.src(a), kk.src(b))]).collect();
    let tgt: Vec<ObjectId> = arr_pairs.iter().map(|&(a, b)| obj_index[&(h.tgt(a), kk.tgt(b))]).collect();
    let unit = obj_pairs.iter().map(|&(x, y)| arr_index[&(h.unit(x), kk.unit(y))]).collect();
    let inv = arr_pairs.iter().map(|&(a, b)| arr_index[&(h.inv(a), kk.inv(b))]).collect();
    let groupoid = Arc::new(Groupoid::assemble(objects, arrows, src, tgt, unit, inv, |x, y| {
        let ((a1, b1), (a2, b2)) = (arr_pairs[x.index()], arr_pairs[y.index()]);
        arr_index[&(h.mul(a1, a2), kk.mul(b1, b2))]
    }));
    let left = Functor::new_unchecked(
        groupoid.clone(),
        h.clone(),
        obj_pairs.iter().map(|p| p.0).collect(),
        arr_pairs.iter().map(|p| p.0).collect(),
    );
    let right = Functor::new_unchecked(
        groupoid.clone(),
        kk.clone(),
        obj_pairs.iter().map(|p| p.1).collect(),
        arr_pairs.iter().map(|p| p.1).collect(),
    );
    Ok(FibreProduct { groupoid, left, right })
}

/// `product(G, H)` as a shared value, for use with [`pairing`].
pub fn product_of(g: &Groupoid, h: &Groupoid) -> Arc<Groupoid> {
    Arc::new(product(g, h))
}

/// `k ↦ (p k, q k)` into `prod = product(target p, target q)`.
pub fn pairing(p: &Functor, q: &Functor, prod: &Arc<Groupoid>) -> Result<Functor> {
    if !same_groupoid(p.source(), q.source()) {
        return Err(Error::Precondition("pairing of functors with different sources".into()));
    }
    let (g, h) = (p.target(), q.target());
    if prod.object_count() != g.object_count() * h.object_count()
        || prod.arrow_count() != g.arrow_count() * h.arrow_count()
    {
        return Err(Error::Precondition("pairing target is not the product".into()));
    }
    let k = p.source();
    let (no, na) = (h.object_count(), h.arrow_count());
    Ok(Functor::new_unchecked(
        k.clone(),
        prod.clone(),
        k.object_ids().map(|b| ObjectId::new(p.obj(b).index() * no + q.obj(b).index())).collect(),
        k.arrow_ids().map(|a| ArrowId::new(p.arr(a).index() * na + q.arr(a).index())).collect(),
    ))
}
