//! Standard groupoids and combinators.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::groupoid::{ArrowId, Groupoid, ObjectId};

/// Label of the pair arrow with target `i` and source `j`.
pub fn pair_label(i: &str, j: &str) -> String {
    format!("({i},{j})")
}

/// The banal groupoid `B × B`. The arrow `(i,j)` goes from `j` to `i`.
pub fn pair<S: AsRef<str>>(objects: &[S]) -> Groupoid {
    let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_string()).collect();
    let n = objects.len();
    let at = |i: usize, j: usize| ArrowId::new(i * n + j);
    let mut arrows = Vec::with_capacity(n * n);
    let mut src = Vec::with_capacity(n * n);
    let mut tgt = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            arrows.push(pair_label(&objects[i], &objects[j]));
            src.push(ObjectId::new(j));
            tgt.push(ObjectId::new(i));
        }
    }
    let unit = (0..n).map(|i| at(i, i)).collect();
    let inv = (0..n * n).map(|a| at(a % n, a / n)).collect();
    Groupoid::assemble(objects, arrows, src, tgt, unit, inv, |g, h| {
        at(g.index() / n, h.index() % n)
    })
}

/// `pair` on the objects `0..n`.
pub fn pair_n(n: usize) -> Groupoid {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    pair(&labels)
}

/// The null groupoid: units only.
pub fn null<S: AsRef<str>>(objects: &[S]) -> Groupoid {
    let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_string()).collect();
    let n = objects.len();
    let arrows = objects.iter().map(|b| pair_label(b, b)).collect();
    let ids: Vec<ObjectId> = (0..n).map(ObjectId::new).collect();
    let units: Vec<ArrowId> = (0..n).map(ArrowId::new).collect();
    Groupoid::assemble(objects, arrows, ids.clone(), ids, units.clone(), units, |g, _| g)
}

/// A group as a groupoid with the single object `*`.
pub fn from_group(group: &GroupTable) -> Groupoid {
    let n = group.order();
    let star = ObjectId::new(0);
    Groupoid::assemble(
        vec!["*".to_string()],
        group.names().to_vec(),
        vec![star; n],
        vec![star; n],
        vec![ArrowId::new(group.identity())],
        (0..n).map(|a| ArrowId::new(group.inv(a))).collect(),
        |g, h| ArrowId::new(group.mul(g.index(), h.index())),
    )
}

/// The principal groupoid of an equivalence relation. A pair `(a, b)` is
/// the arrow from `b` to `a`.
pub fn from_equivalence<S: AsRef<str>>(objects: &[S], relation: &[(S, S)]) -> Result<Groupoid> {
    let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_string()).collect();
    let index: HashMap<&str, usize> =
        objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    if index.len() != objects.len() {
        return Err(Error::NotAnEquivalence("duplicate object".into()));
    }
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    for (a, b) in relation {
        let (a, b) = (a.as_ref(), b.as_ref());
        let ia = *index.get(a).ok_or_else(|| Error::UnknownObject(a.to_string()))?;
        let ib = *index.get(b).ok_or_else(|| Error::UnknownObject(b.to_string()))?;
        if seen.insert((ia, ib)) {
            pairs.push((ia, ib));
        }
    }
    for i in 0..objects.len() {
        if !seen.contains(&(i, i)) {
            return Err(Error::NotAnEquivalence(format!("not reflexive at {}", objects[i])));
        }
    }
    for &(a, b) in &pairs {
        if !seen.contains(&(b, a)) {
            return Err(Error::NotAnEquivalence(format!(
                "not symmetric at ({},{})",
                objects[a], objects[b]
            )));
        }
    }
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            if b == c && !seen.contains(&(a, d)) {
                return Err(Error::NotAnEquivalence(format!(
                    "not transitive at ({},{}) and ({},{})",
                    objects[a], objects[b], objects[c], objects[d]
                )));
            }
        }
    }
    let position: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let arrows = pairs.iter().map(|&(a, b)| pair_label(&objects[a], &objects[b])).collect();
    let src = pairs.iter().map(|&(_, b)| ObjectId::new(b)).collect();
    let tgt = pairs.iter().map(|&(a, _)| ObjectId::new(a)).collect();
    let unit = (0..objects.len()).map(|i| ArrowId::new(position[&(i, i)])).collect();
    let inv = pairs.iter().map(|&(a, b)| ArrowId::new(position[&(b, a)])).collect();
    Ok(Groupoid::assemble(objects, arrows, src, tgt, unit, inv, |g, h| {
        ArrowId::new(position[&(pairs[g.index()].0, pairs[h.index()].1)])
    }))
}

/// A disjoint union of groups, one per named object. Arrows are labelled
/// `object:element`.
pub fn plurigroup<S: AsRef<str>>(family: &[(S, GroupTable)]) -> Result<Groupoid> {
    let mut seen = HashSet::new();
    for (b, _) in family {
        if !seen.insert(b.as_ref()) {
            return Err(Error::Precondition(format!("duplicate object {}", b.as_ref())));
        }
    }
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    let mut owner = Vec::new();
    let mut offset = Vec::new();
    for (k, (b, g)) in family.iter().enumerate() {
        objects.push(b.as_ref().to_string());
        offset.push(arrows.len());
        for e in g.names() {
            arrows.push(format!("{}:{e}", b.as_ref()));
            owner.push(k);
        }
    }
    let ends: Vec<ObjectId> = owner.iter().map(|&k| ObjectId::new(k)).collect();
    let unit = family
        .iter()
        .enumerate()
        .map(|(k, (_, g))| ArrowId::new(offset[k] + g.identity()))
        .collect();
    let inv = (0..arrows.len())
        .map(|a| {
            let k = owner[a];
            ArrowId::new(offset[k] + family[k].1.inv(a - offset[k]))
        })
        .collect();
    Ok(Groupoid::assemble(objects, arrows, ends.clone(), ends, unit, inv, |g, h| {
        let k = owner[g.index()];
        let group = &family[k].1;
        ArrowId::new(offset[k] + group.mul(g.index() - offset[k], h.index() - offset[k]))
    }))
}

/// Same arrows with source and target swapped; `g ∘op h = h ∘ g`.
pub fn opposite(g: &Groupoid) -> Groupoid {
    Groupoid::assemble(
        g.object_labels().to_vec(),
        g.arrow_labels().to_vec(),
        g.arrow_ids().map(|a| g.tgt(a)).collect(),
        g.arrow_ids().map(|a| g.src(a)).collect(),
        g.object_ids().map(|b| g.unit(b)).collect(),
        g.arrow_ids().map(|a| g.inv(a)).collect(),
        |x, y| g.mul(y, x),
    )
}

/// The product groupoid; objects and arrows are labelled `(a,b)`.
pub fn product(g: &Groupoid, h: &Groupoid) -> Groupoid {
    let (no, na) = (h.object_count(), h.arrow_count());
    let obj = |a: ObjectId, b: ObjectId| ObjectId::new(a.index() * no + b.index());
    let arr = |x: ArrowId, y: ArrowId| ArrowId::new(x.index() * na + y.index());
    let split = |z: ArrowId| (ArrowId::new(z.index() / na), ArrowId::new(z.index() % na));
    let mut objects = Vec::new();
    for a in g.object_ids() {
        for b in h.object_ids() {
            objects.push(format!("({},{})", g.object_label(a), h.object_label(b)));
        }
    }
    let mut arrows = Vec::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut inv = Vec::new();
    for x in g.arrow_ids() {
        for y in h.arrow_ids() {
            arrows.push(format!("({},{})", g.arrow_label(x), h.arrow_label(y)));
            src.push(obj(g.src(x), h.src(y)));
            tgt.push(obj(g.tgt(x), h.tgt(y)));
            inv.push(arr(g.inv(x), h.inv(y)));
        }
    }
    let mut unit = Vec::new();
    for a in g.object_ids() {
        for b in h.object_ids() {
            unit.push(arr(g.unit(a), h.unit(b)));
        }
    }
    Groupoid::assemble(objects, arrows, src, tgt, unit, inv, |z1, z2| {
        let ((x1, y1), (x2, y2)) = (split(z1), split(z2));
        arr(g.mul(x1, x2), h.mul(y1, y2))
    })
}

/// Disjoint union; labels are prefixed with `0:` and `1:`.
pub fn disjoint_union(g: &Groupoid, h: &Groupoid) -> Groupoid {
    let (go, ga) = (g.object_count(), g.arrow_count());
    let shift_o = |b: ObjectId| ObjectId::new(b.index() + go);
    let shift_a = |a: ArrowId| ArrowId::new(a.index() + ga);
    let objects = g
        .object_labels()
        .iter()
        .map(|l| format!("0:{l}"))
        .chain(h.object_labels().iter().map(|l| format!("1:{l}")))
        .collect();
    let arrows = g
        .arrow_labels()
        .iter()
        .map(|l| format!("0:{l}"))
        .chain(h.arrow_labels().iter().map(|l| format!("1:{l}")))
        .collect();
    let src = g.arrow_ids().map(|a| g.src(a)).chain(h.arrow_ids().map(|a| shift_o(h.src(a)))).collect();
    let tgt = g.arrow_ids().map(|a| g.tgt(a)).chain(h.arrow_ids().map(|a| shift_o(h.tgt(a)))).collect();
    let unit = g.object_ids().map(|b| g.unit(b)).chain(h.object_ids().map(|b| shift_a(h.unit(b)))).collect();
    let inv = g.arrow_ids().map(|a| g.inv(a)).chain(h.arrow_ids().map(|a| shift_a(h.inv(a)))).collect();
    Groupoid::assemble(objects, arrows, src, tgt, unit, inv, |x, y| {
        if x.index() < ga {
            g.mul(x, y)
        } else {
            let back = |a: ArrowId| ArrowId::new(a.index() - ga);
            shift_a(h.mul(back(x), back(y)))
        }
    })
}

/// The full subgroupoid on the named objects.
pub fn full_restriction<S: AsRef<str>>(g: &Groupoid, subset: &[S]) -> Result<Groupoid> {
    let mut ids = Vec::new();
    for s in subset {
        let b = g.object(s.as_ref()).ok_or_else(|| Error::UnknownObject(s.as_ref().to_string()))?;
        if !ids.contains(&b) {
            ids.push(b);
        }
    }
    Ok(restrict(g, &ids).0)
}

/// The full subgroupoid on `keep`, in the given object order, together with
/// the original id of every kept arrow.
pub fn restrict(g: &Groupoid, keep: &[ObjectId]) -> (Groupoid, Vec<ArrowId>) {
    let mut new_obj = vec![None; g.object_count()];
    for (i, &b) in keep.iter().enumerate() {
        new_obj[b.index()] = Some(ObjectId::new(i));
    }
    let kept: Vec<ArrowId> = g
        .arrow_ids()
        .filter(|&a| new_obj[g.src(a).index()].is_some() && new_obj[g.tgt(a).index()].is_some())
        .collect();
    let mut new_arrow = vec![None; g.arrow_count()];
    for (i, &a) in kept.iter().enumerate() {
        new_arrow[a.index()] = Some(ArrowId::new(i));
    }
    let na = |a: ArrowId| new_arrow[a.index()].unwrap();
    let sub = Groupoid::assemble(
        keep.iter().map(|&b| g.object_label(b).to_string()).collect(),
        kept.iter().map(|&a| g.arrow_label(a).to_string()).collect(),
        kept.iter().map(|&a| new_obj[g.src(a).index()].unwrap()).collect(),
        kept.iter().map(|&a| new_obj[g.tgt(a).index()].unwrap()).collect(),
        keep.iter().map(|&b| na(g.unit(b))).collect(),
        kept.iter().map(|&a| na(g.inv(a))).collect(),
        |x, y| na(g.mul(kept[x.index()], kept[y.index()])),
    );
    (sub, kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_valid(g: &Groupoid) {
        assert_eq!(g.axiom_violations(), vec![], "{g:?}");
    }

    #[test]
    fn standard_groupoids_are_valid() {
        let p = pair(&["1", "2", "3"]);
        assert_valid(&p);
        assert_eq!(p.arrow_count(), 9);
        assert_eq!(p.compose_labels("(1,2)", "(2,3)"), Some("(1,3)"));
        assert_valid(&null(&["a", "b", "c"]));
        assert_valid(&from_group(&GroupTable::symmetric(3)));
        let pg = plurigroup(&[("x", GroupTable::cyclic(2)), ("y", GroupTable::cyclic(3))]).unwrap();
        assert_valid(&pg);
        assert_eq!(pg.arrow_count(), 5);
        let prod = product(&from_group(&GroupTable::cyclic(2)), &pair(&["1", "2", "3"]));
        assert_valid(&prod);
        assert_eq!(prod.arrow_count(), 18);
        let du = disjoint_union(&from_group(&GroupTable::cyclic(3)), &pair(&["x", "y"]));
        assert_valid(&du);
        assert_eq!(du.arrow_count(), 7);
        assert_valid(&opposite(&prod));
    }

    #[test]
    fn equivalence_relation_checks() {
        let objs = ["a", "b", "c"];
        let rel = [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "a")];
        let g = from_equivalence(&objs, &rel).unwrap();
        assert_valid(&g);
        assert_eq!(g.arrow_count(), 5);
        assert!(from_equivalence(&objs, &rel[..4]).is_err());
        assert!(from_equivalence(&objs, &rel[1..]).is_err());
        let bad = [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "a"), ("b", "c"), ("c", "b")];
        assert!(matches!(from_equivalence(&objs, &bad), Err(Error::NotAnEquivalence(_))));
    }

    #[test]
    fn restriction_and_opposite() {
        let p = pair(&["1", "2", "3"]);
        let r = full_restriction(&p, &["1", "2"]).unwrap();
        assert_eq!(r, pair(&["1", "2"]));
        assert!(full_restriction(&p, &["4"]).is_err());
        assert_eq!(opposite(&opposite(&p)), p);
    }
}
