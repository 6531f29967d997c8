use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::functor::Functor;
use crate::morphisms::pullback::pullback_groupoid;

/// `H = r**(G)` over a cover `r: U ↠ B` and the pair of split
/// s-equivalences `K ⇉ H` coming from the graph `R = U ×_B U`.
#[derive(Clone, Debug)]
pub struct CechPresentation {
    pub h: Arc<Groupoid>,
    /// `H → G`.
    pub projection: Functor,
    /// Pairs `(u₁, u₀)` with `r u₁ = r u₀`.
    pub relation: Vec<(usize, usize)>,
    pub k: Arc<Groupoid>,
    /// `pr₁, pr₀: K → H`.
    pub legs: [Functor; 2],
    /// The diagonal `H → K`, a section of both legs.
    pub diagonal: Functor,
}

pub fn cech_presentation<S: AsRef<str>>(g: &Arc<Groupoid>, cover: &[S], r: &[ObjectId]) -> Result<CechPresentation> {
    if cover.len() != r.len() {
        return Err(Error::Precondition("cover and map have different lengths".into()));
    }
    let mut hit = vec![false; g.object_count()];
    for b in r {
        hit[b.index()] = true;
    }
    if let Some(b) = hit.iter().position(|h| !h) {
        return Err(Error::Precondition(format!("map misses object {}", g.object_label(ObjectId::new(b)))));
    }
    let (h, projection) = pullback_groupoid(g, cover, r);
    let n = cover.len();
    let relation: Vec<(usize, usize)> =
        (0..n).flat_map(|u1| (0..n).filter(move |&u0| r[u1] == r[u0]).map(move |u0| (u1, u0))).collect();
    let labels: Vec<String> =
        relation.iter().map(|&(u1, u0)| format!("({},{})", cover[u1].as_ref(), cover[u0].as_ref())).collect();
    let over: Vec<ObjectId> = relation.iter().map(|&(_, u0)| r[u0]).collect();
    let (k, k_proj) = pullback_groupoid(g, &labels, &over);

    let h_index: HashMap<(ObjectId, ArrowId, ObjectId), ArrowId> =
        h.arrow_ids().map(|a| ((h.tgt(a), projection.arr(a), h.src(a)), a)).collect();
    let k_index: HashMap<(ObjectId, ArrowId, ObjectId), ArrowId> =
        k.arrow_ids().map(|a| ((k.tgt(a), k_proj.arr(a), k.src(a)), a)).collect();
    let leg = |pick: fn((usize, usize)) -> usize| {
        let objects: Vec<ObjectId> = relation.iter().map(|&p| ObjectId::new(pick(p))).collect();
        let arrows = k
            .arrow_ids()
            .map(|a| h_index[&(objects[k.tgt(a).index()], k_proj.arr(a), objects[k.src(a).index()])])
            .collect();
        Functor::new(k.clone(), h.clone(), objects, arrows)
    };
    let legs = [leg(|p| p.0)?, leg(|p| p.1)?];
    let diag: Vec<ObjectId> = (0..n)
        .map(|u| ObjectId::new(relation.iter().position(|&p| p == (u, u)).expect("reflexive")))
        .collect();
    let diagonal = Functor::new(
        h.clone(),
        k.clone(),
        diag.clone(),
        h.arrow_ids().map(|a| k_index[&(diag[h.tgt(a).index()], projection.arr(a), diag[h.src(a).index()])]).collect(),
    )?;
    Ok(CechPresentation { h, projection, relation, k, legs, diagonal })
}
