use std::sync::Arc;

use crate::anchor::orbits;
use crate::butterfly::Butterfly;
use crate::construct::restrict;
use crate::error::{Error, Result};
use crate::fractions::holograph::holograph;
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::classify::{classify_morphism, t_square};
use crate::morphisms::functor::{same_groupoid, Functor};
use crate::morphisms::pullback::pullback_groupoid;
use crate::morphisms::section::{faithful_lookup, full_subgroupoid};
use crate::search::{find_isomorphism, isotropy_isomorphic};

/// Two s-equivalences `G ← K → H`.
#[derive(Clone, Debug)]
pub struct MoritaSpan {
    pub core: Arc<Groupoid>,
    pub leg: Functor,
    pub co_leg: Functor,
}

#[derive(Clone, Debug)]
pub struct MoritaWitness {
    /// An equivalence `F: G → H` read off the skeleta.
    pub equivalence: Functor,
    /// `F₀**(H)` when `F` is onto objects, else the linking span.
    pub span: MoritaSpan,
    /// The span over `obj G ⊔ obj H`.
    pub linking: MoritaSpan,
    /// The holograph of `F` as a butterfly between `G` and `H`.
    pub butterfly: Butterfly,
}

#[derive(Clone, Debug)]
pub struct MoritaDecision {
    pub equivalent: bool,
    /// Matched orbit representatives `(in G, in H)`.
    pub matching: Option<Vec<(ObjectId, ObjectId)>>,
    pub witness: Option<MoritaWitness>,
}

/// Pairs the orbits of `G` and `H` so that matched isotropy groups are
/// isomorphic. Representatives are the smallest object of each orbit.
pub fn skeleton_matching(g: &Groupoid, h: &Groupoid) -> Option<Vec<(ObjectId, ObjectId)>> {
    let (og, _) = orbits(g);
    let (oh, _) = orbits(h);
    if og.len() != oh.len() {
        return None;
    }
    let mut used = vec![false; oh.len()];
    let mut out = Vec::with_capacity(og.len());
    for orbit in &og {
        let r = orbit[0];
        let j = (0..oh.len()).find(|&j| {
            !used[j]
                && g.isotropy(r).len() == h.isotropy(oh[j][0]).len()
                && isotropy_isomorphic(g, r, h, oh[j][0])
        })?;
        used[j] = true;
        out.push((r, oh[j][0]));
    }
    Some(out)
}

/// `F(a: b → b′) = ψ(η_{b′}⁻¹ a η_b)`, where `η_b` joins the orbit
/// representative to `b` and `ψ` is an isomorphism of isotropy groups.
fn equivalence_from_matching(g: &Arc<Groupoid>, h: &Arc<Groupoid>, matching: &[(ObjectId, ObjectId)]) -> Functor {
    let (_, orbit_of) = orbits(g);
    let mut psi = vec![ArrowId::new(0); g.arrow_count()];
    for &(r, s) in matching {
        let (gr, kept_g) = restrict(g, &[r]);
        let (hs, kept_h) = restrict(h, &[s]);
        let iso = find_isomorphism(&Arc::new(gr), &Arc::new(hs)).expect("matched isotropy");
        for (i, &a) in kept_g.iter().enumerate() {
            psi[a.index()] = kept_h[iso.arr(ArrowId::new(i)).index()];
        }
    }
    let rep: Vec<ObjectId> = g.object_ids().map(|b| matching[orbit_of[b.index()]].0).collect();
    let eta: Vec<ArrowId> = g.object_ids().map(|b| g.hom(rep[b.index()], b).next().expect("same orbit")).collect();
    let objects = g.object_ids().map(|b| matching[orbit_of[b.index()]].1).collect();
    let arrows = g
        .arrow_ids()
        .map(|a| {
            let (b0, b1) = (g.src(a), g.tgt(a));
            let inner = g.mul(g.mul(g.inv(eta[b1.index()]), a), eta[b0.index()]);
            psi[inner.index()]
        })
        .collect();
    Functor::new_unchecked(g.clone(), h.clone(), objects, arrows)
}

/// The span of an equivalence `F: G → H` over the points `E`, where each
/// point carries its image in `H`, an object of `G` and an arrow `θ` of `H`
/// from the image of that object to the point's image.
fn span_over(f: &Functor, points: &[(String, ObjectId, ObjectId, ArrowId)]) -> Result<MoritaSpan> {
    let (g, h) = (f.source(), f.target());
    let labels: Vec<&str> = points.iter().map(|p| p.0.as_str()).collect();
    let over: Vec<ObjectId> = points.iter().map(|p| p.1).collect();
    let (core, co_leg) = pullback_groupoid(h, &labels, &over);
    let lookup = faithful_lookup(f);
    let arrows = core
        .arrow_ids()
        .map(|k| {
            let (e0, e1) = (core.src(k).index(), core.tgt(k).index());
            let (t0, t1) = (points[e0].3, points[e1].3);
            let inner = h.mul(h.mul(h.inv(t1), co_leg.arr(k)), t0);
            lookup[&(points[e0].2, points[e1].2, inner)]
        })
        .collect();
    let leg = Functor::new(core.clone(), g.clone(), points.iter().map(|p| p.2).collect(), arrows)?;
    let span = MoritaSpan { core, leg, co_leg };
    for (name, l) in [("leg", &span.leg), ("co-leg", &span.co_leg)] {
        if !classify_morphism(l).s_equivalence {
            return Err(Error::Precondition(format!("Morita span {name} is not an s-equivalence")));
        }
    }
    Ok(span)
}

/// Points of `G` and of `H`, labelled `0:b` and `1:c`.
fn linking_span(f: &Functor) -> Result<MoritaSpan> {
    let (g, h) = (f.source(), f.target());
    let mut points: Vec<(String, ObjectId, ObjectId, ArrowId)> =
        g.object_ids().map(|b| (format!("0:{}", g.object_label(b)), f.obj(b), b, h.unit(f.obj(b)))).collect();
    for c in h.object_ids() {
        let (b, theta) = g
            .object_ids()
            .find_map(|b| h.hom(f.obj(b), c).next().map(|t| (b, t)))
            .ok_or_else(|| Error::Precondition("functor is not essentially surjective".into()))?;
        points.push((format!("1:{}", h.object_label(c)), c, b, theta));
    }
    span_over(f, &points)
}

/// The span `G ≅ F₀**(H) → H`, labelled as `G`.
fn direct_span(f: &Functor) -> Result<MoritaSpan> {
    let (g, h) = (f.source(), f.target());
    let points: Vec<_> =
        g.object_ids().map(|b| (g.object_label(b).to_string(), f.obj(b), b, h.unit(f.obj(b)))).collect();
    span_over(f, &points)
}

/// Builds the full witness for an equivalence `F: G → H`.
pub fn morita_witness(f: &Functor) -> Result<MoritaWitness> {
    let c = classify_morphism(f);
    if !c.equivalence {
        return Err(Error::Precondition("functor is not an equivalence".into()));
    }
    let linking = linking_span(f)?;
    let span = if f.is_object_surjective() { direct_span(f)? } else { linking.clone() };
    let holo = holograph(f)?;
    let butterfly = Butterfly::new(holo.fraction.denominator().clone(), holo.fraction.numerator().clone())?;
    Ok(MoritaWitness { equivalence: f.clone(), span, linking, butterfly })
}

/// Decides Morita equivalence by matching skeleta, then builds and checks a
/// witness.
pub fn morita_equivalent(g: &Arc<Groupoid>, h: &Arc<Groupoid>) -> Result<MoritaDecision> {
    let Some(matching) = skeleton_matching(g, h) else {
        return Ok(MoritaDecision { equivalent: false, matching: None, witness: None });
    };
    let f = equivalence_from_matching(g, h, &matching);
    let witness = morita_witness(&f)?;
    Ok(MoritaDecision { equivalent: true, matching: Some(matching), witness: Some(witness) })
}

/// `K̂`: the core restricted to disjoint copies of both bases.
#[derive(Clone, Debug)]
pub struct HatPresentation {
    pub hat: Arc<Groupoid>,
    /// `G → K̂`.
    pub inclusion: Functor,
    /// `G′ → K̂`.
    pub co_inclusion: Functor,
    /// Arrow counts of the four parts `G`, `G′`, `S` (from `G` to `G′`) and
    /// `S⁻¹`.
    pub parts: [usize; 4],
}

/// Picks sections of both legs with disjoint images, or checks the given
/// ones, and restricts the core to their union.
pub fn hat_presentation(span: &MoritaSpan, sections: Option<(&[ObjectId], &[ObjectId])>) -> Result<HatPresentation> {
    let (k, q, q2) = (&span.core, &span.leg, &span.co_leg);
    if !same_groupoid(q.source(), q2.source()) {
        return Err(Error::Precondition("legs have different sources".into()));
    }
    for l in [q, q2] {
        if !t_square(l).bijective() {
            return Err(Error::Precondition("leg is not fully faithful".into()));
        }
    }
    let (g, g2) = (q.target(), q2.target());
    let (s, s2) = match sections {
        Some((s, s2)) => {
            if s.len() != g.object_count()
                || s2.len() != g2.object_count()
                || g.object_ids().any(|b| q.obj(s[b.index()]) != b)
                || g2.object_ids().any(|b| q2.obj(s2[b.index()]) != b)
            {
                return Err(Error::Precondition("given maps are not sections of the legs".into()));
            }
            let mut seen = vec![false; k.object_count()];
            if s.iter().chain(s2).any(|e| std::mem::replace(&mut seen[e.index()], true)) {
                return Err(Error::Precondition("section images intersect".into()));
            }
            (s.to_vec(), s2.to_vec())
        }
        None => disjoint_sections(span)?,
    };
    let keep: Vec<ObjectId> = s.iter().chain(&s2).copied().collect();
    let (hat, inc) = full_subgroupoid(k, &keep);
    let nb = s.len();
    let lift = |base: &Arc<Groupoid>, leg: &Functor, offset: usize| {
        let obj: Vec<ObjectId> = base.object_ids().map(|b| ObjectId::new(offset + b.index())).collect();
        let arrows = base
            .arrow_ids()
            .map(|a| {
                let (x, y) = (obj[base.src(a).index()], obj[base.tgt(a).index()]);
                hat.hom(x, y).find(|&t| leg.arr(inc.arr(t)) == a).expect("leg is full")
            })
            .collect();
        Functor::new(base.clone(), hat.clone(), obj, arrows)
    };
    let inclusion = lift(g, q, 0)?;
    let co_inclusion = lift(g2, q2, nb)?;
    let mut parts = [0; 4];
    for a in hat.arrow_ids() {
        let (src_g, tgt_g) = (hat.src(a).index() < nb, hat.tgt(a).index() < nb);
        parts[match (tgt_g, src_g) {
            (true, true) => 0,
            (false, false) => 1,
            (false, true) => 2,
            (true, false) => 3,
        }] += 1;
    }
    Ok(HatPresentation { hat, inclusion, co_inclusion, parts })
}

/// Bipartite matching of the objects of both bases to core objects over
/// them.
fn disjoint_sections(span: &MoritaSpan) -> Result<(Vec<ObjectId>, Vec<ObjectId>)> {
    let (k, q, q2) = (&span.core, &span.leg, &span.co_leg);
    let (ng, ng2) = (q.target().object_count(), q2.target().object_count());
    let candidates: Vec<Vec<usize>> = (0..ng)
        .map(|b| k.object_ids().filter(|&e| q.obj(e).index() == b).map(|e| e.index()).collect())
        .chain((0..ng2).map(|b| k.object_ids().filter(|&e| q2.obj(e).index() == b).map(|e| e.index()).collect()))
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; k.object_count()];
    fn augment(u: usize, cand: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &e in &cand[u] {
            if !std::mem::replace(&mut seen[e], true)
                && (owner[e].is_none() || augment(owner[e].unwrap(), cand, owner, seen))
            {
                owner[e] = Some(u);
                return true;
            }
        }
        false
    }
    for u in 0..candidates.len() {
        let mut seen = vec![false; k.object_count()];
        if !augment(u, &candidates, &mut owner, &mut seen) {
            return Err(Error::Precondition("no sections with disjoint images".into()));
        }
    }
    let mut chosen = vec![ObjectId::new(0); candidates.len()];
    for (e, o) in owner.iter().enumerate() {
        if let Some(u) = *o {
            chosen[u] = ObjectId::new(e);
        }
    }
    let s2 = chosen.split_off(ng);
    Ok((chosen, s2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;
    use crate::search::isomorphic;

    fn z(n: usize) -> Arc<Groupoid> {
        Arc::new(from_group(&GroupTable::cyclic(n)))
    }

    #[test]
    fn pairs_are_equivalent_to_the_point() {
        let pt = z(1);
        for n in 1..=4 {
            let d = morita_equivalent(&Arc::new(pair_n(n)), &pt).unwrap();
            assert!(d.equivalent);
            let w = d.witness.unwrap();
            assert_eq!(w.span.core.object_count(), n);
        }
        assert!(!morita_equivalent(&z(2), &z(3)).unwrap().equivalent);
    }

    #[test]
    fn gauge_groupoid_over_three_points() {
        let g = Arc::new(product(&z(2), &pair_n(3)));
        let d = morita_equivalent(&g, &z(2)).unwrap();
        let w = d.witness.unwrap();
        assert_eq!(w.span.core.object_count(), 3);
        assert!(isomorphic(&w.span.core, &g));
        assert!(classify_morphism(&w.span.leg).s_equivalence && classify_morphism(&w.span.co_leg).s_equivalence);
        let back = morita_equivalent(&z(2), &g).unwrap().witness.unwrap();
        assert_eq!(back.span.core.object_count(), 4);
    }

    #[test]
    fn hat_of_pair_and_point() {
        let w = morita_equivalent(&Arc::new(pair_n(2)), &z(1)).unwrap().witness.unwrap();
        let hat = hat_presentation(&w.linking, None).unwrap();
        assert_eq!(hat.hat.arrow_count(), 9);
        assert_eq!(hat.parts, [4, 1, 2, 2]);
        assert!(isomorphic(&hat.hat, &Arc::new(pair_n(3))));
        for i in [&hat.inclusion, &hat.co_inclusion] {
            let c = classify_morphism(i);
            assert!(c.fully_faithful && c.i_functor && c.equivalence);
        }
        assert!(hat_presentation(&w.span, None).is_err());
    }

    #[test]
    fn hat_of_identity_doubles_the_base() {
        let g = Arc::new(from_group(&GroupTable::symmetric(3)));
        let w = morita_witness(&Functor::identity(g.clone())).unwrap();
        let hat = hat_presentation(&w.linking, None).unwrap();
        assert!(isomorphic(&hat.hat, &Arc::new(product(&g, &pair_n(2)))));
        assert_eq!(hat.parts, [6, 6, 6, 6]);
        let overlap = [ObjectId::new(0)];
        assert!(hat_presentation(&w.linking, Some((&overlap, &overlap))).is_err());
    }
}
