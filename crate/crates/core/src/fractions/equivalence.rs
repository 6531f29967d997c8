use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fractions::Fraction;
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::classify::classify_morphism;
use crate::morphisms::functor::{same_groupoid, Functor};
use crate::morphisms::natural::{all_natural_isos, NaturalTransformation};
use crate::morphisms::pullback::{fibre_product, fibre_product_on, pairing, product_of, FibreProduct};
use crate::morphisms::section::section_of;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EquivalenceOptions {
    /// Accept s-extensors as witnesses instead of s-equivalences.
    pub allow_s_extensors: bool,
}

/// Functors `k: L → K`, `k′: L → K′` with `p k = p′ k′` and `q k = q′ k′`.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub source: Arc<Groupoid>,
    pub k: Functor,
    pub k_prime: Functor,
    /// The natural isomorphism `pσ ⇒ p′σ′` that seeded the witness, if any.
    pub seed: Option<NaturalTransformation>,
}

/// Looks for witnesses inside the pullback `K ×_{G×H} K′` of the two
/// fractions. When both denominators are s-equivalences, each natural
/// isomorphism `θ` between the numerators seen through the sections cuts out
/// the full subgroupoid `S_θ` on the objects where `p′(ε′)⁻¹ p(ε) = θ`; a
/// witness on the whole pullback is always one of these, and only enough of
/// `S_θ` to cover both cores is built. Otherwise the whole pullback is
/// tried.
pub fn fractions_equivalent(
    a: &Fraction,
    b: &Fraction,
    opts: EquivalenceOptions,
) -> Result<Option<EquivalenceWitness>> {
    let (p, q, p2, q2) = (a.numerator(), a.denominator(), b.numerator(), b.denominator());
    if !same_groupoid(p.target(), p2.target()) || !same_groupoid(q.target(), q2.target()) {
        return Err(Error::Precondition("fractions have different targets".into()));
    }
    if a == b {
        let id = Functor::identity(a.source().clone());
        return Ok(Some(EquivalenceWitness { source: a.source().clone(), k: id.clone(), k_prime: id, seed: None }));
    }
    let prod = product_of(p.target(), q.target());
    let (pq, pq2) = (pairing(p, q, &prod)?, pairing(p2, q2, &prod)?);
    let accept = |f: &Functor| {
        let c = classify_morphism(f);
        c.s_equivalence || (opts.allow_s_extensors && c.s_extensor)
    };

    let split = classify_morphism(q).s_equivalence && classify_morphism(q2).s_equivalence;
    if !split {
        return witness(&fibre_product(&pq, &pq2)?, &accept);
    }
    let (sigma, sigma2) = (section_of(q, None)?, section_of(q2, None)?);
    let (phi, phi2) = (p.after(&sigma)?, p2.after(&sigma2)?);
    let eps = transport(q, &sigma);
    let eps2 = transport(q2, &sigma2);
    let g = p.target();
    let mut over: HashMap<ObjectId, Vec<ObjectId>> = HashMap::new();
    for e2 in b.source().object_ids() {
        over.entry(pq2.obj(e2)).or_default().push(e2);
    }
    for theta in all_natural_isos(&phi2, &phi) {
        let fits = |e: ObjectId, e2: ObjectId| {
            let lhs = g.mul(g.inv(p2.arr(eps2[e2.index()])), p.arr(eps[e.index()]));
            lhs == theta.component[q.obj(e).index()]
        };
        let Some(cover) = covering_pairs(a.source(), b.source().object_count(), &pq, &over, &fits) else {
            continue;
        };
        let s = fibre_product_on(&pq, &pq2, &|e, e2| cover.contains(&(e, e2)))?;
        if let Some(w) = witness(&s, &accept)? {
            return Ok(Some(EquivalenceWitness { seed: Some(theta), ..w }));
        }
    }
    Ok(None)
}

/// Objects of `S_θ` meeting every object of both cores, or `None` when some
/// object is missed. The full subgroupoid on them is a witness whenever
/// `S_θ` is one.
fn covering_pairs(
    k: &Groupoid,
    k2_objects: usize,
    pq: &Functor,
    over: &HashMap<ObjectId, Vec<ObjectId>>,
    fits: &dyn Fn(ObjectId, ObjectId) -> bool,
) -> Option<HashSet<(ObjectId, ObjectId)>> {
    let mut cover = HashSet::new();
    let mut seen2 = vec![false; k2_objects];
    let mut spare = Vec::new();
    for e in k.object_ids() {
        let candidates = over.get(&pq.obj(e)).map(Vec::as_slice).unwrap_or(&[]);
        let mut first = None;
        for &e2 in candidates.iter().filter(|&&e2| fits(e, e2)) {
            first.get_or_insert(e2);
            spare.push((e, e2));
        }
        let e2 = first?;
        seen2[e2.index()] = true;
        cover.insert((e, e2));
    }
    for (e, e2) in spare {
        if !seen2[e2.index()] {
            seen2[e2.index()] = true;
            cover.insert((e, e2));
        }
    }
    seen2.iter().all(|&s| s).then_some(cover)
}

/// For each object `e` of the core, the arrow `σ(q e) → e` over a unit.
fn transport(q: &Functor, sigma: &Functor) -> Vec<ArrowId> {
    let k = q.source();
    k.object_ids()
        .map(|e| {
            let h = q.obj(e);
            k.hom(sigma.obj(h), e).find(|&a| q.arr(a) == q.target().unit(h)).expect("q is full")
        })
        .collect()
}

fn witness(pb: &FibreProduct, accept: &dyn Fn(&Functor) -> bool) -> Result<Option<EquivalenceWitness>> {
    if accept(&pb.left) && accept(&pb.right) {
        Ok(Some(EquivalenceWitness {
            source: pb.groupoid.clone(),
            k: pb.left.clone(),
            k_prime: pb.right.clone(),
            seed: None,
        }))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::fractions::holograph;
    use crate::group::GroupTable;

    fn check(a: &Fraction, b: &Fraction, w: &EquivalenceWitness) {
        assert_eq!(a.numerator().after(&w.k).unwrap(), b.numerator().after(&w.k_prime).unwrap());
        assert_eq!(a.denominator().after(&w.k).unwrap(), b.denominator().after(&w.k_prime).unwrap());
    }

    #[test]
    fn identity_holograph_is_the_canonical_butterfly() {
        let g = Arc::new(from_group(&GroupTable::symmetric(3)));
        let h = holograph(&Functor::identity(g.clone())).unwrap();
        let sq = &h.squares;
        let canonical = Fraction::new(sq.up.clone(), sq.down.clone()).unwrap();
        let w = fractions_equivalent(&h.fraction, &canonical, EquivalenceOptions::default()).unwrap().unwrap();
        check(&h.fraction, &canonical, &w);
        let same = fractions_equivalent(&canonical, &canonical, EquivalenceOptions::default()).unwrap().unwrap();
        assert_eq!(same.k, Functor::identity(canonical.source().clone()));
    }

    #[test]
    fn distinct_functors_are_not_equivalent() {
        let z3 = Arc::new(from_group(&GroupTable::cyclic(3)));
        let id = Functor::identity(z3.clone());
        let null = Functor::from_arrow_fn(z3.clone(), z3.clone(), |_| ArrowId::new(0)).unwrap();
        let a = holograph(&id).unwrap().fraction;
        let b = holograph(&null).unwrap().fraction;
        assert!(fractions_equivalent(&a, &b, EquivalenceOptions::default()).unwrap().is_none());
    }

    #[test]
    fn target_mismatch() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let z3 = Arc::new(from_group(&GroupTable::cyclic(3)));
        let a = holograph(&Functor::identity(z2)).unwrap().fraction;
        let b = holograph(&Functor::identity(z3)).unwrap().fraction;
        assert!(fractions_equivalent(&a, &b, EquivalenceOptions::default()).is_err());
    }
}
