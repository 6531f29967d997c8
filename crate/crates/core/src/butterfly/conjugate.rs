use std::collections::HashMap;
use std::sync::Arc;

use crate::butterfly::Butterfly;
use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::classify::classify_morphism;
use crate::morphisms::functor::Functor;
use crate::morphisms::pullback::pullback_groupoid;
use crate::morphisms::quotient::bilateral_quotient;
use crate::subgroupoid::image_of;

/// The butterfly built from a principal s-actor `r: R → G`.
#[derive(Clone, Debug)]
pub struct Conjugation {
    pub butterfly: Butterfly,
    /// `R ↪ K`, `ρ ↦ (tgt ρ, r ρ, src ρ)`.
    pub embedding: Functor,
    /// `G′ = K // R`.
    pub conjugate_target: Arc<Groupoid>,
}

impl Conjugation {
    /// The conjugate actor `r′: R′ → G′`.
    pub fn conjugate(&self) -> Functor {
        self.butterfly.co_actor()
    }
}

/// Completes a principal s-actor into a butterfly. The core is `G` induced
/// along the object map of `r`; the second leg divides it by the image of
/// `R`.
pub fn conjugate_principal_actor(r: &Functor) -> Result<Conjugation> {
    let c = classify_morphism(r);
    let mut missing = Vec::new();
    if !c.actor {
        missing.push("not an actor");
    }
    if !c.principal_source {
        missing.push("source not principal");
    }
    if !r.is_object_surjective() {
        missing.push("not surjective on objects");
    }
    if !missing.is_empty() {
        return Err(Error::Precondition(format!("not a principal s-actor: {}", missing.join(", "))));
    }
    let (rr, g) = (r.source(), r.target());
    let (core, leg) = pullback_groupoid(g, rr.object_labels(), r.object_map());
    let mut index: HashMap<(ObjectId, ArrowId, ObjectId), ArrowId> = HashMap::new();
    for k in core.arrow_ids() {
        index.insert((core.tgt(k), leg.arr(k), core.src(k)), k);
    }
    let embedding = Functor::new(
        rr.clone(),
        core.clone(),
        rr.object_ids().collect(),
        rr.arrow_ids().map(|a| index[&(rr.tgt(a), r.arr(a), rr.src(a))]).collect(),
    )?;
    let wing = image_of(&embedding)?;
    let (conjugate_target, co_leg) = bilateral_quotient(&core, &wing)?;
    let butterfly = Butterfly::new(leg, co_leg)?;
    debug_assert_eq!(butterfly.wing(), &wing);
    Ok(Conjugation { butterfly, embedding, conjugate_target })
}

#[cfg(test)]
mod tests {
    use std::ops::ControlFlow;

    use super::*;
    use crate::actions::{action_to_actor, ActionLaw};
    use crate::construct::*;
    use crate::group::GroupTable;
    use crate::morphisms::natural::natural_iso;
    use crate::search::{for_each_functor, isomorphic, SearchOptions};

    fn free_z2_on_six() -> Functor {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let space: Vec<String> = (0..6).map(|i| format!("e{i}")).collect();
        let act = ActionLaw::new(z2, space, vec![ObjectId::new(0); 6], |g, x| x ^ g.index()).unwrap();
        action_to_actor(&act).1
    }

    #[test]
    fn free_z2_action_gives_the_gauge_groupoid() {
        let c = conjugate_principal_actor(&free_z2_on_six()).unwrap();
        assert_eq!(c.butterfly.core().arrow_count(), 72);
        assert_eq!(c.conjugate_target.arrow_count(), 18);
        let expected = Arc::new(product(&from_group(&GroupTable::cyclic(2)), &pair_n(3)));
        assert!(isomorphic(&c.conjugate_target, &expected));
        assert_eq!(c.butterfly.wing().intersection(c.butterfly.co_wing()).len(), 6);
    }

    #[test]
    fn degenerate_point() {
        let p = Arc::new(pair(&["b"]));
        let pt = Arc::new(from_group(&GroupTable::trivial()));
        let r = Functor::from_arrow_fn(p, pt, |_| ArrowId::new(0)).unwrap();
        let c = conjugate_principal_actor(&r).unwrap();
        assert_eq!(c.butterfly.core().arrow_count(), 1);
        assert_eq!(c.conjugate_target.arrow_count(), 1);
    }

    #[test]
    fn rejects_non_actors() {
        let p = Arc::new(pair_n(2));
        let pt = Arc::new(from_group(&GroupTable::trivial()));
        let r = Functor::from_arrow_fn(p, pt, |_| ArrowId::new(0)).unwrap();
        assert!(matches!(conjugate_principal_actor(&r), Err(Error::Precondition(_))));
    }

    #[test]
    fn conjugation_is_involutive() {
        let r = free_z2_on_six();
        let first = conjugate_principal_actor(&r).unwrap();
        let r_prime = first.conjugate();
        let second = conjugate_principal_actor(&r_prime).unwrap();
        let r_back = second.conjugate();
        // both sources are the orbit relation of the free action on the same points
        let (src_back, src) = (r_back.source(), r.source());
        assert_eq!(src_back.object_labels(), src.object_labels());
        let relabel = Functor::new(
            src.clone(),
            src_back.clone(),
            src.object_ids().collect(),
            src.arrow_ids()
                .map(|a| src_back.hom(src.src(a), src.tgt(a)).next().expect("same relation"))
                .collect(),
        )
        .unwrap();
        let pulled = r_back.after(&relabel).unwrap();
        let mut found = false;
        let opts = SearchOptions { injective_objects: true, injective_arrows: true };
        let _ = for_each_functor(pulled.target(), r.target(), opts, &|_, _| true, &mut |phi| {
            if natural_iso(&r, &phi.after(&pulled).unwrap()).is_some() {
                found = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        assert!(found);
    }
}
