//! Butterflies: a core groupoid with two transverse principal wings and two
//! s-equivalence legs, conjugation of principal actors, the square groupoid
//! and the mixed law.

pub mod conjugate;
pub mod double;
pub mod square;
pub mod transversal;

use std::sync::Arc;

use crate::anchor::classify as degeneracies;
use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, Groupoid};
use crate::morphisms::classify::{classify_morphism, t_square};
use crate::morphisms::functor::{same_groupoid, Functor};
use crate::subgroupoid::{kernel, WideSubgroupoid};

pub use conjugate::{conjugate_principal_actor, Conjugation};
pub use double::{mixed_law_complete, MixedCompletion, MixedLaw, WingSquare};
pub use square::{square_groupoid, Square, SquareGroupoid};
pub use transversal::{transversality, transverse_split, Transversality, TransversalityReport};

/// The X-shaped diagram
///
/// ```text
///   R          R′
///     ↘      ↙
///        K
///     ↙      ↘
///   G          G′
/// ```
///
/// with `q: K → G`, `q′: K → G′`, `Ker q = R′` and `Ker q′ = R`.
#[derive(Clone, Debug)]
pub struct Butterfly {
    core: Arc<Groupoid>,
    leg: Functor,
    co_leg: Functor,
    wing: WideSubgroupoid,
    co_wing: WideSubgroupoid,
    wing_groupoid: (Arc<Groupoid>, Functor),
    co_wing_groupoid: (Arc<Groupoid>, Functor),
}

/// Whether `K` is induced from the target of a leg along its object map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InducedStructure {
    pub along_leg: bool,
    pub along_co_leg: bool,
}

impl Butterfly {
    /// Builds the butterfly of two legs with a common source and checks every
    /// invariant.
    pub fn new(leg: Functor, co_leg: Functor) -> Result<Butterfly> {
        let b = Butterfly::assemble(leg, co_leg)?;
        let v = b.violations();
        if v.is_empty() {
            Ok(b)
        } else {
            Err(Error::InvalidButterfly(v))
        }
    }

    fn assemble(leg: Functor, co_leg: Functor) -> Result<Butterfly> {
        if !same_groupoid(leg.source(), co_leg.source()) {
            return Err(Error::InvalidButterfly(vec!["legs have different sources".into()]));
        }
        let core = leg.source().clone();
        let wing = kernel(&co_leg);
        let co_wing = kernel(&leg);
        let wing_groupoid = wing.to_groupoid(&core);
        let co_wing_groupoid = co_wing.to_groupoid(&core);
        Ok(Butterfly { core, leg, co_leg, wing, co_wing, wing_groupoid, co_wing_groupoid })
    }

    /// Every broken invariant, as a sentence.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, w) in [("R", &self.wing_groupoid.0), ("R′", &self.co_wing_groupoid.0)] {
            if !degeneracies(w).principal {
                out.push(format!("wing {name} is not principal"));
            }
        }
        match transversality(&self.core, &self.wing, &self.co_wing) {
            Ok(r) if r.kind == Transversality::Transverse => {}
            Ok(r) => out.push(format!("wings are not transverse ({})", r.kind)),
            Err(e) => out.push(e.to_string()),
        }
        for (name, f) in [("q", &self.leg), ("q′", &self.co_leg)] {
            if !classify_morphism(f).s_equivalence {
                out.push(format!("leg {name} is not an s-equivalence"));
            }
        }
        for (name, f) in [("r", self.actor()), ("r′", self.co_actor())] {
            let c = classify_morphism(&f);
            if !(c.actor && f.is_object_surjective()) {
                out.push(format!("{name} is not an s-actor"));
            }
        }
        out
    }

    pub fn core(&self) -> &Arc<Groupoid> {
        &self.core
    }

    /// `q: K → G`.
    pub fn leg(&self) -> &Functor {
        &self.leg
    }

    /// `q′: K → G′`.
    pub fn co_leg(&self) -> &Functor {
        &self.co_leg
    }

    /// `R = Ker q′`.
    pub fn wing(&self) -> &WideSubgroupoid {
        &self.wing
    }

    /// `R′ = Ker q`.
    pub fn co_wing(&self) -> &WideSubgroupoid {
        &self.co_wing
    }

    pub fn wing_groupoid(&self) -> &Arc<Groupoid> {
        &self.wing_groupoid.0
    }

    pub fn co_wing_groupoid(&self) -> &Arc<Groupoid> {
        &self.co_wing_groupoid.0
    }

    /// The core arrow behind an arrow of `R`.
    pub fn wing_arrow(&self, a: ArrowId) -> ArrowId {
        self.wing_groupoid.1.arr(a)
    }

    pub fn co_wing_arrow(&self, a: ArrowId) -> ArrowId {
        self.co_wing_groupoid.1.arr(a)
    }

    /// `r = q|R: R → G`.
    pub fn actor(&self) -> Functor {
        self.leg.after(&self.wing_groupoid.1).expect("wing lies in the core")
    }

    /// `r′ = q′|R′: R′ → G′`.
    pub fn co_actor(&self) -> Functor {
        self.co_leg.after(&self.co_wing_groupoid.1).expect("wing lies in the core")
    }

    /// Checks that `k ↦ (tgt k, q k, src k)` identifies `K` with the groupoid
    /// induced by `G` along `q`, and likewise for `q′`.
    pub fn induced_structure(&self) -> InducedStructure {
        InducedStructure {
            along_leg: t_square(&self.leg).bijective(),
            along_co_leg: t_square(&self.co_leg).bijective(),
        }
    }
}

/// The pair groupoid on the 2×2 grid `{00, 01, 10, 11}` with the row and
/// column relations as wings.
pub fn grid_core() -> (Arc<Groupoid>, WideSubgroupoid, WideSubgroupoid) {
    let k = Arc::new(crate::construct::pair(&["00", "01", "10", "11"]));
    let same = |a: ArrowId, part: fn(&str) -> &str| part(k.object_label(k.src(a))) == part(k.object_label(k.tgt(a)));
    let rows = WideSubgroupoid::new(&k, k.arrow_ids().filter(|&a| same(a, |s| &s[..1]))).expect("rows");
    let cols = WideSubgroupoid::new(&k, k.arrow_ids().filter(|&a| same(a, |s| &s[1..]))).expect("columns");
    (k, rows, cols)
}

#[cfg(test)]
pub(crate) fn grid() -> (Groupoid, WideSubgroupoid, WideSubgroupoid) {
    let (k, r, c) = grid_core();
    ((*k).clone(), r, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;
    use crate::morphisms::pullback::pullback_groupoid;
    use crate::groupoid::ObjectId;

    #[test]
    fn canonical_butterfly_of_small_groupoids() {
        for g in [from_group(&GroupTable::cyclic(2)), pair_n(2), from_group(&GroupTable::cyclic(3))] {
            let sq = square_groupoid(&Arc::new(g));
            let b = sq.canonical_butterfly().unwrap();
            assert_eq!(b.induced_structure(), InducedStructure { along_leg: true, along_co_leg: true });
            assert_eq!(
                b.wing().intersection(b.co_wing()).len(),
                b.core().object_count(),
                "wings meet in units only"
            );
        }
    }

    #[test]
    fn rejects_non_transverse_legs() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let (k, q) = pullback_groupoid(&z2, &["a", "b"], &[ObjectId::new(0); 2]);
        let err = Butterfly::new(q.clone(), Functor::identity(k)).unwrap_err();
        let Error::InvalidButterfly(v) = err else { panic!() };
        assert!(v.iter().any(|s| s.starts_with("wings are not transverse")));
        assert!(v.iter().any(|s| s == "r′ is not an s-actor"));
    }
}
