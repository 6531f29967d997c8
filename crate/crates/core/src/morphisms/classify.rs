use std::fmt;

use crate::anchor::{classify as degeneracies, orbits};
use crate::groupoid::ObjectId;
use crate::morphisms::functor::Functor;

/// Injectivity and surjectivity of a canonical comparison map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SquareReport {
    pub injective: bool,
    pub surjective: bool,
    /// Size of the fibre product the map lands in.
    pub pullback_size: usize,
}

impl SquareReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// `h ↦ (f h, tgt h, src h)` into `G ×_{B×B} (E×E)`.
pub fn t_square(f: &Functor) -> SquareReport {
    let (h, g) = (f.source(), f.target());
    let mut injective = true;
    let mut surjective = true;
    let mut pullback_size = 0;
    let mut hit = vec![usize::MAX; g.arrow_count()];
    for (stamp, (e1, e0)) in h
        .object_ids()
        .flat_map(|e1| h.object_ids().map(move |e0| (e1, e0)))
        .enumerate()
    {
        let mut count = 0;
        for a in h.hom(e0, e1) {
            let fa = f.arr(a);
            if hit[fa.index()] == stamp {
                injective = false;
            } else {
                hit[fa.index()] = stamp;
                count += 1;
            }
        }
        let fibre = g.hom(f.obj(e0), f.obj(e1)).count();
        pullback_size += fibre;
        if count < fibre {
            surjective = false;
        }
    }
    SquareReport { injective, surjective, pullback_size }
}

/// `h ↦ (f h, src h)` into `G ×_B E`.
pub fn a_square(f: &Functor) -> SquareReport {
    let (h, g) = (f.source(), f.target());
    let mut injective = true;
    let mut surjective = true;
    let mut pullback_size = 0;
    let mut hit = vec![usize::MAX; g.arrow_count()];
    for e in h.object_ids() {
        let mut count = 0;
        for &a in h.outgoing(e) {
            let fa = f.arr(a);
            if hit[fa.index()] == e.index() {
                injective = false;
            } else {
                hit[fa.index()] = e.index();
                count += 1;
            }
        }
        let fibre = g.outgoing(f.obj(e)).len();
        pullback_size += fibre;
        if count < fibre {
            surjective = false;
        }
    }
    SquareReport { injective, surjective, pullback_size }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MorphismClassification {
    pub i_functor: bool,
    pub s_functor: bool,
    pub faithful: bool,
    pub full: bool,
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
    pub equivalence: bool,
    pub s_equivalence: bool,
    pub extensor: bool,
    pub s_extensor: bool,
    pub actor: bool,
    pub exactor: bool,
    pub s_exactor: bool,
    pub principal_source: bool,
    pub null: bool,
}

impl MorphismClassification {
    pub fn flags(&self) -> [(&'static str, bool); 15] {
        [
            ("i_functor", self.i_functor),
            ("s_functor", self.s_functor),
            ("faithful", self.faithful),
            ("full", self.full),
            ("fully_faithful", self.fully_faithful),
            ("essentially_surjective", self.essentially_surjective),
            ("equivalence", self.equivalence),
            ("s_equivalence", self.s_equivalence),
            ("extensor", self.extensor),
            ("s_extensor", self.s_extensor),
            ("actor", self.actor),
            ("exactor", self.exactor),
            ("s_exactor", self.s_exactor),
            ("principal_source", self.principal_source),
            ("null", self.null),
        ]
    }

    pub fn labels(&self) -> Vec<&'static str> {
        self.flags().into_iter().filter(|&(_, on)| on).map(|(n, _)| n).collect()
    }

    /// The implications that must hold between the flags; returns the names
    /// of the ones that fail.
    pub fn broken_implications(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut check = |ok: bool, name| {
            if !ok {
                out.push(name)
            }
        };
        check(self.fully_faithful == (self.faithful && self.full), "fully_faithful = faithful and full");
        check(!self.s_equivalence || self.equivalence, "s_equivalence => equivalence");
        check(!self.actor || self.exactor, "actor => exactor");
        check(!self.s_extensor || self.s_exactor, "s_extensor => s_exactor");
        check(!self.s_exactor || self.exactor, "s_exactor => exactor");
        check(!self.s_extensor || self.extensor, "s_extensor => extensor");
        out
    }
}

impl fmt::Display for MorphismClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

pub fn classify_morphism(f: &Functor) -> MorphismClassification {
    let (h, g) = (f.source(), f.target());
    let t = t_square(f);
    let a = a_square(f);
    let object_surjective = f.is_object_surjective();
    let (_, orbit_of) = orbits(g);
    let mut reached = vec![false; g.object_count()];
    for e in h.object_ids() {
        reached[orbit_of[f.obj(e).index()]] = true;
    }
    let essentially_surjective = g.object_ids().all(|b: ObjectId| reached[orbit_of[b.index()]]);
    let s_functor = object_surjective && f.is_arrow_surjective();
    let fully_faithful = t.bijective();
    MorphismClassification {
        i_functor: f.is_arrow_injective(),
        s_functor,
        faithful: t.injective,
        full: t.surjective,
        fully_faithful,
        essentially_surjective,
        equivalence: fully_faithful && essentially_surjective,
        s_equivalence: fully_faithful && object_surjective,
        extensor: t.surjective,
        s_extensor: t.surjective && object_surjective,
        actor: a.bijective(),
        exactor: a.surjective,
        s_exactor: a.surjective && s_functor,
        principal_source: degeneracies(h).principal,
        null: h.arrow_ids().all(|x| g.is_unit(f.arr(x))),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;
    use crate::groupoid::ArrowId;

    #[test]
    fn pair_to_point() {
        let p = Arc::new(pair(&["1", "2"]));
        let pt = Arc::new(from_group(&GroupTable::trivial()));
        let f = Functor::from_arrow_fn(p, pt, |_| ArrowId::new(0)).unwrap();
        let c = classify_morphism(&f);
        assert!(c.s_functor && c.full && c.essentially_surjective && c.s_extensor && c.s_exactor);
        assert!(!c.actor);
        assert!(c.equivalence);
        assert_eq!(a_square(&f).pullback_size, 2);
        assert!(c.broken_implications().is_empty());
    }

    #[test]
    fn inclusion_into_z2() {
        let pt = Arc::new(from_group(&GroupTable::trivial()));
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let f = Functor::from_arrow_fn(pt, z2, |_| ArrowId::new(0)).unwrap();
        let c = classify_morphism(&f);
        assert!(c.i_functor && c.faithful && !c.full);
    }
}
