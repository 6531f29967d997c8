//! Small groupoids up to isomorphism, and random samples from them.
//!
//! A finite groupoid is a disjoint union of transitive components, and a
//! transitive one on `n` objects with isotropy `H` is `H × pair(n)`, so the
//! families below are complete up to isomorphism.

use std::ops::ControlFlow;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::construct::{disjoint_union, from_group, pair_n, product, restrict};
use crate::group::GroupTable;
use crate::groupoid::{Groupoid, ObjectId};
use crate::morphisms::functor::Functor;
use crate::search::{for_each_functor, SearchOptions};

/// A transitive component `H × pair(n)`.
#[derive(Clone, Debug)]
pub struct Component {
    pub group_name: String,
    pub group: GroupTable,
    pub objects: usize,
}

impl Component {
    pub fn arrow_count(&self) -> usize {
        self.group.order() * self.objects * self.objects
    }

    pub fn name(&self) -> String {
        match (self.objects, self.group.order()) {
            (1, _) => self.group_name.clone(),
            (n, 1) => format!("pair{n}"),
            (n, _) => format!("{}×pair{n}", self.group_name),
        }
    }

    pub fn build(&self) -> Groupoid {
        let g = from_group(&self.group);
        if self.objects == 1 {
            g
        } else {
            product(&g, &pair_n(self.objects))
        }
    }
}

/// Every component with at most `max_objects` objects and `max_arrows`
/// arrows, ordered by object count then group.
pub fn components(max_objects: usize, max_arrows: usize) -> Vec<Component> {
    let groups = GroupTable::small_groups(max_arrows.min(8));
    let mut out = Vec::new();
    for n in 1..=max_objects {
        for (name, g) in &groups {
            let c = Component { group_name: name.clone(), group: g.clone(), objects: n };
            if c.arrow_count() <= max_arrows {
                out.push(c);
            }
        }
    }
    out
}

/// A named groupoid of a family.
#[derive(Clone, Debug)]
pub struct Sample {
    pub name: String,
    pub groupoid: Arc<Groupoid>,
}

fn assemble(parts: &[&Component]) -> Sample {
    let name = parts.iter().map(|c| c.name()).collect::<Vec<_>>().join("+");
    let mut g = parts[0].build();
    for c in &parts[1..] {
        g = disjoint_union(&g, &c.build());
    }
    Sample { name, groupoid: Arc::new(g) }
}

/// All nonempty groupoids with at most `max_objects` objects and
/// `max_arrows` arrows, one per isomorphism class.
pub fn groupoid_family(max_objects: usize, max_arrows: usize) -> Vec<Sample> {
    let comps = components(max_objects, max_arrows);
    let mut out = Vec::new();
    fn go<'a>(
        comps: &'a [Component],
        start: usize,
        objects: usize,
        arrows: usize,
        chosen: &mut Vec<&'a Component>,
        out: &mut Vec<Sample>,
    ) {
        if !chosen.is_empty() {
            out.push(assemble(chosen));
        }
        for i in start..comps.len() {
            let c = &comps[i];
            if c.objects <= objects && c.arrow_count() <= arrows {
                chosen.push(c);
                go(comps, i, objects - c.objects, arrows - c.arrow_count(), chosen, out);
                chosen.pop();
            }
        }
    }
    go(&comps, 0, max_objects, max_arrows, &mut Vec::new(), &mut out);
    out
}

/// The transitive groupoids `H × pair(n)` with `n ≤ max_objects` and
/// `|H| ≤ max_isotropy`.
pub fn transitive_family(max_objects: usize, max_isotropy: usize) -> Vec<Sample> {
    let mut out = Vec::new();
    for n in 1..=max_objects {
        for (name, g) in GroupTable::small_groups(max_isotropy) {
            let c = Component { group_name: name, group: g, objects: n };
            out.push(assemble(&[&c]));
        }
    }
    out
}

/// The same groupoid with its objects listed in the order `perm`.
pub fn permute_objects(g: &Groupoid, perm: &[ObjectId]) -> Groupoid {
    restrict(g, perm).0
}

/// A member of `groupoid_family(max_objects, max_arrows)` with its objects
/// shuffled.
pub fn random_groupoid<R: Rng + ?Sized>(rng: &mut R, max_objects: usize, max_arrows: usize) -> Sample {
    let family = groupoid_family(max_objects, max_arrows);
    let s = family.choose(rng).expect("family is nonempty");
    let mut perm: Vec<ObjectId> = s.groupoid.object_ids().collect();
    perm.shuffle(rng);
    Sample { name: s.name.clone(), groupoid: Arc::new(permute_objects(&s.groupoid, &perm)) }
}

/// A uniformly chosen functor `G → H`, if there is any.
pub fn random_functor<R: Rng + ?Sized>(rng: &mut R, g: &Arc<Groupoid>, h: &Arc<Groupoid>) -> Option<Functor> {
    let mut all = Vec::new();
    let _ = for_each_functor(g, h, SearchOptions::default(), &|_, _| true, &mut |f| {
        all.push(f);
        ControlFlow::Continue(())
    });
    all.choose(rng).cloned()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::search::isomorphic;

    #[test]
    fn families_are_valid_and_distinct() {
        let fam = groupoid_family(3, 8);
        for (i, a) in fam.iter().enumerate() {
            assert!(a.groupoid.axiom_violations().is_empty(), "{}", a.name);
            assert!(a.groupoid.object_count() <= 3 && a.groupoid.arrow_count() <= 8);
            for b in &fam[i + 1..] {
                assert!(!isomorphic(&a.groupoid, &b.groupoid), "{} ≅ {}", a.name, b.name);
            }
        }
        assert!(fam.iter().any(|s| s.name == "Z2+pair2"));
        assert_eq!(fam.len(), 65);
        assert_eq!(transitive_family(3, 4).len(), 15);
    }

    #[test]
    fn random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let s = random_groupoid(&mut rng, 3, 8);
            assert!(s.groupoid.axiom_violations().is_empty());
            let f = random_functor(&mut rng, &s.groupoid, &s.groupoid).unwrap();
            assert!(f.violations().is_empty());
        }
    }
}
