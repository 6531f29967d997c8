use std::ops::ControlFlow;

use crate::anchor::orbits;
use crate::groupoid::{ArrowId, ObjectId};
use crate::morphisms::functor::{same_groupoid, Functor};

/// A natural isomorphism `g ⇒ f`: `component[b]` goes from `g(b)` to `f(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTransformation {
    pub component: Vec<ArrowId>,
}

impl NaturalTransformation {
    /// Checks endpoints and every naturality square
    /// `f(h) ∘ θ_b = θ_b' ∘ g(h)`.
    pub fn is_natural(&self, f: &Functor, g: &Functor) -> bool {
        let (h, t) = (f.source(), f.target());
        if self.component.len() != h.object_count() {
            return false;
        }
        let ends_ok = h.object_ids().all(|b| {
            let c = self.component[b.index()];
            t.src(c) == g.obj(b) && t.tgt(c) == f.obj(b)
        });
        ends_ok
            && h.arrow_ids().all(|a| {
                let (b0, b1) = (h.src(a), h.tgt(a));
                t.mul(f.arr(a), self.component[b0.index()]) == t.mul(self.component[b1.index()], g.arr(a))
            })
    }
}

/// Searches for a natural isomorphism `g ⇒ f` between parallel functors.
pub fn natural_iso(f: &Functor, g: &Functor) -> Option<NaturalTransformation> {
    let mut found = None;
    let _ = for_each_natural_iso(f, g, &mut |t| {
        found = Some(t.clone());
        ControlFlow::Break(())
    });
    found
}

/// Every natural isomorphism `g ⇒ f`.
pub fn all_natural_isos(f: &Functor, g: &Functor) -> Vec<NaturalTransformation> {
    let mut out = Vec::new();
    let _ = for_each_natural_iso(f, g, &mut |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Visits the natural isomorphisms `g ⇒ f`.
///
/// On each connected component the whole transformation is determined by
/// its value at one root object, so only those choices are tried.
pub fn for_each_natural_iso(
    f: &Functor,
    g: &Functor,
    visit: &mut dyn FnMut(&NaturalTransformation) -> ControlFlow<()>,
) -> ControlFlow<()> {
    assert!(
        same_groupoid(f.source(), g.source()) && same_groupoid(f.target(), g.target()),
        "natural isomorphisms need parallel functors"
    );
    let (h, t) = (f.source(), f.target());
    let (components, _) = orbits(h);
    // per component, every valid choice of components
    let mut choices: Vec<Vec<Vec<ArrowId>>> = Vec::new();
    for comp in &components {
        let root = comp[0];
        // one connecting arrow root -> b for every b of the component
        let path: Vec<ArrowId> = comp
            .iter()
            .map(|&b| if b == root { h.unit(root) } else { h.hom(root, b).next().expect("component is connected") })
            .collect();
        let mut valid = Vec::new();
        for c in t.hom(g.obj(root), f.obj(root)) {
            // θ_b = f(p) θ_root g(p)⁻¹
            let theta: Vec<ArrowId> =
                path.iter().map(|&p| t.mul(t.mul(f.arr(p), c), t.inv(g.arr(p)))).collect();
            let pos = |b: ObjectId| comp.iter().position(|&x| x == b).expect("same component");
            let natural = comp.iter().enumerate().all(|(i, &b)| {
                h.outgoing(b)
                    .iter()
                    .all(|&a| t.mul(f.arr(a), theta[i]) == t.mul(theta[pos(h.tgt(a))], g.arr(a)))
            });
            if natural {
                valid.push(theta);
            }
        }
        if valid.is_empty() {
            return ControlFlow::Continue(());
        }
        choices.push(valid);
    }
    let mut pick = vec![0; components.len()];
    loop {
        let mut component = vec![ArrowId::new(0); h.object_count()];
        for (ci, comp) in components.iter().enumerate() {
            for (i, &b) in comp.iter().enumerate() {
                component[b.index()] = choices[ci][pick[ci]][i];
            }
        }
        visit(&NaturalTransformation { component })?;
        let mut i = 0;
        loop {
            if i == pick.len() {
                return ControlFlow::Continue(());
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Whether two parallel functors agree on objects and arrows.
pub fn equal_maps(f: &Functor, g: &Functor) -> bool {
    f.object_map() == g.object_map() && f.arrow_map() == g.arrow_map()
}

/// The identity transformation of `f`.
pub fn identity_transformation(f: &Functor) -> NaturalTransformation {
    NaturalTransformation {
        component: f.source().object_ids().map(|b: ObjectId| f.target().unit(f.obj(b))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;

    #[test]
    fn conjugate_homomorphisms_into_s3() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let s3g = GroupTable::symmetric(3);
        let s3 = Arc::new(from_group(&s3g));
        let t01 = s3.arrow("102").unwrap();
        let t12 = s3.arrow("021").unwrap();
        let id = s3.arrow("012").unwrap();
        let f = Functor::from_arrow_fn(z2.clone(), s3.clone(), |a| if a.index() == 0 { id } else { t01 }).unwrap();
        let g = Functor::from_arrow_fn(z2, s3, |a| if a.index() == 0 { id } else { t12 }).unwrap();
        let theta = natural_iso(&f, &g).expect("conjugate");
        assert!(theta.is_natural(&f, &g));
        assert_eq!(natural_iso(&f, &f), Some(natural_iso(&f, &f).unwrap()));
        assert!(identity_transformation(&f).is_natural(&f, &f));
    }

    #[test]
    fn non_conjugate() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let id = Functor::identity(z2.clone());
        let triv = Functor::from_arrow_fn(z2.clone(), z2, |_| ArrowId::new(0)).unwrap();
        assert!(natural_iso(&id, &triv).is_none());
        // conjugation by the two elements of Z2 both fix the identity
        assert_eq!(all_natural_isos(&id, &id).len(), 2);
    }
}
