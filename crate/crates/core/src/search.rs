//! Backtracking search for functors and isomorphisms.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::functor::Functor;

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    pub injective_objects: bool,
    pub injective_arrows: bool,
}

struct ArrowSearch<'a> {
    g: &'a Groupoid,
    h: &'a Groupoid,
    obj: &'a [ObjectId],
    img: Vec<Option<ArrowId>>,
    used: Vec<bool>,
    trail: Vec<ArrowId>,
    injective: bool,
}

impl ArrowSearch<'_> {
    /// Assigns `a ↦ v` and closes under inverses and composites with every
    /// arrow already assigned. Returns false on a conflict.
    fn assign(&mut self, a: ArrowId, v: ArrowId) -> bool {
        let mut queue = vec![(a, v)];
        while let Some((a, v)) = queue.pop() {
            match self.img[a.index()] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {}
            }
            if self.injective && self.used[v.index()] {
                return false;
            }
            self.img[a.index()] = Some(v);
            self.used[v.index()] = true;
            self.trail.push(a);
            queue.push((self.g.inv(a), self.h.inv(v)));
            for &b in self.g.outgoing(self.g.tgt(a)) {
                if let Some(w) = self.img[b.index()] {
                    queue.push((self.g.mul(b, a), self.h.mul(w, v)));
                }
            }
            for &b in self.g.incoming(self.g.src(a)) {
                if let Some(w) = self.img[b.index()] {
                    queue.push((self.g.mul(a, b), self.h.mul(v, w)));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            let v = self.img[a.index()].take().unwrap();
            self.used[v.index()] = false;
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[ArrowId]) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(a) = (0..self.img.len()).find(|&i| self.img[i].is_none()).map(ArrowId::new) else {
            let map: Vec<ArrowId> = self.img.iter().map(|x| x.unwrap()).collect();
            return visit(&map);
        };
        let (s, t) = (self.obj[self.g.src(a).index()], self.obj[self.g.tgt(a).index()]);
        let candidates: Vec<ArrowId> = self.h.hom(s, t).collect();
        for v in candidates {
            let mark = self.trail.len();
            if self.assign(a, v) {
                self.run(visit)?;
            }
            self.undo(mark);
        }
        ControlFlow::Continue(())
    }
}

/// Visits every arrow map that extends `object_map` to a functor.
pub fn for_each_extension(
    g: &Groupoid,
    h: &Groupoid,
    object_map: &[ObjectId],
    injective_arrows: bool,
    visit: &mut dyn FnMut(&[ArrowId]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut s = ArrowSearch {
        g,
        h,
        obj: object_map,
        img: vec![None; g.arrow_count()],
        used: vec![false; h.arrow_count()],
        trail: Vec::new(),
        injective: injective_arrows,
    };
    for b in g.object_ids() {
        if !s.assign(g.unit(b), h.unit(object_map[b.index()])) {
            return ControlFlow::Continue(());
        }
    }
    s.run(visit)
}

/// Visits every functor `G → H` satisfying the options. `allowed(b, c)`
/// prunes object assignments.
pub fn for_each_functor(
    g: &Arc<Groupoid>,
    h: &Arc<Groupoid>,
    opts: SearchOptions,
    allowed: &dyn Fn(ObjectId, ObjectId) -> bool,
    visit: &mut dyn FnMut(Functor) -> ControlFlow<()>,
) -> ControlFlow<()> {
    fn objects(
        g: &Arc<Groupoid>,
        h: &Arc<Groupoid>,
        opts: SearchOptions,
        allowed: &dyn Fn(ObjectId, ObjectId) -> bool,
        obj: &mut Vec<ObjectId>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(Functor) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if obj.len() == g.object_count() {
            let snapshot = obj.clone();
            return for_each_extension(g, h, &snapshot, opts.injective_arrows, &mut |arrows| {
                visit(Functor::new_unchecked(g.clone(), h.clone(), snapshot.clone(), arrows.to_vec()))
            });
        }
        let b = ObjectId::new(obj.len());
        for c in h.object_ids() {
            if (opts.injective_objects && used[c.index()]) || !allowed(b, c) {
                continue;
            }
            used[c.index()] = true;
            obj.push(c);
            let flow = objects(g, h, opts, allowed, obj, used, visit);
            obj.pop();
            used[c.index()] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
    if opts.injective_objects && g.object_count() > h.object_count() {
        return ControlFlow::Continue(());
    }
    objects(g, h, opts, allowed, &mut Vec::new(), &mut vec![false; h.object_count()], visit)
}

pub fn all_functors(g: &Arc<Groupoid>, h: &Arc<Groupoid>) -> Vec<Functor> {
    let mut out = Vec::new();
    let _ = for_each_functor(g, h, SearchOptions::default(), &|_, _| true, &mut |f| {
        out.push(f);
        ControlFlow::Continue(())
    });
    out
}

/// Cheap per-object invariant used to prune isomorphism search.
fn signature(g: &Groupoid, b: ObjectId) -> (usize, usize) {
    (g.isotropy(b).len(), g.outgoing(b).len())
}

/// An isomorphism `G → H`, if one exists.
pub fn find_isomorphism(g: &Arc<Groupoid>, h: &Arc<Groupoid>) -> Option<Functor> {
    if g.object_count() != h.object_count() || g.arrow_count() != h.arrow_count() {
        return None;
    }
    let sg: Vec<_> = g.object_ids().map(|b| signature(g, b)).collect();
    let sh: Vec<_> = h.object_ids().map(|b| signature(h, b)).collect();
    let mut a = sg.clone();
    let mut b = sh.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let opts = SearchOptions { injective_objects: true, injective_arrows: true };
    let mut found = None;
    let _ = for_each_functor(
        g,
        h,
        opts,
        &|x, y| sg[x.index()] == sh[y.index()],
        &mut |f| {
            found = Some(f);
            ControlFlow::Break(())
        },
    );
    found
}

pub fn isomorphic(g: &Arc<Groupoid>, h: &Arc<Groupoid>) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Whether the isotropy groups at `a ∈ G` and `b ∈ H` are isomorphic.
pub fn isotropy_isomorphic(g: &Groupoid, a: ObjectId, h: &Groupoid, b: ObjectId) -> bool {
    let ga = Arc::new(crate::construct::restrict(g, &[a]).0);
    let hb = Arc::new(crate::construct::restrict(h, &[b]).0);
    isomorphic(&ga, &hb)
}
