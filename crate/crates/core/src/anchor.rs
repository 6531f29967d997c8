//! The anchor map `g ↦ (tgt g, src g)`, orbits, isotropy, degeneracies.

use std::collections::HashSet;
use std::fmt;

use crate::groupoid::{ArrowId, Groupoid, ObjectId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorAnalysis {
    pub anchor: Vec<(ObjectId, ObjectId)>,
    /// `orbit_graph[a][b]` iff some arrow goes from `b` to `a`.
    pub orbit_graph: Vec<Vec<bool>>,
    pub isotropy: Vec<Vec<ArrowId>>,
    /// Orbits ordered by their smallest object; objects sorted inside.
    pub orbits: Vec<Vec<ObjectId>>,
    pub orbit_of: Vec<usize>,
}

impl AnchorAnalysis {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }
}

/// Orbit partition by union-find over the anchor image.
pub fn orbits(g: &Groupoid) -> (Vec<Vec<ObjectId>>, Vec<usize>) {
    let n = g.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in g.arrow_ids() {
        let (s, t) = (find(&mut parent, g.src(a).index()), find(&mut parent, g.tgt(a).index()));
        if s != t {
            let (lo, hi) = if s < t { (s, t) } else { (t, s) };
            parent[hi] = lo;
        }
    }
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<ObjectId>> = Vec::new();
    let mut root_orbit = vec![usize::MAX; n];
    for b in 0..n {
        let r = find(&mut parent, b);
        if root_orbit[r] == usize::MAX {
            root_orbit[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbit_of[b] = root_orbit[r];
        orbits[root_orbit[r]].push(ObjectId::new(b));
    }
    (orbits, orbit_of)
}

pub fn analyze_anchor(g: &Groupoid) -> AnchorAnalysis {
    let n = g.object_count();
    let anchor: Vec<_> = g.arrow_ids().map(|a| g.anchor(a)).collect();
    let mut orbit_graph = vec![vec![false; n]; n];
    for &(t, s) in &anchor {
        orbit_graph[t.index()][s.index()] = true;
    }
    let isotropy = g.object_ids().map(|b| g.isotropy(b)).collect();
    let (orbits, orbit_of) = orbits(g);
    AnchorAnalysis { anchor, orbit_graph, isotropy, orbits, orbit_of }
}

/// Degeneracy labels read off the anchor and unit maps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Degeneracies {
    pub transitive: bool,
    pub principal: bool,
    pub banal: bool,
    pub plurigroup: bool,
    pub null: bool,
}

impl Degeneracies {
    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (on, name) in [
            (self.transitive, "transitive"),
            (self.principal, "principal"),
            (self.banal, "banal"),
            (self.plurigroup, "plurigroup"),
            (self.null, "null"),
        ] {
            if on {
                out.push(name);
            }
        }
        out
    }
}

impl fmt::Display for Degeneracies {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(", "))
    }
}

pub fn classify(g: &Groupoid) -> Degeneracies {
    let n = g.object_count();
    let image: HashSet<(ObjectId, ObjectId)> = g.arrow_ids().map(|a| g.anchor(a)).collect();
    let transitive = image.len() == n * n;
    let principal = image.len() == g.arrow_count();
    let plurigroup = g.arrow_ids().all(|a| g.src(a) == g.tgt(a));
    // the unit map is always injective, so bijective means every arrow is a unit
    let null = g.arrow_count() == n;
    Degeneracies { transitive, principal, banal: transitive && principal, plurigroup, null }
}

/// Finds an ordered pair of objects not joined by any arrow, if any.
pub fn disconnected_pair(g: &Groupoid) -> Option<(ObjectId, ObjectId)> {
    let (_, orbit_of) = orbits(g);
    for a in g.object_ids() {
        for b in g.object_ids() {
            if orbit_of[a.index()] != orbit_of[b.index()] {
                return Some((a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;

    #[test]
    fn classification_examples() {
        let p = classify(&pair(&["1", "2"]));
        assert_eq!(p.labels(), ["transitive", "principal", "banal"]);
        let z2 = classify(&from_group(&GroupTable::cyclic(2)));
        assert_eq!(z2.labels(), ["transitive", "plurigroup"]);
        let rel = [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "a")];
        let e = classify(&from_equivalence(&["a", "b", "c"], &rel).unwrap());
        assert_eq!(e.labels(), ["principal"]);
        let nl = classify(&null(&["a", "b"]));
        assert_eq!(nl.labels(), ["principal", "plurigroup", "null"]);
    }

    #[test]
    fn orbit_examples() {
        let du = disjoint_union(&from_group(&GroupTable::cyclic(3)), &pair(&["x", "y"]));
        let an = analyze_anchor(&du);
        assert_eq!(an.orbit_count(), 2);
        assert_eq!(an.isotropy[0].len(), 3);
        assert_eq!(an.isotropy[1].len(), 1);
        let nl = analyze_anchor(&null(&["a", "b"]));
        assert_eq!(nl.orbit_count(), 2);
        assert_eq!(nl.orbit_graph, vec![vec![true, false], vec![false, true]]);
    }
}
