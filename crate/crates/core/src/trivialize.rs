//! Trivialization of transitive groupoids, transitive components, gauge
//! groupoids.

use std::sync::Arc;

use crate::actions::ActionLaw;
use crate::anchor::{disconnected_pair, orbits};
use crate::construct::{pair, product, restrict};
use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::functor::Functor;
use crate::morphisms::quotient::{quotient_by_partition, UnionFind};

/// An explicit isomorphism `G ≅ isotropy(e) × pair(objects)`.
#[derive(Clone, Debug)]
pub struct Trivialization {
    pub base_point: ObjectId,
    /// Arrows with source `e`.
    pub fiber: Vec<ArrowId>,
    /// For each object `b`, an arrow `e → b`.
    pub section: Vec<ArrowId>,
    pub trivial: Arc<Groupoid>,
    pub iso: Functor,
    pub inverse: Functor,
}

/// The default section: for each `b`, the arrow `e → b` with the smallest
/// label.
pub fn default_section(g: &Groupoid, e: ObjectId) -> Vec<Option<ArrowId>> {
    let mut section: Vec<Option<ArrowId>> = vec![None; g.object_count()];
    for &a in g.outgoing(e) {
        let slot = &mut section[g.tgt(a).index()];
        if slot.is_none_or(|s| g.arrow_label(a) < g.arrow_label(s)) {
            *slot = Some(a);
        }
    }
    section
}

pub fn trivialize(g: &Arc<Groupoid>, e: ObjectId, section: Option<&[ArrowId]>) -> Result<Trivialization> {
    if let Some((a, b)) = disconnected_pair(g) {
        return Err(Error::NotTransitive {
            from: g.object_label(a).into(),
            to: g.object_label(b).into(),
        });
    }
    let n = g.object_count();
    let eta: Vec<ArrowId> = match section {
        Some(s) => {
            if s.len() != n {
                return Err(Error::Precondition("section has the wrong length".into()));
            }
            for (b, &a) in s.iter().enumerate() {
                if g.src(a) != e || g.tgt(a).index() != b {
                    return Err(Error::Precondition(format!(
                        "section arrow {} is not an arrow from {} to {}",
                        g.arrow_label(a),
                        g.object_label(e),
                        g.object_label(ObjectId::new(b))
                    )));
                }
            }
            s.to_vec()
        }
        None => default_section(g, e).into_iter().map(|a| a.expect("transitive")).collect(),
    };
    let (iso_group, kept) = restrict(g, &[e]);
    let mut group_id = vec![ArrowId::new(0); g.arrow_count()];
    for (i, &a) in kept.iter().enumerate() {
        group_id[a.index()] = ArrowId::new(i);
    }
    let trivial = Arc::new(product(&iso_group, &pair(g.object_labels())));
    let nn = n * n;
    // product indices: object (0, b) = b; arrow (k, (i,j)) = k·n² + i·n + j
    let iso = Functor::new(
        g.clone(),
        trivial.clone(),
        g.object_ids().collect(),
        g.arrow_ids()
            .map(|a| {
                let (s, t) = (g.src(a), g.tgt(a));
                let k = g.mul(g.inv(eta[t.index()]), g.mul(a, eta[s.index()]));
                ArrowId::new(group_id[k.index()].index() * nn + t.index() * n + s.index())
            })
            .collect(),
    )?;
    let inverse = Functor::new(
        trivial.clone(),
        g.clone(),
        g.object_ids().collect(),
        trivial
            .arrow_ids()
            .map(|z| {
                let (k, ij) = (kept[z.index() / nn], z.index() % nn);
                let (i, j) = (ij / n, ij % n);
                g.mul(eta[i], g.mul(k, g.inv(eta[j])))
            })
            .collect(),
    )?;
    Ok(Trivialization { base_point: e, fiber: g.outgoing(e).to_vec(), section: eta, trivial, iso, inverse })
}

/// The orbits of `G` with the full subgroupoid on each.
pub fn transitive_components(g: &Groupoid) -> Vec<(Vec<ObjectId>, Arc<Groupoid>)> {
    let (orbits, _) = orbits(g);
    orbits
        .into_iter()
        .map(|o| {
            let sub = Arc::new(restrict(g, &o).0);
            (o, sub)
        })
        .collect()
}

/// The gauge groupoid `(E × E) / G` of a group `G` acting freely on a set
/// `E` and transitively on each fibre of `π: E → B`. Returns it with the
/// quotient functor from `pair(E)`.
pub fn gauge_groupoid<S: AsRef<str>>(
    action: &ActionLaw,
    base: &[S],
    pi: &[usize],
) -> Result<(Arc<Groupoid>, Functor)> {
    let grp = action.groupoid();
    if grp.object_count() != 1 {
        return Err(Error::Precondition("gauge groupoid needs a group action".into()));
    }
    let space = action.space();
    let n = space.len();
    if pi.len() != n || pi.iter().any(|&b| b >= base.len()) {
        return Err(Error::Precondition("fibration map has the wrong shape".into()));
    }
    if let Some(b) = (0..base.len()).find(|b| !pi.contains(b)) {
        return Err(Error::Precondition(format!("fibration misses base point {}", base[b].as_ref())));
    }
    for g in grp.arrow_ids() {
        for x in 0..n {
            let y = action.act(g, x).unwrap();
            if pi[y] != pi[x] {
                return Err(Error::InvalidAction(format!(
                    "{} moves {} to another fibre",
                    grp.arrow_label(g),
                    space[x]
                )));
            }
            if y == x && !grp.is_unit(g) {
                return Err(Error::InvalidAction(format!(
                    "action is not free: {} fixes {}",
                    grp.arrow_label(g),
                    space[x]
                )));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if pi[x] == pi[y] && !grp.arrow_ids().any(|g| action.act(g, x) == Some(y)) {
                return Err(Error::InvalidAction(format!(
                    "action is not transitive on the fibre of {}: no element maps {} to {}",
                    base[pi[x]].as_ref(),
                    space[x],
                    space[y]
                )));
            }
        }
    }
    let pe = Arc::new(pair(space));
    let mut uf = UnionFind::new(pe.arrow_count());
    for g in grp.arrow_ids() {
        for y in 0..n {
            for x in 0..n {
                let (gy, gx) = (action.act(g, y).unwrap(), action.act(g, x).unwrap());
                uf.union(y * n + x, gy * n + gx);
            }
        }
    }
    let (arr_class, arr_reps) = uf.classes();
    let base_labels: Vec<String> = base.iter().map(|s| s.as_ref().to_string()).collect();
    quotient_by_partition(&pe, pi, base_labels, &arr_class, &arr_reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;
    use crate::search::isomorphic;

    #[test]
    fn counting_law_examples() {
        let p = Arc::new(pair(&["1", "2", "3"]));
        let t = trivialize(&p, ObjectId::new(0), None).unwrap();
        assert_eq!(t.trivial.arrow_count(), 9);
        let id = t.inverse.after(&t.iso).unwrap();
        assert_eq!(id, Functor::identity(p.clone()));

        let prod = Arc::new(product(&from_group(&GroupTable::cyclic(2)), &pair(&["1", "2", "3"])));
        let t = trivialize(&prod, ObjectId::new(0), None).unwrap();
        assert_eq!(prod.arrow_count(), t.fiber.len() * 3);
        assert_eq!(t.iso.after(&t.inverse).unwrap(), Functor::identity(t.trivial.clone()));

        let nl = Arc::new(null(&["a", "b"]));
        assert!(matches!(trivialize(&nl, ObjectId::new(0), None), Err(Error::NotTransitive { .. })));
    }

    #[test]
    fn components() {
        let du = disjoint_union(&from_group(&GroupTable::cyclic(3)), &pair(&["x", "y"]));
        let c = transitive_components(&du);
        assert_eq!(c.iter().map(|(_, g)| g.arrow_count()).collect::<Vec<_>>(), [3, 4]);
        assert_eq!(transitive_components(&null(&["a", "b", "c"])).len(), 3);
    }

    #[test]
    fn gauge_of_free_z2_action() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let space: Vec<String> = (0..6).map(|i| format!("e{i}")).collect();
        let act = ActionLaw::new(z2, space, vec![ObjectId::new(0); 6], |g, x| x ^ g.index()).unwrap();
        let pi: Vec<usize> = (0..6).map(|x| x / 2).collect();
        let (gauge, _) = gauge_groupoid(&act, &["b0", "b1", "b2"], &pi).unwrap();
        assert_eq!(gauge.arrow_count(), 18);
        let expected = Arc::new(product(&from_group(&GroupTable::cyclic(2)), &pair_n(3)));
        assert!(isomorphic(&gauge, &expected));

        let triv = Arc::new(from_group(&GroupTable::trivial()));
        let act = ActionLaw::new(triv.clone(), vec!["x".into()], vec![ObjectId::new(0)], |_, x| x).unwrap();
        let (gauge, _) = gauge_groupoid(&act, &["x"], &[0]).unwrap();
        assert_eq!(gauge.arrow_count(), 1);

        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let fixed = ActionLaw::new(z2, vec!["a".into()], vec![ObjectId::new(0)], |_, x| x).unwrap();
        assert!(gauge_groupoid(&fixed, &["a"], &[0]).is_err());
    }
}
