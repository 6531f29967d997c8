//! Actions of groupoids on fibred sets and the actor correspondence.

use std::sync::Arc;

use crate::construct::opposite;
use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::classify::a_square;
use crate::morphisms::functor::Functor;

const UNDEFINED: usize = usize::MAX;

/// A left action of a groupoid on a set `E` fibred over its objects by `p`.
/// `act(g, x)` is defined iff `src(g) == p(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionLaw {
    groupoid: Arc<Groupoid>,
    space: Vec<String>,
    projection: Vec<ObjectId>,
    table: Vec<usize>,
}

impl ActionLaw {
    /// Validates the action laws. `act` is called only on defined pairs.
    pub fn new(
        groupoid: Arc<Groupoid>,
        space: Vec<String>,
        projection: Vec<ObjectId>,
        act: impl Fn(ArrowId, usize) -> usize,
    ) -> Result<ActionLaw> {
        let n = space.len();
        if projection.len() != n {
            return Err(Error::InvalidAction("projection has the wrong length".into()));
        }
        let g = &groupoid;
        let mut table = vec![UNDEFINED; g.arrow_count() * n];
        for a in g.arrow_ids() {
            for x in 0..n {
                if g.src(a) == projection[x] {
                    let y = act(a, x);
                    if y >= n {
                        return Err(Error::InvalidAction(format!(
                            "{} acting on {} leaves the space",
                            g.arrow_label(a),
                            space[x]
                        )));
                    }
                    table[a.index() * n + x] = y;
                }
            }
        }
        let law = ActionLaw { groupoid, space, projection, table };
        law.check()?;
        Ok(law)
    }

    /// Builds an action from labelled triples `(g, x, g ⊢ x)` and the
    /// projection given as `(point, object)` pairs.
    pub fn from_labels<S: AsRef<str>>(
        groupoid: Arc<Groupoid>,
        fibration: &[(S, S)],
        act: &[(S, S, S)],
    ) -> Result<ActionLaw> {
        let space: Vec<String> = fibration.iter().map(|(x, _)| x.as_ref().to_string()).collect();
        let point = |x: &str| {
            space
                .iter()
                .position(|s| s == x)
                .ok_or_else(|| Error::InvalidAction(format!("unknown point {x}")))
        };
        let projection = fibration
            .iter()
            .map(|(_, b)| groupoid.object(b.as_ref()).ok_or_else(|| Error::UnknownObject(b.as_ref().into())))
            .collect::<Result<Vec<_>>>()?;
        let n = space.len();
        let mut table = vec![UNDEFINED; groupoid.arrow_count() * n];
        for (g, x, y) in act {
            let a = groupoid.arrow(g.as_ref()).ok_or_else(|| Error::UnknownArrow(g.as_ref().into()))?;
            let (x, y) = (point(x.as_ref())?, point(y.as_ref())?);
            table[a.index() * n + x] = y;
        }
        for a in groupoid.arrow_ids() {
            for x in 0..n {
                if groupoid.src(a) == projection[x] && table[a.index() * n + x] == UNDEFINED {
                    return Err(Error::InvalidAction(format!(
                        "action of {} on {} is missing",
                        groupoid.arrow_label(a),
                        space[x]
                    )));
                }
            }
        }
        ActionLaw::new(groupoid, space, projection, |a, x| table[a.index() * n + x])
    }

    fn check(&self) -> Result<()> {
        let g = &*self.groupoid;
        let n = self.space.len();
        for x in 0..n {
            if self.act(g.unit(self.projection[x]), x) != Some(x) {
                return Err(Error::InvalidAction(format!("unit law fails at {}", self.space[x])));
            }
        }
        for a in g.arrow_ids() {
            for x in 0..n {
                let Some(y) = self.act(a, x) else { continue };
                if self.projection[y] != g.tgt(a) {
                    return Err(Error::InvalidAction(format!(
                        "{} ⊢ {} does not lie over the target",
                        g.arrow_label(a),
                        self.space[x]
                    )));
                }
            }
        }
        for (a, b) in g.composable_pairs() {
            for x in 0..n {
                let Some(y) = self.act(b, x) else { continue };
                if self.act(a, y) != self.act(g.mul(a, b), x) {
                    return Err(Error::InvalidAction(format!(
                        "composition law fails at ({}, {}, {})",
                        g.arrow_label(a),
                        g.arrow_label(b),
                        self.space[x]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn groupoid(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn space(&self) -> &[String] {
        &self.space
    }

    pub fn projection(&self) -> &[ObjectId] {
        &self.projection
    }

    pub fn act(&self, g: ArrowId, x: usize) -> Option<usize> {
        let y = self.table[g.index() * self.space.len() + x];
        (y != UNDEFINED).then_some(y)
    }

    /// All defined triples `(g, x, g ⊢ x)` in a fixed order.
    pub fn triples(&self) -> Vec<(ArrowId, usize, usize)> {
        let mut out = Vec::new();
        for g in self.groupoid.arrow_ids() {
            for x in 0..self.space.len() {
                if let Some(y) = self.act(g, x) {
                    out.push((g, x, y));
                }
            }
        }
        out
    }

    /// The bijection `p⁻¹(src g) → p⁻¹(tgt g)` induced by `g`, as pairs.
    pub fn fibre_bijection(&self, g: ArrowId) -> Vec<(usize, usize)> {
        (0..self.space.len()).filter_map(|x| self.act(g, x).map(|y| (x, y))).collect()
    }
}

/// The action groupoid `G ⋉ E` with arrows `(g, x)` from `x` to `g ⊢ x`,
/// and its actor to `G`.
pub fn action_to_actor(a: &ActionLaw) -> (Arc<Groupoid>, Functor) {
    let g = &a.groupoid;
    let n = a.space.len();
    let mut pairs = Vec::new();
    let mut index = vec![UNDEFINED; g.arrow_count() * n];
    for x in 0..n {
        for &h in g.outgoing(a.projection[x]) {
            index[h.index() * n + x] = pairs.len();
            pairs.push((h, x));
        }
    }
    let id = |h: ArrowId, x: usize| ArrowId::new(index[h.index() * n + x]);
    let arrows = pairs
        .iter()
        .map(|&(h, x)| format!("({},{})", g.arrow_label(h), a.space[x]))
        .collect();
    let src = pairs.iter().map(|&(_, x)| ObjectId::new(x)).collect();
    let tgt = pairs.iter().map(|&(h, x)| ObjectId::new(a.act(h, x).unwrap())).collect();
    let unit = (0..n).map(|x| id(g.unit(a.projection[x]), x)).collect();
    let inv = pairs.iter().map(|&(h, x)| id(g.inv(h), a.act(h, x).unwrap())).collect();
    let action = Arc::new(Groupoid::assemble(a.space.clone(), arrows, src, tgt, unit, inv, |u, v| {
        let ((h2, _), (h1, x)) = (pairs[u.index()], pairs[v.index()]);
        id(g.mul(h2, h1), x)
    }));
    let actor = Functor::new_unchecked(
        action.clone(),
        g.clone(),
        a.projection.clone(),
        pairs.iter().map(|&(h, _)| h).collect(),
    );
    (action, actor)
}

/// The action law described by an actor: `g ⊢ e = tgt(h)` for the unique
/// `h` with `src(h) = e` and `f(h) = g`.
pub fn actor_to_action(f: &Functor) -> Result<ActionLaw> {
    if !a_square(f).bijective() {
        return Err(Error::Precondition("functor is not an actor".into()));
    }
    let (h, g) = (f.source(), f.target());
    let n = h.object_count();
    let mut table = vec![UNDEFINED; g.arrow_count() * n];
    for a in h.arrow_ids() {
        table[f.arr(a).index() * n + h.src(a).index()] = h.tgt(a).index();
    }
    ActionLaw::new(
        g.clone(),
        h.object_labels().to_vec(),
        f.object_map().to_vec(),
        |x, e| table[x.index() * n + e],
    )
}

/// The isomorphism `h ↦ (f h, src h)` from the source of an actor onto the
/// action groupoid of the action it describes.
pub fn actor_comparison(f: &Functor) -> Result<(ActionLaw, Functor)> {
    let law = actor_to_action(f)?;
    let (action, _) = action_to_actor(&law);
    let h = f.source();
    let n = h.object_count();
    let mut index = vec![UNDEFINED; f.target().arrow_count() * n];
    // the action groupoid lists, for each point x, the arrows leaving p(x)
    let g = f.target();
    let mut next = 0;
    for x in 0..n {
        for &ga in g.outgoing(law.projection[x]) {
            index[ga.index() * n + x] = next;
            next += 1;
        }
    }
    let iso = Functor::new(
        h.clone(),
        action,
        h.object_ids().collect(),
        h.arrow_ids().map(|a| ArrowId::new(index[f.arr(a).index() * n + h.src(a).index()])).collect(),
    )?;
    Ok((law, iso))
}

/// A non-unit arrow fixing a point, if the action is not free.
pub fn free_witness(a: &ActionLaw) -> Option<(ArrowId, usize)> {
    let g = &a.groupoid;
    g.arrow_ids()
        .filter(|&h| !g.is_unit(h))
        .flat_map(|h| (0..a.space.len()).map(move |x| (h, x)))
        .find(|&(h, x)| a.act(h, x) == Some(x))
}

/// Free actions are exactly those whose action groupoid is principal.
pub fn is_principal_action(a: &ActionLaw) -> bool {
    free_witness(a).is_none()
}

/// The principal groupoid of the relation "same key": arrows `(y,x)` for
/// `key[y] == key[x]`, going from `x` to `y`. Returns the groupoid and the
/// pair behind every arrow.
pub(crate) fn relation_groupoid(labels: &[String], key: &[usize]) -> (Arc<Groupoid>, Vec<(usize, usize)>) {
    let n = labels.len();
    let mut pairs = Vec::new();
    let mut index = vec![UNDEFINED; n * n];
    for y in 0..n {
        for x in 0..n {
            if key[y] == key[x] {
                index[y * n + x] = pairs.len();
                pairs.push((y, x));
            }
        }
    }
    let id = |y: usize, x: usize| ArrowId::new(index[y * n + x]);
    let g = Groupoid::assemble(
        labels.to_vec(),
        pairs.iter().map(|&(y, x)| format!("({},{})", labels[y], labels[x])).collect(),
        pairs.iter().map(|&(_, x)| ObjectId::new(x)).collect(),
        pairs.iter().map(|&(y, _)| ObjectId::new(y)).collect(),
        (0..n).map(|x| id(x, x)).collect(),
        pairs.iter().map(|&(y, x)| id(x, y)).collect(),
        |u, v| id(pairs[u.index()].0, pairs[v.index()].1),
    );
    (Arc::new(g), pairs)
}

/// `ΔG`: pairs of arrows with a common source, over the objects `G`.
pub fn delta_groupoid(g: &Groupoid) -> (Arc<Groupoid>, Vec<(usize, usize)>) {
    let key: Vec<usize> = g.arrow_ids().map(|a| g.src(a).index()).collect();
    relation_groupoid(g.arrow_labels(), &key)
}

/// `∇G`: pairs of arrows with a common target.
pub fn nabla_groupoid(g: &Groupoid) -> (Arc<Groupoid>, Vec<(usize, usize)>) {
    let key: Vec<usize> = g.arrow_ids().map(|a| g.tgt(a).index()).collect();
    relation_groupoid(g.arrow_labels(), &key)
}

/// Which of the four canonical translation actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Translation {
    /// `δ_G(y,x) = yx⁻¹`, left action `gx`.
    Delta,
    /// `δ̄_G(y,x) = y⁻¹x`, left action `xg⁻¹`.
    DeltaBar,
    /// `xy⁻¹` into `G^op`, right action `g⁻¹x`.
    DeltaSym,
    /// `x⁻¹y` into `G^op`, right action `xg`.
    DeltaBarSym,
}

impl Translation {
    pub const ALL: [Translation; 4] =
        [Translation::Delta, Translation::DeltaBar, Translation::DeltaSym, Translation::DeltaBarSym];

    pub fn actor_name(self) -> &'static str {
        match self {
            Translation::Delta => "δ_G",
            Translation::DeltaBar => "δ̄_G",
            Translation::DeltaSym => "(δ_G)^ς",
            Translation::DeltaBarSym => "(δ̄_G)^ς",
        }
    }

    pub fn actor_formula(self) -> &'static str {
        match self {
            Translation::Delta => "yx⁻¹",
            Translation::DeltaBar => "y⁻¹x",
            Translation::DeltaSym => "xy⁻¹",
            Translation::DeltaBarSym => "x⁻¹y",
        }
    }

    pub fn action_formula(self) -> &'static str {
        match self {
            Translation::Delta => "gx",
            Translation::DeltaBar => "xg⁻¹",
            Translation::DeltaSym => "g⁻¹x",
            Translation::DeltaBarSym => "xg",
        }
    }

    /// Left actions of `G`, or right actions (left actions of `G^op`).
    pub fn is_right(self) -> bool {
        matches!(self, Translation::DeltaSym | Translation::DeltaBarSym)
    }

    /// The action formula evaluated with the multiplication of `G`.
    pub fn apply(self, g: &Groupoid, a: ArrowId, x: ArrowId) -> Option<ArrowId> {
        match self {
            Translation::Delta => g.compose(a, x),
            Translation::DeltaBar => g.compose(x, g.inv(a)),
            Translation::DeltaSym => g.compose(g.inv(a), x),
            Translation::DeltaBarSym => g.compose(x, a),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalAction {
    pub kind: Translation,
    /// `ΔG` or `∇G`.
    pub source: Arc<Groupoid>,
    /// Into `G`, or into `G^op` for the right actions.
    pub actor: Functor,
    pub action: ActionLaw,
}

impl CanonicalAction {
    /// Compares the action table with the formula of its row, using the
    /// multiplication of `G`.
    pub fn matches_formula(&self, g: &Groupoid) -> bool {
        let law = &self.action;
        let n = law.space.len();
        g.arrow_ids().all(|a| {
            (0..n).all(|x| law.act(a, x).map(ArrowId::new) == self.kind.apply(g, a, ArrowId::new(x)))
        })
    }
}

/// The four canonical actors of `G` and the actions they describe.
pub fn canonical_actions(g: &Arc<Groupoid>) -> Result<Vec<CanonicalAction>> {
    let op = Arc::new(opposite(g));
    let (delta, dpairs) = delta_groupoid(g);
    let (nabla, npairs) = nabla_groupoid(g);
    let arrow = |i: usize| ArrowId::new(i);
    let mut out = Vec::new();
    for kind in Translation::ALL {
        let (source, pairs) = match kind {
            Translation::Delta | Translation::DeltaSym => (&delta, &dpairs),
            _ => (&nabla, &npairs),
        };
        let target = if kind.is_right() { &op } else { g };
        let value = |&(y, x): &(usize, usize)| {
            let (y, x) = (arrow(y), arrow(x));
            match kind {
                Translation::Delta => g.mul(y, g.inv(x)),
                Translation::DeltaBar => g.mul(g.inv(y), x),
                Translation::DeltaSym => g.mul(x, g.inv(y)),
                Translation::DeltaBarSym => g.mul(g.inv(x), y),
            }
        };
        let objects = g
            .arrow_ids()
            .map(|x| match kind {
                Translation::Delta | Translation::DeltaSym => g.tgt(x),
                _ => g.src(x),
            })
            .collect();
        let actor = Functor::new(source.clone(), target.clone(), objects, pairs.iter().map(value).collect())?;
        let action = actor_to_action(&actor)?;
        out.push(CanonicalAction { kind, source: source.clone(), actor, action });
    }
    Ok(out)
}

/// `Δ(ς): ΔG → ∇G, (y,x) ↦ (y⁻¹,x⁻¹)`.
pub fn sym_functor(g: &Groupoid) -> Functor {
    let (delta, dpairs) = delta_groupoid(g);
    let (nabla, npairs) = nabla_groupoid(g);
    let n = g.arrow_count();
    let mut index = vec![UNDEFINED; n * n];
    for (k, &(y, x)) in npairs.iter().enumerate() {
        index[y * n + x] = k;
    }
    let inv = |i: usize| g.inv(ArrowId::new(i)).index();
    Functor::new_unchecked(
        delta,
        nabla,
        g.arrow_ids().map(|x| ObjectId::new(g.inv(x).index())).collect(),
        dpairs.iter().map(|&(y, x)| ArrowId::new(index[inv(y) * n + inv(x)])).collect(),
    )
}

/// Whether `δ̄ ∘ Δ(ς) = δ`.
pub fn sym_square_commutes(g: &Arc<Groupoid>) -> Result<bool> {
    let actions = canonical_actions(g)?;
    let sym = sym_functor(g);
    let around = actions[1].actor.after(&sym.retarget(actions[1].source.clone()))?;
    Ok(around.arrow_map() == actions[0].actor.arrow_map()
        && around.object_map() == actions[0].actor.object_map())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anchor::classify;
    use crate::construct::*;
    use crate::group::GroupTable;
    use crate::morphisms::classify::classify_morphism;
    use crate::search::isomorphic;

    fn swap() -> ActionLaw {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        ActionLaw::from_labels(
            z2,
            &[("a", "*"), ("b", "*")],
            &[("0", "a", "a"), ("0", "b", "b"), ("1", "a", "b"), ("1", "b", "a")],
        )
        .unwrap()
    }

    #[test]
    fn swap_action() {
        let a = swap();
        let (h, f) = action_to_actor(&a);
        assert!(isomorphic(&h, &Arc::new(pair(&["a", "b"]))));
        assert!(classify_morphism(&f).actor);
        assert!(is_principal_action(&a));
        assert_eq!(actor_to_action(&f).unwrap(), a);
        let (_, iso) = actor_comparison(&f).unwrap();
        assert!(iso.inverse().is_some());
    }

    #[test]
    fn trivial_action_is_not_free() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let a = ActionLaw::new(z2, vec!["a".into()], vec![ObjectId::new(0)], |_, x| x).unwrap();
        assert_eq!(free_witness(&a), Some((ArrowId::new(1), 0)));
        let (h, _) = action_to_actor(&a);
        assert!(!classify(&h).principal);
    }

    #[test]
    fn bad_actions_are_rejected() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let r = ActionLaw::from_labels(
            z2,
            &[("a", "*"), ("b", "*")],
            &[("0", "a", "b"), ("0", "b", "a"), ("1", "a", "b"), ("1", "b", "a")],
        );
        assert!(r.is_err());
    }

    #[test]
    fn canonical_table_for_small_groups() {
        for n in [2, 3] {
            let g = Arc::new(from_group(&GroupTable::cyclic(n)));
            let acts = canonical_actions(&g).unwrap();
            for ca in &acts {
                assert!(ca.matches_formula(&g), "{:?}", ca.kind);
                assert!(classify_morphism(&ca.actor).actor);
                assert!(classify(&ca.source).principal);
            }
            assert!(sym_square_commutes(&g).unwrap());
        }
        let p = Arc::new(pair_n(2));
        for ca in canonical_actions(&p).unwrap() {
            assert!(ca.matches_formula(&p));
        }
    }
}
