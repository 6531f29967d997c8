//! The groupoid `□G` of commuting squares of `G` under horizontal
//! composition.

use std::collections::HashMap;
use std::sync::Arc;

use crate::butterfly::Butterfly;
use crate::error::Result;
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::morphisms::functor::Functor;

/// A commuting square `top · right = left · bottom` of `G`, read as an arrow
/// of `□G` from its right side to its left side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Square {
    /// `β(right) → β(left)`.
    pub top: ArrowId,
    /// `α(right) → α(left)`.
    pub bottom: ArrowId,
    pub left: ArrowId,
    pub right: ArrowId,
}

#[derive(Clone, Debug)]
pub struct SquareGroupoid {
    pub groupoid: Arc<Groupoid>,
    pub squares: Vec<Square>,
    /// `π↑`: a square to its top side.
    pub up: Functor,
    /// `π↓`: a square to its bottom side.
    pub down: Functor,
}

impl SquareGroupoid {
    pub fn square(&self, a: ArrowId) -> Square {
        self.squares[a.index()]
    }

    /// The canonical butterfly of `G`: legs `π↓` and `π↑`, wings their
    /// kernels.
    pub fn canonical_butterfly(&self) -> Result<Butterfly> {
        Butterfly::new(self.down.clone(), self.up.clone())
    }
}

/// Builds `□G`. Objects are the arrows of `G`; horizontal composition
/// concatenates right to left.
pub fn square_groupoid(g: &Arc<Groupoid>) -> SquareGroupoid {
    let mut squares = Vec::new();
    let mut index: HashMap<(ArrowId, ArrowId, ArrowId), ArrowId> = HashMap::new();
    for x in g.arrow_ids() {
        for &b in g.outgoing(g.src(x)) {
            for &t in g.outgoing(g.tgt(x)) {
                let y = g.mul(g.mul(t, x), g.inv(b));
                index.insert((t, b, x), ArrowId::new(squares.len()));
                squares.push(Square { top: t, bottom: b, left: y, right: x });
            }
        }
    }
    let label = |a: ArrowId| g.arrow_label(a);
    let arrows = squares
        .iter()
        .map(|s| format!("[{},{},{},{}]", label(s.top), label(s.bottom), label(s.left), label(s.right)))
        .collect();
    let src = squares.iter().map(|s| ObjectId::new(s.right.index())).collect();
    let tgt = squares.iter().map(|s| ObjectId::new(s.left.index())).collect();
    let unit = g.arrow_ids().map(|x| index[&(g.unit(g.tgt(x)), g.unit(g.src(x)), x)]).collect();
    let inv = squares.iter().map(|s| index[&(g.inv(s.top), g.inv(s.bottom), s.left)]).collect();
    let sq = Arc::new(Groupoid::assemble(
        g.arrow_labels().to_vec(),
        arrows,
        src,
        tgt,
        unit,
        inv,
        |u, v| {
            let (s2, s1) = (squares[u.index()], squares[v.index()]);
            index[&(g.mul(s2.top, s1.top), g.mul(s2.bottom, s1.bottom), s1.right)]
        },
    ));
    let up = Functor::new_unchecked(
        sq.clone(),
        g.clone(),
        g.arrow_ids().map(|x| g.tgt(x)).collect(),
        squares.iter().map(|s| s.top).collect(),
    );
    let down = Functor::new_unchecked(
        sq.clone(),
        g.clone(),
        g.arrow_ids().map(|x| g.src(x)).collect(),
        squares.iter().map(|s| s.bottom).collect(),
    );
    SquareGroupoid { groupoid: sq, squares, up, down }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{canonical_actions, delta_groupoid, nabla_groupoid};
    use crate::construct::*;
    use crate::group::GroupTable;
    use crate::morphisms::classify::classify_morphism;
    use crate::search::isomorphic;
    use crate::subgroupoid::kernel;

    #[test]
    fn sizes() {
        for n in 2..=4 {
            let g = Arc::new(from_group(&GroupTable::cyclic(n)));
            let sq = square_groupoid(&g);
            assert_eq!(sq.groupoid.arrow_count(), n * n * n);
            assert!(sq.groupoid.axiom_violations().is_empty());
        }
        let p = Arc::new(pair_n(2));
        let sq = square_groupoid(&p);
        assert_eq!(sq.groupoid.arrow_count(), 16);
        for s in &sq.squares {
            assert_eq!(p.mul(s.top, s.right), p.mul(s.left, s.bottom));
        }
    }

    #[test]
    fn projections_are_s_equivalences() {
        for g in [from_group(&GroupTable::cyclic(2)), pair_n(2), from_group(&GroupTable::symmetric(3))] {
            let sq = square_groupoid(&Arc::new(g));
            assert!(classify_morphism(&sq.up).s_equivalence);
            assert!(classify_morphism(&sq.down).s_equivalence);
        }
    }

    #[test]
    fn wings_are_delta_and_nabla() {
        let g = Arc::new(from_group(&GroupTable::symmetric(3)));
        let sq = square_groupoid(&g);
        let ker_down = kernel(&sq.down).to_groupoid(&sq.groupoid).0;
        let ker_up = kernel(&sq.up).to_groupoid(&sq.groupoid).0;
        assert!(isomorphic(&ker_down, &delta_groupoid(&g).0));
        assert!(isomorphic(&ker_up, &nabla_groupoid(&g).0));

        let b = sq.canonical_butterfly().unwrap();
        let actions = canonical_actions(&g).unwrap();
        // r is δ̄ and r′ is δ, up to relabelling the wing objects
        let r = b.actor();
        let r_prime = b.co_actor();
        assert!(classify_morphism(&r).actor && classify_morphism(&r_prime).actor);
        assert_eq!(r.source().arrow_count(), actions[1].source.arrow_count());
        for a in r.source().arrow_ids() {
            let s = sq.square(b.wing_arrow(a));
            assert!(g.is_unit(s.top));
            assert_eq!(r.arr(a), g.mul(g.inv(s.left), s.right));
        }
        for a in r_prime.source().arrow_ids() {
            let s = sq.square(b.co_wing_arrow(a));
            assert!(g.is_unit(s.bottom));
            assert_eq!(r_prime.arr(a), g.mul(s.left, g.inv(s.right)));
        }
    }
}
