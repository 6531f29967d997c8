use std::collections::HashMap;

use crate::butterfly::square::{square_groupoid, SquareGroupoid};
use crate::error::Result;
use crate::groupoid::ArrowId;
use crate::morphisms::functor::Functor;
use crate::morphisms::pullback::{fibre_product, FibreProduct};
use crate::fractions::Fraction;

/// The holograph `p/q` of `f: H → G`: the core is `H ×_G □G` over the
/// bottom side of the squares, `q` forgets the square and `p` keeps its top.
#[derive(Clone, Debug)]
pub struct Holograph {
    pub fraction: Fraction,
    pub squares: SquareGroupoid,
    pub core: FibreProduct,
    /// `σ` with `q σ = id` and `p σ = f`.
    pub section: Functor,
}

pub fn holograph(f: &Functor) -> Result<Holograph> {
    let (h, g) = (f.source(), f.target());
    let squares = square_groupoid(g);
    let core = fibre_product(f, &squares.down)?;
    let k = &core.groupoid;
    let numerator = squares.up.after(&core.right)?;
    let denominator = core.left.clone();

    let index: HashMap<(ArrowId, ArrowId), ArrowId> =
        k.arrow_ids().map(|a| ((core.left.arr(a), core.right.arr(a)), a)).collect();
    let sq_index: HashMap<(ArrowId, ArrowId, ArrowId), ArrowId> = squares
        .squares
        .iter()
        .enumerate()
        .map(|(i, s)| ((s.top, s.bottom, s.right), ArrowId::new(i)))
        .collect();
    let flat = |a: ArrowId| {
        let x = g.unit(f.obj(h.src(a)));
        sq_index[&(f.arr(a), f.arr(a), x)]
    };
    let objects = h.object_ids().map(|e| k.tgt(index[&(h.unit(e), flat(h.unit(e)))])).collect();
    let arrows = h.arrow_ids().map(|a| index[&(a, flat(a))]).collect();
    let section = Functor::new(h.clone(), k.clone(), objects, arrows)?;
    Ok(Holograph { fraction: Fraction::new(numerator, denominator)?, squares, core, section })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::construct::*;
    use crate::fractions::cotransversality;
    use crate::group::GroupTable;
    use crate::morphisms::classify::classify_morphism;
    use crate::butterfly::Transversality;

    #[test]
    fn identity_of_z2() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let id = Functor::identity(z2.clone());
        let h = holograph(&id).unwrap();
        assert_eq!(h.fraction.source().arrow_count(), 8);
        assert_eq!(h.fraction.denominator().after(&h.section).unwrap(), id);
        assert_eq!(h.fraction.numerator().after(&h.section).unwrap(), id);
    }

    #[test]
    fn pair_to_point() {
        let p = Arc::new(pair(&["1", "2"]));
        let pt = Arc::new(from_group(&GroupTable::trivial()));
        let f = Functor::from_arrow_fn(p.clone(), pt, |_| ArrowId::new(0)).unwrap();
        let h = holograph(&f).unwrap();
        let cq = classify_morphism(h.fraction.denominator());
        let cp = classify_morphism(h.fraction.numerator());
        assert!(cq.s_equivalence && cp.exactor);
        assert_eq!(h.fraction.numerator().after(&h.section).unwrap(), f);
        assert_eq!(cotransversality(&h.fraction).kind, Transversality::Transverse);
    }
}
