use std::fmt;

use crate::error::Result;
use crate::groupoid::{ArrowId, Groupoid};
use crate::subgroupoid::WideSubgroupoid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transversality {
    /// `(m, n) ↦ m n⁻¹` is a bijection `L → K`.
    Transverse,
    /// Surjective but not injective.
    Transversal,
    Neither,
}

impl Transversality {
    pub fn label(self) -> &'static str {
        match self {
            Transversality::Transverse => "transverse",
            Transversality::Transversal => "transversal",
            Transversality::Neither => "neither",
        }
    }

    /// Transverse pairs are in particular transversal.
    pub fn is_transversal(self) -> bool {
        self != Transversality::Neither
    }
}

impl fmt::Display for Transversality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityReport {
    pub kind: Transversality,
    /// `|L|`, the pairs `(m, n)` with a common source.
    pub pairs: usize,
    /// Size of the image of `L` in `K`.
    pub image: usize,
    /// An arrow of `K` that is not of the form `m n⁻¹`.
    pub missed: Option<ArrowId>,
    /// Two pairs `(m, n)` with the same value.
    pub collision: Option<[(ArrowId, ArrowId); 2]>,
    /// A non-unit arrow of `M ∩ N`.
    pub common: Option<ArrowId>,
}

/// Classifies `L = {(m, n) ∈ M × N : src m = src n} → K, (m, n) ↦ m n⁻¹`.
pub fn transversality(k: &Groupoid, m: &WideSubgroupoid, n: &WideSubgroupoid) -> Result<TransversalityReport> {
    m.check(k)?;
    n.check(k)?;
    let mut first: Vec<Option<(ArrowId, ArrowId)>> = vec![None; k.arrow_count()];
    let mut pairs = 0;
    let mut collision = None;
    for e in k.object_ids() {
        for &a in k.outgoing(e).iter().filter(|&&a| m.contains(a)) {
            for &b in k.outgoing(e).iter().filter(|&&b| n.contains(b)) {
                pairs += 1;
                let v = k.mul(a, k.inv(b));
                match first[v.index()] {
                    None => first[v.index()] = Some((a, b)),
                    Some(p) => {
                        collision.get_or_insert([p, (a, b)]);
                    }
                }
            }
        }
    }
    let image = first.iter().filter(|p| p.is_some()).count();
    let missed = k.arrow_ids().find(|a| first[a.index()].is_none());
    let common = m.arrows().find(|&a| n.contains(a) && !k.is_unit(a));
    let kind = match (missed, collision) {
        (None, None) => Transversality::Transverse,
        (None, Some(_)) => Transversality::Transversal,
        _ => Transversality::Neither,
    };
    Ok(TransversalityReport { kind, pairs, image, missed, collision, common })
}

/// For a transverse pair, the unique factorization `k = m n⁻¹` of every
/// arrow, indexed by `k`.
pub fn transverse_split(k: &Groupoid, m: &WideSubgroupoid, n: &WideSubgroupoid) -> Result<Vec<(ArrowId, ArrowId)>> {
    let report = transversality(k, m, n)?;
    if report.kind != Transversality::Transverse {
        return Err(crate::error::Error::Precondition(format!(
            "subgroupoids are not transverse ({})",
            report.kind
        )));
    }
    let mut split = vec![(ArrowId::new(0), ArrowId::new(0)); k.arrow_count()];
    for e in k.object_ids() {
        for &a in k.outgoing(e).iter().filter(|&&a| m.contains(a)) {
            for &b in k.outgoing(e).iter().filter(|&&b| n.contains(b)) {
                split[k.mul(a, k.inv(b)).index()] = (a, b);
            }
        }
    }
    Ok(split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;
    use crate::butterfly::grid;

    #[test]
    fn grid_is_transverse() {
        let (k, rows, cols) = grid();
        let r = transversality(&k, &rows, &cols).unwrap();
        assert_eq!(r.kind, Transversality::Transverse);
        assert_eq!((r.pairs, r.image), (16, 16));
        assert_eq!(r.common, None);
    }

    #[test]
    fn full_pair_is_only_transversal() {
        let k = pair(&["1", "2"]);
        let full = WideSubgroupoid::full(&k);
        let r = transversality(&k, &full, &full).unwrap();
        assert_eq!(r.kind, Transversality::Transversal);
        assert_eq!((r.pairs, r.image), (8, 4));
    }

    #[test]
    fn units_of_a_group() {
        let k = from_group(&GroupTable::cyclic(2));
        let u = WideSubgroupoid::units(&k);
        let r = transversality(&k, &u, &u).unwrap();
        assert_eq!(r.kind, Transversality::Neither);
        assert_eq!(r.image, 1);
        let other = pair_n(2);
        assert!(transversality(&other, &u, &u).is_err());
    }
}
