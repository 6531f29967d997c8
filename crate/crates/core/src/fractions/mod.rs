//! Fractions `p/q` of exactors with a common source, meromorphisms and
//! their composition, holographs, Morita equivalence and Čech presentations.

pub mod cech;
pub mod equivalence;
pub mod holograph;
pub mod morita;

use std::sync::Arc;

use crate::butterfly::transversal::{transversality, Transversality, TransversalityReport};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::morphisms::classify::classify_morphism;
use crate::morphisms::functor::{same_groupoid, Functor};
use crate::morphisms::pullback::fibre_product;
use crate::morphisms::quotient::{bilateral_quotient, induced_map};
use crate::subgroupoid::{kernel, WideSubgroupoid};

pub use cech::{cech_presentation, CechPresentation};
pub use equivalence::{fractions_equivalent, EquivalenceOptions, EquivalenceWitness};
pub use holograph::{holograph, Holograph};
pub use morita::{
    hat_presentation, morita_equivalent, morita_witness, skeleton_matching, HatPresentation, MoritaDecision,
    MoritaSpan, MoritaWitness,
};

/// A pair of exactors `H ← K → G` with a common source, read as `p/q`
/// from `H` to `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction {
    numerator: Functor,
    denominator: Functor,
}

impl Fraction {
    pub fn new(numerator: Functor, denominator: Functor) -> Result<Fraction> {
        if !same_groupoid(numerator.source(), denominator.source()) {
            return Err(Error::InvalidFraction("numerator and denominator have different sources".into()));
        }
        for (name, f) in [("numerator", &numerator), ("denominator", &denominator)] {
            if !classify_morphism(f).exactor {
                return Err(Error::InvalidFraction(format!("{name} is not an exactor")));
            }
        }
        Ok(Fraction { numerator, denominator })
    }

    /// `p: K → G`.
    pub fn numerator(&self) -> &Functor {
        &self.numerator
    }

    /// `q: K → H`.
    pub fn denominator(&self) -> &Functor {
        &self.denominator
    }

    pub fn source(&self) -> &Arc<Groupoid> {
        self.numerator.source()
    }

    /// `N = Ker p`.
    pub fn numerator_kernel(&self) -> WideSubgroupoid {
        kernel(&self.numerator)
    }

    /// `M = Ker q`.
    pub fn denominator_kernel(&self) -> WideSubgroupoid {
        kernel(&self.denominator)
    }
}

/// Transversality of the kernels `M = Ker q`, `N = Ker p`: cotransverse
/// fractions are the irreducible ones.
pub fn cotransversality(f: &Fraction) -> TransversalityReport {
    transversality(f.source(), &f.denominator_kernel(), &f.numerator_kernel()).expect("kernels are wide")
}

/// A cotransversal fraction whose denominator is an s-equivalence, standing
/// for its equivalence class.
#[derive(Clone, Debug)]
pub struct Meromorphism {
    fraction: Fraction,
    irreducible: bool,
}

impl Meromorphism {
    pub fn new(fraction: Fraction) -> Result<Meromorphism> {
        let kind = cotransversality(&fraction).kind;
        if !kind.is_transversal() {
            return Err(Error::InvalidFraction("fraction is not cotransversal".into()));
        }
        if !classify_morphism(fraction.denominator()).s_equivalence {
            return Err(Error::InvalidFraction("denominator is not an s-equivalence".into()));
        }
        Ok(Meromorphism { fraction, irreducible: kind == Transversality::Transverse })
    }

    pub fn fraction(&self) -> &Fraction {
        &self.fraction
    }

    pub fn is_cotransversal(&self) -> bool {
        true
    }

    pub fn denominator_is_s_equivalence(&self) -> bool {
        true
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    /// Invertible meromorphisms: the numerator is an s-equivalence too.
    pub fn is_morita_equivalence(&self) -> bool {
        classify_morphism(self.fraction.numerator()).s_equivalence
    }
}

/// An irreducible representative with the quotient map from the original
/// core.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub fraction: Fraction,
    /// `K → K // S` with `S = Ker p ∩ Ker q`.
    pub projection: Functor,
}

/// Divides the core by `S = Ker p ∩ Ker q`.
pub fn make_irreducible(m: &Meromorphism) -> Result<Reduction> {
    let f = m.fraction();
    let s = f.numerator_kernel().intersection(&f.denominator_kernel());
    let (_, projection) = bilateral_quotient(f.source(), &s)?;
    let numerator = induced_map(&projection, f.numerator())?;
    let denominator = induced_map(&projection, f.denominator())?;
    Ok(Reduction { fraction: Fraction::new(numerator, denominator)?, projection })
}

/// `m₂ ∘ m₁` for `m₁: J ⇢ H` and `m₂: H ⇢ G`, through the fibre product of
/// the inner legs. The result is not reduced.
pub fn compose(m2: &Meromorphism, m1: &Meromorphism) -> Result<Meromorphism> {
    let (f2, f1) = (m2.fraction(), m1.fraction());
    if !same_groupoid(f1.numerator().target(), f2.denominator().target()) {
        return Err(Error::Precondition("meromorphisms do not compose: middle groupoids differ".into()));
    }
    let fp = fibre_product(f1.numerator(), f2.denominator())?;
    let numerator = f2.numerator().after(&fp.right)?;
    let denominator = f1.denominator().after(&fp.left)?;
    Meromorphism::new(Fraction::new(numerator, denominator)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::group::GroupTable;
    use crate::groupoid::ObjectId;
    use crate::morphisms::pullback::pullback_groupoid;
    use crate::search::isomorphic;

    #[test]
    fn functor_over_identity_is_not_cotransversal() {
        let z4 = Arc::new(from_group(&GroupTable::cyclic(4)));
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let f = Functor::from_arrow_fn(z4.clone(), z2, |a| crate::groupoid::ArrowId::new(a.index() % 2)).unwrap();
        let fr = Fraction::new(f, Functor::identity(z4)).unwrap();
        assert_eq!(cotransversality(&fr).kind, Transversality::Neither);
        assert!(Meromorphism::new(fr).is_err());
    }

    #[test]
    fn doubled_holograph_reduces_back() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let h = holograph(&Functor::identity(z2.clone())).unwrap();
        let k = h.fraction.source().clone();
        assert_eq!(cotransversality(&h.fraction).kind, Transversality::Transverse);
        // every point of the core doubled
        let space: Vec<String> =
            k.object_labels().iter().flat_map(|l| [format!("{l}'"), format!("{l}\"")]).collect();
        let over: Vec<ObjectId> = k.object_ids().flat_map(|e| [e, e]).collect();
        let (_, d) = pullback_groupoid(&k, &space, &over);
        let doubled = Fraction::new(
            h.fraction.numerator().after(&d).unwrap(),
            h.fraction.denominator().after(&d).unwrap(),
        )
        .unwrap();
        assert_eq!(cotransversality(&doubled).kind, Transversality::Transversal);
        let m = Meromorphism::new(doubled).unwrap();
        assert!(!m.is_irreducible());
        let r = make_irreducible(&m).unwrap();
        assert_eq!(cotransversality(&r.fraction).kind, Transversality::Transverse);
        assert!(isomorphic(r.fraction.source(), &k));
    }

    fn mero(f: &Functor) -> Meromorphism {
        Meromorphism::new(holograph(f).unwrap().fraction).unwrap()
    }

    fn equivalent(a: &Meromorphism, b: &Meromorphism) -> bool {
        fractions_equivalent(a.fraction(), b.fraction(), EquivalenceOptions::default()).unwrap().is_some()
    }

    #[test]
    fn holograph_respects_composition() {
        let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
        let p = Arc::new(product(&z2, &pair_n(2)));
        let proj = Functor::from_arrow_fn(p.clone(), z2.clone(), |a| crate::groupoid::ArrowId::new(a.index() / 4)).unwrap();
        let back = Functor::new(
            z2.clone(),
            p.clone(),
            vec![ObjectId::new(0)],
            vec![crate::groupoid::ArrowId::new(0), crate::groupoid::ArrowId::new(4)],
        )
        .unwrap();
        let composite = compose(&mero(&back), &mero(&proj)).unwrap();
        assert!(equivalent(&composite, &mero(&back.after(&proj).unwrap())));
        let reduced = make_irreducible(&composite).unwrap();
        assert_eq!(cotransversality(&reduced.fraction).kind, Transversality::Transverse);
        let direct = holograph(&back.after(&proj).unwrap()).unwrap();
        assert!(isomorphic(reduced.fraction.source(), direct.fraction.source()));

        let unit = compose(&mero(&proj), &mero(&Functor::identity(p.clone()))).unwrap();
        assert!(equivalent(&unit, &mero(&proj)));
        assert!(compose(&mero(&proj), &mero(&proj)).is_err());
    }
}
