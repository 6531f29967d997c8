//! The double groupoid structure of a core with two transverse wings, and
//! the mixed law recovered from it.

use std::collections::HashMap;
use std::sync::Arc;

use crate::butterfly::transversal::transverse_split;
use crate::error::{Error, Result};
use crate::groupoid::{ArrowId, Groupoid, ObjectId};
use crate::subgroupoid::WideSubgroupoid;

/// The square `x″ → x → y`, `x″ → z → y` completed from a chain through
/// the two wings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MixedCompletion {
    /// The fourth vertex.
    pub corner: ObjectId,
    /// `z → y` in `R`.
    pub m: ArrowId,
    /// `z → x″` in `R′`.
    pub n: ArrowId,
    /// `ρ′ρ = m n⁻¹`.
    pub composite: ArrowId,
}

/// A core `K` with transverse wings `R`, `R′`: every arrow splits uniquely
/// as `m n⁻¹` with `m ∈ R`, `n ∈ R′`.
#[derive(Clone, Debug)]
pub struct MixedLaw {
    core: Arc<Groupoid>,
    r: WideSubgroupoid,
    r_prime: WideSubgroupoid,
    split: Vec<(ArrowId, ArrowId)>,
}

impl MixedLaw {
    pub fn new(core: &Arc<Groupoid>, r: &WideSubgroupoid, r_prime: &WideSubgroupoid) -> Result<MixedLaw> {
        let split = transverse_split(core, r, r_prime)?;
        Ok(MixedLaw { core: core.clone(), r: r.clone(), r_prime: r_prime.clone(), split })
    }

    pub fn core(&self) -> &Arc<Groupoid> {
        &self.core
    }

    /// `k = m n⁻¹`.
    pub fn split(&self, k: ArrowId) -> (ArrowId, ArrowId) {
        self.split[k.index()]
    }

    /// Completes `x″ →ρ x →ρ′ y` with `ρ ∈ R`, `ρ′ ∈ R′`.
    pub fn complete(&self, rho: ArrowId, rho_prime: ArrowId) -> Result<MixedCompletion> {
        let k = &self.core;
        if !self.r.contains(rho) || !self.r_prime.contains(rho_prime) {
            return Err(Error::Precondition("chain does not run through R then R′".into()));
        }
        let composite = k.compose(rho_prime, rho).ok_or_else(|| {
            Error::Precondition(format!(
                "chain endpoints do not match: {} ends at {}, {} starts at {}",
                k.arrow_label(rho),
                k.object_label(k.tgt(rho)),
                k.arrow_label(rho_prime),
                k.object_label(k.src(rho_prime))
            ))
        })?;
        let (m, n) = self.split(composite);
        Ok(MixedCompletion { corner: k.src(m), m, n, composite })
    }

    /// `(m₂, n₂)·(m₁, n₁)`, using only the wing compositions and square
    /// completion.
    pub fn compose_pairs(&self, second: (ArrowId, ArrowId), first: (ArrowId, ArrowId)) -> Result<(ArrowId, ArrowId)> {
        let k = &self.core;
        let ((m2, n2), (m1, n1)) = (second, first);
        if k.tgt(m1) != k.tgt(n2) {
            return Err(Error::Precondition("pairs are not composable".into()));
        }
        let c = self.complete(m1, k.inv(n2))?;
        Ok((k.mul(m2, c.m), k.mul(n1, c.n)))
    }

    /// The mixed product of two arrows of `K`, or `None` if not composable.
    pub fn compose(&self, y: ArrowId, x: ArrowId) -> Option<ArrowId> {
        let k = &self.core;
        if k.src(y) != k.tgt(x) {
            return None;
        }
        let (m, n) = self.compose_pairs(self.split(y), self.split(x)).ok()?;
        Some(k.mul(m, k.inv(n)))
    }

    /// A composable pair on which the mixed law differs from `K`'s.
    pub fn disagreement(&self) -> Option<(ArrowId, ArrowId)> {
        self.core.composable_pairs().find(|&(y, x)| self.compose(y, x) != Some(self.core.mul(y, x)))
    }

    /// Composable triples of split pairs on which the two bracketings of the
    /// mixed law differ. Returns the failure count and the number checked.
    pub fn associativity_failures(&self) -> (usize, usize) {
        let k = &self.core;
        let mut failures = 0;
        let mut checked = 0;
        for (y, x) in k.composable_pairs() {
            for &w in k.outgoing(k.tgt(y)) {
                checked += 1;
                let (a, b, c) = (self.split(w), self.split(y), self.split(x));
                let left = self.compose_pairs(a, b).and_then(|ab| self.compose_pairs(ab, c));
                let right = self.compose_pairs(b, c).and_then(|bc| self.compose_pairs(a, bc));
                match (left, right) {
                    (Ok(l), Ok(r)) if l == r => {}
                    _ => failures += 1,
                }
            }
        }
        (failures, checked)
    }

    /// Commuting squares with top and bottom in `R`, sides in `R′`.
    pub fn squares(&self) -> Vec<WingSquare> {
        let k = &self.core;
        let mut out = Vec::new();
        for top in self.r.arrows() {
            for &left in k.outgoing(k.src(top)).iter().filter(|&&a| self.r_prime.contains(a)) {
                for &right in k.outgoing(k.tgt(top)).iter().filter(|&&a| self.r_prime.contains(a)) {
                    let bottom = k.mul(k.mul(right, top), k.inv(left));
                    if self.r.contains(bottom) {
                        out.push(WingSquare { top, bottom, left, right });
                    }
                }
            }
        }
        out
    }

    fn is_square(&self, s: &WingSquare) -> bool {
        let k = &self.core;
        self.r.contains(s.top)
            && self.r.contains(s.bottom)
            && self.r_prime.contains(s.left)
            && self.r_prime.contains(s.right)
            && k.compose(s.right, s.top).is_some()
            && k.compose(s.bottom, s.left).is_some()
            && k.mul(s.right, s.top) == k.mul(s.bottom, s.left)
    }

    /// Side by side, `second` to the right of `first`.
    pub fn horizontal(&self, second: &WingSquare, first: &WingSquare) -> Option<WingSquare> {
        let k = &self.core;
        (first.right == second.left).then(|| WingSquare {
            top: k.mul(second.top, first.top),
            bottom: k.mul(second.bottom, first.bottom),
            left: first.left,
            right: second.right,
        })
    }

    /// Stacked, `second` below `first`.
    pub fn vertical(&self, second: &WingSquare, first: &WingSquare) -> Option<WingSquare> {
        let k = &self.core;
        (first.bottom == second.top).then(|| WingSquare {
            top: first.top,
            bottom: second.bottom,
            left: k.mul(second.left, first.left),
            right: k.mul(second.right, first.right),
        })
    }

    /// Checks the interchange law on every composable 2×2 block of squares.
    /// Returns the failure count and the number of blocks.
    pub fn interchange_failures(&self) -> (usize, usize) {
        let squares = self.squares();
        let mut by_top_left: HashMap<(ArrowId, ArrowId), Vec<usize>> = HashMap::new();
        let mut by_left: HashMap<ArrowId, Vec<usize>> = HashMap::new();
        let mut by_top: HashMap<ArrowId, Vec<usize>> = HashMap::new();
        for (i, s) in squares.iter().enumerate() {
            by_top_left.entry((s.top, s.left)).or_default().push(i);
            by_left.entry(s.left).or_default().push(i);
            by_top.entry(s.top).or_default().push(i);
        }
        let (mut failures, mut blocks) = (0, 0);
        for a in &squares {
            for &bi in by_left.get(&a.right).into_iter().flatten() {
                let b = &squares[bi];
                for &ci in by_top.get(&a.bottom).into_iter().flatten() {
                    let c = &squares[ci];
                    for &di in by_top_left.get(&(b.bottom, c.right)).into_iter().flatten() {
                        let d = &squares[di];
                        blocks += 1;
                        let rows = self
                            .horizontal(b, a)
                            .zip(self.horizontal(d, c))
                            .and_then(|(ab, cd)| self.vertical(&cd, &ab));
                        let cols = self
                            .vertical(c, a)
                            .zip(self.vertical(d, b))
                            .and_then(|(ac, bd)| self.horizontal(&bd, &ac));
                        match (rows, cols) {
                            (Some(x), Some(y)) if x == y && self.is_square(&x) => {}
                            _ => failures += 1,
                        }
                    }
                }
            }
        }
        (failures, blocks)
    }
}

/// A square of the double groupoid: `right ∘ top = bottom ∘ left`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WingSquare {
    pub top: ArrowId,
    pub bottom: ArrowId,
    pub left: ArrowId,
    pub right: ArrowId,
}

/// Completes a chain in a transverse pair without building the full law.
pub fn mixed_law_complete(
    core: &Arc<Groupoid>,
    r: &WideSubgroupoid,
    r_prime: &WideSubgroupoid,
    rho: ArrowId,
    rho_prime: ArrowId,
) -> Result<MixedCompletion> {
    MixedLaw::new(core, r, r_prime)?.complete(rho, rho_prime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::butterfly::grid_core;

    #[test]
    fn grid_completion() {
        let (k, rows, cols) = grid_core();
        let law = MixedLaw::new(&k, &rows, &cols).unwrap();
        let a = |l: &str| k.arrow(l).unwrap();
        // 00 →row 01 →col 11 completes through 10
        let c = law.complete(a("(01,00)"), a("(11,01)")).unwrap();
        assert_eq!(k.object_label(c.corner), "10");
        assert_eq!(c.m, a("(11,10)"));
        assert_eq!(c.n, a("(00,10)"));
        assert_eq!(c.composite, a("(11,00)"));
        let unit = law.complete(a("(00,00)"), a("(00,00)")).unwrap();
        assert_eq!(unit.composite, a("(00,00)"));
        assert!(law.complete(a("(01,00)"), a("(10,00)")).is_err());
    }

    #[test]
    fn grid_mixed_law() {
        let (k, rows, cols) = grid_core();
        let law = MixedLaw::new(&k, &rows, &cols).unwrap();
        assert_eq!(law.disagreement(), None);
        let (fail, checked) = law.associativity_failures();
        assert_eq!((fail, checked), (0, 256));
        let (fail, blocks) = law.interchange_failures();
        assert_eq!(fail, 0);
        assert!(blocks > 0);
    }
}
