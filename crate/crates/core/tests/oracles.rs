//! Square groupoids, fibre products, fractions, Morita decisions and
//! diptych squares against direct enumeration.

use std::ops::ControlFlow;
use std::sync::Arc;

use fingroupoid::butterfly::{square_groupoid, transversality, Butterfly, Transversality};
use fingroupoid::construct::*;
use fingroupoid::diptych::{all_maps, full_square, good_pullback, is_pushout, FinMap, Square};
use fingroupoid::enumerate::groupoid_family;
use fingroupoid::fractions::{
    compose, fractions_equivalent, holograph, make_irreducible, morita_equivalent, EquivalenceOptions,
};
use fingroupoid::morphisms::fibre_product;
use fingroupoid::search::{all_functors, for_each_functor, SearchOptions};
use fingroupoid::*;

fn z(n: usize) -> Arc<Groupoid> {
    Arc::new(from_group(&GroupTable::cyclic(n)))
}

fn mero(f: &Functor) -> Meromorphism {
    Meromorphism::new(holograph(f).unwrap().fraction).unwrap()
}

/// Quadruples `(t, b, l, r)` of arrows forming a commuting square.
fn brute_squares(g: &Groupoid) -> usize {
    let mut n = 0;
    for t in g.arrow_ids() {
        for b in g.arrow_ids() {
            for l in g.arrow_ids() {
                for r in g.arrow_ids() {
                    let shape = g.src(t) == g.tgt(r)
                        && g.src(b) == g.src(r)
                        && g.tgt(b) == g.src(l)
                        && g.tgt(l) == g.tgt(t);
                    if shape && g.mul(t, r) == g.mul(l, b) {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

#[test]
fn square_groupoid_counts() {
    for n in 1..=5 {
        let sq = square_groupoid(&z(n));
        assert_eq!(sq.squares.len(), n * n * n);
    }
    for s in groupoid_family(2, 6) {
        let sq = square_groupoid(&s.groupoid);
        assert_eq!(sq.squares.len(), brute_squares(&s.groupoid), "{}", s.name);
        assert!(sq.up.violations().is_empty() && sq.down.violations().is_empty());
    }
}

#[test]
fn canonical_butterfly_wings_are_transverse() {
    for s in groupoid_family(2, 4) {
        let sq = square_groupoid(&s.groupoid);
        let b = sq.canonical_butterfly().unwrap();
        let rep = transversality(b.core(), b.wing(), b.co_wing()).unwrap();
        assert_eq!(rep.kind, Transversality::Transverse, "{}", s.name);
        // Ker π↓ ∩ Ker π↑ holds only the units
        let both = b.core().arrow_ids().filter(|&a| b.wing().contains(a) && b.co_wing().contains(a)).count();
        assert_eq!(both, b.core().object_count());
    }
}

#[test]
fn butterfly_rejects_a_non_s_equivalence_leg() {
    let z2 = z(2);
    let trivial = Functor::from_arrow_fn(z2.clone(), z(1), |_| ArrowId::new(0)).unwrap();
    assert!(Butterfly::new(trivial.clone(), trivial).is_err());
}

#[test]
fn fibre_product_sizes() {
    let fam = groupoid_family(2, 4);
    let mut checked = 0;
    for a in &fam {
        for b in &fam {
            let (g, h) = (&a.groupoid, &b.groupoid);
            let maps = all_functors(g, h);
            for f in maps.iter().take(3) {
                for k in maps.iter().take(3) {
                    let fp = fibre_product(f, k).unwrap();
                    // pairs of arrows with the same image
                    let expected = g
                        .arrow_ids()
                        .map(|x| g.arrow_ids().filter(|&y| f.arr(x) == k.arr(y)).count())
                        .sum::<usize>();
                    assert_eq!(fp.groupoid.arrow_count(), expected);
                    let objects = g
                        .object_ids()
                        .map(|x| g.object_ids().filter(|&y| f.obj(x) == k.obj(y)).count())
                        .sum::<usize>();
                    assert_eq!(fp.groupoid.object_count(), objects);
                    assert_eq!(f.after(&fp.left).unwrap(), k.after(&fp.right).unwrap());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn holograph_composition_and_reduction() {
    let fam = groupoid_family(2, 4);
    let mut pairs = 0;
    for a in fam.iter().step_by(3) {
        for b in fam.iter().step_by(4) {
            let fs = all_functors(&a.groupoid, &b.groupoid);
            let gs = all_functors(&b.groupoid, &a.groupoid);
            if let (Some(f), Some(g)) = (fs.last(), gs.first()) {
                let lhs = compose(&mero(g), &mero(f)).unwrap();
                let rhs = mero(&g.after(f).unwrap());
                let w = fractions_equivalent(lhs.fraction(), rhs.fraction(), EquivalenceOptions::default()).unwrap();
                assert!(w.is_some(), "{} / {}", a.name, b.name);
                let red = make_irreducible(&lhs).unwrap();
                assert!(red.fraction.source().arrow_count() <= lhs.fraction().source().arrow_count());
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 10);
}

fn is_equivalence_functor(f: &Functor) -> bool {
    let (g, h) = (f.source(), f.target());
    let ess = h.object_ids().all(|y| g.object_ids().any(|x| h.hom(f.obj(x), y).next().is_some()));
    let ff = g.object_ids().all(|x| {
        g.object_ids().all(|y| {
            let mut images: Vec<ArrowId> = g.hom(x, y).map(|a| f.arr(a)).collect();
            images.sort();
            images.dedup();
            images.len() == g.hom(x, y).count() && images.len() == h.hom(f.obj(x), f.obj(y)).count()
        })
    });
    ess && ff
}

fn brute_equivalent(g: &Arc<Groupoid>, h: &Arc<Groupoid>) -> bool {
    let mut found = false;
    let _ = for_each_functor(g, h, SearchOptions::default(), &|_, _| true, &mut |f| {
        if is_equivalence_functor(&f) {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

#[test]
fn morita_matches_equivalence_search() {
    let fam = groupoid_family(2, 4);
    for a in &fam {
        for b in &fam {
            let d = morita_equivalent(&a.groupoid, &b.groupoid).unwrap();
            assert_eq!(d.equivalent, brute_equivalent(&a.groupoid, &b.groupoid), "{} ~ {}", a.name, b.name);
            if let Some(w) = d.witness {
                assert!(is_equivalence_functor(&w.equivalence));
                assert!(w.butterfly.violations().is_empty());
            }
        }
    }
}

/// The pushout of `B′ ← A′ → A` as `(B′ ⊔ A)/~`, by union-find; the square
/// is a pushout when the induced map to `B` is a bijection.
fn pushout_by_union_find(sq: &Square) -> bool {
    let (nb, na) = (sq.left.codomain(), sq.top.codomain());
    let mut parent: Vec<usize> = (0..nb + na).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in 0..sq.top.domain() {
        let (u, v) = (find(&mut parent, sq.left.apply(x)), find(&mut parent, nb + sq.top.apply(x)));
        parent[u] = v;
    }
    let b = sq.bottom.codomain();
    let mut image: Vec<Option<usize>> = vec![None; nb + na];
    for y in 0..nb + na {
        let target = if y < nb { sq.bottom.apply(y) } else { sq.right.apply(y - nb) };
        let r = find(&mut parent, y);
        match image[r] {
            Some(t) if t != target => return false,
            _ => image[r] = Some(target),
        }
    }
    let mut hit: Vec<usize> = image.iter().flatten().copied().collect();
    hit.sort();
    hit.dedup();
    let classes = (0..nb + na).filter(|&y| find(&mut parent, y) == y).count();
    hit.len() == b && classes == b
}

#[test]
fn pushouts_and_full_squares_against_direct_constructions() {
    let mut seen = 0;
    for a2 in 0..=2 {
        for a in 1..=2 {
            for b2 in 1..=2 {
                for b in 1..=2 {
                    for top in all_maps(a2, a) {
                        for left in all_maps(a2, b2) {
                            for right in all_maps(a, b) {
                                for bottom in all_maps(b2, b) {
                                    let sq = Square::new(top.clone(), left.clone(), right.clone(), bottom).unwrap();
                                    if !sq.commutes() {
                                        continue;
                                    }
                                    seen += 1;
                                    assert_eq!(is_pushout(&sq).unwrap(), pushout_by_union_find(&sq), "{sq:?}");
                                    let pb = good_pullback(&sq.right, &sq.bottom).unwrap();
                                    let covered = pb.pairs.iter().all(|&(y, x)| {
                                        (0..a2).any(|p| sq.left.apply(p) == y && sq.top.apply(p) == x)
                                    });
                                    assert_eq!(full_square(&sq).unwrap(), covered);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(seen > 100);
}

#[test]
fn pullback_of_a_map_along_itself() {
    let f = FinMap::new(3, 2, vec![0, 0, 1]).unwrap();
    let pb = good_pullback(&f, &f).unwrap();
    assert_eq!(pb.pairs.len(), 2 * 2 + 1);
    assert!(pb.comparison_injective);
    assert!(pb.square.is_cartesian().unwrap());
}
