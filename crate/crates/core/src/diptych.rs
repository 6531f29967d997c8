//! Finite sets with injections and surjections as good monos and epis, and
//! an exhaustive harness for the stability axioms and their consequences.

use std::fmt;

use crate::anchor::orbits;
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

/// A total map `{0..domain} → {0..codomain}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinMap {
    domain: usize,
    codomain: usize,
    graph: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapFlags {
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
}

impl FinMap {
    pub fn new(domain: usize, codomain: usize, graph: Vec<usize>) -> Result<FinMap> {
        if graph.len() != domain {
            return Err(Error::Precondition(format!("graph has {} values for a domain of {domain}", graph.len())));
        }
        if let Some(v) = graph.iter().find(|&&v| v >= codomain) {
            return Err(Error::Precondition(format!("value {v} outside a codomain of {codomain}")));
        }
        Ok(FinMap { domain, codomain, graph })
    }

    pub fn identity(n: usize) -> FinMap {
        FinMap { domain: n, codomain: n, graph: (0..n).collect() }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        self.graph.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain];
        for &v in &self.graph {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn flags(&self) -> MapFlags {
        let (injective, surjective) = (self.is_injective(), self.is_surjective());
        MapFlags { injective, surjective, bijective: injective && surjective }
    }

    pub fn inverse(&self) -> Option<FinMap> {
        if !self.flags().bijective {
            return None;
        }
        let mut graph = vec![0; self.codomain];
        for (x, &y) in self.graph.iter().enumerate() {
            graph[y] = x;
        }
        Some(FinMap { domain: self.codomain, codomain: self.domain, graph })
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &FinMap) -> Result<FinMap> {
        if inner.codomain != self.domain {
            return Err(Error::Precondition("maps do not compose".into()));
        }
        Ok(FinMap { domain: inner.domain, codomain: self.codomain, graph: inner.graph.iter().map(|&x| self.graph[x]).collect() })
    }

    /// `f × g` on `A × A′`, with `(a, a′)` at `a · |A′| + a′`.
    pub fn product(&self, other: &FinMap) -> FinMap {
        let graph = (0..self.domain * other.domain)
            .map(|x| self.graph[x / other.domain] * other.codomain + other.graph[x % other.domain])
            .collect();
        FinMap { domain: self.domain * other.domain, codomain: self.codomain * other.codomain, graph }
    }

    /// The graph `(id, f): A → A × B`.
    pub fn graph_map(&self) -> FinMap {
        FinMap {
            domain: self.domain,
            codomain: self.domain * self.codomain,
            graph: (0..self.domain).map(|a| a * self.codomain + self.graph[a]).collect(),
        }
    }
}

impl fmt::Display for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.graph.iter().map(|v| v.to_string()).collect();
        write!(f, "{}→{} [{}]", self.domain, self.codomain, g.join(" "))
    }
}

/// Every map from a set of size `n` to a set of size `m`.
pub fn all_maps(n: usize, m: usize) -> Vec<FinMap> {
    if m == 0 {
        return if n == 0 { vec![FinMap::identity(0)] } else { Vec::new() };
    }
    let total = m.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let graph = (0..n)
                .map(|_| {
                    let v = code % m;
                    code /= m;
                    v
                })
                .collect();
            FinMap { domain: n, codomain: m, graph }
        })
        .collect()
}

/// ```text
///  A′ ─top─→ A
///  │left     │right
///  B′ ─bottom→ B
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub top: FinMap,
    pub left: FinMap,
    pub right: FinMap,
    pub bottom: FinMap,
}

impl Square {
    pub fn new(top: FinMap, left: FinMap, right: FinMap, bottom: FinMap) -> Result<Square> {
        let shape_ok = top.domain == left.domain
            && top.codomain == right.domain
            && left.codomain == bottom.domain
            && right.codomain == bottom.codomain;
        if !shape_ok {
            return Err(Error::Precondition("sides do not form a square".into()));
        }
        Ok(Square { top, left, right, bottom })
    }

    pub fn commutes(&self) -> bool {
        (0..self.top.domain).all(|x| self.right.apply(self.top.apply(x)) == self.bottom.apply(self.left.apply(x)))
    }

    fn require_commuting(&self) -> Result<()> {
        if self.commutes() {
            Ok(())
        } else {
            Err(Error::Precondition("square does not commute".into()))
        }
    }

    /// The map `A′ → B′ ×_B A` into the canonical pullback.
    pub fn comparison(&self) -> Result<FinMap> {
        self.require_commuting()?;
        let pb = good_pullback(&self.right, &self.bottom)?;
        let graph = (0..self.top.domain)
            .map(|x| pb.pairs.iter().position(|&p| p == (self.left.apply(x), self.top.apply(x))).expect("commutes"))
            .collect();
        Ok(FinMap { domain: self.top.domain, codomain: pb.pairs.len(), graph })
    }

    pub fn is_cartesian(&self) -> Result<bool> {
        Ok(self.comparison()?.flags().bijective)
    }

    pub fn sides_surjective(&self) -> bool {
        [&self.top, &self.left, &self.right, &self.bottom].iter().all(|f| f.is_surjective())
    }
}

/// `B′ ×_B A` for `f: A → B` and `u: B′ → B`, with the injective comparison
/// into `B′ × A` as certificate.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub square: Square,
    /// `(b′, a)` for each point.
    pub pairs: Vec<(usize, usize)>,
    pub comparison: FinMap,
    pub comparison_injective: bool,
}

pub fn good_pullback(f: &FinMap, u: &FinMap) -> Result<Pullback> {
    if f.codomain != u.codomain {
        return Err(Error::Precondition("maps have different codomains".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..u.domain)
        .flat_map(|b| (0..f.domain).filter(move |&a| u.apply(b) == f.apply(a)).map(move |a| (b, a)))
        .collect();
    let n = pairs.len();
    let top = FinMap { domain: n, codomain: f.domain, graph: pairs.iter().map(|p| p.1).collect() };
    let left = FinMap { domain: n, codomain: u.domain, graph: pairs.iter().map(|p| p.0).collect() };
    let comparison =
        FinMap { domain: n, codomain: u.domain * f.domain, graph: pairs.iter().map(|&(b, a)| b * f.domain + a).collect() };
    let comparison_injective = comparison.is_injective();
    let square = Square { top, left, right: f.clone(), bottom: u.clone() };
    Ok(Pullback { square, pairs, comparison, comparison_injective })
}

/// A commuting square is full when its comparison map to the pullback is
/// surjective.
pub fn full_square(sq: &Square) -> Result<bool> {
    Ok(sq.comparison()?.is_surjective())
}

/// Universal property of the pushout of `B′ ← A′ → A`, checked against every
/// cocone into a set of size at most two.
pub fn is_pushout(sq: &Square) -> Result<bool> {
    sq.require_commuting()?;
    for c in 0..=2 {
        for alpha in all_maps(sq.right.domain, c) {
            for beta in all_maps(sq.bottom.domain, c) {
                let cocone = (0..sq.top.domain).all(|x| alpha.apply(sq.top.apply(x)) == beta.apply(sq.left.apply(x)));
                if !cocone {
                    continue;
                }
                let through = all_maps(sq.bottom.codomain, c)
                    .into_iter()
                    .filter(|phi| {
                        (0..alpha.domain).all(|a| phi.apply(sq.right.apply(a)) == alpha.apply(a))
                            && (0..beta.domain).all(|b| phi.apply(sq.bottom.apply(b)) == beta.apply(b))
                    })
                    .count();
                if through != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Checks that a perfect square (cartesian, four surjective sides) is a
/// pushout.
pub fn perfect_square_pushout(sq: &Square) -> Result<bool> {
    if !sq.is_cartesian()? {
        return Err(Error::Precondition("square is not cartesian".into()));
    }
    if !sq.sides_surjective() {
        return Err(Error::Precondition("square has a side that is not surjective".into()));
    }
    is_pushout(sq)
}

/// The two squares over the orbit map `B → Q` of a groupoid: the orbit
/// relation `R ⇉ B → Q`, cartesian and perfect, and the arrows
/// `G ⇉ B → Q` (source on top, target on the left), a pushout that is only
/// cartesian when `G` is principal.
#[derive(Clone, Debug)]
pub struct OrbitSquares {
    pub relation: Square,
    pub arrows: Square,
}

pub fn orbit_square(g: &Groupoid) -> OrbitSquares {
    let (orb, orbit_of) = orbits(g);
    let (n, q) = (g.object_count(), orb.len());
    let to_q = FinMap { domain: n, codomain: q, graph: orbit_of };
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|y| (0..n).map(move |x| (y, x))).filter(|&(y, x)| to_q.apply(y) == to_q.apply(x)).collect();
    let rel = |pick: fn(&(usize, usize)) -> usize| FinMap { domain: pairs.len(), codomain: n, graph: pairs.iter().map(pick).collect() };
    let relation = Square { top: rel(|p| p.1), left: rel(|p| p.0), right: to_q.clone(), bottom: to_q.clone() };
    let arr = |end: fn(&Groupoid, crate::groupoid::ArrowId) -> crate::groupoid::ObjectId| FinMap {
        domain: g.arrow_count(),
        codomain: n,
        graph: g.arrow_ids().map(|a| end(g, a).index()).collect(),
    };
    let arrows = Square { top: arr(Groupoid::src), left: arr(Groupoid::tgt), right: to_q.clone(), bottom: to_q };
    OrbitSquares { relation, arrows }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub max_size: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }
}

struct Tally {
    checks: Vec<AxiomCheck>,
}

impl Tally {
    fn run(&mut self, name: &'static str, cases: impl IntoIterator<Item = bool>) {
        let (mut checked, mut failures) = (0, 0);
        for ok in cases {
            checked += 1;
            failures += usize::from(!ok);
        }
        self.checks.push(AxiomCheck { name, checked, failures });
    }
}

/// Runs every axiom and consequence on all maps between sets of size at most
/// `max_size`.
pub fn check_axioms(max_size: usize) -> AxiomReport {
    let sizes = 0..=max_size;
    let maps: Vec<FinMap> = sizes.clone().flat_map(|n| sizes.clone().flat_map(move |m| all_maps(n, m))).collect();
    let from = |n: usize| maps.iter().filter(move |f| f.domain == n);
    let composable: Vec<(&FinMap, &FinMap)> =
        maps.iter().flat_map(|f| from(f.codomain).map(move |g| (f, g))).collect();
    let cospans: Vec<(&FinMap, &FinMap)> =
        maps.iter().flat_map(|f| maps.iter().filter(move |u| u.codomain == f.codomain).map(move |u| (f, u))).collect();
    let mut t = Tally { checks: Vec::new() };

    t.run("(1) injective and surjective iff invertible", maps.iter().map(|f| {
        let fl = f.flags();
        (fl.injective && fl.surjective) == f.inverse().is_some()
    }));
    t.run(
        "(2) products of injections and of surjections",
        maps.iter().flat_map(|f| maps.iter().map(move |g| (f, g))).map(|(f, g)| {
            let p = f.product(g);
            (!(f.is_injective() && g.is_injective()) || p.is_injective())
                && (!(f.is_surjective() && g.is_surjective()) || p.is_surjective())
        }),
    );
    t.run(
        "(3a) injections are monomorphisms",
        maps.iter().filter(|f| f.is_injective()).flat_map(|f| {
            sizes.clone().flat_map(move |c| {
                let xs = all_maps(c, f.domain);
                let mut out = Vec::new();
                for x in &xs {
                    for y in &xs {
                        let fx = f.after(x).expect("composable");
                        out.push(fx != f.after(y).expect("composable") || x == y);
                    }
                }
                out
            })
        }),
    );
    t.run(
        "(3b) surjections are strict epimorphisms",
        maps.iter().filter(|s| s.is_surjective()).flat_map(|s| {
            sizes.clone().flat_map(move |c| {
                all_maps(s.domain, c)
                    .into_iter()
                    .filter(|h| (0..s.domain).all(|a| (0..s.domain).all(|b| s.apply(a) != s.apply(b) || h.apply(a) == h.apply(b))))
                    .map(|h| all_maps(s.codomain, c).iter().filter(|g| g.after(s).expect("composable") == h).count() == 1)
                    .collect::<Vec<_>>()
            })
        }),
    );
    t.run(
        "(4a) gf injective implies f injective",
        composable.iter().map(|(f, g)| !g.after(f).expect("composable").is_injective() || f.is_injective()),
    );
    t.run(
        "(4b) gf and f surjective implies g surjective",
        composable.iter().map(|(f, g)| {
            !(g.after(f).expect("composable").is_surjective() && f.is_surjective()) || g.is_surjective()
        }),
    );
    t.run(
        "(5a) pullback of a surjection along an injection",
        cospans.iter().filter(|(s, i)| s.is_surjective() && i.is_injective()).map(|(s, i)| {
            let pb = good_pullback(s, i).expect("cospan");
            pb.square.left.is_surjective() && pb.square.top.is_injective()
        }),
    );
    t.run(
        "(5b) descent of injections",
        cospans.iter().filter(|(s, _)| s.is_surjective()).filter_map(|(s, j)| {
            let pb = good_pullback(s, j).expect("cospan");
            let hyp = pb.square.left.is_surjective() && pb.square.top.is_injective();
            hyp.then(|| j.is_injective())
        }),
    );
    t.run("graph of a map is injective", maps.iter().map(|f| f.graph_map().is_injective()));
    t.run(
        "pullback of a surjection along any map",
        cospans.iter().filter(|(s, _)| s.is_surjective()).map(|(s, u)| {
            good_pullback(s, u).expect("cospan").square.left.is_surjective()
        }),
    );
    t.run(
        "pullback of two surjections is perfect",
        cospans.iter().filter(|(s, u)| s.is_surjective() && u.is_surjective()).map(|(s, u)| {
            let sq = good_pullback(s, u).expect("cospan").square;
            sq.sides_surjective() && sq.is_cartesian().expect("commutes")
        }),
    );
    t.run(
        "perfect squares are pushouts",
        cospans.iter().filter(|(s, u)| s.is_surjective() && u.is_surjective()).map(|(s, u)| {
            perfect_square_pushout(&good_pullback(s, u).expect("cospan").square).unwrap_or(false)
        }),
    );
    t.run(
        "pullback comparison is injective",
        cospans.iter().map(|(f, u)| good_pullback(f, u).expect("cospan").comparison_injective),
    );
    AxiomReport { max_size, checks: t.checks }
}
