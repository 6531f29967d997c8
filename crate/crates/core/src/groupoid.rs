//! The finite groupoid data model.
//!
//! A [`Groupoid`] stores its objects and arrows as opaque string labels and
//! keeps every structure map as an explicit table: source, target, unit,
//! inverse, and the composition on composable pairs. Values are immutable once
//! built; the only way in from untrusted data is [`Groupoid::validate`].

use std::collections::HashMap;
use std::fmt;

use crate::document::GroupoidDocument;
use crate::error::{ValidationError, Violation};

/// Index of an object inside one [`Groupoid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(u32);

/// Index of an arrow inside one [`Groupoid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(u32);

impl ObjectId {
    pub fn new(index: usize) -> Self {
        ObjectId(u32::try_from(index).expect("object index overflow"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArrowId {
    pub fn new(index: usize) -> Self {
        ArrowId(u32::try_from(index).expect("arrow index overflow"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const UNDEFINED: u32 = u32::MAX;

/// A finite groupoid with explicit structure tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Groupoid {
    objects: Vec<String>,
    arrows: Vec<String>,
    src: Vec<ObjectId>,
    tgt: Vec<ObjectId>,
    unit: Vec<ArrowId>,
    inv: Vec<ArrowId>,
    /// Arrows ending at each object, in arrow order.
    incoming: Vec<Vec<ArrowId>>,
    /// Arrows leaving each object, in arrow order.
    outgoing: Vec<Vec<ArrowId>>,
    /// Position of each arrow in `outgoing[src]` and `incoming[tgt]`.
    slot: Vec<(u32, u32)>,
    /// Per object `b`, a row-major `|outgoing[b]| x |incoming[b]|` block:
    /// entry `(g, h)` holds `g ∘ h`.
    comp: Vec<Vec<u32>>,
    object_index: HashMap<String, ObjectId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl fmt::Debug for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Groupoid")
            .field("objects", &self.objects)
            .field("arrows", &self.arrows)
            .finish_non_exhaustive()
    }
}

/// Endpoint and incidence tables shared by the validator and the trusted
/// constructor.
struct Incidence {
    incoming: Vec<Vec<ArrowId>>,
    outgoing: Vec<Vec<ArrowId>>,
    slot: Vec<(u32, u32)>,
}

impl Incidence {
    fn new(object_count: usize, src: &[ObjectId], tgt: &[ObjectId]) -> Self {
        let mut incoming = vec![Vec::new(); object_count];
        let mut outgoing = vec![Vec::new(); object_count];
        let mut slot = Vec::with_capacity(src.len());
        for (i, (&s, &t)) in src.iter().zip(tgt).enumerate() {
            let a = ArrowId::new(i);
            slot.push((outgoing[s.index()].len() as u32, incoming[t.index()].len() as u32));
            outgoing[s.index()].push(a);
            incoming[t.index()].push(a);
        }
        Incidence { incoming, outgoing, slot }
    }

    fn empty_table(&self) -> Vec<Vec<u32>> {
        self.outgoing
            .iter()
            .zip(&self.incoming)
            .map(|(o, i)| vec![UNDEFINED; o.len() * i.len()])
            .collect()
    }
}

fn index_labels<T: Copy>(labels: &[String], make: impl Fn(usize) -> T) -> HashMap<String, T> {
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), make(i)))
        .collect()
}

impl Groupoid {
    /// Builds a groupoid from tables that are known to satisfy the axioms.
    ///
    /// `compose(g, h)` is called once for every composable pair
    /// (`src(g) == tgt(h)`) and must return `g ∘ h`.
    pub(crate) fn assemble(
        objects: Vec<String>,
        arrows: Vec<String>,
        src: Vec<ObjectId>,
        tgt: Vec<ObjectId>,
        unit: Vec<ArrowId>,
        inv: Vec<ArrowId>,
        mut compose: impl FnMut(ArrowId, ArrowId) -> ArrowId,
    ) -> Groupoid {
        debug_assert_eq!(arrows.len(), src.len());
        debug_assert_eq!(arrows.len(), tgt.len());
        debug_assert_eq!(objects.len(), unit.len());
        debug_assert_eq!(arrows.len(), inv.len());
        let inc = Incidence::new(objects.len(), &src, &tgt);
        let mut comp = inc.empty_table();
        for b in 0..objects.len() {
            let width = inc.incoming[b].len();
            for (i, &g) in inc.outgoing[b].iter().enumerate() {
                for (j, &h) in inc.incoming[b].iter().enumerate() {
                    comp[b][i * width + j] = compose(g, h).0;
                }
            }
        }
        let object_index = index_labels(&objects, ObjectId::new);
        let arrow_index = index_labels(&arrows, ArrowId::new);
        debug_assert_eq!(object_index.len(), objects.len(), "duplicate object labels");
        debug_assert_eq!(arrow_index.len(), arrows.len(), "duplicate arrow labels");
        Groupoid {
            objects,
            arrows,
            src,
            tgt,
            unit,
            inv,
            incoming: inc.incoming,
            outgoing: inc.outgoing,
            slot: inc.slot,
            comp,
            object_index,
            arrow_index,
        }
    }

    /// The groupoid with no objects and no arrows.
    pub fn empty() -> Groupoid {
        Groupoid::assemble(vec![], vec![], vec![], vec![], vec![], vec![], |_, _| {
            unreachable!()
        })
    }

    /// Validates a raw description, reporting every violated axiom.
    pub fn validate(doc: &GroupoidDocument) -> Result<Groupoid, ValidationError> {
        let mut violations = Vec::new();

        let mut object_index = HashMap::new();
        let mut objects = Vec::new();
        for o in &doc.objects {
            if object_index.contains_key(o) {
                violations.push(Violation::DuplicateObject { object: o.clone() });
            } else {
                object_index.insert(o.clone(), ObjectId::new(objects.len()));
                objects.push(o.clone());
            }
        }

        // Arrows with unknown endpoints are dropped after being reported so
        // that the law checks below only see total data.
        let mut arrow_index = HashMap::new();
        let mut arrows = Vec::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        for rec in &doc.arrows {
            if arrow_index.contains_key(&rec.id) {
                violations.push(Violation::DuplicateArrow { arrow: rec.id.clone() });
                continue;
            }
            let s = object_index.get(&rec.src).copied();
            let t = object_index.get(&rec.tgt).copied();
            for (end, found) in [(&rec.src, s), (&rec.tgt, t)] {
                if found.is_none() {
                    violations.push(Violation::UnknownObject {
                        context: format!("endpoint of arrow {}", rec.id),
                        object: end.clone(),
                    });
                }
            }
            if let (Some(s), Some(t)) = (s, t) {
                arrow_index.insert(rec.id.clone(), ArrowId::new(arrows.len()));
                arrows.push(rec.id.clone());
                src.push(s);
                tgt.push(t);
            }
        }

        let lookup_arrow = |id: &str, context: &str, violations: &mut Vec<Violation>| {
            let found = arrow_index.get(id).copied();
            if found.is_none() {
                violations.push(Violation::UnknownArrow {
                    context: context.to_string(),
                    arrow: id.to_string(),
                });
            }
            found
        };

        let mut unit: Vec<Option<ArrowId>> = vec![None; objects.len()];
        for (o, a) in &doc.units {
            let Some(&b) = object_index.get(o) else {
                violations.push(Violation::UnknownObject {
                    context: "unit declaration".into(),
                    object: o.clone(),
                });
                continue;
            };
            let Some(u) = lookup_arrow(a, &format!("unit of object {o}"), &mut violations) else {
                continue;
            };
            if unit[b.index()].is_some() {
                violations.push(Violation::UnitDuplicate { object: o.clone() });
                continue;
            }
            unit[b.index()] = Some(u);
            if src[u.index()] != b || tgt[u.index()] != b {
                violations.push(Violation::UnitEndpoints { object: o.clone(), unit: a.clone() });
            }
        }
        for (b, u) in unit.iter().enumerate() {
            if u.is_none() {
                violations.push(Violation::UnitMissing { object: objects[b].clone() });
            }
        }

        let mut inv: Vec<Option<ArrowId>> = vec![None; arrows.len()];
        for (a, i) in &doc.inverses {
            let Some(g) = lookup_arrow(a, "inverse declaration", &mut violations) else {
                continue;
            };
            let Some(gi) = lookup_arrow(i, &format!("inverse of arrow {a}"), &mut violations) else {
                continue;
            };
            if inv[g.index()].is_some() {
                violations.push(Violation::InverseDuplicate { arrow: a.clone() });
                continue;
            }
            inv[g.index()] = Some(gi);
        }
        for (g, i) in inv.iter().enumerate() {
            if i.is_none() {
                violations.push(Violation::InverseMissing { arrow: arrows[g].clone() });
            }
        }

        let inc = Incidence::new(objects.len(), &src, &tgt);
        let mut comp = inc.empty_table();
        for (l, r, res) in &doc.compose {
            let ctx = format!("composition {l} ∘ {r}");
            let g = lookup_arrow(l, &ctx, &mut violations);
            let h = lookup_arrow(r, &ctx, &mut violations);
            let k = lookup_arrow(res, &ctx, &mut violations);
            let (Some(g), Some(h), Some(k)) = (g, h, k) else { continue };
            if src[g.index()] != tgt[h.index()] {
                violations.push(Violation::CompositionNotComposable {
                    left: l.clone(),
                    right: r.clone(),
                });
                continue;
            }
            let b = src[g.index()].index();
            let width = inc.incoming[b].len();
            let cell = inc.slot[g.index()].0 as usize * width + inc.slot[h.index()].1 as usize;
            let existing = comp[b][cell];
            if existing != UNDEFINED {
                if existing != k.0 {
                    violations.push(Violation::CompositionConflict {
                        left: l.clone(),
                        right: r.clone(),
                        first: arrows[existing as usize].clone(),
                        second: res.clone(),
                    });
                }
                continue;
            }
            comp[b][cell] = k.0;
            if src[k.index()] != src[h.index()] || tgt[k.index()] != tgt[g.index()] {
                violations.push(Violation::CompositionEndpoints {
                    left: l.clone(),
                    right: r.clone(),
                    result: res.clone(),
                });
            }
        }
        for b in 0..objects.len() {
            let width = inc.incoming[b].len();
            for (i, &g) in inc.outgoing[b].iter().enumerate() {
                for (j, &h) in inc.incoming[b].iter().enumerate() {
                    if comp[b][i * width + j] == UNDEFINED {
                        violations.push(Violation::CompositionMissing {
                            left: arrows[g.index()].clone(),
                            right: arrows[h.index()].clone(),
                        });
                    }
                }
            }
        }

        let partial = PartialTables { src: &src, tgt: &tgt, unit: &unit, inv: &inv, inc: &inc, comp: &comp };
        partial.check_laws(&arrows, &mut violations);

        if !violations.is_empty() {
            return Err(ValidationError { violations });
        }
        let unit = unit.into_iter().map(Option::unwrap).collect();
        let inv = inv.into_iter().map(Option::unwrap).collect();
        let arrow_index = index_labels(&arrows, ArrowId::new);
        Ok(Groupoid {
            objects,
            arrows,
            src,
            tgt,
            unit,
            inv,
            incoming: inc.incoming,
            outgoing: inc.outgoing,
            slot: inc.slot,
            comp,
            object_index,
            arrow_index,
        })
    }

    /// Re-runs every law check on an already built value. Constructions in
    /// this crate are expected to always return an empty list.
    pub fn axiom_violations(&self) -> Vec<Violation> {
        let unit: Vec<Option<ArrowId>> = self.unit.iter().copied().map(Some).collect();
        let inv: Vec<Option<ArrowId>> = self.inv.iter().copied().map(Some).collect();
        let inc = Incidence {
            incoming: self.incoming.clone(),
            outgoing: self.outgoing.clone(),
            slot: self.slot.clone(),
        };
        let mut violations = Vec::new();
        for (b, &u) in self.unit.iter().enumerate() {
            if self.src[u.index()].index() != b || self.tgt[u.index()].index() != b {
                violations.push(Violation::UnitEndpoints {
                    object: self.objects[b].clone(),
                    unit: self.arrows[u.index()].clone(),
                });
            }
        }
        for g in self.arrow_ids() {
            for h in self.incoming(self.src(g)) {
                let k = self.mul(g, *h);
                if self.src(k) != self.src(*h) || self.tgt(k) != self.tgt(g) {
                    violations.push(Violation::CompositionEndpoints {
                        left: self.arrow_label(g).to_string(),
                        right: self.arrow_label(*h).to_string(),
                        result: self.arrow_label(k).to_string(),
                    });
                }
            }
        }
        let partial = PartialTables {
            src: &self.src,
            tgt: &self.tgt,
            unit: &unit,
            inv: &inv,
            inc: &inc,
            comp: &self.comp,
        };
        partial.check_laws(&self.arrows, &mut violations);
        violations
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_ids(&self) -> impl ExactSizeIterator<Item = ObjectId> + Clone {
        (0..self.objects.len()).map(ObjectId::new)
    }

    pub fn arrow_ids(&self) -> impl ExactSizeIterator<Item = ArrowId> + Clone {
        (0..self.arrows.len()).map(ArrowId::new)
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow_labels(&self) -> &[String] {
        &self.arrows
    }

    pub fn object_label(&self, b: ObjectId) -> &str {
        &self.objects[b.index()]
    }

    pub fn arrow_label(&self, g: ArrowId) -> &str {
        &self.arrows[g.index()]
    }

    pub fn object(&self, label: &str) -> Option<ObjectId> {
        self.object_index.get(label).copied()
    }

    pub fn arrow(&self, label: &str) -> Option<ArrowId> {
        self.arrow_index.get(label).copied()
    }

    pub fn src(&self, g: ArrowId) -> ObjectId {
        self.src[g.index()]
    }

    pub fn tgt(&self, g: ArrowId) -> ObjectId {
        self.tgt[g.index()]
    }

    pub fn unit(&self, b: ObjectId) -> ArrowId {
        self.unit[b.index()]
    }

    pub fn inv(&self, g: ArrowId) -> ArrowId {
        self.inv[g.index()]
    }

    pub fn is_unit(&self, g: ArrowId) -> bool {
        self.unit(self.src(g)) == g
    }

    /// The anchor `g ↦ (tgt g, src g)`.
    pub fn anchor(&self, g: ArrowId) -> (ObjectId, ObjectId) {
        (self.tgt(g), self.src(g))
    }

    /// `g ∘ h`, defined iff `src(g) == tgt(h)`.
    pub fn compose(&self, g: ArrowId, h: ArrowId) -> Option<ArrowId> {
        let b = self.src(g);
        if b != self.tgt(h) {
            return None;
        }
        Some(self.mul_unchecked(b, g, h))
    }

    /// `g ∘ h` for a pair known to be composable.
    ///
    /// Panics if `src(g) != tgt(h)`.
    pub fn mul(&self, g: ArrowId, h: ArrowId) -> ArrowId {
        let b = self.src(g);
        assert_eq!(
            b,
            self.tgt(h),
            "arrows {} and {} are not composable",
            self.arrow_label(g),
            self.arrow_label(h)
        );
        self.mul_unchecked(b, g, h)
    }

    fn mul_unchecked(&self, b: ObjectId, g: ArrowId, h: ArrowId) -> ArrowId {
        let width = self.incoming[b.index()].len();
        let cell = self.slot[g.index()].0 as usize * width + self.slot[h.index()].1 as usize;
        ArrowId(self.comp[b.index()][cell])
    }

    /// Division `y · x⁻¹`, defined iff `src(y) == src(x)`.
    pub fn divide(&self, y: ArrowId, x: ArrowId) -> Option<ArrowId> {
        self.compose(y, self.inv(x))
    }

    /// Arrows whose target is `b`.
    pub fn incoming(&self, b: ObjectId) -> &[ArrowId] {
        &self.incoming[b.index()]
    }

    /// Arrows whose source is `b`.
    pub fn outgoing(&self, b: ObjectId) -> &[ArrowId] {
        &self.outgoing[b.index()]
    }

    /// Arrows from `a` to `b`.
    pub fn hom(&self, a: ObjectId, b: ObjectId) -> impl Iterator<Item = ArrowId> + '_ {
        self.outgoing[a.index()].iter().copied().filter(move |&g| self.tgt(g) == b)
    }

    /// The isotropy group at `b`, as a list of arrows.
    pub fn isotropy(&self, b: ObjectId) -> Vec<ArrowId> {
        self.hom(b, b).collect()
    }

    /// Looks up both labels of a composable pair and composes them.
    pub fn compose_labels(&self, g: &str, h: &str) -> Option<&str> {
        let k = self.compose(self.arrow(g)?, self.arrow(h)?)?;
        Some(self.arrow_label(k))
    }

    /// Iterates over every composable pair `(g, h)` with `src(g) == tgt(h)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (ArrowId, ArrowId)> + '_ {
        self.object_ids().flat_map(move |b| {
            self.outgoing(b)
                .iter()
                .flat_map(move |&g| self.incoming(b).iter().map(move |&h| (g, h)))
        })
    }

    pub fn composable_pair_count(&self) -> usize {
        self.object_ids()
            .map(|b| self.outgoing(b).len() * self.incoming(b).len())
            .sum()
    }
}

/// Possibly incomplete tables, checked law by law. Entries that are missing
/// have already been reported and are skipped here.
struct PartialTables<'a> {
    src: &'a [ObjectId],
    tgt: &'a [ObjectId],
    unit: &'a [Option<ArrowId>],
    inv: &'a [Option<ArrowId>],
    inc: &'a Incidence,
    comp: &'a [Vec<u32>],
}

impl PartialTables<'_> {
    fn get(&self, g: ArrowId, h: ArrowId) -> Option<ArrowId> {
        let b = self.src[g.index()];
        if b != self.tgt[h.index()] {
            return None;
        }
        let width = self.inc.incoming[b.index()].len();
        let cell = self.inc.slot[g.index()].0 as usize * width + self.inc.slot[h.index()].1 as usize;
        let v = self.comp[b.index()][cell];
        (v != UNDEFINED).then_some(ArrowId(v))
    }

    fn check_laws(&self, labels: &[String], violations: &mut Vec<Violation>) {
        let label = |g: ArrowId| labels[g.index()].clone();
        let n = self.src.len();
        for g in (0..n).map(ArrowId::new) {
            if let Some(u) = self.unit[self.src[g.index()].index()] {
                if let Some(r) = self.get(g, u) {
                    if r != g {
                        violations.push(Violation::RightUnitLaw { arrow: label(g) });
                    }
                }
            }
            if let Some(u) = self.unit[self.tgt[g.index()].index()] {
                if let Some(r) = self.get(u, g) {
                    if r != g {
                        violations.push(Violation::LeftUnitLaw { arrow: label(g) });
                    }
                }
            }
            if let Some(gi) = self.inv[g.index()] {
                let ok_right = match (self.get(g, gi), self.unit[self.tgt[g.index()].index()]) {
                    (Some(r), Some(u)) => r == u,
                    (None, _) => false,
                    (Some(_), None) => true,
                };
                let ok_left = match (self.get(gi, g), self.unit[self.src[g.index()].index()]) {
                    (Some(r), Some(u)) => r == u,
                    (None, _) => false,
                    (Some(_), None) => true,
                };
                if !(ok_left && ok_right) {
                    violations.push(Violation::InverseLaw { arrow: label(g) });
                }
                if let Some(gii) = self.inv[gi.index()] {
                    if gii != g {
                        violations.push(Violation::InverseInvolution { arrow: label(g) });
                    }
                }
            }
        }
        for b in 0..self.inc.outgoing.len() {
            for &a in &self.inc.outgoing[b] {
                for &m in &self.inc.incoming[b] {
                    let Some(am) = self.get(a, m) else { continue };
                    for &c in &self.inc.incoming[self.src[m.index()].index()] {
                        let (Some(mc), Some(left)) = (self.get(m, c), self.get(am, c)) else {
                            continue;
                        };
                        let Some(right) = self.get(a, mc) else { continue };
                        if left != right {
                            violations.push(Violation::Associativity {
                                a: label(a),
                                b: label(m),
                                c: label(c),
                            });
                        }
                    }
                }
            }
        }
    }
}
