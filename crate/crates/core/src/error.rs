use std::fmt;

/// One violated groupoid axiom, with the witnessing elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateObject { object: String },
    DuplicateArrow { arrow: String },
    UnknownObject { context: String, object: String },
    UnknownArrow { context: String, arrow: String },
    UnitMissing { object: String },
    UnitDuplicate { object: String },
    UnitEndpoints { object: String, unit: String },
    InverseMissing { arrow: String },
    InverseDuplicate { arrow: String },
    CompositionNotComposable { left: String, right: String },
    CompositionMissing { left: String, right: String },
    CompositionConflict { left: String, right: String, first: String, second: String },
    CompositionEndpoints { left: String, right: String, result: String },
    LeftUnitLaw { arrow: String },
    RightUnitLaw { arrow: String },
    Associativity { a: String, b: String, c: String },
    InverseLaw { arrow: String },
    InverseInvolution { arrow: String },
}

impl Violation {
    /// Short stable name of the violated axiom.
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::DuplicateObject { .. } => "duplicate-object",
            Violation::DuplicateArrow { .. } => "duplicate-arrow",
            Violation::UnknownObject { .. } => "unknown-object",
            Violation::UnknownArrow { .. } => "unknown-arrow",
            Violation::UnitMissing { .. } => "unit-missing",
            Violation::UnitDuplicate { .. } => "unit-duplicate",
            Violation::UnitEndpoints { .. } => "unit-endpoints",
            Violation::InverseMissing { .. } => "inverse-missing",
            Violation::InverseDuplicate { .. } => "inverse-duplicate",
            Violation::CompositionNotComposable { .. } => "composition-domain",
            Violation::CompositionMissing { .. } => "composition-missing",
            Violation::CompositionConflict { .. } => "composition-conflict",
            Violation::CompositionEndpoints { .. } => "composition-endpoints",
            Violation::LeftUnitLaw { .. } => "left-unit-law",
            Violation::RightUnitLaw { .. } => "right-unit-law",
            Violation::Associativity { .. } => "associativity",
            Violation::InverseLaw { .. } => "inverse-law",
            Violation::InverseInvolution { .. } => "inverse-involution",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateObject { object } => write!(f, "duplicate object {object}"),
            Violation::DuplicateArrow { arrow } => write!(f, "duplicate arrow {arrow}"),
            Violation::UnknownObject { context, object } => {
                write!(f, "unknown object {object} in {context}")
            }
            Violation::UnknownArrow { context, arrow } => {
                write!(f, "unknown arrow {arrow} in {context}")
            }
            Violation::UnitMissing { object } => write!(f, "unit missing for object {object}"),
            Violation::UnitDuplicate { object } => {
                write!(f, "unit declared twice for object {object}")
            }
            Violation::UnitEndpoints { object, unit } => {
                write!(f, "unit {unit} of object {object} is not a loop at {object}")
            }
            Violation::InverseMissing { arrow } => write!(f, "inverse missing for arrow {arrow}"),
            Violation::InverseDuplicate { arrow } => {
                write!(f, "inverse declared twice for arrow {arrow}")
            }
            Violation::CompositionNotComposable { left, right } => {
                write!(f, "composition {left} ∘ {right} given for a non-composable pair")
            }
            Violation::CompositionMissing { left, right } => {
                write!(f, "composition missing for composable pair {left} ∘ {right}")
            }
            Violation::CompositionConflict { left, right, first, second } => write!(
                f,
                "composition {left} ∘ {right} given twice with results {first} and {second}"
            ),
            Violation::CompositionEndpoints { left, right, result } => write!(
                f,
                "composition {left} ∘ {right} = {result} has wrong endpoints"
            ),
            Violation::LeftUnitLaw { arrow } => write!(f, "left unit law violated at arrow {arrow}"),
            Violation::RightUnitLaw { arrow } => {
                write!(f, "right unit law violated at arrow {arrow}")
            }
            Violation::Associativity { a, b, c } => {
                write!(f, "associativity violated at triple ({a}, {b}, {c})")
            }
            Violation::InverseLaw { arrow } => write!(f, "inverse law violated at arrow {arrow}"),
            Violation::InverseInvolution { arrow } => {
                write!(f, "inverse is not an involution at arrow {arrow}")
            }
        }
    }
}

/// Every violation found while validating a groupoid description.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} groupoid axiom violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// One failed commutation square of a candidate functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    ObjectUnmapped { object: String },
    ArrowUnmapped { arrow: String },
    UnknownObject { object: String },
    UnknownArrow { arrow: String },
    UnknownImage { image: String },
    DuplicateEntry { key: String },
    SrcSquare { arrow: String },
    TgtSquare { arrow: String },
    UnitSquare { object: String },
    CompositionSquare { left: String, right: String },
    InverseSquare { arrow: String },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::ObjectUnmapped { object } => {
                write!(f, "object map undefined at {object}")
            }
            FunctorViolation::ArrowUnmapped { arrow } => write!(f, "arrow map undefined at {arrow}"),
            FunctorViolation::UnknownObject { object } => {
                write!(f, "object map mentions unknown source object {object}")
            }
            FunctorViolation::UnknownArrow { arrow } => {
                write!(f, "arrow map mentions unknown source arrow {arrow}")
            }
            FunctorViolation::UnknownImage { image } => {
                write!(f, "image {image} is not in the target")
            }
            FunctorViolation::DuplicateEntry { key } => write!(f, "map entry for {key} given twice"),
            FunctorViolation::SrcSquare { arrow } => write!(f, "src square violated at arrow {arrow}"),
            FunctorViolation::TgtSquare { arrow } => write!(f, "tgt square violated at arrow {arrow}"),
            FunctorViolation::UnitSquare { object } => {
                write!(f, "unit square violated at object {object}")
            }
            FunctorViolation::CompositionSquare { left, right } => {
                write!(f, "composition square violated at pair ({left}, {right})")
            }
            FunctorViolation::InverseSquare { arrow } => {
                write!(f, "inverse square violated at arrow {arrow}")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Groupoid(#[from] ValidationError),
    #[error("invalid functor:{}", list(.0))]
    Functor(Vec<FunctorViolation>),
    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("not an equivalence relation: {0}")]
    NotAnEquivalence(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("not transitive: no arrow from {from} to {to}")]
    NotTransitive { from: String, to: String },
    #[error("not a wide subgroupoid: {0}")]
    NotWideSubgroupoid(String),
    #[error("quotient not well-defined: classes [{left}] and [{right}] have composites {first} and {second} in different classes")]
    QuotientNotWellDefined { left: String, right: String, first: String, second: String },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid butterfly:{}", lines(.0))]
    InvalidButterfly(Vec<String>),
    #[error("invalid fraction: {0}")]
    InvalidFraction(String),
    #[error("{0}")]
    Precondition(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn list(items: &[FunctorViolation]) -> String {
    items.iter().map(|v| format!("\n  {v}")).collect()
}

fn lines(items: &[String]) -> String {
    items.iter().map(|v| format!("\n  {v}")).collect()
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
