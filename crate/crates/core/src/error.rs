use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants carry enough context (labels, witnesses) for the caller to act
/// on the failure without re-running the check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("poset has no points")]
    EmptyPoset,
    #[error("poset has {points} points, the configured limit is {limit}")]
    TooManyPoints { points: usize, limit: usize },
    #[error("label `{0}` is declared twice")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("order relation has a cycle: {}", .0.join(" <= "))]
    CycleDetected(Vec<String>),
    #[error("values live over different posets")]
    MixedPosets,
    #[error("{{{}}} is not a downset", .0.join(","))]
    NotADownset(Vec<String>),

    #[error("lattice table is malformed: {0}")]
    MalformedTable(String),
    #[error("operation tables violate the {law} law at {witness:?}")]
    NotALattice {
        law: &'static str,
        witness: Vec<usize>,
    },
    #[error("lattice is not distributive at {witness:?}")]
    NotDistributive { witness: [usize; 3] },
    #[error("declared zero/one are not the bounds of the lattice")]
    NotBounded,
    #[error("lattice has a single element (0 = 1)")]
    ZeroEqualsOne,

    #[error("family does not join to the top element")]
    NotACover,
    #[error("element {{{}}} is not proper maximal", .0.join(","))]
    NotProperMaximal(Vec<String>),
    #[error("input elements are not pairwise distinct")]
    DuplicateInputs,

    #[error("point map is not an order automorphism: {0}")]
    NotOrderAutomorphism(String),
    #[error("point map is not monotone: {0}")]
    NotMonotone(String),
    #[error("morphism is not an endomorphism of one lattice")]
    NotEndomorphism,
    #[error("map does not come from a unital lattice morphism: {0}")]
    NotUnitalMorphism(String),
    #[error("iteration depth must be non-negative")]
    NegativeDepth,
    #[error("wedge trajectory did not stabilize within {0} steps")]
    NotStabilized(usize),
    #[error("cover is not an expansivity cover")]
    NotExpansivityCover,
    #[error("the square of the cover is not an expansivity cover")]
    SquareNotExpansivityCover,
    #[error("cover is not a positive expansivity cover")]
    NotPositiveExpansivityCover,
    #[error("automorphism is not positively expansive")]
    NotPositivelyExpansive,
    #[error("automorphism is not expansive")]
    NotExpansive,
    #[error("lattice has more than {cap} elements")]
    SearchCapExceeded { cap: usize },

    #[error("symbol order is not lower complete: {{{}}} has no greatest lower bound", .witness.join(","))]
    NotLowerComplete { witness: Vec<String> },
    #[error("word lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("enumeration needs {needed} words, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("cylinder window [{lo}, {hi}] is not symmetric about 0")]
    WindowNotSymmetric { lo: i64, hi: i64 },

    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("map is not continuous: preimage of {{{}}} is not open", .0.join(","))]
    NotContinuous(Vec<String>),
    #[error("map is not a homeomorphism: {0}")]
    NotHomeomorphism(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyPoset => "EmptyPoset",
            Error::TooManyPoints { .. } => "TooManyPoints",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::CycleDetected(_) => "CycleDetected",
            Error::MixedPosets => "MixedPosets",
            Error::NotADownset(_) => "NotADownset",
            Error::MalformedTable(_) => "MalformedTable",
            Error::NotALattice { .. } => "NotALattice",
            Error::NotDistributive { .. } => "NotDistributive",
            Error::NotBounded => "NotBounded",
            Error::ZeroEqualsOne => "ZeroEqualsOne",
            Error::NotACover => "NotACover",
            Error::NotProperMaximal(_) => "NotProperMaximal",
            Error::DuplicateInputs => "DuplicateInputs",
            Error::NotOrderAutomorphism(_) => "NotOrderAutomorphism",
            Error::NotMonotone(_) => "NotMonotone",
            Error::NotEndomorphism => "NotEndomorphism",
            Error::NotUnitalMorphism(_) => "NotUnitalMorphism",
            Error::NegativeDepth => "NegativeDepth",
            Error::NotStabilized(_) => "NotStabilized",
            Error::NotExpansivityCover => "NotExpansivityCover",
            Error::SquareNotExpansivityCover => "SquareNotExpansivityCover",
            Error::NotPositiveExpansivityCover => "NotPositiveExpansivityCover",
            Error::NotPositivelyExpansive => "NotPositivelyExpansive",
            Error::NotExpansive => "NotExpansive",
            Error::SearchCapExceeded { .. } => "SearchCapExceeded",
            Error::NotLowerComplete { .. } => "NotLowerComplete",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::WindowNotSymmetric { .. } => "WindowNotSymmetric",
            Error::NotATopology(_) => "NotATopology",
            Error::NotContinuous(_) => "NotContinuous",
            Error::NotHomeomorphism(_) => "NotHomeomorphism",
        }
    }

    /// True for failures caused by a search or enumeration budget rather
    /// than by the input itself.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::SearchCapExceeded { .. }
                | Error::BudgetExceeded { .. }
                | Error::NotStabilized(_)
        )
    }
}
