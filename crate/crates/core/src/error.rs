use thiserror::Error;

/// Errors raised while building or validating grading groups and algebras.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("group law failure: {0}")]
    GroupLaw(String),

    #[error("multiplication is not associative on basis triple ({a}, {b}, {c})")]
    NonAssociative { a: String, b: String, c: String },

    #[error("product {left}*{right} violates degree additivity")]
    DegreeViolation { left: String, right: String },

    #[error("radical span is not a two-sided ideal: {witness}")]
    RadicalNotIdeal { witness: String },

    #[error("radical span is not nilpotent")]
    RadicalNotNilpotent,

    #[error("component {component} does not match the structure constants of its descriptor: {detail}")]
    ComponentMismatch { component: String, detail: String },

    #[error("component spans do not pairwise annihilate: {left}*{right} != 0")]
    ComponentsNotOrthogonal { left: String, right: String },

    #[error("grading groups of the operands differ")]
    GradingGroupMismatch,

    #[error("matching does not pair isomorphic components: {0}")]
    NonIsomorphicMatching(String),

    #[error("invalid sign cocycle: {0}")]
    InvalidCocycle(String),

    #[error("elementary grading signature is empty")]
    EmptySignature,

    #[error("unknown degree label {0}")]
    UnknownDegree(String),

    #[error("{0}")]
    Invalid(String),
}

/// Errors raised by formal polynomial manipulation.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("alternation/symmetrization set mixes degrees")]
    MixedDegreeSet,

    #[error("set member {0} is not a variable of the polynomial")]
    UnknownVariable(String),

    #[error("substitution introduces a colliding variable id {0}")]
    VariableCollision(String),

    #[error("grading group has no Z2 factorization")]
    NoParity,

    #[error("expansion exceeds the term budget ({terms} terms > {budget})")]
    TermBudgetExceeded { terms: usize, budget: usize },

    #[error("monomial is not multilinear: {0}")]
    NotMultilinear(String),

    #[error("pending operator sets overlap; expand first")]
    OverlappingOps,

    #[error("{0}")]
    Invalid(String),
}

/// Errors raised by the brute-force evaluation engines.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("assignment does not cover variable {0}")]
    IncompleteAssignment(String),

    #[error("variable {var} of degree {degree} was assigned a basis element of different degree")]
    DegreeMismatch { var: String, degree: String },

    #[error("budget exceeded: {what} ({count} > {budget})")]
    BudgetExceeded {
        what: &'static str,
        count: u128,
        budget: u128,
    },

    #[error("envelope truncation {n} is too small for a degree-{d} check")]
    TruncationTooSmall { n: usize, d: usize },

    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors raised by the polynomial constructions.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("algebra is not full")]
    NotFull,

    #[error("seed polynomial is not weakly full of the target algebra")]
    NotWeaklyFull,

    #[error("k = {k} does not exceed the required bound {bound}")]
    KTooSmall { k: usize, bound: usize },

    #[error("target {0} covers the source profile; no vanisher exists")]
    TargetCovers(usize),

    #[error("no e-central polynomial supplied or found for component {0}")]
    MissingCentral(usize),

    #[error("no multilinear e-central polynomial found up to degree {0}")]
    NotFoundUpToDegree(usize),

    #[error("property (1) fails for permutation {0}")]
    PropertyOneViolated(String),

    #[error("property (2) fails: {0}")]
    PropertyTwoViolated(String),

    #[error("polynomial does not separate the pair (identity of B, nonidentity of A required)")]
    NotSeparating,

    #[error("no admissible witness with idempotent-proportional value")]
    NoIdempotentWitness,

    #[error("pinning monomial has non-unique nonzero extension")]
    PinningFailed,

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error(transparent)]
    Poly(#[from] PolyError),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors raised by the reduction pipeline.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("partner presentation is not PI-equivalent up to the working degree")]
    NotEquivalentPresentation,

    #[error("component {i} of the pair is not a direct summand of component {j}")]
    NoSummandMatching { i: usize, j: usize },

    #[error("counter failed to decrease across a non-identity operation (bug)")]
    DescentViolation,

    #[error("mutual covering between unequal profiles (bug)")]
    AntisymmetryViolation,

    #[error("presentation member {0} is not full")]
    MemberNotFull(usize),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error(transparent)]
    Construct(#[from] ConstructError),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors raised while parsing spec documents.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: {source}")]
    Algebra {
        line: usize,
        #[source]
        source: AlgebraError,
    },

    #[error("document is empty")]
    Empty,
}

impl ParseError {
    pub fn syntax(line: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            msg: msg.into(),
        }
    }
}
