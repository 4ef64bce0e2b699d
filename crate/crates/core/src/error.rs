use thiserror::Error;

/// Errors raised while building or querying posets, complexes, logics and
/// differential structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element names must be non-empty")]
    EmptyName,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("`{0}` cannot cover itself")]
    SelfCover(String),
    #[error("cover relation has a cycle through `{0}`")]
    Cycle(String),
    #[error("`{lower}` < `{upper}` is not a cover: `{via}` lies strictly between")]
    NotACover {
        lower: String,
        upper: String,
        via: String,
    },
    #[error("poset has {size} elements, exceeding the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("`{lower}` is not below `{upper}`")]
    Incomparable { lower: String, upper: String },
    #[error(
        "poset is not Jordan-Hölder: maximal chains from `{lower}` to `{upper}` differ in length"
    )]
    NotJordanHolder { lower: String, upper: String },
    #[error("operands live over different posets")]
    SpaceMismatch,
    #[error("index {index} is out of range for a space of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("empty simplex")]
    EmptySimplex,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("complex is not downward closed: face {0} is missing")]
    MissingFace(String),
    #[error("{0} is not a simplex of the complex")]
    NotASimplex(String),
    #[error("block {index} must have at least two distinct atoms")]
    DegenerateBlock { index: usize },
    #[error("blocks {first} and {second} are identical")]
    DuplicateBlock { first: usize, second: usize },
    #[error("blocks {first} and {second} share atoms {{{}}}; pasted blocks may share at most one atom", shared.join(","))]
    PastingViolation {
        first: usize,
        second: usize,
        shared: Vec<String>,
    },
    #[error("element `{element}` has no representation in block {block}")]
    NotInBlock { element: String, block: usize },
    #[error("`{lower}` and `{upper}` have inconsistent block degrees")]
    InconsistentBlockDegree { lower: String, upper: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex order does not list exactly the vertices of the input: {0}")]
    BadVertexOrder(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
