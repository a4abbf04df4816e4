use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("Dynkin label {index} is negative ({value})")]
    NegativeLabel { index: usize, value: i64 },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("weights fail the integrality condition (congruence classes do not add up to zero)")]
    Integrality,
    #[error("triangle shapes differ")]
    ShapeMismatch,
    #[error("missing triangle entry {0}")]
    MissingEntry(crate::triangle::EntryKey),
    #[error("entry {0} does not belong to a rank-{1} triangle")]
    UnknownEntry(crate::triangle::EntryKey, usize),
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("hexagon condition violated at hexagon {hexagon}")]
    HexagonViolation { hexagon: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("virtual triangle stencil failed validation at hexagon {hexagon}")]
    InvalidStencil { hexagon: usize },
    #[error("inequality system is unbounded in variable `{0}`")]
    Unbounded(alloc::string::String),
    #[error("inequality has {found} coefficients but the system has {expected} variables")]
    CoefficientCount { expected: usize, found: usize },
    #[error("summation bound for `{variable}` refers to `{unbound}` before it is bound")]
    SummationOrder {
        variable: alloc::string::String,
        unbound: alloc::string::String,
    },
    #[error("triangle does not lie in the lattice of the given initial triangle")]
    NotInLattice,
    #[error("arithmetic overflow")]
    Overflow,
}
