use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} exceeds cap: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("element {0} is not in the group")]
    ElementNotInGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),
    #[error("order relation is not a lattice: {0}")]
    NotALattice(String),
    #[error("no suitable prime found for the character table")]
    NoSuitablePrime,
    #[error("fixed-point dimension residue {residue} has no lift in [0, {degree}]")]
    LiftOutOfRange { residue: u64, degree: u64 },
    #[error("interval is not distributive")]
    NotDistributive,
    #[error("witness verification failed: {0}")]
    WitnessVerificationFailed(String),
    #[error("no admissible chain from the trivial subgroup to the group")]
    NoChain,
    #[error("2-boxes belong to different groups")]
    GroupMismatch,
    #[error("2-box is not positive")]
    NotPositive,
    #[error("2-box is zero")]
    Zero,
    #[error("2-box is not a biprojection")]
    NotBiprojection,
    #[error("fusion axiom violated: {kind} at {indices:?}")]
    AxiomViolation { kind: String, indices: Vec<usize> },
    #[error("Frobenius-Perron dimensions are not integral: {0:?}")]
    NonIntegralDims(Vec<f64>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
