use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors across both regimes. Budget overruns carry the cap that was hit so
/// callers can report "skipped, budget" rather than guessing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("image array is not a bijection on 0..{degree}")]
    NotAPermutation { degree: usize },

    #[error("group order {order} exceeds enumeration cap {cap}")]
    EnumerationCap { order: String, cap: usize },

    #[error("subgroup lattice exceeds node budget {cap}")]
    LatticeNodeBudget { cap: usize },

    #[error("search exceeded node budget {cap}")]
    SearchBudget { cap: u64 },

    #[error("coset enumeration exceeds cap {cap}")]
    CosetCap { cap: usize },

    #[error("subgroup is not normal in the parent group")]
    NotNormal,

    #[error("claimed subgroup is not a subgroup of the parent group")]
    NotASubgroup,

    #[error("subgroup nodes belong to different lattices")]
    MixedParents,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sequence is not irredundant")]
    NotIrredundant,

    #[error("sequence does not generate the group")]
    NotGenerating,

    #[error("family is not in general position")]
    NotGeneralPosition,

    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),

    #[error("declared family member {0} is not maximal")]
    MemberNotMaximal(usize),

    #[error("no admissible prime below {bound}")]
    NoAdmissiblePrime { bound: u64 },

    #[error("Sylow {p}-subgroup is not normal")]
    SylowNotNormal { p: u64 },

    #[error("no complement of the required order found in the lattice")]
    NoComplement,

    #[error("projection pair ({i}, {j}) is neither full nor of diagonal type")]
    NotDiagonalDichotomy { i: usize, j: usize },

    #[error("group is not a subdirect product of the declared factors")]
    NotSubdirect,

    #[error("no simultaneous eigenbasis over F_{p} (hypothesis violated)")]
    NoEigenbasis { p: u64 },

    #[error("unsupported base group for this operation: {0}")]
    UnsupportedBase(String),
}
