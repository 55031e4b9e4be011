use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("element shape {found} does not match ambient dimension {expected}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("invalid torsion moduli {0:?}: each must be >= 2 and divide the next")]
    InvalidTorsion(Vec<i64>),
    #[error("monoid is not sharp")]
    NotSharp,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("lattice must be torsion free")]
    TorsionLattice,
    #[error("not an integral monomorphism: {0}")]
    NotIntegralMono(String),
    #[error("element is not a member of the monoid")]
    NotMember,
    #[error("generator image {index} is not in the codomain")]
    ImageNotInCodomain { index: usize },
    #[error("matrix does not define a homomorphism of ambient groups: {0}")]
    BadMatrix(String),
    #[error("wrong cokernel class: expected {expected}, found {found}")]
    WrongCokernelClass { expected: &'static str, found: String },
    #[error("nilpotents present (p = {p:?}, n = {n})")]
    NilpotentsPresent { p: Vec<i64>, n: u32 },
    #[error("submonoid is not a face")]
    NotAFace,
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, MonoidError>;
