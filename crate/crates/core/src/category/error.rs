use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("associativity fails for ({h}, {g}, {f}): {h}∘({g}∘{f}) = {left} but ({h}∘{g})∘{f} = {right}")]
    AssociativityViolation {
        h: String,
        g: String,
        f: String,
        left: String,
        right: String,
    },
    #[error("identity law fails at {morphism}: {detail}")]
    IdentityViolation { morphism: String, detail: String },
    #[error("functor law fails: {0}")]
    FunctorLawViolation(String),
    #[error("missing composite {g}∘{f}")]
    MissingComposite { g: String, f: String },
    #[error("composite {g}∘{f} = {gf} has the wrong source or target")]
    BadComposite { g: String, f: String, gf: String },
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("category too large: {objects} objects, {morphisms} morphisms (limits {max_objects}, {max_morphisms})")]
    TooLarge {
        objects: usize,
        morphisms: usize,
        max_objects: usize,
        max_morphisms: usize,
    },
    #[error("naturality fails: {0}")]
    NaturalityViolation(String),
    #[error("not a groupoid fibration: {0}")]
    NotGroupoidFibration(String),
    #[error("not a fibered category: {0}")]
    NotFibered(String),
    #[error("conditions B1/B2 not satisfied: {0}")]
    ConditionsNotSatisfied(String),
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
    #[error("validation failed: {0}")]
    ValidationFailure(String),
    #[error("cannot load fixture {path}: {reason}")]
    Fixture { path: String, reason: String },
    #[error("invalid bounds specification {0:?}")]
    InvalidBounds(String),
}

pub type Result<T> = std::result::Result<T, CategoryError>;
