use thiserror::Error;

/// Errors raised by category construction, colimit computation and the
/// search procedures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("composable pair ({first}, {second}) has no composite")]
    MissingComposite { first: String, second: String },

    #[error("composition is not associative on ({f}, {g}, {h})")]
    AssociativityViolation { f: String, g: String, h: String },

    #[error("unit law fails for {morphism}: {detail}")]
    UnitViolation { morphism: String, detail: String },

    #[error("{item} refers to unknown endpoint or morphism `{name}`")]
    DanglingEndpoint { item: String, name: String },

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("composite entry ({first}, {second}) -> {result} is ill-typed")]
    IllTypedComposite {
        first: String,
        second: String,
        result: String,
    },

    #[error("not a functor: {0}")]
    NotAFunctor(String),

    #[error("functor is not an embedding (faithful and injective on objects)")]
    NotAnEmbedding,

    #[error("search budget of {budget} exceeded")]
    SearchBudgetExceeded { budget: u64 },

    #[error("congruence saturation exceeded the cap of {cap} classes")]
    GrowthExceeded { cap: usize },

    #[error("functor does not satisfy the quotient conditions: {0}")]
    ConditionsViolated(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("index category is not filtered")]
    NotFiltered,

    #[error("diagram node `{0}` is not an acyclic category")]
    NotAcyclicInput(String),

    #[error("nerve is truncated at dimension {max_dim}; homology would be wrong")]
    TruncatedInput { max_dim: usize },

    #[error("lifting square does not commute")]
    NonCommutingSquare,

    #[error("small object argument stopped after {stages} stages without reaching the lifting property")]
    StageBudgetExceeded {
        stages: usize,
        partial: Box<crate::model::Factorization>,
    },

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("invalid simplicial data: {0}")]
    InvalidComplex(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid generator request: {0}")]
    InvalidGenerator(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures caused by a search or growth cap rather than by bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::SearchBudgetExceeded { .. }
                | Error::GrowthExceeded { .. }
                | Error::StageBudgetExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
