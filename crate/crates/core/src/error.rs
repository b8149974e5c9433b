use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a Cartan matrix: {0}")]
    NotCartan(String),

    #[error("Cartan matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),

    #[error("root generation exceeded {cap} positive roots; the Cartan matrix is not of finite type")]
    RootCapExceeded { cap: usize },

    #[error("Weyl group has more than {cap} elements")]
    WeylCapExceeded { cap: usize },

    #[error("root system is reducible ({components} components)")]
    Reducible { components: usize },

    #[error("no multiplicity given for roots of squared length {0}")]
    MissingMultiplicity(i64),

    #[error("multiplicity table names squared length {0}, which no root has")]
    UnusedMultiplicity(i64),

    #[error("root multiplicities must be positive")]
    ZeroMultiplicity,

    #[error("vector of length {got} does not match rank {rank}")]
    Dimension { rank: usize, got: usize },

    #[error("simple-root index {index} is out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),

    #[error("root set is not closed: {0}")]
    NotClosed(String),

    #[error("root set is not the radical of a parabolic subgroup")]
    NotParabolic,

    #[error("cannot classify root subsystem component: {0}")]
    Unclassifiable(String),

    #[error("orthogonal subsystem has shape {0}, expected simple, A1xR or A1xA1xR")]
    TowerShape(String),

    #[error("decay computation: {0}")]
    Decay(String),

    #[error("catalog: {0}")]
    Catalog(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("catalog entry `{name}` is incomplete: missing {field}")]
    Incomplete { name: String, field: &'static str },

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub(crate) trait ResultExt<T> {
    fn context(self, context: impl Into<String>) -> Result<T>;
}

impl<T> ResultExt<T> for Result<T> {
    fn context(self, context: impl Into<String>) -> Result<T> {
        self.map_err(|e| e.context(context))
    }
}
