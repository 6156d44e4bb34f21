use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // network validation
    #[error("network has no nodes")]
    EmptyNodeSet,
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("edge references unknown node id `{0}`")]
    UnknownNode(String),
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("edge `{u}`-`{v}` has invalid weight {weight}")]
    NegativeWeight { u: String, v: String, weight: f64 },
    #[error("node `{id}` has invalid mass {mass}")]
    NegativeMass { id: String, mass: f64 },
    #[error("network is disconnected ({components} components)")]
    Disconnected { components: usize },

    // structural edits
    #[error("no edge between `{0}` and `{1}`")]
    NoSuchEdge(String, String),
    #[error("no node `{0}`")]
    NoSuchNode(String),
    #[error("removing {0} would disconnect the network")]
    WouldDisconnect(String),
    #[error("scale factor must be positive, got {0}")]
    NonpositiveLambda(f64),
    #[error("operation needs at least two nodes")]
    SingleNode,

    // measures
    #[error("distance matrix does not belong to this network")]
    DimensionMismatch,
    #[error("invalid measure parameters: {0}")]
    InvalidParams(String),
    #[error("bipolar normalization is only defined for alpha = 1 (got {0})")]
    AlphaNotOne(f64),
    #[error("total mass is zero")]
    ZeroTotalMass,

    // builders
    #[error("duplicate position {0}")]
    DuplicatePosition(String),
    #[error("invalid mass points: {0}")]
    InvalidPoints(String),
    #[error("need at least two groups")]
    FewerThanTwoGroups,
    #[error("{bills} bills exceed the hypercube limit of {limit}")]
    TooManyBills { bills: usize, limit: usize },
    #[error("invalid vote matrix: {0}")]
    InvalidVotes(String),
    #[error("representatives do not form a connected agreement graph")]
    DisconnectedAgreementGraph,
    #[error("party `{0}` has no members")]
    EmptyParty(String),
    #[error("parties do not form a connected graph")]
    DisconnectedPartyGraph,
    #[error("{alternatives} alternatives exceed the preference-graph limit of {limit}")]
    TooManyAlternatives { alternatives: usize, limit: usize },
    #[error("invalid preference profile: {0}")]
    InvalidProfile(String),

    // axioms
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("lateral distance ratio {c_bar} is below the threshold {threshold}")]
    ThresholdNotMet { c_bar: f64, threshold: f64 },
    #[error("empty sampling range for {0}")]
    EmptyRange(&'static str),

    // numerics
    #[error("argument out of domain: {0}")]
    DomainError(String),
    #[error("root finding did not converge: {0}")]
    ConvergenceFailure(String),
    #[error("no witness found for alpha = {0}")]
    WitnessNotFound(f64),

    // extremal
    #[error("need at least four positive mass points, found {0}")]
    FewerThanFourMassPoints(usize),
    #[error("{nodes} nodes exceed the exhaustive-search limit of {limit}")]
    TooManyNodes { nodes: usize, limit: usize },
    #[error("grid step {0} is invalid or too small")]
    StepTooSmall(f64),
    #[error("networks have different total mass ({0} vs {1})")]
    UnequalTotalMass(f64, f64),

    // parsing
    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// Errors caused by the shape of the input rather than its values.
    pub fn is_schema(&self) -> bool {
        matches!(
            self,
            Error::Schema(_) | Error::UnknownNode(_) | Error::DuplicateNode(_)
        )
    }
}
