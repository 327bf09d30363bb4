use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge list: {0}")]
    EdgeList(String),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("graph has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("malformed Pruefer sequence: {0}")]
    Pruefer(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("restraint: {0}")]
    Restraint(String),
    #[error("restraint has {restraint} vertices but graph has {graph}")]
    RestraintSize { restraint: usize, graph: usize },
    #[error("list colour {colour} exceeds k = {k}")]
    ListColour { colour: u32, k: u32 },
    #[error("interpolation produced a non-integer coefficient: {0}")]
    NonIntegerCoefficient(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
