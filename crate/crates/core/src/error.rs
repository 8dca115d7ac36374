use thiserror::Error;

use crate::bimodule::{Level, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cayley table is not square: row {row} has length {len}, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("cayley table entry out of range at ({row}, {col}): {value}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("product is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("no identity element{}", hint.map(|h| format!(" (hint {h} is not neutral)")).unwrap_or_default())]
    NoIdentity { hint: Option<usize> },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("open subgroup is not closed: {a}*{b} or an inverse leaves the set")]
    SubgroupNotClosed { a: usize, b: usize },
    #[error("open subgroup is not normal: {conjugator}*{element}*{conjugator}^-1 leaves it")]
    SubgroupNotNormal { element: usize, conjugator: usize },
    #[error("subset is not a subgroup (witness {a}, {b})")]
    NotSubgroup { a: usize, b: usize },
    #[error("subgroup is not normal: conjugating {element} by {conjugator} leaves it")]
    NotNormal { element: usize, conjugator: usize },
    #[error("index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("map table has {got} entries, expected {expected}")]
    MapShape { got: usize, expected: usize },
    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("invalid action: {reason}")]
    InvalidAction { reason: String },
    #[error("action is not continuous")]
    DiscontinuousAction,
    #[error("map is not continuous at {at}")]
    NotContinuous { at: usize },
    #[error("not a precrossed bimodule: {} violation(s), first: {}", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    NotPrecrossed(Vec<Violation>),
    #[error("operation needs level {required:?}, bimodule is {actual:?}")]
    LevelTooLow { required: Level, actual: Level },
    #[error("morphism condition fails: {reason}")]
    InvalidMorphism { reason: String },
    #[error("search space of {cardinality} candidates exceeds the cap of {cap}")]
    SizeGuard { cardinality: u128, cap: u64 },
    #[error("group {0} is not abelian")]
    NotAbelian(&'static str),
    #[error("not a G-retraction: {reason}")]
    NotARetraction { reason: String },
    #[error("hypothesis ({which}) fails: {reason}")]
    HypothesisFailed { which: &'static str, reason: String },
    #[error("class map is not injective: classes {0} and {1} collide")]
    InjectivityViolated(usize, usize),
    #[error("not well defined: {0}")]
    WellDefinednessViolated(String),
    #[error("image is not a derivation pair: {0}")]
    NotADerPair(String),
    #[error("star product does not descend to classes: {0}")]
    CongruenceViolated(String),
    #[error("no group structure on H1")]
    NoGroupStructure,
    #[error("triple is not cocompatible: {0}")]
    NotCocompatible(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("extension is not proper: {0}")]
    NotProper(String),
    #[error("no continuous normalized section exists")]
    NoContinuousSection,
    #[error("diagram does not commute: {0}")]
    DiagramDoesNotCommute(String),
    #[error("element {0} is not fixed by G")]
    NotFixed(usize),
    #[error("not a factor set: cocycle identity fails at ({0}, {1}, {2})")]
    NotAFactorSet(usize, usize, usize),
    #[error("invalid torsor: {0}")]
    InvalidTorsor(String),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}
