//! Crate-wide error type. Every validation failure names a concrete witness.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // finite groups
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("not associative: witness triple ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("not a homomorphism: map({a} op {b}) != map({a}) op map({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("subgroup {n} is not normal: conjugation by {g} leaves it")]
    NotNormal { g: usize, n: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid group action: {0}")]
    BadAction(String),
    #[error("group is not abelian: witness pair ({a}, {b})")]
    NotAbelian { a: usize, b: usize },
    #[error("map is not an isomorphism: {0}")]
    NotIso(String),

    // groupoids
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid groupoid morphism: {0}")]
    InvalidGroupoidMorphism(String),
    #[error("unknown object {object}")]
    UnknownObject { object: usize },
    #[error("invalid groupoid action: {0}")]
    InvalidAction(String),
    #[error("not a covering morphism: {0}")]
    NotCovering(String),
    #[error("anchor mismatch: {0}")]
    AnchorMismatch(String),

    // group-groupoids
    #[error("morphism addition is not functorial: {0}")]
    AdditionNotFunctorial(String),
    #[error("interchange law fails: ({b} o {a}) + ({d} o {c}) != ({b}+{d}) o ({a}+{c})")]
    InterchangeFails { b: usize, a: usize, d: usize, c: usize },
    #[error("morphism-group identity is not the identity morphism at the object-group identity: {0}")]
    WrongUnit(String),
    #[error("anchor is not a group homomorphism: {0}")]
    NotGroupHomAnchor(String),
    #[error("groupoid action axiom fails: {0}")]
    ActionAxiomFails(String),

    // crossed modules
    #[error("equivariance axiom fails at (b = {b}, a = {a})")]
    Cm1Fails { b: usize, a: usize },
    #[error("Peiffer axiom fails at (a = {a}, a1 = {a1})")]
    Cm2Fails { a: usize, a1: usize },
    #[error("crossed-module morphism square fails at a = {a}")]
    SquareFails { a: usize },
    #[error("crossed-module morphism equivariance fails at (b = {b}, a = {a})")]
    EquivarianceFails { b: usize, a: usize },

    // liftings and equivalences
    #[error("diagram does not commute: omega(phi({a})) != alpha({a})")]
    DiagramFails { a: usize },
    #[error("candidate is not a crossed module: {0}")]
    NotCrossedModule(String),
    #[error("base crossed module mismatch: {0}")]
    BaseMismatch(String),
    #[error("round trip is not the identity: {0}")]
    RoundtripFails(String),
    #[error("element {element} is outside the kernel")]
    NotSubgroupOfKernel { element: usize },
    #[error("precondition fails: {0}")]
    PreconditionFails(String),
    #[error("source crossed module is not transitive")]
    NotTransitiveSource,
    #[error("equivalence witness fails: {0}")]
    WitnessFails(String),
    #[error("internal contradiction (implementation bug): {0}")]
    InternalContradiction(String),

    // catalog and I/O
    #[error("cap exceeded: requested {requested}, hard cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}
