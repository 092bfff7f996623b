//! Finite groupoids, crossed modules over groupoids, and double groupoids
//! with thin structures.
//!
//! Everything here is desk-scale and exhaustively checkable: structures
//! carry explicit composition and action tables, validators enumerate every
//! axiom instance, and the equivalence between crossed modules and
//! thin-structured double groupoids is realized by executable functors
//! ([`equiv::lambda`] and [`equiv::gamma`]) whose round trips are verified
//! rather than assumed. Normal substructures transfer across the
//! equivalence in both directions, and quotients (of groupoids, crossed
//! modules and double groupoids) re-check their own well-definedness.
//!
//! Start with the runnable examples (`cargo run --example groupoids`, …);
//! each one walks through a major capability. The `dgpd` binary exposes the
//! same operations over a line-oriented document format.

pub mod cli;
pub mod dgpd;
pub mod doc;
pub mod equiv;
pub mod fixtures;
pub mod groupoid;
mod id;
pub mod report;
pub mod xmod;

pub use id::{ArrowId, ObjId, SquareId};

pub use groupoid::{
    check_subgroupoid, components, kernel, quotient_groupoid, transitivity_flags,
    validate_groupoid, validate_groupoid_morphism, FiniteGroupoid, GroupoidError,
    GroupoidMorphism, QuotientGroupoid, RawArrow, RawGroupoid, SubgroupoidWitness,
};









pub use xmod::{
    check_sub_xmod, inclusion_xmod, quotient_xmod, validate_xmod, validate_xmod_morphism,
    xmod_kernel, CrossedModule, QuotientXMod, RawXMod, SubXModWitness, XModError, XModMorphism,
};

pub use dgpd::{
    check_sub_dgpd, quotient_dgpd, shell_dgpd, validate_dgpd, validate_dgpd_morphism,
    validate_thin, DGpdMorphism, DgpdError, DoubleGroupoid, RawDgpd, RawSquare, SubDGpdWitness,
    ThinStructure,
};

pub use equiv::{
    fold, gamma, lambda, lambda_morphism, roundtrip_dgpd, roundtrip_xmod,
    transfer_normal_sub_to_dgpd, transfer_normal_sub_to_xmod, EquivalenceReport, LambdaImage,
    RoundTripDirection,
};

pub use cli::cli_dispatch;

pub use doc::{parse, serialize, serialize_pretty, ParseError, StructureDocument};

pub use report::{Report, ValidationReport, Violation};
