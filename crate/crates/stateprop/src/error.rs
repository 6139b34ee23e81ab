//! Structural errors shared by every module.
//!
//! A structural error means the input does not even denote a candidate
//! structure (unknown ids, missing map entries, duplicates). It is kept
//! distinct from *law* violations, which are reported by the per-module
//! validators as witness-carrying violation lists.

use thiserror::Error;

use crate::order::ElementId;

/// Largest carrier any structure may have. Carriers are represented as
/// 64-bit masks internally, so this is a hard limit, far above the desk
/// scale the library is meant for.
pub const MAX_CARRIER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("element token must be a nonempty string")]
    EmptyToken,

    #[error("carrier must be nonempty")]
    EmptyCarrier,

    #[error("carrier exceeds the supported maximum of {MAX_CARRIER} elements ({0} given)")]
    CarrierTooLarge(usize),

    #[error("duplicate element `{0}`")]
    DuplicateElement(ElementId),

    #[error("unknown element `{id}` in {context}")]
    UnknownElement { id: ElementId, context: String },

    #[error("map is missing an entry for `{id}` in {context}")]
    MissingEntry { id: ElementId, context: String },

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error(
        "property map runs in the wrong direction: it must map the target \
         lattice into the source lattice, but the given graph is keyed by \
         the source lattice"
    )]
    PropertyMapReversed,

    #[error("generated ids collide: `{0}` produced twice; rename the input elements")]
    EncodingCollision(ElementId),

    #[error("id `{0}` contains the reserved pairing character `⊗`")]
    ReservedCharacter(ElementId),
}
