//! Identifier newtypes shared by every structure.
//!
//! Identifiers are opaque strings. They must be non-empty and free of
//! whitespace so that every structure serializes to a line-oriented
//! document; beyond that the library never inspects them. Derived
//! structures (quotients, shells, lambda images) build compound
//! identifiers out of their inputs with an escaping join, so arbitrary
//! input identifiers can never collide after composition.

use std::fmt;

macro_rules! id_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                Self(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }

            /// Well-formed ids are non-empty and contain no whitespace.
            pub fn is_well_formed(&self) -> bool {
                !self.0.is_empty() && !self.0.chars().any(|c| c.is_whitespace())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }
    };
}

id_newtype!(
    /// Identifier of an object (a point) of a groupoid.
    ObjId
);
id_newtype!(
    /// Identifier of an arrow (a morphism) of a groupoid.
    ArrowId
);
id_newtype!(
    /// Identifier of a square of a double groupoid.
    SquareId
);

/// Joins id components into one compound id, escaping the separator so the
/// join is injective for arbitrary components.
pub(crate) fn join_id(parts: &[&str]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        for c in p.chars() {
            match c {
                '\\' => out.push_str("\\\\"),
                ';' => out.push_str("\\;"),
                _ => out.push(c),
            }
        }
    }
    out
}

/// Wraps an id in brackets to label an equivalence class.
pub(crate) fn class_id(representative: &str) -> String {
    format!("[{representative}]")
}
