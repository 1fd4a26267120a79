//! Zhang-Zhang polynomials of regular benzenoid strips computed from the
//! poset of double interface bonds, with a brute-force graph oracle.

pub mod bijection;
pub mod catalog;
pub mod error;
pub mod extensions;
pub mod oracle;
pub mod order_poly;
pub mod polynomial;
pub mod poset;
pub mod strip;

pub use bijection::{ClarCoverRecord, KekuleAssignment, KekuleBijection, OrderMap};
pub use error::{Error, Result};
pub use extensions::{LinearExtensionRecord, Word};
pub use oracle::{ExplicitClarCover, Matching, OracleReport, SextetOrientation};
pub use order_poly::{ClosedForm, ExtensionGroup, ZzPolynomial};
pub use polynomial::{binomial, Polynomial};
pub use poset::{Dib, DibPoset, NaturalLabeling};
pub use strip::{BenzenoidGraph, InterfaceProfile, Shape, StripSpec, ValidationReport};
