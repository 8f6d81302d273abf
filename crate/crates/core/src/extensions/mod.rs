//! Module n-extensions and infinitesimal algebra extensions.

pub mod exal;
pub mod nextension;

pub use exal::{Cocycle2, ExalSpace, InfinitesimalExtension};
pub use nextension::{bridge_sign, equivalent, from_cocycle, to_cocycle, yoneda, NExtension};
