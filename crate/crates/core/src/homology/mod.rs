//! Modules, free resolutions, Ext and Tor.

pub mod connecting;
pub mod ext;
pub mod module;
pub mod resolution;

pub use connecting::{connecting_tor1, tor1, Connecting, ShortExact, Tor1};
pub use ext::{ext_product, ExtClass, ExtSpace, TorSpace};
pub use module::{
    cyclic_contraction, fiber_product, pushout, same_module, tensor_over_algebra, FinModule,
    ModuleMap, TensorProduct,
};
pub use resolution::{
    free_cover, lift_chain_map, lift_cocycle, presentation, resolve, CoverStrategy, FreeCover,
    FreeResolution, Presentation,
};
