//! Fixtures shared by the engine benchmarks.

use std::sync::Arc;

use cohops_core::algebra::FinAlgebra;
use cohops_core::corpus::{algebra, cyclic, f101, h1_of, h1_operators, residue};
use cohops_core::extensions::InfinitesimalExtension;
use cohops_core::homology::FinModule;
use cohops_core::Result;

/// Algebras benchmarked for resolutions and Hochschild cohomology, with
/// path-safe labels.
pub const ALGEBRAS: [(&str, &str); 4] = [
    ("x3", "k[x]/(x^3)"),
    ("x6", "k[x]/(x^6)"),
    ("x2_y2", "k[x,y]/(x^2,y^2)"),
    ("x2_xy_y2", "k[x,y]/(x^2,x*y,y^2)"),
];

pub fn algebra_f101(src: &str) -> Arc<FinAlgebra> {
    algebra(src, f101()).expect("benchmark algebras parse")
}

pub fn residue_of(src: &str) -> Arc<FinModule> {
    residue(&algebra_f101(src)).expect("benchmark algebras are local")
}

/// The truncation `k[x]/(x^{2m}) -> k[x]/(x^m)` with `N = k`.
pub fn truncation(m: usize) -> Result<(InfinitesimalExtension, Arc<FinModule>)> {
    let xi = InfinitesimalExtension::truncation(f101(), m)?;
    let n = residue(&xi.base)?;
    Ok((xi, n))
}

/// The `H^1` basis operators of `src` and the module `B/(x)`.
pub fn h1_basis(src: &str) -> Result<(Vec<InfinitesimalExtension>, Arc<FinModule>)> {
    let (b, h1) = h1_of(src, f101())?;
    Ok((h1_operators(&h1)?, cyclic(&b, &["x"])?))
}
