//! Named instances shared by tests, the command line and benchmarks.

use std::sync::Arc;

use crate::algebra::{AlgebraMap, FinAlgebra, PolyPresentation};
use crate::error::Result;
use crate::extensions::{InfinitesimalExtension, NExtension};
use crate::field::FieldSpec;
use crate::homology::FinModule;
use crate::linalg::Matrix;
use crate::operators::{alpha_map, cyclic_ideal_map, h1_compute, ideal_extension, H1Space};

pub fn f101() -> FieldSpec {
    FieldSpec::prime(101).expect("101 is prime")
}

pub fn algebra(src: &str, field: FieldSpec) -> Result<Arc<FinAlgebra>> {
    Ok(Arc::new(FinAlgebra::parse(src, field)?))
}

pub fn residue(b: &Arc<FinAlgebra>) -> Result<Arc<FinModule>> {
    Ok(Arc::new(FinModule::residue_field(b)?))
}

pub fn regular(b: &Arc<FinAlgebra>) -> Arc<FinModule> {
    Arc::new(FinModule::regular(b))
}

/// `B / (gens)` as a cyclic module.
pub fn cyclic(b: &Arc<FinAlgebra>, gens: &[&str]) -> Result<Arc<FinModule>> {
    let elts = gens
        .iter()
        .map(|g| b.element(g))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(FinModule::cyclic_quotient(
        b,
        &b.ideal_generated(&elts),
    )?))
}

/// `k[x]/(x^big) -> k[x]/(x^small)`, `x -> x`.
pub fn truncation_map(field: FieldSpec, big: usize, small: usize) -> Result<AlgebraMap> {
    let r = algebra(&format!("k[x]/(x^{big})"), field)?;
    let b = algebra(&format!("k[x]/(x^{small})"), field)?;
    AlgebraMap::from_var_image_strs(&r, &b, &["x"])
}

/// `x^hat`: the map `(x^small) -> B`, `x^small -> 1`, on the kernel of a truncation map.
pub fn x_hat(p: &AlgebraMap) -> Result<Matrix> {
    let small = p.target.dim();
    let u = p.source.element(&format!("x^{small}"))?;
    cyclic_ideal_map(p, &FinModule::regular(&p.target), &u, p.target.unit())
}

/// The 1-extension `x^hat_*(0 -> I -> R -> B -> 0)` over `R` and its map.
pub fn x_hat_extension(p: &AlgebraMap) -> Result<(NExtension, Matrix)> {
    let h = x_hat(p)?;
    Ok((ideal_extension(p, &regular(&p.target), &h)?, h))
}

/// `H^1(k, B, B)` for a presented `B`, with `B` itself.
pub fn h1_of(src: &str, field: FieldSpec) -> Result<(Arc<FinAlgebra>, H1Space)> {
    let pres = PolyPresentation::parse(src, field)?;
    let b = Arc::new(FinAlgebra::from_presentation(&pres)?);
    let h = h1_compute(&pres, &regular(&b))?;
    Ok((b, h))
}

/// The square-zero extensions `alpha(h_i)` of the cokernel basis of `H^1(k, B, B)`.
pub fn h1_operators(h1: &H1Space) -> Result<Vec<InfinitesimalExtension>> {
    h1.representatives()
        .iter()
        .map(|h| alpha_map(&h1.projection, &h1.module, h))
        .collect()
}
