//! The comparison map from `R`-linear maps on `I = ker(R -> B)` (equivalently
//! 1-extensions of `B` by `C` over `R`) to infinitesimal extensions of `B`.

use std::sync::Arc;

use crate::algebra::AlgebraMap;
use crate::error::{Error, Result};
use crate::extensions::{Cocycle2, InfinitesimalExtension, NExtension};
use crate::field::Scalar;
use crate::homology::module::same_algebra;
use crate::homology::{FinModule, ModuleMap};
use crate::linalg::{sub_vectors, LinearSolver, Matrix};

/// The pivot section of a surjection `p: R -> B`, as a `dim R x dim B` matrix.
pub fn normal_form_section(p: &AlgebraMap) -> Result<Matrix> {
    if !p.is_surjective() {
        return Err(Error::NotSurjective(
            "the section needs a surjective ring map".into(),
        ));
    }
    let solver = LinearSolver::new(&p.matrix);
    let cols: Vec<Vec<Scalar>> = (0..p.target.dim())
        .map(|i| solver.solve(&p.target.basis_vector(i)).expect("surjective"))
        .collect();
    Ok(Matrix::from_columns(
        p.source.field(),
        p.source.dim(),
        &cols,
    ))
}

/// Checks that `h: I -> C` (a `dim C x dim I` matrix on the canonical basis of
/// `ker p`) is `R`-linear, hence kills `I^2`.
pub fn check_conormal_linear(p: &AlgebraMap, c: &FinModule, h: &Matrix) -> Result<()> {
    let ideal = p.kernel();
    if !same_algebra(c.algebra(), &p.target) {
        return Err(Error::AlgebraMismatch);
    }
    if h.rows() != c.dim() || h.cols() != ideal.dim() {
        return Err(Error::DimensionMismatch(
            "map on the ideal has the wrong shape".into(),
        ));
    }
    let r = &p.source;
    for k in 0..r.dim() {
        let rk = r.basis_vector(k);
        let act = c.action_of(&p.apply(&rk));
        for (a, u) in ideal.vectors().iter().enumerate() {
            let ru = ideal
                .coordinates(&r.mul(&rk, u))
                .expect("ker p is an ideal");
            if h.mul_vec(&ru) != act.mul_vec(&h.column(a)) {
                return Err(Error::NotLinearOnConormal);
            }
        }
    }
    Ok(())
}

/// The map `I -> C`, `r u -> p(r) c0`, for an ideal `I = R u` generated by
/// `u`; it is well defined when `ann(u)` kills `c0`, which is checked.
pub fn cyclic_ideal_map(
    p: &AlgebraMap,
    c: &FinModule,
    u: &[Scalar],
    c0: &[Scalar],
) -> Result<Matrix> {
    let r = &p.source;
    let ideal = p.kernel();
    let reg = FinModule::regular(r);
    let orbit = reg.orbit_matrix(u);
    if crate::linalg::image_basis(&orbit) != ideal {
        return Err(Error::InvalidExtension(
            "element does not generate the kernel".into(),
        ));
    }
    let solver = LinearSolver::new(&orbit);
    let cols: Vec<Vec<Scalar>> = ideal
        .vectors()
        .iter()
        .map(|v| c.act(&p.apply(&solver.solve(v).expect("in the orbit")), c0))
        .collect();
    let h = Matrix::from_columns(r.field(), c.dim(), &cols);
    check_conormal_linear(p, c, &h)?;
    Ok(h)
}

/// `alpha(h)` with the pivot section: `f(b1, b2) = h(sigma b1 sigma b2 - sigma(b1 b2))`.
pub fn alpha_map(p: &AlgebraMap, c: &Arc<FinModule>, h: &Matrix) -> Result<InfinitesimalExtension> {
    let sigma = normal_form_section(p)?;
    alpha_map_with_section(p, c, h, &sigma)
}

/// `alpha(h)` computed with an arbitrary linear section `sigma` of `p`.
pub fn alpha_map_with_section(
    p: &AlgebraMap,
    c: &Arc<FinModule>,
    h: &Matrix,
    sigma: &Matrix,
) -> Result<InfinitesimalExtension> {
    check_conormal_linear(p, c, h)?;
    let field = p.source.field();
    let b = &p.target;
    let r = &p.source;
    if p.matrix.mul(sigma) != Matrix::identity(field, b.dim()) {
        return Err(Error::InvalidExtension("sigma is not a section".into()));
    }
    let ideal = p.kernel();
    let d = b.dim();
    let sig = sigma.columns();
    let mut values = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let defect = sub_vectors(
                &r.mul(&sig[i], &sig[j]),
                &sigma.mul_vec(b.product_of_basis(i, j)),
            );
            let coords = ideal
                .coordinates(&defect)
                .expect("defect lies in the kernel");
            values.push(h.mul_vec(&coords));
        }
    }
    let f = Cocycle2::new(b, c, values)?;
    InfinitesimalExtension::from_cocycle(&f)
}

/// `0 -> I -> R -> B -> 0` as `R`-modules.
pub fn ideal_sequence(p: &AlgebraMap) -> Result<NExtension> {
    if !p.is_surjective() {
        return Err(Error::NotSurjective(
            "the ideal sequence needs a surjective ring map".into(),
        ));
    }
    let reg_r = Arc::new(FinModule::regular(&p.source));
    let b_r = Arc::new(FinModule::regular(&p.target)).restrict_scalars(p)?;
    let (_ideal, incl) = reg_r.submodule(&p.kernel())?;
    let proj = ModuleMap::new(reg_r, b_r, p.matrix.clone())?;
    NExtension::new(vec![incl, proj])
}

/// The 1-extension `h_*(0 -> I -> R -> B -> 0)` of `B` by `C` over `R`.
pub fn ideal_extension(p: &AlgebraMap, c: &Arc<FinModule>, h: &Matrix) -> Result<NExtension> {
    check_conormal_linear(p, c, h)?;
    let seq = ideal_sequence(p)?;
    let c_r = c.restrict_scalars(p)?;
    let g = ModuleMap::new(seq.left().clone(), c_r, h.clone())?;
    seq.pushforward(&g)
}

/// The map `g: I -> C` of a 1-extension `0 -> C -> T -> B -> 0` over `R`:
/// lift `1` to `t in T` and send `i` to `i t`.
pub fn ideal_map_of_extension(p: &AlgebraMap, xi: &NExtension) -> Result<Matrix> {
    if xi.degree() != 1 {
        return Err(Error::InvalidExtension("expected a 1-extension".into()));
    }
    let (i, q) = (&xi.maps()[0], &xi.maps()[1]);
    let r = &p.source;
    let t = LinearSolver::new(&q.matrix)
        .solve(p.target.unit())
        .ok_or(Error::InexactSequence { spot: 2 })?;
    let t_mod = &i.target;
    let back = LinearSolver::new(&i.matrix);
    let cols: Vec<Vec<Scalar>> = p
        .kernel()
        .vectors()
        .iter()
        .map(|u| {
            back.solve(&t_mod.act(u, &t))
                .ok_or(Error::InexactSequence { spot: 1 })
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(r.field(), i.source.dim(), &cols))
}

/// `alpha` of a 1-extension of `B` by `C` over `R`, with `C` read back over `B`.
pub fn alpha_of_extension(p: &AlgebraMap, xi: &NExtension) -> Result<InfinitesimalExtension> {
    let h = ideal_map_of_extension(p, xi)?;
    let c = xi.left().descend(p)?;
    alpha_map(p, &c, &h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinAlgebra;
    use crate::field::FieldSpec;

    fn setup() -> (AlgebraMap, Arc<FinModule>) {
        let f = FieldSpec::prime(101).unwrap();
        let r = Arc::new(FinAlgebra::parse("k[x]/(x^6)", f).unwrap());
        let b = Arc::new(FinAlgebra::parse("k[x]/(x^3)", f).unwrap());
        let p = AlgebraMap::from_var_image_strs(&r, &b, &["x"]).unwrap();
        let c = Arc::new(FinModule::regular(&b));
        (p, c)
    }

    // x^3 -> 1, x^4 -> x, x^5 -> x^2
    fn x_hat(p: &AlgebraMap) -> Matrix {
        let f = p.source.field();
        let mut h = Matrix::zeros(f, 3, 3);
        for k in 0..3 {
            h.set(k, k, f.one());
        }
        let c = FinModule::regular(&p.target);
        let via =
            cyclic_ideal_map(p, &c, &p.source.element("x^3").unwrap(), p.target.unit()).unwrap();
        assert_eq!(via, h);
        h
    }

    #[test]
    fn x_hat_cocycle_value() {
        let (p, c) = setup();
        let e = alpha_map(&p, &c, &x_hat(&p)).unwrap();
        let f = e.cocycle();
        let b = &p.target;
        let x2 = b.element("x^2").unwrap();
        assert_eq!(f.eval(&x2, &x2), b.element("x").unwrap());
        assert!(!e.is_split().unwrap());
    }

    #[test]
    fn zero_map_is_split_and_nonlinear_maps_are_rejected() {
        let (p, c) = setup();
        let f = p.source.field();
        let e = alpha_map(&p, &c, &Matrix::zeros(f, 3, 3)).unwrap();
        assert!(e.is_split().unwrap());
        let mut bad = Matrix::zeros(f, 3, 3);
        bad.set(0, 0, f.one());
        assert!(matches!(
            alpha_map(&p, &c, &bad),
            Err(Error::NotLinearOnConormal)
        ));
    }

    #[test]
    fn extension_route_recovers_the_map() {
        let (p, c) = setup();
        let h = x_hat(&p);
        let xi = ideal_extension(&p, &c, &h).unwrap();
        assert_eq!(ideal_map_of_extension(&p, &xi).unwrap(), h);
        let a = alpha_of_extension(&p, &xi).unwrap();
        let direct = alpha_map(&p, &c, &h).unwrap();
        let space = direct.exal_space().unwrap();
        assert_eq!(
            space.class_of(&a.cocycle()).unwrap(),
            space.class_of(&direct.cocycle()).unwrap()
        );
    }
}
