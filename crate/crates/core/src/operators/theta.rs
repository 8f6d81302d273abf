//! The degree-two operators `phi` and `psi`, built from one construction:
//! for a ring `S` with `p: S -> B`, a short exact sequence `0 -> X -> Y -> B -> 0`
//! of `S`-modules and a `B`-module `N`, push
//! `0 -> Tor_1^S(B, N) -> B (x) K -> B (x) F -> N -> 0` forward along the
//! connecting map `Tor_1^S(B, N) -> X (x)_S N -> N`.

use std::sync::Arc;

use crate::algebra::AlgebraMap;
use crate::error::{Error, Result};
use crate::extensions::{to_cocycle, InfinitesimalExtension, NExtension};
use crate::homology::module::{same_algebra, same_module};
use crate::homology::{
    connecting_tor1, cyclic_contraction, presentation, resolve, tensor_over_algebra, CoverStrategy,
    ExtClass, ExtSpace, FinModule, ModuleMap, ShortExact,
};
use crate::linalg::Matrix;

/// An operator value: the 2-extension of `N` by `N` and its class.
#[derive(Clone, Debug)]
pub struct OperatorValue {
    pub extension: NExtension,
    pub class: ExtClass,
}

/// `Ext^2_B(N, N)` on a resolution of `N`, the home of operator values.
pub fn operator_target(n: &Arc<FinModule>, strategy: CoverStrategy) -> Result<Arc<ExtSpace>> {
    let res = Arc::new(resolve(n, 3, strategy));
    ExtSpace::new(&res, n, 2)
}

fn check_target(target: &ExtSpace) -> Result<()> {
    if target.n != 2 || !same_module(&target.target, target.source()) {
        return Err(Error::Mismatch("operators land in Ext^2(N, N)".into()));
    }
    Ok(())
}

fn theta_construction(
    p: &AlgebraMap,
    ses: &ShortExact,
    target: &Arc<ExtSpace>,
    strategy: CoverStrategy,
) -> Result<OperatorValue> {
    check_target(target)?;
    let n = &target.target;
    if !same_algebra(n.algebra(), &p.target) {
        return Err(Error::AlgebraMismatch);
    }
    let field = n.field();
    let z = Arc::new(FinModule::regular(&p.target)).restrict_scalars(p)?;
    if !same_module(ses.right(), &z) {
        return Err(Error::Mismatch(
            "the sequence must end in B viewed over the ring".into(),
        ));
    }
    let ses = ShortExact {
        i: ses.i.clone(),
        p: ses.p.relabel(&ses.p.source, &z),
    };
    let n_s = n.restrict_scalars(p)?;
    let pres = presentation(&n_s, strategy);
    let conn = connecting_tor1(&ses, &pres)?;
    let delta = cyclic_contraction(&conn.x_n)?.mul(&conn.map.matrix);

    let t = &conn.tor1;
    let z_n = tensor_over_algebra(&z, &n_s)?;
    let id_z = Matrix::identity(field, z.dim());
    let last = cyclic_contraction(&z_n)?.mul(&t.z_f.induced(&id_z, &pres.epsilon.matrix, &z_n));

    let tor_b = t.module.descend(p)?;
    let zk_b = t.z_k_module.descend(p)?;
    let zf_b = t.z_f_module.descend(p)?;
    let theta = NExtension::unchecked(vec![
        ModuleMap::unchecked(tor_b.clone(), zk_b.clone(), t.inclusion.matrix.clone()),
        ModuleMap::unchecked(zk_b, zf_b.clone(), t.z_incl.matrix.clone()),
        ModuleMap::unchecked(zf_b, n.clone(), last),
    ]);
    debug_assert!(theta.check_exact().is_ok());
    let delta = ModuleMap::unchecked(tor_b, n.clone(), delta);
    let extension = theta.pushforward(&delta)?.with_ends(n, target.source())?;
    let class = to_cocycle(&extension, target)?;
    Ok(OperatorValue { extension, class })
}

/// `psi(xi)` for a square-zero extension `0 -> C -> E -> B -> 0`, from a free
/// `E`-presentation of `N` and `Tor_1^E(B, N) ~ C (x)_E N -> N`.
pub fn psi(
    xi: &InfinitesimalExtension,
    target: &Arc<ExtSpace>,
    strategy: CoverStrategy,
) -> Result<OperatorValue> {
    let ses = xi.module_sequence()?;
    theta_construction(&xi.projection, &ses, target, strategy)
}

/// `psi(xi)` with a fresh target and minimal presentations.
pub fn psi_class(xi: &InfinitesimalExtension, n: &Arc<FinModule>) -> Result<ExtClass> {
    let target = operator_target(n, CoverStrategy::Minimal)?;
    Ok(psi(xi, &target, CoverStrategy::Minimal)?.class)
}

/// `phi(xi)` for a surjection `p: R -> B` and a 1-extension
/// `0 -> C -> T -> B -> 0` of `R`-modules, from a free `R`-presentation of `N`.
pub fn phi(
    p: &AlgebraMap,
    xi: &NExtension,
    target: &Arc<ExtSpace>,
    strategy: CoverStrategy,
) -> Result<OperatorValue> {
    if xi.degree() != 1 {
        return Err(Error::InvalidExtension("phi takes a 1-extension".into()));
    }
    if !p.is_surjective() {
        return Err(Error::NotSurjective(
            "phi needs a surjective ring map".into(),
        ));
    }
    let ses = ShortExact::new(xi.maps()[0].clone(), xi.maps()[1].clone())?;
    theta_construction(p, &ses, target, strategy)
}

pub fn phi_class(p: &AlgebraMap, xi: &NExtension, n: &Arc<FinModule>) -> Result<ExtClass> {
    let target = operator_target(n, CoverStrategy::Minimal)?;
    Ok(phi(p, xi, &target, CoverStrategy::Minimal)?.class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinAlgebra;
    use crate::extensions::Cocycle2;
    use crate::field::FieldSpec;
    use crate::homology::ext_product;

    fn f101() -> FieldSpec {
        FieldSpec::prime(101).unwrap()
    }

    #[test]
    fn truncation_operator_is_nonzero_with_nonzero_powers() {
        let xi = InfinitesimalExtension::truncation(f101(), 2).unwrap();
        let k = Arc::new(FinModule::residue_field(&xi.base).unwrap());
        let res = Arc::new(resolve(&k, 7, CoverStrategy::Minimal));
        let target = ExtSpace::new(&res, &k, 2).unwrap();
        let v = psi(&xi, &target, CoverStrategy::Minimal).unwrap();
        assert!(!v.class.is_zero());
        let mut power = v.class.clone();
        for j in 2..=3 {
            let space = ExtSpace::new(&res, &k, 2 * j).unwrap();
            power = ext_product(&v.class, &power, &space).unwrap();
            assert!(!power.is_zero(), "power {j}");
        }
    }

    #[test]
    fn split_extension_gives_zero() {
        let b = Arc::new(FinAlgebra::parse("k[x]/(x^2)", f101()).unwrap());
        let c = Arc::new(FinModule::regular(&b));
        let xi = InfinitesimalExtension::from_cocycle(&Cocycle2::zero(&b, &c)).unwrap();
        let k = Arc::new(FinModule::residue_field(&b).unwrap());
        assert!(psi_class(&xi, &k).unwrap().is_zero());
    }

    #[test]
    fn presentation_choice_does_not_matter() {
        let xi = InfinitesimalExtension::truncation(f101(), 3).unwrap();
        let k = Arc::new(FinModule::residue_field(&xi.base).unwrap());
        let target = operator_target(&k, CoverStrategy::Minimal).unwrap();
        let a = psi(&xi, &target, CoverStrategy::Minimal).unwrap();
        let b = psi(&xi, &target, CoverStrategy::FullBasis).unwrap();
        assert_eq!(a.class.coords, b.class.coords);
        assert!(!a.class.is_zero());
    }

    #[test]
    fn phi_agrees_with_psi_after_alpha() {
        use crate::operators::alpha::{alpha_of_extension, ideal_extension};
        let r = Arc::new(FinAlgebra::parse("k[x]/(x^6)", f101()).unwrap());
        let b = Arc::new(FinAlgebra::parse("k[x]/(x^3)", f101()).unwrap());
        let p = AlgebraMap::from_var_image_strs(&r, &b, &["x"]).unwrap();
        let c = Arc::new(FinModule::regular(&b));
        let mut h = Matrix::zeros(f101(), 3, 3);
        for k in 0..3 {
            h.set(k, k, f101().one());
        }
        let xi = ideal_extension(&p, &c, &h).unwrap();
        let ideal = b.ideal_generated(&[b.element("x^2").unwrap()]);
        for n in [
            Arc::new(FinModule::residue_field(&b).unwrap()),
            Arc::new(FinModule::cyclic_quotient(&b, &ideal).unwrap()),
            Arc::new(FinModule::regular(&b)),
        ] {
            let target = operator_target(&n, CoverStrategy::Minimal).unwrap();
            let lhs = phi(&p, &xi, &target, CoverStrategy::Minimal).unwrap().class;
            let e = alpha_of_extension(&p, &xi).unwrap();
            let rhs = psi(&e, &target, CoverStrategy::Minimal).unwrap().class;
            assert_eq!(lhs.coords, rhs.coords);
            assert!(target.dim() == 0 || !lhs.is_zero());
        }
    }
}
