//! Short exact sequences and the connecting map `Tor_1(Z, N) -> X (x) N`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{LinearSolver, Matrix};

use super::module::{same_algebra, tensor_over_algebra, FinModule, ModuleMap, TensorProduct};
use super::resolution::Presentation;

/// `0 -> X -i-> Y -p-> Z -> 0`, checked exact on construction.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub i: ModuleMap,
    pub p: ModuleMap,
}

impl ShortExact {
    pub fn new(i: ModuleMap, p: ModuleMap) -> Result<Self> {
        if !same_algebra(i.source.algebra(), p.target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if i.target.dim() != p.source.dim() {
            return Err(Error::InexactInput("middle modules differ".into()));
        }
        if !i.is_module_map() || !p.is_module_map() {
            return Err(Error::InexactInput("maps are not module maps".into()));
        }
        if !i.is_injective() {
            return Err(Error::InexactInput("left map is not injective".into()));
        }
        if !p.is_surjective() {
            return Err(Error::InexactInput("right map is not surjective".into()));
        }
        if !p.compose(&i).is_zero() || i.image_space() != p.kernel_space() {
            return Err(Error::InexactInput("not exact in the middle".into()));
        }
        Ok(ShortExact { i, p })
    }

    /// `0 -> X -> X (+) Z -> Z -> 0`.
    pub fn split(x: &Arc<FinModule>, z: &Arc<FinModule>) -> Result<Self> {
        let y = FinModule::direct_sum(x, z)?;
        let f = x.field();
        let (dx, dz) = (x.dim(), z.dim());
        let i = Matrix::identity(f, dx).vstack(&Matrix::zeros(f, dz, dx));
        let p = Matrix::zeros(f, dz, dx).hstack(&Matrix::identity(f, dz));
        ShortExact::new(
            ModuleMap::new(x.clone(), y.clone(), i)?,
            ModuleMap::new(y, z.clone(), p)?,
        )
    }

    pub fn left(&self) -> &Arc<FinModule> {
        &self.i.source
    }

    pub fn middle(&self) -> &Arc<FinModule> {
        &self.i.target
    }

    pub fn right(&self) -> &Arc<FinModule> {
        &self.p.target
    }
}

/// `Tor_1(Z, N) = ker(Z (x) K -> Z (x) F)` for a presentation
/// `0 -> K -> F -> N -> 0`, as a module through `Z`.
#[derive(Clone, Debug)]
pub struct Tor1 {
    pub z_k: TensorProduct,
    pub z_f: TensorProduct,
    /// `Z (x) K` and `Z (x) F` as modules.
    pub z_k_module: Arc<FinModule>,
    pub z_f_module: Arc<FinModule>,
    pub z_incl: ModuleMap,
    pub module: Arc<FinModule>,
    pub inclusion: ModuleMap,
}

pub fn tor1(z: &Arc<FinModule>, pres: &Presentation) -> Result<Tor1> {
    let z_k = tensor_over_algebra(z, &pres.kernel)?;
    let z_f = tensor_over_algebra(z, &pres.free)?;
    let z_k_module = z_k.as_module();
    let z_f_module = z_f.as_module();
    let id_z = Matrix::identity(z.field(), z.dim());
    let m = z_k.induced(&id_z, &pres.inclusion.matrix, &z_f);
    let z_incl = ModuleMap::unchecked(z_k_module.clone(), z_f_module.clone(), m);
    let (module, inclusion) = z_incl.kernel();
    Ok(Tor1 {
        z_k,
        z_f,
        z_k_module,
        z_f_module,
        z_incl,
        module,
        inclusion,
    })
}

/// The connecting map `Tor_1(Z, N) -> X (x) N` of a short exact sequence.
#[derive(Clone, Debug)]
pub struct Connecting {
    pub tor1: Tor1,
    pub x_n: TensorProduct,
    pub map: ModuleMap,
}

/// Snake map: lift along `p (x) 1`, push along `1 (x) incl`, pull back along
/// `i (x) 1`, then apply `1 (x) eps`. No extra sign.
pub fn connecting_tor1(ses: &ShortExact, pres: &Presentation) -> Result<Connecting> {
    let field = ses.left().field();
    let (x, y, z) = (ses.left(), ses.middle(), ses.right());
    let t = tor1(z, pres)?;
    let y_k = tensor_over_algebra(y, &pres.kernel)?;
    let y_f = tensor_over_algebra(y, &pres.free)?;
    let x_f = tensor_over_algebra(x, &pres.free)?;
    let x_n = tensor_over_algebra(x, &pres.epsilon.target)?;
    let id_k = Matrix::identity(field, pres.kernel.dim());
    let id_f = Matrix::identity(field, pres.free.dim());
    let id_x = Matrix::identity(field, x.dim());
    let id_y = Matrix::identity(field, y.dim());

    let p_k = y_k.induced(&ses.p.matrix, &id_k, &t.z_k);
    let y_incl = y_k.induced(&id_y, &pres.inclusion.matrix, &y_f);
    let i_f = x_f.induced(&ses.i.matrix, &id_f, &y_f);
    let x_eps = x_f.induced(&id_x, &pres.epsilon.matrix, &x_n);

    let lift = LinearSolver::new(&p_k);
    let pullback = LinearSolver::new(&i_f);
    let mut cols = Vec::with_capacity(t.module.dim());
    for c in t.inclusion.matrix.columns() {
        let up = lift
            .solve(&c)
            .ok_or(Error::InexactInput("p (x) 1 is not onto".into()))?;
        let pushed = y_incl.mul_vec(&up);
        let back = pullback.solve(&pushed).ok_or(Error::InexactInput(
            "snake element does not come from X".into(),
        ))?;
        cols.push(x_eps.mul_vec(&back));
    }
    let x_n_module = x_n.as_module();
    let m = Matrix::from_columns(field, x_n.dim(), &cols);
    let map = ModuleMap::unchecked(t.module.clone(), x_n_module, m);
    Ok(Connecting { tor1: t, x_n, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinAlgebra;
    use crate::field::FieldSpec;
    use crate::homology::resolution::{presentation, CoverStrategy};

    fn alg(src: &str) -> Arc<FinAlgebra> {
        Arc::new(FinAlgebra::parse(src, FieldSpec::prime(101).unwrap()).unwrap())
    }

    // 0 -> x^3 E -> E -> E/(x^3) -> 0 over E = k[x]/(x^6)
    fn truncation_ses(e: &Arc<FinAlgebra>) -> ShortExact {
        let reg = Arc::new(FinModule::regular(e));
        let x3 = e.element("x^3").unwrap();
        let ideal = e.ideal_generated(&[x3]);
        let (_sub, i) = reg.submodule(&ideal).unwrap();
        let (_q, p) = reg.quotient(&ideal).unwrap();
        ShortExact::new(i, p).unwrap()
    }

    #[test]
    fn truncation_connecting_map_is_an_isomorphism() {
        let e = alg("k[x]/(x^6)");
        let ses = truncation_ses(&e);
        let k = Arc::new(FinModule::residue_field(&e).unwrap());
        let pres = presentation(&k, CoverStrategy::Minimal);
        let c = connecting_tor1(&ses, &pres).unwrap();
        assert_eq!(c.tor1.module.dim(), 1);
        assert_eq!(c.x_n.dim(), 1);
        assert!(c.map.is_injective() && c.map.is_surjective());
    }

    #[test]
    fn split_and_free_cases_vanish() {
        let e = alg("k[x]/(x^6)");
        let k = Arc::new(FinModule::residue_field(&e).unwrap());
        let pres = presentation(&k, CoverStrategy::Minimal);
        let ses = ShortExact::split(&k, &k).unwrap();
        let c = connecting_tor1(&ses, &pres).unwrap();
        assert_eq!(c.tor1.module.dim(), 1);
        assert!(c.map.is_zero());
        let reg = Arc::new(FinModule::regular(&e));
        let ses = ShortExact::split(&k, &reg).unwrap();
        let c = connecting_tor1(&ses, &pres).unwrap();
        assert_eq!(c.tor1.module.dim(), 0);
    }

    #[test]
    fn rejects_inexact_input() {
        let e = alg("k[x]/(x^2)");
        let reg = Arc::new(FinModule::regular(&e));
        let zero = ModuleMap::zero(&reg, &reg);
        assert!(matches!(
            ShortExact::new(zero.clone(), zero),
            Err(Error::InexactInput(_))
        ));
    }
}
