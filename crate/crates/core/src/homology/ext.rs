//! Ext and Tor from a free resolution, with explicit representatives, and the
//! composition product on cocycles.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{
    add_vectors, image_basis, kernel_basis, relative_quotient, scale_vector, zero_vector, Matrix,
    Quotient, SubspaceBasis,
};

use super::module::{FinModule, ModuleMap};
use super::resolution::{lift_cocycle, FreeResolution};

/// Matrix of `Hom(F_n, N) -> Hom(F_{n+1}, N)`, `f -> f . d_{n+1}`, where a
/// cochain is the list of generator images (index `g * dim N + t`).
pub fn coboundary_matrix(res: &FreeResolution, n: usize, target: &FinModule) -> Matrix {
    let field = target.field();
    let dn = target.dim();
    let (rn, rn1) = (res.rank(n), res.rank(n + 1));
    let mut m = Matrix::zeros(field, rn1 * dn, rn * dn);
    let f_n1 = res.term(n + 1);
    let f_n = res.term(n);
    let d = res.d(n + 1);
    for h in 0..rn1 {
        let img = d.apply(&f_n1.free_generator(h));
        for (g, beta) in f_n.free_components(&img).iter().enumerate() {
            let block = target.action_of(beta);
            for r in 0..dn {
                for c in 0..dn {
                    let v = block.get(r, c);
                    if !v.is_zero() {
                        m.set(h * dn + r, g * dn + c, v.clone());
                    }
                }
            }
        }
    }
    m
}

/// Matrix of `F_n (x) N -> F_{n-1} (x) N` on `N^{r_n}` (index `g * dim N + t`).
pub fn tor_boundary_matrix(res: &FreeResolution, n: usize, target: &FinModule) -> Matrix {
    coboundary_matrix(res, n - 1, target).transpose_blocks(target.dim())
}

trait BlockTranspose {
    fn transpose_blocks(&self, block: usize) -> Matrix;
}

impl BlockTranspose for Matrix {
    // swaps block rows with block columns, keeping each block as is
    fn transpose_blocks(&self, b: usize) -> Matrix {
        let (br, bc) = (self.rows() / b.max(1), self.cols() / b.max(1));
        let mut out = Matrix::zeros(self.field(), bc * b, br * b);
        for i in 0..br {
            for j in 0..bc {
                for r in 0..b {
                    for c in 0..b {
                        out.set(j * b + r, i * b + c, self.get(i * b + r, j * b + c).clone());
                    }
                }
            }
        }
        out
    }
}

/// `Ext^n(M, N)` as cocycles modulo coboundaries in `Hom(F_*, N)`.
pub struct ExtSpace {
    pub n: usize,
    pub resolution: Arc<FreeResolution>,
    pub target: Arc<FinModule>,
    coboundary: Matrix,
    cocycles: SubspaceBasis,
    coboundaries: SubspaceBasis,
    quotient: Quotient,
    representatives: Vec<Vec<Scalar>>,
}

impl fmt::Debug for ExtSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtSpace(n = {}, dim = {})", self.n, self.dim())
    }
}

impl ExtSpace {
    pub fn new(
        resolution: &Arc<FreeResolution>,
        target: &Arc<FinModule>,
        n: usize,
    ) -> Result<Arc<Self>> {
        resolution.require(n + 1)?;
        if !super::module::same_algebra(resolution.module.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let coboundary = coboundary_matrix(resolution, n, target);
        let cocycles = kernel_basis(&coboundary);
        let coboundaries = if n == 0 {
            SubspaceBasis::zero(target.field(), resolution.rank(0) * target.dim())
        } else {
            image_basis(&coboundary_matrix(resolution, n - 1, target))
        };
        let quotient = relative_quotient(&cocycles, &coboundaries);
        let representatives = quotient
            .representatives
            .iter()
            .map(|r| cocycles.combine(r))
            .collect();
        Ok(Arc::new(ExtSpace {
            n,
            resolution: resolution.clone(),
            target: target.clone(),
            coboundary,
            cocycles,
            coboundaries,
            quotient,
            representatives,
        }))
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn source(&self) -> &Arc<FinModule> {
        &self.resolution.module
    }

    pub fn cochain_dim(&self) -> usize {
        self.resolution.rank(self.n) * self.target.dim()
    }

    pub fn representatives(&self) -> &[Vec<Scalar>] {
        &self.representatives
    }

    pub fn cocycle_space(&self) -> &SubspaceBasis {
        &self.cocycles
    }

    pub fn coboundary_space(&self) -> &SubspaceBasis {
        &self.coboundaries
    }

    pub fn is_cocycle(&self, c: &[Scalar]) -> bool {
        crate::linalg::is_zero_vector(&self.coboundary.mul_vec(c))
    }

    pub fn class_of_cocycle(&self, c: &[Scalar]) -> Result<Vec<Scalar>> {
        if c.len() != self.cochain_dim() {
            return Err(Error::DimensionMismatch("cochain length".into()));
        }
        let z = self.cocycles.coordinates(c).ok_or(Error::NotACocycle)?;
        Ok(self.quotient.class_of(&z))
    }

    pub fn cocycle_of_class(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut v = zero_vector(self.target.field(), self.cochain_dim());
        for (c, r) in coords.iter().zip(&self.representatives) {
            crate::linalg::axpy(&mut v, c, r);
        }
        v
    }

    /// The module map `F_n -> N` of a cochain.
    pub fn cochain_map(&self, c: &[Scalar]) -> ModuleMap {
        let images: Vec<Vec<Scalar>> = c
            .chunks(self.target.dim().max(1))
            .map(|x| x.to_vec())
            .collect();
        let images = if self.target.dim() == 0 {
            vec![Vec::new(); self.resolution.rank(self.n)]
        } else {
            images
        };
        self.resolution.term(self.n).free_hom(&self.target, &images)
    }

    /// Cochain (generator images) of a module map `F_n -> N`.
    pub fn cochain_of_map(&self, f: &ModuleMap) -> Vec<Scalar> {
        let free = self.resolution.term(self.n);
        let mut out = Vec::with_capacity(self.cochain_dim());
        for h in 0..self.resolution.rank(self.n) {
            out.extend(f.apply(&free.free_generator(h)));
        }
        out
    }

    pub fn zero_class(self: &Arc<Self>) -> ExtClass {
        ExtClass {
            space: self.clone(),
            coords: zero_vector(self.target.field(), self.dim()),
        }
    }

    pub fn basis_class(self: &Arc<Self>, i: usize) -> ExtClass {
        let mut coords = zero_vector(self.target.field(), self.dim());
        coords[i] = self.target.field().one();
        ExtClass {
            space: self.clone(),
            coords,
        }
    }

    pub fn class(self: &Arc<Self>, coords: Vec<Scalar>) -> ExtClass {
        assert_eq!(coords.len(), self.dim());
        ExtClass {
            space: self.clone(),
            coords,
        }
    }

    pub fn class_of(self: &Arc<Self>, cocycle: &[Scalar]) -> Result<ExtClass> {
        Ok(ExtClass {
            space: self.clone(),
            coords: self.class_of_cocycle(cocycle)?,
        })
    }
}

/// A class in an [`ExtSpace`], by coordinates in its basis.
#[derive(Clone)]
pub struct ExtClass {
    pub space: Arc<ExtSpace>,
    pub coords: Vec<Scalar>,
}

impl fmt::Debug for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExtClass(n = {}, [{}])",
            self.space.n,
            render_coords(&self.coords)
        )
    }
}

pub fn render_coords(c: &[Scalar]) -> String {
    c.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl ExtClass {
    pub fn degree(&self) -> usize {
        self.space.n
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn cocycle(&self) -> Vec<Scalar> {
        self.space.cocycle_of_class(&self.coords)
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        assert!(
            Arc::ptr_eq(&self.space, &other.space),
            "classes live in different spaces"
        );
        ExtClass {
            space: self.space.clone(),
            coords: add_vectors(&self.coords, &other.coords),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ExtClass {
        ExtClass {
            space: self.space.clone(),
            coords: scale_vector(c, &self.coords),
        }
    }
}

/// Composition product `a . b` for `a` in `Ext^p(W, N)` (resolution `Q` of
/// `W`) and `b` in `Ext^q(M, W)` (resolution `P` of `M`), landing in
/// `target = Ext^{p+q}(M, N)`. The cocycle is `(-1)^{pq} a . G_p` where `G`
/// lifts `b` along `Q`; this sign makes the product agree with splicing.
pub fn ext_product(a: &ExtClass, b: &ExtClass, target: &Arc<ExtSpace>) -> Result<ExtClass> {
    let (p, q) = (a.degree(), b.degree());
    if target.n != p + q {
        return Err(Error::Mismatch(format!(
            "target degree {} is not {} + {}",
            target.n, p, q
        )));
    }
    if !Arc::ptr_eq(&b.space.resolution, &target.resolution) {
        return Err(Error::Mismatch(
            "product target must use the resolution of the right factor".into(),
        ));
    }
    let res_p = &b.space.resolution;
    let res_q = &a.space.resolution;
    let g = lift_cocycle(res_p, q, &b.space.cochain_map(&b.cocycle()), res_q, p)?;
    let composite = a.space.cochain_map(&a.cocycle()).compose(&g[p]);
    let mut cochain = target.cochain_of_map(&composite);
    if (p * q) % 2 == 1 {
        cochain = scale_vector(&-target.target.field().one(), &cochain);
    }
    target.class_of(&cochain)
}

/// `Tor_n(M, N)` as the homology of `F_* (x) N`.
pub struct TorSpace {
    pub n: usize,
    pub resolution: Arc<FreeResolution>,
    pub target: Arc<FinModule>,
    cycles: SubspaceBasis,
    quotient: Quotient,
    representatives: Vec<Vec<Scalar>>,
}

impl fmt::Debug for TorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorSpace(n = {}, dim = {})", self.n, self.dim())
    }
}

impl TorSpace {
    pub fn new(
        resolution: &Arc<FreeResolution>,
        target: &Arc<FinModule>,
        n: usize,
    ) -> Result<Arc<Self>> {
        resolution.require(n + 1)?;
        if !super::module::same_algebra(resolution.module.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let field = target.field();
        let chain_dim = resolution.rank(n) * target.dim();
        let cycles = if n == 0 {
            SubspaceBasis::full(field, chain_dim)
        } else {
            kernel_basis(&tor_boundary_matrix(resolution, n, target))
        };
        let boundaries = image_basis(&tor_boundary_matrix(resolution, n + 1, target));
        let quotient = relative_quotient(&cycles, &boundaries);
        let representatives = quotient
            .representatives
            .iter()
            .map(|r| cycles.combine(r))
            .collect();
        Ok(Arc::new(TorSpace {
            n,
            resolution: resolution.clone(),
            target: target.clone(),
            cycles,
            quotient,
            representatives,
        }))
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<Scalar>] {
        &self.representatives
    }

    pub fn class_of_cycle(&self, c: &[Scalar]) -> Option<Vec<Scalar>> {
        self.cycles
            .coordinates(c)
            .map(|z| self.quotient.class_of(&z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinAlgebra;
    use crate::field::FieldSpec;
    use crate::homology::resolution::{resolve, CoverStrategy};

    fn setup(src: &str, len: usize) -> (Arc<FreeResolution>, Arc<FinModule>) {
        let b = Arc::new(FinAlgebra::parse(src, FieldSpec::prime(101).unwrap()).unwrap());
        let k = Arc::new(FinModule::residue_field(&b).unwrap());
        (Arc::new(resolve(&k, len, CoverStrategy::Minimal)), k)
    }

    #[test]
    fn ext_dims_of_truncated_polynomials() {
        for src in ["k[x]/(x^2)", "k[x]/(x^3)"] {
            let (res, k) = setup(src, 9);
            for n in 0..=8 {
                assert_eq!(ExtSpace::new(&res, &k, n).unwrap().dim(), 1, "{src} n={n}");
            }
        }
    }

    #[test]
    fn ext_over_a_field_vanishes() {
        let f = FieldSpec::prime(101).unwrap();
        let kf = Arc::new(FinAlgebra::ground(f));
        let k = Arc::new(FinModule::residue_field(&kf).unwrap());
        let res = Arc::new(resolve(&k, 4, CoverStrategy::Minimal));
        assert_eq!(ExtSpace::new(&res, &k, 0).unwrap().dim(), 1);
        for n in 1..=3 {
            assert_eq!(ExtSpace::new(&res, &k, n).unwrap().dim(), 0);
        }
    }

    #[test]
    fn class_round_trips() {
        let (res, k) = setup("k[x,y]/(x^2, y^2)", 4);
        let e = ExtSpace::new(&res, &k, 2).unwrap();
        assert_eq!(e.dim(), 3);
        for i in 0..e.dim() {
            let c = e.basis_class(i);
            assert_eq!(e.class_of_cocycle(&c.cocycle()).unwrap(), c.coords);
        }
        let zero = vec![FieldSpec::prime(101).unwrap().zero(); e.cochain_dim()];
        assert!(e
            .class_of_cocycle(&zero)
            .unwrap()
            .iter()
            .all(Scalar::is_zero));
        for b in e.coboundary_space().vectors() {
            assert!(e.class_of_cocycle(b).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn products_on_k_x2() {
        let (res, k) = setup("k[x]/(x^2)", 8);
        let e1 = ExtSpace::new(&res, &k, 1).unwrap();
        let e2 = ExtSpace::new(&res, &k, 2).unwrap();
        let xi = e1.basis_class(0);
        let sq = ext_product(&xi, &xi, &e2).unwrap();
        assert!(!sq.is_zero());
    }
}
