//! Infinitesimal (square-zero) algebra extensions `0 -> M -> E -> B -> 0`,
//! their 2-cocycles and the Exal space.

use std::sync::Arc;

use crate::algebra::{AlgebraMap, FinAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::homology::module::same_module;
use crate::homology::{FinModule, ModuleMap};
use crate::linalg::{
    add_vectors, image_basis, kernel_basis, relative_quotient, scale_vector, sub_vectors,
    unit_vector, zero_vector, LinearSolver, Matrix, Quotient, SubspaceBasis,
};

/// A bilinear `f: B x B -> M`, stored as `values[i * dim B + j] = f(b_i, b_j)`.
#[derive(Clone, Debug)]
pub struct Cocycle2 {
    pub base: Arc<FinAlgebra>,
    pub module: Arc<FinModule>,
    values: Vec<Vec<Scalar>>,
}

impl Cocycle2 {
    /// Checks symmetry and the cocycle identity
    /// `f(b1,b2) b3 - b1 f(b2,b3) + f(b1 b2, b3) - f(b1, b2 b3) = 0`.
    pub fn new(
        base: &Arc<FinAlgebra>,
        module: &Arc<FinModule>,
        values: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let d = base.dim();
        if values.len() != d * d || values.iter().any(|v| v.len() != module.dim()) {
            return Err(Error::DimensionMismatch("cocycle table shape".into()));
        }
        if !crate::homology::module::same_algebra(base, module.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let f = Cocycle2 {
            base: base.clone(),
            module: module.clone(),
            values,
        };
        for i in 0..d {
            for j in 0..i {
                if f.values[i * d + j] != f.values[j * d + i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    if !crate::linalg::is_zero_vector(&f.identity_defect(i, j, l)) {
                        return Err(Error::CocycleIdentityFails(i, j, l));
                    }
                }
            }
        }
        Ok(f)
    }

    pub(crate) fn unchecked(
        base: &Arc<FinAlgebra>,
        module: &Arc<FinModule>,
        values: Vec<Vec<Scalar>>,
    ) -> Self {
        Cocycle2 {
            base: base.clone(),
            module: module.clone(),
            values,
        }
    }

    pub fn zero(base: &Arc<FinAlgebra>, module: &Arc<FinModule>) -> Self {
        let d = base.dim();
        Cocycle2::unchecked(base, module, vec![module.zero_vector(); d * d])
    }

    fn identity_defect(&self, i: usize, j: usize, l: usize) -> Vec<Scalar> {
        let b = &self.base;
        let m = &self.module;
        let (ei, el) = (b.basis_vector(i), b.basis_vector(l));
        let t1 = m.act(&el, self.value(i, j));
        let t2 = m.act(&ei, self.value(j, l));
        let t3 = self.eval(b.product_of_basis(i, j), &el);
        let t4 = self.eval(&ei, b.product_of_basis(j, l));
        sub_vectors(&add_vectors(&sub_vectors(&t1, &t2), &t3), &t4)
    }

    pub fn field(&self) -> FieldSpec {
        self.base.field()
    }

    pub fn value(&self, i: usize, j: usize) -> &[Scalar] {
        &self.values[i * self.base.dim() + j]
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.values
    }

    /// `f(a, b)` for arbitrary elements.
    pub fn eval(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let d = self.base.dim();
        let mut out = self.module.zero_vector();
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                crate::linalg::axpy(&mut out, &(ai * bj), &self.values[i * d + j]);
            }
        }
        out
    }

    /// Flattened coordinates, index `(i * dim B + j) * dim M + t`.
    pub fn as_vector(&self) -> Vec<Scalar> {
        self.values.concat()
    }

    pub fn from_vector(base: &Arc<FinAlgebra>, module: &Arc<FinModule>, v: &[Scalar]) -> Self {
        let m = module.dim().max(1);
        let d = base.dim();
        let values = if module.dim() == 0 {
            vec![Vec::new(); d * d]
        } else {
            v.chunks(m).map(|c| c.to_vec()).collect()
        };
        Cocycle2::unchecked(base, module, values)
    }

    pub fn add(&self, other: &Cocycle2) -> Cocycle2 {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| add_vectors(a, b))
            .collect();
        Cocycle2::unchecked(&self.base, &self.module, values)
    }

    pub fn scale(&self, c: &Scalar) -> Cocycle2 {
        let values = self.values.iter().map(|a| scale_vector(c, a)).collect();
        Cocycle2::unchecked(&self.base, &self.module, values)
    }

    /// `(delta h)(b1, b2) = b1 h(b2) + b2 h(b1) - h(b1 b2)` for a linear
    /// `h: B -> M` given as a `dim M x dim B` matrix.
    pub fn coboundary(base: &Arc<FinAlgebra>, module: &Arc<FinModule>, h: &Matrix) -> Cocycle2 {
        let d = base.dim();
        let mut values = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let a = module.act(&base.basis_vector(i), &h.column(j));
                let b = module.act(&base.basis_vector(j), &h.column(i));
                let c = h.mul_vec(base.product_of_basis(i, j));
                values.push(sub_vectors(&add_vectors(&a, &b), &c));
            }
        }
        Cocycle2::unchecked(base, module, values)
    }

    /// `g . f` for a module map `g: M -> M'`.
    pub fn pushforward(&self, g: &ModuleMap) -> Result<Cocycle2> {
        if !same_module(&g.source, &self.module) {
            return Err(Error::Mismatch(
                "pushforward map must start at the kernel".into(),
            ));
        }
        let values = self.values.iter().map(|v| g.apply(v)).collect();
        Ok(Cocycle2::unchecked(&self.base, &g.target, values))
    }

    /// `f . (beta x beta)` for an algebra map `beta: B' -> B`.
    pub fn pullback(&self, beta: &AlgebraMap) -> Result<Cocycle2> {
        if !crate::homology::module::same_algebra(&beta.target, &self.base) {
            return Err(Error::AlgebraMismatch);
        }
        let module = self.module.restrict_scalars(beta)?;
        let d = beta.source.dim();
        let mut values = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                values.push(self.eval(&beta.matrix.column(i), &beta.matrix.column(j)));
            }
        }
        Ok(Cocycle2::unchecked(&beta.source, &module, values))
    }
}

/// `Exal_k(B, M)`: symmetric 2-cocycles modulo coboundaries of linear maps.
pub struct ExalSpace {
    pub base: Arc<FinAlgebra>,
    pub module: Arc<FinModule>,
    cocycles: SubspaceBasis,
    coboundaries: SubspaceBasis,
    quotient: Quotient,
}

impl ExalSpace {
    pub fn new(base: &Arc<FinAlgebra>, module: &Arc<FinModule>) -> Result<Self> {
        if !crate::homology::module::same_algebra(base, module.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let field = base.field();
        let d = base.dim();
        let m = module.dim();
        let n = d * d * m;
        let idx = |i: usize, j: usize, t: usize| (i * d + j) * m + t;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..d {
            for j in 0..i {
                for t in 0..m {
                    let mut r = zero_vector(field, n);
                    r[idx(i, j, t)] = field.one();
                    r[idx(j, i, t)] = -field.one();
                    rows.push(r);
                }
            }
        }
        // the cocycle identity is linear in f; evaluate it on each unit cochain
        let unit_cochains: Vec<Cocycle2> = (0..n)
            .map(|c| Cocycle2::from_vector(base, module, &unit_vector(field, n, c)))
            .collect();
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let cols: Vec<Vec<Scalar>> = unit_cochains
                        .iter()
                        .map(|f| f.identity_defect(i, j, l))
                        .collect();
                    for t in 0..m {
                        rows.push(cols.iter().map(|c| c[t].clone()).collect());
                    }
                }
            }
        }
        let constraints = if rows.is_empty() {
            Matrix::zeros(field, 0, n)
        } else {
            Matrix::from_rows(field, rows)?
        };
        let cocycles = kernel_basis(&constraints);
        let mut delta_cols = Vec::with_capacity(d * m);
        for j in 0..d {
            for t in 0..m {
                let mut h = Matrix::zeros(field, m, d);
                h.set(t, j, field.one());
                delta_cols.push(Cocycle2::coboundary(base, module, &h).as_vector());
            }
        }
        let coboundaries = image_basis(&Matrix::from_columns(field, n, &delta_cols));
        let quotient = relative_quotient(&cocycles, &coboundaries);
        Ok(ExalSpace {
            base: base.clone(),
            module: module.clone(),
            cocycles,
            coboundaries,
            quotient,
        })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn cocycle_space(&self) -> &SubspaceBasis {
        &self.cocycles
    }

    pub fn coboundary_space(&self) -> &SubspaceBasis {
        &self.coboundaries
    }

    pub fn class_of(&self, f: &Cocycle2) -> Result<Vec<Scalar>> {
        let z = self
            .cocycles
            .coordinates(&f.as_vector())
            .ok_or(Error::NotACocycle)?;
        Ok(self.quotient.class_of(&z))
    }

    /// The cocycle representing basis class `i`.
    pub fn representative(&self, i: usize) -> Cocycle2 {
        let v = self.cocycles.combine(&self.quotient.representatives[i]);
        Cocycle2::from_vector(&self.base, &self.module, &v)
    }

    pub fn cocycle_of_class(&self, coords: &[Scalar]) -> Cocycle2 {
        let z = self.quotient.lift(coords);
        Cocycle2::from_vector(&self.base, &self.module, &self.cocycles.combine(&z))
    }

    /// Solves `f = delta h`; `Some(h)` exactly when `f` is split.
    pub fn splitting(&self, f: &Cocycle2) -> Option<Matrix> {
        let field = self.base.field();
        let (d, m) = (self.base.dim(), self.module.dim());
        let mut cols = Vec::with_capacity(d * m);
        for j in 0..d {
            for t in 0..m {
                let mut h = Matrix::zeros(field, m, d);
                h.set(t, j, field.one());
                cols.push(Cocycle2::coboundary(&self.base, &self.module, &h).as_vector());
            }
        }
        let delta = Matrix::from_columns(field, d * d * m, &cols);
        let x = LinearSolver::new(&delta).solve(&f.as_vector())?;
        let mut h = Matrix::zeros(field, m, d);
        for j in 0..d {
            for t in 0..m {
                h.set(t, j, x[j * m + t].clone());
            }
        }
        Some(h)
    }
}

/// A square-zero extension `0 -> M -i-> E -p-> B -> 0` with a linear section `sigma`.
#[derive(Clone, Debug)]
pub struct InfinitesimalExtension {
    pub base: Arc<FinAlgebra>,
    pub kernel: Arc<FinModule>,
    pub total: Arc<FinAlgebra>,
    /// `dim E x dim M`
    pub inclusion: Matrix,
    pub projection: AlgebraMap,
    /// `dim E x dim B`
    pub section: Matrix,
}

// maximal ideal of E as the preimage of that of B, when B is local
fn local_hint(base: &FinAlgebra, projection: &Matrix) -> Option<SubspaceBasis> {
    let chi = base.augmentation()?;
    let row = Matrix::from_rows(base.field(), vec![chi])
        .ok()?
        .mul(projection);
    Some(kernel_basis(&row))
}

impl InfinitesimalExtension {
    /// Checks `p i = 0`, `p sigma = id`, `im i = ker p`, `i(M)^2 = 0` and `e i(m) = i(p(e) m)`.
    pub fn new(
        kernel: Arc<FinModule>,
        inclusion: Matrix,
        projection: AlgebraMap,
        section: Matrix,
    ) -> Result<Self> {
        let base = projection.target.clone();
        let total = projection.source.clone();
        let bad = |s: &str| Err(Error::InvalidExtension(s.into()));
        if !crate::homology::module::same_algebra(kernel.algebra(), &base) {
            return Err(Error::AlgebraMismatch);
        }
        if inclusion.rows() != total.dim() || inclusion.cols() != kernel.dim() {
            return Err(Error::DimensionMismatch("inclusion shape".into()));
        }
        if section.rows() != total.dim() || section.cols() != base.dim() {
            return Err(Error::DimensionMismatch("section shape".into()));
        }
        if !projection.matrix.mul(&inclusion).is_zero() {
            return bad("p . i is not zero");
        }
        if projection.matrix.mul(&section) != Matrix::identity(base.field(), base.dim()) {
            return bad("p . sigma is not the identity");
        }
        if inclusion.rank() != kernel.dim() || image_basis(&inclusion) != projection.kernel() {
            return bad("image of i is not the kernel of p");
        }
        let cols = inclusion.columns();
        for a in &cols {
            for b in &cols {
                if !crate::linalg::is_zero_vector(&total.mul(a, b)) {
                    return bad("kernel does not square to zero");
                }
            }
        }
        for e in 0..total.dim() {
            let ev = total.basis_vector(e);
            let pe = projection.apply(&ev);
            for (j, a) in cols.iter().enumerate() {
                let lhs = total.mul(&ev, a);
                let rhs = inclusion.mul_vec(&kernel.act(&pe, &kernel.basis_vector(j)));
                if lhs != rhs {
                    return bad("E acts on the kernel through a different B-module structure");
                }
            }
        }
        Ok(InfinitesimalExtension {
            base,
            kernel,
            total,
            inclusion,
            projection,
            section,
        })
    }

    /// `E = M x B` with `(m1,b1)(m2,b2) = (b1 m2 + b2 m1 + f(b1,b2), b1 b2)`,
    /// `i(m) = (m,0)`, `sigma(b) = (0,b)`. Basis: kernel first, then `B`.
    pub fn from_cocycle(f: &Cocycle2) -> Result<Self> {
        let checked = Cocycle2::new(&f.base, &f.module, f.values.clone())?;
        let b = &checked.base;
        let m = &checked.module;
        let field = b.field();
        let (d, k) = (b.dim(), m.dim());
        let n = k + d;
        let split = |v: &[Scalar]| (v[..k].to_vec(), v[k..].to_vec());
        let join = |x: Vec<Scalar>, y: Vec<Scalar>| [x, y].concat();
        let mut products = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let (m1, b1) = split(&unit_vector(field, n, r));
                let (m2, b2) = split(&unit_vector(field, n, c));
                let mm = add_vectors(
                    &add_vectors(&m.act(&b1, &m2), &m.act(&b2, &m1)),
                    &checked.eval(&b1, &b2),
                );
                products.push(join(mm, b.mul(&b1, &b2)));
            }
        }
        let f11 = checked.eval(b.unit(), b.unit());
        let unit = join(scale_vector(&-field.one(), &f11), b.unit().to_vec());
        let mut labels: Vec<String> = (0..k).map(|i| format!("m{i}")).collect();
        labels.extend(b.labels().iter().cloned());
        let proj = Matrix::zeros(field, d, k).hstack(&Matrix::identity(field, d));
        let hint = local_hint(b, &proj);
        let total = Arc::new(FinAlgebra::from_structure(
            field, labels, products, unit, hint,
        )?);
        let projection = AlgebraMap::new(total, b.clone(), proj)?;
        let inclusion = Matrix::identity(field, k).vstack(&Matrix::zeros(field, d, k));
        let section = Matrix::zeros(field, k, d).vstack(&Matrix::identity(field, d));
        InfinitesimalExtension::new(m.clone(), inclusion, projection, section)
    }

    /// The extension `0 -> ker p -> E -> B -> 0` of a surjection whose kernel
    /// squares to zero. The kernel keeps `generator` (coordinates in `E`) as
    /// its cyclic generator when given, otherwise a minimal one if it is cyclic.
    pub fn from_surjection(p: &AlgebraMap, generator: Option<&[Scalar]>) -> Result<Self> {
        if !p.is_surjective() {
            return Err(Error::NotSurjective(
                "infinitesimal extension needs a surjection".into(),
            ));
        }
        let e = &p.source;
        let j = p.kernel();
        let reg = Arc::new(FinModule::regular(e));
        let (sub, incl) = reg.submodule(&j)?;
        let kernel = sub.descend(p)?;
        let gen_coords = match generator {
            Some(g) => Some(j.coordinates(g).ok_or_else(|| {
                Error::InvalidExtension("generator does not lie in the kernel".into())
            })?),
            None => minimal_cyclic_generator(&kernel),
        };
        let kernel = match gen_coords {
            Some(g) => Arc::new(
                (*kernel)
                    .clone()
                    .with_generator(g)
                    .map_err(|_| Error::KernelNotCyclic)?,
            ),
            None => kernel,
        };
        let solver = LinearSolver::new(&p.matrix);
        let cols: Vec<Vec<Scalar>> = (0..p.target.dim())
            .map(|i| solver.solve(&p.target.basis_vector(i)).expect("surjective"))
            .collect();
        let section = Matrix::from_columns(e.field(), e.dim(), &cols);
        InfinitesimalExtension::new(kernel, incl.matrix, p.clone(), section)
    }

    /// `E = k[x]/(x^{2m}) -> B = k[x]/(x^m)`, kernel generated by `x^m`.
    pub fn truncation(field: FieldSpec, m: usize) -> Result<Self> {
        let e = Arc::new(FinAlgebra::parse(&format!("k[x]/(x^{})", 2 * m), field)?);
        let b = Arc::new(FinAlgebra::parse(&format!("k[x]/(x^{m})"), field)?);
        InfinitesimalExtension::truncation_onto(&e, &b, m)
    }

    /// Same, onto a given copy of `k[x]/(x^m)`.
    pub fn truncation_onto(e: &Arc<FinAlgebra>, b: &Arc<FinAlgebra>, m: usize) -> Result<Self> {
        let p = AlgebraMap::from_var_image_strs(e, b, &["x"])?;
        let g = e.element(&format!("x^{m}"))?;
        InfinitesimalExtension::from_surjection(&p, Some(&g))
    }

    pub fn field(&self) -> FieldSpec {
        self.base.field()
    }

    /// `f(b_i, b_j) = i^{-1}(sigma(b_i) sigma(b_j) - sigma(b_i b_j))`.
    pub fn cocycle(&self) -> Cocycle2 {
        let solver = LinearSolver::new(&self.inclusion);
        let d = self.base.dim();
        let sig = self.section.columns();
        let mut values = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.total.mul(&sig[i], &sig[j]);
                let s = self.section.mul_vec(self.base.product_of_basis(i, j));
                values.push(
                    solver
                        .solve(&sub_vectors(&prod, &s))
                        .expect("defect lies in the kernel"),
                );
            }
        }
        Cocycle2::unchecked(&self.base, &self.kernel, values)
    }

    /// The same extension with the section `sigma + i . h`.
    pub fn perturb_section(&self, h: &Matrix) -> Result<Self> {
        let section = self.section.add(&self.inclusion.mul(h));
        InfinitesimalExtension::new(
            self.kernel.clone(),
            self.inclusion.clone(),
            self.projection.clone(),
            section,
        )
    }

    pub fn exal_space(&self) -> Result<ExalSpace> {
        ExalSpace::new(&self.base, &self.kernel)
    }

    pub fn is_split(&self) -> Result<bool> {
        Ok(self.exal_space()?.splitting(&self.cocycle()).is_some())
    }

    /// `E` and the kernel `i(M)` as `E`-modules, with `0 -> M -> E -> B -> 0`
    /// as a short exact sequence of `E`-modules.
    pub fn module_sequence(&self) -> Result<crate::homology::ShortExact> {
        let e_reg = Arc::new(FinModule::regular(&self.total));
        let x = self.kernel.restrict_scalars(&self.projection)?;
        let z = Arc::new(FinModule::regular(&self.base)).restrict_scalars(&self.projection)?;
        let i = ModuleMap::new(x, e_reg.clone(), self.inclusion.clone())?;
        let p = ModuleMap::new(e_reg, z, self.projection.matrix.clone())?;
        crate::homology::ShortExact::new(i, p)
    }

    /// Pushout along `g: M -> M'`: `E' = (M' (+) E) / {(g m, -i m)}`.
    pub fn pushforward(&self, g: &ModuleMap) -> Result<Self> {
        if !same_module(&g.source, &self.kernel) {
            return Err(Error::Mismatch(
                "pushforward map must start at the kernel".into(),
            ));
        }
        let field = self.field();
        let (k2, de, d) = (g.target.dim(), self.total.dim(), self.base.dim());
        let n = k2 + de;
        let rel = g.matrix.vstack(&self.inclusion.scale(&-field.one()));
        let q = crate::linalg::quotient_space(n, &image_basis(&rel));
        let pm = &self.projection.matrix;
        let mult = |u: &[Scalar], v: &[Scalar]| {
            let (m1, e1) = (&u[..k2], &u[k2..]);
            let (m2, e2) = (&v[..k2], &v[k2..]);
            let mm = add_vectors(
                &g.target.act(&pm.mul_vec(e1), m2),
                &g.target.act(&pm.mul_vec(e2), m1),
            );
            [mm, self.total.mul(e1, e2)].concat()
        };
        let dim = q.dim();
        let mut products = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                products.push(q.class_of(&mult(&q.representatives[a], &q.representatives[b])));
            }
        }
        let unit = q.class_of(&[zero_vector(field, k2), self.total.unit().to_vec()].concat());
        let sec = q.section();
        let proj = Matrix::zeros(field, d, k2).hstack(pm).mul(&sec);
        let labels = (0..dim).map(|i| format!("e{i}")).collect();
        let hint = local_hint(&self.base, &proj);
        let total = Arc::new(FinAlgebra::from_structure(
            field, labels, products, unit, hint,
        )?);
        let projection = AlgebraMap::new(total, self.base.clone(), proj)?;
        let inclusion = q
            .coordinates
            .mul(&Matrix::identity(field, k2).vstack(&Matrix::zeros(field, de, k2)));
        let section = q
            .coordinates
            .mul(&Matrix::zeros(field, k2, d).vstack(&self.section));
        InfinitesimalExtension::new(g.target.clone(), inclusion, projection, section)
    }

    /// Fiber product along `beta: B' -> B`: `E' = {(e, b') : p e = beta b'}`.
    pub fn pullback(&self, beta: &AlgebraMap) -> Result<Self> {
        if !crate::homology::module::same_algebra(&beta.target, &self.base) {
            return Err(Error::AlgebraMismatch);
        }
        let b2 = &beta.source;
        let kernel = self.kernel.restrict_scalars(beta)?;
        let sigma_b2 = self.section.mul(&beta.matrix);
        fiber_extension(
            &self.total,
            &self.projection.matrix,
            b2,
            &beta.matrix,
            &Matrix::zeros(self.field(), b2.dim(), self.total.dim())
                .hstack(&Matrix::identity(self.field(), b2.dim())),
            kernel,
            |m_coords: &[Scalar]| {
                (
                    self.inclusion.mul_vec(m_coords),
                    zero_vector(self.field(), b2.dim()),
                )
            },
            b2.clone(),
            &sigma_b2.vstack(&Matrix::identity(self.field(), b2.dim())),
        )
    }

    /// Baer sum: pushforward along `+` of the fiber product `E1 x_B E2`.
    pub fn sum(&self, other: &InfinitesimalExtension) -> Result<Self> {
        if !crate::homology::module::same_algebra(&self.base, &other.base)
            || !same_module(&self.kernel, &other.kernel)
        {
            return Err(Error::Mismatch("sum needs equal base and kernel".into()));
        }
        let field = self.field();
        let k = self.kernel.dim();
        let kk = FinModule::direct_sum(&self.kernel, &other.kernel)?;
        let fibered = fiber_extension(
            &self.total,
            &self.projection.matrix,
            &other.total,
            &other.projection.matrix,
            &self.projection.matrix.hstack(&Matrix::zeros(
                field,
                self.base.dim(),
                other.total.dim(),
            )),
            kk.clone(),
            |m: &[Scalar]| {
                (
                    self.inclusion.mul_vec(&m[..k]),
                    other.inclusion.mul_vec(&m[k..]),
                )
            },
            self.base.clone(),
            &self.section.vstack(&other.section),
        )?;
        let id = Matrix::identity(field, k);
        let plus = ModuleMap::new(kk, self.kernel.clone(), id.hstack(&id))?;
        fibered.pushforward(&plus)
    }

    /// `c [xi]`, as the pushforward along multiplication by `c`.
    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        let g = ModuleMap::new(
            self.kernel.clone(),
            self.kernel.clone(),
            Matrix::identity(self.field(), self.kernel.dim()).scale(c),
        )?;
        self.pushforward(&g)
    }
}

// The subalgebra {(a, b) : pa a = pb b} of A x B as an extension of `base`,
// with projection and section given on A (+) B.
#[allow(clippy::too_many_arguments)]
fn fiber_extension(
    a: &Arc<FinAlgebra>,
    pa: &Matrix,
    b: &Arc<FinAlgebra>,
    pb: &Matrix,
    proj_on_pair: &Matrix,
    kernel: Arc<FinModule>,
    include: impl Fn(&[Scalar]) -> (Vec<Scalar>, Vec<Scalar>),
    base: Arc<FinAlgebra>,
    section_on_pair: &Matrix,
) -> Result<InfinitesimalExtension> {
    let field = a.field();
    let da = a.dim();
    let sub = kernel_basis(&pa.hstack(&pb.scale(&-field.one())));
    let coords = |v: &[Scalar]| sub.coordinates(v).expect("element of the fiber product");
    let mult = |u: &[Scalar], v: &[Scalar]| {
        [a.mul(&u[..da], &v[..da]), b.mul(&u[da..], &v[da..])].concat()
    };
    let dim = sub.dim();
    let basis = sub.vectors();
    let mut products = Vec::with_capacity(dim * dim);
    for x in basis {
        for y in basis {
            products.push(coords(&mult(x, y)));
        }
    }
    let unit = coords(&[a.unit().to_vec(), b.unit().to_vec()].concat());
    let embed = sub.as_columns();
    let proj = proj_on_pair.mul(&embed);
    let labels = (0..dim).map(|i| format!("e{i}")).collect();
    let hint = local_hint(&base, &proj);
    let total = Arc::new(FinAlgebra::from_structure(
        field, labels, products, unit, hint,
    )?);
    let projection = AlgebraMap::new(total, base, proj)?;
    let inc_cols: Vec<Vec<Scalar>> = (0..kernel.dim())
        .map(|j| {
            let (x, y) = include(&kernel.basis_vector(j));
            coords(&[x, y].concat())
        })
        .collect();
    let inclusion = Matrix::from_columns(field, dim, &inc_cols);
    let sec_cols: Vec<Vec<Scalar>> = section_on_pair
        .columns()
        .iter()
        .map(|c| coords(c))
        .collect();
    let section = Matrix::from_columns(field, dim, &sec_cols);
    InfinitesimalExtension::new(kernel, inclusion, projection, section)
}

// A generator of a cyclic module over a local algebra, from M / mM.
fn minimal_cyclic_generator(m: &Arc<FinModule>) -> Option<Vec<Scalar>> {
    let ideal = m.algebra().maximal_ideal()?;
    let q = crate::linalg::quotient_space(m.dim(), &m.ideal_times(ideal));
    (q.dim() == 1).then(|| q.representatives[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> FieldSpec {
        FieldSpec::prime(101).unwrap()
    }

    #[test]
    fn truncation_cocycle_value() {
        let xi = InfinitesimalExtension::truncation(f101(), 3).unwrap();
        let f = xi.cocycle();
        let b = &xi.base;
        let x2 = b.element("x^2").unwrap();
        // sigma(x^2)^2 = x^4 = i(x)
        let v = f.eval(&x2, &x2);
        let incl = xi.inclusion.mul_vec(&v);
        assert_eq!(incl, xi.total.element("x^4").unwrap());
        assert!(!xi.is_split().unwrap());
        Cocycle2::new(&f.base, &f.module, f.values().to_vec()).unwrap();
    }

    #[test]
    fn zero_cocycle_gives_split_extension() {
        let b = Arc::new(FinAlgebra::parse("k[x]/(x^3)", f101()).unwrap());
        let m = Arc::new(FinModule::regular(&b));
        let xi = InfinitesimalExtension::from_cocycle(&Cocycle2::zero(&b, &m)).unwrap();
        assert!(xi.is_split().unwrap());
        assert!(xi.total.is_local());
    }

    #[test]
    fn round_trip_through_cocycle() {
        let xi = InfinitesimalExtension::truncation(f101(), 3).unwrap();
        let f = xi.cocycle();
        let rebuilt = InfinitesimalExtension::from_cocycle(&f).unwrap();
        let space = xi.exal_space().unwrap();
        assert_eq!(
            space.class_of(&rebuilt.cocycle()).unwrap(),
            space.class_of(&f).unwrap()
        );
    }

    #[test]
    fn asymmetric_tables_are_rejected() {
        let b = Arc::new(FinAlgebra::parse("k[x]/(x^2)", f101()).unwrap());
        let m = Arc::new(FinModule::regular(&b));
        let one = f101().one();
        let z = f101().zero();
        let values = vec![
            vec![z.clone(), z.clone()],
            vec![one, z.clone()],
            vec![z.clone(), z.clone()],
            vec![z.clone(), z],
        ];
        assert_eq!(
            Cocycle2::new(&b, &m, values).unwrap_err(),
            Error::NotSymmetric
        );
    }

    #[test]
    fn extension_level_operations_match_cocycles() {
        let xi = InfinitesimalExtension::truncation(f101(), 2).unwrap();
        let space = xi.exal_space().unwrap();
        let f = xi.cocycle();
        let sum = xi.sum(&xi).unwrap();
        assert_eq!(
            space.class_of(&sum.cocycle()).unwrap(),
            space.class_of(&f.add(&f)).unwrap()
        );
        let zero = ModuleMap::zero(&xi.kernel, &xi.kernel);
        assert!(xi.pushforward(&zero).unwrap().is_split().unwrap());
        let id = AlgebraMap::identity(&xi.base);
        let back = xi.pullback(&id).unwrap();
        assert_eq!(
            space.class_of(&back.cocycle()).unwrap(),
            space.class_of(&f).unwrap()
        );
        let split =
            InfinitesimalExtension::from_cocycle(&Cocycle2::zero(&xi.base, &xi.kernel)).unwrap();
        let s2 = xi.sum(&split).unwrap();
        assert_eq!(
            space.class_of(&s2.cocycle()).unwrap(),
            space.class_of(&f).unwrap()
        );
    }
}
