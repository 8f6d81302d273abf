//! Finite-dimensional modules over a [`FinAlgebra`], module maps and the
//! standard constructions on them.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{kron_vec, AlgebraMap, FinAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{
    image_basis, is_zero_vector, kernel_basis, quotient_space, unit_vector, zero_vector,
    LinearSolver, Matrix, Quotient, SubspaceBasis,
};

/// A module given by one action matrix per algebra basis element.
///
/// Free modules of rank `r` use the basis `e_j * g_h` at index `h * dim A + j`
/// and remember their rank. A module may carry a distinguished cyclic
/// generator, used to identify `C (x) N` with `N` when `C` is a quotient ring.
#[derive(Clone)]
pub struct FinModule {
    algebra: Arc<FinAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
    generator: Option<Vec<Scalar>>,
    free_rank: Option<usize>,
}

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinModule(dim {} over algebra of dim {}",
            self.dim,
            self.algebra.dim()
        )?;
        if let Some(r) = self.free_rank {
            write!(f, ", free of rank {r}")?;
        }
        write!(f, ")")
    }
}

pub fn same_algebra(a: &Arc<FinAlgebra>, b: &Arc<FinAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinModule {
    /// Builds a module and checks unit and multiplicativity of the action.
    pub fn new(algebra: Arc<FinAlgebra>, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule(
                "action matrices must be square of equal size".into(),
            ));
        }
        let m = FinModule::from_action(algebra, dim, action);
        m.check_axioms()?;
        Ok(m)
    }

    pub(crate) fn from_action(algebra: Arc<FinAlgebra>, dim: usize, action: Vec<Matrix>) -> Self {
        FinModule {
            algebra,
            dim,
            action,
            generator: None,
            free_rank: None,
        }
    }

    pub fn with_generator(mut self, g: Vec<Scalar>) -> Result<Self> {
        assert_eq!(g.len(), self.dim);
        let span = image_basis(&self.orbit_matrix(&g));
        if span.dim() != self.dim {
            return Err(Error::InvalidModule(
                "element does not generate the module".into(),
            ));
        }
        self.generator = Some(g);
        Ok(self)
    }

    pub fn check_axioms(&self) -> Result<()> {
        let field = self.field();
        let unit_action = self.action_of(self.algebra.unit());
        if unit_action != Matrix::identity(field, self.dim) {
            return Err(Error::InvalidModule(
                "unit does not act as the identity".into(),
            ));
        }
        let d = self.algebra.dim();
        for i in 0..d {
            for j in i..d {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.action_of(self.algebra.product_of_basis(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative on ({}, {})",
                        self.algebra.labels()[i],
                        self.algebra.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<FinAlgebra>) -> Self {
        let f = algebra.field();
        FinModule::from_action(
            algebra.clone(),
            0,
            vec![Matrix::zeros(f, 0, 0); algebra.dim()],
        )
    }

    /// `A^r` with basis index `h * dim A + j`.
    pub fn free(algebra: &Arc<FinAlgebra>, rank: usize) -> Self {
        let f = algebra.field();
        let d = algebra.dim();
        let action = (0..d)
            .map(|i| Matrix::identity(f, rank).kron(algebra.left_mult(i)))
            .collect();
        let mut m = FinModule::from_action(algebra.clone(), rank * d, action);
        m.free_rank = Some(rank);
        if rank == 1 {
            m.generator = Some(algebra.unit().to_vec());
        }
        m
    }

    pub fn regular(algebra: &Arc<FinAlgebra>) -> Self {
        FinModule::free(algebra, 1)
    }

    /// The residue field of a local algebra, generated by `1`.
    pub fn residue_field(algebra: &Arc<FinAlgebra>) -> Result<Self> {
        let chi = algebra
            .augmentation()
            .ok_or_else(|| Error::InvalidModule("residue field needs a local algebra".into()))?;
        let f = algebra.field();
        let action = chi
            .iter()
            .map(|c| Matrix::from_rows(f, vec![vec![c.clone()]]).unwrap())
            .collect();
        let mut m = FinModule::from_action(algebra.clone(), 1, action);
        m.generator = Some(vec![f.one()]);
        Ok(m)
    }

    /// `A / J` for an ideal `J`, generated by the class of `1`.
    pub fn cyclic_quotient(algebra: &Arc<FinAlgebra>, ideal: &SubspaceBasis) -> Result<Self> {
        if !algebra.is_ideal(ideal) {
            return Err(Error::InvalidModule("subspace is not an ideal".into()));
        }
        let reg = Arc::new(FinModule::regular(algebra));
        let (q, proj) = reg.quotient(ideal)?;
        let g = proj.apply(algebra.unit());
        Ok(Arc::try_unwrap(q)
            .unwrap_or_else(|a| (*a).clone())
            .with_generator_unchecked(g))
    }

    pub(crate) fn with_generator_unchecked(mut self, g: Vec<Scalar>) -> Self {
        self.generator = Some(g);
        self
    }

    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn generator(&self) -> Option<&[Scalar]> {
        self.generator.as_deref()
    }

    pub fn free_rank(&self) -> Option<usize> {
        self.free_rank
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn action_of(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.action[i].scale(c));
            }
        }
        m
    }

    pub fn act(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vector(self.field(), self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                crate::linalg::axpy(&mut out, c, &self.action[i].mul_vec(v));
            }
        }
        out
    }

    /// Columns `e_j * v` for every algebra basis element: spans `A v`.
    pub fn orbit_matrix(&self, v: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.action.iter().map(|a| a.mul_vec(v)).collect();
        Matrix::from_columns(self.field(), self.dim, &cols)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        zero_vector(self.field(), self.dim)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vector(self.field(), self.dim, i)
    }

    /// Smallest submodule containing the given vectors.
    pub fn submodule_generated(&self, gens: &[Vec<Scalar>]) -> SubspaceBasis {
        let mut vs = Vec::new();
        for g in gens {
            for a in &self.action {
                vs.push(a.mul_vec(g));
            }
        }
        SubspaceBasis::span(self.field(), self.dim, &vs)
    }

    pub fn is_submodule(&self, s: &SubspaceBasis) -> bool {
        s.vectors()
            .iter()
            .all(|v| self.action.iter().all(|a| s.contains(&a.mul_vec(v))))
    }

    /// `J M` for a subspace `J` of the algebra.
    pub fn ideal_times(&self, ideal: &SubspaceBasis) -> SubspaceBasis {
        let mut vs = Vec::new();
        for a in ideal.vectors() {
            let m = self.action_of(a);
            for j in 0..self.dim {
                vs.push(m.column(j));
            }
        }
        SubspaceBasis::span(self.field(), self.dim, &vs)
    }

    /// Submodule on a stable subspace, with its inclusion.
    pub fn submodule(self: &Arc<Self>, s: &SubspaceBasis) -> Result<(Arc<FinModule>, ModuleMap)> {
        if !self.is_submodule(s) {
            return Err(Error::InvalidModule(
                "subspace is not stable under the action".into(),
            ));
        }
        Ok(self.submodule_unchecked(s))
    }

    pub(crate) fn submodule_unchecked(
        self: &Arc<Self>,
        s: &SubspaceBasis,
    ) -> (Arc<FinModule>, ModuleMap) {
        let f = self.field();
        let k = s.dim();
        let incl = s.as_columns();
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut m = Matrix::zeros(f, k, k);
                for (j, v) in s.vectors().iter().enumerate() {
                    let w = a.mul_vec(v);
                    for (i, &p) in s.pivots().iter().enumerate() {
                        m.set(i, j, w[p].clone());
                    }
                }
                m
            })
            .collect();
        let sub = Arc::new(FinModule::from_action(self.algebra.clone(), k, action));
        let map = ModuleMap::unchecked(sub.clone(), self.clone(), incl);
        (sub, map)
    }

    /// Quotient by a stable subspace, with the projection.
    pub fn quotient(self: &Arc<Self>, s: &SubspaceBasis) -> Result<(Arc<FinModule>, ModuleMap)> {
        if !self.is_submodule(s) {
            return Err(Error::InvalidModule(
                "subspace is not stable under the action".into(),
            ));
        }
        Ok(self.quotient_unchecked(s))
    }

    pub(crate) fn quotient_unchecked(
        self: &Arc<Self>,
        s: &SubspaceBasis,
    ) -> (Arc<FinModule>, ModuleMap) {
        let q = quotient_space(self.dim, s);
        let section = q.section();
        let action = self
            .action
            .iter()
            .map(|a| q.coordinates.mul(&a.mul(&section)))
            .collect();
        let mut module = FinModule::from_action(self.algebra.clone(), q.dim(), action);
        module.generator = self.generator.as_ref().map(|g| q.class_of(g));
        let module = Arc::new(module);
        let map = ModuleMap::unchecked(self.clone(), module.clone(), q.coordinates.clone());
        (module, map)
    }

    pub fn direct_sum(a: &Arc<FinModule>, b: &Arc<FinModule>) -> Result<Arc<FinModule>> {
        if !same_algebra(&a.algebra, &b.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let f = a.field();
        let action = a
            .action
            .iter()
            .zip(&b.action)
            .map(|(x, y)| Matrix::block_diag(f, &[x, y]))
            .collect();
        Ok(Arc::new(FinModule::from_action(
            a.algebra.clone(),
            a.dim + b.dim,
            action,
        )))
    }

    /// The same space viewed over `R` through `f: R -> A`.
    pub fn restrict_scalars(self: &Arc<Self>, f: &AlgebraMap) -> Result<Arc<FinModule>> {
        if !same_algebra(&f.target, &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let action = (0..f.source.dim())
            .map(|i| self.action_of(&f.matrix.column(i)))
            .collect();
        let mut m = FinModule::from_action(f.source.clone(), self.dim, action);
        if f.is_surjective() {
            m.generator = self.generator.clone();
        }
        Ok(Arc::new(m))
    }

    /// A module over `S` killed by `ker p`, viewed over `B` for a surjection `p: S -> B`.
    pub fn descend(self: &Arc<Self>, p: &AlgebraMap) -> Result<Arc<FinModule>> {
        if !same_algebra(&p.source, &self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if !p.is_surjective() {
            return Err(Error::NotSurjective(
                "descent needs a surjective algebra map".into(),
            ));
        }
        for k in p.kernel().vectors() {
            if !self.action_of(k).is_zero() {
                return Err(Error::InvalidModule(
                    "kernel of the ring map acts nontrivially".into(),
                ));
            }
        }
        let solver = LinearSolver::new(&p.matrix);
        let b = &p.target;
        let action = (0..b.dim())
            .map(|i| self.action_of(&solver.solve(&b.basis_vector(i)).expect("surjective")))
            .collect();
        let mut m = FinModule::from_action(b.clone(), self.dim, action);
        m.generator = self.generator.clone();
        Ok(Arc::new(m))
    }

    /// `B (x)_E N = N / (ker p) N` over `B`, with the projection (as a matrix).
    pub fn base_change(self: &Arc<Self>, p: &AlgebraMap) -> Result<(Arc<FinModule>, Matrix)> {
        if !p.is_surjective() {
            return Err(Error::NotSurjective(
                "base change needs a surjective algebra map".into(),
            ));
        }
        let kn = self.ideal_times(&p.kernel());
        let (q, proj) = self.quotient_unchecked(&kn);
        Ok((q.descend(p)?, proj.matrix))
    }

    // -- free modules --------------------------------------------------------

    /// The `h`-th free generator.
    pub fn free_generator(&self, h: usize) -> Vec<Scalar> {
        let r = self.free_rank.expect("free module");
        kron_vec(&unit_vector(self.field(), r, h), self.algebra.unit())
    }

    /// Splits an element of `A^r` into its `r` algebra coefficients.
    pub fn free_components(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let d = self.algebra.dim();
        v.chunks(d).map(|c| c.to_vec()).collect()
    }

    /// The homomorphism out of this free module sending generator `h` to `images[h]`.
    pub fn free_hom(
        self: &Arc<Self>,
        target: &Arc<FinModule>,
        images: &[Vec<Scalar>],
    ) -> ModuleMap {
        let r = self.free_rank.expect("free module");
        assert_eq!(images.len(), r);
        let d = self.algebra.dim();
        let field = self.field();
        let mut m = Matrix::zeros(field, target.dim, r * d);
        for (h, img) in images.iter().enumerate() {
            for j in 0..d {
                let col = target.action[j].mul_vec(img);
                for (row, v) in col.into_iter().enumerate() {
                    m.set(row, h * d + j, v);
                }
            }
        }
        ModuleMap::unchecked(self.clone(), target.clone(), m)
    }
}

/// A homomorphism of modules over the same algebra.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Arc<FinModule>,
    pub target: Arc<FinModule>,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: Arc<FinModule>, target: Arc<FinModule>, matrix: Matrix) -> Result<Self> {
        if !same_algebra(&source.algebra, &target.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        for i in 0..source.algebra.dim() {
            if matrix.mul(&source.action[i]) != target.action[i].mul(&matrix) {
                return Err(Error::NotAModuleMap(format!(
                    "does not commute with {}",
                    source.algebra.labels()[i]
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub(crate) fn unchecked(
        source: Arc<FinModule>,
        target: Arc<FinModule>,
        matrix: Matrix,
    ) -> Self {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.dim, source.dim));
        ModuleMap {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(m: &Arc<FinModule>) -> Self {
        ModuleMap::unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim))
    }

    pub fn zero(source: &Arc<FinModule>, target: &Arc<FinModule>) -> Self {
        ModuleMap::unchecked(
            source.clone(),
            target.clone(),
            Matrix::zeros(source.field(), target.dim, source.dim),
        )
    }

    pub fn is_module_map(&self) -> bool {
        (0..self.source.algebra.dim()).all(|i| {
            self.matrix.mul(&self.source.action[i]) == self.target.action[i].mul(&self.matrix)
        })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    /// `self . first`
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul(&first.matrix),
        )
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix),
        )
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap::unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.scale(c),
        )
    }

    pub fn kernel_space(&self) -> SubspaceBasis {
        kernel_basis(&self.matrix)
    }

    pub fn image_space(&self) -> SubspaceBasis {
        image_basis(&self.matrix)
    }

    pub fn kernel(&self) -> (Arc<FinModule>, ModuleMap) {
        self.source.submodule_unchecked(&self.kernel_space())
    }

    pub fn cokernel(&self) -> (Arc<FinModule>, ModuleMap) {
        self.target.quotient_unchecked(&self.image_space())
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Same matrix, viewed over `R` through `f`.
    pub fn restrict_scalars(&self, f: &AlgebraMap) -> Result<ModuleMap> {
        Ok(ModuleMap::unchecked(
            self.source.restrict_scalars(f)?,
            self.target.restrict_scalars(f)?,
            self.matrix.clone(),
        ))
    }
}

/// `M (x)_A N` as the quotient of `M (x)_k N` (index `i * dim N + j`) by the
/// balancing relations `(a m) (x) n - m (x) (a n)`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub left: Arc<FinModule>,
    pub right: Arc<FinModule>,
    pub quotient: Quotient,
}

pub fn tensor_over_algebra(m: &Arc<FinModule>, n: &Arc<FinModule>) -> Result<TensorProduct> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let field = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let im = Matrix::identity(field, dm);
    let idn = Matrix::identity(field, dn);
    let mut rel_cols: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..m.algebra.dim() {
        let rel = m.action[i].kron(&idn).sub(&im.kron(&n.action[i]));
        if rel.is_zero() {
            continue;
        }
        rel_cols.extend(rel.columns().into_iter().filter(|c| !is_zero_vector(c)));
    }
    let balanced = SubspaceBasis::span(field, dm * dn, &rel_cols);
    let quotient = quotient_space(dm * dn, &balanced);
    Ok(TensorProduct {
        left: m.clone(),
        right: n.clone(),
        quotient,
    })
}

impl TensorProduct {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn class_of_pure(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.quotient.class_of(&kron_vec(a, b))
    }

    /// Module structure through operators on the left factor that commute
    /// with the balancing relations (for example the left action itself).
    pub fn module_via(&self, algebra: &Arc<FinAlgebra>, left_ops: &[Matrix]) -> Arc<FinModule> {
        let field = self.left.field();
        let idn = Matrix::identity(field, self.right.dim);
        let section = self.quotient.section();
        let action = left_ops
            .iter()
            .map(|op| self.quotient.coordinates.mul(&op.kron(&idn).mul(&section)))
            .collect();
        Arc::new(FinModule::from_action(algebra.clone(), self.dim(), action))
    }

    /// The module structure coming from the left factor.
    pub fn as_module(&self) -> Arc<FinModule> {
        self.module_via(&self.left.algebra, &self.left.action)
    }

    /// Matrix of `f (x) g` from this tensor product to `target`.
    pub fn induced(&self, f: &Matrix, g: &Matrix, target: &TensorProduct) -> Matrix {
        let big = f.kron(g);
        target
            .quotient
            .coordinates
            .mul(&big.mul(&self.quotient.section()))
    }
}

/// Structural equality: same algebra, same action matrices.
pub fn same_module(a: &FinModule, b: &FinModule) -> bool {
    same_algebra(&a.algebra, &b.algebra) && a.dim == b.dim && a.action == b.action
}

impl ModuleMap {
    /// `f (+) g : A (+) C -> B (+) D`.
    pub fn direct_sum(f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
        let source = FinModule::direct_sum(&f.source, &g.source)?;
        let target = FinModule::direct_sum(&f.target, &g.target)?;
        let m = Matrix::block_diag(f.matrix.field(), &[&f.matrix, &g.matrix]);
        Ok(ModuleMap::unchecked(source, target, m))
    }

    /// `(f, g) : A -> B (+) C` into a given direct sum.
    pub fn pair(f: &ModuleMap, g: &ModuleMap, target: &Arc<FinModule>) -> ModuleMap {
        ModuleMap::unchecked(f.source.clone(), target.clone(), f.matrix.vstack(&g.matrix))
    }

    /// `[f, g] : A (+) B -> C` out of a given direct sum.
    pub fn copair(f: &ModuleMap, g: &ModuleMap, source: &Arc<FinModule>) -> ModuleMap {
        ModuleMap::unchecked(source.clone(), f.target.clone(), f.matrix.hstack(&g.matrix))
    }

    /// Same matrix between structurally equal modules.
    pub fn relabel(&self, source: &Arc<FinModule>, target: &Arc<FinModule>) -> ModuleMap {
        debug_assert!(same_module(&self.source, source) && same_module(&self.target, target));
        ModuleMap::unchecked(source.clone(), target.clone(), self.matrix.clone())
    }
}

/// Pushout of `f: A -> B` and `g: A -> C`: `P = (B (+) C) / {(f a, -g a)}`
/// with the maps `B -> P` and `C -> P`.
pub fn pushout(f: &ModuleMap, g: &ModuleMap) -> Result<(Arc<FinModule>, ModuleMap, ModuleMap)> {
    let sum = FinModule::direct_sum(&f.target, &g.target)?;
    let rel = f.matrix.vstack(&g.matrix.scale(&-f.matrix.field().one()));
    let (p, proj) = sum.quotient_unchecked(&image_basis(&rel));
    let (db, dc) = (f.target.dim, g.target.dim);
    let field = f.matrix.field();
    let from_b = proj
        .matrix
        .mul(&Matrix::identity(field, db).vstack(&Matrix::zeros(field, dc, db)));
    let from_c = proj
        .matrix
        .mul(&Matrix::zeros(field, db, dc).vstack(&Matrix::identity(field, dc)));
    Ok((
        p.clone(),
        ModuleMap::unchecked(f.target.clone(), p.clone(), from_b),
        ModuleMap::unchecked(g.target.clone(), p, from_c),
    ))
}

/// Fiber product of `f: B -> D` and `g: C -> D`: `{(b, c) : f b = g c}` with
/// its two projections.
pub fn fiber_product(
    f: &ModuleMap,
    g: &ModuleMap,
) -> Result<(Arc<FinModule>, ModuleMap, ModuleMap)> {
    let sum = FinModule::direct_sum(&f.source, &g.source)?;
    let diff = f.matrix.hstack(&g.matrix.scale(&-f.matrix.field().one()));
    let (q, incl) = sum.submodule_unchecked(&kernel_basis(&diff));
    let (db, dc) = (f.source.dim, g.source.dim);
    let field = f.matrix.field();
    let to_b = Matrix::identity(field, db)
        .hstack(&Matrix::zeros(field, db, dc))
        .mul(&incl.matrix);
    let to_c = Matrix::zeros(field, dc, db)
        .hstack(&Matrix::identity(field, dc))
        .mul(&incl.matrix);
    Ok((
        q.clone(),
        ModuleMap::unchecked(q.clone(), f.source.clone(), to_b),
        ModuleMap::unchecked(q, g.source.clone(), to_c),
    ))
}

/// The contraction `C (x)_S N -> N`, `s g (x) n -> s n`, for a cyclic `C`
/// with generator `g` whose annihilator kills `N`.
pub fn cyclic_contraction(t: &TensorProduct) -> Result<Matrix> {
    let c = &t.left;
    let n = &t.right;
    let g = c.generator().ok_or(Error::KernelNotCyclic)?;
    let orbit = c.orbit_matrix(g);
    for a in kernel_basis(&orbit).vectors() {
        if !n.action_of(a).is_zero() {
            return Err(Error::InvalidModule(
                "annihilator of the generator does not kill the second factor".into(),
            ));
        }
    }
    let solver = LinearSolver::new(&orbit);
    let field = c.field();
    let (dc, dn) = (c.dim, n.dim);
    let mut big = Matrix::zeros(field, dn, dc * dn);
    for i in 0..dc {
        let s = solver
            .solve(&unit_vector(field, dc, i))
            .expect("generator spans");
        let act = n.action_of(&s);
        for j in 0..dn {
            for r in 0..dn {
                big.set(r, i * dn + j, act.get(r, j).clone());
            }
        }
    }
    Ok(big.mul(&t.quotient.section()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> FieldSpec {
        FieldSpec::prime(101).unwrap()
    }

    fn alg(src: &str) -> Arc<FinAlgebra> {
        Arc::new(FinAlgebra::parse(src, f101()).unwrap())
    }

    #[test]
    fn residue_and_free_modules_are_valid() {
        let b = alg("k[x,y]/(x^2, y^2)");
        let k = FinModule::residue_field(&b).unwrap();
        assert!(k.check_axioms().is_ok());
        let f = FinModule::free(&b, 3);
        assert_eq!(f.dim(), 12);
        assert!(f.check_axioms().is_ok());
    }

    #[test]
    fn tensor_examples() {
        let b = alg("k[x]/(x^2)");
        let k = Arc::new(FinModule::residue_field(&b).unwrap());
        let t = tensor_over_algebra(&k, &k).unwrap();
        assert_eq!(t.dim(), 1);
        let reg = Arc::new(FinModule::regular(&b));
        let t = tensor_over_algebra(&reg, &k).unwrap();
        assert_eq!(t.dim(), 1);
        let z = Arc::new(FinModule::zero(&b));
        assert_eq!(tensor_over_algebra(&k, &z).unwrap().dim(), 0);
        let t = tensor_over_algebra(&reg, &reg).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(t.as_module().check_axioms().is_ok());
    }

    #[test]
    fn restriction_and_base_change() {
        let e = alg("k[x]/(x^6)");
        let b = alg("k[x]/(x^3)");
        let p = AlgebraMap::from_var_image_strs(&e, &b, &["x"]).unwrap();
        let breg = Arc::new(FinModule::regular(&b));
        let be = breg.restrict_scalars(&p).unwrap();
        assert_eq!(be.dim(), 3);
        assert!(be.check_axioms().is_ok());
        let x3 = e.element("x^3").unwrap();
        assert!(be.action_of(&x3).is_zero());
        let ereg = Arc::new(FinModule::regular(&e));
        let (bc, _) = ereg.base_change(&p).unwrap();
        assert_eq!(bc.dim(), 3);
        assert!(bc.check_axioms().is_ok());
        let ef = Arc::new(FinModule::free(&e, 2));
        assert_eq!(ef.base_change(&p).unwrap().0.dim(), 6);
        let ke = Arc::new(FinModule::residue_field(&e).unwrap());
        assert_eq!(ke.base_change(&p).unwrap().0.dim(), 1);
    }

    #[test]
    fn module_map_validation() {
        let b = alg("k[x]/(x^2)");
        let reg = Arc::new(FinModule::regular(&b));
        let x = b.element("x").unwrap();
        let mx = b.mult_matrix(&x);
        assert!(ModuleMap::new(reg.clone(), reg.clone(), mx).is_ok());
        let bad = Matrix::from_i64(f101(), &[&[1, 0], &[0, 0]]);
        assert!(ModuleMap::new(reg.clone(), reg, bad).is_err());
    }
}
