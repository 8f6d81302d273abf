//! The bar resolution of `B` over `B (x) B`, second Hochschild cohomology,
//! the class `gamma` of a square-zero extension of `B` by `B`, and the map `s`
//! from `HH^2` to `Ext^2_B(N, N)`.

use std::sync::Arc;

use crate::algebra::{tensor_square, FinAlgebra, TensorSquare};
use crate::error::{Error, Result};
use crate::extensions::{to_cocycle, InfinitesimalExtension, NExtension};
use crate::field::Scalar;
use crate::homology::module::{pushout, same_algebra, same_module};
use crate::homology::{cyclic_contraction, tensor_over_algebra, ExtSpace, FinModule, ModuleMap};
use crate::linalg::{
    image_basis, inverse, is_zero_vector, kernel_basis, relative_quotient, unit_vector,
    LinearSolver, Matrix, Quotient, SubspaceBasis,
};

use super::theta::OperatorValue;

/// Default cap on `dim(B)^(L+2)`, the largest term of a bar complex.
pub const DEFAULT_BAR_BUDGET: usize = 20736;

fn check_budget(d: usize, factors: usize, budget: usize) -> Result<()> {
    let needed = d.checked_pow(factors as u32).unwrap_or(usize::MAX);
    if needed > budget {
        return Err(Error::SizeBudgetExceeded { needed, budget });
    }
    Ok(())
}

/// `... -> B^(x)(n+2) -> ... -> B (x) B -> B -> 0` truncated at `n = length`.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub base: Arc<FinAlgebra>,
    pub square: TensorSquare,
    pub length: usize,
    /// `B` over `B (x) B` through multiplication.
    pub diagonal: Arc<FinModule>,
    /// `terms[n] = B^(x)(n+2)` for `0 <= n <= length`.
    pub terms: Vec<Arc<FinModule>>,
    /// `d_0 = mult : B (x) B -> B`.
    pub augmentation: ModuleMap,
    /// `differentials[n - 1] = d_n`.
    pub differentials: Vec<ModuleMap>,
}

fn pow(d: usize, e: usize) -> usize {
    d.pow(e as u32)
}

/// The bar complex up to degree `length`, refusing terms larger than `budget`.
pub fn bar_complex(b: &Arc<FinAlgebra>, length: usize, budget: usize) -> Result<BarComplex> {
    let d = b.dim();
    check_budget(d, length + 2, budget)?;
    let field = b.field();
    let square = tensor_square(b);
    let bb = square.algebra.clone();
    let diag_action = (0..d * d)
        .map(|i| b.mult_matrix(&square.mult_map.matrix.column(i)))
        .collect();
    let diagonal = Arc::new(
        FinModule::from_action(bb.clone(), d, diag_action)
            .with_generator_unchecked(b.unit().to_vec()),
    );
    let mut terms = Vec::with_capacity(length + 1);
    for n in 0..=length {
        let mid = Matrix::identity(field, pow(d, n));
        let action = (0..d * d)
            .map(|idx| {
                let (a, c) = (idx / d, idx % d);
                b.left_mult(a).kron(&mid).kron(b.left_mult(c))
            })
            .collect();
        terms.push(Arc::new(FinModule::from_action(
            bb.clone(),
            pow(d, n + 2),
            action,
        )));
    }
    let mu = &square.mult_map.matrix;
    let augmentation = ModuleMap::unchecked(terms[0].clone(), diagonal.clone(), mu.clone());
    let mut differentials = Vec::with_capacity(length);
    for n in 1..=length {
        let mut m = Matrix::zeros(field, pow(d, n + 1), pow(d, n + 2));
        for i in 0..=n {
            let piece = Matrix::identity(field, pow(d, i))
                .kron(mu)
                .kron(&Matrix::identity(field, pow(d, n - i)));
            m = if i % 2 == 0 {
                m.add(&piece)
            } else {
                m.sub(&piece)
            };
        }
        differentials.push(ModuleMap::unchecked(
            terms[n].clone(),
            terms[n - 1].clone(),
            m,
        ));
    }
    let bar = BarComplex {
        base: b.clone(),
        square,
        length,
        diagonal,
        terms,
        augmentation,
        differentials,
    };
    bar.check()?;
    Ok(bar)
}

impl BarComplex {
    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }

    pub fn d(&self, n: usize) -> &ModuleMap {
        if n == 0 {
            &self.augmentation
        } else {
            &self.differentials[n - 1]
        }
    }

    /// `d_{n-1} d_n = 0` and every differential is `B (x) B`-linear.
    pub fn check(&self) -> Result<()> {
        for n in 1..=self.length {
            if !self.d(n - 1).compose(self.d(n)).is_zero() {
                return Err(Error::InexactSequence { spot: n });
            }
        }
        for n in 0..=self.length {
            if !self.d(n).is_module_map() {
                return Err(Error::NotAModuleMap(format!("bar differential {n}")));
            }
        }
        Ok(())
    }

    /// The k-linear contraction `s_n(x) = 1 (x) x : B^(x)(n+2) -> B^(x)(n+3)`,
    /// with `s_{-1}: B -> B (x) B` at `n = -1`.
    pub fn contraction(&self, n: isize) -> Matrix {
        let d = self.base.dim();
        let factors = (n + 2) as usize;
        let one = Matrix::from_columns(self.base.field(), d, &[self.base.unit().to_vec()]);
        one.kron(&Matrix::identity(self.base.field(), pow(d, factors)))
    }
}

/// `HH^2(B) = ker delta^2 / im delta^1` on normalized-free Hochschild cochains
/// `C^n = Hom_k(B^(x)n, B)`, isomorphic to `Hom_{B (x) B}(B^(x)(n+2), B)`.
/// A 2-cochain `f` has coordinate `f(b_i, b_j)_t` at `(i * d + j) * d + t`.
#[derive(Clone, Debug)]
pub struct HH2Space {
    pub base: Arc<FinAlgebra>,
    pub delta1: Matrix,
    pub delta2: Matrix,
    pub cocycles: SubspaceBasis,
    pub coboundaries: SubspaceBasis,
    quotient: Quotient,
}

pub fn hh2_space(b: &Arc<FinAlgebra>, budget: usize) -> Result<Arc<HH2Space>> {
    let d = b.dim();
    check_budget(d, 4, budget)?;
    let field = b.field();
    let prod = |a: usize, c: usize| b.product_of_basis(a, c);
    // (delta g)(b1, b2) = b1 g(b2) - g(b1 b2) + g(b1) b2
    let mut delta1 = Matrix::zeros(field, pow(d, 3), d * d);
    for a in 0..d {
        for c in 0..d {
            let p = prod(a, c);
            for t in 0..d {
                let row = (a * d + c) * d + t;
                for s in 0..d {
                    delta1.add_at(row, c * d + s, b.left_mult(a).get(t, s));
                    delta1.add_at(row, a * d + s, b.left_mult(c).get(t, s));
                }
                for (r, x) in p.iter().enumerate() {
                    if !x.is_zero() {
                        delta1.add_at(row, r * d + t, &-x);
                    }
                }
            }
        }
    }
    // (delta f)(b1, b2, b3) = b1 f(b2, b3) - f(b1 b2, b3) + f(b1, b2 b3) - f(b1, b2) b3
    let mut delta2 = Matrix::zeros(field, pow(d, 4), pow(d, 3));
    for a in 0..d {
        for c in 0..d {
            for e in 0..d {
                let (pac, pce) = (prod(a, c), prod(c, e));
                for t in 0..d {
                    let row = ((a * d + c) * d + e) * d + t;
                    for s in 0..d {
                        delta2.add_at(row, (c * d + e) * d + s, b.left_mult(a).get(t, s));
                        delta2.add_at(row, (a * d + c) * d + s, &-b.left_mult(e).get(t, s));
                    }
                    for r in 0..d {
                        if !pac[r].is_zero() {
                            delta2.add_at(row, (r * d + e) * d + t, &-&pac[r]);
                        }
                        if !pce[r].is_zero() {
                            delta2.add_at(row, (a * d + r) * d + t, &pce[r]);
                        }
                    }
                }
            }
        }
    }
    let cocycles = kernel_basis(&delta2);
    let coboundaries = image_basis(&delta1);
    let quotient = relative_quotient(&cocycles, &coboundaries);
    Ok(Arc::new(HH2Space {
        base: b.clone(),
        delta1,
        delta2,
        cocycles,
        coboundaries,
        quotient,
    }))
}

impl HH2Space {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn class_of(self: &Arc<Self>, cochain: &[Scalar]) -> Result<HH2Class> {
        let inner = self
            .cocycles
            .coordinates(cochain)
            .ok_or(Error::NotACocycle)?;
        Ok(HH2Class {
            space: self.clone(),
            coords: self.quotient.class_of(&inner),
        })
    }

    pub fn class(self: &Arc<Self>, coords: Vec<Scalar>) -> HH2Class {
        assert_eq!(coords.len(), self.dim());
        HH2Class {
            space: self.clone(),
            coords,
        }
    }

    pub fn basis_class(self: &Arc<Self>, i: usize) -> HH2Class {
        let f = self.base.field();
        self.class(unit_vector(f, self.dim(), i))
    }

    pub fn cocycle_of_class(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.cocycles.combine(&self.quotient.lift(coords))
    }

    /// `f~ (b (x) b1 (x) b2 (x) b') = b f(b1, b2) b'` as a `d x d^4` matrix.
    pub fn bar_cocycle(&self, cochain: &[Scalar]) -> Matrix {
        let b = &self.base;
        let d = b.dim();
        let field = b.field();
        let mut m = Matrix::zeros(field, d, pow(d, 4));
        for a in 0..d {
            for e in 0..d {
                let outer = b.mult_matrix(b.product_of_basis(a, e));
                for i in 0..d {
                    for j in 0..d {
                        let v = &cochain[(i * d + j) * d..(i * d + j + 1) * d];
                        let col = outer.mul_vec(v);
                        let idx = ((a * d + i) * d + j) * d + e;
                        for (r, x) in col.into_iter().enumerate() {
                            m.set(r, idx, x);
                        }
                    }
                }
            }
        }
        m
    }
}

/// A class in `HH^2(B)`.
#[derive(Clone, Debug)]
pub struct HH2Class {
    pub space: Arc<HH2Space>,
    pub coords: Vec<Scalar>,
}

impl HH2Class {
    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coords)
    }

    pub fn cocycle(&self) -> Vec<Scalar> {
        self.space.cocycle_of_class(&self.coords)
    }

    pub fn add(&self, other: &HH2Class) -> HH2Class {
        self.space
            .class(crate::linalg::add_vectors(&self.coords, &other.coords))
    }

    pub fn scale(&self, c: &Scalar) -> HH2Class {
        self.space
            .class(crate::linalg::scale_vector(c, &self.coords))
    }
}

/// `gamma(xi)`: the Hochschild class of the cocycle of `0 -> B -> E -> B -> 0`.
pub fn gamma(xi: &InfinitesimalExtension, space: &Arc<HH2Space>) -> Result<HH2Class> {
    if !same_algebra(&xi.base, &space.base) {
        return Err(Error::AlgebraMismatch);
    }
    if !same_module(&xi.kernel, &FinModule::regular(&xi.base)) {
        return Err(Error::Mismatch(
            "gamma needs the kernel to be B itself".into(),
        ));
    }
    space.class_of(&xi.cocycle().as_vector())
}

/// `s(h)`: push the bar resolution out along the cocycle, restrict to `B`
/// through `i2`, apply `- (x)_B N` and read the result over `B` through `i1`.
/// `B (x)_B N` is identified with `N` at both ends.
pub fn s_map(h: &HH2Class, target: &Arc<ExtSpace>, budget: usize) -> Result<OperatorValue> {
    let hh = &h.space;
    let b = &hh.base;
    let n = &target.target;
    if target.n != 2 || !same_module(n, target.source()) {
        return Err(Error::Mismatch("s lands in Ext^2(N, N)".into()));
    }
    if !same_algebra(n.algebra(), b) {
        return Err(Error::AlgebraMismatch);
    }
    let field = b.field();
    let d = b.dim();
    let bar = bar_complex(b, 1, budget)?;
    let f = h.cocycle();
    let d1 = bar.d(1);
    let (_k, kincl) = d1.kernel();
    // beta(b0 (x) b1 (x) b2) = f(b0, b1) b2 on ker d_1
    let mut beta_full = Matrix::zeros(field, d, pow(d, 3));
    for a in 0..d {
        for c in 0..d {
            let v = &f[(a * d + c) * d..(a * d + c + 1) * d];
            for e in 0..d {
                let col = b.mul(v, &b.basis_vector(e));
                for (r, x) in col.into_iter().enumerate() {
                    beta_full.set(r, (a * d + c) * d + e, x);
                }
            }
        }
    }
    let beta = ModuleMap::unchecked(
        kincl.source.clone(),
        bar.diagonal.clone(),
        beta_full.mul(&kincl.matrix),
    );
    debug_assert!(beta.is_module_map());
    let (w, from_bar, from_b) = pushout(&kincl, &beta)?;
    let both = from_bar.matrix.hstack(&from_b.matrix);
    let solver = LinearSolver::new(&both);
    let right_inv_cols: Vec<Vec<Scalar>> = (0..w.dim())
        .map(|i| {
            solver
                .solve(&unit_vector(field, w.dim(), i))
                .expect("pushout is spanned")
        })
        .collect();
    let right_inv = Matrix::from_columns(field, pow(d, 3) + d, &right_inv_cols);
    let to_bb = d1
        .matrix
        .hstack(&Matrix::zeros(field, d * d, d))
        .mul(&right_inv);

    // over B via i2, then (x)_B N, with the i1 structure on the left factor
    let i1 = &bar.square.i1;
    let i2 = &bar.square.i2;
    let reg = Arc::new(FinModule::regular(b));
    let w_b = w.restrict_scalars(i2)?;
    let bb_b = bar.terms[0].restrict_scalars(i2)?;
    debug_assert!(same_module(
        &bar.diagonal.restrict_scalars(i2).expect("same algebra"),
        &reg
    ));
    let t_left = tensor_over_algebra(&reg, n)?;
    let t_w = tensor_over_algebra(&w_b, n)?;
    let t_bb = tensor_over_algebra(&bb_b, n)?;
    let i1_ops = |m: &FinModule| -> Vec<Matrix> {
        (0..d).map(|j| m.action_of(&i1.matrix.column(j))).collect()
    };
    let w_n = t_w.module_via(b, &i1_ops(&w));
    let bb_n = t_bb.module_via(b, &i1_ops(&bar.terms[0]));
    let mu = cyclic_contraction(&t_left)?;
    let mu_inv = inverse(&mu).ok_or_else(|| Error::InvalidModule("B (x)_B N is not N".into()))?;
    let id_n = Matrix::identity(field, n.dim());
    let first = t_left.induced(&from_b.matrix, &id_n, &t_w).mul(&mu_inv);
    let middle = t_w.induced(&to_bb, &id_n, &t_bb);
    let last = mu.mul(&t_bb.induced(&bar.augmentation.matrix, &id_n, &t_left));
    let extension = NExtension::new(vec![
        ModuleMap::unchecked(n.clone(), w_n.clone(), first),
        ModuleMap::unchecked(w_n, bb_n.clone(), middle),
        ModuleMap::unchecked(bb_n, n.clone(), last),
    ])?
    .with_ends(n, target.source())?;
    let class = to_cocycle(&extension, target)?;
    Ok(OperatorValue { extension, class })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::Cocycle2;
    use crate::field::FieldSpec;
    use crate::homology::CoverStrategy;
    use crate::operators::theta::{operator_target, psi};

    fn f101() -> FieldSpec {
        FieldSpec::prime(101).unwrap()
    }

    fn alg(src: &str) -> Arc<FinAlgebra> {
        Arc::new(FinAlgebra::parse(src, f101()).unwrap())
    }

    #[test]
    fn bar_dimensions_and_contraction() {
        let b = alg("k[x]/(x^3)");
        let bar = bar_complex(&b, 2, DEFAULT_BAR_BUDGET).unwrap();
        assert_eq!(bar.term_dims(), vec![9, 27, 81]);
        let f = b.field();
        // d_0 s_{-1} = id and d_{n+1} s_n + s_{n-1} d_n = id
        assert_eq!(
            bar.d(0).matrix.mul(&bar.contraction(-1)),
            Matrix::identity(f, 3)
        );
        for n in 0..2usize {
            let lhs = bar.d(n + 1).matrix.mul(&bar.contraction(n as isize));
            let rhs = bar.contraction(n as isize - 1).mul(&bar.d(n).matrix);
            assert_eq!(
                lhs.add(&rhs),
                Matrix::identity(f, bar.terms[n].dim()),
                "degree {n}"
            );
        }
        let k = Arc::new(FinAlgebra::ground(f));
        assert_eq!(
            bar_complex(&k, 3, DEFAULT_BAR_BUDGET).unwrap().term_dims(),
            vec![1; 4]
        );
        assert!(matches!(
            bar_complex(&b, 8, DEFAULT_BAR_BUDGET),
            Err(Error::SizeBudgetExceeded { .. })
        ));
    }

    #[test]
    fn gamma_of_truncation_is_nonzero_cocycle() {
        let xi = InfinitesimalExtension::truncation(f101(), 3).unwrap();
        let hh = hh2_space(&xi.base, DEFAULT_BAR_BUDGET).unwrap();
        let g = gamma(&xi, &hh).unwrap();
        assert!(!g.is_zero());
        let bar = bar_complex(&xi.base, 3, DEFAULT_BAR_BUDGET).unwrap();
        let ft = hh.bar_cocycle(&xi.cocycle().as_vector());
        assert!(ft.mul(&bar.d(3).matrix).is_zero());
        let split =
            InfinitesimalExtension::from_cocycle(&Cocycle2::zero(&xi.base, &xi.kernel)).unwrap();
        assert!(gamma(&split, &hh).unwrap().is_zero());
    }

    #[test]
    fn s_gamma_matches_psi() {
        let xi = InfinitesimalExtension::truncation(f101(), 3).unwrap();
        let k = Arc::new(FinModule::residue_field(&xi.base).unwrap());
        let target = operator_target(&k, CoverStrategy::Minimal).unwrap();
        let hh = hh2_space(&xi.base, DEFAULT_BAR_BUDGET).unwrap();
        let g = gamma(&xi, &hh).unwrap();
        let s = s_map(&g, &target, DEFAULT_BAR_BUDGET).unwrap().class;
        let p = psi(&xi, &target, CoverStrategy::Minimal).unwrap().class;
        assert!(!p.is_zero());
        assert_eq!(s.coords, p.coords);
    }
}
