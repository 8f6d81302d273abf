//! Finite-dimensional commutative algebras, algebra maps and tensor products.

pub mod groebner;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{
    axpy, image_basis, is_zero_vector, kernel_basis, quotient_space, unit_vector, zero_vector,
    Matrix, SubspaceBasis,
};

pub use groebner::{buchberger_quotient, groebner_basis, Quotient};
pub use poly::{parse_poly, Poly, PolyPresentation};

/// A commutative algebra given by a basis and structure constants.
///
/// `products[i * dim + j]` holds the coordinates of `e_i * e_j`. When the
/// algebra is local with residue field `k`, `maximal_ideal` records its
/// maximal ideal (checked to be a nilpotent ideal of codimension one).
#[derive(Clone)]
pub struct FinAlgebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    products: Vec<Vec<Scalar>>,
    left: Vec<Matrix>,
    unit: Vec<Scalar>,
    quotient: Option<Quotient>,
    maximal_ideal: Option<SubspaceBasis>,
}

impl fmt::Debug for FinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinAlgebra(dim {} over {}, basis [{}])",
            self.dim,
            self.field,
            self.labels.join(", ")
        )
    }
}

impl PartialEq for FinAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.unit == other.unit
            && self.products == other.products
    }
}

impl Eq for FinAlgebra {}

impl FinAlgebra {
    /// Builds from structure constants and checks the commutative-ring axioms
    /// on every basis pair and triple.
    pub fn from_structure(
        field: FieldSpec,
        labels: Vec<String>,
        products: Vec<Vec<Scalar>>,
        unit: Vec<Scalar>,
        maximal_ideal: Option<SubspaceBasis>,
    ) -> Result<Self> {
        let alg = FinAlgebra::unchecked(field, labels, products, unit, None, maximal_ideal);
        alg.check_axioms()?;
        alg.check_maximal_ideal()?;
        Ok(alg)
    }

    fn unchecked(
        field: FieldSpec,
        labels: Vec<String>,
        products: Vec<Vec<Scalar>>,
        unit: Vec<Scalar>,
        quotient: Option<Quotient>,
        maximal_ideal: Option<SubspaceBasis>,
    ) -> Self {
        let dim = unit.len();
        assert_eq!(products.len(), dim * dim, "structure tensor shape");
        assert_eq!(labels.len(), dim, "one label per basis element");
        let left = (0..dim)
            .map(|i| {
                let cols: Vec<Vec<Scalar>> =
                    (0..dim).map(|j| products[i * dim + j].clone()).collect();
                Matrix::from_columns(field, dim, &cols)
            })
            .collect();
        FinAlgebra {
            field,
            dim,
            labels,
            products,
            left,
            unit,
            quotient,
            maximal_ideal,
        }
    }

    /// `k[vars]/I` on the standard monomial basis.
    pub fn from_presentation(p: &PolyPresentation) -> Result<Self> {
        let q = buchberger_quotient(p)?;
        let dim = q.dim();
        let field = p.field;
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                products.push(q.coordinates(&q.monomial_poly(i).mul(&q.monomial_poly(j))));
            }
        }
        let unit = q.coordinates(&Poly::constant(field, p.nvars(), field.one()));
        let maximal_ideal = p.is_augmented().then(|| {
            // every standard monomial but 1 lies in (x_1..x_n)
            let vs: Vec<Vec<Scalar>> = (1..dim).map(|i| unit_vector(field, dim, i)).collect();
            SubspaceBasis::span(field, dim, &vs)
        });
        let labels = q.labels();
        let alg = FinAlgebra::unchecked(field, labels, products, unit, Some(q), maximal_ideal);
        debug_assert!(alg.check_axioms().is_ok());
        Ok(alg)
    }

    /// Parses the inline syntax `k[x,y]/(x^2, y^2)` and builds the quotient.
    pub fn parse(src: &str, field: FieldSpec) -> Result<Self> {
        FinAlgebra::from_presentation(&PolyPresentation::parse(src, field)?)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: FieldSpec) -> Self {
        FinAlgebra::unchecked(
            field,
            vec!["1".into()],
            vec![vec![field.one()]],
            vec![field.one()],
            None,
            Some(SubspaceBasis::zero(field, 1)),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn quotient(&self) -> Option<&Quotient> {
        self.quotient.as_ref()
    }

    pub fn presentation(&self) -> Option<&PolyPresentation> {
        self.quotient.as_ref().map(|q| &q.presentation)
    }

    pub fn maximal_ideal(&self) -> Option<&SubspaceBasis> {
        self.maximal_ideal.as_ref()
    }

    pub fn is_local(&self) -> bool {
        self.maximal_ideal.is_some()
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i * self.dim + j]
    }

    /// Matrix of multiplication by `e_i`.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Matrix of multiplication by an arbitrary element.
    pub fn mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.left[i].scale(c));
            }
        }
        m
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vector(self.field, self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                axpy(&mut out, &(x * y), &self.products[i * self.dim + j]);
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vector(self.field, self.dim, i)
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        zero_vector(self.field, self.dim)
    }

    pub fn scalar(&self, c: &Scalar) -> Vec<Scalar> {
        self.unit.iter().map(|u| u * c).collect()
    }

    /// Evaluates a polynomial at the given images of the variables.
    pub fn eval_poly(&self, f: &Poly, images: &[Vec<Scalar>]) -> Vec<Scalar> {
        assert_eq!(images.len(), f.nvars(), "one image per variable");
        let mut out = self.zero_element();
        for (m, c) in f.terms() {
            let mut t = self.scalar(c);
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = self.mul(&t, &images[v]);
                }
            }
            out = crate::linalg::add_vectors(&out, &t);
        }
        out
    }

    /// Coordinates of a polynomial expression in the presentation variables.
    pub fn element(&self, src: &str) -> Result<Vec<Scalar>> {
        let q = self
            .quotient
            .as_ref()
            .ok_or_else(|| Error::InvalidAlgebra("algebra has no presentation".into()))?;
        q.coordinates_of_str(src)
    }

    pub fn render_element(&self, v: &[Scalar]) -> String {
        let parts: Vec<String> = v
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| {
                if l == "1" {
                    c.to_string()
                } else if c.is_one() {
                    l.clone()
                } else {
                    format!("{c}*{l}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Checks commutativity, associativity and the unit on all basis data.
    pub fn check_axioms(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e {
                return Err(Error::InvalidAlgebra(format!(
                    "unit fails on basis element {i}"
                )));
            }
            for j in 0..d {
                if self.products[i * d + j] != self.products[j * d + i] {
                    return Err(Error::InvalidAlgebra(format!(
                        "not commutative on ({i}, {j})"
                    )));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = &self.products[i * d + j];
                for k in 0..d {
                    let lhs = self.mul(ij, &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), &self.products[j * d + k]);
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_maximal_ideal(&self) -> Result<()> {
        let Some(m) = &self.maximal_ideal else {
            return Ok(());
        };
        if m.ambient_dim() != self.dim || m.dim() + 1 != self.dim {
            return Err(Error::InvalidAlgebra(
                "maximal ideal must have codimension one".into(),
            ));
        }
        if m.contains(&self.unit) {
            return Err(Error::InvalidAlgebra(
                "maximal ideal contains the unit".into(),
            ));
        }
        let ideal_ok = m
            .vectors()
            .iter()
            .all(|v| (0..self.dim).all(|i| m.contains(&self.left[i].mul_vec(v))));
        if !ideal_ok {
            return Err(Error::InvalidAlgebra(
                "maximal ideal is not an ideal".into(),
            ));
        }
        // nilpotency: the powers m^j must reach zero within dim steps
        let mut power = m.clone();
        for _ in 0..=self.dim {
            if power.dim() == 0 {
                return Ok(());
            }
            let mut prods = Vec::new();
            for a in power.vectors() {
                for b in m.vectors() {
                    prods.push(self.mul(a, b));
                }
            }
            power = SubspaceBasis::span(self.field, self.dim, &prods);
        }
        Err(Error::InvalidAlgebra(
            "maximal ideal is not nilpotent".into(),
        ))
    }

    /// The residue map `A -> k` of a local algebra: `a - chi(a) * 1` lies in the maximal ideal.
    pub fn augmentation(&self) -> Option<Vec<Scalar>> {
        let m = self.maximal_ideal.as_ref()?;
        let q = quotient_space(self.dim, m);
        let row = q.coordinates.row(0).to_vec();
        let c = crate::linalg::dot(&row, &self.unit);
        Some(crate::linalg::scale_vector(&c.inv(), &row))
    }

    /// Subspace spanned by the products of `ideal` with all of `A`.
    pub fn ideal_generated(&self, gens: &[Vec<Scalar>]) -> SubspaceBasis {
        let mut vs = Vec::new();
        for g in gens {
            for i in 0..self.dim {
                vs.push(self.left[i].mul_vec(g));
            }
        }
        SubspaceBasis::span(self.field, self.dim, &vs)
    }

    pub fn is_ideal(&self, s: &SubspaceBasis) -> bool {
        s.vectors()
            .iter()
            .all(|v| (0..self.dim).all(|i| s.contains(&self.left[i].mul_vec(v))))
    }
}

/// Quotient `A / J` by an ideal, on the complement basis of `J`, with the projection.
pub fn quotient_algebra(
    a: &Arc<FinAlgebra>,
    ideal: &SubspaceBasis,
) -> Result<(Arc<FinAlgebra>, AlgebraMap)> {
    if !a.is_ideal(ideal) {
        return Err(Error::InvalidAlgebra("subspace is not an ideal".into()));
    }
    if ideal.contains(a.unit()) {
        return Err(Error::TrivialRing);
    }
    let q = quotient_space(a.dim(), ideal);
    let d = q.dim();
    let mut products = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            products.push(q.class_of(&a.mul(&q.representatives[i], &q.representatives[j])));
        }
    }
    let unit = q.class_of(a.unit());
    let labels: Vec<String> = q
        .representatives
        .iter()
        .map(|r| a.render_element(r))
        .collect();
    let maximal_ideal = a.maximal_ideal().map(|m| {
        let vs: Vec<Vec<Scalar>> = m.vectors().iter().map(|v| q.class_of(v)).collect();
        SubspaceBasis::span(a.field(), d, &vs)
    });
    let b = Arc::new(FinAlgebra::from_structure(
        a.field(),
        labels,
        products,
        unit,
        maximal_ideal,
    )?);
    let map = AlgebraMap::new(a.clone(), b.clone(), q.coordinates.clone())?;
    Ok((b, map))
}

/// A unital algebra homomorphism, as a `target.dim x source.dim` matrix.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: Arc<FinAlgebra>,
    pub target: Arc<FinAlgebra>,
    pub matrix: Matrix,
}

impl AlgebraMap {
    pub fn new(source: Arc<FinAlgebra>, target: Arc<FinAlgebra>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch("algebra map matrix shape".into()));
        }
        let map = AlgebraMap {
            source,
            target,
            matrix,
        };
        if map.apply(map.source.unit()) != map.target.unit() {
            return Err(Error::NotAnAlgebraMap("unit is not preserved".into()));
        }
        let d = map.source.dim();
        for i in 0..d {
            let fi = map.matrix.column(i);
            for j in i..d {
                let lhs = map.apply(map.source.product_of_basis(i, j));
                let rhs = map.target.mul(&fi, &map.matrix.column(j));
                if lhs != rhs {
                    return Err(Error::NotAnAlgebraMap(format!(
                        "product of basis elements {} and {} is not preserved",
                        map.source.labels()[i],
                        map.source.labels()[j]
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(a: &Arc<FinAlgebra>) -> Self {
        AlgebraMap {
            source: a.clone(),
            target: a.clone(),
            matrix: Matrix::identity(a.field(), a.dim()),
        }
    }

    /// The map determined by images of the presentation variables of `source`.
    pub fn from_var_images(
        source: &Arc<FinAlgebra>,
        target: &Arc<FinAlgebra>,
        images: &[Vec<Scalar>],
    ) -> Result<Self> {
        let q = source
            .quotient()
            .ok_or_else(|| Error::InvalidAlgebra("source algebra has no presentation".into()))?;
        let pres = &q.presentation;
        if images.len() != pres.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} variable images for {} variables",
                images.len(),
                pres.nvars()
            )));
        }
        for rel in &pres.relations {
            if !is_zero_vector(&target.eval_poly(rel, images)) {
                return Err(Error::RelationNotKilled(rel.render(&pres.vars)));
            }
        }
        let cols: Vec<Vec<Scalar>> = (0..q.dim())
            .map(|i| target.eval_poly(&q.monomial_poly(i), images))
            .collect();
        let matrix = Matrix::from_columns(target.field(), target.dim(), &cols);
        AlgebraMap::new(source.clone(), target.clone(), matrix)
    }

    /// Same, with images written in the target's presentation variables.
    pub fn from_var_image_strs(
        source: &Arc<FinAlgebra>,
        target: &Arc<FinAlgebra>,
        images: &[&str],
    ) -> Result<Self> {
        let imgs = images
            .iter()
            .map(|s| target.element(s))
            .collect::<Result<Vec<_>>>()?;
        AlgebraMap::from_var_images(source, target, &imgs)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn compose(&self, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }

    pub fn kernel(&self) -> SubspaceBasis {
        kernel_basis(&self.matrix)
    }

    pub fn image(&self) -> SubspaceBasis {
        image_basis(&self.matrix)
    }
}

/// `A (x)_k B` with basis `a_i (x) b_j` at index `i * dim B + j`.
pub fn tensor_product(a: &FinAlgebra, b: &FinAlgebra) -> FinAlgebra {
    assert_eq!(a.field(), b.field());
    let field = a.field();
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let mut products = Vec::with_capacity(d * d);
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    let ac = a.product_of_basis(i, k);
                    let bd = b.product_of_basis(j, l);
                    let mut v = zero_vector(field, d);
                    for (p, x) in ac.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (q, y) in bd.iter().enumerate() {
                            if !y.is_zero() {
                                v[p * db + q] = x * y;
                            }
                        }
                    }
                    products.push(v);
                }
            }
        }
    }
    let mut unit = zero_vector(field, d);
    for (p, x) in a.unit().iter().enumerate() {
        for (q, y) in b.unit().iter().enumerate() {
            unit[p * db + q] = x * y;
        }
    }
    let labels = (0..da)
        .flat_map(|i| (0..db).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}⊗{}", a.labels()[i], b.labels()[j]))
        .collect();
    let maximal_ideal = match (a.maximal_ideal(), b.maximal_ideal()) {
        (Some(ma), Some(mb)) => {
            let mut vs = Vec::new();
            for v in ma.vectors() {
                for j in 0..db {
                    vs.push(kron_vec(v, &unit_vector(field, db, j)));
                }
            }
            for w in mb.vectors() {
                for i in 0..da {
                    vs.push(kron_vec(&unit_vector(field, da, i), w));
                }
            }
            Some(SubspaceBasis::span(field, d, &vs))
        }
        _ => None,
    };
    FinAlgebra::unchecked(field, labels, products, unit, None, maximal_ideal)
}

/// Coordinates of `v (x) w` in the `i * len(w) + j` indexing.
pub fn kron_vec(v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(v.len() * w.len());
    for x in v {
        for y in w {
            out.push(x * y);
        }
    }
    out
}

/// `B (x)_k B` with the inclusions `i1(b) = b (x) 1`, `i2(b) = 1 (x) b` and multiplication.
#[derive(Clone, Debug)]
pub struct TensorSquare {
    pub algebra: Arc<FinAlgebra>,
    pub i1: AlgebraMap,
    pub i2: AlgebraMap,
    pub mult_map: AlgebraMap,
}

pub fn tensor_square(b: &Arc<FinAlgebra>) -> TensorSquare {
    let field = b.field();
    let d = b.dim();
    let bb = Arc::new(tensor_product(b, b));
    let mut i1 = Matrix::zeros(field, d * d, d);
    let mut i2 = Matrix::zeros(field, d * d, d);
    for i in 0..d {
        let e = b.basis_vector(i);
        let c1 = kron_vec(&e, b.unit());
        let c2 = kron_vec(b.unit(), &e);
        for r in 0..d * d {
            i1.set(r, i, c1[r].clone());
            i2.set(r, i, c2[r].clone());
        }
    }
    let mut mm = Matrix::zeros(field, d, d * d);
    for i in 0..d {
        for j in 0..d {
            let p = b.product_of_basis(i, j);
            for (r, v) in p.iter().enumerate() {
                mm.set(r, i * d + j, v.clone());
            }
        }
    }
    TensorSquare {
        i1: AlgebraMap {
            source: b.clone(),
            target: bb.clone(),
            matrix: i1,
        },
        i2: AlgebraMap {
            source: b.clone(),
            target: bb.clone(),
            matrix: i2,
        },
        mult_map: AlgebraMap {
            source: bb.clone(),
            target: b.clone(),
            matrix: mm,
        },
        algebra: bb,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> FieldSpec {
        FieldSpec::prime(101).unwrap()
    }

    fn alg(src: &str, f: FieldSpec) -> Arc<FinAlgebra> {
        Arc::new(FinAlgebra::parse(src, f).unwrap())
    }

    #[test]
    fn truncated_polynomial_rings() {
        let b = alg("k[x]/(x^2)", f101());
        assert_eq!(b.dim(), 2);
        let x = b.element("x").unwrap();
        assert!(is_zero_vector(&b.mul(&x, &x)));
        let b = alg("k[x]/(x^3)", f101());
        let x = b.element("x").unwrap();
        let x2 = b.mul(&x, &x);
        assert_eq!(x2, b.element("x^2").unwrap());
        assert!(is_zero_vector(&b.mul(&x, &x2)));
        assert!(b.check_axioms().is_ok());
    }

    #[test]
    fn substitution_algebra() {
        let b = alg("k[x,y]/(x^2 - y, y^2)", FieldSpec::Rationals);
        assert_eq!(b.dim(), 4);
        let x = b.element("x").unwrap();
        assert_eq!(b.mul(&x, &x), b.element("y").unwrap());
        assert!(b.check_axioms().is_ok());
        assert!(b.is_local());
    }

    #[test]
    fn var_image_maps() {
        let f = f101();
        let r = alg("k[x]/(x^6)", f);
        let b = alg("k[x]/(x^3)", f);
        let p = AlgebraMap::from_var_image_strs(&r, &b, &["x"]).unwrap();
        assert!(p.is_surjective());
        let small = alg("k[x]/(x^2)", f);
        let err = AlgebraMap::from_var_image_strs(&small, &b, &["x"]).unwrap_err();
        assert_eq!(err, Error::RelationNotKilled("x^2".into()));
        let id = AlgebraMap::from_var_image_strs(&b, &b, &["x"]).unwrap();
        assert_eq!(id.matrix, Matrix::identity(f, 3));
    }

    #[test]
    fn tensor_square_structure() {
        let f = f101();
        let b = alg("k[x]/(x^2)", f);
        let t = tensor_square(&b);
        assert_eq!(t.algebra.dim(), 4);
        assert!(t.algebra.check_axioms().is_ok());
        let x = b.element("x").unwrap();
        let prod = t.algebra.mul(&t.i1.apply(&x), &t.i2.apply(&x));
        assert_eq!(prod, kron_vec(&x, &x));
        let back = t.mult_map.compose(&t.i1);
        assert_eq!(back.matrix, Matrix::identity(f, 2));
        assert_eq!(t.mult_map.compose(&t.i2).matrix, Matrix::identity(f, 2));
        assert!(AlgebraMap::new(t.algebra.clone(), b.clone(), t.mult_map.matrix.clone()).is_ok());
    }

    #[test]
    fn quotient_by_ideal() {
        let f = f101();
        let b = alg("k[x]/(x^3)", f);
        let x = b.element("x").unwrap();
        let (c, p) = quotient_algebra(&b, &b.ideal_generated(&[x])).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(p.is_surjective());
        assert_eq!(b.augmentation().unwrap(), vec![f.one(), f.zero(), f.zero()]);
    }
}
