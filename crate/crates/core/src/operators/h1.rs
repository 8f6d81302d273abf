//! `H^1(k, B, M) = coker(Der_k(R, M) -> Hom_B(I/I^2, M))` for `B = R/I`,
//! `R = k[x_1..x_n]`, with `I/I^2` realized inside the finite ring `R/I^2`.

use std::sync::Arc;

use crate::algebra::{AlgebraMap, FinAlgebra, Poly, PolyPresentation};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::homology::module::same_algebra;
use crate::homology::FinModule;
use crate::linalg::{kernel_basis, relative_quotient, Matrix, Quotient, SubspaceBasis};

/// The first cotangent cohomology of a presented local algebra with values in `M`.
#[derive(Clone, Debug)]
pub struct H1Space {
    pub presentation: PolyPresentation,
    pub module: Arc<FinModule>,
    /// `R/I^2`.
    pub thickening: Arc<FinAlgebra>,
    /// `R/I^2 -> B`.
    pub projection: AlgebraMap,
    /// `I/I^2 = ker(projection)`, canonical basis in `R/I^2` coordinates.
    pub conormal: SubspaceBasis,
    /// `Hom_B(I/I^2, M)` inside `Hom_k(I/I^2, M)`; a map `h` (a `dim M x dim I/I^2`
    /// matrix) has coordinates `h[t][a]` at `a * dim M + t`.
    pub hom: SubspaceBasis,
    /// Columns: images of the derivations `D(x_j) = m_t`, at `j * dim M + t`.
    pub derivations: Matrix,
    pub derivation_image: SubspaceBasis,
    quotient: Quotient,
}

/// Computes `H^1(k, B, M)` for `B = k[vars]/I` given by `pres`; `M` must be a
/// module over the algebra of `pres`.
pub fn h1_compute(pres: &PolyPresentation, m: &Arc<FinModule>) -> Result<H1Space> {
    for r in &pres.relations {
        if !r.constant_term().is_zero() {
            return Err(Error::ConstantTermInRelation(r.render(&pres.vars)));
        }
    }
    let b = m.algebra();
    let check = Arc::new(FinAlgebra::from_presentation(pres)?);
    if !same_algebra(&check, b) {
        return Err(Error::Mismatch(
            "module is not over the presented algebra".into(),
        ));
    }
    let bq = b
        .quotient()
        .ok_or_else(|| Error::InvalidAlgebra("algebra has no presentation".into()))?;
    let field = pres.field;
    let n = pres.nvars();

    let mut squares = Vec::new();
    for (i, f) in pres.relations.iter().enumerate() {
        for g in &pres.relations[i..] {
            squares.push(f.mul(g));
        }
    }
    let pres2 = PolyPresentation::from_polys(field, pres.vars.clone(), squares);
    let r2 = Arc::new(FinAlgebra::from_presentation(&pres2)?);
    let q2 = r2.quotient().expect("presented");
    let cols: Vec<Vec<Scalar>> = (0..r2.dim())
        .map(|i| bq.coordinates(&q2.monomial_poly(i)))
        .collect();
    let projection = AlgebraMap::new(
        r2.clone(),
        b.clone(),
        Matrix::from_columns(field, b.dim(), &cols),
    )?;
    let conormal = projection.kernel();
    let nj = conormal.dim();
    let dm = m.dim();

    // x_k on I/I^2 in conormal coordinates, and on M through B
    let var_polys: Vec<Poly> = (0..n).map(|k| Poly::var(field, n, k)).collect();
    let mut constraints: Vec<Vec<Scalar>> = Vec::new();
    for xk in &var_polys {
        let x2 = q2.coordinates(xk);
        let xb = bq.coordinates(xk);
        let act_m = m.action_of(&xb);
        let l: Vec<Vec<Scalar>> = conormal
            .vectors()
            .iter()
            .map(|u| {
                conormal
                    .coordinates(&r2.mul(&x2, u))
                    .expect("I/I^2 is an ideal")
            })
            .collect();
        for (a, la) in l.iter().enumerate() {
            for t in 0..dm {
                let mut row = vec![field.zero(); nj * dm];
                for (c, coef) in la.iter().enumerate() {
                    if !coef.is_zero() {
                        row[c * dm + t] += coef;
                    }
                }
                for s in 0..dm {
                    let x = act_m.get(t, s);
                    if !x.is_zero() {
                        row[a * dm + s] -= x;
                    }
                }
                constraints.push(row);
            }
        }
    }
    let hom = if constraints.is_empty() {
        SubspaceBasis::full(field, nj * dm)
    } else {
        kernel_basis(&Matrix::from_rows(field, constraints)?)
    };

    // Jacobian rule: D(u) = sum_j du/dx_j . D(x_j), reduced into B
    let lifts: Vec<Poly> = conormal
        .vectors()
        .iter()
        .map(|u| {
            let mut p = Poly::zero(field, n);
            for (i, c) in u.iter().enumerate() {
                if !c.is_zero() {
                    p = p.add(&q2.monomial_poly(i).scale(c));
                }
            }
            p
        })
        .collect();
    let mut der_cols = Vec::with_capacity(n * dm);
    for j in 0..n {
        let partials: Vec<Matrix> = lifts
            .iter()
            .map(|u| m.action_of(&bq.coordinates(&u.derivative(j))))
            .collect();
        for t in 0..dm {
            let mut col = vec![field.zero(); nj * dm];
            for (a, act) in partials.iter().enumerate() {
                for s in 0..dm {
                    col[a * dm + s] = act.get(s, t).clone();
                }
            }
            der_cols.push(col);
        }
    }
    let derivations = Matrix::from_columns(field, nj * dm, &der_cols);
    let derivation_image = SubspaceBasis::span(field, nj * dm, &der_cols);
    debug_assert!(hom.contains_subspace(&derivation_image));
    let quotient = relative_quotient(&hom, &derivation_image);
    Ok(H1Space {
        presentation: pres.clone(),
        module: m.clone(),
        thickening: r2,
        projection,
        conormal,
        hom,
        derivations,
        derivation_image,
        quotient,
    })
}

impl H1Space {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn base(&self) -> &Arc<FinAlgebra> {
        self.module.algebra()
    }

    pub fn hom_dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn derivation_image_dim(&self) -> usize {
        self.derivation_image.dim()
    }

    /// `h` as a `dim M x dim I/I^2` matrix from its flat coordinates.
    pub fn hom_matrix(&self, flat: &[Scalar]) -> Matrix {
        let (dm, nj) = (self.module.dim(), self.conormal.dim());
        let mut h = Matrix::zeros(self.module.field(), dm, nj);
        for a in 0..nj {
            for t in 0..dm {
                h.set(t, a, flat[a * dm + t].clone());
            }
        }
        h
    }

    pub fn flatten(&self, h: &Matrix) -> Vec<Scalar> {
        let (dm, nj) = (self.module.dim(), self.conormal.dim());
        let mut v = Vec::with_capacity(dm * nj);
        for a in 0..nj {
            for t in 0..dm {
                v.push(h.get(t, a).clone());
            }
        }
        v
    }

    /// The `i`-th cokernel basis representative, a `B`-linear map on `I/I^2`.
    pub fn representative(&self, i: usize) -> Matrix {
        let coords = &self.quotient.representatives[i];
        self.hom_matrix(&self.hom.combine(coords))
    }

    pub fn representatives(&self) -> Vec<Matrix> {
        (0..self.dim()).map(|i| self.representative(i)).collect()
    }

    /// The restriction to `I/I^2` of the derivation with `D(x_j) = v_j`.
    pub fn derivation_hom(&self, images: &[Vec<Scalar>]) -> Matrix {
        let mut coeffs = Vec::with_capacity(self.derivations.cols());
        for v in images {
            coeffs.extend(v.iter().cloned());
        }
        self.hom_matrix(&self.derivations.mul_vec(&coeffs))
    }

    /// Cokernel coordinates of a `B`-linear `h`.
    pub fn class_of(&self, h: &Matrix) -> Result<Vec<Scalar>> {
        let flat = self.flatten(h);
        let inner = self
            .hom
            .coordinates(&flat)
            .ok_or(Error::NotLinearOnConormal)?;
        Ok(self.quotient.class_of(&inner))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn h1_dim(src: &str, field: FieldSpec) -> usize {
        let pres = PolyPresentation::parse(src, field).unwrap();
        let b = Arc::new(FinAlgebra::from_presentation(&pres).unwrap());
        let m = Arc::new(FinModule::regular(&b));
        h1_compute(&pres, &m).unwrap().dim()
    }

    #[test]
    fn known_dimensions() {
        assert_eq!(h1_dim("k[x]/(x^2)", FieldSpec::Rationals), 1);
        assert_eq!(h1_dim("k[x]/(x^5)", FieldSpec::prime(5).unwrap()), 5);
        assert_eq!(h1_dim("k[x]/(x)", FieldSpec::Rationals), 0);
        assert_eq!(
            h1_dim("k[x,y]/(x^2, y^2)", FieldSpec::prime(101).unwrap()),
            4
        );
    }

    #[test]
    fn constant_terms_are_rejected() {
        let f = FieldSpec::Rationals;
        let pres = PolyPresentation::parse("k[x]/(x^2)", f).unwrap();
        let b = Arc::new(FinAlgebra::from_presentation(&pres).unwrap());
        let m = Arc::new(FinModule::regular(&b));
        let bad = PolyPresentation::parse("k[x]/(x^2 + 1)", f).unwrap();
        assert!(matches!(
            h1_compute(&bad, &m),
            Err(Error::ConstantTermInRelation(_))
        ));
    }

    #[test]
    fn representatives_are_linear_and_derivations_vanish() {
        let f = FieldSpec::Rationals;
        let pres = PolyPresentation::parse("k[x]/(x^2)", f).unwrap();
        let b = Arc::new(FinAlgebra::from_presentation(&pres).unwrap());
        let m = Arc::new(FinModule::regular(&b));
        let h = h1_compute(&pres, &m).unwrap();
        assert_eq!(h.hom_dim(), 2);
        assert_eq!(h.derivation_image_dim(), 1);
        let r = h.representative(0);
        assert_eq!(h.class_of(&r).unwrap(), vec![f.one()]);
        let d = h.derivation_hom(&[b.unit().to_vec()]);
        assert_eq!(h.class_of(&d).unwrap(), vec![f.zero()]);
    }
}
