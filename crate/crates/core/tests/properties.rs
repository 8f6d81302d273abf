//! Property tests for the exact linear algebra, the algebra layer and the
//! linearity of the class maps.

use std::sync::Arc;

use cohops_core::algebra::FinAlgebra;
use cohops_core::corpus::{algebra, f101, regular, residue};
use cohops_core::extensions::{Cocycle2, ExalSpace};
use cohops_core::homology::{resolve, CoverStrategy, ExtSpace};
use cohops_core::linalg::{
    add_vectors, image_basis, kernel_basis, quotient_space, rref, scale_vector, LinearSolver,
};
use cohops_core::{FieldSpec, Matrix, Scalar, SubspaceBasis};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
        Just(FieldSpec::prime(101).unwrap()),
    ]
}

fn matrix(f: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-4i64..=4, rows * cols).prop_map(move |xs| {
        let rows_v: Vec<Vec<Scalar>> = xs
            .chunks(cols)
            .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(f, rows_v).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    (fields(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| matrix(f, r, c))
}

fn vector(f: FieldSpec, n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(-6i64..=6, n)
        .prop_map(move |xs| xs.iter().map(|&x| f.from_i64(x)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_column_count(m in any_matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        prop_assert_eq!(image_basis(&m).dim(), m.rank());
        for v in k.vectors() {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rref_is_idempotent(m in any_matrix()) {
        let (r, pivots) = rref(&m);
        let (rr, pivots2) = rref(&r);
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn solve_inverts_products((m, x) in any_matrix().prop_flat_map(|m| {
        let (f, c) = (m.field(), m.cols());
        (Just(m), vector(f, c))
    })) {
        let b = m.mul_vec(&x);
        let y = LinearSolver::new(&m).solve(&b).expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn quotient_coordinates_split_the_subspace((m, v) in any_matrix().prop_flat_map(|m| {
        let (f, r) = (m.field(), m.rows());
        (Just(m), vector(f, r))
    })) {
        let sub = image_basis(&m);
        let q = quotient_space(m.rows(), &sub);
        prop_assert_eq!(q.dim() + sub.dim(), m.rows());
        for s in sub.vectors() {
            prop_assert!(q.class_of(s).iter().all(Scalar::is_zero));
        }
        let c = q.class_of(&v);
        prop_assert_eq!(q.class_of(&q.lift(&c)), c.clone());
        // v minus the lift of its class lies in the subspace
        let rest = add_vectors(&v, &scale_vector(&-m.field().one(), &q.lift(&c)));
        prop_assert!(sub.contains(&rest));
        prop_assert_eq!(q.projection.mul(&q.projection), q.projection.clone());
    }

    #[test]
    fn subspace_sum_contains_both(a in any_matrix()) {
        let f = a.field();
        let half = a.cols() / 2;
        let cols = a.columns();
        let s1 = SubspaceBasis::span(f, a.rows(), &cols[..half]);
        let s2 = SubspaceBasis::span(f, a.rows(), &cols[half..]);
        let s = s1.sum(&s2);
        prop_assert!(s.contains_subspace(&s1) && s.contains_subspace(&s2));
        prop_assert_eq!(s, image_basis(&a));
    }

    #[test]
    fn scalar_field_axioms(f in fields(), a in -30i64..30, b in -30i64..30, c in -30i64..30) {
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }
}

fn corpus() -> Vec<Arc<FinAlgebra>> {
    let f = f101();
    [
        "k[x]/(x^3)",
        "k[x,y]/(x^2,x*y,y^2)",
        "k[x,y]/(x^2,y^2)",
        "k[x,y]/(x^2-y^3,x*y)",
    ]
    .iter()
    .map(|s| algebra(s, f).unwrap())
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn algebra_multiplication_is_associative_and_commutative(which in 0usize..4, seed in any::<[i8; 48]>()) {
        let b = &corpus()[which];
        let f = b.field();
        let d = b.dim();
        let pick = |o: usize| (0..d).map(|i| f.from_i64(seed[(o + i) % 48] as i64)).collect::<Vec<_>>();
        let (x, y, z) = (pick(0), pick(16), pick(32));
        prop_assert_eq!(b.mul(&b.mul(&x, &y), &z), b.mul(&x, &b.mul(&y, &z)));
        prop_assert_eq!(b.mul(&x, &y), b.mul(&y, &x));
        prop_assert_eq!(b.mul(b.unit(), &x), x);
    }

    #[test]
    fn exal_classes_are_linear(which in 0usize..3, seed in any::<[i8; 24]>(), s in -20i64..20) {
        let b = &corpus()[which];
        let c = regular(b);
        let space = ExalSpace::new(b, &c).unwrap();
        let z = space.cocycle_space();
        let f = b.field();
        let coords = |o: usize| (0..z.dim()).map(|i| f.from_i64(seed[(o + i) % 24] as i64)).collect::<Vec<_>>();
        let u = Cocycle2::from_vector(b, &c, &z.combine(&coords(0)));
        let v = Cocycle2::from_vector(b, &c, &z.combine(&coords(11)));
        let s = f.from_i64(s);
        let (cu, cv) = (space.class_of(&u).unwrap(), space.class_of(&v).unwrap());
        prop_assert_eq!(space.class_of(&u.add(&v)).unwrap(), add_vectors(&cu, &cv));
        prop_assert_eq!(space.class_of(&u.scale(&s)).unwrap(), scale_vector(&s, &cu));
    }

    #[test]
    fn ext_class_map_is_linear(which in 0usize..3, n in 1usize..4, seed in any::<[i8; 24]>()) {
        let b = &corpus()[which];
        let k = residue(b).unwrap();
        let res = Arc::new(resolve(&k, n + 1, CoverStrategy::Minimal));
        let space = ExtSpace::new(&res, &k, n).unwrap();
        let z = space.cocycle_space();
        let f = b.field();
        let coords = |o: usize| (0..z.dim()).map(|i| f.from_i64(seed[(o + i) % 24] as i64)).collect::<Vec<_>>();
        let (u, v) = (z.combine(&coords(0)), z.combine(&coords(7)));
        let (cu, cv) = (space.class_of_cocycle(&u).unwrap(), space.class_of_cocycle(&v).unwrap());
        prop_assert_eq!(space.class_of_cocycle(&add_vectors(&u, &v)).unwrap(), add_vectors(&cu, &cv));
        // coboundaries have class zero
        for w in space.coboundary_space().vectors() {
            prop_assert!(space.class_of_cocycle(w).unwrap().iter().all(Scalar::is_zero));
        }
    }
}
