//! Dense exact linear algebra: reduced row echelon forms, kernels, images,
//! linear solves and quotient spaces.
//!
//! Vectors are plain `Vec<Scalar>` and act as columns. Pivoting is always the
//! leftmost nonzero column with the topmost available row, so every basis
//! returned here is reproducible.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, data).expect("rectangular literal")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let idx = i * self.cols + j;
        self.data[idx] += v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Kronecker product, indexing `(i, k) -> i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            m.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        m
    }

    /// Restricts to the given row indices.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i).iter().cloned());
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

pub fn zero_vector(field: FieldSpec, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vector(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let field = a.first().map_or(FieldSpec::Rationals, Scalar::field);
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// `a + c * b` accumulated into `a`.
pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += &(c * y);
        }
    }
}

// ---------------------------------------------------------------------------
// Elimination kernels. Prime fields run on raw residues; the rationals run on
// `BigRational`. Both follow the same pivoting rule.

trait Elim: Clone {
    fn is_zero(&self) -> bool;
}

trait ElimField {
    type E: Elim;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - f * b`
    fn sub_mul(&self, a: &Self::E, f: &Self::E, b: &Self::E) -> Self::E;
}

impl Elim for u64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Elim for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

struct ModP(u64);

impl ElimField for ModP {
    type E = u64;
    fn inv(&self, a: &u64) -> u64 {
        let mut e = self.0 - 2;
        let mut b = *a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.0;
            }
            b = b * b % self.0;
            e >>= 1;
        }
        acc
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub_mul(&self, a: &u64, f: &u64, b: &u64) -> u64 {
        (a + self.0 - f * b % self.0) % self.0
    }
}

struct Rat;

impl ElimField for Rat {
    type E = BigRational;
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        a - f * b
    }
}

/// In-place Gauss-Jordan on a row-major buffer; pivots are searched only in
/// the first `pivot_cols` columns. Returns pivot columns.
fn rref_core<F: ElimField>(
    f: &F,
    data: &mut [F::E],
    rows: usize,
    cols: usize,
    pivot_cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !data[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(&data[r * cols + c]);
        for j in c..cols {
            let v = &data[r * cols + j];
            if !v.is_zero() {
                data[r * cols + j] = f.mul(v, &inv);
            }
        }
        let pivot_row: Vec<F::E> = data[r * cols..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c].clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let b = &pivot_row[j];
                if !b.is_zero() {
                    data[i * cols + j] = f.sub_mul(&data[i * cols + j], &factor, b);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rref_partial(m: &Matrix, pivot_cols: usize) -> (Matrix, Vec<usize>) {
    match m.field {
        FieldSpec::Prime(p) => {
            let mut buf: Vec<u64> = m
                .data
                .iter()
                .map(|s| match s {
                    Scalar::Modular { value, .. } => *value as u64,
                    Scalar::Rational(_) => panic!("rational entry in prime-field matrix"),
                })
                .collect();
            let pivots = rref_core(&ModP(p as u64), &mut buf, m.rows, m.cols, pivot_cols);
            let data = buf
                .into_iter()
                .map(|v| Scalar::Modular {
                    value: v as u32,
                    modulus: p,
                })
                .collect();
            (
                Matrix {
                    field: m.field,
                    rows: m.rows,
                    cols: m.cols,
                    data,
                },
                pivots,
            )
        }
        FieldSpec::Rationals => {
            let mut buf: Vec<BigRational> = m
                .data
                .iter()
                .map(|s| match s {
                    Scalar::Rational(r) => r.clone(),
                    Scalar::Modular { .. } => panic!("prime-field entry in rational matrix"),
                })
                .collect();
            let pivots = rref_core(&Rat, &mut buf, m.rows, m.cols, pivot_cols);
            let data = buf.into_iter().map(Scalar::Rational).collect();
            (
                Matrix {
                    field: m.field,
                    rows: m.rows,
                    cols: m.cols,
                    data,
                },
                pivots,
            )
        }
    }
}

/// Reduced row echelon form and the (strictly increasing) pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    rref_partial(m, m.cols)
}

/// A subspace of `field^ambient_dim`, stored by its canonical basis: the
/// nonzero rows of the reduced row echelon form of any spanning set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    field: FieldSpec,
    ambient_dim: usize,
    vectors: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        SubspaceBasis {
            field,
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim)
            .map(|i| unit_vector(field, ambient_dim, i))
            .collect();
        SubspaceBasis {
            field,
            ambient_dim,
            vectors,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return SubspaceBasis::zero(field, ambient_dim);
        }
        let rows: Vec<Vec<Scalar>> = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), ambient_dim, "vector outside ambient space");
                v.clone()
            })
            .collect();
        let m = Matrix::from_rows(field, rows).expect("rectangular");
        let (r, pivots) = rref(&m);
        let vectors = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        SubspaceBasis {
            field,
            ambient_dim,
            vectors,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn as_columns(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient_dim, &self.vectors)
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim);
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.vectors) {
            axpy(&mut residual, &-c, b);
        }
        is_zero_vector(&residual).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        SubspaceBasis::span(self.field, self.ambient_dim, &all)
    }

    /// Linear combination `sum coords[i] * basis[i]`.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut v = zero_vector(self.field, self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.vectors) {
            axpy(&mut v, c, b);
        }
        v
    }
}

/// Basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &Matrix) -> SubspaceBasis {
    let (r, pivots) = rref(m);
    let field = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vector(field, m.cols);
        v[free] = field.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, free);
        }
        vectors.push(v);
    }
    SubspaceBasis::span(field, m.cols, &vectors)
}

/// Basis of the column space of `m`.
pub fn image_basis(m: &Matrix) -> SubspaceBasis {
    SubspaceBasis::span(m.field, m.rows, &m.columns())
}

/// Reusable solver for `m x = b`: the row reduction is done once.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    // transform T with T * m = rref(m)
    transform: Matrix,
    pivots: Vec<usize>,
}

impl LinearSolver {
    pub fn new(m: &Matrix) -> Self {
        let aug = m.hstack(&Matrix::identity(m.field, m.rows));
        let (r, pivots) = rref_partial(&aug, m.cols);
        let mut transform = Matrix::zeros(m.field, m.rows, m.rows);
        for i in 0..m.rows {
            for j in 0..m.rows {
                transform.set(i, j, r.get(i, m.cols + j).clone());
            }
        }
        LinearSolver {
            field: m.field,
            rows: m.rows,
            cols: m.cols,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A solution supported on pivot columns, or `None` when `b` is not in the image.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let c = self.transform.mul_vec(b);
        if c[self.pivots.len()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = zero_vector(self.field, self.cols);
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = c[i].clone();
        }
        Some(x)
    }
}

/// Solves `m x = b`; `Ok(None)` means no solution.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    Ok(LinearSolver::new(m).solve(b))
}

/// A complement of a subspace together with quotient coordinates.
///
/// `representatives` are the standard basis vectors at the non-pivot
/// positions of the subspace's canonical basis; `coordinates` maps an ambient
/// vector to its class, and `projection = reps * coordinates` is the
/// idempotent projection along the subspace.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub representatives: Vec<Vec<Scalar>>,
    pub coordinates: Matrix,
    pub projection: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.coordinates.mul_vec(v)
    }

    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let field = self.coordinates.field();
        let mut v = zero_vector(field, self.coordinates.cols());
        for (c, r) in coords.iter().zip(&self.representatives) {
            axpy(&mut v, c, r);
        }
        v
    }

    /// Representatives as columns (`ambient x dim`).
    pub fn section(&self) -> Matrix {
        Matrix::from_columns(
            self.coordinates.field(),
            self.coordinates.cols(),
            &self.representatives,
        )
    }
}

pub fn quotient_space(ambient_dim: usize, sub: &SubspaceBasis) -> Quotient {
    assert_eq!(sub.ambient_dim(), ambient_dim);
    let field = sub.field();
    let mut is_pivot = vec![false; ambient_dim];
    for &p in sub.pivots() {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..ambient_dim).filter(|&c| !is_pivot[c]).collect();
    let mut coordinates = Matrix::zeros(field, free.len(), ambient_dim);
    for (qi, &j) in free.iter().enumerate() {
        coordinates.set(qi, j, field.one());
        for (s, &p) in sub.vectors().iter().zip(sub.pivots()) {
            if !s[j].is_zero() {
                coordinates.set(qi, p, -&s[j]);
            }
        }
    }
    let representatives: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&j| unit_vector(field, ambient_dim, j))
        .collect();
    let section = Matrix::from_columns(field, ambient_dim, &representatives);
    let projection = section.mul(&coordinates);
    Quotient {
        representatives,
        coordinates,
        projection,
    }
}

/// Quotient `outer / inner` of nested subspaces, in coordinates of `outer`'s
/// canonical basis. Class coordinates of an ambient vector `v` in `outer` are
/// `quotient.class_of(outer.coordinates(v))`.
pub fn relative_quotient(outer: &SubspaceBasis, inner: &SubspaceBasis) -> Quotient {
    let inner_coords: Vec<Vec<Scalar>> = inner
        .vectors()
        .iter()
        .map(|v| {
            outer
                .coordinates(v)
                .expect("inner subspace must lie in outer")
        })
        .collect();
    let sub = SubspaceBasis::span(outer.field(), outer.dim(), &inner_coords);
    quotient_space(outer.dim(), &sub)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if m.rows != m.cols {
        return None;
    }
    let solver = LinearSolver::new(m);
    if solver.rank() != m.rows {
        return None;
    }
    let cols: Vec<Vec<Scalar>> = (0..m.rows)
        .map(|i| {
            solver
                .solve(&unit_vector(m.field, m.rows, i))
                .expect("full rank")
        })
        .collect();
    Some(Matrix::from_columns(m.field, m.rows, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = f5();
        let id = Matrix::identity(f, 3);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
        let z = Matrix::zeros(f, 2, 2);
        let (r, p) = rref(&z);
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_rank_one_over_f5() {
        let f = f5();
        let m = Matrix::from_i64(f, &[&[1, 2], &[2, 4]]);
        let (r, p) = rref(&m);
        assert_eq!(r, Matrix::from_i64(f, &[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_over_f5() {
        let f = f5();
        let m = Matrix::from_i64(f, &[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 1);
        // oracle: (3, 1) is killed, since 1*3 + 2*1 = 5 and 2*3 + 4*1 = 10
        let v = vec![f.from_i64(3), f.from_i64(1)];
        assert!(is_zero_vector(&m.mul_vec(&v)));
        assert!(k.contains(&v));
        assert_eq!(kernel_basis(&Matrix::identity(f, 3)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(f, 2, 4)).dim(), 4);
    }

    #[test]
    fn image_examples() {
        let q = FieldSpec::Rationals;
        assert_eq!(image_basis(&Matrix::identity(q, 4)).dim(), 4);
        assert_eq!(image_basis(&Matrix::zeros(q, 3, 2)).dim(), 0);
        let m = Matrix::from_i64(q, &[&[1, 2], &[2, 4]]);
        let im = image_basis(&m);
        assert_eq!(im.dim(), 1);
        assert!(im.contains(&[q.from_i64(1), q.from_i64(2)]));
    }

    #[test]
    fn solve_examples() {
        let q = FieldSpec::Rationals;
        let b = vec![q.from_i64(3), q.from_i64(-1)];
        assert_eq!(solve(&Matrix::identity(q, 2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(q, 2, 2), &b).unwrap(), None);
        let two = Matrix::from_i64(q, &[&[2]]);
        let x = solve(&two, &[q.from_i64(3)]).unwrap().unwrap();
        assert_eq!(x[0].to_string(), "3/2");
        assert!(solve(&two, &b).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = FieldSpec::Rationals;
        let full = SubspaceBasis::full(q, 3);
        assert_eq!(quotient_space(3, &full).dim(), 0);
        let zero = SubspaceBasis::zero(q, 3);
        let quo = quotient_space(3, &zero);
        assert_eq!(quo.projection, Matrix::identity(q, 3));
        let diag = SubspaceBasis::span(q, 2, &[vec![q.one(), q.one()]]);
        let quo = quotient_space(2, &diag);
        assert_eq!(quo.dim(), 1);
        assert!(is_zero_vector(&quo.projection.mul_vec(&[q.one(), q.one()])));
        assert_eq!(quo.projection.mul(&quo.projection), quo.projection);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FieldSpec::prime(101).unwrap();
        let m = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        assert!(inverse(&Matrix::from_i64(f, &[&[1, 2], &[2, 4]])).is_none());
    }
}
