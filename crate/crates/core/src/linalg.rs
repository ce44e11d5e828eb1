//! Dense exact matrices over Q and F_p.
//!
//! Echelon normalization used everywhere:
//! * `rref` is the reduced row echelon form with leftmost pivots, pivot entries 1.
//! * kernel basis vectors are indexed by the free (non-pivot) columns in increasing
//!   order; the vector for free column `f` has a 1 at `f`, 0 at the other free
//!   columns and minus the reduced entries at the pivot columns.
//! * the cokernel projection has as rows the kernel basis of the transpose, so its
//!   restriction to the non-pivot rows of the column space is the identity.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{inv_mod, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("dimension mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("linear system has no solution")]
    NoSolution,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Entries {
    Rational(Vec<BigRational>),
    Residue { p: u64, values: Vec<u64> },
}

/// A dense row-major matrix whose entries share one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

/// Reduced row echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

/// Rank and kernel of a matrix; `basis` is `cols x nullity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub rank: usize,
    pub basis: Matrix,
    pub free: Vec<usize>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates of vectors lying in the kernel (columns of `v`) in the basis.
    pub fn coordinates(&self, v: &Matrix) -> Matrix {
        v.select_rows(&self.free)
    }
}

/// Cokernel of `m : k^cols -> k^rows` as a projection `dim x rows` with a section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub dim: usize,
    pub projection: Matrix,
    pub section: Matrix,
}

fn dim_err(op: &'static str, a: &Matrix, b: &Matrix) -> LinalgError {
    LinalgError::DimensionMismatch {
        op,
        left_rows: a.rows,
        left_cols: a.cols,
        right_rows: b.rows,
        right_cols: b.cols,
    }
}

fn rat_to_scalar(q: &BigRational) -> Scalar {
    Scalar::Rational(q.clone())
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        let entries = match field {
            Field::Rational => Entries::Rational(vec![BigRational::zero(); rows * cols]),
            Field::Prime(p) => Entries::Residue {
                p,
                values: vec![0; rows * cols],
            },
        };
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        let one = Scalar::one(field);
        for i in 0..n {
            m.set(i, i, &one);
        }
        m
    }

    /// Builds from small integers, row-major.
    pub fn from_i64(field: Field, rows: usize, cols: usize, data: &[i64]) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count");
        let mut m = Matrix::zeros(field, rows, cols);
        for (k, &x) in data.iter().enumerate() {
            m.set(k / cols.max(1), k % cols.max(1), &Scalar::from_i64(field, x));
        }
        m
    }

    pub fn from_scalars(
        field: Field,
        rows: usize,
        cols: usize,
        data: &[Scalar],
    ) -> Result<Matrix, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                op: "from_scalars",
                left_rows: rows,
                left_cols: cols,
                right_rows: data.len(),
                right_cols: 1,
            });
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for (k, x) in data.iter().enumerate() {
            if x.field() != field {
                return Err(LinalgError::FieldMismatch {
                    left: field,
                    right: x.field(),
                });
            }
            m.set(k / cols, k % cols, x);
        }
        Ok(m)
    }

    /// A single column.
    pub fn column(field: Field, data: &[Scalar]) -> Result<Matrix, LinalgError> {
        Matrix::from_scalars(field, data.len(), 1, data)
    }

    /// The `i`-th standard basis column of length `n`.
    pub fn unit_column(field: Field, n: usize, i: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, 1);
        m.set(i, 0, &Scalar::one(field));
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> Field {
        match &self.entries {
            Entries::Rational(_) => Field::Rational,
            Entries::Residue { p, .. } => Field::Prime(*p),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match &self.entries {
            Entries::Rational(v) => rat_to_scalar(&v[k]),
            Entries::Residue { p, values } => Scalar::Residue {
                value: values[k],
                modulus: *p,
            },
        }
    }

    pub fn set(&mut self, i: usize, j: usize, x: &Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        match (&mut self.entries, x) {
            (Entries::Rational(v), Scalar::Rational(q)) => v[k] = q.clone(),
            (Entries::Residue { p, values }, Scalar::Residue { value, modulus }) => {
                assert_eq!(p, modulus, "scalar from a different field");
                values[k] = *value;
            }
            _ => panic!("scalar from a different field"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Rational(v) => v.iter().all(|q| q.is_zero()),
            Entries::Residue { values, .. } => values.iter().all(|&x| x == 0),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.field(), self.rows)
    }

    /// Entries as display strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| alloc::format!("{}", self.get(i, j)))
                    .collect()
            })
            .collect()
    }

    fn check_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch {
                left: self.field(),
                right: other.field(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(dim_err("mul", self, other));
        }
        let (n, m, l) = (self.rows, self.cols, other.cols);
        let entries = match (&self.entries, &other.entries) {
            (Entries::Rational(a), Entries::Rational(b)) => {
                let mut out = vec![BigRational::zero(); n * l];
                for i in 0..n {
                    for k in 0..m {
                        let x = &a[i * m + k];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..l {
                            let y = &b[k * l + j];
                            if !y.is_zero() {
                                out[i * l + j] += x * y;
                            }
                        }
                    }
                }
                Entries::Rational(out)
            }
            (Entries::Residue { p, values: a }, Entries::Residue { values: b, .. }) => {
                let p = *p;
                let mut out = vec![0u64; n * l];
                for i in 0..n {
                    for k in 0..m {
                        let x = a[i * m + k];
                        if x == 0 {
                            continue;
                        }
                        let row = &b[k * l..(k + 1) * l];
                        let dst = &mut out[i * l..(i + 1) * l];
                        for (d, &y) in dst.iter_mut().zip(row) {
                            *d = (*d + x * y) % p;
                        }
                    }
                }
                Entries::Residue { p, values: out }
            }
            _ => unreachable!(),
        };
        Ok(Matrix {
            rows: n,
            cols: l,
            entries,
        })
    }

    fn zip_with(
        &self,
        other: &Matrix,
        op: &'static str,
        sign: bool,
    ) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(dim_err(op, self, other));
        }
        let entries = match (&self.entries, &other.entries) {
            (Entries::Rational(a), Entries::Rational(b)) => Entries::Rational(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| if sign { x + y } else { x - y })
                    .collect(),
            ),
            (Entries::Residue { p, values: a }, Entries::Residue { values: b, .. }) => {
                let p = *p;
                Entries::Residue {
                    p,
                    values: a
                        .iter()
                        .zip(b)
                        .map(|(&x, &y)| if sign { (x + y) % p } else { (x + p - y) % p })
                        .collect(),
                }
            }
            _ => unreachable!(),
        };
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, "add", true)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, "sub", false)
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Scalar::from_i64(self.field(), -1))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let entries = match (&self.entries, c) {
            (Entries::Rational(a), Scalar::Rational(q)) => {
                Entries::Rational(a.iter().map(|x| x * q).collect())
            }
            (Entries::Residue { p, values }, Scalar::Residue { value, modulus }) => {
                assert_eq!(p, modulus, "scalar from a different field");
                Entries::Residue {
                    p: *p,
                    values: values.iter().map(|&x| x * value % p).collect(),
                }
            }
            _ => panic!("scalar from a different field"),
        };
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> Matrix {
        let (r, c) = (self.rows, self.cols);
        let entries = match &self.entries {
            Entries::Rational(a) => {
                let mut out = Vec::with_capacity(r * c);
                for j in 0..c {
                    for i in 0..r {
                        out.push(a[i * c + j].clone());
                    }
                }
                Entries::Rational(out)
            }
            Entries::Residue { p, values } => {
                let mut out = Vec::with_capacity(r * c);
                for j in 0..c {
                    for i in 0..r {
                        out.push(values[i * c + j]);
                    }
                }
                Entries::Residue { p: *p, values: out }
            }
        };
        Matrix {
            rows: c,
            cols: r,
            entries,
        }
    }

    /// Copies `block` into `self` with top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert_eq!(self.field(), block.field(), "field mismatch in set_block");
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        let (bc, sc) = (block.cols, self.cols);
        match (&mut self.entries, &block.entries) {
            (Entries::Rational(dst), Entries::Rational(src)) => {
                for i in 0..block.rows {
                    for j in 0..bc {
                        dst[(r0 + i) * sc + c0 + j] = src[i * bc + j].clone();
                    }
                }
            }
            (Entries::Residue { values: dst, .. }, Entries::Residue { values: src, .. }) => {
                for i in 0..block.rows {
                    dst[(r0 + i) * sc + c0..(r0 + i) * sc + c0 + bc]
                        .copy_from_slice(&src[i * bc..(i + 1) * bc]);
                }
            }
            _ => unreachable!(),
        }
    }

    /// Adds `block` into `self` at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert_eq!(self.field(), block.field(), "field mismatch in add_block");
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        let (bc, sc) = (block.cols, self.cols);
        match (&mut self.entries, &block.entries) {
            (Entries::Rational(dst), Entries::Rational(src)) => {
                for i in 0..block.rows {
                    for j in 0..bc {
                        dst[(r0 + i) * sc + c0 + j] += &src[i * bc + j];
                    }
                }
            }
            (Entries::Residue { p, values: dst }, Entries::Residue { values: src, .. }) => {
                for i in 0..block.rows {
                    for j in 0..bc {
                        let d = &mut dst[(r0 + i) * sc + c0 + j];
                        *d = (*d + src[i * bc + j]) % *p;
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let rs: Vec<usize> = (r0..r0 + rows).collect();
        let cs: Vec<usize> = (c0..c0 + cols).collect();
        self.select_rows(&rs).select_cols(&cs)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let c = self.cols;
        let entries = match &self.entries {
            Entries::Rational(a) => Entries::Rational(
                idx.iter()
                    .flat_map(|&i| a[i * c..(i + 1) * c].iter().cloned())
                    .collect(),
            ),
            Entries::Residue { p, values } => Entries::Residue {
                p: *p,
                values: idx
                    .iter()
                    .flat_map(|&i| values[i * c..(i + 1) * c].iter().copied())
                    .collect(),
            },
        };
        Matrix {
            rows: idx.len(),
            cols: c,
            entries,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(dim_err("hstack", self, other));
        }
        let mut m = Matrix::zeros(self.field(), self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        Ok(m)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(dim_err("vstack", self, other));
        }
        let mut m = Matrix::zeros(self.field(), self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        Ok(m)
    }

    /// Block diagonal matrix `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        let mut m = Matrix::zeros(
            self.field(),
            self.rows + other.rows,
            self.cols + other.cols,
        );
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        Ok(m)
    }

    /// Kronecker product; row `i*rows(b)+k`, column `j*cols(b)+l` holds `a[i,j]*b[k,l]`.
    pub fn kronecker_product(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let mut m = Matrix::zeros(self.field(), r1 * r2, c1 * c2);
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                m.set_block(i * r2, j * c2, &other.scale(&a));
            }
        }
        Ok(m)
    }

    pub fn rref(&self) -> Rref {
        match &self.entries {
            Entries::Rational(a) => {
                let (pivots, reduced) = rref_rational(self.rows, self.cols, a);
                Rref {
                    reduced: Matrix {
                        rows: pivots.len(),
                        cols: self.cols,
                        entries: Entries::Rational(reduced),
                    },
                    pivots,
                }
            }
            Entries::Residue { p, values } => {
                let (pivots, reduced) = rref_residue(self.rows, self.cols, *p, values);
                Rref {
                    reduced: Matrix {
                        rows: pivots.len(),
                        cols: self.cols,
                        entries: Entries::Residue {
                            p: *p,
                            values: reduced,
                        },
                    },
                    pivots,
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn rank_and_kernel(&self) -> Kernel {
        let rref = self.rref();
        let field = self.field();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut basis = Matrix::zeros(field, self.cols, free.len());
        let one = Scalar::one(field);
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, &one);
            for (r, &pc) in rref.pivots.iter().enumerate() {
                let x = rref.reduced.get(r, f);
                if !x.is_zero() {
                    basis.set(pc, k, &x.neg());
                }
            }
        }
        Kernel {
            rank: rref.pivots.len(),
            basis,
            free,
        }
    }

    pub fn cokernel_projection(&self) -> Cokernel {
        let k = self.transpose().rank_and_kernel();
        let projection = k.basis.transpose();
        let mut section = Matrix::zeros(self.field(), self.rows, k.free.len());
        let one = Scalar::one(self.field());
        for (i, &f) in k.free.iter().enumerate() {
            section.set(f, i, &one);
        }
        Cokernel {
            dim: k.free.len(),
            projection,
            section,
        }
    }

    /// Particular solution of `self * x = b` for every column of `b`, free variables 0.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(b)?;
        if self.rows != b.rows {
            return Err(dim_err("solve", self, b));
        }
        let aug = self.hstack(b)?;
        let rref = aug.rref();
        if rref.pivots.iter().any(|&p| p >= self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = Matrix::zeros(self.field(), self.cols, b.cols);
        for (r, &pc) in rref.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, &rref.reduced.get(r, self.cols + j));
            }
        }
        Ok(x)
    }

    /// Whether every column of `b` lies in the column space.
    pub fn spans(&self, b: &Matrix) -> Result<bool, LinalgError> {
        match self.solve(b) {
            Ok(_) => Ok(true),
            Err(LinalgError::NoSolution) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Fraction-free Gauss-Jordan: rows are cleared of denominators, eliminated with
/// exact Bareiss division, and only the final pivot rows are normalized.
fn rref_rational(rows: usize, cols: usize, a: &[BigRational]) -> (Vec<usize>, Vec<BigRational>) {
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = &a[i * cols..(i + 1) * cols];
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][col].clone();
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                let num = &piv * &*x - &factor * y;
                debug_assert!((&num % &prev).is_zero(), "inexact Bareiss division");
                *x = num / &prev;
            }
        }
        prev = piv;
        pivots.push(col);
        r += 1;
    }
    let mut reduced = Vec::with_capacity(pivots.len() * cols);
    for (i, &pc) in pivots.iter().enumerate() {
        let d = m[i][pc].clone();
        for x in &m[i] {
            reduced.push(BigRational::new(x.clone(), d.clone()));
        }
    }
    (pivots, reduced)
}

fn rref_residue(rows: usize, cols: usize, p: u64, a: &[u64]) -> (Vec<usize>, Vec<u64>) {
    let mut m: Vec<u64> = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv_row) = (r..rows).find(|&i| m[i * cols + col] != 0) else {
            continue;
        };
        if piv_row != r {
            for j in 0..cols {
                m.swap(r * cols + j, piv_row * cols + j);
            }
        }
        let inv = inv_mod(m[r * cols + col], p);
        for j in col..cols {
            m[r * cols + j] = m[r * cols + j] * inv % p;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m[i * cols + col];
            if factor == 0 {
                continue;
            }
            for j in col..cols {
                let y = m[r * cols + j];
                let x = &mut m[i * cols + j];
                *x = (*x + (p - factor) * y) % p;
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(pivots.len() * cols);
    (pivots, m)
}
