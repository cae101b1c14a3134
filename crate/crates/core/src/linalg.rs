//! Exact dense linear algebra over Q and GF(p): matrices, reduced
//! row-echelon form, and the subspace lattice.
//!
//! Subspaces are always stored with an RREF basis, so subspace equality is
//! plain structural equality. Every ideal/quotient computation in the
//! kernel rides on this module.

use std::fmt;

use crate::error::{AlgError, Result};
use crate::scalar::{FieldSpec, Scalar};

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            entries.extend(r);
        }
        Matrix {
            field,
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    /// Column-vector convenience: builds an n x 1 matrix.
    pub fn column(field: FieldSpec, v: &[Scalar]) -> Self {
        Matrix {
            field,
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
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

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(Scalar::neg).collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Applies the matrix to a coordinate vector (matrix * column).
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length differs from cols");
        let mut out = vec![self.field.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !v[j].is_zero() && !self[(i, j)].is_zero() {
                    out[i] = out[i].add(&self[(i, j)].mul(&v[j]));
                }
            }
        }
        out
    }

    /// Applies the matrix to a sparse coordinate vector.
    pub fn apply_sparse(&self, v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.rows];
        for (j, c) in v {
            for i in 0..self.rows {
                if !self[(i, *j)].is_zero() {
                    out[i] = out[i].add(&self[(i, *j)].mul(c));
                }
            }
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut r = self.row(i).to_vec();
            r.extend_from_slice(other.row(i));
            rows.push(r);
        }
        Matrix::from_rows(self.field, rows)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Exact Gauss-Jordan. Returns the RREF and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    m.sub_scaled_row(i, r, &factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix, or None when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for j in 0..self.cols {
            self[(r, j)] = self[(r, j)].mul(s);
        }
    }

    /// row_i -= factor * row_r
    fn sub_scaled_row(&mut self, i: usize, r: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let delta = self[(r, j)].mul(factor);
            self[(i, j)] = self[(i, j)].sub(&delta);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A linear subspace of K^n, held as an RREF basis (one vector per row,
/// no zero rows). Two subspaces are equal iff their canonical bases are
/// identical entry-wise, which the derived `PartialEq` gives us.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical span of a list of vectors.
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(AlgError::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {}",
                    v.len(),
                    ambient_dim
                )));
            }
        }
        let m = Matrix::from_rows(field, vectors.to_vec());
        Ok(Self::from_rowspace(field, ambient_dim, &m))
    }

    fn from_rowspace(field: FieldSpec, ambient_dim: usize, m: &Matrix) -> Self {
        if m.rows() == 0 {
            return Subspace::zero(field, ambient_dim);
        }
        let (red, pivots) = m.rref();
        if pivots.is_empty() {
            return Subspace::zero(field, ambient_dim);
        }
        let rows: Vec<Vec<Scalar>> = (0..pivots.len()).map(|i| red.row(i).to_vec()).collect();
        Subspace {
            ambient_dim,
            basis: Matrix::from_rows(field, rows),
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim())
            .map(|i| self.basis.row(i).to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Reduces v against the RREF basis; the remainder is zero iff v lies in
    /// the subspace. Returns (coefficients, remainder).
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension differs");
        let mut rem = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.dim());
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = rem[p].clone();
            if !c.is_zero() {
                for j in 0..self.ambient_dim {
                    let delta = self.basis[(i, j)].mul(&c);
                    rem[j] = rem[j].sub(&delta);
                }
            }
            coeffs.push(c);
        }
        (coeffs, rem)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).1.iter().all(Scalar::is_zero)
    }

    /// Coordinates of v in the canonical basis; None when v is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (coeffs, rem) = self.reduce(v);
        if rem.iter().all(Scalar::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other
            .basis_vectors()
            .iter()
            .all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut vectors = self.basis_vectors();
        vectors.extend(other.basis_vectors());
        Subspace::span(self.field(), self.ambient_dim, &vectors)
    }

    /// Intersection by the kernel-of-stacked-bases method: solve
    /// u*A - v*B = 0 over row coefficient vectors (u, v).
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field(), self.ambient_dim));
        }
        // Columns of the stacked matrix are the basis vectors of both spaces.
        let stacked = self.basis.transpose().hstack(&other.basis.transpose());
        let ker = kernel_basis(&stacked);
        let mut vectors = Vec::new();
        for w in &ker {
            // u = first dim(self) coordinates; intersection vector = u * basis(self)
            let mut v = vec![self.field().zero(); self.ambient_dim];
            for (i, c) in w.iter().take(self.dim()).enumerate() {
                if !c.is_zero() {
                    for j in 0..self.ambient_dim {
                        v[j] = v[j].add(&self.basis[(i, j)].mul(c));
                    }
                }
            }
            vectors.push(v);
        }
        Subspace::span(self.field(), self.ambient_dim, &vectors)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(AlgError::DimensionMismatch(format!(
                "ambient dimensions {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        if self.field() != other.field() {
            return Err(AlgError::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ));
        }
        Ok(())
    }
}

/// Incremental row echelonizer: rows are kept fully reduced with pivot
/// columns in increasing insertion-independent order. `insert` reduces the
/// candidate against the current rows and keeps it only when independent.
#[derive(Debug, Clone)]
pub struct RrefAccum {
    field: FieldSpec,
    width: usize,
    /// (pivot column, reduced row) sorted by pivot column
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RrefAccum {
    pub fn new(field: FieldSpec, width: usize) -> Self {
        RrefAccum {
            field,
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v in place against the stored rows; returns the first
    /// nonzero column afterwards, if any.
    fn reduce_vec(&self, v: &mut [Scalar]) -> Option<usize> {
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if c.is_zero() {
                continue;
            }
            for j in *p..self.width {
                if !row[j].is_zero() {
                    v[j] = v[j].sub(&c.mul(&row[j]));
                }
            }
        }
        v.iter().position(|c| !c.is_zero())
    }

    /// Inserts a vector; true iff it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.width);
        let Some(p) = self.reduce_vec(&mut v) else {
            return false;
        };
        let inv = v[p].inv().expect("leading entry nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        // back-substitute into earlier rows to keep full reduction
        for (_, row) in self.rows.iter_mut() {
            let c = row[p].clone();
            if !c.is_zero() {
                for j in 0..self.width {
                    if !v[j].is_zero() {
                        row[j] = row[j].sub(&c.mul(&v[j]));
                    }
                }
            }
        }
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, v));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce_vec(&mut w).is_none()
    }

    pub fn into_subspace(self, ambient_dim: usize) -> Subspace {
        assert_eq!(self.width, ambient_dim);
        if self.rows.is_empty() {
            return Subspace::zero(self.field, ambient_dim);
        }
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        let basis = Matrix::from_rows(self.field, self.rows.into_iter().map(|(_, r)| r).collect());
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }
}

/// Basis of the null space { v | m * v = 0 } of m acting on column vectors.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = m.field();
    let n = m.cols();
    let (red, pivots) = m.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![field.zero(); n];
        v[fc] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = red[(r, fc)].neg();
        }
        basis.push(v);
    }
    basis
}

/// Kernel and image of a matrix acting on column vectors, both canonical.
pub fn map_kernel_image(m: &Matrix) -> (Subspace, Subspace) {
    let field = m.field();
    let kernel = Subspace::span(field, m.cols(), &kernel_basis(m)).expect("kernel vectors fit");
    let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|j| m.col(j)).collect();
    let image = Subspace::span(field, m.rows(), &cols).expect("columns fit");
    (kernel, image)
}

/// Data of the quotient K^n / sub: a projection onto the non-pivot
/// coordinates, a section picking canonical coset representatives, and the
/// representatives themselves. projection * section = identity.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub projection: Matrix,
    pub section: Matrix,
    pub coset_basis: Vec<Vec<Scalar>>,
}

pub fn quotient_data(ambient_dim: usize, sub: &Subspace) -> QuotientData {
    assert_eq!(sub.ambient_dim(), ambient_dim);
    let field = sub.field();
    let nonpivots: Vec<usize> = (0..ambient_dim)
        .filter(|c| !sub.pivots().contains(c))
        .collect();
    let q = nonpivots.len();
    // projection row j reads off coordinate nonpivots[j] of (v reduced mod sub)
    let mut projection = Matrix::zeros(field, q, ambient_dim);
    for (j, &nj) in nonpivots.iter().enumerate() {
        projection[(j, nj)] = field.one();
        for (i, &pi) in sub.pivots().iter().enumerate() {
            projection[(j, pi)] = sub.basis()[(i, nj)].neg();
        }
    }
    let mut section = Matrix::zeros(field, ambient_dim, q);
    let mut coset_basis = Vec::with_capacity(q);
    for (j, &nj) in nonpivots.iter().enumerate() {
        section[(nj, j)] = field.one();
        let mut rep = vec![field.zero(); ambient_dim];
        rep[nj] = field.one();
        coset_basis.push(rep);
    }
    QuotientData {
        projection,
        section,
        coset_basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf2() -> FieldSpec {
        FieldSpec::PrimeField(2)
    }

    fn qv(vals: &[i64]) -> Vec<Scalar> {
        vals.iter().map(|&n| q().from_int(n)).collect()
    }

    fn qm(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(q(), rows.iter().map(|r| qv(r)).collect())
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = Matrix::identity(q(), 3);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one() {
        let m = qm(&[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, qm(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_gf2() {
        let f = gf2();
        let m = Matrix::from_rows(f, vec![vec![f.one(), f.one()], vec![f.one(), f.zero()]]);
        let (r, _) = m.rref();
        assert_eq!(r, Matrix::identity(f, 2));
    }

    #[test]
    fn span_examples() {
        let empty = Subspace::span(q(), 2, &[]).unwrap();
        assert_eq!(empty.dim(), 0);
        let line = Subspace::span(q(), 2, &[qv(&[1, 1]), qv(&[2, 2])]).unwrap();
        assert_eq!(line.dim(), 1);
        assert_eq!(line.basis_vectors(), vec![qv(&[1, 1])]);
        let full = Subspace::span(q(), 2, &[qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])]).unwrap();
        assert!(full.is_full());
    }

    #[test]
    fn subspace_lattice_ops() {
        let x_axis = Subspace::span(q(), 2, &[qv(&[1, 0])]).unwrap();
        let y_axis = Subspace::span(q(), 2, &[qv(&[0, 1])]).unwrap();
        assert!(x_axis.intersect(&y_axis).unwrap().is_zero());
        assert!(x_axis.sum(&y_axis).unwrap().is_full());
        let diag = Subspace::span(q(), 2, &[qv(&[1, 1])]).unwrap();
        assert!(diag.contains_vector(&qv(&[1, 1])));
        assert!(!diag.contains_vector(&qv(&[1, 0])));
    }

    #[test]
    fn modular_dimension_identity() {
        // dim(a) + dim(b) = dim(a+b) + dim(a n b) on a handful of planes in Q^4
        let a = Subspace::span(q(), 4, &[qv(&[1, 0, 0, 0]), qv(&[0, 1, 1, 0])]).unwrap();
        let b = Subspace::span(q(), 4, &[qv(&[0, 1, 1, 0]), qv(&[0, 0, 1, 1])]).unwrap();
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
        assert!(s.contains(&a) && s.contains(&b));
        assert!(a.contains(&i) && b.contains(&i));
    }

    #[test]
    fn kernel_image_rank_nullity() {
        let zero = Matrix::zeros(q(), 2, 2);
        let (k, im) = map_kernel_image(&zero);
        assert!(k.is_full());
        assert!(im.is_zero());

        let id = Matrix::identity(q(), 2);
        let (k, im) = map_kernel_image(&id);
        assert!(k.is_zero());
        assert!(im.is_full());

        let f = gf2();
        let ones = Matrix::from_rows(f, vec![vec![f.one(), f.one()], vec![f.one(), f.one()]]);
        let (k, im) = map_kernel_image(&ones);
        let diag = Subspace::span(f, 2, &[vec![f.one(), f.one()]]).unwrap();
        assert_eq!(k, diag);
        assert_eq!(im, diag);
        assert_eq!(k.dim() + im.dim(), 2);
    }

    #[test]
    fn quotient_data_properties() {
        // sub = 0 -> projection is the identity
        let zero_sub = Subspace::zero(q(), 3);
        let qd = quotient_data(3, &zero_sub);
        assert_eq!(qd.projection, Matrix::identity(q(), 3));

        // sub = everything -> quotient dimension 0
        let full = Subspace::full(q(), 3);
        let qd = quotient_data(3, &full);
        assert_eq!(qd.projection.rows(), 0);

        // ambient Q^2, sub = span{(1,1)}: projection kills (1,1), rank 1
        let diag = Subspace::span(q(), 2, &[qv(&[1, 1])]).unwrap();
        let qd = quotient_data(2, &diag);
        assert_eq!(qd.projection.rows(), 1);
        assert!(qd
            .projection
            .apply(&qv(&[1, 1]))
            .iter()
            .all(Scalar::is_zero));
        assert_eq!(qd.projection.rank(), 1);
        // projection o section = identity on the quotient
        assert_eq!(qd.projection.matmul(&qd.section), Matrix::identity(q(), 1));
        // kernel of projection equals sub exactly
        let (ker, _) = map_kernel_image(&qd.projection);
        assert_eq!(ker, diag);
    }
}
