//! Finite-dimensional algebras presented by structure constants, their
//! morphisms, and the pointed-category constructions: kernels, ideals and
//! generated closures, quotients, cokernels, coequalizers, products,
//! pullbacks, images, exactness and the Split Short Five Lemma.

mod derivations;
mod diagrams;
mod quotients;

pub use derivations::{commutator_algebra, derivations, ideal_square_is_ideal, is_associative};
pub use diagrams::{
    image_factorization, is_exact, product, pullback, ses_direct_sum_witness, ses_is_short_exact,
    split_short_five_check, JointReport, ProductData, PullbackData, SesReport, SplitFiveDiagram,
};
pub(crate) use quotients::quotient_unchecked;
pub use quotients::{coequalizer, cokernel, quotient};

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgError, Result};
use crate::linalg::{map_kernel_image, Matrix, RrefAccum, Subspace};
use crate::scalar::{FieldSpec, Scalar};

/// Shared handle to an algebra; constructions hand these around so a
/// morphism can own its endpoints.
pub type AlgRef = Arc<FdAlgebra>;

/// Sparse coordinate vector: (index, nonzero scalar), sorted by index.
pub type SparseVec = Vec<(usize, Scalar)>;

/// A finite-dimensional algebra over an exact field, given by basis names
/// and structure constants. Multiplication of arbitrary elements is the
/// bilinear extension of the basis products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdAlgebra {
    field: FieldSpec,
    basis_names: Vec<String>,
    /// products[i * dim + j] = coordinates of e_i * e_j, sparse and sorted.
    products: Vec<SparseVec>,
}

impl FdAlgebra {
    /// Builds an algebra from dense structure constants:
    /// `structure[i][j]` = coordinate vector of e_i * e_j.
    pub fn new(
        field: FieldSpec,
        basis_names: Vec<String>,
        structure: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<FdAlgebra> {
        let dim = basis_names.len();
        if structure.len() != dim || structure.iter().any(|r| r.len() != dim) {
            return Err(AlgError::DimensionMismatch(
                "structure table shape differs from basis size".into(),
            ));
        }
        let mut products = Vec::with_capacity(dim * dim);
        for row in &structure {
            for v in row {
                if v.len() != dim {
                    return Err(AlgError::DimensionMismatch(
                        "structure vector length differs from dimension".into(),
                    ));
                }
                products.push(to_sparse(v));
            }
        }
        Ok(FdAlgebra {
            field,
            basis_names,
            products,
        })
    }

    /// Builds from a function on basis pairs.
    pub fn from_fn(
        field: FieldSpec,
        basis_names: Vec<String>,
        mut f: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> FdAlgebra {
        let dim = basis_names.len();
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim);
                products.push(to_sparse(&v));
            }
        }
        FdAlgebra {
            field,
            basis_names,
            products,
        }
    }

    pub(crate) fn from_sparse(
        field: FieldSpec,
        basis_names: Vec<String>,
        products: Vec<SparseVec>,
    ) -> FdAlgebra {
        assert_eq!(products.len(), basis_names.len() * basis_names.len());
        FdAlgebra {
            field,
            basis_names,
            products,
        }
    }

    /// The zero algebra (dimension 0).
    pub fn zero_algebra(field: FieldSpec) -> FdAlgebra {
        FdAlgebra {
            field,
            basis_names: Vec::new(),
            products: Vec::new(),
        }
    }

    /// Vector space with trivial multiplication, basis e1..en.
    pub fn abelian(field: FieldSpec, dim: usize) -> FdAlgebra {
        let names = (1..=dim).map(|i| format!("e{i}")).collect();
        FdAlgebra {
            field,
            basis_names: names,
            products: vec![Vec::new(); dim * dim],
        }
    }

    /// The two-dimensional anti-commutative, non-alternating algebra over
    /// GF(2): basis {x, y} with xx = y and xy = yx = yy = 0.
    pub fn z2_example() -> FdAlgebra {
        let f = FieldSpec::PrimeField(2);
        FdAlgebra::from_fn(f, vec!["x".into(), "y".into()], |i, j| {
            if i == 0 && j == 0 {
                vec![f.zero(), f.one()]
            } else {
                vec![f.zero(), f.zero()]
            }
        })
    }

    /// The nilpotent truncation of the associative polynomial algebra
    /// `K<x>` with zero constant term: basis x^1..x^d, products x^m x^n =
    /// x^(m+n) when m+n <= d, else zero. Basis names x1..xd.
    pub fn truncated_power_algebra(field: FieldSpec, d: usize) -> FdAlgebra {
        let names = (1..=d).map(|i| format!("x{i}")).collect();
        FdAlgebra::from_fn(field, names, |i, j| {
            let mut v = vec![field.zero(); d];
            let deg = i + j + 2;
            if deg <= d {
                v[deg - 1] = field.one();
            }
            v
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim() + j]
    }

    pub fn basis_product_dense(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (k, c) in self.basis_product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// Coordinate vector of the basis element e_i.
    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        let mut acc = vec![self.field.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for (k, s) in self.basis_product(i, j) {
                    acc[*k] = acc[*k].add(&c.mul(s));
                }
            }
        }
        acc
    }

    /// Sparse bilinear product; cost scales with the supports only.
    pub fn multiply_sparse(&self, x: &SparseVec, y: &SparseVec) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.dim()];
        for (i, xi) in x {
            for (j, yj) in y {
                let c = xi.mul(yj);
                for (k, s) in self.basis_product(*i, *j) {
                    acc[*k] = acc[*k].add(&c.mul(s));
                }
            }
        }
        acc
    }

    /// e_k * v for sparse v.
    pub fn basis_mul_left(&self, k: usize, v: &SparseVec) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.dim()];
        for (j, c) in v {
            for (m, s) in self.basis_product(k, *j) {
                acc[*m] = acc[*m].add(&c.mul(s));
            }
        }
        acc
    }

    /// v * e_k for sparse v.
    pub fn basis_mul_right(&self, v: &SparseVec, k: usize) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.dim()];
        for (j, c) in v {
            for (m, s) in self.basis_product(*j, k) {
                acc[*m] = acc[*m].add(&c.mul(s));
            }
        }
        acc
    }

    /// Pretty-prints a coordinate vector as a combination of basis names.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = crate::poly::display_sign_pub(c);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag} "));
            }
            out.push_str(&self.basis_names[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// S is a subalgebra iff products of its basis vectors stay inside;
    /// bilinearity makes the basis check complete.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        assert_eq!(s.ambient_dim(), self.dim());
        let rows = s.basis_vectors();
        for a in &rows {
            for b in &rows {
                if !s.contains_vector(&self.multiply(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// I is an ideal iff e_k * v and v * e_k stay inside for all basis e_k
    /// and basis vectors v of I.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        assert_eq!(s.ambient_dim(), self.dim());
        let rows = s.basis_vectors();
        for v in &rows {
            for k in 0..self.dim() {
                let ek = self.basis_vector(k);
                if !s.contains_vector(&self.multiply(&ek, v))
                    || !s.contains_vector(&self.multiply(v, &ek))
                {
                    return false;
                }
            }
        }
        self.is_subalgebra(s)
    }

    /// Smallest ideal containing the given elements: the fixpoint of
    /// I_{n+1} = span(I_n, A*I_n, I_n*A), run as a worklist so every new
    /// independent vector is multiplied against the basis exactly once.
    pub fn generated_ideal(&self, elements: &[Vec<Scalar>]) -> Result<Subspace> {
        let n = self.dim();
        for v in elements {
            if v.len() != n {
                return Err(AlgError::DimensionMismatch(format!(
                    "element of length {} in algebra of dimension {n}",
                    v.len()
                )));
            }
        }
        let mut accum = RrefAccum::new(self.field, n);
        let mut queue: Vec<SparseVec> = Vec::new();
        for v in elements {
            if accum.insert(v.clone()) {
                queue.push(to_sparse(v));
            }
        }
        while let Some(v) = queue.pop() {
            for k in 0..n {
                for prod in [self.basis_mul_left(k, &v), self.basis_mul_right(&v, k)] {
                    let sparse = to_sparse(&prod);
                    if !sparse.is_empty() && accum.insert(prod) {
                        queue.push(sparse);
                    }
                }
            }
        }
        Ok(accum.into_subspace(n))
    }

    /// Smallest subalgebra containing the given elements: fixpoint of
    /// S_{n+1} = span(S_n, S_n * S_n).
    pub fn generated_subalgebra(&self, elements: &[Vec<Scalar>]) -> Result<Subspace> {
        let n = self.dim();
        for v in elements {
            if v.len() != n {
                return Err(AlgError::DimensionMismatch(format!(
                    "element of length {} in algebra of dimension {n}",
                    v.len()
                )));
            }
        }
        let mut accum = RrefAccum::new(self.field, n);
        let mut members: Vec<SparseVec> = Vec::new();
        let mut queue: Vec<SparseVec> = Vec::new();
        for v in elements {
            if accum.insert(v.clone()) {
                let s = to_sparse(v);
                members.push(s.clone());
                queue.push(s);
            }
        }
        while let Some(v) = queue.pop() {
            // products with every member found so far, both ways round
            let snapshot = members.clone();
            for m in &snapshot {
                for prod in [self.multiply_sparse(m, &v), self.multiply_sparse(&v, m)] {
                    let sparse = to_sparse(&prod);
                    if !sparse.is_empty() && accum.insert(prod) {
                        members.push(sparse.clone());
                        queue.push(sparse);
                    }
                }
            }
        }
        Ok(accum.into_subspace(n))
    }

    /// Structure constants induced on a multiplication-closed subspace,
    /// over the canonical RREF basis. Errors when the subspace is not
    /// closed under multiplication.
    pub fn induced_on_subspace(&self, s: &Subspace, prefix: &str) -> Result<FdAlgebra> {
        let k = s.dim();
        let names = (1..=k).map(|i| format!("{prefix}{i}")).collect();
        let rows = s.basis_vectors();
        let mut structure = Vec::with_capacity(k * k);
        for a in &rows {
            for b in &rows {
                let prod = self.multiply(a, b);
                let Some(coords) = s.coordinates(&prod) else {
                    return Err(AlgError::InputError(format!(
                        "subspace is not closed under multiplication: {} escapes",
                        self.format_element(&prod)
                    )));
                };
                structure.push(to_sparse(&coords));
            }
        }
        Ok(FdAlgebra {
            field: self.field,
            basis_names: names,
            products: structure,
        })
    }

    /// Transport of structure along an invertible matrix p: returns the
    /// algebra T with products t(x, y) = p(p^-1(x) * p^-1(y)) and the
    /// isomorphism A -> T given by p.
    pub fn transport(self: &AlgRef, p: &Matrix) -> Result<(AlgRef, Morphism)> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(AlgError::DimensionMismatch(
                "transport matrix shape differs from dimension".into(),
            ));
        }
        let pinv = p
            .inverse()
            .ok_or_else(|| AlgError::InputError("transport matrix is singular".into()))?;
        let t = FdAlgebra::from_fn(self.field, self.basis_names.clone(), |i, j| {
            let a = pinv.col(i);
            let b = pinv.col(j);
            p.apply(&self.multiply(&a, &b))
        });
        let t = Arc::new(t);
        let iso = Morphism::new(self.clone(), t.clone(), p.clone())?;
        Ok((t, iso))
    }

    /// Parses the algebra file format; see `files`.
    pub fn parse(text: &str) -> Result<FdAlgebra> {
        crate::files::parse_algebra(text)
    }
}

pub(crate) fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

impl fmt::Display for FdAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "basis {}", self.basis_names.join(" "))?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.basis_product(i, j).is_empty() {
                    writeln!(
                        f,
                        "{} * {} = {}",
                        self.basis_names[i],
                        self.basis_names[j],
                        self.format_element(&self.basis_product_dense(i, j))
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// A linear map between algebras that preserves multiplication, stored as
/// a (target-dim x source-dim) matrix on the chosen bases. Multiplicativity
/// is verified on basis pairs at construction, which bilinearity makes
/// complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: AlgRef,
    target: AlgRef,
    matrix: Matrix,
}

impl Morphism {
    pub fn new(source: AlgRef, target: AlgRef, matrix: Matrix) -> Result<Morphism> {
        if source.field() != target.field() {
            return Err(AlgError::FieldMismatch(
                source.field().to_string(),
                target.field().to_string(),
            ));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(AlgError::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        for i in 0..source.dim() {
            let fi = matrix.col(i);
            for j in 0..source.dim() {
                let fj = matrix.col(j);
                let lhs = matrix.apply(&source.basis_product_dense(i, j));
                let rhs = target.multiply(&fi, &fj);
                if lhs != rhs {
                    return Err(AlgError::NotMultiplicative {
                        i,
                        j,
                        lhs: target.format_element(&lhs),
                        rhs: target.format_element(&rhs),
                    });
                }
            }
        }
        Ok(Morphism {
            source,
            target,
            matrix,
        })
    }

    /// For maps whose multiplicativity is guaranteed by construction
    /// (quotient projections after the well-definedness check, kernel
    /// inclusions). Hot paths use this to skip the O(dim^2) re-check.
    pub(crate) fn new_unchecked(source: AlgRef, target: AlgRef, matrix: Matrix) -> Morphism {
        debug_assert_eq!(matrix.rows(), target.dim());
        debug_assert_eq!(matrix.cols(), source.dim());
        Morphism {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(a: AlgRef) -> Morphism {
        let m = Matrix::identity(a.field(), a.dim());
        Morphism {
            source: a.clone(),
            target: a,
            matrix: m,
        }
    }

    pub fn zero(source: AlgRef, target: AlgRef) -> Morphism {
        let m = Matrix::zeros(source.field(), target.dim(), source.dim());
        Morphism {
            source,
            target,
            matrix: m,
        }
    }

    pub fn source(&self) -> &AlgRef {
        &self.source
    }

    pub fn target(&self) -> &AlgRef {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// g.compose(f) = g after f.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        if f.target.as_ref() != self.source.as_ref() {
            return Err(AlgError::NotComposable(0));
        }
        Ok(Morphism {
            source: f.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.matmul(&f.matrix),
        })
    }

    pub fn kernel_subspace(&self) -> Subspace {
        map_kernel_image(&self.matrix).0
    }

    pub fn image_subspace(&self) -> Subspace {
        map_kernel_image(&self.matrix).1
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_subspace().is_zero()
    }

    /// Surjectivity of the underlying linear map. This is what "regular
    /// epimorphism" means for algebra morphisms; nothing here decides
    /// categorical epimorphisms in general.
    pub fn is_surjective(&self) -> bool {
        self.image_subspace().is_full()
    }

    /// A morphism of algebras is an isomorphism iff it is a bijection.
    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        if self.source.dim() != self.target.dim() {
            return None;
        }
        let inv = self.matrix.inverse()?;
        Some(Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: inv,
        })
    }
}

/// Kernel of a morphism: the null space with its induced structure, plus
/// the inclusion, which is a normal monomorphism.
pub fn kernel(f: &Morphism) -> (AlgRef, Morphism) {
    let sub = f.kernel_subspace();
    let alg = Arc::new(
        f.source()
            .induced_on_subspace(&sub, "k")
            .expect("kernel subspace is closed under multiplication"),
    );
    let incl_matrix = sub.basis().transpose();
    let incl = Morphism::new(alg.clone(), f.source().clone(), incl_matrix)
        .expect("kernel inclusion preserves products");
    (alg, incl)
}
