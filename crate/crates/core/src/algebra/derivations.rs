//! Derivation algebras, the commutator-bracket functor on associative
//! algebras, and the ideal-square probe.

use std::sync::Arc;

use crate::error::{AlgError, Result};
use crate::linalg::{kernel_basis, Matrix, Subspace};
use crate::scalar::Scalar;

use super::{AlgRef, FdAlgebra};

/// Checks associativity on basis triples, complete by trilinearity.
pub fn is_associative(a: &FdAlgebra) -> Result<()> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let eij = a.basis_product_dense(i, j);
            for k in 0..n {
                let lhs = a.multiply(&eij, &a.basis_vector(k));
                let rhs = a.multiply(&a.basis_vector(i), &a.basis_product_dense(j, k));
                if lhs != rhs {
                    return Err(AlgError::NotAssociative { i, j, k });
                }
            }
        }
    }
    Ok(())
}

/// The Lie algebra Der(A) of derivations D with D(xy) = D(x)y + xD(y),
/// computed as the null space of one linear system in the dim^2 matrix
/// entries of D, with the commutator [D, D'] = DD' - D'D as bracket.
///
/// Returns the derivation algebra together with the basis of derivations
/// as matrices acting on A.
pub fn derivations(a: &AlgRef) -> (AlgRef, Vec<Matrix>) {
    let n = a.dim();
    let field = a.field();
    // unknowns: d[r][c] flattened as r * n + c, D(e_c) = sum_r d[r][c] e_r.
    // For each pair (i, j) and output coordinate m:
    //   sum_rc d[r][c] * [c == coordinate structure] ...
    // D(e_i e_j)_m = sum_c (e_i e_j)_c d[m][c]
    // (D(e_i) e_j)_m = sum_r d[r][i] (e_r e_j)_m
    // (e_i D(e_j))_m = sum_r d[r][j] (e_i e_r)_m
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let sij = a.basis_product_dense(i, j);
            for m in 0..n {
                let mut row = vec![field.zero(); n * n];
                for c in 0..n {
                    if !sij[c].is_zero() {
                        row[m * n + c] = row[m * n + c].add(&sij[c]);
                    }
                }
                for r in 0..n {
                    // - d[r][i] (e_r e_j)_m
                    let erj = a.basis_product(r, j);
                    if let Some((_, s)) = erj.iter().find(|(k, _)| *k == m) {
                        row[r * n + i] = row[r * n + i].sub(s);
                    }
                    // - d[r][j] (e_i e_r)_m
                    let eir = a.basis_product(i, r);
                    if let Some((_, s)) = eir.iter().find(|(k, _)| *k == m) {
                        row[r * n + j] = row[r * n + j].sub(s);
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(field, 0, n * n)
    } else {
        Matrix::from_rows(field, rows)
    };
    let null = kernel_basis(&system);
    let sub = Subspace::span(field, n * n, &null).expect("derivation space fits");
    let basis_mats: Vec<Matrix> = sub
        .basis_vectors()
        .iter()
        .map(|flat| unflatten(field, flat, n))
        .collect();

    // commutator structure constants in the canonical derivation basis
    let k = basis_mats.len();
    let names: Vec<String> = (1..=k).map(|i| format!("d{i}")).collect();
    let mut structure = Vec::with_capacity(k * k);
    for di in &basis_mats {
        for dj in &basis_mats {
            let comm = di.matmul(dj).add(&dj.matmul(di).neg());
            let flat = flatten(&comm);
            let coords = sub
                .coordinates(&flat)
                .expect("commutator of derivations is a derivation");
            structure.push(super::to_sparse(&coords));
        }
    }
    let der = FdAlgebra::from_sparse(field, names, structure);
    (Arc::new(der), basis_mats)
}

fn unflatten(field: crate::scalar::FieldSpec, flat: &[Scalar], n: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for r in 0..n {
        for c in 0..n {
            m[(r, c)] = flat[r * n + c].clone();
        }
    }
    m
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        v.extend_from_slice(m.row(r));
    }
    v
}

/// The commutator bracket [x, y] = xy - yx on an associative algebra:
/// same carrier, structure constants c'(i,j) = c(i,j) - c(j,i).
pub fn commutator_algebra(a: &FdAlgebra) -> Result<FdAlgebra> {
    is_associative(a)?;
    let n = a.dim();
    Ok(FdAlgebra::from_fn(
        a.field(),
        a.basis_names().to_vec(),
        |i, j| {
            let fwd = a.basis_product_dense(i, j);
            let bwd = a.basis_product_dense(j, i);
            (0..n).map(|k| fwd[k].sub(&bwd[k])).collect()
        },
    ))
}

/// Computes I^2 = span(I * I) for an ideal I and reports whether it is
/// again an ideal (true in any 2-variety, e.g. associative algebras).
pub fn ideal_square_is_ideal(a: &FdAlgebra, ideal: &Subspace) -> Result<bool> {
    if !a.is_ideal(ideal) {
        return Err(AlgError::NotAnIdeal("input subspace".into()));
    }
    let rows = ideal.basis_vectors();
    let mut products = Vec::new();
    for x in &rows {
        for y in &rows {
            products.push(a.multiply(x, y));
        }
    }
    let square = Subspace::span(a.field(), a.dim(), &products)?;
    Ok(a.is_ideal(&square))
}
