//! Quotients by ideals, and the cokernel/coequalizer constructions that
//! reduce to them.

use std::sync::Arc;

use crate::error::{AlgError, Result};
use crate::linalg::{quotient_data, Subspace};
use crate::scalar::Scalar;

use super::{to_sparse, AlgRef, FdAlgebra, Morphism};

/// Quotient of an algebra by an ideal: the algebra on the canonical coset
/// representatives (the non-pivot coordinates of the ideal's RREF basis),
/// with (a + I)(b + I) = ab + I, plus the projection morphism.
///
/// Well-definedness of the induced multiplication is verified directly by
/// representative independence; when it fails the subspace was not an
/// ideal and `NotAnIdeal` is returned.
pub fn quotient(a: &AlgRef, ideal: &Subspace) -> Result<(AlgRef, Morphism)> {
    // representative independence: shifting either factor by a basis
    // vector of the subspace must not change the projected product, and
    // products of two subspace vectors must project to zero. Together
    // with bilinearity this is exactly well-definedness of the coset
    // multiplication, and it also forces the projection to be a morphism.
    let qd = quotient_data(a.dim(), ideal);
    let sparse_ideal: Vec<crate::algebra::SparseVec> =
        ideal.basis_vectors().iter().map(|v| to_sparse(v)).collect();
    let nonpivots: Vec<usize> = (0..a.dim())
        .filter(|c| !ideal.pivots().contains(c))
        .collect();
    for u in &sparse_ideal {
        for &r in &nonpivots {
            let left = qd.projection.apply(&a.basis_mul_right(u, r));
            let right = qd.projection.apply(&a.basis_mul_left(r, u));
            if left.iter().any(|c| !c.is_zero()) || right.iter().any(|c| !c.is_zero()) {
                let dense: Vec<_> = {
                    let mut v = vec![a.field().zero(); a.dim()];
                    for (i, c) in u {
                        v[*i] = c.clone();
                    }
                    v
                };
                return Err(AlgError::NotAnIdeal(format!(
                    "multiplication on cosets is not well defined: shifting by {} changes a product",
                    a.format_element(&dense)
                )));
            }
        }
        for u2 in &sparse_ideal {
            let p = qd.projection.apply(&a.multiply_sparse(u, u2));
            if p.iter().any(|c| !c.is_zero()) {
                return Err(AlgError::NotAnIdeal(
                    "subspace is not closed under multiplication".into(),
                ));
            }
        }
    }
    Ok(quotient_unchecked(a, ideal))
}

/// Quotient construction without the well-definedness verification, for
/// internal callers whose subspace is an ideal by construction (outputs of
/// `generated_ideal`, kernels of morphisms).
pub(crate) fn quotient_unchecked(a: &AlgRef, ideal: &Subspace) -> (AlgRef, Morphism) {
    assert_eq!(ideal.ambient_dim(), a.dim(), "ideal ambient dimension");
    if ideal.is_zero() {
        return (a.clone(), Morphism::identity(a.clone()));
    }
    let qd = quotient_data(a.dim(), ideal);
    let nonpivots: Vec<usize> = (0..a.dim())
        .filter(|c| !ideal.pivots().contains(c))
        .collect();
    let qdim = nonpivots.len();
    let names: Vec<String> = nonpivots
        .iter()
        .map(|&c| a.basis_names()[c].clone())
        .collect();
    // structure on representatives: reps are single basis coordinates, so
    // each product is one sparse structure row pushed through the projection
    let mut products = Vec::with_capacity(qdim * qdim);
    for &r1 in &nonpivots {
        for &r2 in &nonpivots {
            let prod = qd.projection.apply_sparse(a.basis_product(r1, r2));
            products.push(to_sparse(&prod));
        }
    }
    let q = Arc::new(FdAlgebra::from_sparse(a.field(), names, products));
    let proj = Morphism::new_unchecked(a.clone(), q.clone(), qd.projection);
    (q, proj)
}

/// Cokernel of a morphism: quotient of the target by the smallest ideal
/// containing the image.
pub fn cokernel(f: &Morphism) -> Result<(AlgRef, Morphism)> {
    let image_vectors: Vec<Vec<Scalar>> =
        (0..f.source().dim()).map(|i| f.matrix().col(i)).collect();
    let ideal = f.target().generated_ideal(&image_vectors)?;
    Ok(quotient_unchecked(f.target(), &ideal))
}

/// Coequalizer of a parallel pair: quotient of the target by the ideal
/// generated by the differences f(e_i) - g(e_i). The cokernel is the
/// special case g = 0.
pub fn coequalizer(f: &Morphism, g: &Morphism) -> Result<(AlgRef, Morphism)> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(AlgError::NotComposable(0));
    }
    let diffs: Vec<Vec<Scalar>> = (0..f.source().dim())
        .map(|i| {
            f.matrix()
                .col(i)
                .iter()
                .zip(g.matrix().col(i))
                .map(|(a, b)| a.sub(&b))
                .collect()
        })
        .collect();
    let ideal = f.target().generated_ideal(&diffs)?;
    Ok(quotient_unchecked(f.target(), &ideal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::kernel;
    use crate::scalar::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn gf2() -> FieldSpec {
        FieldSpec::PrimeField(2)
    }

    #[test]
    fn quotient_by_zero_and_full() {
        let a = Arc::new(FdAlgebra::truncated_power_algebra(q(), 3));
        let (q0, proj0) = quotient(&a, &Subspace::zero(q(), 3)).unwrap();
        assert_eq!(q0.dim(), 3);
        assert!(proj0.is_isomorphism());
        let (qf, projf) = quotient(&a, &Subspace::full(q(), 3)).unwrap();
        assert_eq!(qf.dim(), 0);
        assert!(projf.is_surjective());
    }

    #[test]
    fn quotient_of_z2_example_by_span_y() {
        // span{y} is an ideal; the quotient is 1-dimensional and abelian
        let a = Arc::new(FdAlgebra::z2_example());
        let span_y = Subspace::span(gf2(), 2, &[a.basis_vector(1)]).unwrap();
        assert!(a.is_ideal(&span_y));
        let (quot, proj) = quotient(&a, &span_y).unwrap();
        assert_eq!(quot.dim(), 1);
        // class of x squares to the class of y, which is zero
        let xbar = quot.basis_vector(0);
        assert!(quot.multiply(&xbar, &xbar).iter().all(Scalar::is_zero));
        // kernel of the projection is exactly the ideal
        assert_eq!(proj.kernel_subspace(), span_y);
    }

    #[test]
    fn quotient_by_non_ideal_fails() {
        let a = Arc::new(FdAlgebra::truncated_power_algebra(q(), 4));
        let even = Subspace::span(q(), 4, &[a.basis_vector(1), a.basis_vector(3)]).unwrap();
        assert!(matches!(quotient(&a, &even), Err(AlgError::NotAnIdeal(_))));
    }

    #[test]
    fn cokernel_of_zero_and_identity() {
        let a = Arc::new(FdAlgebra::z2_example());
        let b = Arc::new(FdAlgebra::abelian(gf2(), 2));
        let z = Morphism::zero(a.clone(), b.clone());
        let (coker, proj) = cokernel(&z).unwrap();
        assert_eq!(coker.dim(), b.dim());
        assert!(proj.is_isomorphism());

        let id = Morphism::identity(a);
        let (coker, _) = cokernel(&id).unwrap();
        assert_eq!(coker.dim(), 0);
    }

    #[test]
    fn cokernel_of_even_inclusion() {
        // cokernel of span{x^2, x^4} -> K<x>/(deg>4) is 1-dimensional,
        // because the generated ideal is span{x^2, x^3, x^4}
        let a = Arc::new(FdAlgebra::truncated_power_algebra(q(), 4));
        let even = Subspace::span(q(), 4, &[a.basis_vector(1), a.basis_vector(3)]).unwrap();
        let sub = Arc::new(a.induced_on_subspace(&even, "s").unwrap());
        let incl = Morphism::new(sub, a.clone(), even.basis().transpose()).unwrap();
        let (coker, proj) = cokernel(&incl).unwrap();
        assert_eq!(coker.dim(), 1);
        assert!(proj.is_surjective());
    }

    #[test]
    fn coequalizer_of_equal_pair_is_iso() {
        let a = Arc::new(FdAlgebra::z2_example());
        let id = Morphism::identity(a.clone());
        let (_, proj) = coequalizer(&id, &id).unwrap();
        assert!(proj.is_isomorphism());
    }

    #[test]
    fn coequalizer_with_zero_is_cokernel() {
        let a = Arc::new(FdAlgebra::truncated_power_algebra(q(), 4));
        let even = Subspace::span(q(), 4, &[a.basis_vector(1), a.basis_vector(3)]).unwrap();
        let sub = Arc::new(a.induced_on_subspace(&even, "s").unwrap());
        let incl = Morphism::new(sub.clone(), a.clone(), even.basis().transpose()).unwrap();
        let zero = Morphism::zero(sub, a.clone());
        let (q1, p1) = coequalizer(&incl, &zero).unwrap();
        let (q2, p2) = cokernel(&incl).unwrap();
        assert_eq!(q1.as_ref(), q2.as_ref());
        assert_eq!(p1.matrix(), p2.matrix());
    }

    #[test]
    fn kernel_of_quotient_projection_is_the_ideal() {
        let a = Arc::new(FdAlgebra::truncated_power_algebra(q(), 4));
        let ideal = a.generated_ideal(&[a.basis_vector(1)]).unwrap();
        let (_, proj) = quotient(&a, &ideal).unwrap();
        let (_, incl) = kernel(&proj);
        assert_eq!(proj.kernel_subspace(), ideal);
        assert_eq!(incl.image_subspace(), ideal);
    }

    #[test]
    fn quotient_names_are_reused_from_reps() {
        let a = Arc::new(FdAlgebra::truncated_power_algebra(q(), 4));
        let ideal = a.generated_ideal(&[a.basis_vector(1)]).unwrap();
        let (quot, _) = quotient(&a, &ideal).unwrap();
        assert_eq!(quot.basis_names(), ["x1".to_string()]);
    }
}
