//! The two 16-parameter equations whose solvability characterizes
//! algebraic coherence of a variety, checked as bounded-degree identity
//! implications.

use crate::error::{AlgError, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

use super::{identity_implied, Budget, IdentitySet};

/// The two candidate identities for a given lambda vector:
///
///   z(xy) - [l1 y(zx) + l2 x(yz) + l3 y(xz) + l4 x(zy)
///            + l5 (zx)y + l6 (yz)x + l7 (xz)y + l8 (zy)x]
///   (xy)z - [l9 y(zx) + l10 x(yz) + l11 y(xz) + l12 x(zy)
///            + l13 (zx)y + l14 (yz)x + l15 (xz)y + l16 (zy)x]
pub fn orzech_equations(lambdas: &[Scalar; 16]) -> Result<(Poly, Poly)> {
    let field = lambdas[0].field();
    for l in lambdas.iter() {
        if l.field() != field {
            return Err(AlgError::FieldMismatch(
                field.to_string(),
                l.field().to_string(),
            ));
        }
    }
    let rhs_words = [
        "y(zx)", "x(yz)", "y(xz)", "x(zy)", "(zx)y", "(yz)x", "(xz)y", "(zy)x",
    ];
    let build = |lhs: &str, offset: usize| -> Result<Poly> {
        let mut p = Poly::parse(field, lhs)?;
        for (i, w) in rhs_words.iter().enumerate() {
            let term = Poly::parse(field, w)?.scale(&lambdas[offset + i]);
            p = p.sub(&term);
        }
        Ok(p)
    };
    Ok((build("z(xy)", 0)?, build("(xy)z", 8)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrzechReport {
    pub first_equation: bool,
    pub second_equation: bool,
}

impl OrzechReport {
    pub fn both(&self) -> bool {
        self.first_equation && self.second_equation
    }
}

/// Checks whether the two equations hold in the variety at truncation
/// degree d (>= 3, the degree of the equations).
pub fn orzech_check(
    v: &IdentitySet,
    lambdas: &[Scalar; 16],
    d: usize,
    budget: &Budget,
) -> Result<OrzechReport> {
    if d < 3 {
        return Err(AlgError::DegreeTooSmall { needed: 3, got: d });
    }
    let (eq1, eq2) = orzech_equations(lambdas)?;
    Ok(OrzechReport {
        first_equation: identity_implied(v, &eq1, d, budget)?,
        second_equation: identity_implied(v, &eq2, d, budget)?,
    })
}
