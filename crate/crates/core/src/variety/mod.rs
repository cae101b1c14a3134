//! Varieties as identity sets: identity checking (symbolic over Q,
//! exhaustive over finite fields), the relation ideal I(A), the Birkhoff
//! reflection L(A) = A/I(A), truncated free objects and coproducts, and
//! the coherence/Orzech probes.

pub mod coproduct;
pub mod free;
pub mod generic;
pub mod orzech;

pub use coproduct::{coherence_probe, flat, truncated_coproduct, CoproductData};
pub use free::{
    homogeneous_closure_check, identity_implied, multilinearize, truncated_free, ClosureReport,
    TruncatedFreeAlgebra,
};
pub use orzech::{orzech_check, orzech_equations, OrzechReport};

use std::collections::BTreeMap;

use crate::algebra::{quotient, AlgRef, FdAlgebra, Morphism};
use crate::error::{AlgError, Result};
use crate::linalg::Subspace;
use crate::poly::Poly;
use crate::scalar::{FieldSpec, Scalar};

use generic::{coefficient_vectors, generic_evaluation, nonvanishing_point};

/// Caps on the blowup-prone computations: the basis size of truncated
/// free objects, and the number of tuples an exhaustive enumeration may
/// visit.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_basis: usize,
    pub max_tuples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis: 2000,
            max_tuples: 1_000_000,
        }
    }
}

/// A finite presentation of a variety: a named set of identity
/// polynomials over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySet {
    pub name: String,
    pub field: FieldSpec,
    pub polys: Vec<Poly>,
}

impl IdentitySet {
    pub fn new(name: &str, field: FieldSpec, polys: Vec<Poly>) -> Result<IdentitySet> {
        for p in &polys {
            if p.is_zero() {
                return Err(AlgError::InputError(
                    "identity sets consist of nonzero polynomials".into(),
                ));
            }
        }
        Ok(IdentitySet {
            name: name.to_string(),
            field,
            polys,
        })
    }

    /// Built-in presets. Names are the CLI-facing lowercase keys.
    pub fn preset(name: &str, field: FieldSpec) -> Result<IdentitySet> {
        let polys: Vec<&str> = match name {
            "alg" => vec![],
            "assoc" => vec!["x(yz) - (xy)z"],
            "comm" => vec!["xy - yx"],
            "alternative" => vec!["x(xy) - (xx)y", "(yx)x - y(xx)"],
            "antiassoc" => vec!["x(yz) + (xy)z"],
            "abelian" => vec!["xy"],
            "alternating" => vec!["xx"],
            "anticomm" => vec!["xy + yx"],
            "lie" => vec!["xx", "x(yz) + z(xy) + y(zx)"],
            "qlie" => vec!["xy + yx", "x(yz) + z(xy) + y(zx)"],
            "leibniz" => vec!["(xy)z - x(yz) - (xz)y"],
            "jordan" => vec!["xy - yx", "(xy)(xx) - x(y(xx))"],
            "jacobijordan" => vec!["xy - yx", "x(yz) + z(xy) + y(zx)"],
            _ => {
                return Err(AlgError::InputError(format!(
                    "unknown variety preset '{name}'"
                )))
            }
        };
        let polys = polys
            .into_iter()
            .map(|t| Poly::parse(field, t))
            .collect::<Result<Vec<_>>>()?;
        IdentitySet::new(name, field, polys)
    }

    pub fn preset_names() -> &'static [&'static str] {
        &[
            "alg",
            "assoc",
            "comm",
            "alternative",
            "antiassoc",
            "abelian",
            "alternating",
            "anticomm",
            "lie",
            "qlie",
            "leibniz",
            "jordan",
            "jacobijordan",
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Symbolic,
    Exhaustive,
}

impl CheckMode {
    /// Symbolic quantification is complete over Q; exhaustive enumeration
    /// is the ground truth over finite fields.
    pub fn natural_for(field: FieldSpec) -> CheckMode {
        match field {
            FieldSpec::Rationals => CheckMode::Symbolic,
            FieldSpec::PrimeField(_) => CheckMode::Exhaustive,
        }
    }
}

/// Outcome of an identity check. `conclusive` is false only when symbolic
/// mode returned a nonzero polynomial over a finite field, where vanishing
/// as a function does not follow from vanishing of coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub conclusive: bool,
    pub witness: Option<BTreeMap<String, Vec<Scalar>>>,
}

/// Decides whether p is an identity of A.
pub fn identity_holds(
    a: &FdAlgebra,
    p: &Poly,
    mode: CheckMode,
    budget: &Budget,
) -> Result<IdentityCheck> {
    if p.field() != a.field() {
        return Err(AlgError::FieldMismatch(
            p.field().to_string(),
            a.field().to_string(),
        ));
    }
    if p.is_zero() {
        return Ok(IdentityCheck {
            holds: true,
            conclusive: true,
            witness: None,
        });
    }
    match mode {
        CheckMode::Symbolic => {
            let coords = generic_evaluation(a, p);
            if coords.iter().all(|c| c.is_zero()) {
                return Ok(IdentityCheck {
                    holds: true,
                    conclusive: true,
                    witness: None,
                });
            }
            match a.field() {
                FieldSpec::Rationals => {
                    let vars = p.variables();
                    let nvars = vars.len() * a.dim();
                    let point = nonvanishing_point(&coords, nvars)
                        .expect("nonzero polynomial has a nonvanishing point over Q");
                    let witness = assemble_witness(&vars, a.dim(), &point);
                    Ok(IdentityCheck {
                        holds: false,
                        conclusive: true,
                        witness: Some(witness),
                    })
                }
                // nonzero coefficients do not refute the identity over a
                // finite field; mark inconclusive
                FieldSpec::PrimeField(_) => Ok(IdentityCheck {
                    holds: false,
                    conclusive: false,
                    witness: None,
                }),
            }
        }
        CheckMode::Exhaustive => {
            if let FieldSpec::PrimeField(pr) = a.field() {
                let count = (pr as u64).checked_pow(a.dim() as u32).unwrap_or(u64::MAX);
                if count > budget.max_tuples {
                    return Err(AlgError::BudgetExceeded(format!(
                        "{count} algebra elements exceed the tuple budget {}",
                        budget.max_tuples
                    )));
                }
            }
            let elements = enumerate_elements(a.field(), a.dim())?;
            let vars = p.variables();
            let total = (elements.len() as u64)
                .checked_pow(vars.len() as u32)
                .unwrap_or(u64::MAX);
            if total > budget.max_tuples {
                return Err(AlgError::BudgetExceeded(format!(
                    "{total} assignments exceed the tuple budget {}",
                    budget.max_tuples
                )));
            }
            let mut indices = vec![0usize; vars.len()];
            loop {
                let assignment: BTreeMap<String, Vec<Scalar>> = vars
                    .iter()
                    .zip(&indices)
                    .map(|(v, &i)| (v.clone(), elements[i].clone()))
                    .collect();
                let value = p.substitute(a, &assignment)?;
                if value.iter().any(|c| !c.is_zero()) {
                    return Ok(IdentityCheck {
                        holds: false,
                        conclusive: true,
                        witness: Some(assignment),
                    });
                }
                if !increment(&mut indices, elements.len()) {
                    break;
                }
            }
            Ok(IdentityCheck {
                holds: true,
                conclusive: true,
                witness: None,
            })
        }
    }
}

fn assemble_witness(
    vars: &[String],
    dim: usize,
    point: &[Scalar],
) -> BTreeMap<String, Vec<Scalar>> {
    vars.iter()
        .enumerate()
        .map(|(v, name)| {
            let coords = (0..dim).map(|j| point[v * dim + j].clone()).collect();
            (name.clone(), coords)
        })
        .collect()
}

/// All coordinate vectors of F_p^dim, enumerated with coordinate 0 varying
/// fastest and field values in the order 0, 1, ..., p-1.
pub fn enumerate_elements(field: FieldSpec, dim: usize) -> Result<Vec<Vec<Scalar>>> {
    let values = field.all_elements()?;
    let mut out = Vec::new();
    let mut indices = vec![0usize; dim];
    loop {
        out.push(indices.iter().map(|&i| values[i].clone()).collect());
        if !increment(&mut indices, values.len()) {
            break;
        }
    }
    Ok(out)
}

/// Odometer increment; index 0 moves fastest. Returns false on wraparound.
pub(crate) fn increment(indices: &mut [usize], base: usize) -> bool {
    for slot in indices.iter_mut() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// All elements of GF(p)^dim supported on at most `max_support` basis
/// vectors, in deterministic order. For spanning identity evaluations
/// this is as good as the full p^dim enumeration: expanding a slot by
/// multilinearity and inclusion-exclusion over supports rewrites any
/// evaluation as a combination of evaluations whose slot uses at most
/// deg_var(psi) distinct basis vectors.
pub(crate) fn bounded_support_elements(
    field: FieldSpec,
    dim: usize,
    max_support: usize,
) -> Result<Vec<Vec<Scalar>>> {
    let p = match field {
        FieldSpec::PrimeField(p) => p,
        FieldSpec::Rationals => {
            return Err(AlgError::InputError(
                "bounded-support enumeration needs a finite field".into(),
            ))
        }
    };
    let k = max_support.min(dim);
    let mut out = vec![vec![field.zero(); dim]];
    let nonzero: Vec<Scalar> = (1..p).map(|v| field.from_int(v as i64)).collect();
    // supports of exact size s with all-nonzero coefficients, so each
    // element appears exactly once
    for s in 1..=k {
        let mut support: Vec<usize> = (0..s).collect();
        loop {
            let mut coeffs = vec![0usize; s];
            loop {
                let mut v = vec![field.zero(); dim];
                for (slot, &idx) in support.iter().enumerate() {
                    v[idx] = nonzero[coeffs[slot]].clone();
                }
                out.push(v);
                if !increment(&mut coeffs, nonzero.len()) {
                    break;
                }
            }
            if !next_combination(&mut support, dim) {
                break;
            }
        }
    }
    Ok(out)
}

/// Advances an s-combination of 0..n in lexicographic order.
fn next_combination(support: &mut [usize], n: usize) -> bool {
    let s = support.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if support[i] != i + n - s {
            support[i] += 1;
            for j in i + 1..s {
                support[j] = support[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Number of bounded-support elements, for budget checks.
pub(crate) fn bounded_support_count(p: u64, dim: usize, max_support: usize) -> u64 {
    let k = max_support.min(dim) as u64;
    let mut total: u64 = 1;
    for s in 1..=k {
        let mut comb: u64 = 1;
        for i in 0..s {
            comb = comb.saturating_mul(dim as u64 - i) / (i + 1);
        }
        total = total.saturating_add(comb.saturating_mul((p - 1).saturating_pow(s as u32)));
    }
    total
}

/// The span of all evaluations of the identity polynomials on A: computed
/// from generic coefficient vectors over Q, by exhaustive enumeration over
/// finite fields.
pub fn relation_subspace(a: &FdAlgebra, v: &IdentitySet, budget: &Budget) -> Result<Subspace> {
    if v.field != a.field() {
        return Err(AlgError::FieldMismatch(
            v.field.to_string(),
            a.field().to_string(),
        ));
    }
    let mut vectors: Vec<Vec<Scalar>> = Vec::new();
    match a.field() {
        FieldSpec::Rationals => {
            for psi in &v.polys {
                let coords = generic_evaluation(a, psi);
                vectors.extend(coefficient_vectors(a.field(), a.dim(), &coords));
            }
        }
        FieldSpec::PrimeField(p) => {
            for psi in &v.polys {
                evaluation_span_vectors(a, psi, p, budget, &mut vectors)?;
            }
        }
    }
    Subspace::span(a.field(), a.dim(), &vectors)
}

/// Finite-field evaluation span of one polynomial on one algebra, as raw
/// vectors. Shared by `relation_subspace` and the truncated free objects.
pub(crate) fn relation_subspace_on(
    a: &FdAlgebra,
    psi: &Poly,
    budget: &Budget,
) -> Result<Vec<Vec<Scalar>>> {
    let p = match a.field() {
        FieldSpec::PrimeField(p) => p,
        FieldSpec::Rationals => {
            return Err(AlgError::InputError(
                "finite-field evaluation span called over Q".into(),
            ))
        }
    };
    let mut vectors = Vec::new();
    evaluation_span_vectors(a, psi, p, budget, &mut vectors)?;
    Ok(vectors)
}

/// Collects, over a finite field, a spanning set for the evaluations of
/// psi on the algebra: each variable slot ranges over the elements with
/// support bounded by the variable's degree in psi, which spans the same
/// space as the full enumeration.
fn evaluation_span_vectors(
    a: &FdAlgebra,
    psi: &Poly,
    p: u64,
    budget: &Budget,
    vectors: &mut Vec<Vec<Scalar>>,
) -> Result<()> {
    let vars = psi.variables();
    let mut per_var: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(vars.len());
    let mut total: u64 = 1;
    for name in &vars {
        let k = psi.degree_in(name);
        total = total.saturating_mul(bounded_support_count(p, a.dim(), k));
        if total > budget.max_tuples {
            return Err(AlgError::BudgetExceeded(format!(
                "{total}+ bounded-support assignments exceed the tuple budget {}",
                budget.max_tuples
            )));
        }
        per_var.push(bounded_support_elements(a.field(), a.dim(), k)?);
    }
    let mut indices = vec![0usize; vars.len()];
    loop {
        let assignment: BTreeMap<String, Vec<Scalar>> = vars
            .iter()
            .enumerate()
            .map(|(slot, name)| (name.clone(), per_var[slot][indices[slot]].clone()))
            .collect();
        vectors.push(psi.substitute(a, &assignment)?);
        // mixed-radix increment over the per-variable lists
        let mut advanced = false;
        for (slot, idx) in indices.iter_mut().enumerate() {
            *idx += 1;
            if *idx < per_var[slot].len() {
                advanced = true;
                break;
            }
            *idx = 0;
        }
        if !advanced {
            break;
        }
    }
    Ok(())
}

/// The Birkhoff reflection into the variety: L(A) = A / I(A) where I(A)
/// is the ideal generated by all identity evaluations, together with the
/// (always surjective) unit morphism.
pub fn reflect(a: &AlgRef, v: &IdentitySet, budget: &Budget) -> Result<(AlgRef, Morphism)> {
    let span = relation_subspace(a, v, budget)?;
    let ideal = a.generated_ideal(&span.basis_vectors())?;
    let (l, eta) = quotient(a, &ideal)?;
    debug_assert!(eta.is_surjective());
    // the reflection satisfies every identity of the variety
    let mode = CheckMode::natural_for(a.field());
    for psi in &v.polys {
        let check = identity_holds(&l, psi, mode, budget)?;
        assert!(
            check.holds && check.conclusive,
            "reflection fails its own identity {psi}"
        );
    }
    Ok((l, eta))
}
