//! "For all elements" quantification over Q: elements with indeterminate
//! coordinates. Evaluating an identity at such generic elements yields one
//! commutative polynomial per basis coordinate; the identity holds over an
//! infinite field iff every coefficient is exactly zero.

use std::collections::BTreeMap;

use crate::algebra::FdAlgebra;
use crate::poly::Poly;
use crate::scalar::{FieldSpec, Scalar};
use crate::word::Word;

/// Monomial in the indeterminates: sorted (variable id, exponent) pairs.
pub type Monomial = Vec<(u32, u32)>;

/// Multivariate commutative polynomial with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldSpec,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: FieldSpec) -> Self {
        MultiPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(field: FieldSpec, id: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(id, 1)], field.one());
        MultiPoly { field, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let zero = self.field.zero();
        let entry = self.terms.entry(m.clone()).or_insert(zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.mul(s));
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mul_monomials(m1, m2), &c1.mul(c2));
            }
        }
        out
    }

    /// Substitutes one variable by a scalar value.
    pub fn substitute(&self, id: u32, value: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in m {
                if v == id {
                    coef = coef.mul(&value.pow(e));
                } else {
                    rest.push((v, e));
                }
            }
            out.add_term(rest, &coef);
        }
        out
    }

    pub fn max_degree_of(&self, id: u32) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.iter().filter(|(v, _)| *v == id).map(|(_, e)| *e))
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| *v))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<u32, u32> = BTreeMap::new();
    for &(v, e) in a.iter().chain(b.iter()) {
        *out.entry(v).or_insert(0) += e;
    }
    out.into_iter().collect()
}

/// The result of evaluating a non-associative polynomial at generic
/// elements of an algebra: one commutative polynomial per coordinate.
pub fn generic_evaluation(a: &FdAlgebra, p: &Poly) -> Vec<MultiPoly> {
    let field = a.field();
    let dim = a.dim();
    let vars = p.variables();
    // variable slot v, coordinate j -> indeterminate v * dim + j
    let mut generic: BTreeMap<String, Vec<MultiPoly>> = BTreeMap::new();
    for (v, name) in vars.iter().enumerate() {
        let coords = (0..dim)
            .map(|j| MultiPoly::var(field, (v * dim + j) as u32))
            .collect();
        generic.insert(name.clone(), coords);
    }
    let zero_elem = vec![MultiPoly::zero(field); dim];
    let mut acc = vec![MultiPoly::zero(field); dim];
    for (w, c) in p.terms() {
        let val = eval_word_generic(a, w, &generic, &zero_elem);
        for (j, coord) in val.into_iter().enumerate() {
            acc[j] = acc[j].add(&coord.scale(c));
        }
    }
    acc
}

fn eval_word_generic(
    a: &FdAlgebra,
    w: &Word,
    generic: &BTreeMap<String, Vec<MultiPoly>>,
    zero: &Vec<MultiPoly>,
) -> Vec<MultiPoly> {
    match w {
        Word::Leaf(s) => generic.get(s).unwrap_or(zero).clone(),
        Word::Node(l, r) => {
            let lv = eval_word_generic(a, l, generic, zero);
            let rv = eval_word_generic(a, r, generic, zero);
            let field = a.field();
            let dim = a.dim();
            let mut acc = vec![MultiPoly::zero(field); dim];
            for (i, x) in lv.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in rv.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    let prod = x.mul(y);
                    for (k, s) in a.basis_product(i, j) {
                        acc[*k] = acc[*k].add(&prod.scale(s));
                    }
                }
            }
            acc
        }
    }
}

/// Coefficient vectors of a generic evaluation: for each indeterminate
/// monomial, the vector of its coefficients across coordinates. Over an
/// infinite field their span equals the span of all evaluations.
pub fn coefficient_vectors(field: FieldSpec, dim: usize, coords: &[MultiPoly]) -> Vec<Vec<Scalar>> {
    let mut monomials: Vec<Monomial> = coords
        .iter()
        .flat_map(|p| p.terms().keys().cloned())
        .collect();
    monomials.sort();
    monomials.dedup();
    monomials
        .into_iter()
        .map(|m| {
            (0..dim)
                .map(|j| coords[j].terms().get(&m).cloned().unwrap_or(field.zero()))
                .collect()
        })
        .collect()
}

/// Finds a point where at least one of the given polynomials is nonzero,
/// assuming some polynomial is nonzero and the field is Q (or large
/// enough). Deterministic: walks the variables and fixes each to the
/// smallest value in 0, 1, 2, ... keeping the chosen polynomial nonzero.
pub fn nonvanishing_point(polys: &[MultiPoly], nvars: usize) -> Option<Vec<Scalar>> {
    let target = polys.iter().find(|p| !p.is_zero())?;
    let field = match target.terms().values().next() {
        Some(c) => c.field(),
        None => return None,
    };
    let mut current = target.clone();
    let mut point = vec![field.zero(); nvars];
    for id in current.variables() {
        let deg = current.max_degree_of(id);
        // a nonzero univariate polynomial of degree deg has at most deg
        // roots, so one of 0..=deg keeps the rest nonzero
        let mut chosen = None;
        for c in 0..=deg as i64 {
            let val = field.from_int(c);
            let substituted = current.substitute(id, &val);
            if !substituted.is_zero() {
                chosen = Some((val, substituted));
                break;
            }
        }
        let (val, next) = chosen.expect("some value keeps the polynomial nonzero");
        point[id as usize] = val;
        current = next;
    }
    Some(point)
}
