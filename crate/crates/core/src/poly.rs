//! Elements of the free algebra F{S} = K[M(S)]: finite linear combinations
//! of non-associative words, with the bilinear product, homogeneous
//! decomposition, substitution into algebras, and the Vandermonde splitting
//! used as an independent oracle for the degree grading.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::FdAlgebra;
use crate::error::{AlgError, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::word::Word;

/// Degree type of a monomial: variable -> number of occurrences.
pub type TypeVector = BTreeMap<String, usize>;

/// A non-associative polynomial: finitely many words with nonzero exact
/// coefficients. Our polynomials have no constant term; the zero
/// polynomial has empty support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Poly {
        Poly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: FieldSpec, coef: Scalar, word: Word) -> Poly {
        let mut p = Poly::zero(field);
        p.add_term(&coef, &word);
        p
    }

    pub fn from_word(field: FieldSpec, word: Word) -> Poly {
        Poly::monomial(field, field.one(), word)
    }

    pub fn variable(field: FieldSpec, name: &str) -> Poly {
        Poly::from_word(field, Word::leaf(name))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, coef: &Scalar, word: &Word) {
        if coef.is_zero() {
            return;
        }
        let zero = self.field.zero();
        let entry = self.terms.entry(word.clone()).or_insert(zero);
        *entry = entry.add(coef);
        if entry.is_zero() {
            self.terms.remove(word);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c, w);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.field);
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        let mut out = Poly::zero(self.field);
        for (w, c) in &self.terms {
            out.add_term(&c.mul(s), w);
        }
        out
    }

    /// Bilinear extension of the free-magma product.
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        if self.field != other.field {
            return Err(AlgError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        let mut out = Poly::zero(self.field);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(&c1.mul(c2), &Word::mul(w1, w2));
            }
        }
        Ok(out)
    }

    /// Distinct variables, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut set = BTreeMap::new();
        for w in self.terms.keys() {
            for (l, d) in w.letter_degrees() {
                *set.entry(l).or_insert(0) += d;
            }
        }
        set.into_keys().collect()
    }

    /// Largest word length appearing, 0 for the zero polynomial.
    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(Word::length).max().unwrap_or(0)
    }

    /// Largest degree of one variable over all monomials.
    pub fn degree_in(&self, variable: &str) -> usize {
        self.terms
            .keys()
            .map(|w| w.degree(variable))
            .max()
            .unwrap_or(0)
    }

    /// Splits into homogeneous components keyed by type vector. The
    /// components sum back to the polynomial and none is zero.
    pub fn homogeneous_components(&self) -> BTreeMap<TypeVector, Poly> {
        let mut out: BTreeMap<TypeVector, Poly> = BTreeMap::new();
        for (w, c) in &self.terms {
            let ty = w.letter_degrees();
            out.entry(ty)
                .or_insert_with(|| Poly::zero(self.field))
                .add_term(c, w);
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_components().len() <= 1
    }

    /// Evaluates the polynomial in the algebra `a` under the assignment.
    /// Variables outside the assignment evaluate to 0; this is the unique
    /// algebra morphism F{X} -> A with x_i -> a_i (and 0 elsewhere).
    pub fn substitute(
        &self,
        a: &FdAlgebra,
        assignment: &BTreeMap<String, Vec<Scalar>>,
    ) -> Result<Vec<Scalar>> {
        if self.field != a.field() {
            return Err(AlgError::FieldMismatch(
                self.field.to_string(),
                a.field().to_string(),
            ));
        }
        let zero = vec![self.field.zero(); a.dim()];
        for v in assignment.values() {
            if v.len() != a.dim() {
                return Err(AlgError::DimensionMismatch(format!(
                    "assignment vector of length {} in algebra of dimension {}",
                    v.len(),
                    a.dim()
                )));
            }
        }
        let mut acc = zero.clone();
        for (w, c) in &self.terms {
            let val = eval_word(w, a, assignment, &zero);
            for (i, x) in val.iter().enumerate() {
                if !x.is_zero() {
                    acc[i] = acc[i].add(&c.mul(x));
                }
            }
        }
        Ok(acc)
    }

    /// Substitution with polynomial values: the unique algebra endomorphism
    /// of the free algebra sending each variable to the given polynomial
    /// (and unlisted variables to 0). Used for multilinearization.
    pub fn substitute_polys(&self, assignment: &BTreeMap<String, Poly>) -> Result<Poly> {
        let mut acc = Poly::zero(self.field);
        for (w, c) in &self.terms {
            let val = eval_word_poly(w, self.field, assignment)?;
            acc = acc.add(&val.scale(c));
        }
        Ok(acc)
    }

    /// Degree-graded evaluation via the Vandermonde system: evaluates the
    /// polynomial at (alpha_j * a, rest unchanged) for k+1 distinct alphas
    /// and solves for the parts of each degree in `variable`. Returns
    /// phi_0(a), ..., phi_k(a). Exists as an independent oracle for the
    /// homogeneous grading, so it never touches homogeneous_components.
    pub fn vandermonde_split(
        &self,
        variable: &str,
        a: &FdAlgebra,
        assignment: &BTreeMap<String, Vec<Scalar>>,
    ) -> Result<Vec<Vec<Scalar>>> {
        let k = self.degree_in(variable);
        let alphas = self.field.distinct_scalars(k + 1)?;
        let dim = a.dim();
        // right-hand sides: evaluations with the chosen variable scaled
        let mut rhs_rows: Vec<Vec<Scalar>> = Vec::with_capacity(k + 1);
        for alpha in &alphas {
            let mut scaled = assignment.clone();
            if let Some(v) = scaled.get_mut(variable) {
                for x in v.iter_mut() {
                    *x = x.mul(alpha);
                }
            }
            rhs_rows.push(self.substitute(a, &scaled)?);
        }
        // Vandermonde matrix V[j][i] = alpha_j^i
        let vrows: Vec<Vec<Scalar>> = alphas
            .iter()
            .map(|al| (0..=k).map(|i| al.pow(i as u32)).collect())
            .collect();
        let vmat = Matrix::from_rows(self.field, vrows);
        let rhs = Matrix::from_rows(self.field, rhs_rows);
        // solve V * Phi = rhs for the (k+1) x dim matrix Phi of graded parts
        let aug = vmat.hstack(&rhs);
        let (red, pivots) = aug.rref();
        debug_assert_eq!(pivots.len(), k + 1, "Vandermonde matrix is invertible");
        let mut parts = Vec::with_capacity(k + 1);
        for i in 0..=k {
            parts.push((0..dim).map(|j| red[(i, k + 1 + j)].clone()).collect());
        }
        Ok(parts)
    }

    /// Parses `poly := ['-'] term {('+'|'-') term}`, `term := [scalar ['*']] word`.
    /// A bare `0` is the zero polynomial.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Poly> {
        parse_poly(field, text)
    }
}

fn eval_word(
    w: &Word,
    a: &FdAlgebra,
    assignment: &BTreeMap<String, Vec<Scalar>>,
    zero: &Vec<Scalar>,
) -> Vec<Scalar> {
    match w {
        Word::Leaf(s) => assignment.get(s).unwrap_or(zero).clone(),
        Word::Node(l, r) => {
            let lv = eval_word(l, a, assignment, zero);
            let rv = eval_word(r, a, assignment, zero);
            a.multiply(&lv, &rv)
        }
    }
}

fn eval_word_poly(w: &Word, field: FieldSpec, assignment: &BTreeMap<String, Poly>) -> Result<Poly> {
    match w {
        Word::Leaf(s) => Ok(assignment
            .get(s)
            .cloned()
            .unwrap_or_else(|| Poly::zero(field))),
        Word::Node(l, r) => {
            let lv = eval_word_poly(l, field, assignment)?;
            let rv = eval_word_poly(r, field, assignment)?;
            lv.mul(&rv)
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let (sign, mag) = display_sign_pub(c);
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{}", w.render())?;
            } else {
                write!(f, "{} {}", mag, w.render())?;
            }
        }
        Ok(())
    }
}

/// Splits a scalar into (is_negative, magnitude) for printing. Prime-field
/// residues are never negative.
pub(crate) fn display_sign_pub(c: &Scalar) -> (bool, Scalar) {
    match c {
        Scalar::Rat(r) => {
            if num_traits::Signed::is_negative(r) {
                (true, c.neg())
            } else {
                (false, c.clone())
            }
        }
        Scalar::Mod { .. } => (false, c.clone()),
    }
}

// --- polynomial parser -----------------------------------------------------

struct PolyLexer<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> PolyLexer<'a> {
    fn new(text: &'a str) -> Self {
        PolyLexer {
            chars: text.chars().collect(),
            pos: 0,
            text,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> AlgError {
        AlgError::ParseError {
            pos: self.pos,
            msg: format!("{msg} (in {:?})", self.text),
        }
    }
}

fn parse_poly(field: FieldSpec, text: &str) -> Result<Poly> {
    let mut lx = PolyLexer::new(text);
    let mut acc = Poly::zero(field);
    let mut first = true;
    loop {
        let mut negative = false;
        match lx.peek() {
            None if first => return Err(lx.err("empty polynomial")),
            None => break,
            Some('+') if !first => {
                lx.pos += 1;
            }
            Some('-') => {
                negative = true;
                lx.pos += 1;
            }
            Some(_) if first => {}
            Some(c) => return Err(lx.err(&format!("expected '+' or '-', found '{c}'"))),
        }
        let term = parse_term(field, &mut lx)?;
        acc = if negative {
            acc.sub(&term)
        } else {
            acc.add(&term)
        };
        first = false;
    }
    Ok(acc)
}

fn parse_term(field: FieldSpec, lx: &mut PolyLexer) -> Result<Poly> {
    let mut coef = field.one();
    let mut saw_scalar = false;
    if let Some(c) = lx.peek() {
        if c.is_ascii_digit() {
            coef = parse_scalar_literal(field, lx)?;
            saw_scalar = true;
            if lx.peek() == Some('*') {
                lx.pos += 1;
            }
        }
    }
    // a bare scalar is only legal when it is zero (the zero polynomial)
    match lx.peek() {
        Some(c) if c.is_ascii_alphabetic() || c == '(' => {}
        _ if saw_scalar && coef.is_zero() => return Ok(Poly::zero(field)),
        _ if saw_scalar => return Err(lx.err("expected a word after the coefficient")),
        _ => return Err(lx.err("expected a term")),
    }
    let word = parse_word_prefix(lx)?;
    Ok(Poly::monomial(field, coef, word))
}

/// Parses integer or fraction literals like `3`, `5/6`.
fn parse_scalar_literal(field: FieldSpec, lx: &mut PolyLexer) -> Result<Scalar> {
    let num = parse_uint(lx)?;
    let mut scalar = field.from_int(num);
    lx.skip_ws();
    if lx.chars.get(lx.pos) == Some(&'/') {
        lx.pos += 1;
        let den = parse_uint(lx)?;
        let den_s = field.from_int(den);
        scalar = scalar.div(&den_s).map_err(|_| lx.err("zero denominator"))?;
    }
    Ok(scalar)
}

fn parse_uint(lx: &mut PolyLexer) -> Result<i64> {
    lx.skip_ws();
    let start = lx.pos;
    while lx.pos < lx.chars.len() && lx.chars[lx.pos].is_ascii_digit() {
        lx.pos += 1;
    }
    if start == lx.pos {
        return Err(lx.err("expected a number"));
    }
    let s: String = lx.chars[start..lx.pos].iter().collect();
    s.parse::<i64>()
        .map_err(|_| lx.err("number literal too large"))
}

/// Parses one word starting at the cursor: a maximal juxtaposition of
/// letters and bracketed groups, stopping at '+', '-', or end.
fn parse_word_prefix(lx: &mut PolyLexer) -> Result<Word> {
    let start = lx.pos;
    let mut depth = 0usize;
    let mut end = lx.pos;
    while end < lx.chars.len() {
        let c = lx.chars[end];
        if depth == 0 && (c == '+' || c == '-') {
            break;
        }
        match c {
            '(' => depth += 1,
            ')' => {
                if depth == 0 {
                    return Err(AlgError::ParseError {
                        pos: end,
                        msg: "unbalanced ')'".into(),
                    });
                }
                depth -= 1;
            }
            _ => {}
        }
        end += 1;
    }
    let snippet: String = lx.chars[start..end].iter().collect();
    let word = Word::parse(&snippet).map_err(|e| match e {
        AlgError::ParseError { pos, msg } => AlgError::ParseError {
            pos: start + pos,
            msg,
        },
        other => other,
    })?;
    lx.pos = end;
    Ok(word)
}

/// Parses a single element expression: a polynomial over basis names whose
/// words must all be single letters (a linear combination of basis vectors).
pub fn parse_linear_combination(
    field: FieldSpec,
    basis: &[String],
    text: &str,
) -> Result<Vec<Scalar>> {
    let p = Poly::parse(field, text)?;
    let mut v = vec![field.zero(); basis.len()];
    for (w, c) in p.terms() {
        match w {
            Word::Leaf(name) => {
                let Some(i) = basis.iter().position(|b| b == name) else {
                    return Err(AlgError::InputError(format!(
                        "unknown basis element '{name}'"
                    )));
                };
                v[i] = v[i].add(c);
            }
            _ => {
                return Err(AlgError::InputError(format!(
                    "expected a linear combination of basis elements, found the word '{}'",
                    w.render()
                )))
            }
        }
    }
    Ok(v)
}
