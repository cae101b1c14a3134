//! Degree-truncated free V-algebras: the free algebra on a finite
//! alphabet, modulo the T-ideal of the variety and all words of length
//! greater than d. Killing long words quotients by an ideal, so the
//! result is a genuine V-algebra (varieties are closed under quotients).
//!
//! Over Q the relation space is built from full multilinearizations
//! evaluated at word tuples, which in characteristic zero spans exactly
//! the same space as substitution of arbitrary elements (polarization and
//! restitution convert between the two). Over a finite field the
//! substitutions are enumerated exhaustively within budget.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::{quotient_unchecked, AlgRef, FdAlgebra, Morphism, SparseVec};
use crate::error::{AlgError, Result};
use crate::linalg::Subspace;
use crate::poly::Poly;
use crate::scalar::{FieldSpec, Scalar};
use crate::word::{enumerate_words, Word};

use super::{Budget, IdentitySet};

/// A truncated free V-algebra and the data connecting it to the word
/// basis it was presented on.
pub struct TruncatedFreeAlgebra {
    pub variety: IdentitySet,
    pub letters: Vec<String>,
    pub max_degree: usize,
    /// All words of length <= max_degree, in canonical order; the basis
    /// of the ambient word algebra.
    pub words: Vec<Word>,
    /// The word algebra with degree-truncated multiplication.
    pub word_algebra: AlgRef,
    /// The relation subspace U (in word coordinates) that was divided out.
    pub relations: Subspace,
    /// The quotient algebra, basis indexed by the non-pivot words.
    pub carrier: AlgRef,
    /// Projection of the word algebra onto the carrier.
    pub projection: Morphism,
    /// The words whose classes form the carrier basis.
    pub rep_words: Vec<Word>,
}

impl TruncatedFreeAlgebra {
    /// Carrier coordinates of the class of a word.
    pub fn word_image(&self, w: &Word) -> Result<Vec<Scalar>> {
        let field = self.carrier.field();
        if w.length() > self.max_degree {
            return Ok(vec![field.zero(); self.carrier.dim()]);
        }
        let idx =
            self.words.iter().position(|x| x == w).ok_or_else(|| {
                AlgError::InputError(format!("word '{}' uses unknown letters", w))
            })?;
        let mut e = vec![field.zero(); self.words.len()];
        e[idx] = field.one();
        Ok(self.projection.apply(&e))
    }

    /// The assignment sending each letter to its own class.
    pub fn tautological_assignment(&self) -> Result<BTreeMap<String, Vec<Scalar>>> {
        self.letters
            .iter()
            .map(|l| Ok((l.clone(), self.word_image(&Word::leaf(l))?)))
            .collect()
    }

    /// Pretty-prints a carrier element as a combination of word classes.
    pub fn format_class(&self, v: &[Scalar]) -> String {
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
            out.push_str(&format!("[{}]", self.rep_words[i].render()));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn dims_by_degree(&self) -> Vec<usize> {
        let mut dims = vec![0usize; self.max_degree];
        for w in &self.rep_words {
            dims[w.length() - 1] += 1;
        }
        dims
    }
}

/// Builds the word algebra on all words of length <= d: the product of two
/// basis words is their concatenation node, or zero past the degree cap.
fn word_algebra(
    field: FieldSpec,
    words: &[Word],
    index: &HashMap<Word, usize>,
    d: usize,
) -> FdAlgebra {
    let n = words.len();
    let names: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
    let mut products: Vec<SparseVec> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let len = words[i].length() + words[j].length();
            if len > d {
                products.push(Vec::new());
            } else {
                let w = Word::mul(&words[i], &words[j]);
                let k = index[&w];
                products.push(vec![(k, field.one())]);
            }
        }
    }
    FdAlgebra::from_sparse(field, names, products)
}

/// Fresh-variable groups of a polarization: one (original variable, fresh
/// replacements) pair per variable.
pub type PolarizationGroups = Vec<(String, Vec<String>)>;

/// Full multilinearization (polarization) of a homogeneous polynomial:
/// each variable of degree k is replaced by a sum of k fresh variables and
/// the multidegree-(1,...,1) component in the fresh variables is taken.
/// Returns the polarized polynomial and, per original variable, its group
/// of fresh variables. Restitution (substituting the original variable
/// back for its whole group) recovers (prod k_v!) times the input, so over
/// Q both generate the same substitution span.
pub fn multilinearize(phi: &Poly, forbidden: &[String]) -> Result<(Poly, PolarizationGroups)> {
    let comps = phi.homogeneous_components();
    if comps.len() != 1 {
        return Err(AlgError::InputError(
            "multilinearize expects a homogeneous polynomial".into(),
        ));
    }
    let ty = comps.keys().next().unwrap().clone();
    let mut taken: Vec<String> = forbidden.to_vec();
    taken.extend(phi.variables());
    let mut counter = 0usize;
    let mut fresh_name = || loop {
        counter += 1;
        for prefix in ["s", "t", "u", "v"] {
            let cand = format!("{prefix}{counter}");
            if !taken.contains(&cand) {
                return cand;
            }
        }
    };
    let mut groups: Vec<(String, Vec<String>)> = Vec::new();
    let mut assignment: BTreeMap<String, Poly> = BTreeMap::new();
    for (var, degree) in &ty {
        let mut names = Vec::with_capacity(*degree);
        let mut sum = Poly::zero(phi.field());
        for _ in 0..*degree {
            let name = fresh_name();
            sum = sum.add(&Poly::variable(phi.field(), &name));
            names.push(name);
        }
        assignment.insert(var.clone(), sum);
        groups.push((var.clone(), names));
    }
    let expanded = phi.substitute_polys(&assignment)?;
    // multidegree-(1,...,1) component in the fresh variables
    let all_fresh: Vec<&String> = groups.iter().flat_map(|(_, g)| g.iter()).collect();
    let mut target = Poly::zero(phi.field());
    for (w, c) in expanded.terms() {
        let degs = w.letter_degrees();
        if all_fresh.iter().all(|f| degs.get(*f) == Some(&1)) {
            target = target.add(&Poly::monomial(phi.field(), c.clone(), w.clone()));
        }
    }
    Ok((target, groups))
}

/// Enumerates assignments of words to the polarization slots with total
/// substituted length <= d, evaluating the polarized polynomial at each
/// and collecting the word-coordinate vectors.
fn polarized_relation_vectors(
    phi: &Poly,
    letters: &[String],
    words: &[Word],
    index: &HashMap<Word, usize>,
    d: usize,
    out: &mut Vec<Vec<Scalar>>,
) -> Result<()> {
    let field = phi.field();
    let (plin, groups) = multilinearize(phi, letters)?;
    let slots: Vec<String> = groups.into_iter().flat_map(|(_, g)| g).collect();
    let k = slots.len();
    if k == 0 || k > d {
        return Ok(());
    }
    // words grouped by length for the budget-pruned enumeration
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    enumerate_tuples(words, k, d, &mut chosen, &mut |tuple| {
        let assignment: BTreeMap<String, Poly> = slots
            .iter()
            .zip(tuple)
            .map(|(s, &wi)| (s.clone(), Poly::from_word(field, words[wi].clone())))
            .collect();
        let value = plin.substitute_polys(&assignment)?;
        let mut vec = vec![field.zero(); words.len()];
        for (w, c) in value.terms() {
            // every monomial of the polarization contains each slot once,
            // so the substituted length is the tuple's total length <= d
            vec[index[w]] = vec[index[w]].add(c);
        }
        out.push(vec);
        Ok(())
    })?;
    Ok(())
}

fn enumerate_tuples(
    words: &[Word],
    slots: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if slots == 0 {
        return visit(chosen);
    }
    let max_len = remaining.saturating_sub(slots - 1);
    for (i, w) in words.iter().enumerate() {
        let len = w.length();
        if len > max_len {
            break; // words are sorted by length
        }
        chosen.push(i);
        enumerate_tuples(words, slots - 1, remaining - len, chosen, visit)?;
        chosen.pop();
    }
    Ok(())
}

/// Ideal closure in the word algebra for grade-homogeneous generators
/// (every vector supported on words of one length, as the polarization
/// route guarantees over Q). Tracks rank per grade and skips candidates of
/// grades that are already saturated, which is where random identity sets
/// would otherwise burn their time.
fn graded_ideal_closure(
    walg: &FdAlgebra,
    words: &[Word],
    d: usize,
    initial: Vec<Vec<Scalar>>,
) -> Subspace {
    let n = words.len();
    let mut words_per_grade = vec![0usize; d + 1];
    for w in words {
        words_per_grade[w.length()] += 1;
    }
    let grade_of = |v: &[Scalar]| -> Option<usize> {
        v.iter()
            .position(|c| !c.is_zero())
            .map(|i| words[i].length())
    };
    let mut accum = crate::linalg::RrefAccum::new(walg.field(), n);
    let mut rank_by_grade = vec![0usize; d + 1];
    // queue entries: (grade, sparse row)
    let mut queue: Vec<(usize, crate::algebra::SparseVec)> = Vec::new();
    let push = |accum: &mut crate::linalg::RrefAccum,
                rank_by_grade: &mut Vec<usize>,
                queue: &mut Vec<(usize, crate::algebra::SparseVec)>,
                v: Vec<Scalar>| {
        let Some(g) = grade_of(&v) else { return };
        debug_assert!(v
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || words[i].length() == g));
        if rank_by_grade[g] == words_per_grade[g] {
            return; // the whole grade slice is already in the ideal
        }
        let sparse: crate::algebra::SparseVec = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        if accum.insert(v) {
            rank_by_grade[g] += 1;
            queue.push((g, sparse));
        }
    };
    for v in initial {
        push(&mut accum, &mut rank_by_grade, &mut queue, v);
    }
    while let Some((g, row)) = queue.pop() {
        for (k, w) in words.iter().enumerate() {
            let l = w.length();
            if g + l > d {
                break; // words are sorted by length
            }
            if rank_by_grade[g + l] == words_per_grade[g + l] {
                continue;
            }
            let left = walg.basis_mul_left(k, &row);
            push(&mut accum, &mut rank_by_grade, &mut queue, left);
            if rank_by_grade[g + l] == words_per_grade[g + l] {
                continue;
            }
            let right = walg.basis_mul_right(&row, k);
            push(&mut accum, &mut rank_by_grade, &mut queue, right);
        }
    }
    accum.into_subspace(n)
}

/// Constructs the truncated free V-algebra on the given letters.
pub fn truncated_free(
    v: &IdentitySet,
    letters: &[String],
    d: usize,
    budget: &Budget,
) -> Result<TruncatedFreeAlgebra> {
    if letters.is_empty() {
        return Err(AlgError::InputError("at least one letter required".into()));
    }
    for (i, l) in letters.iter().enumerate() {
        if !crate::word::is_letter(l) {
            return Err(AlgError::InputError(format!(
                "'{l}' is not a letter (one alphabetic character, then digits or underscores)"
            )));
        }
        if letters[..i].contains(l) {
            return Err(AlgError::InputError(format!("duplicate letter '{l}'")));
        }
    }
    if d == 0 {
        return Err(AlgError::DegreeTooSmall { needed: 1, got: 0 });
    }
    let field = v.field;
    let words = enumerate_words(letters, d);
    if words.len() > budget.max_basis {
        return Err(AlgError::BudgetExceeded(format!(
            "{} words exceed the basis budget {}",
            words.len(),
            budget.max_basis
        )));
    }
    let index: HashMap<Word, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let walg = Arc::new(word_algebra(field, &words, &index, d));

    let mut vectors: Vec<Vec<Scalar>> = Vec::new();
    match field {
        FieldSpec::Rationals => {
            // homogenize first (valid over an infinite field), then span
            // via polarization at word tuples
            for psi in &v.polys {
                for phi in psi.homogeneous_components().values() {
                    polarized_relation_vectors(phi, letters, &words, &index, d, &mut vectors)?;
                }
            }
        }
        FieldSpec::PrimeField(_) => {
            // bounded-support substitution spans the same space as the
            // full enumeration of word-algebra elements
            for psi in &v.polys {
                let span = super::relation_subspace_on(&walg, psi, budget)?;
                vectors.extend(span);
            }
        }
    }

    let relations = match field {
        // polarization vectors are grade-homogeneous; use the graded closure
        FieldSpec::Rationals => graded_ideal_closure(&walg, &words, d, vectors),
        FieldSpec::PrimeField(_) => {
            let span = Subspace::span(field, words.len(), &vectors)?;
            walg.generated_ideal(&span.basis_vectors())?
        }
    };
    let (carrier, projection) = quotient_unchecked(&walg, &relations);
    let rep_words: Vec<Word> = (0..words.len())
        .filter(|i| !relations.pivots().contains(i))
        .map(|i| words[i].clone())
        .collect();
    Ok(TruncatedFreeAlgebra {
        variety: v.clone(),
        letters: letters.to_vec(),
        max_degree: d,
        words,
        word_algebra: walg,
        relations,
        carrier,
        projection,
        rep_words,
    })
}

/// True iff p lies in the degree-d truncation of the T-ideal of V:
/// p evaluates to zero in the truncated free algebra on its own variables
/// under the tautological assignment.
pub fn identity_implied(v: &IdentitySet, p: &Poly, d: usize, budget: &Budget) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if p.total_degree() > d {
        return Err(AlgError::DegreeTooSmall {
            needed: p.total_degree(),
            got: d,
        });
    }
    let letters = p.variables();
    let free = truncated_free(v, &letters, d, budget)?;
    let assignment = free.tautological_assignment()?;
    let value = p.substitute(&free.carrier, &assignment)?;
    Ok(value.iter().all(Scalar::is_zero))
}

/// Report of the homogeneous-closure check: every homogeneous component of
/// every generator must itself be implied (a theorem over infinite fields).
#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub entries: Vec<ClosureEntry>,
}

#[derive(Debug, Clone)]
pub struct ClosureEntry {
    pub generator: String,
    pub component: String,
    pub implied: bool,
}

impl ClosureReport {
    pub fn all_implied(&self) -> bool {
        self.entries.iter().all(|e| e.implied)
    }
}

pub fn homogeneous_closure_check(
    v: &IdentitySet,
    d: usize,
    budget: &Budget,
) -> Result<ClosureReport> {
    if v.field != FieldSpec::Rationals {
        return Err(AlgError::InputError(
            "the homogeneous-closure theorem needs an infinite field; use Q".into(),
        ));
    }
    let mut entries = Vec::new();
    for psi in &v.polys {
        for phi in psi.homogeneous_components().values() {
            if phi.total_degree() > d {
                return Err(AlgError::DegreeTooSmall {
                    needed: phi.total_degree(),
                    got: d,
                });
            }
            let implied = identity_implied(v, phi, d, budget)?;
            entries.push(ClosureEntry {
                generator: psi.to_string(),
                component: phi.to_string(),
                implied,
            });
        }
    }
    Ok(ClosureReport { entries })
}
