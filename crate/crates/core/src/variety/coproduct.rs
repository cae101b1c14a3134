//! Truncated coproducts in a variety, the B-flat-X kernel, and the
//! algebraic-coherence probe.
//!
//! The coproduct of structure-constant algebras is presented on the free
//! V-algebra over the disjoint union of the factor bases, further divided
//! by the structure relations e_i e_j - (e_i e_j)_A of every factor. At
//! truncation degree d this is the coproduct in the subvariety of
//! nilpotent-of-class-<= d algebras.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{kernel, quotient_unchecked, AlgRef, FdAlgebra, Morphism};
use crate::error::{AlgError, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;
use crate::word::Word;

use super::free::{truncated_free, TruncatedFreeAlgebra};
use super::{Budget, IdentitySet};

/// A truncated coproduct with its injections and presentation data.
pub struct CoproductData {
    pub free: TruncatedFreeAlgebra,
    /// Extra relations (structure of the factors) divided out of the free
    /// carrier, as a subspace of it.
    pub structure_relations: Subspace,
    pub carrier: AlgRef,
    /// Projection free.carrier -> carrier.
    pub onto: Morphism,
    /// Letters assigned to each factor (renamed on collision).
    pub factor_letters: Vec<Vec<String>>,
    pub injections: Vec<Morphism>,
    factors: Vec<AlgRef>,
}

impl CoproductData {
    /// Class of a word over the factor letters in the final carrier.
    pub fn word_image(&self, w: &Word) -> Result<Vec<Scalar>> {
        Ok(self.onto.apply(&self.free.word_image(w)?))
    }

    /// The words whose classes form the carrier basis.
    pub fn rep_words(&self) -> Vec<Word> {
        let nonpivots: Vec<usize> = (0..self.free.carrier.dim())
            .filter(|c| !self.structure_relations.pivots().contains(c))
            .collect();
        nonpivots
            .iter()
            .map(|&c| self.free.rep_words[c].clone())
            .collect()
    }

    /// The mediating morphism for a cocone (one morphism per factor into a
    /// common target). It is induced on coset representatives and then
    /// validated: multiplicativity plus compatibility with the injections.
    /// Both can only fail when the target is not a nilpotent-of-class-<= d
    /// member of the variety, which is outside the universal property of
    /// the truncated coproduct.
    pub fn mediate(&self, legs: &[Morphism]) -> Result<Morphism> {
        if legs.len() != self.factors.len() {
            return Err(AlgError::InputError(format!(
                "expected {} cocone legs, got {}",
                self.factors.len(),
                legs.len()
            )));
        }
        let target = legs
            .first()
            .map(|m| m.target().clone())
            .ok_or_else(|| AlgError::InputError("empty cocone".into()))?;
        for (leg, factor) in legs.iter().zip(&self.factors) {
            if leg.source() != factor {
                return Err(AlgError::InputError(
                    "cocone leg source differs from the coproduct factor".into(),
                ));
            }
            if leg.target() != &target {
                return Err(AlgError::InputError(
                    "cocone legs must share a target".into(),
                ));
            }
        }
        // letter -> image vector in the target
        let mut letter_images: BTreeMap<String, Vec<Scalar>> = BTreeMap::new();
        for (f, leg) in self.factor_letters.iter().zip(legs) {
            for (i, name) in f.iter().enumerate() {
                letter_images.insert(name.clone(), leg.matrix().col(i));
            }
        }
        // induced on the carrier basis: each basis class has a canonical
        // word-space representative; evaluate it in the target
        let field = target.field();
        let mut mat = Matrix::zeros(field, target.dim(), self.carrier.dim());
        for j in 0..self.carrier.dim() {
            // representative of carrier basis j inside free.carrier, then
            // inside the word algebra
            let rep_free = section_vector(&self.structure_relations, self.free.carrier.dim(), j);
            let rep_words = free_section(&self.free, &rep_free);
            let mut acc = vec![field.zero(); target.dim()];
            for (wi, c) in rep_words.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let val = eval_word_in(&self.free.words[wi], &target, &letter_images);
                for (r, x) in val.iter().enumerate() {
                    if !x.is_zero() {
                        acc[r] = acc[r].add(&c.mul(x));
                    }
                }
            }
            for r in 0..target.dim() {
                mat[(r, j)] = acc[r].clone();
            }
        }
        let mediating = Morphism::new(self.carrier.clone(), target, mat).map_err(|e| {
            AlgError::InputError(format!(
                "no mediating morphism at this truncation (target must be nilpotent of class <= {} in the variety): {e}",
                self.free.max_degree
            ))
        })?;
        // compatibility with the injections
        for (leg, incl) in legs.iter().zip(&self.injections) {
            let through = mediating.compose(incl)?;
            if through.matrix() != leg.matrix() {
                return Err(AlgError::InputError(
                    "mediating morphism does not restrict to the cocone legs; \
                     target is outside the truncated universal property"
                        .into(),
                ));
            }
        }
        Ok(mediating)
    }
}

/// Canonical coset representative (as an ambient vector) of quotient basis
/// element j for the quotient by `sub`.
fn section_vector(sub: &Subspace, ambient: usize, j: usize) -> Vec<Scalar> {
    let field = sub.field();
    let nonpivots: Vec<usize> = (0..ambient).filter(|c| !sub.pivots().contains(c)).collect();
    let mut v = vec![field.zero(); ambient];
    v[nonpivots[j]] = field.one();
    v
}

/// Lifts a free-carrier vector to its canonical word-space representative.
fn free_section(free: &TruncatedFreeAlgebra, v: &[Scalar]) -> Vec<Scalar> {
    let field = free.carrier.field();
    let n = free.words.len();
    let nonpivots: Vec<usize> = (0..n)
        .filter(|c| !free.relations.pivots().contains(c))
        .collect();
    let mut out = vec![field.zero(); n];
    for (j, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out[nonpivots[j]] = out[nonpivots[j]].add(c);
        }
    }
    out
}

fn eval_word_in(
    w: &Word,
    target: &FdAlgebra,
    letter_images: &BTreeMap<String, Vec<Scalar>>,
) -> Vec<Scalar> {
    match w {
        Word::Leaf(s) => letter_images
            .get(s)
            .cloned()
            .unwrap_or_else(|| vec![target.field().zero(); target.dim()]),
        Word::Node(l, r) => {
            let lv = eval_word_in(l, target, letter_images);
            let rv = eval_word_in(r, target, letter_images);
            target.multiply(&lv, &rv)
        }
    }
}

/// Letters for each factor: its basis names, deterministically renamed by
/// appending _2, _3, ... when they collide with letters already taken.
fn assign_letters(factors: &[AlgRef]) -> Vec<Vec<String>> {
    let mut taken: Vec<String> = Vec::new();
    let mut out = Vec::new();
    for f in factors {
        let mut letters = Vec::new();
        for name in f.basis_names() {
            let mut candidate = name.clone();
            let mut suffix = 2;
            while taken.contains(&candidate) || letters.contains(&candidate) {
                candidate = format!("{name}_{suffix}");
                suffix += 1;
            }
            letters.push(candidate);
        }
        taken.extend(letters.iter().cloned());
        out.push(letters);
    }
    out
}

/// The truncated coproduct of any number of factors in the variety V.
pub fn truncated_coproduct(
    factors: &[AlgRef],
    v: &IdentitySet,
    d: usize,
    budget: &Budget,
) -> Result<CoproductData> {
    for f in factors {
        if f.field() != v.field {
            return Err(AlgError::FieldMismatch(
                f.field().to_string(),
                v.field.to_string(),
            ));
        }
    }
    let factor_letters = assign_letters(factors);
    let all_letters: Vec<String> = factor_letters.iter().flatten().cloned().collect();
    if all_letters.is_empty() {
        // coproduct of zero algebras is the zero algebra
        let carrier = Arc::new(FdAlgebra::zero_algebra(v.field));
        let free = truncated_free(v, &["x".to_string()], 1, budget)?;
        let onto = Morphism::zero(free.carrier.clone(), carrier.clone());
        let injections = factors
            .iter()
            .map(|f| Morphism::zero(f.clone(), carrier.clone()))
            .collect();
        return Ok(CoproductData {
            free,
            structure_relations: Subspace::zero(v.field, 0),
            carrier,
            onto,
            factor_letters,
            injections,
            factors: factors.to_vec(),
        });
    }
    let free = truncated_free(v, &all_letters, d, budget)?;

    // structure relations of every factor: (l_i l_j) - sum_k c_ijk l_k
    let field = v.field;
    let mut rel_vectors: Vec<Vec<Scalar>> = Vec::new();
    for (f, letters) in factors.iter().zip(&factor_letters) {
        for i in 0..f.dim() {
            for j in 0..f.dim() {
                let pair = Word::mul(&Word::leaf(&letters[i]), &Word::leaf(&letters[j]));
                let mut vec = free.word_image(&pair)?;
                for (k, c) in f.basis_product(i, j) {
                    let lk = free.word_image(&Word::leaf(&letters[*k]))?;
                    for (r, x) in lk.iter().enumerate() {
                        vec[r] = vec[r].sub(&c.mul(x));
                    }
                }
                rel_vectors.push(vec);
            }
        }
    }
    let rel_ideal = free.carrier.generated_ideal(&rel_vectors)?;
    let (carrier, onto) = quotient_unchecked(&free.carrier, &rel_ideal);

    let mut injections = Vec::new();
    for (f, letters) in factors.iter().zip(&factor_letters) {
        let mut mat = Matrix::zeros(field, carrier.dim(), f.dim());
        for i in 0..f.dim() {
            let img = onto.apply(&free.word_image(&Word::leaf(&letters[i]))?);
            for r in 0..carrier.dim() {
                mat[(r, i)] = img[r].clone();
            }
        }
        injections.push(Morphism::new(f.clone(), carrier.clone(), mat)?);
    }

    Ok(CoproductData {
        free,
        structure_relations: rel_ideal,
        carrier,
        onto,
        factor_letters,
        injections,
        factors: factors.to_vec(),
    })
}

/// B flat X: the kernel of the retraction (B + X)_d -> B that fixes B and
/// kills X, with its induced structure and inclusion.
pub fn flat(
    b: &AlgRef,
    x: &AlgRef,
    v: &IdentitySet,
    d: usize,
    budget: &Budget,
) -> Result<(AlgRef, Morphism, CoproductData)> {
    let co = truncated_coproduct(&[b.clone(), x.clone()], v, d, budget)?;
    let retraction = co.mediate(&[
        Morphism::identity(b.clone()),
        Morphism::zero(x.clone(), b.clone()),
    ])?;
    let (flat_alg, incl) = kernel(&retraction);
    Ok((flat_alg, incl, co))
}

/// Degree-d probe of algebraic coherence: inside B flat (X + Y), the
/// subalgebra generated by the images of B flat X and B flat Y must be
/// everything. (The image of the comparison morphism from the coproduct
/// B flat X + B flat Y is exactly that generated subalgebra, so this
/// decides surjectivity without building a second coproduct.)
pub fn coherence_probe(
    b: &AlgRef,
    x: &AlgRef,
    y: &AlgRef,
    v: &IdentitySet,
    d: usize,
    budget: &Budget,
) -> Result<bool> {
    // the three-way coproduct B + X + Y, with B + (X + Y) realized on it
    let co3 = truncated_coproduct(&[b.clone(), x.clone(), y.clone()], v, d, budget)?;
    let rho3 = co3.mediate(&[
        Morphism::identity(b.clone()),
        Morphism::zero(x.clone(), b.clone()),
        Morphism::zero(y.clone(), b.clone()),
    ])?;
    let flat_xy = rho3.kernel_subspace();

    // images of B flat X and B flat Y inside the three-way coproduct
    let mut generators: Vec<Vec<Scalar>> = Vec::new();
    for (other, idx3) in [(x, 1usize), (y, 2usize)] {
        let (flat_b_other, incl, co2) = flat(b, other, v, d, budget)?;
        let incl3 = co_into_co(&co2, &co3, &[0, idx3])?;
        for i in 0..flat_b_other.dim() {
            let in_co2 = incl.apply(&flat_b_other.basis_vector(i));
            generators.push(incl3.apply(&in_co2));
        }
    }
    let generated = co3.carrier.generated_subalgebra(&generators)?;
    Ok(generated == flat_xy)
}

/// The canonical morphism from a coproduct of a subset of the factors into
/// a bigger coproduct. `factor_map[i]` names the index in `big` of the
/// i-th factor of `small`; letters are translated positionally, so shared
/// basis names across factors are handled correctly.
fn co_into_co(
    small: &CoproductData,
    big: &CoproductData,
    factor_map: &[usize],
) -> Result<Morphism> {
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    for (i, &bi) in factor_map.iter().enumerate() {
        for (small_l, big_l) in small.factor_letters[i].iter().zip(&big.factor_letters[bi]) {
            rename.insert(small_l.clone(), big_l.clone());
        }
    }
    let field = big.carrier.field();
    let mut mat = Matrix::zeros(field, big.carrier.dim(), small.carrier.dim());
    for j in 0..small.carrier.dim() {
        // canonical word-space representative of basis class j of `small`
        let rep_free = section_vector(&small.structure_relations, small.free.carrier.dim(), j);
        let rep_words = free_section(&small.free, &rep_free);
        let mut acc = vec![field.zero(); big.carrier.dim()];
        for (wi, c) in rep_words.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let translated = rename_letters(&small.free.words[wi], &rename);
            let img = big.word_image(&translated)?;
            for (r, xv) in img.iter().enumerate() {
                if !xv.is_zero() {
                    acc[r] = acc[r].add(&c.mul(xv));
                }
            }
        }
        for r in 0..big.carrier.dim() {
            mat[(r, j)] = acc[r].clone();
        }
    }
    Morphism::new(small.carrier.clone(), big.carrier.clone(), mat)
}

fn rename_letters(w: &Word, rename: &BTreeMap<String, String>) -> Word {
    match w {
        Word::Leaf(s) => Word::leaf(rename.get(s).map(String::as_str).unwrap_or(s)),
        Word::Node(l, r) => Word::mul(&rename_letters(l, rename), &rename_letters(r, rename)),
    }
}
