//! Plain-text file formats: algebras by structure constants, varieties by
//! identity lists, morphisms by basis images. Lines starting with `#` are
//! comments; omitted products and images default to zero.

use std::sync::Arc;

use crate::algebra::{AlgRef, FdAlgebra, Morphism};
use crate::error::{AlgError, Result};
use crate::linalg::Matrix;
use crate::poly::{parse_linear_combination, Poly};
use crate::scalar::FieldSpec;
use crate::variety::IdentitySet;
use crate::word::is_letter;

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(n, line)| {
        let trimmed = line.split('#').next().unwrap_or("").trim();
        if trimmed.is_empty() {
            None
        } else {
            Some((n + 1, trimmed))
        }
    })
}

fn line_err(line: usize, msg: impl Into<String>) -> AlgError {
    AlgError::ParseError {
        pos: line,
        msg: format!("line {line}: {}", msg.into()),
    }
}

/// Parses a field header: `field Q` or `field GF(p)`.
pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(rest) = t.strip_prefix("GF(") {
        if let Some(num) = rest.strip_suffix(')') {
            let p: u64 = num
                .trim()
                .parse()
                .map_err(|_| AlgError::InputError(format!("bad prime '{num}'")))?;
            return FieldSpec::prime_field(p);
        }
    }
    Err(AlgError::InputError(format!(
        "unknown field '{t}' (expected Q or GF(p))"
    )))
}

/// Algebra file:
/// ```text
/// field GF(2)
/// basis x y
/// x * x = y        # omitted pairs are zero
/// ```
pub fn parse_algebra(text: &str) -> Result<FdAlgebra> {
    let mut field: Option<FieldSpec> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut products: Vec<(usize, String, String, String)> = Vec::new();
    for (n, line) in meaningful_lines(text) {
        if let Some(rest) = line.strip_prefix("field ") {
            field = Some(parse_field(rest).map_err(|e| line_err(n, e.to_string()))?);
        } else if let Some(rest) = line.strip_prefix("basis ") {
            let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
            for name in &names {
                if !is_letter(name) {
                    return Err(line_err(
                        n,
                        format!(
                            "basis name '{name}' must be one letter followed by digits or underscores"
                        ),
                    ));
                }
            }
            if names.is_empty() {
                return Err(line_err(n, "empty basis"));
            }
            let mut seen = names.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != names.len() {
                return Err(line_err(n, "duplicate basis name"));
            }
            basis = Some(names);
        } else if let Some((lhs, rhs)) = line.split_once('=') {
            let Some((a, b)) = lhs.split_once('*') else {
                return Err(line_err(n, "expected `e_i * e_j = ...`"));
            };
            products.push((
                n,
                a.trim().to_string(),
                b.trim().to_string(),
                rhs.trim().to_string(),
            ));
        } else {
            return Err(line_err(n, format!("unrecognized line '{line}'")));
        }
    }
    let field = field.ok_or_else(|| AlgError::InputError("missing `field` header".into()))?;
    let basis = basis.ok_or_else(|| AlgError::InputError("missing `basis` line".into()))?;
    let dim = basis.len();
    let mut structure = vec![vec![vec![field.zero(); dim]; dim]; dim];
    let mut seen_pairs = Vec::new();
    for (n, a, b, rhs) in products {
        let i = basis
            .iter()
            .position(|x| *x == a)
            .ok_or_else(|| line_err(n, format!("unknown basis element '{a}'")))?;
        let j = basis
            .iter()
            .position(|x| *x == b)
            .ok_or_else(|| line_err(n, format!("unknown basis element '{b}'")))?;
        if seen_pairs.contains(&(i, j)) {
            return Err(line_err(n, format!("duplicate product line for {a} * {b}")));
        }
        seen_pairs.push((i, j));
        let v = parse_linear_combination(field, &basis, &rhs)
            .map_err(|e| line_err(n, e.to_string()))?;
        structure[i][j] = v;
    }
    FdAlgebra::new(field, basis, structure)
}

/// Variety file:
/// ```text
/// variety myvar
/// field Q
/// x(yz) - (xy)z
/// xy - yx
/// ```
pub fn parse_variety(text: &str) -> Result<IdentitySet> {
    let mut name = "anonymous".to_string();
    let mut field: Option<FieldSpec> = None;
    let mut polys = Vec::new();
    for (n, line) in meaningful_lines(text) {
        if let Some(rest) = line.strip_prefix("variety ") {
            name = rest.trim().to_string();
        } else if let Some(rest) = line.strip_prefix("field ") {
            field = Some(parse_field(rest).map_err(|e| line_err(n, e.to_string()))?);
        } else {
            let field = field.ok_or_else(|| line_err(n, "`field` must come before identities"))?;
            let p = Poly::parse(field, line).map_err(|e| line_err(n, e.to_string()))?;
            if p.is_zero() {
                return Err(line_err(n, "identity polynomial must be nonzero"));
            }
            polys.push(p);
        }
    }
    let field = field.ok_or_else(|| AlgError::InputError("missing `field` header".into()))?;
    IdentitySet::new(&name, field, polys)
}

/// Morphism file: one `map` line per source basis element; omitted
/// elements map to zero.
/// ```text
/// map e1 -> e1 + e2
/// map e2 -> 0
/// ```
pub fn parse_morphism(text: &str, source: &AlgRef, target: &AlgRef) -> Result<Morphism> {
    let field = source.field();
    let mut matrix = Matrix::zeros(field, target.dim(), source.dim());
    let mut seen = Vec::new();
    for (n, line) in meaningful_lines(text) {
        let Some(rest) = line.strip_prefix("map ") else {
            return Err(line_err(n, "expected `map e_i -> ...`"));
        };
        let Some((lhs, rhs)) = rest.split_once("->") else {
            return Err(line_err(n, "expected `->` in map line"));
        };
        let name = lhs.trim();
        let j = source
            .basis_names()
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| line_err(n, format!("unknown source basis element '{name}'")))?;
        if seen.contains(&j) {
            return Err(line_err(n, format!("duplicate map line for '{name}'")));
        }
        seen.push(j);
        let v = parse_linear_combination(field, target.basis_names(), rhs.trim())
            .map_err(|e| line_err(n, e.to_string()))?;
        for i in 0..target.dim() {
            matrix[(i, j)] = v[i].clone();
        }
    }
    Morphism::new(source.clone(), target.clone(), matrix)
}

/// Resolves a variety argument: a preset name, or a path to a variety file.
pub fn load_variety(arg: &str, default_field: Option<FieldSpec>) -> Result<IdentitySet> {
    if IdentitySet::preset_names().contains(&arg) {
        let field = default_field.unwrap_or(FieldSpec::Rationals);
        return IdentitySet::preset(arg, field);
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| AlgError::InputError(format!("cannot read variety '{arg}': {e}")))?;
    parse_variety(&text)
}

/// Reads an algebra file from disk.
pub fn load_algebra(path: &str) -> Result<AlgRef> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AlgError::InputError(format!("cannot read algebra '{path}': {e}")))?;
    Ok(Arc::new(parse_algebra(&text)?))
}
