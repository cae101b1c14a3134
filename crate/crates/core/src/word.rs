//! Non-associative words: full binary trees with letters at the leaves,
//! i.e. elements of the free magma M(S).
//!
//! Words compare structurally. The ordering is by length first, then
//! lexicographically on the fully bracketed serialization, which fixes
//! every downstream basis order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::error::{AlgError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Leaf(String),
    Node(Rc<Word>, Rc<Word>),
}

impl Word {
    pub fn leaf(name: &str) -> Word {
        Word::Leaf(name.to_string())
    }

    /// The free-magma product: no rewriting ever happens.
    pub fn mul(a: &Word, b: &Word) -> Word {
        Word::Node(Rc::new(a.clone()), Rc::new(b.clone()))
    }

    /// Number of leaves.
    pub fn length(&self) -> usize {
        match self {
            Word::Leaf(_) => 1,
            Word::Node(l, r) => l.length() + r.length(),
        }
    }

    /// Number of leaves labeled `letter`.
    pub fn degree(&self, letter: &str) -> usize {
        match self {
            Word::Leaf(s) => usize::from(s == letter),
            Word::Node(l, r) => l.degree(letter) + r.degree(letter),
        }
    }

    /// Letter multiset of the word, as letter -> degree.
    pub fn letter_degrees(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        self.collect_degrees(&mut m);
        m
    }

    fn collect_degrees(&self, m: &mut BTreeMap<String, usize>) {
        match self {
            Word::Leaf(s) => *m.entry(s.clone()).or_insert(0) += 1,
            Word::Node(l, r) => {
                l.collect_degrees(m);
                r.collect_degrees(m);
            }
        }
    }

    /// Fully bracketed serialization: `(x)` for a leaf, `(AB)` for a node.
    /// Distinct words have distinct serializations, and no serialization is
    /// a prefix of another, so string comparison is a total order.
    pub fn serialization(&self) -> String {
        let mut s = String::new();
        self.push_ser(&mut s);
        s
    }

    fn push_ser(&self, out: &mut String) {
        out.push('(');
        match self {
            Word::Leaf(name) => out.push_str(name),
            Word::Node(l, r) => {
                l.push_ser(out);
                r.push_ser(out);
            }
        }
        out.push(')');
    }

    /// Minimal-bracket rendering: outer brackets dropped, children
    /// bracketed only when they are nodes. `parse` inverts this.
    pub fn render(&self) -> String {
        match self {
            Word::Leaf(name) => name.clone(),
            Word::Node(l, r) => format!("{}{}", l.render_child(), r.render_child()),
        }
    }

    fn render_child(&self) -> String {
        match self {
            Word::Leaf(name) => name.clone(),
            Word::Node(_, _) => format!("({})", self.render()),
        }
    }

    pub fn parse(text: &str) -> Result<Word> {
        let tokens = lex(text)?;
        let mut pos = 0;
        let w = parse_group(&tokens, &mut pos, None)?;
        if pos != tokens.len() {
            return Err(AlgError::ParseError {
                pos: tokens[pos].pos,
                msg: "unexpected trailing input".into(),
            });
        }
        Ok(w)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.serialization().cmp(&other.serialization()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A letter is one alphabetic character followed by digits or underscores
/// (`x`, `y`, `e1`, `e12`, `t1_3`). Juxtaposed letters like `xy` or `e1e2`
/// therefore split unambiguously, matching the paper's notation.
pub fn is_letter(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_digit() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub kind: TokKind,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokKind {
    Letter(String),
    Open,
    Close,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            tokens.push(Token {
                kind: TokKind::Open,
                pos: i,
            });
            i += 1;
        } else if c == ')' {
            tokens.push(Token {
                kind: TokKind::Close,
                pos: i,
            });
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            let mut name = String::new();
            name.push(c);
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                name.push(chars[i]);
                i += 1;
            }
            tokens.push(Token {
                kind: TokKind::Letter(name),
                pos: start,
            });
        } else {
            return Err(AlgError::ParseError {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(tokens)
}

/// Parses a juxtaposition group: a sequence of primaries. One primary is
/// the word itself; two make a product; three or more are ambiguous
/// without brackets and rejected.
fn parse_group(tokens: &[Token], pos: &mut usize, open_pos: Option<usize>) -> Result<Word> {
    let mut items = Vec::new();
    loop {
        match tokens.get(*pos) {
            Some(Token {
                kind: TokKind::Letter(name),
                ..
            }) => {
                items.push(Word::Leaf(name.clone()));
                *pos += 1;
            }
            Some(Token {
                kind: TokKind::Open,
                pos: p,
            }) => {
                let p = *p;
                *pos += 1;
                let inner = parse_group(tokens, pos, Some(p))?;
                match tokens.get(*pos) {
                    Some(Token {
                        kind: TokKind::Close,
                        ..
                    }) => *pos += 1,
                    _ => {
                        return Err(AlgError::ParseError {
                            pos: p,
                            msg: "unbalanced '('".into(),
                        })
                    }
                }
                items.push(inner);
            }
            _ => break,
        }
        if items.len() > 2 {
            return Err(AlgError::ParseError {
                pos: tokens[*pos - 1].pos,
                msg: "flat product of three or more factors is ambiguous; add brackets".into(),
            });
        }
    }
    match items.len() {
        0 => {
            let at = tokens.get(*pos).map(|t| t.pos).or(open_pos).unwrap_or(0);
            Err(AlgError::ParseError {
                pos: at,
                msg: "empty word".into(),
            })
        }
        1 => Ok(items.pop().unwrap()),
        2 => {
            let right = items.pop().unwrap();
            let left = items.pop().unwrap();
            Ok(Word::mul(&left, &right))
        }
        _ => unreachable!(),
    }
}

/// All words of length <= max_length over the given letters, ordered by
/// length then lexicographically. Count at length n over s letters is
/// Catalan(n-1) * s^n.
pub fn enumerate_words(letters: &[String], max_length: usize) -> Vec<Word> {
    assert!(max_length >= 1);
    // by_length[n-1] holds the sorted words of length exactly n
    let mut by_length: Vec<Vec<Word>> = Vec::with_capacity(max_length);
    let mut first: Vec<Word> = letters.iter().map(|s| Word::leaf(s)).collect();
    first.sort();
    by_length.push(first);
    for n in 2..=max_length {
        let mut level = Vec::new();
        for left_len in 1..n {
            let right_len = n - left_len;
            for l in &by_length[left_len - 1] {
                for r in &by_length[right_len - 1] {
                    level.push(Word::mul(l, r));
                }
            }
        }
        level.sort();
        by_length.push(level);
    }
    by_length.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn product_is_structural() {
        let xy = Word::mul(&Word::leaf("x"), &Word::leaf("y"));
        assert_eq!(xy.render(), "xy");
        let left = Word::mul(&xy, &Word::leaf("z"));
        let right = Word::mul(
            &Word::leaf("x"),
            &Word::mul(&Word::leaf("y"), &Word::leaf("z")),
        );
        assert_ne!(left, right);
        assert_eq!(left.render(), "(xy)z");
        assert_eq!(right.render(), "x(yz)");
        let xx = Word::mul(&Word::leaf("x"), &Word::leaf("x"));
        assert_eq!(xx.degree("x"), 2);
        assert_eq!(xx.length(), 2);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            w("x(yz)"),
            Word::mul(
                &Word::leaf("x"),
                &Word::mul(&Word::leaf("y"), &Word::leaf("z"))
            )
        );
        assert!(matches!(
            Word::parse("xyz"),
            Err(AlgError::ParseError { .. })
        ));
        assert!(matches!(
            Word::parse("()"),
            Err(AlgError::ParseError { .. })
        ));
        assert!(matches!(Word::parse(""), Err(AlgError::ParseError { .. })));
        assert!(matches!(
            Word::parse("x(yz"),
            Err(AlgError::ParseError { .. })
        ));
        assert!(matches!(
            Word::parse("x(yz)x"),
            Err(AlgError::ParseError { .. })
        ));
        // multi-character basis-style letters
        assert_eq!(w("e1e2"), Word::mul(&Word::leaf("e1"), &Word::leaf("e2")));
        // redundant brackets around a single word are accepted
        assert_eq!(w("(x)"), Word::leaf("x"));
    }

    #[test]
    fn print_examples() {
        assert_eq!(w("(xy)z").render(), "(xy)z");
        assert_eq!(Word::leaf("x").render(), "x");
        assert_eq!(w("(x(yz))x").render(), "(x(yz))x");
    }

    #[test]
    fn roundtrip_up_to_length_five() {
        let letters = vec!["x".to_string(), "y".to_string()];
        for word in enumerate_words(&letters, 5) {
            assert_eq!(Word::parse(&word.render()).unwrap(), word);
        }
    }

    #[test]
    fn enumeration_counts_match_catalan() {
        fn catalan(n: usize) -> usize {
            let mut cat = vec![1usize; n + 1];
            for m in 1..=n {
                cat[m] = (0..m).map(|k| cat[k] * cat[m - 1 - k]).sum();
            }
            cat[n]
        }
        for s in 1..=3usize {
            let letters: Vec<String> = ["x", "y", "z"][..s].iter().map(|t| t.to_string()).collect();
            let words = enumerate_words(&letters, 6);
            for n in 1..=6usize {
                let count = words.iter().filter(|w| w.length() == n).count();
                assert_eq!(count, catalan(n - 1) * s.pow(n as u32), "n={n} s={s}");
            }
        }
    }

    #[test]
    fn one_letter_enumeration() {
        let letters = vec!["x".to_string()];
        let words = enumerate_words(&letters, 3);
        let rendered: Vec<String> = words.iter().map(Word::render).collect();
        assert_eq!(rendered, vec!["x", "xx", "(xx)x", "x(xx)"]);
        assert_eq!(enumerate_words(&letters, 1).len(), 1);
    }

    #[test]
    fn two_letter_enumeration() {
        let letters = vec!["x".to_string(), "y".to_string()];
        let words = enumerate_words(&letters, 2);
        let rendered: Vec<String> = words.iter().map(Word::render).collect();
        assert_eq!(rendered, vec!["x", "y", "xx", "xy", "yx", "yy"]);
    }

    #[test]
    fn ordering_is_length_then_lex() {
        let a = w("x(xx)");
        let b = w("(xx)x");
        assert!(b < a);
        assert!(w("x") < w("xx"));
        assert!(w("xx") < w("(xx)x"));
    }

    /// Free magma universal property at finite scale: evaluation into any
    /// finite magma is the unique magma morphism extending the letter
    /// assignment. The oracle is structural induction over all enumerated
    /// words.
    #[test]
    fn universal_property_finite_magma() {
        // target magma: Z4 under subtraction-ish table t[a][b] = (a*b + 1) mod 4
        let table = |a: usize, b: usize| (a * b + 1) % 4;
        let assign = |s: &str| match s {
            "x" => 2usize,
            _ => 3usize,
        };
        fn eval(
            w: &Word,
            assign: &dyn Fn(&str) -> usize,
            table: &dyn Fn(usize, usize) -> usize,
        ) -> usize {
            match w {
                Word::Leaf(s) => assign(s),
                Word::Node(l, r) => table(eval(l, assign, table), eval(r, assign, table)),
            }
        }
        let letters = vec!["x".to_string(), "y".to_string()];
        for word in enumerate_words(&letters, 5) {
            if let Word::Node(l, r) = &word {
                assert_eq!(
                    eval(&word, &assign, &table),
                    table(eval(l, &assign, &table), eval(r, &assign, &table))
                );
            } else if let Word::Leaf(s) = &word {
                assert_eq!(eval(&word, &assign, &table), assign(s));
            }
        }
    }
}
