//! The `.cm` text format.
//!
//! ```text
//! # comment
//! n=2 kind=collection
//! 1 2*
//! 1* 2
//! ```
//!
//! Kinds are `collection` (signed bases), `ordinary-matroid` (unsigned
//! bases), `matrix` (a `field=Q` or `field=GF(p)` line, then rows of `2n`
//! entries over columns `1..n, 1*..n*`) and `pair` (two collections
//! separated by a `---` line). A single `-` stands for the empty set.

use std::fmt::{self, Write as _};

use coxmat::axioms::BasisCollection;
use coxmat::ground::{AdmissibleSet, SignedElement};
use coxmat::ordinary::{OrdinaryMatroid, UnsignedSet};
use coxmat::repr::{Field, Matrix, PrimeField, Rationals};
use itertools::Itertools;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Semantic(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Collection,
    OrdinaryMatroid,
    Matrix,
    Pair,
}

impl Kind {
    fn parse(text: &str) -> Option<Self> {
        Some(match text {
            "collection" => Kind::Collection,
            "ordinary-matroid" => Kind::OrdinaryMatroid,
            "matrix" => Kind::Matrix,
            "pair" => Kind::Pair,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Collection => "collection",
            Kind::OrdinaryMatroid => "ordinary-matroid",
            Kind::Matrix => "matrix",
            Kind::Pair => "pair",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A matrix over one of the supported fields.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixDoc {
    Rational(Matrix<Rationals>),
    Prime(Matrix<PrimeField>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Collection(BasisCollection),
    OrdinaryMatroid(OrdinaryMatroid),
    Matrix { n: usize, matrix: MatrixDoc },
    Pair(BasisCollection, BasisCollection),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Collection(_) => Kind::Collection,
            Document::OrdinaryMatroid(_) => Kind::OrdinaryMatroid,
            Document::Matrix { .. } => Kind::Matrix,
            Document::Pair(..) => Kind::Pair,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Document::Collection(c) | Document::Pair(c, _) => c.n(),
            Document::OrdinaryMatroid(m) => m.n(),
            Document::Matrix { n, .. } => *n,
        }
    }
}

/// Lines with comments stripped, keeping 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn parse_header(line: usize, text: &str) -> Result<(usize, Kind), FormatError> {
    let mut n = None;
    let mut kind = None;
    for token in text.split_whitespace() {
        match token.split_once('=') {
            Some(("n", v)) => {
                n = Some(v.parse().map_err(|_| syntax(line, format!("bad ground size {v:?}")))?)
            }
            Some(("kind", v)) => {
                kind = Some(Kind::parse(v).ok_or_else(|| syntax(line, format!("unknown kind {v:?}")))?)
            }
            _ => return Err(syntax(line, format!("unexpected header token {token:?}"))),
        }
    }
    match (n, kind) {
        (Some(n), Some(kind)) => Ok((n, kind)),
        _ => Err(syntax(line, "header must be `n=<int> kind=<kind>`")),
    }
}

fn parse_signed_set(line: usize, text: &str) -> Result<AdmissibleSet, FormatError> {
    if text == "-" {
        return Ok(AdmissibleSet::EMPTY);
    }
    let elements = text
        .split_whitespace()
        .map(|t| t.parse::<SignedElement>().map_err(|_| syntax(line, format!("bad element {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    AdmissibleSet::from_elements(elements.iter().copied()).map_err(|e| {
        FormatError::Semantic(format!("line {line}: set {{{}}} rejected: {e}", text))
    })
}

fn parse_unsigned_set(line: usize, text: &str) -> Result<UnsignedSet, FormatError> {
    if text == "-" {
        return Ok(UnsignedSet::EMPTY);
    }
    let elements = text
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| syntax(line, format!("bad element {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    UnsignedSet::from_elements(elements)
        .map_err(|e| FormatError::Semantic(format!("line {line}: set {{{text}}} rejected: {e}")))
}

fn collection(n: usize, lines: &[(usize, &str)]) -> Result<BasisCollection, FormatError> {
    let sets = lines
        .iter()
        .map(|&(i, l)| parse_signed_set(i, l))
        .collect::<Result<Vec<_>, _>>()?;
    for (&(i, l), s) in lines.iter().zip(&sets) {
        if s.max_index() > n {
            return Err(FormatError::Semantic(format!(
                "line {i}: set {{{l}}} lies outside [{n}]"
            )));
        }
    }
    BasisCollection::new(n, sets).map_err(|e| FormatError::Semantic(e.to_string()))
}

fn matrix_rows<F: Field>(
    field: F,
    n: usize,
    lines: &[(usize, &str)],
) -> Result<Matrix<F>, FormatError> {
    let rows = lines
        .iter()
        .map(|&(i, l)| {
            let row = l
                .split_whitespace()
                .map(|t| field.parse_elem(t).map_err(|e| syntax(i, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != 2 * n {
                return Err(syntax(i, format!("expected {} entries, found {}", 2 * n, row.len())));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(field, 2 * n, rows).map_err(|e| FormatError::Semantic(e.to_string()))
}

pub fn parse(text: &str) -> Result<Document, FormatError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let Some((&(hline, header), body)) = lines.split_first() else {
        return Err(syntax(1, "empty document"));
    };
    let (n, kind) = parse_header(hline, header)?;
    if n > coxmat::ground::MAX_N {
        return Err(syntax(hline, format!("ground size {n} exceeds {}", coxmat::ground::MAX_N)));
    }
    let body_end = lines.last().map_or(hline, |l| l.0);
    match kind {
        Kind::Collection => Ok(Document::Collection(collection(n, body)?)),
        Kind::Pair => {
            let split = body.iter().position(|&(_, l)| l == "---").ok_or_else(|| {
                syntax(body_end, "a pair needs two collections separated by `---`")
            })?;
            let (first, rest) = body.split_at(split);
            Ok(Document::Pair(collection(n, first)?, collection(n, &rest[1..])?))
        }
        Kind::OrdinaryMatroid => {
            let sets = body
                .iter()
                .map(|&(i, l)| parse_unsigned_set(i, l))
                .collect::<Result<Vec<_>, _>>()?;
            OrdinaryMatroid::new(n, sets)
                .map(Document::OrdinaryMatroid)
                .map_err(|e| FormatError::Semantic(e.to_string()))
        }
        Kind::Matrix => {
            let Some((&(fline, ftext), rows)) = body.split_first() else {
                return Err(syntax(body_end, "missing `field=` line"));
            };
            let tag = ftext
                .strip_prefix("field=")
                .ok_or_else(|| syntax(fline, "expected `field=Q` or `field=GF(p)`"))?;
            let matrix = if tag == "Q" {
                MatrixDoc::Rational(matrix_rows(Rationals, n, rows)?)
            } else if let Some(p) = tag.strip_prefix("GF(").and_then(|t| t.strip_suffix(')')) {
                let p: u64 = p.parse().map_err(|_| syntax(fline, format!("bad prime {p:?}")))?;
                let field = PrimeField::new(p).map_err(|e| syntax(fline, e.to_string()))?;
                MatrixDoc::Prime(matrix_rows(field, n, rows)?)
            } else {
                return Err(syntax(fline, format!("unknown field {tag:?}")));
            };
            Ok(Document::Matrix { n, matrix })
        }
    }
}

fn signed_line(s: AdmissibleSet) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s.iter().join(" ")
    }
}

fn write_collection(out: &mut String, c: &BasisCollection) {
    for &b in c.bases() {
        writeln!(out, "{}", signed_line(b)).unwrap();
    }
}

fn write_matrix<F: Field>(out: &mut String, m: &Matrix<F>) {
    writeln!(out, "field={}", m.field().name()).unwrap();
    for i in 0..m.rows() {
        writeln!(out, "{}", m.row(i).iter().join(" ")).unwrap();
    }
}

pub fn serialize(doc: &Document) -> String {
    let mut out = format!("n={} kind={}\n", doc.n(), doc.kind());
    match doc {
        Document::Collection(c) => write_collection(&mut out, c),
        Document::Pair(a, b) => {
            write_collection(&mut out, a);
            out.push_str("---\n");
            write_collection(&mut out, b);
        }
        Document::OrdinaryMatroid(m) => {
            for &b in m.bases() {
                let line = if b.is_empty() { "-".into() } else { b.iter().join(" ") };
                writeln!(out, "{line}").unwrap();
            }
        }
        Document::Matrix { matrix, .. } => match matrix {
            MatrixDoc::Rational(m) => write_matrix(&mut out, m),
            MatrixDoc::Prime(m) => write_matrix(&mut out, m),
        },
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_rank_two_collection() {
        let doc = parse("n=2 kind=collection\n1 2*\n1* 2\n").unwrap();
        assert_eq!(
            doc,
            Document::Collection(BasisCollection::from_compact(2, &["12*", "1*2"]).unwrap())
        );
    }

    #[test]
    fn semantic_and_syntax_errors() {
        assert!(matches!(
            parse("n=3 kind=collection\n1 1 2\n"),
            Err(FormatError::Semantic(msg)) if msg.contains("1 1 2")
        ));
        assert!(matches!(parse("n=2 kind=collection\n1 1*\n"), Err(FormatError::Semantic(_))));
        assert!(matches!(parse("n=2 kind=collection\n1 x\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse("kind=collection\n1\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse("n=2 kind=set\n1\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse("n=2 kind=collection\n1 3\n"), Err(FormatError::Semantic(_))));
        assert!(matches!(parse("n=2 kind=collection\n1\n1 2\n"), Err(FormatError::Semantic(_))));
        assert!(matches!(parse("n=2 kind=collection\n"), Err(FormatError::Semantic(_))));
        assert!(matches!(parse("n=2 kind=pair\n1 2\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse("n=1 kind=matrix\nfield=GF(4)\n1 0\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse("n=1 kind=matrix\nfield=Q\n1 0 0\n"), Err(FormatError::Syntax { line: 3, .. })));
        assert!(matches!(parse(""), Err(FormatError::Syntax { .. })));
    }

    #[test]
    fn comments_blank_lines_and_round_trips() {
        let text = "# fig 2\n\nn=3 kind=pair\n1 2 3 # even\n---\n1 2 3*\n1* 2* 3*\n";
        let doc = parse(text).unwrap();
        assert_eq!(serialize(&doc), "n=3 kind=pair\n1 2 3\n---\n1 2 3*\n1* 2* 3*\n");
        assert_eq!(parse(&serialize(&doc)).unwrap(), doc);

        let m = parse("n=2 kind=ordinary-matroid\n-\n").unwrap();
        assert_eq!(serialize(&m), "n=2 kind=ordinary-matroid\n-\n");
        let q = parse("n=1 kind=matrix\nfield=Q\n2/4 0\n").unwrap();
        assert_eq!(serialize(&q), "n=1 kind=matrix\nfield=Q\n1/2 0\n");
        let z = parse("n=1 kind=matrix\nfield=GF(5)\n").unwrap();
        assert_eq!(parse(&serialize(&z)).unwrap(), z);
        let p = parse("n=1 kind=matrix\nfield=GF(5)\n-1 7\n").unwrap();
        assert_eq!(serialize(&p), "n=1 kind=matrix\nfield=GF(5)\n4 2\n");
    }

    proptest::proptest! {
        #[test]
        fn collections_round_trip(n in 0usize..=4, picks in proptest::collection::vec(0usize..1000, 1..6)) {
            let sets = coxmat::ground::enumerate_admissible_sets(n, n).unwrap();
            let c = BasisCollection::new(n, picks.iter().map(|&p| sets[p % sets.len()])).unwrap();
            let doc = Document::Collection(c);
            proptest::prop_assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
        }

        #[test]
        fn prime_matrices_round_trip(entries in proptest::collection::vec(-20i64..20, 0..12)) {
            let f = PrimeField::new(11).unwrap();
            let rows = entries.len() / 4;
            let m = Matrix::from_i64_rows(f, 4, &entries.chunks(4).take(rows).map(<[i64]>::to_vec).collect::<Vec<_>>()).unwrap();
            let doc = Document::Matrix { n: 2, matrix: MatrixDoc::Prime(m) };
            proptest::prop_assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
        }
    }
}
