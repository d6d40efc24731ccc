//! One function per subcommand. Each returns an [`Outcome`] or a
//! [`CliError`] for bad input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use coxmat::axioms::{
    all_collections, is_orthogonal_matroid, is_symplectic_matroid, lagrangian_orthogonal_matroids,
    maximal_members, maximality_witness, strong_exchange_holds, strong_exchange_violation,
    symmetric_exchange_holds, symmetric_exchange_violation, BasisCollection,
};
use coxmat::ground::{enumerate_admissible_sets, AdmissibleSet, Parity};
use coxmat::ordering::{enumerate_orderings, Flavor};
use coxmat::ordinary::{
    all_ordinary_matroids, gale_cmp_unsigned, max_basis, ordinary_maximality_witness,
    OrdinaryMatroid, UnsignedSet,
};
use coxmat::pairs::{
    check_pair, exploded_sum, project, transposition_pair, validate_pair, Condition,
    LagrangianPairReport, Witness,
};
use coxmat::polytope::{gs_witness, is_root_direction, Polytope};
use coxmat::quotients::{
    circuits, elementary_quotient_corollary_check, is_quotient, is_quotient_gale, phi_matroid,
};
use coxmat::repr::{
    lagrangian_extensions, pair_representation_report, represented_matroid, Field,
    IsotropicMatrix, Matrix,
};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::document::{parse, serialize, Document, FormatError, MatrixDoc};
use crate::report::{Outcome, Status};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] coxmat::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Library(coxmat::Error::InvariantViolation(_)) => Status::InvariantViolation,
            _ => Status::InputError,
        }
    }
}

type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Axiom {
    Symplectic,
    Orthogonal,
    Ordinary,
    StrongExchange,
    SymmetricExchange,
    Gs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FlavorArg {
    A,
    C,
    D,
}

impl FlavorArg {
    pub fn flavor(self) -> Flavor {
        match self {
            FlavorArg::A => Flavor::A,
            FlavorArg::C => Flavor::C,
            FlavorArg::D => Flavor::D,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum What {
    Orderings,
    AdmissibleSets,
    Matroids,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DumpFormat {
    Json,
    Off,
}

fn load(path: &Path) -> Result<Document> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    parse(&text).map_err(|source| CliError::Format { path: shown, source })
}

fn wrong_kind(path: &Path, wanted: &str, doc: &Document) -> CliError {
    CliError::Input(format!("{}: expected {wanted}, found kind={}", path.display(), doc.kind()))
}

fn load_collection(path: &Path) -> Result<BasisCollection> {
    match load(path)? {
        Document::Collection(c) => Ok(c),
        other => Err(wrong_kind(path, "a collection", &other)),
    }
}

fn load_ordinary(path: &Path) -> Result<OrdinaryMatroid> {
    match load(path)? {
        Document::OrdinaryMatroid(m) => Ok(m),
        other => Err(wrong_kind(path, "an ordinary matroid", &other)),
    }
}

/// Either one `pair` document or two `collection` documents.
fn load_pair(files: &[PathBuf]) -> Result<(BasisCollection, BasisCollection)> {
    match files {
        [one] => match load(one)? {
            Document::Pair(a, b) => Ok((a, b)),
            other => Err(wrong_kind(one, "a pair (or give two collections)", &other)),
        },
        [a, b] => Ok((load_collection(a)?, load_collection(b)?)),
        _ => Err(CliError::Input(format!("expected 1 or 2 files, got {}", files.len()))),
    }
}

fn sets_json(c: &BasisCollection) -> Value {
    json!(c.bases().iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn collection_json(c: &BasisCollection) -> Value {
    json!({ "n": c.n(), "rank": c.rank(), "bases": sets_json(c) })
}

fn witness_json(w: &Witness) -> Value {
    json!({
        "note": w.note,
        "ordering": w.ordering.as_ref().map(ToString::to_string),
        "bases": w.bases.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn signed_triple(a: AdmissibleSet, b: AdmissibleSet, e: coxmat::ground::SignedElement) -> Value {
    json!({ "a": a.to_string(), "b": b.to_string(), "element": e.to_string() })
}

pub fn check(axiom: Axiom, flavor: FlavorArg, path: &Path) -> Result<Outcome> {
    if axiom == Axiom::Ordinary {
        return check_ordinary(path);
    }
    let c = load_collection(path)?;
    let name = clap::ValueEnum::to_possible_value(&axiom)
        .expect("every axiom has a name")
        .get_name()
        .to_string();
    let (holds, witness, detail) = match axiom {
        Axiom::Symplectic | Axiom::Orthogonal => {
            let fl = if axiom == Axiom::Symplectic { Flavor::C } else { Flavor::D };
            match maximality_witness(&c, fl) {
                None => (true, Value::Null, String::new()),
                Some(ord) => {
                    let tops = maximal_members(&c, &ord);
                    let text = format!(
                        "no unique maximal basis under {ord}; maximal candidates {}",
                        tops.iter().join(" ")
                    );
                    let w = json!({
                        "ordering": ord.to_string(),
                        "maximal": tops.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    });
                    (false, w, text)
                }
            }
        }
        Axiom::StrongExchange => {
            if strong_exchange_holds(&c)? {
                (true, Value::Null, String::new())
            } else {
                let (a, b, e) = strong_exchange_violation(&c).expect("a violation exists");
                let text = format!("A = {a}, B = {b}, a = {e}: no partner b completes both swaps");
                (false, signed_triple(a, b, e), text)
            }
        }
        Axiom::SymmetricExchange => {
            if symmetric_exchange_holds(&c)? {
                (true, Value::Null, String::new())
            } else {
                let (a, b, e) = symmetric_exchange_violation(&c).expect("a violation exists");
                let text = format!("A = {a}, B = {b}, a = {e}: no exchange partner in A △ B");
                (false, signed_triple(a, b, e), text)
            }
        }
        Axiom::Gs => {
            let fl = match flavor {
                FlavorArg::A => return Err(CliError::Input("gs needs --flavor c or d".into())),
                other => other.flavor(),
            };
            match gs_witness(&c, fl) {
                None => (true, Value::Null, String::new()),
                Some((x, y)) => {
                    let text = format!("edge {x} -- {y} is not parallel to a {fl} root");
                    (false, json!({ "edge": [x.to_string(), y.to_string()] }), text)
                }
            }
        }
        Axiom::Ordinary => unreachable!("handled above"),
    };
    let mut text = format!("{name}: {} for {c}\n", if holds { "holds" } else { "fails" });
    if !holds {
        writeln!(text, "  witness: {detail}").unwrap();
    }
    let result = json!({
        "axiom": name,
        "holds": holds,
        "collection": collection_json(&c),
        "witness": witness,
    });
    Ok(Outcome::new(Status::from_verdict(holds), text, result))
}

fn check_ordinary(path: &Path) -> Result<Outcome> {
    let m = load_ordinary(path)?;
    let witness = ordinary_maximality_witness(&m);
    let mut text = format!(
        "ordinary: {} for {m}\n",
        if witness.is_none() { "holds" } else { "fails" }
    );
    let witness_json = match &witness {
        None => Value::Null,
        Some(ord) => {
            let tops: Vec<UnsignedSet> = m
                .bases()
                .iter()
                .copied()
                .filter(|&b| {
                    m.bases().iter().all(|&o| {
                        gale_cmp_unsigned(ord, b, o).unwrap() != Some(std::cmp::Ordering::Less)
                    })
                })
                .collect();
            writeln!(
                text,
                "  witness: no unique maximal basis under {ord}; maximal candidates {}",
                tops.iter().join(" ")
            )
            .unwrap();
            json!({
                "ordering": ord.to_string(),
                "maximal": tops.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        }
    };
    let result = json!({
        "axiom": "ordinary",
        "holds": witness.is_none(),
        "bases": m.bases().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "witness": witness_json,
    });
    Ok(Outcome::new(Status::from_verdict(witness.is_none()), text, result))
}

fn report_text(report: &LagrangianPairReport) -> String {
    let mut text = String::new();
    for c in Condition::ALL {
        let holds = report.verdict(c);
        writeln!(text, "{} {:<5} {}", c.label(), holds, c.description()).unwrap();
        if let Some(w) = report.witness(c) {
            writeln!(text, "      witness: {w}").unwrap();
        }
    }
    text
}

fn report_json(report: &LagrangianPairReport) -> Value {
    json!(Condition::ALL
        .iter()
        .map(|&c| json!({
            "id": c.label(),
            "description": c.description(),
            "holds": report.verdict(c),
            "witness": report.witness(c).map(witness_json),
        }))
        .collect::<Vec<_>>())
}

fn pair_status(report: &LagrangianPairReport) -> Status {
    if !report.consistent() {
        Status::InvariantViolation
    } else {
        Status::from_verdict(report.all_true())
    }
}

pub fn pair(files: &[PathBuf]) -> Result<Outcome> {
    let (b1, b2) = load_pair(files)?;
    let report = check_pair(&b1, &b2)?;
    let status = pair_status(&report);
    let mut text = format!("first:  {b1}\nsecond: {b2}\n");
    text.push_str(&report_text(&report));
    text.push_str(match status {
        Status::Ok => "verdict: Lagrangian pair\n",
        Status::Fails => "verdict: not a Lagrangian pair\n",
        _ => "verdict: conditions disagree (internal invariant violated)\n",
    });
    let result = json!({
        "first": collection_json(&b1),
        "second": collection_json(&b2),
        "conditions": report_json(&report),
        "consistent": report.consistent(),
        "lagrangian_pair": report.consistent().then(|| report.all_true()),
    });
    Ok(Outcome::new(status, text, result))
}

fn construction(doc: Document, result: Value) -> Outcome {
    Outcome::new(Status::Ok, serialize(&doc), result)
}

pub fn explode(files: &[PathBuf]) -> Result<Outcome> {
    let (b1, b2) = load_pair(files)?;
    let sum = exploded_sum(&b1, &b2)?;
    let result = json!({ "collection": collection_json(&sum) });
    Ok(construction(Document::Collection(sum), result))
}

pub fn project_cmd(path: &Path, element: usize) -> Result<Outcome> {
    let c = load_collection(path)?;
    let p = project(&c, element)?;
    let mut text = format!(
        "# new indices 1..{} are old indices {}\n",
        p.relabel.len(),
        p.relabel.iter().join(" ")
    );
    let result = json!({
        "with_element": collection_json(&p.with_element),
        "with_star": collection_json(&p.with_star),
        "relabel": p.relabel,
    });
    text.push_str(&serialize(&Document::Pair(p.with_element, p.with_star)));
    Ok(Outcome::new(Status::Ok, text, result))
}

pub fn transpose(path: &Path, element: usize) -> Result<Outcome> {
    let c = load_collection(path)?;
    let t = transposition_pair(&c, element)?;
    let result = json!({ "collection": collection_json(&t) });
    Ok(construction(Document::Collection(t), result))
}

pub fn union(files: &[PathBuf]) -> Result<Outcome> {
    let (b1, b2) = load_pair(files)?;
    validate_pair(&b1, &b2)?;
    let report = check_pair(&b1, &b2)?;
    if !report.all_true() {
        let status = pair_status(&report);
        let w = report.witness(Condition::Definition);
        let mut text = "union: the inputs are not a Lagrangian pair\n".to_string();
        if let Some(w) = w {
            writeln!(text, "  witness: {w}").unwrap();
        }
        let result = json!({ "conditions": report_json(&report) });
        return Ok(Outcome::new(status, text, result));
    }
    let u = b1.union(&b2)?;
    if !is_symplectic_matroid(&u) {
        return Err(coxmat::Error::InvariantViolation(format!(
            "union {u} of a Lagrangian pair is not symplectic"
        ))
        .into());
    }
    let result = json!({ "collection": collection_json(&u), "symplectic": true });
    Ok(construction(Document::Collection(u), result))
}

pub fn quotient(m1_path: &Path, m2_path: &Path) -> Result<Outcome> {
    let m1 = load_ordinary(m1_path)?;
    let m2 = load_ordinary(m2_path)?;
    let by_circuits = is_quotient(&m1, &m2)?;
    let by_orders = is_quotient_gale(&m1, &m2)?;
    if by_circuits != by_orders {
        return Err(coxmat::Error::InvariantViolation(format!(
            "circuit test says {by_circuits}, maximal-basis test says {by_orders}"
        ))
        .into());
    }
    let mut text = format!(
        "quotient: {m2} {} a quotient of {m1}\n",
        if by_circuits { "is" } else { "is not" }
    );
    let mut witness = Value::Null;
    if !by_circuits {
        let c2 = circuits(&m2);
        let bad = circuits(&m1)
            .circuits()
            .iter()
            .copied()
            .find(|&c| !c2.is_union_of_circuits(c))
            .expect("a circuit fails");
        let ord = enumerate_orderings(m1.n(), Flavor::A)
            .find(|o| {
                let (b1, b2) = (max_basis(&m1, o).unwrap(), max_basis(&m2, o).unwrap());
                !b2.is_subset(b1)
            })
            .expect("an ordering fails");
        let (b1, b2) = (max_basis(&m1, &ord).unwrap(), max_basis(&m2, &ord).unwrap());
        writeln!(text, "  witness: circuit {bad} of the first is not a union of circuits of the second").unwrap();
        writeln!(text, "  witness: under {ord} the maximal bases {b2} and {b1} are not nested").unwrap();
        witness = json!({
            "circuit": bad.to_string(),
            "ordering": ord.to_string(),
            "maximal_bases": [b1.to_string(), b2.to_string()],
        });
    }
    let result = json!({ "quotient": by_circuits, "witness": witness });
    Ok(Outcome::new(Status::from_verdict(by_circuits), text, result))
}

pub fn phi(path: &Path) -> Result<Outcome> {
    let m = load_ordinary(path)?;
    let image = phi_matroid(&m)?;
    let result = json!({ "collection": collection_json(&image) });
    Ok(construction(Document::Collection(image), result))
}

pub fn corollary(m1_path: &Path, m2_path: &Path) -> Result<Outcome> {
    let m1 = load_ordinary(m1_path)?;
    let m2 = load_ordinary(m2_path)?;
    let verdict = elementary_quotient_corollary_check(&m1, &m2)?;
    let q = is_quotient(&m1, &m2)?;
    let status = if verdict != q {
        Status::InvariantViolation
    } else {
        Status::from_verdict(verdict)
    };
    let text = format!(
        "corollary: exchange conditions {}; circuit quotient test {}\n",
        if verdict { "hold" } else { "fail" },
        if q { "holds" } else { "fails" }
    );
    let result = json!({ "exchange_conditions": verdict, "quotient": q });
    Ok(Outcome::new(status, text, result))
}

fn load_isotropic(path: &Path) -> Result<(usize, MatrixDoc)> {
    match load(path)? {
        Document::Matrix { n, matrix } => Ok((n, matrix)),
        other => Err(wrong_kind(path, "a matrix", &other)),
    }
}

fn represent_in<F: Field>(n: usize, m: Matrix<F>) -> Result<Outcome> {
    let u = IsotropicMatrix::new(n, m)?;
    let rep = represented_matroid(&u);
    let symplectic = is_symplectic_matroid(&rep);
    let orthogonal = is_orthogonal_matroid(&rep);
    if !symplectic || (u.k() == n && !orthogonal) {
        return Err(coxmat::Error::InvariantViolation(format!(
            "represented matroid {rep} fails the Maximality Property"
        ))
        .into());
    }
    let result = json!({
        "field": u.field().name(),
        "collection": collection_json(&rep),
        "symplectic": symplectic,
        "orthogonal": orthogonal,
    });
    Ok(construction(Document::Collection(rep), result))
}

pub fn represent(path: &Path) -> Result<Outcome> {
    match load_isotropic(path)? {
        (n, MatrixDoc::Rational(m)) => represent_in(n, m),
        (n, MatrixDoc::Prime(m)) => represent_in(n, m),
    }
}

fn extend_in<F: Field>(
    n: usize,
    m: Matrix<F>,
    wrap: fn(Matrix<F>) -> MatrixDoc,
) -> Result<Outcome> {
    let u = IsotropicMatrix::new(n, m)?;
    let (a, b) = lagrangian_extensions(&u)?;
    let report = pair_representation_report(&a, &b)?;
    let status = if report.all_true() { Status::Ok } else { Status::InvariantViolation };
    let mut text = String::new();
    let mut parts = Vec::new();
    for (label, l) in [("first", &a), ("second", &b)] {
        let rep = represented_matroid(l);
        writeln!(text, "# {label} extension, represents {rep}").unwrap();
        text.push_str(&serialize(&Document::Matrix { n, matrix: wrap(l.matrix().clone()) }));
        parts.push(json!({
            "rows": l.matrix().row_vecs().iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "represents": collection_json(&rep),
        }));
    }
    if status != Status::Ok {
        text.push_str(&report_text(&report));
    }
    let result = json!({
        "field": u.field().name(),
        "extensions": parts,
        "conditions": report_json(&report),
    });
    Ok(Outcome::new(status, text, result))
}

pub fn extend(path: &Path) -> Result<Outcome> {
    match load_isotropic(path)? {
        (n, MatrixDoc::Rational(m)) => extend_in(n, m, MatrixDoc::Rational),
        (n, MatrixDoc::Prime(m)) => extend_in(n, m, MatrixDoc::Prime),
    }
}

pub fn gs_dump(path: &Path, format: DumpFormat) -> Result<Outcome> {
    let c = load_collection(path)?;
    let n = c.n();
    let poly = Polytope::from_collection(&c);
    let edges = poly.edges();
    let vertices: Vec<Vec<i64>> = poly
        .vertices()
        .iter()
        .map(|v| v.coords().iter().map(|&x| x as i64).collect())
        .collect();
    let diff = |i: usize, j: usize| -> Vec<i64> {
        vertices[i].iter().zip(&vertices[j]).map(|(a, b)| a - b).collect()
    };
    let result = json!({
        "n": n,
        "vertices": poly.labels().iter().zip(&vertices)
            .map(|(l, v)| json!({ "label": l.to_string(), "delta": v }))
            .collect::<Vec<_>>(),
        "edges": edges.iter().map(|&(i, j)| json!({
            "vertices": [i, j],
            "c_root": is_root_direction(&diff(i, j), Flavor::C),
            "d_root": is_root_direction(&diff(i, j), Flavor::D),
        })).collect::<Vec<_>>(),
    });
    let text = match format {
        DumpFormat::Json => serde_json::to_string_pretty(&result).unwrap() + "\n",
        DumpFormat::Off => {
            // Edges are written as two-vertex faces.
            let mut out = if n == 3 { "OFF\n".to_string() } else { format!("nOFF\n{n}\n") };
            writeln!(out, "{} {} 0", vertices.len(), edges.len()).unwrap();
            for (v, label) in vertices.iter().zip(poly.labels()) {
                writeln!(out, "{} # {label}", v.iter().join(" ")).unwrap();
            }
            for (i, j) in &edges {
                writeln!(out, "2 {i} {j}").unwrap();
            }
            out
        }
    };
    Ok(Outcome::new(Status::Ok, text, result))
}

/// Exhaustive enumeration is limited to families with at most this many
/// candidate sets.
const MAX_FAMILY: usize = 16;

pub fn enumerate(
    what: What,
    n: usize,
    k: Option<usize>,
    flavor: FlavorArg,
    parity: Option<ParityArg>,
) -> Result<Outcome> {
    let k = k.unwrap_or(n);
    let lines: Vec<String> = match what {
        What::Orderings => {
            if n > 7 {
                return Err(CliError::Input(format!("too many orderings to list for n = {n}")));
            }
            enumerate_orderings(n, flavor.flavor()).map(|o| o.to_string()).collect()
        }
        What::AdmissibleSets => enumerate_admissible_sets(n, k)?
            .iter()
            .map(ToString::to_string)
            .collect(),
        What::Matroids => match flavor {
            FlavorArg::A => all_ordinary_matroids(n)?.iter().map(ToString::to_string).collect(),
            FlavorArg::C | FlavorArg::D => {
                let fl = flavor.flavor();
                let family = enumerate_admissible_sets(n, k)?.len();
                let family = match parity {
                    Some(_) if k == n => family / 2,
                    _ => family,
                };
                if family > MAX_FAMILY {
                    return Err(CliError::Input(format!(
                        "{family} candidate sets is too many to enumerate every family"
                    )));
                }
                let want = parity.map(|p| match p {
                    ParityArg::Even => Parity::Even,
                    ParityArg::Odd => Parity::Odd,
                });
                let found: Vec<BasisCollection> = match want {
                    Some(p) if fl == Flavor::D && k == n => lagrangian_orthogonal_matroids(n, p)?,
                    _ => all_collections(n, k)?
                        .filter(|c| match fl {
                            Flavor::C => is_symplectic_matroid(c),
                            _ => is_orthogonal_matroid(c),
                        })
                        .filter(|c| want.is_none() || c.parity() == want)
                        .collect(),
                };
                found.iter().map(ToString::to_string).collect()
            }
        },
    };
    let mut text = lines.iter().map(|l| format!("{l}\n")).collect::<String>();
    writeln!(text, "# {} items", lines.len()).unwrap();
    let result = json!({ "count": lines.len(), "items": lines });
    Ok(Outcome::new(Status::Ok, text, result))
}
