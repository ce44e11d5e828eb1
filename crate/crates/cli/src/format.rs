//! TOML documents for categories and representations, and a loader that resolves
//! references between files and bundled fixtures.
//!
//! A category file holds a `[category]` table that is either explicit
//! (`vertices`, `arrows`, `relations`), a tensor product `tensor = [A, B]` or an
//! opposite `opposite = A`, where `A` and `B` are references to other category
//! files. A representation file holds a `[representation]` table naming its category,
//! an optional base category, dimensions per object and arrow matrices given as rows.
//! With a base, objects and arrows are those of the tensor category, named `c⊗b`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use nakayama_core::{
    build_category, Category, Field, Matrix, Module, Quiver, Relation, Representation, Scalar, Setting,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::fixtures;

/// Problems with input files or arguments.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("{origin}: cannot read: {message}")]
    Io { origin: String, message: String },
    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}: {message}")]
    Semantic { origin: String, message: String },
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub category: CategoryDoc,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    /// Longest path length considered when computing Hom bases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_cutoff: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<ArrowDoc>,
    /// Linear combinations such as `b*a - g*m` or `2 x*y + 1/2 z`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opposite: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub representation: RepresentationDoc,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub category: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    /// Omitted objects have dimension 0.
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    /// Rows of each arrow matrix; omitted arrows act by zero.
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<Entry>>>,
}

/// A matrix entry: an integer or a literal such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Int(n) => write!(f, "{n}"),
            Entry::Text(s) => write!(f, "{s}"),
        }
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_toml<T: serde::de::DeserializeOwned>(origin: &str, text: &str) -> Result<T, InputError> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
        InputError::Parse {
            origin: origin.to_string(),
            line,
            column,
            message: e.message().trim().replace('\n', "; "),
        }
    })
}

pub fn parse_category(origin: &str, text: &str) -> Result<CategoryDoc, InputError> {
    parse_toml::<CategoryFile>(origin, text).map(|f| f.category)
}

pub fn parse_representation(origin: &str, text: &str) -> Result<RepresentationDoc, InputError> {
    parse_toml::<RepresentationFile>(origin, text).map(|f| f.representation)
}

pub fn category_to_toml(doc: &CategoryDoc) -> String {
    toml::to_string(&CategoryFile { category: doc.clone() }).expect("category documents serialize")
}

pub fn representation_to_toml(doc: &RepresentationDoc) -> String {
    toml::to_string(&RepresentationFile {
        representation: doc.clone(),
    })
    .expect("representation documents serialize")
}

fn entry_of(s: &Scalar) -> Entry {
    let text = s.to_string();
    match text.parse::<i64>() {
        Ok(n) => Entry::Int(n),
        Err(_) => Entry::Text(text),
    }
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<Entry>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| entry_of(&m.get(i, j))).collect())
        .collect()
}

/// The document of a representation: every dimension and the nonzero arrow matrices.
pub fn representation_doc(rep: &Representation, category: &str, base: Option<&str>) -> RepresentationDoc {
    let total = &rep.setting().total;
    let module = rep.module();
    let dims = (0..total.num_objects())
        .map(|x| (total.object_name(x).to_string(), module.dim(x)))
        .collect();
    let arrows = (0..total.num_arrows())
        .filter(|&a| !module.arrow_matrix(a).is_zero())
        .map(|a| (total.arrow(a).name.clone(), matrix_rows(module.arrow_matrix(a))))
        .collect();
    RepresentationDoc {
        name: None,
        category: category.to_string(),
        base: base.map(str::to_string),
        dims,
        arrows,
    }
}

/// Where a document came from; references inside a fixture resolve to fixtures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Fixture(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::File(p) => write!(f, "{}", p.display()),
            Source::Fixture(n) => write!(f, "fixture:{n}"),
        }
    }
}

fn fixture_name(s: &str) -> String {
    let s = s.rsplit('/').next().unwrap_or(s);
    s.strip_suffix(".toml").unwrap_or(s).to_string()
}

impl Source {
    /// Parses a command line argument: `fixture:NAME` or a file path.
    pub fn from_arg(arg: &str) -> Source {
        match arg.strip_prefix("fixture:") {
            Some(name) => Source::Fixture(fixture_name(name)),
            None => Source::File(PathBuf::from(arg)),
        }
    }

    /// Resolves a reference written inside this document.
    pub fn resolve(&self, reference: &str) -> Source {
        if let Some(name) = reference.strip_prefix("fixture:") {
            return Source::Fixture(fixture_name(name));
        }
        match self {
            Source::Fixture(_) => Source::Fixture(fixture_name(reference)),
            Source::File(p) => {
                let dir = p.parent().unwrap_or_else(|| Path::new(""));
                Source::File(dir.join(reference))
            }
        }
    }

    fn read(&self) -> Result<String, InputError> {
        match self {
            Source::File(p) => std::fs::read_to_string(p).map_err(|e| InputError::Io {
                origin: self.to_string(),
                message: e.to_string(),
            }),
            Source::Fixture(n) => fixtures::get(n).map(|f| f.text.to_string()).ok_or_else(|| InputError::Io {
                origin: self.to_string(),
                message: "no such fixture".into(),
            }),
        }
    }
}

/// A file read while loading, with its digest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputRecord {
    pub origin: String,
    pub kind: &'static str,
    pub sha256: String,
}

/// Loads documents, builds categories once per source and records every file read.
pub struct Loader {
    field: Option<Field>,
    categories: Vec<(Source, Arc<Category>)>,
    in_progress: Vec<Source>,
    pub inputs: Vec<InputRecord>,
}

fn semantic(origin: &Source, message: impl fmt::Display) -> InputError {
    InputError::Semantic {
        origin: origin.to_string(),
        message: message.to_string(),
    }
}

/// Splits `b*a - 2 g*m` into signed `(coefficient, word)` terms.
fn relation_terms(text: &str) -> Result<Vec<(bool, Option<String>, String)>, String> {
    let mut tokens: Vec<String> = Vec::new();
    for raw in text.split_whitespace() {
        let mut rest = raw;
        while let Some(c) = rest.chars().next().filter(|c| *c == '+' || *c == '-') {
            if rest.len() == 1 {
                break;
            }
            // A leading sign on a number belongs to the number.
            if rest[1..].starts_with(|d: char| d.is_ascii_digit()) {
                break;
            }
            tokens.push(c.to_string());
            rest = &rest[1..];
        }
        tokens.push(rest.to_string());
    }
    let mut out = Vec::new();
    let mut negative = false;
    let mut pending: Vec<String> = Vec::new();
    fn flush(out: &mut Vec<(bool, Option<String>, String)>, negative: bool, pending: &mut Vec<String>) -> Result<(), String> {
        match pending.len() {
            0 => Err("missing term".to_string()),
            1 => {
                out.push((negative, None, pending.remove(0)));
                Ok(())
            }
            2 => {
                let word = pending.remove(1);
                out.push((negative, Some(pending.remove(0)), word));
                Ok(())
            }
            _ => Err(format!("cannot read term `{}`", pending.join(" "))),
        }
    }
    let mut leading_sign = false;
    for t in tokens {
        if t == "+" || t == "-" {
            if pending.is_empty() {
                if !out.is_empty() || leading_sign {
                    return Err("misplaced sign".into());
                }
                leading_sign = true;
            } else {
                flush(&mut out, negative, &mut pending)?;
            }
            negative = t == "-";
        } else {
            pending.push(t);
        }
    }
    flush(&mut out, negative, &mut pending)?;
    Ok(out)
}

fn parse_relation(quiver: &Quiver, field: Field, text: &str) -> Result<Relation, String> {
    let terms = relation_terms(text).map_err(|e| format!("relation `{text}`: {e}"))?;
    let mut out = Vec::with_capacity(terms.len());
    for (negative, coef, word) in terms {
        let mut c = match coef {
            Some(s) => Scalar::parse(field, &s).map_err(|e| format!("relation `{text}`: {e}"))?,
            None => Scalar::one(field),
        };
        if negative {
            c = c.neg();
        }
        let path = quiver.parse_path(&word).map_err(|e| format!("relation `{text}`: {e}"))?;
        out.push((c, path.arrows));
    }
    Ok(Relation { terms: out })
}

fn parse_field(origin: &Source, s: &str) -> Result<Field, InputError> {
    s.parse::<Field>().map_err(|e| semantic(origin, format!("field `{s}`: {e}")))
}

fn parse_entry(field: Field, e: &Entry) -> Result<Scalar, String> {
    match e {
        Entry::Int(n) => Ok(Scalar::from_i64(field, *n)),
        Entry::Text(s) => Scalar::parse(field, s).map_err(|err| err.to_string()),
    }
}

impl Loader {
    /// `field` replaces the field declared in every file.
    pub fn new(field: Option<Field>) -> Loader {
        Loader {
            field,
            categories: Vec::new(),
            in_progress: Vec::new(),
            inputs: Vec::new(),
        }
    }

    fn read(&mut self, source: &Source, kind: &'static str) -> Result<String, InputError> {
        let text = source.read()?;
        let origin = source.to_string();
        if !self.inputs.iter().any(|r| r.origin == origin) {
            self.inputs.push(InputRecord {
                origin,
                kind,
                sha256: hex::encode(Sha256::digest(text.as_bytes())),
            });
        }
        Ok(text)
    }

    pub fn category(&mut self, source: &Source) -> Result<Arc<Category>, InputError> {
        if let Some((_, c)) = self.categories.iter().find(|(s, _)| s == source) {
            return Ok(c.clone());
        }
        if self.in_progress.contains(source) {
            return Err(semantic(source, "category references form a cycle"));
        }
        let text = self.read(source, "category")?;
        let doc = parse_category(&source.to_string(), &text)?;
        self.in_progress.push(source.clone());
        let built = self.build_category(source, &doc);
        self.in_progress.pop();
        let cat = Arc::new(built?);
        self.categories.push((source.clone(), cat.clone()));
        Ok(cat)
    }

    fn build_category(&mut self, source: &Source, doc: &CategoryDoc) -> Result<Category, InputError> {
        let explicit = !doc.vertices.is_empty() || !doc.arrows.is_empty() || !doc.relations.is_empty();
        let forms = usize::from(explicit) + usize::from(doc.tensor.is_some()) + usize::from(doc.opposite.is_some());
        if forms != 1 {
            return Err(semantic(
                source,
                "a category is exactly one of: explicit vertices, `tensor`, or `opposite`",
            ));
        }
        let declared = match &doc.field {
            Some(s) => Some(parse_field(source, s)?),
            None => None,
        };
        let derived = if let Some(parts) = &doc.tensor {
            if parts.len() != 2 {
                return Err(semantic(source, "`tensor` needs exactly two categories"));
            }
            let a = self.category(&source.resolve(&parts[0]))?;
            let b = self.category(&source.resolve(&parts[1]))?;
            Some(a.tensor(&b).map_err(|e| semantic(source, e))?)
        } else if let Some(other) = &doc.opposite {
            Some(self.category(&source.resolve(other))?.opposite())
        } else {
            None
        };
        if let Some(cat) = derived {
            if self.field.is_none() {
                if let Some(f) = declared.filter(|f| *f != cat.field()) {
                    return Err(semantic(source, format!("declared field {f} but the parts are over {}", cat.field())));
                }
            }
            return Ok(cat);
        }
        let field = self.field.or(declared).unwrap_or(Field::Rational);
        let vertices: Vec<&str> = doc.vertices.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, &str, &str)> = doc
            .arrows
            .iter()
            .map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str()))
            .collect();
        let quiver = Quiver::from_names(&vertices, &arrows).map_err(|e| semantic(source, e))?;
        let relations = doc
            .relations
            .iter()
            .map(|r| parse_relation(&quiver, field, r).map_err(|e| semantic(source, e)))
            .collect::<Result<Vec<_>, _>>()?;
        let cutoff = doc.length_cutoff.unwrap_or(vertices.len() + 1);
        build_category(quiver, relations, field, cutoff).map_err(|e| semantic(source, e))
    }

    /// Loads a representation together with its setting.
    pub fn representation(&mut self, source: &Source) -> Result<Representation, InputError> {
        let text = self.read(source, "representation")?;
        let doc = parse_representation(&source.to_string(), &text)?;
        self.build_representation(source, &doc)
    }

    pub fn build_representation(&mut self, source: &Source, doc: &RepresentationDoc) -> Result<Representation, InputError> {
        let cat = self.category(&source.resolve(&doc.category))?;
        let setting = match &doc.base {
            Some(b) => {
                let base = self.category(&source.resolve(b))?;
                Setting::with_base(cat, base).map_err(|e| semantic(source, e))?
            }
            None => Setting::plain(cat),
        };
        let total = setting.total.clone();
        let field = total.field();
        let mut dims = vec![0; total.num_objects()];
        for (name, &d) in &doc.dims {
            let x = total
                .object_index(name)
                .map_err(|e| semantic(source, format!("dims: {e}")))?;
            dims[x] = d;
        }
        let mut matrices: Vec<Matrix> = (0..total.num_arrows())
            .map(|a| {
                let arrow = total.arrow(a);
                Matrix::zeros(field, dims[arrow.target], dims[arrow.source])
            })
            .collect();
        for (name, rows) in &doc.arrows {
            let a = total
                .quiver()
                .arrow_index(name)
                .ok_or_else(|| semantic(source, format!("arrows: unknown arrow `{name}`")))?;
            let (r, c) = matrices[a].shape();
            let bad_shape = rows.len() != r || rows.iter().any(|row| row.len() != c);
            // An empty list stands for a zero matrix with an empty side.
            if bad_shape && !(rows.is_empty() && r * c == 0) {
                let found_cols = rows.first().map_or(0, Vec::len);
                return Err(semantic(
                    source,
                    format!(
                        "matrix of arrow `{name}` must be {r}x{c} (target dim x source dim), found {}x{found_cols}",
                        rows.len()
                    ),
                ));
            }
            for (i, row) in rows.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let s = parse_entry(field, e)
                        .map_err(|err| semantic(source, format!("arrow `{name}` entry ({i}, {j}): {err}")))?;
                    matrices[a].set(i, j, &s);
                }
            }
        }
        let module = Module::new(total, dims, matrices).map_err(|e| semantic(source, e))?;
        Representation::new(setting, module).map_err(|e| semantic(source, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_syntax() {
        let t = relation_terms("b*a - g*m").unwrap();
        assert_eq!(t.len(), 2);
        assert!(!t[0].0 && t[1].0);
        let t = relation_terms("-2 x*y + 1/2 z").unwrap();
        assert_eq!(t[0], (false, Some("-2".into()), "x*y".into()));
        assert_eq!(t[1], (false, Some("1/2".into()), "z".into()));
        let t = relation_terms("-3/4 x").unwrap();
        assert_eq!(t[0], (false, Some("-3/4".into()), "x".into()));
        assert!(relation_terms("x + + y").is_err());
        assert!(relation_terms("").is_err());
        assert!(relation_terms("1 2 x").is_err());
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = parse_category("f.toml", "[category]\nvertices = [\"1\"\n").unwrap_err();
        match err {
            InputError::Parse { line, .. } => assert!(line >= 2),
            other => panic!("{other:?}"),
        }
        let err = parse_category("f.toml", "[category]\nvertices = [\"1\"]\ncolour = 3\n").unwrap_err();
        match err {
            InputError::Parse { line, column, .. } => assert_eq!((line, column), (3, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn line_columns() {
        assert_eq!(line_column("ab\ncd", 0), (1, 1));
        assert_eq!(line_column("ab\ncd", 4), (2, 2));
    }
}
