//! Finite k-linear categories presented by a quiver with relations.
//!
//! Paths are stored in traversal order (first arrow first). Labels and file
//! syntax use composition order, so the path "a then b" prints as `b*a`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path; `arrows` in traversal order, empty for the identity at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn identity(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_identity(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Path) -> Path {
        debug_assert_eq!(self.target, next.source);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path {
            source: self.source,
            target: next.target,
            arrows,
        }
    }
}

/// Length first, then lexicographic on the traversal sequence.
fn deglex(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A linear combination of parallel paths that is set to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("relation {0} has no terms")]
    EmptyRelation(usize),
    #[error("relation {0} contains an empty path")]
    EmptyPath(usize),
    #[error("path `{0}` is not composable")]
    NotComposable(String),
    #[error("relation terms not parallel in relation {0}")]
    NotParallel(usize),
    #[error("coefficient over {found} in a category over {expected}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("length cutoff must be at least 1")]
    CutoffTooSmall,
    #[error("possibly infinite-dimensional: Hom({from}, {to}) still growing at length cutoff {cutoff}")]
    PossiblyInfinite {
        from: String,
        to: String,
        cutoff: usize,
    },
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver, CategoryError> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(CategoryError::DuplicateVertex(v.clone()));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(CategoryError::DuplicateArrow(a.name.clone()));
            }
            for end in [a.source, a.target] {
                if end >= vertices.len() {
                    return Err(CategoryError::UnknownVertex {
                        arrow: a.name.clone(),
                        vertex: format!("#{end}"),
                    });
                }
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor from names; arrows are `(name, source, target)`.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver, CategoryError> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            let find = |v: &str| {
                vs.iter()
                    .position(|x| x == v)
                    .ok_or_else(|| CategoryError::UnknownVertex {
                        arrow: name.to_string(),
                        vertex: v.to_string(),
                    })
            };
            out.push(Arrow {
                name: name.to_string(),
                source: find(s)?,
                target: find(t)?,
            });
        }
        Quiver::new(vs, out)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Parses a composition-order word such as `b*a` into a traversal-order path.
    pub fn parse_path(&self, word: &str) -> Result<Path, CategoryError> {
        let mut arrows = Vec::new();
        for part in word.split('*').rev() {
            let name = part.trim();
            let a = self
                .arrow_index(name)
                .ok_or_else(|| CategoryError::UnknownArrow(name.to_string()))?;
            arrows.push(a);
        }
        self.path_from_arrows(&arrows)
            .ok_or_else(|| CategoryError::NotComposable(word.to_string()))
    }

    /// Validates composability of a nonempty traversal-order arrow list.
    pub fn path_from_arrows(&self, arrows: &[usize]) -> Option<Path> {
        let first = *arrows.first()?;
        let mut at = self.arrows.get(first)?.source;
        for &a in arrows {
            let arrow = self.arrows.get(a)?;
            if arrow.source != at {
                return None;
            }
            at = arrow.target;
        }
        Some(Path {
            source: self.arrows[first].source,
            target: at,
            arrows: arrows.to_vec(),
        })
    }

    /// Composition-order label; identities print as `e_v`.
    pub fn label(&self, p: &Path) -> String {
        if p.is_identity() {
            return format!("e_{}", self.vertices[p.source]);
        }
        let names: Vec<&str> = p
            .arrows
            .iter()
            .rev()
            .map(|&a| self.arrows[a].name.as_str())
            .collect();
        names.join("*")
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: opposite_name(&a.name),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }
}

fn opposite_name(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{name}^op"),
    }
}

/// A finite Hom-finite k-linear category with explicit structure constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Category {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    length_cutoff: usize,
    /// `bases[x*n + y]` lists the basis paths of Hom(x, y), ascending in deglex order.
    bases: Vec<Vec<Path>>,
    /// `comp[(x*n + y)*n + z]` has shape `dim(x,z) x (dim(y,z)*dim(x,y))`; column
    /// `j*dim(x,y) + i` expresses `g_j o f_i`.
    comp: Vec<Matrix>,
    identity: Vec<usize>,
    arrow_elements: Vec<Matrix>,
}

struct PathIndex {
    by_pair: Vec<Vec<Path>>,
}

impl PathIndex {
    fn new(quiver: &Quiver, max_len: usize) -> PathIndex {
        let n = quiver.vertices.len();
        let mut by_pair: Vec<Vec<Path>> = vec![Vec::new(); n * n];
        let mut frontier: Vec<Path> = (0..n).map(Path::identity).collect();
        for p in &frontier {
            by_pair[p.source * n + p.target].push(p.clone());
        }
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            for p in &next {
                by_pair[p.source * n + p.target].push(p.clone());
            }
            frontier = next;
        }
        for v in &mut by_pair {
            v.sort_by(|a, b| deglex(&a.arrows, &b.arrows));
        }
        PathIndex { by_pair }
    }
}

/// Reduction data for one Hom space at a fixed truncation level.
struct PairReduction {
    /// All paths of length <= N, descending deglex (column order).
    columns: Vec<Path>,
    rref_rows: Matrix,
    pivots: Vec<usize>,
}

fn validate_relations(
    quiver: &Quiver,
    relations: &[Relation],
    field: Field,
) -> Result<Vec<(usize, usize, usize)>, CategoryError> {
    let mut out = Vec::new();
    for (ri, r) in relations.iter().enumerate() {
        if r.terms.is_empty() {
            return Err(CategoryError::EmptyRelation(ri));
        }
        let mut ends = None;
        let mut min_len = usize::MAX;
        for (c, p) in &r.terms {
            if c.field() != field {
                return Err(CategoryError::FieldMismatch {
                    expected: field,
                    found: c.field(),
                });
            }
            if p.is_empty() {
                return Err(CategoryError::EmptyPath(ri));
            }
            let path = quiver.path_from_arrows(p).ok_or_else(|| {
                CategoryError::NotComposable(
                    p.iter()
                        .rev()
                        .map(|&a| {
                            quiver
                                .arrows
                                .get(a)
                                .map(|x| x.name.clone())
                                .unwrap_or_else(|| format!("#{a}"))
                        })
                        .collect::<Vec<_>>()
                        .join("*"),
                )
            })?;
            match ends {
                None => ends = Some((path.source, path.target)),
                Some(e) if e != (path.source, path.target) => {
                    return Err(CategoryError::NotParallel(ri))
                }
                _ => {}
            }
            min_len = min_len.min(p.len());
        }
        let (s, t) = ends.unwrap_or((0, 0));
        out.push((s, t, min_len));
    }
    Ok(out)
}

/// Builds kQ/I, assuming the relation ideal contains every sufficiently long path.
///
/// At truncation level N the algebra kQ/(I + paths of length > N) is computed by
/// row reduction of the truncated ideal generators `w*r*u`. The construction stops at
/// the first N for which every path of length N reduces to shorter paths; then
/// paths of length N vanish and the level-N normal forms describe kQ/I.
/// Levels up to `length_cutoff + 1` are examined.
pub fn build_category(
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
    length_cutoff: usize,
) -> Result<Category, CategoryError> {
    if length_cutoff < 1 {
        return Err(CategoryError::CutoffTooSmall);
    }
    let rel_info = validate_relations(&quiver, &relations, field)?;
    let n = quiver.vertices.len();
    let max_level = length_cutoff + 1;
    let index = PathIndex::new(&quiver, max_level);
    for level in 1..=max_level {
        let reductions = reduce_level(&quiver, &relations, &rel_info, &index, field, level);
        let mut witness = None;
        'pairs: for (pair, red) in reductions.iter().enumerate() {
            let mut is_pivot = vec![false; red.columns.len()];
            for &p in &red.pivots {
                is_pivot[p] = true;
            }
            for (c, path) in red.columns.iter().enumerate() {
                if path.len() == level && !is_pivot[c] {
                    witness = Some(pair);
                    break 'pairs;
                }
            }
        }
        match witness {
            None => return Ok(assemble(quiver, relations, field, length_cutoff, level, reductions)),
            Some(pair) if level == max_level => {
                return Err(CategoryError::PossiblyInfinite {
                    from: quiver.vertices[pair / n].clone(),
                    to: quiver.vertices[pair % n].clone(),
                    cutoff: length_cutoff,
                })
            }
            Some(_) => {}
        }
    }
    unreachable!("loop returns at the last level")
}

fn reduce_level(
    quiver: &Quiver,
    relations: &[Relation],
    rel_info: &[(usize, usize, usize)],
    index: &PathIndex,
    field: Field,
    level: usize,
) -> Vec<PairReduction> {
    let n = quiver.vertices.len();
    let mut columns: Vec<Vec<Path>> = Vec::with_capacity(n * n);
    let mut col_of: Vec<BTreeMap<Vec<usize>, usize>> = Vec::with_capacity(n * n);
    for pair in 0..n * n {
        let mut cols: Vec<Path> = index.by_pair[pair]
            .iter()
            .filter(|p| p.len() <= level)
            .cloned()
            .collect();
        cols.reverse();
        col_of.push(
            cols.iter()
                .enumerate()
                .map(|(i, p)| (p.arrows.clone(), i))
                .collect(),
        );
        columns.push(cols);
    }
    let mut gens: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); n * n];
    for (r, &(x, y, min_len)) in relations.iter().zip(rel_info) {
        if min_len > level {
            continue;
        }
        let budget = level - min_len;
        for u_pair in (0..n).map(|a| a * n + x) {
            for u in index.by_pair[u_pair].iter().filter(|p| p.len() <= budget) {
                for w_pair in (0..n).map(|b| y * n + b) {
                    for w in index.by_pair[w_pair]
                        .iter()
                        .filter(|p| u.len() + p.len() <= budget)
                    {
                        let pair = u.source * n + w.target;
                        let mut row = vec![Scalar::zero(field); columns[pair].len()];
                        let mut nonzero = false;
                        for (c, p) in &r.terms {
                            if u.len() + p.len() + w.len() > level {
                                continue;
                            }
                            let mut arrows = u.arrows.clone();
                            arrows.extend_from_slice(p);
                            arrows.extend_from_slice(&w.arrows);
                            let col = col_of[pair][&arrows];
                            row[col] = row[col].add(c);
                            nonzero = true;
                        }
                        if nonzero {
                            gens[pair].push(row);
                        }
                    }
                }
            }
        }
    }
    columns
        .into_iter()
        .zip(gens)
        .map(|(cols, rows)| {
            let flat: Vec<Scalar> = rows.iter().flatten().cloned().collect();
            let m = Matrix::from_scalars(field, rows.len(), cols.len(), &flat)
                .expect("generator rows have column length");
            let rref = m.rref();
            PairReduction {
                columns: cols,
                rref_rows: rref.reduced,
                pivots: rref.pivots,
            }
        })
        .collect()
}

fn assemble(
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Field,
    length_cutoff: usize,
    level: usize,
    reductions: Vec<PairReduction>,
) -> Category {
    let n = quiver.vertices.len();
    let mut bases: Vec<Vec<Path>> = Vec::with_capacity(n * n);
    // For each pair: map path -> normal form over the basis.
    let mut normal: Vec<BTreeMap<Vec<usize>, Vec<Scalar>>> = Vec::with_capacity(n * n);
    for red in &reductions {
        let mut is_pivot = vec![false; red.columns.len()];
        for &p in &red.pivots {
            is_pivot[p] = true;
        }
        // Columns are descending; the basis is listed ascending.
        let std_cols: Vec<usize> = (0..red.columns.len()).rev().filter(|&c| !is_pivot[c]).collect();
        let basis: Vec<Path> = std_cols.iter().map(|&c| red.columns[c].clone()).collect();
        let mut nf = BTreeMap::new();
        for (k, &c) in std_cols.iter().enumerate() {
            let mut v = vec![Scalar::zero(field); basis.len()];
            v[k] = Scalar::one(field);
            nf.insert(red.columns[c].arrows.clone(), v);
        }
        for (r, &pc) in red.pivots.iter().enumerate() {
            let v: Vec<Scalar> = std_cols
                .iter()
                .map(|&c| red.rref_rows.get(r, c).neg())
                .collect();
            nf.insert(red.columns[pc].arrows.clone(), v);
        }
        bases.push(basis);
        normal.push(nf);
    }
    let reduce = |pair: usize, arrows: &[usize]| -> Vec<Scalar> {
        if arrows.len() >= level {
            return vec![Scalar::zero(field); bases[pair].len()];
        }
        normal[pair][arrows].clone()
    };
    let mut comp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (bxy, byz, bxz) = (&bases[x * n + y], &bases[y * n + z], &bases[x * n + z]);
                let mut m = Matrix::zeros(field, bxz.len(), byz.len() * bxy.len());
                for (j, g) in byz.iter().enumerate() {
                    for (i, f) in bxy.iter().enumerate() {
                        let v = reduce(x * n + z, &f.then(g).arrows);
                        for (r, s) in v.iter().enumerate() {
                            if !s.is_zero() {
                                m.set(r, j * bxy.len() + i, s);
                            }
                        }
                    }
                }
                comp.push(m);
            }
        }
    }
    let identity: Vec<usize> = (0..n)
        .map(|x| {
            bases[x * n + x]
                .iter()
                .position(|p| p.is_identity())
                .expect("identity paths are never reduced")
        })
        .collect();
    let arrow_elements = quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let v = reduce(a.source * n + a.target, &[ai]);
            Matrix::column(field, &v).expect("column")
        })
        .collect();
    Category {
        field,
        quiver,
        relations,
        length_cutoff,
        bases,
        comp,
        identity,
        arrow_elements,
    }
}

impl Category {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn length_cutoff(&self) -> usize {
        self.length_cutoff
    }

    pub fn num_objects(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.quiver.vertices[x]
    }

    pub fn object_index(&self, name: &str) -> Result<usize, CategoryError> {
        self.quiver
            .vertex_index(name)
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.quiver.arrows[a]
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.bases[x * self.num_objects() + y].len()
    }

    pub fn hom_basis(&self, x: usize, y: usize) -> &[Path] {
        &self.bases[x * self.num_objects() + y]
    }

    pub fn basis_label(&self, x: usize, y: usize, i: usize) -> String {
        self.quiver.label(&self.hom_basis(x, y)[i])
    }

    pub fn total_dimension(&self) -> usize {
        self.bases.iter().map(Vec::len).sum()
    }

    pub fn identity_index(&self, x: usize) -> usize {
        self.identity[x]
    }

    /// The composition table for Hom(y,z) x Hom(x,y) -> Hom(x,z).
    pub fn comp_table(&self, x: usize, y: usize, z: usize) -> &Matrix {
        let n = self.num_objects();
        &self.comp[(x * n + y) * n + z]
    }

    /// Element of Hom(s(a), t(a)) given by the arrow, as a column.
    pub fn arrow_element(&self, a: usize) -> &Matrix {
        &self.arrow_elements[a]
    }

    /// `g o f` for columns `f` in Hom(x,y) and `g` in Hom(y,z).
    pub fn compose(&self, x: usize, y: usize, z: usize, f: &Matrix, g: &Matrix) -> Matrix {
        let fg = g.kronecker_product(f).expect("same field");
        self.comp_table(x, y, z).mul(&fg).expect("shapes agree")
    }

    /// Matrix of `f -> u o f` from Hom(x,y) to Hom(x,z), for `u` in Hom(y,z).
    pub fn left_mult(&self, x: usize, y: usize, z: usize, u: &Matrix) -> Matrix {
        let id = Matrix::identity(self.field, self.hom_dim(x, y));
        self.comp_table(x, y, z)
            .mul(&u.kronecker_product(&id).expect("same field"))
            .expect("shapes agree")
    }

    /// Matrix of `g -> g o u` from Hom(y,z) to Hom(x,z), for `u` in Hom(x,y).
    pub fn right_mult(&self, x: usize, y: usize, z: usize, u: &Matrix) -> Matrix {
        let id = Matrix::identity(self.field, self.hom_dim(y, z));
        self.comp_table(x, y, z)
            .mul(&id.kronecker_product(u).expect("same field"))
            .expect("shapes agree")
    }

    /// The element of the category represented by a path, computed by composing arrows.
    pub fn path_element(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::unit_column(
            self.field,
            self.hom_dim(p.source, p.source),
            self.identity[p.source],
        );
        let mut at = p.source;
        for &a in &p.arrows {
            let arrow = &self.quiver.arrows[a];
            acc = self.compose(p.source, at, arrow.target, &acc, &self.arrow_elements[a]);
            at = arrow.target;
        }
        acc
    }

    /// Value of a relation in the category (zero for a valid presentation).
    pub fn relation_value(&self, r: &Relation) -> Matrix {
        let first = self
            .quiver
            .path_from_arrows(&r.terms[0].1)
            .expect("validated relation");
        let mut acc = Matrix::zeros(self.field, self.hom_dim(first.source, first.target), 1);
        for (c, arrows) in &r.terms {
            let p = self.quiver.path_from_arrows(arrows).expect("validated relation");
            acc = acc.add(&self.path_element(&p).scale(c)).expect("same shape");
        }
        acc
    }

    /// Whether the presentation has no relations (a path category).
    pub fn is_path_category(&self) -> bool {
        self.relations.is_empty()
    }

    /// The opposite category, with the same basis read backwards.
    pub fn opposite(&self) -> Category {
        let n = self.num_objects();
        let quiver = self.quiver.opposite();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| (c.clone(), p.iter().rev().copied().collect()))
                    .collect(),
            })
            .collect();
        let mut bases = vec![Vec::new(); n * n];
        for x in 0..n {
            for y in 0..n {
                bases[y * n + x] = self.bases[x * n + y]
                    .iter()
                    .map(|p| Path {
                        source: y,
                        target: x,
                        arrows: p.arrows.iter().rev().copied().collect(),
                    })
                    .collect();
            }
        }
        let mut comp = vec![Matrix::zeros(self.field, 0, 0); n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = self.comp_table(x, y, z);
                    let (dxy, dyz) = (self.hom_dim(x, y), self.hom_dim(y, z));
                    // Opposite triple (z, y, x): first factor in Hom(y,z), second in Hom(x,y).
                    let perm: Vec<usize> = (0..dxy * dyz)
                        .map(|c| {
                            let (jo, io) = (c / dyz, c % dyz);
                            io * dxy + jo
                        })
                        .collect();
                    comp[(z * n + y) * n + x] = t.select_cols(&perm);
                }
            }
        }
        Category {
            field: self.field,
            quiver,
            relations,
            length_cutoff: self.length_cutoff,
            bases,
            comp,
            identity: self.identity.clone(),
            arrow_elements: self.arrow_elements.clone(),
        }
    }

    /// The tensor product category; object `(c, d)` has index `c * n2 + d`.
    ///
    /// Arrows `(a, d)` come first (index `a * n2 + d`), then `(c, b)`.
    pub fn tensor(&self, other: &Category) -> Result<Category, CategoryError> {
        if self.field != other.field {
            return Err(CategoryError::FieldMismatch {
                expected: self.field,
                found: other.field,
            });
        }
        let field = self.field;
        let (n1, n2) = (self.num_objects(), other.num_objects());
        let (a1, a2) = (self.num_arrows(), other.num_arrows());
        let obj = |c: usize, d: usize| c * n2 + d;
        let left_arrow = |a: usize, d: usize| a * n2 + d;
        let right_arrow = |c: usize, b: usize| a1 * n2 + c * a2 + b;
        let mut vertices = Vec::with_capacity(n1 * n2);
        for c in 0..n1 {
            for d in 0..n2 {
                vertices.push(format!("{}⊗{}", self.object_name(c), other.object_name(d)));
            }
        }
        let mut arrows = Vec::with_capacity(a1 * n2 + n1 * a2);
        for a in &self.quiver.arrows {
            for d in 0..n2 {
                arrows.push(Arrow {
                    name: format!("{}⊗{}", a.name, other.object_name(d)),
                    source: obj(a.source, d),
                    target: obj(a.target, d),
                });
            }
        }
        for c in 0..n1 {
            for b in &other.quiver.arrows {
                arrows.push(Arrow {
                    name: format!("{}⊗{}", self.object_name(c), b.name),
                    source: obj(c, b.source),
                    target: obj(c, b.target),
                });
            }
        }
        let quiver = Quiver { vertices, arrows };
        let mut relations = Vec::new();
        for r in &self.relations {
            for d in 0..n2 {
                relations.push(Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, p)| (c.clone(), p.iter().map(|&a| left_arrow(a, d)).collect()))
                        .collect(),
                });
            }
        }
        for c in 0..n1 {
            for r in &other.relations {
                relations.push(Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(s, p)| (s.clone(), p.iter().map(|&b| right_arrow(c, b)).collect()))
                        .collect(),
                });
            }
        }
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            for (bi, b) in other.quiver.arrows.iter().enumerate() {
                relations.push(Relation {
                    terms: vec![
                        (
                            Scalar::one(field),
                            vec![left_arrow(ai, b.source), right_arrow(a.target, bi)],
                        ),
                        (
                            Scalar::from_i64(field, -1),
                            vec![right_arrow(a.source, bi), left_arrow(ai, b.target)],
                        ),
                    ],
                });
            }
        }
        let n = n1 * n2;
        let mut bases = vec![Vec::new(); n * n];
        for c in 0..n1 {
            for d in 0..n2 {
                for c2 in 0..n1 {
                    for d2 in 0..n2 {
                        let mut list = Vec::new();
                        for g in other.hom_basis(d, d2) {
                            for f in self.hom_basis(c, c2) {
                                let mut arrows: Vec<usize> =
                                    f.arrows.iter().map(|&a| left_arrow(a, d)).collect();
                                arrows.extend(g.arrows.iter().map(|&b| right_arrow(c2, b)));
                                list.push(Path {
                                    source: obj(c, d),
                                    target: obj(c2, d2),
                                    arrows,
                                });
                            }
                        }
                        bases[obj(c, d) * n + obj(c2, d2)] = list;
                    }
                }
            }
        }
        // Basis of Hom((c,d),(c',d')) is g (x) f with index g_idx * dim1 + f_idx.
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (xc, xd, yc, yd, zc, zd) = (x / n2, x % n2, y / n2, y % n2, z / n2, z % n2);
                    let t1 = self.comp_table(xc, yc, zc);
                    let t2 = other.comp_table(xd, yd, zd);
                    let (f_xy, f_yz) = (self.hom_dim(xc, yc), self.hom_dim(yc, zc));
                    let (g_xy, g_yz) = (other.hom_dim(xd, yd), other.hom_dim(yd, zd));
                    let (f_xz, g_xz) = (self.hom_dim(xc, zc), other.hom_dim(xd, zd));
                    let dxy = f_xy * g_xy;
                    let dyz = f_yz * g_yz;
                    let mut m = Matrix::zeros(field, f_xz * g_xz, dyz * dxy);
                    for j2 in 0..g_yz {
                        for j1 in 0..f_yz {
                            for i2 in 0..g_xy {
                                for i1 in 0..f_xy {
                                    let col1 = j1 * f_xy + i1;
                                    let col2 = j2 * g_xy + i2;
                                    let j = j2 * f_yz + j1;
                                    let i = i2 * f_xy + i1;
                                    for r2 in 0..g_xz {
                                        let b = t2.get(r2, col2);
                                        if b.is_zero() {
                                            continue;
                                        }
                                        for r1 in 0..f_xz {
                                            let a = t1.get(r1, col1);
                                            if !a.is_zero() {
                                                m.set(r2 * f_xz + r1, j * dxy + i, &a.mul(&b));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    comp.push(m);
                }
            }
        }
        let identity: Vec<usize> = (0..n)
            .map(|x| {
                let (c, d) = (x / n2, x % n2);
                other.identity[d] * self.hom_dim(c, c) + self.identity[c]
            })
            .collect();
        let mut arrow_elements = Vec::with_capacity(a1 * n2 + n1 * a2);
        for (ai, a) in self.quiver.arrows.iter().enumerate() {
            for d in 0..n2 {
                let e = Matrix::unit_column(field, other.hom_dim(d, d), other.identity[d]);
                arrow_elements.push(e.kronecker_product(&self.arrow_elements[ai]).expect("field"));
                let _ = a;
            }
        }
        for c in 0..n1 {
            for bi in 0..a2 {
                let e = Matrix::unit_column(field, self.hom_dim(c, c), self.identity[c]);
                arrow_elements.push(self_kron(&other.arrow_elements[bi], &e));
            }
        }
        Ok(Category {
            field,
            quiver,
            relations,
            length_cutoff: self.length_cutoff + other.length_cutoff,
            bases,
            comp,
            identity,
            arrow_elements,
        })
    }
}

fn self_kron(g: &Matrix, f: &Matrix) -> Matrix {
    g.kronecker_product(f).expect("field")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Category {
        let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2")]).unwrap();
        build_category(q, vec![], Field::Rational, 4).unwrap()
    }

    #[test]
    fn a2_dims() {
        let c = a2();
        assert_eq!(c.hom_dim(0, 0), 1);
        assert_eq!(c.hom_dim(1, 1), 1);
        assert_eq!(c.hom_dim(0, 1), 1);
        assert_eq!(c.hom_dim(1, 0), 0);
        assert_eq!(c.basis_label(0, 1, 0), "a");
        assert_eq!(c.basis_label(0, 0, 0), "e_1");
    }

    #[test]
    fn cutoff_one_suffices_for_a2() {
        let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2")]).unwrap();
        assert!(build_category(q, vec![], Field::Rational, 1).is_ok());
    }

    #[test]
    fn free_loop_is_rejected() {
        let q = Quiver::from_names(&["1"], &[("x", "1", "1")]).unwrap();
        let err = build_category(q, vec![], Field::Rational, 5).unwrap_err();
        assert!(matches!(err, CategoryError::PossiblyInfinite { .. }));
    }

    #[test]
    fn non_parallel_relation() {
        let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "2", "2")]).unwrap();
        let f = Field::Rational;
        let r = Relation {
            terms: vec![(Scalar::one(f), vec![0]), (Scalar::one(f), vec![1])],
        };
        assert_eq!(
            build_category(q, vec![r], f, 4).unwrap_err(),
            CategoryError::NotParallel(0)
        );
    }

    #[test]
    fn path_parsing_order() {
        let q = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let p = q.parse_path("b*a").unwrap();
        assert_eq!(p.arrows, vec![0, 1]);
        assert_eq!(q.label(&p), "b*a");
        assert!(q.parse_path("a*b").is_err());
    }

    #[test]
    fn opposite_involution() {
        let c = a2();
        let o = c.opposite();
        assert_eq!(o.hom_dim(1, 0), 1);
        assert_eq!(o.arrow(0).name, "a^op");
        assert_eq!(o.opposite(), c);
    }
}
