//! Membership tests with certificates: Gorenstein P-projectivity, monic
//! representations, Gorenstein projectivity in the base and in the functor category,
//! the lifted classes, GP-resolution dimension and the discrepancy probe.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::Category;
use crate::derived::ext;
use crate::error::{Error, Result};
use crate::functor::hom_over_c;
use crate::linalg::{LinalgError, Matrix};
use crate::module::{same_category, Module, ModuleMap};
use crate::nakayama::{AdjointTriple, GorensteinDimension};
use crate::representation::{Representation, Setting};
use crate::resolution::{projective_resolution, Dimension, FreeModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Yes,
    No,
    Inconclusive,
}

impl Membership {
    pub fn as_str(self) -> &'static str {
        match self {
            Membership::Yes => "yes",
            Membership::No => "no",
            Membership::Inconclusive => "inconclusive",
        }
    }

    fn and(self, other: Membership) -> Membership {
        match (self, other) {
            (Membership::No, _) | (_, Membership::No) => Membership::No,
            (Membership::Inconclusive, _) | (_, Membership::Inconclusive) => Membership::Inconclusive,
            _ => Membership::Yes,
        }
    }
}

/// One row of a vanishing table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    /// For example `L_1 nu(F)` or `Ext^2(B, base)`.
    pub quantity: String,
    pub degree: usize,
    /// Dimension per object (total objects for representations with a base).
    pub dims: Vec<usize>,
}

impl TableEntry {
    pub fn vanishes(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// A vector certifying a failure, located at object `object` (total index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub object: usize,
    pub label: String,
    pub vector: Matrix,
    pub note: String,
}

/// Where the unit failed to be an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoFailure {
    pub object: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

/// Exactness record for a window of a complex of projectives around a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowRecord {
    /// Ranks of the free terms from the leftmost resolution term to the rightmost.
    pub ranks: Vec<usize>,
    /// Position of the module between terms `position - 1` and `position`.
    pub position: usize,
    pub exact: bool,
    pub hom_exact: bool,
}

/// Facts a verdict relied on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    /// `P` is Iwanaga-Gorenstein of this dimension (computed within the cutoff).
    IwanagaGorenstein(usize),
    /// The Gorenstein dimension of `P` is not finite within the cutoff.
    NotIwanagaGorenstein(String),
    /// A degree bound and where it came from.
    DegreeBound { part: String, source: String, value: usize },
    /// Degrees were scanned up to the cutoff without a bound.
    Unbounded { part: String, cutoff: usize },
    /// Self-injective dimension of the base, and whether it was declared.
    BaseSelfInjective { dimension: usize, declared: bool },
    /// The base is not known to be Iwanaga-Gorenstein.
    BaseProfileUnknown,
    /// Only membership in GP(GProj_P) is asserted.
    LiftedClassOnly,
    /// GP in the functor category follows from the lifted class.
    SufficiencyLicensed(String),
    Cutoff(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub member: Membership,
    pub route: String,
    pub table: Vec<TableEntry>,
    pub witness: Option<Witness>,
    pub iso_failure: Option<IsoFailure>,
    pub window: Option<WindowRecord>,
    pub hypotheses: Vec<Hypothesis>,
    /// The cutoff that blocked a definite answer.
    pub blocking_cutoff: Option<usize>,
    /// Named sub-verdicts of a composite check.
    pub parts: Vec<(String, Verdict)>,
}

impl Verdict {
    fn new(route: &str) -> Verdict {
        Verdict {
            member: Membership::Yes,
            route: String::from(route),
            table: Vec::new(),
            witness: None,
            iso_failure: None,
            window: None,
            hypotheses: Vec::new(),
            blocking_cutoff: None,
            parts: Vec::new(),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.member == Membership::Yes
    }

    pub fn is_no(&self) -> bool {
        self.member == Membership::No
    }

    fn absorb(&mut self, name: String, part: Verdict) {
        self.member = self.member.and(part.member);
        if self.blocking_cutoff.is_none() {
            self.blocking_cutoff = part.blocking_cutoff;
        }
        self.parts.push((name, part));
    }
}

/// Which criterion `is_gproj_p` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// The Iwanaga-Gorenstein shortcut when available, otherwise the full criterion.
    Auto,
    /// `L_i nu(F) = 0` for `1 <= i <= g`; requires a finite Gorenstein dimension.
    Shortcut,
    /// Vanishing of `L_i nu(F)`, of `R^i nu^-(nu F)`, and `lambda_F` an isomorphism.
    Full,
}

enum Scan {
    Clean,
    Nonzero,
    Blocked(usize),
}

/// Records `quantity` in degrees `degrees`; stops at the first nonzero entry.
fn scan(
    verdict: &mut Verdict,
    quantity: &str,
    degrees: core::ops::RangeInclusive<usize>,
    mut dims: impl FnMut(usize) -> Result<Vec<usize>>,
) -> Result<Scan> {
    for i in degrees {
        match dims(i) {
            Ok(d) => {
                let entry = TableEntry {
                    quantity: format!("{quantity}_{i}"),
                    degree: i,
                    dims: d,
                };
                let zero = entry.vanishes();
                verdict.table.push(entry);
                if !zero {
                    return Ok(Scan::Nonzero);
                }
            }
            Err(Error::Inconclusive { cutoff, .. }) => return Ok(Scan::Blocked(cutoff)),
            Err(e) => return Err(e),
        }
    }
    Ok(Scan::Clean)
}

fn max_dimension(dims: impl Iterator<Item = Dimension>) -> Dimension {
    let mut best = Dimension::Finite(0);
    for d in dims {
        best = match (best, d) {
            (Dimension::Finite(a), Dimension::Finite(b)) => Dimension::Finite(a.max(b)),
            (Dimension::AtLeast(a), Dimension::AtLeast(b)) => Dimension::AtLeast(a.max(b)),
            (Dimension::AtLeast(a), _) | (_, Dimension::AtLeast(a)) => Dimension::AtLeast(a),
        };
    }
    best
}

/// Chooses the degrees to test: a finite own dimension, else a finite coefficient
/// dimension, else everything the cutoff allows.
fn degree_bound(
    verdict: &mut Verdict,
    part: &str,
    own: Dimension,
    own_name: &str,
    coeff: Dimension,
    coeff_name: &str,
    cutoff: usize,
) -> (usize, bool) {
    match (own, coeff) {
        (Dimension::Finite(p), Dimension::Finite(q)) if q < p => {
            verdict.hypotheses.push(Hypothesis::DegreeBound {
                part: part.into(),
                source: coeff_name.into(),
                value: q,
            });
            (q, false)
        }
        (Dimension::Finite(p), _) => {
            verdict.hypotheses.push(Hypothesis::DegreeBound {
                part: part.into(),
                source: own_name.into(),
                value: p,
            });
            (p, false)
        }
        (_, Dimension::Finite(q)) => {
            verdict.hypotheses.push(Hypothesis::DegreeBound {
                part: part.into(),
                source: coeff_name.into(),
                value: q,
            });
            (q, false)
        }
        _ => {
            verdict.hypotheses.push(Hypothesis::Unbounded {
                part: part.into(),
                cutoff,
            });
            (cutoff.saturating_sub(1), true)
        }
    }
}

fn settle(verdict: &mut Verdict, result: Scan) -> bool {
    match result {
        Scan::Clean => false,
        Scan::Nonzero => {
            verdict.member = Membership::No;
            true
        }
        Scan::Blocked(c) => {
            if verdict.member == Membership::Yes {
                verdict.member = Membership::Inconclusive;
            }
            verdict.blocking_cutoff = Some(c);
            false
        }
    }
}

/// Membership of `F` in GProj_P.
pub fn is_gproj_p(triple: &AdjointTriple, f: &Representation) -> Result<Verdict> {
    is_gproj_p_with(triple, f, Route::Auto)
}

pub fn is_gproj_p_with(triple: &AdjointTriple, f: &Representation, route: Route) -> Result<Verdict> {
    if !same_category(f.module().category(), &triple.setting().total) {
        return Err(Error::CategoryMismatch);
    }
    let gdim = triple.gorenstein_dimension()?;
    let cutoff = triple.cutoff();
    let use_shortcut = match (route, gdim) {
        (Route::Full, _) => false,
        (_, GorensteinDimension::Finite(_)) => true,
        (Route::Shortcut, _) => {
            return Err(Error::Invalid("the shortcut needs a finite Gorenstein dimension of P".into()))
        }
        (Route::Auto, _) => false,
    };
    if use_shortcut {
        let g = gdim.finite().expect("finite");
        let mut v = Verdict::new("shortcut");
        v.hypotheses.push(Hypothesis::IwanagaGorenstein(g));
        v.hypotheses.push(Hypothesis::Cutoff(cutoff));
        if g >= 1 {
            let r = scan(&mut v, "L nu(F)", 1..=g, |i| triple.left_derived_nu_dims(f, i))?;
            settle(&mut v, r);
        }
        return Ok(v);
    }
    let mut v = Verdict::new("full");
    v.hypotheses.push(match gdim {
        GorensteinDimension::Finite(g) => Hypothesis::IwanagaGorenstein(g),
        GorensteinDimension::AtLeast(c) => Hypothesis::NotIwanagaGorenstein(format!(">={c}")),
        GorensteinDimension::NotIwanagaGorenstein { left, right } => {
            Hypothesis::NotIwanagaGorenstein(format!("left {left}, right {right}"))
        }
    });
    v.hypotheses.push(Hypothesis::Cutoff(cutoff));
    let slices = f.slices();

    // (a) L_i nu(F) = 0 for i > 0.
    let pdim_f = max_dimension(slices.iter().map(|m| projective_resolution(m, cutoff).pdim()));
    let pdim_x = max_dimension(triple.coefficient_pdims().into_iter());
    let (top, _) = degree_bound(&mut v, "a", pdim_f, "pdim F", pdim_x, "pdim D(C(c,-))", cutoff);
    if top >= 1 {
        let r = scan(&mut v, "L nu(F)", 1..=top, |i| triple.left_derived_nu_dims(f, i))?;
        if settle(&mut v, r) {
            return Ok(v);
        }
    }

    // (b) R^i nu^-(nu F) = 0 for i > 0.
    let nu = triple.nu(f)?;
    let op = triple.setting().op.clone();
    let injdim = max_dimension(
        nu.slices()
            .iter()
            .map(|m| projective_resolution(&m.dual_over(op.clone()).expect("same shape"), cutoff).pdim()),
    );
    let pdim_i = max_dimension(triple.injective_pdims().into_iter());
    let (top, _) = degree_bound(&mut v, "b", injdim, "injdim nu(F)", pdim_i, "pdim D(C(-,c))", cutoff);
    if top >= 1 {
        let r = scan(&mut v, "R nu^-(nu F)", 1..=top, |i| {
            triple.right_derived_nu_minus_dims(&nu, i)
        })?;
        if settle(&mut v, r) {
            return Ok(v);
        }
    }

    // (c) lambda_F is an isomorphism.
    let lambda = triple.unit_lambda(f)?;
    let ranks = lambda.ranks();
    v.table.push(TableEntry {
        quantity: String::from("rank lambda_F"),
        degree: 0,
        dims: ranks.clone(),
    });
    for (x, &r) in ranks.iter().enumerate() {
        let (s, t) = (lambda.source().dim(x), lambda.target().dim(x));
        if r != s || r != t {
            v.member = Membership::No;
            v.iso_failure = Some(IsoFailure {
                object: x,
                source_dim: s,
                target_dim: t,
                rank: r,
            });
            return Ok(v);
        }
    }
    Ok(v)
}

/// Monic test for path categories: `(+)_{t(a) = i} F(s(a)) -> F(i)` injective.
pub fn is_monic(f: &Representation) -> Result<Verdict> {
    let s = f.setting();
    let cat = &s.cat;
    if !cat.is_path_category() {
        return Err(Error::NotPathCategory);
    }
    let mut v = Verdict::new("monic");
    for i in 0..cat.num_objects() {
        let incoming: Vec<usize> = (0..cat.num_arrows()).filter(|&a| cat.arrow(a).target == i).collect();
        for b in 0..s.base_objects() {
            let mut m = Matrix::zeros(f.field(), f.dim(i, b), 0);
            for &a in &incoming {
                m = m.hstack(f.module().arrow_matrix(s.c_arrow(a, b)))?;
            }
            let k = m.rank_and_kernel();
            v.table.push(TableEntry {
                quantity: format!("ker at {}", s.total.object_name(s.object(i, b))),
                degree: 0,
                dims: vec![k.dim()],
            });
            if k.dim() > 0 && v.witness.is_none() {
                v.member = Membership::No;
                let names: Vec<&str> = incoming.iter().map(|&a| cat.arrow(a).name.as_str()).collect();
                v.witness = Some(Witness {
                    object: s.object(i, b),
                    label: String::from(s.total.object_name(s.object(i, b))),
                    vector: k.basis.select_cols(&[0]),
                    note: format!("kernel vector of the sum over incoming arrows [{}]", names.join(", ")),
                });
            }
        }
    }
    Ok(v)
}

/// Self-injective dimension of a base algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGorensteinProfile {
    pub base: Arc<Category>,
    /// Finite self-injective dimension, when known.
    pub dimension: Option<usize>,
    pub left: Option<Dimension>,
    pub right: Option<Dimension>,
    pub declared: bool,
    pub cutoff: usize,
}

impl BaseGorensteinProfile {
    pub fn declared(base: Arc<Category>, dimension: usize) -> BaseGorensteinProfile {
        BaseGorensteinProfile {
            base,
            dimension: Some(dimension),
            left: None,
            right: None,
            declared: true,
            cutoff: 0,
        }
    }

    fn hypothesis(&self) -> Hypothesis {
        match self.dimension {
            Some(g) => Hypothesis::BaseSelfInjective {
                dimension: g,
                declared: self.declared,
            },
            None => Hypothesis::BaseProfileUnknown,
        }
    }
}

/// `pdim D(Lambda)` on both sides, computed within the cutoff.
pub fn self_injective_dimension(base: &Arc<Category>, cutoff: usize) -> Result<BaseGorensteinProfile> {
    let setting = Setting::plain(base.clone());
    let triple = AdjointTriple::new(&setting, cutoff)?;
    let left = max_dimension(triple.injective_pdims().into_iter());
    let right = max_dimension(triple.coefficient_pdims().into_iter());
    let dimension = match triple.gorenstein_dimension()? {
        GorensteinDimension::Finite(g) => Some(g),
        _ => None,
    };
    Ok(BaseGorensteinProfile {
        base: base.clone(),
        dimension,
        left: Some(left),
        right: Some(right),
        declared: false,
        cutoff,
    })
}

fn regular_module(base: &Arc<Category>) -> Result<Module> {
    let mut acc = Module::zero(base.clone());
    for b in 0..base.num_objects() {
        acc = acc.direct_sum(&Module::representable(base.clone(), b))?;
    }
    Ok(acc)
}

/// Gorenstein projectivity of a module over the base algebra.
pub fn base_gp(m: &Module, profile: &BaseGorensteinProfile, cutoff: usize) -> Result<Verdict> {
    if !same_category(m.category(), &profile.base) {
        return Err(Error::CategoryMismatch);
    }
    let mut v = Verdict::new("base-gp");
    v.hypotheses.push(profile.hypothesis());
    let need = profile.dimension.map_or(cutoff, |g| cutoff.max(g + 1));
    let res = projective_resolution(m, need);
    let pdim = res.pdim();
    v.table.push(TableEntry {
        quantity: String::from("pdim"),
        degree: 0,
        dims: vec![match pdim {
            Dimension::Finite(n) | Dimension::AtLeast(n) => n,
        }],
    });
    if pdim == Dimension::Finite(0) {
        v.route = String::from("projective");
        return Ok(v);
    }
    let lambda = regular_module(&profile.base)?;
    let top = match profile.dimension {
        Some(g) => g,
        None => {
            v.hypotheses.push(Hypothesis::Unbounded {
                part: "Ext(B, base)".into(),
                cutoff,
            });
            cutoff.saturating_sub(1)
        }
    };
    if top >= 1 {
        let r = scan(&mut v, "Ext(B, base)", 1..=top, |i| Ok(vec![ext(&res, &lambda, i)?.dim()]))?;
        settle(&mut v, r);
    }
    if profile.dimension.is_none() && v.member == Membership::Yes {
        v.member = Membership::Inconclusive;
        v.blocking_cutoff = Some(cutoff);
    }
    Ok(v)
}

/// GProj_P membership together with GP of every component of `nu(F)` in the base.
pub fn is_gp_functor(triple: &AdjointTriple, f: &Representation, profile: &BaseGorensteinProfile) -> Result<Verdict> {
    let cutoff = triple.cutoff();
    let mut v = Verdict::new("gp-functor");
    let gp = is_gproj_p(triple, f)?;
    let gdim = triple.gorenstein_dimension()?;
    v.absorb(String::from("gproj_p"), gp);
    if v.member != Membership::No {
        let nu = triple.nu(f)?;
        for c in 0..triple.category().num_objects() {
            let part = base_gp(&nu.component(c), profile, cutoff)?;
            let name = format!("base_gp[nu(F)({})]", triple.category().object_name(c));
            v.absorb(name, part);
            if v.member == Membership::No {
                break;
            }
        }
    }
    v.hypotheses.push(profile.hypothesis());
    let mut licensed = false;
    if let Some(g) = gdim.finite() {
        v.hypotheses.push(Hypothesis::IwanagaGorenstein(g));
        v.hypotheses
            .push(Hypothesis::SufficiencyLicensed(String::from("P is Iwanaga-Gorenstein")));
        licensed = true;
    }
    if profile.dimension.is_some() && !licensed {
        v.hypotheses.push(Hypothesis::SufficiencyLicensed(String::from(
            "base is Iwanaga-Gorenstein, hence Proj-Gorenstein",
        )));
        licensed = true;
    }
    if !licensed {
        v.hypotheses.push(Hypothesis::LiftedClassOnly);
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XClass {
    GprojP,
    PProj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FClass {
    Gp,
    Proj,
}

/// Whether the counit `i_! i^* F -> F` splits, with the section when it does.
pub fn counit_splits(triple: &AdjointTriple, f: &Representation) -> Result<Option<ModuleMap>> {
    let eps = triple.counit_epsilon(f)?;
    let pf = eps.source().clone();
    let fm = f.module();
    let homs = hom_over_c(fm, &pf)?;
    let ends = hom_over_c(fm, fm)?;
    let field = f.field();
    let mut a = Matrix::zeros(field, ends.kernel.basis.rows(), homs.dim());
    for j in 0..homs.dim() {
        let comps = homs.basis_map(fm, &pf, j);
        let theta = ModuleMap::new_unchecked(fm.clone(), pf.clone(), comps)?;
        let composite = theta.then(&eps)?;
        a.set_block(0, j, &ends.vectorize(composite.components()));
    }
    let id = ends.vectorize(ModuleMap::identity(fm).components());
    match a.solve(&id) {
        Ok(x) => {
            let v = homs.kernel.basis.mul(&x)?;
            let comps = homs.components_of(fm, &pf, &v);
            Ok(Some(ModuleMap::new_unchecked(fm.clone(), pf, comps)?))
        }
        Err(LinalgError::NoSolution) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Membership in `(i^* nu)^{-1}(F-class)` intersected with the X-class.
pub fn lifted_class_membership(
    triple: &AdjointTriple,
    f: &Representation,
    x_class: XClass,
    f_class: FClass,
    profile: &BaseGorensteinProfile,
) -> Result<Verdict> {
    let cutoff = triple.cutoff();
    let mut v = Verdict::new(match (x_class, f_class) {
        (XClass::GprojP, FClass::Gp) => "lifted gproj_p/gp",
        (XClass::GprojP, FClass::Proj) => "lifted gproj_p/proj",
        (XClass::PProj, FClass::Gp) => "lifted p_proj/gp",
        (XClass::PProj, FClass::Proj) => "lifted p_proj/proj",
    });
    let x = match x_class {
        XClass::GprojP => is_gproj_p(triple, f)?,
        XClass::PProj => {
            let mut xv = Verdict::new("counit-split");
            if counit_splits(triple, f)?.is_none() {
                xv.member = Membership::No;
            }
            xv
        }
    };
    v.absorb(String::from("x-class"), x);
    if v.member == Membership::No {
        return Ok(v);
    }
    let nu = triple.nu(f)?;
    for c in 0..triple.category().num_objects() {
        let comp = nu.component(c);
        let part = match f_class {
            FClass::Gp => base_gp(&comp, profile, cutoff)?,
            FClass::Proj => {
                let mut pv = Verdict::new("base-proj");
                let d = projective_resolution(&comp, 1).pdim();
                pv.table.push(TableEntry {
                    quantity: String::from("pdim = 0"),
                    degree: 0,
                    dims: vec![usize::from(d != Dimension::Finite(0))],
                });
                if d != Dimension::Finite(0) {
                    pv.member = Membership::No;
                }
                pv
            }
        };
        v.absorb(format!("f-class[nu(F)({})]", triple.category().object_name(c)), part);
        if v.member == Membership::No {
            break;
        }
    }
    Ok(v)
}

/// Resolution dimension with respect to GP of the functor category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GpDimension {
    Exact(usize),
    /// Earlier syzygies were inconclusive.
    AtMost(usize),
    AtLeast(usize),
}

impl GpDimension {
    pub fn upper_bound(&self) -> Option<usize> {
        match self {
            GpDimension::Exact(n) | GpDimension::AtMost(n) => Some(*n),
            GpDimension::AtLeast(_) => None,
        }
    }
}

/// Walks the minimal projective resolution of `F` until a syzygy is Gorenstein projective.
pub fn gp_resolution_dimension(
    triple: &AdjointTriple,
    f: &Representation,
    profile: &BaseGorensteinProfile,
) -> Result<(GpDimension, Vec<Verdict>)> {
    let cutoff = triple.cutoff();
    let res = projective_resolution(f.module(), cutoff);
    let mut verdicts = Vec::new();
    let mut unsure = false;
    let setting = f.setting();
    for k in 0..=cutoff {
        let syz = if k == 0 {
            f.clone()
        } else {
            match res.syzygies.get(k - 1) {
                Some(m) => Representation::new(setting.clone(), m.clone())?,
                None => Representation::zero(setting),
            }
        };
        let v = is_gp_functor(triple, &syz, profile)?;
        let member = v.member;
        verdicts.push(v);
        match member {
            Membership::Yes => {
                return Ok((if unsure { GpDimension::AtMost(k) } else { GpDimension::Exact(k) }, verdicts));
            }
            Membership::Inconclusive => unsure = true,
            Membership::No => {}
        }
    }
    Ok((GpDimension::AtLeast(cutoff), verdicts))
}

/// Transports a representation of `C` with base `B` to one of `B` with base `C`.
pub fn swap_factors(f: &Representation, target: &Arc<Setting>) -> Result<Representation> {
    let s = f.setting();
    if !same_category(&target.cat, &s.base) || !same_category(&target.base, &s.cat) {
        return Err(Error::CategoryMismatch);
    }
    let (nc, nb) = (s.cat.num_objects(), s.base_objects());
    let mut dims = vec![0; target.total.num_objects()];
    for c in 0..nc {
        for b in 0..nb {
            dims[target.object(b, c)] = f.dim(c, b);
        }
    }
    let mut arrows = vec![Matrix::zeros(f.field(), 0, 0); target.total.num_arrows()];
    for a in 0..s.cat.num_arrows() {
        for b in 0..nb {
            arrows[target.b_arrow(b, a)] = f.module().arrow_matrix(s.c_arrow(a, b)).clone();
        }
    }
    for beta in 0..s.base.num_arrows() {
        for c in 0..nc {
            arrows[target.c_arrow(beta, c)] = f.module().arrow_matrix(s.b_arrow(c, beta)).clone();
        }
    }
    let module = Module::new(target.total.clone(), dims, arrows)?;
    Representation::new(target.clone(), module)
}

/// For each loop `a` of `C`, a vector of `ker F(a)` outside `im F(a)`, if any.
pub fn loop_witnesses(f: &Representation) -> Result<Vec<Witness>> {
    let s = f.setting();
    let mut out = Vec::new();
    for a in 0..s.cat.num_arrows() {
        let arrow = s.cat.arrow(a);
        if arrow.source != arrow.target {
            continue;
        }
        for b in 0..s.base_objects() {
            let m = f.module().arrow_matrix(s.c_arrow(a, b));
            let ker = m.rank_and_kernel();
            for k in 0..ker.dim() {
                let w = ker.basis.select_cols(&[k]);
                if !m.spans(&w)? {
                    let obj = s.object(arrow.source, b);
                    out.push(Witness {
                        object: obj,
                        label: String::from(s.total.object_name(obj)),
                        vector: w,
                        note: format!("in ker {0} but not in im {0}", arrow.name),
                    });
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Membership under two factorizations of the same total algebra.
pub fn discrepancy_probe(
    first: (&AdjointTriple, &BaseGorensteinProfile),
    second: (&AdjointTriple, &BaseGorensteinProfile),
    f: &Representation,
) -> Result<(Verdict, Verdict)> {
    let other = swap_factors(f, second.0.setting())?;
    let mut a = is_gp_functor(first.0, f, first.1)?;
    let mut b = is_gp_functor(second.0, &other, second.1)?;
    for (v, rep) in [(&mut a, f), (&mut b, &other)] {
        if v.member == Membership::No && v.witness.is_none() {
            v.witness = loop_witnesses(rep)?.into_iter().next();
        }
    }
    Ok((a, b))
}

fn approximation(module: &Module) -> Result<ModuleMap> {
    let cat = module.category();
    let field = module.field();
    let n = cat.num_objects();
    let mut gens = Vec::new();
    let mut maps: Vec<Vec<Matrix>> = Vec::new();
    for t in 0..n {
        let rep = Module::representable(cat.clone(), t);
        let homs = hom_over_c(module, &rep)?;
        for j in 0..homs.dim() {
            gens.push(t);
            maps.push(homs.basis_map(module, &rep, j));
        }
    }
    let free = FreeModule::new(cat.clone(), gens).module();
    let comps = (0..n)
        .map(|x| {
            let mut m = Matrix::zeros(field, 0, module.dim(x));
            for comps in &maps {
                m = m.vstack(&comps[x]).expect("columns agree");
            }
            m
        })
        .collect();
    ModuleMap::new_unchecked(module.clone(), free, comps)
}

fn hom_into_regular(d: &ModuleMap) -> Result<Vec<Matrix>> {
    let cat = d.source().category();
    (0..cat.num_objects())
        .map(|t| {
            let rep = Module::representable(cat.clone(), t);
            let src = hom_over_c(d.target(), &rep)?;
            let dst = hom_over_c(d.source(), &rep)?;
            crate::functor::hom_map(d, &ModuleMap::identity(&rep), &src, &dst)
        })
        .collect()
}

/// A window `P_{n-1} -> ... -> P_0 -> Q^0 -> ... -> Q^{n-1}` of projectives through `F`,
/// built from the minimal resolution and left approximations by projectives.
pub fn totally_acyclic_window(f: &Module, n: usize) -> Result<WindowRecord> {
    let res = projective_resolution(f, n);
    // Left half: d_k for k = n-1 .. 1, then P_0 -> F.
    let mut maps: Vec<ModuleMap> = Vec::new();
    let mut ranks: Vec<usize> = Vec::new();
    for k in (1..n).rev() {
        let term = res.term(k).unwrap_or_else(|| FreeModule::new(f.category().clone(), Vec::new()));
        ranks.push(term.rank());
        let d = match res.differential(k) {
            Some(d) => d.module_map(),
            None => return Err(Error::Inconclusive { degree: k, cutoff: n }),
        };
        maps.push(d);
    }
    let p0 = res.term(0).expect("first term");
    ranks.push(p0.rank());
    let aug = crate::resolution::map_from_free(&p0, &res.augmentation, f);
    let mut current = f.clone();
    let mut into = aug;
    for _ in 0..n {
        let approx = approximation(&current)?;
        maps.push(into.then(&approx)?);
        let (cok, proj) = approx.cokernel();
        into = proj;
        current = cok;
        ranks.push(count_generators(approx.target()));
    }
    // maps[i]: term i -> term i+1 across the window.
    let mut exact = true;
    for w in maps.windows(2) {
        let (d1, d2) = (&w[0], &w[1]);
        for x in 0..d1.target().dims().len() {
            let comp = d2.component(x).mul(d1.component(x))?;
            let ker = d2.component(x).cols() - d2.component(x).rank();
            if !comp.is_zero() || ker != d1.component(x).rank() {
                exact = false;
            }
        }
    }
    let mut hom_exact = true;
    let duals: Vec<Vec<Matrix>> = maps.iter().map(hom_into_regular).collect::<Result<_>>()?;
    for w in duals.windows(2) {
        // Hom(d2) then Hom(d1): the order reverses.
        for (a, b) in w[1].iter().zip(&w[0]) {
            let comp = b.mul(a)?;
            let ker = b.cols() - b.rank();
            if !comp.is_zero() || ker != a.rank() {
                hom_exact = false;
            }
        }
    }
    Ok(WindowRecord {
        ranks,
        position: n,
        exact,
        hom_exact,
    })
}

fn count_generators(free: &Module) -> usize {
    free.top_dims().iter().sum()
}
