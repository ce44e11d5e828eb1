//! Command line parsing and dispatch.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use nakayama_core::{
    discrepancy_probe, enumerate::{dimension_vectors, enumerate_representations}, ext, gp_resolution_dimension,
    is_gp_functor, is_gproj_p_with, is_monic, lifted_class_membership, projective_resolution, self_injective_dimension,
    tor, AdjointTriple, BaseGorensteinProfile, Category, Error, FClass, Field, Membership, Representation, Route,
    Setting, Verdict, XClass,
};
use serde_json::{json, Value};

use crate::fixtures::FIXTURES;
use crate::format::{representation_doc, InputError, Loader, Source};
use crate::report::{self, Header, Status};

pub const DEFAULT_CUTOFF: usize = 16;
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Functor {
    Nu,
    NuMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Auto,
    Shortcut,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum XArg {
    GprojP,
    PProj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FArg {
    Gp,
    Proj,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum CheckKind {
    /// Gorenstein P-projectivity.
    GprojP {
        input: String,
        #[arg(long, value_enum, default_value = "auto")]
        route: RouteArg,
    },
    /// Injectivity of the incoming maps at every vertex (path categories only).
    Monic { input: String },
    /// Gorenstein projectivity in the functor category.
    Gp {
        input: String,
        /// Declared self-injective dimension of the base.
        #[arg(long)]
        base_dim: Option<usize>,
    },
    /// Membership in one of the four lifted classes.
    Lifted {
        input: String,
        #[arg(long, value_enum)]
        x: XArg,
        #[arg(long, value_enum)]
        f: FArg,
        #[arg(long)]
        base_dim: Option<usize>,
    },
    /// Gorenstein projective resolution dimension.
    GpDim {
        input: String,
        #[arg(long)]
        base_dim: Option<usize>,
    },
    /// Gorenstein projectivity under both orders of a tensor factorization.
    Discrepancy { input: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// List the bundled files.
    Fixtures,
    /// Objects, arrows and Hom dimensions of a category.
    CatInfo { input: String },
    /// Gorenstein dimension of P = i_! i^*.
    Gdim { input: String },
    /// Minimal projective resolution of a representation.
    Resolve { input: String },
    /// The Nakayama functor or its right adjoint applied to a representation.
    Nakayama {
        input: String,
        #[arg(long, value_enum, default_value = "nu")]
        functor: Functor,
    },
    /// A derived functor of nu or nu^- in one degree.
    Derived {
        input: String,
        #[arg(long, value_enum, default_value = "nu")]
        functor: Functor,
        #[arg(long)]
        degree: usize,
    },
    /// Tor_i(M, F) for a module M over the opposite category and F over the category.
    Tor {
        right: String,
        left: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Ext^i(M, N) for modules over the same category.
    Ext {
        first: String,
        second: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Membership checks with certificates.
    #[command(subcommand)]
    Check(CheckKind),
    /// Self-injective dimension of an algebra.
    ProfileBase { input: String },
    /// Count representations with bounded dimensions over a prime field.
    Enumerate {
        input: String,
        /// Comma separated upper bounds, one per object.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Also tally Gorenstein P-projectivity.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Parser)]
#[command(name = "nakayama", version, about = "Nakayama functors and Gorenstein certificates for bound quiver categories")]
struct Cli {
    /// Resolution length cutoff.
    #[arg(long, global = true, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Maximal number of raw assignments an enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: u64,
    /// Field replacing the one declared in the input files: Q or F<p>.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Also write the report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Everything a run needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub cutoff: usize,
    pub enumeration_limit: u64,
    pub field: Option<String>,
    pub out: Option<PathBuf>,
    pub json: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            cutoff: DEFAULT_CUTOFF,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            field: None,
            out: None,
            json: true,
        }
    }
}

/// Parses command line arguments, the first being the program name.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    Ok(RunConfig {
        command: cli.command,
        cutoff: cli.cutoff,
        enumeration_limit: cli.limit,
        field: cli.field,
        out: cli.out,
        json: cli.json,
    })
}

/// The exit status, the JSON report and a one-paragraph summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    pub summary: String,
}

enum Failure {
    Input(InputError),
    Core(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Done {
    status: Status,
    result: Value,
    summary: String,
}

fn done(status: Status, result: Value, summary: String) -> Done {
    Done { status, result, summary }
}

fn membership_status(m: Membership) -> Status {
    match m {
        Membership::Inconclusive => Status::Inconclusive,
        _ => Status::Definite,
    }
}

fn command_name(c: &Command) -> String {
    let s = match c {
        Command::Fixtures => "fixtures",
        Command::CatInfo { .. } => "cat-info",
        Command::Gdim { .. } => "gdim",
        Command::Resolve { .. } => "resolve",
        Command::Nakayama { .. } => "nakayama",
        Command::Derived { .. } => "derived",
        Command::Tor { .. } => "tor",
        Command::Ext { .. } => "ext",
        Command::ProfileBase { .. } => "profile-base",
        Command::Enumerate { .. } => "enumerate",
        Command::Check(k) => match k {
            CheckKind::GprojP { .. } => "check gproj-p",
            CheckKind::Monic { .. } => "check monic",
            CheckKind::Gp { .. } => "check gp",
            CheckKind::Lifted { .. } => "check lifted",
            CheckKind::GpDim { .. } => "check gp-dim",
            CheckKind::Discrepancy { .. } => "check discrepancy",
        },
    };
    s.to_string()
}

fn arguments(c: &Command) -> Vec<String> {
    let route = |r: RouteArg| format!("{r:?}").to_lowercase();
    match c {
        Command::Fixtures => vec![],
        Command::CatInfo { input }
        | Command::Gdim { input }
        | Command::Resolve { input }
        | Command::ProfileBase { input } => vec![input.clone()],
        Command::Nakayama { input, functor } => vec![input.clone(), format!("functor={functor:?}")],
        Command::Derived { input, functor, degree } => {
            vec![input.clone(), format!("functor={functor:?}"), format!("degree={degree}")]
        }
        Command::Tor { right, left, max_degree } => vec![right.clone(), left.clone(), format!("max_degree={max_degree}")],
        Command::Ext { first, second, max_degree } => {
            vec![first.clone(), second.clone(), format!("max_degree={max_degree}")]
        }
        Command::Enumerate { input, dims, check } => vec![
            input.clone(),
            format!("dims={}", dims.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
            format!("check={check}"),
        ],
        Command::Check(k) => match k {
            CheckKind::GprojP { input, route: r } => vec![input.clone(), format!("route={}", route(*r))],
            CheckKind::Monic { input } | CheckKind::Discrepancy { input } => vec![input.clone()],
            CheckKind::Gp { input, base_dim } | CheckKind::GpDim { input, base_dim } => {
                vec![input.clone(), format!("base_dim={base_dim:?}")]
            }
            CheckKind::Lifted { input, x, f, base_dim } => vec![
                input.clone(),
                format!("x={x:?}"),
                format!("f={f:?}"),
                format!("base_dim={base_dim:?}"),
            ],
        },
    }
}

/// Runs one command. The report is also written to `config.out` when set.
pub fn run(config: &RunConfig) -> Outcome {
    let name = command_name(&config.command);
    let args = arguments(&config.command);
    let mut inputs = Vec::new();
    let outcome = execute(config, &mut inputs);
    let header = Header {
        command: &name,
        arguments: &args,
        inputs: &inputs,
        cutoff: config.cutoff,
        enumeration_limit: config.enumeration_limit,
        field: config.field.clone(),
    };
    let finished = match outcome {
        Ok(d) => d,
        Err(Failure::Input(e)) => done(Status::Error, json!({ "error": e.to_string() }), format!("error: {e}")),
        Err(Failure::Core(Error::Inconclusive { degree, cutoff })) => done(
            Status::Inconclusive,
            json!({ "blocked_degree": degree, "blocking_cutoff": cutoff }),
            format!("inconclusive: degree {degree} is blocked at cutoff {cutoff}"),
        ),
        Err(Failure::Core(e)) => done(Status::Error, json!({ "error": e.to_string() }), format!("error: {e}")),
    };
    let mut report = report::render(&header, finished.status, finished.result);
    let mut code = finished.status.exit_code();
    let mut summary = finished.summary;
    if let Some(path) = &config.out {
        if let Err(e) = std::fs::write(path, &report) {
            let err = InputError::Io {
                origin: path.display().to_string(),
                message: e.to_string(),
            };
            summary = format!("error: {err}");
            report = report::render(&header, Status::Error, json!({ "error": err.to_string() }));
            code = 1;
        }
    }
    Outcome { code, report, summary }
}

struct Context {
    loader: Loader,
    cutoff: usize,
}

impl Context {
    fn category(&mut self, arg: &str) -> Result<Arc<Category>, InputError> {
        self.loader.category(&Source::from_arg(arg))
    }

    fn representation(&mut self, arg: &str) -> Result<Representation, InputError> {
        self.loader.representation(&Source::from_arg(arg))
    }

    fn triple(&self, setting: &Arc<Setting>) -> Result<AdjointTriple, Error> {
        AdjointTriple::new(setting, self.cutoff)
    }

    fn profile(&self, base: &Arc<Category>, declared: Option<usize>) -> Result<BaseGorensteinProfile, Error> {
        match declared {
            Some(g) => Ok(BaseGorensteinProfile::declared(base.clone(), g)),
            None => self_injective_dimension(base, self.cutoff),
        }
    }
}

fn names(cat: &Category) -> Vec<String> {
    (0..cat.num_objects()).map(|x| cat.object_name(x).to_string()).collect()
}

fn dims_by_name(cat: &Category, dims: &[usize]) -> Value {
    let map: serde_json::Map<String, Value> = (0..cat.num_objects())
        .map(|x| (cat.object_name(x).to_string(), json!(dims[x])))
        .collect();
    Value::Object(map)
}

fn profile_json(p: &BaseGorensteinProfile) -> Value {
    json!({
        "dimension": p.dimension,
        "left": p.left.map(report::dimension),
        "right": p.right.map(report::dimension),
        "declared": p.declared,
        "cutoff": p.cutoff,
    })
}

fn verdict_done(v: &Verdict, total: &Category, what: &str) -> Done {
    let status = membership_status(v.member);
    let summary = format!("{what}: {} (route {})", v.member.as_str(), v.route);
    done(status, json!({ "verdict": report::verdict(v, Some(total)) }), summary)
}

fn execute(config: &RunConfig, inputs: &mut Vec<crate::format::InputRecord>) -> Result<Done, Failure> {
    if config.cutoff == 0 {
        return Err(InputError::Usage("--cutoff must be positive".into()).into());
    }
    if config.enumeration_limit == 0 {
        return Err(InputError::Usage("--limit must be positive".into()).into());
    }
    let field = match &config.field {
        Some(s) => Some(
            s.parse::<Field>()
                .map_err(|e| InputError::Usage(format!("--field {s}: {e}")))?,
        ),
        None => None,
    };
    let mut ctx = Context {
        loader: Loader::new(field),
        cutoff: config.cutoff,
    };
    let out = dispatch(config, &mut ctx);
    *inputs = ctx.loader.inputs.clone();
    out
}

fn dispatch(config: &RunConfig, ctx: &mut Context) -> Result<Done, Failure> {
    match &config.command {
        Command::Fixtures => {
            let list: Vec<Value> = FIXTURES
                .iter()
                .map(|f| json!({ "name": f.name, "kind": f.kind.as_str(), "description": f.description }))
                .collect();
            let summary = FIXTURES
                .iter()
                .map(|f| format!("fixture:{:<16} {:<15} {}", f.name, f.kind.as_str(), f.description))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(done(Status::Definite, json!({ "fixtures": list }), summary))
        }
        Command::CatInfo { input } => {
            let cat = ctx.category(input)?;
            let n = cat.num_objects();
            let hom: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| cat.hom_dim(x, y)).collect()).collect();
            let arrows: Vec<Value> = (0..cat.num_arrows())
                .map(|a| {
                    let arrow = cat.arrow(a);
                    json!({ "name": arrow.name, "source": cat.object_name(arrow.source), "target": cat.object_name(arrow.target) })
                })
                .collect();
            let summary = format!(
                "{} objects, {} arrows, {} relations, total dimension {} over {}",
                n,
                cat.num_arrows(),
                cat.relations().len(),
                cat.total_dimension(),
                cat.field()
            );
            Ok(done(
                Status::Definite,
                json!({
                    "field": cat.field().to_string(),
                    "objects": names(&cat),
                    "arrows": arrows,
                    "relations": cat.relations().len(),
                    "length_cutoff": cat.length_cutoff(),
                    "path_category": cat.is_path_category(),
                    "hom_dims": hom,
                    "total_dimension": cat.total_dimension(),
                }),
                summary,
            ))
        }
        Command::Gdim { input } => {
            let cat = ctx.category(input)?;
            let triple = ctx.triple(&Setting::plain(cat.clone()))?;
            let g = triple.gorenstein_dimension()?;
            let per_object = |dims: Vec<nakayama_core::Dimension>| -> Value {
                let map: serde_json::Map<String, Value> = dims
                    .into_iter()
                    .enumerate()
                    .map(|(x, d)| (cat.object_name(x).to_string(), report::dimension(d)))
                    .collect();
                Value::Object(map)
            };
            let status = if g.finite().is_some() { Status::Definite } else { Status::Inconclusive };
            let summary = match g.finite() {
                Some(n) => format!("Gorenstein dimension {n}"),
                None => format!("Gorenstein dimension not determined within cutoff {}: {g:?}", ctx.cutoff),
            };
            Ok(done(
                status,
                json!({
                    "gorenstein_dimension": report::gorenstein_dimension(g),
                    "pdim_dual_representables": per_object(triple.coefficient_pdims()),
                    "pdim_injectives": per_object(triple.injective_pdims()),
                }),
                summary,
            ))
        }
        Command::Resolve { input } => {
            let rep = ctx.representation(input)?;
            let total = rep.setting().total.clone();
            let res = projective_resolution(rep.module(), ctx.cutoff);
            let terms: Vec<Vec<String>> = res
                .terms
                .iter()
                .map(|t| t.gens().iter().map(|&c| total.object_name(c).to_string()).collect())
                .collect();
            let syzygies: Vec<Vec<usize>> = res.syzygies.iter().map(|s| s.dims().to_vec()).collect();
            let pdim = res.pdim();
            let status = if res.completed { Status::Definite } else { Status::Inconclusive };
            Ok(done(
                status,
                json!({
                    "objects": names(&total),
                    "terms": terms,
                    "syzygy_dims": syzygies,
                    "completed": res.completed,
                    "pdim": report::dimension(pdim),
                }),
                format!("projective dimension {pdim}, {} terms computed", res.terms.len()),
            ))
        }
        Command::Nakayama { input, functor } => {
            let rep = ctx.representation(input)?;
            let triple = ctx.triple(rep.setting())?;
            let image = match functor {
                Functor::Nu => triple.nu(&rep)?,
                Functor::NuMinus => triple.nu_minus(&rep)?,
            };
            let total = &rep.setting().total;
            let doc = representation_doc(&image, input, None);
            let summary = format!("dims {:?}", image.module().dims());
            Ok(done(
                Status::Definite,
                json!({
                    "dims": dims_by_name(total, image.module().dims()),
                    "arrows": serde_json::to_value(&doc.arrows).expect("matrices serialize"),
                }),
                summary,
            ))
        }
        Command::Derived { input, functor, degree } => {
            let rep = ctx.representation(input)?;
            let triple = ctx.triple(rep.setting())?;
            let image = match functor {
                Functor::Nu => triple.left_derived_nu(&rep, *degree)?,
                Functor::NuMinus => triple.right_derived_nu_minus(&rep, *degree)?,
            };
            let total = &rep.setting().total;
            let doc = representation_doc(&image, input, None);
            let label = match functor {
                Functor::Nu => format!("L_{degree} nu"),
                Functor::NuMinus => format!("R^{degree} nu^-"),
            };
            let summary = format!("{label}: dims {:?}", image.module().dims());
            Ok(done(
                Status::Definite,
                json!({
                    "quantity": label,
                    "dims": dims_by_name(total, image.module().dims()),
                    "arrows": serde_json::to_value(&doc.arrows).expect("matrices serialize"),
                }),
                summary,
            ))
        }
        Command::Tor { right, left, max_degree } => {
            let m = ctx.representation(right)?;
            let f = ctx.representation(left)?;
            let (mc, fc) = (&m.setting().total, &f.setting().total);
            if **mc != fc.opposite() {
                return Err(InputError::Usage(format!(
                    "tor: `{right}` must be a module over the opposite of the category of `{left}`"
                ))
                .into());
            }
            let res = projective_resolution(m.module(), ctx.cutoff);
            homology_table("Tor", *max_degree, |i| Ok(tor(&res, f.module(), i)?.dim()))
        }
        Command::Ext { first, second, max_degree } => {
            let m = ctx.representation(first)?;
            let n = ctx.representation(second)?;
            if *m.setting().total != *n.setting().total {
                return Err(InputError::Usage("ext: both modules must live over the same category".into()).into());
            }
            let res = projective_resolution(m.module(), ctx.cutoff);
            homology_table("Ext", *max_degree, |i| Ok(ext(&res, n.module(), i)?.dim()))
        }
        Command::ProfileBase { input } => {
            let cat = ctx.category(input)?;
            let p = self_injective_dimension(&cat, ctx.cutoff)?;
            let status = if p.dimension.is_some() { Status::Definite } else { Status::Inconclusive };
            let summary = match p.dimension {
                Some(g) => format!("self-injective dimension {g}"),
                None => format!("self-injective dimension not determined within cutoff {}", ctx.cutoff),
            };
            Ok(done(status, json!({ "profile": profile_json(&p) }), summary))
        }
        Command::Enumerate { input, dims, check } => {
            let cat = ctx.category(input)?;
            if dims.len() != cat.num_objects() {
                return Err(InputError::Usage(format!(
                    "--dims needs {} bounds, one per object",
                    cat.num_objects()
                ))
                .into());
            }
            let all = enumerate_representations(&cat, dims, u128::from(config.enumeration_limit))?;
            let mut by_vector: Vec<Value> = Vec::new();
            for d in dimension_vectors(dims) {
                let count = all.iter().filter(|m| m.dims() == d.as_slice()).count();
                by_vector.push(json!({ "dims": d, "count": count }));
            }
            let mut result = json!({ "count": all.len(), "by_dimension_vector": by_vector });
            let mut status = Status::Definite;
            let mut summary = format!("{} representations", all.len());
            if *check {
                let setting = Setting::plain(cat.clone());
                let triple = ctx.triple(&setting)?;
                let mut tally = [0usize; 3];
                for m in &all {
                    let rep = Representation::in_setting(&setting, m.clone())?;
                    let v = is_gproj_p_with(&triple, &rep, Route::Auto)?;
                    tally[match v.member {
                        Membership::Yes => 0,
                        Membership::No => 1,
                        Membership::Inconclusive => 2,
                    }] += 1;
                }
                if tally[2] > 0 {
                    status = Status::Inconclusive;
                }
                result["gproj_p"] = json!({ "yes": tally[0], "no": tally[1], "inconclusive": tally[2] });
                summary = format!("{summary}; Gorenstein P-projective: {} yes, {} no, {} inconclusive", tally[0], tally[1], tally[2]);
            }
            Ok(done(status, result, summary))
        }
        Command::Check(kind) => check(ctx, kind),
    }
}

fn homology_table(name: &str, max: usize, mut dim: impl FnMut(usize) -> Result<usize, Error>) -> Result<Done, Failure> {
    let mut dims = Vec::new();
    let mut blocked = None;
    for i in 0..=max {
        match dim(i) {
            Ok(d) => dims.push(d),
            Err(Error::Inconclusive { cutoff, .. }) => {
                blocked = Some((i, cutoff));
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    let status = if blocked.is_some() { Status::Inconclusive } else { Status::Definite };
    let mut summary = format!("{name} dims by degree: {dims:?}");
    if let Some((i, c)) = blocked {
        summary.push_str(&format!("; degree {i} blocked at cutoff {c}"));
    }
    Ok(done(
        status,
        json!({
            "quantity": name,
            "dims": dims,
            "blocked_degree": blocked.map(|b| b.0),
            "blocking_cutoff": blocked.map(|b| b.1),
        }),
        summary,
    ))
}

fn check(ctx: &mut Context, kind: &CheckKind) -> Result<Done, Failure> {
    match kind {
        CheckKind::GprojP { input, route } => {
            let rep = ctx.representation(input)?;
            let triple = ctx.triple(rep.setting())?;
            let route = match route {
                RouteArg::Auto => Route::Auto,
                RouteArg::Shortcut => Route::Shortcut,
                RouteArg::Full => Route::Full,
            };
            let v = is_gproj_p_with(&triple, &rep, route)?;
            Ok(verdict_done(&v, &rep.setting().total, "Gorenstein P-projective"))
        }
        CheckKind::Monic { input } => {
            let rep = ctx.representation(input)?;
            let v = is_monic(&rep)?;
            Ok(verdict_done(&v, &rep.setting().total, "monic"))
        }
        CheckKind::Gp { input, base_dim } => {
            let rep = ctx.representation(input)?;
            let triple = ctx.triple(rep.setting())?;
            let profile = ctx.profile(&rep.setting().base, *base_dim)?;
            let v = is_gp_functor(&triple, &rep, &profile)?;
            let mut d = verdict_done(&v, &rep.setting().total, "Gorenstein projective");
            d.result["base_profile"] = profile_json(&profile);
            Ok(d)
        }
        CheckKind::Lifted { input, x, f, base_dim } => {
            let rep = ctx.representation(input)?;
            let triple = ctx.triple(rep.setting())?;
            let profile = ctx.profile(&rep.setting().base, *base_dim)?;
            let x = match x {
                XArg::GprojP => XClass::GprojP,
                XArg::PProj => XClass::PProj,
            };
            let f = match f {
                FArg::Gp => FClass::Gp,
                FArg::Proj => FClass::Proj,
            };
            let v = lifted_class_membership(&triple, &rep, x, f, &profile)?;
            Ok(verdict_done(&v, &rep.setting().total, "lifted class"))
        }
        CheckKind::GpDim { input, base_dim } => {
            let rep = ctx.representation(input)?;
            let triple = ctx.triple(rep.setting())?;
            let profile = ctx.profile(&rep.setting().base, *base_dim)?;
            let (d, stages) = gp_resolution_dimension(&triple, &rep, &profile)?;
            let status = if d.upper_bound().is_some() { Status::Definite } else { Status::Inconclusive };
            let stages: Vec<Value> = stages.iter().map(|v| report::verdict(v, None)).collect();
            Ok(done(
                status,
                json!({ "gp_dimension": report::gp_dimension(d.clone()), "stages": stages }),
                format!("Gorenstein projective dimension {d:?}"),
            ))
        }
        CheckKind::Discrepancy { input } => {
            let rep = ctx.representation(input)?;
            let s = rep.setting().clone();
            if s.has_trivial_base() {
                return Err(InputError::Usage("discrepancy needs a representation with a base category".into()).into());
            }
            let swapped = Setting::with_base(s.base.clone(), s.cat.clone())?;
            let first = ctx.triple(&s)?;
            let second = ctx.triple(&swapped)?;
            let p1 = ctx.profile(&s.base, None)?;
            let p2 = ctx.profile(&s.cat, None)?;
            let (a, b) = discrepancy_probe((&first, &p1), (&second, &p2), &rep)?;
            let status = if a.member == Membership::Inconclusive || b.member == Membership::Inconclusive {
                Status::Inconclusive
            } else {
                Status::Definite
            };
            let witness = a.is_yes() != b.is_yes() && status == Status::Definite;
            let summary = format!(
                "as given: {}; factors swapped: {}; discrepancy witness: {witness}",
                a.member.as_str(),
                b.member.as_str()
            );
            Ok(done(
                status,
                json!({
                    "as_given": { "verdict": report::verdict(&a, Some(&s.total)), "base_profile": profile_json(&p1) },
                    "swapped": { "verdict": report::verdict(&b, Some(&swapped.total)), "base_profile": profile_json(&p2) },
                    "discrepancy_witness": witness,
                }),
                summary,
            ))
        }
    }
}

