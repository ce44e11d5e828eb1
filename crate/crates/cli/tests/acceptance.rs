//! Acceptance criteria, one PASS/FAIL line each.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nakayama_cli::{parse_args, run};
use nakayama_core::enumerate::{enumerate_representations, random_matrix, random_module, random_quotient, DEFAULT_SEARCH_LIMIT};
use nakayama_core::fixtures;
use nakayama_core::{
    gp_resolution_dimension, is_gproj_p, is_gproj_p_with, is_monic, projective_resolution, projective_resolution_padded,
    self_injective_dimension, tor_table, AdjointTriple, Category, Field, Matrix, Module, ModuleMap, Representation,
    Route, Setting,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn arc(c: Category) -> Arc<Category> {
    Arc::new(c)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cli(args: &[&str]) -> Result<(i32, Value), String> {
    let mut full = vec!["nakayama"];
    full.extend_from_slice(args);
    let config = ok(parse_args(full))?;
    let out = run(&config);
    Ok((out.code, ok(serde_json::from_str(&out.report))?))
}

fn within(elapsed: Duration, limit: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || {
        format!("{what} took {:.2} s, limit {limit} s", elapsed.as_secs_f64())
    })
}

/// A2 over F5: nu(F) = (dim B2, dim B2 - rank f), L_1 nu(F) = (0, dim ker f), and
/// membership iff f is injective.
fn morphism_category() -> Outcome {
    let start = Instant::now();
    let s = Setting::plain(arc(fixtures::linear(2, f5())));
    let t = ok(AdjointTriple::new(&s, 4))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut members = 0;
    for n in 0..50 {
        let dims = [rng.gen_range(0..=4), rng.gen_range(0..=4)];
        let m = ok(random_module(&s.cat, &dims, &mut rng))?;
        let r = m.arrow_matrix(0).rank();
        let f = ok(Representation::in_setting(&s, m))?;
        let nu = ok(t.nu(&f))?;
        let l1 = ok(t.left_derived_nu_dims(&f, 1))?;
        let v = ok(is_gproj_p(&t, &f))?;
        ensure(nu.module().dims() == [dims[1], dims[1] - r], || format!("instance {n}: nu dims {:?}", nu.module().dims()))?;
        ensure(l1 == [0, dims[0] - r], || format!("instance {n}: L_1 nu dims {l1:?}"))?;
        ensure(v.is_yes() == (r == dims[0]), || format!("instance {n}: verdict {}", v.member.as_str()))?;
        members += usize::from(v.is_yes());
    }
    within(start.elapsed(), 1.0, "50 instances")?;
    Ok(format!("50 instances, {members} members"))
}

fn gdim_table() -> Outcome {
    let start = Instant::now();
    let mut found = Vec::new();
    for (fixture, expected) in [("a3", 1), ("square", 2), ("chain2", 2), ("chain3", 3), ("cyclic3", 0)] {
        let (code, r) = cli(&["gdim", &format!("fixture:{fixture}")])?;
        let value = &r["result"]["gorenstein_dimension"]["value"];
        ensure(code == 0 && *value == expected, || format!("{fixture}: exit {code}, value {value}"))?;
        found.push(format!("{fixture}={value}"));
    }
    within(start.elapsed(), 2.0, "the table")?;
    Ok(found.join(" "))
}

fn monic_iff_gproj() -> Outcome {
    let start = Instant::now();
    let s = Setting::plain(arc(fixtures::linear(3, f2())));
    let t = ok(AdjointTriple::new(&s, 6))?;
    let all = ok(enumerate_representations(&s.cat, &[2, 2, 2], DEFAULT_SEARCH_LIMIT))?;
    // sum over dimension vectors of 2^(d1 d2 + d2 d3)
    let mut expected = 0;
    for d1 in 0..=2 {
        for d2 in 0..=2 {
            for d3 in 0..=2 {
                expected += 1usize << (d1 * d2 + d2 * d3);
            }
        }
    }
    ensure(all.len() == expected, || format!("{} representations, expected {expected}", all.len()))?;
    let mut monic = 0;
    for m in all {
        let f = ok(Representation::in_setting(&s, m))?;
        let a = ok(is_monic(&f))?;
        let b = ok(is_gproj_p(&t, &f))?;
        ensure(a.member == b.member, || format!("disagreement on dims {:?}", f.module().dims()))?;
        monic += usize::from(a.is_yes());
    }
    within(start.elapsed(), 30.0, "the enumeration")?;
    Ok(format!("{expected} representations, {monic} monic, full agreement"))
}

/// `F(b)`, `F(g)` injective and `F(c1)` the pullback of `F(c2) -> F(c4) <- F(c3)`.
fn pullback_square(m: &Module) -> bool {
    let (a, mu, b, g) = (m.arrow_matrix(0), m.arrow_matrix(1), m.arrow_matrix(2), m.arrow_matrix(3));
    if b.rank() != m.dim(1) || g.rank() != m.dim(2) {
        return false;
    }
    let joint = b.hstack(&g.neg()).unwrap();
    let pullback_dim = joint.cols() - joint.rank();
    let into = a.vstack(mu).unwrap();
    into.rank() == m.dim(0) && pullback_dim == m.dim(0)
}

fn square_routes() -> Outcome {
    let s = Setting::plain(arc(fixtures::square(f2())));
    let t = ok(AdjointTriple::new(&s, 6))?;
    let all = ok(enumerate_representations(&s.cat, &[1, 1, 1, 1], DEFAULT_SEARCH_LIMIT))?;
    let mut members = 0;
    for m in &all {
        let f = ok(Representation::in_setting(&s, m.clone()))?;
        let short = ok(is_gproj_p_with(&t, &f, Route::Shortcut))?;
        let full = ok(is_gproj_p_with(&t, &f, Route::Full))?;
        ensure(short.member == full.member, || format!("routes disagree on {:?}", m.dims()))?;
        ensure(short.is_yes() == pullback_square(m), || format!("pullback oracle disagrees on {:?}", m.dims()))?;
        members += usize::from(short.is_yes());
    }
    Ok(format!("{} representations, {members} members, routes and pullback agree", all.len()))
}

fn discrepancy() -> Outcome {
    let (code, r) = cli(&["check", "discrepancy", "fixture:loop_m_p2"])?;
    let p2 = &r["result"]["as_given"]["verdict"];
    let p1 = &r["result"]["swapped"]["verdict"];
    ensure(code == 0, || format!("exit {code}"))?;
    ensure(p2["member"] == "yes" && p1["member"] == "no", || {
        format!("pair ({}, {})", p2["member"], p1["member"])
    })?;
    // Check the witness against the module read from the other factorization.
    let mut loader = nakayama_cli::Loader::new(None);
    let rep = ok(loader.representation(&nakayama_cli::Source::Fixture("loop_m_p1".into())))?;
    let total = &rep.setting().total;
    let w = &p1["witness"];
    let object = w["object_name"].as_str().ok_or("no witness")?.to_string();
    let x = ok(total.object_index(&object))?;
    let b = object.split('⊗').nth(1).ok_or("object name")?;
    let s_arrow = total.quiver().arrow_index(&format!("beta⊗{b}")).ok_or("loop arrow")?;
    let s = rep.module().arrow_matrix(s_arrow).clone();
    let rows: Vec<Vec<String>> = ok(serde_json::from_value(w["vector"].clone()))?;
    let entries: Vec<i64> = rows.iter().map(|r| r[0].parse::<i64>().unwrap_or(0)).collect();
    let v = Matrix::from_i64(rep.field(), entries.len(), 1, &entries);
    ensure(v.rows() == rep.module().dim(x) && !v.is_zero(), || "witness shape".into())?;
    ensure(ok(s.mul(&v))?.is_zero(), || "witness not in ker s".into())?;
    let in_image = ok(s.spans(&v))?;
    ensure(!in_image, || "witness lies in im s".into())?;
    let ker = s.cols() - s.rank();
    Ok(format!(
        "(P2, P1) = (yes, no); at {object}: dim ker s = {ker}, dim im s = {}, witness in ker s \\ im s",
        s.rank()
    ))
}

fn tor_well_defined() -> Outcome {
    let cat = arc(fixtures::linear(3, f5()));
    let op = arc(cat.opposite());
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut nonzero = 0;
    for n in 0..20 {
        let mdims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..4)).collect();
        let fdims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..4)).collect();
        let m = ok(random_module(&op, &mdims, &mut rng))?;
        let f = ok(random_module(&cat, &fdims, &mut rng))?;
        let x = rng.gen_range(0..3);
        let extra = random_matrix(f5(), m.dim(x), 1, &mut rng);
        let minimal = ok(tor_table(&projective_resolution(&m, 6), &f, 4))?;
        let padded = ok(tor_table(&projective_resolution_padded(&m, 6, &[(x, extra)]), &f, 4))?;
        ensure(minimal == padded, || format!("instance {n}: {minimal:?} vs {padded:?}"))?;
        nonzero += usize::from(minimal[1..].iter().any(|&d| d > 0));
    }
    Ok(format!("20 pairs through degree 4, {nonzero} with nonzero higher Tor"))
}

fn composite_is_identity(first: &ModuleMap, second: &ModuleMap) -> bool {
    first
        .components()
        .iter()
        .zip(second.components())
        .all(|(a, b)| b.mul(a).map(|c| c.is_identity()).unwrap_or(false))
}

fn adjunctions_hold(t: &AdjointTriple, f: &Representation, parts: &[Module]) -> Result<(), String> {
    let s = t.setting();
    let eta = ok(t.unit_eta(parts))?;
    let image: Vec<Module> = eta.iter().map(|m| m.target().clone()).collect();
    let lifted = ok(t.i_shriek_map(parts, &image, &eta))?;
    let shriek = ok(t.i_shriek(parts))?;
    let eps = ok(t.counit_epsilon(&shriek))?;
    ensure(composite_is_identity(&lifted, &eps), || "epsilon i_! o i_! eta".into())?;
    let eta_f = ok(t.unit_eta(&t.i_star_restrict(f)))?;
    let eps_f = ok(t.counit_epsilon(f))?;
    for (c, e) in eta_f.iter().enumerate() {
        for b in 0..s.base_objects() {
            let comp = ok(eps_f.component(s.object(c, b)).mul(e.component(b)))?;
            ensure(comp.is_identity(), || "i^* epsilon o eta i^*".into())?;
        }
    }
    for m in f.slices() {
        let (lam, nu, _) = ok(t.unit_lambda_module(&m))?;
        let (sigma, _, nunu) = ok(t.counit_sigma_module(&nu.module))?;
        let nu_lam = ok(t.nu_map(&lam, &nu, &nunu))?;
        ensure(composite_is_identity(&nu_lam, &sigma), || "sigma nu o nu lambda".into())?;
        let (sigma_g, minus, _) = ok(t.counit_sigma_module(&m))?;
        let (lam_g, _, back) = ok(t.unit_lambda_module(&minus.module))?;
        let minus_sigma = ok(t.nu_minus_map(&sigma_g, &back, &minus))?;
        ensure(composite_is_identity(&lam_g, &minus_sigma), || "nu^- sigma o lambda nu^-".into())?;
    }
    ensure(ok(t.nu_i_shriek_iso(parts))?.is_iso(), || "nu i_! = i_*".into())?;
    ensure(ok(t.unit_lambda(&shriek))?.is_iso(), || "nu^- nu i_! = i_!".into())?;
    Ok(())
}

fn adjunction_integrity() -> Outcome {
    let field = f5();
    let mut settings: Vec<(String, Arc<Setting>)> = [
        ("a2", fixtures::linear(2, field)),
        ("a3", fixtures::linear(3, field)),
        ("square", fixtures::square(field)),
        ("chain2", fixtures::chain(2, field)),
        ("chain3", fixtures::chain(3, field)),
        ("cyclic3", fixtures::cyclic(3, field)),
        ("dual_numbers", fixtures::dual_numbers(field)),
        ("loop", fixtures::loop_algebra(field)),
    ]
    .into_iter()
    .map(|(n, c)| (n.to_string(), Setting::plain(arc(c))))
    .collect();
    let l = arc(fixtures::loop_algebra(field));
    settings.push((
        "a2 over dual_numbers".into(),
        ok(Setting::with_base(arc(fixtures::linear(2, field)), arc(fixtures::dual_numbers(field))))?,
    ));
    settings.push(("loop over loop_op".into(), ok(Setting::with_base(l.clone(), arc(l.opposite())))?));
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (name, s) in &settings {
        let t = ok(AdjointTriple::new(s, 6))?;
        for n in 0..50 {
            let f = ok(Representation::new(s.clone(), random_quotient(&s.total, 3, 3, &mut rng)))?;
            let parts: Vec<Module> = (0..s.cat.num_objects())
                .map(|_| {
                    if s.has_trivial_base() {
                        Module::new(s.base.clone(), vec![rng.gen_range(0..3)], vec![]).unwrap()
                    } else {
                        random_quotient(&s.base, 2, 1, &mut rng)
                    }
                })
                .collect();
            adjunctions_hold(&t, &f, &parts).map_err(|e| format!("{name}, instance {n}: {e}"))?;
        }
    }
    Ok(format!("50 instances on each of {} settings", settings.len()))
}

fn coresolution_cross_check() -> Outcome {
    let mut checked = 0;
    let mut nonzero = 0;
    for cat in [fixtures::linear(2, f2()), fixtures::square(f2())] {
        let s = Setting::plain(arc(cat));
        let t = ok(AdjointTriple::new(&s, 6))?;
        let bound = vec![1; s.cat.num_objects()];
        for m in ok(enumerate_representations(&s.cat, &bound, DEFAULT_SEARCH_LIMIT))? {
            let g = ok(Representation::in_setting(&s, m.clone()))?;
            for i in 1..=2 {
                let by_ext = ok(t.right_derived_nu_minus_dims(&g, i))?;
                let by_cores = ok(t.right_derived_dims_by_coresolution(&m, i))?;
                ensure(by_ext == by_cores, || format!("R^{i} on {:?}: {by_ext:?} vs {by_cores:?}", m.dims()))?;
                nonzero += usize::from(by_ext.iter().any(|&d| d > 0));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} representations, degrees 1 and 2, {nonzero} nonzero values"))
}

fn gp_dimension_bound() -> Outcome {
    let s = Setting::plain(arc(fixtures::square(f5())));
    let t = ok(AdjointTriple::new(&s, 6))?;
    let profile = ok(self_injective_dimension(&s.base, 4))?;
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut seen = [0usize; 3];
    for n in 0..30 {
        let f = ok(Representation::in_setting(&s, random_quotient(&s.cat, 3, 3, &mut rng)))?;
        let (d, _) = ok(gp_resolution_dimension(&t, &f, &profile))?;
        let bound = d.upper_bound().ok_or_else(|| format!("instance {n}: {d:?}"))?;
        ensure(bound <= 2, || format!("instance {n}: {d:?}"))?;
        seen[bound] += 1;
    }
    Ok(format!("30 instances, dimensions 0/1/2: {}/{}/{}", seen[0], seen[1], seen[2]))
}

const SUITE: &[&[&str]] = &[
    &["fixtures"],
    &["cat-info", "fixture:square_tensor"],
    &["gdim", "fixture:square"],
    &["gdim", "fixture:loop", "--cutoff", "5"],
    &["resolve", "fixture:a2_zero_map"],
    &["nakayama", "fixture:a2_mono"],
    &["nakayama", "fixture:square_identity", "--functor", "nu-minus"],
    &["derived", "fixture:a2_zero_map", "--degree", "1"],
    &["derived", "fixture:a2_zero_map", "--functor", "nu-minus", "--degree", "1"],
    &["ext", "fixture:a2_zero_map", "fixture:a2_mono"],
    &["check", "gproj-p", "fixture:square_identity", "--route", "full"],
    &["check", "monic", "fixture:a2_zero_map"],
    &["check", "gp", "fixture:loop_m_p2"],
    &["check", "lifted", "fixture:a2_mono", "--x", "p-proj", "--f", "proj"],
    &["check", "gp-dim", "fixture:a2_zero_map"],
    &["check", "discrepancy", "fixture:loop_m_p1"],
    &["profile-base", "fixture:dual_numbers"],
    &["enumerate", "fixture:a2", "--dims", "2,2", "--field", "F3", "--check"],
];

fn determinism() -> Outcome {
    let pass = || -> Result<Vec<String>, String> {
        SUITE
            .iter()
            .map(|args| {
                let mut full = vec!["nakayama"];
                full.extend_from_slice(args);
                Ok(run(&ok(parse_args(full))?).report)
            })
            .collect()
    };
    let first = pass()?;
    let second = pass()?;
    for (i, (a, b)) in first.iter().zip(&second).enumerate() {
        ensure(a == b, || format!("in-process reports differ for {:?}", SUITE[i]))?;
    }
    // A separate process must print the same bytes.
    for (i, args) in SUITE.iter().enumerate() {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_nakayama"))
            .args(args.iter())
            .arg("--json")
            .output()
            .map_err(|e| e.to_string())?;
        let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        ensure(text == first[i], || format!("binary report differs for {args:?}"))?;
    }
    let bytes: usize = first.iter().map(String::len).sum();
    Ok(format!("{} commands, {bytes} bytes, identical across runs and processes", SUITE.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("morphism category A2: nu, L_1 nu and membership", morphism_category),
        ("Gorenstein dimension table", gdim_table),
        ("monic iff Gorenstein P-projective on A3 over F2", monic_iff_gproj),
        ("square: shortcut, full criterion and pullback agree", square_routes),
        ("discrepancy of the loop-algebra module M", discrepancy),
        ("Tor independent of the resolution", tor_well_defined),
        ("adjunction triangles and isomorphisms", adjunction_integrity),
        ("R^1, R^2 nu^- by Ext and by coresolution", coresolution_cross_check),
        ("Gorenstein projective dimension on the square <= 2", gp_dimension_bound),
        ("byte-identical JSON reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2} s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
