use std::sync::Arc;

use nakayama_core::enumerate::{enumerate_representations, random_matrix, random_module, random_quotient, DEFAULT_SEARCH_LIMIT};
use nakayama_core::fixtures;
use nakayama_core::{
    base_gp, discrepancy_probe, gp_resolution_dimension, is_gp_functor, is_gproj_p, is_gproj_p_with, is_monic,
    lifted_class_membership, map_from_free, self_injective_dimension, totally_acyclic_window, AdjointTriple,
    BaseGorensteinProfile, Category, Error, FClass, Field, FreeModule, GpDimension, Matrix, Membership, Module,
    Representation, Route, Setting, Verdict, XClass,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arc(c: Category) -> Arc<Category> {
    Arc::new(c)
}

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn plain(c: Category, cutoff: usize) -> (Arc<Setting>, AdjointTriple) {
    let s = Setting::plain(arc(c));
    let t = AdjointTriple::new(&s, cutoff).unwrap();
    (s, t)
}

fn point_profile(field: Field) -> BaseGorensteinProfile {
    self_injective_dimension(&arc(nakayama_core::point_category(field)), 4).unwrap()
}

/// Definite verdicts carry a certificate; inconclusive ones name the blocking cutoff.
fn well_formed(v: &Verdict) {
    match v.member {
        Membership::Inconclusive => assert!(v.blocking_cutoff.is_some()),
        _ => assert!(
            !v.table.is_empty() || v.witness.is_some() || v.iso_failure.is_some() || v.window.is_some() || !v.parts.is_empty()
                || v.hypotheses.iter().any(|h| matches!(h, nakayama_core::Hypothesis::IwanagaGorenstein(0)))
        ),
    }
    for (_, p) in &v.parts {
        well_formed(p);
    }
}

fn rank(m: &Matrix) -> usize {
    m.rank()
}

#[test]
fn a2_membership_is_injectivity() {
    let (s, t) = plain(fixtures::linear(2, f5()), 6);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..40 {
        let dims = vec![rng.gen_range(0..5), rng.gen_range(0..5)];
        let m = random_module(&s.cat, &dims, &mut rng).unwrap();
        let injective = rank(m.arrow_matrix(0)) == dims[0];
        let f = Representation::in_setting(&s, m).unwrap();
        let v = is_gproj_p(&t, &f).unwrap();
        well_formed(&v);
        assert_eq!(v.is_yes(), injective);
        assert_eq!(v.route, "shortcut");
        let full = is_gproj_p_with(&t, &f, Route::Full).unwrap();
        well_formed(&full);
        assert_eq!(full.member, v.member);
        let gp = is_gp_functor(&t, &f, &point_profile(f5())).unwrap();
        assert_eq!(gp.is_yes(), injective);
    }
}

/// Injective `F(b)`, `F(g)` and a pullback square.
fn square_oracle(m: &Module) -> bool {
    let (a, mu, b, g) = (m.arrow_matrix(0), m.arrow_matrix(1), m.arrow_matrix(2), m.arrow_matrix(3));
    if rank(b) != m.dim(1) || rank(g) != m.dim(2) {
        return false;
    }
    let joint = b.hstack(&g.neg()).unwrap();
    let pullback = joint.cols() - joint.rank();
    let into = a.vstack(mu).unwrap();
    rank(&into) == m.dim(0) && pullback == m.dim(0)
}

#[test]
fn square_routes_agree_exhaustively() {
    let (s, t) = plain(fixtures::square(f2()), 6);
    let mut count = 0;
    for m in enumerate_representations(&s.cat, &[1, 1, 1, 1], DEFAULT_SEARCH_LIMIT).unwrap() {
        let f = Representation::in_setting(&s, m.clone()).unwrap();
        let short = is_gproj_p_with(&t, &f, Route::Shortcut).unwrap();
        let full = is_gproj_p_with(&t, &f, Route::Full).unwrap();
        well_formed(&short);
        well_formed(&full);
        assert_eq!(short.member, full.member);
        assert_eq!(short.is_yes(), square_oracle(&m));
        count += 1;
    }
    assert!(count > 16);
}

#[test]
fn square_nu_is_the_cokernel_table() {
    let (s, t) = plain(fixtures::square(f5()), 6);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let m = random_quotient(&s.cat, 3, 3, &mut rng);
        let (b, g) = (m.arrow_matrix(2), m.arrow_matrix(3));
        let expect = [
            m.dim(3),
            m.dim(3) - rank(g),
            m.dim(3) - rank(b),
            m.dim(3) - b.hstack(g).unwrap().rank(),
        ];
        let nu = t.nu(&Representation::in_setting(&s, m).unwrap()).unwrap();
        assert_eq!(nu.module().dims(), &expect);
    }
}

#[test]
fn p_projectives_are_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for c in [fixtures::square(f5()), fixtures::loop_algebra(f5()), fixtures::chain(2, f5())] {
        let (s, t) = plain(c, 6);
        for _ in 0..4 {
            let parts: Vec<Module> = (0..s.cat.num_objects())
                .map(|_| Module::new(s.base.clone(), vec![rng.gen_range(0..3)], vec![]).unwrap())
                .collect();
            let p = t.i_shriek(&parts).unwrap();
            let v = is_gproj_p(&t, &p).unwrap();
            well_formed(&v);
            assert!(v.is_yes());
            let l = lifted_class_membership(&t, &p, XClass::PProj, FClass::Proj, &point_profile(f5())).unwrap();
            assert!(l.is_yes());
        }
    }
}

#[test]
fn monic_examples() {
    let q = Field::Rational;
    let c = arc(fixtures::linear(2, q));
    let s = Setting::plain(c.clone());
    let id = Module::new(c.clone(), vec![1, 1], vec![Matrix::identity(q, 1)]).unwrap();
    assert!(is_monic(&Representation::in_setting(&s, id).unwrap()).unwrap().is_yes());
    let zero = Module::new(c.clone(), vec![1, 1], vec![Matrix::zeros(q, 1, 1)]).unwrap();
    let v = is_monic(&Representation::in_setting(&s, zero).unwrap()).unwrap();
    assert!(v.is_no());
    let w = v.witness.unwrap();
    assert_eq!(w.object, 1);
    assert_eq!(w.vector, Matrix::identity(q, 1));
    let c = arc(fixtures::two_into_one(q));
    let s = Setting::plain(c.clone());
    let m = Module::new(c.clone(), vec![1, 1, 1], vec![Matrix::identity(q, 1), Matrix::identity(q, 1)]).unwrap();
    let v = is_monic(&Representation::in_setting(&s, m).unwrap()).unwrap();
    assert!(v.is_no());
    assert_eq!(v.witness.unwrap().vector.rows(), 2);
    let sq = Setting::plain(arc(fixtures::square(q)));
    assert_eq!(is_monic(&Representation::zero(&sq)).err(), Some(Error::NotPathCategory));
}

#[test]
fn monic_agrees_with_gproj_p_on_a3() {
    let (s, t) = plain(fixtures::linear(3, f2()), 4);
    let mut count = 0;
    for m in enumerate_representations(&s.cat, &[2, 2, 2], DEFAULT_SEARCH_LIMIT).unwrap() {
        let f = Representation::in_setting(&s, m).unwrap();
        assert_eq!(is_monic(&f).unwrap().member, is_gproj_p(&t, &f).unwrap().member);
        count += 1;
    }
    // sum over (d1, d2, d3) in {0,1,2}^3 of 2^(d1 d2 + d2 d3)
    assert_eq!(count, 499);
}

#[test]
fn base_profiles() {
    let q = Field::Rational;
    let p = self_injective_dimension(&arc(fixtures::two_points(q)), 6).unwrap();
    assert_eq!(p.dimension, Some(0));
    let p = self_injective_dimension(&arc(fixtures::dual_numbers(q)), 6).unwrap();
    assert_eq!(p.dimension, Some(0));
    let p = self_injective_dimension(&arc(fixtures::linear(2, q)), 6).unwrap();
    assert_eq!(p.dimension, Some(1));
    assert_eq!(p.left, p.right);
    let p = self_injective_dimension(&arc(fixtures::loop_algebra(q)), 6).unwrap();
    assert_eq!(p.dimension, None);
}

#[test]
fn base_gp_examples() {
    let q = Field::Rational;
    let k2 = arc(fixtures::two_points(q));
    let prof = self_injective_dimension(&k2, 4).unwrap();
    for d in [vec![0, 0], vec![1, 3], vec![2, 0]] {
        let m = Module::new(k2.clone(), d, vec![]).unwrap();
        assert!(base_gp(&m, &prof, 4).unwrap().is_yes());
    }
    let d = arc(fixtures::dual_numbers(q));
    let prof = self_injective_dimension(&d, 4).unwrap();
    for m in [Module::simple(d.clone(), 0), Module::representable(d.clone(), 0)] {
        let v = base_gp(&m, &prof, 4).unwrap();
        well_formed(&v);
        assert!(v.is_yes());
    }
    let l = arc(fixtures::loop_algebra(q));
    let prof = self_injective_dimension(&l, 6).unwrap();
    let v = base_gp(&Module::simple(l.clone(), 1), &prof, 6).unwrap();
    well_formed(&v);
    assert!(v.is_no());
    // Without a finite profile, vanishing Ext is never a bare yes.
    let v = base_gp(&Module::simple(l.clone(), 0), &prof, 6).unwrap();
    assert_ne!(v.member, Membership::Yes);
    let declared = BaseGorensteinProfile::declared(d.clone(), 0);
    assert!(base_gp(&Module::simple(d, 0), &declared, 4).unwrap().is_yes());
}

#[test]
fn gp_functor_examples() {
    let (s, t) = plain(fixtures::linear(2, f5()), 6);
    let prof = point_profile(f5());
    let s1 = Representation::in_setting(&s, Module::simple(s.cat.clone(), 0)).unwrap();
    let v = is_gp_functor(&t, &s1, &prof).unwrap();
    well_formed(&v);
    assert!(v.is_no());
    let mono = Module::new(s.cat.clone(), vec![1, 2], vec![Matrix::from_i64(f5(), 2, 1, &[1, 0])]).unwrap();
    let f = Representation::in_setting(&s, mono).unwrap();
    assert!(lifted_class_membership(&t, &f, XClass::GprojP, FClass::Proj, &prof).unwrap().is_yes());
    let a = lifted_class_membership(&t, &f, XClass::GprojP, FClass::Gp, &prof).unwrap();
    assert_eq!(a.member, is_gp_functor(&t, &f, &prof).unwrap().member);
    assert!(lifted_class_membership(&t, &s1, XClass::PProj, FClass::Proj, &prof).unwrap().is_no());
}

#[test]
fn gp_resolution_dimensions() {
    let (s, t) = plain(fixtures::linear(2, f5()), 6);
    let prof = point_profile(f5());
    let p = Representation::in_setting(&s, Module::representable(s.cat.clone(), 0)).unwrap();
    assert_eq!(gp_resolution_dimension(&t, &p, &prof).unwrap().0, GpDimension::Exact(0));
    let s1 = Representation::in_setting(&s, Module::simple(s.cat.clone(), 0)).unwrap();
    assert_eq!(gp_resolution_dimension(&t, &s1, &prof).unwrap().0, GpDimension::Exact(1));
    let (s, t) = plain(fixtures::square(f5()), 6);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let f = Representation::in_setting(&s, random_quotient(&s.cat, 3, 3, &mut rng)).unwrap();
        let (d, verdicts) = gp_resolution_dimension(&t, &f, &prof).unwrap();
        verdicts.iter().for_each(well_formed);
        assert!(d.upper_bound().unwrap() <= 2);
    }
}

#[test]
fn totally_acyclic_windows_for_members() {
    let prof = point_profile(f2());
    for (c, bound) in [
        (fixtures::linear(2, f2()), vec![1, 2]),
        (fixtures::square(f2()), vec![1, 1, 1, 1]),
        (fixtures::cyclic(3, f2()), vec![1, 1, 1]),
        (fixtures::chain(2, f2()), vec![1, 1, 1]),
    ] {
        let (s, t) = plain(c, 6);
        for m in enumerate_representations(&s.cat, &bound, DEFAULT_SEARCH_LIMIT).unwrap() {
            let f = Representation::in_setting(&s, m.clone()).unwrap();
            let yes = is_gp_functor(&t, &f, &prof).unwrap().is_yes();
            let w = totally_acyclic_window(&m, 3).unwrap();
            if yes {
                assert!(w.exact && w.hom_exact, "{:?}", m);
            }
        }
    }
}

#[test]
fn members_closed_under_sums_summands_and_extensions() {
    let (s, t) = plain(fixtures::linear(2, f2()), 4);
    let all = enumerate_representations(&s.cat, &[1, 2], DEFAULT_SEARCH_LIMIT).unwrap();
    let yes = |m: &Module| is_gproj_p(&t, &Representation::in_setting(&s, m.clone()).unwrap()).unwrap().is_yes();
    let flags: Vec<bool> = all.iter().map(yes).collect();
    for (i, x) in all.iter().enumerate() {
        for (j, y) in all.iter().enumerate().skip(i) {
            let sum = x.direct_sum(y).unwrap();
            assert_eq!(yes(&sum), flags[i] && flags[j]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for _ in 0..200 {
        let e = random_quotient(&s.cat, 3, 2, &mut rng);
        let x = rng.gen_range(0..2);
        let free = FreeModule::new(s.cat.clone(), vec![x]);
        let v = random_matrix(f2(), e.dim(x), 1, &mut rng);
        let inc = map_from_free(&free, &[v], &e);
        let (sub, _, _) = inc.image();
        let (quot, _) = inc.cokernel();
        if yes(&sub) && yes(&quot) {
            assert!(yes(&e));
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn members_preserve_base_gp() {
    let prof = point_profile(f2());
    for (c, bound) in [
        (fixtures::linear(3, f2()), vec![1, 1, 1]),
        (fixtures::square(f2()), vec![1, 1, 1, 1]),
        (fixtures::cyclic(3, f2()), vec![1, 1, 1]),
    ] {
        let (s, t) = plain(c, 6);
        for m in enumerate_representations(&s.cat, &bound, DEFAULT_SEARCH_LIMIT).unwrap() {
            let f = Representation::in_setting(&s, m).unwrap();
            if is_gp_functor(&t, &f, &prof).unwrap().is_yes() {
                let nu = t.nu(&f).unwrap();
                for c in 0..s.cat.num_objects() {
                    assert!(base_gp(&nu.component(c), &prof, 4).unwrap().is_yes());
                }
            }
        }
    }
}

#[test]
fn square_zero_count_over_f2() {
    // 0, E12, E21 and the all-ones matrix.
    let d = arc(fixtures::dual_numbers(f2()));
    let all = enumerate_representations(&d, &[2], DEFAULT_SEARCH_LIMIT).unwrap();
    let exact: Vec<Module> = all.into_iter().filter(|m| m.dim(0) == 2).collect();
    let mut oracle = 0;
    for bits in 0u8..16 {
        let e = |k: u8| ((bits >> k) & 1) as i64;
        let (a, b, c, dd) = (e(0), e(1), e(2), e(3));
        let sq = [a * a + b * c, a * b + b * dd, c * a + dd * c, c * b + dd * dd];
        if sq.iter().all(|x| x % 2 == 0) {
            oracle += 1;
        }
    }
    assert_eq!(exact.len(), oracle);
    assert_eq!(exact.len(), 4);
}

#[test]
fn discrepancy_pairs() {
    let q = Field::Rational;
    let l1 = arc(fixtures::loop_algebra(q));
    let l2 = arc(l1.opposite());
    let s1 = Setting::with_base(l1.clone(), l2.clone()).unwrap();
    let s2 = Setting::with_base(l2.clone(), l1.clone()).unwrap();
    let t1 = AdjointTriple::new(&s1, 6).unwrap();
    let t2 = AdjointTriple::new(&s2, 6).unwrap();
    let p1 = self_injective_dimension(&l2, 6).unwrap();
    let p2 = self_injective_dimension(&l1, 6).unwrap();
    let m = fixtures::loop_module(&s1).unwrap();
    let (a, b) = discrepancy_probe((&t1, &p1), (&t2, &p2), &m).unwrap();
    well_formed(&a);
    well_formed(&b);
    assert_eq!((a.member, b.member), (Membership::No, Membership::Yes));
    let w = a.witness.unwrap();
    // s kills the witness but does not hit it.
    let s = m.module().arrow_matrix(s1.c_arrow(1, 0));
    assert!(s.mul(&w.vector).unwrap().is_zero());
    assert!(!s.spans(&w.vector).unwrap());
    for f in [Representation::zero(&s1), t1.i_shriek(&[Module::representable(l2.clone(), 1), Module::zero(l2.clone())]).unwrap()] {
        let (a, b) = discrepancy_probe((&t1, &p1), (&t2, &p2), &f).unwrap();
        assert_eq!((a.member, b.member), (Membership::Yes, Membership::Yes), "{:?}", f.module().dims());
    }
}
