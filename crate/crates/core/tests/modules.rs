use std::sync::Arc;

use nakayama_core::enumerate::{random_matrix, random_module, random_quotient};
use nakayama_core::fixtures;
use nakayama_core::{
    ext, hom_map, hom_over_c, map_from_free, projective_cover, projective_resolution, projective_resolution_padded,
    tensor_map, tensor_over_c, tor, tor_table, Category, Dimension, Field, FreeModule, Matrix, Module, ModuleMap,
    Resolution, RightModule,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arc(c: Category) -> Arc<Category> {
    Arc::new(c)
}

fn a2() -> (Arc<Category>, Arc<Category>) {
    let c = arc(fixtures::linear(2, Field::Rational));
    let o = arc(c.opposite());
    (c, o)
}

fn arrow_rep(c: &Arc<Category>, f: i64) -> Module {
    Module::new(c.clone(), vec![1, 1], vec![Matrix::from_i64(Field::Rational, 1, 1, &[f])]).unwrap()
}

#[test]
fn representables_and_simples() {
    let (c, _) = a2();
    let p1 = Module::representable(c.clone(), 0);
    assert_eq!(p1.dims(), &[1, 1]);
    assert!(p1.arrow_matrix(0).is_identity());
    assert_eq!(Module::representable(c.clone(), 1).dims(), &[0, 1]);
    let sq = arc(fixtures::square(Field::Rational));
    assert_eq!(Module::representable(sq.clone(), 0).dims(), &[1, 1, 1, 1]);
    for cat in [c.clone(), sq, arc(fixtures::loop_algebra(Field::Rational))] {
        let o = arc(cat.opposite());
        for x in 0..cat.num_objects() {
            let mut ind = vec![0; cat.num_objects()];
            ind[x] = 1;
            assert_eq!(Module::simple(cat.clone(), x).dims(), &ind[..]);
            assert_eq!(RightModule::simple(cat.clone(), o.clone(), x).dims(), &ind[..]);
        }
    }
}

#[test]
fn duality_examples() {
    let (c, o) = a2();
    let s = RightModule::simple(c.clone(), o.clone(), 1);
    assert_eq!(s.dual(), Module::simple(c.clone(), 1));
    for x in 0..2 {
        let d = RightModule::representable(c.clone(), o.clone(), x).dual();
        let expect: Vec<usize> = (0..2).map(|y| c.hom_dim(y, x)).collect();
        assert_eq!(d.dims(), &expect[..]);
    }
    let inj = RightModule::dual_of(&Module::representable(c.clone(), 0), o.clone()).unwrap();
    assert_eq!(inj.dims(), &[1, 1]);
}

#[test]
fn tensor_examples() {
    let (c, o) = a2();
    let f = Module::new(c.clone(), vec![2, 3], vec![Matrix::from_i64(Field::Rational, 3, 2, &[1, 0, 0, 1, 1, 1])]).unwrap();
    for x in 0..2 {
        let t = tensor_over_c(&RightModule::representable(c.clone(), o.clone(), x), &f).unwrap();
        assert_eq!(t.dim(), f.dim(x));
        let h = hom_over_c(&Module::representable(c.clone(), x), &f).unwrap();
        assert_eq!(h.dim(), f.dim(x));
    }
    let s2 = RightModule::simple(c.clone(), o.clone(), 1);
    assert_eq!(tensor_over_c(&s2, &arrow_rep(&c, 1)).unwrap().dim(), 0);
    let zero = RightModule::new(c.clone(), Module::zero(o.clone())).unwrap();
    assert_eq!(tensor_over_c(&zero, &f).unwrap().dim(), 0);
    let hs = hom_over_c(&Module::simple(c.clone(), 1), &arrow_rep(&c, 0)).unwrap();
    assert_eq!(hs.dim(), 1);
    assert_eq!(hom_over_c(&f, &Module::zero(c.clone())).unwrap().dim(), 0);
}

#[test]
fn kernel_cokernel_examples() {
    let (c, _) = a2();
    let q = Field::Rational;
    let src = Module::new(c.clone(), vec![1, 1], vec![Matrix::from_i64(q, 1, 1, &[1])]).unwrap();
    let dst = Module::new(c.clone(), vec![1, 2], vec![Matrix::from_i64(q, 2, 1, &[1, 1])]).unwrap();
    let f = ModuleMap::new(src.clone(), dst.clone(), vec![Matrix::from_i64(q, 1, 1, &[1]), Matrix::from_i64(q, 2, 1, &[1, 1])]).unwrap();
    let (k, _) = f.kernel();
    let (cok, _) = f.cokernel();
    let (img, _, _) = f.image();
    assert_eq!(k.dims(), &[0, 0]);
    assert_eq!(cok.dims(), &[0, 1]);
    assert_eq!(img.dims(), &[1, 1]);
    assert!(ModuleMap::identity(&src).kernel().0.is_zero());
    assert_eq!(ModuleMap::zero(&src, &dst).unwrap().kernel().0, src);
}

#[test]
fn covers_and_resolutions() {
    let (c, o) = a2();
    let p = Module::representable(c.clone(), 0);
    let cover = projective_cover(&p);
    assert_eq!(cover.free.gens(), &[0]);
    assert!(cover.epi.is_iso());
    assert_eq!(projective_resolution(&p, 4).pdim(), Dimension::Finite(0));
    // The simple right module at the target of the arrow: 0 -> e_1 kQ -> e_2 kQ -> S_2 -> 0.
    let s2 = RightModule::simple(c.clone(), o.clone(), 1);
    let r = projective_resolution(s2.as_left(), 4);
    assert_eq!(r.pdim(), Dimension::Finite(1));
    assert_eq!(r.terms[0].gens(), &[1]);
    assert_eq!(r.terms[1].gens(), &[0]);
    let d = arc(fixtures::dual_numbers(Field::Rational));
    let r = projective_resolution(&Module::simple(d.clone(), 0), 10);
    assert!(!r.completed);
    assert_eq!(r.pdim(), Dimension::AtLeast(10));
    assert!(r.terms.iter().all(|t| t.gens() == [0]));
    // D(kQ e_1) over A_2: the injective with vector (1, 1) has top at the source.
    let inj = RightModule::dual_of(&Module::representable(c.clone(), 0), o.clone()).unwrap();
    assert_eq!(projective_cover(inj.as_left()).free.gens(), &[1]);
}

#[test]
fn tor_and_ext_examples() {
    let (c, o) = a2();
    let s2 = RightModule::simple(c.clone(), o.clone(), 1);
    let r = projective_resolution(s2.as_left(), 4);
    assert_eq!(tor(&r, &arrow_rep(&c, 0), 1).unwrap().dim(), 1);
    assert_eq!(tor(&r, &arrow_rep(&c, 1), 1).unwrap().dim(), 0);
    let f = arrow_rep(&c, 0);
    assert_eq!(tor(&r, &f, 0).unwrap().dim(), tensor_over_c(&s2, &f).unwrap().dim());
    let d = arc(fixtures::dual_numbers(Field::Rational));
    let s = Module::simple(d.clone(), 0);
    let rs = projective_resolution(&s, 6);
    assert_eq!(ext(&rs, &s, 1).unwrap().dim(), 1);
    assert_eq!(ext(&rs, &s, 0).unwrap().dim(), hom_over_c(&s, &s).unwrap().dim());
    let rp = projective_resolution(&Module::representable(d.clone(), 0), 6);
    for i in 1..4 {
        assert_eq!(ext(&rp, &s, i).unwrap().dim(), 0);
    }
}

fn check_resolution(r: &Resolution) {
    let m = &r.module;
    let n = m.category().num_objects();
    let aug = map_from_free(&r.terms[0], &r.augmentation, m);
    assert!(aug.is_epi());
    for k in 1..r.terms.len() {
        let d = r.differential(k).unwrap().module_map();
        let prev = if k == 1 { aug.clone() } else { r.differential(k - 1).unwrap().module_map() };
        let comp = d.then(&prev).unwrap();
        assert!(comp.is_zero(), "d o d = 0");
        for x in 0..n {
            let ker = prev.component(x).cols() - prev.component(x).rank();
            assert_eq!(d.component(x).rank(), ker, "exact at stage {k}");
        }
    }
    if r.completed {
        let last = if r.terms.len() == 1 { aug } else { r.differential(r.terms.len() - 1).unwrap().module_map() };
        assert!(last.is_mono());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resolutions_are_exact(seed in any::<u64>(), which in 0usize..5) {
        let f5 = Field::prime(5).unwrap();
        let cat = arc(match which {
            0 => fixtures::linear(3, f5),
            1 => fixtures::square(f5),
            2 => fixtures::chain(2, f5),
            3 => fixtures::loop_algebra(f5),
            _ => fixtures::cyclic(3, f5),
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_quotient(&cat, 3, 3, &mut rng);
        let r = projective_resolution(&m, 5);
        check_resolution(&r);
        for x in 0..cat.num_objects() {
            prop_assert_eq!(projective_cover(&m).free.gens().iter().filter(|&&g| g == x).count(), m.top_dims()[x]);
        }
    }

    #[test]
    fn kernel_cokernel_rank_nullity(seed in any::<u64>()) {
        let f5 = Field::prime(5).unwrap();
        let cat = arc(fixtures::square(f5));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_quotient(&cat, 3, 2, &mut rng);
        let gens: Vec<usize> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..4)).collect();
        let free = FreeModule::new(cat.clone(), gens.clone());
        let vectors: Vec<Matrix> = gens.iter().map(|&g| random_matrix(f5, m.dim(g), 1, &mut rng)).collect();
        let phi = map_from_free(&free, &vectors, &m);
        let (k, inc) = phi.kernel();
        let (cok, proj) = phi.cokernel();
        let (img, _, _) = phi.image();
        for x in 0..4 {
            prop_assert_eq!(k.dim(x) + img.dim(x), phi.source().dim(x));
            prop_assert_eq!(cok.dim(x) + img.dim(x), m.dim(x));
        }
        prop_assert!(inc.then(&phi).unwrap().is_zero());
        prop_assert!(phi.then(&proj).unwrap().is_zero());
        inc.check_naturality().unwrap();
        proj.check_naturality().unwrap();
    }

    #[test]
    fn tensor_and_hom_are_functorial(seed in any::<u64>()) {
        let f5 = Field::prime(5).unwrap();
        let cat = arc(fixtures::linear(3, f5));
        let op = arc(cat.opposite());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..3)).collect();
        let m = random_module(&cat, &dims, &mut rng).unwrap();
        let gens: Vec<usize> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..3)).collect();
        let free = FreeModule::new(cat.clone(), gens.clone());
        let vectors: Vec<Matrix> = gens.iter().map(|&g| random_matrix(f5, m.dim(g), 1, &mut rng)).collect();
        let phi = map_from_free(&free, &vectors, &m);
        let (q, psi) = m.cokernel_of_random(&mut rng);
        let composite = phi.then(&psi).unwrap();
        let xdims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..3)).collect();
        let xm = random_module(&op, &xdims, &mut rng).unwrap();
        let x = RightModule::new(cat.clone(), xm.clone()).unwrap();
        let id = ModuleMap::identity(&xm);
        let (t0, t1, t2) = (
            tensor_over_c(&x, phi.source()).unwrap(),
            tensor_over_c(&x, &m).unwrap(),
            tensor_over_c(&x, &q).unwrap(),
        );
        let a = tensor_map(&id, &phi, &t0, &t1).unwrap();
        let b = tensor_map(&id, &psi, &t1, &t2).unwrap();
        let ab = tensor_map(&id, &composite, &t0, &t2).unwrap();
        prop_assert_eq!(b.mul(&a).unwrap(), ab);
        let g = random_module(&cat, &xdims, &mut rng).unwrap();
        let idg = ModuleMap::identity(&g);
        let (h0, h1, h2) = (
            hom_over_c(phi.source(), &g).unwrap(),
            hom_over_c(&m, &g).unwrap(),
            hom_over_c(&q, &g).unwrap(),
        );
        // Hom(-, G) is contravariant: Hom(phi) o Hom(psi) = Hom(psi o phi).
        let hp = hom_map(&phi, &idg, &h1, &h0).unwrap();
        let hq = hom_map(&psi, &idg, &h2, &h1).unwrap();
        let hc = hom_map(&composite, &idg, &h2, &h0).unwrap();
        prop_assert_eq!(hp.mul(&hq).unwrap(), hc);
    }

    #[test]
    fn duality_is_involutive(seed in any::<u64>(), which in 0usize..3) {
        let f5 = Field::prime(5).unwrap();
        let cat = arc(match which {
            0 => fixtures::linear(3, f5),
            1 => fixtures::square(f5),
            _ => fixtures::loop_algebra(f5),
        });
        let op = arc(cat.opposite());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_quotient(&cat, 3, 2, &mut rng);
        let d = RightModule::dual_of(&m, op.clone()).unwrap();
        prop_assert_eq!(d.dims(), m.dims());
        prop_assert_eq!(d.dual(), m);
    }
}

/// Tor dimensions through degree 4 for `M` and a random right module.
fn tor_dims(res: &Resolution, f: &Module) -> Vec<usize> {
    tor_table(res, f, 4).unwrap()
}

#[test]
fn tor_independent_of_resolution() {
    let f5 = Field::prime(5).unwrap();
    let cat = arc(fixtures::linear(3, f5));
    let op = arc(cat.opposite());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let mdims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..4)).collect();
        let fdims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..4)).collect();
        let m = random_module(&op, &mdims, &mut rng).unwrap();
        let f = random_module(&cat, &fdims, &mut rng).unwrap();
        let x = rng.gen_range(0..3);
        let extra = random_matrix(f5, m.dim(x), 1, &mut rng);
        let minimal = projective_resolution(&m, 6);
        let padded = projective_resolution_padded(&m, 6, &[(x, extra)]);
        check_resolution(&padded);
        assert_eq!(tor_dims(&minimal, &f), tor_dims(&padded, &f));
    }
}

trait RandomQuotient {
    fn cokernel_of_random(&self, rng: &mut ChaCha8Rng) -> (Module, ModuleMap);
}

impl RandomQuotient for Module {
    /// The quotient by the submodule generated by one random element.
    fn cokernel_of_random(&self, rng: &mut ChaCha8Rng) -> (Module, ModuleMap) {
        let cat = self.category();
        let x = rng.gen_range(0..cat.num_objects());
        let free = FreeModule::new(cat.clone(), vec![x]);
        let v = random_matrix(self.field(), self.dim(x), 1, rng);
        map_from_free(&free, &[v], self).cokernel()
    }
}
