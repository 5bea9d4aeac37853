use std::collections::BTreeSet;

use lra_core::catalog;
use lra_core::exactpoly::{
    buchberger, is_groebner, normal_form, parse_poly, ratio, s_polynomial, AlgebraPres, IdealPres, MPoly,
    MonomialOrder, DEFAULT_STEP_CAP,
};
use lra_core::groupoid::{
    action_as_comorphism, check_groupoid, check_groupoid_action, check_grpd_comorphism, check_grpd_morphism,
    comorphism_graph, compose_grpd_morphisms, graph_subgroupoid_check, induced_groupoid_action, make_action_groupoid,
    make_direct_product, make_pair, make_phi_product, morphism_graph, restrict_groupoid, FinGroup, GroupoidAction,
    GrpdComorphism, GrpdMorphism, MapKind, RightAction,
};
use lra_core::morphisms::{
    chain_map_check, check_pacomorphism, check_pamorphism, comorphism_graph_check, compose_comorphisms,
    morphism_graph_check, PAComorphism, PAMorphism,
};
use lra_core::pseudoalg::{differential, jacobiator, KForm, PAElement, Pseudoalgebra};
use lra_core::restrict::RestrictionCtx;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly_strategy(nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -6i64..=6, 1i64..=3), 0..=max_terms)
        .prop_map(move |terms| MPoly::from_terms(nvars, terms.into_iter().map(|(m, n, d)| (m, ratio(n, d)))))
}

fn element_strategy(rank: usize, nvars: usize) -> impl Strategy<Value = Vec<MPoly>> {
    prop::collection::vec(poly_strategy(nvars, 3, 2), rank)
}

fn test_ideals() -> Vec<AlgebraPres> {
    vec![
        AlgebraPres::parse(&["x", "y"], &["x^2 + y", "y"]).unwrap(),
        AlgebraPres::parse(&["x", "y"], &["x*y - 1"]).unwrap(),
        AlgebraPres::parse(&["x", "y", "z"], &["y - x^2", "z - x^3"]).unwrap(),
        AlgebraPres::parse(&["x", "y"], &["x^3", "x*y^2 - y"]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(2, 4, 3), b in poly_strategy(2, 4, 3), c in poly_strategy(2, 4, 3)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn render_parse_round_trip(a in poly_strategy(3, 5, 3)) {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        prop_assert_eq!(parse_poly(&a.render(&names), &names).unwrap(), a);
    }

    #[test]
    fn normal_forms_respect_the_ring(k in 0usize..4, a in poly_strategy(3, 4, 3), b in poly_strategy(3, 4, 3)) {
        let alg = &test_ideals()[k];
        let n = alg.nvars();
        let (a, b) = (a.substitute(&(0..3).map(|i| MPoly::var(n, i % n)).collect::<Vec<_>>(), n),
                      b.substitute(&(0..3).map(|i| MPoly::var(n, i % n)).collect::<Vec<_>>(), n));
        let ideal = alg.ideal();
        let na = normal_form(&a, ideal).unwrap();
        prop_assert_eq!(normal_form(&na, ideal).unwrap(), na.clone());
        let nb = normal_form(&b, ideal).unwrap();
        prop_assert_eq!(normal_form(&(&a + &b), ideal).unwrap(), &na + &nb);
        prop_assert_eq!(normal_form(&(&a * &b), ideal).unwrap(), normal_form(&(&na * &nb), ideal).unwrap());
        for g in ideal.generators() {
            prop_assert!(normal_form(&(&a * g), ideal).unwrap().is_zero());
        }
    }

    #[test]
    fn buchberger_output_is_groebner(gens in prop::collection::vec(poly_strategy(2, 3, 2), 1..3)) {
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = buchberger(&gens, order, DEFAULT_STEP_CAP).unwrap();
            prop_assert!(is_groebner(&gb, order));
            let ideal = IdealPres::new(2, gens.clone(), order, DEFAULT_STEP_CAP).unwrap();
            for g in &gens {
                prop_assert!(ideal.contains(g));
            }
            for f in &gb {
                for g in &gb {
                    prop_assert!(ideal.reduce(&s_polynomial(f, g, order)).is_zero());
                }
            }
        }
    }

    #[test]
    fn der_bracket_laws(x in element_strategy(2, 2), y in element_strategy(2, 2), z in element_strategy(2, 2),
                        a in poly_strategy(2, 3, 2)) {
        let e = catalog::der(&["x", "y"]);
        let (x, y, z) = (e.element(x).unwrap(), e.element(y).unwrap(), e.element(z).unwrap());
        prop_assert!(e.is_zero(&e.add(&e.bracket(&x, &y), &e.bracket(&y, &x))));
        prop_assert!(e.is_zero(&jacobiator(&e, &x, &y, &z)));
        // [X, aY] = a[X, Y] + θ(X)(a) Y
        let lhs = e.bracket(&x, &e.scale(&a, &y));
        let rhs = e.add(&e.scale(&a, &e.bracket(&x, &y)), &e.scale(&e.anchor_apply(&x, &a), &y));
        prop_assert_eq!(lhs, rhs);
        // θ([X, Y]) = [θX, θY]
        let br = e.bracket(&x, &y);
        prop_assert_eq!(e.anchor_of(&br), e.anchor_of(&x).commutator(&e.anchor_of(&y)));
    }

    #[test]
    fn action_and_poisson_brackets(c in prop::collection::vec(element_strategy(3, 1), 3),
                                   d in prop::collection::vec(element_strategy(3, 3), 3)) {
        let act = catalog::sl2_action();
        let xs: Vec<PAElement> = c.into_iter().map(|v| act.element(v).unwrap()).collect();
        prop_assert!(act.is_zero(&jacobiator(&act, &xs[0], &xs[1], &xs[2])));
        let pois = catalog::coadjoint_sl2();
        let ys: Vec<PAElement> = d.into_iter().map(|v| pois.element(v).unwrap()).collect();
        prop_assert!(pois.is_zero(&jacobiator(&pois, &ys[0], &ys[1], &ys[2])));
    }

    #[test]
    fn differential_squares_to_zero(a in poly_strategy(3, 4, 3)) {
        for e in [catalog::der(&["x", "y", "z"]), catalog::coadjoint_sl2()] {
            let da = differential(&e, &KForm { degree: 0, coeffs: vec![a.clone()] }).unwrap();
            let dda = differential(&e, &da).unwrap();
            prop_assert!(dda.coeffs.iter().all(MPoly::is_zero));
        }
    }

    #[test]
    fn restriction_brackets_ignore_representatives(x in element_strategy(2, 2), y in element_strategy(2, 2),
                                                   s in element_strategy(2, 2)) {
        let e = catalog::der(&["x", "y"]);
        let a = e.algebra().clone();
        let ctx = RestrictionCtx::new(e.clone(), vec![a.poly("y").unwrap()]).unwrap();
        // force membership in the upper set: the y-coordinate is a multiple of y
        let fix = |v: Vec<MPoly>| e.element(vec![v[0].clone(), a.mul(&v[1], &a.var(1))]).unwrap();
        let (x, y) = (fix(x), fix(y));
        prop_assert!(ctx.in_upper(&x).unwrap() && ctx.in_upper(&y).unwrap());
        prop_assert!(ctx.in_upper(&e.bracket(&x, &y)).unwrap());
        let shift = e.element(s.iter().map(|c| a.mul(c, &a.var(1))).collect()).unwrap();
        prop_assert!(ctx.in_lower(&shift).unwrap());
        let x2 = e.add(&x, &shift);
        prop_assert_eq!(ctx.quotient_bracket(&x2, &y).unwrap(), ctx.quotient_bracket(&x, &y).unwrap());
    }

    #[test]
    fn psisum_members_close(b1 in poly_strategy(1, 3, 3), b2 in poly_strategy(1, 3, 3), b3 in poly_strategy(1, 3, 3)) {
        let ctx = catalog::psisum_square();
        let (z1, z2, z3) = (catalog::psisum_square_member(&ctx, &b1), catalog::psisum_square_member(&ctx, &b2),
                            catalog::psisum_square_member(&ctx, &b3));
        prop_assert!(ctx.membership(&z1));
        let br = ctx.psisum_bracket(&z1, &z2).unwrap();
        prop_assert!(ctx.membership(&br));
        prop_assert!(ctx.is_zero(&jacobiator(&ctx, &z1, &z2, &z3)));
    }

    #[test]
    fn morphism_routes_agree_on_perturbations(seed in 0usize..1000, p in poly_strategy(1, 2, 2)) {
        let valid = catalog::valid_morphisms();
        let m = &valid[seed % valid.len()];
        let mut images: Vec<Vec<MPoly>> = m.images().iter().map(|x| x.coords().to_vec()).collect();
        let (i, k) = ((seed / 7) % images.len(), (seed / 11) % images[0].len());
        let n = m.target().algebra().nvars();
        let p = if n == 0 { MPoly::constant(0, p.coeff(&[0])) } else { p.embed(n, 0) };
        images[i][k] = &images[i][k] + &p;
        let cand = PAMorphism::new(m.source().clone(), m.target().clone(), m.psi().clone(), images).unwrap();
        prop_assert_eq!(check_pamorphism(&cand).is_pass(), morphism_graph_check(&cand).unwrap().is_pass());
    }

    #[test]
    fn comorphism_routes_agree_on_perturbations(seed in 0usize..1000, p in poly_strategy(1, 2, 2)) {
        let valid = catalog::valid_comorphisms();
        let m = &valid[seed % valid.len()];
        let mut images = m.images().to_vec();
        let (j, k) = ((seed / 7) % images.len(), (seed / 11) % images[0].len());
        let n = m.f().algebra().nvars();
        let p = if n == 0 { MPoly::constant(0, p.coeff(&[0])) } else { p.embed(n, 0) };
        images[j][k] = &images[j][k] + &p;
        let cand = PAComorphism::new(m.e().clone(), m.f().clone(), m.psi().clone(), images).unwrap();
        let direct = check_pacomorphism(&cand).is_pass();
        prop_assert_eq!(direct, comorphism_graph_check(&cand).unwrap().is_pass());
        prop_assert_eq!(direct, chain_map_check(&cand).is_pass());
    }

    #[test]
    fn random_groupoid_maps_agree(seed in any::<u64>()) {
        let corpus = catalog::small_groupoids();
        let (g, p) = (&corpus[(seed % 9) as usize].1, &corpus[((seed / 9) % 9) as usize].1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut next = |n: usize| rng.gen_range(0..n);
        let phi: Vec<usize> = (0..g.n_objects()).map(|_| next(p.n_objects())).collect();
        let arrow_map: Vec<usize> = (0..g.n_arrows()).map(|_| next(p.n_arrows())).collect();
        let m = GrpdMorphism { base: phi.clone(), arrow_map };
        prop_assert_eq!(
            check_grpd_morphism(g, p, &m).is_pass(),
            graph_subgroupoid_check(g, p, &phi, MapKind::Morphism, &morphism_graph(&m)).is_pass()
        );
        let table = (0..g.n_objects())
            .flat_map(|x| p.out_arrows(phi[x]).map(move |w| (x, w)).collect::<Vec<_>>())
            .map(|(x, w)| {
                let opts: Vec<usize> = g.out_arrows(x).collect();
                ((x, w), opts[next(opts.len())])
            })
            .collect();
        let c = GrpdComorphism { base: phi.clone(), table };
        prop_assert_eq!(
            check_grpd_comorphism(g, p, &c).is_pass(),
            graph_subgroupoid_check(g, p, &phi, MapKind::Comorphism, &comorphism_graph(&c)).is_pass()
        );
    }

    #[test]
    fn constructors_yield_groupoids(n in 1usize..4, k in 1usize..4, perm in 0usize..6, keep in prop::collection::btree_set(0usize..3, 0..3)) {
        // ℤ/k acting on n points through a cyclic shift of the first min(n, k) points
        let shift = |x: usize, g: usize| if x < n.min(k) { (x + g * (perm % 2)) % n.min(k) } else { x };
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let act = RightAction::new(FinGroup::cyclic(k), &refs, (0..n).map(|x| (0..k).map(|g| shift(x, g)).collect()).collect());
        let act = act.unwrap();
        if let Ok(g) = make_action_groupoid(&act) {
            prop_assert!(check_groupoid(&g).is_pass());
            let pair = make_pair(&refs).unwrap();
            prop_assert!(check_groupoid(&make_direct_product(&g, &pair)).is_pass());
            let phi: Vec<usize> = (0..n).map(|x| (x + perm) % n).collect();
            prop_assert!(check_groupoid(&make_phi_product(&g, &pair, &phi).unwrap()).is_pass());
            let keep: Vec<usize> = keep.into_iter().filter(|&x| x < n).collect();
            prop_assert!(check_groupoid(&restrict_groupoid(&g, &keep).unwrap()).is_pass());
        }
    }
}

#[test]
fn comorphism_compositions_verify() {
    let uv = catalog::uv_comorphism();
    let sq = catalog::square_comorphism();
    let sh = catalog::shift_comorphism();
    let c1 = compose_comorphisms(&uv, &sq).unwrap();
    let c2 = compose_comorphisms(&c1, &sh).unwrap();
    for c in [&c1, &c2] {
        assert!(check_pacomorphism(c).is_pass());
        assert!(chain_map_check(c).is_pass());
    }
}

#[test]
fn groupoid_morphisms_compose() {
    let p3 = make_pair(&["1", "2", "3"]).unwrap();
    let p2 = make_pair(&["a", "b"]).unwrap();
    let p1 = make_pair(&["*"]).unwrap();
    let pf = |phi: &[usize], src: usize, tgt: usize| GrpdMorphism {
        base: phi.to_vec(),
        arrow_map: (0..src * src).map(|g| phi[g / src] * tgt + phi[g % src]).collect(),
    };
    let f = pf(&[0, 1, 1], 3, 2);
    let g = pf(&[0, 0], 2, 1);
    assert!(check_grpd_morphism(&p3, &p2, &f).is_pass());
    assert!(check_grpd_morphism(&p2, &p1, &g).is_pass());
    let h = compose_grpd_morphisms(&f, &g).unwrap();
    assert!(check_grpd_morphism(&p3, &p1, &h).is_pass());
}

#[test]
fn action_round_trips_on_corpus() {
    let mut seen = BTreeSet::new();
    for (_, g) in catalog::small_groupoids() {
        let names: Vec<String> = g.objects().to_vec();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let s = GroupoidAction::from_fn(&g, &refs, (0..g.n_objects()).collect(), |_, a| g.tgt(a));
        assert!(check_groupoid_action(&g, &s).is_pass());
        let (pair, phi) = action_as_comorphism(&g, &s).unwrap();
        let (back, verdict) = induced_groupoid_action(&pair, &g, &phi).unwrap();
        assert!(verdict.is_pass());
        assert_eq!(back, s);
        seen.insert(s.act.len());
    }
    assert!(seen.len() > 1);
}
