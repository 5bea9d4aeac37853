//! Acceptance gate: one line per criterion, nonzero exit on any failure.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lra_core::catalog;
use lra_core::exactpoly::{
    buchberger, is_groebner, normal_form, ratio, reduce, s_polynomial, AlgebraPres, MPoly, MonomialOrder,
    DEFAULT_STEP_CAP,
};
use lra_core::groupoid::{
    action_as_comorphism, all_base_maps, check_groupoid_action, enumerate_maps, find_isomorphism, group_groupoid,
    induced_groupoid_action, make_direct_product, make_gauge, make_pair, FinGroup, FinGroupoid, GroupoidAction,
    MapKind, PrincipalBundle, Route,
};
use lra_core::morphisms::{
    chain_map_check, check_pacomorphism, check_pamorphism, compare_comorphism_routes, compare_morphism_routes,
    compose_comorphisms, compose_morphisms, PAComorphism, PAMorphism,
};
use lra_core::pseudoalg::{axioms_check, jacobiator, make_klie, Pseudoalgebra};
use lra_core::psisum::{direct_sum, is_isum, triple_inclusion_check, MixedElement, PsiSum, TripleElement};
use lra_core::Execution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, terms: usize, max_exp: u32) -> MPoly {
    let n = rng.gen_range(0..=terms);
    MPoly::from_terms(
        nvars,
        (0..n).map(|_| {
            let mono: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
            (mono, ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
        }),
    )
}

fn axiom_suites() -> Outcome {
    let suites = [
        ("Der(Q[x])", catalog::der(&["x"])),
        ("Der(Q[x,y])", catalog::der(&["x", "y"])),
        ("Der(Q[x,y,z])", catalog::der(&["x", "y", "z"])),
        ("sl2", catalog::sl2()),
        ("sl2 action on Q[x]", catalog::sl2_action()),
        ("coadjoint sl2", catalog::coadjoint_sl2()),
    ];
    let mut timings = Vec::new();
    for (name, e) in suites {
        let start = Instant::now();
        let report = axioms_check(&e);
        let elapsed = start.elapsed();
        ensure(report.is_pass(), || format!("{name}: {}", report.summary()))?;
        ensure(elapsed < Duration::from_secs(10), || format!("{name} took {elapsed:?}"))?;
        timings.push(format!("{name} {}ms", elapsed.as_millis()));
    }
    Ok(timings.join(", "))
}

fn psisum_closure() -> Outcome {
    let ctx = catalog::psisum_square();
    let b = ctx.f().algebra().clone();
    for k in 0..5 {
        let z = catalog::psisum_square_member(&ctx, &b.poly(&format!("y^{k}")).unwrap());
        ensure(ctx.membership(&z), || format!("generator y^{k} d/dy is not a member"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let member = |rng: &mut ChaCha8Rng| catalog::psisum_square_member(&ctx, &random_poly(rng, 1, 4, 4));
    for k in 0..50 {
        let (z1, z2) = (member(&mut rng), member(&mut rng));
        let br = ctx.psisum_bracket(&z1, &z2).map_err(|e| e.to_string())?;
        ensure(ctx.membership(&br), || format!("bracket {k} left the sum"))?;
    }
    for k in 0..20 {
        let (z1, z2, z3) = (member(&mut rng), member(&mut rng), member(&mut rng));
        ensure(ctx.is_zero(&jacobiator(&ctx, &z1, &z2, &z3)), || format!("Jacobi fails on triple {k}"))?;
    }
    Ok("5 generators, 50 brackets, 20 Jacobi triples".into())
}

fn route_agreement() -> Outcome {
    let ms = catalog::morphism_suite();
    let cs = catalog::comorphism_suite();
    ensure(ms.len() >= 20 && cs.len() >= 20, || format!("suites too small: {} and {}", ms.len(), cs.len()))?;
    let mr = compare_morphism_routes(&ms, Execution::default()).map_err(|e| e.to_string())?;
    let cr = compare_comorphism_routes(&cs, Execution::default()).map_err(|e| e.to_string())?;
    if let Some(i) = mr.iter().position(|r| !r.agree()) {
        return Err(format!("morphism candidate {i}: direct {} graph {}", mr[i].direct, mr[i].graph));
    }
    if let Some(i) = cr.iter().position(|r| !r.agree()) {
        return Err(format!("comorphism candidate {i}: direct {} graph {}", cr[i].direct, cr[i].graph));
    }
    let valid = |rs: &[lra_core::morphisms::RouteComparison]| rs.iter().filter(|r| r.direct).count();
    Ok(format!(
        "{} morphisms ({} valid), {} comorphisms ({} valid)",
        mr.len(),
        valid(&mr),
        cr.len(),
        valid(&cr)
    ))
}

fn chain_map_agreement() -> Outcome {
    let cs = catalog::comorphism_suite();
    let verdicts = Execution::default().map(&cs, |m| (check_pacomorphism(m).is_pass(), chain_map_check(m).is_pass()));
    if let Some(i) = verdicts.iter().position(|(a, b)| a != b) {
        return Err(format!("candidate {i}: direct {} chain map {}", verdicts[i].0, verdicts[i].1));
    }
    Ok(format!("{} candidates", cs.len()))
}

fn comorphism_laws() -> Result<(), String> {
    let (uv, sq, sh) = (catalog::uv_comorphism(), catalog::square_comorphism(), catalog::shift_comorphism());
    let c = |a: &PAComorphism, b: &PAComorphism| compose_comorphisms(a, b).map_err(|e| e.to_string());
    let left = c(&c(&uv, &sq)?, &sh)?;
    let right = c(&uv, &c(&sq, &sh)?)?;
    for m in [&c(&uv, &sq)?, &left] {
        let r = check_pacomorphism(m);
        ensure(r.is_pass(), || format!("composite comorphism fails: {}", r.summary()))?;
    }
    ensure(left == right, || "comorphism composition is not associative".into())?;
    for m in [&uv, &sq, &sh] {
        ensure(c(&PAComorphism::identity(m.e()), m)? == *m, || "left identity comorphism".into())?;
        ensure(c(m, &PAComorphism::identity(m.f()))? == *m, || "right identity comorphism".into())?;
    }
    Ok(())
}

fn morphism_laws() -> Result<(), String> {
    let valid = catalog::valid_morphisms();
    let (inv, line, lift) = (&valid[3], &valid[1], &valid[4]);
    let c = |a: &PAMorphism, b: &PAMorphism| compose_morphisms(a, b).map_err(|e| e.to_string());
    let left = c(&c(inv, line)?, lift)?;
    let right = c(inv, &c(line, lift)?)?;
    for m in [&c(inv, line)?, &left] {
        let r = check_pamorphism(m);
        ensure(r.is_pass(), || format!("composite morphism fails: {}", r.summary()))?;
    }
    ensure(left == right, || "morphism composition is not associative".into())?;
    for m in [inv, line, lift] {
        ensure(c(&PAMorphism::identity(m.source()), m)? == *m, || "left identity morphism".into())?;
        ensure(c(m, &PAMorphism::identity(m.target()))? == *m, || "right identity morphism".into())?;
    }
    Ok(())
}

fn category_laws() -> Outcome {
    comorphism_laws()?;
    morphism_laws()?;
    Ok("associativity and identities for both kinds".into())
}

fn triple_inclusion() -> Outcome {
    let sums = catalog::chained_triple();
    let inner = sums.inner();
    let g = sums.right().f().f().clone();
    let c = g.algebra().clone();
    let w = catalog::psisum_square_member(inner, &inner.f().algebra().one());
    let yw = catalog::psisum_square_member(inner, &inner.f().algebra().poly("y").unwrap());
    let mut elements = Vec::new();
    for zeta in ["1", "z", "z^2 + 1", "z^3 - z", "1/2*z^4"] {
        let zeta = c.poly(zeta).unwrap();
        let ck = c.mul(&c.poly("3*z^2").unwrap(), &zeta);
        let z = g.element(vec![zeta]).unwrap();
        elements.push(TripleElement { terms: vec![(w.clone(), ck.clone())], z: z.clone() });
        // z·w and -z^4·w cancel against yw ⊗ z after θ
        let shifted = vec![(w.clone(), ck), (yw.clone(), c.poly("z").unwrap()), (w.clone(), c.poly("-z^4").unwrap())];
        elements.push(TripleElement { terms: shifted, z });
    }
    let report = triple_inclusion_check(&sums, &elements).map_err(|e| e.to_string())?;
    ensure(report.is_pass(), || report.summary())?;
    Ok(format!("{} members, {} checks", elements.len(), report.checks.len()))
}

fn groupoid_equivalence() -> Outcome {
    let corpus = catalog::small_groupoids();
    let start = Instant::now();
    let (mut cases, mut maps) = (0usize, 0usize);
    for (gn, gamma) in &corpus {
        for (pn, pi) in &corpus {
            for phi in all_base_maps(gamma.n_objects(), pi.n_objects()) {
                for kind in [MapKind::Morphism, MapKind::Comorphism] {
                    let run = |route| {
                        enumerate_maps(gamma, pi, &phi, kind, route, Execution::default())
                            .map(|v| v.into_iter().collect::<BTreeSet<_>>())
                            .map_err(|e| format!("{gn} -> {pn}: {e}"))
                    };
                    let (direct, graph) = (run(Route::Direct)?, run(Route::Graph)?);
                    ensure(direct == graph, || {
                        format!("{kind} {gn} -> {pn} over {phi:?}: {} direct, {} graph", direct.len(), graph.len())
                    })?;
                    cases += 1;
                    maps += direct.len();
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} groupoids, {cases} cases, {maps} maps", corpus.len()))
}

fn action_tables() -> Vec<(FinGroupoid, GroupoidAction)> {
    let tautological = |g: FinGroupoid| {
        let names: Vec<String> = g.objects().to_vec();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let s = GroupoidAction::from_fn(&g, &refs, (0..g.n_objects()).collect(), |_, a| g.tgt(a));
        (g, s)
    };
    let corpus: BTreeMap<String, FinGroupoid> = catalog::small_groupoids().into_iter().collect();
    let mut out = vec![
        tautological(corpus["pair(2)"].clone()),
        tautological(corpus["Z/2 swapping 2 points"].clone()),
        tautological(corpus["Z/2 on 3 points"].clone()),
    ];
    // over a single object the arrow index is the group element
    let z2 = group_groupoid(&FinGroup::cyclic(2));
    let s = GroupoidAction::from_fn(&z2, &["a", "b"], vec![0, 0], |z, a| z ^ a);
    out.push((z2, s));
    let z3 = group_groupoid(&FinGroup::cyclic(3));
    let s = GroupoidAction::from_fn(&z3, &["a", "b", "c"], vec![0, 0, 0], |z, a| (z + a) % 3);
    out.push((z3, s));
    // pair(2) matching {a, b} over 1 with {c, d} over 2
    let p2 = corpus["pair(2)"].clone();
    let s = GroupoidAction::from_fn(&p2, &["a", "b", "c", "d"], vec![0, 0, 1, 1], |z, a| {
        2 * p2.tgt(a) + z % 2
    });
    out.push((p2, s));
    out
}

fn action_round_trip() -> Outcome {
    let tables = action_tables();
    let distinct: BTreeSet<_> = tables.iter().map(|(_, s)| s.clone().act).collect();
    ensure(distinct.len() >= 5, || format!("only {} distinct tables", distinct.len()))?;
    for (k, (gamma, s)) in tables.iter().enumerate() {
        let r = check_groupoid_action(gamma, s);
        ensure(r.is_pass(), || format!("table {k}: {}", r.summary()))?;
        let (pair, phi) = action_as_comorphism(gamma, s).map_err(|e| e.to_string())?;
        let (back, verdict) = induced_groupoid_action(&pair, gamma, &phi).map_err(|e| e.to_string())?;
        ensure(verdict.is_pass(), || format!("table {k}: {}", verdict.summary()))?;
        ensure(back == *s, || format!("table {k} does not round trip"))?;
    }
    Ok(format!("{} tables", tables.len()))
}

fn gauge() -> Outcome {
    let g = make_gauge(&PrincipalBundle::trivial(&["1", "2"], FinGroup::cyclic(2))).map_err(|e| e.to_string())?;
    ensure(g.n_arrows() == 8, || format!("{} arrows", g.n_arrows()))?;
    let target = make_direct_product(&make_pair(&["1", "2"]).unwrap(), &group_groupoid(&FinGroup::cyclic(2)));
    let iso = find_isomorphism(&g, &target).map_err(|e| e.to_string())?;
    ensure(iso.is_some(), || "no isomorphism to pair x Z/2".into())?;
    for n in 1..=3 {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let g = make_gauge(&PrincipalBundle::trivial(&refs, FinGroup::cyclic(1))).map_err(|e| e.to_string())?;
        let p = make_pair(&refs).unwrap();
        let same = g.objects() == p.objects()
            && g.n_arrows() == p.n_arrows()
            && (0..p.n_arrows()).all(|a| g.src(a) == p.src(a) && g.tgt(a) == p.tgt(a) && g.inv(a) == p.inv(a))
            && (0..n).all(|x| g.id(x) == p.id(x))
            && g.composition_table() == p.composition_table();
        ensure(same, || format!("trivial group over {n} points differs from the pair groupoid"))?;
    }
    Ok("8 arrows, isomorphic to pair(2) x Z/2, trivial group gives pair(P)".into())
}

fn isum_degeneracy() -> Outcome {
    let mut c = BTreeMap::new();
    c.insert((0, 1), vec![ratio(0, 1), ratio(1, 1)]);
    let aff = make_klie(vec!["X".into(), "Y".into()], &c).map_err(|e| e.to_string())?;
    let e = catalog::sl2();
    let q = AlgebraPres::rationals();
    let psi = lra_core::exactpoly::AlgMorphism::identity(&q);
    let ctx = PsiSum::new(e.clone(), aff.clone(), psi).map_err(|e| e.to_string())?;
    ensure(is_isum(&ctx), || "not recognized as an I-sum".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let mut coef = |k: usize| (0..k).map(|_| MPoly::constant(0, ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)))).collect::<Vec<_>>();
        let tensor = coef(e.rank());
        let y = aff.element(coef(aff.rank())).unwrap();
        let z = ctx.element(tensor, y).map_err(|e| e.to_string())?;
        ensure(ctx.membership(&z), || "an element of the direct sum was rejected".into())?;
    }
    let (sum, _) = direct_sum(&e, &aff).map_err(|e| e.to_string())?;
    let m_e = e.rank();
    let basis = |i: usize| -> MixedElement<_> {
        if i < m_e {
            ctx.tensor_basis(i)
        } else {
            ctx.from_f(aff.basis_element(i - m_e))
        }
    };
    let n = sum.rank();
    for i in 0..n {
        for j in 0..n {
            let br = ctx.psisum_bracket(&basis(i), &basis(j)).map_err(|e| e.to_string())?;
            let expected = sum.bracket(&sum.basis_element(i), &sum.basis_element(j));
            let coords = expected.coords();
            ensure(br.tensor == coords[..m_e] && br.f_part.coords() == &coords[m_e..], || {
                format!("bracket of basis vectors {i}, {j} differs from the direct sum")
            })?;
        }
    }
    Ok(format!("100 random members, {} basis pairs", n * n))
}

fn groebner_layer() -> Outcome {
    let start = Instant::now();
    let ideals = [
        AlgebraPres::parse(&["x", "y"], &["x^2 + y", "y"]).unwrap(),
        AlgebraPres::parse(&["x", "y"], &["x*y - 1"]).unwrap(),
        AlgebraPres::parse(&["x", "y", "z"], &["y - x^2", "z - x^3"]).unwrap(),
        AlgebraPres::parse(&["x", "y"], &["x^3", "x*y^2 - y"]).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (k, a) in ideals.iter().enumerate() {
        let ideal = a.ideal();
        let n = a.nvars();
        let nf = |p: &MPoly| normal_form(p, ideal).map_err(|e| e.to_string());
        for t in 0..200 {
            let p = random_poly(&mut rng, n, 5, 3);
            let q = random_poly(&mut rng, n, 5, 3);
            let (np, nq) = (nf(&p)?, nf(&q)?);
            ensure(nf(&np)? == np, || format!("ideal {k}, sample {t}: not idempotent"))?;
            ensure(nf(&(&p + &q))? == &np + &nq, || format!("ideal {k}, sample {t}: not additive"))?;
            ensure(nf(&(&p * &q))? == nf(&(&np * &nq))?, || format!("ideal {k}, sample {t}: not multiplicative"))?;
            for g in ideal.generators() {
                ensure(nf(&(&p * g))?.is_zero(), || format!("ideal {k}, sample {t}: multiple of a generator survives"))?;
            }
        }
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = buchberger(ideal.generators(), order, DEFAULT_STEP_CAP).map_err(|e| e.to_string())?;
            ensure(is_groebner(&gb, order), || format!("ideal {k}: output is not a Groebner basis"))?;
            for f in &gb {
                for g in &gb {
                    ensure(reduce(&s_polynomial(f, g, order), &gb, order).is_zero(), || {
                        format!("ideal {k}: an S-pair does not reduce to zero")
                    })?;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{} ideals x 200 samples", ideals.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("axiom suites", axiom_suites),
        ("psi-sum membership and closure", psisum_closure),
        ("direct and graph routes agree", route_agreement),
        ("chain map agrees with the direct verifier", chain_map_agreement),
        ("category laws", category_laws),
        ("triple-sum inclusion", triple_inclusion),
        ("groupoid graph equivalence, exhaustive", groupoid_equivalence),
        ("action round trip", action_round_trip),
        ("gauge groupoid", gauge),
        ("I-sum degeneracy", isum_degeneracy),
        ("Groebner layer", groebner_layer),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name} ({ms} ms): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name} ({ms} ms): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
