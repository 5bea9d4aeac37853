//! Morphisms and comorphisms of finite groupoids, their graphs, and
//! exhaustive enumeration.
//!
//! Throughout, `Γ` is a groupoid on `M`, `Π` a groupoid on `N` and
//! `φ: M → N` the base map. A morphism is an arrow map `Γ → Π`; a comorphism
//! is a table `Φ: M ×_φ Π → Γ` on `M ×_φ Π = {(x, w) | φ(x) = α_Π(w)}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::report::Report;

use super::{record_first, FinGroupoid};

/// Largest candidate space [`enumerate_maps`] will search.
pub const SEARCH_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Morphism,
    Comorphism,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::Morphism => "morphism",
            MapKind::Comorphism => "comorphism",
        })
    }
}

/// Which decision procedure filters enumerated candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// The defining conditions.
    Direct,
    /// The graph is a subgroupoid of the φ-product.
    Graph,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrpdMorphism {
    pub base: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrpdComorphism {
    pub base: Vec<usize>,
    /// `table[(x, w)] = Φ(x, w)`.
    pub table: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GrpdMap {
    Morphism(GrpdMorphism),
    Comorphism(GrpdComorphism),
}

impl GrpdMap {
    pub fn kind(&self) -> MapKind {
        match self {
            GrpdMap::Morphism(_) => MapKind::Morphism,
            GrpdMap::Comorphism(_) => MapKind::Comorphism,
        }
    }

    pub fn base(&self) -> &[usize] {
        match self {
            GrpdMap::Morphism(m) => &m.base,
            GrpdMap::Comorphism(m) => &m.base,
        }
    }
}

/// Every map from an `m`-element set to an `n`-element set.
pub fn all_base_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out.into_iter().flat_map(|p| (0..n).map(move |y| [p.clone(), vec![y]].concat())).collect();
    }
    out
}

fn base_ok(gamma: &FinGroupoid, pi: &FinGroupoid, phi: &[usize]) -> bool {
    phi.len() == gamma.n_objects() && phi.iter().all(|&y| y < pi.n_objects())
}

/// `M ×_φ Π` in the order used by enumeration.
pub(crate) fn pullback_domain(gamma: &FinGroupoid, pi: &FinGroupoid, phi: &[usize]) -> Vec<(usize, usize)> {
    (0..gamma.n_objects()).flat_map(|x| pi.out_arrows(phi[x]).map(move |w| (x, w))).collect()
}

fn shape_report(title: String, problem: Option<String>) -> std::result::Result<Report, Report> {
    let mut report = Report::new(title);
    match problem {
        Some(w) => {
            report.fail("shape", w);
            Err(report)
        }
        None => {
            report.pass("shape");
            Ok(report)
        }
    }
}

/// Checks `Φ(id_x) = id_φ(x)`, compatibility with sources and targets, and
/// `Φ(gh) = Φ(g)Φ(h)` on all composable pairs.
pub fn check_grpd_morphism(gamma: &FinGroupoid, pi: &FinGroupoid, m: &GrpdMorphism) -> Report {
    let problem = if !base_ok(gamma, pi, &m.base) {
        Some("base map does not match the groupoids".to_string())
    } else if m.arrow_map.len() != gamma.n_arrows() || m.arrow_map.iter().any(|&w| w >= pi.n_arrows()) {
        Some("arrow map does not match the groupoids".to_string())
    } else {
        None
    };
    let mut report = match shape_report("groupoid morphism".into(), problem) {
        Ok(r) => r,
        Err(r) => return r,
    };
    let (phi, f) = (&m.base, &m.arrow_map);
    let ga = |g: usize| gamma.arrows()[g].clone();
    let pa = |w: usize| pi.arrows()[w].clone();
    let w = (0..gamma.n_objects()).find(|&x| f[gamma.id(x)] != pi.id(phi[x])).map(|x| {
        format!("identity {} maps to {}, not to {}", ga(gamma.id(x)), pa(f[gamma.id(x)]), pa(pi.id(phi[x])))
    });
    record_first(&mut report, "identities map to identities over phi", w);
    let w = (0..gamma.n_arrows())
        .find(|&g| pi.src(f[g]) != phi[gamma.src(g)] || pi.tgt(f[g]) != phi[gamma.tgt(g)])
        .map(|g| format!("{} maps to {}, whose endpoints are not the phi-images", ga(g), pa(f[g])));
    record_first(&mut report, "sources and targets commute with phi", w);
    let w = gamma.composition_table().into_iter().find_map(|((g, h), gh)| {
        let rhs = pi.compose(f[g], f[h]);
        (rhs != Some(f[gh])).then(|| match rhs {
            Some(r) => format!("Phi({}{}) = {} but Phi({})Phi({}) = {}", ga(g), ga(h), pa(f[gh]), ga(g), ga(h), pa(r)),
            None => format!("Phi({}) and Phi({}) are not composable", ga(g), ga(h)),
        })
    });
    record_first(&mut report, "multiplicative", w);
    report
}

/// Checks `α_Γ∘Φ = pr_M`, `Φ(x, φ(x)) = x`, `φ∘β_Γ∘Φ(x, w) = β_Π(w)` and
/// `Φ(x, wz) = Φ(x, w)Φ(β_Γ Φ(x, w), z)`.
pub fn check_grpd_comorphism(gamma: &FinGroupoid, pi: &FinGroupoid, m: &GrpdComorphism) -> Report {
    let problem = if !base_ok(gamma, pi, &m.base) {
        Some("base map does not match the groupoids".to_string())
    } else {
        let domain: BTreeSet<(usize, usize)> = pullback_domain(gamma, pi, &m.base).into_iter().collect();
        let keys: BTreeSet<(usize, usize)> = m.table.keys().copied().collect();
        if keys != domain {
            Some("table is not defined exactly on M x_phi Pi".to_string())
        } else if m.table.values().any(|&g| g >= gamma.n_arrows()) {
            Some("table value out of range".to_string())
        } else {
            None
        }
    };
    let mut report = match shape_report("groupoid comorphism".into(), problem) {
        Ok(r) => r,
        Err(r) => return r,
    };
    let (phi, t) = (&m.base, &m.table);
    let ga = |g: usize| gamma.arrows()[g].clone();
    let pa = |w: usize| pi.arrows()[w].clone();
    let ob = |x: usize| gamma.objects()[x].clone();
    let w = t
        .iter()
        .find(|(&(x, _), &g)| gamma.src(g) != x)
        .map(|(&(x, w), &g)| format!("Phi({}, {}) = {} does not start at {}", ob(x), pa(w), ga(g), ob(x)));
    record_first(&mut report, "source of Phi(x, w) is x", w);
    let w = (0..gamma.n_objects())
        .find(|&x| t[&(x, pi.id(phi[x]))] != gamma.id(x))
        .map(|x| format!("Phi({}, {}) = {}", ob(x), pa(pi.id(phi[x])), ga(t[&(x, pi.id(phi[x]))])));
    record_first(&mut report, "identities", w);
    let w = t.iter().find(|(&(_, w), &g)| phi[gamma.tgt(g)] != pi.tgt(w)).map(|(&(x, w), &g)| {
        format!("phi of the target of Phi({}, {}) = {} is not the target of {}", ob(x), pa(w), ga(g), pa(w))
    });
    record_first(&mut report, "targets", w);
    let w = t.iter().find_map(|(&(x, w), &g)| {
        let y = gamma.tgt(g);
        pi.out_arrows(pi.tgt(w)).find_map(|z| {
            let next = t.get(&(y, z))?;
            let wz = pi.compose(w, z)?;
            let lhs = t[&(x, wz)];
            let rhs = gamma.compose(g, *next);
            (rhs != Some(lhs)).then(|| match rhs {
                Some(r) => format!(
                    "Phi({}, {}{}) = {} but Phi({}, {})Phi({}, {}) = {}",
                    ob(x), pa(w), pa(z), ga(lhs), ob(x), pa(w), ob(y), pa(z), ga(r)
                ),
                None => format!("Phi({}, {}) and Phi({}, {}) are not composable", ob(x), pa(w), ob(y), pa(z)),
            })
        })
    });
    record_first(&mut report, "composition", w);
    report
}

pub fn check_grpd_map(gamma: &FinGroupoid, pi: &FinGroupoid, m: &GrpdMap) -> Report {
    match m {
        GrpdMap::Morphism(m) => check_grpd_morphism(gamma, pi, m),
        GrpdMap::Comorphism(m) => check_grpd_comorphism(gamma, pi, m),
    }
}

/// `{(g, Φ(g))}`.
pub fn morphism_graph(m: &GrpdMorphism) -> BTreeSet<(usize, usize)> {
    m.arrow_map.iter().enumerate().map(|(g, &w)| (g, w)).collect()
}

/// `{(Φ(x, w), w)}`.
pub fn comorphism_graph(m: &GrpdComorphism) -> BTreeSet<(usize, usize)> {
    m.table.iter().map(|(&(_, w), &g)| (g, w)).collect()
}

pub fn graph_of(m: &GrpdMap) -> BTreeSet<(usize, usize)> {
    match m {
        GrpdMap::Morphism(m) => morphism_graph(m),
        GrpdMap::Comorphism(m) => comorphism_graph(m),
    }
}

/// Decides whether `graph ⊂ Γ × Π` is a subgroupoid of the φ-product on the
/// base `M` that is the graph of a map of the given kind: a function on `Γ`
/// for morphisms, a function on `M ×_φ Π` for comorphisms.
pub fn graph_subgroupoid_check(
    gamma: &FinGroupoid,
    pi: &FinGroupoid,
    phi: &[usize],
    kind: MapKind,
    graph: &BTreeSet<(usize, usize)>,
) -> Report {
    let title = format!("{kind} graph inside the phi-product");
    let problem = if !base_ok(gamma, pi, phi) {
        Some("base map does not match the groupoids".to_string())
    } else if graph.iter().any(|&(g, w)| g >= gamma.n_arrows() || w >= pi.n_arrows()) {
        Some("pair out of range".to_string())
    } else {
        None
    };
    let mut report = match shape_report(title, problem) {
        Ok(r) => r,
        Err(r) => return r,
    };
    let show = |&(g, w): &(usize, usize)| format!("({}, {})", gamma.arrows()[g], pi.arrows()[w]);
    let w = graph
        .iter()
        .find(|&&(g, w)| pi.src(w) != phi[gamma.src(g)] || pi.tgt(w) != phi[gamma.tgt(g)])
        .map(|p| format!("{} is not in the phi-product", show(p)));
    record_first(&mut report, "contained in the phi-product", w);
    let w = (0..gamma.n_objects())
        .map(|x| (gamma.id(x), pi.id(phi[x])))
        .find(|p| !graph.contains(p))
        .map(|p| format!("missing identity {}", show(&p)));
    record_first(&mut report, "contains the identities", w);
    let w = graph.iter().find_map(|a| {
        graph.iter().find_map(|b| {
            let gh = gamma.compose(a.0, b.0)?;
            let wz = pi.compose(a.1, b.1)?;
            (!graph.contains(&(gh, wz))).then(|| format!("{}{} = {} is missing", show(a), show(b), show(&(gh, wz))))
        })
    });
    record_first(&mut report, "closed under composition", w);
    let w = graph
        .iter()
        .find(|&&(g, w)| !graph.contains(&(gamma.inv(g), pi.inv(w))))
        .map(|&(g, w)| format!("inverse of {} is missing", show(&(g, w))));
    record_first(&mut report, "closed under inversion", w);
    let w = match kind {
        MapKind::Morphism => (0..gamma.n_arrows()).find_map(|g| {
            let n = graph.iter().filter(|p| p.0 == g).count();
            (n != 1).then(|| format!("{} pairs over the arrow {}", n, gamma.arrows()[g]))
        }),
        MapKind::Comorphism => pullback_domain(gamma, pi, phi).into_iter().find_map(|(x, w)| {
            let n = graph.iter().filter(|&&(g, v)| v == w && gamma.src(g) == x).count();
            (n != 1).then(|| format!("{} pairs over ({}, {})", n, gamma.objects()[x], pi.arrows()[w]))
        }),
    };
    record_first(&mut report, "graph of a map", w);
    report
}

/// Size of the candidate space searched by [`enumerate_maps`]: all arrow maps
/// for morphisms, all tables with `α_Γ(Φ(x, w)) = x` for comorphisms.
pub fn search_space(gamma: &FinGroupoid, pi: &FinGroupoid, phi: &[usize], kind: MapKind) -> u128 {
    match kind {
        MapKind::Morphism => (0..gamma.n_arrows()).fold(1u128, |s, _| s.saturating_mul(pi.n_arrows() as u128)),
        MapKind::Comorphism => pullback_domain(gamma, pi, phi)
            .into_iter()
            .fold(1u128, |s, (x, _)| s.saturating_mul(gamma.out_arrows(x).count() as u128)),
    }
}

/// Every candidate map over `φ` accepted by the chosen route, in candidate order.
pub fn enumerate_maps(
    gamma: &FinGroupoid,
    pi: &FinGroupoid,
    phi: &[usize],
    kind: MapKind,
    route: Route,
    exec: Execution,
) -> Result<Vec<GrpdMap>> {
    if !base_ok(gamma, pi, phi) {
        return Err(Error::Malformed("base map does not match the groupoids".into()));
    }
    let size = search_space(gamma, pi, phi, kind);
    if size > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge { size, limit: SEARCH_LIMIT });
    }
    let accept = |m: &GrpdMap| match route {
        Route::Direct => check_grpd_map(gamma, pi, m).is_pass(),
        Route::Graph => graph_subgroupoid_check(gamma, pi, phi, kind, &graph_of(m)).is_pass(),
    };
    let found = match kind {
        MapKind::Morphism => {
            let radix = pi.n_arrows() as u64;
            let n = gamma.n_arrows();
            exec.filter_map_range(size as u64, |mut i| {
                let mut arrow_map = vec![0; n];
                for slot in arrow_map.iter_mut().rev() {
                    *slot = (i % radix) as usize;
                    i /= radix;
                }
                let m = GrpdMap::Morphism(GrpdMorphism { base: phi.to_vec(), arrow_map });
                accept(&m).then_some(m)
            })
        }
        MapKind::Comorphism => {
            let domain = pullback_domain(gamma, pi, phi);
            let choices: Vec<Vec<usize>> = domain.iter().map(|&(x, _)| gamma.out_arrows(x).collect()).collect();
            exec.filter_map_range(size as u64, |mut i| {
                let mut table = BTreeMap::new();
                for (key, opts) in domain.iter().zip(&choices).rev() {
                    let r = opts.len() as u64;
                    table.insert(*key, opts[(i % r) as usize]);
                    i /= r;
                }
                let m = GrpdMap::Comorphism(GrpdComorphism { base: phi.to_vec(), table });
                accept(&m).then_some(m)
            })
        }
    };
    Ok(found)
}

/// `Φ₂∘Φ₁` over `φ₂∘φ₁`.
pub fn compose_grpd_morphisms(m1: &GrpdMorphism, m2: &GrpdMorphism) -> Result<GrpdMorphism> {
    let look = |v: &[usize], i: usize| v.get(i).copied().ok_or_else(|| Error::Malformed("maps do not compose".into()));
    Ok(GrpdMorphism {
        base: m1.base.iter().map(|&y| look(&m2.base, y)).collect::<Result<_>>()?,
        arrow_map: m1.arrow_map.iter().map(|&w| look(&m2.arrow_map, w)).collect::<Result<_>>()?,
    })
}

/// For `Φ₁: M ×_φ₁ Π → Γ` and `Φ₂: N ×_φ₂ Λ → Π`, the composite
/// `(x, u) ↦ Φ₁(x, Φ₂(φ₁(x), u))` on `M ×_{φ₂φ₁} Λ`.
pub fn compose_grpd_comorphisms(
    gamma: &FinGroupoid,
    lambda: &FinGroupoid,
    m1: &GrpdComorphism,
    m2: &GrpdComorphism,
) -> Result<GrpdComorphism> {
    let missing = || Error::Malformed("comorphisms do not compose".into());
    let base: Vec<usize> =
        m1.base.iter().map(|&y| m2.base.get(y).copied().ok_or_else(missing)).collect::<Result<_>>()?;
    if !base_ok(gamma, lambda, &base) {
        return Err(missing());
    }
    let mut table = BTreeMap::new();
    for (x, u) in pullback_domain(gamma, lambda, &base) {
        let w = *m2.table.get(&(m1.base[x], u)).ok_or_else(missing)?;
        table.insert((x, u), *m1.table.get(&(x, w)).ok_or_else(missing)?);
    }
    Ok(GrpdComorphism { base, table })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Searches for an isomorphism `g → h` by brute force: every bijection of
/// objects, then arrows matched within hom-sets by backtracking.
pub fn find_isomorphism(g: &FinGroupoid, h: &FinGroupoid) -> Result<Option<GrpdMorphism>> {
    if g.n_objects() != h.n_objects() || g.n_arrows() != h.n_arrows() {
        return Ok(None);
    }
    let size = (1..=g.n_objects() as u128).product::<u128>();
    if size > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge { size, limit: SEARCH_LIMIT });
    }
    for base in permutations(g.n_objects()) {
        let hom_ok = (0..g.n_objects()).all(|x| {
            (0..g.n_objects()).all(|y| {
                let a = (0..g.n_arrows()).filter(|&a| g.src(a) == x && g.tgt(a) == y).count();
                let b = (0..h.n_arrows()).filter(|&b| h.src(b) == base[x] && h.tgt(b) == base[y]).count();
                a == b
            })
        });
        if !hom_ok {
            continue;
        }
        let mut arrow_map = vec![usize::MAX; g.n_arrows()];
        let mut used = vec![false; h.n_arrows()];
        if extend(g, h, &base, 0, &mut arrow_map, &mut used) {
            return Ok(Some(GrpdMorphism { base, arrow_map }));
        }
    }
    Ok(None)
}

fn extend(g: &FinGroupoid, h: &FinGroupoid, base: &[usize], a: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if a == g.n_arrows() {
        return true;
    }
    for b in 0..h.n_arrows() {
        if used[b] || h.src(b) != base[g.src(a)] || h.tgt(b) != base[g.tgt(a)] {
            continue;
        }
        map[a] = b;
        let consistent = (0..=a).all(|p| {
            (0..=a).all(|q| match g.compose(p, q) {
                Some(pq) if pq <= a => h.compose(map[p], map[q]) == Some(map[pq]),
                _ => true,
            })
        });
        if consistent {
            used[b] = true;
            if extend(g, h, base, a + 1, map, used) {
                return true;
            }
            used[b] = false;
        }
    }
    map[a] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn p(names: &[&str]) -> FinGroupoid {
        make_pair(names).unwrap()
    }

    #[test]
    fn pair_functor_is_a_morphism() {
        let (m, n) = (p(&["1", "2", "3"]), p(&["a", "b"]));
        let phi = vec![0, 1, 1];
        let nm = m.n_objects();
        let arrow_map = (0..m.n_arrows()).map(|g| phi[g / nm] * 2 + phi[g % nm]).collect();
        let f = GrpdMorphism { base: phi.clone(), arrow_map };
        assert!(check_grpd_morphism(&m, &n, &f).is_pass());
        assert!(graph_subgroupoid_check(&m, &n, &phi, MapKind::Morphism, &morphism_graph(&f)).is_pass());
        let id = GrpdMorphism { base: vec![0, 1, 2], arrow_map: (0..9).collect() };
        assert!(check_grpd_morphism(&m, &m, &id).is_pass());
    }

    #[test]
    fn non_multiplicative_map_fails() {
        let g = p(&["1", "2"]);
        // swap the two non-identity arrows
        let f = GrpdMorphism { base: vec![0, 1], arrow_map: vec![0, 2, 1, 3] };
        let r = check_grpd_morphism(&g, &g, &f);
        assert!(!r.is_pass());
        let graph = graph_subgroupoid_check(&g, &g, &[0, 1], MapKind::Morphism, &morphism_graph(&f));
        assert!(!graph.is_pass());
    }

    #[test]
    fn enumeration_counts() {
        let p1 = p(&["1"]);
        let ms = enumerate_maps(&p1, &p1, &[0], MapKind::Morphism, Route::Direct, Execution::Sequential).unwrap();
        assert_eq!(ms.len(), 1);
        let (ab, one_two) = (p(&["a", "b"]), p(&["1", "2"]));
        let co =
            enumerate_maps(&ab, &one_two, &[0, 1], MapKind::Comorphism, Route::Direct, Execution::Sequential).unwrap();
        assert_eq!(co.len(), 1);
        let z2 = group_groupoid(&FinGroup::cyclic(2));
        for x in 0..2 {
            let ms = enumerate_maps(&z2, &one_two, &[x], MapKind::Morphism, Route::Direct, Execution::Parallel).unwrap();
            assert_eq!(ms.len(), 1);
        }
    }

    #[test]
    fn isomorphism_search() {
        let a = p(&["1", "2"]);
        let z2 = group_groupoid(&FinGroup::cyclic(2));
        assert!(find_isomorphism(&a, &z2).unwrap().is_none());
        let iso = find_isomorphism(&a, &a).unwrap().unwrap();
        assert!(check_grpd_morphism(&a, &a, &iso).is_pass());
    }
}
