//! Lie pseudoalgebras on free modules over presented algebras.
//!
//! A [`PAlg`] is a free module with basis `e_1..e_m` over an [`AlgebraPres`],
//! an anchor `θ(e_i)` given as derivations, and structure functions
//! `[e_i, e_j] = Σ_k c_ij^k e_k` stored for `i < j` only. The bracket of
//! general elements is the Leibniz extension
//!
//! ```text
//! [Σ a_i e_i, Σ b_j e_j] = Σ a_i b_j [e_i, e_j] + Σ θ(X)(b_j) e_j - Σ θ(Y)(a_i) e_i
//! ```
//!
//! Axioms are checked on the basis. The Jacobiator `J(X, Y, Z)` satisfies
//! `J(X, Y, aZ) = a J(X, Y, Z) + (θ[X,Y] - [θX, θY])(a) Z`, so once the anchor
//! is checked to be bracket preserving, `J` is tensorial and alternating, and
//! vanishing on basis triples `i < j < k` implies vanishing everywhere.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactpoly::{check_derivation, linalg, rat, AlgebraPres, Derivation, MPoly, Monomial, Rational};
use crate::exec::Execution;
use crate::report::Report;

/// Common interface of everything that carries a bracket and an anchor.
///
/// Implemented by [`PAlg`] and by psi-sums, so that psi-sums can themselves be
/// summed.
pub trait Pseudoalgebra: Sync {
    type Element: Clone + PartialEq + Debug + Send + Sync;

    fn algebra(&self) -> &AlgebraPres;
    fn zero(&self) -> Self::Element;
    fn add(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
    /// The module action `a * x`.
    fn scale(&self, a: &MPoly, x: &Self::Element) -> Self::Element;
    fn bracket(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
    fn anchor_apply(&self, x: &Self::Element, a: &MPoly) -> MPoly;
    fn render(&self, x: &Self::Element) -> String;

    fn sub(&self, x: &Self::Element, y: &Self::Element) -> Self::Element {
        let minus = MPoly::from_int(self.algebra().nvars(), -1);
        self.add(x, &self.scale(&minus, y))
    }

    fn is_zero(&self, x: &Self::Element) -> bool {
        *x == self.zero()
    }
}

/// Coordinates of an element in the free basis, each in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAElement {
    coords: Vec<MPoly>,
}

impl PAElement {
    pub fn coords(&self) -> &[MPoly] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<MPoly> {
        self.coords
    }
}

/// A form of degree 0, 1 or 2 on a free pseudoalgebra.
///
/// Degree 0 has one coefficient, degree 1 has one per basis vector (the dual
/// basis), degree 2 has one per pair `i < j` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KForm {
    pub degree: u8,
    pub coeffs: Vec<MPoly>,
}

/// Index of the pair `(i, j)`, `i < j`, in the lexicographic list of pairs of `0..m`.
pub fn pair_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

/// All pairs `i < j` of `0..m` in lexicographic order.
pub fn pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
}

/// A Lie pseudoalgebra on a free module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAlg {
    algebra: AlgebraPres,
    basis: Vec<String>,
    anchor: Vec<Derivation>,
    /// `structure[pair_index(i, j)]` holds the coordinates of `[e_i, e_j]`.
    structure: Vec<Vec<MPoly>>,
}

pub type StructureTable = BTreeMap<(usize, usize), Vec<MPoly>>;

impl PAlg {
    /// Assembles a pseudoalgebra from its tables; missing structure entries are zero.
    ///
    /// Only shapes are validated here; [`axioms_check`] decides the axioms.
    pub fn new(
        algebra: AlgebraPres,
        basis: Vec<String>,
        anchor: Vec<Derivation>,
        structure: StructureTable,
    ) -> Result<Self> {
        let m = basis.len();
        let mut seen = std::collections::BTreeSet::new();
        for b in &basis {
            if !seen.insert(b) {
                return Err(Error::DuplicateName(b.clone()));
            }
        }
        if anchor.len() != m {
            return Err(Error::RankMismatch { expected: m, found: anchor.len() });
        }
        for d in &anchor {
            algebra.expect_same(d.algebra(), "anchor derivation")?;
        }
        let mut table = vec![vec![algebra.zero(); m]; m * m.saturating_sub(1) / 2];
        for ((i, j), coords) in structure {
            if i >= j || j >= m {
                return Err(Error::Malformed(format!("structure entry ({i}, {j}) must satisfy i < j < {m}")));
            }
            if coords.len() != m {
                return Err(Error::RankMismatch { expected: m, found: coords.len() });
            }
            for c in &coords {
                c.check_arity(algebra.nvars())?;
            }
            table[pair_index(m, i, j)] = coords.iter().map(|c| algebra.reduce(c)).collect();
        }
        Ok(PAlg { algebra, basis, anchor, structure: table })
    }

    /// Runs [`axioms_check`] and returns the pseudoalgebra only if it passes.
    pub fn verified(self) -> Result<Self> {
        let report = axioms_check(&self);
        if report.is_pass() {
            Ok(self)
        } else {
            Err(Error::verification(report))
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn anchor(&self, i: usize) -> &Derivation {
        &self.anchor[i]
    }

    pub fn anchors(&self) -> &[Derivation] {
        &self.anchor
    }

    /// Coordinates of `[e_i, e_j]` for any `i, j`.
    pub fn structure(&self, i: usize, j: usize) -> Vec<MPoly> {
        let m = self.rank();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.structure[pair_index(m, i, j)].clone(),
            std::cmp::Ordering::Equal => vec![self.algebra.zero(); m],
            std::cmp::Ordering::Greater => self.structure[pair_index(m, j, i)].iter().map(|c| -c).collect(),
        }
    }

    /// The stored table, entries `i < j` only, zero entries omitted.
    pub fn structure_table(&self) -> StructureTable {
        pairs(self.rank())
            .into_iter()
            .filter(|&(i, j)| self.structure[pair_index(self.rank(), i, j)].iter().any(|c| !c.is_zero()))
            .map(|(i, j)| ((i, j), self.structure(i, j)))
            .collect()
    }

    pub fn element(&self, coords: Vec<MPoly>) -> Result<PAElement> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: coords.len() });
        }
        for c in &coords {
            c.check_arity(self.algebra.nvars())?;
        }
        Ok(PAElement { coords: coords.iter().map(|c| self.algebra.reduce(c)).collect() })
    }

    /// Parses one polynomial string per basis vector.
    pub fn parse_element(&self, coords: &[&str]) -> Result<PAElement> {
        let cs = coords.iter().map(|s| self.algebra.poly(s)).collect::<Result<Vec<_>>>()?;
        self.element(cs)
    }

    pub fn basis_element(&self, i: usize) -> PAElement {
        let mut coords = vec![self.algebra.zero(); self.rank()];
        coords[i] = self.algebra.one();
        PAElement { coords }
    }

    pub(crate) fn element_from_reduced(&self, coords: Vec<MPoly>) -> PAElement {
        debug_assert_eq!(coords.len(), self.rank());
        PAElement { coords }
    }

    fn check_element(&self, x: &PAElement) -> Result<()> {
        if x.coords.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: x.coords.len() });
        }
        for c in &x.coords {
            c.check_arity(self.algebra.nvars())?;
        }
        Ok(())
    }

    /// The anchor of `x` as a derivation.
    pub fn anchor_of(&self, x: &PAElement) -> Derivation {
        let mut d = Derivation::zero(&self.algebra);
        for (c, th) in x.coords.iter().zip(&self.anchor) {
            if !c.is_zero() {
                d = d.add(&th.scale(c));
            }
        }
        d
    }

    /// Bracket with shape checks.
    pub fn try_bracket(&self, x: &PAElement, y: &PAElement) -> Result<PAElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(Pseudoalgebra::bracket(self, x, y))
    }

    /// Anchor evaluation with shape checks.
    pub fn try_anchor_apply(&self, x: &PAElement, a: &MPoly) -> Result<MPoly> {
        self.check_element(x)?;
        a.check_arity(self.algebra.nvars())?;
        Ok(Pseudoalgebra::anchor_apply(self, x, a))
    }

    /// Pairing of a 1-form with an element.
    pub fn pair(&self, xi: &KForm, x: &PAElement) -> MPoly {
        assert_eq!(xi.degree, 1);
        let mut out = self.algebra.zero();
        for (a, b) in xi.coeffs.iter().zip(&x.coords) {
            out = &out + &(a * b);
        }
        self.algebra.reduce(&out)
    }

    pub fn render_coeffs(names: &[String], coeffs: &[MPoly], vars: &[String]) -> String {
        let parts: Vec<String> = coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| {
                if c.is_constant() && c.as_constant() == Some(rat(1)) {
                    n.clone()
                } else if c.len() > 1 {
                    format!("({})*{n}", c.render(vars))
                } else {
                    format!("{}*{n}", c.render(vars))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl Pseudoalgebra for PAlg {
    type Element = PAElement;

    fn algebra(&self) -> &AlgebraPres {
        &self.algebra
    }

    fn zero(&self) -> PAElement {
        PAElement { coords: vec![self.algebra.zero(); self.rank()] }
    }

    fn add(&self, x: &PAElement, y: &PAElement) -> PAElement {
        PAElement { coords: x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect() }
    }

    fn scale(&self, a: &MPoly, x: &PAElement) -> PAElement {
        PAElement { coords: x.coords.iter().map(|c| self.algebra.mul(a, c)).collect() }
    }

    fn bracket(&self, x: &PAElement, y: &PAElement) -> PAElement {
        let m = self.rank();
        let a = &self.algebra;
        let mut out = vec![a.zero(); m];
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = self.structure(i, j);
                let w = xi * yj;
                for k in 0..m {
                    if !c[k].is_zero() {
                        out[k] = &out[k] + &(&w * &c[k]);
                    }
                }
            }
        }
        let tx = self.anchor_of(x);
        let ty = self.anchor_of(y);
        for k in 0..m {
            out[k] = &(&out[k] + &tx.eval(&y.coords[k])) - &ty.eval(&x.coords[k]);
        }
        PAElement { coords: out.iter().map(|c| a.reduce(c)).collect() }
    }

    fn anchor_apply(&self, x: &PAElement, f: &MPoly) -> MPoly {
        let mut out = self.algebra.zero();
        for (c, th) in x.coords.iter().zip(&self.anchor) {
            if !c.is_zero() {
                out = &out + &(c * &th.eval(f));
            }
        }
        self.algebra.reduce(&out)
    }

    fn render(&self, x: &PAElement) -> String {
        PAlg::render_coeffs(&self.basis, &x.coords, self.algebra.variables())
    }

    fn is_zero(&self, x: &PAElement) -> bool {
        x.coords.iter().all(MPoly::is_zero)
    }
}

/// Checks the axioms on the basis: anchors are derivations, the anchor
/// preserves brackets, and the Jacobi identity holds.
pub fn axioms_check(e: &PAlg) -> Report {
    axioms_check_with(e, Execution::default())
}

pub fn axioms_check_with(e: &PAlg, exec: Execution) -> Report {
    let m = e.rank();
    let a = &e.algebra;
    let vars = a.variables();
    let mut report = Report::new(format!("Lie pseudoalgebra of rank {m} over {a}"));

    for (i, d) in e.anchor.iter().enumerate() {
        let r = check_derivation(d);
        report.record(format!("anchor({}) is a derivation", e.basis[i]), r.is_pass(), || {
            r.failures().next().and_then(|c| c.witness.clone()).unwrap_or_default()
        });
    }

    let pair_list = pairs(m);
    let anchor_results = exec.map(&pair_list, |&(i, j)| {
        let lhs = e.anchor_of(&e.element_from_reduced(e.structure(i, j)));
        let rhs = e.anchor[i].commutator(&e.anchor[j]);
        let bad = (0..a.nvars()).find(|&v| a.reduce(&(&lhs.images()[v] - &rhs.images()[v])) != a.zero());
        (i, j, bad.map(|v| (v, lhs.images()[v].clone(), rhs.images()[v].clone())))
    });
    for (i, j, bad) in anchor_results {
        report.record(format!("anchor[{}, {}] = [anchor {}, anchor {}]", e.basis[i], e.basis[j], e.basis[i], e.basis[j]), bad.is_none(), || {
            let (v, l, r) = bad.clone().unwrap();
            format!(
                "on {}: anchor([{}, {}])({}) = {} but the commutator gives {}",
                vars[v], e.basis[i], e.basis[j], vars[v], a.render(&l), a.render(&r)
            )
        });
    }

    let triples: Vec<(usize, usize, usize)> =
        (0..m).flat_map(|i| (i + 1..m).flat_map(move |j| (j + 1..m).map(move |k| (i, j, k)))).collect();
    let jac = exec.map(&triples, |&(i, j, k)| {
        let (ei, ej, ek) = (e.basis_element(i), e.basis_element(j), e.basis_element(k));
        (i, j, k, jacobiator(e, &ei, &ej, &ek))
    });
    for (i, j, k, jv) in jac {
        let ok = Pseudoalgebra::is_zero(e, &jv);
        report.record(format!("Jacobi({}, {}, {})", e.basis[i], e.basis[j], e.basis[k]), ok, || {
            format!(
                "[{a},[{b},{c}]] + [{b},[{c},{a}]] + [{c},[{a},{b}]] = {} != 0",
                e.render(&jv),
                a = e.basis[i],
                b = e.basis[j],
                c = e.basis[k]
            )
        });
    }
    if m < 3 {
        report.pass("Jacobi (fewer than three basis vectors)");
    }
    report
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` in any pseudoalgebra.
pub fn jacobiator<P: Pseudoalgebra + ?Sized>(p: &P, x: &P::Element, y: &P::Element, z: &P::Element) -> P::Element {
    let t1 = p.bracket(x, &p.bracket(y, z));
    let t2 = p.bracket(y, &p.bracket(z, x));
    let t3 = p.bracket(z, &p.bracket(x, y));
    p.add(&p.add(&t1, &t2), &t3)
}

/// Exterior differential on forms of degree 0 and 1.
pub fn differential(e: &PAlg, omega: &KForm) -> Result<KForm> {
    let m = e.rank();
    let a = &e.algebra;
    match omega.degree {
        0 => {
            let f = omega.coeffs.first().ok_or(Error::RankMismatch { expected: 1, found: 0 })?;
            f.check_arity(a.nvars())?;
            Ok(KForm { degree: 1, coeffs: e.anchor.iter().map(|d| d.eval(f)).collect() })
        }
        1 => {
            if omega.coeffs.len() != m {
                return Err(Error::RankMismatch { expected: m, found: omega.coeffs.len() });
            }
            let xi = &omega.coeffs;
            let coeffs = pairs(m)
                .into_iter()
                .map(|(i, j)| {
                    let mut v = &e.anchor[i].eval(&xi[j]) - &e.anchor[j].eval(&xi[i]);
                    for (c, x) in e.structure(i, j).iter().zip(xi) {
                        v = &v - &(c * x);
                    }
                    a.reduce(&v)
                })
                .collect();
            Ok(KForm { degree: 2, coeffs })
        }
        d => Err(Error::Precondition(format!("the differential is implemented on degrees 0 and 1, not {d}"))),
    }
}

/// The module of all derivations of a free polynomial algebra on the partials.
pub fn make_der(a: &AlgebraPres) -> Result<PAlg> {
    if !a.is_free() {
        return Err(Error::Precondition(
            "the default basis of partial derivatives needs a free polynomial algebra; supply a basis".into(),
        ));
    }
    let names = a.variables().iter().map(|v| format!("d{v}")).collect();
    let basis = (0..a.nvars()).map(|i| Derivation::partial(a, i)).collect();
    PAlg::new(a.clone(), names, basis, StructureTable::new())
}

/// A pseudoalgebra on a user-chosen family of derivations with identity anchor.
///
/// Structure functions come from `witnesses` when given for a pair; otherwise
/// the commutator is expressed in the span by solving a rational linear
/// system for polynomial coefficients of increasing degree.
pub fn make_der_with_basis(
    a: &AlgebraPres,
    names: Vec<String>,
    basis: Vec<Derivation>,
    witnesses: &StructureTable,
) -> Result<PAlg> {
    for d in &basis {
        a.expect_same(d.algebra(), "basis derivation")?;
        let r = check_derivation(d);
        if !r.is_pass() {
            return Err(Error::verification(r));
        }
    }
    let m = basis.len();
    let mut table = StructureTable::new();
    for (i, j) in pairs(m) {
        let comm = basis[i].commutator(&basis[j]);
        let coords = match witnesses.get(&(i, j)) {
            Some(w) => {
                let mut sum = Derivation::zero(a);
                for (c, d) in w.iter().zip(&basis) {
                    sum = sum.add(&d.scale(c));
                }
                if sum.images() != comm.images() {
                    return Err(Error::NotInSpan(format!(
                        "witness for [{}, {}] gives {} but the commutator is {}",
                        names[i],
                        names[j],
                        sum.render(),
                        comm.render()
                    )));
                }
                w.clone()
            }
            None => express_in_span(a, &basis, &comm).ok_or_else(|| {
                Error::NotInSpan(format!(
                    "[{}, {}] = {} is not in the span of the basis",
                    names[i],
                    names[j],
                    comm.render()
                ))
            })?,
        };
        table.insert((i, j), coords);
    }
    PAlg::new(a.clone(), names, basis, table)
}

fn monomials_up_to(n: usize, deg: u32) -> Vec<Monomial> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for e in 0..=deg {
        for mut rest in monomials_up_to(n - 1, deg - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Polynomial coefficients `c` with `Σ c_k basis_k = target`, lowest degree first.
pub fn express_in_span(a: &AlgebraPres, basis: &[Derivation], target: &Derivation) -> Option<Vec<MPoly>> {
    let n = a.nvars();
    let bound = target.images().iter().map(MPoly::total_degree).max().unwrap_or(0);
    for deg in 0..=bound {
        let monos = monomials_up_to(n, deg);
        let unknowns: Vec<(usize, &Monomial)> =
            (0..basis.len()).flat_map(|k| monos.iter().map(move |m| (k, m))).collect();
        // columns: images of mono * basis_k on each variable
        let cols: Vec<Vec<MPoly>> = unknowns
            .iter()
            .map(|(k, mono)| {
                let t = MPoly::term(n, (*mono).clone(), rat(1));
                basis[*k].images().iter().map(|p| a.reduce(&(&t * p))).collect()
            })
            .collect();
        let mut keys: Vec<(usize, Monomial)> = Vec::new();
        for v in 0..n {
            for col in &cols {
                keys.extend(col[v].terms().map(|(m, _)| (v, m.clone())));
            }
            keys.extend(target.images()[v].terms().map(|(m, _)| (v, m.clone())));
        }
        keys.sort();
        keys.dedup();
        let rows: Vec<Vec<Rational>> =
            keys.iter().map(|(v, m)| cols.iter().map(|col| col[*v].coeff(m)).collect()).collect();
        let rhs: Vec<Rational> = keys.iter().map(|(v, m)| target.images()[*v].coeff(m)).collect();
        if let Some(sol) = linalg::solve(rows, rhs, unknowns.len()) {
            let mut coords = vec![a.zero(); basis.len()];
            for ((k, mono), c) in unknowns.iter().zip(sol) {
                if !c.is_zero() {
                    coords[*k] = &coords[*k] + &MPoly::term(n, (*mono).clone(), c);
                }
            }
            return Some(coords.iter().map(|c| a.reduce(c)).collect());
        }
    }
    None
}

/// A Lie algebra over the rationals as a pseudoalgebra with zero anchor.
pub fn make_klie(names: Vec<String>, constants: &BTreeMap<(usize, usize), Vec<Rational>>) -> Result<PAlg> {
    let q = AlgebraPres::rationals();
    let table = constants
        .iter()
        .map(|(&k, v)| (k, v.iter().map(|c| MPoly::constant(0, c.clone())).collect()))
        .collect();
    let anchor = vec![Derivation::zero(&q); names.len()];
    PAlg::new(q, names, anchor, table)?.verified()
}

/// The action pseudoalgebra `A ⊗ g` of a Lie algebra acting on `A` by derivations.
pub fn make_action(a: &AlgebraPres, g: &PAlg, theta: Vec<Derivation>) -> Result<PAlg> {
    if g.algebra.nvars() != 0 {
        return Err(Error::Precondition("the acting Lie algebra must be defined over the rationals".into()));
    }
    if theta.len() != g.rank() {
        return Err(Error::RankMismatch { expected: g.rank(), found: theta.len() });
    }
    let table: StructureTable = g
        .structure_table()
        .into_iter()
        .map(|(k, v)| (k, v.iter().map(|c| MPoly::constant(a.nvars(), c.as_constant().unwrap_or_default())).collect()))
        .collect();
    let e = PAlg::new(a.clone(), g.basis.clone(), theta, table)?;
    let mut report = Report::new("infinitesimal action is a Lie algebra morphism");
    for (i, d) in e.anchor.iter().enumerate() {
        let r = check_derivation(d);
        report.record(format!("theta({}) is a derivation", e.basis[i]), r.is_pass(), || r.summary());
    }
    for (i, j) in pairs(e.rank()) {
        let lhs = e.anchor_of(&e.element_from_reduced(e.structure(i, j)));
        let rhs = e.anchor[i].commutator(&e.anchor[j]);
        report.record(format!("theta[{}, {}] = [theta {}, theta {}]", e.basis[i], e.basis[j], e.basis[i], e.basis[j]), lhs == rhs, || {
            format!("theta([{}, {}]) = {} but the commutator is {}", e.basis[i], e.basis[j], lhs.render(), rhs.render())
        });
    }
    if !report.is_pass() {
        return Err(Error::verification(report));
    }
    Ok(e)
}

/// The cotangent pseudoalgebra of a polynomial bivector `pi`.
///
/// Basis `dx_1..dx_n`, anchor `dx_i ↦ Σ_j pi_ij ∂_j`, and
/// `[dx_i, dx_j] = d pi_ij`. The axioms hold iff `pi` is Poisson.
pub fn make_cotangent_poisson(a: &AlgebraPres, pi: &[Vec<MPoly>]) -> Result<PAlg> {
    let n = a.nvars();
    if !a.is_free() {
        return Err(Error::Precondition("the cotangent construction needs a free polynomial algebra".into()));
    }
    if pi.len() != n || pi.iter().any(|r| r.len() != n) {
        return Err(Error::RankMismatch { expected: n, found: pi.len() });
    }
    for i in 0..n {
        for j in 0..n {
            pi[i][j].check_arity(n)?;
            if pi[i][j] != -&pi[j][i] {
                return Err(Error::Precondition(format!("pi is not antisymmetric at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    let names = a.variables().iter().map(|v| format!("d{v}")).collect();
    let anchor = (0..n).map(|i| Derivation::new(a.clone(), pi[i].clone())).collect::<Result<Vec<_>>>()?;
    let table = pairs(n).into_iter().map(|(i, j)| ((i, j), (0..n).map(|k| pi[i][j].partial(k)).collect())).collect();
    let e = PAlg::new(a.clone(), names, anchor, table)?;
    let report = axioms_check(&e);
    if !report.is_pass() {
        let mut r = Report::new("pi not Poisson");
        r.absorb("", report);
        return Err(Error::verification(r));
    }
    Ok(e)
}
