//! Algebra morphisms and derivations between presented algebras.

use super::algebra::AlgebraPres;
use super::poly::MPoly;
use crate::error::{Error, Result};
use crate::report::Report;

/// An algebra map given by the images of the source variables.
///
/// Construction only stores the data; [`check_morphism`] decides whether the
/// images respect the source ideal, and [`AlgMorphism::verified`] produces a
/// value that [`apply_morphism`] accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgMorphism {
    source: AlgebraPres,
    target: AlgebraPres,
    images: Vec<MPoly>,
    checked: bool,
}

impl AlgMorphism {
    pub fn new(source: AlgebraPres, target: AlgebraPres, images: Vec<MPoly>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::RankMismatch { expected: source.nvars(), found: images.len() });
        }
        for im in &images {
            im.check_arity(target.nvars())?;
        }
        let images = images.iter().map(|p| target.reduce(p)).collect();
        Ok(AlgMorphism { source, target, images, checked: false })
    }

    /// Parses images written in the target variables.
    pub fn parse(source: AlgebraPres, target: AlgebraPres, images: &[&str]) -> Result<Self> {
        let imgs = images.iter().map(|s| target.poly(s)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, imgs)
    }

    pub fn identity(a: &AlgebraPres) -> Self {
        let images = (0..a.nvars()).map(|i| a.var(i)).collect();
        AlgMorphism { source: a.clone(), target: a.clone(), images, checked: true }
    }

    /// The unique map from the rationals into `target`.
    pub fn unit(target: &AlgebraPres) -> Self {
        AlgMorphism { source: AlgebraPres::rationals(), target: target.clone(), images: Vec::new(), checked: true }
    }

    pub fn source(&self) -> &AlgebraPres {
        &self.source
    }

    pub fn target(&self) -> &AlgebraPres {
        &self.target
    }

    pub fn images(&self) -> &[MPoly] {
        &self.images
    }

    pub fn is_checked(&self) -> bool {
        self.checked
    }

    /// Returns a checked copy, or the failing report as an error.
    pub fn verified(&self) -> Result<Self> {
        let report = check_morphism(self);
        if report.is_pass() {
            Ok(AlgMorphism { checked: true, ..self.clone() })
        } else {
            Err(Error::verification(report))
        }
    }

    /// Substitutes and reduces without consulting the checked flag.
    pub(crate) fn image(&self, a: &MPoly) -> MPoly {
        self.target.reduce(&a.substitute(&self.images, self.target.nvars()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgMorphism) -> Result<AlgMorphism> {
        self.target.expect_same(&other.source, "composition of algebra maps")?;
        let images = self.images.iter().map(|p| other.image(p)).collect();
        Ok(AlgMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
            checked: self.checked && other.checked,
        })
    }
}

/// Passes iff every source ideal generator maps into the target ideal.
pub fn check_morphism(m: &AlgMorphism) -> Report {
    let mut report = Report::new(format!("algebra morphism {} -> {}", m.source, m.target));
    let gens = m.source.ideal().generators();
    if gens.is_empty() {
        report.pass("source ideal is zero");
    }
    for g in gens {
        let img = m.image(g);
        report.record(format!("psi({}) in target ideal", m.source.render(g)), img.is_zero(), || {
            format!("normal form of psi({}) is {}", m.source.render(g), m.target.render(&img))
        });
    }
    report
}

pub fn apply_morphism(m: &AlgMorphism, a: &MPoly) -> Result<MPoly> {
    if !m.checked {
        return Err(Error::Unchecked { what: "algebra morphism" });
    }
    a.check_arity(m.source.nvars())?;
    Ok(m.image(a))
}

/// A derivation of a presented algebra, given by the images of its variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    algebra: AlgebraPres,
    images: Vec<MPoly>,
    checked: bool,
}

impl Derivation {
    pub fn new(algebra: AlgebraPres, images: Vec<MPoly>) -> Result<Self> {
        if images.len() != algebra.nvars() {
            return Err(Error::RankMismatch { expected: algebra.nvars(), found: images.len() });
        }
        for im in &images {
            im.check_arity(algebra.nvars())?;
        }
        let images = images.iter().map(|p| algebra.reduce(p)).collect();
        let checked = algebra.is_free();
        Ok(Derivation { algebra, images, checked })
    }

    pub fn parse(algebra: &AlgebraPres, images: &[&str]) -> Result<Self> {
        let imgs = images.iter().map(|s| algebra.poly(s)).collect::<Result<Vec<_>>>()?;
        Self::new(algebra.clone(), imgs)
    }

    /// The partial derivative in variable `i`; only valid on quotients whose
    /// ideal it preserves, so the result is unchecked there.
    pub fn partial(algebra: &AlgebraPres, i: usize) -> Self {
        let images = (0..algebra.nvars()).map(|j| algebra.constant(i64::from(i == j))).collect();
        Derivation { algebra: algebra.clone(), images, checked: algebra.is_free() }
    }

    pub fn zero(algebra: &AlgebraPres) -> Self {
        Derivation { algebra: algebra.clone(), images: vec![algebra.zero(); algebra.nvars()], checked: true }
    }

    pub fn algebra(&self) -> &AlgebraPres {
        &self.algebra
    }

    pub fn images(&self) -> &[MPoly] {
        &self.images
    }

    pub fn is_checked(&self) -> bool {
        self.checked
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(MPoly::is_zero)
    }

    pub fn verified(&self) -> Result<Self> {
        let report = check_derivation(self);
        if report.is_pass() {
            Ok(Derivation { checked: true, ..self.clone() })
        } else {
            Err(Error::verification(report))
        }
    }

    /// Evaluates the Leibniz extension without consulting the checked flag.
    pub(crate) fn eval(&self, a: &MPoly) -> MPoly {
        self.algebra.reduce(&self.eval_raw(a))
    }

    fn eval_raw(&self, a: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.algebra.nvars());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = a.partial(i);
            if !d.is_zero() {
                out = &out + &(&d * img);
            }
        }
        out
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a + b).collect();
        Derivation { algebra: self.algebra.clone(), images, checked: self.checked && other.checked }
    }

    /// The derivation `a * self`.
    pub fn scale(&self, a: &MPoly) -> Derivation {
        let images = self.images.iter().map(|p| self.algebra.mul(a, p)).collect();
        Derivation { algebra: self.algebra.clone(), images, checked: self.checked }
    }

    /// The commutator `self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &Derivation) -> Derivation {
        let images = (0..self.algebra.nvars())
            .map(|v| &self.eval(&other.images[v]) - &other.eval(&self.images[v]))
            .collect();
        Derivation { algebra: self.algebra.clone(), images, checked: self.checked && other.checked }
    }

    /// Renders as `p*∂x + q*∂y`.
    pub fn render(&self) -> String {
        let names = self.algebra.variables();
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| {
                let c = self.algebra.render(p);
                if p.len() > 1 {
                    format!("({c})*d{}", names[i])
                } else {
                    format!("{c}*d{}", names[i])
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

/// Passes iff the derivation maps every Groebner generator of the ideal into the ideal.
pub fn check_derivation(d: &Derivation) -> Report {
    let a = &d.algebra;
    let mut report = Report::new(format!("derivation {} of {a}", d.render()));
    if a.is_free() {
        report.pass("free algebra");
    }
    for g in a.ideal().groebner() {
        let img = a.reduce(&d.eval_raw(g));
        report.record(format!("delta({}) in ideal", a.render(g)), img.is_zero(), || {
            format!("delta({}) = {} is not in the ideal", a.render(g), a.render(&img))
        });
    }
    report
}

pub fn apply_derivation(d: &Derivation, a: &MPoly) -> Result<MPoly> {
    if !d.checked {
        return Err(Error::Unchecked { what: "derivation" });
    }
    a.check_arity(d.algebra.nvars())?;
    Ok(d.eval(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn morphism_examples() {
        let src = AlgebraPres::parse(&["x"], &["x^2"]).unwrap();
        let y4 = AlgebraPres::parse(&["y"], &["y^4"]).unwrap();
        let y3 = AlgebraPres::parse(&["y"], &["y^3"]).unwrap();
        let good = AlgMorphism::parse(src.clone(), y4.clone(), &["y^2"]).unwrap();
        assert!(check_morphism(&good).is_pass());
        let bad = AlgMorphism::parse(src.clone(), y3, &["y"]).unwrap();
        let r = check_morphism(&bad);
        assert!(!r.is_pass());
        assert!(r.failures().next().unwrap().witness.as_ref().unwrap().contains("y^2"));
        assert!(check_morphism(&AlgMorphism::identity(&src)).is_pass());

        assert!(matches!(apply_morphism(&good, &src.var(0)), Err(Error::Unchecked { .. })));
        let good = good.verified().unwrap();
        assert_eq!(apply_morphism(&good, &src.var(0)).unwrap(), y4.poly("y^2").unwrap());
        assert_eq!(apply_morphism(&good, &src.one()).unwrap(), y4.one());
        let rep = MPoly::var(1, 0).pow(2);
        let shifted = &(&rep + &MPoly::var(1, 0).scale(&crate::exactpoly::rat(2))) + &MPoly::one(1);
        let nf = src.reduce(&shifted);
        assert_eq!(apply_morphism(&good, &shifted).unwrap(), apply_morphism(&good, &nf).unwrap());
        assert_eq!(apply_morphism(&good, &shifted).unwrap(), y4.poly("2*y^2 + 1").unwrap());
    }

    #[test]
    fn derivation_examples() {
        let a = AlgebraPres::parse(&["x"], &["x^3"]).unwrap();
        let euler = Derivation::parse(&a, &["x"]).unwrap();
        assert!(check_derivation(&euler).is_pass());
        let d = Derivation::parse(&a, &["1"]).unwrap();
        let r = check_derivation(&d);
        assert!(!r.is_pass());
        assert!(r.failures().next().unwrap().witness.as_ref().unwrap().contains("3*x^2"));
        assert!(matches!(apply_derivation(&euler, &a.var(0)), Err(Error::Unchecked { .. })));
        let euler = euler.verified().unwrap();
        assert_eq!(apply_derivation(&euler, &a.poly("x^2").unwrap()).unwrap(), a.poly("2*x^2").unwrap());
        assert!(apply_derivation(&euler, &a.one()).unwrap().is_zero());

        let free = AlgebraPres::polynomial(&["x", "y"]);
        let dx = Derivation::partial(&free, 0);
        assert!(check_derivation(&dx).is_pass());
        assert_eq!(apply_derivation(&dx, &free.poly("x^2*y").unwrap()).unwrap(), free.poly("2*x*y").unwrap());
    }

    #[test]
    fn commutator_of_vector_fields() {
        let a = AlgebraPres::polynomial(&["x"]);
        let d = Derivation::partial(&a, 0);
        let xd = Derivation::parse(&a, &["x"]).unwrap();
        assert_eq!(d.commutator(&xd), d);
        assert_eq!(xd.commutator(&d).images()[0], a.constant(-1));
    }
}
