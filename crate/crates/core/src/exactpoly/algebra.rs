//! Ideal and algebra presentations.

use std::collections::BTreeSet;
use std::fmt;

use super::groebner::{buchberger, reduce, DEFAULT_STEP_CAP};
use super::parse::parse_poly;
use super::poly::{MPoly, MonomialOrder};
use crate::error::{Error, Result};

/// An ideal of a polynomial ring together with its reduced Groebner basis.
#[derive(Debug, Clone)]
pub struct IdealPres {
    arity: usize,
    generators: Vec<MPoly>,
    groebner: Vec<MPoly>,
    order: MonomialOrder,
}

impl PartialEq for IdealPres {
    /// Ideals are equal when they have the same reduced basis; the generator
    /// lists they were built from are irrelevant.
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.order == other.order && self.groebner == other.groebner
    }
}

impl Eq for IdealPres {}

impl IdealPres {
    pub fn new(arity: usize, generators: Vec<MPoly>, order: MonomialOrder, step_cap: u64) -> Result<Self> {
        for g in &generators {
            g.check_arity(arity)?;
        }
        let groebner = buchberger(&generators, order, step_cap)?;
        Ok(IdealPres { arity, generators, groebner, order })
    }

    pub fn zero(arity: usize) -> Self {
        IdealPres { arity, generators: Vec::new(), groebner: Vec::new(), order: MonomialOrder::default() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn groebner(&self) -> &[MPoly] {
        &self.groebner
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.groebner.is_empty()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.groebner.iter().any(MPoly::is_constant)
    }

    /// Normal form of `p`; panics on an arity mismatch, which is a programming
    /// error inside the crate. The checked variant is [`normal_form`].
    pub fn reduce(&self, p: &MPoly) -> MPoly {
        assert_eq!(p.nvars(), self.arity, "arity mismatch in normal form");
        if self.groebner.is_empty() {
            return p.clone();
        }
        reduce(p, &self.groebner, self.order)
    }

    pub fn contains(&self, p: &MPoly) -> bool {
        self.reduce(p).is_zero()
    }

    /// The sum of this ideal and the ideal generated by `extra`.
    pub fn extend(&self, extra: &[MPoly], step_cap: u64) -> Result<IdealPres> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        IdealPres::new(self.arity, gens, self.order, step_cap)
    }
}

/// Normal form of `p` modulo `ideal`.
pub fn normal_form(p: &MPoly, ideal: &IdealPres) -> Result<MPoly> {
    p.check_arity(ideal.arity)?;
    Ok(ideal.reduce(p))
}

/// True iff `p` lies in `ideal`. Panics on an arity mismatch.
pub fn ideal_membership(p: &MPoly, ideal: &IdealPres) -> bool {
    ideal.contains(p)
}

/// A commutative algebra presented as a polynomial ring modulo an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPres {
    variables: Vec<String>,
    ideal: IdealPres,
}

fn check_names(names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for n in names {
        let valid = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
        if !valid {
            return Err(Error::Malformed(format!("invalid variable name `{n}`")));
        }
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

impl AlgebraPres {
    /// Presents `Q[variables] / <generators>` under grevlex with the default step cap.
    pub fn new(variables: Vec<String>, generators: Vec<MPoly>) -> Result<Self> {
        Self::with_options(variables, generators, MonomialOrder::default(), DEFAULT_STEP_CAP)
    }

    pub fn with_options(
        variables: Vec<String>,
        generators: Vec<MPoly>,
        order: MonomialOrder,
        step_cap: u64,
    ) -> Result<Self> {
        check_names(&variables)?;
        let ideal = IdealPres::new(variables.len(), generators, order, step_cap)?;
        if ideal.is_unit() {
            return Err(Error::ImproperIdeal);
        }
        Ok(AlgebraPres { variables, ideal })
    }

    /// The free polynomial algebra on `names`.
    pub fn polynomial(names: &[&str]) -> Self {
        let variables: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        check_names(&variables).expect("valid variable names");
        let ideal = IdealPres::zero(variables.len());
        AlgebraPres { variables, ideal }
    }

    /// The ground field, with no variables.
    pub fn rationals() -> Self {
        Self::polynomial(&[])
    }

    /// Convenience constructor parsing generator strings.
    pub fn parse(names: &[&str], generators: &[&str]) -> Result<Self> {
        let variables: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let gens = generators.iter().map(|g| parse_poly(g, &variables)).collect::<Result<Vec<_>>>()?;
        Self::new(variables, gens)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn ideal(&self) -> &IdealPres {
        &self.ideal
    }

    pub fn is_free(&self) -> bool {
        self.ideal.is_zero_ideal()
    }

    pub fn var(&self, i: usize) -> MPoly {
        self.reduce(&MPoly::var(self.nvars(), i))
    }

    pub fn zero(&self) -> MPoly {
        MPoly::zero(self.nvars())
    }

    pub fn one(&self) -> MPoly {
        MPoly::one(self.nvars())
    }

    pub fn constant(&self, c: i64) -> MPoly {
        MPoly::from_int(self.nvars(), c)
    }

    /// Canonical representative of the residue class of `p`.
    pub fn reduce(&self, p: &MPoly) -> MPoly {
        self.ideal.reduce(p)
    }

    pub fn normal_form(&self, p: &MPoly) -> Result<MPoly> {
        normal_form(p, &self.ideal)
    }

    pub fn is_zero(&self, p: &MPoly) -> bool {
        self.ideal.contains(p)
    }

    pub fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.reduce(&(a * b))
    }

    /// Parses `text` in this algebra's variables and reduces it.
    pub fn poly(&self, text: &str) -> Result<MPoly> {
        Ok(self.reduce(&parse_poly(text, &self.variables)?))
    }

    pub fn render(&self, p: &MPoly) -> String {
        p.render(&self.variables)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// The tensor product over the rationals: disjoint variables, union of ideals.
    ///
    /// Variables of `other` whose names collide with ours are renamed by
    /// appending primes; the returned list records each `(old, new)` rename.
    pub fn tensor(&self, other: &AlgebraPres) -> Result<(AlgebraPres, Vec<(String, String)>)> {
        let mut names = self.variables.clone();
        let mut renamed = Vec::new();
        for v in &other.variables {
            let mut name = v.clone();
            while names.contains(&name) || (name != *v && other.variables.contains(&name)) {
                name.push('\'');
            }
            if name != *v {
                renamed.push((v.clone(), name.clone()));
            }
            names.push(name);
        }
        let n = names.len();
        let mut gens: Vec<MPoly> = self.ideal.generators.iter().map(|g| g.embed(n, 0)).collect();
        gens.extend(other.ideal.generators.iter().map(|g| g.embed(n, self.nvars())));
        let alg = if gens.is_empty() {
            AlgebraPres { variables: names, ideal: IdealPres::zero(n) }
        } else {
            let order = self.ideal.order;
            AlgebraPres::with_options(names, gens, order, DEFAULT_STEP_CAP)?
        };
        Ok((alg, renamed))
    }

    /// The quotient by the additional generators `extra`.
    pub fn quotient(&self, extra: &[MPoly], step_cap: u64) -> Result<AlgebraPres> {
        let ideal = self.ideal.extend(extra, step_cap)?;
        if ideal.is_unit() {
            return Err(Error::ImproperIdeal);
        }
        Ok(AlgebraPres { variables: self.variables.clone(), ideal })
    }

    /// Errors unless `other` is the same presented algebra.
    pub fn expect_same(&self, other: &AlgebraPres, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(format!("{what}: {self} vs {other}")))
        }
    }
}

impl fmt::Display for AlgebraPres {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.variables.join(","))?;
        if !self.ideal.is_zero_ideal() {
            let gens: Vec<String> = self.ideal.groebner.iter().map(|g| self.render(g)).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_examples() {
        let a = AlgebraPres::parse(&["x"], &["x^2"]).unwrap();
        assert!(a.poly("x^2").unwrap().is_zero());
        let free = AlgebraPres::polynomial(&["x", "y"]);
        let p = free.poly("x*y + 1").unwrap();
        assert_eq!(normal_form(&p, free.ideal()).unwrap(), p);
        let b = AlgebraPres::parse(&["x", "y"], &["x^2 + y", "y"]).unwrap();
        assert!(b.poly("x^3").unwrap().is_zero());
        assert!(normal_form(&MPoly::var(1, 0), b.ideal()).is_err());
    }

    #[test]
    fn membership_examples() {
        let b = AlgebraPres::parse(&["x", "y"], &["x^2 + y", "y"]).unwrap();
        let v = b.variables().to_vec();
        assert!(ideal_membership(&parse_poly("x^2 + y", &v).unwrap(), b.ideal()));
        let a = AlgebraPres::parse(&["x"], &["x^2"]).unwrap();
        assert!(!ideal_membership(&MPoly::var(1, 0), a.ideal()));
        assert!(ideal_membership(&MPoly::zero(1), a.ideal()));
    }

    #[test]
    fn unit_ideal_is_rejected() {
        assert!(matches!(AlgebraPres::parse(&["x"], &["x - 1", "x"]), Err(Error::ImproperIdeal)));
        assert!(matches!(AlgebraPres::parse(&["x", "x"], &[]), Err(Error::DuplicateName(_))));
    }

    #[test]
    fn tensor_renames_collisions() {
        let a = AlgebraPres::parse(&["x"], &["x^2"]).unwrap();
        let b = AlgebraPres::parse(&["x", "y"], &["y^3"]).unwrap();
        let (t, renamed) = a.tensor(&b).unwrap();
        assert_eq!(t.variables(), &["x", "x'", "y"]);
        assert_eq!(renamed, vec![("x".to_string(), "x'".to_string())]);
        assert!(t.poly("x^2").unwrap().is_zero());
        assert!(!t.poly("x'^2").unwrap().is_zero());
        assert!(t.poly("y^3*x'").unwrap().is_zero());
    }
}
