//! Restriction of a pseudoalgebra to the zero set of an ideal.
//!
//! For an ideal `J` of the coefficient algebra `A`, the elements
//! `E^J = {X | θ(X)(J) ⊂ J}` form a subalgebra, `J E` is an ideal in it, and
//! the quotient `E^J / J E` is a pseudoalgebra over `A / J`.
//!
//! Membership in `E^J` is tested on the generators `g_k` of `J` only: for
//! `f = Σ a_k g_k` the Leibniz rule gives
//! `θ(X)(f) = Σ θ(X)(a_k) g_k + Σ a_k θ(X)(g_k)`, which lies in `J` as soon as
//! every `θ(X)(g_k)` does. Since `E` is free, `X ∈ J E` iff every coordinate of
//! `X` lies in `J`.

use crate::error::{Error, Result};
use crate::exactpoly::{AlgebraPres, MPoly, DEFAULT_STEP_CAP};
use crate::pseudoalg::{PAElement, PAlg, Pseudoalgebra};

#[derive(Debug, Clone)]
pub struct RestrictionCtx {
    parent: PAlg,
    generators: Vec<MPoly>,
    quotient: AlgebraPres,
}

impl RestrictionCtx {
    /// Builds the context; errors when `J` together with the parent ideal contains 1.
    pub fn new(parent: PAlg, generators: Vec<MPoly>) -> Result<Self> {
        Self::with_step_cap(parent, generators, DEFAULT_STEP_CAP)
    }

    pub fn with_step_cap(parent: PAlg, generators: Vec<MPoly>, step_cap: u64) -> Result<Self> {
        let a = parent.algebra();
        for g in &generators {
            g.check_arity(a.nvars())?;
        }
        let generators: Vec<MPoly> = generators.iter().map(|g| a.reduce(g)).collect();
        let quotient = a.quotient(&generators, step_cap)?;
        Ok(RestrictionCtx { parent, generators, quotient })
    }

    pub fn parent(&self) -> &PAlg {
        &self.parent
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    /// `A / J`, presented on the parent's variables.
    pub fn quotient_algebra(&self) -> &AlgebraPres {
        &self.quotient
    }

    pub fn in_ideal(&self, f: &MPoly) -> bool {
        self.quotient.is_zero(f)
    }

    fn check(&self, x: &PAElement) -> Result<()> {
        if x.coords().len() != self.parent.rank() {
            return Err(Error::RankMismatch { expected: self.parent.rank(), found: x.coords().len() });
        }
        Ok(())
    }

    /// `X ∈ E^J`: the anchor of `X` maps every generator of `J` into `J`.
    pub fn in_upper(&self, x: &PAElement) -> Result<bool> {
        self.check(x)?;
        Ok(self.generators.iter().all(|g| self.in_ideal(&self.parent.anchor_apply(x, g))))
    }

    /// `X ∈ J E`: every coordinate lies in `J`.
    pub fn in_lower(&self, x: &PAElement) -> Result<bool> {
        self.check(x)?;
        Ok(x.coords().iter().all(|c| self.in_ideal(c)))
    }

    /// Coordinates of the class of `X` over `A / J`.
    pub fn reduce(&self, x: &PAElement) -> Vec<MPoly> {
        x.coords().iter().map(|c| self.quotient.reduce(c)).collect()
    }

    fn require_upper(&self, x: &PAElement, what: &str) -> Result<()> {
        if self.in_upper(x)? {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{what} = {} does not preserve the ideal",
                self.parent.render(x)
            )))
        }
    }

    /// The bracket of classes: bracket in the parent, then reduce modulo `J`.
    pub fn quotient_bracket(&self, x: &PAElement, y: &PAElement) -> Result<Vec<MPoly>> {
        self.require_upper(x, "first argument")?;
        self.require_upper(y, "second argument")?;
        Ok(self.reduce(&self.parent.bracket(x, y)))
    }

    /// The anchor of a class applied to a function, as an element of `A / J`.
    pub fn quotient_anchor(&self, x: &PAElement, f: &MPoly) -> Result<MPoly> {
        self.require_upper(x, "element")?;
        f.check_arity(self.quotient.nvars())?;
        Ok(self.quotient.reduce(&self.parent.anchor_apply(x, f)))
    }

    /// Renders reduced coordinates with the parent's basis names.
    pub fn render(&self, coords: &[MPoly]) -> String {
        PAlg::render_coeffs(self.parent.basis_names(), coords, self.quotient.variables())
    }
}
