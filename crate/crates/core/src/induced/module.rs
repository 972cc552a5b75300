use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::index::{pairs_of_weight, IndexPair};
use crate::algebra::{Generator, Subalgebra};
use crate::base::{apply_monomial, verma_top, whittaker_module, BaseModule, BaseModuleSpec, BaseVector, WhittakerData};
use crate::error::{Error, Result};
use crate::pbw::{monomial_multiply, split_for_induction, AlgebraElement, PbwMonomial};
use crate::rational::{to_short_string, Q};

/// A vector `Σ G^k L^i ⊗ v_{k,i}` of an induced module.
///
/// Coefficients `v_{k,i}` are base vectors; zero coefficients are never
/// stored. Terms iterate in increasing principal order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct ModuleVector {
    terms: BTreeMap<IndexPair, BaseVector>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `G^k L^i ⊗ x`.
    pub fn single(pair: IndexPair, x: BaseVector) -> Self {
        let mut out = Self::zero();
        out.add(pair, &x);
        out
    }

    /// `1 ⊗ x`.
    pub fn from_base(x: BaseVector) -> Self {
        Self::single(IndexPair::zero(), x)
    }

    pub fn add(&mut self, pair: IndexPair, x: &BaseVector) {
        self.add_scaled(pair, x, &Q::one());
    }

    pub fn add_scaled(&mut self, pair: IndexPair, x: &BaseVector, s: &Q) {
        if x.is_zero() || s.is_zero() {
            return;
        }
        let e = self.terms.entry(pair.clone()).or_default();
        e.add_scaled(x, s);
        if e.is_zero() {
            self.terms.remove(&pair);
        }
    }

    pub fn add_vector(&mut self, other: &ModuleVector, s: &Q) {
        for (p, x) in &other.terms {
            self.add_scaled(p.clone(), x, s);
        }
    }

    pub fn scaled(&self, s: &Q) -> Self {
        let mut out = Self::zero();
        out.add_vector(self, s);
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> Self {
        let mut out = self.clone();
        out.add_vector(other, &-Q::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexPair, &BaseVector)> {
        self.terms.iter()
    }

    /// Number of `(pair, base index)` terms.
    pub fn len(&self) -> usize {
        self.terms.values().map(|x| x.support().count()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// The coefficient `v_{k,i}`.
    pub fn coefficient(&self, pair: &IndexPair) -> BaseVector {
        self.terms.get(pair).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &IndexPair> {
        self.terms.keys()
    }

    /// `deg(v)`: the largest index pair in the support.
    pub fn deg(&self) -> Result<IndexPair> {
        self.terms.keys().next_back().cloned().ok_or(Error::ZeroVector)
    }

    /// Whether `v` lies in `1 ⊗ V`.
    pub fn is_base(&self) -> bool {
        self.terms.keys().all(IndexPair::is_zero)
    }

    pub fn max_weight(&self) -> u64 {
        self.terms.keys().map(IndexPair::weight).max().unwrap_or(0)
    }
}

/// `Ind(V) = U(R) ⊗_{U(b)} V` for a `b`-module `V`.
///
/// Every operation fails with [`Error::WeightBudget`] rather than produce a
/// term of weight above `max_weight`.
#[derive(Debug, Clone)]
pub struct InducedModule {
    base: BaseModuleSpec,
    max_weight: u64,
}

impl InducedModule {
    pub fn new(base: BaseModuleSpec, max_weight: u64) -> Result<Self> {
        if base.domain() != Subalgebra::B {
            return Err(Error::InvalidModule(format!(
                "Ind needs a b-module, {} acts on {}",
                base.label(),
                base.domain()
            )));
        }
        Ok(Self { base, max_weight })
    }

    /// The Verma module `M(λ, l)`.
    pub fn verma(lambda: &Q, l: &Q, max_weight: u64) -> Result<Self> {
        Self::new(Arc::new(verma_top(lambda, l)), max_weight)
    }

    /// The Whittaker module `W(φ, l) = Ind(V_φ)`.
    pub fn whittaker(d: &WhittakerData, max_weight: u64) -> Result<Self> {
        Self::new(Arc::new(whittaker_module(d)?), max_weight)
    }

    pub fn base(&self) -> &BaseModuleSpec {
        &self.base
    }

    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    pub fn with_max_weight(&self, max_weight: u64) -> Self {
        Self {
            base: self.base.clone(),
            max_weight,
        }
    }

    pub fn label(&self) -> String {
        format!("Ind({})", self.base.label())
    }

    fn check_budget(&self, pair: &IndexPair) -> Result<()> {
        if pair.weight() > self.max_weight {
            return Err(Error::WeightBudget {
                weight: pair.weight(),
                max_weight: self.max_weight,
            });
        }
        Ok(())
    }

    /// `G^k L^i ⊗ e_b`, checked against the budget and the base dimension.
    pub fn basis_vector(&self, pair: IndexPair, b: usize) -> Result<ModuleVector> {
        self.check_budget(&pair)?;
        if self.base.dimension().is_some_and(|d| b >= d) {
            return Err(Error::InvalidModule(format!("base index {b} out of range for {}", self.base.label())));
        }
        Ok(ModuleVector::single(pair, BaseVector::basis(b)))
    }

    /// `m · (G^k L^i ⊗ x)` for a monomial `m`.
    fn act_monomial_on_term(&self, m: &PbwMonomial, pair: &IndexPair, x: &BaseVector, out: &mut ModuleVector) -> Result<()> {
        let product = monomial_multiply(m, &pair.monomial());
        for (mono, coeff) in product.terms() {
            let (prefix, suffix) = split_for_induction(mono, Subalgebra::B)?;
            let p = IndexPair::from_monomial(&prefix).ok_or_else(|| {
                Error::InvalidModule(format!("{prefix} is not a monomial in R_-"))
            })?;
            self.check_budget(&p)?;
            let image = apply_monomial(self.base.as_ref(), &suffix, x)?;
            out.add_scaled(p, &image, coeff);
        }
        Ok(())
    }

    pub fn act_generator(&self, g: Generator, v: &ModuleVector) -> Result<ModuleVector> {
        let m = PbwMonomial::generator(g);
        let mut out = ModuleVector::zero();
        for (p, x) in v.terms() {
            self.act_monomial_on_term(&m, p, x, &mut out)?;
        }
        Ok(out)
    }

    /// `u · v` for an element `u` of `U(R)`.
    pub fn act(&self, u: &AlgebraElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (m, c) in u.terms() {
            let mut part = ModuleVector::zero();
            for (p, x) in v.terms() {
                self.act_monomial_on_term(m, p, x, &mut part)?;
            }
            out.add_vector(&part, c);
        }
        Ok(out)
    }

    /// `dim` of the weight-`n` part `U(R_-)_{-n} ⊗ V`.
    pub fn level_dimension(&self, n: u32) -> Result<usize> {
        level_dimension(self.base.as_ref(), n)
    }

    /// Basis vectors `G^k L^i ⊗ e_b` of weight `n`, pairs in principal
    /// order and base index inner.
    pub fn level_basis(&self, n: u32) -> Result<Vec<(IndexPair, usize)>> {
        let d = self.base.dimension().ok_or(Error::InfiniteDimensional)?;
        Ok(pairs_of_weight(n)
            .into_iter()
            .flat_map(|p| (0..d).map(move |b| (p.clone(), b)))
            .collect())
    }

    /// Renders as `2*G[-1]*L[-1] | v - 1/2 | G0v`-style text.
    pub fn display_vector(&self, v: &ModuleVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        let mut first = true;
        for (p, x) in v.terms() {
            for (b, c) in x.iter() {
                let neg = c < &Q::zero();
                let a = if neg { -c } else { c.clone() };
                s.push_str(match (first, neg) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                });
                first = false;
                if p.is_zero() {
                    s.push_str(&to_short_string(&a));
                } else {
                    if !a.is_one() {
                        s.push_str(&to_short_string(&a));
                        s.push('*');
                    }
                    s.push_str(&p.to_string());
                }
                s.push_str(" | ");
                s.push_str(&self.base.basis_label(b));
            }
        }
        s
    }
}

/// `d × #{(k, i) : w(k, i) = n}` for a base of finite dimension `d`.
pub fn level_dimension(base: &dyn BaseModule, n: u32) -> Result<usize> {
    let d = base.dimension().ok_or(Error::InfiniteDimensional)?;
    Ok(d * pairs_of_weight(n).len())
}
