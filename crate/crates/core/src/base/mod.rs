//! Inducing modules: concrete modules over `b` (or over `m^(t) ⊕ Cc`) with
//! an enumerable parity-graded basis and computable generator action.
//!
//! Families:
//! - [`verma_top`] and [`b0_module`]: the one- or two-dimensional `b^(0)`-modules.
//! - [`whittaker_finite_top`]: the two-dimensional `A_φ` over `m^(t) ⊕ Cc`.
//! - [`finite_top_induction`]: induction of a finite top up to `b`, e.g. `V_φ`.
//! - [`b1_module`]: `U ⊕ G_0 U` over `b^(1)` for a module `U` of `span{L_0, L_1, c}`.
//!
//! [`validate_module`] checks the super-module axiom on a finite window.

mod b1;
mod induce;
mod table;
mod whittaker;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{bracket_terms, Generator, Parity, Subalgebra};
use crate::error::{Error, Result};
use crate::pbw::PbwMonomial;
use crate::rational::{q, Q};

pub use b1::{b1_module, B1Module, EvenModule, ShiftFamily};
pub use induce::{finite_top_induction, InducedBase};
pub use table::{b0_module, b0_one_dimensional, verma_top, TableModule};
pub use whittaker::{
    a_phi_submodule_witness, phi_validate, whittaker_finite_top, whittaker_module, UClosure, WhittakerData,
};

/// A finite rational combination of basis indices of a base module.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct BaseVector {
    terms: BTreeMap<usize, Q>,
}

impl BaseVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Q::one())
    }

    pub fn term(i: usize, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(i, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut out = Self::zero();
        for (i, c) in terms {
            out.add_term(i, c);
        }
        out
    }

    pub fn add_term(&mut self, i: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &BaseVector, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (i, c) in &other.terms {
            self.add_term(*i, c * s);
        }
    }

    pub fn scaled(&self, s: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn sub(&self, other: &BaseVector) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn coefficient(&self, i: usize) -> Q {
        self.terms.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Renders with the module's basis labels, e.g. `2*w - 1/3*G0*w`.
    pub fn display_with(&self, module: &dyn BaseModule) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (i, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let a = if neg { -c } else { c.clone() };
            s.push_str(match (n, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if !a.is_one() {
                s.push_str(&crate::rational::to_short_string(&a));
                s.push('*');
            }
            s.push_str(&module.basis_label(*i));
        }
        s
    }
}

/// A module over `b` (or over one of its subalgebras containing `c`).
///
/// Implementations provide the action of non-central generators in
/// [`BaseModule::domain`]; `c` and the domain check are handled by
/// [`BaseModule::act`].
pub trait BaseModule: fmt::Debug + Send + Sync {
    fn label(&self) -> String;

    /// The scalar by which `c` acts.
    fn central_charge(&self) -> Q;

    /// Declared annihilation level `t`: `L_i` and `G_i` act as zero for `i > t`.
    fn level(&self) -> u32;

    /// The acting subalgebra (`c` is always included).
    fn domain(&self) -> Subalgebra;

    /// `None` for infinite-dimensional modules.
    fn dimension(&self) -> Option<usize>;

    fn parity(&self, index: usize) -> Parity;

    fn basis_label(&self, index: usize) -> String;

    fn index_of_label(&self, label: &str) -> Option<usize>;

    /// Action of a non-central generator of the domain on a basis vector.
    fn act_generator(&self, g: Generator, index: usize) -> Result<BaseVector>;

    /// A reason the module is known not to be simple, if one has been found.
    fn simplicity_obstruction(&self) -> Option<String> {
        None
    }

    fn act(&self, g: Generator, index: usize) -> Result<BaseVector> {
        if let Some(d) = self.dimension() {
            if index >= d {
                return Err(Error::InvalidModule(format!(
                    "basis index {index} out of range for {}-dimensional {}",
                    d,
                    self.label()
                )));
            }
        }
        if g == Generator::C {
            return Ok(BaseVector::term(index, self.central_charge()));
        }
        if !self.domain().contains(g) {
            return Err(Error::OutsideDomain {
                generator: g.to_string(),
                domain: self.domain().to_string(),
            });
        }
        self.act_generator(g, index)
    }
}

pub type BaseModuleSpec = Arc<dyn BaseModule>;

pub fn act_vector(module: &dyn BaseModule, g: Generator, v: &BaseVector) -> Result<BaseVector> {
    let mut out = BaseVector::zero();
    for (i, c) in v.iter() {
        out.add_scaled(&module.act(g, i)?, c);
    }
    Ok(out)
}

/// Applies a monomial (rightmost factor first), `c^e` acting as `l^e`.
pub fn apply_monomial(module: &dyn BaseModule, m: &PbwMonomial, v: &BaseVector) -> Result<BaseVector> {
    let mut out = v.clone();
    for &(g, e) in m.factors().iter().rev() {
        for _ in 0..e {
            if out.is_zero() {
                return Ok(out);
            }
            out = act_vector(module, g, &out)?;
        }
    }
    if m.c_exp() > 0 {
        let l = module.central_charge();
        let mut s = Q::one();
        for _ in 0..m.c_exp() {
            s *= &l;
        }
        out = out.scaled(&s);
    }
    Ok(out)
}

/// Parity of a base vector, if homogeneous (zero counts as even).
pub fn vector_parity(module: &dyn BaseModule, v: &BaseVector) -> Option<Parity> {
    let mut it = v.support().map(|i| module.parity(i));
    let first = it.next().unwrap_or(Parity::Even);
    it.all(|p| p == first).then_some(first)
}

/// Generators of the module's domain with indices in `lo..=hi`, L before G
/// at each index, followed by `c`.
pub fn domain_generators(module: &dyn BaseModule, lo: i64, hi: i64) -> Vec<Generator> {
    let mut out: Vec<Generator> = (lo..=hi)
        .flat_map(|m| [Generator::L(m), Generator::G(m)])
        .filter(|g| module.domain().contains(*g))
        .collect();
    out.push(Generator::C);
    out
}

/// Number of basis vectors to sample: `count`, capped by the dimension.
pub fn sample_count(module: &dyn BaseModule, count: usize) -> usize {
    module.dimension().map_or(count, |d| d.min(count))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub x: Generator,
    pub y: Generator,
    pub basis: usize,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) on basis #{}: {}", self.x, self.y, self.basis, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub module: String,
    pub index_bound: i64,
    pub basis_count: usize,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `x(yv) - (-1)^{|x||y|} y(xv) = [x,y]v` for all domain generators
/// with indices in `[0, index_bound]` (and `c`) on the first `basis_count`
/// basis vectors, plus parity compatibility and the central charge.
pub fn validate_module(module: &dyn BaseModule, index_bound: i64, basis_count: usize) -> ValidationReport {
    let gens = domain_generators(module, 0, index_bound);
    let n = sample_count(module, basis_count);
    let mut violations = Vec::new();
    let mut checked = 0;
    let mut fail = |x: Generator, y: Generator, b: usize, detail: String| {
        violations.push(Violation { x, y, basis: b, detail });
    };
    for b in 0..n {
        let pb = module.parity(b);
        for &x in &gens {
            match module.act(x, b) {
                Ok(img) => {
                    let want = x.parity() + pb;
                    if img.support().any(|i| module.parity(i) != want) {
                        fail(x, x, b, format!("image {} has wrong parity", img.display_with(module)));
                    }
                    if x == Generator::C && img != BaseVector::term(b, module.central_charge()) {
                        fail(x, x, b, "c does not act as the central charge".into());
                    }
                }
                Err(e) => fail(x, x, b, e.to_string()),
            }
        }
        for (ix, &x) in gens.iter().enumerate() {
            for &y in &gens[ix..] {
                checked += 1;
                let v = BaseVector::basis(b);
                let res = (|| -> Result<(BaseVector, BaseVector)> {
                    let xyv = act_vector(module, x, &act_vector(module, y, &v)?)?;
                    let yxv = act_vector(module, y, &act_vector(module, x, &v)?)?;
                    let lhs = xyv.sub(&yxv.scaled(&q(x.parity().sign(y.parity()))));
                    let mut rhs = BaseVector::zero();
                    for (g, c) in bracket_terms(x, y) {
                        rhs.add_scaled(&act_vector(module, g, &v)?, &c);
                    }
                    Ok((lhs, rhs))
                })();
                match res {
                    Ok((lhs, rhs)) if lhs != rhs => fail(
                        x,
                        y,
                        b,
                        format!(
                            "lhs {} != [x,y]v {}",
                            lhs.display_with(module),
                            rhs.display_with(module)
                        ),
                    ),
                    Ok(_) => {}
                    Err(e) => fail(x, y, b, e.to_string()),
                }
            }
        }
    }
    ValidationReport {
        module: module.label(),
        index_bound,
        basis_count: n,
        checked,
        violations,
    }
}

/// Checks that `L_i` and `G_i` act as zero for `from <= i <= to` on the
/// first `samples` basis vectors. Returns the first nonzero action found.
pub fn check_annihilation(
    module: &dyn BaseModule,
    from: i64,
    to: i64,
    samples: usize,
) -> Result<Option<(Generator, usize, BaseVector)>> {
    for i in from..=to {
        for g in [Generator::L(i), Generator::G(i)] {
            if !module.domain().contains(g) {
                continue;
            }
            for b in 0..sample_count(module, samples) {
                let img = module.act(g, b)?;
                if !img.is_zero() {
                    return Ok(Some((g, b, img)));
                }
            }
        }
    }
    Ok(None)
}

pub(crate) fn parse_generator_label(tok: &str) -> Option<(Generator, u32)> {
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => (b, e.parse::<u32>().ok().filter(|e| *e > 0)?),
        None => (tok, 1),
    };
    let mut chars = base.chars();
    let kind = chars.next()?;
    let idx: i64 = chars.as_str().parse().ok()?;
    let g = match kind {
        'L' => Generator::L(idx),
        'G' => Generator::G(idx),
        _ => return None,
    };
    Some((g, exp))
}

pub(crate) fn generator_label(g: Generator, e: u32) -> String {
    let base = match g {
        Generator::L(m) => format!("L{m}"),
        Generator::G(m) => format!("G{m}"),
        Generator::C => "c".into(),
    };
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}
