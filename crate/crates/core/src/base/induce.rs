use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{apply_monomial, generator_label, parse_generator_label, BaseModule, BaseModuleSpec, BaseVector};
use crate::algebra::{Generator, Parity, Subalgebra};
use crate::error::{Error, Result};
use crate::pbw::{monomial_multiply_in, split_for_induction, MonomialOrder, PbwMonomial};
use crate::rational::Q;

/// `U(outer) ⊗_{U(inner)} top` for a finite-dimensional `top`.
///
/// Basis vectors are `m ⊗ e_j` with `m` a normal monomial in the complement
/// generators (those of `outer` not in `inner`) and `e_j` a top basis vector.
/// They are numbered by monomial degree, then top index, then monomial
/// order; numbering is assigned lazily and never changes once assigned.
#[derive(Debug)]
pub struct InducedBase {
    top: BaseModuleSpec,
    inner: Subalgebra,
    outer: Subalgebra,
    order: MonomialOrder,
    complement: Vec<Generator>,
    top_dim: usize,
    label: String,
    basis: Mutex<BasisTable>,
    cache: Mutex<HashMap<(Generator, usize), BaseVector>>,
}

#[derive(Debug, Default)]
struct BasisTable {
    keys: Vec<(PbwMonomial, usize)>,
    index: HashMap<(PbwMonomial, usize), usize>,
    /// All keys of monomial degree `<= degree` are numbered.
    degree: Option<u32>,
    finite: bool,
}

fn complement_generators(inner: Subalgebra, outer: Subalgebra) -> Result<Vec<Generator>> {
    let unsupported = || Error::UnsupportedInduction {
        inner: inner.to_string(),
        outer: outer.to_string(),
    };
    let window = match (inner, outer) {
        (Subalgebra::Rmn(0, 1), Subalgebra::B) => 0..=1,
        (Subalgebra::M(t), Subalgebra::B) => 0..=t as i64,
        (Subalgebra::P(t), Subalgebra::M(s)) if s == t => t as i64 + 1..=t as i64 + 1,
        _ => return Err(unsupported()),
    };
    let mut gens: Vec<Generator> = window
        .flat_map(|m| [Generator::L(m), Generator::G(m)])
        .filter(|g| outer.contains(*g) && !inner.contains(*g))
        .collect();
    let order = MonomialOrder::Split(inner);
    gens.sort_by_key(|g| order.rank(*g));
    Ok(gens)
}

/// Normal monomials of the given degree in `gens` (odd exponents at most 1).
fn monomials_of_degree(gens: &[Generator], degree: u32) -> Vec<PbwMonomial> {
    fn rec(gens: &[Generator], left: u32, acc: &mut Vec<(Generator, u32)>, out: &mut Vec<PbwMonomial>) {
        let Some((&g, rest)) = gens.split_first() else {
            if left == 0 {
                out.push(PbwMonomial::from_factors(acc.iter().copied(), 0));
            }
            return;
        };
        let max = if g.parity().is_odd() { left.min(1) } else { left };
        for e in 0..=max {
            acc.push((g, e));
            rec(rest, left - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(gens, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

impl InducedBase {
    fn ensure_degree(&self, table: &mut BasisTable, degree: u32) {
        while !table.finite && table.degree.is_none_or(|d| d < degree) {
            let d = table.degree.map_or(0, |d| d + 1);
            let monos = monomials_of_degree(&self.complement, d);
            if monos.is_empty() {
                table.finite = true;
                break;
            }
            for j in 0..self.top_dim {
                for m in &monos {
                    let key = (m.clone(), j);
                    table.index.insert(key.clone(), table.keys.len());
                    table.keys.push(key);
                }
            }
            table.degree = Some(d);
        }
    }

    /// Basis key of an index, enumerating further if needed.
    pub fn key(&self, index: usize) -> (PbwMonomial, usize) {
        let mut table = self.basis.lock().unwrap();
        while index >= table.keys.len() {
            let next = table.degree.map_or(0, |d| d + 1);
            self.ensure_degree(&mut table, next);
            assert!(!table.finite || index < table.keys.len(), "basis index {index} out of range");
        }
        table.keys[index].clone()
    }

    /// Index of `m ⊗ e_j`, with `m` a normal complement monomial.
    pub fn index_of(&self, m: &PbwMonomial, j: usize) -> Option<usize> {
        if j >= self.top_dim || m.c_exp() != 0 {
            return None;
        }
        let mut table = self.basis.lock().unwrap();
        self.ensure_degree(&mut table, m.degree());
        table.index.get(&(m.clone(), j)).copied()
    }

    pub fn top(&self) -> &BaseModuleSpec {
        &self.top
    }

    pub fn complement(&self) -> &[Generator] {
        &self.complement
    }
}

/// Induces a finite top over `inner` to a module over `outer`.
///
/// Supported pairs: `(R^(0,1), b)`, `(m^(t), b)` and `(p^(t), m^(t))`.
pub fn finite_top_induction(top: BaseModuleSpec, inner: Subalgebra, outer: Subalgebra) -> Result<InducedBase> {
    let complement = complement_generators(inner, outer)?;
    if top.domain() != inner {
        return Err(Error::InvalidModule(format!(
            "top module acts on {}, not {}",
            top.domain(),
            inner
        )));
    }
    let top_dim = top.dimension().ok_or(Error::InfiniteDimensional)?;
    let label = format!("Ind[{inner} -> {outer}]({})", top.label());
    Ok(InducedBase {
        top,
        inner,
        outer,
        order: MonomialOrder::Split(inner),
        complement,
        top_dim,
        label,
        basis: Mutex::new(BasisTable::default()),
        cache: Mutex::new(HashMap::new()),
    })
}

impl BaseModule for InducedBase {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn central_charge(&self) -> Q {
        self.top.central_charge()
    }

    fn level(&self) -> u32 {
        self.top.level()
    }

    fn domain(&self) -> Subalgebra {
        self.outer
    }

    fn dimension(&self) -> Option<usize> {
        if self.complement.iter().any(|g| !g.parity().is_odd()) {
            return None;
        }
        Some(self.top_dim << self.complement.len())
    }

    fn parity(&self, index: usize) -> Parity {
        let (m, j) = self.key(index);
        m.parity() + self.top.parity(j)
    }

    fn basis_label(&self, index: usize) -> String {
        let (m, j) = self.key(index);
        let mut parts: Vec<String> = m.factors().iter().map(|(g, e)| generator_label(*g, *e)).collect();
        parts.push(self.top.basis_label(j));
        parts.join("*")
    }

    fn index_of_label(&self, label: &str) -> Option<usize> {
        let toks: Vec<&str> = label.split('*').collect();
        // the top label may itself contain '*', so try every split point
        for cut in 0..toks.len() {
            let Some(j) = self.top.index_of_label(&toks[cut..].join("*")) else {
                continue;
            };
            let factors: Option<Vec<(Generator, u32)>> = toks[..cut].iter().map(|t| parse_generator_label(t)).collect();
            let Some(factors) = factors else { continue };
            let m = PbwMonomial::from_factors(factors, 0);
            if m.is_normal(self.order) && m.factors().iter().all(|(g, _)| self.complement.contains(g)) {
                return self.index_of(&m, j);
            }
        }
        None
    }

    fn act_generator(&self, g: Generator, index: usize) -> Result<BaseVector> {
        if let Some(hit) = self.cache.lock().unwrap().get(&(g, index)) {
            return Ok(hit.clone());
        }
        let (m, j) = self.key(index);
        let product = monomial_multiply_in(self.order, &PbwMonomial::generator(g), &m);
        let mut out = BaseVector::zero();
        for (mono, coeff) in product.terms() {
            let (prefix, suffix) = split_for_induction(mono, self.inner)?;
            let image = apply_monomial(self.top.as_ref(), &suffix, &BaseVector::basis(j))?;
            for (jj, c) in image.iter() {
                let idx = self.index_of(&prefix, jj).ok_or_else(|| {
                    Error::InvalidModule(format!("{prefix} is not a complement monomial of {}", self.label))
                })?;
                out.add_term(idx, coeff * c);
            }
        }
        self.cache.lock().unwrap().insert((g, index), out.clone());
        Ok(out)
    }

    fn simplicity_obstruction(&self) -> Option<String> {
        self.top.simplicity_obstruction()
    }
}

/// Convenience for callers holding a concrete top.
pub(crate) fn induce_arc<T: BaseModule + 'static>(top: T, inner: Subalgebra, outer: Subalgebra) -> Result<InducedBase> {
    finite_top_induction(Arc::new(top), inner, outer)
}
