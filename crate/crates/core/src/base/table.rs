use std::collections::HashMap;

use num_traits::Zero;

use super::{BaseModule, BaseVector};
use crate::algebra::{Generator, Parity, Subalgebra};
use crate::error::{Error, Result};
use crate::rational::{qf, Q};

/// A finite-dimensional module given by an explicit action table.
///
/// Entries missing from the table act as zero.
#[derive(Debug, Clone)]
pub struct TableModule {
    pub(crate) label: String,
    pub(crate) central_charge: Q,
    pub(crate) level: u32,
    pub(crate) domain: Subalgebra,
    pub(crate) parities: Vec<Parity>,
    pub(crate) labels: Vec<String>,
    pub(crate) table: HashMap<(Generator, usize), BaseVector>,
    pub(crate) obstruction: Option<String>,
}

impl TableModule {
    pub fn new(
        label: impl Into<String>,
        central_charge: Q,
        level: u32,
        domain: Subalgebra,
        basis: Vec<(String, Parity)>,
    ) -> Self {
        let (labels, parities) = basis.into_iter().unzip();
        Self {
            label: label.into(),
            central_charge,
            level,
            domain,
            parities,
            labels,
            table: HashMap::new(),
            obstruction: None,
        }
    }

    /// Sets `g · e_index = image`, replacing any previous entry.
    pub fn with_entry(mut self, g: Generator, index: usize, image: BaseVector) -> Self {
        self.set(g, index, image);
        self
    }

    pub fn set(&mut self, g: Generator, index: usize, image: BaseVector) {
        if image.is_zero() {
            self.table.remove(&(g, index));
        } else {
            self.table.insert((g, index), image);
        }
    }

    pub fn with_obstruction(mut self, reason: Option<String>) -> Self {
        self.obstruction = reason;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Tabulates another finite module for all domain generators with
    /// indices in `0..=max_index`.
    pub fn tabulate(module: &dyn BaseModule, max_index: i64) -> Result<Self> {
        let dim = module.dimension().ok_or(Error::InfiniteDimensional)?;
        let basis = (0..dim).map(|i| (module.basis_label(i), module.parity(i))).collect();
        let mut out = Self::new(
            module.label(),
            module.central_charge(),
            module.level(),
            module.domain(),
            basis,
        );
        for m in 0..=max_index {
            for g in [Generator::L(m), Generator::G(m)] {
                if !module.domain().contains(g) {
                    continue;
                }
                for i in 0..dim {
                    out.set(g, i, module.act(g, i)?);
                }
            }
        }
        out.obstruction = module.simplicity_obstruction();
        Ok(out)
    }
}

impl BaseModule for TableModule {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn central_charge(&self) -> Q {
        self.central_charge.clone()
    }

    fn level(&self) -> u32 {
        self.level
    }

    fn domain(&self) -> Subalgebra {
        self.domain
    }

    fn dimension(&self) -> Option<usize> {
        Some(self.parities.len())
    }

    fn parity(&self, index: usize) -> Parity {
        self.parities[index]
    }

    fn basis_label(&self, index: usize) -> String {
        self.labels[index].clone()
    }

    fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn act_generator(&self, g: Generator, index: usize) -> Result<BaseVector> {
        Ok(self.table.get(&(g, index)).cloned().unwrap_or_default())
    }

    fn simplicity_obstruction(&self) -> Option<String> {
        self.obstruction.clone()
    }
}

/// `L_0` scalar λ, `c` scalar l, `G_0: e_0 -> e_1 -> (λ - l/24) e_0`, rest zero.
fn b0_table(name: &str, top: &str, odd: &str, lambda: &Q, l: &Q) -> TableModule {
    let shift = lambda - l * qf(1, 24);
    let lab = format!("{name}(lambda={lambda}, c={l})");
    if shift.is_zero() {
        return TableModule::new(lab, l.clone(), 0, Subalgebra::B, vec![(top.into(), Parity::Even)])
            .with_entry(Generator::L(0), 0, BaseVector::term(0, lambda.clone()));
    }
    TableModule::new(
        lab,
        l.clone(),
        0,
        Subalgebra::B,
        vec![(top.into(), Parity::Even), (odd.into(), Parity::Odd)],
    )
    .with_entry(Generator::L(0), 0, BaseVector::term(0, lambda.clone()))
    .with_entry(Generator::L(0), 1, BaseVector::term(1, lambda.clone()))
    .with_entry(Generator::G(0), 0, BaseVector::basis(1))
    .with_entry(Generator::G(0), 1, BaseVector::term(0, shift))
}

/// The top `V(λ, l)` of the Verma module `M(λ, l)`: `Cv` when `λ = l/24`,
/// otherwise `Cv ⊕ CG_0v`. `R_+` annihilates it.
pub fn verma_top(lambda: &Q, l: &Q) -> TableModule {
    b0_table("verma", "v", "G0v", lambda, l)
}

/// The simple `b^(0)`-module `Cw ⊕ CG_0w` (one-dimensional when `λ = l/24`).
pub fn b0_module(lambda: &Q, l: &Q) -> TableModule {
    b0_table("b0", "w", "G0w", lambda, l)
}

/// The one-dimensional `b^(0)`-module `Cw`; only exists for `λ = l/24`.
pub fn b0_one_dimensional(lambda: &Q, l: &Q) -> Result<TableModule> {
    if lambda != &(l * qf(1, 24)) {
        return Err(Error::InvalidModule(format!(
            "a one-dimensional b^(0)-module needs lambda = c/24, got lambda={lambda}, c={l}"
        )));
    }
    Ok(b0_module(lambda, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{check_annihilation, validate_module};
    use crate::rational::q;

    #[test]
    fn verma_dimensions_and_action() {
        let one = verma_top(&qf(1, 24), &q(1));
        assert_eq!(one.dimension(), Some(1));
        let m = verma_top(&q(1), &q(0));
        assert_eq!(m.dimension(), Some(2));
        let g0v = m.act(Generator::G(0), 0).unwrap();
        assert_eq!(g0v, BaseVector::basis(1));
        assert_eq!(m.act(Generator::G(0), 1).unwrap(), BaseVector::term(0, q(1)));
        assert!(m.act(Generator::L(1), 0).unwrap().is_zero());
        assert_eq!(m.act(Generator::C, 1).unwrap(), BaseVector::zero());
    }

    #[test]
    fn b0_examples() {
        let m = b0_module(&q(2), &q(24));
        assert_eq!(m.act(Generator::G(0), 1).unwrap(), BaseVector::term(0, q(1)));
        assert_eq!(b0_module(&q(1), &q(24)).dimension(), Some(1));
        for (lam, l) in [(q(3), q(5)), (qf(-7, 3), qf(2, 9)), (q(1), q(24))] {
            let m = b0_module(&lam, &l);
            assert_eq!(m.act(Generator::L(0), 0).unwrap(), BaseVector::term(0, lam.clone()));
            assert!(validate_module(&m, 2, 8).passed());
        }
        assert!(b0_one_dimensional(&q(2), &q(24)).is_err());
        assert!(b0_one_dimensional(&q(1), &q(24)).is_ok());
    }

    #[test]
    fn verma_square_of_g0_is_scalar() {
        let lam = qf(5, 7);
        let l = qf(3, 2);
        let m = verma_top(&lam, &l);
        let s = &lam - &l * qf(1, 24);
        for b in 0..2 {
            let once = m.act(Generator::G(0), b).unwrap();
            let twice = super::super::act_vector(&m, Generator::G(0), &once).unwrap();
            assert_eq!(twice, BaseVector::term(b, s.clone()));
        }
    }

    #[test]
    fn verma_validates() {
        let m = verma_top(&q(1), &q(0));
        let r = validate_module(&m, 3, 2);
        assert!(r.passed(), "{:?}", r.violations);
        assert!(check_annihilation(&m, 1, 6, 8).unwrap().is_none());
    }

    #[test]
    fn outside_domain_is_an_error() {
        let m = verma_top(&q(1), &q(0));
        assert!(matches!(m.act(Generator::L(-1), 0), Err(Error::OutsideDomain { .. })));
    }
}
