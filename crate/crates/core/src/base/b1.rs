use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::{BaseModule, BaseVector};
use crate::algebra::{Generator, Parity, Subalgebra};
use crate::error::{Error, Result};
use crate::rational::{qf, Q};

/// A module over `span{L_0, L_1, c}` with an even, enumerable basis.
///
/// `c` is not part of the trait: [`b1_module`] fixes its scalar.
pub trait EvenModule: fmt::Debug + Send + Sync {
    fn label(&self) -> String;

    fn dimension(&self) -> Option<usize>;

    fn basis_label(&self, index: usize) -> String;

    fn index_of_label(&self, label: &str) -> Option<usize>;

    /// Action of `L_0` or `L_1` on a basis vector.
    fn act(&self, g: Generator, index: usize) -> Result<BaseVector>;
}

/// `U = C[x]` with basis `x^k = L_0^k w0`, `L_0` multiplying by `x` and
/// `L_1 f(x) = μ f(x + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftFamily {
    pub mu: Q,
}

impl ShiftFamily {
    pub fn new(mu: Q) -> Self {
        Self { mu }
    }
}

impl EvenModule for ShiftFamily {
    fn label(&self) -> String {
        format!("shift(mu={})", self.mu)
    }

    fn dimension(&self) -> Option<usize> {
        None
    }

    fn basis_label(&self, index: usize) -> String {
        match index {
            0 => "w0".into(),
            1 => "L0*w0".into(),
            k => format!("L0^{k}*w0"),
        }
    }

    fn index_of_label(&self, label: &str) -> Option<usize> {
        if label == "w0" {
            return Some(0);
        }
        let head = label.strip_suffix("*w0")?;
        match head.strip_prefix("L0") {
            Some("") => Some(1),
            Some(rest) => rest.strip_prefix('^')?.parse().ok().filter(|k| *k >= 1),
            None => None,
        }
    }

    fn act(&self, g: Generator, index: usize) -> Result<BaseVector> {
        match g {
            Generator::L(0) => Ok(BaseVector::basis(index + 1)),
            Generator::L(1) => {
                // (x + 1)^k = Σ C(k, j) x^j
                let mut out = BaseVector::zero();
                let mut binom = BigInt::one();
                for j in 0..=index {
                    out.add_term(j, Q::from_integer(binom.clone()) * &self.mu);
                    binom = binom * BigInt::from(index - j) / BigInt::from(j + 1);
                }
                Ok(out)
            }
            _ => Err(Error::OutsideDomain {
                generator: g.to_string(),
                domain: "span{L[0], L[1], c}".into(),
            }),
        }
    }
}

/// The `b`-module `U ⊕ G_0U`, with `L_i`, `G_i` acting as zero for `i >= 2`.
///
/// Basis index `2j` is `u_j`, `2j + 1` is `G_0 u_j`.
#[derive(Debug, Clone)]
pub struct B1Module {
    even: Arc<dyn EvenModule>,
    central_charge: Q,
}

pub fn b1_module(even: Arc<dyn EvenModule>, central_charge: Q) -> B1Module {
    B1Module { even, central_charge }
}

impl B1Module {
    pub fn shift_family(mu: Q, central_charge: Q) -> Self {
        b1_module(Arc::new(ShiftFamily::new(mu)), central_charge)
    }

    pub fn even_part(&self) -> &Arc<dyn EvenModule> {
        &self.even
    }

    /// The vector `G_0 x` for `x` in `U` (given in `U` indices).
    fn lift(v: &BaseVector, odd: bool) -> BaseVector {
        BaseVector::from_terms(v.iter().map(|(j, c)| (2 * j + usize::from(odd), c.clone())))
    }

    fn even_act(&self, g: Generator, j: usize) -> Result<BaseVector> {
        self.even.act(g, j)
    }
}

impl BaseModule for B1Module {
    fn label(&self) -> String {
        format!("b1({}, c={})", self.even.label(), self.central_charge)
    }

    fn central_charge(&self) -> Q {
        self.central_charge.clone()
    }

    fn level(&self) -> u32 {
        1
    }

    fn domain(&self) -> Subalgebra {
        Subalgebra::B
    }

    fn dimension(&self) -> Option<usize> {
        self.even.dimension().map(|d| 2 * d)
    }

    fn parity(&self, index: usize) -> Parity {
        Parity::from_odd_count(index % 2)
    }

    fn basis_label(&self, index: usize) -> String {
        let u = self.even.basis_label(index / 2);
        if index.is_multiple_of(2) {
            u
        } else {
            format!("G0*{u}")
        }
    }

    fn index_of_label(&self, label: &str) -> Option<usize> {
        if let Some(rest) = label.strip_prefix("G0*") {
            if let Some(j) = self.even.index_of_label(rest) {
                return Some(2 * j + 1);
            }
        }
        self.even.index_of_label(label).map(|j| 2 * j)
    }

    fn act_generator(&self, g: Generator, index: usize) -> Result<BaseVector> {
        let j = index / 2;
        let odd = index % 2 == 1;
        match g {
            Generator::L(0) | Generator::L(1) => Ok(Self::lift(&self.even_act(g, j)?, odd)),
            Generator::G(0) if !odd => Ok(BaseVector::basis(index + 1)),
            Generator::G(0) => {
                // G_0 G_0 u = (L_0 - l/24) u
                let mut out = self.even_act(Generator::L(0), j)?;
                out.add_term(j, -(&self.central_charge * qf(1, 24)));
                Ok(Self::lift(&out, false))
            }
            Generator::G(1) if !odd => Ok(BaseVector::zero()),
            Generator::G(1) => Ok(Self::lift(&self.even_act(Generator::L(1), j)?, false).scaled(&qf(2, 1))),
            _ => Ok(BaseVector::zero()),
        }
    }
}

#[cfg(test)]
/// `[L_0, L_1]` applied to a vector of `U`, through the module action.
pub(crate) fn even_commutator(u: &dyn EvenModule, v: &BaseVector) -> Result<BaseVector> {
    let apply = |g, x: &BaseVector| -> Result<BaseVector> {
        let mut out = BaseVector::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&u.act(g, i)?, c);
        }
        Ok(out)
    };
    let a = apply(Generator::L(0), &apply(Generator::L(1), v)?)?;
    let b = apply(Generator::L(1), &apply(Generator::L(0), v)?)?;
    Ok(a.sub(&b))
}
