use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::induce::induce_arc;
use super::{act_vector, BaseVector, InducedBase, TableModule};
use crate::algebra::{bracket_terms, Generator, Parity, Subalgebra};
use crate::error::{Error, Result};
use crate::rational::{to_short_string, Q};

/// A character `φ` of `p^(t) ⊕ Cc`: values on `L_k`, zero on every `G_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhittakerData {
    pub order: u32,
    pub values: BTreeMap<i64, Q>,
    pub central_charge: Q,
}

impl WhittakerData {
    pub fn new(order: u32, central_charge: Q, values: impl IntoIterator<Item = (i64, Q)>) -> Self {
        Self {
            order,
            values: values.into_iter().collect(),
            central_charge,
        }
    }

    /// `φ(L_k)`, zero when unassigned.
    pub fn value(&self, k: i64) -> Q {
        self.values.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    /// Index of the last generator `φ` may see: `2t + 2`.
    pub fn top_index(&self) -> i64 {
        2 * self.order as i64 + 2
    }
}

impl fmt::Display for WhittakerData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self
            .values
            .iter()
            .map(|(k, v)| format!("L{k}={}", to_short_string(v)))
            .collect();
        write!(
            f,
            "t={}, c={}, phi={}",
            self.order,
            to_short_string(&self.central_charge),
            vals.join(";")
        )
    }
}

/// Finds `a != b` in `p^(t)` with `[L_a, L_b]` a nonzero multiple of `L_k`.
fn bracket_witness(t: i64, k: i64) -> Option<(i64, i64)> {
    (t + 1..=t + 3).find_map(|a| {
        let b = k - a;
        if b <= t || b == a {
            return None;
        }
        let hits = bracket_terms(Generator::L(a), Generator::L(b))
            .into_iter()
            .any(|(g, c)| g == Generator::L(k) && !c.is_zero());
        hits.then_some((a.min(b), a.max(b)))
    })
}

/// Checks that the values extend to a character of `p^(t) ⊕ Cc`.
pub fn phi_validate(d: &WhittakerData) -> Result<()> {
    let t = d.order as i64;
    for (&k, v) in &d.values {
        if v.is_zero() {
            continue;
        }
        if k <= t {
            return Err(Error::InvalidWhittaker(format!(
                "phi(L{k}) = {} but L{k} is not in p^({t}); only L{}..L{} may be assigned",
                to_short_string(v),
                t + 1,
                2 * t + 2
            )));
        }
        if k > 2 * t + 2 {
            let detail = match bracket_witness(t, k) {
                Some((a, b)) => format!(
                    "phi(L{k}) = {} must vanish: L{k} is a multiple of [L_{a}, L_{b}] in [p^({t}), p^({t})]",
                    to_short_string(v)
                ),
                None => format!("phi(L{k}) = {} must vanish for k >= {}", to_short_string(v), 2 * t + 3),
            };
            return Err(Error::InvalidWhittaker(detail));
        }
    }
    // the odd part of p^(t) is killed by φ, so only [G_a, G_b] ⊂ span{L}
    // brackets could constrain the window; recheck that none lands in it
    for a in t + 2..=2 * t + 2 {
        for b in a..=2 * t + 2 {
            for (g, c) in bracket_terms(Generator::G(a), Generator::G(b)) {
                if let Generator::L(k) = g {
                    if !c.is_zero() && !d.value(k).is_zero() {
                        return Err(Error::InvalidWhittaker(format!(
                            "phi(L{k}) must vanish: L{k} lies in [G_{a}, G_{b}]"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The one-dimensional `p^(t) ⊕ Cc`-module `Cw` twisted by `φ`.
fn character(d: &WhittakerData) -> TableModule {
    let mut m = TableModule::new(
        "phi",
        d.central_charge.clone(),
        d.top_index() as u32,
        Subalgebra::P(d.order),
        vec![("w".into(), Parity::Even)],
    );
    for (&k, v) in &d.values {
        m.set(Generator::L(k), 0, BaseVector::term(0, v.clone()));
    }
    m
}

/// `A_φ = Cw ⊕ Cu` over `m^(t) ⊕ Cc` with `u = G_{t+1}w`.
///
/// The action on `u` is obtained by inducing the character from `p^(t)`,
/// so every entry comes out of the normal-ordering engine.
pub fn whittaker_finite_top(d: &WhittakerData) -> Result<TableModule> {
    phi_validate(d)?;
    let induced = induce_arc(character(d), Subalgebra::P(d.order), Subalgebra::M(d.order))?;
    let mut top = TableModule::tabulate(&induced, d.top_index() + 2)?;
    top.labels = vec!["w".into(), "u".into()];
    top.label = format!("A_phi({d})");
    top.level = d.top_index() as u32;
    if d.value(d.top_index()).is_zero() {
        top.obstruction = Some("not simple: submodule spanned by u".into());
    }
    Ok(top)
}

/// `V_φ = U(b) ⊗ A_φ`, induced from `m^(t) ⊕ Cc`.
pub fn whittaker_module(d: &WhittakerData) -> Result<InducedBase> {
    let top = whittaker_finite_top(d)?;
    induce_arc(top, Subalgebra::M(d.order), Subalgebra::B)
}

/// Whether `Cu ⊂ A_φ` is closed under `m^(t) ⊕ Cc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UClosure {
    /// Every generator checked maps `u` into `Cu`; the scalars are listed.
    Closed { eigenvalues: Vec<(Generator, Q)> },
    /// A generator moving `u` out of `Cu`, with the image.
    NotClosed { generator: Generator, image: String },
}

impl UClosure {
    pub fn is_closed(&self) -> bool {
        matches!(self, UClosure::Closed { .. })
    }
}

/// Recomputes the action of `L_k`, `G_k` (`t < k <= 2t + 4`) and `c` on `u`.
///
/// Generators beyond `2t + 4` act on `A_φ` as zero.
pub fn a_phi_submodule_witness(d: &WhittakerData) -> Result<UClosure> {
    let top = whittaker_finite_top(d)?;
    let t = d.order as i64;
    let u = BaseVector::basis(1);
    let mut eigenvalues = Vec::new();
    let gens = (t + 1..=2 * t + 4)
        .flat_map(|k| [Generator::L(k), Generator::G(k)])
        .chain([Generator::C]);
    for g in gens {
        let image = act_vector(&top, g, &u)?;
        let scalar = image.coefficient(1);
        if image != u.scaled(&scalar) {
            return Ok(UClosure::NotClosed {
                generator: g,
                image: image.display_with(&top),
            });
        }
        eigenvalues.push((g, scalar));
    }
    Ok(UClosure::Closed { eigenvalues })
}
