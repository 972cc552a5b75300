//! PBW-normal monomials of the enveloping algebra and the normal-ordering
//! rewriter.
//!
//! A monomial is a product `c^e · x_1^{a_1} ⋯ x_r^{a_r}` with the `x_j` strictly
//! increasing under a generator rank and every odd factor of exponent 1. The
//! canonical rank is
//!
//! ```text
//! G_m (m<0)  <  L_m (m<0)  <  L_0  <  G_0  <  L_m (m>0)  <  G_m (m>0)
//! ```
//!
//! with ties broken by index, so the negative block of a monomial is exactly
//! `⋯G_{-2}G_{-1}⋯L_{-2}^{i_2}L_{-1}^{i_1}`. A [`MonomialOrder::Split`] order
//! ranks every generator of a chosen subalgebra after every generator outside
//! it, which is what induction from that subalgebra needs.
//!
//! Products are normal-ordered by repeatedly moving a generator rightward past
//! the first factor that ranks below it, `x·y = (-1)^{|x||y|} y·x + [x,y]`, and
//! collapsing odd squares `G_m·G_m = (1/2)[G_m, G_m]`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{bracket_terms, Generator, Parity, Subalgebra};
use crate::error::{Error, Result};
use crate::rational::{q, to_short_string, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Canonical,
    /// Generators of the subalgebra rank last; each block keeps canonical order.
    Split(Subalgebra),
}

fn canonical_class(g: Generator) -> u8 {
    match g {
        Generator::G(m) if m < 0 => 0,
        Generator::L(m) if m < 0 => 1,
        Generator::L(0) => 2,
        Generator::G(0) => 3,
        Generator::L(_) => 4,
        Generator::G(_) => 5,
        Generator::C => 6,
    }
}

/// Canonical rank key of a generator.
pub fn canonical_rank(g: Generator) -> (u8, i64) {
    (canonical_class(g), g.grading_index())
}

impl MonomialOrder {
    pub fn rank(self, g: Generator) -> (bool, u8, i64) {
        let late = match self {
            MonomialOrder::Canonical => false,
            MonomialOrder::Split(s) => s.contains(g),
        };
        (late, canonical_class(g), g.grading_index())
    }
}

/// An ordered product of generators together with a power of `c`.
///
/// `factors` never contains `C`; `c` is tracked separately as `c_exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PbwMonomial {
    factors: Vec<(Generator, u32)>,
    c_exp: u32,
}

impl PbwMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        match g {
            Generator::C => Self {
                factors: Vec::new(),
                c_exp: 1,
            },
            _ => Self {
                factors: vec![(g, 1)],
                c_exp: 0,
            },
        }
    }

    /// Builds a monomial from factors assumed to be in normal order for
    /// some [`MonomialOrder`]. Zero exponents are dropped; `C` factors are
    /// folded into the `c` exponent.
    pub fn from_factors(factors: impl IntoIterator<Item = (Generator, u32)>, c_exp: u32) -> Self {
        let mut out = Self {
            factors: Vec::new(),
            c_exp,
        };
        for (g, e) in factors {
            if e == 0 {
                continue;
            }
            if g == Generator::C {
                out.c_exp += e;
            } else {
                out.factors.push((g, e));
            }
        }
        out
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn c_exp(&self) -> u32 {
        self.c_exp
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.c_exp == 0
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum::<u32>() + self.c_exp
    }

    pub fn parity(&self) -> Parity {
        let odd: u32 = self
            .factors
            .iter()
            .filter(|(g, _)| g.parity().is_odd())
            .map(|(_, e)| e)
            .sum();
        Parity::from_odd_count(odd as usize)
    }

    /// Sum of grading indices with multiplicity.
    pub fn grading_index(&self) -> i64 {
        self.factors
            .iter()
            .map(|(g, e)| g.grading_index() * *e as i64)
            .sum()
    }

    pub fn is_normal(&self, order: MonomialOrder) -> bool {
        self.factors.iter().all(|(g, e)| *e >= 1 && (!g.parity().is_odd() || *e == 1))
            && self
                .factors
                .windows(2)
                .all(|w| order.rank(w[0].0) < order.rank(w[1].0))
    }

    /// The factors as a flat word, `c` included as trailing letters.
    pub fn word(&self) -> Vec<Generator> {
        let mut w = Vec::new();
        for (g, e) in &self.factors {
            for _ in 0..*e {
                w.push(*g);
            }
        }
        for _ in 0..self.c_exp {
            w.push(Generator::C);
        }
        w
    }

    fn without_c(&self) -> PbwMonomial {
        PbwMonomial {
            factors: self.factors.clone(),
            c_exp: 0,
        }
    }

    fn with_extra_c(mut self, e: u32) -> PbwMonomial {
        self.c_exp += e;
        self
    }

    /// Drops one copy of the first factor.
    fn pop_first(&self) -> PbwMonomial {
        let mut out = self.clone();
        if out.factors[0].1 > 1 {
            out.factors[0].1 -= 1;
        } else {
            out.factors.remove(0);
        }
        out
    }

    fn prepend(&self, g: Generator) -> PbwMonomial {
        let mut out = self.clone();
        out.factors.insert(0, (g, 1));
        out
    }

    fn sort_key(&self) -> impl Iterator<Item = (u8, i64, u32)> + '_ {
        self.factors
            .iter()
            .map(|(g, e)| (canonical_class(*g), g.grading_index(), *e))
            .chain((self.c_exp > 0).then_some((6, 0, self.c_exp)))
    }
}

/// Monomials compare by their rank sequence, `c^e` counting as a trailing factor.
impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(other.sort_key())
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        match self.c_exp {
            0 => {}
            1 => parts.push("c".into()),
            e => parts.push(format!("c^{e}")),
        }
        f.write_str(&parts.join("*"))
    }
}

/// A finite rational combination of PBW monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<PbwMonomial, Q>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(PbwMonomial::one())
    }

    pub fn scalar(c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(PbwMonomial::one(), c);
        out
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        let mut out = Self::zero();
        out.add_term(m, Q::one());
        out
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(PbwMonomial::generator(g))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (PbwMonomial, Q)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scaled(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    fn with_extra_c(&self, e: u32) -> Self {
        if e == 0 {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone().with_extra_c(e), c.clone()))
                .collect(),
        }
    }

    /// Parity if every monomial shares one; the zero element counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(PbwMonomial::parity);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Common grading index of all monomials, if there is one.
    ///
    /// The zero element has no well-defined weight and returns `None`.
    pub fn adjoint_weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(PbwMonomial::grading_index);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn is_normal(&self, order: MonomialOrder) -> bool {
        self.terms.keys().all(|m| m.is_normal(order))
    }

    /// Re-expresses the element in normal form for another order.
    pub fn renormalize(&self, order: MonomialOrder) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out = out.add(&normal_form(order, &m.word()).scaled(c));
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&to_short_string(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", to_short_string(&a))?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::add(self, rhs)
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::sub(self, rhs)
    }
}

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scaled(&q(-1))
    }
}

impl std::ops::Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        multiply(self, rhs)
    }
}

const MEMO_LIMIT: usize = 400_000;

type MemoKey = (MonomialOrder, Generator, PbwMonomial);

thread_local! {
    static MEMO: RefCell<HashMap<MemoKey, AlgebraElement>> = RefCell::new(HashMap::new());
}

/// `x · m` in normal form, for `x` a non-central generator and `m` normal.
fn left_mul(order: MonomialOrder, x: Generator, m: &PbwMonomial) -> AlgebraElement {
    if x == Generator::C {
        return AlgebraElement::monomial(m.clone().with_extra_c(1));
    }
    let core = m.without_c();
    let key = (order, x, core);
    if let Some(hit) = MEMO.with(|memo| memo.borrow().get(&key).cloned()) {
        return hit.with_extra_c(m.c_exp);
    }
    let result = left_mul_uncached(order, x, &key.2);
    MEMO.with(|memo| {
        let mut memo = memo.borrow_mut();
        if memo.len() >= MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(key, result.clone());
    });
    result.with_extra_c(m.c_exp)
}

fn left_mul_uncached(order: MonomialOrder, x: Generator, m: &PbwMonomial) -> AlgebraElement {
    let Some(&(f, e)) = m.factors.first() else {
        return AlgebraElement::generator(x);
    };
    match order.rank(x).cmp(&order.rank(f)) {
        Ordering::Less => AlgebraElement::monomial(m.prepend(x)),
        Ordering::Equal => {
            if x.parity().is_odd() {
                // odd square: x·x = (1/2)[x, x]
                let tail = m.pop_first();
                let half = Q::new(1.into(), 2.into());
                let mut out = AlgebraElement::zero();
                for (g, c) in bracket_terms(x, x) {
                    out = out.add(&left_mul(order, g, &tail).scaled(&(c * &half)));
                }
                out
            } else {
                let mut out = m.clone();
                out.factors[0].1 = e + 1;
                AlgebraElement::monomial(out)
            }
        }
        Ordering::Greater => {
            let tail = m.pop_first();
            let sign = q(x.parity().sign(f.parity()));
            let inner = left_mul(order, x, &tail);
            let mut out = left_mul_element(order, f, &inner).scaled(&sign);
            for (g, c) in bracket_terms(x, f) {
                out = out.add(&left_mul(order, g, &tail).scaled(&c));
            }
            out
        }
    }
}

fn left_mul_element(order: MonomialOrder, x: Generator, a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (m, c) in a.terms() {
        out = out.add(&left_mul(order, x, m).scaled(c));
    }
    out
}

/// Normal form of the product of a word of generators.
pub fn normal_form(order: MonomialOrder, word: &[Generator]) -> AlgebraElement {
    let mut acc = AlgebraElement::one();
    for &g in word.iter().rev() {
        acc = left_mul_element(order, g, &acc);
    }
    acc
}

/// `a · b` for monomials normal in `order`.
pub fn monomial_multiply_in(order: MonomialOrder, a: &PbwMonomial, b: &PbwMonomial) -> AlgebraElement {
    let mut acc = AlgebraElement::monomial(b.clone());
    for &(g, e) in a.factors.iter().rev() {
        for _ in 0..e {
            acc = left_mul_element(order, g, &acc);
        }
    }
    acc.with_extra_c(a.c_exp)
}

/// `a · b` in canonical normal form.
pub fn monomial_multiply(a: &PbwMonomial, b: &PbwMonomial) -> AlgebraElement {
    monomial_multiply_in(MonomialOrder::Canonical, a, b)
}

pub fn multiply_in(order: MonomialOrder, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            out = out.add(&monomial_multiply_in(order, ma, mb).scaled(&(ca * cb)));
        }
    }
    out
}

pub fn multiply(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    multiply_in(MonomialOrder::Canonical, a, b)
}

/// `a·b - (-1)^{|a||b|} b·a` for parity-homogeneous `a`, `b`.
pub fn super_commutator(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    let pa = a.parity().ok_or(Error::NonHomogeneous)?;
    let pb = b.parity().ok_or(Error::NonHomogeneous)?;
    let ab = multiply(a, b);
    let ba = multiply(b, a);
    Ok(ab.sub(&ba.scaled(&q(pa.sign(pb)))))
}

pub fn adjoint_weight(a: &AlgebraElement) -> Option<i64> {
    a.adjoint_weight()
}

/// Splits `m` into the factors outside `boundary` followed by the factors
/// inside it. The power of `c` always goes to the acting part.
pub fn split_for_induction(m: &PbwMonomial, boundary: Subalgebra) -> Result<(PbwMonomial, PbwMonomial)> {
    let mut prefix = Vec::new();
    let mut suffix = Vec::new();
    for &(g, e) in &m.factors {
        if boundary.contains(g) {
            suffix.push((g, e));
        } else if suffix.is_empty() {
            prefix.push((g, e));
        } else {
            return Err(Error::SplitIncompatible {
                monomial: m.to_string(),
                boundary: boundary.to_string(),
            });
        }
    }
    Ok((
        PbwMonomial::from_factors(prefix, 0),
        PbwMonomial::from_factors(suffix, m.c_exp),
    ))
}
