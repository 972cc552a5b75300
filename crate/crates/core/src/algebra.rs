//! Generators, parities and the super-bracket of the Ramond algebra.
//!
//! The algebra has basis `L_m`, `G_m` (`m` an integer) and a central `c`, with
//!
//! ```text
//! [L_m, L_n] = (m - n) L_{m+n} + δ_{m+n,0} (m^3 - m)/12 c
//! [L_m, G_n] = (m/2 - n) G_{m+n}
//! [G_m, G_n] = 2 L_{m+n} + 1/3 δ_{m+n,0} (m^2 - 1/4) c
//! ```
//!
//! `L_m` and `c` are even, `G_m` is odd, and the grading index of `L_m`, `G_m`
//! is `m`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::pbw::AlgebraElement;
use crate::rational::{q, qf, Q};

/// Largest generator index magnitude accepted from user input.
pub const MAX_INDEX: i64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_odd_count(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^{|x||y|}` as an integer.
    pub fn sign(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// A basis element of the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    L(i64),
    G(i64),
    C,
}

impl Generator {
    pub fn parity(self) -> Parity {
        match self {
            Generator::G(_) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn grading_index(self) -> i64 {
        match self {
            Generator::L(m) | Generator::G(m) => m,
            Generator::C => 0,
        }
    }

    pub fn is_member(self, s: Subalgebra) -> bool {
        s.contains(self)
    }

    /// Same kind, different index. `C` is returned unchanged.
    pub fn with_index(self, m: i64) -> Generator {
        match self {
            Generator::L(_) => Generator::L(m),
            Generator::G(_) => Generator::G(m),
            Generator::C => Generator::C,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::L(m) => write!(f, "L[{m}]"),
            Generator::G(m) => write!(f, "G[{m}]"),
            Generator::C => f.write_str("c"),
        }
    }
}

/// The named subalgebras, as sets of basis generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subalgebra {
    /// `R_+`: `L_m`, `G_m` with `m > 0`.
    RPlus,
    /// `R_-`: `L_m`, `G_m` with `m < 0`.
    RMinus,
    /// `R_0`: `L_0`, `G_0`, `c`.
    RZero,
    /// `b`: `L_m`, `G_m` with `m >= 0`, and `c`.
    B,
    /// `m^(t)`: `L_m`, `G_m` with `m > t`. Does not contain `c`.
    M(u32),
    /// `b^(t)` realized as the span of `L_0..L_t`, `G_0..G_t`, `c`.
    BQuot(u32),
    /// `p^(t)`: `L_m` with `m > t` and `G_n` with `n > t + 1`.
    P(u32),
    /// `R^(m,n)`: `c`, `L_i` for `i >= m`, `G_j` for `j >= n`.
    Rmn(i64, i64),
}

impl Subalgebra {
    pub fn contains(self, g: Generator) -> bool {
        use Generator::*;
        match (self, g) {
            (Subalgebra::RPlus, C) | (Subalgebra::RMinus, C) => false,
            (Subalgebra::RPlus, L(m) | G(m)) => m > 0,
            (Subalgebra::RMinus, L(m) | G(m)) => m < 0,
            (Subalgebra::RZero, C) => true,
            (Subalgebra::RZero, L(m) | G(m)) => m == 0,
            (Subalgebra::B, C) => true,
            (Subalgebra::B, L(m) | G(m)) => m >= 0,
            (Subalgebra::M(_), C) => false,
            (Subalgebra::M(t), L(m) | G(m)) => m > t as i64,
            (Subalgebra::BQuot(_), C) => true,
            (Subalgebra::BQuot(t), L(m) | G(m)) => (0..=t as i64).contains(&m),
            (Subalgebra::P(_), C) => false,
            (Subalgebra::P(t), L(m)) => m > t as i64,
            (Subalgebra::P(t), G(n)) => n > t as i64 + 1,
            (Subalgebra::Rmn(_, _), C) => true,
            (Subalgebra::Rmn(a, _), L(i)) => i >= a,
            (Subalgebra::Rmn(_, b), G(j)) => j >= b,
        }
    }
}

impl fmt::Display for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subalgebra::RPlus => f.write_str("R+"),
            Subalgebra::RMinus => f.write_str("R-"),
            Subalgebra::RZero => f.write_str("R0"),
            Subalgebra::B => f.write_str("b"),
            Subalgebra::M(t) => write!(f, "m^({t})"),
            Subalgebra::BQuot(t) => write!(f, "b^({t})"),
            Subalgebra::P(t) => write!(f, "p^({t})"),
            Subalgebra::Rmn(m, n) => write!(f, "R^({m},{n})"),
        }
    }
}

/// Structure constants: `[x, y]` as at most two (generator, coefficient) pairs.
///
/// For odd `x = y` this is the anticommutator `[x, x] = 2x^2`.
pub fn bracket_terms(x: Generator, y: Generator) -> Vec<(Generator, Q)> {
    use Generator::*;
    let mut out = Vec::with_capacity(2);
    match (x, y) {
        (C, _) | (_, C) => {}
        (L(m), L(n)) => {
            if m != n {
                out.push((L(m + n), q(m - n)));
            }
            if m + n == 0 {
                let m = BigInt::from(m);
                let coeff = Q::new(&m * &m * &m - &m, BigInt::from(12));
                if !coeff.is_zero() {
                    out.push((C, coeff));
                }
            }
        }
        (L(m), G(n)) => {
            // m/2 - n
            let coeff = qf(m - 2 * n, 2);
            if !coeff.is_zero() {
                out.push((G(m + n), coeff));
            }
        }
        (G(m), L(n)) => {
            // [G_m, L_n] = -[L_n, G_m]
            let coeff = qf(2 * m - n, 2);
            if !coeff.is_zero() {
                out.push((G(m + n), coeff));
            }
        }
        (G(m), G(n)) => {
            out.push((L(m + n), q(2)));
            if m + n == 0 {
                let m = BigInt::from(m);
                // (1/3)(m^2 - 1/4) = (4m^2 - 1)/12
                let coeff = Q::new(BigInt::from(4) * &m * &m - BigInt::one(), BigInt::from(12));
                out.push((C, coeff));
            }
        }
    }
    out
}

/// The super-bracket of two generators, as an element of the enveloping algebra.
pub fn bracket(x: Generator, y: Generator) -> AlgebraElement {
    LieElement::from_terms(bracket_terms(x, y)).to_algebra_element()
}

pub fn parity(x: Generator) -> Parity {
    x.parity()
}

pub fn grading_index(x: Generator) -> i64 {
    x.grading_index()
}

pub fn is_member(x: Generator, s: Subalgebra) -> bool {
    s.contains(x)
}

/// A finite linear combination of generators, i.e. an element of the Lie
/// superalgebra itself.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<Generator, Q>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::from_terms([(g, Q::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Generator, Q)>) -> Self {
        let mut out = Self::zero();
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    pub fn add_term(&mut self, g: Generator, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: Generator) -> Q {
        self.terms.get(&g).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scaled(&self, s: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, c)| (*g, c * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(*g, c.clone());
        }
        out
    }

    /// Bilinear extension of [`bracket_terms`].
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let ab = a * b;
                for (g, c) in bracket_terms(*x, *y) {
                    out.add_term(g, c * &ab);
                }
            }
        }
        out
    }

    pub fn to_algebra_element(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (g, c) in &self.terms {
            out = out.add(&AlgebraElement::generator(*g).scaled(c));
        }
        out
    }
}
