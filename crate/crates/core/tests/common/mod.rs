//! Test oracles that share no code with the normal-ordering engine.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use ramond_core::pbw::AlgebraElement;
use ramond_core::Generator;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Structure constants written out directly from the defining relations.
pub fn oracle_bracket(x: Generator, y: Generator) -> Vec<(Generator, Q)> {
    use Generator::*;
    let delta = |s: i64| s == 0;
    let mut out = Vec::new();
    match (x, y) {
        (C, _) | (_, C) => {}
        (L(m), L(n)) => {
            out.push((L(m + n), q(m - n)));
            if delta(m + n) {
                out.push((C, qf(m * m * m - m, 12)));
            }
        }
        (L(m), G(n)) => out.push((G(m + n), qf(m - 2 * n, 2))),
        (G(m), L(n)) => out.push((G(m + n), -qf(n - 2 * m, 2))),
        (G(m), G(n)) => {
            out.push((L(m + n), q(2)));
            if delta(m + n) {
                out.push((C, qf(4 * m * m - 1, 12)));
            }
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn odd(g: Generator) -> bool {
    matches!(g, Generator::G(_))
}

/// Rank: `G_{<0} < L_{<0} < L_0 < G_0 < L_{>0} < G_{>0}`, ties by index.
fn rank(g: Generator) -> (u8, i64) {
    match g {
        Generator::G(m) if m < 0 => (0, m),
        Generator::L(m) if m < 0 => (1, m),
        Generator::L(0) => (2, 0),
        Generator::G(0) => (3, 0),
        Generator::L(m) => (4, m),
        Generator::G(m) => (5, m),
        Generator::C => (6, 0),
    }
}

/// Word (with `c` letters moved last) → coefficient.
pub type WordSum = BTreeMap<Vec<Generator>, Q>;

fn add(sum: &mut WordSum, w: Vec<Generator>, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = sum.entry(w.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        sum.remove(&w);
    }
}

/// The first rewrite site of a word, if it is not normal.
fn site(w: &[Generator]) -> Option<usize> {
    (0..w.len().saturating_sub(1)).find(|&j| {
        let (a, b) = (w[j], w[j + 1]);
        rank(a) > rank(b) || (a == b && odd(a))
    })
}

/// Rewrites adjacent pairs one at a time until every word is normal.
/// Returns the result and the number of rewrites performed.
pub fn oracle_normal_form(word: &[Generator]) -> (WordSum, usize) {
    let mut todo: WordSum = BTreeMap::new();
    add(&mut todo, word.to_vec(), Q::one());
    let mut done = WordSum::new();
    let mut steps = 0;
    while let Some((w, c)) = todo.pop_first() {
        let Some(j) = site(&w) else {
            add(&mut done, w, c);
            continue;
        };
        steps += 1;
        let (a, b) = (w[j], w[j + 1]);
        let head = &w[..j];
        let tail = &w[j + 2..];
        let splice = |mid: &[Generator]| -> Vec<Generator> {
            let mut v = head.to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(tail);
            v
        };
        if a == b {
            // x x = (1/2)[x, x] for odd x
            for (g, k) in oracle_bracket(a, a) {
                add(&mut todo, splice(&[g]), &c * k * qf(1, 2));
            }
            continue;
        }
        let sign = if odd(a) && odd(b) { -1 } else { 1 };
        add(&mut todo, splice(&[b, a]), &c * q(sign));
        for (g, k) in oracle_bracket(a, b) {
            add(&mut todo, splice(&[g]), &c * k);
        }
    }
    (done, steps)
}

/// An engine element as a word sum, `c^e` written as trailing letters.
pub fn as_words(a: &AlgebraElement) -> WordSum {
    let mut out = WordSum::new();
    for (m, c) in a.terms() {
        add(&mut out, m.word(), c.clone());
    }
    out
}
