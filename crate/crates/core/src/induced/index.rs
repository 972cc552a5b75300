use std::cmp::Ordering;
use std::fmt;

use crate::algebra::Generator;
use crate::pbw::PbwMonomial;

/// Exponent data `(k, i)` of the monomial `G^k L^i` in `U(R_-)`.
///
/// `k` is a 0/1 vector (`k_n = 1` iff `G_{-n}` occurs), `i` is an
/// `N`-vector (`i_n` is the power of `L_{-n}`). Both are stored densely by
/// position `n = 1, 2, ...` with trailing zeros trimmed, so equal data has
/// equal representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexPair {
    k: Vec<u32>,
    i: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn set_entry(v: &mut Vec<u32>, n: u32, value: u32) {
    assert!(n >= 1, "positions start at 1");
    let idx = n as usize - 1;
    if v.len() <= idx {
        v.resize(idx + 1, 0);
    }
    v[idx] = value;
    trim(v);
}

fn weight_of(v: &[u32]) -> u64 {
    v.iter().enumerate().map(|(p, e)| (p as u64 + 1) * *e as u64).sum()
}

fn hat_of(v: &[u32]) -> Option<u32> {
    v.iter().position(|e| *e != 0).map(|p| p as u32 + 1)
}

impl IndexPair {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from the positions `n` with `k_n = 1` and the nonzero `(n, i_n)`.
    ///
    /// Panics on position 0 or a repeated `k` position.
    pub fn from_sparse(k: impl IntoIterator<Item = u32>, i: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut out = Self::zero();
        for n in k {
            assert_eq!(out.k_entry(n), 0, "G_-{n} repeated");
            set_entry(&mut out.k, n, 1);
        }
        for (n, e) in i {
            let cur = out.i_entry(n);
            set_entry(&mut out.i, n, cur + e);
        }
        out
    }

    /// From dense vectors indexed by position `n - 1`.
    pub fn from_dense(k: Vec<u32>, i: Vec<u32>) -> Self {
        assert!(k.iter().all(|e| *e <= 1), "k entries must be 0 or 1");
        let mut out = Self { k, i };
        trim(&mut out.k);
        trim(&mut out.i);
        out
    }

    pub fn eps_k(n: u32) -> Self {
        Self::from_sparse([n], [])
    }

    pub fn eps_i(n: u32) -> Self {
        Self::from_sparse([], [(n, 1)])
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }

    pub fn i(&self) -> &[u32] {
        &self.i
    }

    pub fn k_entry(&self, n: u32) -> u32 {
        self.k.get(n as usize - 1).copied().unwrap_or(0)
    }

    pub fn i_entry(&self, n: u32) -> u32 {
        self.i.get(n as usize - 1).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.k.is_empty() && self.i.is_empty()
    }

    pub fn k_is_zero(&self) -> bool {
        self.k.is_empty()
    }

    /// `w(k, i) = Σ n (k_n + i_n)`.
    pub fn weight(&self) -> u64 {
        weight_of(&self.k) + weight_of(&self.i)
    }

    /// Smallest position with `k_n != 0`.
    pub fn hat_k(&self) -> Option<u32> {
        hat_of(&self.k)
    }

    /// Smallest position with `i_n != 0`.
    pub fn hat_i(&self) -> Option<u32> {
        hat_of(&self.i)
    }

    /// `k' = k - ε_{hat k}` (with `i` unchanged); `None` for `k = 0`.
    pub fn k_prime(&self) -> Option<Self> {
        let n = self.hat_k()?;
        let mut out = self.clone();
        set_entry(&mut out.k, n, 0);
        Some(out)
    }

    /// `i' = i - ε_{hat i}` (with `k` unchanged); `None` for `i = 0`.
    pub fn i_prime(&self) -> Option<Self> {
        let n = self.hat_i()?;
        let mut out = self.clone();
        let e = out.i_entry(n);
        set_entry(&mut out.i, n, e - 1);
        Some(out)
    }

    /// The monomial `G^k L^i`: `⋯G_{-2}G_{-1} ⋯L_{-2}^{i_2}L_{-1}^{i_1}`.
    pub fn monomial(&self) -> PbwMonomial {
        let gs = (1..=self.k.len()).rev().filter(|n| self.k[n - 1] != 0).map(|n| (Generator::G(-(n as i64)), 1));
        let ls = (1..=self.i.len()).rev().map(|n| (Generator::L(-(n as i64)), self.i[n - 1]));
        PbwMonomial::from_factors(gs.chain(ls), 0)
    }

    /// Inverse of [`IndexPair::monomial`] on monomials in `G_{-n}`, `L_{-n}`.
    pub fn from_monomial(m: &PbwMonomial) -> Option<Self> {
        if m.c_exp() != 0 {
            return None;
        }
        let mut out = Self::zero();
        for &(g, e) in m.factors() {
            match g {
                Generator::G(n) if n < 0 && e == 1 && out.k_entry(-n as u32) == 0 => {
                    set_entry(&mut out.k, -n as u32, 1)
                }
                Generator::L(n) if n < 0 => {
                    let cur = out.i_entry(-n as u32);
                    set_entry(&mut out.i, -n as u32, cur + e)
                }
                _ => return None,
            }
        }
        Some(out)
    }
}

/// Reverse lexicographic comparison of `N`-vectors: the vector with the
/// smaller entry at the smallest differing position is smaller.
pub fn cmp_revlex(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for p in 0..n {
        let x = a.get(p).copied().unwrap_or(0);
        let y = b.get(p).copied().unwrap_or(0);
        if x != y {
            return x.cmp(&y);
        }
    }
    Ordering::Equal
}

/// The principal order: weight, then `k` by revlex, then `i` by revlex.
pub fn cmp_principal(a: &IndexPair, b: &IndexPair) -> Ordering {
    a.weight()
        .cmp(&b.weight())
        .then_with(|| cmp_revlex(&a.k, &b.k))
        .then_with(|| cmp_revlex(&a.i, &b.i))
}

impl Ord for IndexPair {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_principal(self, other)
    }
}

impl PartialOrd for IndexPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Prints as the monomial `G^k L^i`, e.g. `G[-1]*L[-1]^2`, or `1`.
impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.monomial().fmt(f)
    }
}

/// Partitions of `n` into parts `>= min_part`, as multiplicity vectors.
fn partitions(n: u32, min_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        let mut v = acc.clone();
        trim(&mut v);
        out.push(v);
        return;
    }
    for part in min_part..=n {
        if acc.len() < part as usize {
            acc.resize(part as usize, 0);
        }
        acc[part as usize - 1] += 1;
        partitions(n - part, part, acc, out);
        acc[part as usize - 1] -= 1;
    }
}

/// Partitions of `n` into distinct parts `>= min_part`.
fn distinct_partitions(n: u32, min_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        let mut v = acc.clone();
        trim(&mut v);
        out.push(v);
        return;
    }
    for part in min_part..=n {
        if acc.len() < part as usize {
            acc.resize(part as usize, 0);
        }
        acc[part as usize - 1] = 1;
        distinct_partitions(n - part, part + 1, acc, out);
        acc[part as usize - 1] = 0;
    }
}

/// All index pairs of weight `n`, in increasing principal order.
pub fn pairs_of_weight(n: u32) -> Vec<IndexPair> {
    let mut out = Vec::new();
    for a in 0..=n {
        let mut ks = Vec::new();
        distinct_partitions(a, 1, &mut Vec::new(), &mut ks);
        let mut is = Vec::new();
        partitions(n - a, 1, &mut Vec::new(), &mut is);
        for k in &ks {
            for i in &is {
                out.push(IndexPair::from_dense(k.clone(), i.clone()));
            }
        }
    }
    out.sort();
    out
}
