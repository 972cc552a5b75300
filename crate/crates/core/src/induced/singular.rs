use std::collections::BTreeMap;

use num_traits::Zero;

use super::index::IndexPair;
use super::module::{InducedModule, ModuleVector};
use crate::algebra::Generator;
use crate::base::BaseVector;
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::pbw::{super_commutator, AlgebraElement};
use crate::rational::Q;

/// Checks that every `L_m`, `G_m` with `1 <= m <= max_index` is a nonzero
/// multiple of a bracket of generators already reached from `{L_1, G_1}`.
/// Returns one line per derived generator.
pub fn generation_check(max_index: i64) -> Result<Vec<String>> {
    let gen = AlgebraElement::generator;
    let mut lines = Vec::new();
    let mut derive = |target: Generator, x: Generator, y: Generator| -> Result<()> {
        let br = super_commutator(&gen(x), &gen(y))?;
        let target_el = gen(target);
        let mono = target_el.terms().next().expect("generator").0.clone();
        let c = br.coefficient(&mono);
        if c.is_zero() || br != target_el.scaled(&c) {
            return Err(Error::Precondition(format!("[{x}, {y}] = {br} is not a multiple of {target}")));
        }
        lines.push(format!("[{x}, {y}] = {br}"));
        Ok(())
    };
    if max_index >= 2 {
        derive(Generator::L(2), Generator::G(1), Generator::G(1))?;
    }
    for m in 1..max_index {
        derive(Generator::G(m + 1), Generator::L(1), Generator::G(m))?;
        if m >= 2 {
            derive(Generator::L(m + 1), Generator::L(1), Generator::L(m))?;
        }
    }
    Ok(lines)
}

fn coordinates(v: &ModuleVector) -> BTreeMap<(IndexPair, usize), Q> {
    let mut out = BTreeMap::new();
    for (p, x) in v.terms() {
        for (b, c) in x.iter() {
            out.insert((p.clone(), b), c.clone());
        }
    }
    out
}

/// A basis of `{x in M(λ,l)_level : L_1 x = G_1 x = 0}`.
///
/// Solved as the exact nullspace of the stacked `L_1`, `G_1` matrices on the
/// level basis. Since `L_1` and `G_1` generate `R_+` (see
/// [`generation_check`]), the result is the space of singular vectors.
pub fn singular_vectors(lambda: &Q, l: &Q, level: u32) -> Result<Vec<ModuleVector>> {
    if level == 0 {
        return Err(Error::Precondition("level must be positive".into()));
    }
    generation_check(level as i64 + 2)?;
    let m = InducedModule::verma(lambda, l, level as u64)?;
    let basis = m.level_basis(level)?;
    let mut rows: BTreeMap<(u8, IndexPair, usize), Vec<Q>> = BTreeMap::new();
    let ncols = basis.len();
    for (col, (pair, b)) in basis.iter().enumerate() {
        let v = ModuleVector::single(pair.clone(), BaseVector::basis(*b));
        for (tag, g) in [(0u8, Generator::L(1)), (1u8, Generator::G(1))] {
            for ((p, bb), c) in coordinates(&m.act_generator(g, &v)?) {
                rows.entry((tag, p, bb)).or_insert_with(|| vec![Q::zero(); ncols])[col] = c;
            }
        }
    }
    let matrix: Vec<Vec<Q>> = rows.into_values().collect();
    let kernel = nullspace(&matrix, ncols);
    Ok(kernel
        .into_iter()
        .map(|x| {
            let mut v = ModuleVector::zero();
            for ((pair, b), c) in basis.iter().zip(x) {
                v.add_scaled(pair.clone(), &BaseVector::basis(*b), &c);
            }
            v
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn generation_lines() {
        let lines = generation_check(4).unwrap();
        assert_eq!(lines[0], "[G[1], G[1]] = 2*L[2]");
        assert!(lines.iter().any(|l| l == "[L[1], G[1]] = -1/2*G[2]"));
        assert_eq!(lines.len(), 1 + 3 + 2);
    }

    #[test]
    fn level_one_examples() {
        assert!(singular_vectors(&q(1), &q(1), 1).unwrap().is_empty());
        let k = singular_vectors(&qf(3, 8), &q(1), 1).unwrap();
        assert_eq!(k.len(), 2);
        let m = InducedModule::verma(&qf(3, 8), &q(1), 2).unwrap();
        for x in &k {
            assert!(m.act_generator(Generator::L(1), x).unwrap().is_zero());
            assert!(m.act_generator(Generator::G(1), x).unwrap().is_zero());
        }
    }
}
