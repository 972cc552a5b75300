use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::index::{pairs_of_weight, IndexPair};
use super::module::{InducedModule, ModuleVector};
use super::reduce::{reduce_to_base, Reduction};
use crate::algebra::Generator;
use crate::base::{act_vector, sample_count, BaseModule, BaseVector};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::pbw::{super_commutator, AlgebraElement};
use crate::rational::{qf, Q};

/// How injectivity of `L_t` on the base was decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Injectivity {
    /// Exact rank on a finite-dimensional base.
    Proved,
    /// Images of the first `samples` basis vectors are independent.
    Sampled { samples: usize },
    /// A nonzero vector in the kernel, rendered with base labels.
    Fails { witness: String },
}

impl Injectivity {
    pub fn holds(&self) -> bool {
        !matches!(self, Injectivity::Fails { .. })
    }
}

impl fmt::Display for Injectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Injectivity::Proved => f.write_str("proved-injective"),
            Injectivity::Sampled { samples } => write!(f, "sampled-injective on {samples} basis vectors"),
            Injectivity::Fails { witness } => write!(f, "not injective: kills {witness}"),
        }
    }
}

/// The smallest `t <= level()` with `L_i`, `G_i` zero on the first
/// `samples` basis vectors for every `t < i <= level()`.
pub fn effective_level(base: &dyn BaseModule, samples: usize) -> Result<u32> {
    let n = sample_count(base, samples);
    let mut t = base.level();
    while t > 0 {
        let ti = t as i64;
        let mut zero = true;
        'scan: for g in [Generator::L(ti), Generator::G(ti)] {
            for b in 0..n {
                if !base.act(g, b)?.is_zero() {
                    zero = false;
                    break 'scan;
                }
            }
        }
        if !zero {
            break;
        }
        t -= 1;
    }
    Ok(t)
}

/// Decides injectivity of `L_t` exactly (finite base) or on samples.
pub fn injectivity(base: &dyn BaseModule, t: u32, samples: usize) -> Result<Injectivity> {
    let (n, finite) = match base.dimension() {
        Some(d) => (d, true),
        None => (samples, false),
    };
    let images: Vec<BaseVector> = (0..n)
        .map(|b| base.act(Generator::L(t as i64), b))
        .collect::<Result<_>>()?;
    let rows: Vec<usize> = {
        let mut s: Vec<usize> = images.iter().flat_map(|x| x.support()).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let matrix: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| images.iter().map(|x| x.coefficient(*r)).collect())
        .collect();
    if rank(&matrix, n) == n {
        return Ok(if finite {
            Injectivity::Proved
        } else {
            Injectivity::Sampled { samples: n }
        });
    }
    let kernel = crate::linalg::nullspace(&matrix, n);
    let witness = BaseVector::from_terms(kernel[0].iter().cloned().enumerate());
    Ok(Injectivity::Fails {
        witness: witness.display_with(base),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingReport {
    pub module: String,
    pub declared_level: u32,
    pub t: u32,
    pub j_range: u32,
    pub samples: usize,
    /// First `L_i` (`t < i <= t + jRange`) found acting nonzero.
    pub annihilation_failure: Option<String>,
    pub injectivity: Injectivity,
    /// First `G_j` found acting nonzero; `None` when it holds or was not tested.
    pub conclusion_failure: Option<String>,
    pub conclusion_tested: bool,
    /// Engine checks of `G_j = (2/j)[L_j, G_0]`, as algebra elements and on samples.
    pub identity_checks: usize,
    pub identity_failures: Vec<String>,
}

impl VanishingReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.annihilation_failure.is_none() && self.injectivity.holds()
    }

    pub fn passed(&self) -> bool {
        self.hypotheses_hold()
            && self.conclusion_tested
            && self.conclusion_failure.is_none()
            && self.identity_failures.is_empty()
    }
}

/// Checks the hypotheses (`L_i = 0` for `t < i <= t + jRange`, `L_t`
/// injective) and then the conclusion `G_j = 0` on the same range, at the
/// effective level `t` of the base.
pub fn vanishing_check(base: &dyn BaseModule, j_range: u32, samples: usize) -> Result<VanishingReport> {
    let t = effective_level(base, samples)?;
    let n = sample_count(base, samples);
    let ti = t as i64;
    let range = ti + 1..=ti + j_range as i64;
    let mut annihilation_failure = None;
    'a: for i in range.clone() {
        for b in 0..n {
            let img = base.act(Generator::L(i), b)?;
            if !img.is_zero() {
                annihilation_failure = Some(format!(
                    "L[{i}] {} = {}",
                    base.basis_label(b),
                    img.display_with(base)
                ));
                break 'a;
            }
        }
    }
    let inj = injectivity(base, t, samples)?;
    let mut report = VanishingReport {
        module: base.label(),
        declared_level: base.level(),
        t,
        j_range,
        samples: n,
        annihilation_failure,
        injectivity: inj,
        conclusion_failure: None,
        conclusion_tested: false,
        identity_checks: 0,
        identity_failures: Vec::new(),
    };
    if !report.hypotheses_hold() {
        return Ok(report);
    }
    report.conclusion_tested = true;
    let g0 = AlgebraElement::generator(Generator::G(0));
    for j in range {
        let lj = AlgebraElement::generator(Generator::L(j));
        let gj = AlgebraElement::generator(Generator::G(j));
        let via = super_commutator(&lj, &g0)?.scaled(&qf(2, j));
        report.identity_checks += 1;
        if via != gj {
            report.identity_failures.push(format!("(2/{j})[L[{j}], G[0]] = {via}"));
        }
        for b in 0..n {
            let e = BaseVector::basis(b);
            let direct = base.act(Generator::G(j), b)?;
            if !direct.is_zero() && report.conclusion_failure.is_none() {
                report.conclusion_failure = Some(format!(
                    "G[{j}] {} = {}",
                    base.basis_label(b),
                    direct.display_with(base)
                ));
            }
            let lg = act_vector(base, Generator::L(j), &act_vector(base, Generator::G(0), &e)?)?;
            let gl = act_vector(base, Generator::G(0), &act_vector(base, Generator::L(j), &e)?)?;
            let bracket = lg.sub(&gl).scaled(&qf(2, j));
            report.identity_checks += 1;
            if bracket != direct {
                report.identity_failures.push(format!(
                    "on {}: (2/{j})[L[{j}], G[0]] gives {} but G[{j}] gives {}",
                    base.basis_label(b),
                    bracket.display_with(base),
                    direct.display_with(base)
                ));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct CertificateOptions {
    pub max_level: u32,
    pub trials: usize,
    pub seed: u64,
    /// Base basis vectors used for spanning sets, random vectors and samples.
    pub base_samples: usize,
    pub j_range: u32,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        Self {
            max_level: 3,
            trials: 20,
            seed: 0,
            base_samples: 4,
            j_range: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunSource {
    Spanning,
    Random,
}

#[derive(Debug, Clone)]
pub struct ReductionRun {
    pub source: RunSource,
    pub input: ModuleVector,
    pub outcome: std::result::Result<Reduction, Error>,
}

impl ReductionRun {
    pub fn succeeded(&self) -> bool {
        matches!(&self.outcome, Ok(r) if !r.result.is_zero() && r.degrees_decrease())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every reduction reached a nonzero base element.
    Certified { level: u32 },
    Rejected { reason: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified { level } => write!(f, "simple: verified up to level {level}"),
            Verdict::Rejected { reason } => write!(f, "no certificate: {reason}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplicityReport {
    pub module: String,
    pub options: CertificateOptions,
    pub vanishing: VanishingReport,
    pub obstruction: Option<String>,
    pub runs: Vec<ReductionRun>,
    pub verdict: Verdict,
}

impl SimplicityReport {
    pub fn certified(&self) -> bool {
        matches!(self.verdict, Verdict::Certified { .. })
    }
}

fn random_vector(m: &InducedModule, rng: &mut ChaCha8Rng, opts: &CertificateOptions, pools: &[Vec<IndexPair>], bases: usize) -> ModuleVector {
    loop {
        let mut v = ModuleVector::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let w = rng.gen_range(0..=opts.max_level) as usize;
            let pair = pools[w].choose(rng).expect("nonempty level").clone();
            let b = rng.gen_range(0..bases);
            let mut c = Q::zero();
            while c.is_zero() {
                c = qf(rng.gen_range(-6..=6), rng.gen_range(1..=4));
            }
            v.add_scaled(pair, &BaseVector::basis(b), &c);
        }
        if !v.is_zero() && !v.is_base() {
            debug_assert!(v.max_weight() <= m.max_weight());
            return v;
        }
    }
}

/// Runs the descent procedure on a spanning set of monomial vectors of each
/// level `1..=max_level` and on `trials` seeded random vectors.
///
/// Gates, in order: the base's effective level must be `>= 1`, the
/// hypotheses and conclusion of the `G_j`-vanishing check must hold, and no
/// simplicity obstruction may be known for the base.
pub fn simplicity_certificate(m: &InducedModule, opts: &CertificateOptions) -> Result<SimplicityReport> {
    let base = m.base().as_ref();
    let vanishing = vanishing_check(base, opts.j_range, opts.base_samples.max(8))?;
    let obstruction = base.simplicity_obstruction();
    let mut report = SimplicityReport {
        module: m.label(),
        options: opts.clone(),
        vanishing,
        obstruction,
        runs: Vec::new(),
        verdict: Verdict::Rejected { reason: String::new() },
    };
    let reject = |reason: String| Verdict::Rejected { reason };
    if report.vanishing.t == 0 {
        report.verdict = reject("t = 0: use singular_vectors instead".into());
        return Ok(report);
    }
    if !report.vanishing.passed() {
        let l = &report.vanishing;
        let reason = if let Some(f) = &l.annihilation_failure {
            format!("L_i does not vanish above t = {}: {f}", l.t)
        } else if !l.injectivity.holds() {
            format!("L_{} is {}", l.t, l.injectivity)
        } else if let Some(f) = &l.conclusion_failure {
            format!("G_j does not vanish above t = {}: {f}", l.t)
        } else {
            format!("identity check failed: {}", l.identity_failures.join("; "))
        };
        report.verdict = reject(reason);
        return Ok(report);
    }
    if let Some(reason) = &report.obstruction {
        report.verdict = reject(reason.clone());
        return Ok(report);
    }
    let m = m.with_max_weight(m.max_weight().max(opts.max_level as u64));
    let t = report.vanishing.t;
    let bases = sample_count(base, opts.base_samples).max(1);
    let pools: Vec<Vec<IndexPair>> = (0..=opts.max_level).map(pairs_of_weight).collect();
    for pool in pools.iter().skip(1) {
        for pair in pool {
            for b in 0..bases {
                let input = ModuleVector::single(pair.clone(), BaseVector::basis(b));
                let outcome = reduce_to_base(&m, &input, t);
                report.runs.push(ReductionRun {
                    source: RunSource::Spanning,
                    input,
                    outcome,
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.trials {
        let input = random_vector(&m, &mut rng, opts, &pools, bases);
        let outcome = reduce_to_base(&m, &input, t);
        report.runs.push(ReductionRun {
            source: RunSource::Random,
            input,
            outcome,
        });
    }
    report.verdict = match report.runs.iter().find(|r| !r.succeeded()) {
        None => Verdict::Certified { level: opts.max_level },
        Some(run) => {
            let why = match &run.outcome {
                Err(e) => e.to_string(),
                Ok(_) => "reduction ended at zero or without descent".into(),
            };
            reject(format!("reduction of {} failed: {why}", m.display_vector(&run.input)))
        }
    };
    Ok(report)
}

/// Counts of runs by outcome, for summaries.
pub fn run_summary(report: &SimplicityReport) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for r in &report.runs {
        let key = match (&r.source, r.succeeded()) {
            (RunSource::Spanning, true) => "spanning ok",
            (RunSource::Spanning, false) => "spanning failed",
            (RunSource::Random, true) => "random ok",
            (RunSource::Random, false) => "random failed",
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::base::{b0_module, verma_top, whittaker_module, B1Module, WhittakerData};
    use crate::rational::q;

    #[test]
    fn vanishing_on_tops() {
        let r = vanishing_check(&verma_top(&q(1), &q(1)), 5, 8).unwrap();
        assert_eq!(r.t, 0);
        assert_eq!(r.injectivity, Injectivity::Proved);
        assert!(r.passed(), "{r:?}");
        let r = vanishing_check(&b0_module(&q(2), &q(24)), 3, 8).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = vanishing_check(&B1Module::shift_family(q(1), q(0)), 5, 8).unwrap();
        assert_eq!(r.t, 1);
        assert_eq!(r.injectivity, Injectivity::Sampled { samples: 8 });
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn vanishing_on_v_phi_uses_level_two() {
        let d = WhittakerData::new(0, q(1), [(2, q(1))]);
        let v = whittaker_module(&d).unwrap();
        let r = vanishing_check(&v, 5, 8).unwrap();
        assert_eq!(r.t, 2);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn degenerate_l0_is_flagged() {
        let r = vanishing_check(&verma_top(&q(0), &q(0)), 3, 4).unwrap();
        assert!(!r.injectivity.holds());
        assert!(!r.conclusion_tested);
    }

    #[test]
    fn verma_is_rejected() {
        let m = InducedModule::verma(&q(1), &q(1), 8).unwrap();
        let r = simplicity_certificate(&m, &CertificateOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Rejected { reason: "t = 0: use singular_vectors instead".into() });
    }

    #[test]
    fn b1_certificate() {
        let m = InducedModule::new(Arc::new(B1Module::shift_family(q(1), q(0))), 8).unwrap();
        let opts = CertificateOptions {
            max_level: 2,
            trials: 5,
            ..Default::default()
        };
        let r = simplicity_certificate(&m, &opts).unwrap();
        assert!(r.certified(), "{}", r.verdict);
    }
}
