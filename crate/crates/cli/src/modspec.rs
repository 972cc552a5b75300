//! Module strings such as `verma:lambda=1/2,c=1` or
//! `whittaker:t=0,c=1,phi=L1=0;L2=1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use ramond_core::base::{b0_module, verma_top, whittaker_module, B1Module, BaseModuleSpec, WhittakerData};
use ramond_core::induced::InducedModule;
use ramond_core::rational::{parse_rational, to_short_string, Q};
use ramond_core::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    Verma { lambda: Q, c: Q },
    Whittaker(WhittakerData),
    B0 { lambda: Q, c: Q },
    B1 { mu: Q, c: Q },
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = to_short_string;
        match self {
            ModuleSpec::Verma { lambda, c } => write!(f, "verma:lambda={},c={}", s(lambda), s(c)),
            ModuleSpec::Whittaker(d) => {
                let phi: Vec<String> = d.values.iter().map(|(k, v)| format!("L{k}={}", s(v))).collect();
                write!(f, "whittaker:t={},c={},phi={}", d.order, s(&d.central_charge), phi.join(";"))
            }
            ModuleSpec::B0 { lambda, c } => write!(f, "b0:lambda={},c={}", s(lambda), s(c)),
            ModuleSpec::B1 { mu, c } => write!(f, "b1:mu={},c={}", s(mu), s(c)),
        }
    }
}

fn bad(message: impl Into<String>) -> Error {
    Error::Parse {
        offset: 0,
        message: message.into(),
    }
}

fn rational(key: &str, value: &str) -> Result<Q> {
    parse_rational(value).map_err(|_| bad(format!("`{key}` needs a rational, got `{value}`")))
}

/// `L<k>=<q>;...`; an empty string is `φ ≡ 0`.
pub fn parse_phi(text: &str) -> Result<BTreeMap<i64, Q>> {
    let mut out = BTreeMap::new();
    for entry in text.split(';').map(str::trim).filter(|e| !e.is_empty()) {
        let (lhs, rhs) = entry
            .split_once('=')
            .ok_or_else(|| bad(format!("phi entry `{entry}` is not of the form L<k>=<q>")))?;
        let k: i64 = lhs
            .trim()
            .strip_prefix('L')
            .and_then(|k| k.trim().parse().ok())
            .ok_or_else(|| bad(format!("phi entry `{entry}` is not of the form L<k>=<q>")))?;
        if out.insert(k, rational("phi", rhs)?).is_some() {
            return Err(bad(format!("phi assigns L{k} twice")));
        }
    }
    Ok(out)
}

impl ModuleSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, rest) = text
            .split_once(':')
            .ok_or_else(|| bad(format!("module `{text}` lacks a `kind:` prefix")))?;
        let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
        // `phi` holds `;`-separated entries and may be last; split on commas
        // only before it.
        let (head, phi) = match rest.find("phi=") {
            Some(at) => (rest[..at].trim_end_matches(','), Some(&rest[at + 4..])),
            None => (rest, None),
        };
        for part in head.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("field `{part}` is not of the form key=value")))?;
            if fields.insert(k.trim(), v.trim()).is_some() {
                return Err(bad(format!("field `{k}` given twice")));
            }
        }
        if let Some(p) = phi {
            if p.contains(',') {
                return Err(bad("`phi` must be the last field"));
            }
        }
        let mut take = |key: &str| -> Result<&str> {
            fields
                .remove(key)
                .ok_or_else(|| bad(format!("`{kind}` module needs `{key}`")))
        };
        let spec = match kind.trim() {
            "verma" => ModuleSpec::Verma {
                lambda: rational("lambda", take("lambda")?)?,
                c: rational("c", take("c")?)?,
            },
            "b0" => ModuleSpec::B0 {
                lambda: rational("lambda", take("lambda")?)?,
                c: rational("c", take("c")?)?,
            },
            "b1" => ModuleSpec::B1 {
                mu: rational("mu", take("mu")?)?,
                c: rational("c", take("c")?)?,
            },
            "whittaker" => {
                let t = take("t")?;
                let t: u32 = t.parse().map_err(|_| bad(format!("`t` needs a natural number, got `{t}`")))?;
                let c = rational("c", take("c")?)?;
                let values = parse_phi(phi.ok_or_else(|| bad("`whittaker` module needs `phi`"))?)?;
                ModuleSpec::Whittaker(WhittakerData::new(t, c, values))
            }
            other => return Err(bad(format!("unknown module kind `{other}`"))),
        };
        if phi.is_some() && !matches!(spec, ModuleSpec::Whittaker(_)) {
            return Err(bad(format!("`{kind}` module takes no `phi`")));
        }
        if let Some(k) = fields.keys().next() {
            return Err(bad(format!("unknown field `{k}` for `{kind}` module")));
        }
        Ok(spec)
    }

    /// The inducing module.
    pub fn base(&self) -> Result<BaseModuleSpec> {
        Ok(match self {
            ModuleSpec::Verma { lambda, c } => Arc::new(verma_top(lambda, c)),
            ModuleSpec::Whittaker(d) => Arc::new(whittaker_module(d)?),
            ModuleSpec::B0 { lambda, c } => Arc::new(b0_module(lambda, c)),
            ModuleSpec::B1 { mu, c } => Arc::new(B1Module::shift_family(mu.clone(), c.clone())),
        })
    }

    pub fn induced(&self, max_weight: u64) -> Result<InducedModule> {
        InducedModule::new(self.base()?, max_weight)
    }
}
