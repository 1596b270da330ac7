//! Named graph families with their standard actions and candidate polynomials.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::actions::{self, CyclicAction};
use crate::csp::{self, CspInstance};
use crate::error::{invalid, Result};
use crate::graphs::{self, Graph};
use crate::indep;
use crate::qpoly::IntLaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    CyclePower { n: usize, r: usize },
    PathPower { n: usize, r: usize },
    WhiskerCycle { n: usize, r: usize },
    Gear { n: usize },
    Helm { n: usize },
    Book { n: usize },
}

impl FamilySpec {
    pub const NAMES: [&'static str; 6] = [
        "cycle-power",
        "path-power",
        "whisker-cycle",
        "gear",
        "helm",
        "book",
    ];

    /// Builds a spec from a family name; `r` is ignored by families without it.
    pub fn from_name(name: &str, n: usize, r: usize) -> Result<Self> {
        Ok(match name {
            "cycle-power" => FamilySpec::CyclePower { n, r },
            "path-power" => FamilySpec::PathPower { n, r },
            "whisker-cycle" => FamilySpec::WhiskerCycle { n, r },
            "gear" => FamilySpec::Gear { n },
            "helm" => FamilySpec::Helm { n },
            "book" => FamilySpec::Book { n },
            other => {
                return Err(invalid(format!(
                    "unknown family {other:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::CyclePower { .. } => "cycle-power",
            FamilySpec::PathPower { .. } => "path-power",
            FamilySpec::WhiskerCycle { .. } => "whisker-cycle",
            FamilySpec::Gear { .. } => "gear",
            FamilySpec::Helm { .. } => "helm",
            FamilySpec::Book { .. } => "book",
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            FamilySpec::CyclePower { n, .. }
            | FamilySpec::PathPower { n, .. }
            | FamilySpec::WhiskerCycle { n, .. }
            | FamilySpec::Gear { n }
            | FamilySpec::Helm { n }
            | FamilySpec::Book { n } => n,
        }
    }

    /// The power `r`, for families that have one.
    pub fn r(&self) -> Option<usize> {
        match *self {
            FamilySpec::CyclePower { r, .. }
            | FamilySpec::PathPower { r, .. }
            | FamilySpec::WhiskerCycle { r, .. } => Some(r),
            _ => None,
        }
    }

    /// Checks the parameters without building anything.
    pub fn validate(&self) -> Result<()> {
        let violated = match *self {
            FamilySpec::CyclePower { n, r } | FamilySpec::WhiskerCycle { n, r } => {
                (n == 0 || 2 * r >= n).then_some("n >= 1 and 2r < n")
            }
            FamilySpec::PathPower { n, .. } | FamilySpec::Book { n } => {
                (n == 0).then_some("n >= 1")
            }
            FamilySpec::Gear { n } => (n < 2).then_some("n >= 2"),
            FamilySpec::Helm { n } => (n < 3).then_some("n >= 3"),
        };
        match violated {
            None => Ok(()),
            Some(pre) => Err(invalid(format!(
                "{} requires {pre}, got {self}",
                self.name()
            ))),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        self.validate()?;
        match *self {
            FamilySpec::CyclePower { n, r } => graphs::cycle_power(n, r),
            FamilySpec::PathPower { n, r } => Ok(graphs::path_power(n, r)),
            FamilySpec::WhiskerCycle { n, r } => Ok(graphs::whisker(&graphs::cycle_power(n, r)?)),
            FamilySpec::Gear { n } => graphs::gear(n),
            FamilySpec::Helm { n } => graphs::helm(n),
            FamilySpec::Book { n } => graphs::book(n),
        }
    }

    /// The standard cyclic action on `graph`, which must be this family's graph.
    pub fn action(&self, graph: Arc<Graph>) -> Result<CyclicAction> {
        match *self {
            FamilySpec::CyclePower { n, .. } => actions::rotation_action(n, graph),
            FamilySpec::PathPower { .. } => Err(invalid("path powers carry no cyclic action")),
            FamilySpec::WhiskerCycle { n, r } => {
                let base = Arc::new(graphs::cycle_power(n, r)?);
                actions::whisker_extend(&actions::rotation_action(n, base)?, graph)
            }
            FamilySpec::Gear { n } => actions::gear_action(n, graph),
            FamilySpec::Helm { n } => actions::helm_action(n, graph),
            FamilySpec::Book { n } => actions::book_action(n, graph),
        }
    }

    /// The candidate polynomial for independent `k`-sets.
    pub fn candidate(&self, k: usize) -> Result<IntLaurentPoly> {
        self.validate()?;
        match *self {
            FamilySpec::CyclePower { n, r } => csp::cycle_power_poly(n, r, k),
            FamilySpec::PathPower { n, r } => Ok(csp::path_power_poly(n, r, k)),
            FamilySpec::WhiskerCycle { n, r } => {
                csp::whisker_poly(&csp::cycle_power_series(n, r, k)?, n, k)
            }
            FamilySpec::Gear { n } => csp::gear_poly(n, k),
            FamilySpec::Helm { n } => csp::helm_poly(n, k),
            FamilySpec::Book { n } => csp::book_poly(n, k),
        }
    }

    /// Largest `k` worth tabulating by default.
    pub fn default_k_max(&self) -> usize {
        match *self {
            FamilySpec::CyclePower { n, r } => n / (r + 1),
            FamilySpec::PathPower { n, r } => (n + r) / (r + 1),
            FamilySpec::WhiskerCycle { n, .. } => n,
            FamilySpec::Gear { n } | FamilySpec::Helm { n } | FamilySpec::Book { n } => n + 1,
        }
    }

    /// Whether `candidate(k)` is defined.
    pub fn accepts_k(&self, k: usize) -> bool {
        match *self {
            FamilySpec::CyclePower { n, r } => (r + 1) * k <= n,
            _ => true,
        }
    }

    pub fn label(&self, k: usize) -> String {
        format!("{self} k={k}")
    }

    /// Graph, action, all independent `k`-sets and the candidate, bundled.
    pub fn instance(&self, k: usize) -> Result<CspInstance> {
        let candidate = self.candidate(k)?;
        let graph = Arc::new(self.graph()?);
        let action = self.action(graph.clone())?;
        let family = indep::enumerate(&graph, k);
        let mut inst = CspInstance::new(family, action, candidate, self.label(k))?;
        if let FamilySpec::CyclePower { n, r } = *self {
            if let Some(note) = csp::hypothesis_note(n, r, k) {
                inst = inst.with_note(note);
            }
        }
        Ok(inst)
    }

    /// `|I_k|` from a formula: the closed form for cycle powers, the candidate at `q = 1` otherwise.
    pub fn closed_form_count(&self, k: usize) -> Result<BigInt> {
        match *self {
            FamilySpec::CyclePower { n, r } => {
                self.validate()?;
                csp::count_closed_form(n, r, k)
            }
            _ => Ok(self.candidate(k)?.coefficient_sum()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.r() {
            Some(r) => write!(f, "{} n={} r={r}", self.name(), self.n()),
            None => write!(f, "{} n={}", self.name(), self.n()),
        }
    }
}

/// One line of a parameter sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub n: usize,
    pub r: Option<usize>,
    pub k: usize,
    #[serde(with = "crate::bigint_serde::plain")]
    pub closed_form: BigInt,
    pub enumerated: u64,
    /// `None` for families without an action.
    pub pass: Option<bool>,
}

/// Tabulates every valid `(n, r, k)` in the given inclusive ranges.
/// Invalid combinations are skipped; `k_range = None` uses `1..=default_k_max`.
pub fn table(
    family: &str,
    n_range: (usize, usize),
    r_range: (usize, usize),
    k_range: Option<(usize, usize)>,
) -> Result<Vec<TableRow>> {
    FamilySpec::from_name(family, 1, 0)?;
    let has_r = FamilySpec::from_name(family, 1, 0)?.r().is_some();
    let rs: Vec<usize> = if has_r {
        (r_range.0..=r_range.1).collect()
    } else {
        vec![0]
    };
    let mut rows = Vec::new();
    for n in n_range.0..=n_range.1 {
        for &r in &rs {
            let spec = FamilySpec::from_name(family, n, r)?;
            if spec.validate().is_err() {
                continue;
            }
            let (k_lo, k_hi) = k_range.unwrap_or((1, spec.default_k_max()));
            for k in k_lo..=k_hi {
                if !spec.accepts_k(k) {
                    continue;
                }
                let graph = spec.graph()?;
                let pass = match spec.instance(k) {
                    Ok(inst) => Some(csp::verify(&inst).pass),
                    Err(_) => None,
                };
                rows.push(TableRow {
                    family: family.to_string(),
                    n,
                    r: spec.r(),
                    k,
                    closed_form: spec.closed_form_count(k)?,
                    enumerated: indep::count(&graph, k),
                    pass,
                });
            }
        }
    }
    Ok(rows)
}
