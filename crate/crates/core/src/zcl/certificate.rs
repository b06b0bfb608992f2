use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::class::ClassVector;
use crate::error::Result;
use crate::product::ProductRing;
use crate::ring::Family;
use crate::zerodiv::is_zero_divisor;

use super::factors::{expand_traced, FactorList};
use super::search::SearchReport;

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub family: Option<Family>,
    pub s: usize,
    pub factor_top_degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    /// `zcl_lower == dim_upper`, so `TC_s` is pinned.
    Exact,
    BoundsOnly,
    /// A check failed; see [`Certificate::failure`].
    Failed,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::Exact => "exact",
            Conclusion::BoundsOnly => "bounds-only",
            Conclusion::Failed => "failed",
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub step: String,
    pub factor_index: Option<usize>,
    pub partial: ClassVector,
}

/// Self-checking record of a zero-divisor product and the `TC_s` bounds it gives.
///
/// `zcl_s <= TC_s <= s * dim`, so a nonzero product of `k` zero divisors
/// gives `k <= TC_s`, and `k == s * dim` settles the value.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub ring: Arc<ProductRing>,
    pub params: Params,
    pub factors: FactorList,
    pub expanded: ClassVector,
    pub zcl_lower: usize,
    pub dim_upper: usize,
    pub conclusion: Conclusion,
    pub zero_divisor_checks: Vec<bool>,
    pub failure: Option<Failure>,
    pub search: Option<SearchReport>,
    pub notes: Vec<String>,
}

impl Certificate {
    /// Checks every factor, expands the product and derives the bounds.
    pub fn from_factors(ring: &Arc<ProductRing>, factors: FactorList) -> Result<Certificate> {
        let pr = ring.as_ref();
        let params = Params { family: pr.factor().family(), s: pr.s(), factor_top_degree: pr.factor().top_degree() };
        let zero_divisor_checks =
            factors.factors().iter().map(|f| is_zero_divisor(pr, &f.class)).collect::<Result<Vec<_>>>()?;
        let trace = expand_traced(pr, &factors)?;
        let dim_upper = pr.top_degree();

        let mut failure = None;
        if let Some(i) = zero_divisor_checks.iter().position(|ok| !ok) {
            failure = Some(Failure { step: "zero-divisor check".into(), factor_index: Some(i), partial: pr.one() });
        }
        let zcl_lower = if failure.is_none() && !trace.value.is_zero() { factors.total_length() } else { 0 };
        let conclusion = match (&failure, zcl_lower == dim_upper) {
            (Some(_), _) => Conclusion::Failed,
            (None, true) => Conclusion::Exact,
            (None, false) => Conclusion::BoundsOnly,
        };
        let mut notes = Vec::new();
        if let Some(Family { m: 2, .. }) = params.family {
            notes.push("m = 2: surface case".into());
        }
        if pr.s() == 2 {
            notes.push("s = 2: ordinary TC, zero-divisor bound only".into());
        }
        if let Some((i, _)) = &trace.vanished_at {
            notes.push(format!("product vanishes at factor {i}"));
        }
        Ok(Certificate {
            ring: Arc::clone(ring),
            params,
            factors,
            expanded: trace.value,
            zcl_lower,
            dim_upper,
            conclusion,
            zero_divisor_checks,
            failure,
            search: None,
            notes,
        })
    }

    pub(crate) fn fail(&mut self, step: &str, factor_index: Option<usize>, partial: ClassVector) {
        self.conclusion = Conclusion::Failed;
        self.failure = Some(Failure { step: step.into(), factor_index, partial });
    }

    /// Re-expands the factors and checks that every recorded field follows.
    pub fn recheck(&self) -> Result<bool> {
        let pr = self.ring.as_ref();
        let trace = expand_traced(pr, &self.factors)?;
        if trace.value != self.expanded {
            return Ok(false);
        }
        let checks =
            self.factors.factors().iter().map(|f| is_zero_divisor(pr, &f.class)).collect::<Result<Vec<_>>>()?;
        if checks != self.zero_divisor_checks || self.dim_upper != pr.top_degree() {
            return Ok(false);
        }
        let valid = checks.iter().all(|&c| c) && !self.expanded.is_zero();
        let zcl_ok = if valid { self.zcl_lower == self.factors.total_length() } else { self.zcl_lower == 0 };
        let conclusion_ok = match self.conclusion {
            Conclusion::Exact => self.zcl_lower == self.dim_upper,
            Conclusion::BoundsOnly => self.zcl_lower < self.dim_upper,
            Conclusion::Failed => self.failure.is_some(),
        };
        Ok(zcl_ok && conclusion_ok)
    }

    /// `TC_s = n` or `lower <= TC_s <= upper`.
    pub fn tc_statement(&self) -> String {
        let s = self.params.s;
        match self.conclusion {
            Conclusion::Exact => format!("TC_{s} = {}", self.zcl_lower),
            _ => format!("{} <= TC_{s} <= {}", self.zcl_lower, self.dim_upper),
        }
    }

    /// Machine-readable record; serialises with sorted keys and sorted labels.
    pub fn to_record(&self) -> Value {
        let pr = self.ring.as_ref();
        let factors: Vec<Value> = self
            .factors
            .factors()
            .iter()
            .map(|f| json!({ "terms": pr.term_labels(&f.class), "multiplicity": f.multiplicity }))
            .collect();
        let (g, m) = match self.params.family {
            Some(f) => (json!(f.g), json!(f.m)),
            None => (Value::Null, Value::Null),
        };
        let failure = self.failure.as_ref().map_or(
            Value::Null,
            |f| json!({ "step": f.step, "factor_index": f.factor_index, "partial": pr.term_labels(&f.partial) }),
        );
        json!({
            "params": { "g": g, "m": m, "s": self.params.s, "factor_top_degree": self.params.factor_top_degree },
            "factors": factors,
            "expanded": pr.term_labels(&self.expanded),
            "zcl_lower": self.zcl_lower,
            "dim_upper": self.dim_upper,
            "conclusion": self.conclusion.as_str(),
            "zero_divisor_checks": self.zero_divisor_checks,
            "failure": failure,
            "search": self.search.as_ref().map_or(Value::Null, SearchReport::to_record),
            "notes": self.notes,
            "tool_version": TOOL_VERSION,
        })
    }

    pub fn to_record_string(&self) -> String {
        self.to_record().to_string()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pr = self.ring.as_ref();
        match self.params.family {
            Some(Family { g, m }) => writeln!(f, "ring       g={g} m={m} s={}", self.params.s)?,
            None => writeln!(f, "ring       custom, s={}", self.params.s)?,
        }
        writeln!(f, "factors    {} (total length {})", self.factors.len(), self.factors.total_length())?;
        for (i, (fac, ok)) in self.factors.factors().iter().zip(&self.zero_divisor_checks).enumerate() {
            writeln!(
                f,
                "  [{i}] ({})^{}  zero divisor: {}",
                pr.display_class(&fac.class),
                fac.multiplicity,
                if *ok { "yes" } else { "NO" }
            )?;
        }
        writeln!(f, "expanded   {}", pr.display_class(&self.expanded))?;
        writeln!(f, "zcl_lower  {}", self.zcl_lower)?;
        writeln!(f, "dim_upper  {}", self.dim_upper)?;
        writeln!(f, "conclusion {}  ({})", self.conclusion, self.tc_statement())?;
        if let Some(fail) = &self.failure {
            let at = fail.factor_index.map(|i| format!(" at factor {i}")).unwrap_or_default();
            writeln!(f, "failure    {}{at}; partial {}", fail.step, pr.display_class(&fail.partial))?;
        }
        if let Some(search) = &self.search {
            writeln!(f, "search     {search}")?;
        }
        for note in &self.notes {
            writeln!(f, "note       {note}")?;
        }
        Ok(())
    }
}
