//! `TC_s(g # RP^m) = sm` for `g, m >= 2` and `s >= 3`, checked by expanding
//! the explicit zero-divisor product.

use std::sync::Arc;

use crate::class::ClassVector;
use crate::error::{Error, Result};
use crate::product::ProductRing;
use crate::ring::RingTable;

use super::certificate::{Certificate, Conclusion};
use super::factors::witness_factors;
use super::search::{zcl_search, Pool, SearchConfig, Strategy};

pub fn family_power(g: usize, m: usize, s: usize) -> Result<Arc<ProductRing>> {
    Ok(Arc::new(ProductRing::power(RingTable::connected_sum_family(g, m)?, s)?))
}

fn check_theorem_range(g: usize, m: usize, s: usize) -> Result<()> {
    if g < 2 || m < 2 {
        return Err(Error::InvalidParameter(format!("requires g >= 2 and m >= 2 (got g={g}, m={m})")));
    }
    if s < 3 {
        return Err(Error::InvalidParameter(format!("requires s >= 3 (got s={s})")));
    }
    Ok(())
}

/// Builds the witness, checks each factor is a zero divisor, expands it and
/// compares with the top class. Failed checks give a `Failed` certificate.
pub fn verify_theorem(g: usize, m: usize, s: usize) -> Result<Certificate> {
    check_theorem_range(g, m, s)?;
    let pr = family_power(g, m, s)?;
    let witness = witness_factors(&pr)?;
    let mut cert = Certificate::from_factors(&pr, witness)?;
    if cert.conclusion == Conclusion::Failed {
        return Ok(cert);
    }
    let top = pr.top_class()?;
    if cert.expanded != top {
        let (index, partial) = match super::factors::expand_traced(&pr, &cert.factors)?.vanished_at {
            Some((i, partial)) => (Some(i), partial),
            None => (None, cert.expanded.clone()),
        };
        cert.fail("expansion equals top class", index, partial);
    } else if cert.conclusion != Conclusion::Exact {
        let partial = cert.expanded.clone();
        cert.fail("zcl_lower equals s*m", None, partial);
    }
    Ok(cert)
}

/// One equality in the `s = 3` computation.
#[derive(Debug, Clone)]
pub struct StepRecord {
    pub step: &'static str,
    pub relation: &'static str,
    pub lhs: ClassVector,
    pub rhs: ClassVector,
    pub holds: bool,
}

/// Replays the `s = 3` chain
///
/// ```text
///   (x11+x12)^m (x11+x13)^m (x21+x22)^(m-1) (x21+x23)
/// = A x13^m C (x21+x23)           A = (x11+x12)^m, C = (x21+x22)^(m-1)
/// = A x13^m C x21                 x13 x23 = 0
/// = x12^m x13^m C x21             x11 x21 = 0
/// = x12^m x13^m x21^(m-1) x21     x12 x22 = 0
/// = t1 t2 t3
/// ```
///
/// Each line is expanded to normal form and compared with the previous one.
pub fn verify_steps_s3(g: usize, m: usize) -> Result<ProofChain> {
    check_theorem_range(g, m, 3)?;
    let pr = family_power(g, m, 3)?;
    let x = |u: usize, j: usize| pr.generator(u, 1, j);
    let sum = |a: ClassVector, b: ClassVector| pr.add(&a, &b);
    let product =
        |parts: &[&ClassVector]| -> Result<ClassVector> { parts.iter().try_fold(pr.one(), |acc, p| pr.mul(&acc, p)) };

    let a = pr.pow(&sum(x(1, 1)?, x(1, 2)?)?, m)?;
    let b = pr.pow(&sum(x(1, 1)?, x(1, 3)?)?, m)?;
    let c = pr.pow(&sum(x(2, 1)?, x(2, 2)?)?, m - 1)?;
    let d = sum(x(2, 1)?, x(2, 3)?)?;
    let x13m = pr.pow(&x(1, 3)?, m)?;
    let x12m = pr.pow(&x(1, 2)?, m)?;
    let x21 = x(2, 1)?;
    let x21m1 = pr.pow(&x21, m - 1)?;

    let lines = [
        product(&[&a, &b, &c, &d])?,
        product(&[&a, &x13m, &c, &d])?,
        product(&[&a, &x13m, &c, &x21])?,
        product(&[&x12m, &x13m, &c, &x21])?,
        product(&[&x12m, &x13m, &x21m1, &x21])?,
        pr.top_class()?,
    ];
    let labels = [
        ("1", "t_3 only arises from x13^m in the second factor"),
        ("2", "x13 x23 = 0"),
        ("3", "x11 x21 = 0"),
        ("4", "x12 x22 = 0"),
        ("top", "x12^m x13^m x21^m = t1 t2 t3"),
    ];
    let steps = labels
        .iter()
        .zip(lines.windows(2))
        .map(|(&(step, relation), w)| StepRecord {
            step,
            relation,
            lhs: w[0].clone(),
            rhs: w[1].clone(),
            holds: w[0] == w[1] && !w[1].is_zero(),
        })
        .collect();
    Ok(ProofChain { ring: pr, steps })
}

/// The checked `s = 3` chain together with the ring its classes live in.
#[derive(Debug, Clone)]
pub struct ProofChain {
    pub ring: Arc<ProductRing>,
    pub steps: Vec<StepRecord>,
}

impl ProofChain {
    /// Index of the first step whose two sides differ.
    pub fn first_failure(&self) -> Option<usize> {
        self.steps.iter().position(|s| !s.holds)
    }
}

/// `zcl_s <= TC_s <= s * m` for `g # RP^m`, with the certificate for the lower bound.
#[derive(Debug, Clone)]
pub struct TcBounds {
    pub lower: usize,
    pub upper: usize,
    pub certificate: Certificate,
}

/// Uses the witness inside the theorem's range and an exhaustive degree-one
/// search elsewhere (falling back to dfs if the search outgrows its limits).
pub fn tc_bounds(g: usize, m: usize, s: usize) -> Result<TcBounds> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("requires s >= 2 (got s={s})")));
    }
    let certificate = if g >= 2 && m >= 2 && s >= 3 {
        verify_theorem(g, m, s)?
    } else {
        let pr = family_power(g, m, s)?;
        match zcl_search(&pr, &SearchConfig::new(Pool::StandardDegreeOne, Strategy::Exhaustive)) {
            Err(Error::BudgetExceeded(_)) => {
                zcl_search(&pr, &SearchConfig::new(Pool::StandardDegreeOne, Strategy::Dfs))?
            }
            other => other?,
        }
    };
    Ok(TcBounds { lower: certificate.zcl_lower, upper: certificate.dim_upper, certificate })
}
