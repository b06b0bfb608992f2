//! Search for long nonzero products of zero divisors.
//!
//! Candidates come from a pool of kernel elements sorted by degree, then by
//! the combination mask over the reduced-echelon kernel basis. Products are
//! explored as multisets (non-decreasing pool indices); a zero partial
//! product is never extended, and a branch is cut when even filling the
//! remaining degree budget with the cheapest admissible factor cannot beat
//! the best length found so far.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::class::ClassVector;
use crate::error::{Error, Result};
use crate::product::ProductRing;
use crate::zerodiv::kernel_basis;

use super::certificate::Certificate;
use super::factors::{expand, FactorList};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pool {
    /// Nonzero combinations of the degree-1 kernel basis.
    StandardDegreeOne,
    /// Nonzero combinations of the kernel basis in every positive degree.
    FullKernel,
}

impl Pool {
    pub fn as_str(self) -> &'static str {
        match self {
            Pool::StandardDegreeOne => "std1",
            Pool::FullKernel => "kernel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Single path: keep multiplying by the first pool element that keeps the product nonzero.
    Greedy,
    /// Branch and bound that stops quietly at the node limit; a lower bound.
    Dfs,
    /// Branch and bound run to completion; the maximum over the pool.
    Exhaustive,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Greedy => "greedy",
            Strategy::Dfs => "dfs",
            Strategy::Exhaustive => "exhaustive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub pool: Pool,
    pub strategy: Strategy,
    /// Longest product to consider; defaults to the top degree.
    pub max_len: Option<usize>,
    /// Largest number of combinations enumerated per degree.
    pub budget: u64,
    /// Search-tree nodes visited before giving up.
    pub node_limit: u64,
    /// Known product to start from; the search only reports something longer.
    pub seed: Option<FactorList>,
}

impl SearchConfig {
    pub const DEFAULT_BUDGET: u64 = 1 << 20;
    pub const DEFAULT_NODE_LIMIT: u64 = 20_000_000;

    pub fn new(pool: Pool, strategy: Strategy) -> Self {
        SearchConfig {
            pool,
            strategy,
            max_len: None,
            budget: Self::DEFAULT_BUDGET,
            node_limit: Self::DEFAULT_NODE_LIMIT,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub pool: Pool,
    pub requested: Strategy,
    pub strategy: Strategy,
    pub max_len: usize,
    pub pool_size: usize,
    pub nodes: u64,
    /// True when the result is the maximum over the pool.
    pub complete: bool,
    pub warnings: Vec<String>,
}

impl SearchReport {
    pub fn to_record(&self) -> Value {
        json!({
            "pool": self.pool.as_str(),
            "requested_strategy": self.requested.as_str(),
            "strategy": self.strategy.as_str(),
            "max_len": self.max_len,
            "pool_size": self.pool_size,
            "nodes": self.nodes,
            "complete": self.complete,
            "warnings": self.warnings,
        })
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pool={} strategy={} pool_size={} nodes={} max_len={} complete={}",
            self.pool.as_str(),
            self.strategy.as_str(),
            self.pool_size,
            self.nodes,
            self.max_len,
            self.complete
        )?;
        for w in &self.warnings {
            write!(f, "; warning: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PoolEntry {
    pub class: ClassVector,
    pub degree: usize,
}

/// Candidate factors for `pool`, plus one warning per degree whose
/// combinations exceeded `budget` and fell back to the bare kernel basis.
pub fn build_pool(
    pr: &ProductRing,
    pool: Pool,
    max_degree: usize,
    budget: u64,
) -> Result<(Vec<PoolEntry>, Vec<String>)> {
    let degrees: Vec<usize> = match pool {
        Pool::StandardDegreeOne => vec![1],
        Pool::FullKernel => (1..=max_degree.min(pr.top_degree())).collect(),
    };
    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    for d in degrees {
        if d > pr.top_degree() {
            continue;
        }
        let basis = kernel_basis(pr, d)?.vectors;
        let count = if basis.len() >= 64 { u64::MAX } else { (1u64 << basis.len()) - 1 };
        if count > budget {
            warnings.push(format!(
                "degree {d}: {} kernel combinations exceed budget {budget}; using the {} basis vectors only",
                if basis.len() >= 64 { format!("2^{}-1", basis.len()) } else { count.to_string() },
                basis.len()
            ));
            entries.extend(basis.into_iter().map(|class| PoolEntry { class, degree: d }));
            continue;
        }
        for mask in 1..=count {
            let mut acc = pr.zero();
            for (i, v) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.add(v)?;
                }
            }
            entries.push(PoolEntry { class: acc, degree: d });
        }
    }
    Ok((entries, warnings))
}

struct Searcher<'a> {
    pr: &'a ProductRing,
    pool: &'a [PoolEntry],
    top: usize,
    max_len: usize,
    node_limit: u64,
    nodes: u64,
    stack: Vec<usize>,
    best_len: usize,
    best: Option<Vec<usize>>,
    ceiling: usize,
    exhausted: bool,
}

impl Searcher<'_> {
    fn visit(&mut self, start: usize, product: &ClassVector, degree: usize) {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.exhausted = true;
            return;
        }
        let len = self.stack.len();
        if len > self.best_len {
            self.best_len = len;
            self.best = Some(self.stack.clone());
        }
        if len == self.max_len || self.best_len >= self.ceiling {
            return;
        }
        for i in start..self.pool.len() {
            let d = self.pool[i].degree;
            if degree + d > self.top {
                break;
            }
            // pool is sorted by degree, so later entries only tighten this bound
            let reachable = len + (self.max_len - len).min((self.top - degree) / d);
            if reachable <= self.best_len {
                break;
            }
            let next = self.pr.mul(product, &self.pool[i].class).expect("pool lives in the ring");
            if next.is_zero() {
                continue;
            }
            self.stack.push(i);
            self.visit(i, &next, degree + d);
            self.stack.pop();
            if self.exhausted || self.best_len >= self.ceiling {
                return;
            }
        }
    }
}

fn greedy(pr: &ProductRing, pool: &[PoolEntry], max_len: usize) -> (Vec<usize>, u64) {
    let mut product = pr.one();
    let mut picked = Vec::new();
    let mut nodes = 0;
    while picked.len() < max_len {
        let step = pool.iter().enumerate().find_map(|(i, e)| {
            nodes += 1;
            let next = pr.mul(&product, &e.class).expect("pool lives in the ring");
            (!next.is_zero()).then_some((i, next))
        });
        let Some((i, next)) = step else { break };
        picked.push(i);
        product = next;
    }
    picked.sort_unstable();
    (picked, nodes)
}

/// Looks for the longest nonzero product of zero divisors from `config.pool`.
pub fn zcl_search(ring: &Arc<ProductRing>, config: &SearchConfig) -> Result<Certificate> {
    let pr = ring.as_ref();
    let top = pr.top_degree();
    let max_len = config.max_len.unwrap_or(top);
    let (pool, mut warnings) = build_pool(pr, config.pool, max_len.min(top), config.budget)?;
    let mut strategy = config.strategy;
    if strategy == Strategy::Exhaustive && !warnings.is_empty() {
        warnings.push("pool truncated to kernel bases; exhaustive search degraded to dfs".into());
        strategy = Strategy::Dfs;
    }

    let seed_len = match &config.seed {
        Some(seed) if !expand(pr, seed)?.is_zero() => seed.total_length(),
        _ => 0,
    };
    let min_degree = pool.first().map_or(1, |e| e.degree);
    let ceiling = max_len.min(top / min_degree.max(1));

    let (found, nodes, complete) = match strategy {
        Strategy::Greedy => {
            let (picked, nodes) = greedy(pr, &pool, max_len);
            (Some(picked), nodes, false)
        }
        Strategy::Dfs | Strategy::Exhaustive => {
            let mut s = Searcher {
                pr,
                pool: &pool,
                top,
                max_len,
                node_limit: config.node_limit,
                nodes: 0,
                stack: Vec::new(),
                best_len: seed_len,
                best: None,
                ceiling,
                exhausted: false,
            };
            s.visit(0, &pr.one(), 0);
            if s.exhausted {
                if strategy == Strategy::Exhaustive {
                    return Err(Error::BudgetExceeded(format!(
                        "exhaustive search visited more than {} nodes",
                        config.node_limit
                    )));
                }
                warnings.push(format!("node limit {} reached; result is a lower bound", config.node_limit));
            }
            (s.best, s.nodes, !s.exhausted && warnings.is_empty())
        }
    };

    let factors = match found {
        Some(picked) if picked.len() > seed_len => FactorList::from_sequence(picked.iter().map(|&i| &pool[i].class)),
        _ => config.seed.clone().filter(|_| seed_len > 0).unwrap_or_default(),
    };
    let mut cert = Certificate::from_factors(ring, factors)?;
    cert.search = Some(SearchReport {
        pool: config.pool,
        requested: config.strategy,
        strategy,
        max_len,
        pool_size: pool.len(),
        nodes,
        complete: complete || (cert.zcl_lower >= ceiling && cert.failure.is_none()),
        warnings,
    });
    Ok(cert)
}
