use crate::class::ClassVector;
use crate::error::{Error, Result};
use crate::product::ProductRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub class: ClassVector,
    pub multiplicity: usize,
}

/// An ordered product `c_1^{k_1} c_2^{k_2} ...` of candidate zero divisors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactorList {
    factors: Vec<Factor>,
}

impl FactorList {
    pub fn new() -> Self {
        FactorList::default()
    }

    pub fn push(&mut self, class: ClassVector, multiplicity: usize) -> Result<()> {
        if multiplicity == 0 {
            return Err(Error::InvalidParameter("factor multiplicity must be at least 1".into()));
        }
        self.factors.push(Factor { class, multiplicity });
        Ok(())
    }

    pub fn with(mut self, class: ClassVector, multiplicity: usize) -> Result<Self> {
        self.push(class, multiplicity)?;
        Ok(self)
    }

    /// Number of zero divisors in the product, counted with multiplicity.
    pub fn total_length(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// One entry per factor occurrence, in product order.
    pub fn flatten(&self) -> Vec<&ClassVector> {
        self.factors.iter().flat_map(|f| std::iter::repeat_n(&f.class, f.multiplicity)).collect()
    }

    /// Groups a flat sequence, merging equal neighbours into multiplicities.
    pub fn from_sequence<'a>(seq: impl IntoIterator<Item = &'a ClassVector>) -> Self {
        let mut out = FactorList::new();
        for c in seq {
            match out.factors.last_mut() {
                Some(last) if last.class == *c => last.multiplicity += 1,
                _ => out.factors.push(Factor { class: c.clone(), multiplicity: 1 }),
            }
        }
        out
    }
}

/// Outcome of a left-to-right expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub value: ClassVector,
    /// First factor (0-based index into the list) whose multiplication gave
    /// zero, with the nonzero partial product just before it.
    pub vanished_at: Option<(usize, ClassVector)>,
}

/// Left-to-right product, reduced to normal form after every multiplication.
pub fn expand(pr: &ProductRing, factors: &FactorList) -> Result<ClassVector> {
    Ok(expand_traced(pr, factors)?.value)
}

pub fn expand_traced(pr: &ProductRing, factors: &FactorList) -> Result<Expansion> {
    let mut acc = pr.one();
    for (i, f) in factors.factors().iter().enumerate() {
        for _ in 0..f.multiplicity {
            let next = pr.mul(&acc, &f.class)?;
            if next.is_zero() {
                return Ok(Expansion { value: next, vanished_at: Some((i, acc)) });
            }
            acc = next;
        }
    }
    Ok(Expansion { value: acc, vanished_at: None })
}

/// The explicit zero-divisor product of length `sm` on `(g # RP^m)^s`:
///
/// `(x_{1,1}+x_{1,2})^m ... (x_{1,1}+x_{1,s})^m (x_{2,1}+x_{2,2})^{m-1} (x_{2,1}+x_{2,3})`.
pub fn witness_factors(pr: &ProductRing) -> Result<FactorList> {
    let family = pr
        .factor()
        .family()
        .ok_or_else(|| Error::InvalidParameter("witness needs a connected-sum family ring".into()))?;
    let (g, m, s) = (family.g, family.m, pr.s());
    if g < 2 || m < 2 || s < 3 {
        return Err(Error::InvalidParameter(format!(
            "witness requires g >= 2, m >= 2, s >= 3 (got g={g}, m={m}, s={s})"
        )));
    }
    let x = |u: usize, j: usize| pr.generator(u, 1, j);
    let diff = |u: usize, j: usize| -> Result<ClassVector> { pr.add(&x(u, 1)?, &x(u, j)?) };

    let mut list = FactorList::new();
    for j in 2..=s {
        list.push(diff(1, j)?, m)?;
    }
    list.push(diff(2, 2)?, m - 1)?;
    list.push(diff(2, 3)?, 1)?;
    Ok(list)
}
