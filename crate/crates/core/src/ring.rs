//! Finite graded GF(2) algebras given by a full multiplication table.

use std::collections::HashMap;
use std::fmt;

use crate::class::{reduce_mod2, ClassVector, RingId};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub index: usize,
    pub degree: usize,
    pub label: String,
}

/// Parameters of the iterated connected sum of `g` copies of `RP^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    pub g: usize,
    pub m: usize,
}

/// A graded-commutative GF(2) algebra with a distinguished basis.
///
/// Index 0 is the unit and the only element of degree 0. Every basis product
/// is stored in normal form, so class arithmetic never needs a rewriting pass.
#[derive(Debug, Clone)]
pub struct RingTable {
    id: RingId,
    basis: Vec<BasisElement>,
    top_degree: usize,
    table: Vec<Vec<u64>>,
    family: Option<Family>,
    by_label: HashMap<String, usize>,
}

impl PartialEq for RingTable {
    /// Structural equality: same labels, degrees and products in the same order.
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.table == other.table
    }
}

impl Eq for RingTable {}

impl RingTable {
    /// Cohomology of the `g`-fold connected sum of `RP^m`.
    ///
    /// Basis: `1`, then `x_u^k` ordered by `(k, u)` for `1 <= k <= m-1`, then `t`.
    pub fn connected_sum_family(g: usize, m: usize) -> Result<RingTable> {
        if g == 0 {
            return Err(Error::InvalidParameter("g must be at least 1".into()));
        }
        if m < 2 {
            return Err(Error::InvalidParameter("m must be at least 2".into()));
        }
        let top = 1 + g * (m - 1);
        let n = top + 1;
        let index = |u: usize, k: usize| 1 + (k - 1) * g + (u - 1);

        let mut basis = Vec::with_capacity(n);
        basis.push(BasisElement { index: 0, degree: 0, label: "1".into() });
        for k in 1..m {
            for u in 1..=g {
                let label = if k == 1 { format!("x{u}") } else { format!("x{u}^{k}") };
                basis.push(BasisElement { index: basis.len(), degree: k, label });
            }
        }
        basis.push(BasisElement { index: top, degree: m, label: "t".into() });

        // (generator, exponent) of each basis element; the top class counts as exponent m.
        let shape = |i: usize| -> Option<(usize, usize)> {
            if i == 0 || i == top {
                None
            } else {
                Some(((i - 1) % g + 1, (i - 1) / g + 1))
            }
        };

        let mut table = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<u64> = if a == 0 {
                    vec![b as u64]
                } else if b == 0 {
                    vec![a as u64]
                } else {
                    match (shape(a), shape(b)) {
                        (Some((u, j)), Some((v, k))) if u == v => match (j + k).cmp(&m) {
                            std::cmp::Ordering::Less => vec![index(u, j + k) as u64],
                            std::cmp::Ordering::Equal => vec![top as u64],
                            std::cmp::Ordering::Greater => vec![],
                        },
                        _ => vec![],
                    }
                };
                table[a * n + b] = prod;
            }
        }
        RingTable::from_parts(basis, table, Some(Family { g, m }))
    }

    /// Validates and assembles a ring from a basis and a dense product table
    /// (`table[a * n + b]` holds the sorted terms of `a * b`).
    pub(crate) fn from_parts(
        basis: Vec<BasisElement>,
        table: Vec<Vec<u64>>,
        family: Option<Family>,
    ) -> Result<RingTable> {
        let n = basis.len();
        assert_eq!(table.len(), n * n);
        if n == 0 || basis[0].degree != 0 || basis[0].label != "1" {
            return Err(Error::InvalidParameter("basis must start with the unit '1'".into()));
        }
        let mut by_label = HashMap::with_capacity(n);
        for (i, e) in basis.iter().enumerate() {
            debug_assert_eq!(e.index, i);
            if i > 0 && e.degree == 0 {
                return Err(Error::DegreeInconsistency(format!("'{}' has degree 0; only the unit may", e.label)));
            }
            if by_label.insert(e.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel { label: e.label.clone() });
            }
        }
        let top_degree = basis.iter().map(|e| e.degree).max().unwrap_or(0);
        let ring = RingTable { id: RingId::fresh(), basis, top_degree, table, family, by_label };
        ring.check_laws()?;
        Ok(ring)
    }

    /// Unit law, commutativity, degree homogeneity and associativity on every
    /// basis pair and triple.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if self.table[a] != [a as u64] || self.table[a * n] != [a as u64] {
                return Err(Error::InvalidParameter(format!("unit law fails for '{}'", self.basis[a].label)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let prod = &self.table[a * n + b];
                if *prod != self.table[b * n + a] {
                    return Err(Error::ConflictingProduct {
                        a: self.basis[a].label.clone(),
                        b: self.basis[b].label.clone(),
                    });
                }
                let want = self.basis[a].degree + self.basis[b].degree;
                if let Some(&bad) = prod.iter().find(|&&c| self.basis[c as usize].degree != want) {
                    return Err(Error::DegreeInconsistency(format!(
                        "{} * {} = {} but degrees {} + {} != {}",
                        self.basis[a].label,
                        self.basis[b].label,
                        self.basis[bad as usize].label,
                        self.basis[a].degree,
                        self.basis[b].degree,
                        self.basis[bad as usize].degree
                    )));
                }
            }
        }
        for a in 1..n {
            for b in 1..n {
                let ab = &self.table[a * n + b];
                for c in 1..n {
                    let left = self.mul_terms(ab, &[c as u64]);
                    let right = self.mul_terms(&[a as u64], &self.table[b * n + c]);
                    if left != right {
                        return Err(Error::NotAssociative {
                            a: self.basis[a].label.clone(),
                            b: self.basis[b].label.clone(),
                            c: self.basis[c].label.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, index: usize) -> usize {
        self.basis[index].degree
    }

    pub fn label(&self, index: usize) -> &str {
        &self.basis[index].label
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.by_label.get(label).copied().ok_or_else(|| Error::UnknownLabel { label: label.to_string() })
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// Indices of the basis elements of degree `d`.
    pub fn component(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.basis[i].degree == d).collect()
    }

    /// Coefficients of the Poincaré polynomial, constant term first.
    pub fn poincare(&self) -> Vec<usize> {
        let mut dims = vec![0; self.top_degree + 1];
        for e in &self.basis {
            dims[e.degree] += 1;
        }
        dims
    }

    /// Basis index of `x_u^k` in a family ring (`k = m` gives the top class).
    pub fn generator_power(&self, u: usize, k: usize) -> Result<usize> {
        let Family { g, m } =
            self.family.ok_or_else(|| Error::InvalidParameter("ring is not a connected-sum family ring".into()))?;
        if u == 0 || u > g || k == 0 || k > m {
            return Err(Error::InvalidParameter(format!("x{u}^{k} does not exist for g={g}, m={m}")));
        }
        Ok(if k == m { self.len() - 1 } else { 1 + (k - 1) * g + (u - 1) })
    }

    pub(crate) fn table_entry(&self, a: usize, b: usize) -> &[u64] {
        &self.table[a * self.len() + b]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i as u64, len: self.len() as u64 })
        }
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> Result<ClassVector> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(ClassVector::from_sorted(self.id, self.table_entry(a, b).to_vec()))
    }

    pub fn one(&self) -> ClassVector {
        ClassVector::basis(self.id, 0)
    }

    pub fn element(&self, index: usize) -> Result<ClassVector> {
        self.check_index(index)?;
        Ok(ClassVector::basis(self.id, index as u64))
    }

    /// Class from basis labels, e.g. `["x1", "x2"]` for `x1 + x2`.
    pub fn class(&self, labels: &[&str]) -> Result<ClassVector> {
        let terms = labels.iter().map(|l| self.index_of(l).map(|i| i as u64)).collect::<Result<Vec<_>>>()?;
        Ok(ClassVector::from_terms(self.id, terms))
    }

    pub fn top_class(&self) -> Result<ClassVector> {
        let top = self.duality_top()?;
        Ok(ClassVector::basis(self.id, top as u64))
    }

    fn own(&self, c: &ClassVector) -> Result<()> {
        if c.ring() != self.id {
            return Err(Error::RingMismatch);
        }
        if let Some(&bad) = c.terms().iter().find(|&&t| t >= self.len() as u64) {
            return Err(Error::IndexOutOfRange { index: bad, len: self.len() as u64 });
        }
        Ok(())
    }

    pub fn add(&self, p: &ClassVector, q: &ClassVector) -> Result<ClassVector> {
        self.own(p)?;
        self.own(q)?;
        p.add(q)
    }

    pub fn mul(&self, p: &ClassVector, q: &ClassVector) -> Result<ClassVector> {
        self.own(p)?;
        self.own(q)?;
        Ok(ClassVector::from_sorted(self.id, self.mul_terms(p.terms(), q.terms())))
    }

    pub fn pow(&self, p: &ClassVector, k: usize) -> Result<ClassVector> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, p)?;
        }
        Ok(acc)
    }

    pub(crate) fn mul_terms(&self, p: &[u64], q: &[u64]) -> Vec<u64> {
        let n = self.len();
        let mut out = Vec::new();
        for &a in p {
            for &b in q {
                out.extend_from_slice(&self.table[a as usize * n + b as usize]);
            }
        }
        reduce_mod2(&mut out);
        out
    }

    /// `Some(d)` for a nonzero homogeneous class of degree `d`, `None` for zero.
    pub fn homogeneous_degree(&self, c: &ClassVector) -> Result<Option<usize>> {
        self.own(c)?;
        let mut degrees = c.terms().iter().map(|&t| self.basis[t as usize].degree);
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Checks mod-2 Poincaré duality and returns the index of the top class.
    ///
    /// The top component must be one-dimensional and every pairing
    /// `H^k x H^(n-k) -> H^n` must be nondegenerate.
    pub fn duality_top(&self) -> Result<usize> {
        let n = self.top_degree;
        let top = self.component(n);
        if top.len() != 1 {
            return Err(Error::NotPoincareDuality(format!("top component H^{n} has dimension {}", top.len())));
        }
        let top = top[0];
        for k in 0..=n {
            let lower = self.component(k);
            let upper = self.component(n - k);
            if lower.len() != upper.len() {
                return Err(Error::NotPoincareDuality(format!(
                    "dim H^{k} = {} but dim H^{} = {}",
                    lower.len(),
                    n - k,
                    upper.len()
                )));
            }
            let rows: Vec<Vec<usize>> = lower
                .iter()
                .map(|&a| {
                    upper
                        .iter()
                        .enumerate()
                        .filter(|&(_, &b)| self.table_entry(a, b).contains(&(top as u64)))
                        .map(|(j, _)| j)
                        .collect()
                })
                .collect();
            if BitMatrix::from_rows(upper.len(), &rows).rank() != lower.len() {
                return Err(Error::NotPoincareDuality(format!("pairing H^{k} x H^{} -> H^{n} is degenerate", n - k)));
            }
        }
        Ok(top)
    }

    /// Same ring with the basis reordered: new index `i` is old index `order[i]`.
    pub(crate) fn reordered(&self, order: &[usize], labels: Vec<String>, family: Option<Family>) -> Result<RingTable> {
        let n = self.len();
        let mut inverse = vec![0u64; n];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new as u64;
        }
        let basis = order
            .iter()
            .zip(labels)
            .enumerate()
            .map(|(i, (&old, label))| BasisElement { index: i, degree: self.basis[old].degree, label })
            .collect();
        let mut table = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                let mut prod: Vec<u64> =
                    self.table_entry(order[a], order[b]).iter().map(|&t| inverse[t as usize]).collect();
                prod.sort_unstable();
                table[a * n + b] = prod;
            }
        }
        RingTable::from_parts(basis, table, family)
    }

    pub fn display_class(&self, c: &ClassVector) -> String {
        if c.is_zero() {
            return "0".into();
        }
        c.terms().iter().map(|&t| self.label(t as usize)).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for RingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring with {} basis elements, top degree {}", self.len(), self.top_degree)
    }
}

/// Renders Poincaré coefficients as `1 + 2q + q^2`.
pub fn format_poincare(dims: &[usize]) -> String {
    let mut parts = Vec::new();
    for (k, &d) in dims.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let coeff = if d == 1 && k > 0 { String::new() } else { d.to_string() };
        parts.push(match k {
            0 => coeff,
            1 => format!("{coeff}q"),
            _ => format!("{coeff}q^{k}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
