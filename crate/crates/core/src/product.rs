//! Tensor powers `H*(X)^{⊗s}`, the cohomology of the `s`-fold cartesian product.
//!
//! A basis element is an `s`-tuple of factor basis indices, encoded as a
//! mixed-radix integer with slot 1 most significant. Numeric order of codes is
//! therefore lexicographic order of tuples. Multiplication works slot by slot
//! and never materialises a table of the product ring.

use std::sync::{Arc, OnceLock};

use crate::class::{reduce_mod2, ClassVector, RingId};
use crate::error::{Error, Result};
use crate::ring::RingTable;

#[derive(Debug)]
pub struct ProductRing {
    id: RingId,
    factor: Arc<RingTable>,
    s: usize,
    radix: u64,
    size: u64,
    by_degree: Vec<OnceLock<Vec<u64>>>,
}

impl ProductRing {
    pub fn power(factor: impl Into<Arc<RingTable>>, s: usize) -> Result<ProductRing> {
        let factor = factor.into();
        if s < 2 {
            return Err(Error::InvalidParameter(format!("tensor power needs s >= 2, got {s}")));
        }
        let radix = factor.len() as u64;
        let size = u32::try_from(s)
            .ok()
            .and_then(|e| radix.checked_pow(e))
            .ok_or_else(|| Error::InvalidParameter(format!("{radix}^{s} basis tuples do not fit in 64 bits")))?;
        let top = s * factor.top_degree();
        Ok(ProductRing {
            id: RingId::fresh(),
            factor,
            s,
            radix,
            size,
            by_degree: (0..=top).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn factor(&self) -> &RingTable {
        &self.factor
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Number of basis tuples, `(dim factor)^s`.
    pub fn len(&self) -> u64 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn top_degree(&self) -> usize {
        self.s * self.factor.top_degree()
    }

    pub fn encode(&self, slots: &[usize]) -> Result<u64> {
        if slots.len() != self.s {
            return Err(Error::InvalidParameter(format!("expected {} slots, got {}", self.s, slots.len())));
        }
        let mut code = 0u64;
        for &a in slots {
            if a as u64 >= self.radix {
                return Err(Error::IndexOutOfRange { index: a as u64, len: self.radix });
            }
            code = code * self.radix + a as u64;
        }
        Ok(code)
    }

    fn encode_unchecked(&self, slots: &[usize]) -> u64 {
        slots.iter().fold(0u64, |code, &a| code * self.radix + a as u64)
    }

    pub fn decode(&self, code: u64) -> Vec<usize> {
        let mut slots = vec![0; self.s];
        self.decode_into(code, &mut slots);
        slots
    }

    fn decode_into(&self, mut code: u64, slots: &mut [usize]) {
        for slot in slots.iter_mut().rev() {
            *slot = (code % self.radix) as usize;
            code /= self.radix;
        }
    }

    pub fn tuple_degree(&self, code: u64) -> usize {
        self.decode(code).iter().map(|&a| self.factor.degree(a)).sum()
    }

    /// Tuple label, slots joined by `|`, e.g. `x1|1|t`.
    pub fn label(&self, code: u64) -> String {
        self.decode(code).iter().map(|&a| self.factor.label(a)).collect::<Vec<_>>().join("|")
    }

    /// Basis tuples of degree `d`, ascending. Computed once per degree.
    pub fn degree_basis(&self, d: usize) -> Result<&[u64]> {
        let cell = self.by_degree.get(d).ok_or(Error::DegreeOutOfRange { degree: d, max: self.top_degree() })?;
        Ok(cell.get_or_init(|| {
            let mut out = Vec::new();
            let mut slots = vec![0usize; self.s];
            self.enumerate(0, d, &mut slots, &mut out);
            out
        }))
    }

    fn enumerate(&self, slot: usize, remaining: usize, slots: &mut [usize], out: &mut Vec<u64>) {
        if slot == self.s {
            if remaining == 0 {
                out.push(self.encode_unchecked(slots));
            }
            return;
        }
        let later = (self.s - slot - 1) * self.factor.top_degree();
        // factor indices in ascending order keep the output sorted
        for a in 0..self.factor.len() {
            let deg = self.factor.degree(a);
            if deg <= remaining && remaining - deg <= later {
                slots[slot] = a;
                self.enumerate(slot + 1, remaining - deg, slots, out);
            }
        }
    }

    /// Graded dimensions: the `s`-fold convolution power of the factor's.
    pub fn poincare(&self) -> Vec<usize> {
        let base = self.factor.poincare();
        let mut acc = vec![1usize];
        for _ in 0..self.s {
            let mut next = vec![0usize; acc.len() + base.len() - 1];
            for (i, &a) in acc.iter().enumerate() {
                for (j, &b) in base.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        acc
    }

    pub fn one(&self) -> ClassVector {
        ClassVector::basis(self.id, 0)
    }

    pub fn element(&self, code: u64) -> Result<ClassVector> {
        if code >= self.size {
            return Err(Error::IndexOutOfRange { index: code, len: self.size });
        }
        Ok(ClassVector::basis(self.id, code))
    }

    pub fn zero(&self) -> ClassVector {
        ClassVector::zero(self.id)
    }

    pub fn class_from_codes(&self, codes: impl IntoIterator<Item = u64>) -> Result<ClassVector> {
        let c = ClassVector::from_terms(self.id, codes);
        self.own(&c)?;
        Ok(c)
    }

    pub(crate) fn own(&self, c: &ClassVector) -> Result<()> {
        if c.ring() != self.id {
            return Err(Error::RingMismatch);
        }
        match c.terms().last() {
            Some(&last) if last >= self.size => Err(Error::IndexOutOfRange { index: last, len: self.size }),
            _ => Ok(()),
        }
    }

    /// Pullback of a factor class along the projection onto slot `j` (1-based).
    pub fn inject(&self, j: usize, c: &ClassVector) -> Result<ClassVector> {
        if j == 0 || j > self.s {
            return Err(Error::SlotOutOfRange { slot: j, s: self.s });
        }
        if c.ring() != self.factor.id() {
            return Err(Error::RingMismatch);
        }
        let shift = self.radix.pow((self.s - j) as u32);
        let terms = c.terms().iter().map(|&e| e * shift).collect();
        Ok(ClassVector::from_sorted(self.id, terms))
    }

    /// `x_{u,j}` in family notation: `x_u^k` pulled back from slot `j`.
    pub fn generator(&self, u: usize, k: usize, j: usize) -> Result<ClassVector> {
        let e = self.factor.generator_power(u, k)?;
        self.inject(j, &self.factor.element(e)?)
    }

    /// The tuple `(t, ..., t)`, fundamental dual of the product.
    pub fn top_class(&self) -> Result<ClassVector> {
        let t = self.factor.duality_top()?;
        Ok(ClassVector::basis(self.id, self.encode_unchecked(&vec![t; self.s])))
    }

    pub fn mul_basis(&self, a: u64, b: u64) -> Result<ClassVector> {
        let p = self.element(a)?;
        let q = self.element(b)?;
        self.mul(&p, &q)
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

    fn mul_terms(&self, p: &[u64], q: &[u64]) -> Vec<u64> {
        let s = self.s;
        let mut qa = vec![0usize; q.len() * s];
        for (i, &code) in q.iter().enumerate() {
            self.decode_into(code, &mut qa[i * s..(i + 1) * s]);
        }
        let mut pa = vec![0usize; s];
        let mut out = Vec::new();
        let mut per_slot: Vec<&[u64]> = Vec::with_capacity(s);
        for &a in p {
            self.decode_into(a, &mut pa);
            'pairs: for qb in qa.chunks_exact(s) {
                per_slot.clear();
                for k in 0..s {
                    let prod = self.factor.table_entry(pa[k], qb[k]);
                    if prod.is_empty() {
                        continue 'pairs;
                    }
                    per_slot.push(prod);
                }
                self.distribute(&per_slot, &mut out);
            }
        }
        reduce_mod2(&mut out);
        out
    }

    /// Pushes every code of the tensor product of the per-slot term lists.
    fn distribute(&self, per_slot: &[&[u64]], out: &mut Vec<u64>) {
        if per_slot.iter().all(|t| t.len() == 1) {
            out.push(per_slot.iter().fold(0u64, |code, t| code * self.radix + t[0]));
            return;
        }
        let mut partial = vec![0u64];
        for terms in per_slot {
            partial = partial.iter().flat_map(|&c| terms.iter().map(move |&t| c * self.radix + t)).collect();
        }
        out.extend(partial);
    }

    /// `Some(d)` for a nonzero homogeneous class of degree `d`, `None` for zero.
    pub fn homogeneous_degree(&self, c: &ClassVector) -> Result<Option<usize>> {
        self.own(c)?;
        let mut degrees = c.terms().iter().map(|&t| self.tuple_degree(t));
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Parses `x1|1|t + x2@3`: full tuples of labels, or `label@j` for a
    /// factor basis element pulled back from slot `j`. `0` is the zero class.
    pub fn parse_class(&self, text: &str) -> Result<ClassVector> {
        let text = text.trim();
        if text == "0" {
            return Ok(self.zero());
        }
        let mut codes = Vec::new();
        for term in text.split('+').map(str::trim) {
            if let Some((label, slot)) = term.split_once('@') {
                let j: usize =
                    slot.parse().map_err(|_| Error::InvalidParameter(format!("invalid slot in '{term}'")))?;
                let e = self.factor.element(self.factor.index_of(label)?)?;
                codes.extend_from_slice(self.inject(j, &e)?.terms());
            } else {
                let slots = term.split('|').map(|l| self.factor.index_of(l.trim())).collect::<Result<Vec<_>>>()?;
                codes.push(self.encode(&slots)?);
            }
        }
        Ok(ClassVector::from_terms(self.id, codes))
    }

    /// Labels of the terms, sorted as strings.
    pub fn term_labels(&self, c: &ClassVector) -> Vec<String> {
        let mut labels: Vec<String> = c.terms().iter().map(|&t| self.label(t)).collect();
        labels.sort();
        labels
    }

    pub fn display_class(&self, c: &ClassVector) -> String {
        if c.is_zero() {
            "0".into()
        } else {
            c.terms().iter().map(|&t| self.label(t)).collect::<Vec<_>>().join(" + ")
        }
    }
}
