//! Brute-force model of `(g # RP^m)^{⊗s}` straight from the defining relations.
//!
//! A monomial is an exponent matrix (slot × generator). Products add exponents;
//! the normal form of a slot is read off the relations `x_u x_v = 0`,
//! `x_u^{m+1} = 0` and `x_u^m = x_v^m = t`. Nothing here touches the
//! multiplication tables of the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    One,
    X(usize, usize),
    Top,
}

#[derive(Debug, Clone, Copy)]
pub struct Model {
    pub g: usize,
    pub m: usize,
    pub s: usize,
}

pub type Term = Vec<Slot>;
pub type OClass = BTreeSet<Term>;

impl Model {
    pub fn new(g: usize, m: usize, s: usize) -> Self {
        Model { g, m, s }
    }

    /// Normal form of one slot's exponent vector, `None` when it vanishes.
    pub fn normalize(&self, exps: &[usize]) -> Option<Slot> {
        let nonzero: Vec<(usize, usize)> =
            exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(u, &e)| (u + 1, e)).collect();
        match nonzero.as_slice() {
            [] => Some(Slot::One),
            [(u, e)] if *e < self.m => Some(Slot::X(*u, *e)),
            [(_, e)] if *e == self.m => Some(Slot::Top),
            _ => None,
        }
    }

    /// Any exponent representative of a slot normal form (`t` as `x_1^m`).
    pub fn exponents(&self, slot: Slot) -> Vec<usize> {
        let mut v = vec![0; self.g];
        match slot {
            Slot::One => {}
            Slot::X(u, e) => v[u - 1] = e,
            Slot::Top => v[0] = self.m,
        }
        v
    }

    pub fn slot_degree(&self, slot: Slot) -> usize {
        match slot {
            Slot::One => 0,
            Slot::X(_, e) => e,
            Slot::Top => self.m,
        }
    }

    pub fn mul_slot(&self, a: Slot, b: Slot) -> Option<Slot> {
        let ea = self.exponents(a);
        let eb = self.exponents(b);
        let sum: Vec<usize> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
        self.normalize(&sum)
    }

    pub fn mul_term(&self, a: &Term, b: &Term) -> Option<Term> {
        a.iter().zip(b).map(|(&x, &y)| self.mul_slot(x, y)).collect()
    }

    pub fn mul(&self, a: &OClass, b: &OClass) -> OClass {
        let mut out = OClass::new();
        for x in a {
            for y in b {
                if let Some(t) = self.mul_term(x, y) {
                    if !out.remove(&t) {
                        out.insert(t);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &OClass, b: &OClass) -> OClass {
        a.symmetric_difference(b).cloned().collect()
    }

    pub fn one(&self) -> OClass {
        OClass::from([vec![Slot::One; self.s]])
    }

    pub fn pow(&self, a: &OClass, k: usize) -> OClass {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `x_u^e` pulled back from slot `j` (1-based).
    pub fn gen(&self, u: usize, e: usize, j: usize) -> OClass {
        let mut t = vec![Slot::One; self.s];
        t[j - 1] = self
            .normalize(&{
                let mut v = vec![0; self.g];
                v[u - 1] = e;
                v
            })
            .expect("nonzero generator power");
        OClass::from([t])
    }

    pub fn top(&self) -> OClass {
        OClass::from([vec![Slot::Top; self.s]])
    }

    /// Image under the s-fold cup product, as a set of one-slot normal forms.
    pub fn cup(&self, a: &OClass) -> BTreeSet<Slot> {
        let mut out = BTreeSet::new();
        for term in a {
            let img = term.iter().try_fold(Slot::One, |acc, &x| self.mul_slot(acc, x));
            if let Some(x) = img {
                if !out.remove(&x) {
                    out.insert(x);
                }
            }
        }
        out
    }

    pub fn slot_label(slot: Slot) -> String {
        match slot {
            Slot::One => "1".into(),
            Slot::X(u, 1) => format!("x{u}"),
            Slot::X(u, e) => format!("x{u}^{e}"),
            Slot::Top => "t".into(),
        }
    }

    /// Sorted tuple labels, comparable with `ProductRing::term_labels`.
    pub fn labels(a: &OClass) -> Vec<String> {
        let mut v: Vec<String> =
            a.iter().map(|t| t.iter().map(|&x| Self::slot_label(x)).collect::<Vec<_>>().join("|")).collect();
        v.sort();
        v
    }

    /// Every distinct nonzero normal form of a single slot, found by
    /// enumerating exponent vectors of total degree up to `m + 1`.
    pub fn slot_basis(&self) -> BTreeSet<Slot> {
        let mut out = BTreeSet::new();
        let mut exps = vec![0usize; self.g];
        loop {
            if exps.iter().sum::<usize>() <= self.m + 1 {
                if let Some(x) = self.normalize(&exps) {
                    out.insert(x);
                }
            }
            let mut i = 0;
            loop {
                if i == self.g {
                    return out;
                }
                exps[i] += 1;
                if exps[i] <= self.m + 1 {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }
}
