//! The `s`-fold cup-product map `H*(X)^{⊗s} -> H*(X)` and its kernel, the
//! `s`-th zero divisors.

use crate::class::{reduce_mod2, ClassVector};
use crate::error::Result;
use crate::gf2::BitMatrix;
use crate::product::ProductRing;

/// Degree-`d` component of the cup map. Row `i` is the image of tuple
/// `rows[i]`, written in the factor basis `cols`.
#[derive(Debug, Clone)]
pub struct CupMatrix {
    pub degree: usize,
    pub rows: Vec<u64>,
    pub cols: Vec<usize>,
    pub matrix: BitMatrix,
}

impl CupMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub degree: usize,
    pub rank: usize,
    pub vectors: Vec<ClassVector>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Factor-ring terms of `a_1 a_2 ... a_s` for the tuple `code`.
fn tuple_image(pr: &ProductRing, code: u64) -> Vec<u64> {
    let factor = pr.factor();
    let mut acc = vec![0u64];
    for a in pr.decode(code) {
        acc = factor.mul_terms(&acc, &[a as u64]);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Image of a class under the cup map, as a class of the factor ring.
pub fn cup_image(pr: &ProductRing, c: &ClassVector) -> Result<ClassVector> {
    pr.own(c)?;
    let mut terms = Vec::new();
    for &code in c.terms() {
        terms.extend(tuple_image(pr, code));
    }
    reduce_mod2(&mut terms);
    Ok(ClassVector::from_terms(pr.factor().id(), terms))
}

pub fn cup_map(pr: &ProductRing, d: usize) -> Result<CupMatrix> {
    let rows = pr.degree_basis(d)?.to_vec();
    let cols = if d <= pr.factor().top_degree() { pr.factor().component(d) } else { Vec::new() };
    let mut matrix = BitMatrix::zeros(rows.len(), cols.len());
    for (i, &code) in rows.iter().enumerate() {
        for t in tuple_image(pr, code) {
            let j = cols.binary_search(&(t as usize)).expect("cup product is homogeneous");
            matrix.flip(i, j);
        }
    }
    Ok(CupMatrix { degree: d, rows, cols, matrix })
}

/// Kernel of the degree-`d` cup map in reduced echelon form.
///
/// Eliminates the transpose (few rows, one column per tuple) with lowest
/// pivots first; each free tuple contributes one vector.
pub fn kernel_basis(pr: &ProductRing, d: usize) -> Result<KernelBasis> {
    let cm = cup_map(pr, d)?;
    let echelon = cm.matrix.transpose().into_rref();
    let vectors = echelon
        .kernel()
        .into_iter()
        .map(|support| pr.class_from_codes(support.into_iter().map(|i| cm.rows[i])))
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelBasis { degree: d, rank: echelon.rank(), vectors })
}

/// True when the homogeneous class `c` is killed by the cup map.
pub fn is_zero_divisor(pr: &ProductRing, c: &ClassVector) -> Result<bool> {
    pr.homogeneous_degree(c)?;
    Ok(cup_image(pr, c)?.is_zero())
}
