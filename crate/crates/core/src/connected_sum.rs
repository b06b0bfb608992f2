//! Cohomology of a connected sum of two closed manifolds of the same dimension.
//!
//! `H*(M # N)` is `H*(M v N)` modulo the sum of the two top classes: the
//! positive-degree parts below the top are summed, mixed products vanish and
//! the two fundamental duals become one top class.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ring::{BasisElement, Family, RingTable};

/// Connected sum of two mod-2 Poincaré-duality rings of equal top degree.
///
/// Basis: unit, the middle of `left`, the middle of `right`, then the shared
/// top class. Labels from `right` that collide with `left` get primes
/// appended. When both inputs are family rings with the same `m` the result
/// is relabelled and reordered into the canonical family basis.
pub fn connected_sum(left: &RingTable, right: &RingTable) -> Result<RingTable> {
    let top_l = left.duality_top()?;
    let top_r = right.duality_top()?;
    if left.top_degree() != right.top_degree() {
        return Err(Error::TopDegreeMismatch { left: left.top_degree(), right: right.top_degree() });
    }
    if left.top_degree() == 0 {
        return Err(Error::InvalidParameter("connected sum of zero-dimensional rings".into()));
    }

    let mid_l: Vec<usize> = (1..left.len()).filter(|&i| i != top_l).collect();
    let mid_r: Vec<usize> = (1..right.len()).filter(|&i| i != top_r).collect();
    let n = 2 + mid_l.len() + mid_r.len();
    let top = n - 1;

    // new index of each old index; the unit and top are shared
    let mut map_l = vec![0u64; left.len()];
    let mut map_r = vec![0u64; right.len()];
    map_l[top_l] = top as u64;
    map_r[top_r] = top as u64;

    let mut basis = vec![BasisElement { index: 0, degree: 0, label: "1".into() }];
    let mut used: HashSet<String> = HashSet::from(["1".to_string()]);
    for &i in &mid_l {
        map_l[i] = basis.len() as u64;
        used.insert(left.label(i).to_string());
        basis.push(BasisElement { index: basis.len(), degree: left.degree(i), label: left.label(i).into() });
    }
    for &i in &mid_r {
        map_r[i] = basis.len() as u64;
        let mut label = right.label(i).to_string();
        while used.contains(&label) {
            label.push('\'');
        }
        used.insert(label.clone());
        basis.push(BasisElement { index: basis.len(), degree: right.degree(i), label });
    }
    let mut top_label = left.label(top_l).to_string();
    if right.label(top_r) != top_label {
        top_label = format!("{}={}", top_label, right.label(top_r));
    }
    while used.contains(&top_label) {
        top_label.push('\'');
    }
    basis.push(BasisElement { index: top, degree: left.top_degree(), label: top_label });

    let mut table = vec![Vec::new(); n * n];
    for a in 0..n {
        table[a] = vec![a as u64];
        table[a * n] = vec![a as u64];
    }
    for (ring, mid, map) in [(left, &mid_l, &map_l), (right, &mid_r, &map_r)] {
        for &a in mid.iter() {
            for &b in mid.iter() {
                let mut prod: Vec<u64> = ring.table_entry(a, b).iter().map(|&t| map[t as usize]).collect();
                prod.sort_unstable();
                table[map[a] as usize * n + map[b] as usize] = prod;
            }
        }
    }
    let summed = RingTable::from_parts(basis, table, None)?;

    match (left.family(), right.family()) {
        (Some(fl), Some(fr)) if fl.m == fr.m => canonical_family(&summed, fl, fr),
        _ => Ok(summed),
    }
}

/// Reorders the sum of two family rings so that `x_u` of `right` becomes
/// `x_(g_left + u)` and the basis follows the `(k, u)` order.
fn canonical_family(summed: &RingTable, left: Family, right: Family) -> Result<RingTable> {
    let g = left.g + right.g;
    let m = left.m;
    let mid = m - 1;
    // position of x_u^k inside the middle block of its summand, in (k, u) order
    let old_index = |u: usize, k: usize| -> usize {
        if u <= left.g {
            1 + (k - 1) * left.g + (u - 1)
        } else {
            1 + left.g * mid + (k - 1) * right.g + (u - left.g - 1)
        }
    };
    let mut order = vec![0];
    let mut labels = vec!["1".to_string()];
    for k in 1..m {
        for u in 1..=g {
            order.push(old_index(u, k));
            labels.push(if k == 1 { format!("x{u}") } else { format!("x{u}^{k}") });
        }
    }
    order.push(summed.len() - 1);
    labels.push("t".into());
    summed.reordered(&order, labels, Some(Family { g, m }))
}
