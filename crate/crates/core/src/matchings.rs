//! Perfect matchings of [2n] and their Ferrers-diagram fillings: crossings
//! and nestings specialize the northeast and southeast chain counts, and
//! the endpoint classes carry a one-variable product formula through their
//! h-vector.

use crate::error::{Error, Result};
use crate::filling::{Filling, RowSubset};
use crate::shape::{MoonPolyomino, RowInterval};
use std::sync::Arc;

/// A perfect matching of `[2n]`: arcs `(l, r)` with `l < r`, stored sorted
/// by left endpoint, whose endpoints partition `1..=2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    arcs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        let n = arcs.len();
        let mut seen = vec![false; 2 * n];
        for &(l, r) in &arcs {
            if l >= r {
                return Err(Error::InvalidEndpointSets(format!(
                    "arc ({l}, {r}) has its left endpoint on the right"
                )));
            }
            for v in [l, r] {
                if v < 1 || v > 2 * n {
                    return Err(Error::InvalidEndpointSets(format!(
                        "endpoint {v} outside 1..={}",
                        2 * n
                    )));
                }
                if seen[v - 1] {
                    return Err(Error::InvalidEndpointSets(format!("endpoint {v} repeated")));
                }
                seen[v - 1] = true;
            }
        }
        arcs.sort_unstable();
        Ok(Matching { arcs })
    }

    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn left_endpoints(&self) -> Vec<usize> {
        self.arcs.iter().map(|&(l, _)| l).collect()
    }

    pub fn right_endpoints(&self) -> Vec<usize> {
        let mut rs: Vec<usize> = self.arcs.iter().map(|&(_, r)| r).collect();
        rs.sort_unstable();
        rs
    }

    /// Arc pairs `(l1, r1), (l2, r2)` with `l1 < l2 < r1 < r2`.
    pub fn crossings(&self) -> usize {
        self.count_pairs(|(_, r1), (l2, r2)| l2 < r1 && r1 < r2)
    }

    /// Arc pairs with `l1 < l2 < r2 < r1`.
    pub fn nestings(&self) -> usize {
        self.count_pairs(|(_, r1), (l2, r2)| l2 < r2 && r2 < r1)
    }

    fn count_pairs(&self, pred: impl Fn((usize, usize), (usize, usize)) -> bool) -> usize {
        let mut count = 0;
        for (i, &a) in self.arcs.iter().enumerate() {
            for &b in &self.arcs[i + 1..] {
                if pred(a, b) {
                    count += 1;
                }
            }
        }
        count
    }

    /// The mixed crossing-nesting statistic: crossings whose first left
    /// endpoint lies in `s`, plus nestings whose first left endpoint does
    /// not. `s` must consist of left endpoints.
    pub fn alpha(&self, s: &[usize]) -> Result<usize> {
        let lefts = self.left_endpoints();
        for &v in s {
            if !lefts.contains(&v) {
                return Err(Error::InvalidEndpointSets(format!(
                    "{v} is not a left endpoint of the matching"
                )));
            }
        }
        let inside = |v: usize| s.contains(&v);
        let mut count = 0;
        for (i, &(l1, r1)) in self.arcs.iter().enumerate() {
            for &(l2, r2) in &self.arcs[i + 1..] {
                let crossing = l2 < r1 && r1 < r2;
                let nesting = r2 < r1;
                if (crossing && inside(l1)) || (nesting && !inside(l1)) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// The Ferrers-diagram filling: rows indexed by the left endpoints top
    /// to bottom, columns by the right endpoints in decreasing order, a cell
    /// where the left endpoint precedes the right one, a 1 on every arc.
    pub fn to_filling(&self) -> Filling {
        let n = self.n();
        let rights = self.right_endpoints();
        let row_len = |l: usize| rights.iter().filter(|&&r| r > l).count();
        let rows = self
            .arcs
            .iter()
            .map(|&(l, _)| RowInterval::new(1, row_len(l)))
            .collect();
        let shape = Arc::new(MoonPolyomino::new(rows).expect("Ferrers diagrams are moon polyominoes"));
        let col_of = |r: usize| {
            let k = rights.iter().position(|&x| x == r).unwrap() + 1;
            n + 1 - k
        };
        let ones = self.arcs.iter().map(|&(_, r)| Some(col_of(r))).collect();
        Filling::from_rows(shape, ones).expect("arcs land inside the diagram")
    }

    /// The row subset naming the same left endpoints in the Ferrers filling.
    pub fn rows_of_endpoints(&self, s: &[usize]) -> Result<RowSubset> {
        let lefts = self.left_endpoints();
        let rows: Vec<usize> = s
            .iter()
            .map(|&v| {
                lefts
                    .iter()
                    .position(|&l| l == v)
                    .map(|i| i + 1)
                    .ok_or_else(|| {
                        Error::InvalidEndpointSets(format!("{v} is not a left endpoint"))
                    })
            })
            .collect::<Result<_>>()?;
        RowSubset::new(self.n(), &rows)
    }
}

fn check_class(a: &[usize], b: &[usize]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::InvalidEndpointSets(format!(
            "{} left endpoints against {} right endpoints",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    let mut role = vec![None; 2 * n];
    for (&v, is_left) in a.iter().map(|v| (v, true)).chain(b.iter().map(|v| (v, false))) {
        if v < 1 || v > 2 * n || role[v - 1].is_some() {
            return Err(Error::InvalidEndpointSets(format!(
                "endpoint sets do not partition 1..={}",
                2 * n
            )));
        }
        role[v - 1] = Some(is_left);
    }
    let mut balance = 0i64;
    for r in role {
        balance += if r.unwrap() { 1 } else { -1 };
        if balance < 0 {
            return Err(Error::InvalidEndpointSets(
                "a prefix holds more right endpoints than left endpoints".into(),
            ));
        }
    }
    Ok(n)
}

/// Every matching pairing the left endpoints `a` with the right endpoints
/// `b`, each left endpoint before its partner.
pub fn enumerate_matchings(a: &[usize], b: &[usize]) -> Result<Vec<Matching>> {
    check_class(a, b)?;
    let mut lefts = a.to_vec();
    lefts.sort_unstable();
    let mut rights = b.to_vec();
    rights.sort_unstable();
    let mut used = vec![false; rights.len()];
    let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(lefts.len());
    let mut out = Vec::new();
    fn go(
        lefts: &[usize],
        rights: &[usize],
        used: &mut [bool],
        arcs: &mut Vec<(usize, usize)>,
        out: &mut Vec<Matching>,
    ) {
        let i = arcs.len();
        if i == lefts.len() {
            out.push(Matching { arcs: arcs.clone() });
            return;
        }
        for k in 0..rights.len() {
            if !used[k] && rights[k] > lefts[i] {
                used[k] = true;
                arcs.push((lefts[i], rights[k]));
                go(lefts, rights, used, arcs, out);
                arcs.pop();
                used[k] = false;
            }
        }
    }
    go(&lefts, &rights, &mut used, &mut arcs, &mut out);
    Ok(out)
}

/// The per-column available-cell counts of an endpoint class: the i-th
/// smallest right endpoint contributes the cells of its column minus the
/// `i - 1` columns to its right.
pub fn class_h_vector(a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    check_class(a, b)?;
    let mut rights = b.to_vec();
    rights.sort_unstable();
    Ok(rights
        .iter()
        .enumerate()
        .map(|(i, &r)| a.iter().filter(|&&l| l < r).count() - i)
        .collect())
}

/// All valid endpoint classes on `[2n]`, i.e. the ways to interleave left
/// and right endpoints so that every prefix closes no more arcs than it
/// opens.
pub fn endpoint_classes(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut a = Vec::new();
    let mut b = Vec::new();
    fn go(
        v: usize,
        max: usize,
        a: &mut Vec<usize>,
        b: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if v > max {
            if a.len() == b.len() {
                out.push((a.clone(), b.clone()));
            }
            return;
        }
        if a.len() < max / 2 {
            a.push(v);
            go(v + 1, max, a, b, out);
            a.pop();
        }
        if b.len() < a.len() {
            b.push(v);
            go(v + 1, max, a, b, out);
            b.pop();
        }
    }
    go(1, 2 * n, &mut a, &mut b, &mut out);
    out
}

/// All perfect matchings of `[2n]`.
pub fn all_matchings(n: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    for (a, b) in endpoint_classes(n) {
        out.extend(enumerate_matchings(&a, &b).expect("classes are valid"));
    }
    out
}

/// Catalan numbers by the convolution recurrence.
pub fn catalan(n: usize) -> u64 {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for i in 1..=n {
        for k in 0..i {
            c[i] += c[k] * c[i - 1 - k];
        }
    }
    c[n]
}
