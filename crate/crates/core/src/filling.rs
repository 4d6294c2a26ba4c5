//! 01-fillings with at most one 1 per row: enumeration with prescribed
//! row/column sums, northeast/southeast chain counting, and the four mixed
//! statistics over a row or column bipartition.

use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::shape::{MoonPolyomino, Rectangle, SubShape};
use std::sync::Arc;

/// A 01-filling of a moon polyomino, stored as the column of the unique
/// 1-cell per row (when present). Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filling {
    shape: Arc<MoonPolyomino>,
    ones: Vec<Option<usize>>,
}

/// Orientation of a two-cell chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    Northeast,
    Southeast,
}

/// A chain: two 1-cells, one strictly above and strictly left or right of
/// the other, whose bounding rectangle lies inside the host shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chain {
    pub kind: ChainKind,
    /// The cell on the smaller row index.
    pub upper: (usize, usize),
    /// The cell on the larger row index.
    pub lower: (usize, usize),
}

impl Chain {
    pub fn left_col(&self) -> usize {
        self.upper.1.min(self.lower.1)
    }

    pub fn right_col(&self) -> usize {
        self.upper.1.max(self.lower.1)
    }
}

fn build_mask(limit: usize, what: &'static str, indices: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; limit];
    for &i in indices {
        if i < 1 || i > limit {
            return Err(Error::IndexOutOfRange { what, index: i, limit });
        }
        mask[i - 1] = true;
    }
    Ok(mask)
}

/// A set of row indices; duplicates are merged, out-of-range indices are a
/// hard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSubset {
    mask: Vec<bool>,
}

impl RowSubset {
    pub fn new(n: usize, indices: &[usize]) -> Result<Self> {
        Ok(RowSubset { mask: build_mask(n, "row subset element", indices)? })
    }

    pub fn empty(n: usize) -> Self {
        RowSubset { mask: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        RowSubset { mask: vec![true; n] }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i - 1]
    }

    pub fn complement(&self) -> Self {
        RowSubset { mask: self.mask.iter().map(|b| !b).collect() }
    }

    pub fn indices(&self) -> Vec<usize> {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1).collect()
    }

    /// All subsets of [n] in mask order; n is expected to be desk-scale.
    pub fn all(n: usize) -> impl Iterator<Item = RowSubset> {
        assert!(n < usize::BITS as usize);
        (0usize..1 << n).map(move |bits| RowSubset {
            mask: (0..n).map(|i| bits >> i & 1 == 1).collect(),
        })
    }
}

/// A set of column indices; same conventions as [`RowSubset`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColSubset {
    mask: Vec<bool>,
}

impl ColSubset {
    pub fn new(m: usize, indices: &[usize]) -> Result<Self> {
        Ok(ColSubset { mask: build_mask(m, "column subset element", indices)? })
    }

    pub fn empty(m: usize) -> Self {
        ColSubset { mask: vec![false; m] }
    }

    pub fn full(m: usize) -> Self {
        ColSubset { mask: vec![true; m] }
    }

    pub fn contains(&self, j: usize) -> bool {
        self.mask[j - 1]
    }

    pub fn complement(&self) -> Self {
        ColSubset { mask: self.mask.iter().map(|b| !b).collect() }
    }

    pub fn indices(&self) -> Vec<usize> {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1).collect()
    }

    pub fn all(m: usize) -> impl Iterator<Item = ColSubset> {
        assert!(m < usize::BITS as usize);
        (0usize..1 << m).map(move |bits| ColSubset {
            mask: (0..m).map(|i| bits >> i & 1 == 1).collect(),
        })
    }
}

/// Which mixed statistic anchors the chain: by its top, bottom, left, or
/// right 1-cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatKind {
    Top,
    Bottom,
    Left,
    Right,
}

impl Filling {
    pub fn new(shape: Arc<MoonPolyomino>, cells: &[(usize, usize)]) -> Result<Self> {
        let mut ones = vec![None; shape.n()];
        for &(row, col) in cells {
            if !shape.contains(row, col) {
                return Err(Error::CellOutsideShape { row, col });
            }
            if ones[row - 1].is_some() {
                return Err(Error::MultipleOnesInRow(row));
            }
            ones[row - 1] = Some(col);
        }
        Ok(Filling { shape, ones })
    }

    /// Builds from per-row column choices; every choice must lie in the row.
    pub fn from_rows(shape: Arc<MoonPolyomino>, ones: Vec<Option<usize>>) -> Result<Self> {
        if ones.len() != shape.n() {
            return Err(Error::LengthMismatch { what: "row choices", expected: shape.n(), got: ones.len() });
        }
        for (i, choice) in ones.iter().enumerate() {
            if let Some(col) = choice {
                if !shape.contains(i + 1, *col) {
                    return Err(Error::CellOutsideShape { row: i + 1, col: *col });
                }
            }
        }
        Ok(Filling { shape, ones })
    }

    pub fn empty(shape: Arc<MoonPolyomino>) -> Self {
        let n = shape.n();
        Filling { shape, ones: vec![None; n] }
    }

    pub fn shape(&self) -> &MoonPolyomino {
        &self.shape
    }

    pub fn shape_arc(&self) -> &Arc<MoonPolyomino> {
        &self.shape
    }

    /// Column of the 1-cell in `row`, if the row is nonempty.
    pub fn one_in_row(&self, row: usize) -> Option<usize> {
        self.ones[row - 1]
    }

    /// The 1-cells sorted by row.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.ones
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|col| (i + 1, col)))
            .collect()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.ones.iter().map(|c| usize::from(c.is_some())).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut s = vec![0usize; self.shape.m()];
        for c in self.ones.iter().flatten() {
            s[c - 1] += 1;
        }
        s
    }

    /// Every chain of the filling. Quadratic in the number of 1-cells, with
    /// an explicit bounding-rectangle containment test.
    pub fn chains(&self) -> Vec<Chain> {
        let cells = self.cells();
        let mut chains = Vec::new();
        for (a, &(r1, c1)) in cells.iter().enumerate() {
            for &(r2, c2) in &cells[a + 1..] {
                debug_assert!(r1 < r2, "cells are sorted by row and rows hold one 1");
                if c1 == c2 {
                    continue;
                }
                let rect = Rectangle {
                    top: r1,
                    bottom: r2,
                    left: c1.min(c2),
                    right: c1.max(c2),
                };
                if !self.shape.contains_rect(&rect) {
                    continue;
                }
                let kind = if c1 > c2 { ChainKind::Northeast } else { ChainKind::Southeast };
                chains.push(Chain { kind, upper: (r1, c1), lower: (r2, c2) });
            }
        }
        chains
    }

    pub fn ne_count(&self) -> usize {
        self.chains().iter().filter(|c| c.kind == ChainKind::Northeast).count()
    }

    pub fn se_count(&self) -> usize {
        self.chains().iter().filter(|c| c.kind == ChainKind::Southeast).count()
    }

    pub fn ne_se(&self) -> (usize, usize) {
        let chains = self.chains();
        let ne = chains.iter().filter(|c| c.kind == ChainKind::Northeast).count();
        (ne, chains.len() - ne)
    }

    /// The top-mixed statistic: northeast chains whose upper cell lies in a
    /// row of `s`, plus southeast chains whose upper cell lies outside.
    pub fn top_mixed(&self, s: &RowSubset) -> usize {
        self.chains()
            .iter()
            .filter(|c| match c.kind {
                ChainKind::Northeast => s.contains(c.upper.0),
                ChainKind::Southeast => !s.contains(c.upper.0),
            })
            .count()
    }

    /// The bottom-mixed statistic, anchored at the lower cell.
    pub fn bottom_mixed(&self, s: &RowSubset) -> usize {
        self.chains()
            .iter()
            .filter(|c| match c.kind {
                ChainKind::Northeast => s.contains(c.lower.0),
                ChainKind::Southeast => !s.contains(c.lower.0),
            })
            .count()
    }

    /// The left-mixed statistic, anchored at the left cell.
    pub fn left_mixed(&self, t: &ColSubset) -> usize {
        self.chains()
            .iter()
            .filter(|c| match c.kind {
                ChainKind::Northeast => t.contains(c.left_col()),
                ChainKind::Southeast => !t.contains(c.left_col()),
            })
            .count()
    }

    /// The right-mixed statistic, anchored at the right cell.
    pub fn right_mixed(&self, t: &ColSubset) -> usize {
        self.chains()
            .iter()
            .filter(|c| match c.kind {
                ChainKind::Northeast => t.contains(c.right_col()),
                ChainKind::Southeast => !t.contains(c.right_col()),
            })
            .count()
    }

    /// The chosen statistic and its complement-set companion.
    pub fn mixed_pair(&self, kind: StatKind, indices: &[usize]) -> Result<(usize, usize)> {
        match kind {
            StatKind::Top | StatKind::Bottom => {
                let s = RowSubset::new(self.shape.n(), indices)?;
                let sb = s.complement();
                Ok(match kind {
                    StatKind::Top => (self.top_mixed(&s), self.top_mixed(&sb)),
                    _ => (self.bottom_mixed(&s), self.bottom_mixed(&sb)),
                })
            }
            StatKind::Left | StatKind::Right => {
                let t = ColSubset::new(self.shape.m(), indices)?;
                let tb = t.complement();
                Ok(match kind {
                    StatKind::Left => (self.left_mixed(&t), self.left_mixed(&tb)),
                    _ => (self.right_mixed(&t), self.right_mixed(&tb)),
                })
            }
        }
    }

    /// Restriction to a sub-shape: keeps the 1-cells inside the band.
    pub fn restrict(&self, sub: &SubShape) -> Filling {
        let local = Arc::new(sub.shape.clone());
        let mut ones = vec![None; sub.shape.n()];
        for (li, slot) in ones.iter_mut().enumerate() {
            let host_row = li + 1 + sub.row_offset;
            if let Some(col) = self.ones[host_row - 1] {
                let iv = sub.shape.row(li + 1);
                let local_col = col.wrapping_sub(sub.col_offset);
                if (1..=sub.shape.m()).contains(&local_col) && iv.contains(local_col) {
                    *slot = Some(local_col);
                }
            }
        }
        Filling { shape: local, ones }
    }

    /// Replaces the band covered by `sub` with `replacement` (a filling of
    /// `sub.shape`), leaving every cell outside the band untouched.
    pub fn splice(&self, sub: &SubShape, replacement: &Filling) -> Filling {
        assert_eq!(replacement.shape.as_ref(), &sub.shape, "replacement must fill the sub-shape");
        let mut ones = self.ones.clone();
        for li in 1..=sub.shape.n() {
            let host_row = li + sub.row_offset;
            let iv = sub.shape.row(li);
            let (lo, hi) = (iv.left + sub.col_offset, iv.right + sub.col_offset);
            if let Some(col) = ones[host_row - 1] {
                if col >= lo && col <= hi {
                    ones[host_row - 1] = None;
                }
            }
            if let Some(local_col) = replacement.ones[li - 1] {
                let host_col = local_col + sub.col_offset;
                assert!(
                    ones[host_row - 1].is_none(),
                    "splice would put two 1-cells in row {host_row}"
                );
                ones[host_row - 1] = Some(host_col);
            }
        }
        Filling { shape: Arc::clone(&self.shape), ones }
    }
}

/// Streams every filling of the shape with the given row and column sums,
/// in lexicographic order of the per-row column choices, top row first.
pub struct FillingIter {
    shape: Arc<MoonPolyomino>,
    rows: Vec<usize>,
    remaining: Vec<usize>,
    supply: Vec<usize>,
    choice: Vec<usize>,
    cursor: Vec<usize>,
    level: usize,
    state: IterState,
}

enum IterState {
    Descending,
    Backtracking,
    Done,
}

pub fn enumerate_fillings(
    shape: &Arc<MoonPolyomino>,
    e: &[usize],
    s: &[usize],
) -> Result<FillingIter> {
    shape.check_sum_vectors(e, s)?;
    let rows: Vec<usize> = (1..=shape.n()).filter(|&i| e[i - 1] == 1).collect();
    let mut supply = vec![0usize; shape.m()];
    for &i in &rows {
        let iv = shape.row(i);
        for j in iv.left..=iv.right {
            supply[j - 1] += 1;
        }
    }
    let levels = rows.len();
    Ok(FillingIter {
        shape: Arc::clone(shape),
        rows,
        remaining: s.to_vec(),
        supply,
        choice: vec![0; levels],
        cursor: vec![0; levels],
        level: 0,
        state: IterState::Descending,
    })
}

impl FillingIter {
    fn feasible(&self) -> bool {
        self.remaining.iter().zip(&self.supply).all(|(&need, &have)| need <= have)
    }

    fn enter_level(&mut self) {
        let row = self.rows[self.level];
        self.cursor[self.level] = self.shape.row(row).left;
        let iv = self.shape.row(row);
        for j in iv.left..=iv.right {
            self.supply[j - 1] -= 1;
        }
    }

    fn leave_level(&mut self) {
        let row = self.rows[self.level];
        let iv = self.shape.row(row);
        for j in iv.left..=iv.right {
            self.supply[j - 1] += 1;
        }
    }

    fn build(&self) -> Filling {
        let mut ones = vec![None; self.shape.n()];
        for (lvl, &row) in self.rows.iter().enumerate() {
            ones[row - 1] = Some(self.choice[lvl]);
        }
        Filling { shape: Arc::clone(&self.shape), ones }
    }
}

impl Iterator for FillingIter {
    type Item = Filling;

    fn next(&mut self) -> Option<Filling> {
        loop {
            match self.state {
                IterState::Done => return None,
                IterState::Descending => {
                    if self.level == self.rows.len() {
                        let out = self.build();
                        self.state = IterState::Backtracking;
                        return Some(out);
                    }
                    self.enter_level();
                    if !self.try_columns() {
                        self.leave_level();
                        self.state = IterState::Backtracking;
                    } else {
                        self.level += 1;
                    }
                }
                IterState::Backtracking => {
                    if self.level == 0 {
                        self.state = IterState::Done;
                        return None;
                    }
                    self.level -= 1;
                    let col = self.choice[self.level];
                    self.remaining[col - 1] += 1;
                    self.cursor[self.level] = col + 1;
                    if self.try_columns() {
                        self.level += 1;
                        self.state = IterState::Descending;
                    } else {
                        self.leave_level();
                    }
                }
            }
        }
    }
}

impl FillingIter {
    /// Picks the next feasible column at the current level, starting from
    /// the cursor. Returns false when the level is exhausted.
    fn try_columns(&mut self) -> bool {
        let row = self.rows[self.level];
        let iv = self.shape.row(row);
        let mut c = self.cursor[self.level].max(iv.left);
        while c <= iv.right {
            if self.remaining[c - 1] > 0 {
                self.remaining[c - 1] -= 1;
                if self.feasible() {
                    self.choice[self.level] = c;
                    self.cursor[self.level] = c;
                    return true;
                }
                self.remaining[c - 1] += 1;
            }
            c += 1;
        }
        false
    }
}

/// Collects the full filling set; convenient at desk scale.
pub fn collect_fillings(shape: &Arc<MoonPolyomino>, e: &[usize], s: &[usize]) -> Result<Vec<Filling>> {
    Ok(enumerate_fillings(shape, e, s)?.collect())
}

fn mixed_exponents(chains: &[Chain], kind: StatKind, mask: &[bool]) -> (usize, usize) {
    let mut stat = 0usize;
    let mut costat = 0usize;
    for c in chains {
        let anchor = match kind {
            StatKind::Top => c.upper.0,
            StatKind::Bottom => c.lower.0,
            StatKind::Left => c.left_col(),
            StatKind::Right => c.right_col(),
        };
        let inside = mask[anchor - 1];
        let counts_for_set = match c.kind {
            ChainKind::Northeast => inside,
            ChainKind::Southeast => !inside,
        };
        if counts_for_set {
            stat += 1;
        } else {
            costat += 1;
        }
    }
    (stat, costat)
}

/// The exact joint distribution `sum over fillings of p^(stat) q^(co-stat)`
/// for the chosen mixed statistic and anchor subset.
pub fn distribution(
    shape: &Arc<MoonPolyomino>,
    e: &[usize],
    s: &[usize],
    kind: StatKind,
    subset: &[usize],
) -> Result<BivarPoly> {
    distribution_par(shape, e, s, kind, subset, 1)
}

/// Parallel variant: the filling stream is split into chunks whose partial
/// polynomials are merged in chunk order, so the result is deterministic.
pub fn distribution_par(
    shape: &Arc<MoonPolyomino>,
    e: &[usize],
    s: &[usize],
    kind: StatKind,
    subset: &[usize],
    threads: usize,
) -> Result<BivarPoly> {
    let mask = match kind {
        StatKind::Top | StatKind::Bottom => RowSubset::new(shape.n(), subset)?.mask,
        StatKind::Left | StatKind::Right => ColSubset::new(shape.m(), subset)?.mask,
    };
    let fillings = collect_fillings(shape, e, s)?;
    let tally = |chunk: &[Filling]| {
        let mut poly = BivarPoly::zero();
        for f in chunk {
            let (a, b) = mixed_exponents(&f.chains(), kind, &mask);
            poly.add_term(a as u32, b as u32, 1u32.into());
        }
        poly
    };
    if threads <= 1 || fillings.len() < 2 {
        return Ok(tally(&fillings));
    }
    let chunk_len = fillings.len().div_ceil(threads);
    let partials: Vec<BivarPoly> = std::thread::scope(|scope| {
        let handles: Vec<_> = fillings
            .chunks(chunk_len)
            .map(|chunk| scope.spawn(move || tally(chunk)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("tally thread panicked")).collect()
    });
    let mut total = BivarPoly::zero();
    for p in partials {
        total += &p;
    }
    Ok(total)
}
