//! Moon polyominoes: validation, column order, column rectangles, the
//! h-vector, and the column/row rearrangement algorithms.
//!
//! A moon polyomino is stored as one interval of columns per row, top to
//! bottom. All indices are 1-based, matching the usual combinatorial
//! conventions and the text file formats.

use crate::error::{Error, Result};

/// One row of a shape: an inclusive interval of 1-based column indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowInterval {
    pub left: usize,
    pub right: usize,
}

impl RowInterval {
    pub fn new(left: usize, right: usize) -> Self {
        assert!(left >= 1 && left <= right, "invalid row interval [{left}, {right}]");
        RowInterval { left, right }
    }

    // Never empty: construction enforces left <= right.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.right - self.left + 1
    }

    pub fn contains(&self, col: usize) -> bool {
        self.left <= col && col <= self.right
    }

    /// True if `self` contains `other` as a set of columns.
    pub fn covers(&self, other: &RowInterval) -> bool {
        self.left <= other.left && other.right <= self.right
    }
}

/// An axis-aligned cell rectangle, all bounds inclusive and 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rectangle {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

impl Rectangle {
    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.top <= row && row <= self.bottom && self.left <= col && col <= self.right
    }

    pub fn width(&self) -> usize {
        self.right - self.left + 1
    }

    pub fn height(&self) -> usize {
        self.bottom - self.top + 1
    }

    pub fn area(&self) -> usize {
        self.width() * self.height()
    }
}

/// The split of columns into the left part (before the unique unimodality
/// pivot) and the right part (pivot onward).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnClassification {
    /// 1-based index of the first column of maximal length.
    pub pivot: usize,
    cols: usize,
}

impl ColumnClassification {
    pub fn is_left(&self, col: usize) -> bool {
        col < self.pivot
    }

    pub fn left_part(&self) -> Vec<usize> {
        (1..self.pivot).collect()
    }

    pub fn right_part(&self) -> Vec<usize> {
        (self.pivot..=self.cols).collect()
    }
}

/// A convex, intersection-free polyomino given by one column interval per
/// row. Construction validates every invariant; the per-column row spans are
/// derived once and cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoonPolyomino {
    rows: Vec<RowInterval>,
    col_spans: Vec<(usize, usize)>,
}

impl MoonPolyomino {
    /// Validates the row intervals as a moon polyomino.
    ///
    /// Diagnostics name the violated invariant and the first offending
    /// rows or column.
    pub fn new(rows: Vec<RowInterval>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyShape);
        }
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                if !rows[i].covers(&rows[j]) && !rows[j].covers(&rows[i]) {
                    return Err(Error::NotComparable(i + 1, j + 1));
                }
            }
        }
        let m = rows.iter().map(|r| r.right).max().unwrap();
        let mut col_spans = Vec::with_capacity(m);
        for col in 1..=m {
            let mut span: Option<(usize, usize)> = None;
            let mut gap = false;
            for (idx, row) in rows.iter().enumerate() {
                if row.contains(col) {
                    match span {
                        None => span = Some((idx + 1, idx + 1)),
                        Some((top, bot)) => {
                            if idx + 1 > bot + 1 {
                                gap = true;
                                break;
                            }
                            span = Some((top, idx + 1));
                        }
                    }
                }
            }
            if gap {
                return Err(Error::NotColumnConvex(col));
            }
            match span {
                Some(s) => col_spans.push(s),
                None => return Err(Error::EmptyColumn(col)),
            }
        }
        Ok(MoonPolyomino { rows, col_spans })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.col_spans.len()
    }

    pub fn row(&self, i: usize) -> RowInterval {
        self.rows[i - 1]
    }

    pub fn rows(&self) -> &[RowInterval] {
        &self.rows
    }

    /// (top row, bottom row) of column `j`.
    pub fn col_span(&self, j: usize) -> (usize, usize) {
        self.col_spans[j - 1]
    }

    pub fn col_len(&self, j: usize) -> usize {
        let (top, bot) = self.col_span(j);
        bot - top + 1
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn col_lengths(&self) -> Vec<usize> {
        (1..=self.m()).map(|j| self.col_len(j)).collect()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        row >= 1 && row <= self.n() && self.rows[row - 1].contains(col)
    }

    pub fn contains_rect(&self, rect: &Rectangle) -> bool {
        rect.top >= 1
            && rect.bottom <= self.n()
            && (rect.top..=rect.bottom).all(|r| {
                self.rows[r - 1].left <= rect.left && rect.right <= self.rows[r - 1].right
            })
    }

    /// True if column `j` is present in every row of `top..=bot`.
    fn col_covers(&self, j: usize, top: usize, bot: usize) -> bool {
        let (t, b) = self.col_span(j);
        t <= top && bot <= b
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| (r.left..=r.right).map(move |c| (i + 1, c)))
    }

    pub fn area(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_rectangle(&self) -> bool {
        self.rows.iter().all(|r| r.left == 1 && r.right == self.m())
    }

    pub fn is_left_aligned(&self) -> bool {
        self.rows.iter().all(|r| r.left == 1)
    }

    pub fn is_top_aligned(&self) -> bool {
        self.col_spans.iter().all(|&(top, _)| top == 1)
    }

    fn check_col(&self, j: usize) -> Result<()> {
        if j < 1 || j > self.m() {
            return Err(Error::IndexOutOfRange { what: "column", index: j, limit: self.m() });
        }
        Ok(())
    }

    pub fn check_row(&self, i: usize) -> Result<()> {
        if i < 1 || i > self.n() {
            return Err(Error::IndexOutOfRange { what: "row", index: i, limit: self.n() });
        }
        Ok(())
    }

    /// The unique pivot of the unimodal column-length sequence: lengths
    /// strictly increase into the pivot and weakly decrease after it.
    /// Existence is guaranteed for a valid shape.
    pub fn classify_columns(&self) -> ColumnClassification {
        let lens = self.col_lengths();
        let max = *lens.iter().max().unwrap();
        let pivot = lens.iter().position(|&l| l == max).unwrap() + 1;
        debug_assert!(
            (1..pivot.saturating_sub(1)).all(|j| lens[j - 1] <= lens[j])
                && (pivot..lens.len()).all(|j| lens[j - 1] >= lens[j]),
            "column lengths not unimodal; shape validation should have caught this"
        );
        ColumnClassification { pivot, cols: self.m() }
    }

    fn precedence_key(&self, class: &ColumnClassification, j: usize) -> (usize, u8, usize) {
        if class.is_left(j) {
            (self.col_len(j), 0, j)
        } else {
            (self.col_len(j), 1, self.m() + 1 - j)
        }
    }

    /// The strict total order on columns: shorter first; at equal length the
    /// left part before the right part; within the left part leftmost first;
    /// within the right part rightmost first.
    pub fn column_precedes(&self, i: usize, j: usize) -> Result<bool> {
        self.check_col(i)?;
        self.check_col(j)?;
        if i == j {
            return Err(Error::IndexOutOfRange { what: "distinct column", index: j, limit: self.m() });
        }
        let class = self.classify_columns();
        Ok(self.precedence_key(&class, i) < self.precedence_key(&class, j))
    }

    /// All columns sorted ascending by the total order.
    pub fn precedence_order(&self) -> Vec<usize> {
        let class = self.classify_columns();
        let mut order: Vec<usize> = (1..=self.m()).collect();
        order.sort_by_key(|&j| self.precedence_key(&class, j));
        order
    }

    /// The rectangle associated with column `i`: for a left-part column, the
    /// largest rectangle with `C_i` as its leftmost column; for a right-part
    /// column, the largest rectangle with `C_i` rightmost that swallows no
    /// left-part column preceding `C_i`. Decided by direct expansion.
    pub fn column_rectangle(&self, i: usize) -> Result<Rectangle> {
        self.check_col(i)?;
        let class = self.classify_columns();
        let (top, bot) = self.col_span(i);
        if class.is_left(i) {
            let mut right = i;
            while right < self.m() && self.col_covers(right + 1, top, bot) {
                right += 1;
            }
            Ok(Rectangle { top, bottom: bot, left: i, right })
        } else {
            let mut left = i;
            while left > 1 {
                let c = left - 1;
                if !self.col_covers(c, top, bot) {
                    break;
                }
                // A left-part column of the same span would be fully
                // contained and precedes C_i; the rectangle must stop short.
                if class.is_left(c) && self.col_len(c) == self.col_len(i) {
                    break;
                }
                left -= 1;
            }
            Ok(Rectangle { top, bottom: bot, left, right: i })
        }
    }

    pub(crate) fn check_sum_vectors(&self, e: &[usize], s: &[usize]) -> Result<()> {
        if e.len() != self.n() {
            return Err(Error::LengthMismatch { what: "row-sum vector", expected: self.n(), got: e.len() });
        }
        if s.len() != self.m() {
            return Err(Error::LengthMismatch { what: "column-sum vector", expected: self.m(), got: s.len() });
        }
        if let Some(i) = e.iter().position(|&x| x > 1) {
            return Err(Error::InfeasibleSums(format!("row sum e_{} = {} exceeds 1", i + 1, e[i])));
        }
        let se: usize = e.iter().sum();
        let ss: usize = s.iter().sum();
        if se != ss {
            return Err(Error::InfeasibleSums(format!("sum of e is {se} but sum of s is {ss}")));
        }
        Ok(())
    }

    /// Available-cell counts per column when columns are filled in the given
    /// order: `h[c] = |C_c| - a_c - (sum of s over earlier columns)`, with
    /// `a_c` the number of empty rows meeting column `c`.
    pub fn h_vector_in_order(&self, order: &[usize], e: &[usize], s: &[usize]) -> Result<Vec<usize>> {
        self.check_sum_vectors(e, s)?;
        let mut h = vec![0usize; self.m()];
        let mut placed = 0i64;
        for &c in order {
            let (top, bot) = self.col_span(c);
            let a = (top..=bot).filter(|&r| e[r - 1] == 0).count();
            let value = self.col_len(c) as i64 - a as i64 - placed;
            if value < s[c - 1] as i64 {
                return Err(Error::InfeasibleSums(format!(
                    "column {c} has {value} available cells but needs {}",
                    s[c - 1]
                )));
            }
            h[c - 1] = value as usize;
            placed += s[c - 1] as i64;
        }
        Ok(h)
    }

    /// The h-vector under the standard column order.
    pub fn h_vector(&self, e: &[usize], s: &[usize]) -> Result<Vec<usize>> {
        self.h_vector_in_order(&self.precedence_order(), e, s)
    }

    /// Rearranges columns into the left-aligned shape: repeatedly move the
    /// leftmost column to the right end of the largest rectangle containing
    /// it. Returns the aligned shape and the trace of moves.
    pub fn rearrange_left_aligned(&self) -> (MoonPolyomino, AlignTrace) {
        let mut cur = self.clone();
        let mut permutation: Vec<usize> = (1..=self.m()).collect();
        let mut moves = Vec::new();
        while !cur.is_left_aligned() {
            let (top, bot) = cur.col_span(1);
            let mut extent = 1;
            while extent < cur.m() && cur.col_covers(extent + 1, top, bot) {
                extent += 1;
            }
            let rows = cur
                .rows
                .iter()
                .map(|r| {
                    if r.left == 1 {
                        *r
                    } else {
                        assert!(r.right <= extent, "row escapes the moved block");
                        RowInterval::new(r.left - 1, r.right - 1)
                    }
                })
                .collect();
            moves.push(AlignMove { extent, span: (top, bot) });
            permutation[0..extent].rotate_left(1);
            cur = MoonPolyomino::new(rows).expect("column move preserves moon invariants");
        }
        (cur, AlignTrace { moves, permutation })
    }

    /// The row analogue: repeatedly move the top row to the bottom of the
    /// largest rectangle containing it, until every column starts at row 1.
    pub fn rearrange_top_aligned(&self) -> (MoonPolyomino, AlignTrace) {
        let mut cur = self.clone();
        let mut permutation: Vec<usize> = (1..=self.n()).collect();
        let mut moves = Vec::new();
        while !cur.is_top_aligned() {
            let block = cur.top_block();
            let mut rows = cur.rows.clone();
            rows[0..block.extent].rotate_left(1);
            moves.push(block);
            permutation[0..block.extent].rotate_left(1);
            cur = MoonPolyomino::new(rows).expect("row move preserves moon invariants");
        }
        (cur, AlignTrace { moves, permutation })
    }

    /// The rectangle block moved by one top-alignment step: the first row's
    /// interval, extended downward as deep as every row covers it.
    pub(crate) fn top_block(&self) -> AlignMove {
        let first = self.rows[0];
        let mut extent = 1;
        while extent < self.n() && self.rows[extent].covers(&first) {
            extent += 1;
        }
        AlignMove { extent, span: (first.left, first.right) }
    }

    /// Transposes rows and columns (cell `(r, c)` becomes `(c, r)`).
    pub fn transpose(&self) -> MoonPolyomino {
        let rows = (1..=self.m())
            .map(|j| {
                let (top, bot) = self.col_span(j);
                RowInterval::new(top, bot)
            })
            .collect();
        MoonPolyomino::new(rows).expect("transpose preserves moon invariants")
    }

    /// Reflects across a horizontal line (row `i` becomes `n + 1 - i`).
    pub fn reflect_rows(&self) -> MoonPolyomino {
        let mut rows = self.rows.clone();
        rows.reverse();
        MoonPolyomino::new(rows).expect("reflection preserves moon invariants")
    }

    /// Reflects across a vertical line (column `j` becomes `m + 1 - j`).
    pub fn reflect_cols(&self) -> MoonPolyomino {
        let m = self.m();
        let rows = self
            .rows
            .iter()
            .map(|r| RowInterval::new(m + 1 - r.right, m + 1 - r.left))
            .collect();
        MoonPolyomino::new(rows).expect("reflection preserves moon invariants")
    }

    /// Applies a column permutation: `perm[new - 1]` is the old column at
    /// the new position. Fails if the permuted shape is not a moon polyomino.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<MoonPolyomino> {
        if perm.len() != self.m() {
            return Err(Error::LengthMismatch { what: "column permutation", expected: self.m(), got: perm.len() });
        }
        let mut new_col_of_old = vec![0usize; self.m()];
        for (new, &old) in perm.iter().enumerate() {
            new_col_of_old[old - 1] = new + 1;
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let cols: Vec<usize> = (r.left..=r.right).map(|c| new_col_of_old[c - 1]).collect();
                let left = *cols.iter().min().unwrap();
                let right = *cols.iter().max().unwrap();
                if right - left + 1 != cols.len() {
                    return Err(Error::NotColumnConvex(left));
                }
                Ok(RowInterval::new(left, right))
            })
            .collect::<Result<Vec<_>>>()?;
        MoonPolyomino::new(rows)
    }

    /// Applies a row permutation: `perm[new - 1]` is the old row at the new
    /// position. Fails if the permuted shape is not a moon polyomino.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<MoonPolyomino> {
        if perm.len() != self.n() {
            return Err(Error::LengthMismatch { what: "row permutation", expected: self.n(), got: perm.len() });
        }
        let rows = perm.iter().map(|&old| self.rows[old - 1]).collect();
        MoonPolyomino::new(rows)
    }

    /// Restricts the shape to a band of rows and columns. Rows whose
    /// interval misses the column range are dropped; the survivors must form
    /// a contiguous band, and the restriction is revalidated.
    pub fn restrict(&self, rows: (usize, usize), cols: (usize, usize)) -> Result<SubShape> {
        let (r1, r2) = rows;
        let (c1, c2) = cols;
        self.check_row(r1)?;
        self.check_row(r2)?;
        let mut kept: Vec<(usize, RowInterval)> = Vec::new();
        for i in r1..=r2 {
            let r = self.rows[i - 1];
            let left = r.left.max(c1);
            let right = r.right.min(c2);
            if left <= right {
                kept.push((i, RowInterval::new(left, right)));
            }
        }
        if kept.is_empty() {
            return Err(Error::EmptyShape);
        }
        let first = kept[0].0;
        assert!(
            kept.iter().enumerate().all(|(k, &(i, _))| i == first + k),
            "restricted rows are not contiguous"
        );
        let col_offset = kept.iter().map(|&(_, r)| r.left).min().unwrap() - 1;
        let rows = kept
            .iter()
            .map(|&(_, r)| RowInterval::new(r.left - col_offset, r.right - col_offset))
            .collect();
        Ok(SubShape {
            shape: MoonPolyomino::new(rows)?,
            row_offset: first - 1,
            col_offset,
        })
    }
}

/// One rearrangement step: the moved block spans positions `1..=extent`
/// (columns for the left alignment, rows for the top alignment) and `span`
/// records the block's other axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlignMove {
    pub extent: usize,
    pub span: (usize, usize),
}

/// The moves performed by a rearrangement together with the composite
/// permutation: `permutation[new - 1]` is the original index now sitting at
/// `new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignTrace {
    pub moves: Vec<AlignMove>,
    pub permutation: Vec<usize>,
}

impl AlignTrace {
    pub fn is_identity(&self) -> bool {
        self.moves.is_empty()
    }
}

/// A contiguous restriction of a host shape, with the offsets mapping local
/// 1-based coordinates back to the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubShape {
    pub shape: MoonPolyomino,
    pub row_offset: usize,
    pub col_offset: usize,
}

impl SubShape {
    pub fn to_host(&self, row: usize, col: usize) -> (usize, usize) {
        (row + self.row_offset, col + self.col_offset)
    }

    pub fn to_local(&self, row: usize, col: usize) -> (usize, usize) {
        (row - self.row_offset, col - self.col_offset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn shape(rows: &[(usize, usize)]) -> MoonPolyomino {
        MoonPolyomino::new(rows.iter().map(|&(l, r)| RowInterval::new(l, r)).collect()).unwrap()
    }

    #[test]
    fn validates_reference_shape() {
        let m = fixtures::reference_shape();
        assert_eq!(m.n(), 7);
        assert_eq!(m.m(), 6);
        assert_eq!(m.col_lengths(), vec![5, 7, 7, 5, 4, 3]);
        assert_eq!(m.area(), 31);
    }

    #[test]
    fn validates_single_cell() {
        let m = shape(&[(1, 1)]);
        assert_eq!((m.n(), m.m()), (1, 1));
    }

    #[test]
    fn rejects_invalid_shapes() {
        assert_eq!(MoonPolyomino::new(vec![]).unwrap_err(), Error::EmptyShape);
        let rows = vec![RowInterval::new(1, 3), RowInterval::new(2, 2), RowInterval::new(1, 3)];
        assert_eq!(MoonPolyomino::new(rows).unwrap_err(), Error::NotColumnConvex(1));
        let rows = vec![RowInterval::new(1, 2), RowInterval::new(2, 4)];
        assert_eq!(MoonPolyomino::new(rows).unwrap_err(), Error::NotComparable(1, 2));
        let rows = vec![RowInterval::new(2, 3)];
        assert_eq!(MoonPolyomino::new(rows).unwrap_err(), Error::EmptyColumn(1));
    }

    #[test]
    fn classifies_reference_shape() {
        let m = fixtures::reference_shape();
        let class = m.classify_columns();
        assert_eq!(class.pivot, 2);
        assert_eq!(class.left_part(), vec![1]);
        assert_eq!(class.right_part(), vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn classifies_rectangle_and_staircase() {
        let rect = shape(&[(1, 3), (1, 3)]);
        let class = rect.classify_columns();
        assert_eq!(class.pivot, 1);
        assert!(class.left_part().is_empty());
        assert_eq!(class.right_part(), vec![1, 2, 3]);

        let stairs = shape(&[(1, 3), (1, 2), (1, 1)]);
        let class = stairs.classify_columns();
        assert_eq!(class.pivot, 1);
        assert!(class.left_part().is_empty());
    }

    #[test]
    fn orders_columns() {
        let m = fixtures::reference_shape();
        assert_eq!(m.precedence_order(), vec![6, 5, 1, 4, 3, 2]);
        assert!(m.column_precedes(6, 5).unwrap());
        assert!(m.column_precedes(1, 4).unwrap());
        assert!(m.column_precedes(3, 2).unwrap());
        assert!(!m.column_precedes(2, 3).unwrap());
        assert!(m.column_precedes(1, 1).is_err());

        let rect = shape(&[(1, 3), (1, 3)]);
        assert_eq!(rect.precedence_order(), vec![3, 2, 1]);
    }

    #[test]
    fn order_is_strict_and_total() {
        for m in fixtures::fixture_shapes() {
            let cols = m.m();
            for i in 1..=cols {
                for j in 1..=cols {
                    if i == j {
                        continue;
                    }
                    let ij = m.column_precedes(i, j).unwrap();
                    let ji = m.column_precedes(j, i).unwrap();
                    assert!(ij ^ ji, "exactly one of i<j, j<i must hold");
                    for k in 1..=cols {
                        if k == i || k == j {
                            continue;
                        }
                        if ij && m.column_precedes(j, k).unwrap() {
                            assert!(m.column_precedes(i, k).unwrap(), "transitivity");
                        }
                    }
                }
            }
        }
    }

    /// Independent maximality oracle: enumerate every rectangle inside the
    /// shape and pick the one the definition asks for.
    fn brute_column_rectangle(m: &MoonPolyomino, i: usize) -> Rectangle {
        let class = m.classify_columns();
        let (top, bot) = m.col_span(i);
        let mut best: Option<Rectangle> = None;
        for left in 1..=m.m() {
            for right in left..=m.m() {
                let rect = Rectangle { top, bottom: bot, left, right };
                if !m.contains_rect(&rect) {
                    continue;
                }
                let anchored = if class.is_left(i) { left == i } else { right == i };
                if !anchored {
                    continue;
                }
                if !class.is_left(i) {
                    // No fully contained left-part column preceding C_i.
                    let swallowed = (left..=right).any(|c| {
                        class.is_left(c)
                            && m.col_span(c) == (top, bot)
                            && c != i
                            && m.column_precedes(c, i).unwrap()
                    });
                    if swallowed {
                        continue;
                    }
                }
                if best.is_none_or(|b| rect.area() > b.area()) {
                    best = Some(rect);
                }
            }
        }
        best.expect("column is its own rectangle at worst")
    }

    #[test]
    fn reference_column_rectangles() {
        let m = fixtures::reference_shape();
        let expect = [
            Rectangle { top: 2, bottom: 6, left: 1, right: 4 },
            Rectangle { top: 1, bottom: 7, left: 2, right: 2 },
            Rectangle { top: 1, bottom: 7, left: 2, right: 3 },
            Rectangle { top: 2, bottom: 6, left: 2, right: 4 },
            Rectangle { top: 3, bottom: 6, left: 1, right: 5 },
            Rectangle { top: 4, bottom: 6, left: 1, right: 6 },
        ];
        for (i, want) in expect.iter().enumerate() {
            assert_eq!(m.column_rectangle(i + 1).unwrap(), *want, "column {}", i + 1);
        }
    }

    #[test]
    fn column_rectangles_match_brute_force() {
        for m in fixtures::fixture_shapes() {
            for i in 1..=m.m() {
                assert_eq!(
                    m.column_rectangle(i).unwrap(),
                    brute_column_rectangle(&m, i),
                    "column {i} of {:?}",
                    m.rows()
                );
            }
        }
    }

    #[test]
    fn rectangle_shape_rectangles_span_left() {
        let m = shape(&[(1, 4), (1, 4), (1, 4)]);
        for i in 1..=4 {
            assert_eq!(
                m.column_rectangle(i).unwrap(),
                Rectangle { top: 1, bottom: 3, left: 1, right: i }
            );
        }
        let single = shape(&[(1, 1), (1, 1)]);
        assert_eq!(
            single.column_rectangle(1).unwrap(),
            Rectangle { top: 1, bottom: 2, left: 1, right: 1 }
        );
    }

    #[test]
    fn h_vector_reference() {
        let m = fixtures::reference_shape();
        let h = m.h_vector(&fixtures::reference_row_sums(), &fixtures::reference_col_sums()).unwrap();
        assert_eq!(h, vec![3, 1, 3, 2, 3, 3]);
    }

    #[test]
    fn h_vector_degenerate() {
        let m = shape(&[(1, 1)]);
        assert_eq!(m.h_vector(&[1], &[1]).unwrap(), vec![1]);

        let col = shape(&[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(m.h_vector(&[1], &[1]).unwrap(), vec![1]);
        assert_eq!(col.h_vector(&[1, 1, 1], &[3]).unwrap(), vec![3]);
    }

    #[test]
    fn h_vector_rejects_bad_sums() {
        let m = fixtures::reference_shape();
        let e = fixtures::reference_row_sums();
        assert!(matches!(m.h_vector(&e, &[1, 1, 2, 1, 1, 1]), Err(Error::InfeasibleSums(_))));
        assert!(matches!(
            m.h_vector(&[1; 7], &[0, 0, 0, 0, 1, 6]),
            Err(Error::InfeasibleSums(_))
        ));
    }

    #[test]
    fn left_alignment_reference_walk() {
        let input = fixtures::alignment_example_input();
        let (aligned, trace) = input.rearrange_left_aligned();
        assert_eq!(
            trace.moves.iter().map(|mv| mv.extent).collect::<Vec<_>>(),
            vec![6, 4, 3]
        );
        assert_eq!(aligned, fixtures::alignment_example_output());
        assert_eq!(trace.permutation, vec![4, 5, 3, 2, 6, 1, 7]);
    }

    #[test]
    fn left_alignment_properties() {
        for m in fixtures::fixture_shapes() {
            let (aligned, trace) = m.rearrange_left_aligned();
            assert!(aligned.is_left_aligned());
            let mut before = m.col_lengths();
            let mut after = aligned.col_lengths();
            before.sort_unstable();
            after.sort_unstable();
            assert_eq!(before, after, "column length multiset preserved");
            // Each row keeps its length and the aligned shape is exactly the
            // row lengths pushed against the left wall.
            let expect: Vec<RowInterval> =
                m.rows().iter().map(|r| RowInterval::new(1, r.len())).collect();
            assert_eq!(aligned.rows(), &expect[..]);
            assert_eq!(m.permute_columns(&trace.permutation).unwrap(), aligned);
            if m.is_left_aligned() {
                assert!(trace.is_identity());
            }
        }
    }

    #[test]
    fn top_alignment_properties() {
        for m in fixtures::fixture_shapes() {
            let (aligned, trace) = m.rearrange_top_aligned();
            assert!(aligned.is_top_aligned());
            let mut before = m.row_lengths();
            let mut after = aligned.row_lengths();
            before.sort_unstable();
            after.sort_unstable();
            assert_eq!(before, after, "row length multiset preserved");
            for j in 1..=m.m() {
                assert_eq!(aligned.col_span(j), (1, m.col_len(j)), "column {j} pushed to the top");
            }
            assert_eq!(m.permute_rows(&trace.permutation).unwrap(), aligned);
        }
        let single = shape(&[(1, 4)]);
        assert!(single.rearrange_top_aligned().1.is_identity());
    }

    #[test]
    fn top_alignment_reference() {
        let m = fixtures::reference_shape();
        let (aligned, _) = m.rearrange_top_aligned();
        let want = shape(&[(1, 6), (1, 6), (1, 6), (1, 5), (1, 4), (2, 3), (2, 3)]);
        assert_eq!(aligned, want);
    }

    /// Oracle for the alignment step: among all rectangles of the shape
    /// containing the whole first column (or first row), the largest is
    /// unique and is exactly the block the algorithm moves.
    #[test]
    fn alignment_blocks_are_unique_maximal_rectangles() {
        for m in fixtures::fixture_shapes() {
            let mut cur = m.clone();
            while !cur.is_left_aligned() {
                let (top, bot) = cur.col_span(1);
                let mut best: Vec<Rectangle> = Vec::new();
                for t in 1..=cur.n() {
                    for b in t..=cur.n() {
                        for right in 1..=cur.m() {
                            let rect = Rectangle { top: t, bottom: b, left: 1, right };
                            if t <= top && bot <= b && cur.contains_rect(&rect) {
                                match best.first().map(|r| r.area().cmp(&rect.area())) {
                                    Some(std::cmp::Ordering::Less) | None => best = vec![rect],
                                    Some(std::cmp::Ordering::Equal) => best.push(rect),
                                    _ => {}
                                }
                            }
                        }
                    }
                }
                assert_eq!(best.len(), 1, "maximal block is unique in {:?}", cur.rows());
                let extent = best[0].right;
                assert_eq!((best[0].top, best[0].bottom), (top, bot));
                let perm: Vec<usize> =
                    (2..=extent).chain([1]).chain(extent + 1..=cur.m()).collect();
                cur = cur.permute_columns(&perm).unwrap();
            }
            let mut cur = m;
            while !cur.is_top_aligned() {
                let first = cur.row(1);
                let mut best: Vec<Rectangle> = Vec::new();
                for l in 1..=cur.m() {
                    for r in l..=cur.m() {
                        for b in 1..=cur.n() {
                            let rect = Rectangle { top: 1, bottom: b, left: l, right: r };
                            if l <= first.left && first.right <= r && cur.contains_rect(&rect) {
                                match best.first().map(|x| x.area().cmp(&rect.area())) {
                                    Some(std::cmp::Ordering::Less) | None => best = vec![rect],
                                    Some(std::cmp::Ordering::Equal) => best.push(rect),
                                    _ => {}
                                }
                            }
                        }
                    }
                }
                assert_eq!(best.len(), 1, "maximal block is unique in {:?}", cur.rows());
                let block = cur.top_block();
                assert_eq!(
                    best[0],
                    Rectangle {
                        top: 1,
                        bottom: block.extent,
                        left: block.span.0,
                        right: block.span.1
                    }
                );
                let extent = best[0].bottom;
                let perm: Vec<usize> =
                    (2..=extent).chain([1]).chain(extent + 1..=cur.n()).collect();
                cur = cur.permute_rows(&perm).unwrap();
            }
        }
    }

    #[test]
    fn transpose_and_reflections() {
        let m = fixtures::reference_shape();
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.reflect_rows().reflect_rows(), m);
        assert_eq!(m.reflect_cols().reflect_cols(), m);
        assert_eq!(m.transpose().n(), m.m());
    }

    #[test]
    fn restriction_keeps_coordinates() {
        let m = fixtures::reference_shape();
        let sub = m.restrict((2, 6), (1, 6)).unwrap();
        assert_eq!(sub.row_offset, 1);
        assert_eq!(sub.col_offset, 0);
        assert_eq!(sub.shape.n(), 5);
        let sub = m.restrict((1, 7), (4, 6)).unwrap();
        assert_eq!(sub.col_offset, 3);
        assert_eq!(sub.shape.n(), 5, "rows 1 and 7 miss columns 4..6");
        assert_eq!(sub.row_offset, 1);
        assert_eq!(sub.to_host(1, 1), (2, 4));
    }
}
