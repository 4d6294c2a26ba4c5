//! The gap-composition encoding of fillings: a deterministic coloring of
//! cells, the auc/buc statistics of 1-cells, and the bijection psi sending a
//! filling to one composition of nonnegative integers per column, together
//! with its constructive inverse.
//!
//! The machinery is parameterized by a column scheme (processing order,
//! left/right role, and rectangle per column) because the rectangle
//! involution reuses it with a left-to-right, all-left scheme.

use crate::error::{Error, Result};
use crate::filling::{Chain, ChainKind, Filling};
use crate::shape::{MoonPolyomino, Rectangle};
use std::sync::Arc;

/// How columns are processed: a total order, a left/right role per column,
/// and the rectangle each column colors into.
#[derive(Debug, Clone)]
pub struct ColumnScheme {
    pub order: Vec<usize>,
    pub is_left: Vec<bool>,
    pub rects: Vec<Rectangle>,
}

impl ColumnScheme {
    /// The standard scheme: the shorter-first column order, the
    /// classification split, and the associated column rectangles.
    pub fn standard(shape: &MoonPolyomino) -> ColumnScheme {
        let class = shape.classify_columns();
        let order = shape.precedence_order();
        let is_left = (1..=shape.m()).map(|j| class.is_left(j)).collect();
        let rects = (1..=shape.m())
            .map(|j| shape.column_rectangle(j).expect("valid column index"))
            .collect();
        ColumnScheme { order, is_left, rects }
    }

    /// The rectangle-only scheme used by the reversal involution: columns
    /// left to right, every column treated as a left column, each coloring
    /// into the rectangle extending to the right edge.
    pub fn left_to_right(shape: &MoonPolyomino) -> Result<ColumnScheme> {
        if !shape.is_rectangle() {
            return Err(Error::NotARectangle);
        }
        let m = shape.m();
        let rects = (1..=m)
            .map(|j| Rectangle { top: 1, bottom: shape.n(), left: j, right: m })
            .collect();
        Ok(ColumnScheme {
            order: (1..=m).collect(),
            is_left: vec![true; m],
            rects,
        })
    }
}

/// The colored cell set of a filling, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    m: usize,
    grid: Vec<bool>,
}

impl Coloring {
    fn new(n: usize, m: usize) -> Coloring {
        Coloring { m, grid: vec![false; n * m] }
    }

    fn color(&mut self, row: usize, col: usize) {
        self.grid[(row - 1) * self.m + (col - 1)] = true;
    }

    pub fn is_colored(&self, row: usize, col: usize) -> bool {
        self.grid[(row - 1) * self.m + (col - 1)]
    }

    /// The colored cells of the host shape, sorted by column then row.
    pub fn cells_of(&self, shape: &MoonPolyomino) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = shape
            .cells()
            .filter(|&(r, c)| self.is_colored(r, c))
            .collect();
        out.sort_by_key(|&(r, c)| (c, r));
        out
    }

    /// Marks the cells a 1-cell at `(row, col)` colors: the cells beside it
    /// inside its column's rectangle, on the side the scheme dictates.
    fn color_beside(&mut self, scheme: &ColumnScheme, row: usize, col: usize) {
        let rect = scheme.rects[col - 1];
        if scheme.is_left[col - 1] {
            for c in (col + 1)..=rect.right {
                self.color(row, c);
            }
        } else {
            for c in rect.left..col {
                self.color(row, c);
            }
        }
    }
}

/// The coloring of a filling: cells of empty rows, plus the cells beside
/// each 1-cell within its column rectangle (to the right for left-part
/// columns, to the left for right-part columns).
pub fn coloring(f: &Filling) -> Coloring {
    coloring_with(f, &ColumnScheme::standard(f.shape()))
}

pub fn coloring_with(f: &Filling, scheme: &ColumnScheme) -> Coloring {
    let shape = f.shape();
    let mut coloring = Coloring::new(shape.n(), shape.m());
    for row in 1..=shape.n() {
        if f.one_in_row(row).is_none() {
            let iv = shape.row(row);
            for c in iv.left..=iv.right {
                coloring.color(row, c);
            }
        }
    }
    for (row, col) in f.cells() {
        coloring.color_beside(scheme, row, col);
    }
    coloring
}

/// Uncolored empty cells above a 1-cell in its column; zero for empty cells.
pub fn auc(f: &Filling, cell: (usize, usize)) -> Result<usize> {
    auc_with(f, cell, &coloring(f))
}

pub fn auc_with(f: &Filling, cell: (usize, usize), coloring: &Coloring) -> Result<usize> {
    count_uncolored(f, cell, coloring, true)
}

/// Uncolored empty cells below a 1-cell in its column; zero for empty cells.
pub fn buc(f: &Filling, cell: (usize, usize)) -> Result<usize> {
    buc_with(f, cell, &coloring(f))
}

pub fn buc_with(f: &Filling, cell: (usize, usize), coloring: &Coloring) -> Result<usize> {
    count_uncolored(f, cell, coloring, false)
}

fn count_uncolored(
    f: &Filling,
    (row, col): (usize, usize),
    coloring: &Coloring,
    above: bool,
) -> Result<usize> {
    let shape = f.shape();
    if !shape.contains(row, col) {
        return Err(Error::CellOutsideShape { row, col });
    }
    if f.one_in_row(row) != Some(col) {
        return Ok(0);
    }
    let (top, bot) = shape.col_span(col);
    let range = if above { top..row } else { (row + 1)..(bot + 1) };
    Ok(range
        .filter(|&r| f.one_in_row(r) != Some(col) && !coloring.is_colored(r, col))
        .count())
}

/// One composition per column: the runs of uncolored empty cells around the
/// column's 1-cells, read top to bottom. A column with no 1-cells carries
/// the sentinel `(0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSeq {
    pub comps: Vec<Vec<usize>>,
}

impl CompositionSeq {
    /// Checks the length and sum constraints against the h-vector.
    pub fn validate(
        &self,
        shape: &MoonPolyomino,
        e: &[usize],
        s: &[usize],
        scheme: &ColumnScheme,
    ) -> Result<()> {
        if self.comps.len() != shape.m() {
            return Err(Error::MalformedComposition(format!(
                "{} compositions for {} columns",
                self.comps.len(),
                shape.m()
            )));
        }
        let h = shape.h_vector_in_order(&scheme.order, e, s)?;
        for (idx, comp) in self.comps.iter().enumerate() {
            let col = idx + 1;
            if s[idx] == 0 {
                if comp != &[0] {
                    return Err(Error::MalformedComposition(format!(
                        "column {col} has no 1-cells and must carry (0)"
                    )));
                }
                continue;
            }
            if comp.len() != s[idx] + 1 {
                return Err(Error::MalformedComposition(format!(
                    "column {col} needs {} parts, got {}",
                    s[idx] + 1,
                    comp.len()
                )));
            }
            let total: usize = comp.iter().sum();
            if total != h[idx] - s[idx] {
                return Err(Error::MalformedComposition(format!(
                    "column {col} parts sum to {total}, expected {}",
                    h[idx] - s[idx]
                )));
            }
        }
        Ok(())
    }
}

/// Encodes a filling as its per-column gap compositions.
pub fn psi(f: &Filling) -> CompositionSeq {
    psi_with(f, &ColumnScheme::standard(f.shape()))
}

pub fn psi_with(f: &Filling, scheme: &ColumnScheme) -> CompositionSeq {
    let shape = f.shape();
    let coloring = coloring_with(f, scheme);
    let mut comps = Vec::with_capacity(shape.m());
    for col in 1..=shape.m() {
        let (top, bot) = shape.col_span(col);
        let mut parts = Vec::new();
        let mut gap = 0usize;
        let mut ones = 0usize;
        for row in top..=bot {
            if f.one_in_row(row) == Some(col) {
                parts.push(gap);
                gap = 0;
                ones += 1;
            } else if !coloring.is_colored(row, col) {
                gap += 1;
            }
        }
        if ones == 0 {
            comps.push(vec![0]);
        } else {
            parts.push(gap);
            comps.push(parts);
        }
    }
    CompositionSeq { comps }
}

/// Decodes a composition sequence back to the unique filling that encodes
/// to it. Columns are processed in scheme order; the coloring is grown
/// incrementally, which is sound because cells of a column are only ever
/// colored by columns earlier in the order.
pub fn psi_inv(
    shape: &Arc<MoonPolyomino>,
    e: &[usize],
    s: &[usize],
    cs: &CompositionSeq,
) -> Result<Filling> {
    psi_inv_with(shape, e, s, cs, &ColumnScheme::standard(shape))
}

pub fn psi_inv_with(
    shape: &Arc<MoonPolyomino>,
    e: &[usize],
    s: &[usize],
    cs: &CompositionSeq,
    scheme: &ColumnScheme,
) -> Result<Filling> {
    cs.validate(shape, e, s, scheme)?;
    let mut coloring = Coloring::new(shape.n(), shape.m());
    for row in 1..=shape.n() {
        if e[row - 1] == 0 {
            let iv = shape.row(row);
            for c in iv.left..=iv.right {
                coloring.color(row, c);
            }
        }
    }
    let mut ones: Vec<Option<usize>> = vec![None; shape.n()];
    for &col in &scheme.order {
        if s[col - 1] == 0 {
            continue;
        }
        let comp = &cs.comps[col - 1];
        let (top, bot) = shape.col_span(col);
        let mut row = top;
        for &gap in &comp[..s[col - 1]] {
            let mut left = gap;
            loop {
                if row > bot {
                    return Err(Error::MalformedComposition(format!(
                        "column {col} runs out of cells"
                    )));
                }
                let r = row;
                row += 1;
                if coloring.is_colored(r, col) {
                    continue;
                }
                if left > 0 {
                    left -= 1;
                    continue;
                }
                if ones[r - 1].is_some() {
                    return Err(Error::MalformedComposition(format!(
                        "column {col} would put a second 1-cell in row {r}"
                    )));
                }
                ones[r - 1] = Some(col);
                coloring.color_beside(scheme, r, col);
                break;
            }
        }
        let trailing = (row..=bot)
            .filter(|&r| !coloring.is_colored(r, col) && ones[r - 1] != Some(col))
            .count();
        if trailing != comp[s[col - 1]] {
            return Err(Error::MalformedComposition(format!(
                "column {col} leaves {trailing} cells below the last 1-cell, expected {}",
                comp[s[col - 1]]
            )));
        }
    }
    Filling::from_rows(Arc::clone(shape), ones)
}

/// Recovers the chain counts from a composition sequence alone, through the
/// prefix-sum formulas: left-part columns contribute their prefixes to ne
/// and their co-prefixes to se, right-part columns the reverse.
pub fn ne_se_from_compositions(
    shape: &MoonPolyomino,
    e: &[usize],
    s: &[usize],
    cs: &CompositionSeq,
) -> Result<(usize, usize)> {
    let scheme = ColumnScheme::standard(shape);
    cs.validate(shape, e, s, &scheme)?;
    let h = shape.h_vector_in_order(&scheme.order, e, s)?;
    let mut ne = 0usize;
    let mut se = 0usize;
    for col in 1..=shape.m() {
        if s[col - 1] == 0 {
            continue;
        }
        let d = h[col - 1] - s[col - 1];
        let mut prefix = 0usize;
        for k in 0..s[col - 1] {
            prefix += cs.comps[col - 1][k];
            if scheme.is_left[col - 1] {
                ne += prefix;
                se += d - prefix;
            } else {
                ne += d - prefix;
                se += prefix;
            }
        }
    }
    Ok((ne, se))
}

/// Chains whose cells both lie inside `rect`.
pub fn chains_in_rect(f: &Filling, rect: &Rectangle) -> Vec<Chain> {
    f.chains()
        .into_iter()
        .filter(|c| rect.contains(c.upper.0, c.upper.1) && rect.contains(c.lower.0, c.lower.1))
        .collect()
}

/// The chain interpretation of auc/buc: for a 1-cell of a left-part column,
/// auc counts the northeast chains in the column's rectangle anchored at it
/// as the southwest cell (buc: southeast chains, northwest cell); for a
/// right-part column the roles swap.
pub fn auc_buc_chain_counts(f: &Filling, cell: (usize, usize)) -> (usize, usize) {
    let scheme = ColumnScheme::standard(f.shape());
    let col = cell.1;
    let rect = scheme.rects[col - 1];
    let inside = chains_in_rect(f, &rect);
    let count = |kind: ChainKind, at_lower: bool| {
        inside
            .iter()
            .filter(|c| c.kind == kind && (if at_lower { c.lower } else { c.upper }) == cell)
            .count()
    };
    if scheme.is_left[col - 1] {
        (count(ChainKind::Northeast, true), count(ChainKind::Southeast, false))
    } else {
        (count(ChainKind::Southeast, true), count(ChainKind::Northeast, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filling::collect_fillings;
    use crate::fixtures;

    #[test]
    fn reference_coloring_matches_worked_example() {
        let f = fixtures::reference_filling();
        let coloring = coloring(&f);
        let mut expect = fixtures::reference_colored_cells();
        expect.sort_by_key(|&(r, c)| (c, r));
        assert_eq!(coloring.cells_of(f.shape()), expect);
    }

    #[test]
    fn coloring_degenerate_cases() {
        let shape = Arc::new(fixtures::fixture_shapes()[4].clone());
        let empty = Filling::empty(Arc::clone(&shape));
        let c = coloring(&empty);
        assert_eq!(c.cells_of(&shape).len(), shape.area(), "all rows empty, all cells colored");
        let full = Filling::new(shape, &[(1, 3), (2, 2), (3, 1)]).unwrap();
        let c = coloring(&full);
        assert!(!c.is_colored(1, 3) && !c.is_colored(2, 2) && !c.is_colored(3, 1));
    }

    #[test]
    fn reference_auc_buc() {
        let f = fixtures::reference_filling();
        assert_eq!(auc(&f, (5, 1)).unwrap(), 1);
        assert_eq!(buc(&f, (5, 1)).unwrap(), 1);
        assert_eq!(auc(&f, (4, 5)).unwrap(), 0);
        assert_eq!(buc(&f, (4, 5)).unwrap(), 2);
        assert_eq!(auc(&f, (2, 2)).unwrap(), 0, "empty cells count zero");
        assert_eq!(buc(&f, (2, 2)).unwrap(), 0);
        assert!(auc(&f, (1, 1)).is_err());
    }

    #[test]
    fn auc_buc_match_chain_interpretation() {
        let f = fixtures::reference_filling();
        let coloring = coloring(&f);
        for cell in f.cells() {
            let (a, b) = auc_buc_chain_counts(&f, cell);
            assert_eq!(auc_with(&f, cell, &coloring).unwrap(), a, "auc at {cell:?}");
            assert_eq!(buc_with(&f, cell, &coloring).unwrap(), b, "buc at {cell:?}");
        }
    }

    #[test]
    fn chain_totals_from_auc_buc() {
        let f = fixtures::reference_filling();
        let scheme = ColumnScheme::standard(f.shape());
        let coloring = coloring(&f);
        let mut ne = 0;
        let mut se = 0;
        for (row, col) in f.cells() {
            let a = auc_with(&f, (row, col), &coloring).unwrap();
            let b = buc_with(&f, (row, col), &coloring).unwrap();
            if scheme.is_left[col - 1] {
                ne += a;
                se += b;
            } else {
                ne += b;
                se += a;
            }
        }
        assert_eq!((ne, se), (6, 1));
    }

    #[test]
    fn reference_compositions() {
        let f = fixtures::reference_filling();
        let cs = psi(&f);
        assert_eq!(cs.comps, fixtures::reference_compositions());
        cs.validate(
            f.shape(),
            &fixtures::reference_row_sums(),
            &fixtures::reference_col_sums(),
            &ColumnScheme::standard(f.shape()),
        )
        .unwrap();
    }

    #[test]
    fn reference_round_trip_and_formulas() {
        let shape = Arc::new(fixtures::reference_shape());
        let e = fixtures::reference_row_sums();
        let s = fixtures::reference_col_sums();
        for f in collect_fillings(&shape, &e, &s).unwrap() {
            let cs = psi(&f);
            assert_eq!(psi_inv(&shape, &e, &s, &cs).unwrap(), f);
            let (ne, se) = f.ne_se();
            assert_eq!(ne_se_from_compositions(&shape, &e, &s, &cs).unwrap(), (ne, se));
        }
    }

    /// Zero gaps before every 1-cell (any slack in the trailing part)
    /// decode to the greedy filling: each column takes its topmost
    /// available cells in processing order.
    #[test]
    fn zero_leading_gaps_give_topmost_greedy_filling() {
        let shape = Arc::new(fixtures::fixture_shapes()[3].clone());
        let cs = CompositionSeq { comps: vec![vec![0, 0], vec![0, 1]] };
        let f = psi_inv(&shape, &[1, 1], &[1, 1], &cs).unwrap();
        assert_eq!(f.cells(), vec![(1, 2), (2, 1)]);
        assert_eq!(psi(&f), cs);

        let shape = Arc::new(fixtures::reference_shape());
        let e = fixtures::reference_row_sums();
        let s = fixtures::reference_col_sums();
        let h = shape.h_vector(&e, &s).unwrap();
        let comps = (0..6)
            .map(|j| {
                if s[j] == 0 {
                    vec![0]
                } else {
                    let mut c = vec![0; s[j] + 1];
                    c[s[j]] = h[j] - s[j];
                    c
                }
            })
            .collect();
        let cs = CompositionSeq { comps };
        let f = psi_inv(&shape, &e, &s, &cs).unwrap();
        // Every 1-cell sits above all uncolored empty cells of its column.
        let coloring = coloring(&f);
        for (row, col) in f.cells() {
            assert_eq!(auc_with(&f, (row, col), &coloring).unwrap(), 0);
        }
        assert_eq!(psi(&f), cs);
    }

    #[test]
    fn single_column_compositions_are_trivial() {
        let shape = Arc::new(fixtures::fixture_shapes()[2].clone());
        for e in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            let fillings = collect_fillings(&shape, &e, &[1]).unwrap();
            assert_eq!(fillings.len(), 1);
            let cs = psi(&fillings[0]);
            assert_eq!(cs.comps, vec![vec![0, 0]]);
            assert_eq!(psi_inv(&shape, &e, &[1], &cs).unwrap(), fillings[0]);
        }
    }

    #[test]
    fn malformed_compositions_are_rejected() {
        let shape = Arc::new(fixtures::reference_shape());
        let e = fixtures::reference_row_sums();
        let s = fixtures::reference_col_sums();
        let good = psi(&fixtures::reference_filling());

        let mut wrong_len = good.clone();
        wrong_len.comps[0] = vec![1, 1, 0];
        assert!(matches!(
            psi_inv(&shape, &e, &s, &wrong_len),
            Err(Error::MalformedComposition(_))
        ));

        let mut wrong_sum = good.clone();
        wrong_sum.comps[0] = vec![2, 1];
        assert!(matches!(
            psi_inv(&shape, &e, &s, &wrong_sum),
            Err(Error::MalformedComposition(_))
        ));

        let mut wrong_sentinel = good;
        wrong_sentinel.comps[5] = vec![1];
        assert!(matches!(
            psi_inv(&shape, &e, &s, &wrong_sentinel),
            Err(Error::MalformedComposition(_))
        ));
    }

    #[test]
    fn encoding_is_injective_on_reference_set() {
        let shape = Arc::new(fixtures::reference_shape());
        let e = fixtures::reference_row_sums();
        let s = fixtures::reference_col_sums();
        let fillings = collect_fillings(&shape, &e, &s).unwrap();
        let mut images = std::collections::BTreeSet::new();
        for f in &fillings {
            assert!(images.insert(psi(f).comps), "psi must be injective");
        }
        assert_eq!(images.len(), 54);
    }
}
