//! Statistic-transporting bijections on filling sets.
//!
//! Each map here is a bijection of `F(shape, e, s)` (or between such sets on
//! rearranged shapes) moving one of the mixed statistics toward the plain
//! (se, ne) pair: the first-row map and its row-indexed extensions handle
//! the top-mixed statistic, the rectangle reversal and its column-indexed
//! extensions the left-mixed one, reflections give the bottom/right
//! variants, and the row-rearrangement transport carries fillings onto the
//! top-aligned shape without changing (se, ne).

use crate::encoding::{self, ColumnScheme};
use crate::error::{Error, Result};
use crate::filling::{ColSubset, Filling, RowSubset};
use crate::shape::{MoonPolyomino, Rectangle};
use std::sync::Arc;

/// The first-row map phi_alpha: transports `(top-mixed {1}, complement)` to
/// `(se, ne)`. Fillings with an empty first row are fixed.
///
/// The unique 1-cell of row 1 sits in some column `t`; the band of rows
/// meeting that column is re-encoded, the gap compositions of the columns
/// meeting row 1 are shifted (head down, tail up; the pivot column's
/// composition is rotated), and the band is decoded back.
pub fn phi_alpha(f: &Filling) -> Filling {
    let Some(t) = f.one_in_row(1) else {
        return f.clone();
    };
    let (_, band_bottom) = f.shape().col_span(t);
    let sub = f
        .shape()
        .restrict((1, band_bottom), (1, f.shape().m()))
        .expect("pivot band is a valid sub-shape");
    let band = f.restrict(&sub);
    let image = first_row_transport(&band, t - sub.col_offset, Direction::Forward)
        .expect("forward transport cannot fail on a valid filling");
    f.splice(&sub, &image)
}

/// Inverse of [`phi_alpha`]; fails with `NoPivotFound` on fillings outside
/// the image (which, for valid sum vectors, does not happen).
///
/// Candidate pivots are the columns meeting row 1, shortest first and
/// rightmost first among equals; a candidate qualifies when its
/// band-restricted composition ends in a zero. That test alone can produce
/// false positives (a shorter column's band may color away every cell below
/// its last 1-cell), so each qualifying candidate is confirmed by running
/// the forward map on the reconstructed preimage.
pub fn phi_alpha_inv(f: &Filling) -> Result<Filling> {
    if f.one_in_row(1).is_none() {
        return Ok(f.clone());
    }
    let shape = f.shape();
    let iv = shape.row(1);
    let mut candidates: Vec<usize> = (iv.left..=iv.right).collect();
    candidates.sort_by_key(|&j| (shape.col_len(j), std::cmp::Reverse(j)));
    for t in candidates {
        let (_, band_bottom) = shape.col_span(t);
        let sub = shape.restrict((1, band_bottom), (1, shape.m()))?;
        let band = f.restrict(&sub);
        let local = t - sub.col_offset;
        if band.col_sums()[local - 1] == 0 {
            continue;
        }
        let cs = encoding::psi(&band);
        if *cs.comps[local - 1].last().unwrap() != 0 {
            continue;
        }
        let Ok(preimage_band) = first_row_transport(&band, local, Direction::Backward) else {
            continue;
        };
        let candidate = f.splice(&sub, &preimage_band);
        if phi_alpha(&candidate) == *f {
            return Ok(candidate);
        }
    }
    Err(Error::NoPivotFound)
}

enum Direction {
    Forward,
    Backward,
}

fn first_row_transport(band: &Filling, pivot: usize, dir: Direction) -> Result<Filling> {
    let shape = band.shape_arc();
    debug_assert_eq!(shape.col_len(pivot), shape.n(), "pivot column spans the band");
    let e = band.row_sums();
    let s = band.col_sums();
    let scheme = ColumnScheme::standard(shape);
    let mut cs = encoding::psi_with(band, &scheme);
    let iv = shape.row(1);
    // Leftmost full-height column among those meeting row 1; columns of the
    // same height between it and the pivot keep their compositions.
    let u = (iv.left..=iv.right)
        .find(|&j| shape.col_len(j) == shape.n())
        .expect("the pivot column itself has full height");
    for col in iv.left..=iv.right {
        if col == pivot {
            continue;
        }
        if (col < u || col > pivot) && s[col - 1] > 0 {
            let comp = &mut cs.comps[col - 1];
            match dir {
                Direction::Forward => {
                    assert!(comp[0] > 0, "cell above the first 1 is uncolored in shifted columns");
                    comp[0] -= 1;
                    *comp.last_mut().unwrap() += 1;
                }
                Direction::Backward => {
                    let last = comp.last_mut().unwrap();
                    if *last == 0 {
                        return Err(Error::NoPivotFound);
                    }
                    *last -= 1;
                    comp[0] += 1;
                }
            }
        }
    }
    match dir {
        Direction::Forward => cs.comps[pivot - 1].rotate_left(1),
        Direction::Backward => cs.comps[pivot - 1].rotate_right(1),
    }
    encoding::psi_inv_with(shape, &e, &s, &cs, &scheme)
}

/// Recovers the pivot column the forward map used: the column holding the
/// first-row 1-cell of the unique preimage.
pub fn recover_pivot(f: &Filling) -> Result<usize> {
    if f.one_in_row(1).is_none() {
        return Err(Error::NoPivotFound);
    }
    let preimage = phi_alpha_inv(f)?;
    preimage.one_in_row(1).ok_or(Error::NoPivotFound)
}

/// Applies the first-row map to the sub-filling on rows `r..=n`, leaving
/// rows above untouched. Strips row `r` from the anchor subset of the
/// top-mixed statistic.
pub fn theta_r(f: &Filling, r: usize) -> Result<Filling> {
    f.shape().check_row(r)?;
    if r == 1 {
        return Ok(phi_alpha(f));
    }
    let sub = f.shape().restrict((r, f.shape().n()), (1, f.shape().m()))?;
    let image = phi_alpha(&f.restrict(&sub));
    Ok(f.splice(&sub, &image))
}

pub fn theta_r_inv(f: &Filling, r: usize) -> Result<Filling> {
    f.shape().check_row(r)?;
    if r == 1 {
        return phi_alpha_inv(f);
    }
    let sub = f.shape().restrict((r, f.shape().n()), (1, f.shape().m()))?;
    let image = phi_alpha_inv(&f.restrict(&sub))?;
    Ok(f.splice(&sub, &image))
}

/// The composite transporting the whole top-mixed pair: applies the
/// row-indexed maps from the largest anchor row down, so that
/// `(top-mixed(S), top-mixed(co-S))` of the input equals `(se, ne)` of the
/// output.
pub fn theta_alpha(f: &Filling, s: &RowSubset) -> Result<Filling> {
    let mut cur = f.clone();
    for &r in s.indices().iter().rev() {
        cur = theta_r(&cur, r)?;
    }
    Ok(cur)
}

pub fn theta_alpha_inv(f: &Filling, s: &RowSubset) -> Result<Filling> {
    let mut cur = f.clone();
    for &r in s.indices().iter() {
        cur = theta_r_inv(&cur, r)?;
    }
    Ok(cur)
}

/// The reversal involution on rectangle fillings: re-encode with the
/// left-to-right all-left scheme, reverse the first column's composition,
/// decode. Transports `(left-mixed {1}, complement)` to `(se, ne)`.
pub fn rho(f: &Filling) -> Result<Filling> {
    let shape = f.shape_arc();
    let scheme = ColumnScheme::left_to_right(shape)?;
    let e = f.row_sums();
    let s = f.col_sums();
    let mut cs = encoding::psi_with(f, &scheme);
    cs.comps[0].reverse();
    encoding::psi_inv_with(shape, &e, &s, &cs, &scheme)
}

/// The staircase of rectangles covering the rows that meet column 1:
/// `blocks[i]` is the largest rectangle of the band whose rightmost column
/// closes the i-th run of equal restricted column lengths.
fn column_one_blocks(shape: &MoonPolyomino) -> Vec<Rectangle> {
    let (band_top, band_bottom) = shape.col_span(1);
    let restricted_len = |j: usize| {
        let (top, bot) = shape.col_span(j);
        let lo = top.max(band_top);
        let hi = bot.min(band_bottom);
        if lo > hi {
            0
        } else {
            hi - lo + 1
        }
    };
    let mut blocks = Vec::new();
    for j in 1..=shape.m() {
        debug_assert!(restricted_len(j) >= 1, "every column meets the longest row");
        if j < shape.m() {
            debug_assert!(restricted_len(j) >= restricted_len(j + 1));
        }
        if j == shape.m() || restricted_len(j) > restricted_len(j + 1) {
            let (top, bot) = shape.col_span(j);
            blocks.push(Rectangle {
                top: top.max(band_top),
                bottom: bot.min(band_bottom),
                left: 1,
                right: j,
            });
        }
    }
    blocks
}

fn apply_rho_in(f: &Filling, rect: Rectangle) -> Filling {
    let sub = f
        .shape()
        .restrict((rect.top, rect.bottom), (rect.left, rect.right))
        .expect("block rectangles are valid sub-shapes");
    debug_assert!(sub.shape.is_rectangle());
    let image = rho(&f.restrict(&sub)).expect("block is a rectangle");
    f.splice(&sub, &image)
}

/// The fillings visited by the left-mixed transport, ending in its value:
/// the reversal is applied to the last block, then alternately to each
/// overlap and block from the inside out.
pub fn phi_gamma_trace(f: &Filling) -> Vec<Filling> {
    let blocks = column_one_blocks(f.shape());
    let k = blocks.len();
    let mut trace = Vec::new();
    let mut cur = apply_rho_in(f, blocks[k - 1]);
    trace.push(cur.clone());
    for i in (0..k - 1).rev() {
        let overlap = Rectangle {
            top: blocks[i + 1].top,
            bottom: blocks[i + 1].bottom,
            left: 1,
            right: blocks[i].right,
        };
        cur = apply_rho_in(&cur, overlap);
        trace.push(cur.clone());
        cur = apply_rho_in(&cur, blocks[i]);
        trace.push(cur.clone());
    }
    trace
}

/// Transports `(left-mixed {1}, complement)` to `(se, ne)`; on rectangle
/// shapes this degenerates to the single reversal.
pub fn phi_gamma(f: &Filling) -> Filling {
    phi_gamma_trace(f).pop().expect("trace is never empty")
}

pub fn phi_gamma_inv(f: &Filling) -> Filling {
    let blocks = column_one_blocks(f.shape());
    let k = blocks.len();
    let mut cur = f.clone();
    for i in 0..k - 1 {
        cur = apply_rho_in(&cur, blocks[i]);
        let overlap = Rectangle {
            top: blocks[i + 1].top,
            bottom: blocks[i + 1].bottom,
            left: 1,
            right: blocks[i].right,
        };
        cur = apply_rho_in(&cur, overlap);
    }
    apply_rho_in(&cur, blocks[k - 1])
}

/// Applies the left-mixed map to the sub-filling on columns `c..=m`,
/// leaving columns to the left untouched.
pub fn xi_c(f: &Filling, c: usize) -> Result<Filling> {
    if c < 1 || c > f.shape().m() {
        return Err(Error::IndexOutOfRange { what: "column", index: c, limit: f.shape().m() });
    }
    if c == 1 {
        return Ok(phi_gamma(f));
    }
    let sub = f.shape().restrict((1, f.shape().n()), (c, f.shape().m()))?;
    let image = phi_gamma(&f.restrict(&sub));
    Ok(f.splice(&sub, &image))
}

pub fn xi_c_inv(f: &Filling, c: usize) -> Result<Filling> {
    if c < 1 || c > f.shape().m() {
        return Err(Error::IndexOutOfRange { what: "column", index: c, limit: f.shape().m() });
    }
    if c == 1 {
        return Ok(phi_gamma_inv(f));
    }
    let sub = f.shape().restrict((1, f.shape().n()), (c, f.shape().m()))?;
    let image = phi_gamma_inv(&f.restrict(&sub));
    Ok(f.splice(&sub, &image))
}

/// The composite transporting the whole left-mixed pair to `(se, ne)`,
/// applying the column-indexed maps from the largest anchor column down.
pub fn sigma_gamma(f: &Filling, t: &ColSubset) -> Result<Filling> {
    let mut cur = f.clone();
    for &c in t.indices().iter().rev() {
        cur = xi_c(&cur, c)?;
    }
    Ok(cur)
}

pub fn sigma_gamma_inv(f: &Filling, t: &ColSubset) -> Result<Filling> {
    let mut cur = f.clone();
    for &c in t.indices().iter() {
        cur = xi_c_inv(&cur, c)?;
    }
    Ok(cur)
}

fn reflect_filling_rows(f: &Filling, target: &Arc<MoonPolyomino>) -> Filling {
    let n = f.shape().n();
    let ones = (1..=n).map(|i| f.one_in_row(n + 1 - i)).collect();
    Filling::from_rows(Arc::clone(target), ones).expect("reflection stays inside the shape")
}

fn reflect_filling_cols(f: &Filling, target: &Arc<MoonPolyomino>) -> Filling {
    let m = f.shape().m();
    let ones = (1..=f.shape().n()).map(|i| f.one_in_row(i).map(|c| m + 1 - c)).collect();
    Filling::from_rows(Arc::clone(target), ones).expect("reflection stays inside the shape")
}

/// The bottom-mixed transport: conjugate the top-mixed composite by the
/// horizontal reflection, relabeling the subset accordingly, so that
/// `(bottom-mixed(S), bottom-mixed(co-S))` equals `(se, ne)` of the image.
pub fn beta_variant(f: &Filling, s: &RowSubset) -> Result<Filling> {
    let n = f.shape().n();
    let flipped_shape = Arc::new(f.shape().reflect_rows());
    let flipped = reflect_filling_rows(f, &flipped_shape);
    let relabeled: Vec<usize> = s.indices().iter().map(|&i| n + 1 - i).collect();
    let image = theta_alpha(&flipped, &RowSubset::new(n, &relabeled)?)?;
    Ok(reflect_filling_rows(&image, f.shape_arc()))
}

/// The right-mixed transport: conjugate the left-mixed composite by the
/// vertical reflection.
pub fn delta_variant(f: &Filling, t: &ColSubset) -> Result<Filling> {
    let m = f.shape().m();
    let flipped_shape = Arc::new(f.shape().reflect_cols());
    let flipped = reflect_filling_cols(f, &flipped_shape);
    let relabeled: Vec<usize> = t.indices().iter().map(|&j| m + 1 - j).collect();
    let image = sigma_gamma(&flipped, &ColSubset::new(m, &relabeled)?)?;
    Ok(reflect_filling_cols(&image, f.shape_arc()))
}

/// One row-rearrangement step applied to a filling: the block containing
/// row 1 rotates that row to its bottom; 1-cells outside the block columns
/// travel with their rows, and the block contents of the 1-carrying rows
/// are copied row-by-row onto the 1-carrying rows of the rotated block,
/// preserving their columns.
fn row_move_step(f: &Filling) -> Filling {
    let shape = f.shape();
    let block = shape.top_block();
    let (d, (c1, c2)) = (block.extent, block.span);
    let mut rows = shape.rows().to_vec();
    rows[0..d].rotate_left(1);
    let target = Arc::new(MoonPolyomino::new(rows).expect("row move preserves moon invariants"));
    let n = shape.n();
    let mut ones: Vec<Option<usize>> = vec![None; n];
    for r in (d + 1)..=n {
        ones[r - 1] = f.one_in_row(r);
    }
    if f.one_in_row(1).is_none() {
        for r in 2..=d {
            ones[r - 2] = f.one_in_row(r);
        }
    } else {
        for r in 2..=d {
            if let Some(c) = f.one_in_row(r) {
                if c < c1 || c > c2 {
                    ones[r - 2] = Some(c);
                }
            }
        }
        let carriers: Vec<(usize, usize)> = (1..=d)
            .filter_map(|r| {
                f.one_in_row(r).filter(|&c| (c1..=c2).contains(&c)).map(|c| (r, c))
            })
            .collect();
        debug_assert_eq!(carriers.first().map(|&(r, _)| r), Some(1));
        let slots: Vec<usize> =
            carriers[1..].iter().map(|&(r, _)| r - 1).chain(std::iter::once(d)).collect();
        for (q, &slot) in slots.iter().enumerate() {
            ones[slot - 1] = Some(carriers[q].1);
        }
    }
    Filling::from_rows(target, ones).expect("moved cells stay inside the shape")
}

/// Inverse of one row-rearrangement step; `before` is the shape the step
/// started from.
fn row_move_step_inv(f: &Filling, before: &Arc<MoonPolyomino>) -> Filling {
    let block = before.top_block();
    let (d, (c1, c2)) = (block.extent, block.span);
    let n = before.n();
    let mut ones: Vec<Option<usize>> = vec![None; n];
    for r in (d + 1)..=n {
        ones[r - 1] = f.one_in_row(r);
    }
    // The forward map puts a 1 into the block's bottom row exactly when the
    // original first row carried one.
    if f.one_in_row(d).is_none() {
        for r in 2..=d {
            ones[r - 1] = f.one_in_row(r - 1);
        }
    } else {
        for r in 2..=d {
            if let Some(c) = f.one_in_row(r - 1) {
                if c < c1 || c > c2 {
                    ones[r - 1] = Some(c);
                }
            }
        }
        let carriers: Vec<(usize, usize)> = (1..=d)
            .filter_map(|r| {
                f.one_in_row(r).filter(|&c| (c1..=c2).contains(&c)).map(|c| (r, c))
            })
            .collect();
        debug_assert_eq!(carriers.last().map(|&(r, _)| r), Some(d));
        let slots: Vec<usize> = std::iter::once(1)
            .chain(carriers[..carriers.len() - 1].iter().map(|&(r, _)| r + 1))
            .collect();
        for (q, &slot) in slots.iter().enumerate() {
            ones[slot - 1] = Some(carriers[q].1);
        }
    }
    Filling::from_rows(Arc::clone(before), ones).expect("moved cells stay inside the shape")
}

/// Transports a filling onto the top-aligned rearrangement of its shape,
/// preserving `(se, ne)` and the column sums; the row sums come out
/// permuted by the same trace that moves the rows.
pub fn h_transport(f: &Filling) -> Filling {
    let mut cur = f.clone();
    while !cur.shape().is_top_aligned() {
        cur = row_move_step(&cur);
    }
    cur
}

/// Pulls a filling of the top-aligned shape back to `original`, undoing the
/// rearrangement steps in reverse order.
pub fn h_transport_inv(f: &Filling, original: &Arc<MoonPolyomino>) -> Result<Filling> {
    let mut shapes = Vec::new();
    let mut shape = Arc::clone(original);
    while !shape.is_top_aligned() {
        let block = shape.top_block();
        let mut rows = shape.rows().to_vec();
        rows[0..block.extent].rotate_left(1);
        let next = Arc::new(MoonPolyomino::new(rows).expect("row move preserves moon invariants"));
        shapes.push(shape);
        shape = next;
    }
    if f.shape() != shape.as_ref() {
        return Err(Error::ShapeMismatch);
    }
    let mut cur = f.clone();
    for before in shapes.iter().rev() {
        cur = row_move_step_inv(&cur, before);
    }
    Ok(cur)
}

/// Carries a filling to a row-permuted target shape while preserving the
/// whole top-mixed pair: transport to `(se, ne)`, ride the row
/// rearrangement through the shared top-aligned shape, and transport back.
pub fn lambda_alpha(f: &Filling, s: &RowSubset, target: &Arc<MoonPolyomino>) -> Result<Filling> {
    let mut ours = f.shape().rows().to_vec();
    let mut theirs = target.rows().to_vec();
    ours.sort_unstable();
    theirs.sort_unstable();
    if ours != theirs {
        return Err(Error::ShapeMismatch);
    }
    let started = theta_alpha(f, s)?;
    let aligned = h_transport(&started);
    let landed = h_transport_inv(&aligned, target)?;
    theta_alpha_inv(&landed, s)
}
