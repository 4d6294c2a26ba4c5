//! Shared worked examples: the shapes, fillings, and expected values used as
//! golden data by the test and verification suites.

use crate::filling::Filling;
use crate::shape::{MoonPolyomino, RowInterval};
use std::sync::Arc;

fn shape(rows: &[(usize, usize)]) -> MoonPolyomino {
    MoonPolyomino::new(rows.iter().map(|&(l, r)| RowInterval::new(l, r)).collect())
        .expect("fixture shape is valid")
}

/// The seven-row reference shape with column lengths (5, 7, 7, 5, 4, 3).
pub fn reference_shape() -> MoonPolyomino {
    shape(&[(2, 3), (1, 4), (1, 5), (1, 6), (1, 6), (1, 6), (2, 3)])
}

/// The reference filling of [`reference_shape`] with ne = 6 and se = 1.
pub fn reference_cells() -> Vec<(usize, usize)> {
    vec![(1, 3), (2, 4), (4, 5), (5, 1), (6, 3), (7, 2)]
}

pub fn reference_row_sums() -> Vec<usize> {
    vec![1, 1, 0, 1, 1, 1, 1]
}

pub fn reference_col_sums() -> Vec<usize> {
    vec![1, 1, 2, 1, 1, 0]
}

pub fn reference_filling() -> Filling {
    Filling::new(Arc::new(reference_shape()), &reference_cells()).expect("fixture filling is valid")
}

/// The colored cells of the reference filling, read off the worked example.
pub fn reference_colored_cells() -> Vec<(usize, usize)> {
    vec![
        (3, 1),
        (4, 1),
        (1, 2),
        (2, 2),
        (3, 2),
        (4, 2),
        (5, 2),
        (6, 2),
        (2, 3),
        (3, 3),
        (4, 3),
        (5, 3),
        (3, 4),
        (4, 4),
        (5, 4),
        (3, 5),
    ]
}

/// The gap compositions of the reference filling, column by column.
pub fn reference_compositions() -> Vec<Vec<usize>> {
    vec![
        vec![1, 1],
        vec![0, 0],
        vec![0, 0, 1],
        vec![0, 1],
        vec![0, 2],
        vec![0],
    ]
}

/// The host shape of the worked left-mixed transport example.
pub fn gamma_example_shape() -> MoonPolyomino {
    shape(&[(2, 3), (1, 3), (1, 5), (1, 6), (1, 6), (1, 5), (3, 3)])
}

pub fn gamma_example_input_cells() -> Vec<(usize, usize)> {
    vec![(1, 2), (2, 3), (3, 1), (4, 3), (5, 6), (6, 4), (7, 3)]
}

/// The intermediate filling after the second rectangle reversal.
pub fn gamma_example_middle_cells() -> Vec<(usize, usize)> {
    vec![(1, 2), (2, 3), (3, 3), (4, 4), (5, 6), (6, 1), (7, 3)]
}

pub fn gamma_example_output_cells() -> Vec<(usize, usize)> {
    vec![(1, 2), (2, 3), (3, 1), (4, 4), (5, 6), (6, 3), (7, 3)]
}

pub fn gamma_example_input() -> Filling {
    Filling::new(Arc::new(gamma_example_shape()), &gamma_example_input_cells()).expect("fixture filling")
}

/// The shape driving the worked column-rearrangement walk.
pub fn alignment_example_input() -> MoonPolyomino {
    shape(&[(4, 5), (3, 5), (2, 5), (1, 6), (1, 7), (1, 7), (3, 5)])
}

/// Its left-aligned rearrangement, reached after three moves.
pub fn alignment_example_output() -> MoonPolyomino {
    shape(&[(1, 2), (1, 3), (1, 4), (1, 6), (1, 7), (1, 7), (1, 3)])
}

/// The worked matching on eight points and its Ferrers-diagram image.
pub fn matching_example_arcs() -> Vec<(usize, usize)> {
    vec![(1, 7), (2, 3), (4, 8), (5, 6)]
}

pub fn matching_example_ferrers_rows() -> Vec<(usize, usize)> {
    vec![(1, 4), (1, 4), (1, 3), (1, 3)]
}

pub fn matching_example_cells() -> Vec<(usize, usize)> {
    vec![(1, 2), (2, 4), (3, 1), (4, 3)]
}

/// A spread of shapes covering the degenerate and structural edge cases:
/// single cell, single row/column, rectangles, an empty left part,
/// staircases, a two-column left part, and the worked reference shapes.
pub fn fixture_shapes() -> Vec<MoonPolyomino> {
    vec![
        shape(&[(1, 1)]),
        shape(&[(1, 4)]),
        shape(&[(1, 1), (1, 1), (1, 1)]),
        shape(&[(1, 2), (1, 2)]),
        shape(&[(1, 3), (1, 3), (1, 3)]),
        shape(&[(1, 3), (1, 2), (1, 1)]),
        shape(&[(1, 2), (1, 3), (1, 3)]),
        shape(&[(2, 2), (1, 3), (2, 3)]),
        shape(&[(3, 4), (2, 5), (1, 6), (2, 5)]),
        shape(&[(1, 3), (1, 3), (3, 3)]),
        reference_shape(),
        gamma_example_shape(),
        alignment_example_input(),
    ]
}
