//! Text formats: shapes (one `left right` interval per line), fillings
//! (one `row col` 1-cell per line), composition sequences (`col: parts`),
//! matchings (`l r` per arc), words (whitespace-separated letters), and
//! plain unsigned vectors. Lines may carry `#` comments; blank lines are
//! skipped.

use crate::encoding::CompositionSeq;
use crate::error::{Error, Result};
use crate::filling::Filling;
use crate::matchings::Matching;
use crate::shape::{MoonPolyomino, RowInterval};
use std::fmt::Write as _;
use std::sync::Arc;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((idx + 1, line))
        }
    })
}

fn parse_usize(token: &str, lineno: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("line {lineno}: `{token}` is not a nonnegative integer")))
}

fn two_numbers(line: &str, lineno: usize, what: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(Error::Parse(format!("line {lineno}: expected `{what}`, got `{line}`")));
    };
    Ok((parse_usize(a, lineno)?, parse_usize(b, lineno)?))
}

pub fn parse_shape(text: &str) -> Result<MoonPolyomino> {
    let mut rows = Vec::new();
    for (lineno, line) in content_lines(text) {
        let (left, right) = two_numbers(line, lineno, "<left> <right>")?;
        if left < 1 || left > right {
            return Err(Error::Parse(format!(
                "line {lineno}: invalid row interval [{left}, {right}]"
            )));
        }
        rows.push(RowInterval::new(left, right));
    }
    MoonPolyomino::new(rows)
}

pub fn format_shape(shape: &MoonPolyomino) -> String {
    let mut out = String::new();
    for row in shape.rows() {
        writeln!(out, "{} {}", row.left, row.right).unwrap();
    }
    out
}

pub fn parse_filling(text: &str, shape: &Arc<MoonPolyomino>) -> Result<Filling> {
    let mut cells = Vec::new();
    for (lineno, line) in content_lines(text) {
        cells.push(two_numbers(line, lineno, "<row> <col>")?);
    }
    Filling::new(Arc::clone(shape), &cells)
}

pub fn format_filling(filling: &Filling) -> String {
    let mut out = String::new();
    for (row, col) in filling.cells() {
        writeln!(out, "{row} {col}").unwrap();
    }
    out
}

pub fn parse_compositions(text: &str, cols: usize) -> Result<CompositionSeq> {
    let mut comps: Vec<Option<Vec<usize>>> = vec![None; cols];
    for (lineno, line) in content_lines(text) {
        let Some((head, rest)) = line.split_once(':') else {
            return Err(Error::Parse(format!(
                "line {lineno}: expected `col: parts...`, got `{line}`"
            )));
        };
        let col = parse_usize(head.trim(), lineno)?;
        if col < 1 || col > cols {
            return Err(Error::Parse(format!("line {lineno}: column {col} out of range")));
        }
        if comps[col - 1].is_some() {
            return Err(Error::Parse(format!("line {lineno}: column {col} repeated")));
        }
        let parts = rest
            .split_whitespace()
            .map(|t| parse_usize(t, lineno))
            .collect::<Result<Vec<usize>>>()?;
        if parts.is_empty() {
            return Err(Error::Parse(format!("line {lineno}: column {col} has no parts")));
        }
        comps[col - 1] = Some(parts);
    }
    let comps = comps
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| Error::Parse(format!("column {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(CompositionSeq { comps })
}

pub fn format_compositions(cs: &CompositionSeq) -> String {
    let mut out = String::new();
    for (i, comp) in cs.comps.iter().enumerate() {
        let parts: Vec<String> = comp.iter().map(|p| p.to_string()).collect();
        writeln!(out, "{}: {}", i + 1, parts.join(" ")).unwrap();
    }
    out
}

pub fn parse_matching(text: &str) -> Result<Matching> {
    let mut arcs = Vec::new();
    for (lineno, line) in content_lines(text) {
        arcs.push(two_numbers(line, lineno, "<left> <right>")?);
    }
    Matching::new(arcs)
}

pub fn format_matching(matching: &Matching) -> String {
    let mut out = String::new();
    for &(l, r) in matching.arcs() {
        writeln!(out, "{l} {r}").unwrap();
    }
    out
}

pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    let mut letters = Vec::new();
    for (lineno, line) in content_lines(text) {
        for token in line.split_whitespace() {
            letters.push(parse_usize(token, lineno)?);
        }
    }
    Ok(letters)
}

/// A vector given as comma- or whitespace-separated nonnegative integers.
pub fn parse_vector(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_usize(t, 1))
        .collect()
}
