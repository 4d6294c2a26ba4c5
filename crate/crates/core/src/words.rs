//! Words on an alphabet [m] viewed as fillings of a rectangle: inversions
//! and co-inversions specialize the southeast and northeast chain counts,
//! and the four mixed statistics become pair counts filtered by rows or
//! letters.

use crate::error::{Error, Result};
use crate::filling::{ColSubset, Filling, RowSubset};
use crate::shape::{MoonPolyomino, RowInterval};
use std::sync::Arc;

/// A word `w_1 .. w_n` over the alphabet `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<usize>,
    alphabet: usize,
}

impl Word {
    pub fn new(letters: Vec<usize>, alphabet: usize) -> Result<Self> {
        for (pos, &w) in letters.iter().enumerate() {
            if w < 1 || w > alphabet {
                return Err(Error::LetterOutOfRange { pos: pos + 1, letter: w, limit: alphabet });
            }
        }
        Ok(Word { letters, alphabet })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// Pairs `i < j` with `w_i > w_j`.
    pub fn inv(&self) -> usize {
        self.count_pairs(|wi, wj| wi > wj)
    }

    /// Pairs `i < j` with `w_i < w_j`.
    pub fn coinv(&self) -> usize {
        self.count_pairs(|wi, wj| wi < wj)
    }

    fn count_pairs(&self, pred: impl Fn(usize, usize) -> bool) -> usize {
        let n = self.letters.len();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if pred(self.letters[i], self.letters[j]) {
                    count += 1;
                }
            }
        }
        count
    }

    /// The rectangle filling with a 1 in row `n + 1 - i`, column `w_i`.
    pub fn to_filling(&self) -> Filling {
        let n = self.letters.len();
        let rows = (0..n).map(|_| RowInterval::new(1, self.alphabet)).collect();
        let shape = Arc::new(MoonPolyomino::new(rows).expect("rectangles are moon polyominoes"));
        let mut ones = vec![None; n];
        for (i, &w) in self.letters.iter().enumerate() {
            ones[n - 1 - i] = Some(w);
        }
        Filling::from_rows(shape, ones).expect("letters lie in the alphabet")
    }

    /// Top-mixed statistic with the anchor set given as filling rows
    /// (position `i` of the word sits in row `n + 1 - i`).
    pub fn alpha_rows(&self, s: &RowSubset) -> usize {
        let n = self.letters.len();
        self.mixed(|i, j, wi, wj| {
            let _ = (i, wi);
            if wi < wj {
                s.contains(n - j)
            } else {
                !s.contains(n - j)
            }
        })
    }

    /// Bottom-mixed statistic over filling rows.
    pub fn beta_rows(&self, s: &RowSubset) -> usize {
        let n = self.letters.len();
        self.mixed(|i, j, wi, wj| {
            let _ = (j, wj);
            if wi < wj {
                s.contains(n - i)
            } else {
                !s.contains(n - i)
            }
        })
    }

    fn positions_to_rows(&self, positions: &[usize]) -> Result<RowSubset> {
        let n = self.letters.len();
        let rows: Vec<usize> = positions
            .iter()
            .map(|&p| {
                if p < 1 || p > n {
                    Err(Error::IndexOutOfRange { what: "word position", index: p, limit: n })
                } else {
                    Ok(n + 1 - p)
                }
            })
            .collect::<Result<_>>()?;
        RowSubset::new(n, &rows)
    }

    /// Top-mixed statistic with the anchor set given as word positions.
    pub fn alpha_positions(&self, positions: &[usize]) -> Result<usize> {
        Ok(self.alpha_rows(&self.positions_to_rows(positions)?))
    }

    /// Bottom-mixed statistic with the anchor set given as word positions.
    pub fn beta_positions(&self, positions: &[usize]) -> Result<usize> {
        Ok(self.beta_rows(&self.positions_to_rows(positions)?))
    }

    /// Left-mixed statistic over letters.
    pub fn gamma(&self, t: &ColSubset) -> usize {
        self.mixed(|_, _, wi, wj| if wi < wj { t.contains(wi) } else { !t.contains(wj) })
    }

    /// Right-mixed statistic over letters.
    pub fn delta(&self, t: &ColSubset) -> usize {
        self.mixed(|_, _, wi, wj| if wi < wj { t.contains(wj) } else { !t.contains(wi) })
    }

    /// Counts pairs `i < j` with distinct letters passing the predicate,
    /// which receives 0-based positions and the two letters.
    fn mixed(&self, pred: impl Fn(usize, usize, usize, usize) -> bool) -> usize {
        let n = self.letters.len();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let (wi, wj) = (self.letters[i], self.letters[j]);
                if wi != wj && pred(i, j, wi, wj) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Replaces every letter `w` with `m + 1 - w`.
    pub fn complement_letters(&self) -> Word {
        Word {
            letters: self.letters.iter().map(|&w| self.alphabet + 1 - w).collect(),
            alphabet: self.alphabet,
        }
    }
}

/// All rearrangements of the multiset with `counts[j - 1]` copies of the
/// letter `j`, in lexicographic order.
pub fn rearrangements(counts: &[usize]) -> Vec<Word> {
    let alphabet = counts.len();
    let total: usize = counts.iter().sum();
    let mut out = Vec::new();
    let mut counts = counts.to_vec();
    let mut prefix = Vec::with_capacity(total);
    fn go(counts: &mut [usize], prefix: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == total {
            out.push(prefix.clone());
            return;
        }
        for j in 0..counts.len() {
            if counts[j] > 0 {
                counts[j] -= 1;
                prefix.push(j + 1);
                go(counts, prefix, total, out);
                prefix.pop();
                counts[j] += 1;
            }
        }
    }
    let mut raw = Vec::new();
    go(&mut counts, &mut prefix, total, &mut raw);
    for letters in raw {
        out.push(Word { letters, alphabet });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filling::StatKind;

    fn word(letters: &[usize], m: usize) -> Word {
        Word::new(letters.to_vec(), m).unwrap()
    }

    #[test]
    fn inversions_of_small_words() {
        assert_eq!((word(&[1, 1, 1], 3).inv(), word(&[1, 1, 1], 3).coinv()), (0, 0));
        assert_eq!((word(&[1, 2, 1, 2], 2).inv(), word(&[1, 2, 1, 2], 2).coinv()), (1, 3));
        assert_eq!(word(&[1, 2, 3, 3], 3).inv(), 0);
        assert_eq!(word(&[2, 1], 2).inv(), 1);
    }

    #[test]
    fn letter_bounds_are_checked() {
        assert!(Word::new(vec![1, 4], 3).is_err());
        assert!(Word::new(vec![0], 3).is_err());
    }

    #[test]
    fn filling_of_two_one() {
        let f = word(&[2, 1], 2).to_filling();
        assert_eq!(f.cells(), vec![(1, 1), (2, 2)]);
        assert_eq!(f.ne_se(), (0, 1));
    }

    #[test]
    fn statistics_match_the_filling_on_all_small_words() {
        let m = 3;
        for len in 0..=4usize {
            let mut stack = vec![vec![]];
            for _ in 0..len {
                stack = stack
                    .into_iter()
                    .flat_map(|w: Vec<usize>| {
                        (1..=m).map(move |l| {
                            let mut w = w.clone();
                            w.push(l);
                            w
                        })
                    })
                    .collect();
            }
            for letters in stack {
                let w = Word::new(letters, m).unwrap();
                if w.is_empty() {
                    continue;
                }
                let f = w.to_filling();
                let (ne, se) = f.ne_se();
                assert_eq!((w.inv(), w.coinv()), (se, ne), "word {:?}", w.letters());
                let n = w.len();
                for bits in 0..1usize << n {
                    let rows: Vec<usize> = (1..=n).filter(|i| bits >> (i - 1) & 1 == 1).collect();
                    let s = RowSubset::new(n, &rows).unwrap();
                    assert_eq!(w.alpha_rows(&s), f.top_mixed(&s));
                    assert_eq!(w.beta_rows(&s), f.bottom_mixed(&s));
                }
                for bits in 0..1usize << m {
                    let cols: Vec<usize> = (1..=m).filter(|j| bits >> (j - 1) & 1 == 1).collect();
                    let t = ColSubset::new(m, &cols).unwrap();
                    assert_eq!(w.gamma(&t), f.left_mixed(&t));
                    assert_eq!(w.delta(&t), f.right_mixed(&t));
                }
            }
        }
    }

    #[test]
    fn empty_subset_reduces_to_inversions() {
        let w = word(&[2, 3, 1, 2], 3);
        assert_eq!(w.alpha_rows(&RowSubset::empty(4)), w.inv());
        assert_eq!(w.gamma(&ColSubset::empty(3)), w.inv());
        assert_eq!(w.delta(&ColSubset::empty(3)), w.inv());
        assert_eq!(w.alpha_positions(&[]).unwrap(), w.inv());
        assert_eq!(w.beta_positions(&[]).unwrap(), w.inv());
        assert!(w.alpha_positions(&[5]).is_err());
    }

    #[test]
    fn position_and_row_entry_points_agree() {
        let w = word(&[2, 3, 1, 2], 3);
        // Position p sits in row n + 1 - p of the filling.
        assert_eq!(w.alpha_positions(&[1, 2]).unwrap(), w.alpha_rows(&RowSubset::new(4, &[4, 3]).unwrap()));
        assert_eq!(w.beta_positions(&[4]).unwrap(), w.beta_rows(&RowSubset::new(4, &[1]).unwrap()));
    }

    #[test]
    fn complement_map_swaps_the_alpha_pair() {
        for w in rearrangements(&[2, 1, 1]) {
            let c = w.complement_letters();
            let n = w.len();
            for bits in 0..1usize << n {
                let rows: Vec<usize> = (1..=n).filter(|i| bits >> (i - 1) & 1 == 1).collect();
                let s = RowSubset::new(n, &rows).unwrap();
                assert_eq!(w.alpha_rows(&s), c.alpha_rows(&s.complement()));
            }
        }
    }

    #[test]
    fn rearrangement_counts() {
        assert_eq!(rearrangements(&[2, 1, 1]).len(), 12);
        assert_eq!(rearrangements(&[2, 2]).len(), 6);
        assert_eq!(rearrangements(&[0, 3]).len(), 1);
    }

    #[test]
    fn word_distribution_matches_rectangle_distribution() {
        // Same objects two ways: words of the multiset, and fillings of the
        // rectangle with the matching sums.
        let counts = [2usize, 1, 1];
        let words = rearrangements(&counts);
        let shape = words[0].to_filling();
        let mut from_words = crate::poly::BivarPoly::zero();
        for w in &words {
            from_words.add_term(w.inv() as u32, w.coinv() as u32, 1u32.into());
        }
        let direct = crate::filling::distribution(
            shape.shape_arc(),
            &[1, 1, 1, 1],
            &counts,
            StatKind::Top,
            &[],
        )
        .unwrap();
        assert_eq!(from_words, direct);
    }
}
