//! Exact bivariate polynomials in p and q with big-integer coefficients,
//! and the (p,q)-analog tower built on them: integers, factorials,
//! binomial/multinomial coefficients, and the closed-form product for the
//! joint (se, ne) distribution.

use crate::error::{Error, Result};
use crate::shape::MoonPolyomino;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

/// A polynomial in p and q with nonnegative integer coefficients. Zero
/// coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigUint>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn one() -> Self {
        BivarPoly::monomial(0, 0, BigUint::one())
    }

    pub fn monomial(p_exp: u32, q_exp: u32, coeff: BigUint) -> Self {
        let mut poly = BivarPoly::zero();
        poly.add_term(p_exp, q_exp, coeff);
        poly
    }

    pub fn add_term(&mut self, p_exp: u32, q_exp: u32, coeff: BigUint) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((p_exp, q_exp)).or_insert_with(BigUint::zero);
        *entry += coeff;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p_exp: u32, q_exp: u32) -> BigUint {
        self.terms.get(&(p_exp, q_exp)).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Exchanges the roles of p and q.
    pub fn swap_pq(&self) -> Self {
        let mut poly = BivarPoly::zero();
        for (&(a, b), c) in &self.terms {
            poly.add_term(b, a, c.clone());
        }
        poly
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap_pq()
    }

    /// Evaluation at p = q = 1: the number of objects counted.
    pub fn eval_at_one(&self) -> BigUint {
        self.terms.values().fold(BigUint::zero(), |acc, c| acc + c)
    }

    /// Terms in the canonical presentation order: p-exponent descending,
    /// then q-exponent ascending.
    pub fn sorted_terms(&self) -> Vec<(u32, u32, BigUint)> {
        let mut terms: Vec<_> = self.terms.iter().map(|(&(a, b), c)| (a, b, c.clone())).collect();
        terms.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        terms
    }

    /// Machine format: a list of `{i, j, coeff}` records in presentation
    /// order, with coefficients rendered as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(a, b, c)| {
                    serde_json::json!({ "i": a, "j": b, "coeff": c.to_string() })
                })
                .collect(),
        )
    }

    /// Exact division; the divisor must divide without remainder and the
    /// quotient must have nonnegative coefficients. Any failure signals an
    /// internal bug in the caller, never bad user input.
    pub fn divide_exact(&self, divisor: &BivarPoly) -> Result<BivarPoly> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        let mut rem: BTreeMap<(u32, u32), BigInt> = self
            .terms
            .iter()
            .map(|(&k, c)| (k, BigInt::from(c.clone())))
            .collect();
        let (&glead, gcoeff) = divisor.terms.iter().next_back().unwrap();
        let gcoeff = BigInt::from(gcoeff.clone());
        let mut quotient: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        while let Some((&(a, b), c)) = rem.iter().next_back() {
            let c = c.clone();
            if a < glead.0 || b < glead.1 {
                return Err(Error::InexactDivision);
            }
            let (qc, qr) = num_integer_div_rem(&c, &gcoeff);
            if !qr.is_zero() {
                return Err(Error::InexactDivision);
            }
            let t = (a - glead.0, b - glead.1);
            *quotient.entry(t).or_insert_with(BigInt::zero) += &qc;
            for (&(ga, gb), gc) in &divisor.terms {
                let key = (t.0 + ga, t.1 + gb);
                let entry = rem.entry(key).or_insert_with(BigInt::zero);
                *entry -= &qc * BigInt::from(gc.clone());
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
        }
        let mut out = BivarPoly::zero();
        for (k, c) in quotient {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                return Err(Error::InexactDivision);
            }
            out.add_term(k.0, k.1, c.to_biguint().unwrap());
        }
        Ok(out)
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

impl AddAssign<&BivarPoly> for BivarPoly {
    fn add_assign(&mut self, rhs: &BivarPoly) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl Add<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(a, b, c)| format!("{c} p^{a} q^{b}"))
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// The (p,q)-integer: `p^(r-1) + p^(r-2) q + ... + q^(r-1)`; zero for r = 0.
pub fn pq_integer(r: usize) -> BivarPoly {
    let mut poly = BivarPoly::zero();
    for i in 0..r {
        poly.add_term((r - 1 - i) as u32, i as u32, BigUint::one());
    }
    poly
}

/// The (p,q)-factorial: the product of the (p,q)-integers 1..=r.
pub fn pq_factorial(r: usize) -> BivarPoly {
    let mut poly = BivarPoly::one();
    for i in 1..=r {
        poly = &poly * &pq_integer(i);
    }
    poly
}

/// The (p,q)-Gaussian multinomial coefficient, computed as an exact
/// polynomial quotient of factorials.
pub fn pq_multinomial(n: usize, parts: &[usize]) -> Result<BivarPoly> {
    let total: usize = parts.iter().sum();
    if total != n {
        return Err(Error::InfeasibleSums(format!(
            "multinomial parts sum to {total}, expected {n}"
        )));
    }
    let mut poly = pq_factorial(n);
    for &part in parts {
        for i in 1..=part {
            poly = poly.divide_exact(&pq_integer(i))?;
        }
    }
    Ok(poly)
}

/// The (p,q)-Gaussian binomial coefficient.
pub fn pq_binomial(n: usize, k: usize) -> Result<BivarPoly> {
    if k > n {
        return Ok(BivarPoly::zero());
    }
    pq_multinomial(n, &[k, n - k])
}

/// The closed form of the joint (se, ne) distribution over all fillings
/// with the given sums: the product over columns of the Gaussian binomial
/// of the h-vector entry over the column sum.
pub fn product_formula(shape: &MoonPolyomino, e: &[usize], s: &[usize]) -> Result<BivarPoly> {
    let h = shape.h_vector(e, s)?;
    let mut poly = BivarPoly::one();
    for (j, &hj) in h.iter().enumerate() {
        poly = &poly * &pq_binomial(hj, s[j])?;
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pq_integers() {
        assert!(pq_integer(0).is_zero());
        assert_eq!(pq_integer(1), BivarPoly::one());
        assert_eq!(pq_integer(2).to_string(), "1 p^1 q^0 + 1 p^0 q^1");
        assert_eq!(pq_integer(3).to_string(), "1 p^2 q^0 + 1 p^1 q^1 + 1 p^0 q^2");
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(pq_binomial(2, 1).unwrap(), pq_integer(2));
        assert_eq!(pq_binomial(5, 5).unwrap(), BivarPoly::one());
        assert_eq!(pq_binomial(5, 0).unwrap(), BivarPoly::one());
        assert_eq!(pq_binomial(2, 3).unwrap(), BivarPoly::zero());
        assert_eq!(
            pq_binomial(4, 2).unwrap().to_string(),
            "1 p^4 q^0 + 1 p^3 q^1 + 2 p^2 q^2 + 1 p^1 q^3 + 1 p^0 q^4"
        );
    }

    /// Independent route: inversions and co-inversions over the six
    /// rearrangements of {1, 1, 2, 2}, counted pair by pair.
    #[test]
    fn binomial_matches_word_enumeration() {
        let mut brute = BivarPoly::zero();
        let mut count = 0;
        for bits in 0u32..16 {
            let word: Vec<usize> = (0..4).map(|i| if bits >> i & 1 == 1 { 2 } else { 1 }).collect();
            if word.iter().filter(|&&w| w == 1).count() != 2 {
                continue;
            }
            count += 1;
            let mut inv = 0;
            let mut coinv = 0;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    if word[i] > word[j] {
                        inv += 1;
                    } else if word[i] < word[j] {
                        coinv += 1;
                    }
                }
            }
            brute.add_term(inv, coinv, 1u32.into());
        }
        assert_eq!(count, 6);
        assert_eq!(brute, pq_binomial(4, 2).unwrap());
    }

    #[test]
    fn multinomial_symmetry_and_counts() {
        let m = pq_multinomial(4, &[2, 1, 1]).unwrap();
        assert!(m.is_symmetric());
        assert_eq!(m.eval_at_one(), 12u32.into());
        assert_eq!(pq_multinomial(6, &[2, 2, 2]).unwrap().eval_at_one(), 90u32.into());
        assert!(pq_multinomial(4, &[1, 1]).is_err());
    }

    #[test]
    fn division_failures_are_flagged() {
        assert_eq!(
            pq_integer(2).divide_exact(&pq_integer(3)).unwrap_err(),
            Error::InexactDivision
        );
        assert_eq!(
            BivarPoly::one().divide_exact(&BivarPoly::zero()).unwrap_err(),
            Error::InexactDivision
        );
    }

    #[test]
    fn product_formula_reference() {
        let shape = fixtures::reference_shape();
        let product =
            product_formula(&shape, &fixtures::reference_row_sums(), &fixtures::reference_col_sums()).unwrap();
        let three = pq_integer(3);
        let expect = &(&(&three * &three) * &three) * &pq_integer(2);
        assert_eq!(product, expect);
        assert_eq!(product.eval_at_one(), 54u32.into());
        assert!(product.is_symmetric());
    }

    #[test]
    fn product_formula_degenerate() {
        let shapes = fixtures::fixture_shapes();
        let one_by_one = &shapes[0];
        assert_eq!(product_formula(one_by_one, &[1], &[1]).unwrap(), BivarPoly::one());
        let all_zero = product_formula(&shapes[4], &[0, 0, 0], &[0, 0, 0]).unwrap();
        assert_eq!(all_zero, BivarPoly::one());
    }

    #[test]
    fn json_rendering_is_presentation_ordered() {
        let json = pq_binomial(2, 1).unwrap().to_json();
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            r#"[{"coeff":"1","i":1,"j":0},{"coeff":"1","i":0,"j":1}]"#
        );
        assert_eq!(BivarPoly::zero().to_string(), "0");
    }
}
