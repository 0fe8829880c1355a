//! Exponent tuples of monomials.

use crate::rational::{factorial, Integer, Rational};

/// Exponent tuple of a monomial; one entry per variable.
///
/// Tuples compare lexicographically, so `x0^2 > x0*x1 > x1^2` under the
/// derived `Ord` reversed (larger first-exponent wins in descending order).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Component-wise sum.
    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.nvars(), other.nvars());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Component-wise difference, if self >= other everywhere.
    pub fn checked_div(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Reinterprets the monomial in a larger variable set, padding with zeros.
    pub fn pad_to(&self, nvars: usize) -> MultiIndex {
        assert!(nvars >= self.nvars());
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        MultiIndex(e)
    }

    /// multinomial(d; e0, ..., en) = d! / (e0! ... en!) where d = |self|.
    pub fn multinomial(&self) -> Integer {
        let mut num = factorial(self.degree());
        for &e in &self.0 {
            num /= factorial(e);
        }
        num
    }

    pub fn multinomial_rat(&self) -> Rational {
        Rational::from_integer(self.multinomial())
    }
}

/// All degree-`d` monomials in `nvars` variables, in descending lex order
/// (the order used for matrix row/column labels and printing).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut out, &mut current, 0, d);
    out
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn enumeration_is_descending_lex() {
        let mons = monomials_of_degree(3, 2);
        let exps: Vec<Vec<u32>> = mons.iter().map(|m| m.0.clone()).collect();
        assert_eq!(
            exps,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2],
            ]
        );
        assert_eq!(monomials_of_degree(2, 5).len(), 6);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
    }

    #[test]
    fn multinomials() {
        assert_eq!(MultiIndex::new(vec![2, 1]).multinomial(), Integer::from(3));
        assert_eq!(
            MultiIndex::new(vec![1, 1, 2]).multinomial(),
            Integer::from(12)
        );
        assert!(MultiIndex::new(vec![4, 0, 0]).multinomial().is_one());
    }
}
