//! Homogeneous forms with exact rational coefficients, the normalized
//! tensor-coefficient view, and linear changes of variables.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::rational::Rational;

/// A homogeneous polynomial of fixed degree in a fixed number of variables.
///
/// Coefficients are plain monomial coefficients a_gamma; zero coefficients
/// are never stored, so equality of maps is equality of forms. The all-zero
/// form is representable; rank operations reject it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricForm {
    nvars: usize,
    degree: u32,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl SymmetricForm {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        assert!(nvars >= 1);
        SymmetricForm {
            nvars,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a form from (monomial, coefficient) pairs, validating
    /// homogeneity and variable count.
    pub fn new<I>(nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut f = SymmetricForm::zero(nvars, degree);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "monomial has {} exponents, form has {} variables",
                    m.nvars(),
                    nvars
                )));
            }
            if m.degree() != degree {
                return Err(Error::NonHomogeneous(format!(
                    "monomial of degree {} in a degree-{} form",
                    m.degree(),
                    degree
                )));
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    /// The monomial c * x^exponents.
    pub fn monomial(nvars: usize, exponents: Vec<u32>, coeff: Rational) -> Self {
        let m = MultiIndex::new(exponents);
        let d = m.degree();
        SymmetricForm::new(nvars, d, [(m, coeff)]).expect("monomial is homogeneous")
    }

    /// The linear form c_0 x_0 + ... + c_n x_n.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut f = SymmetricForm::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0u32; n];
            e[i] = 1;
            f.add_term(MultiIndex::new(e), c.clone());
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    /// Terms in descending lex order (the canonical printing order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SymmetricForm) -> SymmetricForm {
        assert_eq!(self.nvars, other.nvars);
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymmetricForm) -> SymmetricForm {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> SymmetricForm {
        if c.is_zero() {
            return SymmetricForm::zero(self.nvars, self.degree);
        }
        SymmetricForm {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &SymmetricForm) -> SymmetricForm {
        assert_eq!(self.nvars, other.nvars);
        let mut out = SymmetricForm::zero(self.nvars, self.degree + other.degree);
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &other.coeffs {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SymmetricForm {
        if e == 0 {
            return SymmetricForm::monomial(self.nvars, vec![0; self.nvars], Rational::one());
        }
        let mut out = self.clone();
        for _ in 1..e {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> SymmetricForm {
        assert!(var < self.nvars);
        let deg = self.degree.saturating_sub(1);
        let mut out = SymmetricForm::zero(self.nvars, deg);
        for (m, c) in &self.coeffs {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.add_term(MultiIndex::new(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Iterated partial derivative by the monomial x^delta.
    pub fn diff_by(&self, delta: &MultiIndex) -> SymmetricForm {
        assert_eq!(delta.nvars(), self.nvars);
        let mut out = self.clone();
        for (var, &e) in delta.0.iter().enumerate() {
            for _ in 0..e {
                out = out.derivative(var);
            }
        }
        out
    }

    /// Applies the differential operator g(d/dx) to f; zero iff g is apolar to f.
    pub fn apply_operator(g: &SymmetricForm, f: &SymmetricForm) -> SymmetricForm {
        assert_eq!(g.nvars(), f.nvars());
        let deg = f.degree.saturating_sub(g.degree);
        let mut out = SymmetricForm::zero(f.nvars, deg);
        for (delta, c) in &g.coeffs {
            out = out.add(&f.diff_by(delta).scale(c));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.coeffs {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// Reinterprets the form in a larger variable set (extra variables unused).
    pub fn pad_to(&self, nvars: usize) -> SymmetricForm {
        assert!(nvars >= self.nvars);
        SymmetricForm {
            nvars,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, c)| (m.pad_to(nvars), c.clone()))
                .collect(),
        }
    }

    /// Drops trailing variables, which must not occur in any monomial.
    pub fn truncate_to(&self, nvars: usize) -> Result<SymmetricForm> {
        assert!(nvars >= 1);
        let mut coeffs = BTreeMap::new();
        for (m, c) in &self.coeffs {
            if m.0[nvars..].iter().any(|&e| e > 0) {
                return Err(Error::DimensionMismatch(format!(
                    "variable beyond x{} occurs in the form",
                    nvars - 1
                )));
            }
            coeffs.insert(MultiIndex::new(m.0[..nvars].to_vec()), c.clone());
        }
        Ok(SymmetricForm {
            nvars,
            degree: self.degree,
            coeffs,
        })
    }

    /// Largest variable index actually occurring, plus one (0 for the zero form).
    pub fn used_vars(&self) -> usize {
        let mut n = 0;
        for m in self.coeffs.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    n = n.max(i + 1);
                }
            }
        }
        n
    }

    /// Substitutes each variable of the form by the linear form given by the
    /// corresponding column of `change`; the result lives in `change.rows()`
    /// variables. Exact; degree is preserved.
    pub fn apply_linear_change(&self, change: &LinearChange) -> Result<SymmetricForm> {
        if change.cols() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "change has {} columns, form has {} variables",
                change.cols(),
                self.nvars
            )));
        }
        let m_out = change.rows();
        // Images of the input variables as linear forms in the output variables.
        let images: Vec<SymmetricForm> = (0..self.nvars)
            .map(|j| {
                let col: Vec<Rational> = (0..m_out).map(|i| change.matrix[i][j].clone()).collect();
                SymmetricForm::linear(&col)
            })
            .collect();
        // Power tables per variable, up to the largest exponent used.
        let mut max_exp = vec![0u32; self.nvars];
        for m in self.coeffs.keys() {
            for (j, &e) in m.0.iter().enumerate() {
                max_exp[j] = max_exp[j].max(e);
            }
        }
        let one = SymmetricForm::monomial(m_out, vec![0; m_out], Rational::one());
        let powers: Vec<Vec<SymmetricForm>> = images
            .iter()
            .zip(&max_exp)
            .map(|(l, &top)| {
                let mut tab = Vec::with_capacity(top as usize + 1);
                tab.push(one.clone());
                for e in 1..=top {
                    let prev = tab[(e - 1) as usize].clone();
                    tab.push(prev.mul(l));
                }
                tab
            })
            .collect();
        let mut out = SymmetricForm::zero(m_out, self.degree);
        for (m, c) in &self.coeffs {
            let mut term = one.scale(c);
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[j][e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Canonical text rendering; `parse_form` round-trips it.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = monomial_string(m);
            if abs.is_one() && !mono.is_empty() {
                out.push_str(&mono);
            } else if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

fn monomial_string(m: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{i}")),
            _ => parts.push(format!("x{i}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for SymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

/// Normalized tensor coefficients b_gamma = a_gamma / multinomial(d; gamma).
///
/// These are the coordinates of the tensor in the dual monomial basis; the
/// round trip with `SymmetricForm` is the exact identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorCoeffs {
    pub nvars: usize,
    pub degree: u32,
    pub entries: BTreeMap<MultiIndex, Rational>,
}

impl TensorCoeffs {
    pub fn from_form(f: &SymmetricForm) -> TensorCoeffs {
        TensorCoeffs {
            nvars: f.nvars(),
            degree: f.degree(),
            entries: f
                .terms()
                .map(|(m, a)| (m.clone(), a / m.multinomial_rat()))
                .collect(),
        }
    }

    pub fn to_form(&self) -> SymmetricForm {
        SymmetricForm::new(
            self.nvars,
            self.degree,
            self.entries
                .iter()
                .map(|(m, b)| (m.clone(), b * m.multinomial_rat())),
        )
        .expect("tensor entries are homogeneous")
    }

    pub fn entry(&self, m: &MultiIndex) -> Rational {
        self.entries.get(m).cloned().unwrap_or_else(Rational::zero)
    }
}

/// A linear substitution: column j is the image of input variable x_j as a
/// linear form in the output variables (one row per output variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChange {
    pub matrix: Vec<Vec<Rational>>,
}

impl LinearChange {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Self {
        assert!(!matrix.is_empty());
        let cols = matrix[0].len();
        assert!(matrix.iter().all(|r| r.len() == cols));
        LinearChange { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearChange {
            matrix: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix[0].len()
    }

    /// Matrix product; `a.compose(b)` acts like applying `b` first, then `a`.
    pub fn compose(&self, other: &LinearChange) -> LinearChange {
        assert_eq!(self.cols(), other.rows());
        let n = self.rows();
        let p = other.cols();
        let k = self.cols();
        let mut out = vec![vec![Rational::zero(); p]; n];
        for i in 0..n {
            for j in 0..p {
                let mut acc = Rational::zero();
                for t in 0..k {
                    acc += &self.matrix[i][t] * &other.matrix[t][j];
                }
                out[i][j] = acc;
            }
        }
        LinearChange::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i64};

    fn x0sq() -> SymmetricForm {
        SymmetricForm::monomial(1, vec![2], rat_i64(1))
    }

    #[test]
    fn tensor_roundtrip_examples() {
        // x0^2*x1 in degree 3: b_(2,1) = 1/3
        let f = SymmetricForm::monomial(2, vec![2, 1], rat_i64(1));
        let t = TensorCoeffs::from_form(&f);
        assert_eq!(t.entry(&MultiIndex::new(vec![2, 1])), rat(1, 3));
        assert_eq!(t.to_form(), f);

        // pure power: multinomial is 1
        let g = SymmetricForm::monomial(3, vec![5, 0, 0], rat_i64(1));
        let tg = TensorCoeffs::from_form(&g);
        assert_eq!(tg.entry(&MultiIndex::new(vec![5, 0, 0])), rat_i64(1));
        assert_eq!(tg.to_form(), g);
    }

    #[test]
    fn linear_change_binomial_expansion() {
        // x0^2 with x0 -> x0 + x1 gives x0^2 + 2 x0 x1 + x1^2
        let a = LinearChange::new(vec![vec![rat_i64(1)], vec![rat_i64(1)]]);
        let g = x0sq().apply_linear_change(&a).unwrap();
        let expected = SymmetricForm::new(
            2,
            2,
            vec![
                (MultiIndex::new(vec![2, 0]), rat_i64(1)),
                (MultiIndex::new(vec![1, 1]), rat_i64(2)),
                (MultiIndex::new(vec![0, 2]), rat_i64(1)),
            ],
        )
        .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn identity_change_is_noop() {
        let f = SymmetricForm::new(
            2,
            3,
            vec![
                (MultiIndex::new(vec![3, 0]), rat_i64(1)),
                (MultiIndex::new(vec![1, 2]), rat(2, 5)),
            ],
        )
        .unwrap();
        let id = LinearChange::identity(2);
        assert_eq!(f.apply_linear_change(&id).unwrap(), f);
    }

    #[test]
    fn operator_application() {
        // d^2/dx1^2 annihilates x0^3; xy is apolar to x^3+y^3
        let f = SymmetricForm::monomial(2, vec![3, 0], rat_i64(1));
        let g = SymmetricForm::monomial(2, vec![0, 2], rat_i64(1));
        assert!(SymmetricForm::apply_operator(&g, &f).is_zero());

        let fermat = SymmetricForm::monomial(2, vec![3, 0], rat_i64(1))
            .add(&SymmetricForm::monomial(2, vec![0, 3], rat_i64(1)));
        let xy = SymmetricForm::monomial(2, vec![1, 1], rat_i64(1));
        assert!(SymmetricForm::apply_operator(&xy, &fermat).is_zero());
    }

    #[test]
    fn canonical_print() {
        let f = SymmetricForm::new(
            2,
            3,
            vec![
                (MultiIndex::new(vec![1, 2]), rat_i64(2)),
                (MultiIndex::new(vec![3, 0]), rat_i64(1)),
            ],
        )
        .unwrap();
        assert_eq!(f.to_canonical_string(), "x0^3 + 2*x0*x1^2");
        let g = f.scale(&rat(-3, 2));
        assert_eq!(g.to_canonical_string(), "-3/2*x0^3 - 3*x0*x1^2");
        assert_eq!(SymmetricForm::zero(2, 3).to_canonical_string(), "0");
    }
}
