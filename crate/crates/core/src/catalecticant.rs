//! Catalecticant matrices of a form.
//!
//! `M[i][j]` uses the differentiation pairing: the entry at (row gamma,
//! column delta) is the coefficient of x^gamma in the iterated partial
//! derivative of f by x^delta. Its right kernel is therefore exactly the
//! degree-j piece of the apolar ideal {g : g(d/dx) f = 0}. In the binary
//! case every row is a scalar multiple of the corresponding Hankel row of
//! the normalized tensor coefficients, so ranks and kernels agree with the
//! classical Hankel matrix.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::{SymmetricForm, TensorCoeffs};
use crate::multiindex::{monomials_of_degree, MultiIndex};
use crate::qmat::QMat;
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct CatalecticantMatrix {
    pub i: u32,
    pub j: u32,
    /// Degree-i monomials in descending lex order.
    pub row_labels: Vec<MultiIndex>,
    /// Degree-j monomials in descending lex order.
    pub col_labels: Vec<MultiIndex>,
    pub matrix: QMat,
}

/// Builds M_{i,j}(f) with i + j = deg f.
pub fn build_catalecticant(f: &SymmetricForm, i: u32, j: u32) -> Result<CatalecticantMatrix> {
    if i + j != f.degree() {
        return Err(Error::InvalidSplit(format!(
            "{} + {} != degree {}",
            i,
            j,
            f.degree()
        )));
    }
    let n = f.nvars();
    let row_labels = monomials_of_degree(n, i);
    let col_labels = monomials_of_degree(n, j);
    let matrix = QMat::from_fn(row_labels.len(), col_labels.len(), |r, c| {
        let gamma = &row_labels[r];
        let delta = &col_labels[c];
        let alpha = gamma.mul(delta);
        let a = f.coeff(&alpha);
        if a.is_zero() {
            return Rational::zero();
        }
        // coefficient of x^gamma in d^delta f = a_{gamma+delta} * prod falling(gamma_t+delta_t, delta_t)
        let mut factor = Rational::one();
        for (g, d) in gamma.0.iter().zip(&delta.0) {
            for k in (g + 1)..=(g + d) {
                factor *= Rational::from_integer(k.into());
            }
        }
        a * factor
    });
    Ok(CatalecticantMatrix {
        i,
        j,
        row_labels,
        col_labels,
        matrix,
    })
}

/// Exact rank over the rationals.
pub fn rank_exact(m: &CatalecticantMatrix) -> usize {
    m.matrix.rank()
}

/// Basis of the degree-j apolar forms {g : g(d/dx) f = 0}.
pub fn right_kernel_basis(m: &CatalecticantMatrix) -> Vec<SymmetricForm> {
    let n = m.col_labels.first().map(|l| l.nvars()).unwrap_or(1);
    m.matrix
        .right_kernel()
        .into_iter()
        .map(|v| {
            SymmetricForm::new(
                n,
                m.j,
                m.col_labels
                    .iter()
                    .cloned()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero()),
            )
            .expect("kernel vectors are homogeneous by construction")
        })
        .collect()
}

/// Catalecticant rank of the split (i, j); convenience wrapper.
pub fn catalecticant_rank(f: &SymmetricForm, i: u32, j: u32) -> Result<usize> {
    Ok(rank_exact(&build_catalecticant(f, i, j)?))
}

/// The classical (d-r+1) x (r+1) Hankel matrix of a binary form, built from
/// the normalized tensor coefficients b_k indexed by the x0-exponent.
pub fn hankel_from_tensor_coeffs(f: &SymmetricForm, r: u32) -> Result<QMat> {
    if f.nvars() != 2 {
        return Err(Error::WrongShape(format!(
            "Hankel matrix needs a binary form, got {} variables",
            f.nvars()
        )));
    }
    let d = f.degree();
    if r > d {
        return Err(Error::InvalidSplit(format!("r = {r} exceeds degree {d}")));
    }
    let t = TensorCoeffs::from_form(f);
    let b: Vec<Rational> = (0..=d)
        .map(|k| t.entry(&MultiIndex::new(vec![k, d - k])))
        .collect();
    Ok(QMat::from_fn(
        (d - r + 1) as usize,
        (r + 1) as usize,
        |i, h| b[i + h].clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_form;
    use crate::rational::{rat, rat_i64};

    #[test]
    fn diagonal_split_of_sum_of_squares() {
        let f = parse_form("x0^2 + x1^2").unwrap();
        let m = build_catalecticant(&f, 1, 1).unwrap();
        assert_eq!(m.matrix.at(0, 0), &rat_i64(2));
        assert_eq!(m.matrix.at(0, 1), &rat_i64(0));
        assert_eq!(m.matrix.at(1, 0), &rat_i64(0));
        assert_eq!(m.matrix.at(1, 1), &rat_i64(2));
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn monomial_quartic_rank() {
        let f = parse_form("x0^3*x1").unwrap();
        let m = build_catalecticant(&f, 2, 2).unwrap();
        assert_eq!(rank_exact(&m), 2);
        // Hankel pattern of the tensor coefficients is (0,0,0,1/4,0).
        let h = hankel_from_tensor_coeffs(&f, 2).unwrap();
        assert_eq!(h.at(1, 2), &rat(1, 4));
        assert_eq!(h.rank(), 2);
    }

    #[test]
    fn pure_powers_have_rank_one() {
        let l = parse_form("x0 + 2*x1 - x2").unwrap();
        let f = l.pow(5);
        for i in 1..5 {
            assert_eq!(catalecticant_rank(&f, i, 5 - i).unwrap(), 1);
        }
    }

    #[test]
    fn invalid_split_is_rejected() {
        let f = parse_form("x0^2 + x1^2").unwrap();
        assert!(matches!(
            build_catalecticant(&f, 2, 2),
            Err(Error::InvalidSplit(_))
        ));
    }

    #[test]
    fn fermat_cubic_middle_rank() {
        let f = parse_form("x^3 + y^3 + z^3").unwrap();
        assert_eq!(catalecticant_rank(&f, 1, 2).unwrap(), 3);
    }

    #[test]
    fn paper_quartic_rank_four() {
        let f = parse_form("x0*x1*x2^2").unwrap();
        assert_eq!(catalecticant_rank(&f, 2, 2).unwrap(), 4);
    }

    #[test]
    fn kernel_of_binary_cube() {
        let f = parse_form("x0^3").unwrap().pad_to(2);
        let m = build_catalecticant(&f, 2, 1).unwrap();
        let kernel = right_kernel_basis(&m);
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], parse_form("x1").unwrap());
    }

    #[test]
    fn kernel_of_fermat_cubic() {
        let f = parse_form("x^3 + y^3 + z^3").unwrap();
        let m = build_catalecticant(&f, 1, 2).unwrap();
        let kernel = right_kernel_basis(&m);
        assert_eq!(kernel.len(), 3);
        let expected = ["x0*x1", "x0*x2", "x1*x2"];
        for g in &kernel {
            assert!(expected.contains(&g.to_canonical_string().as_str()));
            assert!(SymmetricForm::apply_operator(g, &f).is_zero());
        }
    }

    #[test]
    fn generic_binary_has_no_degree_one_apolar_form() {
        let f = parse_form("x0^4 + x0^3*x1 + 3*x1^4").unwrap();
        let m = build_catalecticant(&f, 3, 1).unwrap();
        assert!(right_kernel_basis(&m).is_empty());
    }

    #[test]
    fn kernel_elements_annihilate_the_form() {
        let f = parse_form("x0^4*x1 + 2*x1^5 - x0^2*x1^3").unwrap();
        for r in 1..=4u32 {
            let m = build_catalecticant(&f, 5 - r, r).unwrap();
            for g in right_kernel_basis(&m) {
                assert!(SymmetricForm::apply_operator(&g, &f).is_zero());
            }
        }
    }

    #[test]
    fn binary_rows_are_scaled_hankel_rows() {
        let f = parse_form("x0^5 + 3*x0^3*x1^2 - 2/7*x1^5 + x0*x1^4").unwrap();
        for r in 1..=4u32 {
            let m = build_catalecticant(&f, 5 - r, r).unwrap();
            let h = hankel_from_tensor_coeffs(&f, r).unwrap();
            assert_eq!(m.matrix.rank(), h.rank());
            // row for gamma=(g0,g1) matches Hankel row g0 up to one scalar,
            // with columns reversed (lex puts x0^r first, Hankel puts b_{i+0} first)
            for (rr, gamma) in m.row_labels.iter().enumerate() {
                let hrow = gamma.0[0] as usize;
                let mut ratio: Option<Rational> = None;
                for (cc, delta) in m.col_labels.iter().enumerate() {
                    let hcol = delta.0[0] as usize;
                    let lhs = m.matrix.at(rr, cc);
                    let rhs = h.at(hrow, hcol);
                    match (lhs.is_zero(), rhs.is_zero()) {
                        (true, true) => {}
                        (false, false) => {
                            let q = lhs / rhs;
                            match &ratio {
                                None => ratio = Some(q),
                                Some(r0) => assert_eq!(r0, &q),
                            }
                        }
                        _ => panic!("zero pattern mismatch"),
                    }
                }
            }
        }
    }

    #[test]
    fn rank_is_split_symmetric() {
        let f = parse_form("x0^2*x1*x2 + x1^4 - 3*x0*x2^3").unwrap();
        assert_eq!(
            catalecticant_rank(&f, 1, 3).unwrap(),
            catalecticant_rank(&f, 3, 1).unwrap()
        );
        assert_eq!(
            catalecticant_rank(&f, 2, 2).unwrap(),
            catalecticant_rank(&f, 2, 2).unwrap()
        );
    }
}
