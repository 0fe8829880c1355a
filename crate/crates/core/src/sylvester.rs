//! Rank machinery for binary forms: the simplified symmetric rank
//! algorithm, the monomial rank law, and full Waring decompositions.
//!
//! The rank path is fully exact: the minimal split with a nontrivial apolar
//! kernel gives the border rank, and a squarefree test on the kernel
//! generator decides between rank r and rank d - r + 2 without ever
//! computing roots. Root extraction happens only when an explicit
//! decomposition is requested.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalecticant::{build_catalecticant, right_kernel_basis};
use crate::error::{Error, Result};
use crate::form::{SymmetricForm, TensorCoeffs};
use crate::multiindex::MultiIndex;
use crate::qmat::QMat;
use crate::rational::{rat_to_f64, Rational};
use crate::roots::{complex_roots, BigComplex};
use crate::univariate::{binary_squarefree, dehomogenize_binary};

/// Outcome of the rank algorithm on a binary form.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryRankReport {
    pub degree: u32,
    /// Minimal r with a nontrivial apolar kernel in degree r.
    pub border_rank: u32,
    pub rank: u32,
    /// Stratum label (border rank, rank); rank is either b or d - b + 2.
    pub stratum: (u32, u32),
    /// True exactly when border rank is 2 and rank is d: the form sits on a
    /// tangent line of the rational normal curve.
    pub tangential: bool,
    /// A generator of the apolar kernel at the minimal split.
    pub kernel_vector: SymmetricForm,
    /// Whether `kernel_vector` has d distinct projective roots.
    pub squarefree: bool,
    /// Kernel dimension at the minimal split. This is 1 except at the
    /// terminal split of even-degree forms of maximal border rank, where
    /// the two rank branches coincide and the kernel is 2-dimensional.
    pub kernel_dimension: usize,
}

/// The simplified rank algorithm: border rank, rank and stratum of a
/// nonzero binary form, with no root computation.
pub fn ssra(f: &SymmetricForm) -> Result<BinaryRankReport> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if f.nvars() != 2 {
        return Err(Error::WrongShape(format!(
            "rank algorithm needs a binary form, got {} variables",
            f.nvars()
        )));
    }
    let d = f.degree();
    for r in 1..=(d / 2 + 1) {
        let m = build_catalecticant(f, d - r, r)?;
        let kernel = right_kernel_basis(&m);
        if kernel.is_empty() {
            continue;
        }
        let kdim = kernel.len();
        if kdim == 1 {
            let q = kernel.into_iter().next().unwrap();
            let squarefree = binary_squarefree(&q)?;
            let rank = if squarefree { r } else { d - r + 2 };
            return Ok(BinaryRankReport {
                degree: d,
                border_rank: r,
                rank,
                stratum: (r, rank),
                tangential: r == 2 && rank == d,
                kernel_vector: q,
                squarefree,
                kernel_dimension: 1,
            });
        }
        // A kernel of dimension > 1 at the minimal split can only occur at
        // the terminal split r = d/2 + 1 of an even-degree form, where
        // r and d - r + 2 coincide and the rank is r on the nose.
        if d % 2 == 0 && r == d / 2 + 1 && kdim == 2 {
            let (q, squarefree) = pick_kernel_representative(&kernel);
            return Ok(BinaryRankReport {
                degree: d,
                border_rank: r,
                rank: r,
                stratum: (r, r),
                tangential: false,
                kernel_vector: q,
                squarefree,
                kernel_dimension: kdim,
            });
        }
        return Err(Error::InternalAssertion(format!(
            "kernel dimension {kdim} at minimal split r = {r}, degree {d}"
        )));
    }
    Err(Error::InternalAssertion(
        "no nontrivial kernel up to the terminal split".into(),
    ))
}

/// Prefers a squarefree element for reporting: basis vectors first, then a
/// few small deterministic combinations.
fn pick_kernel_representative(kernel: &[SymmetricForm]) -> (SymmetricForm, bool) {
    for q in kernel {
        if binary_squarefree(q).unwrap_or(false) {
            return (q.clone(), true);
        }
    }
    for k in 1..=8i64 {
        let mut q = kernel[0].clone();
        for (idx, g) in kernel.iter().enumerate().skip(1) {
            q = q.add(&g.scale(&Rational::from_integer((k + idx as i64).into())));
        }
        if binary_squarefree(&q).unwrap_or(false) {
            return (q, true);
        }
    }
    (kernel[0].clone(), false)
}

/// Rank and border rank of the monomial x^(d-s) y^s.
pub fn monomial_rank(d: u32, s: u32) -> Result<(u32, u32)> {
    if s > d {
        return Err(Error::WrongShape(format!("s = {s} exceeds d = {d}")));
    }
    let border = s.min(d - s) + 1;
    let rank = if s == 0 || s == d {
        1
    } else {
        (d - s + 1).max(s + 1)
    };
    Ok((rank, border))
}

/// A Waring decomposition f = sum of weight_j * l_j^d.
#[derive(Debug, Clone)]
pub enum Decomposition {
    Exact {
        weights: Vec<Rational>,
        /// Coefficient vectors of pairwise non-proportional linear forms.
        linear_forms: Vec<Vec<Rational>>,
    },
    Numeric {
        weights: Vec<BigComplex>,
        linear_forms: Vec<Vec<BigComplex>>,
        /// Max-norm coefficient distance between the reconstruction and the
        /// input, recomputed from scratch.
        residual: f64,
        precision_bits: u32,
    },
}

impl Decomposition {
    pub fn len(&self) -> usize {
        match self {
            Decomposition::Exact { weights, .. } => weights.len(),
            Decomposition::Numeric { weights, .. } => weights.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Decomposition::Exact { .. })
    }

    pub fn residual(&self) -> f64 {
        match self {
            Decomposition::Exact { .. } => 0.0,
            Decomposition::Numeric { residual, .. } => *residual,
        }
    }
}

/// Expands an exact decomposition back into a form (zero form when empty).
pub fn reconstruct_exact(dec: &Decomposition, nvars: usize, d: u32) -> Result<SymmetricForm> {
    let Decomposition::Exact {
        weights,
        linear_forms,
    } = dec
    else {
        return Err(Error::NumericMode);
    };
    let mut acc = SymmetricForm::zero(nvars, d);
    for (w, l) in weights.iter().zip(linear_forms) {
        if l.len() != nvars {
            return Err(Error::DimensionMismatch(format!(
                "linear form with {} coefficients in {} variables",
                l.len(),
                nvars
            )));
        }
        acc = acc.add(&SymmetricForm::linear(l).pow(d).scale(w));
    }
    Ok(acc)
}

/// Full Sylvester decomposition of a nonzero binary form.
///
/// Starting at the border rank, each apolar kernel is searched for a
/// squarefree element (basis vectors first, then seeded random integer
/// combinations with entries in [-10, 10], 50 attempts per split). Its
/// projective roots give the linear forms; the weights solve the
/// corresponding Vandermonde system. Roots are exact when the polynomial
/// splits over the rationals, otherwise complex floating-point values at
/// the requested precision.
pub fn sylvester_decompose(
    f: &SymmetricForm,
    seed: u64,
    precision_bits: u32,
) -> Result<Decomposition> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if f.nvars() != 2 {
        return Err(Error::WrongShape(format!(
            "decomposition needs a binary form, got {} variables",
            f.nvars()
        )));
    }
    let d = f.degree();
    let border = ssra(f)?.border_rank;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for r in border..=(d - border + 2) {
        if d - r + 1 == 0 {
            break;
        }
        let m = build_catalecticant(f, d - r, r)?;
        let kernel = right_kernel_basis(&m);
        if kernel.is_empty() {
            continue;
        }
        let mut candidates: Vec<SymmetricForm> = kernel.clone();
        if kernel.len() > 1 {
            for _ in 0..50 {
                let mut q = SymmetricForm::zero(2, r);
                for g in &kernel {
                    let c: i64 = rng.gen_range(-10..=10);
                    q = q.add(&g.scale(&Rational::from_integer(c.into())));
                }
                if !q.is_zero() {
                    candidates.push(q);
                }
            }
        }
        for q in candidates {
            if !binary_squarefree(&q)? {
                continue;
            }
            if let Some(dec) = decompose_from_kernel_element(f, &q, precision_bits)? {
                return Ok(dec);
            }
        }
    }
    Err(Error::InternalAssertion(
        "no squarefree apolar element found up to the guaranteed split".into(),
    ))
}

/// Builds the decomposition determined by a squarefree apolar form `q` of
/// degree r: roots of q are the points, weights solve the linear system on
/// the tensor coefficients. Returns None if the exact system is
/// inconsistent (cannot happen for a genuine apolar element).
fn decompose_from_kernel_element(
    f: &SymmetricForm,
    q: &SymmetricForm,
    precision_bits: u32,
) -> Result<Option<Decomposition>> {
    let d = f.degree();
    let r = q.degree();
    let p = dehomogenize_binary(q)?;
    let infinity_root = (r as usize) - p.degree().expect("q nonzero") == 1;
    let (rational, cofactor) = p.rational_roots();
    let t = TensorCoeffs::from_form(f);
    let b: Vec<Rational> = (0..=d)
        .map(|k| t.entry(&MultiIndex::new(vec![k, d - k])))
        .collect();

    if cofactor.degree() == Some(0) {
        // fully rational: exact Vandermonde solve on all d+1 equations
        let mut points: Vec<(Rational, Rational)> = rational
            .iter()
            .map(|t0| (t0.clone(), Rational::one()))
            .collect();
        if infinity_root {
            points.push((Rational::one(), Rational::zero()));
        }
        let v = QMat::from_fn(d as usize + 1, points.len(), |k, j| {
            let (alpha, beta) = &points[j];
            pow_rat(alpha, k as u32) * pow_rat(beta, d - k as u32)
        });
        let Some(weights) = v.solve(&b) else {
            return Ok(None);
        };
        let mut out_w = Vec::new();
        let mut out_l = Vec::new();
        for (w, (alpha, beta)) in weights.into_iter().zip(points) {
            if !w.is_zero() {
                out_w.push(w);
                out_l.push(vec![alpha, beta]);
            }
        }
        let dec = Decomposition::Exact {
            weights: out_w,
            linear_forms: out_l,
        };
        // exact reconstruction must reproduce the input on the nose
        if &reconstruct_exact(&dec, 2, d)? != f {
            return Err(Error::InternalAssertion(
                "exact decomposition failed to reconstruct the input".into(),
            ));
        }
        return Ok(Some(dec));
    }

    // numeric path: all finite roots of the squarefree dehomogenization
    let bits = precision_bits.max(64);
    let finite = complex_roots(&p, bits)?;
    let mut points: Vec<(BigComplex, BigComplex)> = finite
        .into_iter()
        .map(|z| (z, BigComplex::new(Rational::one(), Rational::zero())))
        .collect();
    if infinity_root {
        points.push((
            BigComplex::new(Rational::one(), Rational::zero()),
            BigComplex::zero(),
        ));
    }
    debug_assert_eq!(points.len(), r as usize);
    let rows = d as usize + 1;
    let cols = points.len();
    let mut matrix: Vec<Vec<BigComplex>> = (0..rows)
        .map(|k| {
            (0..cols)
                .map(|j| {
                    let (alpha, beta) = &points[j];
                    alpha.pow(k as u32, bits).mul(&beta.pow(d - k as u32, bits)).round(bits)
                })
                .collect()
        })
        .collect();
    let rhs: Vec<BigComplex> = b
        .iter()
        .map(|x| BigComplex::new(x.clone(), Rational::zero()))
        .collect();
    let weights = solve_complex_least_rows(&mut matrix, rhs.clone(), bits)
        .ok_or_else(|| Error::NumericRoots("singular Vandermonde system".into()))?;

    // recompute the residual from scratch on the plain coefficients
    let mut residual = Rational::zero();
    for k in 0..=d {
        let mut acc = BigComplex::zero();
        for (j, (alpha, beta)) in points.iter().enumerate() {
            let term = weights[j]
                .mul(&alpha.pow(k, bits))
                .mul(&beta.pow(d - k, bits))
                .round(bits);
            acc = acc.add(&term);
        }
        let mult = MultiIndex::new(vec![k, d - k]).multinomial_rat();
        let diff = acc.sub(&rhs[k as usize]).mul_rat(&mult);
        let n = diff.norm_sq();
        if n > residual {
            residual = n;
        }
    }
    let residual = rat_to_f64(&residual).sqrt();
    Ok(Some(Decomposition::Numeric {
        weights,
        linear_forms: points.into_iter().map(|(a, b)| vec![a, b]).collect(),
        residual,
        precision_bits: bits,
    }))
}

fn pow_rat(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Gaussian elimination with partial pivoting on an overdetermined but
/// consistent complex system; returns None on rank deficiency.
fn solve_complex_least_rows(
    matrix: &mut [Vec<BigComplex>],
    mut rhs: Vec<BigComplex>,
    bits: u32,
) -> Option<Vec<BigComplex>> {
    let rows = matrix.len();
    let cols = matrix.first()?.len();
    let mut pivot_rows = Vec::with_capacity(cols);
    let mut used = vec![false; rows];
    for c in 0..cols {
        // best remaining pivot by magnitude
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in matrix.iter().enumerate() {
            if used[i] {
                continue;
            }
            let mag = row[c].norm_sq();
            if mag.is_zero() {
                continue;
            }
            if best.as_ref().map(|(_, m)| &mag > m).unwrap_or(true) {
                best = Some((i, mag));
            }
        }
        let (p, _) = best?;
        used[p] = true;
        pivot_rows.push(p);
        let inv = matrix[p][c].clone();
        for i in 0..rows {
            if used[i] && i != p || matrix[i][c].is_zero() {
                continue;
            }
            if i == p {
                continue;
            }
            let factor = matrix[i][c].div(&inv).round(bits);
            for j in c..cols {
                let sub = factor.mul(&matrix[p][j]).round(bits);
                matrix[i][j] = matrix[i][j].sub(&sub);
            }
            let sub = factor.mul(&rhs[p]).round(bits);
            rhs[i] = rhs[i].sub(&sub);
        }
    }
    // back-substitute over the pivot rows
    let mut x = vec![BigComplex::zero(); cols];
    for c in (0..cols).rev() {
        let p = pivot_rows[c];
        let mut acc = rhs[p].clone();
        for j in c + 1..cols {
            let sub = matrix[p][j].mul(&x[j]).round(bits);
            acc = acc.sub(&sub);
        }
        x[c] = acc.div(&matrix[p][c]).round(bits);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_form;
    use crate::rational::{rat, rat_i64};

    #[test]
    fn monomial_law() {
        assert_eq!(monomial_rank(5, 2).unwrap(), (4, 3));
        assert_eq!(monomial_rank(7, 0).unwrap(), (1, 1));
        assert_eq!(monomial_rank(8, 4).unwrap(), (5, 5));
        assert_eq!(monomial_rank(3, 1).unwrap(), (3, 2));
        assert!(monomial_rank(3, 4).is_err());
    }

    #[test]
    fn ssra_tangent_monomial() {
        let f = parse_form("x^2*y").unwrap();
        let rep = ssra(&f).unwrap();
        assert_eq!(rep.border_rank, 2);
        assert_eq!(rep.rank, 3);
        assert_eq!(rep.stratum, (2, 3));
        assert!(rep.tangential);
        assert!(!rep.squarefree);
        assert_eq!(rep.kernel_dimension, 1);
    }

    #[test]
    fn ssra_fermat_pair() {
        let f = parse_form("x^3 + y^3").unwrap();
        let rep = ssra(&f).unwrap();
        assert_eq!(rep.border_rank, 2);
        assert_eq!(rep.rank, 2);
        assert!(!rep.tangential);
        assert!(rep.squarefree);
    }

    #[test]
    fn ssra_quintic_monomial() {
        let f = parse_form("x^3*y^2").unwrap();
        let rep = ssra(&f).unwrap();
        assert_eq!(rep.border_rank, 3);
        assert_eq!(rep.rank, 4);
        assert_eq!(rep.stratum, (3, 4));
    }

    #[test]
    fn ssra_pure_power_and_linear() {
        let f = parse_form("x0^6").unwrap().pad_to(2);
        let rep = ssra(&f).unwrap();
        assert_eq!((rep.border_rank, rep.rank), (1, 1));
        let l = parse_form("x0 + 2*x1").unwrap();
        let rep = ssra(&l).unwrap();
        assert_eq!((rep.border_rank, rep.rank), (1, 1));
    }

    #[test]
    fn ssra_even_terminal_case() {
        // generic quartic: border 3, rank 3, kernel dimension 2 at r = 3
        let f = parse_form("x^4 + x^3*y + 3*x*y^3 + y^4 + x^2*y^2").unwrap();
        let rep = ssra(&f).unwrap();
        assert_eq!(rep.border_rank, 3);
        assert_eq!(rep.rank, 3);
        assert_eq!(rep.kernel_dimension, 2);
        // generic quadric: rank 2
        let g = parse_form("x*y").unwrap();
        let rep = ssra(&g).unwrap();
        assert_eq!((rep.border_rank, rep.rank), (2, 2));
        assert_eq!(rep.kernel_dimension, 2);
    }

    #[test]
    fn ssra_rejects_zero_and_wrong_shape() {
        assert!(matches!(
            ssra(&SymmetricForm::zero(2, 3)),
            Err(Error::ZeroForm)
        ));
        assert!(matches!(
            ssra(&parse_form("x*y*z").unwrap()),
            Err(Error::WrongShape(_))
        ));
    }

    #[test]
    fn decompose_fermat_exactly() {
        let f = parse_form("x^3 + y^3").unwrap();
        let dec = sylvester_decompose(&f, 7, 128).unwrap();
        assert!(dec.is_exact());
        assert_eq!(dec.len(), 2);
        assert_eq!(&reconstruct_exact(&dec, 2, 3).unwrap(), &f);
    }

    #[test]
    fn decompose_xy_exactly() {
        // x0 x1 = 1/4 (x0+x1)^2 - 1/4 (x0-x1)^2
        let f = parse_form("x0*x1").unwrap();
        let dec = sylvester_decompose(&f, 1, 128).unwrap();
        assert!(dec.is_exact());
        assert_eq!(dec.len(), 2);
        let g = reconstruct_exact(&dec, 2, 2).unwrap();
        assert_eq!(g, f);
        if let Decomposition::Exact { weights, .. } = &dec {
            let mut w = weights.clone();
            w.sort();
            assert_eq!(w, vec![rat(-1, 4), rat(1, 4)]);
        }
    }

    #[test]
    fn decompose_tangent_monomial() {
        let f = parse_form("x^2*y").unwrap();
        let dec = sylvester_decompose(&f, 42, 128).unwrap();
        assert_eq!(dec.len(), 3);
        assert!(dec.residual() < 1e-10);
        if let Decomposition::Exact { .. } = dec {
            assert_eq!(&reconstruct_exact(&dec, 2, 3).unwrap(), &f);
        }
    }

    #[test]
    fn decompose_sum_of_powers() {
        // rank-4 septic from 4 distinct powers
        let l1 = parse_form("x0 + x1").unwrap();
        let l2 = parse_form("x0 - x1").unwrap();
        let l3 = parse_form("x0 + 2*x1").unwrap();
        let l4 = parse_form("x0 - 3*x1").unwrap();
        let f = l1
            .pow(7)
            .add(&l2.pow(7).scale(&rat_i64(2)))
            .add(&l3.pow(7).scale(&rat(-1, 2)))
            .add(&l4.pow(7));
        let rep = ssra(&f).unwrap();
        assert_eq!((rep.border_rank, rep.rank), (4, 4));
        let dec = sylvester_decompose(&f, 3, 128).unwrap();
        assert!(dec.is_exact());
        assert_eq!(dec.len(), 4);
        assert_eq!(&reconstruct_exact(&dec, 2, 7).unwrap(), &f);
    }

    #[test]
    fn ssra_invariant_under_coordinate_change() {
        let f = parse_form("x0^4*x1 + 2*x1^5").unwrap();
        let a = crate::form::LinearChange::new(vec![
            vec![rat_i64(2), rat_i64(1)],
            vec![rat_i64(1), rat_i64(1)],
        ]);
        let g = f.apply_linear_change(&a).unwrap();
        let rf = ssra(&f).unwrap();
        let rg = ssra(&g).unwrap();
        assert_eq!(rf.border_rank, rg.border_rank);
        assert_eq!(rf.rank, rg.rank);
        assert_eq!(rf.stratum, rg.stratum);
        assert_eq!(rf.tangential, rg.tangential);
    }
}
