//! Univariate polynomials over the rationals: gcd, squarefree tests and
//! exact rational root extraction. Binary forms dehomogenize here; the
//! power of x1 split off is tracked by the callers that care about the
//! root at infinity.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::form::SymmetricForm;
use crate::multiindex::MultiIndex;
use crate::rational::{Integer, Rational};

/// Coefficients ascending by power; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial returns None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => {
                let inv = l.clone();
                UniPoly::new(self.coeffs.iter().map(|c| c / &inv).collect())
            }
        }
    }

    pub fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            if !factor.is_zero() {
                for (i, c) in div.coeffs.iter().enumerate() {
                    let sub = &factor * c;
                    rem[k + i] -= sub;
                }
                quo[k] = factor;
            }
            rem.pop();
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True iff the polynomial has no repeated roots (gcd with derivative
    /// is constant). The zero polynomial is not squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) | Some(1) => true,
            _ => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn num_distinct_roots(&self) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(d) => d - self.gcd(&self.derivative()).degree().unwrap_or(0),
        }
    }

    /// Divides out (t - root); panics if root is not a root.
    pub fn deflate(&self, root: &Rational) -> UniPoly {
        let div = UniPoly::new(vec![-root.clone(), Rational::one()]);
        let (q, r) = self.divrem(&div);
        assert!(r.is_zero(), "deflation by a non-root");
        q
    }

    /// Primitive integer coefficients (content removed, sign of leading kept).
    pub fn primitive_integer_coeffs(&self) -> Vec<Integer> {
        if self.is_zero() {
            return vec![];
        }
        let mut lcm = Integer::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = Integer::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        ints.into_iter().map(|v| v / &content).collect()
    }

    /// All rational roots with multiplicity, plus the rational-root-free
    /// cofactor. Complete for coefficients of moderate size; beyond the
    /// trial-division cap it falls back to numerically guided candidates
    /// that are still verified exactly.
    pub fn rational_roots(&self) -> (Vec<Rational>, UniPoly) {
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.degree().unwrap_or(0) == 0 {
            return (roots, p);
        }
        // roots at t = 0
        while !p.is_zero() && p.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            p = UniPoly::new(p.coeffs[1..].to_vec());
        }
        'outer: while p.degree().unwrap_or(0) >= 1 {
            if p.degree() == Some(1) {
                let root = -&p.coeffs[0] / &p.coeffs[1];
                roots.push(root);
                p = UniPoly::new(vec![p.coeffs[1].clone()]);
                break;
            }
            for cand in root_candidates(&p) {
                if p.eval(&cand).is_zero() {
                    p = p.deflate(&cand);
                    roots.push(cand);
                    continue 'outer;
                }
            }
            break;
        }
        (roots, p)
    }
}

fn root_candidates(p: &UniPoly) -> Vec<Rational> {
    let ints = p.primitive_integer_coeffs();
    let c0 = ints.first().cloned().unwrap_or_else(Integer::zero);
    let lead = ints.last().cloned().unwrap_or_else(Integer::one);
    let mut cands = Vec::new();
    if let (Some(nums), Some(dens)) = (divisors(&c0), divisors(&lead)) {
        for n in &nums {
            for d in &dens {
                if n.gcd(d).is_one() {
                    let r = Rational::new(n.clone(), d.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
        }
    }
    // numerically guided candidates, verified exactly by the caller
    let fc: Vec<f64> = ints.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    for root in crate::roots::real_roots_f64(&fc) {
        if let Some(r) = rational_reconstruct(root, 10_000_000) {
            cands.push(r);
        }
    }
    cands.sort();
    cands.dedup();
    cands
}

/// Divisors of |n| by trial division; None when n is too large to factor
/// within the cap (callers then rely on the numeric candidates).
fn divisors(n: &Integer) -> Option<Vec<Integer>> {
    let mut n = n.abs();
    if n.is_zero() {
        return Some(vec![]);
    }
    let mut primes: Vec<(Integer, u32)> = Vec::new();
    let mut p = Integer::from(2u32);
    let cap = Integer::from(1_000_000u64);
    while &p * &p <= n && p <= cap {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += if p == Integer::from(2u32) { 1u32 } else { 2u32 };
    }
    if !n.is_one() {
        if n > Integer::from(10u64).pow(13) {
            return None;
        }
        primes.push((n, 1));
    }
    let mut divs = vec![Integer::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pe = Integer::one();
            for _ in 0..=e {
                next.push(d * &pe);
                pe *= &p;
            }
        }
        divs = next;
        if divs.len() > 4096 {
            return None;
        }
    }
    Some(divs)
}

/// Continued-fraction reconstruction of a nearby rational with bounded
/// denominator; the result is only a candidate and must be verified.
pub fn rational_reconstruct(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.floor() as i128, 1i128);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        let approx = p1 as f64 / q1 as f64;
        if (approx - x).abs() < 1e-9 * x.abs().max(1.0) {
            return Some(Rational::new(BigInt::from(p1), BigInt::from(q1)));
        }
        if frac.abs() < f64::EPSILON {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a = a as i128;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    let approx = p1 as f64 / q1 as f64;
    if (approx - x).abs() < 1e-9 * x.abs().max(1.0) {
        Some(Rational::new(BigInt::from(p1), BigInt::from(q1)))
    } else {
        None
    }
}

/// Dehomogenization of a binary form at x1 = 1: coefficient of t^k is the
/// coefficient of x0^k x1^(d-k).
pub fn dehomogenize_binary(q: &SymmetricForm) -> Result<UniPoly> {
    if q.nvars() != 2 {
        return Err(Error::WrongShape(format!(
            "expected a binary form, got {} variables",
            q.nvars()
        )));
    }
    let d = q.degree();
    Ok(UniPoly::new(
        (0..=d)
            .map(|k| q.coeff(&MultiIndex::new(vec![k, d - k])))
            .collect(),
    ))
}

/// True iff the binary form has d distinct roots in the projective line
/// over the closure: the dehomogenization must be squarefree and the root
/// at infinity (x1 = 0) must have order at most one.
pub fn binary_squarefree(q: &SymmetricForm) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::ZeroForm);
    }
    let p = dehomogenize_binary(q)?;
    let d = q.degree() as usize;
    let infinity_order = d - p.degree().expect("nonzero form");
    Ok(infinity_order <= 1 && p.is_squarefree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_form;
    use crate::rational::{rat, rat_i64};

    fn upoly(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| rat_i64(c)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (t-1)^2 (t+2) = t^3 - 3t + 2
        let p = upoly(&[2, -3, 0, 1]);
        let g = p.gcd(&p.derivative());
        assert_eq!(g.degree(), Some(1));
        assert!(!p.is_squarefree());
        assert_eq!(p.num_distinct_roots(), 2);

        let q = upoly(&[1, 0, 0, 1]); // t^3 + 1
        assert!(q.is_squarefree());
        assert_eq!(q.num_distinct_roots(), 3);
    }

    #[test]
    fn rational_root_extraction() {
        // (t - 1/2)(t + 3)(t - 2) * 2 = 2t^3 + t^2 - 13t + 6
        let p = upoly(&[6, -13, 1, 2]);
        let (mut roots, rest) = p.rational_roots();
        roots.sort();
        assert_eq!(roots, vec![rat_i64(-3), rat(1, 2), rat_i64(2)]);
        assert_eq!(rest.degree(), Some(0));

        // t^2 + 1 has no rational roots
        let q = upoly(&[1, 0, 1]);
        let (roots, rest) = q.rational_roots();
        assert!(roots.is_empty());
        assert_eq!(rest.degree(), Some(2));

        // mixed: t(t^2 - 2)
        let r = upoly(&[0, -2, 0, 1]);
        let (roots, rest) = r.rational_roots();
        assert_eq!(roots, vec![rat_i64(0)]);
        assert_eq!(rest.degree(), Some(2));
    }

    #[test]
    fn squarefree_binary_forms() {
        assert!(!binary_squarefree(&parse_form("x^2*y").unwrap()).unwrap());
        assert!(binary_squarefree(&parse_form("x^2*y + x*y^2").unwrap()).unwrap());
        assert!(binary_squarefree(&parse_form("x^3 + y^3").unwrap()).unwrap());
        // double root at infinity: x1^2 divides
        assert!(!binary_squarefree(&parse_form("x0^2*x1^2").unwrap()).unwrap());
        // x0^2: double root
        assert!(!binary_squarefree(&parse_form("x0^2").unwrap().pad_to(2)).unwrap());
        assert!(binary_squarefree(&parse_form("x0*x1").unwrap()).unwrap());
        assert!(binary_squarefree(&parse_form("x0").unwrap().pad_to(2)).unwrap());
        assert!(matches!(
            binary_squarefree(&SymmetricForm::zero(2, 3)),
            Err(Error::ZeroForm)
        ));
    }

    #[test]
    fn squarefree_matches_homogeneous_gcd_characterization() {
        // deg gcd(q, dq/dx0, dq/dx1) == 0  <=>  squarefree
        for text in [
            "x^3 + y^3",
            "x^2*y",
            "x^3 - 3*x*y^2 + y^3",
            "x^4 + 2*x^2*y^2 + y^4",
            "x0^3*x1^2",
            "x0*x1^4 + x0^5",
        ] {
            let q = parse_form(text).unwrap().pad_to(2);
            let px = dehomogenize_binary(&q.derivative(0)).unwrap();
            let py = dehomogenize_binary(&q.derivative(1)).unwrap();
            let p = dehomogenize_binary(&q).unwrap();
            // homogeneous gcd degree = common x1-valuation + gcd of dehomogenizations
            let val = |f: &SymmetricForm, p: &UniPoly| -> usize {
                if f.is_zero() {
                    usize::MAX
                } else {
                    f.degree() as usize - p.degree().unwrap()
                }
            };
            let v = val(&q, &p)
                .min(val(&q.derivative(0), &px))
                .min(val(&q.derivative(1), &py));
            let g = p.gcd(&px).gcd(&py);
            let hom_gcd_degree = v + g.degree().unwrap_or(0);
            assert_eq!(
                hom_gcd_degree == 0,
                binary_squarefree(&q).unwrap(),
                "mismatch for {text}"
            );
        }
    }
}
