//! Complex root finding for the numeric decomposition path.
//!
//! Initial approximations come from Aberth-Ehrlich simultaneous iteration
//! in f64; each root is then polished by Newton steps in complex rational
//! arithmetic rounded to the requested binary precision. Inputs here are
//! always squarefree, so all roots are simple and Newton converges
//! quadratically.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_to_f64, Rational};
use crate::univariate::UniPoly;

/// A complex number with rational parts, rounded to a working precision
/// after each arithmetic step (a small software float).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigComplex {
    pub re: Rational,
    pub im: Rational,
}

impl BigComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        BigComplex { re, im }
    }

    pub fn from_c64(z: Complex64) -> Self {
        BigComplex {
            re: rational_from_f64(z.re),
            im: rational_from_f64(z.im),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn zero() -> Self {
        BigComplex {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn sub(&self, other: &BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    pub fn mul(&self, other: &BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn mul_rat(&self, r: &Rational) -> BigComplex {
        BigComplex {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, other: &BigComplex) -> BigComplex {
        let n = other.norm_sq();
        let conj = BigComplex {
            re: other.re.clone(),
            im: -other.im.clone(),
        };
        self.mul(&conj).mul_rat(&n.recip())
    }

    /// Rounds both parts to `bits` of relative precision.
    pub fn round(&self, bits: u32) -> BigComplex {
        BigComplex {
            re: round_rational(&self.re, bits),
            im: round_rational(&self.im, bits),
        }
    }

    pub fn pow(&self, e: u32, bits: u32) -> BigComplex {
        let mut acc = BigComplex::new(Rational::one(), Rational::zero());
        for _ in 0..e {
            acc = acc.mul(self).round(bits);
        }
        acc
    }
}

/// Rounds to a dyadic rational with about `bits` significant bits.
pub fn round_rational(r: &Rational, bits: u32) -> Rational {
    if r.is_zero() {
        return Rational::zero();
    }
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    let shift = bits as i64 - (num_bits - den_bits);
    if shift <= 0 {
        // already an integer-scale value; round to the nearest multiple of 2^-shift
        let s = (-shift) as u64;
        let q = rounded_div(r.numer() << 0u32, r.denom() << s);
        return Rational::from_integer(q) * Rational::from_integer(BigInt::one() << s);
    }
    let s = shift as u64;
    let q = rounded_div(r.numer() << s, r.denom().clone());
    Rational::new(q, BigInt::one() << s)
}

fn rounded_div(n: BigInt, d: BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_rem(&n, &d);
    if &r.abs() * &two >= d.abs() {
        if (n.sign() == d.sign()) || r.is_zero() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// All complex roots of the squarefree polynomial, at roughly `bits` of
/// binary precision.
pub fn complex_roots(p: &UniPoly, bits: u32) -> Result<Vec<BigComplex>> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::NumericRoots("zero polynomial".into()))?;
    if deg == 0 {
        return Ok(vec![]);
    }
    let fc: Vec<f64> = p.coeffs.iter().map(rat_to_f64).collect();
    let mut seeds = aberth_f64(&fc);
    if seeds.len() != deg {
        return Err(Error::NumericRoots("initial iteration lost roots".into()));
    }
    // Newton polish in extended precision; each step roughly doubles the
    // number of correct bits starting from ~45 of the f64 seed.
    let dp = p.derivative();
    let work_bits = bits + 16;
    let steps = {
        let mut s = 1u32;
        let mut acc = 40u64;
        while acc < bits as u64 + 8 {
            acc *= 2;
            s += 1;
        }
        s + 1
    };
    let mut out = Vec::with_capacity(deg);
    for z0 in seeds.drain(..) {
        let mut z = BigComplex::from_c64(z0).round(work_bits);
        for _ in 0..steps {
            let pv = eval_bigc(p, &z, work_bits);
            let dv = eval_bigc(&dp, &z, work_bits);
            if dv.is_zero() {
                return Err(Error::NumericRoots("derivative vanished at iterate".into()));
            }
            z = z.sub(&pv.div(&dv)).round(work_bits);
        }
        out.push(z.round(bits));
    }
    // simple roots must stay distinct
    for a in 0..out.len() {
        for b in a + 1..out.len() {
            if out[a].sub(&out[b]).is_zero() {
                return Err(Error::NumericRoots("roots collided during polish".into()));
            }
        }
    }
    Ok(out)
}

pub fn eval_bigc(p: &UniPoly, z: &BigComplex, bits: u32) -> BigComplex {
    let mut acc = BigComplex::zero();
    for c in p.coeffs.iter().rev() {
        acc = acc.mul(z).round(bits);
        acc.re += c;
    }
    acc
}

/// Real roots of a real-coefficient polynomial in f64 (helper for rational
/// root candidate generation).
pub fn real_roots_f64(coeffs: &[f64]) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    while c.last().map(|x| *x == 0.0).unwrap_or(false) {
        c.pop();
    }
    if c.len() <= 1 {
        return vec![];
    }
    aberth_f64(&c)
        .into_iter()
        .filter(|z| z.im.abs() < 1e-7 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect()
}

/// Aberth-Ehrlich simultaneous iteration; coefficients ascending.
fn aberth_f64(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let c: Vec<f64> = coeffs.iter().map(|x| x / lead).collect();
    let radius = 1.0
        + c[..n]
            .iter()
            .map(|x| x.abs())
            .fold(0.0f64, |a, b| a.max(b));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.43;
            Complex64::from_polar(radius * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64), theta)
        })
        .collect();
    let eval = |t: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for k in (0..=n).rev() {
            dp = dp * t + p;
            p = p * t + c[k];
        }
        (p, dp)
    };
    for _ in 0..400 {
        let mut done = true;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = if dp.norm() > 0.0 { p / dp } else { p };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s += (z[k] - z[j]).inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() > 1e-290 { w / denom } else { w };
            z[k] -= step;
            if step.norm() > 1e-13 * (1.0 + z[k].norm()) {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i64};

    #[test]
    fn f64_roots_of_cubic() {
        // (t-1)(t-2)(t+3) = t^3 - 7t + 6
        let mut roots = real_roots_f64(&[6.0, -7.0, 0.0, 1.0]);
        roots.sort_by(f64::total_cmp);
        assert_eq!(roots.len(), 3);
        assert!((roots[0] + 3.0).abs() < 1e-9);
        assert!((roots[1] - 1.0).abs() < 1e-9);
        assert!((roots[2] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn rounding_keeps_precision() {
        let r = rat(1, 3);
        let rounded = round_rational(&r, 128);
        let err = (&rounded - &r).abs();
        // |error| <= 2^-120 or so
        let bound = Rational::new(BigInt::one(), BigInt::one() << 120u32);
        assert!(err < bound);
    }

    #[test]
    fn polished_roots_reach_precision() {
        // t^2 - 2: roots +,- sqrt(2)
        let p = UniPoly::new(vec![rat_i64(-2), rat_i64(0), rat_i64(1)]);
        let roots = complex_roots(&p, 128).unwrap();
        assert_eq!(roots.len(), 2);
        for z in &roots {
            assert!(z.im.is_zero() || z.im.abs() < Rational::new(BigInt::one(), BigInt::one() << 100u32));
            // z^2 - 2 should be ~2^-120
            let val = z.mul(z).sub(&BigComplex::new(rat_i64(2), rat_i64(0)));
            let bound = Rational::new(BigInt::one(), BigInt::one() << 100u32);
            assert!(val.norm_sq() < &bound * &bound * rat_i64(4));
        }
    }

    #[test]
    fn complex_conjugate_pair() {
        // t^2 + 1
        let p = UniPoly::new(vec![rat_i64(1), rat_i64(0), rat_i64(1)]);
        let roots = complex_roots(&p, 96).unwrap();
        assert_eq!(roots.len(), 2);
        let sum = roots[0].add(&roots[1]);
        let bound = Rational::new(BigInt::one(), BigInt::one() << 80u32);
        assert!(sum.norm_sq() < &bound * &bound);
    }
}
