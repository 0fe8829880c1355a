//! A small exact Buchberger engine.
//!
//! Two uses only: the base locus of a net of conics (two variables,
//! graded-lex) and the tiny secant-variety elimination (block order,
//! graded-reverse-lex inside each block, eliminated variables first). Both
//! run over the rationals with monic normalization.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exponent vector with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| *a.max(b))
            .collect())
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Monomial orders: graded lex, or a two-block elimination order that is
/// graded-reverse-lex inside each block (first block eliminated).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    GrLex,
    /// First `split` variables form the eliminated block.
    BlockElim { split: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Mono, b: &Mono) -> std::cmp::Ordering {
        match self {
            MonomialOrder::GrLex => {
                let (da, db) = (a.degree(), b.degree());
                da.cmp(&db).then_with(|| a.0.cmp(&b.0))
            }
            MonomialOrder::BlockElim { split } => {
                let s = *split;
                grevlex(&a.0[..s], &b.0[..s]).then_with(|| grevlex(&a.0[s..], &b.0[s..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()).rev() {
            if x != y {
                // smaller exponent in the last differing position wins
                return y.cmp(x);
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Sparse polynomial with terms sorted descending under a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub terms: Vec<(Mono, Rational)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: vec![] }
    }

    pub fn from_terms(order: MonomialOrder, terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (m, c) in terms {
            let entry = map.entry(m.0).or_insert_with(Rational::zero);
            *entry += c;
        }
        let mut out: Vec<(Mono, Rational)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (Mono(m), c))
            .collect();
        out.sort_by(|x, y| order.cmp(&y.0, &x.0));
        MPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, Rational)> {
        self.terms.first()
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// self - coeff * x^shift * other, keeping the order invariant.
    fn sub_mul_term(&self, order: MonomialOrder, coeff: &Rational, shift: &Mono, other: &MPoly) -> MPoly {
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            map.insert(m.0.clone(), c.clone());
        }
        for (m, c) in &other.terms {
            let key = m.mul(shift).0;
            let entry = map.entry(key).or_insert_with(Rational::zero);
            *entry -= coeff * c;
        }
        let mut out: Vec<(Mono, Rational)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (Mono(m), c))
            .collect();
        out.sort_by(|x, y| order.cmp(&y.0, &x.0));
        MPoly { terms: out }
    }

    pub fn add(&self, order: MonomialOrder, other: &MPoly) -> MPoly {
        MPoly::from_terms(
            order,
            self.terms.iter().chain(&other.terms).cloned(),
        )
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Rendering with caller-supplied variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        names[v].clone()
                    } else {
                        format!("{}^{}", names[v], e)
                    }
                })
                .collect();
            let mono = mono.join("*");
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

/// Full normal form of `p` modulo `basis` (every term reduced).
pub fn normal_form(order: MonomialOrder, p: &MPoly, basis: &[MPoly]) -> MPoly {
    let mut rem = p.clone();
    let mut out_terms: Vec<(Mono, Rational)> = Vec::new();
    'outer: while let Some((m, c)) = rem.leading().cloned() {
        for g in basis {
            let (gm, gc) = g.leading().expect("basis elements nonzero");
            if gm.divides(&m) {
                let shift = m.div(gm);
                let coeff = &c / gc;
                rem = rem.sub_mul_term(order, &coeff, &shift, g);
                continue 'outer;
            }
        }
        // head term irreducible: move it out
        out_terms.push((m, c));
        rem.terms.remove(0);
    }
    MPoly { terms: out_terms }
}

/// Caps for the Buchberger loop.
#[derive(Debug, Clone, Copy)]
pub struct GroebnerBudget {
    pub max_pairs: usize,
    pub max_basis: usize,
    pub max_degree: u32,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget {
            max_pairs: 200_000,
            max_basis: 2_000,
            max_degree: 60,
        }
    }
}

/// Buchberger with the coprimality and chain criteria; returns the reduced
/// basis (unique for the order, all elements monic).
pub fn groebner_basis(
    order: MonomialOrder,
    gens: &[MPoly],
    budget: &GroebnerBudget,
) -> Result<Vec<MPoly>> {
    let mut basis: Vec<MPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic())
        .collect();
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    let mut processed: HashSet<(usize, usize)> = HashSet::new();
    let mut steps = 0usize;
    while let Some(pos) = select_pair(order, &basis, &pairs) {
        let (i, j) = pairs.swap_remove(pos);
        processed.insert((i, j));
        steps += 1;
        if steps > budget.max_pairs {
            return Err(Error::BudgetExceeded(format!(
                "groebner: more than {} S-pairs",
                budget.max_pairs
            )));
        }
        let (lmi, _) = basis[i].leading().unwrap();
        let (lmj, _) = basis[j].leading().unwrap();
        if lmi.coprime(lmj) {
            continue;
        }
        let l = lmi.lcm(lmj);
        if l.degree() > budget.max_degree {
            return Err(Error::BudgetExceeded(format!(
                "groebner: S-pair degree {} exceeds cap {}",
                l.degree(),
                budget.max_degree
            )));
        }
        // chain criterion: some k with LM_k | lcm and both mixed pairs done
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().unwrap().0.divides(&l)
                && processed.contains(&key(i, k))
                && processed.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(order, &basis[i], &basis[j]);
        let h = normal_form(order, &s, &basis);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let new_idx = basis.len();
        basis.push(h);
        if basis.len() > budget.max_basis {
            return Err(Error::BudgetExceeded(format!(
                "groebner: basis larger than {}",
                budget.max_basis
            )));
        }
        for t in 0..new_idx {
            pairs.push((t, new_idx));
        }
    }
    Ok(interreduce(order, basis))
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn select_pair(order: MonomialOrder, basis: &[MPoly], pairs: &[(usize, usize)]) -> Option<usize> {
    // normal strategy: smallest lcm under the order
    let mut best: Option<(usize, Mono)> = None;
    for (pos, (i, j)) in pairs.iter().enumerate() {
        let l = basis[*i]
            .leading()
            .unwrap()
            .0
            .lcm(&basis[*j].leading().unwrap().0);
        match &best {
            None => best = Some((pos, l)),
            Some((_, bl)) => {
                if order.cmp(&l, bl) == std::cmp::Ordering::Less {
                    best = Some((pos, l));
                }
            }
        }
    }
    best.map(|(pos, _)| pos)
}

fn s_poly(order: MonomialOrder, f: &MPoly, g: &MPoly) -> MPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    // S = x^(l-fm) * f/fc - x^(l-gm) * g/gc
    let a = shift(order, &f.scale(&fc.recip()), &l.div(fm));
    a.sub_mul_term(order, &Rational::one(), &l.div(gm), &g.scale(&gc.recip()))
}

fn shift(order: MonomialOrder, p: &MPoly, by: &Mono) -> MPoly {
    MPoly::from_terms(
        order,
        p.terms.iter().map(|(m, c)| (m.mul(by), c.clone())),
    )
}

fn interreduce(order: MonomialOrder, mut basis: Vec<MPoly>) -> Vec<MPoly> {
    // drop elements whose leading monomial is divisible by another's
    loop {
        let mut remove: Option<usize> = None;
        'search: for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j
                    && basis[j]
                        .leading()
                        .unwrap()
                        .0
                        .divides(&basis[i].leading().unwrap().0)
                {
                    remove = Some(i);
                    break 'search;
                }
            }
        }
        match remove {
            Some(i) => {
                basis.remove(i);
            }
            None => break,
        }
    }
    // fully reduce each element against the others
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<MPoly> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let red = normal_form(order, &basis[i], &others);
        if !red.is_zero() {
            out.push(red.monic());
        }
    }
    out.sort_by(|a, b| order.cmp(&b.leading().unwrap().0, &a.leading().unwrap().0));
    out
}

/// Standard monomials of the quotient (not divisible by any leading
/// monomial); errors if their number exceeds `cap` (non-zero-dimensional
/// or too large).
pub fn quotient_basis(gb: &[MPoly], nvars: usize, cap: usize) -> Result<Vec<Mono>> {
    if gb.is_empty() {
        return Err(Error::DegenerateNet("zero ideal".into()));
    }
    let lts: Vec<&Mono> = gb.iter().map(|g| &g.leading().unwrap().0).collect();
    let mut layer = vec![Mono::one(nvars)];
    if lts.iter().any(|lt| lt.divides(&layer[0])) {
        return Ok(vec![]); // the whole ring reduces to zero
    }
    let mut out: Vec<Mono> = layer.clone();
    while !layer.is_empty() {
        let mut next: Vec<Mono> = Vec::new();
        for m in &layer {
            for v in 0..nvars {
                let mut e = m.0.clone();
                e[v] += 1;
                let cand = Mono(e);
                if out.contains(&cand) || next.contains(&cand) {
                    continue;
                }
                if lts.iter().any(|lt| lt.divides(&cand)) {
                    continue;
                }
                next.push(cand);
            }
        }
        out.extend(next.iter().cloned());
        if out.len() > cap {
            return Err(Error::DegenerateNet(format!(
                "quotient dimension exceeds {cap}"
            )));
        }
        layer = next;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_i64;

    fn poly(order: MonomialOrder, terms: &[(&[u32], i64)]) -> MPoly {
        MPoly::from_terms(
            order,
            terms
                .iter()
                .map(|(e, c)| (Mono(e.to_vec()), rat_i64(*c))),
        )
    }

    #[test]
    fn grevlex_ordering() {
        // x*z^2 < y^3 under grevlex (same degree, last differing exponent larger loses)
        let o = MonomialOrder::BlockElim { split: 3 };
        let xzz = Mono(vec![1, 0, 2]);
        let yyy = Mono(vec![0, 3, 0]);
        assert_eq!(o.cmp(&yyy, &xzz), std::cmp::Ordering::Greater);
        // x^2 y > x y^2
        let a = Mono(vec![2, 1, 0]);
        let b = Mono(vec![1, 2, 0]);
        assert_eq!(o.cmp(&a, &b), std::cmp::Ordering::Greater);
    }

    #[test]
    fn buchberger_on_twisted_cubic_slice() {
        // I = (x^2 - y, x^3 - z) in grlex x > y > z; quotient is infinite,
        // but the GB should contain y^3 - z^2 style relations.
        let o = MonomialOrder::GrLex;
        let g1 = poly(o, &[(&[2, 0, 0], 1), (&[0, 1, 0], -1)]);
        let g2 = poly(o, &[(&[3, 0, 0], 1), (&[0, 0, 1], -1)]);
        let gb = groebner_basis(o, &[g1, g2], &GroebnerBudget::default()).unwrap();
        let target = poly(o, &[(&[0, 2, 0], 1), (&[1, 0, 1], -1)]);
        // y^2 - xz must reduce to zero modulo the basis
        assert!(normal_form(o, &target, &gb).is_zero());
    }

    #[test]
    fn quotient_of_three_coordinate_conics() {
        // (xy, x^2 - x, y^2 - y) in two variables: points (0,0),(1,0),(0,1)
        let o = MonomialOrder::GrLex;
        let g1 = poly(o, &[(&[1, 1], 1)]);
        let g2 = poly(o, &[(&[2, 0], 1), (&[1, 0], -1)]);
        let g3 = poly(o, &[(&[0, 2], 1), (&[0, 1], -1)]);
        let gb = groebner_basis(o, &[g1, g2, g3], &GroebnerBudget::default()).unwrap();
        let basis = quotient_basis(&gb, 2, 16).unwrap();
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn elimination_of_a_parabola_parameter() {
        // x = t, y = t^2: eliminate t from (x - t, y - t^2); expect y - x^2
        let o = MonomialOrder::BlockElim { split: 1 };
        // variables: t, x, y
        let g1 = poly(o, &[(&[0, 1, 0], 1), (&[1, 0, 0], -1)]);
        let g2 = poly(o, &[(&[0, 0, 1], 1), (&[2, 0, 0], -1)]);
        let gb = groebner_basis(o, &[g1, g2], &GroebnerBudget::default()).unwrap();
        let in_xy: Vec<&MPoly> = gb
            .iter()
            .filter(|g| g.terms.iter().all(|(m, _)| m.0[0] == 0))
            .collect();
        assert_eq!(in_xy.len(), 1);
        let expect = poly(o, &[(&[0, 2, 0], 1), (&[0, 0, 1], -1)]);
        assert_eq!(in_xy[0], &expect);
    }

    #[test]
    fn budget_is_enforced() {
        let o = MonomialOrder::GrLex;
        let g1 = poly(o, &[(&[2, 0, 0], 1), (&[0, 1, 1], -1)]);
        let g2 = poly(o, &[(&[0, 2, 0], 1), (&[1, 0, 1], -1)]);
        let tiny = GroebnerBudget {
            max_pairs: 1,
            max_basis: 1,
            max_degree: 2,
        };
        assert!(matches!(
            groebner_basis(o, &[g1, g2], &tiny),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
