//! Sparse Laurent polynomials over the exact rationals with `Z^n` exponents.
//!
//! Stored terms never have zero coefficients and exponent keys are unique,
//! so structural equality is semantic equality. Text rendering is canonical
//! (terms in descending lexicographic exponent order) and round-trips
//! through [`LaurentPolynomial::parse`] byte-exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::zn::LatticePoint;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    dim: usize,
    terms: BTreeMap<LatticePoint, BigRational>,
}

impl LaurentPolynomial {
    pub fn zero(dim: usize) -> Self {
        LaurentPolynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(LatticePoint::zero(dim), BigRational::one())
    }

    pub fn monomial(exp: LatticePoint, coeff: BigRational) -> Self {
        let dim = exp.dim();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPolynomial { dim, terms }
    }

    pub fn monomial_one(exp: LatticePoint) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    /// The binomial `X^{v+} - X^{v-}`; zero when `v = 0`.
    pub fn binomial_of(v: &LatticePoint) -> Self {
        if v.is_zero() {
            return Self::zero(v.dim());
        }
        let (pos, neg) = v.pos_neg_parts();
        let mut p = Self::monomial_one(pos);
        p.add_term(&neg, &-BigRational::one());
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticePoint, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &LatticePoint) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_coeff(&self) -> BigRational {
        self.coeff(&LatticePoint::zero(self.dim))
    }

    /// True when every exponent is componentwise nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.is_nonneg())
    }

    /// Returns the single `(exponent, coefficient)` pair when there is exactly one term.
    pub fn as_monomial(&self) -> Option<(&LatticePoint, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, exp: &LatticePoint, coeff: &BigRational) {
        debug_assert_eq!(exp.dim(), self.dim);
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(exp.clone())
            .or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(exp);
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        LaurentPolynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scalar_mul(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.dim);
        }
        LaurentPolynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(&e1.add(e2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Multiplies by the monomial `X^shift`.
    pub fn shift(&self, shift: &LatticePoint) -> Self {
        LaurentPolynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(shift), c.clone()))
                .collect(),
        }
    }

    /// Canonical text form; see module docs.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = var_names(self.dim);
        let mut out = String::new();
        for (i, (exp, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&render_term(&coeff.abs(), exp, &names));
        }
        out
    }

    /// Parses the canonical text form.
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        parse_poly(text, dim)
    }
}

/// All monomial exponents `m >= 0` with `m + gen_degree ≡ target_class`
/// modulo the lattice.
pub fn strand_basis(
    gen_degree: &LatticePoint,
    target_class: &LatticePoint,
    lat: &crate::lattice::AntichainLattice,
) -> Result<Vec<LatticePoint>> {
    lat.fiber_points(&target_class.sub(gen_degree))
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn var_names(dim: usize) -> Vec<String> {
    if dim == 3 {
        vec!["x".into(), "y".into(), "z".into()]
    } else {
        (1..=dim).map(|i| format!("x{i}")).collect()
    }
}

fn render_term(coeff_abs: &BigRational, exp: &LatticePoint, names: &[String]) -> String {
    let mut factors: Vec<String> = Vec::new();
    for (j, e) in exp.coords().iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            factors.push(names[j].clone());
        } else {
            factors.push(format!("{}^{}", names[j], e));
        }
    }
    let coeff_str = render_rational(coeff_abs);
    if factors.is_empty() {
        coeff_str
    } else if coeff_abs.is_one() {
        factors.join("*")
    } else {
        format!("{}*{}", coeff_str, factors.join("*"))
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_poly(text: &str, dim: usize) -> Result<LaurentPolynomial> {
    let names = var_names(dim);
    let err = |msg: String| Error::Parse { line: 0, msg };
    let s = text.trim();
    if s.is_empty() {
        return Err(err("empty polynomial".into()));
    }
    if s == "0" {
        return Ok(LaurentPolynomial::zero(dim));
    }
    // Split into signed terms at top level.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign_neg = false;
    let mut chars = s.chars().peekable();
    // optional leading sign
    if let Some(&c) = chars.peek() {
        if c == '-' {
            sign_neg = true;
            chars.next();
        } else if c == '+' {
            chars.next();
        }
    }
    let mut prev: Option<char> = None;
    while let Some(c) = chars.next() {
        if (c == '+' || c == '-') && prev != Some('^') && prev != Some('*') && prev != Some('/') {
            terms.push((sign_neg, cur.trim().to_string()));
            cur = String::new();
            sign_neg = c == '-';
            prev = None;
        } else {
            if !c.is_whitespace() {
                prev = Some(c);
            }
            cur.push(c);
        }
    }
    terms.push((sign_neg, cur.trim().to_string()));

    let mut poly = LaurentPolynomial::zero(dim);
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(err("empty term".into()));
        }
        let (exp, coeff) = parse_term(&term, dim, &names)?;
        let c = if neg { -coeff } else { coeff };
        poly.add_term(&exp, &c);
    }
    Ok(poly)
}

fn parse_term(term: &str, dim: usize, names: &[String]) -> Result<(LatticePoint, BigRational)> {
    let err = |msg: String| Error::Parse { line: 0, msg };
    let mut coeff = BigRational::one();
    let mut exps = vec![BigInt::zero(); dim];
    for factor in term.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(err(format!("empty factor in term '{term}'")));
        }
        if f.chars().next().unwrap().is_ascii_digit() {
            // rational coefficient
            let r: BigRational = if let Some((n, d)) = f.split_once('/') {
                let n: BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad numerator '{n}'")))?;
                let d: BigInt = d
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad denominator '{d}'")))?;
                if d.is_zero() {
                    return Err(err("zero denominator".into()));
                }
                BigRational::new(n, d)
            } else {
                let n: BigInt = f.parse().map_err(|_| err(format!("bad integer '{f}'")))?;
                BigRational::from_integer(n)
            };
            coeff *= r;
        } else {
            let (name, e) = match f.split_once('^') {
                Some((v, e)) => {
                    let e: BigInt = e
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("bad exponent '{e}'")))?;
                    (v.trim(), e)
                }
                None => (f, BigInt::one()),
            };
            let j = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| err(format!("unknown variable '{name}'")))?;
            exps[j] += e;
        }
    }
    Ok((LatticePoint::new(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(cs)
    }

    fn lp(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(s, 3).unwrap()
    }

    #[test]
    fn add_cancellation() {
        // (xz - y^2) + y^2 = xz
        let a = lp("x*z - y^2");
        let b = lp("y^2");
        assert_eq!(a.add(&b).unwrap(), lp("x*z"));
    }

    #[test]
    fn monomial_shift() {
        let a = lp("y^2 - x*z");
        let m = lp("x");
        assert_eq!(a.mul(&m).unwrap(), lp("x*y^2 - x^2*z"));
        assert_eq!(a.shift(&p(&[1, 0, 0])), lp("x*y^2 - x^2*z"));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(LaurentPolynomial::binomial_of(&p(&[-1, 2, -1])), lp("y^2 - x*z"));
        assert_eq!(LaurentPolynomial::binomial_of(&p(&[3, -1, -1])), lp("x^3 - y*z"));
        assert_eq!(LaurentPolynomial::binomial_of(&p(&[-2, -1, 2])), lp("z^2 - x^2*y"));
        assert!(LaurentPolynomial::binomial_of(&p(&[0, 0, 0])).is_zero());
    }

    #[test]
    fn binomial_antisymmetry() {
        for v in [p(&[1, -4, 2]), p(&[-3, 0, 5]), p(&[2, -1, -1])] {
            assert_eq!(
                LaurentPolynomial::binomial_of(&v.neg()),
                LaurentPolynomial::binomial_of(&v).negate()
            );
        }
    }

    #[test]
    fn laurent_render_parse() {
        let q = LaurentPolynomial::monomial_one(p(&[3, 2, -1]));
        assert_eq!(q.render(), "x^3*y^2*z^-1");
        assert_eq!(lp("x^3*y^2*z^-1"), q);
        let half = LaurentPolynomial::monomial(
            p(&[0, 0, 0]),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        );
        assert_eq!(half.render(), "1/2");
        assert_eq!(lp("1/2"), half);
        assert_eq!(lp("-x + 3*y").render(), "-x + 3*y");
    }

    #[test]
    fn dimension_mismatch() {
        let a = LaurentPolynomial::one(2);
        let b = LaurentPolynomial::one(3);
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn strand_basis_examples() {
        use crate::lattice::AntichainLattice;
        let lat =
            AntichainLattice::new(3, vec![p(&[-1, 2, -1]), p(&[3, -1, -1])]).unwrap();
        // fiber of 0 in N^3 is {0}
        assert_eq!(
            strand_basis(&p(&[1, 2, 0]), &p(&[1, 2, 0]), &lat).unwrap(),
            vec![p(&[0, 0, 0])]
        );
        let s = strand_basis(&p(&[0, 0, 0]), &p(&[2, 1, 0]), &lat).unwrap();
        assert!(s.contains(&p(&[2, 1, 0])) && s.contains(&p(&[0, 0, 2])));
        // cross-check sizes against the fiber enumeration
        assert_eq!(s.len(), lat.fiber_points(&p(&[2, 1, 0])).unwrap().len());
        // negative normal value leaves no nonnegative solution
        assert!(strand_basis(&p(&[2, 1, 0]), &p(&[1, 0, 0]), &lat)
            .unwrap()
            .is_empty());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec(
            (
                prop::collection::vec(-3i64..=3, 3),
                -4i64..=4,
            ),
            0..5,
        )
        .prop_map(|terms| {
            let mut q = LaurentPolynomial::zero(3);
            for (e, c) in terms {
                q.add_term(
                    &LatticePoint::from_i64(&e),
                    &BigRational::from_integer(BigInt::from(c)),
                );
            }
            q
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(
                a.mul(&b.mul(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().mul(&c).unwrap()
            );
        }

        #[test]
        fn render_roundtrip(a in small_poly()) {
            let text = a.render();
            let back = LaurentPolynomial::parse(&text, 3).unwrap();
            prop_assert_eq!(back.clone(), a);
            prop_assert_eq!(back.render(), text);
        }
    }
}
