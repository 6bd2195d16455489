//! Integer points of `Z^n` with the componentwise partial order.
//!
//! The derived `Ord` is lexicographic and is used only for canonical
//! sorting; the domain order is the componentwise one exposed through
//! [`LatticePoint::leq`] and [`LatticePoint::strictly_below`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A point of `Z^n` with arbitrary-precision coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    coords: Vec<BigInt>,
}

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticePoint {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint {
            coords: vec![BigInt::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, j: usize) -> &BigInt {
        &self.coords[j]
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_nonneg(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.coords.iter().all(|c| c.is_positive())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        LatticePoint::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        LatticePoint::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        LatticePoint::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticePoint::new(self.coords.iter().map(|a| a * k).collect())
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(LatticePoint::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        ))
    }

    /// Componentwise minimum; equals `-((-a) ∨ (-b))`.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(LatticePoint::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        ))
    }

    /// Splits into `(v+, v-)` with `v = v+ - v-`, both nonnegative, disjoint supports.
    pub fn pos_neg_parts(&self) -> (Self, Self) {
        let pos = LatticePoint::new(
            self.coords
                .iter()
                .map(|a| if a.is_positive() { a.clone() } else { BigInt::zero() })
                .collect(),
        );
        let neg = LatticePoint::new(
            self.coords
                .iter()
                .map(|a| if a.is_negative() { -a } else { BigInt::zero() })
                .collect(),
        );
        (pos, neg)
    }

    pub fn positive_part(&self) -> Self {
        self.pos_neg_parts().0
    }

    /// Componentwise `<=`.
    pub fn leq(&self, other: &Self) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Componentwise strict `<` in every coordinate.
    pub fn strictly_below(&self, other: &Self) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).all(|(a, b)| a < b)
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_fully_supported(&self) -> bool {
        self.coords.iter().all(|c| !c.is_zero())
    }

    pub fn dot(&self, other: &Self) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn max_abs_coord(&self) -> BigInt {
        self.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A box `T_eta` (closed, `eta - N^n`) or `T°_eta` (open, `eta - N^n_{>0}`).
#[derive(Clone, Debug)]
pub struct ZBox {
    pub apex: LatticePoint,
    pub open: bool,
}

impl ZBox {
    pub fn closed(apex: LatticePoint) -> Self {
        ZBox { apex, open: false }
    }

    pub fn open(apex: LatticePoint) -> Self {
        ZBox { apex, open: true }
    }

    /// Exact membership: closed boxes test `p <= apex`, open boxes `p << apex`.
    pub fn contains(&self, p: &LatticePoint) -> bool {
        assert_eq!(self.apex.dim(), p.dim(), "box and point dimensions differ");
        if self.open {
            p.strictly_below(&self.apex)
        } else {
            p.leq(&self.apex)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(cs)
    }

    #[test]
    fn join_examples() {
        assert_eq!(p(&[1, 2, 0]).join(&p(&[0, 4, -1])).unwrap(), p(&[1, 4, 0]));
        let a = p(&[7, -3, 2]);
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(p(&[1, 2, 0]).join(&p(&[3, 3, -2])).unwrap(), p(&[3, 3, 0]));
    }

    #[test]
    fn join_dimension_mismatch() {
        assert!(p(&[1, 2]).join(&p(&[1, 2, 3])).is_err());
        assert!(p(&[1, 2]).meet(&p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn meet_examples() {
        assert_eq!(p(&[1, 0, 1]).meet(&p(&[0, 2, 0])).unwrap(), p(&[0, 0, 0]));
        let a = p(&[-5, 0, 9]);
        assert_eq!(a.meet(&a).unwrap(), a);
        // oracle: componentwise min
        let x = p(&[-1, 2, -1]);
        let y = p(&[3, -1, -1]);
        let expect = LatticePoint::new(
            x.coords()
                .iter()
                .zip(y.coords())
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        );
        assert_eq!(expect, p(&[-1, -1, -1]));
        assert_eq!(x.meet(&y).unwrap(), expect);
        // meet(a,b) = -join(-a,-b)
        assert_eq!(x.meet(&y).unwrap(), x.neg().join(&y.neg()).unwrap().neg());
    }

    #[test]
    fn pos_neg_examples() {
        assert_eq!(
            p(&[-1, 2, -1]).pos_neg_parts(),
            (p(&[0, 2, 0]), p(&[1, 0, 1]))
        );
        assert_eq!(
            p(&[0, 0, 0]).pos_neg_parts(),
            (p(&[0, 0, 0]), p(&[0, 0, 0]))
        );
        assert_eq!(
            p(&[3, -1, -1]).pos_neg_parts(),
            (p(&[3, 0, 0]), p(&[0, 1, 1]))
        );
    }

    #[test]
    fn box_examples() {
        let open = ZBox::open(p(&[0, 4, 0]));
        assert!(open.contains(&p(&[-1, 2, -1])));
        let eta = p(&[2, 5, -3]);
        assert!(!ZBox::open(eta.clone()).contains(&eta));
        assert!(ZBox::closed(eta.clone()).contains(&eta));
    }

    fn small_point() -> impl Strategy<Value = LatticePoint> {
        prop::collection::vec(-20i64..=20, 3).prop_map(|v| LatticePoint::from_i64(&v))
    }

    proptest! {
        #[test]
        fn lattice_laws(a in small_point(), b in small_point(), c in small_point()) {
            let j = a.join(&b).unwrap();
            prop_assert_eq!(j.clone(), b.join(&a).unwrap());
            prop_assert_eq!(
                a.join(&b.join(&c).unwrap()).unwrap(),
                a.join(&b).unwrap().join(&c).unwrap()
            );
            // absorption
            prop_assert_eq!(a.join(&a.meet(&b).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(a.meet(&a.join(&b).unwrap()).unwrap(), a.clone());
            // distributivity
            prop_assert_eq!(
                a.meet(&b.join(&c).unwrap()).unwrap(),
                a.meet(&b).unwrap().join(&a.meet(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn pos_neg_roundtrip(v in small_point()) {
            let (pos, neg) = v.pos_neg_parts();
            prop_assert_eq!(pos.sub(&neg), v.clone());
            prop_assert!(pos.is_nonneg() && neg.is_nonneg());
            let s1 = pos.support();
            let s2 = neg.support();
            prop_assert!(s1.iter().all(|i| !s2.contains(i)));
        }

        #[test]
        fn box_monotonicity(eta in small_point(), q in small_point()) {
            if ZBox::open(eta.clone()).contains(&q) {
                prop_assert!(ZBox::closed(eta).contains(&q));
            }
        }
    }
}
