//! Λ-finite sets `A = A_0 + Λ` with canonical orbit representatives.
//!
//! Representatives are reduced into the half-open fundamental parallelepiped
//! of the stored basis (orthogonal-projection coefficients floored toward the
//! origin), so orbit identity and all downstream representative choices are
//! deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::AntichainLattice;
use crate::linalg::{QMatrix, SolveOutcome};
use crate::zn::LatticePoint;

#[derive(Clone, Debug)]
pub struct LambdaSet {
    lattice: AntichainLattice,
    reps: Vec<LatticePoint>,
}

impl LambdaSet {
    /// Builds a Λ-set from orbit generators; each is reduced to its canonical
    /// representative and congruent duplicates are rejected.
    pub fn new(lattice: AntichainLattice, points: Vec<LatticePoint>) -> Result<Self> {
        let mut reps: Vec<LatticePoint> = Vec::new();
        for pt in points {
            if pt.dim() != lattice.dim() {
                return Err(Error::DimensionMismatch(pt.dim(), lattice.dim()));
            }
            let (canon, _) = reduce_to_parallelepiped(&lattice, &pt);
            if let Some(prev) = reps.iter().find(|r| lattice.membership(&canon.sub(r))) {
                return Err(Error::CongruentReps(prev.to_string(), pt.to_string()));
            }
            reps.push(canon);
        }
        reps.sort();
        Ok(LambdaSet { lattice, reps })
    }

    pub fn lattice(&self) -> &AntichainLattice {
        &self.lattice
    }

    pub fn reps(&self) -> &[LatticePoint] {
        &self.reps
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.rep_index_of(p).is_some()
    }

    fn rep_index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.reps
            .iter()
            .position(|r| self.lattice.membership(&p.sub(r)))
    }

    /// Returns `(index, rep, h)` with `p = rep + h`, `h ∈ Λ`.
    pub fn canonical_rep(&self, p: &LatticePoint) -> Result<(usize, &LatticePoint, LatticePoint)> {
        let idx = self
            .rep_index_of(p)
            .ok_or_else(|| Error::NotInSet(p.to_string()))?;
        let rep = &self.reps[idx];
        Ok((idx, rep, p.sub(rep)))
    }

    /// Exactly `A ∩ [lo, hi]`.
    pub fn materialize(&self, lo: &LatticePoint, hi: &LatticePoint) -> Result<Vec<LatticePoint>> {
        if lo.dim() != self.dim() || hi.dim() != self.dim() {
            return Err(Error::DimensionMismatch(lo.dim(), self.dim()));
        }
        let mut out = Vec::new();
        for rep in &self.reps {
            // λ >= lo - rep and λ <= hi - rep
            let upper = hi.sub(rep);
            let lower = lo.sub(rep);
            for lam in self.lattice.translates_leq(&upper)? {
                if lower.leq(&lam) {
                    out.push(rep.add(&lam));
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Reduces `p` modulo the lattice into the half-open fundamental
/// parallelepiped; returns `(canonical, λ)` with `p = canonical + λ`.
pub fn reduce_to_parallelepiped(
    lattice: &AntichainLattice,
    p: &LatticePoint,
) -> (LatticePoint, LatticePoint) {
    let k = lattice.rank();
    if k == 0 {
        return (p.clone(), LatticePoint::zero(p.dim()));
    }
    // Solve (B Bᵀ) c = B p for the orthogonal-projection coefficients.
    let basis = lattice.basis();
    let mut gram = QMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, BigRational::from_integer(basis[i].dot(&basis[j])));
        }
    }
    let rhs: Vec<BigRational> = basis
        .iter()
        .map(|b| BigRational::from_integer(b.dot(p)))
        .collect();
    let coeffs = match gram.solve(&rhs) {
        SolveOutcome::Unique(c) => c,
        _ => unreachable!("Gram matrix of an independent basis is invertible"),
    };
    let mut lam = LatticePoint::zero(p.dim());
    for (c, b) in coeffs.iter().zip(basis) {
        let f: BigInt = c.floor().to_integer();
        if !f.is_zero() {
            lam = lam.add(&b.scale(&f));
        }
    }
    (p.sub(&lam), lam)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(cs)
    }

    fn example_set() -> LambdaSet {
        let lat = AntichainLattice::new(3, vec![p(&[-1, 2, -1]), p(&[3, -1, -1])]).unwrap();
        LambdaSet::new(lat, vec![p(&[1, 2, 0])]).unwrap()
    }

    #[test]
    fn example_rep_is_already_canonical() {
        let ls = example_set();
        assert_eq!(ls.reps(), &[p(&[1, 2, 0])]);
    }

    #[test]
    fn canonical_rep_examples() {
        let ls = example_set();
        let (_, rep, h) = ls.canonical_rep(&p(&[0, 4, -1])).unwrap();
        assert_eq!(rep, &p(&[1, 2, 0]));
        assert_eq!(h, p(&[-1, 2, -1]));

        let (_, rep, h) = ls.canonical_rep(&p(&[1, 2, 0])).unwrap();
        assert_eq!(rep, &p(&[1, 2, 0]));
        assert!(h.is_zero());

        let (_, rep, h) = ls.canonical_rep(&p(&[3, 3, -2])).unwrap();
        assert_eq!(rep, &p(&[1, 2, 0]));
        assert_eq!(h, p(&[2, 1, -2]));

        assert!(ls.canonical_rep(&p(&[0, 0, 0])).is_err());
    }

    #[test]
    fn canonical_rep_idempotent() {
        let ls = example_set();
        for q in [p(&[0, 4, -1]), p(&[4, 1, -1]), p(&[-2, 3, 0])] {
            if !ls.contains(&q) {
                continue;
            }
            let (_, rep, _) = ls.canonical_rep(&q).unwrap();
            let rep = rep.clone();
            let (_, rep2, h2) = ls.canonical_rep(&rep).unwrap();
            assert_eq!(&rep, rep2);
            assert!(h2.is_zero());
        }
    }

    #[test]
    fn materialize_examples() {
        let ls = example_set();
        let got = ls
            .materialize(&p(&[-2, -2, -3]), &p(&[5, 5, 1]))
            .unwrap();
        for v in [p(&[1, 2, 0]), p(&[0, 4, -1]), p(&[3, 3, -2]), p(&[4, 1, -1])] {
            assert!(got.contains(&v), "missing {v}");
        }
        for v in &got {
            assert!(ls.contains(v));
        }

        // empty window
        assert!(ls.materialize(&p(&[1, 1, 1]), &p(&[0, 0, 0])).unwrap().is_empty());
        // single-point window
        assert_eq!(
            ls.materialize(&p(&[1, 2, 0]), &p(&[1, 2, 0])).unwrap(),
            vec![p(&[1, 2, 0])]
        );
    }

    #[test]
    fn materialize_invariant_under_rechosen_reps() {
        let lat = AntichainLattice::new(3, vec![p(&[-1, 2, -1]), p(&[3, -1, -1])]).unwrap();
        let a = LambdaSet::new(lat.clone(), vec![p(&[1, 2, 0])]).unwrap();
        let b = LambdaSet::new(lat, vec![p(&[3, 3, -2])]).unwrap();
        let lo = p(&[-4, -4, -4]);
        let hi = p(&[6, 6, 4]);
        assert_eq!(a.materialize(&lo, &hi).unwrap(), b.materialize(&lo, &hi).unwrap());
    }

    #[test]
    fn congruent_reps_rejected() {
        let lat = AntichainLattice::new(3, vec![p(&[-1, 2, -1]), p(&[3, -1, -1])]).unwrap();
        assert!(LambdaSet::new(lat, vec![p(&[1, 2, 0]), p(&[0, 4, -1])]).is_err());
    }
}
