//! Antichain lattices in `Z^n`: membership, fibers, Markov bases, genericity.
//!
//! Exact enumeration is available for codimension-1 lattices with a strictly
//! positive primitive normal (this covers rank-1 lattices in `Z^2`) and for
//! rank-1 lattices with fully mixed-sign generators. Other configurations
//! fall back to a caller-supplied coefficient radius; results there are sound
//! only within the window, which is recorded in the output metadata.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, SolveOutcome};
use crate::zn::LatticePoint;

/// Maximum smallest-normal-entry admitted by the exact neighbor bound.
const FROBENIUS_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Rank0,
    /// Rank 1, not codimension 1; generator stored.
    Rank1,
    /// Rank `n-1` with strictly positive primitive normal.
    Codim1,
}

/// An integer lattice `Λ ⊂ Z^n` that is an antichain in the componentwise order.
#[derive(Clone, Debug)]
pub struct AntichainLattice {
    dim: usize,
    basis: Vec<LatticePoint>,
    kind: Kind,
    /// Primitive strictly positive normal (codim-1 only).
    normal: Option<LatticePoint>,
    /// Index of the lattice in its saturation (codim-1 only).
    saturation_index: Option<BigInt>,
    /// Coefficient window for configurations without an exact search.
    radius: Option<i64>,
}

impl AntichainLattice {
    pub fn new(dim: usize, basis: Vec<LatticePoint>) -> Result<Self> {
        for b in &basis {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch(b.dim(), dim));
            }
        }
        let rank = QMatrix::from_int_rows(
            &basis.iter().map(|b| b.coords().to_vec()).collect::<Vec<_>>(),
        )
        .rank();
        if rank != basis.len() {
            return Err(Error::DependentBasis);
        }
        if rank == 0 {
            return Ok(AntichainLattice {
                dim,
                basis,
                kind: Kind::Rank0,
                normal: None,
                saturation_index: None,
                radius: None,
            });
        }
        if rank == dim.saturating_sub(1) && dim >= 2 {
            let raw = cross_normal(&basis, dim);
            let content = raw
                .coords()
                .iter()
                .fold(BigInt::zero(), |g, c| g.gcd(&c.abs()));
            debug_assert!(!content.is_zero());
            let mut prim: Vec<BigInt> = raw.coords().iter().map(|c| c / &content).collect();
            if prim.iter().any(|c| c.is_negative()) {
                for c in prim.iter_mut() {
                    *c = -&*c;
                }
            }
            if !prim.iter().all(|c| c.is_positive()) {
                return Err(Error::NotAntichain(format!(
                    "codimension-1 normal {} has a zero or mixed-sign entry",
                    LatticePoint::new(prim)
                )));
            }
            return Ok(AntichainLattice {
                dim,
                basis,
                kind: Kind::Codim1,
                normal: Some(LatticePoint::new(prim)),
                saturation_index: Some(content),
                radius: None,
            });
        }
        if rank == 1 {
            let g = &basis[0];
            let has_pos = g.coords().iter().any(|c| c.is_positive());
            let has_neg = g.coords().iter().any(|c| c.is_negative());
            if !(has_pos && has_neg) {
                return Err(Error::NotAntichain(format!(
                    "rank-1 generator {g} is sign-definite"
                )));
            }
            return Ok(AntichainLattice {
                dim,
                basis,
                kind: Kind::Rank1,
                normal: None,
                saturation_index: None,
                radius: None,
            });
        }
        Err(Error::Unsupported(format!(
            "rank {rank} in Z^{dim}: only rank 0, rank 1 and codimension 1 are handled"
        )))
    }

    /// Saturated kernel lattice of a primitive strictly positive normal.
    pub fn from_normal(normal: &LatticePoint) -> Result<Self> {
        if !normal.coords().iter().all(|c| c.is_positive()) {
            return Err(Error::NotAntichain(format!(
                "normal {normal} must be strictly positive"
            )));
        }
        let basis = kernel_basis_of_row(normal);
        AntichainLattice::new(normal.dim(), basis)
    }

    pub fn with_radius(mut self, radius: i64) -> Self {
        self.radius = Some(radius);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LatticePoint] {
        &self.basis
    }

    pub fn normal(&self) -> Option<&LatticePoint> {
        self.normal.as_ref()
    }

    pub fn is_saturated(&self) -> bool {
        match &self.saturation_index {
            Some(d) => d.is_one(),
            None => self.kind != Kind::Rank1 || is_primitive(&self.basis[0]),
        }
    }

    /// Short description of the search strategy, for output metadata.
    pub fn search_note(&self) -> String {
        match self.kind {
            Kind::Rank0 => "exact (trivial lattice)".into(),
            Kind::Rank1 => "exact fibers (rank-1 interval)".into(),
            Kind::Codim1 => {
                if self.is_saturated() {
                    format!(
                        "exact (codimension-1 saturated, normal {})",
                        self.normal.as_ref().unwrap()
                    )
                } else {
                    format!(
                        "codimension-1, saturation index {}; neighbor search windowed",
                        self.saturation_index.as_ref().unwrap()
                    )
                }
            }
        }
    }

    /// Exact rational solve with integrality check.
    pub fn solve_coeffs(&self, v: &LatticePoint) -> Option<Vec<BigInt>> {
        if v.dim() != self.dim {
            return None;
        }
        if self.basis.is_empty() {
            return v.is_zero().then(Vec::new);
        }
        // columns are basis vectors
        let mut m = QMatrix::zeros(self.dim, self.basis.len());
        for (j, b) in self.basis.iter().enumerate() {
            for i in 0..self.dim {
                m.set(i, j, BigRational::from_integer(b.coord(i).clone()));
            }
        }
        let rhs: Vec<BigRational> = v
            .coords()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        match m.solve(&rhs) {
            SolveOutcome::Unique(x) => {
                let mut out = Vec::with_capacity(x.len());
                for c in x {
                    if !c.denom().is_one() {
                        return None;
                    }
                    out.push(c.to_integer());
                }
                Some(out)
            }
            _ => None,
        }
    }

    pub fn membership(&self, v: &LatticePoint) -> bool {
        self.solve_coeffs(v).is_some()
    }

    /// All nonnegative points with the given normal value (codim-1 only).
    pub(crate) fn level_points(&self, m: &BigInt) -> Vec<LatticePoint> {
        let normal = self.normal.as_ref().expect("codim-1 lattice");
        let mut out = Vec::new();
        let mut cur = vec![BigInt::zero(); self.dim];
        level_dfs(normal.coords(), m, 0, &mut cur, &mut out);
        out
    }

    /// `(s, g)`: sum of normal entries and Frobenius number of the normal's
    /// numerical semigroup. Only for saturated codim-1 lattices.
    pub(crate) fn frobenius_data(&self) -> Result<(BigInt, BigInt)> {
        let normal = self.normal.as_ref().ok_or_else(|| {
            Error::WindowRequired("no codimension-1 normal available".into())
        })?;
        if !self.is_saturated() {
            return Err(Error::WindowRequired(format!(
                "lattice has saturation index {}",
                self.saturation_index.as_ref().unwrap()
            )));
        }
        let s: BigInt = normal.coords().iter().sum();
        let g = frobenius_number(normal.coords())?;
        Ok((s, g))
    }

    /// All `λ ∈ Λ` with `λ <= w` componentwise.
    pub(crate) fn translates_leq(&self, w: &LatticePoint) -> Result<Vec<LatticePoint>> {
        match self.kind {
            Kind::Rank0 => Ok(if LatticePoint::zero(self.dim).leq(w) {
                vec![LatticePoint::zero(self.dim)]
            } else {
                vec![]
            }),
            Kind::Rank1 => {
                let g = &self.basis[0];
                Ok(multiples_in_halfspace(g, w))
            }
            Kind::Codim1 => {
                let u = self.normal.as_ref().unwrap();
                // u·λ = 0 and λ <= w bound each coordinate below.
                let total: BigInt = u
                    .coords()
                    .iter()
                    .zip(w.coords())
                    .map(|(uk, wk)| uk * wk)
                    .sum();
                let mut lo = Vec::with_capacity(self.dim);
                for j in 0..self.dim {
                    // u_j λ_j >= -(total - u_j w_j)
                    let bound = &u.coords()[j] * &w.coords()[j] - &total;
                    lo.push(bound.div_ceil(&u.coords()[j]));
                }
                let lo_pt = LatticePoint::new(lo);
                let mut out = Vec::new();
                let mut cur = vec![BigInt::zero(); self.dim];
                box_hyperplane_dfs(
                    u.coords(),
                    &BigInt::zero(),
                    lo_pt.coords(),
                    w.coords(),
                    0,
                    &mut cur,
                    &mut out,
                );
                if self.is_saturated() {
                    Ok(out)
                } else {
                    Ok(out.into_iter().filter(|p| self.membership(p)).collect())
                }
            }
        }
    }

    /// All `λ ∈ Λ` with `λ >= w` componentwise.
    pub(crate) fn translates_geq(&self, w: &LatticePoint) -> Result<Vec<LatticePoint>> {
        Ok(self
            .translates_leq(&w.neg())?
            .into_iter()
            .map(|p| p.neg())
            .collect())
    }

    /// All `λ ∈ Λ` with `lo <= λ <= hi` componentwise.
    pub(crate) fn translates_in_box(
        &self,
        lo: &LatticePoint,
        hi: &LatticePoint,
    ) -> Result<Vec<LatticePoint>> {
        match self.kind {
            Kind::Rank0 => {
                let zero = LatticePoint::zero(self.dim);
                Ok(if lo.leq(&zero) && zero.leq(hi) {
                    vec![zero]
                } else {
                    vec![]
                })
            }
            Kind::Rank1 => {
                let g = &self.basis[0];
                let mut t_lo: Option<BigInt> = None;
                let mut t_hi: Option<BigInt> = None;
                for j in 0..self.dim {
                    let gj = g.coord(j);
                    if gj.is_zero() {
                        if lo.coord(j).is_positive() || hi.coord(j).is_negative() {
                            return Ok(vec![]);
                        }
                        continue;
                    }
                    let (a, b) = if gj.is_positive() {
                        (lo.coord(j).div_ceil(gj), hi.coord(j).div_floor(gj))
                    } else {
                        (hi.coord(j).div_ceil(gj), lo.coord(j).div_floor(gj))
                    };
                    t_lo = Some(t_lo.map_or(a.clone(), |x: BigInt| x.max(a)));
                    t_hi = Some(t_hi.map_or(b.clone(), |x: BigInt| x.min(b)));
                }
                let (mut t, t_hi) = match (t_lo, t_hi) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Ok(vec![]),
                };
                let mut out = Vec::new();
                while t <= t_hi {
                    out.push(g.scale(&t));
                    t += 1;
                }
                Ok(out)
            }
            Kind::Codim1 => {
                let u = self.normal.as_ref().unwrap();
                let mut out = Vec::new();
                let mut cur = vec![BigInt::zero(); self.dim];
                box_hyperplane_dfs(
                    u.coords(),
                    &BigInt::zero(),
                    lo.coords(),
                    hi.coords(),
                    0,
                    &mut cur,
                    &mut out,
                );
                if self.is_saturated() {
                    Ok(out)
                } else {
                    Ok(out.into_iter().filter(|p| self.membership(p)).collect())
                }
            }
        }
    }

    /// The fiber `(root + Λ) ∩ N^n`; exact for rank-0, rank-1 and codim-1.
    pub fn fiber_points(&self, root: &LatticePoint) -> Result<Vec<LatticePoint>> {
        if root.dim() != self.dim {
            return Err(Error::DimensionMismatch(root.dim(), self.dim));
        }
        let mut pts: Vec<LatticePoint> = self
            .translates_geq(&root.neg())?
            .into_iter()
            .map(|l| root.add(&l))
            .collect();
        pts.sort();
        Ok(pts)
    }

    /// Fiber over a nonnegative root together with the move graph.
    pub fn enumerate_fiber(&self, root: &LatticePoint, moves: &[LatticePoint]) -> Result<FiberGraph> {
        if !root.is_nonneg() {
            return Err(Error::Precondition(format!(
                "fiber root {root} must be nonnegative"
            )));
        }
        let vertices = self.fiber_points(root)?;
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                let d = vertices[i].sub(&vertices[j]);
                if moves.iter().any(|m| d == *m || d == m.neg()) {
                    edges.push((i, j));
                }
            }
        }
        Ok(FiberGraph {
            root: root.clone(),
            vertices,
            edges,
        })
    }

    /// Neighbors of the origin: all `λ ∈ Λ \ {0}` with `T°_{0∨λ} ∩ Λ = ∅`.
    pub fn neighbors_of_origin(&self) -> Result<Vec<LatticePoint>> {
        match self.kind {
            Kind::Rank0 => Ok(vec![]),
            Kind::Rank1 => {
                let g = &self.basis[0];
                if g.is_fully_supported() {
                    // (t-1)g << (tg)+ ∨ 0 for every t >= 2, so only ±g survive.
                    let mut out = vec![g.clone(), g.neg()];
                    out.sort();
                    Ok(out)
                } else {
                    Err(Error::InfiniteNeighborSet(format!(
                        "rank-1 generator {g} is not fully supported, every multiple is a neighbor of 0"
                    )))
                }
            }
            Kind::Codim1 => {
                if self.is_saturated() {
                    self.neighbors_codim1_saturated()
                } else {
                    self.neighbors_windowed()
                }
            }
        }
    }

    /// Exact scan: a nonzero `λ` is a neighbor of the origin iff the fiber of
    /// `λ+` has no strictly positive point, and such fibers only occur at
    /// normal values `m` with `m - s` not in the normal's numerical semigroup.
    fn neighbors_codim1_saturated(&self) -> Result<Vec<LatticePoint>> {
        let (s, g) = self.frobenius_data()?;
        let m_max = &s + &g;
        let mut found: BTreeSet<LatticePoint> = BTreeSet::new();
        let mut m = BigInt::one();
        while m <= m_max {
            let pts = self.level_points(&m);
            if !pts.is_empty() && pts.iter().all(|p| !p.is_strictly_positive()) {
                for i in 0..pts.len() {
                    for j in 0..pts.len() {
                        if i == j {
                            continue;
                        }
                        let si = pts[i].support();
                        let sj = pts[j].support();
                        if si.iter().all(|k| !sj.contains(k)) {
                            found.insert(pts[i].sub(&pts[j]));
                        }
                    }
                }
            }
            m += 1;
        }
        Ok(found.into_iter().collect())
    }

    fn neighbors_windowed(&self) -> Result<Vec<LatticePoint>> {
        let radius = self.radius.ok_or_else(|| {
            Error::WindowRequired(self.search_note())
        })?;
        let mut found: BTreeSet<LatticePoint> = BTreeSet::new();
        for lam in self.coefficient_window(radius) {
            if lam.is_zero() {
                continue;
            }
            let plus = lam.positive_part();
            let fiber = self.fiber_points(&plus)?;
            if fiber.iter().all(|p| !p.is_strictly_positive()) {
                found.insert(lam.clone());
                found.insert(lam.neg());
            }
        }
        Ok(found.into_iter().collect())
    }

    fn coefficient_window(&self, radius: i64) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        let k = self.basis.len();
        let mut coeffs = vec![-radius; k];
        loop {
            let mut p = LatticePoint::zero(self.dim);
            for (c, b) in coeffs.iter().zip(&self.basis) {
                p = p.add(&b.scale(&BigInt::from(*c)));
            }
            out.push(p);
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                coeffs[i] += 1;
                if coeffs[i] <= radius {
                    break;
                }
                coeffs[i] = -radius;
                i += 1;
            }
        }
    }

    /// One representative per ±pair of the neighbors of the origin, with the
    /// first nonzero coordinate positive, verified by fiber-graph connectivity.
    pub fn markov_basis(&self) -> Result<MarkovBasis> {
        let elements: Vec<LatticePoint> = match self.kind {
            Kind::Rank0 => vec![],
            Kind::Rank1 => vec![sign_normalize(&self.basis[0])],
            Kind::Codim1 => {
                let neighbors = self.neighbors_of_origin()?;
                let mut reps: BTreeSet<LatticePoint> = BTreeSet::new();
                for n in &neighbors {
                    reps.insert(sign_normalize(n));
                }
                reps.into_iter().collect()
            }
        };
        let basis = MarkovBasis {
            elements,
            lattice: self.clone(),
            window_note: self.search_note(),
        };
        self.verify_markov(&basis)?;
        Ok(basis)
    }

    /// Connectivity of all fibers with normal value up to three times the
    /// largest Markov positive-part value.
    fn verify_markov(&self, basis: &MarkovBasis) -> Result<()> {
        match self.kind {
            Kind::Rank0 => Ok(()),
            Kind::Rank1 => {
                // Fibers are intervals in the generator direction; sample a few roots.
                let g = &self.basis[0];
                for root in [g.positive_part(), g.positive_part().scale(&BigInt::from(3))] {
                    let fg = self.enumerate_fiber(&root, &basis.elements)?;
                    if !fg.is_connected() {
                        return Err(Error::MarkovVerification(format!(
                            "fiber over {root} is disconnected"
                        )));
                    }
                }
                Ok(())
            }
            Kind::Codim1 => {
                let u = self.normal.as_ref().unwrap();
                let max_plus = basis
                    .elements
                    .iter()
                    .map(|l| u.dot(&l.positive_part()))
                    .max()
                    .unwrap_or_else(BigInt::zero);
                let bound = BigInt::from(3) * max_plus;
                let mut m = BigInt::zero();
                while m <= bound {
                    let pts = self.level_points(&m);
                    for group in congruence_groups(self, &pts) {
                        if !connected_under_moves(&group, &basis.elements) {
                            return Err(Error::MarkovVerification(format!(
                                "fiber at normal value {m} is disconnected under the computed moves"
                            )));
                        }
                    }
                    m += 1;
                }
                Ok(())
            }
        }
    }

    /// A lattice is generic when every Markov basis element is fully supported.
    pub fn is_generic(&self) -> Result<bool> {
        Ok(self
            .markov_basis()?
            .elements
            .iter()
            .all(|l| l.is_fully_supported()))
    }
}

/// A minimal Markov basis: one representative per ±pair of origin neighbors.
#[derive(Clone, Debug)]
pub struct MarkovBasis {
    pub elements: Vec<LatticePoint>,
    pub lattice: AntichainLattice,
    pub window_note: String,
}

/// A fiber together with its move graph.
#[derive(Clone, Debug)]
pub struct FiberGraph {
    pub root: LatticePoint,
    pub vertices: Vec<LatticePoint>,
    pub edges: Vec<(usize, usize)>,
}

impl FiberGraph {
    pub fn is_connected(&self) -> bool {
        if self.vertices.len() <= 1 {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let next = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// First nonzero coordinate made positive.
pub fn sign_normalize(v: &LatticePoint) -> LatticePoint {
    for c in v.coords() {
        if c.is_positive() {
            return v.clone();
        }
        if c.is_negative() {
            return v.neg();
        }
    }
    v.clone()
}

fn is_primitive(v: &LatticePoint) -> bool {
    v.coords()
        .iter()
        .fold(BigInt::zero(), |g, c| g.gcd(&c.abs()))
        .is_one()
}

/// Partition points into congruence classes modulo the lattice.
pub(crate) fn congruence_groups(
    lat: &AntichainLattice,
    pts: &[LatticePoint],
) -> Vec<Vec<LatticePoint>> {
    let mut groups: Vec<Vec<LatticePoint>> = Vec::new();
    for p in pts {
        match groups
            .iter_mut()
            .find(|g| lat.membership(&p.sub(&g[0])))
        {
            Some(g) => g.push(p.clone()),
            None => groups.push(vec![p.clone()]),
        }
    }
    groups
}

fn connected_under_moves(pts: &[LatticePoint], moves: &[LatticePoint]) -> bool {
    if pts.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; pts.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..pts.len() {
            if seen[w] {
                continue;
            }
            let d = pts[v].sub(&pts[w]);
            if moves.iter().any(|m| d == *m || d == m.neg()) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Alternating (n-1)-minors of the basis matrix.
fn cross_normal(basis: &[LatticePoint], dim: usize) -> LatticePoint {
    let mut out = Vec::with_capacity(dim);
    for j in 0..dim {
        let rows: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|b| {
                b.coords()
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, c)| c.clone())
                    .collect()
            })
            .collect();
        let d = int_det(rows);
        out.push(if j % 2 == 0 { d } else { -d });
    }
    LatticePoint::new(out)
}

/// Fraction-free determinant (Bareiss).
fn int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Kernel basis of a single primitive integer row via unimodular column ops.
fn kernel_basis_of_row(u: &LatticePoint) -> Vec<LatticePoint> {
    let n = u.dim();
    let mut v: Vec<BigInt> = u.coords().to_vec();
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    loop {
        let nz: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        // smallest absolute value reduces the others
        let &jmin = nz
            .iter()
            .min_by_key(|&&i| v[i].abs())
            .unwrap();
        for &i in &nz {
            if i == jmin {
                continue;
            }
            let q = v[i].div_floor(&v[jmin]);
            if !q.is_zero() {
                v[i] = &v[i] - &q * &v[jmin];
                let sub: Vec<BigInt> = cols[jmin].iter().map(|c| c * &q).collect();
                for (a, b) in cols[i].iter_mut().zip(sub) {
                    *a -= b;
                }
            }
        }
    }
    (0..n)
        .filter(|&i| v[i].is_zero())
        .map(|i| LatticePoint::new(cols[i].clone()))
        .collect()
}

/// Largest integer not representable as a nonnegative combination of the
/// weights (gcd must be 1); `-1` when everything is representable.
fn frobenius_number(weights: &[BigInt]) -> Result<BigInt> {
    let a = weights
        .iter()
        .min()
        .expect("nonempty weights")
        .to_usize()
        .filter(|&a| a > 0 && a <= FROBENIUS_CAP)
        .ok_or_else(|| {
            Error::Unsupported(format!(
                "normal entry too large for the exact neighbor bound (cap {FROBENIUS_CAP})"
            ))
        })?;
    // minimal representable value in each residue class mod a
    let mut dist: Vec<Option<BigInt>> = vec![None; a];
    dist[0] = Some(BigInt::zero());
    let mut changed = true;
    while changed {
        changed = false;
        for r in 0..a {
            let Some(base) = dist[r].clone() else { continue };
            for w in weights {
                let nv = &base + w;
                let nr = (&nv % &BigInt::from(a)).to_usize().unwrap();
                if dist[nr].as_ref().map_or(true, |cur| nv < *cur) {
                    dist[nr] = Some(nv);
                    changed = true;
                }
            }
        }
    }
    let mut g = BigInt::from(-1);
    for (r, d) in dist.iter().enumerate() {
        let d = d
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("residue {r} unreachable; gcd is not 1")))?;
        let cand = d - a;
        if cand > g {
            g = cand;
        }
    }
    Ok(g)
}

fn level_dfs(
    u: &[BigInt],
    remaining: &BigInt,
    j: usize,
    cur: &mut Vec<BigInt>,
    out: &mut Vec<LatticePoint>,
) {
    if remaining.is_negative() {
        return;
    }
    if j == u.len() {
        if remaining.is_zero() {
            out.push(LatticePoint::new(cur.clone()));
        }
        return;
    }
    if j == u.len() - 1 {
        let (q, r) = remaining.div_rem(&u[j]);
        if r.is_zero() {
            cur[j] = q;
            out.push(LatticePoint::new(cur.clone()));
            cur[j] = BigInt::zero();
        }
        return;
    }
    let max = remaining.div_floor(&u[j]);
    let mut v = BigInt::zero();
    while v <= max {
        cur[j] = v.clone();
        let rem = remaining - &v * &u[j];
        level_dfs(u, &rem, j + 1, cur, out);
        v += 1;
    }
    cur[j] = BigInt::zero();
}

/// Integer points in `[lo, hi]` on the hyperplane `u·x = value`.
fn box_hyperplane_dfs(
    u: &[BigInt],
    value: &BigInt,
    lo: &[BigInt],
    hi: &[BigInt],
    j: usize,
    cur: &mut Vec<BigInt>,
    out: &mut Vec<LatticePoint>,
) {
    if j == u.len() {
        if value.is_zero() {
            out.push(LatticePoint::new(cur.clone()));
        }
        return;
    }
    // prune with achievable dot-product range on the suffix
    let mut min_rest = BigInt::zero();
    let mut max_rest = BigInt::zero();
    for k in j..u.len() {
        min_rest += &u[k] * &lo[k];
        max_rest += &u[k] * &hi[k];
    }
    if *value < min_rest || *value > max_rest {
        return;
    }
    if lo[j] > hi[j] {
        return;
    }
    let mut v = lo[j].clone();
    while v <= hi[j] {
        cur[j] = v.clone();
        let rem = value - &v * &u[j];
        box_hyperplane_dfs(u, &rem, lo, hi, j + 1, cur, out);
        v += 1;
    }
    cur[j] = BigInt::zero();
}

/// All multiples `t·g` with `t·g <= w` (componentwise) for a mixed-sign `g`.
fn multiples_in_halfspace(g: &LatticePoint, w: &LatticePoint) -> Vec<LatticePoint> {
    // intersect the per-coordinate t-ranges for t*g_j <= w_j
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for (gj, wj) in g.coords().iter().zip(w.coords()) {
        if gj.is_zero() {
            if wj.is_negative() {
                return vec![];
            }
            continue;
        }
        if gj.is_positive() {
            let b = wj.div_floor(gj);
            hi = Some(match hi {
                Some(h) => h.min(b),
                None => b,
            });
        } else {
            let b = wj.div_ceil(gj);
            lo = Some(match lo {
                Some(l) => l.max(b),
                None => b,
            });
        }
    }
    let (lo, hi) = match (lo, hi) {
        (Some(l), Some(h)) => (l, h),
        // mixed-sign generator always yields both bounds
        _ => unreachable!("antichain rank-1 generator must have mixed signs"),
    };
    let mut out = Vec::new();
    let mut t = lo;
    while t <= hi {
        out.push(g.scale(&t));
        t += 1;
    }
    out
}
