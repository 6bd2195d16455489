//! Scarf complexes of generic Λ-finite sets.
//!
//! Faces are stored as one representative per Λ-orbit, translated so the
//! lexicographically smallest vertex lies on its stored orbit representative.
//! Incidence data carries, for every facet of a representative face, the
//! facet's own orbit representative together with the explicit translation;
//! the boundary sign of the j-th facet is `(-1)^j` in sorted vertex order.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lambda_set::LambdaSet;
use crate::zn::LatticePoint;

/// A face of the Scarf complex: sorted vertices and their join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScarfFace {
    pub vertices: Vec<LatticePoint>,
    pub label: LatticePoint,
}

impl ScarfFace {
    fn new(mut vertices: Vec<LatticePoint>) -> Self {
        vertices.sort();
        let label = join_of(&vertices);
        ScarfFace { vertices, label }
    }
}

fn join_of(pts: &[LatticePoint]) -> LatticePoint {
    let mut it = pts.iter();
    let first = it.next().expect("nonempty face").clone();
    it.fold(first, |acc, p| acc.join(p).expect("uniform dimension"))
}

/// Orbit representatives of `N(A)` by dimension, plus facet incidence.
#[derive(Clone, Debug)]
pub struct ScarfComplex {
    /// `dims[i]` lists the representative `i`-faces, sorted by vertex list.
    pub dims: Vec<Vec<ScarfFace>>,
    /// `incidence[i][f][j] = (rep index in dims[i-1], translation h)` with
    /// `∂_j σ = τ + h`; `incidence[0]` is empty.
    pub incidence: Vec<Vec<Vec<(usize, LatticePoint)>>>,
}

impl ScarfComplex {
    pub fn orbit_counts(&self) -> Vec<usize> {
        self.dims.iter().map(|d| d.len()).collect()
    }
}

/// `B` is neighborly in `A` when no point of `A` lies strictly below `∨B`.
pub fn is_neighborly(ls: &LambdaSet, b: &[LatticePoint]) -> Result<bool> {
    if b.is_empty() {
        return Ok(true);
    }
    for pt in b {
        if !ls.contains(pt) {
            return Err(Error::NotInSet(pt.to_string()));
        }
    }
    let eta = join_of(b);
    Ok(!has_point_strictly_below(ls, &eta)?)
}

fn has_point_strictly_below(ls: &LambdaSet, eta: &LatticePoint) -> Result<bool> {
    let one = LatticePoint::new(vec![BigInt::from(1); eta.dim()]);
    for rep in ls.reps() {
        let w = eta.sub(rep).sub(&one);
        if !ls.lattice().translates_leq(&w)?.is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `B` is strongly neighborly when it is the unique subset of `A` attaining
/// its join; checked exhaustively over `{a ∈ A : a <= ∨B}`.
pub fn is_strongly_neighborly(ls: &LambdaSet, b: &[LatticePoint]) -> Result<bool> {
    if b.is_empty() {
        return Ok(true);
    }
    for pt in b {
        if !ls.contains(pt) {
            return Err(Error::NotInSet(pt.to_string()));
        }
    }
    let eta = join_of(b);
    let mut below: Vec<LatticePoint> = Vec::new();
    for rep in ls.reps() {
        for lam in ls.lattice().translates_leq(&eta.sub(rep))? {
            below.push(rep.add(&lam));
        }
    }
    below.sort();
    below.dedup();
    let target: BTreeSet<LatticePoint> = b.iter().cloned().collect();
    // suffix joins for pruning
    let mut suffix = vec![None::<LatticePoint>; below.len() + 1];
    for i in (0..below.len()).rev() {
        suffix[i] = Some(match &suffix[i + 1] {
            Some(s) => s.join(&below[i]).unwrap(),
            None => below[i].clone(),
        });
    }
    let mut chosen: Vec<usize> = Vec::new();
    let unique = search_unique(&below, &suffix, &eta, &target, 0, None, &mut chosen);
    Ok(unique)
}

/// Returns false as soon as a subset other than `target` attains `eta`.
fn search_unique(
    below: &[LatticePoint],
    suffix: &[Option<LatticePoint>],
    eta: &LatticePoint,
    target: &BTreeSet<LatticePoint>,
    idx: usize,
    current: Option<LatticePoint>,
    chosen: &mut Vec<usize>,
) -> bool {
    let reachable = match (&current, &suffix[idx]) {
        (Some(c), Some(s)) => c.join(s).unwrap(),
        (Some(c), None) => c.clone(),
        (None, Some(s)) => s.clone(),
        (None, None) => return true,
    };
    if !eta.leq(&reachable) {
        return true;
    }
    if idx == below.len() {
        return match &current {
            Some(c) if c == eta => {
                let set: BTreeSet<LatticePoint> =
                    chosen.iter().map(|&i| below[i].clone()).collect();
                set == *target
            }
            _ => true,
        };
    }
    // also test the current prefix as a complete subset
    if let Some(c) = &current {
        if c == eta {
            let set: BTreeSet<LatticePoint> = chosen.iter().map(|&i| below[i].clone()).collect();
            if set != *target {
                return false;
            }
        }
    }
    // skip below[idx]
    if !search_unique(below, suffix, eta, target, idx + 1, current.clone(), chosen) {
        return false;
    }
    // take below[idx]
    let next = match &current {
        Some(c) => c.join(&below[idx]).unwrap(),
        None => below[idx].clone(),
    };
    chosen.push(idx);
    let ok = search_unique(below, suffix, eta, target, idx + 1, Some(next), chosen);
    chosen.pop();
    ok
}

struct Builder<'a> {
    ls: &'a LambdaSet,
    pair_cache: BTreeMap<(LatticePoint, LatticePoint), bool>,
}

impl<'a> Builder<'a> {
    fn pair_neighborly(&mut self, x: &LatticePoint, y: &LatticePoint) -> Result<bool> {
        let key = if x <= y {
            (x.clone(), y.clone())
        } else {
            (y.clone(), x.clone())
        };
        if let Some(&v) = self.pair_cache.get(&key) {
            return Ok(v);
        }
        let v = is_neighborly(self.ls, &[key.0.clone(), key.1.clone()])?;
        self.pair_cache.insert(key, v);
        Ok(v)
    }

    fn check_generic_pair(&self, x: &LatticePoint, y: &LatticePoint) -> Result<()> {
        if x.coords().iter().zip(y.coords()).any(|(a, b)| a == b) {
            return Err(Error::NotGeneric(format!(
                "neighborly pair {x}, {y} shares a coordinate"
            )));
        }
        Ok(())
    }
}

/// Builds the Scarf complex of a generic Λ-finite set up to `max_dim`.
pub fn build_scarf(ls: &LambdaSet, max_dim: usize) -> Result<ScarfComplex> {
    let n = ls.dim();
    if max_dim + 1 > n {
        return Err(Error::Precondition(format!(
            "max_dim {max_dim} exceeds n-1 = {}",
            n - 1
        )));
    }
    if ls.reps().is_empty() {
        return Err(Error::Precondition("A has no representatives".into()));
    }
    if !ls.lattice().is_generic()? {
        return Err(Error::NotGeneric("lattice has a non-fully-supported Markov element".into()));
    }
    check_set_antichain(ls)?;

    let mut dims: Vec<BTreeSet<Vec<LatticePoint>>> = vec![BTreeSet::new(); max_dim + 1];
    for rep in ls.reps() {
        if !is_neighborly(ls, std::slice::from_ref(rep))? {
            return Err(Error::Precondition(format!(
                "representative {rep} is not a minimal point of A"
            )));
        }
        dims[0].insert(vec![rep.clone()]);
    }

    let mut builder = Builder {
        ls,
        pair_cache: BTreeMap::new(),
    };

    if max_dim >= 1 {
        for rep in ls.reps() {
            let partners = edge_partners(ls, &mut builder, rep)?;
            let mut face = vec![rep.clone()];
            grow_faces(ls, &mut builder, &mut face, &partners, 0, max_dim, &mut dims)?;
        }
    }

    // canonical representatives, sorted
    let mut canon_dims: Vec<Vec<ScarfFace>> = Vec::with_capacity(max_dim + 1);
    for d in &dims {
        let mut set: BTreeSet<Vec<LatticePoint>> = BTreeSet::new();
        for verts in d {
            set.insert(canonicalize_face(ls, verts)?);
        }
        canon_dims.push(set.into_iter().map(ScarfFace::new).collect());
    }

    // incidence with explicit translations
    let mut incidence: Vec<Vec<Vec<(usize, LatticePoint)>>> = vec![Vec::new()];
    for i in 1..canon_dims.len() {
        let index: BTreeMap<Vec<LatticePoint>, usize> = canon_dims[i - 1]
            .iter()
            .enumerate()
            .map(|(k, f)| (f.vertices.clone(), k))
            .collect();
        let mut level = Vec::with_capacity(canon_dims[i].len());
        for face in &canon_dims[i] {
            let mut row = Vec::with_capacity(face.vertices.len());
            for j in 0..face.vertices.len() {
                let mut facet = face.vertices.clone();
                facet.remove(j);
                let canon = canonicalize_face(ls, &facet)?;
                let h = facet[0].sub(&canon[0]);
                let idx = *index.get(&canon).ok_or_else(|| {
                    Error::Verification(format!(
                        "facet {:?} of a stored face has no stored representative",
                        canon
                    ))
                })?;
                row.push((idx, h));
            }
            level.push(row);
        }
        incidence.push(level);
    }

    Ok(ScarfComplex {
        dims: canon_dims,
        incidence,
    })
}

/// Translates a face so its lex-smallest vertex lands on its orbit
/// representative.
fn canonicalize_face(ls: &LambdaSet, verts: &[LatticePoint]) -> Result<Vec<LatticePoint>> {
    let mut sorted = verts.to_vec();
    sorted.sort();
    let (_, _, h) = ls.canonical_rep(&sorted[0])?;
    if h.is_zero() {
        return Ok(sorted);
    }
    Ok(sorted.iter().map(|v| v.sub(&h)).collect())
}

fn check_set_antichain(ls: &LambdaSet) -> Result<()> {
    for a in ls.reps() {
        for b in ls.reps() {
            if a == b {
                continue;
            }
            // any translate of b's orbit above a makes the set comparable
            let lams = ls.lattice().translates_geq(&a.sub(b))?;
            if let Some(l) = lams.first() {
                return Err(Error::NotAntichain(format!(
                    "A contains comparable points {} <= {}",
                    a,
                    b.add(l)
                )));
            }
        }
    }
    Ok(())
}

/// All `β ∈ A` with `{a, β}` neighborly, from the exact codimension-1 window.
fn edge_partners(
    ls: &LambdaSet,
    builder: &mut Builder,
    a: &LatticePoint,
) -> Result<Vec<LatticePoint>> {
    let lat = ls.lattice();
    let u = lat
        .normal()
        .ok_or_else(|| Error::WindowRequired(lat.search_note()))?
        .clone();
    let (s, g) = lat.frobenius_data()?;
    let min_rep_value = ls
        .reps()
        .iter()
        .map(|r| u.dot(r))
        .min()
        .expect("nonempty A0");
    let h_max = min_rep_value + s + g;
    let n = ls.dim();

    // componentwise caps for the join, hence for the partner
    let a_val = u.dot(a);
    let mut hi = Vec::with_capacity(n);
    for j in 0..n {
        let rest = &a_val - u.coord(j) * a.coord(j);
        hi.push((&h_max - rest).div_floor(u.coord(j)));
    }
    let hi = LatticePoint::new(hi);

    let mut partners = Vec::new();
    for b in ls.reps() {
        let b_val = u.dot(b);
        let mut lo = Vec::with_capacity(n);
        for j in 0..n {
            let rest: BigInt = (0..n)
                .filter(|&k| k != j)
                .map(|k| u.coord(k) * hi.coord(k))
                .sum();
            lo.push((&b_val - rest).div_ceil(u.coord(j)));
        }
        let lo = LatticePoint::new(lo);
        for lam in lat.translates_in_box(&lo.sub(b), &hi.sub(b))? {
            let beta = b.add(&lam);
            if beta == *a {
                continue;
            }
            if builder.pair_neighborly(a, &beta)? {
                builder.check_generic_pair(a, &beta)?;
                partners.push(beta);
            }
        }
    }
    partners.sort();
    partners.dedup();
    Ok(partners)
}

fn grow_faces(
    ls: &LambdaSet,
    builder: &mut Builder,
    face: &mut Vec<LatticePoint>,
    partners: &[LatticePoint],
    start: usize,
    max_dim: usize,
    dims: &mut [BTreeSet<Vec<LatticePoint>>],
) -> Result<()> {
    let cur_dim = face.len() - 1;
    if cur_dim == max_dim {
        return Ok(());
    }
    for i in start..partners.len() {
        let cand = &partners[i];
        let mut ok = true;
        for v in face.iter() {
            if !builder.pair_neighborly(v, cand)? {
                ok = false;
                break;
            }
            builder.check_generic_pair(v, cand)?;
        }
        if !ok {
            continue;
        }
        face.push(cand.clone());
        if is_neighborly(ls, face)? {
            let mut sorted = face.clone();
            sorted.sort();
            dims[cur_dim + 1].insert(sorted);
            grow_faces(ls, builder, face, partners, i + 1, max_dim, dims)?;
        }
        face.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::AntichainLattice;

    fn p(cs: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(cs)
    }

    fn example_lattice() -> AntichainLattice {
        AntichainLattice::new(3, vec![p(&[-1, 2, -1]), p(&[3, -1, -1])]).unwrap()
    }

    fn example_set() -> LambdaSet {
        LambdaSet::new(example_lattice(), vec![p(&[1, 2, 0])]).unwrap()
    }

    fn lattice_as_set() -> LambdaSet {
        LambdaSet::new(example_lattice(), vec![p(&[0, 0, 0])]).unwrap()
    }

    #[test]
    fn neighborly_examples() {
        let a = example_set();
        assert!(is_neighborly(&a, &[p(&[1, 2, 0]), p(&[0, 4, -1])]).unwrap());
        assert!(is_neighborly(&a, &[p(&[1, 2, 0])]).unwrap());
        let lam = lattice_as_set();
        // {0, 2λ1} has witness λ1 strictly below the join
        assert!(!is_neighborly(&lam, &[p(&[0, 0, 0]), p(&[-2, 4, -2])]).unwrap());
        // not in A
        assert!(is_neighborly(&a, &[p(&[0, 0, 0])]).is_err());
    }

    #[test]
    fn strongly_neighborly_examples() {
        let a = example_set();
        // on generic sets the two notions agree
        for b in [
            vec![p(&[1, 2, 0]), p(&[0, 4, -1])],
            vec![p(&[1, 2, 0]), p(&[3, 3, -2])],
            vec![p(&[1, 2, 0]), p(&[1, 2, 0]).add(&p(&[1, -2, 1]))],
        ] {
            assert_eq!(
                is_neighborly(&a, &b).unwrap(),
                is_strongly_neighborly(&a, &b).unwrap()
            );
        }
        assert!(is_strongly_neighborly(&a, &[]).unwrap());

        // non-generic witness: neighborly but not strongly neighborly
        let r1 = AntichainLattice::new(3, vec![p(&[1, -1, 0])]).unwrap();
        let ls = LambdaSet::new(r1, vec![p(&[0, 0, 0])]).unwrap();
        let b = vec![p(&[0, 0, 0]), p(&[2, -2, 0])];
        assert!(is_neighborly(&ls, &b).unwrap());
        assert!(!is_strongly_neighborly(&ls, &b).unwrap());
    }

    #[test]
    fn lambda_equivariance() {
        let a = example_set();
        let b = vec![p(&[1, 2, 0]), p(&[0, 4, -1])];
        for lam in [p(&[-1, 2, -1]), p(&[3, -1, -1]), p(&[-2, -1, 2])] {
            let shifted: Vec<LatticePoint> = b.iter().map(|v| v.add(&lam)).collect();
            assert_eq!(
                is_neighborly(&a, &b).unwrap(),
                is_neighborly(&a, &shifted).unwrap()
            );
        }
    }

    #[test]
    fn build_example_counts() {
        let cx = build_scarf(&example_set(), 2).unwrap();
        assert_eq!(cx.orbit_counts(), vec![1, 3, 2]);
    }

    #[test]
    fn build_lattice_counts() {
        let cx = build_scarf(&lattice_as_set(), 2).unwrap();
        assert_eq!(cx.orbit_counts(), vec![1, 3, 2]);
    }

    #[test]
    fn build_vertices_only() {
        let cx = build_scarf(&example_set(), 0).unwrap();
        assert_eq!(cx.orbit_counts(), vec![1]);
    }

    #[test]
    fn lattice_face_counts_match_brute_force() {
        // brute-force neighborly enumeration over a window around 0
        let lam = lattice_as_set();
        let lo = p(&[-9, -9, -9]);
        let hi = p(&[9, 9, 9]);
        let pts = lam.materialize(&lo, &hi).unwrap();
        let zero = p(&[0, 0, 0]);
        let mut edge_pairs = 0usize;
        let mut triangles = 0usize;
        for x in &pts {
            if *x == zero {
                continue;
            }
            if is_neighborly(&lam, &[zero.clone(), x.clone()]).unwrap() {
                edge_pairs += 1;
            }
        }
        for (i, x) in pts.iter().enumerate() {
            if *x == zero {
                continue;
            }
            for y in pts.iter().skip(i + 1) {
                if *y == zero || y == x {
                    continue;
                }
                if is_neighborly(&lam, &[zero.clone(), x.clone(), y.clone()]).unwrap() {
                    triangles += 1;
                }
            }
        }
        // each edge orbit has two members through 0; each triangle orbit three
        assert_eq!(edge_pairs, 2 * 3);
        assert_eq!(triangles, 3 * 2);
    }

    #[test]
    fn subset_closure_property() {
        let a = example_set();
        let cx = build_scarf(&a, 2).unwrap();
        for face in &cx.dims[2] {
            for j in 0..face.vertices.len() {
                let mut sub = face.vertices.clone();
                sub.remove(j);
                assert!(is_neighborly(&a, &sub).unwrap());
            }
        }
    }

    #[test]
    fn incidence_translations_are_lattice_elements() {
        let a = example_set();
        let cx = build_scarf(&a, 2).unwrap();
        for i in 1..cx.dims.len() {
            for (f, face) in cx.dims[i].iter().enumerate() {
                for (j, (idx, h)) in cx.incidence[i][f].iter().enumerate() {
                    assert!(a.lattice().membership(h));
                    let tau = &cx.dims[i - 1][*idx];
                    let mut facet = face.vertices.clone();
                    facet.remove(j);
                    let translated: Vec<LatticePoint> =
                        tau.vertices.iter().map(|v| v.add(h)).collect();
                    assert_eq!(facet, translated);
                }
            }
        }
    }

    #[test]
    fn distinct_labels_in_generic_complex() {
        let cx = build_scarf(&example_set(), 2).unwrap();
        for level in &cx.dims {
            let labels: BTreeSet<&LatticePoint> = level.iter().map(|f| &f.label).collect();
            assert_eq!(labels.len(), level.len());
        }
    }

    #[test]
    fn non_generic_rejected() {
        let r1 = AntichainLattice::new(3, vec![p(&[1, -1, 0])]).unwrap();
        let ls = LambdaSet::new(r1, vec![p(&[0, 0, 0])]).unwrap();
        match build_scarf(&ls, 1) {
            Err(Error::NotGeneric(_)) => {}
            other => panic!("expected NotGeneric, got {other:?}"),
        }
    }
}
