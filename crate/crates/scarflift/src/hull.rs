//! Verification oracle: exact convex hull of the exponential embedding.
//!
//! Window points are embedded through `E_t`, rescaled to integer coordinates,
//! and completed with far ray-surrogate points inside the recession cone (one
//! per point and axis, with distinct jittered directions so unbounded faces
//! triangulate without exact coplanarities). The incremental hull handles
//! coplanar insertions exactly and the final triangulation is re-verified
//! against every input point, so a silent degeneracy cannot produce a wrong
//! face set. Only faces free of surrogates are reported; comparisons are
//! restricted to faces whose vertices have no truncation-boundary neighbors.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lambda_set::LambdaSet;
use crate::scarf::{build_scarf, ScarfComplex};
use crate::zn::LatticePoint;

/// Exact exponential embedding `E_t(a) = (t^{a_1}, ..., t^{a_n})`.
pub fn embed(points: &[LatticePoint], t: &BigRational) -> Result<Vec<Vec<BigRational>>> {
    if *t <= BigRational::one() {
        return Err(Error::Precondition(format!("t must exceed 1, got {t}")));
    }
    Ok(points
        .iter()
        .map(|p| p.coords().iter().map(|e| rational_pow(t, e)).collect())
        .collect())
}

fn rational_pow(t: &BigRational, e: &BigInt) -> BigRational {
    let digits = e.magnitude().to_u32_digits();
    assert!(digits.len() <= 1, "exponent {e} out of range");
    let exp = digits.first().copied().unwrap_or(0) as usize;
    let pow = BigRational::new(
        num_traits::pow::pow(t.numer().clone(), exp),
        num_traits::pow::pow(t.denom().clone(), exp),
    );
    if e.is_negative() {
        pow.recip()
    } else {
        pow
    }
}

/// Bounded faces of the truncated hull, with interior marking.
#[derive(Debug)]
pub struct HullFaceSet {
    pub t: BigRational,
    /// Faces by dimension; each face is a sorted list of lattice points.
    pub faces: [BTreeSet<Vec<LatticePoint>>; 3],
    /// Window points all of whose hull neighbors are window points.
    pub interior: BTreeSet<LatticePoint>,
    pub window_lo: LatticePoint,
    pub window_hi: LatticePoint,
}

impl HullFaceSet {
    pub fn interior_faces(&self) -> [BTreeSet<Vec<LatticePoint>>; 3] {
        let keep = |f: &Vec<LatticePoint>| f.iter().all(|v| self.interior.contains(v));
        [
            self.faces[0].iter().filter(|f| keep(f)).cloned().collect(),
            self.faces[1].iter().filter(|f| keep(f)).cloned().collect(),
            self.faces[2].iter().filter(|f| keep(f)).cloned().collect(),
        ]
    }
}

/// Computes the bounded faces of `conv(E_t(A ∩ window) + rays)`.
///
/// A window point is marked interior when it is at least `margin` away from
/// every window wall and none of its hull neighbors is a ray surrogate; with
/// `margin` exceeding the largest hull-edge span, the stars of interior
/// vertices are complete, so their faces agree with the untruncated hull.
pub fn hull_faces(
    ls: &LambdaSet,
    window_lo: &LatticePoint,
    window_hi: &LatticePoint,
    margin: &BigInt,
    t: &BigRational,
) -> Result<HullFaceSet> {
    if ls.dim() != 3 {
        return Err(Error::Precondition("hull oracle works in Z^3".into()));
    }
    if *t <= BigRational::one() {
        return Err(Error::Precondition(format!("t must exceed 1, got {t}")));
    }
    let window = ls.materialize(window_lo, window_hi)?;
    if window.is_empty() {
        return Err(Error::Precondition("window contains no points of A".into()));
    }
    // rescale t^k to integers: t = a/b, k in [kmin, kmax],
    // scale = a^{-kmin} b^{kmax}
    let (a, b) = (t.numer().clone(), t.denom().clone());
    let kmin = window
        .iter()
        .flat_map(|p| p.coords())
        .min()
        .cloned()
        .unwrap();
    let kmax = window
        .iter()
        .flat_map(|p| p.coords())
        .max()
        .cloned()
        .unwrap();
    let scaled_coord = |e: &BigInt| -> BigInt {
        // a^{e - kmin} * b^{kmax - e}
        big_pow(&a, &(e - &kmin)) * big_pow(&b, &(kmax.clone() - e))
    };
    let mut pts: Vec<[BigInt; 3]> = Vec::new();
    let mut origin: Vec<Option<usize>> = Vec::new();
    for (i, p) in window.iter().enumerate() {
        pts.push([
            scaled_coord(p.coord(0)),
            scaled_coord(p.coord(1)),
            scaled_coord(p.coord(2)),
        ]);
        origin.push(Some(i));
    }
    let maxabs = pts
        .iter()
        .flat_map(|p| p.iter())
        .map(|c| c.abs())
        .max()
        .unwrap();
    let big_m: BigInt = (maxabs + BigInt::one()) << 16;
    let kdir: BigInt = BigInt::one() << 20;
    let n_emb = pts.len();
    for i in 0..n_emb {
        for j in 0..3 {
            let c = BigInt::from(3 * i + j + 1);
            let jitter = [
                &c % BigInt::from(251),
                (&c * &c) % BigInt::from(1009),
                (&c * &c * &c) % BigInt::from(2003),
            ];
            let mut s = pts[i].clone();
            for (k, sk) in s.iter_mut().enumerate() {
                let mut dir = jitter[k].clone();
                if k == j {
                    dir += &kdir;
                }
                *sk += &big_m * dir;
            }
            pts.push(s);
            origin.push(None);
        }
    }
    let tris = convex_hull_triangles(&pts)?;

    // every window point must be a hull vertex
    let mut used = vec![false; pts.len()];
    for t in &tris {
        for &v in &t.v {
            used[v] = true;
        }
    }
    for i in 0..n_emb {
        if !used[i] {
            return Err(Error::Verification(format!(
                "embedded point {} is not a hull vertex",
                window[i]
            )));
        }
    }

    // group triangles by supporting plane; on a convex hull each plane key is
    // one facet
    let mut facets: BTreeMap<(Vec<BigInt>, BigInt), BTreeSet<usize>> = BTreeMap::new();
    for tr in &tris {
        let key = plane_key(&pts[tr.v[0]], &pts[tr.v[1]], &pts[tr.v[2]]);
        facets.entry(key).or_default().extend(tr.v.iter().cloned());
    }
    let tri_plane: Vec<(Vec<BigInt>, BigInt)> = tris
        .iter()
        .map(|tr| plane_key(&pts[tr.v[0]], &pts[tr.v[1]], &pts[tr.v[2]]))
        .collect();

    // hull edges: triangulation edges whose two incident triangles lie in
    // different planes
    let mut edge_tris: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (ti, tr) in tris.iter().enumerate() {
        for k in 0..3 {
            let a = tr.v[k];
            let b = tr.v[(k + 1) % 3];
            let key = (a.min(b), a.max(b));
            edge_tris.entry(key).or_default().push(ti);
        }
    }
    let mut neighbors: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut hull_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (&(a, b), incident) in &edge_tris {
        if incident.len() != 2 {
            return Err(Error::Verification(
                "hull triangulation is not edge-manifold".into(),
            ));
        }
        if tri_plane[incident[0]] != tri_plane[incident[1]] {
            hull_edges.insert((a, b));
            neighbors.entry(a).or_default().insert(b);
            neighbors.entry(b).or_default().insert(a);
        }
    }

    let lattice_of = |idx: usize| -> Option<LatticePoint> {
        origin[idx].map(|i| window[i].clone())
    };
    let mut faces: [BTreeSet<Vec<LatticePoint>>; 3] =
        [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
    for i in 0..n_emb {
        faces[0].insert(vec![window[i].clone()]);
    }
    for &(a, b) in &hull_edges {
        if let (Some(pa), Some(pb)) = (lattice_of(a), lattice_of(b)) {
            let mut f = vec![pa, pb];
            f.sort();
            faces[1].insert(f);
        }
    }
    for verts in facets.values() {
        let lat_verts: Option<Vec<LatticePoint>> =
            verts.iter().map(|&v| lattice_of(v)).collect();
        if let Some(mut f) = lat_verts {
            f.sort();
            faces[2].insert(f);
        }
    }

    // interior: deep enough inside the window, with no surrogate neighbors
    let mut interior = BTreeSet::new();
    for i in 0..n_emb {
        let v = &window[i];
        let deep = (0..3).all(|j| {
            v.coord(j) >= &(window_lo.coord(j) + margin)
                && v.coord(j) <= &(window_hi.coord(j) - margin)
        });
        let clean = neighbors
            .get(&i)
            .map(|ns| ns.iter().all(|&w| origin[w].is_some()))
            .unwrap_or(false);
        if deep && clean {
            interior.insert(v.clone());
        }
    }

    Ok(HullFaceSet {
        t: t.clone(),
        faces,
        interior,
        window_lo: window_lo.clone(),
        window_hi: window_hi.clone(),
    })
}

fn big_pow(base: &BigInt, exp: &BigInt) -> BigInt {
    assert!(!exp.is_negative());
    let digits = exp.magnitude().to_u32_digits();
    assert!(digits.len() <= 1, "exponent {exp} out of range");
    let e = digits.first().copied().unwrap_or(0) as usize;
    num_traits::pow::pow(base.clone(), e)
}

#[derive(Clone, Debug)]
struct Tri {
    v: [usize; 3],
}

fn sub3(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn det3(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Sign of the volume form of `(b-a, c-a, d-a)`.
fn orient(pts: &[[BigInt; 3]], a: usize, b: usize, c: usize, d: usize) -> i8 {
    let det = det3(
        &sub3(&pts[b], &pts[a]),
        &sub3(&pts[c], &pts[a]),
        &sub3(&pts[d], &pts[a]),
    );
    if det.is_positive() {
        1
    } else if det.is_negative() {
        -1
    } else {
        0
    }
}

/// Is `p` (known coplanar with triangle `t`) inside it, boundary included?
fn coplanar_inside(pts: &[[BigInt; 3]], t: &Tri, p: usize) -> bool {
    let n = cross3(
        &sub3(&pts[t.v[1]], &pts[t.v[0]]),
        &sub3(&pts[t.v[2]], &pts[t.v[0]]),
    );
    for k in 0..3 {
        let a = t.v[k];
        let b = t.v[(k + 1) % 3];
        let edge = sub3(&pts[b], &pts[a]);
        let to_p = sub3(&pts[p], &pts[a]);
        // sign of (edge x to_p) · n
        let s = det3(&edge, &to_p, &n);
        if s.is_negative() {
            return false;
        }
    }
    true
}

fn cross3(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Incremental convex hull with exact predicates; the result is re-verified
/// so degeneracies surface as errors rather than wrong answers.
fn convex_hull_triangles(pts: &[[BigInt; 3]]) -> Result<Vec<Tri>> {
    let n = pts.len();
    if n < 4 {
        return Err(Error::Precondition(format!(
            "need at least 4 points for a 3d hull, got {n}"
        )));
    }
    // initial affinely independent quadruple
    let p0 = 0usize;
    let p1 = (1..n)
        .find(|&i| pts[i] != pts[p0])
        .ok_or_else(|| Error::Verification("all points equal".into()))?;
    let p2 = (1..n)
        .find(|&i| {
            i != p1
                && !cross3(&sub3(&pts[i], &pts[p0]), &sub3(&pts[p1], &pts[p0]))
                    .iter()
                    .all(|c| c.is_zero())
        })
        .ok_or_else(|| Error::Verification("all points collinear".into()))?;
    let p3 = (1..n)
        .find(|&i| i != p1 && i != p2 && orient(pts, p0, p1, p2, i) != 0)
        .ok_or_else(|| Error::Verification("all points coplanar".into()))?;

    let make_outward = |a: usize, b: usize, c: usize, inner: usize| -> Tri {
        if orient(pts, a, b, c, inner) < 0 {
            Tri { v: [a, b, c] }
        } else {
            Tri { v: [a, c, b] }
        }
    };
    // reference interior combination: use the remaining tetra vertex for each
    // face, which lies strictly inside the opposite halfspace
    let mut tris = vec![
        make_outward(p0, p1, p2, p3),
        make_outward(p0, p1, p3, p2),
        make_outward(p0, p2, p3, p1),
        make_outward(p1, p2, p3, p0),
    ];

    let initial: BTreeSet<usize> = [p0, p1, p2, p3].into_iter().collect();
    for p in 0..n {
        if initial.contains(&p) {
            continue;
        }
        // visibility with exact coplanar handling
        let mut visible = vec![false; tris.len()];
        let mut any_strict = false;
        let mut on_surface = false;
        for (i, t) in tris.iter().enumerate() {
            match orient(pts, t.v[0], t.v[1], t.v[2], p) {
                1 => {
                    visible[i] = true;
                    any_strict = true;
                }
                0 => {
                    if coplanar_inside(pts, t, p) {
                        on_surface = true;
                    } else {
                        visible[i] = true;
                    }
                }
                _ => {}
            }
        }
        if on_surface || (!any_strict && !visible.iter().any(|&v| v)) {
            continue;
        }
        // horizon: edges between visible and invisible triangles
        let mut border: Vec<(usize, usize)> = Vec::new();
        let mut edge_count: BTreeMap<(usize, usize), i32> = BTreeMap::new();
        for (i, t) in tris.iter().enumerate() {
            if !visible[i] {
                continue;
            }
            for k in 0..3 {
                let a = t.v[k];
                let b = t.v[(k + 1) % 3];
                *edge_count.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        for (i, t) in tris.iter().enumerate() {
            if !visible[i] {
                continue;
            }
            for k in 0..3 {
                let a = t.v[k];
                let b = t.v[(k + 1) % 3];
                if edge_count[&(a.min(b), a.max(b))] == 1 {
                    // directed as in the visible triangle
                    border.push((a, b));
                }
            }
        }
        let mut next: Vec<Tri> = tris
            .iter()
            .zip(&visible)
            .filter(|(_, &vis)| !vis)
            .map(|(t, _)| t.clone())
            .collect();
        for (a, b) in border {
            let n_vec = cross3(&sub3(&pts[b], &pts[a]), &sub3(&pts[p], &pts[a]));
            if n_vec.iter().all(|c| c.is_zero()) {
                return Err(Error::Verification(
                    "degenerate horizon edge during hull insertion".into(),
                ));
            }
            next.push(Tri { v: [a, b, p] });
        }
        tris = next;
    }

    // full verification: orientation against every point and edge-manifoldness
    for t in &tris {
        for p in 0..n {
            if orient(pts, t.v[0], t.v[1], t.v[2], p) > 0 {
                return Err(Error::Verification(
                    "hull verification failed: point outside a facet".into(),
                ));
            }
        }
    }
    let mut edge_count: BTreeMap<(usize, usize), i32> = BTreeMap::new();
    for t in &tris {
        for k in 0..3 {
            let a = t.v[k];
            let b = t.v[(k + 1) % 3];
            *edge_count.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    if edge_count.values().any(|&c| c != 2) {
        return Err(Error::Verification(
            "hull verification failed: surface is not closed".into(),
        ));
    }
    Ok(tris)
}

/// Canonical supporting-plane key: primitive integer normal with positive
/// leading sign, plus the plane offset.
fn plane_key(a: &[BigInt; 3], b: &[BigInt; 3], c: &[BigInt; 3]) -> (Vec<BigInt>, BigInt) {
    let n = cross3(&sub3(b, a), &sub3(c, a));
    let g = n.iter().fold(BigInt::zero(), |g, x| {
        num_integer::Integer::gcd(&g, &x.abs())
    });
    let mut n: Vec<BigInt> = n.iter().map(|x| x / &g).collect();
    let flip = n
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.is_negative())
        .unwrap_or(false);
    if flip {
        for x in n.iter_mut() {
            *x = -&*x;
        }
    }
    let off = &n[0] * &a[0] + &n[1] * &a[1] + &n[2] * &a[2];
    (n, off)
}

/// Comparison report between the Scarf complex and the hull oracle.
#[derive(Debug)]
pub struct CompareReport {
    pub t: BigRational,
    pub interior_counts_hull: [usize; 3],
    pub interior_counts_scarf: [usize; 3],
    /// Faces seen by exactly one side, by dimension.
    pub hull_only: [Vec<Vec<LatticePoint>>; 3],
    pub scarf_only: [Vec<Vec<LatticePoint>>; 3],
}

impl CompareReport {
    pub fn is_match(&self) -> bool {
        self.hull_only.iter().all(|v| v.is_empty())
            && self.scarf_only.iter().all(|v| v.is_empty())
            && self.interior_counts_hull.iter().sum::<usize>() > 0
    }
}

/// Default window: pad the representatives by `domains + 1` edge spans; the
/// interior margin is one edge span plus one.
pub fn default_window(
    ls: &LambdaSet,
    scarf: &ScarfComplex,
    domains: i64,
) -> (LatticePoint, LatticePoint, BigInt) {
    let span = scarf.dims[1]
        .iter()
        .map(|e| e.vertices[1].sub(&e.vertices[0]).max_abs_coord())
        .max()
        .unwrap_or_else(BigInt::one);
    let margin = span + 1;
    let pad = &margin * (domains + 1);
    let dim = ls.dim();
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for j in 0..dim {
        let coords: Vec<&BigInt> = ls.reps().iter().map(|r| r.coord(j)).collect();
        lo.push(coords.iter().min().map(|c| *c - &pad).unwrap());
        hi.push(coords.iter().max().map(|c| *c + &pad).unwrap());
    }
    (LatticePoint::new(lo), LatticePoint::new(hi), margin)
}

/// Materializes the Scarf faces into the window and compares interior faces
/// against the hull oracle.
pub fn compare_scarf_hull(
    ls: &LambdaSet,
    domains: i64,
    t: &BigRational,
) -> Result<CompareReport> {
    let scarf = build_scarf(ls, 2)?;
    let (lo, hi, margin) = default_window(ls, &scarf, domains);
    let hull = hull_faces(ls, &lo, &hi, &margin, t)?;
    let hull_interior = hull.interior_faces();

    // materialize scarf faces into the window
    let mut scarf_faces: [BTreeSet<Vec<LatticePoint>>; 3] =
        [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
    for (d, level) in scarf.dims.iter().enumerate() {
        for face in level {
            // translations keeping every vertex in the window
            let mut tlo: Option<LatticePoint> = None;
            let mut thi: Option<LatticePoint> = None;
            for v in &face.vertices {
                let l = lo.sub(v);
                let h = hi.sub(v);
                tlo = Some(match tlo {
                    None => l,
                    Some(prev) => prev.join(&l).unwrap(),
                });
                thi = Some(match thi {
                    None => h,
                    Some(prev) => prev.meet(&h).unwrap(),
                });
            }
            let (tlo, thi) = (tlo.unwrap(), thi.unwrap());
            for lam in ls.lattice().translates_in_box(&tlo, &thi)? {
                let mut inst: Vec<LatticePoint> =
                    face.vertices.iter().map(|v| v.add(&lam)).collect();
                inst.sort();
                scarf_faces[d].insert(inst);
            }
        }
    }
    let keep = |f: &Vec<LatticePoint>| f.iter().all(|v| hull.interior.contains(v));
    let mut report = CompareReport {
        t: t.clone(),
        interior_counts_hull: [0; 3],
        interior_counts_scarf: [0; 3],
        hull_only: [Vec::new(), Vec::new(), Vec::new()],
        scarf_only: [Vec::new(), Vec::new(), Vec::new()],
    };
    for d in 0..3 {
        let s_int: BTreeSet<Vec<LatticePoint>> =
            scarf_faces[d].iter().filter(|f| keep(f)).cloned().collect();
        report.interior_counts_hull[d] = hull_interior[d].len();
        report.interior_counts_scarf[d] = s_int.len();
        for f in hull_interior[d].difference(&s_int) {
            report.hull_only[d].push(f.clone());
        }
        for f in s_int.difference(&hull_interior[d]) {
            report.scarf_only[d].push(f.clone());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::AntichainLattice;

    fn p(cs: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(cs)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn embed_examples() {
        let out = embed(&[p(&[1, 0, -1])], &rat(2)).unwrap();
        assert_eq!(out[0][0], rat(2));
        assert_eq!(out[0][1], rat(1));
        assert_eq!(out[0][2], BigRational::new(1.into(), 2.into()));
        let out = embed(&[p(&[0, 0, 0])], &rat(7)).unwrap();
        assert!(out[0].iter().all(|c| c.is_one()));
        let out = embed(&[p(&[0, 2, 0])], &rat(25)).unwrap();
        assert_eq!(out[0][1], rat(625));
        assert!(embed(&[p(&[1, 0, 0])], &rat(1)).is_err());
    }

    #[test]
    fn singleton_trivial_lattice() {
        let lat = AntichainLattice::new(3, vec![]).unwrap();
        let ls = LambdaSet::new(lat, vec![p(&[1, 2, 3])]).unwrap();
        let hull = hull_faces(
            &ls,
            &p(&[0, 0, 0]),
            &p(&[4, 4, 4]),
            &BigInt::from(1),
            &rat(25),
        )
        .unwrap();
        assert_eq!(hull.faces[0].len(), 1);
        assert!(hull.faces[1].is_empty());
        assert!(hull.faces[2].is_empty());
    }

    fn example_set() -> LambdaSet {
        let lat = AntichainLattice::new(3, vec![p(&[-1, 2, -1]), p(&[3, -1, -1])]).unwrap();
        LambdaSet::new(lat, vec![p(&[1, 2, 0])]).unwrap()
    }

    #[test]
    fn example_matches_scarf() {
        let ls = example_set();
        let report = compare_scarf_hull(&ls, 2, &rat(25)).unwrap();
        assert!(report.is_match(), "report: {report:?}");
        assert!(report.interior_counts_hull[0] > 0);
        // every face orbit is represented among the interior faces: 1, 3, 2
        let scarf = build_scarf(&ls, 2).unwrap();
        let (lo, hi, margin) = default_window(&ls, &scarf, 2);
        let hull = hull_faces(&ls, &lo, &hi, &margin, &rat(25)).unwrap();
        let interior = hull.interior_faces();
        for (d, want) in [(0usize, 1usize), (1, 3), (2, 2)] {
            let mut orbits = BTreeSet::new();
            for face in &interior[d] {
                let (_, _, h) = ls.canonical_rep(&face[0]).unwrap();
                let canon: Vec<LatticePoint> = face.iter().map(|v| v.sub(&h)).collect();
                orbits.insert(canon);
            }
            assert_eq!(orbits.len(), want, "dimension {d}");
        }
    }

    #[test]
    fn stability_between_t_values() {
        let ls = example_set();
        let scarf = build_scarf(&ls, 2).unwrap();
        let (lo, hi, margin) = default_window(&ls, &scarf, 2);
        let h25 = hull_faces(&ls, &lo, &hi, &margin, &rat(25)).unwrap();
        let h26 = hull_faces(&ls, &lo, &hi, &margin, &rat(26)).unwrap();
        assert_eq!(h25.interior_faces(), h26.interior_faces());
    }

    #[test]
    fn non_generic_refused() {
        let lat = AntichainLattice::new(3, vec![p(&[1, -1, 0])]).unwrap();
        let ls = LambdaSet::new(lat, vec![p(&[0, 0, 0])]).unwrap();
        assert!(compare_scarf_hull(&ls, 2, &rat(25)).is_err());
    }

    #[test]
    fn lattice_itself_matches() {
        let lat = AntichainLattice::new(3, vec![p(&[-1, 2, -1]), p(&[3, -1, -1])]).unwrap();
        let ls = LambdaSet::new(lat, vec![p(&[0, 0, 0])]).unwrap();
        let report = compare_scarf_hull(&ls, 2, &rat(25)).unwrap();
        assert!(report.is_match(), "report: {report:?}");
    }
}
