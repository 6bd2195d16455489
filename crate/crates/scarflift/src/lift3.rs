//! Lifting pipeline in `Z^3`: the explicit rank-(1,3,2) lattice resolution,
//! Markov-path decompositions, edge lifting, face lifting terms, and the
//! horseshoe assembly of a resolution of the binomial-plus-monomial ideal.
//!
//! Intermediate coefficients are allowed to be Laurent; the assembler checks
//! that every entry of the final differentials is an honest polynomial and
//! that the full complex composes to zero exactly.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chain::{DegreeMode, FreeChainComplex, FreeModuleSpec, Generator, SparseMatrix};
use crate::error::{Error, Result};
use crate::lambda_set::LambdaSet;
use crate::lattice::AntichainLattice;
use crate::linalg::QMatrix;
use crate::poly::{strand_basis, LaurentPolynomial};
use crate::scarf::build_scarf;
use crate::zn::LatticePoint;

/// The explicit resolution `S <- S^3 <- S^2` of the lattice-ideal quotient,
/// with sign-normalized Markov elements and monomial syzygy columns.
#[derive(Clone, Debug)]
pub struct LatticeResolutionZ3 {
    pub lattice: AntichainLattice,
    /// Normalized so each element has a unique positive coordinate, the
    /// positive coordinates are distinct, and the three sum to zero.
    pub markov: [LatticePoint; 3],
    pub binomials: [LaurentPolynomial; 3],
    pub syzygy_labels: [LatticePoint; 2],
    /// `syzygies[j][i]` is the coefficient of the i-th Markov generator in
    /// the j-th syzygy column.
    pub syzygies: [[LaurentPolynomial; 3]; 2],
}

impl LatticeResolutionZ3 {
    /// The rank-(1,3,2) complex, graded by classes modulo the lattice.
    pub fn to_complex(&self) -> Result<FreeChainComplex> {
        let dim = 3;
        let m0 = FreeModuleSpec {
            generators: vec![Generator {
                symbol: "one".into(),
                degree: LatticePoint::zero(dim),
            }],
        };
        let m1 = FreeModuleSpec {
            generators: (0..3)
                .map(|i| Generator {
                    symbol: format!("lam{}", i + 1),
                    degree: self.markov[i].positive_part(),
                })
                .collect(),
        };
        let m2 = FreeModuleSpec {
            generators: (0..2)
                .map(|j| Generator {
                    symbol: format!("p{}", j + 1),
                    degree: self.syzygy_labels[j].clone(),
                })
                .collect(),
        };
        let mut d1 = SparseMatrix::zero(1, 3);
        for i in 0..3 {
            d1.set(0, i, self.binomials[i].clone());
        }
        let mut d2 = SparseMatrix::zero(3, 2);
        for j in 0..2 {
            for i in 0..3 {
                d2.set(i, j, self.syzygies[j][i].clone());
            }
        }
        FreeChainComplex::build(
            dim,
            DegreeMode::ClassModLambda,
            Some(self.lattice.clone()),
            vec![m0, m1, m2],
            vec![d1, d2],
            Some(vec![LaurentPolynomial::one(dim)]),
        )
    }
}

/// Sign-normalizes three fully supported Markov elements of a generic
/// codimension-1 lattice in `Z^3`: unique positive coordinate each, distinct
/// positive positions, ordered by normal value of the positive part.
fn normalize_markov_z3(
    lat: &AntichainLattice,
    elements: &[LatticePoint],
) -> Result<[LatticePoint; 3]> {
    if elements.len() != 3 {
        return Err(Error::Lifting(format!(
            "expected 3 Markov elements in Z^3, found {}",
            elements.len()
        )));
    }
    let u = lat.normal().expect("codim-1");
    let mut normalized = Vec::with_capacity(3);
    for e in elements {
        if !e.is_fully_supported() {
            return Err(Error::NotGeneric(format!(
                "Markov element {e} is not fully supported"
            )));
        }
        let positives = e.coords().iter().filter(|c| c.is_positive()).count();
        let v = match positives {
            1 => e.clone(),
            2 => e.neg(),
            _ => {
                return Err(Error::Lifting(format!(
                    "Markov element {e} has no mixed-sign normalization"
                )))
            }
        };
        normalized.push(v);
    }
    normalized.sort_by(|a, b| {
        u.dot(&a.positive_part())
            .cmp(&u.dot(&b.positive_part()))
            .then_with(|| a.cmp(b))
    });
    let positions: BTreeSet<usize> = normalized
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .position(|c| c.is_positive())
                .expect("one positive coordinate")
        })
        .collect();
    if positions.len() != 3 {
        return Err(Error::Lifting(
            "positive coordinates of the normalized Markov elements are not distinct".into(),
        ));
    }
    let sum = normalized[0].add(&normalized[1]).add(&normalized[2]);
    if !sum.is_zero() {
        return Err(Error::Lifting(format!(
            "normalized Markov elements do not sum to zero (sum {sum})"
        )));
    }
    Ok([
        normalized[0].clone(),
        normalized[1].clone(),
        normalized[2].clone(),
    ])
}

/// Builds the explicit lattice resolution by solving the two degree-strand
/// kernel systems at the triangle labels of the Scarf complex of `Λ`.
pub fn lattice_resolution_z3(lat: &AntichainLattice) -> Result<LatticeResolutionZ3> {
    if lat.dim() != 3 {
        return Err(Error::Precondition(format!(
            "lifting pipeline is for Z^3, got Z^{}",
            lat.dim()
        )));
    }
    let u = lat
        .normal()
        .ok_or_else(|| Error::Precondition("lattice must have codimension 1".into()))?
        .clone();
    let markov = normalize_markov_z3(lat, &lat.markov_basis()?.elements)?;
    let binomials = [
        LaurentPolynomial::binomial_of(&markov[0]),
        LaurentPolynomial::binomial_of(&markov[1]),
        LaurentPolynomial::binomial_of(&markov[2]),
    ];

    let lam_set = LambdaSet::new(lat.clone(), vec![LatticePoint::zero(3)])?;
    let scarf = build_scarf(&lam_set, 2)?;
    if scarf.orbit_counts() != vec![1, 3, 2] {
        return Err(Error::Lifting(format!(
            "Scarf complex of the lattice has orbit counts {:?}, expected [1, 3, 2]",
            scarf.orbit_counts()
        )));
    }
    let mut labels: Vec<LatticePoint> = scarf.dims[2].iter().map(|f| f.label.clone()).collect();
    // solve the smaller normal value first; its kernel is one-dimensional
    labels.sort_by(|a, b| u.dot(a).cmp(&u.dot(b)).then_with(|| a.cmp(b)));

    let degrees: Vec<LatticePoint> = markov.iter().map(|m| m.positive_part()).collect();
    let mut columns: Vec<[LaurentPolynomial; 3]> = Vec::new();
    for label in &labels {
        let col = solve_syzygy_strand(lat, &degrees, &binomials, label, &columns, &labels)?;
        columns.push(col);
    }
    // present in descending label value, matching generator order p1, p2
    let syzygy_labels = [labels[1].clone(), labels[0].clone()];
    let syzygies = [columns[1].clone(), columns[0].clone()];

    for (j, col) in syzygies.iter().enumerate() {
        verify_syzygy_shape(col)
            .map_err(|e| Error::Lifting(format!("syzygy column {} fails: {e}", j + 1)))?;
        let mut total = LaurentPolynomial::zero(3);
        for i in 0..3 {
            total = total.add(&col[i].mul(&binomials[i])?)?;
        }
        if !total.is_zero() {
            return Err(Error::Lifting(format!(
                "syzygy column {} does not annihilate the binomials",
                j + 1
            )));
        }
    }

    Ok(LatticeResolutionZ3 {
        lattice: lat.clone(),
        markov,
        binomials,
        syzygy_labels,
        syzygies,
    })
}

/// Kernel of the strand map at `label`, reduced modulo monomial multiples of
/// the previously found columns; must be one-dimensional.
fn solve_syzygy_strand(
    lat: &AntichainLattice,
    degrees: &[LatticePoint],
    binomials: &[LaurentPolynomial; 3],
    label: &LatticePoint,
    previous: &[[LaurentPolynomial; 3]],
    labels: &[LatticePoint],
) -> Result<[LaurentPolynomial; 3]> {
    // source basis: (generator, monomial)
    let mut src: Vec<(usize, LatticePoint)> = Vec::new();
    for (i, deg) in degrees.iter().enumerate() {
        for m in strand_basis(deg, label, lat)? {
            src.push((i, m));
        }
    }
    // target basis: monomials of the label class
    let target = lat.fiber_points(label)?;
    let tindex: std::collections::BTreeMap<LatticePoint, usize> = target
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let mut mat = QMatrix::zeros(target.len(), src.len());
    for (col, (i, m)) in src.iter().enumerate() {
        for (exp, coeff) in binomials[*i].terms() {
            let t = m.add(exp);
            let row = *tindex
                .get(&t)
                .ok_or_else(|| Error::Verification(format!("monomial {t} escapes strand")))?;
            mat.add_to(row, col, coeff);
        }
    }
    let kernel = mat.kernel_basis();
    // span of monomial multiples of previously found columns inside this strand
    let mut shifted: Vec<Vec<BigRational>> = Vec::new();
    for (pcol, plabel) in previous.iter().zip(labels) {
        for m in strand_basis(plabel, label, lat)? {
            let mut vec = vec![BigRational::zero(); src.len()];
            for i in 0..3 {
                for (exp, coeff) in pcol[i].terms() {
                    let shifted_exp = m.add(exp);
                    let pos = src
                        .iter()
                        .position(|(g, mm)| *g == i && *mm == shifted_exp)
                        .ok_or_else(|| {
                            Error::Verification("shifted syzygy escapes strand".into())
                        })?;
                    vec[pos] = &vec[pos] + coeff;
                }
            }
            shifted.push(vec);
        }
    }
    if kernel.len() != shifted.len() + 1 {
        return Err(Error::Lifting(format!(
            "syzygy strand at {label} has kernel dimension {}, expected {}",
            kernel.len(),
            shifted.len() + 1
        )));
    }
    // pick the unique kernel vector independent of the shifted span
    let base_rank = if shifted.is_empty() {
        0
    } else {
        rows_rank(&shifted, src.len())
    };
    let mut chosen: Option<Vec<BigRational>> = None;
    for cand in &kernel {
        let mut rows = shifted.clone();
        rows.push(cand.clone());
        if rows_rank(&rows, src.len()) > base_rank {
            chosen = Some(cand.clone());
            break;
        }
    }
    let chosen = chosen.ok_or_else(|| {
        Error::Lifting(format!("no new syzygy found in strand at {label}"))
    })?;
    // clear denominators, divide content, make the first nonzero entry positive
    let mut denlcm = BigInt::one();
    for c in &chosen {
        denlcm = denlcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = chosen
        .iter()
        .map(|c| (c * BigRational::from_integer(denlcm.clone())).to_integer())
        .collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |g, c| g.gcd(&c.abs()));
    let sign = ints
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| if c.is_negative() { -1 } else { 1 })
        .unwrap_or(1);
    let mut col = [
        LaurentPolynomial::zero(3),
        LaurentPolynomial::zero(3),
        LaurentPolynomial::zero(3),
    ];
    for (k, (i, m)) in src.iter().enumerate() {
        let c = &ints[k] * BigInt::from(sign);
        let c = &c / &content;
        if !c.is_zero() {
            col[*i] = col[*i].add(&LaurentPolynomial::monomial(
                m.clone(),
                BigRational::from_integer(c),
            ))?;
        }
    }
    Ok(col)
}

fn rows_rank(rows: &[Vec<BigRational>], cols: usize) -> usize {
    let mut m = QMatrix::zeros(rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    m.rank()
}

/// Each syzygy column must consist of three single-variable monomial entries
/// in three distinct variables.
fn verify_syzygy_shape(col: &[LaurentPolynomial; 3]) -> Result<()> {
    let mut vars = BTreeSet::new();
    for entry in col {
        let (exp, _) = entry
            .as_monomial()
            .ok_or_else(|| Error::Lifting(format!("entry {entry} is not a monomial")))?;
        let support = exp.support();
        if support.len() != 1 || !exp.is_nonneg() {
            return Err(Error::Lifting(format!(
                "entry {entry} is not a positive power of a single variable"
            )));
        }
        vars.insert(support[0]);
    }
    if vars.len() != 3 {
        return Err(Error::Lifting(
            "syzygy entries do not use three distinct variables".into(),
        ));
    }
    Ok(())
}

/// Coefficients `c_i` with `Σ c_i (X^{λi+} - X^{λi-}) = X^{g+} - X^{g-}`,
/// found by telescoping a shortest Markov path in the fiber of `g+`.
#[derive(Clone, Debug)]
pub struct PathDecomposition {
    pub target: LatticePoint,
    pub coeffs: [LaurentPolynomial; 3],
}

pub fn markov_path_decompose(
    res: &LatticeResolutionZ3,
    g: &LatticePoint,
) -> Result<PathDecomposition> {
    if !res.lattice.membership(g) {
        return Err(Error::NotInLattice(g.to_string()));
    }
    let zero3 = [
        LaurentPolynomial::zero(3),
        LaurentPolynomial::zero(3),
        LaurentPolynomial::zero(3),
    ];
    if g.is_zero() {
        return Ok(PathDecomposition {
            target: g.clone(),
            coeffs: zero3,
        });
    }
    let (gp, gm) = g.pos_neg_parts();
    let fiber = res.lattice.fiber_points(&gp)?;
    let start = fiber
        .iter()
        .position(|p| *p == gp)
        .expect("g+ lies in its own fiber");
    let goal = fiber
        .iter()
        .position(|p| *p == gm)
        .expect("g- lies in the fiber of g+");
    // moves in tie-break order: +λ1, +λ2, +λ3, then the negatives
    let mut moves: Vec<(usize, i8)> = Vec::new();
    for i in 0..3 {
        moves.push((i, 1));
    }
    for i in 0..3 {
        moves.push((i, -1));
    }
    let mut parent: Vec<Option<(usize, usize, i8)>> = vec![None; fiber.len()];
    let mut seen = vec![false; fiber.len()];
    let mut queue = std::collections::VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        if v == goal {
            break;
        }
        for &(i, sign) in &moves {
            let step = if sign > 0 {
                res.markov[i].clone()
            } else {
                res.markov[i].neg()
            };
            let next = fiber[v].sub(&step);
            if !next.is_nonneg() {
                continue;
            }
            if let Some(w) = fiber.iter().position(|p| *p == next) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, i, sign));
                    queue.push_back(w);
                }
            }
        }
    }
    if !seen[goal] {
        return Err(Error::MarkovVerification(format!(
            "no Markov path from {gp} to {gm}"
        )));
    }
    let mut coeffs = zero3;
    let mut cur = goal;
    while let Some((prev, i, sign)) = parent[cur] {
        // step from fiber[prev] to fiber[cur] = fiber[prev] - sign*λi
        let low = fiber[prev].meet(&fiber[cur])?;
        let c = BigRational::from_integer(BigInt::from(sign));
        coeffs[i] = coeffs[i].add(&LaurentPolynomial::monomial(low, c))?;
        cur = prev;
    }
    // verify the defining identity before returning
    let mut total = LaurentPolynomial::zero(3);
    for i in 0..3 {
        total = total.add(&coeffs[i].mul(&res.binomials[i])?)?;
    }
    if total != LaurentPolynomial::binomial_of(g) {
        return Err(Error::Lifting(format!(
            "path decomposition identity failed for {g}"
        )));
    }
    for c in &coeffs {
        if !c.is_polynomial() {
            return Err(Error::Lifting(format!(
                "path coefficient {c} is not a polynomial"
            )));
        }
    }
    Ok(PathDecomposition {
        target: g.clone(),
        coeffs,
    })
}

/// An edge of `N(A)` oriented from `tail` to `head`.
#[derive(Clone, Debug)]
pub struct OrientedEdge {
    pub tail: LatticePoint,
    pub head: LatticePoint,
}

/// The lifted image of an edge generator in `P_0`.
#[derive(Clone, Debug)]
pub struct EdgeColumn {
    /// Coefficients on the three Markov generators.
    pub lattice_part: [LaurentPolynomial; 3],
    /// Coefficients on the monomial generators, by representative index.
    pub vertex_part: Vec<(usize, LaurentPolynomial)>,
}

/// Lifts an edge `{B+f, C+g}`: the cellular pair of vertex terms plus the
/// path-decomposed lattice corrections for `f` and `g`.
pub fn lift_edge_d0(
    res: &LatticeResolutionZ3,
    ls: &LambdaSet,
    edge: &OrientedEdge,
) -> Result<EdgeColumn> {
    let (b_idx, b_rep, f) = ls.canonical_rep(&edge.tail)?;
    let (c_idx, c_rep, g) = ls.canonical_rep(&edge.head)?;
    let join = edge.tail.join(&edge.head)?;
    let mut vertex = vec![
        (c_idx, LaurentPolynomial::monomial_one(join.sub(&edge.head))),
        (
            b_idx,
            LaurentPolynomial::monomial_one(join.sub(&edge.tail)).negate(),
        ),
    ];
    // merge same-orbit endpoints
    if b_idx == c_idx {
        let merged = vertex[0].1.add(&vertex[1].1)?;
        vertex = vec![(b_idx, merged)];
    }
    let mut lattice_part = [
        LaurentPolynomial::zero(3),
        LaurentPolynomial::zero(3),
        LaurentPolynomial::zero(3),
    ];
    if !g.is_zero() {
        let dec = markov_path_decompose(res, &g)?;
        let shift = join.sub(&g.positive_part());
        for i in 0..3 {
            lattice_part[i] = lattice_part[i].add(&dec.coeffs[i].shift(&shift))?;
        }
    }
    if !f.is_zero() {
        let dec = markov_path_decompose(res, &f)?;
        let shift = join.sub(&f.positive_part());
        for i in 0..3 {
            lattice_part[i] = lattice_part[i].sub(&dec.coeffs[i].shift(&shift))?;
        }
    }
    // the augmentation must annihilate the column
    let mut total = LaurentPolynomial::zero(3);
    for (idx, p) in &vertex {
        total = total.add(&p.mul(&LaurentPolynomial::monomial_one(ls.reps()[*idx].clone()))?)?;
    }
    for i in 0..3 {
        total = total.add(&lattice_part[i].mul(&res.binomials[i])?)?;
    }
    if !total.is_zero() {
        return Err(Error::Lifting(format!(
            "edge {} -> {} lift does not compose to zero with the augmentation",
            b_rep.add(&f),
            c_rep.add(&g)
        )));
    }
    Ok(EdgeColumn {
        lattice_part,
        vertex_part: vertex,
    })
}

/// Lifting data for a translated edge `τ + h`.
#[derive(Clone, Debug)]
pub struct FaceLifting {
    /// `d(e_τ) - d(e_{τ+h})` restricted to the Markov generators.
    pub lifting_term: [LaurentPolynomial; 3],
    /// Laurent-monomial coefficients with `lifting term = Σ b_j d(e_{p_j})`.
    pub b: [LaurentPolynomial; 2],
}

/// Computes the lifting term of the representative edge `τ` against its
/// translate `τ + h` and solves for the syzygy coefficients, strand-wise.
pub fn face_lifting_term(
    res: &LatticeResolutionZ3,
    ls: &LambdaSet,
    edge_rep: &OrientedEdge,
    h: &LatticePoint,
) -> Result<FaceLifting> {
    let zero3 = [
        LaurentPolynomial::zero(3),
        LaurentPolynomial::zero(3),
        LaurentPolynomial::zero(3),
    ];
    if h.is_zero() {
        return Ok(FaceLifting {
            lifting_term: zero3,
            b: [LaurentPolynomial::zero(3), LaurentPolynomial::zero(3)],
        });
    }
    let (_, _, f_r) = ls.canonical_rep(&edge_rep.tail)?;
    let (_, _, g_r) = ls.canonical_rep(&edge_rep.head)?;
    let rep_join = edge_rep.tail.join(&edge_rep.head)?;
    let tr_join = rep_join.add(h);
    let c = markov_path_decompose(res, &g_r)?;
    let c_pr = markov_path_decompose(res, &g_r.add(h))?;
    let d = markov_path_decompose(res, &f_r)?;
    let d_pr = markov_path_decompose(res, &f_r.add(h))?;

    let mut lifting_term = zero3;
    let s1 = rep_join.sub(&g_r.positive_part());
    let s2 = tr_join.sub(&g_r.add(h).positive_part());
    let s3 = rep_join.sub(&f_r.positive_part());
    let s4 = tr_join.sub(&f_r.add(h).positive_part());
    for i in 0..3 {
        lifting_term[i] = lifting_term[i]
            .add(&c.coeffs[i].shift(&s1))?
            .sub(&c_pr.coeffs[i].shift(&s2))?
            .sub(&d.coeffs[i].shift(&s3))?
            .add(&d_pr.coeffs[i].shift(&s4))?;
    }
    let b = solve_b_coefficients(res, &lifting_term)?;
    Ok(FaceLifting { lifting_term, b })
}

/// Solves `Σ b_j d(e_{p_j}) = term` for Laurent monomials `b_j`, by
/// enumerating the finitely many degree-compatible candidate exponents and
/// solving the resulting scalar systems exactly.
fn solve_b_coefficients(
    res: &LatticeResolutionZ3,
    term: &[LaurentPolynomial; 3],
) -> Result<[LaurentPolynomial; 2]> {
    let mut candidates: [Vec<Option<LatticePoint>>; 2] = [vec![None], vec![None]];
    for j in 0..2 {
        let mut set = BTreeSet::new();
        for i in 0..3 {
            if let Some((qe, _)) = res.syzygies[j][i].as_monomial() {
                for (e, _) in term[i].terms() {
                    set.insert(e.sub(qe));
                }
            }
        }
        candidates[j].extend(set.into_iter().map(Some));
    }
    let mut solutions: Vec<[LaurentPolynomial; 2]> = Vec::new();
    for m1 in &candidates[0] {
        'outer: for m2 in &candidates[1] {
            // unknown scalars for the active candidates
            let active: Vec<(usize, &LatticePoint)> = [m1, m2]
                .iter()
                .enumerate()
                .filter_map(|(j, m)| m.as_ref().map(|mm| (j, mm)))
                .collect();
            // rows indexed by (generator i, exponent)
            let mut exps: Vec<(usize, LatticePoint)> = Vec::new();
            for i in 0..3 {
                for (e, _) in term[i].terms() {
                    exps.push((i, e.clone()));
                }
                for (j, m) in &active {
                    if let Some((qe, _)) = res.syzygies[*j][i].as_monomial() {
                        exps.push((i, m.add(qe)));
                    }
                }
            }
            exps.sort();
            exps.dedup();
            let mut mat = QMatrix::zeros(exps.len(), active.len());
            let mut rhs = Vec::with_capacity(exps.len());
            for (row, (i, e)) in exps.iter().enumerate() {
                for (col, (j, m)) in active.iter().enumerate() {
                    if let Some((qe, qc)) = res.syzygies[*j][*i].as_monomial() {
                        if m.add(qe) == *e {
                            mat.add_to(row, col, qc);
                        }
                    }
                }
                rhs.push(term[*i].coeff(e));
            }
            let scalars = match mat.solve(&rhs) {
                crate::linalg::SolveOutcome::Unique(s) => s,
                crate::linalg::SolveOutcome::NoSolution => continue,
                crate::linalg::SolveOutcome::Underdetermined => continue,
            };
            if active.is_empty() {
                if term.iter().all(|t| t.is_zero()) {
                    solutions.push([LaurentPolynomial::zero(3), LaurentPolynomial::zero(3)]);
                }
                continue;
            }
            let mut b = [LaurentPolynomial::zero(3), LaurentPolynomial::zero(3)];
            for (col, (j, m)) in active.iter().enumerate() {
                if scalars[col].is_zero() {
                    // degenerate duplicate of a smaller candidate set
                    continue 'outer;
                }
                b[*j] = LaurentPolynomial::monomial((*m).clone(), scalars[col].clone());
            }
            // verify the identity symbolically
            for i in 0..3 {
                let mut lhs = LaurentPolynomial::zero(3);
                for j in 0..2 {
                    lhs = lhs.add(&b[j].mul(&res.syzygies[j][i])?)?;
                }
                if lhs != term[i] {
                    continue 'outer;
                }
            }
            if !solutions.contains(&b) {
                solutions.push(b);
            }
        }
    }
    match solutions.len() {
        0 => Err(Error::Lifting(
            "no syzygy coefficients solve the lifting term".into(),
        )),
        1 => Ok(solutions.pop_unwrap()),
        n => Err(Error::Lifting(format!(
            "syzygy coefficients for the lifting term are not unique ({n} solutions)"
        ))),
    }
}

trait PopUnwrap<T> {
    fn pop_unwrap(self) -> T;
}

impl<T> PopUnwrap<T> for Vec<T> {
    fn pop_unwrap(mut self) -> T {
        self.pop().expect("nonempty")
    }
}

/// Generator provenance in the assembled complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenProvenance {
    /// `e_{λi}`.
    LatticeGen(usize),
    /// `e_{pj}`.
    LatticeSyzygy(usize),
    /// Monomial generator for the i-th representative.
    Vertex(usize),
    /// Edge orbit index in the Scarf complex.
    Edge(usize),
    /// Face orbit index.
    Face(usize),
}

#[derive(Clone, Debug)]
pub struct LiftedComplex {
    pub complex: FreeChainComplex,
    pub provenance: Vec<Vec<GenProvenance>>,
    pub scarf_counts: Vec<usize>,
    pub lattice_resolution: LatticeResolutionZ3,
}

/// Assembles the horseshoe resolution of `I_Λ + I_{A_0}` from the lattice
/// resolution and the lifted Scarf complex of `A`.
pub fn assemble_horseshoe(ls: &LambdaSet) -> Result<LiftedComplex> {
    let lat = ls.lattice();
    if ls.dim() != 3 {
        return Err(Error::Precondition("lifting pipeline is for Z^3".into()));
    }
    for rep in ls.reps() {
        if !rep.is_nonneg() {
            return Err(Error::Precondition(format!(
                "representative {rep} is not in N^3"
            )));
        }
    }
    if ls.reps().is_empty() || ls.reps().iter().all(|r| r.is_zero()) {
        return Err(Error::Precondition(
            "A0 must contain a nonzero representative".into(),
        ));
    }
    let res = lattice_resolution_z3(lat)?;
    for rep in ls.reps() {
        for lam in &res.markov {
            let (plus, minus) = lam.pos_neg_parts();
            if rep.leq(&plus) || rep.leq(&minus) {
                return Err(Error::Precondition(format!(
                    "representative {rep} divides a Markov monomial of {lam}"
                )));
            }
        }
    }
    let scarf = build_scarf(ls, 2)?;

    // module 0: Markov generators then monomial generators
    let mut gens0 = Vec::new();
    let mut prov0 = Vec::new();
    for i in 0..3 {
        gens0.push(Generator {
            symbol: format!("lam{}", i + 1),
            degree: res.markov[i].positive_part(),
        });
        prov0.push(GenProvenance::LatticeGen(i));
    }
    for (i, rep) in ls.reps().iter().enumerate() {
        gens0.push(Generator {
            symbol: format!("a{i}"),
            degree: rep.clone(),
        });
        prov0.push(GenProvenance::Vertex(i));
    }

    // module 1: syzygy generators then edge orbits
    let mut gens1 = Vec::new();
    let mut prov1 = Vec::new();
    for j in 0..2 {
        gens1.push(Generator {
            symbol: format!("p{}", j + 1),
            degree: res.syzygy_labels[j].clone(),
        });
        prov1.push(GenProvenance::LatticeSyzygy(j));
    }
    let edges = &scarf.dims[1];
    for (i, e) in edges.iter().enumerate() {
        gens1.push(Generator {
            symbol: format!("E{i}"),
            degree: e.label.clone(),
        });
        prov1.push(GenProvenance::Edge(i));
    }

    // module 2: face orbits
    let faces = scarf.dims.get(2).cloned().unwrap_or_default();
    let mut gens2 = Vec::new();
    let mut prov2 = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        gens2.push(Generator {
            symbol: format!("F{i}"),
            degree: f.label.clone(),
        });
        prov2.push(GenProvenance::Face(i));
    }

    let rows0 = gens0.len();
    let cols1 = gens1.len();
    let mut d1 = SparseMatrix::zero(rows0, cols1);
    for j in 0..2 {
        for i in 0..3 {
            d1.set(i, j, res.syzygies[j][i].clone());
        }
    }
    let mut edge_data: Vec<OrientedEdge> = Vec::new();
    for (k, e) in edges.iter().enumerate() {
        let oe = OrientedEdge {
            tail: e.vertices[0].clone(),
            head: e.vertices[1].clone(),
        };
        let col = lift_edge_d0(&res, ls, &oe)?;
        for i in 0..3 {
            if !col.lattice_part[i].is_zero() {
                d1.add_to(i, 2 + k, &col.lattice_part[i]);
            }
        }
        for (idx, p) in &col.vertex_part {
            d1.add_to(3 + idx, 2 + k, p);
        }
        edge_data.push(oe);
    }

    let mut d2 = SparseMatrix::zero(cols1, gens2.len());
    for (c, face) in faces.iter().enumerate() {
        for (j, (edge_idx, h)) in scarf.incidence[2][c].iter().enumerate() {
            let facet_label = edges[*edge_idx].label.add(h);
            let exp = face.label.sub(&facet_label);
            if !exp.is_nonneg() {
                return Err(Error::NegativeCellularExponent(format!(
                    "face {:?}, facet {j}",
                    face.vertices
                )));
            }
            let sign = if j % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            let coeff = LaurentPolynomial::monomial(exp, sign);
            d2.add_to(2 + edge_idx, c, &coeff);
            let lifting = face_lifting_term(&res, ls, &edge_data[*edge_idx], h)?;
            for (jj, b) in lifting.b.iter().enumerate() {
                if !b.is_zero() {
                    let corr = coeff.mul(b)?.negate();
                    d2.add_to(jj, c, &corr);
                }
            }
        }
    }

    // final entries must be polynomial: Laurent intermediates have to cancel
    for (name, m) in [("d1", &d1), ("d2", &d2)] {
        for (&(r, c), p) in m.entries() {
            if !p.is_polynomial() {
                return Err(Error::Lifting(format!(
                    "{name} entry ({r},{c}) = {p} has a negative exponent"
                )));
            }
        }
    }

    let mut aug = Vec::with_capacity(rows0);
    for b in &res.binomials {
        aug.push(b.clone());
    }
    for rep in ls.reps() {
        aug.push(LaurentPolynomial::monomial_one(rep.clone()));
    }

    let complex = FreeChainComplex::build(
        3,
        DegreeMode::ClassModLambda,
        Some(lat.clone()),
        vec![
            FreeModuleSpec { generators: gens0 },
            FreeModuleSpec { generators: gens1 },
            FreeModuleSpec { generators: gens2 },
        ],
        vec![d1, d2],
        Some(aug),
    )?;
    let report = complex.verify_dd_zero();
    if !report.passed() || !report.aug_literal {
        return Err(Error::Verification(format!(
            "assembled complex does not compose to zero: {report:?}"
        )));
    }
    Ok(LiftedComplex {
        complex,
        provenance: vec![prov0, prov1, prov2],
        scarf_counts: scarf.orbit_counts(),
        lattice_resolution: res,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(cs)
    }

    fn lp(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(s, 3).unwrap()
    }

    fn example_lattice() -> AntichainLattice {
        AntichainLattice::new(3, vec![p(&[-1, 2, -1]), p(&[3, -1, -1])]).unwrap()
    }

    fn example_set() -> LambdaSet {
        LambdaSet::new(example_lattice(), vec![p(&[1, 2, 0])]).unwrap()
    }

    fn example_res() -> LatticeResolutionZ3 {
        lattice_resolution_z3(&example_lattice()).unwrap()
    }

    #[test]
    fn lattice_resolution_example() {
        let res = example_res();
        assert_eq!(
            res.markov,
            [p(&[-1, 2, -1]), p(&[3, -1, -1]), p(&[-2, -1, 2])]
        );
        assert_eq!(res.binomials[0], lp("y^2 - x*z"));
        assert_eq!(res.binomials[1], lp("x^3 - y*z"));
        assert_eq!(res.binomials[2], lp("z^2 - x^2*y"));
        // columns (x^2, z, y) and (z, y, x) up to order/sign
        let flat: Vec<String> = res
            .syzygies
            .iter()
            .map(|col| {
                let mut v: Vec<String> = col.iter().map(|q| q.render()).collect();
                v.sort();
                v.join(",")
            })
            .collect();
        assert!(flat.contains(&"x^2,y,z".to_string()), "got {flat:?}");
        assert!(flat.contains(&"x,y,z".to_string()), "got {flat:?}");
        // composite with the augmentation row is zero
        let cx = res.to_complex().unwrap();
        assert!(cx.verify_dd_zero().passed());
        assert_eq!(cx.ranks(), vec![1, 3, 2]);
        assert!(cx.check_minimality());
    }

    #[test]
    fn lattice_resolution_matches_scarf_quotient() {
        // independent route: quotient of the cellular complex on N(Λ)
        let lat = example_lattice();
        let ls = LambdaSet::new(lat.clone(), vec![p(&[0, 0, 0])]).unwrap();
        let cell = crate::chain::cellular_differential(&build_scarf(&ls, 2).unwrap(), &ls).unwrap();
        let q = cell.quotient_pi(&lat).unwrap();
        assert_eq!(q.ranks(), vec![1, 3, 2]);
        assert!(q.verify_dd_zero().passed());
        let res = example_res().to_complex().unwrap();
        // same graded ranks per class value
        let u = lat.normal().unwrap();
        for k in 1..=2usize {
            let mut a: Vec<BigInt> = q.modules[k]
                .generators
                .iter()
                .map(|g| u.dot(&g.degree))
                .collect();
            let mut b: Vec<BigInt> = res.modules[k]
                .generators
                .iter()
                .map(|g| u.dot(&g.degree))
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "degree values differ at homological degree {k}");
        }
    }

    #[test]
    fn path_decomposition_examples() {
        let res = example_res();
        // g = -λ3 gives c3 = -1
        let g = res.markov[2].neg();
        let dec = markov_path_decompose(&res, &g).unwrap();
        assert!(dec.coeffs[0].is_zero() && dec.coeffs[1].is_zero());
        assert_eq!(dec.coeffs[2], lp("-1"));
        // g = λ2 gives c2 = 1
        let dec = markov_path_decompose(&res, &res.markov[1].clone()).unwrap();
        assert!(dec.coeffs[0].is_zero() && dec.coeffs[2].is_zero());
        assert_eq!(dec.coeffs[1], lp("1"));
        // g = 0
        let dec = markov_path_decompose(&res, &p(&[0, 0, 0])).unwrap();
        assert!(dec.coeffs.iter().all(|c| c.is_zero()));
        // not in the lattice
        assert!(markov_path_decompose(&res, &p(&[1, 0, 0])).is_err());
    }

    #[test]
    fn path_decomposition_identity_random_targets() {
        let res = example_res();
        let lat = example_lattice();
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let g = p(&[-a + 3 * b, 2 * a - b, -a - b]);
                assert!(lat.membership(&g));
                let dec = markov_path_decompose(&res, &g).unwrap();
                let mut total = LaurentPolynomial::zero(3);
                for i in 0..3 {
                    total = total.add(&dec.coeffs[i].mul(&res.binomials[i]).unwrap()).unwrap();
                }
                assert_eq!(total, LaurentPolynomial::binomial_of(&g));
            }
        }
    }

    #[test]
    fn edge_lift_examples() {
        let res = example_res();
        let ls = example_set();
        // edge t = {α, α+λ1}: (xz - y^2) e_α + x y^2 e_{λ1}
        let t = OrientedEdge {
            tail: p(&[1, 2, 0]),
            head: p(&[0, 4, -1]),
        };
        let col = lift_edge_d0(&res, &ls, &t).unwrap();
        assert_eq!(col.vertex_part.len(), 1);
        assert_eq!(col.vertex_part[0].1, lp("x*z - y^2"));
        assert_eq!(col.lattice_part[0], lp("x*y^2"));
        assert!(col.lattice_part[1].is_zero() && col.lattice_part[2].is_zero());

        // edge r = {α, α+λ2}: x y^2 e_{λ2} - (x^3 - yz) e_α
        let r = OrientedEdge {
            tail: p(&[1, 2, 0]),
            head: p(&[4, 1, -1]),
        };
        let col = lift_edge_d0(&res, &ls, &r).unwrap();
        assert_eq!(col.vertex_part[0].1, lp("y*z - x^3"));
        assert_eq!(col.lattice_part[1], lp("x*y^2"));
    }

    #[test]
    fn edge_lift_degenerate_translation() {
        // f = g: lattice terms cancel entirely
        let res = example_res();
        let lat = example_lattice();
        let ls = LambdaSet::new(lat, vec![p(&[1, 2, 0]), p(&[2, 2, 2])]).unwrap();
        let lam = p(&[-1, 2, -1]);
        let e = OrientedEdge {
            tail: p(&[1, 2, 0]).add(&lam),
            head: p(&[2, 2, 2]).add(&lam),
        };
        if let Ok(col) = lift_edge_d0(&res, &ls, &e) {
            assert!(col.lattice_part.iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn face_lifting_example() {
        let res = example_res();
        let ls = example_set();
        // representative edge r, translated by h = λ1
        let r = OrientedEdge {
            tail: p(&[1, 2, 0]),
            head: p(&[4, 1, -1]),
        };
        let h = p(&[-1, 2, -1]);
        let lift = face_lifting_term(&res, &ls, &r, &h).unwrap();
        assert_eq!(lift.lifting_term[0], lp("x^3*y^2*z^-1"));
        assert_eq!(lift.lifting_term[1], lp("x*y^2"));
        assert_eq!(lift.lifting_term[2], lp("x*y^3*z^-1"));
        assert_eq!(lift.b[0], lp("x*y^2*z^-1"));
        assert!(lift.b[1].is_zero());
        // h = 0 gives no correction
        let trivial = face_lifting_term(&res, &ls, &r, &p(&[0, 0, 0])).unwrap();
        assert!(trivial.b.iter().all(|b| b.is_zero()));
        assert!(trivial.lifting_term.iter().all(|t| t.is_zero()));
    }

    #[test]
    fn assemble_example() {
        let ls = example_set();
        let lifted = assemble_horseshoe(&ls).unwrap();
        assert_eq!(lifted.complex.ranks(), vec![4, 5, 2]);
        assert_eq!(lifted.scarf_counts, vec![1, 3, 2]);
        let report = lifted.complex.verify_dd_zero();
        assert!(report.passed() && report.aug_literal);
        assert!(lifted.complex.check_minimality());
    }

    #[test]
    fn assemble_rejects_divisible_rep() {
        let lat = example_lattice();
        // (0,1,1) <= λ2^- = (0,1,1)
        let ls = LambdaSet::new(lat, vec![p(&[0, 1, 1])]).unwrap();
        assert!(matches!(
            assemble_horseshoe(&ls),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn assembled_strands_vanish() {
        let ls = example_set();
        let lifted = assemble_horseshoe(&ls).unwrap();
        let bound = lifted.complex.max_generator_value().unwrap() * BigInt::from(3);
        let report = lifted.complex.strand_sweep(&bound).unwrap();
        assert!(report.passed(), "failures: {report:?}");
    }
}
