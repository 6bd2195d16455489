//! Canonical comparison of two free chain complexes up to per-generator sign
//! and permutation of generators within each homological degree.
//!
//! Generators are matched by degree (class-canonical when a lattice is
//! attached); the sign assignment is solved as a graph two-coloring over the
//! entry constraints, with the augmentation pinning absolute signs.

use std::collections::BTreeMap;

use crate::chain::{DegreeMode, FreeChainComplex};
use crate::error::{Error, Result};
use crate::lambda_set::reduce_to_parallelepiped;
use crate::poly::LaurentPolynomial;
use crate::zn::LatticePoint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch(Vec<String>),
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match)
    }
}

/// Degree key used for candidate matching.
fn degree_key(c: &FreeChainComplex, deg: &LatticePoint) -> LatticePoint {
    match (&c.mode, &c.lattice) {
        (DegreeMode::ClassModLambda, Some(lat)) | (DegreeMode::Absolute, Some(lat)) => {
            reduce_to_parallelepiped(lat, deg).0
        }
        _ => deg.clone(),
    }
}

/// Compares complexes up to signed permutations of generators per degree.
pub fn match_complexes(ours: &FreeChainComplex, reference: &FreeChainComplex) -> Result<Verdict> {
    let mut problems = Vec::new();
    if ours.ranks() != reference.ranks() {
        problems.push(format!(
            "rank vectors differ: {:?} vs {:?}",
            ours.ranks(),
            reference.ranks()
        ));
        return Ok(Verdict::Mismatch(problems));
    }
    if ours.dim != reference.dim {
        problems.push("ambient dimensions differ".into());
        return Ok(Verdict::Mismatch(problems));
    }
    if ours.augmentation.is_some() != reference.augmentation.is_some() {
        problems.push("one side has an augmentation, the other does not".into());
        return Ok(Verdict::Mismatch(problems));
    }

    // group generator indices by degree key, per homological degree
    let mut groups: Vec<Vec<(Vec<usize>, Vec<usize>)>> = Vec::new();
    for k in 0..ours.modules.len() {
        let mut by_key: BTreeMap<LatticePoint, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (i, g) in ours.modules[k].generators.iter().enumerate() {
            by_key
                .entry(degree_key(ours, &g.degree))
                .or_default()
                .0
                .push(i);
        }
        for (i, g) in reference.modules[k].generators.iter().enumerate() {
            by_key
                .entry(degree_key(reference, &g.degree))
                .or_default()
                .1
                .push(i);
        }
        let mut level = Vec::new();
        for (key, (a, b)) in by_key {
            if a.len() != b.len() {
                problems.push(format!(
                    "degree {key} has {} generators on one side and {} on the other (position {k})",
                    a.len(),
                    b.len()
                ));
            }
            level.push((a, b));
        }
        if !problems.is_empty() {
            return Ok(Verdict::Mismatch(problems));
        }
        groups.push(level);
    }

    // enumerate permutations group-by-group with backtracking
    let mut perms: Vec<Vec<usize>> = ours.modules.iter().map(|m| vec![0; m.rank()]).collect();
    if assign_level(ours, reference, &groups, &mut perms, 0, 0) {
        Ok(Verdict::Match)
    } else {
        Ok(Verdict::Mismatch(vec![
            "no signed permutation of generators identifies the complexes".into(),
        ]))
    }
}

fn assign_level(
    ours: &FreeChainComplex,
    reference: &FreeChainComplex,
    groups: &[Vec<(Vec<usize>, Vec<usize>)>],
    perms: &mut Vec<Vec<usize>>,
    level: usize,
    group_idx: usize,
) -> bool {
    if level == groups.len() {
        return check_signs(ours, reference, perms).unwrap_or(false);
    }
    if group_idx == groups[level].len() {
        return assign_level(ours, reference, groups, perms, level + 1, 0);
    }
    let (a, b) = &groups[level][group_idx];
    let mut taken = vec![false; b.len()];
    fn rec(
        ours: &FreeChainComplex,
        reference: &FreeChainComplex,
        groups: &[Vec<(Vec<usize>, Vec<usize>)>],
        perms: &mut Vec<Vec<usize>>,
        level: usize,
        group_idx: usize,
        a: &[usize],
        b: &[usize],
        taken: &mut Vec<bool>,
        pos: usize,
    ) -> bool {
        if pos == a.len() {
            return assign_level(ours, reference, groups, perms, level, group_idx + 1);
        }
        for (t, &bi) in b.iter().enumerate() {
            if taken[t] {
                continue;
            }
            taken[t] = true;
            perms[level][a[pos]] = bi;
            if rec(
                ours, reference, groups, perms, level, group_idx, a, b, taken, pos + 1,
            ) {
                return true;
            }
            taken[t] = false;
        }
        false
    }
    rec(
        ours, reference, groups, perms, level, group_idx, a, b, &mut taken, 0,
    )
}

/// With the permutation fixed, solve for per-generator signs.
fn check_signs(
    ours: &FreeChainComplex,
    reference: &FreeChainComplex,
    perms: &[Vec<usize>],
) -> Result<bool> {
    // sign[k][i] in {0 unknown, 1 plus, -1 minus}
    let mut sign: Vec<Vec<i8>> = ours.modules.iter().map(|m| vec![0; m.rank()]).collect();

    // constraints from entries: sign[k][r] * sign[k+1][c] = s(entry)
    // first pin absolute signs from the augmentation
    if let (Some(a), Some(b)) = (&ours.augmentation, &reference.augmentation) {
        for (i, p) in a.iter().enumerate() {
            let q = &b[perms[0][i]];
            match compare_up_to_sign(p, q) {
                Some(s) => sign[0][i] = s,
                None => return Ok(false),
            }
        }
    }

    // iterate constraint propagation until stable, seeding one generator of
    // any component untouched by the augmentation
    loop {
        let mut progressed = false;
        let mut pending: Option<(usize, usize)> = None;
        for k in 0..ours.diffs.len() {
            let d_ours = &ours.diffs[k];
            let d_ref = &reference.diffs[k];
            for r in 0..d_ours.rows {
                for c in 0..d_ours.cols {
                    let p = d_ours.get(r, c);
                    let q = d_ref.get(perms[k][r], perms[k + 1][c]);
                    let rel = match (p, q) {
                        (None, None) => continue,
                        (Some(p), Some(q)) => match compare_up_to_sign(p, q) {
                            Some(s) => s,
                            None => return Ok(false),
                        },
                        _ => return Ok(false),
                    };
                    let (sr, sc) = (sign[k][r], sign[k + 1][c]);
                    match (sr, sc) {
                        (0, 0) => {
                            if pending.is_none() {
                                pending = Some((k, r));
                            }
                        }
                        (0, _) => {
                            sign[k][r] = rel * sc;
                            progressed = true;
                        }
                        (_, 0) => {
                            sign[k + 1][c] = rel * sr;
                            progressed = true;
                        }
                        (_, _) => {
                            if sr * sc != rel {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        if !progressed {
            match pending {
                Some((k, r)) => sign[k][r] = 1,
                None => break,
            }
        }
    }
    // unconstrained generators: fix to plus and re-verify everything
    for level in sign.iter_mut() {
        for s in level.iter_mut() {
            if *s == 0 {
                *s = 1;
            }
        }
    }
    for k in 0..ours.diffs.len() {
        let d_ours = &ours.diffs[k];
        let d_ref = &reference.diffs[k];
        for r in 0..d_ours.rows {
            for c in 0..d_ours.cols {
                let p = d_ours.get(r, c);
                let q = d_ref.get(perms[k][r], perms[k + 1][c]);
                match (p, q) {
                    (None, None) => {}
                    (Some(p), Some(q)) => {
                        let want = if sign[k][r] * sign[k + 1][c] == 1 {
                            q.clone()
                        } else {
                            q.negate()
                        };
                        if *p != want {
                            return Ok(false);
                        }
                    }
                    _ => return Ok(false),
                }
            }
        }
    }
    if let (Some(a), Some(b)) = (&ours.augmentation, &reference.augmentation) {
        for (i, p) in a.iter().enumerate() {
            let q = &b[perms[0][i]];
            let want = if sign[0][i] == 1 { q.clone() } else { q.negate() };
            if *p != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Some(1)` if equal, `Some(-1)` if negatives, `None` otherwise.
fn compare_up_to_sign(p: &LaurentPolynomial, q: &LaurentPolynomial) -> Option<i8> {
    if p == q {
        Some(1)
    } else if *p == q.negate() {
        Some(-1)
    } else {
        None
    }
}

/// Convenience: error on mismatch with the collected diagnostics.
pub fn require_match(ours: &FreeChainComplex, reference: &FreeChainComplex) -> Result<()> {
    match match_complexes(ours, reference)? {
        Verdict::Match => Ok(()),
        Verdict::Mismatch(problems) => Err(Error::Verification(format!(
            "complex mismatch: {}",
            problems.join("; ")
        ))),
    }
}
