//! Shared helpers for the integration suites: seeded generation of generic
//! codimension-1 antichain lattices and of valid monomial generator sets.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scarflift::lambda_set::LambdaSet;
use scarflift::lattice::AntichainLattice;
use scarflift::zn::LatticePoint;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    gcd(gcd(a, b), c)
}

/// Distinct generic codimension-1 antichain lattices with normal entries in
/// `1..=max_entry`.
pub fn random_generic_lattices(
    rng: &mut ChaCha8Rng,
    count: usize,
    max_entry: i64,
) -> Vec<AntichainLattice> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 20_000, "could not sample enough generic lattices");
        let mut u = [0i64; 3];
        for x in u.iter_mut() {
            *x = rng.gen_range(1..=max_entry);
        }
        if gcd3(u[0], u[1], u[2]) != 1 {
            continue;
        }
        let mut sorted = u;
        sorted.sort();
        if !seen.insert(sorted) {
            continue;
        }
        let normal = LatticePoint::from_i64(&u);
        let Ok(lat) = AntichainLattice::from_normal(&normal) else {
            continue;
        };
        if lat.is_generic().unwrap_or(false) {
            out.push(lat);
        }
    }
    out
}

/// A valid generator set for the lifting pipeline: canonical representatives
/// in `N^3`, none dividing a Markov monomial, with the translated set both an
/// antichain and generic. Validity is established by the pipeline's own
/// precondition checks; sampling retries until they pass.
///
/// Two-orbit sets are only possible when the normal values of the two
/// representatives differ by a gap of the normal's numerical semigroup, so
/// candidate pairs are drawn accordingly before falling back to singletons.
pub fn random_valid_a0(
    rng: &mut ChaCha8Rng,
    lat: &AntichainLattice,
    max_reps: usize,
) -> Option<LambdaSet> {
    // pool of canonical single representatives
    let mut pool: Vec<LatticePoint> = Vec::new();
    for _ in 0..200 {
        let coords: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=4)).collect();
        let pt = LatticePoint::from_i64(&coords);
        if let Ok(ls) = LambdaSet::new(lat.clone(), vec![pt]) {
            let rep = ls.reps()[0].clone();
            if rep.is_nonneg() && !rep.is_zero() && !pool.contains(&rep) {
                pool.push(rep);
            }
        }
    }
    if pool.is_empty() {
        return None;
    }
    if max_reps >= 2 {
        let u = lat.normal().expect("codim-1").clone();
        let gaps = semigroup_gaps(&u, 128);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..pool.len() {
            for j in 0..pool.len() {
                if i == j {
                    continue;
                }
                let diff = u.dot(&pool[j]) - u.dot(&pool[i]);
                if gaps.contains(&diff) {
                    pairs.push((i, j));
                }
            }
        }
        for _ in 0..40.min(pairs.len()) {
            let &(i, j) = &pairs[rng.gen_range(0..pairs.len())];
            let Ok(ls) = LambdaSet::new(lat.clone(), vec![pool[i].clone(), pool[j].clone()])
            else {
                continue;
            };
            if scarflift::lift3::assemble_horseshoe(&ls).is_ok() {
                return Some(ls);
            }
        }
    }
    for _ in 0..pool.len() {
        let rep = pool[rng.gen_range(0..pool.len())].clone();
        let Ok(ls) = LambdaSet::new(lat.clone(), vec![rep]) else {
            continue;
        };
        if scarflift::lift3::assemble_horseshoe(&ls).is_ok() {
            return Some(ls);
        }
    }
    None
}

/// Positive integers up to `bound` not representable as nonnegative
/// combinations of the normal entries.
fn semigroup_gaps(u: &LatticePoint, bound: usize) -> std::collections::BTreeSet<BigInt> {
    let weights: Vec<usize> = u
        .coords()
        .iter()
        .map(|c| c.to_string().parse().expect("small normal"))
        .collect();
    let mut reachable = vec![false; bound + 1];
    reachable[0] = true;
    for v in 1..=bound {
        for w in &weights {
            if *w <= v && reachable[v - w] {
                reachable[v] = true;
                break;
            }
        }
    }
    (1..=bound)
        .filter(|&v| !reachable[v])
        .map(BigInt::from)
        .collect()
}
