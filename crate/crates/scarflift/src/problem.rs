//! Textual problem input: a minimal key-value format with integer lists.
//!
//! ```text
//! # comment
//! dim 3
//! basis -1 2 -1
//! basis 3 -1 -1
//! point 1 2 0
//! window 6
//! classes 40
//! t 25
//! prime 32003
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;


use crate::error::{Error, Result};
use crate::lambda_set::LambdaSet;
use crate::lattice::AntichainLattice;
use crate::zn::LatticePoint;

#[derive(Clone, Debug, Default)]
pub struct ProblemSpec {
    pub dim: usize,
    pub basis: Vec<LatticePoint>,
    pub points: Vec<LatticePoint>,
    pub window: Option<i64>,
    pub classes: Option<BigInt>,
    pub t: Option<BigRational>,
    pub prime: Option<u64>,
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = ProblemSpec::default();
        let mut saw_dim = false;
        for (idx, raw) in text.lines().enumerate() {
            let n = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).ok_or_else(|| {
                Error::Parse {
                    line: n,
                    msg: format!("expected 'key value', got '{line}'"),
                }
            })?;
            let rest = rest.trim();
            match key {
                "dim" => {
                    spec.dim = rest.parse().map_err(|_| Error::Parse {
                        line: n,
                        msg: "bad dimension".into(),
                    })?;
                    if spec.dim == 0 {
                        return Err(Error::Parse {
                            line: n,
                            msg: "dimension must be positive".into(),
                        });
                    }
                    saw_dim = true;
                }
                "basis" | "point" => {
                    if !saw_dim {
                        return Err(Error::Parse {
                            line: n,
                            msg: "dim must come before basis/point lines".into(),
                        });
                    }
                    let coords: Vec<BigInt> = rest
                        .split_whitespace()
                        .map(|s| {
                            s.parse::<BigInt>().map_err(|_| Error::Parse {
                                line: n,
                                msg: format!("bad integer '{s}'"),
                            })
                        })
                        .collect::<Result<_>>()?;
                    if coords.len() != spec.dim {
                        return Err(Error::Parse {
                            line: n,
                            msg: format!("expected {} coordinates, got {}", spec.dim, coords.len()),
                        });
                    }
                    let pt = LatticePoint::new(coords);
                    if key == "basis" {
                        spec.basis.push(pt);
                    } else {
                        spec.points.push(pt);
                    }
                }
                "window" => {
                    spec.window = Some(rest.parse().map_err(|_| Error::Parse {
                        line: n,
                        msg: "bad window radius".into(),
                    })?);
                }
                "classes" => {
                    spec.classes = Some(rest.parse().map_err(|_| Error::Parse {
                        line: n,
                        msg: "bad class bound".into(),
                    })?);
                }
                "t" => {
                    spec.t = Some(parse_rational(rest).ok_or_else(|| Error::Parse {
                        line: n,
                        msg: format!("bad rational '{rest}'"),
                    })?);
                }
                "prime" => {
                    spec.prime = Some(rest.parse().map_err(|_| Error::Parse {
                        line: n,
                        msg: "bad prime".into(),
                    })?);
                }
                other => {
                    return Err(Error::Parse {
                        line: n,
                        msg: format!("unknown key '{other}'"),
                    });
                }
            }
        }
        if !saw_dim {
            return Err(Error::Parse {
                line: 0,
                msg: "missing 'dim' line".into(),
            });
        }
        Ok(spec)
    }

    pub fn lattice(&self) -> Result<AntichainLattice> {
        let lat = AntichainLattice::new(self.dim, self.basis.clone())?;
        Ok(match self.window {
            Some(r) => lat.with_radius(r),
            None => lat,
        })
    }

    /// The Λ-set; a problem without explicit points uses the lattice itself.
    pub fn lambda_set(&self) -> Result<LambdaSet> {
        let lat = self.lattice()?;
        let points = if self.points.is_empty() {
            vec![LatticePoint::zero(self.dim)]
        } else {
            self.points.clone()
        };
        LambdaSet::new(lat, points)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().ok()?;
        let d: BigInt = b.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}
