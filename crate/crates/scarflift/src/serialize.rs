//! Line-oriented text format for chain complexes. The printer is canonical
//! and `parse(render(c))` re-renders byte-identically.

use num_bigint::BigInt;

use crate::chain::{DegreeMode, FreeChainComplex, FreeModuleSpec, Generator, SparseMatrix};
use crate::error::{Error, Result};
use crate::lattice::AntichainLattice;
use crate::poly::LaurentPolynomial;
use crate::zn::LatticePoint;

const HEADER: &str = "scarflift-complex v1";

pub fn render_complex(c: &FreeChainComplex) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("dim {}\n", c.dim));
    out.push_str(&format!(
        "mode {}\n",
        match c.mode {
            DegreeMode::Absolute => "absolute",
            DegreeMode::ClassModLambda => "classmod",
        }
    ));
    match &c.lattice {
        None => out.push_str("lattice none\n"),
        Some(lat) => {
            out.push_str(&format!("lattice {}\n", lat.rank()));
            for b in lat.basis() {
                out.push_str("basis");
                for x in b.coords() {
                    out.push_str(&format!(" {x}"));
                }
                out.push('\n');
            }
        }
    }
    out.push_str(&format!("modules {}\n", c.modules.len()));
    for (k, m) in c.modules.iter().enumerate() {
        out.push_str(&format!("module {} gens {}\n", k, m.rank()));
        for g in &m.generators {
            out.push_str(&format!("gen {}", g.symbol));
            for x in g.degree.coords() {
                out.push_str(&format!(" {x}"));
            }
            out.push('\n');
        }
    }
    for (k, d) in c.diffs.iter().enumerate() {
        for (&(r, col), p) in d.entries() {
            out.push_str(&format!("d {} {} {} {}\n", k + 1, r, col, p.render()));
        }
    }
    if let Some(aug) = &c.augmentation {
        for (i, p) in aug.iter().enumerate() {
            out.push_str(&format!("aug {} {}\n", i, p.render()));
        }
    }
    out.push_str("end\n");
    out
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(usize, &'a str)> {
        for (n, line) in self.iter.by_ref() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Ok((n + 1, t));
        }
        Err(Error::Parse {
            line: 0,
            msg: "unexpected end of input".into(),
        })
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_ints(line: usize, parts: &[&str]) -> Result<Vec<BigInt>> {
    parts
        .iter()
        .map(|s| {
            s.parse::<BigInt>()
                .map_err(|_| perr(line, format!("expected integer, got '{s}'")))
        })
        .collect()
}

pub fn parse_complex(text: &str) -> Result<FreeChainComplex> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
    };
    let (n, header) = lines.next()?;
    if header != HEADER {
        return Err(perr(n, format!("expected '{HEADER}'")));
    }
    let (n, dim_line) = lines.next()?;
    let dim: usize = dim_line
        .strip_prefix("dim ")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(n, "expected 'dim <n>'"))?;
    let (n, mode_line) = lines.next()?;
    let mode = match mode_line.strip_prefix("mode ") {
        Some("absolute") => DegreeMode::Absolute,
        Some("classmod") => DegreeMode::ClassModLambda,
        _ => return Err(perr(n, "expected 'mode absolute|classmod'")),
    };
    let (n, lat_line) = lines.next()?;
    let lattice: Option<AntichainLattice> = match lat_line.strip_prefix("lattice ") {
        Some("none") => None,
        Some(r) => {
            let rank: usize = r.parse().map_err(|_| perr(n, "bad lattice rank"))?;
            let mut basis = Vec::with_capacity(rank);
            for _ in 0..rank {
                let (bn, bl) = lines.next()?;
                let parts: Vec<&str> = bl.split_whitespace().collect();
                if parts.first() != Some(&"basis") || parts.len() != dim + 1 {
                    return Err(perr(bn, "expected 'basis <coords>'"));
                }
                basis.push(LatticePoint::new(parse_ints(bn, &parts[1..])?));
            }
            Some(AntichainLattice::new(dim, basis)?)
        }
        None => return Err(perr(n, "expected 'lattice ...'")),
    };
    let (n, mods_line) = lines.next()?;
    let nmods: usize = mods_line
        .strip_prefix("modules ")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(n, "expected 'modules <k>'"))?;
    let mut modules = Vec::with_capacity(nmods);
    for k in 0..nmods {
        let (mn, ml) = lines.next()?;
        let parts: Vec<&str> = ml.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "module" || parts[2] != "gens" {
            return Err(perr(mn, "expected 'module <k> gens <r>'"));
        }
        if parts[1].parse::<usize>().ok() != Some(k) {
            return Err(perr(mn, format!("expected module index {k}")));
        }
        let gens: usize = parts[3].parse().map_err(|_| perr(mn, "bad rank"))?;
        let mut generators = Vec::with_capacity(gens);
        for _ in 0..gens {
            let (gn, gl) = lines.next()?;
            let parts: Vec<&str> = gl.split_whitespace().collect();
            if parts.first() != Some(&"gen") || parts.len() != dim + 2 {
                return Err(perr(gn, "expected 'gen <symbol> <coords>'"));
            }
            generators.push(Generator {
                symbol: parts[1].to_string(),
                degree: LatticePoint::new(parse_ints(gn, &parts[2..])?),
            });
        }
        modules.push(FreeModuleSpec { generators });
    }
    let mut diffs: Vec<SparseMatrix> = (1..nmods)
        .map(|k| SparseMatrix::zero(modules[k - 1].rank(), modules[k].rank()))
        .collect();
    let mut augmentation: Option<Vec<LaurentPolynomial>> = None;
    loop {
        let (ln, line) = lines.next()?;
        if line == "end" {
            break;
        }
        if let Some(rest) = line.strip_prefix("d ") {
            let mut it = rest.splitn(4, ' ');
            let k: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| perr(ln, "bad differential index"))?;
            let r: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| perr(ln, "bad row"))?;
            let c: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| perr(ln, "bad column"))?;
            let poly = it.next().ok_or_else(|| perr(ln, "missing polynomial"))?;
            if k == 0 || k >= nmods {
                return Err(perr(ln, format!("differential index {k} out of range")));
            }
            let m = &mut diffs[k - 1];
            if r >= m.rows || c >= m.cols {
                return Err(perr(ln, "entry out of range"));
            }
            m.set(r, c, LaurentPolynomial::parse(poly, dim)?);
        } else if let Some(rest) = line.strip_prefix("aug ") {
            let (idx, poly) = rest
                .split_once(' ')
                .ok_or_else(|| perr(ln, "expected 'aug <i> <poly>'"))?;
            let i: usize = idx.parse().map_err(|_| perr(ln, "bad augmentation index"))?;
            let rank0 = modules.first().map(|m| m.rank()).unwrap_or(0);
            if i >= rank0 {
                return Err(perr(ln, "augmentation index out of range"));
            }
            let aug = augmentation
                .get_or_insert_with(|| vec![LaurentPolynomial::zero(dim); rank0]);
            aug[i] = LaurentPolynomial::parse(poly, dim)?;
        } else {
            return Err(perr(ln, format!("unrecognized line '{line}'")));
        }
    }
    FreeChainComplex::build_raw(dim, mode, lattice, modules, diffs, augmentation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda_set::LambdaSet;
    use crate::lift3::assemble_horseshoe;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> LatticePoint {
        LatticePoint::from_i64(cs)
    }

    fn example_complex() -> FreeChainComplex {
        let lat = AntichainLattice::new(3, vec![p(&[-1, 2, -1]), p(&[3, -1, -1])]).unwrap();
        let ls = LambdaSet::new(lat, vec![p(&[1, 2, 0])]).unwrap();
        assemble_horseshoe(&ls).unwrap().complex
    }

    #[test]
    fn roundtrip_example() {
        let c = example_complex();
        let text = render_complex(&c);
        let back = parse_complex(&text).unwrap();
        assert_eq!(render_complex(&back), text);
        assert_eq!(back.ranks(), c.ranks());
        assert!(back.verify_dd_zero().passed());
    }

    #[test]
    fn parse_error_has_line() {
        let c = example_complex();
        let mut text = render_complex(&c);
        text = text.replace("mode classmod", "mode sideways");
        match parse_complex(&text) {
            Err(Error::Parse { line, .. }) => assert!(line > 0),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    fn arb_complex() -> impl Strategy<Value = FreeChainComplex> {
        let deg = prop::collection::vec(-3i64..=3, 3);
        let degs0 = prop::collection::vec(deg.clone(), 1..=3);
        let degs1 = prop::collection::vec(deg, 1..=3);
        let coeffs = prop::collection::vec((-5i64..=5, 1i64..=4), 9);
        (degs0, degs1, coeffs).prop_map(|(d0, d1, cs)| {
            let make = |prefix: &str, ds: &[Vec<i64>]| FreeModuleSpec {
                generators: ds
                    .iter()
                    .enumerate()
                    .map(|(i, d)| Generator {
                        symbol: format!("{prefix}{i}"),
                        degree: LatticePoint::from_i64(d),
                    })
                    .collect(),
            };
            let m0 = make("a", &d0);
            let m1 = make("b", &d1);
            let mut d = SparseMatrix::zero(m0.rank(), m1.rank());
            let mut it = cs.iter();
            for r in 0..m0.rank() {
                for c in 0..m1.rank() {
                    if let Some(&(num, den)) = it.next() {
                        if num != 0 {
                            let exp = m1.generators[c].degree.sub(&m0.generators[r].degree);
                            d.set(
                                r,
                                c,
                                LaurentPolynomial::monomial(
                                    exp,
                                    num_rational::BigRational::new(num.into(), den.into()),
                                ),
                            );
                        }
                    }
                }
            }
            FreeChainComplex::build(3, DegreeMode::Absolute, None, vec![m0, m1], vec![d], None)
                .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn roundtrip_random_complexes(c in arb_complex()) {
            let text = render_complex(&c);
            let back = parse_complex(&text).unwrap();
            prop_assert_eq!(render_complex(&back), text);
        }
    }
}
