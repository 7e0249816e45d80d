//! Built-in families with integral matrix-unit bases.

use num_traits::One;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::field::{self, FieldOps, Rationals};
use crate::linalg::Ring;

pub const DEFAULT_SIZE_CAP: usize = 10;
pub const MAX_SIZE_CAP: usize = 16;

type Mat = Vec<Vec<i64>>;

fn unit(m: usize, i: usize, j: usize) -> Mat {
    let mut a = vec![vec![0; m]; m];
    a[i][j] = 1;
    a
}

fn lin(terms: &[(i64, Mat)]) -> Mat {
    let m = terms[0].1.len();
    let mut out = vec![vec![0; m]; m];
    for (c, a) in terms {
        for i in 0..m {
            for j in 0..m {
                out[i][j] += c * a[i][j];
            }
        }
    }
    out
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    let m = a.len();
    let mut out = vec![vec![0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut s = 0;
            for k in 0..m {
                s += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

/// Builds structure constants by expanding commutators of the given
/// matrices in their own span. If `cartan_rank = r`, the first `r` matrices
/// must act diagonally on the others; the weight of `x_b` (as a coordinate
/// function) is minus its ad-eigenvalue vector.
fn from_matrices(name: &str, mats: &[Mat], names: Vec<String>, cartan_rank: Option<usize>) -> Result<LieAlgebra> {
    let dim = mats.len();
    let m = mats[0].len();
    let f = Rationals;
    // rows indexed by matrix positions, columns by basis elements
    let mut rows = vec![Vec::new(); m * m];
    for (b, a) in mats.iter().enumerate() {
        for i in 0..m {
            for j in 0..m {
                if a[i][j] != 0 {
                    rows[i * m + j].push((b, f.from_i64(a[i][j])));
                }
            }
        }
    }
    let mut constants = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let c = commutator(&mats[i], &mats[j]);
            let rhs: Vec<_> = (0..m * m)
                .filter(|&q| c[q / m][q % m] != 0)
                .map(|q| (q, f.from_i64(c[q / m][q % m])))
                .collect();
            let x = field::solve(&f, dim, rows.clone(), &rhs)
                .ok_or_else(|| Error::InvalidAlgebra(format!("{name}: basis not closed under bracket")))?;
            for (k, v) in x {
                if !v.denom().is_one() {
                    return Err(Error::InvalidAlgebra(format!("{name}: non-integral structure constant")));
                }
                let v = i64::try_from(v.numer()).map_err(|_| Error::InvalidAlgebra("constant too large".into()))?;
                constants.push((i, j, k, v));
            }
        }
    }
    let weights = match cartan_rank {
        None => None,
        Some(r) => {
            let mut w = vec![vec![0i64; r]; dim];
            for h in 0..r {
                for b in 0..dim {
                    let c = commutator(&mats[h], &mats[b]);
                    // c must be λ·mats[b]
                    let mut lambda: Option<i64> = None;
                    for i in 0..m {
                        for j in 0..m {
                            if mats[b][i][j] != 0 {
                                let l = c[i][j] / mats[b][i][j];
                                if lambda.is_some_and(|x| x != l) || c[i][j] != l * mats[b][i][j] {
                                    return Err(Error::InvalidAlgebra(format!("{name}: Cartan does not act diagonally")));
                                }
                                lambda = Some(l);
                            } else if c[i][j] != 0 {
                                return Err(Error::InvalidAlgebra(format!("{name}: Cartan does not act diagonally")));
                            }
                        }
                    }
                    w[b][h] = -lambda.unwrap_or(0);
                }
            }
            Some(w)
        }
    };
    LieAlgebra::new(name, dim, Ring::Integers, constants, Some(names), weights)
}

fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        Err(Error::SizeCap { dim, cap })
    } else {
        Ok(())
    }
}

/// sl(n): Cartan `H_i = E_ii − E_{i+1,i+1}`, then `E_ij`, `E_ji` for `i < j`.
pub fn sl(n: usize, cap: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::UnknownAlgebra(format!("sl({n})")));
    }
    check_cap(n * n - 1, cap)?;
    let mut mats = Vec::new();
    let mut names = Vec::new();
    for i in 0..n - 1 {
        mats.push(lin(&[(1, unit(n, i, i)), (-1, unit(n, i + 1, i + 1))]));
        names.push(if n == 2 { "h".to_string() } else { format!("h{}", i + 1) });
    }
    for i in 0..n {
        for j in i + 1..n {
            mats.push(unit(n, i, j));
            mats.push(unit(n, j, i));
            if n == 2 {
                names.push("e".into());
                names.push("f".into());
            } else {
                names.push(format!("e{}{}", i + 1, j + 1));
                names.push(format!("f{}{}", i + 1, j + 1));
            }
        }
    }
    from_matrices(&format!("sl{n}"), &mats, names, Some(n - 1))
}

/// sp(2n) preserving `J = [[0, I], [−I, 0]]`; blocks `[[A, B], [C, −Aᵀ]]`
/// with `B`, `C` symmetric.
pub fn sp(two_n: usize, cap: usize) -> Result<LieAlgebra> {
    if two_n < 2 || two_n % 2 != 0 {
        return Err(Error::UnknownAlgebra(format!("sp({two_n})")));
    }
    let n = two_n / 2;
    check_cap(n * (2 * n + 1), cap)?;
    let m = two_n;
    let mut mats = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        mats.push(lin(&[(1, unit(m, i, i)), (-1, unit(m, n + i, n + i))]));
        names.push(format!("h{}", i + 1));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                mats.push(lin(&[(1, unit(m, i, j)), (-1, unit(m, n + j, n + i))]));
                names.push(format!("a{}{}", i + 1, j + 1));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            if i == j {
                mats.push(unit(m, i, n + i));
            } else {
                mats.push(lin(&[(1, unit(m, i, n + j)), (1, unit(m, j, n + i))]));
            }
            names.push(format!("b{}{}", i + 1, j + 1));
        }
    }
    for i in 0..n {
        for j in i..n {
            if i == j {
                mats.push(unit(m, n + i, i));
            } else {
                mats.push(lin(&[(1, unit(m, n + i, j)), (1, unit(m, n + j, i))]));
            }
            names.push(format!("c{}{}", i + 1, j + 1));
        }
    }
    from_matrices(&format!("sp{two_n}"), &mats, names, Some(n))
}

/// so(n) with basis `E_ij − E_ji`, `i < j`; no weights.
pub fn so(n: usize, cap: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::UnknownAlgebra(format!("so({n})")));
    }
    check_cap(n * (n - 1) / 2, cap)?;
    let mut mats = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            mats.push(lin(&[(1, unit(n, i, j)), (-1, unit(n, j, i))]));
            names.push(format!("r{}{}", i + 1, j + 1));
        }
    }
    from_matrices(&format!("so{n}"), &mats, names, None)
}

/// The two-dimensional nonabelian algebra, basis `(x_h, x_e)` with
/// `[x_e, x_h] = x_e` and weights `(0, 1)`.
pub fn nonabelian2() -> LieAlgebra {
    LieAlgebra::new(
        "nonabelian2",
        2,
        Ring::Integers,
        [(1, 0, 1, 1)],
        Some(vec!["h".into(), "e".into()]),
        Some(vec![vec![0], vec![1]]),
    )
    .expect("valid constants")
}

pub fn abelian(n: usize, cap: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::UnknownAlgebra("abelian(0)".into()));
    }
    check_cap(n, cap)?;
    LieAlgebra::new(format!("abelian{n}"), n, Ring::Integers, [], None, None)
}

/// Splits on `sep` at parenthesis depth zero.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_family(s: &str) -> Option<(&str, usize)> {
    let split = s.find(|c: char| c.is_ascii_digit() || c == ':' || c == '(')?;
    let (fam, rest) = s.split_at(split);
    let num = rest.trim_start_matches(':').trim_start_matches('(').trim_end_matches(')');
    Some((fam, num.parse().ok()?))
}

/// Looks up a built-in by name: `sl2`, `sl(3)`, `sp4`, `so(3)`,
/// `nonabelian2`, `abelian:3`, `direct_sum(A,B)` or `A+B`.
pub fn builtin(name: &str, ring: Ring) -> Result<LieAlgebra> {
    builtin_with_cap(name, ring, DEFAULT_SIZE_CAP)
}

pub fn builtin_with_cap(name: &str, ring: Ring, cap: usize) -> Result<LieAlgebra> {
    if cap > MAX_SIZE_CAP {
        return Err(Error::SizeCap { dim: cap, cap: MAX_SIZE_CAP });
    }
    Ok(parse(name.trim(), cap)?.over(ring))
}

fn parse(name: &str, cap: usize) -> Result<LieAlgebra> {
    let unknown = || Error::UnknownAlgebra(name.to_string());
    let parts = split_top(name, '+');
    if parts.len() > 1 {
        let algs = parts.iter().map(|p| parse(p.trim(), cap)).collect::<Result<Vec<_>>>()?;
        return sum_all(algs, cap);
    }
    if let Some(inner) = name.strip_prefix("direct_sum(").and_then(|s| s.strip_suffix(')')) {
        let algs = split_top(inner, ',').iter().map(|p| parse(p.trim(), cap)).collect::<Result<Vec<_>>>()?;
        if algs.len() < 2 {
            return Err(unknown());
        }
        return sum_all(algs, cap);
    }
    if name == "nonabelian2" {
        return Ok(nonabelian2());
    }
    let (fam, n) = parse_family(name).ok_or_else(unknown)?;
    match fam {
        "sl" => sl(n, cap),
        "sp" => sp(n, cap),
        "so" => so(n, cap),
        "abelian" => abelian(n, cap),
        _ => Err(unknown()),
    }
}

fn sum_all(algs: Vec<LieAlgebra>, cap: usize) -> Result<LieAlgebra> {
    let mut it = algs.into_iter();
    let mut acc = it.next().expect("nonempty");
    for a in it {
        acc = acc.direct_sum(&a)?;
    }
    check_cap(acc.dim(), cap)?;
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_constants_and_weights() {
        let a = builtin("sl2", Ring::Integers).unwrap();
        assert_eq!(a.basis_names(), &["h", "e", "f"]);
        assert_eq!(a.constants(), &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)]);
        assert_eq!(a.weights().unwrap(), &[vec![0], vec![-2], vec![2]]);
    }

    #[test]
    fn nonabelian2_bracket() {
        let a = builtin("nonabelian2", Ring::Integers).unwrap();
        assert_eq!(a.bracket(1, 0), vec![(1, 1)]);
        assert_eq!(a.weights().unwrap(), &[vec![0], vec![1]]);
    }

    #[test]
    fn names_and_caps() {
        for (n, d) in [("sl(3)", 8), ("sp4", 10), ("so:4", 6), ("abelian:4", 4), ("sl2+nonabelian2", 5)] {
            assert_eq!(builtin(n, Ring::Rationals).unwrap().dim(), d, "{n}");
        }
        assert_eq!(builtin("direct_sum(abelian1,nonabelian2)", Ring::Rationals).unwrap().dim(), 3);
        assert!(matches!(builtin("sl4", Ring::Rationals), Err(Error::SizeCap { .. })));
        assert!(builtin_with_cap("sl4", Ring::Rationals, 15).is_ok());
        assert!(matches!(builtin("g2", Ring::Rationals), Err(Error::UnknownAlgebra(_))));
        assert!(builtin("abelian:4", Ring::Rationals).unwrap().is_abelian());
    }

    #[test]
    fn all_builtins_satisfy_jacobi_and_weights() {
        for n in ["sl2", "sl3", "sp2", "sp4", "so3", "so4", "so5", "nonabelian2", "abelian3", "sl2+nonabelian2"] {
            let a = builtin(n, Ring::Integers).unwrap();
            assert!(a.jacobi_check().is_pass(), "{n}");
        }
    }
}
