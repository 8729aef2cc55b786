//! Smith and Hermite normal forms over the integers.
//!
//! All arithmetic is checked `i128`; overflow surfaces as an error instead
//! of wrapping. Matrices here are dense row-major `Vec<Vec<i128>>`.

use crate::error::{Error, Result};

pub type IMat = Vec<Vec<i128>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn cadd(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or_else(|| Error::Arithmetic("add".into()))
}

fn cmul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or_else(|| Error::Arithmetic("mul".into()))
}

/// rows[i] -= q * rows[k]
fn row_sub(m: &mut IMat, i: usize, k: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for j in 0..m[k].len() {
        let t = cmul(q, m[k][j])?;
        m[i][j] = cadd(m[i][j], -t)?;
    }
    Ok(())
}

/// cols[j] -= q * cols[k]
fn col_sub(m: &mut IMat, j: usize, k: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        let t = cmul(q, row[k])?;
        row[j] = cadd(row[j], -t)?;
    }
    Ok(())
}

pub struct Smith {
    /// Invariant factors, nonnegative, each dividing the next; padded with
    /// zeros up to min(rows, cols).
    pub d: Vec<i128>,
    /// Left transform, `u * a * v = diag(d)`.
    pub u: IMat,
    pub v: IMat,
}

/// Smith normal form of an integer matrix.
pub fn smith(a: &IMat) -> Result<Smith> {
    smith_with_modulus(a, None)
}

/// Smith form with all arithmetic reduced modulo `n` when given: the
/// transforms are then products of elementary matrices taken mod `n`, hence
/// units of `Z/n`, and `u a v = diag(d) (mod n)`. Reduction keeps every
/// entry in `[0, n)` so the elimination cannot overflow.
pub fn smith_with_modulus(a: &IMat, mod_n: Option<i128>) -> Result<Smith> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let reduce = |m: &mut IMat| {
        if let Some(n) = mod_n {
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = x.rem_euclid(n);
                }
            }
        }
    };
    let mut b = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    reduce(&mut b);
    let steps = rows.min(cols);

    for t in 0..steps {
        'pivot: loop {
            // smallest nonzero entry of the trailing submatrix
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if b[i][j] != 0
                        && best.map_or(true, |(bi, bj)| b[i][j].abs() < b[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'pivot };
            b.swap(t, pi);
            u.swap(t, pi);
            if pj != t {
                for row in b.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }

            let p = b[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = b[i][t].div_euclid(p);
                row_sub(&mut b, i, t, q)?;
                row_sub(&mut u, i, t, q)?;
                if b[i][t] != 0 {
                    clean = false;
                }
            }
            reduce(&mut b);
            reduce(&mut u);
            for j in t + 1..cols {
                let q = b[t][j].div_euclid(p);
                col_sub(&mut b, j, t, q)?;
                col_sub(&mut v, j, t, q)?;
                if b[t][j] != 0 {
                    clean = false;
                }
            }
            reduce(&mut b);
            reduce(&mut v);
            if !clean {
                continue 'pivot;
            }
            // divisibility pass: pull in a non-divisible entry
            let p = b[t][t];
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if b[i][j].rem_euclid(p.abs()) != 0 {
                        row_sub(&mut b, t, i, -1)?;
                        row_sub(&mut u, t, i, -1)?;
                        reduce(&mut b);
                        reduce(&mut u);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break 'pivot;
            }
        }
    }

    for t in 0..steps {
        if b[t][t] < 0 {
            for j in 0..cols {
                b[t][j] = -b[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
    }
    let d = (0..steps).map(|t| b[t][t]).collect();
    Ok(Smith { d, u, v })
}

/// Row-style Hermite normal form: a canonical basis of the row space.
/// Pivots are positive, entries above each pivot lie in `[0, pivot)`, zero
/// rows are dropped. The output depends only on the row lattice.
pub fn hnf_rows(rows_in: &[Vec<i128>]) -> Result<IMat> {
    let mut m: IMat = rows_in.to_vec();
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for col in 0..ncols {
        if r >= nrows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if m[i][col] != 0 && best.map_or(true, |b| m[i][col].abs() < m[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(bi) = best else { break };
            m.swap(r, bi);
            let mut again = false;
            for i in r + 1..nrows {
                let q = m[i][col].div_euclid(m[r][col]);
                row_sub(&mut m, i, r, q)?;
                if m[i][col] != 0 {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if m[r][col] != 0 {
            if m[r][col] < 0 {
                for j in 0..ncols {
                    m[r][j] = -m[r][j];
                }
            }
            for i in 0..r {
                let q = m[i][col].div_euclid(m[r][col]);
                row_sub(&mut m, i, r, q)?;
            }
            r += 1;
        }
    }
    m.truncate(r);
    Ok(m)
}

pub fn mat_vec(a: &IMat, x: &[i128]) -> Result<Vec<i128>> {
    let mut out = vec![0i128; a.len()];
    for (i, row) in a.iter().enumerate() {
        let mut acc = 0i128;
        for (j, &c) in row.iter().enumerate() {
            acc = cadd(acc, cmul(c, x[j])?)?;
        }
        out[i] = acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &IMat, b: &IMat) -> IMat {
        let (r, k, c) = (a.len(), b.len(), b[0].len());
        let mut out = vec![vec![0i128; c]; r];
        for i in 0..r {
            for t in 0..k {
                for j in 0..c {
                    out[i][j] += a[i][t] * b[t][j];
                }
            }
        }
        out
    }

    fn det2(m: &IMat) -> i128 {
        // determinant by Laplace, fine for the small transforms in tests
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        let mut acc = 0;
        for j in 0..n {
            let minor: IMat = m[1..]
                .iter()
                .map(|row| {
                    row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect()
                })
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            acc += s * m[0][j] * det2(&minor);
        }
        acc
    }

    #[test]
    fn smith_diag_2_3() {
        // classical oracle: elementary row/column reduction turns diag(2,3)
        // into diag(1,6)
        let a = vec![vec![2, 0], vec![0, 3]];
        let s = smith(&a).unwrap();
        assert_eq!(s.d, vec![1, 6]);
        let m = mat_mul(&mat_mul(&s.u, &a), &s.v);
        assert_eq!(m, vec![vec![1, 0], vec![0, 6]]);
        assert_eq!(det2(&s.u).abs(), 1);
        assert_eq!(det2(&s.v).abs(), 1);
    }

    #[test]
    fn smith_identity() {
        let a = identity(3);
        let s = smith(&a).unwrap();
        assert_eq!(s.d, vec![1, 1, 1]);
    }

    #[test]
    fn smith_divisibility_chain_random() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..60 {
            let r = rng.gen_range(1..5);
            let c = rng.gen_range(1..5);
            let a: IMat =
                (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6i128..=6)).collect()).collect();
            let s = smith(&a).unwrap();
            let m = mat_mul(&mat_mul(&s.u, &a), &s.v);
            for i in 0..r {
                for j in 0..c {
                    let want = if i == j && i < s.d.len() { s.d[i] } else { 0 };
                    assert_eq!(m[i][j], want);
                }
            }
            for w in s.d.windows(2) {
                if w[0] != 0 {
                    assert_eq!(w[1].rem_euclid(w[0]), 0, "chain {:?}", s.d);
                }
            }
            assert_eq!(det2(&s.u).abs(), 1);
            assert_eq!(det2(&s.v).abs(), 1);
        }
    }

    #[test]
    fn hnf_is_canonical_for_the_lattice() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let gens: IMat =
                (0..3).map(|_| (0..4).map(|_| rng.gen_range(-5i128..=5)).collect()).collect();
            let h1 = hnf_rows(&gens).unwrap();
            // shuffle generators and add a random integer combination
            let mut gens2 = vec![gens[2].clone(), gens[0].clone(), gens[1].clone()];
            let comb: Vec<i128> =
                (0..4).map(|j| gens[0][j] * 3 - gens[1][j] + gens[2][j] * 2).collect();
            gens2.push(comb);
            let h2 = hnf_rows(&gens2).unwrap();
            assert_eq!(h1, h2);
        }
    }
}
