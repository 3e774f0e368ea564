//! Row-style Hermite normal form over the integers.
//!
//! Every step is a unimodular row operation (swap, negate, add an integer
//! multiple of one row to another), tracked in a transform `U` so that
//! `U * A = H`. All arithmetic is exact and overflow-checked.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    /// Reduced matrix `H = U * A`; the first `rank` rows are nonzero.
    pub h: Vec<Vec<i128>>,
    /// Unimodular transform.
    pub u: Vec<Vec<i128>>,
    /// Pivot column of each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Rows of `U` whose image is zero: a basis of the integer left kernel of `A`.
    pub fn kernel(&self) -> &[Vec<i128>] {
        &self.u[self.rank()..]
    }
}

fn add_multiple(rows: &mut [Vec<i128>], target: usize, source: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    let (src, dst) = if source < target {
        let (a, b) = rows.split_at_mut(target);
        (&a[source], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(source);
        (&b[0], &mut a[target])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        *d = s
            .checked_mul(q)
            .and_then(|p| d.checked_sub(p))
            .ok_or(Error::ArithmeticOverflow)?;
    }
    Ok(())
}

fn negate(row: &mut [i128]) -> Result<()> {
    for x in row {
        *x = x.checked_neg().ok_or(Error::ArithmeticOverflow)?;
    }
    Ok(())
}

/// Computes the Hermite normal form of an `n x m` integer matrix given by rows.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Result<HermiteForm> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != m) {
        return Err(Error::LengthMismatch {
            expected: m,
            actual: bad.len(),
        });
    }
    let mut h: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut pivots = Vec::new();

    for col in 0..m {
        let p = pivots.len();
        if p == n {
            break;
        }
        // Euclidean reduction of column `col` over rows p..n.
        loop {
            let best = (p..n)
                .filter(|&i| h[i][col] != 0)
                .min_by_key(|&i| (h[i][col].unsigned_abs(), i));
            let Some(best) = best else { break };
            h.swap(p, best);
            u.swap(p, best);
            let mut done = true;
            for i in p + 1..n {
                if h[i][col] != 0 {
                    let q = h[i][col].div_euclid(h[p][col]);
                    add_multiple(&mut h, i, p, q)?;
                    add_multiple(&mut u, i, p, q)?;
                    if h[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[p][col] == 0 {
            continue;
        }
        if h[p][col] < 0 {
            negate(&mut h[p])?;
            negate(&mut u[p])?;
        }
        for i in 0..p {
            let q = h[i][col].div_euclid(h[p][col]);
            add_multiple(&mut h, i, p, q)?;
            add_multiple(&mut u, i, p, q)?;
        }
        pivots.push(col);
    }
    Ok(HermiteForm { h, u, pivots })
}

/// True iff the rows span all of `Z^r`: rank `r` and every pivot equal to 1.
pub fn spans_full_lattice(rows: &[Vec<i64>], r: usize) -> Result<bool> {
    if rows.is_empty() {
        return Ok(r == 0);
    }
    let form = hermite_normal_form(rows)?;
    Ok(form.rank() == r && (0..r).all(|i| form.h[i][form.pivots[i]] == 1))
}
