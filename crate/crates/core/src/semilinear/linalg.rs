//! Exact integer linear algebra on small matrices.

use alloc::vec::Vec;

pub(crate) type Mat = Vec<Vec<i128>>;

/// Rank over ℚ by fraction-free elimination.
pub(crate) fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Mat = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..nrows {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in c..ncols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x));
                if g > 1 {
                    for x in m[i].iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Determinant by Bareiss elimination.
pub(crate) fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Mat = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn minor(m: &[Vec<i128>], skip_row: usize, skip_col: usize) -> Mat {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip_row)
        .map(|(_, row)| row.iter().enumerate().filter(|&(j, _)| j != skip_col).map(|(_, &x)| x).collect())
        .collect()
}

/// Adjugate: `adj · m = det(m) · I`.
pub(crate) fn adjugate(m: &[Vec<i128>]) -> Mat {
    let n = m.len();
    let mut adj = alloc::vec![alloc::vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = s * det(&minor(m, i, j));
        }
    }
    adj
}

/// For vectors `cols` whose span has dimension `cols.len() - 1` and every
/// proper subset independent, the primitive integer relation `Σ λ_i c_i = 0`.
pub(crate) fn circuit_relation(cols: &[Vec<i128>]) -> Vec<i128> {
    let s = cols.len();
    let k = cols[0].len();
    // Choose s - 1 rows making the (s-1) x s matrix full rank.
    let mut rows_sel: Vec<Vec<i128>> = Vec::new();
    for i in 0..k {
        let row: Vec<i128> = cols.iter().map(|c| c[i]).collect();
        let mut trial = rows_sel.clone();
        trial.push(row);
        if rank(&trial) == trial.len() {
            rows_sel = trial;
            if rows_sel.len() == s - 1 {
                break;
            }
        }
    }
    let mut lambda: Vec<i128> = (0..s)
        .map(|j| {
            let sub: Mat = rows_sel
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sgn = if j % 2 == 0 { 1 } else { -1 };
            sgn * det(&sub)
        })
        .collect();
    let g = lambda.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        for x in lambda.iter_mut() {
            *x /= g;
        }
    }
    lambda
}
