//! Non-negative solutions of linear Diophantine systems `A y = c` by the
//! completion procedure of Contejean and Devie.

use alloc::vec;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// All non-negative solutions of `A y = c`, as `minimal + ℕ·hilbert`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Solutions {
    /// Minimal solutions of the inhomogeneous system (`[0]` when `c = 0`).
    pub minimal: Vec<Vec<u64>>,
    /// Hilbert basis of the homogeneous system `A y = 0`.
    pub hilbert: Vec<Vec<u64>>,
}

/// Solves `A y = c` over ℕ. `rows` are the rows of `A`, all of length `n`.
///
/// The inhomogeneous system is folded into a homogeneous one with an extra
/// variable of column `-c` that is frozen at 1 once set: solutions with it at
/// 0 form the Hilbert basis, those with it at 1 the minimal solutions.
pub fn solve(rows: &[Vec<i64>], c: &[i64], n: usize, budget: &Budget) -> Result<Solutions> {
    let m = rows.len();
    assert_eq!(c.len(), m);
    let inhom = c.iter().any(|&x| x != 0);
    let nvars = if inhom { n + 1 } else { n };
    // Columns of the extended matrix.
    let cols: Vec<Vec<i64>> = (0..nvars)
        .map(|j| (0..m).map(|i| if j < n { rows[i][j] } else { -c[i] }).collect())
        .collect();
    if nvars > 128 {
        return Err(Error::CapExceeded { what: "Diophantine variables", limit: 128 });
    }
    let mut found: Vec<Vec<u64>> = Vec::new();
    // Breadth-first, with the components of earlier siblings frozen in later
    // subtrees so that every vector is generated at most once.
    let mut frontier: Vec<(Vec<u64>, u128)> = (0..nvars)
        .map(|j| {
            let mut e = vec![0u64; nvars];
            e[j] = 1;
            (e, (1u128 << j) - 1)
        })
        .collect();
    let dominated = |y: &[u64], found: &[Vec<u64>]| found.iter().any(|s| s.iter().zip(y).all(|(a, b)| a <= b));
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let mut level_solutions = Vec::new();
        for (y, frozen) in &frontier {
            if dominated(y, &found) {
                continue;
            }
            let d: Vec<i64> = (0..m).map(|i| (0..nvars).map(|j| cols[j][i] * y[j] as i64).sum()).collect();
            if d.iter().all(|&x| x == 0) {
                level_solutions.push(y.clone());
                continue;
            }
            let mut frozen = *frozen;
            if inhom && y[n] == 1 {
                frozen |= 1 << n;
            }
            for j in 0..nvars {
                if frozen & (1 << j) != 0 {
                    continue;
                }
                let dot: i64 = (0..m).map(|i| d[i] * cols[j][i]).sum();
                if dot < 0 {
                    let mut z = y.clone();
                    z[j] += 1;
                    next.push((z, frozen));
                    frozen |= 1 << j;
                }
            }
        }
        found.extend(level_solutions);
        if found.len() > budget.max_solver_solutions {
            return Err(Error::CapExceeded { what: "Diophantine solutions", limit: budget.max_solver_solutions });
        }
        if next.len() > budget.max_solver_frontier {
            return Err(Error::CapExceeded { what: "Diophantine search frontier", limit: budget.max_solver_frontier });
        }
        frontier = next;
    }
    found.sort();
    found.dedup();
    let mut out = Solutions::default();
    if !inhom {
        out.minimal.push(vec![0; n]);
        out.hilbert = found;
    } else {
        for mut s in found {
            let top = s.pop().unwrap();
            if top == 0 {
                out.hilbert.push(s);
            } else {
                out.minimal.push(s);
            }
        }
    }
    out.minimal.sort();
    out.hilbert.sort();
    Ok(out)
}

/// Whether `target` is a non-negative integer combination of `gens`.
pub fn in_span(target: &[u64], gens: &[Vec<u64>]) -> bool {
    let gens: Vec<&Vec<u64>> =
        gens.iter().filter(|g| g.iter().any(|&x| x > 0) && g.iter().zip(target).all(|(a, b)| a <= b)).collect();
    if target.iter().all(|&x| x == 0) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    // Reachability over the box below `target`, when it is small enough.
    let cells = target.iter().try_fold(1usize, |acc, &t| acc.checked_mul(t as usize + 1));
    if let Some(cells) = cells.filter(|&c| c <= 1 << 20) {
        let radix: Vec<usize> = target.iter().map(|&t| t as usize + 1).collect();
        let offsets: Vec<usize> = gens
            .iter()
            .map(|g| {
                let mut off = 0;
                for i in (0..g.len()).rev() {
                    off = off * radix[i] + g[i] as usize;
                }
                off
            })
            .collect();
        let mut reach = vec![false; cells];
        reach[0] = true;
        let mut digits = vec![0u64; target.len()];
        for idx in 1..cells {
            let mut i = 0;
            while digits[i] == target[i] {
                digits[i] = 0;
                i += 1;
            }
            digits[i] += 1;
            reach[idx] = gens
                .iter()
                .zip(&offsets)
                .any(|(g, &off)| g.iter().zip(&digits).all(|(a, b)| a <= b) && reach[idx - off]);
        }
        return reach[cells - 1];
    }
    fn go(rem: &mut Vec<u64>, gens: &[&Vec<u64>], i: usize) -> bool {
        if rem.iter().all(|&x| x == 0) {
            return true;
        }
        if i == gens.len() {
            return false;
        }
        let g = gens[i];
        let max = g.iter().zip(rem.iter()).filter(|(&gv, _)| gv > 0).map(|(&gv, &r)| r / gv).min().unwrap_or(0);
        for t in (0..=max).rev() {
            for (r, &gv) in rem.iter_mut().zip(g) {
                *r -= t * gv;
            }
            let ok = go(rem, gens, i + 1);
            for (r, &gv) in rem.iter_mut().zip(g) {
                *r += t * gv;
            }
            if ok {
                return true;
            }
        }
        false
    }
    go(&mut target.to_vec(), &gens, 0)
}

/// For distinct non-zero `gens`, which of them are sums of at least two
/// generators. `None` when the bounding box is too large to scan.
pub fn reducible(gens: &[Vec<u64>]) -> Option<Vec<bool>> {
    let dim = gens.first()?.len();
    let top: Vec<u64> = (0..dim).map(|i| gens.iter().map(|g| g[i]).max().unwrap_or(0)).collect();
    let radix: Vec<usize> = top.iter().map(|&t| t as usize + 1).collect();
    let cells = radix.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r)).filter(|&c| c <= 1 << 20)?;
    let index = |v: &[u64]| v.iter().zip(&radix).rev().fold(0, |acc, (&x, &r)| acc * r + x as usize);
    let offsets: Vec<usize> = gens.iter().map(|g| index(g)).collect();
    // reach[v]: v is a sum of at least one generator.
    let mut reach = vec![false; cells];
    let mut digits = vec![0u64; dim];
    for idx in 1..cells {
        let mut i = 0;
        while digits[i] == top[i] {
            digits[i] = 0;
            i += 1;
        }
        digits[i] += 1;
        reach[idx] = gens
            .iter()
            .zip(&offsets)
            .any(|(g, &off)| g.iter().zip(&digits).all(|(a, b)| a <= b) && (off == idx || reach[idx - off]));
    }
    Some(
        gens.iter()
            .map(|p| {
                let ip = index(p);
                gens.iter().zip(&offsets).any(|(g, &off)| off != ip && g.iter().zip(p).all(|(a, b)| a <= b) && reach[ip - off])
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(rows: &[Vec<i64>], y: &[u64]) -> Vec<i64> {
        rows.iter().map(|r| r.iter().zip(y).map(|(a, b)| a * *b as i64).sum()).collect()
    }

    #[test]
    fn homogeneous_basis() {
        // x - y = 0  → basis {(1,1)}
        let s = solve(&[vec![1, -1]], &[0], 2, &Budget::default()).unwrap();
        assert_eq!(s.hilbert, vec![vec![1, 1]]);
        // 2x - 3y = 0 → {(3,2)}
        let s = solve(&[vec![2, -3]], &[0], 2, &Budget::default()).unwrap();
        assert_eq!(s.hilbert, vec![vec![3, 2]]);
    }

    #[test]
    fn inhomogeneous() {
        // 2n - 3m = 0 - 0 shifted: 2n = 3m + 1 → minimal (2,1)
        let s = solve(&[vec![2, -3]], &[1], 2, &Budget::default()).unwrap();
        assert_eq!(s.minimal, vec![vec![2, 1]]);
        assert_eq!(s.hilbert, vec![vec![3, 2]]);
        // No solution: 2x = 1
        let s = solve(&[vec![2]], &[1], 1, &Budget::default()).unwrap();
        assert!(s.minimal.is_empty());
    }

    #[test]
    fn brute_force_agreement() {
        // x + y - z = 2, y - w = 0 over the box [0,6]^4
        let rows = vec![vec![1, 1, -1, 0], vec![0, 1, 0, -1]];
        let c = [2, 0];
        let s = solve(&rows, &c, 4, &Budget::default()).unwrap();
        for m in &s.minimal {
            assert_eq!(eval(&rows, m), c.to_vec());
        }
        for h in &s.hilbert {
            assert_eq!(eval(&rows, h), alloc::vec![0, 0]);
        }
        let mut gens = s.hilbert.clone();
        gens.retain(|g| g.iter().any(|&x| x > 0));
        for a in 0..6u64 {
            for b in 0..6u64 {
                for cc in 0..6u64 {
                    for d in 0..6u64 {
                        let y = [a, b, cc, d];
                        let sol = eval(&rows, &y) == c.to_vec();
                        let gen = s.minimal.iter().any(|m| {
                            m.iter().zip(&y).all(|(p, q)| p <= q) && {
                                let rest: Vec<u64> = y.iter().zip(m).map(|(q, p)| q - p).collect();
                                in_span(&rest, &gens)
                            }
                        });
                        assert_eq!(sol, gen, "{y:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn span_membership() {
        assert!(in_span(&[4], &[vec![2]]));
        assert!(!in_span(&[3], &[vec![2]]));
        assert!(in_span(&[7], &[vec![2], vec![3]]));
        assert!(in_span(&[0, 0], &[]));
        assert!(in_span(&[6, 8, 15], &[vec![3, 4, 7], vec![3, 4, 8]]));
        assert!(!in_span(&[6, 8, 14], &[vec![3, 4, 8], vec![6, 8, 15]]));
    }
}
