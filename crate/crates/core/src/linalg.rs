//! Row reduction over F_p on small dense matrices.
//!
//! Pivots are taken from the highest column index downward, so a pivot is the
//! highest nonzero coordinate of its row. With the coefficient-index element
//! order (constant term least significant) this makes reduction of a point
//! against a basis land on the minimum member of its coset.

use crate::poly::inv_mod_p;

pub(crate) type Row = Vec<u32>;

/// Reduced row echelon form. Rows are returned sorted by pivot column,
/// highest pivot first; zero rows are dropped.
pub(crate) fn rref(rows: &[Row], cols: usize, p: u32) -> (Vec<Row>, Vec<usize>) {
    let mut m: Vec<Row> = rows.iter().filter(|r| r.iter().any(|&c| c != 0)).cloned().collect();
    let p64 = p as u64;
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in (0..cols).rev() {
        let Some(found) = (next..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(next, found);
        let inv = inv_mod_p(m[next][col], p) as u64;
        for c in m[next].iter_mut() {
            *c = (*c as u64 * inv % p64) as u32;
        }
        let pivot_row = m[next].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == next || row[col] == 0 {
                continue;
            }
            let f = row[col] as u64;
            for (c, &pc) in row.iter_mut().zip(&pivot_row) {
                let t = (pc as u64 * f % p64) as u32;
                *c = (*c + p - t) % p;
            }
        }
        pivots.push(col);
        next += 1;
        if next == m.len() {
            break;
        }
    }
    m.truncate(next);
    (m, pivots)
}

pub(crate) fn rank(rows: &[Row], cols: usize, p: u32) -> usize {
    rref(rows, cols, p).0.len()
}

/// A basis of `{y : M y = 0}` for the matrix with the given rows.
pub(crate) fn kernel(rows: &[Row], cols: usize, p: u32) -> Vec<Row> {
    let (m, pivots) = rref(rows, cols, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut y = vec![0u32; cols];
            y[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                y[pc] = (p - row[f] % p) % p;
            }
            y
        })
        .collect()
}

/// Reduce `v` against an RREF basis with the given pivots, zeroing every
/// pivot coordinate.
pub(crate) fn reduce(v: &mut [u32], basis: &[Row], pivots: &[usize], p: u32) {
    let p64 = p as u64;
    for (row, &pc) in basis.iter().zip(pivots) {
        let f = v[pc] as u64;
        if f == 0 {
            continue;
        }
        for (c, &rc) in v.iter_mut().zip(row) {
            let t = (rc as u64 * f % p64) as u32;
            *c = (*c + p - t) % p;
        }
    }
}
