//! Exact linear algebra over a cyclotomic field.

use std::collections::BTreeMap;

use crate::exactnum::{CycloNum, FieldRef};

/// Reduced row echelon form with leading ones; zero rows are dropped.
/// Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<CycloNum>>, ncols: usize) -> (Vec<Vec<CycloNum>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vec<CycloNum>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Basis of `{v : rows · v = 0}`.
pub fn nullspace(field: &FieldRef, rows: &[Vec<CycloNum>], ncols: usize) -> Vec<Vec<CycloNum>> {
    let (r, pivots) = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycloNum::zero(field); ncols];
            v[f] = CycloNum::one(field);
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Incremental row echelon form for sparse rows (column → value).
pub struct SparseEchelon {
    rows: BTreeMap<usize, Vec<(usize, CycloNum)>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        SparseEchelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row given as `(column, value)` pairs sorted by column; returns
    /// whether the rank increased.
    pub fn insert(&mut self, mut row: Vec<(usize, CycloNum)>) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        loop {
            let Some((col, lead)) = row.first().cloned() else {
                return false;
            };
            match self.rows.get(&col) {
                Some(pivot) => row = axpy(&row, &lead, pivot),
                None => {
                    let inv = lead.inv().expect("nonzero");
                    for (_, v) in row.iter_mut() {
                        *v = &*v * &inv;
                    }
                    self.rows.insert(col, row);
                    return true;
                }
            }
        }
    }
}

impl Default for SparseEchelon {
    fn default() -> Self {
        Self::new()
    }
}

// row - f * pivot, both sorted by column
fn axpy(row: &[(usize, CycloNum)], f: &CycloNum, pivot: &[(usize, CycloNum)]) -> Vec<(usize, CycloNum)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |x| x.0);
        let cj = pivot.get(j).map_or(usize::MAX, |x| x.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -&(f * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(f * &pivot[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CycloField;

    fn row(f: &FieldRef, v: &[i64]) -> Vec<CycloNum> {
        v.iter().map(|&x| CycloNum::from_i64(f, x)).collect()
    }

    #[test]
    fn rref_and_nullspace() {
        let q = CycloField::rationals();
        let rows = vec![row(&q, &[1, -1, 0]), row(&q, &[1, 0, -1]), row(&q, &[0, 1, -1])];
        let (r, piv) = rref(rows.clone(), 3);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, vec![row(&q, &[1, 0, -1]), row(&q, &[0, 1, -1])]);
        let ns = nullspace(&q, &rows, 3);
        assert_eq!(ns, vec![row(&q, &[1, 1, 1])]);
    }

    #[test]
    fn sparse_rank() {
        let q = CycloField::rationals();
        let mut e = SparseEchelon::new();
        let one = CycloNum::one(&q);
        assert!(e.insert(vec![(0, one.clone()), (2, one.clone())]));
        assert!(e.insert(vec![(1, one.clone()), (2, -&one)]));
        assert!(!e.insert(vec![(0, one.clone()), (1, one.clone())]));
        assert_eq!(e.rank(), 2);
    }
}
