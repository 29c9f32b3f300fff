//! Smith normal form over Z/p^k.
//!
//! Every nonzero residue is `p^v * unit`, so elimination always succeeds once the
//! pivot has minimal valuation in the remaining block. Pivot selection is pinned:
//! scan the remaining block row-major and take the first entry of minimal
//! valuation (a unit whenever one exists).

use super::matrix::{vec_add_scaled, vec_scale, Dense};
use super::{Modulus, SparseMatrix};

/// `u * a * v = d` with `d` diagonal and `u`, `v` invertible.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: SparseMatrix,
    pub d: SparseMatrix,
    pub v: SparseMatrix,
    pub u_inv: SparseMatrix,
    pub v_inv: SparseMatrix,
    /// Valuations of the nonzero diagonal entries, non-decreasing.
    pub valuations: Vec<u32>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.valuations.len()
    }
}

pub(crate) struct DenseSmith {
    pub u: Dense,
    pub u_inv: Dense,
    pub v: Dense,
    pub v_inv: Dense,
    pub diag: Vec<u64>,
    pub valuations: Vec<u32>,
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            let mut row = vec![0; n];
            row[i] = 1;
            row
        })
        .collect()
}

/// Dense SNF; `a` is `rows x cols` (it may have zero rows).
pub(crate) fn dense_smith(md: Modulus, mut a: Dense, rows: usize, cols: usize) -> DenseSmith {
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);
    let mut diag = Vec::new();
    let mut valuations = Vec::new();

    let k = md.exponent();
    let steps = rows.min(cols);
    for t in 0..steps {
        // pivot: first entry (row-major) with minimal valuation
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x == 0 {
                    continue;
                }
                let val = md.valuation(x);
                if best.map_or(true, |b| val < b.2) {
                    best = Some((i, j, val));
                    if val == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj, val)) = best else { break };
        debug_assert!(val < k);

        // move pivot to (t, t)
        if pi != t {
            a.swap(pi, t);
            u.swap(pi, t);
            // u_inv gets the inverse column operation
            for row in u_inv.iter_mut() {
                row.swap(pi, t);
            }
        }
        if pj != t {
            for row in a.iter_mut() {
                row.swap(pj, t);
            }
            for row in v.iter_mut() {
                row.swap(pj, t);
            }
            v_inv.swap(pj, t);
        }

        // normalize pivot to p^val
        let (_, unit) = md.split(a[t][t]);
        let unit_inv = md.inverse(unit).expect("unit part is invertible");
        if unit_inv != 1 {
            vec_scale(md, &mut a[t], unit_inv);
            vec_scale(md, &mut u[t], unit_inv);
            // inverse: column t of u_inv scaled by unit
            for row in u_inv.iter_mut() {
                row[t] = md.mul(row[t], unit);
            }
        }

        // clear column t below the pivot with row operations
        for i in (t + 1)..rows {
            let x = a[i][t];
            if x == 0 {
                continue;
            }
            let q = md.div_p_pow(x, val);
            let neg_q = md.neg(q);
            let (head, tail) = a.split_at_mut(i);
            vec_add_scaled(md, &mut tail[0], &head[t], neg_q);
            let (uh, ut) = u.split_at_mut(i);
            vec_add_scaled(md, &mut ut[0], &uh[t], neg_q);
            // row_i -= q row_t  ==>  inverse adds q * col_i to col_t
            for row in u_inv.iter_mut() {
                let add = md.mul(row[i], q);
                row[t] = md.add(row[t], add);
            }
        }

        // clear row t right of the pivot with column operations
        for j in (t + 1)..cols {
            let x = a[t][j];
            if x == 0 {
                continue;
            }
            let q = md.div_p_pow(x, val);
            let neg_q = md.neg(q);
            for row in a.iter_mut() {
                let add = md.mul(row[t], neg_q);
                row[j] = md.add(row[j], add);
            }
            for row in v.iter_mut() {
                let add = md.mul(row[t], neg_q);
                row[j] = md.add(row[j], add);
            }
            // col_j -= q col_t  ==>  inverse: row_t += q row_j
            let (head, tail) = v_inv.split_at_mut(j);
            vec_add_scaled(md, &mut head[t], &tail[0], q);
        }

        diag.push(a[t][t]);
        valuations.push(val);
    }

    DenseSmith {
        u,
        u_inv,
        v,
        v_inv,
        diag,
        valuations,
    }
}

/// Smith normal form of `a`: returns `U, D, V` (and inverses) with `U A V = D`.
pub fn smith_normal_form(a: &SparseMatrix) -> SmithForm {
    let md = a.modulus();
    let (rows, cols) = (a.rows(), a.cols());
    let s = dense_smith(md, a.to_dense(), rows, cols);
    let d = SparseMatrix::from_triplets(
        rows,
        cols,
        md,
        s.diag.iter().enumerate().map(|(i, &x)| (i, i, x as i64)),
    );
    SmithForm {
        u: SparseMatrix::from_dense_residues(&s.u, rows, md),
        d,
        v: SparseMatrix::from_dense_residues(&s.v, cols, md),
        u_inv: SparseMatrix::from_dense_residues(&s.u_inv, rows, md),
        v_inv: SparseMatrix::from_dense_residues(&s.v_inv, cols, md),
        valuations: s.valuations,
    }
}
