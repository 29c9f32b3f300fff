use serde::{Deserialize, Serialize};

use super::matrix::vec_add_scaled;
use super::snf::dense_smith;
use super::{LinalgError, Modulus, SparseMatrix};

/// `particular + span(kernel_basis)`; the kernel basis is in Howell form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSolutionSet {
    pub modulus: Modulus,
    pub particular: Vec<u64>,
    pub kernel_basis: Vec<Vec<u64>>,
}

/// A left annihilator `w` with `w·A = 0` but `w·b != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub witness: Vec<u64>,
    pub pairing: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(AffineSolutionSet),
    NoSolution(Certificate),
}

impl SolveOutcome {
    pub fn solved(self) -> Option<AffineSolutionSet> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            SolveOutcome::NoSolution(_) => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, SolveOutcome::Solved(_))
    }
}

impl AffineSolutionSet {
    pub fn dim(&self) -> usize {
        self.particular.len()
    }

    /// Additive orders of the kernel generators' pivots; their product is the
    /// number of solutions.
    pub fn generator_orders(&self) -> Vec<u64> {
        let md = self.modulus;
        self.kernel_basis
            .iter()
            .map(|row| {
                let pivot = row.iter().find(|&&x| x != 0).copied().unwrap_or(0);
                md.additive_order(pivot)
            })
            .collect()
    }

    /// Number of solutions, or `None` on overflow.
    pub fn cardinality(&self) -> Option<u128> {
        self.generator_orders()
            .into_iter()
            .try_fold(1u128, |acc, o| acc.checked_mul(o as u128))
    }

    /// The solution `particular + Σ coeffs[i] * kernel_basis[i]`.
    pub fn point(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut x = self.particular.clone();
        for (g, &c) in self.kernel_basis.iter().zip(coeffs) {
            vec_add_scaled(self.modulus, &mut x, g, c);
        }
        x
    }

    /// Whether `x` lies in this affine set.
    pub fn contains(&self, x: &[u64]) -> bool {
        if x.len() != self.particular.len() {
            return false;
        }
        let md = self.modulus;
        let diff: Vec<u64> = x
            .iter()
            .zip(&self.particular)
            .map(|(&a, &b)| md.sub(a, b))
            .collect();
        reduce_modulo(md, &self.kernel_basis, &diff)
            .iter()
            .all(|&v| v == 0)
    }
}

/// Howell form of the row span of `gens` in (Z/m)^n: echelon rows with pivots
/// `p^v`, saturated so that reduction gives a canonical representative.
pub fn howell_basis(md: Modulus, gens: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    let k = md.exponent();
    let mut pending: Vec<Vec<u64>> = gens
        .iter()
        .map(|g| {
            assert_eq!(g.len(), n, "generator length mismatch");
            g.iter().map(|&x| md.reduce(x)).collect::<Vec<_>>()
        })
        .filter(|g: &Vec<u64>| g.iter().any(|&x| x != 0))
        .collect();
    let mut basis: Vec<(usize, u32, Vec<u64>)> = Vec::new();
    for col in 0..n {
        let mut best: Option<(usize, u32)> = None;
        for (idx, row) in pending.iter().enumerate() {
            if row[col] != 0 {
                let v = md.valuation(row[col]);
                if best.map_or(true, |b| v < b.1) {
                    best = Some((idx, v));
                }
            }
        }
        let Some((idx, v)) = best else { continue };
        let mut piv = pending.remove(idx);
        let (_, unit) = md.split(piv[col]);
        let inv = md.inverse(unit).expect("unit part");
        for x in piv.iter_mut() {
            *x = md.mul(*x, inv);
        }
        for row in pending.iter_mut() {
            if row[col] != 0 {
                let q = md.div_p_pow(row[col], v);
                vec_add_scaled(md, row, &piv, md.neg(q));
            }
        }
        if v > 0 {
            let sat: Vec<u64> = piv.iter().map(|&x| md.mul(x, md.p_pow(k - v))).collect();
            if sat.iter().any(|&x| x != 0) {
                pending.push(sat);
            }
        }
        pending.retain(|r| r.iter().any(|&x| x != 0));
        basis.push((col, v, piv));
    }
    // back-reduce entries above each pivot into [0, p^v)
    for i in 0..basis.len() {
        let (col, v, piv) = basis[i].clone();
        let pv = md.p_pow(v);
        for row in basis.iter_mut().take(i) {
            let x = row.2[col];
            if x >= pv {
                let q = x / pv;
                vec_add_scaled(md, &mut row.2, &piv, md.neg(q % md.value()));
            }
        }
    }
    basis.into_iter().map(|(_, _, r)| r).collect()
}

/// Canonical representative of `x` modulo the span of a Howell basis.
pub fn reduce_modulo(md: Modulus, howell: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
    let mut x: Vec<u64> = x.iter().map(|&v| md.reduce(v)).collect();
    for row in howell {
        let Some(col) = row.iter().position(|&v| v != 0) else {
            continue;
        };
        let pv = row[col];
        if x[col] >= pv {
            let q = x[col] / pv;
            vec_add_scaled(md, &mut x, row, md.neg(q));
        }
    }
    x
}

/// Solves `A x = b` over Z/m. The particular solution is the canonical
/// representative modulo the kernel.
pub fn solve(a: &SparseMatrix, b: &[u64]) -> Result<SolveOutcome, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let md = a.modulus();
    let (rows, cols) = (a.rows(), a.cols());
    let k = md.exponent();
    let s = dense_smith(md, a.to_dense(), rows, cols);

    // c = U b
    let c: Vec<u64> = s
        .u
        .iter()
        .map(|row| {
            row.iter()
                .zip(b)
                .fold(0, |acc, (&x, &y)| md.add(acc, md.mul(x, md.reduce(y))))
        })
        .collect();

    let rank = s.valuations.len();
    let mut y = vec![0u64; cols];
    for i in 0..rows {
        let v = if i < rank { s.valuations[i] } else { k };
        if md.valuation(c[i]) < v {
            let scale = md.p_pow(k - v);
            let witness: Vec<u64> = s.u[i].iter().map(|&x| md.mul(x, scale)).collect();
            let pairing = md.mul(c[i], scale);
            return Ok(SolveOutcome::NoSolution(Certificate { witness, pairing }));
        }
        if i < rank {
            y[i] = md.div_p_pow(c[i], v);
        }
    }

    // kernel generators in y-coordinates, mapped through V
    let mut kernel = Vec::new();
    for j in 0..cols {
        let v = if j < rank { s.valuations[j] } else { k };
        if v == 0 {
            continue;
        }
        let scale = md.p_pow(k - v);
        kernel.push(s.v.iter().map(|row| md.mul(row[j], scale)).collect::<Vec<_>>());
    }
    let x: Vec<u64> = s
        .v
        .iter()
        .map(|row| {
            row.iter()
                .zip(&y)
                .fold(0, |acc, (&p, &q)| md.add(acc, md.mul(p, q)))
        })
        .collect();
    let kernel_basis = howell_basis(md, &kernel, cols);
    let particular = reduce_modulo(md, &kernel_basis, &x);
    Ok(SolveOutcome::Solved(AffineSolutionSet {
        modulus: md,
        particular,
        kernel_basis,
    }))
}

/// Solves `A x ≡ b` where equation `i` only holds modulo `row_orders[i]` and
/// coordinate `j` of `x` is only defined modulo `col_orders[j]` (orders are
/// powers of p dividing m). Used for modules with torsion generators.
pub fn solve_with_orders(
    a: &SparseMatrix,
    b: &[u64],
    row_orders: &[u64],
    col_orders: &[u64],
) -> Result<SolveOutcome, LinalgError> {
    let md = a.modulus();
    let m = md.value();
    if row_orders.len() != a.rows() || col_orders.len() != a.cols() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: row_orders.len(),
        });
    }
    let torsion_rows: Vec<usize> = (0..a.rows()).filter(|&i| row_orders[i] % m != 0).collect();
    let outcome = if torsion_rows.is_empty() {
        solve(a, b)?
    } else {
        let n = a.cols();
        let mut trip: Vec<(usize, usize, i64)> =
            a.entries().iter().map(|&(r, c, v)| (r, c, v as i64)).collect();
        for (s, &r) in torsion_rows.iter().enumerate() {
            trip.push((r, n + s, row_orders[r] as i64));
        }
        let aug = SparseMatrix::from_triplets(a.rows(), n + torsion_rows.len(), md, trip);
        match solve(&aug, b)? {
            SolveOutcome::NoSolution(c) => SolveOutcome::NoSolution(c),
            SolveOutcome::Solved(set) => {
                let kernel: Vec<Vec<u64>> =
                    set.kernel_basis.iter().map(|g| g[..n].to_vec()).collect();
                let kernel_basis = howell_basis(md, &kernel, n);
                let particular = reduce_modulo(md, &kernel_basis, &set.particular[..n]);
                SolveOutcome::Solved(AffineSolutionSet {
                    modulus: md,
                    particular,
                    kernel_basis,
                })
            }
        }
    };
    if col_orders.iter().all(|&o| o % m == 0) {
        return Ok(outcome);
    }
    Ok(match outcome {
        SolveOutcome::NoSolution(c) => SolveOutcome::NoSolution(c),
        SolveOutcome::Solved(set) => {
            let n = set.dim();
            let mut kernel = set.kernel_basis;
            for (j, &o) in col_orders.iter().enumerate() {
                if o % m != 0 {
                    let mut e = vec![0; n];
                    e[j] = o;
                    kernel.push(e);
                }
            }
            let kernel_basis = howell_basis(md, &kernel, n);
            let particular = reduce_modulo(md, &kernel_basis, &set.particular);
            SolveOutcome::Solved(AffineSolutionSet {
                modulus: md,
                particular,
                kernel_basis,
            })
        }
    })
}

/// Generators (Howell form) of the kernel of `A`.
pub fn kernel(a: &SparseMatrix) -> Vec<Vec<u64>> {
    match solve(a, &vec![0; a.rows()]).expect("dimensions agree") {
        SolveOutcome::Solved(s) => s.kernel_basis,
        SolveOutcome::NoSolution(_) => unreachable!("homogeneous systems are solvable"),
    }
}

/// One cyclic summand Z/order of a quotient module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientGenerator {
    pub representative: Vec<u64>,
    pub order: u64,
}

/// `ambient / span(gens)` as a direct sum of cyclic modules, with the projection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientPresentation {
    pub modulus: Modulus,
    pub ambient_rank: usize,
    pub generators: Vec<QuotientGenerator>,
    /// Rows of the change of basis `U`; row `i` pairs with `generators[i]`.
    projection_rows: Vec<Vec<u64>>,
}

impl QuotientPresentation {
    /// Coordinates of the class of `x`, each reduced modulo its generator order.
    pub fn project(&self, x: &[u64]) -> Vec<u64> {
        let md = self.modulus;
        self.projection_rows
            .iter()
            .zip(&self.generators)
            .map(|(row, g)| {
                let c = row
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| md.add(acc, md.mul(a, md.reduce(b))));
                c % g.order
            })
            .collect()
    }

    /// Coordinates scaled into Z/m so that classes embed injectively in (Z/m)^r.
    pub fn embedded(&self, coords: &[u64]) -> Vec<u64> {
        let m = self.modulus.value();
        coords
            .iter()
            .zip(&self.generators)
            .map(|(&c, g)| (c * (m / g.order)) % m)
            .collect()
    }

    pub fn lift(&self, coords: &[u64]) -> Vec<u64> {
        let md = self.modulus;
        let mut x = vec![0; self.ambient_rank];
        for (g, &c) in self.generators.iter().zip(coords) {
            vec_add_scaled(md, &mut x, &g.representative, c);
        }
        x
    }

    pub fn cardinality(&self) -> u128 {
        self.generators.iter().map(|g| g.order as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Presents `(Z/m)^ambient_rank / span(gens)`.
pub fn quotient_basis(
    md: Modulus,
    gens: &[Vec<u64>],
    ambient_rank: usize,
) -> Result<QuotientPresentation, LinalgError> {
    for g in gens {
        if g.len() != ambient_rank {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient_rank,
                found: g.len(),
            });
        }
    }
    let k = md.exponent();
    // the Howell form depends only on the span, so the presentation does too
    let gens = howell_basis(md, gens, ambient_rank);
    // columns are the generators
    let dense: Vec<Vec<u64>> = (0..ambient_rank)
        .map(|i| gens.iter().map(|g| md.reduce(g[i])).collect())
        .collect();
    let s = dense_smith(md, dense, ambient_rank, gens.len());
    let rank = s.valuations.len();
    let mut generators = Vec::new();
    let mut projection_rows = Vec::new();
    for i in 0..ambient_rank {
        let v = if i < rank { s.valuations[i] } else { k };
        if v == 0 {
            continue;
        }
        let representative: Vec<u64> = s.u_inv.iter().map(|row| row[i]).collect();
        generators.push(QuotientGenerator {
            representative,
            order: md.p_pow(v),
        });
        projection_rows.push(s.u[i].clone());
    }
    Ok(QuotientPresentation {
        modulus: md,
        ambient_rank,
        generators,
        projection_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn enumerate_vectors(m: u64, n: usize) -> Vec<Vec<u64>> {
        let total = (m as usize).pow(n as u32);
        (0..total)
            .map(|mut t| {
                (0..n)
                    .map(|_| {
                        let d = (t % m as usize) as u64;
                        t /= m as usize;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn zero_system() {
        let md = Modulus::new(3).unwrap();
        let a = SparseMatrix::zeros(2, 3, md);
        let s = solve(&a, &[0, 0]).unwrap().solved().unwrap();
        assert_eq!(s.particular, vec![0, 0, 0]);
        assert_eq!(s.kernel_basis.len(), 3);
        assert_eq!(s.cardinality(), Some(27));
    }

    #[test]
    fn two_x_equals_two_mod_four() {
        // enumerate all residues: solutions are exactly {1, 3}
        let md = Modulus::new(4).unwrap();
        let a = SparseMatrix::from_dense(&[vec![2]], md);
        let brute: Vec<u64> = (0..4).filter(|x| (2 * x) % 4 == 2).collect();
        assert_eq!(brute, vec![1, 3]);
        let s = solve(&a, &[2]).unwrap().solved().unwrap();
        assert_eq!(s.particular, vec![1]);
        assert_eq!(s.kernel_basis, vec![vec![2]]);
        for x in 0..4 {
            assert_eq!(s.contains(&[x]), brute.contains(&x));
        }
    }

    #[test]
    fn two_x_equals_one_mod_four_has_no_solution() {
        let md = Modulus::new(4).unwrap();
        assert!((0..4).all(|x| (2 * x) % 4 != 1));
        let a = SparseMatrix::from_dense(&[vec![2]], md);
        match solve(&a, &[1]).unwrap() {
            SolveOutcome::NoSolution(cert) => {
                // witness annihilates A but not b
                assert_eq!(md.mul(cert.witness[0], 2), 0);
                assert_ne!(md.mul(cert.witness[0], 1), 0);
                assert_eq!(cert.pairing, md.mul(cert.witness[0], 1));
            }
            other => panic!("expected no solution, got {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let md = Modulus::new(2).unwrap();
        let a = SparseMatrix::zeros(2, 2, md);
        assert!(matches!(
            solve(&a, &[0]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quotient_trivial_gens() {
        let md = Modulus::new(5).unwrap();
        let q = quotient_basis(md, &[], 3).unwrap();
        assert_eq!(q.generators.len(), 3);
        for (i, g) in q.generators.iter().enumerate() {
            let mut e = vec![0; 3];
            e[i] = 1;
            assert_eq!(g.representative, e);
            assert_eq!(g.order, 5);
            assert_eq!(q.project(&e), e);
        }
    }

    #[test]
    fn quotient_by_diagonal_over_f2() {
        let md = Modulus::new(2).unwrap();
        let q = quotient_basis(md, &[vec![1, 1]], 2).unwrap();
        assert_eq!(q.generators.len(), 1);
        // enumerate the four vectors: classes are {00, 11} and {10, 01}
        let classes: Vec<_> = enumerate_vectors(2, 2).iter().map(|v| q.project(v)).collect();
        assert_eq!(q.project(&[1, 0]), q.project(&[0, 1]));
        assert_eq!(q.project(&[0, 0]), q.project(&[1, 1]));
        assert_ne!(q.project(&[1, 0]), q.project(&[0, 0]));
        assert_eq!(classes.iter().filter(|c| c[0] == 0).count(), 2);
    }

    #[test]
    fn quotient_z4_by_two_is_z2() {
        let md = Modulus::new(4).unwrap();
        let q = quotient_basis(md, &[vec![2]], 1).unwrap();
        assert_eq!(q.generators.len(), 1);
        assert_eq!(q.generators[0].order, 2);
        assert_eq!(q.cardinality(), 2);
        assert_eq!(q.project(&[3]), q.project(&[1]));
        assert_eq!(q.project(&[2]), vec![0]);
    }

    #[test]
    fn howell_is_canonical_over_z4() {
        let md = Modulus::new(4).unwrap();
        // the same submodule given by different generators
        let a = howell_basis(md, &[vec![2, 2], vec![0, 2]], 2);
        let b = howell_basis(md, &[vec![2, 0], vec![2, 2]], 2);
        assert_eq!(a, b);
        // saturation: span{(2,1)} contains (0,2)
        let c = howell_basis(md, &[vec![2, 1]], 2);
        assert_eq!(reduce_modulo(md, &c, &[0, 2]), vec![0, 0]);
    }

    #[test]
    fn torsion_rows_and_columns() {
        // x in Z/4 with equation 1*x = 1 taken mod 2: solutions {1, 3}
        let md = Modulus::new(4).unwrap();
        let a = SparseMatrix::from_dense(&[vec![1]], md);
        let s = solve_with_orders(&a, &[1], &[2], &[4]).unwrap().solved().unwrap();
        assert_eq!(s.cardinality(), Some(2));
        assert!(s.contains(&[3]));
        assert!(!s.contains(&[2]));
        // column of order 2: x and x + 2 are identified
        let s = solve_with_orders(&a, &[1], &[2], &[2]).unwrap().solved().unwrap();
        assert_eq!(s.particular, vec![1]);
    }

    proptest! {
        // every member solves the system; NoSolution iff brute force finds none
        #[test]
        fn solve_matches_enumeration(
            m in prop::sample::select(vec![2u64, 4]),
            rows in 1usize..4,
            cols in 1usize..5,
            entries in prop::collection::vec(0u64..4, 16),
            rhs in prop::collection::vec(0u64..4, 4),
        ) {
            let md = Modulus::new(m).unwrap();
            let a = SparseMatrix::from_triplets(rows, cols, md,
                (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| (i, j, entries[i * 4 + j] as i64)));
            let b: Vec<u64> = rhs[..rows].iter().map(|&x| x % m).collect();
            let all = enumerate_vectors(m, cols);
            let brute: Vec<&Vec<u64>> = all.iter().filter(|x| a.mul_vec(x).unwrap() == b).collect();
            match solve(&a, &b).unwrap() {
                SolveOutcome::Solved(s) => {
                    prop_assert!(!brute.is_empty());
                    prop_assert_eq!(a.mul_vec(&s.particular).unwrap(), b.clone());
                    prop_assert_eq!(s.cardinality().unwrap() as usize, brute.len());
                    for x in &all {
                        prop_assert_eq!(s.contains(x), brute.contains(&x));
                    }
                    for g in &s.kernel_basis {
                        prop_assert!(a.mul_vec(g).unwrap().iter().all(|&v| v == 0));
                    }
                }
                SolveOutcome::NoSolution(cert) => {
                    prop_assert!(brute.is_empty());
                    let wa = a.transpose().mul_vec(&cert.witness).unwrap();
                    prop_assert!(wa.iter().all(|&v| v == 0));
                    prop_assert_ne!(cert.pairing, 0);
                }
            }
        }

        #[test]
        fn solve_is_deterministic(entries in prop::collection::vec(0i64..9, 9), rhs in prop::collection::vec(0u64..9, 3)) {
            let md = Modulus::new(9).unwrap();
            let a = SparseMatrix::from_triplets(3, 3, md, (0..9).map(|t| (t / 3, t % 3, entries[t])));
            let s1 = serde_json::to_string(&solve(&a, &rhs).unwrap().solved()).unwrap();
            let s2 = serde_json::to_string(&solve(&a, &rhs).unwrap().solved()).unwrap();
            prop_assert_eq!(s1, s2);
        }
    }
}
