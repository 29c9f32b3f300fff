//! Exact checks of the coalgebra structure on cubical chains.

use std::collections::BTreeMap;

use super::{Cell, CubicalComplex, CubicalError};

type Tensor2 = BTreeMap<(Cell, Cell), i64>;
type Tensor3 = BTreeMap<(Cell, Cell, Cell), i64>;

/// Δ̄ for every cell of `x`.
#[derive(Clone, Debug)]
pub struct DiagonalData {
    pub terms: BTreeMap<Cell, Vec<(i64, Cell, Cell)>>,
}

pub fn serre_diagonal(x: &CubicalComplex) -> DiagonalData {
    DiagonalData {
        terms: x.cells().iter().map(|c| (c.clone(), c.diagonal())).collect(),
    }
}

fn add2(t: &mut Tensor2, key: (Cell, Cell), v: i64) {
    let e = t.entry(key).or_default();
    *e += v;
}

fn clean2(t: Tensor2) -> Tensor2 {
    t.into_iter().filter(|e| e.1 != 0).collect()
}

fn clean3(t: Tensor3) -> Tensor3 {
    t.into_iter().filter(|e| e.1 != 0).collect()
}

/// `(Δ̄⊗1)Δ̄ = (1⊗Δ̄)Δ̄` on `c`, compared term by term.
pub fn is_coassociative_on(c: &Cell) -> bool {
    let mut left: Tensor3 = BTreeMap::new();
    let mut right: Tensor3 = BTreeMap::new();
    for (s, a, b) in c.diagonal() {
        for (t, a1, a2) in a.diagonal() {
            *left.entry((a1, a2, b.clone())).or_default() += s * t;
        }
        for (t, b1, b2) in b.diagonal() {
            // 1⊗Δ̄ moves no odd symbol past a, so no extra sign
            *right.entry((a.clone(), b1, b2)).or_default() += s * t;
        }
    }
    clean3(left) == clean3(right)
}

/// `(ε⊗1)Δ̄ = 1 = (1⊗ε)Δ̄` with ε the augmentation (1 on vertices).
pub fn is_counital_on(c: &Cell) -> bool {
    let mut left: BTreeMap<Cell, i64> = BTreeMap::new();
    let mut right: BTreeMap<Cell, i64> = BTreeMap::new();
    for (s, a, b) in c.diagonal() {
        if a.dim() == 0 {
            *left.entry(b.clone()).or_default() += s;
        }
        if b.dim() == 0 {
            *right.entry(a).or_default() += s;
        }
    }
    let expected: BTreeMap<Cell, i64> = [(c.clone(), 1)].into_iter().collect();
    let clean = |m: BTreeMap<Cell, i64>| m.into_iter().filter(|e| e.1 != 0).collect::<BTreeMap<_, _>>();
    clean(left) == expected && clean(right) == expected
}

/// `∂Δ̄ = Δ̄∂` with `∂(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b`.
pub fn is_chain_map_on(c: &Cell) -> bool {
    let mut lhs: Tensor2 = BTreeMap::new();
    for (s, a, b) in c.diagonal() {
        for (fa, t) in a.boundary() {
            add2(&mut lhs, (fa, b.clone()), s * t);
        }
        let sign = if a.dim() % 2 == 0 { 1 } else { -1 };
        for (fb, t) in b.boundary() {
            add2(&mut lhs, (a.clone(), fb), s * t * sign);
        }
    }
    let mut rhs: Tensor2 = BTreeMap::new();
    for (f, t) in c.boundary() {
        for (s, a, b) in f.diagonal() {
            add2(&mut rhs, (a, b), s * t);
        }
    }
    clean2(lhs) == clean2(rhs)
}

/// Δ̄ of a subcomplex is the restriction of Δ̄ of the ambient cube: every term
/// of every cell lies in the subcomplex.
pub fn restricts_to(x: &CubicalComplex) -> bool {
    x.cells()
        .iter()
        .all(|c| c.diagonal().iter().all(|(_, a, b)| x.contains(a) && x.contains(b)))
}

/// Runs all three coalgebra checks on every cell of `x`; returns the first
/// failing cell.
pub fn check_coalgebra(x: &CubicalComplex) -> Result<(), CubicalError> {
    for c in x.cells() {
        if !(is_coassociative_on(c) && is_counital_on(c) && is_chain_map_on(c)) {
            return Err(CubicalError::LawViolation(c.to_string()));
        }
    }
    Ok(())
}
