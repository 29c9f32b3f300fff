use std::collections::BTreeMap;

use super::{validate, AlgebraError, BasisElement, ChainAlgebra, Elem};
use crate::linalg::{quotient_basis, QuotientPresentation};

/// Q(n′): levels below n′ unchanged, level n′ replaced by `Q_{n′}/dQ_{n′+1}`,
/// higher levels dropped. The induced structure is re-validated.
pub fn truncate(q: &ChainAlgebra, level: u32) -> Result<ChainAlgebra, AlgebraError> {
    if level > q.truncation() {
        return Err(AlgebraError::TruncationLevel {
            requested: level,
            available: q.truncation(),
        });
    }
    if level == q.truncation() {
        return Ok(q.clone());
    }
    let md = q.modulus();
    let basis = q.basis();

    // old index -> new index for the untouched levels
    let mut new_basis: Vec<BasisElement> = Vec::new();
    let mut kept: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, b) in basis.iter().enumerate() {
        if b.s < level {
            kept.insert(i, new_basis.len());
            new_basis.push(b.clone());
        }
    }

    // the quotient in each upper degree of the top level
    struct Top {
        ambient: Vec<usize>,
        presentation: QuotientPresentation,
        first: usize,
    }
    let mut tops: BTreeMap<u32, Top> = BTreeMap::new();
    for r in 0..=q.r_max() {
        let ambient = q.indices(r as i64, level as i64);
        if ambient.is_empty() {
            continue;
        }
        let mut gens: Vec<Vec<u64>> = q
            .indices(r as i64, level as i64 + 1)
            .into_iter()
            .map(|i| q.coords(&q.d(&q.gen(i)), &ambient))
            .collect();
        for (t, &i) in ambient.iter().enumerate() {
            let o = basis[i].order;
            if o != md.value() {
                let mut v = vec![0; ambient.len()];
                v[t] = o;
                gens.push(v);
            }
        }
        let presentation = quotient_basis(md, &gens, ambient.len())?;
        let first = new_basis.len();
        for g in &presentation.generators {
            let rep = q.from_coords(&ambient, &g.representative);
            let single = rep.iter().filter(|&&x| x != 0).count() == 1
                && rep.iter().any(|&x| x == 1);
            let mut name = if single {
                basis[rep.iter().position(|&x| x == 1).unwrap()].name.clone()
            } else {
                format!("[{}]", q.format(&rep))
            };
            while new_basis.iter().any(|b| b.name == name) {
                name.push('\'');
            }
            new_basis.push(BasisElement {
                name,
                r,
                s: level,
                order: g.order,
            });
        }
        tops.insert(
            r,
            Top {
                ambient,
                presentation,
                first,
            },
        );
    }

    // expresses an element of Q in the new basis
    let image = |x: &Elem| -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for (&old, &new) in &kept {
            if x[old] != 0 {
                out.push((new, x[old] as i64));
            }
        }
        for top in tops.values() {
            let coords = q.coords(x, &top.ambient);
            if coords.iter().all(|&c| c == 0) {
                continue;
            }
            for (t, c) in top.presentation.project(&coords).into_iter().enumerate() {
                if c != 0 {
                    out.push((top.first + t, c as i64));
                }
            }
        }
        out
    };
    // a lift of each new basis element to Q
    let mut lifts: Vec<Elem> = vec![Vec::new(); new_basis.len()];
    for (&old, &new) in &kept {
        lifts[new] = q.gen(old);
    }
    for top in tops.values() {
        for (t, g) in top.presentation.generators.iter().enumerate() {
            lifts[top.first + t] = q.from_coords(&top.ambient, &g.representative);
        }
    }

    let n = new_basis.len();
    let differential = (0..n).map(|i| (i, image(&q.d(&lifts[i])))).collect();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = image(&q.mul(&lifts[i], &lifts[j]));
            if !p.is_empty() {
                products.push(((i, j), p));
            }
        }
    }
    let unit = match image(&q.one()).as_slice() {
        [(u, 1)] => *u,
        _ => return Err(AlgebraError::UnitCollapsed),
    };
    let out = ChainAlgebra::new(md, level, q.r_max(), new_basis, unit, differential, products)?;
    let report = validate(&out);
    if !report.is_valid() {
        return Err(AlgebraError::InducedStructure(report.violations));
    }
    Ok(out)
}
