use serde::Serialize;

use super::{ChainAlgebra, Elem};

/// One failed axiom, with the basis elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DifferentialDegree { generator: String },
    ProductDegree { left: String, right: String },
    AboveTruncation { generator: String },
    DSquared { generator: String },
    Leibniz { left: String, right: String },
    Associativity { a: String, b: String, c: String },
    LeftUnit { generator: String },
    RightUnit { generator: String },
    Torsion { generator: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Pairs whose product would leave the upper-degree window; their product
    /// is taken to be zero.
    pub truncated_products: Vec<(String, String)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every axiom of a truncated chain algebra exactly.
pub fn validate(q: &ChainAlgebra) -> ValidationReport {
    let mut report = ValidationReport::default();
    let basis = q.basis();
    let name = |i: usize| basis[i].name.clone();
    let n = q.dim();
    let md = q.modulus();

    for i in 0..n {
        let b = &basis[i];
        if b.s > q.truncation() {
            report.violations.push(Violation::AboveTruncation { generator: name(i) });
        }
        let di = q.d(&q.gen(i));
        if !q.is_homogeneous(&di, b.r as i64, b.s as i64 - 1) {
            report.violations.push(Violation::DifferentialDegree { generator: name(i) });
        }
        if !q.is_zero(&q.d(&di)) {
            report.violations.push(Violation::DSquared { generator: name(i) });
        }
        // an element of order o must have o·d(e) = 0 and o·(e·f) = o·(f·e) = 0
        let o = b.order;
        if o != md.value() {
            let mut ok = q.is_zero(&q.scale(&di, o));
            for j in 0..n {
                ok &= q.is_zero(&q.scale(&q.mul(&q.gen(i), &q.gen(j)), o));
                ok &= q.is_zero(&q.scale(&q.mul(&q.gen(j), &q.gen(i)), o));
            }
            if !ok {
                report.violations.push(Violation::Torsion { generator: name(i) });
            }
        }
    }

    let one = q.one();
    for i in 0..n {
        let g = q.gen(i);
        if !q.eq(&q.mul(&one, &g), &g) {
            report.violations.push(Violation::LeftUnit { generator: name(i) });
        }
        if !q.eq(&q.mul(&g, &one), &g) {
            report.violations.push(Violation::RightUnit { generator: name(i) });
        }
    }

    let gens: Vec<Elem> = (0..n).map(|i| q.gen(i)).collect();
    let prods: Vec<Vec<Elem>> = (0..n)
        .map(|i| (0..n).map(|j| q.mul(&gens[i], &gens[j])).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&basis[i], &basis[j]);
            if !q.is_homogeneous(&prods[i][j], (a.r + b.r) as i64, (a.s + b.s) as i64) {
                report.violations.push(Violation::ProductDegree {
                    left: name(i),
                    right: name(j),
                });
            }
            if a.r + b.r > q.r_max() {
                continue;
            }
            // d(xy) = (dx)y + (−1)^s x(dy)
            let lhs = q.d(&prods[i][j]);
            let mut rhs = q.mul(&q.d(&gens[i]), &gens[j]);
            let second = q.mul(&gens[i], &q.d(&gens[j]));
            if a.s % 2 == 0 {
                rhs = q.add(&rhs, &second);
            } else {
                rhs = q.sub(&rhs, &second);
            }
            if !q.eq(&lhs, &rhs) {
                report.violations.push(Violation::Leibniz {
                    left: name(i),
                    right: name(j),
                });
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if basis[i].r + basis[j].r + basis[k].r > q.r_max() {
                    continue;
                }
                let left = q.mul(&prods[i][j], &gens[k]);
                let right = q.mul(&gens[i], &prods[j][k]);
                if !q.eq(&left, &right) {
                    report.violations.push(Violation::Associativity {
                        a: name(i),
                        b: name(j),
                        c: name(k),
                    });
                }
            }
        }
    }

    report.truncated_products = q
        .truncated_pairs()
        .into_iter()
        .map(|(i, j)| (name(i), name(j)))
        .collect();
    report
}
