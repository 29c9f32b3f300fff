use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::AlgebraError;
use crate::linalg::Modulus;

/// A basis element of bidegree (r, s). `order` is its additive order, a power
/// of p dividing m (m unless the element came from a torsion quotient).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub r: u32,
    pub s: u32,
    pub order: u64,
}

/// Dense coordinates over the full basis of an algebra.
pub type Elem = Vec<u64>;

/// A finite bigraded chain algebra over Z/m: upper degree `r ≤ r_max`, lower
/// (chain) degree `s ≤ truncation`, differential of bidegree (0, −1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAlgebra {
    modulus: Modulus,
    truncation: u32,
    r_max: u32,
    basis: Vec<BasisElement>,
    unit: usize,
    differential: Vec<Vec<(usize, u64)>>,
    products: BTreeMap<(usize, usize), Vec<(usize, u64)>>,
    names: BTreeMap<String, usize>,
}

fn sparse(md: Modulus, terms: &[(usize, i64)]) -> Vec<(usize, u64)> {
    let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
    for &(i, c) in terms {
        let e = acc.entry(i).or_default();
        *e = md.add(*e, md.from_i64(c));
    }
    acc.into_iter().filter(|e| e.1 != 0).collect()
}

impl ChainAlgebra {
    /// Assembles an algebra from structure constants. Only structural problems
    /// are errors here; the axioms are checked by [`super::validate`].
    pub fn new(
        modulus: Modulus,
        truncation: u32,
        r_max: u32,
        basis: Vec<BasisElement>,
        unit: usize,
        differential: Vec<(usize, Vec<(usize, i64)>)>,
        products: Vec<((usize, usize), Vec<(usize, i64)>)>,
    ) -> Result<Self, AlgebraError> {
        let mut names = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            if names.insert(b.name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateName(b.name.clone()));
            }
            let o = b.order;
            if o < 2 || modulus.value() % o != 0 || modulus.additive_order(modulus.value() / o) != o {
                return Err(AlgebraError::BadOrder {
                    generator: b.name.clone(),
                    order: o,
                });
            }
            if b.r > r_max {
                return Err(AlgebraError::OutsideWindow {
                    generator: b.name.clone(),
                    r: b.r,
                    r_max,
                });
            }
        }
        let n = basis.len();
        if unit >= n {
            return Err(AlgebraError::IndexOutOfRange(unit));
        }
        if (basis[unit].r, basis[unit].s) != (0, 0) || basis[unit].order != modulus.value() {
            return Err(AlgebraError::UnitDegree(basis[unit].name.clone()));
        }
        let check = |i: usize| if i < n { Ok(()) } else { Err(AlgebraError::IndexOutOfRange(i)) };
        let mut d = vec![Vec::new(); n];
        for (from, to) in differential {
            check(from)?;
            for &(t, _) in &to {
                check(t)?;
            }
            let mut merged: Vec<(usize, i64)> = d[from].iter().map(|&(i, c)| (i, c as i64)).collect();
            merged.extend(to);
            d[from] = sparse(modulus, &merged);
        }
        let mut prods: BTreeMap<(usize, usize), Vec<(usize, u64)>> = BTreeMap::new();
        for ((l, r), to) in products {
            check(l)?;
            check(r)?;
            for &(t, _) in &to {
                check(t)?;
            }
            let mut merged: Vec<(usize, i64)> = prods
                .get(&(l, r))
                .map(|v| v.iter().map(|&(i, c)| (i, c as i64)).collect())
                .unwrap_or_default();
            merged.extend(to);
            let v = sparse(modulus, &merged);
            if v.is_empty() {
                prods.remove(&(l, r));
            } else {
                prods.insert((l, r), v);
            }
        }
        Ok(ChainAlgebra {
            modulus,
            truncation,
            r_max,
            basis,
            unit,
            differential: d,
            products: prods,
            names,
        })
    }

    /// The ground ring concentrated in bidegree (0, 0).
    pub fn ground(modulus: Modulus, truncation: u32, r_max: u32) -> Self {
        let one = BasisElement {
            name: "1".into(),
            r: 0,
            s: 0,
            order: modulus.value(),
        };
        ChainAlgebra::new(modulus, truncation, r_max, vec![one], 0, vec![], vec![((0, 0), vec![(0, 1)])])
            .expect("ground ring is well formed")
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn r_max(&self) -> u32 {
        self.r_max
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    pub fn differential_of(&self, i: usize) -> &[(usize, u64)] {
        &self.differential[i]
    }

    pub fn product_of(&self, i: usize, j: usize) -> &[(usize, u64)] {
        self.products.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn nonzero_products(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, u64)>)> {
        self.products.iter()
    }

    /// Basis indices of bidegree (r, s), in basis order.
    pub fn indices(&self, r: i64, s: i64) -> Vec<usize> {
        if r < 0 || s < 0 {
            return Vec::new();
        }
        (0..self.basis.len())
            .filter(|&i| self.basis[i].r as i64 == r && self.basis[i].s as i64 == s)
            .collect()
    }

    pub fn orders_of(&self, idx: &[usize]) -> Vec<u64> {
        idx.iter().map(|&i| self.basis[i].order).collect()
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.basis.len()]
    }

    pub fn one(&self) -> Elem {
        self.gen(self.unit)
    }

    pub fn gen(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    /// Reduces every coordinate modulo the order of its basis element.
    pub fn normalize(&self, a: &mut Elem) {
        for (x, b) in a.iter_mut().zip(&self.basis) {
            *x %= b.order;
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().zip(&self.basis).all(|(&x, b)| x % b.order == 0)
    }

    pub fn eq(&self, a: &Elem, b: &Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let md = self.modulus;
        let mut out: Elem = a.iter().zip(b).map(|(&x, &y)| md.add(x, y)).collect();
        self.normalize(&mut out);
        out
    }

    pub fn add_assign(&self, a: &mut Elem, b: &Elem) {
        let md = self.modulus;
        for ((x, &y), e) in a.iter_mut().zip(b).zip(&self.basis) {
            *x = md.add(*x, y) % e.order;
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let md = self.modulus;
        let mut out: Elem = a.iter().zip(b).map(|(&x, &y)| md.sub(x, y)).collect();
        self.normalize(&mut out);
        out
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let md = self.modulus;
        let mut out: Elem = a.iter().map(|&x| md.neg(x)).collect();
        self.normalize(&mut out);
        out
    }

    pub fn scale(&self, a: &Elem, c: u64) -> Elem {
        let md = self.modulus;
        let mut out: Elem = a.iter().map(|&x| md.mul(x, c)).collect();
        self.normalize(&mut out);
        out
    }

    pub fn scale_i64(&self, a: &Elem, c: i64) -> Elem {
        self.scale(a, self.modulus.from_i64(c))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let md = self.modulus;
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = md.mul(x, y);
                for &(k, v) in self.product_of(i, j) {
                    out[k] = md.add(out[k], md.mul(c, v));
                }
            }
        }
        self.normalize(&mut out);
        out
    }

    pub fn d(&self, a: &Elem) -> Elem {
        let md = self.modulus;
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(k, v) in &self.differential[i] {
                out[k] = md.add(out[k], md.mul(x, v));
            }
        }
        self.normalize(&mut out);
        out
    }

    /// Whether every nonzero coordinate has bidegree (r, s).
    pub fn is_homogeneous(&self, a: &Elem, r: i64, s: i64) -> bool {
        a.iter().zip(&self.basis).all(|(&x, b)| {
            x % b.order == 0 || (b.r as i64 == r && b.s as i64 == s)
        })
    }

    /// Coordinates of `a` restricted to the given basis indices.
    pub fn coords(&self, a: &Elem, idx: &[usize]) -> Vec<u64> {
        idx.iter().map(|&i| a[i]).collect()
    }

    pub fn from_coords(&self, idx: &[usize], coords: &[u64]) -> Elem {
        let mut e = self.zero();
        for (&i, &c) in idx.iter().zip(coords) {
            e[i] = c;
        }
        self.normalize(&mut e);
        e
    }

    /// Human-readable form such as `2*ab + bc - a`; coefficients above m/2 are
    /// printed as negatives.
    pub fn format(&self, a: &Elem) -> String {
        let m = self.modulus.value();
        let mut out = String::new();
        for (i, &x) in a.iter().enumerate() {
            let x = x % self.basis[i].order;
            if x == 0 {
                continue;
            }
            let (neg, mag) = if m > 2 && x > m / 2 { (true, m - x) } else { (false, x) };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != 1 {
                let _ = write!(out, "{mag}*");
            }
            out.push_str(&self.basis[i].name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses `2*ab + bc - a`, `-x`, `0` or a bare integer (a multiple of the unit).
    pub fn parse_elem(&self, text: &str) -> Result<Elem, AlgebraError> {
        let md = self.modulus;
        let mut out = self.zero();
        let t = text.trim();
        if t.is_empty() {
            return Err(AlgebraError::Parse(format!("empty expression {text:?}")));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for ch in t.chars() {
            if (ch == '+' || ch == '-') && !current.trim().is_empty() {
                terms.push((negative, current.trim().to_string()));
                current.clear();
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && current.trim().is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
        }
        if current.trim().is_empty() {
            return Err(AlgebraError::Parse(format!("dangling sign in {text:?}")));
        }
        terms.push((negative, current.trim().to_string()));
        for (neg, term) in terms {
            let (coeff, name) = match term.split_once('*') {
                Some((c, n)) => {
                    let c: i64 = c
                        .trim()
                        .parse()
                        .map_err(|_| AlgebraError::Parse(format!("bad coefficient in {term:?}")))?;
                    (c, Some(n.trim().to_string()))
                }
                None => match term.parse::<i64>() {
                    Ok(c) => (c, None),
                    Err(_) => (1, Some(term.clone())),
                },
            };
            let idx = match name {
                None => self.unit,
                Some(n) => self
                    .index_of(&n)
                    .ok_or_else(|| AlgebraError::UnknownGenerator(n.clone()))?,
            };
            let c = if neg { -coeff } else { coeff };
            out[idx] = md.add(out[idx], md.from_i64(c));
        }
        self.normalize(&mut out);
        Ok(out)
    }

    /// Largest upper degree a product of two basis elements would need; used to
    /// flag products that fall outside the window.
    pub fn truncated_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                let (a, b) = (&self.basis[i], &self.basis[j]);
                if a.r + b.r > self.r_max && a.s + b.s <= self.truncation && i != self.unit && j != self.unit {
                    out.push((i, j));
                }
            }
        }
        out
    }
}
