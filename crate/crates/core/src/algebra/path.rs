//! Chain algebras generated by a quiver with relations.
//!
//! Arrows have bidegree (1, 0). Each relation ρ (a combination of parallel
//! arrow paths of equal length ℓ) contributes a letter x of bidegree (ℓ, 1)
//! with `dx = ρ`. The basis consists of the unit and all composable words in
//! the letters; non-composable products vanish. Truncating the free algebra at
//! level n gives an n-truncated chain algebra.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{truncate, AlgebraError, BasisElement, ChainAlgebra};
use crate::linalg::Modulus;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    /// Terms `(coefficient, arrow indices)` of ρ.
    pub terms: Vec<(i64, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug)]
struct Letter {
    name: String,
    from: usize,
    to: usize,
    r: u32,
    s: u32,
}

impl Quiver {
    fn letters(&self) -> Result<Vec<Letter>, AlgebraError> {
        let mut out: Vec<Letter> = self
            .arrows
            .iter()
            .map(|a| Letter {
                name: a.name.clone(),
                from: a.from,
                to: a.to,
                r: 1,
                s: 0,
            })
            .collect();
        for rel in &self.relations {
            let (_, first) = rel
                .terms
                .first()
                .ok_or_else(|| AlgebraError::Parse(format!("relation {} is empty", rel.name)))?;
            let ends = |p: &[usize]| -> Result<(usize, usize), AlgebraError> {
                let mut at = None;
                for w in p.windows(2) {
                    if self.arrows[w[0]].to != self.arrows[w[1]].from {
                        return Err(AlgebraError::Parse(format!("relation {} has a broken path", rel.name)));
                    }
                }
                if let (Some(f), Some(l)) = (p.first(), p.last()) {
                    at = Some((self.arrows[*f].from, self.arrows[*l].to));
                }
                at.ok_or_else(|| AlgebraError::Parse(format!("relation {} has an empty path", rel.name)))
            };
            let (from, to) = ends(first)?;
            for (_, p) in &rel.terms {
                if ends(p)? != (from, to) || p.len() != first.len() {
                    return Err(AlgebraError::Parse(format!("relation {} is not homogeneous", rel.name)));
                }
            }
            out.push(Letter {
                name: rel.name.clone(),
                from,
                to,
                r: first.len() as u32,
                s: 1,
            });
        }
        Ok(out)
    }

    /// The n-truncated chain algebra of this quiver over Z/m.
    pub fn algebra(&self, modulus: Modulus, truncation: u32, r_max: u32) -> Result<ChainAlgebra, AlgebraError> {
        let letters = self.letters()?;
        let raw_level = truncation + 1;
        // all composable words within the window, breadth first
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..letters.len()).map(|i| vec![i]).collect();
        let weight = |w: &[usize]| -> (u32, u32) {
            w.iter().fold((0, 0), |(r, s), &l| (r + letters[l].r, s + letters[l].s))
        };
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in frontier {
                let (r, s) = weight(&w);
                if r > r_max || s > raw_level {
                    continue;
                }
                let end = letters[*w.last().unwrap()].to;
                for (l, letter) in letters.iter().enumerate() {
                    if letter.from == end {
                        let mut v = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
                words.push(w);
            }
            frontier = next;
        }
        words.sort_by_key(|w| {
            let (r, s) = weight(w);
            (s, r, w.clone())
        });
        let mut basis = vec![BasisElement {
            name: "1".into(),
            r: 0,
            s: 0,
            order: modulus.value(),
        }];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for w in &words {
            let (r, s) = weight(w);
            let name: String = w.iter().map(|&l| letters[l].name.as_str()).collect();
            index.insert(w.clone(), basis.len());
            basis.push(BasisElement {
                name,
                r,
                s,
                order: modulus.value(),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        for b in &basis {
            if !seen.insert(b.name.clone()) {
                return Err(AlgebraError::DuplicateName(b.name.clone()));
            }
        }

        // d of a letter as a combination of words
        let letter_d = |l: usize| -> Vec<(i64, Vec<usize>)> {
            if letters[l].s == 0 {
                return Vec::new();
            }
            let rel = &self.relations[l - self.arrows.len()];
            rel.terms.clone()
        };
        let mut differential = Vec::new();
        for w in &words {
            let mut terms = Vec::new();
            let mut prefix_s = 0;
            for (pos, &l) in w.iter().enumerate() {
                let sign = if prefix_s % 2 == 0 { 1 } else { -1 };
                for (c, path) in letter_d(l) {
                    let mut v = w[..pos].to_vec();
                    v.extend(path);
                    v.extend_from_slice(&w[pos + 1..]);
                    if let Some(&t) = index.get(&v) {
                        terms.push((t, sign * c));
                    }
                }
                prefix_s += letters[l].s;
            }
            differential.push((index[w], terms));
        }
        let mut products = vec![((0, 0), vec![(0, 1)])];
        for w in &words {
            let i = index[w];
            products.push(((0, i), vec![(i, 1)]));
            products.push(((i, 0), vec![(i, 1)]));
            for v in &words {
                if letters[*w.last().unwrap()].to != letters[v[0]].from {
                    continue;
                }
                let mut u = w.clone();
                u.extend_from_slice(v);
                if let Some(&t) = index.get(&u) {
                    products.push(((i, index[v]), vec![(t, 1)]));
                }
            }
        }
        let raw = ChainAlgebra::new(modulus, raw_level, r_max, basis, 0, differential, products)?;
        truncate(&raw, truncation)
    }
}

/// The quiver `0 →a 1 →b 2 →c 3` with relation letters `dx = ab`, `dy = bc`.
pub fn massey_quiver() -> Quiver {
    let arrow = |name: &str, from, to| Arrow {
        name: name.into(),
        from,
        to,
    };
    Quiver {
        vertices: 4,
        arrows: vec![arrow("a", 0, 1), arrow("b", 1, 2), arrow("c", 2, 3)],
        relations: vec![
            Relation {
                name: "x".into(),
                terms: vec![(1, vec![0, 1])],
            },
            Relation {
                name: "y".into(),
                terms: vec![(1, vec![1, 2])],
            },
        ],
    }
}

/// Knobs for [`random_quiver`].
#[derive(Clone, Debug)]
pub struct RandomQuiverParams {
    pub vertices: usize,
    pub extra_arrows: usize,
    pub max_letters: usize,
}

impl Default for RandomQuiverParams {
    fn default() -> Self {
        RandomQuiverParams {
            vertices: 4,
            extra_arrows: 1,
            max_letters: 6,
        }
    }
}

/// A random acyclic quiver containing the path `0 → 1 → 2 → 3` (arrows
/// `a, b, c`), random relations on length-2 paths with unit coefficients, and
/// at most `max_letters` letters in total.
pub fn random_quiver<R: Rng>(rng: &mut R, modulus: Modulus, params: &RandomQuiverParams) -> Quiver {
    let names = ["a", "b", "c", "e", "f", "g", "h"];
    let rel_names = ["x", "y", "z", "u", "v", "w"];
    let v = params.vertices.max(4);
    let mut arrows = vec![
        Arrow { name: "a".into(), from: 0, to: 1 },
        Arrow { name: "b".into(), from: 1, to: 2 },
        Arrow { name: "c".into(), from: 2, to: 3 },
    ];
    let budget = params.max_letters.max(3);
    for _ in 0..params.extra_arrows {
        if arrows.len() + 1 > budget.saturating_sub(1) || arrows.len() >= names.len() {
            break;
        }
        let from = rng.gen_range(0..v - 1);
        let to = rng.gen_range(from + 1..v);
        let name = names[arrows.len()].to_string();
        arrows.push(Arrow { name, from, to });
    }
    let unit = |rng: &mut R| -> i64 {
        loop {
            let c = rng.gen_range(1..modulus.value()) as i64;
            if modulus.is_unit(c as u64) {
                return c;
            }
        }
    };
    let mut relations = Vec::new();
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for (i, a) in arrows.iter().enumerate() {
        for (j, b) in arrows.iter().enumerate() {
            if a.to == b.from {
                paths.push(vec![i, j]);
            }
        }
    }
    while arrows.len() + relations.len() < budget && !paths.is_empty() {
        if relations.len() >= 2 && rng.gen_bool(0.4) {
            break;
        }
        let p = paths[rng.gen_range(0..paths.len())].clone();
        let mut terms = vec![(unit(rng), p.clone())];
        // occasionally add a parallel path
        let parallel: Vec<&Vec<usize>> = paths
            .iter()
            .filter(|q| **q != p && arrows[q[0]].from == arrows[p[0]].from && arrows[q[1]].to == arrows[p[1]].to)
            .collect();
        if !parallel.is_empty() && rng.gen_bool(0.5) {
            terms.push((unit(rng), parallel[0].clone()));
        }
        relations.push(Relation {
            name: rel_names[relations.len()].to_string(),
            terms,
        });
    }
    Quiver {
        vertices: v,
        arrows,
        relations,
    }
}
