//! JSON documents for algebras and morphism sequences.

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::algebra::{BasisElement, Block, ChainAlgebra, Elem, Generator, GradedModule};
use crate::linalg::Modulus;
use crate::toda::MorphismSequence;
use crate::track::Kq;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub gen: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub name: String,
    pub r: u32,
    pub s: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialDoc {
    pub from: String,
    pub to: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    pub left: String,
    pub right: String,
    pub to: Vec<TermDoc>,
}

/// A chain algebra by structure constants; omitted constants are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct AlgebraDoc {
    pub modulus: u64,
    pub truncation: u32,
    pub r_max: u32,
    pub basis: Vec<BasisDoc>,
    pub unit: String,
    #[serde(default)]
    pub differential: Vec<DifferentialDoc>,
    #[serde(default)]
    pub products: Vec<ProductDoc>,
}

/// A matrix entry: a Q₀-cycle, either as an expression or as a term list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Expr(String),
    Terms(Vec<TermDoc>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    /// Target generator.
    pub row: usize,
    /// Source generator.
    pub col: usize,
    pub value: ValueDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub entries: Vec<EntryDoc>,
}

/// `β : module → X_target`, for Adams differentials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaDoc {
    pub module: GradedModule,
    pub target: usize,
    #[serde(default)]
    pub entries: Vec<EntryDoc>,
}

/// `modules[0] = X_0`; `maps[i]` is `f_{i+1} : X_{i+1} → X_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDoc {
    pub modules: Vec<GradedModule>,
    pub maps: Vec<MapDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<BetaDoc>,
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn schema(path: String, message: impl Into<String>) -> IoError {
    IoError::Schema {
        path,
        message: message.into(),
    }
}

impl AlgebraDoc {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        from_json(text)
    }

    /// The algebra, not yet checked against the axioms.
    pub fn build(&self) -> Result<ChainAlgebra, IoError> {
        let md = Modulus::new(self.modulus).map_err(|e| schema("modulus".into(), e.to_string()))?;
        let basis: Vec<BasisElement> = self
            .basis
            .iter()
            .map(|b| BasisElement {
                name: b.name.clone(),
                r: b.r,
                s: b.s,
                order: b.order.unwrap_or(self.modulus),
            })
            .collect();
        let index = |name: &str, path: String| {
            self.basis
                .iter()
                .position(|b| b.name == name)
                .ok_or_else(|| schema(path, format!("unknown generator {name:?}")))
        };
        let terms = |ts: &[TermDoc], path: &str| {
            ts.iter()
                .enumerate()
                .map(|(k, t)| Ok((index(&t.gen, format!("{path}.to[{k}].gen"))?, t.coeff)))
                .collect::<Result<Vec<_>, IoError>>()
        };
        let unit = index(&self.unit, "unit".into())?;
        let differential = self
            .differential
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let path = format!("differential[{k}]");
                Ok((index(&d.from, format!("{path}.from"))?, terms(&d.to, &path)?))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        let mut products = self
            .products
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let path = format!("products[{k}]");
                let l = index(&p.left, format!("{path}.left"))?;
                let r = index(&p.right, format!("{path}.right"))?;
                Ok(((l, r), terms(&p.to, &path)?))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        // products with the unit are implicit unless stated
        let stated: std::collections::BTreeSet<(usize, usize)> = products.iter().map(|p| p.0).collect();
        for g in 0..basis.len() {
            for pair in [(unit, g), (g, unit)] {
                if !stated.contains(&pair) {
                    products.push((pair, vec![(g, 1)]));
                }
            }
        }
        products.dedup();
        Ok(ChainAlgebra::new(md, self.truncation, self.r_max, basis, unit, differential, products)?)
    }

    /// Canonical document of an algebra: basis order preserved, structure
    /// constants sorted, zero constants and default orders omitted.
    pub fn from_algebra(q: &ChainAlgebra) -> Self {
        let m = q.modulus().value();
        let name = |i: usize| q.basis()[i].name.clone();
        let signed = |c: u64| if m > 2 && c > m / 2 { c as i64 - m as i64 } else { c as i64 };
        let terms = |v: &[(usize, u64)]| {
            v.iter()
                .map(|&(i, c)| TermDoc {
                    gen: name(i),
                    coeff: signed(c),
                })
                .collect()
        };
        AlgebraDoc {
            modulus: m,
            truncation: q.truncation(),
            r_max: q.r_max(),
            basis: q
                .basis()
                .iter()
                .map(|b| BasisDoc {
                    name: b.name.clone(),
                    r: b.r,
                    s: b.s,
                    order: (b.order != m).then_some(b.order),
                })
                .collect(),
            unit: name(q.unit_index()),
            differential: (0..q.dim())
                .filter(|&i| !q.differential_of(i).is_empty())
                .map(|i| DifferentialDoc {
                    from: name(i),
                    to: terms(q.differential_of(i)),
                })
                .collect(),
            products: q
                .nonzero_products()
                .filter(|((l, r), v)| {
                    let u = q.unit_index();
                    let other = if *l == u { Some(*r) } else if *r == u { Some(*l) } else { None };
                    other.is_none_or(|g| v.as_slice() != [(g, 1)])
                })
                .map(|(&(l, r), v)| ProductDoc {
                    left: name(l),
                    right: name(r),
                    to: terms(v),
                })
                .collect(),
        }
    }
}

/// Parses an algebra document; axioms are not checked.
pub fn parse_algebra(text: &str) -> Result<ChainAlgebra, IoError> {
    AlgebraDoc::parse(text)?.build()
}

fn value(q: &ChainAlgebra, v: &ValueDoc, path: &str) -> Result<Elem, IoError> {
    match v {
        ValueDoc::Expr(text) => q.parse_elem(text).map_err(|e| schema(path.into(), e.to_string())),
        ValueDoc::Terms(ts) => {
            let md = q.modulus();
            let mut out = q.zero();
            for t in ts {
                let i = q
                    .index_of(&t.gen)
                    .ok_or_else(|| schema(path.into(), format!("unknown generator {:?}", t.gen)))?;
                out[i] = md.add(out[i], md.from_i64(t.coeff));
            }
            q.normalize(&mut out);
            Ok(out)
        }
    }
}

fn block(q: &ChainAlgebra, source: &GradedModule, target: &GradedModule, entries: &[EntryDoc], path: &str) -> Result<Block, IoError> {
    let mut b: Block = vec![vec![q.zero(); target.rank()]; source.rank()];
    for (k, e) in entries.iter().enumerate() {
        let p = format!("{path}.entries[{k}]");
        if e.row >= target.rank() || e.col >= source.rank() {
            return Err(schema(p, format!("entry ({}, {}) is outside the matrix", e.row, e.col)));
        }
        b[e.col][e.row] = value(q, &e.value, &p)?;
    }
    Ok(b)
}

/// A parsed sequence document, with optional β data.
#[derive(Clone, Debug)]
pub struct ParsedSequence {
    pub sequence: MorphismSequence,
    pub beta: Option<(usize, GradedModule, Block)>,
}

impl SequenceDoc {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        from_json(text)
    }

    pub fn build(&self, kq: &Kq) -> Result<ParsedSequence, IoError> {
        let q = kq.algebra();
        if self.modules.len() != self.maps.len() + 1 {
            return Err(schema(
                "maps".into(),
                format!("{} modules need {} maps", self.modules.len(), self.modules.len().saturating_sub(1)),
            ));
        }
        let mut blocks = Vec::new();
        for (k, m) in self.maps.iter().enumerate() {
            let path = format!("maps[{k}]");
            let (src, tgt) = (&self.modules[k + 1], &self.modules[k]);
            if m.from != src.name || m.to != tgt.name {
                return Err(schema(
                    path,
                    format!("expected a map {} -> {}, found {} -> {}", src.name, tgt.name, m.from, m.to),
                ));
            }
            blocks.push(block(q, src, tgt, &m.entries, &path)?);
        }
        let sequence = MorphismSequence::new(kq, self.modules.clone(), blocks)?;
        let beta = match &self.beta {
            None => None,
            Some(b) => {
                if b.target >= self.modules.len() {
                    return Err(schema("beta.target".into(), "no such module"));
                }
                let bl = block(q, &b.module, &self.modules[b.target], &b.entries, "beta")?;
                Some((b.target, b.module.clone(), bl))
            }
        };
        Ok(ParsedSequence { sequence, beta })
    }
}

pub fn parse_sequence(kq: &Kq, text: &str) -> Result<ParsedSequence, IoError> {
    SequenceDoc::parse(text)?.build(kq)
}

/// Generators keep their names when serialized.
pub fn module_doc(name: &str, generators: &[(&str, u32)]) -> GradedModule {
    GradedModule {
        name: name.into(),
        generators: generators
            .iter()
            .map(|&(n, r)| Generator { name: n.into(), r })
            .collect(),
    }
}
