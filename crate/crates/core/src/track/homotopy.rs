//! Homotopies rel a subcomplex, stored as morphisms over relative cylinders,
//! and the action of homotopies on faces.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::extend::{extend, extend_chain_map, ExtendOutcome};
use super::{Kq, Morphism, TrackError};
use crate::algebra::module::{add_blocks, scale_block};
use crate::algebra::Block;
use crate::cubical::{orientation_sign, Cell, CellComplex, Coord, CubicalComplex, CylinderMaps, Orientation};

/// `H : f ≃ g rel A`: a morphism over the cylinder `J_A B` whose ends `0 × B`
/// and `1 × B` restrict to `f` and `g`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    base: Arc<CellComplex>,
    rel: BTreeSet<usize>,
    morphism: Morphism,
}

impl Homotopy {
    /// Wraps a morphism over `base.cylinder(rel)`.
    pub fn new(kq: &Kq, base: Arc<CellComplex>, rel: BTreeSet<usize>, morphism: Morphism) -> Result<Self, TrackError> {
        let cyl = base.cylinder(&rel)?;
        if cyl.cells() != morphism.complex().cells() {
            return Err(TrackError::ComplexMismatch);
        }
        morphism.check(kq)?;
        Ok(Homotopy { base, rel, morphism })
    }

    pub fn base(&self) -> &Arc<CellComplex> {
        &self.base
    }

    pub fn rel(&self) -> &BTreeSet<usize> {
        &self.rel
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn cylinder(&self) -> &Arc<CellComplex> {
        self.morphism.complex()
    }

    pub fn maps(&self) -> CylinderMaps {
        CylinderMaps::new(&self.base, self.cylinder()).expect("cylinder over its own base")
    }

    /// The end `∂⁻H = f`.
    pub fn bottom(&self, kq: &Kq) -> Morphism {
        self.morphism
            .pullback(kq, &self.maps().i_minus, self.base.clone())
            .expect("face inclusion matches")
    }

    /// The end `∂⁺H = g`.
    pub fn top(&self, kq: &Kq) -> Morphism {
        self.morphism
            .pullback(kq, &self.maps().i_plus, self.base.clone())
            .expect("face inclusion matches")
    }

    /// The value on the cylinder cell `* × y`, or `None` when `y` lies in the
    /// relative part.
    pub fn track_value(&self, y: &Cell) -> Option<&Block> {
        let c = y.prefixed(Coord::Star);
        self.cylinder().index_of(&c).map(|i| self.morphism.value(i))
    }
}

fn same_blocks(kq: &Kq, a: &Block, b: &Block) -> bool {
    let q = kq.algebra();
    a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| q.eq(x, y))
}

/// The affine space of all homotopies `f ≃ g rel A`, or the obstacle.
pub fn homotopy_space(
    kq: &Kq,
    f: &Morphism,
    g: &Morphism,
    rel: &BTreeSet<usize>,
) -> Result<(Arc<CellComplex>, ExtendOutcome), TrackError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(TrackError::ModuleMismatch);
    }
    let base = f.complex();
    if base.cells() != g.complex().cells() {
        return Err(TrackError::ComplexMismatch);
    }
    for &a in rel {
        if !same_blocks(kq, f.value(a), g.value(a)) {
            return Err(TrackError::GlueMismatch {
                cell: base.cell(a).to_string(),
            });
        }
    }
    let cyl = Arc::new(base.cylinder(rel)?);
    let mut prescribed = BTreeMap::new();
    for (y, cell) in base.cells().iter().enumerate() {
        if let Some(i) = cyl.project_index(&cell.prefixed(Coord::Zero)) {
            prescribed.insert(i, f.value(y).clone());
        }
        if !rel.contains(&y) {
            if let Some(i) = cyl.project_index(&cell.prefixed(Coord::One)) {
                prescribed.insert(i, g.value(y).clone());
            }
        }
    }
    let outcome = extend(kq, cyl.clone(), f.source(), f.target(), &prescribed)?;
    Ok((cyl, outcome))
}

/// A homotopy `f ≃ g rel A` if one exists.
pub fn homotopic(kq: &Kq, f: &Morphism, g: &Morphism, rel: &BTreeSet<usize>) -> Result<Option<Homotopy>, TrackError> {
    let (_, outcome) = homotopy_space(kq, f, g, rel)?;
    Ok(outcome.solved().map(|e| Homotopy {
        base: f.complex().clone(),
        rel: rel.clone(),
        morphism: e.into_morphism(),
    }))
}

/// The constant homotopy `ε(f) = f ∘ ε′ : f ≃ f rel A`.
pub fn constant(kq: &Kq, f: &Morphism, rel: &BTreeSet<usize>) -> Result<Homotopy, TrackError> {
    let base = f.complex().clone();
    let cyl = Arc::new(base.cylinder(rel)?);
    let maps = CylinderMaps::new(&base, &cyl)?;
    let morphism = f.pullback(kq, &maps.epsilon, cyl)?;
    Ok(Homotopy {
        base,
        rel: rel.clone(),
        morphism,
    })
}

/// `op(H) : g ≃ f` for `H : f ≃ g`.
pub fn opposite(kq: &Kq, h: &Homotopy) -> Result<Homotopy, TrackError> {
    let morphism = h.morphism.pullback(kq, &h.maps().opposite, h.cylinder().clone())?;
    Ok(Homotopy {
        base: h.base.clone(),
        rel: h.rel.clone(),
        morphism,
    })
}

/// `G □ H : f ≃ k` for `H : f ≃ g` and `G : g ≃ k`, by gluing both onto the
/// long cylinder and pulling back along a solved chain map `J_A B → J_A B ∪ J_A B`.
pub fn paste(kq: &Kq, g: &Homotopy, h: &Homotopy) -> Result<Homotopy, TrackError> {
    if g.base.cells() != h.base.cells() || g.rel != h.rel {
        return Err(TrackError::ComplexMismatch);
    }
    if !h.top(kq).same_as(kq, &g.bottom(kq)) {
        return Err(TrackError::GlueMismatch {
            cell: "the middle end".into(),
        });
    }
    let base = &h.base;
    let long = Arc::new(base.long_cylinder(&h.rel)?);
    let mut values = Vec::with_capacity(long.len());
    for c in long.cells() {
        let (p, y) = c.split_at(2);
        let (from, t) = match (p.coord(0), p.coord(1)) {
            (Coord::Zero, Coord::Zero) => (h, Coord::Zero),
            (Coord::One, Coord::Zero) => (h, Coord::One),
            (Coord::One, Coord::One) => (g, Coord::One),
            (Coord::Star, Coord::Zero) => (h, Coord::Star),
            (Coord::One, Coord::Star) => (g, Coord::Star),
            _ => return Err(TrackError::Shape(format!("unexpected cell {c}"))),
        };
        let v = from
            .morphism
            .value_at(&y.prefixed(t))
            .ok_or_else(|| TrackError::Shape(format!("no value for {c}")))?;
        values.push(v.clone());
    }
    let glued = Morphism::from_values(long.clone(), h.morphism.source().clone(), h.morphism.target().clone(), values)?;
    let cyl = h.cylinder();
    let mut given = BTreeMap::new();
    for (i, c) in cyl.cells().iter().enumerate() {
        let (t, y) = c.split_at(1);
        let image = match t.coord(0) {
            Coord::Zero => Cell::new(vec![Coord::Zero, Coord::Zero]).product(&y),
            Coord::One => Cell::new(vec![Coord::One, Coord::One]).product(&y),
            Coord::Star => continue,
        };
        let img = long.project_index(&image).map(|k| vec![(k, 1)]).unwrap_or_default();
        given.insert(i, img);
    }
    let square = extend_chain_map(cyl, &long, &given, kq.algebra().modulus())?;
    let morphism = glued.pullback(kq, &square, cyl.clone())?;
    Ok(Homotopy {
        base: base.clone(),
        rel: h.rel.clone(),
        morphism,
    })
}

fn full_cube(f: &Morphism) -> Result<usize, TrackError> {
    let x = f.complex();
    let n = x.ambient_dim();
    if !x.is_plain() || *x.ambient() != CubicalComplex::cube(n) {
        return Err(TrackError::Shape("expected a morphism over a full cube".into()));
    }
    Ok(n)
}

/// `F □_A α`: glue the homotopy `α : F|A ≃ g rel ∂A` onto the facet `A` of
/// the cube under `F` and pull back along a solved chain map
/// `j̄ : I^k → I^k ∪_A J_{∂A}A` that is the identity away from `A`.
pub fn action(kq: &Kq, f: &Morphism, facet: &CubicalComplex, alpha: &Homotopy) -> Result<Morphism, TrackError> {
    let n = full_cube(f)?;
    let cube = CubicalComplex::cube(n);
    let a = Arc::new(CellComplex::from_cubical(facet));
    if alpha.base.cells() != a.cells() {
        return Err(TrackError::ComplexMismatch);
    }
    let rel_expected: BTreeSet<usize> = (0..a.len()).filter(|&i| a.dim_of(i) < a.dim()).collect();
    if alpha.rel != rel_expected {
        return Err(TrackError::Shape("the acting homotopy must be rel the boundary of the facet".into()));
    }
    if !alpha.bottom(kq).same_as(kq, &f.restrict(a.clone())?) {
        return Err(TrackError::GlueMismatch {
            cell: "the acted-on facet".into(),
        });
    }
    let attached = Arc::new(CellComplex::attach_cylinder(&cube, facet)?);
    let q = kq.algebra();
    let mut values = Vec::with_capacity(attached.len());
    for c in attached.cells() {
        let (t, y) = c.split_at(1);
        let v = match t.coord(0) {
            Coord::One => f.value_at(&y).cloned(),
            Coord::Zero => alpha.morphism.value_at(&y.prefixed(Coord::One)).cloned(),
            Coord::Star => alpha.track_value(&y).map(|b| scale_block(q, b, -1)),
        };
        values.push(v.ok_or_else(|| TrackError::Shape(format!("no value for {c}")))?);
    }
    let glued = Morphism::from_values(attached.clone(), f.source().clone(), f.target().clone(), values)?;
    glued.check(kq)?;

    let b = f.complex();
    let top = b.len() - 1;
    let mut given = BTreeMap::new();
    for (i, y) in b.cells().iter().enumerate() {
        if i == top {
            continue;
        }
        let image = if facet.contains(y) {
            y.prefixed(Coord::Zero)
        } else {
            y.prefixed(Coord::One)
        };
        let img = attached.project_index(&image).map(|k| vec![(k, 1)]).unwrap_or_default();
        given.insert(i, img);
    }
    let jbar = extend_chain_map(b, &attached, &given, q.modulus())?;
    glued.pullback(kq, &jbar, b.clone())
}

/// The oriented action of a class on the cube: `F □_o z = F □_A G` where
/// `G = ε(F|A) + o·ε(B,A)·z` on the track of the top cell of `A`. `z` is a
/// block of cycles of lower degree `dim B`.
pub fn act_class(
    kq: &Kq,
    f: &Morphism,
    facet: &CubicalComplex,
    z: &Block,
    orientation: Orientation,
) -> Result<Morphism, TrackError> {
    let n = full_cube(f)?;
    let sign = orientation_sign(&CubicalComplex::cube(n), facet)? * orientation.sign();
    let a = Arc::new(CellComplex::from_cubical(facet));
    let rel: BTreeSet<usize> = (0..a.len()).filter(|&i| a.dim_of(i) < a.dim()).collect();
    let mut g = constant(kq, &f.restrict(a.clone())?, &rel)?;
    let top_a = a.cells()[a.len() - 1].clone();
    let idx = g
        .cylinder()
        .index_of(&top_a.prefixed(Coord::Star))
        .expect("track of the facet's top cell");
    let q = kq.algebra();
    let v = add_blocks(q, g.morphism.value(idx), &scale_block(q, z, sign));
    g.morphism.set_value(idx, v);
    g.morphism.check(kq)?;
    action(kq, f, facet, &g)
}
