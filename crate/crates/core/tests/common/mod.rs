//! Shared builders for the integration tests.
#![allow(dead_code)]

use rand::Rng;
use toda_core::algebra::module::entry_degree;
use toda_core::algebra::{massey_quiver, random_quiver, Block, ChainAlgebra, Elem, GradedModule, RandomQuiverParams};
use toda_core::linalg::Modulus;
use toda_core::toda::MorphismSequence;
use toda_core::track::Kq;

pub fn md(m: u64) -> Modulus {
    Modulus::new(m).unwrap()
}

/// The four-vertex Massey algebra over Z/2, truncated at 1.
pub fn qm() -> Kq {
    Kq::new(massey_quiver().algebra(md(2), 1, 3).unwrap()).unwrap()
}

/// A random path algebra with at most six letters.
pub fn random_kq<R: Rng>(rng: &mut R, truncation: u32, moduli: &[u64]) -> Kq {
    let m = moduli[rng.gen_range(0..moduli.len())];
    let params = RandomQuiverParams {
        vertices: rng.gen_range(4..=5),
        extra_arrows: rng.gen_range(0..=2),
        max_letters: 6,
    };
    let quiver = random_quiver(rng, md(m), &params);
    Kq::new(quiver.algebra(md(m), truncation, 4).unwrap()).unwrap()
}

/// A uniformly random element of `Q_{r,s}`.
pub fn random_elem<R: Rng>(q: &ChainAlgebra, r: i64, s: i64, rng: &mut R) -> Elem {
    let idx = q.indices(r, s);
    let coords: Vec<u64> = q.orders_of(&idx).into_iter().map(|o| rng.gen_range(0..o)).collect();
    q.from_coords(&idx, &coords)
}

/// A random map of degree 0 over the point: entries in `Q_0`, hence cycles.
pub fn random_block<R: Rng>(q: &ChainAlgebra, source: &GradedModule, target: &GradedModule, rng: &mut R) -> Block {
    (0..source.rank())
        .map(|i| {
            (0..target.rank())
                .map(|j| random_elem(q, entry_degree(source, target, i, j), 0, rng))
                .collect()
        })
        .collect()
}

/// A module of rank one or two, all generators in degree `r`.
pub fn random_module<R: Rng>(name: &str, r: u32, rng: &mut R) -> GradedModule {
    let rank = if rng.gen_bool(0.25) { 2 } else { 1 };
    GradedModule::new(name, &vec![r; rank])
}

/// `X_0 ← X_1 ← … ← X_len` with `X_i` in degree `i` and random maps.
pub fn random_sequence<R: Rng>(kq: &Kq, len: usize, rng: &mut R) -> MorphismSequence {
    let q = kq.algebra();
    let modules: Vec<GradedModule> = (0..=len).map(|i| random_module(&format!("X{i}"), i as u32, rng)).collect();
    let maps = (1..=len).map(|i| random_block(q, &modules[i], &modules[i - 1], rng)).collect();
    MorphismSequence::new(kq, modules, maps).unwrap()
}

/// Rank-one modules in degrees `0, 1, …` and maps given as expressions.
pub fn chain(kq: &Kq, maps: &[&str]) -> MorphismSequence {
    let modules = (0..=maps.len()).map(|i| GradedModule::new(format!("X{i}"), &[i as u32])).collect();
    let blocks = maps
        .iter()
        .map(|m| vec![vec![kq.algebra().parse_elem(m).unwrap()]])
        .collect();
    MorphismSequence::new(kq, modules, blocks).unwrap()
}
