//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every criterion uses a fixed seed and a pinned time limit.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toda_core::algebra::module::{compose_blocks, entry_degree, zero_block};
use toda_core::algebra::{validate, Block, GradedModule, Violation};
use toda_core::cubical::{
    check_coalgebra, is_chain_map_on, is_coassociative_on, is_counital_on, restricts_to, Cell, CellComplex,
    CubicalComplex, Orientation,
};
use toda_core::io::{AlgebraDoc, BasisDoc, DifferentialDoc, ProductDoc, TermDoc};
use toda_core::oracle::EnumerationBudget;
use toda_core::toda::{
    adams_d, build_chain_complex, oracle_bracket_set, toda_bracket, triple_indeterminacy, BracketStatus,
    MorphismSequence, Tower,
};
use toda_core::track::{
    act_class, compose, extend, extend_chain_map, glue, glue_all, homotopic, homotopy_space, obstruction,
    random_extension, random_morphism, tensor, Kq, Morphism,
};

use common::{chain, qm, random_block, random_kq, random_sequence};

type Check = Result<String, String>;

fn run(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; too slow")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {id:>2}: {} {name} ({detail}; {:.3}s of {:.0}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    ok
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn cell(s: &str) -> Cell {
    s.parse().unwrap()
}

fn zeros_on(kq: &Kq, cells: impl IntoIterator<Item = usize>, s: &GradedModule, t: &GradedModule) -> BTreeMap<usize, Block> {
    cells.into_iter().map(|c| (c, zero_block(kq.algebra(), s, t))).collect()
}

/// A random block of homology representatives of level `k`.
fn random_cycle_block(kq: &Kq, k: u32, s: &GradedModule, t: &GradedModule, rng: &mut ChaCha8Rng) -> Block {
    let q = kq.algebra();
    let h = kq.homology(k).unwrap();
    (0..s.rank())
        .map(|i| {
            (0..t.rank())
                .map(|j| match h.group(entry_degree(s, t, i, j)) {
                    Some(g) => {
                        let coords: Vec<u64> = g.orders().into_iter().map(|o| rng.gen_range(0..o)).collect();
                        g.representative(q, &coords)
                    }
                    None => q.zero(),
                })
                .collect()
        })
        .collect()
}

// 1. Cubes: ∂² = 0 over Z and mod m; Δ̄ coassociative, counital, a chain map.
fn c1() -> Check {
    let mut cells = 0;
    for n in 0..=4 {
        let cube = CubicalComplex::cube(n);
        for c in cube.cells() {
            let mut dd: BTreeMap<Cell, i64> = BTreeMap::new();
            for (f, s) in c.boundary() {
                for (g, t) in f.boundary() {
                    *dd.entry(g).or_default() += s * t;
                }
            }
            ensure(dd.values().all(|&v| v == 0), || format!("∂² ≠ 0 on {c}"))?;
            ensure(is_coassociative_on(c), || format!("not coassociative on {c}"))?;
            ensure(is_counital_on(c), || format!("not counital on {c}"))?;
            ensure(is_chain_map_on(c), || format!("not a chain map on {c}"))?;
            cells += 1;
        }
        for m in [2, 4, 9] {
            for k in 1..n {
                let prod = cube
                    .boundary_matrix(k, common::md(m))
                    .mul(&cube.boundary_matrix(k + 1, common::md(m)))
                    .map_err(e2s)?;
                ensure(prod.is_zero(), || format!("∂_{k}∂_{} ≠ 0 mod {m} on I^{n}", k + 1))?;
            }
        }
        let mut subs = vec![CubicalComplex::cube_boundary(n)];
        if n >= 1 {
            subs.push(CubicalComplex::t_complex(n - 1));
            subs.push(CubicalComplex::t_op(n - 1));
            for i in 1..=n {
                subs.push(CubicalComplex::facet(n, i, false).map_err(e2s)?);
                subs.push(CubicalComplex::facet(n, i, true).map_err(e2s)?);
            }
        }
        for s in &subs {
            ensure(restricts_to(s), || format!("Δ̄ does not restrict to a subcomplex of I^{n}"))?;
            check_coalgebra(s).map_err(e2s)?;
        }
    }
    Ok(format!("{cells} cells of I^0..I^4"))
}

fn s(x: &str) -> String {
    x.to_string()
}

fn term(g: &str) -> TermDoc {
    TermDoc { gen: s(g), coeff: 1 }
}

fn drop_d(doc: &mut AlgebraDoc, g: &str) {
    doc.differential.retain(|d| d.from != g);
}

fn drop_p(doc: &mut AlgebraDoc, l: &str, r: &str) {
    doc.products.retain(|p| !(p.left == l && p.right == r));
}

fn set_p(doc: &mut AlgebraDoc, l: &str, r: &str, to: Vec<TermDoc>) {
    drop_p(doc, l, r);
    doc.products.push(ProductDoc { left: s(l), right: s(r), to });
}

fn basis_doc(name: &str, r: u32, s_: u32) -> BasisDoc {
    BasisDoc { name: s(name), r, s: s_, order: None }
}

// 2. Validation of the Massey algebra and ten broken variants.
fn c2() -> Check {
    let text = include_str!("../fixtures/q_m.json");
    let base = AlgebraDoc::parse(text).map_err(e2s)?;
    let report = validate(&base.build().map_err(e2s)?);
    ensure(report.is_valid(), || format!("Q_M rejected: {:?}", report.violations))?;

    type Mutation = Box<dyn Fn(&mut AlgebraDoc)>;
    let variants: Vec<(&str, Mutation, Violation)> = vec![
        ("d(ay) dropped", Box::new(move |d| drop_d(d, "ay")), Violation::Leibniz { left: s("a"), right: s("y") }),
        ("d(xc) dropped", Box::new(move |d| drop_d(d, "xc")), Violation::Leibniz { left: s("x"), right: s("c") }),
        (
            "a·bc dropped",
            Box::new(move |d| drop_p(d, "a", "bc")),
            Violation::Associativity { a: s("a"), b: s("b"), c: s("c") },
        ),
        (
            "ab·c dropped",
            Box::new(move |d| drop_p(d, "ab", "c")),
            Violation::Associativity { a: s("a"), b: s("b"), c: s("c") },
        ),
        (
            "dx = a",
            Box::new(move |d| {
                drop_d(d, "x");
                d.differential.push(DifferentialDoc { from: s("x"), to: vec![term("a")] });
            }),
            Violation::DifferentialDegree { generator: s("x") },
        ),
        (
            "a·b = abc",
            Box::new(move |d| set_p(d, "a", "b", vec![term("abc")])),
            Violation::ProductDegree { left: s("a"), right: s("b") },
        ),
        ("1·a = 0", Box::new(move |d| set_p(d, "1", "a", vec![])), Violation::LeftUnit { generator: s("a") }),
        ("a·1 = 0", Box::new(move |d| set_p(d, "a", "1", vec![])), Violation::RightUnit { generator: s("a") }),
        (
            "w above the truncation",
            Box::new(move |d| d.basis.push(basis_doc("w", 3, 2))),
            Violation::AboveTruncation { generator: s("w") },
        ),
        (
            "dw = x",
            Box::new(move |d| {
                d.truncation = 2;
                d.basis.push(basis_doc("w", 2, 2));
                d.differential.push(DifferentialDoc { from: s("w"), to: vec![term("x")] });
            }),
            Violation::DSquared { generator: s("w") },
        ),
    ];
    let count = variants.len();
    for (what, mutate, expected) in variants {
        let mut doc = base.clone();
        mutate(&mut doc);
        let q = doc.build().map_err(|e| format!("{what}: {e}"))?;
        let report = validate(&q);
        ensure(report.violations.contains(&expected), || {
            format!("{what}: expected {expected:?}, got {:?}", report.violations)
        })?;
    }
    Ok(format!("Q_M valid, {count} variants rejected with their witnesses"))
}

// 3. Associativity and unit laws of composition over pt, I¹, I², T¹.
fn c3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let complexes = [
        ("pt", CellComplex::point()),
        ("I1", CellComplex::cube(1)),
        ("I2", CellComplex::cube(2)),
        ("T1", CellComplex::from_cubical(&CubicalComplex::t_complex(1))),
    ];
    let mut triples = 0;
    for (name, x) in complexes {
        let x = Arc::new(x);
        for t in 0..25 {
            let kq = if t % 5 == 0 { qm() } else { random_kq(&mut rng, 1 + (t % 2) as u32, &[2, 3, 4, 9]) };
            let mods: Vec<GradedModule> = (0..4)
                .map(|i| common::random_module(&format!("M{i}"), rng.gen_range(0..=4), &mut rng))
                .collect();
            let f = random_morphism(&kq, x.clone(), &mods[0], &mods[1], &mut rng).map_err(e2s)?;
            let g = random_morphism(&kq, x.clone(), &mods[1], &mods[2], &mut rng).map_err(e2s)?;
            let h = random_morphism(&kq, x.clone(), &mods[2], &mods[3], &mut rng).map_err(e2s)?;
            let left = compose(&kq, &compose(&kq, &h, &g).map_err(e2s)?, &f).map_err(e2s)?;
            let right = compose(&kq, &h, &compose(&kq, &g, &f).map_err(e2s)?).map_err(e2s)?;
            ensure(left.same_as(&kq, &right), || format!("associativity fails over {name}, triple {t}"))?;
            let id0 = Morphism::identity(&kq, x.clone(), &mods[0]);
            let id1 = Morphism::identity(&kq, x.clone(), &mods[1]);
            ensure(compose(&kq, &f, &id0).map_err(e2s)?.same_as(&kq, &f), || format!("right unit fails over {name}"))?;
            ensure(compose(&kq, &id1, &f).map_err(e2s)?.same_as(&kq, &f), || format!("left unit fails over {name}"))?;
            triples += 1;
        }
    }
    Ok(format!("{triples} triples"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

// 4. Gluing T² from its three faces in every regular order.
fn c4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let t2 = Arc::new(CellComplex::from_cubical(&CubicalComplex::t_complex(2)));
    let faces: Vec<CubicalComplex> = (1..=3).map(|i| CubicalComplex::facet(3, i, false).unwrap()).collect();
    let mut orders_used = 0;
    for t in 0..50 {
        let kq = if t % 10 == 0 { qm() } else { random_kq(&mut rng, 1 + (t % 2) as u32, &[2, 3, 4]) };
        let s = common::random_module("S", rng.gen_range(1..=4), &mut rng);
        let u = common::random_module("T", 0, &mut rng);
        let f = random_morphism(&kq, t2.clone(), &s, &u, &mut rng).map_err(e2s)?;
        let pieces: Vec<Morphism> = faces.iter().map(|a| f.restrict_to(a)).collect::<Result<_, _>>().map_err(e2s)?;
        let mut results = Vec::new();
        for p in permutations(3) {
            let ordered: Vec<CubicalComplex> = p.iter().map(|&i| faces[i].clone()).collect();
            if !CubicalComplex::is_regular_sequence(&ordered) {
                continue;
            }
            let mut acc = pieces[p[0]].clone();
            for &i in &p[1..] {
                acc = glue(&kq, &acc, &pieces[i]).map_err(e2s)?;
            }
            let refs: Vec<&Morphism> = p.iter().map(|&i| &pieces[i]).collect();
            results.push(acc);
            results.push(glue_all(&kq, &refs).map_err(e2s)?);
        }
        ensure(!results.is_empty(), || "no regular order".into())?;
        orders_used = results.len() / 2;
        for r in &results {
            ensure(r.same_as(&kq, &f), || format!("instance {t}: a gluing order changes the morphism"))?;
        }
    }
    Ok(format!("50 instances, {orders_used} regular orders each"))
}

// 5. Nullhomotopy rel boundary over a facet iff extension over the square.
fn c5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let square = Arc::new(CellComplex::cube(2));
    let (mut yes, mut no) = (0, 0);
    for t in 0..100 {
        let kq = random_kq(&mut rng, 2, &[2, 3, 4]);
        let q = kq.algebra();
        let src = common::random_module("S", rng.gen_range(1..=4), &mut rng);
        let tgt = GradedModule::new("T", &[0]);
        let i = rng.gen_range(1..=2);
        let delta = rng.gen_bool(0.5);
        let a = CubicalComplex::facet(2, i, delta).map_err(e2s)?;
        let a_op = (1..=2)
            .flat_map(|j| [(j, false), (j, true)])
            .filter(|&(j, d)| (j, d) != (i, delta))
            .map(|(j, d)| CubicalComplex::facet(2, j, d).unwrap())
            .reduce(|x, y| x.union(&y).unwrap())
            .unwrap();
        let a_cx = Arc::new(CellComplex::from_cubical(&a));
        let verts: BTreeSet<usize> = a_cx.vertices().into_iter().collect();
        let f = random_extension(&kq, a_cx.clone(), &src, &tgt, &zeros_on(&kq, verts.clone(), &src, &tgt), &mut rng)
            .map_err(e2s)?
            .ok_or("no boundary-trivial map over the facet")?;
        let zero = Morphism::zero(&kq, a_cx.clone(), &src, &tgt);
        let nullhomotopic = homotopic(&kq, &f, &zero, &verts).map_err(e2s)?.is_some();
        let mut prescribed = zeros_on(&kq, square.indices_in(&a_op), &src, &tgt);
        for (c, v) in a_cx.cells().iter().zip(f.values()) {
            prescribed.insert(square.index_of(c).unwrap(), v.clone());
        }
        let extends = extend(&kq, square.clone(), &src, &tgt, &prescribed).map_err(e2s)?.is_solved();
        ensure(nullhomotopic == extends, || {
            format!("instance {t}: homotopic = {nullhomotopic}, extends = {extends} (f = {})", q.format(&f.values()[2][0][0]))
        })?;
        if extends {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes > 0 && no > 0, || format!("degenerate sample: {yes} extend, {no} do not"))?;
    Ok(format!("100 instances, {yes} extend, {no} do not"))
}

// 6. Boundary formula for G ⊗ F over the square: the restriction to the
// facets through (1,1) is homotopic rel {10, 01} to the restriction to the
// facets through (0,0), transported by the chain map fixing 10, 01 and
// sending 11 to 00.
fn c6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let interval = Arc::new(CellComplex::cube(1));
    let u_plus = CubicalComplex::t_op(1);
    let u_minus = CubicalComplex::t_complex(1);
    let plus = Arc::new(CellComplex::from_cubical(&u_plus));
    let minus = Arc::new(CellComplex::from_cubical(&u_minus));
    let mut given = BTreeMap::new();
    for (from, to) in [("10", "10"), ("01", "01"), ("11", "00")] {
        given.insert(plus.index_of(&cell(from)).unwrap(), vec![(minus.index_of(&cell(to)).unwrap(), 1)]);
    }
    let rel: BTreeSet<usize> = ["10", "01"].iter().map(|c| plus.index_of(&cell(c)).unwrap()).collect();
    let mut nontrivial = 0;
    for t in 0..25 {
        let kq = if t % 5 == 0 { qm() } else { random_kq(&mut rng, 1, &[2, 3, 4, 9]) };
        let h = extend_chain_map(&plus, &minus, &given, kq.algebra().modulus()).map_err(e2s)?;
        ensure(h.is_chain_map(&plus, &minus, kq.algebra().modulus()), || "transport is not a chain map".into())?;
        let z = GradedModule::new("Z", &[rng.gen_range(0..=1)]);
        let y = GradedModule::new("Y", &[z.degree(0) + rng.gen_range(0..=2)]);
        let x = GradedModule::new("X", &[y.degree(0) + rng.gen_range(0..=2)]);
        // F : X → Y, G : Y → Z, both over the interval
        let f = random_morphism(&kq, interval.clone(), &x, &y, &mut rng).map_err(e2s)?;
        let g = random_morphism(&kq, interval.clone(), &y, &z, &mut rng).map_err(e2s)?;
        let m = tensor(&kq, &g, &f).map_err(e2s)?;
        let upper = m.restrict(plus.clone()).map_err(e2s)?;
        let lower = m.restrict(minus.clone()).map_err(e2s)?.pullback(&kq, &h, plus.clone()).map_err(e2s)?;
        if !upper.same_as(&kq, &lower) {
            nontrivial += 1;
        }
        let witness = homotopic(&kq, &upper, &lower, &rel).map_err(e2s)?;
        ensure(witness.is_some(), || format!("pair {t}: no homotopy rel {{10, 01}}"))?;
    }
    Ok(format!("25 pairs witnessed, {nontrivial} with distinct sides"))
}

// 7. Self-homotopies rel boundary over the top cell are counted by D^{dim B+1};
// reversing the orientation negates the obstruction and the action.
fn c7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let budget = EnumerationBudget::new(1 << 16);
    let mut counted = 0;
    let mut largest = 0u128;
    let mut t = 0;
    while counted < 30 {
        t += 1;
        ensure(t < 500, || "too few enumerable instances".into())?;
        let n = 1 + (t % 2);
        let kq = if t % 7 == 0 { qm() } else { random_kq(&mut rng, n as u32, &[2, 3, 4]) };
        let n = kq.truncation() as usize;
        let b = Arc::new(CellComplex::cube(n - 1));
        let src = common::random_module("S", rng.gen_range(1..=4), &mut rng);
        let tgt = common::random_module("T", 0, &mut rng);
        let f = random_morphism(&kq, b.clone(), &src, &tgt, &mut rng).map_err(e2s)?;
        let rel: BTreeSet<usize> = (0..b.len()).filter(|&c| b.dim_of(c) + 1 < n).collect();
        let (_, space) = homotopy_space(&kq, &f, &f, &rel).map_err(e2s)?;
        let space = space.solved().ok_or("f is not self-homotopic")?;
        let Ok(points) = space.enumerate(&kq, budget) else { continue };
        let enumerated = points.count() as u128;
        let expected = kq.natural(n as u32).unwrap().cardinality(&src, &tgt);
        ensure(enumerated == expected, || format!("instance {t}: {enumerated} self-homotopies, |D^{n}| = {expected}"))?;
        largest = largest.max(enumerated);
        counted += 1;
    }
    ensure(largest > 1, || "every counted group was trivial".into())?;

    let mut negated = 0;
    for t in 0..40 {
        let kq = if t % 8 == 0 { qm() } else { random_kq(&mut rng, 1 + (t % 2) as u32, &[2, 3, 4, 9]) };
        let n = kq.truncation() as usize;
        let ns = kq.natural(n as u32).unwrap();
        let cube = Arc::new(CellComplex::cube(n));
        let src = common::random_module("S", rng.gen_range(1..=4), &mut rng);
        let tgt = common::random_module("T", 0, &mut rng);
        let lower = (0..cube.len()).filter(|&c| cube.dim_of(c) < n);
        let f = random_extension(&kq, cube.clone(), &src, &tgt, &zeros_on(&kq, lower, &src, &tgt), &mut rng)
            .map_err(e2s)?
            .ok_or("no boundary-trivial map")?;
        let std = obstruction(&kq, &f, Orientation::Standard).map_err(e2s)?;
        let opp = obstruction(&kq, &f, Orientation::Opposite).map_err(e2s)?;
        ensure(opp == ns.neg(&std).map_err(e2s)?, || format!("instance {t}: ob(F, −o) ≠ −ob(F, o)"))?;

        let facet = CubicalComplex::facet(n, rng.gen_range(1..=n), rng.gen_bool(0.5)).map_err(e2s)?;
        let z = random_cycle_block(&kq, n as u32, &src, &tgt, &mut rng);
        let plus = obstruction(&kq, &act_class(&kq, &f, &facet, &z, Orientation::Standard).map_err(e2s)?, Orientation::Standard)
            .map_err(e2s)?;
        let minus = obstruction(&kq, &act_class(&kq, &f, &facet, &z, Orientation::Opposite).map_err(e2s)?, Orientation::Standard)
            .map_err(e2s)?;
        let d_plus = ns.sub(&plus, &std).map_err(e2s)?;
        let d_minus = ns.sub(&minus, &std).map_err(e2s)?;
        let zc = ns.from_block(&src, &tgt, &z).map_err(e2s)?;
        ensure(d_minus == ns.neg(&d_plus).map_err(e2s)?, || format!("instance {t}: opposite action does not negate"))?;
        ensure(d_plus == zc || d_plus == ns.neg(&zc).map_err(e2s)?, || format!("instance {t}: action moves ob by a foreign class"))?;
        if !d_plus.is_zero() {
            negated += 1;
        }
    }
    Ok(format!("{counted} counts match |D|, largest {largest}; 40 orientation checks, {negated} nonzero"))
}

// 8. The Massey product ⟨a, b, c⟩ in Q_M.
fn c8() -> Check {
    let kq = qm();
    let q = kq.algebra();
    let seq = chain(&kq, &["a", "b", "c"]);
    // independent data first
    let h3 = kq.homology(1).unwrap().group(3).ok_or("no H_1 in degree 3")?;
    let ay_xc = q.parse_elem("ay + xc").map_err(e2s)?;
    let class = h3.class_of(q, &ay_xc).map_err(e2s)?;
    ensure(class.iter().any(|&c| c != 0), || "[ay + xc] = 0 in H_1^3".into())?;
    let oracle = oracle_bracket_set(&kq, &seq, 1, EnumerationBudget::default()).map_err(e2s)?;
    let ns = kq.natural(1).unwrap();
    let expected = ns.from_block(seq.module(3), seq.module(0), &vec![vec![ay_xc]]).map_err(e2s)?;
    ensure(oracle.classes.len() == 1 && oracle.contains(&expected), || format!("oracle set {:?}", oracle.classes))?;

    let result = toda_bracket(&kq, &seq, 1).map_err(e2s)?;
    let rep = result.representative().ok_or_else(|| format!("bracket not defined: {:?}", result.status))?;
    ensure(rep == &expected, || "representative differs from [ay + xc]".into())?;
    let ind = triple_indeterminacy(&kq, &seq).map_err(e2s)?;
    ensure(ind.cardinality == 1, || format!("indeterminacy of order {}", ind.cardinality))?;
    Ok("⟨a,b,c⟩ = {[ay+xc]} ≠ 0, indeterminacy 0".into())
}

// 9. Coset law: the exhaustive bracket set is representative + indeterminacy.
fn c9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    let (mut attempts, mut largest, mut nonzero) = (0, 0, 0);
    while done < 10 {
        attempts += 1;
        ensure(attempts < 2000, || format!("only {done} defined instances"))?;
        let kq = random_kq(&mut rng, 1, &[2, 3, 4]);
        let seq = random_sequence(&kq, 3, &mut rng);
        let result = toda_bracket(&kq, &seq, 1).map_err(e2s)?;
        let BracketStatus::Defined { representative } = &result.status else { continue };
        let Ok(oracle) = oracle_bracket_set(&kq, &seq, 1, EnumerationBudget::new(1 << 18)) else { continue };
        let ns = kq.natural(1).unwrap();
        let ind = triple_indeterminacy(&kq, &seq).map_err(e2s)?;
        let rep = ns.embedded(representative);
        let md = kq.algebra().modulus();
        let coset: BTreeSet<Vec<u64>> = ind
            .subgroup
            .elements()
            .into_iter()
            .map(|s| rep.iter().zip(&s).map(|(&a, &b)| md.add(a, b)).collect())
            .collect();
        let found: BTreeSet<Vec<u64>> = oracle.classes.iter().map(|c| ns.embedded(c)).collect();
        ensure(coset == found, || {
            format!("instance {done}: oracle has {} classes, coset has {}", found.len(), coset.len())
        })?;
        largest = largest.max(found.len());
        if !representative.is_zero() {
            nonzero += 1;
        }
        done += 1;
    }
    ensure(largest > 1 || nonzero > 0, || "every instance was trivial".into())?;
    Ok(format!("10 instances, largest coset {largest}, {nonzero} nonzero representatives"))
}

// 10. Adams d_2: zero iff β extends, else the triple bracket class.
fn c10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut zero, mut nonzero, mut attempts) = (0, 0, 0);
    let mut instances: Vec<(Kq, MorphismSequence, GradedModule, Block)> = Vec::new();
    {
        let kq = qm();
        let seq = chain(&kq, &["a", "b"]);
        let y = GradedModule::new("Y", &[3]);
        let beta = vec![vec![kq.algebra().parse_elem("c").unwrap()]];
        instances.push((kq, seq, y, beta));
    }
    while instances.len() < 10 {
        attempts += 1;
        ensure(attempts < 2000, || "too few instances".into())?;
        let kq = random_kq(&mut rng, 1, &[2, 3, 4]);
        let seq = random_sequence(&kq, 2, &mut rng);
        let y = common::random_module("Y", 3, &mut rng);
        let beta = random_block(kq.algebra(), &y, seq.module(2), &mut rng);
        let composite = compose_blocks(kq.algebra(), seq.map(2), &beta);
        let pt = Arc::new(CellComplex::point());
        let f = Morphism::from_values(pt, y.clone(), seq.module(1).clone(), vec![composite]).map_err(e2s)?;
        let zero_pt = Morphism::zero(&kq, f.complex().clone(), &y, seq.module(1));
        if homotopic(&kq, &f, &zero_pt, &BTreeSet::new()).map_err(e2s)?.is_none() {
            continue;
        }
        if build_chain_complex(&kq, &seq, 1).map_err(e2s)?.complex().is_none() {
            continue;
        }
        instances.push((kq, seq, y, beta));
    }
    for (t, (kq, seq, y, beta)) in instances.iter().enumerate() {
        let q = kq.algebra();
        let built = build_chain_complex(kq, seq, 1).map_err(e2s)?;
        let Some(complex) = built.complex() else {
            return Err(format!("instance {t}: no chain complex"));
        };
        let window = seq.extended(kq, y.clone(), beta.clone()).map_err(e2s)?;
        // every nullhomotopy of f_2 β, enumerated directly
        let interval = Arc::new(CellComplex::cube(1));
        let mut prescribed = BTreeMap::new();
        prescribed.insert(interval.index_of(&cell("0")).unwrap(), compose_blocks(q, seq.map(2), beta));
        prescribed.insert(interval.index_of(&cell("1")).unwrap(), zero_block(q, y, seq.module(1)));
        let space = extend(kq, interval, y, seq.module(1), &prescribed).map_err(e2s)?.solved().ok_or("β is not a cocycle")?;
        let mut extends = false;
        for h in space.enumerate(kq, EnumerationBudget::new(1 << 16)).map_err(e2s)? {
            let mut tower = Tower::new(kq, &window);
            tower.insert(1, 1, complex.map(1, 1).unwrap().clone());
            tower.insert(2, 1, h);
            if tower.obstruction(1, 1).map_err(e2s)?.is_zero() {
                extends = true;
                break;
            }
        }
        let result = adams_d(kq, complex, 2, y, beta.clone()).map_err(e2s)?;
        ensure(result.vanishes() == extends, || format!("instance {t}: vanishes = {}, extends = {extends}", result.vanishes()))?;
        let bracket = toda_bracket(kq, &window, 1).map_err(e2s)?;
        let rep = bracket.representative().ok_or("window bracket undefined")?;
        let ns = kq.natural(1).unwrap();
        let ind = triple_indeterminacy(kq, &window).map_err(e2s)?;
        let diff = ns.sub(&result.raw, rep).map_err(e2s)?;
        ensure(ind.subgroup.contains(&ns.embedded(&diff)), || format!("instance {t}: d_2 outside the bracket coset"))?;
        if extends {
            zero += 1;
        } else {
            nonzero += 1;
        }
    }
    ensure(zero > 0 && nonzero > 0, || format!("degenerate sample: {zero} zero, {nonzero} nonzero"))?;
    Ok(format!("10 instances, {zero} extend to zero, {nonzero} equal a nonzero bracket class"))
}

// 11. Every CLI command is byte-deterministic.
fn c11() -> Check {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let fx = |name: &str| fixtures.join(name).to_string_lossy().into_owned();
    let cases: Vec<Vec<String>> = vec![
        vec!["validate".into(), "--algebra".into(), fx("q_m.json")],
        vec!["validate".into(), "--algebra".into(), fx("broken_d_squared.json")],
        vec!["truncate".into(), "--algebra".into(), fx("q_m.json"), "--k".into(), "0".into()],
        vec!["homology".into(), "--algebra".into(), fx("q_m.json")],
        vec!["massey".into(), "--algebra".into(), fx("q_m.json"), "--sequence".into(), fx("abc.json")],
        vec!["toda".into(), "--algebra".into(), fx("q_m.json"), "--sequence".into(), fx("abc.json"), "--n".into(), "1".into()],
        vec!["chain-complex".into(), "--algebra".into(), fx("q_m.json"), "--sequence".into(), fx("abc.json")],
        vec!["adams-d".into(), "--algebra".into(), fx("q_m.json"), "--sequence".into(), fx("ab_beta_c.json")],
        vec!["oracle".into(), "--algebra".into(), fx("q_m.json"), "--sequence".into(), fx("abc.json")],
    ];
    let exe = env!("CARGO_BIN_EXE_engine");
    let mut commands = BTreeSet::new();
    for args in &cases {
        let a = Command::new(exe).args(args).output().map_err(e2s)?;
        let b = Command::new(exe).args(args).output().map_err(e2s)?;
        ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || format!("{} differs between runs", args[0]))?;
        ensure(!a.stdout.is_empty(), || format!("{} printed nothing", args[0]))?;
        ensure(a.status.code() != Some(2), || format!("{} failed internally", args[0]))?;
        commands.insert(args[0].clone());
    }
    ensure(commands.len() == toda_core::io::Command::ALL.len(), || "not every command was exercised".into())?;
    Ok(format!("{} invocations over {} commands", cases.len(), commands.len()))
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        run(1, "cubes: ∂² = 0, Δ̄ coassociative, counital, chain map", s(5), c1),
        run(2, "validation and witnesses", s(1), c2),
        run(3, "associativity and unit laws", s(30), c3),
        run(4, "gluing T² in every regular order", s(60), c4),
        run(5, "nullhomotopy over a facet iff extension", s(60), c5),
        run(6, "boundary formula", s(60), c6),
        run(7, "abelianness count and orientation", s(120), c7),
        run(8, "Massey product in Q_M", s(10), c8),
        run(9, "coset law", s(120), c9),
        run(10, "Adams d_2", s(120), c10),
        run(11, "CLI determinism", s(60), c11),
    ];
    if results.iter().all(|&r| r) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
