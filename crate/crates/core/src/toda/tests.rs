use std::collections::BTreeMap;

use super::*;
use crate::algebra::{massey_quiver, GradedModule};
use crate::linalg::Modulus;
use crate::oracle::EnumerationBudget;
use crate::track::Kq;

fn qm() -> Kq {
    Kq::new(massey_quiver().algebra(Modulus::new(2).unwrap(), 1, 3).unwrap()).unwrap()
}

fn chain(kq: &Kq, maps: &[&str]) -> MorphismSequence {
    let modules = (0..=maps.len()).map(|i| GradedModule::new(format!("X{i}"), &[i as u32])).collect();
    let blocks = maps
        .iter()
        .map(|m| vec![vec![kq.algebra().parse_elem(m).unwrap()]])
        .collect();
    MorphismSequence::new(kq, modules, blocks).unwrap()
}

#[test]
fn massey_product_of_abc() {
    let kq = qm();
    let seq = chain(&kq, &["a", "b", "c"]);
    // independent data first: H_1 in degree 3 and the exhaustive bracket set
    let h3 = kq.homology(1).unwrap().group(3).unwrap();
    assert_eq!(h3.cardinality(), 2);
    let oracle = oracle_bracket_set(&kq, &seq, 1, EnumerationBudget::default()).unwrap();
    assert_eq!(oracle.classes.len(), 1);
    let result = toda_bracket(&kq, &seq, 1).unwrap();
    let rep = result.representative().unwrap();
    assert!(!rep.is_zero());
    assert!(oracle.contains(rep));
    let ns = kq.natural(1).unwrap();
    let expected = ns
        .from_block(seq.module(3), seq.module(0), &vec![vec![kq.algebra().parse_elem("ay + xc").unwrap()]])
        .unwrap();
    assert_eq!(rep, &expected);
    assert_eq!(triple_indeterminacy(&kq, &seq).unwrap().cardinality, 1);
}

#[test]
fn zero_middle_map_gives_zero() {
    let kq = qm();
    let seq = chain(&kq, &["a", "0", "c"]);
    let result = toda_bracket(&kq, &seq, 1).unwrap();
    assert!(result.representative().unwrap().is_zero());
    let oracle = oracle_bracket_set(&kq, &seq, 1, EnumerationBudget::default()).unwrap();
    assert!(oracle.classes.iter().any(|c| c.is_zero()));
}

#[test]
fn non_nullhomotopic_composite_is_not_constructible() {
    let kq = qm();
    let modules = vec![
        GradedModule::new("X0", &[0]),
        GradedModule::new("X1", &[1]),
        GradedModule::new("X2", &[1]),
        GradedModule::new("X3", &[2]),
    ];
    let q = kq.algebra();
    let blocks = vec![
        vec![vec![q.parse_elem("a").unwrap()]],
        vec![vec![q.parse_elem("1").unwrap()]],
        vec![vec![q.parse_elem("b").unwrap()]],
    ];
    let seq = MorphismSequence::new(&kq, modules, blocks).unwrap();
    let result = toda_bracket(&kq, &seq, 1).unwrap();
    assert!(matches!(result.status, BracketStatus::NotConstructible { step: 1, index: 1, .. }));
}

#[test]
fn chain_complexes() {
    let kq = qm();
    let built = build_chain_complex(&kq, &chain(&kq, &["a", "b"]), 1).unwrap();
    let complex = built.complex().unwrap();
    let f11 = complex.map(1, 1).unwrap();
    let star = f11.value_at(&"*".parse().unwrap()).unwrap();
    assert_eq!(kq.algebra().format(&star[0][0]), "x");

    let zero = build_chain_complex(&kq, &chain(&kq, &["0", "0", "0", "0"]), 1).unwrap();
    assert!(zero.complex().unwrap().data().values().all(|f| f.is_zero(&kq)));

    let failed = build_chain_complex(&kq, &chain(&kq, &["a", "b", "c"]), 1).unwrap();
    assert!(matches!(
        failed.failure(),
        Some(ChainComplexFailure::ObstructionNonzero { index: 1, .. })
    ));
}

#[test]
fn adams_on_zero_beta_and_massey_window() {
    let kq = qm();
    let built = build_chain_complex(&kq, &chain(&kq, &["a", "b"]), 1).unwrap();
    let complex = built.complex().unwrap();
    let q = kq.algebra();
    let y = GradedModule::new("Y", &[3]);
    let zero = adams_d(&kq, complex, 2, &y, vec![vec![q.zero()]]).unwrap();
    assert!(zero.vanishes());
    let d = adams_d(&kq, complex, 2, &y, vec![vec![q.parse_elem("c").unwrap()]]).unwrap();
    let bracket = toda_bracket(&kq, &d.window, 1).unwrap();
    assert_eq!(bracket.representative(), Some(&d.raw));
    assert!(!d.vanishes());
    assert!(matches!(
        adams_d(&kq, complex, 1, &y, vec![vec![q.zero()]]),
        Err(TodaError::Unsupported(_))
    ));
}

#[test]
fn preset_oracle_matches_plain_oracle_without_presets() {
    let kq = qm();
    let seq = chain(&kq, &["a", "b", "c"]);
    let a = oracle::oracle_with_preset(&kq, &seq, 1, &BTreeMap::new(), EnumerationBudget::default()).unwrap();
    let b = oracle_bracket_set(&kq, &seq, 1, EnumerationBudget::default()).unwrap();
    assert_eq!(a, b);
    assert!(matches!(
        oracle_bracket_set(&kq, &seq, 1, EnumerationBudget::new(1)),
        Err(TodaError::Budget(_))
    ));
}
