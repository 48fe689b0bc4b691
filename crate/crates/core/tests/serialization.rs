//! Canonical serialization: sorted terms, decimal-string integers, and
//! byte-stable DOT/JSON exports.

use num_bigint::BigInt;
use schubert_core::cohomology::CohClass;
use schubert_core::grassmann::{grass_poset, projective_k_model, GrassIndex};
use schubert_core::ktheory::{KBasis, KClass};
use schubert_core::polyring::Poly;
use schubert_core::weyl::{BruhatPoset, Permutation};

fn p(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

#[test]
fn poly_canonical_form_is_stable() {
    let f = Poly::var(1)
        .mul(&Poly::var(1))
        .add(&Poly::var(2).scale(&BigInt::from(-3)))
        .add(&Poly::constant(7));
    let one = serde_json::to_string(&f.to_canonical()).unwrap();
    let two = serde_json::to_string(&f.to_canonical()).unwrap();
    assert_eq!(one, two);
    assert_eq!(
        one,
        r#"[{"exponents":[2],"coefficient":"1"},{"exponents":[0,1],"coefficient":"-3"},{"exponents":[],"coefficient":"7"}]"#
    );
    assert_eq!(Poly::from_canonical(&f.to_canonical()), f);
}

#[test]
fn class_wire_forms() {
    let mut c = CohClass::zero(3);
    c.add_term(p(&[2, 1, 3]), BigInt::from(2));
    c.add_term(p(&[1, 2, 3]), BigInt::from(-1));
    let json = serde_json::to_string(&c.to_wire()).unwrap();
    assert_eq!(
        json,
        r#"{"window":3,"convention":"dimension","terms":[{"perm":[1,2,3],"coeff":"-1"},{"perm":[2,1,3],"coeff":"2"}]}"#
    );

    let mut k = KClass::zero(2, KBasis::I);
    k.add_term(p(&[2, 1]), BigInt::from(5));
    let json = serde_json::to_string(&k.to_wire()).unwrap();
    assert_eq!(
        json,
        r#"{"window":2,"basis":"I","terms":[{"perm":[2,1],"coeff":"5"}]}"#
    );
}

#[test]
fn permutations_serialize_as_one_based_arrays() {
    let w = p(&[2, 3, 1]);
    assert_eq!(serde_json::to_string(&w).unwrap(), "[2,3,1]");
    let back: Permutation = serde_json::from_str("[2,3,1]").unwrap();
    assert_eq!(back, w);
}

#[test]
fn bruhat_poset_exports() {
    let poset = BruhatPoset::full(3);
    let dot = poset.to_dot("bruhat_s3");
    assert_eq!(dot.matches(" -> ").count(), 8);
    let node_lines = dot
        .lines()
        .filter(|l| l.ends_with(';') && !l.contains("->") && l.contains('"'))
        .count();
    assert_eq!(node_lines, 6);
    // two renders are byte-identical
    assert_eq!(dot, BruhatPoset::full(3).to_dot("bruhat_s3"));
    let json = serde_json::to_string(&poset).unwrap();
    let back: BruhatPoset = serde_json::from_str(&json).unwrap();
    assert_eq!(back, poset);
}

#[test]
fn grass_poset_exports() {
    let poset = grass_poset(2, 4).unwrap();
    let json = serde_json::to_string(&poset).unwrap();
    assert_eq!(serde_json::to_string(&grass_poset(2, 4).unwrap()).unwrap(), json);
    let dot = poset.to_dot("gr24");
    assert_eq!(dot.matches(" -> ").count(), 6);
    // GrassIndex wire form carries 1-based indices
    let i = GrassIndex::new(vec![2, 4], 2, 4).unwrap();
    let v = serde_json::to_value(&i).unwrap();
    assert_eq!(v["indices"], serde_json::json!([2, 4]));
}

#[test]
fn hilbert_wire_is_exact_rationals() {
    let model = projective_k_model(2);
    let b2 = model.basis_hilbert(2).unwrap();
    // (t+2)(t+1)/2 = 1 + 3/2 t + 1/2 t^2
    assert_eq!(
        b2.to_wire(),
        vec![
            ("1".to_string(), "1".to_string()),
            ("3".to_string(), "2".to_string()),
            ("1".to_string(), "2".to_string()),
        ]
    );
}
