//! Bound evaluators against values frozen from a 50-digit evaluation
//! (`tests/data/golden_bounds.py`).

use ksum_core::additive::{corollary_rhs, lemma_rhs};
use ksum_core::sums::{thm1_rhs, thm2_rhs, WeightVector};
use ksum_core::{Complex64, FieldElement};
use serde_json::Value;

const REL: f64 = 1e-12;

fn golden() -> Value {
    serde_json::from_str(include_str!("data/golden_bounds.json")).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL * b.abs().max(1.0)
}

#[test]
fn thm1_terms() {
    for case in golden()["thm1"].as_array().unwrap() {
        let q = case["q"].as_u64().unwrap() as u32;
        let a = case["a"].as_u64().unwrap();
        let t = thm1_rhs(q, a);
        for (got, want) in t.terms.iter().zip(case["terms"].as_array().unwrap()) {
            assert!(close(*got, num(want)), "q={q} a={a}: {got} vs {want}");
        }
    }
}

#[test]
fn thm2_values() {
    for case in golden()["thm2"].as_array().unwrap() {
        let q = case["q"].as_u64().unwrap() as u32;
        let a = case["a"].as_u64().unwrap();
        let v = case["v"].as_u64().unwrap() as u32;
        // Unit weights on v points: ||alpha||_1 = v, ||alpha||_2 = sqrt(v).
        let alpha = WeightVector::from_pairs((0..v).map(|i| (FieldElement::from_index(i), Complex64::new(0.6, 0.8))));
        let got = thm2_rhs(q, a, &alpha).unwrap().value;
        assert!(close(got, num(&case["value"])), "q={q} a={a} v={v}: {got}");
    }
}

#[test]
fn lemma_values() {
    for case in golden()["lemma"].as_array().unwrap() {
        let (s, t, q) = (case["s"].as_u64().unwrap(), case["t"].as_u64().unwrap(), case["q"].as_u64().unwrap() as u32);
        assert!(close(lemma_rhs(s, t, q), num(&case["value"])));
    }
}

#[test]
fn corollary_values() {
    for case in golden()["corollary"].as_array().unwrap() {
        let (s, q) = (case["s"].as_u64().unwrap(), case["q"].as_u64().unwrap() as u32);
        let c = corollary_rhs(s, q);
        let b = case["branches"].as_array().unwrap();
        let (first, second) = (num(&b[0]), num(&b[1]));
        assert!(close(c.first, first) && close(c.second, second));
        assert_eq!(c.first_active, first <= second);
        assert!(close(c.min, first.min(second)));
    }
}
