//! Wire-format contract tests: the JSON shapes documented on the public
//! types round-trip losslessly, and malformed input is rejected by
//! revalidation rather than silently accepted.

use num_rational::Rational64;
use serde_json::{json, Value};
use stabdisc::{
    leave_one_out_strategy, mixed_pair, six_state_set, LabeledEnsemble, PauliOperator,
    StabilizerState, StrategyNode,
};

#[test]
fn pauli_operators_serialize_as_their_textual_form() {
    for text in ["+IXZ", "-YY", "+iZI", "-iXYZI"] {
        let p: PauliOperator = text.parse().unwrap();
        assert_eq!(p.to_string(), text);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, format!("\"{text}\""));
        let back: PauliOperator = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }
    // A bare sign, an unknown letter, and a non-string all fail.
    for bad in ["\"+\"", "\"+XQ\"", "7"] {
        assert!(
            serde_json::from_str::<PauliOperator>(bad).is_err(),
            "{bad} accepted"
        );
    }
}

#[test]
fn states_round_trip_and_malformed_groups_are_rejected() {
    for item in six_state_set().items() {
        let state = &item.components[0].state;
        let js = serde_json::to_value(state).unwrap();
        assert_eq!(js["n"], json!(3));
        assert_eq!(js["generators"].as_array().unwrap().len(), 3);
        let back: StabilizerState = serde_json::from_value(js).unwrap();
        assert_eq!(&back, state, "round trip changed the stabilized state");
    }

    let cases = [
        // Anticommuting generators.
        json!({"n": 2, "generators": ["+XX", "+ZI"]}),
        // Dependent generators.
        json!({"n": 2, "generators": ["+ZI", "+ZI"]}),
        // Non-Hermitian sign.
        json!({"n": 2, "generators": ["+iZZ", "+XX"]}),
        // Declared width disagrees with the letters.
        json!({"n": 3, "generators": ["+ZZ", "+XX"]}),
        // Too few generators for the register.
        json!({"n": 2, "generators": ["+ZZ"]}),
        // Inconsistent signs: -II is not satisfiable.
        json!({"n": 2, "generators": ["+ZZ", "-II"]}),
    ];
    for bad in cases {
        let text = bad.to_string();
        assert!(
            serde_json::from_value::<StabilizerState>(bad).is_err(),
            "accepted malformed state {text}"
        );
    }
}

#[test]
fn ensembles_use_the_documented_wire_shape() {
    let six = six_state_set();
    let js = serde_json::to_value(&six).unwrap();
    assert_eq!(js["n"], json!(3));
    let states = js["states"].as_array().unwrap();
    assert_eq!(states.len(), 6);
    assert_eq!(states[0]["label"], json!(0));
    assert_eq!(states[0]["prior"], json!("1/6"));
    let components = states[0]["components"].as_array().unwrap();
    assert_eq!(components.len(), 1);
    assert_eq!(components[0]["weight"], json!("1"));
    assert!(components[0]["state"]["generators"].is_array());

    // Integer rationals print bare; proper fractions as "num/den".
    let mixed = serde_json::to_value(mixed_pair()).unwrap();
    assert_eq!(mixed["states"][0]["prior"], json!("1/2"));
    assert_eq!(mixed["states"][0]["components"][0]["weight"], json!("1/2"));
}

#[test]
fn ensembles_round_trip_losslessly() {
    for original in [six_state_set(), mixed_pair()] {
        let js = serde_json::to_string(&original).unwrap();
        let back: LabeledEnsemble = serde_json::from_str(&js).unwrap();
        assert_eq!(back.num_qubits(), original.num_qubits());
        assert_eq!(back.num_labels(), original.num_labels());
        for (a, b) in back.items().iter().zip(original.items()) {
            assert_eq!(a.label, b.label);
            assert_eq!(a.prior, b.prior);
            assert_eq!(a.components.len(), b.components.len());
            for (ca, cb) in a.components.iter().zip(&b.components) {
                assert_eq!(ca.weight, cb.weight);
                assert_eq!(ca.state, cb.state);
            }
        }
    }
}

#[test]
fn malformed_ensembles_are_rejected() {
    let state = json!({"n": 1, "generators": ["+Z"]});
    let other = json!({"n": 1, "generators": ["-Z"]});
    let wide = json!({"n": 2, "generators": ["+ZI", "+IZ"]});
    let item = |label: usize, prior: &str, state: &Value| {
        json!({
            "label": label,
            "prior": prior,
            "components": [{"weight": "1", "state": state}],
        })
    };

    let cases = [
        // Priors must sum to one.
        json!({"n": 1, "states": [item(0, "1/3", &state), item(1, "1/3", &other)]}),
        // Zero denominator.
        json!({"n": 1, "states": [item(0, "1/0", &state), item(1, "1/2", &other)]}),
        // Duplicate labels.
        json!({"n": 1, "states": [item(0, "1/2", &state), item(0, "1/2", &other)]}),
        // Mixed register widths.
        json!({"n": 1, "states": [item(0, "1/2", &state), item(1, "1/2", &wide)]}),
        // Declared width disagrees with the states.
        json!({"n": 2, "states": [item(0, "1/2", &state), item(1, "1/2", &other)]}),
        // No states at all.
        json!({"n": 1, "states": []}),
        // Component weights must sum to one.
        json!({"n": 1, "states": [
            {"label": 0, "prior": "1/2", "components": [{"weight": "1/2", "state": state}]},
            item(1, "1/2", &other),
        ]}),
    ];
    for bad in cases {
        let text = bad.to_string();
        assert!(
            serde_json::from_value::<LabeledEnsemble>(bad).is_err(),
            "accepted malformed ensemble {text}"
        );
    }
}

#[test]
fn strategy_trees_round_trip_untagged() {
    let (strategy, _) = leave_one_out_strategy(5).unwrap();
    let js = serde_json::to_value(&strategy).unwrap();
    // Measure nodes carry the Pauli and both branches; leaves are {"guess"}.
    assert_eq!(js["measure"], json!("+IIZ"));
    assert_eq!(js["on_zero"]["measure"], json!("+IZI"));
    assert_eq!(js["on_zero"]["on_zero"], json!({"guess": 2}));
    let back: StrategyNode = serde_json::from_value(js).unwrap();
    assert_eq!(back, strategy);

    let leaf = StrategyNode::Guess { guess: 4 };
    let js = serde_json::to_string(&leaf).unwrap();
    assert_eq!(js, r#"{"guess":4}"#);
    assert_eq!(serde_json::from_str::<StrategyNode>(&js).unwrap(), leaf);
}

#[test]
fn malformed_strategy_trees_are_rejected() {
    let cases = [
        // A measure node missing one branch matches neither variant.
        json!({"measure": "+Z", "on_zero": {"guess": 0}}),
        // An invalid Pauli inside an otherwise complete node.
        json!({"measure": "+Q", "on_zero": {"guess": 0}, "on_one": {"guess": 1}}),
        // Neither a guess nor a measurement.
        json!({"flip": "a coin"}),
    ];
    for bad in cases {
        let text = bad.to_string();
        assert!(
            serde_json::from_value::<StrategyNode>(bad).is_err(),
            "accepted malformed strategy {text}"
        );
    }
}

#[test]
fn rationals_in_wire_strings_accept_whitespace() {
    let js = json!({
        "n": 1,
        "states": [
            {"label": 0, "prior": " 1/2", "components": [
                {"weight": "1", "state": {"n": 1, "generators": ["+Z"]}},
            ]},
            {"label": 1, "prior": "1/ 2", "components": [
                {"weight": "1", "state": {"n": 1, "generators": ["-Z"]}},
            ]},
        ],
    });
    let e: LabeledEnsemble = serde_json::from_value(js).unwrap();
    assert_eq!(e.items()[0].prior, Rational64::new(1, 2));
    assert_eq!(e.items()[1].prior, Rational64::new(1, 2));
}
