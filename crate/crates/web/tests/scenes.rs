use antimagic_web::{edge_list_scene, marked_path_scene, random_lobster_scene};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn marked_path_scene_labels() {
    let v = parse(&marked_path_scene(13, "3, 4 7 9,10,11").unwrap());
    let labels: Vec<u64> = v["labeling"]["arcs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["label"].as_u64().unwrap())
        .collect();
    assert_eq!(labels, [13, 1, 11, 10, 8, 3, 9, 4, 7, 6, 5, 2, 12]);
    assert_eq!(v["marked"].as_array().unwrap().len(), 6);
    assert_eq!(v["positions"]["13"], serde_json::json!([13.0, 0]));
    assert!(v["labeling"]["verdicts"]["condition_iii"].as_bool().unwrap());
}

#[test]
fn bad_inputs_are_errors() {
    assert!(marked_path_scene(13, "x").is_err());
    assert!(marked_path_scene(13, "13").is_err());
    assert!(marked_path_scene(13, "").is_err());
    assert!(edge_list_scene("a b\nb c d").unwrap_err().contains("line 2"));
    let spider = "0 1\n1 2\n2 3\n0 4\n4 5\n5 6\n0 7\n7 8\n8 9\n";
    assert!(edge_list_scene(spider).unwrap_err().contains("not a lobster"));
    assert!(random_lobster_scene(1, 0, 0.5).is_err());
}

#[test]
fn random_scene_is_antimagic_and_laid_out() {
    for seed in 0..20 {
        let v = parse(&random_lobster_scene(15, seed, 0.6).unwrap());
        assert!(v["labeling"]["verdicts"]["antimagic"].as_bool().unwrap());
        let positions = v["positions"].as_object().unwrap();
        assert_eq!(positions.len(), v["labeling"]["vertices"].as_array().unwrap().len());
        let mut seen = std::collections::HashSet::new();
        for p in positions.values() {
            let key = (p[0].as_f64().unwrap().to_bits(), p[1].as_u64().unwrap());
            assert!(seen.insert(key), "two vertices share a position");
        }
    }
}

#[test]
fn edge_list_scene_keeps_names() {
    let v = parse(&edge_list_scene("hub a\nhub b\nhub c\nc d\n").unwrap());
    assert_eq!(v["labeling"]["vertices"][0], "hub");
    assert_eq!(v["marked"], serde_json::json!(["hub"]));
}
