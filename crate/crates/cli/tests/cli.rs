use std::process::{Command, Output};

use serde_json::Value;

fn endspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = endspace(&all);
    assert!(o.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn catalog_lists_ten_graphs() {
    let v = json(&["catalog", "list"]);
    assert_eq!(v.as_array().unwrap().len(), 10);
    assert_eq!(v[0], "three_cliques");
    let doc = json(&["catalog", "show", "star_of_rays"]);
    assert_eq!(doc["name"], "star_of_rays");
}

#[test]
fn timid_ends_of_three_cliques() {
    let o = endspace(&["analyze", "three_cliques", "--space", "timid-ends"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(": 1 point"), "{}", stdout(&o));
    let v = json(&["analyze", "three_cliques", "--space", "ends"]);
    assert_eq!(v["count"], 3);
    let v = json(&["analyze", "three_cliques"]);
    assert_eq!(v["count"], 2);
}

#[test]
fn u_spaces_need_a_vertex_set() {
    assert_eq!(endspace(&["analyze", "star_of_rays", "--space", "u-ends"]).status.code(), Some(2));
    let v = json(&["analyze", "star_of_rays", "--space", "u-directions", "--U", "all-but:c:c"]);
    let hubs: Vec<&Value> = v["points"].as_array().unwrap().iter().filter(|p| p["source"] == "RaylessHub").collect();
    assert_eq!(hubs.len(), 1);
}

#[test]
fn truncation_dot_is_canonical_and_stable() {
    let dir = std::env::temp_dir().join(format!("endspace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.dot"), dir.join("b.dot"));
    for path in [&a, &b] {
        let o = endspace(&["truncate", "star_of_rays", "-n", "3", "--dot", path.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let dot = std::fs::read_to_string(&a).unwrap();
    assert_eq!(dot, std::fs::read_to_string(&b).unwrap());
    let vertices = dot.lines().filter(|l| l.ends_with("\";") && !l.contains(" -- ")).count();
    assert_eq!(vertices, 1 + 3 * 3);
    let v = json(&["truncate", "star_of_rays", "-n", "3"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 10);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn hgraph_verifies_on_three_cliques() {
    let o = endspace(&["verify", "three_cliques", "--theorem", "hgraph"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("hgraph on three_cliques: pass\n"));
    let v = json(&["verify", "star_of_rays", "--theorem", "pidsurj"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn transforms_print_their_maps() {
    let v = json(&["transform", "two_cliques_bridge", "--op", "timid2edge"]);
    assert_eq!(v["transform"], "timid_to_edge");
    assert_eq!(v["output"]["families"].as_array().unwrap().len(), 1);
    let v = json(&["transform", "star_of_rays", "--op", "hgraph"]);
    assert_eq!(v["identity"], true);
}

#[test]
fn oracle_agrees_on_a_catalog_graph() {
    let v = json(&["oracle", "double_ray_dominator"]);
    assert_eq!(v["mismatches"], 0);
    assert!(v["queries"].as_u64().unwrap() > 10);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(endspace(&["analyze", "no_such_graph"]).status.code(), Some(2));
    assert_eq!(endspace(&["verify", "three_cliques", "--theorem", "nope"]).status.code(), Some(2));

    let path = std::env::temp_dir().join(format!("endspace-bad-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"name": "x", "core": {"vertices": ["a"], "edges": [["a", "b"]]}}"#).unwrap();
    let o = endspace(&["analyze", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("A presentation is a JSON object"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["analyze", "notendspace_graph", "--space", "edge-directions", "--json"];
    assert_eq!(endspace(&args).stdout, endspace(&args).stdout);
}
