use std::collections::BTreeSet;
use std::time::Instant;

use lbhopf_core::hn::HnHopf;
use lbhopf_core::lbseries::exact_solution;
use lbhopf_core::lincomb::parse_rational;
use lbhopf_core::{ColorSet, Forest, LinComb, Rational, Tensor};
use serde_json::Value;

fn fixture(name: &str) -> Value {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn s(v: &Value) -> &str {
    v.as_str().unwrap()
}

#[test]
fn delta_n_table() {
    let colors = ColorSet::default();
    let table = fixture("delta_n_table.json");
    let rows = table["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 23);
    let start = Instant::now();
    let hn = HnHopf::new(colors.clone());
    for row in rows {
        let forest = colors.parse(s(&row["forest"])).unwrap();
        let expected: Tensor<Forest> = row["coproduct"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| ((colors.parse(s(&t[0])).unwrap(), colors.parse(s(&t[1])).unwrap()), parse_rational(s(&t[2])).unwrap()))
            .collect();
        assert_eq!(hn.delta_n(&forest), expected, "{forest}");
    }
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn exact_series_through_degree_five() {
    let colors = ColorSet::default();
    let listed = fixture("exact_series.json");
    let gamma = exact_solution(&colors, 5).unwrap();
    let mut expected: LinComb<Forest> = LinComb::zero();
    for entry in listed["series"].as_array().unwrap() {
        let tree = colors.parse(s(&entry["tree"])).unwrap();
        assert_eq!(tree.len(), 1);
        expected.add_term(tree, parse_rational(s(&entry["coefficient"])).unwrap());
    }
    // every planar tree with at most five nodes is listed exactly once
    let listed_trees: BTreeSet<&Forest> = expected.basis_elements().collect();
    let all_trees: BTreeSet<Forest> = colors.forests_up_to(5).into_iter().filter(|f| f.len() == 1).collect();
    assert_eq!(listed_trees.len(), all_trees.len());
    for f in colors.forests_up_to(5) {
        let want = if f.len() == 1 { expected.coeff(&f) } else { Rational::from_integer(0.into()) };
        assert_eq!(gamma.get(&f).unwrap(), want, "{f}");
    }
}
