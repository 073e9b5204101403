use serde_json::Value;
use skeleton_ideals::verify::{self, Relation, Report};
use skeleton_ideals::Multigraph;

fn without_timing(r: &Report) -> Value {
    let mut v = serde_json::to_value(r).unwrap();
    v["summary"]["elapsed_ms"] = Value::Null;
    v
}

#[test]
fn suites_are_deterministic() {
    let runs = |seed| {
        [
            verify::suite_rc(4, 2, 2, 20, seed).unwrap(),
            verify::suite_ineq(4, 3, 20, seed).unwrap(),
            verify::suite_mt(4, 6, 20, seed).unwrap(),
            verify::suite_decomp(10, seed).unwrap(),
            verify::suite_props(4, 5, seed).unwrap(),
        ]
    };
    for (a, b) in runs(3).iter().zip(runs(3).iter()) {
        assert_eq!(without_timing(a), without_timing(b), "{}", a.suite);
        assert!(a.passed(), "{}", a.to_text());
    }
}

#[test]
fn summary_counts_match_trials() {
    let r = verify::suite_ineq(3, 2, 15, 1).unwrap();
    assert_eq!(r.summary.total as usize, r.trials.len());
    assert_eq!(r.summary.failed as usize, r.failures().count());
    assert!(r.trials.iter().enumerate().all(|(i, t)| t.id == i as u64));
    assert!(r.trials.iter().all(|t| t.relation == Relation::Geq));
}

#[test]
fn matrix_tree_examples() {
    let graphs = [
        Multigraph::complete(3, 1, 1).unwrap(),
        Multigraph::complete(2, 2, 1).unwrap(),
        Multigraph::path(3).unwrap(),
    ];
    let r = verify::suite_matrix_tree(&graphs);
    let pairs: Vec<_> = r
        .trials
        .iter()
        .map(|t| (t.dim.as_str(), t.det.as_str()))
        .collect();
    assert_eq!(pairs, [("16", "16"), ("8", "8"), ("1", "1")]);
    assert!(r.passed());
}

#[test]
fn rc_examples() {
    let r = verify::suite_rc(3, 2, 3, 0, 0).unwrap();
    let find = |family: &str, key: &str, val: u64, key2: &str, val2: u64| {
        r.trials
            .iter()
            .find(|t| {
                t.instance["family"] == family
                    && t.instance[key] == val
                    && t.instance[key2] == val2
                    && t.instance["n"] == 3
            })
            .unwrap()
    };
    let t = find("g_n_r", "r", 1, "r", 1);
    assert_eq!(
        (t.dim.as_str(), t.det.as_str(), t.formula.as_deref()),
        ("12", "12", Some("12"))
    );
    let t = find("g_n_r", "r", 3, "r", 3);
    assert_eq!((t.dim.as_str(), t.det.as_str()), ("4", "4"));
    let t = find("complete", "a", 2, "b", 3);
    assert_eq!((t.dim.as_str(), t.formula.as_deref()), ("350", Some("350")));
}

#[test]
fn ineq_reports_slack() {
    let r = verify::suite_ineq(3, 1, 0, 0).unwrap();
    assert_eq!(r.trials[0].instance["slack"], "1");
    assert_eq!(r.trials[1].instance["slack"], "0");
    assert_eq!(
        (r.trials[1].dim.as_str(), r.trials[1].det.as_str()),
        ("20", "20")
    );
}

#[test]
fn mt_fixed_instances() {
    let r = verify::suite_mt(3, 6, 0, 0).unwrap();
    let pairs: Vec<_> = r
        .trials
        .iter()
        .map(|t| (t.dim.as_str(), t.det.as_str()))
        .collect();
    assert_eq!(pairs, [("3", "3"), ("2", "1"), ("24", "24")]);
}

#[test]
fn decomposition_examples_and_colon_shape() {
    let r = verify::suite_decomp(30, 4).unwrap();
    assert!(r.passed());
    let first = |id: &str| {
        r.trials
            .iter()
            .find(|t| t.instance["identity"] == id)
            .unwrap()
    };
    for id in ["det-root-split", "dim-root-split"] {
        let t = first(id);
        assert_eq!(t.dim, "20");
        assert_eq!(
            (
                t.instance["deleted"].as_str(),
                t.instance["merged"].as_str()
            ),
            (Some("12"), Some("8"))
        );
    }
    assert!(r
        .trials
        .iter()
        .filter(|t| t.instance["identity"] == "dim-colon-split")
        .all(|t| t.instance["colon_matches"] == true));
}

#[test]
fn lemma1_example_dimensions() {
    let r = verify::suite_lemma1(2, 2).unwrap();
    let t = r
        .trials
        .iter()
        .find(|t| t.instance["n"] == 2 && t.instance["r"] == 1)
        .unwrap();
    assert_eq!((t.dim.as_str(), t.det.as_str()), ("1", "1"));
    assert_eq!(t.instance["colon"], true);
}

#[test]
fn combined_report_keeps_failures_visible() {
    let ok = verify::suite_remark(2, 3, 2).unwrap();
    let mut bad = ok.clone();
    bad.trials[0].pass = false;
    bad.summary.failed = 1;
    let all = Report::combine("all", Value::Null, 0, vec![ok, bad]);
    assert!(!all.passed());
    assert_eq!(all.failures().count(), 1);
}
