use super::*;

/// Case 1 of the cA6 link, with beta already eliminated.
fn ca6_case1() -> GradedSystem {
    let a = crate::toric::ToricAmbient::from_rows(
        &["u", "x0", "x3", "x4", "x1", "x2", "alpha"],
        &[vec![1, 0, -1, -1, -2, -2, -5], vec![0, 1, 1, 1, 1, 1, 2]],
        &["u", "x0"],
        &["x3", "x4", "x1", "x2", "alpha"],
    )
    .unwrap();
    GradedSystem::parse(
        a,
        &[
            "u^3*alpha - x0*(x1+x2) + x3^2 + x4^2",
            "alpha*(x0*(x1-x2) - (x3^2-x4^2)) + x1^3*x3 + x2^3*x4 + u*(x1^4+x2^4)",
        ],
        "u",
        "cA6 case 1",
    )
    .unwrap()
}

fn family(i: u32, j: u32, w: i64, r1: i64, r2: i64) -> GradedSystem {
    let e3 = format!("alpha*beta + x0^{}*(x1^{}*x3^{} + x2^{}*x4^{}) + x1^4 + x2^4", 4 - i - j, i, j, i, j);
    GradedSystem::weighted_blowup(
        &["x0", "x1", "x2", "x3", "x4", "alpha", "beta"],
        &[1, 1, 1, 1, 1, 2, 2],
        &[0, w, w, 1, 1, r1, r2],
        &["alpha - x0*(x1+x2) + x3^2 + x4^2", "beta - x0*(x1-x2) + x3^2 - x4^2", &e3],
        "u",
        "",
    )
    .unwrap()
}

#[test]
fn ca6_case1_two_flops_to_y66() {
    let r = run_link(&ca6_case1()).unwrap();
    assert_eq!(r.decomposition(), "2 flops");
    assert_eq!(r.flop_count(), 2);
    assert_eq!(r.endpoint.to_string(), "Y_{6,6} ⊂ P(1,1,2,3,3,5)");
    assert_eq!(r.discrepancies(), (Some("1".into()), Some("1".into())));
    assert!(r.checklist.all_passed());
    assert!(r.unprojected.is_empty());
}

#[test]
fn dot_has_one_node_per_model() {
    let r = run_link(&ca6_case1()).unwrap();
    let dot = render_dot(&r);
    assert_eq!(dot.matches("[label=").count() - dot.matches("->").count(), 4);
    assert_eq!(dot.matches("->").count(), 3);
    assert!(dot.contains("2 flops"));
    let text = render_text(&r);
    assert!(text.contains("divisorial contraction"));
    assert!(text.contains("[pass] bad link"));
}

#[test]
fn step_words_pluralize() {
    let r = run_link(&family(2, 2, 2, 3, 3)).unwrap();
    assert_eq!(r.summary(), "[divisorial a=1; ≅; 2 flips (3,1,1,-1,-1;2); fibration] endpoint dP4 fibration over P^1");
    let r = run_link(&family(3, 1, 2, 4, 3)).unwrap();
    assert_eq!(r.decomposition(), "≅ then flip (3,1,1,-1,-1;2)");
}

#[test]
fn unprojection_changes_the_x04_configuration() {
    // without unprojection the second contraction is crepant
    let s = family(0, 4, 1, 3, 1);
    let plain = run_link_with(&s, LinkOptions { unproject: false }).unwrap();
    assert!(plain.is_bad());
    assert_eq!(plain.discrepancies().1.as_deref(), Some("0"));
    assert!(plain.unprojected.is_empty());
    let re = run_link(&s).unwrap();
    assert!(!re.is_bad());
    assert!(!re.unprojected.is_empty());
    assert_eq!(re.flop_count(), 8);
}

#[test]
fn ca2_needs_unprojection() {
    let r = run_link(&family(0, 3, 1, 2, 1)).unwrap();
    assert_eq!(r.unprojected.len(), 2);
    assert_eq!(r.flop_count(), 12);
    assert_eq!(r.endpoint.to_string(), "Y_{3,4} ⊂ P(1,1,1,1,2,2)");
    assert_eq!(r.discrepancies().1.as_deref(), Some("1/2"));
}

#[test]
fn validate_link_reports_the_checklist() {
    let c = validate_link(&family(1, 3, 2, 3, 2)).unwrap();
    assert!(c.all_passed());
    assert!(c.anticanonical_interior.passed());
}

#[test]
fn system_json_round_trip() {
    let s = ca6_case1();
    let j = s.to_json();
    assert_eq!(j["vars"][6]["name"], "alpha");
    assert_eq!(j["vars"][6]["class"], serde_json::json!([-5, 2]));
    assert_eq!(j["irrelevant"][0], serde_json::json!(["u", "x0"]));
    assert_eq!(GradedSystem::from_json(&j).unwrap(), s);
    let r1 = serde_json::to_string(&run_link(&s).unwrap()).unwrap();
    let r2 = serde_json::to_string(&run_link(&GradedSystem::from_json(&j).unwrap()).unwrap()).unwrap();
    assert_eq!(r1, r2);
}

#[test]
fn diagram_layout() {
    let r = run_link(&ca6_case1()).unwrap();
    let d = render_diagram(&r);
    let lines: Vec<&str> = d.lines().collect();
    assert_eq!(lines[0], "Z0 --2 flops----> Z1");
    assert_eq!(lines[1], "|                 |");
    assert!(lines[2].starts_with("| divisorial a=1 "));
    assert!(lines[4].ends_with("Y_{6,6} ⊂ P(1,1,2,3,3,5)"));
}
