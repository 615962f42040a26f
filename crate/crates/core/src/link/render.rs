use super::restrict::RestrictedKind;
use super::run::{Check, LinkReport};
use std::fmt::Write;

fn check_line(name: &str, c: &Check) -> String {
    match c {
        Check::Pass(n) => format!("  [pass] {}: {}", name, n),
        Check::Fail(n) => format!("  [FAIL] {}: {}", name, n),
        Check::Flagged(n) => format!("  [flag] {}: {}", name, n),
    }
}

/// The link as arrows: the chain of small steps on top, the two
/// contractions hanging off its ends.
pub fn render_diagram(r: &LinkReport) -> String {
    let n = r.steps.len();
    let left = format!("| {}", label(&r.start.kind));
    let mut top = String::from("Z0");
    for (i, s) in r.steps.iter().enumerate() {
        let _ = write!(top, " --{}--> Z{}", label(&s.kind), i + 1);
    }
    let last = format!("Z{}", n);
    // the last arrow stretches so that the right column clears the left labels
    let short = (left.chars().count() + 2).saturating_sub(top.chars().count() - last.chars().count());
    if short > 0 {
        let k = top.len() - last.len() - "> ".len();
        top.insert_str(k, &"-".repeat(short));
    }
    let right = top.chars().count() - last.chars().count();
    let row = |left: &str, right_text: &str| {
        let pad = right.saturating_sub(left.chars().count()).max(1);
        format!("{}{}{}", left, " ".repeat(pad), right_text)
    };
    let mut out = String::new();
    let _ = writeln!(out, "{}", top);
    let _ = writeln!(out, "{}", row("|", "|"));
    let _ = writeln!(out, "{}", row(&left, &format!("| {}", label(&r.end.kind))));
    let _ = writeln!(out, "{}", row("v", "v"));
    let _ = writeln!(out, "{}", row("X", &r.endpoint.to_string()));
    out
}

pub fn render_text(r: &LinkReport) -> String {
    let mut out = String::new();
    if !r.metadata.is_empty() {
        let _ = writeln!(out, "{}", r.metadata);
    }
    out.push_str(&render_diagram(r));
    let vars = r.system["vars"].as_array().cloned().unwrap_or_default();
    let _ = writeln!(
        out,
        "ambient: {}",
        vars.iter()
            .map(|v| format!("{}({},{})", v["name"].as_str().unwrap_or("?"), v["class"][0], v["class"][1]))
            .collect::<Vec<_>>()
            .join(" ")
    );
    for e in r.system["equations"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  0 = {}", e.as_str().unwrap_or(""));
    }
    if !r.unprojected.is_empty() {
        let _ = writeln!(out, "unprojection variables: {}", r.unprojected.join(", "));
    }
    let _ = writeln!(out, "-K = {}", r.anticanonical);
    if let Some(m) = r.chambers.mov {
        let _ = writeln!(out, "Mov = {}", m);
    }
    let _ = writeln!(out, "steps:");
    for c in std::iter::once(&r.start).chain(&r.steps).chain(std::iter::once(&r.end)) {
        let what = match &c.kind {
            RestrictedKind::Isomorphism => "isomorphism".to_string(),
            RestrictedKind::Flop { curves } => format!("{} flops over {} points", curves.curves, curves.points),
            RestrictedKind::Flip { curves, descriptors } | RestrictedKind::Antiflip { curves, descriptors } => format!(
                "{} {} at {} point(s), {} curve(s)",
                if matches!(c.kind, RestrictedKind::Flip { .. }) { "flip" } else { "antiflip" },
                descriptors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
                curves.points,
                curves.curves
            ),
            RestrictedKind::Divisorial { exceptional, discrepancy, target } => {
                format!("divisorial contraction of {{{} = 0}}, a = {}, to {}", exceptional, discrepancy, target.label("Y"))
            }
            RestrictedKind::Fibration { base, fiber } => format!("{} over {}", fiber, base.label("S")),
            RestrictedKind::Degenerate { reason } => format!("degenerate: {}", reason),
        };
        let _ = writeln!(out, "  wall {}: {}", c.wall.ray, what);
        for f in &c.flags {
            let _ = writeln!(out, "    flag: {}", f);
        }
    }
    let _ = writeln!(out, "endpoint: {}", r.endpoint);
    let _ = writeln!(out, "checklist:");
    let cl = &r.checklist;
    for (n, c) in [
        ("Mori dream space", &cl.mori_dream),
        ("-K interior to Mov", &cl.anticanonical_interior),
        ("terminal flips", &cl.terminal_flips),
        ("bad link", &cl.bad_link),
    ] {
        let _ = writeln!(out, "{}", check_line(n, c));
    }
    out
}

/// Graphviz rendering of the chain of models.
pub fn render_dot(r: &LinkReport) -> String {
    let mut out = String::from("digraph link {\n  rankdir=LR;\n");
    let n = r.steps.len();
    let _ = writeln!(out, "  X [label=\"X\"];");
    for i in 0..=n {
        let _ = writeln!(out, "  Z{} [label=\"Z{}\"];", i, i);
    }
    let _ = writeln!(out, "  Y [label=\"{}\"];", r.endpoint.to_string().replace('"', "'"));
    let _ = writeln!(out, "  Z0 -> X [label=\"{}\"];", label(&r.start.kind));
    for (i, s) in r.steps.iter().enumerate() {
        let _ = writeln!(out, "  Z{} -> Z{} [label=\"{}\", style=dashed];", i, i + 1, label(&s.kind));
    }
    let _ = writeln!(out, "  Z{} -> Y [label=\"{}\"];", n, label(&r.end.kind));
    out.push_str("}\n");
    out
}

fn label(k: &RestrictedKind) -> String {
    match k {
        RestrictedKind::Isomorphism => "iso".into(),
        RestrictedKind::Flop { curves } => format!("{} flops", curves.curves),
        RestrictedKind::Flip { descriptors, .. } => {
            format!("flip {}", descriptors.first().map(|d| d.to_string()).unwrap_or_default())
        }
        RestrictedKind::Antiflip { descriptors, .. } => {
            format!("antiflip {}", descriptors.first().map(|d| d.to_string()).unwrap_or_default())
        }
        RestrictedKind::Divisorial { discrepancy, .. } => format!("divisorial a={}", discrepancy),
        RestrictedKind::Fibration { .. } => "fibration".into(),
        RestrictedKind::Degenerate { .. } => "degenerate".into(),
    }
}
