//! Running the restricted 2-ray game and checking the link conditions.

use super::restrict::{restrict_wall, FiberProfile, RestrictedCrossing, RestrictedKind, WpsCi};
use super::{GradedSystem, LinkError};
use crate::toric::{chamber_scan, classify_wall, Chambers, DivClass};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkOptions {
    /// Unproject equations lying in the ideal of the first irrelevant set.
    pub unproject: bool,
}

impl Default for LinkOptions {
    fn default() -> Self {
        LinkOptions { unproject: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Endpoint {
    Divisorial { target: WpsCi, discrepancy: String },
    Fibration { base: WpsCi, fiber: FiberProfile },
    Bad { reason: String },
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Divisorial { target, .. } => write!(f, "{}", target.label("Y")),
            Endpoint::Fibration { base, fiber } => write!(f, "{} over {}", fiber, base.label("S")),
            Endpoint::Bad { reason } => write!(f, "bad link: {}", reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "status", content = "note", rename_all = "snake_case")]
pub enum Check {
    Pass(String),
    Fail(String),
    Flagged(String),
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Checklist {
    pub mori_dream: Check,
    pub anticanonical_interior: Check,
    pub terminal_flips: Check,
    pub bad_link: Check,
}

impl Checklist {
    pub fn all_passed(&self) -> bool {
        [&self.mori_dream, &self.anticanonical_interior, &self.terminal_flips, &self.bad_link].iter().all(|c| c.passed())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LinkReport {
    pub metadata: String,
    /// The system the game ran on, after pivot elimination and unprojection.
    pub system: serde_json::Value,
    pub unprojected: Vec<String>,
    pub anticanonical: DivClass,
    pub chambers: Chambers,
    pub start: RestrictedCrossing,
    pub steps: Vec<RestrictedCrossing>,
    pub end: RestrictedCrossing,
    pub endpoint: Endpoint,
    pub checklist: Checklist,
}

impl LinkReport {
    /// Interior steps, e.g. `2 flops then flip (3,1,1,-1,-1;2)`; `≅` for
    /// isomorphisms.
    pub fn decomposition(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for st in &self.steps {
            let p = match &st.kind {
                RestrictedKind::Isomorphism => "≅".to_string(),
                RestrictedKind::Flop { curves } => {
                    format!("{} flop{}", curves.curves, if curves.curves == 1 { "" } else { "s" })
                }
                RestrictedKind::Flip { curves, descriptors } | RestrictedKind::Antiflip { curves, descriptors } => {
                    let word = if matches!(st.kind, RestrictedKind::Flip { .. }) { "flip" } else { "antiflip" };
                    let mut d: Vec<String> = descriptors.iter().map(|d| d.to_string()).collect();
                    d.dedup();
                    let n = curves.points;
                    if n == 1 {
                        format!("{} {}", word, d.join(" "))
                    } else {
                        format!("{} {}s {}", n, word, d.join(" "))
                    }
                }
                RestrictedKind::Degenerate { reason } => format!("degenerate ({})", reason),
                _ => "?".to_string(),
            };
            if p == "≅" && parts.last().map_or(false, |q| q == "≅") {
                continue;
            }
            parts.push(p);
        }
        parts.join(" then ")
    }

    pub fn flop_count(&self) -> u64 {
        self.steps
            .iter()
            .map(|s| match &s.kind {
                RestrictedKind::Flop { curves } => curves.curves,
                _ => 0,
            })
            .sum()
    }

    pub fn is_bad(&self) -> bool {
        !self.checklist.bad_link.passed()
    }

    pub fn has_antiflip(&self) -> bool {
        self.steps.iter().any(|s| matches!(s.kind, RestrictedKind::Antiflip { .. }))
    }

    pub fn discrepancies(&self) -> (Option<String>, Option<String>) {
        let a = |c: &RestrictedCrossing| match &c.kind {
            RestrictedKind::Divisorial { discrepancy, .. } => Some(discrepancy.clone()),
            _ => None,
        };
        (a(&self.start), a(&self.end))
    }

    /// `[divisorial a=1; 2 flops; divisorial a=1] endpoint ...`
    pub fn summary(&self) -> String {
        let mut parts = vec![step_word(&self.start)];
        parts.extend(self.steps.iter().map(step_word));
        parts.push(step_word(&self.end));
        format!("[{}] endpoint {}", parts.join("; "), self.endpoint)
    }
}

fn step_word(c: &RestrictedCrossing) -> String {
    match &c.kind {
        RestrictedKind::Isomorphism => "≅".into(),
        RestrictedKind::Flop { curves } => format!("{} flops", curves.curves),
        RestrictedKind::Flip { curves, descriptors } | RestrictedKind::Antiflip { curves, descriptors } => {
            let word = if matches!(c.kind, RestrictedKind::Flip { .. }) { "flip" } else { "antiflip" };
            let plural = if curves.points == 1 { "" } else { "s" };
            let d = descriptors.first().map(|d| d.to_string()).unwrap_or_default();
            format!("{} {}{} {}", curves.points, word, plural, d)
        }
        RestrictedKind::Divisorial { discrepancy, .. } => format!("divisorial a={}", discrepancy),
        RestrictedKind::Fibration { .. } => "fibration".into(),
        RestrictedKind::Degenerate { reason } => format!("degenerate: {}", reason),
    }
}

pub fn run_link(s: &GradedSystem) -> Result<LinkReport, LinkError> {
    run_link_with(s, LinkOptions::default())
}

pub fn run_link_with(s: &GradedSystem, opts: LinkOptions) -> Result<LinkReport, LinkError> {
    let z = if opts.unproject { s.normalize()? } else { s.eliminate_all_pivots()? };
    let unprojected: Vec<String> = z.vars().iter().filter(|v| s.ambient().index(v).is_none()).cloned().collect();
    let anti = z.anticanonical_class();
    let chambers = chamber_scan(z.ambient());
    let mov = chambers.mov.ok_or_else(|| LinkError::Internal("the movable cone is degenerate".into()))?;
    let mut crossings = Vec::new();
    for r in &chambers.walls {
        let w = classify_wall(z.ambient(), *r)?;
        crossings.push(restrict_wall(&z, &w)?);
    }
    if crossings.len() < 2 {
        return Err(LinkError::Internal("fewer than two walls in the movable cone".into()));
    }
    let end = crossings.pop().unwrap();
    let start = crossings.remove(0);
    if !matches!(start.kind, RestrictedKind::Divisorial { .. }) {
        return Err(LinkError::BadExceptional(z.exceptional().to_string()));
    }
    let steps = crossings;

    let mori_dream = Check::Pass("rank-2 toric restriction: Cox ring generated by the ambient variables".into());
    let anticanonical_interior = if mov.contains_interior(&anti) {
        Check::Pass(format!("-K = {} inside {}", anti, mov))
    } else {
        Check::Fail(format!("-K = {} not interior to {}", anti, mov))
    };
    let antiflips: Vec<String> = steps
        .iter()
        .filter_map(|c| match &c.kind {
            RestrictedKind::Antiflip { descriptors, .. } => {
                Some(descriptors.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "))
            }
            _ => None,
        })
        .collect();
    let terminal_flips = if antiflips.is_empty() {
        Check::Pass("no antiflips".into())
    } else {
        Check::Flagged(format!("antiflip {} needs a terminality check", antiflips.join(", ")))
    };
    let mut bad: Vec<String> = Vec::new();
    for c in steps.iter().chain([&start, &end]) {
        for f in &c.flags {
            if f != "antiflip" && f != "non-reduced contracted locus" {
                bad.push(format!("{}: {}", c.wall.ray, f));
            }
        }
    }
    let bad_link = if bad.is_empty() { Check::Pass("every step is a link step".into()) } else { Check::Flagged(bad.join("; ")) };
    let endpoint = match &end.kind {
        _ if !bad.is_empty() => Endpoint::Bad { reason: bad.join("; ") },
        RestrictedKind::Divisorial { target, discrepancy, .. } => {
            Endpoint::Divisorial { target: target.clone(), discrepancy: discrepancy.clone() }
        }
        RestrictedKind::Fibration { base, fiber } => Endpoint::Fibration { base: base.clone(), fiber: fiber.clone() },
        other => Endpoint::Bad { reason: format!("last wall is not an endpoint: {:?}", other) },
    };
    Ok(LinkReport {
        metadata: z.metadata().to_string(),
        system: z.to_json(),
        unprojected,
        anticanonical: anti,
        chambers,
        start,
        steps,
        end,
        endpoint,
        checklist: Checklist { mori_dream, anticanonical_interior, terminal_flips, bad_link },
    })
}

pub fn validate_link(s: &GradedSystem) -> Result<Checklist, LinkError> {
    Ok(run_link(s)?.checklist)
}
