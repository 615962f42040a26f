//! Explicit quartics, their embeddings and weighted blowups, and the golden
//! tables.

mod normalize;
mod tables;

pub use normalize::{decomposition_matches, endpoint_matches, normalize};
pub use tables::{reproduce_table, reproduce_table_with, BoundsRow, BudgetRow, Table1Row, Table2Row, TableReport, Which, TABLE1};

use crate::link::locus::{projective_points, PointSet};
use crate::link::{GradedSystem, LinkError};
use crate::poly::{parse_poly, rat, vars, GroebnerError, ParseError, Poly, Vars};
use crate::singularity::{Germ, SingularityError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("excluded: non-factorial")]
    NonFactorial,
    #[error("parameter out of range: need 3 <= i+j <= 4, got ({0},{1})")]
    OutOfRange(u32, u32),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("degenerate representative: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Expected verdicts, stored as printed and never computed.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct ExpectedLink {
    pub decomposition: Option<String>,
    pub endpoint: Option<String>,
    /// Discrepancy of the initial extraction.
    pub discrepancy: String,
    /// Discrepancy of the final contraction, when stated.
    pub end_discrepancy: Option<String>,
    /// Number of curves flipped, flopped or antiflipped, when stated.
    pub curves: Option<u64>,
    pub database_id: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GallerySystem {
    /// Blowup weights of the germ coordinates, e.g. `(2,1,1,1)`.
    pub weights: String,
    /// Table 2 row this system reproduces, if any.
    pub row: Option<String>,
    pub system: GradedSystem,
    pub unproject: bool,
    /// `(name, definition)` of each extra coordinate.
    pub definitions: Vec<(String, String)>,
    /// Last equation, written in the extra coordinates.
    pub relation: String,
    pub expected: ExpectedLink,
}

impl GallerySystem {
    /// The quartic obtained by substituting the definitions into the relation.
    pub fn recovered_quartic(&self) -> Result<Poly, GalleryError> {
        let mut names: Vec<&str> = QUARTIC_VARS.to_vec();
        names.extend(self.definitions.iter().map(|(n, _)| n.as_str()));
        let v = vars(&names);
        let mut p = parse_poly(&self.relation, &v)?;
        for (k, (_, def)) in self.definitions.iter().enumerate() {
            let q = parse_poly(def, &v)?;
            p = p.substitute_var(5 + k, &q);
        }
        let x = vars(&QUARTIC_VARS);
        Ok(p.embed(&x).expect("definitions only involve x0..x4"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GalleryCase {
    pub name: String,
    pub quartic: Poly,
    /// The quartic in the chart `x0 = 1`, in coordinates `x, y, z, t`.
    pub germ: Germ,
    /// Singularity type as printed, e.g. `cA_5`.
    pub expected_germ: String,
    pub systems: Vec<GallerySystem>,
}

impl GalleryCase {
    /// Each system as standard system JSON, tagged with its weights.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "quartic": self.quartic.to_string(),
            "germ": {"vars": ["x", "y", "z", "t"], "poly": self.germ.poly().to_string()},
            "expected_germ": self.expected_germ,
            "systems": self.systems.iter().map(|s| serde_json::json!({
                "weights": s.weights,
                "row": s.row,
                "unproject": s.unproject,
                "expected": s.expected,
                "system": s.system.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

const QUARTIC_VARS: [&str; 5] = ["x0", "x1", "x2", "x3", "x4"];
const ALPHA: &str = "x0*(x1+x2) - (x3^2+x4^2)";
const BETA: &str = "x0*(x1-x2) - (x3^2-x4^2)";

fn quartic_vars() -> Vars {
    vars(&QUARTIC_VARS)
}

/// Affine chart `x0 = 1`, renamed to `x, y, z, t`.
fn chart_germ(quartic: &Poly) -> Result<Germ, GalleryError> {
    let p = quartic.eval_var(0, &rat(1));
    let v = vars(&["x", "y", "z", "t"]);
    let terms = p.terms().map(|(e, c)| (e[1..].to_vec(), c.clone()));
    Ok(Germ::new(Poly::from_terms(v, terms))?)
}

struct Spec<'a> {
    weights: &'a str,
    row: Option<&'a str>,
    /// Blowup weights of `x0..x4` followed by those of the extra coordinates.
    blowup: Vec<i64>,
    definitions: Vec<(&'a str, &'a str)>,
    relation: &'a str,
    unproject: bool,
    expected: ExpectedLink,
}

fn build(s: Spec<'_>, metadata: &str) -> Result<GallerySystem, GalleryError> {
    let mut names: Vec<&str> = QUARTIC_VARS.to_vec();
    let mut degrees = vec![1i64; 5];
    let mut eqs: Vec<String> = Vec::new();
    for (n, d) in &s.definitions {
        names.push(n);
        degrees.push(2);
        eqs.push(format!("{} - ({})", n, d));
    }
    eqs.push(s.relation.to_string());
    let eq_refs: Vec<&str> = eqs.iter().map(|e| e.as_str()).collect();
    let meta = format!("{} {}", metadata, s.weights);
    let system = GradedSystem::weighted_blowup(&names, &degrees, &s.blowup, &eq_refs, "u", meta)?;
    Ok(GallerySystem {
        weights: s.weights.to_string(),
        row: s.row.map(str::to_string),
        system,
        unproject: s.unproject,
        definitions: s.definitions.iter().map(|(n, d)| (n.to_string(), d.to_string())).collect(),
        relation: s.relation.to_string(),
        expected: s.expected,
    })
}

fn expect(decomposition: Option<&str>, endpoint: Option<&str>) -> ExpectedLink {
    ExpectedLink {
        decomposition: decomposition.map(str::to_string),
        endpoint: endpoint.map(str::to_string),
        discrepancy: "1".into(),
        ..Default::default()
    }
}

/// `n` of the cA_n point on `X^{i,j}`.
fn family_n(i: u32, j: u32) -> u32 {
    tables::TABLE1.iter().find(|r| r.0 == (i, j)).map_or(0, |r| r.1)
}

/// Table 2 entries for `X^{i,j}`: `(weights, w, row, decomposition, endpoint)`.
fn table2_entries(i: u32, j: u32) -> Vec<(&'static str, i64, &'static str, Option<&'static str>, &'static str)> {
    match (i, j) {
        (0, 3) => vec![(
            "(2,1,1,1)",
            1,
            "cA_2 (2,1,1,1)",
            Some(r"12\text{ flops}"),
            r"Y_{3,4}\subset\mathbb{P}(1,1,1,1,2,2)",
        )],
        (0, 4) => vec![("(3,1,1,1)", 1, "cA_3 (3,1,1,1) for X^{0,4}", None, r"\text{ bad link }")],
        (1, 2) => vec![("(2,2,1,1)", 2, "cA_3 (2,2,1,1)", Some(r"\text{4 flops}"), r"dP_2\text{ fibration over }\mathbb{P}^1")],
        (1, 3) => vec![(
            "(3,2,1,1)",
            2,
            "cA_4 (3,2,1,1)",
            Some(r"\text{2 flops then flip }(3,1,1,-1,-1;2)"),
            r"dP_3\text{ fibration over }\mathbb{P}^1",
        )],
        (2, 2) => vec![
            ("(4,2,1,1)", 2, "cA_5 (4,2,1,1)", Some(r"\text{2 flops}"), r"\text{conic bundle over }\mathbb{P}(1,1,2)"),
            (
                "(3,3,1,1)",
                2,
                "cA_5 (3,3,1,1)",
                Some(r"\mathbb Cong \text{then 2 flips }(3,1,1,-1,-1;2)"),
                r"dP_4\text{ fibration over }\mathbb{P}^1",
            ),
        ],
        (3, 1) => vec![
            ("(5,2,1,1)", 2, "cA_6 (5,2,1,1)", Some(r"\text{2 flops}"), r"Y_{6,6}\subset\mathbb{P}(1,1,2,3,3,5)"),
            (
                "(4,3,1,1)",
                2,
                "cA_6 (4,3,1,1)",
                Some(r"\mathbb Cong \text{then flip }(3,1,1,-1,-1;2)"),
                r"\text{conic bundle over }\mathbb{P}(1,1,2)",
            ),
        ],
        _ => vec![],
    }
}

/// The quartic `X^{i,j}` with one system per admissible blowup weight.
pub fn make_family(i: u32, j: u32) -> Result<GalleryCase, GalleryError> {
    if (i, j) == (4, 0) {
        return Err(GalleryError::NonFactorial);
    }
    if !(3..=4).contains(&(i + j)) {
        return Err(GalleryError::OutOfRange(i, j));
    }
    let n = family_n(i, j);
    let k = 4 - i - j;
    let text = format!(
        "(x0*x1-x3^2)^2 - (x0*x2-x4^2)^2 + x0^{k}*(x1^{i}*x3^{j} + x2^{i}*x4^{j}) + x1^4 + x2^4",
        k = k,
        i = i,
        j = j
    );
    let quartic = parse_poly(&text, &quartic_vars())?;
    let relation = format!("alpha*beta + x0^{k}*(x1^{i}*x3^{j} + x2^{i}*x4^{j}) + x1^4 + x2^4", k = k, i = i, j = j);
    let name = format!("X^{{{},{}}}", i, j);

    // (w, r) pairs: w1 = w2 = 1 with r = 1, 2 when i = 0; w1 = w2 = 2 with r >= 2
    let mut pairs: Vec<(i64, u32)> = Vec::new();
    if i == 0 {
        pairs.extend((1..=2).filter(|&r| r <= n + 1 - r).map(|r| (1, r)));
    }
    pairs.extend((2..=n).filter(|&r| r <= n + 1 - r).map(|r| (2, r)));
    let table = table2_entries(i, j);

    let mut systems = Vec::new();
    for (w, r) in pairs {
        let (r1, r2) = (i64::from(n + 1 - r), i64::from(r));
        let weights = format!("({},{},1,1)", r1, r2);
        let entry = table.iter().find(|e| e.0 == weights && e.1 == w);
        let bad = entry.map_or(false, |e| e.4.contains("bad link"));
        let expected = match entry {
            Some(e) => expect(e.3, Some(e.4)),
            None => expect(None, None),
        };
        let mut expected = expected;
        if (i, j, r1, r2) == (3, 1, 5, 2) {
            expected.database_id = Some(41920);
        }
        systems.push(build(
            Spec {
                weights: &weights,
                row: entry.map(|e| e.2),
                blowup: vec![0, w, w, 1, 1, r1, r2],
                definitions: vec![("alpha", ALPHA), ("beta", BETA)],
                relation: &relation,
                // the bad link is the configuration of the blowup itself
                unproject: !bad,
                expected,
            },
            &format!("{} w={}", name, w),
        )?);
    }
    if (i, j) == (1, 2) {
        // quadratic involution: x3^2, x4^2 split unevenly between alpha and beta
        systems.push(build(
            Spec {
                weights: "(3,1,1,1)",
                row: Some("cA_3 (3,1,1,1) for X^{1,2}"),
                blowup: vec![0, 1, 1, 1, 1, 3, 1],
                definitions: vec![
                    ("alpha", "x0*(x1+x2) - 1/2*x3^2 - 3/2*x4^2"),
                    ("beta", "x0*(x1-x2) - 1/2*x3^2 + 3/2*x4^2"),
                ],
                relation: "alpha*beta + 3/4*x3^4 + 5/4*x4^4 + x1^4 + x2^4",
                unproject: true,
                expected: expect(Some(r"8\text{ flops}"), Some(r"X^{1,2}\quad(\star)")),
            },
            &format!("{} w=1", name),
        )?);
    }
    Ok(GalleryCase {
        name,
        germ: chart_germ(&quartic)?,
        quartic,
        expected_germ: format!("cA_{}", n),
        systems,
    })
}

pub const NAMED_EXAMPLES: [&str; 7] = ["cA7", "antiflip-cA2", "cD4", "cD5", "cE6", "cE7", "cE8"];

/// Representative of the general quartic `f4` in the cD4 example.
pub const CD4_F4: &str = "x1^4 + x2^4 + x3^4 + x4^4 + x1*x2*x3*x4";

pub fn make_named_example(name: &str) -> Result<GalleryCase, GalleryError> {
    let (quartic, germ, spec): (String, &str, Spec<'_>) = match name {
        "cA7" => (
            "(x0*x1-x3^2)^2 - (x0*x2-x4^2)^2 + x0*x1^3 - x1^2*x3^2 + x1^4 + x2^4".into(),
            "cA_7",
            Spec {
                weights: "(4,4,1,1)",
                row: None,
                blowup: vec![0, 2, 2, 1, 1, 4, 4],
                definitions: vec![("alpha", ALPHA), ("beta", BETA)],
                relation: "alpha*beta + 1/2*x1^2*(alpha+beta) + x1^4 + x2^4",
                unproject: true,
                expected: expect(
                    Some("isomorphism"),
                    Some(r"conic bundle over the quartic surface $S_4\subset \mathbb{P}(1,1,2,2)$"),
                ),
            },
        ),
        "antiflip-cA2" => (
            "x0*x1*(x0*x2-x4^2) + x0*(x2^3+x3^3) - x1^4 + x2^4 + x3^4".into(),
            "cA_2",
            Spec {
                weights: "(3,3,2,1)",
                row: None,
                blowup: vec![0, 2, 2, 2, 1, 3, 3],
                definitions: vec![("alpha", "x0*x1"), ("beta", "x0*x2 - x4^2")],
                relation: "alpha*beta + x0*(x2^3+x3^3) - x1^4 + x2^4 + x3^4",
                unproject: true,
                expected: ExpectedLink {
                    decomposition: Some("(7,1,1,-3,-1; 4)".into()),
                    endpoint: Some(r"Y_{4,4}\subset \mathbb{P}(1^4, 2, 3)".into()),
                    discrepancy: "2".into(),
                    end_discrepancy: Some("2".into()),
                    curves: Some(4),
                    database_id: Some(16204),
                },
            },
        ),
        "cD4" => {
            check_cd4_transversality()?;
            (
                format!("x0^2*x1^2 - x0*(x2^3+x3^3+x4^3) + {}", CD4_F4),
                "cD_4",
                Spec {
                    weights: "(2,1,1,1)",
                    row: None,
                    blowup: vec![0, 2, 1, 1, 1],
                    definitions: vec![],
                    relation: "",
                    unproject: true,
                    expected: ExpectedLink {
                        curves: Some(12),
                        ..expect(Some("flop in $12$ lines"), Some(r"Y_{3,4}\subset \mathbb{P}(1^4, 2^2)"))
                    },
                },
            )
        }
        "cD5" => (
            "x0^2*x1^2 + x0*x2^2*x3 + x1^4 + x2^4 + x3^4 + x4^4".into(),
            "cD_5",
            Spec {
                weights: "(2,1,2,1)",
                row: None,
                blowup: vec![0, 2, 1, 2, 1],
                definitions: vec![],
                relation: "",
                unproject: true,
                expected: ExpectedLink {
                    curves: Some(4),
                    ..expect(Some("flop in $4$ lines"), Some("del Pezzo fibration of degree $2$"))
                },
            },
        ),
        "cE6" => (
            "x0^2*x1^2 + x0*x2^3 + x1^4 + x2^4 + x3^4 + x4^4".into(),
            "cE_6",
            Spec {
                weights: "(2,2,1,1)",
                row: None,
                blowup: vec![0, 2, 2, 1, 1],
                definitions: vec![],
                relation: "",
                unproject: true,
                expected: ExpectedLink {
                    curves: Some(4),
                    ..expect(Some("flop in $4$ lines"), Some("del Pezzo fibration of degree $2$"))
                },
            },
        ),
        "cE7" => (
            "(x0*x1-x4^2)^2 + x0*x2^3 + x2*x3^3 + x1^4 + x2^4".into(),
            "cE_7",
            Spec {
                weights: "(2,2,2,1,3)",
                row: None,
                blowup: vec![0, 2, 2, 2, 1, 3],
                definitions: vec![("alpha", "x0*x1 - x4^2")],
                relation: "alpha^2 + x0*x2^3 + x2*x3^3 + x1^4 + x2^4",
                unproject: true,
                expected: expect(None, Some("conic bundle")),
            },
        ),
        "cE8" => (
            "(x0*x1-x3^2-x4^2)^2 + x0*x2^3 + x0*x1^2*(x3+x4) + x1^4 + x2^4".into(),
            "cE_8",
            Spec {
                weights: "(3,2,1,1,3)",
                row: None,
                blowup: vec![0, 3, 2, 1, 1, 3],
                definitions: vec![("beta", "x0*x1 - x3^2 - x4^2")],
                relation: "beta^2 + x0*x2^3 + x0*x1^2*(x3+x4) + x1^4 + x2^4",
                unproject: true,
                expected: ExpectedLink {
                    database_id: Some(40369),
                    ..expect(None, Some(r"Y_{4,6}\subset \mathbb{P}(1^2, 2^2, 3^2)"))
                },
            },
        ),
        other => return Err(GalleryError::UnknownCase(other.to_string())),
    };
    let poly = parse_poly(&quartic, &quartic_vars())?;
    let spec = if spec.relation.is_empty() { Spec { relation: &quartic, ..spec } } else { spec };
    let system = build(spec, name)?;
    Ok(GalleryCase {
        name: name.to_string(),
        germ: chart_germ(&poly)?,
        quartic: poly,
        expected_germ: germ.to_string(),
        systems: vec![system],
    })
}

/// `{x2^3+x3^3+x4^3 = f4(0,x2,x3,x4) = 0}` must be 12 reduced points.
pub fn check_cd4_transversality() -> Result<(), GalleryError> {
    let v = vars(&["x2", "x3", "x4"]);
    let cubic = parse_poly("x2^3 + x3^3 + x4^3", &v)?;
    let f4 = parse_poly(CD4_F4, &vars(&["x1", "x2", "x3", "x4"]))?.eval_var(0, &rat(0));
    let f4 = Poly::from_terms(v, f4.terms().map(|(e, c)| (e[1..].to_vec(), c.clone())));
    match projective_points(&[cubic, f4], 3)? {
        PointSet::Finite { count: 12, reduced: true } => Ok(()),
        other => Err(GalleryError::Degenerate(format!("cD4 representative f4 gives {:?}, not 12 reduced points", other))),
    }
}

/// Every named example and every `X^{i,j}`.
pub fn all_cases() -> Result<Vec<GalleryCase>, GalleryError> {
    let mut out = Vec::new();
    for (i, j) in TABLE1_ORDER {
        out.push(make_family(i, j)?);
    }
    for n in NAMED_EXAMPLES {
        out.push(make_named_example(n)?);
    }
    Ok(out)
}

/// Column order of Table 1.
pub const TABLE1_ORDER: [(u32, u32); 8] = [(0, 4), (1, 3), (2, 2), (3, 1), (0, 3), (1, 2), (2, 1), (3, 0)];
