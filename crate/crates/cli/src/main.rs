use clap::{Parser, ValueEnum};
use sarkisov::gallery::{make_family, make_named_example, reproduce_table_with, GalleryCase, Which};
use sarkisov::link::{render_dot, render_text, run_link_with, GradedSystem, LinkOptions, LinkReport};
use sarkisov::poly::{parse_poly, vars, QuotientDim};
use sarkisov::singularity::{classify_cdv, milnor_number, Germ, MilnorRoute, SingularityError, DEFAULT_MAX_JET};
use sarkisov::toric::{chamber_scan, classify_wall, ToricAmbient, WallKind};
use serde_json::{json, Value};
use std::fmt::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verb {
    Classify,
    Milnor,
    Tworay,
    Link,
    Gallery,
    Tables,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Formula,
    Groebner,
    Jet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    Table1,
    Table2,
    Bounds,
}

/// Compound Du Val germs, quartic bounds and toric 2-ray links.
#[derive(Debug, Parser)]
#[command(name = "sarkisov", version)]
struct Cli {
    verb: Verb,
    /// Germ, ambient, system or gallery case JSON.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Named gallery case: cA7, antiflip-cA2, cD4, cD5, cE6, cE7, cE8 or Xij.
    #[arg(long)]
    case: Option<String>,
    #[arg(long = "i")]
    i: Option<u32>,
    #[arg(long = "j")]
    j: Option<u32>,
    #[arg(long, value_enum)]
    which: Option<Table>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_MAX_JET)]
    max_jet: u32,
    #[arg(long, value_enum)]
    oracle: Option<Oracle>,
}

/// A failed command: exit 1 for a verdict or validation failure, 2 for bad input.
enum Failure {
    Verdict(String),
    Input(String),
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure::Input(e.to_string())
    }
}

/// What a command printed, and whether it counts as a mismatch.
struct Output {
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Verdict(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    if cli.format == Format::Dot && cli.verb != Verb::Link {
        return Err(Failure::Input("dot output is only available for link reports".into()));
    }
    match cli.verb {
        Verb::Classify => classify(cli),
        Verb::Milnor => milnor(cli),
        Verb::Tworay => tworay(cli),
        Verb::Link => link(cli),
        Verb::Gallery => gallery(cli),
        Verb::Tables => tables(cli),
    }
}

fn with_version(mut v: Value) -> Value {
    match v.as_object_mut() {
        Some(m) => {
            m.insert("tool_version".into(), json!(TOOL_VERSION));
            v
        }
        None => json!({ "tool_version": TOOL_VERSION, "report": v }),
    }
}

fn json_output(v: Value, ok: bool) -> Output {
    let mut text = serde_json::to_string_pretty(&with_version(v)).expect("JSON values serialize");
    text.push('\n');
    Output { text, ok }
}

fn read_input(cli: &Cli) -> Result<Option<Value>, Failure> {
    let Some(path) = &cli.input else { return Ok(None) };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))?;
    let v = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))?;
    Ok(Some(v))
}

/// `Xij` names a family member, anything else a named example.
fn case_by_name(name: &str) -> Result<GalleryCase, Failure> {
    let digits = name.strip_prefix('X').filter(|d| d.len() == 2 && d.bytes().all(|b| b.is_ascii_digit()));
    match digits {
        Some(d) => {
            let (i, j) = (u32::from(d.as_bytes()[0] - b'0'), u32::from(d.as_bytes()[1] - b'0'));
            make_family(i, j).map_err(Failure::input)
        }
        None => make_named_example(name).map_err(Failure::input),
    }
}

fn selected_case(cli: &Cli) -> Result<Option<GalleryCase>, Failure> {
    match (&cli.case, cli.i, cli.j) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => Err(Failure::Input("give either --case or --i/--j".into())),
        (Some(name), None, None) => case_by_name(name).map(Some),
        (None, Some(i), Some(j)) => make_family(i, j).map(Some).map_err(Failure::input),
        (None, Some(_), None) | (None, None, Some(_)) => Err(Failure::Input("--i and --j go together".into())),
        (None, None, None) => Ok(None),
    }
}

fn parse_germ(v: &Value) -> Result<Germ, Failure> {
    // a gallery case carries its germ
    let v = v.get("germ").unwrap_or(v);
    let names: Vec<&str> = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| Failure::Input("germ JSON: missing `vars`".into()))?
        .iter()
        .map(|n| n.as_str().ok_or_else(|| Failure::Input("germ JSON: `vars` must hold strings".into())))
        .collect::<Result<_, _>>()?;
    let poly = v
        .get("poly")
        .and_then(Value::as_str)
        .ok_or_else(|| Failure::Input("germ JSON: missing `poly`".into()))?;
    let p = parse_poly(poly, &vars(&names)).map_err(Failure::input)?;
    Germ::new(p).map_err(Failure::input)
}

fn germ(cli: &Cli) -> Result<Germ, Failure> {
    if let Some(v) = read_input(cli)? {
        return parse_germ(&v);
    }
    match selected_case(cli)? {
        Some(c) => Ok(c.germ),
        None => Err(Failure::Input("no germ given: use --input, --case or --i/--j".into())),
    }
}

fn classify(cli: &Cli) -> Result<Output, Failure> {
    let g = germ(cli)?;
    let class = classify_cdv(&g, cli.max_jet).map_err(Failure::input)?;
    Ok(match cli.format {
        Format::Json => json_output(class.to_json(), true),
        _ => {
            let mut text = format!("{}\n", class.kind);
            if let Some(c) = &class.certificate {
                let _ = writeln!(text, "rank {} at jet {}, residual {}", c.rank, c.jet, c.residual);
            }
            Output { text, ok: true }
        }
    })
}

fn route_name(r: MilnorRoute) -> &'static str {
    match r {
        MilnorRoute::Formula => "formula",
        MilnorRoute::Groebner => "groebner",
        MilnorRoute::Jet => "jet",
    }
}

fn milnor(cli: &Cli) -> Result<Output, Failure> {
    let g = germ(cli)?;
    let routes = match cli.oracle {
        Some(Oracle::Formula) => vec![MilnorRoute::Formula],
        Some(Oracle::Groebner) => vec![MilnorRoute::Groebner],
        Some(Oracle::Jet) => vec![MilnorRoute::Jet],
        None => vec![MilnorRoute::Formula, MilnorRoute::Groebner, MilnorRoute::Jet],
    };
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for r in routes {
        let row = match milnor_number(&g, r, cli.max_jet) {
            Ok(mu) => {
                values.push(mu.clone());
                match mu {
                    QuotientDim::Finite(k) => json!({ "route": route_name(r), "mu": k }),
                    QuotientDim::Infinite => json!({ "route": route_name(r), "mu": "infinite" }),
                }
            }
            Err(SingularityError::Smooth) => {
                values.push(QuotientDim::Finite(0));
                json!({ "route": route_name(r), "mu": 0 })
            }
            Err(e @ SingularityError::NotApplicable(_)) if cli.oracle.is_none() => {
                json!({ "route": route_name(r), "error": e.to_string() })
            }
            Err(e @ (SingularityError::NotThroughOrigin | SingularityError::Arity(_))) => {
                return Err(Failure::input(e));
            }
            Err(e) => return Err(Failure::Verdict(e.to_string())),
        };
        rows.push(row);
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if values.is_empty() {
        return Err(Failure::Verdict("no route applies to this germ".into()));
    }
    if cli.format == Format::Json {
        return Ok(json_output(json!({ "routes": rows, "agree": agree }), agree));
    }
    let mut text = String::new();
    for r in &rows {
        let value = r.get("mu").map_or_else(|| r["error"].as_str().unwrap_or("").to_string(), |m| m.to_string());
        let _ = writeln!(text, "{:<9}{}", r["route"].as_str().unwrap_or(""), value.trim_matches('"'));
    }
    if !agree {
        text.push_str("routes disagree\n");
    }
    Ok(Output { text, ok: agree })
}

/// Systems to run: from the input file (a system or a whole gallery case)
/// or from a case selector.
fn systems(cli: &Cli) -> Result<Vec<(GradedSystem, bool)>, Failure> {
    if let Some(v) = read_input(cli)? {
        if let Some(list) = v.get("systems").and_then(Value::as_array) {
            return list
                .iter()
                .map(|s| {
                    let sys = GradedSystem::from_json(s.get("system").unwrap_or(s)).map_err(Failure::input)?;
                    Ok((sys, s.get("unproject").and_then(Value::as_bool).unwrap_or(true)))
                })
                .collect();
        }
        let unproject = v.get("unproject").and_then(Value::as_bool).unwrap_or(true);
        return Ok(vec![(GradedSystem::from_json(&v).map_err(Failure::input)?, unproject)]);
    }
    match selected_case(cli)? {
        Some(c) => Ok(c.systems.into_iter().map(|s| (s.system, s.unproject)).collect()),
        None => Err(Failure::Input("no system given: use --input, --case or --i/--j".into())),
    }
}

fn ambient(cli: &Cli) -> Result<ToricAmbient, Failure> {
    if let Some(v) = read_input(cli)? {
        let v = match v.get("systems").and_then(Value::as_array) {
            Some(list) => list
                .first()
                .and_then(|s| s.get("system"))
                .cloned()
                .ok_or_else(|| Failure::Input("gallery case without systems".into()))?,
            None => v,
        };
        return ToricAmbient::from_json(&v).map_err(Failure::input);
    }
    systems(cli)?
        .into_iter()
        .next()
        .map(|(s, _)| s.ambient().clone())
        .ok_or_else(|| Failure::Input("gallery case without systems".into()))
}

fn tworay(cli: &Cli) -> Result<Output, Failure> {
    let a = ambient(cli)?;
    let ch = chamber_scan(&a);
    let names = a.names();
    let mut walls = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "Eff {}", ch.eff);
    let _ = writeln!(text, "Mov {}", ch.mov.map_or("0".to_string(), |m| m.to_string()));
    let _ = writeln!(text, "initial nef {}", ch.initial_nef);
    for r in &ch.walls {
        let w = classify_wall(&a, *r).map_err(|e| Failure::Verdict(e.to_string()))?;
        let kind = match &w.kind {
            WallKind::Divisorial { exceptional } => format!("divisorial, contracts {}", names[*exceptional]),
            WallKind::Small => "small".to_string(),
            WallKind::Fibration { base } => {
                format!("fibration, base {}", base.iter().map(|&k| names[k].as_str()).collect::<Vec<_>>().join(","))
            }
        };
        let target = w.target.as_ref().map(|t| {
            let ws: Vec<String> = t.weights().iter().map(|w| w.to_string()).collect();
            format!(" -> P({})", ws.join(","))
        });
        let m = w.normalization;
        let _ = writeln!(
            text,
            "wall {}: {}{}; M = [[{},{}],[{},{}]]",
            r,
            kind,
            target.unwrap_or_default(),
            m[0][0],
            m[0][1],
            m[1][0],
            m[1][1]
        );
        let mut j = serde_json::to_value(&w).expect("wall crossings serialize");
        j["on_wall_names"] = json!(w.on_wall.iter().map(|&k| &names[k]).collect::<Vec<_>>());
        if let Some(t) = &w.target {
            j["target_weights"] = json!(t.weights());
            j["target_generators"] = json!(t.generator_names(names));
        }
        walls.push(j);
    }
    Ok(match cli.format {
        Format::Json => json_output(json!({ "ambient": a.to_json(), "chambers": ch, "walls": walls }), true),
        _ => Output { text, ok: true },
    })
}

fn link(cli: &Cli) -> Result<Output, Failure> {
    let mut reports: Vec<LinkReport> = Vec::new();
    for (s, unproject) in systems(cli)? {
        reports.push(run_link_with(&s, LinkOptions { unproject }).map_err(|e| Failure::Verdict(e.to_string()))?);
    }
    let ok = reports.iter().all(|r| r.checklist.all_passed());
    Ok(match cli.format {
        Format::Json => {
            let v = serde_json::to_value(&reports).expect("link reports serialize");
            json_output(json!({ "links": v }), ok)
        }
        Format::Dot => Output { text: reports.iter().map(render_dot).collect(), ok },
        Format::Text => Output { text: reports.iter().map(render_text).collect::<Vec<_>>().join("\n"), ok },
    })
}

fn gallery(cli: &Cli) -> Result<Output, Failure> {
    let case = selected_case(cli)?;
    let Some(c) = case else {
        let mut names: Vec<String> = sarkisov::gallery::TABLE1.iter().map(|((i, j), _)| format!("X{}{}", i, j)).collect();
        names.extend(sarkisov::gallery::NAMED_EXAMPLES.iter().map(|s| s.to_string()));
        return Ok(match cli.format {
            Format::Json => json_output(json!({ "cases": names }), true),
            _ => Output { text: names.join("\n") + "\n", ok: true },
        });
    };
    Ok(match cli.format {
        Format::Json => json_output(c.to_json(), true),
        _ => {
            let mut text = String::new();
            let _ = writeln!(text, "{} ({})", c.name, c.expected_germ);
            let _ = writeln!(text, "quartic {}", c.quartic);
            for s in &c.systems {
                let _ = writeln!(text, "weights {}{}", s.weights, s.row.as_ref().map_or(String::new(), |r| format!(", {}", r)));
                for (name, def) in &s.definitions {
                    let _ = writeln!(text, "  {} = {}", name, def);
                }
                let _ = writeln!(text, "  {}", s.relation);
            }
            Output { text, ok: true }
        }
    })
}

fn tables(cli: &Cli) -> Result<Output, Failure> {
    let which = match cli.which {
        Some(Table::Table1) => Which::Table1,
        Some(Table::Table2) => Which::Table2,
        Some(Table::Bounds) => Which::Bounds,
        None => return Err(Failure::Input("tables needs --which table1|table2|bounds".into())),
    };
    let report = reproduce_table_with(which, cli.max_jet).map_err(|e| Failure::Verdict(e.to_string()))?;
    let ok = report.all_match();
    Ok(match cli.format {
        Format::Json => json_output(serde_json::to_value(&report).expect("table reports serialize"), ok),
        _ => Output { text: report.render_text(), ok },
    })
}
