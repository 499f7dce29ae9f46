//! Batch front end for the `raag` library: graph file parsing, command
//! dispatch and reports.
//!
//! Two input formats are accepted. The line format:
//!
//! ```text
//! # comment
//! vertices: w a1 a2 a3
//! edges: a1 a2, a1 a3, a2 a3
//! ```
//!
//! and JSON:
//!
//! ```text
//! {"vertices": ["w", "a1", "a2"], "edges": [["a1", "a2"]]}
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use raag::character::{build_surjection_with, check_inner_kernel, Certificate};
use raag::hgroup::TDecision;
use raag::identities::{
    check_crossed_lantern, check_m_transvection, check_tau_identity, crossed_lantern_pairs, m_transvection_triples,
    tau_adjacent_triples, tau_is_identity, tau_triples, IdentityCheck,
};
use raag::random::{ExperimentConfig, ExperimentResult};
use raag::relations::{Coverage, DayOptions};
use raag::{
    check_properties, compute_domination, decide_property_t, decompose, find_indicability_witness, Decomposition,
    Graph, PropertyReport,
};

/// Version of the JSON report layout.
pub const FORMAT_VERSION: u32 = 1;

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status when a property or hypothesis fails.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for unreadable or malformed input.
pub const EXIT_PARSE: i32 = 2;

/// A malformed graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn parse_error(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Builds a graph, attributing each name to the line it came from.
fn assemble(vertices: &[(String, usize)], edges: &[((String, String), usize)]) -> Result<Graph, ParseError> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, (name, line)) in vertices.iter().enumerate() {
        if index.insert(name, i).is_some() {
            return Err(parse_error(*line, format!("duplicate vertex `{name}`")));
        }
    }
    let mut pairs = Vec::with_capacity(edges.len());
    for ((u, v), line) in edges {
        let lookup = |x: &String| {
            index
                .get(x.as_str())
                .copied()
                .ok_or_else(|| parse_error(*line, format!("unknown vertex `{x}`")))
        };
        let (a, b) = (lookup(u)?, lookup(v)?);
        if a == b {
            return Err(parse_error(*line, format!("self-loop at vertex `{u}`")));
        }
        pairs.push((a, b));
    }
    let names = vertices.iter().map(|(n, _)| n.clone());
    Graph::new(names, &pairs).map_err(|e| parse_error(0, e.to_string()))
}

fn parse_lines(text: &str) -> Result<Graph, ParseError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| parse_error(line, format!("expected `vertices:` or `edges:`, found `{content}`")))?;
        match key.trim() {
            "vertices" => vertices.extend(rest.split_whitespace().map(|v| (v.to_string(), line))),
            "edges" => {
                for item in rest.split(',') {
                    let ends: Vec<&str> = item.split_whitespace().collect();
                    match ends.as_slice() {
                        [] => {}
                        [u, v] => edges.push(((u.to_string(), v.to_string()), line)),
                        _ => {
                            return Err(parse_error(
                                line,
                                format!("an edge needs exactly two endpoints, found `{}`", item.trim()),
                            ))
                        }
                    }
                }
            }
            other => return Err(parse_error(line, format!("unknown section `{other}`"))),
        }
    }
    assemble(&vertices, &edges)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

/// Line of the first occurrence of `"needle"` at or after `from`.
fn line_of(text: &str, needle: &str, from: usize) -> (usize, usize) {
    let quoted = format!("\"{needle}\"");
    match text[from..].find(&quoted) {
        Some(k) => (text[..from + k].matches('\n').count() + 1, from + k + quoted.len()),
        None => (text[..from].matches('\n').count() + 1, from),
    }
}

fn parse_json(text: &str) -> Result<Graph, ParseError> {
    let g: JsonGraph = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
    let mut pos = text.find("\"vertices\"").unwrap_or(0);
    let mut vertices = Vec::with_capacity(g.vertices.len());
    for v in g.vertices {
        let (line, next) = line_of(text, &v, pos);
        pos = next;
        vertices.push((v, line));
    }
    let mut pos = text.find("\"edges\"").unwrap_or(0);
    let mut edges = Vec::with_capacity(g.edges.len());
    for (u, v) in g.edges {
        let (line, next) = line_of(text, &u, pos);
        let (_, next) = line_of(text, &v, next);
        pos = next;
        edges.push(((u, v), line));
    }
    assemble(&vertices, &edges)
}

/// Parses either input format; JSON is recognized by a leading `{`.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_lines(text)
    }
}

/// The commands understood by [`run`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Analyze,
    Decompose,
    Surjection,
    DecideT,
    VerifyIdentities,
    RandomNl,
}

impl Command {
    pub fn needs_graph(self) -> bool {
        self != Command::RandomNl
    }
}

/// Flags shared by all commands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Options {
    pub seed: u64,
    pub max_enum: usize,
    pub max_power: u32,
    pub n: usize,
    pub c: f64,
    pub samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: raag::random::DEFAULT_SEED,
            max_enum: raag::relations::DEFAULT_RELATION_BOUND,
            max_power: 3,
            n: 500,
            c: 0.0,
            samples: 2000,
        }
    }
}

/// Summary of the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub classes: Vec<Vec<String>>,
}

/// The (NL) and indicability witnesses, by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b1_failure: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2_failure: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poison: Option<(String, String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indicability: Option<Indicability>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Indicability {
    pub w: String,
    pub y: Vec<String>,
    pub z: Vec<String>,
}

/// The character `π_Y − π_Z` with its certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurjectionSection {
    pub w: String,
    pub y: Vec<String>,
    pub z: Vec<String>,
    pub generators: usize,
    /// Generators with nonzero value.
    pub support: Vec<(String, i64)>,
    pub witness: String,
    pub inner_kernel: bool,
    /// Set when relations were sampled rather than enumerated.
    pub sampled: bool,
    pub certificate: Certificate,
}

/// Outcome of one identity family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFamily {
    pub family: String,
    pub checked: usize,
    pub functional: usize,
    pub sequential: usize,
    pub failures: Vec<String>,
}

/// The report printed by every command. Absent analyses are omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format: u32,
    pub tool: String,
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properties: Option<PropertyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Witnesses>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surjection: Option<SurjectionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_decision: Option<TDecision>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<IdentityFamily>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    fn new(command: Command) -> Self {
        Report {
            format: FORMAT_VERSION,
            tool: format!("raagtool {}", env!("CARGO_PKG_VERSION")),
            command,
            input: None,
            properties: None,
            witnesses: None,
            decomposition: None,
            surjection: None,
            t_decision: None,
            identities: None,
            experiment: None,
            error: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn names(g: &Graph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.name(v).to_string()).collect()
}

fn echo(g: &Graph) -> InputEcho {
    let d = compute_domination(g);
    InputEcho {
        vertices: g.names().to_vec(),
        edges: g.edges().map(|(u, v)| (g.name(u).to_string(), g.name(v).to_string())).collect(),
        classes: d.classes().iter().map(|c| names(g, c)).collect(),
    }
}

fn witnesses(g: &Graph, r: &PropertyReport) -> Witnesses {
    let pair = |p: Option<(usize, usize)>| p.map(|(a, b)| (g.name(a).to_string(), g.name(b).to_string()));
    Witnesses {
        b1_failure: pair(r.b1_failure_witness),
        b2_failure: pair(r.b2_failure_witness),
        poison: r
            .nl_witness
            .map(|(a, b, c)| (g.name(a).to_string(), g.name(b).to_string(), g.name(c).to_string())),
        indicability: find_indicability_witness(g).map(|(w, y, z)| Indicability {
            w: g.name(w).to_string(),
            y: names(g, &y),
            z: names(g, &z),
        }),
    }
}

fn family(name: &str, results: Vec<(String, raag::Result<IdentityCheck>)>) -> IdentityFamily {
    let mut f = IdentityFamily {
        family: name.to_string(),
        checked: results.len(),
        functional: 0,
        sequential: 0,
        failures: Vec::new(),
    };
    for (label, r) in results {
        match r {
            Ok(c) => {
                f.functional += usize::from(c.functional);
                f.sequential += usize::from(c.sequential);
            }
            Err(e) => f.failures.push(format!("{label}: {e}")),
        }
    }
    f
}

fn verify_identities(g: &Graph, max_power: u32) -> Vec<IdentityFamily> {
    let label3 = |a: usize, b: usize, c: usize| format!("({}, {}, {})", g.name(a), g.name(b), g.name(c));
    let mut lantern = Vec::new();
    for (v, w) in crossed_lantern_pairs(g) {
        for m in 0..=max_power {
            let label = format!("({}, {}), m = {m}", g.name(v), g.name(w));
            lantern.push((label, check_crossed_lantern(g, v, w, m)));
        }
    }
    let tau: Vec<_> = tau_triples(g)
        .into_iter()
        .map(|(u, v, w)| (label3(u, v, w), check_tau_identity(g, u, v, w)))
        .collect();
    let mut trivial = IdentityFamily {
        family: "trivial τ for adjacent u".into(),
        checked: 0,
        functional: 0,
        sequential: 0,
        failures: Vec::new(),
    };
    for (u, v, w) in tau_adjacent_triples(g) {
        trivial.checked += 1;
        match tau_is_identity(g, u, v, w) {
            Ok(true) => {
                trivial.functional += 1;
                trivial.sequential += 1;
            }
            Ok(false) => trivial.failures.push(format!("{} is not the identity", label3(u, v, w))),
            Err(e) => trivial.failures.push(format!("{}: {e}", label3(u, v, w))),
        }
    }
    let mut commutators = Vec::new();
    for (v, u, w) in m_transvection_triples(g) {
        for m in 1..=max_power.max(1) {
            let label = format!("{}, m = {m}", label3(v, u, w));
            commutators.push((label, check_m_transvection(g, v, u, w, m)));
        }
    }
    vec![
        family("crossed lantern", lantern),
        family("τ factorization", tau),
        trivial,
        family("transvection commutators", commutators),
    ]
}

/// Runs `command` and returns the report with its exit status.
pub fn run(command: Command, graph: Option<&Graph>, opts: &Options) -> (Report, i32) {
    let mut report = Report::new(command);
    let status = match (command, graph) {
        (Command::RandomNl, _) => {
            match ExperimentConfig::new(opts.n, opts.c, opts.samples, opts.seed).and_then(|c| raag::run_experiment(&c)) {
                Ok(r) => {
                    report.experiment = Some(r);
                    EXIT_OK
                }
                Err(e) => {
                    report.error = Some(e.to_string());
                    EXIT_FAILURE
                }
            }
        }
        (_, None) => {
            report.error = Some("this command needs a graph file".into());
            EXIT_PARSE
        }
        (_, Some(g)) => {
            report.input = Some(echo(g));
            run_on_graph(command, g, opts, &mut report)
        }
    };
    (report, status)
}

fn run_on_graph(command: Command, g: &Graph, opts: &Options, report: &mut Report) -> i32 {
    match command {
        Command::Analyze => {
            let r = check_properties(g);
            report.witnesses = Some(witnesses(g, &r));
            report.properties = Some(r);
            report.t_decision = Some(decide_property_t(g));
            EXIT_OK
        }
        Command::Decompose => {
            let r = check_properties(g);
            report.witnesses = Some(witnesses(g, &r));
            report.properties = Some(r);
            match decompose(g) {
                Ok(d) => {
                    report.decomposition = Some(d);
                    EXIT_OK
                }
                Err(e) => {
                    report.error = Some(e.to_string());
                    EXIT_FAILURE
                }
            }
        }
        Command::Surjection => {
            let Some((w, y, z)) = find_indicability_witness(g) else {
                report.error = Some(
                    "no vertex w dominating no other vertex with Γ − st(w) disconnected".to_string(),
                );
                return EXIT_FAILURE;
            };
            let day = DayOptions {
                max_enum: opts.max_enum,
                seed: opts.seed,
                ..DayOptions::r0()
            };
            match build_surjection_with(g, w, &y, &z, &day) {
                Ok(s) => {
                    let certificate = s.character.certificate.clone().expect("surjections carry certificates");
                    report.surjection = Some(SurjectionSection {
                        w: g.name(w).to_string(),
                        y: names(g, &y),
                        z: names(g, &z),
                        generators: s.character.names.len(),
                        support: s.character.support().into_iter().map(|(n, v)| (n.to_string(), v)).collect(),
                        witness: s.witness.clone(),
                        inner_kernel: check_inner_kernel(g, &s.character),
                        sampled: matches!(certificate.coverage, Coverage::Sampled { .. }),
                        certificate,
                    });
                    EXIT_OK
                }
                Err(e) => {
                    report.error = Some(e.to_string());
                    EXIT_FAILURE
                }
            }
        }
        Command::DecideT => {
            report.t_decision = Some(decide_property_t(g));
            EXIT_OK
        }
        Command::VerifyIdentities => {
            let families = verify_identities(g, opts.max_power);
            let ok = families.iter().all(|f| f.failures.is_empty());
            report.identities = Some(families);
            if ok {
                EXIT_OK
            } else {
                EXIT_FAILURE
            }
        }
        Command::RandomNl => unreachable!("handled without a graph"),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Human-readable rendering of a report.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let w = &mut out;
    if let Some(input) = &report.input {
        let _ = writeln!(w, "graph: {} vertices, {} edges", input.vertices.len(), input.edges.len());
        let classes: Vec<String> = input.classes.iter().map(|c| format!("{{{}}}", c.join(","))).collect();
        let _ = writeln!(w, "domination classes (ascending): {}", classes.join(" "));
    }
    if let Some(p) = &report.properties {
        let _ = writeln!(
            w,
            "(B1) {}  (B2) {}  (B) {}  (NL) {}",
            yes(p.b1),
            yes(p.b2),
            yes(p.b),
            yes(p.nl)
        );
    }
    if let Some(x) = &report.witnesses {
        if let Some((a, b)) = &x.b1_failure {
            let _ = writeln!(w, "(B1) fails at {a}, {b}");
        }
        if let Some((a, b)) = &x.b2_failure {
            let _ = writeln!(w, "(B2) fails at {a} ≤ {b}");
        }
        if let Some((a, b, c)) = &x.poison {
            let _ = writeln!(w, "poison triple: {a}, {b}, {c}");
        }
        if let Some(i) = &x.indicability {
            let _ = writeln!(w, "indicability witness: w = {}, Y = {{{}}}, Z = {{{}}}", i.w, i.y.join(","), i.z.join(","));
        }
    }
    if let Some(d) = &report.decomposition {
        let mut factors: Vec<String> = d.free_ranks.iter().map(|r| format!("F{r}")).collect();
        if d.abelian_rank > 0 {
            factors.push(format!("Z^{}", d.abelian_rank));
        }
        let _ = writeln!(w, "A_Γ ≅ {}", if factors.is_empty() { "1".into() } else { factors.join(" × ") });
    }
    if let Some(s) = &report.surjection {
        let _ = writeln!(w, "π = π_Y − π_Z with w = {}, Y = {{{}}}, Z = {{{}}}", s.w, s.y.join(","), s.z.join(","));
        let _ = writeln!(w, "generators: {}, nonzero on {}", s.generators, s.support.len());
        let _ = writeln!(w, "π({}) = 1", s.witness);
        let coverage = if s.sampled { "sampled" } else { "exhaustive" };
        let sums = if s.certificate.all_zero { "all relation sums zero" } else { "nonzero sum found" };
        let _ = writeln!(w, "certificate: {} instances ({coverage}), {sums}", s.certificate.total());
        for (rel, count) in &s.certificate.counts {
            let _ = writeln!(w, "  {rel}: {count}");
        }
        let _ = writeln!(w, "vanishes on inner automorphisms: {}", yes(s.inner_kernel));
    }
    if let Some(t) = &report.t_decision {
        let _ = writeln!(w, "property (T): {} ({})", yes(t.has_t), t.diagnostic);
        if let Some(ch) = &t.character {
            for (name, v) in ch.support() {
                let _ = writeln!(w, "  character: {name} ↦ {v}");
            }
        }
    }
    if let Some(fams) = &report.identities {
        for f in fams {
            let _ = writeln!(
                w,
                "{}: {} checked, {} as composition, {} left to right, {} failed",
                f.family,
                f.checked,
                f.functional,
                f.sequential,
                f.failures.len()
            );
            for x in &f.failures {
                let _ = writeln!(w, "  {x}");
            }
        }
    }
    if let Some(e) = &report.experiment {
        let _ = writeln!(w, "n = {}, N = {}, c = {}, samples = {}, seed = {}", e.n, e.edges, e.c, e.samples, e.seed);
        let _ = writeln!(w, "isolated vertices: {:?}", e.isolated_histogram);
        let _ = writeln!(w, "TV distance to Poisson({:.4}): {:.4}", e.lambda, e.tv_distance);
        let _ = writeln!(
            w,
            "(NL) frequency {:.4}, lower bound {:.4}",
            e.empirical_nl_frequency, e.nl_lower_bound
        );
    }
    if let Some(e) = &report.error {
        let _ = writeln!(w, "error: {e}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "vertices: w a1 a2 a3 b1 b2 b3\nedges: a1 a2, a1 a3, a2 a3, b1 b2, b1 b3, b2 b3\n";

    #[test]
    fn line_format() {
        let g = parse_graph(EXAMPLE).unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(g.edge_count(), 6);
        let k1 = parse_graph("vertices: v\nedges:\n").unwrap();
        assert_eq!((k1.order(), k1.edge_count()), (1, 0));
        let commented = parse_graph("# a path\nvertices: a b # two\n\nedges: a b\n").unwrap();
        assert!(commented.adjacent(0, 1));
    }

    #[test]
    fn line_errors_carry_line_numbers() {
        let e = parse_graph("vertices: v\nedges: v v\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("self-loop"));
        let e = parse_graph("vertices: a a\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_graph("vertices: a b\n\nedges: a c\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("unknown vertex `c`"));
        let e = parse_graph("vertices: a b\nedges: a b c\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_graph("vertices: a\nnonsense\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn json_format() {
        let text = r#"{"vertices": ["w", "a1", "a2", "a3", "b1", "b2", "b3"],
            "edges": [["a1","a2"],["a1","a3"],["a2","a3"],["b1","b2"],["b1","b3"],["b2","b3"]]}"#;
        assert_eq!(parse_graph(text).unwrap(), parse_graph(EXAMPLE).unwrap());
        let e = parse_graph("{\"vertices\": [\"a\"],\n \"edges\": [[\"a\", \"b\"]]}").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_graph("{\"vertices\": [\"a\",\n \"a\"]}").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_graph("{\"vertices\": [1]}").is_err());
    }

    #[test]
    fn report_round_trips() {
        let g = parse_graph(EXAMPLE).unwrap();
        let (report, status) = run(Command::Analyze, Some(&g), &Options::default());
        assert_eq!(status, EXIT_OK);
        let json = report.to_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert!(json.contains("\"format\": 1"));
    }

    #[test]
    fn statuses() {
        let g = parse_graph(EXAMPLE).unwrap();
        assert_eq!(run(Command::Decompose, Some(&g), &Options::default()).1, EXIT_FAILURE);
        let d3 = parse_graph("vertices: x y z").unwrap();
        let (r, s) = run(Command::Decompose, Some(&d3), &Options::default());
        assert_eq!(s, EXIT_OK);
        assert_eq!(r.decomposition.unwrap().free_ranks, vec![3]);
        assert_eq!(run(Command::Surjection, Some(&d3), &Options::default()).1, EXIT_FAILURE);
        assert_eq!(run(Command::VerifyIdentities, Some(&d3), &Options::default()).1, EXIT_OK);
        assert_eq!(run(Command::DecideT, None, &Options::default()).1, EXIT_PARSE);
    }
}
