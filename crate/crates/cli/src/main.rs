//! Command line front end: parse inputs, dispatch computations, emit
//! JSON/table/DOT reports.
//!
//! Exit codes separate mathematical findings from usage errors:
//! 0 = clean result, 1 = malformed input or usage error, 2 = mathematical
//! finding (axiom violation, infiniteness witness, obstruction,
//! irreducibility failure, consistency mismatch).

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nichols_core::cartan::{finite_type_classify, CartanScheme, SchemeJson};
use nichols_core::engine::{
    build_scheme, finiteness_screen, infer_cartan, reflect_tuple, reflection_dim_consistency,
    EngineCaps, EngineError, YdTuple,
};
use nichols_core::exactfield::Cyclotomic;
use nichols_core::finitegroup::{
    classes_commute_witness, stst_condition, FiniteGroup, GroupJson, Perm, StstOutcome,
};
use nichols_core::io::TupleJson;
use nichols_core::weylgroupoid::{
    export_dot, finiteness_report, rank2_infinite_witness, verify_root_system, GroupoidCaps,
    Rank2Certificate, Verdict,
};
use nichols_core::ydmodule::YdModule;

#[derive(Parser)]
#[command(
    name = "nichols",
    about = "Weyl groupoids, generalized root systems and Nichols-algebra invariants \
             for Yetter-Drinfeld modules over finite groups, in exact arithmetic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Args)]
struct CapsArgs {
    /// Object cap for closures.
    #[arg(long = "max-objects", default_value_t = 256)]
    max_objects: usize,
    /// Adjoint-power height cap for Cartan inference.
    #[arg(long = "h-cap", default_value_t = 8)]
    h_cap: usize,
    /// Dimension guard for tensor spaces.
    #[arg(long = "tensor-guard", default_value_t = 20000)]
    tensor_guard: usize,
    /// Real-root cap per object for groupoid enumeration.
    #[arg(long = "max-roots", default_value_t = 10000)]
    max_roots: usize,
    /// Morphism cap for groupoid enumeration.
    #[arg(long = "max-morphisms", default_value_t = 100000)]
    max_morphisms: usize,
}

impl CapsArgs {
    fn engine(&self, degree_bound: usize) -> EngineCaps {
        EngineCaps {
            h_cap: self.h_cap,
            degree_bound,
            max_objects: self.max_objects,
            tensor_guard: self.tensor_guard,
            groupoid: self.groupoid(),
        }
    }

    fn groupoid(&self) -> GroupoidCaps {
        GroupoidCaps {
            max_objects: self.max_objects,
            max_roots: self.max_roots,
            max_morphisms: self.max_morphisms,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate the axioms (M1)(M2)(C1)(C2) of a Cartan scheme and
    /// classify each Cartan matrix against the finite-type catalog.
    SchemeCheck {
        #[arg(long)]
        scheme: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Enumerate the Weyl groupoid and real roots of a Cartan scheme,
    /// decide finiteness, and verify the root-system axioms.
    SchemeEnumerate {
        #[arg(long)]
        scheme: String,
        /// Start object id (defaults to the first object).
        #[arg(long)]
        start: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Rank-2 infiniteness witness: the semigroup certificate that exists
    /// when all Cartan entries of an index pair stay below -1.
    SchemeRank2 {
        #[arg(long)]
        scheme: String,
        /// Index pair, 1-based, e.g. `1,2` (defaults to all pairs).
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        start: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Infer the generalized Cartan matrix of a Yetter-Drinfeld tuple from
    /// vanishing of braided adjoint powers.
    YdCartan {
        #[arg(long)]
        tuple: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Reflect a tuple at one index and summarize the result.
    YdReflect {
        #[arg(long)]
        tuple: String,
        /// Reflection index, 1-based.
        #[arg(long)]
        index: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Build the Cartan scheme and root system of a tuple: reflection
    /// closure, groupoid enumeration, labeled real roots, axiom checks and
    /// obstruction screens.
    YdBuild {
        #[arg(long)]
        tuple: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Graded dimensions of the Nichols algebra of a tuple up to a total
    /// degree bound.
    YdDims {
        /// Tuple input (also accepted under --diagonal).
        #[arg(long, visible_alias = "diagonal")]
        tuple: String,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Multigraded consistency of a reflection: the regraded coideal
    /// factor of the Nichols algebra must be preserved.
    YdConsistency {
        #[arg(long)]
        tuple: String,
        /// Reflection index, 1-based.
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Group-theoretic obstructions: conjugacy data, commuting class
    /// pairs, the (st)^2 = (ts)^2 test and double-coset analysis.
    GroupObstructions {
        /// Builtin name (S3, A5, D4, C6, ...) or a path to group JSON.
        #[arg(long)]
        group: String,
        /// Two class representatives in cycle notation, e.g. `(12),(12)`.
        #[arg(long)]
        classes: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// 0 = ok, 1 = usage error, 2 = mathematical finding.
struct Outcome {
    report: Value,
    finding: bool,
    rendered: Option<String>,
}

impl Outcome {
    fn clean(report: Value) -> Self {
        Outcome {
            report,
            finding: false,
            rendered: None,
        }
    }

    fn finding(report: Value) -> Self {
        Outcome {
            report,
            finding: true,
            rendered: None,
        }
    }
}

fn fail_usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match dispatch(cli.command) {
        Ok((outcome, format)) => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.report).expect("serializable")
                ),
                Format::Table | Format::Dot => {
                    if let Some(text) = &outcome.rendered {
                        print!("{text}");
                    } else {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&outcome.report).expect("serializable")
                        );
                    }
                }
            }
            if outcome.finding {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => fail_usage(&msg),
    }
}

fn read_file(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))
}

fn load_scheme(path: &str) -> Result<CartanScheme, String> {
    let text = read_file(path)?;
    let json: SchemeJson = serde_json::from_str(&text)
        .map_err(|e| format!("{path}: cannot parse scheme JSON at {e}"))?;
    json.into_scheme()
        .map_err(|e| format!("{path}: invalid scheme: {e}"))
}

fn load_tuple(path: &str) -> Result<YdTuple, String> {
    let text = read_file(path)?;
    let json: TupleJson = serde_json::from_str(&text)
        .map_err(|e| format!("{path}: cannot parse tuple JSON at {e}"))?;
    json.into_tuple()
        .map_err(|e| format!("{path}: invalid tuple: {e}"))
}

fn load_group(spec: &str) -> Result<FiniteGroup, String> {
    let json: GroupJson = if spec.ends_with(".json") || spec.starts_with('{') {
        let text = if spec.starts_with('{') {
            spec.to_string()
        } else {
            read_file(spec)?
        };
        serde_json::from_str(&text).map_err(|e| format!("cannot parse group JSON: {e}"))?
    } else {
        GroupJson::Builtin(spec.to_string())
    };
    json.into_group().map_err(|e| format!("invalid group: {e}"))
}

fn start_index(scheme: &CartanScheme, start: &Option<String>) -> Result<usize, String> {
    match start {
        None => Ok(0),
        Some(id) => scheme
            .object_index(id)
            .ok_or_else(|| format!("unknown start object `{id}`")),
    }
}

fn cyclo_json(c: &Cyclotomic) -> Value {
    json!({ "order": c.order(), "value": c.to_string() })
}

fn module_summary(m: &YdModule) -> Value {
    let group = m.group();
    let support: Vec<String> = m
        .support()
        .iter()
        .map(|&d| group.element(d).cycle_string())
        .collect();
    let q = m.q_scalar().map(|q| cyclo_json(&q)).unwrap_or(Value::Null);
    let character = m
        .graded_character()
        .map(|chi| {
            json!({
                "class": group.element(chi.class_representative).cycle_string(),
                "values": chi
                    .values
                    .iter()
                    .map(|(z, v)| json!({
                        "element": group.element(*z).cycle_string(),
                        "trace": v.to_string(),
                    }))
                    .collect::<Vec<_>>(),
            })
        })
        .unwrap_or(Value::Null);
    json!({
        "label": m.label(),
        "dim": m.dim(),
        "support": support,
        "q": q,
        "character": character,
    })
}

fn certificate_json(cert: &Rank2Certificate) -> Value {
    json!({
        "pair": [cert.pair.0, cert.pair.1],
        "factors": cert
            .factors
            .iter()
            .map(|f| json!({
                "object": f.object,
                "eta1": f.eta1_arg,
                "eta2": f.eta2_arg,
                "product": f.product,
                "shape_ok": f.shape_ok,
            }))
            .collect::<Vec<_>>(),
    })
}

fn dispatch(cmd: Command) -> Result<(Outcome, Format), String> {
    match cmd {
        Command::SchemeCheck { scheme, format } => {
            let s = load_scheme(&scheme)?;
            let violations = s.validate();
            let classifications: Vec<Value> = (0..s.object_count())
                .map(|n| {
                    let c = finite_type_classify(s.matrix(n));
                    json!({
                        "object": s.object_id(n),
                        "finite_type": c.finite_type,
                        "components": c.components,
                    })
                })
                .collect();
            let ok = violations.is_empty();
            let report = json!({
                "command": "scheme-check",
                "scheme": SchemeJson::from_scheme(&s),
                "ok": ok,
                "violations": violations,
                "classification": classifications,
                "standard": s.is_standard(),
            });
            let mut out = if ok {
                Outcome::clean(report)
            } else {
                Outcome::finding(report)
            };
            if format == Format::Dot {
                out.rendered = Some(export_dot(&s, None));
            } else if format == Format::Table {
                out.rendered = Some(render_check_table(&s, ok));
            }
            Ok((out, format))
        }
        Command::SchemeEnumerate {
            scheme,
            start,
            format,
            caps,
        } => {
            let s = load_scheme(&scheme)?;
            let st = start_index(&s, &start)?;
            let report = finiteness_report(&s, st, &caps.groupoid());
            let axioms = if report.verdict == Verdict::Finite {
                let full: Vec<Vec<Vec<i64>>> = report
                    .enumeration
                    .positive_roots
                    .iter()
                    .map(|pos| {
                        let mut all = pos.clone();
                        all.extend(
                            pos.iter()
                                .map(|r| r.iter().map(|x| -x).collect::<Vec<i64>>()),
                        );
                        all
                    })
                    .collect();
                Some(verify_root_system(&s, &full))
            } else {
                None
            };
            let axioms_ok = axioms.as_ref().map(|a| a.passed()).unwrap_or(true);
            let finding = report.verdict == Verdict::InfiniteWitness || !axioms_ok;
            let roots: Value = report
                .enumeration
                .objects
                .iter()
                .zip(&report.enumeration.positive_roots)
                .map(|(&o, r)| (s.object_id(o).to_string(), json!(r)))
                .collect::<serde_json::Map<String, Value>>()
                .into();
            let value = json!({
                "command": "scheme-enumerate",
                "scheme": SchemeJson::from_scheme(&s),
                "start": s.object_id(st),
                "verdict": report.verdict,
                "object_count": report.object_count,
                "morphism_count": report.morphism_count,
                "positive_roots": roots,
                "root_counts": report.root_counts,
                "longest_element": report.longest_element,
                "witness": report.witness.as_ref().map(certificate_json),
                "cap_hit": report.cap_hit,
                "axioms": axioms.as_ref().map(|a| json!({
                    "passed": a.passed(),
                    "violations": a.violations,
                    "m_values": a.m_values,
                })),
            });
            let mut out = if finding {
                Outcome::finding(value)
            } else {
                Outcome::clean(value)
            };
            if format == Format::Dot {
                out.rendered = Some(export_dot(&s, None));
            } else if format == Format::Table {
                out.rendered = Some(render_enumerate_table(&s, &report, axioms.as_ref()));
            }
            Ok((out, format))
        }
        Command::SchemeRank2 {
            scheme,
            pair,
            start,
            format,
        } => {
            let s = load_scheme(&scheme)?;
            let st = start_index(&s, &start)?;
            let pairs: Vec<(usize, usize)> = match pair {
                Some(p) => {
                    let parts: Vec<&str> = p.split(',').collect();
                    if parts.len() != 2 {
                        return Err(format!("--pair expects `i,j`, got `{p}`"));
                    }
                    let i: usize = parts[0]
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad index `{}`", parts[0]))?;
                    let j: usize = parts[1]
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad index `{}`", parts[1]))?;
                    if i == 0 || j == 0 || i > s.rank() || j > s.rank() || i == j {
                        return Err(format!("pair {i},{j} out of range for rank {}", s.rank()));
                    }
                    vec![(i - 1, j - 1)]
                }
                None => {
                    let mut v = Vec::new();
                    for i in 0..s.rank() {
                        for j in (i + 1)..s.rank() {
                            v.push((i, j));
                        }
                    }
                    v
                }
            };
            let mut certificates = Vec::new();
            for (i, j) in pairs {
                if let Some(cert) = rank2_infinite_witness(&s, st, i, j) {
                    if cert.factors.iter().all(|f| f.shape_ok) {
                        certificates.push(cert);
                    }
                }
            }
            let finding = !certificates.is_empty();
            let value = json!({
                "command": "scheme-rank2",
                "verdict": if finding { "infinite_witness" } else { "no_witness" },
                "certificates": certificates.iter().map(certificate_json).collect::<Vec<_>>(),
            });
            let out = if finding {
                Outcome::finding(value)
            } else {
                Outcome::clean(value)
            };
            Ok((out, format))
        }
        Command::YdCartan {
            tuple,
            format,
            caps,
        } => {
            let t = load_tuple(&tuple)?;
            let ecaps = caps.engine(6);
            let inf = infer_cartan(&t, &ecaps).map_err(|e| e.to_string())?;
            let classification = inf.matrix().ok().map(|m| json!(finite_type_classify(&m)));
            let value = json!({
                "command": "yd-cartan",
                "theta": t.theta(),
                "modules": t.modules().iter().map(|m| module_summary(m)).collect::<Vec<_>>(),
                "cartan": inf.entries,
                "not_i_finite": inf.not_i_finite.iter()
                    .map(|(i, j)| json!([i + 1, j + 1])).collect::<Vec<_>>(),
                "h_cap": inf.h_cap,
                "classification": classification,
            });
            let mut out = Outcome::clean(value);
            if format == Format::Table {
                out.rendered = Some(render_cartan_table(&t, &inf.entries));
            }
            Ok((out, format))
        }
        Command::YdReflect {
            tuple,
            index,
            format,
            caps,
        } => {
            let t = load_tuple(&tuple)?;
            if index == 0 || index > t.theta() {
                return Err(format!(
                    "--index must be between 1 and {}, got {index}",
                    t.theta()
                ));
            }
            let ecaps = caps.engine(6);
            match reflect_tuple(&t, index - 1, &ecaps) {
                Ok(r) => {
                    let twice = reflect_tuple(&r, index - 1, &ecaps)
                        .map(|rr| rr.is_isomorphic(&t))
                        .unwrap_or(false);
                    let value = json!({
                        "command": "yd-reflect",
                        "index": index,
                        "original": t.modules().iter().map(|m| module_summary(m)).collect::<Vec<_>>(),
                        "reflected": r.modules().iter().map(|m| module_summary(m)).collect::<Vec<_>>(),
                        "double_reflection_isomorphic": twice,
                    });
                    Ok((Outcome::clean(value), format))
                }
                Err(
                    e @ (EngineError::ReducibleReflection { .. } | EngineError::NotIFinite { .. }),
                ) => {
                    let value = json!({
                        "command": "yd-reflect",
                        "index": index,
                        "finding": e.to_string(),
                    });
                    Ok((Outcome::finding(value), format))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::YdBuild {
            tuple,
            format,
            caps,
        } => {
            let t = load_tuple(&tuple)?;
            let ecaps = caps.engine(6);
            let screens = finiteness_screen(&t);
            let build = build_scheme(&t, &ecaps).map_err(|e| e.to_string())?;
            let group = t.group();
            let objects: Vec<Value> = (0..build.scheme.object_count())
                .map(|n| {
                    json!({
                        "id": build.scheme.object_id(n),
                        "path": build.object_paths[n].iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "cartan": build.scheme.matrix(n).entries(),
                        "modules": build.tuples[n]
                            .modules()
                            .iter()
                            .map(|m| module_summary(m))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            let roots: Vec<Value> = build
                .labeled_roots
                .iter()
                .enumerate()
                .map(|(n, roots)| {
                    json!({
                        "object": build.scheme.object_id(n),
                        "positive_roots": roots.iter().map(|r| json!({
                            "degree": r.degree,
                            "class": group.element(r.label.class_representative).cycle_string(),
                            "multiplicity": r.multiplicity,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let verdict = build.finiteness.as_ref().map(|f| f.verdict);
            let axioms_ok = build.axioms.as_ref().map(|a| a.passed()).unwrap_or(true);
            let finding = !build.findings.is_empty()
                || verdict == Some(Verdict::InfiniteWitness)
                || !axioms_ok
                || screens.infinite_dimensional();
            let value = json!({
                "command": "yd-build",
                "scheme": SchemeJson::from_scheme(&build.scheme),
                "complete": build.complete,
                "objects": objects,
                "verdict": verdict,
                "morphism_count": build.finiteness.as_ref().map(|f| f.morphism_count),
                "roots": roots,
                "axioms": build.axioms.as_ref().map(|a| json!({
                    "passed": a.passed(),
                    "violations": a.violations,
                    "m_values": a.m_values,
                })),
                "witness": build
                    .finiteness
                    .as_ref()
                    .and_then(|f| f.witness.as_ref())
                    .map(certificate_json),
                "screens": screens,
                "findings": build.findings,
                "dual_convention":
                    "left dual: degree inversion, (h.f)(v) = f(h^{-1}.v); negative roots carry the dual class",
            });
            let mut out = if finding {
                Outcome::finding(value)
            } else {
                Outcome::clean(value)
            };
            if format == Format::Dot {
                let warning = if build.complete {
                    None
                } else {
                    Some("partial build: closure interrupted by a finding")
                };
                out.rendered = Some(export_dot(&build.scheme, warning));
            }
            Ok((out, format))
        }
        Command::YdDims {
            tuple,
            degree,
            format,
            caps,
        } => {
            let t = load_tuple(&tuple)?;
            let dims = nichols_core::engine::graded_dims(&t, degree, caps.tensor_guard)
                .map_err(|e| e.to_string())?;
            let table: Vec<Value> = dims
                .iter()
                .map(|(g, d)| json!({ "degree": g, "dim": d }))
                .collect();
            let value = json!({
                "command": "yd-dims",
                "theta": t.theta(),
                "degree_bound": degree,
                "dims": table,
            });
            let mut out = Outcome::clean(value);
            if format == Format::Table {
                let mut text = String::new();
                let _ = writeln!(text, "degree -> dim");
                for (g, d) in &dims {
                    let _ = writeln!(text, "{g:?} -> {d}");
                }
                out.rendered = Some(text);
            }
            Ok((out, format))
        }
        Command::YdConsistency {
            tuple,
            index,
            degree,
            format,
            caps,
        } => {
            let t = load_tuple(&tuple)?;
            if index == 0 || index > t.theta() {
                return Err(format!(
                    "--index must be between 1 and {}, got {index}",
                    t.theta()
                ));
            }
            let ecaps = caps.engine(degree);
            let report = reflection_dim_consistency(&t, index - 1, degree, &ecaps)
                .map_err(|e| e.to_string())?;
            let passed = report.passed();
            let value = json!({
                "command": "yd-consistency",
                "index": index,
                "degree_bound": report.degree_bound,
                "checked": report.checked,
                "passed": passed,
                "mismatches": report.mismatches,
                "skipped": report.skipped,
            });
            let out = if passed {
                Outcome::clean(value)
            } else {
                Outcome::finding(value)
            };
            Ok((out, format))
        }
        Command::GroupObstructions {
            group,
            classes,
            format,
        } => {
            let g = Arc::new(load_group(&group)?);
            let class_data = g.conjugacy_classes();
            let class_table: Vec<Value> = class_data
                .iter()
                .map(|c| {
                    json!({
                        "representative": g.element(c.representative).cycle_string(),
                        "size": c.size(),
                        "centralizer_order": c.centralizer.len(),
                    })
                })
                .collect();
            let commuting: Vec<Value> = nichols_core::finitegroup::commuting_class_pairs(&g)
                .iter()
                .map(|&(i, j)| {
                    json!([
                        g.element(class_data[i].representative).cycle_string(),
                        g.element(class_data[j].representative).cycle_string(),
                    ])
                })
                .collect();
            let structure = json!({
                "order": g.order(),
                "abelian": g.is_abelian(),
                "nonabelian_simple": g.is_nonabelian_simple(),
                "symmetric_degree": g.symmetric_degree(),
            });

            let (pair_report, finding) = match &classes {
                None => (Value::Null, false),
                Some(spec) => {
                    let reps = split_class_list(spec)?;
                    if reps.len() != 2 {
                        return Err(format!(
                            "--classes expects two representatives, got {}",
                            reps.len()
                        ));
                    }
                    let p1 = Perm::parse_cycles(&reps[0], g.degree()).map_err(|e| e.to_string())?;
                    let p2 = Perm::parse_cycles(&reps[1], g.degree()).map_err(|e| e.to_string())?;
                    let i1 = g
                        .index_of(&p1)
                        .ok_or_else(|| format!("{} is not a group element", reps[0]))?;
                    let i2 = g
                        .index_of(&p2)
                        .ok_or_else(|| format!("{} is not a group element", reps[1]))?;
                    let c1 = g.class_of(i1);
                    let c2 = g.class_of(i2);
                    let commute = classes_commute_witness(&g, &c1, &c2);
                    let stst = stst_condition(&g, &c1, &c2);
                    let dc = g.double_coset_analysis(i1, i2);
                    let mut finding = false;
                    let stst_json = match &stst {
                        StstOutcome::Pass => json!({ "passed": true }),
                        StstOutcome::Fail { s, t, st_sq, ts_sq } => {
                            finding = true;
                            json!({
                                "passed": false,
                                "witness": {
                                    "s": g.element(*s).cycle_string(),
                                    "t": g.element(*t).cycle_string(),
                                    "st_squared": g.element(*st_sq).cycle_string(),
                                    "ts_squared": g.element(*ts_sq).cycle_string(),
                                },
                            })
                        }
                    };
                    if dc.noncommuting_count > 1 {
                        finding = true;
                    }
                    let report = json!({
                        "classes": [
                            g.element(c1.representative).cycle_string(),
                            g.element(c2.representative).cycle_string(),
                        ],
                        "commute": commute.is_none(),
                        "commute_witness": commute.map(|(s, t)| json!([
                            g.element(s).cycle_string(),
                            g.element(t).cycle_string(),
                        ])),
                        "stst": stst_json,
                        "double_cosets": dc.cosets.iter().map(|c| json!({
                            "representative": g.element(c.representative).cycle_string(),
                            "size": c.size,
                            "noncommuting": c.noncommuting,
                        })).collect::<Vec<_>>(),
                        "noncommuting_double_cosets": dc.noncommuting_count,
                        "obstruction": finding,
                    });
                    (report, finding)
                }
            };
            let value = json!({
                "command": "group-obstructions",
                "group": structure,
                "classes": class_table,
                "commuting_nontrivial_pairs": commuting,
                "pair": pair_report,
            });
            let out = if finding {
                Outcome::finding(value)
            } else {
                Outcome::clean(value)
            };
            Ok((out, format))
        }
    }
}

/// Split `"(12)(34),(123)"` into class representative strings at commas
/// outside parentheses.
fn split_class_list(spec: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in spec.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| format!("unbalanced parentheses in `{spec}`"))?;
                current.push(ch);
            }
            ',' if depth == 0 => {
                out.push(current.trim().to_string());
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    Ok(out)
}

fn render_check_table(scheme: &CartanScheme, ok: bool) -> String {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "objects: {}  rank: {}",
        scheme.object_count(),
        scheme.rank()
    );
    for n in 0..scheme.object_count() {
        let c = finite_type_classify(scheme.matrix(n));
        let label = c
            .labels()
            .map(|l| l.join(" x "))
            .unwrap_or_else(|| "not finite type".into());
        let _ = writeln!(
            text,
            "  {}: {:?}  [{}]",
            scheme.object_id(n),
            scheme.matrix(n).entries(),
            label
        );
    }
    let _ = writeln!(text, "axioms: {}", if ok { "pass" } else { "FAIL" });
    text
}

fn render_enumerate_table(
    scheme: &CartanScheme,
    report: &nichols_core::weylgroupoid::FinitenessReport,
    axioms: Option<&nichols_core::weylgroupoid::RootSystemReport>,
) -> String {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "verdict: {:?}  objects: {}  morphisms: {}",
        report.verdict, report.object_count, report.morphism_count
    );
    for (&o, roots) in report
        .enumeration
        .objects
        .iter()
        .zip(&report.enumeration.positive_roots)
    {
        let _ = writeln!(
            text,
            "  {}: {} positive real roots: {:?}",
            scheme.object_id(o),
            roots.len(),
            roots
        );
    }
    if let Some(a) = axioms {
        let _ = writeln!(text, "axioms: {}", if a.passed() { "pass" } else { "FAIL" });
    }
    if let Some(le) = &report.longest_element {
        let _ = writeln!(
            text,
            "longest element: length {} from {}",
            le.word_len, le.source
        );
    }
    text
}

fn render_cartan_table(tuple: &YdTuple, entries: &[Vec<i64>]) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "theta: {}", tuple.theta());
    for row in entries {
        let _ = writeln!(
            text,
            "  [{}]",
            row.iter()
                .map(|x| format!("{x:>3}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    text
}
