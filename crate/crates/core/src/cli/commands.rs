//! Subcommands of the `accat` binary. Every command produces printable lines,
//! a JSON report and an exit code.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use super::generate::SuiteConfig;
use super::io::{
    category_value, functor_value, load_category, load_complex, load_diagram, load_functor, load_relation, load_square,
    sset_value, ComplexJson,
};
use super::suite::run_suite;
use crate::acyclic::{ac_colimit, reflect_with_cap};
use crate::congruence::{coequalizer, filtered_colimit, finite_colimit, pushout, saturate, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::fincat::{is_acyclic, FinFunctor, DEFAULT_BUDGET};
use crate::homology::{homology, nerve_homology, HomologyProfile};
use crate::model::{default_max_dim, find_lift, has_rlp, smallness_witness, soa_factorize, Factorization, DEFAULT_MAX_STAGES};
use crate::simplicial::{nerve, sd, tau1, thol_generator, BoundedSSet, GeneratorSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "accat", version, about = "Finite categories, acyclic categories and their homotopy-theoretic constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Maximum number of morphism classes during congruence saturation.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Node budget for functor and lifting searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Also write a machine-readable report to this file.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a category, functor, complex, diagram or square file.
    Check { file: PathBuf },
    /// Acyclic reflection of a category, with its unit.
    Reflect { category: PathBuf },
    /// Quotient of a category by the congruence generated by a relation.
    Quotient { category: PathBuf, relation: PathBuf },
    /// Coequalizer of two parallel functors.
    Coequalize { f: PathBuf, g: PathBuf },
    /// Pushout of a span `B <- A -> C`.
    Pushout { i: PathBuf, f: PathBuf },
    /// Colimit of a finite diagram of categories.
    Colimit {
        diagram: PathBuf,
        /// Colimit in acyclic categories.
        #[arg(long, conflicts_with = "filtered")]
        acyclic: bool,
        /// Use the explicit construction for filtered index categories.
        #[arg(long)]
        filtered: bool,
    },
    /// Nondegenerate simplices of the nerve.
    Nerve {
        category: PathBuf,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Barycentric subdivision of a complex.
    Sd {
        complex: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Fundamental category of a complex (or of the nerve of a category).
    Tau1 { file: PathBuf },
    /// Generating cofibrations (I) or trivial cofibrations (J).
    Generators {
        #[arg(long)]
        set: GeneratorSet,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        horn: Option<usize>,
    },
    /// Integral homology of a complex, or of the nerve of a category.
    Homology {
        file: PathBuf,
        #[arg(long)]
        via_nerve: bool,
    },
    /// Diagonal filler for a lifting square.
    Lift { square: PathBuf },
    /// Right lifting property against I or J.
    Rlp {
        functor: PathBuf,
        #[arg(long)]
        against: GeneratorSet,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Small object argument factorization.
    Factorize {
        functor: PathBuf,
        #[arg(long)]
        against: GeneratorSet,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_STAGES)]
        max_stages: usize,
    },
    /// Compare the colimit of hom-sets along a chain with homs into its colimit.
    Smallness {
        category: PathBuf,
        /// Functors `X_0 -> X_1`, `X_1 -> X_2`, ... in order.
        #[arg(long, num_args = 1.., required = true)]
        chain: Vec<PathBuf>,
    },
    /// Run a named property suite.
    Suite {
        name: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_objects: usize,
        #[arg(long, default_value_t = 10)]
        max_morphisms: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub lines: Vec<String>,
    pub json: Value,
    pub code: i32,
}

impl Output {
    fn ok(lines: Vec<String>, json: Value) -> Output {
        Output { lines, json, code: EXIT_OK }
    }

    fn error(e: &Error) -> Output {
        let code = if e.is_resource_cap() { EXIT_CAP } else { EXIT_INPUT };
        Output {
            lines: vec![format!("error: {e}")],
            json: json!({"error": e.to_string()}),
            code,
        }
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn execute(cli: &Cli) -> Output {
    match dispatch(cli) {
        Ok(out) => out,
        Err(Error::StageBudgetExceeded { stages, partial }) => {
            let mut out = factorization_output(&partial);
            out.lines.insert(0, format!("stopped after {stages} stages without reaching the lifting property"));
            out.code = EXIT_CAP;
            out
        }
        Err(e) => Output::error(&e),
    }
}

fn read_value(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let (cap, budget) = (cli.cap, cli.budget);
    match &cli.command {
        Command::Check { file } => check(file),
        Command::Reflect { category } => {
            let c = load_category(category)?;
            let r = reflect_with_cap(&c, cap)?;
            let (q, unit) = (category_value(&r.quotient), functor_value(&r.unit));
            Ok(Output::ok(
                vec![
                    format!("rounds: {}", r.rounds),
                    format!("objects: {} -> {}", c.num_objects(), r.quotient.num_objects()),
                    format!("morphisms: {} -> {}", c.num_morphisms(), r.quotient.num_morphisms()),
                    format!("unit is an isomorphism: {}", r.unit.is_isomorphism()),
                    format!("quotient: {}", compact(&q)),
                    format!("unit: {}", compact(&unit)),
                ],
                json!({"quotient": q, "unit": unit, "rounds": r.rounds}),
            ))
        }
        Command::Quotient { category, relation } => {
            let c = load_category(category)?;
            let r = load_relation(relation, &c)?;
            let p = saturate(&c, &r, cap)?;
            let (q, proj) = (category_value(&p.quotient), functor_value(&p.projection));
            Ok(Output::ok(
                vec![
                    format!("object classes: {}", p.quotient.num_objects()),
                    format!("morphism classes: {}", p.num_classes()),
                    format!("quotient: {}", compact(&q)),
                    format!("projection: {}", compact(&proj)),
                ],
                json!({"quotient": q, "projection": proj}),
            ))
        }
        Command::Coequalize { f, g } => {
            let (f, g) = (load_functor(f)?, load_functor(g)?);
            let (q, map) = coequalizer(&f, &g, cap)?;
            let (qv, mv) = (category_value(&q), functor_value(&map));
            Ok(Output::ok(
                vec![format!("coequalizer: {}", compact(&qv)), format!("map: {}", compact(&mv))],
                json!({"coequalizer": qv, "map": mv}),
            ))
        }
        Command::Pushout { i, f } => {
            let (i, f) = (load_functor(i)?, load_functor(f)?);
            let p = pushout(&i, &f, cap)?;
            let (pv, l, r) = (category_value(&p.category), functor_value(&p.left), functor_value(&p.right));
            Ok(Output::ok(
                vec![
                    format!("acyclic: {}", is_acyclic(&p.category)),
                    format!("pushout: {}", compact(&pv)),
                    format!("left: {}", compact(&l)),
                    format!("right: {}", compact(&r)),
                ],
                json!({"pushout": pv, "left": l, "right": r}),
            ))
        }
        Command::Colimit { diagram, acyclic, filtered } => {
            let d = load_diagram(diagram)?;
            let col = if *acyclic {
                ac_colimit(&d, cap)?
            } else if *filtered {
                filtered_colimit(&d)?
            } else {
                finite_colimit(&d, cap)?
            };
            let cv = category_value(&col.category);
            let mut lines = vec![format!("colimit: {}", compact(&cv))];
            let mut legs = serde_json::Map::new();
            for (x, leg) in d.index.objects().zip(&col.cocone) {
                let v = functor_value(leg);
                lines.push(format!("leg {}: {}", d.index.obj_name(x), compact(&v)));
                legs.insert(d.index.obj_name(x).to_string(), v);
            }
            Ok(Output::ok(lines, json!({"colimit": cv, "legs": legs})))
        }
        Command::Nerve { category, max_dim } => {
            let c = load_category(category)?;
            let x = nerve(&c, *max_dim)?;
            let mut lines: Vec<String> = (0..x.labels.len()).map(|n| format!("N_{n}: {} nondegenerate", x.count(n))).collect();
            lines.push(format!("truncated: {}", x.truncated));
            Ok(Output::ok(lines, sset_value(&x)))
        }
        Command::Sd { complex, times } => {
            let mut k = load_complex(complex)?;
            for _ in 0..*times {
                k = sd(&k);
            }
            let v = serde_json::to_value(ComplexJson::from_complex(&k))?;
            Ok(Output::ok(
                vec![format!("f-vector: {:?}", k.f_vector()), format!("complex: {}", compact(&v))],
                v,
            ))
        }
        Command::Tau1 { file } => {
            let raw = read_value(file)?;
            let x: BoundedSSet = if raw.get("vertices").is_some() {
                BoundedSSet::from_complex(&load_complex(file)?)
            } else {
                nerve(&*load_category(file)?, Some(2))?
            };
            let t = tau1(&x, cap)?;
            let v = category_value(&t);
            Ok(Output::ok(
                vec![
                    format!("objects: {}, morphisms: {}", t.num_objects(), t.num_morphisms()),
                    format!("category: {}", compact(&v)),
                ],
                v,
            ))
        }
        Command::Generators { set, dim, horn } => {
            let g = thol_generator(*set, *dim, *horn)?;
            let dom = category_value(g.inclusion.source());
            let cod = category_value(g.inclusion.target());
            let inc = functor_value(&g.inclusion);
            Ok(Output::ok(
                vec![
                    format!("generator: {}", g.name()),
                    format!("domain: {} elements", g.domain.len()),
                    format!("codomain: {} elements", g.codomain.len()),
                    format!("domain category: {}", compact(&dom)),
                    format!("codomain category: {}", compact(&cod)),
                    format!("inclusion: {}", compact(&inc)),
                ],
                json!({"name": g.name(), "domain": dom, "codomain": cod, "inclusion": inc}),
            ))
        }
        Command::Homology { file, via_nerve } => {
            let h: HomologyProfile = if *via_nerve {
                nerve_homology(&*load_category(file)?)?
            } else {
                homology(&load_complex(file)?)?
            };
            let groups: Vec<String> = h.groups().iter().map(|g| g.to_string()).collect();
            Ok(Output::ok(h.lines(), json!({"groups": groups, "betti": h.betti_numbers()})))
        }
        Command::Lift { square } => {
            let sq = load_square(square)?;
            Ok(match find_lift(&sq, budget)? {
                Some(h) => {
                    let v = functor_value(&h);
                    Output::ok(vec![format!("lift: {}", compact(&v))], json!({"lift": v}))
                }
                None => Output {
                    lines: vec!["no lift".to_string()],
                    json: json!({"lift": null}),
                    code: EXIT_PROPERTY,
                },
            })
        }
        Command::Rlp { functor, against, max_dim } => {
            let g = load_functor(functor)?;
            let (d, heuristic) = resolve_dim(&g, *max_dim);
            let v = has_rlp(&g, *against, d, budget)?;
            let mut lines = vec![format!("max_dim: {d}{}", if heuristic { " (heuristic default)" } else { "" })];
            lines.push(format!("generators checked: {}", v.generators_checked.join(", ")));
            let mut report = json!({"holds": v.holds, "max_dim": d, "heuristic_max_dim": heuristic, "generators": v.generators_checked});
            if let Some((name, sq)) = &v.counterexample {
                let (top, bottom) = (functor_value(&sq.top), functor_value(&sq.bottom));
                lines.push(format!("fails against {name}"));
                lines.push(format!("top: {}", compact(&top)));
                lines.push(format!("bottom: {}", compact(&bottom)));
                report["counterexample"] = json!({"generator": name, "top": top, "bottom": bottom});
            } else {
                lines.push("lifting property holds".to_string());
            }
            Ok(Output {
                lines,
                json: report,
                code: if v.holds { EXIT_OK } else { EXIT_PROPERTY },
            })
        }
        Command::Factorize { functor, against, max_dim, max_stages } => {
            let f = load_functor(functor)?;
            let (d, heuristic) = resolve_dim(&f, *max_dim);
            let fac = soa_factorize(&f, *against, d, *max_stages, cap, budget)?;
            let mut out = factorization_output(&fac);
            if heuristic {
                out.lines.insert(0, format!("max_dim: {d} (heuristic default)"));
            }
            Ok(out)
        }
        Command::Smallness { category, chain } => {
            let c = load_category(category)?;
            let maps: Vec<FinFunctor> = chain.iter().map(|p| load_functor(p)).collect::<Result<_>>()?;
            let mut stages: Vec<Arc<_>> = vec![maps[0].source().clone()];
            for (k, m) in maps.iter().enumerate() {
                if !crate::fincat::same_category(m.source(), stages.last().expect("nonempty")) {
                    return Err(Error::PreconditionViolated(format!("chain map {k} does not start at stage {k}")));
                }
                stages.push(m.target().clone());
            }
            let v = smallness_witness(&c, &stages, &maps, cap, budget)?;
            let mut lines = vec![
                format!("colimit of hom-sets: {}", v.colimit_of_homs),
                format!("functors into the colimit: {}", v.homs_into_colimit),
                format!("bijective: {}", v.bijective),
            ];
            if let Some(w) = &v.witness {
                lines.push(format!("witness: {w}"));
            }
            Ok(Output {
                lines,
                json: json!({"bijective": v.bijective, "colimit_of_homs": v.colimit_of_homs,
                    "homs_into_colimit": v.homs_into_colimit, "witness": v.witness}),
                code: if v.bijective { EXIT_OK } else { EXIT_PROPERTY },
            })
        }
        Command::Suite { name, count, max_objects, max_morphisms } => {
            let cfg = SuiteConfig {
                seed: cli.seed,
                instance_count: *count,
                max_objects: *max_objects,
                max_morphisms: *max_morphisms,
                cap,
                budget,
            };
            let report = run_suite(name, &cfg)?;
            Ok(Output {
                lines: report.lines(),
                json: report.to_json(),
                code: if report.all_passed() { EXIT_OK } else { EXIT_PROPERTY },
            })
        }
    }
}

fn resolve_dim(g: &FinFunctor, given: Option<usize>) -> (usize, bool) {
    match given {
        Some(d) => (d, false),
        None => (default_max_dim(g), true),
    }
}

fn factorization_output(fac: &Factorization) -> Output {
    let mut lines = vec![
        format!("stages: {}", fac.record.stages.len()),
        format!("cells: {}", fac.record.num_cells()),
    ];
    for (k, s) in fac.record.stages.iter().enumerate() {
        let names: Vec<&str> = s.cells.iter().map(|c| c.generator.as_str()).collect();
        lines.push(format!("stage {k}: attached {} -> {} objects", names.join(" "), s.category.num_objects()));
    }
    lines.push(format!("complete: {}", fac.complete));
    let middle = category_value(fac.record.last());
    let (cells, q) = (functor_value(&fac.record.composite), functor_value(&fac.q));
    lines.push(format!("middle: {}", compact(&middle)));
    lines.push(format!("cell map: {}", compact(&cells)));
    lines.push(format!("q: {}", compact(&q)));
    Output::ok(
        lines,
        json!({"stages": fac.record.stages.len(), "cells": fac.record.num_cells(), "complete": fac.complete,
            "max_dim": fac.max_dim, "middle": middle, "cell_map": cells, "q": q}),
    )
}

fn check(file: &Path) -> Result<Output> {
    let raw = read_value(file)?;
    let has = |k: &str| raw.get(k).is_some();
    let (kind, lines) = if has("objects") {
        let c = load_category(file)?;
        let lines = vec![
            format!("valid category: {} objects, {} morphisms", c.num_objects(), c.num_morphisms()),
            format!("acyclic: {}", is_acyclic(&c)),
        ];
        ("category", lines)
    } else if has("object_map") {
        let f = load_functor(file)?;
        let lines = vec![
            format!("valid functor: {} -> {} objects", f.source().num_objects(), f.target().num_objects()),
            format!("injective on objects: {}, full: {}, faithful: {}", f.is_injective_on_objects(), f.is_full(), f.is_faithful()),
        ];
        ("functor", lines)
    } else if has("vertices") {
        let k = load_complex(file)?;
        ("complex", vec![format!("valid complex: f-vector {:?}", k.f_vector())])
    } else if has("index") {
        let d = load_diagram(file)?;
        ("diagram", vec![format!("valid diagram over {} objects", d.index.num_objects())])
    } else if has("left") {
        load_square(file)?;
        ("square", vec!["valid commuting square".to_string()])
    } else {
        return Err(Error::PreconditionViolated(format!("{}: unrecognised file kind", file.display())));
    };
    Ok(Output::ok(lines, json!({"kind": kind, "valid": true})))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::io::{CategoryJson, FunctorJson};
    use crate::fincat::FinCat;

    fn run(args: &[&str]) -> Output {
        let cli = Cli::try_parse_from(std::iter::once("accat").chain(args.iter().copied())).expect("valid arguments");
        execute(&cli)
    }

    fn write(dir: &Path, name: &str, v: &impl serde::Serialize) -> String {
        let p = dir.join(name);
        std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
        p.to_string_lossy().into_owned()
    }

    #[test]
    fn reflect_walking_iso() {
        let dir = tempfile::tempdir().unwrap();
        let iso = r#"{"objects":["a","b"],
            "morphisms":[{"name":"f","src":"a","tgt":"b"},{"name":"g","src":"b","tgt":"a"}],
            "compose":[{"first":"f","second":"g","result":"id:a"},{"first":"g","second":"f","result":"id:b"}]}"#;
        let p = dir.path().join("iso.json");
        std::fs::write(&p, iso).unwrap();
        let out = run(&["reflect", p.to_str().unwrap()]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.lines.contains(&"objects: 2 -> 1".to_string()));
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.json");
        std::fs::write(&bad, r#"{"objects":["a","a"]}"#).unwrap();
        assert_eq!(run(&["check", bad.to_str().unwrap()]).code, EXIT_INPUT);
        assert_eq!(run(&["suite", "no-such-suite"]).code, EXIT_INPUT);
        let two = write(dir.path(), "two.json", &CategoryJson::from_category(&FinCat::discrete(["p", "q"])));
        let arrow = write(dir.path(), "arrow.json", &CategoryJson::from_category(&FinCat::arrow()));
        let pt = write(dir.path(), "pt.json", &CategoryJson::from_category(&FinCat::terminal()));
        let f = FunctorJson {
            source: Some(crate::cli::io::CategoryRef::Path(pt.clone())),
            target: Some(crate::cli::io::CategoryRef::Path(two.clone())),
            object_map: [("*".to_string(), "p".to_string())].into(),
            morphism_map: Default::default(),
        };
        let fp = write(dir.path(), "f.json", &f);
        let out = run(&["rlp", &fp, "--against", "I", "--max-dim", "0"]);
        assert_eq!(out.code, EXIT_PROPERTY, "{:?}", out.lines);
        let g = FunctorJson {
            source: Some(crate::cli::io::CategoryRef::Path(pt)),
            target: Some(crate::cli::io::CategoryRef::Path(arrow)),
            object_map: [("*".to_string(), "a".to_string())].into(),
            morphism_map: Default::default(),
        };
        let gp = write(dir.path(), "g.json", &g);
        let out = run(&["factorize", &gp, "--against", "J", "--max-dim", "1", "--max-stages", "0"]);
        assert_eq!(out.code, EXIT_CAP, "{:?}", out.lines);
    }

    #[test]
    fn generators_and_homology() {
        let out = run(&["generators", "--set", "I", "--dim", "1"]);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.lines[1], "domain: 2 elements");
        assert_eq!(out.lines[2], "codomain: 5 elements");
        let dir = tempfile::tempdir().unwrap();
        let circle = dir.path().join("c.json");
        std::fs::write(&circle, r#"{"vertices":["a","b","c"],"simplices":[["a","b"],["b","c"],["a","c"]]}"#).unwrap();
        let out = run(&["homology", circle.to_str().unwrap()]);
        assert_eq!(out.lines, vec!["H_0 = Z", "H_1 = Z"]);
        let out = run(&["tau1", circle.to_str().unwrap()]);
        assert_eq!(out.code, EXIT_OK);
    }
}
