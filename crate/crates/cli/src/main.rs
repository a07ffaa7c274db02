use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latspace::checks::{run_selfcheck, DEFAULT_SEED};
use latspace::distributed::{delta_group, group_projection, join_projection, Method};
use latspace::epistemic::{AumannStructure, Formula, KripkeUniverse};
use latspace::morphology::{dilate, distributed_dilation, erode, Bitmap, DefaultOrigin};
use latspace::space::agent_projection;
use latspace::{Error, FiniteLattice, Limits, Scs};
use serde_json::json;

#[derive(Parser)]
#[command(name = "latspace", version, about = "Spatial constraint systems on finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProjectionKind {
    Agent,
    Join,
    Group,
}

#[derive(Clone, Copy, ValueEnum)]
enum MorphOp {
    Dilate,
    Erode,
    Ddilate,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice file and summarize it
    LatticeCheck {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
    },
    /// Validate an scs file and classify its agents
    ScsCheck {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
    },
    /// Distributed space of a group
    Delta {
        #[arg(long)]
        scs: PathBuf,
        /// Comma-separated agent names; empty for the empty group
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "tuple")]
        method: String,
        /// Print only the value at this element
        #[arg(long)]
        at: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
    },
    /// Agent, join or group projection of an element
    Project {
        #[arg(long)]
        scs: PathBuf,
        #[arg(long)]
        group: String,
        #[arg(long)]
        at: String,
        #[arg(long, value_enum)]
        kind: ProjectionKind,
        #[arg(long, default_value = "tuple")]
        method: String,
    },
    /// Pointed states satisfying a modal formula
    Kripke {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        /// Evaluate through the induced scs instead of the relations
        #[arg(long)]
        via_scs: bool,
    },
    /// Distributed knowledge of an event in an Aumann structure
    Aumann {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        group: String,
        /// Comma-separated state names
        #[arg(long)]
        event: String,
    },
    /// Dilate, erode or distributed-dilate a PBM image
    Morph {
        #[arg(long, value_enum)]
        op: MorphOp,
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        se: PathBuf,
        #[arg(long, required_if_eq("op", "ddilate"))]
        se2: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the invariant suite on seeded random instances
    Selfcheck {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    match run(cli.command, &limits) {
        Ok(code) => code,
        Err(e) => {
            let detail = e.to_string().replace('\n', " ");
            eprintln!("ERROR {}: {detail}", e.code());
            ExitCode::from(1)
        }
    }
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn print_table(header: [&str; 2], rows: &[(String, String)]) {
    let w = rows
        .iter()
        .map(|(a, _)| width(a))
        .chain([width(header[0])])
        .max()
        .unwrap_or(0);
    let pad = |s: &str| format!("{s}{}", " ".repeat(w - width(s)));
    println!("{}  {}", pad(header[0]), header[1]);
    for (a, b) in rows {
        println!("{}  {b}", pad(a));
    }
}

fn lattice_summary(l: &FiniteLattice) -> serde_json::Value {
    let witness = l
        .distributivity_witness()
        .map(|w| w.iter().map(|&e| l.label(e).to_string()).collect::<Vec<_>>());
    json!({
        "elements": l.len(),
        "distributive": witness.is_none(),
        "witness": witness,
        "bottom": l.label(l.bottom()),
        "top": l.label(l.top()),
    })
}

fn print_summary(summary: &serde_json::Value) {
    println!("elements: {}", summary["elements"]);
    match summary["witness"].as_array() {
        None => println!("distributive: yes"),
        Some(w) => {
            let w: Vec<&str> = w.iter().filter_map(|v| v.as_str()).collect();
            println!("distributive: no (witness {})", w.join(", "));
        }
    }
    println!("bottom: {}", summary["bottom"].as_str().unwrap_or_default());
    println!("top: {}", summary["top"].as_str().unwrap_or_default());
}

fn run(command: Command, limits: &Limits) -> latspace::Result<ExitCode> {
    match command {
        Command::LatticeCheck { file, emit } => {
            let l = FiniteLattice::load(&file, limits.max_elements)?;
            let summary = lattice_summary(&l);
            match emit {
                Emit::Table => print_summary(&summary),
                Emit::Json => println!("{summary}"),
            }
        }
        Command::ScsCheck { file, emit } => {
            let scs = Scs::load(&file, limits.max_elements)?;
            let mut summary = lattice_summary(scs.lattice());
            let agents: Vec<serde_json::Value> = scs
                .agents()
                .iter()
                .map(|(name, f)| {
                    let c = f.classify();
                    json!({"agent": name, "idempotent": c.idempotent, "extensive": c.extensive})
                })
                .collect();
            match emit {
                Emit::Table => {
                    print_summary(&summary);
                    for a in &agents {
                        println!(
                            "agent {}: space function, idempotent={}, extensive={}",
                            a["agent"].as_str().unwrap_or_default(),
                            a["idempotent"],
                            a["extensive"]
                        );
                    }
                }
                Emit::Json => {
                    summary["agents"] = json!(agents);
                    println!("{summary}");
                }
            }
        }
        Command::Delta {
            scs,
            group,
            method,
            at,
            emit,
        } => {
            let scs = Scs::load(&scs, limits.max_elements)?;
            let method: Method = method.parse()?;
            let group = split_list(&group);
            let delta = delta_group(&scs, &group, method, limits.max_enum)?;
            let l = scs.lattice();
            match at {
                Some(label) => {
                    let value = l.label(delta.apply(l.elem(&label)?));
                    match emit {
                        Emit::Table => println!("{value}"),
                        Emit::Json => println!("{}", json!({"at": label, "value": value})),
                    }
                }
                None => {
                    let rows: Vec<(String, String)> = l
                        .elements()
                        .map(|c| (l.label(c).to_string(), l.label(delta.apply(c)).to_string()))
                        .collect();
                    match emit {
                        Emit::Table => print_table(["c", "Δ(c)"], &rows),
                        Emit::Json => {
                            let images: Vec<_> = rows.iter().map(|(c, d)| json!([c, d])).collect();
                            println!(
                                "{}",
                                json!({"group": group, "method": method.to_string(), "images": images})
                            );
                        }
                    }
                }
            }
        }
        Command::Project {
            scs,
            group,
            at,
            kind,
            method,
        } => {
            let scs = Scs::load(&scs, limits.max_elements)?;
            let l = scs.lattice();
            let c = l.elem(&at)?;
            let group = split_list(&group);
            let value = match kind {
                ProjectionKind::Agent => match group.as_slice() {
                    [agent] => agent_projection(scs.agent(agent)?, c)?,
                    _ => {
                        return Err(Error::Unsupported(
                            "agent projection needs exactly one agent".into(),
                        ))
                    }
                },
                ProjectionKind::Join => join_projection(&scs, &group, c)?,
                ProjectionKind::Group => group_projection(&scs, &group, c, method.parse()?, limits.max_enum)?,
            };
            println!("{}", l.label(value));
        }
        Command::Kripke {
            model,
            formula,
            via_scs,
        } => {
            let u = KripkeUniverse::load(&model)?;
            let f: Formula = formula.parse()?;
            let set = if via_scs {
                let ks = u.to_scs(limits)?;
                ks.evaluate(&f, Method::Tuple)?.0 as u64
            } else {
                u.eval(&f)?
            };
            println!("{{{}}}", u.names(set).join(", "));
        }
        Command::Aumann { model, group, event } => {
            let a = AumannStructure::load(&model)?;
            let e = a.event(&split_list(&event))?;
            let g = a.dk(&split_list(&group), e)?;
            println!("{{{}}}", a.names(g).join(", "));
        }
        Command::Morph {
            op,
            image,
            se,
            se2,
            out,
        } => morph(op, &image, &se, se2.as_deref(), &out)?,
        Command::Selfcheck { seed } => {
            println!("selfcheck seed {seed}");
            let results = run_selfcheck(seed);
            for r in &results {
                println!("{r}");
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("{} passed, {failed} failed", results.len() - failed);
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn morph(op: MorphOp, image: &Path, se: &Path, se2: Option<&Path>, out: &Path) -> latspace::Result<()> {
    let x = Bitmap::load(image, DefaultOrigin::TopLeft)?;
    let a = Bitmap::load(se, DefaultOrigin::Center)?.points;
    let result = match op {
        MorphOp::Dilate => dilate(&a, &x.points)?,
        MorphOp::Erode => erode(&a, &x.points)?,
        MorphOp::Ddilate => {
            let se2 = se2.ok_or_else(|| Error::Unsupported("ddilate needs --se2".into()))?;
            let b = Bitmap::load(se2, DefaultOrigin::Center)?.points;
            distributed_dilation(&a, &b, &x.points)?
        }
    };
    let framed = x.reframe(result)?;
    std::fs::write(out, framed.to_pbm())?;
    println!(
        "{} points written to {} ({}x{})",
        framed.points.len(),
        out.display(),
        framed.width,
        framed.height
    );
    Ok(())
}
