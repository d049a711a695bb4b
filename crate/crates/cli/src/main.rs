use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use idcodes::bounds::{check_layer_lemmas, layer_analysis, lower_bounds, Role};
use idcodes::construct3::{
    construct_c1, construct_cl, construct_cq, construct_ct, diagonal_indices, extend_identifying,
};
use idcodes::format::{
    parse_code, parse_graph, parse_labelled_code, parse_latin, write_code, write_labelled_code, write_latin,
};
use idcodes::latin::{code_to_latin, cyclic_latin, latin_to_code};
use idcodes::linear::{sid_coset_construction, sld_repeated_column, ENUMERATION_BUDGET};
use idcodes::search::{exists_code, optimal_size, SearchProblem, DEFAULT_NODE_BUDGET};
use idcodes::{verify, Code, Error, Exec, GenericGraph, Graph, HammingGraph, Labels, Property, VerificationReport};

const VERSION: &str = env!("CARGO_PKG_VERSION");

mod exit {
    pub const FAIL: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const IO: u8 = 3;
    pub const PARSE: u8 = 4;
    pub const BUDGET: u8 = 5;
    pub const PRECONDITION: u8 = 6;
    pub const INTERNAL: u8 = 7;
}

#[derive(Parser)]
#[command(name = "idcodes", version, about = "Identifying, self-identifying and self-locating-dominating codes")]
struct Cli {
    /// Run every data-parallel loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write it as a code file.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        /// Latin square file for `latin-sld`; the cyclic square otherwise.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a property of a code file.
    Verify {
        #[arg(long, value_parser = parse_property)]
        property: Property,
        #[arg(long = "in")]
        input: PathBuf,
        /// Remove the vertices (j,j,j) before checking.
        #[arg(long)]
        delete_diagonal: bool,
        /// Edge-list graph; the code file then lists vertex labels.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Layer statistics and layer inequalities of a code in K_q^3.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Lower bounds for K_q^n.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
    },
    /// Exhaustive search for a code of a given size, or the optimum.
    Search {
        #[arg(long, value_enum)]
        graph: GraphKind,
        #[arg(long, value_parser = parse_property)]
        property: Property,
        /// Omit to search for the smallest size.
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        /// Edge-list graph for `--graph file`.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Convert between 1-based and 0-based code files, or Latin squares and codes.
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cq,
    C1,
    Cl,
    Ct,
    Ext3,
    SidCoset,
    SldRepeat,
    LatinSld,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Kq3,
    Kqn,
    Fq,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// 1-based coordinates.
    K,
    /// 0-based coordinates over F_q.
    Fq,
    /// Latin square grid (input is a code file).
    Latin,
    /// Code file (input is a Latin square grid).
    Code,
}

fn parse_property(s: &str) -> Result<Property, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = Result<u8, Failure>;

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{family} needs --{flag}")))
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure::Lib(Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_error(path, e))
}

/// The run header goes into written files; on stdout it is already printed.
fn file_header(header: &[String], out: Option<&Path>) -> Vec<String> {
    if out.is_some() {
        header.to_vec()
    } else {
        Vec::new()
    }
}

fn emit(text: &str, out: Option<&Path>, what: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| io_error(p, e))?;
            println!("wrote {what} to {}", p.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn report<G: Graph>(code: &Code<G>, r: &VerificationReport) -> u8 {
    if r.holds {
        println!("PASS {}: {} codewords", r.property, code.len());
        0
    } else {
        let why = r.witness.as_ref().map(|w| w.describe(code.graph())).unwrap_or_default();
        println!("FAIL {}: {why}", r.property);
        exit::FAIL
    }
}

fn construct(args: &Command, header: &[String]) -> Run {
    let Command::Construct { family, q, t, k, l, r, input, out } = args else { unreachable!() };
    let code = match family {
        Family::Cq => construct_cq(need(*q, "q", "cq")?)?,
        Family::C1 => construct_c1(),
        Family::Cl => construct_cl(),
        Family::Ct => construct_ct(need(*t, "t", "ct")?)?,
        Family::Ext3 => extend_identifying(&construct_ct(t.unwrap_or(1))?, need(*r, "r", "ext3")?)?,
        Family::SidCoset => sid_coset_construction(need(*q, "q", "sid-coset")?, need(*k, "k", "sid-coset")?)?,
        Family::SldRepeat => sld_repeated_column(
            need(*q, "q", "sld-repeat")?,
            need(*k, "k", "sld-repeat")?,
            l.unwrap_or(0),
            ENUMERATION_BUDGET,
        )?,
        Family::LatinSld => {
            let square = match input {
                Some(p) => parse_latin(&read(p)?)?,
                None => cyclic_latin(need(*q, "q", "latin-sld")? as usize),
            };
            latin_to_code(&square)?
        }
    };
    let mut comments = file_header(header, out.as_deref());
    comments.push(format!("{} codewords", code.len()));
    emit(&write_code(&code, &comments), out.as_deref(), &format!("{} codewords", code.len()))?;
    Ok(0)
}

fn run(cli: &Cli, header: &[String]) -> Run {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.command {
        c @ Command::Construct { .. } => construct(c, header),
        Command::Verify { property, input, delete_diagonal, graph } => {
            let text = read(input)?;
            if let Some(gp) = graph {
                if *delete_diagonal {
                    return Err(Failure::Usage("--delete-diagonal applies to K_q^3 code files only".into()));
                }
                let g = parse_graph(&read(gp)?)?;
                let code = parse_labelled_code(&g, &text)?;
                return Ok(report(&code, &verify(&code, *property, exec)?));
            }
            let mut code = parse_code(&text, None)?;
            if *delete_diagonal {
                let g = code.graph();
                if g.n() != 3 {
                    return Err(Failure::Usage("--delete-diagonal needs a code in K_q^3".into()));
                }
                let h = g.clone().with_deleted(diagonal_indices(g))?;
                code = code.rehome(h)?;
            }
            Ok(report(&code, &verify(&code, *property, exec)?))
        }
        Command::Analyze { input } => {
            let code = parse_code(&read(input)?, None)?;
            let a = layer_analysis(&code, exec)?;
            println!("axis index size a f k |X| |Y|");
            for s in &a.layers {
                println!(
                    "{} {} {} {} {} {} {} {}",
                    s.axis,
                    s.index,
                    s.layer_code.len(),
                    s.a(),
                    s.f(),
                    s.k,
                    s.x_set.len(),
                    s.y_set.len()
                );
            }
            let roles = |want| a.roles.iter().filter(|r| r.role == want).count();
            println!("corners={} fellows={} plain={}", roles(Role::Corner), roles(Role::Fellow), roles(Role::Plain));
            if !verify(&code, Property::Id, exec)?.holds {
                println!("FAIL id: layer inequalities apply to identifying codes only");
                return Ok(exit::FAIL);
            }
            let lemmas = check_layer_lemmas(&code, exec)?;
            print!("{lemmas}");
            Ok(if lemmas.all_hold() { 0 } else { exit::FAIL })
        }
        Command::Bounds { q, n } => {
            print!("{}", lower_bounds(*q, *n)?);
            Ok(0)
        }
        Command::Search { graph, property, size, q, n, file, budget, no_symmetry } => {
            let symmetry = !no_symmetry;
            match graph {
                GraphKind::File => {
                    let g = parse_graph(&read(&need(file.clone(), "file", "--graph file")?)?)?;
                    let p = SearchProblem::new(g, *property, size.unwrap_or(1)).with_budget(*budget).with_symmetry(symmetry);
                    search_and_print(&p, *size, exec, |c: &Code<GenericGraph>| write_labelled_code(c, &[]))
                }
                kind => {
                    let q = need(*q, "q", "search")?;
                    let g = match kind {
                        GraphKind::Kq3 => HammingGraph::new(q, 3)?,
                        GraphKind::Kqn => HammingGraph::new(q, need(*n, "n", "--graph kqn")?)?,
                        _ => HammingGraph::words(q, need(*n, "n", "--graph fq")?)?,
                    };
                    let p = SearchProblem::hamming(g, *property, size.unwrap_or(1))
                        .with_budget(*budget)
                        .with_symmetry(symmetry);
                    search_and_print(&p, *size, exec, |c: &Code| write_code(c, &[]))
                }
            }
        }
        Command::Convert { input, to, out } => {
            let text = read(input)?;
            let out = out.as_deref();
            let header = &file_header(header, out);
            match to {
                Target::K | Target::Fq => {
                    let code = parse_code(&text, None)?;
                    let labels = if matches!(to, Target::K) { Labels::OneBased } else { Labels::ZeroBased };
                    let g = code.graph().clone().with_labels(labels);
                    emit(&write_code(&code.rehome(g)?, header), out, "code")?;
                }
                Target::Latin => {
                    let code = parse_code(&text, None)?;
                    let mut s = header.iter().map(|h| format!("# {h}\n")).collect::<String>();
                    s.push_str(&write_latin(&code_to_latin(&code)?));
                    emit(&s, out, "Latin square")?;
                }
                Target::Code => {
                    let code = latin_to_code(&parse_latin(&text)?)?;
                    emit(&write_code(&code, header), out, "code")?;
                }
            }
            Ok(0)
        }
    }
}

fn search_and_print<G, F>(p: &SearchProblem<G>, size: Option<usize>, exec: Exec, write: F) -> Run
where
    G: Graph + Clone + Send,
    F: Fn(&Code<G>) -> String,
{
    let found = match size {
        Some(_) => exists_code(p, exec)?,
        None => Some(optimal_size(p, exec)?.1),
    };
    match found {
        Some(code) => {
            println!("SAT size={}", code.len());
            print!("{}", write(&code));
            Ok(0)
        }
        None => {
            println!("UNSAT size={}", p.size);
            Ok(exit::FAIL)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) => exit::USAGE,
        Error::Io(_) => exit::IO,
        Error::Parse { .. } => exit::PARSE,
        Error::BudgetExceeded { .. } => exit::BUDGET,
        Error::Precondition(_) | Error::Unsupported(_) | Error::TooLarge(_) => exit::PRECONDITION,
        Error::Internal(_) => exit::INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let header = vec![format!("idcodes {VERSION}"), format!("args: {}", args.join(" "))];
    for h in &header {
        println!("# {h}");
    }
    match run(&cli, &header) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::USAGE)
        }
        Err(Failure::Lib(e)) => {
            let kind = match e {
                Error::Io(_) => "i/o error",
                Error::Parse { .. } => "malformed input",
                Error::BudgetExceeded { .. } => "search refused",
                _ => "error",
            };
            eprintln!("{kind}: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
