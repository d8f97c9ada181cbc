use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use motivic_steenrod::algebra::{
    format_element, format_monomial, make_algebra, parse_element, AlgebraKind, BiDegree, Element, Presentation,
};
use motivic_steenrod::anss::{motivic_assemble, Chart};
use motivic_steenrod::dual::SteenrodAlgebra;
use motivic_steenrod::hopf::coproduct;
use motivic_steenrod::quotient::{ko_steps, ladder_verify, step_by_name, tmf_steps, LadderReport, LadderStep};
use motivic_steenrod::resolution::{
    cobar_ext, ext_chart, first_difference, read_checkpoint, write_checkpoint, Resolution, DEFAULT_COBAR_CAP,
};
use motivic_steenrod::svg::{render_summands, render_truncation, ChartStyle};

/// Bad flags, unparsable text or unreadable input: exit status 2.
#[derive(Debug)]
struct BadInput(String);

impl fmt::Display for BadInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BadInput {}

fn bad_input(e: impl fmt::Display) -> anyhow::Error {
    anyhow::Error::new(BadInput(e.to_string()))
}

#[derive(Parser)]
#[command(
    name = "motivic",
    version,
    about = "Computations with the C-motivic dual Steenrod algebra"
)]
struct Cli {
    /// TOML file with chart colors (keys: background, grid, text, free,
    /// torsion, class, differential, zero_region)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the monomial basis in one bidegree, highest monomial first
    Basis {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        stem: i32,
        #[arg(long, allow_hyphen_values = true)]
        weight: i32,
    },
    /// Multiply elements, e.g. `mul --algebra A t0 t0`
    Mul(ElementArgs),
    /// Coproduct of one element, printed as `left|right` terms
    Comul(ElementArgs),
    /// Product in the Steenrod algebra, e.g. `dualmul Sq2 Sq2` or `dualmul 'dual(x1)' Q0`
    Dualmul {
        #[arg(required = true)]
        elements: Vec<String>,
        /// Largest stem of generator the parser accepts
        #[arg(long, default_value_t = 64)]
        stem_limit: i32,
    },
    /// Minimal resolution over a finite quotient.
    ///
    /// Chart TSV columns: s, f, w, dim (weights 0..=t/2; lower weights repeat
    /// weight 0). Summand TSV columns: s, f, top_w, length (`free` for
    /// tau-free summands).
    Resolve {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        max_stem: i32,
        #[arg(long)]
        max_f: u32,
        /// Resume from this file if present and rewrite it after every step
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Cross-check every dimension against the cobar complex
        #[arg(long)]
        oracle: bool,
        /// Chart TSV (default: stdout)
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        summands: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Stop once this many maps exist (the checkpoint keeps the progress)
        #[arg(long, hide = true)]
        stop_after: Option<u32>,
    },
    /// Truncate a classical chart at weight w, keeping classes with s+f >= 2w
    Truncate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        weight: i32,
        /// Truncated chart (default: stdout)
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Assemble the motivic E-infinity page of a classical chart.
    ///
    /// TSV columns: s, f, w, dim, tau_rank, where tau_rank is the rank of
    /// tau from weight w to weight w-1. Only nonzero entries are listed.
    Motivic {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to the weight where the truncation becomes trivial
        #[arg(long, allow_hyphen_values = true)]
        wmin: Option<i32>,
        /// Defaults to the largest weight with a nonzero entry
        #[arg(long, allow_hyphen_values = true)]
        wmax: Option<i32>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check the cofiber-sequence dimension ladder.
    ///
    /// `all` runs A//E(2) -> A//F -> A//G -> A//A(2); `1`, `2`, `3` run one of
    /// those steps; `ko` runs A -> A//E(0) -> A//E(1) -> A//A(1). A step tag
    /// such as `E1-A1` also works. TSV columns: s, w, lhs, rhs, status.
    Ladder {
        #[arg(long, default_value = "all")]
        step: String,
        #[arg(long, default_value_t = 24)]
        max_stem: i32,
        /// Full TSV of every checked bidegree
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ElementArgs {
    #[arg(long, default_value = "A")]
    algebra: String,
    #[arg(required = true)]
    elements: Vec<String>,
    /// Generators above this stem are not available to the parser
    #[arg(long, default_value_t = 64)]
    stem_limit: i32,
}

fn algebra_kind(name: &str) -> Result<AlgebraKind> {
    name.parse().map_err(bad_input)
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| bad_input(format!("cannot read {}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_atomically(path: &Path, text: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, text).with_context(|| format!("writing {}", path.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("replacing {}", path.display()))
}

fn parse_elements(p: &Presentation, texts: &[String]) -> Result<Vec<Element>> {
    texts
        .iter()
        .map(|t| {
            let e = parse_element(t, p).map_err(bad_input)?;
            if !p.is_homogeneous(&e) {
                return Err(bad_input(format!("`{t}` is not homogeneous")));
            }
            Ok(p.normalize_element(&e))
        })
        .collect()
}

fn load_chart(path: &Path) -> Result<Chart> {
    Chart::parse(&read_input(path)?).map_err(bad_input)
}

fn run(cli: Cli) -> Result<()> {
    let style = match &cli.config {
        Some(path) => ChartStyle::from_toml(&read_input(path)?).map_err(bad_input)?,
        None => ChartStyle::default(),
    };
    match cli.command {
        Command::Basis { algebra, stem, weight } => {
            let p = make_algebra(algebra_kind(&algebra)?, stem.max(0));
            for m in p.basis(BiDegree::new(stem, weight))? {
                println!("{}", format_monomial(&m, &p));
            }
        }
        Command::Mul(args) => {
            let p = make_algebra(algebra_kind(&args.algebra)?, args.stem_limit);
            let elements = parse_elements(&p, &args.elements)?;
            let product = elements[1..]
                .iter()
                .fold(elements[0].clone(), |acc, e| p.multiply(&acc, e));
            println!("{}", format_element(&product, &p));
        }
        Command::Comul(args) => {
            let p = make_algebra(algebra_kind(&args.algebra)?, args.stem_limit);
            let elements = parse_elements(&p, &args.elements)?;
            if elements.len() != 1 {
                bail!(bad_input("comul takes exactly one element"));
            }
            println!("{}", coproduct(&elements[0], &p)?.format(&p));
        }
        Command::Dualmul { elements, stem_limit } => {
            let a = SteenrodAlgebra::new(stem_limit);
            let parsed = elements
                .iter()
                .map(|t| a.parse(t).map_err(bad_input))
                .collect::<Result<Vec<_>>>()?;
            let mut acc = parsed[0].clone();
            for x in &parsed[1..] {
                acc = a.product(&acc, x)?;
            }
            println!("{}", a.format(&acc));
        }
        Command::Resolve {
            algebra,
            max_stem,
            max_f,
            checkpoint,
            oracle,
            output,
            summands,
            svg,
            stop_after,
        } => {
            let kind = algebra_kind(&algebra)?;
            let mut res = match checkpoint.as_deref().filter(|p| p.exists()) {
                Some(path) => {
                    let r = read_checkpoint(&read_input(path)?, kind, max_stem, max_f)?;
                    eprintln!("resumed from {} with {} maps", path.display(), r.maps_built());
                    r
                }
                None => Resolution::new(kind, max_stem, max_f)?,
            };
            while !res.is_complete() {
                if stop_after.is_some_and(|k| res.maps_built() >= k) {
                    eprintln!("stopped after {} maps", res.maps_built());
                    return Ok(());
                }
                res.step();
                if let Some(path) = &checkpoint {
                    write_atomically(path, &write_checkpoint(&res))?;
                }
            }
            let chart = ext_chart(&res);
            if oracle {
                let expected = cobar_ext(kind, max_stem, max_f, DEFAULT_COBAR_CAP)?;
                if let Some((d, got, want)) = first_difference(&chart.dims, &expected) {
                    bail!("oracle disagreement at (s,f,w) = {d}: resolution {got}, cobar {want}");
                }
                eprintln!("oracle: ok");
            }
            emit(output.as_deref(), &chart.to_tsv())?;
            if let Some(path) = summands {
                fs::write(&path, chart.summands_tsv()).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = svg {
                let dots: Vec<_> = chart
                    .summands
                    .iter()
                    .map(|c| (c.stem, c.filtration, c.summand))
                    .collect();
                let title = format!("Ext over {} through internal stem {max_stem}", kind);
                fs::write(&path, render_summands(&title, &dots, &style))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Truncate {
            input,
            weight,
            output,
            svg,
        } => {
            let chart = load_chart(&input)?;
            let text = if chart.is_empty() {
                String::new()
            } else {
                format!("# zero region: s + f < {}\n{}", 2 * weight, chart.truncate(weight)?)
            };
            emit(output.as_deref(), &text)?;
            if let Some(path) = svg {
                fs::write(&path, render_truncation(&chart, weight, &style))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Motivic {
            input,
            wmin,
            wmax,
            output,
            svg,
        } => {
            let chart = load_chart(&input)?;
            if chart.is_empty() {
                return emit(output.as_deref(), "");
            }
            let w_min = wmin.unwrap_or_else(|| chart.stable_weight().unwrap_or(0));
            let top = chart
                .classes()
                .iter()
                .map(|c| c.total().div_euclid(2))
                .max()
                .unwrap_or(0);
            let w_max = wmax.unwrap_or(top);
            if w_max < w_min {
                bail!(bad_input(format!("--wmax {w_max} is below --wmin {w_min}")));
            }
            let m = motivic_assemble(&chart, w_min, w_max)?;
            emit(output.as_deref(), &m.to_tsv())?;
            if let Some(path) = svg {
                let dots: Vec<_> = m
                    .summands()
                    .into_iter()
                    .flat_map(|((s, f), v)| v.into_iter().map(move |x| (s, f, x)))
                    .collect();
                let title = format!("motivic E-infinity, weights {w_min}..{w_max}");
                fs::write(&path, render_summands(&title, &dots, &style))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Ladder { step, max_stem, output } => {
            let (steps, conclusion): (Vec<LadderStep>, Option<&str>) = match step.as_str() {
                "all" => (tmf_steps().to_vec(), Some("A//A(2)")),
                "ko" => (ko_steps().to_vec(), Some("A//A(1)")),
                "1" | "2" | "3" => (vec![tmf_steps()[step.parse::<usize>()? - 1]], None),
                name => (vec![step_by_name(name).map_err(bad_input)?], None),
            };
            let reports = steps
                .iter()
                .map(|s| ladder_verify(s, max_stem))
                .collect::<Result<Vec<LadderReport>, _>>()?;
            if let Some(path) = output {
                let mut text = String::new();
                for r in &reports {
                    text.push_str(&format!("# {}\n{}", r.step.name(), r.to_tsv()));
                }
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            let mut failed = false;
            for r in &reports {
                let status = if r.ok() { "ok" } else { "FAIL" };
                println!(
                    "step {} ({}): {status}, {} bidegrees",
                    r.step.name(),
                    r.step,
                    r.rows.len()
                );
                if !r.operator_nonzero {
                    println!("  {} vanishes on the bottom cell of the source", r.step.operator);
                }
                if r.failures().next().is_some() {
                    println!("s\tw\tlhs\trhs\tstatus");
                    for row in r.failures() {
                        println!(
                            "{}\t{}\t{}\t{}\tFAIL",
                            row.degree.stem, row.degree.weight, row.lhs, row.rhs
                        );
                    }
                }
                failed |= !r.ok();
            }
            if failed {
                bail!("ladder check failed through stem {max_stem}");
            }
            if let Some(name) = conclusion {
                println!("CERTIFIED {name} through stem {max_stem}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<BadInput>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
