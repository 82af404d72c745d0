//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::entropy::{complexity_with_tol, entropy_estimate};
use crate::error::{Error, Result};
use crate::finsemi::{FiniteSemigroup, GreenStructure};
use crate::idempotent::{evaluate_zimin, loop_language};
use crate::shiftspace::{conjugate_with_partial_alphabet, higher_block, non_minimal_witness, Presentation};
use crate::syntactic::{fischer_cover, is_aggm_with, syntactic_semigroup_capped};
use crate::wreath::{cover_base_for_shift, plan_cover};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "sofic", version, about = "Finite semigroup tools for irreducible sofic shifts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest word length for complexity counts.
    #[arg(long, global = true, default_value_t = 24)]
    pub nmax: usize,
    /// Tolerance for the Perron bracket, in bits.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Size cap for semigroup closures.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    pub cap: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Syntactic semigroup and its J-classes.
    Syntactic { presentation: PathBuf },
    /// AGGM test of the syntactic semigroup.
    Aggm { presentation: PathBuf },
    /// Fischer cover, as a presentation file.
    Fischer { presentation: PathBuf },
    /// Eggbox diagram of a semigroup file.
    Green { semigroup: PathBuf },
    /// Zimin idempotent for the loops at a vertex.
    Idempotent { presentation: PathBuf, vertex: usize, semigroup: Option<PathBuf> },
    /// Complexity counts and entropy.
    Entropy { presentation: PathBuf },
    /// Higher-block presentation.
    Block { presentation: PathBuf, n: usize },
    /// Maximal-subgroup cover for a group `H` and a map `H → K`.
    Cover {
        presentation: PathBuf,
        /// Semigroup file holding the group `H`.
        h_group: PathBuf,
        /// Images of the elements of `H` in `K`: a file or an inline list like `0,1,0,1`.
        alpha_map: String,
    },
    /// Non-minimality witness and the conjugacy to a partial alphabet.
    Witness { presentation: PathBuf },
}

/// Exit status and the text written to standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match execute(&cli) {
            Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
            Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: error_line(&e) },
        },
        Err(e) if !e.use_stderr() => Outcome { code: 0, stdout: e.to_string(), stderr: String::new() },
        Err(e) => {
            let detail = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            Outcome { code: 1, stdout: String::new(), stderr: format!("ERR Usage {detail}\n") }
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::CountOverflow(_) | Error::PrimeSearchFailed(_) => 2,
        _ => 1,
    }
}

pub fn error_line(e: &Error) -> String {
    format!("ERR {} {}\n", e.code(), e.to_string().replace('\n', " "))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })
}

fn presentation(path: &Path) -> Result<Presentation> {
    Presentation::parse(&read(path)?)
}

fn semigroup(path: &Path, seed: u64) -> Result<FiniteSemigroup> {
    FiniteSemigroup::parse(&read(path)?, seed)
}

fn alpha_list(arg: &str) -> Result<Vec<usize>> {
    let text = if Path::new(arg).is_file() { read(Path::new(arg))? } else { arg.to_string() };
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse { line: 0, msg: format!("bad alpha entry {t:?}") }))
        .collect()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// One block per J-class: rows are R-classes, columns L-classes, cells the
/// H-class members with idempotents starred.
pub fn eggbox(s: &FiniteSemigroup, green: &GreenStructure) -> String {
    let mut out = String::new();
    for j in 0..green.num_j_classes() {
        let members = green.j_members(j);
        let _ = writeln!(out, "jclass {j} size {} regular {}", members.len(), green.regular[j]);
        let rs = green.r_classes_in(j);
        let ls = green.l_classes_in(j);
        for &r in &rs {
            let cells: Vec<String> = ls
                .iter()
                .map(|&l| {
                    let cell: Vec<String> = members
                        .iter()
                        .filter(|&&x| green.r_class[x] == r && green.l_class[x] == l)
                        .map(|&x| if s.is_idempotent(x) { format!("{x}*") } else { x.to_string() })
                        .collect();
                    if cell.is_empty() { "-".into() } else { cell.join(",") }
                })
                .collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
    }
    out
}

pub fn execute(cli: &Cli) -> Result<String> {
    let mut out = String::new();
    match &cli.command {
        Command::Syntactic { presentation: path } => {
            let d = syntactic_semigroup_capped(&presentation(path)?, cli.cap)?;
            let s = &d.semigroup;
            let green = s.green_structure();
            let _ = writeln!(out, "semigroup_size {}", s.size());
            for (name, &x) in d.alphabet.iter().zip(&d.letter_map) {
                let _ = writeln!(out, "letter {name} {x}");
            }
            let _ = writeln!(out, "zero {}", s.zero().map_or("none".into(), |z| z.to_string()));
            let _ = writeln!(out, "j_classes {}", green.num_j_classes());
            out.push_str(&eggbox(s, &green));
            out.push_str(&s.to_text());
        }
        Command::Aggm { presentation: path } => {
            let p = presentation(path)?;
            let d = syntactic_semigroup_capped(&p, cli.cap)?;
            let s = &d.semigroup;
            let green = s.green_structure();
            let report = is_aggm_with(s, &green);
            let class_size = report.as_ref().map_or(0, |r| r.class_members.len());
            let subgroup_trivial = report.as_ref().and_then(|r| r.class_members.first()).is_none_or(|&x| {
                green.h_members(x).len() == 1
            });
            let fischer_states = fischer_cover(&d).map(|f| f.num_states).ok();
            match cli.format {
                Format::Tsv => {
                    let _ = writeln!(out, "is_aggm {} distinguished_class_size {class_size}", report.is_some());
                    let _ = writeln!(out, "semigroup_size {}", s.size());
                    let _ = writeln!(out, "subgroup_trivial {subgroup_trivial}");
                    let _ = writeln!(out, "fischer_states {}", fischer_states.map_or("none".into(), |n| n.to_string()));
                }
                Format::Json => {
                    let v = json!({
                        "semigroup_size": s.size(),
                        "is_aggm": report.is_some(),
                        "distinguished_class_size": class_size,
                        "subgroup_trivial": subgroup_trivial,
                        "fischer_states": fischer_states,
                    });
                    let _ = writeln!(out, "{v}");
                }
            }
        }
        Command::Fischer { presentation: path } => {
            let d = syntactic_semigroup_capped(&presentation(path)?, cli.cap)?;
            out.push_str(&fischer_cover(&d)?.to_text());
        }
        Command::Green { semigroup: path } => {
            let s = semigroup(path, cli.seed)?;
            let green = s.green_structure();
            let _ = writeln!(out, "semigroup_size {}", s.size());
            let _ = writeln!(out, "j_classes {}", green.num_j_classes());
            out.push_str(&eggbox(&s, &green));
        }
        Command::Idempotent { presentation: path, vertex, semigroup: target } => {
            let p = presentation(path)?;
            let t = loop_language(&p, *vertex)?;
            let (s, gens) = match target {
                Some(f) => {
                    let s = semigroup(f, cli.seed)?;
                    let gens = s.generators().to_vec();
                    (s, gens)
                }
                None => {
                    let d = syntactic_semigroup_capped(&p, cli.cap)?;
                    (d.semigroup, d.letter_map)
                }
            };
            let res = evaluate_zimin(&t, &s, &gens)?;
            let digits = res.bound.to_string();
            let bound =
                if digits.len() <= 40 { digits } else { format!("sum_{{i=1}}^{{{}}} {}^i", res.r, gens.len()) };
            let _ = writeln!(out, "rho {}", res.rho);
            let _ = writeln!(out, "n_star {}", res.n_star);
            let _ = writeln!(out, "m {}", t.m);
            let _ = writeln!(out, "r {}", res.r);
            let _ = writeln!(out, "bound {bound}");
            let _ = writeln!(out, "chain {}", join(&res.chain, " "));
            let _ = writeln!(out, "image {}", join(&res.image, " "));
            let _ = writeln!(out, "witness_length {}", res.term.len());
            out.push_str(&res.term.pretty(&p.alphabet));
            out.push('\n');
        }
        Command::Entropy { presentation: path } => {
            let p = presentation(path)?;
            let prof = complexity_with_tol(&p, cli.nmax, cli.tol)?;
            let est = entropy_estimate(&p, cli.nmax, cli.tol)?;
            match cli.format {
                Format::Tsv => {
                    out.push_str("n\tq(n)\tlog2(q(n))/n\n");
                    for (i, &q) in prof.counts.iter().enumerate() {
                        let n = i + 1;
                        let _ = writeln!(out, "{n}\t{q}\t{:.6}", (q as f64).log2() / n as f64);
                    }
                    let _ = writeln!(out, "counting\t-\t{:.6}", est.counting);
                    let _ = writeln!(out, "lower\t-\t{:.9}", est.lower);
                    let _ = writeln!(out, "upper\t-\t{:.9}", est.upper);
                    let _ = writeln!(out, "h\t-\t{:.6}", est.value);
                }
                Format::Json => {
                    let v = json!({
                        "counts": prof.counts.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                        "entropy_upper": prof.entropy_upper,
                        "counting": est.counting,
                        "lower": est.lower,
                        "upper": est.upper,
                        "h": est.value,
                    });
                    let _ = writeln!(out, "{v}");
                }
            }
        }
        Command::Block { presentation: path, n } => {
            if *n == 0 {
                return Err(Error::CheckFailed("block length must be positive".into()));
            }
            out.push_str(&higher_block(&presentation(path)?, *n)?.presentation.to_text());
        }
        Command::Cover { presentation: path, h_group, alpha_map } => {
            let p = presentation(path)?;
            let h = semigroup(h_group, cli.seed)?;
            let alpha = alpha_list(alpha_map)?;
            let base = cover_base_for_shift(&p, cli.cap)?;
            let res = plan_cover(base.with_group(h, alpha))?.build(cli.cap, cli.seed)?;
            let r = &res.report;
            let _ = writeln!(out, "size {}", r.size);
            let _ = writeln!(out, "j_prime_size {}", r.j_prime_size);
            let _ = writeln!(out, "subgroup_size {}", r.subgroup_size);
            let _ = writeln!(out, "words_checked {}", r.words_checked);
            let _ = writeln!(out, "sampled_words {}", r.sampled_words);
            let _ = writeln!(out, "preimage_checks {}", r.preimage_checks);
            match &r.preimage_mismatch {
                None => out.push_str("preimage_mismatch none\n"),
                Some(g) => {
                    let word = join(g.word.iter().map(|&x| &res.plan.input.alphabet[x]), "");
                    let _ = writeln!(out, "preimage_mismatch {word} found {} expected {}", g.found, g.expected);
                }
            }
            out.push_str(&res.to_text());
        }
        Command::Witness { presentation: path } => {
            let p = presentation(path)?;
            let (w, v) = non_minimal_witness(&p)?;
            let (hb, z) = conjugate_with_partial_alphabet(&p)?;
            let _ = writeln!(out, "w {}", p.format_word(&w));
            let _ = writeln!(out, "v {}", p.format_word(&v));
            let _ = writeln!(out, "block_length {}", hb.n);
            let _ = writeln!(out, "z {}", join(z.iter().map(|&x| &hb.presentation.alphabet[x]), " "));
            out.push_str(&hb.presentation.to_text());
        }
    }
    Ok(out)
}
