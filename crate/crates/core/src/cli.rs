//! The `lie-sseq` command line.
//!
//! Exit codes: 0 success, 2 invalid input (bad JSON, Jacobi or weight
//! failure, bad ring), 3 a verification reported FAIL, 4 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::koszul::dump::dump_blocks;
use crate::koszul::verify::{verify_axioms, AxiomOptions};
use crate::koszul::KoszulComplex;
use crate::lie::{builtin, json, JacobiVerdict, LieAlgebra};
use crate::linalg::Ring;
use crate::spectral::{compute_e1, compute_pages, stratify, PageReport};
use crate::torsion::{integral_table, primes_of, render_table, ucf_against, IntegralCohomology, TorsionPrimes, UcfEntry, UcfVerdict};
use crate::{acceptance, sl2};

#[derive(Parser, Debug)]
#[command(name = "lie-sseq", version, about = "Classifying spectral sequence of a Lie algebra over Z, Q and F_p")]
pub struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "LIE_SSEQ_THREADS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The E₁ page (Koszul cohomology of the symmetric powers).
    E1(Common),
    /// All pages up to the last one, with higher differential ranks.
    Pages(Common),
    /// Integral cohomology by Smith normal form, with the mod-p audit.
    Torsion(TorsionArgs),
    /// E₁ split by weight.
    Stratify(Common),
    /// Run a verification battery; exits 3 on any FAIL.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct Common {
    /// Built-in name (sl2, sl(3), sp4, so3, nonabelian2, abelian:3, A+B) or a JSON file.
    #[arg(long, short)]
    pub algebra: String,
    /// Q, Z or Fp:<p>. Defaults to Q for built-ins and to the file's ring for JSON.
    #[arg(long, short)]
    pub ring: Option<Ring>,
    /// Hodge degree window N.
    #[arg(long = "max-hodge", short = 'N', default_value_t = 6)]
    pub max_hodge: usize,
    #[arg(long, value_enum, default_value_t = Format::Grid)]
    pub format: Format,
    /// Also write every d₀/d₁ block with s ≤ N as sparse triples into DIR.
    #[arg(long, value_name = "DIR")]
    pub dump: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TorsionArgs {
    #[arg(long, short)]
    pub algebra: String,
    #[arg(long = "max-hodge", short = 'N', default_value_t = 6)]
    pub max_hodge: usize,
    /// Primes for the universal-coefficient audit.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
    pub primes: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Grid)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Primes for the sl2 suite.
    #[arg(long, value_delimiter = ',', default_value = "3,5,7,11,13")]
    pub primes: Vec<u64>,
    /// Restrict the acceptance battery to these criteria.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
    /// Text lines or a JSON array.
    #[arg(long, value_enum, default_value_t = Format::Grid)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Grid,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// The numbered acceptance criteria.
    All,
    /// The mod-p sl₂ statements, per prime.
    Sl2,
    /// Differential axioms on the standard algebras.
    Axioms,
}

/// Parses arguments, runs, and maps errors to exit codes.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        // only fails if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.all_passed { 0 } else { 3 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 4,
        _ => 2,
    }
}

/// Rendered output and whether every check in it passed.
pub struct Output {
    pub text: String,
    pub all_passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, all_passed: true }
    }
}

pub fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::E1(c) => {
            let kc = prepare(c)?;
            let e1 = compute_e1(&kc, c.max_hodge)?;
            Ok(Output::ok(render_page(&kc, &e1, c.format)?))
        }
        Command::Pages(c) => pages(c),
        Command::Stratify(c) => {
            let kc = prepare(c)?;
            let st = stratify(&kc, c.max_hodge)?;
            Ok(Output::ok(match c.format {
                Format::Json => to_json(&st)?,
                Format::Grid => st.render(),
                Format::Csv => {
                    let mut out = String::from("weight,s,t,dim\n");
                    for (w, p) in &st.strata {
                        for (s, t, d) in p.nonzero() {
                            out.push_str(&format!("\"{}\",{s},{t},{d}\n", crate::spectral::weight_key(w)));
                        }
                    }
                    out
                }
            }))
        }
        Command::Torsion(a) => torsion(a),
        Command::Verify(v) => verify(v),
    }
}

/// Resolves the algebra, refuses invalid ones, and writes the dump if asked.
fn prepare(c: &Common) -> Result<KoszulComplex> {
    let alg = resolve(&c.algebra, c.ring)?;
    let kc = KoszulComplex::new(&alg)?;
    if let Some(dir) = &c.dump {
        std::fs::create_dir_all(dir)?;
        let files = dump_blocks(&kc, c.max_hodge, dir)?;
        eprintln!("wrote {files} files to {}", dir.display());
    }
    Ok(kc)
}

pub fn resolve(name: &str, ring: Option<Ring>) -> Result<LieAlgebra> {
    let path = Path::new(name);
    let alg = if name.ends_with(".json") || path.is_file() {
        json::load_over(path, ring)?
    } else {
        builtin(name, ring.unwrap_or(Ring::Rationals))?
    };
    match alg.jacobi_check() {
        JacobiVerdict::Pass => Ok(alg),
        bad => Err(Error::InvalidAlgebra(bad.to_string())),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn render_page(kc: &KoszulComplex, page: &PageReport, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct E1<'a> {
                algebra: &'a str,
                ring: String,
                #[serde(rename = "N")]
                max_hodge: usize,
                pages: [&'a PageReport; 1],
            }
            let alg = kc.algebra();
            to_json(&E1 { algebra: alg.name(), ring: alg.ring().label(), max_hodge: page.max_hodge, pages: [page] })?
        }
        Format::Grid => format!("{} over {}\n{}", kc.algebra().name(), kc.algebra().ring(), page.render_grid()),
        Format::Csv => page.render_csv(),
    })
}

fn pages(c: &Common) -> Result<Output> {
    let kc = prepare(c)?;
    let rep = compute_pages(&kc, c.max_hodge, false)?;
    let text = match c.format {
        Format::Json => to_json(&rep)?,
        Format::Csv => {
            let mut out = String::from("r,s,t,dim,valid\n");
            for p in &rep.pages {
                for (s, t, d) in p.nonzero() {
                    out.push_str(&format!("{},{s},{t},{d},{}\n", p.r, p.is_valid(s, t)));
                }
            }
            out
        }
        Format::Grid => {
            let mut out = format!("{} over {}, s ≤ {}\n", rep.algebra, rep.ring, rep.max_hodge);
            for p in &rep.pages {
                out.push_str(&format!("{}\n", p.render_grid()));
            }
            for d in &rep.differentials {
                out.push_str(&format!("rank d_{}: ({},{}) -> ({},{}) = {}\n", d.r, d.s, d.t, d.s + d.r, d.t + 1 - 2 * d.r, d.rank));
            }
            let last = rep.last();
            let verdict = if last.is_point() { "point cohomology" } else { "NOT point cohomology" };
            out.push_str(&format!("E_{} valid region: {verdict}\n", last.r));
            out
        }
    };
    Ok(Output::ok(text))
}

fn torsion(a: &TorsionArgs) -> Result<Output> {
    let alg = resolve(&a.algebra, Some(Ring::Integers))?;
    let kc = KoszulComplex::new(&alg)?;
    let table = integral_table(&kc, a.max_hodge)?;
    let primes = primes_of(&table, a.max_hodge);
    let mut audits = Vec::new();
    for &p in &a.primes {
        audits.push((p, ucf_against(&kc, &table, p)?));
    }
    let violations: Vec<(u64, &UcfEntry)> =
        audits.iter().flat_map(|(p, es)| es.iter().filter(|e| e.verdict == UcfVerdict::Violation).map(move |e| (*p, e))).collect();

    #[derive(Serialize)]
    struct TorsionJson<'a> {
        algebra: &'a str,
        #[serde(rename = "N")]
        max_hodge: usize,
        cohomology: &'a [IntegralCohomology],
        primes: &'a TorsionPrimes,
        ucf: Vec<UcfJson<'a>>,
    }
    #[derive(Serialize)]
    struct UcfJson<'a> {
        p: u64,
        entries: &'a [UcfEntry],
    }

    let text = match a.format {
        Format::Json => to_json(&TorsionJson {
            algebra: alg.name(),
            max_hodge: a.max_hodge,
            cohomology: &table,
            primes: &primes,
            ucf: audits.iter().map(|(p, e)| UcfJson { p: *p, entries: e }).collect(),
        })?,
        Format::Csv => {
            let mut out = String::from("s,t,free_rank,torsion\n");
            for h in &table {
                let tors: Vec<String> = h.torsion.iter().map(|q| q.to_string()).collect();
                out.push_str(&format!("{},{},{},\"{}\"\n", h.s, h.t, h.free_rank, tors.join(" ")));
            }
            out
        }
        Format::Grid => {
            let mut out = format!("{} over Z, s ≤ {}\n", alg.name(), a.max_hodge);
            out.push_str(&render_table(&table));
            for (p, s) in &primes.first_occurrence {
                out.push_str(&format!("{p}-torsion first at s = {s}\n"));
            }
            for (p, e) in &violations {
                out.push_str(&format!("UCF violation p={p} at ({},{}): dim {} vs free {} + torsion {}+{}\n", e.s, e.t, e.dim_fp, e.free_rank, e.torsion_here, e.torsion_next));
            }
            let ps: Vec<String> = a.primes.iter().map(u64::to_string).collect();
            out.push_str(&format!("UCF audit over p ∈ {{{}}}: {}\n", ps.join(","), if violations.is_empty() { "PASS" } else { "FAIL" }));
            out
        }
    };
    Ok(Output { text, all_passed: violations.is_empty() })
}

fn verify(v: &VerifyArgs) -> Result<Output> {
    match v.suite {
        Suite::All => {
            let outcomes = acceptance::run(&v.only);
            let all = outcomes.iter().all(|o| o.pass);
            let text = if v.format == Format::Json { to_json(&outcomes)? } else { lines(&outcomes) };
            Ok(Output { text, all_passed: all })
        }
        Suite::Sl2 => {
            let verdicts = sl2::verify_suite(&v.primes)?;
            let all = verdicts.iter().all(|x| x.pass);
            let text = if v.format == Format::Json { to_json(&verdicts)? } else { lines(&verdicts) };
            Ok(Output { text, all_passed: all })
        }
        Suite::Axioms => {
            let mut reports = Vec::new();
            for name in ["sl2", "sl3", "sp4", "nonabelian2", "abelian3"] {
                for ring in [Ring::Rationals, Ring::PrimeField(3), Ring::PrimeField(5), Ring::PrimeField(7)] {
                    let kc = KoszulComplex::new(&builtin(name, ring)?)?;
                    reports.push(verify_axioms(&kc, &AxiomOptions::default()));
                }
            }
            let all = reports.iter().all(|r| r.failures.is_empty());
            let text = if v.format == Format::Json {
                to_json(&reports)?
            } else {
                reports
                    .iter()
                    .map(|r| {
                        let tag = if r.failures.is_empty() { "PASS" } else { "FAIL" };
                        format!("{tag} axioms {} over {}: {} columns{}\n", r.algebra, r.ring, r.columns_checked, r.failures.iter().map(|f| format!("; {f}")).collect::<String>())
                    })
                    .collect()
            };
            Ok(Output { text, all_passed: all })
        }
    }
}

fn lines<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| format!("{x}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("lie-sseq").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn e1_grid_mod5() {
        let cli = parse(&["e1", "--algebra", "sl2", "--ring", "Fp:5", "--max-hodge", "6"]);
        let out = run(&cli.command).unwrap();
        assert!(out.text.starts_with("sl2 over Fp:5\nE_1"), "{}", out.text);
        assert_eq!(out.text, run(&cli.command).unwrap().text);
    }

    #[test]
    fn rejects_jacobi_failure() {
        let dir = std::env::temp_dir().join(format!("lie-sseq-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        // [h,e] = 3e, [h,f] = -2f, [e,f] = h breaks Jacobi on (h,e,f)
        std::fs::write(&path, r#"{"name":"bad","dim":3,"ring":"Q","constants":[[1,2,2,3],[1,3,3,-2],[2,3,1,1]]}"#).unwrap();
        let cli = parse(&["e1", "--algebra", path.to_str().unwrap()]);
        let err = run(&cli.command).err().expect("must refuse");
        assert_eq!(exit_code(&err), 2);
        assert!(err.to_string().contains("Jacobi"), "{err}");
        let missing = parse(&["e1", "--algebra", "/nonexistent/x.json"]);
        assert_eq!(exit_code(&run(&missing.command).err().unwrap()), 4);
    }

    #[test]
    fn torsion_json_and_pages_verdict() {
        let cli = parse(&["torsion", "--algebra", "sl2", "--max-hodge", "3", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&run(&cli.command).unwrap().text).unwrap();
        assert_eq!(v["N"], 3);
        assert!(v["cohomology"].as_array().unwrap().len() >= 16);
        let cli = parse(&["pages", "--algebra", "nonabelian2", "--ring", "Fp:3", "--max-hodge", "6"]);
        let out = run(&cli.command).unwrap();
        assert!(out.text.contains("valid region: point cohomology"), "{}", out.text);
    }
}
