use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fewcosine::forge::catalog::{self, RowStatus};
use fewcosine::forge::io::{self, CodeFile};
use fewcosine::forge::search::{self, AntipodalPolicy, SearchConfig};
use fewcosine::forge::{build_entry, Workbench};
use fewcosine::sphere;
use fewcosine::{Error, Result};

#[derive(Parser)]
#[command(name = "forge", version, about = "Build and verify few-cosine spherical codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Antipodal {
    Include,
    Exclude,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a catalog entry, print its checks and optionally write it out.
    Build {
        entry: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify a report (only `table1`).
    Verify { what: String },
    /// Dimensions of Z1, B1, H1 and noninner kernel orders for a preset.
    Cohomology { preset: String },
    /// Scan unions of orbits for few-cosine codes; hits are JSON lines.
    Search {
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[arg(long, default_value = "nsc")]
        subgroup: String,
        #[arg(long, default_value_t = 3)]
        max_cosines: usize,
        #[arg(long, value_enum, default_value = "exclude")]
        antipodal: Antipodal,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        max_hits: usize,
    },
    /// The (16,256,6) binary code.
    Binary {
        which: String,
        /// Run the coordinate-permutation automorphism search.
        #[arg(long)]
        aut: bool,
        /// Also count signed-permutation automorphisms of the ±1 code.
        #[arg(long)]
        signed: bool,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Association-scheme report for a code file (JSON, or CSV by extension).
    Scheme { codefile: PathBuf },
}

fn print_checks(built: &fewcosine::forge::Built) {
    for c in &built.checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{mark} {}: {}", built.name, c.name);
        } else {
            println!("{mark} {}: {} ({})", built.name, c.name, c.detail);
        }
    }
}

fn verification(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Verification(what.to_string()))
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut wb = Workbench::new();
    match cli.cmd {
        Cmd::Build { entry, out, format } => {
            let built = build_entry(&mut wb, &entry)?;
            print_checks(&built);
            if let Some(path) = out {
                let text = match (&built.code, &built.binary, format) {
                    (Some(code), _, Format::Json) => {
                        io::to_json(&CodeFile::from_code(&built.name, code, built.construction.clone()))?
                    }
                    (Some(code), _, Format::Csv) => io::to_csv(code),
                    (None, Some(bin), _) => bin.hex_lines(),
                    (None, None, _) => String::new(),
                };
                std::fs::write(&path, text)?;
                println!("wrote {}", path.display());
            }
            verification(built.all_pass(), "catalog entry checks")
        }
        Cmd::Verify { what } => {
            if what != "table1" {
                return Err(Error::OutOfRange(format!("unknown report {what:?}; known: table1")));
            }
            let rows = catalog::verify_table1(&mut wb)?;
            let mut ok = true;
            for r in &rows {
                let status = match r.status {
                    RowStatus::Pass => "PASS",
                    RowStatus::MismatchWithErratum => "MISMATCH-WITH-ERRATUM",
                    RowStatus::Fail => {
                        ok = false;
                        "FAIL"
                    }
                };
                println!(
                    "{status} {}: dim {} size {} computed {} printed {} formula {}",
                    r.symbol,
                    r.computed_dimension,
                    r.computed_size,
                    sphere::format_cosine_set(&r.computed),
                    sphere::format_cosine_set(&r.printed),
                    sphere::format_cosine_set(&r.formula),
                );
                if let Some(note) = &r.note {
                    println!("  {note}");
                }
            }
            verification(ok, "table rows")
        }
        Cmd::Cohomology { preset } => {
            let rep = catalog::cohomology_preset(&preset)?;
            println!("preset {}", rep.preset);
            println!("group order {}", rep.order);
            println!("module dimension {}", rep.module_dim);
            println!("dim Z1 {}", rep.z1);
            println!("dim B1 {}", rep.b1);
            println!("dim H1 {}", rep.h1);
            for (k, n) in &rep.noninner_kernels {
                println!("noninner cocycles with kernel order {k}: {n}");
            }
            if let Some(ab) = rep.noninner_kernel_abelian {
                println!("noninner kernel abelian: {ab}");
            }
            Ok(())
        }
        Cmd::Search { d, subgroup, max_cosines, antipodal, jobs, max_hits } => {
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build_global()
                    .map_err(|e| Error::OutOfRange(e.to_string()))?;
            }
            let gens = catalog::subgroup_preset(&mut wb, &subgroup, d)?;
            let mut cfg = SearchConfig::new(d, gens);
            cfg.max_cosines = max_cosines;
            cfg.hit_cap = max_hits;
            cfg.antipodal = match antipodal {
                Antipodal::Include => AntipodalPolicy::Include,
                Antipodal::Exclude => AntipodalPolicy::Exclude,
            };
            let res = search::procedure51_search(&cfg)?;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for hit in &res.hits {
                writeln!(lock, "{}", serde_json::to_string(hit)?)?;
            }
            eprintln!(
                "{} sign vectors, {} orbits, {} hits{}",
                res.a0_size,
                res.orbits.len(),
                res.hits.len(),
                if res.truncated { " (truncated)" } else { "" }
            );
            if res.truncated {
                return Err(Error::CapExceeded { what: "search hits", cap: max_hits });
            }
            Ok(())
        }
        Cmd::Binary { which, aut, signed, budget, out } => {
            if which != "nordstrom" {
                return Err(Error::OutOfRange(format!("unknown binary code {which:?}; known: nordstrom")));
            }
            let bin = wb.opticode()?.binary.clone();
            let summary_prefix = if out.is_some() { "" } else { "# " };
            match &out {
                Some(path) => std::fs::write(path, bin.hex_lines())?,
                None => print!("{}", bin.hex_lines()),
            }
            let md = sphere::min_distance(&bin);
            let dist = sphere::distance_distribution(&bin);
            println!("{summary_prefix}length {} words {}", bin.length(), bin.len());
            println!("{summary_prefix}minimum distance {}", md.unwrap_or(0));
            match &dist {
                Some(h) => println!("{summary_prefix}distance distribution (every word) {h:?}"),
                None => println!("{summary_prefix}distance distribution depends on the word"),
            }
            match sphere::nonlinearity_witness(&bin) {
                Some((u, w)) => println!("{summary_prefix}nonlinear: {u:04x} + {w:04x} = {:04x} not a codeword", u ^ w),
                None => println!("{summary_prefix}linear"),
            }
            if aut {
                let rep = sphere::binary_automorphism_group(&bin, budget)?;
                for g in &rep.gens {
                    println!("{summary_prefix}generator {:?}", g.images());
                }
                println!("{summary_prefix}automorphism group order {}", rep.order);
                let stab = wb.optigroup()?.stabilizer.gens().to_vec();
                let contains = stab.iter().all(|g| rep.group.contains(g));
                println!("{summary_prefix}contains the stabilizer of x0: {contains}");
                if signed {
                    let n = sphere::signed_automorphism_count(&bin, budget)?;
                    println!("{summary_prefix}signed-permutation automorphisms {n}");
                }
                verification(contains, "automorphism group contains the stabilizer")?;
            }
            verification(md == Some(6) && bin.len() == 256, "(16,256,6) parameters")
        }
        Cmd::Scheme { codefile } => {
            let code = io::read_code(&codefile)?;
            let rep = sphere::association_scheme_check(&code);
            println!("vectors {} dimension {}", code.len(), code.dim());
            println!("relations (inner products) {:?}", rep.relations);
            match (&rep.intersection, &rep.violation) {
                (Some(p), _) => {
                    println!("association scheme: yes");
                    println!("valencies {:?}", rep.valencies().unwrap_or_default());
                    for (a, pa) in p.iter().enumerate() {
                        for (b, pab) in pa.iter().enumerate() {
                            println!("p[{a}][{b}] = {pab:?}");
                        }
                    }
                }
                (None, Some(v)) => {
                    println!("association scheme: no");
                    println!("violation {v:?}");
                }
                (None, None) => println!("association scheme: no"),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
