use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use relalg::algebra::RelationAlgebra;
use relalg::amalgamation::{
    check_ap, fully_universal_probe, has_normal_representation, ApOutcome, ApWitness,
    FullyUniversalProbe, NormalRepresentation, DEFAULT_AP_BUDGET,
};
use relalg::atom_structure::{bulatov_condition, pair_witness, BulatovOutcome, PairWitness};
use relalg::catalog::{catalog, match_to_catalog, CatalogEntry};
use relalg::hardness::{gadget_suite, pcsp_condition, ramsey_boundary_check};
use relalg::io;
use relalg::network::{path_consistency, PcResult};
use relalg::representation::{builtin_by_name, verify_representation, FiniteRepresentation};
use relalg::solver::{solve_nsp_algebra, solve_nsp_with, Certificate, NspStatus, SolveOptions};

/// Finite relation algebras with at most 4 atoms: census, classification,
/// representations and network satisfaction.
#[derive(Parser)]
#[command(name = "relalg", version, about)]
struct Cli {
    /// Structured JSON output instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Node budget for the budgeted searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for the parallel loops (default sequential).
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignatureArg {
    Sym,
    Asym,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the integral algebras with the given atom count.
    Enumerate {
        #[arg(long)]
        atoms: usize,
        #[arg(long, value_enum)]
        signature: SignatureArg,
    },
    /// Catalog match, structural flags, normal-representation verdict and
    /// fully-universal probe for an algebra.
    Classify {
        /// Catalog name, algebra file, or `-` for stdin.
        algebra: String,
        /// Largest extension size for the AP(3,2,n) probe.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Decide AP(k, l, m) over reduced consistent atomic networks.
    Ap { algebra: String, k: usize, l: usize, m: usize },
    /// Solve the network satisfaction problem for a catalog algebra.
    Solve { algebra: String, network: String },
    /// Run path consistency and print the fixpoint.
    Pc { algebra: String, network: String },
    /// Verify a finite representation against the axioms.
    RepVerify { algebra: String, representation: String },
    /// Verify the embedded polymorphism tables of an algebra, search a
    /// witness for one atom pair, or run the full conservative condition.
    Poly {
        algebra: String,
        /// Atom pair `x,y` to search a witness for.
        #[arg(long)]
        search: Option<String>,
    },
    /// Verify every embedded hardness gadget claim.
    Gadgets,
    /// Print the census table, recomputed from enumeration.
    Census,
    /// PCSP precondition pairs and the R(3,3) boundary check.
    Pcsp { algebra: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.parallel.max(1))
        .build_global()
        .ok();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(arg: &str) -> Result<String, String> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| e.to_string())?;
        Ok(buf)
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))
    }
}

/// Resolves a catalog name, file path, or stdin into an owned algebra.
fn load_algebra(arg: &str) -> Result<(Option<&'static CatalogEntry>, RelationAlgebra), String> {
    if let Some(entry) = catalog().lookup(arg) {
        return Ok((Some(entry), entry.algebra.clone()));
    }
    let text = read_input(arg)?;
    let rec = io::parse_algebra(&text).map_err(|e| e.to_string())?;
    if !rec.algebra.is_valid() {
        return Err(format!(
            "algebra fails the axioms: {}",
            rec.algebra.violation().unwrap()
        ));
    }
    Ok((None, rec.algebra))
}

fn print_witness(ra: &RelationAlgebra, w: &ApWitness) {
    println!("base ({} vertices):", w.base.size());
    print!("{}", io::format_network(ra, w.base.network()));
    println!("extension 1:");
    print!("{}", io::format_network(ra, w.ext1.network()));
    println!("extension 2:");
    print!("{}", io::format_network(ra, w.ext2.network()));
    let pairs: Vec<String> = w.missing.iter().map(|(x, y)| format!("({x},{y})")).collect();
    println!("unfillable edges in the union: {}", pairs.join(" "));
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let budget = cli.budget;
    match &cli.command {
        Command::Enumerate { atoms, signature } => {
            let sig = match signature {
                SignatureArg::Sym => relalg::catalog::Signature::AllSymmetric,
                SignatureArg::Asym => relalg::catalog::Signature::OneAsymmetricPair,
            };
            if !(2..=4).contains(atoms) {
                return Err("--atoms must be 2, 3 or 4".into());
            }
            let found = relalg::catalog::enumerate_integral(*atoms, sig);
            if cli.json {
                let names: Vec<String> = found
                    .iter()
                    .map(|ra| {
                        match_to_catalog(ra).map(|m| m.entry.name.clone()).unwrap_or_default()
                    })
                    .collect();
                println!("{}", serde_json::json!({"count": found.len(), "entries": names}));
            } else {
                for ra in &found {
                    let m = match_to_catalog(ra).map_err(|e| e.to_string())?;
                    let mut named = ra.clone();
                    named.set_name(m.entry.name.clone());
                    print!("{}", io::format_algebra(&named));
                    println!();
                }
                println!("count: {}", found.len());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { algebra, max_n } => {
            let (entry, ra) = load_algebra(algebra)?;
            let entry = match entry {
                Some(e) => Some(e),
                None => match_to_catalog(&ra).ok().map(|m| m.entry),
            };
            let flags = ra.structural_flags();
            let budget = budget.unwrap_or(DEFAULT_AP_BUDGET);
            let normal = if flags.integral {
                Some(has_normal_representation(&ra, budget))
            } else {
                None
            };
            let probe = if flags.integral {
                Some(fully_universal_probe(&ra, *max_n, budget))
            } else {
                None
            };
            if cli.json {
                let flex: Vec<&str> =
                    flags.flexible_atoms.atoms().map(|a| ra.atom_name(a)).collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "catalog": entry.map(|e| e.name.clone()),
                        "representability": entry.map(|e| e.representability.as_str()),
                        "nsp": entry.map(|e| e.nsp.as_str()),
                        "symmetric": flags.symmetric,
                        "integral": flags.integral,
                        "simple": flags.simple,
                        "flexible_atoms": flex,
                        "normal": normal.as_ref().map(|n| n.is_yes()),
                        "probe_counterexample": match &probe {
                            Some(FullyUniversalProbe::Counterexample(_, n)) => Some(*n),
                            _ => None,
                        },
                    })
                );
            } else {
                match entry {
                    Some(e) => println!(
                        "catalog: {} (repr: {}, nsp: {})",
                        e.name,
                        e.representability.as_str(),
                        e.nsp.as_str()
                    ),
                    None => println!("catalog: no match"),
                }
                println!(
                    "flags: symmetric={} integral={} simple={}",
                    flags.symmetric, flags.integral, flags.simple
                );
                let flex: Vec<&str> =
                    flags.flexible_atoms.atoms().map(|a| ra.atom_name(a)).collect();
                println!(
                    "flexible atoms: {}",
                    if flex.is_empty() { "none".to_string() } else { flex.join(" ") }
                );
                let eq: Vec<String> = flags
                    .equivalence_elements
                    .iter()
                    .map(|e| io::format_element(&ra, *e))
                    .collect();
                println!("equivalence elements: {}", eq.join(" "));
                match &normal {
                    Some(NormalRepresentation::Yes) => println!("normal representation: YES"),
                    Some(NormalRepresentation::No(w)) => {
                        println!("normal representation: NO, two-point amalgamation fails:");
                        print_witness(&ra, w);
                    }
                    None => println!("normal representation: n/a (not integral)"),
                }
                match &probe {
                    Some(FullyUniversalProbe::Counterexample(w, n)) => {
                        println!("fully universal probe: AP(3,2,{n}) fails:");
                        print_witness(&ra, w);
                    }
                    Some(FullyUniversalProbe::NoCounterexampleUpTo(n)) => {
                        println!("fully universal probe: no AP(3,2,n) counterexample up to n={n}")
                    }
                    Some(FullyUniversalProbe::Budget) => {
                        println!("fully universal probe: budget exhausted")
                    }
                    None => {}
                }
            }
            let code = match normal {
                Some(NormalRepresentation::Yes) | None => ExitCode::SUCCESS,
                Some(NormalRepresentation::No(_)) => ExitCode::from(1),
            };
            Ok(code)
        }
        Command::Ap { algebra, k, l, m } => {
            let (_, ra) = load_algebra(algebra)?;
            if *l > (*k).min(*m) || *k > 7 || *m > 7 {
                return Err("need l <= min(k,m) and k,m <= 7".into());
            }
            let out = check_ap(&ra, *k, *l, *m, budget.unwrap_or(DEFAULT_AP_BUDGET));
            if cli.json {
                let status = match &out {
                    ApOutcome::Pass => "pass",
                    ApOutcome::Fail(_) => "fail",
                    ApOutcome::Budget => "budget",
                };
                println!("{}", serde_json::json!({"ap": [k, l, m], "status": status}));
            }
            match out {
                ApOutcome::Pass => {
                    if !cli.json {
                        println!("AP({k},{l},{m}): PASS");
                    }
                    Ok(ExitCode::SUCCESS)
                }
                ApOutcome::Fail(w) => {
                    if !cli.json {
                        println!("AP({k},{l},{m}): FAIL");
                        print_witness(&ra, &w);
                    }
                    Ok(ExitCode::from(1))
                }
                ApOutcome::Budget => {
                    if !cli.json {
                        println!("AP({k},{l},{m}): BUDGET");
                    }
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Solve { algebra, network } => {
            let (entry, ra) = load_algebra(algebra)?;
            let text = read_input(network)?;
            let net = io::parse_network(&ra, &text).map_err(|e| e.to_string())?;
            let mut opts = SolveOptions::default();
            if let Some(b) = budget {
                opts.model_budget = b;
            }
            let verdict = match entry {
                Some(e) => solve_nsp_with(e, &net, opts).map_err(|e| e.to_string())?,
                None => solve_nsp_algebra(&ra, &net).map_err(|e| e.to_string())?,
            };
            let status = match verdict.status {
                NspStatus::Sat => "SAT",
                NspStatus::Unsat => "UNSAT",
                NspStatus::Unknown => "UNKNOWN",
            };
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({"status": status, "method": verdict.method})
                );
            } else {
                println!("{status} (method: {})", verdict.method);
                match &verdict.certificate {
                    Certificate::AtomicSolution(sol) => {
                        println!("atomic solution:");
                        print!("{}", io::format_network(&ra, sol.network()));
                    }
                    Certificate::RepAssignment { rep, map } => {
                        println!("model of size {} with assignment:", rep.domain_size());
                        for (v, p) in map.iter().enumerate() {
                            println!("  vertex {v} -> {p}");
                        }
                    }
                    Certificate::None => {}
                }
            }
            Ok(match verdict.status {
                NspStatus::Sat => ExitCode::SUCCESS,
                NspStatus::Unsat => ExitCode::from(1),
                NspStatus::Unknown => ExitCode::from(3),
            })
        }
        Command::Pc { algebra, network } => {
            let (_, ra) = load_algebra(algebra)?;
            let text = read_input(network)?;
            let net = io::parse_network(&ra, &text).map_err(|e| e.to_string())?;
            match path_consistency(&ra, &net) {
                PcResult::Unsolvable => {
                    println!("UNSOLVABLE");
                    Ok(ExitCode::from(1))
                }
                PcResult::Stable(out) => {
                    println!("stable fixpoint:");
                    print!("{}", io::format_network(&ra, &out));
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::RepVerify { algebra, representation } => {
            let (_, ra) = load_algebra(algebra)?;
            let rep: FiniteRepresentation = match builtin_by_name(representation) {
                Some((bra, rep)) => {
                    if bra.atom_count() != ra.atom_count() {
                        return Err("builtin belongs to a different algebra".into());
                    }
                    rep
                }
                None => {
                    let text = read_input(representation)?;
                    io::parse_representation(&ra, &text).map_err(|e| e.to_string())?
                }
            };
            let report = verify_representation(&ra, &rep);
            if cli.json {
                println!("{}", serde_json::to_string(&report).unwrap());
            } else {
                println!(
                    "valid: {}  square: {}  violations: {}",
                    report.valid,
                    report.square,
                    report.violations.len()
                );
                for v in report.violations.iter().take(20) {
                    println!("  axiom {}: {}", v.axiom, v.detail);
                }
            }
            Ok(if report.valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Poly { algebra, search } => {
            let (entry, ra) = load_algebra(algebra)?;
            let budget = budget.unwrap_or(200_000_000);
            if let Some(pair) = search {
                let names: Vec<&str> = pair.split(',').map(str::trim).collect();
                if names.len() != 2 {
                    return Err("--search takes `x,y`".into());
                }
                let a = ra.atom_by_name(names[0]).ok_or("unknown atom")?;
                let b = ra.atom_by_name(names[1]).ok_or("unknown atom")?;
                return Ok(match pair_witness(&ra, (a, b), budget) {
                    Some(w) => {
                        let kind = match w {
                            PairWitness::BinarySymmetric(_) => "binary symmetric",
                            PairWitness::Majority(_) => "majority",
                            PairWitness::Minority(_) => "minority",
                        };
                        println!("pair ({},{}): {kind}", names[0], names[1]);
                        ExitCode::SUCCESS
                    }
                    None => {
                        println!("pair ({},{}): no witness", names[0], names[1]);
                        ExitCode::from(1)
                    }
                });
            }
            // verify the embedded tables for this algebra, then run the
            // full conservative condition
            let name = entry.map(|e| e.name.clone()).unwrap_or_default();
            let mut all_ok = true;
            for (n, label, op) in relalg::atom_structure::embedded_polymorphisms() {
                if n == name {
                    let ok = relalg::atom_structure::verify_polymorphism(&ra, &op);
                    println!("table [{label}]: {}", if ok { "PASS" } else { "FAIL" });
                    all_ok &= ok;
                }
            }
            match bulatov_condition(&ra, budget) {
                BulatovOutcome::Pass(ws) => {
                    println!("conservative condition: PASS ({} pairs)", ws.len());
                }
                BulatovOutcome::Fail(p) => {
                    println!(
                        "conservative condition: FAIL at pair ({}, {})",
                        ra.atom_name(p.0),
                        ra.atom_name(p.1)
                    );
                    all_ok = false;
                }
                BulatovOutcome::Budget => {
                    println!("conservative condition: BUDGET");
                    return Ok(ExitCode::from(3));
                }
            }
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Gadgets => {
            let reports = gadget_suite(budget.unwrap_or(2_000_000_000));
            if cli.json {
                println!("{}", serde_json::to_string(&reports).unwrap());
            } else {
                for r in &reports {
                    println!(
                        "{:<50} [{}] {} ({} ms)",
                        r.name,
                        r.algebra,
                        if r.passed { "PASS" } else { "FAIL" },
                        r.millis
                    );
                }
            }
            let all = reports.iter().all(|r| r.passed);
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Census => {
            let rows = relalg::catalog::census();
            if cli.json {
                println!("{}", serde_json::to_string(&rows).unwrap());
            } else {
                println!(
                    "{:>5} {:>8} {:>5} {:>6} {:>4} {:>9} {:>7} {:>7} {:>7} {:>6}",
                    "Atoms", "Elements", "RAs", "Simple", "Int", "Sym/Asym", "Repr", "F.u.s.",
                    "Norm.", "Flex."
                );
                for r in &rows {
                    let pair = |p: (u64, u64)| {
                        if r.atom_count >= 3 {
                            format!("{}/{}", p.0, p.1)
                        } else {
                            format!("{}", p.0 + p.1)
                        }
                    };
                    println!(
                        "{:>5} {:>8} {:>5} {:>6} {:>4} {:>9} {:>7} {:>7} {:>7} {:>6}",
                        r.atom_count,
                        r.elements,
                        r.total,
                        r.simple,
                        r.integral,
                        if r.atom_count >= 3 {
                            format!("{}/{}", r.sym, r.asym)
                        } else {
                            format!("{}", r.sym + r.asym)
                        },
                        pair(r.representable),
                        pair(r.fully_universal_square),
                        pair(r.normal),
                        pair(r.flexible),
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pcsp { algebra } => {
            let (_, ra) = load_algebra(algebra)?;
            let pairs = pcsp_condition(&ra);
            let report = ramsey_boundary_check();
            if cli.json {
                let named: Vec<(String, String)> = pairs
                    .iter()
                    .map(|(p, q)| (ra.atom_name(*p).to_string(), ra.atom_name(*q).to_string()))
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "pairs": named,
                        "r33_boundary": {
                            "k5_witness": report.k5_witness,
                            "k6_has_witness": report.k6_has_witness,
                        },
                    })
                );
            } else {
                if pairs.is_empty() {
                    println!("no (p, q) pair satisfies the precondition");
                } else {
                    for (p, q) in &pairs {
                        println!("pair: ({}, {})", ra.atom_name(*p), ra.atom_name(*q));
                    }
                }
                println!(
                    "R(3,3) boundary: K5 witness {}, K6 witness exists: {}",
                    report.k5_witness.map(|w| format!("{w:#012b}")).unwrap_or_default(),
                    report.k6_has_witness
                );
            }
            Ok(if pairs.is_empty() { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
    }
}
