//! Command-line front end: parse grid files, compute the Conway
//! function and link Floer homology, and run the verification
//! batteries. All polynomial output is canonical text with variables
//! t1..tμ and half-integer exponents in lowest terms; all results are
//! deterministic for a fixed seed.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use gridlink::conway::{conway, fox_matrix, theta};
use gridlink::floer::{
    euler_from_poincare, euler_hat_via_det, hat_from_tilde, poincare_from_dims, tilde_homology,
};
use gridlink::grid::{GridDiagram, GridMove, StabFlavor};
use gridlink::laurent::LaurentPoly;
use gridlink::verify::{
    check_grid, euler_hat_via_gamma, fuzz_invariance, run_fixtures, DEFAULT_MAX_HOMOLOGY_N,
    DEFAULT_MAX_STATESUM_N,
};
use gridlink::{Error, Result};

#[derive(Parser)]
#[command(
    name = "gridlink",
    version,
    about = "Exact grid-diagram link invariants: Conway function and GF(2) link Floer homology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Grid-size cap for homology and state-sum computations.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Seed for all randomized batteries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (a parallelism hint; results are unchanged).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a grid file and check the marking constraints.
    Validate { file: PathBuf },
    /// Print grid data: size, components, orientation counts,
    /// curvature, and the base permutation with its sign.
    Info { file: PathBuf },
    /// Print the (n−1)×n monomial matrix of the grid's link-group
    /// presentation.
    Fox { file: PathBuf },
    /// Print the normalized Conway function Γ as a canonical fraction.
    Conway { file: PathBuf },
    /// Print the graded Euler characteristic of the hat homology.
    Euler {
        file: PathBuf,
        /// Computational route; all routes agree on every valid input.
        #[arg(long, value_enum, default_value_t = Route::Det)]
        route: Route,
    },
    /// Print the bigraded dimensions of the tilde homology.
    Hfk {
        file: PathBuf,
        /// Also print the deconvolved hat homology dimensions.
        #[arg(long)]
        hat: bool,
    },
    /// Run the full cross-verification battery on one grid.
    Check { file: PathBuf },
    /// Apply a move script to a grid, or fuzz random legal moves and
    /// confirm the invariants are unchanged.
    Moves {
        file: PathBuf,
        /// Move script file (see README for the one-line-per-move grammar).
        script: Option<PathBuf>,
        /// Instead of a script: run this many random legal move
        /// sequences and verify Γ and χ are invariant.
        #[arg(long)]
        fuzz: Option<usize>,
    },
    /// Run the built-in diagram corpus through every check.
    Fixtures,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Homology,
    Det,
    Gamma,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // A later re-initialization attempt is harmless; the hint is
        // best-effort by contract.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load(path: &Path) -> Result<GridDiagram> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    GridDiagram::parse(&text)
}

fn grid_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Exact fraction text for a doubled (half-integer) grading value.
fn half_text(two: i32) -> String {
    if two % 2 == 0 {
        (two / 2).to_string()
    } else {
        format!("{two}/2")
    }
}

#[derive(Serialize)]
struct DimTriple {
    maslov: i32,
    alexander: Vec<String>,
    dim: usize,
}

/// Reads (maslov, alexander, dim) triples off a hat Poincaré
/// polynomial (variable 0 carries the doubled Maslov exponent).
fn hat_triples(hat: &LaurentPoly) -> Vec<DimTriple> {
    let mut out = Vec::new();
    for (e, c) in hat.terms() {
        assert!(
            e.0[0] % 2 == 0 && c > 0,
            "hat dimensions are graded by integers"
        );
        out.push(DimTriple {
            maslov: e.0[0] / 2,
            alexander: e.0[1..].iter().map(|&a| half_text(a)).collect(),
            dim: c as usize,
        });
    }
    out.sort_by(|a, b| (b.maslov, &b.alexander).cmp(&(a.maslov, &a.alexander)));
    out
}

fn print_triples(label: &str, triples: &[DimTriple]) {
    println!("{label}:");
    for t in triples {
        println!(
            "  maslov={:<4} alexander=({})  dim={}",
            t.maslov,
            t.alexander.join(", "),
            t.dim
        );
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let max_hom = cli.max_n.unwrap_or(DEFAULT_MAX_HOMOLOGY_N);
    let max_sum = cli.max_n.unwrap_or(DEFAULT_MAX_STATESUM_N);
    match &cli.command {
        Command::Validate { file } => {
            let g = load(file)?;
            let comps = g.components();
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({"ok": true, "n": g.n(), "mu": comps.mu})
                );
            } else {
                println!("ok: n={}, mu={}", g.n(), comps.mu);
            }
            Ok(0)
        }
        Command::Info { file } => {
            let g = load(file)?;
            let comps = g.components();
            let (u_total, u_per) = g.upward_counts(&comps);
            let kappa = g.curvatures(&comps);
            let (x0, sign) = g.base_permutation();
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "n": g.n(),
                        "mu": comps.mu,
                        "nk": comps.nk,
                        "u_total": u_total,
                        "u_per": u_per,
                        "kappa": kappa,
                        "x0": x0,
                        "sign_x0": sign,
                    })
                );
            } else {
                println!("n: {}", g.n());
                println!("mu: {}", comps.mu);
                println!("markings per component n_k: {:?}", comps.nk);
                println!("upward segments u: {u_total} (per component {u_per:?})");
                println!("curvature kappa: {kappa:?}");
                println!("base permutation x0: {x0:?}");
                println!("sgn(x0): {sign}");
            }
            Ok(0)
        }
        Command::Fox { file } => {
            let g = load(file)?;
            let comps = g.components();
            let fox = fox_matrix(&g, &comps);
            let rows: Vec<Vec<String>> = fox
                .entries
                .iter()
                .map(|r| r.iter().map(|p| p.to_string()).collect())
                .collect();
            let thetas: Vec<String> = (1..=g.n())
                .map(|j| theta(&g, &comps, j).to_string())
                .collect();
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "rows": g.n() - 1,
                        "cols": g.n(),
                        "entries": rows,
                        "theta": thetas,
                    })
                );
            } else {
                println!("Fox matrix ({}x{}):", g.n() - 1, g.n());
                for r in &rows {
                    println!("  [{}]", r.join(", "));
                }
                println!("theta: [{}]", thetas.join(", "));
            }
            Ok(0)
        }
        Command::Conway { file } => {
            let g = load(file)?;
            let data = conway(&g)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({"mu": data.mu, "gamma": data.gamma.to_string()})
                );
            } else {
                println!("{}", data.gamma);
            }
            Ok(0)
        }
        Command::Euler { file, route } => {
            let g = load(file)?;
            let (name, chi) = match route {
                Route::Homology => {
                    let h = tilde_homology(&g, max_hom)?;
                    let hat = hat_from_tilde(&poincare_from_dims(h.mu, &h.dims), &h.nk)?;
                    ("homology", euler_from_poincare(&hat))
                }
                Route::Det => ("det", euler_hat_via_det(&g)?),
                Route::Gamma => ("gamma", euler_hat_via_gamma(&conway(&g)?)?),
            };
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({"route": name, "chi_hat": chi.to_string()})
                );
            } else {
                println!("{chi}");
            }
            Ok(0)
        }
        Command::Hfk { file, hat } => {
            let g = load(file)?;
            let h = tilde_homology(&g, max_hom)?;
            let tilde: Vec<DimTriple> = {
                let mut v: Vec<DimTriple> = h
                    .dims
                    .iter()
                    .map(|((a2, m), &dim)| DimTriple {
                        maslov: *m,
                        alexander: a2.iter().map(|&a| half_text(a)).collect(),
                        dim,
                    })
                    .collect();
                v.sort_by(|a, b| (b.maslov, &b.alexander).cmp(&(a.maslov, &a.alexander)));
                v
            };
            let hat_part = if *hat {
                let p = poincare_from_dims(h.mu, &h.dims);
                Some(hat_triples(&hat_from_tilde(&p, &h.nk)?))
            } else {
                None
            };
            if cli.json {
                let mut obj = serde_json::json!({
                    "n": g.n(),
                    "mu": h.mu,
                    "total_rank": h.total_rank(),
                    "tilde": tilde,
                });
                if let Some(hp) = &hat_part {
                    obj["hat"] = serde_json::to_value(hp).unwrap();
                }
                println!("{obj}");
            } else {
                println!("tilde homology over GF(2): total rank {}", h.total_rank());
                print_triples("tilde dimensions", &tilde);
                if let Some(hp) = &hat_part {
                    print_triples("hat dimensions", hp);
                }
            }
            Ok(0)
        }
        Command::Check { file } => {
            let g = load(file)?;
            let report = check_grid(&g, &grid_name(file), max_hom, max_sum);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                let ok = |b: bool| if b { "PASS" } else { "FAIL" };
                println!(
                    "{} theorem-routes: χ(ĤL) = {}",
                    ok(report.theorem.agree),
                    report.theorem.chi_hat
                );
                for r in &report.theorem.routes {
                    match (&r.chi, &r.note) {
                        (Some(chi), _) => println!("  route {}: {chi}", r.route),
                        (None, Some(note)) => println!("  route {} skipped: {note}", r.route),
                        _ => {}
                    }
                }
                println!(
                    "{} det-gamma-bridge: 2β = {:?}, 2ν = {:?}",
                    ok(report.eq31.holds),
                    report.eq31.beta2,
                    report.eq31.nu2
                );
                if let Some(d) = &report.eq31.detail {
                    println!("  {d}");
                }
                for line in &report.extra {
                    println!("{} {}: {}", ok(line.pass), line.name, line.detail);
                }
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Moves { file, script, fuzz } => {
            let g = load(file)?;
            match (script, fuzz) {
                (Some(script_path), None) => {
                    let text = std::fs::read_to_string(script_path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", script_path.display())))?;
                    let moves = parse_script(&text)?;
                    let mut cur = g;
                    for mv in &moves {
                        cur = cur.apply_move(mv)?;
                    }
                    let gamma = conway(&cur)?.gamma;
                    let chi = euler_hat_via_det(&cur)?;
                    if cli.json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "grid": serde_json::from_str::<serde_json::Value>(&cur.to_json()).unwrap(),
                                "moves_applied": moves.len(),
                                "gamma": gamma.to_string(),
                                "chi_hat": chi.to_string(),
                            })
                        );
                    } else {
                        print!("{}", cur.to_text());
                        println!("moves applied: {}", moves.len());
                        println!("gamma: {gamma}");
                        println!("chi_hat: {chi}");
                    }
                    Ok(0)
                }
                (None, Some(n)) => {
                    let cap = cli.max_n.unwrap_or(8);
                    let report = fuzz_invariance(&g, &grid_name(file), *n, 8, cli.seed, cap);
                    if cli.json {
                        println!("{}", serde_json::to_string_pretty(&report).unwrap());
                    } else {
                        println!(
                            "{} invariance under {} random move sequences ({} moves total)",
                            if report.pass { "PASS" } else { "FAIL" },
                            report.sequences,
                            report.moves_applied
                        );
                        for f in &report.failures {
                            println!("  {f}");
                        }
                    }
                    Ok(if report.pass { 0 } else { 1 })
                }
                (None, None) => Err(Error::Parse(
                    "moves requires either a script file or --fuzz N".to_string(),
                )),
                (Some(_), Some(_)) => Err(Error::Parse(
                    "moves takes a script file or --fuzz N, not both".to_string(),
                )),
            }
        }
        Command::Fixtures => {
            let lines = run_fixtures(max_hom, max_sum);
            let all_pass = lines.iter().all(|l| l.pass);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&lines).unwrap());
            } else {
                for line in &lines {
                    println!(
                        "{} {}: {}",
                        if line.pass { "PASS" } else { "FAIL" },
                        line.name,
                        line.detail
                    );
                }
                println!(
                    "{} of {} checks passed",
                    lines.iter().filter(|l| l.pass).count(),
                    lines.len()
                );
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

/// Parses the move-script grammar: one move per line, `#` comments.
///   cv / cv'      cycle a vertical edge (reverse with ')
///   ch / ch'      cycle a horizontal edge
///   c COL         commute columns COL, COL+1
///   r ROW         commute rows ROW, ROW+1
///   s ROW COL F   stabilize at (ROW, COL) with flavor F in {nw,ne,sw,se}
///   d ROW COL     destabilize the 2×2 block at (ROW, COL)
fn parse_script(text: &str) -> Result<Vec<GridMove>> {
    let mut moves = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let tok: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse(format!("script line {lineno}: {msg}"));
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| bad(&format!("expected a number, got {s:?}")))
        };
        let mv = match (tok[0], tok.len()) {
            ("cv", 1) => GridMove::CycleVertical { reverse: false },
            ("cv'", 1) => GridMove::CycleVertical { reverse: true },
            ("ch", 1) => GridMove::CycleHorizontal { reverse: false },
            ("ch'", 1) => GridMove::CycleHorizontal { reverse: true },
            ("c", 2) => GridMove::CommuteColumns { left: num(tok[1])? },
            ("r", 2) => GridMove::CommuteRows { top: num(tok[1])? },
            ("s", 4) => {
                let flavor = match tok[3].to_ascii_lowercase().as_str() {
                    "nw" => StabFlavor::NW,
                    "ne" => StabFlavor::NE,
                    "sw" => StabFlavor::SW,
                    "se" => StabFlavor::SE,
                    other => return Err(bad(&format!("unknown flavor {other:?}"))),
                };
                GridMove::Stabilize {
                    row: num(tok[1])?,
                    col: num(tok[2])?,
                    flavor,
                }
            }
            ("d", 3) => GridMove::Destabilize {
                row: num(tok[1])?,
                col: num(tok[2])?,
            },
            (op, _) => return Err(bad(&format!("unknown or malformed move {op:?}"))),
        };
        moves.push(mv);
    }
    Ok(moves)
}
