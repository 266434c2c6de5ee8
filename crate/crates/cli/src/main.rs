//! `fourtile` command line. Exit status 0 means success, 1 a negative
//! answer (no tiling, overlap, failed verification), 2 an operational error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fourtile::assembly::{assemble, decode, AssemblyError};
use fourtile::formats::{format_placements, format_polyomino, parse_placements, parse_polyominoes, parse_region};
use fourtile::geometry::{verify_partition, CellSet, TileSet};
use fourtile::reduction::{format_params, format_slots, reduce};
use fourtile::render::{render_placements, render_tiles};
use fourtile::tilesolve::{bn_factorize, exact_tile_search, SearchLimits, SearchOutcome};
use fourtile::wang::{count_torus, format_tiling, parse_tiling, parse_wang_set, solve_torus, ParseOptions, WangSet};

/// File extension of polyomino files written and read by directory.
const TILE_EXT: &str = "poly";

#[derive(Parser)]
#[command(
    name = "fourtile",
    version,
    about = "Wang tiles simulated by four translated polyominoes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WangInput {
    /// Wang set file.
    #[arg(long)]
    wang: PathBuf,
    /// Append an unused color when the set has only one.
    #[arg(long)]
    pad_colors: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build the four tiles and their size parameters.
    Reduce {
        #[command(flatten)]
        input: WangInput,
        #[arg(long)]
        out: PathBuf,
        /// Also write tiles.svg.
        #[arg(long)]
        svg: bool,
    },
    /// Solve, assemble, verify and decode on one torus.
    Roundtrip {
        #[command(flatten)]
        input: WangInput,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        periods: usize,
    },
    /// Assemble the tiles for a given tiling.
    Assemble {
        #[command(flatten)]
        input: WangInput,
        #[arg(long)]
        tiling: PathBuf,
        /// Directory for placements.txt, region.txt and the tile files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that placements partition a region exactly.
    Verify {
        #[arg(long)]
        tiles: PathBuf,
        #[arg(long)]
        placements: PathBuf,
        /// `box:WxH` or `torus:WxH`.
        #[arg(long)]
        region: String,
    },
    /// Draw tiles, or placements in a region, as SVG.
    Render {
        #[arg(long)]
        tiles: PathBuf,
        #[arg(long, requires = "region")]
        placements: Option<PathBuf>,
        #[arg(long)]
        region: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Find (or count) tilings of the staggered torus.
    WangSolve {
        #[command(flatten)]
        input: WangInput,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        periods: usize,
        #[arg(long)]
        count: bool,
    },
    /// Boundary-word test for a single tile.
    BnCheck {
        /// Polyomino file holding one tile.
        file: PathBuf,
    },
    /// Bounded exact tiling search.
    TileSolve {
        /// Polyomino file or directory of them.
        #[arg(long)]
        tiles: PathBuf,
        #[arg(long)]
        region: String,
        #[arg(long, default_value_t = 50_000_000)]
        max_nodes: u64,
        #[arg(long)]
        max_seconds: Option<f64>,
    },
}

type Failure = String;

struct Report {
    code: u8,
    lines: Vec<String>,
}

impl Report {
    fn ok(lines: Vec<String>) -> Self {
        Report { code: 0, lines }
    }

    fn negative(lines: Vec<String>) -> Self {
        Report { code: 1, lines }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_wang(input: &WangInput) -> Result<WangSet, Failure> {
    let text = read(&input.wang)?;
    parse_wang_set(
        &text,
        ParseOptions {
            pad_colors: input.pad_colors,
        },
    )
    .map_err(|e| format!("{}: {e}", input.wang.display()))
}

/// All tiles in a polyomino file, or in every `*.poly` file of a directory.
fn load_tiles(path: &Path) -> Result<TileSet, Failure> {
    let mut files = Vec::new();
    if path.is_dir() {
        let entries = fs::read_dir(path).map_err(|e| format!("{}: {e}", path.display()))?;
        for entry in entries {
            let p = entry.map_err(|e| e.to_string())?.path();
            if p.extension().is_some_and(|x| x == TILE_EXT) {
                files.push(p);
            }
        }
        files.sort();
    } else {
        files.push(path.to_path_buf());
    }
    let mut tiles = TileSet::new();
    for f in files {
        let parsed = parse_polyominoes(&read(&f)?).map_err(|e| format!("{}: {e}", f.display()))?;
        for (name, cells) in parsed {
            if tiles.insert(name.clone(), cells).is_some() {
                return Err(format!("tile `{name}` defined twice"));
            }
        }
    }
    if tiles.is_empty() {
        return Err(format!("{}: no tiles found", path.display()));
    }
    Ok(tiles)
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))
}

fn write_tiles(dir: &Path, tiles: &TileSet) -> Result<(), Failure> {
    for (name, cells) in tiles {
        write(&dir.join(format!("{name}.{TILE_EXT}")), &format_polyomino(name, cells))?;
    }
    Ok(())
}

fn check_rows(rows: usize, periods: usize) -> Result<(), Failure> {
    if rows == 0 || rows % 2 != 0 {
        return Err(format!("--rows must be even and positive, got {rows}"));
    }
    if periods == 0 {
        return Err("--periods must be positive".into());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Reduce { input, out, svg } => {
            let ws = load_wang(&input)?;
            let red = reduce(&ws).map_err(|e| e.to_string())?;
            create_dir(&out)?;
            let tiles = red.tile_set();
            write_tiles(&out, &tiles)?;
            write(&out.join("params.txt"), &format_params(&red.params))?;
            write(&out.join("slots.txt"), &format_slots(&ws, &red.slot_map))?;
            if svg {
                write(&out.join("tiles.svg"), &render_tiles(&tiles))?;
            }
            Ok(Report::ok(vec![red.params.to_string()]))
        }
        Command::Roundtrip { input, rows, periods } => {
            check_rows(rows, periods)?;
            let ws = load_wang(&input)?;
            let Some(tiling) = solve_torus(&ws, rows, periods).map_err(|e| e.to_string())? else {
                return Ok(Report::negative(vec!["no wang tiling".into()]));
            };
            let red = reduce(&ws).map_err(|e| e.to_string())?;
            let plan = assemble(&red, &tiling).map_err(|e| format!("assembly failed: {e}"))?;
            let region = plan.region();
            let placements = plan.placements();
            let report = verify_partition(&region, &placements, &red.tile_set()).map_err(|e| e.to_string())?;
            let mut lines = vec![format!("region {region}"), plan.census.to_string()];
            if !report.ok {
                lines.push(format!(
                    "roundtrip: partition fails ({} uncovered, {} overlapping)",
                    report.uncovered.len(),
                    report.overlaps.len()
                ));
                return Ok(Report::negative(lines));
            }
            let decoded = decode(&region, &placements, &red).map_err(|e| e.to_string())?;
            let expected = tiling.repeat_rows(plan.repeat);
            for y in 0..expected.rows() {
                for p in 0..expected.periods() {
                    if decoded.get(y, p) != expected.get(y, p) {
                        lines.push(format!(
                            "roundtrip: differs at ({y}, {p}): {} vs {}",
                            ws.tile(decoded.get(y, p)).name,
                            ws.tile(expected.get(y, p)).name
                        ));
                        return Ok(Report::negative(lines));
                    }
                }
            }
            lines.push("roundtrip: ok".into());
            Ok(Report::ok(lines))
        }
        Command::Assemble { input, tiling, out } => {
            let ws = load_wang(&input)?;
            let tiling = parse_tiling(&read(&tiling)?, &ws).map_err(|e| e.to_string())?;
            let red = reduce(&ws).map_err(|e| e.to_string())?;
            let plan = match assemble(&red, &tiling) {
                Ok(plan) => plan,
                Err(e @ (AssemblyError::Overlap { .. } | AssemblyError::IrregularHole { .. })) => {
                    return Ok(Report::negative(vec![format!("assembly failed: {e}")]));
                }
                Err(e) => return Err(e.to_string()),
            };
            let region = plan.region();
            if let Some(dir) = out {
                create_dir(&dir)?;
                write_tiles(&dir, &red.tile_set())?;
                write(&dir.join("placements.txt"), &format_placements(&plan.placements()))?;
                write(&dir.join("region.txt"), &format!("{region}\n"))?;
            }
            Ok(Report::ok(vec![format!("region {region}"), plan.census.to_string()]))
        }
        Command::Verify {
            tiles,
            placements,
            region,
        } => {
            let tiles = load_tiles(&tiles)?;
            let placements = parse_placements(&read(&placements)?).map_err(|e| e.to_string())?;
            let region = parse_region(&region).map_err(|e| e.to_string())?;
            let r = verify_partition(&region, &placements, &tiles).map_err(|e| e.to_string())?;
            let mut lines = vec![format!("covered-area {} region-area {}", r.covered_area, region.area())];
            if r.ok {
                lines.push("partition: ok".into());
                return Ok(Report::ok(lines));
            }
            lines.push(format!(
                "partition: fail uncovered={} overlaps={} outside={}",
                r.uncovered.len(),
                r.overlaps.len(),
                r.outside.len()
            ));
            for (what, set) in [
                ("uncovered", &r.uncovered),
                ("overlap", &r.overlaps),
                ("outside", &r.outside),
            ] {
                if let Some(c) = set.first() {
                    lines.push(format!("first {what} cell {} {}", c.x, c.y));
                }
            }
            Ok(Report::negative(lines))
        }
        Command::Render {
            tiles,
            placements,
            region,
            out,
        } => {
            let tiles = load_tiles(&tiles)?;
            let svg = match (placements, region) {
                (Some(p), Some(r)) => {
                    let placements = parse_placements(&read(&p)?).map_err(|e| e.to_string())?;
                    let region = parse_region(&r).map_err(|e| e.to_string())?;
                    render_placements(&region, &placements, &tiles).map_err(|e| e.to_string())?
                }
                _ => render_tiles(&tiles),
            };
            write(&out, &svg)?;
            Ok(Report::ok(vec![format!("wrote {}", out.display())]))
        }
        Command::WangSolve {
            input,
            rows,
            periods,
            count,
        } => {
            check_rows(rows, periods)?;
            let ws = load_wang(&input)?;
            if count {
                let n = count_torus(&ws, rows, periods).map_err(|e| e.to_string())?;
                let line = format!("count {n}");
                return Ok(if n > 0 {
                    Report::ok(vec![line])
                } else {
                    Report::negative(vec![line])
                });
            }
            match solve_torus(&ws, rows, periods).map_err(|e| e.to_string())? {
                Some(t) => Ok(Report::ok(format_tiling(&ws, &t).lines().map(String::from).collect())),
                None => Ok(Report::negative(vec!["no wang tiling".into()])),
            }
        }
        Command::BnCheck { file } => {
            let tiles = load_tiles(&file)?;
            if tiles.len() != 1 {
                return Err(format!("{}: expected one tile, found {}", file.display(), tiles.len()));
            }
            let (name, cells) = tiles.iter().next().expect("one tile");
            match bn_factorize(cells).map_err(|e| format!("{name}: {e}"))? {
                Some(f) => Ok(Report::ok(vec!["tiles-plane: yes".into(), f.to_string()])),
                None => Ok(Report::negative(vec!["tiles-plane: no".into()])),
            }
        }
        Command::TileSolve {
            tiles,
            region,
            max_nodes,
            max_seconds,
        } => {
            let tiles: Vec<(String, CellSet)> = load_tiles(&tiles)?.into_iter().collect();
            let region = parse_region(&region).map_err(|e| e.to_string())?;
            let limits = SearchLimits {
                max_nodes,
                max_time: max_seconds.map(std::time::Duration::from_secs_f64),
            };
            match exact_tile_search(&tiles, &region, limits).map_err(|e| e.to_string())? {
                SearchOutcome::Found(p) => {
                    let mut lines = vec![format!("found {} placements", p.len())];
                    lines.extend(format_placements(&p).lines().map(String::from));
                    Ok(Report::ok(lines))
                }
                SearchOutcome::Exhausted { nodes } => Ok(Report::negative(vec![format!("no tiling (nodes={nodes})")])),
                SearchOutcome::BudgetExceeded { nodes } => Err(format!("budget exceeded after {nodes} nodes")),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            for line in &report.lines {
                println!("{line}");
            }
            ExitCode::from(report.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
