//! Torus assembly of the four tiles from a diamond Wang tiling, and decoding
//! back.
//!
//! Everything is laid out on a grid of building-block cells. Site `(y, p)`
//! owns one locator whose bottom row sits in block-row `2y`, connector in
//! `2y+1`, top row in `2y+2`, starting at block column
//! `off(y) + p per` with `off(y) = y (loc + t)`. The site's encoder lies in
//! block-row `2y+1` and is shifted so that its chosen slot `k` sits between
//! the locator's left selector and the next locator's right selector. Every
//! block the locators and encoders leave free receives a linker, and each
//! remaining plus-shaped hole a tiny filler.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::geometry::{Cell, CellSet, GeometryError, Placement, Region, TileSet};
use crate::reduction::{self, slot_of, slot_owner, ReductionOutput, ReductionParams};
use crate::stamps::{self, Mid, BLOCK_HEIGHT, BLOCK_WIDTH};
use crate::wang::{DiamondTiling, WangError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error(transparent)]
    Wang(#[from] WangError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("tile index {0} out of range")]
    TileIndex(usize),
    #[error("no slot copy satisfies the alignment rule at ({y}, {p})")]
    NoSlot { y: usize, p: usize },
    #[error("{first} and {second} overlap at cell ({}, {})", cell.x, cell.y)]
    Overlap {
        first: PlacedPiece,
        second: PlacedPiece,
        cell: Cell,
    },
    #[error("uncovered region of {} cells is not a plus hole, first cell ({}, {})", cells.len(), cells.first().map_or(0, |c| c.x), cells.first().map_or(0, |c| c.y))]
    IrregularHole { cells: CellSet },
    #[error("cannot decode: {0}")]
    Decode(String),
}

/// What a placement is, for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PieceKind {
    Locator { y: usize, p: usize },
    Encoder { y: usize, p: usize },
    Linker { row: usize, col: usize },
    Filler,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlacedPiece {
    pub kind: PieceKind,
    pub placement: Placement,
}

impl fmt::Display for PlacedPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (dx, dy) = (self.placement.offset.dx, self.placement.offset.dy);
        match self.kind {
            PieceKind::Locator { y, p } => write!(f, "locator({y},{p})@({dx},{dy})"),
            PieceKind::Encoder { y, p } => write!(f, "encoder({y},{p})@({dx},{dy})"),
            PieceKind::Linker { row, col } => write!(f, "linker[{row},{col}]@({dx},{dy})"),
            PieceKind::Filler => write!(f, "filler@({dx},{dy})"),
        }
    }
}

/// Site geometry of an `rows x periods` torus assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    pub rows: usize,
    pub periods: usize,
    pub params: ReductionParams,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Lattice {
    pub fn new(rows: usize, periods: usize, params: ReductionParams) -> Result<Self, AssemblyError> {
        if rows == 0 || rows % 2 != 0 {
            return Err(WangError::OddRows(rows).into());
        }
        if periods == 0 {
            return Err(WangError::NoPeriods.into());
        }
        Ok(Lattice { rows, periods, params })
    }

    /// How many times a tiling with these dimensions must be stacked so the
    /// lattice closes without shear. Going up `rows` site rows advances the
    /// locators by `rows / 2` periods, which is the identity only when
    /// `periods` divides `rows / 2`.
    pub fn repeat_factor(rows: usize, periods: usize) -> usize {
        periods / gcd(rows / 2, periods)
    }

    pub fn block_cols(&self) -> usize {
        self.periods * self.params.per
    }

    pub fn block_rows(&self) -> usize {
        2 * self.rows
    }

    pub fn region(&self) -> Region {
        Region::torus(
            self.block_cols() as i64 * BLOCK_WIDTH,
            self.block_rows() as i64 * BLOCK_HEIGHT,
        )
        .expect("positive size")
    }

    /// Block column of locator `(y, p)`.
    pub fn locator_column(&self, y: usize, p: usize) -> usize {
        let step = self.params.loc + self.params.t;
        (y * step + p * self.params.per) % self.block_cols()
    }

    /// Block column of the encoder at `(y, p)` exposing slot `k`.
    pub fn encoder_column(&self, y: usize, p: usize, k: usize) -> usize {
        let rel = self.params.encoder_start(k);
        debug_assert!(rel > 0);
        (self.locator_column(y, p) + rel as usize) % self.block_cols()
    }

    /// Linker count: `gap - 1` per site in the connector rows plus `2t` per
    /// site in the locator rows.
    pub fn expected_linkers(&self) -> usize {
        self.rows * self.periods * (self.params.gap - 1 + 2 * self.params.t)
    }
}

/// Exposed slot index per site, `slots[y][p]`.
///
/// Sites are processed row by row from `y = 0`, each taking the smallest copy
/// whose slot differs from the slots of its lower neighbors `(y-1, p)` and
/// `(y-1, p+1)`. On the torus the same rule also binds the last row against
/// row 0; when greedy choice runs into that, the search backtracks.
pub fn choose_slots(tiling: &DiamondTiling, n: usize) -> Result<Vec<Vec<usize>>, AssemblyError> {
    let (r, q) = (tiling.rows(), tiling.periods());
    for row in tiling.grid() {
        if let Some(&bad) = row.iter().find(|&&i| i >= n) {
            return Err(AssemblyError::TileIndex(bad));
        }
    }
    let cells = r * q;
    let mut copy: Vec<Option<usize>> = vec![None; cells];
    let slot = |copy: &[Option<usize>], y: usize, p: usize| -> Option<usize> {
        copy[y * q + p].map(|j| slot_of(tiling.get(y, p), j))
    };
    let fits = |copy: &[Option<usize>], y: usize, p: usize| -> bool {
        let k = slot(copy, y, p);
        let down = (y + r - 1) % r;
        let up = (y + 1) % r;
        let neighbors = [(down, p), (down, (p + 1) % q), (up, p), (up, (p + q - 1) % q)];
        neighbors
            .iter()
            .all(|&(ny, np)| (ny, np) == (y, p) || slot(copy, ny, np) != k)
    };
    // iterative backtracking over sites in row-major order
    let mut cell = 0;
    let mut next = vec![0usize; cells];
    while cell < cells {
        let (y, p) = (cell / q, cell % q);
        let mut placed = false;
        while next[cell] < 3 {
            copy[cell] = Some(next[cell]);
            next[cell] += 1;
            if fits(&copy, y, p) {
                placed = true;
                break;
            }
        }
        if placed {
            cell += 1;
        } else {
            copy[cell] = None;
            next[cell] = 0;
            if cell == 0 {
                return Err(AssemblyError::NoSlot { y, p });
            }
            cell -= 1;
        }
    }
    Ok((0..r)
        .map(|y| (0..q).map(|p| slot(&copy, y, p).expect("assigned")).collect())
        .collect())
}

/// Occupant of one building-block cell of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockUse {
    /// Column `index` of the bottom (`top = false`) or top row of a locator.
    Locator {
        y: usize,
        p: usize,
        top: bool,
        index: usize,
    },
    Connector {
        y: usize,
        p: usize,
    },
    /// Block `index` of an encoder.
    Encoder {
        y: usize,
        p: usize,
        index: usize,
    },
    Linker,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Census {
    pub locators: usize,
    pub encoders: usize,
    pub linkers: usize,
    pub fillers: usize,
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "locators={} encoders={} linkers={} fillers={}",
            self.locators, self.encoders, self.linkers, self.fillers
        )
    }
}

#[derive(Debug, Clone)]
pub struct AssemblyPlan {
    pub lattice: Lattice,
    /// The input tiling stacked [`Lattice::repeat_factor`] times.
    pub tiling: DiamondTiling,
    pub repeat: usize,
    pub slots: Vec<Vec<usize>>,
    pub pieces: Vec<PlacedPiece>,
    /// Row-major block grid, `block_rows x block_cols`.
    pub blocks: Vec<Option<BlockUse>>,
    pub census: Census,
}

impl AssemblyPlan {
    pub fn region(&self) -> Region {
        self.lattice.region()
    }

    pub fn placements(&self) -> Vec<Placement> {
        self.pieces.iter().map(|p| p.placement.clone()).collect()
    }

    pub fn block(&self, row: usize, col: usize) -> Option<BlockUse> {
        let rows = self.lattice.block_rows();
        let cols = self.lattice.block_cols();
        self.blocks[(row % rows) * cols + col % cols]
    }
}

struct Occupancy {
    region: Region,
    owner: Vec<u32>,
}

impl Occupancy {
    fn place(&mut self, pieces: &[PlacedPiece], idx: usize, tile: &CellSet) -> Result<(), AssemblyError> {
        let off = pieces[idx].placement.offset;
        for c in tile {
            let cell = Cell::new(c.x + off.dx, c.y + off.dy);
            let i = self.region.index_of(cell).expect("torus");
            let prev = self.owner[i];
            if prev != 0 {
                return Err(AssemblyError::Overlap {
                    first: pieces[prev as usize - 1].clone(),
                    second: pieces[idx].clone(),
                    cell: self.region.reduce(cell),
                });
            }
            self.owner[i] = idx as u32 + 1;
        }
        Ok(())
    }
}

/// Uncovered 4-connected components of a torus occupancy grid, in unwrapped
/// coordinates anchored at each component's first cell in scan order.
fn uncovered_components(region: &Region, covered: &[bool]) -> Vec<CellSet> {
    let mut seen = covered.to_vec();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..seen.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let c0 = region.cell_at(start);
        let mut comp = vec![c0];
        queue.push_back(c0);
        while let Some(c) = queue.pop_front() {
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let n = Cell::new(c.x + dx, c.y + dy);
                let i = match region.index_of(n) {
                    Some(i) => i,
                    None => continue,
                };
                if !seen[i] {
                    seen[i] = true;
                    comp.push(n);
                    queue.push_back(n);
                }
            }
        }
        out.push(CellSet::from_cells(comp));
    }
    out
}

fn fillers_for(region: &Region, covered: &[bool]) -> Result<Vec<Placement>, AssemblyError> {
    let mut fillers = Vec::new();
    for comp in uncovered_components(region, covered) {
        match stamps::plus_anchor(&comp) {
            Some((a, b)) => {
                let c = region.reduce(Cell::new(a, b));
                fillers.push(Placement::new(reduction::FILLER, c.x, c.y));
            }
            None => return Err(AssemblyError::IrregularHole { cells: comp }),
        }
    }
    Ok(fillers)
}

/// Tiny fillers for every uncovered cell of `region`. Fails if the current
/// placements overlap or leave anything that is not a plus-shaped hole.
/// `filler` names the plus tile in `tiles`.
pub fn fill_holes(
    region: &Region,
    placements: &[Placement],
    tiles: &TileSet,
    filler: &str,
) -> Result<Vec<Placement>, AssemblyError> {
    let report = crate::geometry::verify_partition(region, placements, tiles)?;
    if let Some(c) = report.overlaps.first().or(report.outside.first()) {
        return Err(AssemblyError::Decode(format!(
            "placements overlap or leave the region at ({}, {})",
            c.x, c.y
        )));
    }
    let mut covered = vec![true; region.area() as usize];
    for c in &report.uncovered {
        covered[region.index_of(*c).expect("inside")] = false;
    }
    let mut fillers = fillers_for(region, &covered)?;
    for f in &mut fillers {
        f.tile = filler.to_string();
    }
    Ok(fillers)
}

/// Builds the torus assembly for `tiling` and checks it cell by cell.
///
/// A tiling whose periods do not divide half its rows is stacked vertically
/// first; see [`Lattice::repeat_factor`].
pub fn assemble(out: &ReductionOutput, tiling: &DiamondTiling) -> Result<AssemblyPlan, AssemblyError> {
    let params = out.params;
    let repeat = Lattice::repeat_factor(tiling.rows(), tiling.periods());
    let tiling = tiling.repeat_rows(repeat);
    let lattice = Lattice::new(tiling.rows(), tiling.periods(), params)?;
    let slots = choose_slots(&tiling, out.wang.n())?;
    let (rows, cols) = (lattice.block_rows(), lattice.block_cols());
    let mut blocks: Vec<Option<BlockUse>> = vec![None; rows * cols];
    let mut mark = |row: usize, col: usize, u: BlockUse| {
        let slot = &mut blocks[(row % rows) * cols + col % cols];
        // a block claimed twice shows up as a cell overlap below
        if slot.is_none() {
            *slot = Some(u);
        }
    };

    let mut pieces = Vec::new();
    let at = |row: usize, col: usize| -> (i64, i64) { (col as i64 * BLOCK_WIDTH, row as i64 * BLOCK_HEIGHT) };
    for y in 0..lattice.rows {
        for p in 0..lattice.periods {
            let lx = lattice.locator_column(y, p);
            for index in 0..params.loc {
                mark(
                    2 * y,
                    lx + index,
                    BlockUse::Locator {
                        y,
                        p,
                        top: false,
                        index,
                    },
                );
                mark(2 * y + 2, lx + index, BlockUse::Locator { y, p, top: true, index });
            }
            mark(2 * y + 1, lx + params.gap, BlockUse::Connector { y, p });
            let (dx, dy) = at(2 * y, lx);
            pieces.push(PlacedPiece {
                kind: PieceKind::Locator { y, p },
                placement: Placement::new(reduction::LOCATOR, dx, dy),
            });
        }
    }
    for y in 0..lattice.rows {
        for p in 0..lattice.periods {
            let ex = lattice.encoder_column(y, p, slots[y][p]);
            for index in 0..params.enc {
                mark(2 * y + 1, ex + index, BlockUse::Encoder { y, p, index });
            }
            let (dx, dy) = at(2 * y + 1, ex);
            pieces.push(PlacedPiece {
                kind: PieceKind::Encoder { y, p },
                placement: Placement::new(reduction::ENCODER, dx, dy),
            });
        }
    }
    for row in 0..rows {
        for col in 0..cols {
            if blocks[row * cols + col].is_none() {
                blocks[row * cols + col] = Some(BlockUse::Linker);
                let (dx, dy) = at(row, col);
                pieces.push(PlacedPiece {
                    kind: PieceKind::Linker { row, col },
                    placement: Placement::new(reduction::LINKER, dx, dy),
                });
            }
        }
    }

    let region = lattice.region();
    let mut occ = Occupancy {
        region,
        owner: vec![0; region.area() as usize],
    };
    for idx in 0..pieces.len() {
        let tile = match pieces[idx].kind {
            PieceKind::Locator { .. } => &out.locator,
            PieceKind::Encoder { .. } => &out.encoder,
            PieceKind::Linker { .. } => &out.linker,
            PieceKind::Filler => &out.filler,
        };
        occ.place(&pieces, idx, tile)?;
    }
    let covered: Vec<bool> = occ.owner.iter().map(|&o| o != 0).collect();
    let fillers = fillers_for(&region, &covered)?;
    let census = Census {
        locators: lattice.rows * lattice.periods,
        encoders: lattice.rows * lattice.periods,
        linkers: pieces.len() - 2 * lattice.rows * lattice.periods,
        fillers: fillers.len(),
    };
    pieces.extend(fillers.into_iter().map(|placement| PlacedPiece {
        kind: PieceKind::Filler,
        placement,
    }));
    Ok(AssemblyPlan {
        lattice,
        tiling,
        repeat,
        slots,
        pieces,
        blocks,
        census,
    })
}

/// Cells probed to read a handle attachment: a cell of the near plus and a
/// cell of the far plus that no other feature touches.
fn probe(north: bool, mid: Mid) -> (i64, i64) {
    match (north, mid) {
        (true, Mid::N) => (44, 18),
        (true, Mid::F) => (41, 25),
        (false, Mid::N) => (39, -5),
        (false, Mid::F) => (42, -12),
    }
}

fn read_mid(encoder: &CellSet, block: usize, north: bool) -> Option<Mid> {
    let x0 = block as i64 * BLOCK_WIDTH;
    let has = |m: Mid| {
        let (x, y) = probe(north, m);
        encoder.contains(Cell::new(x0 + x, y))
    };
    match (has(Mid::N), has(Mid::F)) {
        (true, false) => Some(Mid::N),
        (false, true) => Some(Mid::F),
        _ => None,
    }
}

/// Recovers the simulated tiling from a lattice assembly.
///
/// The locator and encoder placements fix each site's exposed slot; the
/// slot gives the tile, and the handle attachments of the exposed encoding
/// blocks are read back from the encoder's cells and compared with that
/// tile's colors.
pub fn decode(
    region: &Region,
    placements: &[Placement],
    out: &ReductionOutput,
) -> Result<DiamondTiling, AssemblyError> {
    let params = out.params;
    let bad = |msg: String| AssemblyError::Decode(msg);
    let bw = BLOCK_WIDTH * params.per as i64;
    let bh = 2 * BLOCK_HEIGHT;
    if region.width % bw != 0 || region.height % bh != 0 {
        return Err(bad(format!("region {region} is not a whole number of periods")));
    }
    let q = (region.width / bw) as usize;
    let r = (region.height / bh) as usize;
    let lattice = Lattice::new(r, q, params)?;
    let cols = lattice.block_cols() as i64;
    let mut locators: Vec<Vec<(i64, usize)>> = vec![Vec::new(); r];
    let mut encoders = Vec::new();
    for pl in placements {
        let c = region.reduce(Cell::new(pl.offset.dx, pl.offset.dy));
        match pl.tile.as_str() {
            reduction::LOCATOR | reduction::ENCODER => {
                if c.x % BLOCK_WIDTH != 0 {
                    return Err(bad(format!("{} at x={} is off the block grid", pl.tile, c.x)));
                }
                let col = c.x / BLOCK_WIDTH;
                if pl.tile == reduction::LOCATOR {
                    if c.y % bh != 0 {
                        return Err(bad(format!("locator at y={} is off the lattice", c.y)));
                    }
                    let y = (c.y / bh) as usize;
                    let rel = (col - lattice.locator_column(y, 0) as i64).rem_euclid(cols);
                    if rel % params.per as i64 != 0 {
                        return Err(bad(format!("locator at x={} is off the lattice", c.x)));
                    }
                    locators[y].push((col, (rel / params.per as i64) as usize));
                } else {
                    if c.y % bh != BLOCK_HEIGHT {
                        return Err(bad(format!("encoder at y={} is off the lattice", c.y)));
                    }
                    encoders.push(((c.y / bh) as usize, col));
                }
            }
            _ => {}
        }
    }
    let mut grid: Vec<Vec<Option<usize>>> = vec![vec![None; q]; r];
    for (y, ex) in encoders {
        let mut hit = None;
        for &(lx, p) in &locators[y] {
            let rel = (ex - lx).rem_euclid(cols);
            if rel > params.gap as i64 && rel <= 2 * params.gap as i64 {
                hit = Some((rel, p));
            }
        }
        let (rel, p) = hit.ok_or_else(|| bad(format!("encoder in row {y} at column {ex} has no locator")))?;
        let k = params
            .slot_from_start(rel)
            .ok_or_else(|| bad(format!("encoder ({y},{p}) sits between slots")))?;
        let (tile, _) =
            slot_owner(k, out.wang.n()).ok_or_else(|| bad(format!("encoder ({y},{p}) exposes unused slot {k}")))?;
        let w = out.wang.tile(tile);
        let first = (k - 1) * params.slot_len() + 1;
        for (start, north, south) in [(first, w.nw, w.sw), (first + params.right_segment_start(), w.ne, w.se)] {
            for (is_north, color) in [(true, north), (false, south)] {
                let bits = (0..params.t)
                    .map(|b| read_mid(&out.encoder, start + b, is_north))
                    .collect::<Option<Vec<Mid>>>()
                    .ok_or_else(|| bad(format!("encoder ({y},{p}) slot {k} lacks handle attachments")))?;
                if reduction::color_from_bits(&bits) != color {
                    return Err(bad(format!(
                        "encoder ({y},{p}) slot {k} bits disagree with tile {}",
                        w.name
                    )));
                }
            }
        }
        if grid[y][p].replace(tile).is_some() {
            return Err(bad(format!("site ({y},{p}) has two encoders")));
        }
    }
    let grid = grid
        .into_iter()
        .enumerate()
        .map(|(y, row)| {
            row.into_iter()
                .enumerate()
                .map(|(p, t)| t.ok_or_else(|| bad(format!("site ({y},{p}) has no encoder"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DiamondTiling::new(grid)?)
}
