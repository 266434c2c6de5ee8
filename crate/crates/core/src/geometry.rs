//! Exact integer cell-set algebra on the unit-square lattice.
//!
//! A [`CellSet`] is a finite, deduplicated set of unit cells kept sorted in
//! `(y, x)` order. Every tile, stamp and occupancy in this crate is one. Sets
//! may be disconnected.
//!
//! Finite universes are described by a [`Region`] (a box or a torus), and
//! [`verify_partition`] is the ground-truth check that a list of translated
//! tiles covers a region exactly once.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("coordinate overflow while translating by ({dx}, {dy})")]
    Overflow { dx: i64, dy: i64 },
    #[error("unknown tile `{0}`")]
    UnknownTile(String),
    #[error("cell set is not edge-connected ({components} components)")]
    Disconnected { components: usize },
    #[error("cell set has {holes} hole cell(s)")]
    Holes { holes: usize },
    #[error("cell set is empty")]
    Empty,
    #[error("region dimensions must be positive, got {width}x{height}")]
    BadRegion { width: i64, height: i64 },
}

/// The unit square `[x, x+1) x [y, y+1)`.
///
/// Ordered by row first, then column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An integer translation vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Offset {
    pub dx: i64,
    pub dy: i64,
}

impl Offset {
    pub const ZERO: Offset = Offset { dx: 0, dy: 0 };

    pub const fn new(dx: i64, dy: i64) -> Self {
        Offset { dx, dy }
    }

    pub fn checked_add(self, other: Offset) -> Option<Offset> {
        Some(Offset::new(
            self.dx.checked_add(other.dx)?,
            self.dy.checked_add(other.dy)?,
        ))
    }
}

/// Inclusive bounding box of a non-empty cell set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub min_x: i64,
    pub min_y: i64,
    pub max_x: i64,
    pub max_y: i64,
}

impl Bounds {
    pub fn width(&self) -> i64 {
        self.max_x - self.min_x + 1
    }

    pub fn height(&self) -> i64 {
        self.max_y - self.min_y + 1
    }
}

/// Finite set of unit cells, sorted by `(y, x)` with no duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CellSet {
    cells: Vec<Cell>,
}

impl CellSet {
    pub fn new() -> Self {
        CellSet { cells: Vec::new() }
    }

    /// Builds a set from cells in any order; duplicates collapse.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        CellSet { cells }
    }

    /// Wraps a vector that is already strictly increasing.
    pub(crate) fn from_sorted(cells: Vec<Cell>) -> Self {
        debug_assert!(cells.windows(2).all(|w| w[0] < w[1]));
        CellSet { cells }
    }

    /// The `width x height` rectangle with lower-left cell `(x0, y0)`.
    pub fn rect(x0: i64, y0: i64, width: i64, height: i64) -> Self {
        let mut cells = Vec::with_capacity((width.max(0) * height.max(0)) as usize);
        for y in y0..y0 + height {
            for x in x0..x0 + width {
                cells.push(Cell::new(x, y));
            }
        }
        CellSet { cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cell> {
        self.cells.iter()
    }

    pub fn as_slice(&self) -> &[Cell] {
        &self.cells
    }

    pub fn into_vec(self) -> Vec<Cell> {
        self.cells
    }

    pub fn first(&self) -> Option<Cell> {
        self.cells.first().copied()
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        let (a, b) = (&self.cells, &other.cells);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        CellSet { cells: out }
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        let (a, b) = (&self.cells, &other.cells);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        CellSet { cells: out }
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        let (a, b) = (&self.cells, &other.cells);
        let mut out = Vec::with_capacity(a.len());
        let mut j = 0;
        for &c in a {
            while j < b.len() && b[j] < c {
                j += 1;
            }
            if j < b.len() && b[j] == c {
                continue;
            }
            out.push(c);
        }
        CellSet { cells: out }
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        let (a, b) = (&self.cells, &other.cells);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Image under a translation. Order is preserved, so this is a plain map.
    pub fn translate(&self, v: Offset) -> Result<CellSet, GeometryError> {
        let overflow = || GeometryError::Overflow { dx: v.dx, dy: v.dy };
        let cells = self
            .cells
            .iter()
            .map(|c| Some(Cell::new(c.x.checked_add(v.dx)?, c.y.checked_add(v.dy)?)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(overflow)?;
        Ok(CellSet { cells })
    }

    /// Point reflection `(x, y) -> (-x-1, -y-1)`, i.e. rotation by a half turn
    /// about the origin vertex.
    pub fn rotate180(&self) -> CellSet {
        // the map reverses (y, x) order
        let cells = self.cells.iter().rev().map(|c| Cell::new(-c.x - 1, -c.y - 1)).collect();
        CellSet { cells }
    }

    pub fn bounds(&self) -> Option<Bounds> {
        let first = self.cells.first()?;
        let last = self.cells.last()?;
        let (mut min_x, mut max_x) = (i64::MAX, i64::MIN);
        for c in &self.cells {
            min_x = min_x.min(c.x);
            max_x = max_x.max(c.x);
        }
        Some(Bounds {
            min_x,
            min_y: first.y,
            max_x,
            max_y: last.y,
        })
    }

    /// Translate so that the bounding box starts at `(0, 0)`; returns the
    /// normalized set and the offset that was applied.
    pub fn normalized(&self) -> (CellSet, Offset) {
        match self.bounds() {
            None => (CellSet::new(), Offset::ZERO),
            Some(b) => {
                let v = Offset::new(-b.min_x, -b.min_y);
                let cells = self.cells.iter().map(|c| Cell::new(c.x + v.dx, c.y + v.dy)).collect();
                (CellSet { cells }, v)
            }
        }
    }

    /// `Some(v)` with `self + v == other`, if such a translation exists.
    pub fn translation_to(&self, other: &CellSet) -> Option<Offset> {
        if self.len() != other.len() {
            return None;
        }
        let (Some(a), Some(b)) = (self.first(), other.first()) else {
            return Some(Offset::ZERO);
        };
        let v = Offset::new(b.x - a.x, b.y - a.y);
        self.cells
            .iter()
            .zip(&other.cells)
            .all(|(p, q)| q.x - p.x == v.dx && q.y - p.y == v.dy)
            .then_some(v)
    }

    pub fn eq_up_to_translation(&self, other: &CellSet) -> bool {
        self.translation_to(other).is_some()
    }

    /// Edge-connected components, each in `(y, x)` order, listed by their
    /// least cell.
    pub fn components(&self) -> Vec<CellSet> {
        let n = self.cells.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (i, c) in self.cells.iter().enumerate() {
            if i + 1 < n && self.cells[i + 1] == Cell::new(c.x + 1, c.y) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, i + 1));
                parent[a.max(b)] = a.min(b);
            }
            if let Ok(j) = self.cells[i..].binary_search(&Cell::new(c.x, c.y + 1)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, i + j));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<Cell>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(self.cells[i]);
        }
        groups.into_values().map(CellSet::from_sorted).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Number of complement cells enclosed by the set (cells of the bounding
    /// box not edge-reachable from outside it).
    pub fn hole_count(&self) -> usize {
        let Some(b) = self.bounds() else { return 0 };
        let (w, h) = ((b.width() + 2) as usize, (b.height() + 2) as usize);
        let (ox, oy) = (b.min_x - 1, b.min_y - 1);
        let mut filled = vec![false; w * h];
        for c in &self.cells {
            filled[(c.y - oy) as usize * w + (c.x - ox) as usize] = true;
        }
        let mut seen = vec![false; w * h];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            let (x, y) = (i % w, i / w);
            let mut visit = |j: usize| {
                if !seen[j] && !filled[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            };
            if x > 0 {
                visit(i - 1);
            }
            if x + 1 < w {
                visit(i + 1);
            }
            if y > 0 {
                visit(i - w);
            }
            if y + 1 < h {
                visit(i + w);
            }
        }
        (0..w * h).filter(|&i| !seen[i] && !filled[i]).count()
    }
}

impl FromIterator<Cell> for CellSet {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        CellSet::from_cells(iter)
    }
}

impl<'a> IntoIterator for &'a CellSet {
    type Item = &'a Cell;
    type IntoIter = std::slice::Iter<'a, Cell>;

    fn into_iter(self) -> Self::IntoIter {
        self.cells.iter()
    }
}

/// Named tiles. A `BTreeMap` keeps every listing in a stable order.
pub type TileSet = BTreeMap<String, CellSet>;

/// One translated copy of a named tile.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    pub tile: String,
    pub offset: Offset,
}

impl Placement {
    pub fn new(tile: impl Into<String>, dx: i64, dy: i64) -> Self {
        Placement {
            tile: tile.into(),
            offset: Offset::new(dx, dy),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionKind {
    Box,
    Torus,
}

/// A finite universe: a box, or a torus wrapping both axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Region {
    pub kind: RegionKind,
    pub width: i64,
    pub height: i64,
    pub origin: Cell,
}

impl Region {
    pub fn new(kind: RegionKind, width: i64, height: i64) -> Result<Self, GeometryError> {
        if width < 1 || height < 1 {
            return Err(GeometryError::BadRegion { width, height });
        }
        Ok(Region {
            kind,
            width,
            height,
            origin: Cell::new(0, 0),
        })
    }

    pub fn boxed(width: i64, height: i64) -> Result<Self, GeometryError> {
        Region::new(RegionKind::Box, width, height)
    }

    pub fn torus(width: i64, height: i64) -> Result<Self, GeometryError> {
        Region::new(RegionKind::Torus, width, height)
    }

    pub fn area(&self) -> u64 {
        self.width as u64 * self.height as u64
    }

    /// Grid index of a cell, or `None` for a cell outside a box. Torus cells
    /// are reduced to the canonical residue.
    #[inline]
    pub fn index_of(&self, c: Cell) -> Option<usize> {
        let (mut x, mut y) = (c.x - self.origin.x, c.y - self.origin.y);
        match self.kind {
            RegionKind::Box => {
                if x < 0 || y < 0 || x >= self.width || y >= self.height {
                    return None;
                }
            }
            RegionKind::Torus => {
                x = x.rem_euclid(self.width);
                y = y.rem_euclid(self.height);
            }
        }
        Some(y as usize * self.width as usize + x as usize)
    }

    #[inline]
    pub fn cell_at(&self, index: usize) -> Cell {
        let w = self.width as usize;
        Cell::new(self.origin.x + (index % w) as i64, self.origin.y + (index / w) as i64)
    }

    /// Canonical representative of a cell (identity for a box).
    pub fn reduce(&self, c: Cell) -> Cell {
        match self.kind {
            RegionKind::Box => c,
            RegionKind::Torus => Cell::new(
                self.origin.x + (c.x - self.origin.x).rem_euclid(self.width),
                self.origin.y + (c.y - self.origin.y).rem_euclid(self.height),
            ),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            RegionKind::Box => "box",
            RegionKind::Torus => "torus",
        };
        write!(f, "{kind}:{}x{}", self.width, self.height)
    }
}

/// Outcome of [`verify_partition`]. All cell lists are in region coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub ok: bool,
    pub uncovered: CellSet,
    pub overlaps: CellSet,
    /// Placed cells falling outside a box region (always empty on a torus).
    pub outside: CellSet,
    pub covered_area: u64,
}

/// Checks that the placements cover every cell of `region` exactly once.
pub fn verify_partition(
    region: &Region,
    placements: &[Placement],
    tiles: &TileSet,
) -> Result<PartitionReport, GeometryError> {
    let mut counts = vec![0u8; region.area() as usize];
    let mut outside = Vec::new();
    let mut covered_area = 0u64;
    for p in placements {
        let tile = tiles
            .get(&p.tile)
            .ok_or_else(|| GeometryError::UnknownTile(p.tile.clone()))?;
        covered_area += tile.len() as u64;
        for c in tile {
            let c = Cell::new(c.x + p.offset.dx, c.y + p.offset.dy);
            match region.index_of(c) {
                Some(i) => counts[i] = counts[i].saturating_add(1),
                None => outside.push(c),
            }
        }
    }
    let mut uncovered = Vec::new();
    let mut overlaps = Vec::new();
    for (i, &n) in counts.iter().enumerate() {
        match n {
            0 => uncovered.push(region.cell_at(i)),
            1 => {}
            _ => overlaps.push(region.cell_at(i)),
        }
    }
    let ok = uncovered.is_empty() && overlaps.is_empty() && outside.is_empty();
    Ok(PartitionReport {
        ok,
        uncovered: CellSet::from_sorted(uncovered),
        overlaps: CellSet::from_sorted(overlaps),
        outside: CellSet::from_cells(outside),
        covered_area,
    })
}

/// Unit step of a boundary traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
    L,
    R,
}

impl Step {
    /// The opposite direction (`U <-> D`, `L <-> R`).
    pub fn complement(self) -> Step {
        match self {
            Step::U => Step::D,
            Step::D => Step::U,
            Step::L => Step::R,
            Step::R => Step::L,
        }
    }

    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::U => (0, 1),
            Step::D => (0, -1),
            Step::L => (-1, 0),
            Step::R => (1, 0),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::L => 'L',
            Step::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        Some(match c {
            'U' => Step::U,
            'D' => Step::D,
            'L' => Step::L,
            'R' => Step::R,
            _ => return None,
        })
    }
}

/// Word over `{U, D, L, R}` describing a closed lattice path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BoundaryWord(pub Vec<Step>);

impl BoundaryWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    /// Reversed complement.
    pub fn hat(steps: &[Step]) -> Vec<Step> {
        steps.iter().rev().map(|s| s.complement()).collect()
    }
}

impl fmt::Display for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// Directed boundary edges of a cell set, oriented with the interior on the
/// left (counterclockwise around each cell). Keys are start vertices.
fn boundary_edges(cs: &CellSet) -> HashMap<(i64, i64), Vec<Step>> {
    let mut out: HashMap<(i64, i64), Vec<Step>> = HashMap::new();
    for c in cs {
        let (x, y) = (c.x, c.y);
        if !cs.contains(Cell::new(x, y - 1)) {
            out.entry((x, y)).or_default().push(Step::R);
        }
        if !cs.contains(Cell::new(x + 1, y)) {
            out.entry((x + 1, y)).or_default().push(Step::U);
        }
        if !cs.contains(Cell::new(x, y + 1)) {
            out.entry((x + 1, y + 1)).or_default().push(Step::L);
        }
        if !cs.contains(Cell::new(x - 1, y)) {
            out.entry((x, y + 1)).or_default().push(Step::D);
        }
    }
    out
}

/// Counterclockwise boundary word of a connected, hole-free cell set.
///
/// The traversal starts at the least boundary vertex in `(y, x)` order (the
/// lower-left corner of the first cell) and first steps along the edge that
/// keeps the interior on the left, which is always `R`.
pub fn boundary_word(cs: &CellSet) -> Result<BoundaryWord, GeometryError> {
    let first = cs.first().ok_or(GeometryError::Empty)?;
    let components = cs.components().len();
    if components != 1 {
        return Err(GeometryError::Disconnected { components });
    }
    let holes = cs.hole_count();
    if holes > 0 {
        return Err(GeometryError::Holes { holes });
    }
    let edges = boundary_edges(cs);
    let total: usize = edges.values().map(Vec::len).sum();
    let start = (first.x, first.y);
    let mut word = Vec::with_capacity(total);
    let mut v = start;
    loop {
        let out = &edges[&v];
        // without holes every boundary vertex is simple
        debug_assert_eq!(out.len(), 1);
        let step = out[0];
        word.push(step);
        let (dx, dy) = step.delta();
        v = (v.0 + dx, v.1 + dy);
        if v == start {
            break;
        }
    }
    debug_assert_eq!(word.len(), total);
    Ok(BoundaryWord(word))
}

/// All boundary loops of a cell set as closed vertex lists, collinear steps
/// merged. Outer loops run counterclockwise and hole loops clockwise. At a
/// vertex where two cells touch only diagonally the traversal turns left, so
/// each loop is simple.
pub fn outline_loops(cs: &CellSet) -> Vec<Vec<(i64, i64)>> {
    let mut edges = boundary_edges(cs);
    let mut starts: Vec<(i64, i64)> = edges.keys().copied().collect();
    starts.sort_by_key(|&(x, y)| (y, x));
    let mut loops = Vec::new();
    for s in starts {
        while edges.get(&s).is_some_and(|v| !v.is_empty()) {
            let mut v = s;
            let mut prev: Option<Step> = None;
            let mut pts = vec![s];
            loop {
                let out = edges.get_mut(&v).expect("boundary is closed");
                let idx = match prev {
                    Some(p) if out.len() > 1 => {
                        let left = turn_left(p);
                        out.iter().position(|&d| d == left).unwrap_or(0)
                    }
                    _ => 0,
                };
                let step = out.swap_remove(idx);
                let (dx, dy) = step.delta();
                v = (v.0 + dx, v.1 + dy);
                if prev == Some(step) {
                    *pts.last_mut().expect("nonempty") = v;
                } else {
                    pts.push(v);
                }
                prev = Some(step);
                if v == s {
                    break;
                }
            }
            // drop the closing duplicate of the start vertex
            if pts.len() > 1 && pts.last() == pts.first() {
                pts.pop();
            }
            loops.push(pts);
        }
    }
    loops
}

fn turn_left(s: Step) -> Step {
    match s {
        Step::R => Step::U,
        Step::U => Step::L,
        Step::L => Step::D,
        Step::D => Step::R,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus(a: i64, b: i64) -> CellSet {
        let mut v = Vec::new();
        for y in b..b + 5 {
            v.push(Cell::new(a, y));
        }
        for x in a - 2..a + 3 {
            v.push(Cell::new(x, b + 2));
        }
        CellSet::from_cells(v)
    }

    #[test]
    fn translate_identity_and_plus() {
        let one = CellSet::from_cells([Cell::new(0, 0)]);
        assert_eq!(one.translate(Offset::ZERO).unwrap(), one);
        assert_eq!(plus(0, 0).translate(Offset::new(0, 14)).unwrap(), plus(0, 14));
        let moved = plus(0, 0).translate(Offset::new(84, 0)).unwrap();
        assert!(moved.is_disjoint(&plus(0, 0)));
    }

    #[test]
    fn translate_overflow_is_reported() {
        let one = CellSet::from_cells([Cell::new(i64::MAX, 0)]);
        assert!(matches!(
            one.translate(Offset::new(1, 0)),
            Err(GeometryError::Overflow { .. })
        ));
    }

    #[test]
    fn rotate180_examples() {
        let one = CellSet::from_cells([Cell::new(0, 0)]);
        assert_eq!(one.rotate180(), CellSet::from_cells([Cell::new(-1, -1)]));
        assert!(plus(0, 0).rotate180().eq_up_to_translation(&plus(0, 0)));
        let l = CellSet::from_cells([Cell::new(0, 0), Cell::new(1, 0), Cell::new(0, 1)]);
        assert!(!l.rotate180().eq_up_to_translation(&l));
        assert_eq!(l.rotate180().rotate180(), l);
    }

    #[test]
    fn set_operations() {
        let a = CellSet::rect(0, 0, 3, 2);
        let b = CellSet::rect(2, 1, 2, 2);
        assert_eq!(a.union(&b).len(), 6 + 4 - 1);
        assert_eq!(a.intersection(&b), CellSet::from_cells([Cell::new(2, 1)]));
        assert_eq!(a.difference(&b).len(), 5);
        assert!(!a.is_disjoint(&b));
        assert!(CellSet::rect(0, 0, 1, 1).is_subset(&a));
    }

    #[test]
    fn components_and_holes() {
        let two = CellSet::from_cells([Cell::new(0, 0), Cell::new(2, 0)]);
        assert_eq!(two.components().len(), 2);
        let ring = CellSet::rect(0, 0, 3, 3).difference(&CellSet::rect(1, 1, 1, 1));
        assert!(ring.is_connected());
        assert_eq!(ring.hole_count(), 1);
        assert_eq!(plus(0, 0).hole_count(), 0);
    }

    #[test]
    fn verify_partition_examples() {
        let mut tiles = TileSet::new();
        tiles.insert("u".into(), CellSet::rect(0, 0, 1, 1));
        let region = Region::boxed(2, 1).unwrap();
        let both = [Placement::new("u", 0, 0), Placement::new("u", 1, 0)];
        assert!(verify_partition(&region, &both, &tiles).unwrap().ok);
        let one = verify_partition(&region, &both[..1], &tiles).unwrap();
        assert!(!one.ok);
        assert_eq!(one.uncovered, CellSet::from_cells([Cell::new(1, 0)]));
        let bad = [Placement::new("nope", 0, 0)];
        assert_eq!(
            verify_partition(&region, &bad, &tiles),
            Err(GeometryError::UnknownTile("nope".into()))
        );
    }

    #[test]
    fn torus_wraps_placements() {
        let mut tiles = TileSet::new();
        tiles.insert("bar".into(), CellSet::rect(0, 0, 3, 1));
        let region = Region::torus(3, 1).unwrap();
        let r = verify_partition(&region, &[Placement::new("bar", 2, 5)], &tiles).unwrap();
        assert!(r.ok);
        let r = verify_partition(
            &region,
            &[Placement::new("bar", 0, 0), Placement::new("bar", 1, 0)],
            &tiles,
        )
        .unwrap();
        assert_eq!(r.overlaps.len(), 3);
    }

    #[test]
    fn boundary_words() {
        let one = CellSet::rect(0, 0, 1, 1);
        assert_eq!(boundary_word(&one).unwrap().to_string(), "RULD");
        assert_eq!(boundary_word(&CellSet::rect(0, 0, 2, 1)).unwrap().len(), 6);
        assert_eq!(boundary_word(&plus(0, 0)).unwrap().len(), 20);
        for (a, b) in [(1, 1), (3, 2), (5, 7)] {
            assert_eq!(
                boundary_word(&CellSet::rect(4, -2, a, b)).unwrap().len() as i64,
                2 * a + 2 * b
            );
        }
    }

    #[test]
    fn boundary_word_rejects_bad_input() {
        let two = CellSet::from_cells([Cell::new(0, 0), Cell::new(2, 0)]);
        assert!(matches!(boundary_word(&two), Err(GeometryError::Disconnected { .. })));
        let ring = CellSet::rect(0, 0, 3, 3).difference(&CellSet::rect(1, 1, 1, 1));
        assert!(matches!(boundary_word(&ring), Err(GeometryError::Holes { holes: 1 })));
        assert_eq!(boundary_word(&CellSet::new()), Err(GeometryError::Empty));
    }

    #[test]
    fn outline_loops_cover_holes_and_pieces() {
        let ring = CellSet::rect(0, 0, 3, 3).difference(&CellSet::rect(1, 1, 1, 1));
        let loops = outline_loops(&ring);
        assert_eq!(loops.len(), 2);
        assert_eq!(loops[0], vec![(0, 0), (3, 0), (3, 3), (0, 3)]);
        let diag = CellSet::from_cells([Cell::new(0, 0), Cell::new(1, 1)]);
        assert_eq!(outline_loops(&diag).len(), 2);
        assert_eq!(outline_loops(&plus(0, 0)).len(), 1);
    }
}
