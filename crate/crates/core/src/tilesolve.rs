//! Translational tiling deciders: the boundary-word factorization test for a
//! single simply connected tile, and a bounded exact-cover search on a finite
//! box or torus.

use std::fmt;
use std::rc::Rc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::geometry::{boundary_word, BoundaryWord, Cell, CellSet, GeometryError, Placement, Region, Step};

/// Boundary word split as `A B C A' B' C'` where `X'` is `X` reversed with
/// every step complemented. `C` may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BNFactorization {
    /// Rotation of the boundary word where `A` begins.
    pub start: usize,
    pub a: Vec<Step>,
    pub b: Vec<Step>,
    pub c: Vec<Step>,
    pub a_hat: Vec<Step>,
    pub b_hat: Vec<Step>,
    pub c_hat: Vec<Step>,
}

impl BNFactorization {
    pub fn is_pseudo_square(&self) -> bool {
        self.c.is_empty()
    }

    /// The six factors joined in order.
    pub fn word(&self) -> Vec<Step> {
        [&self.a, &self.b, &self.c, &self.a_hat, &self.b_hat, &self.c_hat]
            .into_iter()
            .flatten()
            .copied()
            .collect()
    }
}

impl fmt::Display for BNFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |w: &[Step]| w.iter().map(|s| s.as_char()).collect::<String>();
        write!(
            f,
            "A={} B={} C={} A^={} B^={} C^={}",
            s(&self.a),
            s(&self.b),
            s(&self.c),
            s(&self.a_hat),
            s(&self.b_hat),
            s(&self.c_hat)
        )
    }
}

/// Whether `w[i..i+len]` (cyclic) is the hat of `w[j..j+len]` (cyclic).
fn is_hat(w: &[Step], i: usize, j: usize, len: usize) -> bool {
    let n = w.len();
    (0..len).all(|k| w[(i + k) % n] == w[(j + len - 1 - k) % n].complement())
}

/// Searches every rotation and split of `word` for a factorization.
pub fn bn_factorize_word(word: &BoundaryWord) -> Option<BNFactorization> {
    let w = word.steps();
    let n = w.len();
    if n % 2 != 0 {
        return None;
    }
    let half = n / 2;
    let take = |from: usize, len: usize| -> Vec<Step> { (0..len).map(|k| w[(from + k) % n]).collect() };
    for start in 0..n {
        for a in 1..half {
            if !is_hat(w, start + half, start, a) {
                continue;
            }
            for b in 1..=half - a {
                if !is_hat(w, start + half + a, start + a, b) {
                    continue;
                }
                let c = half - a - b;
                if is_hat(w, start + half + a + b, start + a + b, c) {
                    return Some(BNFactorization {
                        start,
                        a: take(start, a),
                        b: take(start + a, b),
                        c: take(start + a + b, c),
                        a_hat: take(start + half, a),
                        b_hat: take(start + half + a, b),
                        c_hat: take(start + half + a + b, c),
                    });
                }
            }
        }
    }
    None
}

/// A factorization of the tile's boundary word if one exists; `None` means
/// the tile cannot tile the plane by translation.
pub fn bn_factorize(tile: &CellSet) -> Result<Option<BNFactorization>, GeometryError> {
    Ok(bn_factorize_word(&boundary_word(tile)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 50_000_000,
            max_time: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("no tiles")]
    NoTiles,
    #[error("tile `{0}` is empty")]
    EmptyTile(String),
    #[error("budgets must be positive")]
    BadLimits,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<Placement>),
    /// The whole tree was explored: no tiling exists.
    Exhausted {
        nodes: u64,
    },
    /// A budget ran out first; nothing is known.
    BudgetExceeded {
        nodes: u64,
    },
}

struct Search<'a> {
    region: &'a Region,
    /// Per tile, per anchor cell: the anchor and all cells relative to it.
    shapes: Vec<Vec<(Cell, Rc<[(i64, i64)]>)>>,
    occupied: Vec<u64>,
    stack: Vec<(usize, Cell)>,
    nodes: u64,
    limits: SearchLimits,
    started: Instant,
    out_of_budget: bool,
    scratch: Vec<usize>,
}

impl Search<'_> {
    fn is_set(&self, i: usize) -> bool {
        self.occupied[i / 64] >> (i % 64) & 1 == 1
    }

    fn flip(&mut self, i: usize) {
        self.occupied[i / 64] ^= 1 << (i % 64);
    }

    fn first_free(&self, from: usize) -> Option<usize> {
        let area = self.region.area() as usize;
        let mut w = from / 64;
        let mut word = !self.occupied.get(w)? & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                let i = w * 64 + word.trailing_zeros() as usize;
                return (i < area).then_some(i);
            }
            w += 1;
            word = !*self.occupied.get(w)?;
        }
    }

    /// Tries to mark the cells of `shape` placed so its anchor is on `target`.
    fn try_place(&mut self, shape: &[(i64, i64)], target: Cell) -> bool {
        self.scratch.clear();
        for &(dx, dy) in shape {
            let i = match self.region.index_of(Cell::new(target.x + dx, target.y + dy)) {
                Some(i) if !self.is_set(i) => i,
                _ => {
                    for k in 0..self.scratch.len() {
                        let j = self.scratch[k];
                        self.flip(j);
                    }
                    return false;
                }
            };
            // marking as we go also catches a tile wrapping onto itself
            self.flip(i);
            self.scratch.push(i);
        }
        true
    }

    fn unplace(&mut self, shape: &[(i64, i64)], target: Cell) {
        for &(dx, dy) in shape {
            let i = self
                .region
                .index_of(Cell::new(target.x + dx, target.y + dy))
                .expect("placed");
            self.flip(i);
        }
    }

    fn budget_hit(&mut self) -> bool {
        if self.nodes >= self.limits.max_nodes {
            self.out_of_budget = true;
        } else if let Some(t) = self.limits.max_time {
            if self.nodes % 4096 == 0 && self.started.elapsed() > t {
                self.out_of_budget = true;
            }
        }
        self.out_of_budget
    }

    fn run(&mut self, from: usize) -> bool {
        let Some(i) = self.first_free(from) else {
            return true;
        };
        let target = self.region.cell_at(i);
        for tile in 0..self.shapes.len() {
            for anchor in 0..self.shapes[tile].len() {
                self.nodes += 1;
                if self.budget_hit() {
                    return false;
                }
                let (at, shape) = self.shapes[tile][anchor].clone();
                if self.try_place(&shape, target) {
                    self.stack.push((tile, Cell::new(target.x - at.x, target.y - at.y)));
                    if self.run(i + 1) {
                        return true;
                    }
                    self.stack.pop();
                    self.unplace(&shape, target);
                }
                if self.out_of_budget {
                    return false;
                }
            }
        }
        false
    }
}

/// Exact cover of `region` by translated copies of the named tiles.
///
/// Branches on the first free cell in row-major order, then on tiles in the
/// given order, then on which tile cell covers it (in `(y, x)` order). The
/// first solution found is returned, so results are deterministic.
pub fn exact_tile_search(
    tiles: &[(String, CellSet)],
    region: &Region,
    limits: SearchLimits,
) -> Result<SearchOutcome, SearchError> {
    if tiles.is_empty() {
        return Err(SearchError::NoTiles);
    }
    if limits.max_nodes == 0 || limits.max_time.is_some_and(|t| t.is_zero()) {
        return Err(SearchError::BadLimits);
    }
    if let Some((name, _)) = tiles.iter().find(|(_, t)| t.is_empty()) {
        return Err(SearchError::EmptyTile(name.clone()));
    }
    let area = region.area() as usize;
    let g = tiles.iter().fold(0usize, |g, (_, t)| gcd(g, t.len()));
    if area % g != 0 {
        return Ok(SearchOutcome::Exhausted { nodes: 0 });
    }
    let shapes = tiles
        .iter()
        .map(|(_, t)| {
            t.iter()
                .map(|a| (*a, t.iter().map(|c| (c.x - a.x, c.y - a.y)).collect()))
                .collect()
        })
        .collect();
    let mut search = Search {
        region,
        shapes,
        occupied: vec![0; area.div_ceil(64)],
        stack: Vec::new(),
        nodes: 0,
        limits,
        started: Instant::now(),
        out_of_budget: false,
        scratch: Vec::new(),
    };
    if search.run(0) {
        let placements = search
            .stack
            .iter()
            .map(|&(tile, at)| Placement::new(tiles[tile].0.clone(), at.x, at.y))
            .collect();
        return Ok(SearchOutcome::Found(placements));
    }
    if search.out_of_budget {
        Ok(SearchOutcome::BudgetExceeded { nodes: search.nodes })
    } else {
        Ok(SearchOutcome::Exhausted { nodes: search.nodes })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
