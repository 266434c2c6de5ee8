use std::collections::BTreeSet;
use std::time::Instant;

use fourtile::geometry::{verify_partition, Cell, CellSet, Region, TileSet};
use fourtile::tilesolve::{bn_factorize, exact_tile_search, SearchLimits, SearchOutcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn normalize(cells: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let x0 = cells.iter().map(|c| c.0).min().unwrap();
    let y0 = cells.iter().map(|c| c.1).min().unwrap();
    let mut v: Vec<_> = cells.iter().map(|&(x, y)| (x - x0, y - y0)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// All fixed polyominoes with up to `max` cells.
fn fixed_polyominoes(max: usize) -> Vec<Vec<(i64, i64)>> {
    let mut all = Vec::new();
    let mut layer: BTreeSet<Vec<(i64, i64)>> = BTreeSet::from([vec![(0, 0)]]);
    for size in 1..=max {
        all.extend(layer.iter().cloned());
        if size == max {
            break;
        }
        let mut next = BTreeSet::new();
        for poly in &layer {
            for &(x, y) in poly {
                for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    let c = (x + dx, y + dy);
                    if !poly.contains(&c) {
                        let mut grown = poly.clone();
                        grown.push(c);
                        next.insert(normalize(&grown));
                    }
                }
            }
        }
        layer = next;
    }
    all
}

fn random_polyomino(rng: &mut ChaCha8Rng, size: usize) -> Vec<(i64, i64)> {
    let mut cells = vec![(0i64, 0i64)];
    while cells.len() < size {
        let (x, y) = cells[rng.gen_range(0..cells.len())];
        let c = match rng.gen_range(0..4) {
            0 => (x + 1, y),
            1 => (x - 1, y),
            2 => (x, y + 1),
            _ => (x, y - 1),
        };
        if !cells.contains(&c) {
            cells.push(c);
        }
    }
    normalize(&cells)
}

fn cell_set(cells: &[(i64, i64)]) -> CellSet {
    CellSet::from_cells(cells.iter().map(|&(x, y)| Cell::new(x, y)))
}

/// Whether some torus `w x h` with `w <= max_w`, `h <= max_h` and area a
/// multiple of the tile size is tiled; every tiling found is re-verified.
fn tiles_some_torus(tile: &CellSet, max_w: i64, max_h: i64) -> bool {
    let a = tile.len() as i64;
    let mut tori: Vec<(i64, i64)> = (1..=max_w)
        .flat_map(|w| (1..=max_h).map(move |h| (w, h)))
        .filter(|(w, h)| (w * h) % a == 0)
        .collect();
    tori.sort_by_key(|&(w, h)| (w * h, w));
    let tiles = vec![("t".to_string(), tile.clone())];
    let mut set = TileSet::new();
    set.insert("t".into(), tile.clone());
    for (w, h) in tori {
        let region = Region::torus(w, h).unwrap();
        match exact_tile_search(&tiles, &region, SearchLimits::default()).unwrap() {
            SearchOutcome::Found(ps) => {
                assert!(verify_partition(&region, &ps, &set).unwrap().ok);
                return true;
            }
            SearchOutcome::Exhausted { .. } => {}
            SearchOutcome::BudgetExceeded { .. } => panic!("budget exceeded on {w}x{h}"),
        }
    }
    false
}

struct Tally {
    checked: usize,
    narrow_misses: usize,
}

fn check(cells: &[(i64, i64)], tally: &mut Tally) {
    let tile = cell_set(cells);
    if tile.hole_count() != 0 {
        return;
    }
    tally.checked += 1;
    let bn = bn_factorize(&tile).unwrap().is_some();
    let b = tile.bounds().unwrap();
    let narrow = tiles_some_torus(&tile, 2 * b.width(), 2 * b.height());
    // a torus tiling is a periodic plane tiling
    assert!(!narrow || bn, "{cells:?}: torus tiling found but no factorization");
    if bn && !narrow {
        tally.narrow_misses += 1;
    }
    // a lattice tiling of index A has period A in both axes
    let a = tile.len() as i64;
    assert_eq!(tiles_some_torus(&tile, a, a), bn, "{cells:?}");
}

#[test]
fn agreement_on_all_small_polyominoes() {
    let start = Instant::now();
    let mut tally = Tally {
        checked: 0,
        narrow_misses: 0,
    };
    for cells in fixed_polyominoes(8) {
        check(&cells, &mut tally);
    }
    println!(
        "{} polyominoes up to 8 cells; {} tile the plane but no torus within twice the bounding box; {:.1?}",
        tally.checked,
        tally.narrow_misses,
        start.elapsed()
    );
    assert!(tally.checked > 3000);
}

#[test]
fn agreement_on_random_larger_polyominoes() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut tally = Tally {
        checked: 0,
        narrow_misses: 0,
    };
    for size in 9..=12 {
        for _ in 0..50 {
            check(&random_polyomino(&mut rng, size), &mut tally);
        }
    }
    println!(
        "{} random polyominoes of 9 to 12 cells; {} narrow-torus misses; {:.1?}",
        tally.checked,
        tally.narrow_misses,
        start.elapsed()
    );
}
