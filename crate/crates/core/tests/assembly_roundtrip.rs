use fourtile::assembly::{assemble, choose_slots, decode, AssemblyError, AssemblyPlan, BlockUse, Lattice};
use fourtile::geometry::verify_partition;
use fourtile::reduction::{reduce, slot_owner, ReductionOutput};
use fourtile::wang::{check_tiling, solve_torus, DiamondTiling, WangSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_grid(rng: &mut ChaCha8Rng, rows: usize, periods: usize, n: usize) -> DiamondTiling {
    DiamondTiling::new(
        (0..rows)
            .map(|_| (0..periods).map(|_| rng.gen_range(0..n)).collect())
            .collect(),
    )
    .unwrap()
}

/// Random small sets paired with a valid tiling, found by rejection sampling.
fn valid_cases(seed: u64, count: usize) -> Vec<(WangSet, DiamondTiling)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    while cases.len() < count {
        let n = rng.gen_range(1..=2);
        let tiles: Vec<_> = (0..n)
            .map(|_| {
                (
                    rng.gen_range(0..2),
                    rng.gen_range(0..2),
                    rng.gen_range(0..2),
                    rng.gen_range(0..2),
                )
            })
            .collect();
        let Ok(ws) = WangSet::from_indices(2, &tiles) else {
            continue;
        };
        let periods = rng.gen_range(1..=3);
        for _ in 0..50 {
            let t = random_grid(&mut rng, 2, periods, n);
            if check_tiling(&ws, &t).unwrap() {
                cases.push((ws, t));
                break;
            }
        }
    }
    cases
}

/// Encoding blocks of each encoder that are not covered by a locator both
/// above and below.
fn uncovered_encoding_blocks(plan: &AssemblyPlan, out: &ReductionOutput, y: usize, p: usize) -> Vec<usize> {
    let cols = plan.lattice.block_cols();
    let mut found = Vec::new();
    for col in 0..cols {
        if let Some(BlockUse::Encoder { y: ey, p: ep, index }) = plan.block(2 * y + 1, col) {
            if (ey, ep) != (y, p) || out.encoder_specs[index].north().and_then(|l| l.mid).is_none() {
                continue;
            }
            let locator = |row| matches!(plan.block(row, col), Some(BlockUse::Locator { .. }));
            if !(locator(2 * y) && locator(2 * y + 2)) {
                found.push(index);
            }
        }
    }
    found.sort_unstable();
    found
}

fn check_roundtrip(ws: &WangSet, tiling: &DiamondTiling) -> AssemblyPlan {
    let out = reduce(ws).unwrap();
    let plan = assemble(&out, tiling).unwrap();
    let region = plan.region();
    let report = verify_partition(&region, &plan.placements(), &out.tile_set()).unwrap();
    assert!(report.ok, "{ws:?} {tiling:?}");
    assert_eq!(report.covered_area, region.area());
    assert_eq!(plan.census.linkers, plan.lattice.expected_linkers());
    assert_eq!(
        decode(&region, &plan.placements(), &out).unwrap(),
        tiling.repeat_rows(plan.repeat)
    );

    let p = out.params;
    for y in 0..plan.lattice.rows {
        for q in 0..plan.lattice.periods {
            let k = plan.slots[y][q];
            let first = (k - 1) * p.slot_len() + 1;
            let right = first + p.right_segment_start();
            let mut expected: Vec<usize> = (first..first + p.t).chain(right..right + p.t).collect();
            expected.sort_unstable();
            assert_eq!(uncovered_encoding_blocks(&plan, &out, y, q), expected, "site ({y},{q})");
            assert_eq!(slot_owner(k, ws.n()).unwrap().0, plan.tiling.get(y, q));
        }
    }
    plan
}

#[test]
fn randomized_roundtrips() {
    let cases = valid_cases(0x5eed, 24);
    for (ws, t) in &cases {
        check_roundtrip(ws, t);
    }
    let mixed = cases.iter().filter(|(ws, _)| ws.n() == 2).count();
    assert!(mixed >= 5, "only {mixed} two-tile cases");
}

#[test]
fn mismatch_always_overlaps() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tried = 0;
    while tried < 8 {
        let tiles: Vec<_> = (0..2)
            .map(|_| {
                (
                    rng.gen_range(0..2),
                    rng.gen_range(0..2),
                    rng.gen_range(0..2),
                    rng.gen_range(0..2),
                )
            })
            .collect();
        let Ok(ws) = WangSet::from_indices(2, &tiles) else {
            continue;
        };
        let periods = rng.gen_range(1..=2);
        let t = random_grid(&mut rng, 2, periods, 2);
        if check_tiling(&ws, &t).unwrap() {
            continue;
        }
        tried += 1;
        let out = reduce(&ws).unwrap();
        match assemble(&out, &t) {
            Err(AssemblyError::Overlap { .. }) => {}
            other => panic!("{ws:?} {t:?}: {:?}", other.map(|p| p.census)),
        }
    }
}

#[test]
fn four_rows_and_two_periods() {
    // the two tiles must alternate row by row
    let ws = WangSet::from_indices(2, &[(0, 0, 1, 1), (1, 1, 0, 0)]).unwrap();
    let t = solve_torus(&ws, 4, 2).unwrap().unwrap();
    assert_eq!(t.grid(), &[vec![0, 0], vec![1, 1], vec![0, 0], vec![1, 1]]);
    let plan = check_roundtrip(&ws, &t);
    assert_eq!(plan.repeat, Lattice::repeat_factor(4, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn slot_choice_separates_neighbors(seed in any::<u64>(), n in 1usize..=4, half in 1usize..=3, periods in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = 2 * half;
        let t = random_grid(&mut rng, rows, periods, n);
        let slots = choose_slots(&t, n).unwrap();
        for y in 0..rows {
            for p in 0..periods {
                let k = slots[y][p];
                prop_assert_eq!(slot_owner(k, n).unwrap().0, t.get(y, p));
                let down = (y + rows - 1) % rows;
                for (ny, np) in [(down, p), (down, (p + 1) % periods)] {
                    if (ny, np) != (y, p) {
                        prop_assert_ne!(slots[ny][np], k);
                    }
                }
            }
        }
    }
}
