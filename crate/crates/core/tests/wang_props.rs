use fourtile::wang::{
    check_tiling, count_torus, format_tiling, format_wang_set, parse_tiling, parse_wang_set, solve_torus,
    DiamondTiling, ParseOptions, WangSet,
};
use proptest::prelude::*;

fn wang_set() -> impl Strategy<Value = WangSet> {
    (2usize..=4).prop_flat_map(|m| {
        proptest::collection::vec((0..m, 0..m, 0..m, 0..m), 1..=4)
            .prop_map(move |tiles| WangSet::from_indices(m, &tiles).unwrap())
    })
}

fn brute_count(ws: &WangSet, rows: usize, periods: usize) -> u64 {
    let cells = rows * periods;
    let n = ws.n();
    let mut count = 0;
    for code in 0..n.pow(cells as u32) {
        let mut c = code;
        let grid = (0..rows)
            .map(|_| {
                (0..periods)
                    .map(|_| {
                        let i = c % n;
                        c /= n;
                        i
                    })
                    .collect()
            })
            .collect();
        if check_tiling(ws, &DiamondTiling::new(grid).unwrap()).unwrap() {
            count += 1;
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_text_roundtrip(ws in wang_set()) {
        let text = format_wang_set(&ws);
        prop_assert_eq!(parse_wang_set(&text, ParseOptions::default()).unwrap(), ws);
    }

    #[test]
    fn solution_checks_and_roundtrips(ws in wang_set(), half in 1usize..=2, periods in 1usize..=3) {
        let rows = 2 * half;
        if let Some(t) = solve_torus(&ws, rows, periods).unwrap() {
            prop_assert!(check_tiling(&ws, &t).unwrap());
            prop_assert_eq!(parse_tiling(&format_tiling(&ws, &t), &ws).unwrap(), t.clone());
            for dy in 0..rows {
                for dp in 0..periods {
                    prop_assert!(check_tiling(&ws, &t.shifted(dy, dp)).unwrap());
                }
            }
            prop_assert!(check_tiling(&ws, &t.repeat_rows(2)).unwrap());
        } else {
            prop_assert_eq!(count_torus(&ws, rows, periods).unwrap(), 0);
        }
    }

    #[test]
    fn count_matches_enumeration(ws in wang_set(), periods in 1usize..=2) {
        prop_assert_eq!(count_torus(&ws, 2, periods).unwrap(), brute_count(&ws, 2, periods));
    }

    #[test]
    fn color_renaming_changes_nothing(ws in wang_set(), seed in any::<u64>(), periods in 1usize..=3) {
        let m = ws.m();
        let mut perm: Vec<usize> = (0..m).collect();
        // rotate by a seed-dependent amount, then swap a seed-dependent pair
        perm.rotate_left((seed % m as u64) as usize);
        perm.swap(0, ((seed >> 8) % m as u64) as usize);
        let renamed = ws.permute_colors(&perm);
        prop_assert_eq!(count_torus(&ws, 2, periods).unwrap(), count_torus(&renamed, 2, periods).unwrap());
        if let Some(t) = solve_torus(&ws, 2, periods).unwrap() {
            prop_assert!(check_tiling(&renamed, &t).unwrap());
        }
    }
}

#[test]
fn single_color_cycle() {
    // every tile fits every neighbor
    let ws = WangSet::from_indices(2, &[(0, 0, 0, 0), (1, 1, 1, 1)]).unwrap();
    assert_eq!(count_torus(&ws, 2, 2).unwrap(), 2);
    let mixed = DiamondTiling::new(vec![vec![0, 1], vec![0, 1]]).unwrap();
    assert!(!check_tiling(&ws, &mixed).unwrap());
}

#[test]
fn rejects_odd_rows() {
    assert!(DiamondTiling::uniform(3, 1, 0).is_err());
}
