//! Cell-level feature stamps that building blocks are composed from.
//!
//! Coordinates are block-local: the base block is `[0, 84) x [0, 14)`, made of
//! two rows of twelve 7x7 level-2 squares. Level-2 column `c` spans
//! `[7c, 7c+7)`. Columns 0-4 form the left segment, 5-6 the middle segment
//! and 7-11 the right segment.
//!
//! Plus-shaped bumps and dents sit on level-2 columns of the outer segments.
//! The middle segment carries the L-shaped handle (always present on a
//! labeled side) together with the two plus attachment points `N` and `F`.

use std::fmt;

use thiserror::Error;

use crate::geometry::{Cell, CellSet, Offset};

pub const BLOCK_WIDTH: i64 = 84;
pub const BLOCK_HEIGHT: i64 = 14;
pub const LEVEL2: i64 = 7;
pub const COLUMNS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StampError {
    #[error("middle-segment stamp {0:?} takes no column")]
    UnexpectedColumn(StampKind),
    #[error("plus stamp {0:?} needs a column")]
    MissingColumn(StampKind),
    #[error("column {0} is not in the left or right segment")]
    BadColumn(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    North,
    South,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::North => Side::South,
            Side::South => Side::North,
        }
    }
}

/// Named level-2 positions in an outer segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    /// links adjacent encoding blocks
    A,
    /// marks a color-encoding block
    C,
    /// selects from the left
    L,
    /// marks the ends of an encoded edge
    M,
    /// selects from the right
    R,
}

impl Position {
    pub const ALL: [Position; 5] = [Position::A, Position::C, Position::L, Position::M, Position::R];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        match self {
            Position::A => 'A',
            Position::C => 'C',
            Position::L => 'L',
            Position::M => 'M',
            Position::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Position> {
        Position::ALL.into_iter().find(|p| p.as_char() == c)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Attachment point of a plus bump on a bumped handle: near or far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mid {
    N,
    F,
}

impl Mid {
    pub fn as_char(self) -> char {
        match self {
            Mid::N => 'N',
            Mid::F => 'F',
        }
    }

    pub fn from_char(c: char) -> Option<Mid> {
        match c {
            'N' => Some(Mid::N),
            'F' => Some(Mid::F),
            _ => None,
        }
    }
}

impl fmt::Display for Mid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Bump,
    Dent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StampKind {
    PlusBump,
    PlusDent,
    HandleBump,
    /// The full handle-dent void, including both interior plus holes.
    HandleDent,
    NearBump,
    FarBump,
}

/// The 9-cell plus: a vertical bar `x = a, b <= y < b+5` crossed by the
/// horizontal bar `a-2 <= x < a+3, y = b+2`.
pub fn plus(a: i64, b: i64) -> CellSet {
    let mut cells = Vec::with_capacity(9);
    for y in b..b + 5 {
        if y == b + 2 {
            cells.extend((a - 2..a + 3).map(|x| Cell::new(x, y)));
        } else {
            cells.push(Cell::new(a, y));
        }
    }
    CellSet::from_sorted(cells)
}

/// Anchor `(a, b)` of a plus cell set, if the set is exactly a plus.
pub fn plus_anchor(cs: &CellSet) -> Option<(i64, i64)> {
    let first = cs.first()?;
    let (a, b) = (first.x, first.y);
    (*cs == plus(a, b)).then_some((a, b))
}

pub fn tiny_filler() -> CellSet {
    plus(0, 0)
}

/// Interior hole shared by both handle-dent voids, claimed by a far bump from
/// below or a near bump from above.
pub fn hole_h1() -> CellSet {
    plus(41, 7)
}

/// Interior hole shared by both handle-dent voids, claimed by a near bump
/// from below or a far bump from above.
pub fn hole_h2() -> CellSet {
    plus(42, 2)
}

pub const H1_ANCHOR: (i64, i64) = (41, 7);
pub const H2_ANCHOR: (i64, i64) = (42, 2);

/// Level-2 column carrying a plus feature.
///
/// Bumps listed in a label sit on the segment where the label's reading
/// starts (north: left, read left to right; south: right, read right to
/// left). Dents sit on the opposite segment with the same letter order.
pub fn position_column(side: Side, pos: Position, role: Role) -> usize {
    let i = pos.index();
    match (side, role) {
        (Side::North, Role::Bump) | (Side::South, Role::Dent) => i,
        (Side::North, Role::Dent) | (Side::South, Role::Bump) => COLUMNS - 1 - i,
    }
}

fn column_origin(column: usize) -> i64 {
    LEVEL2 * column as i64 + 3
}

fn north_handle_bump() -> CellSet {
    let mut cells: Vec<Cell> = (14..21).map(|y| Cell::new(38, y)).collect();
    cells.extend((39..42).map(|x| Cell::new(x, 20)));
    CellSet::from_cells(cells)
}

fn south_handle_bump() -> CellSet {
    let mut cells: Vec<Cell> = (-7..0).map(|y| Cell::new(45, y)).collect();
    cells.extend((42..45).map(|x| Cell::new(x, -7)));
    CellSet::from_cells(cells)
}

fn mid_bump(side: Side, mid: Mid) -> CellSet {
    match (side, mid) {
        (Side::North, Mid::N) => plus(42, 16),
        (Side::North, Mid::F) => plus(41, 21),
        (Side::South, Mid::N) => plus(41, -7),
        (Side::South, Mid::F) => plus(42, -12),
    }
}

/// Handle bump together with both possible attachments.
fn handle_family(side: Side) -> CellSet {
    handle_bump(side)
        .union(&mid_bump(side, Mid::N))
        .union(&mid_bump(side, Mid::F))
}

pub fn handle_bump(side: Side) -> CellSet {
    match side {
        Side::North => north_handle_bump(),
        Side::South => south_handle_bump(),
    }
}

/// Void carved on `side` to receive the opposite side's handle family of the
/// neighboring block.
pub fn handle_dent_void(side: Side) -> CellSet {
    let dy = match side {
        Side::North => BLOCK_HEIGHT,
        Side::South => -BLOCK_HEIGHT,
    };
    handle_family(side.opposite())
        .translate(Offset::new(0, dy))
        .expect("small constants")
}

/// The near or far plus bump on a bumped handle.
pub fn attachment(side: Side, mid: Mid) -> CellSet {
    mid_bump(side, mid)
}

pub fn plus_bump(side: Side, column: usize) -> CellSet {
    let b = match side {
        Side::North => BLOCK_HEIGHT,
        Side::South => -5,
    };
    plus(column_origin(column), b)
}

pub fn plus_dent(side: Side, column: usize) -> CellSet {
    let b = match side {
        Side::North => BLOCK_HEIGHT - 5,
        Side::South => 0,
    };
    plus(column_origin(column), b)
}

/// A single stamp from the table. Plus stamps need an outer-segment column;
/// middle-segment stamps take none.
pub fn stamp(kind: StampKind, side: Side, column: Option<usize>) -> Result<CellSet, StampError> {
    match kind {
        StampKind::PlusBump | StampKind::PlusDent => {
            let c = column.ok_or(StampError::MissingColumn(kind))?;
            if c >= COLUMNS || c == 5 || c == 6 {
                return Err(StampError::BadColumn(c));
            }
            Ok(if kind == StampKind::PlusBump {
                plus_bump(side, c)
            } else {
                plus_dent(side, c)
            })
        }
        _ if column.is_some() => Err(StampError::UnexpectedColumn(kind)),
        StampKind::HandleBump => Ok(handle_bump(side)),
        StampKind::HandleDent => Ok(handle_dent_void(side)),
        StampKind::NearBump => Ok(mid_bump(side, Mid::N)),
        StampKind::FarBump => Ok(mid_bump(side, Mid::F)),
    }
}

/// The base `84 x 14` rectangle.
pub fn base_block() -> CellSet {
    CellSet::rect(0, 0, BLOCK_WIDTH, BLOCK_HEIGHT)
}

/// Half-turn about the block center: `(x, y) -> (83 - x, 13 - y)`.
pub fn rotate_about_block_center(cs: &CellSet) -> CellSet {
    cs.rotate180()
        .translate(Offset::new(BLOCK_WIDTH, BLOCK_HEIGHT))
        .expect("small constants")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(v: &[(i64, i64)]) -> CellSet {
        v.iter().map(|&(x, y)| Cell::new(x, y)).collect()
    }

    #[test]
    fn plus_shape() {
        let p = plus(0, 0);
        assert_eq!(p.len(), 9);
        assert!(p.contains(Cell::new(-2, 2)) && p.contains(Cell::new(2, 2)));
        assert!(p.contains(Cell::new(0, 4)) && !p.contains(Cell::new(1, 1)));
        assert_eq!(plus_anchor(&plus(5, -3)), Some((5, -3)));
        assert_eq!(plus_anchor(&CellSet::rect(0, 0, 3, 3)), None);
    }

    #[test]
    fn position_columns() {
        assert_eq!(position_column(Side::North, Position::A, Role::Bump), 0);
        assert_eq!(position_column(Side::South, Position::A, Role::Bump), 11);
        assert_eq!(position_column(Side::North, Position::C, Role::Dent), 10);
        assert_eq!(position_column(Side::South, Position::R, Role::Dent), 4);
        assert_eq!(position_column(Side::South, Position::R, Role::Bump), 7);
    }

    #[test]
    fn stamp_examples() {
        assert_eq!(stamp(StampKind::PlusBump, Side::North, Some(0)).unwrap(), plus(3, 14));
        assert_eq!(stamp(StampKind::PlusDent, Side::South, Some(1)).unwrap(), plus(10, 0));
        let handle = stamp(StampKind::HandleBump, Side::North, None).unwrap();
        assert_eq!(handle.len(), 10);
        assert!(handle.contains(Cell::new(38, 14)) && handle.contains(Cell::new(41, 20)));
        assert_eq!(
            stamp(StampKind::HandleBump, Side::North, Some(5)),
            Err(StampError::UnexpectedColumn(StampKind::HandleBump))
        );
        assert_eq!(
            stamp(StampKind::PlusBump, Side::North, Some(5)),
            Err(StampError::BadColumn(5))
        );
        assert!(stamp(StampKind::PlusDent, Side::North, None).is_err());
    }

    #[test]
    fn handle_dent_voids_match_table() {
        let mut north: Vec<(i64, i64)> = (7..14).map(|y| (45, y)).collect();
        north.extend((42..46).map(|x| (x, 7)));
        let north = cells(&north).union(&plus(41, 7)).union(&plus(42, 2));
        assert_eq!(handle_dent_void(Side::North), north);
        let mut south: Vec<(i64, i64)> = (0..7).map(|y| (38, y)).collect();
        south.extend((38..42).map(|x| (x, 6)));
        let south = cells(&south).union(&plus(42, 2)).union(&plus(41, 7));
        assert_eq!(handle_dent_void(Side::South), south);
        assert_eq!(north.len(), 28);
        assert_eq!(north.union(&south).len(), 38);
    }

    #[test]
    fn bumps_outside_dents_inside_base() {
        let base = base_block();
        for side in [Side::North, Side::South] {
            for c in (0..5).chain(7..12) {
                assert!(plus_bump(side, c).is_disjoint(&base));
                assert!(plus_dent(side, c).is_subset(&base));
            }
            assert!(handle_family(side).is_disjoint(&base));
            assert!(handle_dent_void(side).is_subset(&base));
            let band = CellSet::rect(35, -12, 14, 38);
            assert!(handle_family(side).is_subset(&band));
            assert!(handle_dent_void(side).is_subset(&band));
        }
    }

    #[test]
    fn half_turn_maps_north_family_to_south() {
        for c in 0..COLUMNS {
            if c == 5 || c == 6 {
                continue;
            }
            assert_eq!(
                rotate_about_block_center(&plus_bump(Side::North, c)),
                plus_bump(Side::South, COLUMNS - 1 - c)
            );
            assert_eq!(
                rotate_about_block_center(&plus_dent(Side::North, c)),
                plus_dent(Side::South, COLUMNS - 1 - c)
            );
        }
        for pos in Position::ALL {
            for role in [Role::Bump, Role::Dent] {
                let n = position_column(Side::North, pos, role);
                let s = position_column(Side::South, pos, role);
                assert_eq!(n + s, COLUMNS - 1);
            }
        }
        assert_eq!(
            rotate_about_block_center(&handle_bump(Side::North)),
            handle_bump(Side::South)
        );
        for mid in [Mid::N, Mid::F] {
            assert_eq!(
                rotate_about_block_center(&attachment(Side::North, mid)),
                attachment(Side::South, mid)
            );
        }
        assert_eq!(
            rotate_about_block_center(&handle_dent_void(Side::North)),
            handle_dent_void(Side::South)
        );
    }

    #[test]
    fn stacked_complementarity() {
        let up = Offset::new(0, BLOCK_HEIGHT);
        for c in (0..5).chain(7..12) {
            assert_eq!(
                plus_bump(Side::North, c),
                plus_dent(Side::South, c).translate(up).unwrap()
            );
            assert_eq!(
                plus_bump(Side::South, c).translate(up).unwrap(),
                plus_dent(Side::North, c)
            );
        }
        assert_eq!(
            handle_family(Side::North),
            handle_dent_void(Side::South).translate(up).unwrap()
        );
        assert_eq!(
            handle_family(Side::South).translate(up).unwrap(),
            handle_dent_void(Side::North)
        );
    }

    #[test]
    fn hole_claim_table() {
        // X at (0,0), Y at (0,14), Z at (0,28); holes are Y-local.
        let to_y = |cs: CellSet, dy: i64| cs.translate(Offset::new(0, dy)).unwrap();
        assert_eq!(to_y(attachment(Side::South, Mid::N), 14), hole_h1());
        assert_eq!(to_y(attachment(Side::North, Mid::F), -14), hole_h1());
        assert_eq!(to_y(attachment(Side::South, Mid::F), 14), hole_h2());
        assert_eq!(to_y(attachment(Side::North, Mid::N), -14), hole_h2());
        assert!(hole_h1().is_disjoint(&hole_h2()));
        assert_eq!(hole_h1().union(&hole_h2()).components().len(), 2);
    }
}
