//! Side labels, building-block synthesis and stacking checks.
//!
//! A side label `{bumps|mid|dents}` fully determines one side's geometry:
//! plus bumps on the side's reading-start segment, at most one plus bump on
//! the handle (`N` or `F`), and plus dents on the opposite segment. A labeled
//! side always carries the handle bump and the handle-dent void; an absent
//! side is a straight edge.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geometry::{Cell, CellSet, Offset};
use crate::stamps::{self, Mid, Position, Role, Side, BLOCK_HEIGHT, BLOCK_WIDTH};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("malformed label `{0}`: expected `{{bumps|mid|dents}}`")]
    Malformed(String),
    #[error("unknown letter `{letter}` in label `{label}`")]
    UnknownLetter { letter: String, label: String },
    #[error("letter `{letter}` repeated in label `{label}`")]
    Repeated { letter: char, label: String },
    #[error("more than one handle attachment in label `{0}`")]
    TooManyMids(String),
    #[error("a block needs at least one labeled side")]
    NoSides,
}

/// Subset of `{A, C, L, M, R}` as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PositionSet(u8);

impl PositionSet {
    pub const EMPTY: PositionSet = PositionSet(0);

    pub fn from_bits(bits: u8) -> Self {
        PositionSet(bits & 0b1_1111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn insert(&mut self, p: Position) -> bool {
        let had = self.contains(p);
        self.0 |= 1 << p.index();
        !had
    }

    pub fn contains(self, p: Position) -> bool {
        self.0 & (1 << p.index()) != 0
    }

    pub fn is_subset(self, other: PositionSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Position> {
        Position::ALL.into_iter().filter(move |&p| self.contains(p))
    }
}

impl<const N: usize> From<[Position; N]> for PositionSet {
    fn from(ps: [Position; N]) -> Self {
        let mut s = PositionSet::EMPTY;
        for p in ps {
            s.insert(p);
        }
        s
    }
}

/// Label of one block side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SideLabel {
    pub bumps: PositionSet,
    pub mid: Option<Mid>,
    pub dents: PositionSet,
}

impl SideLabel {
    /// The blank label `{||}`.
    pub const BLANK: SideLabel = SideLabel {
        bumps: PositionSet::EMPTY,
        mid: None,
        dents: PositionSet::EMPTY,
    };

    pub fn new(bumps: impl Into<PositionSet>, mid: Option<Mid>, dents: impl Into<PositionSet>) -> Self {
        SideLabel {
            bumps: bumps.into(),
            mid,
            dents: dents.into(),
        }
    }

    /// Parses the `{A,C|N|M}` notation. Whitespace around letters is ignored.
    pub fn parse(text: &str) -> Result<SideLabel, LabelError> {
        let malformed = || LabelError::Malformed(text.to_string());
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(malformed)?;
        let parts: Vec<&str> = inner.split('|').collect();
        if parts.len() != 3 {
            return Err(malformed());
        }
        let letters = |part: &str| -> Vec<String> {
            part.split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        };
        let positions = |part: &str| -> Result<PositionSet, LabelError> {
            let mut set = PositionSet::EMPTY;
            for l in letters(part) {
                let p = single_char(&l)
                    .and_then(Position::from_char)
                    .ok_or_else(|| LabelError::UnknownLetter {
                        letter: l.clone(),
                        label: text.to_string(),
                    })?;
                if !set.insert(p) {
                    return Err(LabelError::Repeated {
                        letter: p.as_char(),
                        label: text.to_string(),
                    });
                }
            }
            Ok(set)
        };
        let bumps = positions(parts[0])?;
        let dents = positions(parts[2])?;
        let mids = letters(parts[1]);
        let mid = match mids.as_slice() {
            [] => None,
            [one] => Some(
                single_char(one)
                    .and_then(Mid::from_char)
                    .ok_or_else(|| LabelError::UnknownLetter {
                        letter: one.clone(),
                        label: text.to_string(),
                    })?,
            ),
            _ => return Err(LabelError::TooManyMids(text.to_string())),
        };
        Ok(SideLabel { bumps, mid, dents })
    }
}

fn single_char(s: &str) -> Option<char> {
    let mut it = s.chars();
    let c = it.next()?;
    it.next().is_none().then_some(c)
}

impl fmt::Display for SideLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: PositionSet| s.iter().map(|p| p.as_char().to_string()).collect::<Vec<_>>().join(",");
        let mid = self.mid.map(|m| m.as_char().to_string()).unwrap_or_default();
        write!(f, "{{{}|{}|{}}}", join(self.bumps), mid, join(self.dents))
    }
}

impl FromStr for SideLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SideLabel::parse(s)
    }
}

pub fn parse_label(text: &str) -> Result<SideLabel, LabelError> {
    SideLabel::parse(text)
}

pub fn format_label(label: &SideLabel) -> String {
    label.to_string()
}

/// A building block: two optional side labels, at least one present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSpec {
    north: Option<SideLabel>,
    south: Option<SideLabel>,
}

impl BlockSpec {
    pub fn new(north: Option<SideLabel>, south: Option<SideLabel>) -> Result<Self, LabelError> {
        if north.is_none() && south.is_none() {
            return Err(LabelError::NoSides);
        }
        Ok(BlockSpec { north, south })
    }

    /// Same label on both sides.
    pub fn both(label: SideLabel) -> Self {
        BlockSpec {
            north: Some(label),
            south: Some(label),
        }
    }

    pub fn sides(north: SideLabel, south: SideLabel) -> Self {
        BlockSpec {
            north: Some(north),
            south: Some(south),
        }
    }

    pub fn north(&self) -> Option<SideLabel> {
        self.north
    }

    pub fn south(&self) -> Option<SideLabel> {
        self.south
    }

    pub fn side(&self, side: Side) -> Option<SideLabel> {
        match side {
            Side::North => self.north,
            Side::South => self.south,
        }
    }

    /// North and south swapped; the half-turn image of the block.
    pub fn swapped(&self) -> BlockSpec {
        BlockSpec {
            north: self.south,
            south: self.north,
        }
    }

    /// Cell count predicted from the label contents.
    pub fn expected_area(&self) -> usize {
        let mut area = (BLOCK_WIDTH * BLOCK_HEIGHT) as usize;
        let mut labeled = 0;
        for l in [self.north, self.south].into_iter().flatten() {
            labeled += 1;
            area += 9 * (l.bumps.len() + usize::from(l.mid.is_some()));
            area -= 9 * l.dents.len();
        }
        // handle bump 10 cells each, voids 28 per side sharing two plus holes
        match labeled {
            1 => area + 10 - 28,
            _ => area + 20 - 38,
        }
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |l: Option<SideLabel>| l.map(|l| l.to_string()).unwrap_or_else(|| "-".into());
        write!(f, "{} {}", side(self.north), side(self.south))
    }
}

/// Cells removed from the base rectangle on one side.
pub fn side_void(side: Side, label: &SideLabel) -> CellSet {
    let mut void = stamps::handle_dent_void(side);
    for p in label.dents.iter() {
        void = void.union(&stamps::plus_dent(side, stamps::position_column(side, p, Role::Dent)));
    }
    void
}

/// Cells added outside the base rectangle on one side.
pub fn side_bumps(side: Side, label: &SideLabel) -> CellSet {
    let mut bumps = stamps::handle_bump(side);
    for p in label.bumps.iter() {
        bumps = bumps.union(&stamps::plus_bump(side, stamps::position_column(side, p, Role::Bump)));
    }
    if let Some(m) = label.mid {
        bumps = bumps.union(&stamps::attachment(side, m));
    }
    bumps
}

/// Cell set of one building block in block-local coordinates.
pub fn build_block(spec: &BlockSpec) -> CellSet {
    let mut voids = CellSet::new();
    let mut bumps = CellSet::new();
    for side in [Side::North, Side::South] {
        if let Some(label) = spec.side(side) {
            voids = voids.union(&side_void(side, &label));
            bumps = bumps.union(&side_bumps(side, &label));
        }
    }
    stamps::base_block().difference(&voids).union(&bumps)
}

/// A row of blocks fused left to right; block `j` sits at `x = 84 j`.
///
/// Features never leave their block's column span, so the row is assembled
/// scanline by scanline without a global sort.
pub fn build_row(specs: &[BlockSpec]) -> CellSet {
    let mut cache: std::collections::HashMap<BlockSpec, Vec<(i64, std::ops::Range<usize>)>> = Default::default();
    let mut built: Vec<CellSet> = Vec::new();
    let mut index_of: std::collections::HashMap<BlockSpec, usize> = Default::default();
    for spec in specs {
        if !index_of.contains_key(spec) {
            let cs = build_block(spec);
            let mut rows = Vec::new();
            let cells = cs.as_slice();
            let mut start = 0;
            while start < cells.len() {
                let y = cells[start].y;
                let mut end = start;
                while end < cells.len() && cells[end].y == y {
                    end += 1;
                }
                rows.push((y, start..end));
                start = end;
            }
            index_of.insert(*spec, built.len());
            cache.insert(*spec, rows);
            built.push(cs);
        }
    }
    let Some((y_min, y_max)) = cache
        .values()
        .flat_map(|rows| rows.iter().map(|r| r.0))
        .fold(None, |acc: Option<(i64, i64)>, y| {
            Some(acc.map_or((y, y), |(lo, hi)| (lo.min(y), hi.max(y))))
        })
    else {
        return CellSet::new();
    };
    let order: Vec<(&Vec<(i64, std::ops::Range<usize>)>, &CellSet)> =
        specs.iter().map(|s| (&cache[s], &built[index_of[s]])).collect();
    let mut cursors = vec![0usize; specs.len()];
    let mut out = Vec::new();
    for y in y_min..=y_max {
        for (j, (rows, cs)) in order.iter().enumerate() {
            let k = cursors[j];
            if k < rows.len() && rows[k].0 == y {
                let dx = BLOCK_WIDTH * j as i64;
                out.extend(
                    cs.as_slice()[rows[k].1.clone()]
                        .iter()
                        .map(|c| Cell::new(c.x + dx, c.y)),
                );
                cursors[j] += 1;
            }
        }
    }
    CellSet::from_sorted(out)
}

/// Whether a block with `upper_south` can sit directly on top of a block with
/// `lower_north`: every bump on either side must meet a dent on the other.
/// Handle attachments never interfere in a two-block stack.
pub fn stackable(upper_south: &SideLabel, lower_north: &SideLabel) -> bool {
    lower_north.bumps.is_subset(upper_south.dents) && upper_south.bumps.is_subset(lower_north.dents)
}

/// Geometry of a vertical stack of aligned blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackReport {
    pub overlap: bool,
    /// Anchors `(a, b)` of unfilled plus holes, in the coordinates of the
    /// bottom block.
    pub holes: Vec<(i64, i64)>,
    /// Unfilled regions that are not a single plus.
    pub irregular: Vec<CellSet>,
}

/// Stacks `specs[0]` at the bottom and each next block 14 cells higher, then
/// reports overlap and the residual voids at the interior interfaces.
pub fn stack_column(specs: &[BlockSpec]) -> StackReport {
    let mut occupied = CellSet::new();
    let mut overlap = false;
    let mut voids = CellSet::new();
    for (i, spec) in specs.iter().enumerate() {
        let up = Offset::new(0, BLOCK_HEIGHT * i as i64);
        let cells = build_block(spec).translate(up).expect("small offsets");
        if !cells.is_disjoint(&occupied) {
            overlap = true;
        }
        occupied = occupied.union(&cells);
        if i + 1 < specs.len() {
            if let Some(l) = spec.north() {
                voids = voids.union(&side_void(Side::North, &l).translate(up).expect("small offsets"));
            }
        }
        if i > 0 {
            if let Some(l) = spec.south() {
                voids = voids.union(&side_void(Side::South, &l).translate(up).expect("small offsets"));
            }
        }
    }
    let residual = voids.difference(&occupied);
    let mut holes = Vec::new();
    let mut irregular = Vec::new();
    for comp in residual.components() {
        match stamps::plus_anchor(&comp) {
            Some(a) => holes.push(a),
            None => irregular.push(comp),
        }
    }
    StackReport {
        overlap,
        holes,
        irregular,
    }
}

/// Places `upper` directly above `lower` (aligned) and reports the result.
pub fn stack_residual(upper: &BlockSpec, lower: &BlockSpec) -> StackReport {
    stack_column(&[*lower, *upper])
}

#[cfg(test)]
mod tests {
    use super::*;
    use Position::*;

    fn l(s: &str) -> SideLabel {
        SideLabel::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(l("{A||C}"), SideLabel::new([A], None, [C]));
        assert_eq!(l("{||}"), SideLabel::BLANK);
        assert_eq!(l("{C|F|A}"), SideLabel::new([C], Some(Mid::F), [A]));
        assert_eq!(l("{ A , C | N | M }"), SideLabel::new([A, C], Some(Mid::N), [M]));
        assert_eq!(l("{||A,C,M}").to_string(), "{||A,C,M}");
        assert_eq!(l("{M,A||}").to_string(), "{A,M||}");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(SideLabel::parse("A||C"), Err(LabelError::Malformed(_))));
        assert!(matches!(SideLabel::parse("{A|C}"), Err(LabelError::Malformed(_))));
        assert!(matches!(
            SideLabel::parse("{A,A||}"),
            Err(LabelError::Repeated { letter: 'A', .. })
        ));
        assert!(matches!(SideLabel::parse("{|N,F|}"), Err(LabelError::TooManyMids(_))));
        assert!(matches!(
            SideLabel::parse("{X||}"),
            Err(LabelError::UnknownLetter { .. })
        ));
        assert!(matches!(
            SideLabel::parse("{|A|}"),
            Err(LabelError::UnknownLetter { .. })
        ));
        assert_eq!(BlockSpec::new(None, None), Err(LabelError::NoSides));
    }

    #[test]
    fn linker_has_two_pieces() {
        let linker = build_block(&BlockSpec::both(l("{A||C}")));
        assert_eq!(linker.components().len(), 2);
        assert_eq!(linker.len(), BlockSpec::both(l("{A||C}")).expected_area());
    }

    #[test]
    fn half_labeled_block_has_flat_north_edge() {
        let spec = BlockSpec::new(None, Some(l("{||C,M}"))).unwrap();
        let cs = build_block(&spec);
        assert!(cs.iter().all(|c| c.y < BLOCK_HEIGHT));
        assert!((0..BLOCK_WIDTH).all(|x| cs.contains(Cell::new(x, BLOCK_HEIGHT - 1))));
        assert_eq!(cs.components().len(), 1);
        assert_eq!(cs.len(), 1158 - 18);
    }

    #[test]
    fn blank_block_area() {
        let blank = build_block(&BlockSpec::both(SideLabel::BLANK));
        assert_eq!(blank.len(), 1158);
        assert_eq!(1176 - 38 + 20, 1158);
    }

    #[test]
    fn stackable_examples() {
        assert!(!stackable(&l("{A||C}"), &l("{A||C}")));
        assert!(stackable(&l("{L||M}"), &l("{M||L}")));
        assert!(stackable(&SideLabel::BLANK, &SideLabel::BLANK));
    }

    #[test]
    fn stack_residual_examples() {
        let linker = BlockSpec::both(l("{A||C}"));
        assert!(stack_residual(&linker, &linker).overlap);

        let enc = BlockSpec::both(l("{C|N|A}"));
        let r = stack_residual(&linker, &enc);
        assert!(!r.overlap);
        assert!(r.irregular.is_empty());
        // encoder's two interior holes plus the linker's hole not taken by N
        let mut holes = r.holes.clone();
        holes.sort();
        assert_eq!(holes, vec![(41, 7), (41, 21), (42, 2)]);

        let blank = BlockSpec::both(SideLabel::BLANK);
        let r = stack_residual(&blank, &blank);
        assert!(!r.overlap);
        assert_eq!(r.holes.len(), 4);
    }

    #[test]
    fn build_row_fuses_blocks() {
        let blank = BlockSpec::both(SideLabel::BLANK);
        assert_eq!(build_row(&[blank]), build_block(&blank));
        let two = build_row(&[blank, blank]);
        assert_eq!(two.len(), 2 * 1158);
        let b = two.bounds().unwrap();
        assert_eq!((b.min_x, b.max_x), (0, 2 * BLOCK_WIDTH - 1));
        let mixed = [blank, BlockSpec::both(l("{C|F|A}")), BlockSpec::both(l("{A||C}"))];
        let row = build_row(&mixed);
        let mut direct = CellSet::new();
        for (j, s) in mixed.iter().enumerate() {
            direct = direct.union(&build_block(s).translate(Offset::new(84 * j as i64, 0)).unwrap());
        }
        assert_eq!(row, direct);
    }
}
