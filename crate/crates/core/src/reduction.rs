//! The four tiles built from a Wang set: tiny filler, linker, locator and
//! encoder, with their size parameters and slot layout.
//!
//! Sizes are counted in building blocks:
//!
//! | field | value |
//! |-------|-------|
//! | `seg` | `2^(3n-1) (t+2)` encoding-segment length |
//! | `gap` | `seg - t - 1` padding length |
//! | `loc` | `2 gap + 1` locator row length |
//! | `enc` | `2 seg + gap` encoder length |
//! | `per` | `2 (loc + t)` lattice period |

use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::blocks::{build_block, build_row, BlockSpec, SideLabel};
use crate::geometry::{CellSet, Offset, TileSet};
use crate::stamps::{self, Mid, Position, BLOCK_HEIGHT, BLOCK_WIDTH};
use crate::wang::WangSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("size parameters overflow for n={n}, t={t}")]
    Overflow { n: usize, t: usize },
    #[error("need at least one tile and two colors (n={n}, m={m})")]
    Degenerate { n: usize, m: usize },
    #[error("color index {c} does not fit in {t} bits")]
    ColorRange { c: usize, t: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReductionParams {
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub seg: usize,
    pub gap: usize,
    pub loc: usize,
    pub enc: usize,
    pub per: usize,
}

impl ReductionParams {
    pub fn new(n: usize, m: usize) -> Result<Self, ReductionError> {
        if n == 0 || m < 2 {
            return Err(ReductionError::Degenerate { n, m });
        }
        let t = (usize::BITS - (m - 1).leading_zeros()) as usize;
        let overflow = || ReductionError::Overflow { n, t };
        let exp = n.checked_mul(3).and_then(|e| e.checked_sub(1)).ok_or_else(overflow)?;
        let slots = u32::try_from(exp)
            .ok()
            .and_then(|e| 1usize.checked_shl(e))
            .filter(|_| exp < usize::BITS as usize)
            .ok_or_else(overflow)?;
        let seg = slots.checked_mul(t + 2).ok_or_else(overflow)?;
        let gap = seg - t - 1;
        let loc = gap.checked_mul(2).and_then(|v| v.checked_add(1)).ok_or_else(overflow)?;
        let enc = seg
            .checked_mul(2)
            .and_then(|v| v.checked_add(gap))
            .ok_or_else(overflow)?;
        let per = loc.checked_add(t).and_then(|v| v.checked_mul(2)).ok_or_else(overflow)?;
        Ok(ReductionParams {
            n,
            m,
            t,
            seg,
            gap,
            loc,
            enc,
            per,
        })
    }

    pub fn for_set(ws: &WangSet) -> Result<Self, ReductionError> {
        ReductionParams::new(ws.n(), ws.m())
    }

    /// Blocks per slot: two markers around `t` encoding blocks.
    pub fn slot_len(&self) -> usize {
        self.t + 2
    }

    /// Slots per encoding segment, `2^(3n-1)`.
    pub fn slot_count(&self) -> usize {
        self.seg / self.slot_len()
    }

    /// Column of the locator's connector block.
    pub fn connector_column(&self) -> usize {
        self.gap
    }

    /// First block of the encoder's right encoding segment.
    pub fn right_segment_start(&self) -> usize {
        self.seg + self.gap
    }

    /// Encoder start relative to the locator origin when slot `k` is exposed.
    pub fn encoder_start(&self, k: usize) -> i64 {
        self.loc as i64 - 1 - ((k as i64 - 1) * self.slot_len() as i64)
    }

    /// Inverse of [`encoder_start`](Self::encoder_start); `None` unless the
    /// offset lands exactly on a slot boundary inside the segment.
    pub fn slot_from_start(&self, rel: i64) -> Option<usize> {
        let back = self.loc as i64 - 1 - rel;
        let len = self.slot_len() as i64;
        if back < 0 || back % len != 0 {
            return None;
        }
        let k = (back / len + 1) as usize;
        (k <= self.slot_count()).then_some(k)
    }

    /// Columns, relative to a locator origin, whose encoding blocks are
    /// exposed on the left and on the right.
    pub fn exposure(&self) -> Exposure {
        Exposure {
            left: self.loc..self.loc + self.t,
            right: 2 * self.loc + self.t..2 * self.loc + 2 * self.t,
        }
    }
}

impl fmt::Display for ReductionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} m={} t={} SEG={} GAP={} LOC={} ENC={} PER={}",
            self.n, self.m, self.t, self.seg, self.gap, self.loc, self.enc, self.per
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exposure {
    pub left: Range<usize>,
    pub right: Range<usize>,
}

/// One used slot: slot `slot = 2^(3 tile + copy)` holds copy `copy` of tile
/// `tile` (both 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlotEntry {
    pub slot: usize,
    pub tile: usize,
    pub copy: usize,
}

pub fn slot_of(tile: usize, copy: usize) -> usize {
    1 << (3 * tile + copy)
}

/// Tile and copy stored in slot `k`, if `k` is a used slot for `n` tiles.
pub fn slot_owner(k: usize, n: usize) -> Option<(usize, usize)> {
    if !k.is_power_of_two() {
        return None;
    }
    let e = k.trailing_zeros() as usize;
    (e < 3 * n).then_some((e / 3, e % 3))
}

pub fn slot_map(n: usize) -> Vec<SlotEntry> {
    (0..n)
        .flat_map(|tile| {
            (0..3).map(move |copy| SlotEntry {
                slot: slot_of(tile, copy),
                tile,
                copy,
            })
        })
        .collect()
}

/// Binary expansion of color `c` in `t` bits, most significant first, with
/// `0 -> N` and `1 -> F`.
pub fn color_bits(c: usize, t: usize) -> Result<Vec<Mid>, ReductionError> {
    if t < usize::BITS as usize && c >> t != 0 {
        return Err(ReductionError::ColorRange { c, t });
    }
    Ok((0..t)
        .rev()
        .map(|b| if (c >> b) & 1 == 1 { Mid::F } else { Mid::N })
        .collect())
}

/// Inverse of [`color_bits`].
pub fn color_from_bits(bits: &[Mid]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b == Mid::F))
}

pub fn left_marker() -> SideLabel {
    SideLabel::new([Position::M], None, [Position::L])
}

pub fn right_marker() -> SideLabel {
    SideLabel::new([Position::M], None, [Position::R])
}

pub fn left_selector() -> SideLabel {
    SideLabel::new([Position::L], None, [Position::M])
}

pub fn right_selector() -> SideLabel {
    SideLabel::new([Position::R], None, [Position::M])
}

pub fn locator_outer() -> SideLabel {
    SideLabel::new([], None, [Position::C, Position::M])
}

pub fn locator_concave() -> SideLabel {
    SideLabel::new([], None, [Position::A, Position::C, Position::M])
}

pub fn linker_label() -> SideLabel {
    SideLabel::new([Position::A], None, [Position::C])
}

pub fn encoding_label(bit: Mid) -> SideLabel {
    SideLabel::new([Position::C], Some(bit), [Position::A])
}

pub fn linker_spec() -> BlockSpec {
    BlockSpec::both(linker_label())
}

/// Block labels of the encoder, left to right.
pub fn encoder_specs(ws: &WangSet) -> Result<Vec<BlockSpec>, ReductionError> {
    let params = ReductionParams::for_set(ws)?;
    let blank = BlockSpec::both(SideLabel::BLANK);
    let mut specs = Vec::with_capacity(params.enc);
    let segment = |specs: &mut Vec<BlockSpec>, right: bool| -> Result<(), ReductionError> {
        for k in 1..=params.slot_count() {
            specs.push(BlockSpec::both(left_marker()));
            match slot_owner(k, ws.n()) {
                Some((i, _)) => {
                    let tile = ws.tile(i);
                    let (north, south) = if right { (tile.ne, tile.se) } else { (tile.nw, tile.sw) };
                    let nb = color_bits(north, params.t)?;
                    let sb = color_bits(south, params.t)?;
                    for b in 0..params.t {
                        specs.push(BlockSpec::sides(encoding_label(nb[b]), encoding_label(sb[b])));
                    }
                }
                None => specs.extend(std::iter::repeat(blank).take(params.t)),
            }
            specs.push(BlockSpec::both(right_marker()));
        }
        Ok(())
    };
    segment(&mut specs, false)?;
    specs.extend(std::iter::repeat(blank).take(params.gap));
    segment(&mut specs, true)?;
    debug_assert_eq!(specs.len(), params.enc);
    Ok(specs)
}

/// Two rows of block labels joined by a flat connector block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocatorLayout {
    pub bottom: Vec<BlockSpec>,
    pub top: Vec<BlockSpec>,
    pub connector: usize,
}

impl LocatorLayout {
    pub fn new(params: &ReductionParams) -> Self {
        let row = |outer_is_north: bool| -> Vec<BlockSpec> {
            (0..params.loc)
                .map(|c| {
                    if c == 0 {
                        BlockSpec::both(right_selector())
                    } else if c == params.loc - 1 {
                        BlockSpec::both(left_selector())
                    } else {
                        let inner = (c != params.gap).then(locator_concave);
                        let (north, south) = if outer_is_north {
                            (Some(locator_outer()), inner)
                        } else {
                            (inner, Some(locator_outer()))
                        };
                        BlockSpec::new(north, south).expect("outer side always present")
                    }
                })
                .collect()
        };
        LocatorLayout {
            bottom: row(false),
            top: row(true),
            connector: params.gap,
        }
    }

    pub fn cells(&self) -> CellSet {
        let bottom = build_row(&self.bottom);
        let top = build_row(&self.top)
            .translate(Offset::new(0, 2 * BLOCK_HEIGHT))
            .expect("small offsets");
        let connector = CellSet::rect(
            BLOCK_WIDTH * self.connector as i64,
            BLOCK_HEIGHT,
            BLOCK_WIDTH,
            BLOCK_HEIGHT,
        );
        bottom.union(&connector).union(&top)
    }
}

pub fn locator_specs(ws: &WangSet) -> Result<LocatorLayout, ReductionError> {
    Ok(LocatorLayout::new(&ReductionParams::for_set(ws)?))
}

pub const FILLER: &str = "filler";
pub const LINKER: &str = "linker";
pub const LOCATOR: &str = "locator";
pub const ENCODER: &str = "encoder";

#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub filler: CellSet,
    pub linker: CellSet,
    pub locator: CellSet,
    pub encoder: CellSet,
    pub params: ReductionParams,
    pub slot_map: Vec<SlotEntry>,
    pub encoder_specs: Vec<BlockSpec>,
    pub locator_layout: LocatorLayout,
    pub exposure: Exposure,
    pub wang: WangSet,
}

impl ReductionOutput {
    pub fn tile_set(&self) -> TileSet {
        [
            (FILLER, &self.filler),
            (LINKER, &self.linker),
            (LOCATOR, &self.locator),
            (ENCODER, &self.encoder),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
    }
}

pub fn reduce(ws: &WangSet) -> Result<ReductionOutput, ReductionError> {
    let params = ReductionParams::for_set(ws)?;
    let encoder_specs = encoder_specs(ws)?;
    let locator_layout = LocatorLayout::new(&params);
    Ok(ReductionOutput {
        filler: stamps::tiny_filler(),
        linker: build_block(&linker_spec()),
        locator: locator_layout.cells(),
        encoder: build_row(&encoder_specs),
        params,
        slot_map: slot_map(ws.n()),
        encoder_specs,
        locator_layout,
        exposure: params.exposure(),
        wang: ws.clone(),
    })
}

/// `params.txt` contents.
pub fn format_params(p: &ReductionParams) -> String {
    format!(
        "n {}\nm {}\nt {}\nSEG {}\nGAP {}\nLOC {}\nENC {}\nPER {}\n",
        p.n, p.m, p.t, p.seg, p.gap, p.loc, p.enc, p.per
    )
}

/// `slots.txt` contents: one `slot <k> tile <name> copy <j>` line per used slot.
pub fn format_slots(ws: &WangSet, map: &[SlotEntry]) -> String {
    map.iter()
        .map(|e| format!("slot {} tile {} copy {}\n", e.slot, ws.tile(e.tile).name, e.copy))
        .collect()
}
