//! Text formats: polyomino files, placement lists, region literals and block
//! spec lists. All writers emit LF-terminated lines in a fixed order.

use std::fmt::Write as _;

use thiserror::Error;

use crate::blocks::{BlockSpec, LabelError, SideLabel};
use crate::geometry::{Cell, CellSet, Placement, Region, RegionKind, TileSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Label { line: usize, source: LabelError },
    #[error("bad region literal `{0}`: expected box:WxH or torus:WxH")]
    Region(String),
    #[error("duplicate tile `{0}`")]
    DuplicateTile(String),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn int(line: usize, s: Option<&str>) -> Result<i64, FormatError> {
    s.ok_or_else(|| syntax(line, "missing number"))?
        .parse()
        .map_err(|_| syntax(line, "bad number"))
}

/// One `tile <name>` header followed by `cell <x> <y>` lines, cells sorted by
/// `(y, x)`.
pub fn format_polyomino(name: &str, cells: &CellSet) -> String {
    let mut out = String::with_capacity(16 * cells.len() + 16);
    let _ = writeln!(out, "tile {name}");
    for c in cells {
        let _ = writeln!(out, "cell {} {}", c.x, c.y);
    }
    out
}

/// Reads one or more `tile` sections.
pub fn parse_polyominoes(text: &str) -> Result<TileSet, FormatError> {
    let mut tiles = TileSet::new();
    let mut current: Option<(String, Vec<Cell>)> = None;
    let finish = |tiles: &mut TileSet, cur: Option<(String, Vec<Cell>)>| -> Result<(), FormatError> {
        if let Some((name, cells)) = cur {
            if tiles.insert(name.clone(), CellSet::from_cells(cells)).is_some() {
                return Err(FormatError::DuplicateTile(name));
            }
        }
        Ok(())
    };
    for (ln, line) in content_lines(text) {
        let mut w = line.split_whitespace();
        match w.next() {
            Some("tile") => {
                let name = w.next().ok_or_else(|| syntax(ln, "missing tile name"))?;
                if w.next().is_some() {
                    return Err(syntax(ln, "trailing text after tile name"));
                }
                finish(&mut tiles, current.take())?;
                current = Some((name.to_string(), Vec::new()));
            }
            Some("cell") => {
                let (x, y) = (int(ln, w.next())?, int(ln, w.next())?);
                if w.next().is_some() {
                    return Err(syntax(ln, "trailing text after cell"));
                }
                current
                    .as_mut()
                    .ok_or_else(|| syntax(ln, "cell before any tile header"))?
                    .1
                    .push(Cell::new(x, y));
            }
            Some(other) => return Err(syntax(ln, format!("unknown directive `{other}`"))),
            None => {}
        }
    }
    finish(&mut tiles, current)?;
    if tiles.is_empty() {
        return Err(syntax(1, "no tile header"));
    }
    Ok(tiles)
}

pub fn format_placements(placements: &[Placement]) -> String {
    let mut out = String::new();
    for p in placements {
        let _ = writeln!(out, "place {} {} {}", p.tile, p.offset.dx, p.offset.dy);
    }
    out
}

pub fn parse_placements(text: &str) -> Result<Vec<Placement>, FormatError> {
    content_lines(text)
        .map(|(ln, line)| {
            let mut w = line.split_whitespace();
            if w.next() != Some("place") {
                return Err(syntax(ln, "expected `place <name> <dx> <dy>`"));
            }
            let name = w.next().ok_or_else(|| syntax(ln, "missing tile name"))?;
            let (dx, dy) = (int(ln, w.next())?, int(ln, w.next())?);
            if w.next().is_some() {
                return Err(syntax(ln, "trailing text"));
            }
            Ok(Placement::new(name, dx, dy))
        })
        .collect()
}

/// Parses `box:WxH` or `torus:WxH`.
pub fn parse_region(text: &str) -> Result<Region, FormatError> {
    let bad = || FormatError::Region(text.to_string());
    let (kind, dims) = text.trim().split_once(':').ok_or_else(bad)?;
    let kind = match kind {
        "box" => RegionKind::Box,
        "torus" => RegionKind::Torus,
        _ => return Err(bad()),
    };
    let (w, h) = dims.split_once('x').ok_or_else(bad)?;
    let w: i64 = w.parse().map_err(|_| bad())?;
    let h: i64 = h.parse().map_err(|_| bad())?;
    Region::new(kind, w, h).map_err(|_| bad())
}

/// Lines `block <north> <south>`, with `-` for an absent side.
pub fn parse_block_specs(text: &str) -> Result<Vec<BlockSpec>, FormatError> {
    content_lines(text)
        .map(|(ln, line)| {
            let mut w = line.split_whitespace();
            if w.next() != Some("block") {
                return Err(syntax(ln, "expected `block <north> <south>`"));
            }
            let side = |s: Option<&str>| -> Result<Option<SideLabel>, FormatError> {
                match s {
                    None => Err(syntax(ln, "missing side label")),
                    Some("-") => Ok(None),
                    Some(l) => SideLabel::parse(l)
                        .map(Some)
                        .map_err(|source| FormatError::Label { line: ln, source }),
                }
            };
            let (north, south) = (side(w.next())?, side(w.next())?);
            if w.next().is_some() {
                return Err(syntax(ln, "trailing text; labels may not contain spaces"));
            }
            BlockSpec::new(north, south).map_err(|source| FormatError::Label { line: ln, source })
        })
        .collect()
}

pub fn format_block_specs(specs: &[BlockSpec]) -> String {
    specs.iter().map(|s| format!("block {s}\n")).collect()
}
