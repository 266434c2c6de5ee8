//! Static SVG output. One `<path>` per tile or placement, `y` pointing up.

use std::fmt::Write as _;

use crate::geometry::{outline_loops, Cell, CellSet, GeometryError, Placement, Region, TileSet};

/// Pixels per cell edge.
pub const CELL_PX: i64 = 4;

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Fill color derived from the tile name only.
pub fn tile_color(name: &str) -> String {
    let h = fnv1a(name);
    // keep channels in a light range so outlines stay visible
    let ch = |shift: u32| 96 + ((h >> shift) & 0x7f) as u8;
    format!("#{:02x}{:02x}{:02x}", ch(0), ch(16), ch(32))
}

fn path_data(cells: &CellSet, height: i64) -> String {
    let mut d = String::new();
    for lp in outline_loops(cells) {
        for (i, &(x, y)) in lp.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{} {}", x * CELL_PX, (height - y) * CELL_PX);
        }
        d.push('Z');
    }
    d
}

struct Scene {
    min_x: i64,
    min_y: i64,
    width: i64,
    height: i64,
    body: String,
}

impl Scene {
    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <g stroke=\"#000\" stroke-width=\"0.5\" fill-rule=\"evenodd\" transform=\"translate({tx} {ty})\">\n{body}</g>\n</svg>\n",
            w = self.width * CELL_PX,
            h = self.height * CELL_PX,
            tx = -self.min_x * CELL_PX,
            ty = self.min_y * CELL_PX,
            body = self.body
        )
    }
}

/// Tiles drawn left to right with a one-cell gap, in name order.
pub fn render_tiles(tiles: &TileSet) -> String {
    let mut body = String::new();
    let mut x = 0;
    let mut top = 0;
    let mut bottom = 0;
    let mut shapes = Vec::new();
    for (name, cells) in tiles {
        let Some(b) = cells.bounds() else { continue };
        let dx = x - b.min_x;
        let moved = CellSet::from_cells(cells.iter().map(|c| Cell::new(c.x + dx, c.y)));
        top = top.max(b.max_y + 1);
        bottom = bottom.min(b.min_y);
        x += b.width() + 1;
        shapes.push((name, moved));
    }
    let height = top;
    for (name, cells) in shapes {
        let _ = writeln!(
            body,
            "<path id=\"{name}\" fill=\"{}\" d=\"{}\"/>",
            tile_color(name),
            path_data(&cells, height)
        );
    }
    Scene {
        min_x: 0,
        min_y: 0,
        width: (x - 1).max(1),
        height: (top - bottom).max(1),
        body,
    }
    .finish()
}

/// Placements drawn inside `region`; torus placements are wrapped into the
/// fundamental domain before outlining.
pub fn render_placements(region: &Region, placements: &[Placement], tiles: &TileSet) -> Result<String, GeometryError> {
    let mut body = String::new();
    for p in placements {
        let tile = tiles
            .get(&p.tile)
            .ok_or_else(|| GeometryError::UnknownTile(p.tile.clone()))?;
        let cells = CellSet::from_cells(
            tile.iter()
                .map(|c| region.reduce(Cell::new(c.x + p.offset.dx, c.y + p.offset.dy))),
        );
        let _ = writeln!(
            body,
            "<path fill=\"{}\" d=\"{}\"/>",
            tile_color(&p.tile),
            path_data(&cells, region.origin.y + region.height)
        );
    }
    Ok(Scene {
        min_x: region.origin.x,
        min_y: 0,
        width: region.width,
        height: region.height,
        body,
    }
    .finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stamps::tiny_filler;

    #[test]
    fn colors_are_stable() {
        assert_eq!(tile_color("filler"), tile_color("filler"));
        assert_ne!(tile_color("filler"), tile_color("linker"));
        assert_eq!(tile_color("x").len(), 7);
    }

    #[test]
    fn filler_is_one_loop() {
        let mut tiles = TileSet::new();
        tiles.insert("filler".into(), tiny_filler());
        let svg = render_tiles(&tiles);
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(svg.matches('Z').count(), 1);
        assert_eq!(svg, render_tiles(&tiles));
    }

    #[test]
    fn placements_render() {
        let mut tiles = TileSet::new();
        tiles.insert("sq".into(), CellSet::rect(0, 0, 1, 1));
        let region = Region::torus(2, 1).unwrap();
        let svg = render_placements(
            &region,
            &[Placement::new("sq", 0, 0), Placement::new("sq", 3, 0)],
            &tiles,
        )
        .unwrap();
        assert!(svg.contains("d=\"M0 4L4 4L4 0L0 0Z\""));
        assert!(svg.contains("d=\"M4 4L8 4L8 0L4 0Z\""));
        assert!(render_placements(&region, &[Placement::new("nope", 0, 0)], &tiles).is_err());
    }
}
