//! Four polyominoes that simulate a Wang tile set under translation: block
//! geometry, the tile construction, torus assembly with exact verification,
//! and small tiling deciders used as oracles.

pub mod assembly;
pub mod blocks;
pub mod formats;
pub mod geometry;
pub mod reduction;
pub mod render;
pub mod stamps;
pub mod tilesolve;
pub mod wang;
