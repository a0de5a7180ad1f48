//! Bird's-eye-view features from synthetic scenes and their conversion to
//! visual tokens.
//!
//! A rule-based rasterizer stands in for a camera-to-BEV vision encoder:
//! cells whose centers fall inside an object's oriented footprint carry
//! occupancy, the object's velocity and a class code. Token extraction
//! partitions the feature map into blocks and flattens each block in
//! (channel, row, col) order — a pure, exactly invertible rearrangement.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planeval::ObjectBox;

/// Channels: occupancy, velocity-x, velocity-y, class code.
pub const BEV_CHANNELS: usize = 4;

#[derive(Debug, Error)]
pub enum BevError {
    #[error("extent {extent_m} m is not an even multiple of resolution {resolution_m} m")]
    BadSpec { extent_m: f64, resolution_m: f64 },
    #[error("block {block:?} does not divide feature map {map:?}")]
    BadBlock { block: (usize, usize), map: (usize, usize) },
}

/// Ego-centered square raster extent and cell size.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BevSpec {
    pub extent_m: f64,
    pub resolution_m: f64,
}

impl Default for BevSpec {
    fn default() -> Self {
        // 64 x 64 cells; an 8 x 8 block grid then yields 64 tokens of
        // dimension 256.
        Self { extent_m: 32.0, resolution_m: 0.5 }
    }
}

impl BevSpec {
    pub fn cells(&self) -> Result<usize, BevError> {
        let n = self.extent_m / self.resolution_m;
        if !(self.extent_m > 0.0) || !(self.resolution_m > 0.0) || (n - n.round()).abs() > 1e-9 {
            return Err(BevError::BadSpec { extent_m: self.extent_m, resolution_m: self.resolution_m });
        }
        Ok(n.round() as usize)
    }

    /// Center of cell `(i, j)`; `i` indexes x (forward), `j` indexes y (left).
    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        let half = self.extent_m / 2.0;
        (
            -half + (i as f64 + 0.5) * self.resolution_m,
            -half + (j as f64 + 0.5) * self.resolution_m,
        )
    }
}

/// Dense `channels x height x width` feature map, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct BevFeature {
    pub channels: usize,
    pub height: usize,
    pub width: usize,
    pub data: Vec<f64>,
}

impl BevFeature {
    pub fn zeros(channels: usize, height: usize, width: usize) -> Self {
        Self { channels, height, width, data: vec![0.0; channels * height * width] }
    }

    fn idx(&self, c: usize, i: usize, j: usize) -> usize {
        (c * self.height + i) * self.width + j
    }

    pub fn get(&self, c: usize, i: usize, j: usize) -> f64 {
        self.data[self.idx(c, i, j)]
    }

    pub fn set(&mut self, c: usize, i: usize, j: usize, v: f64) {
        let k = self.idx(c, i, j);
        self.data[k] = v;
    }
}

/// An object to rasterize: oriented footprint plus a class code stored in
/// the class channel (reds and greens of a signal get distinct codes).
#[derive(Clone, Copy, Debug)]
pub struct RasterObject {
    pub shape: ObjectBox,
    pub class_code: f64,
}

/// Rasterize objects into a fresh feature map.
///
/// Cell occupancy is decided by a cell-center point-in-footprint test.
/// Objects are painted in order, later objects overwrite earlier ones on
/// contested cells. Objects that cover no cell range at all are counted in
/// the returned skip count.
pub fn rasterize_scene(
    objects: &[RasterObject],
    spec: &BevSpec,
) -> Result<(BevFeature, usize), BevError> {
    let n = spec.cells()?;
    let mut bev = BevFeature::zeros(BEV_CHANNELS, n, n);
    let half = spec.extent_m / 2.0;
    let mut skipped = 0usize;

    for obj in objects {
        let corners = obj.shape.corners();
        let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for (x, y) in corners {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        if max_x < -half || min_x > half || max_y < -half || min_y > half {
            skipped += 1;
            continue;
        }
        let to_index = |coord: f64| ((coord + half) / spec.resolution_m - 0.5).floor() as isize;
        let i_lo = (to_index(min_x) - 1).max(0) as usize;
        let i_hi = (to_index(max_x) + 2).min(n as isize) as usize;
        let j_lo = (to_index(min_y) - 1).max(0) as usize;
        let j_hi = (to_index(max_y) + 2).min(n as isize) as usize;
        for i in i_lo..i_hi {
            for j in j_lo..j_hi {
                let (cx, cy) = spec.cell_center(i, j);
                if obj.shape.contains(cx, cy) {
                    bev.set(0, i, j, 1.0);
                    bev.set(1, i, j, obj.shape.vx);
                    bev.set(2, i, j, obj.shape.vy);
                    bev.set(3, i, j, obj.class_code);
                }
            }
        }
    }
    Ok((bev, skipped))
}

/// Visual tokens extracted from a feature map: one vector per block, in
/// row-major block order, each of dimension `channels * block_h * block_w`.
#[derive(Clone, Debug, PartialEq)]
pub struct VisualTokens {
    pub tokens: Vec<Vec<f64>>,
    pub channels: usize,
    /// Block size (h, w) in cells.
    pub block: (usize, usize),
    /// Block grid shape (height / h, width / w).
    pub grid: (usize, usize),
}

impl VisualTokens {
    pub fn token_dim(&self) -> usize {
        self.channels * self.block.0 * self.block.1
    }

    pub fn count(&self) -> usize {
        self.tokens.len()
    }
}

/// Partition `bev` into `h x w` blocks and flatten each block in
/// (channel, row, col) order.
pub fn grid_flatten(bev: &BevFeature, h: usize, w: usize) -> Result<VisualTokens, BevError> {
    if h == 0 || w == 0 || bev.height % h != 0 || bev.width % w != 0 {
        return Err(BevError::BadBlock { block: (h, w), map: (bev.height, bev.width) });
    }
    let grid = (bev.height / h, bev.width / w);
    let mut tokens = Vec::with_capacity(grid.0 * grid.1);
    for gi in 0..grid.0 {
        for gj in 0..grid.1 {
            let mut tok = Vec::with_capacity(bev.channels * h * w);
            for c in 0..bev.channels {
                for di in 0..h {
                    for dj in 0..w {
                        tok.push(bev.get(c, gi * h + di, gj * w + dj));
                    }
                }
            }
            tokens.push(tok);
        }
    }
    Ok(VisualTokens { tokens, channels: bev.channels, block: (h, w), grid })
}

/// Exact inverse of [`grid_flatten`].
pub fn unflatten(tokens: &VisualTokens) -> BevFeature {
    let (h, w) = tokens.block;
    let (gh, gw) = tokens.grid;
    let mut bev = BevFeature::zeros(tokens.channels, gh * h, gw * w);
    for gi in 0..gh {
        for gj in 0..gw {
            let tok = &tokens.tokens[gi * gw + gj];
            let mut k = 0;
            for c in 0..tokens.channels {
                for di in 0..h {
                    for dj in 0..w {
                        bev.set(c, gi * h + di, gj * w + dj, tok[k]);
                        k += 1;
                    }
                }
            }
        }
    }
    bev
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent point-in-rectangle check used as the rasterization
    /// oracle (no shared code with ObjectBox::contains).
    fn oracle_inside(obj: &ObjectBox, px: f64, py: f64) -> bool {
        let dx = px - obj.x;
        let dy = py - obj.y;
        let u = obj.yaw.cos() * dx + obj.yaw.sin() * dy;
        let v = -obj.yaw.sin() * dx + obj.yaw.cos() * dy;
        u.abs() <= obj.length / 2.0 && v.abs() <= obj.width / 2.0
    }

    #[test]
    fn empty_scene_is_all_zero() {
        let (bev, skipped) = rasterize_scene(&[], &BevSpec::default()).unwrap();
        assert_eq!(skipped, 0);
        assert!(bev.data.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn axis_aligned_box_covers_expected_cells() {
        // 4 m x 2 m box centered 8 m ahead on a 0.5 m grid: centers at
        // x in {6.25..9.75} and y in {-0.75..0.75}, an 8 x 4 patch.
        let spec = BevSpec::default();
        let obj = RasterObject {
            shape: ObjectBox::stationary(8.0, 0.0, 4.0, 2.0, 0.0),
            class_code: 1.0,
        };
        let (bev, skipped) = rasterize_scene(&[obj], &spec).unwrap();
        assert_eq!(skipped, 0);

        let n = spec.cells().unwrap();
        let mut occupied = 0;
        for i in 0..n {
            for j in 0..n {
                let (cx, cy) = spec.cell_center(i, j);
                let expect = oracle_inside(&obj.shape, cx, cy);
                assert_eq!(bev.get(0, i, j) == 1.0, expect, "cell ({i},{j}) at ({cx},{cy})");
                if expect {
                    occupied += 1;
                }
            }
        }
        assert_eq!(occupied, 8 * 4);
    }

    #[test]
    fn velocity_channels_match_oracle() {
        let spec = BevSpec::default();
        let obj = RasterObject {
            shape: ObjectBox { x: 6.0, y: 2.0, length: 3.0, width: 1.5, yaw: 0.4, vx: 2.0, vy: 0.0 },
            class_code: 1.0,
        };
        let (bev, _) = rasterize_scene(&[obj], &spec).unwrap();
        let n = spec.cells().unwrap();
        for i in 0..n {
            for j in 0..n {
                let (cx, cy) = spec.cell_center(i, j);
                let expect = if oracle_inside(&obj.shape, cx, cy) { 2.0 } else { 0.0 };
                assert_eq!(bev.get(1, i, j), expect);
                assert_eq!(bev.get(2, i, j), 0.0);
            }
        }
    }

    #[test]
    fn out_of_extent_object_is_skipped_and_counted() {
        let spec = BevSpec::default();
        let far = RasterObject {
            shape: ObjectBox::stationary(100.0, 0.0, 4.0, 2.0, 0.0),
            class_code: 1.0,
        };
        let (bev, skipped) = rasterize_scene(&[far], &spec).unwrap();
        assert_eq!(skipped, 1);
        assert!(bev.data.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn translation_by_one_cell_shifts_footprint_by_one_cell() {
        let spec = BevSpec::default();
        let base = ObjectBox::stationary(8.0, 1.0, 4.0, 2.0, 0.0);
        let shifted = ObjectBox::stationary(8.0 + spec.resolution_m, 1.0, 4.0, 2.0, 0.0);
        let (a, _) =
            rasterize_scene(&[RasterObject { shape: base, class_code: 1.0 }], &spec).unwrap();
        let (b, _) =
            rasterize_scene(&[RasterObject { shape: shifted, class_code: 1.0 }], &spec).unwrap();
        let n = spec.cells().unwrap();
        for i in 0..n - 1 {
            for j in 0..n {
                assert_eq!(a.get(0, i, j), b.get(0, i + 1, j), "shift mismatch at ({i},{j})");
            }
        }
    }

    #[test]
    fn flatten_shape_arithmetic() {
        // C=2, H=4, W=4 with 2x2 blocks: 4 tokens of dimension 8.
        let bev = BevFeature::zeros(2, 4, 4);
        let toks = grid_flatten(&bev, 2, 2).unwrap();
        assert_eq!(toks.count(), 4);
        assert_eq!(toks.token_dim(), 8);
    }

    #[test]
    fn flatten_ordering_is_channel_row_col() {
        // data[c][y][x] = 100c + 10y + x pins the exact layout.
        let mut bev = BevFeature::zeros(2, 4, 4);
        for c in 0..2 {
            for y in 0..4 {
                for x in 0..4 {
                    bev.set(c, y, x, (100 * c + 10 * y + x) as f64);
                }
            }
        }
        let toks = grid_flatten(&bev, 2, 2).unwrap();
        assert_eq!(&toks.tokens[0][..4], &[0.0, 1.0, 10.0, 11.0]);
        assert_eq!(&toks.tokens[0][4..], &[100.0, 101.0, 110.0, 111.0]);
        // Second token is the next block to the right.
        assert_eq!(&toks.tokens[1][..4], &[2.0, 3.0, 12.0, 13.0]);
    }

    #[test]
    fn non_divisible_block_rejected() {
        let bev = BevFeature::zeros(2, 4, 4);
        assert!(grid_flatten(&bev, 3, 2).is_err());
        assert!(grid_flatten(&bev, 0, 2).is_err());
    }

    #[test]
    fn unflatten_inverts_exactly() {
        let mut bev = BevFeature::zeros(3, 6, 4);
        for (k, v) in bev.data.iter_mut().enumerate() {
            *v = k as f64 * 0.37 - 11.0;
        }
        let toks = grid_flatten(&bev, 3, 2).unwrap();
        assert_eq!(unflatten(&toks), bev);
    }

    proptest! {
        #[test]
        fn flatten_is_a_bijection_on_random_shapes(
            c in 1usize..4,
            bh in 1usize..5,
            bw in 1usize..5,
            gh in 1usize..5,
            gw in 1usize..5,
            seed in 0u64..u64::MAX,
        ) {
            let (h, w) = (bh * gh, bw * gw);
            let mut bev = BevFeature::zeros(c, h, w);
            let mut state = seed | 1;
            for v in bev.data.iter_mut() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                *v = ((state >> 16) as u32 as f64) / 1e6 - 2000.0;
            }
            let toks = grid_flatten(&bev, bh, bw).unwrap();
            prop_assert_eq!(toks.count(), gh * gw);
            prop_assert_eq!(toks.token_dim(), c * bh * bw);

            // Conservation: the multiset of scalars is preserved.
            let mut orig = bev.data.clone();
            let mut flat: Vec<f64> = toks.tokens.iter().flatten().copied().collect();
            orig.sort_by(f64::total_cmp);
            flat.sort_by(f64::total_cmp);
            prop_assert_eq!(orig, flat);

            prop_assert_eq!(unflatten(&toks), bev);
        }
    }
}
