//! Raster types shared by every stage, plus luma conversion and the PNM codecs.
//!
//! All rasters are row-major with `index = y * width + x`. Colour images are
//! planar: three separate byte planes rather than interleaved triples.

mod pnm;

pub use pnm::{decode_pgm, decode_ppm, encode_pgm, encode_ppm};

use crate::error::{Error, Result};

fn checked_len(width: usize, height: usize) -> Result<usize> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidRaster(format!(
            "zero dimension ({width}x{height})"
        )));
    }
    width
        .checked_mul(height)
        .ok_or_else(|| Error::InvalidRaster(format!("{width}x{height} overflows")))
}

/// Planar 8-bit RGB image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageRGB8 {
    width: usize,
    height: usize,
    r: Vec<u8>,
    g: Vec<u8>,
    b: Vec<u8>,
}

impl ImageRGB8 {
    /// Black image of the given size.
    pub fn new(width: usize, height: usize) -> Result<Self> {
        let len = checked_len(width, height)?;
        Ok(Self {
            width,
            height,
            r: vec![0; len],
            g: vec![0; len],
            b: vec![0; len],
        })
    }

    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Result<Self> {
        let len = checked_len(width, height)?;
        Ok(Self {
            width,
            height,
            r: vec![rgb[0]; len],
            g: vec![rgb[1]; len],
            b: vec![rgb[2]; len],
        })
    }

    pub fn from_planes(width: usize, height: usize, r: Vec<u8>, g: Vec<u8>, b: Vec<u8>) -> Result<Self> {
        let len = checked_len(width, height)?;
        if r.len() != len || g.len() != len || b.len() != len {
            return Err(Error::InvalidRaster(format!(
                "plane lengths {}/{}/{} do not match {width}x{height}",
                r.len(),
                g.len(),
                b.len()
            )));
        }
        Ok(Self { width, height, r, g, b })
    }

    /// Builds an image from interleaved RGB triples.
    pub fn from_interleaved(width: usize, height: usize, rgb: &[u8]) -> Result<Self> {
        let len = checked_len(width, height)?;
        if rgb.len() != len * 3 {
            return Err(Error::InvalidRaster(format!(
                "expected {} interleaved bytes, got {}",
                len * 3,
                rgb.len()
            )));
        }
        let mut img = Self::new(width, height)?;
        for (i, px) in rgb.chunks_exact(3).enumerate() {
            img.r[i] = px[0];
            img.g[i] = px[1];
            img.b[i] = px[2];
        }
        Ok(img)
    }

    pub fn to_interleaved(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len() * 3);
        for i in 0..self.len() {
            out.extend_from_slice(&[self.r[i], self.g[i], self.b[i]]);
        }
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    /// Number of pixels.
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn r(&self) -> &[u8] {
        &self.r
    }

    pub fn g(&self) -> &[u8] {
        &self.g
    }

    pub fn b(&self) -> &[u8] {
        &self.b
    }

    pub fn planes(&self) -> [&[u8]; 3] {
        [&self.r, &self.g, &self.b]
    }

    pub fn planes_mut(&mut self) -> [&mut [u8]; 3] {
        [&mut self.r, &mut self.g, &mut self.b]
    }

    pub fn into_planes(self) -> (Vec<u8>, Vec<u8>, Vec<u8>) {
        (self.r, self.g, self.b)
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        let i = y * self.width + x;
        [self.r[i], self.g[i], self.b[i]]
    }

    pub fn set(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        let i = y * self.width + x;
        self.r[i] = rgb[0];
        self.g[i] = rgb[1];
        self.b[i] = rgb[2];
    }

    /// Copies out the column range `[x0, x0 + w)`.
    pub fn crop_columns(&self, x0: usize, w: usize) -> Result<Self> {
        if x0 + w > self.width {
            return Err(Error::InvalidRaster(format!(
                "columns {x0}..{} outside width {}",
                x0 + w,
                self.width
            )));
        }
        let mut out = Self::new(w, self.height)?;
        for y in 0..self.height {
            let src = y * self.width + x0;
            let dst = y * w;
            out.r[dst..dst + w].copy_from_slice(&self.r[src..src + w]);
            out.g[dst..dst + w].copy_from_slice(&self.g[src..src + w]);
            out.b[dst..dst + w].copy_from_slice(&self.b[src..src + w]);
        }
        Ok(out)
    }

    /// Horizontal mirror.
    pub fn mirrored(&self) -> Self {
        let mut out = self.clone();
        for plane in out.planes_mut() {
            for row in plane.chunks_exact_mut(self.width) {
                row.reverse();
            }
        }
        out
    }
}

/// Single-channel 8-bit raster (luma guides, edge maps, depth maps).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayMap {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl GrayMap {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        Self::filled(width, height, 0)
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        let len = checked_len(width, height)?;
        Ok(Self {
            width,
            height,
            data: vec![value; len],
        })
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        let len = checked_len(width, height)?;
        if data.len() != len {
            return Err(Error::InvalidRaster(format!(
                "expected {len} bytes, got {}",
                data.len()
            )));
        }
        Ok(Self { width, height, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.data
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: u8) {
        self.data[y * self.width + x] = v;
    }

    pub fn row(&self, y: usize) -> &[u8] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn mirrored(&self) -> Self {
        let mut out = self.clone();
        for row in out.data.chunks_exact_mut(self.width) {
            row.reverse();
        }
        out
    }
}

/// Per-pixel damaged flag for disoccluded pixels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DamageMask {
    width: usize,
    height: usize,
    damaged: Vec<bool>,
}

impl DamageMask {
    /// Mask with every pixel undamaged.
    pub fn clean(width: usize, height: usize) -> Result<Self> {
        let len = checked_len(width, height)?;
        Ok(Self {
            width,
            height,
            damaged: vec![false; len],
        })
    }

    /// Mask with every pixel damaged.
    pub fn all_damaged(width: usize, height: usize) -> Result<Self> {
        let len = checked_len(width, height)?;
        Ok(Self {
            width,
            height,
            damaged: vec![true; len],
        })
    }

    pub fn from_vec(width: usize, height: usize, damaged: Vec<bool>) -> Result<Self> {
        let len = checked_len(width, height)?;
        if damaged.len() != len {
            return Err(Error::InvalidRaster(format!(
                "expected {len} flags, got {}",
                damaged.len()
            )));
        }
        Ok(Self {
            width,
            height,
            damaged,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.damaged
    }

    pub fn as_mut_slice(&mut self) -> &mut [bool] {
        &mut self.damaged
    }

    pub fn is_damaged(&self, x: usize, y: usize) -> bool {
        self.damaged[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, damaged: bool) {
        self.damaged[y * self.width + x] = damaged;
    }

    pub fn count_damaged(&self) -> usize {
        self.damaged.iter().filter(|&&d| d).count()
    }

    pub fn is_clean(&self) -> bool {
        !self.damaged.iter().any(|&d| d)
    }
}

/// Integer luma, `(77 R + 150 G + 29 B + 128) >> 8`.
#[inline]
pub fn luma_of(r: u8, g: u8, b: u8) -> u8 {
    ((77 * r as u32 + 150 * g as u32 + 29 * b as u32 + 128) >> 8) as u8
}

pub fn luma(img: &ImageRGB8) -> GrayMap {
    let data = img
        .r
        .iter()
        .zip(&img.g)
        .zip(&img.b)
        .map(|((&r, &g), &b)| luma_of(r, g, b))
        .collect();
    GrayMap {
        width: img.width,
        height: img.height,
        data,
    }
}

/// Rounds half-up and clamps into `0..=255`.
#[inline]
pub(crate) fn round_u8(v: f64) -> u8 {
    (v + 0.5).floor().clamp(0.0, 255.0) as u8
}
