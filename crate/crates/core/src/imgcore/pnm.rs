//! Binary Netpbm codecs: P6 (PPM) and P5 (PGM), maxval 255 only.
//!
//! Headers may carry `#` comments between tokens. The encoder always writes
//! the minimal form `P6\n{w} {h}\n255\n`, so any minimal-header input round
//! trips byte for byte.

use super::{GrayMap, ImageRGB8};
use crate::error::PnmError;

struct Header {
    width: usize,
    height: usize,
    data_offset: usize,
}

fn is_ws(b: u8) -> bool {
    matches!(b, b' ' | b'\t' | b'\n' | b'\r' | 0x0b | 0x0c)
}

fn skip_ws_and_comments(bytes: &[u8], mut pos: usize) -> usize {
    loop {
        while pos < bytes.len() && is_ws(bytes[pos]) {
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
            continue;
        }
        return pos;
    }
}

fn read_uint(bytes: &[u8], pos: &mut usize, what: &str) -> Result<u64, PnmError> {
    *pos = skip_ws_and_comments(bytes, *pos);
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err(PnmError::BadHeader(format!("missing {what}")));
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| PnmError::BadHeader(format!("{what} out of range")))
}

fn parse_header(bytes: &[u8], magic: &'static str) -> Result<Header, PnmError> {
    if bytes.len() < 2 || &bytes[..2] != magic.as_bytes() {
        return Err(PnmError::BadMagic { expected: magic });
    }
    let mut pos = 2;
    if pos < bytes.len() && !is_ws(bytes[pos]) && bytes[pos] != b'#' {
        return Err(PnmError::BadMagic { expected: magic });
    }
    let width = read_uint(bytes, &mut pos, "width")?;
    let height = read_uint(bytes, &mut pos, "height")?;
    let maxval = read_uint(bytes, &mut pos, "maxval")?;
    if width == 0 || height == 0 {
        return Err(PnmError::ZeroDimension {
            width: width as usize,
            height: height as usize,
        });
    }
    if maxval != 255 {
        return Err(PnmError::UnsupportedMaxval(maxval.min(u32::MAX as u64) as u32));
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(pos) {
        Some(&b) if is_ws(b) => pos += 1,
        Some(_) => return Err(PnmError::BadHeader("no whitespace after maxval".into())),
        None => {
            return Err(PnmError::Truncated {
                expected: 1,
                got: 0,
            })
        }
    }
    let width = usize::try_from(width).map_err(|_| PnmError::BadHeader("width too large".into()))?;
    let height =
        usize::try_from(height).map_err(|_| PnmError::BadHeader("height too large".into()))?;
    Ok(Header {
        width,
        height,
        data_offset: pos,
    })
}

fn payload<'a>(bytes: &'a [u8], h: &Header, channels: usize) -> Result<&'a [u8], PnmError> {
    let expected = h
        .width
        .checked_mul(h.height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| PnmError::BadHeader("dimensions overflow".into()))?;
    let got = bytes.len() - h.data_offset;
    if got < expected {
        return Err(PnmError::Truncated { expected, got });
    }
    Ok(&bytes[h.data_offset..h.data_offset + expected])
}

/// Decodes a binary P6 PPM with maxval 255.
pub fn decode_ppm(bytes: &[u8]) -> Result<ImageRGB8, PnmError> {
    let h = parse_header(bytes, "P6")?;
    let data = payload(bytes, &h, 3)?;
    let n = h.width * h.height;
    let (mut r, mut g, mut b) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for px in data.chunks_exact(3) {
        r.push(px[0]);
        g.push(px[1]);
        b.push(px[2]);
    }
    Ok(ImageRGB8::from_planes(h.width, h.height, r, g, b).expect("sizes checked by header"))
}

pub fn encode_ppm(img: &ImageRGB8) -> Vec<u8> {
    let header = format!("P6\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.len() * 3);
    out.extend_from_slice(header.as_bytes());
    for ((&r, &g), &b) in img.r().iter().zip(img.g()).zip(img.b()) {
        out.extend_from_slice(&[r, g, b]);
    }
    out
}

/// Decodes a binary P5 PGM with maxval 255.
pub fn decode_pgm(bytes: &[u8]) -> Result<GrayMap, PnmError> {
    let h = parse_header(bytes, "P5")?;
    let data = payload(bytes, &h, 1)?;
    Ok(GrayMap::from_vec(h.width, h.height, data.to_vec()).expect("sizes checked by header"))
}

pub fn encode_pgm(map: &GrayMap) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", map.width(), map.height());
    let mut out = Vec::with_capacity(header.len() + map.data().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(map.data());
    out
}
