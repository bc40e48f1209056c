//! Frame-compatible stereo layouts: red/cyan anaglyph and side-by-side.

use crate::error::{check_dims, Error, Result};
use crate::exec::Executor;
use crate::imgcore::ImageRGB8;

/// Red from the left eye, green and blue from the right eye.
pub fn anaglyph(left: &ImageRGB8, right: &ImageRGB8) -> Result<ImageRGB8> {
    check_dims(left.dims(), right.dims())?;
    let (w, h) = left.dims();
    ImageRGB8::from_planes(w, h, left.r().to_vec(), right.g().to_vec(), right.b().to_vec())
}

/// Left and right eyes next to each other.
///
/// With `half` set each eye is squeezed to half width by averaging column
/// pairs (rounded half-up), giving a `width x height` frame; otherwise the
/// output is `2 * width` wide.
pub fn side_by_side(
    left: &ImageRGB8,
    right: &ImageRGB8,
    half: bool,
    exec: &Executor,
) -> Result<ImageRGB8> {
    check_dims(left.dims(), right.dims())?;
    let (w, h) = left.dims();
    if half && w % 2 != 0 {
        return Err(Error::OddWidth(w));
    }
    let out_w = if half { w } else { 2 * w };
    let mut out = ImageRGB8::new(out_w, h)?;
    let lp = left.planes();
    let rp = right.planes();
    exec.fill_rows3(out.planes_mut(), out_w, |y, rows| {
        let src = y * w..(y + 1) * w;
        for (c, row) in rows.into_iter().enumerate() {
            let (l, r) = (&lp[c][src.clone()], &rp[c][src.clone()]);
            if half {
                let (dl, dr) = row.split_at_mut(w / 2);
                squeeze(l, dl);
                squeeze(r, dr);
            } else {
                row[..w].copy_from_slice(l);
                row[w..].copy_from_slice(r);
            }
        }
    });
    Ok(out)
}

fn squeeze(src: &[u8], dst: &mut [u8]) {
    for (d, pair) in dst.iter_mut().zip(src.chunks_exact(2)) {
        *d = (pair[0] as u16 + pair[1] as u16).div_ceil(2) as u8;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(w: usize, h: usize, seed: u8) -> ImageRGB8 {
        let n = w * h;
        let p = |k: u8| (0..n).map(|i| (i as u8).wrapping_mul(k).wrapping_add(seed)).collect();
        ImageRGB8::from_planes(w, h, p(3), p(5), p(7)).unwrap()
    }

    #[test]
    fn anaglyph_routing() {
        let l = ImageRGB8::filled(3, 2, [255, 0, 0]).unwrap();
        let r = ImageRGB8::filled(3, 2, [0, 0, 255]).unwrap();
        assert_eq!(anaglyph(&l, &r).unwrap(), ImageRGB8::filled(3, 2, [255, 0, 255]).unwrap());
        let x = frame(5, 4, 9);
        assert_eq!(anaglyph(&x, &x).unwrap(), x);
    }

    #[test]
    fn full_sbs_concatenates() {
        let (l, r) = (frame(4, 2, 1), frame(4, 2, 100));
        let out = side_by_side(&l, &r, false, &Executor::serial()).unwrap();
        assert_eq!(out.dims(), (8, 2));
        assert_eq!(out.crop_columns(0, 4).unwrap(), l);
        assert_eq!(out.crop_columns(4, 4).unwrap(), r);
    }

    #[test]
    fn half_sbs_box_average() {
        let l = ImageRGB8::from_planes(2, 1, vec![10, 20], vec![0, 1], vec![255, 255]).unwrap();
        let r = ImageRGB8::from_planes(2, 1, vec![1, 2], vec![3, 4], vec![5, 6]).unwrap();
        let out = side_by_side(&l, &r, true, &Executor::serial()).unwrap();
        assert_eq!(out.dims(), (2, 1));
        assert_eq!(out.get(0, 0), [15, 1, 255]);
        assert_eq!(out.get(1, 0), [2, 4, 6]);
    }

    #[test]
    fn half_sbs_keeps_dims() {
        let (l, r) = (frame(10, 3, 1), frame(10, 3, 2));
        let out = side_by_side(&l, &r, true, &Executor::new(2).unwrap()).unwrap();
        assert_eq!(out.dims(), (10, 3));
    }

    #[test]
    fn errors() {
        let (l, r) = (frame(5, 2, 0), frame(5, 2, 0));
        assert!(matches!(
            side_by_side(&l, &r, true, &Executor::serial()),
            Err(Error::OddWidth(5))
        ));
        assert!(side_by_side(&l, &r, false, &Executor::serial()).is_ok());
        let other = frame(5, 3, 0);
        assert!(anaglyph(&l, &other).is_err());
        assert!(side_by_side(&l, &other, false, &Executor::serial()).is_err());
    }
}
