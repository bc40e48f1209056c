use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How left/right frames are built from the source and depth map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DibrMode {
    /// Splat source pixels to shifted columns; unwritten pixels are damaged.
    #[default]
    ForwardZBuffer,
    /// Sample the source at shifted columns, falling back to the unshifted
    /// pixel when the sample column is out of range. Never leaves holes.
    BackwardFallback,
}

impl FromStr for DibrMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "forward" | "forward_zbuffer" => Ok(Self::ForwardZBuffer),
            "backward" | "backward_fallback" => Ok(Self::BackwardFallback),
            _ => Err(format!("unknown mode '{s}' (expected forward or backward)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputFormat {
    Anaglyph,
    /// Half side-by-side: each eye squeezed to half width.
    Hsbs,
    /// Full side-by-side: double-width frame.
    Fsbs,
}

impl OutputFormat {
    pub const ALL: [OutputFormat; 3] = [Self::Anaglyph, Self::Hsbs, Self::Fsbs];

    pub fn name(self) -> &'static str {
        match self {
            Self::Anaglyph => "anaglyph",
            Self::Hsbs => "hsbs",
            Self::Fsbs => "fsbs",
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown format '{s}' (expected anaglyph, hsbs or fsbs)"))
    }
}

/// Every tunable of the conversion pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct ConversionConfig {
    /// Stereo base in pixels. `None` derives it from the frame width, see
    /// [`ConversionConfig::default_base`].
    pub base: Option<u32>,
    /// Depth above which a pixel pops out in front of the screen plane.
    pub pop_threshold: u8,
    pub sigma_spatial: f64,
    /// Range sigma in luma units.
    pub sigma_range: f64,
    pub depth_block: usize,
    pub inpaint_block: usize,
    /// Weight of the vertical ground-plane ramp in depth generation.
    pub alpha: f64,
    /// Weight of block edge density in depth generation.
    pub beta: f64,
    pub dibr_mode: DibrMode,
    pub output_formats: BTreeSet<OutputFormat>,
}

impl Default for ConversionConfig {
    fn default() -> Self {
        Self {
            base: None,
            pop_threshold: 150,
            sigma_spatial: 8.0,
            sigma_range: 16.0,
            depth_block: 16,
            inpaint_block: 64,
            alpha: 0.7,
            beta: 0.3,
            dibr_mode: DibrMode::default(),
            output_formats: BTreeSet::from([OutputFormat::Anaglyph]),
        }
    }
}

impl ConversionConfig {
    /// 30 px at 3840 wide, scaled linearly and kept even: `2 * round(width / 256)`.
    pub fn default_base(width: usize) -> u32 {
        2 * ((width as f64 / 256.0).round() as u32)
    }

    /// The stereo base actually used for a frame of the given width.
    pub fn base_for(&self, width: usize) -> u32 {
        self.base.unwrap_or_else(|| Self::default_base(width))
    }

    pub fn with_base(mut self, base: u32) -> Self {
        self.base = Some(base);
        self
    }

    pub fn with_mode(mut self, mode: DibrMode) -> Self {
        self.dibr_mode = mode;
        self
    }

    pub fn with_formats(mut self, formats: impl IntoIterator<Item = OutputFormat>) -> Self {
        self.output_formats = formats.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if let Some(b) = self.base {
            if b % 2 != 0 {
                return bad(format!("base must be even, got {b}"));
            }
        }
        if !(self.sigma_spatial > 0.0 && self.sigma_spatial.is_finite()) {
            return bad(format!("sigma_spatial must be > 0, got {}", self.sigma_spatial));
        }
        if !(self.sigma_range > 0.0 && self.sigma_range.is_finite()) {
            return bad(format!("sigma_range must be > 0, got {}", self.sigma_range));
        }
        if self.depth_block < 4 {
            return bad(format!("depth_block must be >= 4, got {}", self.depth_block));
        }
        if self.inpaint_block < 4 {
            return bad(format!("inpaint_block must be >= 4, got {}", self.inpaint_block));
        }
        if !(0.0..=1.0).contains(&self.alpha) || !(0.0..=1.0).contains(&self.beta) {
            return bad(format!(
                "alpha and beta must lie in [0, 1], got {} and {}",
                self.alpha, self.beta
            ));
        }
        if self.alpha + self.beta > 1.0 + 1e-12 {
            return bad(format!("alpha + beta must be <= 1, got {}", self.alpha + self.beta));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_base_scales_with_width() {
        assert_eq!(ConversionConfig::default_base(3840), 30);
        assert_eq!(ConversionConfig::default_base(1920), 16);
        assert_eq!(ConversionConfig::default_base(64), 0);
        for w in 1..5000 {
            assert_eq!(ConversionConfig::default_base(w) % 2, 0);
        }
    }

    #[test]
    fn defaults_validate() {
        ConversionConfig::default().validate().unwrap();
    }

    #[test]
    fn invalid_configs() {
        let c = ConversionConfig::default();
        assert!(c.clone().with_base(3).validate().is_err());
        assert!(ConversionConfig { sigma_spatial: 0.0, ..c.clone() }.validate().is_err());
        assert!(ConversionConfig { sigma_range: -1.0, ..c.clone() }.validate().is_err());
        assert!(ConversionConfig { depth_block: 3, ..c.clone() }.validate().is_err());
        assert!(ConversionConfig { inpaint_block: 2, ..c.clone() }.validate().is_err());
        assert!(ConversionConfig { alpha: 0.8, beta: 0.3, ..c.clone() }.validate().is_err());
        assert!(ConversionConfig { alpha: 1.2, beta: 0.0, ..c }.validate().is_err());
    }

    #[test]
    fn parse_enums() {
        assert_eq!("forward".parse::<DibrMode>().unwrap(), DibrMode::ForwardZBuffer);
        assert_eq!("backward".parse::<DibrMode>().unwrap(), DibrMode::BackwardFallback);
        assert!("sideways".parse::<DibrMode>().is_err());
        for f in OutputFormat::ALL {
            assert_eq!(f.name().parse::<OutputFormat>().unwrap(), f);
        }
    }
}
