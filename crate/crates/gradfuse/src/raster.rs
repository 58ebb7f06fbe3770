//! Image containers and the elementary pixel arithmetic shared by the whole
//! pipeline.
//!
//! Samples are kept as real values end to end; quantization to 8 bits happens
//! only when a file is written. All containers are immutable value objects
//! once built, so they can be shared freely across threads.

use crate::error::{Error, Result};
use crate::exec;

/// Intensity ceiling of 8-bit sources.
pub const DEFAULT_MAX_LEVEL: f64 = 255.0;

/// Single-channel image with real-valued samples in `[0, max_level]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    max_level: f64,
    data: Vec<f64>,
}

impl GrayImage {
    /// All-zero image with the default 255 intensity ceiling.
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions(width, height));
        }
        Ok(Self {
            width,
            height,
            max_level: DEFAULT_MAX_LEVEL,
            data: vec![0.0; width * height],
        })
    }

    pub fn from_raw(width: usize, height: usize, max_level: f64, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Err(Error::InvalidDimensions(width, height));
        }
        if !(max_level > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "max_level must be positive, got {max_level}"
            )));
        }
        debug_assert!(data.iter().all(|s| s.is_finite() && *s >= 0.0 && *s <= max_level));
        Ok(Self { width, height, max_level, data })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::from_raw(width, height, DEFAULT_MAX_LEVEL, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn max_level(&self) -> f64 {
        self.max_level
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    /// Sample with coordinates clamped to the image bounds.
    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> f64 {
        let cx = x.clamp(0, self.width as isize - 1) as usize;
        let cy = y.clamp(0, self.height as isize - 1) as usize;
        self.data[cy * self.width + cx]
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn same_dims(&self, other: &GrayImage) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Bilinear resample to `w x h` with pixel-center alignment.
    pub fn resize_to(&self, w: usize, h: usize) -> Result<GrayImage> {
        if w == 0 || h == 0 {
            return Err(Error::InvalidDimensions(w, h));
        }
        if w == self.width && h == self.height {
            return Ok(self.clone());
        }
        let sx = self.width as f64 / w as f64;
        let sy = self.height as f64 / h as f64;
        let data = exec::flat_map_rows(h, |y| {
            let fy = ((y as f64 + 0.5) * sy - 0.5).clamp(0.0, self.height as f64 - 1.0);
            let y0 = fy.floor() as usize;
            let y1 = (y0 + 1).min(self.height - 1);
            let ty = fy - y0 as f64;
            let mut row = Vec::with_capacity(w);
            for x in 0..w {
                let fx = ((x as f64 + 0.5) * sx - 0.5).clamp(0.0, self.width as f64 - 1.0);
                let x0 = fx.floor() as usize;
                let x1 = (x0 + 1).min(self.width - 1);
                let tx = fx - x0 as f64;
                let top = self.get(x0, y0) * (1.0 - tx) + self.get(x1, y0) * tx;
                let bot = self.get(x0, y1) * (1.0 - tx) + self.get(x1, y1) * tx;
                row.push((top * (1.0 - ty) + bot * ty).clamp(0.0, self.max_level));
            }
            row
        });
        GrayImage::from_raw(w, h, self.max_level, data)
    }

    /// Quantizes to 8-bit levels by rounding, for file output.
    pub fn to_u8(&self) -> Vec<u8> {
        let scale = 255.0 / self.max_level;
        self.data
            .iter()
            .map(|&s| (s * scale).round().clamp(0.0, 255.0) as u8)
            .collect()
    }

    /// Min-max normalizes into `[0, 255]`; a flat image maps to all-zero.
    pub fn normalize_minmax(&self) -> GrayImage {
        let lo = self.data.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = self.data.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let span = hi - lo;
        let data = if span <= 0.0 {
            vec![0.0; self.data.len()]
        } else {
            self.data.iter().map(|&s| (s - lo) / span * 255.0).collect()
        };
        GrayImage {
            width: self.width,
            height: self.height,
            max_level: DEFAULT_MAX_LEVEL,
            data,
        }
    }
}

/// Three-plane color image; all planes share dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorImage {
    pub r: GrayImage,
    pub g: GrayImage,
    pub b: GrayImage,
}

impl ColorImage {
    pub fn new(r: GrayImage, g: GrayImage, b: GrayImage) -> Result<Self> {
        if !r.same_dims(&g) || !r.same_dims(&b) {
            return Err(Error::DimensionMismatch(r.width, r.height, g.width, g.height));
        }
        Ok(Self { r, g, b })
    }

    pub fn width(&self) -> usize {
        self.r.width
    }

    pub fn height(&self) -> usize {
        self.r.height
    }

    /// Rec.601 luma: `0.299 R + 0.587 G + 0.114 B`.
    pub fn luma(&self) -> GrayImage {
        let max = self.r.max_level;
        let data = self
            .r
            .data
            .iter()
            .zip(&self.g.data)
            .zip(&self.b.data)
            .map(|((&r, &g), &b)| (0.299 * r + 0.587 * g + 0.114 * b).clamp(0.0, max))
            .collect();
        GrayImage {
            width: self.r.width,
            height: self.r.height,
            max_level: max,
            data,
        }
    }

    pub fn resize_to(&self, w: usize, h: usize) -> Result<ColorImage> {
        ColorImage::new(
            self.r.resize_to(w, h)?,
            self.g.resize_to(w, h)?,
            self.b.resize_to(w, h)?,
        )
    }
}

/// Decoded image of either kind.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedImage {
    Gray(GrayImage),
    Color(ColorImage),
}

impl LoadedImage {
    pub fn width(&self) -> usize {
        match self {
            LoadedImage::Gray(g) => g.width(),
            LoadedImage::Color(c) => c.width(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            LoadedImage::Gray(g) => g.height(),
            LoadedImage::Color(c) => c.height(),
        }
    }

    pub fn resize_to(&self, w: usize, h: usize) -> Result<LoadedImage> {
        Ok(match self {
            LoadedImage::Gray(g) => LoadedImage::Gray(g.resize_to(w, h)?),
            LoadedImage::Color(c) => LoadedImage::Color(c.resize_to(w, h)?),
        })
    }

    /// Luma plane; a gray image is its own luma.
    pub fn luma(&self) -> GrayImage {
        match self {
            LoadedImage::Gray(g) => g.clone(),
            LoadedImage::Color(c) => c.luma(),
        }
    }
}

/// Binary image over `{0, 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl BinaryImage {
    pub fn from_raw(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Err(Error::InvalidDimensions(width, height));
        }
        if data.iter().any(|&v| v > 1) {
            return Err(Error::CorruptData("binary image sample outside {0,1}".into()));
        }
        Ok(Self { width, height, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    /// Scales `{0,1}` to `{0, max_level}` intensities.
    pub fn to_gray(&self, max_level: f64) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            max_level,
            data: self.data.iter().map(|&v| v as f64 * max_level).collect(),
        }
    }
}

/// Signed 2-D matrix produced by the gradient transform.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientImage {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl GradientImage {
    pub fn from_raw(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || data.len() != width * height {
            return Err(Error::InvalidDimensions(width, height));
        }
        Ok(Self { width, height, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn get_clamped(&self, x: isize, y: isize) -> f64 {
        let cx = x.clamp(0, self.width as isize - 1) as usize;
        let cy = y.clamp(0, self.height as isize - 1) as usize;
        self.data[cy * self.width + cx]
    }

    /// Signed values shifted and scaled into a viewable gray image.
    pub fn to_viewable(&self) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            max_level: DEFAULT_MAX_LEVEL,
            data: self.data.clone(),
        }
        .normalize_minmax()
    }
}

/// Which source supplied a fused pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum SourceLabel {
    A,
    B,
}

/// Per-pixel provenance of the fused image.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMap {
    width: usize,
    height: usize,
    labels: Vec<SourceLabel>,
}

impl DecisionMap {
    pub fn from_labels(width: usize, height: usize, labels: Vec<SourceLabel>) -> Result<Self> {
        if width == 0 || height == 0 || labels.len() != width * height {
            return Err(Error::InvalidDimensions(width, height));
        }
        Ok(Self { width, height, labels })
    }

    pub fn filled(width: usize, height: usize, label: SourceLabel) -> Result<Self> {
        Self::from_labels(width, height, vec![label; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[SourceLabel] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> SourceLabel {
        self.labels[y * self.width + x]
    }

    /// Two-tone rendering (A -> 0, B -> 255) for map dumps.
    pub fn to_gray(&self) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            max_level: DEFAULT_MAX_LEVEL,
            data: self
                .labels
                .iter()
                .map(|l| match l {
                    SourceLabel::A => 0.0,
                    SourceLabel::B => 255.0,
                })
                .collect(),
        }
    }
}

/// Per-pixel absolute difference, used to build error images.
pub fn subtract_abs(a: &GrayImage, b: &GrayImage) -> Result<GrayImage> {
    if !a.same_dims(b) {
        return Err(Error::DimensionMismatch(a.width, a.height, b.width, b.height));
    }
    let data = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(&x, &y)| (x - y).abs())
        .collect();
    Ok(GrayImage {
        width: a.width,
        height: a.height,
        max_level: a.max_level.max(b.max_level),
        data,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(w: usize, h: usize, data: Vec<f64>) -> GrayImage {
        GrayImage::from_raw(w, h, DEFAULT_MAX_LEVEL, data).unwrap()
    }

    #[test]
    fn luma_weights() {
        let white = ColorImage::new(
            GrayImage::filled(2, 2, 255.0).unwrap(),
            GrayImage::filled(2, 2, 255.0).unwrap(),
            GrayImage::filled(2, 2, 255.0).unwrap(),
        )
        .unwrap();
        assert!(white.luma().data().iter().all(|&v| (v - 255.0).abs() < 1e-9));

        let black = ColorImage::new(
            GrayImage::filled(2, 2, 0.0).unwrap(),
            GrayImage::filled(2, 2, 0.0).unwrap(),
            GrayImage::filled(2, 2, 0.0).unwrap(),
        )
        .unwrap();
        assert!(black.luma().data().iter().all(|&v| v == 0.0));

        let red = ColorImage::new(
            GrayImage::filled(1, 1, 255.0).unwrap(),
            GrayImage::filled(1, 1, 0.0).unwrap(),
            GrayImage::filled(1, 1, 0.0).unwrap(),
        )
        .unwrap();
        assert!((red.luma().get(0, 0) - 76.245).abs() < 1e-9);
    }

    #[test]
    fn resize_identity_is_bit_exact() {
        let img = gray(4, 4, (0..16).map(|v| v as f64 * 17.0).collect());
        let same = img.resize_to(4, 4).unwrap();
        assert_eq!(img, same);
    }

    #[test]
    fn resize_constant_stays_constant() {
        let img = GrayImage::filled(7, 5, 100.0).unwrap();
        for (w, h) in [(3, 3), (14, 10), (5, 9)] {
            let out = img.resize_to(w, h).unwrap();
            assert!(out.data().iter().all(|&v| (v - 100.0).abs() < 1e-9));
        }
    }

    #[test]
    fn resize_matches_reference_bilinear_on_sampled_pixels() {
        // 512x512 checkerboard of 0/255 with 8px squares, downsampled to 256x256.
        let w = 512;
        let data: Vec<f64> = (0..w * w)
            .map(|i| {
                let (x, y) = (i % w, i / w);
                if ((x / 8) + (y / 8)) % 2 == 0 {
                    0.0
                } else {
                    255.0
                }
            })
            .collect();
        let img = gray(w, w, data.clone());
        let out = img.resize_to(256, 256).unwrap();

        // Independent oracle: direct bilinear interpolation at pixel centers.
        let oracle = |dx: usize, dy: usize| -> f64 {
            let src = |x: usize, y: usize| data[y * w + x];
            let fx = ((dx as f64 + 0.5) * 2.0 - 0.5).clamp(0.0, (w - 1) as f64);
            let fy = ((dy as f64 + 0.5) * 2.0 - 0.5).clamp(0.0, (w - 1) as f64);
            let (x0, y0) = (fx.floor() as usize, fy.floor() as usize);
            let (x1, y1) = ((x0 + 1).min(w - 1), (y0 + 1).min(w - 1));
            let (tx, ty) = (fx - x0 as f64, fy - y0 as f64);
            (src(x0, y0) * (1.0 - tx) + src(x1, y0) * tx) * (1.0 - ty)
                + (src(x0, y1) * (1.0 - tx) + src(x1, y1) * tx) * ty
        };
        for (x, y) in [(0, 0), (3, 200), (127, 128), (255, 255), (64, 7)] {
            assert!((out.get(x, y) - oracle(x, y)).abs() < 1e-9, "pixel ({x},{y})");
        }
    }

    #[test]
    fn subtract_abs_basics() {
        let a = GrayImage::filled(3, 3, 200.0).unwrap();
        let b = GrayImage::filled(3, 3, 50.0).unwrap();
        let d = subtract_abs(&a, &b).unwrap();
        assert!(d.data().iter().all(|&v| (v - 150.0).abs() < 1e-12));

        let same = subtract_abs(&a, &a).unwrap();
        assert!(same.data().iter().all(|&v| v == 0.0));

        let c = GrayImage::filled(2, 3, 0.0).unwrap();
        assert!(matches!(
            subtract_abs(&a, &c),
            Err(Error::DimensionMismatch(..))
        ));
    }

    #[test]
    fn normalize_minmax_flat_and_span() {
        let flat = GrayImage::filled(2, 2, 77.0).unwrap();
        assert!(flat.normalize_minmax().data().iter().all(|&v| v == 0.0));

        let img = gray(2, 2, vec![10.0, 20.0, 30.0, 40.0]);
        let n = img.normalize_minmax();
        assert_eq!(n.get(0, 0), 0.0);
        assert_eq!(n.get(1, 1), 255.0);
    }

    #[test]
    fn binary_image_rejects_non_binary() {
        assert!(BinaryImage::from_raw(2, 1, vec![0, 2]).is_err());
        assert!(BinaryImage::from_raw(2, 1, vec![0, 1]).is_ok());
    }
}
