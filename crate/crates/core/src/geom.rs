//! Scan geometry and the dense grid types moved between pipeline stages.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Parallel-beam scan description: `n_angles` equally spaced views over
/// `[0, pi)`, each with `n_bins` detector bins.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    pub image_side: usize,
    pub n_angles: usize,
    pub n_bins: usize,
    pub pixel_size: f64,
    pub detector_spacing: f64,
}

impl Geometry {
    /// Geometry with an explicit bin count.
    pub fn new(image_side: usize, n_angles: usize, n_bins: usize) -> Result<Self> {
        let g = Geometry {
            image_side,
            n_angles,
            n_bins,
            pixel_size: 1.0,
            detector_spacing: 1.0,
        };
        g.validate()?;
        Ok(g)
    }

    /// Geometry whose detector spans the image diagonal, so no mass leaves
    /// the field of view.
    pub fn with_default_bins(image_side: usize, n_angles: usize) -> Result<Self> {
        let n_bins = (2f64.sqrt() * image_side as f64).ceil() as usize;
        Self::new(image_side, n_angles, n_bins)
    }

    fn validate(&self) -> Result<()> {
        if self.image_side < 2 {
            return Err(Error::InvalidArgument("image_side must be >= 2".into()));
        }
        if self.n_angles < 1 {
            return Err(Error::InvalidArgument("n_angles must be >= 1".into()));
        }
        if self.n_bins < self.image_side {
            return Err(Error::InvalidArgument(format!(
                "n_bins ({}) must be >= image_side ({})",
                self.n_bins, self.image_side
            )));
        }
        if self.pixel_size <= 0.0 || self.detector_spacing <= 0.0 {
            return Err(Error::InvalidArgument("spacings must be positive".into()));
        }
        Ok(())
    }

    /// View angle for index `k`: exactly `k * pi / n_angles`.
    pub fn angle(&self, k: usize) -> f64 {
        k as f64 * std::f64::consts::PI / self.n_angles as f64
    }

    /// Detector coordinate of bin `j`, centred on the rotation axis.
    pub fn bin_position(&self, j: usize) -> f64 {
        (j as f64 - (self.n_bins as f64 - 1.0) / 2.0) * self.detector_spacing
    }

    /// Total number of measurement bins `m = n_angles * n_bins`.
    pub fn total_bins(&self) -> usize {
        self.n_angles * self.n_bins
    }
}

/// Nonnegative 2D attenuation map.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    values: Array2<f64>,
}

impl Image {
    pub fn new(values: Array2<f64>) -> Result<Self> {
        if values.nrows() != values.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "image must be square, got {}x{}",
                values.nrows(),
                values.ncols()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("image contains non-finite values".into()));
        }
        Ok(Image { values })
    }

    pub fn zeros(side: usize) -> Self {
        Image {
            values: Array2::zeros((side, side)),
        }
    }

    pub fn side(&self) -> usize {
        self.values.nrows()
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut Array2<f64> {
        &mut self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    /// Clamp all entries to `>= 0`.
    pub fn clip_nonneg(mut self) -> Self {
        self.values.mapv_inplace(|v| v.max(0.0));
        self
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn norm_l2(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Semantics of the values held in a [`Sinogram`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Raw line integrals `(phi x)_i`.
    LineIntegral,
    /// Detector counts, possibly negative after Gaussian corruption.
    Counts,
    /// Hypothesis-test outputs in `[0, 1]`.
    PValue,
    /// Post-log measurements `-log((y + eps) / i0)`.
    Linearized,
}

impl Stage {
    pub fn tag(&self) -> &'static str {
        match self {
            Stage::LineIntegral => "line-integral",
            Stage::Counts => "counts",
            Stage::PValue => "p-value",
            Stage::Linearized => "linearized",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "line-integral" => Ok(Stage::LineIntegral),
            "counts" => Ok(Stage::Counts),
            "p-value" => Ok(Stage::PValue),
            "linearized" => Ok(Stage::Linearized),
            other => Err(Error::Format(format!("unknown sinogram stage '{other}'"))),
        }
    }
}

/// Per-(angle, bin) measurement grid. Rows index view angles, columns index
/// detector bins.
#[derive(Debug, Clone, PartialEq)]
pub struct Sinogram {
    values: Array2<f64>,
    stage: Stage,
}

impl Sinogram {
    pub fn new(values: Array2<f64>, stage: Stage) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("sinogram contains non-finite values".into()));
        }
        if stage == Stage::PValue && values.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
            return Err(Error::InvalidArgument(
                "p-value sinogram entries must lie in [0, 1]".into(),
            ));
        }
        Ok(Sinogram { values, stage })
    }

    pub fn zeros(n_angles: usize, n_bins: usize, stage: Stage) -> Self {
        Sinogram {
            values: Array2::zeros((n_angles, n_bins)),
            stage,
        }
    }

    pub fn n_angles(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_bins(&self) -> usize {
        self.values.ncols()
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut Array2<f64> {
        &mut self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    /// Reinterpret the same grid under a different stage tag.
    pub fn with_stage(mut self, stage: Stage) -> Self {
        self.stage = stage;
        self
    }

    pub fn matches(&self, geom: &Geometry) -> bool {
        self.n_angles() == geom.n_angles && self.n_bins() == geom.n_bins
    }

    pub fn check_matches(&self, geom: &Geometry) -> Result<()> {
        if !self.matches(geom) {
            return Err(Error::DimensionMismatch(format!(
                "sinogram is {}x{}, geometry expects {}x{}",
                self.n_angles(),
                self.n_bins(),
                geom.n_angles,
                geom.n_bins
            )));
        }
        Ok(())
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_rejects_degenerate_sizes() {
        assert!(Geometry::new(1, 10, 10).is_err());
        assert!(Geometry::new(8, 0, 12).is_err());
        assert!(Geometry::new(8, 10, 7).is_err());
        assert!(Geometry::new(8, 10, 8).is_ok());
    }

    #[test]
    fn default_bins_cover_diagonal() {
        let g = Geometry::with_default_bins(64, 60).unwrap();
        assert!(g.n_bins as f64 >= 2f64.sqrt() * 64.0);
        // angles are exactly k*pi/Q
        assert_eq!(g.angle(0), 0.0);
        assert!((g.angle(30) - std::f64::consts::PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn pvalue_stage_range_checked() {
        let bad = Array2::from_elem((2, 4), 1.5);
        assert!(Sinogram::new(bad, Stage::PValue).is_err());
        let ok = Array2::from_elem((2, 4), 0.5);
        assert!(Sinogram::new(ok, Stage::PValue).is_ok());
    }

    #[test]
    fn counts_may_be_negative() {
        let v = Array2::from_elem((2, 4), -0.5);
        assert!(Sinogram::new(v, Stage::Counts).is_ok());
    }
}
