use crate::error::{Error, Result};

/// Relative gap below which two neighbouring points count as coincident.
pub const MIN_RELATIVE_GAP: f64 = 1e-13;

/// Strictly increasing sampling points `a_1 < ... < a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    points: Vec<f64>,
}

impl PointConfig {
    /// Validates ordering and finiteness. A single point is allowed here;
    /// the energy routines require two or more.
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::TooFewPoints { min: 1, got: 0 });
        }
        if let Some(i) = points.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("point {i} is not finite")));
        }
        if let Some(i) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::Unordered(i));
        }
        Ok(PointConfig { points })
    }

    /// Sorts first; duplicates are still rejected.
    pub fn from_unsorted(mut points: Vec<f64>) -> Result<Self> {
        points.sort_by(f64::total_cmp);
        Self::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.points
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.points
    }

    /// Gaps `a_{i+1} - a_i`.
    pub fn gaps(&self) -> Vec<f64> {
        self.points.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Separation distance `min_i (a_{i+1} - a_i)`; `inf` for one point.
    pub fn separation(&self) -> f64 {
        self.gaps().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Fails if two neighbours are closer than `1e-13 * max(1, |a_i|)`.
    pub fn check_separation(&self) -> Result<()> {
        for (i, w) in self.points.windows(2).enumerate() {
            let gap = w[1] - w[0];
            let scale = w[0].abs().max(w[1].abs()).max(1.0);
            if gap < MIN_RELATIVE_GAP * scale {
                return Err(Error::Conditioning { index: i, gap });
            }
        }
        Ok(())
    }

    pub(crate) fn require_at_least(&self, min: usize) -> Result<()> {
        if self.len() < min {
            Err(Error::TooFewPoints { min, got: self.len() })
        } else {
            Ok(())
        }
    }
}

impl AsRef<[f64]> for PointConfig {
    fn as_ref(&self) -> &[f64] {
        &self.points
    }
}
