use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// One edge of a Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "crate::ordvals::rational_string")]
    pub slope: BigRational,
    pub length: usize,
}

/// Lower convex hull of the points `(i, v(c_i))` of the nonzero coefficients,
/// as edges from left to right (slopes strictly increasing).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// `points` must have strictly increasing abscissae.
    pub fn from_points(points: &[(usize, BigRational)]) -> Self {
        let mut hull: Vec<&(usize, BigRational)> = Vec::new();
        for pt in points {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                // Drop b unless it lies strictly below the chord a-pt.
                let lhs = (&b.1 - &a.1) * BigRational::from_integer((pt.0 - a.0).into());
                let rhs = (&pt.1 - &a.1) * BigRational::from_integer((b.0 - a.0).into());
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let len = w[1].0 - w[0].0;
                Segment {
                    slope: (&w[1].1 - &w[0].1) / BigRational::from_integer(len.into()),
                    length: len,
                }
            })
            .collect();
        NewtonPolygon { segments }
    }

    /// Values of the roots, `-slope` with multiplicity `length`, largest first.
    pub fn root_values(&self) -> Vec<(BigRational, usize)> {
        self.segments.iter().map(|s| (-s.slope.clone(), s.length)).collect()
    }

    pub fn is_single_slope(&self) -> bool {
        self.segments.len() == 1
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.segments.iter().map(|s| format!("slope {} x{}", s.slope, s.length)).collect();
        if parts.is_empty() {
            write!(f, "empty")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}
