//! JSON input formats for domains and foliation curves.
//!
//! ```json
//! {"model": "ads", "n": 3, "points": [{"p": [1.0, 0.0], "theta": 0.0}]}
//! {"model": "ds", "n": 3, "marks": [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]}
//! {"curve": [{"t": 0.0, "v": [1.0, 0.0, 0.0, 0.0]}]}
//! ```

use serde::{Deserialize, Serialize};

use crate::ads::domain::{AchronalData, AdsDomain, BoundaryPoint};
use crate::curvature::DomainRef;
use crate::ds::domain::DsBoundarySet;
use crate::error::{GeometryError, Result};
use crate::foliation::{CurveSample, FoliationCurve};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum DomainSpec {
    Ads { n: usize, points: Vec<BoundaryPoint<f64>> },
    Ds { n: usize, marks: Vec<Vec<f64>> },
}

/// A validated domain of either model.
#[derive(Clone, Debug)]
pub enum Domain<T> {
    Ads(AdsDomain<T>),
    Ds(DsBoundarySet<T>),
}

impl<T: Real> Domain<T> {
    pub fn as_ref(&self) -> DomainRef<'_, T> {
        match self {
            Domain::Ads(d) => DomainRef::Ads(d),
            Domain::Ds(d) => DomainRef::Ds(d),
        }
    }

    pub fn n(&self) -> usize {
        self.as_ref().n()
    }
}

fn parse<'a, D: Deserialize<'a>>(text: &'a str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| {
        GeometryError::InvalidInput(format!("line {}, column {}: {e}", e.line(), e.column()))
    })
}

impl DomainSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn n(&self) -> usize {
        match self {
            DomainSpec::Ads { n, .. } | DomainSpec::Ds { n, .. } => *n,
        }
    }

    pub fn build<T: Real>(&self) -> Result<Domain<T>> {
        match self {
            DomainSpec::Ads { n, points } => {
                let points = points
                    .iter()
                    .map(|b| BoundaryPoint { p: b.p.iter().map(|&c| T::lit(c)).collect(), theta: T::lit(b.theta) })
                    .collect();
                Ok(Domain::Ads(AdsDomain::new(AchronalData::new(*n, points)?)?))
            }
            DomainSpec::Ds { n, marks } => {
                let marks = marks.iter().map(|m| m.iter().map(|&c| T::lit(c)).collect()).collect();
                Ok(Domain::Ds(DsBoundarySet::new(*n, marks)?))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub curve: Vec<CurveSample<f64>>,
}

impl CurveSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        parse(text)
    }

    pub fn build<T: Real>(&self) -> Result<FoliationCurve<T>> {
        let samples: Vec<CurveSample<T>> = self
            .curve
            .iter()
            .map(|s| CurveSample { t: T::lit(s.t), v: s.v.iter().map(|&c| T::lit(c)).collect() })
            .collect();
        FoliationCurve::from_samples(&samples)
    }
}
