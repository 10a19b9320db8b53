use std::fmt;

use crate::exact::{ChartSpec, Point};

use super::RealizationError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Genus0TwoPoint,
    Genus0MultiPoint,
    Imported,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Backend::Genus0TwoPoint => "genus0-two-point",
            Backend::Genus0MultiPoint => "genus0-multi-point",
            Backend::Imported => "imported",
        };
        f.write_str(s)
    }
}

/// Which family of residues realizes the level-line integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    In,
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationSpec {
    pub genus: u32,
    pub in_points: Vec<ChartSpec>,
    pub out_points: Vec<ChartSpec>,
    pub backend: Backend,
    /// Orders past the leading one kept when expansions are materialized
    /// (export, imported windows). Genus-0 backends expand on demand and only
    /// use this as a default.
    pub expansion_depth: i64,
}

impl RealizationSpec {
    /// `P+ = 0`, `P- = ∞`.
    pub fn two_point(expansion_depth: i64) -> Self {
        RealizationSpec {
            genus: 0,
            in_points: vec![ChartSpec::at_zero()],
            out_points: vec![ChartSpec::at_infinity()],
            backend: Backend::Genus0TwoPoint,
            expansion_depth,
        }
    }

    pub fn multi_point(
        in_points: Vec<Point>,
        out_points: Vec<Point>,
        expansion_depth: i64,
    ) -> Result<Self, RealizationError> {
        let spec = RealizationSpec {
            genus: 0,
            in_points: in_points.into_iter().map(ChartSpec::new).collect(),
            out_points: out_points.into_iter().map(ChartSpec::new).collect(),
            backend: Backend::Genus0MultiPoint,
            expansion_depth,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Number of in-points (the branch count `K`).
    pub fn branches(&self) -> usize {
        self.in_points.len()
    }

    pub fn all_points(&self) -> impl Iterator<Item = &ChartSpec> {
        self.in_points.iter().chain(self.out_points.iter())
    }

    pub fn validate(&self) -> Result<(), RealizationError> {
        let mut seen: Vec<&ChartSpec> = Vec::new();
        for c in self.all_points() {
            if seen.contains(&c) {
                return Err(RealizationError::Spec(format!("point {c} declared twice")));
            }
            seen.push(c);
        }
        if self.in_points.is_empty() || self.out_points.is_empty() {
            return Err(RealizationError::Spec("in- and out-point sets must be non-empty".into()));
        }
        match self.backend {
            Backend::Genus0TwoPoint => {
                if self.genus != 0 || self.in_points.len() != 1 || self.out_points.len() != 1 {
                    return Err(RealizationError::Spec(
                        "genus0-two-point needs genus 0 and exactly one in- and one out-point".into(),
                    ));
                }
            }
            Backend::Genus0MultiPoint => {
                if self.genus != 0 {
                    return Err(RealizationError::Spec("genus0-multi-point needs genus 0".into()));
                }
                if self.in_points.len() != self.out_points.len() {
                    return Err(RealizationError::Spec(format!(
                        "unequal split |I| = {} vs |O| = {} is not supported",
                        self.in_points.len(),
                        self.out_points.len()
                    )));
                }
            }
            Backend::Imported => {}
        }
        Ok(())
    }

    /// Prescribed order of `f^λ_{n,p}` at each point for the genus-0 backends:
    /// `(n+1-λ) - δ_{ip}` at in-point `i`, `-(n+1-λ)` at the first `K-1`
    /// out-points and `-(n+1-λ) - (2λ-1)` at the last one.
    pub fn prescribed_order(&self, weight: i64, n: i64, p: usize, point: &ChartSpec) -> Option<i64> {
        let base = n + 1 - weight;
        if let Some(i) = self.in_points.iter().position(|c| c == point) {
            return Some(base - i64::from(i + 1 == p));
        }
        let k = self.out_points.len();
        let j = self.out_points.iter().position(|c| c == point)?;
        if j + 1 < k {
            Some(-base)
        } else {
            Some(-base - (2 * weight - 1) * (1 - self.genus as i64))
        }
    }
}
