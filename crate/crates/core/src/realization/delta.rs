//! Truncated delta distribution `Δ_N(Q', Q) = Σ_{|n|≤N, p} A_{n,p}(Q') ω^{n,p}(Q)`
//! and its reproducing pairing.

use num_traits::{One, Zero};

use crate::exact::{ChartSpec, Point, Scalar};

use super::basis::Label;
use super::integrand::LocalExpr;
use super::{Realization, RealizationError};

/// Which slot of `Δ_N` is paired against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// Integrate a function `f(Q)` against `ω^{n,p}(Q)`; result in `A_{n,p}(Q')`.
    First,
    /// Integrate a 1-form `ω(Q')` against `A_{n,p}(Q')`; result in `ω^{n,p}(Q)`.
    Second,
}

#[derive(Clone, Debug)]
pub struct DeltaTruncated {
    pub bound: i64,
    pub labels: Vec<Label>,
}

/// First nonzero coefficient of `input − reconstruction`, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub point: Point,
    pub order: i64,
    pub value: Scalar,
}

#[derive(Clone, Debug)]
pub struct DeltaPairing {
    pub slot: Slot,
    /// Nonzero coefficients of the reconstruction in the basis of the free slot.
    pub coefficients: Vec<(Label, Scalar)>,
    pub defect: Option<Defect>,
}

impl DeltaPairing {
    pub fn reproduces_input(&self) -> bool {
        self.defect.is_none()
    }
}

pub fn delta_truncated(real: &Realization, bound: i64) -> DeltaTruncated {
    let labels = (-bound..=bound).flat_map(|n| real.labels(n)).collect();
    DeltaTruncated { bound, labels }
}

impl DeltaTruncated {
    /// Pair `input` (a function for [`Slot::First`], a 1-form for
    /// [`Slot::Second`]) against the truncation and compare the result with
    /// the input at every marked point through `check_depth` orders past the
    /// leading one.
    pub fn pair(
        &self,
        real: &Realization,
        slot: Slot,
        input: &LocalExpr,
        check_depth: i64,
    ) -> Result<DeltaPairing, RealizationError> {
        let mut coefficients = Vec::new();
        let mut terms = Vec::new();
        for &l in &self.labels {
            let (dual, free) = match slot {
                Slot::First => (real.omega(l)?, real.a(l)?),
                Slot::Second => (real.a(l)?, real.omega(l)?),
            };
            let c = real.integrate_either(&input.clone().times(dual))?;
            if !c.is_zero() {
                coefficients.push((l, c.clone()));
                terms.push((c, free));
            }
        }
        let diff = LocalExpr::lin(vec![
            (Scalar::one(), input.clone()),
            (-Scalar::one(), LocalExpr::lin(terms)),
        ]);
        let mut defect = None;
        for chart in real.spec().all_points() {
            let Some(v) = diff.valuation(&chart.point) else { continue };
            let hi = v.max(-v) + check_depth;
            let e = diff.expand(&ChartSpec::new(chart.point.clone()), hi)?;
            if let Some((order, value)) = e.leading() {
                defect = Some(Defect { point: chart.point.clone(), order, value: value.clone() });
                break;
            }
        }
        Ok(DeltaPairing { slot, coefficients, defect })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    #[test]
    fn reproduces_in_range_function() {
        let r = Realization::two_point();
        let delta = delta_truncated(&r, 5);
        let out = delta.pair(&r, Slot::First, &r.a(Label::two_point(3)).unwrap(), 6).unwrap();
        assert!(out.reproduces_input());
        assert_eq!(out.coefficients, vec![(Label::two_point(3), int(1))]);
    }

    #[test]
    fn reproduces_form_in_second_slot() {
        let r = Realization::two_point();
        let delta = delta_truncated(&r, 5);
        let out = delta.pair(&r, Slot::Second, &r.omega(Label::two_point(2)).unwrap(), 6).unwrap();
        assert!(out.reproduces_input());
        assert_eq!(out.coefficients, vec![(Label::two_point(2), int(1))]);
    }

    #[test]
    fn out_of_window_reports_defect() {
        let r = Realization::two_point();
        let delta = delta_truncated(&r, 5);
        let out = delta.pair(&r, Slot::First, &r.a(Label::two_point(7)).unwrap(), 6).unwrap();
        let d = out.defect.expect("defect");
        assert_eq!(d.order, 7);
        assert_eq!(d.value, int(1));
    }
}
