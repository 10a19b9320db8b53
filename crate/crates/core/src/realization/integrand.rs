//! Local expressions built from basis elements: products, derivatives, linear
//! combinations. Each node knows a lower bound for its order at a point, so an
//! expansion through order `hi` asks every factor for exactly the depth it
//! needs.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::exact::scalar::int;
use crate::exact::{ChartSpec, ExpansionError, LaurentExpansion, Point, Scalar};

use super::basis::BasisElement;

/// Valuation reported for factors that vanish identically at a point.
const VANISHING: i64 = 1 << 20;

#[derive(Clone, Debug)]
pub enum LocalExpr {
    Elem(Arc<BasisElement>),
    /// Derivative of the local representative in the chart coordinate.
    Deriv(Box<LocalExpr>),
    Prod(Vec<LocalExpr>),
    Lin(Vec<(Scalar, LocalExpr)>),
    /// Fixed expansions per point, e.g. a projective connection.
    Fixed(Arc<BTreeMap<Point, LaurentExpansion>>),
}

impl LocalExpr {
    pub fn elem(e: &Arc<BasisElement>) -> Self {
        LocalExpr::Elem(Arc::clone(e))
    }

    pub fn d(self) -> Self {
        LocalExpr::Deriv(Box::new(self))
    }

    pub fn prod(factors: Vec<LocalExpr>) -> Self {
        LocalExpr::Prod(factors)
    }

    pub fn times(self, other: LocalExpr) -> Self {
        match self {
            LocalExpr::Prod(mut v) => {
                v.push(other);
                LocalExpr::Prod(v)
            }
            s => LocalExpr::Prod(vec![s, other]),
        }
    }

    pub fn lin(terms: Vec<(Scalar, LocalExpr)>) -> Self {
        LocalExpr::Lin(terms)
    }

    /// Vector-field bracket `[e, f] = e f' - f e'`.
    pub fn vf_bracket(e: LocalExpr, f: LocalExpr) -> Self {
        LocalExpr::lin(vec![
            (Scalar::one(), e.clone().times(f.clone().d())),
            (int(-1), f.times(e.d())),
        ])
    }

    /// Lie derivative of a weight-`λ` form `g` along `e`: `e g' + λ g e'`.
    pub fn lie(e: LocalExpr, g: LocalExpr, weight: i64) -> Self {
        LocalExpr::lin(vec![
            (Scalar::one(), e.clone().times(g.clone().d())),
            (int(weight), g.times(e.d())),
        ])
    }

    /// Lower bound for the order at `point`; `None` if some factor is not
    /// defined there.
    pub fn valuation(&self, point: &Point) -> Option<i64> {
        match self {
            LocalExpr::Elem(e) => e.order_at(point),
            LocalExpr::Deriv(inner) => inner.valuation(point).map(|v| v - 1),
            LocalExpr::Prod(fs) => fs.iter().map(|f| f.valuation(point)).sum(),
            LocalExpr::Lin(ts) => ts.iter().map(|(_, t)| t.valuation(point)).try_fold(
                i64::MAX,
                |acc, v| v.map(|v| acc.min(v)),
            ),
            // an identically zero expansion has lo = hi + 1; cap it so sums stay finite
            LocalExpr::Fixed(m) => m.get(point).map(|e| e.window().0.min(VANISHING)),
        }
    }

    pub fn expand(&self, chart: &ChartSpec, hi: i64) -> Result<LaurentExpansion, ExpansionError> {
        let missing = || ExpansionError::InsufficientDepth {
            chart: chart.to_string(),
            needed: hi,
            have: i64::MIN,
        };
        match self {
            LocalExpr::Elem(e) => e.expand(chart, hi),
            LocalExpr::Deriv(inner) => Ok(inner.expand(chart, hi + 1)?.derivative()),
            LocalExpr::Prod(fs) => {
                let vals: Vec<i64> = fs
                    .iter()
                    .map(|f| f.valuation(&chart.point).ok_or_else(missing))
                    .collect::<Result<_, _>>()?;
                if vals.iter().any(|&v| v >= VANISHING) {
                    return Ok(LaurentExpansion::zero(chart.clone(), hi));
                }
                let total: i64 = vals.iter().sum();
                let mut acc = LaurentExpansion::monomial(chart.clone(), Scalar::one(), 0, hi - total);
                for (f, v) in fs.iter().zip(&vals) {
                    acc = acc.mul(&f.expand(chart, hi - (total - v))?)?;
                }
                acc.truncate(hi)
            }
            LocalExpr::Lin(ts) => {
                let mut acc = LaurentExpansion::zero(chart.clone(), hi);
                for (c, t) in ts {
                    acc = acc.add(&t.expand(chart, hi)?.scale(c))?;
                }
                Ok(acc)
            }
            LocalExpr::Fixed(m) => m.get(&chart.point).ok_or_else(missing)?.truncate(hi),
        }
    }
}
