//! Windowed Laurent expansions at a marked point.
//!
//! An expansion carries a window `[lo, hi]`: every coefficient of order below
//! `lo` is zero, coefficients of order `lo..=hi` are exact (a missing key means
//! an exact zero), and nothing is known above `hi`. Arithmetic keeps the widest
//! window on which the result is still provably exact.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::scalar::{int, parse_scalar, Scalar};

/// A marked point on the Riemann sphere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Finite(Scalar),
    Infinity,
}

impl Point {
    pub fn finite(x: Scalar) -> Self {
        Point::Finite(x)
    }

    pub fn int(n: i64) -> Self {
        Point::Finite(int(n))
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Point::Infinity),
            other => parse_scalar(other).map(Point::Finite),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(x) => write!(f, "{x}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

/// Local coordinate at a point: `z - a` at a finite point, `w = 1/z` at infinity.
/// Two charts at the same point are the same chart.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChartSpec {
    pub point: Point,
}

impl ChartSpec {
    pub fn new(point: Point) -> Self {
        ChartSpec { point }
    }

    pub fn at_zero() -> Self {
        ChartSpec::new(Point::int(0))
    }

    pub fn at_infinity() -> Self {
        ChartSpec::new(Point::Infinity)
    }

    /// Expansion of the factor `(dz)^λ` written in this chart's coordinate.
    /// Trivial at finite points; `(-w^{-2})^λ` at infinity. This is the only
    /// place the infinity sign convention lives.
    pub fn weight_factor(&self, weight: i64, hi: i64) -> LaurentExpansion {
        match self.point {
            Point::Finite(_) => LaurentExpansion::monomial(self.clone(), Scalar::one(), 0, hi),
            Point::Infinity => {
                let sign = if weight.rem_euclid(2) == 0 { 1 } else { -1 };
                LaurentExpansion::monomial(self.clone(), int(sign), -2 * weight, hi)
            }
        }
    }
}

impl fmt::Display for ChartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.point)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpansionError {
    #[error("expansions live at different points ({0} vs {1})")]
    MismatchedCharts(String, String),
    #[error("insufficient expansion depth at {chart}: need order {needed}, window ends at {have}")]
    InsufficientDepth { chart: String, needed: i64, have: i64 },
    #[error("coefficient of order {order} lies outside window [{lo}, {hi}]")]
    OutsideWindow { order: i64, lo: i64, hi: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentExpansion {
    chart: ChartSpec,
    coeffs: BTreeMap<i64, Scalar>,
    lo: i64,
    hi: i64,
}

impl LaurentExpansion {
    pub fn new(
        chart: ChartSpec,
        coeffs: BTreeMap<i64, Scalar>,
        lo: i64,
        hi: i64,
    ) -> Result<Self, ExpansionError> {
        for &k in coeffs.keys() {
            if k < lo || k > hi {
                return Err(ExpansionError::OutsideWindow { order: k, lo, hi });
            }
        }
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentExpansion { chart, coeffs, lo, hi })
    }

    /// `c · t^order`, exact through order `hi`. Coefficients past `hi` are
    /// dropped, so a monomial beyond the window is stored as nothing at all.
    pub fn monomial(chart: ChartSpec, c: Scalar, order: i64, hi: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if order <= hi && !c.is_zero() {
            coeffs.insert(order, c);
        }
        LaurentExpansion { chart, coeffs, lo: order, hi }
    }

    pub fn zero(chart: ChartSpec, hi: i64) -> Self {
        LaurentExpansion { chart, coeffs: BTreeMap::new(), lo: hi + 1, hi }
    }

    /// Expansion of `(t + c)^e` in the local variable `t`, for `c ≠ 0` and any
    /// integer `e` (binomial series), or `t^e` when `c = 0`.
    pub fn power_of_linear(chart: ChartSpec, c: &Scalar, e: i64, hi: i64) -> Self {
        if c.is_zero() {
            return Self::monomial(chart, Scalar::one(), e, hi);
        }
        // (c + t)^e = c^e Σ_j binom(e, j) (t/c)^j
        let mut coeffs = BTreeMap::new();
        let base = super::scalar::powi(c, e);
        let inv_c = c.recip();
        let mut term = base;
        let mut j = 0i64;
        while j <= hi {
            if term.is_zero() {
                break;
            }
            coeffs.insert(j, term.clone());
            // binom(e, j+1)/binom(e, j) = (e - j)/(j + 1)
            term = term * int(e - j) / int(j + 1) * &inv_c;
            j += 1;
        }
        LaurentExpansion { chart, coeffs, lo: 0, hi }
    }

    pub fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    /// Lowest order with a nonzero stored coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading(&self) -> Option<(i64, &Scalar)> {
        self.coeffs.iter().next().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, order: i64) -> Result<Scalar, ExpansionError> {
        if order < self.lo {
            return Ok(Scalar::zero());
        }
        if order > self.hi {
            return Err(self.too_shallow(order));
        }
        Ok(self.coeffs.get(&order).cloned().unwrap_or_else(Scalar::zero))
    }

    fn too_shallow(&self, needed: i64) -> ExpansionError {
        ExpansionError::InsufficientDepth {
            chart: self.chart.to_string(),
            needed,
            have: self.hi,
        }
    }

    fn same_chart(&self, other: &Self) -> Result<(), ExpansionError> {
        if self.chart != other.chart {
            return Err(ExpansionError::MismatchedCharts(
                self.chart.to_string(),
                other.chart.to_string(),
            ));
        }
        Ok(())
    }

    /// Drop everything above `hi`; fails if the window does not reach `hi`.
    pub fn truncate(&self, hi: i64) -> Result<Self, ExpansionError> {
        if hi > self.hi {
            return Err(self.too_shallow(hi));
        }
        let coeffs = self.coeffs.range(..=hi).map(|(&k, c)| (k, c.clone())).collect();
        Ok(LaurentExpansion { chart: self.chart.clone(), coeffs, lo: self.lo.min(hi + 1), hi })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let coeffs = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect()
        };
        LaurentExpansion { chart: self.chart.clone(), coeffs, lo: self.lo, hi: self.hi }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExpansionError> {
        self.same_chart(other)?;
        let hi = self.hi.min(other.hi);
        let lo = self.lo.min(other.lo);
        let mut coeffs: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (&k, c) in self.coeffs.range(..=hi).chain(other.coeffs.range(..=hi)) {
            let entry = coeffs.entry(k).or_insert_with(Scalar::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(LaurentExpansion { chart: self.chart.clone(), coeffs, lo, hi })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExpansionError> {
        self.add(&other.scale(&int(-1)))
    }

    /// Cauchy product. With windows `[alo, ahi]` and `[blo, bhi]` the product is
    /// exact on `[alo + blo, min(ahi + blo, bhi + alo)]`.
    pub fn mul(&self, other: &Self) -> Result<Self, ExpansionError> {
        self.same_chart(other)?;
        let lo = self.lo.saturating_add(other.lo);
        let hi = self
            .hi
            .saturating_add(other.lo)
            .min(other.hi.saturating_add(self.lo));
        let mut coeffs: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                let k = i + j;
                if k > hi {
                    break;
                }
                let entry = coeffs.entry(k).or_insert_with(Scalar::zero);
                *entry += a * b;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(LaurentExpansion { chart: self.chart.clone(), coeffs, lo, hi })
    }

    /// Termwise derivative in the local coordinate. Output order `k` needs input
    /// order `k + 1`, so the window shifts down by one.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&k, _)| k != 0)
            .map(|(&k, c)| (k - 1, c * int(k)))
            .collect();
        LaurentExpansion {
            chart: self.chart.clone(),
            coeffs,
            lo: self.lo.saturating_sub(1),
            hi: self.hi.saturating_sub(1),
        }
    }

    /// Residue of the 1-form represented in this chart: the order −1
    /// coefficient. At infinity the expansion is already in `w = 1/z` (see
    /// [`ChartSpec::weight_factor`]), so that coefficient is the true residue.
    /// A window ending below −1 is an error, never a silent zero.
    pub fn residue(&self) -> Result<Scalar, ExpansionError> {
        self.coeff(-1)
    }

    /// Largest absolute numerator/denominator size, for diagnostics.
    pub fn max_abs_coeff(&self) -> Scalar {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Display for LaurentExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{} [", self.chart)?;
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})t^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "] window [{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::frac;

    fn z0() -> ChartSpec {
        ChartSpec::at_zero()
    }

    #[test]
    fn monomial_product_window() {
        let a = LaurentExpansion::monomial(z0(), int(1), -1, 3);
        let b = LaurentExpansion::monomial(z0(), int(1), 2, 5);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.window(), (1, 4));
        assert_eq!(p.coeff(1).unwrap(), int(1));
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    fn unit_leaves_window() {
        let a = LaurentExpansion::monomial(z0(), int(3), -2, 4);
        let one = LaurentExpansion::monomial(z0(), int(1), 0, i64::MAX / 4);
        let p = a.mul(&one).unwrap();
        assert_eq!(p, a);
    }

    #[test]
    fn mismatched_points() {
        let a = LaurentExpansion::monomial(z0(), int(1), 0, 3);
        let b = LaurentExpansion::monomial(ChartSpec::at_infinity(), int(1), 0, 3);
        assert!(matches!(a.mul(&b), Err(ExpansionError::MismatchedCharts(..))));
    }

    #[test]
    fn residues() {
        let dz_over_z = LaurentExpansion::monomial(z0(), int(1), -1, 5);
        assert_eq!(dz_over_z.residue().unwrap(), int(1));
        let z3 = LaurentExpansion::monomial(z0(), int(1), 3, 8);
        assert_eq!(z3.residue().unwrap(), int(0));
        let shallow = LaurentExpansion::monomial(z0(), int(1), -4, -2);
        assert!(matches!(shallow.residue(), Err(ExpansionError::InsufficientDepth { .. })));
    }

    #[test]
    fn derivative_rules() {
        let z5 = LaurentExpansion::monomial(z0(), int(1), 5, 9);
        let d = z5.derivative();
        assert_eq!(d.coeff(4).unwrap(), int(5));
        assert_eq!(d.window(), (4, 8));
        let c = LaurentExpansion::monomial(z0(), int(7), 0, 4);
        assert_eq!(c.derivative().terms().count(), 0);
    }

    #[test]
    fn binomial_series() {
        // 1/(1+t) = 1 - t + t^2 - ...
        let s = LaurentExpansion::power_of_linear(z0(), &int(1), -1, 4);
        for k in 0..=4 {
            assert_eq!(s.coeff(k).unwrap(), int(if k % 2 == 0 { 1 } else { -1 }));
        }
        // (t - 2)^2 = 4 - 4t + t^2, exact and finite
        let q = LaurentExpansion::power_of_linear(z0(), &int(-2), 2, 6);
        assert_eq!(q.coeff(0).unwrap(), int(4));
        assert_eq!(q.coeff(1).unwrap(), int(-4));
        assert_eq!(q.coeff(2).unwrap(), int(1));
        assert_eq!(q.coeff(3).unwrap(), int(0));
        let half = LaurentExpansion::power_of_linear(z0(), &int(2), -1, 3);
        assert_eq!(half.coeff(1).unwrap(), frac(-1, 4));
    }

    #[test]
    fn infinity_weight_factor() {
        // dz = -w^{-2} dw
        let f = ChartSpec::at_infinity().weight_factor(1, 10);
        assert_eq!(f.coeff(-2).unwrap(), int(-1));
        let g = ChartSpec::at_infinity().weight_factor(-1, 10);
        assert_eq!(g.coeff(2).unwrap(), int(-1));
        let h = ChartSpec::at_infinity().weight_factor(2, 10);
        assert_eq!(h.coeff(-4).unwrap(), int(1));
    }
}
