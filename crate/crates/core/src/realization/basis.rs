use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::scalar::powi;
use crate::exact::{ChartSpec, ExpansionError, LaurentExpansion, Point, Scalar};

use super::spec::RealizationSpec;
use super::RealizationError;

/// Index of a basis element: degree `n` and branch `p` (1-based; always 1 for
/// two-point realizations).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub n: i64,
    pub p: usize,
}

impl Label {
    pub const fn new(n: i64, p: usize) -> Self {
        Label { n, p }
    }

    pub const fn two_point(n: i64) -> Self {
        Label { n, p: 1 }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 1 {
            write!(f, "{}", self.n)
        } else {
            write!(f, "({},{})", self.n, self.p)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum SectionRepr {
    /// `scale · Π (z - b)^e (dz)^λ` over finite points `b`.
    Divisor { scale: Scalar, factors: Vec<(Scalar, i64)> },
    /// Stored expansions with fixed windows (imported data).
    Table(BTreeMap<Point, LaurentExpansion>),
}

/// A basis section `f^λ_{n,p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub weight: i64,
    pub degree: i64,
    pub branch: usize,
    orders: BTreeMap<Point, i64>,
    repr: SectionRepr,
}

impl BasisElement {
    /// Genus-0 element with the prescribed orders at every marked point,
    /// normalized to leading coefficient 1 at the in-point of its branch.
    pub(crate) fn genus0(
        spec: &RealizationSpec,
        weight: i64,
        n: i64,
        p: usize,
    ) -> Result<Self, RealizationError> {
        if p == 0 || p > spec.branches() {
            return Err(RealizationError::MissingElement { weight, n, p });
        }
        let mut orders = BTreeMap::new();
        let mut factors = Vec::new();
        let mut finite_sum = 0i64;
        let mut has_infinity = false;
        for chart in spec.all_points() {
            let ord = spec.prescribed_order(weight, n, p, chart).expect("declared point");
            orders.insert(chart.point.clone(), ord);
            match &chart.point {
                Point::Finite(b) => {
                    factors.push((b.clone(), ord));
                    finite_sum += ord;
                }
                Point::Infinity => has_infinity = true,
            }
        }
        // a section on the sphere has total degree -2λ; the order at infinity
        // is forced by the finite exponents
        let at_infinity = -finite_sum - 2 * weight;
        match orders.get(&Point::Infinity) {
            Some(&ord) if ord != at_infinity => {
                return Err(RealizationError::Spec(format!(
                    "inconsistent order prescription for weight {weight}, degree {n}: \
                     infinity needs {at_infinity}, prescribed {ord}"
                )))
            }
            None if at_infinity != 0 && !has_infinity => {
                return Err(RealizationError::Spec(format!(
                    "order prescription for weight {weight}, degree {n} forces a zero or pole \
                     of order {at_infinity} at the unmarked point infinity"
                )))
            }
            _ => {}
        }
        let mut el = BasisElement {
            weight,
            degree: n,
            branch: p,
            orders,
            repr: SectionRepr::Divisor { scale: Scalar::one(), factors },
        };
        let anchor = spec.in_points[p - 1].clone();
        let ord = el.order_at(&anchor.point).expect("declared point");
        let lead = el.expand(&anchor, ord)?.coeff(ord)?;
        if lead.is_zero() {
            return Err(RealizationError::Spec(format!(
                "degenerate leading coefficient for weight {weight}, degree {n}"
            )));
        }
        if let SectionRepr::Divisor { scale, .. } = &mut el.repr {
            *scale = lead.recip();
        }
        Ok(el)
    }

    pub(crate) fn from_table(
        weight: i64,
        degree: i64,
        branch: usize,
        expansions: BTreeMap<Point, LaurentExpansion>,
    ) -> Self {
        let orders = expansions.iter().map(|(p, e)| (p.clone(), e.window().0)).collect();
        BasisElement { weight, degree, branch, orders, repr: SectionRepr::Table(expansions) }
    }

    pub fn label(&self) -> Label {
        Label::new(self.degree, self.branch)
    }

    /// Order of vanishing at a marked point (exact for genus-0 elements, the
    /// declared window start for imported ones).
    pub fn order_at(&self, point: &Point) -> Option<i64> {
        self.orders.get(point).copied()
    }

    /// Stored window at `point` for imported elements.
    pub fn stored_window(&self, point: &Point) -> Option<(i64, i64)> {
        match &self.repr {
            SectionRepr::Table(map) => map.get(point).map(LaurentExpansion::window),
            SectionRepr::Divisor { .. } => None,
        }
    }

    pub fn orders(&self) -> &BTreeMap<Point, i64> {
        &self.orders
    }

    /// Expansion of the local representative in `chart`, exact through `hi`.
    pub fn expand(&self, chart: &ChartSpec, hi: i64) -> Result<LaurentExpansion, ExpansionError> {
        match &self.repr {
            SectionRepr::Table(map) => match map.get(&chart.point) {
                Some(e) => e.truncate(hi),
                None => Err(ExpansionError::InsufficientDepth {
                    chart: chart.to_string(),
                    needed: hi,
                    have: i64::MIN,
                }),
            },
            SectionRepr::Divisor { scale, factors } => {
                expand_divisor(chart, scale, factors, self.weight, hi)
            }
        }
    }

    /// Expansions at every marked point through `depth` orders past the
    /// leading order.
    pub fn expansions(&self, depth: i64) -> Result<BTreeMap<Point, LaurentExpansion>, ExpansionError> {
        self.orders
            .iter()
            .map(|(p, &ord)| Ok((p.clone(), self.expand(&ChartSpec::new(p.clone()), ord + depth)?)))
            .collect()
    }
}

fn expand_divisor(
    chart: &ChartSpec,
    scale: &Scalar,
    factors: &[(Scalar, i64)],
    weight: i64,
    hi: i64,
) -> Result<LaurentExpansion, ExpansionError> {
    // valuation of each factor in this chart, so each can be expanded only as
    // deep as the product needs
    let parts: Vec<(LaurentExpansionBuilder, i64)> = match &chart.point {
        Point::Finite(a) => factors
            .iter()
            .map(|(b, e)| {
                let v = if a == b { *e } else { 0 };
                (LaurentExpansionBuilder::Linear { shift: a - b, exp: *e }, v)
            })
            .collect(),
        Point::Infinity => {
            let mut v = factors
                .iter()
                .map(|(b, e)| (LaurentExpansionBuilder::AtInfinity { root: b.clone(), exp: *e }, -*e))
                .collect::<Vec<_>>();
            v.push((LaurentExpansionBuilder::WeightFactor(weight), -2 * weight));
            v
        }
    };
    let total: i64 = parts.iter().map(|(_, v)| v).sum();
    let mut acc = LaurentExpansion::monomial(chart.clone(), scale.clone(), 0, hi - total);
    for (part, v) in &parts {
        let depth = hi - (total - v);
        acc = acc.mul(&part.build(chart, depth))?;
    }
    acc.truncate(hi)
}

enum LaurentExpansionBuilder {
    /// `(t + shift)^exp` with `t = z - a`
    Linear { shift: Scalar, exp: i64 },
    /// `(1/w - root)^exp = w^{-exp} (1 - root·w)^exp`
    AtInfinity { root: Scalar, exp: i64 },
    WeightFactor(i64),
}

impl LaurentExpansionBuilder {
    fn build(&self, chart: &ChartSpec, hi: i64) -> LaurentExpansion {
        match self {
            LaurentExpansionBuilder::Linear { shift, exp } => {
                LaurentExpansion::power_of_linear(chart.clone(), shift, *exp, hi)
            }
            LaurentExpansionBuilder::AtInfinity { root, exp } => {
                if root.is_zero() {
                    return LaurentExpansion::monomial(chart.clone(), Scalar::one(), -exp, hi);
                }
                // (1 - root·w)^e = (-root)^e (w - 1/root)^e
                let series = LaurentExpansion::power_of_linear(chart.clone(), &(-root.recip()), *exp, hi + exp);
                let pref = LaurentExpansion::monomial(chart.clone(), powi(&(-root.clone()), *exp), -exp, hi);
                pref.mul(&series).expect("same chart")
            }
            LaurentExpansionBuilder::WeightFactor(w) => chart.weight_factor(*w, hi),
        }
    }
}
