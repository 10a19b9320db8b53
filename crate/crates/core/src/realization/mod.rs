//! Krichever–Novikov basis elements `f^λ_{n,p}` for the genus-0 two-point and
//! multi-point configurations and for imported tables, together with
//! level-line integration and the truncated delta distribution.

pub mod bands;
pub mod basis;
pub mod delta;
pub mod import;
pub mod integrand;
pub mod spec;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::exact::{ChartSpec, ExpansionError, LaurentExpansion, Point, Scalar};

pub use bands::{Band, Bands};
pub use basis::{BasisElement, Label};
pub use integrand::LocalExpr;
pub use spec::{Backend, RealizationSpec, Side};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizationError {
    #[error("invalid realization: {0}")]
    Spec(String),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error("no basis element of weight {weight}, degree {n}, branch {p} in this realization")]
    MissingElement { weight: i64, n: i64, p: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duality violated: {0}")]
    Duality(String),
}

/// Imported data: elements, declared index ranges per weight, declared bands.
#[derive(Clone, Debug)]
pub struct ImportedStore {
    pub elements: BTreeMap<(i64, i64, usize), Arc<BasisElement>>,
    pub ranges: BTreeMap<i64, (i64, i64)>,
}

pub struct Realization {
    spec: RealizationSpec,
    bands: Bands,
    imported: Option<ImportedStore>,
    cache: Mutex<HashMap<(i64, i64, usize), Arc<BasisElement>>>,
}

impl std::fmt::Debug for Realization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Realization").field("spec", &self.spec).field("bands", &self.bands).finish()
    }
}

impl Realization {
    pub fn new(spec: RealizationSpec) -> Result<Self, RealizationError> {
        spec.validate()?;
        if spec.backend == Backend::Imported {
            return Err(RealizationError::Spec(
                "imported realizations are built by `import::parse`".into(),
            ));
        }
        let bands = Bands::derive(&spec);
        Ok(Realization { spec, bands, imported: None, cache: Mutex::new(HashMap::new()) })
    }

    pub fn two_point() -> Self {
        Realization::new(RealizationSpec::two_point(8)).expect("two-point spec is valid")
    }

    pub(crate) fn from_import(spec: RealizationSpec, bands: Bands, store: ImportedStore) -> Self {
        Realization { spec, bands, imported: Some(store), cache: Mutex::new(HashMap::new()) }
    }

    pub fn spec(&self) -> &RealizationSpec {
        &self.spec
    }

    pub fn bands(&self) -> &Bands {
        &self.bands
    }

    pub fn branches(&self) -> usize {
        self.spec.branches()
    }

    pub fn is_two_point(&self) -> bool {
        self.branches() == 1
    }

    pub fn imported(&self) -> Option<&ImportedStore> {
        self.imported.as_ref()
    }

    /// Declared degree range for a weight, if the realization has one.
    pub fn declared_range(&self, weight: i64) -> Option<(i64, i64)> {
        self.imported.as_ref().and_then(|s| s.ranges.get(&weight).copied())
    }

    pub fn basis(&self, weight: i64, n: i64, p: usize) -> Result<Arc<BasisElement>, RealizationError> {
        if let Some(store) = &self.imported {
            return store
                .elements
                .get(&(weight, n, p))
                .cloned()
                .ok_or(RealizationError::MissingElement { weight, n, p });
        }
        let key = (weight, n, p);
        if let Some(e) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(e));
        }
        let el = Arc::new(BasisElement::genus0(&self.spec, weight, n, p)?);
        self.cache.lock().expect("cache lock").insert(key, Arc::clone(&el));
        Ok(el)
    }

    /// `A_{n,p}`
    pub fn a(&self, l: Label) -> Result<LocalExpr, RealizationError> {
        Ok(LocalExpr::Elem(self.basis(0, l.n, l.p)?))
    }

    /// `e_{n,p}`
    pub fn e(&self, l: Label) -> Result<LocalExpr, RealizationError> {
        Ok(LocalExpr::Elem(self.basis(-1, l.n, l.p)?))
    }

    /// `ω^{n,p} = f^1_{-n,p}`
    pub fn omega(&self, l: Label) -> Result<LocalExpr, RealizationError> {
        Ok(LocalExpr::Elem(self.basis(1, -l.n, l.p)?))
    }

    /// `Ω^{n,p} = f^2_{-n,p}`
    pub fn big_omega(&self, l: Label) -> Result<LocalExpr, RealizationError> {
        Ok(LocalExpr::Elem(self.basis(2, -l.n, l.p)?))
    }

    pub fn labels(&self, n: i64) -> impl Iterator<Item = Label> {
        (1..=self.branches()).map(move |p| Label::new(n, p))
    }

    /// Level-line integral of a 1-form: the sum of residues over the in-points,
    /// or minus the sum over the out-points.
    pub fn contour_integral(&self, side: Side, integrand: &LocalExpr) -> Result<Scalar, RealizationError> {
        let (points, sign) = match side {
            Side::In => (&self.spec.in_points, 1),
            Side::Out => (&self.spec.out_points, -1),
        };
        let mut total = Scalar::zero();
        for chart in points {
            total += self.residue_at(chart, integrand)?;
        }
        if sign < 0 {
            total = -total;
        }
        Ok(total)
    }

    /// In-side integral; the default everywhere.
    pub fn integrate(&self, integrand: &LocalExpr) -> Result<Scalar, RealizationError> {
        self.contour_integral(Side::In, integrand)
    }

    /// In-side integral, falling back to the out side when the in-side
    /// windows are too shallow. Both sides give the same value for any
    /// integrand built from basis elements.
    pub fn integrate_either(&self, integrand: &LocalExpr) -> Result<Scalar, RealizationError> {
        match self.contour_integral(Side::In, integrand) {
            Err(RealizationError::Expansion(first)) => {
                self.contour_integral(Side::Out, integrand).map_err(|_| RealizationError::Expansion(first))
            }
            other => other,
        }
    }

    fn residue_at(&self, chart: &ChartSpec, integrand: &LocalExpr) -> Result<Scalar, RealizationError> {
        match integrand.valuation(&chart.point) {
            Some(v) if v >= 0 => Ok(Scalar::zero()),
            _ => Ok(integrand.expand(chart, -1)?.residue()?),
        }
    }

    /// Expansion of an expression at a marked point through `hi`.
    pub fn expand_at(&self, point: &Point, expr: &LocalExpr, hi: i64) -> Result<LaurentExpansion, RealizationError> {
        Ok(expr.expand(&ChartSpec::new(point.clone()), hi)?)
    }
}

/// Projective connection given by its expansions at marked points, each in
/// the chart coordinate of that point.
#[derive(Clone, Debug)]
pub struct ProjectiveConnection {
    expansions: Arc<BTreeMap<Point, LaurentExpansion>>,
}

impl ProjectiveConnection {
    const EXACT: i64 = i64::MAX / 8;

    /// The connection that vanishes in the global coordinate `z` (and hence in
    /// every affine or inverted chart, whose Schwarzians vanish).
    pub fn zero(spec: &RealizationSpec) -> Self {
        let expansions = spec
            .all_points()
            .map(|c| (c.point.clone(), LaurentExpansion::zero(c.clone(), Self::EXACT)))
            .collect();
        ProjectiveConnection { expansions: Arc::new(expansions) }
    }

    /// `R = α z^{-2}` on the sphere with `P+ = 0`, `P- = ∞`; in `w = 1/z` it
    /// is again `α w^{-2}`.
    pub fn genus0_double_pole(alpha_plus: Scalar) -> Self {
        let mut m = BTreeMap::new();
        for chart in [ChartSpec::at_zero(), ChartSpec::at_infinity()] {
            m.insert(
                chart.point.clone(),
                LaurentExpansion::monomial(chart, alpha_plus.clone(), -2, Self::EXACT),
            );
        }
        ProjectiveConnection { expansions: Arc::new(m) }
    }

    /// Coefficient of order −2 at `point`.
    pub fn alpha_at(&self, point: &Point) -> Option<Scalar> {
        self.expansions.get(point).and_then(|e| e.coeff(-2).ok())
    }

    pub fn expr(&self) -> LocalExpr {
        LocalExpr::Fixed(Arc::clone(&self.expansions))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{frac, int};

    #[test]
    fn two_point_elements_are_monomials() {
        let r = Realization::two_point();
        let a5 = r.basis(0, 5, 1).unwrap();
        let e = a5.expand(&ChartSpec::at_zero(), 8).unwrap();
        assert_eq!(e.coeff(5).unwrap(), int(1));
        assert_eq!(e.terms().count(), 1);
        // e_3 = z^4 d/dz; at infinity w^{-4} (-w^2) = -w^{-2}
        let e3 = r.basis(-1, 3, 1).unwrap();
        assert_eq!(e3.expand(&ChartSpec::at_zero(), 6).unwrap().coeff(4).unwrap(), int(1));
        let at_inf = e3.expand(&ChartSpec::at_infinity(), 3).unwrap();
        assert_eq!(at_inf.coeff(-2).unwrap(), int(-1));
        assert_eq!(e3.order_at(&Point::Infinity), Some(-2));
    }

    #[test]
    fn multi_point_orders_and_normalization() {
        let spec = RealizationSpec::multi_point(
            vec![Point::int(0), Point::int(1)],
            vec![Point::int(2), Point::Infinity],
            6,
        )
        .unwrap();
        let r = Realization::new(spec).unwrap();
        let f = r.basis(0, 0, 1).unwrap();
        assert_eq!(f.order_at(&Point::int(0)), Some(0));
        assert_eq!(f.order_at(&Point::int(1)), Some(1));
        assert_eq!(f.order_at(&Point::int(2)), Some(-1));
        assert_eq!(f.order_at(&Point::Infinity), Some(0));
        // 2(z-1)/(z-2): value 1 at 0, derivative -1/2 ... check a few terms
        let e0 = f.expand(&ChartSpec::at_zero(), 2).unwrap();
        assert_eq!(e0.coeff(0).unwrap(), int(1));
        assert_eq!(e0.coeff(1).unwrap(), frac(-1, 2));
        let e1 = f.expand(&ChartSpec::new(Point::int(1)), 1).unwrap();
        assert_eq!(e1.valuation(), Some(1));
        assert_eq!(e1.coeff(1).unwrap(), int(-2));
    }

    #[test]
    fn unequal_split_rejected() {
        let err = RealizationSpec::multi_point(vec![Point::int(0)], vec![Point::int(2), Point::Infinity], 4);
        assert!(err.is_err());
    }
}
