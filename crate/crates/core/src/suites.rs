//! Named verification suites, each producing one [`Report`].

use std::sync::Arc;

use crate::algebra::{AlgebraElement, AlgebraError, KnAlgebra, VectorFieldCocycle};
use crate::coeffs::{identities, CoefficientTables};
use crate::exact::scalar::{int, to_pq};
use crate::exact::Scalar;
use crate::lie::{FiniteLieAlgebra, LieError};
use crate::realization::delta::{delta_truncated, Slot};
use crate::realization::{Label, ProjectiveConnection, RealizationError};
use crate::rep::ordering::NormalOrdering;
use crate::rep::verma::{HighestWeightSpec, RepError, VermaModule};
use crate::rep::wedge::WedgeModule;
use crate::report::{Check, Report};
use crate::sugawara::Sugawara;

pub const SUITES: &[&str] = &[
    "duality",
    "locality",
    "lemma41",
    "lemma44",
    "lemma45",
    "jacobi",
    "sugawara-commutators",
    "virasoro",
    "weight",
    "casimir",
    "wedge",
    "coboundary",
];

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (known: {list})", list = SUITES.join(", "))]
    Unknown(String),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("{0}")]
    Options(String),
}

type Res<T> = Result<T, SuiteError>;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Index box `|n| ≤ range` for table suites.
    pub range: i64,
    /// Verma module depth.
    pub depth: i64,
    /// Operator indices `|k| ≤ k`.
    pub k: i64,
    /// Current indices `|r| ≤ r` in the commutator suite.
    pub r: i64,
    pub algebra: String,
    pub level: Scalar,
    /// `χ_0` in the fundamental-weight basis; all ones when absent.
    pub chi: Option<Vec<Scalar>>,
    pub ordering: NormalOrdering,
    pub lambda_e: Scalar,
    /// Maximal number of degree-0 factors in a PBW monomial.
    pub zero_mode_cap: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            range: 5,
            depth: 8,
            k: 3,
            r: 4,
            algebra: "sl:2".into(),
            level: int(1),
            chi: None,
            ordering: NormalOrdering::standard(),
            lambda_e: int(0),
            zero_mode_cap: 2,
        }
    }
}

/// The orderings used when a suite compares several: the configured one,
/// then `Σ_0`, the critical-square flip and an off-diagonal flip.
pub fn comparison_orderings(configured: &NormalOrdering) -> Vec<NormalOrdering> {
    let mut out = vec![configured.clone()];
    for o in [
        NormalOrdering::standard(),
        NormalOrdering::flipped(&[(0, 0)]),
        NormalOrdering::flipped(&[(1, -1), (-2, 2)]),
    ] {
        if !out.contains(&o) {
            out.push(o);
        }
    }
    out
}

pub fn build_module(t: &Arc<CoefficientTables>, o: &SuiteOptions) -> Res<Arc<VermaModule>> {
    let lie = Arc::new(FiniteLieAlgebra::parse(&o.algebra)?);
    let chi = o.chi.clone().unwrap_or_else(|| vec![int(1); lie.rank()]);
    if chi.len() != lie.rank() {
        return Err(SuiteError::Options(format!("weight has {} entries, rank is {}", chi.len(), lie.rank())));
    }
    let alg = Arc::new(KnAlgebra::new(Arc::clone(t), lie));
    let m = VermaModule::new(alg, HighestWeightSpec::genus0(chi, o.level.clone()), o.depth, o.zero_mode_cap)?;
    Ok(Arc::new(m.with_lambda_e(o.lambda_e.clone())))
}

fn sym(n: i64) -> Vec<i64> {
    (-n..=n).collect()
}

fn with_checks(name: &str, checks: Vec<Check>) -> Report {
    let mut r = Report::new(name);
    r.extend(checks);
    r
}

pub fn run(name: &str, t: &Arc<CoefficientTables>, o: &SuiteOptions) -> Res<Report> {
    let report = match name {
        "duality" => {
            let mut r = with_checks(name, identities::duality(t, &[-1, 0, 1, 2], o.range)?);
            r.extend(identities::side_consistency(t, &[0, 1], o.range.min(4))?);
            r.extend(delta_checks(t, o.range)?);
            r
        }
        "locality" => {
            let mut r = with_checks(name, identities::locality(t, o.range)?);
            r.extend(identities::grading_bands(t, o.range)?);
            r.extend(identities::alpha_leading(t, o.range)?);
            r.extend(identities::k_from_l_gamma(t, o.range)?);
            r
        }
        "lemma41" => with_checks(name, identities::f_symmetry(t, o.range)?),
        "lemma44" => with_checks(name, identities::gamma_from_alpha(t, o.range, &[0])?),
        "lemma45" => with_checks(name, identities::lk_sum_identity(t, o.range)?),
        "coboundary" => with_checks(name, identities::coboundary(t, o.range)?),
        "jacobi" => jacobi(t, o)?,
        "wedge" => with_checks(name, WedgeModule::new(Arc::clone(t))?.checks(o.range, o.k)?),
        "sugawara-commutators" => {
            let m = build_module(t, o)?;
            let mut r = Report::new(name);
            for ord in comparison_orderings(&o.ordering) {
                let s = Sugawara::new(Arc::clone(&m), ord);
                r.extend(s.current_commutator_checks(&sym(o.k), &sym(o.r))?);
            }
            r.note("orderings", comparison_orderings(&o.ordering).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            r
        }
        "virasoro" => {
            let s = Sugawara::new(build_module(t, o)?, o.ordering.clone());
            let mut r = with_checks(name, s.virasoro_checks(&sym(o.k))?);
            r.extend(identities::chi_values(t, o.k)?);
            r.extend(identities::identification_checks(t, o.k)?);
            r.note("central-charge", to_pq(&s.central_charge()?));
            r
        }
        "weight" => {
            let s = Sugawara::new(build_module(t, o)?, o.ordering.clone());
            let mut r = s.weight_checks(o.k)?;
            r.suite = name.into();
            r
        }
        "casimir" => {
            let s = Sugawara::new(build_module(t, o)?, o.ordering.clone());
            let ns = sym(o.r);
            let mut r = s.casimir_checks(&ns)?;
            r.extend(s.field_action_checks(1, &sym(o.k), &sym(1))?);
            r
        }
        other => return Err(SuiteError::Unknown(other.into())),
    };
    Ok(report)
}

/// The truncated delta distribution reproduces `A_n` and `ω^n` for
/// `|n| ≤ range` and leaves a defect just outside.
pub fn delta_checks(t: &Arc<CoefficientTables>, range: i64) -> Res<Vec<Check>> {
    let real = t.realization();
    let delta = delta_truncated(real, range);
    let mut out = Vec::new();
    for n in -range - 1..=range + 1 {
        for l in real.labels(n) {
            let want = n.abs() <= range;
            for (slot, name, input) in
                [(Slot::First, "delta-function", real.a(l)?), (Slot::Second, "delta-form", real.omega(l)?)]
            {
                let got = delta.pair(real, slot, &input, range + 2)?.reproduces_input();
                out.push(Check::text(name, format!("{l};N={range}"), got.to_string(), want.to_string(), got == want));
            }
        }
    }
    Ok(out)
}

fn jacobi(t: &Arc<CoefficientTables>, o: &SuiteOptions) -> Res<Report> {
    let lie = Arc::new(FiniteLieAlgebra::parse(&o.algebra)?);
    let r0 = ProjectiveConnection::zero(t.realization().spec());
    let alg = KnAlgebra::new(Arc::clone(t), Arc::clone(&lie))
        .with_cocycle(VectorFieldCocycle::Geometric { connection: r0, scale: int(1) });
    let span = o.range.min(2);
    let labels: Vec<Label> = (-span..=span).flat_map(|n| t.realization().labels(n).collect::<Vec<_>>()).collect();
    let fields: Vec<AlgebraElement> = labels.iter().map(|&l| AlgebraElement::vector_field(l)).collect();
    let mut currents: Vec<AlgebraElement> =
        labels.iter().flat_map(|&l| (0..lie.dim()).map(move |a| AlgebraElement::current(a, l))).collect();
    currents.extend(fields.iter().cloned());
    currents.push(AlgebraElement::e());
    let mut functions: Vec<AlgebraElement> = labels.iter().map(|&l| AlgebraElement::function(l)).collect();
    functions.extend(fields);
    let mut triples = Vec::new();
    for family in [&currents, &functions] {
        for i in 0..family.len() {
            for j in i..family.len() {
                for k in j..family.len() {
                    triples.push((family[i].clone(), family[j].clone(), family[k].clone()));
                }
            }
        }
    }
    let mut r = with_checks("jacobi", alg.jacobi_check(&triples)?);
    r.extend(alg.e_invariance_checks(o.range)?);
    r.extend(alg.casimir_current_checks(o.range)?);
    r.extend(alg.grading_band_check(o.range)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::Realization;

    fn tables() -> Arc<CoefficientTables> {
        Arc::new(CoefficientTables::new(Arc::new(Realization::two_point())))
    }

    #[test]
    fn small_table_suites_pass() {
        let t = tables();
        let o = SuiteOptions { range: 2, depth: 3, k: 1, r: 1, ..Default::default() };
        for name in ["duality", "locality", "lemma41", "lemma44", "lemma45", "coboundary", "jacobi", "wedge"] {
            let r = run(name, &t, &o).unwrap();
            assert!(r.all_passed(), "{name}: {:?}", r.first_failure());
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(run("nope", &tables(), &SuiteOptions::default()), Err(SuiteError::Unknown(_))));
    }

    #[test]
    fn lemma44_counts_index_pairs() {
        let r = run("lemma44", &tables(), &SuiteOptions::default()).unwrap();
        assert_eq!(r.checks.len(), 121);
        assert!(r.all_passed());
    }
}
