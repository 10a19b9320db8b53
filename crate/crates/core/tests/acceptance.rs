//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. All comparisons are exact; the only tolerances
//! are the wall-clock budgets below.

use std::error::Error;
use std::sync::Arc;
use std::time::{Duration, Instant};

use kn_core::coeffs::identities as id;
use kn_core::coeffs::{serialize, CoefficientTables};
use kn_core::exact::scalar::{frac, int, to_pq};
use kn_core::exact::Point;
use kn_core::lie::FiniteLieAlgebra;
use kn_core::realization::{import, Label, Realization, RealizationError, RealizationSpec};
use kn_core::rep::ordering::NormalOrdering;
use kn_core::rep::wedge::WedgeModule;
use kn_core::report::Check;
use kn_core::suites::{self, build_module, SuiteOptions};
use kn_core::sugawara::Sugawara;

const DUALITY_BUDGET: Duration = Duration::from_secs(10);
const COMMUTATOR_BUDGET: Duration = Duration::from_secs(120);
const IDENTITY_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Res<T> = Result<T, Box<dyn Error>>;

fn two_point() -> Arc<CoefficientTables> {
    Arc::new(CoefficientTables::new(Arc::new(Realization::two_point())))
}

/// Tally of checks; keeps the first failure.
#[derive(Default)]
struct Tally {
    count: usize,
    failure: Option<String>,
}

impl Tally {
    fn add(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.count += 1;
            if !c.pass && self.failure.is_none() {
                self.failure = Some(c.to_string());
            }
        }
    }

    fn require(&mut self, what: &str, ok: bool) {
        self.count += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what.to_string());
        }
    }

    fn finish(self, detail: String) -> Outcome {
        match self.failure {
            None => Ok(format!("{} checks; {detail}", self.count)),
            Some(f) => Err(f),
        }
    }
}

fn within(t: &mut Tally, start: Instant, budget: Duration) -> String {
    let took = start.elapsed();
    t.require(&format!("took {took:.1?}, budget {budget:?}"), took < budget);
    format!("{took:.1?} of {budget:?}")
}

fn criterion1() -> Res<Outcome> {
    let start = Instant::now();
    let t = two_point();
    let mut tally = Tally::default();
    tally.add(id::duality(&t, &[-1, 0, 1, 2], 10)?);
    let time = within(&mut tally, start, DUALITY_BUDGET);
    Ok(tally.finish(format!("weights -1,0,1,2, |n|,|m| <= 10; {time}")))
}

fn criterion2() -> Res<Outcome> {
    let t = two_point();
    let mut tally = Tally::default();
    let checks = id::locality(&t, 12)?;
    let gammas = checks.iter().filter(|c| c.name == "gamma-values").count();
    let chis = checks.iter().filter(|c| c.name == "chi-geometric-values").count();
    tally.require("full 25x25 box for both families", gammas == 625 && chis == 625);
    tally.add(checks);
    Ok(tally.finish("gamma = -n delta, chi_R=0 = (n^3-n)/12 delta over |n|,|m| <= 12".into()))
}

fn criterion3() -> Res<Outcome> {
    let start = Instant::now();
    let t = two_point();
    let mut tally = Tally::default();
    for (algebra, kappa) in [("sl:2", int(2)), ("abelian:1", int(0))] {
        let lie = FiniteLieAlgebra::parse(algebra)?;
        tally.require(&format!("{algebra}: kappa {} != {}", to_pq(lie.kappa()), to_pq(&kappa)), *lie.kappa() == kappa);
        let o = SuiteOptions { algebra: algebra.into(), depth: 8, k: 3, r: 4, ..Default::default() };
        let orderings = suites::comparison_orderings(&o.ordering);
        tally.require("three distinct orderings", orderings.len() >= 3);
        tally.add(suites::run("sugawara-commutators", &t, &o)?.checks);
    }
    // the classical right-hand side: Σ_v K_{r,k}^v x(v) = r x(r+k)
    for k in -3..=3 {
        for r in -4..=4 {
            let sup = t.kk_support(Label::two_point(r), Label::two_point(k))?;
            let want = if r == 0 { vec![] } else { vec![(Label::two_point(r + k), int(r))] };
            tally.require(&format!("K_({r},{k}) support {sup:?}"), sup == want);
        }
    }
    let time = within(&mut tally, start, COMMUTATOR_BUDGET);
    Ok(tally.finish(format!("sl2 and abelian(1), depth 8, |k|<=3, |r|<=4, 3 orderings; {time}")))
}

fn criterion4() -> Res<Outcome> {
    let t = two_point();
    let mut tally = Tally::default();
    for algebra in ["sl:2", "abelian:1"] {
        let o = SuiteOptions { algebra: algebra.into(), depth: 8, k: 3, ..Default::default() };
        let s = Sugawara::new(build_module(&t, &o)?, NormalOrdering::standard());
        let cc = s.central_charge()?;
        tally.require(&format!("{algebra}: central charge {}", to_pq(&cc)), cc == int(1));
        let checks = s.virasoro_checks(&(-3..=3).collect::<Vec<_>>())?;
        // rescaled central term against δ_{k,−l}(k³−k)/12
        for c in checks.iter().filter(|c| c.name == "virasoro-rescaled") {
            let (k, l) = parse_pair(&c.indices);
            let want = if k + l == 0 { frac(k.pow(3) - k, 12) } else { int(0) };
            tally.require(&format!("{algebra} {k},{l}: {} != {}", c.lhs, to_pq(&want)), c.lhs == to_pq(&want));
        }
        tally.add(checks);
    }
    Ok(tally.finish("central charge 1 for sl2 and abelian(1), |k|,|l| <= 3, depth 8".into()))
}

fn parse_pair(indices: &str) -> (i64, i64) {
    let head = indices.split(';').next().unwrap_or_default();
    let mut it = head.split(',').map(|x| x.parse::<i64>().expect("index"));
    (it.next().expect("k"), it.next().expect("l"))
}

fn criterion5() -> Res<Outcome> {
    let t = two_point();
    let mut tally = Tally::default();
    for algebra in ["sl:2", "abelian:1"] {
        let o = SuiteOptions { algebra: algebra.into(), depth: 8, ..Default::default() };
        let s = Sugawara::new(build_module(&t, &o)?, NormalOrdering::standard());
        let checks = s.virasoro_checks(&(-3..=3).collect::<Vec<_>>())?;
        let central: Vec<Check> = checks.into_iter().filter(|c| c.name == "virasoro-central").collect();
        tally.require("49 module extractions", central.len() == 49);
        tally.add(central);
    }
    tally.add(id::chi_values(&t, 3)?);
    let fit = id::identify_cocycle(&t)?.ok_or("cocycle identification is singular")?;
    tally.require(&format!("d = {}", to_pq(&fit.d)), fit.d == int(-2));
    tally.require(&format!("alpha+ = {}", to_pq(&fit.alpha_plus)), fit.alpha_plus == int(0));
    tally.add(id::identification_checks(&t, 3)?);
    Ok(tally.finish("module scalar = -1/2 c(c+kappa) dim g chi, chi diagonal -(k^3-k)/6, d = -2, alpha+ = 0".into()))
}

fn criterion6() -> Res<Outcome> {
    let start = Instant::now();
    let t = two_point();
    let mut tally = Tally::default();
    tally.add(id::f_symmetry(&t, 5)?);
    let g = id::gamma_from_alpha(&t, 5, &[0])?;
    tally.require("121 split-sum identities", g.len() == 121);
    tally.add(g);
    tally.add(id::lk_sum_identity(&t, 5)?);
    tally.add(suites::delta_checks(&t, 5)?);
    tally.add(id::coboundary(&t, 5)?);
    tally.add(WedgeModule::new(Arc::clone(&t))?.checks(5, 3)?);
    let time = within(&mut tally, start, IDENTITY_BUDGET);
    Ok(tally.finish(format!("F-symmetry, split sum, l-K sum, truncated delta, coboundary, wedge; {time}")))
}

fn criterion7() -> Res<Outcome> {
    let t = two_point();
    let mut tally = Tally::default();
    let cases = [("sl:2", int(1), frac(-1, 4)), ("abelian:1", int(3), frac(-9, 2))];
    for (algebra, chi, lambda0) in cases {
        for ordering in [NormalOrdering::standard(), NormalOrdering::flipped(&[(0, 0)])] {
            let o = SuiteOptions { algebra: algebra.into(), chi: Some(vec![chi.clone()]), depth: 6, k: 3, ..Default::default() };
            let s = Sugawara::new(build_module(&t, &o)?, ordering.clone());
            let r = s.weight_checks(3)?;
            let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
            for need in ["weight-formula", "weight-split", "k-sigma", "weight-closed-form", "weight-classical"] {
                tally.require(&format!("{algebra} {ordering}: no {need} check"), names.contains(&need));
            }
            let got = s.weight_direct()?.lambda[0].clone();
            tally.require(&format!("{algebra} {ordering}: lambda_0 {}", to_pq(&got)), got == lambda0);
            tally.add(r.checks);
        }
    }
    Ok(tally.finish("direct = formula = split + K(Sigma), K = 0, closed form and classical normalization".into()))
}

fn criterion8() -> Res<Outcome> {
    let t = two_point();
    let mut tally = Tally::default();
    for (algebra, omega) in [("sl:2", frac(3, 2)), ("abelian:1", int(1))] {
        let o = SuiteOptions { algebra: algebra.into(), depth: 6, ..Default::default() };
        let s = Sugawara::new(build_module(&t, &o)?, NormalOrdering::standard());
        let r = s.casimir_checks(&(-4..=4).collect::<Vec<_>>())?;
        for need in ["casimir-current", "casimir-e", "casimir-eigenvector", "casimir-eigenvalue", "casimir-eigenvalue-classical"] {
            tally.require(&format!("{algebra}: no {need} check"), r.checks.iter().any(|c| c.name == need));
        }
        let got = s.casimir_spec()?.lambda_omega;
        tally.require(&format!("{algebra}: lambda_omega {got:?}"), got == Some(omega));
        tally.add(r.checks);
    }
    Ok(tally.finish("[Omega, x(n)] = 0 for |n| <= 4, [Omega, e] = 0, depth 6; lambda_Omega 3/2 (sl2), 1 (abelian)".into()))
}

fn criterion9() -> Res<Outcome> {
    let spec = RealizationSpec::multi_point(vec![Point::int(0), Point::int(1)], vec![Point::int(2), Point::Infinity], 8)?;
    let t = Arc::new(CoefficientTables::new(Arc::new(Realization::new(spec)?)));
    let mut tally = Tally::default();
    tally.add(id::duality(&t, &[0, 1], 5)?);
    tally.add(id::alpha_leading(&t, 5)?);
    tally.add(id::k_from_l_gamma(&t, 5)?);
    let bands = id::grading_bands(&t, 5)?;
    tally.require("band report covers the families", bands.len() >= 6);
    tally.add(bands);
    Ok(tally.finish("K = 2, I = {0,1}, O = {2,inf}: duality |n|,|m| <= 5, alpha leading terms, K = l gamma, bands".into()))
}

fn criterion10() -> Res<Outcome> {
    let mut tally = Tally::default();
    let (range, depth, table_range) = (10, 8, 3);
    let original = Realization::two_point();
    let text = import::export(&original, range, depth)?;
    let imported = import::parse(&text)?;
    tally.require("re-export is byte-identical", import::export(&imported, range, depth)? == text);
    let a = serialize::write_tables(&CoefficientTables::new(Arc::new(original)), table_range)?;
    let b = serialize::write_tables(&CoefficientTables::new(Arc::new(imported)), table_range)?;
    tally.require("same table files", a.iter().map(|x| &x.0).eq(b.iter().map(|x| &x.0)));
    for ((name, x), (_, y)) in a.iter().zip(&b) {
        tally.require(&format!("{name} differs after import"), x == y);
    }
    // a perturbed coefficient breaks duality; a garbled line fails to parse
    let broken = text.replacen("elem 0 1 1 0/1 1 1/1\n", "elem 0 1 1 0/1 1 1/1\nelem 0 1 1 0/1 2 1/1\n", 1);
    tally.require("perturbation applied", broken != text);
    match import::parse(&broken) {
        Err(RealizationError::Duality(msg)) => tally.require(&format!("unlocated duality failure: {msg}"), msg.contains("(1,1)")),
        other => tally.require(&format!("perturbed file accepted: {:?}", other.map(|_| ())), false),
    }
    let garbled = text.replacen("depth 8", "depth eight", 1);
    match import::parse(&garbled) {
        Err(RealizationError::Parse { line, .. }) => tally.require(&format!("parse error at line {line}"), line > 1),
        other => tally.require(&format!("garbled file accepted: {:?}", other.map(|_| ())), false),
    }
    Ok(tally.finish("export, import, identical tables; corrupted files rejected with location".into()))
}

fn main() {
    let criteria: [(&str, fn() -> Res<Outcome>); 10] = [
        ("duality", criterion1),
        ("locality and boundary values", criterion2),
        ("Sugawara-current commutator", criterion3),
        ("Virasoro relations and central charge", criterion4),
        ("cocycle extraction vs tables", criterion5),
        ("identity suites", criterion6),
        ("highest weight", criterion7),
        ("Casimir operator", criterion8),
        ("multi-point realization", criterion9),
        ("import round trip", criterion10),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Err(format!("error: {e}")));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {title} ({detail}) [{took:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {title}: {why} [{took:.1?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
