//! Sugawara modes `L_k = ½ Σ_{n,m} l_k^{nm} Σ_i :u_i(n) u^i(m):` acting on a
//! genus-0 highest-weight module, and the checks built on them: commutators
//! with currents, the induced Virasoro-type cocycle, the weight `Λ`, the
//! Casimir operator `Ω = 2L + 2(c+κ)e`, and `[L_k, E] = [L_k, L_l]`.
//!
//! `L_k` is applied per PBW monomial and memoized. On a monomial of degree
//! `-d` the first operator applied in `:u_i(n)u^i(m):` must have degree `≤ d`;
//! under `Σ_0` that operator is the one of larger degree, so only pairs with
//! `max(n, m) ≤ d` (plus the ordering's overrides) contribute.

use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rustc_hash::FxHashMap as HashMap;

use crate::coeffs::CoefficientTables;
use crate::exact::coeff::Coeff;
use crate::exact::scalar::{frac, int, to_pq};
use crate::exact::Scalar;
use crate::realization::{Label, ProjectiveConnection};
use crate::report::{Check, Report};
use crate::rep::ordering::NormalOrdering;
use crate::rep::verma::{Mode, ModuleVector, MonoId, RepError, VermaModule};

type Res<T> = Result<T, RepError>;

fn lab(n: i64) -> Label {
    Label::two_point(n)
}

fn table<T>(r: Result<T, crate::realization::RealizationError>) -> Res<T> {
    r.map_err(|e| RepError::Algebra(e.into()))
}

/// `L_k` on one monomial: its terms and whether anything fell below the window.
type ModeImage = Arc<(Vec<(MonoId, Coeff)>, bool)>;
type Memo = HashMap<(i64, MonoId), ModeImage>;

/// The Sugawara modes for one normal ordering on one module.
pub struct Sugawara {
    module: Arc<VermaModule>,
    ordering: NormalOrdering,
    memo: Mutex<Memo>,
}

/// `λ_k` for `k ∈ [-3g, 0]`, listed from `k = 0` down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDifferential {
    pub lambda: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirSpec {
    pub epsilon: Vec<(i64, Scalar)>,
    pub lambda_e: Scalar,
    /// `None` if `v` is not an eigenvector.
    pub lambda_omega: Option<Scalar>,
}

impl Sugawara {
    pub fn new(module: Arc<VermaModule>, ordering: NormalOrdering) -> Self {
        Sugawara { module, ordering, memo: Mutex::new(HashMap::default()) }
    }

    pub fn module(&self) -> &Arc<VermaModule> {
        &self.module
    }

    pub fn ordering(&self) -> &NormalOrdering {
        &self.ordering
    }

    fn tables(&self) -> &Arc<CoefficientTables> {
        self.module.algebra().tables()
    }

    /// `c + κ`
    pub fn shifted_level(&self) -> Scalar {
        self.module.level() + self.module.algebra().lie().kappa()
    }

    fn rescale(&self) -> Res<Scalar> {
        let s = self.shifted_level();
        if s.is_zero() {
            return Err(RepError::Unsupported("critical level c + κ = 0".into()));
        }
        Ok(-Scalar::one() / s)
    }

    /// `c · dim g / (c + κ)`
    pub fn central_charge(&self) -> Res<Scalar> {
        let dim = int(self.module.algebra().lie().dim() as i64);
        Ok(-(self.module.level() * dim) * self.rescale()?)
    }

    /// How far below `min(start, end)` degree the inner vectors of an `L`
    /// application can reach.
    pub fn dip(&self) -> i64 {
        self.ordering.overrides().map(|(a, b)| a.max(b).max(0)).max().unwrap_or(0)
    }

    /// Index pairs `(n, m)` with `n + m = s` that can act on degree `-d`.
    fn pairs(&self, s: i64, d: i64) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = ((s - d)..=d).map(|n| (n, s - n)).collect();
        for (a, b) in self.ordering.overrides() {
            if a + b == s && a.max(b) > d {
                out.push((a, b));
            }
        }
        out
    }

    fn apply_mono(&self, k: i64, id: MonoId) -> Res<ModeImage> {
        if let Some(r) = self.memo.lock().expect("memo lock").get(&(k, id)) {
            return Ok(Arc::clone(r));
        }
        let m = &self.module;
        let lie = m.algebra().lie();
        let w = m.basis_vector(id);
        let d = -m.degree_of(id);
        let lband = self.tables().realization().bands().l;
        let half = frac(1, 2);
        let pairs: Vec<(usize, usize, Coeff)> =
            lie.casimir_pairs().into_iter().map(|(i, j, d)| (i, j, Coeff::from_scalar(&d))).collect();
        let mut acc = ModuleVector::empty(-m.depth());
        for off in lband.range() {
            let s = k + off;
            for (n, mm) in self.pairs(s, d) {
                let l = table(self.tables().l(lab(k), lab(n), lab(mm)))?;
                if l.is_zero() {
                    continue;
                }
                let plus = self.ordering.is_plus(n, mm);
                let hl = Coeff::from_scalar(&(&half * &l));
                for (i, j, dij) in &pairs {
                    let (i, j) = (*i, *j);
                    let (first, second) = if plus { (Mode::new(j, mm), Mode::new(i, n)) } else { (Mode::new(i, n), Mode::new(j, mm)) };
                    let t = m.act(second, &m.act(first, &w)?)?;
                    acc.add_scaled_by(&t, &(&hl * dij));
                }
            }
        }
        let result = Arc::new((acc.terms().map(|(i, s)| (i, s.clone())).collect::<Vec<_>>(), acc.discarded()));
        self.memo.lock().expect("memo lock").insert((k, id), Arc::clone(&result));
        Ok(result)
    }

    /// `L_k w`
    pub fn apply(&self, k: i64, w: &ModuleVector) -> Res<ModuleVector> {
        let mut out = ModuleVector::empty(w.floor());
        if w.discarded() {
            out.mark_discarded();
        }
        for (id, s) in w.terms() {
            let r = self.apply_mono(k, id)?;
            if r.1 {
                out.mark_discarded();
            }
            for (u, x) in &r.0 {
                out.add_term(*u, s * x);
            }
        }
        Ok(out)
    }

    /// `L*_k w = −L_k w / (c + κ)`
    pub fn apply_rescaled(&self, k: i64, w: &ModuleVector) -> Res<ModuleVector> {
        Ok(self.apply(k, w)?.scaled(&self.rescale()?))
    }

    /// Basis vectors `w` whose computations stay above the floor when the
    /// operators involved shift degree by the partial sums in `shifts`.
    fn window(&self, shifts: &[i64]) -> Vec<ModuleVector> {
        let m = &self.module;
        let low = shifts.iter().copied().fold(0, i64::min) - self.dip();
        let limit = m.depth() + low;
        if limit < 0 {
            return Vec::new();
        }
        m.basis(limit)
    }

    fn x_sum(&self, a: usize, terms: &[(Label, Scalar)], w: &ModuleVector) -> Res<ModuleVector> {
        let mut out = ModuleVector::empty(w.floor());
        for (v, c) in terms {
            out.add_scaled(&self.module.act(Mode::new(a, v.n), w)?, c);
        }
        Ok(out)
    }

    fn describe(&self, w: &ModuleVector) -> String {
        self.module.render(w)
    }

    /// `[L_k, x(r)] w = −(c+κ) Σ_v K_{r,k}^v x(v) w` on every basis vector in
    /// the window, one aggregated check per `(k, r, x)`.
    pub fn current_commutator_checks(&self, ks: &[i64], rs: &[i64]) -> Res<Vec<Check>> {
        let m = &self.module;
        let lie = m.algebra().lie();
        let shift = self.shifted_level();
        let mut out = Vec::new();
        for &k in ks {
            for &r in rs {
                let kk = table(self.tables().kk_support(lab(r), lab(k)))?;
                let basis = self.window(&[k, r, k + r]);
                for a in 0..lie.dim() {
                    let x = Mode::new(a, r);
                    let mut failure = None;
                    for w in &basis {
                        let lhs = self.apply(k, &m.act(x, w)?)?.minus(&m.act(x, &self.apply(k, w)?)?);
                        let rhs = self.x_sum(a, &kk, w)?.scaled(&-shift.clone());
                        if lhs != rhs || lhs.discarded() {
                            failure = Some((self.describe(w), self.describe(&lhs), self.describe(&rhs)));
                            break;
                        }
                    }
                    let indices = format!("{k},{r},{};{}", lie.label(a), self.ordering);
                    out.push(match failure {
                        None => Check::text("sugawara-current", indices, format!("{}vectors", basis.len()), "equal", true),
                        Some((w, l, r)) => Check::text("sugawara-current", format!("{indices};{w}"), l, r, false),
                    });
                }
            }
        }
        Ok(out)
    }

    /// `[L_k, L_l] w + (c+κ) Σ_s C_{kl}^s L_s w`, which must be a multiple of
    /// `w`; `None` if it is not (or the window was too shallow).
    fn virasoro_remainder(&self, k: i64, l: i64, basis: &[ModuleVector]) -> Res<Result<Scalar, String>> {
        let shift = self.shifted_level();
        let c = table(self.tables().c_support(lab(k), lab(l)))?;
        let mut mu: Option<Scalar> = None;
        for w in basis {
            let mut rem = self.apply(k, &self.apply(l, w)?)?.minus(&self.apply(l, &self.apply(k, w)?)?);
            for (s, cs) in &c {
                rem.add_scaled(&self.apply(s.n, w)?, &(&shift * cs));
            }
            let scalar = self.module.multiple_of(&rem, w);
            match (scalar, rem.discarded()) {
                (Some(x), false) => match &mu {
                    None => mu = Some(x),
                    Some(y) if *y == x => {}
                    Some(y) => return Ok(Err(format!("{}:{}!={}", self.describe(w), to_pq(&x), to_pq(y)))),
                },
                _ => return Ok(Err(format!("{}:{}", self.describe(w), self.describe(&rem)))),
            }
        }
        Ok(Ok(mu.unwrap_or_else(Scalar::zero)))
    }

    /// The induced cocycle through the module against the tables:
    /// `μ_{kl} = −½ c (c+κ) dim g · χ_{kl}` for `L`, and for `L*` the central
    /// term `−½ c dim g χ_{kl}/(c+κ)`; for `Σ_0` also against
    /// `cc · χ_R(e_k, e_l)` with `R = 0`.
    pub fn virasoro_checks(&self, ks: &[i64]) -> Res<Vec<Check>> {
        let lie = self.module.algebra().lie();
        let c = self.module.level().clone();
        let shift = self.shifted_level();
        let dim = int(lie.dim() as i64);
        let cc = self.central_charge()?;
        let real = self.tables().realization();
        let r0 = ProjectiveConnection::zero(real.spec());
        let mut out = Vec::new();
        for &k in ks {
            for &l in ks {
                let basis = self.window(&[k, l, k + l]);
                let chi = table(self.tables().chi_ordered(lab(k), lab(l), &self.ordering))?;
                let want = -(frac(1, 2) * &c * &shift * &dim * &chi);
                let idx = format!("{k},{l};{}", self.ordering);
                match self.virasoro_remainder(k, l, &basis)? {
                    Ok(mu) => {
                        out.push(Check::eq("virasoro-central", idx.clone(), &mu, &want));
                        let star = &mu / (&shift * &shift);
                        let want_star = -(frac(1, 2) * &c * &dim * &chi) / &shift;
                        out.push(Check::eq("virasoro-rescaled", idx.clone(), &star, &want_star));
                        if self.ordering.is_standard() {
                            let geo = &cc * table(self.tables().chi_geometric(&r0, lab(k), lab(l)))?;
                            out.push(Check::eq("virasoro-classical", idx, &star, &geo));
                        }
                    }
                    Err(msg) => out.push(Check::text("virasoro-central", idx, msg, "scalar", false)),
                }
            }
        }
        Ok(out)
    }

    /// `λ_k` by projecting `L*_k v` onto `ℂv`, for `k = 0, …, −3g`.
    pub fn weight_direct(&self) -> Res<WeightDifferential> {
        let g = self.tables().realization().spec().genus as i64;
        let v = self.module.vacuum();
        let mut lambda = Vec::new();
        for k in (-3 * g..=0).rev() {
            let w = self.apply_rescaled(k, &v)?;
            let x = self.module.component(&w, &[])?;
            lambda.push(x);
        }
        Ok(WeightDifferential { lambda })
    }

    fn weight_terms(&self, k: i64) -> Res<(Scalar, Scalar)> {
        let lie = self.module.algebra().lie();
        let chi = &self.module.weight().chi;
        let g = self.tables().realization().spec().genus as i64;
        let p = int(lie.positive_roots() as i64);
        let c = self.module.level();
        let chi_at = |m: i64| -> &[Scalar] { &chi[(-m) as usize] };
        // Σ (½⟨χ_m,χ_n⟩ + Σ_s α_{mn}^s ⟨χ_s,ρ̄⟩) l_k^{mn} and Σ γ_{[mn]} l_k^{mn}
        let mut base = Scalar::zero();
        let mut signed_gamma = Scalar::zero();
        for m in -g..=0 {
            for n in -g..=0 {
                let l = table(self.tables().l(lab(k), lab(m), lab(n)))?;
                if l.is_zero() {
                    continue;
                }
                let mut term = frac(1, 2) * lie.casimir_pairing(chi_at(m), chi_at(n));
                for s in -g..=0 {
                    let a = table(self.tables().alpha(lab(m), lab(n), lab(s)))?;
                    term += a * lie.casimir_pairing(chi_at(s), lie.rho());
                }
                base += term * &l;
                let gamma = table(self.tables().gamma(lab(m), lab(n)))?;
                let sign = if self.ordering.is_plus(m, n) { int(1) } else { int(-1) };
                signed_gamma += sign * gamma * l;
            }
        }
        Ok((base, p * c * signed_gamma))
    }

    /// `λ_k` by the closed formula with the `γ_{[mn]}` term.
    pub fn weight_formula(&self) -> Res<WeightDifferential> {
        let g = self.tables().realization().spec().genus as i64;
        let rescale = self.rescale()?;
        let mut lambda = Vec::new();
        for k in (-3 * g..=0).rev() {
            let (base, pg) = self.weight_terms(k)?;
            lambda.push(&rescale * (base - pg));
        }
        Ok(WeightDifferential { lambda })
    }

    /// `K(Σ)` coefficients: `p c/(c+κ) (Σ_{cs+} − Σ_{cs−}) γ_{mn} l_k^{mn}`.
    pub fn k_sigma(&self) -> Res<Vec<Scalar>> {
        let g = self.tables().realization().spec().genus;
        let lie = self.module.algebra().lie();
        let factor = -(int(lie.positive_roots() as i64) * self.module.level()) * self.rescale()?;
        let (plus, minus) = self.ordering.critical_split(g);
        let mut out = Vec::new();
        for k in (-3 * g as i64..=0).rev() {
            let mut total = Scalar::zero();
            for (set, sign) in [(&plus, int(1)), (&minus, int(-1))] {
                for &(m, n) in set.iter() {
                    let l = table(self.tables().l(lab(k), lab(m), lab(n)))?;
                    total += &sign * table(self.tables().gamma(lab(m), lab(n)))? * l;
                }
            }
            out.push(&factor * total);
        }
        Ok(out)
    }

    /// `λ_k` by the formula without the `γ` term, plus `K(Σ)`.
    pub fn weight_split(&self) -> Res<WeightDifferential> {
        let g = self.tables().realization().spec().genus as i64;
        let rescale = self.rescale()?;
        let ks = self.k_sigma()?;
        let mut lambda = Vec::new();
        for (i, k) in (-3 * g..=0).rev().enumerate() {
            let (base, _) = self.weight_terms(k)?;
            lambda.push(&rescale * base + &ks[i]);
        }
        Ok(WeightDifferential { lambda })
    }

    /// The weight three ways, the genus-0 closed form, `K(Σ) = 0`, and the
    /// degree claims for `L*_k v`.
    pub fn weight_checks(&self, k_max: i64) -> Res<Report> {
        let genus = self.tables().realization().spec().genus;
        if !self.ordering.in_critical_class(genus) {
            return Err(RepError::Unsupported(format!(
                "ordering {} changes pairs outside the critical square; its weight correction is not defined",
                self.ordering
            )));
        }
        let lie = self.module.algebra().lie();
        let mut r = Report::new("weight");
        let direct = self.weight_direct()?;
        let formula = self.weight_formula()?;
        let split = self.weight_split()?;
        for (i, x) in direct.lambda.iter().enumerate() {
            let k = -(i as i64);
            r.push(Check::eq("weight-formula", k.to_string(), x, &formula.lambda[i]));
            r.push(Check::eq("weight-split", k.to_string(), x, &split.lambda[i]));
        }
        for (i, x) in self.k_sigma()?.iter().enumerate() {
            r.push(Check::eq("k-sigma", (-(i as i64)).to_string(), x, &Scalar::zero()));
        }
        let chi = self.module.weight().chi0();
        let rho = lie.rho();
        let lambda0 = &direct.lambda[0];
        let closed = self.rescale()? * (frac(1, 2) * lie.casimir_pairing(chi, chi) + lie.casimir_pairing(chi, rho));
        r.push(Check::eq("weight-closed-form", "0", lambda0, &closed));
        // −2(c+κ) λ_0 = ⟨χ + 2ρ̄, χ⟩
        let shifted: Vec<Scalar> = chi.iter().zip(rho).map(|(a, b)| a + int(2) * b).collect();
        let lhs = int(-2) * self.shifted_level() * lambda0;
        r.push(Check::eq("weight-classical", "0", &lhs, &lie.casimir_pairing(&shifted, chi)));
        let v = self.module.vacuum();
        for k in 1..=k_max {
            let w = self.apply_rescaled(k, &v)?;
            r.push(Check::text("lemma51-positive", k.to_string(), self.describe(&w), "0", w.is_zero()));
        }
        let g = genus as i64;
        let reach = self.module.depth() - self.dip();
        for k in (-k_max.min(reach)..0).filter(|k| *k < -3 * g) {
            let w = self.apply_rescaled(k, &v)?;
            let below = w.terms().all(|(id, _)| self.module.degree_of(id) < 0);
            r.push(Check::text("lemma51-lower", k.to_string(), self.describe(&w), "deg<0", below && !w.discarded()));
        }
        let lams: Vec<String> = direct.lambda.iter().map(to_pq).collect();
        r.note("lambda", lams.join(","));
        Ok(r)
    }

    /// `Ω w = 2 Σ ε^k L_k w + 2(c+κ) Σ ε^k e_k w`.
    pub fn casimir_apply(&self, w: &ModuleVector) -> Res<ModuleVector> {
        let shift = self.shifted_level();
        let mut out = ModuleVector::empty(w.floor());
        for (k, eps) in self.module.algebra().efield() {
            out.add_scaled(&self.apply(k.n, w)?, &(int(2) * eps));
            out.add_scaled(&self.module.act_e(k.n, w)?, &(int(2) * &shift * eps));
        }
        Ok(out)
    }

    fn e_apply(&self, w: &ModuleVector) -> Res<ModuleVector> {
        let mut out = ModuleVector::empty(w.floor());
        for (k, eps) in self.module.algebra().efield() {
            out.add_scaled(&self.module.act_e(k.n, w)?, eps);
        }
        Ok(out)
    }

    pub fn casimir_spec(&self) -> Res<CasimirSpec> {
        let v = self.module.vacuum();
        let lambda_e = self.module.component(&self.e_apply(&v)?, &[])?;
        let omega_v = self.casimir_apply(&v)?;
        Ok(CasimirSpec {
            epsilon: self.module.algebra().efield().iter().map(|(k, s)| (k.n, s.clone())).collect(),
            lambda_e,
            lambda_omega: self.module.vacuum_multiple(&omega_v),
        })
    }

    /// `[Ω, x(n)] = 0` for the listed `n`, `[Ω, e] = 0`, the eigenvector test
    /// on `v`, and `λ_Ω` against the general and the genus-0 formula.
    pub fn casimir_checks(&self, ns: &[i64]) -> Res<Report> {
        self.rescale()?;
        let m = &self.module;
        let lie = m.algebra().lie();
        let eps_degrees: Vec<i64> = m.algebra().efield().iter().map(|(k, _)| k.n).collect();
        let e_low = eps_degrees.iter().copied().fold(0, i64::min);
        let mut r = Report::new("casimir");
        for &n in ns {
            let basis = self.window(&[n, e_low, n + e_low]);
            for a in 0..lie.dim() {
                let x = Mode::new(a, n);
                let mut failure = None;
                for w in &basis {
                    let c = self.casimir_apply(&m.act(x, w)?)?.minus(&m.act(x, &self.casimir_apply(w)?)?);
                    if !c.is_zero() || c.discarded() {
                        failure = Some((self.describe(w), self.describe(&c)));
                        break;
                    }
                }
                let idx = format!("{n},{}", lie.label(a));
                r.push(match failure {
                    None => Check::text("casimir-current", idx, format!("{}vectors", basis.len()), "0", true),
                    Some((w, c)) => Check::text("casimir-current", format!("{idx};{w}"), c, "0", false),
                });
            }
        }
        let basis = self.window(&[e_low]);
        let mut failure = None;
        for w in &basis {
            let c = self.casimir_apply(&self.e_apply(w)?)?.minus(&self.e_apply(&self.casimir_apply(w)?)?);
            if !c.is_zero() || c.discarded() {
                failure = Some((self.describe(w), self.describe(&c)));
                break;
            }
        }
        r.push(match failure {
            None => Check::text("casimir-e", "-", format!("{}vectors", basis.len()), "0", true),
            Some((w, c)) => Check::text("casimir-e", w, c, "0", false),
        });
        let spec = self.casimir_spec()?;
        let omega_v = self.casimir_apply(&m.vacuum())?;
        r.push(Check::text(
            "casimir-eigenvector",
            "v",
            self.describe(&omega_v),
            "scalar*v",
            spec.lambda_omega.is_some(),
        ));
        let Some(lambda) = spec.lambda_omega.clone() else {
            return Ok(r);
        };
        // general formula
        let g = self.tables().realization().spec().genus as i64;
        let mut general = int(2) * self.shifted_level() * &spec.lambda_e;
        for (k, eps) in &spec.epsilon {
            let (base, pg) = self.weight_terms(*k)?;
            general += eps * int(2) * (base - pg);
        }
        r.push(Check::eq("casimir-eigenvalue", "v", &lambda, &general));
        if g == 0 && spec.epsilon == vec![(0, Scalar::one())] {
            let chi = m.weight().chi0();
            let shifted: Vec<Scalar> = chi.iter().zip(lie.rho()).map(|(a, b)| a + int(2) * b).collect();
            let want = lie.casimir_pairing(&shifted, chi) + int(2) * self.shifted_level() * &spec.lambda_e;
            r.push(Check::eq("casimir-eigenvalue-classical", "v", &lambda, &want));
        }
        // Ω acts as λ_Ω on the whole module
        let basis = self.window(&[e_low]);
        let mut failure = None;
        for w in &basis {
            let ow = self.casimir_apply(w)?;
            if ow != w.scaled(&lambda) || ow.discarded() {
                failure = Some((self.describe(w), self.describe(&ow)));
                break;
            }
        }
        r.push(match failure {
            None => Check::text("casimir-scalar", "-", format!("{}vectors", basis.len()), to_pq(&lambda), true),
            Some((w, o)) => Check::text("casimir-scalar", w, o, to_pq(&lambda), false),
        });
        r.note("lambda_e", to_pq(&spec.lambda_e));
        r.note("lambda_omega", to_pq(&lambda));
        Ok(r)
    }

    /// `E = −(c+κ) e_l` satisfies `[E, x(n)] = [L_l, x(n)]`, and then
    /// `[L_k, E] = [L_k, L_l]` on the window. Only `l ≥ 0` has an action.
    pub fn field_action_checks(&self, l: i64, ks: &[i64], ns: &[i64]) -> Res<Vec<Check>> {
        let m = &self.module;
        let shift = self.shifted_level();
        let e_op = |w: &ModuleVector| -> Res<ModuleVector> { Ok(m.act_e(l, w)?.scaled(&-shift.clone())) };
        let lie = m.algebra().lie();
        let mut out = Vec::new();
        for &n in ns {
            let basis = self.window(&[n, l, n + l]);
            for a in 0..lie.dim() {
                let x = Mode::new(a, n);
                let mut failure = None;
                for w in &basis {
                    let lhs = e_op(&m.act(x, w)?)?.minus(&m.act(x, &e_op(w)?)?);
                    let rhs = self.apply(l, &m.act(x, w)?)?.minus(&m.act(x, &self.apply(l, w)?)?);
                    if lhs != rhs || lhs.discarded() || rhs.discarded() {
                        failure = Some((self.describe(w), self.describe(&lhs), self.describe(&rhs)));
                        break;
                    }
                }
                let idx = format!("{l},{n},{}", lie.label(a));
                out.push(match failure {
                    None => Check::text("field-action-premise", idx, format!("{}vectors", basis.len()), "equal", true),
                    Some((w, x, y)) => Check::text("field-action-premise", format!("{idx};{w}"), x, y, false),
                });
            }
        }
        for &k in ks {
            let basis = self.window(&[k, l, k + l]);
            let mut failure = None;
            for w in &basis {
                let lhs = self.apply(k, &e_op(w)?)?.minus(&e_op(&self.apply(k, w)?)?);
                let rhs = self.apply(k, &self.apply(l, w)?)?.minus(&self.apply(l, &self.apply(k, w)?)?);
                if lhs != rhs || lhs.discarded() || rhs.discarded() {
                    failure = Some((self.describe(w), self.describe(&lhs), self.describe(&rhs)));
                    break;
                }
            }
            let idx = format!("{k},{l}");
            out.push(match failure {
                None => Check::text("field-action", idx, format!("{}vectors", basis.len()), "equal", true),
                Some((w, x, y)) => Check::text("field-action", format!("{idx};{w}"), x, y, false),
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::KnAlgebra;
    use crate::lie::FiniteLieAlgebra;
    use crate::realization::Realization;
    use crate::rep::verma::HighestWeightSpec;

    fn sugawara(lie: FiniteLieAlgebra, chi: Vec<Scalar>, depth: i64, ordering: NormalOrdering) -> Sugawara {
        let t = Arc::new(CoefficientTables::new(Arc::new(Realization::two_point())));
        let alg = Arc::new(KnAlgebra::new(t, Arc::new(lie)));
        let m = VermaModule::new(alg, HighestWeightSpec::genus0(chi, int(1)), depth, 2).unwrap();
        Sugawara::new(Arc::new(m), ordering)
    }

    #[test]
    fn weight_of_abelian_and_sl2() {
        let ab = sugawara(FiniteLieAlgebra::parse("abelian:1").unwrap(), vec![int(3)], 2, NormalOrdering::standard());
        // −(½·9)/1
        assert_eq!(ab.weight_direct().unwrap().lambda, vec![frac(-9, 2)]);
        let sl = sugawara(FiniteLieAlgebra::sl(2).unwrap(), vec![int(1)], 2, NormalOrdering::standard());
        // −1/3 (¼ + ½)
        assert_eq!(sl.weight_direct().unwrap().lambda, vec![frac(-1, 4)]);
        let r = sl.weight_checks(3).unwrap();
        assert!(r.all_passed(), "{:?}", r.first_failure());
        assert_eq!(sl.central_charge().unwrap(), int(1));
    }

    #[test]
    fn commutator_with_current_small_window() {
        for ord in [NormalOrdering::standard(), NormalOrdering::flipped(&[(0, 0)]), NormalOrdering::flipped(&[(1, -1), (-2, 2)])] {
            let s = sugawara(FiniteLieAlgebra::sl(2).unwrap(), vec![int(1)], 4, ord);
            for c in s.current_commutator_checks(&[-1, 0, 2], &[-1, 0, 1]).unwrap() {
                assert!(c.pass, "{c}");
            }
        }
    }

    #[test]
    fn virasoro_central_term() {
        let s = sugawara(FiniteLieAlgebra::sl(2).unwrap(), vec![int(0)], 5, NormalOrdering::standard());
        let checks = s.virasoro_checks(&[-2, -1, 0, 1, 2]).unwrap();
        for c in &checks {
            assert!(c.pass, "{c}");
        }
        assert!(checks.iter().any(|c| c.name == "virasoro-classical" && c.indices.starts_with("2,-2") && c.lhs == "1/2"));
    }

    #[test]
    fn casimir_and_field_action() {
        let s = sugawara(FiniteLieAlgebra::sl(2).unwrap(), vec![int(1)], 3, NormalOrdering::standard());
        let r = s.casimir_checks(&[-1, 0, 1]).unwrap();
        assert!(r.all_passed(), "{:?}", r.first_failure());
        // ⟨χ+2ρ̄, χ⟩ = ⟨3ω, ω⟩ = 3/2
        assert_eq!(s.casimir_spec().unwrap().lambda_omega, Some(frac(3, 2)));
        for c in s.field_action_checks(1, &[-1, 0, 1], &[-1, 1]).unwrap() {
            assert!(c.pass, "{c}");
        }
        assert!(s.field_action_checks(-1, &[0], &[0]).is_err() || s.module().act_e(-1, &s.module().vacuum()).is_err());
    }
}
