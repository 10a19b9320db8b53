//! Structure constants and cocycle coefficients defined by level-line
//! integrals, memoized per index tuple.
//!
//! | family | integral |
//! |---|---|
//! | `alpha_{nm}^k` | `∮ A_n A_m ω^k` |
//! | `gamma_{nm}` | `∮ A_n dA_m` |
//! | `C_{kl}^s` | `∮ [e_k, e_l] Ω^s` |
//! | `l_k^{nm}` | `∮ ω^n ω^m e_k` |
//! | `K_{r,k}^v` | `∮ ω^v e_k dA_r` |
//! | `E_{kl}^{nv}` | `∮ [e_k, e_l] ω^n ω^v` |
//!
//! Infinite sums (`chi_hat`, `psi`, the identity suites) are cut off with the
//! realization's bands, never with fixed ranges.

pub mod identities;
pub mod serialize;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::exact::scalar::int;
use crate::exact::Scalar;
use crate::realization::{Label, LocalExpr, ProjectiveConnection, Realization, RealizationError};
use crate::rep::ordering::NormalOrdering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Alpha(Label, Label, Label),
    Gamma(Label, Label),
    C(Label, Label, Label),
    L(Label, Label, Label),
    K(Label, Label, Label),
    E(Label, Label, Label, Label),
    ChiHat(Label, Label),
    Psi(Label, Label),
}

pub struct CoefficientTables {
    real: Arc<Realization>,
    memo: Mutex<HashMap<Key, Scalar>>,
}

impl std::fmt::Debug for CoefficientTables {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoefficientTables").field("real", &self.real).finish()
    }
}

type Res<T> = Result<T, RealizationError>;

/// `Σ_{n=a}^{b}` with the convention that `b < a` means `-Σ_{n=b}^{a}`.
pub fn signed_range(a: i64, b: i64) -> (i64, std::ops::RangeInclusive<i64>) {
    if b >= a {
        (1, a..=b)
    } else {
        (-1, b..=a)
    }
}

impl CoefficientTables {
    pub fn new(real: Arc<Realization>) -> Self {
        CoefficientTables { real, memo: Mutex::new(HashMap::new()) }
    }

    pub fn realization(&self) -> &Arc<Realization> {
        &self.real
    }

    fn branches(&self) -> usize {
        self.real.branches()
    }

    fn labels(&self, n: i64) -> impl Iterator<Item = Label> {
        let k = self.branches();
        (1..=k).map(move |p| Label::new(n, p))
    }

    fn cached(&self, key: Key, compute: impl FnOnce() -> Res<Scalar>) -> Res<Scalar> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let v = compute()?;
        self.memo.lock().expect("memo lock").insert(key, v.clone());
        Ok(v)
    }

    pub(crate) fn integral(&self, expr: LocalExpr) -> Res<Scalar> {
        if self.real.imported().is_some() {
            self.real.integrate_either(&expr)
        } else {
            self.real.integrate(&expr)
        }
    }

    fn bracket_e(&self, k: Label, l: Label) -> Res<LocalExpr> {
        Ok(LocalExpr::vf_bracket(self.real.e(k)?, self.real.e(l)?))
    }

    pub fn alpha(&self, n: Label, m: Label, k: Label) -> Res<Scalar> {
        self.cached(Key::Alpha(n, m, k), || {
            let r = &self.real;
            self.integral(LocalExpr::prod(vec![r.a(n)?, r.a(m)?, r.omega(k)?]))
        })
    }

    /// Nonzero `alpha_{nm}^k` over the band `k - (n+m) ∈ alpha`.
    pub fn alpha_support(&self, n: Label, m: Label) -> Res<Vec<(Label, Scalar)>> {
        let band = self.real.bands().alpha;
        let mut out = Vec::new();
        for off in band.range() {
            for k in self.labels(n.n + m.n + off) {
                let v = self.alpha(n, m, k)?;
                if !v.is_zero() {
                    out.push((k, v));
                }
            }
        }
        Ok(out)
    }

    pub fn gamma(&self, n: Label, m: Label) -> Res<Scalar> {
        self.cached(Key::Gamma(n, m), || {
            let r = &self.real;
            self.integral(LocalExpr::prod(vec![r.a(n)?, r.a(m)?.d()]))
        })
    }

    pub fn c(&self, k: Label, l: Label, s: Label) -> Res<Scalar> {
        self.cached(Key::C(k, l, s), || {
            self.integral(self.bracket_e(k, l)?.times(self.real.big_omega(s)?))
        })
    }

    /// Nonzero `C_{kl}^s` over the band `s - (k+l) ∈ C`.
    pub fn c_support(&self, k: Label, l: Label) -> Res<Vec<(Label, Scalar)>> {
        let band = self.real.bands().c;
        let mut out = Vec::new();
        for off in band.range() {
            for s in self.labels(k.n + l.n + off) {
                let v = self.c(k, l, s)?;
                if !v.is_zero() {
                    out.push((s, v));
                }
            }
        }
        Ok(out)
    }

    /// `l_k^{nm}`; symmetric in `n, m`, so the key is sorted.
    pub fn l(&self, k: Label, n: Label, m: Label) -> Res<Scalar> {
        let (n, m) = if n <= m { (n, m) } else { (m, n) };
        self.cached(Key::L(k, n, m), || {
            let r = &self.real;
            self.integral(LocalExpr::prod(vec![r.omega(n)?, r.omega(m)?, r.e(k)?]))
        })
    }

    /// `K_{r,k}^v`
    pub fn kk(&self, r: Label, k: Label, v: Label) -> Res<Scalar> {
        self.cached(Key::K(r, k, v), || {
            let re = &self.real;
            self.integral(LocalExpr::prod(vec![re.omega(v)?, re.e(k)?, re.a(r)?.d()]))
        })
    }

    /// Nonzero `K_{r,k}^v` over the band `v - (r+k) ∈ K`.
    pub fn kk_support(&self, r: Label, k: Label) -> Res<Vec<(Label, Scalar)>> {
        let band = self.real.bands().k;
        let mut out = Vec::new();
        for off in band.range() {
            for v in self.labels(r.n + k.n + off) {
                let x = self.kk(r, k, v)?;
                if !x.is_zero() {
                    out.push((v, x));
                }
            }
        }
        Ok(out)
    }

    /// `E_{kl}^{nv}`
    pub fn e(&self, k: Label, l: Label, n: Label, v: Label) -> Res<Scalar> {
        self.cached(Key::E(k, l, n, v), || {
            let r = &self.real;
            self.integral(LocalExpr::prod(vec![self.bracket_e(k, l)?, r.omega(n)?, r.omega(v)?]))
        })
    }

    /// `χ̂_{kl} = (Σ_{n>0, v≤0} − Σ_{n≤0, v>0}) K_{v,k}^n K_{n,l}^v`.
    pub fn chi_hat(&self, k: Label, l: Label) -> Res<Scalar> {
        self.cached(Key::ChiHat(k, l), || {
            let band = self.real.bands().k;
            // K_{v,k}^n ≠ 0 needs n - v - k ∈ band, K_{n,l}^v needs v - n - l ∈ band
            let dlo = (k.n + band.lo).max(-l.n - band.hi);
            let dhi = (k.n + band.hi).min(-l.n - band.lo);
            let mut total = Scalar::zero();
            for d in dlo..=dhi {
                // n - v = d; first sum: n ≥ 1, v = n - d ≤ 0
                for n in 1..=d {
                    total += self.k_product(k, l, n, n - d)?;
                }
                // second sum: n ≤ 0, v = n - d ≥ 1
                for n in (1 + d)..=0 {
                    total -= self.k_product(k, l, n, n - d)?;
                }
            }
            Ok(total)
        })
    }

    fn k_product(&self, k: Label, l: Label, n: i64, v: i64) -> Res<Scalar> {
        let mut total = Scalar::zero();
        for nl in self.labels(n).collect::<Vec<_>>() {
            for vl in self.labels(v).collect::<Vec<_>>() {
                let a = self.kk(vl, k, nl)?;
                if a.is_zero() {
                    continue;
                }
                total += a * self.kk(nl, l, vl)?;
            }
        }
        Ok(total)
    }

    /// Range of `v` outside which `Σ_{n=0}^{v+1} (…) γ_{nv}` has no terms.
    fn psi_v_range(&self) -> std::ops::RangeInclusive<i64> {
        let g = self.real.bands().gamma;
        (g.lo.min(-2) - 1)..=(g.hi.max(0) + 1)
    }

    /// `Σ_v Σ_{n=0}^{v+1} f(n, v) γ_{nv}` summed over branches, with the
    /// reversed-range sign convention.
    fn psi_like(&self, mut f: impl FnMut(Label, Label) -> Res<Scalar>) -> Res<Scalar> {
        let mut total = Scalar::zero();
        for v in self.psi_v_range() {
            let (sign, ns) = signed_range(0, v + 1);
            for n in ns {
                for nl in self.labels(n).collect::<Vec<_>>() {
                    for vl in self.labels(v).collect::<Vec<_>>() {
                        let g = self.gamma(nl, vl)?;
                        if g.is_zero() {
                            continue;
                        }
                        let term = f(nl, vl)? * g;
                        if sign > 0 {
                            total += term;
                        } else {
                            total -= term;
                        }
                    }
                }
            }
        }
        Ok(total)
    }

    /// `ψ_{kl} = Σ_v Σ_{n=0}^{v+1} E_{kl}^{nv} γ_{nv}` for `Σ_0`.
    pub fn psi(&self, k: Label, l: Label) -> Res<Scalar> {
        self.cached(Key::Psi(k, l), || self.psi_like(|n, v| self.e(k, l, n, v)))
    }

    /// `ψ` for another ordering: every pair moved into `Σ^-` adds
    /// `-E^{nv} γ_{nv}`, every pair moved into `Σ^+` adds `+E^{nv} γ_{nv}`.
    pub fn psi_ordered(&self, k: Label, l: Label, ordering: &NormalOrdering) -> Res<Scalar> {
        let mut total = self.psi(k, l)?;
        for ((a, b), eps) in ordering.flips() {
            for al in self.labels(a).collect::<Vec<_>>() {
                for bl in self.labels(b).collect::<Vec<_>>() {
                    let term = self.e(k, l, al, bl)? * self.gamma(al, bl)? * int(eps);
                    total -= term;
                }
            }
        }
        Ok(total)
    }

    /// `Φ(e_s) = Σ_v Σ_{n=0}^{v+1} l_s^{nv} γ_{nv}`.
    pub fn phi(&self, s: Label) -> Res<Scalar> {
        self.psi_like(|n, v| self.l(s, n, v))
    }

    /// `Φ_Σ(e_s)` for another ordering, shifted like [`Self::psi_ordered`].
    pub fn phi_ordered(&self, s: Label, ordering: &NormalOrdering) -> Res<Scalar> {
        let mut total = self.phi(s)?;
        for ((a, b), eps) in ordering.flips() {
            for al in self.labels(a).collect::<Vec<_>>() {
                for bl in self.labels(b).collect::<Vec<_>>() {
                    total -= self.l(s, al, bl)? * self.gamma(al, bl)? * int(eps);
                }
            }
        }
        Ok(total)
    }

    /// `χ_{kl} = ψ_{kl} + χ̂_{kl}` for `Σ_0`.
    pub fn chi(&self, k: Label, l: Label) -> Res<Scalar> {
        Ok(self.psi(k, l)? + self.chi_hat(k, l)?)
    }

    pub fn chi_ordered(&self, k: Label, l: Label, ordering: &NormalOrdering) -> Res<Scalar> {
        Ok(self.psi_ordered(k, l, ordering)? + self.chi_hat(k, l)?)
    }

    /// `χ_R(e_k, e_l) = (1/12) ∮ (½(e_k''' e_l − e_k e_l''') − R (e_k' e_l − e_k e_l'))`.
    pub fn chi_geometric(&self, r: &ProjectiveConnection, k: Label, l: Label) -> Res<Scalar> {
        let ek = self.real.e(k)?;
        let el = self.real.e(l)?;
        let third = |x: LocalExpr| x.d().d().d();
        let half = Scalar::one() / int(2);
        let integrand = LocalExpr::lin(vec![
            (half.clone(), third(ek.clone()).times(el.clone())),
            (-half, ek.clone().times(third(el.clone()))),
            // e' f − e f' = [f, e]
            (int(-1), r.expr().times(LocalExpr::vf_bracket(el, ek))),
        ]);
        Ok(self.integral(integrand)? / int(12))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::frac;

    fn two_point() -> CoefficientTables {
        CoefficientTables::new(Arc::new(Realization::two_point()))
    }

    fn t(n: i64) -> Label {
        Label::two_point(n)
    }

    #[test]
    fn genus_zero_examples() {
        let c = two_point();
        assert_eq!(c.alpha(t(2), t(3), t(5)).unwrap(), int(1));
        assert_eq!(c.alpha(t(2), t(3), t(4)).unwrap(), int(0));
        assert_eq!(c.alpha_support(t(0), t(-4)).unwrap(), vec![(t(-4), int(1))]);
        assert_eq!(c.gamma(t(3), t(-3)).unwrap(), int(-3));
        assert_eq!(c.gamma(t(2), t(5)).unwrap(), int(0));
        assert_eq!(c.gamma(t(4), t(4)).unwrap(), int(0));
        assert_eq!(c.c(t(1), t(2), t(3)).unwrap(), int(1));
        assert_eq!(c.c(t(-1), t(1), t(0)).unwrap(), int(2));
        assert_eq!(c.c_support(t(3), t(3)).unwrap(), vec![]);
        assert_eq!(c.l(t(2), t(3), t(-1)).unwrap(), int(1));
        assert_eq!(c.l(t(0), t(1), t(2)).unwrap(), int(0));
        assert_eq!(c.kk(t(3), t(-1), t(2)).unwrap(), int(3));
        assert_eq!(c.kk(t(0), t(2), t(2)).unwrap(), int(0));
    }

    #[test]
    fn sugawara_cocycle_diagonal() {
        let c = two_point();
        assert_eq!(c.chi(t(2), t(-2)).unwrap(), int(-1));
        assert_eq!(c.psi(t(3), t(-3)).unwrap(), int(0));
        assert_eq!(c.chi(t(1), t(1)).unwrap(), int(0));
        assert_eq!(c.chi(t(-3), t(3)).unwrap(), int(4));
    }

    #[test]
    fn geometric_cocycle() {
        let c = two_point();
        let zero = ProjectiveConnection::zero(c.realization().spec());
        assert_eq!(c.chi_geometric(&zero, t(2), t(-2)).unwrap(), frac(1, 2));
        assert_eq!(c.chi_geometric(&zero, t(3), t(3)).unwrap(), int(0));
        let r3 = ProjectiveConnection::genus0_double_pole(int(3));
        assert_eq!(c.chi_geometric(&r3, t(2), t(-2)).unwrap(), frac(-1, 2));
    }
}
