//! Identity suites over index boxes. Every check computes both sides
//! independently from the memoized integrals.

use num_traits::Zero;

use crate::exact::scalar::{frac, int};
use crate::exact::Scalar;
use crate::realization::{Label, LocalExpr, ProjectiveConnection, RealizationError, Side};
use crate::report::Check;

use super::CoefficientTables;

type Res<T> = Result<T, RealizationError>;

fn labels(t: &CoefficientTables, n: i64) -> Vec<Label> {
    (1..=t.realization().branches()).map(|p| Label::new(n, p)).collect()
}

fn box_labels(t: &CoefficientTables, range: i64) -> Vec<Label> {
    (-range..=range).flat_map(|n| labels(t, n)).collect()
}

fn idx(ls: &[Label]) -> String {
    ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

/// `∮ f^λ_{n,p} f^{1−λ}_{m,r} = δ_{n,−m} δ_{p,r}` for every listed weight.
pub fn duality(t: &CoefficientTables, weights: &[i64], range: i64) -> Res<Vec<Check>> {
    let real = t.realization();
    let mut out = Vec::new();
    for &w in weights {
        for n in box_labels(t, range) {
            for m in box_labels(t, range) {
                let f = LocalExpr::Elem(real.basis(w, n.n, n.p)?);
                let g = LocalExpr::Elem(real.basis(1 - w, m.n, m.p)?);
                let got = real.integrate(&f.times(g))?;
                let want = if n.n == -m.n && n.p == m.p { int(1) } else { int(0) };
                out.push(Check::eq("duality", format!("{w},{n},{m}"), &got, &want));
            }
        }
    }
    Ok(out)
}

/// In-side and out-side integrals of `f^λ_n f^{1−λ}_m` agree.
pub fn side_consistency(t: &CoefficientTables, weights: &[i64], range: i64) -> Res<Vec<Check>> {
    let real = t.realization();
    let mut out = Vec::new();
    for &w in weights {
        for n in box_labels(t, range) {
            for m in box_labels(t, range) {
                let e = LocalExpr::Elem(real.basis(w, n.n, n.p)?).times(LocalExpr::Elem(real.basis(1 - w, m.n, m.p)?));
                let a = real.contour_integral(Side::In, &e)?;
                let b = real.contour_integral(Side::Out, &e)?;
                out.push(Check::eq("side-consistency", format!("{w},{n},{m}"), &a, &b));
            }
        }
    }
    Ok(out)
}

/// `γ_{nm}` and `χ_R(e_n, e_m)` (`R = 0`) vanish outside their bands; at
/// two-point genus 0 also their diagonal values `−n` and `(n³−n)/12`.
pub fn locality(t: &CoefficientTables, range: i64) -> Res<Vec<Check>> {
    let real = t.realization();
    let bands = *real.bands();
    let zero = ProjectiveConnection::zero(real.spec());
    let closed_form = real.is_two_point() && real.spec().genus == 0 && real.imported().is_none();
    let mut out = Vec::new();
    for n in box_labels(t, range) {
        for m in box_labels(t, range) {
            let g = t.gamma(n, m)?;
            let x = t.chi_geometric(&zero, n, m)?;
            let s = n.n + m.n;
            if closed_form {
                let gw = if s == 0 { int(-n.n) } else { int(0) };
                let xw = if s == 0 { frac(n.n.pow(3) - n.n, 12) } else { int(0) };
                out.push(Check::eq("gamma-values", format!("{n},{m}"), &g, &gw));
                out.push(Check::eq("chi-geometric-values", format!("{n},{m}"), &x, &xw));
            } else {
                if !bands.gamma.contains(s) {
                    out.push(Check::eq("gamma-band", format!("{n},{m}"), &g, &int(0)));
                }
                if !bands.chi.contains(s) {
                    out.push(Check::eq("chi-geometric-band", format!("{n},{m}"), &x, &int(0)));
                }
            }
        }
    }
    Ok(out)
}

/// `F_{r,k}^{sn} = Σ_m α_{mr}^s l_k^{nm}` is symmetric in `s, n` and equals
/// `∮ A_r ω^s ω^n e_k`.
pub fn f_symmetry(t: &CoefficientTables, range: i64) -> Res<Vec<Check>> {
    let real = t.realization();
    let band = real.bands().alpha;
    let f = |r: Label, k: Label, s: Label, n: Label| -> Res<Scalar> {
        let mut total = Scalar::zero();
        for d in band.range() {
            for m in labels(t, s.n - r.n - d) {
                let a = t.alpha(m, r, s)?;
                if !a.is_zero() {
                    total += a * t.l(k, n, m)?;
                }
            }
        }
        Ok(total)
    };
    let mut out = Vec::new();
    let all = box_labels(t, range);
    for &r in &all {
        for &k in &all {
            for &s in &all {
                for &n in &all {
                    if n < s {
                        continue;
                    }
                    let lhs = f(r, k, s, n)?;
                    let rhs = f(r, k, n, s)?;
                    out.push(Check::eq("f-symmetry", idx(&[r, k, s, n]), &lhs, &rhs));
                    let direct = t.integral(LocalExpr::prod(vec![real.a(r)?, real.omega(s)?, real.omega(n)?, real.e(k)?]))?;
                    out.push(Check::eq("f-direct", idx(&[r, k, s, n]), &lhs, &direct));
                }
            }
        }
    }
    Ok(out)
}

/// `(Σ_{n>N, m≤N} − Σ_{m>N, n≤N}) Σ_{branches} α_{n,r}^m α_{m,k}^n`.
pub fn gamma_split_sum(t: &CoefficientTables, r: Label, k: Label, cut: i64) -> Res<Scalar> {
    let band = t.realization().bands().alpha;
    // α_{n,r}^m ≠ 0 needs m − n − r ∈ band; α_{m,k}^n needs n − m − k ∈ band
    let dlo = (r.n + band.lo).max(-k.n - band.hi);
    let dhi = (r.n + band.hi).min(-k.n - band.lo);
    let mut total = Scalar::zero();
    let mut term = |n: i64, m: i64, sign: i64| -> Res<()> {
        for nl in labels(t, n) {
            for ml in labels(t, m) {
                let a = t.alpha(nl, r, ml)?;
                if a.is_zero() {
                    continue;
                }
                let b = t.alpha(ml, k, nl)?;
                if sign > 0 {
                    total += a * b;
                } else {
                    total -= a * b;
                }
            }
        }
        Ok(())
    };
    for d in dlo..=dhi {
        // m = n + d
        for n in (cut + 1)..=(cut - d) {
            term(n, n + d, 1)?;
        }
        for m in (cut + 1)..=(cut + d) {
            term(m - d, m, -1)?;
        }
    }
    Ok(total)
}

/// `γ_{rk}` against the split α-sum at cut `N`.
pub fn gamma_from_alpha(t: &CoefficientTables, range: i64, cuts: &[i64]) -> Res<Vec<Check>> {
    let mut out = Vec::new();
    let all = box_labels(t, range);
    for &cut in cuts {
        for &r in &all {
            for &k in &all {
                let lhs = t.gamma(r, k)?;
                let rhs = gamma_split_sum(t, r, k, cut)?;
                let name = if cut == 0 { "gamma-alpha-split" } else { "gamma-alpha-split-cut" };
                let indices = if cut == 0 { idx(&[r, k]) } else { format!("{},N={cut}", idx(&[r, k])) };
                out.push(Check::eq(name, indices, &lhs, &rhs));
            }
        }
    }
    Ok(out)
}

/// `Σ_m (l_k^{nm} K_{m,l}^v + l_k^{mv} K_{m,l}^n) = −E_{kl}^{nv} = −Σ_s C_{kl}^s l_s^{nv}`.
pub fn lk_sum_identity(t: &CoefficientTables, range: i64) -> Res<Vec<Check>> {
    let real = t.realization();
    let lband = real.bands().l;
    let mut out = Vec::new();
    let all = box_labels(t, range);
    for &k in &all {
        for &l in &all {
            let cs = t.c_support(k, l)?;
            for &n in &all {
                for &v in &all {
                    let mut lhs = Scalar::zero();
                    for d in lband.range() {
                        for m in labels(t, k.n - n.n + d) {
                            let x = t.l(k, n, m)?;
                            if !x.is_zero() {
                                lhs += x * t.kk(m, l, v)?;
                            }
                        }
                        for m in labels(t, k.n - v.n + d) {
                            let x = t.l(k, m, v)?;
                            if !x.is_zero() {
                                lhs += x * t.kk(m, l, n)?;
                            }
                        }
                    }
                    let mid = -t.e(k, l, n, v)?;
                    let mut rhs = Scalar::zero();
                    for (s, c) in &cs {
                        rhs -= c * t.l(*s, n, v)?;
                    }
                    let i = idx(&[k, l, n, v]);
                    out.push(Check::eq("lk-sum", i.clone(), &lhs, &mid));
                    out.push(Check::eq("e-from-c", i, &mid, &rhs));
                }
            }
        }
    }
    Ok(out)
}

/// `ψ_{kl} = Φ([e_k, e_l]) = Σ_s C_{kl}^s Φ(e_s)`.
pub fn coboundary(t: &CoefficientTables, range: i64) -> Res<Vec<Check>> {
    let mut out = Vec::new();
    let all = box_labels(t, range);
    for &k in &all {
        for &l in &all {
            let lhs = t.psi(k, l)?;
            let mut rhs = Scalar::zero();
            for (s, c) in t.c_support(k, l)? {
                rhs += c * t.phi(s)?;
            }
            out.push(Check::eq("coboundary", idx(&[k, l]), &lhs, &rhs));
        }
    }
    Ok(out)
}

/// `K_{r,k}^v = Σ_m l_k^{vm} γ_{mr}` over the K band.
pub fn k_from_l_gamma(t: &CoefficientTables, range: i64) -> Res<Vec<Check>> {
    let real = t.realization();
    let bands = *real.bands();
    let mut out = Vec::new();
    let all = box_labels(t, range);
    for &r in &all {
        for &k in &all {
            for off in bands.k.range() {
                for v in labels(t, r.n + k.n + off) {
                    let lhs = t.kk(r, k, v)?;
                    let mut rhs = Scalar::zero();
                    for d in bands.l.range() {
                        for m in labels(t, k.n - v.n + d) {
                            let x = t.l(k, v, m)?;
                            if !x.is_zero() {
                                rhs += x * t.gamma(m, r)?;
                            }
                        }
                    }
                    out.push(Check::eq("k-from-l-gamma", idx(&[r, k, v]), &lhs, &rhs));
                }
            }
        }
    }
    Ok(out)
}

/// `α_{(n,p),(m,r)}^{(n+m,s)} = δ_p^s δ_r^s`.
pub fn alpha_leading(t: &CoefficientTables, range: i64) -> Res<Vec<Check>> {
    let mut out = Vec::new();
    let all = box_labels(t, range);
    for &a in &all {
        for &b in &all {
            for s in labels(t, a.n + b.n) {
                let got = t.alpha(a, b, s)?;
                let want = if a.p == s.p && b.p == s.p { int(1) } else { int(0) };
                out.push(Check::eq("alpha-leading", idx(&[a, b, s]), &got, &want));
            }
        }
    }
    Ok(out)
}

/// Measured support of α, γ, l, K, C, χ over the box against the bands.
pub fn grading_bands(t: &CoefficientTables, range: i64) -> Res<Vec<Check>> {
    let real = t.realization();
    let bands = *real.bands();
    let zero = ProjectiveConnection::zero(real.spec());
    let mut measured: [Option<(i64, i64)>; 6] = [None; 6];
    let mut see = |i: usize, off: i64| {
        let e = measured[i].get_or_insert((off, off));
        e.0 = e.0.min(off);
        e.1 = e.1.max(off);
    };
    let all = box_labels(t, range);
    for &n in &all {
        for &m in &all {
            // scan a margin around each declared band so leakage would show
            for off in (bands.alpha.lo - 2)..=(bands.alpha.hi + 2) {
                for k in labels(t, n.n + m.n + off) {
                    if !t.alpha(n, m, k)?.is_zero() {
                        see(0, off);
                    }
                }
            }
            if !t.gamma(n, m)?.is_zero() {
                see(1, n.n + m.n);
            }
            for off in (bands.l.lo - 2)..=(bands.l.hi + 2) {
                for k in labels(t, n.n + m.n - off) {
                    if !t.l(k, n, m)?.is_zero() {
                        see(2, off);
                    }
                }
            }
            for off in (bands.k.lo - 2)..=(bands.k.hi + 2) {
                for v in labels(t, n.n + m.n + off) {
                    if !t.kk(n, m, v)?.is_zero() {
                        see(3, off);
                    }
                }
            }
            for off in (bands.c.lo - 2)..=(bands.c.hi + 2) {
                for s in labels(t, n.n + m.n + off) {
                    if !t.c(n, m, s)?.is_zero() {
                        see(4, off);
                    }
                }
            }
            if !t.chi_geometric(&zero, n, m)?.is_zero() {
                see(5, n.n + m.n);
            }
        }
    }
    let declared = [bands.alpha, bands.gamma, bands.l, bands.k, bands.c, bands.chi];
    let names = ["alpha", "gamma", "l", "K", "C", "chi"];
    Ok((0..6)
        .map(|i| {
            let d = declared[i];
            let (txt, pass) = match measured[i] {
                Some((lo, hi)) => (format!("[{lo},{hi}]"), d.contains(lo) && d.contains(hi)),
                None => ("empty".to_string(), true),
            };
            Check::text("grading-band", names[i], txt, d.to_string().replace(' ', ""), pass)
        })
        .collect())
}

/// `γ` and `χ` antisymmetry, and the cocycle condition for `χ` on triples.
pub fn antisymmetry_and_cocycle(t: &CoefficientTables, range: i64, triple_range: i64) -> Res<Vec<Check>> {
    let mut out = Vec::new();
    let all = box_labels(t, range);
    for &n in &all {
        for &m in &all {
            out.push(Check::eq("gamma-antisymmetry", idx(&[n, m]), &t.gamma(n, m)?, &-t.gamma(m, n)?));
            out.push(Check::eq("chi-antisymmetry", idx(&[n, m]), &t.chi(n, m)?, &-t.chi(m, n)?));
        }
    }
    let tri = box_labels(t, triple_range);
    for &a in &tri {
        for &b in &tri {
            for &c in &tri {
                let mut total = Scalar::zero();
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    for (s, coef) in t.c_support(x, y)? {
                        total += coef * t.chi(s, z)?;
                    }
                }
                out.push(Check::eq("chi-cocycle", idx(&[a, b, c]), &total, &int(0)));
            }
        }
    }
    Ok(out)
}

/// Diagonal and band values of the Sugawara cocycle: `χ_{k,−k} = −(k³−k)/6`,
/// `ψ_{k,−k} = 0`, `χ_{kl} = 0` outside the band.
pub fn chi_values(t: &CoefficientTables, range: i64) -> Res<Vec<Check>> {
    let real = t.realization();
    let band = real.bands().chi;
    let two_point = real.is_two_point() && real.spec().genus == 0;
    let mut out = Vec::new();
    for k in -range..=range {
        for l in -range..=range {
            let (kl, ll) = (Label::two_point(k), Label::two_point(l));
            let chi = t.chi(kl, ll)?;
            if k + l == 0 && two_point {
                out.push(Check::eq("chi-diagonal", idx(&[kl, ll]), &chi, &frac(-(k.pow(3) - k), 6)));
                out.push(Check::eq("psi-diagonal", idx(&[kl, ll]), &t.psi(kl, ll)?, &int(0)));
            } else if !band.contains(k + l) || (two_point && k + l != 0) {
                out.push(Check::eq("chi-band", idx(&[kl, ll]), &chi, &int(0)));
            }
        }
    }
    Ok(out)
}

/// Multiplier `d` and `α_+` with `χ = d · χ_R`, `R = α_+ z^{-2}`, fitted from
/// `k = 2, 3` on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleIdentification {
    pub d: Scalar,
    pub alpha_plus: Scalar,
}

pub fn identify_cocycle(t: &CoefficientTables) -> Res<Option<CocycleIdentification>> {
    // 12 χ_{k,−k} = d (k³ − k) − 2 k (d α_+), linear in (d, d α_+)
    let row = |k: i64| -> Res<(Scalar, Scalar, Scalar)> {
        let chi = t.chi(Label::two_point(k), Label::two_point(-k))?;
        Ok((int(k.pow(3) - k), int(-2 * k), chi * int(12)))
    };
    let (a1, b1, c1) = row(2)?;
    let (a2, b2, c2) = row(3)?;
    let det = &a1 * &b2 - &a2 * &b1;
    if det.is_zero() {
        return Ok(None);
    }
    let d = (&c1 * &b2 - &c2 * &b1) / &det;
    let da = (&a1 * &c2 - &a2 * &c1) / &det;
    if d.is_zero() {
        return Ok(None);
    }
    let alpha_plus = da / &d;
    Ok(Some(CocycleIdentification { d, alpha_plus }))
}

/// `χ_{kl} = d · χ_R(e_k, e_l)` on the box with the fitted `d`, `α_+`.
pub fn identification_checks(t: &CoefficientTables, range: i64) -> Res<Vec<Check>> {
    let mut out = Vec::new();
    let Some(id) = identify_cocycle(t)? else {
        out.push(Check::text("cocycle-identification", "-", "singular", "d,alpha+", false));
        return Ok(out);
    };
    out.push(Check::eq("cocycle-multiplier", "d", &id.d, &int(-2)));
    out.push(Check::eq("cocycle-alpha-plus", "alpha+", &id.alpha_plus, &int(0)));
    let r = ProjectiveConnection::genus0_double_pole(id.alpha_plus.clone());
    for k in -range..=range {
        for l in -range..=range {
            let (kl, ll) = (Label::two_point(k), Label::two_point(l));
            let lhs = t.chi(kl, ll)?;
            let rhs = &id.d * t.chi_geometric(&r, kl, ll)?;
            out.push(Check::eq("chi-vs-geometric", idx(&[kl, ll]), &lhs, &rhs));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Point;
    use crate::realization::{Realization, RealizationSpec};
    use std::sync::Arc;

    fn two_point() -> CoefficientTables {
        CoefficientTables::new(Arc::new(Realization::two_point()))
    }

    fn multi() -> CoefficientTables {
        let spec = RealizationSpec::multi_point(
            vec![Point::int(0), Point::int(1)],
            vec![Point::int(2), Point::Infinity],
            8,
        )
        .unwrap();
        CoefficientTables::new(Arc::new(Realization::new(spec).unwrap()))
    }

    fn all_pass(cs: &[Check]) {
        if let Some(c) = cs.iter().find(|c| !c.pass) {
            panic!("{c}");
        }
    }

    #[test]
    fn split_sum_sample() {
        let t = two_point();
        assert_eq!(gamma_split_sum(&t, Label::two_point(1), Label::two_point(-1), 0).unwrap(), int(-1));
    }

    #[test]
    fn two_point_suites_small_box() {
        let t = two_point();
        all_pass(&gamma_from_alpha(&t, 3, &[0, -1, 2]).unwrap());
        all_pass(&f_symmetry(&t, 2).unwrap());
        all_pass(&lk_sum_identity(&t, 2).unwrap());
        all_pass(&coboundary(&t, 3).unwrap());
        all_pass(&k_from_l_gamma(&t, 3).unwrap());
        all_pass(&chi_values(&t, 3).unwrap());
        all_pass(&antisymmetry_and_cocycle(&t, 2, 2).unwrap());
    }

    #[test]
    fn cocycle_identification() {
        let t = two_point();
        let id = identify_cocycle(&t).unwrap().unwrap();
        assert_eq!(id.d, int(-2));
        assert_eq!(id.alpha_plus, int(0));
        all_pass(&identification_checks(&t, 3).unwrap());
    }

    #[test]
    fn multi_point_small_box() {
        let t = multi();
        all_pass(&duality(&t, &[0, 1], 2).unwrap());
        all_pass(&side_consistency(&t, &[0, 1], 2).unwrap());
        all_pass(&alpha_leading(&t, 2).unwrap());
        all_pass(&k_from_l_gamma(&t, 1).unwrap());
        all_pass(&gamma_from_alpha(&t, 1, &[0]).unwrap());
    }
}
