//! Line-oriented realization files (`knreal v1`).
//!
//! ```text
//! knreal v1 genus=0 K=1
//! point in 1 0/1
//! point out 1 inf
//! depth 12
//! band alpha 0 0
//! ...
//! range 0 -10 10
//! window 0 3 1 0/1 3 15
//! elem 0 3 1 0/1 3 1/1
//! ```
//!
//! `range λ nmin nmax` declares which degrees exist for weight `λ`; every
//! element in range needs a `window λ n p point lo hi` line at every declared
//! point, followed by its nonzero coefficients `elem λ n p point order p/q`.
//! Expansions at `inf` are in the coordinate `w = 1/z` with the `(dz)^λ`
//! factor already applied.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exact::scalar::{parse_scalar, to_pq};
use crate::exact::{ChartSpec, LaurentExpansion, Point, Scalar};

use super::bands::{Band, Bands};
use super::basis::BasisElement;
use super::integrand::LocalExpr;
use super::spec::{Backend, RealizationSpec};
use super::{ImportedStore, Realization, RealizationError};

pub const HEADER: &str = "knreal v1";

const WEIGHTS: [i64; 4] = [-1, 0, 1, 2];

fn point_str(p: &Point) -> String {
    match p {
        Point::Finite(x) => to_pq(x),
        Point::Infinity => "inf".into(),
    }
}

/// Serialize the elements of weights −1, 0, 1, 2 with degree `|n| ≤ range`.
/// Genus-0 elements get windows `[ord, ord + depth]`; imported elements are
/// written with their stored windows.
pub fn export(real: &Realization, range: i64, depth: i64) -> Result<String, RealizationError> {
    let spec = real.spec();
    let mut out = String::new();
    let k = spec.branches();
    writeln!(out, "{HEADER} genus={} K={}", spec.genus, k).unwrap();
    for (i, c) in spec.in_points.iter().enumerate() {
        writeln!(out, "point in {} {}", i + 1, point_str(&c.point)).unwrap();
    }
    for (i, c) in spec.out_points.iter().enumerate() {
        writeln!(out, "point out {} {}", i + 1, point_str(&c.point)).unwrap();
    }
    let depth = if real.imported().is_some() { spec.expansion_depth } else { depth };
    writeln!(out, "depth {depth}").unwrap();
    let b = real.bands();
    for (name, band) in [("alpha", b.alpha), ("gamma", b.gamma), ("l", b.l), ("K", b.k), ("C", b.c), ("chi", b.chi)] {
        writeln!(out, "band {name} {} {}", band.lo, band.hi).unwrap();
    }
    let ranges: Vec<(i64, i64, i64)> = WEIGHTS
        .iter()
        .map(|&w| match real.declared_range(w) {
            Some((lo, hi)) => (w, lo.max(-range), hi.min(range)),
            None => (w, -range, range),
        })
        .collect();
    for &(w, lo, hi) in &ranges {
        writeln!(out, "range {w} {lo} {hi}").unwrap();
    }
    for &(w, lo, hi) in &ranges {
        for n in lo..=hi {
            for p in 1..=k {
                let el = real.basis(w, n, p)?;
                for chart in spec.all_points() {
                    let ord = el.order_at(&chart.point).expect("declared point");
                    let hi = el.stored_window(&chart.point).map_or(ord + depth, |(_, hi)| hi);
                    let e = el.expand(chart, hi)?;
                    let (wlo, whi) = e.window();
                    let pt = point_str(&chart.point);
                    writeln!(out, "window {w} {n} {p} {pt} {} {whi}", wlo.min(ord)).unwrap();
                    for (order, c) in e.terms() {
                        writeln!(out, "elem {w} {n} {p} {pt} {order} {}", to_pq(c)).unwrap();
                    }
                }
            }
        }
    }
    Ok(out)
}

fn perr(line: usize, msg: impl Into<String>) -> RealizationError {
    RealizationError::Parse { line, msg: msg.into() }
}

fn int_field(line: usize, s: &str, what: &str) -> Result<i64, RealizationError> {
    s.parse().map_err(|_| perr(line, format!("bad {what} `{s}`")))
}

#[derive(Default)]
struct Pending {
    window: (i64, i64),
    coeffs: BTreeMap<i64, Scalar>,
}

/// Parse and validate a realization file.
pub fn parse(text: &str) -> Result<Realization, RealizationError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| perr(1, "empty file"))?;
    let rest = header
        .strip_prefix(HEADER)
        .ok_or_else(|| perr(hline, format!("expected header `{HEADER} genus=<g> K=<K>`")))?;
    let mut genus = None;
    let mut branches = None;
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some(("genus", v)) => genus = Some(int_field(hline, v, "genus")?),
            Some(("K", v)) => branches = Some(int_field(hline, v, "K")?),
            _ => return Err(perr(hline, format!("unknown header field `{tok}`"))),
        }
    }
    let genus = genus.filter(|g| *g >= 0).ok_or_else(|| perr(hline, "missing genus"))?;
    let branches = branches.filter(|k| *k >= 1).ok_or_else(|| perr(hline, "missing K"))? as usize;

    let mut ins: Vec<Point> = Vec::new();
    let mut outs: Vec<Point> = Vec::new();
    let mut depth = None;
    let mut bands: BTreeMap<String, Band> = BTreeMap::new();
    let mut ranges: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
    let mut pending: BTreeMap<(i64, i64, usize, Point), Pending> = BTreeMap::new();

    for (ln, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        match f[0] {
            "point" => {
                if f.len() != 4 {
                    return Err(perr(ln, "expected `point in|out <idx> <coord>`"));
                }
                let idx = int_field(ln, f[2], "point index")?;
                let pt = Point::parse(f[3]).map_err(|e| perr(ln, e))?;
                let list = match f[1] {
                    "in" => &mut ins,
                    "out" => &mut outs,
                    other => return Err(perr(ln, format!("point side must be in or out, got `{other}`"))),
                };
                if idx != list.len() as i64 + 1 {
                    return Err(perr(ln, format!("point index {idx} out of sequence")));
                }
                list.push(pt);
            }
            "depth" => {
                if f.len() != 2 {
                    return Err(perr(ln, "expected `depth <D>`"));
                }
                depth = Some(int_field(ln, f[1], "depth")?);
            }
            "band" => {
                if f.len() != 4 {
                    return Err(perr(ln, "expected `band <family> <lo> <hi>`"));
                }
                if !["alpha", "gamma", "l", "K", "C", "chi"].contains(&f[1]) {
                    return Err(perr(ln, format!("unknown band family `{}`", f[1])));
                }
                let lo = int_field(ln, f[2], "band bound")?;
                let hi = int_field(ln, f[3], "band bound")?;
                if lo > hi {
                    return Err(perr(ln, "band lower bound exceeds upper bound"));
                }
                bands.insert(f[1].to_string(), Band::new(lo, hi));
            }
            "range" => {
                if f.len() != 4 {
                    return Err(perr(ln, "expected `range <λ> <nmin> <nmax>`"));
                }
                let w = int_field(ln, f[1], "weight")?;
                let lo = int_field(ln, f[2], "degree")?;
                let hi = int_field(ln, f[3], "degree")?;
                if lo > hi {
                    return Err(perr(ln, "empty degree range"));
                }
                ranges.insert(w, (lo, hi));
            }
            "window" | "elem" => {
                if f.len() != 7 {
                    return Err(perr(ln, format!("expected `{} λ n p point a b`", f[0])));
                }
                let w = int_field(ln, f[1], "weight")?;
                let n = int_field(ln, f[2], "degree")?;
                let p = int_field(ln, f[3], "branch")?;
                if p < 1 || p as usize > branches {
                    return Err(perr(ln, format!("branch {p} outside 1..={branches}")));
                }
                let pt = Point::parse(f[4]).map_err(|e| perr(ln, e))?;
                if !ins.contains(&pt) && !outs.contains(&pt) {
                    return Err(perr(ln, format!("undeclared point {}", f[4])));
                }
                let key = (w, n, p as usize, pt);
                if f[0] == "window" {
                    let lo = int_field(ln, f[5], "window bound")?;
                    let hi = int_field(ln, f[6], "window bound")?;
                    if lo > hi {
                        return Err(perr(ln, "empty window"));
                    }
                    if pending.insert(key, Pending { window: (lo, hi), coeffs: BTreeMap::new() }).is_some() {
                        return Err(perr(ln, "duplicate window"));
                    }
                } else {
                    let order = int_field(ln, f[5], "order")?;
                    let c = parse_scalar(f[6]).map_err(|e| perr(ln, e))?;
                    let entry = pending.get_mut(&key).ok_or_else(|| perr(ln, "elem before its window line"))?;
                    let (lo, hi) = entry.window;
                    if order < lo || order > hi {
                        return Err(perr(ln, format!("order {order} outside window [{lo}, {hi}]")));
                    }
                    if entry.coeffs.insert(order, c).is_some() {
                        return Err(perr(ln, format!("duplicate coefficient of order {order}")));
                    }
                }
            }
            other => return Err(perr(ln, format!("unknown record `{other}`"))),
        }
    }

    if ins.len() != branches {
        return Err(RealizationError::Spec(format!("K={branches} but {} in-points declared", ins.len())));
    }
    let depth = depth.ok_or_else(|| RealizationError::Spec("missing `depth` line".into()))?;
    let band = |name: &str| {
        bands.get(name).copied().ok_or_else(|| RealizationError::Spec(format!("missing band `{name}`")))
    };
    let bands = Bands {
        alpha: band("alpha")?,
        gamma: band("gamma")?,
        l: band("l")?,
        k: band("K")?,
        c: band("C")?,
        chi: band("chi")?,
    };
    let spec = RealizationSpec {
        genus: genus as u32,
        in_points: ins.into_iter().map(ChartSpec::new).collect(),
        out_points: outs.into_iter().map(ChartSpec::new).collect(),
        backend: Backend::Imported,
        expansion_depth: depth,
    };
    spec.validate()?;

    let mut elements = BTreeMap::new();
    for (&w, &(lo, hi)) in &ranges {
        for n in lo..=hi {
            for p in 1..=branches {
                let mut exps = BTreeMap::new();
                for chart in spec.all_points() {
                    let entry = pending.remove(&(w, n, p, chart.point.clone())).ok_or_else(|| {
                        RealizationError::Spec(format!(
                            "missing window for weight {w}, degree {n}, branch {p} at {}",
                            chart.point
                        ))
                    })?;
                    let (wlo, whi) = entry.window;
                    if whi - wlo < depth {
                        return Err(RealizationError::Spec(format!(
                            "window [{wlo}, {whi}] for weight {w}, degree {n}, branch {p} at {} \
                             is shallower than the declared depth {depth}",
                            chart.point
                        )));
                    }
                    if entry.coeffs.get(&wlo).is_none_or(Zero::is_zero) {
                        return Err(RealizationError::Spec(format!(
                            "weight {w}, degree {n}, branch {p}: declared order {wlo} at {} has zero coefficient",
                            chart.point
                        )));
                    }
                    let e = LaurentExpansion::new(chart.clone(), entry.coeffs, wlo, whi)?;
                    exps.insert(chart.point.clone(), e);
                }
                let anchor = &spec.in_points[p - 1].point;
                let lead = exps[anchor].leading().map(|(_, c)| c.clone()).unwrap_or_default();
                if !lead.is_one() {
                    return Err(RealizationError::Spec(format!(
                        "weight {w}, degree {n}, branch {p} is not normalized at {anchor}: leading coefficient {}",
                        to_pq(&lead)
                    )));
                }
                elements.insert((w, n, p), Arc::new(BasisElement::from_table(w, n, p, exps)));
            }
        }
    }
    if let Some(((w, n, p, pt), _)) = pending.into_iter().next() {
        return Err(RealizationError::Spec(format!(
            "element of weight {w}, degree {n}, branch {p} at {pt} lies outside the declared ranges"
        )));
    }

    let real = Realization::from_import(spec, bands, ImportedStore { elements, ranges });
    check_duality(&real)?;
    Ok(real)
}

/// `∮ f^λ_{n,p} f^{1−λ}_{m,r} = δ_{n,−m} δ_{p,r}` over every declared pair;
/// the first failing pair is reported.
pub fn check_duality(real: &Realization) -> Result<(), RealizationError> {
    let store = real.imported().expect("imported realization");
    for (&w, &(lo, hi)) in &store.ranges {
        let dual = 1 - w;
        if w > dual {
            continue;
        }
        let Some(&(dlo, dhi)) = store.ranges.get(&dual) else { continue };
        for n in lo..=hi {
            for m in dlo..=dhi {
                for p in 1..=real.branches() {
                    for r in 1..=real.branches() {
                        let f = LocalExpr::Elem(real.basis(w, n, p)?);
                        let g = LocalExpr::Elem(real.basis(dual, m, r)?);
                        let got = real.integrate_either(&f.times(g))?;
                        let want = if n == -m && p == r { Scalar::one() } else { Scalar::zero() };
                        if got != want {
                            return Err(RealizationError::Duality(format!(
                                "weight {w} ({n},{p}) against weight {dual} ({m},{r}): integral {}, expected {}",
                                to_pq(&got),
                                to_pq(&want)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_export() -> String {
        export(&Realization::two_point(), 2, 6).unwrap()
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let text = small_export();
        let real = parse(&text).unwrap();
        assert_eq!(export(&real, 2, 6).unwrap(), text);
    }

    #[test]
    fn out_of_range_query_errors() {
        let real = parse(&small_export()).unwrap();
        assert!(real.basis(0, 2, 1).is_ok());
        assert!(matches!(real.basis(0, 3, 1), Err(RealizationError::MissingElement { .. })));
    }

    #[test]
    fn broken_duality_is_located() {
        // A_1 = z + z^2 pairs to 1 against ω^2 = z^{-3} dz
        let text = small_export()
            .replace("elem 0 1 1 0/1 1 1/1\n", "elem 0 1 1 0/1 1 1/1\nelem 0 1 1 0/1 2 1/1\n");
        let real_err = parse(&text).unwrap_err();
        let msg = real_err.to_string();
        assert!(msg.contains("duality"), "{msg}");
        assert!(msg.contains("weight 0 (1,1) against weight 1 (-2,1)"), "{msg}");
    }

    #[test]
    fn malformed_line_has_number() {
        let text = small_export().replacen("depth 6", "depth six", 1);
        match parse(&text) {
            Err(RealizationError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }
}
