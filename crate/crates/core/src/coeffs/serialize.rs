//! Deterministic text serialization of coefficient tables over an index box.
//! Only nonzero entries are written, in canonical key order.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::exact::scalar::to_pq;
use crate::exact::Point;
use crate::realization::{Label, RealizationError};

use super::CoefficientTables;

pub const HEADER: &str = "kntables v1";

/// Families written by [`write_tables`], one file each.
pub const FAMILIES: [&str; 8] = ["alpha", "gamma", "C", "l", "K", "chi", "psi", "chihat"];

fn pt(p: &Point) -> String {
    match p {
        Point::Finite(x) => to_pq(x),
        Point::Infinity => "inf".into(),
    }
}

fn lab(l: Label) -> String {
    format!("{} {}", l.n, l.p)
}

/// Identity of the realization and the box, independent of how the
/// realization was obtained (built in or imported).
pub fn provenance(t: &CoefficientTables, range: i64) -> String {
    let spec = t.realization().spec();
    let ins: Vec<String> = spec.in_points.iter().map(|c| pt(&c.point)).collect();
    let outs: Vec<String> = spec.out_points.iter().map(|c| pt(&c.point)).collect();
    let b = t.realization().bands();
    format!(
        "# genus={} K={} in={} out={} range={} bands alpha{} gamma{} l{} K{} C{} chi{}",
        spec.genus,
        spec.branches(),
        ins.join(","),
        outs.join(","),
        range,
        b.alpha,
        b.gamma,
        b.l,
        b.k,
        b.c,
        b.chi
    )
    .replace(", ", ",")
}

/// Serialize one family over `|index| ≤ range`.
pub fn table(t: &CoefficientTables, family: &str, range: i64) -> Result<String, RealizationError> {
    let real = t.realization().clone();
    let bands = *real.bands();
    let labels: Vec<Label> = (-range..=range).flat_map(|n| real.labels(n).collect::<Vec<_>>()).collect();
    let at = |n: i64| real.labels(n).collect::<Vec<_>>();
    let mut out = String::new();
    writeln!(out, "{HEADER} {family}").unwrap();
    writeln!(out, "{}", provenance(t, range)).unwrap();
    let mut line = |key: String, v: crate::exact::Scalar| {
        if !v.is_zero() {
            writeln!(out, "{family} {key} {}", to_pq(&v)).unwrap();
        }
    };
    match family {
        "alpha" => {
            for &n in &labels {
                for &m in &labels {
                    for off in bands.alpha.range() {
                        for k in at(n.n + m.n + off) {
                            line(format!("{} {} {}", lab(n), lab(m), lab(k)), t.alpha(n, m, k)?);
                        }
                    }
                }
            }
        }
        "gamma" => {
            for &n in &labels {
                for &m in &labels {
                    line(format!("{} {}", lab(n), lab(m)), t.gamma(n, m)?);
                }
            }
        }
        "C" => {
            for &k in &labels {
                for &l in &labels {
                    for off in bands.c.range() {
                        for s in at(k.n + l.n + off) {
                            line(format!("{} {} {}", lab(k), lab(l), lab(s)), t.c(k, l, s)?);
                        }
                    }
                }
            }
        }
        "l" => {
            for &n in &labels {
                for &m in &labels {
                    for off in bands.l.range() {
                        for k in at(n.n + m.n - off) {
                            line(format!("{} {} {}", lab(k), lab(n), lab(m)), t.l(k, n, m)?);
                        }
                    }
                }
            }
        }
        "K" => {
            for &r in &labels {
                for &k in &labels {
                    for off in bands.k.range() {
                        for v in at(r.n + k.n + off) {
                            line(format!("{} {} {}", lab(r), lab(k), lab(v)), t.kk(r, k, v)?);
                        }
                    }
                }
            }
        }
        "chi" | "psi" | "chihat" => {
            for &k in &labels {
                for &l in &labels {
                    let v = match family {
                        "chi" => t.chi(k, l)?,
                        "psi" => t.psi(k, l)?,
                        _ => t.chi_hat(k, l)?,
                    };
                    line(format!("{} {}", lab(k), lab(l)), v);
                }
            }
        }
        other => return Err(RealizationError::Spec(format!("unknown table family `{other}`"))),
    }
    Ok(out)
}

/// All families, keyed by file name.
pub fn write_tables(t: &CoefficientTables, range: i64) -> Result<Vec<(String, String)>, RealizationError> {
    FAMILIES
        .iter()
        .map(|f| Ok((format!("{f}.tbl"), table(t, f, range)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::Realization;
    use std::sync::Arc;

    #[test]
    fn gamma_table_is_the_antidiagonal() {
        let t = CoefficientTables::new(Arc::new(Realization::two_point()));
        let text = table(&t, "gamma", 3).unwrap();
        let rows: Vec<&str> = text.lines().skip(2).collect();
        assert_eq!(rows.len(), 6);
        assert!(rows.contains(&"gamma 3 1 -3 1 -3/1"));
        assert!(rows.iter().all(|r| {
            let f: Vec<i64> = r.split_whitespace().skip(1).take(4).map(|x| x.parse().unwrap()).collect();
            f[0] + f[2] == 0
        }));
        assert_eq!(text, table(&t, "gamma", 3).unwrap());
    }
}
