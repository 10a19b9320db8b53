//! Almost-grading bands: for each coefficient family, the range of the index
//! offset outside which the family vanishes identically.

use std::fmt;

use super::spec::RealizationSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Band {
    pub lo: i64,
    pub hi: i64,
}

impl Band {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Band { lo, hi }
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn range(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Offsets, one per family:
///
/// | family | offset |
/// |---|---|
/// | `alpha_{nm}^k` | `k - (n+m)` |
/// | `gamma_{nm}` | `n + m` |
/// | `l_k^{nm}` | `n + m - k` |
/// | `K_{r,k}^v` | `v - (r+k)` |
/// | `C_{kl}^s` | `s - (k+l)` |
/// | `chi_{kl}` | `k + l` |
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bands {
    pub alpha: Band,
    pub gamma: Band,
    pub l: Band,
    pub k: Band,
    pub c: Band,
    pub chi: Band,
}

/// One factor of a residue integrand in a band computation: weight, degree,
/// branch and how many derivatives are applied (each lowers the order by one).
#[derive(Clone, Copy)]
struct Factor {
    weight: i64,
    n: i64,
    p: usize,
    derivs: i64,
}

fn f(weight: i64, n: i64, p: usize, derivs: i64) -> Factor {
    Factor { weight, n, p, derivs }
}

impl Bands {
    /// Derive the bands of a genus-0 realization from its order prescriptions:
    /// an integral can only be nonzero if the integrand has a pole on both the
    /// in side and the out side.
    pub fn derive(spec: &RealizationSpec) -> Bands {
        const SCAN: i64 = 64;
        let k = spec.branches();
        let scan = |build: &dyn Fn(i64, usize, usize, usize) -> Vec<Factor>| -> Band {
            let mut lo = i64::MAX;
            let mut hi = i64::MIN;
            for t in -SCAN..=SCAN {
                let mut hit = false;
                'outer: for a in 1..=k {
                    for b in 1..=k {
                        for c in 1..=k {
                            if possibly_nonzero(spec, &build(t, a, b, c)) {
                                hit = true;
                                break 'outer;
                            }
                        }
                    }
                }
                if hit {
                    lo = lo.min(t);
                    hi = hi.max(t);
                }
            }
            Band::new(lo, hi)
        };
        // all bases at index 0; ω^k = f^1_{-k}, Ω^k = f^2_{-k}
        let alpha = scan(&|t, a, b, c| vec![f(0, 0, a, 0), f(0, 0, b, 0), f(1, -t, c, 0)]);
        let gamma = scan(&|t, a, b, _| vec![f(0, t, a, 0), f(0, 0, b, 1)]);
        let l = scan(&|t, a, b, c| vec![f(1, -t, a, 0), f(1, 0, b, 0), f(-1, 0, c, 0)]);
        let kk = scan(&|t, a, b, c| vec![f(1, -t, a, 0), f(-1, 0, b, 0), f(0, 0, c, 1)]);
        // [e_k, e_l] has order at least ord e_k + ord e_l - 1
        let c = scan(&|t, a, b, c| vec![f(-1, 0, a, 0), f(-1, 0, b, 1), f(2, -t, c, 0)]);
        // e''' f with f = e_{t}: order ord e + ord f - 3
        let chi = scan(&|t, a, b, _| vec![f(-1, 0, a, 3), f(-1, t, b, 0)]);
        Bands { alpha, gamma, l, k: kk, c, chi }
    }
}

fn possibly_nonzero(spec: &RealizationSpec, factors: &[Factor]) -> bool {
    let total = |pt| -> i64 {
        factors
            .iter()
            .map(|x| spec.prescribed_order(x.weight, x.n, x.p, pt).expect("declared point") - x.derivs)
            .sum()
    };
    let in_pole = spec.in_points.iter().any(|pt| total(pt) <= -1);
    let out_pole = spec.out_points.iter().any(|pt| total(pt) <= -1);
    in_pole && out_pole
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Point;

    #[test]
    fn two_point_bands_are_sharp() {
        let b = Bands::derive(&RealizationSpec::two_point(4));
        let zero = Band::new(0, 0);
        assert_eq!(b.alpha, zero);
        assert_eq!(b.gamma, zero);
        assert_eq!(b.l, zero);
        assert_eq!(b.k, zero);
        assert_eq!(b.c, zero);
        assert_eq!(b.chi, zero);
    }

    #[test]
    fn multi_point_alpha_band() {
        let spec = RealizationSpec::multi_point(
            vec![Point::int(0), Point::int(1)],
            vec![Point::int(2), Point::Infinity],
            4,
        )
        .unwrap();
        let b = Bands::derive(&spec);
        assert_eq!(b.alpha.lo, 0);
        assert!(b.alpha.hi >= 1);
    }
}
