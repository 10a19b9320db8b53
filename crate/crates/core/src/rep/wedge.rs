//! Semi-infinite wedge module of weight-0 forms, charge 0, level 1.
//!
//! A basis vector `A_{j_1} ∧ A_{j_2} ∧ …` with `j_1 < j_2 < …` and `j_s = s`
//! for large `s` is stored by its head `[j_1, …, j_L]`; the full sequence is
//! the head followed by `L+1, L+2, …`. Heads are normalized by stripping
//! trailing entries equal to their position, so the vacuum `Φ` has the empty
//! head.
//!
//! `A_i` acts with the Leibniz rule through `A_i A_j = Σ_k α_{ij}^k A_k`. The
//! diagonal terms `k = j_s` form an infinite sum that is regularized against
//! the vacuum: the diagonal coefficient is `Σ_s (α_{i,j_s}^{j_s} − α_{i,s}^s)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeffs::identities::gamma_split_sum;
use crate::coeffs::CoefficientTables;
use crate::exact::scalar::{int, to_pq};
use crate::exact::Scalar;
use crate::realization::Label;
use crate::report::Check;

use super::verma::RepError;

type Res<T> = Result<T, RepError>;

fn lab(n: i64) -> Label {
    Label::two_point(n)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WedgeVector {
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl WedgeVector {
    pub fn zero() -> Self {
        WedgeVector::default()
    }

    pub fn vacuum() -> Self {
        let mut w = WedgeVector::zero();
        w.add_term(Vec::new(), Scalar::one());
        w
    }

    /// Basis vector for a partition `μ`: `j_s = s − μ_s`.
    pub fn from_partition(mu: &[i64]) -> Self {
        let head: Vec<i64> = mu.iter().enumerate().map(|(s, m)| s as i64 + 1 - m).collect();
        let mut w = WedgeVector::zero();
        w.add_term(normalize(head), Scalar::one());
        w
    }

    fn add_term(&mut self, head: Vec<i64>, s: Scalar) {
        if s.is_zero() {
            return;
        }
        let e = self.terms.entry(head).or_insert_with(Scalar::zero);
        *e += s;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &WedgeVector, s: &Scalar) {
        for (h, v) in &other.terms {
            self.add_term(h.clone(), v * s);
        }
    }

    pub fn minus(&self, other: &WedgeVector) -> WedgeVector {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn scaled(&self, s: &Scalar) -> WedgeVector {
        let mut out = WedgeVector::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(h, s)| {
                let idx: Vec<String> = h.iter().map(|j| j.to_string()).collect();
                format!("{}*[{}]", to_pq(s), idx.join(","))
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

fn normalize(mut head: Vec<i64>) -> Vec<i64> {
    while let Some(&last) = head.last() {
        if last == head.len() as i64 {
            head.pop();
        } else {
            break;
        }
    }
    head
}

/// Full sequence up to slot `len` (at least the head).
fn explicit(head: &[i64], len: usize) -> Vec<i64> {
    let mut seq = head.to_vec();
    for s in head.len() + 1..=len {
        seq.push(s as i64);
    }
    seq
}

/// Sort after a replacement; `None` if an index repeats.
fn resort(mut seq: Vec<i64>) -> Option<(Vec<i64>, bool)> {
    let mut odd = false;
    // insertion sort, counting transpositions
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            seq.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if seq.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((normalize(seq), odd))
}

pub struct WedgeModule {
    tables: Arc<CoefficientTables>,
}

impl WedgeModule {
    pub fn new(tables: Arc<CoefficientTables>) -> Res<Self> {
        if tables.realization().branches() != 1 {
            return Err(RepError::Unsupported("the wedge module needs a one-branch realization".into()));
        }
        Ok(WedgeModule { tables })
    }

    pub fn tables(&self) -> &Arc<CoefficientTables> {
        &self.tables
    }

    fn alpha(&self, i: i64, j: i64, k: i64) -> Res<Scalar> {
        self.tables.alpha(lab(i), lab(j), lab(k)).map_err(|e| RepError::Unsupported(e.to_string()))
    }

    fn alpha_support(&self, i: i64, j: i64) -> Res<Vec<(i64, Scalar)>> {
        let sup = self.tables.alpha_support(lab(i), lab(j)).map_err(|e| RepError::Unsupported(e.to_string()))?;
        Ok(sup.into_iter().map(|(k, s)| (k.n, s)).collect())
    }

    fn act_head(&self, i: i64, head: &[i64], out: &mut WedgeVector, scale: &Scalar) -> Res<()> {
        let len = head.len();
        let band = self.tables.realization().bands().alpha;
        // regularized diagonal
        let mut diag = Scalar::zero();
        for (s, &j) in head.iter().enumerate() {
            diag += self.alpha(i, j, j)? - self.alpha(i, s as i64 + 1, s as i64 + 1)?;
        }
        out.add_term(head.to_vec(), diag * scale);
        // off-diagonal: the new index must be absent, hence ≤ len
        let last_slot = (len as i64).max(len as i64 - i - band.lo);
        let seq = explicit(head, last_slot.max(0) as usize);
        for s in 0..seq.len() {
            let j = seq[s];
            for (k, a) in self.alpha_support(i, j)? {
                if k == j || k > len as i64 {
                    continue;
                }
                let mut next = seq.clone();
                next[s] = k;
                if let Some((h, odd)) = resort(next) {
                    let sign = if odd { -Scalar::one() } else { Scalar::one() };
                    out.add_term(h, a * scale * sign);
                }
            }
        }
        Ok(())
    }

    /// `A_i · w`.
    pub fn act(&self, i: i64, w: &WedgeVector) -> Res<WedgeVector> {
        let mut out = WedgeVector::zero();
        for (h, s) in &w.terms {
            self.act_head(i, h, &mut out, s)?;
        }
        Ok(out)
    }

    pub fn commutator(&self, r: i64, k: i64, w: &WedgeVector) -> Res<WedgeVector> {
        Ok(self.act(r, &self.act(k, w)?)?.minus(&self.act(k, &self.act(r, w)?)?))
    }

    /// Basis vectors of energy `≤ energy` (partitions of size ≤ energy).
    pub fn basis(&self, energy: i64) -> Vec<WedgeVector> {
        fn parts(rem: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            out.push(cur.clone());
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                parts(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut ps = Vec::new();
        parts(energy, energy, &mut Vec::new(), &mut ps);
        ps.iter().map(|mu| WedgeVector::from_partition(mu)).collect()
    }

    /// The scalar `s` with `w = s b` for a basis vector `b`.
    fn multiple(w: &WedgeVector, b: &WedgeVector) -> Option<Scalar> {
        let (h, _) = b.terms.iter().next()?;
        match w.terms.len() {
            0 => Some(Scalar::zero()),
            1 => w.terms.get(h).cloned(),
            _ => None,
        }
    }

    /// Vacuum annihilation, the Heisenberg normalization, and the commutator
    /// identity `[A_r, A_k] = d γ_{rk}` with `d = −1` against both `γ` and the
    /// split α-sum, on `Φ` for `|r|,|k| ≤ range` and on basis vectors of
    /// energy `≤ energy` for `|r|,|k| ≤ energy`.
    pub fn checks(&self, range: i64, energy: i64) -> Res<Vec<Check>> {
        let mut out = Vec::new();
        let phi = WedgeVector::vacuum();
        for i in 1..=range {
            let w = self.act(i, &phi)?;
            out.push(Check::text("wedge-annihilate", i.to_string(), w.render(), "0", w.is_zero()));
            let c = self.commutator(i, -i, &phi)?;
            let want = phi.scaled(&int(i));
            out.push(Check::text("wedge-heisenberg", format!("{i},{}", -i), c.render(), want.render(), c == want));
        }
        let d = -Scalar::one();
        for r in -range..=range {
            for k in -range..=range {
                let c = self.commutator(r, k, &phi)?;
                let got = WedgeModule::multiple(&c, &phi);
                let lhs = got.clone().map(|s| to_pq(&s)).unwrap_or_else(|| c.render());
                let gamma = self.tables.gamma(lab(r), lab(k)).map_err(|e| RepError::Unsupported(e.to_string()))?;
                let want = &d * gamma;
                out.push(Check::text("wedge-gamma", format!("{r},{k}"), lhs.clone(), to_pq(&want), got.as_ref() == Some(&want)));
                let split = gamma_split_sum(&self.tables, lab(r), lab(k), 0).map_err(|e| RepError::Unsupported(e.to_string()))?;
                let want = -split;
                out.push(Check::text("wedge-split-sum", format!("{r},{k}"), lhs, to_pq(&want), got.as_ref() == Some(&want)));
            }
        }
        for b in self.basis(energy) {
            for r in -energy..=energy {
                for k in -energy..=energy {
                    let c = self.commutator(r, k, &b)?;
                    let gamma = self.tables.gamma(lab(r), lab(k)).map_err(|e| RepError::Unsupported(e.to_string()))?;
                    let want = b.scaled(&(&d * gamma));
                    out.push(Check::text(
                        "wedge-central",
                        format!("{r},{k};{}", b.render()),
                        c.render(),
                        want.render(),
                        c == want,
                    ));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::Realization;

    fn module() -> WedgeModule {
        WedgeModule::new(Arc::new(CoefficientTables::new(Arc::new(Realization::two_point())))).unwrap()
    }

    #[test]
    fn vacuum_and_heisenberg() {
        let m = module();
        let phi = WedgeVector::vacuum();
        assert!(m.act(3, &phi).unwrap().is_zero());
        // A_{-2} Φ = A_{-1}∧A_2∧… + A_1∧A_0∧A_3∧… = [-1] − [0,1]
        let w = m.act(-2, &phi).unwrap();
        assert_eq!(w.render(), "1/1*[-1]+-1/1*[0,1]");
        assert_eq!(m.commutator(2, -2, &phi).unwrap(), phi.scaled(&int(2)));
        assert_eq!(m.act(0, &phi).unwrap(), WedgeVector::zero());
    }

    #[test]
    fn identity_suite_passes() {
        let m = module();
        for c in m.checks(5, 3).unwrap() {
            assert!(c.pass, "{c}");
        }
    }

    #[test]
    fn partitions_give_distinct_heads() {
        let m = module();
        assert_eq!(m.basis(4).len(), 1 + 1 + 2 + 3 + 5);
        assert_eq!(WedgeVector::from_partition(&[1]).render(), "1/1*[0]");
    }
}
