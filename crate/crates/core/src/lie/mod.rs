//! Finite-dimensional reductive Lie algebras: `sl(n)` with the trace form and
//! abelian algebras with an arbitrary nondegenerate form.
//!
//! Weights (elements of `h*`) are stored by their values `χ(h_k)` on the
//! Cartan basis. For `sl(n)` the Cartan basis is `H_k = E_kk - E_{k+1,k+1}`,
//! so these values are the coordinates in the fundamental-weight basis.

use std::fmt;

use num_traits::{One, Zero};

use crate::exact::matrix::{self, Matrix};
use crate::exact::scalar::{frac, int};
use crate::exact::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("invariant form is degenerate")]
    Degenerate,
    #[error("invariant form is not symmetric")]
    Asymmetric,
    #[error("construction check failed: {0}")]
    Invariant(String),
    #[error("unknown algebra `{0}` (expected sl:n with 2 <= n <= 4, or abelian:r)")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieKind {
    Sl(usize),
    Abelian(usize),
}

impl fmt::Display for LieKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieKind::Sl(n) => write!(f, "sl:{n}"),
            LieKind::Abelian(r) => write!(f, "abelian:{r}"),
        }
    }
}

impl std::str::FromStr for LieKind {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        let bad = || LieError::Parse(s.to_string());
        let (kind, n) = s.trim().split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "sl" if (2..=4).contains(&n) => Ok(LieKind::Sl(n)),
            "abelian" if n >= 1 => Ok(LieKind::Abelian(n)),
            _ => Err(bad()),
        }
    }
}

/// A positive root with its root vectors, `(x_α | x_{-α}) = 1`.
#[derive(Clone, Debug)]
pub struct Root {
    pub name: String,
    pub positive: usize,
    pub negative: usize,
    /// `α(h_k)`
    pub values: Vec<Scalar>,
}

/// Sparse vector over the basis `u_i`.
pub type Element = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct FiniteLieAlgebra {
    kind: LieKind,
    labels: Vec<String>,
    /// `[u_i, u_j]` in the basis
    brackets: Vec<Vec<Element>>,
    form: Matrix,
    /// `u^i = Σ_j dual[i][j] u_j`
    dual: Matrix,
    cartan: Vec<usize>,
    /// inverse of the form restricted to `h`: `h^k = Σ_j cartan_dual[k][j] h_j`
    cartan_dual: Matrix,
    roots: Vec<Root>,
    rho: Vec<Scalar>,
    kappa: Scalar,
}

impl FiniteLieAlgebra {
    pub fn build(kind: LieKind) -> Result<Self, LieError> {
        match kind {
            LieKind::Sl(n) => Self::sl(n),
            LieKind::Abelian(r) => Self::abelian(r, matrix::identity(r)),
        }
    }

    pub fn parse(s: &str) -> Result<Self, LieError> {
        Self::build(s.parse()?)
    }

    /// `sl(n)` with the trace form of the defining representation.
    pub fn sl(n: usize) -> Result<Self, LieError> {
        if !(2..=4).contains(&n) {
            return Err(LieError::Parse(format!("sl:{n}")));
        }
        let mut labels = Vec::new();
        let mut mats: Vec<Matrix> = Vec::new();
        let unit = |i: usize, j: usize| {
            let mut m = vec![vec![Scalar::zero(); n]; n];
            m[i][j] = Scalar::one();
            m
        };
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    labels.push(format!("E{}{}", i + 1, j + 1));
                    mats.push(unit(i, j));
                }
            }
        }
        let cartan: Vec<usize> = (0..n - 1).map(|k| mats.len() + k).collect();
        for k in 0..n - 1 {
            labels.push(format!("H{}", k + 1));
            let mut m = unit(k, k);
            m[k + 1][k + 1] = int(-1);
            mats.push(m);
        }
        let index_of = |i: usize, j: usize| labels.iter().position(|l| *l == format!("E{}{}", i + 1, j + 1));
        // coordinates of a traceless matrix
        let coords = |m: &Matrix| -> Element {
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j && !m[i][j].is_zero() {
                        out.push((index_of(i, j).expect("off-diagonal label"), m[i][j].clone()));
                    }
                }
            }
            let mut partial = Scalar::zero();
            for (k, &h) in cartan.iter().enumerate() {
                partial += &m[k][k];
                if !partial.is_zero() {
                    out.push((h, partial.clone()));
                }
            }
            out.sort_by_key(|(i, _)| *i);
            out
        };
        let dim = mats.len();
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let ab = matrix::mul(&mats[a], &mats[b]);
                let ba = matrix::mul(&mats[b], &mats[a]);
                let comm: Matrix =
                    (0..n).map(|i| (0..n).map(|j| &ab[i][j] - &ba[i][j]).collect()).collect();
                brackets[a][b] = coords(&comm);
            }
        }
        let form: Matrix = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| {
                        let p = matrix::mul(&mats[a], &mats[b]);
                        (0..n).fold(Scalar::zero(), |acc, i| acc + &p[i][i])
                    })
                    .collect()
            })
            .collect();
        let mut roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let pos = index_of(i, j).expect("root label");
                let neg = index_of(j, i).expect("root label");
                let values = cartan
                    .iter()
                    .map(|&h| {
                        brackets[h][pos]
                            .iter()
                            .find(|(c, _)| *c == pos)
                            .map(|(_, v)| v.clone())
                            .unwrap_or_else(Scalar::zero)
                    })
                    .collect();
                roots.push(Root { name: format!("a{}{}", i + 1, j + 1), positive: pos, negative: neg, values });
            }
        }
        Self::assemble(LieKind::Sl(n), labels, brackets, form, cartan, roots)
    }

    /// Abelian algebra of rank `r` with the given symmetric form.
    pub fn abelian(r: usize, form: Matrix) -> Result<Self, LieError> {
        let labels = (1..=r).map(|i| format!("h{i}")).collect();
        let brackets = vec![vec![Vec::new(); r]; r];
        Self::assemble(LieKind::Abelian(r), labels, brackets, form, (0..r).collect(), Vec::new())
    }

    fn assemble(
        kind: LieKind,
        labels: Vec<String>,
        brackets: Vec<Vec<Element>>,
        form: Matrix,
        cartan: Vec<usize>,
        mut roots: Vec<Root>,
    ) -> Result<Self, LieError> {
        let dim = labels.len();
        if form.len() != dim || form.iter().any(|row| row.len() != dim) {
            return Err(LieError::Invariant(format!("form must be {dim}x{dim}")));
        }
        for i in 0..dim {
            for j in 0..dim {
                if form[i][j] != form[j][i] {
                    return Err(LieError::Asymmetric);
                }
            }
        }
        let dual = matrix::inverse(&form).ok_or(LieError::Degenerate)?;
        let gram: Matrix =
            cartan.iter().map(|&a| cartan.iter().map(|&b| form[a][b].clone()).collect()).collect();
        let cartan_dual = matrix::inverse(&gram).ok_or(LieError::Degenerate)?;
        // sl(n) root vectors E_ij, E_ji already pair to 1 under the trace form
        for root in &roots {
            let pairing = &form[root.positive][root.negative];
            if !pairing.is_one() {
                return Err(LieError::Invariant(format!("(x_{0} | x_-{0}) = {pairing}", root.name)));
            }
        }
        roots.sort_by(|a, b| a.name.cmp(&b.name));
        let rank = cartan.len();
        let rho = (0..rank)
            .map(|k| roots.iter().fold(Scalar::zero(), |acc, r| acc + &r.values[k]) * frac(1, 2))
            .collect();
        let mut g = FiniteLieAlgebra {
            kind,
            labels,
            brackets,
            form,
            dual,
            cartan,
            cartan_dual,
            roots,
            rho,
            kappa: Scalar::zero(),
        };
        g.kappa = g.adjoint_casimir_kappa()?;
        g.verify()?;
        Ok(g)
    }

    /// `κ` from `Σ_i ad u_i ∘ ad u^i = 2κ·id`, cross-checked against the trace.
    fn adjoint_casimir_kappa(&self) -> Result<Scalar, LieError> {
        let m = self.adjoint_casimir();
        let dim = self.dim();
        let diag = m[0][0].clone();
        for i in 0..dim {
            for j in 0..dim {
                let want = if i == j { diag.clone() } else { Scalar::zero() };
                if m[i][j] != want {
                    return Err(LieError::Invariant("adjoint Casimir is not a multiple of the identity".into()));
                }
            }
        }
        let trace = (0..dim).fold(Scalar::zero(), |acc, i| acc + &m[i][i]);
        let by_trace = trace / int(dim as i64) * frac(1, 2);
        let by_entry = diag * frac(1, 2);
        if by_trace != by_entry {
            return Err(LieError::Invariant("kappa from trace and from eigenvalue disagree".into()));
        }
        Ok(by_entry)
    }

    /// Matrix of `Σ_i ad u_i ∘ ad u^i` in the basis `u_j`.
    pub fn adjoint_casimir(&self) -> Matrix {
        let dim = self.dim();
        let mut out = vec![vec![Scalar::zero(); dim]; dim];
        for (i, j, d) in self.casimir_pairs() {
            // ad u_i ad u_j applied to u_b
            for b in 0..dim {
                for (c, x) in &self.brackets[j][b] {
                    for (a, y) in &self.brackets[i][*c] {
                        out[*a][b] += &d * x * y;
                    }
                }
            }
        }
        out
    }

    fn verify(&self) -> Result<(), LieError> {
        let dim = self.dim();
        let fail = |m: String| Err(LieError::Invariant(m));
        // invariance ([x,y]|z) = (x|[y,z])
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let lhs = self.pair(&self.brackets[a][b], &[(c, Scalar::one())]);
                    let rhs = self.pair(&[(a, Scalar::one())], &self.brackets[b][c]);
                    if lhs != rhs {
                        return fail(format!("form not invariant on ({a},{b},{c})"));
                    }
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    if !self.jacobiator(a, b, c).is_empty() {
                        return fail(format!("Jacobi fails on ({a},{b},{c})"));
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let p = self.pair(&[(i, Scalar::one())], &self.dual_element(j));
                let want = if i == j { Scalar::one() } else { Scalar::zero() };
                if p != want {
                    return fail(format!("(u_{i} | u^{j}) = {p}"));
                }
            }
        }
        let mut sum = Element::new();
        for (i, j, d) in self.casimir_pairs() {
            sum = add(&sum, &scale(&self.brackets[i][j], &d));
        }
        if !sum.is_empty() {
            return fail("sum of [u_i, u^i] is nonzero".into());
        }
        // χ(h_α) = ⟨χ, α⟩ for the fundamental weights
        for root in &self.roots {
            let h_alpha = &self.brackets[root.positive][root.negative];
            for k in 0..self.rank() {
                let chi: Vec<Scalar> = (0..self.rank()).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect();
                let lhs = self.weight_value(&chi, h_alpha)?;
                let rhs = self.casimir_pairing(&chi, &root.values);
                if lhs != rhs {
                    return fail(format!("chi(h_alpha) != <chi, alpha> for {}", root.name));
                }
            }
        }
        Ok(())
    }

    /// `χ(h)` for a Cartan element `h`.
    pub fn weight_value(&self, chi: &[Scalar], h: &[(usize, Scalar)]) -> Result<Scalar, LieError> {
        let mut total = Scalar::zero();
        for (i, x) in h {
            let k = self
                .cartan_index(*i)
                .ok_or_else(|| LieError::Invariant(format!("{} is not in the Cartan subalgebra", self.labels[*i])))?;
            total += x * &chi[k];
        }
        Ok(total)
    }

    /// `[[a,b],c] + [[b,c],a] + [[c,a],b]`
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> Element {
        let one = |i: usize| vec![(i, Scalar::one())];
        let t1 = self.bracket(&self.brackets[a][b], &one(c));
        let t2 = self.bracket(&self.brackets[b][c], &one(a));
        let t3 = self.bracket(&self.brackets[c][a], &one(b));
        add(&add(&t1, &t2), &t3)
    }

    pub fn kind(&self) -> LieKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.kind, LieKind::Abelian(_))
    }

    /// `[u_a, u_b]`
    pub fn structure(&self, a: usize, b: usize) -> &Element {
        &self.brackets[a][b]
    }

    pub fn bracket(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Element {
        let mut out = Element::new();
        for (a, s) in x {
            for (b, t) in y {
                out = add(&out, &scale(&self.brackets[*a][*b], &(s * t)));
            }
        }
        out
    }

    /// `(u_a | u_b)`
    pub fn form(&self, a: usize, b: usize) -> &Scalar {
        &self.form[a][b]
    }

    pub fn pair(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Scalar {
        let mut total = Scalar::zero();
        for (a, s) in x {
            for (b, t) in y {
                total += s * t * &self.form[*a][*b];
            }
        }
        total
    }

    /// `u^i`
    pub fn dual_element(&self, i: usize) -> Element {
        self.dual[i]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect()
    }

    /// Nonzero `(i, j, D_ij)` with `Σ_i u_i ⊗ u^i = Σ D_ij u_i ⊗ u_j`.
    pub fn casimir_pairs(&self) -> Vec<(usize, usize, Scalar)> {
        let dim = self.dim();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                if !self.dual[i][j].is_zero() {
                    out.push((i, j, self.dual[i][j].clone()));
                }
            }
        }
        out
    }

    /// Basis indices of `h_k`.
    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn cartan_index(&self, i: usize) -> Option<usize> {
        self.cartan.iter().position(|&h| h == i)
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Number of positive roots.
    pub fn positive_roots(&self) -> usize {
        self.roots.len()
    }

    /// Root of `u_i` when `u_i` is a root vector, with its sign.
    pub fn root_of(&self, i: usize) -> Option<(&Root, bool)> {
        self.roots.iter().find_map(|r| {
            if r.positive == i {
                Some((r, true))
            } else if r.negative == i {
                Some((r, false))
            } else {
                None
            }
        })
    }

    /// `ρ̄(h_k)`
    pub fn rho(&self) -> &[Scalar] {
        &self.rho
    }

    pub fn kappa(&self) -> &Scalar {
        &self.kappa
    }

    /// `⟨χ, χ'⟩ = Σ_k χ(h_k) χ'(h^k)`
    pub fn casimir_pairing(&self, chi: &[Scalar], other: &[Scalar]) -> Scalar {
        let rank = self.rank();
        let mut total = Scalar::zero();
        for k in 0..rank {
            for j in 0..rank {
                total += &chi[k] * &self.cartan_dual[k][j] * &other[j];
            }
        }
        total
    }

    /// The zero weight.
    pub fn zero_weight(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.rank()]
    }
}

pub(crate) fn add(x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> Element {
    let mut m: std::collections::BTreeMap<usize, Scalar> = x.iter().cloned().collect();
    for (i, v) in y {
        *m.entry(*i).or_insert_with(Scalar::zero) += v;
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub(crate) fn scale(x: &[(usize, Scalar)], s: &Scalar) -> Element {
    if s.is_zero() {
        return Element::new();
    }
    x.iter().map(|(i, v)| (*i, v * s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_coxeter_numbers() {
        assert_eq!(*FiniteLieAlgebra::sl(2).unwrap().kappa(), int(2));
        assert_eq!(*FiniteLieAlgebra::sl(3).unwrap().kappa(), int(3));
        assert_eq!(*FiniteLieAlgebra::sl(4).unwrap().kappa(), int(4));
        assert_eq!(*FiniteLieAlgebra::parse("abelian:1").unwrap().kappa(), int(0));
    }

    #[test]
    fn sl2_weights() {
        let g = FiniteLieAlgebra::sl(2).unwrap();
        let omega = vec![int(1)];
        assert_eq!(g.casimir_pairing(&omega, &omega), frac(1, 2));
        assert_eq!(g.casimir_pairing(&g.rho().to_vec(), &g.rho().to_vec()), frac(1, 2));
        assert_eq!(g.casimir_pairing(&g.zero_weight(), &omega), int(0));
        assert_eq!(g.positive_roots(), 1);
        assert_eq!(g.roots()[0].values, vec![int(2)]);
        let alpha = &g.roots()[0].values;
        assert_eq!(g.casimir_pairing(alpha, alpha), int(2));
    }

    #[test]
    fn sl3_rho_and_highest_root() {
        let g = FiniteLieAlgebra::sl(3).unwrap();
        assert_eq!(g.rho(), &[int(1), int(1)]);
        let theta = &g.roots().iter().find(|r| r.name == "a13").unwrap().values;
        assert_eq!(g.casimir_pairing(theta, theta), int(2));
        assert_eq!(g.dim(), 8);
    }

    #[test]
    fn degenerate_abelian_form_rejected() {
        let form = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert_eq!(FiniteLieAlgebra::abelian(2, form).unwrap_err(), LieError::Degenerate);
        assert!(FiniteLieAlgebra::parse("sl:5").is_err());
        assert!(FiniteLieAlgebra::parse("so:3").is_err());
    }

    #[test]
    fn abelian_with_custom_form() {
        let g = FiniteLieAlgebra::abelian(1, vec![vec![int(2)]]).unwrap();
        assert_eq!(g.casimir_pairs(), vec![(0, 0, frac(1, 2))]);
        assert_eq!(g.casimir_pairing(&[int(1)], &[int(1)]), frac(1, 2));
    }
}
