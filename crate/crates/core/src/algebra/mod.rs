//! Centrally extended current, function and vector-field algebras as bracket
//! evaluators over basis-indexed elements.
//!
//! Generators are `A_n` (functions), `x_a(n) = u_a ⊗ A_n` (currents), `e_k`
//! (vector fields), the central `t`, and optionally one adjoined vector
//! field `e = Σ ε^k e_k`. Brackets:
//!
//! * `[A_n, A_m] = −γ_{nm} t`
//! * `[x_a(n), x_b(m)] = Σ_c f_{ab}^c Σ_k α_{nm}^k x_c(k) − (u_a|u_b) γ_{nm} t`
//! * `[e_k, e_l] = Σ_s C_{kl}^s e_s + χ(e_k, e_l) t` with a pluggable `χ`
//! * `[e_k, A_r] = Σ_v K_{r,k}^v A_v`, likewise on currents.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};
use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::coeffs::CoefficientTables;
use crate::exact::scalar::{int, to_pq};
use crate::exact::Scalar;
use crate::lie::FiniteLieAlgebra;
use crate::realization::{Label, ProjectiveConnection, RealizationError};
use crate::rep::ordering::NormalOrdering;
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error("cannot bracket {0} with {1}")]
    Incompatible(String, String),
}

type Res<T> = Result<T, AlgebraError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Function(Label),
    Current(usize, Label),
    VectorField(Label),
}

impl Generator {
    pub fn degree(&self) -> i64 {
        match self {
            Generator::Function(l) | Generator::Current(_, l) | Generator::VectorField(l) => l.n,
        }
    }

    fn family(&self) -> &'static str {
        match self {
            Generator::Function(_) => "function",
            Generator::Current(..) => "current",
            Generator::VectorField(_) => "vector field",
        }
    }
}

/// Finite linear combination of generators plus `central·t + efield·e`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    pub terms: BTreeMap<Generator, Scalar>,
    pub central: Scalar,
    pub efield: Scalar,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::generator_times(g, Scalar::one())
    }

    pub fn generator_times(g: Generator, s: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(g, s);
        out
    }

    pub fn function(l: Label) -> Self {
        Self::generator(Generator::Function(l))
    }

    pub fn current(a: usize, l: Label) -> Self {
        Self::generator(Generator::Current(a, l))
    }

    pub fn vector_field(l: Label) -> Self {
        Self::generator(Generator::VectorField(l))
    }

    pub fn t() -> Self {
        AlgebraElement { central: Scalar::one(), ..Self::zero() }
    }

    pub fn e() -> Self {
        AlgebraElement { efield: Scalar::one(), ..Self::zero() }
    }

    pub fn add_term(&mut self, g: Generator, s: Scalar) {
        if s.is_zero() {
            return;
        }
        let slot = self.terms.entry(g).or_insert_with(Scalar::zero);
        *slot += s;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_assign(&mut self, other: &AlgebraElement, s: &Scalar) {
        for (g, v) in &other.terms {
            self.add_term(*g, v * s);
        }
        self.central += &other.central * s;
        self.efield += &other.efield * s;
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_assign(self, s);
        out
    }

    pub fn plus(&self, other: &AlgebraElement) -> Self {
        let mut out = self.clone();
        out.add_assign(other, &Scalar::one());
        out
    }

    pub fn minus(&self, other: &AlgebraElement) -> Self {
        let mut out = self.clone();
        out.add_assign(other, &int(-1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero() && self.efield.is_zero()
    }

    /// Coefficients of `x_a(n)` over `n`: the modes of `x̂_a(Q) = Σ x_a(n) A_n(Q)`.
    pub fn current_modes(&self, a: usize) -> Vec<(Label, Scalar)> {
        self.terms
            .iter()
            .filter_map(|(g, v)| match g {
                Generator::Current(b, l) if *b == a => Some((*l, v.clone())),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (g, v) in &self.terms {
            let name = match g {
                Generator::Function(l) => format!("A({l})"),
                Generator::Current(a, l) => format!("u{a}({l})"),
                Generator::VectorField(l) => format!("e({l})"),
            };
            parts.push(format!("{}*{name}", to_pq(v)));
        }
        if !self.central.is_zero() {
            parts.push(format!("{}*t", to_pq(&self.central)));
        }
        if !self.efield.is_zero() {
            parts.push(format!("{}*e", to_pq(&self.efield)));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Central term of the vector-field bracket.
#[derive(Clone, Debug)]
pub enum VectorFieldCocycle {
    None,
    /// `scale · χ_R`
    Geometric { connection: ProjectiveConnection, scale: Scalar },
    /// `scale · χ_Σ` extracted from the Sugawara construction
    Sugawara { ordering: NormalOrdering, scale: Scalar },
}

pub struct KnAlgebra {
    tables: Arc<CoefficientTables>,
    lie: Arc<FiniteLieAlgebra>,
    cocycle: VectorFieldCocycle,
    /// `ε^k` of the adjoined `e`
    efield: Vec<(Label, Scalar)>,
    memo: Mutex<HashMap<(Generator, Generator), AlgebraElement>>,
}

impl fmt::Debug for KnAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KnAlgebra").field("lie", &self.lie.kind()).field("efield", &self.efield).finish()
    }
}

impl KnAlgebra {
    pub fn new(tables: Arc<CoefficientTables>, lie: Arc<FiniteLieAlgebra>) -> Self {
        KnAlgebra {
            tables,
            lie,
            cocycle: VectorFieldCocycle::None,
            efield: vec![(Label::two_point(0), Scalar::one())],
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_cocycle(mut self, cocycle: VectorFieldCocycle) -> Self {
        self.cocycle = cocycle;
        self.memo.lock().expect("memo lock").clear();
        self
    }

    /// Set `e = Σ ε^k e_k`.
    pub fn with_efield(mut self, eps: Vec<(Label, Scalar)>) -> Self {
        self.efield = eps.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        self
    }

    pub fn tables(&self) -> &Arc<CoefficientTables> {
        &self.tables
    }

    pub fn lie(&self) -> &Arc<FiniteLieAlgebra> {
        &self.lie
    }

    pub fn efield(&self) -> &[(Label, Scalar)] {
        &self.efield
    }

    pub fn render(&self, x: &AlgebraElement) -> String {
        let mut s = x.to_string();
        for a in (0..self.lie.dim()).rev() {
            s = s.replace(&format!("u{a}("), &format!("{}(", self.lie.label(a)));
        }
        s
    }

    fn vf_central(&self, k: Label, l: Label) -> Res<Scalar> {
        let t = &self.tables;
        Ok(match &self.cocycle {
            VectorFieldCocycle::None => Scalar::zero(),
            VectorFieldCocycle::Geometric { connection, scale } => scale * t.chi_geometric(connection, k, l)?,
            VectorFieldCocycle::Sugawara { ordering, scale } => scale * t.chi_ordered(k, l, ordering)?,
        })
    }

    /// `∇_{e_k}` on `A_r`: `Σ_v K_{r,k}^v A_v`.
    pub fn derivative(&self, k: Label, r: Label) -> Res<Vec<(Label, Scalar)>> {
        Ok(self.tables.kk_support(r, k)?)
    }

    pub fn bracket_generators(&self, x: Generator, y: Generator) -> Res<AlgebraElement> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(&(x, y)) {
            return Ok(v.clone());
        }
        let v = self.compute_generators(x, y)?;
        self.memo.lock().expect("memo lock").insert((x, y), v.clone());
        Ok(v)
    }

    fn compute_generators(&self, x: Generator, y: Generator) -> Res<AlgebraElement> {
        use Generator::*;
        let t = &self.tables;
        let mut out = AlgebraElement::zero();
        match (x, y) {
            (Function(n), Function(m)) => out.central = -t.gamma(n, m)?,
            (Current(a, n), Current(b, m)) => {
                let f = self.lie.structure(a, b);
                if !f.is_empty() {
                    for (k, alpha) in t.alpha_support(n, m)? {
                        for (c, s) in f {
                            out.add_term(Current(*c, k), &alpha * s);
                        }
                    }
                }
                let form = self.lie.form(a, b);
                if !form.is_zero() {
                    out.central = -(form * t.gamma(n, m)?);
                }
            }
            (VectorField(k), VectorField(l)) => {
                for (s, c) in t.c_support(k, l)? {
                    out.add_term(VectorField(s), c);
                }
                out.central = self.vf_central(k, l)?;
            }
            (VectorField(k), Function(r)) => {
                for (v, c) in self.derivative(k, r)? {
                    out.add_term(Function(v), c);
                }
            }
            (VectorField(k), Current(a, r)) => {
                for (v, c) in self.derivative(k, r)? {
                    out.add_term(Current(a, v), c);
                }
            }
            (Function(_) | Current(..), VectorField(_)) => {
                return Ok(self.compute_generators(y, x)?.scaled(&int(-1)));
            }
            (Function(_), Current(..)) | (Current(..), Function(_)) => {
                return Err(AlgebraError::Incompatible(x.family().into(), y.family().into()));
            }
        }
        Ok(out)
    }

    /// `e` written in the generators `e_k`.
    fn efield_element(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (k, s) in &self.efield {
            out.add_term(Generator::VectorField(*k), s.clone());
        }
        out
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Res<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (g, s) in &x.terms {
            for (h, t) in &y.terms {
                out.add_assign(&self.bracket_generators(*g, *h)?, &(s * t));
            }
        }
        // e brackets through its expansion; [e, e] = 0
        if !x.efield.is_zero() || !y.efield.is_zero() {
            let ex = self.efield_element();
            let x_rest = AlgebraElement { efield: Scalar::zero(), central: Scalar::zero(), terms: x.terms.clone() };
            let y_rest = AlgebraElement { efield: Scalar::zero(), central: Scalar::zero(), terms: y.terms.clone() };
            if !x.efield.is_zero() {
                out.add_assign(&self.bracket(&ex, &y_rest)?, &x.efield);
            }
            if !y.efield.is_zero() {
                out.add_assign(&self.bracket(&x_rest, &ex)?, &y.efield);
            }
        }
        Ok(out)
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`
    pub fn jacobiator(&self, x: &AlgebraElement, y: &AlgebraElement, z: &AlgebraElement) -> Res<AlgebraElement> {
        let a = self.bracket(&self.bracket(x, y)?, z)?;
        let b = self.bracket(&self.bracket(y, z)?, x)?;
        let c = self.bracket(&self.bracket(z, x)?, y)?;
        Ok(a.plus(&b).plus(&c))
    }

    pub fn jacobi_check(&self, triples: &[(AlgebraElement, AlgebraElement, AlgebraElement)]) -> Res<Vec<Check>> {
        let mut out = Vec::new();
        for (i, (x, y, z)) in triples.iter().enumerate() {
            let j = self.jacobiator(x, y, z)?;
            let indices = format!("#{i}:{};{};{}", self.render(x), self.render(y), self.render(z)).replace(' ', "");
            out.push(Check::text("jacobi", indices, self.render(&j).replace(' ', ""), "0", j.is_zero()));
        }
        Ok(out)
    }

    /// `γ(A_n, ∇_e A_m) = γ(A_m, ∇_e A_n)` for the adjoined `e`: the
    /// cancellation that makes the extended bracket satisfy Jacobi.
    pub fn e_invariance_checks(&self, range: i64) -> Res<Vec<Check>> {
        let t = &self.tables;
        let grad = |n: Label| -> Res<Vec<(Label, Scalar)>> {
            let mut acc: BTreeMap<Label, Scalar> = BTreeMap::new();
            for (k, eps) in &self.efield {
                for (v, c) in self.derivative(*k, n)? {
                    *acc.entry(v).or_insert_with(Scalar::zero) += eps * c;
                }
            }
            Ok(acc.into_iter().collect())
        };
        let gamma_with = |n: Label, f: &[(Label, Scalar)]| -> Res<Scalar> {
            let mut total = Scalar::zero();
            for (v, c) in f {
                total += c * t.gamma(n, *v)?;
            }
            Ok(total)
        };
        let all = self.box_labels(range);
        let mut out = Vec::new();
        for &n in &all {
            for &m in &all {
                if m < n {
                    continue;
                }
                let lhs = gamma_with(n, &grad(m)?)?;
                let rhs = gamma_with(m, &grad(n)?)?;
                out.push(Check::eq("gamma-e-invariance", format!("{n},{m}"), &lhs, &rhs));
            }
        }
        Ok(out)
    }

    /// `Σ_i [u_i(n), u^i(m)] = −dim g · γ_{nm} t`.
    pub fn casimir_current_checks(&self, range: i64) -> Res<Vec<Check>> {
        let all = self.box_labels(range);
        let dim = int(self.lie.dim() as i64);
        let mut out = Vec::new();
        for &n in &all {
            for &m in &all {
                let mut sum = AlgebraElement::zero();
                for (i, j, d) in self.lie.casimir_pairs() {
                    sum.add_assign(&self.bracket_generators(Generator::Current(i, n), Generator::Current(j, m))?, &d);
                }
                let mut want = AlgebraElement::zero();
                want.central = -(&dim * self.tables.gamma(n, m)?);
                out.push(Check::text(
                    "casimir-current-sum",
                    format!("{n},{m}"),
                    self.render(&sum).replace(' ', ""),
                    self.render(&want).replace(' ', ""),
                    sum == want,
                ));
            }
        }
        Ok(out)
    }

    /// Measured degree offsets of brackets and central terms against the
    /// declared bands.
    pub fn grading_band_check(&self, range: i64) -> Res<Vec<Check>> {
        let bands = *self.tables.realization().bands();
        let all = self.box_labels(range);
        let a = self.lie.dim().min(2);
        let families: [(&str, crate::realization::Band); 5] = [
            ("band-current", bands.alpha),
            ("band-current-central", bands.gamma),
            ("band-vector-field", bands.c),
            ("band-vector-field-central", bands.chi),
            ("band-action", bands.k),
        ];
        let mut measured: [Option<(i64, i64)>; 5] = [None; 5];
        let mut see = |i: usize, off: i64| {
            let e = measured[i].get_or_insert((off, off));
            e.0 = e.0.min(off);
            e.1 = e.1.max(off);
        };
        for &n in &all {
            for &m in &all {
                for x in 0..a {
                    for y in 0..a {
                        let b = self.bracket_generators(Generator::Current(x, n), Generator::Current(y, m))?;
                        for g in b.terms.keys() {
                            see(0, g.degree() - (n.n + m.n));
                        }
                        if !b.central.is_zero() {
                            see(1, n.n + m.n);
                        }
                    }
                }
                let b = self.bracket_generators(Generator::VectorField(n), Generator::VectorField(m))?;
                for g in b.terms.keys() {
                    see(2, g.degree() - (n.n + m.n));
                }
                if !b.central.is_zero() {
                    see(3, n.n + m.n);
                }
                let b = self.bracket_generators(Generator::VectorField(n), Generator::Current(0, m))?;
                for g in b.terms.keys() {
                    see(4, g.degree() - (n.n + m.n));
                }
            }
        }
        let show = |m: Option<(i64, i64)>| match m {
            Some((lo, hi)) => format!("[{lo},{hi}]"),
            None => "empty".to_string(),
        };
        Ok(families
            .iter()
            .zip(measured)
            .map(|((name, band), m)| {
                let pass = m.is_none_or(|(lo, hi)| band.contains(lo) && band.contains(hi));
                Check::text(name, format!("range={range}"), show(m), format!("[{},{}]", band.lo, band.hi), pass)
            })
            .collect())
    }

    fn box_labels(&self, range: i64) -> Vec<Label> {
        let k = self.tables.realization().branches();
        (-range..=range).flat_map(|n| (1..=k).map(move |p| Label::new(n, p))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::Realization;

    fn genus0(lie: &str) -> KnAlgebra {
        let t = Arc::new(CoefficientTables::new(Arc::new(Realization::two_point())));
        KnAlgebra::new(t, Arc::new(FiniteLieAlgebra::parse(lie).unwrap()))
    }

    #[test]
    fn classical_current_bracket() {
        let g = genus0("sl:2");
        let lie = g.lie().clone();
        let e = lie.index_of("E12").unwrap();
        let f = lie.index_of("E21").unwrap();
        let h = lie.index_of("H1").unwrap();
        let l = Label::two_point;
        // [h(n), h(-n)] = (h|h) n t = 2n t
        let b = g.bracket(&AlgebraElement::current(h, l(3)), &AlgebraElement::current(h, l(-3))).unwrap();
        assert_eq!(b, AlgebraElement::t().scaled(&int(6)));
        // [e(2), f(-1)] = h(1)
        let b = g.bracket(&AlgebraElement::current(e, l(2)), &AlgebraElement::current(f, l(-1))).unwrap();
        assert_eq!(b, AlgebraElement::current(h, l(1)));
        let b = g.bracket(&AlgebraElement::t(), &AlgebraElement::current(e, l(4))).unwrap();
        assert!(b.is_zero());
        // [e_0, x(n)] = n x(n)
        let b = g.bracket(&AlgebraElement::e(), &AlgebraElement::current(e, l(-4))).unwrap();
        assert_eq!(b, AlgebraElement::current(e, l(-4)).scaled(&int(-4)));
    }

    #[test]
    fn jacobi_samples() {
        let g = genus0("sl:2").with_cocycle(VectorFieldCocycle::Geometric {
            connection: ProjectiveConnection::genus0_double_pole(int(0)),
            scale: int(1),
        });
        let lie = g.lie().clone();
        let l = Label::two_point;
        let x = AlgebraElement::current(lie.index_of("E12").unwrap(), l(1));
        let y = AlgebraElement::current(lie.index_of("E21").unwrap(), l(-1));
        let e0 = AlgebraElement::vector_field(l(0));
        let triples = vec![
            (x.clone(), y.clone(), e0.clone()),
            (x.clone(), x.clone(), y.clone()),
            (AlgebraElement::vector_field(l(2)), AlgebraElement::vector_field(l(-1)), AlgebraElement::vector_field(l(-1))),
            (AlgebraElement::vector_field(l(3)), AlgebraElement::vector_field(l(-1)), AlgebraElement::vector_field(l(-2))),
            (x.clone(), y.clone(), AlgebraElement::e()),
        ];
        for c in g.jacobi_check(&triples).unwrap() {
            assert!(c.pass, "{c}");
        }
        assert!(g.e_invariance_checks(3).unwrap().iter().all(|c| c.pass));
        assert!(g.casimir_current_checks(3).unwrap().iter().all(|c| c.pass));
        assert!(g.grading_band_check(4).unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn function_and_current_do_not_mix() {
        let g = genus0("abelian:1");
        let l = Label::two_point;
        let err = g.bracket(&AlgebraElement::function(l(1)), &AlgebraElement::current(0, l(1)));
        assert!(matches!(err, Err(AlgebraError::Incompatible(..))));
        let b = g.bracket(&AlgebraElement::function(l(2)), &AlgebraElement::function(l(-2))).unwrap();
        assert_eq!(b, AlgebraElement::t().scaled(&int(2)));
    }
}
