//! Genus-0 highest-weight modules `V = U(Ĝ_-) ⊗ U(n_-) v`, induced from the
//! one-dimensional module of `b ⊕ Ĝ_+ ⊕ ℂt` with `h ↦ χ_0(h)`, `n_+ ↦ 0`,
//! `Ĝ_+ ↦ 0` and `t ↦ c`.
//!
//! Vectors are sparse combinations of PBW monomials `y_1 ⋯ y_L v` with the
//! generators sorted by degree descending, ties by basis label. The action
//! of a mode on a monomial is computed by commuting it to its PBW slot and is
//! memoized per (mode, monomial).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rustc_hash::FxHashMap as HashMap;

use crate::algebra::{AlgebraElement, AlgebraError, Generator, KnAlgebra};
use crate::exact::coeff::Coeff;
use crate::exact::Scalar;
use crate::realization::Label;
use crate::report::{Check, Report};
use crate::rep::ordering::NormalOrdering;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("component of degree {degree} requested below the trusted window (floor {floor})")]
    BelowWindow { degree: i64, floor: i64 },
    #[error("{0}")]
    Unsupported(String),
}

type Res<T> = Result<T, RepError>;

/// The current mode `u_a(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mode {
    pub a: usize,
    pub n: i64,
}

impl Mode {
    pub const fn new(a: usize, n: i64) -> Self {
        Mode { a, n }
    }

    fn key(&self) -> (i64, usize) {
        (-self.n, self.a)
    }
}

impl PartialOrd for Mode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Highest weight `χ = (χ_0, …, χ_{-g})` (values on the Cartan basis) and
/// level `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeightSpec {
    pub chi: Vec<Vec<Scalar>>,
    pub level: Scalar,
}

impl HighestWeightSpec {
    pub fn genus0(chi0: Vec<Scalar>, level: Scalar) -> Self {
        HighestWeightSpec { chi: vec![chi0], level }
    }

    pub fn chi0(&self) -> &[Scalar] {
        &self.chi[0]
    }
}

pub(crate) type MonoId = u32;
type Sparse = Arc<Vec<(MonoId, Coeff)>>;

/// Sparse vector over PBW monomials. Components of degree below `floor`
/// are not trusted; `discarded` records that some were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    terms: BTreeMap<MonoId, Coeff>,
    floor: i64,
    discarded: bool,
}

impl ModuleVector {
    pub(crate) fn empty(floor: i64) -> Self {
        ModuleVector { terms: BTreeMap::new(), floor, discarded: false }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn discarded(&self) -> bool {
        self.discarded
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, id: MonoId, s: Coeff) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(id) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &s;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, s: &Scalar) {
        self.add_scaled_by(other, &Coeff::from_scalar(s));
    }

    pub(crate) fn add_scaled_by(&mut self, other: &ModuleVector, s: &Coeff) {
        self.discarded |= other.discarded;
        self.floor = self.floor.max(other.floor);
        if s.is_zero() {
            return;
        }
        for (id, v) in &other.terms {
            self.add_term(*id, v * s);
        }
    }

    pub fn plus(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn minus(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn scaled(&self, s: &Scalar) -> ModuleVector {
        let mut out = ModuleVector::empty(self.floor);
        out.add_scaled(self, s);
        out
    }

    pub(crate) fn mark_discarded(&mut self) {
        self.discarded = true;
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (MonoId, &Coeff)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }
}

#[derive(Default)]
struct State {
    monos: Vec<Arc<[Mode]>>,
    degrees: Vec<i64>,
    ids: HashMap<Arc<[Mode]>, MonoId>,
    act: HashMap<(Mode, MonoId), Sparse>,
    e_act: HashMap<(i64, MonoId), Sparse>,
}

pub struct VermaModule {
    alg: Arc<KnAlgebra>,
    weight: HighestWeightSpec,
    depth: i64,
    zero_mode_cap: usize,
    lambda_e: Scalar,
    state: Mutex<State>,
}

impl fmt::Debug for VermaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VermaModule")
            .field("weight", &self.weight)
            .field("depth", &self.depth)
            .field("zero_mode_cap", &self.zero_mode_cap)
            .finish()
    }
}

impl VermaModule {
    /// `depth` is the trusted window: components of degree below `-depth`
    /// are discarded. Basis enumeration allows at most `zero_mode_cap`
    /// factors from `n_-(0)`.
    pub fn new(alg: Arc<KnAlgebra>, weight: HighestWeightSpec, depth: i64, zero_mode_cap: usize) -> Res<Self> {
        let real = alg.tables().realization();
        if !real.is_two_point() || real.spec().genus != 0 {
            return Err(RepError::Unsupported(
                "highest-weight modules are built for the genus-0 two-point case only".into(),
            ));
        }
        if weight.chi.is_empty() || weight.chi0().len() != alg.lie().rank() {
            return Err(RepError::Unsupported(format!("weight must have {} components", alg.lie().rank())));
        }
        let m = VermaModule {
            alg,
            weight,
            depth,
            zero_mode_cap,
            lambda_e: Scalar::zero(),
            state: Mutex::new(State::default()),
        };
        m.intern(&[]);
        Ok(m)
    }

    /// `e_0 v = λ_e v`.
    pub fn with_lambda_e(mut self, lambda_e: Scalar) -> Self {
        self.lambda_e = lambda_e;
        self
    }

    pub fn algebra(&self) -> &Arc<KnAlgebra> {
        &self.alg
    }

    pub fn weight(&self) -> &HighestWeightSpec {
        &self.weight
    }

    pub fn level(&self) -> &Scalar {
        &self.weight.level
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn lambda_e(&self) -> &Scalar {
        &self.lambda_e
    }

    fn intern(&self, modes: &[Mode]) -> MonoId {
        let mut st = self.state.lock().expect("state lock");
        if let Some(&id) = st.ids.get(modes) {
            return id;
        }
        let id = st.monos.len() as MonoId;
        let key: Arc<[Mode]> = Arc::from(modes);
        st.monos.push(Arc::clone(&key));
        st.degrees.push(modes.iter().map(|m| m.n).sum());
        st.ids.insert(key, id);
        id
    }

    fn mono(&self, id: MonoId) -> Arc<[Mode]> {
        Arc::clone(&self.state.lock().expect("state lock").monos[id as usize])
    }

    pub(crate) fn degree_of(&self, id: MonoId) -> i64 {
        self.state.lock().expect("state lock").degrees[id as usize]
    }

    pub fn vacuum(&self) -> ModuleVector {
        let mut v = ModuleVector::empty(-self.depth);
        v.add_term(self.intern(&[]), Coeff::one());
        v
    }

    /// `y_1 ⋯ y_L v` for creation modes; the word is sorted into PBW order.
    pub fn monomial(&self, modes: &[Mode]) -> Res<ModuleVector> {
        let mut sorted = modes.to_vec();
        sorted.sort();
        for m in &sorted {
            if !self.is_creation(*m) {
                return Err(RepError::Unsupported(format!("{} is not a creation mode", self.mode_name(*m))));
            }
        }
        let mut v = ModuleVector::empty(-self.depth);
        v.add_term(self.intern(&sorted), Coeff::one());
        Ok(v)
    }

    pub(crate) fn basis_vector(&self, id: MonoId) -> ModuleVector {
        let mut v = ModuleVector::empty(-self.depth);
        v.add_term(id, Coeff::one());
        v
    }

    pub fn is_creation(&self, m: Mode) -> bool {
        m.n < 0 || (m.n == 0 && matches!(self.alg.lie().root_of(m.a), Some((_, false))))
    }

    pub fn mode_name(&self, m: Mode) -> String {
        format!("{}({})", self.alg.lie().label(m.a), m.n)
    }

    /// Degree of a homogeneous vector; `None` for zero or mixed vectors.
    pub fn degree(&self, w: &ModuleVector) -> Option<i64> {
        let mut ds = w.terms().map(|(id, _)| self.degree_of(id));
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }

    /// Coefficient of a monomial; refuses monomials below the trusted window.
    pub fn component(&self, w: &ModuleVector, modes: &[Mode]) -> Res<Scalar> {
        let mut sorted = modes.to_vec();
        sorted.sort();
        let degree: i64 = sorted.iter().map(|m| m.n).sum();
        if degree < w.floor {
            return Err(RepError::BelowWindow { degree, floor: w.floor });
        }
        let id = self.intern(&sorted);
        Ok(w.terms.get(&id).map(Coeff::to_scalar).unwrap_or_else(Scalar::zero))
    }

    /// `s` with `w = s v`, if `w` lies on the `v`-line.
    pub fn vacuum_multiple(&self, w: &ModuleVector) -> Option<Scalar> {
        let vac = self.intern(&[]);
        match w.terms.len() {
            0 => Some(Scalar::zero()),
            1 => w.terms.get(&vac).map(Coeff::to_scalar),
            _ => None,
        }
    }

    /// `s` with `w = s b` for a single-monomial vector `b`.
    pub fn multiple_of(&self, w: &ModuleVector, b: &ModuleVector) -> Option<Scalar> {
        let (id, _) = b.terms().next()?;
        match w.terms.len() {
            0 => Some(Scalar::zero()),
            1 => w.terms.get(&id).map(Coeff::to_scalar),
            _ => None,
        }
    }

    pub fn render(&self, w: &ModuleVector) -> String {
        if w.is_zero() {
            return if w.discarded { "[discarded]".into() } else { "0".into() };
        }
        let mut items: Vec<(Arc<[Mode]>, &Coeff)> = w.terms().map(|(id, s)| (self.mono(id), s)).collect();
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let parts: Vec<String> = items
            .iter()
            .map(|(m, s)| {
                let word: String = m.iter().map(|x| self.mode_name(*x)).collect();
                format!("{s}*{word}v")
            })
            .collect();
        let mut out = parts.join("+");
        if w.discarded {
            out.push_str("+[discarded]");
        }
        out
    }

    fn bracket_modes(&self, x: Mode, y: Mode) -> Res<AlgebraElement> {
        let l = Label::two_point;
        Ok(self.alg.bracket_generators(Generator::Current(x.a, l(x.n)), Generator::Current(y.a, l(y.n)))?)
    }

    fn act_mono(&self, g: Mode, id: MonoId) -> Res<Sparse> {
        if let Some(r) = self.state.lock().expect("state lock").act.get(&(g, id)) {
            return Ok(Arc::clone(r));
        }
        let mono = self.mono(id);
        let mut acc: BTreeMap<MonoId, Coeff> = BTreeMap::new();
        let add = |acc: &mut BTreeMap<MonoId, Coeff>, k: MonoId, s: Coeff| {
            if !s.is_zero() {
                *acc.entry(k).or_insert_with(Coeff::zero) += &s;
            }
        };
        if mono.is_empty() {
            if self.is_creation(g) {
                add(&mut acc, self.intern(&[g]), Coeff::one());
            } else if g.n == 0 {
                if let Some(k) = self.alg.lie().cartan_index(g.a) {
                    add(&mut acc, id, Coeff::from_scalar(&self.weight.chi0()[k]));
                }
            }
        } else if self.is_creation(g) && g <= mono[0] {
            let mut word = Vec::with_capacity(mono.len() + 1);
            word.push(g);
            word.extend_from_slice(&mono);
            add(&mut acc, self.intern(&word), Coeff::one());
        } else {
            // g y rest = y (g rest) + [g, y] rest
            let y = mono[0];
            let rest = self.intern(&mono[1..]);
            if self.degree_of(rest) + g.n <= 0 {
                let inner = self.act_mono(g, rest)?;
                for (t, s) in inner.iter() {
                    for (u, r) in self.act_mono(y, *t)?.iter() {
                        add(&mut acc, *u, s * r);
                    }
                }
            }
            let br = self.bracket_modes(g, y)?;
            for (gen, s) in &br.terms {
                let Generator::Current(c, k) = gen else {
                    return Err(RepError::Unsupported("current bracket left the current algebra".into()));
                };
                if self.degree_of(rest) + k.n > 0 {
                    continue;
                }
                let s = Coeff::from_scalar(s);
                for (u, r) in self.act_mono(Mode::new(*c, k.n), rest)?.iter() {
                    add(&mut acc, *u, &s * r);
                }
            }
            if !br.central.is_zero() {
                add(&mut acc, rest, Coeff::from_scalar(&(&br.central * &self.weight.level)));
            }
        }
        let result: Sparse = Arc::new(acc.into_iter().filter(|(_, s)| !s.is_zero()).collect());
        self.state.lock().expect("state lock").act.insert((g, id), Arc::clone(&result));
        Ok(result)
    }

    /// `u_a(n) · w`; components landing below the window are discarded.
    pub fn act(&self, g: Mode, w: &ModuleVector) -> Res<ModuleVector> {
        let mut out = ModuleVector::empty(w.floor);
        out.discarded = w.discarded;
        for (id, s) in w.terms() {
            let d = self.degree_of(id) + g.n;
            if d > 0 {
                continue;
            }
            if d < w.floor {
                out.discarded = true;
                continue;
            }
            for (u, r) in self.act_mono(g, id)?.iter() {
                out.add_term(*u, s * r);
            }
        }
        Ok(out)
    }

    /// `e_l` acting as a derivation with `e_0 v = λ_e v` and `e_l v = 0` for
    /// `l > 0`. For `l < 0` there is no such extension of the action.
    pub fn act_e(&self, l: i64, w: &ModuleVector) -> Res<ModuleVector> {
        if l < 0 {
            return Err(RepError::Unsupported(format!(
                "e_{l} has no derivation action fixing the highest-weight line"
            )));
        }
        let mut out = ModuleVector::empty(w.floor);
        out.discarded = w.discarded;
        for (id, s) in w.terms() {
            if self.degree_of(id) + l > 0 {
                continue;
            }
            for (u, r) in self.e_mono(l, id)?.iter() {
                out.add_term(*u, s * r);
            }
        }
        Ok(out)
    }

    fn e_mono(&self, l: i64, id: MonoId) -> Res<Sparse> {
        if let Some(r) = self.state.lock().expect("state lock").e_act.get(&(l, id)) {
            return Ok(Arc::clone(r));
        }
        let mono = self.mono(id);
        let mut acc = ModuleVector::empty(i64::MIN);
        if l == 0 {
            acc.add_term(id, Coeff::from_scalar(&self.lambda_e));
        }
        for j in 0..mono.len() {
            let y = mono[j];
            let tail = self.basis_vector(self.intern(&mono[j + 1..]));
            let br = self.alg.bracket_generators(
                Generator::VectorField(Label::two_point(l)),
                Generator::Current(y.a, Label::two_point(y.n)),
            )?;
            let mut piece = ModuleVector::empty(i64::MIN);
            for (gen, s) in &br.terms {
                let Generator::Current(c, k) = gen else { continue };
                piece.add_scaled(&self.act_exact(Mode::new(*c, k.n), &tail)?, s);
            }
            for x in mono[..j].iter().rev() {
                piece = self.act_exact(*x, &piece)?;
            }
            acc.add_scaled_by(&piece, &Coeff::one());
        }
        let result: Sparse = Arc::new(acc.terms.into_iter().collect());
        self.state.lock().expect("state lock").e_act.insert((l, id), Arc::clone(&result));
        Ok(result)
    }

    fn act_exact(&self, g: Mode, w: &ModuleVector) -> Res<ModuleVector> {
        let mut out = ModuleVector::empty(w.floor);
        for (id, s) in w.terms() {
            if self.degree_of(id) + g.n > 0 {
                continue;
            }
            for (u, r) in self.act_mono(g, id)?.iter() {
                out.add_term(*u, s * r);
            }
        }
        Ok(out)
    }

    /// Action of an algebra element: currents, `t ↦ c`, vector fields `e_l`
    /// (`l ≥ 0`) and the adjoined `e`.
    pub fn act_element(&self, x: &AlgebraElement, w: &ModuleVector) -> Res<ModuleVector> {
        let mut out = w.scaled(&(&x.central * &self.weight.level));
        for (g, s) in &x.terms {
            let piece = match g {
                Generator::Current(a, l) if l.p == 1 => self.act(Mode::new(*a, l.n), w)?,
                Generator::VectorField(l) => self.act_e(l.n, w)?,
                _ => {
                    return Err(RepError::Unsupported(format!(
                        "{g:?} does not act on a current-algebra module"
                    )))
                }
            };
            out.add_scaled(&piece, s);
        }
        if !x.efield.is_zero() {
            for (k, eps) in self.alg.efield() {
                out.add_scaled(&self.act_e(k.n, w)?, &(eps * &x.efield));
            }
        }
        Ok(out)
    }

    /// PBW basis monomials of degree `≥ -depth`, ordered by degree from 0 down.
    pub fn basis(&self, depth: i64) -> Vec<ModuleVector> {
        let lie = self.alg.lie();
        let mut modes = Vec::new();
        for a in 0..lie.dim() {
            let m = Mode::new(a, 0);
            if self.is_creation(m) {
                modes.push(m);
            }
        }
        for n in 1..=depth {
            for a in 0..lie.dim() {
                modes.push(Mode::new(a, -n));
            }
        }
        modes.sort();
        fn rec(
            modes: &[Mode],
            start: usize,
            budget: i64,
            zeros: usize,
            cap: usize,
            word: &mut Vec<Mode>,
            out: &mut Vec<Vec<Mode>>,
        ) {
            out.push(word.clone());
            for i in start..modes.len() {
                let m = modes[i];
                if -m.n > budget || (m.n == 0 && zeros >= cap) {
                    continue;
                }
                word.push(m);
                rec(modes, i, budget + m.n, zeros + usize::from(m.n == 0), cap, word, out);
                word.pop();
            }
        }
        let mut out = Vec::new();
        rec(&modes, 0, depth, 0, self.zero_mode_cap, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| {
            let da: i64 = a.iter().map(|m| m.n).sum();
            let db: i64 = b.iter().map(|m| m.n).sum();
            db.cmp(&da).then_with(|| a.cmp(b))
        });
        out.iter().map(|w| self.basis_vector(self.intern(w))).collect()
    }

    /// Conditions (1)–(4) for the top vector `top`, checked on generators up
    /// to the given depth; condition (5) is reported as a note.
    pub fn check_conditions(&self, top: &ModuleVector, ordering: &NormalOrdering, depth: i64) -> Res<Report> {
        let lie = self.alg.lie().clone();
        let mut r = Report::new("conditions");
        for n in 1..=depth {
            for a in 0..lie.dim() {
                let m = Mode::new(a, n);
                let w = self.act(m, top)?;
                r.push(Check::text("cond1-annihilate", self.mode_name(m), self.render(&w), "0", w.is_zero()));
            }
        }
        for root in lie.roots() {
            let m = Mode::new(root.positive, 0);
            let w = self.act(m, top)?;
            r.push(Check::text("cond3-positive-root", self.mode_name(m), self.render(&w), "0", w.is_zero()));
        }
        for (k, &h) in lie.cartan().iter().enumerate() {
            let w = self.act(Mode::new(h, 0), top)?;
            let want = top.scaled(&self.weight.chi0()[k]);
            r.push(Check::text("cond2-cartan", lie.label(h), self.render(&w), self.render(&want), w == want));
        }
        let tw = self.act_element(&AlgebraElement::t(), top)?;
        let want = top.scaled(&self.weight.level);
        r.push(Check::text("cond2-central", "t", self.render(&tw), self.render(&want), tw == want));
        for (k, &h) in lie.cartan().iter().enumerate() {
            for (j, &h2) in lie.cartan().iter().enumerate() {
                // :h(0) h2(0): applies h2 first on Σ^+
                let (first, second) = if ordering.is_plus(0, 0) { (h2, h) } else { (h, h2) };
                let w = self.act(Mode::new(second, 0), &self.act(Mode::new(first, 0), top)?)?;
                let want = top.scaled(&(&self.weight.chi0()[k] * &self.weight.chi0()[j]));
                r.push(Check::text(
                    "cond2-normal-ordered",
                    format!("{},{}", lie.label(h), lie.label(h2)),
                    self.render(&w),
                    self.render(&want),
                    w == want,
                ));
            }
        }
        let basis = self.basis(depth);
        // cyclicity: each basis monomial is its own word applied to v
        for w in &basis {
            let (id, _) = w.terms().next().expect("basis vector");
            let mut built = self.vacuum();
            for m in self.mono(id).iter().rev() {
                built = self.act(*m, &built)?;
            }
            r.push(Check::text("cond1-cyclic", self.render(w), self.render(&built), self.render(w), built == *w));
        }
        // (4): degrees in u(n) v_m lie in the support of A_n A_m
        let tables = self.alg.tables();
        for n in -depth..=0 {
            for w in &basis {
                let m = self.degree(w).expect("homogeneous basis vector");
                if n + m < -self.depth {
                    continue;
                }
                let allowed: Vec<i64> = tables
                    .alpha_support(Label::two_point(n), Label::two_point(m))
                    .map_err(AlgebraError::from)?
                    .into_iter()
                    .map(|(k, _)| k.n)
                    .collect();
                let mut seen = Vec::new();
                for a in 0..lie.dim() {
                    let out = self.act(Mode::new(a, n), w)?;
                    seen.extend(out.terms().map(|(id, _)| self.degree_of(id)));
                }
                seen.sort();
                seen.dedup();
                let ok = seen.iter().all(|d| allowed.contains(d));
                r.push(Check::text(
                    "cond4-grading",
                    format!("{n};{}", self.render(w)),
                    format!("{seen:?}").replace(' ', ""),
                    format!("{allowed:?}").replace(' ', ""),
                    ok,
                ));
            }
        }
        r.note(
            "condition-5",
            "genus 0: v has degree 0 = -g rather than below it, and the degree-0 piece is U(n_-(0))v",
        );
        Ok(r)
    }

    /// `act([x,y], w) = x(y w) − y(x w)` and `x(n) w = 0` past the
    /// admissibility bound, over the basis up to `depth`.
    pub fn representation_checks(&self, pairs: &[(Mode, Mode)], depth: i64) -> Res<Vec<Check>> {
        let mut out = Vec::new();
        let l = Label::two_point;
        for w in self.basis(depth) {
            let d = self.degree(&w).expect("homogeneous");
            for &(x, y) in pairs {
                if d + x.n.min(0) + y.n.min(0) < -self.depth {
                    continue;
                }
                let br = self
                    .alg
                    .bracket(&AlgebraElement::current(x.a, l(x.n)), &AlgebraElement::current(y.a, l(y.n)))?;
                let lhs = self.act_element(&br, &w)?;
                let rhs = self.act(x, &self.act(y, &w)?)?.minus(&self.act(y, &self.act(x, &w)?)?);
                out.push(Check::text(
                    "representation",
                    format!("{},{};{}", self.mode_name(x), self.mode_name(y), self.render(&w)),
                    self.render(&lhs),
                    self.render(&rhs),
                    lhs == rhs,
                ));
            }
            for a in 0..self.alg.lie().dim() {
                for n in (-d + 1)..=(-d + 2) {
                    let m = Mode::new(a, n);
                    let z = self.act(m, &w)?;
                    out.push(Check::text(
                        "admissible",
                        format!("{};{}", self.mode_name(m), self.render(&w)),
                        self.render(&z),
                        "0",
                        z.is_zero(),
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
    use crate::coeffs::CoefficientTables;
    use crate::exact::scalar::int;
    use crate::lie::FiniteLieAlgebra;
    use crate::realization::Realization;

    fn sl2(level: i64) -> VermaModule {
        let t = Arc::new(CoefficientTables::new(Arc::new(Realization::two_point())));
        let alg = Arc::new(KnAlgebra::new(t, Arc::new(FiniteLieAlgebra::sl(2).unwrap())));
        VermaModule::new(alg, HighestWeightSpec::genus0(vec![int(1)], int(level)), 8, 2).unwrap()
    }

    #[test]
    fn vacuum_rules_and_central_term() {
        let v = sl2(1);
        let lie = v.algebra().lie().clone();
        let (e, f, h) = (lie.index_of("E12").unwrap(), lie.index_of("E21").unwrap(), lie.index_of("H1").unwrap());
        let vac = v.vacuum();
        assert!(v.act(Mode::new(e, 0), &vac).unwrap().is_zero());
        assert_eq!(v.act(Mode::new(h, 0), &vac).unwrap(), vac);
        // h(1) h(-1) v = (h|h) c v = 2 v
        let w = v.act(Mode::new(h, -1), &vac).unwrap();
        assert_eq!(v.act(Mode::new(h, 1), &w).unwrap(), vac.scaled(&int(2)));
        // e(0) f(0) v = h(0) v = v
        let w = v.act(Mode::new(f, 0), &vac).unwrap();
        assert_eq!(v.act(Mode::new(e, 0), &w).unwrap(), vac);
        assert_eq!(v.render(&w), "1/1*E21(0)v");
    }

    #[test]
    fn conditions_hold_for_v_and_fail_for_f0v() {
        let v = sl2(1);
        let r = v.check_conditions(&v.vacuum(), &NormalOrdering::standard(), 3).unwrap();
        assert!(r.all_passed(), "{:?}", r.first_failure());
        let f = v.algebra().lie().index_of("E21").unwrap();
        let bad = v.act(Mode::new(f, 0), &v.vacuum()).unwrap();
        let r = v.check_conditions(&bad, &NormalOrdering::standard(), 2).unwrap();
        assert!(r.checks.iter().any(|c| c.name == "cond3-positive-root" && !c.pass));
    }

    #[test]
    fn representation_property() {
        let v = sl2(1);
        let lie = v.algebra().lie().clone();
        let (e, f, h) = (lie.index_of("E12").unwrap(), lie.index_of("E21").unwrap(), lie.index_of("H1").unwrap());
        let pairs = [
            (Mode::new(e, 1), Mode::new(f, -2)),
            (Mode::new(h, 2), Mode::new(h, -2)),
            (Mode::new(e, 0), Mode::new(f, -1)),
        ];
        for c in v.representation_checks(&pairs, 3).unwrap() {
            assert!(c.pass, "{c}");
        }
    }

    #[test]
    fn window_refusal() {
        let v = sl2(1);
        let h = v.algebra().lie().index_of("H1").unwrap();
        let w = v.act(Mode::new(h, -9), &v.vacuum()).unwrap();
        assert!(w.discarded());
        assert!(matches!(v.component(&w, &[Mode::new(h, -9)]), Err(RepError::BelowWindow { .. })));
    }
}
