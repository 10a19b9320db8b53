//! Normal orderings `Σ = Σ^+ ⊔ Σ^-` of index pairs: `:x(m)y(n): = x(m)y(n)`
//! on `Σ^+` and `y(n)x(m)` on `Σ^-`. The base split `Σ_0^+ = {m ≤ n}` is
//! modified on a finite override list.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderingError {
    Parse { line: usize, msg: String },
}

impl fmt::Display for OrderingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingError::Parse { line, msg } => write!(f, "ordering file line {line}: {msg}"),
        }
    }
}

impl std::error::Error for OrderingError {}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalOrdering {
    /// Pairs whose side differs from `Σ_0`, mapped to `true` for `Σ^+`.
    overrides: BTreeMap<(i64, i64), bool>,
}

impl NormalOrdering {
    /// `Σ_0`.
    pub fn standard() -> Self {
        NormalOrdering::default()
    }

    /// Build from explicit sides; entries agreeing with `Σ_0` are dropped.
    pub fn with_sides(sides: impl IntoIterator<Item = ((i64, i64), bool)>) -> Self {
        let overrides = sides
            .into_iter()
            .filter(|&((m, n), plus)| plus != (m <= n))
            .collect();
        NormalOrdering { overrides }
    }

    /// Flip the given pairs relative to `Σ_0`.
    pub fn flipped(pairs: &[(i64, i64)]) -> Self {
        NormalOrdering::with_sides(pairs.iter().map(|&(m, n)| ((m, n), m > n)))
    }

    /// Lines `m n +` or `m n -`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, OrderingError> {
        let mut sides = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| OrderingError::Parse { line: i + 1, msg: msg.to_string() };
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(err("expected `m n +|-`"));
            }
            let m = f[0].parse().map_err(|_| err("bad index"))?;
            let n = f[1].parse().map_err(|_| err("bad index"))?;
            let plus = match f[2] {
                "+" => true,
                "-" => false,
                _ => return Err(err("side must be + or -")),
            };
            sides.push(((m, n), plus));
        }
        Ok(NormalOrdering::with_sides(sides))
    }

    pub fn is_plus(&self, m: i64, n: i64) -> bool {
        self.overrides.get(&(m, n)).copied().unwrap_or(m <= n)
    }

    pub fn is_standard(&self) -> bool {
        self.overrides.is_empty()
    }

    /// Pairs differing from `Σ_0` with sign `+1` for pairs moved into `Σ^-`
    /// and `-1` for pairs moved into `Σ^+`.
    pub fn flips(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.overrides.iter().map(|(&p, &plus)| (p, if plus { -1 } else { 1 }))
    }

    /// Whether all overrides lie in the critical square `[-g, 0]²` (the class
    /// for which the weight formulas hold).
    pub fn in_critical_class(&self, genus: u32) -> bool {
        let g = genus as i64;
        self.overrides.keys().all(|&(m, n)| (-g..=0).contains(&m) && (-g..=0).contains(&n))
    }

    /// `Σ^±_cs`: the critical square split by this ordering.
    pub fn critical_split(&self, genus: u32) -> (Vec<(i64, i64)>, Vec<(i64, i64)>) {
        let g = genus as i64;
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for m in -g..=0 {
            for n in -g..=0 {
                if self.is_plus(m, n) {
                    plus.push((m, n));
                } else {
                    minus.push((m, n));
                }
            }
        }
        (plus, minus)
    }

    /// Index range outside of which this ordering agrees with `Σ_0`.
    pub fn override_span(&self) -> Option<(i64, i64)> {
        let lo = self.overrides.keys().map(|&(m, n)| m.min(n)).min()?;
        let hi = self.overrides.keys().map(|&(m, n)| m.max(n)).max()?;
        Some((lo, hi))
    }

    pub fn overrides(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.overrides.keys().copied()
    }
}

impl fmt::Display for NormalOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.overrides.is_empty() {
            return write!(f, "sigma0");
        }
        write!(f, "sigma0")?;
        for (&(m, n), &plus) in &self.overrides {
            write!(f, "{}({m},{n})", if plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_split() {
        let s = NormalOrdering::standard();
        assert!(s.is_plus(1, 1));
        assert!(s.is_plus(-2, 3));
        assert!(!s.is_plus(3, -2));
    }

    #[test]
    fn overrides_and_flips() {
        let s = NormalOrdering::parse("0 0 -\n2 1 +\n-1 3 +  # already in Σ0\n").unwrap();
        assert!(!s.is_plus(0, 0));
        assert!(s.is_plus(2, 1));
        let flips: Vec<_> = s.flips().collect();
        assert_eq!(flips, vec![((0, 0), 1), ((2, 1), -1)]);
        assert!(!s.in_critical_class(0));
        assert!(NormalOrdering::flipped(&[(0, 0)]).in_critical_class(0));
    }

    #[test]
    fn critical_square_at_genus_zero() {
        let s = NormalOrdering::flipped(&[(0, 0)]);
        let (plus, minus) = s.critical_split(0);
        assert!(plus.is_empty());
        assert_eq!(minus, vec![(0, 0)]);
    }
}
