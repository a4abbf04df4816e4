//! Exact integer-point counting for bounded systems of rational linear
//! inequalities.
//!
//! Fourier–Motzkin elimination projects the system onto every prefix
//! `x_1..x_k` of its variables. Enumeration then walks the prefixes: the
//! rows of projection `k` that involve `x_k` give its range for the current
//! prefix. Every original row is checked at the level of its last variable,
//! so the leaves are exactly the integer points of the system.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::{Error, Result};

pub type Rational = Ratio<i64>;

/// `Σ coefficients[i]·v_i ≥ constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub coefficients: Vec<Rational>,
    pub constant: Rational,
}

impl Inequality {
    pub fn new(coefficients: Vec<Rational>, constant: Rational) -> Self {
        Self {
            coefficients,
            constant,
        }
    }

    pub fn from_integers(coefficients: &[i64], constant: i64) -> Self {
        Self {
            coefficients: coefficients
                .iter()
                .map(|&c| Rational::from_integer(c))
                .collect(),
            constant: Rational::from_integer(constant),
        }
    }

    pub fn is_satisfied_by(&self, point: &[i64]) -> bool {
        let lhs: Rational = self
            .coefficients
            .iter()
            .zip(point)
            .map(|(c, &x)| c * Rational::from_integer(x))
            .sum();
        lhs >= self.constant
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct InequalitySystem {
    variables: Vec<String>,
    inequalities: Vec<Inequality>,
}

impl InequalitySystem {
    pub fn new(variables: Vec<String>) -> Self {
        Self {
            variables,
            inequalities: Vec::new(),
        }
    }

    pub fn push(&mut self, inequality: Inequality) -> Result<()> {
        if inequality.coefficients.len() != self.variables.len() {
            return Err(Error::CoefficientCount {
                expected: self.variables.len(),
                found: inequality.coefficients.len(),
            });
        }
        self.inequalities.push(inequality);
        Ok(())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        self.inequalities.iter().all(|q| q.is_satisfied_by(point))
    }
}

/// One inequality per line: `c1*v1 + c2*v2 + ... >= k`. Zero coefficients
/// are omitted; a row with no terms prints as `0 >= k`.
impl fmt::Display for InequalitySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, q) in self.inequalities.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            let mut first = true;
            for (c, v) in q.coefficients.iter().zip(&self.variables) {
                if *c.numer() == 0 {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "{c}*{v}")?;
                first = false;
            }
            if first {
                write!(f, "0")?;
            }
            write!(f, " >= {}", q.constant)?;
        }
        Ok(())
    }
}

/// `coeffs·x ≥ rhs` with primitive integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    coeffs: Vec<i128>,
    rhs: i128,
}

/// Normalises a row in place; `None` if it has no variables left (the
/// caller checks the constant).
fn normalise(coeffs: Vec<i128>, rhs: i128) -> Option<Row> {
    let g = coeffs.iter().fold(0i128, |g, &c| g.gcd(&c));
    if g == 0 {
        return None;
    }
    Some(Row {
        coeffs: coeffs.into_iter().map(|c| c / g).collect(),
        // valid for integer points: the left side is a multiple of g
        rhs: Integer::div_ceil(&rhs, &g),
    })
}

fn to_row(q: &Inequality) -> Result<(Vec<i128>, i128)> {
    let lcm = q
        .coefficients
        .iter()
        .chain(core::iter::once(&q.constant))
        .fold(1i128, |l, c| l.lcm(&(*c.denom() as i128)));
    let scale = |c: &Rational| -> Result<i128> {
        (*c.numer() as i128)
            .checked_mul(lcm / *c.denom() as i128)
            .ok_or(Error::Overflow)
    };
    let coeffs = q
        .coefficients
        .iter()
        .map(scale)
        .collect::<Result<Vec<_>>>()?;
    Ok((coeffs, scale(&q.constant)?))
}

/// Per-level bound rows produced by Fourier–Motzkin elimination.
pub(crate) struct Projection {
    levels: Vec<Vec<Row>>,
    infeasible: bool,
}

/// Which original inequalities a derived row was combined from, and which
/// variables occur in any of them.
#[derive(Clone)]
struct History {
    rows: Vec<u64>,
    vars: Vec<u64>,
}

fn bits(len: usize, set: impl Iterator<Item = usize>) -> Vec<u64> {
    let mut b = alloc::vec![0u64; len.div_ceil(64)];
    for i in set {
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

fn union(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

impl History {
    fn merge(&self, other: &Self) -> Self {
        Self {
            rows: union(&self.rows, &other.rows),
            vars: union(&self.vars, &other.vars),
        }
    }

    /// Imbert's test: a combination of more originals than one plus the
    /// number of variables it eliminated is implied by other rows.
    fn is_redundant(&self, row: &Row) -> bool {
        let used: u32 = self.rows.iter().map(|w| w.count_ones()).sum();
        let gone = row
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(v, &c)| c == 0 && self.vars[v / 64] >> (v % 64) & 1 == 1)
            .count();
        used as usize > gone + 1
    }
}

fn insert(set: &mut BTreeMap<Vec<i128>, (i128, History)>, row: Row, history: History) {
    match set.get_mut(&row.coeffs) {
        Some(old) if old.0 >= row.rhs => {}
        Some(old) => *old = (row.rhs, history),
        None => {
            set.insert(row.coeffs, (row.rhs, history));
        }
    }
}

impl Projection {
    pub(crate) fn new(system: &InequalitySystem) -> Result<Self> {
        let n = system.variables.len();
        let m = system.inequalities.len();
        let mut levels: Vec<Vec<Row>> = (0..n).map(|_| Vec::new()).collect();
        let mut infeasible = false;
        let mut current = BTreeMap::new();
        for (i, q) in system.inequalities.iter().enumerate() {
            let (coeffs, rhs) = to_row(q)?;
            let vars = bits(
                n,
                coeffs.iter().enumerate().filter(|c| *c.1 != 0).map(|c| c.0),
            );
            let history = History {
                rows: bits(m, core::iter::once(i)),
                vars,
            };
            match normalise(coeffs, rhs) {
                Some(row) => insert(&mut current, row, history),
                None => infeasible |= rhs > 0,
            }
        }
        for k in (0..n).rev() {
            if infeasible {
                break;
            }
            let mut next = BTreeMap::new();
            let (mut pos, mut neg) = (Vec::new(), Vec::new());
            for (coeffs, (rhs, history)) in current {
                let row = Row { coeffs, rhs };
                match row.coeffs[k].signum() {
                    1 => pos.push((row, history)),
                    -1 => neg.push((row, history)),
                    _ => insert(&mut next, row, history),
                }
            }
            for (p, hp) in &pos {
                for (q, hq) in &neg {
                    let history = hp.merge(hq);
                    let (a, b) = (p.coeffs[k], -q.coeffs[k]);
                    let combine = |x: i128, y: i128| -> Result<i128> {
                        x.checked_mul(b)
                            .and_then(|u| y.checked_mul(a).and_then(|v| u.checked_add(v)))
                            .ok_or(Error::Overflow)
                    };
                    let coeffs = p
                        .coeffs
                        .iter()
                        .zip(&q.coeffs)
                        .map(|(&x, &y)| combine(x, y))
                        .collect::<Result<Vec<_>>>()?;
                    let rhs = combine(p.rhs, q.rhs)?;
                    match normalise(coeffs, rhs) {
                        Some(row) if history.is_redundant(&row) => {}
                        Some(row) => insert(&mut next, row, history),
                        None => infeasible |= rhs > 0,
                    }
                }
            }
            levels[k] = pos.into_iter().chain(neg).map(|(r, _)| r).collect();
            current = next;
        }
        let projection = Self { levels, infeasible };
        if !projection.infeasible {
            for (k, rows) in projection.levels.iter().enumerate() {
                let has = |s: i128| rows.iter().any(|r| r.coeffs[k].signum() == s);
                if !has(1) || !has(-1) {
                    return Err(Error::Unbounded(system.variables[k].clone()));
                }
            }
        }
        Ok(projection)
    }

    /// Integer range of variable `k` given the values of `x_0..x_{k−1}`.
    fn range(&self, k: usize, prefix: &[i128]) -> (i128, i128) {
        let mut lo = i128::MIN;
        let mut hi = i128::MAX;
        for row in &self.levels[k] {
            let rest: i128 = row.rhs
                - row.coeffs[..k]
                    .iter()
                    .zip(prefix)
                    .map(|(a, x)| a * x)
                    .sum::<i128>();
            let a = row.coeffs[k];
            if a > 0 {
                lo = lo.max(Integer::div_ceil(&rest, &a));
            } else {
                hi = hi.min(Integer::div_floor(&rest, &a));
            }
        }
        (lo, hi)
    }

    pub(crate) fn count(&self) -> Result<u128> {
        if self.infeasible {
            return Ok(0);
        }
        if self.levels.is_empty() {
            return Ok(1);
        }
        let mut prefix = alloc::vec![0i128; self.levels.len()];
        self.count_from(0, &mut prefix)
    }

    fn count_from(&self, k: usize, prefix: &mut [i128]) -> Result<u128> {
        let (lo, hi) = self.range(k, &prefix[..k]);
        if lo > hi {
            return Ok(0);
        }
        if k + 1 == self.levels.len() {
            return Ok((hi - lo + 1) as u128);
        }
        let mut total: u128 = 0;
        for x in lo..=hi {
            prefix[k] = x;
            total = total
                .checked_add(self.count_from(k + 1, prefix)?)
                .ok_or(Error::Overflow)?;
        }
        Ok(total)
    }

    pub(crate) fn for_each(&self, f: &mut dyn FnMut(&[i64])) -> Result<()> {
        if self.infeasible {
            return Ok(());
        }
        let mut prefix = alloc::vec![0i128; self.levels.len()];
        let mut point = alloc::vec![0i64; self.levels.len()];
        self.visit(0, &mut prefix, &mut point, f)
    }

    fn visit(
        &self,
        k: usize,
        prefix: &mut [i128],
        point: &mut [i64],
        f: &mut dyn FnMut(&[i64]),
    ) -> Result<()> {
        if k == self.levels.len() {
            f(point);
            return Ok(());
        }
        let (lo, hi) = self.range(k, &prefix[..k]);
        for x in lo..=hi {
            prefix[k] = x;
            point[k] = i64::try_from(x).map_err(|_| Error::Overflow)?;
            self.visit(k + 1, prefix, point, f)?;
        }
        Ok(())
    }
}

/// Number of integer points satisfying every inequality. Errors if some
/// variable is unbounded on a non-empty system; an infeasible system
/// counts 0.
pub fn count_integer_points(system: &InequalitySystem) -> Result<u128> {
    Projection::new(system)?.count()
}

/// Calls `f` on every integer point, in lexicographic order.
pub fn for_each_integer_point(system: &InequalitySystem, mut f: impl FnMut(&[i64])) -> Result<()> {
    Projection::new(system)?.for_each(&mut f)
}

pub fn integer_points(system: &InequalitySystem) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for_each_integer_point(system, |p| out.push(p.to_vec()))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn system(vars: &[&str], rows: &[(&[i64], i64)]) -> InequalitySystem {
        let mut s = InequalitySystem::new(vars.iter().map(|v| v.to_string()).collect());
        for (c, k) in rows {
            s.push(Inequality::from_integers(c, *k)).unwrap();
        }
        s
    }

    fn planar() -> InequalitySystem {
        // 1 ≤ x ≤ 4, 6 ≤ y, 8 ≤ x+y ≤ 14, 4 ≤ y−x ≤ 8
        system(
            &["x", "y"],
            &[
                (&[1, 0], 1),
                (&[-1, 0], -4),
                (&[0, 1], 6),
                (&[1, 1], 8),
                (&[-1, -1], -14),
                (&[-1, 1], 4),
                (&[1, -1], -8),
            ],
        )
    }

    #[test]
    fn planar_example_has_sixteen_points() {
        let s = planar();
        assert_eq!(count_integer_points(&s).unwrap(), 16);
        // both nested-sum orders written out by hand
        let by_x: i64 = (1..=4)
            .map(|x: i64| {
                let lo = 6.max(x + 4).max(8 - x);
                let hi = (x + 8).min(14 - x);
                (hi - lo + 1).max(0)
            })
            .sum();
        let by_y: i64 = (6..=11)
            .map(|y: i64| {
                let lo = 1.max(y - 8).max(8 - y);
                let hi = 4.min(y - 4).min(14 - y);
                (hi - lo + 1).max(0)
            })
            .sum();
        assert_eq!((by_x, by_y), (16, 16));
        let pts = integer_points(&s).unwrap();
        assert_eq!(pts.len(), 16);
        assert!(pts.iter().all(|p| s.contains(p)));
    }

    #[test]
    fn dropping_upper_bounds() {
        let mut s = planar();
        // without x ≤ 4 the system is still bounded through x + y ≤ 14
        s.inequalities.remove(1);
        assert_eq!(count_integer_points(&s).unwrap(), 17);
        s.inequalities.remove(3);
        assert!(matches!(count_integer_points(&s), Err(Error::Unbounded(_))));
    }

    #[test]
    fn single_point() {
        let s = system(&["x"], &[(&[1], 0), (&[-1], 0)]);
        assert_eq!(count_integer_points(&s).unwrap(), 1);
    }

    #[test]
    fn empty_and_constant_systems() {
        let s = system(&["x"], &[(&[1], 1), (&[-1], 0)]);
        assert_eq!(count_integer_points(&s).unwrap(), 0);
        let s = system(&[], &[(&[], -3)]);
        assert_eq!(count_integer_points(&s).unwrap(), 1);
        let s = system(&[], &[(&[], 2)]);
        assert_eq!(count_integer_points(&s).unwrap(), 0);
        // infeasible wins over unboundedness
        let s = system(&["x", "y"], &[(&[1, 0], 1), (&[-1, 0], -0), (&[0, 1], 0)]);
        assert_eq!(count_integer_points(&s).unwrap(), 0);
    }

    #[test]
    fn rational_coefficients() {
        // x/2 ≥ 1/3 and x ≤ 5/2  →  x ∈ {1, 2}
        let mut s = InequalitySystem::new(vec!["x".to_string()]);
        s.push(Inequality::new(
            vec![Rational::new(1, 2)],
            Rational::new(1, 3),
        ))
        .unwrap();
        s.push(Inequality::new(
            vec![Rational::from_integer(-1)],
            Rational::new(-5, 2),
        ))
        .unwrap();
        assert_eq!(integer_points(&s).unwrap(), vec![vec![1], vec![2]]);
    }

    #[test]
    fn coefficient_count_checked() {
        let mut s = InequalitySystem::new(vec!["x".to_string()]);
        assert_eq!(
            s.push(Inequality::from_integers(&[1, 2], 0)),
            Err(Error::CoefficientCount {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn text_format() {
        let mut s = InequalitySystem::new(vec!["x".to_string(), "y".to_string()]);
        s.push(Inequality::new(
            vec![Rational::new(-3, 2), Rational::from_integer(1)],
            Rational::from_integer(4),
        ))
        .unwrap();
        s.push(Inequality::from_integers(&[0, 0], -1)).unwrap();
        assert_eq!(s.to_string(), "-3/2*x + 1*y >= 4\n0 >= -1");
    }

    proptest! {
        // brute force over a box that contains the polytope
        #[test]
        fn matches_brute_force(
            rows in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 3), -6i64..=6), 0..8)
        ) {
            let mut s = system(
                &["a", "b", "c"],
                &[(&[1, 0, 0], -4), (&[-1, 0, 0], -4), (&[0, 1, 0], -4), (&[0, -1, 0], -4), (&[0, 0, 1], -4), (&[0, 0, -1], -4)],
            );
            for (c, k) in &rows {
                s.push(Inequality::from_integers(c, *k)).unwrap();
            }
            let mut brute = 0u128;
            for a in -4..=4 {
                for b in -4..=4 {
                    for c in -4..=4 {
                        if s.contains(&[a, b, c]) {
                            brute += 1;
                        }
                    }
                }
            }
            prop_assert_eq!(count_integer_points(&s).unwrap(), brute);
            let pts = integer_points(&s).unwrap();
            prop_assert_eq!(pts.len() as u128, brute);
            prop_assert!(pts.iter().all(|p| s.contains(p)));
        }
    }
}
