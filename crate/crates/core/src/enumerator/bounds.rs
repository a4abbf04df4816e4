//! The nested-sum bounds over the virtual-triangle coefficients.
//!
//! Summation order is `d_{1,1}`; `d_{2,1}, d_{1,2}`; …;
//! `d_{r−2,1}, …, d_{1,r−2}`; `η_{r−1}, …, η_1`. Each variable ranges over
//! the max of its lower expressions to the min of its upper expressions,
//! which only involve the weights and variables summed further out.
//! Coefficients `d_{i,j}` outside `i, j ≥ 1, i + j ≤ r − 1` read as zero;
//! this is also how the Kronecker-delta factors of the formula drop terms
//! at the edges.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::triangle::HexagonLabel;
use crate::weights::CouplingQuery;
use crate::{Error, Result};

/// A weight-dependent constant appearing in a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    /// `λ_i`
    Lambda(usize),
    /// `μ_i`
    Mu(usize),
    /// `n_i`
    SmallN(usize),
    /// `N_i`
    BigN(usize),
    /// `N'_i`
    BigNPrime(usize),
}

impl Quantity {
    fn value(self, q: &CouplingQuery) -> i64 {
        match self {
            Quantity::Lambda(i) => q.lambda.label(i),
            Quantity::Mu(i) => q.mu.label(i),
            Quantity::SmallN(i) => q.n(i),
            Quantity::BigN(i) => q.big_n(i),
            Quantity::BigNPrime(i) => q.big_n_prime(i),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Lambda(i) => write!(f, "lambda_{i}"),
            Quantity::Mu(i) => write!(f, "mu_{i}"),
            Quantity::SmallN(i) => write!(f, "n_{i}"),
            Quantity::BigN(i) => write!(f, "N_{i}"),
            Quantity::BigNPrime(i) => write!(f, "N'_{i}"),
        }
    }
}

/// `±quantity + Σ coef·variable`; the empty expression is `0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BoundExpr {
    pub quantity: Option<(i64, Quantity)>,
    pub terms: Vec<(i64, HexagonLabel)>,
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut put =
            |f: &mut fmt::Formatter<'_>, c: i64, name: &dyn fmt::Display| -> fmt::Result {
                match (first, c < 0) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                if c.abs() != 1 {
                    write!(f, "{}*", c.abs())?;
                }
                first = false;
                write!(f, "{name}")
            };
        if let Some((c, q)) = self.quantity {
            put(f, c, &q)?;
        }
        for (c, v) in &self.terms {
            put(f, *c, v)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableBounds {
    pub variable: HexagonLabel,
    pub lower: Vec<BoundExpr>,
    pub upper: Vec<BoundExpr>,
}

/// All bounds of the nested sum for one rank, in summation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummationBounds {
    rank: usize,
    variables: Vec<VariableBounds>,
}

struct Builder {
    rank: usize,
}

impl Builder {
    fn has_d(&self, i: isize, j: isize) -> bool {
        i >= 1 && j >= 1 && i + j < self.rank as isize
    }

    /// Expression from a quantity and `(coef, variable)` terms; `d`
    /// outside its index range is dropped.
    fn expr(&self, quantity: Option<(i64, Quantity)>, terms: &[(i64, Var)]) -> BoundExpr {
        let terms = terms
            .iter()
            .filter_map(|&(c, v)| match v {
                Var::D(i, j) if self.has_d(i, j) => {
                    Some((c, HexagonLabel::D(i as usize, j as usize)))
                }
                Var::D(..) => None,
                Var::Eta(l) => Some((c, HexagonLabel::Eta(l))),
            })
            .collect();
        BoundExpr { quantity, terms }
    }
}

#[derive(Clone, Copy)]
enum Var {
    D(isize, isize),
    Eta(usize),
}

use Quantity::{BigN, BigNPrime, Lambda, Mu, SmallN};

const fn plus(q: Quantity) -> Option<(i64, Quantity)> {
    Some((1, q))
}

const fn minus(q: Quantity) -> Option<(i64, Quantity)> {
    Some((-1, q))
}

fn d(i: usize, j: usize) -> Var {
    Var::D(i as isize, j as isize)
}

fn di(i: isize, j: isize) -> Var {
    Var::D(i, j)
}

impl SummationBounds {
    /// Bounds for `su(r+1)`, `r ≥ 2`. Rank 2 has the single variable `η_1`
    /// bounded by the nine entries of the triangle directly.
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::IndexOutOfRange {
                index: rank,
                max: 0,
            });
        }
        let b = Builder { rank };
        let r = rank;
        let mut vars = Vec::new();
        if r == 2 {
            vars.push(VariableBounds {
                variable: HexagonLabel::Eta(1),
                lower: vec![
                    b.expr(None, &[]),
                    b.expr(minus(BigNPrime(2)), &[]),
                    b.expr(minus(BigN(1)), &[]),
                ],
                upper: vec![
                    b.expr(plus(SmallN(1)), &[]),
                    b.expr(plus(SmallN(2)), &[]),
                    b.expr(plus(BigN(2)), &[]),
                    b.expr(plus(BigNPrime(1)), &[]),
                    b.expr(plus(Lambda(2)), &[]),
                    b.expr(plus(Mu(1)), &[]),
                ],
            });
            return Ok(Self {
                rank,
                variables: vars,
            });
        }
        for s in 1..=r - 2 {
            for i in (1..=s).rev() {
                let j = s + 1 - i;
                let (ii, jj) = (i as isize, j as isize);
                let (lower, upper) = if i == 1 && j == 1 {
                    (
                        vec![b.expr(None, &[])],
                        vec![b.expr(plus(Mu(1)), &[]), b.expr(plus(Lambda(r)), &[])],
                    )
                } else if j == 1 {
                    (
                        vec![b.expr(None, &[(1, d(i - 1, 1))])],
                        vec![b.expr(plus(Lambda(r - i + 1)), &[(1, d(i - 1, 1))])],
                    )
                } else if i == 1 {
                    (
                        vec![
                            b.expr(None, &[(1, d(1, j - 1))]),
                            b.expr(
                                minus(Mu(j - 1)),
                                &[(1, d(1, j - 1)), (1, d(2, j - 1)), (-1, di(2, jj - 2))],
                            ),
                        ],
                        vec![
                            b.expr(plus(Mu(j)), &[(1, d(1, j - 1))]),
                            b.expr(plus(Lambda(r)), &[(-1, d(1, j - 1)), (1, d(2, j - 1))]),
                        ],
                    )
                } else {
                    (
                        vec![
                            b.expr(
                                None,
                                &[(1, d(i, j - 1)), (1, d(i - 1, j)), (-1, d(i - 1, j - 1))],
                            ),
                            b.expr(
                                minus(Mu(j - 1)),
                                &[
                                    (1, d(i, j - 1)),
                                    (1, d(i + 1, j - 1)),
                                    (-1, di(ii + 1, jj - 2)),
                                ],
                            ),
                        ],
                        vec![b.expr(
                            plus(Lambda(r - i + 1)),
                            &[(-1, d(i, j - 1)), (1, d(i + 1, j - 1)), (1, d(i - 1, j))],
                        )],
                    )
                };
                vars.push(VariableBounds {
                    variable: HexagonLabel::D(i, j),
                    lower,
                    upper,
                });
            }
        }
        // η_{r−1}
        vars.push(VariableBounds {
            variable: HexagonLabel::Eta(r - 1),
            lower: vec![
                b.expr(None, &[(1, d(r - 2, 1))]),
                b.expr(minus(BigNPrime(r)), &[]),
            ],
            upper: vec![
                b.expr(plus(Lambda(2)), &[(1, d(r - 2, 1))]),
                b.expr(plus(SmallN(r)), &[]),
                b.expr(plus(BigN(r)), &[]),
            ],
        });
        for l in (2..=r - 2).rev() {
            let (li, ri) = (l as isize, r as isize);
            vars.push(VariableBounds {
                variable: HexagonLabel::Eta(l),
                lower: vec![
                    b.expr(
                        None,
                        &[
                            (1, di(li - 1, ri - li)),
                            (-1, di(li - 1, ri - li - 1)),
                            (1, di(li, ri - li - 1)),
                        ],
                    ),
                    b.expr(minus(BigNPrime(l + 1)), &[(1, Var::Eta(l + 1))]),
                    b.expr(
                        minus(Mu(r - l - 1)),
                        &[
                            (1, Var::Eta(l + 1)),
                            (-1, di(li + 1, ri - li - 2)),
                            (1, di(li, ri - li - 1)),
                        ],
                    ),
                ],
                upper: vec![
                    b.expr(
                        plus(Lambda(r - l + 1)),
                        &[
                            (-1, di(li, ri - li - 1)),
                            (1, di(li - 1, ri - li)),
                            (1, Var::Eta(l + 1)),
                        ],
                    ),
                    b.expr(
                        plus(SmallN(l + 1)),
                        &[(1, di(li, ri - li - 1)), (-1, Var::Eta(l + 1))],
                    ),
                    b.expr(plus(BigN(l + 1)), &[(1, Var::Eta(l + 1))]),
                ],
            });
        }
        // η_1
        let ri = r as isize;
        vars.push(VariableBounds {
            variable: HexagonLabel::Eta(1),
            lower: vec![
                b.expr(minus(BigN(1)), &[]),
                b.expr(None, &[(1, di(1, ri - 2))]),
                b.expr(minus(BigNPrime(2)), &[(1, Var::Eta(2))]),
                b.expr(
                    minus(Mu(r - 2)),
                    &[(1, di(1, ri - 2)), (-1, di(2, ri - 3)), (1, Var::Eta(2))],
                ),
            ],
            upper: vec![
                b.expr(plus(SmallN(1)), &[]),
                b.expr(plus(Mu(r - 1)), &[(1, di(1, ri - 2))]),
                b.expr(plus(Lambda(r)), &[(-1, di(1, ri - 2)), (1, Var::Eta(2))]),
                b.expr(plus(SmallN(2)), &[(1, di(1, ri - 2)), (-1, Var::Eta(2))]),
                b.expr(plus(BigNPrime(1)), &[]),
                b.expr(plus(BigN(2)), &[(1, Var::Eta(2))]),
            ],
        });
        Ok(Self {
            rank,
            variables: vars,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Variables with their bounds, outermost first.
    pub fn variables(&self) -> &[VariableBounds] {
        &self.variables
    }

    pub fn order(&self) -> Vec<HexagonLabel> {
        self.variables.iter().map(|v| v.variable).collect()
    }

    /// Checks that every bound refers only to variables summed further out.
    pub fn check_order(&self) -> Result<()> {
        for (pos, v) in self.variables.iter().enumerate() {
            for e in v.lower.iter().chain(&v.upper) {
                for (_, t) in &e.terms {
                    if !self.variables[..pos].iter().any(|o| o.variable == *t) {
                        return Err(Error::SummationOrder {
                            variable: v.variable.to_string(),
                            unbound: t.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn compile(&self, q: &CouplingQuery) -> CompiledBounds {
        let index = |label: &HexagonLabel| {
            self.variables
                .iter()
                .position(|v| v.variable == *label)
                .expect("bound refers to a summation variable")
        };
        let compile = |e: &BoundExpr| CompiledExpr {
            constant: e.quantity.map_or(0, |(c, qu)| c * qu.value(q)),
            terms: e.terms.iter().map(|(c, v)| (*c, index(v))).collect(),
        };
        CompiledBounds {
            levels: self
                .variables
                .iter()
                .map(|v| {
                    (
                        v.lower.iter().map(compile).collect(),
                        v.upper.iter().map(compile).collect(),
                    )
                })
                .collect(),
            names: self.variables.iter().map(|v| v.variable).collect(),
        }
    }
}

impl fmt::Display for SummationBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, es: &[BoundExpr]| -> fmt::Result {
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            Ok(())
        };
        for (n, v) in self.variables.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "max{{")?;
            list(f, &v.lower)?;
            write!(f, "}} <= {} <= min{{", v.variable)?;
            list(f, &v.upper)?;
            write!(f, "}}")?;
        }
        Ok(())
    }
}

pub(crate) struct CompiledExpr {
    constant: i64,
    terms: Vec<(i64, usize)>,
}

impl CompiledExpr {
    fn eval(&self, values: &[i64], bound: Option<&[bool]>) -> core::result::Result<i64, usize> {
        let mut v = self.constant;
        for &(c, idx) in &self.terms {
            if let Some(bound) = bound {
                if !bound[idx] {
                    return Err(idx);
                }
            }
            v += c * values[idx];
        }
        Ok(v)
    }
}

pub(crate) struct CompiledBounds {
    levels: Vec<(Vec<CompiledExpr>, Vec<CompiledExpr>)>,
    names: Vec<HexagonLabel>,
}

impl CompiledBounds {
    /// Evaluates the nested sum. With `check_order`, every expression
    /// verifies that the variables it reads are already bound.
    pub(crate) fn sum(&self, check_order: bool) -> Result<u128> {
        let n = self.levels.len();
        let mut values = vec![0i64; n];
        let mut bound = vec![false; n];
        self.sum_from(0, &mut values, &mut bound, check_order)
    }

    fn range(&self, k: usize, values: &[i64], bound: &[bool], check: bool) -> Result<(i64, i64)> {
        let guard = check.then_some(bound);
        let err = |idx: usize| Error::SummationOrder {
            variable: self.names[k].to_string(),
            unbound: self.names[idx].to_string(),
        };
        let (lower, upper) = &self.levels[k];
        let mut lo = i64::MIN;
        for e in lower {
            lo = lo.max(e.eval(values, guard).map_err(err)?);
        }
        let mut hi = i64::MAX;
        for e in upper {
            hi = hi.min(e.eval(values, guard).map_err(err)?);
        }
        Ok((lo, hi))
    }

    fn sum_from(
        &self,
        k: usize,
        values: &mut [i64],
        bound: &mut [bool],
        check: bool,
    ) -> Result<u128> {
        let (lo, hi) = self.range(k, values, bound, check)?;
        if lo > hi {
            return Ok(0);
        }
        if k + 1 == self.levels.len() {
            return Ok((hi - lo + 1) as u128);
        }
        let mut total: u128 = 0;
        bound[k] = true;
        for x in lo..=hi {
            values[k] = x;
            total = total
                .checked_add(self.sum_from(k + 1, values, bound, check)?)
                .ok_or(Error::Overflow)?;
        }
        bound[k] = false;
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su4_bounds_read_like_the_triple_sum() {
        let b = SummationBounds::new(3).unwrap();
        assert_eq!(
            b.to_string(),
            "max{0} <= d_1_1 <= min{mu_1, lambda_3}\n\
             max{d_1_1, -N'_3} <= eta_2 <= min{lambda_2 + d_1_1, n_3, N_3}\n\
             max{-N_1, d_1_1, -N'_2 + eta_2, -mu_1 + d_1_1 + eta_2} <= eta_1 <= \
             min{n_1, mu_2 + d_1_1, lambda_3 - d_1_1 + eta_2, n_2 + d_1_1 - eta_2, N'_1, N_2 + eta_2}"
        );
    }

    #[test]
    fn orders_are_legal() {
        for r in 2..=9 {
            let b = SummationBounds::new(r).unwrap();
            b.check_order().unwrap();
            assert_eq!(b.variables().len(), r * (r - 1) / 2);
        }
    }

    #[test]
    fn one_bound_per_entry() {
        // every triangle entry contributes exactly one bound
        for r in 2..=9 {
            let b = SummationBounds::new(r).unwrap();
            let total: usize = b
                .variables()
                .iter()
                .map(|v| v.lower.len() + v.upper.len())
                .sum();
            assert_eq!(total, 3 * r * (r + 1) / 2, "rank {r}");
        }
    }

    #[test]
    fn order_violation_is_reported() {
        let mut b = SummationBounds::new(3).unwrap();
        b.variables.swap(1, 2);
        assert!(matches!(b.check_order(), Err(Error::SummationOrder { .. })));
    }
}
