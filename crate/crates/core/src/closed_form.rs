//! Closed formulas for `su(3)` and `su(4)`.
//!
//! Both the summation limits and the non-vanishing inequality systems are
//! kept as data: every bound and inequality is parsed from its textual form
//! (`lambda^1` is a dual label, `lambda_1` an ordinary one), so the tables
//! can be printed, audited and reused for diagnostics.
//!
//! Dual labels carry a factor `1/N`. All comparisons are done on values
//! multiplied by `N`, where every symbol is an integer.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::triangle::HexagonLabel;
use crate::weights::{check_ranks, integrality_ok, ScaledDualLabels};
use crate::{Error, Result, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Which {
    Lambda,
    Mu,
    Nu,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Lambda => "lambda",
            Which::Mu => "mu",
            Which::Nu => "nu",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Dual label `λ^i`.
    Dual(Which, usize),
    /// Dynkin label `λ_i`.
    Label(Which, usize),
    /// The threshold `K`.
    K,
    /// A summation variable.
    Coefficient(HexagonLabel),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Dual(w, i) => write!(f, "{}^{i}", w.name()),
            Symbol::Label(w, i) => write!(f, "{}_{i}", w.name()),
            Symbol::K => f.write_str("K"),
            Symbol::Coefficient(HexagonLabel::D(1, 1)) => f.write_str("d"),
            Symbol::Coefficient(l) => write!(f, "{l}"),
        }
    }
}

/// `Σ c·symbol + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<(i64, Symbol)>,
    pub constant: i64,
}

impl Expr {
    /// Parses `-lambda^1 + 2*mu_2 - nu^3 + eta_2 + K + 1`. Panics on
    /// malformed input; only used for the built-in tables.
    fn parse(text: &str) -> Self {
        let mut terms = Vec::new();
        let mut constant = 0;
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'-' => -1,
                _ => 1,
            };
            rest = rest.trim_start_matches(['+', '-']);
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (token, tail) = rest.split_at(end);
            rest = tail;
            let (coeff, name) = match token.split_once('*') {
                Some((c, n)) => (c.parse::<i64>().expect("coefficient"), n),
                None => (1, token),
            };
            if let Ok(c) = name.parse::<i64>() {
                constant += sign * coeff * c;
                continue;
            }
            terms.push((sign * coeff, parse_symbol(name)));
        }
        Self { terms, constant }
    }
}

fn parse_symbol(name: &str) -> Symbol {
    match name {
        "K" => return Symbol::K,
        "d" => return Symbol::Coefficient(HexagonLabel::D(1, 1)),
        "eta" => return Symbol::Coefficient(HexagonLabel::Eta(1)),
        _ => {}
    }
    let (head, index, dual) = match (name.split_once('^'), name.split_once('_')) {
        (Some((h, i)), _) => (h, i, true),
        (None, Some((h, i))) => (h, i, false),
        _ => panic!("unknown symbol {name}"),
    };
    let index: usize = index.parse().expect("index");
    let which = match head {
        "lambda" => Which::Lambda,
        "mu" => Which::Mu,
        "nu" => Which::Nu,
        "eta" => return Symbol::Coefficient(HexagonLabel::Eta(index)),
        _ => panic!("unknown symbol {name}"),
    };
    if dual {
        Symbol::Dual(which, index)
    } else {
        Symbol::Label(which, index)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(c, s) in &self.terms {
            let sign = match (first, c < 0) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            f.write_str(sign)?;
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant != 0 {
            let sign = if self.constant < 0 { '-' } else { '+' };
            write!(f, " {sign} {}", self.constant.abs())
        } else {
            Ok(())
        }
    }
}

/// Values of every symbol for one query, scaled by `N`.
#[derive(Clone, Debug)]
pub struct Valuation {
    n: i128,
    labels: [Vec<i64>; 3],
    duals: [ScaledDualLabels; 3],
    k: i128,
    coefficients: Vec<(HexagonLabel, i128)>,
}

impl Valuation {
    pub fn new(lambda: &Weight, mu: &Weight, nu: &Weight, k: u64) -> Result<Self> {
        let r = check_ranks(lambda, mu, nu)?;
        let ws = [lambda, mu, nu];
        Ok(Self {
            n: r as i128 + 1,
            labels: ws.map(|w| w.labels().to_vec()),
            duals: ws.map(|w| w.dual_labels()),
            k: k as i128,
            coefficients: Vec::new(),
        })
    }

    fn set(&mut self, label: HexagonLabel, value: i128) {
        match self.coefficients.iter_mut().find(|(l, _)| *l == label) {
            Some(slot) => slot.1 = value,
            None => self.coefficients.push((label, value)),
        }
    }

    fn symbol(&self, s: Symbol) -> i128 {
        let slot = |w: Which| w as usize;
        match s {
            Symbol::Dual(w, i) => self.duals[slot(w)].get(i) as i128,
            Symbol::Label(w, i) => self.n * self.labels[slot(w)][i - 1] as i128,
            Symbol::K => self.n * self.k,
            Symbol::Coefficient(l) => {
                let v = self.coefficients.iter().find(|(x, _)| *x == l);
                self.n * v.expect("summation variable bound before use").1
            }
        }
    }

    /// `N` times the value of `e`.
    pub fn scaled(&self, e: &Expr) -> i128 {
        let body: i128 = e
            .terms
            .iter()
            .map(|&(c, s)| c as i128 * self.symbol(s))
            .sum();
        body + self.n * e.constant as i128
    }

    pub fn value(&self, e: &Expr) -> Ratio<i128> {
        Ratio::new(self.scaled(e), self.n)
    }
}

/// `lower ≤ upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelInequality {
    pub lower: Expr,
    pub upper: Expr,
}

impl LabelInequality {
    fn parse(lower: &str, upper: &str) -> Self {
        Self {
            lower: Expr::parse(lower),
            upper: Expr::parse(upper),
        }
    }

    pub fn holds(&self, v: &Valuation) -> bool {
        v.scaled(&self.lower) <= v.scaled(&self.upper)
    }
}

impl fmt::Display for LabelInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lower, self.upper)
    }
}

/// A failed inequality with both sides evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub inequality: LabelInequality,
    pub lower: Ratio<i128>,
    pub upper: Ratio<i128>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "#{}: {}  ({} > {})",
            self.index + 1,
            self.inequality,
            self.lower,
            self.upper
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSystem {
    rank: usize,
    inequalities: Vec<LabelInequality>,
}

impl LabelSystem {
    fn from_table(rank: usize, table: &[(&str, &str)]) -> Self {
        let inequalities = table
            .iter()
            .map(|(l, u)| LabelInequality::parse(l, u))
            .collect();
        Self { rank, inequalities }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn inequalities(&self) -> &[LabelInequality] {
        &self.inequalities
    }

    fn valuation(&self, lambda: &Weight, mu: &Weight, nu: &Weight, k: u64) -> Result<Valuation> {
        let r = check_ranks(lambda, mu, nu)?;
        if r != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: r,
            });
        }
        Valuation::new(lambda, mu, nu, k)
    }

    /// Every inequality holds. Integrality is not part of the system.
    pub fn holds(&self, lambda: &Weight, mu: &Weight, nu: &Weight, k: u64) -> Result<bool> {
        let v = self.valuation(lambda, mu, nu, k)?;
        Ok(self.inequalities.iter().all(|q| q.holds(&v)))
    }

    pub fn violations(
        &self,
        lambda: &Weight,
        mu: &Weight,
        nu: &Weight,
        k: u64,
    ) -> Result<Vec<Violation>> {
        let v = self.valuation(lambda, mu, nu, k)?;
        Ok(self
            .inequalities
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.holds(&v))
            .map(|(index, q)| Violation {
                index,
                inequality: q.clone(),
                lower: v.value(&q.lower),
                upper: v.value(&q.upper),
            })
            .collect())
    }
}

impl fmt::Display for LabelSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in &self.inequalities {
            writeln!(f, "{q}")?;
        }
        Ok(())
    }
}

/// One summation `Σ_{max lower}^{min upper}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumLevel {
    pub variable: HexagonLabel,
    pub lower: Vec<Expr>,
    pub upper: Vec<Expr>,
}

/// A nested sum of `1`, outermost level first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedSum {
    rank: usize,
    levels: Vec<SumLevel>,
}

impl NestedSum {
    fn from_table(rank: usize, table: &[(&str, &[&str], &[&str])]) -> Self {
        let levels = table
            .iter()
            .map(|(var, lo, hi)| {
                let Symbol::Coefficient(variable) = parse_symbol(var) else {
                    panic!("{var} is not a summation variable")
                };
                SumLevel {
                    variable,
                    lower: lo.iter().map(|e| Expr::parse(e)).collect(),
                    upper: hi.iter().map(|e| Expr::parse(e)).collect(),
                }
            })
            .collect();
        Self { rank, levels }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn levels(&self) -> &[SumLevel] {
        &self.levels
    }

    /// Evaluates the sum; 0 when integrality fails.
    pub fn evaluate(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u128> {
        let r = check_ranks(lambda, mu, nu)?;
        if r != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: r,
            });
        }
        if !integrality_ok(lambda, mu, nu) {
            return Ok(0);
        }
        let mut v = Valuation::new(lambda, mu, nu, 0)?;
        Ok(self.level(0, &mut v))
    }

    fn level(&self, depth: usize, v: &mut Valuation) -> u128 {
        let level = &self.levels[depth];
        let lo = level
            .lower
            .iter()
            .map(|e| v.scaled(e))
            .max()
            .expect("lower bound");
        let hi = level
            .upper
            .iter()
            .map(|e| v.scaled(e))
            .min()
            .expect("upper bound");
        let (lo, hi) = (Integer::div_ceil(&lo, &v.n), Integer::div_floor(&hi, &v.n));
        if lo > hi {
            return 0;
        }
        if depth + 1 == self.levels.len() {
            return (hi - lo + 1) as u128;
        }
        (lo..=hi)
            .map(|x| {
                v.set(level.variable, x);
                self.level(depth + 1, v)
            })
            .sum()
    }
}

impl fmt::Display for NestedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, es: &[Expr]| -> fmt::Result {
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            Ok(())
        };
        for level in &self.levels {
            f.write_str("max{")?;
            list(f, &level.lower)?;
            write!(f, "}} <= {} <= min{{", Symbol::Coefficient(level.variable))?;
            list(f, &level.upper)?;
            f.write_str("}\n")?;
        }
        Ok(())
    }
}

const SU3_SUM: &[(&str, &[&str], &[&str])] = &[(
    "eta",
    &[
        "0",
        "lambda^2 + mu^1 - mu^2 - nu^1",
        "-lambda^1 + lambda^2 + mu^1 - nu^2",
    ],
    &[
        "mu_1",
        "lambda_2",
        "lambda^2 + mu^2 - nu^1",
        "lambda^1 + mu^1 - nu^2",
        "-lambda^1 + lambda^2 + mu^1 - nu^1 + nu^2",
        "lambda^2 + mu^1 - mu^2 + nu^1 - nu^2",
    ],
)];

const SU4_SUM: &[(&str, &[&str], &[&str])] = &[
    ("d", &["0"], &["mu_1", "lambda_3"]),
    (
        "eta_2",
        &["d", "-lambda^1 + lambda^2 + mu^1 - nu^3"],
        &[
            "lambda_2 + d",
            "lambda^1 + mu^1 - nu^3",
            "-lambda^1 + lambda^2 + mu^1 - nu^2 + nu^3",
        ],
    ),
    (
        "eta_1",
        &[
            "lambda^3 + mu^2 - mu^3 - nu^1",
            "d",
            "-lambda^2 + lambda^3 - mu^1 + mu^2 - nu^2 + nu^3 + eta_2",
            "-mu_1 + d + eta_2",
        ],
        &[
            "lambda^3 + mu^3 - nu^1",
            "mu_2 + d",
            "lambda_3 - d + eta_2",
            "lambda^2 + mu^2 - nu^2 + d - eta_2",
            "lambda^3 + mu^2 - mu^3 + nu^1 - nu^2",
            "-lambda^2 + lambda^3 - mu^1 + mu^2 - nu^1 + nu^2 + eta_2",
        ],
    ),
];

const SU3_NONVANISHING: &[(&str, &str)] = &[
    ("0", "lambda_1"),
    ("0", "lambda_2"),
    ("0", "mu_1"),
    ("0", "mu_2"),
    ("0", "nu_1"),
    ("0", "nu_2"),
    ("lambda^1 - lambda^2 + mu^1 - mu^2", "nu^1"),
    ("-lambda^1 + mu^2", "nu^1"),
    ("lambda^2 - mu^1", "nu^1"),
    ("nu^1", "lambda^2 + mu^2"),
    ("-lambda^1 + lambda^2 - mu^1 + mu^2", "nu^2"),
    ("lambda^1 - mu^2", "nu^2"),
    ("-lambda^2 + mu^1", "nu^2"),
    ("nu^2", "lambda^1 + mu^1"),
    ("-lambda^2 - mu^1 + mu^2", "nu^1 - nu^2"),
    ("-lambda^1 + lambda^2 - mu^2", "nu^1 - nu^2"),
    ("nu^1 - nu^2", "lambda^1 - mu^1 + mu^2"),
    ("nu^1 - nu^2", "-lambda^1 + lambda^2 + mu^1"),
];

const SU3_THRESHOLD: &[(&str, &str)] = &[
    ("K", "lambda_1"),
    ("K", "lambda_2"),
    ("K", "mu_1"),
    ("K", "mu_2"),
    ("K", "nu_1"),
    ("K", "nu_2"),
    ("lambda^1 - lambda^2 + mu^1 - mu^2 + K", "nu^1"),
    ("-lambda^1 + mu^2 + K", "nu^1"),
    ("lambda^2 - mu^1 + K", "nu^1"),
    ("nu^1", "lambda^2 + mu^2 - K"),
    ("-lambda^1 + lambda^2 - mu^1 + mu^2 + K", "nu^2"),
    ("lambda^1 - mu^2 + K", "nu^2"),
    ("-lambda^2 + mu^1 + K", "nu^2"),
    ("nu^2", "lambda^1 + mu^1 - K"),
    ("-lambda^2 - mu^1 + mu^2 + K", "nu^1 - nu^2"),
    ("-lambda^1 + lambda^2 - mu^2 + K", "nu^1 - nu^2"),
    ("nu^1 - nu^2", "lambda^1 - mu^1 + mu^2 - K"),
    ("nu^1 - nu^2", "-lambda^1 + lambda^2 + mu^1 - K"),
];

/// `|a| ≤ b` appears as the pair `a ≤ b`, `−a ≤ b`.
const SU4_NONVANISHING: &[(&str, &str)] = &[
    ("0", "lambda_1"),
    ("0", "lambda_2"),
    ("0", "lambda_3"),
    ("0", "mu_1"),
    ("0", "mu_2"),
    ("0", "mu_3"),
    ("0", "nu_1"),
    ("0", "nu_2"),
    ("0", "nu_3"),
    // nu^1
    ("lambda^3 - mu^1", "nu^1"),
    ("lambda^3 - lambda_3 - mu^1 + mu_1", "nu^1"),
    ("-lambda^1 + mu^3", "nu^1"),
    ("-lambda^1 + lambda_1 + mu^3 - mu_3", "nu^1"),
    ("nu^1", "lambda^3 + mu^3"),
    // nu^2
    ("lambda^2 - mu^2", "nu^2"),
    ("-lambda^2 + mu^2", "nu^2"),
    ("lambda^2 - lambda_2 - mu^2 + mu_2", "nu^2"),
    ("-lambda^2 + lambda_2 + mu^2 - mu_2", "nu^2"),
    ("lambda^1 - lambda^3 + mu^1 - mu^3", "nu^2"),
    ("-lambda^1 + lambda^3 - mu^1 + mu^3", "nu^2"),
    ("nu^2", "lambda^2 + mu^2"),
    // nu^3
    ("lambda^1 - mu^3", "nu^3"),
    ("lambda^1 - lambda_1 - mu^3 + mu_3", "nu^3"),
    ("-lambda^3 + mu^1", "nu^3"),
    ("-lambda^3 + lambda_3 + mu^1 - mu_1", "nu^3"),
    ("nu^3", "lambda^1 + mu^1"),
    // nu^1 - nu_1
    ("lambda^2 - lambda^3 - mu^1", "nu^1 - nu_1"),
    ("-lambda^1 + mu^2 - mu^3", "nu^1 - nu_1"),
    ("lambda^1 - lambda^2 + mu^1 - mu^2", "nu^1 - nu_1"),
    ("nu^1 - nu_1", "lambda^2 - lambda^3 + mu^3"),
    ("nu^1 - nu_1", "lambda^3 + mu^2 - mu^3"),
    // nu^2 - nu_2
    ("-lambda^1 + lambda^3 + mu_2 - mu^2", "nu^2 - nu_2"),
    ("lambda_2 - lambda^2 - mu^1 + mu^3", "nu^2 - nu_2"),
    ("lambda^1 - lambda^3 + mu_2 - mu^2", "nu^2 - nu_2"),
    ("lambda_2 - lambda^2 + mu^1 - mu^3", "nu^2 - nu_2"),
    ("-lambda^2 + mu^2 - mu_2", "nu^2 - nu_2"),
    ("lambda^2 - lambda_2 - mu^2", "nu^2 - nu_2"),
    ("nu^2 - nu_2", "lambda^2 - lambda_2 + mu^2"),
    ("nu^2 - nu_2", "lambda^2 + mu^2 - mu_2"),
    // nu^3 - nu_3
    ("lambda^2 - lambda^1 - mu^3", "nu^3 - nu_3"),
    ("-lambda^3 + mu^2 - mu^1", "nu^3 - nu_3"),
    ("lambda^3 - lambda^2 + mu^3 - mu^2", "nu^3 - nu_3"),
    ("nu^3 - nu_3", "lambda^2 - lambda^1 + mu^1"),
    ("nu^3 - nu_3", "lambda^1 + mu^2 - mu^1"),
    // nu^1 - nu^3
    ("-lambda^1 + lambda^3 - mu^2", "nu^1 - nu^3"),
    ("-lambda^2 - mu^1 + mu^3", "nu^1 - nu^3"),
    ("lambda_2 - lambda^2 + mu_2 - mu^2", "nu^1 - nu^3"),
    ("nu^1 - nu^3", "-lambda^1 + lambda^3 + mu^2"),
    ("nu^1 - nu^3", "lambda^2 - mu^1 + mu^3"),
    ("nu^1 - nu^3", "lambda^2 - lambda_2 + mu^2 - mu_2"),
];

/// The single sum over `η` for `su(3)`.
pub fn su3_sum() -> NestedSum {
    NestedSum::from_table(2, SU3_SUM)
}

/// The triple sum over `d`, `η_2`, `η_1` for `su(4)`.
pub fn su4_sum() -> NestedSum {
    NestedSum::from_table(3, SU4_SUM)
}

/// The 18 inequalities equivalent to `T > 0` for `su(3)`.
pub fn su3_inequalities() -> LabelSystem {
    LabelSystem::from_table(2, SU3_NONVANISHING)
}

/// The 18 inequalities equivalent to `T > K` for `su(3)`.
pub fn su3_threshold_inequalities() -> LabelSystem {
    LabelSystem::from_table(2, SU3_THRESHOLD)
}

/// The reduced inequality system for `T > 0` in `su(4)`.
pub fn su4_inequalities() -> LabelSystem {
    LabelSystem::from_table(3, SU4_NONVANISHING)
}

pub fn su3_multiplicity(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u128> {
    su3_sum().evaluate(lambda, mu, nu)
}

pub fn su4_multiplicity(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u128> {
    su4_sum().evaluate(lambda, mu, nu)
}

fn decide(system: LabelSystem, lambda: &Weight, mu: &Weight, nu: &Weight, k: u64) -> Result<bool> {
    let holds = system.holds(lambda, mu, nu, k)?;
    Ok(holds && integrality_ok(lambda, mu, nu))
}

pub fn su3_nonvanishing(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<bool> {
    decide(su3_inequalities(), lambda, mu, nu, 0)
}

pub fn su4_nonvanishing(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<bool> {
    decide(su4_inequalities(), lambda, mu, nu, 0)
}

/// `T_{λ,μ,ν} > k` for `su(3)`.
pub fn su3_threshold(lambda: &Weight, mu: &Weight, nu: &Weight, k: u64) -> Result<bool> {
    decide(su3_threshold_inequalities(), lambda, mu, nu, k)
}
