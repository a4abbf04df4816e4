//! Dominant integral weights of `su(r+1)` and the quantities derived from a
//! coupling `λ ⊗ μ ⊗ ν`.
//!
//! Indices in the public accessors are 1-based, matching the usual
//! labelling `λ_1..λ_r` of Dynkin labels.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::{Error, Result};

/// A dominant weight given by its Dynkin labels. The rank is the number of
/// labels; `su(N)` has rank `N - 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    labels: Vec<i64>,
}

impl Weight {
    pub fn new(labels: Vec<i64>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::ZeroRank);
        }
        if let Some((index, &value)) = labels.iter().enumerate().find(|(_, &l)| l < 0) {
            return Err(Error::NegativeLabel {
                index: index + 1,
                value,
            });
        }
        Ok(Self { labels })
    }

    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be at least 1");
        Self {
            labels: alloc::vec![0; rank],
        }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Dynkin label `λ_i`, 1-based.
    #[inline]
    pub fn label(&self, i: usize) -> i64 {
        self.labels[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    /// Dual Dynkin labels, scaled by `N = r + 1` so they are integers.
    pub fn dual_labels(&self) -> ScaledDualLabels {
        let r = self.rank();
        let n = r + 1;
        let scaled = (1..=r)
            .map(|i| {
                (1..=r)
                    .map(|j| (i.min(j) * (n - i.max(j))) as i64 * self.labels[j - 1])
                    .sum()
            })
            .collect();
        ScaledDualLabels { scaled }
    }

    /// The conjugate weight `λ^+`: for the A-series this reverses the labels.
    pub fn conjugate(&self) -> Self {
        let mut labels = self.labels.clone();
        labels.reverse();
        Self { labels }
    }

    /// Congruence (N-ality) class `Σ_j j·λ_j mod N`.
    pub fn congruence_class(&self) -> usize {
        let n = self.rank() as i64 + 1;
        let c: i64 = self
            .labels
            .iter()
            .enumerate()
            .map(|(j, &l)| (j as i64 + 1) * l)
            .sum();
        c.rem_euclid(n) as usize
    }

    /// Dimension of the irreducible module with this highest weight, from
    /// the Weyl dimension formula over the positive roots of `A_r`.
    ///
    /// Panics if the dimension does not fit in a `u128`.
    pub fn weyl_dimension(&self) -> u128 {
        let n = self.rank() + 1;
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 1..n {
            let mut height: u128 = 0;
            for j in (i + 1)..=n {
                height += self.labels[j - 2] as u128;
                let len = (j - i) as u128;
                num = num
                    .checked_mul(height + len)
                    .expect("Weyl dimension overflows u128");
                den *= len;
                let g = num.gcd(&den);
                num /= g;
                den /= g;
            }
        }
        debug_assert_eq!(den, 1);
        num
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Dual Dynkin labels `λ^i` stored as `N·λ^i`.
///
/// `N·λ^i = Σ_j min(i,j)·(N − max(i,j))·λ_j`, the inverse Cartan matrix of
/// `A_r` with its common denominator `N` cleared.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledDualLabels {
    scaled: Vec<i64>,
}

impl ScaledDualLabels {
    pub fn rank(&self) -> usize {
        self.scaled.len()
    }

    /// The scale factor `N = r + 1`.
    pub fn denominator(&self) -> i64 {
        self.scaled.len() as i64 + 1
    }

    pub fn scaled(&self) -> &[i64] {
        &self.scaled
    }

    /// `N·λ^i`, 1-based.
    #[inline]
    pub fn get(&self, i: usize) -> i64 {
        self.scaled[i - 1]
    }

    pub fn as_rational(&self, i: usize) -> num_rational::Ratio<i64> {
        num_rational::Ratio::new(self.get(i), self.denominator())
    }
}

pub fn dual_labels(w: &Weight) -> ScaledDualLabels {
    w.dual_labels()
}

pub fn conjugate(w: &Weight) -> Weight {
    w.conjugate()
}

pub fn weyl_dimension(w: &Weight) -> u128 {
    w.weyl_dimension()
}

pub(crate) fn check_ranks(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<usize> {
    let r = lambda.rank();
    for w in [mu, nu] {
        if w.rank() != r {
            return Err(Error::RankMismatch {
                expected: r,
                found: w.rank(),
            });
        }
    }
    Ok(r)
}

/// Whether `λ^i + μ^i + ν^i` is an integer for every `i`, i.e. whether the
/// triple can couple to the singlet at all. Non-negativity of the sum is
/// automatic for dominant weights.
///
/// Returns `false` for weights of different rank.
pub fn integrality_ok(lambda: &Weight, mu: &Weight, nu: &Weight) -> bool {
    if check_ranks(lambda, mu, nu).is_err() {
        return false;
    }
    let n = lambda.rank() as i64 + 1;
    let (a, b, c) = (lambda.dual_labels(), mu.dual_labels(), nu.dual_labels());
    (1..=lambda.rank()).all(|i| (a.get(i) + b.get(i) + c.get(i)) % n == 0)
}

/// A coupling `λ ⊗ μ ⊗ ν` together with the integers `n_i`, `N_i`, `N'_i`
/// that populate the initial triangle.
///
/// * `n_i  = λ^{r−i+1} + μ^{r−i+1} − ν^i`
/// * `N_i  = n_{i−1} − n_i + μ_{r−i+1}` (with `n_0 = 0`)
/// * `N'_i = ν_i − N_i`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingQuery {
    pub lambda: Weight,
    pub mu: Weight,
    pub nu: Weight,
    lambda_dual: ScaledDualLabels,
    mu_dual: ScaledDualLabels,
    nu_dual: ScaledDualLabels,
    small_n: Vec<i64>,
    big_n: Vec<i64>,
    big_n_prime: Vec<i64>,
}

impl CouplingQuery {
    /// Builds the query; fails on rank mismatch or when the integrality
    /// condition does not hold.
    pub fn new(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<Self> {
        let r = check_ranks(lambda, mu, nu)?;
        if !integrality_ok(lambda, mu, nu) {
            return Err(Error::Integrality);
        }
        let n_scale = r as i64 + 1;
        let (ld, md, nd) = (lambda.dual_labels(), mu.dual_labels(), nu.dual_labels());
        let small_n: Vec<i64> = (1..=r)
            .map(|i| {
                let s = ld.get(r - i + 1) + md.get(r - i + 1) - nd.get(i);
                debug_assert_eq!(s % n_scale, 0);
                s / n_scale
            })
            .collect();
        let big_n: Vec<i64> = (1..=r)
            .map(|i| {
                let prev = if i > 1 { small_n[i - 2] } else { 0 };
                prev - small_n[i - 1] + mu.label(r - i + 1)
            })
            .collect();
        let big_n_prime = (1..=r).map(|i| nu.label(i) - big_n[i - 1]).collect();
        Ok(Self {
            lambda: lambda.clone(),
            mu: mu.clone(),
            nu: nu.clone(),
            lambda_dual: ld,
            mu_dual: md,
            nu_dual: nd,
            small_n,
            big_n,
            big_n_prime,
        })
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    /// `n_i`, 1-based.
    pub fn n(&self, i: usize) -> i64 {
        self.small_n[i - 1]
    }

    /// `N_i`, 1-based.
    pub fn big_n(&self, i: usize) -> i64 {
        self.big_n[i - 1]
    }

    /// `N'_i`, 1-based.
    pub fn big_n_prime(&self, i: usize) -> i64 {
        self.big_n_prime[i - 1]
    }

    pub fn n_values(&self) -> &[i64] {
        &self.small_n
    }

    pub fn big_n_values(&self) -> &[i64] {
        &self.big_n
    }

    pub fn big_n_prime_values(&self) -> &[i64] {
        &self.big_n_prime
    }

    pub fn lambda_dual(&self) -> &ScaledDualLabels {
        &self.lambda_dual
    }

    pub fn mu_dual(&self) -> &ScaledDualLabels {
        &self.mu_dual
    }

    pub fn nu_dual(&self) -> &ScaledDualLabels {
        &self.nu_dual
    }
}

/// Same as [`CouplingQuery::new`].
pub fn derived_quantities(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<CouplingQuery> {
    CouplingQuery::new(lambda, mu, nu)
}
