//! Counting true BZ triangles of a fixed weight.
//!
//! * [`multiplicity_sum`] evaluates the explicit nested sum over the
//!   virtual-triangle coefficients ([`SummationBounds`]).
//! * [`polytope_of`] writes the non-negativity of every entry of
//!   `T0 + Σ c·V` as an [`InequalitySystem`], and [`count_integer_points`]
//!   counts its lattice points.
//! * [`list_true_triangles`] recovers the triangles themselves.

mod bounds;
mod polytope;

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

pub use bounds::{BoundExpr, Quantity, SummationBounds, VariableBounds};
pub use polytope::{
    count_integer_points, for_each_integer_point, integer_points, Inequality, InequalitySystem,
    Rational,
};

use crate::lattice::{compose, initial_triangle, CoefficientVector, VirtualBasis};
use crate::triangle::{GeneralTriangle, HexagonId, HexagonLabel, TriangleShape};
use crate::weights::{check_ranks, integrality_ok, CouplingQuery, Weight};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SumOptions {
    /// Verify on every evaluation that each bound reads only variables that
    /// are already bound. Always on in debug builds.
    pub check_order: bool,
}

/// `T_{λ,μ,ν}` from the nested-sum formula.
///
/// Returns 0 without summing when the integrality condition fails. Rank 1
/// has no coefficients: the count is 1 iff the three entries of the
/// initial triangle are non-negative.
pub fn multiplicity_sum(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u128> {
    multiplicity_sum_with(lambda, mu, nu, SumOptions::default())
}

pub fn multiplicity_sum_with(
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
    options: SumOptions,
) -> Result<u128> {
    let r = check_ranks(lambda, mu, nu)?;
    if !integrality_ok(lambda, mu, nu) {
        return Ok(0);
    }
    let q = CouplingQuery::new(lambda, mu, nu)?;
    if r == 1 {
        let ok = q.n(1) >= 0 && q.big_n(1) >= 0 && q.big_n_prime(1) >= 0;
        return Ok(ok as u128);
    }
    let bounds = SummationBounds::new(r)?;
    bounds
        .compile(&q)
        .sum(options.check_order || cfg!(debug_assertions))
}

/// Variable order used for polytope systems: the nested-sum order.
pub fn variable_order(shape: TriangleShape) -> Vec<HexagonLabel> {
    match shape.rank() {
        1 => Vec::new(),
        r => SummationBounds::new(r).expect("rank ≥ 2").order(),
    }
}

/// One inequality per entry of `t0 + Σ c·V ≥ 0`, over the coefficients in
/// [`variable_order`].
pub fn polytope_for_triangle(
    t0: &GeneralTriangle,
    basis: &VirtualBasis,
) -> Result<InequalitySystem> {
    let shape = t0.shape();
    if basis.shape() != shape {
        return Err(Error::ShapeMismatch);
    }
    let order = variable_order(shape);
    let mut system = InequalitySystem::new(order.iter().map(|l| l.to_string()).collect());
    let columns: Vec<&GeneralTriangle> = order
        .iter()
        .map(|&l| basis.get(HexagonId::from_label(shape, l).expect("valid label")))
        .collect();
    for e in 0..shape.entry_count() {
        let coeffs: Vec<i64> = columns.iter().map(|v| v.entries()[e]).collect();
        system.push(Inequality::from_integers(&coeffs, -t0.entries()[e]))?;
    }
    Ok(system)
}

/// The polytope of `λ ⊗ μ ⊗ ν` around the initial triangle.
pub fn polytope_of(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<InequalitySystem> {
    let q = CouplingQuery::new(lambda, mu, nu)?;
    let t0 = initial_triangle(&q);
    let basis = VirtualBasis::new(t0.shape())?;
    polytope_for_triangle(&t0, &basis)
}

/// Generic-counter route to `T_{λ,μ,ν}`; 0 on integrality failure.
pub fn count_multiplicity(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u128> {
    check_ranks(lambda, mu, nu)?;
    if !integrality_ok(lambda, mu, nu) {
        return Ok(0);
    }
    count_integer_points(&polytope_of(lambda, mu, nu)?)
}

/// Every true triangle of weight `(λ, μ, ν)`, in lexicographic order of
/// their coefficients.
pub fn list_true_triangles(
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
) -> Result<Vec<GeneralTriangle>> {
    check_ranks(lambda, mu, nu)?;
    if !integrality_ok(lambda, mu, nu) {
        return Ok(Vec::new());
    }
    let q = CouplingQuery::new(lambda, mu, nu)?;
    let t0 = initial_triangle(&q);
    let shape = t0.shape();
    let basis = VirtualBasis::new(shape)?;
    let system = polytope_for_triangle(&t0, &basis)?;
    let order = variable_order(shape);
    let mut points = Vec::new();
    for_each_integer_point(&system, |p| points.push(p.to_vec()))?;
    points
        .into_iter()
        .map(|p| {
            let mut c = CoefficientVector::zero(shape);
            for (&label, &v) in order.iter().zip(&p) {
                c.set(label, v)?;
            }
            let t = compose(&t0, &c, &basis)?;
            debug_assert!(t.is_true());
            Ok(t)
        })
        .collect()
}

/// Simple root `α_i` in Dynkin labels.
fn simple_root(r: usize, i: usize) -> Vec<i64> {
    (1..=r)
        .map(|j| match j.abs_diff(i) {
            0 => 2,
            1 => -1,
            _ => 0,
        })
        .collect()
}

/// `λ ⊗ μ = ⊕ T_{λ,μ}^ν M_ν` from the nested sum.
///
/// Candidates are `ν^+ = λ^+ + μ^+ − Σ n_i α_i` with `n_i ≥ 0` bounded by
/// dominance of `ν^+`; each gets `T_{λ,μ,ν^+}`.
pub fn decompose(lambda: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, u128>> {
    check_ranks(lambda, mu, mu)?;
    let r = lambda.rank();
    let top: Vec<i64> = lambda
        .conjugate()
        .labels()
        .iter()
        .zip(mu.conjugate().labels())
        .map(|(a, b)| a + b)
        .collect();
    let top_dual = Weight::new(top.clone())?.dual_labels();
    let n_scale = r as i64 + 1;
    let caps: Vec<i64> = top_dual.scaled().iter().map(|s| s / n_scale).collect();
    let roots: Vec<Vec<i64>> = (1..=r).map(|i| simple_root(r, i)).collect();
    let mut out = BTreeMap::new();
    let mut n = vec![0i64; r];
    loop {
        let mut labels = top.clone();
        for (ni, root) in n.iter().zip(&roots) {
            for (l, a) in labels.iter_mut().zip(root) {
                *l -= ni * a;
            }
        }
        if labels.iter().all(|&l| l >= 0) {
            let third = Weight::new(labels)?;
            let t = multiplicity_sum(lambda, mu, &third)?;
            if t > 0 {
                out.insert(third.conjugate(), t);
            }
        }
        // odometer over 0..=caps[i]
        let mut i = 0;
        loop {
            if i == r {
                return Ok(out);
            }
            if n[i] < caps[i] {
                n[i] += 1;
                break;
            }
            n[i] = 0;
            i += 1;
        }
    }
}
