//! Distinguished triangles and the coefficient lattice
//! `T = T0 + Σ_l η_l·V_l + Σ_{i,j} d_{i,j}·V_{i,j}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::triangle::{Corner, GeneralTriangle, HexagonId, HexagonLabel, TriangleShape};
use crate::weights::{check_ranks, CouplingQuery, Weight};
use crate::{Error, Result};

/// The unique true triangle of weight `(λ, μ, λ^+ + μ^+)`: every upward
/// triangle in row `k`, column `c` carries `(λ_{k+1}, 0, μ_{c+1})` as
/// (top, bottom-left, bottom-right).
pub fn highest_triangle(lambda: &Weight, mu: &Weight) -> Result<GeneralTriangle> {
    check_ranks(lambda, mu, mu)?;
    let shape = TriangleShape::new(lambda.rank())?;
    let mut entries = vec![0; shape.entry_count()];
    for k in 0..shape.rank() {
        for c in 0..=k {
            entries[shape.index(k, c, Corner::Top)] = lambda.label(k + 1);
            entries[shape.index(k, c, Corner::BottomRight)] = mu.label(c + 1);
        }
    }
    Ok(GeneralTriangle::from_raw(shape, entries))
}

/// A generalised triangle of weight `(0, 0, α_i)`, `α_i` the `i`-th simple
/// root. Its support sits on the right edge: `+1, −1, +1` on the
/// (top, bottom-left, bottom-right) of the edge triangle carrying `ν_i`, `−1`
/// on the top of the edge triangle below it and `−1` on the bottom-right of
/// the one above.
pub fn root_triangle(shape: TriangleShape, i: usize) -> Result<GeneralTriangle> {
    let r = shape.rank();
    if !(1..=r).contains(&i) {
        return Err(Error::IndexOutOfRange { index: i, max: r });
    }
    let mut entries = vec![0; shape.entry_count()];
    let k = r - i;
    entries[shape.index(k, k, Corner::Top)] = 1;
    entries[shape.index(k, k, Corner::BottomLeft)] = -1;
    entries[shape.index(k, k, Corner::BottomRight)] = 1;
    if i >= 2 {
        entries[shape.index(k + 1, k + 1, Corner::Top)] = -1;
    }
    if i < r {
        entries[shape.index(k - 1, k - 1, Corner::BottomRight)] = -1;
    }
    GeneralTriangle::new(shape, entries)
}

/// The asymmetric initial triangle of weight `(λ, μ, ν)`: the highest
/// triangle with its right edge replaced by `(N'_{r−k}, n_{r−k}, N_{r−k})`
/// in row `k`.
pub fn initial_triangle(query: &CouplingQuery) -> GeneralTriangle {
    let r = query.rank();
    let shape = TriangleShape::new(r).expect("rank is positive");
    let mut entries = vec![0; shape.entry_count()];
    for k in 0..r {
        for c in 0..k {
            entries[shape.index(k, c, Corner::Top)] = query.lambda.label(k + 1);
            entries[shape.index(k, c, Corner::BottomRight)] = query.mu.label(c + 1);
        }
        let i = r - k;
        entries[shape.index(k, k, Corner::Top)] = query.big_n_prime(i);
        entries[shape.index(k, k, Corner::BottomLeft)] = query.n(i);
        entries[shape.index(k, k, Corner::BottomRight)] = query.big_n(i);
    }
    GeneralTriangle::from_raw(shape, entries)
}

/// Convenience wrapper building the [`CouplingQuery`] first.
pub fn initial_triangle_for(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<GeneralTriangle> {
    Ok(initial_triangle(&CouplingQuery::new(lambda, mu, nu)?))
}

/// One weight-zero triangle per hexagon: `−1` on the six hexagon vertices
/// and `+1` on the outer neighbours that exist (the top of the upward
/// triangle above, the outer entries flanking the hexagon's upper and lower
/// pairs, and the top of the upward triangle below).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualBasis {
    shape: TriangleShape,
    basis: Vec<GeneralTriangle>,
}

impl VirtualBasis {
    pub fn new(shape: TriangleShape) -> Result<Self> {
        let basis = shape
            .hexagons()
            .map(|h| stencil(shape, h))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { shape, basis })
    }

    pub fn shape(&self) -> TriangleShape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn get(&self, h: HexagonId) -> &GeneralTriangle {
        &self.basis[h.ordinal()]
    }

    pub fn by_label(&self, label: HexagonLabel) -> Option<&GeneralTriangle> {
        HexagonId::from_label(self.shape, label).map(|h| self.get(h))
    }

    /// Basis elements in hexagon row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (HexagonId, &GeneralTriangle)> {
        self.shape.hexagons().zip(self.basis.iter())
    }
}

pub fn virtual_basis(shape: TriangleShape) -> Result<VirtualBasis> {
    VirtualBasis::new(shape)
}

fn stencil(shape: TriangleShape, h: HexagonId) -> Result<GeneralTriangle> {
    let r = shape.rank();
    let (k, c) = (h.row(), h.col());
    let mut entries = vec![0; shape.entry_count()];
    for v in shape.hexagon_vertices(h).all() {
        entries[v] = -1;
    }
    entries[shape.index(k, c, Corner::Top)] = 1;
    if c >= 1 {
        entries[shape.index(k, c - 1, Corner::BottomRight)] = 1;
    }
    if c < k {
        entries[shape.index(k, c + 1, Corner::BottomLeft)] = 1;
    }
    entries[shape.index(k + 1, c, Corner::BottomLeft)] = 1;
    entries[shape.index(k + 1, c + 1, Corner::BottomRight)] = 1;
    if k + 2 < r {
        entries[shape.index(k + 2, c + 1, Corner::Top)] = 1;
    }
    let t = GeneralTriangle::new(shape, entries).map_err(|_| Error::InvalidStencil {
        hexagon: h.ordinal(),
    })?;
    if t.outer_weights() != crate::triangle::OuterWeights::zero(r) {
        return Err(Error::InvalidStencil {
            hexagon: h.ordinal(),
        });
    }
    Ok(t)
}

/// Integer coordinates `(η_l, d_{i,j})` of a lattice point relative to the
/// initial triangle, stored in hexagon row-major order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoefficientVector {
    shape: TriangleShape,
    values: Vec<i64>,
}

impl CoefficientVector {
    pub fn zero(shape: TriangleShape) -> Self {
        Self {
            shape,
            values: vec![0; shape.hexagon_count()],
        }
    }

    pub fn from_values(shape: TriangleShape, values: Vec<i64>) -> Result<Self> {
        if values.len() != shape.hexagon_count() {
            return Err(Error::EntryCount {
                expected: shape.hexagon_count(),
                found: values.len(),
            });
        }
        Ok(Self { shape, values })
    }

    pub fn shape(&self) -> TriangleShape {
        self.shape
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, label: HexagonLabel) -> Option<i64> {
        HexagonId::from_label(self.shape, label).map(|h| self.values[h.ordinal()])
    }

    pub fn set(&mut self, label: HexagonLabel, value: i64) -> Result<()> {
        let h = HexagonId::from_label(self.shape, label).ok_or(Error::IndexOutOfRange {
            index: 0,
            max: self.shape.hexagon_count(),
        })?;
        self.values[h.ordinal()] = value;
        Ok(())
    }

    /// `η_l`
    pub fn eta(&self, l: usize) -> Option<i64> {
        self.get(HexagonLabel::Eta(l))
    }

    /// `d_{i,j}`
    pub fn d(&self, i: usize, j: usize) -> Option<i64> {
        self.get(HexagonLabel::D(i, j))
    }
}

/// `t0 + Σ c_h·V_h`.
pub fn compose(
    t0: &GeneralTriangle,
    coefficients: &CoefficientVector,
    basis: &VirtualBasis,
) -> Result<GeneralTriangle> {
    if t0.shape() != basis.shape() || coefficients.shape() != basis.shape() {
        return Err(Error::ShapeMismatch);
    }
    let mut t = t0.clone();
    for ((_, v), &c) in basis.iter().zip(&coefficients.values) {
        if c != 0 {
            t = t.add_scaled(c, v)?;
        }
    }
    Ok(t)
}

/// Inverse of [`compose`]: the unique coefficients with
/// `compose(t0, c, basis) == t`.
///
/// The top entry of upward triangle `(k, c)` is touched by hexagon `(k, c)`
/// with `+1`, by hexagons `(k−1, c−1)` and `(k−1, c)` with `−1` and by
/// hexagon `(k−2, c−1)` with `+1`, so the coefficients unfold row by row.
pub fn coefficients_of(
    t: &GeneralTriangle,
    t0: &GeneralTriangle,
    basis: &VirtualBasis,
) -> Result<CoefficientVector> {
    let shape = basis.shape();
    if t.shape() != shape || t0.shape() != shape {
        return Err(Error::ShapeMismatch);
    }
    let diff = t.sub(t0)?;
    let mut coeffs = CoefficientVector::zero(shape);
    let at = |coeffs: &CoefficientVector, k: Option<usize>, c: Option<usize>| -> i64 {
        match (k, c) {
            (Some(k), Some(c)) if c <= k && k + 1 < shape.rank() => {
                coeffs.values[k * (k + 1) / 2 + c]
            }
            _ => 0,
        }
    };
    for h in shape.hexagons() {
        let (k, c) = (h.row(), h.col());
        let value = diff.at(k, c, Corner::Top)
            + at(&coeffs, k.checked_sub(1), c.checked_sub(1))
            + at(&coeffs, k.checked_sub(1), Some(c))
            - at(&coeffs, k.checked_sub(2), c.checked_sub(1));
        coeffs.values[h.ordinal()] = value;
    }
    if &compose(t0, &coeffs, basis)? != t {
        return Err(Error::NotInLattice);
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::{hexagon_residuals, EntryKey as K, OuterWeights};
    use proptest::prelude::*;

    fn w(labels: &[i64]) -> Weight {
        Weight::new(labels.to_vec()).unwrap()
    }

    fn shape(r: usize) -> TriangleShape {
        TriangleShape::new(r).unwrap()
    }

    fn root(r: usize, i: usize) -> Vec<i64> {
        (1..=r)
            .map(|j| {
                if j == i {
                    2
                } else if j.abs_diff(i) == 1 {
                    -1
                } else {
                    0
                }
            })
            .collect()
    }

    #[test]
    fn highest_triangle_su3_layout() {
        let t = highest_triangle(&w(&[1, 2]), &w(&[3, 4])).unwrap();
        assert_eq!(
            t.rows(),
            vec![vec![1], vec![0, 3], vec![2, 2], vec![0, 3, 0, 4]]
        );
        // ν = λ^+ + μ^+ = (2,1) + (4,3)
        assert!(t.outer_weights().matches(&[1, 2], &[3, 4], &[6, 4]));
        assert!(t.is_true());
        assert_eq!(
            highest_triangle(&w(&[0, 0, 0]), &w(&[0, 0, 0])).unwrap(),
            GeneralTriangle::zero(shape(3))
        );
    }

    #[test]
    fn root_triangle_su3_alpha2() {
        let t = root_triangle(shape(2), 2).unwrap();
        assert_eq!(
            t.rows(),
            vec![vec![1], vec![-1, 1], vec![0, -1], vec![0, 0, 0, 0]]
        );
        assert!(t.outer_weights().matches(&[0, 0], &[0, 0], &[-1, 2]));
    }

    #[test]
    fn root_triangles_have_root_weight() {
        for r in 1..=7 {
            let s = shape(r);
            for i in 1..=r {
                let t = root_triangle(s, i).unwrap();
                assert!(hexagon_residuals(s, t.entries()).iter().all(|&x| x == 0));
                assert_eq!(
                    t.outer_weights(),
                    OuterWeights {
                        lambda: vec![0; r],
                        mu: vec![0; r],
                        nu: root(r, i)
                    }
                );
            }
            assert_eq!(
                root_triangle(s, r + 1),
                Err(Error::IndexOutOfRange {
                    index: r + 1,
                    max: r
                })
            );
            assert!(root_triangle(s, 0).is_err());
        }
    }

    #[test]
    fn su3_virtual_triangle() {
        let b = virtual_basis(shape(2)).unwrap();
        assert_eq!(b.len(), 1);
        let v = b.by_label(HexagonLabel::Eta(1)).unwrap();
        assert_eq!(
            v.rows(),
            vec![vec![1], vec![-1, -1], vec![-1, -1], vec![1, -1, -1, 1]]
        );
    }

    #[test]
    fn su4_virtual_triangles() {
        let b = virtual_basis(shape(3)).unwrap();
        let rows: Vec<Vec<Vec<i64>>> = b.iter().map(|(_, t)| t.rows()).collect();
        assert_eq!(
            rows,
            vec![
                vec![
                    vec![1],
                    vec![-1, -1],
                    vec![-1, -1],
                    vec![1, -1, -1, 1],
                    vec![0, 1, 0],
                    vec![0, 0, 0, 0, 0, 0]
                ],
                vec![
                    vec![0],
                    vec![0, 0],
                    vec![1, 0],
                    vec![-1, -1, 1, 0],
                    vec![-1, -1, 0],
                    vec![1, -1, -1, 1, 0, 0]
                ],
                vec![
                    vec![0],
                    vec![0, 0],
                    vec![0, 1],
                    vec![0, 1, -1, -1],
                    vec![0, -1, -1],
                    vec![0, 0, 1, -1, -1, 1]
                ],
            ]
        );
        let labels: Vec<HexagonLabel> = b.iter().map(|(h, _)| h.label(shape(3))).collect();
        assert_eq!(
            labels,
            vec![
                HexagonLabel::Eta(2),
                HexagonLabel::D(1, 1),
                HexagonLabel::Eta(1)
            ]
        );
    }

    #[test]
    fn su2_has_no_virtual_triangles() {
        assert!(virtual_basis(shape(1)).unwrap().is_empty());
    }

    #[test]
    fn basis_entry_counts() {
        for r in 2..=7 {
            let b = virtual_basis(shape(r)).unwrap();
            assert_eq!(b.len(), shape(r).hexagon_count());
            for (_, v) in b.iter() {
                let minus = v.entries().iter().filter(|&&e| e == -1).count();
                let plus = v.entries().iter().filter(|&&e| e == 1).count();
                let other = v
                    .entries()
                    .iter()
                    .filter(|&&e| e != 0 && e.abs() != 1)
                    .count();
                assert_eq!(minus, 6);
                assert!((3..=6).contains(&plus));
                assert_eq!(plus == 3, r == 2);
                assert_eq!(other, 0);
            }
        }
    }

    #[test]
    fn initial_triangle_examples() {
        let q = CouplingQuery::new(&w(&[1, 1]), &w(&[1, 1]), &w(&[1, 1])).unwrap();
        let t = initial_triangle(&q);
        // n = (1,1), N = (0,1), N' = (1,0)
        assert_eq!(
            t.rows(),
            vec![vec![0], vec![1, 1], vec![1, 1], vec![0, 1, 1, 0]]
        );
        assert!(t.outer_weights().matches(&[1, 1], &[1, 1], &[1, 1]));

        let z = Weight::zero(5);
        assert_eq!(
            initial_triangle_for(&z, &z, &z).unwrap(),
            GeneralTriangle::zero(shape(5))
        );

        let (a, b) = (w(&[2, 0, 1]), w(&[1, 3, 0]));
        let nu = Weight::new(vec![1, 3, 3]).unwrap();
        assert_eq!(
            initial_triangle_for(&a, &b, &nu).unwrap(),
            highest_triangle(&a, &b).unwrap()
        );
        assert_eq!(
            initial_triangle_for(&w(&[1, 0]), &w(&[1, 0]), &w(&[0, 0])),
            Err(Error::Integrality)
        );
    }

    #[test]
    fn compose_su3_adjoint_cube() {
        let q = CouplingQuery::new(&w(&[1, 1]), &w(&[1, 1]), &w(&[1, 1])).unwrap();
        let t0 = initial_triangle(&q);
        let basis = virtual_basis(shape(2)).unwrap();
        let at = |eta: i64| {
            let mut c = CoefficientVector::zero(shape(2));
            c.set(HexagonLabel::Eta(1), eta).unwrap();
            compose(&t0, &c, &basis).unwrap()
        };
        assert!(at(0).is_true());
        assert!(at(1).is_true());
        assert!(!at(-1).is_true());
        assert!(!at(2).is_true());
        assert_eq!(at(0), t0);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let basis = virtual_basis(shape(3)).unwrap();
        let t0 = GeneralTriangle::zero(shape(2));
        assert_eq!(
            compose(&t0, &CoefficientVector::zero(shape(3)), &basis),
            Err(Error::ShapeMismatch)
        );
    }

    #[test]
    fn coefficients_reject_other_weights() {
        let basis = virtual_basis(shape(3)).unwrap();
        let t0 = GeneralTriangle::zero(shape(3));
        let t = root_triangle(shape(3), 2).unwrap();
        assert_eq!(coefficients_of(&t, &t0, &basis), Err(Error::NotInLattice));
    }

    #[test]
    fn virtual_basis_is_independent() {
        // rank of the E_r × H_r matrix by fraction-free elimination
        for r in 2..=6 {
            let b = virtual_basis(shape(r)).unwrap();
            let mut m: Vec<Vec<i128>> = b
                .iter()
                .map(|(_, v)| v.entries().iter().map(|&e| e as i128).collect())
                .collect();
            let cols = shape(r).entry_count();
            let mut rank = 0;
            for col in 0..cols {
                if let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) {
                    m.swap(rank, p);
                    for i in 0..m.len() {
                        if i != rank && m[i][col] != 0 {
                            let (a, bb) = (m[rank][col], m[i][col]);
                            let pivot = m[rank].clone();
                            for (x, y) in m[i].iter_mut().zip(&pivot) {
                                *x = *x * a - y * bb;
                            }
                        }
                    }
                    rank += 1;
                }
            }
            assert_eq!(rank, shape(r).hexagon_count(), "rank {r}");
        }
    }

    fn query_strategy() -> impl Strategy<Value = CouplingQuery> {
        (1usize..=5)
            .prop_flat_map(|r| {
                (
                    proptest::collection::vec(0i64..=4, r),
                    proptest::collection::vec(0i64..=4, r),
                    proptest::collection::vec(0i64..=4, r),
                )
            })
            .prop_filter_map("integrality", |(a, b, c)| {
                CouplingQuery::new(
                    &Weight::new(a).unwrap(),
                    &Weight::new(b).unwrap(),
                    &Weight::new(c).unwrap(),
                )
                .ok()
            })
    }

    proptest! {
        #[test]
        fn initial_triangle_is_consistent(q in query_strategy()) {
            let t = initial_triangle(&q);
            let s = t.shape();
            prop_assert!(hexagon_residuals(s, t.entries()).iter().all(|&x| x == 0));
            prop_assert!(t.outer_weights().matches(q.lambda.labels(), q.mu.labels(), q.nu.labels()));
        }

        #[test]
        fn initial_is_highest_minus_roots(q in query_strategy()) {
            let s = TriangleShape::new(q.rank()).unwrap();
            let mut t = highest_triangle(&q.lambda, &q.mu).unwrap();
            for i in 1..=q.rank() {
                t = t.add_scaled(-q.n(i), &root_triangle(s, i).unwrap()).unwrap();
            }
            prop_assert_eq!(t, initial_triangle(&q));
        }

        #[test]
        fn compose_round_trips(q in query_strategy(), seed in proptest::collection::vec(-3i64..=3, 15)) {
            let s = TriangleShape::new(q.rank()).unwrap();
            let basis = virtual_basis(s).unwrap();
            let t0 = initial_triangle(&q);
            let c = CoefficientVector::from_values(s, seed[..s.hexagon_count()].to_vec()).unwrap();
            let t = compose(&t0, &c, &basis).unwrap();
            prop_assert_eq!(t.outer_weights(), t0.outer_weights());
            prop_assert_eq!(coefficients_of(&t, &t0, &basis).unwrap(), c);
        }

        #[test]
        fn outer_weights_are_linear(q in query_strategy(), f in -4i64..=4, i in 0usize..8) {
            let s = TriangleShape::new(q.rank()).unwrap();
            let t = initial_triangle(&q);
            let v = root_triangle(s, 1 + i % q.rank()).unwrap();
            let sum = t.add_scaled(f, &v).unwrap();
            let (a, b, c) = (t.outer_weights(), v.outer_weights(), sum.outer_weights());
            for k in 0..q.rank() {
                prop_assert_eq!(c.lambda[k], a.lambda[k] + f * b.lambda[k]);
                prop_assert_eq!(c.mu[k], a.mu[k] + f * b.mu[k]);
                prop_assert_eq!(c.nu[k], a.nu[k] + f * b.nu[k]);
            }
            prop_assert_eq!(t.add_scaled(0, &v).unwrap(), t.clone());
        }
    }

    #[test]
    fn entry_lookup_by_key() {
        let t = highest_triangle(&w(&[1, 2]), &w(&[3, 4])).unwrap();
        assert_eq!(t.get(K::m(1, 3)), Some(1));
        assert_eq!(t.get(K::l(1, 3)), Some(4));
        assert_eq!(t.get(K::l(1, 4)), None);
    }
}
