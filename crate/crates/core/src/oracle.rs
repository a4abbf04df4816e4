//! Classical tensor product decomposition, kept independent of the triangle
//! code: Freudenthal's recursion for weight multiplicities and the
//! Klimyk (Racah–Speiser) reflection procedure.
//!
//! Weights are handled in the `gl(N)` realisation: a dominant weight is a
//! partition `x_1 ≥ … ≥ x_N = 0` with `x_k = Σ_{j≥k} λ_j`, the Weyl group
//! acts by permuting coordinates, and `ρ = (N−1, …, 1, 0)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::weights::Weight;

/// All weights of an irreducible module with their multiplicities, keyed by
/// Dynkin labels (which may be negative).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiplicityTable {
    highest: Weight,
    entries: BTreeMap<Vec<i64>, u64>,
    // same weights in partition coordinates, for the Klimyk step
    vectors: Vec<(Vec<i64>, u64)>,
}

impl WeightMultiplicityTable {
    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn entries(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, labels: &[i64]) -> u64 {
        self.entries.get(labels).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.entries.values().map(|&m| m as u128).sum()
    }
}

fn partition_of(w: &Weight) -> Vec<i64> {
    let r = w.rank();
    let mut x = alloc::vec![0; r + 1];
    for k in (0..r).rev() {
        x[k] = x[k + 1] + w.labels()[k];
    }
    x
}

fn labels_of(v: &[i64]) -> Vec<i64> {
    v.windows(2).map(|p| p[0] - p[1]).collect()
}

fn dominated_by(y: &[i64], x: &[i64]) -> bool {
    let (mut sy, mut sx) = (0, 0);
    for (a, b) in y.iter().zip(x) {
        sy += a;
        sx += b;
        if sy > sx {
            return false;
        }
    }
    sy == sx
}

fn sorted_desc(v: &[i64]) -> Vec<i64> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

struct Freudenthal<'a> {
    top: &'a [i64],
    rho: Vec<i64>,
    norm_top: i64,
    memo: BTreeMap<Vec<i64>, u64>,
}

impl<'a> Freudenthal<'a> {
    fn new(top: &'a [i64]) -> Self {
        let n = top.len();
        let rho: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
        let norm_top = top.iter().zip(&rho).map(|(a, b)| (a + b) * (a + b)).sum();
        Self {
            top,
            rho,
            norm_top,
            memo: BTreeMap::new(),
        }
    }

    /// Multiplicity of any weight vector (not necessarily dominant).
    fn mult_any(&mut self, v: &[i64]) -> u64 {
        if v.iter().any(|&c| c < 0) {
            return 0;
        }
        let s = sorted_desc(v);
        self.mult(&s)
    }

    /// Multiplicity of a dominant weight `mu` (sorted, same total as top).
    fn mult(&mut self, mu: &[i64]) -> u64 {
        if !dominated_by(mu, self.top) {
            return 0;
        }
        if mu == self.top {
            return 1;
        }
        if let Some(&m) = self.memo.get(mu) {
            return m;
        }
        let n = mu.len();
        let mut numerator: i64 = 0;
        let mut shifted = mu.to_vec();
        for i in 0..n {
            for j in (i + 1)..n {
                shifted.copy_from_slice(mu);
                loop {
                    shifted[i] += 1;
                    shifted[j] -= 1;
                    let m = self.mult_any(&shifted);
                    if m == 0 {
                        break;
                    }
                    numerator += m as i64 * (shifted[i] - shifted[j]);
                }
            }
        }
        let norm_mu: i64 = mu
            .iter()
            .zip(&self.rho)
            .map(|(a, b)| (a + b) * (a + b))
            .sum();
        let denominator = self.norm_top - norm_mu;
        debug_assert!(denominator > 0);
        debug_assert_eq!((2 * numerator) % denominator, 0);
        let m = (2 * numerator / denominator) as u64;
        self.memo.insert(mu.to_vec(), m);
        m
    }
}

/// Visits the distinct permutations of a descending vector.
fn for_each_permutation(sorted: &[i64], mut f: impl FnMut(&[i64])) {
    let mut v: Vec<i64> = sorted.iter().rev().copied().collect();
    loop {
        f(&v);
        // next lexicographic permutation
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
    }
}

fn dominant_weights(top: &[i64]) -> Vec<Vec<i64>> {
    fn rec(top: &[i64], prefix: &mut Vec<i64>, remaining: i64, out: &mut Vec<Vec<i64>>) {
        let n = top.len();
        if prefix.len() == n {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let cap = prefix.last().copied().unwrap_or(remaining).min(remaining);
        let top_prefix: i64 = top[..=prefix.len()].iter().sum();
        let used: i64 = prefix.iter().sum();
        let cap = cap.min(top_prefix - used);
        for v in (0..=cap).rev() {
            let slots = (n - prefix.len()) as i64;
            if v * slots < remaining {
                break;
            }
            prefix.push(v);
            rec(top, prefix, remaining - v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(top, &mut Vec::new(), top.iter().sum(), &mut out);
    out
}

/// The full weight system of the module with highest weight `w`, from
/// Freudenthal's recursion.
pub fn weight_multiplicities(w: &Weight) -> WeightMultiplicityTable {
    let top = partition_of(w);
    let mut fr = Freudenthal::new(&top);
    let mut entries = BTreeMap::new();
    let mut vectors = Vec::new();
    for mu in dominant_weights(&top) {
        let m = fr.mult(&mu);
        if m == 0 {
            continue;
        }
        for_each_permutation(&mu, |v| {
            entries.insert(labels_of(v), m);
            vectors.push((v.to_vec(), m));
        });
    }
    WeightMultiplicityTable {
        highest: w.clone(),
        entries,
        vectors,
    }
}

/// `λ ⊗ μ` decomposition with a precomputed weight table for `λ`.
pub fn tensor_decompose_with(
    table: &WeightMultiplicityTable,
    mu: &Weight,
) -> BTreeMap<Weight, u64> {
    let n = mu.rank() + 1;
    assert_eq!(table.highest.rank(), mu.rank(), "rank mismatch");
    let shift: Vec<i64> = partition_of(mu)
        .iter()
        .enumerate()
        .map(|(i, &x)| x + (n - 1 - i) as i64)
        .collect();
    let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let mut s = alloc::vec![0i64; n];
    for (v, m) in &table.vectors {
        for k in 0..n {
            s[k] = v[k] + shift[k];
        }
        // sort descending, tracking the sign of the permutation
        let mut sign = 1i64;
        for i in 1..n {
            let mut j = i;
            while j > 0 && s[j - 1] < s[j] {
                s.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if s.windows(2).any(|p| p[0] == p[1]) {
            continue;
        }
        let labels: Vec<i64> = s.windows(2).map(|p| p[0] - p[1] - 1).collect();
        *acc.entry(labels).or_insert(0) += sign * *m as i64;
    }
    acc.into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(labels, c)| {
            assert!(c > 0, "negative multiplicity in Klimyk sum");
            (Weight::new(labels).expect("dominant"), c as u64)
        })
        .collect()
}

/// All `ν` with `T_{λ,μ}^ν > 0`, with their multiplicities.
pub fn tensor_decompose(lambda: &Weight, mu: &Weight) -> BTreeMap<Weight, u64> {
    // iterate over the weights of the smaller factor
    let (a, b) = if lambda.weyl_dimension() <= mu.weyl_dimension() {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    tensor_decompose_with(&weight_multiplicities(a), b)
}

/// `T_{λ,μ,ν} = T_{λ,μ}^{ν^+}`, the singlet multiplicity in `λ ⊗ μ ⊗ ν`.
pub fn triple_multiplicity(lambda: &Weight, mu: &Weight, nu: &Weight) -> u64 {
    if lambda.rank() != mu.rank() || lambda.rank() != nu.rank() {
        return 0;
    }
    tensor_decompose(lambda, mu)
        .get(&nu.conjugate())
        .copied()
        .unwrap_or(0)
}

/// Memoising front end for repeated oracle queries.
#[derive(Default)]
pub struct Oracle {
    products: BTreeMap<(Weight, Weight), BTreeMap<Weight, u64>>,
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn decompose(&mut self, lambda: &Weight, mu: &Weight) -> &BTreeMap<Weight, u64> {
        let key = if lambda <= mu {
            (lambda.clone(), mu.clone())
        } else {
            (mu.clone(), lambda.clone())
        };
        self.products
            .entry(key)
            .or_insert_with_key(|(a, b)| tensor_decompose(a, b))
    }

    pub fn triple_multiplicity(&mut self, lambda: &Weight, mu: &Weight, nu: &Weight) -> u64 {
        if lambda.rank() != mu.rank() || lambda.rank() != nu.rank() {
            return 0;
        }
        let conj = nu.conjugate();
        self.decompose(lambda, mu).get(&conj).copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::integrality_ok;
    use alloc::vec;
    use alloc::vec::Vec;

    fn w(labels: &[i64]) -> Weight {
        Weight::new(labels.to_vec()).unwrap()
    }

    fn all_weights(r: usize, max: i64) -> Vec<Weight> {
        let mut out = vec![Vec::new()];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..=max).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(|l| Weight::new(l).unwrap()).collect()
    }

    #[test]
    fn defining_module_su3() {
        let t = weight_multiplicities(&w(&[1, 0]));
        assert_eq!(t.entries().len(), 3);
        assert!(t.entries().values().all(|&m| m == 1));
        assert_eq!(t.total(), 3);
        assert_eq!(t.multiplicity(&[1, 0]), 1);
        assert_eq!(t.multiplicity(&[-1, 1]), 1);
        assert_eq!(t.multiplicity(&[0, -1]), 1);
    }

    #[test]
    fn adjoint_su3() {
        let t = weight_multiplicities(&w(&[1, 1]));
        assert_eq!(t.entries().len(), 7);
        assert_eq!(t.multiplicity(&[0, 0]), 2);
        assert_eq!(t.entries().values().filter(|&&m| m == 1).count(), 6);
        assert_eq!(t.total(), 8);
    }

    #[test]
    fn tables_have_weyl_dimension() {
        for r in 1..=4 {
            for lw in all_weights(r, if r <= 2 { 4 } else { 2 }) {
                let t = weight_multiplicities(&lw);
                assert_eq!(t.total(), lw.weyl_dimension(), "{lw}");
                assert_eq!(t.multiplicity(lw.labels()), 1);
            }
        }
    }

    #[test]
    fn known_su3_products() {
        let d = tensor_decompose(&w(&[1, 0]), &w(&[1, 0]));
        assert_eq!(d, [(w(&[2, 0]), 1), (w(&[0, 1]), 1)].into_iter().collect());

        let d = tensor_decompose(&w(&[1, 1]), &w(&[1, 1]));
        let expected: BTreeMap<Weight, u64> = [
            (w(&[2, 2]), 1),
            (w(&[3, 0]), 1),
            (w(&[0, 3]), 1),
            (w(&[1, 1]), 2),
            (w(&[0, 0]), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expected);

        for lw in all_weights(3, 2) {
            let d = tensor_decompose(&lw, &Weight::zero(3));
            assert_eq!(d, [(lw.clone(), 1)].into_iter().collect());
        }
    }

    #[test]
    fn triple_multiplicity_examples() {
        assert_eq!(
            triple_multiplicity(&w(&[1, 1]), &w(&[1, 1]), &w(&[1, 1])),
            2
        );
        assert_eq!(
            triple_multiplicity(&w(&[1, 0]), &w(&[1, 0]), &w(&[1, 0])),
            1
        );
        assert_eq!(
            triple_multiplicity(&w(&[1, 0]), &w(&[0, 1]), &w(&[0, 0])),
            1
        );
        assert_eq!(
            triple_multiplicity(&w(&[1, 0]), &w(&[1, 0]), &w(&[0, 0])),
            0
        );
        for r in 1..=6 {
            let z = Weight::zero(r);
            assert_eq!(triple_multiplicity(&z, &z, &z), 1);
        }
    }

    #[test]
    fn dimension_identity_and_symmetry() {
        let mut oracle = Oracle::new();
        for r in 1..=3 {
            let ws = all_weights(r, if r == 3 { 1 } else { 2 });
            for a in &ws {
                for b in &ws {
                    let d = oracle.decompose(a, b).clone();
                    let total: u128 = d
                        .iter()
                        .map(|(nu, &m)| m as u128 * nu.weyl_dimension())
                        .sum();
                    assert_eq!(total, a.weyl_dimension() * b.weyl_dimension());
                    for c in &ws {
                        let t = oracle.triple_multiplicity(a, b, c);
                        if !integrality_ok(a, b, c) {
                            assert_eq!(t, 0);
                        }
                        assert_eq!(oracle.triple_multiplicity(b, c, a), t);
                        assert_eq!(oracle.triple_multiplicity(c, b, a), t);
                        assert_eq!(oracle.triple_multiplicity(b, a, c), t);
                    }
                }
            }
        }
    }
}
