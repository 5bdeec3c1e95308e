//! Fourth-order rephasing invariants `V_{αj} V_{βk} V*_{αk} V*_{βj}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix};

/// Row pair and column pair of a plaquette (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaquetteIndex {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

impl PlaquetteIndex {
    pub fn new(rows: (usize, usize), cols: (usize, usize)) -> Self {
        Self { rows, cols }
    }

    /// Sorted pairs and whether the value must be conjugated to get there.
    pub fn canonical(self) -> (PlaquetteIndex, bool) {
        let (a, b) = self.rows;
        let (j, k) = self.cols;
        let flips = usize::from(a > b) + usize::from(j > k);
        (PlaquetteIndex::new((a.min(b), a.max(b)), (j.min(k), j.max(k))), flips % 2 == 1)
    }

    pub fn is_canonical(self) -> bool {
        self.rows.0 < self.rows.1 && self.cols.0 < self.cols.1
    }
}

/// 1-based, e.g. `(1,2;1,3)`.
impl fmt::Display for PlaquetteIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.rows.0 + 1, self.rows.1 + 1, self.cols.0 + 1, self.cols.1 + 1)
    }
}

/// A plaquette: its index and `⟨αβ;jk⟩ + i (αβ;jk)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plaquette {
    pub index: PlaquetteIndex,
    pub value: Complex,
}

impl Plaquette {
    /// The invariant phase `(αβ;jk)`.
    pub fn im(&self) -> f64 {
        self.value.im
    }

    /// The real companion `⟨αβ;jk⟩`.
    pub fn re(&self) -> f64 {
        self.value.re
    }

    /// Same plaquette stored with sorted pairs; an odd number of swaps conjugates.
    pub fn canonical(&self) -> Plaquette {
        let (index, flip) = self.index.canonical();
        Plaquette { index, value: if flip { self.value.conj() } else { self.value } }
    }
}

pub(crate) fn raw_product(x: &ComplexMatrix, (a, b): (usize, usize), (j, k): (usize, usize)) -> Complex {
    x[(a, j)] * x[(b, k)] * x[(a, k)].conj() * x[(b, j)].conj()
}

/// `V_{αj} V_{βk} V*_{αk} V*_{βj}` for the given (unsorted) index order.
pub fn plaquette(x: &ComplexMatrix, rows: (usize, usize), cols: (usize, usize)) -> Result<Plaquette> {
    if !x.is_square() {
        return Err(Error::Shape("plaquettes need a square matrix".into()));
    }
    let n = x.rows();
    for i in [rows.0, rows.1, cols.0, cols.1] {
        if i >= n {
            return Err(Error::Domain(format!("index {i} out of range for n = {n}")));
        }
    }
    if rows.0 == rows.1 || cols.0 == cols.1 {
        return Err(Error::Domain(format!("repeated index in {}", PlaquetteIndex::new(rows, cols))));
    }
    Ok(Plaquette { index: PlaquetteIndex::new(rows, cols), value: raw_product(x, rows, cols) })
}

/// Lexicographically ordered pairs `i < j` of `0..n`.
pub fn index_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// All `[n(n−1)/2]²` canonical plaquettes of a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaquetteTable {
    n: usize,
    pairs: Vec<(usize, usize)>,
    values: Vec<Complex>,
}

impl PlaquetteTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn pair_position(&self, p: (usize, usize)) -> Option<usize> {
        // position of (i, j), i < j, in lexicographic order
        let (i, j) = p;
        if i >= j || j >= self.n {
            return None;
        }
        Some(i * (2 * self.n - i - 1) / 2 + (j - i - 1))
    }

    /// Value for any index order, reconstructed from the canonical entry.
    pub fn get(&self, rows: (usize, usize), cols: (usize, usize)) -> Result<Complex> {
        let idx = PlaquetteIndex::new(rows, cols);
        let (canon, flip) = idx.canonical();
        let (r, c) = self
            .pair_position(canon.rows)
            .zip(self.pair_position(canon.cols))
            .ok_or_else(|| Error::Domain(format!("invalid plaquette index {idx}")))?;
        let v = self.values[r * self.pairs.len() + c];
        Ok(if flip { v.conj() } else { v })
    }

    /// `(αβ;jk)` for any index order.
    pub fn im(&self, rows: (usize, usize), cols: (usize, usize)) -> Result<f64> {
        self.get(rows, cols).map(|v| v.im)
    }

    /// Canonical plaquettes, row pairs outermost.
    pub fn iter(&self) -> impl Iterator<Item = Plaquette> + '_ {
        let m = self.pairs.len();
        self.values.iter().enumerate().map(move |(t, v)| Plaquette {
            index: PlaquetteIndex::new(self.pairs[t / m], self.pairs[t % m]),
            value: *v,
        })
    }

    /// Max-norm distance between two tables of the same size.
    pub fn max_diff(&self, other: &PlaquetteTable) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Every canonical plaquette of a square matrix.
pub fn plaquette_table(x: &ComplexMatrix) -> Result<PlaquetteTable> {
    if !x.is_square() {
        return Err(Error::Shape("plaquettes need a square matrix".into()));
    }
    let pairs = index_pairs(x.rows());
    let values =
        pairs.iter().flat_map(|r| pairs.iter().map(move |c| (*r, *c))).map(|(r, c)| raw_product(x, r, c)).collect();
    Ok(PlaquetteTable { n: x.rows(), pairs, values })
}

/// `(n − 1)(n − 2)/2`, the number of independent invariant phases.
pub fn count_independent_phases(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (n - 1) * (n - 2) / 2
}

/// Both sides of the sextet reduction
/// `Im(V_{αj}V_{βk}V_{γl}V*_{αk}V*_{βl}V*_{γj}) =
///  [(αβ,jk)⟨βγ,jl⟩ + ⟨αβ,jk⟩(βγ,jl)] / |V_{βj}|²`.
///
/// Fails when the divisor `|V_{βj}|` does not exceed `pivot_tol`.
pub fn reduce_sextet(
    x: &ComplexMatrix,
    rows: (usize, usize, usize),
    cols: (usize, usize, usize),
    pivot_tol: f64,
) -> Result<(f64, f64)> {
    if !x.is_square() {
        return Err(Error::Shape("sextets need a square matrix".into()));
    }
    let (a, b, g) = rows;
    let (j, k, l) = cols;
    let n = x.rows();
    if [a, b, g, j, k, l].iter().any(|i| *i >= n) {
        return Err(Error::Domain(format!("sextet index out of range for n = {n}")));
    }
    let pivot = x[(b, j)].norm();
    if pivot <= pivot_tol {
        return Err(Error::Precondition(format!(
            "|V_({},{})| = {pivot:e} does not exceed {pivot_tol:e}; the reduction divides by it",
            b + 1,
            j + 1
        )));
    }
    let lhs = (x[(a, j)] * x[(b, k)] * x[(g, l)] * x[(a, k)].conj() * x[(b, l)].conj() * x[(g, j)].conj()).im;
    let p = raw_product(x, (a, b), (j, k));
    let q = raw_product(x, (b, g), (j, l));
    let rhs = (p.im * q.re + p.re * q.im) / (pivot * pivot);
    Ok((lhs, rhs))
}

/// Sign `ε_{γαβ} ε_{ijk}` attached to the canonical plaquette `(αβ;jk)` of a
/// 3 × 3 matrix, where γ and i are the complementary indices.
pub fn epsilon_sign_n3(idx: PlaquetteIndex) -> f64 {
    fn eps(p: [usize; 3]) -> f64 {
        // parity of a permutation of {0,1,2}
        let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|(i, j)| p[*i] > p[*j]).count();
        if inversions % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
    let (a, b) = idx.rows;
    let (j, k) = idx.cols;
    let g = 3 - a - b;
    let i = 3 - j - k;
    eps([g, a, b]) * eps([i, j, k])
}

/// Max deviation of the nine `(αβ;jk)` of a 3 × 3 table from `J ε ε`, with
/// `J = (12;12)`.
pub fn epsilon_pattern_residual(table: &PlaquetteTable) -> Result<f64> {
    if table.n() != 3 {
        return Err(Error::Domain("epsilon pattern applies to 3x3 matrices".into()));
    }
    let j = table.im((0, 1), (0, 1))?;
    Ok(table.iter().map(|p| (p.im() - j * epsilon_sign_n3(p.index)).abs()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{haar_random, phase_matrix};
    use crate::sample::random_phases;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_by_two_is_real() {
        for seed in 0..20 {
            let x = haar_random(2, seed).unwrap();
            assert!(plaquette(&x, (0, 1), (0, 1)).unwrap().im().abs() < 1e-16);
        }
    }

    #[test]
    fn identity_has_zero_table() {
        let t = plaquette_table(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(t.len(), 36);
        assert!(t.iter().all(|p| p.value.norm() == 0.0));
    }

    #[test]
    fn table_sizes() {
        assert_eq!(plaquette_table(&haar_random(3, 1).unwrap()).unwrap().len(), 9);
        assert_eq!(plaquette_table(&haar_random(4, 1).unwrap()).unwrap().len(), 36);
        assert_eq!(plaquette_table(&haar_random(5, 1).unwrap()).unwrap().len(), 100);
    }

    #[test]
    fn repeated_or_out_of_range_indices() {
        let x = haar_random(3, 2).unwrap();
        assert!(matches!(plaquette(&x, (1, 1), (0, 2)), Err(Error::Domain(_))));
        assert!(matches!(plaquette(&x, (0, 1), (2, 2)), Err(Error::Domain(_))));
        assert!(matches!(plaquette(&x, (0, 3), (0, 1)), Err(Error::Domain(_))));
    }

    fn levi_civita(p: [usize; 3]) -> f64 {
        // brute force over the six permutations
        match p {
            [0, 1, 2] | [1, 2, 0] | [2, 0, 1] => 1.0,
            [0, 2, 1] | [2, 1, 0] | [1, 0, 2] => -1.0,
            _ => 0.0,
        }
    }

    #[test]
    fn n3_epsilon_structure() {
        for seed in 0..20 {
            let x = haar_random(3, seed).unwrap();
            let t = plaquette_table(&x).unwrap();
            let j = plaquette(&x, (0, 1), (0, 1)).unwrap().im();
            for p in t.iter() {
                let (a, b) = p.index.rows;
                let (jj, kk) = p.index.cols;
                let sum: f64 = (0..3)
                    .flat_map(|g| (0..3).map(move |i| (g, i)))
                    .map(|(g, i)| levi_civita([g, a, b]) * levi_civita([i, jj, kk]))
                    .sum();
                assert!((p.im() - j * sum).abs() < 1e-13);
                assert_eq!(sum, epsilon_sign_n3(p.index));
            }
            assert!(epsilon_pattern_residual(&t).unwrap() < 1e-13);
        }
    }

    #[test]
    fn sextet_identity_and_pivot() {
        let eye = ComplexMatrix::identity(4);
        assert_eq!(reduce_sextet(&eye, (0, 1, 2), (1, 1, 2), 1e-12).unwrap(), (0.0, 0.0));
        assert!(matches!(reduce_sextet(&eye, (0, 1, 2), (0, 1, 2), 1e-12), Err(Error::Precondition(_))));
        let x = haar_random(4, 3).unwrap();
        let (l, r) = reduce_sextet(&x, (0, 1, 2), (0, 1, 2), 1e-12).unwrap();
        assert!((l - r).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for t in 0..100 {
            let x = haar_random(5, 100 + t).unwrap();
            let mut pick = || rng.random_range(0..5usize);
            let rows = (pick(), pick(), pick());
            let cols = (pick(), pick(), pick());
            if let Ok((l, r)) = reduce_sextet(&x, rows, cols, 1e-6) {
                assert!((l - r).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn phase_counts() {
        assert_eq!(count_independent_phases(3), 1);
        assert_eq!(count_independent_phases(4), 3);
        assert_eq!(count_independent_phases(5), 6);
        assert_eq!(count_independent_phases(1), 0);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(PlaquetteIndex::new((0, 1), (2, 3)).to_string(), "(1,2;3,4)");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rephasing_invariance(seed in any::<u64>(), n in 3usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = haar_random(n, seed).unwrap();
            let a = phase_matrix(&random_phases(&mut rng, n));
            let b = phase_matrix(&random_phases(&mut rng, n));
            let y = a.matmul(&x).unwrap().matmul(&b).unwrap();
            prop_assert!(plaquette_table(&x).unwrap().max_diff(&plaquette_table(&y).unwrap()) < 1e-12);
        }

        #[test]
        fn swaps_conjugate(seed in any::<u64>(), a in 0usize..4, b in 0usize..4, j in 0usize..4, k in 0usize..4) {
            prop_assume!(a != b && j != k);
            let x = haar_random(4, seed).unwrap();
            let t = plaquette_table(&x).unwrap();
            let direct = plaquette(&x, (a, b), (j, k)).unwrap();
            let swapped = plaquette(&x, (b, a), (j, k)).unwrap();
            prop_assert!((direct.re() - swapped.re()).abs() < 1e-15);
            prop_assert!((direct.im() + swapped.im()).abs() < 1e-15);
            prop_assert!((t.get((a, b), (j, k)).unwrap() - direct.value).norm() < 1e-15);
            prop_assert!((direct.canonical().value - t.get(direct.canonical().index.rows, direct.canonical().index.cols).unwrap()).norm() < 1e-15);
        }
    }
}
