//! Pseudo-roots of the polynomial determined by a generic set of right
//! roots.
//!
//! For roots `x_1, …, x_n` in a matrix ring, the pseudo-root attached to an
//! edge `(A, i)` of `Γ_n` is `v·x_i·v^{-1}`, where `v` is the Vandermonde
//! quasideterminant `v(i_1, …, i_k, i)` for any ordering `i_1, …, i_k` of
//! `A`. Chains of pseudo-roots give the linear factorizations of the
//! polynomial
//! `P(t) = (t − y_n)…(t − y_1)`, `y_k = x_{{i_1..i_{k-1}}, i_k}`.

mod conj;
mod labeled;
mod sample;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use itertools::Itertools;

pub use conj::{d_expr, d_op, diamond_holds, lconj, rconj, u_expr, u_op, ConjExpr, ExprNode};
pub use labeled::{derive_factorization, labeled_completion, Factorization, Label, LabeledCompletion, LabeledEdgeSet};
pub use sample::{random_generic_roots, random_matrix, sample_generic_roots, MAX_ATTEMPTS, SAMPLE_RANGE};

use crate::error::{LinalgError, RootError};
use crate::hasse::{GammaLabel, Subset};
use crate::matrix::Matrix;
use crate::poly::NCPoly;
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Right roots `x_1, …, x_n` of common dimension `d`, indexed from 1.
#[derive(Clone, Debug)]
pub struct RootSet<T: Scalar> {
    roots: Vec<Matrix<T>>,
    genericity: OnceLock<Result<(), RootError>>,
}

impl<T: Scalar> RootSet<T> {
    pub fn new(roots: Vec<Matrix<T>>) -> Result<Self, RootError> {
        let d = roots.first().ok_or(RootError::Empty)?.dim();
        if let Some(bad) = roots.iter().find(|x| x.dim() != d) {
            return Err(LinalgError::DimensionMismatch { left: d, right: bad.dim() }.into());
        }
        Ok(RootSet { roots, genericity: OnceLock::new() })
    }

    /// `1 × 1` roots: the commutative case.
    pub fn scalars(values: Vec<T>) -> Result<Self, RootError> {
        Self::new(values.into_iter().map(|v| Matrix::scalar(1, v)).collect())
    }

    pub fn n(&self) -> usize {
        self.roots.len()
    }

    pub fn d(&self) -> usize {
        self.roots[0].dim()
    }

    pub fn roots(&self) -> &[Matrix<T>] {
        &self.roots
    }

    /// `x_i`, 1-based.
    pub fn root(&self, i: usize) -> Result<&Matrix<T>, RootError> {
        self.check_indices(&[i])?;
        Ok(self.x(i))
    }

    fn x(&self, i: usize) -> &Matrix<T> {
        &self.roots[i - 1]
    }

    fn check_indices(&self, indices: &[usize]) -> Result<(), RootError> {
        let mut seen = BTreeSet::new();
        for &i in indices {
            if !(1..=self.n()).contains(&i) {
                return Err(RootError::IndexOutOfRange(i));
            }
            if !seen.insert(i) {
                return Err(RootError::RepeatedIndex(i));
            }
        }
        Ok(())
    }

    /// `V(i_1, …, i_{k+1})`: block row `r` holds `x_{i_c}^{k−r}`, so the
    /// bottom block row is all identities.
    pub fn vandermonde_matrix(&self, indices: &[usize]) -> Result<Matrix<T>, RootError> {
        self.check_indices(indices)?;
        if indices.is_empty() {
            return Err(RootError::Empty);
        }
        let k = indices.len() - 1;
        let blocks: Vec<Vec<Matrix<T>>> =
            (0..=k).map(|r| indices.iter().map(|&i| self.x(i).pow(k - r)).collect()).collect();
        Ok(Matrix::block_assemble(&blocks)?)
    }

    /// `v(i_1, …, i_{k+1}) = x_{i_{k+1}}^k − r·V(i_1..i_k)^{-1}·c` with
    /// `r = (x_{i_1}^k, …, x_{i_k}^k)` and `c = (x_{i_{k+1}}^{k−1}, …, 1)ᵀ`.
    pub fn vandermonde_quasidet(&self, indices: &[usize]) -> Result<Matrix<T>, RootError> {
        self.check_indices(indices)?;
        let (&last, head) = indices.split_last().ok_or(RootError::Empty)?;
        if head.is_empty() {
            return Ok(Matrix::identity(self.d()));
        }
        let w = self
            .vandermonde_matrix(head)?
            .inverse()
            .map_err(|_| RootError::SingularVandermonde(head.to_vec()))?;
        Ok(self.quasidet_from_inverse(&w, head, last))
    }

    fn quasidet_from_inverse(&self, w: &Matrix<T>, head: &[usize], last: usize) -> Matrix<T> {
        let k = head.len();
        let d = self.d();
        let c: Vec<Matrix<T>> = (0..k).map(|b| self.x(last).pow(k - 1 - b)).collect();
        let mut correction = Matrix::zeros(d);
        for (a, &ia) in head.iter().enumerate() {
            let ra = self.x(ia).pow(k);
            for (b, cb) in c.iter().enumerate() {
                correction = &correction + &(&(&ra * &w.block(a, b, d)) * cb);
            }
        }
        &self.x(last).pow(k) - &correction
    }

    /// `Ok(())` when every Vandermonde matrix over a subset of size `2..=n`
    /// and every quasideterminant `v(A, i)` is invertible; otherwise the
    /// first failing index tuple. Computed once and cached.
    pub fn genericity(&self) -> &Result<(), RootError> {
        self.genericity.get_or_init(|| self.check_genericity())
    }

    pub fn is_generic(&self) -> bool {
        self.genericity().is_ok()
    }

    fn check_genericity(&self) -> Result<(), RootError> {
        let n = self.n();
        let masks: Vec<u32> = (0..1u32 << n).sorted_by_key(|m| (m.count_ones(), *m)).collect();
        let mut inverses: BTreeMap<u32, Matrix<T>> = BTreeMap::new();
        for &mask in &masks {
            let idx: Vec<usize> = Subset(mask).elements().collect();
            if idx.is_empty() {
                continue;
            }
            let w = self
                .vandermonde_matrix(&idx)?
                .inverse()
                .map_err(|_| RootError::SingularVandermonde(idx.clone()))?;
            inverses.insert(mask, w);
        }
        for &mask in &masks {
            let head: Vec<usize> = Subset(mask).elements().collect();
            for i in (1..=n).filter(|&i| !Subset(mask).contains(i)) {
                let v = match inverses.get(&mask) {
                    Some(w) => self.quasidet_from_inverse(w, &head, i),
                    None => Matrix::identity(self.d()),
                };
                if !v.is_invertible() {
                    return Err(RootError::SingularQuasidet(head.iter().copied().chain([i]).collect()));
                }
            }
        }
        Ok(())
    }

    fn conjugated_root(&self, a: &[usize], i: usize) -> Result<Matrix<T>, RootError> {
        let idx: Vec<usize> = a.iter().copied().chain([i]).collect();
        let v = self.vandermonde_quasidet(&idx)?;
        let vinv = v.inverse().map_err(|_| RootError::SingularQuasidet(idx))?;
        Ok(&(&v * self.x(i)) * &vinv)
    }
}

/// `x_{A,i} = v(a, i)·x_i·v(a, i)^{-1}` for the ordering `a` of `A`. The
/// value is recomputed under the reversed ordering and compared.
pub fn pseudo_root<T: Scalar>(rs: &RootSet<T>, a: &[usize], i: usize) -> Result<Matrix<T>, RootError> {
    if a.contains(&i) {
        return Err(RootError::IndexInSubset { index: i });
    }
    let value = rs.conjugated_root(a, i)?;
    if a.len() >= 2 {
        let reversed: Vec<usize> = a.iter().rev().copied().collect();
        if rs.conjugated_root(&reversed, i)? != value {
            return Err(RootError::OrderingDependence(format!("x_{{{a:?},{i}}} differs under {reversed:?}")));
        }
    }
    Ok(value)
}

/// Pseudo-roots `x_{A,i}` for every edge `(A, i)` of `Γ_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoRootTable<T: Scalar> {
    n: usize,
    entries: BTreeMap<GammaLabel, Matrix<T>>,
}

impl<T: Scalar> PseudoRootTable<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: GammaLabel) -> Option<&Matrix<T>> {
        self.entries.get(&label)
    }

    pub fn entries(&self) -> &BTreeMap<GammaLabel, Matrix<T>> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (GammaLabel, &Matrix<T>)> {
        self.entries.iter().map(|(l, m)| (*l, m))
    }

    /// Replace one entry, e.g. to exercise the invariant checks.
    pub fn set(&mut self, label: GammaLabel, value: Matrix<T>) -> Option<Matrix<T>> {
        self.entries.insert(label, value)
    }

    /// Sum and product relations on every diamond
    /// `(A∪{i}, j)(A, i)` / `(A∪{j}, i)(A, j)`.
    pub fn check_diamonds(&self) -> Result<(), RootError> {
        for mask in 0..1u32 << self.n {
            let a = Subset(mask);
            let free: Vec<usize> = (1..=self.n).filter(|&i| !a.contains(i)).collect();
            for (&i, &j) in free.iter().tuple_combinations() {
                let lookup = |set: Subset, idx: usize| {
                    self.entries.get(&GammaLabel { set, index: idx }).ok_or_else(|| {
                        RootError::TableInvariant(format!("missing entry {}", GammaLabel { set, index: idx }))
                    })
                };
                let (e1, f1) = (lookup(a.with(i), j)?, lookup(a, i)?);
                let (e2, f2) = (lookup(a.with(j), i)?, lookup(a, j)?);
                if !diamond_holds(e1, f1, e2, f2) {
                    return Err(RootError::TableInvariant(format!("diamond over {a} with {i}, {j}")));
                }
            }
        }
        Ok(())
    }

    /// Entries `(∅, i)` equal the roots.
    pub fn check_base(&self, rs: &RootSet<T>) -> Result<(), RootError> {
        for i in 1..=self.n {
            if self.entries.get(&GammaLabel { set: Subset::EMPTY, index: i }) != Some(rs.x(i)) {
                return Err(RootError::TableInvariant(format!("entry {{}}:{i} is not x_{i}")));
            }
        }
        Ok(())
    }
}

/// The full pseudo-root table, with both table invariants validated.
pub fn build_table<T: Scalar>(rs: &RootSet<T>) -> Result<PseudoRootTable<T>, RootError> {
    rs.genericity().clone()?;
    let n = rs.n();
    let mut entries = BTreeMap::new();
    for mask in 0..1u32 << n {
        let a = Subset(mask);
        let elems: Vec<usize> = a.elements().collect();
        for i in (1..=n).filter(|&i| !a.contains(i)) {
            entries.insert(GammaLabel { set: a, index: i }, pseudo_root(rs, &elems, i)?);
        }
    }
    let table = PseudoRootTable { n, entries };
    table.check_base(rs)?;
    table.check_diamonds()?;
    Ok(table)
}

/// `(t − y_n)…(t − y_1)` for the chain `y_k = x_{{i_1..i_{k−1}}, i_k}` given
/// by `ordering = (i_1, …, i_n)`, each `y_k` computed from the prefix in the
/// order given.
pub fn polynomial_for_ordering<T: Scalar>(
    rs: &RootSet<T>,
    ordering: &[usize],
) -> Result<NCPoly<Matrix<T>>, RootError> {
    rs.check_indices(ordering)?;
    if ordering.len() != rs.n() {
        return Err(RootError::IndexOutOfRange(ordering.len()));
    }
    let ys = (0..ordering.len())
        .map(|k| rs.conjugated_root(&ordering[..k], ordering[k]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NCPoly::from_linear_factors(&Matrix::identity(rs.d()), ys.iter().rev())?)
}

/// Largest `n` for which [`canonical_polynomial`] compares all orderings.
pub const ORDERING_CHECK_MAX_N: usize = 5;

/// The monic polynomial of degree `n` with right roots `x_1, …, x_n`, built
/// from the identity ordering and, for `n ≤ 5`, confirmed against every
/// other ordering.
pub fn canonical_polynomial<T: Scalar>(rs: &RootSet<T>) -> Result<NCPoly<Matrix<T>>, RootError> {
    rs.genericity().clone()?;
    let n = rs.n();
    let identity: Vec<usize> = (1..=n).collect();
    let p = polynomial_for_ordering(rs, &identity)?;
    if n <= ORDERING_CHECK_MAX_N {
        for perm in identity.iter().copied().permutations(n).skip(1) {
            if polynomial_for_ordering(rs, &perm)? != p {
                return Err(RootError::OrderingDependence(format!("polynomial differs under ordering {perm:?}")));
            }
        }
    }
    Ok(p)
}

/// The commutative image: every `x_{A,i}` goes to `s_i`.
pub fn scalar_specialize<T: Scalar>(
    labels: impl IntoIterator<Item = GammaLabel>,
    s: &[T],
) -> Result<BTreeMap<GammaLabel, T>, RootError> {
    for (a, b) in s.iter().tuple_combinations() {
        if a == b {
            return Err(RootError::RepeatedValue(format!("{a:?}")));
        }
    }
    labels
        .into_iter()
        .map(|l| match s.get(l.index.wrapping_sub(1)) {
            Some(v) => Ok((l, v.clone())),
            None => Err(RootError::IndexOutOfRange(l.index)),
        })
        .collect()
}

/// Whether specialized values hit every `s_i`, as the factors of a complete
/// factorization of `∏(t − s_i)` must.
pub fn specialization_covers<'a, T: Scalar + 'a>(values: impl IntoIterator<Item = &'a T>, s: &[T]) -> bool {
    let values: Vec<&T> = values.into_iter().collect();
    s.iter().all(|x| values.contains(&x))
}
