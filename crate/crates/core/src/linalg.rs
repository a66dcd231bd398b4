//! Exact linear algebra on sparse coordinate vectors.
//!
//! Vectors are maps from an ordered key set (monomials, matrix columns, ...)
//! to scalars. Echelon forms pivot on the *largest* key, which for monomial
//! keys is the degrevlex leading monomial, so a reduced echelon basis of a
//! subspace of `Γ` is exactly a basis with distinct monic leading terms.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Exponents;
use crate::poly::{Poly, Side};
use crate::ring::{same_ring, Ring};
use crate::scalar::{Field, Scalar};

pub type Vector<K> = BTreeMap<K, Scalar>;

/// `dst += c * src`.
pub fn axpy<K: Ord + Clone>(dst: &mut Vector<K>, src: &Vector<K>, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (k, v) in src {
        let add = v * c;
        match dst.get_mut(k) {
            Some(x) => {
                *x += &add;
                if x.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                dst.insert(k.clone(), add);
            }
        }
    }
}

fn scale<K: Ord + Clone>(v: &mut Vector<K>, c: &Scalar) {
    for x in v.values_mut() {
        *x *= c;
    }
}

/// Reduced row echelon form, grown one vector at a time.
///
/// Every row is monic at its pivot (its largest key) and vanishes at the
/// pivots of all other rows.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, Vector<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = Vector<K>>>(vs: I) -> Self {
        let mut e = Self::new();
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl DoubleEndedIterator<Item = &K> + '_ {
        self.rows.keys()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    /// Rows by decreasing pivot.
    pub fn rows(&self) -> impl Iterator<Item = (&K, &Vector<K>)> + '_ {
        self.rows.iter().rev()
    }

    pub fn into_rows(self) -> Vec<Vector<K>> {
        self.rows.into_values().rev().collect()
    }

    /// Canonical representative of `v` modulo the row space (zero at every pivot).
    pub fn reduce(&self, v: &Vector<K>) -> Vector<K> {
        let mut out = v.clone();
        for (k, c) in v {
            if let Some(row) = self.rows.get(k) {
                axpy(&mut out, row, &-c);
            }
        }
        out
    }

    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns the new pivot, or `None` if `v` was dependent.
    pub fn insert(&mut self, v: Vector<K>) -> Option<K> {
        let mut r = self.reduce(&v);
        let (pivot, lead) = match r.iter().next_back() {
            Some((k, c)) => (k.clone(), c.clone()),
            None => return None,
        };
        scale(&mut r, &lead.inv().expect("nonzero pivot"));
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &r, &-c);
            }
        }
        self.rows.insert(pivot.clone(), r);
        Some(pivot)
    }
}

/// Key of an augmented system: image coordinates sort above unknown tags so
/// elimination pivots on the image first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Aug<T, K> {
    Tag(T),
    Img(K),
}

/// Reduced basis of the kernel of the linear map sending unknown `t` to `image(t)`.
///
/// Each kernel vector is monic at its largest unknown; vectors are returned by
/// decreasing pivot.
pub fn kernel<T, K, I>(field: Field, columns: I) -> Vec<Vector<T>>
where
    T: Ord + Clone,
    K: Ord + Clone,
    I: IntoIterator<Item = (T, Vector<K>)>,
{
    kernel_rows(augmented(field, columns))
}

fn augmented<T, K, I>(field: Field, columns: I) -> Echelon<Aug<T, K>>
where
    T: Ord + Clone,
    K: Ord + Clone,
    I: IntoIterator<Item = (T, Vector<K>)>,
{
    let mut e = Echelon::new();
    for (t, image) in columns {
        let mut v: Vector<Aug<T, K>> = image.into_iter().map(|(k, c)| (Aug::Img(k), c)).collect();
        v.insert(Aug::Tag(t), field.one());
        e.insert(v);
    }
    e
}

fn kernel_rows<T: Ord + Clone, K: Ord + Clone>(e: Echelon<Aug<T, K>>) -> Vec<Vector<T>> {
    e.into_rows()
        .into_iter()
        .filter(|row| matches!(row.keys().next_back(), Some(Aug::Tag(_))))
        .map(|row| {
            row.into_iter()
                .map(|(k, c)| match k {
                    Aug::Tag(t) => (t, c),
                    Aug::Img(_) => unreachable!("kernel rows have no image part"),
                })
                .collect()
        })
        .collect()
}

/// Full solution set of `Σ x_t image(t) = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution<T: Ord> {
    /// The solution vanishing at every kernel pivot (free variables set to zero).
    pub particular: Vector<T>,
    pub kernel: Vec<Vector<T>>,
}

/// Solves a linear system given by the images of its unknowns; `None` if inconsistent.
pub fn affine_solve<T, K, I>(field: Field, columns: I, target: &Vector<K>) -> Option<AffineSolution<T>>
where
    T: Ord + Clone,
    K: Ord + Clone,
    I: IntoIterator<Item = (T, Vector<K>)>,
{
    let e = augmented(field, columns);
    let t: Vector<Aug<T, K>> = target.iter().map(|(k, c)| (Aug::Img(k.clone()), c.clone())).collect();
    let residual = e.reduce(&t);
    if residual.keys().any(|k| matches!(k, Aug::Img(_))) {
        return None;
    }
    let particular = residual
        .into_iter()
        .map(|(k, c)| match k {
            Aug::Tag(t) => (t, -c),
            Aug::Img(_) => unreachable!(),
        })
        .collect();
    Some(AffineSolution {
        particular,
        kernel: kernel_rows(e),
    })
}

/// Inclusive range of total degrees a subspace lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegreeWindow {
    pub lo: u32,
    pub hi: u32,
}

impl DegreeWindow {
    pub fn new(lo: u32, hi: u32) -> Self {
        DegreeWindow { lo, hi }
    }

    pub fn exact(d: u32) -> Self {
        DegreeWindow { lo: d, hi: d }
    }

    pub fn upto(hi: u32) -> Self {
        DegreeWindow { lo: 0, hi }
    }

    pub fn contains(&self, d: u32) -> bool {
        self.lo <= d && d <= self.hi
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Reduced basis of a finite dimensional space of polynomials of bounded degree.
///
/// Vectors are monic with pairwise distinct leading monomials, and no vector
/// has a term at another vector's leading monomial.
#[derive(Clone, Debug)]
pub struct SubspaceBasis<S: Side> {
    ring: Ring,
    window: DegreeWindow,
    echelon: Echelon<Exponents>,
    vectors: Vec<Poly<S>>,
}

impl<S: Side> SubspaceBasis<S> {
    pub fn zero(ring: &Ring, window: DegreeWindow) -> Self {
        SubspaceBasis {
            ring: ring.clone(),
            window,
            echelon: Echelon::new(),
            vectors: Vec::new(),
        }
    }

    /// Span of `gens`; every term must have degree inside `window`.
    pub fn span<I: IntoIterator<Item = Poly<S>>>(ring: &Ring, window: DegreeWindow, gens: I) -> Result<Self> {
        let mut e = Echelon::new();
        for g in gens {
            same_ring(ring, g.ring())?;
            if let Some(bad) = g.support().find(|m| !window.contains(m.degree())) {
                return Err(Error::WindowMismatch {
                    left: window.to_string(),
                    right: format!("term of degree {}", bad.degree()),
                });
            }
            e.insert(g.into_map());
        }
        Ok(Self::from_echelon(ring, window, e))
    }

    fn from_echelon(ring: &Ring, window: DegreeWindow, echelon: Echelon<Exponents>) -> Self {
        let vectors = echelon.rows().map(|(_, v)| Poly::from_map(ring, v.clone())).collect();
        SubspaceBasis {
            ring: ring.clone(),
            window,
            echelon,
            vectors,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Basis vectors by decreasing leading monomial.
    pub fn vectors(&self) -> &[Poly<S>] {
        &self.vectors
    }

    pub fn echelon(&self) -> &Echelon<Exponents> {
        &self.echelon
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Exponents> + '_ {
        self.echelon.pivots().rev()
    }

    /// Number of basis vectors whose leading monomial has degree `d`.
    pub fn count_leading_degree(&self, d: u32) -> usize {
        self.echelon.pivots().filter(|m| m.degree() == d).count()
    }

    /// Normal form of `p` modulo the subspace.
    pub fn reduce(&self, p: &Poly<S>) -> Poly<S> {
        Poly::from_map(&self.ring, self.echelon.reduce(p.as_map()))
    }

    pub fn contains(&self, p: &Poly<S>) -> bool {
        self.echelon.contains(p.as_map())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.vectors.iter().all(|v| other.contains(v))
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        same_ring(&self.ring, &other.ring)?;
        if self.window != other.window {
            return Err(Error::WindowMismatch {
                left: self.window.to_string(),
                right: other.window.to_string(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut e = self.echelon.clone();
        for v in &other.vectors {
            e.insert(v.as_map().clone());
        }
        Ok(Self::from_echelon(&self.ring, self.window, e))
    }

    /// `self ∩ other`, from the kernel of `(x, y) ↦ Σ x_i a_i − Σ y_j b_j`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let field = self.ring.field();
        let minus = -field.one();
        let cols = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, a)| ((0u8, i), a.as_map().clone()))
            .chain(other.vectors.iter().enumerate().map(|(j, b)| {
                let mut v = b.as_map().clone();
                scale(&mut v, &minus);
                ((1u8, j), v)
            }));
        let mut e = Echelon::new();
        for k in kernel(field, cols) {
            let mut v = Vector::new();
            for ((side, i), c) in k {
                if side == 0 {
                    axpy(&mut v, self.vectors[i].as_map(), &c);
                }
            }
            e.insert(v);
        }
        Ok(Self::from_echelon(&self.ring, self.window, e))
    }

    /// Subspace of vectors involving only the variables with `keep[i]`.
    pub fn restrict_to_vars(&self, keep: &[bool]) -> Self {
        let allowed = |m: &Exponents| m.as_slice().iter().zip(keep).all(|(&e, &k)| k || e == 0);
        // kernel of the projection onto the forbidden monomials
        let field = self.ring.field();
        let cols = self.vectors.iter().enumerate().map(|(i, v)| {
            let img: Vector<Exponents> = v
                .as_map()
                .iter()
                .filter(|(m, _)| !allowed(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            (i, img)
        });
        let mut e = Echelon::new();
        for k in kernel(field, cols) {
            let mut v = Vector::new();
            for (i, c) in k {
                axpy(&mut v, self.vectors[i].as_map(), &c);
            }
            e.insert(v);
        }
        Self::from_echelon(&self.ring, self.window, e)
    }
}

impl<S: Side> PartialEq for SubspaceBasis<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.window == other.window && self.vectors == other.vectors
    }
}

impl<S: Side> Eq for SubspaceBasis<S> {}

pub fn span_intersect<S: Side>(a: &SubspaceBasis<S>, b: &SubspaceBasis<S>) -> Result<SubspaceBasis<S>> {
    a.intersect(b)
}

pub fn membership<S: Side>(v: &Poly<S>, basis: &SubspaceBasis<S>) -> bool {
    basis.contains(v)
}

/// Dense matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, data: Vec<Vec<Scalar>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            field,
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(field: Field, cols: usize, data: &[Vec<i64>]) -> Self {
        Self::from_rows(
            field,
            cols,
            data.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.data
            .iter()
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in r.iter().zip(x) {
                    acc += &(a * b);
                }
                acc
            })
            .collect()
    }

    // Columns keyed by Reverse(j) so that the leftmost nonzero entry is the pivot.
    fn row_vector(&self, i: usize) -> Vector<Reverse<usize>> {
        self.data[i]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (Reverse(j), c.clone()))
            .collect()
    }

    fn dense(&self, v: &Vector<Reverse<usize>>) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.cols];
        for (Reverse(j), c) in v {
            out[*j] = c.clone();
        }
        out
    }

    /// Reduced row echelon form and pivot columns (increasing).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let e = Echelon::from_vectors((0..self.rows).map(|i| self.row_vector(i)));
        let mut pivots = Vec::new();
        let mut data = Vec::new();
        for (Reverse(j), row) in e.rows() {
            pivots.push(*j);
            data.push(self.dense(row));
        }
        while data.len() < self.rows {
            data.push(vec![self.field.zero(); self.cols]);
        }
        (Matrix::from_rows(self.field, self.cols, data), pivots)
    }

    pub fn rank(&self) -> usize {
        Echelon::from_vectors((0..self.rows).map(|i| self.row_vector(i))).rank()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let cols = (0..self.cols).map(|j| {
            let image: Vector<usize> = (0..self.rows)
                .filter(|&i| !self.data[i][j].is_zero())
                .map(|i| (i, self.data[i][j].clone()))
                .collect();
            (Reverse(j), image)
        });
        kernel(self.field, cols).iter().map(|v| self.dense(v)).collect()
    }
}

pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    m.rref()
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contract::contract;
    use crate::monomial::monomials_of_degree;
    use crate::poly::{DPPolynomial, Polynomial};
    use crate::ring::{Mode, RingContext};

    const Q: Field = Field::Rational;

    #[test]
    fn identity_and_zero() {
        let id = Matrix::identity(Q, 3);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
        assert!(id.kernel_basis().is_empty());
        let z = Matrix::zeros(Q, 2, 3);
        let (r, p) = z.rref();
        assert_eq!(r, z);
        assert!(p.is_empty());
        assert_eq!(z.kernel_basis().len(), 3);
    }

    #[test]
    fn small_rref() {
        let m = Matrix::from_i64(Q, 3, &[vec![0, 2, 4], vec![1, 1, 1], vec![1, 2, 3]]);
        let (r, p) = m.rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(
            r,
            Matrix::from_i64(Q, 3, &[vec![1, 0, -1], vec![0, 1, 2], vec![0, 0, 0]])
        );
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn catalecticant_kernel() {
        // Degree 2 part of Ann(X^[3] + Y^[2]) is spanned by xy.
        let r = RingContext::with_vars(&["x", "y"], Q, Mode::Graded).unwrap();
        let f = DPPolynomial::parse(&r, "X^[3]+Y^[2]").unwrap();
        let cols = monomials_of_degree(2, 2).into_iter().map(|m| {
            let h = Polynomial::monomial(&r, m.clone(), Q.one());
            (m, contract(&h, &f).unwrap().into_map())
        });
        let k = kernel(Q, cols);
        assert_eq!(k.len(), 1);
        assert_eq!(Polynomial::from_map(&r, k[0].clone()).to_string(), "x*y");
    }

    #[test]
    fn solving_for_a_primitive() {
        // z1 ∘ G = Y^[2] over degree 3 in two variables.
        let r = RingContext::with_vars(&["x", "y"], Q, Mode::Graded).unwrap();
        let x = Polynomial::var(&r, 0);
        let target = DPPolynomial::parse(&r, "Y^[2]").unwrap();
        let cols = crate::monomial::monomials_in_window(2, 0, 3).into_iter().map(|m| {
            let g = DPPolynomial::monomial(&r, m.clone(), Q.one());
            (m, contract(&x, &g).unwrap().into_map())
        });
        let sol = affine_solve(Q, cols, target.as_map()).unwrap();
        assert_eq!(DPPolynomial::from_map(&r, sol.particular).to_string(), "X*Y^[2]");
        let ker: Vec<String> = sol
            .kernel
            .into_iter()
            .map(|v| DPPolynomial::from_map(&r, v).to_string())
            .collect();
        assert_eq!(ker, ["Y^[3]", "Y^[2]", "Y", "1"]);
    }

    #[test]
    fn zero_target_gives_zero_particular() {
        let m = Matrix::from_i64(Q, 2, &[vec![1, 1]]);
        let cols = (0..2).map(|j| (j, BTreeMap::from([(0usize, m.get(0, j).clone())])));
        let sol = affine_solve(Q, cols, &Vector::<usize>::new()).unwrap();
        assert!(sol.particular.is_empty());
        assert_eq!(sol.kernel.len(), 1);
    }

    #[test]
    fn inconsistent_system() {
        let cols = vec![(0usize, BTreeMap::from([(0usize, Q.one())]))];
        let target = BTreeMap::from([(1usize, Q.one())]);
        assert!(affine_solve(Q, cols, &target).is_none());
    }

    #[test]
    fn intersection_of_spans() {
        let r = RingContext::with_vars(&["x", "y"], Q, Mode::Graded).unwrap();
        let p = |s: &str| DPPolynomial::parse(&r, s).unwrap();
        let w = DegreeWindow::exact(2);
        let a = SubspaceBasis::span(&r, w, [p("X^[2]"), p("X*Y+Y^[2]")]).unwrap();
        let b = SubspaceBasis::span(&r, w, [p("X*Y"), p("Y^[2]")]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&p("X*Y+Y^[2]")));
        assert!(a.intersect(&a).unwrap().same_span(&a));
        let zero = SubspaceBasis::zero(&r, w);
        assert!(a.intersect(&zero).unwrap().is_zero());
        let other = SubspaceBasis::<crate::poly::Divided>::zero(&r, DegreeWindow::exact(3));
        assert!(a.intersect(&other).is_err());
    }

    #[test]
    fn vectors_outside_the_window_are_rejected() {
        let r = RingContext::with_vars(&["x"], Q, Mode::Graded).unwrap();
        let p = DPPolynomial::parse(&r, "X^[3]").unwrap();
        assert!(SubspaceBasis::span(&r, DegreeWindow::upto(2), [p]).is_err());
    }
}
