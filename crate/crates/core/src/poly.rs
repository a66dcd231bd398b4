//! Sparse polynomials of `R` and sparse divided power polynomials of the
//! dual module `Γ`, sharing one representation distinguished by a marker type.
//!
//! `Γ` is used only as an `R`-module: no internal divided power product is
//! provided. [`DPPolynomial::shift`] is the plain exponent shift
//! `Z^[L] ↦ Z^[L+M]` that builds primitives `G = Z_1 H + C`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::monomial::Exponents;
use crate::ring::{same_ring, Ring};
use crate::scalar::Scalar;

/// Marker distinguishing `R` from `Γ`.
pub trait Side: Clone + Copy + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    /// True for the divided power module (names print uppercase with `^[k]`).
    const DIVIDED: bool;
}

/// Elements of the polynomial ring `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ordinary;

/// Elements of the divided power module `Γ`, written in the basis `Z^[L]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Divided;

impl Side for Ordinary {
    const DIVIDED: bool = false;
}

impl Side for Divided {
    const DIVIDED: bool = true;
}

/// Sparse linear combination of monomials; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<S: Side> {
    ring: Ring,
    terms: BTreeMap<Exponents, Scalar>,
    side: PhantomData<S>,
}

pub type Polynomial = Poly<Ordinary>;
pub type DPPolynomial = Poly<Divided>;

impl<S: Side> Poly<S> {
    pub fn zero(ring: &Ring) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
            side: PhantomData,
        }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        Self::monomial(ring, Exponents::zero(ring.n()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn monomial(ring: &Ring, exps: Exponents, c: Scalar) -> Self {
        debug_assert_eq!(exps.len(), ring.n());
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `z_i` (or `Z_i` on the dual side).
    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Exponents::unit(ring.n(), i), ring.field().one())
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Scalar)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Coefficient map; keys are exponent vectors in increasing degrevlex order.
    pub fn as_map(&self) -> &BTreeMap<Exponents, Scalar> {
        &self.terms
    }

    pub fn into_map(self) -> BTreeMap<Exponents, Scalar> {
        self.terms
    }

    /// Inverse of [`Poly::as_map`]; zero coefficients are dropped.
    pub fn from_map(ring: &Ring, mut terms: BTreeMap<Exponents, Scalar>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        Poly {
            ring: ring.clone(),
            terms,
            side: PhantomData,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing degrevlex order; reverse for the canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> Option<&Scalar> {
        self.terms.get(e)
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = &Exponents> + '_ {
        self.terms.keys()
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Exponents> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    /// Total degree; `None` stands for the degree `-∞` of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_monomial().map(Exponents::degree)
    }

    /// Lowest degree of a term (the order in the local ring); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Exponents::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        self.filter_terms(|e| e.degree() == d)
    }

    /// Terms of degree at most `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        self.filter_terms(|e| e.degree() <= max_degree)
    }

    pub fn filter_terms(&self, keep: impl Fn(&Exponents) -> bool) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            side: PhantomData,
        }
    }

    /// True if variable `i` occurs in some term.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e.get(i) > 0)
    }

    pub fn add_term(&mut self, e: Exponents, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`; the rings are assumed equal.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            self.add_term(e.clone(), &(v * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
            side: PhantomData,
        }
    }

    /// Scales so that the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff().and_then(Scalar::inv) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        out.add_scaled(other, &self.ring.field().one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        out.add_scaled(other, &-self.ring.field().one());
        Ok(out)
    }

    /// Same terms, viewed in another (compatible) ring handle.
    pub fn with_ring(&self, ring: &Ring) -> Self {
        Poly {
            ring: ring.clone(),
            terms: self.terms.clone(),
            side: PhantomData,
        }
    }
}

impl Polynomial {
    /// Product in `R`.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        let mut out = Polynomial::zero(&self.ring);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.add(b), &(x * y));
            }
        }
        Ok(out)
    }

    /// `c * z^M * self`.
    pub fn mul_monomial(&self, m: &Exponents, c: &Scalar) -> Polynomial {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.add(m), v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
            side: PhantomData,
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl DPPolynomial {
    /// Exponent shift `Σ b_L Z^[L] ↦ Σ b_L Z^[L+M]`; not the divided power product.
    pub fn shift(&self, m: &Exponents) -> DPPolynomial {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.add(m), v.clone())).collect(),
            side: PhantomData,
        }
    }
}

/// Free-function form of [`DPPolynomial::shift`].
pub fn shift_mul(m: &Exponents, f: &DPPolynomial) -> DPPolynomial {
    f.shift(m)
}

// Operator forms panic when the rings differ; use the `try_*` methods to get an error instead.

impl<S: Side> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<S: Side> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<S: Side> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), -v)).collect(),
            side: PhantomData,
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial product")
    }
}

impl<S: Side> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = if S::DIVIDED {
            self.ring.dual_names()
        } else {
            self.ring.var_names()
        };
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if negative {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let abs = if negative { -c } else { c.clone() };
            let mono = format_monomial::<S>(e, names);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&mono)?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<S: Side> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn format_monomial<S: Side>(e: &Exponents, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.as_slice().iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ if S::DIVIDED => parts.push(format!("{}^[{k}]", names[i])),
            _ => parts.push(format!("{}^{k}", names[i])),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Mode, RingContext};
    use crate::scalar::Field;

    fn ring() -> Ring {
        RingContext::with_vars(&["x", "y"], Field::Rational, Mode::Graded).unwrap()
    }

    #[test]
    fn product_in_r() {
        let r = ring();
        let xy = Polynomial::parse(&r, "xy").unwrap();
        let g = Polynomial::parse(&r, "y^2-x^3").unwrap();
        assert_eq!((&xy * &g).to_string(), "-x^4*y+x*y^3");
    }

    #[test]
    fn additive_inverse_cancels() {
        let r = ring();
        let f = DPPolynomial::parse(&r, "X^[3]+2Y^[2]-X").unwrap();
        assert!((&f + &-&f).is_zero());
    }

    #[test]
    fn zero_has_no_degree() {
        let r = ring();
        assert_eq!(DPPolynomial::zero(&r).degree(), None);
        assert_eq!(DPPolynomial::one(&r).degree(), Some(0));
    }

    #[test]
    fn shift_is_exponent_shift() {
        let r = ring();
        let f = DPPolynomial::parse(&r, "Y^[2]").unwrap();
        let g = f.shift(&Exponents::new(vec![1, 0]));
        assert_eq!(g.to_string(), "X*Y^[2]");
    }

    #[test]
    fn mismatched_rings_error() {
        let a = ring();
        let b = RingContext::with_vars(&["x", "z"], Field::Rational, Mode::Graded).unwrap();
        let p = Polynomial::var(&a, 0);
        let q = Polynomial::var(&b, 0);
        assert!(p.try_add(&q).is_err());
        assert!(p.try_mul(&q).is_err());
    }
}
