//! Buchberger's algorithm for homogeneous ideals under degrevlex, and the
//! invariants read off a Gröbner basis: Hilbert series, Krull dimension,
//! regular sequences and socle dimension.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::{kernel, Vector};
use crate::monomial::{monomials_of_degree, Exponents};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// Reduced, monic Gröbner basis with respect to degrevlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Elements by increasing degree, then decreasing leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Exponents> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect()
    }

    /// Remainder of `f` on division by the basis; no term is divisible by a leading monomial.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(f, &self.elements)
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.degree() == Some(0))
    }

    /// Every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                if !reduce(&s_polynomial(a, b), &self.elements).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn is_standard(&self, m: &Exponents) -> bool {
        !self
            .elements
            .iter()
            .any(|g| g.leading_monomial().expect("nonzero").divides(m))
    }

    /// Monomials of degree `j` outside the leading term ideal.
    pub fn standard_monomials(&self, j: u32) -> Vec<Exponents> {
        monomials_of_degree(self.ring.n(), j)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect()
    }
}

fn s_polynomial(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let la = a.leading_monomial().expect("nonzero");
    let lb = b.leading_monomial().expect("nonzero");
    let l = la.lcm(lb);
    let ca = a.leading_coeff().unwrap().inv().unwrap();
    let cb = b.leading_coeff().unwrap().inv().unwrap();
    let ta = a.mul_monomial(&l.checked_sub(la).unwrap(), &ca);
    let tb = b.mul_monomial(&l.checked_sub(lb).unwrap(), &cb);
    &ta - &tb
}

fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.ring());
    while let Some((m, c)) = p.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        let div = basis
            .iter()
            .find(|g| g.leading_monomial().expect("nonzero").divides(&m));
        match div {
            Some(g) => {
                let q = m.checked_sub(g.leading_monomial().unwrap()).unwrap();
                let coef = &c / g.leading_coeff().unwrap();
                p.add_scaled(&g.mul_monomial(&q, &coef), &-f.ring().field().one());
            }
            None => {
                rem.add_term(m.clone(), &c);
                p.add_term(m, &-&c);
            }
        }
    }
    rem
}

/// Reduced Gröbner basis of a homogeneous ideal.
///
/// Pairs are taken by smallest lcm degree, skipping those removed by the
/// product and chain criteria.
pub fn buchberger(ideal: &Ideal) -> Result<GroebnerBasis> {
    let ring = ideal.ring().clone();
    if let Some(g) = ideal.gens().iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    let mut g: Vec<Polynomial> = Vec::new();
    let mut pairs: BTreeSet<(u32, Exponents, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    let add = |g: &mut Vec<Polynomial>, pairs: &mut BTreeSet<(u32, Exponents, usize, usize)>, p: Polynomial| {
        let k = g.len();
        let lp = p.leading_monomial().unwrap().clone();
        for (i, h) in g.iter().enumerate() {
            let l = h.leading_monomial().unwrap().lcm(&lp);
            pairs.insert((l.degree(), l, i, k));
        }
        g.push(p);
    };

    for f in ideal.gens() {
        let r = reduce(f, &g);
        if !r.is_zero() {
            add(&mut g, &mut pairs, r.monic());
        }
    }
    while let Some(first) = pairs.iter().next().cloned() {
        pairs.remove(&first);
        let (_, l, i, j) = first;
        done.insert((i, j));
        let li = g[i].leading_monomial().unwrap();
        let lj = g[j].leading_monomial().unwrap();
        if li.is_coprime(lj) {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].leading_monomial().unwrap().divides(&l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&g[i], &g[j]), &g);
        if !r.is_zero() {
            add(&mut g, &mut pairs, r.monic());
        }
    }
    Ok(GroebnerBasis {
        elements: interreduce(g),
        ring,
    })
}

fn interreduce(g: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose leading monomial is divisible by another one
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let lp = p.leading_monomial().unwrap();
        let redundant = g.iter().enumerate().any(|(k, q)| {
            let lq = q.leading_monomial().unwrap();
            k != i && lq.divides(lp) && (lq != lp || k < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<Polynomial> = Vec::new();
    for (i, p) in minimal.iter().enumerate() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, q)| q.clone())
            .collect();
        let (lm, lc) = p.leading_term().unwrap();
        let head = Polynomial::monomial(p.ring(), lm.clone(), lc.clone());
        let tail = reduce(&(p - &head), &others);
        out.push((&head + &tail).monic());
    }
    out.sort_by(crate::ideal::generator_order);
    out
}

pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial> {
    same_ring(f.ring(), g.ring())?;
    Ok(g.normal_form(f))
}

/// Hilbert series data of `R/I`: `HS(t) = h(t) / (1-t)^dimension`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// `h(t)`, lowest coefficient first; empty for the unit ideal.
    pub numerator: Vec<i64>,
    pub dimension: usize,
    /// `h(1)`.
    pub multiplicity: i64,
    /// `deg h`, the socle degree of an Artinian reduction.
    pub regularity: usize,
    /// Numerator over `(1-t)^n`, before cancellation.
    pub raw_numerator: Vec<i64>,
}

impl HilbertData {
    fn from_raw(n: usize, raw: Vec<i64>) -> Self {
        let mut h = trim(raw.clone());
        let mut k = 0;
        while !h.is_empty() && h.iter().sum::<i64>() == 0 {
            h = divide_one_minus_t(&h);
            k += 1;
        }
        let dimension = if h.is_empty() { 0 } else { n - k };
        HilbertData {
            multiplicity: h.iter().sum(),
            regularity: h.len().saturating_sub(1),
            numerator: h,
            dimension,
            raw_numerator: raw,
        }
    }

    /// `HF(0..len)`.
    pub fn hilbert_function(&self, len: usize) -> Vec<i64> {
        let mut c = vec![0i64; len];
        for (i, &a) in self.numerator.iter().enumerate() {
            if i < len {
                c[i] = a;
            }
        }
        for _ in 0..self.dimension {
            for i in 1..len {
                c[i] += c[i - 1];
            }
        }
        c
    }

    /// `(e_0, e_1)` from `h`: `e_0 = h(1)`, `e_1 = h'(1)`.
    pub fn e0_e1(&self) -> (i64, i64) {
        let e1 = self.numerator.iter().enumerate().map(|(i, &a)| i as i64 * a).sum();
        (self.multiplicity, e1)
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn divide_one_minus_t(p: &[i64]) -> Vec<i64> {
    // q with (1-t) q = p, valid when p(1) = 0
    let mut q = Vec::with_capacity(p.len());
    let mut acc = 0;
    for &a in &p[..p.len() - 1] {
        acc += a;
        q.push(acc);
    }
    trim(q)
}

/// Numerator `N(t)` of `HS(R/J) = N(t)/(1-t)^n` for a monomial ideal `J`.
pub fn monomial_numerator(gens: &[Exponents]) -> Vec<i64> {
    let gens = minimal_monomials(gens.to_vec());
    if gens.is_empty() {
        return vec![1];
    }
    let n = gens[0].len();
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1];
        for g in &gens {
            let mut f = vec![0; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // pivot on the variable occurring in the most generators
    let mut best = (0, 0);
    for x in 0..n {
        let count = gens.iter().filter(|g| g.get(x) > 0).count();
        if count > best.1 {
            best = (x, count);
        }
    }
    let x = best.0;
    let unit = Exponents::unit(n, x);
    let mut plus: Vec<Exponents> = gens.iter().filter(|g| g.get(x) == 0).cloned().collect();
    plus.push(unit.clone());
    let colon: Vec<Exponents> = gens
        .iter()
        .map(|g| g.checked_sub(&unit).unwrap_or_else(|| g.clone()))
        .collect();
    let a = monomial_numerator(&plus);
    let b = monomial_numerator(&colon);
    poly_add(&a, &poly_mul(&[0, 1], &b))
}

fn minimal_monomials(mut gens: Vec<Exponents>) -> Vec<Exponents> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Exponents> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Hilbert series of `R/I` from the leading term ideal.
pub fn hilbert_series(g: &GroebnerBasis) -> HilbertData {
    let raw = monomial_numerator(&g.leading_monomials());
    HilbertData::from_raw(g.ring().n(), trim(raw))
}

impl Ideal {
    pub fn hilbert(&self) -> Result<HilbertData> {
        Ok(hilbert_series(self.groebner()?))
    }
}

/// True iff each `z_k` is a nonzerodivisor on `R/(I + (z_1..z_{k-1}))`,
/// tested by `HS_k = (1-t) HS_{k-1}`.
pub fn is_regular_sequence(ideal: &Ideal, z: &[Polynomial]) -> Result<bool> {
    let mut cur = ideal.clone();
    let mut prev = cur.hilbert()?.raw_numerator;
    for l in z {
        same_ring(ideal.ring(), l.ring())?;
        cur = cur.with([l.clone()])?;
        let next = cur.hilbert()?.raw_numerator;
        if trim(next.clone()) != poly_mul(&[1, -1], &prev) {
            return Ok(false);
        }
        prev = next;
    }
    Ok(true)
}

/// `dim_k (I : m) / I` for Artinian `R/I`.
pub fn socle_dim(ideal: &Ideal) -> Result<usize> {
    let g = ideal.groebner()?;
    let hd = hilbert_series(g);
    if hd.numerator.is_empty() {
        return Ok(0);
    }
    if hd.dimension > 0 {
        return Err(Error::NotArtinian);
    }
    let ring = ideal.ring();
    let n = ring.n();
    let one = ring.field().one();
    let mut total = 0;
    for j in 0..=hd.regularity as u32 {
        let cols = g.standard_monomials(j).into_iter().map(|m| {
            let mut img: Vector<(usize, Exponents)> = Vector::new();
            for i in 0..n {
                let f = Polynomial::monomial(ring, m.add(&Exponents::unit(n, i)), one.clone());
                for (e, c) in g.normal_form(&f).into_map() {
                    img.insert((i, e), c);
                }
            }
            (m, img)
        });
        total += kernel(ring.field(), cols).len();
    }
    Ok(total)
}

/// Minimal homogeneous generators.
pub fn minimal_generators(ideal: &Ideal) -> Result<Vec<Polynomial>> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous(ideal.to_string()));
    }
    Ok(ideal.minimalize().gens().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Mode, RingContext};
    use crate::scalar::Field;

    fn ring(vars: &[&str]) -> Ring {
        RingContext::with_vars(vars, Field::Rational, Mode::Graded).unwrap()
    }

    #[test]
    fn principal_ideal() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, "2x^2-4y^2").unwrap();
        let g = i.groebner().unwrap();
        assert_eq!(g.elements().len(), 1);
        assert_eq!(g.elements()[0].to_string(), "x^2-2*y^2");
    }

    #[test]
    fn generators_already_a_basis() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::parse(&r, "x, yz, y^3+z^3").unwrap();
        let g = i.groebner().unwrap();
        // S(yz, y^3+z^3) = z^4 is not reduced by the generators
        let names: Vec<String> = g.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["x", "y*z", "y^3+z^3", "z^4"]);
        assert!(g.is_groebner());
        let f = Polynomial::parse(&r, "x*y^3").unwrap();
        assert!(g.normal_form(&f).is_zero());
        assert_eq!(socle_dim(&i).unwrap(), 1);
    }

    #[test]
    fn hilbert_series_basics() {
        let r = ring(&["x", "y", "z"]);
        let h = Ideal::zero(&r).hilbert().unwrap();
        assert_eq!((h.numerator.clone(), h.dimension), (vec![1], 3));
        let h = Ideal::parse(&r, "x, yz, y^3+z^3").unwrap().hilbert().unwrap();
        assert_eq!(h.numerator, vec![1, 2, 2, 1]);
        assert_eq!(h.dimension, 0);
        assert_eq!(h.multiplicity, 6);
        assert_eq!(h.regularity, 3);
        let h = Ideal::unit(&r).hilbert().unwrap();
        assert!(h.numerator.is_empty());
    }

    #[test]
    fn regular_elements() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::parse(&r, "yz+xz, y^3+z^3-xy^2+x^2y-x^3").unwrap();
        let x = Polynomial::var(&r, 0);
        assert!(is_regular_sequence(&i, std::slice::from_ref(&x)).unwrap());
        let j = Ideal::parse(&r, "x").unwrap();
        assert!(!is_regular_sequence(&j, &[x]).unwrap());
    }

    #[test]
    fn socle_of_small_rings() {
        let r = ring(&["x", "y"]);
        assert_eq!(socle_dim(&Ideal::parse(&r, "x^2, y^2").unwrap()).unwrap(), 1);
        assert_eq!(socle_dim(&Ideal::maximal_power(&r, 2)).unwrap(), 2);
        assert!(socle_dim(&Ideal::parse(&r, "x^2").unwrap()).is_err());
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, "xy, y^2-x^3").unwrap();
        assert!(matches!(i.groebner(), Err(Error::NotHomogeneous(_))));
    }
}
