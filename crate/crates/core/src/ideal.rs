//! Ideals of `R` given by generators, with degree-bounded coefficient spans.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::linalg::{DegreeWindow, Echelon, SubspaceBasis, Vector};
use crate::monomial::{monomials_in_window, monomials_of_degree, Exponents};
use crate::parse::{format_list, parse_list};
use crate::poly::{Ordinary, Polynomial};
use crate::ring::{same_ring, Mode, Ring};

/// Ideal of `R` generated by a list of polynomials.
///
/// Generators are stored monic, without zeros or repeats, ordered by
/// increasing degree and then decreasing leading monomial. They need not be minimal.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new<I: IntoIterator<Item = Polynomial>>(ring: &Ring, gens: I) -> Result<Self> {
        let mut out: Vec<Polynomial> = Vec::new();
        for g in gens {
            same_ring(ring, g.ring())?;
            if g.is_zero() {
                continue;
            }
            let g = g.monic();
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out.sort_by(generator_order);
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            gb: OnceLock::new(),
        })
    }

    /// Comma separated generators, e.g. `"xy, y^2-x^3"`.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ideal::new(ring, []);
        }
        Ideal::new(ring, parse_list::<Ordinary>(ring, text)?)
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal::new(ring, []).expect("empty generator list")
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal::new(ring, [Polynomial::one(ring)]).expect("same ring")
    }

    /// The maximal ideal `(z_1, ..., z_n)`.
    pub fn maximal(ring: &Ring) -> Self {
        Ideal::new(ring, (0..ring.n()).map(|i| Polynomial::var(ring, i))).expect("same ring")
    }

    /// `m^k`.
    pub fn maximal_power(ring: &Ring, k: u32) -> Self {
        let one = ring.field().one();
        Ideal::new(
            ring,
            monomials_of_degree(ring.n(), k)
                .into_iter()
                .map(|m| Polynomial::monomial(ring, m, one.clone())),
        )
        .expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// True for the zero ideal.
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn has_unit_generator(&self) -> bool {
        self.gens.iter().any(|g| g.degree() == Some(0))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(Polynomial::degree).max()
    }

    /// `self + (extra)`.
    pub fn with<I: IntoIterator<Item = Polynomial>>(&self, extra: I) -> Result<Self> {
        Ideal::new(&self.ring, self.gens.iter().cloned().chain(extra))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        self.with(other.gens.iter().cloned())
    }

    /// Reduced Gröbner basis, computed once (homogeneous generators only).
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = buchberger(self)?;
        Ok(self.gb.get_or_init(|| g))
    }

    /// Ideal membership via the Gröbner basis.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        same_ring(&self.ring, f.ring())?;
        Ok(self.groebner()?.normal_form(f).is_zero())
    }

    /// True if every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals by mutual membership of generators.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    fn require_homogeneous(&self) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(Error::NotHomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    /// `I_j`, spanned by the degree `j` multiples of the generators.
    pub fn degree_part(&self, j: u32) -> Result<SubspaceBasis<Ordinary>> {
        self.require_homogeneous()?;
        let n = self.ring.n();
        let mut e = Echelon::new();
        for g in &self.gens {
            let d = g.degree().expect("nonzero generator");
            if d > j {
                continue;
            }
            let one = self.ring.field().one();
            for m in monomials_of_degree(n, j - d) {
                e.insert(g.mul_monomial(&m, &one).into_map());
            }
        }
        Ok(basis_from(&self.ring, DegreeWindow::exact(j), e))
    }

    /// `(I + m^n) / m^n` as a subspace of `R_{<n}`: truncations of all multiples.
    pub fn truncated_part(&self, n: u32) -> SubspaceBasis<Ordinary> {
        let hi = n.saturating_sub(1);
        let window = DegreeWindow::upto(hi);
        if n == 0 {
            return SubspaceBasis::zero(&self.ring, window);
        }
        let one = self.ring.field().one();
        let mut e = Echelon::new();
        for g in &self.gens {
            let ord = g.order().expect("nonzero generator");
            if ord > hi {
                continue;
            }
            for m in monomials_in_window(self.ring.n(), 0, hi - ord).into_iter().rev() {
                let v = g.mul_monomial(&m, &one).truncate(hi);
                e.insert(v.into_map());
            }
        }
        basis_from(&self.ring, window, e)
    }

    /// Minimal generators.
    ///
    /// Homogeneous ideals are minimalized degree by degree: the new generators
    /// in degree `j` are the reduced echelon rows completing `R_1 · I_{<j}`.
    /// Otherwise generators are selected greedily from the reduced basis of
    /// their span, skipping those in `m·I + m^{D+1}`, `D` the largest degree.
    pub fn minimalize(&self) -> Ideal {
        if self.has_unit_generator() {
            return Ideal::unit(&self.ring);
        }
        let gens = if self.is_homogeneous() {
            minimal_homogeneous(&self.ring, &self.gens)
        } else {
            minimal_local(&self.ring, &self.gens)
        };
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    pub fn mode(&self) -> Mode {
        self.ring.mode()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&format_list(&self.gens))
        }
    }
}

/// Increasing degree, then decreasing leading monomial.
pub(crate) fn generator_order(a: &Polynomial, b: &Polynomial) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.leading_monomial().cmp(&a.leading_monomial()))
        .then_with(|| a.to_string().cmp(&b.to_string()))
}

fn basis_from(ring: &Ring, window: DegreeWindow, e: Echelon<Exponents>) -> SubspaceBasis<Ordinary> {
    let vectors = e.into_rows().into_iter().map(|v| Polynomial::from_map(ring, v));
    SubspaceBasis::span(ring, window, vectors).expect("vectors inside window")
}

fn minimal_homogeneous(ring: &Ring, gens: &[Polynomial]) -> Vec<Polynomial> {
    let n = ring.n();
    let one = ring.field().one();
    let mut degrees: Vec<u32> = gens.iter().filter_map(Polynomial::degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut chosen: Vec<Polynomial> = Vec::new();
    for j in degrees {
        let mut lower = Echelon::new();
        for c in &chosen {
            let d = c.degree().expect("nonzero");
            for m in monomials_of_degree(n, j - d) {
                lower.insert(c.mul_monomial(&m, &one).into_map());
            }
        }
        let old: Vec<Exponents> = lower.pivots().cloned().collect();
        for g in gens.iter().filter(|g| g.degree() == Some(j)) {
            lower.insert(g.as_map().clone());
        }
        let mut new_rows: Vec<Polynomial> = lower
            .rows()
            .filter(|(p, _)| old.binary_search(p).is_err())
            .map(|(_, v)| Polynomial::from_map(ring, v.clone()))
            .collect();
        new_rows.reverse();
        chosen.extend(new_rows);
    }
    chosen
}

fn minimal_local(ring: &Ring, gens: &[Polynomial]) -> Vec<Polynomial> {
    let hi = gens.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let one = ring.field().one();
    let mut span = Echelon::new();
    for g in gens {
        span.insert(g.as_map().clone());
    }
    let mut e: Echelon<Exponents> = Echelon::new();
    for g in gens {
        let ord = g.order().expect("nonzero");
        if ord >= hi {
            continue;
        }
        for m in monomials_in_window(ring.n(), 1, hi - ord) {
            e.insert(g.mul_monomial(&m, &one).truncate(hi).into_map());
        }
    }
    let mut chosen = Vec::new();
    let basis: Vec<Vector<Exponents>> = span.into_rows();
    for v in basis.into_iter().rev() {
        if e.insert(v.clone()).is_some() {
            chosen.push(Polynomial::from_map(ring, v));
        }
    }
    chosen
}
