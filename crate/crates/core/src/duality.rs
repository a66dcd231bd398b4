//! Macaulay duality: cyclic submodules of `Γ`, annihilators, inverse systems
//! and Hilbert functions.
//!
//! Subspaces of `Γ` are kept in reduced echelon form with respect to a
//! degree-compatible order, so for a basis `B` of `W ⊂ Γ` the vectors with
//! leading degree `≤ i` span `W ∩ Γ_{≤i}`. The Hilbert function of the
//! associated graded module is therefore the count of leading degrees.

use std::collections::VecDeque;
use std::ops::RangeInclusive;

use crate::contract::{contract, contract_monomial};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::{kernel, DegreeWindow, Echelon, SubspaceBasis, Vector};
use crate::monomial::{monomials_in_window, monomials_of_degree, Exponents};
use crate::poly::{DPPolynomial, Divided, Polynomial};
use crate::ring::{same_ring, Mode, Ring};

/// Degree `i` piece of the associated graded module of `W ⊂ Γ`.
///
/// The basis is homogeneous of degree `i`: the top-degree forms of the
/// elements of `W` with leading degree `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSlice {
    pub degree: u32,
    pub basis: SubspaceBasis<Divided>,
}

impl GradedSlice {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

fn max_degree(gens: &[DPPolynomial]) -> u32 {
    gens.iter().filter_map(DPPolynomial::degree).max().unwrap_or(0)
}

/// `⟨gens⟩_R` as a subspace of `Γ_{≤D}`, `D` the largest degree of a generator.
pub fn module_basis(ring: &Ring, gens: &[DPPolynomial]) -> Result<SubspaceBasis<Divided>> {
    for g in gens {
        same_ring(ring, g.ring())?;
    }
    let n = ring.n();
    let mut e: Echelon<Exponents> = Echelon::new();
    let mut queue: VecDeque<DPPolynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    while let Some(v) = queue.pop_front() {
        if e.insert(v.as_map().clone()).is_some() {
            for i in 0..n {
                let w = contract_monomial(&Exponents::unit(n, i), &v);
                if !w.is_zero() {
                    queue.push_back(w);
                }
            }
        }
    }
    let window = DegreeWindow::upto(max_degree(gens));
    SubspaceBasis::span(
        ring,
        window,
        e.into_rows().into_iter().map(|v| DPPolynomial::from_map(ring, v)),
    )
}

/// Associated graded slices of a subspace, for each degree in `degrees`.
pub fn graded_slices(w: &SubspaceBasis<Divided>, degrees: RangeInclusive<u32>) -> Vec<GradedSlice> {
    degrees
        .map(|i| {
            let forms = w
                .vectors()
                .iter()
                .filter(|v| v.degree() == Some(i))
                .map(|v| v.homogeneous_part(i));
            GradedSlice {
                degree: i,
                basis: SubspaceBasis::span(w.ring(), DegreeWindow::exact(i), forms).expect("homogeneous forms"),
            }
        })
        .collect()
}

/// `⟨gens⟩_R` organized by degree, up to `degree_bound` (default: the largest generator degree).
pub fn module_span(ring: &Ring, gens: &[DPPolynomial], degree_bound: Option<u32>) -> Result<Vec<GradedSlice>> {
    let w = module_basis(ring, gens)?;
    if w.is_zero() {
        return Ok(Vec::new());
    }
    let hi = degree_bound.unwrap_or_else(|| max_degree(gens));
    Ok(graded_slices(&w, 0..=hi))
}

/// Slice dimensions with trailing zeros removed.
pub fn hilbert_function(slices: &[GradedSlice]) -> Vec<usize> {
    let mut hf: Vec<usize> = slices.iter().map(GradedSlice::dim).collect();
    while hf.last() == Some(&0) {
        hf.pop();
    }
    hf
}

/// Hilbert function of `R/Ann(W)` straight from a basis of `W`.
pub fn hilbert_function_of(w: &SubspaceBasis<Divided>) -> Vec<usize> {
    let top = w.vectors().iter().filter_map(DPPolynomial::degree).max();
    match top {
        None => Vec::new(),
        Some(top) => (0..=top).map(|i| w.count_leading_degree(i)).collect(),
    }
}

/// `dim_k ⟨F⟩_R`.
pub fn module_dim(f: &DPPolynomial) -> usize {
    module_basis(f.ring(), std::slice::from_ref(f))
        .map(|w| w.dim())
        .unwrap_or(0)
}

/// Elements of `R` of degree in `window` annihilating every generator.
///
/// Homogeneous generators are handled one degree at a time (the contraction
/// map is block diagonal); otherwise a single kernel over the window is taken.
pub fn annihilator_space(
    ring: &Ring,
    gens: &[DPPolynomial],
    window: DegreeWindow,
) -> Result<SubspaceBasis<crate::poly::Ordinary>> {
    for g in gens {
        same_ring(ring, g.ring())?;
    }
    let field = ring.field();
    let one = field.one();
    let images = |ms: Vec<Exponents>| {
        ms.into_iter().map(|m| {
            let h = Polynomial::monomial(ring, m.clone(), one.clone());
            let mut img: Vector<(usize, Exponents)> = Vector::new();
            for (k, g) in gens.iter().enumerate() {
                for (e, c) in contract(&h, g).expect("same ring").into_map() {
                    img.insert((k, e), c);
                }
            }
            (m, img)
        })
    };
    let mut vectors = Vec::new();
    if gens.iter().all(DPPolynomial::is_homogeneous) {
        for j in window.lo..=window.hi {
            vectors.extend(kernel(field, images(monomials_of_degree(ring.n(), j))));
        }
    } else {
        vectors = kernel(field, images(monomials_in_window(ring.n(), window.lo, window.hi)));
    }
    SubspaceBasis::span(ring, window, vectors.into_iter().map(|v| Polynomial::from_map(ring, v)))
}

/// Minimal generators of `Ann_R(F)` of degree `≤ gen_bound` (default `deg F + 1`).
///
/// With the default bound the result generates `Ann_R(F)`.
pub fn ann_cyclic(f: &DPPolynomial, gen_bound: Option<u32>) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::UnitIdeal("the zero element is annihilated by 1".into()));
    }
    ann_module(f.ring(), std::slice::from_ref(f), gen_bound)
}

/// Minimal generators of `⋂ Ann_R(G)` of degree `≤ degree_bound` (default `max deg G + 1`).
pub fn ann_module(ring: &Ring, gens: &[DPPolynomial], degree_bound: Option<u32>) -> Result<Ideal> {
    let gens: Vec<DPPolynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Err(Error::UnitIdeal("no nonzero generators".into()));
    }
    let bound = degree_bound.unwrap_or_else(|| max_degree(&gens) + 1);
    let space = annihilator_space(ring, &gens, DegreeWindow::upto(bound))?;
    Ideal::new(ring, space.vectors().iter().cloned()).map(|i| i.minimalize())
}

/// `(Ann_R(gens) ∩ R_{≤b}) · R`, without minimalization.
pub fn ann_truncated(ring: &Ring, gens: &[DPPolynomial], b: u32) -> Result<Ideal> {
    let space = annihilator_space(ring, gens, DegreeWindow::upto(b))?;
    Ideal::new(ring, space.vectors().iter().cloned())
}

/// `(⋂ Ann_R(G) + m^t) / m^t`, as a subspace of `R_{<t}`.
///
/// `a ∈ R_{<t}` lies in it iff `(a ∘ G_k)_k = (b ∘ G_k)_k` for some `b ∈ m^t`, so the
/// result is exact even when `t ≤ deg G`.
pub fn ann_mod_power(ring: &Ring, gens: &[DPPolynomial], t: u32) -> Result<SubspaceBasis<crate::poly::Ordinary>> {
    if t == 0 {
        return Ok(SubspaceBasis::zero(ring, DegreeWindow::upto(0)));
    }
    for g in gens {
        same_ring(ring, g.ring())?;
    }
    let field = ring.field();
    let tuple_image = |m: &Exponents| {
        let mut img: Vector<(usize, Exponents)> = Vector::new();
        for (k, g) in gens.iter().enumerate() {
            for (e, c) in contract_monomial(m, g).into_map() {
                img.insert((k, e), c);
            }
        }
        img
    };
    // images of m^t: only monomials dividing some term contract nontrivially
    let mut high = std::collections::BTreeSet::new();
    for g in gens {
        for e in g.support() {
            divisors_of_degree_at_least(e, t, &mut high);
        }
    }
    let tails = Echelon::from_vectors(high.iter().map(tuple_image));
    let cols = monomials_in_window(ring.n(), 0, t - 1).into_iter().map(|m| {
        let img = tails.reduce(&tuple_image(&m));
        (m, img)
    });
    let vectors = kernel(field, cols);
    SubspaceBasis::span(
        ring,
        DegreeWindow::upto(t - 1),
        vectors.into_iter().map(|v| Polynomial::from_map(ring, v)),
    )
}

fn divisors_of_degree_at_least(e: &Exponents, t: u32, out: &mut std::collections::BTreeSet<Exponents>) {
    fn go(e: &[u32], i: usize, cur: &mut Vec<u32>, left: u32, t: u32, out: &mut std::collections::BTreeSet<Exponents>) {
        if i == e.len() {
            if cur.iter().sum::<u32>() >= t {
                out.insert(Exponents::new(cur.clone()));
            }
            return;
        }
        for k in 0..=e[i] {
            // remaining variables can add at most `left - e[i]`
            if cur.iter().sum::<u32>() + k + (left - e[i]) < t {
                continue;
            }
            cur.push(k);
            go(e, i + 1, cur, left - e[i], t, out);
            cur.pop();
        }
    }
    go(e.as_slice(), 0, &mut Vec::new(), e.degree(), t, out);
}

/// `I^⊥ ∩ Γ_{≤hi}`.
///
/// Graded mode: homogeneous `I`, per-degree orthogonal complements of `I_j`.
/// Local mode: the orthogonal complement of `(I + m^{hi+1})/m^{hi+1}`.
pub fn perp_basis(ideal: &Ideal, hi: u32) -> Result<SubspaceBasis<Divided>> {
    let ring = ideal.ring();
    match ring.mode() {
        Mode::Graded => {
            let mut vectors = Vec::new();
            for j in 0..=hi {
                let part = ideal.degree_part(j)?;
                vectors.extend(complement(ring, &part, monomials_of_degree(ring.n(), j)));
            }
            SubspaceBasis::span(ring, DegreeWindow::upto(hi), vectors)
        }
        Mode::Local => {
            let part = ideal.truncated_part(hi + 1);
            let vectors = complement(ring, &part, monomials_in_window(ring.n(), 0, hi));
            SubspaceBasis::span(ring, DegreeWindow::upto(hi), vectors)
        }
    }
}

/// Orthogonal complement of `v ⊂ R` inside the span of the dual monomials `ms`.
fn complement(ring: &Ring, v: &SubspaceBasis<crate::poly::Ordinary>, ms: Vec<Exponents>) -> Vec<DPPolynomial> {
    // For a non-pivot monomial m, Z^[m] - Σ_r r[m] Z^[pivot(r)] pairs to zero with every row r.
    let e = v.echelon();
    let one = ring.field().one();
    ms.into_iter()
        .filter(|m| !e.is_pivot(m))
        .map(|m| {
            let mut f = DPPolynomial::monomial(ring, m.clone(), one.clone());
            for (p, row) in e.rows() {
                if let Some(c) = row.get(&m) {
                    f.add_term(p.clone(), &-c);
                }
            }
            f
        })
        .collect()
}

/// `(I^⊥)_i` for `i` in `degrees`. In local mode the truncation order is `hi + 1`.
pub fn perp_ideal(ideal: &Ideal, degrees: RangeInclusive<u32>) -> Result<Vec<GradedSlice>> {
    let w = perp_basis(ideal, *degrees.end())?;
    Ok(graded_slices(&w, degrees))
}

/// `HF_{R/I}(0..=hi)` through the inverse system.
pub fn hilbert_function_of_ideal(ideal: &Ideal, hi: u32) -> Result<Vec<usize>> {
    let w = perp_basis(ideal, hi)?;
    Ok((0..=hi).map(|i| w.count_leading_degree(i)).collect())
}
