//! Passing between Gorenstein ideals of dimension `d` and admissible families.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::admissible::{
    check_admissible, simplex, AdmissibleFamily, CheckReport, ConditionTwoMode, MultiIndex, Violation,
};
use crate::contract::contract_monomial;
use crate::duality::{ann_mod_power, ann_truncated, module_basis, perp_basis, perp_ideal};
use crate::error::{Error, Result};
use crate::groebner::{is_regular_sequence, socle_dim};
use crate::ideal::Ideal;
use crate::linalg::{affine_solve, SubspaceBasis, Vector};
use crate::monomial::Exponents;
use crate::poly::{DPPolynomial, Divided, Polynomial};
use crate::ring::{same_ring, Mode};

/// `(dim_k ⟨H⟩, deg H)`: multiplicity and regularity of the algebra whose
/// Artinian reduction has inverse system `⟨H⟩`.
pub fn invariants_from_h1(h: &DPPolynomial) -> Result<(usize, u32)> {
    let deg = h.degree().ok_or_else(|| Error::Precondition("H is zero".into()))?;
    Ok((module_basis(h.ring(), std::slice::from_ref(h))?.dim(), deg))
}

/// `Ann_R(H_{(b+1)_d})_{≤b} R`, with `b = deg H_{1_d} + 1` by default.
///
/// Nothing is claimed about the result being Gorenstein; feed it to
/// [`gorenstein_check`] for that.
pub fn finite_lift(fam: &AdmissibleFamily, max_gen_degree: Option<u32>) -> Result<Ideal> {
    let h1 = fam.h1();
    let r = h1
        .degree()
        .ok_or_else(|| Error::Precondition("H_{1_d} is zero".into()))?;
    let b = max_gen_degree.unwrap_or(r + 1);
    let l = MultiIndex::diagonal(fam.d(), b + 1);
    let h = fam
        .get(&l)
        .ok_or_else(|| Error::Family(format!("box too small: H{l} is needed")))?;
    Ok(ann_truncated(fam.ring(), std::slice::from_ref(h), b)?.minimalize())
}

/// `W = (I + (z))^⊥` and a generator of it, or `NotCyclic`.
fn reduction_generator(ideal: &Ideal, z: &[Polynomial]) -> Result<DPPolynomial> {
    let j = ideal.with(z.iter().cloned())?;
    let w = full_perp(&j)?;
    if w.is_zero() {
        return Err(Error::UnitIdeal(j.to_string()));
    }
    // the vector with the largest leading monomial lies outside m∘W when W is cyclic
    let h = w.vectors()[0].clone();
    if module_basis(ideal.ring(), std::slice::from_ref(&h))?.dim() != w.dim() {
        return Err(Error::NotCyclic(format!(
            "(I + (z))^⊥ has dimension {} but is not generated by one element",
            w.dim()
        )));
    }
    Ok(h)
}

/// `I^⊥` for an ideal of finite colength.
///
/// Graded: the Hilbert series gives the socle degree. Local: the truncation
/// order is raised until the associated graded Hilbert function hits zero.
fn full_perp(ideal: &Ideal) -> Result<SubspaceBasis<Divided>> {
    match ideal.mode() {
        Mode::Graded => {
            let hd = ideal.hilbert()?;
            if hd.numerator.is_empty() {
                return Ok(SubspaceBasis::zero(ideal.ring(), crate::linalg::DegreeWindow::upto(0)));
            }
            if hd.dimension > 0 {
                return Err(Error::NotArtinian);
            }
            perp_basis(ideal, hd.regularity as u32)
        }
        Mode::Local => {
            let mut hi = ideal.gens().iter().filter_map(Polynomial::degree).max().unwrap_or(0);
            loop {
                let w = perp_basis(ideal, hi)?;
                if w.count_leading_degree(hi) == 0 {
                    return Ok(w);
                }
                hi += 1;
                if hi > 64 {
                    return Err(Error::NotArtinian);
                }
            }
        }
    }
}

/// Family `{H_L : |L| ≤ t0}` with `⟨H_L⟩ = (I + (z^L))^⊥`.
///
/// `H_{1_d}` generates `(I + (z))^⊥`; each later entry is the solution of
/// `z_j ∘ G = H_{L-γ_j}` inside `(I + (z^L))^⊥` with zero kernel coordinates.
/// Graded ideals are solved in the single degree `s + |L| - d`, `s` the socle
/// degree of `R/(I + (z))`.
pub fn family_from_ideal(ideal: &Ideal, z: &[usize], t0: u32) -> Result<AdmissibleFamily> {
    let ring = ideal.ring().clone();
    let d = z.len();
    let zp: Vec<Polynomial> = z.iter().map(|&i| Polynomial::var(&ring, i)).collect();
    let h1 = reduction_generator(ideal, &zp)?;
    let s = h1.degree().unwrap_or(0);
    let mut entries: BTreeMap<MultiIndex, DPPolynomial> = BTreeMap::new();
    let probe = AdmissibleFamily::new(&ring, z.to_vec(), BTreeMap::from([(MultiIndex::ones(d), h1.clone())]))?;
    entries.insert(MultiIndex::ones(d), h1);
    for l in simplex(d, t0).into_iter().skip(1) {
        let il = ideal.with(probe.z_powers(&l))?;
        let w = match ring.mode() {
            Mode::Graded => {
                let deg = s + l.total() - d as u32;
                perp_ideal(&il, deg..=deg)?.pop().expect("one slice").basis
            }
            Mode::Local => full_perp(&il)?,
        };
        let cols = w.vectors().iter().enumerate().map(|(k, v)| {
            let mut img: Vector<(usize, Exponents)> = Vector::new();
            for (j, &zj) in z.iter().enumerate() {
                for (e, c) in contract_monomial(&Exponents::unit(ring.n(), zj), v).into_map() {
                    img.insert((j, e), c);
                }
            }
            (k, img)
        });
        let mut rhs: Vector<(usize, Exponents)> = Vector::new();
        for j in 0..d {
            if let Some(p) = l.dec(j) {
                for (e, c) in entries[&p].terms() {
                    rhs.insert((j, e.clone()), c.clone());
                }
            }
        }
        let sol = affine_solve(ring.field(), cols, &rhs)
            .ok_or_else(|| Error::InfeasibleLift(format!("no lift at {l}: z is not regular or I is not Gorenstein")))?;
        let mut g = DPPolynomial::zero(&ring);
        for (k, c) in sol.particular {
            g.add_scaled(&w.vectors()[k], &c);
        }
        entries.insert(l, g);
    }
    AdmissibleFamily::new(&ring, z.to_vec(), entries)
}

/// One test run by [`gorenstein_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateStep {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    pub ideal: Vec<String>,
    pub dimension: usize,
    pub multiplicity: i64,
    pub regularity: usize,
    pub is_gorenstein: bool,
    pub z_regular: bool,
    pub socle_dim: Option<usize>,
    pub artinian_reduction_hf: Vec<i64>,
    /// `(e_0, e_1)` of the Artinian reduction.
    pub reduction_e0_e1: (i64, i64),
    pub certificate: Vec<CertificateStep>,
}

/// Decides whether `R/I` is Gorenstein of dimension `d` with `z` a regular
/// sequence, reading multiplicity and regularity off `R/(I + (z))`.
pub fn gorenstein_check(ideal: &Ideal, d: usize, z: &[Polynomial]) -> Result<GorensteinReport> {
    for l in z {
        same_ring(ideal.ring(), l.ring())?;
    }
    let mut certificate = Vec::new();
    let hd = ideal.hilbert()?;
    certificate.push(CertificateStep {
        check: "dimension".into(),
        passed: hd.dimension == d,
        detail: format!(
            "Hilbert series numerator {:?} over (1-t)^{}",
            hd.numerator, hd.dimension
        ),
    });
    let regular = z.len() == d && is_regular_sequence(ideal, z)?;
    certificate.push(CertificateStep {
        check: "regular sequence".into(),
        passed: regular,
        detail: format!("{} linear forms, each step multiplies the numerator by (1-t)", z.len()),
    });
    let red = ideal.with(z.iter().cloned())?;
    let rhd = red.hilbert()?;
    let artinian = rhd.dimension == 0 && !rhd.numerator.is_empty();
    let socle = if artinian { Some(socle_dim(&red)?) } else { None };
    certificate.push(CertificateStep {
        check: "socle dimension".into(),
        passed: socle == Some(1),
        detail: match socle {
            Some(s) => format!("socle of R/(I + (z)) has dimension {s}"),
            None => "R/(I + (z)) is not Artinian".into(),
        },
    });
    let hf = if artinian {
        rhd.hilbert_function(rhd.regularity + 1)
    } else {
        Vec::new()
    };
    Ok(GorensteinReport {
        ideal: ideal.gens().iter().map(ToString::to_string).collect(),
        dimension: hd.dimension,
        multiplicity: rhd.multiplicity,
        regularity: rhd.regularity,
        is_gorenstein: hd.dimension == d && regular && socle == Some(1),
        z_regular: regular,
        socle_dim: socle,
        artinian_reduction_hf: hf,
        reduction_e0_e1: rhd.e0_e1(),
        certificate,
    })
}

/// Checks `Ann(H_L) + m^t = I + (z^L) + m^t` for every boxed `L`, and that
/// the family is admissible.
pub fn local_verify(fam: &AdmissibleFamily, claim: &Ideal, trunc: u32) -> Result<CheckReport> {
    same_ring(fam.ring(), claim.ring())?;
    let mut violations = Vec::new();
    for (l, h) in fam.entries() {
        let ann = ann_mod_power(fam.ring(), std::slice::from_ref(h), trunc)?;
        let want = claim.with(fam.z_powers(l))?.truncated_part(trunc);
        let missing = ann.vectors().iter().find(|a| !want.contains(a));
        let extra = want.vectors().iter().find(|a| !ann.contains(a));
        let detail = match (missing, extra) {
            (Some(a), _) => Some(format!("{a} annihilates H{l} but is not in I + (z^L) mod m^{trunc}")),
            (None, Some(a)) => Some(format!(
                "{a} is in I + (z^L) but does not annihilate H{l} mod m^{trunc}"
            )),
            (None, None) => None,
        };
        if let Some(detail) = detail {
            violations.push(Violation {
                index: l.clone(),
                direction: 0,
                condition: 3,
                witness: None,
                detail,
            });
        }
    }
    let own = CheckReport {
        passed: violations.is_empty(),
        violations,
    };
    Ok(own.merge(check_admissible(fam, ConditionTwoMode::Annihilator)?))
}

/// Default truncation for [`local_verify`]: two more than the largest entry degree.
pub fn default_trunc(fam: &AdmissibleFamily) -> u32 {
    fam.max_degree() + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingContext};
    use crate::scalar::Field;

    fn ring(vars: &[&str], mode: Mode) -> Ring {
        RingContext::with_vars(vars, Field::Rational, mode).unwrap()
    }

    #[test]
    fn invariants() {
        let r = ring(&["x", "y", "z"], Mode::Graded);
        let h = DPPolynomial::parse(&r, "Y^[3]-Z^[3]").unwrap();
        assert_eq!(invariants_from_h1(&h).unwrap(), (6, 3));
        assert!(invariants_from_h1(&DPPolynomial::zero(&r)).is_err());
    }

    #[test]
    fn non_gorenstein_reduction() {
        let r = ring(&["x", "y"], Mode::Graded);
        let i = Ideal::parse(&r, "x^2, x*y").unwrap();
        let rep = gorenstein_check(&i, 1, &[Polynomial::var(&r, 1)]).unwrap();
        assert!(!rep.is_gorenstein);
        let r3 = ring(&["x", "y", "t"], Mode::Graded);
        let sq = Ideal::parse(&r3, "x^2, x*y, y^2").unwrap();
        assert!(matches!(family_from_ideal(&sq, &[2], 3), Err(Error::NotCyclic(_))));
    }

    #[test]
    fn plane_curve_round_trip() {
        let r = ring(&["x", "y"], Mode::Graded);
        let i = Ideal::parse(&r, "y^2-x^2").unwrap();
        let fam = family_from_ideal(&i, &[0], 4).unwrap();
        assert!(check_admissible(&fam, ConditionTwoMode::Annihilator).unwrap().passed);
        let back = finite_lift(&fam, None).unwrap();
        assert!(back.same_ideal(&i).unwrap());
        let rep = gorenstein_check(&i, 1, &[Polynomial::var(&r, 0)]).unwrap();
        assert!(rep.is_gorenstein);
        assert_eq!(rep.multiplicity, 2);
    }

    #[test]
    fn local_cusp() {
        let r = ring(&["x", "y"], Mode::Local);
        let i = Ideal::parse(&r, "y^2-x^3").unwrap();
        let fam = family_from_ideal(&i, &[0], 4).unwrap();
        assert_eq!(fam.h1().to_string(), "Y");
        let rep = local_verify(&fam, &i, 6).unwrap();
        assert!(rep.passed, "{:?}", rep.violations);
    }
}
