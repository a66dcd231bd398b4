//! The contraction action of `R` on `Γ` and the induced pairing.
//!
//! `z^M ∘ Z^[L] = Z^[L-M]`, and zero when some component of `L-M` is negative.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::monomial::Exponents;
use crate::poly::{DPPolynomial, Polynomial};
use crate::ring::same_ring;
use crate::scalar::Scalar;

/// `h ∘ F`.
pub fn contract(h: &Polynomial, f: &DPPolynomial) -> Result<DPPolynomial> {
    same_ring(h.ring(), f.ring())?;
    let mut acc: BTreeMap<Exponents, Scalar> = BTreeMap::new();
    for (m, a) in h.terms() {
        for (l, b) in f.terms() {
            if let Some(rest) = l.checked_sub(m) {
                let v = a * b;
                match acc.get_mut(&rest) {
                    Some(c) => *c += &v,
                    None => {
                        acc.insert(rest, v);
                    }
                }
            }
        }
    }
    Ok(DPPolynomial::from_terms(f.ring(), acc))
}

/// `z^M ∘ F`, without building a polynomial for the monomial.
pub fn contract_monomial(m: &Exponents, f: &DPPolynomial) -> DPPolynomial {
    DPPolynomial::from_terms(
        f.ring(),
        f.terms()
            .filter_map(|(l, b)| l.checked_sub(m).map(|rest| (rest, b.clone()))),
    )
}

/// Constant term of `f ∘ F`; on monomials `⟨z^M, Z^[L]⟩ = δ_{M,L}`.
pub fn pairing(f: &Polynomial, big_f: &DPPolynomial) -> Result<Scalar> {
    same_ring(f.ring(), big_f.ring())?;
    let mut acc = f.ring().field().zero();
    for (m, a) in f.terms() {
        if let Some(b) = big_f.coeff(m) {
            acc += &(a * b);
        }
    }
    Ok(acc)
}
