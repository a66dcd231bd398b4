#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use macaulay::admissible::{
    check_admissible, check_condition_one, check_condition_two, diagonal_decompose, lift_space,
};
use macaulay::duality::{ann_cyclic, annihilator_space, module_basis, module_span, perp_basis, perp_ideal};
use macaulay::monomial::{monomials_in_window, monomials_of_degree};
use macaulay::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn ring(vars: &[&str], mode: Mode) -> Ring {
    RingContext::with_vars(vars, Field::Rational, mode).unwrap()
}

const NAMES: [&str; 3] = ["x", "y", "z"];

pub fn ring_n(n: usize) -> Ring {
    ring(&NAMES[..n], Mode::Graded)
}

/// Terms picked by index among the monomials of one degree, or of a window.
#[derive(Clone, Debug)]
pub struct PolySeed {
    pub lo: u32,
    pub hi: u32,
    pub terms: Vec<(usize, i64)>,
}

pub fn seed(lo: u32, hi: u32, max_terms: usize) -> impl Strategy<Value = PolySeed> {
    (lo..=hi, prop::collection::vec((0usize..1000, -3i64..=3), 1..=max_terms)).prop_map(move |(d, terms)| PolySeed {
        lo: d,
        hi: d,
        terms,
    })
}

pub fn window_seed(hi: u32, max_terms: usize) -> impl Strategy<Value = PolySeed> {
    (0..=hi, prop::collection::vec((0usize..1000, -3i64..=3), 1..=max_terms)).prop_map(move |(h, terms)| PolySeed {
        lo: 0,
        hi: h,
        terms,
    })
}

pub fn build<S: Side>(ring: &Ring, s: &PolySeed) -> Poly<S> {
    let ms = monomials_in_window(ring.n(), s.lo, s.hi);
    let f = ring.field();
    Poly::from_terms(
        ring,
        s.terms.iter().map(|&(i, c)| (ms[i % ms.len()].clone(), f.from_i64(c))),
    )
}

pub fn run<T: std::fmt::Debug>(
    cases: u32,
    strategy: impl Strategy<Value = T>,
    test: impl Fn(T) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn ok<T>(r: macaulay::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

// ---- duality ----

/// `Ann(⟨F⟩)^⊥ = ⟨F⟩` slice by slice.
pub fn perp_of_ann(n: usize, s: PolySeed) -> Result<(), TestCaseError> {
    let r = ring_n(n);
    let f: DPPolynomial = build(&r, &s);
    prop_assume!(!f.is_zero());
    let top = f.degree().unwrap();
    let ann = ok(ann_cyclic(&f, None))?;
    let perp = ok(perp_ideal(&ann, 0..=top + 1))?;
    let span = ok(module_span(&r, std::slice::from_ref(&f), Some(top + 1)))?;
    for (a, b) in perp.iter().zip(&span) {
        prop_assert!(a.basis.same_span(&b.basis), "degree {} for {}", a.degree, f);
    }
    Ok(())
}

/// `Ann(I^⊥) = I` for Artinian ideals `(x_i^{a_i}) + (binomial)`.
pub fn ann_of_perp(n: usize, powers: Vec<u32>, b: (PolySeed, PolySeed)) -> Result<(), TestCaseError> {
    let r = ring_n(n);
    let mut gens: Vec<Polynomial> = (0..n)
        .map(|i| Polynomial::var(&r, i).pow(powers[i % powers.len()]))
        .collect();
    let m1: Polynomial = build(
        &r,
        &PolySeed {
            terms: vec![b.0.terms[0]],
            ..b.0.clone()
        },
    );
    let m2: Polynomial = build(
        &r,
        &PolySeed {
            terms: vec![b.1.terms[0]],
            ..b.0.clone()
        },
    );
    gens.push(&m1 - &m2);
    let i = ok(Ideal::new(&r, gens.into_iter().filter(|g| !g.is_zero())))?;
    prop_assume!(!i.has_unit_generator());
    let s = ok(i.hilbert())?.regularity as u32;
    let w = ok(perp_basis(&i, s))?;
    let ann = ok(annihilator_space(&r, w.vectors(), DegreeWindow::upto(s + 1)))?;
    let back = ok(Ideal::new(&r, ann.vectors().iter().cloned()))?;
    prop_assert!(ok(back.same_ideal(&i))?, "{} vs {}", back, i);
    Ok(())
}

// ---- contraction ----

pub fn module_action(n: usize, g: PolySeed, h: PolySeed, f: PolySeed) -> Result<(), TestCaseError> {
    let r = ring_n(n);
    let g: Polynomial = build(&r, &g);
    let h: Polynomial = build(&r, &h);
    let f: DPPolynomial = build(&r, &f);
    let lhs = ok(contract(&(&g * &h), &f))?;
    let rhs = ok(contract(&g, &ok(contract(&h, &f))?))?;
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn bilinearity(n: usize, a: i64, g: PolySeed, h: PolySeed, f: PolySeed, e: PolySeed) -> Result<(), TestCaseError> {
    let r = ring_n(n);
    let c = r.field().from_i64(a);
    let g: Polynomial = build(&r, &g);
    let h: Polynomial = build(&r, &h);
    let f: DPPolynomial = build(&r, &f);
    let e: DPPolynomial = build(&r, &e);
    let left = ok(contract(&(&g.scale(&c) + &h), &f))?;
    let right = &ok(contract(&g, &f))?.scale(&c) + &ok(contract(&h, &f))?;
    prop_assert_eq!(left, right);
    let left = ok(contract(&g, &(&f.scale(&c) + &e)))?;
    let right = &ok(contract(&g, &f))?.scale(&c) + &ok(contract(&g, &e))?;
    prop_assert_eq!(left, right);
    Ok(())
}

/// `⟨x^a, Z^[b]⟩ = δ_ab`, hence `⟨f, F⟩` is the coefficient sum and the
/// pairing on one degree is perfect.
pub fn pairing_perfect(n: usize, f: PolySeed) -> Result<(), TestCaseError> {
    let r = ring_n(n);
    let f: Polynomial = build(&r, &f);
    prop_assume!(!f.is_zero());
    let one = r.field().one();
    let d = f.degree().unwrap();
    let ms = monomials_in_window(n, 0, d);
    for m in &ms {
        let dual = DPPolynomial::monomial(&r, m.clone(), one.clone());
        let p = ok(pairing(&f, &dual))?;
        let want = f.coeff(m).cloned().unwrap_or_else(|| r.field().zero());
        prop_assert_eq!(p, want);
    }
    // some dual monomial detects f
    let detected = ms.iter().any(|m| {
        let dual = DPPolynomial::monomial(&r, m.clone(), one.clone());
        !pairing(&f, &dual).unwrap().is_zero()
    });
    prop_assert!(detected);
    Ok(())
}

// ---- admissible families, d = 1, z = x ----

/// `H_1` free of `X`, then `H_{l+1} = X H_l + C_l` with `C_l` free of `X`.
/// Condition 1 holds by construction; condition 2 may or may not.
pub fn family_from_tails(r: &Ring, h1: &DPPolynomial, tails: &[DPPolynomial]) -> AdmissibleFamily {
    let x = Exponents::unit(r.n(), 0);
    let mut diag = vec![h1.clone()];
    for c in tails {
        let next = &diag.last().unwrap().shift(&x) + c;
        diag.push(next);
    }
    AdmissibleFamily::from_diagonal(r, vec![0], diag).unwrap()
}

fn free_of_x(r: &Ring, s: &PolySeed) -> DPPolynomial {
    let f: DPPolynomial = build(r, s);
    f.filter_terms(|m| m.get(0) == 0)
}

pub fn mode_equivalence(n: usize, h1: PolySeed, tails: Vec<PolySeed>) -> Result<(), TestCaseError> {
    let r = ring_n(n.max(2));
    let h1 = free_of_x(&r, &h1);
    let deg = h1.degree().unwrap_or(0);
    let tails: Vec<DPPolynomial> = tails
        .iter()
        .enumerate()
        .map(|(k, s)| free_of_x(&r, s).homogeneous_part(deg + k as u32 + 1))
        .collect();
    let fam = family_from_tails(&r, &h1, &tails);
    prop_assert!(check_condition_one(&fam).passed);
    let a = ok(check_condition_two(&fam, ConditionTwoMode::Annihilator))?;
    let b = ok(check_condition_two(&fam, ConditionTwoMode::Intersection))?;
    prop_assert_eq!(a.passed, b.passed, "{}", macaulay::write_family(&fam));
    Ok(())
}

/// Lifts `H_1` twice through `lift_space`, choosing kernel coordinates from `picks`.
pub fn lifted_family(n: usize, h1: &PolySeed, picks: &[i64]) -> Result<Option<AdmissibleFamily>, TestCaseError> {
    let r = ring_n(n.max(2));
    let h1 = free_of_x(&r, h1);
    if h1.is_zero() {
        return Ok(None);
    }
    let mut fam = ok(AdmissibleFamily::from_diagonal(&r, vec![0], vec![h1]))?;
    for l in 2..=3u32 {
        let target = MultiIndex::diagonal(1, l);
        let Some(space) = ok(lift_space(&fam, &target, None))? else {
            return Err(TestCaseError::fail(format!("no lift at {target}")));
        };
        let mut g = space.particular.clone();
        for (k, v) in space.kernel.vectors().iter().enumerate() {
            let c = r.field().from_i64(picks[(k + l as usize) % picks.len()]);
            g = &g + &v.scale(&c);
        }
        fam = ok(fam.with_entry(target, g))?;
    }
    Ok(Some(fam))
}

pub fn lifts_are_admissible(n: usize, h1: PolySeed, picks: Vec<i64>) -> Result<(), TestCaseError> {
    let Some(fam) = lifted_family(n, &h1, &picks)? else {
        return Ok(());
    };
    for mode in [ConditionTwoMode::Annihilator, ConditionTwoMode::Intersection] {
        let rep = ok(check_admissible(&fam, mode))?;
        prop_assert!(rep.passed, "{:?}: {:?}", mode, rep.violations);
    }
    Ok(())
}

pub fn koszul_additivity(n: usize, h1: PolySeed, picks: Vec<i64>) -> Result<(), TestCaseError> {
    let Some(fam) = lifted_family(n, &h1, &picks)? else {
        return Ok(());
    };
    let dim = |l: u32| {
        let h = fam.get(&MultiIndex::diagonal(1, l)).unwrap();
        module_basis(fam.ring(), std::slice::from_ref(h)).unwrap().dim()
    };
    for l in 2..=3 {
        prop_assert_eq!(dim(l), dim(1) + dim(l - 1), "l = {}", l);
    }
    Ok(())
}

pub fn diagonal_reassembly(n: usize, h1: PolySeed, picks: Vec<i64>) -> Result<(), TestCaseError> {
    let Some(fam) = lifted_family(n, &h1, &picks)? else {
        return Ok(());
    };
    let cs = ok(diagonal_decompose(&fam))?;
    let x = Exponents::unit(fam.ring().n(), 0);
    for (t, h) in fam.diagonal().iter().enumerate() {
        let mut sum = DPPolynomial::zero(fam.ring());
        let mut shift = Exponents::zero(fam.ring().n());
        for i in 0..=t {
            sum = &sum + &cs[t - i].shift(&shift);
            shift = shift.add(&x);
        }
        prop_assert_eq!(&sum, *h);
        prop_assert!(contract_monomial(&x, &cs[t]).is_zero());
    }
    Ok(())
}

// ---- Gröbner bases ----

pub fn s_polynomials_reduce(n: usize, gens: Vec<PolySeed>) -> Result<(), TestCaseError> {
    let r = ring_n(n);
    let i = ok(Ideal::new(
        &r,
        gens.iter().map(|s| build::<Ordinary>(&r, s)).filter(|g| !g.is_zero()),
    ))?;
    let gb = ok(i.groebner())?;
    prop_assert!(gb.is_groebner());
    for g in i.gens() {
        prop_assert!(gb.normal_form(g).is_zero());
    }
    Ok(())
}

/// Gröbner membership agrees with the linear algebra of `I_j` for homogeneous ideals.
pub fn membership_agrees(n: usize, gens: Vec<PolySeed>, f: PolySeed, combo: bool) -> Result<(), TestCaseError> {
    let r = ring_n(n);
    let i = ok(Ideal::new(
        &r,
        gens.iter().map(|s| build::<Ordinary>(&r, s)).filter(|g| !g.is_zero()),
    ))?;
    let mut f: Polynomial = build(&r, &f);
    if combo {
        // push f into I half the time so both answers occur
        if let Some(g) = i.gens().iter().find(|g| g.degree() <= f.degree()) {
            let d = f.degree().unwrap_or(0) - g.degree().unwrap();
            let m = monomials_of_degree(n, d)[0].clone();
            f = g.mul_monomial(&m, &r.field().one());
        }
    }
    prop_assume!(!f.is_zero());
    let j = f.degree().unwrap();
    let by_gb = ok(i.contains(&f))?;
    let by_la = ok(i.degree_part(j))?.contains(&f);
    prop_assert_eq!(by_gb, by_la, "{} in {}", f, i);
    Ok(())
}

pub const CASES: u32 = 64;

/// Every randomized suite, by name.
pub fn all_properties(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let deg = 4;
    vec![
        (
            "Ann(<F>)^perp = <F>",
            run(cases, (1usize..=3, seed(0, deg, 4)), |(n, s)| perp_of_ann(n, s)),
        ),
        (
            "Ann(I^perp) = I",
            run(
                cases,
                (
                    1usize..=3,
                    prop::collection::vec(1u32..=3, 3),
                    (seed(1, 3, 1), seed(1, 3, 1)),
                ),
                |(n, p, b)| ann_of_perp(n, p, b),
            ),
        ),
        (
            "contraction is a module action",
            run(
                cases,
                (1usize..=3, window_seed(2, 3), window_seed(2, 3), window_seed(deg, 5)),
                |(n, g, h, f)| module_action(n, g, h, f),
            ),
        ),
        (
            "contraction is bilinear",
            run(
                cases,
                (
                    1usize..=3,
                    -4i64..=4,
                    window_seed(3, 3),
                    window_seed(3, 3),
                    window_seed(deg, 4),
                    window_seed(deg, 4),
                ),
                |(n, a, g, h, f, e)| bilinearity(n, a, g, h, f, e),
            ),
        ),
        (
            "pairing is perfect",
            run(cases, (1usize..=3, window_seed(deg, 4)), |(n, f)| pairing_perfect(n, f)),
        ),
        (
            "condition (2) modes agree",
            run(
                cases,
                (2usize..=3, seed(1, 3, 3), prop::collection::vec(window_seed(deg, 2), 2)),
                |(n, h, t)| mode_equivalence(n, h, t),
            ),
        ),
        (
            "lifts stay admissible",
            run(
                cases,
                (2usize..=3, seed(1, 3, 3), prop::collection::vec(-2i64..=2, 3)),
                |(n, h, p)| lifts_are_admissible(n, h, p),
            ),
        ),
        (
            "Koszul dimension additivity",
            run(
                cases,
                (2usize..=3, seed(1, 3, 3), prop::collection::vec(-2i64..=2, 3)),
                |(n, h, p)| koszul_additivity(n, h, p),
            ),
        ),
        (
            "diagonal decomposition reassembles",
            run(
                cases,
                (2usize..=3, seed(1, 3, 3), prop::collection::vec(-2i64..=2, 3)),
                |(n, h, p)| diagonal_reassembly(n, h, p),
            ),
        ),
        (
            "S-polynomials reduce to zero",
            run(
                cases,
                (1usize..=3, prop::collection::vec(seed(1, 3, 3), 1..=3)),
                |(n, g)| s_polynomials_reduce(n, g),
            ),
        ),
        (
            "Groebner membership = linear algebra",
            run(
                cases,
                (
                    1usize..=3,
                    prop::collection::vec(seed(1, 3, 2), 1..=3),
                    seed(1, deg, 3),
                    any::<bool>(),
                ),
                |(n, g, f, c)| membership_agrees(n, g, f, c),
            ),
        ),
    ]
}

pub fn family_entries(fam: &AdmissibleFamily) -> BTreeMap<MultiIndex, DPPolynomial> {
    fam.entries().clone()
}
