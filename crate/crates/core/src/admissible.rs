//! Admissible families `{H_L}` of divided power polynomials indexed by
//! `L ∈ ℕ₊^d`, with respect to distinguished variables `z_1..z_d`.
//!
//! A family is stored on a finite downward-closed set of indices. Its two
//! defining conditions are
//!
//! 1. `z_i ∘ H_L = H_{L-γ_i}` when `l_i ≥ 2`, and `0` when `l_i = 1`;
//! 2. `Ann(H_L) ∘ H_{L+γ_i} = ⟨H_{L-(l_i-1)γ_i}⟩`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::contract::{contract, contract_monomial};
use crate::duality::{annihilator_space, module_basis};
use crate::error::{Error, Result};
use crate::linalg::{affine_solve, DegreeWindow, SubspaceBasis, Vector};
use crate::monomial::{monomials_in_window, monomials_of_degree, Exponents};
use crate::poly::{DPPolynomial, Divided, Polynomial};
use crate::ring::{same_ring, Mode, Ring};

/// Multi-index `L = (l_1..l_d)` with every `l_i ≥ 1`.
///
/// Ordered by `|L|`, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(v: Vec<u32>) -> Result<Self> {
        if v.is_empty() || v.contains(&0) {
            return Err(Error::Family(format!("index {v:?} must have positive entries")));
        }
        Ok(MultiIndex(v))
    }

    /// `t_d = (t, ..., t)`.
    pub fn diagonal(d: usize, t: u32) -> Self {
        MultiIndex(vec![t; d])
    }

    pub fn ones(d: usize) -> Self {
        Self::diagonal(d, 1)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `|L|`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `L - γ_i`, if still positive.
    pub fn dec(&self, i: usize) -> Option<MultiIndex> {
        (self.0[i] >= 2).then(|| {
            let mut v = self.0.clone();
            v[i] -= 1;
            MultiIndex(v)
        })
    }

    pub fn inc(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    /// `L - (l_i - 1)γ_i`: the `i`-th entry reset to one.
    pub fn base(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_diagonal(&self) -> bool {
        self.0.iter().all(|&x| x == self.0[0])
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// All `L ∈ ℕ₊^d` with `|L| ≤ t0`.
pub fn simplex(d: usize, t0: u32) -> Vec<MultiIndex> {
    if (t0 as usize) < d {
        return Vec::new();
    }
    let mut out: Vec<MultiIndex> = monomials_in_window(d, 0, t0 - d as u32)
        .into_iter()
        .map(|e| MultiIndex(e.as_slice().iter().map(|x| x + 1).collect()))
        .collect();
    out.sort();
    out
}

/// All `L` with `1_d ≤ L ≤ upper`.
pub fn cube(upper: &MultiIndex) -> Vec<MultiIndex> {
    let mut out = vec![Vec::new()];
    for &u in upper.as_slice() {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (1..=u).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let mut out: Vec<MultiIndex> = out.into_iter().map(MultiIndex).collect();
    out.sort();
    out
}

/// Finite piece `{H_L}` of an admissible family, on a downward-closed index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleFamily {
    ring: Ring,
    z: Vec<usize>,
    entries: BTreeMap<MultiIndex, DPPolynomial>,
}

impl AdmissibleFamily {
    /// Family with exactly the given entries, which must form a downward-closed set.
    pub fn new(ring: &Ring, z: Vec<usize>, entries: BTreeMap<MultiIndex, DPPolynomial>) -> Result<Self> {
        let fam = AdmissibleFamily {
            ring: ring.clone(),
            z,
            entries,
        };
        fam.validate()?;
        Ok(fam)
    }

    /// Fills every index below a given one by contraction: `H_L = z^{L'-L} ∘ H_{L'}`,
    /// taking the smallest given `L' ≥ L`.
    pub fn complete(ring: &Ring, z: Vec<usize>, given: BTreeMap<MultiIndex, DPPolynomial>) -> Result<Self> {
        let mut entries = given.clone();
        let mut wanted: BTreeSet<MultiIndex> = BTreeSet::new();
        for l in given.keys() {
            wanted.extend(cube(l));
        }
        let probe = AdmissibleFamily {
            ring: ring.clone(),
            z: z.clone(),
            entries: BTreeMap::new(),
        };
        for l in wanted {
            if entries.contains_key(&l) {
                continue;
            }
            let (src, h) = given.iter().find(|(k, _)| l.le(k)).expect("index below a given entry");
            let m = probe.z_exponents(src.as_slice(), l.as_slice());
            entries.insert(l, contract_monomial(&m, h));
        }
        AdmissibleFamily::new(ring, z, entries)
    }

    /// Family on `{L ≤ t_d : t ≤ diag.len()}` from its diagonal entries `H_{1_d}, H_{2_d}, ...`.
    pub fn from_diagonal(ring: &Ring, z: Vec<usize>, diag: Vec<DPPolynomial>) -> Result<Self> {
        let d = z.len();
        let given = diag
            .into_iter()
            .enumerate()
            .map(|(t, h)| (MultiIndex::diagonal(d, t as u32 + 1), h))
            .collect();
        Self::complete(ring, z, given)
    }

    fn validate(&self) -> Result<()> {
        let n = self.ring.n();
        let d = self.z.len();
        if d == 0 {
            return Err(Error::Family("at least one distinguished variable is required".into()));
        }
        let distinct: BTreeSet<_> = self.z.iter().collect();
        if distinct.len() != d || self.z.iter().any(|&i| i >= n) {
            return Err(Error::Family(
                "distinguished variables must be distinct ring variables".into(),
            ));
        }
        if !self.entries.contains_key(&MultiIndex::ones(d)) {
            return Err(Error::Family(format!("missing entry {}", MultiIndex::ones(d))));
        }
        for (l, h) in &self.entries {
            same_ring(&self.ring, h.ring())?;
            if l.d() != d {
                return Err(Error::Family(format!("index {l} has length {} but d = {d}", l.d())));
            }
            for i in 0..d {
                if let Some(p) = l.dec(i) {
                    if !self.entries.contains_key(&p) {
                        return Err(Error::Family(format!(
                            "index set not downward closed: {l} present, {p} missing"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn d(&self) -> usize {
        self.z.len()
    }

    /// Ring indices of `z_1..z_d`.
    pub fn z(&self) -> &[usize] {
        &self.z
    }

    pub fn z_polys(&self) -> Vec<Polynomial> {
        self.z.iter().map(|&i| Polynomial::var(&self.ring, i)).collect()
    }

    /// Largest `|L|` present.
    pub fn t0(&self) -> u32 {
        self.entries.keys().map(MultiIndex::total).max().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<MultiIndex, DPPolynomial> {
        &self.entries
    }

    pub fn indices(&self) -> impl Iterator<Item = &MultiIndex> + '_ {
        self.entries.keys()
    }

    pub fn get(&self, l: &MultiIndex) -> Option<&DPPolynomial> {
        self.entries.get(l)
    }

    pub fn h1(&self) -> &DPPolynomial {
        &self.entries[&MultiIndex::ones(self.d())]
    }

    /// Diagonal entries `H_{1_d}, H_{2_d}, ...` while present.
    pub fn diagonal(&self) -> Vec<&DPPolynomial> {
        (1..)
            .map(|t| self.entries.get(&MultiIndex::diagonal(self.d(), t)))
            .take_while(Option::is_some)
            .map(Option::unwrap)
            .collect()
    }

    /// Exponent vector in all `n` variables of `z^{a-b}` (`a ≥ b` componentwise).
    pub fn z_exponents(&self, a: &[u32], b: &[u32]) -> Exponents {
        let mut e = vec![0; self.ring.n()];
        for (k, &i) in self.z.iter().enumerate() {
            e[i] = a[k] - b[k];
        }
        Exponents::new(e)
    }

    /// The pure powers `z_1^{l_1}, ..., z_d^{l_d}` generating `(z^L)`.
    pub fn z_powers(&self, l: &MultiIndex) -> Vec<Polynomial> {
        self.z
            .iter()
            .zip(l.as_slice())
            .map(|(&i, &li)| {
                let mut e = vec![0; self.ring.n()];
                e[i] = li;
                Polynomial::monomial(&self.ring, Exponents::new(e), self.ring.field().one())
            })
            .collect()
    }

    /// Copy with one entry replaced or added (the index set must stay downward closed).
    pub fn with_entry(&self, l: MultiIndex, h: DPPolynomial) -> Result<Self> {
        let mut entries = self.entries.clone();
        entries.insert(l, h);
        AdmissibleFamily::new(&self.ring, self.z.clone(), entries)
    }

    /// Largest degree of an entry.
    pub fn max_degree(&self) -> u32 {
        self.entries
            .values()
            .filter_map(DPPolynomial::degree)
            .max()
            .unwrap_or(0)
    }
}

fn display_opt<S: Serializer>(p: &Option<DPPolynomial>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

/// A failed instance of condition 1 or 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// The index whose entry fails (`L + γ_i` for condition 2).
    pub index: MultiIndex,
    /// Direction `i`, counted from 1.
    pub direction: usize,
    pub condition: u8,
    #[serde(serialize_with = "display_opt")]
    pub witness: Option<DPPolynomial>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "L={} i={} (cond {}): {}",
            self.index, self.direction, self.condition, self.detail
        )?;
        if let Some(w) = &self.witness {
            write!(f, "; witness {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn from(violations: Vec<Violation>) -> Self {
        CheckReport {
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn merge(mut self, other: CheckReport) -> Self {
        self.violations.extend(other.violations);
        self.passed = self.violations.is_empty();
        self
    }
}

/// Condition 1 on every index and direction.
pub fn check_condition_one(fam: &AdmissibleFamily) -> CheckReport {
    let ring = fam.ring();
    let mut out = Vec::new();
    for (l, h) in fam.entries() {
        for (i, &zi) in fam.z().iter().enumerate() {
            let got = contract_monomial(&Exponents::unit(ring.n(), zi), h);
            let want = match l.dec(i) {
                Some(p) => fam.entries()[&p].clone(),
                None => DPPolynomial::zero(ring),
            };
            if got != want {
                let detail = match l.dec(i) {
                    Some(p) => format!("z_{} ∘ H{} differs from H{}", i + 1, l, p),
                    None => format!("z_{} ∘ H{} is not zero", i + 1, l),
                };
                out.push(Violation {
                    index: l.clone(),
                    direction: i + 1,
                    condition: 1,
                    witness: Some(&got - &want),
                    detail,
                });
            }
        }
    }
    CheckReport::from(out)
}

/// How condition 2 is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionTwoMode {
    /// `Ann(H_L) ∘ H_{L+γ_i} = ⟨H_{L-(l_i-1)γ_i}⟩` on degree-bounded annihilators.
    Annihilator,
    /// `⟨H_{L'}⟩ ∩ k[Z_1..Ẑ_i..Z_n] ⊆ ⟨H_{L'-(l'_i-1)γ_i}⟩`.
    Intersection,
}

/// Condition 2 for every pair `L, L + γ_i` inside the index set.
///
/// Both modes give the same verdict on families satisfying condition 1.
pub fn check_condition_two(fam: &AdmissibleFamily, mode: ConditionTwoMode) -> Result<CheckReport> {
    let mut out = Vec::new();
    for (big, h_big) in fam.entries() {
        for i in 0..fam.d() {
            let Some(small) = big.dec(i) else { continue };
            let base = big.base(i);
            let target = module_basis(fam.ring(), &[fam.entries()[&base].clone()])?;
            let witness = match mode {
                ConditionTwoMode::Annihilator => annihilator_witness(fam, &fam.entries()[&small], h_big, &target)?,
                ConditionTwoMode::Intersection => intersection_witness(fam, fam.z()[i], h_big, &target)?,
            };
            if let Some((w, detail)) = witness {
                out.push(Violation {
                    index: big.clone(),
                    direction: i + 1,
                    condition: 2,
                    witness: Some(w),
                    detail: format!("{detail} H{base}"),
                });
            }
        }
    }
    Ok(CheckReport::from(out))
}

fn annihilator_witness(
    fam: &AdmissibleFamily,
    h_small: &DPPolynomial,
    h_big: &DPPolynomial,
    target: &SubspaceBasis<Divided>,
) -> Result<Option<(DPPolynomial, &'static str)>> {
    let ring = fam.ring();
    let top = h_big.degree().unwrap_or(0);
    let ann = annihilator_space(ring, std::slice::from_ref(h_small), DegreeWindow::upto(top))?;
    let mut image = Vec::new();
    for a in ann.vectors() {
        let v = contract(a, h_big)?;
        if !target.contains(&v) {
            return Ok(Some((v, "Ann(H_L) ∘ H_{L+γ_i} leaves")));
        }
        image.push(v);
    }
    let window = DegreeWindow::upto(top.max(target.window().hi));
    let image = SubspaceBasis::span(ring, window, image)?;
    for v in target.vectors() {
        if !image.contains(v) {
            return Ok(Some((v.clone(), "Ann(H_L) ∘ H_{L+γ_i} misses part of")));
        }
    }
    Ok(None)
}

fn intersection_witness(
    fam: &AdmissibleFamily,
    zi: usize,
    h_big: &DPPolynomial,
    target: &SubspaceBasis<Divided>,
) -> Result<Option<(DPPolynomial, &'static str)>> {
    let ring = fam.ring();
    let span = module_basis(ring, std::slice::from_ref(h_big))?;
    // coordinate subspace of monomials free of Z_i, restricted to the support of the span
    let support: BTreeSet<Exponents> = span
        .vectors()
        .iter()
        .flat_map(|v| v.support().cloned().collect::<Vec<_>>())
        .filter(|m| m.get(zi) == 0)
        .collect();
    let one = ring.field().one();
    let coords = SubspaceBasis::span(
        ring,
        span.window(),
        support
            .into_iter()
            .map(|m| DPPolynomial::monomial(ring, m, one.clone())),
    )?;
    let meet = span.intersect(&coords)?;
    Ok(meet
        .vectors()
        .iter()
        .find(|v| !target.contains(v))
        .map(|v| (v.clone(), "⟨H_L⟩ ∩ k[Ẑ_i] is not inside")))
}

/// Both conditions; condition 2 runs only if condition 1 holds.
pub fn check_admissible(fam: &AdmissibleFamily, mode: ConditionTwoMode) -> Result<CheckReport> {
    let one = check_condition_one(fam);
    if !one.passed {
        return Ok(one);
    }
    check_condition_two(fam, mode)
}

/// `H_L = Z^{L-1_d} H`, with `H` free of the distinguished variables.
pub fn cone_family(ring: &Ring, z: Vec<usize>, h: &DPPolynomial, indices: &[MultiIndex]) -> Result<AdmissibleFamily> {
    same_ring(ring, h.ring())?;
    if let Some(&i) = z.iter().find(|&&i| h.involves(i)) {
        return Err(Error::Precondition(format!(
            "cone base involves the distinguished variable {}",
            ring.dual_names()[i]
        )));
    }
    let probe = AdmissibleFamily {
        ring: ring.clone(),
        z: z.clone(),
        entries: BTreeMap::new(),
    };
    let ones = vec![1; z.len()];
    let entries = indices
        .iter()
        .map(|l| (l.clone(), h.shift(&probe.z_exponents(l.as_slice(), &ones))))
        .collect();
    AdmissibleFamily::new(ring, z, entries)
}

/// Affine space of admissible entries at a new index.
#[derive(Clone, Debug)]
pub struct LiftSpace {
    pub particular: DPPolynomial,
    pub kernel: SubspaceBasis<Divided>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum LiftRow {
    Contract(usize, Exponents),
    Perp(usize, usize, Exponents),
}

/// All `G` of degree `deg_bound` (graded) or `≤ deg_bound` (local) with
/// `z_j ∘ G = H_{L-γ_j}` (zero where `l_j = 1`) and, for each `i` with `l_i ≥ 2`,
/// `a ∘ G ∈ ⟨H_{L-(l_i-1)γ_i}⟩` for every `a ∈ Ann(H_{L-γ_i})`.
///
/// The default bound is one more than the largest predecessor degree.
/// Returns `None` when no such `G` exists.
pub fn lift_space(fam: &AdmissibleFamily, target: &MultiIndex, deg_bound: Option<u32>) -> Result<Option<LiftSpace>> {
    let ring = fam.ring();
    let n = ring.n();
    let d = fam.d();
    if target.d() != d {
        return Err(Error::Family(format!(
            "target {target} has length {} but d = {d}",
            target.d()
        )));
    }
    let preds: Vec<(usize, MultiIndex)> = (0..d).filter_map(|i| target.dec(i).map(|p| (i, p))).collect();
    if preds.is_empty() {
        return Err(Error::Family(format!("{target} has no predecessors to lift from")));
    }
    for (_, p) in &preds {
        if fam.get(p).is_none() {
            return Err(Error::Family(format!("missing predecessor H{p}")));
        }
    }
    let bound = deg_bound.unwrap_or_else(|| {
        preds
            .iter()
            .filter_map(|(_, p)| fam.entries()[p].degree())
            .max()
            .unwrap_or(0)
            + 1
    });
    let window = match ring.mode() {
        Mode::Graded => DegreeWindow::exact(bound),
        Mode::Local => DegreeWindow::upto(bound),
    };
    let unknowns = match ring.mode() {
        Mode::Graded => monomials_of_degree(n, bound),
        Mode::Local => monomials_in_window(n, 0, bound),
    };

    struct PerpConstraint {
        i: usize,
        ann: Vec<Polynomial>,
        target: SubspaceBasis<Divided>,
    }
    let mut perps = Vec::new();
    for (i, p) in &preds {
        let base = target.base(*i);
        let ann = annihilator_space(ring, &[fam.entries()[p].clone()], DegreeWindow::upto(bound))?;
        perps.push(PerpConstraint {
            i: *i,
            ann: ann.vectors().to_vec(),
            target: module_basis(ring, &[fam.entries()[&base].clone()])?,
        });
    }

    let one = ring.field().one();
    let columns = unknowns.iter().map(|k| {
        let g = DPPolynomial::monomial(ring, k.clone(), one.clone());
        let mut img: Vector<LiftRow> = Vector::new();
        for (j, &zj) in fam.z().iter().enumerate() {
            if k.get(zj) > 0 {
                img.insert(LiftRow::Contract(j, k.with(zj, k.get(zj) - 1)), one.clone());
            }
        }
        for pc in &perps {
            for (a_idx, a) in pc.ann.iter().enumerate() {
                let v = pc.target.reduce(&contract(a, &g).expect("same ring"));
                for (m, c) in v.into_map() {
                    img.insert(LiftRow::Perp(pc.i, a_idx, m), c);
                }
            }
        }
        (k.clone(), img)
    });
    let mut rhs: Vector<LiftRow> = Vector::new();
    for (j, p) in &preds {
        for (m, c) in fam.entries()[p].terms() {
            rhs.insert(LiftRow::Contract(*j, m.clone()), c.clone());
        }
    }
    let Some(sol) = affine_solve(ring.field(), columns, &rhs) else {
        return Ok(None);
    };
    let kernel = SubspaceBasis::span(
        ring,
        window,
        sol.kernel.into_iter().map(|v| DPPolynomial::from_map(ring, v)),
    )?;
    Ok(Some(LiftSpace {
        particular: DPPolynomial::from_map(ring, sol.particular),
        kernel,
    }))
}

/// `C_1 = H_{1_d}`, `C_{t+1} = H_{(t+1)_d} - Z_1⋯Z_d H_{t_d}`, for the diagonal entries present.
///
/// Fails if some `C_t` is not killed by `z_1⋯z_d`, or if the sum
/// `Σ_i (Z_1⋯Z_d)^i C_{t-i}` does not give back `H_{t_d}`.
pub fn diagonal_decompose(fam: &AdmissibleFamily) -> Result<Vec<DPPolynomial>> {
    let diag = fam.diagonal();
    let ones = vec![1; fam.d()];
    let zeros = vec![0; fam.d()];
    let step = fam.z_exponents(&ones, &zeros);
    let mut cs: Vec<DPPolynomial> = Vec::new();
    for (t, h) in diag.iter().enumerate() {
        let c = if t == 0 {
            (*h).clone()
        } else {
            *h - &diag[t - 1].shift(&step)
        };
        if !contract_monomial(&step, &c).is_zero() {
            return Err(Error::DecompositionResidual(t as u32 + 1));
        }
        cs.push(c);
    }
    for (t, h) in diag.iter().enumerate() {
        let mut sum = DPPolynomial::zero(fam.ring());
        let mut shift = Exponents::zero(fam.ring().n());
        for i in 0..=t {
            sum = &sum + &cs[t - i].shift(&shift);
            shift = shift.add(&step);
        }
        if &sum != *h {
            return Err(Error::DecompositionResidual(t as u32 + 1));
        }
    }
    Ok(cs)
}

/// True when every entry vanishes.
pub fn is_zero_family(fam: &AdmissibleFamily) -> bool {
    fam.entries().values().all(DPPolynomial::is_zero)
}
