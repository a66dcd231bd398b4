//! Exponent vectors, shared by monomials `z^M` of `R` and divided power
//! monomials `Z^[L]` of the dual module.

use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `(l_1, ..., l_n)`.
///
/// `Ord` is degrevlex: higher total degree is larger; within a degree, the
/// vector with the smaller exponent in the last differing variable is larger.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponents(e)
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Exponents(exps)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Total degree `|L|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self - other`, or `None` if some component would be negative.
    pub fn checked_sub(&self, other: &Exponents) -> Option<Exponents> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponents)
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn with(&self, i: usize, value: u32) -> Exponents {
        let mut e = self.0.clone();
        e[i] = value;
        Exponents(e)
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for Exponents {
    fn from(v: Vec<u32>) -> Self {
        Exponents(v)
    }
}

/// All exponent vectors of total degree `d` in `n` variables, degrevlex descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponents> {
    if n == 0 {
        return if d == 0 {
            vec![Exponents(Vec::new())]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fill(&mut cur, 0, d, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Exponents>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(Exponents(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in 0..=left {
        cur[i] = e;
        fill(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}

/// All exponent vectors with `lo ≤ |L| ≤ hi`, degrevlex descending.
pub fn monomials_in_window(n: usize, lo: u32, hi: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for d in (lo..=hi).rev() {
        out.extend(monomials_of_degree(n, d));
    }
    out
}

/// Number of monomials of degree `d` in `n` variables.
pub fn count_of_degree(n: usize, d: u32) -> usize {
    // C(d + n - 1, n - 1)
    let mut acc: u128 = 1;
    for k in 1..n as u128 {
        acc = acc * (d as u128 + k) / k;
    }
    acc as usize
}
