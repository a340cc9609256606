//! Exact real numbers of the form `Σ c_i·√r_i` with rational `c_i` and
//! distinct squarefree integers `r_i`.
//!
//! Square roots of weight ratios appear in every operator entry; this ring
//! keeps sums, differences and products of such entries exact, so relation
//! defects that vanish do so identically rather than up to round-off.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Surd {
    /// squarefree radicand → nonzero coefficient
    terms: BTreeMap<BigUint, BigRational>,
}

/// Trial-division bound used when an integer does not fit in 64 bits.
const BIG_TRIAL_LIMIT: u64 = 1 << 20;

/// Splits `n = root² · free` with `free` squarefree.
///
/// Exact for every `n < 2^64`. For larger `n` only prime factors below
/// 2^20 are extracted and a perfect-square cofactor is recognised.
pub fn squarefree_split(n: &BigUint) -> (BigUint, BigUint) {
    if let Some(v) = n.to_u64() {
        let (r, f) = squarefree_split_u64(v);
        return (BigUint::from(r), BigUint::from(f));
    }
    let mut rest = n.clone();
    let mut root = BigUint::one();
    let mut free = BigUint::one();
    let mut p = 2u64;
    while p < BIG_TRIAL_LIMIT {
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        for _ in 0..e / 2 {
            root *= &bp;
        }
        if e % 2 == 1 {
            free *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        root *= s;
    } else {
        free *= rest;
    }
    (root, free)
}

fn squarefree_split_u64(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let (mut root, mut free) = (1u64, 1u64);
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            root *= p;
        }
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (root, free * n)
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn one() -> Self {
        Surd::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Surd::term(BigUint::one(), r)
    }

    fn term(radicand: BigUint, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(radicand, coeff);
        }
        Surd { terms }
    }

    /// `√r` for a non-negative rational `r`.
    pub fn sqrt_of(r: &BigRational) -> Self {
        assert!(!r.is_negative(), "square root of a negative rational");
        if r.is_zero() {
            return Surd::zero();
        }
        // √(p/q) = √(p·q)/q, with p and q split separately to keep the
        // integers being factored small.
        let p = r.numer().magnitude();
        let q = r.denom().magnitude();
        let (rp, fp) = squarefree_split(p);
        let (rq, fq) = squarefree_split(q);
        let g = fp.gcd(&fq);
        let free = (&fp / &g) * (&fq / &g);
        let root = rp * rq * g;
        let coeff = BigRational::new(BigInt::from(root), BigInt::from(q.clone()));
        Surd::term(free, coeff)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, when it has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    pub fn equals_rational(&self, r: &BigRational) -> bool {
        self.as_rational().as_ref() == Some(r)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| rational_to_f64(c) * r.to_f64().unwrap_or(f64::INFINITY).sqrt())
            .sum()
    }

    pub fn scale(&self, r: &BigRational) -> Surd {
        if r.is_zero() {
            return Surd::zero();
        }
        Surd { terms: self.terms.iter().map(|(k, c)| (k.clone(), c * r)).collect() }
    }

    fn add_term(&mut self, radicand: BigUint, coeff: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(radicand) {
            Entry::Vacant(v) => {
                if !coeff.is_zero() {
                    v.insert(coeff);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Surd) {
        for (r, c) in &other.terms {
            self.add_term(r.clone(), c.clone());
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        self + &(-rhs)
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (ra, ca) in &self.terms {
            for (rb, cb) in &rhs.terms {
                // √a·√b = g·√((a/g)(b/g)) for squarefree a, b and g = gcd(a, b)
                let g = ra.gcd(rb);
                let free = (ra / &g) * (rb / &g);
                let coeff = ca * cb * BigRational::from_integer(BigInt::from(g));
                out.add_term(free, coeff);
            }
        }
        out
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(r, c)| if r.is_one() { format!("{c}") } else { format!("{c}·√{r}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
