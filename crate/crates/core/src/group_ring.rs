//! Sparse elements of the group ring R[ℤ^r].

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::fmt::Write as _;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Character, InnerProduct, LatticePoint};
use crate::ring::{CoeffRing, Scalar};

/// A finite sum Σ c_g·g with canonical nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElem {
    ring: CoeffRing,
    rank: usize,
    terms: BTreeMap<LatticePoint, Scalar>,
}

impl GroupRingElem {
    pub fn zero(ring: CoeffRing, rank: usize) -> Self {
        GroupRingElem { ring, rank, terms: BTreeMap::new() }
    }

    pub fn one(ring: CoeffRing, rank: usize) -> Self {
        Self::monomial(ring, LatticePoint::zero(rank), Scalar::one())
    }

    /// `c·g`; the coefficient is reduced into the ring (panics if it is not
    /// representable, use [`GroupRingElem::from_terms`] for checked input).
    pub fn monomial(ring: CoeffRing, g: LatticePoint, c: Scalar) -> Self {
        let rank = g.rank();
        let mut e = Self::zero(ring, rank);
        e.add_term(g, ring.canonical(c).expect("coefficient not in ring"));
        e
    }

    pub fn constant(ring: CoeffRing, rank: usize, c: Scalar) -> Self {
        Self::monomial(ring, LatticePoint::zero(rank), c)
    }

    /// Checked construction from raw terms; repeated points are summed.
    pub fn from_terms<I>(ring: CoeffRing, rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticePoint, Scalar)>,
    {
        let mut e = Self::zero(ring, rank);
        for (g, c) in terms {
            if g.rank() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: g.rank() });
            }
            e.add_term(g, ring.canonical(c)?);
        }
        Ok(e)
    }

    /// Rank-one Laurent polynomial Σ coeffs[i]·t^(low+i).
    pub fn laurent(ring: CoeffRing, low: i64, coeffs: &[i64]) -> Self {
        let mut e = Self::zero(ring, 1);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                e.add_term(LatticePoint::t(low + i as i64), ring.canonical(crate::ring::int(c)).unwrap());
            }
        }
        e
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(g, c)| g.is_zero() && c.is_one())
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, Scalar> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &LatticePoint) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c·g` in place; `c` must already be canonical.
    pub fn add_term(&mut self, g: LatticePoint, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let ring = self.ring;
        match self.terms.entry(g) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.reduce(o.get() + c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &GroupRingElem) {
        for (g, c) in &other.terms {
            self.add_term(g.clone(), c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &GroupRingElem) {
        for (g, c) in &other.terms {
            self.add_term(g.clone(), self.ring.reduce(-c.clone()));
        }
    }

    /// Adds `c·g·other` in place.
    pub fn add_scaled_shifted(&mut self, other: &GroupRingElem, c: &Scalar, g: &LatticePoint) {
        for (h, d) in &other.terms {
            self.add_term(g + h, self.ring.reduce(c * d));
        }
    }

    pub fn scale(&self, c: &Scalar) -> GroupRingElem {
        let mut e = Self::zero(self.ring, self.rank);
        for (g, d) in &self.terms {
            e.add_term(g.clone(), self.ring.reduce(c * d));
        }
        e
    }

    /// Multiplication by the group element `g`.
    pub fn shift(&self, g: &LatticePoint) -> GroupRingElem {
        GroupRingElem {
            ring: self.ring,
            rank: self.rank,
            terms: self.terms.iter().map(|(h, c)| (g + h, c.clone())).collect(),
        }
    }

    /// The involution Σ c_g g ↦ Σ c_g g⁻¹.
    pub fn conjugate(&self) -> GroupRingElem {
        GroupRingElem {
            ring: self.ring,
            rank: self.rank,
            terms: self.terms.iter().map(|(h, c)| (-h, c.clone())).collect(),
        }
    }

    /// The ξ-valuation: minimum of ξ over the support, `None` for zero (+∞).
    pub fn valuation(&self, xi: &Character) -> Option<i64> {
        self.terms.keys().map(|g| xi.eval(g)).min()
    }

    /// Maximum of ξ over the support.
    pub fn top_value(&self, xi: &Character) -> Option<i64> {
        self.terms.keys().map(|g| xi.eval(g)).max()
    }

    /// Width of the support in ξ-value.
    pub fn spread(&self, xi: &Character) -> i64 {
        match (self.valuation(xi), self.top_value(xi)) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn lowest_part(&self, xi: &Character) -> Result<GroupRingElem> {
        let v = self.valuation(xi).ok_or(Error::ZeroInput)?;
        Ok(self.filter(|g| xi.eval(g) == v))
    }

    /// The lowest part as a single term `(g, c)`, if it is one.
    pub fn lowest_monomial(&self, xi: &Character) -> Option<(LatticePoint, Scalar)> {
        let low = self.lowest_part(xi).ok()?;
        if low.terms.len() == 1 {
            low.terms.into_iter().next()
        } else {
            None
        }
    }

    /// Whether this element is invertible in the completion where supports
    /// are bounded below in ξ: its lowest part is a unit monomial.
    pub fn is_novikov_unit(&self, xi: &Character) -> bool {
        self.lowest_monomial(xi).is_some_and(|(_, c)| self.ring.is_unit(&c))
    }

    pub fn filter(&self, mut keep: impl FnMut(&LatticePoint) -> bool) -> GroupRingElem {
        GroupRingElem {
            ring: self.ring,
            rank: self.rank,
            terms: self.terms.iter().filter(|(g, _)| keep(g)).map(|(g, c)| (g.clone(), c.clone())).collect(),
        }
    }

    /// Keeps the terms with ξ-value at most `level`.
    pub fn truncate_above(&self, xi: &Character, level: i64) -> GroupRingElem {
        self.filter(|g| xi.eval(g) <= level)
    }

    /// ‖x‖² = max over the support of the squared lattice norm; ‖0‖ = 0.
    pub fn norm_sq(&self, metric: &InnerProduct) -> Scalar {
        self.terms.keys().map(|g| metric.norm_sq(g)).max().unwrap_or_else(Scalar::zero)
    }

    /// diam(a, b)² = max over support pairs of ‖g − h‖²; zero if either is zero.
    pub fn diam_sq(a: &GroupRingElem, b: &GroupRingElem, metric: &InnerProduct) -> Scalar {
        let mut best = Scalar::zero();
        for g in a.terms.keys() {
            for h in b.terms.keys() {
                let d = metric.norm_sq(&(g - h));
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    /// Coefficient change along ℤ → ℚ, ℤ → 𝔽_p or ℚ → 𝔽_p.
    pub fn map_coefficients(&self, target: CoeffRing) -> Result<GroupRingElem> {
        let mut e = Self::zero(target, self.rank);
        for (g, c) in &self.terms {
            e.add_term(g.clone(), self.ring.map_into(target, c)?);
        }
        Ok(e)
    }

    /// Relabels the ring without touching coefficients (caller guarantees
    /// they are canonical in the new ring).
    pub fn with_ring(mut self, ring: CoeffRing) -> GroupRingElem {
        self.ring = ring;
        self
    }

    /// Rank-one exponent range `(min, max)`.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().next()?.0[0];
        let hi = self.terms.keys().next_back()?.0[0];
        Some((lo, hi))
    }

    /// Rank-one evaluation t ↦ a.
    pub fn eval_at(&self, a: &Scalar) -> Result<Scalar> {
        if self.rank != 1 {
            return Err(Error::RankUnsupported { deck_rank: self.rank });
        }
        let mut acc = Scalar::zero();
        for (g, c) in &self.terms {
            let e = g.0[0];
            if e < 0 && a.is_zero() {
                return Err(Error::InvalidCoefficient("evaluation of t^-1 at 0".into()));
            }
            acc += c * pow(a, e);
        }
        Ok(acc)
    }

    /// Content gcd of an integer-coefficient element (nonnegative).
    pub fn content(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms.values().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(&c.to_integer()))
    }

    /// Human-readable form, e.g. `t^2 - 2t^-1` or `t1*t2^-1 + 3`.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            return "0".into();
        }
        for (i, (g, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_string(g);
            if mono.is_empty() {
                let _ = write!(s, "{a}");
            } else {
                if !a.is_one() {
                    let _ = write!(s, "{a}");
                    if !a.is_integer() {
                        s.push('*');
                    }
                }
                s.push_str(&mono);
            }
        }
        s
    }
}

fn monomial_string(g: &LatticePoint) -> String {
    let mut s = String::new();
    let single = g.rank() == 1;
    for (i, &e) in g.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        if single {
            s.push('t');
        } else {
            let _ = write!(s, "t{}", i + 1);
        }
        if e != 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

pub(crate) fn pow(a: &Scalar, e: i64) -> Scalar {
    let mut base = if e < 0 { a.recip() } else { a.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = Scalar::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut e = self.clone();
        e.add_assign_ref(rhs);
        e
    }
}

impl Sub for &GroupRingElem {
    type Output = GroupRingElem;
    fn sub(self, rhs: &GroupRingElem) -> GroupRingElem {
        let mut e = self.clone();
        e.sub_assign_ref(rhs);
        e
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: &GroupRingElem) -> GroupRingElem {
        debug_assert_eq!(self.rank, rhs.rank);
        let mut e = GroupRingElem::zero(self.ring, self.rank);
        let (small, big) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        for (g, c) in &small.terms {
            e.add_scaled_shifted(big, c, g);
        }
        e
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GroupRingElem {
            type Output = GroupRingElem;
            fn $m(self, rhs: GroupRingElem) -> GroupRingElem { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        -&self
    }
}

/// Rank-one helper: `Σ c_i t^i` from `(exponent, coefficient)` pairs.
pub fn poly(ring: CoeffRing, terms: &[(i64, i64)]) -> GroupRingElem {
    let mut e = GroupRingElem::zero(ring, 1);
    for &(k, c) in terms {
        e.add_term(LatticePoint::t(k), ring.canonical(crate::ring::int(c)).unwrap());
    }
    e
}

/// Vector-of-exponents helper for higher rank monomials.
pub fn mono(ring: CoeffRing, exps: &[i64], c: i64) -> GroupRingElem {
    GroupRingElem::monomial(ring, LatticePoint::new(exps.to_vec()), crate::ring::int(c))
}

