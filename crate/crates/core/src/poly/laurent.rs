use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use super::coeff::Coeff;
use super::PolyError;

/// Exponent vector, one entry per ring variable.
pub type Exps = SmallVec<[i32; 2]>;

/// Ordered list of variable names. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<[String]>);

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Ring {
        Ring(vars.iter().map(|v| v.as_ref().to_string()).collect())
    }

    /// The bracket ring `{A}`.
    pub fn a() -> Ring {
        static R: OnceLock<Ring> = OnceLock::new();
        R.get_or_init(|| Ring::new(&["A"])).clone()
    }

    /// The Kauffman ring `{z, a}`.
    pub fn za() -> Ring {
        static R: OnceLock<Ring> = OnceLock::new();
        R.get_or_init(|| Ring::new(&["z", "a"])).clone()
    }

    /// The Conway ring `{z}`.
    pub fn z() -> Ring {
        static R: OnceLock<Ring> = OnceLock::new();
        R.get_or_init(|| Ring::new(&["z"])).clone()
    }

    /// The Jones ring `{u}` with `u = t^(1/4)`.
    pub fn u() -> Ring {
        static R: OnceLock<Ring> = OnceLock::new();
        R.get_or_init(|| Ring::new(&["u"])).clone()
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, var: &str) -> Option<usize> {
        self.0.iter().position(|v| v == var)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

/// Integer Laurent polynomial over a named ring. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: Ring,
    terms: BTreeMap<Exps, Coeff>,
}

impl LaurentPoly {
    pub fn zero(ring: &Ring) -> Self {
        LaurentPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: impl Into<Coeff>) -> Self {
        Self::monomial(ring, &vec![0; ring.arity()], c)
    }

    /// `c * prod(var_i ^ exps_i)`.
    pub fn monomial(ring: &Ring, exps: &[i32], c: impl Into<Coeff>) -> Self {
        assert_eq!(exps.len(), ring.arity(), "exponent vector length must match ring arity");
        let mut p = Self::zero(ring);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Exps::from_slice(exps), c);
        }
        p
    }

    /// The variable `var` itself, raised to `k`.
    pub fn var_pow(ring: &Ring, var: &str, k: i32) -> Result<Self, PolyError> {
        let i = ring.index_of(var).ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let mut e = vec![0; ring.arity()];
        e[i] = k;
        Ok(Self::monomial(ring, &e, 1))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I, E>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (E, Coeff)>,
        E: AsRef<[i32]>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.as_ref().len(), ring.arity(), "exponent vector length must match ring arity");
            p.add_term(Exps::from_slice(e.as_ref()), &c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i32], &Coeff)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i32]) -> Coeff {
        self.terms.get(exps).cloned().unwrap_or(Coeff::ZERO)
    }

    /// The single term of a monomial, if this is one.
    pub fn as_monomial(&self) -> Option<(&[i32], &Coeff)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, e: Exps, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &LaurentPoly) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch(format!("{:?}", self.ring), format!("{:?}", other.ring)))
        }
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_assign_poly(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_ring(other)?;
        Ok(self.clone() + (-other.clone()))
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        self.check_ring(other)?;
        let mut out = LaurentPoly::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, &c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    /// In-place `self += other`. Panics on ring mismatch.
    pub fn add_assign_poly(&mut self, other: &LaurentPoly) {
        assert!(self.ring == other.ring, "ring mismatch");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }

    /// Multiplies by `c * x^shift` without a general product.
    pub fn mul_monomial(&self, shift: &[i32], c: &Coeff) -> LaurentPoly {
        assert_eq!(shift.len(), self.ring.arity());
        let mut out = LaurentPoly::zero(&self.ring);
        if c.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(e, k)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), k.mul_ref(c)))
            .collect();
        out
    }

    pub fn scale(&self, c: &Coeff) -> LaurentPoly {
        self.mul_monomial(&vec![0; self.ring.arity()], c)
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power of a monomial (negative exponents need a unit
    /// coefficient).
    pub fn monomial_pow(&self, k: i32) -> Result<LaurentPoly, PolyError> {
        let (e, c) = self.as_monomial().ok_or(PolyError::NotMonomial)?;
        if k < 0 && !(c.is_one() || *c == Coeff::from(-1i64)) {
            return Err(PolyError::NotMonomial);
        }
        // A unit coefficient is its own inverse, so c^|k| covers k < 0 too.
        let mut coeff = Coeff::ONE;
        for _ in 0..k.unsigned_abs() {
            coeff = coeff.mul_ref(c);
        }
        let e: Vec<i32> = e.iter().map(|x| x * k).collect();
        Ok(LaurentPoly::monomial(&self.ring, &e, coeff))
    }

    /// Replaces `var^k` by `image^k` everywhere. `image` must be a
    /// single term with coefficient ±1; the result lives in `image`'s
    /// ring, with the remaining variables of `self` mapped by name.
    pub fn substitute(&self, var: &str, image: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        let vi = self.ring.index_of(var).ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let (img_e, img_c) = image.as_monomial().ok_or(PolyError::NotMonomial)?;
        let neg = if img_c.is_one() {
            false
        } else if *img_c == Coeff::from(-1i64) {
            true
        } else {
            return Err(PolyError::NotMonomial);
        };
        let target = image.ring.clone();
        // Other source variables must exist in the target ring.
        let mut map = Vec::with_capacity(self.ring.arity());
        for (i, v) in self.ring.vars().iter().enumerate() {
            if i == vi {
                map.push(None);
            } else {
                let t = target.index_of(v).ok_or_else(|| PolyError::UnknownVariable(v.clone()))?;
                map.push(Some(t));
            }
        }
        let mut out = LaurentPoly::zero(&target);
        for (e, c) in &self.terms {
            let k = e[vi];
            let mut ne: Exps = img_e.iter().map(|x| x * k).collect();
            for (i, m) in map.iter().enumerate() {
                if let Some(t) = m {
                    ne[*t] += e[i];
                }
            }
            let c = if neg && k.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
            out.add_term(ne, &c);
        }
        Ok(out)
    }

    /// Negates the exponent of `var` in every term.
    pub fn mirror(&self, var: &str) -> Result<LaurentPoly, PolyError> {
        let vi = self.ring.index_of(var).ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let mut out = LaurentPoly::zero(&self.ring);
        out.terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[vi] = -e[vi];
                (e, c.clone())
            })
            .collect();
        Ok(out)
    }

    /// Ring homomorphism into `target`, sending variable `i` to
    /// `images[i]`. Negative powers are only allowed when the image is a
    /// unit monomial.
    pub fn evaluate(&self, target: &Ring, images: &[LaurentPoly]) -> Result<LaurentPoly, PolyError> {
        assert_eq!(images.len(), self.ring.arity());
        for img in images {
            if img.ring != *target {
                return Err(PolyError::RingMismatch(format!("{:?}", img.ring), format!("{:?}", target)));
            }
        }
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = LaurentPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let f = if k >= 0 { images[i].pow(k as u32) } else { images[i].monomial_pow(k)? };
                t = &t * &f;
            }
            out.add_assign_poly(&t);
        }
        Ok(out)
    }

    /// Lowest and highest exponent of variable `i`, or `None` for zero.
    pub fn degree_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Exact division in a one-variable ring. Returns `None` if `divisor`
    /// does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<Option<LaurentPoly>, PolyError> {
        self.check_ring(divisor)?;
        if self.ring.arity() != 1 {
            return Err(PolyError::NotUnivariate);
        }
        let (dlo, dhi) = divisor.degree_range(0).ok_or(PolyError::DivisionByZero)?;
        let lead = divisor.coeff(&[dhi]);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(&self.ring);
        while let Some((rlo, rhi)) = rem.degree_range(0) {
            if rhi - rlo < dhi - dlo {
                return Ok(None);
            }
            let rc = rem.coeff(&[rhi]);
            let Some(q) = rc.div_exact(&lead) else {
                return Ok(None);
            };
            let shift = [rhi - dhi];
            let step = divisor.mul_monomial(&shift, &q);
            rem = &rem - &step;
            quot.add_term(Exps::from_slice(&shift), &q);
        }
        Ok(Some(quot))
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_assign_poly(&rhs);
        self
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign_poly(rhs);
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.clone() + (-rhs.clone())
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.ring)
    }
}
