//! Elements of cyclotomic fields `Q(zeta_N)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal `{0}`")]
    BadRational(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}

/// Euler totient.
pub fn euler_phi(n: u64) -> usize {
    assert!(n > 0);
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// `Phi_N` as a monic integer polynomial, ascending coefficients.
///
/// Computed as `(x^N - 1) / prod_{d | N, d < N} Phi_d` by exact integer
/// polynomial division, cached per order.
fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let phi = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^N - 1
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d < n {
                num = poly_div_exact(&num, &cyclotomic_polynomial(d));
            }
        }
        num
    };
    cache.lock().unwrap().insert(n, phi.clone());
    phi
}

/// Exact division of integer polynomials; the divisor must be monic and
/// divide the dividend.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            let t = &c * dc;
            rem[k - dd + i] -= t;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Parse a decimal-free rational literal `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| ExactError::BadRational(s.into()))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| ExactError::BadRational(s.into()))?;
        if q.is_zero() {
            return Err(ExactError::BadRational(s.into()));
        }
        Ok(BigRational::new(p, q))
    } else {
        let p = BigInt::from_str(s).map_err(|_| ExactError::BadRational(s.into()))?;
        Ok(BigRational::from_integer(p))
    }
}

fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element of `Q(zeta_N)` in the power basis reduced modulo `Phi_N`.
///
/// Values of different orders compare equal when they agree after lifting
/// into the compositum `Q(zeta_lcm)`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<BigRational>, // length phi(order)
}

impl Cyclotomic {
    /// Canonical reduced representative of `sum coeffs[k] * zeta_order^k`.
    /// The coefficient vector may have any length; it is reduced modulo
    /// `Phi_order`.  An order of 0 is rejected as malformed.
    pub fn new(order: u64, coeffs: Vec<BigRational>) -> Result<Self, ExactError> {
        if order == 0 {
            return Err(ExactError::ZeroOrder);
        }
        Ok(Self::reduced(order, coeffs))
    }

    fn reduced(order: u64, mut coeffs: Vec<BigRational>) -> Self {
        let phi = euler_phi(order);
        if coeffs.len() > phi {
            let modulus = cyclotomic_polynomial(order);
            for k in (phi..coeffs.len()).rev() {
                let c = std::mem::replace(&mut coeffs[k], BigRational::zero());
                if c.is_zero() {
                    continue;
                }
                // zeta^k = -c * (Phi - x^phi) shifted by k - phi
                for (i, m) in modulus.iter().enumerate().take(phi) {
                    let t = &c * BigRational::from_integer(m.clone());
                    coeffs[k - phi + i] -= t;
                }
            }
        }
        coeffs.resize(phi, BigRational::zero());
        Cyclotomic { order, coeffs }
    }

    pub fn zero(order: u64) -> Self {
        Cyclotomic {
            order,
            coeffs: vec![BigRational::zero(); euler_phi(order)],
        }
    }

    pub fn one(order: u64) -> Self {
        let mut coeffs = vec![BigRational::zero(); euler_phi(order)];
        coeffs[0] = BigRational::one();
        Cyclotomic { order, coeffs }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `zeta_order^power`.
    pub fn root_of_unity(order: u64, power: i64) -> Result<Self, ExactError> {
        if order == 0 {
            return Err(ExactError::ZeroOrder);
        }
        let p = power.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); p + 1];
        coeffs[p] = BigRational::one();
        Ok(Self::reduced(order, coeffs))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational part if the element lies in `Q`, i.e. all non-constant
    /// power-basis coefficients vanish after lifting is unnecessary.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            // The power basis of Q(zeta_N) may express rationals with
            // nonzero zeta-coefficients only through the reduction, which
            // is already canonical, so nothing further to check.
            None
        }
    }

    /// Express this element in `Q(zeta_target)`; `order` must divide `target`.
    pub fn lift_to_order(&self, target: u64) -> Self {
        assert!(
            target % self.order == 0,
            "cannot lift order {} into order {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let stride = (target / self.order) as usize;
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len() - 1) * stride + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * stride] = c.clone();
        }
        Self::reduced(target, coeffs)
    }

    fn common_pair(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            (self.clone(), other.clone())
        } else {
            let m = self.order.lcm(&other.order);
            (self.lift_to_order(m), other.lift_to_order(m))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common_pair(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (mut a, b) = self.common_pair(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x = -x.clone();
        }
        a
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common_pair(other);
        if a.is_zero() || b.is_zero() {
            return Self::zero(a.order);
        }
        let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        Self::reduced(a.order, prod)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x *= r;
        }
        a
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[x]` against `Phi_order`.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // Invariants: r0 = s0 * self (mod Phi), r1 = s1 * self (mod Phi).
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0 = vec![BigRational::zero()];
        let mut s1 = vec![BigRational::one()];
        while !is_zero_poly(&r1) && poly_deg(&r1) > 0 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            s0 = s1;
            r1 = r;
            s1 = s;
        }
        // gcd(self, Phi) is a nonzero constant since self != 0 is reduced.
        debug_assert!(!is_zero_poly(&r1));
        let c = r1[0].clone();
        let inv_c = BigRational::one() / c;
        let coeffs: Vec<BigRational> = s1.iter().map(|x| x * &inv_c).collect();
        Ok(Self::reduced(self.order, coeffs))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Image under the automorphism `zeta_N -> zeta_N^(-1)`; restricted to
    /// character values of finite order this is complex conjugation.  It is
    /// a field automorphism and an involution.
    pub fn galois_conjugate(&self) -> Self {
        let n = self.order;
        let mut coeffs = vec![BigRational::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = ((n as usize) - k) % n as usize;
            coeffs[idx] += c;
        }
        Self::reduced(n, coeffs)
    }

    /// Canonical representative used by `normalize`: values are already
    /// held reduced, so this is a restatement of the invariant.
    pub fn normalize(&self) -> Self {
        Self::reduced(self.order, self.coeffs.clone())
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_deg(p: &[BigRational]) -> usize {
    let mut d = p.len() - 1;
    while d > 0 && p[d].is_zero() {
        d -= 1;
    }
    d
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = poly_deg(den);
    let lead = den[dd].clone();
    let mut rem: Vec<BigRational> = num.to_vec();
    let nd = poly_deg(&rem);
    if nd < dd {
        return (vec![BigRational::zero()], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); nd - dd + 1];
    for k in (dd..=nd).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let q = &rem[k] / &lead;
        quot[k - dd] = q.clone();
        for i in 0..=dd {
            let t = &q * &den[i];
            rem[k - dd + i] -= t;
        }
    }
    (trim(quot), trim(rem))
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by coefficients in the compositum; used only to make
/// reports and registries deterministic.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.common_pair(other);
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            match x.cmp(y) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ms = rational_to_string(&mag);
            if k == 0 {
                write!(f, "{ms}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{ms}*")?;
                }
                if k == 1 {
                    write!(f, "z{}", self.order)?;
                } else {
                    write!(f, "z{}^{}", self.order, k)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    order: u64,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CycloRepr {
            order: self.order,
            coeffs: self.coeffs.iter().map(rational_to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Cyclotomic::new(repr.order, coeffs).map_err(D::Error::custom)
    }
}
