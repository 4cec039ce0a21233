//! Exact p-adic arithmetic over Q_p for odd primes p.
//!
//! Three layers:
//!
//! * exact valuations [`vp`] on arbitrary-precision rationals — the workhorse;
//! * [`PadicContext`], a validated (p, working precision) pair;
//! * [`PadicApprox`], a truncated p-adic number `p^val · unit` with an explicit
//!   count of guaranteed base-p digits. Truncation is used only where exact
//!   rational arithmetic cannot reach: Hensel square roots of non-square
//!   rationals, p-adic log/exp, and adaptive valuation of x + y√d in the
//!   split case.
//!
//! Precision policy: contexts default to [`DEFAULT_PRECISION`] digits;
//! adaptive computations double their working precision until the answer is
//! certified or the cap (env `KEPLER_MAX_PREC`, default 256) is hit, which
//! surfaces as [`Error::PrecisionExhausted`] rather than a wrong answer.

use crate::arith::{self, mod_inverse, rational_mod, vp_bigint};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Exact rational scalar used throughout the engine.
pub type Rational = num_rational::BigRational;

/// Default number of guaranteed digits for truncated computations.
pub const DEFAULT_PRECISION: u32 = 32;

/// Hard cap for adaptive precision escalation (override: env KEPLER_MAX_PREC).
pub fn max_precision_cap() -> u32 {
    std::env::var("KEPLER_MAX_PREC")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(256)
}

/// A valuation value: a finite integer or +∞ (the valuation of 0).
///
/// The derived order puts every finite value below `Infinity`, matching the
/// ultrametric convention ν(0) = +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    /// ν_p of a nonzero element.
    Finite(i64),
    /// ν_p(0).
    Infinity,
}

impl Val {
    /// The finite value, or an error for +∞ (used where 0 is out of domain).
    pub fn finite(self) -> Result<i64> {
        match self {
            Val::Finite(v) => Ok(v),
            Val::Infinity => Err(Error::InvalidInput(
                "valuation of zero where a nonzero element is required".into(),
            )),
        }
    }

    /// True iff this is +∞.
    pub fn is_infinite(self) -> bool {
        matches!(self, Val::Infinity)
    }

    /// Valuation of a sum is at least the min of the valuations.
    pub fn min_with(self, other: Val) -> Val {
        self.min(other)
    }

    /// Valuation of a product: sum, absorbing +∞.
    pub fn add_val(self, other: Val) -> Val {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinity,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinity => write!(f, "+inf"),
        }
    }
}

/// ν_p of an exact rational (ν of numerator minus ν of denominator).
pub fn vp(q: &Rational, p: u64) -> Val {
    if q.is_zero() {
        return Val::Infinity;
    }
    let vn = vp_bigint(q.numer(), p).expect("nonzero numerator");
    let vd = vp_bigint(q.denom(), p).expect("nonzero denominator");
    Val::Finite(vn - vd)
}

/// The unit part q / p^{ν_p(q)} of a nonzero rational.
pub fn unit_part(q: &Rational, p: u64) -> Result<Rational> {
    let v = vp(q, p).finite()?;
    Ok(q * pow_rational(p, -v))
}

/// p^k as an exact rational, k ∈ Z.
pub fn pow_rational(p: u64, k: i64) -> Rational {
    let pk = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from_integer(pk)
    } else {
        Rational::new(BigInt::one(), pk)
    }
}

/// A validated pair (odd prime p, working precision N ≥ 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: u64,
    precision: u32,
}

impl PadicContext {
    /// Build a context; p must be an odd prime ≥ 3 and N ≥ 1.
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !arith::is_prime_u64(p) {
            return Err(Error::InvalidPrime(p));
        }
        if precision == 0 {
            return Err(Error::InvalidInput("precision must be at least 1".into()));
        }
        Ok(PadicContext { p, precision })
    }

    /// Context with the default working precision.
    pub fn with_default_precision(p: u64) -> Result<Self> {
        Self::new(p, DEFAULT_PRECISION)
    }

    /// The prime.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Guaranteed digits for truncated values built in this context.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Same prime, different precision.
    pub fn at_precision(&self, precision: u32) -> Self {
        PadicContext { precision, ..*self }
    }

    /// p^k as a BigInt.
    pub fn p_pow(&self, k: u32) -> BigInt {
        BigInt::from(self.p).pow(k)
    }
}

/// A truncated p-adic number: `p^val · unit` with `prec` guaranteed digits.
///
/// Invariants for the nonzero form: `1 ≤ unit < p^prec`, `p ∤ unit`,
/// `prec ≥ 1`; the represented exact value x satisfies ν_p(x) = val and
/// x / p^val ≡ unit (mod p^prec). `Zero` records full cancellation: the
/// value is indistinguishable from 0 at the precision carried by the inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicApprox {
    ctx: PadicContext,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Zero,
    NonZero { val: i64, unit: BigInt, prec: u32 },
}

impl PadicApprox {
    /// Truncate an exact rational to the context's precision.
    pub fn from_rational(q: &Rational, ctx: PadicContext) -> Self {
        match vp(q, ctx.p) {
            Val::Infinity => PadicApprox {
                ctx,
                repr: Repr::Zero,
            },
            Val::Finite(v) => {
                let u = q * pow_rational(ctx.p, -v);
                let m = ctx.p_pow(ctx.precision);
                let unit = rational_mod(u.numer(), u.denom(), &m)
                    .expect("unit part has invertible denominator");
                PadicApprox {
                    ctx,
                    repr: Repr::NonZero {
                        val: v,
                        unit,
                        prec: ctx.precision,
                    },
                }
            }
        }
    }

    /// Exact zero (or a value fully cancelled at the available precision).
    pub fn zero(ctx: PadicContext) -> Self {
        PadicApprox {
            ctx,
            repr: Repr::Zero,
        }
    }

    /// Assemble from parts; reduces the unit mod p^prec and strips stray
    /// powers of p into the valuation.
    pub fn from_parts(val: i64, unit: BigInt, prec: u32, ctx: PadicContext) -> Self {
        let m = ctx.p_pow(prec);
        let mut u = unit.mod_floor(&m);
        if u.is_zero() {
            return Self::zero(ctx);
        }
        let shift = vp_bigint(&u, ctx.p).expect("nonzero unit");
        if shift > 0 {
            // Fewer digits remain once leading zeros move into the valuation.
            let new_prec = prec as i64 - shift;
            if new_prec < 1 {
                return Self::zero(ctx);
            }
            u /= ctx.p_pow(shift as u32);
            u = u.mod_floor(&ctx.p_pow(new_prec as u32));
            return PadicApprox {
                ctx,
                repr: Repr::NonZero {
                    val: val + shift,
                    unit: u,
                    prec: new_prec as u32,
                },
            };
        }
        PadicApprox {
            ctx,
            repr: Repr::NonZero { val, unit: u, prec },
        }
    }

    /// Interpret `n` as a value known modulo p^abs_prec (abs_prec ≥ 1).
    pub fn from_int_mod(n: &BigInt, abs_prec: u32, ctx: PadicContext) -> Self {
        Self::from_parts(0, n.clone(), abs_prec, ctx)
    }

    /// The context this value was built in.
    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    /// Valuation (∞ for the zero flag).
    pub fn valuation(&self) -> Val {
        match &self.repr {
            Repr::Zero => Val::Infinity,
            Repr::NonZero { val, .. } => Val::Finite(*val),
        }
    }

    /// True iff the zero flag is set.
    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    /// Guaranteed significant digits of the unit part (0 for zero).
    pub fn precision(&self) -> u32 {
        match &self.repr {
            Repr::Zero => 0,
            Repr::NonZero { prec, .. } => *prec,
        }
    }

    /// Unit part (in [1, p^prec), coprime to p).
    pub fn unit(&self) -> Result<&BigInt> {
        match &self.repr {
            Repr::Zero => Err(Error::PrecisionExhausted {
                max: self.ctx.precision,
                context: "unit part of a fully cancelled value".into(),
            }),
            Repr::NonZero { unit, .. } => Ok(unit),
        }
    }

    /// The value reduced modulo p^k (requires val ≥ 0 and val + prec ≥ k).
    pub fn residue_mod(&self, k: u32) -> Result<BigInt> {
        let m = self.ctx.p_pow(k);
        match &self.repr {
            Repr::Zero => Ok(BigInt::zero()),
            Repr::NonZero { val, unit, prec } => {
                if *val < 0 {
                    return Err(Error::InvalidInput(
                        "residue of a value with negative valuation".into(),
                    ));
                }
                if val + *prec as i64 < k as i64 {
                    return Err(Error::PrecisionExhausted {
                        max: *prec,
                        context: format!("residue mod p^{k} needs more digits"),
                    });
                }
                Ok((unit * self.ctx.p_pow(*val as u32)).mod_floor(&m))
            }
        }
    }

    /// Base-p digits of the unit part, least significant first.
    pub fn digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Zero => vec![],
            Repr::NonZero { unit, prec, .. } => {
                let p = BigInt::from(self.ctx.p);
                let mut v = unit.clone();
                let mut out = Vec::with_capacity(*prec as usize);
                for _ in 0..*prec {
                    let (q, r) = v.div_rem(&p);
                    out.push(r.to_u64().expect("digit fits in u64"));
                    v = q;
                }
                out
            }
        }
    }

    fn check_same_p(&self, other: &Self) -> Result<()> {
        if self.ctx.p != other.ctx.p {
            return Err(Error::AmbientMismatch(format!(
                "p = {} vs p = {}",
                self.ctx.p, other.ctx.p
            )));
        }
        Ok(())
    }

    /// Sum with precision tracking; full cancellation yields the zero flag.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_p(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) => Ok(other.clone()),
            (_, Repr::Zero) => Ok(self.clone()),
            (
                Repr::NonZero {
                    val: va,
                    unit: ua,
                    prec: na,
                },
                Repr::NonZero {
                    val: vb,
                    unit: ub,
                    prec: nb,
                },
            ) => {
                let abs_a = va + *na as i64;
                let abs_b = vb + *nb as i64;
                let abs = abs_a.min(abs_b);
                let v0 = (*va).min(*vb);
                let digits = (abs - v0) as u32; // ≥ 1: each operand has ≥ 1 digit
                let m = self.ctx.p_pow(digits);
                let xa = (ua * self.ctx.p_pow((va - v0) as u32)).mod_floor(&m);
                let xb = (ub * self.ctx.p_pow((vb - v0) as u32)).mod_floor(&m);
                Ok(Self::from_parts(v0, xa + xb, digits, self.ctx))
            }
        }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Zero => self.clone(),
            Repr::NonZero { val, unit, prec } => {
                let m = self.ctx.p_pow(*prec);
                PadicApprox {
                    ctx: self.ctx,
                    repr: Repr::NonZero {
                        val: *val,
                        unit: (m.clone() - unit).mod_floor(&m),
                        prec: *prec,
                    },
                }
            }
        }
    }

    /// Difference; sub(x, x) sets the zero flag.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product; precision is the min of the operand precisions.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_p(other)?;
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Ok(Self::zero(self.ctx)),
            (
                Repr::NonZero {
                    val: va,
                    unit: ua,
                    prec: na,
                },
                Repr::NonZero {
                    val: vb,
                    unit: ub,
                    prec: nb,
                },
            ) => {
                let prec = (*na).min(*nb);
                Ok(Self::from_parts(va + vb, ua * ub, prec, self.ctx))
            }
        }
    }

    /// Quotient; errors on a zero divisor.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same_p(other)?;
        match (&self.repr, &other.repr) {
            (_, Repr::Zero) => Err(Error::DivisionByZero),
            (Repr::Zero, _) => Ok(Self::zero(self.ctx)),
            (
                Repr::NonZero {
                    val: va,
                    unit: ua,
                    prec: na,
                },
                Repr::NonZero {
                    val: vb,
                    unit: ub,
                    prec: nb,
                },
            ) => {
                let prec = (*na).min(*nb);
                let m = self.ctx.p_pow(prec);
                let inv = mod_inverse(&ub.mod_floor(&m), &m).expect("unit is invertible");
                Ok(Self::from_parts(va - vb, ua * inv, prec, self.ctx))
            }
        }
    }

    /// Equality at shared precision: equal valuations and units agreeing
    /// modulo p^min(prec_a, prec_b).
    pub fn agrees_with(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Zero, Repr::Zero) => true,
            (
                Repr::NonZero {
                    val: va,
                    unit: ua,
                    prec: na,
                },
                Repr::NonZero {
                    val: vb,
                    unit: ub,
                    prec: nb,
                },
            ) => {
                if va != vb {
                    return false;
                }
                let m = self.ctx.p_pow((*na).min(*nb));
                ua.mod_floor(&m) == ub.mod_floor(&m)
            }
            _ => false,
        }
    }
}

impl fmt::Display for PadicApprox {
    fmt_padic_approx!();
}

macro_rules! fmt_padic_approx {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match &self.repr {
                Repr::Zero => write!(f, "0"),
                Repr::NonZero { val, prec, .. } => {
                    let p = self.ctx.p;
                    let digits = self.digits();
                    let mut first = true;
                    for (i, d) in digits.iter().enumerate() {
                        if *d == 0 {
                            continue;
                        }
                        let e = *val + i as i64;
                        if !first {
                            write!(f, " + ")?;
                        }
                        first = false;
                        match e {
                            0 => write!(f, "{d}")?,
                            1 => {
                                if *d == 1 {
                                    write!(f, "{p}")?
                                } else {
                                    write!(f, "{d}*{p}")?
                                }
                            }
                            _ => {
                                if *d == 1 {
                                    write!(f, "{p}^{e}")?
                                } else {
                                    write!(f, "{d}*{p}^{e}")?
                                }
                            }
                        }
                    }
                    if first {
                        write!(f, "0")?;
                    }
                    write!(f, " + O({p}^{})", val + *prec as i64)
                }
            }
        }
    };
}
use fmt_padic_approx;

/// Hensel square root of a nonzero rational: `Ok(None)` for non-squares.
///
/// Requires ν_p(q) even for a root to exist; the returned root t satisfies
/// t² ≡ q (mod p^{N + ν_p(q)}) and its first digit lies in [1, (p−1)/2]
/// (the canonical choice between ±t).
pub fn hensel_sqrt(q: &Rational, ctx: PadicContext) -> Result<Option<PadicApprox>> {
    let p = ctx.p();
    let v = vp(q, p)
        .finite()
        .map_err(|_| Error::InvalidInput("square root of zero is out of domain".into()))?;
    if v % 2 != 0 {
        return Ok(None); // odd valuation: not a square in Q_p
    }
    let n = ctx.precision();
    let u = q * pow_rational(p, -v);
    let m = ctx.p_pow(n);
    let u_mod = rational_mod(u.numer(), u.denom(), &m)?;
    let u0 = (&u_mod % BigInt::from(p)).to_u64().expect("digit fits");
    let t0 = match arith::sqrt_mod_p(u0, p) {
        Some(t) => t,
        None => return Ok(None), // unit part is a quadratic non-residue
    };
    // Newton iteration t ← (t + u/t)/2 doubles the number of correct digits.
    let mut t = BigInt::from(t0);
    let mut k = 1u32;
    let inv2 = mod_inverse(&BigInt::from(2), &m).expect("2 invertible for odd p");
    while k < n {
        k = (2 * k).min(n);
        let mk = ctx.p_pow(k);
        let t_inv = mod_inverse(&t.mod_floor(&mk), &mk).expect("root is a unit");
        t = ((&t + u_mod.mod_floor(&mk) * t_inv) * &inv2).mod_floor(&mk);
    }
    debug_assert!((&t * &t).mod_floor(&m) == u_mod);
    // Canonical sign: first digit in [1, (p−1)/2].
    let d0 = (&t % BigInt::from(p)).to_u64().expect("digit fits");
    if d0 > (p - 1) / 2 {
        t = (&m - t).mod_floor(&m);
    }
    Ok(Some(PadicApprox::from_parts(v / 2, t, n, ctx)))
}

/// p-adic logarithm on 1 + pZ_p: log x = Σ (−1)^{n+1} (x−1)^n / n.
///
/// An isometry for p ≥ 3: ν(log x) = ν(x − 1).
pub fn plog(x: &PadicApprox) -> Result<PadicApprox> {
    let ctx = x.context();
    let p = ctx.p();
    match x.valuation() {
        Val::Finite(0) => {}
        _ => {
            return Err(Error::InvalidInput(
                "plog domain is the principal units 1 + pZ_p".into(),
            ))
        }
    }
    let unit = x.unit()?.clone();
    let abs = x.precision(); // absolute precision, since val = 0
    let z = unit - BigInt::one();
    if z.is_zero() {
        return Ok(PadicApprox::zero(ctx));
    }
    let t = vp_bigint(&z, p).expect("nonzero") as u32;
    if t == 0 {
        return Err(Error::InvalidInput(
            "plog domain is the principal units 1 + pZ_p".into(),
        ));
    }
    // Terms beyond n_max contribute nothing modulo p^abs.
    let mut n_max = 1u32;
    while (n_max as i64 + 1) * t as i64 - ilog_p(n_max as u64 + 1, p) < abs as i64 {
        n_max += 1;
    }
    let guard = ilog_p(n_max as u64, p) as u32 + 1;
    let m = ctx.p_pow(abs + guard);
    let zm = z.mod_floor(&m);
    let mut zpow = BigInt::one();
    let mut acc = BigInt::zero();
    for n in 1..=n_max as u64 {
        zpow = (&zpow * &zm).mod_floor(&m);
        let e = vp_bigint(&BigInt::from(n), p).expect("n ≥ 1") as u32;
        let odd_part = n / (p.pow(e) as u64);
        let term = &zpow / ctx.p_pow(e); // exact: p^{nt} | z^n and e ≤ guard
        let inv = mod_inverse(&BigInt::from(odd_part), &m).expect("coprime to p");
        let signed = if n % 2 == 1 {
            term * inv
        } else {
            -(term * inv)
        };
        acc = (acc + signed).mod_floor(&m);
    }
    Ok(PadicApprox::from_int_mod(&acc, abs, ctx))
}

/// p-adic exponential on pZ_p (p ≥ 3): exp z = Σ z^n / n!.
///
/// Inverse isometry of [`plog`]: ν(exp z − 1) = ν(z).
pub fn pexp(z: &PadicApprox) -> Result<PadicApprox> {
    let ctx = z.context();
    let p = ctx.p();
    match z.valuation() {
        Val::Infinity => {
            let one = Rational::one();
            return Ok(PadicApprox::from_rational(&one, ctx));
        }
        Val::Finite(t) if t >= 1 => {}
        _ => {
            return Err(Error::InvalidInput(
                "pexp domain is pZ_p for p ≥ 3".into(),
            ))
        }
    }
    let t = match z.valuation() {
        Val::Finite(t) => t as u32,
        Val::Infinity => unreachable!(),
    };
    let abs = (z.precision() as i64 + t as i64) as u32;
    // ν(z^n / n!) ≥ n·t − (n − 1)/(p − 1) grows at least like n/2 for p ≥ 3.
    let mut n_max = 1u64;
    loop {
        let nv = (n_max + 1) as i64 * t as i64 - vp_factorial(n_max + 1, p);
        if nv >= abs as i64 {
            break;
        }
        n_max += 1;
    }
    let guard = vp_factorial(n_max, p) as u32 + 1;
    let m = ctx.p_pow(abs + guard);
    let zm = {
        let unit = z.unit()?.clone();
        (unit * ctx.p_pow(t)).mod_floor(&m)
    };
    let mut zpow = BigInt::one();
    let mut fact_vp = 0u32; // ν_p(n!)
    let mut fact_odd = BigInt::one(); // n! / p^{ν_p(n!)} mod m
    let mut acc = BigInt::one();
    for n in 1..=n_max {
        zpow = (&zpow * &zm).mod_floor(&m);
        let e = vp_bigint(&BigInt::from(n), p).expect("n ≥ 1") as u32;
        fact_vp += e;
        fact_odd = (&fact_odd * BigInt::from(n / (p.pow(e) as u64))).mod_floor(&m);
        let term = &zpow / ctx.p_pow(fact_vp); // exact: ν(z^n) = n·t ≥ ν(n!)
        let inv = mod_inverse(&fact_odd, &m).expect("coprime to p");
        acc = (acc + term * inv).mod_floor(&m);
    }
    Ok(PadicApprox::from_int_mod(&acc, abs, ctx))
}

/// Multiplicative order of a p-adic unit's residue in F_p^*.
pub fn unit_order_mod_p(q: &Rational, p: u64) -> Result<u64> {
    match vp(q, p) {
        Val::Finite(0) => {}
        _ => {
            return Err(Error::InvalidInput(
                "order mod p requires a p-adic unit".into(),
            ))
        }
    }
    let m = BigInt::from(p);
    let r = rational_mod(q.numer(), q.denom(), &m)?
        .to_u64()
        .expect("residue fits in u64");
    Ok(arith::order_mod_p(r, p))
}

/// ⌊log_p n⌋ for n ≥ 1.
fn ilog_p(n: u64, p: u64) -> i64 {
    let mut k = 0i64;
    let mut m = n;
    while m >= p {
        m /= p;
        k += 1;
    }
    k
}

/// ν_p(n!) by Legendre's formula.
fn vp_factorial(n: u64, p: u64) -> i64 {
    let mut s = 0i64;
    let mut q = n / p;
    while q > 0 {
        s += q as i64;
        q /= p;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn context_rejects_bad_primes() {
        assert_eq!(PadicContext::new(2, 8), Err(Error::InvalidPrime(2)));
        assert_eq!(PadicContext::new(9, 8), Err(Error::InvalidPrime(9)));
        assert_eq!(PadicContext::new(1, 8), Err(Error::InvalidPrime(1)));
        assert!(PadicContext::new(3, 8).is_ok());
        assert!(PadicContext::new(10007, 4).is_ok());
    }

    #[test]
    fn valuations_of_rationals() {
        assert_eq!(vp(&q(63, 1), 3), Val::Finite(2));
        assert_eq!(vp(&q(5, 9), 3), Val::Finite(-2));
        assert_eq!(vp(&q(0, 1), 3), Val::Infinity);
        assert_eq!(vp(&q(-45, 7), 3), Val::Finite(2));
    }

    #[test]
    fn valuation_is_multiplicative_and_ultrametric() {
        let cases = [q(6, 5), q(-9, 4), q(10, 27), q(7, 1)];
        for a in &cases {
            for b in &cases {
                let va = vp(a, 3);
                let vb = vp(b, 3);
                assert_eq!(vp(&(a * b), 3), va.add_val(vb));
                let sum = a + b;
                assert!(vp(&sum, 3) >= va.min(vb));
                if va != vb {
                    assert_eq!(vp(&sum, 3), va.min(vb));
                }
            }
        }
    }

    #[test]
    fn approx_add_matches_example() {
        let ctx = PadicContext::new(3, 8).unwrap();
        let one = PadicApprox::from_rational(&q(1, 1), ctx);
        let x = PadicApprox::from_rational(&q(486, 1), ctx); // 2·3^5
        let s = one.add(&x).unwrap();
        assert_eq!(s.valuation(), Val::Finite(0));
        assert_eq!(s.unit().unwrap(), &BigInt::from(487));
    }

    #[test]
    fn approx_sub_self_is_zero_flag() {
        let ctx = PadicContext::new(5, 10).unwrap();
        let x = PadicApprox::from_rational(&q(37, 11), ctx);
        let d = x.sub(&x).unwrap();
        assert!(d.is_zero());
        assert_eq!(d.valuation(), Val::Infinity);
    }

    #[test]
    fn approx_mul_div_track_valuation_and_precision() {
        let ctx = PadicContext::new(3, 12).unwrap();
        let a = PadicApprox::from_rational(&q(45, 7), ctx); // ν = 2
        let b = PadicApprox::from_rational(&q(7, 3), ctx); // ν = −1
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.valuation(), Val::Finite(1));
        let quot = prod.div(&b).unwrap();
        assert!(quot.agrees_with(&a));
        assert_eq!(prod.precision(), 12);
        assert!(a.div(&PadicApprox::zero(ctx)).is_err());
    }

    #[test]
    fn cancellation_costs_digits() {
        let ctx = PadicContext::new(3, 6).unwrap();
        // (1 + 3^4) − 1 = 3^4: four digits cancel, two remain.
        let a = PadicApprox::from_rational(&q(82, 1), ctx);
        let b = PadicApprox::from_rational(&q(1, 1), ctx);
        let d = a.sub(&b).unwrap();
        assert_eq!(d.valuation(), Val::Finite(4));
        assert_eq!(d.precision(), 2);
    }

    #[test]
    fn hensel_sqrt_of_244_over_q3() {
        let ctx = PadicContext::new(3, 6).unwrap();
        let t = hensel_sqrt(&q(244, 1), ctx).unwrap().expect("244 is a square in Z_3");
        assert_eq!(t.valuation(), Val::Finite(0));
        let t_int = t.unit().unwrap().clone();
        let m = ctx.p_pow(6);
        assert_eq!((&t_int * &t_int).mod_floor(&m), BigInt::from(244).mod_floor(&m));
        // Canonical sign: first digit 1 (in [1, (p−1)/2] = {1}).
        assert_eq!(t.digits()[0], 1);
    }

    #[test]
    fn hensel_sqrt_rejects_non_squares() {
        let ctx = PadicContext::new(3, 6).unwrap();
        assert!(hensel_sqrt(&q(2, 1), ctx).unwrap().is_none()); // non-residue
        assert!(hensel_sqrt(&q(3, 1), ctx).unwrap().is_none()); // odd valuation
        assert!(hensel_sqrt(&q(0, 1), ctx).is_err()); // out of domain
    }

    #[test]
    fn hensel_sqrt_of_4_over_q5_picks_canonical_root() {
        let ctx = PadicContext::new(5, 6).unwrap();
        let t = hensel_sqrt(&q(4, 1), ctx).unwrap().unwrap();
        // ±2 are the roots; the canonical one has first digit 2 ∈ [1, 2].
        assert_eq!(t.unit().unwrap(), &BigInt::from(2));
    }

    #[test]
    fn hensel_sqrt_random_squares_round_trip() {
        for p in [3u64, 5, 7, 11, 13] {
            let ctx = PadicContext::new(p, 8).unwrap();
            let m = ctx.p_pow(8);
            let mut x = BigInt::from(1);
            for i in 0..200u64 {
                // Deterministic scatter of units.
                x = (&x * BigInt::from(1_103_515_245u64) + BigInt::from(12_345 + i)).mod_floor(&m);
                if (&x % BigInt::from(p)).is_zero() {
                    continue;
                }
                let sq = Rational::from_integer((&x * &x).mod_floor(&m));
                if sq.is_zero() {
                    continue;
                }
                let t = hensel_sqrt(&sq, ctx).unwrap().expect("a square of a unit");
                let u = t.unit().unwrap();
                assert_eq!(
                    (u * u).mod_floor(&m),
                    Rational::to_integer(&sq).mod_floor(&m)
                );
            }
        }
    }

    #[test]
    fn plog_of_244_has_valuation_5() {
        let ctx = PadicContext::new(3, 10).unwrap();
        let x = PadicApprox::from_rational(&q(244, 1), ctx); // 1 + 3^5
        let l = plog(&x).unwrap();
        assert_eq!(l.valuation(), Val::Finite(5));
    }

    #[test]
    fn plog_is_a_homomorphism() {
        let ctx = PadicContext::new(5, 12).unwrap();
        let x = PadicApprox::from_rational(&q(26, 1), ctx); // 1 + 25
        let y = PadicApprox::from_rational(&q(11, 21), ctx); // ≡ 1 mod 5
        let lx = plog(&x).unwrap();
        let ly = plog(&y).unwrap();
        let lxy = plog(&x.mul(&y).unwrap()).unwrap();
        assert!(lx.add(&ly).unwrap().agrees_with(&lxy));
    }

    #[test]
    fn pexp_inverts_plog() {
        let ctx = PadicContext::new(3, 12).unwrap();
        for val in [q(4, 1), q(10, 1), q(244, 1), q(13, 4)] {
            let x = PadicApprox::from_rational(&val, ctx);
            if plog(&x).is_err() {
                continue;
            }
            let back = pexp(&plog(&x).unwrap()).unwrap();
            assert!(back.agrees_with(&x), "exp(log x) = x for {val}");
        }
        let z = PadicApprox::from_rational(&q(6, 1), ctx);
        let e = pexp(&z).unwrap();
        assert_eq!(plog(&e).unwrap().valuation(), z.valuation());
    }

    #[test]
    fn negated_exp_of_half_log_is_other_sqrt_of_244() {
        // −exp(½·log 244) is the square root of 244 that is ≡ 2 mod 3.
        let ctx = PadicContext::new(3, 10).unwrap();
        let x = PadicApprox::from_rational(&q(244, 1), ctx);
        let half = PadicApprox::from_rational(&q(1, 2), ctx);
        let r = pexp(&plog(&x).unwrap().mul(&half).unwrap()).unwrap().neg();
        assert_eq!(r.digits()[0], 2);
        let canonical = hensel_sqrt(&q(244, 1), ctx).unwrap().unwrap();
        assert!(r.agrees_with(&canonical.neg()));
        let sq = r.mul(&r).unwrap();
        assert!(sq.agrees_with(&PadicApprox::from_rational(&q(244, 1), ctx)));
    }

    #[test]
    fn unit_orders() {
        assert_eq!(unit_order_mod_p(&q(4, 1), 3).unwrap(), 1);
        assert_eq!(unit_order_mod_p(&q(8, 1), 3).unwrap(), 2);
        assert_eq!(unit_order_mod_p(&q(7, 1), 5).unwrap(), 4);
        assert_eq!(unit_order_mod_p(&q(7, 4), 5).unwrap(), 2); // 7/4 ≡ 3 mod 5
        assert!(unit_order_mod_p(&q(3, 1), 3).is_err());
    }
}
