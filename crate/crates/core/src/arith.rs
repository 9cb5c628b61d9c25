//! Small exact-arithmetic helpers shared by every module: primality,
//! p-adic orders of integers and rationals, and modular inverses.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic trial-division primality test; primes in this crate are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// Additive p-adic order of an integer; `None` for zero.
pub fn val_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p_big = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = m.div_rem(&p_big);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// Additive p-adic order of a rational; `None` for zero.
pub fn val_rat(q: &BigRational, p: u64) -> Option<i64> {
    let num = val_int(q.numer(), p)?;
    let den = val_int(q.denom(), p).unwrap_or(0);
    Some(num - den)
}

/// Splits a nonzero rational as `p^v * u` with `u` a p-adic unit.
pub fn split_rat(q: &BigRational, p: u64) -> Option<(i64, BigRational)> {
    let v = val_rat(q, p)?;
    let u = q / pow_rat(p, v);
    Some((v, u))
}

pub fn pow_int(p: u64, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), n as usize)
}

pub fn pow_uint(p: u64, n: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), n as usize)
}

/// `p^n` as a rational for any integer `n`.
pub fn pow_rat(p: u64, n: i64) -> BigRational {
    let mag = pow_int(p, n.unsigned_abs() as u32);
    if n >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// Least non-negative residue of `a` modulo `m`.
pub fn mod_floor_uint(a: &BigInt, m: &BigUint) -> BigUint {
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    a.mod_floor(&m_int)
        .to_biguint()
        .expect("mod_floor is non-negative")
}

/// Inverse of `a` modulo a prime `p` by Fermat's little theorem.
pub fn inv_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let mut result = 1u128;
    let mut base = a as u128;
    let mut e = p - 2;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    Some(result as u64)
}

/// Reduces a p-integral rational modulo `p^n`; `None` if `p` divides the denominator.
pub fn rat_mod_pow(q: &BigRational, p: u64, n: u32) -> Option<BigUint> {
    let modulus = pow_uint(p, n);
    if modulus.is_one() {
        return Some(BigUint::zero());
    }
    let den = mod_floor_uint(q.denom(), &modulus);
    if (&den % p).is_zero() {
        return None;
    }
    let den_inv = crate::completion::hensel_inverse(&den, p, n);
    let num = mod_floor_uint(q.numer(), &modulus);
    Some(num * den_inv % modulus)
}

/// Reduces a p-integral rational to `F_p`.
pub fn rat_mod_p(q: &BigRational, p: u64) -> Option<u64> {
    rat_mod_pow(q, p, 1).map(|r| r.to_u64().expect("residue below p"))
}

pub fn is_p_integral(q: &BigRational, p: u64) -> bool {
    val_rat(q, p).is_none_or(|v| v >= 0)
}

pub fn abs_int(n: &BigInt) -> BigInt {
    n.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn primality_small_range() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_up_to(100).len(), 25);
    }

    #[test]
    fn rational_orders() {
        assert_eq!(val_rat(&rat(9, 2), 3), Some(2));
        assert_eq!(val_rat(&rat(1, 3), 3), Some(-1));
        assert_eq!(val_rat(&rat(0, 1), 3), None);
        assert_eq!(val_rat(&rat(-18, 5), 3), Some(2));
    }

    #[test]
    fn residues() {
        // -1/2 = 40 mod 81
        assert_eq!(rat_mod_pow(&rat(-1, 2), 3, 4), Some(BigUint::from(40u32)));
        assert_eq!(rat_mod_pow(&rat(1, 3), 3, 4), None);
        assert_eq!(inv_mod_prime(2, 5), Some(3));
        assert_eq!(inv_mod_prime(5, 5), None);
    }
}
