use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `(a | 2)` for odd `a`, indexed by `a mod 8`.
const TWO_TABLE: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

/// Kronecker symbol `(a | n)`.
///
/// Conventions for the extended symbol:
/// * `(a | 2)` is 0 for even `a`, +1 for `a = ±1 mod 8`, -1 for `a = ±3 mod 8`;
/// * `(a | -1)` is -1 for `a < 0` and +1 otherwise;
/// * `(a | 1) = 1` for every `a`.
///
/// `n = 0` is rejected rather than mapped to the `(±1 | 0) = 1` convention.
pub fn kronecker_symbol(a: &BigInt, n: &BigInt) -> Result<i8> {
    if n.is_zero() {
        return Err(Error::Domain("Kronecker symbol (a|0) is not defined here".into()));
    }
    if let (Some(a), Some(n)) = (a.to_i64(), n.to_i64()) {
        return kronecker_i64(a, n);
    }
    if a.is_even() && n.is_even() {
        return Ok(0);
    }
    let mut n = n.clone();
    let v = n.trailing_zeros().unwrap_or(0);
    n >>= v;
    let a8 = a.mod_floor(&BigInt::from(8)).to_usize().unwrap_or(0);
    let mut k: i8 = if v.is_multiple_of(2) { 1 } else { TWO_TABLE[a8] };
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            k = -k;
        }
    }
    // n is now odd and positive: Jacobi symbol on a mod n.
    let mut a = a.mod_floor(&n);
    while !a.is_zero() {
        let v = a.trailing_zeros().unwrap_or(0);
        a >>= v;
        if v % 2 == 1 {
            let n8 = (&n % 8u32).to_usize().unwrap_or(0);
            k *= TWO_TABLE[n8];
        }
        let a4 = (&a % 4u32).to_u32().unwrap_or(0);
        let n4 = (&n % 4u32).to_u32().unwrap_or(0);
        if a4 == 3 && n4 == 3 {
            k = -k;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { k } else { 0 })
}

/// Machine-integer Kronecker symbol with the same conventions as
/// [`kronecker_symbol`].
pub fn kronecker_i64(a: i64, n: i64) -> Result<i8> {
    if n == 0 {
        return Err(Error::Domain("Kronecker symbol (a|0) is not defined here".into()));
    }
    let a = a as i128;
    let mut n = n as i128;
    if a % 2 == 0 && n % 2 == 0 {
        return Ok(0);
    }
    let v = n.trailing_zeros();
    n >>= v;
    let mut k: i8 = if v.is_multiple_of(2) { 1 } else { TWO_TABLE[a.rem_euclid(8) as usize] };
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    let mut a = a.rem_euclid(n);
    while a != 0 {
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 {
            k *= TWO_TABLE[(n % 8) as usize];
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    Ok(if n == 1 { k } else { 0 })
}
