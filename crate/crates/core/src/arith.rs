//! Integer helpers: primality, factorization, valuations, symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::{Int, Rat};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Primes `>= start`, ascending.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    let first = if start <= 2 { 2 } else { next_prime(start - 1) };
    std::iter::successors(Some(first), |&p| Some(next_prime(p)))
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of `|n|`, ascending, with exponents.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0);
    let mut ps = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5, 7, 11, 13] {
        while m % p == 0 {
            ps.push(p);
            m /= p;
        }
    }
    factor_u64_into(m, &mut ps);
    ps.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in ps {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Factorization of a nonzero integer. Cofactors beyond 64 bits are split by
/// trial division up to `10^6`; anything left over is an error.
pub fn factor_int(n: &Int) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::Domain("factorization of zero".into()));
    }
    let mut m = n.abs();
    if let Some(small) = m.to_u64() {
        return Ok(factor_u64(small));
    }
    let mut out = Vec::new();
    let mut p = 2u64;
    while p < 1_000_000 {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        if let Some(small) = m.to_u64() {
            for (q, e) in factor_u64(small) {
                match out.iter_mut().find(|(r, _)| *r == q) {
                    Some(slot) => slot.1 += e,
                    None => out.push((q, e)),
                }
            }
            out.sort_unstable();
            return Ok(out);
        }
        p = next_prime(p);
    }
    Err(Error::Factorization(n.to_string()))
}

pub fn prime_divisors(n: &Int) -> Result<Vec<u64>> {
    Ok(factor_int(n)?.into_iter().map(|(p, _)| p).collect())
}

/// `v_p(n)` for nonzero `n`.
pub fn valuation(n: &Int, p: u64) -> u32 {
    assert!(!n.is_zero());
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// `v_p(q)` for nonzero rational `q`.
pub fn valuation_rat(q: &Rat, p: u64) -> i64 {
    valuation(q.numer(), p) as i64 - valuation(q.denom(), p) as i64
}

/// Squarefree kernel with sign: `n = m^2 * squarefree_part(n)`.
pub fn squarefree_part(n: &Int) -> Result<Int> {
    let mut out = if n.is_negative() {
        -Int::one()
    } else {
        Int::one()
    };
    for (p, e) in factor_int(n)? {
        if e % 2 == 1 {
            out *= p;
        }
    }
    Ok(out)
}

/// Largest `m > 0` with `m^2 | n`.
pub fn square_cofactor(n: &Int) -> Result<Int> {
    let mut out = Int::one();
    for (p, e) in factor_int(n)? {
        out *= Int::from(p).pow(e / 2);
    }
    Ok(out)
}

pub fn is_square(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Rational squares, for square-class comparisons.
pub fn is_square_rat(q: &Rat) -> bool {
    is_square(q.numer()) && is_square(q.denom())
}

/// Kronecker symbol `(a / n)` for `n > 0`.
pub fn kronecker(a: &Int, n: u64) -> i32 {
    assert!(n > 0);
    let mut n = n;
    let mut a = a.mod_floor(&Int::from(4 * n as u128)).to_u128().unwrap();
    let mut result = 1i32;
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        if a % 8 == 3 || a % 8 == 5 {
            result = -result;
        }
    }
    let mut m = n as u128;
    a %= m;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a %= m;
    }
    if m == 1 {
        result
    } else {
        0
    }
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

/// Parses `n` or `n/d`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}

/// `num/den`, always with an explicit denominator.
pub fn format_rat(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
