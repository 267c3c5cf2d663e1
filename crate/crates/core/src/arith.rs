//! Small integer number theory used throughout: gcd/lcm, Euler's phi,
//! modular powers and inverses, multiplicative orders, primitive roots.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(p, e)` pairs with `n = prod p^e`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for p in prime_divisors(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    result as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Reduce a possibly negative integer into `[0, m)`.
pub fn residue(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Least `k >= 1` with `a^k = 1 (mod m)`. Requires `gcd(a, m) = 1`.
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    debug_assert_eq!(gcd(a, m), 1);
    let phi = euler_phi(m);
    let mut order = phi;
    for (p, _) in factorize(phi) {
        while order % p == 0 && mod_pow(a, order / p, m) == 1 {
            order /= p;
        }
    }
    order
}

/// Smallest generator of the multiplicative group of the prime field `F_q`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let primes = prime_divisors(q - 1);
    (2..q)
        .find(|&g| primes.iter().all(|&p| mod_pow(g, (q - 1) / p, q) != 1))
        .expect("prime field has a primitive root")
}

/// The units of `Z/nZ` in increasing order. For `n = 1` this is `{0}`.
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&j| gcd(j, n) == 1).collect()
}

pub fn is_unit(j: u64, n: u64) -> bool {
    n == 1 || gcd(j % n, n) == 1
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// 2-part of `n`.
pub fn two_part(n: u64) -> u64 {
    n & n.wrapping_neg()
}

/// Least positive `k` with `a^k = 1`; general version for cyclic modulus checks
/// (alias kept for readability at call sites dealing with unit groups).
pub fn unit_order(a: u64, n: u64) -> u64 {
    mult_order(a % n.max(1), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_and_units() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(20), 8);
        assert_eq!(euler_phi(660), 160);
        assert_eq!(units(12), vec![1, 5, 7, 11]);
        assert_eq!(units(1), vec![0]);
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(mult_order(3, 7), 6);
        assert_eq!(mult_order(13, 20), 4);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(661), 2);
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(4, 8), None);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(660), vec![(2, 2), (3, 1), (5, 1), (11, 1)]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(two_part(24), 8);
        assert_eq!(isqrt(14520), 120);
    }
}
