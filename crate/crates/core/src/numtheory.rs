//! Small-integer helpers shared by the arithmetic modules.

use num_integer::Integer;

/// Prime factorisation as ascending `(prime, exponent)` pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_dividing(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == [(n, 1)]
}

/// Ascending list of positive divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// `(a, m)` with `n = p^a * m` and `p` not dividing `m`.
pub fn p_split(mut n: u64, p: u64) -> (u32, u64) {
    let mut a = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        a += 1;
    }
    (a, n)
}

/// p-adic valuation.
pub fn nu(n: u64, p: u64) -> u32 {
    p_split(n, p).0
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    p.pow(nu(n, p))
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of `a` modulo `m` (1 when `m == 1`).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

/// Chinese remainder for coprime moduli.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    let m = m1 * m2;
    if m == 1 {
        return 0;
    }
    let inv = mod_inverse(m1 % m2, m2).expect("coprime moduli");
    let t = ((r2 + m2 - r1 % m2) % m2) * inv % m2;
    (r1 + m1 * t) % m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorisation() {
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(factor(97), vec![(97, 1)]);
    }

    #[test]
    fn orders_and_inverses() {
        assert_eq!(multiplicative_order(3, 4), 2);
        assert_eq!(multiplicative_order(2, 15), 4);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(crt(1, 2, 0, 3), 3);
        assert_eq!(crt(0, 2, 1, 3), 4);
    }

    #[test]
    fn valuations() {
        assert_eq!(p_split(24, 2), (3, 3));
        assert_eq!(p_part(60, 2), 4);
        assert_eq!(nu(7, 3), 0);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
