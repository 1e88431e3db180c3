//! Small integer helpers shared across modules.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128 % m as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, exponent)` pairs with increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
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

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Solve `b * q = a (mod m)`, returning one solution.
pub fn div_mod(a: u64, b: u64, m: u64) -> Option<u64> {
    let g = gcd(b % m, m);
    if !a.is_multiple_of(g) {
        return None;
    }
    let m2 = m / g;
    let inv = inv_mod((b / g) % m2, m2)?;
    Some(((a / g) as u128 * inv as u128 % m2 as u128) as u64)
}

/// Combine `x = r_i (mod m_i)` for pairwise coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> u64 {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, mi) in residues {
        let mi = mi as u128;
        // x + m*t = r (mod mi)
        let diff = ((r as u128 % mi) + mi - x % mi) % mi;
        let inv = inv_mod((m % mi) as u64, mi as u64).expect("moduli must be coprime") as u128;
        let t = diff * inv % mi;
        x += m * t;
        m *= mi;
        x %= m;
    }
    x as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_and_division() {
        assert_eq!(inv_mod(5, 6), Some(5));
        assert_eq!(inv_mod(2, 6), None);
        assert_eq!(div_mod(4, 2, 6).map(|q| 2 * q % 6), Some(4));
        assert_eq!(div_mod(1, 2, 4), None);
    }

    #[test]
    fn factoring() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
        assert!(is_prime(97));
    }

    #[test]
    fn chinese_remainder() {
        assert_eq!(crt(&[(1, 2), (2, 3)]), 5);
        assert_eq!(crt(&[(3, 4), (0, 9)]), 27);
    }
}
