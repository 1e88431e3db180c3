//! Dense univariate polynomials over `Z/modulus`.

use std::fmt;

/// Polynomial with coefficients in `Z/modulus`, lowest degree first.
///
/// Normalized: the coefficient vector never ends in a zero, so the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u64>,
    modulus: u64,
}

impl Poly {
    pub fn new(coeffs: Vec<u64>, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs, modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        Poly::new(Vec::new(), modulus)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1) || (self.modulus == 1 && !self.coeffs.is_empty())
    }

    /// Coefficients padded with zeros to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<u64> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), 0);
        v
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.modulus, other.modulus);
        let len = self.coeffs.len().max(other.coeffs.len());
        let m = self.modulus;
        Poly::new(
            (0..len)
                .map(|i| (self.coeff(i) + other.coeff(i)) % m)
                .collect(),
            m,
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.modulus, other.modulus);
        let len = self.coeffs.len().max(other.coeffs.len());
        let m = self.modulus;
        Poly::new(
            (0..len)
                .map(|i| (self.coeff(i) + m - other.coeff(i)) % m)
                .collect(),
            m,
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.modulus, other.modulus);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.modulus);
        }
        let m = self.modulus as u128;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % m;
            }
        }
        Poly::new(out.into_iter().map(|c| c as u64).collect(), self.modulus)
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, f: &Poly) -> Poly {
        assert!(f.is_monic(), "divisor must be monic");
        let df = f.degree().expect("monic polynomial is non-zero");
        let m = self.modulus as u128;
        let mut r: Vec<u128> = self.coeffs.iter().map(|&c| c as u128).collect();
        while r.len() > df {
            let lead = r.pop().unwrap() % m;
            if lead == 0 {
                continue;
            }
            let shift = r.len() - df;
            for (i, &fc) in f.coeffs[..df].iter().enumerate() {
                let sub = lead * fc as u128 % m;
                r[shift + i] = (r[shift + i] + m - sub) % m;
            }
        }
        Poly::new(r.into_iter().map(|c| c as u64).collect(), self.modulus)
    }

    /// Reduce coefficients into `Z/q` (used for reduction mod p).
    pub fn reduce(&self, q: u64) -> Poly {
        Poly::new(self.coeffs.clone(), q)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus as u128;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % m) as u64
    }
}

impl fmt::Display for Poly {
    /// Writes `X^2+X+1` style, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}*X")?,
                (d, 1) => write!(f, "X^{d}")?,
                (d, c) => write!(f, "{c}*X^{d}")?,
            }
        }
        Ok(())
    }
}

/// All monic polynomials of degree `d` over `Z/p`, in increasing order of
/// the integer `sum a_i p^i` formed by the lower coefficients.
pub fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Poly> {
    let count = p.checked_pow(d as u32).expect("too many polynomials");
    (0..count).map(move |mut k| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(k % p);
            k /= p;
        }
        c.push(1);
        Poly::new(c, p)
    })
}

/// Irreducibility over the prime field `Z/p` (the polynomial's modulus).
pub fn is_irreducible_mod_p(f: &Poly) -> bool {
    let Some(d) = f.degree() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let p = f.modulus();
    let lead = f.coeff(d);
    // normalize to monic
    let inv = crate::arith::inv_mod(lead, p).expect("modulus must be prime");
    let g = Poly::new(f.coeffs().iter().map(|&c| c * inv % p).collect(), p);
    for k in 1..=d / 2 {
        for h in monic_polys(p, k) {
            if g.rem_monic(&h).is_zero() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `r` over `Z/p` in the order
/// of [`monic_polys`].
pub fn first_irreducible(p: u64, r: usize) -> Poly {
    monic_polys(p, r)
        .find(is_irreducible_mod_p)
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_rem() {
        let f = Poly::new(vec![1, 1, 1], 4);
        assert_eq!(f.to_string(), "X^2+X+1");
        let x3 = Poly::new(vec![0, 0, 0, 1], 4);
        // X^3 = -X^2 - X = 1 modulo X^2+X+1
        assert_eq!(x3.rem_monic(&f), Poly::new(vec![1], 4));
    }

    #[test]
    fn irreducibles_over_f2() {
        assert_eq!(first_irreducible(2, 2).to_string(), "X^2+X+1");
        assert_eq!(first_irreducible(2, 3).to_string(), "X^3+X+1");
        assert!(!is_irreducible_mod_p(&Poly::new(vec![0, 0, 1], 2)));
        assert!(!is_irreducible_mod_p(&Poly::new(vec![1, 0, 1], 2)));
        assert_eq!(first_irreducible(3, 2).to_string(), "X^2+1");
    }

    #[test]
    fn eval_matches_horner() {
        let f = Poly::new(vec![3, 0, 2], 9);
        assert_eq!(f.eval(2), (3 + 2 * 4) % 9);
    }
}
