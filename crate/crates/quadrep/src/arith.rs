//! Arbitrary-precision number-theoretic primitives.
//!
//! Everything here is exact integer arithmetic on [`BigInt`]: the Kronecker
//! symbol, Tonelli-Shanks modular square roots, Miller-Rabin primality,
//! floor square roots, and validated factorizations. These are the building
//! blocks for the form and ideal arithmetic in the rest of the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, FactorizationDefect};

/// Miller-Rabin bases that make the test deterministic for all
/// n < 3.317e24 (Sorenson & Webster). For larger n the same bases give a
/// strong-probable-prime test with negligible error.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Floor of the square root of a non-negative integer.
///
/// Callers test `isqrt(n) * isqrt(n) == n` for exact squareness.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative number");
    n.sqrt()
}

/// True iff `n` is a perfect square.
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Kronecker symbol (a/n), the total extension of the Jacobi symbol.
///
/// Coincides with the Legendre symbol when n is an odd prime not dividing a.
/// Defined for every n, with (a/0) = 1 iff a = +-1.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i32 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut a = a.clone();
    let mut n = n.clone();
    let mut result = 1i32;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    // (a/2) factor for each power of two in n.
    while n.is_even() {
        n /= 2;
        if a.is_even() {
            return 0;
        }
        let r: BigInt = a.mod_floor(&BigInt::from(8));
        if r == BigInt::from(3) || r == BigInt::from(5) {
            result = -result;
        }
    }
    if n.is_one() {
        return result;
    }
    // Jacobi symbol by quadratic reciprocity; n is odd and > 1 here.
    a = a.mod_floor(&n);
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let r: BigInt = n.mod_floor(&BigInt::from(8));
            if r == BigInt::from(3) || r == BigInt::from(5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        let four = BigInt::from(4);
        if a.mod_floor(&four) == BigInt::from(3) && n.mod_floor(&four) == BigInt::from(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Square root of `a` modulo an odd prime `p` (or p = 2), by Tonelli-Shanks.
///
/// Requires 0 <= a < p. Returns the canonical root r with 0 <= r <= p/2,
/// or `None` if `a` is a non-residue. The auxiliary non-residue is found by
/// deterministic search from 2 upward, so runs are reproducible.
pub fn sqrt_mod_p(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    debug_assert!(!a.is_negative() && a < p, "sqrt_mod_p wants 0 <= a < p");
    let two = BigInt::from(2);
    if *p == two {
        return Some(a.clone());
    }
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if kronecker(a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let p_minus_1 = p - &one;
    let r = if p.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
        // p = 3 (mod 4): direct exponentiation.
        a.modpow(&((p + &one) / 4), p)
    } else {
        // Tonelli-Shanks. Write p - 1 = q * 2^s with q odd.
        let mut q = p_minus_1.clone();
        let mut s = 0u32;
        while q.is_even() {
            q /= 2;
            s += 1;
        }
        // Least non-residue as the auxiliary element.
        let mut z = two.clone();
        while kronecker(&z, p) != -1 {
            z += 1;
        }
        let mut m = s;
        let mut c = z.modpow(&q, p);
        let mut t = a.modpow(&q, p);
        let mut r = a.modpow(&((&q + &one) / 2), p);
        while !t.is_one() {
            let mut i = 0u32;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = (&t2 * &t2).mod_floor(p);
                i += 1;
            }
            let b = c.modpow(&BigInt::from(2).pow(m - i - 1), p);
            m = i;
            c = (&b * &b).mod_floor(p);
            t = (&t * &c).mod_floor(p);
            r = (&r * &b).mod_floor(p);
        }
        r
    };
    let r = if &r * 2 > *p { p - r } else { r };
    debug_assert_eq!((&r * &r).mod_floor(p), *a);
    Some(r)
}

/// Miller-Rabin primality test over the fixed base set [`MR_BASES`]:
/// deterministic below 3.317e24, strong-probable-prime beyond.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d /= 2;
        s += 1;
    }
    'bases: for &b in &MR_BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = (&x * &x).mod_floor(n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Modular inverse of `a` mod `m`, if gcd(a, m) = 1.
pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let g = a.extended_gcd(m);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(m))
    } else {
        None
    }
}

/// Factor `n >= 1` by trial division plus Brent's variant of Pollard rho.
/// Adequate for desk-scale inputs; returns (prime, exponent) pairs sorted
/// by prime.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive(), "factor wants n >= 1");
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut n = n.clone();
    let record = |p: BigInt, out: &mut Vec<(BigInt, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for small in [2u32, 3, 5] {
        let p = BigInt::from(small);
        while (&n % &p).is_zero() {
            n /= &p;
            record(p.clone(), &mut out);
        }
    }
    // Wheel over 6k +- 1 up to 10^4, then rho on what remains.
    let mut d = BigInt::from(7);
    let bound = BigInt::from(10_000);
    let steps = [4u32, 2, 4, 2, 4, 6, 2, 6];
    let mut step_idx = 0;
    while &d * &d <= n && d <= bound {
        while (&n % &d).is_zero() {
            n /= &d;
            record(d.clone(), &mut out);
        }
        d += steps[step_idx];
        step_idx = (step_idx + 1) % steps.len();
    }
    if n.is_one() {
        out.sort();
        return out;
    }
    if &d * &d > n {
        record(n, &mut out);
        out.sort();
        return out;
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            record(m, &mut out);
            continue;
        }
        let f = pollard_brent(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    out.sort();
    out
}

/// Brent-cycle Pollard rho; returns a nontrivial factor of composite `n`.
fn pollard_brent(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let one = BigInt::one();
    // Deterministic parameter sweep keeps runs reproducible.
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c).mod_floor(n);
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = one.clone();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if d != *n {
            return d;
        }
    }
    unreachable!()
}

/// A positive integer together with its claimed prime factorization.
///
/// Validated at construction: the product of the prime powers must equal
/// `m`, the primes must be distinct and pass [`is_prime`], and exponents
/// must be positive. Square-freeness is *not* required at this layer; the
/// solvers enforce it separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    m: BigInt,
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    /// Validates and wraps a claimed factorization of `m`.
    pub fn new(m: BigInt, mut factors: Vec<(BigInt, u32)>) -> Result<Self, Error> {
        factors.sort();
        validate_factorization(&m, &factors)?;
        Ok(Factorization { m, factors })
    }

    /// Factors `m` locally (trial division plus Pollard rho).
    pub fn of(m: &BigInt) -> Result<Self, Error> {
        if !m.is_positive() {
            return Err(Error::InvalidInput(format!("m = {m} must be positive")));
        }
        let factors = factor(m);
        Ok(Factorization {
            m: m.clone(),
            factors,
        })
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    /// The (prime, exponent) pairs, sorted by prime.
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// Errors with the first prime carrying exponent >= 2, if any.
    pub fn ensure_square_free(&self) -> Result<(), Error> {
        for (p, e) in &self.factors {
            if *e > 1 {
                return Err(Error::NotSquareFree {
                    p: p.clone(),
                    e: *e,
                });
            }
        }
        Ok(())
    }

    /// Splits m = k^2 * m' with m' square-free; returns (factorization of
    /// m', k).
    pub fn square_free_split(&self) -> (Factorization, BigInt) {
        let mut k = BigInt::one();
        let mut m_red = BigInt::one();
        let mut factors = Vec::new();
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                m_red *= p;
                factors.push((p.clone(), 1));
            }
            if *e >= 2 {
                k *= p.pow(e / 2);
            }
        }
        (
            Factorization {
                m: m_red,
                factors,
            },
            k,
        )
    }
}

/// Checks a claimed factorization: product matches, primes distinct and
/// prime, exponents positive. Reports the first failing component.
pub fn validate_factorization(m: &BigInt, factors: &[(BigInt, u32)]) -> Result<(), Error> {
    let two = BigInt::from(2);
    let mut product = BigInt::one();
    for (i, (p, e)) in factors.iter().enumerate() {
        if *p < two {
            return Err(Error::InvalidFactorization(FactorizationDefect::TooSmall(
                p.clone(),
            )));
        }
        if *e == 0 {
            return Err(Error::InvalidFactorization(
                FactorizationDefect::ZeroExponent(p.clone()),
            ));
        }
        if factors[..i].iter().any(|(q, _)| q == p) {
            return Err(Error::InvalidFactorization(
                FactorizationDefect::RepeatedPrime(p.clone()),
            ));
        }
        if !is_prime(p) {
            return Err(Error::InvalidFactorization(FactorizationDefect::NotPrime(
                p.clone(),
            )));
        }
        product *= p.pow(*e);
    }
    if product != *m {
        return Err(Error::InvalidFactorization(
            FactorizationDefect::ProductMismatch {
                expected: m.clone(),
                actual: product,
            },
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Brute-force quadratic-residue check over all residues mod p.
    fn is_qr_brute(a: i64, p: i64) -> bool {
        (0..p).any(|x| (x * x - a).rem_euclid(p) == 0)
    }

    #[test]
    fn kronecker_examples() {
        // 3 splits for discriminant -20: x^2 = -20 = 1 (mod 3) has x = 1.
        assert!(is_qr_brute(-20, 3));
        assert_eq!(kronecker(&bi(-20), &bi(3)), 1);
        // 5 ramifies: 5 | 20.
        assert_eq!(kronecker(&bi(-20), &bi(5)), 0);
        // 7 is inert for x^2 + y^2.
        assert!(!is_qr_brute(-4, 7));
        assert_eq!(kronecker(&bi(-4), &bi(7)), -1);
    }

    #[test]
    fn kronecker_matches_legendre_for_small_primes() {
        // For odd prime p and gcd(a, p) = 1:
        // kronecker(a, p) = +1 iff a is a QR mod p.
        let primes: Vec<i64> = (3..200).filter(|&p| is_prime(&bi(p))).collect();
        for &p in &primes {
            for a in 1..p {
                let k = kronecker(&bi(a), &bi(p));
                let qr = is_qr_brute(a, p);
                assert_eq!(k == 1, qr, "a={a} p={p}");
                assert_eq!(k == 0, a % p == 0);
            }
        }
    }

    #[test]
    fn kronecker_at_two() {
        // Split iff D = 1 (mod 8), ramified iff 2 | D.
        assert_eq!(kronecker(&bi(-23), &bi(2)), 1); // -23 = 1 (mod 8)
        assert_eq!(kronecker(&bi(-20), &bi(2)), 0);
        assert_eq!(kronecker(&bi(-3), &bi(2)), -1); // -3 = 5 (mod 8)
    }

    proptest! {
        #[test]
        fn kronecker_multiplicative(a in -300i64..300, b in -300i64..300, n in 1i64..300) {
            let n = 2 * n + 1; // odd n > 0
            let lhs = kronecker(&bi(a * b), &bi(n));
            let rhs = kronecker(&bi(a), &bi(n)) * kronecker(&bi(b), &bi(n));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kronecker_multiplicative_in_n(a in -300i64..300, m in 1i64..100, n in 1i64..100) {
            let lhs = kronecker(&bi(a), &bi(m * n));
            let rhs = kronecker(&bi(a), &bi(m)) * kronecker(&bi(a), &bi(n));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn isqrt_sandwich(n in 0u64..u64::MAX) {
            let n = BigInt::from(n);
            let r = isqrt(&n);
            prop_assert!(&r * &r <= n);
            let r1 = &r + 1;
            prop_assert!(&r1 * &r1 > n);
        }
    }

    #[test]
    fn sqrt_mod_p_examples() {
        // 5^2 = 25 = 12 (mod 13), and -1 = 12 (mod 13).
        assert_eq!(sqrt_mod_p(&bi(12), &bi(13)), Some(bi(5)));
        // Ramified case: the root of 0 is 0.
        assert_eq!(sqrt_mod_p(&bi(0), &bi(5)), Some(bi(0)));
        // 3 is a non-residue mod 7.
        assert!(!is_qr_brute(3, 7));
        assert_eq!(sqrt_mod_p(&bi(3), &bi(7)), None);
    }

    #[test]
    fn sqrt_mod_p_exhaustive_small() {
        let primes: Vec<i64> = (2..200).filter(|&p| is_prime(&bi(p))).collect();
        for &p in &primes {
            for a in 0..p {
                match sqrt_mod_p(&bi(a), &bi(p)) {
                    Some(r) => {
                        // r^2 = a (mod p) and 0 <= r <= p/2.
                        assert_eq!((&r * &r).mod_floor(&bi(p)), bi(a));
                        assert!(&r * 2 <= bi(p));
                    }
                    None => assert!(!is_qr_brute(a, p), "missed root for a={a} p={p}"),
                }
            }
        }
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(&bi(13)));
        assert!(!is_prime(&bi(1)));
        // 341 = 11 * 31 is a base-2 pseudoprime; the base set catches it.
        assert!(!is_prime(&bi(341)));
    }

    #[test]
    fn is_prime_matches_trial_division() {
        let trial = |n: i64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(&bi(n)), trial(n), "n={n}");
        }
    }

    #[test]
    fn is_prime_large() {
        // 2^89 - 1 is a Mersenne prime.
        let p = (BigInt::one() << 89) - 1;
        assert!(is_prime(&p));
        assert!(!is_prime(&(p + 2)));
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&bi(16)), bi(4));
        assert_eq!(isqrt(&bi(24)), bi(4));
        let big = BigInt::from(10u64).pow(18);
        assert_eq!(isqrt(&big), BigInt::from(10u64).pow(9));
    }

    #[test]
    fn factor_round_trips() {
        for n in 1i64..2000 {
            let f = factor(&bi(n));
            let product: BigInt = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(product, bi(n));
            for (p, _) in &f {
                assert!(is_prime(p));
            }
        }
        // A semiprime big enough to reach the rho stage.
        let n = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        let f = factor(&n);
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn validate_factorization_examples() {
        assert!(Factorization::new(bi(21), vec![(bi(3), 1), (bi(7), 1)]).is_ok());
        match Factorization::new(bi(21), vec![(bi(3), 1), (bi(5), 1)]) {
            Err(Error::InvalidFactorization(FactorizationDefect::ProductMismatch {
                ..
            })) => {}
            other => panic!("expected product mismatch, got {other:?}"),
        }
        // Non-square-free is allowed at this layer.
        assert!(Factorization::new(bi(12), vec![(bi(2), 2), (bi(3), 1)]).is_ok());
        match Factorization::new(bi(8), vec![(bi(8), 1)]) {
            Err(Error::InvalidFactorization(FactorizationDefect::NotPrime(p))) => {
                assert_eq!(p, bi(8))
            }
            other => panic!("expected not-prime, got {other:?}"),
        }
        match Factorization::new(bi(9), vec![(bi(3), 1), (bi(3), 1)]) {
            Err(Error::InvalidFactorization(FactorizationDefect::RepeatedPrime(_))) => {}
            other => panic!("expected repeated prime, got {other:?}"),
        }
    }

    #[test]
    fn square_free_split_works() {
        let f = Factorization::new(bi(1800), vec![(bi(2), 3), (bi(3), 2), (bi(5), 2)]).unwrap();
        let (reduced, k) = f.square_free_split();
        assert_eq!(reduced.m(), &bi(2));
        assert_eq!(k, bi(30));
        assert!(reduced.is_square_free());
        let f1 = Factorization::new(bi(1), vec![]).unwrap();
        let (r1, k1) = f1.square_free_split();
        assert_eq!(r1.m(), &bi(1));
        assert_eq!(k1, bi(1));
    }
}
