//! Independent brute-force ground truth for the solvers.
//!
//! [`brute_representations`] enumerates every lattice point on the ellipse
//! f(x, y) = m with plain integer arithmetic and shares no code with the
//! solver path beyond the [`Form`] accessors, so it serves as the referee
//! for everything else. [`brute_signs`] exhausts all 2^r sign vectors of
//! the class equation directly; it necessarily shares the composition
//! routine with the solvers, which is why the lattice enumeration is the
//! final authority.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{isqrt, Factorization};
use crate::error::Error;
use crate::forms::{Form, FormClass};
use crate::quadorder::{QuadOrderCtx, SplitType};

/// Hard cap on the number of primes for the exhaustive sign search.
pub const BRUTE_SIGNS_CAP: usize = 20;

/// All integer pairs with f(x, y) = m, sorted; optionally only the
/// primitive ones (gcd(x, y) = 1).
///
/// y is bounded by |y| <= sqrt(4am / |D|); for each y the quadratic in x
/// is solved exactly.
pub fn brute_representations(f: &Form, m: &BigInt, primitive_only: bool) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    if !m.is_positive() {
        return out;
    }
    let abs_d = -f.discriminant();
    let four_am = BigInt::from(4) * f.a() * m;
    let y_bound = isqrt(&(&four_am / &abs_d));
    let two_a = BigInt::from(2) * f.a();
    let mut y = -&y_bound;
    while y <= y_bound {
        // a*x^2 + (b*y)*x + (c*y^2 - m) = 0 over x.
        let disc_q = &four_am - &abs_d * &y * &y;
        debug_assert!(!disc_q.is_negative());
        let t = isqrt(&disc_q);
        if &t * &t == disc_q {
            for root in [&t, &-&t] {
                let num = -(f.b() * &y) + root;
                let (x, rem) = num.div_rem(&two_a);
                if rem.is_zero() && f.eval(&x, &y) == *m {
                    let pair = (x, y.clone());
                    if !primitive_only || pair.0.gcd(&pair.1).is_one() {
                        out.push(pair);
                    }
                }
            }
        }
        y += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Exhausts all sign vectors delta in {-1,+1}^r of the class equation
/// prod [p_i]^{delta_i} * prod [p_j] = [f], returning the first hit in
/// lexicographic order (+1 before -1), or `None` when no assignment works
/// (including the case of an inert prime).
pub fn brute_signs(f: &Form, fact: &Factorization) -> Result<Option<Vec<i8>>, Error> {
    fact.ensure_square_free()?;
    let d = f.discriminant();
    let ctx = QuadOrderCtx::new(&d)?;
    let split_count = fact
        .factors()
        .iter()
        .filter(|(p, _)| crate::arith::kronecker(&d, p) == 1)
        .count();
    if split_count > BRUTE_SIGNS_CAP {
        return Err(Error::CapExceeded {
            n: split_count,
            cap: BRUTE_SIGNS_CAP,
        });
    }
    let mut split: Vec<FormClass> = Vec::new();
    let mut target = f.class();
    for (p, _) in fact.factors() {
        match ctx.prime_ideal_above(p)? {
            None => return Ok(None),
            Some((ideal, SplitType::Split)) => split.push(ideal.to_class()?),
            Some((ideal, SplitType::Ramified)) => {
                // Fold ramified classes into the target: they carry no sign.
                target = target.compose(&ideal.to_class()?.inverse())?;
            }
        }
    }
    let r = split.len();
    let identity = FormClass::identity(&f.discriminant())?;
    for mask in 0u64..(1u64 << r) {
        let mut prod = identity.clone();
        let mut delta = Vec::with_capacity(r);
        for (i, cls) in split.iter().enumerate() {
            let neg = (mask >> (r - 1 - i)) & 1 == 1;
            delta.push(if neg { -1i8 } else { 1 });
            let factor = if neg { cls.inverse() } else { cls.clone() };
            prod = prod.compose(&factor)?;
        }
        if prod == target {
            return Ok(Some(delta));
        }
    }
    Ok(None)
}
