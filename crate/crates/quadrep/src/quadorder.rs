//! Imaginary quadratic orders, prime ideals, and the ideal-to-form
//! dictionary.
//!
//! The order O of discriminant D < 0 has Z-basis {1, (sigma + sqrt(D))/2}
//! with sigma = D mod 2. Elements are kept in half-coordinates: the pair
//! (u, v) stands for (u + v*sqrt(D))/2 and lies in O exactly when
//! u = D*v (mod 2). An [`OIdeal`] is stored by its canonical Z-basis
//! {za, (u + v*sqrt(D))/2} with za > 0, v > 0, v | za, v | u and
//! 0 <= u < 2*za; its norm is za*v.
//!
//! The map from invertible ideals to form classes sends a basis
//! {alpha, beta} to N(x*alpha + y*beta)/N(a), which together with its
//! inverse identifies the ideal class group with the form class group of
//! the same discriminant. That dictionary is what lets the solvers work
//! with reduced forms throughout and only materialize ideal bases on the
//! final reconstruction path.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{factor, kronecker};
use crate::error::Error;
use crate::forms::{equiv_transform, Form, FormClass};

/// An imaginary quadratic order: discriminant, fundamental discriminant,
/// and conductor, with D = conductor^2 * d_K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadOrderCtx {
    d: BigInt,
    d_k: BigInt,
    conductor: BigInt,
}

/// Splitting behavior of a rational prime that is not inert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitType {
    Split,
    Ramified,
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitType::Split => write!(f, "split"),
            SplitType::Ramified => write!(f, "ramified"),
        }
    }
}

impl QuadOrderCtx {
    /// Decomposes D into conductor^2 times a fundamental discriminant.
    pub fn new(d: &BigInt) -> Result<QuadOrderCtx, Error> {
        let four = BigInt::from(4);
        let rem = d.mod_floor(&four);
        if !d.is_negative() || (!rem.is_zero() && !rem.is_one()) {
            return Err(Error::InvalidDiscriminant(d.clone()));
        }
        // |D| = s^2 * t with t square-free.
        let mut s = BigInt::one();
        let mut t = BigInt::one();
        for (p, e) in factor(&(-d)) {
            if e % 2 == 1 {
                t *= &p;
            }
            s *= p.pow(e / 2);
        }
        // -t = 1 (mod 4) makes -t fundamental; otherwise -4t is.
        let (d_k, conductor) = if t.mod_floor(&four) == BigInt::from(3) {
            (-t, s)
        } else {
            debug_assert!(s.is_even(), "D = 0,1 (mod 4) forces an even square part here");
            (-BigInt::from(4) * t, s / 2)
        };
        debug_assert_eq!(&conductor * &conductor * &d_k, *d);
        Ok(QuadOrderCtx {
            d: d.clone(),
            d_k,
            conductor,
        })
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    pub fn fundamental_discriminant(&self) -> &BigInt {
        &self.d_k
    }

    pub fn conductor(&self) -> &BigInt {
        &self.conductor
    }

    /// sigma = D mod 2; the order is Z + Z*(sigma + sqrt(D))/2.
    fn sigma(&self) -> BigInt {
        self.d.mod_floor(&BigInt::from(2))
    }

    /// The order itself as an ideal (the multiplicative identity).
    pub fn unit_ideal(&self) -> OIdeal {
        OIdeal {
            ctx: self.clone(),
            za: BigInt::one(),
            u: self.sigma(),
            v: BigInt::one(),
        }
    }

    /// The prime ideal above `p`, with its split type, or `None` when `p`
    /// is inert. Requires gcd(p, conductor) = 1.
    ///
    /// The basis is {p, (b + sqrt(D))/2} where b is the smallest value in
    /// [0, 2p) with b = D (mod 2) and b^2 = D (mod 4p). For a split p this
    /// fixes one of the two conjugate primes; the other is reached via
    /// [`OIdeal::conjugate`].
    pub fn prime_ideal_above(&self, p: &BigInt) -> Result<Option<(OIdeal, SplitType)>, Error> {
        if !p.gcd(&self.conductor).is_one() {
            return Err(Error::ConductorNotCoprime {
                value: p.clone(),
                conductor: self.conductor.clone(),
            });
        }
        let split = match kronecker(&self.d, p) {
            -1 => return Ok(None),
            0 => SplitType::Ramified,
            _ => SplitType::Split,
        };
        let two = BigInt::from(2);
        let four_p = BigInt::from(4) * p;
        let parity = self.d.mod_floor(&two);
        let mut candidates: Vec<BigInt> = Vec::new();
        if *p == two {
            let mut b = parity.clone();
            while b < BigInt::from(4) {
                candidates.push(b.clone());
                b += 2;
            }
        } else {
            let a = self.d.mod_floor(p);
            let r = crate::arith::sqrt_mod_p(&a, p)
                .expect("a non-inert prime admits a root of D");
            for base in [r.clone(), (p - &r).mod_floor(p)] {
                for lift in [base.clone(), &base + p] {
                    if lift.mod_floor(&two) == parity {
                        candidates.push(lift);
                    }
                }
            }
        }
        candidates.sort();
        let b = candidates
            .into_iter()
            .find(|b| (b * b - &self.d).mod_floor(&four_p).is_zero())
            .expect("a non-inert prime coprime to the conductor has a prime ideal above it");
        let ideal = OIdeal::from_canonical(self.clone(), p.clone(), b, BigInt::one());
        debug_assert_eq!(ideal.norm(), *p);
        Ok(Some((ideal, split)))
    }
}

/// An ideal of a quadratic order in canonical Z-basis form
/// {za, (u + v*sqrt(D))/2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OIdeal {
    ctx: QuadOrderCtx,
    za: BigInt,
    u: BigInt,
    v: BigInt,
}

impl fmt::Display for OIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, ({} + {}*sqrt({}))/2]",
            self.za, self.u, self.v, self.ctx.d
        )
    }
}

impl OIdeal {
    fn from_canonical(ctx: QuadOrderCtx, za: BigInt, u: BigInt, v: BigInt) -> OIdeal {
        let ideal = OIdeal { ctx, za, u, v };
        debug_assert!(ideal.is_well_formed());
        ideal
    }

    /// Basis invariants plus closure under multiplication by the order.
    fn is_well_formed(&self) -> bool {
        let two = BigInt::from(2);
        if !self.za.is_positive() || !self.v.is_positive() {
            return false;
        }
        if !(&self.za % &self.v).is_zero() || !(&self.u % &self.v).is_zero() {
            return false;
        }
        if self.u.is_negative() || self.u >= &two * &self.za {
            return false;
        }
        if self.u.mod_floor(&two) != (&self.ctx.d * &self.v).mod_floor(&two) {
            return false;
        }
        // omega * za and omega * beta must lie back in the lattice.
        let omega = (self.ctx.sigma(), BigInt::one());
        let g1 = (BigInt::from(2) * &self.za, BigInt::zero());
        let g2 = (self.u.clone(), self.v.clone());
        for gen in [g1, g2] {
            let prod = half_mul(&omega, &gen, &self.ctx.d);
            if !self.contains_half(&prod) {
                return false;
            }
        }
        true
    }

    /// Membership of a half-coordinate element in the basis lattice.
    fn contains_half(&self, elem: &(BigInt, BigInt)) -> bool {
        let (x, y) = elem;
        if !(y % &self.v).is_zero() {
            return false;
        }
        let k = y / &self.v;
        let rest = x - k * &self.u;
        (rest % (BigInt::from(2) * &self.za)).is_zero()
    }

    pub fn ctx(&self) -> &QuadOrderCtx {
        &self.ctx
    }

    /// The smallest positive rational integer in the ideal.
    pub fn za(&self) -> &BigInt {
        &self.za
    }

    /// Half-coordinates (u, v) of the second basis element (u + v*sqrt(D))/2.
    pub fn basis_second(&self) -> (&BigInt, &BigInt) {
        (&self.u, &self.v)
    }

    /// N(a) = za * v, the index of the ideal in the order.
    pub fn norm(&self) -> BigInt {
        &self.za * &self.v
    }

    /// The conjugate ideal: (u + v*sqrt(D))/2 goes to (u - v*sqrt(D))/2,
    /// re-normalized to the canonical basis (u reduced mod 2*za).
    pub fn conjugate(&self) -> OIdeal {
        let u = (-&self.u).mod_floor(&(BigInt::from(2) * &self.za));
        OIdeal::from_canonical(self.ctx.clone(), self.za.clone(), u, self.v.clone())
    }

    /// The form class under the ideal-to-form dictionary. Errors when the
    /// ideal is not invertible (norm shares a factor with the conductor).
    pub fn to_class(&self) -> Result<FormClass, Error> {
        Ok(self.to_form()?.class())
    }

    /// The un-reduced form N(x*alpha + y*beta)/N(a) from the Z-basis.
    fn to_form(&self) -> Result<Form, Error> {
        if !self.norm().gcd(&self.ctx.conductor).is_one() {
            return Err(Error::NotInvertible);
        }
        let a = &self.za / &self.v;
        let b = &self.u / &self.v;
        let num = &self.u * &self.u - &self.v * &self.v * &self.ctx.d;
        let den = BigInt::from(4) * &self.za * &self.v;
        let (c, rem) = num.div_rem(&den);
        assert!(
            rem.is_zero(),
            "non-integral coordinates in the ideal-to-form map for {self}",
        );
        let f = Form::new(a, b, c)
            .expect("an invertible ideal maps to a positive definite primitive form");
        debug_assert_eq!(f.discriminant(), self.ctx.d);
        Ok(f)
    }

    /// Ideal product via the Z-module spanned by pairwise basis products,
    /// brought back to canonical form by Hermite reduction.
    pub fn multiply(&self, other: &OIdeal) -> Result<OIdeal, Error> {
        if self.ctx != other.ctx {
            return Err(Error::DiscriminantMismatch {
                left: self.ctx.d.clone(),
                right: other.ctx.d.clone(),
            });
        }
        let d = &self.ctx.d;
        let g = [
            (BigInt::from(2) * &self.za, BigInt::zero()),
            (self.u.clone(), self.v.clone()),
        ];
        let h = [
            (BigInt::from(2) * &other.za, BigInt::zero()),
            (other.u.clone(), other.v.clone()),
        ];
        let mut products = Vec::with_capacity(4);
        for gi in &g {
            for hj in &h {
                products.push(half_mul(gi, hj, d));
            }
        }
        Ok(hermite_basis(self.ctx.clone(), products))
    }
}

/// Product of half-coordinate elements:
/// ((u1 + v1*sqrt(D))/2) * ((u2 + v2*sqrt(D))/2). Integrality of the result
/// follows from u = D*v (mod 2) on both inputs.
fn half_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt), d: &BigInt) -> (BigInt, BigInt) {
    let (u1, v1) = a;
    let (u2, v2) = b;
    let u_twice = u1 * u2 + v1 * v2 * d;
    let v_twice = u1 * v2 + u2 * v1;
    debug_assert!(u_twice.is_even() && v_twice.is_even());
    (u_twice / 2, v_twice / 2)
}

/// Hermite-reduces a spanning set of half-coordinate vectors to the
/// canonical ideal basis {za, (u + v*sqrt(D))/2}.
fn hermite_basis(ctx: QuadOrderCtx, vecs: Vec<(BigInt, BigInt)>) -> OIdeal {
    let mut pivot: Option<(BigInt, BigInt)> = None;
    let mut integer_parts: Vec<BigInt> = Vec::new();
    for (u, v) in vecs {
        if v.is_zero() {
            integer_parts.push(u);
            continue;
        }
        let (u, v) = if v.is_negative() { (-u, -v) } else { (u, v) };
        match pivot.take() {
            None => pivot = Some((u, v)),
            Some((pu, pv)) => {
                let eg = pv.extended_gcd(&v);
                let new_u = &eg.x * &pu + &eg.y * &u;
                let g = eg.gcd;
                // Both old vectors collapse to v = 0 against the new pivot.
                integer_parts.push(&pu - (&pv / &g) * &new_u);
                integer_parts.push(&u - (&v / &g) * &new_u);
                pivot = Some((new_u, g));
            }
        }
    }
    let (pu, pv) = pivot.expect("ideal product must span a rank-2 lattice");
    let mut a = BigInt::zero();
    for x in integer_parts {
        a = a.gcd(&x);
    }
    assert!(a.is_positive(), "ideal product must contain a nonzero integer");
    debug_assert!(a.is_even());
    let za = &a / 2;
    let u = pu.mod_floor(&a);
    OIdeal::from_canonical(ctx, za, u, pv)
}

/// Finds (x, y) with f(x, y) = N(a), given an ideal in the class of f.
///
/// The element N(a) of the ideal has coordinates (v, 0) in the basis
/// {za, beta}, so the un-reduced form of the ideal represents N(a) at
/// (v, 0); that point is pulled through the change of variables between f
/// and the ideal's form. The output is re-checked by evaluation.
pub fn extract_representation(f: &Form, a: &OIdeal) -> Result<(BigInt, BigInt), Error> {
    let m = a.norm();
    let ideal_class = a.to_class()?;
    let form_class = f.class();
    if ideal_class != form_class {
        return Err(Error::ClassMismatch);
    }
    let f_a = a.to_form()?;
    let x0 = a.v.clone();
    let y0 = BigInt::zero();
    debug_assert_eq!(f_a.eval(&x0, &y0), m);
    let u = equiv_transform(f, &f_a)
        .expect("forms in the same class admit an equivalence transform");
    let (x, y) = u.apply(&x0, &y0);
    assert_eq!(
        f.eval(&x, &y),
        m,
        "extracted representation failed re-evaluation",
    );
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn ctx(d: i64) -> QuadOrderCtx {
        QuadOrderCtx::new(&bi(d)).unwrap()
    }

    fn form(a: i64, b: i64, c: i64) -> Form {
        Form::new(bi(a), bi(b), bi(c)).unwrap()
    }

    #[test]
    fn make_context_examples() {
        let c = ctx(-20);
        assert_eq!(c.fundamental_discriminant(), &bi(-20));
        assert_eq!(c.conductor(), &bi(1));

        let c = ctx(-12);
        assert_eq!(c.fundamental_discriminant(), &bi(-3));
        assert_eq!(c.conductor(), &bi(2));

        let c = ctx(-23);
        assert_eq!(c.fundamental_discriminant(), &bi(-23));
        assert_eq!(c.conductor(), &bi(1));

        assert!(QuadOrderCtx::new(&bi(-6)).is_err());
        assert!(QuadOrderCtx::new(&bi(20)).is_err());
    }

    #[test]
    fn fundamental_discriminants_are_fundamental() {
        // d_K = 1 (mod 4) square-free, or 4k with k = 2,3 (mod 4) square-free.
        for d in [-3i64, -4, -7, -8, -11, -15, -16, -20, -24, -32, -36, -48, -63, -99, -100] {
            let c = ctx(d);
            let dk = c.fundamental_discriminant().clone();
            let four = bi(4);
            if dk.mod_floor(&four).is_one() {
                let f = factor(&-&dk);
                assert!(f.iter().all(|(_, e)| *e == 1), "d_K={dk} not square-free");
            } else {
                let k: BigInt = &dk / &four;
                let r = k.mod_floor(&four);
                assert!(r == bi(2) || r == bi(3), "d_K={dk} has bad quotient");
                let f = factor(&-&k);
                assert!(f.iter().all(|(_, e)| *e == 1));
            }
            assert_eq!(c.conductor() * c.conductor() * dk, bi(d));
        }
    }

    #[test]
    fn prime_ideal_examples() {
        // D = -20, p = 3 splits; basis {3, (2 + sqrt(-20))/2}, class (2,2,3).
        let c = ctx(-20);
        let (p3, split) = c.prime_ideal_above(&bi(3)).unwrap().unwrap();
        assert_eq!(split, SplitType::Split);
        assert_eq!(p3.za(), &bi(3));
        assert_eq!(p3.basis_second(), (&bi(2), &bi(1)));
        assert_eq!(p3.norm(), bi(3));
        assert_eq!(p3.to_class().unwrap().rep(), &form(2, 2, 3));

        // D = -20, p = 5 ramifies; 0 and 10 name the same lattice, and the
        // canonical residue of u mod 2p is 0.
        let (p5, split) = c.prime_ideal_above(&bi(5)).unwrap().unwrap();
        assert_eq!(split, SplitType::Ramified);
        assert_eq!(p5.za(), &bi(5));
        assert_eq!(p5.basis_second(), (&bi(0), &bi(1)));
        // 10^2 = -20 = 0 (mod 20), so {5, (10 + sqrt(-20))/2} is also a
        // valid presentation; check it canonicalizes to the same ideal.
        assert!(p5.contains_half(&(bi(10), bi(1))));

        // D = -4, p = 3 is inert.
        let c4 = ctx(-4);
        assert!(c4.prime_ideal_above(&bi(3)).unwrap().is_none());

        // Conductor obstruction: 2 divides the conductor of D = -12.
        let c12 = ctx(-12);
        assert!(matches!(
            c12.prime_ideal_above(&bi(2)),
            Err(Error::ConductorNotCoprime { .. })
        ));
    }

    #[test]
    fn prime_ideal_above_two() {
        // -23 = 1 (mod 8): 2 splits, basis {2, (1 + sqrt(-23))/2}.
        let c = ctx(-23);
        let (p2, split) = c.prime_ideal_above(&bi(2)).unwrap().unwrap();
        assert_eq!(split, SplitType::Split);
        assert_eq!(p2.basis_second(), (&bi(1), &bi(1)));
        assert_eq!(p2.to_class().unwrap().rep(), &form(2, 1, 3));

        // -20: 2 ramifies with b = 2, class (2,2,3).
        let c = ctx(-20);
        let (p2, split) = c.prime_ideal_above(&bi(2)).unwrap().unwrap();
        assert_eq!(split, SplitType::Ramified);
        assert_eq!(p2.basis_second(), (&bi(2), &bi(1)));
        assert_eq!(p2.to_class().unwrap().rep(), &form(2, 2, 3));
    }

    #[test]
    fn conjugate_examples() {
        let c = ctx(-20);
        let (p3, _) = c.prime_ideal_above(&bi(3)).unwrap().unwrap();
        let conj = p3.conjugate();
        // -2 = 4 (mod 6).
        assert_eq!(conj.basis_second(), (&bi(4), &bi(1)));
        assert_eq!(conj.conjugate(), p3);

        let (p5, _) = c.prime_ideal_above(&bi(5)).unwrap().unwrap();
        assert_eq!(p5.conjugate(), p5);
    }

    #[test]
    fn conjugate_class_is_inverse_class() {
        let c = ctx(-23);
        let (p2, _) = c.prime_ideal_above(&bi(2)).unwrap().unwrap();
        let cls = p2.to_class().unwrap();
        let conj_cls = p2.conjugate().to_class().unwrap();
        assert_eq!(conj_cls, cls.inverse());
        assert_ne!(conj_cls, cls, "h(-23) = 3, so the conjugate differs");
    }

    #[test]
    fn multiply_examples() {
        let c = ctx(-20);
        let (p3, _) = c.prime_ideal_above(&bi(3)).unwrap().unwrap();
        // p * conj(p) = (p), the principal ideal of norm p^2.
        let pp = p3.multiply(&p3.conjugate()).unwrap();
        assert_eq!(pp.za(), &bi(3));
        assert_eq!(pp.basis_second(), (&bi(0), &bi(3)));
        assert_eq!(pp.norm(), bi(9));
        assert!(pp.to_class().unwrap().is_principal());

        // a * O = a.
        let unit = c.unit_ideal();
        assert_eq!(p3.multiply(&unit).unwrap(), p3);
        assert_eq!(unit.norm(), bi(1));
    }

    #[test]
    fn norm_is_multiplicative_on_coprime_norms() {
        let c = ctx(-23);
        let (p2, _) = c.prime_ideal_above(&bi(2)).unwrap().unwrap();
        let (p3, _) = c.prime_ideal_above(&bi(3)).unwrap().unwrap();
        let (p13, _) = c.prime_ideal_above(&bi(13)).unwrap().unwrap();
        let prod = p2.multiply(&p3).unwrap().multiply(&p13).unwrap();
        assert_eq!(prod.norm(), bi(78));
    }

    /// Tiny deterministic generator for reproducible "random" pair tests.
    struct XorShift(u64);
    impl XorShift {
        fn next(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }
    }

    #[test]
    fn class_map_is_a_homomorphism_on_random_pairs() {
        // class(a * b) = compose(class(a), class(b)) across 100 random
        // products of split primes at a few discriminants.
        let discs = [-20i64, -23, -47, -84];
        let mut rng = XorShift(0x5eed_1234_abcd_9876);
        let mut tested = 0;
        'outer: for &d in discs.iter().cycle() {
            let c = ctx(d);
            let mut primes = Vec::new();
            let mut p = bi(2);
            while primes.len() < 8 {
                if crate::arith::is_prime(&p) {
                    if let Some((ideal, _)) = c.prime_ideal_above(&p).unwrap() {
                        primes.push(ideal);
                    }
                }
                p += 1;
            }
            for _ in 0..9 {
                let pick = |rng: &mut XorShift| {
                    let i = (rng.next() % primes.len() as u64) as usize;
                    let ideal = primes[i].clone();
                    if rng.next() % 2 == 0 {
                        ideal.conjugate()
                    } else {
                        ideal
                    }
                };
                let a = pick(&mut rng).multiply(&pick(&mut rng)).unwrap();
                let b = pick(&mut rng);
                let lhs = a.multiply(&b).unwrap().to_class().unwrap();
                let rhs = a
                    .to_class()
                    .unwrap()
                    .compose(&b.to_class().unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs, "homomorphism failed at D={d}");
                tested += 1;
                if tested >= 100 {
                    break 'outer;
                }
            }
        }
        assert!(tested >= 100);
    }

    #[test]
    fn ideal_to_class_examples() {
        let c = ctx(-20);
        let (p3, _) = c.prime_ideal_above(&bi(3)).unwrap().unwrap();
        assert_eq!(p3.to_class().unwrap().rep(), &form(2, 2, 3));

        assert!(c.unit_ideal().to_class().unwrap().is_principal());

        // The ramified ideal above 5 is principal: {5, sqrt(-5)} = (sqrt(-5)),
        // matching x^2 + 5y^2 = 5 at (0, 1).
        let (p5, _) = c.prime_ideal_above(&bi(5)).unwrap().unwrap();
        assert_eq!(p5.to_class().unwrap().rep(), &form(1, 0, 5));
    }

    #[test]
    fn not_invertible_when_norm_meets_conductor() {
        let c = ctx(-12);
        let (p3, _) = c.prime_ideal_above(&bi(3)).unwrap().unwrap();
        assert!(p3.to_class().is_ok());
        // Force a norm sharing a factor with the conductor 2 by doubling.
        let doubled = hermite_basis(
            c.clone(),
            vec![
                (bi(4) * p3.za(), bi(0)),
                {
                    let (u, v) = p3.basis_second();
                    (u * bi(2), v * bi(2))
                },
            ],
        );
        assert!(matches!(doubled.to_class(), Err(Error::NotInvertible)));
    }

    #[test]
    fn extract_representation_examples() {
        // f = (2,2,3), ideal of norm 3: representations are (0, +-1) and
        // +-(1, -1).
        let c = ctx(-20);
        let f = form(2, 2, 3);
        let (p3, _) = c.prime_ideal_above(&bi(3)).unwrap().unwrap();
        let (x, y) = extract_representation(&f, &p3).unwrap();
        assert_eq!(f.eval(&x, &y), bi(3));
        assert!((x.is_zero() && y.abs().is_one()) || (x.abs().is_one() && y == -x));

        // Unit ideal on the principal form.
        let id = form(1, 0, 5);
        let (x, y) = extract_representation(&id, &c.unit_ideal()).unwrap();
        assert_eq!(id.eval(&x, &y), bi(1));
        assert_eq!((x.abs(), y), (bi(1), bi(0)));

        // Product ideal of norm 21 in the principal class.
        let (p3, _) = c.prime_ideal_above(&bi(3)).unwrap().unwrap();
        let (p7, _) = c.prime_ideal_above(&bi(7)).unwrap().unwrap();
        let a = p3.multiply(&p7).unwrap();
        assert_eq!(a.norm(), bi(21));
        let (x, y) = extract_representation(&id, &a).unwrap();
        assert_eq!(id.eval(&x, &y), bi(21));
        let pair = (x.abs(), y.abs());
        assert!(pair == (bi(1), bi(2)) || pair == (bi(4), bi(1)));
    }

    #[test]
    fn extract_representation_class_mismatch() {
        let c = ctx(-20);
        let f = form(1, 0, 5);
        let (p3, _) = c.prime_ideal_above(&bi(3)).unwrap().unwrap();
        assert!(matches!(
            extract_representation(&f, &p3),
            Err(Error::ClassMismatch)
        ));
    }

    #[test]
    fn prime_times_conjugate_is_rational() {
        for d in [-20i64, -23, -47, -71, -84, -120] {
            let c = ctx(d);
            let mut p = bi(2);
            let mut seen = 0;
            while seen < 5 {
                if crate::arith::is_prime(&p) && p.gcd(c.conductor()).is_one() {
                    if let Some((ideal, _)) = c.prime_ideal_above(&p).unwrap() {
                        let pp = ideal.multiply(&ideal.conjugate()).unwrap();
                        assert_eq!(pp.za(), &p);
                        assert_eq!(pp.basis_second().1, &p);
                        assert_eq!(pp.norm(), &p * &p);
                        seen += 1;
                    }
                }
                p += 1;
            }
        }
    }
}
