//! Shared solver scaffolding: instance validation, the splitting screen,
//! and solution reconstruction from a sign assignment.
//!
//! Both subset-sum solvers start the same way: validate the factorization
//! (square-free, coprime to the conductor), then screen every prime of m
//! against the Kronecker symbol of the discriminant. A single inert prime
//! certifies non-representability outright. The primes that survive are
//! materialized as prime ideals with their form classes; the solvers then
//! differ only in how they search for the sign vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::arith::{kronecker, Factorization};
use crate::error::Error;
use crate::forms::{Form, FormClass};
use crate::quadorder::{extract_representation, OIdeal, QuadOrderCtx, SplitType};

/// Result of a solve: a verified solution or a certificate that none
/// exists. Structured errors (bad input, precondition violations) travel
/// separately as [`Error`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution { x: BigInt, y: BigInt },
    NoSolution,
}

impl SolveOutcome {
    pub fn is_solution(&self) -> bool {
        matches!(self, SolveOutcome::Solution { .. })
    }
}

/// A prime of m together with its prime ideal and form class.
pub(crate) struct PrimeSite {
    pub p: BigInt,
    pub ideal: OIdeal,
    pub class: FormClass,
}

/// A screened, validated instance ready for the subset-sum search.
pub(crate) struct Instance {
    pub form: Form,
    pub class: FormClass,
    pub ctx: QuadOrderCtx,
    /// Split primes of m, ascending.
    pub split: Vec<PrimeSite>,
    /// Ramified primes of m, ascending.
    pub ramified: Vec<PrimeSite>,
}

pub(crate) enum Prepared {
    /// Some prime of m is inert: no solution exists.
    Screened,
    Ready(Box<Instance>),
}

pub(crate) fn prepare(form: &Form, fact: &Factorization) -> Result<Prepared, Error> {
    fact.ensure_square_free()?;
    let d = form.discriminant();
    let ctx = QuadOrderCtx::new(&d)?;
    for (p, _) in fact.factors() {
        if !p.gcd(ctx.conductor()).is_one() {
            return Err(Error::ConductorNotCoprime {
                value: p.clone(),
                conductor: ctx.conductor().clone(),
            });
        }
    }
    // Splitting screen: one inert prime settles the instance.
    for (p, _) in fact.factors() {
        if kronecker(&d, p) == -1 {
            return Ok(Prepared::Screened);
        }
    }
    let mut split = Vec::new();
    let mut ramified = Vec::new();
    for (p, _) in fact.factors() {
        let (ideal, ty) = ctx
            .prime_ideal_above(p)?
            .expect("screen already excluded inert primes");
        let class = ideal.to_class()?;
        let site = PrimeSite {
            p: p.clone(),
            ideal,
            class,
        };
        match ty {
            SplitType::Split => split.push(site),
            SplitType::Ramified => ramified.push(site),
        }
    }
    Ok(Prepared::Ready(Box::new(Instance {
        form: form.clone(),
        class: form.class(),
        ctx,
        split,
        ramified,
    })))
}

/// Multiplies out the ideal selected by the sign vector (conjugating the
/// split primes with delta = -1), in ascending prime order, and extracts
/// a representation. The result is verified by evaluation inside
/// [`extract_representation`].
pub(crate) fn reconstruct(inst: &Instance, delta: &[i8]) -> Result<(BigInt, BigInt), Error> {
    debug_assert_eq!(delta.len(), inst.split.len());
    let mut picks: Vec<(&BigInt, OIdeal)> = Vec::new();
    for (site, &sign) in inst.split.iter().zip(delta) {
        let q = if sign >= 0 {
            site.ideal.clone()
        } else {
            site.ideal.conjugate()
        };
        picks.push((&site.p, q));
    }
    for site in &inst.ramified {
        picks.push((&site.p, site.ideal.clone()));
    }
    picks.sort_by(|a, b| a.0.cmp(b.0));
    let mut a = inst.ctx.unit_ideal();
    for (_, q) in picks {
        a = a.multiply(&q)?;
    }
    extract_representation(&inst.form, &a)
}
