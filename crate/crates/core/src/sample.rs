//! Seeded random inputs for the identity checks. All samplers take the rng
//! explicitly so that every run with the same seed sees the same inputs.

use rand::Rng;

use crate::algebra::{AlgebraSpec, Element};
use crate::derivation::{act_left, Derivation};
use crate::scalar::Scalar;

pub const EXPONENT_RANGE: std::ops::RangeInclusive<i64> = -3..=3;

/// A random torus monomial with exponents in `[-3, 3]` (non-negative for
/// non-invertible generators) and coefficient 1.
pub fn monomial(alg: &AlgebraSpec, rng: &mut impl Rng) -> Element {
    let exps: Vec<i64> = alg
        .generators
        .iter()
        .map(|g| {
            if g.invertible {
                rng.random_range(EXPONENT_RANGE)
            } else {
                rng.random_range(0..=3)
            }
        })
        .collect();
    alg.monomial(&exps).expect("sampled exponents are valid")
}

/// A random monomial with a small nonzero integer coefficient.
pub fn monomial_with_coef(alg: &AlgebraSpec, rng: &mut impl Rng) -> Element {
    let c = loop {
        let c: i64 = rng.random_range(-3..=3);
        if c != 0 {
            break c;
        }
    };
    monomial(alg, rng).scale(&Scalar::from_int(c))
}

/// A random homogeneous derivation with one monomial coefficient on one
/// basis slot.
pub fn derivation(alg: &AlgebraSpec, rng: &mut impl Rng) -> Derivation {
    let slot = rng.random_range(0..alg.rank());
    let coef = monomial(alg, rng);
    act_left(alg, &coef, &Derivation::basis(alg, slot)).expect("left action is total")
}

/// A random homogeneous element: a monomial (the sampling backbone used by
/// all identity suites).
pub fn homogeneous_element(alg: &AlgebraSpec, rng: &mut impl Rng) -> Element {
    monomial(alg, rng)
}

/// A random skew cochain of the given arity with monomial components,
/// projected onto the twist-compatible subspace by averaging with its
/// twist pullback (valid for the involutive twists the models use). The
/// projection may collapse the sample to zero when the compatible subspace
/// is small; that is the honest shape of the space.
pub fn hom_cochain(
    alg: &AlgebraSpec,
    basis: &crate::derivation::DerivationBasis,
    rng: &mut impl Rng,
    arity: usize,
) -> crate::error::Result<crate::cochain::Cochain> {
    use crate::cochain::Cochain;
    use crate::derivation::{apply_phi_a, partial_degree};

    let raw = match arity {
        0 => Cochain::from_element(alg, &monomial(alg, rng))?,
        1 => {
            let slot = rng.random_range(0..alg.rank());
            let m = monomial(alg, rng);
            let degree = alg
                .group
                .add(&alg.degree(&m).unwrap(), &alg.generators[slot].degree)?;
            let mut comps = vec![Element::zero(); alg.rank()];
            comps[slot] = m;
            Cochain::from_components(alg, 1, comps, degree)?
        }
        2 => {
            let a = 0usize;
            let b = 1usize;
            let v = monomial(alg, rng);
            let degree = alg.group.add(
                &alg.degree(&v).unwrap(),
                &alg.group
                    .add(&alg.generators[a].degree, &alg.generators[b].degree)?,
            )?;
            let n = alg.rank();
            let mut comps = vec![Element::zero(); n * n];
            let rho = alg
                .cocycle
                .eval(&partial_degree(alg, a), &partial_degree(alg, b))?;
            comps[a * n + b] = v.clone();
            comps[b * n + a] = v.scale(&rho.inv()?).neg();
            Cochain::from_components(alg, 2, comps, degree)?
        }
        _ => {
            return Err(crate::error::Error::structure(
                "cochain sampling supports arity <= 2",
            ))
        }
    };
    if arity == 0 {
        return Ok(raw);
    }
    // project: beta = (alpha + alpha o phiA) / 2
    let n = alg.rank();
    let mut comps = vec![Element::zero(); n.pow(arity as u32)];
    for tuple in crate::tensor::tuples(n, arity) {
        let args: Vec<crate::derivation::Derivation> = tuple
            .iter()
            .map(|&i| apply_phi_a(alg, basis, &crate::derivation::Derivation::basis(alg, i)))
            .collect();
        let pulled = raw.eval(alg, &args)?;
        let avg = raw
            .component(alg, &tuple)
            .add(&pulled)
            .scale(&Scalar::from_rat(crate::scalar::rat(1, 2)));
        comps[crate::tensor::tuple_index(n, &tuple)] = avg;
    }
    let projected = Cochain::from_components(alg, arity, comps, raw.degree().clone())?;
    projected.require_hom(alg, basis)?;
    Ok(projected)
}
