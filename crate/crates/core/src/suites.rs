//! Seeded sampling suites over a model: the twisted Lie axioms on random
//! derivation triples, nilpotency of the coboundary, the Cartan identity,
//! and the Poisson axiom battery. Each suite returns a deterministic report
//! for a given (model, parameters, seed).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraSpec, Element};
use crate::cochain::{cartan_residual, d_mu};
use crate::derivation::DerivationBasis;
use crate::report::Report;
use crate::symplectic::{check_poisson_axioms, PoissonStructure};

/// Twisted antisymmetry and Jacobi identity on `trials` random triples of
/// homogeneous monomial-coefficient derivations.
pub fn hom_lie_suite(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    trials: usize,
    seed: u64,
) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    let mut anti_witness = None;
    let mut jac_witness = None;
    let mut failures = 0usize;
    for _ in 0..trials {
        let x = crate::sample::derivation(alg, &mut rng);
        let y = crate::sample::derivation(alg, &mut rng);
        let z = crate::sample::derivation(alg, &mut rng);
        if anti_witness.is_none() {
            let res = (|| -> crate::error::Result<Option<String>> {
                let dx = crate::derivation::derivation_degree_checked(alg, &x, "sample")?;
                let dy = crate::derivation::derivation_degree_checked(alg, &y, "sample")?;
                let rho = alg.cocycle.eval(&dx, &dy)?;
                let lhs = crate::derivation::derivation_bracket(alg, &x, &y)?;
                let rhs = crate::derivation::derivation_bracket(alg, &y, &x)?
                    .scale(&rho)
                    .neg();
                Ok((lhs != rhs).then(|| {
                    format!(
                        "X={}, Y={}",
                        crate::render::render_derivation(alg, &x),
                        crate::render::render_derivation(alg, &y)
                    )
                }))
            })();
            anti_witness = match res {
                Ok(w) => w,
                Err(e) => Some(format!("{e}")),
            };
        }
        match crate::derivation::jacobi_residual(alg, basis, &x, &y, &z) {
            Ok(r) if r.is_zero() => {}
            Ok(r) => {
                failures += 1;
                if jac_witness.is_none() {
                    jac_witness = Some(format!(
                        "residual {} at X={}, Y={}, Z={}",
                        crate::render::render_derivation(alg, &r),
                        crate::render::render_derivation(alg, &x),
                        crate::render::render_derivation(alg, &y),
                        crate::render::render_derivation(alg, &z)
                    ));
                }
            }
            Err(e) => {
                failures += 1;
                if jac_witness.is_none() {
                    jac_witness = Some(format!("{e}"));
                }
            }
        }
    }
    report.record("rho-antisymmetry", anti_witness);
    report.record(
        "rho-jacobi",
        jac_witness.map(|w| format!("{failures}/{trials} triples failed; first: {w}")),
    );
    report
}

/// `d(d alpha)) = 0` on random twist-compatible cochains of each arity up
/// to `max_arity`. A coboundary that leaves the compatible subspace is a
/// failure of the squared-zero property and is reported as such.
pub fn d_squared_suite(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    max_arity: usize,
    trials: usize,
    seed: u64,
) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    for arity in 0..=max_arity {
        let mut witness = None;
        let mut failures = 0usize;
        for _ in 0..trials {
            let alpha = match crate::sample::hom_cochain(alg, basis, &mut rng, arity) {
                Ok(a) => a,
                Err(e) => {
                    failures += 1;
                    if witness.is_none() {
                        witness = Some(format!("sampling failed: {e}"));
                    }
                    continue;
                }
            };
            let result = d_mu(alg, basis, &alpha).and_then(|d| d_mu(alg, basis, &d));
            match result {
                Ok(dd) if dd.is_zero() => {}
                Ok(_) => {
                    failures += 1;
                    if witness.is_none() {
                        witness = Some("d(d alpha) != 0".into());
                    }
                }
                Err(e) => {
                    failures += 1;
                    if witness.is_none() {
                        witness = Some(format!("{e}"));
                    }
                }
            }
        }
        report.record(
            format!("d-squared-arity-{arity}"),
            witness.map(|w| format!("{failures}/{trials} samples failed; first: {w}")),
        );
    }
    report
}

/// Cartan identity `L_(phiA X) = d o i_(phiA X) + i_(phiA X) o d` on random
/// (derivation, compatible cochain) pairs of arities 1 and 2.
pub fn cartan_suite(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    trials: usize,
    seed: u64,
) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    let mut witness = None;
    let mut failures = 0usize;
    for t in 0..trials {
        let x = crate::sample::derivation(alg, &mut rng);
        let arity = 1 + (t % 2);
        let alpha = match crate::sample::hom_cochain(alg, basis, &mut rng, arity) {
            Ok(a) => a,
            Err(e) => {
                failures += 1;
                if witness.is_none() {
                    witness = Some(format!("sampling failed: {e}"));
                }
                continue;
            }
        };
        match cartan_residual(alg, basis, &x, &alpha) {
            Ok(r) if r.is_zero() => {}
            Ok(_) => {
                failures += 1;
                if witness.is_none() {
                    witness = Some(format!(
                        "nonzero residual at X={}, arity {arity}",
                        crate::render::render_derivation(alg, &x)
                    ));
                }
            }
            Err(e) => {
                failures += 1;
                if witness.is_none() {
                    witness = Some(format!("{e}"));
                }
            }
        }
    }
    report.record(
        "cartan-identity",
        witness.map(|w| format!("{failures}/{trials} samples failed; first: {w}")),
    );
    report
}

/// Poisson axiom battery: for the torus backend, `trials` random monomial
/// triples run through the per-triple identities; for finite tables the
/// basis labels are checked exhaustively through the full axiom checker.
pub fn poisson_suite(
    alg: &AlgebraSpec,
    basis: Option<&DerivationBasis>,
    structure: &PoissonStructure,
    trials: usize,
    seed: u64,
) -> Report {
    if !alg.is_torus() {
        let samples: Vec<Element> = (0..alg.rank()).map(|i| alg.generator(i)).collect();
        return check_poisson_axioms(alg, basis, structure, &samples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    let mut witnesses: std::collections::BTreeMap<&str, (usize, Option<String>)> =
        std::collections::BTreeMap::new();
    for name in [
        "degree-law",
        "rho-antisymmetry",
        "rho-jacobi",
        "leibniz",
        "bracket-route-agreement",
    ] {
        witnesses.insert(name, (0, None));
    }
    let mut note = |name: &str, w: Option<String>| {
        let slot = witnesses.get_mut(name).expect("known check");
        if let Some(w) = w {
            slot.0 += 1;
            if slot.1.is_none() {
                slot.1 = Some(w);
            }
        }
    };
    let p_deg = structure.bracket_degree(alg);
    for _ in 0..trials {
        let f = crate::sample::monomial(alg, &mut rng);
        let g = crate::sample::monomial(alg, &mut rng);
        let h = crate::sample::monomial(alg, &mut rng);
        let ctx = |which: &str, e: &crate::error::Error| {
            Some(format!(
                "{which} at f={}, g={}, h={}: {e}",
                alg.render(&f),
                alg.render(&g),
                alg.render(&h)
            ))
        };

        // both defining routes agree (enforced inside the bracket)
        match structure.bracket(alg, basis, &f, &g) {
            Ok(fg) => {
                note("bracket-route-agreement", None);
                // degree law on this pair
                let w = (|| -> crate::error::Result<Option<String>> {
                    if fg.is_zero() {
                        return Ok(None);
                    }
                    let expected = alg.group.add(
                        &p_deg,
                        &alg.group.add(
                            &alg.degree_checked(&f, "sample")?,
                            &alg.degree_checked(&g, "sample")?,
                        )?,
                    )?;
                    Ok(match alg.degree(&fg) {
                        Some(d) if d == expected => None,
                        _ => Some(format!(
                            "|{{f,g}}| wrong at f={}, g={}",
                            alg.render(&f),
                            alg.render(&g)
                        )),
                    })
                })();
                note("degree-law", w.unwrap_or_else(|e| ctx("degree-law", &e)));
            }
            Err(e) => note("bracket-route-agreement", ctx("bracket", &e)),
        }

        let w = (|| -> crate::error::Result<Option<String>> {
            let df = alg.degree_checked(&f, "sample")?;
            let dg = alg.degree_checked(&g, "sample")?;
            let rho = alg.cocycle.eval(&df, &dg)?;
            let lhs = structure.bracket(alg, basis, &f, &g)?;
            let rhs = structure.bracket(alg, basis, &g, &f)?.scale(&rho).neg();
            Ok((lhs != rhs).then(|| {
                format!(
                    "antisymmetry fails at f={}, g={}",
                    alg.render(&f),
                    alg.render(&g)
                )
            }))
        })();
        note(
            "rho-antisymmetry",
            w.unwrap_or_else(|e| ctx("antisymmetry", &e)),
        );

        let w = match crate::symplectic::poisson_jacobi_residual(alg, basis, structure, &f, &g, &h)
        {
            Ok(r) if r.is_zero() => None,
            Ok(r) => Some(format!(
                "residual {} at f={}, g={}, h={}",
                alg.render(&r),
                alg.render(&f),
                alg.render(&g),
                alg.render(&h)
            )),
            Err(e) => ctx("jacobi", &e),
        };
        note("rho-jacobi", w);

        let w = match crate::symplectic::poisson_leibniz_residual(alg, basis, structure, &f, &g, &h)
        {
            Ok(r) if r.is_zero() => None,
            Ok(r) => Some(format!(
                "residual {} at f={}, g={}, h={}",
                alg.render(&r),
                alg.render(&f),
                alg.render(&g),
                alg.render(&h)
            )),
            Err(e) => ctx("leibniz", &e),
        };
        note("leibniz", w);
    }
    for (name, (count, first)) in witnesses {
        report.record(
            name,
            first.map(|w| format!("{count}/{trials} samples failed; first: {w}")),
        );
    }
    report
}

/// The Hamiltonian bracket correspondence on sampled pairs, in both the
/// printed and the sign-corrected variants (symplectic sources only).
pub fn hamiltonian_correspondence_suite(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    sympl: &crate::symplectic::SymplecticStructure,
    trials: usize,
    seed: u64,
) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();
    let mut printed = None;
    let mut signed = None;
    let mut printed_fails = 0usize;
    let mut signed_fails = 0usize;
    for _ in 0..trials {
        let f = crate::sample::monomial(alg, &mut rng);
        let g = crate::sample::monomial(alg, &mut rng);
        let res = (|| -> crate::error::Result<(bool, bool, String)> {
            let xf = sympl.hamiltonian_vf(alg, basis, &f)?;
            let xg = sympl.hamiltonian_vf(alg, basis, &g)?;
            let lhs = crate::derivation::derivation_bracket(alg, &xf, &xg)?;
            let fg = crate::symplectic::poisson(alg, basis, sympl, &f, &g)?;
            let dg = alg.degree_checked(&g, "sample")?;
            let rho = alg.cocycle.eval(&dg, sympl.degree())?;
            let rhs = sympl.hamiltonian_vf(alg, basis, &fg)?.scale(&rho);
            let at = format!("at f={}, g={}", alg.render(&f), alg.render(&g));
            Ok((lhs == rhs, lhs == rhs.neg(), at))
        })();
        match res {
            Ok((p, s, at)) => {
                if !p {
                    printed_fails += 1;
                    if printed.is_none() {
                        printed = Some(at.clone());
                    }
                }
                if !s {
                    signed_fails += 1;
                    if signed.is_none() {
                        signed = Some(at);
                    }
                }
            }
            Err(e) => {
                printed_fails += 1;
                signed_fails += 1;
                if printed.is_none() {
                    printed = Some(format!("{e}"));
                }
                if signed.is_none() {
                    signed = Some(format!("{e}"));
                }
            }
        }
    }
    report.record(
        "hamiltonian-corollary",
        printed.map(|w| format!("{printed_fails}/{trials} samples failed; first: {w}")),
    );
    report.record_advisory(
        "hamiltonian-corollary-signed",
        signed.map(|w| format!("{signed_fails}/{trials} samples failed; first: {w}")),
        None,
    );
    report
}
