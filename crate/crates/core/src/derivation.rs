//! The derivation module over a torus-backed algebra: left-module
//! combinations `X = sum_i f_i @ d_i` of the basis derivations `d_i` dual to
//! the generators (`d_i(x_j) = delta_ij`, `|d_i| = -|x_i|`), the twisted
//! Leibniz action, the rho-commutator bracket, bimodule actions, and the
//! basis twist map.

use std::fmt;

use crate::algebra::{invert_scalar_matrix, AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::report::Report;
use crate::scalar::Scalar;

/// The basis twist: an `n x n` scalar matrix with column `i` holding the
/// coordinates of the image of `d_i`, plus the Leibniz twisting power carried
/// by the basis derivations (0 for plain derivations).
#[derive(Clone, Debug)]
pub struct DerivationBasis {
    /// `phi_a[r][c]`: coefficient of `d_r` in the image of `d_c`.
    pub phi_a: Vec<Vec<Scalar>>,
    pub leibniz_exponent: u32,
}

impl DerivationBasis {
    pub fn new(phi_a: Vec<Vec<Scalar>>) -> Result<DerivationBasis> {
        let n = phi_a.len();
        if phi_a.iter().any(|row| row.len() != n) {
            return Err(Error::structure("basis twist matrix must be square"));
        }
        Ok(DerivationBasis {
            phi_a,
            leibniz_exponent: 0,
        })
    }

    pub fn identity(n: usize) -> DerivationBasis {
        let phi_a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                    .collect()
            })
            .collect();
        DerivationBasis {
            phi_a,
            leibniz_exponent: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.phi_a.len()
    }

    pub fn is_identity(&self) -> bool {
        self.phi_a.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, s)| if i == j { s.is_one() } else { s.is_zero() })
        })
    }

    /// Degree bookkeeping: the twist must be even, so entry (r, c) may be
    /// nonzero only when `|d_r| = |d_c|`. Violations are reported.
    pub fn validate(&self, alg: &AlgebraSpec) -> Report {
        let mut report = Report::new();
        if self.rank() != alg.rank() {
            report.fail(
                "basis-twist-rank",
                format!(
                    "matrix is {}x{} but the algebra has {} generators",
                    self.rank(),
                    self.rank(),
                    alg.rank()
                ),
            );
            return report;
        }
        report.pass("basis-twist-rank");
        let mut witness = None;
        for c in 0..self.rank() {
            for r in 0..self.rank() {
                if !self.phi_a[r][c].is_zero()
                    && alg.generators[r].degree != alg.generators[c].degree
                {
                    witness = Some(format!(
                        "entry ({r},{c}) maps degree {} into degree {}",
                        alg.generators[c].degree, alg.generators[r].degree
                    ));
                }
            }
        }
        report.record("basis-twist-even", witness);
        match invert_scalar_matrix(&self.phi_a) {
            Some(_) => report.pass("basis-twist-regular"),
            None => report.fail("basis-twist-regular", "matrix is singular"),
        }
        report
    }

    pub fn inverse_matrix(&self) -> Result<Vec<Vec<Scalar>>> {
        invert_scalar_matrix(&self.phi_a)
            .ok_or_else(|| Error::arith("basis twist matrix is singular"))
    }
}

/// A derivation `X = sum_i comps[i] @ d_i` with element coefficients acting
/// on the left.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    pub comps: Vec<Element>,
}

impl Derivation {
    pub fn new(comps: Vec<Element>) -> Derivation {
        Derivation { comps }
    }

    pub fn zero(n: usize) -> Derivation {
        Derivation {
            comps: vec![Element::zero(); n],
        }
    }

    /// The basis derivation `d_i`.
    pub fn basis(alg: &AlgebraSpec, i: usize) -> Derivation {
        let mut comps = vec![Element::zero(); alg.rank()];
        comps[i] = alg.one();
        Derivation { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        Derivation {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Derivation {
        Derivation {
            comps: self.comps.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Derivation {
        Derivation {
            comps: self.comps.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Split into homogeneous single-term pieces `(coefficient, index)`.
    pub fn monomial_pieces(&self) -> Vec<(Element, usize)> {
        let mut out = vec![];
        for (i, c) in self.comps.iter().enumerate() {
            for piece in c.monomial_pieces() {
                out.push((piece, i));
            }
        }
        out
    }
}

/// Degree of the basis derivation `d_i`, which is `-|x_i|`.
pub fn partial_degree(alg: &AlgebraSpec, i: usize) -> Degree {
    alg.group
        .neg(&alg.generators[i].degree)
        .expect("generator degree belongs to the group")
}

/// Degree of a homogeneous derivation (`|X| = |f_i| - |x_i|` for every
/// nonzero component); `None` when inhomogeneous or zero.
pub fn derivation_degree(alg: &AlgebraSpec, x: &Derivation) -> Option<Degree> {
    let mut deg: Option<Degree> = None;
    for (i, c) in x.comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let dc = alg.degree(c)?;
        let d = alg.group.add(&dc, &partial_degree(alg, i)).ok()?;
        match &deg {
            None => deg = Some(d),
            Some(prev) if *prev == d => {}
            Some(_) => return None,
        }
    }
    deg
}

pub fn derivation_degree_checked(
    alg: &AlgebraSpec,
    x: &Derivation,
    what: &str,
) -> Result<Degree> {
    if x.is_zero() {
        return Ok(alg.group.zero());
    }
    derivation_degree(alg, x).ok_or_else(|| Error::domain(format!("{what} must be homogeneous")))
}

fn require_torus(alg: &AlgebraSpec) -> Result<()> {
    if !alg.is_torus() {
        return Err(Error::domain(
            "derivations are only supported on the torus backend",
        ));
    }
    Ok(())
}

/// Action of the basis derivation `d_i` on a canonical monomial: peeling
/// generator blocks from the left through the Leibniz rule gives
/// `d_i(x^e) = e_i * rho(-|x_i|, sum_{j<i} e_j |x_j|) * x^(e - eps_i)`.
fn partial_on_mono(alg: &AlgebraSpec, i: usize, expnts: &[i64]) -> Result<Element> {
    let e_i = expnts[i];
    if e_i == 0 {
        return Ok(Element::zero());
    }
    let mut passed = alg.group.zero();
    for (j, &e_j) in expnts.iter().enumerate().take(i) {
        for _ in 0..e_j.unsigned_abs() {
            let d = &alg.generators[j].degree;
            passed = if e_j > 0 {
                alg.group.add(&passed, d)?
            } else {
                alg.group.sub(&passed, d)?
            };
        }
    }
    let di = partial_degree(alg, i);
    let rho = alg.cocycle.eval(&di, &passed)?;
    let mut out = expnts.to_vec();
    out[i] -= 1;
    if out[i] < 0 && !alg.generators[i].invertible {
        return Err(Error::domain(format!(
            "negative power of non-invertible generator {}",
            alg.generators[i].name
        )));
    }
    Ok(Element::from_term(
        crate::algebra::Mono::Torus(out),
        &Scalar::from_int(e_i) * &rho,
    ))
}

/// Apply a derivation to an element: basis actions on monomials, extended
/// linearly over terms and by left-module coefficients.
pub fn apply_derivation(alg: &AlgebraSpec, x: &Derivation, f: &Element) -> Result<Element> {
    require_torus(alg)?;
    derivation_degree_checked(alg, x, "derivation")?;
    let mut out = Element::zero();
    for (i, coef) in x.comps.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let mut partial = Element::zero();
        for (m, c) in f.terms() {
            let crate::algebra::Mono::Torus(e) = m else {
                return Err(Error::domain("derivation applied to non-torus element"));
            };
            partial = partial.add(&partial_on_mono(alg, i, e)?.scale(c));
        }
        out = out.add(&alg.mul(coef, &partial)?);
    }
    Ok(out)
}

/// The bracket `[X, Y] = X o Y - rho(X, Y) Y o X`, reconstructed in
/// components by evaluating on the generators.
pub fn derivation_bracket(
    alg: &AlgebraSpec,
    x: &Derivation,
    y: &Derivation,
) -> Result<Derivation> {
    require_torus(alg)?;
    let dx = derivation_degree_checked(alg, x, "bracket argument")?;
    let dy = derivation_degree_checked(alg, y, "bracket argument")?;
    let rho = alg.cocycle.eval(&dx, &dy)?;
    let mut comps = vec![];
    for i in 0..alg.rank() {
        let gen = alg.generator(i);
        let xy = apply_derivation(alg, x, &apply_derivation(alg, y, &gen)?)?;
        let yx = apply_derivation(alg, y, &apply_derivation(alg, x, &gen)?)?;
        comps.push(xy.sub(&yx.scale(&rho)));
    }
    Ok(Derivation::new(comps))
}

/// Left action `f @ X` and right action `X < f = rho(X, f) f @ X`.
pub fn act_left(alg: &AlgebraSpec, f: &Element, x: &Derivation) -> Result<Derivation> {
    Ok(Derivation::new(
        x.comps
            .iter()
            .map(|c| alg.mul(f, c))
            .collect::<Result<_>>()?,
    ))
}

pub fn act_right(alg: &AlgebraSpec, x: &Derivation, f: &Element) -> Result<Derivation> {
    let dx = derivation_degree_checked(alg, x, "right action")?;
    let df = alg.degree_checked(f, "right action coefficient")?;
    let rho = alg.cocycle.eval(&dx, &df)?;
    Ok(act_left(alg, f, x)?.scale(&rho))
}

/// The basis twist on a general derivation: coefficients pass through the
/// algebra twist, basis vectors through the matrix, so that
/// `phi_A(f X) = phi(f) phi_A(X)`.
pub fn apply_phi_a(alg: &AlgebraSpec, basis: &DerivationBasis, x: &Derivation) -> Derivation {
    let n = alg.rank();
    let mut comps = vec![Element::zero(); n];
    for (i, c) in x.comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let tc = alg.apply_phi(c);
        for (r, comp) in comps.iter_mut().enumerate() {
            let entry = &basis.phi_a[r][i];
            if !entry.is_zero() {
                *comp = comp.add(&tc.scale(entry));
            }
        }
    }
    Derivation::new(comps)
}

/// Inverse of the basis twist; requires both the matrix and the algebra
/// twist to be invertible.
pub fn apply_phi_a_inverse(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    x: &Derivation,
) -> Result<Derivation> {
    let inv = basis.inverse_matrix()?;
    let n = alg.rank();
    let mut comps = vec![Element::zero(); n];
    for (i, c) in x.comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let tc = alg.apply_phi_inverse(c)?;
        for (r, comp) in comps.iter_mut().enumerate() {
            let entry = &inv[r][i];
            if !entry.is_zero() {
                *comp = comp.add(&tc.scale(entry));
            }
        }
    }
    Ok(Derivation::new(comps))
}

type BracketFn<'a> = &'a dyn Fn(&Derivation, &Derivation) -> Result<Derivation>;

/// Verify rho-antisymmetry and the twisted Jacobi identity on the sampled
/// derivations, with the twist given by the basis matrix.
pub fn check_hom_rho_lie(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    samples: &[Derivation],
) -> Report {
    let bracket = |x: &Derivation, y: &Derivation| derivation_bracket(alg, x, y);
    check_hom_rho_lie_with(alg, basis, samples, &bracket)
}

/// Same checks with an injectable bracket, so negative controls can corrupt
/// it deliberately.
pub fn check_hom_rho_lie_with(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    samples: &[Derivation],
    bracket: BracketFn,
) -> Report {
    let mut report = Report::new();

    let mut witness = None;
    'anti: for x in samples {
        for y in samples {
            let w = (|| -> Result<Option<String>> {
                let dx = derivation_degree_checked(alg, x, "sample")?;
                let dy = derivation_degree_checked(alg, y, "sample")?;
                let rho = alg.cocycle.eval(&dx, &dy)?;
                let lhs = bracket(x, y)?;
                let rhs = bracket(y, x)?.scale(&rho).neg();
                if lhs == rhs {
                    Ok(None)
                } else {
                    Ok(Some(format!(
                        "[X,Y] + rho(X,Y)[Y,X] != 0 at X={}, Y={}",
                        render_derivation(alg, x),
                        render_derivation(alg, y)
                    )))
                }
            })();
            match w {
                Ok(None) => {}
                Ok(Some(w)) => {
                    witness = Some(w);
                    break 'anti;
                }
                Err(e) => {
                    witness = Some(format!("{e}"));
                    break 'anti;
                }
            }
        }
    }
    report.record("rho-antisymmetry", witness);

    let mut witness = None;
    'jac: for x in samples {
        for y in samples {
            for z in samples {
                match jacobi_residual_with(alg, basis, x, y, z, bracket) {
                    Ok(res) if res.is_zero() => {}
                    Ok(res) => {
                        witness = Some(format!(
                            "residual {} at X={}, Y={}, Z={}",
                            render_derivation(alg, &res),
                            render_derivation(alg, x),
                            render_derivation(alg, y),
                            render_derivation(alg, z)
                        ));
                        break 'jac;
                    }
                    Err(e) => {
                        witness = Some(format!("{e}"));
                        break 'jac;
                    }
                }
            }
        }
    }
    report.record("rho-jacobi", witness);

    report
}

/// The twisted Jacobi sum
/// `rho(Z,X)[phi(X),[Y,Z]] + rho(Y,Z)[phi(Z),[X,Y]] + rho(X,Y)[phi(Y),[Z,X]]`.
pub fn jacobi_residual(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    x: &Derivation,
    y: &Derivation,
    z: &Derivation,
) -> Result<Derivation> {
    let bracket = |a: &Derivation, b: &Derivation| derivation_bracket(alg, a, b);
    jacobi_residual_with(alg, basis, x, y, z, &bracket)
}

fn jacobi_residual_with(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    x: &Derivation,
    y: &Derivation,
    z: &Derivation,
    bracket: BracketFn,
) -> Result<Derivation> {
    let dx = derivation_degree_checked(alg, x, "Jacobi argument")?;
    let dy = derivation_degree_checked(alg, y, "Jacobi argument")?;
    let dz = derivation_degree_checked(alg, z, "Jacobi argument")?;
    let term = |outer: &Derivation,
                a: &Derivation,
                b: &Derivation,
                rho: Scalar|
     -> Result<Derivation> {
        let inner = bracket(a, b)?;
        let ob = bracket(&apply_phi_a(alg, basis, outer), &inner)?;
        Ok(ob.scale(&rho))
    };
    let t1 = term(x, y, z, alg.cocycle.eval(&dz, &dx)?)?;
    let t2 = term(z, x, y, alg.cocycle.eval(&dy, &dz)?)?;
    let t3 = term(y, z, x, alg.cocycle.eval(&dx, &dy)?)?;
    Ok(t1.add(&t2).add(&t3))
}

/// Check that a derivation is a twisted derivation of Leibniz power `k`:
/// it commutes with the algebra twist and satisfies
/// `X[f,g] = [X(f), phi^k(g)] + rho(X, f)[phi^k(f), X(g)]`
/// on the sampled homogeneous pairs.
pub fn check_phik_derivation(
    alg: &AlgebraSpec,
    x: &Derivation,
    k: u32,
    samples: &[(Element, Element)],
) -> Report {
    let mut report = Report::new();

    let mut witness = None;
    for (f, g) in samples {
        for h in [f, g] {
            let w = (|| -> Result<Option<String>> {
                let lhs = apply_derivation(alg, x, &alg.apply_phi(h))?;
                let rhs = alg.apply_phi(&apply_derivation(alg, x, h)?);
                if lhs == rhs {
                    Ok(None)
                } else {
                    Ok(Some(format!(
                        "X(phi(f)) = {} but phi(X(f)) = {} at f={}",
                        alg.render(&lhs),
                        alg.render(&rhs),
                        alg.render(h)
                    )))
                }
            })();
            match w {
                Ok(None) => {}
                Ok(Some(w)) => witness = Some(w),
                Err(e) => witness = Some(format!("{e}")),
            }
            if witness.is_some() {
                break;
            }
        }
        if witness.is_some() {
            break;
        }
    }
    report.record("phi-commutation", witness);

    let mut witness = None;
    for (f, g) in samples {
        let w = (|| -> Result<Option<String>> {
            let dx = derivation_degree_checked(alg, x, "derivation")?;
            let df = alg.degree_checked(f, "sample")?;
            let rho = alg.cocycle.eval(&dx, &df)?;
            let lhs = apply_derivation(alg, x, &alg.rho_commutator(f, g)?)?;
            let phikf = alg.apply_phi_iter(f, k);
            let phikg = alg.apply_phi_iter(g, k);
            let rhs = alg
                .rho_commutator(&apply_derivation(alg, x, f)?, &phikg)?
                .add(&alg.rho_commutator(&phikf, &apply_derivation(alg, x, g)?)?.scale(&rho));
            if lhs == rhs {
                Ok(None)
            } else {
                Ok(Some(format!(
                    "twisted Leibniz residual {} at f={}, g={}",
                    alg.render(&lhs.sub(&rhs)),
                    alg.render(f),
                    alg.render(g)
                )))
            }
        })();
        match w {
            Ok(None) => {}
            Ok(Some(w)) => witness = Some(w),
            Err(e) => witness = Some(format!("{e}")),
        }
        if witness.is_some() {
            break;
        }
    }
    report.record("twisted-leibniz", witness);

    report
}

pub fn render_derivation(alg: &AlgebraSpec, x: &Derivation) -> String {
    crate::render::render_derivation(alg, x)
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({} components)", self.comps.len())
    }
}
