//! The twisted cochain complex over the derivation module: skew multilinear
//! cochains valued in the algebra, the coboundary operator, the interior
//! product, and the Lie derivative. The action is the tautological one,
//! `mu(X).f = X(f)`.
//!
//! The coboundary squares to zero on cochains satisfying the compatibility
//! condition `alpha o phiA = alpha`; the operator refuses inputs outside
//! that domain, and whether its own output stays inside is precisely what
//! the identity suites measure.

use crate::algebra::{AlgebraSpec, Element};
use crate::derivation::{
    apply_derivation, apply_phi_a, apply_phi_a_inverse, derivation_bracket,
    derivation_degree_checked, partial_degree, Derivation, DerivationBasis,
};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::scalar::Scalar;
use crate::tensor::{tuples, Tensor, TensorKind};

/// A skew multilinear cochain, stored componentwise like a form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    tensor: Tensor,
}

impl Cochain {
    pub fn new(alg: &AlgebraSpec, tensor: Tensor) -> Result<Cochain> {
        if let Some(w) = tensor.form_antisymmetry_witness(alg)? {
            return Err(Error::domain(format!("not a cochain: {w}")));
        }
        Ok(Cochain { tensor })
    }

    /// Arity-0 cochain: an element of the algebra.
    pub fn from_element(alg: &AlgebraSpec, f: &Element) -> Result<Cochain> {
        let degree = if f.is_zero() {
            alg.group.zero()
        } else {
            alg.degree_checked(f, "0-cochain")?
        };
        let tensor = Tensor::new(alg, 0, TensorKind::Form, vec![f.clone()], degree)?;
        Ok(Cochain { tensor })
    }

    pub fn from_components(
        alg: &AlgebraSpec,
        arity: usize,
        comps: Vec<Element>,
        degree: Degree,
    ) -> Result<Cochain> {
        Cochain::new(alg, Tensor::new(alg, arity, TensorKind::Form, comps, degree)?)
    }

    pub fn zero(alg: &AlgebraSpec, arity: usize, degree: Degree) -> Cochain {
        Cochain {
            tensor: Tensor::zero(alg, arity, TensorKind::Form, degree),
        }
    }

    pub fn arity(&self) -> usize {
        self.tensor.arity
    }

    pub fn degree(&self) -> &Degree {
        &self.tensor.degree
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn as_tensor(&self) -> &Tensor {
        &self.tensor
    }

    pub fn component(&self, alg: &AlgebraSpec, tuple: &[usize]) -> &Element {
        self.tensor.component(alg, tuple)
    }

    pub fn eval(&self, alg: &AlgebraSpec, args: &[Derivation]) -> Result<Element> {
        self.tensor.eval(alg, args)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        Ok(Cochain {
            tensor: self.tensor.add(&other.tensor)?,
        })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        Ok(Cochain {
            tensor: self.tensor.sub(&other.tensor)?,
        })
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        Cochain {
            tensor: self.tensor.scale(s),
        }
    }

    /// Witness against the compatibility condition `alpha o phiA = alpha`
    /// on basis tuples; `None` when the cochain satisfies it.
    pub fn hom_witness(
        &self,
        alg: &AlgebraSpec,
        basis: &DerivationBasis,
    ) -> Result<Option<String>> {
        let n = alg.rank();
        for tuple in tuples(n, self.arity()) {
            let args: Vec<Derivation> = tuple
                .iter()
                .map(|&i| apply_phi_a(alg, basis, &Derivation::basis(alg, i)))
                .collect();
            let lhs = self.eval(alg, &args)?;
            let rhs = self.component(alg, &tuple);
            if lhs != *rhs {
                return Ok(Some(format!(
                    "alpha(phiA d_{tuple:?}) = {} but alpha(d_{tuple:?}) = {}",
                    alg.render(&lhs),
                    alg.render(rhs)
                )));
            }
        }
        Ok(None)
    }

    pub fn require_hom(&self, alg: &AlgebraSpec, basis: &DerivationBasis) -> Result<()> {
        if let Some(w) = self.hom_witness(alg, basis)? {
            return Err(Error::domain(format!(
                "not a twist-compatible cochain (coboundary squared is not guaranteed): {w}"
            )));
        }
        Ok(())
    }
}

/// Iterated basis twist `phiA^k`.
fn phi_a_pow(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    x: &Derivation,
    k: u32,
) -> Derivation {
    let mut out = x.clone();
    for _ in 0..k {
        out = apply_phi_a(alg, basis, &out);
    }
    out
}

/// The coboundary operator.
///
/// On elements: `(d f)(X) = (phiA^-1 X)(f)`, requiring a regular twist.
/// On arity-k cochains:
/// `d alpha(X_1..X_{k+1})` is the sum over `j` of
/// `(-1)^(j-1) rho(sum_{i<j} X_i, X_j) (phiA^(k-1) X_j)(alpha(.. X_j omitted ..))`
/// plus the sum over `j < l` of
/// `(-1)^(j+l) rho(sum_{i<j} X_i, X_j) rho(sum_{i<j} X_i, X_l)
/// rho(sum_{j<i<l} X_i, X_l) alpha([X_j, X_l], phiA X_1, .., omissions ..)`.
pub fn d_mu(alg: &AlgebraSpec, basis: &DerivationBasis, alpha: &Cochain) -> Result<Cochain> {
    alpha.require_hom(alg, basis)?;
    let n = alg.rank();
    let k = alpha.arity();
    if k == 0 {
        let f = alpha.component(alg, &[]);
        let mut comps = vec![Element::zero(); n];
        for (m, slot) in comps.iter_mut().enumerate() {
            let arg = apply_phi_a_inverse(alg, basis, &Derivation::basis(alg, m))?;
            *slot = apply_derivation(alg, &arg, f)?;
        }
        return Cochain::from_components(alg, 1, comps, alpha.degree().clone());
    }

    let arity = k + 1;
    let mut comps = vec![Element::zero(); n.pow(arity as u32)];
    for tuple in tuples(n, arity) {
        let args: Vec<Derivation> = tuple.iter().map(|&i| Derivation::basis(alg, i)).collect();
        let degs: Vec<Degree> = tuple.iter().map(|&i| partial_degree(alg, i)).collect();
        let prefix = |upto: usize| -> Result<Degree> {
            alg.group.sum(degs.iter().take(upto))
        };
        let mut acc = Element::zero();
        for j in 0..arity {
            let rho = alg.cocycle.eval(&prefix(j)?, &degs[j])?;
            let rest: Vec<Derivation> = args
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .map(|(_, a)| a.clone())
                .collect();
            let inner = alpha.eval(alg, &rest)?;
            let lead = apply_derivation(alg, &phi_a_pow(alg, basis, &args[j], (k - 1) as u32), &inner)?;
            let signed = if j % 2 == 0 { lead } else { lead.neg() };
            acc = acc.add(&signed.scale(&rho));
        }
        for j in 0..arity {
            for l in (j + 1)..arity {
                let rho1 = alg.cocycle.eval(&prefix(j)?, &degs[j])?;
                let rho2 = alg.cocycle.eval(&prefix(j)?, &degs[l])?;
                let mid = alg.group.sum(degs[(j + 1)..l].iter())?;
                let rho3 = alg.cocycle.eval(&mid, &degs[l])?;
                let bracket = derivation_bracket(alg, &args[j], &args[l])?;
                let mut rest: Vec<Derivation> = vec![bracket];
                for (i, a) in args.iter().enumerate() {
                    if i != j && i != l {
                        rest.push(apply_phi_a(alg, basis, a));
                    }
                }
                let inner = alpha.eval(alg, &rest)?;
                // (-1)^(j+l) with 1-based indices
                let sign = if (j + l) % 2 == 0 { 1 } else { -1 };
                acc = acc.add(
                    &inner
                        .scale(&(&(&rho1 * &rho2) * &rho3))
                        .scale(&Scalar::from_int(sign)),
                );
            }
        }
        comps[crate::tensor::tuple_index(n, &tuple)] = acc;
    }
    Cochain::from_components(alg, arity, comps, alpha.degree().clone())
}

/// Interior product `i_X alpha(X_1..X_{k-1}) = rho(sum X_i, X) alpha(X, X_1..)`;
/// on elements it is zero.
pub fn interior(
    alg: &AlgebraSpec,
    x: &Derivation,
    alpha: &Cochain,
) -> Result<Cochain> {
    let dx = derivation_degree_checked(alg, x, "interior product direction")?;
    let out_degree = alg.group.add(alpha.degree(), &dx)?;
    let k = alpha.arity();
    if k == 0 {
        return Ok(Cochain::zero(alg, 0, out_degree));
    }
    let n = alg.rank();
    let mut comps = vec![Element::zero(); n.pow((k - 1) as u32)];
    for tuple in tuples(n, k - 1) {
        let mut arg_deg = alg.group.zero();
        for &i in &tuple {
            arg_deg = alg.group.add(&arg_deg, &partial_degree(alg, i))?;
        }
        let rho = alg.cocycle.eval(&arg_deg, &dx)?;
        let mut args: Vec<Derivation> = vec![x.clone()];
        args.extend(tuple.iter().map(|&i| Derivation::basis(alg, i)));
        comps[crate::tensor::tuple_index(n, &tuple)] = alpha.eval(alg, &args)?.scale(&rho);
    }
    Cochain::from_components(alg, k - 1, comps, out_degree)
}

/// Lie derivative
/// `L_X alpha(X_1..X_k) = rho(sum X_i, X) (phiA^(k-1) X)(alpha(X_1..X_k))
///   - sum_i rho(sum_{j>=i} X_j, X) alpha(phiA X_1, .., [X, X_i], .., phiA X_k)`.
pub fn lie_derivative(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    x: &Derivation,
    alpha: &Cochain,
) -> Result<Cochain> {
    let dx = derivation_degree_checked(alg, x, "Lie derivative direction")?;
    let out_degree = alg.group.add(alpha.degree(), &dx)?;
    let k = alpha.arity();
    if k == 0 {
        let arg = apply_phi_a_inverse(alg, basis, x)?;
        let f = apply_derivation(alg, &arg, alpha.component(alg, &[]))?;
        return Cochain::from_components(alg, 0, vec![f], out_degree);
    }
    let n = alg.rank();
    let mut comps = vec![Element::zero(); n.pow(k as u32)];
    for tuple in tuples(n, k) {
        let degs: Vec<Degree> = tuple.iter().map(|&i| partial_degree(alg, i)).collect();
        let total = alg.group.sum(degs.iter())?;
        let rho_lead = alg.cocycle.eval(&total, &dx)?;
        let lead = apply_derivation(
            alg,
            &phi_a_pow(alg, basis, x, (k - 1) as u32),
            alpha.component(alg, &tuple),
        )?
        .scale(&rho_lead);
        let mut acc = lead;
        for i in 0..k {
            let tail = alg.group.sum(degs[i..].iter())?;
            let rho = alg.cocycle.eval(&tail, &dx)?;
            let mut args: Vec<Derivation> = Vec::with_capacity(k);
            for (s, &gen) in tuple.iter().enumerate() {
                let base = Derivation::basis(alg, gen);
                if s == i {
                    args.push(derivation_bracket(alg, x, &base)?);
                } else {
                    args.push(apply_phi_a(alg, basis, &base));
                }
            }
            acc = acc.sub(&alpha.eval(alg, &args)?.scale(&rho));
        }
        comps[crate::tensor::tuple_index(n, &tuple)] = acc;
    }
    Cochain::from_components(alg, k, comps, out_degree)
}

/// Cartan residual `L_{phiA X} alpha - d(i_{phiA X} alpha) - i_{phiA X}(d alpha)`.
pub fn cartan_residual(
    alg: &AlgebraSpec,
    basis: &DerivationBasis,
    x: &Derivation,
    alpha: &Cochain,
) -> Result<Cochain> {
    let tx = apply_phi_a(alg, basis, x);
    let lhs = lie_derivative(alg, basis, &tx, alpha)?;
    let r1 = d_mu(alg, basis, &interior(alg, &tx, alpha)?)?;
    let r2 = interior(alg, &tx, &d_mu(alg, basis, alpha)?)?;
    lhs.sub(&r1)?.sub(&r2)
}
