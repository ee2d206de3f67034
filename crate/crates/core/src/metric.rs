//! Metrics on the derivation module: component tables `M[m][k] = g(d_m, d_k)`,
//! cocycle-twisted symmetry, invariance under the basis twist,
//! nondegeneracy via an explicit two-sided inverse table, and the musical
//! maps in both directions.

use crate::algebra::{AlgebraSpec, Element};
use crate::derivation::{apply_phi_a, partial_degree, Derivation, DerivationBasis};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::report::Report;
use crate::tensor::{Tensor, TensorKind};

#[derive(Clone, Debug)]
pub struct Metric {
    tensor: Tensor,
    comps: Vec<Vec<Element>>,
}

impl Metric {
    /// Build from the component table `comps[m][k] = g(d_m, d_k)`; the
    /// metric degree is derived from the degree law and must be consistent.
    pub fn new(alg: &AlgebraSpec, comps: Vec<Vec<Element>>) -> Result<Metric> {
        let n = alg.rank();
        if comps.len() != n || comps.iter().any(|r| r.len() != n) {
            return Err(Error::structure("metric component table must be n x n"));
        }
        let mut degree: Option<Degree> = None;
        for (m, row) in comps.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let d = alg
                    .degree(e)
                    .ok_or_else(|| Error::domain("metric components must be homogeneous"))?;
                let total = alg.group.add(
                    &d,
                    &alg.group
                        .add(&alg.generators[m].degree, &alg.generators[k].degree)?,
                )?;
                match &degree {
                    None => degree = Some(total),
                    Some(prev) if *prev == total => {}
                    Some(prev) => {
                        return Err(Error::domain(format!(
                            "metric degree law violated: component ({m},{k}) implies degree {total}, earlier components gave {prev}"
                        )))
                    }
                }
            }
        }
        let degree = degree.ok_or_else(|| Error::domain("metric must be nonzero"))?;
        let flat: Vec<Element> = comps.iter().flatten().cloned().collect();
        let tensor = Tensor::new(alg, 2, TensorKind::Tensor, flat, degree)?;
        Ok(Metric { tensor, comps })
    }

    pub fn degree(&self) -> &Degree {
        &self.tensor.degree
    }

    pub fn component(&self, m: usize, k: usize) -> &Element {
        &self.comps[m][k]
    }

    pub fn components(&self) -> &[Vec<Element>] {
        &self.comps
    }

    pub fn as_tensor(&self) -> &Tensor {
        &self.tensor
    }

    /// `g(X, Y)` on general derivations via the module rules.
    pub fn eval(&self, alg: &AlgebraSpec, x: &Derivation, y: &Derivation) -> Result<Element> {
        self.tensor.eval(alg, &[x.clone(), y.clone()])
    }

    /// rho-symmetry, invariance under the basis twist, and nondegeneracy.
    pub fn validate(&self, alg: &AlgebraSpec, basis: &DerivationBasis) -> Report {
        let mut report = Report::new();
        let n = alg.rank();

        let mut witness = None;
        'sym: for m in 0..n {
            for k in 0..n {
                let res = (|| -> Result<Option<String>> {
                    let rho = alg
                        .cocycle
                        .eval(&partial_degree(alg, m), &partial_degree(alg, k))?;
                    let expected = self.comps[k][m].scale(&rho);
                    if self.comps[m][k] == expected {
                        Ok(None)
                    } else {
                        Ok(Some(format!(
                            "M[{m}][{k}] = {} but rho*M[{k}][{m}] = {}",
                            alg.render(&self.comps[m][k]),
                            alg.render(&expected)
                        )))
                    }
                })();
                match res {
                    Ok(None) => {}
                    Ok(Some(w)) => {
                        witness = Some(w);
                        break 'sym;
                    }
                    Err(e) => {
                        witness = Some(format!("{e}"));
                        break 'sym;
                    }
                }
            }
        }
        report.record("rho-symmetry", witness);

        // invariance g(X, Y) = g(phi_A(X), phi_A(Y)) on basis pairs
        let mut witness = None;
        'inv: for m in 0..n {
            for k in 0..n {
                let res = (|| -> Result<Option<String>> {
                    let tx = apply_phi_a(alg, basis, &Derivation::basis(alg, m));
                    let ty = apply_phi_a(alg, basis, &Derivation::basis(alg, k));
                    let lhs = self.comps[m][k].clone();
                    let rhs = self.eval(alg, &tx, &ty)?;
                    if lhs == rhs {
                        Ok(None)
                    } else {
                        Ok(Some(format!(
                            "g(d_{m}, d_{k}) = {} but g(phiA d_{m}, phiA d_{k}) = {}",
                            alg.render(&lhs),
                            alg.render(&rhs)
                        )))
                    }
                })();
                match res {
                    Ok(None) => {}
                    Ok(Some(w)) => {
                        witness = Some(w);
                        break 'inv;
                    }
                    Err(e) => {
                        witness = Some(format!("{e}"));
                        break 'inv;
                    }
                }
            }
        }
        report.record("phiA-invariance", witness);

        match self.inverse(alg) {
            Ok(_) => report.pass("nondegenerate"),
            Err(e) => report.fail("nondegenerate", format!("{e}")),
        }

        report
    }

    /// Two-sided inverse component table, by row reduction with unit pivots
    /// (single-term elements). Errors describe the obstruction.
    pub fn inverse(&self, alg: &AlgebraSpec) -> Result<Vec<Vec<Element>>> {
        let inv = invert_element_matrix(alg, &self.comps)?;
        // row reduction built a left inverse; demand it two-sided
        let n = alg.rank();
        for m in 0..n {
            for k in 0..n {
                let mut acc = Element::zero();
                for s in 0..n {
                    acc = acc.add(&alg.mul(&self.comps[m][s], &inv[s][k])?);
                }
                let expected = if m == k { alg.one() } else { Element::zero() };
                if acc != expected {
                    return Err(Error::arith(
                        "left inverse of the metric is not a right inverse",
                    ));
                }
            }
        }
        Ok(inv)
    }

    /// The musical map: `gtilde(X)` is the 1-form `Y -> g(Y, X)`.
    pub fn gtilde(&self, alg: &AlgebraSpec, x: &Derivation) -> Result<Tensor> {
        let n = alg.rank();
        let xdeg = crate::derivation::derivation_degree_checked(alg, x, "gtilde argument")?;
        let degree = alg.group.add(self.degree(), &xdeg)?;
        let mut comps = vec![Element::zero(); n];
        for (m, slot) in comps.iter_mut().enumerate() {
            *slot = self.eval(alg, &Derivation::basis(alg, m), x)?;
        }
        Tensor::new(alg, 1, TensorKind::Form, comps, degree)
    }

    /// Inverse musical map: find the homogeneous derivation `X` with
    /// `g(d_m, X) = alpha(d_m)` for all `m`.
    ///
    /// Writing `X = sum_s d_s <| u_s` (right action), the component
    /// equations read `alpha_m = sum_s M[m][s] * u_s * rho(|u_s|, |g|)`
    /// with `|u_s| = |alpha| - |g| + x_s`, so the cocycle twist per column
    /// is a known scalar and the system solves through the inverse table.
    pub fn gtilde_inv(&self, alg: &AlgebraSpec, alpha: &Tensor) -> Result<Derivation> {
        if alpha.arity != 1 {
            return Err(Error::structure("gtilde_inv expects a 1-form"));
        }
        let inv = self.inverse(alg)?;
        solve_moment_system(alg, &inv, self.degree(), alpha)
    }
}

/// Row-reduce `[M | I]` with left row operations over the algebra; pivots
/// must be unit elements (single terms with invertible monomials).
pub fn invert_element_matrix(
    alg: &AlgebraSpec,
    mat: &[Vec<Element>],
) -> Result<Vec<Vec<Element>>> {
    let n = mat.len();
    let mut a: Vec<Vec<Element>> = mat.to_vec();
    let mut inv: Vec<Vec<Element>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { alg.one() } else { Element::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| alg.invert(&a[r][col]).is_ok());
        let Some(pr) = pivot_row else {
            let entries: Vec<String> = (col..n).map(|r| alg.render(&a[r][col])).collect();
            return Err(Error::arith(format!(
                "no invertible pivot in column {col}; remaining entries: [{}]",
                entries.join(", ")
            )));
        };
        a.swap(col, pr);
        inv.swap(col, pr);
        let pinv = alg.invert(&a[col][col])?;
        for j in 0..n {
            a[col][j] = alg.mul(&pinv, &a[col][j])?;
            inv[col][j] = alg.mul(&pinv, &inv[col][j])?;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let av = alg.mul(&f, &a[col][j])?;
                a[r][j] = a[r][j].sub(&av);
                let iv = alg.mul(&f, &inv[col][j])?;
                inv[r][j] = inv[r][j].sub(&iv);
            }
        }
    }
    Ok(inv)
}

/// Shared twisted solve for the musical maps of metrics and of twisted
/// 2-cochains: given the matrix `M[m][s]` of a pairing of degree `pairing_deg`,
/// its inverse, and a homogeneous 1-form `alpha`, return `X` with
/// `pairing(d_m, X) = alpha(d_m)`.
pub fn solve_moment_system(
    alg: &AlgebraSpec,
    inv: &[Vec<Element>],
    pairing_deg: &Degree,
    alpha: &Tensor,
) -> Result<Derivation> {
    let n = alg.rank();
    let xdeg = alg.group.sub(&alpha.degree, pairing_deg)?;
    let mut comps = vec![Element::zero(); n];
    for (s, slot) in comps.iter_mut().enumerate() {
        let mut ut = Element::zero();
        for m in 0..n {
            ut = ut.add(&alg.mul(&inv[s][m], alpha.component(alg, &[m]))?);
        }
        let udeg = alg.group.add(&xdeg, &alg.generators[s].degree)?;
        let twist = alg.cocycle.eval(&udeg, pairing_deg)?;
        let u = ut.scale(&twist.inv()?);
        // X = sum_s d_s <| u_s = sum_s rho(|d_s|, |u_s|) u_s |> d_s
        let rho = alg.cocycle.eval(&partial_degree(alg, s), &udeg)?;
        *slot = u.scale(&rho);
    }
    Ok(Derivation::new(comps))
}
