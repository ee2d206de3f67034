//! Multi-indexed tensors over the basis derivations: p-forms, twisted
//! tensor products, and the wedge product.
//!
//! A tensor is stored by its components on basis tuples and evaluated on
//! general derivations through the module rules
//! `T(f X_1, ...) = f T(X_1, ...)` and
//! `T(..., X_{i-1}, f X_i, ...) = rho(X_{i-1}, f) T(..., f X_{i-1}, X_i, ...)`,
//! which bubble coefficients into the first slot.

use itertools::Itertools;

use crate::algebra::{AlgebraSpec, Element};
use crate::derivation::{partial_degree, Derivation};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TensorKind {
    Form,
    Tensor,
}

/// A covariant tensor of the given arity with element components indexed by
/// basis tuples (row-major over `n^arity`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor {
    pub arity: usize,
    pub kind: TensorKind,
    comps: Vec<Element>,
    pub degree: Degree,
}

pub fn tuple_index(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * n + i)
}

pub fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    if arity == 0 {
        return vec![vec![]];
    }
    (0..arity)
        .map(|_| 0..n)
        .multi_cartesian_product()
        .collect()
}

impl Tensor {
    /// Validates the degree law: every nonzero component on a basis tuple
    /// has degree `|T| - sum x_i`.
    pub fn new(
        alg: &AlgebraSpec,
        arity: usize,
        kind: TensorKind,
        comps: Vec<Element>,
        degree: Degree,
    ) -> Result<Tensor> {
        let n = alg.rank();
        if comps.len() != n.pow(arity as u32) {
            return Err(Error::structure("component table size mismatch"));
        }
        let t = Tensor {
            arity,
            kind,
            comps,
            degree,
        };
        t.check_degree_law(alg)?;
        if kind == TensorKind::Form {
            t.check_form_antisymmetry(alg)?;
        }
        Ok(t)
    }

    pub fn zero(alg: &AlgebraSpec, arity: usize, kind: TensorKind, degree: Degree) -> Tensor {
        Tensor {
            arity,
            kind,
            comps: vec![Element::zero(); alg.rank().pow(arity as u32)],
            degree,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn component(&self, alg: &AlgebraSpec, tuple: &[usize]) -> &Element {
        &self.comps[tuple_index(alg.rank(), tuple)]
    }

    pub fn set_component(&mut self, alg: &AlgebraSpec, tuple: &[usize], value: Element) {
        let idx = tuple_index(alg.rank(), tuple);
        self.comps[idx] = value;
    }

    pub fn components(&self) -> &[Element] {
        &self.comps
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.arity != other.arity || self.degree != other.degree {
            return Err(Error::structure("tensor shape or degree mismatch in sum"));
        }
        Ok(Tensor {
            arity: self.arity,
            kind: if self.kind == other.kind {
                self.kind
            } else {
                TensorKind::Tensor
            },
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
            degree: self.degree.clone(),
        })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            arity: self.arity,
            kind: self.kind,
            comps: self.comps.iter().map(|c| c.neg()).collect(),
            degree: self.degree.clone(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Tensor {
        Tensor {
            arity: self.arity,
            kind: self.kind,
            comps: self.comps.iter().map(|c| c.scale(s)).collect(),
            degree: self.degree.clone(),
        }
    }

    fn check_degree_law(&self, alg: &AlgebraSpec) -> Result<()> {
        for tuple in tuples(alg.rank(), self.arity) {
            let comp = self.component(alg, &tuple);
            if comp.is_zero() {
                continue;
            }
            let comp_deg = alg
                .degree(comp)
                .ok_or_else(|| Error::domain("tensor component must be homogeneous"))?;
            // |T| = |T(d_i1, ..., d_ip)| - sum |d_ik| and |d_i| = -|x_i|
            let mut expected = self.degree.clone();
            for &i in &tuple {
                expected = alg.group.sub(&expected, &alg.generators[i].degree)?;
            }
            if comp_deg != expected {
                return Err(Error::domain(format!(
                    "component at {tuple:?} has degree {comp_deg}, expected {expected}"
                )));
            }
        }
        Ok(())
    }

    /// Adjacent-swap antisymmetry with the cocycle factor:
    /// `T(..., d_a, d_b, ...) = -rho(d_a, d_b) T(..., d_b, d_a, ...)`.
    pub fn form_antisymmetry_witness(&self, alg: &AlgebraSpec) -> Result<Option<String>> {
        let n = alg.rank();
        for tuple in tuples(n, self.arity) {
            for j in 0..self.arity.saturating_sub(1) {
                let mut swapped = tuple.clone();
                swapped.swap(j, j + 1);
                let rho = alg
                    .cocycle
                    .eval(&partial_degree(alg, tuple[j]), &partial_degree(alg, tuple[j + 1]))?;
                let lhs = self.component(alg, &tuple);
                let rhs = self.component(alg, &swapped).scale(&rho).neg();
                if *lhs != rhs {
                    return Ok(Some(format!(
                        "components at {tuple:?} and {swapped:?} violate twisted antisymmetry"
                    )));
                }
            }
        }
        Ok(None)
    }

    fn check_form_antisymmetry(&self, alg: &AlgebraSpec) -> Result<()> {
        if let Some(w) = self.form_antisymmetry_witness(alg)? {
            return Err(Error::domain(format!("not a form: {w}")));
        }
        Ok(())
    }

    /// The dual basis 1-form `dx^i` with `dx^i(d_j) = delta_ij` and degree
    /// `|x_i|`.
    pub fn dual_basis(alg: &AlgebraSpec, i: usize) -> Tensor {
        let mut comps = vec![Element::zero(); alg.rank()];
        comps[i] = alg.one();
        Tensor {
            arity: 1,
            kind: TensorKind::Form,
            comps,
            degree: alg.generators[i].degree.clone(),
        }
    }

    /// Evaluate on general derivations via the module rules. Arguments must
    /// be homogeneous; inner coefficients are bubbled into slot one.
    pub fn eval(&self, alg: &AlgebraSpec, args: &[Derivation]) -> Result<Element> {
        if args.len() != self.arity {
            return Err(Error::structure(format!(
                "arity mismatch: tensor of arity {} applied to {} arguments",
                self.arity,
                args.len()
            )));
        }
        if self.arity == 0 {
            return Ok(self.comps[0].clone());
        }
        let mut out = Element::zero();
        let piece_lists: Vec<Vec<(Element, usize)>> =
            args.iter().map(|x| x.monomial_pieces()).collect();
        for combo in piece_lists
            .iter()
            .map(|l| l.iter())
            .multi_cartesian_product()
        {
            let pieces: Vec<(Element, usize)> = combo.into_iter().cloned().collect();
            out = out.add(&self.eval_pieces(alg, pieces)?);
        }
        Ok(out)
    }

    /// Single-piece evaluation: every argument is `h @ d_k` with a monomial
    /// coefficient. The rightmost nontrivial coefficient moves one slot left
    /// per step, collecting `rho(|Y_{i-1}|, |h|)`.
    fn eval_pieces(&self, alg: &AlgebraSpec, mut pieces: Vec<(Element, usize)>) -> Result<Element> {
        let mut idx = None;
        for (i, (h, _)) in pieces.iter().enumerate().rev() {
            let trivial = h.as_scalar(alg).is_some_and(|s| s.is_one());
            if !trivial {
                idx = Some(i);
                break;
            }
        }
        match idx {
            None => {
                let tuple: Vec<usize> = pieces.iter().map(|(_, k)| *k).collect();
                Ok(self.component(alg, &tuple).clone())
            }
            Some(0) => {
                let (h, k) = pieces[0].clone();
                pieces[0] = (alg.one(), k);
                let rest = self.eval_pieces(alg, pieces)?;
                alg.mul(&h, &rest)
            }
            Some(i) => {
                let (h, k) = pieces[i].clone();
                if h.is_zero() {
                    return Ok(Element::zero());
                }
                let dh = alg.degree_checked(&h, "tensor argument coefficient")?;
                let (prev_h, prev_k) = pieces[i - 1].clone();
                if prev_h.is_zero() {
                    return Ok(Element::zero());
                }
                let prev_deg = {
                    let base = partial_degree(alg, prev_k);
                    let hc = alg.degree_checked(&prev_h, "tensor argument coefficient")?;
                    alg.group.add(&hc, &base)?
                };
                let rho = alg.cocycle.eval(&prev_deg, &dh)?;
                let merged = alg.mul(&h, &prev_h)?;
                pieces[i - 1] = (merged, prev_k);
                pieces[i] = (alg.one(), k);
                let rest = self.eval_pieces(alg, pieces)?;
                Ok(rest.scale(&rho))
            }
        }
    }
}

/// Twisted tensor product:
/// `(T (x) S)(X_1..X_{p+q}) = T(X_1..X_p) S(X_{p+1}..X_{p+q}) * rho(sum_{j>p} X_j, T)`.
pub fn tensor_product(alg: &AlgebraSpec, t: &Tensor, s: &Tensor) -> Result<Tensor> {
    let n = alg.rank();
    let arity = t.arity + s.arity;
    let degree = alg.group.add(&t.degree, &s.degree)?;
    let mut comps = vec![Element::zero(); n.pow(arity as u32)];
    for tuple in tuples(n, arity) {
        let (left, right) = tuple.split_at(t.arity);
        let mut tail_deg = alg.group.zero();
        for &i in right {
            tail_deg = alg.group.add(&tail_deg, &partial_degree(alg, i))?;
        }
        let rho = alg.cocycle.eval(&tail_deg, &t.degree)?;
        let value = alg
            .mul(t.component(alg, left), s.component(alg, right))?
            .scale(&rho);
        comps[tuple_index(n, &tuple)] = value;
    }
    Tensor::new(alg, arity, TensorKind::Tensor, comps, degree)
}

/// Wedge product of homogeneous forms: the shuffle sum with `sign(sigma)`,
/// the factor `rho(sum_{j>p} X_sigma(j), alpha)`, and one cocycle factor per
/// inversion pair of the shuffle.
pub fn wedge(alg: &AlgebraSpec, a: &Tensor, b: &Tensor) -> Result<Tensor> {
    if a.kind != TensorKind::Form || b.kind != TensorKind::Form {
        return Err(Error::domain("wedge product requires form inputs"));
    }
    let n = alg.rank();
    let p = a.arity;
    let q = b.arity;
    let arity = p + q;
    let degree = alg.group.add(&a.degree, &b.degree)?;
    let mut comps = vec![Element::zero(); n.pow(arity as u32)];
    // shuffles: ordered position sets for the first block
    let shuffles: Vec<Vec<usize>> = (0..arity).combinations(p).collect();
    for tuple in tuples(n, arity) {
        let mut acc = Element::zero();
        for first in &shuffles {
            let second: Vec<usize> = (0..arity).filter(|i| !first.contains(i)).collect();
            // sigma maps slot j to source position
            let sigma: Vec<usize> = first.iter().chain(second.iter()).copied().collect();
            let mut sign = 1i64;
            let mut inv_factor = Scalar::one();
            for l in 0..arity {
                for k in (l + 1)..arity {
                    if sigma[l] > sigma[k] {
                        sign = -sign;
                        let rho = alg.cocycle.eval(
                            &partial_degree(alg, tuple[sigma[k]]),
                            &partial_degree(alg, tuple[sigma[l]]),
                        )?;
                        inv_factor *= &rho;
                    }
                }
            }
            let mut tail_deg = alg.group.zero();
            for &pos in &sigma[p..] {
                tail_deg = alg.group.add(&tail_deg, &partial_degree(alg, tuple[pos]))?;
            }
            let rho_tail = alg.cocycle.eval(&tail_deg, &a.degree)?;
            let left_tuple: Vec<usize> = sigma[..p].iter().map(|&pos| tuple[pos]).collect();
            let right_tuple: Vec<usize> = sigma[p..].iter().map(|&pos| tuple[pos]).collect();
            let value = alg
                .mul(a.component(alg, &left_tuple), b.component(alg, &right_tuple))?
                .scale(&(&rho_tail * &inv_factor))
                .scale(&Scalar::from_int(sign));
            acc = acc.add(&value);
        }
        comps[tuple_index(n, &tuple)] = acc;
    }
    Tensor::new(alg, arity, TensorKind::Form, comps, degree)
}
