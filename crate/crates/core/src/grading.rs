//! Grading groups `Z^n` with optional per-coordinate moduli, their degree
//! vectors, and bi-multiplicative commutation two-cocycles
//! `rho(a, b) = base^(a^T B b)` with an antisymmetric integer matrix `B`.

use std::fmt;

use num::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::report::{Report, Status};
use crate::scalar::{Rat, Scalar};

/// A finitely generated abelian grading group: coordinate `i` is free when
/// `moduli[i] == 0` and cyclic of order `m` when `moduli[i] == m > 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradingGroup {
    moduli: Vec<u64>,
}

/// A degree vector, stored with canonical representatives in `[0, m)` on
/// torsion coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Degree {
    coords: Vec<i64>,
}

impl GradingGroup {
    pub fn free(rank: usize) -> GradingGroup {
        GradingGroup {
            moduli: vec![0; rank],
        }
    }

    pub fn with_moduli(moduli: Vec<u64>) -> GradingGroup {
        GradingGroup { moduli }
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn zero(&self) -> Degree {
        Degree {
            coords: vec![0; self.rank()],
        }
    }

    /// Build a degree from raw coordinates, canonicalizing torsion entries.
    pub fn degree(&self, coords: &[i64]) -> Result<Degree> {
        if coords.len() != self.rank() {
            return Err(Error::structure(format!(
                "degree has {} coordinates but the grading group has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(Degree {
            coords: coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &m)| canonical(c, m))
                .collect(),
        })
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Result<Degree> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(Degree {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| canonical(x + y, m))
                .collect(),
        })
    }

    pub fn neg(&self, a: &Degree) -> Result<Degree> {
        self.check_member(a)?;
        Ok(Degree {
            coords: a
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| canonical(-x, m))
                .collect(),
        })
    }

    pub fn sub(&self, a: &Degree, b: &Degree) -> Result<Degree> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn sum<'a>(&self, degrees: impl IntoIterator<Item = &'a Degree>) -> Result<Degree> {
        let mut acc = self.zero();
        for d in degrees {
            acc = self.add(&acc, d)?;
        }
        Ok(acc)
    }

    fn check_member(&self, d: &Degree) -> Result<()> {
        if d.coords.len() != self.rank() {
            return Err(Error::structure(format!(
                "degree rank {} does not match group rank {}",
                d.coords.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// Uniform random degree with canonical coordinates; free coordinates
    /// are drawn from `[-3, 3]`.
    pub fn sample(&self, rng: &mut impl Rng) -> Degree {
        Degree {
            coords: self
                .moduli
                .iter()
                .map(|&m| {
                    if m == 0 {
                        rng.random_range(-3..=3)
                    } else {
                        rng.random_range(0..m as i64)
                    }
                })
                .collect(),
        }
    }
}

fn canonical(c: i64, m: u64) -> i64 {
    if m == 0 {
        c
    } else {
        c.rem_euclid(m as i64)
    }
}

impl Degree {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Base of the cocycle values: the formal parameter `q` or a fixed nonzero
/// rational constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CocycleBase {
    Param,
    Const(Rat),
}

impl CocycleBase {
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        match self {
            CocycleBase::Param => Ok(Scalar::q_pow(e)),
            CocycleBase::Const(c) => Scalar::rat_pow(c, e),
        }
    }
}

/// A commutation two-cocycle `rho(a, b) = base^(a^T B b)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CocycleSpec {
    pub base: CocycleBase,
    /// `n x n` integer exponent form, row-major.
    pub form: Vec<Vec<i64>>,
}

impl CocycleSpec {
    pub fn new(base: CocycleBase, form: Vec<Vec<i64>>) -> Result<CocycleSpec> {
        let n = form.len();
        if form.iter().any(|row| row.len() != n) {
            return Err(Error::structure("cocycle exponent form must be square"));
        }
        Ok(CocycleSpec { base, form })
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    /// The bilinear exponent `a^T B b` on canonical representatives.
    pub fn exponent(&self, a: &Degree, b: &Degree) -> Result<i64> {
        if a.coords.len() != self.rank() || b.coords.len() != self.rank() {
            return Err(Error::structure(
                "degree rank does not match cocycle exponent form",
            ));
        }
        let mut e = 0i64;
        for (i, ai) in a.coords.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                e += ai * self.form[i][j] * bj;
            }
        }
        Ok(e)
    }

    /// Evaluate `rho(a, b)`; always an invertible scalar for a valid spec.
    pub fn eval(&self, a: &Degree, b: &Degree) -> Result<Scalar> {
        self.base.pow(self.exponent(a, b)?)
    }

    /// Run the cocycle well-formedness checks against a grading group.
    ///
    /// Failures are report entries, not errors: antisymmetry of `B`,
    /// biadditivity (sampled over degrees in `[-3,3]^n`), well-definedness
    /// under the group's moduli, invertibility of the base, and
    /// `rho(c, c)` lying in `{+1, -1}`.
    pub fn validate(&self, group: &GradingGroup, rng: &mut impl Rng) -> Report {
        let mut report = Report::new();
        if group.rank() != self.rank() {
            report.fail(
                "cocycle-rank",
                format!(
                    "exponent form is {}x{} but group rank is {}",
                    self.rank(),
                    self.rank(),
                    group.rank()
                ),
            );
            return report;
        }
        report.pass("cocycle-rank");

        let base_ok = match &self.base {
            CocycleBase::Param => true,
            CocycleBase::Const(c) => !c.is_zero(),
        };
        if base_ok {
            report.pass("base-invertible");
        } else {
            report.fail("base-invertible", "cocycle base is 0, which is not invertible");
        }

        let n = self.rank();
        let mut antisym_witness = None;
        for i in 0..n {
            for j in 0..n {
                if self.form[i][j] != -self.form[j][i] {
                    antisym_witness = Some(format!(
                        "B[{i}][{j}] = {} but -B[{j}][{i}] = {}",
                        self.form[i][j], -self.form[j][i]
                    ));
                }
            }
        }
        match antisym_witness {
            None => report.pass("antisymmetry"),
            Some(w) => report.fail("antisymmetry", w),
        }

        // Biadditivity holds structurally for a bilinear exponent; confirm by
        // sampling rho(a+b, c) = rho(a, c) * rho(b, c) on random degrees.
        let mut biadd_witness = None;
        if base_ok {
            for _ in 0..32 {
                let a = group.sample(rng);
                let b = group.sample(rng);
                let c = group.sample(rng);
                let ab = group.add(&a, &b).expect("same group");
                let lhs = self.eval(&ab, &c);
                let rhs = self
                    .eval(&a, &c)
                    .and_then(|s| Ok(&s * &self.eval(&b, &c)?));
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l == r => {}
                    _ => {
                        biadd_witness =
                            Some(format!("rho(a+b,c) != rho(a,c)rho(b,c) at a={a}, b={b}, c={c}"));
                        break;
                    }
                }
            }
        }
        match biadd_witness {
            None if base_ok => report.pass("biadditivity"),
            None => report.na("biadditivity"),
            Some(w) => report.fail("biadditivity", w),
        }

        // Well-definedness under moduli: for every torsion coordinate i and
        // every basis degree e_j, base^(m_i * B[i][j]) must equal 1.
        let mut moduli_witness = None;
        for (i, &m) in group.moduli().iter().enumerate() {
            if m == 0 {
                continue;
            }
            for j in 0..n {
                let e = m as i64 * self.form[i][j];
                let ok = match &self.base {
                    CocycleBase::Param => e == 0,
                    CocycleBase::Const(c) => {
                        !c.is_zero() && Scalar::rat_pow(c, e).is_ok_and(|s| s.is_one())
                    }
                };
                if !ok {
                    moduli_witness = Some(format!(
                        "base^({m} * B[{i}][{j}]) = base^{e} != 1 on torsion coordinate {i}"
                    ));
                }
            }
        }
        match moduli_witness {
            None => report.pass("moduli-well-defined"),
            Some(w) => report.fail("moduli-well-defined", w),
        }

        // rho(c, c) must be +1 or -1 for every degree.
        let mut diag_witness = None;
        if base_ok {
            for _ in 0..32 {
                let c = group.sample(rng);
                match self.eval(&c, &c) {
                    Ok(v) => {
                        let minus_one = Scalar::from_int(-1);
                        if !v.is_one() && v != minus_one {
                            diag_witness = Some(format!("rho(c,c) = {v} at c={c}"));
                            break;
                        }
                    }
                    Err(e) => {
                        diag_witness = Some(format!("rho(c,c) undefined at c={c}: {e}"));
                        break;
                    }
                }
            }
        }
        match diag_witness {
            None if base_ok => report.pass("rho-diagonal"),
            None => report.na("rho-diagonal"),
            Some(w) => report.fail("rho-diagonal", w),
        }

        report
    }

    /// Specialize the formal parameter to a rational constant.
    pub fn specialize(&self, x: &Rat) -> CocycleSpec {
        CocycleSpec {
            base: match &self.base {
                CocycleBase::Param => CocycleBase::Const(x.clone()),
                CocycleBase::Const(c) => CocycleBase::Const(c.clone()),
            },
            form: self.form.clone(),
        }
    }
}

/// Convenience report query used by preconditions.
pub fn all_pass(report: &Report) -> bool {
    report
        .entries()
        .iter()
        .all(|e| e.status != Status::Fail || !e.gating)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hyperplane() -> (GradingGroup, CocycleSpec) {
        let g = GradingGroup::free(2);
        let c = CocycleSpec::new(CocycleBase::Param, vec![vec![0, 1], vec![-1, 0]]).unwrap();
        (g, c)
    }

    fn quaternion() -> (GradingGroup, CocycleSpec) {
        let g = GradingGroup::with_moduli(vec![2, 2, 2]);
        let c = CocycleSpec::new(
            CocycleBase::Const(rat_int(-1)),
            vec![vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]],
        )
        .unwrap();
        (g, c)
    }

    fn rat_int(n: i64) -> Rat {
        crate::scalar::rat(n, 1)
    }

    #[test]
    fn degree_add_free_coordinates() {
        let g = GradingGroup::free(2);
        let a = g.degree(&[1, 0]).unwrap();
        let b = g.degree(&[0, 1]).unwrap();
        assert_eq!(g.add(&a, &b).unwrap(), g.degree(&[1, 1]).unwrap());
        let z = g.zero();
        assert_eq!(g.add(&z, &b).unwrap(), b);
    }

    #[test]
    fn degree_add_quaternion_torsion() {
        // degrees of i and j sum to the degree of k
        let g = GradingGroup::with_moduli(vec![2, 2, 2]);
        let i = g.degree(&[0, 1, 1]).unwrap();
        let j = g.degree(&[1, 0, 1]).unwrap();
        assert_eq!(g.add(&i, &j).unwrap(), g.degree(&[1, 1, 0]).unwrap());
    }

    #[test]
    fn degree_rank_mismatch() {
        let g = GradingGroup::free(2);
        assert!(g.degree(&[1]).is_err());
        let g3 = GradingGroup::free(3);
        let a = g.degree(&[1, 0]).unwrap();
        let b = g3.degree(&[1, 0, 0]).unwrap();
        assert!(g.add(&a, &b).is_err());
    }

    #[test]
    fn hyperplane_cocycle_value() {
        let (g, c) = hyperplane();
        let dx = g.degree(&[1, 0]).unwrap();
        let dy = g.degree(&[0, 1]).unwrap();
        assert_eq!(c.eval(&dx, &dy).unwrap(), Scalar::q());
        assert_eq!(c.eval(&dy, &dx).unwrap(), Scalar::q_pow(-1));
        assert!(c.eval(&g.zero(), &dy).unwrap().is_one());
    }

    #[test]
    fn quaternion_cocycle_value() {
        let (g, c) = quaternion();
        let i = g.degree(&[0, 1, 1]).unwrap();
        let j = g.degree(&[1, 0, 1]).unwrap();
        let k = g.degree(&[1, 1, 0]).unwrap();
        let minus_one = Scalar::from_int(-1);
        // distinct imaginary units anticommute, each commutes with itself
        assert_eq!(c.eval(&i, &j).unwrap(), minus_one);
        assert_eq!(c.eval(&j, &k).unwrap(), minus_one);
        assert_eq!(c.eval(&i, &k).unwrap(), minus_one);
        assert!(c.eval(&i, &i).unwrap().is_one());
        assert!(c.eval(&k, &k).unwrap().is_one());
    }

    /// The quaternion exponent form reproduces (-1)^<a,b> on the even-weight
    /// subgroup generated by the degrees of i, j, k.
    #[test]
    fn quaternion_cocycle_matches_scalar_product_on_subgroup() {
        let (g, c) = quaternion();
        let gens = [[0i64, 1, 1], [1, 0, 1], [1, 1, 0], [0, 0, 0]];
        let mut subgroup = vec![];
        for a in &gens {
            for b in &gens {
                let d = g
                    .add(&g.degree(a).unwrap(), &g.degree(b).unwrap())
                    .unwrap();
                if !subgroup.contains(&d) {
                    subgroup.push(d);
                }
            }
        }
        for a in &subgroup {
            for b in &subgroup {
                let dot: i64 = a
                    .coords()
                    .iter()
                    .zip(b.coords())
                    .map(|(x, y)| x * y)
                    .sum();
                let expected = if dot % 2 == 0 {
                    Scalar::one()
                } else {
                    Scalar::from_int(-1)
                };
                assert_eq!(c.eval(a, b).unwrap(), expected, "at a={a}, b={b}");
            }
        }
    }

    #[test]
    fn validate_hyperplane_passes() {
        let (g, c) = hyperplane();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let report = c.validate(&g, &mut rng);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn validate_quaternion_passes() {
        let (g, c) = quaternion();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let report = c.validate(&g, &mut rng);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn validate_rejects_symmetric_form() {
        let g = GradingGroup::free(2);
        let c = CocycleSpec::new(CocycleBase::Param, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let report = c.validate(&g, &mut rng);
        assert_eq!(report.status_of("antisymmetry"), Some(Status::Fail));
    }

    #[test]
    fn inverse_property_sampled() {
        let (g, c) = hyperplane();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..64 {
            let a = g.sample(&mut rng);
            let b = g.sample(&mut rng);
            let lhs = c.eval(&a, &b).unwrap();
            let rhs = c.eval(&b, &a).unwrap();
            assert!((&lhs * &rhs).is_one());
        }
    }
}
