//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every assertion is exact symbolic equality after canonicalization.
//!
//! Where a criterion encodes a source identity that the engine refutes with
//! an exact counterexample, the test asserts the criterion as stated and is
//! expected to fail; the printed output carries the concrete witnesses.

use std::path::PathBuf;
use std::time::Instant;

use rhocalc::algebra::{AlgebraSpec, Element};
use rhocalc::derivation::{
    act_left, apply_derivation, apply_phi_a, derivation_bracket, Derivation, DerivationBasis,
};
use rhocalc::model::Model;
use rhocalc::report::Status;
use rhocalc::scalar::{rat, Scalar};
use rhocalc::{christoffel, koszul_connection, Connection, GammaTable};

fn model_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../models")
        .join(name)
}

fn load(name: &str) -> Model {
    Model::from_file(&model_path(name)).expect("bundled model parses")
}

const CASES: [(&str, i64, i64); 4] = [
    ("quantum_plane_pm.rg", 1, -1),
    ("quantum_plane_mm.rg", -1, -1),
    ("quantum_plane.rg", 1, 1),
    ("quantum_plane_mp.rg", -1, 1),
];

fn verdict(criterion: &str, ok: bool, detail: &str) -> bool {
    println!(
        "acceptance {criterion}: {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

/// Criterion 1: the Levi-Civita coefficient tables of all four twist cases
/// match the worked tables exactly (two nonzero entries each).
#[test]
fn criterion_01_christoffel_tables() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for (file, sx, sy) in CASES {
        let model = load(file);
        let alg = &model.algebra;
        let gamma = christoffel(alg, model.require_basis().unwrap(), model.require_metric().unwrap())
            .unwrap();
        let xinv = alg.monomial(&[-1, 0]).unwrap();
        let yinv = alg.monomial(&[0, -1]).unwrap();
        let expected_111 = if sx == 1 { xinv.neg() } else { xinv };
        let expected_222 = if sy == -1 { yinv.clone() } else { yinv.neg() };
        let case_ok = gamma.nonzero_entries().len() == 2
            && gamma.get(0, 0, 0) == &expected_111
            && gamma.get(1, 1, 1) == &expected_222;
        if !case_ok {
            detail.push_str(&format!("[case ({sx},{sy}) mismatch] "));
            ok = false;
        }
    }
    detail.push_str(&format!("({:.2?})", start.elapsed()));
    let ok = verdict("criterion 1 (christoffel tables)", ok, &detail);
    assert!(ok);
    assert!(start.elapsed().as_secs_f64() < 4.0, "time budget: 1 s per case");
}

/// Criterion 2: the metric inverse equals (1-q^2)^-1 [[x^2, -q x y], [-x y, y^2]]
/// exactly, and the q in {0, 1, -1} specializations report the singularity.
#[test]
fn criterion_02_metric_inverse() {
    let start = Instant::now();
    let model = load("quantum_plane.rg");
    let alg = &model.algebra;
    let g = model.require_metric().unwrap();
    let inv = g.inverse(alg).unwrap();
    let c = (&Scalar::from_int(1) - &Scalar::q_pow(2)).inv().unwrap();
    let mut ok = inv[0][0] == alg.monomial(&[2, 0]).unwrap().scale(&c)
        && inv[0][1]
            == alg
                .monomial(&[1, 1])
                .unwrap()
                .scale(&(&c * &Scalar::q()))
                .neg()
        && inv[1][0] == alg.monomial(&[1, 1]).unwrap().scale(&c).neg()
        && inv[1][1] == alg.monomial(&[0, 2]).unwrap().scale(&c);
    let mut detail = String::new();
    for v in [1i64, -1] {
        let spec = model.specialize(&rat(v, 1)).unwrap();
        let report = spec.validate(7);
        if report.status_of("metric.nondegenerate") != Some(Status::Fail) {
            ok = false;
            detail.push_str(&format!("[q={v} not reported singular] "));
        }
    }
    // q = 0: either the substitution itself hits a pole (the symplectic
    // component 1/q) or the validation reports the zero cocycle base
    match model.specialize(&rat(0, 1)) {
        Err(_) => {}
        Ok(spec0) => {
            let report0 = spec0.validate(7);
            if report0.status_of("cocycle.base-invertible") != Some(Status::Fail) {
                ok = false;
                detail.push_str("[q=0 not reported invalid] ");
            }
        }
    }
    detail.push_str(&format!("({:.2?})", start.elapsed()));
    let ok = verdict("criterion 2 (metric inverse)", ok, &detail);
    assert!(ok);
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

/// Criterion 3: for each twist case, the computed connection is torsion-free
/// and metric-compatible with identically zero residuals on basis tuples.
///
/// The engine refutes compatibility for the mixed-sign cases with exact
/// residuals (the construction relies on a twist-invariance those cases do
/// not have), so this criterion fails for 2 of 4 cases, with witnesses.
#[test]
fn criterion_03_connection_consistency() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for (file, sx, sy) in CASES {
        let model = load(file);
        let alg = &model.algebra;
        let basis = model.require_basis().unwrap();
        let g = model.require_metric().unwrap();
        let (_, conn) = model.levi_civita().unwrap();
        let report = rhocalc::check_connection(alg, basis, &conn, g, 99);
        for check in ["torsion-free", "metric-compatibility"] {
            if report.status_of(check) != Some(Status::Pass) {
                ok = false;
                detail.push_str(&format!(
                    "[case ({sx},{sy}) {check}: {}] ",
                    report.witness_of(check).unwrap_or("failed")
                ));
            }
        }
    }
    detail.push_str(&format!("({:.2?})", start.elapsed()));
    let ok = verdict("criterion 3 (connection consistency)", ok, &detail);
    assert!(start.elapsed().as_secs_f64() < 20.0, "time budget: 5 s per case");
    assert!(ok, "compatibility fails for mixed-sign twists; see ledger");
}

/// Independent direct-expansion oracle for the curvature on basis tuples:
/// everything is recomputed from the coefficient table with local code
/// (no Connection/nabla/curvature machinery).
mod curvature_oracle {
    use super::*;
    use rhocalc::grading::Degree;

    fn rho(alg: &AlgebraSpec, a: &Degree, b: &Degree) -> Scalar {
        alg.cocycle.eval(a, b).unwrap()
    }

    fn partial_deg(alg: &AlgebraSpec, i: usize) -> Degree {
        alg.group.neg(&alg.generators[i].degree).unwrap()
    }

    /// nabla_{d_i} d_j = sum_s phiA(d_s) <| G[s][i][j], expanded by hand.
    fn basis_image(
        alg: &AlgebraSpec,
        basis: &DerivationBasis,
        gamma: &GammaTable,
        i: usize,
        j: usize,
    ) -> Vec<Element> {
        let n = alg.rank();
        let mut comps = vec![Element::zero(); n];
        for s in 0..n {
            let coeff = gamma.get(s, i, j);
            if coeff.is_zero() {
                continue;
            }
            let cdeg = alg.degree(coeff).unwrap();
            let twist = rho(alg, &partial_deg(alg, s), &cdeg);
            for (r, comp) in comps.iter_mut().enumerate() {
                let entry = &basis.phi_a[r][s];
                if entry.is_zero() {
                    continue;
                }
                *comp = comp.add(&coeff.scale(&(&twist * entry)));
            }
        }
        comps
    }

    /// nabla_{d_i} (sum_j b_j d_j) by the two connection axioms.
    fn nabla_partial(
        alg: &AlgebraSpec,
        basis: &DerivationBasis,
        gamma: &GammaTable,
        i: usize,
        y: &[Element],
    ) -> Vec<Element> {
        let n = alg.rank();
        let di = Derivation::basis(alg, i);
        let mut out = vec![Element::zero(); n];
        for (j, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for piece in b.monomial_pieces() {
                let bdeg = alg.degree(&piece).unwrap();
                // (d_i . b) d_j
                let db = apply_derivation(alg, &di, &piece).unwrap();
                out[j] = out[j].add(&db);
                // rho(d_i, b) phi(b) nabla_{d_i} d_j
                let factor = rho(alg, &partial_deg(alg, i), &bdeg);
                let pb = alg.apply_phi(&piece);
                for (r, img) in basis_image(alg, basis, gamma, i, j).into_iter().enumerate() {
                    let v = alg.mul(&pb, &img).unwrap().scale(&factor);
                    out[r] = out[r].add(&v);
                }
            }
        }
        out
    }

    /// Apply phiA componentwise.
    fn twist(alg: &AlgebraSpec, basis: &DerivationBasis, x: &[Element]) -> Vec<Element> {
        let n = alg.rank();
        let mut out = vec![Element::zero(); n];
        for (c, comp) in x.iter().enumerate() {
            if comp.is_zero() {
                continue;
            }
            let tc = alg.apply_phi(comp);
            for (r, slot) in out.iter_mut().enumerate() {
                let entry = &basis.phi_a[r][c];
                if !entry.is_zero() {
                    *slot = slot.add(&tc.scale(entry));
                }
            }
        }
        out
    }

    /// R(d_i, d_j) d_k via the defining formula; the basis bracket vanishes
    /// so the last term drops.
    pub fn curvature_on_basis(
        alg: &AlgebraSpec,
        basis: &DerivationBasis,
        gamma: &GammaTable,
        i: usize,
        j: usize,
        k: usize,
    ) -> Vec<Element> {
        let n = alg.rank();
        let mut unit_k = vec![Element::zero(); n];
        unit_k[k] = alg.one();
        let nyz = nabla_partial(alg, basis, gamma, j, &unit_k);
        let nxz = nabla_partial(alg, basis, gamma, i, &unit_k);
        // nabla_{phiA d_i} W = sum_r phiA[r][i] nabla_{d_r} W
        let twisted_nabla = |src: usize, w: &[Element]| -> Vec<Element> {
            let mut out = vec![Element::zero(); n];
            for r in 0..n {
                let entry = &basis.phi_a[r][src];
                if entry.is_zero() {
                    continue;
                }
                for (s, v) in nabla_partial(alg, basis, gamma, r, w).into_iter().enumerate() {
                    out[s] = out[s].add(&v.scale(entry));
                }
            }
            out
        };
        let t1 = twisted_nabla(i, &nyz);
        let rho_ij = rho(alg, &partial_deg(alg, i), &partial_deg(alg, j));
        let t2 = twisted_nabla(j, &nxz);
        let _ = twist(alg, basis, &unit_k); // bracket term is zero on the basis
        t1.iter()
            .zip(&t2)
            .map(|(a, b)| a.sub(&b.scale(&rho_ij)))
            .collect()
    }
}

/// Criterion 4: flatness (all curvature components vanish, checked against
/// the independent oracle) and the first cyclic identity on all basis
/// triples, in every twist case.
#[test]
fn criterion_04_curvature_flatness_and_bianchi() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for (file, sx, sy) in CASES {
        let model = load(file);
        let alg = &model.algebra;
        let basis = model.require_basis().unwrap();
        let (gamma, conn) = model.levi_civita().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let r = rhocalc::curvature(
                        alg,
                        basis,
                        &conn,
                        &Derivation::basis(alg, i),
                        &Derivation::basis(alg, j),
                        &Derivation::basis(alg, k),
                    )
                    .unwrap();
                    let oracle =
                        curvature_oracle::curvature_on_basis(alg, basis, &gamma, i, j, k);
                    if !r.is_zero() || oracle.iter().any(|c| !c.is_zero()) {
                        ok = false;
                        detail.push_str(&format!("[case ({sx},{sy}) R({i},{j}){k} != 0] "));
                    }
                    if r.comps != oracle {
                        ok = false;
                        detail.push_str(&format!("[case ({sx},{sy}) oracle disagrees] "));
                    }
                    let b1 = rhocalc::connection::bianchi1_residual(
                        alg,
                        basis,
                        &conn,
                        &Derivation::basis(alg, i),
                        &Derivation::basis(alg, j),
                        &Derivation::basis(alg, k),
                    )
                    .unwrap();
                    if !b1.is_zero() {
                        ok = false;
                        detail.push_str(&format!("[case ({sx},{sy}) bianchi1 ({i},{j},{k})] "));
                    }
                }
            }
        }
    }
    detail.push_str(&format!("({:.2?})", start.elapsed()));
    let ok = verdict("criterion 4 (curvature flatness + first Bianchi)", ok, &detail);
    assert!(ok);
    assert!(start.elapsed().as_secs_f64() < 20.0, "time budget: 5 s per case");
}

/// Criterion 5: twisted antisymmetry and Jacobi on 100 seeded random
/// monomial-coefficient derivation triples, for each of the four twist
/// cases, with zero failures.
///
/// The engine refutes the Jacobi identity for the mixed-sign twists
/// (counterexample X = x y d_x, Y = d_y, Z = d_x, residual -2 d_x), so this
/// criterion fails for 2 of 4 cases.
#[test]
fn criterion_05_hom_lie_axioms() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for (file, sx, sy) in CASES {
        let model = load(file);
        let basis = model.require_basis().unwrap();
        let report = rhocalc::suites::hom_lie_suite(&model.algebra, basis, 100, 5);
        for check in ["rho-antisymmetry", "rho-jacobi"] {
            if report.status_of(check) != Some(Status::Pass) {
                ok = false;
                detail.push_str(&format!(
                    "[case ({sx},{sy}) {check}: {}] ",
                    report.witness_of(check).unwrap_or("failed")
                ));
            }
        }
    }
    detail.push_str(&format!("({:.2?})", start.elapsed()));
    let ok = verdict("criterion 5 (twisted Lie axioms)", ok, &detail);
    assert!(start.elapsed().as_secs_f64() < 30.0);
    assert!(ok, "twisted Jacobi fails for mixed-sign twists; see ledger");
}

/// Criterion 6: the coboundary squares to zero on 100 seeded random
/// compatible cochains of arity <= 2, and the Cartan identity holds on 100
/// sampled pairs, for each twist case, with zero failures.
///
/// The engine shows the coboundary leaves the compatible subspace for every
/// non-identity diagonal twist, so this criterion fails for 3 of 4 cases.
#[test]
fn criterion_06_cochain_complex() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    for (file, sx, sy) in CASES {
        let model = load(file);
        let basis = model.require_basis().unwrap();
        let d2 = rhocalc::suites::d_squared_suite(&model.algebra, basis, 2, 100, 11);
        if !d2.all_passed() {
            ok = false;
            let first = d2
                .sorted_entries()
                .into_iter()
                .find(|e| e.status == Status::Fail)
                .and_then(|e| e.witness.clone())
                .unwrap_or_default();
            detail.push_str(&format!("[case ({sx},{sy}) d2: {first}] "));
        }
        let cartan = rhocalc::suites::cartan_suite(&model.algebra, basis, 100, 13);
        if !cartan.all_passed() {
            ok = false;
            detail.push_str(&format!(
                "[case ({sx},{sy}) cartan: {}] ",
                cartan.witness_of("cartan-identity").unwrap_or("failed")
            ));
        }
    }
    detail.push_str(&format!("({:.2?})", start.elapsed()));
    let ok = verdict("criterion 6 (cochain complex)", ok, &detail);
    assert!(start.elapsed().as_secs_f64() < 60.0);
    assert!(
        ok,
        "the coboundary preserves compatibility only for the identity twist; see ledger"
    );
}

/// Closed-form oracle for the Hamiltonian derivation on the plane model:
/// `X_f = q^(1 - f1) (d_y f) d_x - q^(f2) (d_x f) d_y` for `|f| = (f1, f2)`.
fn hamiltonian_closed_form(alg: &AlgebraSpec, f: &Element) -> Derivation {
    let deg = alg.degree(f).unwrap();
    let (f1, f2) = (deg.coords()[0], deg.coords()[1]);
    let dyf = apply_derivation(alg, &Derivation::basis(alg, 1), f).unwrap();
    let dxf = apply_derivation(alg, &Derivation::basis(alg, 0), f).unwrap();
    let cx = dyf.scale(&Scalar::q_pow(1 - f1));
    let cy = dxf.scale(&Scalar::q_pow(f2)).neg();
    act_left(alg, &cx, &Derivation::basis(alg, 0))
        .unwrap()
        .add(&act_left(alg, &cy, &Derivation::basis(alg, 1)).unwrap())
}

/// Criterion 7: the coordinate bracket, the Hamiltonian derivations of the
/// coordinates, the closed-form match on all monomials x^a y^b with
/// a, b in [-2, 2], agreement of the two defining expressions, and the
/// bracket correspondence as printed.
///
/// Everything holds except the printed correspondence, whose sign the
/// engine refutes (the corrected sign holds on the full sample).
#[test]
fn criterion_07_poisson_reproduction() {
    let start = Instant::now();
    let model = load("quantum_plane.rg");
    let alg = &model.algebra;
    let basis = model.require_basis().unwrap();
    let sympl = model.require_symplectic().unwrap();
    let mut ok = true;
    let mut detail = String::new();

    let bracket = rhocalc::poisson(alg, basis, sympl, &alg.generator(0), &alg.generator(1)).unwrap();
    if bracket != alg.scalar(Scalar::q()) {
        ok = false;
        detail.push_str("[{x,y} != q] ");
    }
    let xx = sympl.hamiltonian_vf(alg, basis, &alg.generator(0)).unwrap();
    let xy = sympl.hamiltonian_vf(alg, basis, &alg.generator(1)).unwrap();
    if xx != Derivation::basis(alg, 1).neg() {
        ok = false;
        detail.push_str("[X_x != -d/dy] ");
    }
    if xy != Derivation::basis(alg, 0).scale(&Scalar::q()) {
        ok = false;
        detail.push_str("[X_y != q d/dx] ");
    }

    // closed-form oracle on all monomials with exponents in [-2, 2]; the
    // two defining expressions agree because the bracket enforces it
    let mut corollary_ok = true;
    let mut corollary_witness = String::new();
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            let f = alg.monomial(&[a, b]).unwrap();
            let solved = sympl.hamiltonian_vf(alg, basis, &f).unwrap();
            let oracle = hamiltonian_closed_form(alg, &f);
            if solved != oracle {
                ok = false;
                detail.push_str(&format!("[X_f mismatch at x^{a} y^{b}] "));
            }
            for c in -1..=1i64 {
                let g = alg.monomial(&[c, -b.signum()]).unwrap();
                if rhocalc::poisson(alg, basis, sympl, &f, &g).is_err() {
                    ok = false;
                    detail.push_str(&format!("[route disagreement at x^{a} y^{b}] "));
                }
                // corollary as printed: [X_f, X_g] = rho(g, Omega) X_{f,g}
                if corollary_ok {
                    let xf = sympl.hamiltonian_vf(alg, basis, &f).unwrap();
                    let xg = sympl.hamiltonian_vf(alg, basis, &g).unwrap();
                    let lhs = derivation_bracket(alg, &xf, &xg).unwrap();
                    let fg = rhocalc::poisson(alg, basis, sympl, &f, &g).unwrap();
                    let dg = alg.degree(&g).unwrap();
                    let rho = alg.cocycle.eval(&dg, sympl.degree()).unwrap();
                    let rhs = sympl.hamiltonian_vf(alg, basis, &fg).unwrap().scale(&rho);
                    if lhs != rhs {
                        corollary_ok = false;
                        corollary_witness = format!(
                            "[corollary as printed fails at f=x^{a}y^{b}, g={}; corrected sign holds: {}] ",
                            alg.render(&g),
                            lhs == rhs.neg()
                        );
                    }
                }
            }
        }
    }
    if !corollary_ok {
        ok = false;
        detail.push_str(&corollary_witness);
    }
    detail.push_str(&format!("({:.2?})", start.elapsed()));
    let ok = verdict("criterion 7 (poisson reproduction)", ok, &detail);
    assert!(start.elapsed().as_secs_f64() < 30.0);
    assert!(ok, "the printed bracket correspondence has a sign defect; see ledger");
}

/// Criterion 8: twisted antisymmetry, twisted Jacobi, and the product rule
/// on sampled monomial triples for the induced plane bracket AND on the
/// explicit quaternion table; the corrupted quaternion table fails with a
/// witness.
///
/// The plane bracket satisfies all three; the quaternion cross-product
/// table satisfies the classical identities but not the twisted ones (the
/// cocycle of distinct imaginary units is -1), which the engine reports
/// with witnesses — so the criterion fails on the quaternion clause.
#[test]
fn criterion_08_poisson_axioms() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();

    let plane = load("quantum_plane.rg");
    let structure = plane.poisson_structure().unwrap();
    let report = rhocalc::suites::poisson_suite(
        &plane.algebra,
        plane.basis.as_ref(),
        &structure,
        100,
        21,
    );
    for check in ["rho-antisymmetry", "rho-jacobi", "leibniz"] {
        if report.status_of(check) != Some(Status::Pass) {
            ok = false;
            detail.push_str(&format!(
                "[plane {check}: {}] ",
                report.witness_of(check).unwrap_or("failed")
            ));
        }
    }

    let quat = load("quaternion.rg");
    let qstructure = quat.poisson_structure().unwrap();
    let qreport =
        rhocalc::suites::poisson_suite(&quat.algebra, None, &qstructure, 100, 23);
    for check in ["rho-antisymmetry", "rho-jacobi", "leibniz"] {
        if qreport.status_of(check) != Some(Status::Pass) {
            ok = false;
            detail.push_str(&format!(
                "[quaternion {check}: {}] ",
                qreport.witness_of(check).unwrap_or("failed")
            ));
        }
    }

    // the corrupted table must fail with a witness
    let alg = &quat.algebra;
    let gen = |i: usize, s: i64| {
        Element::from_term(rhocalc::Mono::Gen(i), Scalar::from_int(s))
    };
    let corrupted = vec![
        vec![Element::zero(), gen(0, 1), gen(1, -1)],
        vec![gen(2, -1), Element::zero(), gen(0, 1)],
        vec![gen(1, 1), gen(0, -1), Element::zero()],
    ];
    let corrupted = rhocalc::PoissonStructure::from_table(alg, corrupted).unwrap();
    let creport = rhocalc::suites::poisson_suite(alg, None, &corrupted, 100, 23);
    if creport.status_of("rho-jacobi") != Some(Status::Fail)
        || creport.witness_of("rho-jacobi").is_none()
    {
        ok = false;
        detail.push_str("[corrupted table not caught] ");
    }

    detail.push_str(&format!("({:.2?})", start.elapsed()));
    let ok = verdict("criterion 8 (poisson axioms)", ok, &detail);
    assert!(start.elapsed().as_secs_f64() < 30.0);
    assert!(
        ok,
        "the quaternion table fails the twisted axioms it is claimed to satisfy; see ledger"
    );
}

/// Criterion 9: the quaternion model passes commutation on all 16 basis
/// pairs; twisted associativity passes iff the three twist multipliers
/// agree; the plane passes iff the positive and negative multipliers agree.
/// Exhaustive scans, both directions.
#[test]
fn criterion_09_structure_checks() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();

    let quat = load("quaternion.rg");
    let report = quat.algebra.check_structure();
    if report.status_of("rho-commutativity") != Some(Status::Pass) {
        ok = false;
        detail.push_str("[quaternion commutation] ");
    }
    if report.status_of("hom-associativity") != Some(Status::Pass) {
        ok = false;
        detail.push_str("[quaternion twisted associativity at equal multipliers] ");
    }

    // programmatic variants pin the iff in both directions
    let equal = make_quaternion_twist(&quat.algebra, 2, 2, 2);
    if equal.check_structure().status_of("hom-associativity") != Some(Status::Pass) {
        ok = false;
        detail.push_str("[a=b=c=2 should pass] ");
    }
    let unequal = make_quaternion_twist(&quat.algebra, 1, 2, 1);
    let r = unequal.check_structure();
    if r.status_of("hom-associativity") != Some(Status::Fail)
        || r.witness_of("hom-associativity").is_none()
    {
        ok = false;
        detail.push_str("[a=1,b=2,c=1 should fail with witness] ");
    }

    let plane_equal = make_plane_twist(2, 2);
    if plane_equal.check_structure().status_of("hom-associativity") != Some(Status::Pass) {
        ok = false;
        detail.push_str("[plane pos=neg=2 should pass] ");
    }
    let plane_unequal = make_plane_twist(1, 2);
    if plane_unequal.check_structure().status_of("hom-associativity") != Some(Status::Fail) {
        ok = false;
        detail.push_str("[plane pos=1, neg=2 should fail] ");
    }

    detail.push_str(&format!("({:.2?})", start.elapsed()));
    let ok = verdict("criterion 9 (structure checks)", ok, &detail);
    assert!(ok);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

fn make_quaternion_twist(base: &AlgebraSpec, a: i64, b: i64, c: i64) -> AlgebraSpec {
    let mut alg = base.clone();
    if let rhocalc::Backend::Table { phi, .. } = &mut alg.backend {
        for (i, s) in [a, b, c].into_iter().enumerate() {
            phi[i] = Element::from_term(rhocalc::Mono::Gen(i), Scalar::from_int(s));
        }
    }
    alg
}

fn make_plane_twist(pos: i64, neg: i64) -> AlgebraSpec {
    let model = load("quantum_plane.rg");
    let mut alg = model.algebra;
    if let rhocalc::Backend::Torus { phi } = &mut alg.backend {
        for p in phi.iter_mut() {
            p.pos = Scalar::from_int(pos);
            p.neg = Scalar::from_int(neg);
        }
    }
    alg
}

/// Criterion 10: each verification suite fails with a concrete witness
/// under a deliberate corruption — a sign flip in the coefficient table, a
/// broken cocycle exponent form, and a corrupted bracket table.
#[test]
fn criterion_10_negative_controls() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = String::new();

    // sign flip in the coefficient table breaks compatibility with witness
    let model = load("quantum_plane.rg");
    let alg = &model.algebra;
    let basis = model.require_basis().unwrap();
    let g = model.require_metric().unwrap();
    let mut gamma = christoffel(alg, basis, g).unwrap();
    gamma.gamma[0][0][0] = gamma.gamma[0][0][0].neg();
    let conn = Connection::from_gamma(alg, basis, gamma).unwrap();
    let report = rhocalc::check_connection(alg, basis, &conn, g, 3);
    if report.status_of("metric-compatibility") != Some(Status::Fail)
        || report.witness_of("metric-compatibility").is_none()
    {
        ok = false;
        detail.push_str("[gamma sign flip not caught] ");
    }

    // broken cocycle exponent form fails antisymmetry with witness
    let broken = rhocalc::CocycleSpec::new(
        rhocalc::CocycleBase::Param,
        vec![vec![0, 1], vec![1, 0]],
    )
    .unwrap();
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let creport = broken.validate(&alg.group, &mut rng);
    if creport.status_of("antisymmetry") != Some(Status::Fail)
        || creport.witness_of("antisymmetry").is_none()
    {
        ok = false;
        detail.push_str("[broken cocycle not caught] ");
    }

    // corrupted bracket table fails with witness (also exercised in 8)
    let quat = load("quaternion.rg");
    let qalg = &quat.algebra;
    let gen = |i: usize, s: i64| {
        Element::from_term(rhocalc::Mono::Gen(i), Scalar::from_int(s))
    };
    let corrupted = vec![
        vec![Element::zero(), gen(0, 1), gen(1, -1)],
        vec![gen(2, -1), Element::zero(), gen(0, 1)],
        vec![gen(1, 1), gen(0, -1), Element::zero()],
    ];
    let corrupted = rhocalc::PoissonStructure::from_table(qalg, corrupted).unwrap();
    let qreport = rhocalc::suites::poisson_suite(qalg, None, &corrupted, 10, 3);
    if qreport.status_of("rho-jacobi") != Some(Status::Fail) {
        ok = false;
        detail.push_str("[corrupted bracket not caught] ");
    }

    // corrupted derivation bracket fails the Lie suite with witness
    let id = DerivationBasis::identity(2);
    let x = act_left(alg, &alg.generator(0), &Derivation::basis(alg, 0)).unwrap();
    let samples = vec![x, Derivation::basis(alg, 0), Derivation::basis(alg, 1)];
    let flipped = |a: &Derivation, b: &Derivation| -> rhocalc::Result<Derivation> {
        let da = rhocalc::derivation::derivation_degree_checked(alg, a, "sample")?;
        let db = rhocalc::derivation::derivation_degree_checked(alg, b, "sample")?;
        let rho = alg.cocycle.eval(&da, &db)?;
        let mut comps = vec![];
        for i in 0..alg.rank() {
            let gen = alg.generator(i);
            let ab = apply_derivation(alg, a, &apply_derivation(alg, b, &gen)?)?;
            let ba = apply_derivation(alg, b, &apply_derivation(alg, a, &gen)?)?;
            comps.push(ab.add(&ba.scale(&rho)));
        }
        Ok(Derivation::new(comps))
    };
    let lreport = rhocalc::derivation::check_hom_rho_lie_with(alg, &id, &samples, &flipped);
    if lreport.all_passed() {
        ok = false;
        detail.push_str("[corrupted derivation bracket not caught] ");
    }

    detail.push_str(&format!("({:.2?})", start.elapsed()));
    let ok = verdict("criterion 10 (negative controls)", ok, &detail);
    assert!(ok);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

/// The uniqueness route: the closed coefficient formula agrees exactly with
/// the independently solved Koszul linear system for the twist-invariant
/// cases (where the derivation of the closed form is valid).
#[test]
fn koszul_uniqueness_route() {
    for (file, sx, sy) in CASES {
        if sx != sy {
            continue;
        }
        let model = load(file);
        let alg = &model.algebra;
        let basis = model.require_basis().unwrap();
        let g = model.require_metric().unwrap();
        let direct = christoffel(alg, basis, g).unwrap();
        let solved = koszul_connection(alg, basis, g).unwrap();
        assert_eq!(direct, solved, "case ({sx},{sy})");
    }
}

/// Beyond the criteria above: the mixed-sign
/// structural facts pinned as engine behavior (exact counterexamples).
#[test]
fn mixed_sign_findings_are_stable() {
    let model = load("quantum_plane_pm.rg");
    let alg = &model.algebra;
    let basis = model.require_basis().unwrap();
    // Jacobi counterexample
    let x = act_left(alg, &alg.monomial(&[1, 1]).unwrap(), &Derivation::basis(alg, 0)).unwrap();
    let res = rhocalc::derivation::jacobi_residual(
        alg,
        basis,
        &x,
        &Derivation::basis(alg, 1),
        &Derivation::basis(alg, 0),
    )
    .unwrap();
    assert_eq!(res, Derivation::basis(alg, 0).scale(&Scalar::from_int(-2)));
    // compatibility residual
    let g = model.require_metric().unwrap();
    let (_, conn) = model.levi_civita().unwrap();
    let r = rhocalc::connection::compatibility_residual(
        alg,
        basis,
        &conn,
        g,
        &Derivation::basis(alg, 0),
        &Derivation::basis(alg, 0),
        &Derivation::basis(alg, 1),
    )
    .unwrap();
    let expected = alg
        .monomial(&[-2, -1])
        .unwrap()
        .scale(&(&Scalar::from_int(-2) * &Scalar::q()));
    assert_eq!(r, expected);
    // the twist applied twice is the identity on derivations
    let v = act_left(alg, &alg.monomial(&[2, -1]).unwrap(), &Derivation::basis(alg, 1)).unwrap();
    assert_eq!(apply_phi_a(alg, basis, &apply_phi_a(alg, basis, &v)), v);
}
