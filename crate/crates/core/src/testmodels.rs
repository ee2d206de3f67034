//! Programmatic constructions of the two running models, shared by the unit
//! tests. Integration tests build the same models through the text format.

use crate::algebra::{AlgebraSpec, Backend, Element, Generator, Mono, PhiMultipliers};
use crate::derivation::DerivationBasis;
use crate::grading::{CocycleBase, CocycleSpec, GradingGroup};
use crate::metric::Metric;
use crate::scalar::{rat, Scalar};

/// The extended quantum plane on invertible x, y with `x*y = q*y*x`, with
/// the twist acting by `pos` on positive generator powers and `neg` on
/// negative ones.
pub fn quantum_plane(pos: i64, neg: i64) -> AlgebraSpec {
    let group = GradingGroup::free(2);
    let cocycle = CocycleSpec::new(CocycleBase::Param, vec![vec![0, 1], vec![-1, 0]]).unwrap();
    let gens = vec![
        Generator {
            name: "x".into(),
            degree: group.degree(&[1, 0]).unwrap(),
            invertible: true,
        },
        Generator {
            name: "y".into(),
            degree: group.degree(&[0, 1]).unwrap(),
            invertible: true,
        },
    ];
    let mult = || PhiMultipliers {
        pos: Scalar::from_int(pos),
        neg: Scalar::from_int(neg),
    };
    AlgebraSpec {
        name: "quantum_plane".into(),
        group,
        cocycle,
        generators: gens,
        backend: Backend::Torus {
            phi: vec![mult(), mult()],
        },
        param: Some("q".into()),
    }
}

/// The quaternion basis i, j, k graded over (Z/2)^3 with the sign cocycle,
/// twist scaling i, j, k by a, b, c.
pub fn quaternions(a: i64, b: i64, c: i64) -> AlgebraSpec {
    let group = GradingGroup::with_moduli(vec![2, 2, 2]);
    let cocycle = CocycleSpec::new(
        CocycleBase::Const(rat(-1, 1)),
        vec![vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]],
    )
    .unwrap();
    let gens = vec![
        Generator {
            name: "i".into(),
            degree: group.degree(&[0, 1, 1]).unwrap(),
            invertible: false,
        },
        Generator {
            name: "j".into(),
            degree: group.degree(&[1, 0, 1]).unwrap(),
            invertible: false,
        },
        Generator {
            name: "k".into(),
            degree: group.degree(&[1, 1, 0]).unwrap(),
            invertible: false,
        },
    ];
    let one = |s: i64| Element::from_term(Mono::One, Scalar::from_int(s));
    let gen = |i: usize, s: i64| Element::from_term(Mono::Gen(i), Scalar::from_int(s));
    // i*i = -1, i*j = k,  i*k = -j,
    // j*i = -k, j*j = -1, j*k = i,
    // k*i = j,  k*j = -i, k*k = -1
    let mul = vec![
        vec![one(-1), gen(2, 1), gen(1, -1)],
        vec![gen(2, -1), one(-1), gen(0, 1)],
        vec![gen(1, 1), gen(0, -1), one(-1)],
    ];
    let phi = vec![gen(0, a), gen(1, b), gen(2, c)];
    AlgebraSpec {
        name: "quaternion".into(),
        group,
        cocycle,
        generators: gens,
        backend: Backend::Table { mul, phi },
        param: None,
    }
}

/// Diagonal basis twist `diag(sx, sy)` on the partial-derivative basis.
pub fn diag_basis(sx: i64, sy: i64) -> DerivationBasis {
    DerivationBasis::new(vec![
        vec![Scalar::from_int(sx), Scalar::zero()],
        vec![Scalar::zero(), Scalar::from_int(sy)],
    ])
    .unwrap()
}

/// The homogeneous metric of the quantum-plane example:
/// `g(d_m, d_k) = [[x^-2, q x^-1 y^-1], [x^-1 y^-1, y^-2]]`.
pub fn plane_metric(alg: &AlgebraSpec) -> Metric {
    let m11 = alg.monomial(&[-2, 0]).unwrap();
    let m12 = alg.monomial(&[-1, -1]).unwrap().scale(&Scalar::q());
    let m21 = alg.monomial(&[-1, -1]).unwrap();
    let m22 = alg.monomial(&[0, -2]).unwrap();
    Metric::new(alg, vec![vec![m11, m12], vec![m21, m22]]).unwrap()
}

/// The four diagonal sign-twist cases of the quantum-plane example:
/// (1,-1), (-1,-1), (1,1), (-1,1).
pub fn sign_twist_cases() -> [(i64, i64); 4] {
    [(1, -1), (-1, -1), (1, 1), (-1, 1)]
}
