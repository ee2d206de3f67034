//! Canonical text rendering. `parse(render(e)) == e` for every canonical
//! element, and the output is deterministic: terms appear in monomial order,
//! coefficients in the scalar canonical form.

use crate::algebra::{AlgebraSpec, Element, Mono};
use crate::derivation::Derivation;
use crate::scalar::Scalar;

fn render_mono(alg: &AlgebraSpec, m: &Mono) -> Option<String> {
    match m {
        Mono::One => None,
        Mono::Gen(i) => Some(alg.generators[*i].name.clone()),
        Mono::Torus(e) => {
            let mut parts = vec![];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = &alg.generators[i].name;
                if k == 1 {
                    parts.push(name.clone());
                } else {
                    parts.push(format!("{name}^{k}"));
                }
            }
            if parts.is_empty() {
                None
            } else {
                Some(parts.join("*"))
            }
        }
    }
}

/// One rendered term: `coef`, `mono`, or `coef*mono`, with the sign pulled
/// out so callers can join terms with ` + ` / ` - `.
fn render_term(alg: &AlgebraSpec, m: &Mono, c: &Scalar) -> (bool, String) {
    let neg = -c;
    let minus_one = Scalar::from_int(-1);
    let (sign, mag) = if c.to_string().starts_with('-') {
        (true, neg)
    } else {
        (false, c.clone())
    };
    let mono = render_mono(alg, m);
    let body = match mono {
        None => mag.to_string(),
        Some(mono) => {
            if mag.is_one() {
                mono
            } else if mag == minus_one {
                // unreachable: magnitude is non-negative by construction
                format!("-{mono}")
            } else {
                format!("{mag}*{mono}")
            }
        }
    };
    (sign, body)
}

pub fn render_element(alg: &AlgebraSpec, e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in e.terms().enumerate() {
        let (sign, body) = render_term(alg, m, c);
        if idx == 0 {
            if sign {
                out.push('-');
            }
        } else if sign {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

pub fn render_derivation(alg: &AlgebraSpec, x: &Derivation) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<(bool, String)> = vec![];
    for (i, c) in x.comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let dname = format!("d/d{}", alg.generators[i].name);
        if let Some(s) = c.as_scalar(alg) {
            if s.is_one() {
                parts.push((false, dname));
                continue;
            }
            if s == Scalar::from_int(-1) {
                parts.push((true, dname));
                continue;
            }
        }
        let rendered = render_element(alg, c);
        if c.num_terms() > 1 {
            parts.push((false, format!("({rendered}) * {dname}")));
        } else if let Some(stripped) = rendered.strip_prefix('-') {
            parts.push((true, format!("{stripped} * {dname}")));
        } else {
            parts.push((false, format!("{rendered} * {dname}")));
        }
    }
    let mut out = String::new();
    for (idx, (sign, body)) in parts.iter().enumerate() {
        if idx == 0 {
            if *sign {
                out.push('-');
            }
        } else if *sign {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::act_left;
    use crate::testmodels::quantum_plane;

    #[test]
    fn canonical_forms() {
        let alg = quantum_plane(1, 1);
        let xinv = alg.monomial(&[-1, 0]).unwrap();
        assert_eq!(render_element(&alg, &xinv.neg()), "-x^-1");
        assert_eq!(render_element(&alg, &Element::zero()), "0");
        let e = alg
            .monomial(&[1, 1])
            .unwrap()
            .scale(&Scalar::q())
            .add(&alg.one().neg());
        assert_eq!(render_element(&alg, &e), "-1 + q*x*y");
    }

    #[test]
    fn derivation_forms() {
        let alg = quantum_plane(1, 1);
        let d = act_left(
            &alg,
            &alg.monomial(&[-1, 0]).unwrap().neg(),
            &crate::derivation::Derivation::basis(&alg, 0),
        )
        .unwrap();
        assert_eq!(render_derivation(&alg, &d), "-x^-1 * d/dx");
        let d2 = crate::derivation::Derivation::basis(&alg, 1).neg();
        assert_eq!(render_derivation(&alg, &d2), "-d/dy");
    }
}
