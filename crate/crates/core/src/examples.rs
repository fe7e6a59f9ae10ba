//! Built-in example families.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::family::FamilyModel;
use crate::report::{ComponentJson, FamilyJson, LinearSystemJson, NodeJson};
use crate::scalar::{fmt_rat, Rat};

/// The cubic degeneration F = x(y^2+x^2-z^2) with perturbation
/// h = c1*y^3 + c2*y^2*z: a conic Q and a line M meeting at
/// p1 = (0:1:1), p2 = (0:1:-1), carrying the full system of lines.
pub fn case11(c1: &Rat, c2: &Rat) -> Result<FamilyJson> {
    if c1.is_zero() && c2.is_zero() {
        return Err(Error::DegenerateInput(
            "case11 needs (c1, c2) != (0, 0): the perturbation would vanish".into(),
        ));
    }
    let term = |c: &Rat, mono: &str| -> String {
        if c.is_zero() {
            String::new()
        } else {
            format!("+{}*{}", fmt_rat(c), mono)
        }
    };
    let mut h = format!("{}{}", term(c1, "y^3"), term(c2, "y^2*z"));
    h = h.trim_start_matches('+').to_string();
    Ok(FamilyJson {
        precision: None,
        components: vec![
            ComponentJson {
                name: "Q".into(),
                equation: "y^2+x^2-z^2".into(),
                parametrization: ["2*u*v".into(), "v^2-u^2".into(), "v^2+u^2".into()],
                self_nodes: vec![],
            },
            ComponentJson {
                name: "M".into(),
                equation: "x".into(),
                parametrization: ["0".into(), "a".into(), "b".into()],
                self_nodes: vec![],
            },
        ],
        perturbation: h,
        nodes: vec![
            NodeJson {
                components: ["Q".into(), "M".into()],
                params: [[0, 1], [1, 1]],
            },
            NodeJson {
                components: ["Q".into(), "M".into()],
                params: [[1, 0], [1, -1]],
            },
        ],
        linear_system: LinearSystemJson {
            degree: 1,
            basis: vec!["x".into(), "y".into(), "z".into()],
        },
    })
}

/// Two lines degenerating from a smooth conic: G = xz + t*y^2.
pub fn conic() -> FamilyJson {
    FamilyJson {
        precision: None,
        components: vec![
            ComponentJson {
                name: "C1".into(),
                equation: "x".into(),
                parametrization: ["0".into(), "u".into(), "v".into()],
                self_nodes: vec![],
            },
            ComponentJson {
                name: "C2".into(),
                equation: "z".into(),
                parametrization: ["u".into(), "v".into(), "0".into()],
                self_nodes: vec![],
            },
        ],
        perturbation: "y^2".into(),
        nodes: vec![NodeJson {
            components: ["C1".into(), "C2".into()],
            params: [[1, 0], [0, 1]],
        }],
        linear_system: LinearSystemJson {
            degree: 1,
            basis: vec!["x".into(), "y".into(), "z".into()],
        },
    }
}

/// Degree-4 canonical (Weierstrass) configuration: a nodal cubic plus a
/// secant line, with the canonical system k = d - 3 = 1.
pub fn weierstrass4() -> FamilyJson {
    FamilyJson {
        precision: None,
        components: vec![
            ComponentJson {
                name: "N".into(),
                equation: "y^2*z-x^3-x^2*z".into(),
                parametrization: [
                    "(u^2-v^2)*v".into(),
                    "u*(u^2-v^2)".into(),
                    "v^3".into(),
                ],
                self_nodes: vec![[[1, 1], [1, -1]]],
            },
            ComponentJson {
                name: "L".into(),
                equation: "x-3*z".into(),
                parametrization: ["3*b".into(), "a".into(), "b".into()],
                self_nodes: vec![],
            },
        ],
        perturbation: "y^4+z^4-x^4".into(),
        nodes: vec![
            NodeJson {
                components: ["N".into(), "L".into()],
                params: [[1, 0], [1, 0]],
            },
            NodeJson {
                components: ["N".into(), "L".into()],
                params: [[2, 1], [6, 1]],
            },
            NodeJson {
                components: ["N".into(), "L".into()],
                params: [[-2, 1], [-6, 1]],
            },
        ],
        linear_system: LinearSystemJson {
            degree: 1,
            basis: vec!["x".into(), "y".into(), "z".into()],
        },
    }
}

/// A built-in example by name. case11 takes two rational parameters.
pub fn by_name(name: &str, params: &[Rat]) -> Result<FamilyJson> {
    match name {
        "case11" => {
            if params.len() != 2 {
                return Err(Error::DegenerateInput(
                    "case11 takes two rational parameters c1 c2".into(),
                ));
            }
            case11(&params[0], &params[1])
        }
        "conic" => Ok(conic()),
        "weierstrass4" => Ok(weierstrass4()),
        other => Err(Error::UnknownExample(other.into())),
    }
}

/// Convenience: the validated model of a built-in example.
pub fn model(name: &str, params: &[Rat]) -> Result<FamilyModel> {
    let m = by_name(name, params)?.to_model()?;
    m.validate()?;
    Ok(m)
}

pub fn case11_model(c1: i64, c2: i64) -> FamilyModel {
    let m = case11(&Rat::from_integer(c1.into()), &Rat::from_integer(c2.into()))
        .unwrap()
        .to_model()
        .unwrap();
    m.validate().unwrap();
    m
}
