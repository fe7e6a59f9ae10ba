//! JSON interchange: the family description schema and the machine-readable
//! analysis report. Rationals travel as exact "p/q" strings, projective
//! points as integer pairs [p, q].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{ComponentSpec, FamilyModel};
use crate::parse::{parse_binary, parse_ternary, parse_ternary_plane};
use crate::scalar::{fmt_rat, ProjPoint, Rat};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
    pub components: Vec<ComponentJson>,
    pub perturbation: String,
    pub nodes: Vec<NodeJson>,
    pub linear_system: LinearSystemJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentJson {
    pub name: String,
    pub equation: String,
    pub parametrization: [String; 3],
    #[serde(default)]
    pub self_nodes: Vec<[[i64; 2]; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeJson {
    pub components: [String; 2],
    pub params: [[i64; 2]; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearSystemJson {
    pub degree: usize,
    pub basis: Vec<String>,
}

impl FamilyJson {
    pub fn from_str(text: &str) -> Result<FamilyJson> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("family serialization")
    }

    /// Build the exact model. Syntax problems error here; geometric checks
    /// happen in `FamilyModel::validate`.
    pub fn to_model(&self) -> Result<FamilyModel> {
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let equation = parse_ternary_plane(&c.equation)?;
            let phi = [
                parse_param(&c.parametrization[0], &c.parametrization)?,
                parse_param(&c.parametrization[1], &c.parametrization)?,
                parse_param(&c.parametrization[2], &c.parametrization)?,
            ];
            let self_nodes = c
                .self_nodes
                .iter()
                .map(|[[p1, q1], [p2, q2]]| {
                    Ok((ProjPoint::from_ints(*p1, *q1), ProjPoint::from_ints(*p2, *q2)))
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(ComponentSpec {
                name: c.name.clone(),
                equation,
                parametrization: phi,
                self_nodes,
            });
        }
        let name_index = |name: &str| -> Result<usize> {
            components
                .iter()
                .position(|c| c.name == name)
                .ok_or_else(|| Error::BadFamily(format!("unknown component `{name}` in node")))
        };
        let mut raw_nodes = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let i = name_index(&n.components[0])?;
            let j = name_index(&n.components[1])?;
            raw_nodes.push((
                (i, ProjPoint::from_ints(n.params[0][0], n.params[0][1])),
                (j, ProjPoint::from_ints(n.params[1][0], n.params[1][1])),
            ));
        }
        let perturbation = parse_ternary_plane(&self.perturbation)?;
        let basis = self
            .linear_system
            .basis
            .iter()
            .map(|s| parse_ternary(s))
            .collect::<Result<Vec<_>>>()?;
        FamilyModel::build(
            components,
            perturbation,
            raw_nodes,
            self.precision,
            self.linear_system.degree,
            basis,
        )
    }
}

/// Parametrization coordinates may legitimately be "0"; a degree cannot be
/// inferred from that string alone, so pad zero coordinates to the degree of
/// the nonzero ones.
fn parse_param(text: &str, all: &[String; 3]) -> Result<crate::binary::BinaryForm> {
    let f = parse_binary(text)?;
    if !f.is_zero() {
        return Ok(f);
    }
    for other in all {
        let g = parse_binary(other)?;
        if !g.is_zero() {
            return Ok(crate::binary::BinaryForm::zero(g.degree()));
        }
    }
    Err(Error::BadFamily("parametrization is identically zero".into()))
}

/// Location of a weighted point of the assembled limit divisor.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WhereJson {
    /// Rational point in the smooth locus of a component (parameter chart).
    Smooth {
        component: String,
        point: [i64; 2],
        plane: [String; 3],
    },
    /// Irrational locus: an irreducible factor on the parameter line.
    Factor { component: String, factor: String },
    /// An inter-component node.
    Node {
        components: [String; 2],
        plane: [String; 3],
    },
    /// A self-node of one component.
    SelfNode { component: String, plane: [String; 3] },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub component: String,
    pub twist: Vec<i64>,
    pub multidegree: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightJson {
    #[serde(rename = "where")]
    pub location: WhereJson,
    pub weight: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChecksJson {
    pub cor8: bool,
    pub global_degree: bool,
    pub prop6: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportJson {
    pub extensions: Vec<ExtensionJson>,
    pub connecting_numbers: Vec<Vec<i64>>,
    #[serde(rename = "Z")]
    pub z: Vec<WeightJson>,
    pub total_weight: usize,
    pub checks: ChecksJson,
}

impl ReportJson {
    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn from_analysis(
        model: &FamilyModel,
        rep: &crate::ramification::RamificationReport,
    ) -> ReportJson {
        use crate::ramification::Location;
        let name = |i: usize| model.components[i].name.clone();
        let extensions = rep
            .records
            .iter()
            .map(|r| ExtensionJson {
                component: name(r.component),
                twist: r.class.entries().to_vec(),
                multidegree: model.multidegree(r.class.entries()),
            })
            .collect();
        let z = rep
            .z
            .iter()
            .map(|wp| {
                let location = match &wp.location {
                    Location::Smooth {
                        component,
                        point,
                        plane,
                    } => WhereJson::Smooth {
                        component: name(*component),
                        point: point_pair(point),
                        plane: fmt_plane(plane),
                    },
                    Location::Factor { component, factor } => WhereJson::Factor {
                        component: name(*component),
                        factor: factor.render("u", "v"),
                    },
                    Location::Node { node } => {
                        let n = &model.nodes[*node];
                        WhereJson::Node {
                            components: [name(n.components.0), name(n.components.1)],
                            plane: fmt_plane(&n.plane),
                        }
                    }
                    Location::SelfNode { component, index } => {
                        let (a, _) = &model.components[*component].self_nodes[*index];
                        let plane =
                            crate::family::plane_point(&model.components[*component].parametrization, a)
                                .expect("self-node plane point");
                        WhereJson::SelfNode {
                            component: name(*component),
                            plane: fmt_plane(&plane),
                        }
                    }
                };
                WeightJson {
                    location,
                    weight: wp.weight,
                }
            })
            .collect();
        ReportJson {
            extensions,
            connecting_numbers: rep.connecting.clone(),
            z,
            total_weight: rep.total_weight,
            checks: ChecksJson {
                cor8: rep.checks.cor8,
                global_degree: rep.checks.global_degree,
                prop6: rep.checks.prop6,
            },
        }
    }
}

pub fn fmt_plane(p: &[Rat; 3]) -> [String; 3] {
    [fmt_rat(&p[0]), fmt_rat(&p[1]), fmt_rat(&p[2])]
}

pub fn point_pair(p: &ProjPoint) -> [i64; 2] {
    let conv = |x: &crate::scalar::Int| -> i64 {
        x.try_into().expect("projective coordinate exceeds i64")
    };
    [conv(&p.p), conv(&p.q)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_round_trip() {
        let text = r#"{
            "components": [
                {"name": "Q", "equation": "y^2+x^2-z^2",
                 "parametrization": ["2*u*v", "v^2-u^2", "v^2+u^2"]},
                {"name": "M", "equation": "x",
                 "parametrization": ["0", "u", "v"]}
            ],
            "perturbation": "y^3+2*y^2*z",
            "nodes": [
                {"components": ["Q", "M"], "params": [[0,1],[1,1]]},
                {"components": ["Q", "M"], "params": [[1,0],[1,-1]]}
            ],
            "linear_system": {"degree": 1, "basis": ["x", "y", "z"]}
        }"#;
        let fam = FamilyJson::from_str(text).unwrap();
        let model = fam.to_model().unwrap();
        assert!(model.validate().unwrap().is_empty());
        let again = FamilyJson::from_str(&fam.to_string_pretty()).unwrap();
        let model2 = again.to_model().unwrap();
        assert_eq!(model.delta, model2.delta);
    }

    #[test]
    fn bad_json_is_parse_error() {
        assert!(matches!(
            FamilyJson::from_str("{not json"),
            Err(Error::Json(_))
        ));
    }

    #[test]
    fn unknown_component_in_node() {
        let text = r#"{
            "components": [
                {"name": "A", "equation": "x", "parametrization": ["0", "u", "v"]}
            ],
            "perturbation": "y",
            "nodes": [{"components": ["A", "B"], "params": [[0,1],[0,1]]}],
            "linear_system": {"degree": 1, "basis": ["x"]}
        }"#;
        let fam = FamilyJson::from_str(text).unwrap();
        assert!(matches!(fam.to_model(), Err(Error::BadFamily(_))));
    }
}
