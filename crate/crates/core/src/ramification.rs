//! Ramification divisors of the associated extensions, vanishing sequences,
//! node weights, and the assembled limit divisor Z(s) with its exact degree
//! identities.

use crate::binary::{wronskian_divisor, BinaryDivisor, BinaryForm, DivisorPoint};
use crate::error::{Error, Result};
use crate::family::{plane_point, FamilyModel};
use crate::lattice::{associated_extension, connecting_matrix, ExtensionRecord};
use crate::matrix::QMat;
use crate::scalar::{ProjPoint, Rat};

/// Location of a weighted point of Z(s) on the special fibre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// Rational point in the smooth locus of one component.
    Smooth {
        component: usize,
        point: ProjPoint,
        plane: [Rat; 3],
    },
    /// Irrational locus on one component, at irreducible-factor granularity.
    Factor {
        component: usize,
        factor: BinaryForm,
    },
    /// An inter-component node (index into the model's node list).
    Node { node: usize },
    /// A self-node of one component (index into its self-node list).
    SelfNode { component: usize, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPoint {
    pub location: Location,
    pub weight: usize,
}

impl WeightedPoint {
    /// Degree contribution: weight times the degree of the locus.
    pub fn degree(&self) -> usize {
        match &self.location {
            Location::Factor { factor, .. } => self.weight * factor.degree(),
            _ => self.weight,
        }
    }
}

/// The ramification divisor Z_i of one associated extension, split into its
/// smooth part on the parameter line and the self-node weights.
#[derive(Debug, Clone)]
pub struct ComponentDivisor {
    pub component: usize,
    /// Wronskian divisor on the parameter line, with self-node branch points
    /// removed (their weight moves into `self_node_weights`).
    pub line_part: BinaryDivisor,
    /// Per declared self-node: branch weights plus 2β.
    pub self_node_weights: Vec<usize>,
    /// (r+1)·d_i + β(2g_i − 2), with g_i the number of self-nodes.
    pub total_degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checks {
    pub cor8: bool,
    pub global_degree: bool,
    pub prop6: bool,
}

/// Certificate for the node criterion: both vanishing sequences and the
/// connecting number they are measured against.
#[derive(Debug, Clone)]
pub struct NodeCertificate {
    pub node: usize,
    pub eps_i: Vec<usize>,
    pub eps_j: Vec<usize>,
    pub l_ij: i64,
    pub smooth: bool,
}

#[derive(Debug, Clone)]
pub struct RamificationReport {
    pub records: Vec<ExtensionRecord>,
    pub connecting: Vec<Vec<i64>>,
    pub components: Vec<ComponentDivisor>,
    /// Node weights in model node order (zero entries retained here; the
    /// assembled divisor drops them).
    pub node_weights: Vec<usize>,
    pub z: Vec<WeightedPoint>,
    pub total_weight: usize,
    pub checks: Checks,
}

impl RamificationReport {
    pub fn weight_at_node(&self, node: usize) -> usize {
        self.node_weights[node]
    }
}

/// β = r(r+1)/2 for a system of rank r.
pub fn beta(rank: usize) -> usize {
    rank * (rank + 1) / 2
}

/// The r+1 distinct orders of vanishing at a rational point of the sections
/// spanned by the given independent forms: pivot columns of the row-reduced
/// Taylor-coefficient matrix.
pub fn vanishing_sequence(forms: &[BinaryForm], p: &ProjPoint) -> Result<Vec<usize>> {
    let rows: Vec<Vec<Rat>> = forms.iter().map(|f| f.taylor_at(p)).collect();
    let mut m = QMat::from_rows(rows);
    let pivots = m.rref();
    if pivots.len() < forms.len() {
        return Err(Error::DependentForms);
    }
    Ok(pivots)
}

/// Ramification divisor of the associated extension on its own component:
/// the intrinsic Wronskian of the restricted forms, with β added at each
/// self-node branch and the two branches merged into one point.
pub fn component_ram_divisor(
    model: &FamilyModel,
    rec: &ExtensionRecord,
) -> Result<ComponentDivisor> {
    let i = rec.component;
    let restriction = &rec.limit.per_component[i];
    if !restriction.injective {
        return Err(Error::IdentityFailure(format!(
            "extension of {} is not injective on its component",
            model.components[i].name
        )));
    }
    let r = model.rank_plus_one() - 1;
    let b = beta(r);
    let mut line_part = wronskian_divisor(&restriction.forms)?;
    let mut self_node_weights = Vec::with_capacity(model.components[i].self_nodes.len());
    for (a, c) in &model.components[i].self_nodes {
        let wa = line_part.remove_point(a);
        let wb = line_part.remove_point(c);
        self_node_weights.push(wa + wb + 2 * b);
    }
    let g_i = model.components[i].self_nodes.len() as i64;
    let d_i = restriction.degree;
    let expected = (r as i64 + 1) * d_i + b as i64 * (2 * g_i - 2);
    let got = line_part.total_degree() as i64
        + self_node_weights.iter().sum::<usize>() as i64;
    if got != expected {
        return Err(Error::IdentityFailure(format!(
            "Z_{} has degree {} instead of {}",
            model.components[i].name, got, expected
        )));
    }
    Ok(ComponentDivisor {
        component: i,
        line_part,
        self_node_weights,
        total_degree: expected as usize,
    })
}

/// Weight of Z(s) at an inter-component node: w^i + w^j + (r − l_ij)(r+1),
/// from the branch weights of the two component divisors.
pub fn node_weight(rank: usize, w_i: usize, w_j: usize, l_ij: i64) -> Result<usize> {
    let r = rank as i64;
    let w = w_i as i64 + w_j as i64 + (r - l_ij) * (r + 1);
    if w < 0 {
        return Err(Error::IdentityFailure(format!(
            "negative node weight {w} (w^i={w_i}, w^j={w_j}, l={l_ij}, r={r})"
        )));
    }
    Ok(w as usize)
}

/// The full limit divisor Z(s): all associated extensions, connecting
/// numbers, component divisors, node weights, assembled and checked against
/// the exact degree identities.
pub fn limit_divisor(model: &FamilyModel) -> Result<RamificationReport> {
    let t = model.num_components();
    let r = model.rank_plus_one() - 1;
    let b = beta(r);

    let records: Vec<ExtensionRecord> = (0..t)
        .map(|i| associated_extension(model, i))
        .collect::<Result<_>>()?;
    let connecting = connecting_matrix(&records)?;
    let mut components: Vec<ComponentDivisor> = records
        .iter()
        .map(|rec| component_ram_divisor(model, rec))
        .collect::<Result<_>>()?;

    // node weights first: they consume the branch weights of the line parts
    let mut node_weights = Vec::with_capacity(model.nodes.len());
    let mut prop6 = true;
    for node in &model.nodes {
        let (i, j) = node.components;
        let w_i = components[i].line_part.remove_point(&node.points.0);
        let w_j = components[j].line_part.remove_point(&node.points.1);
        let l_ij = connecting[i][j];
        node_weights.push(node_weight(r, w_i, w_j, l_ij)?);

        let eps_i =
            vanishing_sequence(&records[i].limit.per_component[i].forms, &node.points.0)?;
        let eps_j =
            vanishing_sequence(&records[j].limit.per_component[j].forms, &node.points.1)?;
        for h in 0..=r {
            if ((eps_i[h] + eps_j[r - h]) as i64) < l_ij {
                prop6 = false;
            }
        }
    }
    if !prop6 {
        return Err(Error::IdentityFailure(
            "vanishing sequences at a node violate the connecting-number bound".into(),
        ));
    }

    // assemble Z(s)
    let mut z: Vec<WeightedPoint> = Vec::new();
    for cd in &components {
        let i = cd.component;
        for (pt, w) in &cd.line_part.entries {
            let location = match pt {
                DivisorPoint::Rational(p) => Location::Smooth {
                    component: i,
                    point: p.clone(),
                    plane: plane_point(&model.components[i].parametrization, p)?,
                },
                DivisorPoint::Irreducible(f) => Location::Factor {
                    component: i,
                    factor: f.clone(),
                },
            };
            z.push(WeightedPoint {
                location,
                weight: *w,
            });
        }
        for (idx, w) in cd.self_node_weights.iter().enumerate() {
            if *w > 0 {
                z.push(WeightedPoint {
                    location: Location::SelfNode {
                        component: i,
                        index: idx,
                    },
                    weight: *w,
                });
            }
        }
    }
    for (idx, w) in node_weights.iter().enumerate() {
        if *w > 0 {
            z.push(WeightedPoint {
                location: Location::Node { node: idx },
                weight: *w,
            });
        }
    }
    let total_weight: usize = z.iter().map(|p| p.degree()).sum();

    // Plücker-type identities
    let kd = model.degree_k as i64 * model.total_degree() as i64;
    let sum_di: i64 = records
        .iter()
        .map(|rec| rec.limit.per_component[rec.component].degree)
        .sum();
    let cross: i64 = (0..t)
        .flat_map(|i| ((i + 1)..t).map(move |j| (i, j)))
        .map(|(i, j)| model.delta[i][j] * connecting[i][j])
        .sum();
    let cor8 = sum_di == kd + cross;
    if !cor8 {
        return Err(Error::IdentityFailure(format!(
            "component degrees {sum_di} != {kd} + {cross}"
        )));
    }

    let d = model.total_degree() as i64;
    let g = (d - 1) * (d - 2) / 2;
    let expected_total = (r as i64 + 1) * kd + b as i64 * (2 * g - 2);
    let global_degree = total_weight as i64 == expected_total;
    if !global_degree {
        return Err(Error::IdentityFailure(format!(
            "Z(s) has total weight {total_weight} instead of {expected_total}"
        )));
    }

    // empty the consumed line parts back into the report
    for cd in &mut components {
        cd.line_part.sort();
    }

    Ok(RamificationReport {
        records,
        connecting,
        components,
        node_weights,
        z,
        total_weight,
        checks: Checks {
            cor8,
            global_degree,
            prop6,
        },
    })
}

/// Node smoothness criterion: the node is outside Z(s) iff
/// ε_h^i + ε_{r−h}^j = l_ij for every h. The certificate carries both
/// sequences; the verdict is cross-checked against the computed node weight.
pub fn cor9_predicate(
    model: &FamilyModel,
    report: &RamificationReport,
    node: usize,
) -> Result<NodeCertificate> {
    let n = &model.nodes[node];
    let (i, j) = n.components;
    let r = model.rank_plus_one() - 1;
    let eps_i =
        vanishing_sequence(&report.records[i].limit.per_component[i].forms, &n.points.0)?;
    let eps_j =
        vanishing_sequence(&report.records[j].limit.per_component[j].forms, &n.points.1)?;
    let l_ij = report.connecting[i][j];
    let smooth = (0..=r).all(|h| (eps_i[h] + eps_j[r - h]) as i64 == l_ij);
    if smooth != (report.node_weights[node] == 0) {
        return Err(Error::IdentityFailure(format!(
            "node criterion disagrees with the computed weight {} at node {node}",
            report.node_weights[node]
        )));
    }
    Ok(NodeCertificate {
        node,
        eps_i,
        eps_j,
        l_ij,
        smooth,
    })
}

/// One necessary condition for Z(s) to avoid the singular points.
#[derive(Debug, Clone)]
pub struct Condition {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

/// The three checkable necessary conditions for a limit divisor supported in
/// the smooth locus: smooth components, large connecting numbers, and the
/// degree bound l_ij δ_ij ≤ deg L.
pub fn case12_check(model: &FamilyModel, report: &RamificationReport) -> Vec<Condition> {
    let t = model.num_components();
    let r = (model.rank_plus_one() - 1) as i64;
    let kd = model.degree_k as i64 * model.total_degree() as i64;

    let mut smooth = Condition {
        name: "components smooth away from each other",
        pass: true,
        witness: None,
    };
    for c in &model.components {
        if !c.self_nodes.is_empty() {
            smooth.pass = false;
            smooth.witness = Some(format!("{} has a self-node", c.name));
            break;
        }
    }

    let mut large_l = Condition {
        name: "connecting numbers at least the rank",
        pass: true,
        witness: None,
    };
    let mut bounded = Condition {
        name: "l_ij * delta_ij bounded by the system degree",
        pass: true,
        witness: None,
    };
    for i in 0..t {
        for j in 0..t {
            if i == j || model.delta[i][j] == 0 {
                continue;
            }
            let l = report.connecting[i][j];
            if large_l.pass && l < r {
                large_l.pass = false;
                large_l.witness = Some(format!(
                    "l({},{}) = {} < {}",
                    model.components[i].name, model.components[j].name, l, r
                ));
            }
            if bounded.pass && l * model.delta[i][j] > kd {
                bounded.pass = false;
                bounded.witness = Some(format!(
                    "l({},{}) * {} = {} > {}",
                    model.components[i].name,
                    model.components[j].name,
                    model.delta[i][j],
                    l * model.delta[i][j],
                    kd
                ));
            }
        }
    }
    vec![smooth, large_l, bounded]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::parse::parse_binary;

    fn forms(strs: &[&str]) -> Vec<BinaryForm> {
        strs.iter().map(|s| parse_binary(s).unwrap()).collect()
    }

    #[test]
    fn vanishing_sequence_examples() {
        let p0 = ProjPoint::from_ints(0, 1);
        assert_eq!(vanishing_sequence(&forms(&["v", "u"]), &p0).unwrap(), vec![0, 1]);
        assert_eq!(
            vanishing_sequence(&forms(&["v^2", "u^2"]), &p0).unwrap(),
            vec![0, 2]
        );
        assert!(matches!(
            vanishing_sequence(&forms(&["u+v", "2*u+2*v"]), &p0),
            Err(Error::DependentForms)
        ));
    }

    #[test]
    fn vanishing_sequence_case11_net() {
        // the M-aspect at c=(1,1) at the branch (1:1) of p1
        let m = examples::case11_model(1, 1);
        let rec = crate::lattice::associated_extension(&m, 1).unwrap();
        let eps = vanishing_sequence(
            &rec.limit.per_component[1].forms,
            &ProjPoint::from_ints(1, 1),
        )
        .unwrap();
        assert_eq!(eps, vec![0, 1, 2]);
    }

    #[test]
    fn wronskian_weight_equals_gap_sum() {
        // Σ_h (ε_h − h) at p = weight of p in the intrinsic Wronskian divisor
        let cases = [
            forms(&["v^3", "u*v^2", "u^3"]),
            forms(&["v^3+u^3", "u*v^2", "u^2*v-v^3"]),
        ];
        let pts = [
            ProjPoint::from_ints(0, 1),
            ProjPoint::from_ints(1, 1),
            ProjPoint::from_ints(1, 0),
            ProjPoint::from_ints(-2, 1),
        ];
        for fs in &cases {
            let div = wronskian_divisor(fs).unwrap();
            for p in &pts {
                let eps = vanishing_sequence(fs, p).unwrap();
                let gaps: usize = eps.iter().enumerate().map(|(h, e)| e - h).sum();
                assert_eq!(gaps, div.weight_at(p), "at {p}");
            }
        }
    }

    #[test]
    fn node_weight_formula() {
        assert_eq!(node_weight(2, 0, 0, 1).unwrap(), 3);
        assert_eq!(node_weight(2, 0, 0, 2).unwrap(), 0);
        assert_eq!(node_weight(2, 1, 0, 1).unwrap(), 4);
        assert!(node_weight(1, 0, 0, 3).is_err());
    }

    #[test]
    fn case11_component_divisors() {
        let m = examples::case11_model(1, 2);
        let q = associated_extension(&m, 0).unwrap();
        let zq = component_ram_divisor(&m, &q).unwrap();
        assert_eq!(zq.total_degree, 0);
        assert!(zq.line_part.entries.is_empty());

        let line = associated_extension(&m, 1).unwrap();
        let zm = component_ram_divisor(&m, &line).unwrap();
        assert_eq!(zm.total_degree, 3);
        // Z_M = div(H) with H = y^3 + 6 y^2 z + 3 y z^2 + 2 z^3 on (a:b)
        let h = parse_binary("u^3+6*u^2*v+3*u*v^2+2*v^3").unwrap();
        let expect = BinaryDivisor::of_form(&h).unwrap();
        assert_eq!(zm.line_part, expect);
    }

    #[test]
    fn case11_limit_divisor() {
        let m = examples::case11_model(1, 2);
        let rep = limit_divisor(&m).unwrap();
        assert_eq!(rep.connecting[0][1], 1);
        assert_eq!(rep.node_weights, vec![3, 3]);
        assert_eq!(rep.total_weight, 9);
        assert!(rep.checks.cor8 && rep.checks.global_degree && rep.checks.prop6);
        // the smooth part of Z lives on M and has degree 3
        let smooth_deg: usize = rep
            .z
            .iter()
            .filter(|p| !matches!(p.location, Location::Node { .. }))
            .map(|p| p.degree())
            .sum();
        assert_eq!(smooth_deg, 3);
    }

    #[test]
    fn case11_degenerate_position_moves_weight_to_node() {
        // c=(1,1): H = (y+z)^3 concentrates at the branch of p2 on M, so the
        // node absorbs it: Z = 3 p1 + 6 p2
        let m = examples::case11_model(1, 1);
        let rep = limit_divisor(&m).unwrap();
        assert_eq!(rep.node_weights, vec![3, 6]);
        assert_eq!(rep.total_weight, 9);
        assert_eq!(rep.z.len(), 2);
    }

    #[test]
    fn conic_limit_divisor_empty() {
        let m = examples::model("conic", &[]).unwrap();
        let rep = limit_divisor(&m).unwrap();
        assert!(rep.z.is_empty());
        assert_eq!(rep.total_weight, 0);
        let cert = cor9_predicate(&m, &rep, 0).unwrap();
        assert!(cert.smooth);
        assert_eq!(cert.eps_i, vec![0, 1, 2]);
        assert_eq!(cert.eps_j, vec![0, 1, 2]);
        assert_eq!(cert.l_ij, 2);
    }

    #[test]
    fn case11_cor9_false_at_nodes() {
        let m = examples::case11_model(1, 2);
        let rep = limit_divisor(&m).unwrap();
        for node in 0..2 {
            let cert = cor9_predicate(&m, &rep, node).unwrap();
            assert!(!cert.smooth);
            let r = 2;
            for h in 0..=r {
                assert!((cert.eps_i[h] + cert.eps_j[r - h]) as i64 >= cert.l_ij);
            }
        }
    }

    #[test]
    fn case12_conditions() {
        let m = examples::model("conic", &[]).unwrap();
        let rep = limit_divisor(&m).unwrap();
        assert!(case12_check(&m, &rep).iter().all(|c| c.pass));

        let m = examples::case11_model(1, 2);
        let rep = limit_divisor(&m).unwrap();
        let conds = case12_check(&m, &rep);
        assert!(conds[0].pass);
        assert!(!conds[1].pass, "{:?}", conds[1]);
    }

    #[test]
    fn weierstrass4_limit_divisor() {
        let m = examples::model("weierstrass4", &[]).unwrap();
        let rep = limit_divisor(&m).unwrap();
        assert_eq!(rep.total_weight, 24);
        assert_eq!(rep.connecting[0][1], 1);
        // the first node sits at a flex of the cubic's aspect, so it absorbs
        // a branch weight on top of the (r - l)(r + 1) = 3 node contribution
        assert_eq!(rep.node_weights, vec![4, 3, 3]);
        assert_eq!(rep.components[0].total_degree, 9);
        assert_eq!(rep.components[1].total_degree, 6);
        // 24 = deg Z_N + deg Z_L + (r - l)(r + 1) per node
        assert_eq!(9 + 6 + 3 * 3, 24);
    }
}
