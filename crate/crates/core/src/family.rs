//! The degenerating family G = q_1 ... q_t + t*h, its special fibre
//! (components, nodes, intersection matrix), the twist calculus, divisorial
//! valuations along components, and restriction of sections to components.

use num_traits::{One, Zero};

use crate::binary::BinaryForm;
use crate::error::{Error, Result};
use crate::matrix::QMat;
use crate::scalar::{ProjPoint, Rat};
use crate::ternary::TernaryForm;
use crate::tjet::EXACT;

/// One rational component of the special fibre.
#[derive(Debug, Clone)]
pub struct ComponentSpec {
    pub name: String,
    /// Irreducible t-free equation q_i of degree d_i.
    pub equation: TernaryForm,
    /// Rational parametrization (u:v) -> (x:y:z), three forms of degree d_i.
    pub parametrization: [BinaryForm; 3],
    /// Parameter pairs of self-nodes (both branches on this component).
    pub self_nodes: Vec<(ProjPoint, ProjPoint)>,
}

impl ComponentSpec {
    pub fn degree(&self) -> usize {
        self.equation.degree()
    }
}

/// A node joining two distinct components.
#[derive(Debug, Clone)]
pub struct Node {
    pub components: (usize, usize),
    /// Branch parameters: points.0 on components.0, points.1 on components.1.
    pub points: (ProjPoint, ProjPoint),
    /// Normalized plane coordinates of the node.
    pub plane: [Rat; 3],
}

impl Node {
    /// Branch parameter of this node on component i; None if i not incident.
    pub fn branch_on(&self, i: usize) -> Option<&ProjPoint> {
        if self.components.0 == i {
            Some(&self.points.0)
        } else if self.components.1 == i {
            Some(&self.points.1)
        } else {
            None
        }
    }
}

/// Twist class modulo the all-ones vector, canonicalized to maximum entry 0
/// (so the untwisted class is all zeros and proper subtwists are negative).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistVector(Vec<i64>);

impl TwistVector {
    pub fn new(mut v: Vec<i64>) -> Self {
        let m = v.iter().copied().max().unwrap_or(0);
        for x in &mut v {
            *x -= m;
        }
        TwistVector(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn zero(t: usize) -> Self {
        TwistVector(vec![0; t])
    }
}

impl std::fmt::Display for TwistVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Split a twist into disjoint effective parts with n ≡ E - F modulo all-ones
/// and both parts zero at component i.
pub fn decompose_twist(n: &[i64], i: usize) -> (Vec<i64>, Vec<i64>) {
    let shift = n[i];
    let mut e = vec![0i64; n.len()];
    let mut f = vec![0i64; n.len()];
    for (j, &x) in n.iter().enumerate() {
        let m = x - shift;
        if m > 0 {
            e[j] = m;
        } else {
            f[j] = -m;
        }
    }
    (e, f)
}

#[derive(Debug, Clone)]
pub struct FamilyModel {
    pub components: Vec<ComponentSpec>,
    /// Perturbation h: t-free form of degree d = sum d_i.
    pub perturbation: TernaryForm,
    pub nodes: Vec<Node>,
    /// delta[i][j] = #nodes joining C_i, C_j for i != j; delta[i][i] makes
    /// rows sum to zero.
    pub delta: Vec<Vec<i64>>,
    /// Working t-precision N.
    pub precision: usize,
    /// Degree of the linear system.
    pub degree_k: usize,
    /// Basis of V_eta: forms of degree k with t-jet coefficients.
    pub basis: Vec<TernaryForm>,
    product_q: TernaryForm,
    total: TernaryForm,
}

/// Normalized plane point hit by a parametrization at a parameter value.
pub fn plane_point(phi: &[BinaryForm; 3], p: &ProjPoint) -> Result<[Rat; 3]> {
    let vals = [phi[0].eval(p), phi[1].eval(p), phi[2].eval(p)];
    let lead = vals
        .iter()
        .find(|v| !v.is_zero())
        .ok_or_else(|| Error::BadFamily("parametrization vanishes at a node parameter".into()))?
        .clone();
    Ok([&vals[0] / &lead, &vals[1] / &lead, &vals[2] / &lead])
}

pub fn default_precision(rank: usize, d: usize) -> usize {
    8 * rank * d + 16
}

impl FamilyModel {
    /// Assemble a model. Raw nodes are ((component, parameter), (component,
    /// parameter)) pairs; plane coordinates and the intersection matrix are
    /// derived. Structural impossibilities error immediately; geometric
    /// checks are left to `validate`.
    pub fn build(
        components: Vec<ComponentSpec>,
        perturbation: TernaryForm,
        raw_nodes: Vec<((usize, ProjPoint), (usize, ProjPoint))>,
        precision: Option<usize>,
        degree_k: usize,
        basis: Vec<TernaryForm>,
    ) -> Result<FamilyModel> {
        let t = components.len();
        if t == 0 {
            return Err(Error::BadFamily("no components".into()));
        }
        if basis.is_empty() {
            return Err(Error::BadFamily("empty linear-system basis".into()));
        }
        let d: usize = components.iter().map(|c| c.degree()).sum();
        let mut nodes = Vec::with_capacity(raw_nodes.len());
        let mut delta = vec![vec![0i64; t]; t];
        for ((i, pi), (j, pj)) in raw_nodes {
            if i >= t || j >= t {
                return Err(Error::BadFamily("node references unknown component".into()));
            }
            if i == j {
                return Err(Error::BadFamily(
                    "self-nodes belong in the component's own list".into(),
                ));
            }
            let plane = plane_point(&components[i].parametrization, &pi)?;
            delta[i][j] += 1;
            delta[j][i] += 1;
            nodes.push(Node {
                components: (i, j),
                points: (pi, pj),
                plane,
            });
        }
        for i in 0..t {
            let off: i64 = (0..t).filter(|&j| j != i).map(|j| delta[i][j]).sum();
            delta[i][i] = -off;
        }
        let mut product_q = TernaryForm::from_plane_terms(0, &[(0, 0, Rat::one())]);
        for c in &components {
            product_q = product_q.mul(&c.equation);
        }
        let total = product_q.add(&perturbation.shift_up(1));
        let precision = precision.unwrap_or_else(|| default_precision(basis.len(), d));
        Ok(FamilyModel {
            components,
            perturbation,
            nodes,
            delta,
            precision,
            degree_k,
            basis,
            product_q,
            total,
        })
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Total plane degree d.
    pub fn total_degree(&self) -> usize {
        self.product_q.degree()
    }

    /// Rank + 1 of the linear system.
    pub fn rank_plus_one(&self) -> usize {
        self.basis.len()
    }

    /// The family equation G = q_1 ... q_t + t*h.
    pub fn total_form(&self) -> &TernaryForm {
        &self.total
    }

    pub fn product_of_equations(&self) -> &TernaryForm {
        &self.product_q
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    /// deg_{C_j} of O(kH + sum n_i C_i): k d_j + sum_i n_i delta_ij.
    pub fn multidegree(&self, n: &[i64]) -> Vec<i64> {
        let t = self.num_components();
        assert_eq!(n.len(), t);
        (0..t)
            .map(|j| {
                self.degree_k as i64 * self.components[j].degree() as i64
                    + (0..t).map(|i| n[i] * self.delta[i][j]).sum::<i64>()
            })
            .collect()
    }

    /// Geometric checks; errors collect every violation, the Ok value lists
    /// non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut errors: Vec<String> = vec![];
        let mut warnings: Vec<String> = vec![];
        let d = self.total_degree();

        for c in &self.components {
            let di = c.degree();
            if !c.equation.is_plane() {
                errors.push(format!("component {}: equation must be t-free", c.name));
                continue;
            }
            if c.equation.is_zero() {
                errors.push(format!("component {}: zero equation", c.name));
                continue;
            }
            let e = c.parametrization[0].degree();
            if c.parametrization.iter().any(|f| f.degree() != e) {
                errors.push(format!(
                    "component {}: parametrization coordinates have unequal degrees",
                    c.name
                ));
                continue;
            }
            if e != di {
                errors.push(format!(
                    "component {}: parametrization degree {} does not match plane degree {}",
                    c.name, e, di
                ));
            }
            // nonconstant map: coordinate forms span rank >= 2
            let rows: Vec<Vec<Rat>> = c
                .parametrization
                .iter()
                .map(|f| (0..=e).map(|k| f.coeff(k)).collect())
                .collect();
            if QMat::from_rows(rows).rank() < 2 {
                errors.push(format!("component {}: parametrization is constant", c.name));
            }
            match c.equation.pullback(&c.parametrization) {
                Ok(pb) if pb.is_zero() => {}
                Ok(_) => errors.push(format!(
                    "component {}: q does not vanish on its parametrization",
                    c.name
                )),
                Err(e) => errors.push(format!("component {}: {}", c.name, e)),
            }
            // rational nodal curve of degree d_i: all (d_i-1)(d_i-2)/2
            // singularities must be declared rational self-nodes
            let expected = if di >= 2 { (di - 1) * (di - 2) / 2 } else { 0 };
            if c.self_nodes.len() != expected {
                errors.push(format!(
                    "component {}: degree {} rational curve needs {} self-nodes, {} declared",
                    c.name,
                    di,
                    expected,
                    c.self_nodes.len()
                ));
            }
            for (a, b) in &c.self_nodes {
                if a == b {
                    errors.push(format!(
                        "component {}: self-node branches coincide at {}",
                        c.name, a
                    ));
                    continue;
                }
                match (
                    plane_point(&c.parametrization, a),
                    plane_point(&c.parametrization, b),
                ) {
                    (Ok(pa), Ok(pb)) if pa == pb => {}
                    (Ok(_), Ok(_)) => errors.push(format!(
                        "component {}: self-node branches {} and {} map to different plane points",
                        c.name, a, b
                    )),
                    _ => errors.push(format!(
                        "component {}: parametrization undefined at a self-node branch",
                        c.name
                    )),
                }
            }
        }
        if !errors.is_empty() {
            return Err(Error::Validation(errors));
        }

        // inter-component incidence: q_j pulled back to C_i must vanish
        // exactly at the declared node branches, to first order each
        for i in 0..self.num_components() {
            for j in 0..self.num_components() {
                if i == j {
                    continue;
                }
                let ci = &self.components[i];
                let pb = self.components[j]
                    .equation
                    .pullback(&ci.parametrization)?;
                if pb.is_zero() {
                    errors.push(format!(
                        "components {} and {} share a common factor",
                        ci.name, self.components[j].name
                    ));
                    continue;
                }
                let mut expected = BinaryForm::new(vec![Rat::one()], 0);
                for node in &self.nodes {
                    if node.components == (i, j) {
                        expected = expected.mul(&BinaryForm::vanishing_at(&node.points.0));
                    } else if node.components == (j, i) {
                        expected = expected.mul(&BinaryForm::vanishing_at(&node.points.1));
                    }
                }
                // pb must be a nonzero scalar multiple of the node product
                let ok = pb.degree() == expected.degree() && {
                    let (_, p1) = pb.primitive().unwrap();
                    let (_, p2) = expected.primitive().unwrap();
                    p1 == p2
                };
                if !ok {
                    errors.push(format!(
                        "intersection of {} and {} does not match the declared nodes \
                         (q pullback {}, node product {})",
                        ci.name,
                        self.components[j].name,
                        pb.render("u", "v"),
                        expected.render("u", "v")
                    ));
                }
            }
        }

        // node plane points consistent from both sides
        for node in &self.nodes {
            let (i, j) = node.components;
            let pj = plane_point(&self.components[j].parametrization, &node.points.1);
            match pj {
                Ok(p) if p == node.plane => {}
                Ok(_) => errors.push(format!(
                    "node between {} and {}: branch points map to different plane points",
                    self.components[i].name, self.components[j].name
                )),
                Err(e) => errors.push(format!("node: {e}")),
            }
        }

        // perturbation checks
        if !self.perturbation.is_plane() {
            errors.push("perturbation must be t-free".into());
        } else if self.perturbation.is_zero() {
            errors.push("perturbation is zero: the family does not smooth the fibre".into());
        } else if self.perturbation.degree() != d {
            errors.push(format!(
                "perturbation degree {} != total degree {}",
                self.perturbation.degree(),
                d
            ));
        } else {
            for c in &self.components {
                match self.perturbation.pullback(&c.parametrization) {
                    Ok(pb) if pb.is_zero() => errors.push(format!(
                        "perturbation vanishes identically on component {}",
                        c.name
                    )),
                    Ok(_) => {}
                    Err(e) => errors.push(format!("perturbation: {e}")),
                }
            }
            for node in &self.nodes {
                if let Ok(v) = self.perturbation.eval_plane(&node.plane) {
                    if v.is_zero() {
                        // the total space is singular there; downstream
                        // computations remain exact, so this is advisory
                        warnings.push(format!(
                            "perturbation vanishes at the node of {} and {}: \
                             the total space is singular there",
                            self.components[node.components.0].name,
                            self.components[node.components.1].name
                        ));
                    }
                }
            }
            for c in &self.components {
                for (a, _) in &c.self_nodes {
                    let p = plane_point(&c.parametrization, a).unwrap();
                    if let Ok(v) = self.perturbation.eval_plane(&p) {
                        if v.is_zero() {
                            warnings.push(format!(
                                "perturbation vanishes at a self-node of {}",
                                c.name
                            ));
                        }
                    }
                }
            }
        }

        // linear system basis: degree k, jointly independent on the fibre
        let k = self.degree_k;
        for (a, f) in self.basis.iter().enumerate() {
            if f.degree() != k {
                errors.push(format!("basis element {a} has degree {}", f.degree()));
            }
        }
        if errors.is_empty() {
            let mut rows: Vec<Vec<Rat>> = vec![];
            for f in &self.basis {
                let f0 = f.at_t0().map_err(|_| {
                    Error::Validation(vec!["basis coefficient precision is zero".into()])
                })?;
                let mut row: Vec<Rat> = vec![];
                for c in &self.components {
                    let pb = f0.pullback(&c.parametrization)?;
                    for idx in 0..=pb.degree() {
                        row.push(pb.coeff(idx));
                    }
                }
                rows.push(row);
            }
            let rank = QMat::from_rows(rows).rank();
            if rank < self.basis.len() {
                errors.push(format!(
                    "linear-system basis is dependent on the special fibre (rank {rank})"
                ));
            }
        }

        if errors.is_empty() {
            Ok(warnings)
        } else {
            Err(Error::Validation(errors))
        }
    }

    /// Divisorial valuation of a family element along C_i, computed by
    /// stripping t-powers and rewriting q_i via q_1...q_t = -t*h (mod G).
    /// Errors with PrecisionExhausted { available } when only a lower bound
    /// is certified.
    pub fn valuation(&self, elem: &TernaryForm, i: usize) -> Result<usize> {
        if elem.is_zero() && elem.prec() == EXACT {
            return Err(Error::ZeroInput);
        }
        let mut x = elem.clone();
        let mut v: usize = 0;
        let others = self.product_without(i);
        let bound = self.precision + 2;
        for _ in 0..=bound {
            if x.is_zero() && x.prec() == EXACT {
                // the element is zero in the family ring (a multiple of G)
                return Err(Error::ZeroInput);
            }
            // strip explicit t-powers; on a jet that is zero within precision
            // this drains the precision and certifies only a lower bound
            while let Ok(y) = x.shift_down(1) {
                x = y;
                v += 1;
                if v > bound {
                    return Err(Error::IterationBound(bound, "valuation"));
                }
            }
            let x0 = x
                .at_t0()
                .map_err(|_| Error::PrecisionExhausted { available: v })?;
            let pb = x0.pullback(&self.components[i].parametrization)?;
            if !pb.is_zero() {
                return Ok(v);
            }
            // q_i divides x0; rewrite x = q_i y + t x' as
            // t (x' * prod_{m != i} q_m - h y) / prod_{m != i} q_m  (mod G)
            let y = x0.div_exact_plane(&self.components[i].equation)?;
            let xp = x.sub(&x0).shift_down(1)?;
            x = xp.mul(&others).sub(&self.perturbation.mul(&y));
            v += 1;
        }
        Err(Error::IterationBound(bound, "valuation"))
    }

    fn product_without(&self, i: usize) -> TernaryForm {
        let mut p = TernaryForm::from_plane_terms(0, &[(0, 0, Rat::one())]);
        for (m, c) in self.components.iter().enumerate() {
            if m != i {
                p = p.mul(&c.equation);
            }
        }
        p
    }

    /// Restriction of a section of the n-twisted sheaf to component i, as a
    /// binary form on the parameter line. Returns the zero form when the
    /// section vanishes on C_i; the zero form's degree tag is the multidegree
    /// when nonnegative, else 0.
    pub fn restrict_section(
        &self,
        elem: &TernaryForm,
        n: &[i64],
        i: usize,
    ) -> Result<BinaryForm> {
        let t_comps = self.num_components();
        assert_eq!(n.len(), t_comps);
        let a = n.iter().copied().min().unwrap();
        let mut x = elem.clone();
        for (m, c) in self.components.iter().enumerate() {
            let b = (n[m] - a) as usize;
            for _ in 0..b {
                x = x.mul(&c.equation);
            }
        }
        if a < 0 {
            for _ in 0..(-a) {
                let x0 = x.at_t0()?;
                if x0.is_zero() {
                    x = x.shift_down(1)?;
                    continue;
                }
                // x0 must be divisible by the full fibre product
                let mut w0 = x0;
                for c in &self.components {
                    w0 = w0.div_exact_plane(&c.equation).map_err(|_| {
                        Error::NotASection(format!(
                            "element is not divisible by t at twist {:?}",
                            n
                        ))
                    })?;
                }
                x = x.sub(&w0.mul(&self.total)).shift_down(1)?;
            }
        } else if a > 0 {
            x = x.shift_up(a as usize);
        }
        let p0 = x.at_t0()?;
        let mut b_form = p0.pullback(&self.components[i].parametrization)?;
        let bi = (n[i] - a) as usize;
        if bi > 0 {
            let hphi = self
                .perturbation
                .pullback(&self.components[i].parametrization)?;
            for _ in 0..bi {
                if b_form.is_zero() {
                    break;
                }
                b_form = b_form.div_exact(&hphi).map_err(|_| {
                    Error::IdentityFailure(
                        "restriction is not divisible by the perturbation pullback".into(),
                    )
                })?;
            }
        }
        let want = self.degree_k as i64 * self.components[i].degree() as i64
            + (0..t_comps).map(|m| n[m] * self.delta[m][i]).sum::<i64>();
        if want < 0 {
            if !b_form.is_zero() {
                return Err(Error::IdentityFailure(
                    "nonzero restriction at negative degree".into(),
                ));
            }
            return Ok(BinaryForm::zero(0));
        }
        if b_form.is_zero() {
            return Ok(BinaryForm::zero(want as usize));
        }
        if b_form.degree() != want as usize {
            return Err(Error::IdentityFailure(format!(
                "restriction degree {} != multidegree {}",
                b_form.degree(),
                want
            )));
        }
        Ok(b_form)
    }

    /// Linear combination of the V_eta basis with t-jet coefficients.
    pub fn combine(&self, coeffs: &[crate::tjet::TJet]) -> TernaryForm {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut out = TernaryForm::zero(self.degree_k);
        for (c, f) in coeffs.iter().zip(&self.basis) {
            out = out.add(&f.scale_jet(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_binary, parse_ternary, parse_ternary_plane};
    use crate::scalar::rat_i;
    use crate::tjet::TJet;

    /// The cubic family F = x(y^2+x^2-z^2), h = c1 y^3 + c2 y^2 z.
    pub fn case11(c1: i64, c2: i64) -> FamilyModel {
        let q = ComponentSpec {
            name: "Q".into(),
            equation: parse_ternary_plane("y^2+x^2-z^2").unwrap(),
            parametrization: [
                parse_binary("2*u*v").unwrap(),
                parse_binary("v^2-u^2").unwrap(),
                parse_binary("v^2+u^2").unwrap(),
            ],
            self_nodes: vec![],
        };
        let m = ComponentSpec {
            name: "M".into(),
            equation: parse_ternary_plane("x").unwrap(),
            parametrization: [
                BinaryForm::zero(1),
                parse_binary("u").unwrap(),
                parse_binary("v").unwrap(),
            ],
            self_nodes: vec![],
        };
        let h = parse_ternary_plane(&format!("{c1}*y^3+{c2}*y^2*z")).unwrap();
        FamilyModel::build(
            vec![q, m],
            h,
            vec![
                ((0, ProjPoint::from_ints(0, 1)), (1, ProjPoint::from_ints(1, 1))),
                ((0, ProjPoint::from_ints(1, 0)), (1, ProjPoint::from_ints(1, -1))),
            ],
            None,
            1,
            vec![
                parse_ternary("x").unwrap(),
                parse_ternary("y").unwrap(),
                parse_ternary("z").unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn case11_validates() {
        let m = case11(1, 2);
        let warnings = m.validate().unwrap();
        assert!(warnings.is_empty(), "{warnings:?}");
        assert_eq!(m.delta, vec![vec![-2, 2], vec![2, -2]]);
        assert_eq!(m.total_degree(), 3);
    }

    #[test]
    fn case11_c11_warns_at_node() {
        // h = y^3 + y^2 z vanishes at p2 = (0:1:-1): advisory, not fatal
        let m = case11(1, 1);
        let warnings = m.validate().unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("singular"));
    }

    #[test]
    fn h_on_component_is_fatal() {
        let mut m = case11(1, 2);
        m.perturbation = parse_ternary_plane("x*y^2").unwrap();
        let err = m.validate().unwrap_err();
        match err {
            Error::Validation(msgs) => {
                assert!(msgs.iter().any(|s| s.contains("vanishes identically")))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_node_is_fatal() {
        let q = ComponentSpec {
            name: "Q".into(),
            equation: parse_ternary_plane("y^2+x^2-z^2").unwrap(),
            parametrization: [
                parse_binary("2*u*v").unwrap(),
                parse_binary("v^2-u^2").unwrap(),
                parse_binary("v^2+u^2").unwrap(),
            ],
            self_nodes: vec![],
        };
        let m = ComponentSpec {
            name: "M".into(),
            equation: parse_ternary_plane("x").unwrap(),
            parametrization: [
                BinaryForm::zero(1),
                parse_binary("u").unwrap(),
                parse_binary("v").unwrap(),
            ],
            self_nodes: vec![],
        };
        let model = FamilyModel::build(
            vec![q, m],
            parse_ternary_plane("y^3+2*y^2*z").unwrap(),
            vec![((0, ProjPoint::from_ints(0, 1)), (1, ProjPoint::from_ints(1, 1)))],
            None,
            1,
            vec![parse_ternary("x").unwrap(), parse_ternary("y").unwrap()],
        )
        .unwrap();
        assert!(model.validate().is_err());
    }

    #[test]
    fn multidegree_examples() {
        let m = case11(1, 2);
        assert_eq!(m.multidegree(&[0, 0]), vec![2, 1]);
        assert_eq!(m.multidegree(&[0, -1]), vec![0, 3]);
        assert_eq!(m.multidegree(&[1, 1]), vec![2, 1]);
        // conservation
        for n in [[2, -3], [5, 0], [-1, 4]] {
            assert_eq!(m.multidegree(&n).iter().sum::<i64>(), 3);
        }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose_twist(&[0, -1], 0), (vec![0, 0], vec![0, 1]));
        assert_eq!(decompose_twist(&[0, 2, -1], 0), (vec![0, 2, 0], vec![0, 0, 1]));
        assert_eq!(decompose_twist(&[1, 1], 0), (vec![0, 0], vec![0, 0]));
        assert_eq!(decompose_twist(&[1, 1], 1), (vec![0, 0], vec![0, 0]));
    }

    #[test]
    fn valuation_examples() {
        let m = case11(1, 2);
        let x = parse_ternary("x").unwrap();
        let y = parse_ternary("y").unwrap();
        let t_x = x.shift_up(1);
        // v_M(x) = 1 via x*q = -t*h
        assert_eq!(m.valuation(&x, 1).unwrap(), 1);
        assert_eq!(m.valuation(&x, 0).unwrap(), 0);
        assert_eq!(m.valuation(&y, 0).unwrap(), 0);
        assert_eq!(m.valuation(&y, 1).unwrap(), 0);
        // v(t * elem) = 1 + v(elem)
        assert_eq!(m.valuation(&t_x, 1).unwrap(), 2);
        // v(t) itself: represent t as t * (nonvanishing form)? use t*y
        assert_eq!(m.valuation(&y.shift_up(1), 0).unwrap(), 1);
    }

    #[test]
    fn restrict_examples() {
        let m = case11(1, 2);
        let x = parse_ternary("x").unwrap();
        let y = parse_ternary("y").unwrap();
        // y at (0,0) on M: the form u (chart (0:u:v) with y -> u)
        let r = m.restrict_section(&y, &[0, 0], 1).unwrap();
        assert_eq!(r, parse_binary("u").unwrap());
        // x at (0,0) on M: zero of degree 1
        let r = m.restrict_section(&x, &[0, 0], 1).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.degree(), 1);
        // x at (0,-1) on M: -h∘phi_M = -(a^3 + 2 a^2 b) in chart (u,v)
        let r = m.restrict_section(&x, &[0, -1], 1).unwrap();
        assert_eq!(r, parse_binary("-u^3-2*u^2*v").unwrap());
        // x at (0,-1) on Q: nonzero constant
        let r = m.restrict_section(&x, &[0, -1], 0).unwrap();
        assert_eq!(r.degree(), 0);
        assert_eq!(r.coeff(0), rat_i(-1));
        // y at (0,-1): not a section (v_M(y) = 0 < 1)
        assert!(matches!(
            m.restrict_section(&y, &[0, -1], 1),
            Err(Error::NotASection(_))
        ));
    }

    #[test]
    fn restriction_zero_iff_valuation() {
        let m = case11(1, 2);
        let elems = [
            parse_ternary("x").unwrap(),
            parse_ternary("y").unwrap(),
            parse_ternary("z").unwrap(),
            parse_ternary("x+y").unwrap(),
        ];
        for elem in &elems {
            for n in [[0i64, 0], [1, 1], [2, 2]] {
                for i in 0..2 {
                    let v = m.valuation(elem, i).unwrap() as i64;
                    if v < -n[i] {
                        continue; // not a section
                    }
                    let r = m.restrict_section(elem, &n, i).unwrap();
                    assert_eq!(r.is_zero(), v >= -n[i] + 1, "elem on {i} at {n:?}");
                }
            }
        }
    }

    #[test]
    fn combine_builds_elements() {
        let m = case11(1, 2);
        let c = vec![
            TJet::constant(rat_i(2)),
            TJet::zero(EXACT),
            TJet::monomial(rat_i(1), 1),
        ];
        let f = m.combine(&c);
        assert_eq!(f.coeff(1, 0).coeff(0), rat_i(2)); // 2x
        assert_eq!(f.coeff(0, 0).coeff(1), rat_i(1)); // t*z
    }
}
