//! The saturated section lattice V_L = V_eta ∩ H^0(C, L) at a twist, its
//! restriction to the special fibre (the limit linear system), the associated
//! extension of each component, and connecting numbers.

use num_traits::{One, Zero};

use crate::binary::BinaryForm;
use crate::error::{Error, Result};
use crate::family::{FamilyModel, TwistVector};
use crate::matrix::QMat;
use crate::scalar::Rat;
use crate::tjet::TJet;

/// R-basis of the saturated lattice at a twist class, expressed in the fixed
/// V_eta basis. The columns live at the internal working representative
/// `n_work` of the class (all entries <= 0), which makes every lattice
/// element a polynomial in t.
#[derive(Debug, Clone)]
pub struct LatticeBasis {
    pub class: TwistVector,
    pub n_work: Vec<i64>,
    /// columns[c][a] = coefficient of basis element a in lattice column c.
    pub columns: Vec<Vec<TJet>>,
}

#[derive(Debug, Clone)]
pub struct ComponentRestriction {
    /// Multidegree of the twisted sheaf on this component (may be negative).
    pub degree: i64,
    /// Restrictions of the lattice columns; zero forms when the degree is
    /// negative or the whole lattice vanishes on the component.
    pub forms: Vec<BinaryForm>,
    pub injective: bool,
    pub identically_zero: bool,
}

#[derive(Debug, Clone)]
pub struct LimitSystem {
    pub class: TwistVector,
    pub per_component: Vec<ComponentRestriction>,
}

#[derive(Debug, Clone)]
pub struct ExtensionRecord {
    pub component: usize,
    pub class: TwistVector,
    pub basis: LatticeBasis,
    pub limit: LimitSystem,
}

/// The representative of the class of n at which all lattice elements are
/// certified polynomial: shift the maximum entry to 0, then subtract
/// floor(k/d) more (an element with a t-denominator of that depth would need
/// the full fibre product to divide a degree-k form that many times).
fn working_rep(model: &FamilyModel, n: &[i64]) -> Vec<i64> {
    let m = n.iter().copied().max().unwrap();
    let c0 = (model.degree_k / model.total_degree()) as i64;
    n.iter().map(|&x| x - m - c0).collect()
}

/// Restrictions of one lattice element to every component, flattened into a
/// single rational coefficient row (components with negative degree
/// contribute nothing).
fn joint_restriction_row(
    model: &FamilyModel,
    elem: &crate::ternary::TernaryForm,
    n_work: &[i64],
    degrees: &[i64],
) -> Result<Vec<Rat>> {
    let mut row = Vec::new();
    for i in 0..model.num_components() {
        if degrees[i] < 0 {
            continue;
        }
        let r = model.restrict_section(elem, n_work, i)?;
        for k in 0..=(degrees[i] as usize) {
            row.push(r.coeff(k));
        }
    }
    Ok(row)
}

/// Compute the saturated lattice at a twist (any representative).
pub fn saturate_lattice(model: &FamilyModel, n: &[i64]) -> Result<LatticeBasis> {
    let rank = model.rank_plus_one();
    let n_work = working_rep(model, n);
    let degrees = model.multidegree(&n_work);
    let c = (-n_work.iter().copied().min().unwrap()) as usize;
    let mut columns: Vec<Vec<TJet>> = (0..rank)
        .map(|a| {
            (0..rank)
                .map(|b| {
                    if a == b {
                        TJet::monomial(Rat::one(), c)
                    } else {
                        TJet::zero(crate::tjet::EXACT)
                    }
                })
                .collect()
        })
        .collect();

    let bound = rank * (c + 2) + model.num_components() + 8;
    for _ in 0..=bound {
        let rows: Vec<Vec<Rat>> = columns
            .iter()
            .map(|col| joint_restriction_row(model, &model.combine(col), &n_work, &degrees))
            .collect::<Result<_>>()?;
        // kernel of the restriction map on the fibre: combinations divisible
        // by t as sections
        let width = rows[0].len();
        let mut m = QMat::zero(width, rank);
        for (cidx, row) in rows.iter().enumerate() {
            for (ridx, v) in row.iter().enumerate() {
                m.set(ridx, cidx, v.clone());
            }
        }
        let kernel = m.kernel();
        if kernel.is_empty() {
            return Ok(LatticeBasis {
                class: TwistVector::new(n.to_vec()),
                n_work,
                columns,
            });
        }
        for combo in &kernel {
            // each kernel basis vector has a unit entry at a distinct free
            // column; replace that column by the combination divided by t
            let pivot = combo
                .iter()
                .rposition(|v| v.is_one())
                .expect("kernel basis has a unit coordinate");
            let mut newcol = vec![TJet::zero(crate::tjet::EXACT); rank];
            for (cidx, v) in combo.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for a in 0..rank {
                    newcol[a] = newcol[a].add(&columns[cidx][a].scale(v));
                }
            }
            let divided: Result<Vec<TJet>> =
                newcol.iter().map(|j| j.shift_down(1)).collect();
            columns[pivot] = divided.map_err(|_| {
                Error::IdentityFailure(
                    "saturation produced a section not divisible by t coordinatewise".into(),
                )
            })?;
        }
    }
    Err(Error::IterationBound(bound, "saturate_lattice"))
}

/// Restriction of the saturated lattice to every component.
pub fn limit_at_twist(model: &FamilyModel, n: &[i64]) -> Result<LimitSystem> {
    let basis = saturate_lattice(model, n)?;
    limit_of_basis(model, &basis)
}

pub fn limit_of_basis(model: &FamilyModel, basis: &LatticeBasis) -> Result<LimitSystem> {
    let rank = model.rank_plus_one();
    let degrees = model.multidegree(&basis.n_work);
    let mut per_component = Vec::with_capacity(model.num_components());
    for i in 0..model.num_components() {
        let forms: Vec<BinaryForm> = basis
            .columns
            .iter()
            .map(|col| model.restrict_section(&model.combine(col), &basis.n_work, i))
            .collect::<Result<_>>()?;
        let identically_zero = forms.iter().all(|f| f.is_zero());
        let injective = if identically_zero {
            false
        } else {
            let width = degrees[i].max(0) as usize + 1;
            let rows: Vec<Vec<Rat>> = forms
                .iter()
                .map(|f| (0..width).map(|k| f.coeff(k)).collect())
                .collect();
            QMat::from_rows(rows).rank() == rank
        };
        per_component.push(ComponentRestriction {
            degree: degrees[i],
            forms,
            injective,
            identically_zero,
        });
    }
    Ok(LimitSystem {
        class: basis.class.clone(),
        per_component,
    })
}

/// The unique extension associated to component i (the twist class whose
/// limit system is injective on C_i and nowhere identically zero), found by
/// descending from a twist with negative degree on every other component.
pub fn associated_extension(model: &FamilyModel, i: usize) -> Result<ExtensionRecord> {
    let start: Vec<i64> = (0..model.num_components())
        .map(|j| {
            if j == i {
                0
            } else {
                model.degree_k as i64 * model.components[j].degree() as i64 + 1
            }
        })
        .collect();
    associated_extension_from(model, i, start)
}

/// The same descent from a caller-chosen admissible start (every j != i with
/// multidegree forced nonpositive... any start works as long as the loop
/// only ever needs to move down; inadmissible starts are detected).
pub fn associated_extension_from(
    model: &FamilyModel,
    i: usize,
    mut n: Vec<i64>,
) -> Result<ExtensionRecord> {
    let t = model.num_components();
    let rank = model.rank_plus_one();
    let bound = rank * model.degree_k.max(1) * model.total_degree() * t + t + 8;
    for _ in 0..=bound {
        let basis = saturate_lattice(model, &n)?;
        let limit = limit_of_basis(model, &basis)?;
        let stuck: Vec<usize> = (0..t)
            .filter(|&j| j != i && limit.per_component[j].identically_zero)
            .collect();
        if stuck.is_empty() {
            if !limit.per_component[i].injective {
                return Err(Error::IdentityFailure(format!(
                    "associated extension of component {} is not injective there",
                    model.components[i].name
                )));
            }
            return Ok(ExtensionRecord {
                component: i,
                class: limit.class.clone(),
                basis,
                limit,
            });
        }
        for j in stuck {
            n[j] -= 1;
        }
    }
    Err(Error::IterationBound(bound, "associated_extension"))
}

/// Connecting vector l_i. of the associated extensions of i and j:
/// n^(i) - n^(j) shifted to have entry 0 at i. The j-th entry is the
/// connecting number l_ij; the bounds 0 <= l_im <= l_ij are asserted.
pub fn connecting_vector(
    rec_i: &ExtensionRecord,
    rec_j: &ExtensionRecord,
) -> Result<Vec<i64>> {
    let (i, j) = (rec_i.component, rec_j.component);
    let a = rec_i.class.entries();
    let b = rec_j.class.entries();
    let shift = a[i] - b[i];
    let l: Vec<i64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x - y - shift)
        .collect();
    let lij = l[j];
    for (m, &v) in l.iter().enumerate() {
        if v < 0 || v > lij {
            return Err(Error::IdentityFailure(format!(
                "connecting vector bound violated at component {m}: l = {l:?}"
            )));
        }
    }
    Ok(l)
}

/// Full pairwise connecting-number matrix from per-component extensions.
pub fn connecting_matrix(records: &[ExtensionRecord]) -> Result<Vec<Vec<i64>>> {
    let t = records.len();
    let mut out = vec![vec![0i64; t]; t];
    for (i, ri) in records.iter().enumerate() {
        for (j, rj) in records.iter().enumerate() {
            if i == j {
                continue;
            }
            out[i][j] = connecting_vector(ri, rj)?[j];
        }
    }
    Ok(out)
}
