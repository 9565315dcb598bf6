//! Evaluation of conic-norm Lyapunov functions and verification of conic and
//! quadratic Lyapunov inequalities `V_j(A_w x) ≤ V_i(x)` along graph edges.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::certificate::{Certificate, NodeMap};
use crate::error::{Error, Result};
use crate::graph::{expand_labels, LabeledGraph};
use crate::linalg::{definiteness, format_scalar, from_f64, mat_mul, mat_vec, Matrix, Scalar, Vector};
use crate::matrix_set::MatrixSet;
use crate::word::Word;

/// How strictly an inequality must hold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strictness {
    #[default]
    NonStrict,
    /// Strict wherever the transformed side is nonzero.
    OnSupport,
    Strict,
}

/// Which matrix inequality encodes `V_j(Ax) ≤ V_i(x)` for quadratic `V`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Direction {
    /// `V_i(x) = xᵀ P_i x`; the edge condition is `Aᵀ P_j A ≼ P_i`.
    #[default]
    Pre,
    /// `V_i(x) = xᵀ P_i⁻¹ x`; the edge condition is `A P_i Aᵀ ≼ P_j`.
    Post,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub direction: Direction,
    pub strictness: Strictness,
    /// Definiteness tolerance for quadratic checks.
    pub tol: f64,
    /// Check the letter-expanded graph instead of composing labels.
    pub expand: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            direction: Direction::Pre,
            strictness: Strictness::NonStrict,
            tol: crate::linalg::DEFAULT_PD_TOL,
            expand: false,
        }
    }
}

/// `V_p(x) = max_l x_l / p_l`.
pub fn conic_value(p: &Vector, x: &Vector) -> Result<Scalar> {
    if p.dim() != x.dim() {
        return Err(Error::dims(format!("p has {} entries, x has {}", p.dim(), x.dim())));
    }
    if !p.is_positive() {
        return Err(Error::InvalidArgument("p must be strictly positive".into()));
    }
    if !x.is_nonnegative() {
        return Err(Error::InvalidArgument("x must be nonnegative".into()));
    }
    Ok(x.0
        .iter()
        .zip(&p.0)
        .map(|(xl, pl)| xl / pl)
        .max()
        .unwrap_or_else(Scalar::zero))
}

/// `p_target − a·p_source`, after validating the conic preconditions.
pub fn conic_gap(a: &Matrix, p_source: &Vector, p_target: &Vector) -> Result<(Vector, Vector)> {
    if !a.is_nonnegative() {
        return Err(Error::InvalidArgument(
            "conic Lyapunov functions only apply to nonnegative matrices".into(),
        ));
    }
    if !p_source.is_positive() || !p_target.is_positive() {
        return Err(Error::InvalidArgument("certificate vectors must be strictly positive".into()));
    }
    let image = mat_vec(a, p_source)?;
    if image.dim() != p_target.dim() {
        return Err(Error::dims(format!(
            "a·p_source has {} entries, p_target has {}",
            image.dim(),
            p_target.dim()
        )));
    }
    let gap = Vector(p_target.0.iter().zip(&image.0).map(|(t, s)| t - s).collect());
    Ok((image, gap))
}

fn conic_holds(image: &Vector, gap: &Vector, strictness: Strictness) -> bool {
    image.0.iter().zip(&gap.0).all(|(s, g)| match strictness {
        Strictness::NonStrict => !g.is_negative(),
        Strictness::OnSupport => g.is_positive() || (s.is_zero() && g.is_zero()),
        Strictness::Strict => g.is_positive(),
    })
}

/// `V_{p_target}(a x) ≤ V_{p_source}(x)` for all `x ≥ 0`, which holds iff
/// `a·p_source ≤ p_target` entrywise.
pub fn check_conic_inequality(
    a: &Matrix,
    p_source: &Vector,
    p_target: &Vector,
    strictness: Strictness,
) -> Result<bool> {
    let (image, gap) = conic_gap(a, p_source, p_target)?;
    Ok(conic_holds(&image, &gap, strictness))
}

/// Gap matrix and subtracted term: `p_target − aᵀ p_source a` for
/// [`Direction::Pre`], `p_target − a p_source aᵀ` for [`Direction::Post`].
pub fn ellipsoidal_gap(
    a: &Matrix,
    p_source: &Matrix,
    p_target: &Matrix,
    direction: Direction,
) -> Result<(Matrix, Matrix)> {
    for p in [p_source, p_target] {
        if !p.is_square() {
            return Err(Error::NotSquare {
                rows: p.rows(),
                cols: p.cols(),
            });
        }
        if !p.is_symmetric() {
            return Err(Error::Asymmetric);
        }
    }
    let term = match direction {
        Direction::Pre => mat_mul(&mat_mul(&a.transpose(), p_source)?, a)?,
        Direction::Post => mat_mul(&mat_mul(a, p_source)?, &a.transpose())?,
    };
    let gap = p_target.sub(&term)?;
    Ok((gap, term))
}

/// Exact check of the gap; returns whether it holds and the minimum pivot
/// of the gap.
fn ellipsoidal_holds(gap: &Matrix, term: &Matrix, strictness: Strictness, tol: &Scalar) -> Result<(bool, Scalar)> {
    let n = gap.rows();
    let shifted = |m: &Matrix, by: &Scalar| {
        let mut out = m.clone();
        for i in 0..m.rows() {
            let v = out.get(i, i) + by;
            out.set(i, i, v);
        }
        out
    };
    let d = definiteness(gap)?;
    let psd = d.positive_semidefinite || definiteness(&shifted(gap, tol))?.positive_semidefinite;
    let holds = match strictness {
        Strictness::NonStrict => psd,
        Strictness::Strict => definiteness(&shifted(gap, &-tol))?.positive_definite,
        Strictness::OnSupport => {
            let support: Vec<usize> = (0..n).filter(|&i| !term.get(i, i).is_zero()).collect();
            let mut sub = Matrix::zeros(support.len(), support.len());
            for (r, &i) in support.iter().enumerate() {
                for (c, &j) in support.iter().enumerate() {
                    sub.set(r, c, gap.get(i, j).clone());
                }
            }
            psd && definiteness(&shifted(&sub, &-tol))?.positive_definite
        }
    };
    Ok((holds, d.min_pivot))
}

/// Checks the quadratic Lyapunov inequality encoded by the gap of
/// [`ellipsoidal_gap`]. Non-strict accepts a gap that is PSD up to `tol`;
/// strict requires `gap − tol·I ≻ 0`; on-support requires the PSD gap to be
/// definite on the coordinates where the subtracted term has a nonzero
/// diagonal.
pub fn check_ellipsoidal_inequality(
    a: &Matrix,
    p_source: &Matrix,
    p_target: &Matrix,
    direction: Direction,
    strictness: Strictness,
    tol: f64,
) -> Result<bool> {
    let (gap, term) = ellipsoidal_gap(a, p_source, p_target, direction)?;
    Ok(ellipsoidal_holds(&gap, &term, strictness, &tolerance(tol)?)?.0)
}

fn tolerance(tol: f64) -> Result<Scalar> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be nonnegative, got {tol}")));
    }
    from_f64(tol)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCheck {
    pub from: String,
    pub to: String,
    pub label: Word,
    pub holds: bool,
    /// Smallest entry of the conic gap, or smallest pivot of the quadratic gap.
    pub slack: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeCheck {
    pub node: String,
    /// Vector strictly positive, or matrix symmetric positive definite.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCheckReport {
    pub overall: bool,
    pub edges: Vec<EdgeCheck>,
    pub nodes: Vec<NodeCheck>,
}

impl InequalityCheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn lookup<'a, T>(cert: &'a NodeMap<T>, name: &str) -> Result<&'a T> {
    cert.get(name)
        .ok_or_else(|| Error::MissingNode(format!("certificate has no entry for node {name:?}")))
}

/// Checks every edge `i → j` with label `u` against `A_{mirror(u)}`, and
/// every node's certificate entry for positivity.
pub fn verify_certificate(
    g: &LabeledGraph,
    s: &MatrixSet,
    cert: &Certificate,
    opts: VerifyOptions,
) -> Result<InequalityCheckReport> {
    let expanded;
    let g = if opts.expand {
        expanded = expand_labels(g).graph;
        &expanded
    } else {
        g
    };
    if g.alphabet_size() > s.alphabet_size() {
        return Err(Error::dims(format!(
            "graph uses {} letters but only {} matrices were given",
            g.alphabet_size(),
            s.alphabet_size()
        )));
    }
    let n = s.dim();
    let tol = tolerance(opts.tol)?;
    let mut nodes = Vec::with_capacity(g.node_count());
    for name in g.nodes() {
        let holds = match cert {
            Certificate::Conic(c) => {
                let v = lookup(c, name)?;
                if v.dim() != n {
                    return Err(Error::dims(format!("vector for {name:?} has {} entries, expected {n}", v.dim())));
                }
                v.is_positive()
            }
            Certificate::Ellipsoidal(c) => {
                let p = lookup(c, name)?;
                if p.rows() != n || p.cols() != n {
                    return Err(Error::dims(format!(
                        "matrix for {name:?} is {}x{}, expected {n}x{n}",
                        p.rows(),
                        p.cols()
                    )));
                }
                p.is_symmetric() && definiteness(p)?.positive_definite
            }
        };
        nodes.push(NodeCheck {
            node: name.clone(),
            holds,
        });
    }
    let mut edges = Vec::with_capacity(g.edges().len());
    for e in g.edges() {
        let a = s.product(&e.label.mirror())?;
        let (from, to) = (&g.nodes()[e.from], &g.nodes()[e.to]);
        let (holds, slack) = match cert {
            Certificate::Conic(c) => {
                let (vi, vj) = (lookup(c, from)?, lookup(c, to)?);
                if !vi.is_positive() || !vj.is_positive() {
                    (false, None)
                } else {
                    let (image, gap) = conic_gap(&a, vi, vj)?;
                    let slack = gap.0.iter().min().cloned();
                    (conic_holds(&image, &gap, opts.strictness), slack)
                }
            }
            Certificate::Ellipsoidal(c) => {
                let (pi, pj) = (lookup(c, from)?, lookup(c, to)?);
                let (source, target) = match opts.direction {
                    Direction::Pre => (pj, pi),
                    Direction::Post => (pi, pj),
                };
                let (gap, term) = ellipsoidal_gap(&a, source, target, opts.direction)?;
                let (holds, slack) = ellipsoidal_holds(&gap, &term, opts.strictness, &tol)?;
                (holds, Some(slack))
            }
        };
        edges.push(EdgeCheck {
            from: from.clone(),
            to: to.clone(),
            label: e.label.clone(),
            holds,
            slack: slack.as_ref().map(format_scalar).unwrap_or_else(|| "n/a".into()),
        });
    }
    let overall = edges.iter().all(|e| e.holds) && nodes.iter().all(|n| n.holds);
    Ok(InequalityCheckReport {
        overall,
        edges,
        nodes,
    })
}

/// `P ≻ 0` and `A_iᵀ P A_i ≺ P` for every `i`, each tested with
/// [`crate::linalg::is_positive_definite`] at tolerance `tol`.
pub fn verify_common_quadratic(s: &MatrixSet, p: &Matrix, tol: f64) -> Result<bool> {
    if !p.is_square() || p.rows() != s.dim() {
        return Err(Error::dims(format!(
            "P is {}x{} but the family has dimension {}",
            p.rows(),
            p.cols(),
            s.dim()
        )));
    }
    if !p.is_symmetric() {
        return Err(Error::Asymmetric);
    }
    if !crate::linalg::is_positive_definite(p, tol)? {
        return Ok(false);
    }
    for a in s.matrices() {
        let (gap, _) = ellipsoidal_gap(a, p, p, Direction::Pre)?;
        if !crate::linalg::is_positive_definite(&gap, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}
