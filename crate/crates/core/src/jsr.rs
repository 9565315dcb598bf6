//! Brute-force bounds on the joint spectral radius
//! `ρ(Σ) = lim_k max_{|u| = k} ‖A_u‖^{1/k}`, and the smallest scaling `γ`
//! for which the conic Lyapunov inequalities of a path-complete graph are
//! feasible for `Σ/γ`.

use serde::{Serialize, Serializer};

use crate::completeness::check_path_complete;
use crate::error::{Error, Result};
use crate::graph::{expand_labels, LabeledGraph};
use crate::linalg::{FloatMatrix, Scalar};
use crate::matrix_set::MatrixSet;
use crate::word::Word;

/// Largest `m^t` the word enumerations accept.
pub const WORD_CAP: u64 = 1 << 22;
/// Squarings used for each spectral radius estimate.
pub const RADIUS_ITERS: u32 = 40;
pub const DEFAULT_SCALING_TOL: f64 = 1e-6;
pub const DEFAULT_ITER_CAP: usize = 10_000;
/// Entry size at which the feasibility iteration is declared divergent.
pub const DIVERGENCE_CAP: f64 = 1e9;
/// Relative growth below which a sweep counts as stationary.
const STATIONARY: f64 = 1e-12;

fn check_depth(s: &MatrixSet, t: usize, cap: u64) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let m = s.alphabet_size() as u64;
    match u32::try_from(t).ok().and_then(|t| m.checked_pow(t)) {
        Some(count) if count <= cap => Ok(()),
        _ => Err(Error::ResourceLimit(format!(
            "{m}^{t} products exceed the cap of {cap}"
        ))),
    }
}

/// Calls `visit` on every word of length exactly `len` with its product,
/// in lexicographic order.
fn for_each_product(
    mats: &[FloatMatrix],
    len: usize,
    visit: &mut impl FnMut(&[usize], &FloatMatrix),
) {
    fn go(
        mats: &[FloatMatrix],
        prefix: &FloatMatrix,
        remaining: usize,
        word: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize], &FloatMatrix),
    ) {
        if remaining == 0 {
            visit(word, prefix);
            return;
        }
        for (k, a) in mats.iter().enumerate() {
            word.push(k + 1);
            go(mats, &prefix.mul(a), remaining - 1, word, visit);
            word.pop();
        }
    }
    let identity = FloatMatrix::identity(mats[0].dim());
    go(mats, &identity, len, &mut Vec::with_capacity(len), visit);
}

fn float_set(s: &MatrixSet) -> Vec<FloatMatrix> {
    s.matrices().iter().map(|a| a.to_float()).collect()
}

/// `max_{1 ≤ |u| ≤ t} ρ(A_u)^{1/|u|}` and the shortest, then
/// lexicographically least, word attaining it.
pub fn jsr_lower_bound(s: &MatrixSet, t: usize) -> Result<(f64, Word)> {
    jsr_lower_bound_with(s, t, WORD_CAP)
}

pub fn jsr_lower_bound_with(s: &MatrixSet, t: usize, word_cap: u64) -> Result<(f64, Word)> {
    check_depth(s, t, word_cap)?;
    let mats = float_set(s);
    let mut best = (-1.0f64, Word::new(vec![]));
    for len in 1..=t {
        for_each_product(&mats, len, &mut |word, product| {
            let value = product.spectral_radius_estimate(RADIUS_ITERS).powf(1.0 / len as f64);
            // ties within rounding keep the earlier word
            if value > best.0 * (1.0 + 1e-12) || (best.0 <= 0.0 && value > best.0) {
                best = (value, Word::new(word.to_vec()));
            }
        });
    }
    Ok(best)
}

/// `max_{|u| = t} ‖A_u‖_∞^{1/t}`.
pub fn jsr_upper_bound(s: &MatrixSet, t: usize) -> Result<f64> {
    jsr_upper_bound_with(s, t, WORD_CAP)
}

pub fn jsr_upper_bound_with(s: &MatrixSet, t: usize, word_cap: u64) -> Result<f64> {
    check_depth(s, t, word_cap)?;
    let mats = float_set(s);
    let mut best = 0.0f64;
    for_each_product(&mats, t, &mut |_, product| {
        best = best.max(product.inf_norm().powf(1.0 / t as f64));
    });
    Ok(best)
}

/// `Σ/γ`.
pub fn scale_set(s: &MatrixSet, gamma: &Scalar) -> Result<MatrixSet> {
    if *gamma <= Scalar::from_integer(0.into()) {
        return Err(Error::InvalidArgument("scaling factor must be positive".into()));
    }
    Ok(s.scaled(&gamma.recip()))
}

/// Outcome of the scaling search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalingBound {
    /// Smallest feasible `γ` found, within the bisection tolerance.
    Bound(f64),
    /// A feasibility probe hit the sweep cap; `γ*` lies in `[lower, upper]`.
    Inconclusive { lower: f64, upper: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Probe {
    Feasible,
    Infeasible,
    Inconclusive,
}

/// Single-letter edge `(from, to, matrix index)` structure for the probes.
struct Lifted<'a> {
    nodes: usize,
    dim: usize,
    edges: Vec<(usize, usize, &'a FloatMatrix)>,
}

impl Lifted<'_> {
    /// `max_e (A_e x_i)_l` for every node `j` and coordinate `l`, over
    /// edges `e: i → j`, with `x` restricted to the coordinates in `keep`.
    fn apply(&self, x: &[f64], keep: &[bool]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0f64; x.len()];
        for &(i, j, a) in &self.edges {
            for r in 0..n {
                let mut acc = 0.0f64;
                for c in 0..n {
                    if keep[i * n + c] {
                        acc += a.get(r, c) * x[i * n + c];
                    }
                }
                let slot = &mut out[j * n + r];
                *slot = slot.max(acc);
            }
        }
        out
    }

    /// True when some nonnegative `x` supported inside the current vector
    /// satisfies `F(x) > γ x` on its support, which rules out any feasible
    /// certificate at `γ`.
    fn certifies_growth(&self, v: &[f64], gamma: f64) -> bool {
        let mut keep = vec![true; v.len()];
        loop {
            let image = self.apply(v, &keep);
            let mut changed = false;
            for idx in 0..v.len() {
                if keep[idx] && image[idx] <= gamma * v[idx] {
                    keep[idx] = false;
                    changed = true;
                }
            }
            if !changed {
                return keep.iter().any(|&k| k);
            }
        }
    }

    fn probe(&self, gamma: f64, iter_cap: usize) -> Probe {
        let n = self.dim;
        let mut v = vec![1.0f64; self.nodes * n];
        for _ in 0..iter_cap {
            let mut growth = 0.0f64;
            for &(i, j, a) in &self.edges {
                for r in 0..n {
                    let mut acc = 0.0;
                    for c in 0..n {
                        acc += a.get(r, c) * v[i * n + c];
                    }
                    let candidate = acc / gamma;
                    let slot = &mut v[j * n + r];
                    if candidate > *slot {
                        growth = growth.max(candidate / *slot - 1.0);
                        *slot = candidate;
                    }
                }
            }
            if growth <= STATIONARY {
                return Probe::Feasible;
            }
            if v.iter().any(|&x| x > DIVERGENCE_CAP) || self.certifies_growth(&v, gamma) {
                return Probe::Infeasible;
            }
        }
        Probe::Inconclusive
    }
}

/// Smallest `γ` (within `tol`) for which positive vectors satisfy
/// `A_k v_i ≤ γ v_j` along every edge of the letter-expansion of `g`.
///
/// The search brackets `γ` between the brute-force lower bound and
/// `max_k ‖A_k‖_∞`, which is always feasible with all-ones vectors. Each
/// probe runs the ascending iteration `v_j ← max(v_j, A_k v_i / γ)` from
/// all-ones: stationarity proves feasibility, while divergence past
/// [`DIVERGENCE_CAP`] or a vector with `F(x) > γx` on its support proves
/// infeasibility.
pub fn conic_scaling_bound(
    g: &LabeledGraph,
    s: &MatrixSet,
    tol: f64,
    iter_cap: usize,
) -> Result<ScalingBound> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if !s.is_nonnegative() {
        return Err(Error::InvalidArgument(
            "conic scaling needs nonnegative matrices".into(),
        ));
    }
    if g.alphabet_size() > s.alphabet_size() {
        return Err(Error::dims(format!(
            "graph uses {} letters but only {} matrices were given",
            g.alphabet_size(),
            s.alphabet_size()
        )));
    }
    if let Some(w) = check_path_complete(g)?.missing_word {
        return Err(Error::InvalidGraph(format!("not path-complete, {w} is unreadable")));
    }
    let mats = float_set(s);
    let expanded = expand_labels(g).graph;
    let lifted = Lifted {
        nodes: expanded.node_count(),
        dim: s.dim(),
        edges: expanded
            .edges()
            .iter()
            .map(|e| (e.from, e.to, &mats[e.label.symbols()[0] - 1]))
            .collect(),
    };
    let mut hi = jsr_upper_bound(s, 1)?;
    let depth = (1..=4).rev().find(|&t| check_depth(s, t, WORD_CAP).is_ok()).unwrap_or(1);
    let mut lo = jsr_lower_bound(s, depth)?.0.min(hi);
    if hi == 0.0 {
        return Ok(ScalingBound::Bound(0.0));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        match lifted.probe(mid, iter_cap) {
            Probe::Feasible => hi = mid,
            Probe::Infeasible => lo = mid,
            Probe::Inconclusive => return Ok(ScalingBound::Inconclusive { lower: lo, upper: hi }),
        }
    }
    Ok(ScalingBound::Bound(hi))
}

/// Bounds report; `gamma_star` is absent when no graph was supplied.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JsrBounds {
    pub t: usize,
    pub lower: f64,
    pub lower_witness: Word,
    pub upper: f64,
    /// Norm used by the upper bound.
    pub norm: &'static str,
    #[serde(serialize_with = "gamma_json")]
    pub gamma_star: Option<ScalingBound>,
}

fn gamma_json<S: Serializer>(g: &Option<ScalingBound>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match g {
        None => ser.serialize_none(),
        Some(ScalingBound::Bound(x)) => ser.serialize_f64(*x),
        Some(ScalingBound::Inconclusive { .. }) => ser.serialize_str("inconclusive"),
    }
}

impl JsrBounds {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bounds serialise")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JsrConfig {
    pub word_cap: u64,
    pub tol: f64,
    pub iter_cap: usize,
}

impl Default for JsrConfig {
    fn default() -> Self {
        JsrConfig {
            word_cap: WORD_CAP,
            tol: DEFAULT_SCALING_TOL,
            iter_cap: DEFAULT_ITER_CAP,
        }
    }
}

/// Both brute-force bounds at depth `t`, plus `γ*` when a path-complete
/// graph is given.
pub fn jsr_bounds(s: &MatrixSet, t: usize, graph: Option<&LabeledGraph>, config: &JsrConfig) -> Result<JsrBounds> {
    let (lower, lower_witness) = jsr_lower_bound_with(s, t, config.word_cap)?;
    let upper = jsr_upper_bound_with(s, t, config.word_cap)?;
    let gamma_star = graph
        .map(|g| conic_scaling_bound(g, s, config.tol, config.iter_cap))
        .transpose()?;
    Ok(JsrBounds {
        t,
        lower,
        lower_witness,
        upper,
        norm: "inf",
        gamma_star,
    })
}
