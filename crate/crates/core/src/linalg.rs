//! Small dense matrices over exact rationals.
//!
//! Certificate checks never leave exact arithmetic. Floating point is used
//! only for spectral radius estimates and for [`is_positive_definite`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Default pivot tolerance for the floating positive-definiteness test.
pub const DEFAULT_PD_TOL: f64 = 1e-9;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an integer, a decimal (`-0.95`, `1.5e-3`) or a fraction (`3/7`).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Scalar(text.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Scalar::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let joined = format!("{int_part}{frac_part}");
    let mut value = Scalar::from_integer(joined.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    if shift >= 0 {
        value *= Scalar::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Scalar::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Renders a scalar as an integer, a terminating decimal, or `p/q`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        return x.numer().to_string();
    }
    let mut den = x.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", x.numer(), x.denom());
    }
    let places = twos.max(fives);
    let scaled = x * Scalar::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (ip, fp) = digits.split_at(digits.len() - places);
    let sign = if x.is_negative() { "-" } else { "" };
    format!("{sign}{ip}.{fp}")
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn from_f64(x: f64) -> Result<Scalar> {
    Scalar::from_float(x).ok_or_else(|| Error::Scalar(x.to_string()))
}

/// Dense row-major matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dims("matrices need at least one row and column"));
        }
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{rows}x{cols} matrix given {} entries",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dims("ragged rows"));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer literals. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .expect("well-formed integer matrix literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|x| x.is_zero() || x.is_one())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, factor: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dims("subtraction of differently shaped matrices"));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn to_float(&self) -> FloatMatrix {
        FloatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(to_f64).collect(),
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Column vector with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn from_i64(v: &[i64]) -> Self {
        Vector(v.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::dims(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if !bkj.is_zero() {
                    out.data[i * b.cols + j] += aik * bkj;
                }
            }
        }
    }
    Ok(out)
}

pub fn mat_vec(a: &Matrix, x: &Vector) -> Result<Vector> {
    if a.cols != x.dim() {
        return Err(Error::dims(format!(
            "cannot apply {}x{} matrix to a vector of dimension {}",
            a.rows,
            a.cols,
            x.dim()
        )));
    }
    Ok(Vector(
        (0..a.rows)
            .map(|i| {
                a.row(i)
                    .iter()
                    .zip(&x.0)
                    .filter(|(m, _)| !m.is_zero())
                    .fold(Scalar::zero(), |acc, (m, v)| acc + m * v)
            })
            .collect(),
    ))
}

/// Product of a nonempty sequence of square matrices, left to right.
pub fn product<'a>(factors: impl IntoIterator<Item = &'a Matrix>) -> Result<Matrix> {
    let mut it = factors.into_iter();
    let first = it
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
    it.try_fold(first.clone(), |acc, m| mat_mul(&acc, m))
}

/// True iff `a^dim` vanishes, decided exactly.
pub fn is_nilpotent(a: &Matrix) -> Result<bool> {
    let n = a.require_square()?;
    let mut power = a.clone();
    let mut exponent = 1;
    while exponent < n && !power.is_zero() {
        power = mat_mul(&power, &power)?;
        exponent *= 2;
    }
    Ok(power.is_zero())
}

/// Gelfand estimate `‖a^(2^k)‖_∞^(1/2^k)` at `k = iters`, computed by
/// repeated squaring. Nilpotent inputs are detected exactly and return 0.
pub fn spectral_radius_estimate(a: &Matrix, iters: u32) -> Result<f64> {
    a.require_square()?;
    if iters == 0 {
        return Err(Error::InvalidArgument("iters must be at least 1".into()));
    }
    if is_nilpotent(a)? {
        return Ok(0.0);
    }
    Ok(a.to_float().spectral_radius_estimate(iters))
}

/// Floating positive-definiteness test: elimination without pivoting must
/// produce only pivots strictly above `tol`.
pub fn is_positive_definite(s: &Matrix, tol: f64) -> Result<bool> {
    let n = s.require_square()?;
    let f = s.to_float();
    for i in 0..n {
        for j in 0..i {
            if (f.get(i, j) - f.get(j, i)).abs() > tol {
                return Err(Error::Asymmetric);
            }
        }
    }
    let mut w = f.data.clone();
    for k in 0..n {
        let pivot = w[k * n + k];
        if pivot.is_nan() || pivot <= tol {
            return Ok(false);
        }
        for i in k + 1..n {
            let factor = w[i * n + k] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in k..n {
                w[i * n + j] -= factor * w[k * n + j];
            }
        }
    }
    Ok(true)
}

/// Exact definiteness classification of a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definiteness {
    pub positive_definite: bool,
    pub positive_semidefinite: bool,
    /// Smallest elimination pivot; negative when the matrix is indefinite.
    pub min_pivot: Scalar,
}

/// Symmetric elimination with largest-diagonal pivoting, in exact arithmetic.
///
/// A zero leftover block is allowed for semidefiniteness only when it is
/// entirely zero.
pub fn definiteness(s: &Matrix) -> Result<Definiteness> {
    let n = s.require_square()?;
    if !s.is_symmetric() {
        return Err(Error::Asymmetric);
    }
    let mut w: Vec<Vec<Scalar>> = (0..n).map(|i| s.row(i).to_vec()).collect();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut min_pivot: Option<Scalar> = None;
    let track = |p: &Scalar, min: &mut Option<Scalar>| {
        if min.as_ref().is_none_or(|m| p < m) {
            *min = Some(p.clone());
        }
    };
    while !remaining.is_empty() {
        let (pos, &k) = remaining
            .iter()
            .enumerate()
            .max_by(|(_, &a), (_, &b)| w[a][a].cmp(&w[b][b]).then(b.cmp(&a)))
            .expect("nonempty");
        let pivot = w[k][k].clone();
        if pivot.is_negative() {
            track(&pivot, &mut min_pivot);
            return Ok(Definiteness {
                positive_definite: false,
                positive_semidefinite: false,
                min_pivot: min_pivot.expect("set"),
            });
        }
        if pivot.is_zero() {
            // all remaining diagonal entries are zero
            let worst = remaining
                .iter()
                .flat_map(|&i| remaining.iter().map(move |&j| (i, j)))
                .map(|(i, j)| w[i][j].abs())
                .max()
                .unwrap_or_else(Scalar::zero);
            let psd = worst.is_zero();
            let p = -worst;
            track(&p, &mut min_pivot);
            return Ok(Definiteness {
                positive_definite: false,
                positive_semidefinite: psd,
                min_pivot: min_pivot.expect("set"),
            });
        }
        track(&pivot, &mut min_pivot);
        remaining.remove(pos);
        for &i in &remaining {
            let factor = &w[i][k] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for &j in &remaining {
                let delta = &factor * &w[k][j];
                w[i][j] -= delta;
            }
        }
    }
    Ok(Definiteness {
        positive_definite: true,
        positive_semidefinite: true,
        min_pivot: min_pivot.unwrap_or_else(Scalar::zero),
    })
}

/// Row-major `f64` matrix used on the spectral estimate paths.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl FloatMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        FloatMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn dim(&self) -> usize {
        self.rows
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        self.data
            .chunks(self.cols)
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn mul(&self, other: &FloatMatrix) -> FloatMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut data = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.data[i * self.cols + k];
                if aik == 0.0 {
                    continue;
                }
                let out = &mut data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in out.iter_mut().zip(&other.data[k * other.cols..(k + 1) * other.cols]) {
                    *o += aik * b;
                }
            }
        }
        FloatMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    fn scale_in_place(&mut self, factor: f64) {
        self.data.iter_mut().for_each(|x| *x *= factor);
    }

    /// Repeated squaring with renormalisation at every step so that the
    /// power never overflows; the scale is carried as a logarithm.
    pub fn spectral_radius_estimate(&self, iters: u32) -> f64 {
        let mut m = self.clone();
        let mut log_scale = 0.0f64;
        for _ in 0..iters {
            let norm = m.inf_norm();
            if norm == 0.0 {
                return 0.0;
            }
            m.scale_in_place(1.0 / norm);
            log_scale += norm.ln();
            m = m.mul(&m);
            log_scale *= 2.0;
        }
        let norm = m.inf_norm();
        if norm == 0.0 {
            return 0.0;
        }
        ((log_scale + norm.ln()) / 2f64.powi(iters as i32)).exp()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    data: Vec<Vec<ScalarWire>>,
}

/// JSON scalar: an integer or float number, or a decimal/fraction string.
#[derive(Clone, Debug)]
pub(crate) struct ScalarWire(pub Scalar);

impl Serialize for ScalarWire {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(v) = self.0.numer().to_i64() {
                return ser.serialize_i64(v);
            }
        }
        ser.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for ScalarWire {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(de)?;
        let text = match &v {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s.clone(),
            other => return Err(D::Error::custom(format!("expected a number, got {other}"))),
        };
        parse_scalar(&text)
            .map(ScalarWire)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            rows: self.rows,
            cols: self.cols,
            data: (0..self.rows)
                .map(|r| self.row(r).iter().cloned().map(ScalarWire).collect())
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = MatrixWire::deserialize(de)?;
        if wire.data.len() != wire.rows {
            return Err(D::Error::custom(format!(
                "declared {} rows but data has {}",
                wire.rows,
                wire.data.len()
            )));
        }
        if let Some(bad) = wire.data.iter().find(|r| r.len() != wire.cols) {
            return Err(D::Error::custom(format!(
                "declared {} columns but a row has {}",
                wire.cols,
                bad.len()
            )));
        }
        let data = wire.data.into_iter().flatten().map(|s| s.0).collect();
        Matrix::new(wire.rows, wire.cols, data).map_err(|e| D::Error::custom(e.to_string()))
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let wire: Vec<ScalarWire> = self.0.iter().cloned().map(ScalarWire).collect();
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = Vec::<ScalarWire>::deserialize(de)?;
        Ok(Vector(wire.into_iter().map(|s| s.0).collect()))
    }
}
