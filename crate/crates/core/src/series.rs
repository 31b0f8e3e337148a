//! Truncated power series, rational forms, window fits and a growth
//! heuristic.

use std::fmt;

use crate::error::{Error, Result};

/// Coefficients `c_0..=c_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub coeffs: Vec<i64>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<i64>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn from_profile(values: &[u64]) -> Result<Self> {
        let coeffs = values
            .iter()
            .map(|&v| i64::try_from(v).map_err(|_| Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    /// The window bound `N`.
    pub fn window(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Denominator {
    /// `∏ (1 − x^{d_i})`.
    Product(Vec<usize>),
    /// Coefficients from the constant term up; the constant must be 1.
    Poly(Vec<i64>),
}

impl Denominator {
    pub fn to_poly(&self) -> Result<Vec<i64>> {
        match self {
            Denominator::Product(ds) => {
                let mut p = vec![1i64];
                for &d in ds {
                    if d == 0 {
                        return Err(Error::DenominatorConstantTerm);
                    }
                    let mut factor = vec![0i64; d + 1];
                    factor[0] = 1;
                    factor[d] = -1;
                    p = poly_mul(&p, &factor, usize::MAX)?;
                }
                Ok(p)
            }
            Denominator::Poly(q) => {
                if q.first() != Some(&1) {
                    return Err(Error::DenominatorConstantTerm);
                }
                Ok(q.clone())
            }
        }
    }
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Denominator::Product(ds) if ds.is_empty() => f.write_str("1"),
            Denominator::Product(ds) => {
                for &d in ds {
                    if d == 1 {
                        f.write_str("(1-x)")?;
                    } else {
                        write!(f, "(1-x^{d})")?;
                    }
                }
                Ok(())
            }
            Denominator::Poly(q) => write!(f, "({})", format_poly(q)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalForm {
    pub numerator: Vec<i64>,
    pub denominator: Denominator,
}

impl RationalForm {
    pub fn new(numerator: Vec<i64>, denominator: Denominator) -> Self {
        RationalForm {
            numerator,
            denominator,
        }
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) / {}",
            format_poly(&self.numerator),
            self.denominator
        )
    }
}

/// `1 - x + 3x^2`; the zero polynomial prints as `0`.
pub fn format_poly(p: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        match (i, mag) {
            (0, _) => s.push_str(&mag.to_string()),
            (_, 1) => {}
            _ => s.push_str(&mag.to_string()),
        }
        match i {
            0 => {}
            1 => s.push('x'),
            _ => s.push_str(&format!("x^{i}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Product truncated to degree `limit`.
fn poly_mul(a: &[i64], b: &[i64], limit: usize) -> Result<Vec<i64>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let len = (a.len() + b.len() - 1).min(limit.saturating_add(1));
    let mut out = vec![0i64; len];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            let t = x.checked_mul(y).ok_or(Error::Overflow)?;
            out[i + j] = out[i + j].checked_add(t).ok_or(Error::Overflow)?;
        }
    }
    Ok(out)
}

/// First `N + 1` coefficients of `P / Q`.
pub fn expand(f: &RationalForm, n: usize) -> Result<TruncatedSeries> {
    let q = f.denominator.to_poly()?;
    let mut c = vec![0i64; n + 1];
    for i in 0..=n {
        let mut v = f.numerator.get(i).copied().unwrap_or(0);
        for (j, &qj) in q.iter().enumerate().skip(1).take(i) {
            let t = qj.checked_mul(c[i - j]).ok_or(Error::Overflow)?;
            v = v.checked_sub(t).ok_or(Error::Overflow)?;
        }
        c[i] = v;
    }
    Ok(TruncatedSeries::new(c))
}

pub const DEFAULT_MARGIN: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitOutcome {
    /// The product vanishes on the margin window; numerator trimmed of
    /// trailing zeros. Consistent with the window only.
    Fit { numerator: Vec<i64> },
    /// The margin window of the product, starting at `start`.
    Fail { start: usize, residuals: Vec<i64> },
}

/// Multiplies the series by the denominator and asks the last `margin`
/// coefficients to vanish.
pub fn fit_rational(
    seq: &TruncatedSeries,
    denominator: &Denominator,
    margin: usize,
) -> Result<FitOutcome> {
    let len = seq.coeffs.len();
    if margin > len || margin == 0 {
        return Err(Error::MarginTooLarge { margin, len });
    }
    let q = denominator.to_poly()?;
    let p = poly_mul(&seq.coeffs, &q, len - 1)?;
    let start = len - margin;
    let tail = &p[start..];
    if tail.iter().all(|&c| c == 0) {
        let mut numerator = p[..start].to_vec();
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        Ok(FitOutcome::Fit { numerator })
    } else {
        Ok(FitOutcome::Fail {
            start,
            residuals: tail.to_vec(),
        })
    }
}

/// Result of the growth heuristic. Window evidence only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthClass {
    Constant,
    /// A fit `P / ∏_{i≤k}(1 − x^i)` was found; degree is `k − 1` minus the
    /// multiplicity of 1 as a root of `P`.
    Polynomial {
        degree: usize,
        fitted: RationalForm,
    },
    SuperPolynomialSuspected,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Constant => f.write_str("constant (heuristic)"),
            GrowthClass::Polynomial { degree, .. } => {
                write!(f, "polynomial degree {degree} (heuristic)")
            }
            GrowthClass::SuperPolynomialSuspected => {
                f.write_str("super-polynomial suspected (heuristic)")
            }
        }
    }
}

/// Largest `k` tried for the denominators `∏_{i≤k}(1 − x^i)`.
pub const MAX_FIT_FACTORS: usize = 6;

pub fn classify_growth(seq: &TruncatedSeries) -> GrowthClass {
    if seq.coeffs.windows(2).all(|w| w[0] == w[1]) {
        return GrowthClass::Constant;
    }
    for k in 1..=MAX_FIT_FACTORS {
        let denominator = Denominator::Product((1..=k).collect());
        let Ok(FitOutcome::Fit { numerator }) = fit_rational(seq, &denominator, DEFAULT_MARGIN)
        else {
            continue;
        };
        let roots = root_one_multiplicity(&numerator);
        if roots >= k {
            continue;
        }
        return GrowthClass::Polynomial {
            degree: k - 1 - roots,
            fitted: RationalForm::new(numerator, denominator),
        };
    }
    GrowthClass::SuperPolynomialSuspected
}

fn root_one_multiplicity(p: &[i64]) -> usize {
    let mut p: Vec<i128> = p.iter().map(|&c| i128::from(c)).collect();
    let mut mult = 0;
    while !p.is_empty() && p.iter().sum::<i128>() == 0 {
        // synthetic division by (x − 1)
        let mut q = vec![0i128; p.len() - 1];
        let mut acc = 0i128;
        for i in (1..p.len()).rev() {
            acc += p[i];
            q[i - 1] = acc;
        }
        p = q;
        mult += 1;
    }
    mult
}
