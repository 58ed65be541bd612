//! Exact lattice propagators of the quadratic checkerboard, their limiting
//! series, and the closed Bessel forms they converge to.
//!
//! The bend sums factor into elementary symmetric polynomials of odd numbers:
//! counted bends after right segments sit at coordinates `1..P−1`, each
//! weighted by `2j − 1`, and likewise on the left. Summing over subsets of a
//! given size gives `e_k(O_{P−1})` with `O_n = {1, 3, …, 2n − 1}`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bessel::{bessel_j0_with, bessel_j1_with, SeriesOptions};
use crate::error::{Error, Result};
use crate::paths::Direction;
use crate::polynomial::AmplitudePolynomial;
use crate::rational::{rational_square_root, serde_text};
use crate::scalar::{Real, Scalar};
use crate::spacetime::velocity_generator;
use crate::Rational;

/// Endpoint of a quadratic lattice with `P` right and `Q` left segments,
/// reached at time `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeSpec {
    pub p: u32,
    pub q: u32,
    #[serde(with = "serde_text")]
    pub t: Rational,
}

impl LatticeSpec {
    pub fn new(p: u32, q: u32, t: Rational) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::invalid("P and Q must both be at least 1"));
        }
        if !t.is_positive() {
            return Err(Error::invalid("t must be positive"));
        }
        Ok(Self { p, q, t })
    }

    fn squares(&self) -> (BigInt, BigInt) {
        let p = BigInt::from(self.p);
        let q = BigInt::from(self.q);
        (&p * &p, &q * &q)
    }

    /// `ε₀ = t/(P² + Q²)`.
    pub fn eps0(&self) -> Rational {
        let (p2, q2) = self.squares();
        &self.t / Rational::from_integer(p2 + q2)
    }

    pub fn velocity(&self) -> Rational {
        let (p2, q2) = self.squares();
        Rational::new(&p2 - &q2, p2 + q2)
    }

    pub fn x(&self) -> Rational {
        &self.t * self.velocity()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    PlusPlus,
    PlusMinus,
    MinusPlus,
    MinusMinus,
}

impl Component {
    pub const ALL: [Component; 4] = [
        Component::PlusPlus,
        Component::PlusMinus,
        Component::MinusPlus,
        Component::MinusMinus,
    ];

    /// `ψ_{δγ}`: `γ` is the start direction, `δ` the end direction.
    pub fn sector(self) -> (Direction, Direction) {
        use Direction::{Left, Right};
        match self {
            Component::PlusPlus => (Right, Right),
            Component::PlusMinus => (Left, Right),
            Component::MinusPlus => (Right, Left),
            Component::MinusMinus => (Left, Left),
        }
    }

    pub fn from_sector(start: Direction, end: Direction) -> Self {
        use Direction::{Left, Right};
        match (start, end) {
            (Right, Right) => Component::PlusPlus,
            (Left, Right) => Component::PlusMinus,
            (Right, Left) => Component::MinusPlus,
            (Left, Left) => Component::MinusMinus,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Component::PlusPlus => "psi_pp",
            Component::PlusMinus => "psi_pm",
            Component::MinusPlus => "psi_mp",
            Component::MinusMinus => "psi_mm",
        }
    }
}

impl Serialize for Component {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagatorMatrix<T> {
    pub psi_pp: Complex<T>,
    pub psi_pm: Complex<T>,
    pub psi_mp: Complex<T>,
    pub psi_mm: Complex<T>,
}

impl<T: Clone> PropagatorMatrix<T> {
    pub fn get(&self, c: Component) -> &Complex<T> {
        match c {
            Component::PlusPlus => &self.psi_pp,
            Component::PlusMinus => &self.psi_pm,
            Component::MinusPlus => &self.psi_mp,
            Component::MinusMinus => &self.psi_mm,
        }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> PropagatorMatrix<U> {
        let m = |z: &Complex<T>| Complex::new(f(&z.re), f(&z.im));
        PropagatorMatrix {
            psi_pp: m(&self.psi_pp),
            psi_pm: m(&self.psi_pm),
            psi_mp: m(&self.psi_mp),
            psi_mm: m(&self.psi_mm),
        }
    }
}

/// `e_k(O_n)` for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricTable {
    n: u32,
    values: Vec<BigInt>,
}

impl SymmetricTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `e_k`, zero for `k > n`.
    pub fn e(&self, k: u32) -> BigInt {
        self.values.get(k as usize).cloned().unwrap_or_default()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// Builds the table by `e_k(O_j) = e_k(O_{j−1}) + (2j − 1) e_{k−1}(O_{j−1})`.
pub fn elem_sym_table(n: u32) -> SymmetricTable {
    let mut values = vec![BigInt::one()];
    for j in 1..=n {
        let odd = BigInt::from(2 * j - 1);
        values.push(BigInt::zero());
        for k in (1..values.len()).rev() {
            let carry = &values[k - 1] * &odd;
            values[k] += carry;
        }
    }
    SymmetricTable { n, values }
}

/// Exact path sum of one sector as a polynomial in `iε₀`.
pub fn exact_component(p: u32, q: u32, start: Direction, end: Direction) -> AmplitudePolynomial {
    assert!(p >= 1 && q >= 1, "P and Q must both be at least 1");
    let right = elem_sym_table(p - 1);
    let left = elem_sym_table(q - 1);
    component_from_tables(&right, &left, start, end)
}

fn component_from_tables(
    right: &SymmetricTable,
    left: &SymmetricTable,
    start: Direction,
    end: Direction,
) -> AmplitudePolynomial {
    let mut out = AmplitudePolynomial::zero();
    if start != end {
        // R = 2k + 1 bends, k counted on each side
        for k in 0..=right.n().min(left.n()) {
            out.add_term(2 * k, right.e(k) * left.e(k));
        }
        return out;
    }
    // R = 2k bends; k counted on the start side, k − 1 on the other
    let (same, other) = match start {
        Direction::Right => (right, left),
        Direction::Left => (left, right),
    };
    for k in 1..=same.n().min(other.n() + 1) {
        out.add_term(2 * k - 1, same.e(k) * other.e(k - 1));
    }
    out
}

/// The four sector polynomials, sharing the symmetric tables.
pub fn exact_components(p: u32, q: u32) -> [(Component, AmplitudePolynomial); 4] {
    let right = elem_sym_table(p - 1);
    let left = elem_sym_table(q - 1);
    Component::ALL.map(|c| {
        let (start, end) = c.sector();
        (c, component_from_tables(&right, &left, start, end))
    })
}

pub(crate) fn matrix_from_components<T>(
    components: &[(Component, AmplitudePolynomial); 4],
    eval: impl Fn(&AmplitudePolynomial) -> Complex<T>,
) -> PropagatorMatrix<T> {
    let value = |c: Component| {
        components
            .iter()
            .find(|(k, _)| *k == c)
            .map(|(_, poly)| eval(poly))
            .expect("all four sectors present")
    };
    PropagatorMatrix {
        psi_pp: value(Component::PlusPlus),
        psi_pm: value(Component::PlusMinus),
        psi_mp: value(Component::MinusPlus),
        psi_mm: value(Component::MinusMinus),
    }
}

/// Exact Gaussian-rational propagator of the lattice.
pub fn exact_matrix_rational(spec: &LatticeSpec) -> PropagatorMatrix<BigRational> {
    let components = exact_components(spec.p, spec.q);
    let eps = spec.eps0();
    matrix_from_components(&components, |poly| poly.evaluate_exact(&eps))
}

/// Lattice propagator at `ε₀ = t/(P² + Q²)`. The polynomials are evaluated
/// exactly and rounded once, so alternating cancellation costs nothing.
pub fn exact_matrix(spec: &LatticeSpec) -> PropagatorMatrix<f64> {
    exact_matrix_rational(spec).map(|v| v.to_f64().unwrap_or(f64::NAN))
}

/// Lattice propagator evaluated directly in `T`.
pub fn exact_matrix_in<T: Scalar>(spec: &LatticeSpec) -> PropagatorMatrix<T> {
    let components = exact_components(spec.p, spec.q);
    let eps = T::from_rational(&spec.eps0());
    matrix_from_components(&components, |poly| poly.evaluate(&eps))
}

/// Continuum limit at `(t, x)` with `s = √(t² − x²)`:
/// `ψ₋₊ = ψ₊₋ = J₀(s)`, `ψ₊₊ = i (t+x)/s · J₁(s)`, `ψ₋₋ = i (t−x)/s · J₁(s)`.
pub fn closed_matrix_with<T: Real>(t: T, x: T, opts: &SeriesOptions) -> Result<PropagatorMatrix<T>> {
    if t.is_nan() || x.is_nan() || x.abs() >= t {
        return Err(Error::domain(format!(
            "closed forms need |x| < t, got t = {t:?}, x = {x:?}"
        )));
    }
    let s = ((t - x) * (t + x)).sqrt();
    let j0 = bessel_j0_with(s, opts)?.value;
    let j1 = bessel_j1_with(s, opts)?.value;
    let zero = T::zero();
    let (forward, backward) = if s > zero {
        ((t + x) / s * j1, (t - x) / s * j1)
    } else {
        // s underflowed: J₁(s)/s → 1/2
        ((t + x) / T::lit(2.0), (t - x) / T::lit(2.0))
    };
    Ok(PropagatorMatrix {
        psi_pp: Complex::new(zero, forward),
        psi_pm: Complex::new(j0, zero),
        psi_mp: Complex::new(j0, zero),
        psi_mm: Complex::new(zero, backward),
    })
}

pub fn closed_matrix<T: Real>(t: T, x: T) -> Result<PropagatorMatrix<T>> {
    closed_matrix_with(t, x, &SeriesOptions::default())
}

/// `γ = 1/√(1 − v²)`.
pub fn gamma_of<T: Real>(v: T) -> Result<T> {
    if v.is_nan() || v.abs() >= T::one() {
        return Err(Error::domain(format!("|v| must be < 1, got {v:?}")));
    }
    Ok(T::one() / (T::one() - v * v).sqrt())
}

/// `γ` as a rational, when `1 − v²` is a rational square.
pub fn gamma_exact(v: &Rational) -> Result<Option<Rational>> {
    let one = Rational::one();
    if v.abs() >= one {
        return Err(Error::domain("|v| must be < 1"));
    }
    Ok(rational_square_root(&(&one - v * v)).map(|root| root.recip()))
}

/// Checks `4P²Q² = (P² + Q²)²(1 − v²)` exactly for `v = (P² − Q²)/(P² + Q²)`,
/// together with `2·PQ·γ = P² + Q²` for the rational `γ`.
pub fn pq_identity_check(p: u32, q: u32) -> bool {
    if p == 0 || q == 0 {
        return false;
    }
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    let p2 = &p * &p;
    let q2 = &q * &q;
    let sum = Rational::from_integer(&p2 + &q2);
    let v = Rational::new(&p2 - &q2, &p2 + &q2);
    let one = Rational::one();
    let lhs = Rational::from_integer(BigInt::from(4) * &p2 * &q2);
    let rhs = &sum * &sum * (&one - &v * &v);
    let Ok(Some(gamma)) = gamma_exact(&v) else {
        return false;
    };
    let pq = Rational::from_integer(&p * &q);
    lhs == rhs && Rational::from_integer(BigInt::from(2)) * pq * gamma == sum
}

/// Partial sum of `Σ_k (−1)^k (t/2γ)^{2k}/(k!)²` with `terms` terms.
pub fn series_psi_mp<T: Real>(t: T, v: T, terms: usize) -> Result<Complex<T>> {
    if terms == 0 {
        return Err(Error::invalid("terms must be at least 1"));
    }
    let gamma = gamma_of(v)?;
    let half_s = t / (T::lit(2.0) * gamma);
    let mut sum = T::zero();
    let mut term = T::one();
    for k in 0..terms {
        sum = sum + term;
        let k1 = T::lit((k + 1) as f64);
        term = -term * half_s * half_s / (k1 * k1);
    }
    Ok(Complex::new(sum, T::zero()))
}

/// Large-lattice contribution of the `R`-bend paths to `ψ₋₊`:
/// `(iε₀)^{R−1} (PQ)^{R−1} / [((R−1)/2)!]²`, for odd `R`.
pub fn series_term_mp<T: Real>(bends: u32, eps0: T, p: u32, q: u32) -> Result<Complex<T>> {
    if bends % 2 == 0 {
        return Err(Error::invalid("start-right/end-left paths have an odd number of bends"));
    }
    let k = (bends - 1) / 2;
    let pq = T::lit(p as f64) * T::lit(q as f64);
    let mut magnitude = T::one();
    for i in 1..=k {
        let x = eps0 * pq;
        magnitude = magnitude * x * x / (T::lit(i as f64) * T::lit(i as f64));
    }
    // (i)^{2k} = (−1)^k
    let sign = if k % 2 == 0 { T::one() } else { -T::one() };
    Ok(Complex::new(sign * magnitude, T::zero()))
}

/// One line of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: u32,
    pub q: u32,
    #[serde(with = "serde_text")]
    pub t: Rational,
    #[serde(with = "serde_text")]
    pub v: Rational,
    pub component: Component,
    pub exact_re: f64,
    pub exact_im: f64,
    pub closed_re: f64,
    pub closed_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SweepRecord {
    Row(SweepRow),
    Skipped { size: u32, reason: String },
}

impl SweepRecord {
    pub fn row(&self) -> Option<&SweepRow> {
        match self {
            SweepRecord::Row(r) => Some(r),
            SweepRecord::Skipped { .. } => None,
        }
    }
}

pub(crate) fn deviation_rows(
    p: u32,
    q: u32,
    t: &Rational,
    v: &Rational,
    exact: &PropagatorMatrix<f64>,
    closed: &PropagatorMatrix<f64>,
) -> Vec<SweepRecord> {
    Component::ALL
        .iter()
        .map(|&c| {
            let e = exact.get(c);
            let k = closed.get(c);
            let abs_err = (e - k).norm();
            SweepRecord::Row(SweepRow {
                p,
                q,
                t: t.clone(),
                v: v.clone(),
                component: c,
                exact_re: e.re,
                exact_im: e.im,
                closed_re: k.re,
                closed_im: k.im,
                abs_err,
                rel_err: abs_err / k.norm(),
            })
        })
        .collect()
}

/// Closed forms at `(t, v·t)` rounded from the exact rationals.
pub(crate) fn closed_at(t: &Rational, v: &Rational) -> Result<PropagatorMatrix<f64>> {
    let tf = t.to_f64().unwrap_or(f64::NAN);
    let xf = (t * v).to_f64().unwrap_or(f64::NAN);
    closed_matrix(tf, xf)
}

/// Deviation of the quadratic lattice from the closed forms at fixed `v`.
/// Each `P` must be a multiple of the generator `P₀` of `v`; `Q` follows.
pub fn convergence_sweep(t: &Rational, v: &Rational, p_list: &[u32]) -> Result<Vec<SweepRecord>> {
    if !t.is_positive() {
        return Err(Error::invalid("t must be positive"));
    }
    let (p0, q0) = velocity_generator(v)
        .ok_or_else(|| Error::domain(format!("v = {v} is not in the velocity spectrum")))?;
    let p0 = p0.to_u32().ok_or_else(|| Error::domain("generator too large"))?;
    let q0 = q0.to_u32().ok_or_else(|| Error::domain("generator too large"))?;
    let mut sizes = Vec::with_capacity(p_list.len());
    for &p in p_list {
        if p == 0 || p % p0 != 0 {
            return Err(Error::domain(format!(
                "P = {p} is not a positive multiple of P0 = {p0} for v = {v}"
            )));
        }
        sizes.push((p, (p / p0) * q0));
    }
    let closed = closed_at(t, v)?;
    let rows: Vec<Vec<SweepRecord>> = sizes
        .par_iter()
        .map(|&(p, q)| {
            let spec = LatticeSpec::new(p, q, t.clone())?;
            Ok(deviation_rows(p, q, t, v, &exact_matrix(&spec), &closed))
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}
