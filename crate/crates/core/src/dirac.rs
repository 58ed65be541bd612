//! Finite-difference check that the closed-form spinors solve
//! `i ∂_t Ψ = −i σ_z ∂_x Ψ − σ_x Ψ`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::propagator::closed_matrix;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor<T> {
    pub upper: Complex<T>,
    pub lower: Complex<T>,
}

impl<T: Real> Spinor<T> {
    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self { upper: z, lower: z }
    }
}

/// `ψ₁ = (ψ₊₊, ψ₊₋)` and `ψ₂ = (ψ₊₋, ψ₋₋)` at `(t, x)`.
pub fn assemble<T: Real>(t: T, x: T) -> Result<(Spinor<T>, Spinor<T>)> {
    let m = closed_matrix(t, x)?;
    Ok((
        Spinor {
            upper: m.psi_pp,
            lower: m.psi_pm,
        },
        Spinor {
            upper: m.psi_pm,
            lower: m.psi_mm,
        },
    ))
}

/// Determinant of the 2×2 matrix with columns `ψ₁`, `ψ₂`.
pub fn independence_det<T: Real>(t: T, x: T) -> Result<Complex<T>> {
    let (a, b) = assemble(t, x)?;
    Ok(a.upper * b.lower - b.upper * a.lower)
}

/// Sampling region `t ∈ [t0, t1]`, `|x| ≤ xfrac · t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    pub t0: f64,
    pub t1: f64,
    pub xfrac: f64,
    pub samples_t: usize,
    pub samples_x: usize,
}

impl Region {
    pub fn new(t0: f64, t1: f64, xfrac: f64) -> Self {
        Self {
            t0,
            t1,
            xfrac,
            samples_t: 26,
            samples_x: 21,
        }
    }

    fn points(&self) -> Vec<(f64, f64)> {
        let nt = self.samples_t.max(2);
        let nx = self.samples_x.max(2);
        let mut out = Vec::with_capacity(nt * nx);
        for i in 0..nt {
            let t = self.t0 + (self.t1 - self.t0) * i as f64 / (nt - 1) as f64;
            for j in 0..nx {
                let x = self.xfrac * t * (-1.0 + 2.0 * j as f64 / (nx - 1) as f64);
                out.push((t, x));
            }
        }
        out
    }

    /// Every stencil of step `step` must stay a margin `2·step` inside the
    /// light cone.
    fn validate(&self, step: f64) -> Result<()> {
        if !(step > 0.0) {
            return Err(Error::invalid("h must be positive"));
        }
        if !(self.t0 > 0.0 && self.t1 > self.t0) {
            return Err(Error::invalid("need 0 < t0 < t1"));
        }
        if !(0.0..1.0).contains(&self.xfrac) {
            return Err(Error::invalid("xfrac must lie in [0, 1)"));
        }
        let closest = self.t0 * (1.0 - self.xfrac);
        if closest <= 2.0 * step {
            return Err(Error::domain(format!(
                "region reaches t − |x| = {closest}, inside the margin 2h = {}",
                2.0 * step
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinorResidual {
    /// max |i∂_t u + i∂_x u + w| over the grid
    pub upper_row: f64,
    /// max |i∂_t w − i∂_x w + u| over the grid
    pub lower_row: f64,
}

impl SpinorResidual {
    pub fn max(&self) -> f64 {
        self.upper_row.max(self.lower_row)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionCheck {
    pub residual_h: SpinorResidual,
    pub residual_2h: SpinorResidual,
    /// `residual(2h) / residual(h)`; about 4 for a second-order scheme.
    pub ratio: f64,
    pub observed_order: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub region: Region,
    pub h: f64,
    pub psi1: SolutionCheck,
    pub psi2: SolutionCheck,
}

fn residual_at<T: Real, F>(field: &F, t: T, x: T, h: T) -> Result<(T, T)>
where
    F: Fn(T, T) -> Result<Spinor<T>>,
{
    let two_h = h + h;
    let tp = field(t + h, x)?;
    let tm = field(t - h, x)?;
    let xp = field(t, x + h)?;
    let xm = field(t, x - h)?;
    let c = field(t, x)?;
    let i = Complex::new(T::zero(), T::one());
    let dt_u = (tp.upper - tm.upper).unscale(two_h);
    let dx_u = (xp.upper - xm.upper).unscale(two_h);
    let dt_w = (tp.lower - tm.lower).unscale(two_h);
    let dx_w = (xp.lower - xm.lower).unscale(two_h);
    let row1 = i * dt_u + i * dx_u + c.lower;
    let row2 = i * dt_w - i * dx_w + c.upper;
    Ok((row1.norm(), row2.norm()))
}

/// Max-norm central-difference residual of an arbitrary spinor field.
pub fn field_residual<T: Real, F>(field: F, region: &Region, h: f64) -> Result<SpinorResidual>
where
    F: Fn(T, T) -> Result<Spinor<T>> + Sync,
{
    region.validate(h)?;
    let step = T::lit(h);
    let rows: Vec<(T, T)> = region
        .points()
        .par_iter()
        .map(|&(t, x)| residual_at(&field, T::lit(t), T::lit(x), step))
        .collect::<Result<_>>()?;
    let (upper, lower) = rows
        .into_iter()
        .fold((T::zero(), T::zero()), |(a, b), (r1, r2)| (a.max(r1), b.max(r2)));
    Ok(SpinorResidual {
        upper_row: upper.to_f64().unwrap_or(f64::NAN),
        lower_row: lower.to_f64().unwrap_or(f64::NAN),
    })
}

/// Residual at steps `h` and `2h` with the observed order.
pub fn solution_check<T: Real, F>(field: F, region: &Region, h: f64) -> Result<SolutionCheck>
where
    F: Fn(T, T) -> Result<Spinor<T>> + Sync,
{
    region.validate(2.0 * h)?;
    let fine = field_residual(&field, region, h)?;
    let coarse = field_residual(&field, region, 2.0 * h)?;
    let ratio = coarse.max() / fine.max();
    Ok(SolutionCheck {
        residual_h: fine,
        residual_2h: coarse,
        ratio,
        observed_order: ratio.log2(),
    })
}

/// Checks both `ψ₁` and `ψ₂` in double precision.
pub fn dirac_residual(region: &Region, h: f64) -> Result<ResidualReport> {
    let psi1 = solution_check(|t: f64, x| assemble(t, x).map(|s| s.0), region, h)?;
    let psi2 = solution_check(|t: f64, x| assemble(t, x).map(|s| s.1), region, h)?;
    Ok(ResidualReport {
        region: *region,
        h,
        psi1,
        psi2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assemble_examples() {
        let (a, b) = assemble(1.0f64, 0.0).unwrap();
        let j0 = 0.7651976865579666;
        let j1 = 0.4400505857449335;
        assert!((a.upper - Complex::new(0.0, j1)).norm() < 1e-12);
        assert!((a.lower - Complex::new(j0, 0.0)).norm() < 1e-12);
        assert!((b.upper - Complex::new(j0, 0.0)).norm() < 1e-12);
        assert!((b.lower - Complex::new(0.0, j1)).norm() < 1e-12);
        assert!(assemble(1.0f64, 1.5).is_err());
    }

    #[test]
    fn parity_swaps_spinors() {
        let (a, b) = assemble(2.0f64, 0.8).unwrap();
        let (c, d) = assemble(2.0f64, -0.8).unwrap();
        assert_eq!((a.upper, a.lower), (d.lower, d.upper));
        assert_eq!((b.upper, b.lower), (c.lower, c.upper));
    }

    #[test]
    fn zero_field_has_zero_residual() {
        let r = field_residual(|_t: f64, _x| Ok(Spinor::zero()), &Region::new(0.5, 3.0, 0.4), 0.01).unwrap();
        assert_eq!(r.max(), 0.0);
    }

    #[test]
    fn margin_is_enforced() {
        assert!(matches!(
            dirac_residual(&Region::new(0.05, 1.0, 0.4), 0.01),
            Err(Error::Domain(_))
        ));
        assert!(dirac_residual(&Region::new(1.0, 0.5, 0.4), 0.01).is_err());
        assert!(dirac_residual(&Region::new(0.5, 1.0, 1.0), 0.01).is_err());
        assert!(dirac_residual(&Region::new(0.5, 1.0, 0.4), 0.0).is_err());
    }

    #[test]
    fn second_order_small_region() {
        let report = dirac_residual(&Region { samples_t: 6, samples_x: 5, ..Region::new(0.5, 3.0, 0.4) }, 0.01).unwrap();
        for check in [&report.psi1, &report.psi2] {
            assert!((3.5..=4.5).contains(&check.ratio), "{check:?}");
        }
    }

    #[test]
    fn independence_at_rest() {
        for t in [0.5, 1.0, 2.0, 3.0] {
            assert!(independence_det(t, 0.0f64).unwrap().norm() > 1e-6);
        }
    }
}
