use crate::error::{Error, Result};
use crate::funcfield::{series_dlog, TruncSeries};
use crate::ring::Ring;

use super::TauModule;

/// Σ_n Σ_{x: d_x | n} d_x·Tr(τ^n | x)·t^n mod t^order, where a closed point of
/// degree d_x has d_x points over F_{q^n} when d_x | n.
///
/// The result is checked against t·dlog of Π_x det_B(1 − tτ | x)^{−1}.
pub fn l_series_points(points: &[(u32, TauModule)], order: usize) -> Result<TruncSeries> {
    let (_, first) = points.first().ok_or_else(|| Error::invalid("no points given"))?;
    let base = first.ring().base_ring();
    let mut coeffs = vec![base.zero(); order];
    let mut euler = TruncSeries::one(&base, order)?;
    for (d, module) in points {
        if module.ring().coeff_ring() != first.ring().coeff_ring() {
            return Err(Error::TowerMismatch);
        }
        if *d == 0 || module.degree() != *d {
            return Err(Error::invalid(format!("point of degree {d} carries a module over F_q^{}", module.degree())));
        }
        let weight = base.from_int(*d as i64);
        for (n, tr) in module.traces_tau(order)?.iter().enumerate().skip(1) {
            coeffs[n] = base.add(&coeffs[n], &base.mul(&weight, tr));
        }
        euler = euler.mul(&module.det_char_b(order)?)?;
    }
    let series = TruncSeries::new(&base, coeffs, order)?;
    if series_dlog(&euler.inverse()?)? != series {
        return Err(Error::theory("l-series differs from t·dlog of the L-function"));
    }
    Ok(series)
}
