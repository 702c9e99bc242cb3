//! Exhaustive price of anarchy and price of stability.

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::distance::DistanceMatrix;
use crate::equilibria::sweep_profiles;
use crate::error::Result;
use crate::game::{Caps, GameSpec};
use crate::graph::Realization;

/// A non-negative rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    /// `num / den` reduced; `0 / 0` is read as 1, the ratio of two equal
    /// zero diameters.
    pub fn new(num: u64, den: u64) -> Ratio {
        if den == 0 {
            assert_eq!(num, 0, "ratio with zero denominator");
            return Ratio { num: 1, den: 1 };
        }
        let g = num.gcd(&den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Ratio", 3)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.serialize_field("decimal", &format!("{:.6}", self.to_f64()))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoAReport {
    pub total_profiles: u64,
    pub min_realization_diameter: u64,
    pub equilibrium_count: u64,
    pub max_equilibrium_diameter: Option<u64>,
    pub min_equilibrium_diameter: Option<u64>,
    pub price_of_anarchy: Option<Ratio>,
    pub price_of_stability: Option<Ratio>,
}

#[derive(Default)]
struct Acc {
    min_real: Option<u64>,
    eq_count: u64,
    eq_min: Option<u64>,
    eq_max: Option<u64>,
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

fn max_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    }
}

/// Diameter (social cost) over every realization, and over the equilibria
/// of the spec's version. Disconnected realizations have diameter `n^2`.
pub fn price_of_anarchy_exhaustive(spec: &GameSpec, caps: &Caps) -> Result<PoAReport> {
    crate::equilibria::ensure_exact_feasible(spec, caps)?;
    let parts = sweep_profiles(spec, caps, Acc::default, |acc, p| {
        let r = Realization::from_profile(p);
        let d = DistanceMatrix::compute(r.underlying()).diameter();
        acc.min_real = min_opt(acc.min_real, Some(d));
        if crate::equilibria::exact_check_on(&r, spec, p).is_equilibrium {
            acc.eq_count += 1;
            acc.eq_min = min_opt(acc.eq_min, Some(d));
            acc.eq_max = max_opt(acc.eq_max, Some(d));
        }
    })?;
    let total = parts.iter().fold(Acc::default(), |a, b| Acc {
        min_real: min_opt(a.min_real, b.min_real),
        eq_count: a.eq_count + b.eq_count,
        eq_min: min_opt(a.eq_min, b.eq_min),
        eq_max: max_opt(a.eq_max, b.eq_max),
    });
    let min_real = total.min_real.unwrap_or(0);
    Ok(PoAReport {
        total_profiles: spec.profile_count(),
        min_realization_diameter: min_real,
        equilibrium_count: total.eq_count,
        max_equilibrium_diameter: total.eq_max,
        min_equilibrium_diameter: total.eq_min,
        price_of_anarchy: total.eq_max.map(|d| Ratio::new(d, min_real)),
        price_of_stability: total.eq_min.map(|d| Ratio::new(d, min_real)),
    })
}
