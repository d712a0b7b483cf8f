//! Exact threshold quantities of a pattern and the degree-sequence lines
//! built from them. Everything here is exact rational arithmetic.

pub mod coloring;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::graph::{BottleShape, Graph};
use crate::rational::{self, ceil_int, floor_int, int, Rational};

/// `(h, r, σ, ω, χ_cr)` of a pattern, with a colouring that attains σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingParams {
    pub h: usize,
    pub r: usize,
    pub sigma: usize,
    /// `(h − σ)/(r − 1)`
    pub omega: Rational,
    /// `(r − 1)h/(h − σ)`
    pub chi_cr: Rational,
    /// Colour classes of an optimal colouring, smallest (size σ) first.
    pub classes: Vec<Vec<usize>>,
}

impl TilingParams {
    fn from_parts(h: usize, r: usize, sigma: usize, classes: Vec<Vec<usize>>) -> Self {
        let hh = int(h as i128);
        let ss = int(sigma as i128);
        let r1 = int(r as i128 - 1);
        TilingParams { h, r, sigma, omega: (hh - ss) / r1, chi_cr: r1 * hh / (hh - ss), classes }
    }

    /// Parameters of a bottle graph read off its shape: a complete `r`-partite
    /// graph has a unique `r`-colouring, so σ is the neck.
    pub fn for_bottle(shape: &BottleShape) -> Self {
        let mut classes = Vec::new();
        let mut start = 0;
        for s in shape.class_sizes() {
            classes.push((start..start + s).collect());
            start += s;
        }
        Self::from_parts(shape.order(), shape.r, shape.neck, classes)
    }

    pub fn h_rational(&self) -> Rational {
        int(self.h as i128)
    }

    pub fn sigma_rational(&self) -> Rational {
        int(self.sigma as i128)
    }

    /// The flat threshold `1 − 1/χ_cr = 1 − ω/h`.
    pub fn komlos_threshold(&self) -> Rational {
        Rational::one() - self.omega / self.h_rational()
    }
}

impl Serialize for TilingParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TilingParams", 5)?;
        st.serialize_field("h", &self.h)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("sigma", &self.sigma)?;
        st.serialize_field("omega", &rational::format(&self.omega))?;
        st.serialize_field("chi_cr", &rational::format(&self.chi_cr))?;
        st.end()
    }
}

/// Computes χ(H) exactly, then σ(H) as the minimum over all proper
/// χ-colourings of the smallest class.
pub fn chromatic_data(pattern: &Graph) -> Result<TilingParams> {
    if pattern.order() == 0 {
        return Err(invalid("pattern has no vertices"));
    }
    if pattern.edge_count() == 0 {
        return Err(Error::Unsupported("edgeless pattern: χ = 1 leaves 1/(r − 1) undefined".into()));
    }
    let (r, _) = coloring::chromatic_number(pattern);
    let (sigma, classes) = coloring::min_smallest_class(pattern, r).expect("an r-colouring exists");
    Ok(TilingParams::from_parts(pattern.order(), r, sigma, classes))
}

/// `g_H(x) = x(1 − 1/χ_cr) + (1 − x)(1 − 1/(r − 1))` for `0 < x ≤ 1`.
pub fn g_of_x(params: &TilingParams, x: Rational) -> Result<Rational> {
    if x <= Rational::zero() || x > Rational::one() {
        return Err(invalid(format!("x = {} outside (0, 1]", rational::format(&x))));
    }
    let one = Rational::one();
    let r1 = int(params.r as i128 - 1);
    Ok(x * (one - one / params.chi_cr) + (one - x) * (one - one / r1))
}

/// The degree lower bound `i ↦ (intercept + slack)·n + slope·i` for
/// `1 ≤ i ≤ ⌊cutoff·n⌋`. `plateau` is the level the sloped part reaches at
/// the cutoff; it is checked against the other coefficients on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundLine {
    #[serde(with = "rational::serde_str")]
    pub intercept: Rational,
    #[serde(with = "rational::serde_str")]
    pub slope: Rational,
    #[serde(with = "rational::serde_str")]
    pub cutoff: Rational,
    #[serde(with = "rational::serde_str")]
    pub slack: Rational,
    #[serde(with = "rational::serde_str")]
    pub plateau: Rational,
}

impl BoundLine {
    pub fn new(
        intercept: Rational,
        slope: Rational,
        cutoff: Rational,
        slack: Rational,
        plateau: Rational,
    ) -> Result<Self> {
        if slack < Rational::zero() {
            return Err(invalid("slack must be non-negative"));
        }
        if intercept + slope * cutoff != plateau {
            return Err(invalid(format!(
                "line does not meet its plateau: {} + {}·{} ≠ {}",
                rational::format(&intercept),
                rational::format(&slope),
                rational::format(&cutoff),
                rational::format(&plateau)
            )));
        }
        Ok(BoundLine { intercept, slope, cutoff, slack, plateau })
    }

    /// Exact real bound at index `i` for an `n`-vertex graph.
    pub fn value(&self, n: usize, i: usize) -> Rational {
        let n = int(n as i128);
        (self.intercept + self.slack) * n + self.slope * int(i as i128)
    }

    /// Smallest integer degree meeting the bound at `i`.
    pub fn required_degree(&self, n: usize, i: usize) -> i128 {
        ceil_int(&self.value(n, i))
    }

    /// `⌊cutoff·n⌋`, the last constrained index.
    pub fn last_index(&self, n: usize) -> usize {
        floor_int(&(self.cutoff * int(n as i128))).max(0) as usize
    }

    /// The flat level after the cutoff, `(plateau + slack)·n`.
    pub fn plateau_value(&self, n: usize) -> Rational {
        (self.plateau + self.slack) * int(n as i128)
    }

    pub fn with_slack(&self, slack: Rational) -> Result<Self> {
        Self::new(self.intercept, self.slope, self.cutoff, slack, self.plateau)
    }
}

/// `d_i ≥ (1 − (ω+σ)/h)n + (σ/ω)i + ηn` for `i ≤ ωn/h`.
pub fn komlos_line(params: &TilingParams, eta: Rational) -> Result<BoundLine> {
    let h = params.h_rational();
    let s = params.sigma_rational();
    let w = params.omega;
    BoundLine::new(Rational::one() - (w + s) / h, s / w, w / h, eta, Rational::one() - w / h)
}

/// `d_i ≥ (g_H(x) − xσ/h)n + ((r−1)xσ/(h − xσ))i` for `i ≤ (h − xσ)n/((r−1)h)`.
pub fn x_line(params: &TilingParams, x: Rational) -> Result<BoundLine> {
    if x <= Rational::zero() || x >= Rational::one() {
        return Err(invalid(format!("x = {} outside (0, 1)", rational::format(&x))));
    }
    let g = g_of_x(params, x)?;
    let h = params.h_rational();
    let s = params.sigma_rational();
    let r1 = int(params.r as i128 - 1);
    BoundLine::new(g - x * s / h, r1 * x * s / (h - x * s), (h - x * s) / (r1 * h), Rational::zero(), g)
}

/// The line of the balanced-shift family: any `σ(H) ≤ σ′ ≤ h/r` with
/// `ω′ = (h − σ′)/(r − 1)` in place of `(σ, ω)`.
pub fn general_line(params: &TilingParams, sigma_prime: Rational) -> Result<BoundLine> {
    let h = params.h_rational();
    let r = int(params.r as i128);
    if sigma_prime < params.sigma_rational() || sigma_prime > h / r {
        return Err(invalid(format!(
            "σ′ = {} outside [{}, {}]",
            rational::format(&sigma_prime),
            params.sigma,
            rational::format(&(h / r))
        )));
    }
    let w = (h - sigma_prime) / (r - Rational::one());
    BoundLine::new(
        Rational::one() - (w + sigma_prime) / h,
        sigma_prime / w,
        w / h,
        Rational::zero(),
        Rational::one() - w / h,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum DegreeCheck {
    Pass,
    Fail { index: usize, degree: usize, required: i128 },
}

impl DegreeCheck {
    pub fn passed(&self) -> bool {
        matches!(self, DegreeCheck::Pass)
    }
}

/// Every index `i ≤ ⌊cutoff·n⌋` with `d_i < ⌈bound(i)⌉`, as `(i, d_i, required)`.
pub fn degree_violations(g: &Graph, line: &BoundLine) -> Vec<(usize, usize, i128)> {
    let n = g.order();
    let d = g.sorted_degrees();
    (1..=line.last_index(n).min(n))
        .filter_map(|i| {
            let req = line.required_degree(n, i);
            ((d[i - 1] as i128) < req).then_some((i, d[i - 1], req))
        })
        .collect()
}

/// Sorts degrees ascending and tests `d_i ≥ ⌈bound(i)⌉` up to the cutoff,
/// reporting the first failure.
pub fn check_degree_sequence(g: &Graph, line: &BoundLine) -> DegreeCheck {
    match degree_violations(g, line).first() {
        None => DegreeCheck::Pass,
        Some(&(index, degree, required)) => DegreeCheck::Fail { index, degree, required },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_multipartite;
    use crate::rational::ratio;

    fn star(t: usize) -> Graph {
        complete_multipartite(&[1, t]).unwrap().graph
    }

    #[test]
    fn chromatic_data_examples() {
        let c5 = chromatic_data(&Graph::cycle(5)).unwrap();
        assert_eq!((c5.h, c5.r, c5.sigma), (5, 3, 1));
        assert_eq!(c5.omega, int(2));
        assert_eq!(c5.chi_cr, ratio(5, 2));

        let k246 = chromatic_data(&complete_multipartite(&[2, 4, 6]).unwrap().graph).unwrap();
        assert_eq!((k246.h, k246.r, k246.sigma), (12, 3, 2));
        assert_eq!(k246.omega, int(5));
        assert_eq!(k246.chi_cr, ratio(12, 5));

        for t in 2..=7 {
            let kt = chromatic_data(&Graph::complete(t)).unwrap();
            assert_eq!((kt.h, kt.r, kt.sigma), (t, t, 1));
            assert_eq!(kt.omega, int(1));
            assert_eq!(kt.chi_cr, int(t as i128));
        }
    }

    #[test]
    fn edgeless_rejected() {
        assert!(matches!(chromatic_data(&Graph::empty(3).unwrap()), Err(Error::Unsupported(_))));
        assert!(chromatic_data(&Graph::empty(0).unwrap()).is_err());
    }

    #[test]
    fn g_examples() {
        let c5 = chromatic_data(&Graph::cycle(5)).unwrap();
        assert_eq!(g_of_x(&c5, int(1)).unwrap(), ratio(3, 5));
        assert_eq!(g_of_x(&c5, ratio(1, 2)).unwrap(), ratio(11, 20));
        let near_zero = g_of_x(&c5, ratio(1, 1_000_000)).unwrap();
        assert!(rational::to_f64(&(near_zero - ratio(1, 2))).abs() < 1e-5);
        assert!(g_of_x(&c5, int(0)).is_err());
        assert!(g_of_x(&c5, ratio(3, 2)).is_err());
    }

    #[test]
    fn komlos_line_examples() {
        let c5 = chromatic_data(&Graph::cycle(5)).unwrap();
        let l = komlos_line(&c5, int(0)).unwrap();
        assert_eq!((l.intercept, l.slope, l.cutoff), (ratio(2, 5), ratio(1, 2), ratio(2, 5)));
        assert_eq!(l.value(100, 40), int(60));
        assert_eq!(l.plateau, ratio(3, 5));

        let k4 = chromatic_data(&Graph::complete(4)).unwrap();
        let l = komlos_line(&k4, int(0)).unwrap();
        assert_eq!((l.intercept, l.slope, l.cutoff), (ratio(2, 4), int(1), ratio(1, 4)));

        for t in 1..=5 {
            let p = chromatic_data(&star(t)).unwrap();
            let l = komlos_line(&p, int(0)).unwrap();
            assert_eq!(l.intercept, int(0));
            assert_eq!(l.slope, ratio(1, t as i128));
            assert_eq!(l.plateau, ratio(1, t as i128 + 1));
        }
    }

    #[test]
    fn x_line_limits_and_values() {
        let c5 = chromatic_data(&Graph::cycle(5)).unwrap();
        let k = komlos_line(&c5, int(0)).unwrap();
        let near = x_line(&c5, Rational::one() - ratio(1, 1_000_000)).unwrap();
        for (a, b) in [(near.intercept, k.intercept), (near.slope, k.slope), (near.cutoff, k.cutoff)] {
            assert!(rational::to_f64(&(a - b)).abs() < 1e-4);
        }
        let l = x_line(&c5, ratio(1, 2)).unwrap();
        assert_eq!(l.intercept + l.slope * l.cutoff, g_of_x(&c5, ratio(1, 2)).unwrap());
        assert!(x_line(&c5, int(1)).is_err());
        assert!(x_line(&c5, int(0)).is_err());

        // K3 at x = 1/3: g = 1/3·2/3 + 2/3·1/2 = 5/9, intercept 5/9 − 1/9 = 4/9,
        // slope 2·(1/3)/(3 − 1/3) = 1/4, cutoff (8/3)/6 = 4/9
        let k3 = chromatic_data(&Graph::complete(3)).unwrap();
        let l = x_line(&k3, ratio(1, 3)).unwrap();
        assert_eq!((l.intercept, l.slope, l.cutoff), (ratio(4, 9), ratio(1, 4), ratio(4, 9)));
    }

    #[test]
    fn general_line_examples() {
        let c5 = chromatic_data(&Graph::cycle(5)).unwrap();
        assert_eq!(general_line(&c5, int(1)).unwrap(), komlos_line(&c5, int(0)).unwrap());
        let bal = general_line(&c5, ratio(5, 3)).unwrap();
        assert_eq!((bal.intercept, bal.slope, bal.cutoff), (ratio(1, 3), int(1), ratio(1, 3)));
        let mid = general_line(&c5, ratio(3, 2)).unwrap();
        assert_eq!((mid.slope, mid.cutoff), (ratio(6, 7), ratio(7, 20)));
        assert!(general_line(&c5, ratio(1, 2)).is_err());
        assert!(general_line(&c5, int(2)).is_err());
    }

    #[test]
    fn degree_checks() {
        let c5 = chromatic_data(&Graph::cycle(5)).unwrap();
        let l = komlos_line(&c5, int(0)).unwrap();
        assert_eq!(check_degree_sequence(&Graph::complete(20), &l), DegreeCheck::Pass);
        assert_eq!(
            check_degree_sequence(&Graph::empty(20).unwrap(), &l),
            DegreeCheck::Fail { index: 1, degree: 0, required: 9 }
        );
    }

    #[test]
    fn bottle_params_match_search() {
        let shape = BottleShape::new(3, 2, 5).unwrap();
        let direct = TilingParams::for_bottle(&shape);
        let searched = chromatic_data(&shape.build().graph).unwrap();
        assert_eq!((direct.h, direct.r, direct.sigma), (searched.h, searched.r, searched.sigma));
        assert_eq!(direct.chi_cr, searched.chi_cr);
    }

    #[test]
    fn line_rejects_inconsistent_plateau() {
        assert!(BoundLine::new(int(0), int(1), ratio(1, 2), int(0), int(1)).is_err());
        assert!(BoundLine::new(int(0), int(1), ratio(1, 2), int(-1), ratio(1, 2)).is_err());
    }
}
