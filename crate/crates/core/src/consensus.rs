//! Chebyshev-accelerated gossip.

use crate::error::{Error, Result};
use crate::linalg::{apply, MultiVector};
use crate::network::GossipMatrix;

/// Constants of the K-round Chebyshev mixing polynomial
/// `P_K(x) = 1 - T_K(c1 (1 - x)) / T_K(c1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebyshevPlan {
    pub k: usize,
    pub eta: f64,
    pub c0: f64,
    /// `+inf` when `eta = 1`.
    pub c1: f64,
    pub c2: f64,
    pub delta: f64,
}

impl ChebyshevPlan {
    /// Builds the plan for eigengap `eta`, with `K = ceil(1/sqrt(eta))` unless overridden.
    pub fn plan(eta: f64, k_override: Option<usize>) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::InvalidEigengap(eta));
        }
        let k = match k_override {
            Some(0) => return Err(Error::InvalidParameter("K must be at least 1".into())),
            Some(k) => k,
            // The small offset keeps exact squares such as eta = 1/4 from
            // rounding up to the next integer.
            None => ((1.0 / eta.sqrt()) - 1e-12).ceil().max(1.0) as usize,
        };
        let s = eta.sqrt();
        let c0 = (1.0 - s) / (1.0 + s);
        let c1 = if eta == 1.0 {
            f64::INFINITY
        } else {
            (1.0 + eta) / (1.0 - eta)
        };
        let c0k = c0.powi(k as i32);
        let delta = 2.0 * c0k / (1.0 + c0k * c0k);
        let c2 = 1.0 / (1.0 + delta);
        Ok(Self {
            k,
            eta,
            c0,
            c1,
            c2,
            delta,
        })
    }

    /// Evaluates `P_K` at a scalar with the same recursion used on multivectors.
    pub fn polynomial(&self, x: f64) -> f64 {
        if self.k == 1 {
            return x;
        }
        if self.c1.is_infinite() {
            return 1.0 - (1.0 - x).powi(self.k as i32);
        }
        let (mut a_prev, mut a) = (1.0, self.c1);
        let (mut z_prev, mut z) = (1.0, self.c1 * (1.0 - x));
        for _ in 1..self.k {
            let a_next = 2.0 * self.c1 * a - a_prev;
            let z_next = 2.0 * self.c1 * (1.0 - x) * z - z_prev;
            a_prev = a;
            a = a_next;
            z_prev = z;
            z = z_next;
        }
        1.0 - z / a
    }
}

/// `P_K(L) X`, using exactly `K` applications of `L`.
///
/// `l` must already be scaled with [`crate::network::scale_for_chebyshev`].
/// For `K = 1` the polynomial is the identity and `L X` is returned. When the
/// eigengap is 1 and `K > 1`, `c1` is infinite and the limit polynomial
/// `1 - (1 - x)^K` is used.
pub fn acc_gossip(x: &MultiVector, l: &GossipMatrix, plan: &ChebyshevPlan) -> Result<MultiVector> {
    if l.m() != x.m() {
        return Err(Error::ShapeError(format!(
            "gossip matrix has {} rows, multivector has {}",
            l.m(),
            x.m()
        )));
    }
    let lmat = l.matrix();
    if plan.k == 1 {
        return apply(lmat, x);
    }
    // (I - L) z
    let mix = |z: &MultiVector| -> Result<MultiVector> {
        let lz = apply(lmat, z)?;
        Ok(z.sub(&lz))
    };
    if plan.c1.is_infinite() {
        let mut z = x.clone();
        for _ in 0..plan.k {
            z = mix(&z)?;
        }
        return Ok(x.sub(&z));
    }
    let c1 = plan.c1;
    let (mut a_prev, mut a) = (1.0, c1);
    let mut z_prev = x.clone();
    let mut z = mix(x)?.scaled(c1);
    for _ in 1..plan.k {
        let a_next = 2.0 * c1 * a - a_prev;
        let z_next = MultiVector::lincomb(2.0 * c1, &mix(&z)?, -1.0, &z_prev);
        a_prev = a;
        a = a_next;
        z_prev = z;
        z = z_next;
    }
    Ok(MultiVector::lincomb(1.0, x, -1.0 / a, &z))
}

/// `max |P_K(lambda) - 1|` over the nonzero eigenvalues of `l`.
pub fn contraction_certificate(l: &GossipMatrix, plan: &ChebyshevPlan) -> f64 {
    l.eigen().values[1..]
        .iter()
        .map(|&lam| (plan.polynomial(lam) - 1.0).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{build_topology, laplacian, scale_for_chebyshev, TopologyKind};
    use crate::rng::Stream;

    fn scaled(kind: TopologyKind, m: usize, seed: u64) -> GossipMatrix {
        let g = build_topology(kind, m, seed).unwrap();
        scale_for_chebyshev(&laplacian(&g).unwrap()).unwrap()
    }

    /// `T_K(t)` from the trigonometric and hyperbolic closed forms.
    fn chebyshev_t(k: usize, t: f64) -> f64 {
        let k = k as f64;
        if t.abs() <= 1.0 {
            (k * t.acos()).cos()
        } else if t > 1.0 {
            (k * t.acosh()).cosh()
        } else {
            let sign = if (k as i64) % 2 == 0 { 1.0 } else { -1.0 };
            sign * (k * (-t).acosh()).cosh()
        }
    }

    #[test]
    fn constants_for_one_third() {
        let p = ChebyshevPlan::plan(1.0 / 3.0, None).unwrap();
        assert_eq!(p.k, 2);
        assert!((p.c1 - 2.0).abs() < 1e-14);
        assert!((p.c0 - 0.267_949_192_431_122_7).abs() < 1e-12);
        // c0 = 2 - sqrt(3), so delta = 1/7 and c2 = 7/8 exactly.
        assert!((p.delta - 1.0 / 7.0).abs() < 1e-14);
        assert!((p.c2 - 0.875).abs() < 1e-14);
    }

    #[test]
    fn unit_gap_is_degenerate() {
        let p = ChebyshevPlan::plan(1.0, None).unwrap();
        assert_eq!((p.k, p.c0, p.delta, p.c2), (1, 0.0, 0.0, 1.0));
    }

    #[test]
    fn exact_square_gap() {
        assert_eq!(ChebyshevPlan::plan(0.25, None).unwrap().k, 2);
        assert_eq!(ChebyshevPlan::plan(0.01, None).unwrap().k, 10);
    }

    #[test]
    fn bad_gap_rejected() {
        for eta in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(
                ChebyshevPlan::plan(eta, None),
                Err(Error::InvalidEigengap(_))
            ));
        }
    }

    #[test]
    fn polynomial_matches_closed_form() {
        let p = ChebyshevPlan::plan(0.05, Some(5)).unwrap();
        for i in 0..=20 {
            let x = i as f64 * 0.1;
            let want = 1.0 - chebyshev_t(5, p.c1 * (1.0 - x)) / chebyshev_t(5, p.c1);
            assert!((p.polynomial(x) - want).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn consensual_input_vanishes() {
        let l = scaled(TopologyKind::Line, 6, 0);
        let plan = ChebyshevPlan::plan(l.eigengap(), None).unwrap();
        let x = MultiVector::consensus(6, &[1.0, -2.0, 3.5]);
        let out = acc_gossip(&x, &l, &plan).unwrap();
        assert!(out.max_abs() <= 1e-10);
    }

    #[test]
    fn single_round_is_plain_gossip() {
        let l = scaled(TopologyKind::Ring, 5, 0);
        let plan = ChebyshevPlan::plan(l.eigengap(), Some(1)).unwrap();
        let mut rng = Stream::new(4);
        let x = MultiVector::from_fn(5, 3, |_| (0..3).map(|_| rng.normal()).collect());
        let out = acc_gossip(&x, &l, &plan).unwrap();
        assert_eq!(out, apply(l.matrix(), &x).unwrap());
    }

    #[test]
    fn path_five_matches_spectral_oracle() {
        let l = scaled(TopologyKind::Line, 5, 0);
        let plan = ChebyshevPlan::plan(l.eigengap(), Some(2)).unwrap();
        let mut rng = Stream::new(3);
        let x = MultiVector::from_fn(5, 4, |_| (0..4).map(|_| rng.normal()).collect());
        let c1 = plan.c1;
        let poly = l
            .eigen()
            .matrix_function(|lam| 1.0 - chebyshev_t(2, c1 * (1.0 - lam)) / chebyshev_t(2, c1));
        let want = apply(&poly, &x).unwrap();
        let got = acc_gossip(&x, &l, &plan).unwrap();
        assert!(got.max_abs_diff(&want) < 1e-8);
    }

    #[test]
    fn certificates() {
        let l = scaled(TopologyKind::Complete, 2, 0);
        let plan = ChebyshevPlan::plan(l.eigengap(), None).unwrap();
        assert!(contraction_certificate(&l, &plan).abs() < 1e-15);

        let l = scaled(TopologyKind::Line, 3, 0);
        let plan = ChebyshevPlan::plan(l.eigengap(), Some(2)).unwrap();
        let cert = contraction_certificate(&l, &plan);
        assert!(cert <= plan.delta + 1e-12);
    }

    #[test]
    fn unit_gap_with_extra_rounds_is_exact() {
        let l = scaled(TopologyKind::Complete, 4, 0);
        let plan = ChebyshevPlan::plan(l.eigengap(), Some(3)).unwrap();
        let x = MultiVector::from_rows(&[vec![1.0], vec![2.0], vec![3.0], vec![6.0]]).unwrap();
        let out = acc_gossip(&x, &l, &plan).unwrap();
        let want = x.centered();
        assert!(out.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn mixing_matrix_spectrum_in_range() {
        let l = scaled(TopologyKind::ErdosRenyi { p: 0.3 }, 12, 9);
        let plan = ChebyshevPlan::plan(l.eigengap(), None).unwrap();
        let lo = 1.0 - plan.c2 * (1.0 + plan.delta);
        for (i, &lam) in l.eigen().values.iter().enumerate() {
            let a = 1.0 - plan.c2 * plan.polynomial(lam);
            assert!(a >= lo - 1e-12 && a <= 1.0 + 1e-12);
            if i == 0 {
                assert!((a - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn shape_mismatch() {
        let l = scaled(TopologyKind::Line, 3, 0);
        let plan = ChebyshevPlan::plan(l.eigengap(), None).unwrap();
        let x = MultiVector::zeros(4, 1);
        assert!(matches!(acc_gossip(&x, &l, &plan), Err(Error::ShapeError(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn column_sums_vanish(m in 3usize..12, seed in 0u64..1000, k in 1usize..6) {
                let l = scaled(TopologyKind::ErdosRenyi { p: 0.4 }, m, seed);
                let plan = ChebyshevPlan::plan(l.eigengap(), Some(k)).unwrap();
                let mut rng = Stream::new(seed);
                let x = MultiVector::from_fn(m, 2, |_| vec![rng.normal(), rng.normal()]);
                let out = acc_gossip(&x, &l, &plan).unwrap();
                for s in out.column_sums() {
                    prop_assert!(s.abs() <= 1e-10);
                }
            }

            #[test]
            fn contraction_bound_holds(eta in 1e-4f64..1.0) {
                let plan = ChebyshevPlan::plan(eta, None).unwrap();
                prop_assert!(plan.delta >= 0.0 && plan.delta < 1.0);
                prop_assert!(plan.c2 > 0.5 && plan.c2 <= 1.0);
                prop_assert!(((1.0 + plan.delta) / (1.0 - plan.delta)).sqrt() <= 2.5);
                // Scaled nonzero spectrum spans [1 - 1/c1, 1 + 1/c1].
                let half = 1.0 / plan.c1;
                for i in 0..=50 {
                    let lam = 1.0 - half + 2.0 * half * i as f64 / 50.0;
                    prop_assert!((plan.polynomial(lam) - 1.0).abs() <= plan.delta + 1e-12);
                }
            }
        }
    }
}
