use fock_core::exactnum::{gaussian, int, ExactMatrix, GaussianRational, Rational};
use fock_core::fock::{
    compound_poisson_moments, interval_joint_moment, joint_moment_coherent, joint_moment_oracle,
    mean_variance, poisson_raw_moment, AffineProcessSpec, CoherentState, IntervalAssignment,
};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-10i64..=10, 1i64..=10).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn time() -> impl Strategy<Value = Rational> {
    (0i64..=10, 1i64..=6).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn small_gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rational(), small_rational()).prop_map(|(a, b)| gaussian(a, b))
}

fn matrix(d: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(small_gaussian(), d * d).prop_map(move |e| ExactMatrix::new(d, d, e).unwrap())
}

fn vector(d: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    prop::collection::vec(small_gaussian(), d)
}

fn real(x: Rational) -> GaussianRational {
    gaussian(x, int(0))
}

/// `n` operators, `ψ`, `φ` on a common space of dimension `1..=3`.
fn instance(
    max_n: usize,
) -> impl Strategy<Value = (Vec<ExactMatrix>, Vec<GaussianRational>, Vec<GaussianRational>)> {
    (1usize..=3, 1usize..=max_n).prop_flat_map(|(d, n)| {
        (prop::collection::vec(matrix(d), n), vector(d), vector(d))
    })
}

fn specs(ms: &[ExactMatrix]) -> Vec<AffineProcessSpec> {
    ms.iter().cloned().map(AffineProcessSpec::matrix).collect()
}

/// `diag(m, 0)` or `diag(0, m)` on `V ⊕ V`.
fn block(m: &ExactMatrix, second: bool) -> ExactMatrix {
    let d = m.rows();
    ExactMatrix::from_fn(2 * d, 2 * d, |i, j| {
        let off = if second { d } else { 0 };
        if i >= off && i < off + d && j >= off && j < off + d {
            m.get(i - off, j - off).clone()
        } else {
            GaussianRational::zero()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn oracle_equivalence((ms, psi, phi) in instance(5), t in time()) {
        let psi = CoherentState::new(psi).unwrap();
        let phi = CoherentState::new(phi).unwrap();
        let ops = specs(&ms);
        prop_assert_eq!(
            joint_moment_coherent(&ops, &psi, &phi, &t).unwrap(),
            joint_moment_oracle(&ops, &psi, &phi, &t).unwrap()
        );
    }

    #[test]
    fn multilinear_in_each_slot(
        (ms, psi, phi) in instance(4),
        extra in (1usize..=3).prop_flat_map(matrix),
        a in small_gaussian(),
        b in small_gaussian(),
        slot in 0usize..4,
        t in time(),
    ) {
        let d = ms[0].rows();
        prop_assume!(extra.rows() == d);
        let slot = slot % ms.len();
        let psi = CoherentState::new(psi).unwrap();
        let phi = CoherentState::new(phi).unwrap();
        let mut mixed = ms.clone();
        mixed[slot] = ms[slot].scale(&a).add(&extra.scale(&b)).unwrap();
        let mut other = ms.clone();
        other[slot] = extra;
        let lhs = joint_moment_coherent(&specs(&mixed), &psi, &phi, &t).unwrap();
        let rhs = &a * joint_moment_coherent(&specs(&ms), &psi, &phi, &t).unwrap()
            + &b * joint_moment_coherent(&specs(&other), &psi, &phi, &t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mean_and_variance_are_linear_in_t(m in matrix(2), t in time(), u in time()) {
        let psi = CoherentState::unit(vec![real(Rational::new(3.into(), 5.into())), gaussian(int(0), Rational::new(4.into(), 5.into()))]).unwrap();
        let spec = AffineProcessSpec::matrix(m);
        let (m1, v1) = mean_variance(&spec, &psi, &t).unwrap();
        let (m2, v2) = mean_variance(&spec, &psi, &u).unwrap();
        let (m3, v3) = mean_variance(&spec, &psi, &(&t + &u)).unwrap();
        prop_assert_eq!(m3, m1 + m2);
        prop_assert_eq!(v3, v1 + v2);
    }

    #[test]
    fn scalar_processes_are_compound_poisson(
        jumps in prop::collection::vec(small_rational(), 1..=3),
        picks in prop::collection::vec(0usize..3, 1..=5),
        t in (1i64..=10, 1i64..=6).prop_map(|(p, q)| Rational::new(p.into(), q.into())),
    ) {
        let picks: Vec<usize> = picks.into_iter().map(|p| p % jumps.len()).collect();
        let psi = CoherentState::scalar_unit();
        let ops: Vec<AffineProcessSpec> =
            picks.iter().map(|&p| AffineProcessSpec::real_scalar(jumps[p].clone())).collect();
        let quantum = joint_moment_coherent(&ops, &psi, &psi, &t).unwrap();
        let cjumps: Vec<GaussianRational> = jumps.iter().cloned().map(real).collect();
        let factors: Vec<(usize, usize)> = picks.iter().map(|&p| (p, 0)).collect();
        prop_assert_eq!(quantum, compound_poisson_moments(&cjumps, &[t], &factors).unwrap());
    }

    #[test]
    fn multi_time_scalar_moments(
        jumps in prop::collection::vec(small_rational(), 1..=2),
        factors in prop::collection::vec((0usize..2, 0usize..3), 1..=4),
        steps in prop::collection::vec((1i64..=6, 1i64..=4), 3),
    ) {
        // t_1 < t_2 < t_3 from positive steps
        let mut grid = Vec::new();
        let mut acc = Rational::zero();
        for (p, q) in steps {
            acc += Rational::new(p.into(), q.into());
            grid.push(acc.clone());
        }
        let factors: Vec<(usize, usize)> =
            factors.into_iter().map(|(p, g)| (p % jumps.len(), g)).collect();
        // expand each Λ_{t_g} into increments over [t_{h−1}, t_h), h ≤ g, and sum the
        // interval moments of every choice
        let intervals: Vec<(Rational, Rational)> = (0..grid.len())
            .map(|h| (if h == 0 { Rational::zero() } else { grid[h - 1].clone() }, grid[h].clone()))
            .collect();
        let specs: Vec<AffineProcessSpec> =
            jumps.iter().map(|c| AffineProcessSpec::real_scalar(c.clone())).collect();
        let psi = CoherentState::scalar_unit();
        let mut total = GaussianRational::zero();
        let mut choice = vec![0usize; factors.len()];
        loop {
            let assignment = IntervalAssignment {
                intervals: intervals.clone(),
                factors: factors.iter().zip(&choice).map(|(&(p, _), &h)| (p, h)).collect(),
            };
            total += interval_joint_moment(&assignment, &specs, &psi).unwrap();
            // odometer over h_k ∈ 0..=g_k
            let mut k = 0;
            while k < choice.len() {
                if choice[k] < factors[k].1 {
                    choice[k] += 1;
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
        let cjumps: Vec<GaussianRational> = jumps.iter().cloned().map(real).collect();
        prop_assert_eq!(total, compound_poisson_moments(&cjumps, &grid, &factors).unwrap());
    }

    #[test]
    fn factorization_matches_direct_sum_oracle(
        (ms, _, _) in instance(4),
        sides in prop::collection::vec(any::<bool>(), 4),
        l1 in (1i64..=5, 1i64..=3),
        l2 in (1i64..=5, 1i64..=3),
        gap in 0i64..=2,
    ) {
        let d = ms[0].rows();
        let psi_v: Vec<GaussianRational> = (0..d)
            .map(|i| if i == 0 { real(int(1)) } else { GaussianRational::zero() })
            .collect();
        let psi = CoherentState::unit(psi_v.clone()).unwrap();
        let (l1, l2) = (
            Rational::new(l1.0.into(), l1.1.into()),
            Rational::new(l2.0.into(), l2.1.into()),
        );
        let s2 = &l1 + int(gap);
        let assignment = IntervalAssignment {
            intervals: vec![(int(0), l1.clone()), (s2.clone(), &s2 + &l2)],
            factors: (0..ms.len()).map(|k| (k, sides[k] as usize)).collect(),
        };
        let value = interval_joint_moment(&assignment, &specs(&ms), &psi).unwrap();

        let doubled: Vec<AffineProcessSpec> = ms
            .iter()
            .zip(&sides)
            .map(|(m, &second)| AffineProcessSpec::matrix(block(m, second)))
            .collect();
        let psi2: Vec<GaussianRational> = psi_v.iter().chain(&psi_v).cloned().collect();
        let phi2: Vec<GaussianRational> = psi_v
            .iter()
            .map(|x| x * real(l1.clone()))
            .chain(psi_v.iter().map(|x| x * real(l2.clone())))
            .collect();
        let oracle = joint_moment_oracle(
            &doubled,
            &CoherentState::new(psi2).unwrap(),
            &CoherentState::new(phi2).unwrap(),
            &int(1),
        )
        .unwrap();
        prop_assert_eq!(value, oracle);
    }
}

#[test]
fn touchard_consistency() {
    let psi = CoherentState::scalar_unit();
    for t in [Rational::new(1.into(), 3.into()), int(1), int(4)] {
        for m in 1..=6 {
            let ops = vec![AffineProcessSpec::real_scalar(int(1)); m];
            let v = joint_moment_coherent(&ops, &psi, &psi, &t).unwrap();
            assert_eq!(v, real(poisson_raw_moment(m, &t)));
            let cp = compound_poisson_moments(&[real(int(1))], std::slice::from_ref(&t), &vec![(0, 0); m]).unwrap();
            assert_eq!(v, cp);
        }
    }
}
