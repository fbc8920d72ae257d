//! Cross-module invariants: consistency identities between the exact layer
//! and the numeric oracle, block/factor correspondences, and end-to-end
//! solver soundness on towers the acceptance examples do not reach.

use zerocycle::cycles::{invariant_parts, is_balanced, project, Chain};
use zerocycle::decompose::{decompose_chain, enumerate_right_factors, FactorTag};
use zerocycle::monodromy::{around_infinity, base_labeling, monodromy_generators, BlockSystem};
use zerocycle::numeric::{CPoly, C64};
use zerocycle::oracle::{
    chebyshev_integral_closed_form, chebyshev_integral_direct, semidirect_check, IntegralEvaluator,
    SamplePlan,
};
use zerocycle::polycore::{chebyshev, compose, power_sums, GRat, Poly};
use zerocycle::rng::SplitMix64;
use zerocycle::solver::{
    contains, sample_solutions, solve, solve_base_monomial_chebyshev, BaseKind, SolutionSpace,
    SolveOptions, Verdict,
};

fn z_pow(n: usize) -> Poly {
    Poly::monomial(n, GRat::one())
}

fn max_residual(ev: &IntegralEvaluator, chain: &Chain, g: &Poly) -> f64 {
    ev.residuals(chain, g).into_iter().fold(0.0, f64::max)
}

#[test]
fn tau_infinity_on_random_polynomials() {
    let mut rng = SplitMix64::new(0x7777);
    let mut checked = 0;
    for _ in 0..40 {
        let deg = 3 + (rng.next_u64() % 5) as usize;
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.int_in(-4, 4)).collect();
        coeffs[deg] = rng.nonzero_int_in(-4, 4);
        let f = Poly::from_int_coeffs(&coeffs);
        if f.deg() != deg {
            continue;
        }
        // degenerate critical geometry is allowed to refuse; success must be
        // consistent
        match monodromy_generators(&f) {
            Ok(mono) => {
                assert!(mono.tau_infinity_ok);
                let lab = base_labeling(&f).unwrap();
                let circle = around_infinity(&lab).unwrap();
                assert_eq!(
                    circle,
                    zerocycle::monodromy::Permutation::full_cycle(deg),
                    "circle property for {f}"
                );
                checked += 1;
            }
            Err(e) => {
                println!("skipped {f}: {e}");
            }
        }
    }
    assert!(checked >= 30, "only {checked} random polynomials verified");
}

#[test]
fn block_systems_match_right_factors() {
    // block sizes of G_f correspond to the proper right-factor degrees
    let cases = vec![
        z_pow(6),
        compose(
            &Poly::from_int_coeffs(&[0, 1, -1, 1]),
            &Poly::from_int_coeffs(&[-1, 0, 2, 1]),
        ),
        compose(&Poly::from_int_coeffs(&[0, 1, -1, 1]), &z_pow(6)),
    ];
    for f in cases {
        let chain = decompose_chain(&f).unwrap();
        let m = chain.degree();
        let mut factor_degrees: Vec<usize> = enumerate_right_factors(&chain)
            .iter()
            .map(|(_, h)| h.deg())
            .filter(|&d| d < m)
            .collect();
        factor_degrees.sort_unstable();
        let group = monodromy_generators(&f).unwrap().group(2_000_000);
        let mut block_sizes: Vec<usize> = group
            .imprimitivity_blocks()
            .unwrap()
            .iter()
            .map(|sys| sys.block_size())
            .collect();
        block_sizes.sort_unstable();
        assert_eq!(factor_degrees, block_sizes, "for {f}");
    }
}

#[test]
fn loop_generators_respect_blocks() {
    // inner-value loops move one block pointwise; outer-value loops map
    // blocks onto blocks
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    for inner in [Poly::from_int_coeffs(&[-1, 0, 2, 1]), z_pow(6)] {
        let rep = semidirect_check(&outer, &inner, 2_000_000).unwrap();
        assert!(rep.alpha_blocks_ok, "outer loops must map blocks to blocks");
        assert!(rep.beta_blocks_ok, "inner loops must move a single block");
        assert!(rep.product_matches && rep.intersection_trivial);
    }
}

#[test]
fn digit_lift_identity() {
    // For the two-transitive tower and a block-constant cycle, the integral
    // of any g equals the projected integral of gt = sum s_i g_i over d,
    // with the w-points taken as h(z_i) on the same continued fiber.
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    let inner = Poly::from_int_coeffs(&[-1, 0, 2, 1]);
    let f = compose(&outer, &inner);
    let cycle = Chain::new(vec![1, -1, 0, 1, -1, 0, 1, -1, 0]);
    let blocks = BlockSystem::residue_classes(9, 3);
    let projected = project(&cycle, &blocks).unwrap();
    let s = power_sums(&inner, 3).unwrap();

    let plan = SamplePlan {
        count: 6,
        seed: 0x1D,
        tolerance: 1e-8,
    };
    let ev = IntegralEvaluator::new(&f, &plan).unwrap();
    let hp = CPoly::from_poly(&inner);
    let mut rng = SplitMix64::new(0xD161);
    for _ in 0..10 {
        let coeffs: Vec<GRat> = (0..7).map(|_| GRat::from_int(rng.int_in(-3, 3))).collect();
        let g = Poly::new(coeffs);
        if g.is_zero() {
            continue;
        }
        let expansion = zerocycle::polycore::f_adic_expand(&g, &inner).unwrap();
        let mut gt = Poly::zero();
        for (digit, si) in expansion.digits.iter().zip(&s) {
            gt = &gt + &digit.scale(si);
        }
        let gp = CPoly::from_poly(&g);
        let gtp = CPoly::from_poly(&gt);
        for fiber in ev.fibers() {
            let mut lhs = C64::new(0.0, 0.0);
            for (i, &z) in fiber.iter().enumerate() {
                lhs += gp.eval(z) * cycle.coeff(i) as f64;
            }
            // w-points: h at the first member of each block
            let mut rhs = C64::new(0.0, 0.0);
            let mut scale = 1.0_f64;
            for (k, cell) in blocks.blocks().iter().enumerate() {
                let w = hp.eval(fiber[cell[0]]);
                let val = gtp.eval(w);
                scale = scale.max(val.norm());
                rhs += val * projected.coeff(k) as f64;
            }
            let resid = (lhs - rhs / 3.0).norm() / scale;
            assert!(resid < 1e-9, "digit lift identity residual {resid} for {g}");
        }
    }
}

#[test]
fn cubic_tower_known_solution_family() {
    // For the tower of two-transitive cubics with the balanced cycle, the
    // solution family with constant projected part and quadratic digits has
    // six explicit generators; every one must pass both the structural
    // membership and the numeric oracle. With h = z^3 + 2z^2 - 1:
    //   1,
    //   2/3 + z,
    //   (1+z)(2+3z)(-1+z+z^2)/3        = h (2+3z)/3,
    //   (2+3z)(-1+2z^2+z^3)^2/3        = h^2 (2+3z)/3,
    //   -4/3 + z^2,
    //   (1+z)(-1+z+z^2)(-4+3z^2)/3     = h (-4+3z^2)/3,
    //   (-4+3z^2)(-1+2z^2+z^3)^2/3     = h^2 (-4+3z^2)/3.
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    let inner = Poly::from_int_coeffs(&[-1, 0, 2, 1]);
    let f = compose(&outer, &inner);
    let cycle = Chain::new(vec![1, -1, 0, 1, -1, 0, 1, -1, 0]);
    let chain = decompose_chain(&f).unwrap();
    let space = solve(&chain, &cycle, &SolveOptions::default()).unwrap();
    let plan = SamplePlan {
        count: 10,
        seed: 0xFA,
        tolerance: 1e-9,
    };
    let ev = IntegralEvaluator::new(&f, &plan).unwrap();

    let third = GRat::from_ratio(1, 3);
    let lin1 = Poly::from_int_coeffs(&[2, 3]); // 2 + 3z
    let lin2 = Poly::from_int_coeffs(&[-4, 0, 3]); // -4 + 3z^2
    let members = vec![
        Poly::one(),
        Poly::new(vec![GRat::from_ratio(2, 3), GRat::one()]),
        (&inner * &lin1).scale(&third),
        (&(&inner * &inner) * &lin1).scale(&third),
        Poly::new(vec![GRat::from_ratio(-4, 3), GRat::zero(), GRat::one()]),
        (&inner * &lin2).scale(&third),
        (&(&inner * &inner) * &lin2).scale(&third),
    ];
    for g in &members {
        let verdict = contains(&space, g, &f, &cycle, &plan).unwrap();
        assert!(verdict.is_member(), "{g}: {verdict:?}");
        let worst = max_residual(&ev, &cycle, g);
        assert!(worst < 1e-9, "{g}: residual {worst:.2e}");
    }
    // arbitrary combinations stay inside the family
    let mut rng = SplitMix64::new(0x6A);
    for _ in 0..5 {
        let mut g = Poly::zero();
        for member in &members {
            g = &g + &member.scale(&GRat::from_int(rng.int_in(-2, 2)));
        }
        let worst = max_residual(&ev, &cycle, &g);
        assert!(worst < 1e-9, "combination residual {worst:.2e}");
    }
}

#[test]
fn base_case_completeness_over_pure_powers() {
    // for z^m the exponents passing the oracle are exactly the allowed set
    let chains4: Vec<Vec<i64>> = vec![
        vec![1, -1, 1, -1],
        vec![1, 0, -1, 0],
        vec![2, -1, 0, -1],
        vec![1, -1, 0, 0],
        vec![1, 1, 1, 1],
    ];
    let chains6: Vec<Vec<i64>> = vec![
        vec![1, -1, 1, -1, 1, -1],
        vec![2, -1, -1, 2, -1, -1],
        vec![1, -1, 0, 0, 0, 0],
        vec![1, 0, 0, -1, 0, 0],
        vec![1, 0, 1, 0, 1, 0],
    ];
    for (m, chain_set) in [(4usize, chains4), (6usize, chains6)] {
        let f = z_pow(m);
        let plan = SamplePlan {
            count: 6,
            seed: 99,
            tolerance: 1e-9,
        };
        let ev = IntegralEvaluator::new(&f, &plan).unwrap();
        for coeffs in chain_set {
            let chain = Chain::new(coeffs.clone());
            let allowed = solve_base_monomial_chebyshev(&chain, BaseKind::Power, m).allowed;
            for j in 0..m {
                let worst = max_residual(&ev, &chain, &z_pow(j));
                assert_eq!(
                    worst < 1e-9,
                    allowed.contains(&j),
                    "m = {m}, chain {coeffs:?}, j = {j}, residual {worst:.2e}"
                );
            }
        }
    }
}

#[test]
fn base_case_completeness_over_chebyshev() {
    // for T_m the Chebyshev exponents passing the oracle are exactly the
    // allowed set of the cyclotomic criterion
    let m = 6usize;
    let f = chebyshev(m);
    let plan = SamplePlan {
        count: 6,
        seed: 0x7E57,
        tolerance: 1e-9,
    };
    let ev = IntegralEvaluator::new(&f, &plan).unwrap();
    for coeffs in [
        vec![1i64, -1, 1, -1, 1, -1],
        vec![2, -1, -1, 2, -1, -1],
        vec![1, -1, 0, 0, 0, 0],
        vec![1, 0, 1, 0, 1, 0],
    ] {
        let chain = Chain::new(coeffs.clone());
        let node = solve_base_monomial_chebyshev(&chain, BaseKind::Chebyshev, m);
        for j in 0..m {
            let worst = max_residual(&ev, &chain, &chebyshev(j));
            let allowed = node.allowed.contains(&j) || node.allowed.contains(&((m - j) % m));
            assert_eq!(
                worst < 1e-9,
                allowed,
                "chain {coeffs:?}, T_{j}: residual {worst:.2e}"
            );
        }
    }
}

#[test]
fn chebyshev_closed_form_matrix() {
    for m in [4usize, 6] {
        let f = chebyshev(m);
        let plan = SamplePlan {
            count: 5,
            seed: 0xC0,
            tolerance: 1e-9,
        };
        let ev = IntegralEvaluator::new(&f, &plan).unwrap();
        let mut rng = SplitMix64::new(0xCC ^ m as u64);
        for _ in 0..4 {
            let mut coeffs: Vec<i64> = (0..m).map(|_| rng.int_in(-2, 2)).collect();
            let partial: i64 = coeffs[..m - 1].iter().sum();
            coeffs[m - 1] = -partial; // keep it a cycle (real coefficients)
            let chain = Chain::new(coeffs);
            for j in 0..m {
                for &t in &ev.samples {
                    let closed = chebyshev_integral_closed_form(&chain, j, m, t);
                    let direct = chebyshev_integral_direct(&chain, j, m, t, &ev);
                    let scale = 1.0 + closed.norm().max(direct.norm());
                    assert!(
                        (closed - direct).norm() / scale < 1e-9,
                        "m = {m}, j = {j}, t = {t}"
                    );
                }
            }
        }
    }
}

#[test]
fn residual_monotone_under_refinement() {
    let f = compose(&Poly::from_int_coeffs(&[0, 1, -1, 1]), &z_pow(6));
    let mut coeffs = vec![0i64; 18];
    for base in [0, 6, 12] {
        coeffs[base] = 1;
        coeffs[base + 1] = -1;
    }
    let cycle = Chain::new(coeffs);
    let plan = SamplePlan {
        count: 5,
        seed: 0xF1,
        tolerance: 1e-8,
    };
    let base = IntegralEvaluator::new(&f, &plan).unwrap();
    let refined = IntegralEvaluator::with_settings(
        &f,
        &plan,
        &zerocycle::monodromy::ContinuationSettings { step_scale: 0.5 },
    )
    .unwrap();
    // a member (residual at float noise) and a non-member (residual order 1)
    for g in [Poly::from_int_coeffs(&[0, 1]), z_pow(3)] {
        let r0 = max_residual(&base, &cycle, &g);
        let r1 = max_residual(&refined, &cycle, &g);
        assert!(
            r1 <= 10.0 * r0 + 1e-14,
            "refinement must not grow residual: {r0:.3e} -> {r1:.3e} for {g}"
        );
    }
}

#[test]
fn invariant_parts_of_balanced_cycles_are_balanced() {
    // the restriction of a balanced cycle to each block of a monomial or
    // Chebyshev inner factor is balanced as a chain of that factor
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    let f = compose(&outer, &z_pow(6));
    let mut coeffs = vec![0i64; 18];
    for base in [0, 6, 12] {
        coeffs[base] = 1;
        coeffs[base + 1] = -1;
    }
    let cycle = Chain::new(coeffs);
    let group = monodromy_generators(&f).unwrap().group(2_000_000);
    assert!(is_balanced(&cycle, &group));
    let inner_group = monodromy_generators(&z_pow(6)).unwrap().group(10_000);
    let blocks = BlockSystem::residue_classes(18, 6);
    for part in invariant_parts(&cycle, &blocks).unwrap() {
        assert!(is_balanced(&part, &inner_group), "part {part:?}");
    }
}

#[test]
fn chebyshev_inner_tower_solves() {
    // f = (z^3 - z^2 + z) o T_6 with a block-constant cycle: balanced, and
    // the inner lift runs over the Chebyshev basis
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    let f = compose(&outer, &chebyshev(6));
    let chain = decompose_chain(&f).unwrap();
    assert_eq!(chain.factor_degrees(), vec![3, 6]);
    assert_eq!(
        chain.factor_tags(),
        vec![FactorTag::TwoTransitive, FactorTag::ChebyshevEquiv]
    );
    assert!(chain.hypothesis_ok, "{:?}", chain.hypothesis_witness);

    // block-constant cycles are balanced for any action preserving the
    // residue blocks
    let pattern = [1i64, -1, 0];
    let coeffs: Vec<i64> = (0..18).map(|i| pattern[i % 3]).collect();
    let cycle = Chain::new(coeffs);
    let group = monodromy_generators(&f).unwrap().group(2_000_000);
    assert!(is_balanced(&cycle, &group));

    let space = solve(&chain, &cycle, &SolveOptions::default()).unwrap();
    let SolutionSpace::InvariantPartLift(node) = &space else {
        panic!("expected the inner lift, got {space:?}")
    };
    assert_eq!(node.kind, BaseKind::Chebyshev);
    assert_eq!(node.d, 6);
    assert_eq!(node.allowed, vec![1, 2, 3, 4, 5]);

    let plan = SamplePlan {
        count: 8,
        seed: 0x7E,
        tolerance: 1e-8,
    };
    let ev = IntegralEvaluator::new(&f, &plan).unwrap();
    let samples = sample_solutions(&space, 12, 12, 0xAB);
    assert!(samples.len() >= 8);
    for g in &samples {
        let worst = max_residual(&ev, &cycle, g);
        assert!(worst < 1e-8, "member residual {worst} for {g}");
    }
    // f itself is a member (the projected summand with k0 = w), while T_6
    // alone is not: its projected integrand w is not of the form k0 o outer,
    // and the projected cycle is unbalanced
    let verdict = contains(&space, &f, &f, &cycle, &plan).unwrap();
    assert!(verdict.is_member(), "{verdict:?}");
    for bad in [chebyshev(6), chebyshev(12)] {
        let verdict = contains(&space, &bad, &f, &cycle, &plan).unwrap();
        assert!(
            matches!(verdict, Verdict::NotMember { .. }),
            "{bad}: {verdict:?}"
        );
        let worst = max_residual(&ev, &cycle, &bad);
        assert!(worst > 1e-4, "{bad} must fail the oracle, residual {worst}");
    }
}

#[test]
fn three_factor_tower_with_shifted_inner() {
    // f = (z^3 - z^2 + z) o (z^3 + 2z^2 - 1) o (z^2 + z): the inner factor
    // carries a genuine pre-linear shift, and the recursion has depth three
    let outer = Poly::from_int_coeffs(&[0, 1, -1, 1]);
    let mid = Poly::from_int_coeffs(&[-1, 0, 2, 1]);
    let inner = Poly::from_int_coeffs(&[0, 1, 1]);
    let f = compose(&compose(&outer, &mid), &inner);
    let chain = decompose_chain(&f).unwrap();
    assert_eq!(chain.factor_degrees(), vec![3, 3, 2]);
    assert!(chain.hypothesis_ok, "{:?}", chain.hypothesis_witness);

    let pattern = [1i64, -1, 0, 0, 0, 0, 0, 0, 0];
    let coeffs: Vec<i64> = (0..18).map(|i| pattern[i % 9]).collect();
    let cycle = Chain::new(coeffs);
    let group = monodromy_generators(&f).unwrap().group(2_000_000);
    assert!(
        is_balanced(&cycle, &group),
        "block-constant cycles are balanced"
    );

    let space = solve(&chain, &cycle, &SolveOptions::default()).unwrap();
    let SolutionSpace::InvariantPartLift(node) = &space else {
        panic!("expected inner lift, got {space:?}")
    };
    assert_eq!(node.d, 2);
    assert_eq!(
        node.allowed,
        vec![1],
        "odd part in the shifted coordinate is free"
    );

    let plan = SamplePlan {
        count: 6,
        seed: 0x3F,
        tolerance: 1e-8,
    };
    let ev = IntegralEvaluator::new(&f, &plan).unwrap();
    let samples = sample_solutions(&space, 12, 10, 0x30);
    assert!(samples.len() >= 6, "got {}", samples.len());
    for g in &samples {
        let worst = max_residual(&ev, &cycle, g);
        assert!(worst < 1e-8, "member residual {worst:.3e} for {g}");
    }
    // z + 1/2 is purely odd in the shifted coordinate: a member. So is z
    // itself (its even part is a constant, and cycles kill constants). z^2
    // is not: its even part w + 1/4 would need w in the projected space.
    let nu = Poly::new(vec![GRat::from_ratio(1, 2), GRat::one()]);
    for member in [nu, Poly::var()] {
        assert!(
            contains(&space, &member, &f, &cycle, &plan)
                .unwrap()
                .is_member(),
            "{member}"
        );
        let worst = max_residual(&ev, &cycle, &member);
        assert!(worst < 1e-9, "{member} residual {worst:.2e}");
    }
    let verdict = contains(&space, &z_pow(2), &f, &cycle, &plan).unwrap();
    assert!(matches!(verdict, Verdict::NotMember { .. }), "{verdict:?}");
    let worst = max_residual(&ev, &cycle, &z_pow(2));
    assert!(worst > 1e-4, "z^2 must fail the oracle, residual {worst}");
}

#[test]
fn shifted_monomial_base_case() {
    // a single monomial-equivalent factor with a genuine shift: solutions
    // are spanned by powers of the shifted coordinate with allowed residues
    let f = compose(
        &Poly::from_int_coeffs(&[2, 1]),
        &compose(&z_pow(4), &Poly::from_int_coeffs(&[-1, 1])),
    ); // (z-1)^4 + 2
    let chain = decompose_chain(&f).unwrap();
    assert_eq!(chain.factor_degrees(), vec![4]);
    assert_eq!(chain.factor_tags(), vec![FactorTag::MonomialEquiv]);

    let cycle = Chain::new(vec![1, -1, 1, -1]);
    let space = solve(&chain, &cycle, &SolveOptions::default()).unwrap();
    let SolutionSpace::Exponents(node) = &space else {
        panic!("expected the exponent space, got {space:?}")
    };
    // P_C = 1 - z + z^2 - z^3 is divisible by Phi_1 and Phi_4, not Phi_2
    assert_eq!(node.allowed, vec![0, 1, 3]);
    assert_eq!(node.pre, (GRat::one(), GRat::from_int(-1)));

    let plan = SamplePlan {
        count: 6,
        seed: 0x51F7,
        tolerance: 1e-9,
    };
    let ev = IntegralEvaluator::new(&f, &plan).unwrap();
    let samples = sample_solutions(&space, 9, 10, 0x9);
    assert!(samples.len() >= 6);
    for g in &samples {
        let worst = max_residual(&ev, &cycle, g);
        assert!(worst < 1e-9, "member residual {worst:.2e} for {g}");
    }
    // (z-1)^2 carries the forbidden residue 2; plain z^2 mixes residues
    // {0,1,2} of the shifted coordinate and is rejected too
    for bad in [
        compose(&z_pow(2), &Poly::from_int_coeffs(&[-1, 1])),
        z_pow(2),
    ] {
        let verdict = contains(&space, &bad, &f, &cycle, &plan).unwrap();
        assert!(
            matches!(verdict, Verdict::NotMember { .. }),
            "{bad}: {verdict:?}"
        );
        let worst = max_residual(&ev, &cycle, &bad);
        assert!(
            worst > 1e-4,
            "{bad} must fail the oracle, residual {worst:.2e}"
        );
    }
    // while (z-1)^3 is admissible
    let good = compose(&z_pow(3), &Poly::from_int_coeffs(&[-1, 1]));
    assert!(contains(&space, &good, &f, &cycle, &plan)
        .unwrap()
        .is_member());
    assert!(max_residual(&ev, &cycle, &good) < 1e-9);
}

#[test]
fn random_tower_soundness() {
    // random hypothesis-satisfying towers with random cycles: every sampled
    // solution passes the oracle
    let mut rng = SplitMix64::new(0x50F7);
    let mut done = 0;
    let mut attempts = 0;
    while done < 5 && attempts < 120 {
        attempts += 1;
        let outer_coeffs: Vec<i64> = (0..4).map(|_| rng.int_in(-2, 2)).collect();
        let mut outer_coeffs = outer_coeffs;
        outer_coeffs.push(rng.nonzero_int_in(-2, 2));
        let outer = Poly::from_int_coeffs(&outer_coeffs[..4.min(outer_coeffs.len())]);
        let outer = if outer.deg() == 3 { outer } else { continue };
        let inner_choice = rng.next_u64() % 3;
        let inner = match inner_choice {
            0 => z_pow(4),
            1 => chebyshev(4),
            _ => Poly::from_int_coeffs(&[0, rng.nonzero_int_in(-1, 1), 1]),
        };
        let f = compose(&outer, &inner);
        let Ok(chain) = decompose_chain(&f) else {
            continue;
        };
        if !chain.hypothesis_ok {
            continue;
        }
        let m = f.deg();
        let d = chain.innermost().poly.deg();
        // random block-constant cycle (balanced) or a random cycle
        let nblocks = m / d;
        let mut cycle_coeffs = vec![0i64; m];
        if rng.next_u64().is_multiple_of(2) {
            let mut cs: Vec<i64> = (0..nblocks).map(|_| rng.int_in(-2, 2)).collect();
            let partial: i64 = cs[..nblocks - 1].iter().sum();
            cs[nblocks - 1] = -partial;
            for (i, slot) in cycle_coeffs.iter_mut().enumerate() {
                *slot = cs[i % nblocks];
            }
        } else {
            for slot in cycle_coeffs.iter_mut().take(m - 1) {
                *slot = rng.int_in(-1, 1);
            }
            let partial: i64 = cycle_coeffs[..m - 1].iter().sum();
            cycle_coeffs[m - 1] = -partial;
        }
        let cycle = Chain::new(cycle_coeffs);
        if cycle.is_zero() {
            continue;
        }
        let Ok(space) = solve(&chain, &cycle, &SolveOptions::default()) else {
            continue;
        };
        let samples = sample_solutions(&space, 10, 6, rng.next_u64());
        if samples.is_empty() {
            continue;
        }
        let plan = SamplePlan {
            count: 5,
            seed: rng.next_u64(),
            tolerance: 1e-8,
        };
        let ev = IntegralEvaluator::new(&f, &plan).unwrap();
        for g in &samples {
            let worst = max_residual(&ev, &cycle, g);
            assert!(
                worst < 1e-8,
                "sampled member fails the oracle: residual {worst:.3e} for {g} over {f}, cycle {:?}",
                cycle.coeffs()
            );
        }
        done += 1;
    }
    assert!(
        done >= 4,
        "only {done} random towers exercised in {attempts} attempts"
    );
}
