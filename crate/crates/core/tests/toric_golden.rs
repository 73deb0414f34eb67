//! Ground truth on toric datasets: characters against a direct
//! lattice-point enumeration of the polytope, and the full verifier sweep
//! over generated datasets and circle restrictions.

use num::bigint::BigInt;

use equidex::exactalg::LaurentPolynomial;
use equidex::fpdata::{restrict_to_circle, segment, simplex, toric_product};
use equidex::localization::{character_exact, character_polarized, Convention};
use equidex::theorems::{
    verify_cancellation, verify_halfspace, verify_lattice, Verdict, VerifyMode,
};

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Lattice points of the dilated standard 2-simplex, optionally interior
/// only, as a character polynomial.
fn simplex_lattice_sum(k: i64, interior: bool) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero(2);
    for a in 0..=k {
        for b in 0..=k - a {
            let inside = if interior {
                a > 0 && b > 0 && a + b < k
            } else {
                true
            };
            if inside {
                out = out.add(&LaurentPolynomial::monomial(vec![big(a), big(b)], big(1)));
            }
        }
    }
    out
}

#[test]
fn dilated_simplex_characters_match_lattice_point_counts() {
    for k in 1..=5u64 {
        let fps = simplex(k).generate().unwrap();
        let negated = character_exact(&fps, Convention::Negated).unwrap();
        let expected = simplex_lattice_sum(k as i64, false);
        assert_eq!(negated, expected, "boundary-inclusive count at k = {k}");
        let terms = ((k + 1) * (k + 2) / 2) as usize;
        assert_eq!(negated.num_terms(), terms);

        let paper = character_exact(&fps, Convention::Paper).unwrap();
        let expected_interior = simplex_lattice_sum(k as i64, true);
        assert_eq!(paper, expected_interior, "interior count at k = {k}");
        let interior_terms = if k >= 3 { ((k - 1) * (k - 2) / 2) as usize } else { 0 };
        assert_eq!(paper.num_terms(), interior_terms);
    }
}

#[test]
fn restriction_weights_are_edge_pairings() {
    for k in 1..=3u64 {
        let poly = simplex(k);
        let fps = poly.generate().unwrap();
        for x in [[big(2), big(1)], [big(3), big(1)], [big(3), big(2)]] {
            let restricted = restrict_to_circle(&fps, &x).unwrap();
            for (i, vertex) in poly.vertices.iter().enumerate() {
                for (j, edge) in vertex.edges.iter().enumerate() {
                    let pairing: BigInt = edge.iter().zip(&x).map(|(e, c)| e * c).sum();
                    assert_eq!(
                        restricted.point(i).weights()[j].entries()[0],
                        pairing,
                        "k={k}, vertex {i}, edge {j}"
                    );
                }
            }
        }
    }
}

#[test]
fn polarized_character_equals_character_of_restriction() {
    for k in 1..=4u64 {
        let fps = simplex(k).generate().unwrap();
        let x = [big(2), big(1)];
        let restricted = restrict_to_circle(&fps, &x).unwrap();
        for convention in [Convention::Paper, Convention::Negated] {
            let specialized = character_polarized(&fps, &x, convention).unwrap();
            let direct = character_exact(&restricted, convention).unwrap();
            assert_eq!(specialized, direct, "k = {k}");
        }
    }
}

#[test]
fn negated_convention_is_weight_negation_with_moments_fixed() {
    let fps = simplex(2).generate().unwrap();
    let via_flag = character_exact(&fps, Convention::Negated).unwrap();
    let via_negation = character_exact(&fps.negated_weights(), Convention::Paper).unwrap();
    assert_eq!(via_flag, via_negation);
}

/// Every toric-generated dataset and each of its circle restrictions pass
/// all three verifiers.
#[test]
fn verifier_sweep_over_toric_datasets() {
    let restrictions_rank1: Vec<Vec<BigInt>> = vec![vec![big(1)], vec![big(2)], vec![big(3)]];
    let restrictions_rank2: Vec<Vec<BigInt>> = vec![
        vec![big(2), big(1)],
        vec![big(3), big(1)],
        vec![big(3), big(2)],
    ];
    let restrictions_rank3: Vec<Vec<BigInt>> = vec![
        vec![big(4), big(2), big(1)],
        vec![big(5), big(3), big(1)],
        vec![big(7), big(4), big(2)],
    ];

    for k in 1..=5u64 {
        let polytopes = vec![
            ("simplex", simplex(k)),
            ("segment", segment(k)),
            ("square", toric_product(&segment(k), &segment(k))),
            ("prism", toric_product(&simplex(k), &segment(k))),
        ];
        for (name, poly) in polytopes {
            let fps = poly.generate().unwrap();
            let id = format!("{name}-{k}");

            let report = verify_cancellation(&fps, &VerifyMode::Auto, Convention::Paper, 12, &id)
                .unwrap();
            assert_eq!(report.verdict, Verdict::Verified, "cancellation {id}");
            let report = verify_lattice(&fps, &VerifyMode::Auto, &id).unwrap();
            assert_eq!(report.verdict, Verdict::Verified, "lattice {id}");
            let report = verify_halfspace(&fps, &id).unwrap();
            assert_eq!(report.verdict, Verdict::Verified, "halfspace {id}");

            let restrictions = match fps.rank() {
                1 => &restrictions_rank1,
                2 => &restrictions_rank2,
                _ => &restrictions_rank3,
            };
            for x in restrictions {
                let restricted = restrict_to_circle(&fps, x).unwrap();
                let rid = format!("{id}@{x:?}");
                let report = verify_cancellation(
                    &restricted,
                    &VerifyMode::Circle,
                    Convention::Paper,
                    12,
                    &rid,
                )
                .unwrap();
                assert_eq!(report.verdict, Verdict::Verified, "cancellation {rid}");
                let report = verify_lattice(&restricted, &VerifyMode::Circle, &rid).unwrap();
                assert_eq!(report.verdict, Verdict::Verified, "lattice {rid}");
                let report = verify_halfspace(&restricted, &rid).unwrap();
                assert_eq!(report.verdict, Verdict::Verified, "halfspace {rid}");
            }
        }
    }
}

/// A hand-built trapezoid (the blow-up of the projective plane at a
/// point): not a product and not a dilation of the builtins.
#[test]
fn custom_trapezoid_dataset_verifies_and_counts_lattice_points() {
    use equidex::fpdata::{DelzantPolytope, ToricVertex};
    let trapezoid = DelzantPolytope {
        dim: 2,
        vertices: vec![
            ToricVertex::from_ints("a", &[0, 0], &[&[1, 0], &[0, 1]]),
            ToricVertex::from_ints("b", &[2, 0], &[&[-1, 0], &[-1, 1]]),
            ToricVertex::from_ints("c", &[1, 1], &[&[1, -1], &[-1, 0]]),
            ToricVertex::from_ints("d", &[0, 1], &[&[1, 0], &[0, -1]]),
        ],
    };
    let fps = trapezoid.generate().unwrap();
    let chi = character_exact(&fps, Convention::Negated).unwrap();
    let mut expected = LaurentPolynomial::zero(2);
    for (a, b) in [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)] {
        expected = expected.add(&LaurentPolynomial::monomial(vec![big(a), big(b)], big(1)));
    }
    assert_eq!(chi, expected);
    assert!(character_exact(&fps, Convention::Paper).unwrap().is_zero());

    for x in [[big(2), big(1)], [big(3), big(1)]] {
        let restricted = restrict_to_circle(&fps, &x).unwrap();
        let report = verify_cancellation(
            &restricted,
            &VerifyMode::Circle,
            Convention::Paper,
            15,
            "trapezoid",
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Verified);
        let report = verify_lattice(&restricted, &VerifyMode::Circle, "trapezoid").unwrap();
        assert_eq!(report.verdict, Verdict::Verified);
        let report = verify_halfspace(&restricted, "trapezoid").unwrap();
        assert_eq!(report.verdict, Verdict::Verified);
    }
}

/// Rank-3 reconstruction with odd half-dimension: the prism character is
/// the product of the factor characters, and the stored orientation picks
/// up the interior points with a global minus sign.
#[test]
fn prism_characters_factor_and_obey_reciprocity() {
    let prism1 = toric_product(&simplex(1), &segment(1)).generate().unwrap();
    let negated = character_exact(&prism1, Convention::Negated).unwrap();
    // lattice points of simplex x segment: (a, b, z)
    let mut expected = LaurentPolynomial::zero(3);
    for (a, b) in [(0, 0), (1, 0), (0, 1)] {
        for z in 0..=1 {
            expected = expected.add(&LaurentPolynomial::monomial(
                vec![big(a), big(b), big(z)],
                big(1),
            ));
        }
    }
    assert_eq!(negated, expected);
    assert!(character_exact(&prism1, Convention::Paper).unwrap().is_zero());

    let prism3 = toric_product(&simplex(3), &segment(3)).generate().unwrap();
    let paper = character_exact(&prism3, Convention::Paper).unwrap();
    // interior points (1,1,1) and (1,1,2), negated because half_dim is odd
    let mut interior = LaurentPolynomial::zero(3);
    for z in 1..=2 {
        interior = interior.add(&LaurentPolynomial::monomial(
            vec![big(1), big(1), big(z)],
            big(-1),
        ));
    }
    assert_eq!(paper, interior);
}

#[test]
fn cancellation_verdict_is_stable_across_polarizing_directions() {
    let fps = simplex(1).generate().unwrap();
    let directions = equidex::partition::find_polarizing(&fps, 3);
    for u in directions {
        let report = verify_cancellation(
            &fps,
            &VerifyMode::Polarized(u.clone()),
            Convention::Paper,
            40,
            "simplex",
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Verified, "direction {u:?}");
    }
}
