use plathom::strands::{associativity, idempotent_decomposition, iso_check, relation_suite, Algebra};

#[test]
fn relations_hold_through_n_three() {
    for n in 1..=3 {
        for alg in [Algebra::a(n), Algebra::a_quotient(n)] {
            let r = relation_suite(&alg, 3);
            assert!(r.passed(), "n={n} {:?}: {:?}", alg.kind(), &r.violations[..r.violations.len().min(5)]);
        }
    }
}

#[test]
fn products_associate_through_n_two() {
    for n in 1..=2 {
        for alg in [Algebra::a(n), Algebra::a_quotient(n)] {
            let r = associativity(&alg, 3);
            assert!(r.checks > 0);
            assert!(r.passed(), "n={n} {:?}: {:?}", alg.kind(), &r.violations[..r.violations.len().min(5)]);
            assert!(idempotent_decomposition(&alg, 3).passed());
        }
    }
}

#[test]
fn h_is_an_isomorphism_over_the_gap_variables() {
    for n in 1..=2 {
        let r = iso_check(n, 3);
        assert!(r.passed(), "n={n}: {r:?}");
    }
}

#[test]
fn h_differs_at_the_right_boundary() {
    // Over all variables the counts disagree where the last point is killed.
    let r = iso_check(1, 1);
    assert_ne!(r.full_dims.0, r.full_dims.1);
}
