//! Property-based suites: ring laws for truncated series, characteristic
//! class axioms on random ranks, d∘d = 0 on randomly generated nilpotent
//! presentations, parser round-trips, and serializer stability.

use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;

use algrr_core::canonical::{series_value, to_canonical_string};
use algrr_core::rational::{int, rat, sign_pow, Rat};
use algrr_core::{
    characteristic_class, cohomology_dims, eval_class_expr, koszul_differential, parse_class_expr,
    print_class_expr, Anchor, Bundle, BundleExpr, ChernSeries, ClassExpr, ClassKind, Context,
    Presentation, Representation,
};

// -------------------------------------------------------------------
// Generators.
// -------------------------------------------------------------------

fn arb_bundle_name() -> impl Strategy<Value = String> {
    prop_oneof![Just("E"), Just("T"), Just("A")].prop_map(str::to_string)
}

fn arb_bundle_expr() -> impl Strategy<Value = BundleExpr> {
    let leaf = arb_bundle_name().prop_map(BundleExpr::Named);
    leaf.prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|b| BundleExpr::Dual(Box::new(b))),
            prop::collection::vec(inner, 2..=3).prop_map(BundleExpr::Sum),
        ]
    })
}

fn arb_nonneg_rat() -> impl Strategy<Value = Rat> {
    (0i64..60, 1i64..9).prop_map(|(n, d)| rat(n, d))
}

fn arb_class_fn_expr(bundle: BundleExpr) -> BoxedStrategy<ClassExpr> {
    use algrr_core::expr::ClassFn;
    prop_oneof![
        Just(ClassFn::TotalChern),
        Just(ClassFn::ChernCharacter),
        Just(ClassFn::Todd),
        Just(ClassFn::ToddComplexified),
        Just(ClassFn::Euler),
        Just(ClassFn::AlternatingWedgeCh),
    ]
    .prop_map(move |f| ClassExpr::Class {
        f,
        bundle: bundle.clone(),
    })
    .boxed()
}

/// Expressions whose printed form re-parses to the identical tree: no
/// standalone negation (the grammar has no unary minus), negation only as
/// a non-leading summand, no negative literals, products and sums with at
/// least two children.
fn arb_class_expr() -> impl Strategy<Value = ClassExpr> {
    let leaf = prop_oneof![
        arb_nonneg_rat().prop_map(ClassExpr::Rational),
        (1u32..=3, arb_bundle_expr()).prop_map(|(j, bundle)| ClassExpr::Generator { j, bundle }),
        arb_bundle_expr().prop_flat_map(arb_class_fn_expr),
        (0u32..=3, arb_bundle_expr()).prop_map(|(p, bundle)| ClassExpr::WedgePower { p, bundle }),
    ];
    leaf.prop_recursive(3, 32, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(ClassExpr::Product),
            (
                inner.clone(),
                prop::collection::vec((any::<bool>(), inner), 1..=3)
            )
                .prop_map(|(first, rest)| {
                    let mut terms = vec![first];
                    for (negate, term) in rest {
                        terms.push(if negate {
                            ClassExpr::Neg(Box::new(term))
                        } else {
                            term
                        });
                    }
                    ClassExpr::Sum(terms)
                }),
        ]
    })
}

fn eval_ctx() -> Arc<Context> {
    Context::new([("E", 2), ("T", 1), ("A", 1)]).unwrap()
}

fn eval(ast: &ClassExpr) -> ChernSeries {
    eval_class_expr(ast, &eval_ctx(), 3).expect("well-formed expressions evaluate")
}

// -------------------------------------------------------------------
// Parser round-trip and serializer stability.
// -------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn printed_expressions_reparse_to_the_same_tree(ast in arb_class_expr()) {
        let text = print_class_expr(&ast);
        let reparsed = parse_class_expr(&text)
            .unwrap_or_else(|e| panic!("failed to reparse `{text}`: {e}"));
        prop_assert_eq!(&reparsed, &ast, "printed form: {}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_serialization_is_byte_stable(ast in arb_class_expr()) {
        let first = to_canonical_string(&series_value(&eval(&ast)));
        let second = to_canonical_string(&series_value(&eval(&ast)));
        prop_assert_eq!(&first, &second);
        // Parsing the record back and re-serializing must also be stable.
        let reread: serde_json::Value = serde_json::from_str(&first).unwrap();
        prop_assert_eq!(&to_canonical_string(&reread), &first);
    }

    #[test]
    fn evaluation_is_total_on_generated_expressions(ast in arb_class_expr()) {
        let series = eval_class_expr(&ast, &eval_ctx(), 3);
        prop_assert!(series.is_ok(), "evaluation failed: {:?}", series.err());
    }
}

// -------------------------------------------------------------------
// Ring laws for truncated series.
// -------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_multiplication_commutes(a in arb_class_expr(), b in arb_class_expr()) {
        let (sa, sb) = (eval(&a), eval(&b));
        prop_assert_eq!(sa.mul(&sb).unwrap(), sb.mul(&sa).unwrap());
    }

    #[test]
    fn series_multiplication_associates(
        a in arb_class_expr(),
        b in arb_class_expr(),
        c in arb_class_expr(),
    ) {
        let (sa, sb, sc) = (eval(&a), eval(&b), eval(&c));
        let left = sa.mul(&sb).unwrap().mul(&sc).unwrap();
        let right = sa.mul(&sb.mul(&sc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn series_multiplication_distributes_over_addition(
        a in arb_class_expr(),
        b in arb_class_expr(),
        c in arb_class_expr(),
    ) {
        let (sa, sb, sc) = (eval(&a), eval(&b), eval(&c));
        let left = sa.mul(&sb.add(&sc).unwrap()).unwrap();
        let right = sa.mul(&sb).unwrap().add(&sa.mul(&sc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn addition_has_inverses(a in arb_class_expr()) {
        let sa = eval(&a);
        prop_assert!(sa.sub(&sa).unwrap().is_zero());
    }
}

// -------------------------------------------------------------------
// Characteristic-class axioms on random small ranks.
// -------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn whitney_sum_formulas_hold(ra in 1u32..=3, rb in 1u32..=3) {
        let ctx = Context::new([("A", ra), ("B", rb)]).unwrap();
        let cutoff = 3;
        let a = Bundle::named("A");
        let b = Bundle::named("B");
        let ab = Bundle::sum(vec![a.clone(), b.clone()]).unwrap();
        for kind in [ClassKind::TotalChern, ClassKind::Todd] {
            let whole = characteristic_class(&ctx, kind, &ab, cutoff).unwrap();
            let parts = characteristic_class(&ctx, kind, &a, cutoff)
                .unwrap()
                .mul(&characteristic_class(&ctx, kind, &b, cutoff).unwrap())
                .unwrap();
            prop_assert_eq!(whole, parts, "multiplicative kind {:?}", kind);
        }
        let whole = characteristic_class(&ctx, ClassKind::ChernCharacter, &ab, cutoff).unwrap();
        let parts = characteristic_class(&ctx, ClassKind::ChernCharacter, &a, cutoff)
            .unwrap()
            .add(&characteristic_class(&ctx, ClassKind::ChernCharacter, &b, cutoff).unwrap())
            .unwrap();
        prop_assert_eq!(whole, parts, "additive Chern character");
    }

    #[test]
    fn duality_flips_signs_by_degree(ra in 1u32..=3) {
        let ctx = Context::new([("A", ra)]).unwrap();
        let cutoff = 3;
        let a = Bundle::named("A");
        let dual = Bundle::named("A").dual();
        // c_j(A*) = (-1)^j c_j(A), and ch_d(A*) = (-1)^d ch_d(A).
        for kind in [ClassKind::TotalChern, ClassKind::ChernCharacter] {
            let of_dual = characteristic_class(&ctx, kind, &dual, cutoff).unwrap();
            let of_a = characteristic_class(&ctx, kind, &a, cutoff).unwrap();
            for d in 0..=cutoff {
                let lhs = of_dual.homogeneous_part(d).unwrap();
                let rhs = of_a.homogeneous_part(d).unwrap().scale(&sign_pow(d));
                prop_assert_eq!(lhs, rhs, "kind {:?} degree {}", kind, d);
            }
        }
    }

    #[test]
    fn euler_class_is_top_homogeneous_part_of_total_chern(ra in 1u32..=3) {
        let ctx = Context::new([("A", ra)]).unwrap();
        let a = Bundle::named("A");
        let euler = characteristic_class(&ctx, ClassKind::Euler, &a, 3).unwrap();
        let top = characteristic_class(&ctx, ClassKind::TotalChern, &a, 3)
            .unwrap()
            .homogeneous_part(ra)
            .unwrap();
        prop_assert_eq!(euler, top);
    }
}

// -------------------------------------------------------------------
// d∘d = 0 on random two-step nilpotent presentations.
// -------------------------------------------------------------------

/// `[e_i, e_j] = w_ij * e_n` for i < j < n with e_n central: the Jacobi
/// identity holds identically, for every choice of the w_ij.
fn nilpotent_presentation(n: usize, weights: &[Rat]) -> Presentation {
    let mut brackets = Vec::new();
    let mut w = weights.iter();
    for i in 1..n {
        for j in (i + 1)..n {
            let coeff = w.next().expect("enough weights supplied").clone();
            if !coeff.is_zero() {
                brackets.push((i, j, vec![(n, coeff)]));
            }
        }
    }
    Presentation::from_brackets(n, &brackets, Anchor::Point).unwrap()
}

fn matmul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Rat::zero(); cols]; rows];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for (k, bk) in b.iter().enumerate() {
                *cell += &a[i][k] * &bk[j];
            }
        }
    }
    out
}

fn arb_weights() -> impl Strategy<Value = (usize, Vec<Rat>)> {
    (2usize..=4).prop_flat_map(|n| {
        let pairs = (n - 1) * (n - 2) / 2;
        let weight = (-4i64..=4, 1i64..4).prop_map(|(num, den)| rat(num, den));
        (Just(n), prop::collection::vec(weight, pairs.max(1)))
    })
}

proptest! {
    // The d∘d = 0 check below runs 256 distinct presentations, each with
    // two flat representations.
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn koszul_differential_squares_to_zero((n, weights) in arb_weights(), lambda in -3i64..=3) {
        let pres = nilpotent_presentation(n, &weights);
        prop_assert!(pres.validate().is_valid());

        // Trivial coefficients, and a diagonal flat twist: scalars along
        // the first n-1 generators, zero along the central one (so the
        // curvature [A_i, A_j] - w_ij A_n vanishes).
        let mut twisted = vec![vec![vec![int(lambda)]]; n];
        twisted[n - 1] = vec![vec![int(0)]];
        let reps = [
            Representation::trivial(n),
            Representation::new(twisted).unwrap(),
        ];
        for rep in reps {
            for k in 0..n.saturating_sub(1) {
                let dk = koszul_differential(&pres, &rep, k).unwrap();
                let dk1 = koszul_differential(&pres, &rep, k + 1).unwrap();
                let composed = matmul(&dk1, &dk);
                let zero = composed
                    .iter()
                    .all(|row| row.iter().all(|entry| entry.is_zero()));
                prop_assert!(zero, "d_{} . d_{} != 0 on {:?}", k + 1, k, weights);
            }
            // The dimensions must also be consistent: the alternating sum
            // equals the Euler characteristic of the complex, which is 0
            // for n >= 1 (rank * sum_k (-1)^k C(n,k)).
            let dims = cohomology_dims(&pres, &rep).unwrap();
            let alternating: i64 = dims
                .iter()
                .enumerate()
                .map(|(k, d)| if k % 2 == 0 { *d as i64 } else { -(*d as i64) })
                .sum();
            prop_assert_eq!(alternating, 0);
        }
    }
}

// -------------------------------------------------------------------
// Cohomology respects complex scaling of the presentation basis.
// -------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rescaling_the_central_generator_preserves_dimensions(
        (n, weights) in arb_weights(),
        scale_num in 1i64..=5,
    ) {
        // Replacing e_n by s * e_n divides every w_ij by s; dimensions are
        // basis-independent, so they cannot change.
        let pres = nilpotent_presentation(n, &weights);
        let scaled: Vec<Rat> = weights
            .iter()
            .map(|w| w / rat(scale_num, 1))
            .collect();
        let rescaled = nilpotent_presentation(n, &scaled);
        let rep = Representation::trivial(n);
        prop_assert_eq!(
            cohomology_dims(&pres, &rep).unwrap(),
            cohomology_dims(&rescaled, &rep).unwrap()
        );
    }
}

// -------------------------------------------------------------------
// Deterministic spot checks that the generators cover intended shapes.
// -------------------------------------------------------------------

#[test]
fn round_trip_handles_subtraction_and_nesting() {
    for text in [
        "ch(E)*td(T)",
        "tdC(sum(A, T)) - td(A)*td(T)",
        "1/2*c(E) + (ch(T) - e(A))*lambda(2, E)",
        "0 - c1(E)",
    ] {
        let ast = parse_class_expr(text).unwrap();
        let printed = print_class_expr(&ast);
        assert_eq!(parse_class_expr(&printed).unwrap(), ast);
    }
}

#[test]
fn nilpotent_generator_produces_heisenberg_for_unit_weight() {
    let pres = nilpotent_presentation(3, &[int(1)]);
    let dims = cohomology_dims(&pres, &Representation::trivial(3)).unwrap();
    assert_eq!(dims, vec![1, 2, 2, 1]);
}
