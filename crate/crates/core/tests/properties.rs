use lampsolve::lamplighter::{eval_word, pair_to_word, substitute};
use lampsolve::solver::verify;
use lampsolve::wordlang::{Generator, Letter};
use lampsolve::{GroupElement, LaurentPoly, ParametricPoly, SolveOutcome, Solver, Word};
use proptest::prelude::*;

fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0usize..6, 0..=max_len)
        .prop_map(|ix| Word::from_letters(ix.into_iter().map(|i| Letter::ALL[i]).collect()))
}

/// Words with `σ_x = σ_t = 0`, by appending balancing powers.
fn arb_balanced_word(max_len: usize) -> impl Strategy<Value = Word> {
    arb_word(max_len).prop_map(|mut w| {
        let s = w.exponent_sums();
        w.push_power(Generator::X, -s.x);
        w.push_power(Generator::T, -s.t);
        w
    })
}

fn arb_poly(radius: i64) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(-radius..=radius, 0..12).prop_map(LaurentPoly::from_exponents)
}

fn arb_element() -> impl Strategy<Value = GroupElement> {
    (-64i64..=64, arb_poly(64)).prop_map(|(d, f)| GroupElement::new(d, f))
}

fn num_den(w: &Word, delta: i64) -> (LaurentPoly, LaurentPoly) {
    let num = substitute(w, &GroupElement::new(delta, LaurentPoly::zero())).f;
    let den = &substitute(w, &GroupElement::new(delta, LaurentPoly::one())).f + &num;
    (num, den)
}

fn witness_at(w: &Word, delta: i64) -> bool {
    let (num, den) = num_den(w, delta);
    if den.is_zero() {
        num.is_zero()
    } else {
        den.divides(&num)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sigma_nonzero_matches_direct_divisibility(mut w in arb_word(47)) {
        if w.exponent_sums().x == 0 {
            w.push(Letter::X);
        }
        let s = w.exponent_sums();
        let o = Solver::default().decide(&w).unwrap();
        let direct = s.t % s.x == 0 && witness_at(&w, -s.t / s.x);
        prop_assert_eq!(o.is_yes(), direct);
        let unknown = matches!(o, SolveOutcome::Unknown { .. });
        prop_assert!(!unknown);
        if let Some(g) = o.element() {
            prop_assert!(verify(&w, &g));
        }
    }
}

proptest! {
    #[test]
    fn decide_is_thread_independent(w in arb_balanced_word(12)) {
        let one = Solver::default().with_threads(1).decide(&w).unwrap();
        let many = Solver::default().with_threads(5).decide(&w).unwrap();
        prop_assert_eq!(one, many);
    }

    #[test]
    fn witnesses_are_minimal(w in arb_balanced_word(10)) {
        if let SolveOutcome::Yes { delta, .. } = Solver::default().decide(&w).unwrap() {
            for d in 0..delta.abs() {
                prop_assert!(!witness_at(&w, d) && !witness_at(&w, -d));
            }
            if delta < 0 {
                prop_assert!(!witness_at(&w, -delta));
            }
        }
    }

    #[test]
    fn pair_to_word_round_trips(g in arb_element()) {
        prop_assert_eq!(eval_word(&pair_to_word(&g)).unwrap(), g);
    }

    #[test]
    fn word_text_round_trips(w in arb_word(30)) {
        let text = w.to_string();
        let back: Word = text.parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn poly_text_and_json_round_trip(f in arb_poly(100)) {
        let back: LaurentPoly = f.to_string().parse().unwrap();
        prop_assert_eq!(&back, &f);
        let json = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), f);
    }

    #[test]
    fn parametric_text_and_json_round_trip(
        blocks in proptest::collection::vec((-4i64..=4, arb_poly(8)), 0..5)
    ) {
        let p = ParametricPoly::from_blocks(blocks);
        let back: ParametricPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<ParametricPoly>(&json).unwrap(), p);
    }

    #[test]
    fn outcome_json_round_trips(w in arb_word(10)) {
        let o = Solver::default().with_budget(4).decide(&w).unwrap();
        let json = serde_json::to_string(&o).unwrap();
        prop_assert_eq!(serde_json::from_str::<SolveOutcome>(&json).unwrap(), o);
    }

    #[test]
    fn group_element_json_round_trips(g in arb_element()) {
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<GroupElement>(&json).unwrap(), g);
    }
}
