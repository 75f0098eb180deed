use brauer_b::normalform::BrauerAlgebra;
use brauer_b::presentation::{Token, Word};
use proptest::prelude::*;

fn word(n: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..2 * n, 0..=3 * n).prop_map(move |g| Word(g.into_iter().map(|i| Token::from_gen_index(i, n)).collect()))
}

fn rank_and_words(k: usize) -> impl Strategy<Value = (usize, Vec<Word>)> {
    prop_oneof![Just(3usize), Just(4usize)].prop_flat_map(move |n| (Just(n), prop::collection::vec(word(n), k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associative((n, ws) in rank_and_words(3)) {
        let a = BrauerAlgebra::get(n).unwrap();
        let [x, y, z] = [0, 1, 2].map(|k| a.normalize_word(&ws[k]).unwrap());
        let l = a.mul_nf(&a.mul_nf(&x, &y).unwrap(), &z).unwrap();
        let r = a.mul_nf(&x, &a.mul_nf(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn opposition_reverses_products((n, ws) in rank_and_words(2)) {
        let a = BrauerAlgebra::get(n).unwrap();
        let (x, y) = (a.normalize_word(&ws[0]).unwrap(), a.normalize_word(&ws[1]).unwrap());
        let lhs = a.opposite_nf(&a.mul_nf(&x, &y).unwrap()).unwrap();
        let rhs = a.mul_nf(&a.opposite_nf(&y).unwrap(), &a.opposite_nf(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_of_words_is_concatenation((n, ws) in rank_and_words(2)) {
        let a = BrauerAlgebra::get(n).unwrap();
        let (x, y) = (a.normalize_word(&ws[0]).unwrap(), a.normalize_word(&ws[1]).unwrap());
        let joined = a.normalize_word(&ws[0].concat(&ws[1])).unwrap();
        prop_assert_eq!(a.mul_nf(&x, &y).unwrap(), joined.clone());
        prop_assert_eq!(a.normalize_word_right_fold(&ws[0].concat(&ws[1])).unwrap(), joined);
    }

    #[test]
    fn pretty_output_reparses((n, ws) in rank_and_words(1)) {
        let a = BrauerAlgebra::get(n).unwrap();
        let x = a.normalize_word(&ws[0]).unwrap();
        prop_assert_eq!(a.normalize_str(&a.pretty(&x).unwrap()).unwrap(), x);
    }
}

#[test]
fn relation_suite_rank_four() {
    let checks = brauer_b::verify::relations(4).unwrap();
    assert!(checks.len() > 80);
    for c in checks {
        assert!(c.passed(), "{c:?}");
    }
}
