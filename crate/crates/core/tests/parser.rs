mod common;

use common::{element_pool, model_zoo};
use proptest::prelude::*;
use zerodiv::expr::{parse_group_spec, parse_ring_expr};
use zerodiv::{FiniteTable, GroupSpec, RingElement};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_then_parse_round_trips(k in 0usize..6, terms in proptest::collection::vec((0usize..1000, -5i64..=5), 0..6)) {
        let spec = model_zoo()[k].clone();
        let pool = element_pool(&spec);
        let p = RingElement::from_terms(&spec, terms.into_iter().map(|(i, c)| (pool[i % pool.len()].clone(), c))).unwrap();
        let text = p.to_string();
        prop_assert_eq!(parse_ring_expr(&text, &spec).unwrap(), p, "{}", text);
    }

    #[test]
    fn ring_parser_never_panics(s in "[ab12c()+*^ xy-]{0,24}", k in 0usize..6) {
        let spec = model_zoo()[k].clone();
        let _ = parse_ring_expr(&s, &spec);
    }

    #[test]
    fn ring_parser_survives_arbitrary_text(s in "\\PC{0,32}") {
        let _ = parse_ring_expr(&s, &GroupSpec::table(FiniteTable::klein_four()));
    }

    #[test]
    fn spec_parser_never_panics(s in "[a-z0-9:,]{0,16}") {
        let _ = parse_group_spec(&s);
    }
}

#[test]
fn errors_are_positioned() {
    let g = GroupSpec::cyclic(3).unwrap();
    let e = parse_ring_expr("1 + (a", &g).unwrap_err();
    assert!(e.to_string().contains("position 6"), "{e}");
}
