use mathplay::lsystem::{expand, parse, presets, render, LSystem, RenderSpec};
use mathplay::Error;
use proptest::prelude::*;

fn system(text: &str) -> LSystem {
    parse(text).unwrap()
}

#[test]
fn fibonacci_word_lengths() {
    let ls = system(presets::FIBONACCI);
    assert_eq!(expand(&ls, 3).unwrap(), "ABAAB");
    let (mut a, mut b) = (1usize, 2usize);
    assert_eq!(ls.expand(0).unwrap().len(), 1);
    for order in 1..=10 {
        assert_eq!(ls.expand(order).unwrap().len(), b, "order {order}");
        (a, b) = (b, a + b);
    }
}

#[test]
fn koch_segment_count_quadruples() {
    let ls = system(presets::KOCH);
    for k in 0..=6u32 {
        let word = ls.expand(k).unwrap();
        assert_eq!(word.chars().filter(|&c| c == 'F').count(), 4usize.pow(k));
    }
    let d = render(&ls, &RenderSpec::with_order(4)).unwrap();
    assert_eq!(d.polylines().len(), 1);
    assert_eq!(d.segment_count(), 256);
}

#[test]
fn plant_stays_bracket_balanced() {
    let ls = system(presets::PLANT);
    for order in 0..=6 {
        let mut depth = 0i64;
        for c in ls.expand(order).unwrap().chars() {
            match c {
                '[' => depth += 1,
                ']' => depth -= 1,
                _ => {}
            }
            assert!(depth >= 0);
        }
        assert_eq!(depth, 0, "order {order}");
    }
    assert!(render(&ls, &RenderSpec::with_order(4)).is_ok());
}

#[test]
fn snowflake_closes() {
    let ls = system(presets::SNOWFLAKE);
    for order in 0..=4 {
        let step = 0.37;
        let spec = RenderSpec { step, ..RenderSpec::with_order(order) };
        let d = render(&ls, &spec).unwrap();
        let line = &d.polylines()[0];
        let (first, last) = (line[0], *line.last().unwrap());
        assert!(first.distance(last) < 1e-6 * step, "order {order}");
    }
}

#[test]
fn sierpinski_even_orders_end_on_the_start_axis() {
    let ls = system(presets::SIERPINSKI);
    for order in [0u32, 2, 4, 6, 8] {
        let d = render(&ls, &RenderSpec::with_order(order)).unwrap();
        let end = *d.polylines().last().unwrap().last().unwrap();
        assert!(end.y.abs() < 1e-9, "order {order}: {end:?}");
        assert!((end.x - 2f64.powi(order as i32)).abs() < 1e-9);
    }
}

#[test]
fn hilbert_visits_every_cell() {
    let ls = system(presets::HILBERT);
    for order in 1..=4u32 {
        let d = render(&ls, &RenderSpec::with_order(order)).unwrap();
        let side = 2i64.pow(order);
        let mut cells: Vec<(i64, i64)> = d.points().map(|p| (p.x.round() as i64, p.y.round() as i64)).collect();
        cells.sort_unstable();
        cells.dedup();
        assert_eq!(cells.len() as i64, side * side);
    }
}

#[test]
fn error_cases() {
    assert_eq!(parse("A -> B\n"), Err(Error::MissingAxiom));
    assert!(matches!(parse("axiom = A\nA -> B\nA -> C\n"), Err(Error::DuplicateRule { line: 3, symbol: 'A' })));
    assert!(matches!(parse("axiom = A\nbogus\n"), Err(Error::Syntax { line: 2, .. })));
    let unbalanced = system("axiom = F]\n");
    assert!(matches!(render(&unbalanced, &RenderSpec::default()), Err(Error::InvalidSystem(_))));
    let runaway = system("axiom = F\nF -> FFFFFFFFFF\n");
    assert!(matches!(runaway.expand(8), Err(Error::OutputTooLarge { .. })));
}

fn small_system() -> impl Strategy<Value = LSystem> {
    let symbol = prop::sample::select(vec!['A', 'B', 'F', '+', '-']);
    let word = prop::collection::vec(symbol, 0..4).prop_map(|v| v.into_iter().collect::<String>());
    (
        "[ABF]{1,3}",
        prop::collection::btree_map(prop::sample::select(vec!['A', 'B', 'F']), word, 0..3),
    )
        .prop_map(|(axiom, rules)| LSystem::new(axiom, rules, 90.0).unwrap())
}

proptest! {
    #[test]
    fn rewriting_composes(ls in small_system(), a in 0u32..=5, b in 0u32..=5) {
        prop_assume!(a + b <= 5);
        let mut word = ls.expand(a).unwrap();
        for _ in 0..b {
            word = ls.rewrite_once(&word);
        }
        prop_assert_eq!(ls.expand(a + b).unwrap(), word);
    }
}
