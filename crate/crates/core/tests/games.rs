use std::collections::HashMap;

use mathplay::games::{analyze_nim, apply_move, engine_nim_move, grundy_subtraction, Heaps, Outcome, SubtractionGame};
use proptest::prelude::*;

/// Plain win/lose search over the game tree, memoized on sorted heap tuples.
struct TreeOracle {
    memo: HashMap<Vec<u64>, bool>,
}

impl TreeOracle {
    fn new() -> Self {
        TreeOracle { memo: HashMap::new() }
    }

    /// True when the player to move wins.
    fn wins(&mut self, heaps: &[u64]) -> bool {
        let mut key = heaps.to_vec();
        key.sort_unstable();
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let mut result = false;
        'search: for i in 0..key.len() {
            for take in 1..=key[i] {
                let mut next = key.clone();
                next[i] -= take;
                if !self.wins(&next) {
                    result = true;
                    break 'search;
                }
            }
        }
        self.memo.insert(key, result);
        result
    }
}

fn all_positions(max_heaps: usize, max_count: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_heaps {
        let mut next = Vec::new();
        for p in &layer {
            for c in 0..=max_count {
                let mut q: Vec<u64> = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[test]
fn nim_agrees_with_game_tree_search() {
    let mut oracle = TreeOracle::new();
    let positions = all_positions(3, 7);
    assert!(positions.len() > 500);
    for p in positions {
        let expected = if oracle.wins(&p) { Outcome::First } else { Outcome::Second };
        assert_eq!(analyze_nim(&Heaps::new(p.clone())).outcome, expected, "{p:?}");
    }
}

#[test]
fn optimal_moves_reach_zero_and_losing_moves_leave_nonzero() {
    for p in all_positions(3, 7) {
        let heaps = Heaps::new(p);
        let analysis = analyze_nim(&heaps);
        if analysis.grundy != 0 {
            assert!(!analysis.optimal_moves.is_empty());
            for mv in &analysis.optimal_moves {
                assert_eq!(apply_move(&heaps, *mv).unwrap().nim_sum(), 0);
            }
        } else {
            assert!(analysis.optimal_moves.is_empty());
            for mv in heaps.legal_moves() {
                assert_ne!(apply_move(&heaps, mv).unwrap().nim_sum(), 0);
            }
        }
    }
}

#[test]
fn equal_pairs_lose_unequal_pairs_win() {
    for a in 0..=12u64 {
        for b in 0..=12u64 {
            let expected = if a == b { Outcome::Second } else { Outcome::First };
            assert_eq!(analyze_nim(&Heaps::new(vec![a, b])).outcome, expected, "[{a},{b}]");
        }
    }
}

#[test]
fn take_one_or_two_is_mod_three() {
    let game = SubtractionGame::new(60, [1, 2]).unwrap();
    for n in 0..=60 {
        assert_eq!(grundy_subtraction(&game, n), n % 3);
    }
}

#[test]
fn make_ten_and_make_fifteen() {
    let ten = SubtractionGame::make(10).analyze_remaining(10);
    assert_eq!(ten.outcome, Outcome::First);
    assert_eq!(ten.optimal_moves, vec![1]);
    assert_eq!(SubtractionGame::make(15).analyze_remaining(15).outcome, Outcome::Second);
}

/// Plays engine against engine; returns the number of moves and whether
/// the first mover made the last move.
fn self_play(start: &Heaps) -> (u64, bool) {
    let mut heaps = start.clone();
    let mut moves = 0;
    while let Some(mv) = engine_nim_move(&heaps) {
        heaps = apply_move(&heaps, mv).unwrap();
        moves += 1;
    }
    (moves, moves % 2 == 1)
}

proptest! {
    #[test]
    fn self_play_terminates_and_nonzero_side_wins(counts in prop::collection::vec(0u64..20, 1..5)) {
        let heaps = Heaps::new(counts);
        let (moves, first_won) = self_play(&heaps);
        prop_assert!(moves <= heaps.total());
        prop_assert_eq!(first_won, heaps.nim_sum() != 0);
    }

    #[test]
    fn engine_move_is_first_optimal_move(counts in prop::collection::vec(0u64..30, 1..6)) {
        let heaps = Heaps::new(counts);
        let analysis = analyze_nim(&heaps);
        let chosen = engine_nim_move(&heaps);
        if let Some(best) = analysis.optimal_moves.first() {
            prop_assert_eq!(chosen, Some(*best));
        } else if heaps.is_terminal() {
            prop_assert_eq!(chosen, None);
        } else {
            let mv = chosen.unwrap();
            prop_assert_eq!(mv.take, 1);
            prop_assert!(heaps.0[..mv.heap].iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn subtraction_game_matches_search(target in 0u64..40, set in prop::collection::btree_set(1u64..6, 1..4)) {
        let game = SubtractionGame::new(target, set.clone()).unwrap();
        let mut wins = vec![false; target as usize + 1];
        for n in 0..=target as usize {
            wins[n] = set.iter().any(|&s| s as usize <= n && !wins[n - s as usize]);
        }
        let analysis = game.analyze_remaining(target);
        prop_assert_eq!(analysis.outcome == Outcome::First, wins[target as usize]);
    }
}
