use curved_nonogram::gen::{random_classic, random_mixed_puzzle, rng};
use curved_nonogram::oracle::oracle_puzzle_solutions;
use curved_nonogram::{classic_to_puzzle, full_settle, CellState, LineMethod, SolveOptions, Verdict};
use proptest::prelude::*;
use rand::seq::SliceRandom;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    /// Settled cells agree with every solution, in particular the hidden fill.
    #[test]
    fn settle_is_sound(seed in any::<u64>(), cells in 1usize..14, curves in 1usize..6) {
        let (p, fill) = random_mixed_puzzle(&mut rng(seed), cells, curves);
        let report = full_settle(&p, &SolveOptions::default()).unwrap();
        prop_assert!(matches!(report.verdict, Verdict::SolvedSimple | Verdict::Stuck));
        for (c, &v) in report.board.cells().iter().enumerate() {
            prop_assert!(v == CellState::Unsettled || v == fill[c]);
        }
        let solutions = oracle_puzzle_solutions(&p, 20).unwrap();
        prop_assert!(!solutions.is_empty());
        for s in &solutions {
            for (c, &v) in report.board.cells().iter().enumerate() {
                prop_assert!(v == CellState::Unsettled || v == s[c]);
            }
        }
        if report.verdict == Verdict::SolvedSimple {
            prop_assert_eq!(solutions.len(), 1);
        }
    }

    #[test]
    fn order_does_not_matter(seed in any::<u64>(), cells in 1usize..14, curves in 1usize..6) {
        let mut r = rng(seed);
        let (p, _) = random_mixed_puzzle(&mut r, cells, curves);
        let base = full_settle(&p, &SolveOptions::default()).unwrap();
        let n = p.sequences().count();
        for _ in 0..3 {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut r);
            let opts = SolveOptions { order: Some(order), ..Default::default() };
            let other = full_settle(&p, &opts).unwrap();
            prop_assert_eq!(&other.board, &base.board);
            prop_assert_eq!(other.verdict, base.verdict);
        }
        let parallel = full_settle(&p, &SolveOptions { parallel: true, ..Default::default() }).unwrap();
        prop_assert_eq!(&parallel.board, &base.board);
    }

    #[test]
    fn all_line_methods_reach_the_same_board(seed in any::<u64>(), w in 1usize..5, h in 1usize..5) {
        let p = classic_to_puzzle(&random_classic(&mut rng(seed), w, h));
        let dp = full_settle(&p, &SolveOptions::default()).unwrap();
        for m in [LineMethod::BasicFast, LineMethod::Naive, LineMethod::Oracle] {
            let other = full_settle(&p, &SolveOptions::with_method(m)).unwrap();
            prop_assert_eq!(&other.board, &dp.board);
            prop_assert_eq!(other.verdict, dp.verdict);
        }
    }
}
