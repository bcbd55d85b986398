use proptest::prelude::*;
use textpuzzle_core::generators::generate;
use textpuzzle_core::graders::{grade, label_islands, normalize_answer};
use textpuzzle_core::prompting::render_prompt;
use textpuzzle_core::solvers::{solve, DEFAULT_BUDGET};
use textpuzzle_core::*;

fn game() -> impl Strategy<Value = GameKind> {
    prop::sample::select(GameKind::ALL.to_vec())
}

fn difficulty() -> impl Strategy<Value = Difficulty> {
    prop::sample::select(Difficulty::ALL.to_vec())
}

fn components(grid: &[Vec<char>]) -> Vec<(usize, usize)> {
    let w = grid.first().map_or(0, Vec::len);
    let h = grid.len();
    let mut parent: Vec<usize> = (0..w * h).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let land = |r: usize, c: usize| grid[r][c] != '.';
    for r in 0..h {
        for c in 0..w {
            if !land(r, c) {
                continue;
            }
            for (nr, nc) in [(r + 1, c), (r, c + 1)] {
                if nr < h && nc < w && land(nr, nc) {
                    let (a, b) = (find(&mut parent, r * w + c), find(&mut parent, nr * w + nc));
                    parent[a] = b;
                }
            }
        }
    }
    let mut sizes = std::collections::BTreeMap::new();
    for r in 0..h {
        for c in 0..w {
            if land(r, c) {
                let root = find(&mut parent, r * w + c);
                let e = sizes.entry(root).or_insert((0, 0));
                e.0 += 1;
                e.1 += (grid[r][c] == 'o') as usize;
            }
        }
    }
    let mut v: Vec<(usize, usize)> = sizes.into_values().collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_is_idempotent(s in "[ \\n\\r`a-z#.]{0,40}") {
        let once = normalize_answer(&s);
        prop_assert_eq!(normalize_answer(&once), once.clone());
    }

    #[test]
    fn instances_round_trip_through_json(g in game(), d in difficulty(), seed in 0u64..1_000_000) {
        let inst = generate(g, d, seed).unwrap();
        let back = deserialize_instance(&serialize_instance(&inst)).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(inst.id.clone(), instance_id(g, d, seed));
    }

    #[test]
    fn generation_is_deterministic(g in game(), d in difficulty(), seed in 0u64..1_000_000) {
        let a = generate(g, d, seed).unwrap();
        let b = generate(g, d, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(render_prompt(&a), a.prompt.clone());
    }

    #[test]
    fn grading_arbitrary_text_never_panics(
        g in game(),
        d in difficulty(),
        seed in 0u64..1000,
        answer in "[ -~\\n]{0,60}",
    ) {
        let inst = generate(g, d, seed).unwrap();
        let v = grade(&inst, &answer);
        prop_assert_eq!(v.solved, v.feedback.is_empty());
    }

    #[test]
    fn fenced_oracle_answers_still_solve(g in game(), d in difficulty(), seed in 0u64..1000) {
        let inst = generate(g, d, seed).unwrap();
        let answer = solve(&inst, DEFAULT_BUDGET).unwrap().answer;
        prop_assert!(grade(&inst, &answer).solved);
        let fenced = format!("```\n{answer}\n```");
        let crlf = format!("  {}\r\n", answer.replace('\n', "\r\n"));
        prop_assert!(grade(&inst, &fenced).solved);
        prop_assert!(grade(&inst, &crlf).solved);
    }

    #[test]
    fn island_labels_match_union_find(rows in prop::collection::vec("[.#o]{6}", 1..7)) {
        let grid: Vec<Vec<char>> = rows.iter().map(|r| r.chars().collect()).collect();
        let mut got: Vec<(usize, usize)> = label_islands(&grid).iter().map(|s| (s.size, s.trees)).collect();
        got.sort();
        prop_assert_eq!(got, components(&grid));
    }
}
