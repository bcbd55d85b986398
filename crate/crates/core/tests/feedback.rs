use textpuzzle_core::graders::grade_constraints;
use textpuzzle_core::*;

fn feedback(c: &ConstraintSet, answer: &str) -> Vec<String> {
    grade_constraints(c, answer).feedback
}

fn anagram() -> ConstraintSet {
    ConstraintSet::Anagram(AnagramConstraints {
        n: 6,
        chars: vec!['e', 'l', 'o', 'd', 'p', 'h', 'i'],
        repeatable: false,
    })
}

#[test]
fn anagram_messages() {
    let c = anagram();
    assert_eq!(feedback(&c, "hole"), ["Your answer must be exactly 6 characters long"]);
    assert!(feedback(&c, "hoodxe").contains(&"Your answer must only contain the characters provided".to_string()));
    assert!(feedback(&c, "hoodie").contains(&"Your answer must not contain repeated characters".to_string()));
    assert_eq!(feedback(&c, "holped"), ["Your answer is not a valid English word"]);
}

#[test]
fn bracket_messages() {
    let c = ConstraintSet::Bracket(BracketConstraints {
        base_text: "fabuloustextgames".into(),
        placements: vec![
            Placement { word: "games".into(), bracket: BracketKind::Round },
            Placement { word: "text".into(), bracket: BracketKind::Angle },
            Placement { word: "fabulous".into(), bracket: BracketKind::Block },
        ],
        depth: 2,
    });
    assert_eq!(
        feedback(&c, "{[fabulous]<text>games}"),
        ["The text 'games' is not inside any round bracket ( )"]
    );
    assert_eq!(
        feedback(&c, "[fabulous]<text>(games)"),
        ["The depth of the bracket is 1. The expected depth is 2"]
    );
    assert_eq!(
        feedback(&c, "{[fabulous]<text>(game)}"),
        [
            "You are not allowed to change the character sequence of base text fabuloustextgames",
            "The text 'games' is not found in your answer."
        ]
    );
    assert!(feedback(&c, "fabulous]text(games)")
        .contains(&"There is a closing bracket without an open bracket".to_string()));
}

#[test]
fn string_search_messages() {
    let c = ConstraintSet::StringSearch(StringSearchConstraints {
        haystack: "hengooserabbitant".into(),
        length: 3,
        must_contain: vec!['g'],
        must_exclude: vec!['i', 'a'],
        complex: vec![],
    });
    assert_eq!(feedback(&c, "goos"), ["goos is not 3 characters long."]);
    assert_eq!(feedback(&c, "ose"), ["g does not appear in ose."]);
    assert!(feedback(&c, "bit").contains(&"i exists in bit.".to_string()));
    assert!(feedback(&c, "gag").contains(&"gag does not exist in hengooserabbitant.".to_string()));
}

#[test]
fn crossword_messages() {
    let c = ConstraintSet::Crossword(CrosswordConstraints {
        n: 3,
        words: ["app", "all", "and", "lee", "let", "pat", "pee", "pet"].map(String::from).to_vec(),
    });
    assert_eq!(
        feedback(&c, "app\nlee"),
        ["Mismatch answer length found!! Expected size of 3, got 2."]
    );
    assert!(feedback(&c, "app\nlee\nlat")
        .contains(&"Mismatch answer word found!! Horizontal word lat is not in the word set.".to_string()));
}

#[test]
fn sudoku_messages() {
    let c = ConstraintSet::Sudoku(SudokuConstraints {
        box_size: 2,
        alphabet: vec!['A', 'B', 'C', 'D'],
        grid: SymbolGrid::parse_rows("A_CD/CD_B/_AD_/DCBA"),
    });
    assert_eq!(feedback(&c, "ABCD\nCDAB\nBADC"), ["Your answer is wrong in shape, it should be 4x4 sudoku."]);
    assert_eq!(
        feedback(&c, "BBCD\nCDAB\nBADC\nDCBA"),
        [
            "One or more characters are replaced",
            "Duplicate value 'B' in row 1.",
            "Duplicate value 'B' in column 1.",
            "Duplicate value 'B' in box 1."
        ]
    );
    assert!(!feedback(&c, "A_CD\nCDAB\nBADC\nDCBA").is_empty());
}

#[test]
fn islands_messages() {
    let c = ConstraintSet::Islands(IslandsConstraints {
        n: 6,
        islands: 3,
        size_min: 5,
        size_max: 10,
        tree_islands: Some(2),
        trees_total: 4,
    });
    assert_eq!(feedback(&c, "......\n......"), ["2D grid is not 6 x 6. (2 x 6)"]);
    let v = feedback(&c, "......\n..x...\n......\n......\n......\n......");
    assert_eq!(v, ["2D contains invalid character (x)"]);
    let two = "##....\n##....\n#.....\n......\n......\n......";
    assert!(feedback(&c, two).contains(&"There must be exactly 3 islands, but you provided 1 islands".to_string()));
}

#[test]
fn ordering_messages() {
    let c = ConstraintSet::Ordering(OrderingConstraints {
        rules: vec![ScoringRule {
            condition: OrderingCondition::LengthLess { n: 5 },
            points: 10,
            style: RuleStyle::Gets,
        }],
        words: ["hen", "goose", "rabbit"].map(String::from).to_vec(),
    });
    assert_eq!(feedback(&c, "hen\ngoose"), ["Your answer is too short. There should be 3 items."]);
    assert_eq!(
        feedback(&c, "goose\nhen\nrabbit"),
        ["goose is not supposed to be the 1st word in the order."]
    );
}

#[test]
fn password_messages() {
    let c = ConstraintSet::Password(PasswordConstraints {
        rules: vec![PasswordRule::LatinCount { n: 6 }, PasswordRule::UppercaseCount { n: 0 }],
    });
    let v = feedback(&c, "Hoodie");
    assert_eq!(v.len(), 1);
    assert!(v[0].starts_with("Hoodie is not satisfying this rule: "), "{v:?}");
}
