//! The closed set of feedback message shapes. Placeholders:
//! `<int>` a decimal integer, `<char>` one character, `<str>` any text
//! (possibly empty), `<a|b>` one of the listed literals.

use crate::model::GameKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeedbackTemplate {
    pub game: GameKind,
    pub template_id: &'static str,
    pub pattern: &'static str,
    /// True for the one message not present in the original feedback table.
    pub extension: bool,
}

const fn t(game: GameKind, template_id: &'static str, pattern: &'static str) -> FeedbackTemplate {
    FeedbackTemplate {
        game,
        template_id,
        pattern,
        extension: false,
    }
}

use GameKind::*;

const TEMPLATES: &[FeedbackTemplate] = &[
    t(AnagramScribble, "anagram.length", "Your answer must be exactly <int> characters long"),
    t(AnagramScribble, "anagram.chars", "Your answer must only contain the characters provided"),
    t(AnagramScribble, "anagram.repeated", "Your answer must not contain repeated characters"),
    t(AnagramScribble, "anagram.word", "Your answer is not a valid English word"),
    t(PasswordGame, "password.rule", "<str> is not satisfying this rule: <str>."),
    t(BracketGame, "bracket.base", "You are not allowed to change the character sequence of base text <str>"),
    t(BracketGame, "bracket.unbalanced", "There is a closing bracket without an open bracket"),
    t(BracketGame, "bracket.depth", "The depth of the bracket is <int>. The expected depth is <int>"),
    t(BracketGame, "bracket.missing", "The text '<str>' is not found in your answer."),
    t(
        BracketGame,
        "bracket.outside",
        "The text '<str>' is not inside any <block|curly|round|angle> bracket <char> <char>",
    ),
    t(StringSearch, "string.length", "<str> is not <int> characters long."),
    t(StringSearch, "string.substring", "<str> does not exist in <str>."),
    t(StringSearch, "string.has_consonants", "<str> does not have 2 consecutive consonants"),
    t(StringSearch, "string.no_consonants", "<str> has 2 consecutive consonants"),
    t(StringSearch, "string.has_vowels", "<str> does not have 2 consecutive vowels"),
    t(StringSearch, "string.no_vowels", "<str> has 2 consecutive vowels"),
    t(StringSearch, "string.more_vowels", "<str> has less or equal vowels than consonants"),
    t(StringSearch, "string.fewer_vowels", "<str> has more or equal vowels than consonants"),
    t(StringSearch, "string.equal_vowels", "<str> does not have the same amount of vowels and consonants"),
    t(StringSearch, "string.contain", "<char> does not appear in <str>."),
    t(StringSearch, "string.exclude", "<char> exists in <str>."),
    t(StringSearch, "string.palindrome", "<str> is not a palindrome."),
    t(CrosswordArranger, "crossword.size", "Mismatch answer length found!! Expected size of <int>, got <int>."),
    t(
        CrosswordArranger,
        "crossword.word",
        "Mismatch answer word found!! <Horizontal|Vertical> word <str> is not in the word set.",
    ),
    t(TextSudoku, "sudoku.unfilled", "There are unfilled cells"),
    t(TextSudoku, "sudoku.shape", "Your answer is wrong in shape, it should be <int>x<int> sudoku."),
    t(TextSudoku, "sudoku.charset", "There are unrecognized characters, or possibly unfilled cells."),
    t(TextSudoku, "sudoku.replaced", "One or more characters are replaced"),
    FeedbackTemplate {
        game: TextSudoku,
        template_id: "sudoku.duplicate",
        pattern: "Duplicate value '<char>' in <row|column|box> <int>.",
        extension: true,
    },
    t(Islands, "islands.shape", "2D grid is not <int> x <int>. (<int> x <int>)"),
    t(Islands, "islands.charset", "2D contains invalid character (<char>)"),
    t(Islands, "islands.count", "There must be exactly <int> islands, but you provided <int> islands"),
    t(Islands, "islands.size", "The size of each island must be from <int> to <int> tiles"),
    t(Islands, "islands.tree_islands", "There must be exactly <int> islands that have coconut trees on them"),
    t(Islands, "islands.trees", "There must be exactly <int> total coconut trees."),
    t(OrderingText, "ordering.short", "Your answer is too short. There should be <int> items."),
    t(OrderingText, "ordering.position", "<str> is not supposed to be the <ordinal> word in the order."),
];

pub fn templates() -> &'static [FeedbackTemplate] {
    TEMPLATES
}

pub fn templates_for(game: GameKind) -> impl Iterator<Item = &'static FeedbackTemplate> {
    TEMPLATES.iter().filter(move |t| t.game == game)
}

/// First template of `game` that `message` instantiates.
pub fn classify(game: GameKind, message: &str) -> Option<&'static FeedbackTemplate> {
    templates_for(game).find(|t| t.matches(message))
}

#[derive(Debug)]
enum Token<'a> {
    Lit(&'a str),
    Int,
    Char,
    Str,
    Ordinal,
    OneOf(Vec<&'a str>),
}

fn tokenize(pattern: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut rest = pattern;
    while !rest.is_empty() {
        let Some(start) = rest.find('<') else {
            out.push(Token::Lit(rest));
            break;
        };
        let end = rest[start..].find('>').map(|e| start + e);
        let name = end.map(|e| &rest[start + 1..e]);
        let token = match name {
            Some("int") => Some(Token::Int),
            Some("char") => Some(Token::Char),
            Some("str") => Some(Token::Str),
            Some("ordinal") => Some(Token::Ordinal),
            Some(alts) if alts.contains('|') => Some(Token::OneOf(alts.split('|').collect())),
            _ => None,
        };
        match (token, end) {
            (Some(tok), Some(e)) => {
                if start > 0 {
                    out.push(Token::Lit(&rest[..start]));
                }
                out.push(tok);
                rest = &rest[e + 1..];
            }
            _ => {
                out.push(Token::Lit(&rest[..=start]));
                rest = &rest[start + 1..];
            }
        }
    }
    out
}

fn match_tokens(tokens: &[Token<'_>], s: &str) -> bool {
    let Some((head, tail)) = tokens.split_first() else {
        return s.is_empty();
    };
    match head {
        Token::Lit(lit) => s.strip_prefix(lit).is_some_and(|r| match_tokens(tail, r)),
        Token::OneOf(alts) => alts
            .iter()
            .any(|a| s.strip_prefix(a).is_some_and(|r| match_tokens(tail, r))),
        Token::Char => {
            let mut it = s.chars();
            it.next().is_some() && match_tokens(tail, it.as_str())
        }
        Token::Int => {
            let body = s.strip_prefix('-').unwrap_or(s);
            let digits = body.len() - body.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            (1..=digits).any(|k| match_tokens(tail, &body[k..]))
        }
        Token::Ordinal => {
            let digits = s.len() - s.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            digits > 0
                && ["st", "nd", "rd", "th"]
                    .iter()
                    .any(|suf| s[digits..].strip_prefix(suf).is_some_and(|r| match_tokens(tail, r)))
        }
        Token::Str => s
            .char_indices()
            .map(|(i, _)| i)
            .chain(std::iter::once(s.len()))
            .any(|i| match_tokens(tail, &s[i..])),
    }
}

impl FeedbackTemplate {
    pub fn matches(&self, message: &str) -> bool {
        match_tokens(&tokenize(self.pattern), message)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_game_has_templates() {
        for g in GameKind::ALL {
            assert!(templates_for(g).count() > 0, "{g}");
        }
        assert_eq!(templates().iter().filter(|t| t.extension).count(), 1);
    }

    #[test]
    fn matching() {
        let id = |g, m| classify(g, m).map(|t| t.template_id);
        assert_eq!(
            id(BracketGame, "The text 'games' is not inside any round bracket ( )"),
            Some("bracket.outside")
        );
        assert_eq!(id(OrderingText, "x is not supposed to be the 22nd word in the order."), Some("ordering.position"));
        assert_eq!(id(Islands, "2D grid is not 6 x 6. (2 x 3)"), Some("islands.shape"));
        assert_eq!(id(StringSearch, " is not 3 characters long."), Some("string.length"));
        assert_eq!(id(TextSudoku, "Duplicate value 'B' in row 4."), Some("sudoku.duplicate"));
        assert_eq!(id(TextSudoku, "Duplicate value 'B' in diagonal 4."), None);
        assert_eq!(id(AnagramScribble, "Your answer must be exactly six characters long"), None);
    }
}
