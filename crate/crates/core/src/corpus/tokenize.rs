use super::script::is_word_char;
use super::Token;

/// Whitespace tokenization with punctuation detached at word edges.
///
/// A run of leading or trailing non-word characters becomes its own token.
/// A trailing `.` stays attached when the word already contains a `.`, so
/// abbreviations such as `A.I.` remain whole. Tags are left unset.
pub fn tokenize(sentence: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    for chunk in sentence.split_whitespace() {
        split_chunk(chunk, &mut tokens);
    }
    tokens
}

fn split_chunk(chunk: &str, out: &mut Vec<Token>) {
    let first = chunk.char_indices().find(|&(_, c)| is_word_char(c));
    let Some((start, _)) = first else {
        out.push(Token::new(chunk));
        return;
    };
    let (last, last_char) = chunk
        .char_indices()
        .rev()
        .find(|&(_, c)| is_word_char(c))
        .expect("a word char exists");
    let mut end = last + last_char.len_utf8();

    if chunk[start..end].contains('.') {
        end += chunk[end..].chars().take_while(|&c| c == '.').count();
    }

    if start > 0 {
        out.push(Token::new(&chunk[..start]));
    }
    out.push(Token::new(&chunk[start..end]));
    if end < chunk.len() {
        out.push(Token::new(&chunk[end..]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Script;

    fn surfaces(s: &str) -> Vec<String> {
        tokenize(s).into_iter().map(|t| t.surface).collect()
    }

    #[test]
    fn whitespace_split_roman() {
        let tokens = tokenize("desh ke logon");
        assert_eq!(tokens.len(), 3);
        assert!(tokens.iter().all(|t| t.script == Script::Roman && t.tag.is_none()));
    }

    #[test]
    fn detaches_edge_punctuation() {
        let tokens = tokenize("भारत, great");
        let got: Vec<(&str, Script)> = tokens.iter().map(|t| (t.surface.as_str(), t.script)).collect();
        assert_eq!(
            got,
            vec![
                ("भारत", Script::Devanagari),
                (",", Script::Neutral),
                ("great", Script::Roman)
            ]
        );
    }

    #[test]
    fn keeps_abbreviations_whole() {
        let tokens = tokenize("A.I.");
        assert_eq!(tokens.len(), 1);
        assert_eq!(tokens[0].surface, "A.I.");
        assert_eq!(tokens[0].script, Script::Roman);
        assert_eq!(surfaces("U.S.A.,"), vec!["U.S.A.", ","]);
    }

    #[test]
    fn danda_and_quotes() {
        assert_eq!(surfaces("ग घ।"), vec!["ग", "घ", "।"]);
        assert_eq!(surfaces("\"hello!\""), vec!["\"", "hello", "!\""]);
        assert_eq!(surfaces("..."), vec!["..."]);
        assert_eq!(surfaces("end."), vec!["end", "."]);
    }

    #[test]
    fn internal_punctuation_stays() {
        assert_eq!(surfaces("don't 3.5 e-mail"), vec!["don't", "3.5", "e-mail"]);
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("   ").is_empty());
    }
}
