use super::Script;

const DANDA: char = '\u{0964}';
const DOUBLE_DANDA: char = '\u{0965}';

/// Devanagari letters, vowel signs and other word-internal marks.
/// Dandas, Devanagari digits and the abbreviation sign are excluded.
pub fn is_devanagari_letter(c: char) -> bool {
    matches!(c, '\u{0900}'..='\u{097F}') && c != DANDA && c != DOUBLE_DANDA && !matches!(c, '\u{0966}'..='\u{0970}')
}

pub fn is_latin_letter(c: char) -> bool {
    c.is_ascii_alphabetic() || (c.is_alphabetic() && matches!(c, '\u{00C0}'..='\u{024F}' | '\u{1E00}'..='\u{1EFF}'))
}

pub fn script_of(surface: &str) -> Script {
    let mut deva = false;
    let mut latin = false;
    for c in surface.chars() {
        deva |= is_devanagari_letter(c);
        latin |= is_latin_letter(c);
        if deva && latin {
            return Script::Mixed;
        }
    }
    match (deva, latin) {
        (true, false) => Script::Devanagari,
        (false, true) => Script::Roman,
        _ => Script::Neutral,
    }
}

/// Characters that belong to a word rather than to surrounding punctuation.
pub(crate) fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_devanagari_letter(c)
}

pub(crate) fn is_danda(c: char) -> bool {
    c == DANDA || c == DOUBLE_DANDA
}
