//! Character-map romanization of Devanagari.
//!
//! Consonants carry an inherent `a` unless followed by a vowel sign or a
//! virama. The inherent `a` is dropped at the end of a polysyllabic word
//! (`भारत` → `bharat`, but `क` → `ka`) and between a vowel and a consonant
//! with its own vowel (`सरकार` → `sarkar`).
//! Anusvara and chandrabindu become `n`, visarga `h`; dandas and avagraha
//! are dropped. Anything unmapped passes through unchanged.

/// Turns Devanagari text into plain ASCII romanized text.
pub trait Romanizer: Send + Sync {
    fn romanize(&self, surface: &str) -> String;
}

/// The shipped static character map.
#[derive(Debug, Clone, Copy, Default)]
pub struct CharMapRomanizer;

impl Romanizer for CharMapRomanizer {
    fn romanize(&self, surface: &str) -> String {
        transliterate_deva(surface)
    }
}

const NUKTA: char = '\u{093C}';
const VIRAMA: char = '\u{094D}';

fn consonant(c: char) -> Option<&'static str> {
    Some(match c {
        'क' => "k",
        'ख' => "kh",
        'ग' => "g",
        'घ' => "gh",
        'ङ' => "ng",
        'च' => "ch",
        'छ' => "chh",
        'ज' => "j",
        'झ' => "jh",
        'ञ' => "ny",
        'ट' => "t",
        'ठ' => "th",
        'ड' => "d",
        'ढ' => "dh",
        'ण' => "n",
        'त' => "t",
        'थ' => "th",
        'द' => "d",
        'ध' => "dh",
        'न' | 'ऩ' => "n",
        'प' => "p",
        'फ' => "ph",
        'ब' => "b",
        'भ' => "bh",
        'म' => "m",
        'य' => "y",
        'र' | 'ऱ' => "r",
        'ल' | 'ळ' => "l",
        'ऴ' => "zh",
        'व' => "v",
        'श' | 'ष' => "sh",
        'स' => "s",
        'ह' => "h",
        '\u{0958}' => "q",
        '\u{0959}' => "kh",
        '\u{095A}' => "gh",
        '\u{095B}' => "z",
        '\u{095C}' => "d",
        '\u{095D}' => "dh",
        '\u{095E}' => "f",
        '\u{095F}' => "y",
        _ => return None,
    })
}

/// Consonant followed by a separate nukta sign.
fn with_nukta(c: char) -> Option<&'static str> {
    Some(match c {
        'क' => "q",
        'ख' => "kh",
        'ग' => "gh",
        'ज' => "z",
        'ड' => "d",
        'ढ' => "dh",
        'फ' => "f",
        'य' => "y",
        _ => return None,
    })
}

fn vowel_sign(c: char) -> Option<&'static str> {
    Some(match c {
        'ा' => "a",
        'ि' => "i",
        'ी' => "i",
        'ु' => "u",
        'ू' => "u",
        'ृ' => "ri",
        'ॄ' => "ri",
        'े' => "e",
        'ै' => "ai",
        'ो' => "o",
        'ौ' => "au",
        'ॅ' | 'ॆ' => "e",
        'ॉ' | 'ॊ' => "o",
        'ॢ' | 'ॣ' => "li",
        _ => return None,
    })
}

fn independent_vowel(c: char) -> Option<&'static str> {
    Some(match c {
        'अ' => "a",
        'आ' => "a",
        'इ' => "i",
        'ई' => "i",
        'उ' => "u",
        'ऊ' => "u",
        'ऋ' | 'ॠ' => "ri",
        'ऌ' | 'ॡ' => "li",
        'ए' | 'ऍ' | 'ऎ' => "e",
        'ऐ' => "ai",
        'ओ' | 'ऑ' | 'ऒ' => "o",
        'औ' => "au",
        'ॐ' => "om",
        _ => return None,
    })
}

fn sign(c: char) -> Option<&'static str> {
    Some(match c {
        '।' | '॥' | 'ऽ' | '॰' | NUKTA | VIRAMA => "",
        '०'..='९' => {
            const DIGITS: [&str; 10] = ["0", "1", "2", "3", "4", "5", "6", "7", "8", "9"];
            DIGITS[c as usize - '०' as usize]
        }
        _ => return None,
    })
}

struct Syllable {
    onset: String,
    consonants: usize,
    vowel: &'static str,
    inherent: bool,
    coda: &'static str,
    dropped: bool,
}

impl Syllable {
    fn render(&self, out: &mut String) {
        out.push_str(&self.onset);
        if !self.dropped {
            out.push_str(self.vowel);
        }
        out.push_str(self.coda);
    }

    fn bare_schwa(&self) -> bool {
        self.inherent && self.coda.is_empty()
    }
}

/// Romanizes every Devanagari character of `surface`; other characters
/// are copied through. Idempotent, since the output contains no Devanagari.
pub fn transliterate_deva(surface: &str) -> String {
    let chars: Vec<char> = surface.chars().collect();
    let mut out = String::with_capacity(surface.len());
    let mut word: Vec<Syllable> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if consonant(c).is_some() {
            let mut syllable = Syllable {
                onset: String::new(),
                consonants: 0,
                vowel: "a",
                inherent: true,
                coda: "",
                dropped: false,
            };
            // Consonant cluster joined by viramas.
            while let Some(mut roman) = chars.get(i).copied().and_then(consonant) {
                if chars.get(i + 1) == Some(&NUKTA) {
                    roman = with_nukta(chars[i]).unwrap_or(roman);
                    i += 1;
                }
                syllable.onset.push_str(roman);
                syllable.consonants += 1;
                i += 1;
                if chars.get(i) == Some(&VIRAMA) {
                    i += 1;
                    if chars.get(i).copied().and_then(consonant).is_none() {
                        syllable.vowel = "";
                        syllable.inherent = false;
                        break;
                    }
                } else {
                    break;
                }
            }
            if let Some(sign) = chars.get(i).copied().and_then(vowel_sign) {
                syllable.vowel = sign;
                syllable.inherent = false;
                i += 1;
            }
            syllable.coda = take_coda(&chars, &mut i);
            word.push(syllable);
        } else if let Some(vowel) = independent_vowel(c).or_else(|| vowel_sign(c)) {
            i += 1;
            let coda = take_coda(&chars, &mut i);
            word.push(Syllable {
                onset: String::new(),
                consonants: 0,
                vowel,
                inherent: false,
                coda,
                dropped: false,
            });
        } else {
            flush_word(&mut word, &mut out);
            match sign(c) {
                Some(roman) => out.push_str(roman),
                None => out.push(c),
            }
            i += 1;
        }
    }
    flush_word(&mut word, &mut out);
    out
}

fn take_coda(chars: &[char], i: &mut usize) -> &'static str {
    match chars.get(*i) {
        Some('ं' | 'ँ' | 'ऀ') => {
            *i += 1;
            "n"
        }
        Some('ः') => {
            *i += 1;
            "h"
        }
        _ => "",
    }
}

/// Drops the word-final inherent `a` of a polysyllabic word, then, right to
/// left, a medial inherent `a` that sits between a pronounced vowel and a
/// single consonant carrying a pronounced vowel (`sarakar` → `sarkar`).
fn flush_word(word: &mut Vec<Syllable>, out: &mut String) {
    let n = word.len();
    if n > 1 && word[n - 1].bare_schwa() {
        word[n - 1].dropped = true;
    }
    for i in (1..n.saturating_sub(1)).rev() {
        let next = &word[i + 1];
        let next_is_cv = next.consonants == 1 && !next.dropped && !next.vowel.is_empty();
        let prev_voiced = !word[i - 1].dropped && !word[i - 1].vowel.is_empty();
        if word[i].bare_schwa() && word[i].consonants == 1 && next_is_cv && prev_voiced {
            word[i].dropped = true;
        }
    }
    for syllable in word.drain(..) {
        syllable.render(out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        assert_eq!(transliterate_deva("नमस्ते"), "namaste");
        assert_eq!(transliterate_deva("abc"), "abc");
        assert_eq!(transliterate_deva("क।"), "ka");
    }

    #[test]
    fn common_words() {
        for (deva, roman) in [
            ("भारत", "bharat"),
            ("है", "hai"),
            ("नहीं", "nahin"),
            ("में", "men"),
            ("कर", "kar"),
            ("किया", "kiya"),
            ("सरकार", "sarkar"),
            ("मोदी", "modi"),
            ("दुःख", "duhkh"),
            ("ज़रूर", "zarur"),
            ("ज\u{093C}रूर", "zarur"),
            ("क्या", "kya"),
            ("करने", "karne"),
            ("अपने", "apne"),
            ("सकता", "sakta"),
            ("समझना", "samajhna"),
            ("कमल", "kamal"),
            ("लड़की", "ladki"),
            ("हमारा", "hamara"),
            ("चाहिए", "chahie"),
            ("२०२२", "2022"),
        ] {
            assert_eq!(transliterate_deva(deva), roman, "{deva}");
        }
    }

    #[test]
    fn anusvara_on_final_consonant_keeps_vowel() {
        assert_eq!(transliterate_deva("हूं"), "hun");
        assert_eq!(transliterate_deva("संग"), "sang");
    }

    #[test]
    fn idempotent_on_own_output() {
        for s in ["नमस्ते दुनिया", "abc क।", "श्री राम", "x"] {
            let once = transliterate_deva(s);
            assert_eq!(transliterate_deva(&once), once);
        }
    }

    #[test]
    fn mixed_text_passes_through() {
        assert_eq!(transliterate_deva("भारत-India"), "bharat-India");
    }
}
