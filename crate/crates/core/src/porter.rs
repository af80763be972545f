//! Porter suffix stripping, original 1980 rule set.
//!
//! Implemented straight from the published rules rather than the later
//! widely-circulated C program, so there is no minimum-length guard and
//! no post-publication rule changes (step 2 keeps `abli -> able`). Within
//! a rule block the longest matching suffix is selected; if its condition
//! fails, no rule in that block applies. One consequence worth knowing:
//! the bare token "s" stems to the empty string, which callers that
//! require non-empty tokens must filter out.
//!
//! Input is expected to be lowercase. Characters outside a-z (digits,
//! apostrophes, URL punctuation, non-ASCII letters) are treated as
//! consonants, so arbitrary tokens pass through deterministically.

fn is_consonant(word: &[char], i: usize) -> bool {
    match word[i] {
        'a' | 'e' | 'i' | 'o' | 'u' => false,
        'y' => i == 0 || !is_consonant(word, i - 1),
        _ => true,
    }
}

/// The measure m in `[C](VC)^m[V]`: the number of vowel-to-consonant
/// transitions in the stem.
fn measure(stem: &[char]) -> usize {
    let mut m = 0;
    let mut prev_consonant: Option<bool> = None;
    for i in 0..stem.len() {
        let consonant = is_consonant(stem, i);
        if prev_consonant == Some(false) && consonant {
            m += 1;
        }
        prev_consonant = Some(consonant);
    }
    m
}

fn has_vowel(stem: &[char]) -> bool {
    (0..stem.len()).any(|i| !is_consonant(stem, i))
}

fn ends_double_consonant(word: &[char]) -> bool {
    let n = word.len();
    n >= 2 && word[n - 1] == word[n - 2] && is_consonant(word, n - 1)
}

/// `*o` in the rule notation: the stem ends consonant-vowel-consonant
/// where the final consonant is not w, x or y.
fn ends_cvc(word: &[char]) -> bool {
    let n = word.len();
    if n < 3 {
        return false;
    }
    is_consonant(word, n - 3)
        && !is_consonant(word, n - 2)
        && is_consonant(word, n - 1)
        && !matches!(word[n - 1], 'w' | 'x' | 'y')
}

fn ends_with(word: &[char], suffix: &str) -> bool {
    let suffix_len = suffix.len();
    if word.len() < suffix_len {
        return false;
    }
    word[word.len() - suffix_len..]
        .iter()
        .copied()
        .eq(suffix.chars())
}

type Condition = fn(&[char]) -> bool;

struct Rule {
    suffix: &'static str,
    replacement: &'static str,
    condition: Condition,
}

const fn rule(suffix: &'static str, replacement: &'static str, condition: Condition) -> Rule {
    Rule {
        suffix,
        replacement,
        condition,
    }
}

fn always(_: &[char]) -> bool {
    true
}

fn m_gt_0(stem: &[char]) -> bool {
    measure(stem) > 0
}

fn m_gt_1(stem: &[char]) -> bool {
    measure(stem) > 1
}

fn m_gt_1_ends_s_or_t(stem: &[char]) -> bool {
    measure(stem) > 1 && matches!(stem.last(), Some('s') | Some('t'))
}

/// Applies a rule block: the longest matching suffix is selected and its
/// replacement applied only if the condition holds on the stem. Returns
/// whether a replacement was actually made.
fn apply_block(word: &mut Vec<char>, rules: &[Rule]) -> bool {
    let mut best: Option<&Rule> = None;
    for r in rules {
        if ends_with(word, r.suffix)
            && best.map_or(true, |b| r.suffix.len() > b.suffix.len())
        {
            best = Some(r);
        }
    }
    let Some(r) = best else {
        return false;
    };
    let stem_len = word.len() - r.suffix.len();
    if !(r.condition)(&word[..stem_len]) {
        return false;
    }
    word.truncate(stem_len);
    word.extend(r.replacement.chars());
    true
}

const STEP1A: &[Rule] = &[
    rule("sses", "ss", always),
    rule("ies", "i", always),
    rule("ss", "ss", always),
    rule("s", "", always),
];

fn step1b(word: &mut Vec<char>) {
    if ends_with(word, "eed") {
        // longest match: "eed" wins over "ed" and blocks it even when
        // the measure condition fails (feed stays feed)
        if m_gt_0(&word[..word.len() - 3]) {
            word.truncate(word.len() - 1);
        }
        return;
    }
    let fired = if ends_with(word, "ed") && has_vowel(&word[..word.len() - 2]) {
        word.truncate(word.len() - 2);
        true
    } else if ends_with(word, "ing") && has_vowel(&word[..word.len() - 3]) {
        word.truncate(word.len() - 3);
        true
    } else {
        false
    };
    if !fired {
        return;
    }
    if ends_with(word, "at") || ends_with(word, "bl") || ends_with(word, "iz") {
        word.push('e');
    } else if ends_double_consonant(word) && !matches!(word.last(), Some('l') | Some('s') | Some('z')) {
        word.truncate(word.len() - 1);
    } else if measure(word) == 1 && ends_cvc(word) {
        word.push('e');
    }
}

fn step1c(word: &mut Vec<char>) {
    if ends_with(word, "y") && has_vowel(&word[..word.len() - 1]) {
        let n = word.len();
        word[n - 1] = 'i';
    }
}

const STEP2: &[Rule] = &[
    rule("ational", "ate", m_gt_0),
    rule("tional", "tion", m_gt_0),
    rule("enci", "ence", m_gt_0),
    rule("anci", "ance", m_gt_0),
    rule("izer", "ize", m_gt_0),
    rule("abli", "able", m_gt_0),
    rule("alli", "al", m_gt_0),
    rule("entli", "ent", m_gt_0),
    rule("eli", "e", m_gt_0),
    rule("ousli", "ous", m_gt_0),
    rule("ization", "ize", m_gt_0),
    rule("ation", "ate", m_gt_0),
    rule("ator", "ate", m_gt_0),
    rule("alism", "al", m_gt_0),
    rule("iveness", "ive", m_gt_0),
    rule("fulness", "ful", m_gt_0),
    rule("ousness", "ous", m_gt_0),
    rule("aliti", "al", m_gt_0),
    rule("iviti", "ive", m_gt_0),
    rule("biliti", "ble", m_gt_0),
];

const STEP3: &[Rule] = &[
    rule("icate", "ic", m_gt_0),
    rule("ative", "", m_gt_0),
    rule("alize", "al", m_gt_0),
    rule("iciti", "ic", m_gt_0),
    rule("ical", "ic", m_gt_0),
    rule("ful", "", m_gt_0),
    rule("ness", "", m_gt_0),
];

const STEP4: &[Rule] = &[
    rule("al", "", m_gt_1),
    rule("ance", "", m_gt_1),
    rule("ence", "", m_gt_1),
    rule("er", "", m_gt_1),
    rule("ic", "", m_gt_1),
    rule("able", "", m_gt_1),
    rule("ible", "", m_gt_1),
    rule("ant", "", m_gt_1),
    rule("ement", "", m_gt_1),
    rule("ment", "", m_gt_1),
    rule("ent", "", m_gt_1),
    rule("ion", "", m_gt_1_ends_s_or_t),
    rule("ou", "", m_gt_1),
    rule("ism", "", m_gt_1),
    rule("ate", "", m_gt_1),
    rule("iti", "", m_gt_1),
    rule("ous", "", m_gt_1),
    rule("ive", "", m_gt_1),
    rule("ize", "", m_gt_1),
];

fn step5a(word: &mut Vec<char>) {
    if !ends_with(word, "e") {
        return;
    }
    let stem = &word[..word.len() - 1];
    let m = measure(stem);
    if m > 1 || (m == 1 && !ends_cvc(stem)) {
        word.truncate(word.len() - 1);
    }
}

fn step5b(word: &mut Vec<char>) {
    if ends_with(word, "l") && ends_double_consonant(word) && measure(word) > 1 {
        word.truncate(word.len() - 1);
    }
}

/// Stems one lowercase token.
pub fn stem(token: &str) -> String {
    let mut word: Vec<char> = token.chars().collect();
    apply_block(&mut word, STEP1A);
    step1b(&mut word);
    step1c(&mut word);
    apply_block(&mut word, STEP2);
    apply_block(&mut word, STEP3);
    apply_block(&mut word, STEP4);
    step5a(&mut word);
    step5b(&mut word);
    word.into_iter().collect()
}
