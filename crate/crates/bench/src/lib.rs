//! Shared fixtures for the criterion benches: a deterministic synthetic
//! corpus so benchmark numbers are comparable across runs and machines.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use smish_core::{Corpus, Label, LabeledMessage};

const HAM_WORDS: &[&str] = &[
    "lunch", "tomorrow", "meeting", "friend", "home", "later", "thanks", "good", "movie",
    "tonight", "sorry", "running", "late", "dinner", "weekend", "call", "mom", "work",
];

const SMISH_WORDS: &[&str] = &[
    "win", "free", "prize", "claim", "cash", "urgent", "account", "verify", "click", "reward",
    "gift", "winner", "selected", "expires", "bank", "suspended", "confirm", "offer",
];

const SLANG: &[&str] = &["ur", "u", "gr8", "2nite", "pls", "txt", "msg", "w8"];

/// Deterministic message of roughly SMS length for the given class.
pub fn synthetic_message(rng: &mut StdRng, label: Label) -> String {
    let words = match label {
        Label::Ham => HAM_WORDS,
        Label::Smish => SMISH_WORDS,
    };
    let len = rng.gen_range(4..16);
    let mut parts: Vec<String> = Vec::with_capacity(len);
    for _ in 0..len {
        let roll: f64 = rng.gen();
        if roll < 0.15 {
            parts.push(SLANG[rng.gen_range(0..SLANG.len())].to_string());
        } else if roll < 0.20 && label == Label::Smish {
            parts.push(format!("http://s{}.example.com/p", rng.gen_range(0..100)));
        } else {
            parts.push(words[rng.gen_range(0..words.len())].to_string());
        }
    }
    parts.join(" ")
}

/// Balanced corpus of `per_class` messages per class, seeded.
pub fn synthetic_corpus(per_class: usize, seed: u64) -> Corpus {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut messages = Vec::with_capacity(per_class * 2);
    for label in [Label::Ham, Label::Smish] {
        for _ in 0..per_class {
            messages.push(LabeledMessage {
                text: synthetic_message(&mut rng, label),
                label,
            });
        }
    }
    Corpus::new(messages)
}
