//! The two distance measures: FCD over extracted dictionaries and the NCD
//! baseline over raw bytes, backed by an internal byte-level dictionary
//! compressor with an unbounded window.

use crate::dictionary::Dictionary;
use crate::error::{Error, Result};

/// Counts patterns present in both dictionaries, by a single linear merge
/// over the two sorted entry lists.
///
/// Symmetric; never exceeds the smaller dictionary. The same count is
/// reachable per pattern through [`Dictionary::contains`] when one side is a
/// query probed against many dictionaries.
pub fn intersection_count(a: &Dictionary, b: &Dictionary) -> usize {
    let xs = a.entries();
    let ys = b.entries();
    let mut count = 0;
    let (mut i, mut j) = (0, 0);
    while i < xs.len() && j < ys.len() {
        match xs[i].as_str().cmp(ys[j].as_str()) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Fast Compression Distance from `x` to `y`: the fraction of `x`'s patterns
/// missing from `y`.
///
/// 0 iff every pattern of `x` occurs in `y`, 1 iff none does; asymmetric in
/// general. Errors when `x` has no entries (the ratio is undefined).
pub fn fcd(x: &Dictionary, y: &Dictionary) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyDictionary {
            doc_id: x.source_id().to_string(),
        });
    }
    let shared = intersection_count(x, y);
    Ok((x.len() - shared) as f64 / x.len() as f64)
}

const NO_TRANSITION: u32 = u32::MAX;

// Suffix automaton over the consumed bytes, grown online one byte at a time.
// Every path from the root spells exactly one substring of the consumed
// text, so a greedy walk from the root finds the longest prefix of the
// remaining input that occurs in the window. Transitions live in one flat
// arena as per-state linked lists; state 0 is the root.
struct SuffixAutomaton {
    max_len: Vec<u32>,
    link: Vec<i32>,
    head: Vec<u32>,
    transitions: Vec<(u8, u32, u32)>,
    last: u32,
}

impl SuffixAutomaton {
    fn with_capacity(bytes: usize) -> Self {
        let states = 2 * bytes + 2;
        let mut sam = SuffixAutomaton {
            max_len: Vec::with_capacity(states),
            link: Vec::with_capacity(states),
            head: Vec::with_capacity(states),
            transitions: Vec::with_capacity(3 * bytes + 2),
            last: 0,
        };
        sam.new_state(0, -1);
        sam
    }

    fn new_state(&mut self, max_len: u32, link: i32) -> u32 {
        self.max_len.push(max_len);
        self.link.push(link);
        self.head.push(NO_TRANSITION);
        (self.max_len.len() - 1) as u32
    }

    fn target(&self, state: u32, byte: u8) -> Option<u32> {
        let mut ix = self.head[state as usize];
        while ix != NO_TRANSITION {
            let (b, target, next) = self.transitions[ix as usize];
            if b == byte {
                return Some(target);
            }
            ix = next;
        }
        None
    }

    fn set_target(&mut self, state: u32, byte: u8, target: u32) {
        let mut ix = self.head[state as usize];
        while ix != NO_TRANSITION {
            let (b, _, next) = self.transitions[ix as usize];
            if b == byte {
                self.transitions[ix as usize].1 = target;
                return;
            }
            ix = next;
        }
        self.transitions
            .push((byte, target, self.head[state as usize]));
        self.head[state as usize] = (self.transitions.len() - 1) as u32;
    }

    fn push_byte(&mut self, byte: u8) {
        let cur = self.new_state(self.max_len[self.last as usize] + 1, -1);
        let mut p = self.last as i32;
        while p >= 0 && self.target(p as u32, byte).is_none() {
            self.set_target(p as u32, byte, cur);
            p = self.link[p as usize];
        }
        if p < 0 {
            self.link[cur as usize] = 0;
        } else {
            let q = self
                .target(p as u32, byte)
                .expect("loop exits on a transition");
            if self.max_len[q as usize] == self.max_len[p as usize] + 1 {
                self.link[cur as usize] = q as i32;
            } else {
                let clone = self.new_state(self.max_len[p as usize] + 1, self.link[q as usize]);
                let mut ix = self.head[q as usize];
                while ix != NO_TRANSITION {
                    let (b, target, next) = self.transitions[ix as usize];
                    self.set_target(clone, b, target);
                    ix = next;
                }
                while p >= 0 && self.target(p as u32, byte) == Some(q) {
                    self.set_target(p as u32, byte, clone);
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone as i32;
                self.link[cur as usize] = clone as i32;
            }
        }
        self.last = cur;
    }
}

// A match is worth a code only if it is longer than a pointer into the
// window it copies from: one address byte per 256-fold of window size.
fn shortest_useful_match(consumed: usize) -> usize {
    let mut pointer_bytes = 1;
    let mut reach = 256usize;
    while reach < consumed {
        pointer_bytes += 1;
        reach = reach.saturating_mul(256);
    }
    pointer_bytes + 1
}

#[inline]
fn byte_at(first: &[u8], second: &[u8], i: usize) -> u8 {
    if i < first.len() {
        first[i]
    } else {
        second[i - first.len()]
    }
}

// Greedy parse of `first ++ second`: each step emits either the longest
// window match (when long enough to pay for its pointer) or one literal
// byte, then the consumed bytes enter the window.
fn parse_code_count(first: &[u8], second: &[u8]) -> usize {
    let total = first.len() + second.len();
    let mut sam = SuffixAutomaton::with_capacity(total);
    let mut codes = 0usize;
    let mut pos = 0usize;
    while pos < total {
        let mut state = 0u32;
        let mut matched = 0usize;
        while pos + matched < total {
            match sam.target(state, byte_at(first, second, pos + matched)) {
                Some(next) => {
                    state = next;
                    matched += 1;
                }
                None => break,
            }
        }
        let advance = if matched >= shortest_useful_match(pos) {
            matched
        } else {
            1
        };
        for i in pos..pos + advance {
            sam.push_byte(byte_at(first, second, i));
        }
        codes += 1;
        pos += advance;
    }
    codes
}

/// Size of the input under the internal dictionary compressor, as the number
/// of emitted codes.
///
/// The parse is greedy: each code covers either the longest prefix of the
/// remaining input that already occurs earlier (when that beats the cost of
/// addressing it) or a single literal byte. Deterministic; 0 only for empty
/// input; never decreases when the input is extended.
pub fn compress_size(data: &[u8]) -> usize {
    parse_code_count(data, &[])
}

/// Compressed size of `x` appended to `y`, without materializing the
/// concatenation.
pub fn joint_compress_size(x: &[u8], y: &[u8]) -> usize {
    parse_code_count(x, y)
}

/// NCD from already-computed compressed sizes.
pub fn ncd_from_sizes(size_x: usize, size_y: usize, size_joint: usize) -> f64 {
    let min = size_x.min(size_y);
    let max = size_x.max(size_y);
    (size_joint.saturating_sub(min)) as f64 / max as f64
}

/// Normalized Compression Distance between two byte strings.
///
/// Near 0 for equal inputs, near 1 (possibly slightly above) for inputs that
/// share no information. Errors on empty input.
pub fn ncd(x: &[u8], y: &[u8]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyText {
            doc_id: "left input".to_string(),
        });
    }
    if y.is_empty() {
        return Err(Error::EmptyText {
            doc_id: "right input".to_string(),
        });
    }
    Ok(ncd_from_sizes(
        compress_size(x),
        compress_size(y),
        joint_compress_size(x, y),
    ))
}
