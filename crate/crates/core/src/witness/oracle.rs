//! Direct enumerations of the witness languages. Nothing here uses the
//! grammar engine or automata: each set is built from its closed form.

use std::collections::{BTreeSet, VecDeque};

use crate::alphabet::Word;

fn rep(c: char, n: usize) -> String {
    std::iter::repeat_n(c, n).collect()
}

fn into_words(set: BTreeSet<String>) -> Vec<Word> {
    let mut v: Vec<Word> = set.into_iter().map(|s| Word::from(s.as_str())).collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

/// {a}* ∪ {a}*{b}{a}* ∪ {c}{a}*{b}{a}*{c}
pub fn ord_not_slt_upto(max_len: usize) -> Vec<Word> {
    let mut out = BTreeSet::new();
    for n in 0..=max_len {
        out.insert(rep('a', n));
    }
    for i in 0..max_len {
        for j in 0..max_len - i {
            let mid = format!("{}b{}", rep('a', i), rep('a', j));
            if mid.len() + 2 <= max_len {
                out.insert(format!("c{mid}c"));
            }
            out.insert(mid);
        }
    }
    into_words(out)
}

/// { a cⁿ b dⁿ : n ≥ 0 }
pub fn acnbdn_upto(max_len: usize) -> Vec<Word> {
    let out = (0..).take_while(|n| 2 + 2 * n <= max_len).map(|n| format!("a{}b{}", rep('c', n), rep('d', n))).collect();
    into_words(out)
}

/// { aᵐ b²ⁿ cᵐ : m ≥ n } ∪ { aⁿ⁻¹ bⁿ cⁿ⁻¹ }
pub fn ambncm_upto(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = BTreeSet::new();
    let mut m = n;
    while 2 * m + 2 * n <= max_len {
        out.insert(format!("{}{}{}", rep('a', m), rep('b', 2 * n), rep('c', m)));
        m += 1;
    }
    if 3 * n - 2 <= max_len {
        out.insert(format!("{}{}{}", rep('a', n - 1), rep('b', n), rep('c', n - 1)));
    }
    into_words(out)
}

/// { aⁿ bᵐ cⁿ dᵐ : n, m ≥ 1 }
pub fn anbmcndm_upto(max_len: usize) -> Vec<Word> {
    let mut out = BTreeSet::new();
    for n in 1..=max_len / 2 {
        for m in 1..=max_len / 2 {
            if 2 * (n + m) <= max_len {
                out.insert(format!("{}{}{}{}", rep('a', n), rep('b', m), rep('c', n), rep('d', m)));
            }
        }
    }
    into_words(out)
}

/// { a^{p₁} b a^{p₂} b a^{p₃+p₁} b a^{p₂} b a^{p₃} : p₁, p₂, p₃ ≥ 1 }
pub fn five_blocks_upto(max_len: usize) -> Vec<Word> {
    let mut out = BTreeSet::new();
    for p1 in 1..=max_len {
        for p2 in 1..=max_len {
            for p3 in 1..=max_len {
                if 2 * (p1 + p2 + p3) + 4 > max_len {
                    break;
                }
                out.insert(format!(
                    "{}b{}b{}b{}b{}",
                    rep('a', p1),
                    rep('a', p2),
                    rep('a', p3 + p1),
                    rep('a', p2),
                    rep('a', p3)
                ));
            }
        }
    }
    into_words(out)
}

/// True iff `w` is over {c, d}, has as many c as d, and no prefix has more
/// d than c.
pub fn is_balanced(w: &[char]) -> bool {
    let mut depth = 0i64;
    for &x in w {
        match x {
            'c' => depth += 1,
            'd' => depth -= 1,
            _ => return false,
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// Balanced words over (c, d) of length ≤ `max_len`, built by a counter
/// that only ever closes an open bracket.
pub fn dyck_upto(max_len: usize) -> Vec<Word> {
    fn go(prefix: &mut String, open: usize, budget: usize, out: &mut BTreeSet<String>) {
        if open == 0 {
            out.insert(prefix.clone());
        }
        if budget == 0 {
            return;
        }
        if open + 2 <= budget {
            prefix.push('c');
            go(prefix, open + 1, budget - 1, out);
            prefix.pop();
        }
        if open > 0 {
            prefix.push('d');
            go(prefix, open - 1, budget - 1, out);
            prefix.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(&mut String::new(), 0, max_len, &mut out);
    into_words(out)
}

/// All compositions of at most `budget` into `parts` non-negative parts.
fn compositions(parts: usize, budget: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=budget {
        for mut rest in compositions(parts - 1, budget - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// K_k′ = { c^{m₀} a c^{m₁} a … c^{m_k} a c^{m_{k+1}} b d^{m₀+…+m_{k+1}} }.
fn kk_prime(k: usize, max_len: usize) -> Vec<String> {
    let base = k + 2;
    if base > max_len {
        return Vec::new();
    }
    compositions(k + 2, (max_len - base) / 2)
        .into_iter()
        .map(|m| {
            let mut s = String::new();
            for (i, &mi) in m.iter().enumerate() {
                s.push_str(&rep('c', mi));
                s.push(if i <= k { 'a' } else { 'b' });
            }
            s.push_str(&rep('d', m.iter().sum()));
            s
        })
        .collect()
}

/// K_k″ = K_k′ ∪ {cᵏ a^{2k−1}} K_k′ {dᵏ}, truncated at `max_len`.
pub fn kk_double_prime_upto(k: usize, max_len: usize) -> Vec<Word> {
    let mut out: BTreeSet<String> = kk_prime(k, max_len).into_iter().collect();
    let wrap = 2 * k + 2 * k - 1;
    if wrap <= max_len {
        for w in kk_prime(k, max_len - wrap) {
            out.insert(format!("{}{}{w}{}", rep('c', k), rep('a', 2 * k - 1), rep('d', k)));
        }
    }
    into_words(out)
}

/// K_k: K_k″ with Dyck words inserted anywhere, as the closure under single
/// cd-insertions (every Dyck word is built from λ that way).
pub fn kk_oracle_upto(k: usize, max_len: usize) -> Vec<Word> {
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut queue: VecDeque<String> = VecDeque::new();
    for w in kk_double_prime_upto(k, max_len) {
        let s: String = w.iter().collect();
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        if s.len() + 2 > max_len {
            continue;
        }
        for i in 0..=s.len() {
            let t = format!("{}cd{}", &s[..i], &s[i..]);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    into_words(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has(ws: &[Word], w: &str) -> bool {
        ws.contains(&Word::from(w))
    }

    #[test]
    fn dyck_matches_predicate() {
        let ws = dyck_upto(8);
        assert_eq!(ws.len(), 1 + 1 + 2 + 5 + 14);
        assert!(ws.iter().all(|w| is_balanced(w)));
        assert!(has(&ws, "") && has(&ws, "cdcd") && !has(&ws, "dc"));
    }

    #[test]
    fn kk_examples() {
        let ws = kk_oracle_upto(1, 8);
        assert!(has(&ws, "aab"));
        assert!(has(&ws, "caabd"));
        assert!(has(&ws, "caaabd"));
        assert!(has(&ws, "cdaab"));
        assert!(!has(&ws, "ab"));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(acnbdn_upto(6).len(), 3);
        assert_eq!(
            ambncm_upto(2, 16).iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            vec!["abbc", "aabbbbcc", "aaabbbbccc", "aaaabbbbcccc", "aaaaabbbbccccc", "aaaaaabbbbcccccc"]
        );
        assert_eq!(five_blocks_upto(10), vec![Word::from("ababaababa")]);
        assert!(has(&anbmcndm_upto(8), "aabccd"));
        assert!(has(&ord_not_slt_upto(3), "cbc") && !has(&ord_not_slt_upto(3), "cc"));
    }
}
