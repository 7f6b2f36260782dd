use super::HomotopyError;

/// A letter is `g + 1` for generator `g` and `-(g + 1)` for its inverse.
pub type Letter = i32;

/// A word in the generators and their inverses.
pub type Word = Vec<Letter>;

pub fn letter(generator: usize, inverse: bool) -> Letter {
    let l = generator as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn generator_of(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

pub fn concat(a: &[Letter], b: &[Letter]) -> Word {
    let mut w = Vec::with_capacity(a.len() + b.len());
    w.extend_from_slice(a);
    w.extend_from_slice(b);
    w
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Parses whitespace-separated tokens `g` or `g^k` (`k` a nonzero integer).
/// An empty string, `1` or `e` is the identity.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, HomotopyError> {
    let mut w = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" || token == "e" {
            continue;
        }
        let (name, power) = match token.split_once('^') {
            Some((name, p)) => {
                let k: i64 = p.parse().map_err(|_| HomotopyError::MalformedWord {
                    word: text.to_string(),
                    reason: format!("bad exponent in `{token}`"),
                })?;
                (name, k)
            }
            None => (token, 1),
        };
        let g = generators
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| HomotopyError::UnknownGenerator { name: name.to_string() })?;
        let l = letter(g, power < 0);
        w.extend(std::iter::repeat_n(l, power.unsigned_abs() as usize));
    }
    Ok(w)
}

/// Renders a word with runs collapsed into powers, e.g. `a^2 b^-1`; `1` for the identity.
pub fn format_word(w: &[Letter], generators: &[String]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let g = generator_of(w[i]);
        let positive = w[i] > 0;
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let run = (j - i) as i64;
        let k = if positive { run } else { -run };
        let name = generators.get(g).cloned().unwrap_or_else(|| format!("g{g}"));
        parts.push(if k == 1 { name } else { format!("{name}^{k}") });
        i = j;
    }
    parts.join(" ")
}
