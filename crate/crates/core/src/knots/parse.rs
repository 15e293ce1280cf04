//! Text formats for braids, PD codes and presentations.

use super::{KnotError, KnotPresentation, Word};

fn err(pos: usize, msg: impl Into<String>) -> KnotError {
    KnotError::Parse { pos, msg: msg.into() }
}

/// Braid word such as `1 1 1`, `[1,-2,1,-2]` or `s1 s2^-1`.
pub fn parse_braid(text: &str) -> Result<Vec<i32>, KnotError> {
    let mut out = Vec::new();
    let mut pos = 0;
    for raw in text.split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']') {
        let start = pos;
        pos += raw.len() + 1;
        if raw.is_empty() {
            continue;
        }
        let body = raw
            .strip_prefix('s')
            .or_else(|| raw.strip_prefix('S'))
            .or_else(|| raw.strip_prefix('σ'))
            .unwrap_or(raw);
        let (base, power) = match body.split_once('^') {
            Some((b, p)) => (b, p),
            None => (body, "1"),
        };
        let g: i32 = base
            .parse()
            .map_err(|_| err(start, format!("bad braid generator {raw:?}")))?;
        let k: i32 = power
            .parse()
            .map_err(|_| err(start, format!("bad exponent in {raw:?}")))?;
        if g == 0 {
            return Err(err(start, "braid generators are numbered from 1"));
        }
        if k == 0 {
            continue;
        }
        let letter = if k > 0 { g } else { -g };
        out.extend(std::iter::repeat(letter).take(k.unsigned_abs() as usize));
    }
    Ok(out)
}

/// PD code such as `X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]` or `[[1,5,2,4],...]`.
pub fn parse_pd(text: &str) -> Result<Vec<[i64; 4]>, KnotError> {
    let mut nums = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_ascii_digit() || c == '-' {
            let mut s = String::from(c);
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            nums.push(s.parse::<i64>().map_err(|_| err(i, format!("bad label {s:?}")))?);
        } else if !(c.is_whitespace() || "[](),XPD".contains(c)) {
            return Err(err(i, format!("unexpected character {c:?}")));
        }
    }
    if nums.len() % 4 != 0 {
        return Err(err(text.len(), "PD code needs four labels per crossing"));
    }
    Ok(nums.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect())
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    names: Vec<String>,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), KnotError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos, format!("expected {c:?}")))
        }
    }

    fn ident(&mut self) -> Result<String, KnotError> {
        self.skip_ws();
        let r = self.rest();
        let n = r
            .char_indices()
            .find(|&(_, c)| !(c.is_alphanumeric() || c == '_'))
            .map_or(r.len(), |(i, _)| i);
        if n == 0 || r.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(err(self.pos, "expected a generator name"));
        }
        self.pos += n;
        Ok(r[..n].to_string())
    }

    fn integer(&mut self) -> Result<i64, KnotError> {
        self.skip_ws();
        let r = self.rest();
        let mut n = 0;
        if r.starts_with(['-', '+']) {
            n = 1;
        }
        n += r[n..].chars().take_while(|c| c.is_ascii_digit()).count();
        let v = r[..n]
            .parse()
            .map_err(|_| err(self.pos, "expected an integer exponent"))?;
        self.pos += n;
        Ok(v)
    }

    fn exponent(&mut self) -> Result<i64, KnotError> {
        if self.eat('^') {
            self.integer()
        } else {
            Ok(1)
        }
    }

    fn generator(&mut self) -> Result<usize, KnotError> {
        self.skip_ws();
        let r = self.rest();
        let best = self
            .names
            .iter()
            .enumerate()
            .filter(|(_, n)| r.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len());
        match best {
            Some((i, n)) => {
                self.pos += n.len();
                Ok(i)
            }
            None => Err(err(self.pos, "unknown generator")),
        }
    }

    fn word(&mut self) -> Result<Word, KnotError> {
        let mut w = Word::identity();
        loop {
            self.skip_ws();
            self.eat('*');
            self.skip_ws();
            let r = self.rest();
            let factor = if r.starts_with('(') {
                self.pos += 1;
                let inner = self.word()?;
                self.expect(')')?;
                inner
            } else if r.starts_with('1') {
                self.pos += 1;
                Word::identity()
            } else if r.is_empty() || r.starts_with([',', '=', '>', ')']) {
                return Ok(w);
            } else {
                Word::generator(self.generator()?)
            };
            let k = self.exponent()?;
            let base = if k < 0 { factor.inverse() } else { factor };
            for _ in 0..k.unsigned_abs() {
                w = w.concat(&base);
            }
        }
    }
}

/// Presentation text `<g1, g2, ... | r1, r2, ...>`; relations may use `=`.
pub fn parse_presentation(text: &str) -> Result<KnotPresentation, KnotError> {
    let mut p = Parser {
        text,
        pos: 0,
        names: Vec::new(),
    };
    p.expect('<')?;
    loop {
        let name = p.ident()?;
        if p.names.contains(&name) {
            return Err(err(p.pos, format!("duplicate generator {name}")));
        }
        p.names.push(name);
        if p.eat('|') {
            break;
        }
        p.expect(',')?;
    }
    let mut relators = Vec::new();
    p.skip_ws();
    if !p.rest().starts_with('>') {
        loop {
            let lhs = p.word()?;
            let rel = if p.eat('=') {
                let rhs = p.word()?;
                lhs.concat(&rhs.inverse())
            } else {
                lhs
            };
            relators.push(rel);
            if !p.eat(',') {
                break;
            }
        }
    }
    p.expect('>')?;
    p.skip_ws();
    if !p.rest().is_empty() {
        return Err(err(p.pos, "trailing input"));
    }
    KnotPresentation::from_relators(p.names, relators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_formats() {
        assert_eq!(parse_braid("1 1 1").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_braid("[1,-2,1,-2]").unwrap(), vec![1, -2, 1, -2]);
        assert_eq!(parse_braid("s1 s2^-1 s1^2").unwrap(), vec![1, -2, 1, 1]);
        assert_eq!(parse_braid("[]").unwrap(), Vec::<i32>::new());
        assert!(parse_braid("1 x").is_err());
        assert!(parse_braid("0").is_err());
    }

    #[test]
    fn pd_formats() {
        let a = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        let b = parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        assert!(parse_pd("[1,2,3]").is_err());
        assert!(parse_pd("Y[1,2,3,4]").is_err());
    }

    #[test]
    fn presentation_forms() {
        let p = parse_presentation("<S,T | S T S T^-1 S^-1 T^-1>").unwrap();
        assert_eq!(p.relators()[0].len(), 6);
        let q = parse_presentation("<a, b | (a b)^2 a^-3 = b^-1 a^-1 b a b>").unwrap();
        assert_eq!(q.generator_count(), 2);
        let r = parse_presentation("<x | >").unwrap();
        assert!(r.relators().is_empty());
        assert!(parse_presentation("<S,T | S U>").is_err());
        assert!(parse_presentation("<S,S | S>").is_err());
        assert!(parse_presentation("<S,T | S T S T^-1 S^-1 T^-1").is_err());
    }

    #[test]
    fn longest_generator_match() {
        let p = parse_presentation("<x, xy, y | xy x^-1 y^-1, x y x^-1 xy^-1>").unwrap();
        assert_eq!(p.relators()[0].letters(), &[(1, 1), (0, -1), (2, -1)]);
    }
}
