//! Text parser for polynomial expressions like `x1^2*z1 + 2*x1*z2^2` and for
//! rational coefficient strings (`-3/7`, `0.25`, `12`).

use super::{HomPoly, MultiIndex, PhasePoly, PolyError, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Parses `"p"`, `"p/q"` or a plain decimal into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, PolyError> {
    let s = s.trim();
    let err = |msg: &str| PolyError::Parse {
        pos: 0,
        msg: format!("{msg}: {s:?}"),
    };
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let i: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part.parse().map_err(|_| err("bad decimal"))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad decimal"));
        }
        let f: BigInt = frac_part.parse().map_err(|_| err("bad decimal"))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mag = Rat::new(i.magnitude().clone().into(), BigInt::one()) + Rat::new(f, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| err("bad integer"))?;
    Ok(Rat::from_integer(n))
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Number(Rat),
    Variable(VarName),
    End,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum VarName {
    X(usize),
    Z(usize),
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn next_tok(&mut self) -> Result<Tok, PolyError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let b = self.src[self.pos];
        match b {
            b'+' => {
                self.pos += 1;
                Ok(Tok::Plus)
            }
            b'-' => {
                self.pos += 1;
                Ok(Tok::Minus)
            }
            b'*' => {
                self.pos += 1;
                Ok(Tok::Star)
            }
            b'^' => {
                self.pos += 1;
                Ok(Tok::Caret)
            }
            b'x' | b'z' => {
                let start = self.pos;
                self.pos += 1;
                let digits_start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos == digits_start {
                    return Err(self.error("variable needs an index, like x1 or z2"));
                }
                let idx: usize = std::str::from_utf8(&self.src[digits_start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.error("bad variable index"))?;
                if idx == 0 {
                    return Err(self.error("variable indices are 1-based"));
                }
                Ok(match self.src[start] {
                    b'x' => Tok::Variable(VarName::X(idx - 1)),
                    _ => Tok::Variable(VarName::Z(idx - 1)),
                })
            }
            b'0'..=b'9' | b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit()
                        || self.src[self.pos] == b'.'
                        || self.src[self.pos] == b'/')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let r = parse_rat(text).map_err(|_| self.error("bad number"))?;
                Ok(Tok::Number(r))
            }
            _ => Err(self.error("unexpected character")),
        }
    }
}

/// Parses a sum of monomial terms into raw `(coefficient, exponents)` pairs.
fn parse_terms(src: &str, n_x: usize, n_z: usize) -> Result<Vec<(MultiIndex, Rat)>, PolyError> {
    let mut lex = Lexer::new(src);
    let mut out = Vec::new();
    let mut tok = lex.next_tok()?;
    loop {
        // sign prefix
        let mut sign = Rat::one();
        loop {
            match tok {
                Tok::Plus => {}
                Tok::Minus => sign = -sign,
                Tok::End => {
                    if out.is_empty() {
                        return Err(lex.error("empty expression"));
                    }
                    return Ok(out);
                }
                _ => break,
            }
            tok = lex.next_tok()?;
        }
        // one term: factors separated by '*' (or juxtaposed variables)
        let mut coef = sign;
        let mut alpha = vec![0u32; n_x];
        let mut beta = vec![0u32; n_z];
        let mut saw_factor = false;
        loop {
            match tok.clone() {
                Tok::Number(r) => {
                    coef *= r;
                    saw_factor = true;
                    tok = lex.next_tok()?;
                }
                Tok::Variable(v) => {
                    let mut exp = 1u32;
                    tok = lex.next_tok()?;
                    if tok == Tok::Caret {
                        match lex.next_tok()? {
                            Tok::Number(r)
                                if r.is_integer() && !num_traits::Signed::is_negative(&r) =>
                            {
                                exp = r
                                    .to_integer()
                                    .try_into()
                                    .map_err(|_| lex.error("exponent too large"))?;
                            }
                            _ => return Err(lex.error("expected nonnegative integer exponent")),
                        }
                        tok = lex.next_tok()?;
                    }
                    match v {
                        VarName::X(i) => {
                            if i >= n_x {
                                return Err(
                                    lex.error(&format!("x{} out of range (n_x = {n_x})", i + 1))
                                );
                            }
                            alpha[i] += exp;
                        }
                        VarName::Z(j) => {
                            if j >= n_z {
                                return Err(
                                    lex.error(&format!("z{} out of range (n_z = {n_z})", j + 1))
                                );
                            }
                            beta[j] += exp;
                        }
                    }
                    saw_factor = true;
                }
                Tok::Star => {
                    tok = lex.next_tok()?;
                }
                Tok::Plus | Tok::Minus | Tok::End => break,
                Tok::Caret => return Err(lex.error("unexpected '^'")),
            }
        }
        if !saw_factor {
            return Err(lex.error("expected a term"));
        }
        out.push((MultiIndex::new(alpha, beta), coef));
    }
}

/// Parses a homogeneous polynomial; the degree is inferred from the first term
/// and every other term must match it.
pub fn parse_hompoly(src: &str, n_x: usize, n_z: usize) -> Result<HomPoly, PolyError> {
    let terms = parse_terms(src, n_x, n_z)?;
    let degree = terms[0].0.degree();
    HomPoly::from_terms(n_x, n_z, degree, terms)
}

/// Parses a phase polynomial (homogeneous, no pure-x or pure-z terms).
pub fn parse_phase(src: &str, n_x: usize, n_z: usize) -> Result<PhasePoly, PolyError> {
    PhasePoly::new(parse_hompoly(src, n_x, n_z)?)
}
