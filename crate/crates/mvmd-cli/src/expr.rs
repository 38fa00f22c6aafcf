//! Infix expression language over matrices and vectors.
//!
//! Binary operators are written as words: `ltimes`, `rtimes`, `circ`, `dk`,
//! `pstp`, `badd`, `bsub`, `hadd`, `hsub`. There is deliberately no
//! precedence table -- chains of one operator associate left to right, and
//! mixing different operators requires explicit parentheses. Postfix `'`
//! transposes. Built-ins: `box(E)`, `proj(n, E)`, `bridge(n, p)`.

use mvmd::geometry::project;
use mvmd::maps::box_map;
use mvmd::mat::{bridge, HVec, Mat};
use mvmd::stp::{
    dk_stp, mat_hat, mm_stp, pseudo_stp, sq_bar, vec_bar, vec_hat, MmKind, Sign,
};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    Op(&'static str),
    LParen,
    RParen,
    Comma,
    Tick,
}

const OPS: [&str; 9] = [
    "ltimes", "rtimes", "circ", "dk", "pstp", "badd", "bsub", "hadd", "hsub",
];
const FUNCS: [&str; 3] = ["box", "proj", "bridge"];

/// A token plus the 1-based column where it starts.
struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

fn lex(src: &str) -> Result<Lexer, String> {
    let mut toks = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            toks.push((Tok::LParen, col));
            i += 1;
        } else if c == ')' {
            toks.push((Tok::RParen, col));
            i += 1;
        } else if c == ',' {
            toks.push((Tok::Comma, col));
            i += 1;
        } else if c == '\'' {
            toks.push((Tok::Tick, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse()
                .map_err(|_| format!("column {}: bad integer '{}'", col, text))?;
            toks.push((Tok::Int(n), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if let Some(op) = OPS.iter().find(|o| **o == word) {
                toks.push((Tok::Op(op), col));
            } else {
                toks.push((Tok::Ident(word), col));
            }
        } else {
            return Err(format!("column {}: unexpected character '{}'", col, c));
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end_col: chars.len() + 1,
    })
}

impl Lexer {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn col(&self) -> usize {
        self.peek().map(|(_, c)| *c).unwrap_or(self.end_col)
    }
}

pub struct Evaluator<'a> {
    pub bindings: &'a HashMap<String, Mat>,
    pub weighted: bool,
}

impl<'a> Evaluator<'a> {
    pub fn eval(&self, src: &str) -> Result<Mat, String> {
        let mut lx = lex(src)?;
        let v = self.chain(&mut lx)?;
        if let Some((t, c)) = lx.peek() {
            return Err(format!("column {}: unexpected token {:?}", c, t));
        }
        Ok(v)
    }

    /// A left-to-right chain of one operator; mixing requires parentheses.
    fn chain(&self, lx: &mut Lexer) -> Result<Mat, String> {
        let mut acc = self.term(lx)?;
        let mut chain_op: Option<&'static str> = None;
        while let Some((Tok::Op(op), col)) = lx.peek().cloned() {
            match chain_op {
                None => chain_op = Some(op),
                Some(prev) if prev == op => {}
                Some(prev) => {
                    return Err(format!(
                        "column {}: operator '{}' mixed with '{}'; add parentheses",
                        col, op, prev
                    ))
                }
            }
            lx.next();
            let rhs = self.term(lx)?;
            acc = self.apply(op, &acc, &rhs)?;
        }
        Ok(acc)
    }

    fn term(&self, lx: &mut Lexer) -> Result<Mat, String> {
        let mut v = self.atom(lx)?;
        while matches!(lx.peek(), Some((Tok::Tick, _))) {
            lx.next();
            v = v.transpose();
        }
        Ok(v)
    }

    fn atom(&self, lx: &mut Lexer) -> Result<Mat, String> {
        let col = lx.col();
        match lx.next() {
            Some((Tok::LParen, _)) => {
                let v = self.chain(lx)?;
                self.expect(lx, Tok::RParen, ")")?;
                Ok(v)
            }
            Some((Tok::Ident(name), col)) => {
                if FUNCS.contains(&name.as_str()) {
                    self.func(lx, &name, col)
                } else {
                    self.bindings
                        .get(&name)
                        .cloned()
                        .ok_or_else(|| format!("column {}: unbound identifier '{}'", col, name))
                }
            }
            Some((t, c)) => Err(format!("column {}: unexpected token {:?}", c, t)),
            None => Err(format!("column {}: unexpected end of expression", col)),
        }
    }

    fn func(&self, lx: &mut Lexer, name: &str, col: usize) -> Result<Mat, String> {
        self.expect(lx, Tok::LParen, "(")?;
        match name {
            "box" => {
                let v = self.chain(lx)?;
                self.expect(lx, Tok::RParen, ")")?;
                box_map(&v).map_err(|e| format!("column {}: {}", col, e))
            }
            "proj" => {
                let n = self.int(lx)?;
                self.expect(lx, Tok::Comma, ",")?;
                let v = self.chain(lx)?;
                self.expect(lx, Tok::RParen, ")")?;
                let x = as_vec(&v).map_err(|e| format!("column {}: {}", col, e))?;
                let (x0, _) = project(&x, n).map_err(|e| format!("column {}: {}", col, e))?;
                Ok(x0.as_col())
            }
            "bridge" => {
                let n = self.int(lx)?;
                self.expect(lx, Tok::Comma, ",")?;
                let p = self.int(lx)?;
                self.expect(lx, Tok::RParen, ")")?;
                bridge(n, p, self.weighted).map_err(|e| format!("column {}: {}", col, e))
            }
            _ => unreachable!(),
        }
    }

    fn int(&self, lx: &mut Lexer) -> Result<usize, String> {
        let col = lx.col();
        match lx.next() {
            Some((Tok::Int(n), _)) => Ok(n),
            _ => Err(format!("column {}: expected an integer", col)),
        }
    }

    fn expect(&self, lx: &mut Lexer, want: Tok, label: &str) -> Result<(), String> {
        let col = lx.col();
        match lx.next() {
            Some((t, _)) if t == want => Ok(()),
            _ => Err(format!("column {}: expected '{}'", col, label)),
        }
    }

    fn apply(&self, op: &str, a: &Mat, b: &Mat) -> Result<Mat, String> {
        let shapes = || format!("{}x{} and {}x{}", a.rows(), a.cols(), b.rows(), b.cols());
        let r = match op {
            "ltimes" => mm_stp(a, b, MmKind::Type1Left),
            "rtimes" => mm_stp(a, b, MmKind::Type1Right),
            "circ" => mm_stp(a, b, MmKind::Type2Left),
            "dk" => dk_stp(a, b, self.weighted),
            "pstp" => pseudo_stp(a, b),
            "badd" => self.bar(a, b, Sign::Plus),
            "bsub" => self.bar(a, b, Sign::Minus),
            "hadd" => self.hat(a, b, Sign::Plus),
            "hsub" => self.hat(a, b, Sign::Minus),
            _ => unreachable!(),
        };
        r.map_err(|e| format!("'{}' on shapes {}: {}", op, shapes(), e))
    }

    fn bar(&self, a: &Mat, b: &Mat, sign: Sign) -> mvmd::Result<Mat> {
        if a.cols() == 1 && b.cols() == 1 {
            let x = HVec::from_col(a)?;
            let y = HVec::from_col(b)?;
            Ok(vec_bar(&x, &y, sign)?.as_col())
        } else {
            sq_bar(a, b, sign)
        }
    }

    fn hat(&self, a: &Mat, b: &Mat, sign: Sign) -> mvmd::Result<Mat> {
        if a.cols() == 1 && b.cols() == 1 {
            let x = HVec::from_col(a)?;
            let y = HVec::from_col(b)?;
            Ok(vec_hat(&x, &y, sign)?.as_col())
        } else {
            mat_hat(a, b, sign)
        }
    }
}

pub fn as_vec(m: &Mat) -> Result<HVec, String> {
    if m.cols() != 1 {
        return Err(format!("expected a vector, got {}x{}", m.rows(), m.cols()));
    }
    HVec::from_col(m).map_err(|e| e.to_string())
}
