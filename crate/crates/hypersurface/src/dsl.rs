//! Parser for real defining equations.
//!
//! Accepted forms:
//!
//! ```text
//! Im w = EXPR
//! rho  = EXPR
//! ```
//!
//! where `EXPR` is built from `z` (or `z1..zn`), `w`, `conj(·)`,
//! `Re(·)`, `Im(·)`, `|·|^2k`, `+`, `-`, `*`, `^`, the imaginary unit
//! `i`, and rational literals `a` / `a/b`.  The parsed equation is
//! complexified on the spot: the conjugated variables become the
//! independent variables `χ`, `τ`, with `Re`, `Im` and `|·|²` expanded
//! into holomorphic/antiholomorphic halves.

use crate::error::{Result, SurfaceError};
use crate::universe::{full, full_universe};
use num::{BigInt, BigRational};
use series_core::{Coeff, GRat, Series};

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Z(usize),
    W,
    Lit(GRat),
    Conj(Box<Expr>),
    Re(Box<Expr>),
    Im(Box<Expr>),
    /// `|e|^(2k)` stored with the half-exponent `k`.
    AbsPow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Pipe,
    Equals,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'|' => {
                out.push((i, Tok::Pipe));
                i += 1;
            }
            b'=' => {
                out.push((i, Tok::Equals));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s = &text[start..i];
                let v: BigInt = s.parse().expect("digits parse");
                out.push((start, Tok::Int(v)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                return Err(SurfaceError::Parse {
                    at: i,
                    msg: format!("unexpected character {:?}", b as char),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(a, _)| *a)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(SurfaceError::Parse {
                at: self.at(),
                msg: format!("expected {what}"),
            })
        }
    }

    fn nat(&mut self) -> Result<u32> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Int(v)) => u32::try_from(v).map_err(|_| SurfaceError::Parse {
                at,
                msg: "exponent out of range".into(),
            }),
            _ => Err(SurfaceError::Parse {
                at,
                msg: "expected an integer exponent".into(),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let mut base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let k = self.nat()?;
            base = match base {
                Expr::AbsPow(e, 1) => {
                    if k % 2 != 0 {
                        return Err(SurfaceError::Parse {
                            at: self.at(),
                            msg: "absolute values only occur in even powers".into(),
                        });
                    }
                    Expr::AbsPow(e, k / 2)
                }
                other => Expr::Pow(Box::new(other), k),
            };
        } else if let Expr::AbsPow(_, _) = base {
            return Err(SurfaceError::Parse {
                at: self.at(),
                msg: "absolute value must be raised to an even power, e.g. |z|^2".into(),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.at();
        match self.bump() {
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Pipe) => {
                let e = self.expr()?;
                self.expect(&Tok::Pipe, "closing `|`")?;
                // Marked with half-exponent 1; `factor` insists on `^2k`.
                Ok(Expr::AbsPow(Box::new(e), 1))
            }
            Some(Tok::Int(v)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let dat = self.at();
                    match self.bump() {
                        Some(Tok::Int(d)) if !num::Zero::is_zero(&d) => Ok(Expr::Lit(GRat {
                            re: BigRational::new(v, d),
                            im: BigRational::from_integer(0.into()),
                        })),
                        _ => Err(SurfaceError::Parse {
                            at: dat,
                            msg: "expected a nonzero denominator".into(),
                        }),
                    }
                } else {
                    Ok(Expr::Lit(GRat {
                        re: BigRational::from_integer(v),
                        im: BigRational::from_integer(0.into()),
                    }))
                }
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "i" => Ok(Expr::Lit(GRat::i())),
                "w" => Ok(Expr::W),
                "z" => Ok(Expr::Z(0)),
                "Re" => {
                    self.expect(&Tok::LParen, "`(` after Re")?;
                    let e = self.expr()?;
                    self.expect(&Tok::RParen, "`)`")?;
                    Ok(Expr::Re(Box::new(e)))
                }
                "Im" => {
                    self.expect(&Tok::LParen, "`(` after Im")?;
                    let e = self.expr()?;
                    self.expect(&Tok::RParen, "`)`")?;
                    Ok(Expr::Im(Box::new(e)))
                }
                "conj" => {
                    self.expect(&Tok::LParen, "`(` after conj")?;
                    let e = self.expr()?;
                    self.expect(&Tok::RParen, "`)`")?;
                    Ok(Expr::Conj(Box::new(e)))
                }
                _ => {
                    if let Some(rest) = name.strip_prefix('z') {
                        if let Ok(k) = rest.parse::<usize>() {
                            if k >= 1 {
                                return Ok(Expr::Z(k - 1));
                            }
                        }
                    }
                    Err(SurfaceError::Parse {
                        at,
                        msg: format!("unknown name {name:?}"),
                    })
                }
            },
            _ => Err(SurfaceError::Parse {
                at,
                msg: "expected an expression".into(),
            }),
        }
    }
}

/// Largest `z`-index used (0-based), or `None` when no `z` occurs.
fn max_z(e: &Expr) -> Option<usize> {
    match e {
        Expr::Z(k) => Some(*k),
        Expr::W | Expr::Lit(_) => None,
        Expr::Conj(a) | Expr::Re(a) | Expr::Im(a) | Expr::AbsPow(a, _) | Expr::Neg(a) => max_z(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => match (max_z(a), max_z(b)) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        },
        Expr::Pow(a, _) => max_z(a),
    }
}

/// Upper bound for the total degree of the expanded polynomial.
fn degree_bound(e: &Expr) -> u32 {
    match e {
        Expr::Z(_) | Expr::W => 1,
        Expr::Lit(_) => 0,
        Expr::Conj(a) | Expr::Re(a) | Expr::Im(a) | Expr::Neg(a) => degree_bound(a),
        Expr::AbsPow(a, k) => 2 * k * degree_bound(a),
        Expr::Add(a, b) | Expr::Sub(a, b) => degree_bound(a).max(degree_bound(b)),
        Expr::Mul(a, b) => degree_bound(a) + degree_bound(b),
        Expr::Pow(a, k) => k * degree_bound(a),
    }
}

/// Complexify: the value of the (possibly conjugated) expression with
/// `conj(z) ↦ χ`, `conj(w) ↦ τ`.
fn complexify(e: &Expr, n: usize, deg: u32, conj: bool) -> Result<Series<GRat>> {
    let vars = full_universe(n);
    let out = match e {
        Expr::Z(k) => {
            let idx = if conj { full::chi(n, *k) } else { full::z(n, *k) };
            Series::var(&vars, deg, idx)?
        }
        Expr::W => {
            let idx = if conj { full::tau(n) } else { full::w(n) };
            Series::var(&vars, deg, idx)?
        }
        Expr::Lit(c) => {
            let v = if conj { c.conj() } else { c.clone() };
            Series::constant(&vars, deg, v)
        }
        Expr::Conj(a) => complexify(a, n, deg, !conj)?,
        Expr::Re(a) => {
            // Re is real-valued: independent of the outer conjugation.
            let plain = complexify(a, n, deg, false)?;
            let bar = complexify(a, n, deg, true)?;
            plain.add(&bar)?.scale(&GRat::rational(1, 2))
        }
        Expr::Im(a) => {
            let plain = complexify(a, n, deg, false)?;
            let bar = complexify(a, n, deg, true)?;
            let half_over_i = GRat::i().neg().mul(&GRat::rational(1, 2)); // 1/(2i)
            plain.sub(&bar)?.scale(&half_over_i)
        }
        Expr::AbsPow(a, k) => {
            let plain = complexify(a, n, deg, false)?;
            let bar = complexify(a, n, deg, true)?;
            let base = plain.mul(&bar)?;
            let mut acc = Series::one(&vars, deg);
            for _ in 0..*k {
                acc = acc.mul(&base)?;
            }
            acc
        }
        Expr::Neg(a) => complexify(a, n, deg, conj)?.neg(),
        Expr::Add(a, b) => complexify(a, n, deg, conj)?.add(&complexify(b, n, deg, conj)?)?,
        Expr::Sub(a, b) => complexify(a, n, deg, conj)?.sub(&complexify(b, n, deg, conj)?)?,
        Expr::Mul(a, b) => complexify(a, n, deg, conj)?.mul(&complexify(b, n, deg, conj)?)?,
        Expr::Pow(a, k) => {
            let base = complexify(a, n, deg, conj)?;
            let mut acc = Series::one(&vars, deg);
            for _ in 0..*k {
                acc = acc.mul(&base)?;
            }
            acc
        }
    };
    Ok(out)
}

/// The parsed, complexified defining function together with the complex
/// dimension `n` it uses.
pub struct ParsedEquation {
    pub rho: Series<GRat>,
    pub n: usize,
}

/// Parse an equation and complexify it exactly.
///
/// The returned series is exact: its truncation degree is at least the
/// total degree of the expanded polynomial and at least `min_degree`.
pub fn parse_equation(text: &str, min_degree: u32) -> Result<ParsedEquation> {
    let toks = lex(text)?;
    let end = text.len();
    let mut p = Parser { toks, pos: 0, end };

    // Leading form: `Im w =` or `rho =`.
    let form_at = p.at();
    let lhs_im_w = match p.peek() {
        Some(Tok::Ident(s)) if s == "Im" => {
            p.pos += 1;
            match p.bump() {
                Some(Tok::Ident(v)) if v == "w" => true,
                _ => {
                    return Err(SurfaceError::Parse {
                        at: form_at,
                        msg: "the left-hand side must be `Im w` or `rho`".into(),
                    })
                }
            }
        }
        Some(Tok::Ident(s)) if s == "rho" => {
            p.pos += 1;
            false
        }
        _ => {
            return Err(SurfaceError::Parse {
                at: form_at,
                msg: "the equation must start with `Im w =` or `rho =`".into(),
            })
        }
    };
    p.expect(&Tok::Equals, "`=`")?;
    let rhs = p.expr()?;
    if p.peek().is_some() {
        return Err(SurfaceError::Parse {
            at: p.at(),
            msg: "trailing input after the expression".into(),
        });
    }

    let n = max_z(&rhs).map_or(1, |k| k + 1);
    let deg = degree_bound(&rhs).max(min_degree).max(2);
    if deg > series_core::MAX_DEGREE {
        return Err(series_core::SeriesError::DegreeRange { degree: deg }.into());
    }

    let rho = if lhs_im_w {
        // ρ = (w − τ)/(2i) − EXPR(Z, ζ).
        let vars = full_universe(n);
        let w = Series::var(&vars, deg, full::w(n))?;
        let tau = Series::var(&vars, deg, full::tau(n))?;
        let half_over_i = GRat::i().neg().mul(&GRat::rational(1, 2));
        let lhs = w.sub(&tau)?.scale(&half_over_i);
        lhs.sub(&complexify(&rhs, n, deg, false)?)?
    } else {
        complexify(&rhs, n, deg, false)?
    };
    Ok(ParsedEquation { rho, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> GRat {
        GRat::rational(a, b)
    }

    #[test]
    fn sphere_complexifies_to_the_model() {
        let p = parse_equation("Im w = |z|^2", 4).unwrap();
        assert_eq!(p.n, 1);
        let vars = full_universe(1);
        let d = p.rho.degree();
        let w = Series::var(&vars, d, 1).unwrap();
        let tau = Series::var(&vars, d, 3).unwrap();
        let z = Series::var(&vars, d, 0).unwrap();
        let chi = Series::var(&vars, d, 2).unwrap();
        let c = GRat::i().neg().mul(&q(1, 2));
        let expect = w.sub(&tau).unwrap().scale(&c).sub(&z.mul(&chi).unwrap()).unwrap();
        assert_eq!(p.rho, expect);
    }

    #[test]
    fn cubic_example_matches_hand_expansion() {
        // Im w = Re(z)·|z|² → (w−τ)/(2i) − ((z+χ)/2)·zχ.
        let p = parse_equation("Im w = Re(z)*|z|^2", 4).unwrap();
        let vars = full_universe(1);
        let d = p.rho.degree();
        let z = Series::var(&vars, d, 0).unwrap();
        let chi = Series::var(&vars, d, 2).unwrap();
        let w = Series::var(&vars, d, 1).unwrap();
        let tau = Series::var(&vars, d, 3).unwrap();
        let c = GRat::i().neg().mul(&q(1, 2));
        let cubic = z
            .add(&chi)
            .unwrap()
            .scale(&q(1, 2))
            .mul(&z.mul(&chi).unwrap())
            .unwrap();
        let expect = w.sub(&tau).unwrap().scale(&c).sub(&cubic).unwrap();
        assert_eq!(p.rho, expect);
    }

    #[test]
    fn quartic_powers_expand() {
        let p = parse_equation("Im w = |z|^2 + |z|^4", 4).unwrap();
        let vars = full_universe(1);
        let d = p.rho.degree();
        assert!(d >= 4);
        let z: Series<GRat> = Series::var(&vars, d, 0).unwrap();
        let chi = Series::var(&vars, d, 2).unwrap();
        let zx = z.mul(&chi).unwrap();
        // coefficient of z²χ² must be −1.
        let quad = zx.mul(&zx).unwrap();
        let (e, _) = quad.terms().next().unwrap();
        assert_eq!(p.rho.coeff(e), q(-1, 1));
    }

    #[test]
    fn two_variable_names() {
        let p = parse_equation("Im w = |z1|^2 - |z2|^2", 4).unwrap();
        assert_eq!(p.n, 2);
        assert_eq!(p.rho.vars().names(), &["z1", "z2", "w", "chi1", "chi2", "tau"]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            parse_equation("Im w = |z|^3", 4),
            Err(SurfaceError::Parse { .. })
        ));
        assert!(matches!(
            parse_equation("w = |z|^2", 4),
            Err(SurfaceError::Parse { .. })
        ));
        assert!(matches!(
            parse_equation("Im w = q", 4),
            Err(SurfaceError::Parse { .. })
        ));
    }

    #[test]
    fn conj_and_literals() {
        // rho = i·z·conj(z) − i·... a real combination: i(z−χ) is not real,
        // but z·conj(z) is.
        let p = parse_equation("rho = z*conj(z)", 3).unwrap();
        let vars = full_universe(1);
        let d = p.rho.degree();
        let z = Series::var(&vars, d, 0).unwrap();
        let chi = Series::var(&vars, d, 2).unwrap();
        assert_eq!(p.rho, z.mul(&chi).unwrap());
    }
}
