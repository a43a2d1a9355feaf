//! Ring-definition expressions.
//!
//! ```text
//! expr := "Z/" NAT | "GF(" NAT ")" | expr "[x]/(" poly ")"
//!       | "prod(" expr "," expr ")" | "sdp(" NAT "," NAT "," ("zero"|"unital") ")"
//! poly := term ("+" term)*
//! term := [NAT "*"] "x" ["^" NAT] | NAT
//! ```
//!
//! Whitespace may appear between any two tokens.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::AlgebraError;
use crate::poly::{format_poly, gf_ring, prime_power, quotient_by_monic, table_poly};
use crate::ring::{Elem, RingTable};
use crate::split::{semidirect_pair, NonUnitalAlgebra};

/// Byte range `start..end` of the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SdpKind {
    Zero,
    Unital,
}

impl SdpKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SdpKind::Zero => "zero",
            SdpKind::Unital => "unital",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Const { value: u64, span: Span },
    /// `c*x^e`; a missing coefficient or exponent means 1.
    Mono { coeff: Option<u64>, exp: Option<u64>, span: Span },
}

impl Term {
    pub fn span(&self) -> Span {
        match self {
            Term::Const { span, .. } | Term::Mono { span, .. } => *span,
        }
    }

    /// `(coefficient, degree)`.
    pub fn value(&self) -> (u64, u64) {
        match *self {
            Term::Const { value, .. } => (value, 0),
            Term::Mono { coeff, exp, .. } => (coeff.unwrap_or(1), exp.unwrap_or(1)),
        }
    }

    fn same_shape(&self, other: &Term) -> bool {
        match (self, other) {
            (Term::Const { value: a, .. }, Term::Const { value: b, .. }) => a == b,
            (Term::Mono { coeff: c1, exp: e1, .. }, Term::Mono { coeff: c2, exp: e2, .. }) => c1 == c2 && e1 == e2,
            _ => false,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Term::Const { value, .. } => write!(f, "{value}"),
            Term::Mono { coeff, exp, .. } => {
                if let Some(c) = coeff {
                    write!(f, "{c}*")?;
                }
                write!(f, "x")?;
                if let Some(e) = exp {
                    write!(f, "^{e}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExpr {
    pub terms: Vec<Term>,
    pub span: Span,
}

impl PolyExpr {
    /// Dense coefficients, summing repeated degrees in `GF(q)`.
    pub fn dense(&self, field: &RingTable) -> Vec<Elem> {
        let deg = self.terms.iter().map(|t| t.value().1).max().unwrap_or(0) as usize;
        let mut v = vec![field.zero(); deg + 1];
        for t in &self.terms {
            let (c, e) = t.value();
            v[e as usize] = field.add(v[e as usize], c as Elem);
        }
        table_poly::trim(field, v)
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    ZMod(u64),
    Gf(u64),
    PolyQuot(Box<RingExpr>, PolyExpr),
    Prod(Box<RingExpr>, Box<RingExpr>),
    Sdp { q: u64, dim: u64, kind: SdpKind },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingExpr {
    pub kind: ExprKind,
    pub span: Span,
}

impl RingExpr {
    /// Equality ignoring spans.
    pub fn same_shape(&self, other: &RingExpr) -> bool {
        match (&self.kind, &other.kind) {
            (ExprKind::ZMod(a), ExprKind::ZMod(b)) | (ExprKind::Gf(a), ExprKind::Gf(b)) => a == b,
            (ExprKind::PolyQuot(b1, p1), ExprKind::PolyQuot(b2, p2)) => {
                b1.same_shape(b2)
                    && p1.terms.len() == p2.terms.len()
                    && p1.terms.iter().zip(&p2.terms).all(|(s, t)| s.same_shape(t))
            }
            (ExprKind::Prod(l1, r1), ExprKind::Prod(l2, r2)) => l1.same_shape(l2) && r1.same_shape(r2),
            (ExprKind::Sdp { q: a, dim: b, kind: c }, ExprKind::Sdp { q: x, dim: y, kind: z }) => {
                a == x && b == y && c == z
            }
            _ => false,
        }
    }

    /// The `GF(q)` order of a field base.
    fn field_order(&self) -> Option<u64> {
        match self.kind {
            ExprKind::Gf(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::ZMod(n) => write!(f, "Z/{n}"),
            ExprKind::Gf(q) => write!(f, "GF({q})"),
            ExprKind::PolyQuot(base, p) => write!(f, "{base}[x]/({p})"),
            ExprKind::Prod(l, r) => write!(f, "prod({l},{r})"),
            ExprKind::Sdp { q, dim, kind } => write!(f, "sdp({q},{dim},{})", kind.as_str()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: expected {}", self.offset, self.expected.join(" or "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticError {
    pub span: Span,
    pub message: String,
}

impl fmt::Display for SemanticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error at {}..{}: {}", self.span.start, self.span.end, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("{0}")]
    Parse(ParseError),
    #[error("{0}")]
    Semantic(SemanticError),
}

impl DslError {
    fn semantic(span: Span, message: impl Into<String>) -> Self {
        DslError::Semantic(SemanticError { span, message: message.into() })
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    fail_pos: usize,
    expected: BTreeSet<&'static str>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn note(&mut self, what: &'static str) {
        if self.pos > self.fail_pos {
            self.fail_pos = self.pos;
            self.expected.clear();
        }
        if self.pos == self.fail_pos {
            self.expected.insert(what);
        }
    }

    fn error(&self) -> DslError {
        DslError::Parse(ParseError {
            offset: self.fail_pos,
            expected: self.expected.iter().copied().collect(),
        })
    }

    /// Matches a literal token, recording it as expected on failure.
    fn eat(&mut self, lit: &'static str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            self.note(lit);
            false
        }
    }

    fn expect(&mut self, lit: &'static str) -> Result<(), DslError> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn peek_nat(&mut self) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit())
    }

    fn nat(&mut self) -> Result<(u64, Span), DslError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            self.note("NAT");
            return Err(self.error());
        }
        self.pos += len;
        let span = Span::new(start, self.pos);
        let v = self.src[start..self.pos]
            .parse()
            .map_err(|_| DslError::semantic(span, "number too large"))?;
        Ok((v, span))
    }

    fn expr(&mut self) -> Result<RingExpr, DslError> {
        self.skip_ws();
        let start = self.pos;
        let mut e = if self.eat("Z") {
            self.expect("/")?;
            let (n, _) = self.nat()?;
            RingExpr { kind: ExprKind::ZMod(n), span: Span::new(start, self.pos) }
        } else if self.eat("GF") {
            self.expect("(")?;
            let (q, _) = self.nat()?;
            self.expect(")")?;
            RingExpr { kind: ExprKind::Gf(q), span: Span::new(start, self.pos) }
        } else if self.eat("prod") {
            self.expect("(")?;
            let l = self.expr()?;
            self.expect(",")?;
            let r = self.expr()?;
            self.expect(")")?;
            RingExpr { kind: ExprKind::Prod(Box::new(l), Box::new(r)), span: Span::new(start, self.pos) }
        } else if self.eat("sdp") {
            self.expect("(")?;
            let (q, _) = self.nat()?;
            self.expect(",")?;
            let (dim, _) = self.nat()?;
            self.expect(",")?;
            let kind = if self.eat("zero") {
                SdpKind::Zero
            } else if self.eat("unital") {
                SdpKind::Unital
            } else {
                return Err(self.error());
            };
            self.expect(")")?;
            RingExpr { kind: ExprKind::Sdp { q, dim, kind }, span: Span::new(start, self.pos) }
        } else {
            return Err(self.error());
        };
        while self.eat("[") {
            self.expect("x")?;
            self.expect("]")?;
            self.expect("/")?;
            self.expect("(")?;
            let p = self.poly()?;
            self.expect(")")?;
            e = RingExpr { kind: ExprKind::PolyQuot(Box::new(e), p), span: Span::new(start, self.pos) };
        }
        Ok(e)
    }

    fn poly(&mut self) -> Result<PolyExpr, DslError> {
        self.skip_ws();
        let start = self.pos;
        let mut terms = vec![self.term()?];
        while self.eat("+") {
            terms.push(self.term()?);
        }
        Ok(PolyExpr { terms, span: Span::new(start, self.pos) })
    }

    fn term(&mut self) -> Result<Term, DslError> {
        self.skip_ws();
        let start = self.pos;
        let coeff = if self.peek_nat() {
            let (c, _) = self.nat()?;
            if !self.eat("*") {
                return Ok(Term::Const { value: c, span: Span::new(start, self.pos) });
            }
            Some(c)
        } else {
            self.note("NAT");
            None
        };
        self.expect("x")?;
        let exp = if self.eat("^") { Some(self.nat()?.0) } else { None };
        Ok(Term::Mono { coeff, exp, span: Span::new(start, self.pos) })
    }
}

/// Parses and checks an expression.
pub fn parse_ring_expr(text: &str) -> Result<RingExpr, DslError> {
    let mut p = Parser { src: text, pos: 0, fail_pos: 0, expected: BTreeSet::new() };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        p.note("end of input");
        return Err(p.error());
    }
    check(&e)?;
    Ok(e)
}

fn check(e: &RingExpr) -> Result<(), DslError> {
    match &e.kind {
        ExprKind::ZMod(0) => Err(DslError::semantic(e.span, "Z/0 is not a finite ring")),
        ExprKind::ZMod(_) => Ok(()),
        ExprKind::Gf(q) => match prime_power(*q) {
            Some(_) => Ok(()),
            None => Err(DslError::semantic(e.span, format!("GF({q}): {q} is not a prime power"))),
        },
        ExprKind::PolyQuot(base, p) => {
            check(base)?;
            let q = base
                .field_order()
                .ok_or_else(|| DslError::semantic(base.span, "[x]/(...) needs a GF(q) base"))?;
            for t in &p.terms {
                let (c, _) = t.value();
                if c >= q {
                    return Err(DslError::semantic(t.span(), format!("coefficient {c} is not an element of GF({q})")));
                }
            }
            let degree = p.terms.iter().filter(|t| t.value().0 != 0).map(|t| t.value().1).max().unwrap_or(0);
            if degree == 0 {
                return Err(DslError::semantic(p.span, "modulus has degree 0"));
            }
            Ok(())
        }
        ExprKind::Prod(l, r) => {
            check(l)?;
            check(r)
        }
        ExprKind::Sdp { q, dim, .. } => {
            if prime_power(*q).is_none() {
                return Err(DslError::semantic(e.span, format!("sdp base GF({q}): {q} is not a prime power")));
            }
            if *dim == 0 {
                return Err(DslError::semantic(e.span, "sdp needs dimension at least 1"));
            }
            Ok(())
        }
    }
}

/// The `(K, A)` pair behind an `sdp` node.
pub fn sdp_pair(q: u64, dim: u64, kind: SdpKind) -> crate::Result<(RingTable, NonUnitalAlgebra)> {
    let k = gf_ring(q)?;
    let a = match kind {
        SdpKind::Zero => NonUnitalAlgebra::zero_algebra(&k, dim as usize)?,
        SdpKind::Unital => NonUnitalAlgebra::unital_algebra(&k, dim as usize)?,
    };
    Ok((k, a))
}

/// Builds the ring; its label is the printed expression.
pub fn evaluate(e: &RingExpr) -> Result<RingTable, DslError> {
    let at = |err: AlgebraError| DslError::semantic(e.span, err.to_string());
    let ring = match &e.kind {
        ExprKind::ZMod(n) => {
            let n = usize::try_from(*n).map_err(|_| DslError::semantic(e.span, "modulus too large"))?;
            RingTable::zmod(n).map_err(at)?
        }
        ExprKind::Gf(q) => gf_ring(*q).map_err(at)?,
        ExprKind::PolyQuot(base, p) => {
            let field = evaluate(base)?;
            let f = p.dense(&field);
            quotient_by_monic(&field, &f).map_err(|err| DslError::semantic(p.span, err.to_string()))?
        }
        ExprKind::Prod(l, r) => {
            RingTable::product(&evaluate(l)?, &evaluate(r)?).map_err(at)?
        }
        ExprKind::Sdp { q, dim, kind } => {
            let (k, a) = sdp_pair(*q, *dim, *kind).map_err(at)?;
            semidirect_pair(&k, &a).map_err(at)?
        }
    };
    Ok(ring.with_label(e.to_string()))
}

/// Parses and evaluates.
pub fn ring_from_str(text: &str) -> Result<RingTable, DslError> {
    evaluate(&parse_ring_expr(text)?)
}

/// Canonical text for `GF(q)[x]/(f)` given dense coefficients.
pub fn polyquot_text(q: u64, coeffs: &[Elem]) -> String {
    format!("GF({q})[x]/({})", format_poly(&coeffs.iter().map(|&c| c as u64).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::find_isomorphism;

    fn parse_err(s: &str) -> ParseError {
        match parse_ring_expr(s) {
            Err(DslError::Parse(e)) => e,
            other => panic!("{s:?}: expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn grammar_instances() {
        let e = parse_ring_expr("GF(2)[x]/(x^2)").unwrap();
        assert!(matches!(e.kind, ExprKind::PolyQuot(..)));
        assert_eq!(e.span, Span::new(0, 14));
        assert!(matches!(parse_ring_expr("prod(GF(2),GF(2))").unwrap().kind, ExprKind::Prod(..)));
        let e = parse_ring_expr("  sdp( 3 , 2 , unital ) ").unwrap();
        assert_eq!(e.to_string(), "sdp(3,2,unital)");
        assert_eq!(e.span, Span::new(2, 23));
    }

    #[test]
    fn incomplete_modulus() {
        let e = parse_err("Z/");
        assert_eq!(e.offset, 2);
        assert_eq!(e.expected, vec!["NAT"]);
    }

    #[test]
    fn expected_sets() {
        assert_eq!(parse_err("").expected, vec!["GF", "Z", "prod", "sdp"]);
        let e = parse_err("Z/4 x");
        assert_eq!((e.offset, e.expected), (4, vec!["[", "end of input"]));
        let e = parse_err("GF(2)[x]/(2*)");
        assert_eq!((e.offset, e.expected), (12, vec!["x"]));
        let e = parse_err("GF(2)[x]/()");
        assert_eq!((e.offset, e.expected), (10, vec!["NAT", "x"]));
        let e = parse_err("sdp(2,1,one)");
        assert_eq!(e.expected, vec!["unital", "zero"]);
    }

    #[test]
    fn semantic_errors() {
        for s in ["GF(6)", "Z/0", "GF(2)[x]/(2*x)", "GF(3)[x]/(1)", "Z/4[x]/(x)", "sdp(6,1,zero)", "sdp(2,0,zero)"] {
            assert!(matches!(parse_ring_expr(s), Err(DslError::Semantic(_))), "{s}");
        }
        // x + x cancels over GF(2)
        assert!(matches!(ring_from_str("GF(2)[x]/(x+x)"), Err(DslError::Semantic(_))));
        assert!(matches!(ring_from_str("Z/5000"), Err(DslError::Semantic(_))));
    }

    #[test]
    fn evaluation() {
        assert!(ring_from_str("GF(4)").unwrap().is_field());
        let s = ring_from_str("sdp(2,1,zero)").unwrap();
        let d = ring_from_str("GF(2)[x]/(x^2)").unwrap();
        assert!(find_isomorphism(&s, &d).unwrap().is_some());
        assert_eq!(s.label(), "sdp(2,1,zero)");
        let r = ring_from_str("prod(GF(2), Z/3)").unwrap();
        assert_eq!((r.order(), r.label()), (6, "prod(GF(2),Z/3)"));
        // 2*x^2 + 2 over GF(3) is normalized to x^2 + 1
        let a = ring_from_str("GF(3)[x]/(2*x^2+2)").unwrap();
        assert!(a.is_field());
        let b = ring_from_str("GF(4)[x]/(x^2+x+2)").unwrap();
        assert_eq!(b.order(), 16);
    }

    #[test]
    fn print_parse_fixpoint() {
        for s in ["GF(3)[x]/(x + 2*x^2 + 1)", "prod(Z/4,GF(2)[x]/(x^3+x+1))", "GF(2)[x]/(1*x^1)"] {
            let e = parse_ring_expr(s).unwrap();
            let t = e.to_string();
            let e2 = parse_ring_expr(&t).unwrap();
            assert!(e.same_shape(&e2));
            assert_eq!(e2.to_string(), t);
        }
    }

    #[test]
    fn polyquot_text_parses() {
        let t = polyquot_text(3, &[2, 0, 1]);
        assert_eq!(t, "GF(3)[x]/(x^2+2)");
        assert!(parse_ring_expr(&t).is_ok());
    }
}
