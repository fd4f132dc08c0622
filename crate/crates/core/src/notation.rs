//! Bracket notation for real and oriented schemes.
//!
//! ```text
//! scheme  := "<" top ">"
//! top     := segment ("," segment)*
//! segment := body | count? class sign?
//! body    := "0" | item ("+" item)*
//! item    := "J" sign? | count? sign? ("<" body ">")?
//! class   := "(" int "," int ")"
//! sign    := "^+" | "^-"
//! ```
//!
//! An item needs a count or a group. `5` is five empty ovals and
//! `3<1>` three ovals each containing one empty oval. On the hyperboloid
//! a class token names one noncontractible component (or `count` of them
//! with empty annuli in between) and the body after it is the scheme in
//! the following annulus. A body standing before the first class token
//! belongs to the last annulus.
//!
//! Root signs are absolute orientation bits. Signs of inner ovals are
//! pair signs: `^+` when the bit differs from the bit of the parent.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scheme::{CurveClass, Mark, Noncontractible, OrientedScheme, Oval, RealScheme, Scheme, Surface};

const MAX_OVALS: usize = 1_000_000;

/// Text of one oval with its subtree, the leading count being 1.
pub fn oval_text<M: Mark>(o: &Oval<M>, parent: Option<&M>) -> String {
    let mut s = String::from("1");
    s.push_str(o.mark.suffix(parent));
    if !o.children.is_empty() {
        s.push('<');
        s.push_str(&body_text(&o.children, Some(&o.mark)));
        s.push('>');
    }
    s
}

fn body_text<M: Mark>(f: &[Oval<M>], parent: Option<&M>) -> String {
    if f.is_empty() {
        return "0".into();
    }
    let texts: Vec<String> = f.iter().map(|o| oval_text(o, parent)).collect();
    let mut items: Vec<String> = Vec::new();
    let mut i = 0;
    while i < texts.len() {
        let mut j = i + 1;
        while j < texts.len() && texts[j] == texts[i] {
            j += 1;
        }
        let n = j - i;
        if n == 1 {
            items.push(texts[i].clone());
        } else {
            items.push(format!("{}{}", n, &texts[i][1..]));
        }
        i = j;
    }
    items.join(" + ")
}

/// Body text of a forest of root ovals.
pub fn forest_text<M: Mark>(f: &[Oval<M>]) -> String {
    body_text(f, None)
}

fn class_text(c: (i64, i64)) -> String {
    format!("({},{})", c.0, c.1)
}

pub fn render<M: Mark>(s: &Scheme<M>) -> String {
    let mut out = String::from("<");
    match s.noncontractible() {
        None => {
            let f = &s.forests()[0];
            if let Some(j) = s.one_sided() {
                out.push('J');
                out.push_str(j.suffix(None));
                if !f.is_empty() {
                    out.push_str(" + ");
                    out.push_str(&forest_text(f));
                }
            } else {
                out.push_str(&forest_text(f));
            }
        }
        Some(nc) => {
            out.push_str(&segments_text(nc, s.forests()));
        }
    }
    out.push('>');
    out
}

fn segments_text<M: Mark>(nc: &Noncontractible<M>, forests: &[Vec<Oval<M>>]) -> String {
    let h = nc.marks.len();
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < h {
        let mut k = i;
        while k + 1 < h && forests[k].is_empty() && nc.marks[k + 1] == nc.marks[i] {
            k += 1;
        }
        let n = k - i + 1;
        let mut t = String::new();
        if n > 1 {
            t.push_str(&n.to_string());
        }
        t.push_str(&class_text(nc.homclass));
        t.push_str(nc.marks[i].suffix(None));
        parts.push(t);
        if !forests[k].is_empty() {
            parts.push(forest_text(&forests[k]));
        }
        i = k + 1;
    }
    parts.join(", ")
}

/// Result of parsing: a real scheme, or an oriented one when signs are present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Real(RealScheme),
    Oriented(OrientedScheme),
}

impl Parsed {
    pub fn real(&self) -> RealScheme {
        match self {
            Parsed::Real(s) => s.clone(),
            Parsed::Oriented(o) => o.forget(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Parsed::Real(s) => s.render(),
            Parsed::Oriented(o) => o.render(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
struct RawOval {
    pos: usize,
    count: usize,
    sign: Option<Sign>,
    children: Vec<RawOval>,
}

#[derive(Debug, Clone)]
enum RawItem {
    J { pos: usize, sign: Option<Sign> },
    Oval(RawOval),
}

#[derive(Debug, Clone)]
enum RawSegment {
    Body { pos: usize, items: Vec<RawItem> },
    Class { pos: usize, count: usize, class: (i64, i64), sign: Option<Sign> },
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    ovals: usize,
}

fn perr<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { position, message: message.into() })
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => perr(self.pos, format!("expected '{}', found '{}'", c, x)),
            None => perr(self.pos, format!("expected '{}', found end of input", c)),
        }
    }

    fn digits(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some((start, self.chars[start..self.pos].iter().collect()))
        }
    }

    fn count(&mut self) -> Result<Option<(usize, usize)>> {
        match self.digits() {
            None => Ok(None),
            Some((at, d)) => match d.parse::<usize>() {
                Ok(n) if n <= MAX_OVALS => Ok(Some((at, n))),
                _ => perr(at, "count too large"),
            },
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let at = self.pos;
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            if self.peek() == Some('+') {
                self.pos += 1;
            }
            false
        };
        match self.digits() {
            None => perr(self.pos, "expected an integer"),
            Some((_, d)) => match d.parse::<i64>() {
                Ok(v) if v <= 1_000_000 => Ok(if neg { -v } else { v }),
                _ => perr(at, "integer out of range"),
            },
        }
    }

    fn sign(&mut self) -> Result<Option<Sign>> {
        if self.peek() != Some('^') {
            return Ok(None);
        }
        self.pos += 1;
        match self.chars.get(self.pos) {
            Some('+') => {
                self.pos += 1;
                Ok(Some(Sign::Plus))
            }
            Some('-') => {
                self.pos += 1;
                Ok(Some(Sign::Minus))
            }
            _ => perr(self.pos, "expected '+' or '-' after '^'"),
        }
    }

    fn body(&mut self) -> Result<Vec<RawItem>> {
        let at = {
            self.skip_ws();
            self.pos
        };
        // a lone "0" is the empty body
        if self.peek() == Some('0') {
            let save = self.pos;
            if let Some((_, d)) = self.digits() {
                if d.chars().all(|c| c == '0') {
                    match self.peek() {
                        Some('>') | Some(',') | None => return Ok(Vec::new()),
                        _ => return perr(save, "a count must be positive"),
                    }
                }
            }
            self.pos = save;
        }
        let mut items = vec![self.item()?];
        while self.peek() == Some('+') {
            self.pos += 1;
            items.push(self.item()?);
        }
        let _ = at;
        Ok(items)
    }

    fn item(&mut self) -> Result<RawItem> {
        let at = match self.peek() {
            None => return perr(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        if self.peek() == Some('J') {
            self.pos += 1;
            let sign = self.sign()?;
            return Ok(RawItem::J { pos: at, sign });
        }
        let count = self.count()?;
        if let Some((p, 0)) = count {
            return perr(p, "a count must be positive");
        }
        let sign = self.sign()?;
        let children = if self.peek() == Some('<') {
            self.pos += 1;
            let inner = self.body()?;
            self.expect('>')?;
            let mut ovals = Vec::new();
            for it in inner {
                match it {
                    RawItem::Oval(o) => ovals.push(o),
                    RawItem::J { pos, .. } => return perr(pos, "J cannot lie inside an oval"),
                }
            }
            Some(ovals)
        } else {
            None
        };
        if count.is_none() && children.is_none() {
            return match self.peek() {
                Some(c) => perr(self.pos, format!("unexpected '{}'", c)),
                None => perr(self.pos, "unexpected end of input"),
            };
        }
        let n = count.map_or(1, |c| c.1);
        let children = children.unwrap_or_default();
        let inner: usize = children.iter().map(raw_size).sum();
        self.ovals = self.ovals.saturating_add(n.saturating_mul(1 + inner));
        if self.ovals > MAX_OVALS {
            return perr(at, "scheme too large");
        }
        Ok(RawItem::Oval(RawOval { pos: at, count: n, sign, children }))
    }

    fn segment(&mut self) -> Result<RawSegment> {
        self.skip_ws();
        let at = self.pos;
        // class tokens may carry a count
        let save = self.pos;
        let count = self.count()?;
        if self.peek() == Some('(') {
            let n = match count {
                Some((p, 0)) => return perr(p, "a count must be positive"),
                Some((_, n)) => n,
                None => 1,
            };
            self.pos += 1;
            let c1 = self.int()?;
            self.expect(',')?;
            let c2 = self.int()?;
            self.expect(')')?;
            let sign = self.sign()?;
            if n > MAX_OVALS {
                return perr(at, "count too large");
            }
            return Ok(RawSegment::Class { pos: at, count: n, class: (c1, c2), sign });
        }
        self.pos = save;
        let items = self.body()?;
        Ok(RawSegment::Body { pos: at, items })
    }

    fn top(&mut self) -> Result<Vec<RawSegment>> {
        self.expect('<')?;
        let mut segs = vec![self.segment()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            segs.push(self.segment()?);
        }
        self.expect('>')?;
        if let Some(c) = self.peek() {
            return perr(self.pos, format!("trailing input starting with '{}'", c));
        }
        Ok(segs)
    }
}

fn raw_size(o: &RawOval) -> usize {
    o.count * (1 + o.children.iter().map(raw_size).sum::<usize>())
}

fn collect_signs(o: &RawOval, out: &mut Vec<(usize, bool)>) {
    out.push((o.pos, o.sign.is_some()));
    for c in &o.children {
        collect_signs(c, out);
    }
}

fn build_oval<M: Mark>(o: &RawOval, parent: Option<&M>, mk: &impl Fn(Option<Sign>, Option<&M>) -> M) -> Vec<Oval<M>> {
    let mark = mk(o.sign, parent);
    let mut children = Vec::new();
    for c in &o.children {
        children.extend(build_oval(c, Some(&mark), mk));
    }
    vec![Oval::new(mark, children); o.count]
}

struct Layout {
    j: Option<(usize, Option<Sign>)>,
    classes: Vec<(usize, (i64, i64), Option<Sign>)>,
    forests: Vec<Vec<RawOval>>,
}

fn layout(segs: Vec<RawSegment>, surface: Surface, class: CurveClass) -> Result<Layout> {
    let mut j = None;
    let mut classes = Vec::new();
    let mut forests: Vec<Vec<RawOval>> = Vec::new();
    let mut leading: Vec<RawOval> = Vec::new();
    let mut last_was_body = false;
    let any_class = segs.iter().any(|s| matches!(s, RawSegment::Class { .. }));
    if !any_class && segs.len() > 1 {
        if let RawSegment::Body { pos, .. } = &segs[1] {
            return perr(*pos, "',' separates annuli and needs class tokens");
        }
    }
    for seg in segs {
        match seg {
            RawSegment::Class { pos, count, class: c, sign } => {
                if surface != Surface::Hyperboloid {
                    return perr(pos, "noncontractible components exist only on the hyperboloid");
                }
                for _ in 0..count {
                    classes.push((pos, c, sign));
                    forests.push(Vec::new());
                }
                last_was_body = false;
            }
            RawSegment::Body { pos, items } => {
                if last_was_body {
                    return perr(pos, "two annulus schemes without a class token between them");
                }
                last_was_body = true;
                let mut ovals = Vec::new();
                for it in items {
                    match it {
                        RawItem::J { pos, sign } => {
                            let odd_plane =
                                matches!((surface, class), (Surface::Plane, CurveClass::Degree(m)) if m % 2 == 1);
                            if !odd_plane {
                                return perr(pos, "J is allowed only for plane curves of odd degree");
                            }
                            if j.is_some() {
                                return perr(pos, "more than one J");
                            }
                            j = Some((pos, sign));
                        }
                        RawItem::Oval(o) => ovals.push(o),
                    }
                }
                match forests.last_mut() {
                    Some(f) => f.extend(ovals),
                    None => leading.extend(ovals),
                }
            }
        }
    }
    if forests.is_empty() {
        forests.push(leading);
    } else {
        forests.last_mut().unwrap().extend(leading);
    }
    Ok(Layout { j, classes, forests })
}

/// Parses a scheme for the given surface and class.
pub fn parse(text: &str, surface: Surface, class: CurveClass) -> Result<Parsed> {
    if let Err(e) = class.check_for(surface) {
        return perr(0, e.to_string());
    }
    let mut p = Parser { chars: text.chars().collect(), pos: 0, ovals: 0 };
    let segs = p.top()?;
    let lay = layout(segs, surface, class)?;

    let odd_plane = matches!((surface, class), (Surface::Plane, CurveClass::Degree(m)) if m % 2 == 1);
    if odd_plane && lay.j.is_none() {
        return perr(0, "a curve of odd degree needs its one-sided component J");
    }
    let homclass = match lay.classes.first() {
        None => None,
        Some(&(_, c, _)) => {
            if c == (0, 0) {
                return perr(lay.classes[0].0, "homology class (0,0)");
            }
            let n = crate::scheme::normalize_class(c);
            for &(pos, d, _) in &lay.classes {
                if crate::scheme::normalize_class(d) != n {
                    return perr(pos, "noncontractible components of different classes");
                }
            }
            Some(n)
        }
    };

    let mut signs: Vec<(usize, bool)> = Vec::new();
    if let Some((pos, s)) = lay.j {
        signs.push((pos, s.is_some()));
    }
    for &(pos, _, s) in &lay.classes {
        signs.push((pos, s.is_some()));
    }
    for f in &lay.forests {
        for o in f {
            collect_signs(o, &mut signs);
        }
    }
    let signed = signs.iter().filter(|s| s.1).count();
    if signed > 0 && signed < signs.len() {
        let pos = signs.iter().find(|s| !s.1).unwrap().0;
        return perr(pos, "orientation signs must be given on every component or on none");
    }

    fn finish<M: Mark>(
        lay: &Layout,
        surface: Surface,
        class: CurveClass,
        homclass: Option<(i64, i64)>,
        mk: impl Fn(Option<Sign>, Option<&M>) -> M,
    ) -> Result<Scheme<M>> {
        let j = lay.j.map(|(_, s)| mk(s, None));
        let nc = homclass.map(|c| Noncontractible {
            homclass: c,
            marks: lay.classes.iter().map(|&(_, _, s)| mk(s, None)).collect(),
        });
        let forests = lay.forests.iter().map(|f| f.iter().flat_map(|o| build_oval(o, None, &mk)).collect()).collect();
        Scheme::new(surface, class, j, nc, forests).map_err(|e| match e {
            Error::InvalidScheme(m) => Error::Parse { position: 0, message: m },
            other => other,
        })
    }

    if signed > 0 {
        let mk = |s: Option<Sign>, parent: Option<&bool>| -> bool {
            let plus = s == Some(Sign::Plus);
            match parent {
                None => plus,
                Some(&b) => {
                    if plus {
                        !b
                    } else {
                        b
                    }
                }
            }
        };
        finish(&lay, surface, class, homclass, mk).map(Parsed::Oriented)
    } else {
        finish(&lay, surface, class, homclass, |_, _: Option<&()>| ()).map(Parsed::Real)
    }
}

/// Parses a scheme and drops orientation signs if any.
pub fn parse_real(text: &str, surface: Surface, class: CurveClass) -> Result<RealScheme> {
    parse(text, surface, class).map(|p| p.real())
}

/// Parses a scheme that must carry orientation signs.
pub fn parse_oriented(text: &str, surface: Surface, class: CurveClass) -> Result<OrientedScheme> {
    match parse(text, surface, class)? {
        Parsed::Oriented(o) => Ok(o),
        Parsed::Real(_) => perr(0, "orientation signs expected"),
    }
}
