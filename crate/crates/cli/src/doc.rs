//! Text documents describing a variety pair or a finite configuration.
//!
//! ```text
//! pair {
//!   n = 2;
//!   V { x2 - x1^2 }
//!   W { y1*y2 - 1 }
//!   V' { x1 }            # removed from V by `reduce`
//!   W' { }
//!   irreducible { V W }  # assumed for both sides when omitted
//!   height = 3; k_cap = 5; seed = 7;
//! }
//!
//! config {
//!   generators { a; "pi/2" }
//!   X { x2 - 2*x1 }
//!   Y { y2 - y1^2 }
//!   relations { [2, -1] }
//!   kernel { x1 }
//!   height = 2;
//! }
//! ```
//!
//! Polynomials in a block are separated by `;`. A `#` starts a comment
//! running to the end of the line.

use std::fmt;

use expfield::algebra::{parse_polynomial, Polynomial, Ring};
use expfield::ideal::Ideal;
use expfield::lattice::IntMatrix;
use expfield::pairs::VarietyPair;
use expfield::predim::{Configuration, SubsetSpec};
use num_bigint::BigInt;

/// A document error with a 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for DocError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDocument {
    pub n: usize,
    pub v: Vec<Polynomial>,
    pub w: Vec<Polynomial>,
    /// `None` removes nothing.
    pub v_removed: Option<Vec<Polynomial>>,
    pub w_removed: Option<Vec<Polynomial>>,
    pub irreducible_v: bool,
    pub irreducible_w: bool,
    pub height: Option<u64>,
    pub k_cap: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigDocument {
    pub names: Vec<String>,
    pub x: Vec<Polynomial>,
    pub y: Vec<Polynomial>,
    pub relations: Vec<Vec<BigInt>>,
    /// Zero-based, ascending.
    pub kernel: Vec<usize>,
    pub height: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Pair(PairDocument),
    Config(ConfigDocument),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Str(String),
    Int(BigInt),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

/// 1-based line and column of a byte offset, counting characters.
pub fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[start..].chars().count() + 1)
}

impl<'a> Lexer<'a> {
    fn error(&self, offset: usize, message: impl Into<String>) -> DocError {
        let (line, column) = position(self.src, offset);
        DocError { line, column, message: message.into() }
    }

    fn skip_blank(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b'#' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    /// Next token and its offset.
    fn next(&mut self) -> Result<(Tok, usize), DocError> {
        self.skip_blank();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        if start >= bytes.len() {
            return Ok((Tok::End, start));
        }
        let c = bytes[start];
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            if self.pos < bytes.len() && bytes[self.pos] == b'\'' {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            return Ok((Tok::Int(self.src[start..self.pos].parse().unwrap()), start));
        }
        if c == b'"' {
            self.pos += 1;
            while self.pos < bytes.len() && bytes[self.pos] != b'"' {
                if bytes[self.pos] == b'\n' {
                    return Err(self.error(start, "unterminated string"));
                }
                self.pos += 1;
            }
            if self.pos >= bytes.len() {
                return Err(self.error(start, "unterminated string"));
            }
            self.pos += 1;
            return Ok((Tok::Str(self.src[start + 1..self.pos - 1].to_string()), start));
        }
        let ch = self.src[start..].chars().next().unwrap();
        if "{};=,[]-".contains(ch) {
            self.pos += 1;
            return Ok((Tok::Sym(ch), start));
        }
        Err(self.error(start, format!("unexpected character '{ch}'")))
    }

    fn peek(&mut self) -> Result<(Tok, usize), DocError> {
        let save = self.pos;
        let t = self.next();
        self.pos = save;
        t
    }

    fn expect(&mut self, sym: char) -> Result<usize, DocError> {
        match self.next()? {
            (Tok::Sym(c), at) if c == sym => Ok(at),
            (t, at) => Err(self.error(at, format!("expected '{sym}', found {}", describe(&t)))),
        }
    }

    fn int(&mut self) -> Result<(BigInt, usize), DocError> {
        match self.next()? {
            (Tok::Sym('-'), at) => match self.next()? {
                (Tok::Int(v), _) => Ok((-v, at)),
                (t, at) => Err(self.error(at, format!("expected an integer, found {}", describe(&t)))),
            },
            (Tok::Int(v), at) => Ok((v, at)),
            (t, at) => Err(self.error(at, format!("expected an integer, found {}", describe(&t)))),
        }
    }

    fn small<T: TryFrom<BigInt>>(&mut self, what: &str) -> Result<(T, usize), DocError> {
        let (v, at) = self.int()?;
        T::try_from(v).map(|v| (v, at)).map_err(|_| self.error(at, format!("{what} out of range")))
    }

    /// Raw polynomial sources of a `{ p; q; … }` block, with offsets.
    fn poly_block(&mut self) -> Result<(Vec<(String, usize)>, usize), DocError> {
        let open = self.expect('{')?;
        let bytes = self.src.as_bytes();
        let mut items = Vec::new();
        let mut start = self.pos;
        loop {
            if self.pos >= bytes.len() {
                return Err(self.error(open, "unclosed '{'"));
            }
            match bytes[self.pos] {
                b'#' => self.skip_blank(),
                b';' | b'}' => {
                    let raw = &self.src[start..self.pos];
                    let text = strip_comments(raw);
                    if !text.trim().is_empty() {
                        items.push((text, start));
                    }
                    let close = bytes[self.pos] == b'}';
                    self.pos += 1;
                    start = self.pos;
                    if close {
                        return Ok((items, open));
                    }
                }
                b'{' => return Err(self.error(self.pos, "unexpected '{' inside a polynomial block")),
                _ => self.pos += 1,
            }
        }
    }
}

/// Blanks out `#` comments, keeping byte offsets intact.
fn strip_comments(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut in_comment = false;
    for ch in raw.chars() {
        if ch == '#' {
            in_comment = true;
        } else if ch == '\n' {
            in_comment = false;
        }
        if in_comment {
            out.extend(std::iter::repeat_n(' ', ch.len_utf8()));
        } else {
            out.push(ch);
        }
    }
    out
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Str(s) => format!("\"{s}\""),
        Tok::Int(v) => format!("'{v}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

fn polys(lx: &Lexer, ring: &Ring, items: &[(String, usize)]) -> Result<Vec<Polynomial>, DocError> {
    items
        .iter()
        .map(|(text, at)| parse_polynomial(ring, text).map_err(|e| lx.error(at + e.offset, e.message)))
        .collect()
}

pub fn parse(src: &str) -> Result<Document, DocError> {
    let mut lx = Lexer { src, pos: 0 };
    let doc = match lx.next()? {
        (Tok::Ident(k), at) if k == "pair" => Document::Pair(parse_pair(&mut lx, at)?),
        (Tok::Ident(k), at) if k == "config" => Document::Config(parse_config(&mut lx, at)?),
        (t, at) => return Err(lx.error(at, format!("expected 'pair' or 'config', found {}", describe(&t)))),
    };
    match lx.next()? {
        (Tok::End, _) => Ok(doc),
        (t, at) => Err(lx.error(at, format!("unexpected {} after the document", describe(&t)))),
    }
}

fn parse_pair(lx: &mut Lexer, at: usize) -> Result<PairDocument, DocError> {
    lx.expect('{')?;
    let mut n = None;
    let mut blocks: [Option<(Vec<(String, usize)>, usize)>; 4] = Default::default();
    let mut irreducible = None;
    let (mut height, mut k_cap, mut seed) = (None, None, None);
    loop {
        let (t, key_at) = lx.next()?;
        let key = match t {
            Tok::Sym('}') => break,
            Tok::Ident(k) => k,
            t => return Err(lx.error(key_at, format!("expected a pair entry, found {}", describe(&t)))),
        };
        let dup = |lx: &Lexer| lx.error(key_at, format!("'{key}' given twice"));
        match key.as_str() {
            "V" | "W" | "V'" | "W'" => {
                let slot = ["V", "W", "V'", "W'"].iter().position(|s| *s == key).unwrap();
                if blocks[slot].is_some() {
                    return Err(dup(lx));
                }
                blocks[slot] = Some(lx.poly_block()?);
            }
            "irreducible" => {
                if irreducible.is_some() {
                    return Err(dup(lx));
                }
                lx.expect('{')?;
                let (mut v, mut w) = (false, false);
                loop {
                    match lx.next()? {
                        (Tok::Sym('}'), _) => break,
                        (Tok::Sym(',' | ';'), _) => {}
                        (Tok::Ident(s), _) if s == "V" => v = true,
                        (Tok::Ident(s), _) if s == "W" => w = true,
                        (t, a) => return Err(lx.error(a, format!("expected V or W, found {}", describe(&t)))),
                    }
                }
                irreducible = Some((v, w));
            }
            "n" | "height" | "k_cap" | "seed" => {
                lx.expect('=')?;
                match key.as_str() {
                    "n" => {
                        let (v, a) = lx.small::<usize>("n")?;
                        if v == 0 {
                            return Err(lx.error(a, "n must be at least 1"));
                        }
                        if n.replace(v).is_some() {
                            return Err(dup(lx));
                        }
                    }
                    "height" => {
                        let (v, a) = lx.small::<u64>("height")?;
                        if v == 0 {
                            return Err(lx.error(a, "height must be at least 1"));
                        }
                        if height.replace(v).is_some() {
                            return Err(dup(lx));
                        }
                    }
                    "k_cap" => {
                        let (v, a) = lx.small::<u32>("k_cap")?;
                        if v == 0 {
                            return Err(lx.error(a, "k_cap must be at least 1"));
                        }
                        if k_cap.replace(v).is_some() {
                            return Err(dup(lx));
                        }
                    }
                    _ => {
                        if seed.replace(lx.small::<u64>("seed")?.0).is_some() {
                            return Err(dup(lx));
                        }
                    }
                }
                lx.expect(';')?;
            }
            _ => return Err(lx.error(key_at, format!("unknown pair entry '{key}'"))),
        }
    }
    let n = n.ok_or_else(|| lx.error(at, "pair is missing 'n = …;'"))?;
    let xr = Ring::indexed("x", n);
    let yr = Ring::indexed("y", n);
    let [v, w, vr, wr] = blocks;
    let take = |b: Option<(Vec<(String, usize)>, usize)>, ring: &Ring| -> Result<Option<Vec<Polynomial>>, DocError> {
        b.map(|(items, _)| polys(lx, ring, &items)).transpose()
    };
    let (irreducible_v, irreducible_w) = irreducible.unwrap_or((true, true));
    Ok(PairDocument {
        n,
        v: take(v, &xr)?.unwrap_or_default(),
        w: take(w, &yr)?.unwrap_or_default(),
        v_removed: take(vr, &xr)?,
        w_removed: take(wr, &yr)?,
        irreducible_v,
        irreducible_w,
        height,
        k_cap,
        seed,
    })
}

fn parse_config(lx: &mut Lexer, at: usize) -> Result<ConfigDocument, DocError> {
    lx.expect('{')?;
    let mut names: Option<Vec<String>> = None;
    let (mut xb, mut yb) = (None, None);
    let mut relations: Option<Vec<(Vec<BigInt>, usize)>> = None;
    let mut kernel: Option<Vec<(usize, usize)>> = None;
    let mut height = None;
    loop {
        let (t, key_at) = lx.next()?;
        let key = match t {
            Tok::Sym('}') => break,
            Tok::Ident(k) => k,
            t => return Err(lx.error(key_at, format!("expected a config entry, found {}", describe(&t)))),
        };
        let dup = lx.error(key_at, format!("'{key}' given twice"));
        match key.as_str() {
            "generators" => {
                lx.expect('{')?;
                let mut out = Vec::new();
                loop {
                    match lx.next()? {
                        (Tok::Sym('}'), _) => break,
                        (Tok::Sym(';'), _) => {}
                        (Tok::Ident(s) | Tok::Str(s), _) => out.push(s),
                        (t, a) => return Err(lx.error(a, format!("expected a generator name, found {}", describe(&t)))),
                    }
                }
                if names.replace(out).is_some() {
                    return Err(dup);
                }
            }
            "X" | "Y" => {
                let b = lx.poly_block()?;
                let slot = if key == "X" { &mut xb } else { &mut yb };
                if slot.replace(b).is_some() {
                    return Err(dup);
                }
            }
            "relations" => {
                lx.expect('{')?;
                let mut rows = Vec::new();
                loop {
                    match lx.peek()? {
                        (Tok::Sym('}'), _) => {
                            lx.next()?;
                            break;
                        }
                        (Tok::Sym(';'), _) => {
                            lx.next()?;
                        }
                        _ => {
                            let open = lx.expect('[')?;
                            let mut row = Vec::new();
                            loop {
                                if let (Tok::Sym(']'), _) = lx.peek()? {
                                    lx.next()?;
                                    break;
                                }
                                if !row.is_empty() {
                                    lx.expect(',')?;
                                }
                                row.push(lx.int()?.0);
                            }
                            rows.push((row, open));
                        }
                    }
                }
                if relations.replace(rows).is_some() {
                    return Err(dup);
                }
            }
            "kernel" => {
                lx.expect('{')?;
                let mut marks = Vec::new();
                loop {
                    match lx.next()? {
                        (Tok::Sym('}'), _) => break,
                        (Tok::Sym(',' | ';'), _) => {}
                        (Tok::Ident(s), a) => {
                            let idx = s.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()).filter(|&i| i >= 1);
                            match idx {
                                Some(i) => marks.push((i - 1, a)),
                                None => return Err(lx.error(a, format!("expected a variable x<k>, found '{s}'"))),
                            }
                        }
                        (t, a) => return Err(lx.error(a, format!("expected a variable x<k>, found {}", describe(&t)))),
                    }
                }
                if kernel.replace(marks).is_some() {
                    return Err(dup);
                }
            }
            "height" => {
                lx.expect('=')?;
                let (v, a) = lx.small::<u64>("height")?;
                if v == 0 {
                    return Err(lx.error(a, "height must be at least 1"));
                }
                lx.expect(';')?;
                if height.replace(v).is_some() {
                    return Err(dup);
                }
            }
            _ => return Err(lx.error(key_at, format!("unknown config entry '{key}'"))),
        }
    }
    let names = names.ok_or_else(|| lx.error(at, "config is missing 'generators { … }'"))?;
    let n = names.len();
    if n == 0 {
        return Err(lx.error(at, "a configuration needs at least one generator"));
    }
    let xr = Ring::indexed("x", n);
    let yr = Ring::indexed("y", n);
    let x = match xb {
        Some((items, _)) => polys(lx, &xr, &items)?,
        None => Vec::new(),
    };
    let y = match yb {
        Some((items, _)) => polys(lx, &yr, &items)?,
        None => Vec::new(),
    };
    let mut rel_rows = Vec::new();
    for (row, a) in relations.unwrap_or_default() {
        if row.len() != n {
            return Err(lx.error(a, format!("relation has {} entries but there are {n} generators", row.len())));
        }
        rel_rows.push(row);
    }
    let mut marks = Vec::new();
    for (i, a) in kernel.unwrap_or_default() {
        if i >= n {
            return Err(lx.error(a, format!("kernel mark x{} is out of range for {n} generators", i + 1)));
        }
        marks.push(i);
    }
    marks.sort_unstable();
    marks.dedup();
    Ok(ConfigDocument { names, x, y, relations: rel_rows, kernel: marks, height })
}

fn block(out: &mut String, key: &str, ps: &[Polynomial]) {
    let items: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    if items.is_empty() {
        out.push_str(&format!("  {key} {{ }}\n"));
    } else {
        out.push_str(&format!("  {key} {{ {} }}\n", items.join("; ")));
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for PairDocument {
    /// Canonical form: fixed entry order, polynomials in the printer's
    /// sorted term order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = format!("pair {{\n  n = {};\n", self.n);
        block(&mut out, "V", &self.v);
        block(&mut out, "W", &self.w);
        if let Some(ps) = &self.v_removed {
            block(&mut out, "V'", ps);
        }
        if let Some(ps) = &self.w_removed {
            block(&mut out, "W'", ps);
        }
        if !(self.irreducible_v && self.irreducible_w) {
            let sides: Vec<&str> = [(self.irreducible_v, "V"), (self.irreducible_w, "W")]
                .iter()
                .filter(|(b, _)| *b)
                .map(|(_, s)| *s)
                .collect();
            out.push_str(&format!("  irreducible {{ {} }}\n", sides.join(" ")).replace("{  }", "{ }"));
        }
        for (key, v) in [("height", self.height), ("k_cap", self.k_cap.map(u64::from)), ("seed", self.seed)] {
            if let Some(v) = v {
                out.push_str(&format!("  {key} = {v};\n"));
            }
        }
        out.push('}');
        write!(f, "{out}")
    }
}

impl fmt::Display for ConfigDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> =
            self.names.iter().map(|s| if is_ident(s) { s.clone() } else { format!("\"{s}\"") }).collect();
        let mut out = format!("config {{\n  generators {{ {} }}\n", names.join("; "));
        block(&mut out, "X", &self.x);
        block(&mut out, "Y", &self.y);
        if !self.relations.is_empty() {
            let rows: Vec<String> = self
                .relations
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                .collect();
            out.push_str(&format!("  relations {{ {} }}\n", rows.join("; ")));
        }
        if !self.kernel.is_empty() {
            let marks: Vec<String> = self.kernel.iter().map(|i| format!("x{}", i + 1)).collect();
            out.push_str(&format!("  kernel {{ {} }}\n", marks.join(", ")));
        }
        if let Some(h) = self.height {
            out.push_str(&format!("  height = {h};\n"));
        }
        out.push('}');
        write!(f, "{out}")
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Document::Pair(p) => p.fmt(f),
            Document::Config(c) => c.fmt(f),
        }
    }
}

impl PairDocument {
    pub fn pair(&self) -> expfield::Result<VarietyPair> {
        let xr = Ring::indexed("x", self.n);
        let yr = Ring::indexed("y", self.n);
        VarietyPair::new(
            Ideal::new(&xr, self.v.clone()),
            Ideal::new(&yr, self.w.clone()),
            self.irreducible_v,
            self.irreducible_w,
        )
    }

    /// `I_V′` and `I_W′`; an absent block is the unit ideal.
    pub fn removed(&self) -> (Ideal, Ideal) {
        let side = |ps: &Option<Vec<Polynomial>>, prefix| {
            let r = Ring::indexed(prefix, self.n);
            match ps {
                Some(ps) => Ideal::new(&r, ps.clone()),
                None => Ideal::unit(&r),
            }
        };
        (side(&self.v_removed, "x"), side(&self.w_removed, "y"))
    }

    pub fn from_pair(p: &VarietyPair) -> PairDocument {
        PairDocument {
            n: p.n(),
            v: p.iv().gens().to_vec(),
            w: p.iw().gens().to_vec(),
            v_removed: None,
            w_removed: None,
            irreducible_v: p.irreducible_v(),
            irreducible_w: p.irreducible_w(),
            height: None,
            k_cap: None,
            seed: None,
        }
    }
}

impl ConfigDocument {
    pub fn configuration(&self, height: u64) -> expfield::Result<Configuration> {
        let n = self.names.len();
        let xr = Ring::indexed("x", n);
        let yr = Ring::indexed("y", n);
        let mut kernel = vec![false; n];
        for &i in &self.kernel {
            kernel[i] = true;
        }
        Configuration::new(
            self.names.clone(),
            Ideal::new(&xr, self.x.clone()),
            Ideal::new(&yr, self.y.clone()),
            IntMatrix::from_big_rows(n, &self.relations),
            kernel,
            height,
        )
    }

    pub fn from_configuration(c: &Configuration) -> ConfigDocument {
        ConfigDocument {
            names: c.names().to_vec(),
            x: c.locus_x().gens().to_vec(),
            y: c.locus_y().gens().to_vec(),
            relations: c.lin_rels().to_rows(),
            kernel: c.kernel().iter().enumerate().filter(|(_, &k)| k).map(|(i, _)| i).collect(),
            height: Some(c.height()),
        }
    }
}

/// Parses a subset of an `n`-generator configuration: `x1,x3` (or `1,3`),
/// integer rows `[1,-1,0];[0,0,1]`, or an empty string for `∅`.
pub fn parse_subset(text: &str, n: usize) -> Result<SubsetSpec, String> {
    let t = text.trim();
    if t.is_empty() || t == "{}" {
        return Ok(SubsetSpec::empty());
    }
    if t.starts_with('[') {
        let mut rows = Vec::new();
        for part in t.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let inner = part
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| format!("row '{part}' is not of the form [a, b, …]"))?;
            let row: Vec<BigInt> = inner
                .split(',')
                .map(|x| x.trim().parse::<BigInt>().map_err(|_| format!("'{}' is not an integer", x.trim())))
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(format!("row '{part}' has {} entries but there are {n} generators", row.len()));
            }
            rows.push(row);
        }
        return Ok(SubsetSpec::Rows(IntMatrix::from_big_rows(n, &rows)));
    }
    let mut idx = Vec::new();
    for part in t.split(',').map(str::trim) {
        let digits = part.strip_prefix('x').unwrap_or(part);
        let i: usize = digits.parse().map_err(|_| format!("'{part}' is not a generator x<k>"))?;
        if i == 0 || i > n {
            return Err(format!("generator '{part}' is out of range for {n} generators"));
        }
        if !idx.contains(&(i - 1)) {
            idx.push(i - 1);
        }
    }
    Ok(SubsetSpec::Indices(idx))
}
