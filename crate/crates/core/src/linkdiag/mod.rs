//! Oriented classical and virtual link diagrams described by arcs and
//! classical crossings.
//!
//! Virtual crossings are not represented: they cut no arcs and carry no
//! relations, so a diagram is determined here by its classical crossing
//! data together with the order in which each component passes under.
//!
//! At a crossing `c` the under-arcs are labelled so that `b1(c)` lies on
//! the right of the oriented over-arc `a(c)`. The sign decides which way
//! the under-strand runs: for sign `-` it enters on `b1` and leaves on
//! `b2`, for sign `+` it enters on `b2` and leaves on `b1`.

pub mod catalog;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid diagram: {0}")]
    Validation(String),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("unknown arc '{0}'")]
    UnknownArc(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// Whether the diagram is known to present a classical link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LinkKind {
    Classical,
    Virtual,
    Unspecified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub id: String,
    /// Component index, starting at 1.
    pub component: usize,
}

/// A classical crossing; arc references are indices into [`Diagram::arcs`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub id: String,
    pub over: usize,
    pub b1: usize,
    pub b2: usize,
    pub sign: Sign,
}

impl Crossing {
    /// Under-arc on which the under-strand arrives.
    pub fn incoming(&self) -> usize {
        match self.sign {
            Sign::Negative => self.b1,
            Sign::Positive => self.b2,
        }
    }

    /// Under-arc on which the under-strand leaves.
    pub fn outgoing(&self) -> usize {
        match self.sign {
            Sign::Negative => self.b2,
            Sign::Positive => self.b1,
        }
    }
}

/// One passage of a component under a crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Underpass {
    pub crossing: usize,
    pub sign: Sign,
    pub over: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    name: String,
    mu: usize,
    kind: LinkKind,
    arcs: Vec<Arc>,
    crossings: Vec<Crossing>,
    under_order: Vec<Vec<usize>>,
    base_arc: Vec<usize>,
}

impl Diagram {
    /// Assembles and validates a diagram. `under_order[i]` lists crossing
    /// indices where component `i+1` passes under, in traversal order.
    pub fn new(
        name: impl Into<String>,
        mu: usize,
        kind: LinkKind,
        arcs: Vec<Arc>,
        crossings: Vec<Crossing>,
        under_order: Vec<Vec<usize>>,
        base_arc: Vec<usize>,
    ) -> Result<Self, DiagramError> {
        let d = Diagram {
            name: name.into(),
            mu,
            kind,
            arcs,
            crossings,
            under_order,
            base_arc,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn kind(&self) -> LinkKind {
        self.kind
    }

    pub fn is_classical(&self) -> bool {
        self.kind == LinkKind::Classical
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn under_order(&self, component: usize) -> Result<&[usize], DiagramError> {
        self.check_component(component)?;
        Ok(&self.under_order[component - 1])
    }

    pub fn base_arc(&self, component: usize) -> Result<usize, DiagramError> {
        self.check_component(component)?;
        Ok(self.base_arc[component - 1])
    }

    /// Component of an arc (1-based).
    pub fn kappa(&self, arc: usize) -> usize {
        self.arcs[arc].component
    }

    pub fn arc_index(&self, id: &str) -> Result<usize, DiagramError> {
        self.arcs
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| DiagramError::UnknownArc(id.to_string()))
    }

    pub fn arcs_of(&self, component: usize) -> Vec<usize> {
        (0..self.arcs.len())
            .filter(|&a| self.arcs[a].component == component)
            .collect()
    }

    fn check_component(&self, component: usize) -> Result<(), DiagramError> {
        if component == 0 || component > self.mu {
            Err(DiagramError::UnknownComponent(component))
        } else {
            Ok(())
        }
    }

    /// The underpasses of a component in traversal order, starting at the
    /// crossing where the base arc ends.
    pub fn underpass_signs(&self, component: usize) -> Result<Vec<Underpass>, DiagramError> {
        let order = self.under_order(component)?;
        let base = self.base_arc[component - 1];
        let start = order
            .iter()
            .position(|&c| self.crossings[c].incoming() == base)
            .unwrap_or(0);
        Ok(order[start..]
            .iter()
            .chain(&order[..start])
            .map(|&c| {
                let x = &self.crossings[c];
                Underpass {
                    crossing: c,
                    sign: x.sign,
                    over: x.over,
                }
            })
            .collect())
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let invalid = |m: String| Err(DiagramError::Validation(m));
        if self.mu == 0 {
            return invalid("a link needs at least one component".into());
        }
        let mut ids = HashSet::new();
        for a in &self.arcs {
            if !ids.insert(a.id.as_str()) {
                return invalid(format!("duplicate arc id '{}'", a.id));
            }
            if a.component == 0 || a.component > self.mu {
                return invalid(format!("arc '{}' on component {} outside 1..{}", a.id, a.component, self.mu));
            }
        }
        for i in 1..=self.mu {
            if !self.arcs.iter().any(|a| a.component == i) {
                return invalid(format!("component {i} has no arcs"));
            }
        }
        let mut cids = HashSet::new();
        for c in &self.crossings {
            if !cids.insert(c.id.as_str()) {
                return invalid(format!("duplicate crossing id '{}'", c.id));
            }
            for a in [c.over, c.b1, c.b2] {
                if a >= self.arcs.len() {
                    return invalid(format!("crossing '{}' references a missing arc", c.id));
                }
            }
            if self.kappa(c.b1) != self.kappa(c.b2) {
                return invalid(format!("crossing '{}': b1,b2 on different components", c.id));
            }
        }
        if self.under_order.len() != self.mu {
            return invalid(format!("expected {} order lists, found {}", self.mu, self.under_order.len()));
        }
        if self.base_arc.len() != self.mu {
            return invalid(format!("expected {} base arcs, found {}", self.mu, self.base_arc.len()));
        }
        let mut seen = vec![false; self.crossings.len()];
        for (i, order) in self.under_order.iter().enumerate() {
            let comp = i + 1;
            for &c in order {
                if c >= self.crossings.len() {
                    return invalid(format!("order for component {comp} references a missing crossing"));
                }
                if seen[c] {
                    return invalid(format!("crossing '{}' listed twice in order lines", self.crossings[c].id));
                }
                seen[c] = true;
                if self.kappa(self.crossings[c].b1) != comp {
                    return invalid(format!(
                        "crossing '{}' listed for component {comp} but its under-arcs lie on component {}",
                        self.crossings[c].id,
                        self.kappa(self.crossings[c].b1)
                    ));
                }
            }
            let arcs = self.arcs_of(comp);
            if order.is_empty() {
                if arcs.len() != 1 {
                    return invalid(format!("arc cycle broken for component {comp}: no underpasses but {} arcs", arcs.len()));
                }
            } else {
                let k = order.len();
                let mut visited = HashSet::new();
                for j in 0..k {
                    let here = &self.crossings[order[j]];
                    let next = &self.crossings[order[(j + 1) % k]];
                    if here.outgoing() != next.incoming() {
                        return invalid(format!("arc cycle broken for component {comp}"));
                    }
                    visited.insert(here.incoming());
                }
                if visited.len() != k || visited.len() != arcs.len() {
                    return invalid(format!("arc cycle broken for component {comp}"));
                }
            }
            let base = self.base_arc[i];
            if base >= self.arcs.len() || self.kappa(base) != comp {
                return invalid(format!("base arc of component {comp} is not on that component"));
            }
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return invalid(format!("crossing '{}' missing from order lines", self.crossings[c].id));
        }
        Ok(())
    }

    /// Parses the line format (`link`, `components`, `arc`, `crossing`,
    /// `order`, `base`, and the optional `kind classical|virtual`).
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        parse_diagram(text)
    }

    /// Serializes back into the line format accepted by [`Diagram::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("link {}\n", self.name));
        s.push_str(&format!("components {}\n", self.mu));
        match self.kind {
            LinkKind::Classical => s.push_str("kind classical\n"),
            LinkKind::Virtual => s.push_str("kind virtual\n"),
            LinkKind::Unspecified => {}
        }
        for a in &self.arcs {
            s.push_str(&format!("arc {} {}\n", a.id, a.component));
        }
        for c in &self.crossings {
            s.push_str(&format!(
                "crossing {} over={} b1={} b2={} sign={}\n",
                c.id,
                self.arcs[c.over].id,
                self.arcs[c.b1].id,
                self.arcs[c.b2].id,
                c.sign.symbol()
            ));
        }
        for (i, order) in self.under_order.iter().enumerate() {
            if !order.is_empty() {
                let ids: Vec<&str> = order.iter().map(|&c| self.crossings[c].id.as_str()).collect();
                s.push_str(&format!("order {} {}\n", i + 1, ids.join(" ")));
            }
        }
        for (i, &b) in self.base_arc.iter().enumerate() {
            s.push_str(&format!("base {} {}\n", i + 1, self.arcs[b].id));
        }
        s
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

struct RawCrossing {
    id: String,
    over: String,
    b1: String,
    b2: String,
    sign: Sign,
    line: usize,
}

fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    let mut name = String::from("unnamed");
    let mut mu: Option<usize> = None;
    let mut kind = LinkKind::Unspecified;
    let mut arcs: Vec<Arc> = Vec::new();
    let mut raw_crossings: Vec<RawCrossing> = Vec::new();
    let mut orders: HashMap<usize, (Vec<String>, usize)> = HashMap::new();
    let mut bases: HashMap<usize, (String, usize)> = HashMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokenize(content);
        if toks.is_empty() {
            continue;
        }
        let syntax = |column: usize, message: String| DiagramError::Syntax {
            line: line_no,
            column,
            message,
        };
        let need = |n: usize| -> Result<(), DiagramError> {
            if toks.len() < n {
                Err(syntax(
                    content.trim_end().chars().count() + 1,
                    format!("'{}' expects {} argument(s)", toks[0].text, n - 1),
                ))
            } else {
                Ok(())
            }
        };
        let exact = |n: usize| -> Result<(), DiagramError> {
            need(n)?;
            if toks.len() > n {
                Err(syntax(toks[n].column, format!("unexpected token '{}'", toks[n].text)))
            } else {
                Ok(())
            }
        };
        let number = |t: &Token| -> Result<usize, DiagramError> {
            t.text
                .parse::<usize>()
                .map_err(|_| syntax(t.column, format!("expected a number, found '{}'", t.text)))
        };
        match toks[0].text {
            "link" => {
                exact(2)?;
                name = toks[1].text.to_string();
            }
            "components" => {
                exact(2)?;
                mu = Some(number(&toks[1])?);
            }
            "kind" => {
                exact(2)?;
                kind = match toks[1].text {
                    "classical" => LinkKind::Classical,
                    "virtual" => LinkKind::Virtual,
                    other => return Err(syntax(toks[1].column, format!("unknown kind '{other}'"))),
                };
            }
            "arc" => {
                exact(3)?;
                arcs.push(Arc {
                    id: toks[1].text.to_string(),
                    component: number(&toks[2])?,
                });
            }
            "crossing" => {
                exact(6)?;
                let mut fields: HashMap<&str, (&str, usize)> = HashMap::new();
                for t in &toks[2..] {
                    let (k, v) = t
                        .text
                        .split_once('=')
                        .ok_or_else(|| syntax(t.column, format!("expected key=value, found '{}'", t.text)))?;
                    if fields.insert(k, (v, t.column)).is_some() {
                        return Err(syntax(t.column, format!("repeated field '{k}'")));
                    }
                }
                let get = |k: &str| -> Result<(&str, usize), DiagramError> {
                    fields
                        .get(k)
                        .copied()
                        .ok_or_else(|| syntax(toks[1].column, format!("crossing missing field '{k}'")))
                };
                let (sign_text, sign_col) = get("sign")?;
                let sign = match sign_text {
                    "+" | "+1" => Sign::Positive,
                    "-" | "-1" => Sign::Negative,
                    other => return Err(syntax(sign_col, format!("sign must be + or -, found '{other}'"))),
                };
                raw_crossings.push(RawCrossing {
                    id: toks[1].text.to_string(),
                    over: get("over")?.0.to_string(),
                    b1: get("b1")?.0.to_string(),
                    b2: get("b2")?.0.to_string(),
                    sign,
                    line: line_no,
                });
            }
            "order" => {
                need(2)?;
                let comp = number(&toks[1])?;
                if orders.contains_key(&comp) {
                    return Err(syntax(toks[1].column, format!("second order line for component {comp}")));
                }
                orders.insert(comp, (toks[2..].iter().map(|t| t.text.to_string()).collect(), line_no));
            }
            "base" => {
                exact(3)?;
                let comp = number(&toks[1])?;
                bases.insert(comp, (toks[2].text.to_string(), line_no));
            }
            other => {
                return Err(syntax(toks[0].column, format!("unknown directive '{other}'")));
            }
        }
    }

    let mu = mu.ok_or_else(|| DiagramError::Validation("missing 'components' line".into()))?;
    let arc_index: HashMap<&str, usize> = arcs.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
    let lookup_arc = |id: &str, line: usize| -> Result<usize, DiagramError> {
        arc_index.get(id).copied().ok_or_else(|| DiagramError::Syntax {
            line,
            column: 1,
            message: format!("unknown arc '{id}'"),
        })
    };
    let mut crossings = Vec::with_capacity(raw_crossings.len());
    for rc in &raw_crossings {
        crossings.push(Crossing {
            id: rc.id.clone(),
            over: lookup_arc(&rc.over, rc.line)?,
            b1: lookup_arc(&rc.b1, rc.line)?,
            b2: lookup_arc(&rc.b2, rc.line)?,
            sign: rc.sign,
        });
    }
    let crossing_index: HashMap<&str, usize> = crossings.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
    for &comp in orders.keys().chain(bases.keys()) {
        if comp == 0 || comp > mu {
            return Err(DiagramError::Validation(format!("component {comp} outside 1..{mu}")));
        }
    }
    let mut under_order = vec![Vec::new(); mu];
    for (comp, (ids, line)) in &orders {
        for id in ids {
            let c = crossing_index.get(id.as_str()).copied().ok_or_else(|| DiagramError::Syntax {
                line: *line,
                column: 1,
                message: format!("unknown crossing '{id}'"),
            })?;
            under_order[comp - 1].push(c);
        }
    }
    let mut base_arc = Vec::with_capacity(mu);
    for comp in 1..=mu {
        match bases.get(&comp) {
            Some((id, line)) => base_arc.push(lookup_arc(id, *line)?),
            None => {
                // default: the arc where the first listed underpass starts, else any arc
                let default = under_order[comp - 1]
                    .first()
                    .map(|&c| crossings[c].incoming())
                    .or_else(|| arcs.iter().position(|a| a.component == comp))
                    .ok_or_else(|| DiagramError::Validation(format!("component {comp} has no arcs")))?;
                base_arc.push(default);
            }
        }
    }
    Diagram::new(name, mu, kind, arcs, crossings, under_order, base_arc)
}
