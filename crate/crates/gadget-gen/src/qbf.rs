//! Quantified boolean formulas in prenex CNF.

use std::collections::HashSet;
use std::fmt;

use crate::GadgetError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    /// Index into the quantifier prefix.
    pub var: usize,
    pub negated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub prefix: Vec<(Quantifier, String)>,
    pub clauses: Vec<Vec<Literal>>,
}

impl Formula {
    pub fn var_count(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_universal(&self, var: usize) -> bool {
        self.prefix[var].0 == Quantifier::Forall
    }

    fn universals(&self, clause: &[Literal]) -> usize {
        clause.iter().filter(|l| self.is_universal(l.var)).count()
    }

    /// Exhaustive evaluation of the quantifier tree.
    pub fn evaluate(&self) -> bool {
        let mut assignment = vec![false; self.prefix.len()];
        self.eval_from(0, &mut assignment)
    }

    fn eval_from(&self, i: usize, assignment: &mut Vec<bool>) -> bool {
        if i == self.prefix.len() {
            return self
                .clauses
                .iter()
                .all(|c| c.iter().any(|l| assignment[l.var] != l.negated));
        }
        let branch = |v: bool, assignment: &mut Vec<bool>| {
            assignment[i] = v;
            self.eval_from(i + 1, assignment)
        };
        match self.prefix[i].0 {
            Quantifier::Exists => branch(false, assignment) || branch(true, assignment),
            Quantifier::Forall => branch(false, assignment) && branch(true, assignment),
        }
    }

    /// Alternating prefix `∃∀∃∀…` of even length, each clause with exactly one
    /// universal literal and at most four literals in total.
    pub fn is_normalized(&self) -> bool {
        self.prefix.len().is_multiple_of(2)
            && alternates(&self.prefix)
            && self.clauses.iter().all(|c| c.len() <= 4 && self.universals(c) == 1)
    }

    pub fn parse(text: &str) -> Result<Formula, GadgetError> {
        parse(text)
    }
}

fn alternates(prefix: &[(Quantifier, String)]) -> bool {
    prefix.iter().enumerate().all(|(i, (q, _))| {
        *q == if i % 2 == 0 { Quantifier::Exists } else { Quantifier::Forall }
    })
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, name) in &self.prefix {
            let q = match q {
                Quantifier::Exists => "E",
                Quantifier::Forall => "A",
            };
            write!(f, "{q} {name} ")?;
        }
        write!(f, ":")?;
        for (j, clause) in self.clauses.iter().enumerate() {
            write!(f, "{}(", if j == 0 { " " } else { " & " })?;
            for (k, l) in clause.iter().enumerate() {
                if k > 0 {
                    write!(f, " | ")?;
                }
                write!(f, "{}{}", if l.negated { "~" } else { "" }, self.prefix[l.var].1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        let single = match ch {
            '∃' => Some("E"),
            '∀' => Some("A"),
            '¬' | '~' | '!' => Some("~"),
            '∧' | '&' => Some("&"),
            '∨' | '|' => Some("|"),
            '(' => Some("("),
            ')' => Some(")"),
            ':' | '.' => Some(":"),
            _ => None,
        };
        if single.is_some() || ch.is_whitespace() || ch == ',' {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            if let Some(s) = single {
                out.push(s.to_string());
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Accepts `E x1 A x2 : (x1 | x2) & (x1 | ~x2)` as well as `∃`/`∀`/`¬`/`∧`/`∨`
/// and the words `exists`/`forall`.
fn parse(text: &str) -> Result<Formula, GadgetError> {
    let bad = |msg: String| GadgetError::FormulaSyntax(msg);
    let toks = tokenize(text);
    let mut i = 0;
    let mut prefix: Vec<(Quantifier, String)> = Vec::new();
    while i < toks.len() && toks[i] != ":" {
        let q = match toks[i].as_str() {
            "E" | "exists" => Quantifier::Exists,
            "A" | "forall" => Quantifier::Forall,
            other => return Err(bad(format!("expected quantifier, found `{other}`"))),
        };
        let name = toks.get(i + 1).ok_or_else(|| bad("quantifier without variable".into()))?;
        if !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
            return Err(bad(format!("invalid variable name `{name}`")));
        }
        if prefix.iter().any(|(_, n)| n == name) {
            return Err(bad(format!("variable `{name}` quantified twice")));
        }
        prefix.push((q, name.clone()));
        i += 2;
    }
    if i == toks.len() {
        return Err(bad("missing `:` between prefix and matrix".into()));
    }
    i += 1;
    let lookup = |name: &str| {
        prefix
            .iter()
            .position(|(_, n)| n == name)
            .ok_or_else(|| bad(format!("unbound variable `{name}`")))
    };
    let mut clauses = Vec::new();
    while i < toks.len() {
        if toks[i] == "&" {
            i += 1;
            continue;
        }
        let paren = toks[i] == "(";
        if paren {
            i += 1;
        }
        let mut clause = Vec::new();
        loop {
            let tok = toks.get(i).ok_or_else(|| bad("unterminated clause".into()))?;
            match tok.as_str() {
                "|" => i += 1,
                ")" if paren => {
                    i += 1;
                    break;
                }
                "&" if !paren => break,
                "~" => {
                    let name = toks.get(i + 1).ok_or_else(|| bad("dangling negation".into()))?;
                    clause.push(Literal { var: lookup(name)?, negated: true });
                    i += 2;
                }
                "(" | ")" | ":" | "&" => return Err(bad(format!("unexpected `{tok}`"))),
                name => {
                    clause.push(Literal { var: lookup(name)?, negated: false });
                    i += 1;
                }
            }
            if !paren && i == toks.len() {
                break;
            }
        }
        if clause.is_empty() {
            return Err(bad("empty clause".into()));
        }
        clauses.push(clause);
    }
    Ok(Formula { prefix, clauses })
}

fn fresh_name(taken: &mut HashSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    name
}

/// Rewrites a formula with at most three literals and at most one universal
/// literal per clause into one with exactly one universal literal per clause.
///
/// Each all-existential clause `C` gets a fresh pair `∃e ∀u` appended to the
/// prefix and is replaced by `C ∨ u` and `C ∨ ¬u`. An odd-length prefix is
/// first closed with an unused universal so the appended pairs keep the
/// alternation.
pub fn qsat_normalize(f: &Formula) -> Result<Formula, GadgetError> {
    if !alternates(&f.prefix) {
        return Err(GadgetError::NotAlternating);
    }
    for c in &f.clauses {
        if f.universals(c) > 1 {
            return Err(GadgetError::TwoUniversals);
        }
        if c.len() > 3 {
            return Err(GadgetError::ClauseTooLong(c.len()));
        }
    }
    let mut out = f.clone();
    let mut taken: HashSet<String> = f.prefix.iter().map(|(_, n)| n.clone()).collect();
    if out.prefix.len() % 2 == 1 {
        let name = fresh_name(&mut taken, "u0".into());
        out.prefix.push((Quantifier::Forall, name));
    }
    out.clauses.clear();
    let mut g = 0;
    for c in &f.clauses {
        if f.universals(c) == 1 {
            out.clauses.push(c.clone());
            continue;
        }
        g += 1;
        let e = fresh_name(&mut taken, format!("e{g}"));
        let u = fresh_name(&mut taken, format!("u{g}"));
        out.prefix.push((Quantifier::Exists, e));
        out.prefix.push((Quantifier::Forall, u));
        let var = out.prefix.len() - 1;
        for negated in [false, true] {
            let mut c2 = c.clone();
            c2.push(Literal { var, negated });
            out.clauses.push(c2);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let f = Formula::parse("∃x1 ∀x2: (x1 ∨ x2) ∧ (x1 ∨ ¬x2)").unwrap();
        assert_eq!(f.to_string(), "E x1 A x2 : (x1 | x2) & (x1 | ~x2)");
        assert_eq!(Formula::parse(&f.to_string()).unwrap(), f);
        assert!(f.evaluate());
        assert!(f.is_normalized());
    }

    #[test]
    fn parse_errors() {
        assert!(Formula::parse("E x : (y)").is_err());
        assert!(Formula::parse("E x (x)").is_err());
        assert!(Formula::parse("E x : ()").is_err());
        assert!(Formula::parse("Q x : (x)").is_err());
    }

    #[test]
    fn normalizes_existential_clause() {
        let f = Formula::parse("E x1 A x2 E x3 A x4 : (x1 | x3) & (x2 | x3)").unwrap();
        let g = qsat_normalize(&f).unwrap();
        assert_eq!(
            g.to_string(),
            "E x1 A x2 E x3 A x4 E e1 A u1 : (x1 | x3 | u1) & (x1 | x3 | ~u1) & (x2 | x3)"
        );
        assert!(g.is_normalized());
        assert_eq!(f.evaluate(), g.evaluate());
    }

    #[test]
    fn rejects_two_universals() {
        let f = Formula::parse("E x1 A x2 E x3 A x4 : (x2 | x4)").unwrap();
        assert_eq!(qsat_normalize(&f).unwrap_err().to_string(), "clause with two universal literals");
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let f = Formula::parse("E e1 A u1 : (e1)").unwrap();
        let g = qsat_normalize(&f).unwrap();
        let names: Vec<&str> = g.prefix.iter().map(|(_, n)| n.as_str()).collect();
        assert_eq!(names, ["e1", "u1", "e1'", "u1'"]);
    }
}
