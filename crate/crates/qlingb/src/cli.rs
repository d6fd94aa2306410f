//! Plain-text problem files and the command front end.
//!
//! A problem file is line-based: `#` starts a comment, blank lines are
//! ignored. The first meaningful line declares the field, the second the
//! monomial order, and every following line binds a name:
//!
//! ```text
//! field p=2 s=1 m=2 mod=z^2+z+1
//! order weights=0,0 tie=first
//! g1 = [ (1)*X^[1] ; (1)*X^[0] ]
//! h = (z)*X^[1]
//! ```
//!
//! `mod=` may be omitted; the least monic irreducible of the right degree is
//! used. `tie=first` makes the lower position index greater on ties. The
//! tokens `field` and `order` are reserved and cannot be used as names.
//!
//! Subcommands: `gb <file> <name>...`, `reduce <file> <f> mod <name>...`,
//! `member <file> <f> in <name>...`, `compose <file> <h> <f>`,
//! `eval <file> <f> <alpha>`, `oracle <file> <name>... --degree-bound D`.
//! `--weights` and `--tie` override the file's order line.
//!
//! Exit codes: 0 success, 1 usage/parse error, 2 semantic error,
//! 3 verification failure.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ff::{parse_poly_in_z, poly_in_z_string, Field};
use crate::groebner::{membership, minimal_groebner_basis, reduce_full};
use crate::linpoly::LinearizedPoly;
use crate::modvec::{ModuleVector, TieBreak, TopOrder};
use crate::oracle::verify_groebner;

/// A named object in a problem file.
#[derive(Clone, Debug)]
pub enum Binding {
    Poly(LinearizedPoly),
    Vector(ModuleVector),
}

/// A parsed problem file: field, order, and named objects in file order.
#[derive(Clone, Debug)]
pub struct Problem {
    pub field: Field,
    pub order: TopOrder,
    pub bindings: Vec<(String, Binding)>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn tokens_with_offsets(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut off = 0usize;
    for tok in line.split_whitespace() {
        let idx = line[off..].find(tok).unwrap() + off;
        out.push((idx, tok));
        off = idx + tok.len();
    }
    out
}

impl Problem {
    /// Parse a whole problem file.
    pub fn parse(text: &str) -> Result<Problem> {
        let mut field: Option<Field> = None;
        let mut order: Option<TopOrder> = None;
        let mut bindings: Vec<(String, Binding)> = Vec::new();
        let mut last_line = 0usize;

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            last_line = lineno;
            let content = match raw.find('#') {
                Some(h) => &raw[..h],
                None => raw,
            };
            if content.trim().is_empty() {
                continue;
            }
            let first = content.split_whitespace().next().unwrap();
            if first == "field" {
                if field.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        col: 1,
                        msg: "duplicate field line".into(),
                    });
                }
                if order.is_some() || !bindings.is_empty() {
                    return Err(Error::Parse {
                        line: lineno,
                        col: 1,
                        msg: "field line must come first".into(),
                    });
                }
                field = Some(parse_field_line(content, lineno)?);
            } else if first == "order" {
                if field.is_none() {
                    return Err(Error::Parse {
                        line: lineno,
                        col: 1,
                        msg: "order line before field line".into(),
                    });
                }
                if order.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        col: 1,
                        msg: "duplicate order line".into(),
                    });
                }
                order = Some(parse_order_line(content, lineno)?);
            } else {
                let (Some(f), Some(o)) = (&field, &order) else {
                    return Err(Error::Parse {
                        line: lineno,
                        col: 1,
                        msg: "bindings must follow the field and order lines".into(),
                    });
                };
                let Some(eq) = content.find('=') else {
                    return Err(Error::Parse {
                        line: lineno,
                        col: 1,
                        msg: "expected `<name> = <value>`".into(),
                    });
                };
                let name = content[..eq].trim();
                if !valid_name(name) {
                    return Err(Error::Parse {
                        line: lineno,
                        col: 1,
                        msg: format!("invalid name `{name}`"),
                    });
                }
                if bindings.iter().any(|(n, _)| n == name) {
                    return Err(Error::Semantic {
                        name: name.to_string(),
                        msg: "duplicate binding".into(),
                    });
                }
                let value = &content[eq + 1..];
                let col0 = eq + 2;
                let binding = if value.trim_start().starts_with('[') {
                    let v = crate::modvec::parse_at(f, value, lineno, col0)?;
                    if v.l() != o.l() {
                        return Err(Error::Semantic {
                            name: name.to_string(),
                            msg: format!(
                                "vector has {} entries but the order declares {}",
                                v.l(),
                                o.l()
                            ),
                        });
                    }
                    Binding::Vector(v)
                } else {
                    Binding::Poly(crate::linpoly::parse_at(f, value, lineno, col0)?)
                };
                bindings.push((name.to_string(), binding));
            }
        }

        let field = field.ok_or(Error::Parse {
            line: last_line + 1,
            col: 1,
            msg: "missing field line".into(),
        })?;
        let order = order.ok_or(Error::Parse {
            line: last_line + 1,
            col: 1,
            msg: "missing order line".into(),
        })?;
        Ok(Problem {
            field,
            order,
            bindings,
        })
    }

    /// Canonical text: parse–print–parse is the identity.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "field p={} s={} m={} mod={}",
            self.field.p(),
            self.field.s(),
            self.field.m(),
            poly_in_z_string(self.field.modulus(), self.field.p())
        )
        .unwrap();
        let weights: Vec<String> = self.order.weights().iter().map(|w| w.to_string()).collect();
        writeln!(
            out,
            "order weights={} tie={}",
            weights.join(","),
            self.order.tiebreak().as_str()
        )
        .unwrap();
        for (name, binding) in &self.bindings {
            match binding {
                Binding::Poly(p) => writeln!(out, "{name} = {p}").unwrap(),
                Binding::Vector(v) => writeln!(out, "{name} = {v}").unwrap(),
            }
        }
        out
    }

    fn get(&self, name: &str) -> Result<&Binding> {
        self.bindings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, b)| b)
            .ok_or_else(|| Error::Semantic {
                name: name.to_string(),
                msg: "unknown name".into(),
            })
    }

    pub fn vector(&self, name: &str) -> Result<&ModuleVector> {
        match self.get(name)? {
            Binding::Vector(v) => Ok(v),
            Binding::Poly(_) => Err(Error::Semantic {
                name: name.to_string(),
                msg: "expected a vector, found a polynomial".into(),
            }),
        }
    }

    pub fn poly(&self, name: &str) -> Result<&LinearizedPoly> {
        match self.get(name)? {
            Binding::Poly(p) => Ok(p),
            Binding::Vector(_) => Err(Error::Semantic {
                name: name.to_string(),
                msg: "expected a polynomial, found a vector".into(),
            }),
        }
    }
}

fn parse_field_line(line: &str, lineno: usize) -> Result<Field> {
    let mut p: Option<u64> = None;
    let mut s: Option<usize> = None;
    let mut m: Option<usize> = None;
    let mut modulus: Option<Vec<u64>> = None;
    for (off, tok) in tokens_with_offsets(line).into_iter().skip(1) {
        let col = off + 1;
        let Some((key, value)) = tok.split_once('=') else {
            return Err(Error::Parse {
                line: lineno,
                col,
                msg: format!("expected `key=value`, found `{tok}`"),
            });
        };
        let int = |v: &str| -> Result<u64> {
            v.parse().map_err(|_| Error::Parse {
                line: lineno,
                col,
                msg: format!("invalid integer `{v}`"),
            })
        };
        match key {
            "p" => p = Some(int(value)?),
            "s" => s = Some(int(value)? as usize),
            "m" => m = Some(int(value)? as usize),
            "mod" => modulus = Some(parse_poly_in_z(value, lineno, col + 4)?),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    col,
                    msg: format!("unknown field key `{key}`"),
                })
            }
        }
    }
    let missing = |what: &str| Error::Parse {
        line: lineno,
        col: 1,
        msg: format!("field line is missing `{what}=`"),
    };
    Field::new(
        p.ok_or_else(|| missing("p"))?,
        s.ok_or_else(|| missing("s"))?,
        m.ok_or_else(|| missing("m"))?,
        modulus,
    )
}

fn parse_order_line(line: &str, lineno: usize) -> Result<TopOrder> {
    let mut weights: Option<Vec<u64>> = None;
    let mut tie: Option<TieBreak> = None;
    for (off, tok) in tokens_with_offsets(line).into_iter().skip(1) {
        let col = off + 1;
        let Some((key, value)) = tok.split_once('=') else {
            return Err(Error::Parse {
                line: lineno,
                col,
                msg: format!("expected `key=value`, found `{tok}`"),
            });
        };
        match key {
            "weights" => weights = Some(parse_weights(value, lineno, col)?),
            "tie" => tie = Some(parse_tie(value, lineno, col)?),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    col,
                    msg: format!("unknown order key `{key}`"),
                })
            }
        }
    }
    let missing = |what: &str| Error::Parse {
        line: lineno,
        col: 1,
        msg: format!("order line is missing `{what}=`"),
    };
    TopOrder::new(
        weights.ok_or_else(|| missing("weights"))?,
        tie.ok_or_else(|| missing("tie"))?,
    )
}

fn parse_weights(value: &str, line: usize, col: usize) -> Result<Vec<u64>> {
    value
        .split(',')
        .map(|w| {
            w.trim().parse().map_err(|_| Error::Parse {
                line,
                col,
                msg: format!("invalid weight `{w}`"),
            })
        })
        .collect()
}

fn parse_tie(value: &str, line: usize, col: usize) -> Result<TieBreak> {
    match value {
        "first" => Ok(TieBreak::First),
        "last" => Ok(TieBreak::Last),
        other => Err(Error::Parse {
            line,
            col,
            msg: format!("tie must be `first` or `last`, found `{other}`"),
        }),
    }
}

// ---------------------------------------------------------------------------
// Command dispatch
// ---------------------------------------------------------------------------

/// Successful command output plus the process exit code (0, or 3 when the
/// oracle's verification fails).
#[derive(Debug)]
pub struct CmdOutput {
    pub stdout: String,
    pub code: i32,
}

/// A failed command: message for stderr plus the exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 1,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: &str) -> CliError {
    CliError {
        code: 1,
        message: format!(
            "{msg}\nusage: qlingb <gb|reduce|member|compose|eval|oracle> <file> ... \
             [--weights w1,w2,...] [--tie first|last] [--degree-bound D]"
        ),
    }
}

struct ParsedArgs {
    positionals: Vec<String>,
    weights: Option<Vec<u64>>,
    tie: Option<TieBreak>,
    degree_bound: Option<usize>,
}

fn split_flags(args: &[String]) -> std::result::Result<ParsedArgs, CliError> {
    let mut out = ParsedArgs {
        positionals: Vec::new(),
        weights: None,
        tie: None,
        degree_bound: None,
    };
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        if let Some(flag) = arg.strip_prefix("--") {
            let (key, value) = match flag.split_once('=') {
                Some((k, v)) => (k, v.to_string()),
                None => {
                    i += 1;
                    let v = args
                        .get(i)
                        .ok_or_else(|| usage(&format!("flag --{flag} needs a value")))?;
                    (flag, v.clone())
                }
            };
            match key {
                "weights" => {
                    out.weights = Some(
                        parse_weights(&value, 0, 0)
                            .map_err(|_| usage(&format!("invalid --weights value `{value}`")))?,
                    )
                }
                "tie" => {
                    out.tie = Some(
                        parse_tie(&value, 0, 0)
                            .map_err(|_| usage(&format!("invalid --tie value `{value}`")))?,
                    )
                }
                "degree-bound" => {
                    out.degree_bound =
                        Some(value.parse().map_err(|_| {
                            usage(&format!("invalid --degree-bound value `{value}`"))
                        })?)
                }
                other => return Err(usage(&format!("unknown flag --{other}"))),
            }
        } else {
            out.positionals.push(arg.clone());
        }
        i += 1;
    }
    Ok(out)
}

fn load_problem(
    path: &str,
    weights: Option<Vec<u64>>,
    tie: Option<TieBreak>,
) -> std::result::Result<Problem, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(&format!("cannot read `{path}`: {e}")))?;
    let mut problem = Problem::parse(&text)?;
    if weights.is_some() || tie.is_some() {
        let w = weights.unwrap_or_else(|| problem.order.weights().to_vec());
        let t = tie.unwrap_or_else(|| problem.order.tiebreak());
        let order = TopOrder::new(w, t).map_err(CliError::from)?;
        for (name, binding) in &problem.bindings {
            if let Binding::Vector(v) = binding {
                if v.l() != order.l() {
                    return Err(Error::Semantic {
                        name: name.clone(),
                        msg: format!(
                            "vector has {} entries but the overridden order declares {}",
                            v.l(),
                            order.l()
                        ),
                    }
                    .into());
                }
            }
        }
        problem.order = order;
    }
    Ok(problem)
}

fn resolve_vectors(problem: &Problem, names: &[String]) -> Result<Vec<ModuleVector>> {
    names.iter().map(|n| problem.vector(n).cloned()).collect()
}

/// Run one subcommand; `args` excludes the program name.
pub fn run(args: &[String]) -> std::result::Result<CmdOutput, CliError> {
    let Some((cmd, rest)) = args.split_first() else {
        return Err(usage("missing subcommand"));
    };
    let parsed = split_flags(rest)?;
    let pos = &parsed.positionals;
    let need = |n: usize, what: &str| {
        if pos.len() < n {
            Err(usage(&format!("{cmd}: expected {what}")))
        } else {
            Ok(())
        }
    };

    match cmd.as_str() {
        "gb" => {
            need(2, "<file> <name>...")?;
            let problem = load_problem(&pos[0], parsed.weights, parsed.tie)?;
            let gens = resolve_vectors(&problem, &pos[1..])?;
            let basis = minimal_groebner_basis(&gens, &problem.order)?;
            let mut out = String::new();
            for e in basis.elements() {
                writeln!(out, "{e}").unwrap();
            }
            Ok(CmdOutput {
                stdout: out,
                code: 0,
            })
        }
        "reduce" => {
            need(4, "<file> <f> mod <name>...")?;
            if pos[2] != "mod" {
                return Err(usage("reduce: expected `mod` keyword"));
            }
            let problem = load_problem(&pos[0], parsed.weights, parsed.tie)?;
            let f = problem.vector(&pos[1])?.clone();
            let reducers = resolve_vectors(&problem, &pos[3..])?;
            let result = reduce_full(&f, &reducers, &problem.order)?;
            let mut out = String::new();
            if result.remainder.is_zero() {
                writeln!(out, "0").unwrap();
            } else {
                writeln!(out, "{}", result.remainder).unwrap();
            }
            for (i, q) in result.quotients.iter().enumerate() {
                writeln!(out, "q{} = {q}", i + 1).unwrap();
            }
            Ok(CmdOutput {
                stdout: out,
                code: 0,
            })
        }
        "member" => {
            need(4, "<file> <f> in <name>...")?;
            if pos[2] != "in" {
                return Err(usage("member: expected `in` keyword"));
            }
            let problem = load_problem(&pos[0], parsed.weights, parsed.tie)?;
            let f = problem.vector(&pos[1])?.clone();
            let gens = resolve_vectors(&problem, &pos[3..])?;
            let basis = minimal_groebner_basis(&gens, &problem.order)?;
            let m = membership(&f, &basis)?;
            let mut out = String::new();
            if m.is_member {
                writeln!(out, "MEMBER").unwrap();
                for (i, q) in m.reduction.quotients.iter().enumerate() {
                    writeln!(out, "q{} = {q}", i + 1).unwrap();
                }
            } else {
                writeln!(out, "NOT MEMBER").unwrap();
                writeln!(out, "remainder = {}", m.reduction.remainder).unwrap();
            }
            Ok(CmdOutput {
                stdout: out,
                code: 0,
            })
        }
        "compose" => {
            need(3, "<file> <h> <f>")?;
            let problem = load_problem(&pos[0], parsed.weights, parsed.tie)?;
            let h = problem.poly(&pos[1])?.clone();
            let mut out = String::new();
            match problem.get(&pos[2])? {
                Binding::Poly(p) => writeln!(out, "{}", h.compose(p)?).unwrap(),
                Binding::Vector(v) => writeln!(out, "{}", v.compose_left(&h)?).unwrap(),
            }
            Ok(CmdOutput {
                stdout: out,
                code: 0,
            })
        }
        "eval" => {
            need(3, "<file> <f> <alpha>")?;
            let problem = load_problem(&pos[0], parsed.weights, parsed.tie)?;
            let f = problem.poly(&pos[1])?;
            let alpha = problem.field.parse_element(&pos[2])?;
            Ok(CmdOutput {
                stdout: format!("{}\n", f.eval(&alpha)?),
                code: 0,
            })
        }
        "oracle" => {
            need(2, "<file> <name>... --degree-bound D")?;
            let d = parsed
                .degree_bound
                .ok_or_else(|| usage("oracle: --degree-bound is required"))?;
            let problem = load_problem(&pos[0], parsed.weights, parsed.tie)?;
            let gens = resolve_vectors(&problem, &pos[1..])?;
            let basis = minimal_groebner_basis(&gens, &problem.order)?;
            let report = verify_groebner(&basis, &gens, d, &problem.order)?;
            let mut out = String::new();
            let pf = |ok: bool| if ok { "PASS" } else { "FAIL" };
            writeln!(out, "lt-division: {}", pf(report.lt_division_ok)).unwrap();
            if report.unverifiable.is_empty() {
                writeln!(
                    out,
                    "basis-containment: {}",
                    pf(report.basis_containment_ok)
                )
                .unwrap();
            } else {
                writeln!(
                    out,
                    "basis-containment: {} ({} unverifiable at D={d})",
                    pf(report.basis_containment_ok),
                    report.unverifiable.len()
                )
                .unwrap();
            }
            writeln!(
                out,
                "membership-agreement: {} ({} elements, {} non-elements)",
                pf(report.membership_agreement_ok),
                report.elements_checked,
                report.non_elements_checked
            )
            .unwrap();
            if let Some(cx) = &report.counterexample {
                writeln!(out, "counterexample: {cx}").unwrap();
            }
            let pass = report.pass();
            writeln!(out, "RESULT: {}", pf(pass)).unwrap();
            Ok(CmdOutput {
                stdout: out,
                code: if pass { 0 } else { 3 },
            })
        }
        other => Err(usage(&format!("unknown subcommand `{other}`"))),
    }
}
