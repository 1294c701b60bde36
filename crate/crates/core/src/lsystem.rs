//! L-systems: a small text format, parallel rewriting, and compilation to
//! turtle programs.
//!
//! ```text
//! # Koch curve
//! axiom = F
//! angle = 60
//! F -> F-F++F-F
//! ```
//!
//! Symbols without a rule are constants. During compilation the draw
//! symbols become `Forward`, the move symbols `Move`, `+`/`-` turn by the
//! angle, `[`/`]` push and pop the turtle state, and everything else is
//! ignored. Draw symbols default to every uppercase letter and move symbols
//! to `f`; the optional `draw = ...` and `move = ...` lines replace those
//! sets for one system.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::turtle::{self, Drawing, TurtleCommand, TurtleState};

pub const DEFAULT_EXPANSION_CAP: usize = 10_000_000;
pub const DEFAULT_ANGLE: f64 = 90.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LSystem {
    axiom: String,
    rules: BTreeMap<char, String>,
    angle: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    draw_symbols: Option<BTreeSet<char>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    move_symbols: Option<BTreeSet<char>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// A rule whose replacement is empty deletes its symbol.
    EmptyReplacement { line: usize, symbol: char },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::EmptyReplacement { line, symbol } => {
                write!(f, "line {line}: rule for '{symbol}' has an empty replacement (symbol is deleted)")
            }
        }
    }
}

impl LSystem {
    pub fn new(axiom: impl Into<String>, rules: impl IntoIterator<Item = (char, String)>, angle: f64) -> Result<Self> {
        let axiom = axiom.into();
        if axiom.is_empty() {
            return Err(Error::MissingAxiom);
        }
        let mut map = BTreeMap::new();
        for (symbol, replacement) in rules {
            if map.insert(symbol, replacement).is_some() {
                return Err(Error::DuplicateRule { line: 0, symbol });
            }
        }
        if !angle.is_finite() {
            return Err(Error::invalid("angle must be finite"));
        }
        Ok(LSystem {
            axiom,
            rules: map,
            angle,
            draw_symbols: None,
            move_symbols: None,
        })
    }

    /// Replaces the default draw and move symbol sets.
    pub fn with_symbols(mut self, draw: Option<BTreeSet<char>>, moves: Option<BTreeSet<char>>) -> Self {
        self.draw_symbols = draw;
        self.move_symbols = moves;
        self
    }

    pub fn draw_symbols(&self) -> Option<&BTreeSet<char>> {
        self.draw_symbols.as_ref()
    }

    pub fn move_symbols(&self) -> Option<&BTreeSet<char>> {
        self.move_symbols.as_ref()
    }

    pub fn axiom(&self) -> &str {
        &self.axiom
    }

    pub fn rules(&self) -> &BTreeMap<char, String> {
        &self.rules
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn parse_with_warnings(text: &str) -> Result<(Self, Vec<Warning>)> {
        let mut axiom: Option<String> = None;
        let mut angle: Option<f64> = None;
        let mut draw_symbols = None;
        let mut move_symbols = None;
        let mut rules = BTreeMap::new();
        let mut warnings = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax { line, message };

            if let Some((lhs, rhs)) = content.split_once("->").or_else(|| content.split_once('→')) {
                let lhs = lhs.trim();
                let mut chars = lhs.chars();
                let symbol = match (chars.next(), chars.next()) {
                    (Some(c), None) => c,
                    _ => return Err(syntax(format!("rule must rewrite a single symbol, found {lhs:?}"))),
                };
                let replacement: String = rhs.split_whitespace().collect();
                if replacement.is_empty() {
                    warnings.push(Warning::EmptyReplacement { line, symbol });
                }
                if rules.insert(symbol, replacement).is_some() {
                    return Err(Error::DuplicateRule { line, symbol });
                }
            } else if let Some((key, value)) = content.split_once('=') {
                let value = value.trim();
                match key.trim() {
                    "axiom" => {
                        if axiom.is_some() {
                            return Err(syntax("axiom given twice".into()));
                        }
                        let a: String = value.split_whitespace().collect();
                        if a.is_empty() {
                            return Err(Error::MissingAxiom);
                        }
                        axiom = Some(a);
                    }
                    "angle" => {
                        let a: f64 = value
                            .parse()
                            .ok()
                            .filter(|a: &f64| a.is_finite())
                            .ok_or_else(|| syntax(format!("angle must be a number, found {value:?}")))?;
                        angle = Some(a);
                    }
                    "draw" => draw_symbols = Some(value.chars().filter(|c| !c.is_whitespace()).collect()),
                    "move" => move_symbols = Some(value.chars().filter(|c| !c.is_whitespace()).collect()),
                    other => return Err(syntax(format!("unknown setting {other:?}"))),
                }
            } else {
                return Err(syntax(format!("expected \"key = value\" or \"X -> replacement\", found {content:?}")));
            }
        }

        let axiom = axiom.ok_or(Error::MissingAxiom)?;
        Ok((
            LSystem {
                axiom,
                rules,
                angle: angle.unwrap_or(DEFAULT_ANGLE),
                draw_symbols,
                move_symbols,
            },
            warnings,
        ))
    }

    pub fn rewrite_once(&self, word: &str) -> String {
        let mut out = String::with_capacity(self.next_len(word));
        for c in word.chars() {
            match self.rules.get(&c) {
                Some(r) => out.push_str(r),
                None => out.push(c),
            }
        }
        out
    }

    fn next_len(&self, word: &str) -> usize {
        word.chars()
            .map(|c| self.rules.get(&c).map_or(c.len_utf8(), String::len))
            .fold(0usize, usize::saturating_add)
    }

    pub fn expand_capped(&self, order: u32, cap: usize) -> Result<String> {
        let mut word = self.axiom.clone();
        for _ in 0..order {
            if self.next_len(&word) > cap {
                return Err(Error::OutputTooLarge { cap });
            }
            word = self.rewrite_once(&word);
        }
        Ok(word)
    }

    pub fn expand(&self, order: u32) -> Result<String> {
        self.expand_capped(order, DEFAULT_EXPANSION_CAP)
    }
}

impl FromStr for LSystem {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        LSystem::parse_with_warnings(text).map(|(ls, _)| ls)
    }
}

pub fn parse(text: &str) -> Result<LSystem> {
    text.parse()
}

pub fn expand(ls: &LSystem, order: u32) -> Result<String> {
    ls.expand(order)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub order: u32,
    pub step: f64,
    /// Overrides the system's own angle.
    pub angle: Option<f64>,
    /// Defaults to every uppercase letter.
    pub draw_symbols: Option<BTreeSet<char>>,
    /// Defaults to `f`.
    pub move_symbols: Option<BTreeSet<char>>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            order: 0,
            step: 1.0,
            angle: None,
            draw_symbols: None,
            move_symbols: None,
        }
    }
}

impl RenderSpec {
    pub fn with_order(order: u32) -> Self {
        RenderSpec {
            order,
            ..RenderSpec::default()
        }
    }

    fn draws(&self, c: char) -> bool {
        match &self.draw_symbols {
            Some(set) => set.contains(&c),
            None => c.is_ascii_uppercase(),
        }
    }

    fn moves(&self, c: char) -> bool {
        match &self.move_symbols {
            Some(set) => set.contains(&c),
            None => c == 'f',
        }
    }
}

/// Maps an expanded word to turtle commands.
pub fn compile_word(word: &str, angle: f64, spec: &RenderSpec) -> Result<Vec<TurtleCommand>> {
    if !(spec.step > 0.0 && spec.step.is_finite()) {
        return Err(Error::invalid("step must be positive"));
    }
    let mut depth = 0usize;
    let mut program = Vec::with_capacity(word.len());
    for c in word.chars() {
        let cmd = match c {
            '+' => TurtleCommand::Turn(angle),
            '-' | '−' => TurtleCommand::Turn(-angle),
            '[' => {
                depth += 1;
                TurtleCommand::Push
            }
            ']' => {
                depth = depth.checked_sub(1).ok_or_else(|| {
                    Error::InvalidSystem(format!("unbalanced ']' at command {}", program.len()))
                })?;
                TurtleCommand::Pop
            }
            c if spec.draws(c) => TurtleCommand::Forward(spec.step),
            c if spec.moves(c) => TurtleCommand::Move(spec.step),
            _ => continue,
        };
        program.push(cmd);
    }
    Ok(program)
}

/// Symbol sets left unset in `spec` fall back to those of the system.
pub fn compile(ls: &LSystem, spec: &RenderSpec) -> Result<Vec<TurtleCommand>> {
    let word = ls.expand(spec.order)?;
    let spec = RenderSpec {
        draw_symbols: spec.draw_symbols.clone().or_else(|| ls.draw_symbols.clone()),
        move_symbols: spec.move_symbols.clone().or_else(|| ls.move_symbols.clone()),
        ..spec.clone()
    };
    compile_word(&word, spec.angle.unwrap_or(ls.angle), &spec)
}

/// Expands, compiles and interprets from the origin heading along +x.
pub fn render(ls: &LSystem, spec: &RenderSpec) -> Result<Drawing> {
    let program = compile(ls, spec)?;
    turtle::interpret(&program, TurtleState::default()).map_err(|e| match e {
        Error::UnbalancedPop { index } => Error::InvalidSystem(format!("unbalanced ']' at command {index}")),
        other => other,
    })
}

/// Ready-made systems in the text format.
pub mod presets {
    pub const FIBONACCI: &str = "axiom = A\nA -> AB\nB -> A\n";
    pub const KOCH: &str = "axiom = F\nangle = 60\nF -> F-F++F-F\n";
    /// Three Koch curves joined by 120 degree turns.
    pub const SNOWFLAKE: &str = "axiom = F--F--F\nangle = 60\nF -> F-F++F-F\n";
    pub const SIERPINSKI: &str = "axiom = F\nangle = -60\nF -> G-F-G\nG -> F+G+F\n";
    pub const PLANT: &str = "axiom = X\nangle = 25\ndraw = F\nX -> F-[[X]+X]+F[+FX]-X\nF -> FF\n";
    pub const HILBERT: &str = "axiom = L\nangle = 90\ndraw = F\nL -> +RF-LFL-FR+\nR -> -LF+RFR+FL-\n";

    pub const ALL: &[(&str, &str)] = &[
        ("fibonacci", FIBONACCI),
        ("koch", KOCH),
        ("snowflake", SNOWFLAKE),
        ("sierpinski", SIERPINSKI),
        ("plant", PLANT),
        ("hilbert", HILBERT),
    ];

    pub fn by_name(name: &str) -> Option<&'static str> {
        ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let ls: LSystem = "axiom = A\nA -> AB\nB -> A".parse().unwrap();
        assert_eq!(ls.axiom(), "A");
        assert_eq!(ls.rules().len(), 2);

        let koch: LSystem = "axiom = F\nF -> F-F++F-F\nangle = 60".parse().unwrap();
        assert_eq!(koch.angle(), 60.0);
        assert_eq!(koch.rules()[&'F'], "F-F++F-F");

        assert_eq!(parse("A -> B"), Err(Error::MissingAxiom));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse("axiom = A\nA -> B\nA -> C").unwrap_err(),
            Error::DuplicateRule { line: 3, symbol: 'A' }
        );
        assert!(matches!(parse("axiom = A\nAB -> B"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse("axiom = A\nangle = wide"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse("axiom = A\nsteps = 3"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("axiom = A\nhello"), Err(Error::Syntax { .. })));
        assert_eq!(parse("axiom =   \nA -> B"), Err(Error::MissingAxiom));
    }

    #[test]
    fn empty_replacement_is_a_warning() {
        let (ls, warnings) = LSystem::parse_with_warnings("# eraser\naxiom = AB\nB ->\n").unwrap();
        assert_eq!(warnings, vec![Warning::EmptyReplacement { line: 3, symbol: 'B' }]);
        assert_eq!(ls.expand(1).unwrap(), "A");
    }

    #[test]
    fn draw_and_move_keys() {
        let ls = parse("axiom = XFfF\ndraw = F\nmove = f\n").unwrap();
        let d = render(&ls, &RenderSpec::default()).unwrap();
        assert_eq!(d.polylines().len(), 2);
        assert_eq!(d.segment_count(), 2);
        let spec = RenderSpec {
            draw_symbols: Some(['X', 'F'].into()),
            ..RenderSpec::default()
        };
        assert_eq!(render(&ls, &spec).unwrap().segment_count(), 3);
    }

    #[test]
    fn comments_and_unicode_arrow() {
        let ls = parse("axiom = A # start\n\nA → AB # grow\n").unwrap();
        assert_eq!(ls.expand(2).unwrap(), "ABB");
    }

    #[test]
    fn expansion_examples() {
        let ab = parse(presets::FIBONACCI).unwrap();
        assert_eq!(ab.expand(0).unwrap(), "A");
        assert_eq!(ab.expand(1).unwrap(), "AB");
        assert_eq!(ab.expand(2).unwrap(), "ABA");
        assert_eq!(ab.expand(3).unwrap(), "ABAAB");
        let koch = parse(presets::KOCH).unwrap();
        assert_eq!(koch.expand(1).unwrap(), "F-F++F-F");
    }

    #[test]
    fn expansion_cap() {
        let koch = parse(presets::KOCH).unwrap();
        assert_eq!(koch.expand_capped(3, 100), Err(Error::OutputTooLarge { cap: 100 }));
        assert!(koch.expand_capped(2, 100).is_ok());
    }

    #[test]
    fn compile_maps_symbols() {
        let ls = parse("axiom = F+f-[X]G").unwrap();
        let prog = compile(&ls, &RenderSpec { angle: Some(30.0), ..RenderSpec::default() }).unwrap();
        use TurtleCommand::*;
        assert_eq!(
            prog,
            vec![Forward(1.0), Turn(30.0), Move(1.0), Turn(-30.0), Push, Forward(1.0), Pop, Forward(1.0)]
        );
    }

    #[test]
    fn custom_symbol_sets() {
        let ls = parse("axiom = FGA").unwrap();
        let spec = RenderSpec {
            draw_symbols: Some(['F'].into()),
            move_symbols: Some(['G'].into()),
            ..RenderSpec::default()
        };
        assert_eq!(compile(&ls, &spec).unwrap(), vec![TurtleCommand::Forward(1.0), TurtleCommand::Move(1.0)]);
    }

    #[test]
    fn unbalanced_brackets_are_invalid() {
        let ls = parse("axiom = F]F").unwrap();
        assert!(matches!(render(&ls, &RenderSpec::default()), Err(Error::InvalidSystem(_))));
    }

    #[test]
    fn koch_counts() {
        let koch = parse(presets::KOCH).unwrap();
        let prog = compile(&koch, &RenderSpec::with_order(4)).unwrap();
        let forwards = prog.iter().filter(|c| matches!(c, TurtleCommand::Forward(_))).count();
        assert_eq!(forwards, 256);
        let d = render(&koch, &RenderSpec::with_order(4)).unwrap();
        assert_eq!(d.polylines().len(), 1);
        assert_eq!(d.segment_count(), 256);
    }

    #[test]
    fn presets_parse() {
        for (name, text) in presets::ALL {
            assert!(parse(text).is_ok(), "{name}");
        }
        assert!(presets::by_name("koch").is_some());
        assert!(presets::by_name("dragon").is_none());
    }
}
