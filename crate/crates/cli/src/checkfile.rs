//! Identity check files. Each `identity` line opens an instance; the lines
//! after it supply its parameters and operand graphs:
//!
//! ```text
//! identity contract
//! edge 0
//! graph
//!   vertices 4
//!   edge 0 0 1
//!   ...
//! end
//! ```
//!
//! Parameters are `edge <e>`, `vertices <v>...`, `colors <name>...` and
//! `insert <p> <q>`. Graph blocks hold `.smap` text; a block with `color`
//! lines yields a colored operand.

use islandpoly::analysis::{IdentityInstance, Operand};
use islandpoly::error::ParseError;
use islandpoly::script::{parse_index, tokens};
use islandpoly::transforms::InsertionSpec;

use crate::smap::parse_smap;

#[derive(Debug, Clone)]
pub struct CheckEntry {
    /// Line of the `identity` directive.
    pub line: usize,
    pub instance: IdentityInstance,
}

pub fn parse_checkfile(text: &str) -> Result<Vec<CheckEntry>, ParseError> {
    let mut entries: Vec<CheckEntry> = Vec::new();
    let mut block: Option<(usize, String)> = None;
    for (i, src) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(src);
        if let Some((start, body)) = &mut block {
            if toks.first().map(|t| t.1) == Some("end") {
                let doc = parse_smap(body).map_err(|e| ParseError::new(e.line + *start, e.column, e.message))?;
                let op = match doc.coloring {
                    Some(c) => Operand::colored(doc.graph, c),
                    None => Operand::plain(doc.graph),
                };
                entries.last_mut().expect("graph blocks sit inside an identity").instance.operands.push(op);
                block = None;
            } else {
                body.push_str(src);
                body.push('\n');
            }
            continue;
        }
        let Some(&(col, word)) = toks.first() else {
            continue;
        };
        let args = &toks[1..];
        if word == "identity" {
            if args.len() != 1 {
                return Err(ParseError::new(line, col, "identity takes one kind name"));
            }
            entries.push(CheckEntry {
                line,
                instance: IdentityInstance::new(args[0].1, Vec::new()),
            });
            continue;
        }
        let Some(entry) = entries.last_mut() else {
            return Err(ParseError::new(line, col, format!("{word} before any identity line")));
        };
        let inst = &mut entry.instance;
        let arg_err = |msg: &str| ParseError::new(line, args.first().map_or(col, |t| t.0), format!("{word} {msg}"));
        match word {
            "graph" => {
                if !args.is_empty() {
                    return Err(arg_err("takes no arguments"));
                }
                block = Some((line, String::new()));
            }
            "edge" => {
                if args.len() != 1 {
                    return Err(arg_err("takes one edge id"));
                }
                inst.edge = Some(parse_index(line, args[0])?);
            }
            "vertices" => {
                inst.vertices = args.iter().map(|&t| parse_index(line, t)).collect::<Result<_, _>>()?;
            }
            "colors" => {
                inst.colors = args.iter().map(|t| t.1.to_string()).collect();
            }
            "insert" => {
                if args.len() != 2 {
                    return Err(arg_err("takes two rotation positions"));
                }
                inst.insertion = Some(InsertionSpec::new(parse_index(line, args[0])?, parse_index(line, args[1])?));
            }
            other => return Err(ParseError::new(line, col, format!("unknown directive {other:?}"))),
        }
    }
    if let Some((start, _)) = block {
        return Err(ParseError::new(start, 1, "graph block is never closed with end"));
    }
    Ok(entries)
}
