// SPDX-License-Identifier: Apache-2.0

//! Named operations for `op` lines, `clone gen --gens` and `dim --element`.

use crate::finop::{FinOp, FinOpError};

pub const NAMED_OPS: &str = "and, or, min, max, xor, not, maj, id, c<v>";

fn tabulate(domain: u8, arity: usize, f: impl Fn(&[u8]) -> u8) -> Result<FinOp, FinOpError> {
    FinOp::new(domain, arity, FinOp::inputs(domain, arity).map(|x| f(&x)).collect())
}

/// `and`/`min` and `or`/`max` are the lattice operations of the chain
/// `0 < … < d-1`; `xor` is addition mod `d`; `not` is `x ↦ d-1-x`;
/// `maj(x,y,z)` is `x` when `x = y` and `z` otherwise; `c<v>` is a constant.
pub fn named(domain: u8, name: &str) -> Option<Result<FinOp, FinOpError>> {
    let d = domain;
    Some(match name {
        "and" | "min" => tabulate(d, 2, |x| x[0].min(x[1])),
        "or" | "max" => tabulate(d, 2, |x| x[0].max(x[1])),
        "xor" => tabulate(d, 2, |x| ((x[0] as u16 + x[1] as u16) % d as u16) as u8),
        "not" => tabulate(d, 1, |x| d - 1 - x[0]),
        "maj" => tabulate(d, 3, |x| if x[0] == x[1] { x[0] } else { x[2] }),
        "id" => FinOp::projection(d, 1, 0),
        _ => {
            let v: u8 = name.strip_prefix('c')?.parse().ok()?;
            FinOp::constant(d, 0, v)
        }
    })
}

/// A named operation, or `arity:table` such as `2:0001`.
pub fn parse_op(domain: u8, text: &str) -> Result<FinOp, String> {
    if let Some(r) = named(domain, text) {
        return r.map_err(|e| format!("{text}: {e}"));
    }
    let (arity, table) = text
        .split_once(':')
        .ok_or_else(|| format!("unknown operation '{text}'; use one of {NAMED_OPS} or arity:table like 2:0001"))?;
    let arity: usize = arity.parse().map_err(|_| format!("bad arity in '{text}'"))?;
    let table: Option<Vec<u8>> = table.chars().map(|c| c.to_digit(36).map(|v| v as u8)).collect();
    let table = table.ok_or_else(|| format!("bad table in '{text}'"))?;
    FinOp::new(domain, arity, table).map_err(|e| format!("{text}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_tables() {
        assert_eq!(parse_op(2, "and").unwrap().table(), &[0, 0, 0, 1]);
        assert_eq!(parse_op(2, "or").unwrap().table(), &[0, 1, 1, 1]);
        assert_eq!(parse_op(2, "xor").unwrap().table(), &[0, 1, 1, 0]);
        assert_eq!(parse_op(2, "not").unwrap().table(), &[1, 0]);
        assert_eq!(parse_op(2, "maj").unwrap().table(), &[0, 0, 0, 1, 0, 1, 1, 1]);
        assert_eq!(parse_op(2, "c1").unwrap().table(), &[1]);
        assert_eq!(parse_op(2, "2:0110").unwrap(), parse_op(2, "xor").unwrap());
        assert!(parse_op(2, "c7").is_err());
        assert!(parse_op(2, "nand").is_err());
        assert!(parse_op(2, "2:012").is_err());
    }
}
