//! Construction expressions for the CLI, e.g. `S4`, `wr(S4, 3)`,
//! `C2 x C4 x C3`, `ktog(S3)`, `ea(2, 3)`, `abelian(4, 6)`.

use anyhow::{anyhow, bail, Result};

use gendim_core::{constructions, Budgets, PermGroup};

/// Parses and builds a construction expression.
pub fn build(expr: &str, budgets: &Budgets) -> Result<PermGroup> {
    let mut parser = Parser {
        text: expr,
        pos: 0,
        budgets,
    };
    let g = parser.product()?;
    parser.skip_ws();
    if parser.pos != parser.text.len() {
        bail!("trailing input at byte {} in {expr:?}", parser.pos);
    }
    Ok(g)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    budgets: &'a Budgets,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn product(&mut self) -> Result<PermGroup> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('x') || self.peek() == Some('*') {
                self.pos += 1;
                let rhs = self.atom()?;
                acc = constructions::direct_product(&acc, &rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        for (i, c) in self.text[start..].char_indices() {
            if c.is_alphanumeric() || c == '_' {
                continue;
            }
            self.pos = start + i;
            break;
        }
        if self.pos == start {
            if self.text[start..]
                .chars()
                .all(|c| c.is_alphanumeric() || c == '_')
            {
                self.pos = self.text.len();
            }
        }
        if self.pos == start {
            bail!("expected a name at byte {start}");
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn number(s: &str) -> Result<u64> {
        s.parse()
            .map_err(|_| anyhow!("expected a number, found {s:?}"))
    }

    fn args(&mut self) -> Result<Vec<String>> {
        self.skip_ws();
        if self.peek() != Some('(') {
            return Ok(vec![]);
        }
        self.pos += 1;
        let mut out = Vec::new();
        let mut depth = 1;
        let mut cur = String::new();
        for (i, c) in self.text[self.pos..].char_indices() {
            match c {
                '(' => {
                    depth += 1;
                    cur.push(c);
                }
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        if !cur.trim().is_empty() {
                            out.push(cur.trim().to_string());
                        }
                        self.pos += i + 1;
                        return Ok(out);
                    }
                    cur.push(c);
                }
                ',' if depth == 1 => {
                    out.push(cur.trim().to_string());
                    cur.clear();
                }
                _ => cur.push(c),
            }
        }
        bail!("unbalanced parentheses");
    }

    fn atom(&mut self) -> Result<PermGroup> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.pos += 1;
            let g = self.product()?;
            self.skip_ws();
            if self.peek() != Some(')') {
                bail!("expected ')' at byte {}", self.pos);
            }
            self.pos += 1;
            return Ok(g);
        }
        let name = self.ident()?;
        // short forms with an inline number: C6, S4, A5, D8, Q8
        if let Some(rest) = name.strip_prefix(|c| matches!(c, 'C' | 'Z')) {
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                return Ok(constructions::cyclic(Self::number(rest)?)?);
            }
        }
        for (prefix, f) in [
            (
                "S",
                constructions::symmetric as fn(u64) -> gendim_core::Result<PermGroup>,
            ),
            ("A", constructions::alternating),
            ("D", constructions::dihedral),
            ("Q", constructions::quaternion),
        ] {
            if let Some(rest) = name.strip_prefix(prefix) {
                if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                    return Ok(f(Self::number(rest)?)?);
                }
            }
        }
        let args = self.args()?;
        let num = |i: usize| -> Result<u64> {
            Self::number(
                args.get(i)
                    .ok_or_else(|| anyhow!("{name}: missing argument {i}"))?,
            )
        };
        let group = |i: usize| -> Result<PermGroup> {
            build(
                args.get(i)
                    .ok_or_else(|| anyhow!("{name}: missing argument {i}"))?,
                self.budgets,
            )
        };
        match name.as_str() {
            "trivial" | "one" => Ok(PermGroup::trivial(1)),
            "cyclic" => Ok(constructions::cyclic(num(0)?)?),
            "sym" | "symmetric" => Ok(constructions::symmetric(num(0)?)?),
            "alt" | "alternating" => Ok(constructions::alternating(num(0)?)?),
            "dih" | "dihedral" => Ok(constructions::dihedral(num(0)?)?),
            "quat" | "quaternion" => Ok(constructions::quaternion(num(0)?)?),
            "E" | "ea" | "elementary_abelian" => {
                Ok(constructions::elementary_abelian(num(0)?, num(1)? as u32)?)
            }
            "abelian" => {
                let orders: Vec<u64> = (0..args.len()).map(num).collect::<Result<_>>()?;
                Ok(constructions::abelian(&orders)?)
            }
            "wr" | "wreath" => {
                let base = group(0)?;
                Ok(constructions::wreath_cyclic(&base, num(1)?)?)
            }
            "ktog" => {
                let k = group(0)?;
                let p = if args.len() > 1 { Some(num(1)?) } else { None };
                Ok(constructions::ktog_construct(&k, p, self.budgets)?.group)
            }
            "psl32" => Ok(constructions::psl_3_2()?),
            other => bail!("unknown construction {other:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(expr: &str) -> usize {
        build(expr, &Budgets::default())
            .unwrap()
            .order_usize()
            .unwrap()
    }

    #[test]
    fn parses_short_forms() {
        assert_eq!(orders("S4"), 24);
        assert_eq!(orders("A5"), 60);
        assert_eq!(orders("C12"), 12);
        assert_eq!(orders("D8"), 8);
        assert_eq!(orders("Q16"), 16);
    }

    #[test]
    fn parses_products_and_calls() {
        assert_eq!(orders("S3 x C2"), 12);
        assert_eq!(orders("ea(2, 3)"), 8);
        assert_eq!(orders("abelian(4, 6)"), 24);
        assert_eq!(orders("wr(C3, 3)"), 81);
        assert_eq!(orders("wr(S4, 3)"), 41472);
        assert_eq!(orders("ktog(S3)"), 30);
        assert_eq!(orders("psl32"), 168);
        assert_eq!(orders("(C2 x C2) x C3"), 12);
    }

    #[test]
    fn rejects_garbage() {
        assert!(build("S4)", &Budgets::default()).is_err());
        assert!(build("frob(7)", &Budgets::default()).is_err());
        assert!(build("", &Budgets::default()).is_err());
    }
}
