//! One-token set function syntax:
//! `lmn:m,n`, `const:c`, `table:@file`, `table:[v0,v1,...]` and
//! `mod:<func>:V=x:{0,2}=y` with any number of overrides.

use std::fs;
use std::path::Path;

use rigpack::setfunc::{Override, OverrideTarget};
use rigpack::{SetFunc, VertexSet};

use crate::error::{CliError, CliResult};

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
    base_dir: &'a Path,
}

impl<'a> Cursor<'a> {
    fn fail<T>(&self, message: impl Into<String>) -> CliResult<T> {
        Err(CliError::Parse { what: "set function", input: self.input.into(), position: self.pos, message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> CliResult<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.fail(format!("expected `{token}`"))
        }
    }

    fn int(&mut self) -> CliResult<i64> {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .unwrap_or(0);
        match rest[..len].parse() {
            Ok(x) => {
                self.pos += len;
                Ok(x)
            }
            Err(_) => self.fail("expected an integer"),
        }
    }

    fn func(&mut self) -> CliResult<SetFunc> {
        if self.eat("lmn:") {
            let m = self.int()?;
            self.expect(",")?;
            let n = self.int()?;
            Ok(SetFunc::lmn(m, n))
        } else if self.eat("const:") {
            Ok(SetFunc::constant(self.int()?))
        } else if self.eat("table:") {
            self.table()
        } else if self.eat("mod:") {
            let base = self.func()?;
            let mut overrides = Vec::new();
            while self.eat(":") {
                let target = self.target()?;
                self.expect("=")?;
                overrides.push(Override { target, value: self.int()? });
            }
            if overrides.is_empty() {
                return self.fail("mod needs at least one override such as `:V=0`");
            }
            let at = self.pos;
            SetFunc::modified(base, overrides).or_else(|e| {
                self.pos = at;
                self.fail(e.to_string())
            })
        } else {
            self.fail("expected one of lmn:, const:, table:, mod:")
        }
    }

    fn target(&mut self) -> CliResult<OverrideTarget> {
        if self.eat("V") {
            return Ok(OverrideTarget::Full);
        }
        self.expect("{")?;
        let mut set = VertexSet::default();
        loop {
            let at = self.pos;
            let v = self.int()?;
            if !(0..64).contains(&v) {
                self.pos = at;
                return self.fail("vertices must lie in 0..64");
            }
            set.insert(v as usize);
            if self.eat("}") {
                break;
            }
            self.expect(",")?;
        }
        if set.is_empty() {
            return self.fail("override set must be nonempty");
        }
        Ok(OverrideTarget::Set(set))
    }

    fn table(&mut self) -> CliResult<SetFunc> {
        let start = self.pos;
        let values: Vec<i64> = if self.eat("@") {
            let len = self.rest().find(':').unwrap_or(self.rest().len());
            let name = &self.rest()[..len];
            if name.is_empty() {
                return self.fail("expected a file name after `@`");
            }
            let path = self.base_dir.join(name);
            let text = fs::read_to_string(&path).map_err(|e| CliError::File { path: path.clone(), message: e.to_string() })?;
            let values = serde_json::from_str(&text)
                .map_err(|e| CliError::File { path: path.clone(), message: format!("expected a JSON integer array: {e}") })?;
            self.pos += len;
            values
        } else if self.rest().starts_with('[') {
            let len = match self.rest().find(']') {
                Some(i) => i + 1,
                None => return self.fail("unterminated table"),
            };
            match serde_json::from_str(&self.rest()[..len]) {
                Ok(values) => {
                    self.pos += len;
                    values
                }
                Err(e) => return self.fail(format!("expected an integer array: {e}")),
            }
        } else {
            return self.fail("expected `@file` or `[...]`");
        };
        let len = values.len();
        if !len.is_power_of_two() || len < 2 {
            self.pos = start;
            return self.fail(format!("table length {len} is not 2^n for n >= 1"));
        }
        SetFunc::table(len.trailing_zeros() as usize, values).or_else(|e| {
            self.pos = start;
            self.fail(e.to_string())
        })
    }
}

/// Parses a set function token; `table:@file` paths resolve against `base_dir`.
pub fn parse_func(input: &str, base_dir: &Path) -> CliResult<SetFunc> {
    let mut c = Cursor { input, pos: 0, base_dir };
    let f = c.func()?;
    if !c.rest().is_empty() {
        return c.fail("unexpected trailing input");
    }
    Ok(f)
}
