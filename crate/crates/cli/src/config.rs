//! `key = value` config files. Keys are long flag names; `sweep.key` limits a
//! key to one subcommand. Flags given on the command line win.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Command};

pub const ENV_VAR: &str = "QRAM_CONFIG";

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub scope: Option<String>,
    pub key: String,
    pub value: String,
    pub line: usize,
}

pub fn parse(text: &str) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected 'key = value'", i + 1);
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            bail!("config line {}: empty key", i + 1);
        }
        let (scope, key) = match k.split_once('.') {
            Some((s, k)) => (Some(s.to_string()), k.to_string()),
            None => (None, k.to_string()),
        };
        out.push(Entry { scope, key, value: v.to_string(), line: i + 1 });
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Vec<Entry>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

/// Flags for subcommand `sub` built from the entries that apply to it.
pub fn to_args(entries: &[Entry], root: &Command, sub: &str) -> Result<Vec<String>> {
    let Some(cmd) = root.find_subcommand(sub) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for e in entries {
        if let Some(scope) = &e.scope {
            if root.find_subcommand(scope).is_none() {
                bail!("config line {}: unknown subcommand '{scope}'", e.line);
            }
            if scope != sub {
                continue;
            }
        }
        let known_anywhere = root.get_subcommands().any(|c| c.get_arguments().any(|a| a.get_long() == Some(&e.key)));
        if !known_anywhere {
            bail!("config line {}: unknown key '{}'", e.line, e.key);
        }
        let Some(arg) = cmd.get_arguments().find(|a| a.get_long() == Some(&e.key)) else {
            continue;
        };
        match arg.get_action() {
            ArgAction::SetTrue => match e.value.as_str() {
                "true" | "yes" | "1" => out.push(format!("--{}", e.key)),
                "false" | "no" | "0" => {}
                other => bail!("config line {}: '{}' expects true or false, got '{other}'", e.line, e.key),
            },
            // `=` keeps optional-value flags and negative numbers intact
            _ => out.push(format!("--{}={}", e.key, e.value)),
        }
    }
    Ok(out)
}
