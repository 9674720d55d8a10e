//! Flat `key = value` config files merged into the command line.
//!
//! Keys are long flag names without dashes. Blank lines and lines starting
//! with `#` are ignored. Flags given on the command line win over the file.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Command;

pub fn parse(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected key = value", i + 1);
        };
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim().trim_matches('"').to_owned();
        if key.is_empty() {
            bail!("line {}: empty key", i + 1);
        }
        out.insert(key, value);
    }
    Ok(out)
}

/// Removes `--config <path>` from `args` and appends the file's settings
/// for every flag the subcommand knows and the user did not pass.
pub fn merge(cmd: &Command, mut args: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = args
        .iter()
        .position(|a| a == "--config" || a.starts_with("--config="))
    else {
        return Ok(args);
    };
    let path = if let Some(p) = args[pos].strip_prefix("--config=") {
        let p = p.to_owned();
        args.remove(pos);
        p
    } else {
        if pos + 1 >= args.len() {
            bail!("--config needs a path");
        }
        let p = args.remove(pos + 1);
        args.remove(pos);
        p
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .with_context(|| format!("reading config {path}"))?;
    let settings = parse(&text).with_context(|| format!("in config {path}"))?;

    let Some(sub) = args
        .iter()
        .skip(1)
        .find_map(|a| cmd.find_subcommand(a.as_str()))
    else {
        bail!("--config needs a subcommand");
    };
    for (key, value) in settings {
        let Some(arg) = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
        else {
            bail!("config key {key:?} is not a flag of '{}'", sub.get_name());
        };
        let flag = format!("--{key}");
        let given = args
            .iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if given {
            continue;
        }
        if arg.get_action().takes_values() {
            args.push(flag);
            args.push(value);
        } else if matches!(value.as_str(), "true" | "yes" | "1") {
            args.push(flag);
        }
    }
    Ok(args)
}
