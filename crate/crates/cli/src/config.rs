//! `--config FILE`: a flat `key = value` file whose entries act as flags
//! placed before the command-line flags, so that the latter win.

use std::path::Path;

use crate::error::CliError;

/// Turns `key = value` lines into `--key value` arguments. `#` starts a
/// comment line. `true` and `false` switch boolean flags on or off.
pub fn config_args(text: &str, source: &Path) -> Result<Vec<String>, CliError> {
    let mut args = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::input(format!("{}:{}: expected `key = value`", source.display(), idx + 1))
        })?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim().trim_matches('"');
        if key.is_empty() || key == "config" {
            return Err(CliError::input(format!("{}:{}: invalid key", source.display(), idx + 1)));
        }
        match value {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            _ => {
                args.push(format!("--{key}"));
                args.push(value.to_string());
            }
        }
    }
    Ok(args)
}

/// Removes `--config PATH` from `argv` and splices the file's flags in
/// right after the subcommand name.
pub fn expand(argv: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut config = None;
    let mut iter = argv.into_iter();
    while let Some(arg) = iter.next() {
        if arg == "--config" {
            let path = iter
                .next()
                .ok_or_else(|| CliError::input("--config needs a file path"))?;
            config = Some(path);
        } else if let Some(path) = arg.strip_prefix("--config=") {
            config = Some(path.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = config else {
        return Ok(rest);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let extra = config_args(&text, path)?;
    // argv[0] is the program; the subcommand is the first bare word after it.
    let at = rest
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map(|p| p + 2)
        .unwrap_or(rest.len());
    rest.splice(at..at, extra);
    Ok(rest)
}
