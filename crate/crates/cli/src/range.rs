//! Integer sets on the command line: `7`, `4,6,9`, `15..36` (inclusive),
//! `15..=36`, or a mix such as `1,4..6`.

use anyhow::{bail, Context, Result};

pub fn parse_set(s: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let lo: u64 = a.trim().parse().with_context(|| format!("bad range start in '{part}'"))?;
            let hi: u64 = b.trim().parse().with_context(|| format!("bad range end in '{part}'"))?;
            if lo > hi {
                bail!("empty range '{part}'");
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().with_context(|| format!("'{part}' is not an integer"))?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn parse_set_u32(s: &str) -> Result<Vec<u32>> {
    parse_set(s)?.into_iter().map(|v| u32::try_from(v).context("value too large")).collect()
}
