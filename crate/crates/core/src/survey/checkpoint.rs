//! Resumable sweep state.
//!
//! ```text
//! lsqlab-ckpt v1
//! last_n=<integer>
//! K=<k>,count_I=<c1>,count_S=<c2>,max_S=<m-or-empty>
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use super::KStats;
use crate::error::{Error, Result};

pub const MAGIC: &str = "lsqlab-ckpt v1";

/// Highest contiguous classified `n` and the aggregates up to it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Checkpoint {
    pub last_n: u64,
    pub classes: BTreeMap<u64, KStats>,
}

impl Checkpoint {
    /// State before any integer of a range starting at `range_lo` is done.
    pub fn empty(range_lo: u64) -> Self {
        Checkpoint {
            last_n: range_lo - 1,
            classes: BTreeMap::new(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("{MAGIC}\nlast_n={}\n", self.last_n);
        for (k, s) in &self.classes {
            let max_s = s.max_s.map(|m| m.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "K={k},count_I={},count_S={},max_S={max_s}\n",
                s.count_i, s.count_s
            ));
        }
        out
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let bad = |detail: String| Error::Format {
            path: path.to_path_buf(),
            detail,
        };
        let mut lines = text.lines();
        match lines.next() {
            Some(MAGIC) => {}
            Some(other) if other.starts_with("lsqlab-ckpt ") => {
                return Err(bad(format!("unsupported checkpoint version {other:?}")))
            }
            other => return Err(bad(format!("not a checkpoint: first line {other:?}"))),
        }
        let last_n = lines
            .next()
            .and_then(|l| l.strip_prefix("last_n="))
            .ok_or_else(|| bad("missing last_n line".into()))?
            .parse()
            .map_err(|e| bad(format!("last_n: {e}")))?;

        let mut classes = BTreeMap::new();
        for (i, line) in lines.enumerate() {
            let lineno = i + 3;
            let mut fields = [None; 4];
            for (slot, (part, key)) in line
                .split(',')
                .zip(["K=", "count_I=", "count_S=", "max_S="])
                .enumerate()
            {
                let value = part
                    .strip_prefix(key)
                    .ok_or_else(|| bad(format!("line {lineno}: expected {key}")))?;
                fields[slot] = Some(value);
            }
            if line.split(',').count() != 4 || fields.iter().any(Option::is_none) {
                return Err(bad(format!("line {lineno}: expected 4 fields")));
            }
            let num = |s: &str| {
                s.parse::<u64>()
                    .map_err(|e| bad(format!("line {lineno}: {s:?}: {e}")))
            };
            let k = num(fields[0].unwrap())?;
            let stats = KStats {
                count_i: num(fields[1].unwrap())?,
                count_s: num(fields[2].unwrap())?,
                max_s: match fields[3].unwrap() {
                    "" => None,
                    m => Some(num(m)?),
                },
            };
            if stats.max_s.is_some() != (stats.count_s > 0) || stats.count_s > stats.count_i {
                return Err(bad(format!("line {lineno}: inconsistent counts")));
            }
            if classes.insert(k, stats).is_some() {
                return Err(bad(format!("line {lineno}: duplicate K={k}")));
            }
        }
        Ok(Checkpoint { last_n, classes })
    }

    /// Writes through a sibling temporary file so a crash never leaves a
    /// truncated checkpoint behind.
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        fs::write(&tmp, self.render())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Checkpoint {
        let mut classes = BTreeMap::new();
        classes.insert(1, KStats { count_i: 7, count_s: 1, max_s: Some(1) });
        classes.insert(4, KStats { count_i: 2, count_s: 0, max_s: None });
        Checkpoint { last_n: 50, classes }
    }

    #[test]
    fn write_then_read() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.ckpt");
        sample().write(&path).unwrap();
        assert_eq!(
            std::fs::read_to_string(&path).unwrap(),
            "lsqlab-ckpt v1\nlast_n=50\nK=1,count_I=7,count_S=1,max_S=1\nK=4,count_I=2,count_S=0,max_S=\n"
        );
        assert_eq!(Checkpoint::read(&path).unwrap(), sample());
    }

    #[test]
    fn version_mismatch_is_a_format_error() {
        let text = sample().render().replace("v1", "v2");
        let err = Checkpoint::parse(&text, Path::new("x")).unwrap_err();
        assert!(matches!(err, Error::Format { .. }), "{err}");
        assert!(err.to_string().contains("version"));
    }

    #[test]
    fn corrupt_files_are_rejected() {
        let p = Path::new("x");
        assert!(Checkpoint::parse("", p).is_err());
        assert!(Checkpoint::parse("lsqlab-ckpt v1\n", p).is_err());
        assert!(Checkpoint::parse("lsqlab-ckpt v1\nlast_n=x\n", p).is_err());
        assert!(Checkpoint::parse("lsqlab-ckpt v1\nlast_n=3\nK=1,count_I=1\n", p).is_err());
        assert!(Checkpoint::parse("lsqlab-ckpt v1\nlast_n=3\nK=1,count_I=1,count_S=1,max_S=\n", p).is_err());
        assert!(Checkpoint::parse(
            "lsqlab-ckpt v1\nlast_n=3\nK=1,count_I=1,count_S=0,max_S=,extra\n",
            p
        )
        .is_err());
        assert_eq!(
            Checkpoint::parse("lsqlab-ckpt v1\nlast_n=0\n", p).unwrap(),
            Checkpoint::default()
        );
    }
}
