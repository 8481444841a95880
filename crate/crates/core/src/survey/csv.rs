//! Plain CSV files: comma separated, `\n` line endings, no quoting (no
//! field ever contains a comma), booleans spelled `true` / `false`.

use std::path::Path;

use super::{Fig1Row, KClassRow, KStats, Table1Row, Table2Row};
use crate::error::{Error, Result};

pub const KCLASS_HEADER: &str = "n,min_k,l_max,squarefree";
pub const TABLE1_HEADER: &str = "K,count_I,count_S,max_S";
pub const TABLE2_HEADER: &str = "n,f_gamma,f_four";
pub const FIG1_HEADER: &str = "n,f_gamma,f_four,bound46,bound64";

pub fn kclass_line(row: &KClassRow) -> String {
    format!("{},{},{},{}", row.n, row.min_k, row.l_max, row.squarefree)
}

fn table1_line(row: &Table1Row) -> String {
    let max_s = row.stats.max_s.map(|m| m.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{}",
        row.k, row.stats.count_i, row.stats.count_s, max_s
    )
}

fn render<T>(header: &str, rows: &[T], line: impl Fn(&T) -> String) -> String {
    let mut out = String::with_capacity(header.len() + 1 + rows.len() * 24);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

pub fn kclass_csv(rows: &[KClassRow]) -> String {
    render(KCLASS_HEADER, rows, kclass_line)
}

pub fn table1_csv(rows: &[Table1Row]) -> String {
    render(TABLE1_HEADER, rows, table1_line)
}

pub fn table2_csv(rows: &[Table2Row]) -> String {
    render(TABLE2_HEADER, rows, |r| {
        format!("{},{},{}", r.n, r.f_gamma, r.f_four)
    })
}

pub fn fig1_csv(rows: &[Fig1Row]) -> String {
    render(FIG1_HEADER, rows, |r| {
        format!(
            "{},{},{},{},{}",
            r.n, r.f_gamma, r.f_four, r.bound46, r.bound64
        )
    })
}

/// Splits `text` into data lines after checking the header, reporting
/// problems against `path`.
fn data_lines<'a>(
    text: &'a str,
    header: &str,
    path: &Path,
) -> Result<impl Iterator<Item = (usize, &'a str)>> {
    let body = text.strip_suffix('\n').ok_or_else(|| Error::Format {
        path: path.to_path_buf(),
        detail: "missing final newline".into(),
    })?;
    let mut lines = body.split('\n').enumerate();
    match lines.next() {
        Some((_, h)) if h == header => {}
        other => {
            return Err(Error::Format {
                path: path.to_path_buf(),
                detail: format!(
                    "expected header {header:?}, found {:?}",
                    other.map(|(_, h)| h).unwrap_or("")
                ),
            })
        }
    }
    Ok(lines.map(|(i, l)| (i + 1, l)))
}

struct Fields<'a> {
    path: &'a Path,
    line: usize,
    parts: Vec<&'a str>,
}

impl<'a> Fields<'a> {
    fn new(path: &'a Path, line: usize, text: &'a str, width: usize) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        let f = Fields { path, line, parts };
        if f.parts.len() != width {
            return Err(f.err(format!("expected {width} fields, found {}", f.parts.len())));
        }
        Ok(f)
    }

    fn err(&self, detail: String) -> Error {
        Error::Format {
            path: self.path.to_path_buf(),
            detail: format!("line {}: {detail}", self.line),
        }
    }

    fn int(&self, i: usize) -> Result<u64> {
        let s = self.parts[i];
        // reject forms that would not re-emit identically, such as "+3" or "03"
        if s.is_empty() || (s.len() > 1 && s.starts_with('0')) || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.err(format!("field {} is not a canonical integer: {s:?}", i + 1)));
        }
        s.parse().map_err(|e| self.err(format!("field {}: {e}", i + 1)))
    }

    fn opt_int(&self, i: usize) -> Result<Option<u64>> {
        if self.parts[i].is_empty() {
            Ok(None)
        } else {
            self.int(i).map(Some)
        }
    }

    fn boolean(&self, i: usize) -> Result<bool> {
        match self.parts[i] {
            "true" => Ok(true),
            "false" => Ok(false),
            s => Err(self.err(format!("field {} is not a boolean: {s:?}", i + 1))),
        }
    }
}

pub fn parse_kclass(text: &str, path: &Path) -> Result<Vec<KClassRow>> {
    let mut rows: Vec<KClassRow> = Vec::new();
    for (line, l) in data_lines(text, KCLASS_HEADER, path)? {
        let f = Fields::new(path, line, l, 4)?;
        let row = KClassRow {
            n: f.int(0)?,
            min_k: f.int(1)?,
            l_max: f.int(2)?,
            squarefree: f.boolean(3)?,
        };
        if rows.last().is_some_and(|prev| prev.n >= row.n) {
            return Err(f.err("rows not strictly increasing in n".into()));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_table1(text: &str, path: &Path) -> Result<Vec<Table1Row>> {
    let mut rows: Vec<Table1Row> = Vec::new();
    for (line, l) in data_lines(text, TABLE1_HEADER, path)? {
        let f = Fields::new(path, line, l, 4)?;
        let row = Table1Row {
            k: f.int(0)?,
            stats: KStats {
                count_i: f.int(1)?,
                count_s: f.int(2)?,
                max_s: f.opt_int(3)?,
            },
        };
        if row.stats.max_s.is_some() != (row.stats.count_s > 0) {
            return Err(f.err("max_S must be present exactly when count_S > 0".into()));
        }
        if rows.last().is_some_and(|prev| prev.k >= row.k) {
            return Err(f.err("rows not strictly increasing in K".into()));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_table2(text: &str, path: &Path) -> Result<Vec<Table2Row>> {
    data_lines(text, TABLE2_HEADER, path)?
        .map(|(line, l)| {
            let f = Fields::new(path, line, l, 3)?;
            Ok(Table2Row {
                n: f.int(0)?,
                f_gamma: f.int(1)?,
                f_four: f.int(2)?,
            })
        })
        .collect()
}

pub fn parse_fig1(text: &str, path: &Path) -> Result<Vec<Fig1Row>> {
    data_lines(text, FIG1_HEADER, path)?
        .map(|(line, l)| {
            let f = Fields::new(path, line, l, 5)?;
            Ok(Fig1Row {
                n: f.int(0)?,
                f_gamma: f.int(1)?,
                f_four: f.int(2)?,
                bound46: f.int(3)?,
                bound64: f.int(4)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p() -> &'static Path {
        Path::new("mem.csv")
    }

    #[test]
    fn kclass_exact_bytes() {
        let rows = [
            KClassRow { n: 1, min_k: 1, l_max: 1, squarefree: true },
            KClassRow { n: 4, min_k: 1, l_max: 2, squarefree: false },
        ];
        let text = kclass_csv(&rows);
        assert_eq!(text, "n,min_k,l_max,squarefree\n1,1,1,true\n4,1,2,false\n");
        assert_eq!(parse_kclass(&text, p()).unwrap(), rows);
    }

    #[test]
    fn table1_empty_max() {
        let rows = [
            Table1Row { k: 1, stats: KStats { count_i: 3, count_s: 1, max_s: Some(1) } },
            Table1Row { k: 2, stats: KStats { count_i: 4, count_s: 0, max_s: None } },
        ];
        let text = table1_csv(&rows);
        assert_eq!(text, "K,count_I,count_S,max_S\n1,3,1,1\n2,4,0,\n");
        assert_eq!(parse_table1(&text, p()).unwrap(), rows);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(parse_kclass("n,min_k,l_max,squarefree\n1,1,1,yes\n", p()).is_err());
        assert!(parse_kclass("n,min_k,l_max,squarefree\n1,1,1,true", p()).is_err());
        assert!(parse_kclass("n,k\n", p()).is_err());
        assert!(parse_kclass("n,min_k,l_max,squarefree\n2,1,1,true\n1,1,1,true\n", p()).is_err());
        assert!(parse_table1("K,count_I,count_S,max_S\n1,3,0,5\n", p()).is_err());
        assert!(parse_table2("n,f_gamma,f_four\n02,23,55\n", p()).is_err());
        assert!(parse_fig1("n,f_gamma,f_four,bound46,bound64\n2,23,55,184\n", p()).is_err());
    }

    proptest! {
        #[test]
        fn emitted_csv_reparses_identically(
            raw in proptest::collection::vec((1u64..1000, 1u64..9, 1u64..1000, any::<bool>()), 0..50)
        ) {
            let mut n = 0;
            let rows: Vec<KClassRow> = raw
                .into_iter()
                .map(|(step, min_k, l_max, squarefree)| {
                    n += step;
                    KClassRow { n, min_k, l_max, squarefree }
                })
                .collect();
            let text = kclass_csv(&rows);
            let parsed = parse_kclass(&text, p()).unwrap();
            prop_assert_eq!(kclass_csv(&parsed), text);

            let t2: Vec<Table2Row> = rows
                .iter()
                .map(|r| Table2Row { n: r.n, f_gamma: r.l_max, f_four: r.min_k })
                .collect();
            let text = table2_csv(&t2);
            prop_assert_eq!(table2_csv(&parse_table2(&text, p()).unwrap()), text);
        }
    }
}
