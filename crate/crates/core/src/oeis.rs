//! Local OEIS lookup against a `stripped`-format file.
//!
//! Lines look like `A000045 ,0,1,1,2,3,5,8,`. Lines starting with `#` and
//! blank lines are ignored; anything else that fails to parse is counted.

use crate::rational::{is_integer, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use std::path::Path;
use std::str::FromStr;

/// Default database location.
pub const OEIS_PATH_ENV: &str = "RLAB_OEIS_PATH";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisEntry {
    pub id: String,
    pub terms: Vec<BigInt>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OeisDb {
    pub entries: Vec<OeisEntry>,
    pub malformed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisMatch {
    pub id: String,
    /// Index in the stored terms where the window starts.
    pub offset: usize,
    /// Number of window terms that overlap the stored terms.
    pub matched: usize,
}

fn valid_id(id: &str) -> bool {
    id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit())
}

/// Parses one data line. `None` for malformed lines.
pub fn parse_line(line: &str) -> Option<OeisEntry> {
    let (id, rest) = line.trim().split_once(char::is_whitespace)?;
    if !valid_id(id) {
        return None;
    }
    let body = rest.trim().strip_prefix(',')?;
    let body = body.strip_suffix(',').unwrap_or(body);
    let terms = body
        .split(',')
        .map(|t| BigInt::from_str(t.trim()).ok())
        .collect::<Option<Vec<_>>>()?;
    Some(OeisEntry { id: id.to_string(), terms })
}

pub fn parse_stripped(text: &str) -> OeisDb {
    let mut db = OeisDb::default();
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        match parse_line(t) {
            Some(e) => db.entries.push(e),
            None => db.malformed += 1,
        }
    }
    db
}

pub fn oeis_load(path: impl AsRef<Path>) -> std::io::Result<OeisDb> {
    Ok(parse_stripped(&std::fs::read_to_string(path)?))
}

/// Every placement of `window` inside an entry where at least `min_match`
/// terms overlap and all overlapping terms agree. The window may run past
/// the end of the stored terms.
pub fn oeis_identify(db: &OeisDb, window: &[Rational], min_match: usize) -> Vec<OeisMatch> {
    if window.is_empty() || !window.iter().all(is_integer) || window.iter().all(Zero::is_zero) {
        return Vec::new();
    }
    let w: Vec<BigInt> = window.iter().map(|r| r.to_integer()).collect();
    let need = min_match.max(1);
    let mut out = Vec::new();
    for e in &db.entries {
        for offset in 0..e.terms.len() {
            let overlap = w.len().min(e.terms.len() - offset);
            if overlap >= need && e.terms[offset..offset + overlap] == w[..overlap] {
                out.push(OeisMatch {
                    id: e.id.clone(),
                    offset,
                    matched: overlap,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};

    const SAMPLE: &str = "# comment\nA000045 ,0,1,1,2,3,5,8,\n\nA006318 ,1,2,6,22,90,394,1806,8558,\nB123 ,1,2,\nA000108 ,1,1,2,x,\n";

    #[test]
    fn parses_lines() {
        let db = parse_stripped(SAMPLE);
        assert_eq!(db.entries.len(), 2);
        assert_eq!(db.malformed, 2);
        assert_eq!(db.entries[0].id, "A000045");
        let want: Vec<BigInt> = [0, 1, 1, 2, 3, 5, 8].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(db.entries[0].terms, want);
        assert_eq!(parse_stripped(""), OeisDb::default());
    }

    #[test]
    fn identifies_windows() {
        let db = parse_stripped(SAMPLE);
        let hits = oeis_identify(&db, &ints(&[1, 2, 6, 22, 90, 394, 1806]), 5);
        assert_eq!(hits, vec![OeisMatch { id: "A006318".into(), offset: 0, matched: 7 }]);
        let fib = oeis_identify(&db, &ints(&[2, 3, 5, 8, 13]), 4);
        assert_eq!((fib[0].id.as_str(), fib[0].offset, fib[0].matched), ("A000045", 3, 4));
        assert!(oeis_identify(&db, &ints(&[2, 3, 5, 8, 13]), 5).is_empty());
        assert!(oeis_identify(&db, &[frac(1, 2), int(1)], 1).is_empty());
        assert!(oeis_identify(&db, &ints(&[0, 0, 0]), 1).is_empty());
    }
}
