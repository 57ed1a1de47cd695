use std::fmt::Write as _;
use std::path::Path;

use crate::group::{GroupError, PcGroup, PcPresentation};
use crate::linalg::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PcpError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("inconsistent presentation: {0}")]
    Inconsistent(GroupError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> PcpError {
    PcpError::Syntax { line, message: message.into() }
}

/// Parses `.pcp` text and validates the presentation by exhaustive collection.
pub fn parse_pcp(text: &str) -> Result<PcGroup, PcpError> {
    let mut p: Option<u32> = None;
    let mut pres: Option<PcPresentation> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let kw = toks.next().unwrap_or("");
        match kw {
            "p" => {
                if p.is_some() {
                    return Err(syntax(line_no, "duplicate `p` line"));
                }
                let v: u32 = parse_num(toks.next(), line_no, "prime")?;
                if !is_prime(v) || v > 251 {
                    return Err(syntax(line_no, format!("{v} is not a supported prime")));
                }
                expect_end(toks, line_no)?;
                p = Some(v);
            }
            "gens" => {
                let pv = p.ok_or_else(|| syntax(line_no, "`gens` before `p`"))?;
                if pres.is_some() {
                    return Err(syntax(line_no, "duplicate `gens` line"));
                }
                let n: usize = parse_num(toks.next(), line_no, "generator count")?;
                expect_end(toks, line_no)?;
                pres = Some(PcPresentation::elementary_abelian(pv, n).map_err(|e| syntax(line_no, e.to_string()))?);
            }
            "pow" | "comm" => {
                let pr = pres.as_mut().ok_or_else(|| syntax(line_no, "relation before `gens`"))?;
                let n = pr.num_gens();
                let (lhs, rhs) = line[kw.len()..]
                    .split_once('=')
                    .ok_or_else(|| syntax(line_no, "missing `=`"))?;
                let idx: Vec<usize> = lhs
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| syntax(line_no, format!("bad generator index `{t}`"))))
                    .collect::<Result<_, _>>()?;
                let word = parse_word(rhs, pr.prime(), n, line_no)?;
                let in_range = |k: usize| k >= 1 && k <= n;
                if kw == "pow" {
                    if idx.len() != 1 || !in_range(idx[0]) {
                        return Err(syntax(line_no, "expected `pow i = word` with 1 <= i <= gens"));
                    }
                    pr.set_power(idx[0] - 1, word).map_err(|e| syntax(line_no, e.to_string()))?;
                } else {
                    if idx.len() != 2 || !in_range(idx[0]) || !in_range(idx[1]) {
                        return Err(syntax(line_no, "expected `comm j i = word` with generator indices"));
                    }
                    let (j, i) = (idx[0], idx[1]);
                    if j <= i {
                        return Err(syntax(line_no, format!("comm {j} {i}: need j > i")));
                    }
                    pr.set_commutator(j - 1, i - 1, word).map_err(|e| syntax(line_no, e.to_string()))?;
                }
            }
            other => return Err(syntax(line_no, format!("unknown keyword `{other}`"))),
        }
    }
    let pres = pres.ok_or_else(|| syntax(text.lines().count().max(1), "missing `p`/`gens` header"))?;
    PcGroup::new(pres).map_err(PcpError::Inconsistent)
}

pub fn load_pcp(path: impl AsRef<Path>) -> Result<PcGroup, PcpError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| PcpError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_pcp(&text)
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, PcpError> {
    let t = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    t.parse().map_err(|_| syntax(line, format!("bad {what} `{t}`")))
}

fn expect_end<'a>(mut toks: impl Iterator<Item = &'a str>, line: usize) -> Result<(), PcpError> {
    match toks.next() {
        None => Ok(()),
        Some(t) => Err(syntax(line, format!("unexpected `{t}`"))),
    }
}

/// Normal-form word: factors `g<k>^<e>` with increasing k, or `1`.
fn parse_word(s: &str, p: u32, n: usize, line: usize) -> Result<Vec<u32>, PcpError> {
    let mut w = vec![0u32; n];
    let toks: Vec<&str> = s.split_whitespace().collect();
    if toks.is_empty() {
        return Err(syntax(line, "empty right-hand side (write `1` for the identity)"));
    }
    if toks == ["1"] {
        return Ok(w);
    }
    let mut last = 0;
    for t in toks {
        let body = t.strip_prefix('g').ok_or_else(|| syntax(line, format!("bad factor `{t}`")))?;
        let (k, e) = match body.split_once('^') {
            Some((k, e)) => (k, e),
            None => (body, "1"),
        };
        let k: usize = k.parse().map_err(|_| syntax(line, format!("bad factor `{t}`")))?;
        let e: u32 = e.parse().map_err(|_| syntax(line, format!("bad exponent in `{t}`")))?;
        if k < 1 || k > n {
            return Err(syntax(line, format!("generator g{k} out of range")));
        }
        if k <= last {
            return Err(syntax(line, "factors must appear in increasing generator order"));
        }
        if e == 0 || e >= p {
            return Err(syntax(line, format!("exponent {e} not in 1..{}", p - 1)));
        }
        w[k - 1] = e;
        last = k;
    }
    Ok(w)
}

fn format_word(w: &[u32]) -> String {
    let parts: Vec<String> = w
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(k, &e)| if e == 1 { format!("g{}", k + 1) } else { format!("g{}^{}", k + 1, e) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// Canonical `.pcp` text: header, nontrivial powers, nontrivial commutators.
pub fn write_pcp(pres: &PcPresentation) -> String {
    let mut s = String::new();
    writeln!(s, "p {}", pres.prime()).unwrap();
    writeln!(s, "gens {}", pres.num_gens()).unwrap();
    let (pows, comms) = pres.relations();
    for (i, w) in pows {
        writeln!(s, "pow {} = {}", i + 1, format_word(&w)).unwrap();
    }
    for (j, i, w) in comms {
        writeln!(s, "comm {} {} = {}", j + 1, i + 1, format_word(&w)).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q8: &str = "# quaternion group\np 2\ngens 3\npow 1 = g3\npow 2 = g3\ncomm 2 1 = g3\n";

    #[test]
    fn parses_q8() {
        let g = parse_pcp(Q8).unwrap();
        assert_eq!(g.group.order(), 8);
        assert_eq!(write_pcp(&g.presentation), Q8.replace("# quaternion group\n", ""));
    }

    #[test]
    fn empty_relations_give_elementary_abelian() {
        let g = parse_pcp("p 3\ngens 2\n").unwrap();
        assert_eq!(g.group.order(), 9);
        assert!(g.group.is_abelian());
        assert_eq!(g.group.p_rank(), 2);
    }

    #[test]
    fn rejects_bad_comm_order() {
        let err = parse_pcp("p 2\ngens 3\ncomm 1 2 = g3\n").unwrap_err();
        assert!(matches!(err, PcpError::Syntax { line: 3, .. }), "{err}");
        let err = parse_pcp("p 2\ngens 3\ncomm 2 2 = g3\n").unwrap_err();
        assert!(matches!(err, PcpError::Syntax { line: 3, .. }));
    }

    #[test]
    fn rejects_malformed() {
        for (text, line) in [
            ("p 4\ngens 1\n", 1),
            ("p 2\ngens 2\npow 1 = g1\n", 3),
            ("p 2\ngens 2\npow 1 = h2\n", 3),
            ("p 2\ngens 2\npow 3 = g2\n", 3),
            ("p 3\ngens 2\npow 1 = g2^3\n", 3),
            ("p 2\n\ngens 2\nfoo\n", 4),
        ] {
            match parse_pcp(text) {
                Err(PcpError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("expected syntax error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_inconsistent() {
        let err = parse_pcp("p 2\ngens 3\npow 1 = g2\ncomm 2 1 = g3\n").unwrap_err();
        assert!(matches!(err, PcpError::Inconsistent(_)));
    }
}
