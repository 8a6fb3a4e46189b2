use super::{Crossing, LinkDiagram};
use crate::error::{Error, Result};

/// Parse whitespace separated `X(a,b,c,d)` and `O` / `O(label)` tokens.
/// `#` starts a comment running to the end of the line.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut crossings = Vec::new();
    let mut loops = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            parse_token(tok, lineno + 1, &mut crossings, &mut loops)?;
        }
    }
    LinkDiagram::from_parts(crossings, loops)
}

fn parse_token(tok: &str, line: usize, crossings: &mut Vec<Crossing>, loops: &mut Vec<Option<String>>) -> Result<()> {
    if tok == "O" {
        loops.push(None);
        return Ok(());
    }
    let cut = tok.chars().next().map_or(0, char::len_utf8);
    let (head, rest) = tok.split_at(cut);
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::malformed(line, format!("bad token `{tok}`")))?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.iter().any(|p| p.is_empty() || p.contains(['(', ')'])) {
        return Err(Error::malformed(line, format!("bad label in `{tok}`")));
    }
    match (head, parts.len()) {
        ("X", 4) => {
            crossings.push(Crossing { slots: [0, 1, 2, 3].map(|k| parts[k].to_string()) });
            Ok(())
        }
        ("O", 1) => {
            loops.push(Some(parts[0].to_string()));
            Ok(())
        }
        _ => Err(Error::malformed(line, format!("bad token `{tok}`"))),
    }
}

impl LinkDiagram {
    pub fn to_pd(&self) -> String {
        let mut toks: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X({},{},{},{})", x.slots[0], x.slots[1], x.slots[2], x.slots[3]))
            .collect();
        toks.extend(self.loops.iter().map(|l| match l {
            Some(l) => format!("O({l})"),
            None => "O".to_string(),
        }));
        toks.join(" ")
    }
}

impl std::fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_pd())
    }
}

impl std::str::FromStr for LinkDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_round_trip() {
        let text = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
        let d = parse_pd(text).unwrap();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!(d.to_pd(), text);
        assert_eq!(parse_pd(&d.to_pd()).unwrap(), d);
    }

    #[test]
    fn empty_and_loops() {
        let d = parse_pd("").unwrap();
        assert_eq!((d.n_crossings(), d.n_free_loops()), (0, 0));
        let d = parse_pd("# two unknots\nO O(x)\n").unwrap();
        assert_eq!(d.n_free_loops(), 2);
        assert_eq!(d.to_pd(), "O O(x)");
    }

    #[test]
    fn arc_degree() {
        match parse_pd("X(1,2,3,4)") {
            Err(Error::ArcDegree { count: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_pd("X(a,a,a,b) X(b,c,c,d)"), Err(Error::ArcDegree { .. })));
    }

    #[test]
    fn malformed() {
        for bad in ["X(1,2,3)", "é(1)", "Y(1,1,2,2)", "X(1,1,2,2", "X(1,,2,2)", "X[1,1,2,2]"] {
            assert!(matches!(parse_pd(bad), Err(Error::MalformedInput { .. })), "{bad}");
        }
        match parse_pd("X(1,1,2,2)\n  junk") {
            Err(Error::MalformedInput { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn opaque_labels() {
        let d = parse_pd("X(a,b,c,d) X(c,b,a,d)").unwrap();
        assert_eq!(d.n_arcs(), 4);
    }
}
