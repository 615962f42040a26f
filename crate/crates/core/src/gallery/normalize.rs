//! Normal form for verdict strings, so that the paper's LaTeX and the
//! computed labels can be compared.

const REPLACEMENTS: [(&str, &str); 14] = [
    (r"\mathbb Cong", "≅"),
    (r"\cong", "≅"),
    (r"\simeq", "≅"),
    (r"\subset", "⊂"),
    (r"\mathbb{P}", "P"),
    (r"\mathbb P", "P"),
    ("ℙ", "P"),
    (r"\quad", ""),
    (r"(\star)", ""),
    (r"\text", ""),
    ("$", ""),
    ("−", "-"),
    ("the quartic surface", ""),
    ("isomorphism", "≅"),
];

fn digit_value(c: char) -> Option<(char, bool)> {
    const SUB: &str = "₀₁₂₃₄₅₆₇₈₉";
    const SUP: &str = "⁰¹²³⁴⁵⁶⁷⁸⁹";
    if let Some(k) = SUB.chars().position(|d| d == c) {
        return Some((char::from(b'0' + k as u8), false));
    }
    SUP.chars().position(|d| d == c).map(|k| (char::from(b'0' + k as u8), true))
}

/// Rewrites `X^{i,j}` (a quartic in P^4) as `Y_4 ⊂ P^4`.
fn replace_quartic_names(s: &str) -> String {
    let mut out = String::new();
    let mut rest = s;
    while let Some(k) = rest.find("X^{") {
        out.push_str(&rest[..k]);
        match rest[k..].find('}') {
            Some(e) => {
                out.push_str("Y_4 ⊂ P^4");
                rest = &rest[k + e + 1..];
            }
            None => {
                out.push_str(&rest[k..]);
                rest = "";
            }
        }
    }
    out.push_str(rest);
    out
}

/// `del Pezzo fibration of degree N` -> `dPN fibration`; `flop in N lines`
/// -> `N flops`.
fn replace_phrases(s: &str) -> String {
    let mut s = s.to_string();
    if let Some(k) = s.find("del Pezzo fibration of degree ") {
        let tail = &s[k + "del Pezzo fibration of degree ".len()..];
        let d: String = tail.chars().take_while(|c| c.is_ascii_digit()).collect();
        let after = &tail[d.len()..];
        s = format!("{}dP{} fibration{}", &s[..k], d, after);
    }
    if let Some(k) = s.find("flop in ") {
        let tail = &s[k + "flop in ".len()..];
        let d: String = tail.chars().take_while(|c| c.is_ascii_digit()).collect();
        if let Some(after) = tail[d.len()..].strip_prefix(" lines") {
            let head = s[..k].trim_end();
            let head = head.strip_suffix(" a").or_else(|| (head == "a").then_some("")).unwrap_or(head);
            s = format!("{}{} flops{}", head, d, after);
        }
    }
    s
}

/// Expands `a^k` inside a weight list and sorts it.
fn weight_list(inner: &str) -> String {
    let mut ws: Vec<u64> = Vec::new();
    for part in inner.split(',').filter(|p| !p.is_empty()) {
        let (w, k) = match part.split_once('^') {
            Some((w, k)) => (w, k.parse::<usize>().unwrap_or(1)),
            None => (part, 1),
        };
        match w.parse::<u64>() {
            Ok(w) => ws.extend(std::iter::repeat(w).take(k)),
            Err(_) => return inner.to_string(),
        }
    }
    ws.sort_unstable();
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
}

fn rewrite_projective(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let standalone = c == 'P' && (i == 0 || chars[i - 1] != 'd');
        if standalone && chars.get(i + 1) == Some(&'(') {
            if let Some(len) = chars[i + 2..].iter().position(|&d| d == ')') {
                let inner: String = chars[i + 2..i + 2 + len].iter().collect();
                out.push_str(&format!("P({})", weight_list(&inner)));
                i += len + 3;
                continue;
            }
        }
        if standalone && chars.get(i + 1) == Some(&'^') {
            let digits: String = chars[i + 2..].iter().take_while(|d| d.is_ascii_digit()).collect();
            if let Ok(n) = digits.parse::<usize>() {
                out.push_str(&format!("P({})", vec!["1"; n + 1].join(",")));
                i += 2 + digits.len();
                continue;
            }
        }
        out.push(c);
        i += 1;
    }
    out
}

/// Canonical form of a decomposition or endpoint string.
pub fn normalize(s: &str) -> String {
    let mut t = s.to_string();
    for (a, b) in REPLACEMENTS {
        t = t.replace(a, b);
    }
    t = replace_quartic_names(&t);
    t = replace_phrases(&t);
    let mut flat = String::new();
    for c in t.chars() {
        match c {
            c if c.is_whitespace() => {}
            '{' | '}' | '_' | '\\' => {}
            c => match digit_value(c) {
                Some((d, true)) => {
                    flat.push('^');
                    flat.push(d);
                }
                Some((d, false)) => flat.push(d),
                None => flat.push(c),
            },
        }
    }
    rewrite_projective(&flat)
}

/// Decompositions agree exactly; a bare descriptor only has to occur.
/// Isomorphism steps are ignored as a fallback, since printed summaries
/// sometimes leave them out.
pub fn decomposition_matches(expected: &str, computed: &str) -> bool {
    let (e, c) = (normalize(expected), normalize(computed));
    if e == c {
        return true;
    }
    if e.starts_with('(') {
        return c.contains(&e);
    }
    let strip = |x: &str| {
        let parts: Vec<&str> = x.split("then").filter(|p| *p != "≅").collect();
        parts.join("then")
    };
    strip(&e) == strip(&c)
}

/// Endpoints agree exactly; an expected string without a base only fixes
/// the kind of endpoint.
pub fn endpoint_matches(expected: &str, computed: &str) -> bool {
    let (e, c) = (normalize(expected), normalize(computed));
    if e.contains("over") || e.contains('⊂') {
        e == c
    } else {
        c.starts_with(&e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_spaces() {
        assert_eq!(normalize(r"Y_{4,4}\subset \mathbb{P}(1^4, 2, 3)"), "Y4,4⊂P(1,1,1,1,2,3)");
        assert_eq!(normalize("Y₄,₆ ⊂ ℙ(1²,2²,3²)"), "Y4,6⊂P(1,1,2,2,3,3)");
        assert_eq!(normalize(r"dP_2\text{ fibration over }\mathbb{P}^1"), "dP2fibrationoverP(1,1)");
        assert_eq!(normalize("Y_{6,6} ⊂ P(5,3,3,2,1,1)"), "Y6,6⊂P(1,1,2,3,3,5)");
        assert_eq!(normalize(r"X^{1,2}\quad(\star)"), normalize("Y_4 ⊂ P^4"));
    }

    #[test]
    fn decompositions() {
        assert!(decomposition_matches(
            r"\mathbb Cong \text{then 2 flips }(3,1,1,-1,-1;2)",
            "≅ then 2 flips (3,1,1,-1,-1;2)"
        ));
        assert!(decomposition_matches("flop in $12$ lines", "12 flops"));
        assert!(decomposition_matches("a flop in $4$ lines", "4 flops"));
        assert!(decomposition_matches("(7,1,1,-3,-1; 4)", "≅ then antiflip (7,1,1,-3,-1;4) then ≅"));
        assert!(decomposition_matches("isomorphism", "≅"));
        assert!(!decomposition_matches(r"\text{2 flops}", "4 flops"));
        assert!(!decomposition_matches(r"\text{2 flops then flip }(3,1,1,-1,-1;2)", "2 flops"));
    }

    #[test]
    fn endpoints() {
        assert!(endpoint_matches("del Pezzo fibration of degree $2$", "dP2 fibration over P^1"));
        assert!(endpoint_matches("conic bundle", "conic bundle over P^2"));
        assert!(!endpoint_matches(r"\text{conic bundle over }\mathbb{P}(1,1,2)", "conic bundle over P^2"));
        assert!(endpoint_matches(r"\text{ bad link }", "bad link: (-1,1): discrepancy 0 is not positive"));
        assert!(endpoint_matches(
            r"conic bundle over the quartic surface $S_4\subset \mathbb{P}(1,1,2,2)$",
            "conic bundle over S_4 ⊂ P(1,1,2,2)"
        ));
        assert!(!endpoint_matches(r"\text{ bad link }", "dP2 fibration over P^1"));
    }
}
