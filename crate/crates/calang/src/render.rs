//! Space-time diagrams: ASCII grids and binary PGM images.
//!
//! Row `t` of a diagram is the configuration after `t` steps, drawn
//! over a fixed viewport. ASCII uses one glyph per cell with `.` for
//! the quiescent symbol; PGM spreads gray levels evenly over the
//! alphabet order with the quiescent symbol white, so diagrams are
//! byte-diffable.

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Sym};
use crate::config::FiniteConfiguration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Pgm,
}

/// Rendering parameters; `viewport: None` covers the union of all row
/// intervals.
#[derive(Debug, Clone, Default)]
pub struct RenderSpec {
    pub viewport: Option<(i64, i64)>,
    pub glyph_overrides: BTreeMap<String, char>,
}

/// Default glyph per symbol: the quiescent symbol is `.`, single-char
/// tokens draw themselves, and alphabets with longer tokens get `a`,
/// `b`, … assigned in alphabet order.
pub fn glyph_map(alphabet: &Alphabet) -> BTreeMap<Sym, char> {
    let mut map = BTreeMap::new();
    map.insert(alphabet.quiescent(), '.');
    if alphabet.single_char() {
        for sym in alphabet.active_symbols() {
            map.insert(sym, alphabet.token(sym).chars().next().unwrap());
        }
    } else {
        for (k, sym) in alphabet.active_symbols().enumerate() {
            map.insert(sym, (b'a' + (k % 26) as u8) as char);
        }
    }
    map
}

fn resolve_glyphs(
    alphabet: &Alphabet,
    spec: &RenderSpec,
) -> Result<BTreeMap<Sym, char>, String> {
    let mut map = glyph_map(alphabet);
    for (token, glyph) in &spec.glyph_overrides {
        let sym = alphabet
            .lookup(token)
            .ok_or_else(|| format!("--glyphs names unknown token `{token}`"))?;
        map.insert(sym, *glyph);
    }
    Ok(map)
}

/// Union of the rows' active intervals.
pub fn auto_viewport(rows: &[FiniteConfiguration]) -> Option<(i64, i64)> {
    let mut out: Option<(i64, i64)> = None;
    for row in rows {
        if let Some((lo, hi)) = row.interval() {
            out = Some(match out {
                None => (lo, hi),
                Some((a, b)) => (a.min(lo), b.max(hi)),
            });
        }
    }
    out
}

/// One line per row over the viewport.
pub fn render_ascii(rows: &[FiniteConfiguration], spec: &RenderSpec) -> Result<String, String> {
    if rows.is_empty() {
        return Ok(String::new());
    }
    let alphabet = rows[0].alphabet().clone();
    let glyphs = resolve_glyphs(&alphabet, spec)?;
    let Some((lo, hi)) = spec.viewport.or_else(|| auto_viewport(rows)) else {
        return Ok(rows.iter().map(|_| "\n").collect());
    };
    let mut out = String::new();
    for row in rows {
        for z in lo..=hi {
            out.push(glyphs[&row.get(z)]);
        }
        out.push('\n');
    }
    Ok(out)
}

/// Gray level per symbol: quiescent is white (255); the other symbols
/// are spread evenly from black upward in alphabet order.
pub fn gray_map(alphabet: &Alphabet) -> BTreeMap<Sym, u8> {
    let mut map = BTreeMap::new();
    map.insert(alphabet.quiescent(), 255u8);
    let actives: Vec<Sym> = alphabet.active_symbols().collect();
    let m = actives.len().max(1);
    for (k, sym) in actives.into_iter().enumerate() {
        map.insert(sym, ((255 * k) / m) as u8);
    }
    map
}

/// A binary (P5) PGM image, one pixel per cell. An all-quiescent
/// diagram renders as a single white column.
pub fn render_pgm(rows: &[FiniteConfiguration], spec: &RenderSpec) -> Vec<u8> {
    let height = rows.len();
    if height == 0 {
        return b"P5\n1 1\n255\n\xff".to_vec();
    }
    let alphabet = rows[0].alphabet().clone();
    let grays = gray_map(&alphabet);
    let (lo, hi) = spec
        .viewport
        .or_else(|| auto_viewport(rows))
        .unwrap_or((0, 0));
    let width = (hi - lo + 1) as usize;
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    for row in rows {
        for z in lo..=hi {
            out.push(grays[&row.get(z)]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::constructions::builtin;
    use crate::language::pad;

    fn counting_rows(steps: usize) -> Vec<FiniteConfiguration> {
        let c = builtin("anbn").unwrap();
        let ab = c.alphabet();
        let c0 = pad(ab, &ab.parse_word("ab").unwrap());
        c.rule.evolve(&c0, steps, None).unwrap()
    }

    #[test]
    fn ascii_diagram_of_the_counting_rule() {
        let rows = counting_rows(2);
        let text = render_ascii(&rows, &RenderSpec::default()).unwrap();
        assert_eq!(text, "..ab..\n.aabb.\naaabbb\n");
    }

    #[test]
    fn explicit_viewport_clips() {
        let rows = counting_rows(2);
        let spec = RenderSpec {
            viewport: Some((0, 1)),
            ..RenderSpec::default()
        };
        assert_eq!(render_ascii(&rows, &spec).unwrap(), "ab\nab\nab\n");
    }

    #[test]
    fn glyph_overrides_apply() {
        let rows = counting_rows(1);
        let mut spec = RenderSpec::default();
        spec.glyph_overrides.insert("a".into(), 'x');
        assert_eq!(render_ascii(&rows, &spec).unwrap(), ".ab.\nxabb\n".replace('a', "x"));
    }

    #[test]
    fn pgm_is_deterministic_and_well_formed() {
        let rows = counting_rows(2);
        let bytes = render_pgm(&rows, &RenderSpec::default());
        assert!(bytes.starts_with(b"P5\n6 3\n255\n"));
        assert_eq!(bytes.len(), b"P5\n6 3\n255\n".len() + 18);
        assert_eq!(bytes, render_pgm(&rows, &RenderSpec::default()));
    }

    #[test]
    fn gray_levels_spread_with_quiescent_white() {
        let ab = Alphabet::lowercase("abc");
        let grays = gray_map(&ab);
        assert_eq!(grays[&ab.quiescent()], 255);
        let levels: Vec<u8> = ab.active_symbols().map(|s| grays[&s]).collect();
        assert_eq!(levels, vec![0, 85, 170]);
    }

    #[test]
    fn multi_char_tokens_get_letter_glyphs() {
        let ab = Alphabet::with_quiescent_first(["a-1", "a1"]).unwrap();
        let glyphs = glyph_map(&ab);
        let shown: Vec<char> = ab.active_symbols().map(|s| glyphs[&s]).collect();
        assert_eq!(shown, vec!['a', 'b']);
    }
}
