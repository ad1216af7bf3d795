use super::Span;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Number(f64),
    /// Imaginary literal such as `2.5i`.
    Imag(f64),
    Punct(char),
    Newline,
    /// Lexical error; the message is reported by the parser.
    Error(String),
    Eof,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: Span,
    /// Byte offsets, used to check adjacency (`static-limit`).
    pub start: usize,
    pub end: usize,
}

const PUNCT: &[char] = &[
    '=', ',', '(', ')', '[', ']', '{', '}', '+', '-', '*', '/', ':',
];

pub(crate) fn tokenize(src: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    let byte_at = |k: usize| chars.get(k).map_or(src.len(), |&(b, _)| b);

    while i < chars.len() {
        let (b, ch) = chars[i];
        let span = Span { line, column: col };
        match ch {
            '\n' => {
                out.push(Token {
                    tok: Tok::Newline,
                    span,
                    start: b,
                    end: b + 1,
                });
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i].1 != '\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let s = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let text: String = chars[s..i].iter().map(|&(_, c)| c).collect();
                col += i - s;
                out.push(Token {
                    tok: Tok::Ident(text),
                    span,
                    start: b,
                    end: byte_at(i),
                });
            }
            c if c.is_ascii_digit()
                || (c == '.' && chars.get(i + 1).is_some_and(|x| x.1.is_ascii_digit())) =>
            {
                let s = i;
                while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.') {
                    i += 1;
                }
                if i < chars.len() && matches!(chars[i].1, 'e' | 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && matches!(chars[j].1, '+' | '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].1.is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].1.is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[s..i].iter().map(|&(_, c)| c).collect();
                let mut imaginary = false;
                if i < chars.len() && chars[i].1 == 'i' {
                    imaginary = true;
                    i += 1;
                }
                // a literal must not run into an identifier
                let mut bad_suffix = false;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    bad_suffix = true;
                    i += 1;
                }
                let full: String = chars[s..i].iter().map(|&(_, c)| c).collect();
                col += i - s;
                let tok = match text.parse::<f64>() {
                    Ok(v) if !bad_suffix && imaginary => Tok::Imag(v),
                    Ok(v) if !bad_suffix => Tok::Number(v),
                    _ => Tok::Error(format!("invalid numeric literal `{full}`")),
                };
                out.push(Token {
                    tok,
                    span,
                    start: b,
                    end: byte_at(i),
                });
            }
            c if PUNCT.contains(&c) => {
                out.push(Token {
                    tok: Tok::Punct(c),
                    span,
                    start: b,
                    end: b + c.len_utf8(),
                });
                i += 1;
                col += 1;
            }
            c => {
                out.push(Token {
                    tok: Tok::Error(format!("unexpected character `{c}`")),
                    span,
                    start: b,
                    end: b + c.len_utf8(),
                });
                i += 1;
                col += 1;
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, column: col },
        start: src.len(),
        end: src.len(),
    });
    out
}
