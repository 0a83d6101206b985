//! Tokenizer for the catalog text format.

use crate::diag::{Diagnostic, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    Catalog,
    Dimension,
    Mode,
    Sets,
    Declared,
    Assumption,
    Model,
    Assumes,
    Object,
    Arrow,
    Formulation,
    Convertible,
    Of,
    Via,
    Expr,
}

impl Keyword {
    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Catalog => "catalog",
            Keyword::Dimension => "dimension",
            Keyword::Mode => "mode",
            Keyword::Sets => "sets",
            Keyword::Declared => "declared",
            Keyword::Assumption => "assumption",
            Keyword::Model => "model",
            Keyword::Assumes => "assumes",
            Keyword::Object => "object",
            Keyword::Arrow => "arrow",
            Keyword::Formulation => "formulation",
            Keyword::Convertible => "convertible",
            Keyword::Of => "of",
            Keyword::Via => "via",
            Keyword::Expr => "expr",
        }
    }

    fn from_str(s: &str) -> Option<Keyword> {
        Some(match s {
            "catalog" => Keyword::Catalog,
            "dimension" => Keyword::Dimension,
            "mode" => Keyword::Mode,
            "sets" => Keyword::Sets,
            "declared" => Keyword::Declared,
            "assumption" => Keyword::Assumption,
            "model" => Keyword::Model,
            "assumes" => Keyword::Assumes,
            "object" => Keyword::Object,
            "arrow" => Keyword::Arrow,
            "formulation" => Keyword::Formulation,
            "convertible" => Keyword::Convertible,
            "of" => Keyword::Of,
            "via" => Keyword::Via,
            "expr" => Keyword::Expr,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Keyword(Keyword),
    Ident(String),
    Str(String),
    LBrace,
    RBrace,
    Colon,
    ArrowOp,
    Eof,
}

impl TokenKind {
    /// Short description for diagnostics.
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Keyword(k) => format!("keyword `{}`", k.as_str()),
            TokenKind::Ident(id) => format!("identifier `{id}`"),
            TokenKind::Str(_) => "string".to_owned(),
            TokenKind::LBrace => "`{`".to_owned(),
            TokenKind::RBrace => "`}`".to_owned(),
            TokenKind::Colon => "`:`".to_owned(),
            TokenKind::ArrowOp => "`->`".to_owned(),
            TokenKind::Eof => "end of input".to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

pub struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    pub fn new(text: &'a str) -> Self {
        // A leading byte-order mark is not part of the document.
        let text = text.strip_prefix('\u{FEFF}').unwrap_or(text);
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    /// Tokenize the whole input. Lexical problems become diagnostics; the
    /// token stream always ends with `Eof`.
    pub fn tokenize(mut self, diagnostics: &mut Vec<Diagnostic>) -> Vec<Token> {
        let mut tokens = Vec::new();
        loop {
            self.skip_trivia();
            let line = self.line;
            let column = self.column;
            let Some(&c) = self.chars.peek() else {
                tokens.push(Token {
                    kind: TokenKind::Eof,
                    span: SourceSpan::new(line, column, 1),
                });
                return tokens;
            };
            match c {
                '{' => {
                    self.bump();
                    tokens.push(Token {
                        kind: TokenKind::LBrace,
                        span: SourceSpan::new(line, column, 1),
                    });
                }
                '}' => {
                    self.bump();
                    tokens.push(Token {
                        kind: TokenKind::RBrace,
                        span: SourceSpan::new(line, column, 1),
                    });
                }
                ':' => {
                    self.bump();
                    tokens.push(Token {
                        kind: TokenKind::Colon,
                        span: SourceSpan::new(line, column, 1),
                    });
                }
                '-' => {
                    self.bump();
                    if self.chars.peek() == Some(&'>') {
                        self.bump();
                        tokens.push(Token {
                            kind: TokenKind::ArrowOp,
                            span: SourceSpan::new(line, column, 2),
                        });
                    } else {
                        diagnostics.push(Diagnostic::error(
                            "E001",
                            SourceSpan::new(line, column, 1),
                            "invalid character `-` (expected `->`)",
                        ));
                    }
                }
                '"' => {
                    let token = self.lex_string(line, column, diagnostics);
                    tokens.push(token);
                }
                c if is_ident_start(c) => {
                    let word = self.lex_word();
                    let span = SourceSpan::new(line, column, word.chars().count() as u32);
                    let kind = match Keyword::from_str(&word) {
                        Some(kw) => TokenKind::Keyword(kw),
                        None => TokenKind::Ident(word),
                    };
                    tokens.push(Token { kind, span });
                }
                other => {
                    self.bump();
                    diagnostics.push(Diagnostic::error(
                        "E001",
                        SourceSpan::new(line, column, 1),
                        format!("invalid character `{}`", other.escape_default()),
                    ));
                }
            }
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            match c {
                ' ' | '\t' | '\r' => {
                    self.bump();
                }
                '\n' => {
                    self.bump();
                }
                '#' => {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn lex_word(&mut self) -> String {
        let mut word = String::new();
        while let Some(&c) = self.chars.peek() {
            if is_ident_continue(c) {
                word.push(c);
                self.bump();
            } else {
                break;
            }
        }
        word
    }

    fn lex_string(&mut self, line: u32, column: u32, diagnostics: &mut Vec<Diagnostic>) -> Token {
        self.bump(); // opening quote
        let mut value = String::new();
        let mut terminated = false;
        loop {
            match self.chars.peek() {
                None | Some('\n') => break,
                Some('"') => {
                    self.bump();
                    terminated = true;
                    break;
                }
                Some('\\') => {
                    let esc_line = self.line;
                    let esc_column = self.column;
                    self.bump();
                    match self.chars.peek() {
                        Some('"') => {
                            value.push('"');
                            self.bump();
                        }
                        Some('\\') => {
                            value.push('\\');
                            self.bump();
                        }
                        Some(&other) if other != '\n' => {
                            diagnostics.push(Diagnostic::error(
                                "E003",
                                SourceSpan::new(esc_line, esc_column, 2),
                                format!(
                                    "invalid escape sequence `\\{}` (only `\\\"` and `\\\\` are recognised)",
                                    other.escape_default()
                                ),
                            ));
                            value.push(other);
                            self.bump();
                        }
                        _ => break,
                    }
                }
                Some(&c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
        if !terminated {
            diagnostics.push(Diagnostic::error(
                "E002",
                SourceSpan::new(line, column, 1),
                "unterminated string literal",
            ));
        }
        let length = (self.column - column).max(1);
        Token {
            kind: TokenKind::Str(value),
            span: SourceSpan::new(line, column, length),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}
