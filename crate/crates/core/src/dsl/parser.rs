//! Recursive-descent parser with error recovery.
//!
//! A failed declaration never hides later ones: on error the parser records a
//! diagnostic and resynchronises at the next top-level keyword, `}`, or end
//! of input.

use crate::catalog::{build_catalog, BuildError, Catalog};
use crate::decl::{CatalogHeader, CatalogMode, Declaration};
use crate::diag::{Diagnostic, SourceSpan};

use super::lexer::{Keyword, Lexer, Token, TokenKind};

/// Output of [`parse`]: the catalog header (if one was found), the item
/// declarations, and every diagnostic in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub header: Option<CatalogHeader>,
    pub decls: Vec<Declaration>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Parsed {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }
}

/// Why a document could not be turned into a catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadError {
    /// Lexical or syntax errors; warnings may be interleaved.
    Parse(Vec<Diagnostic>),
    /// The text parsed but the declarations violate structural rules.
    Build(Vec<BuildError>),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Parse(diags) => {
                let n = diags.iter().filter(|d| d.is_error()).count();
                write!(f, "{n} parse error(s)")
            }
            LoadError::Build(errors) => write!(f, "{} catalog error(s)", errors.len()),
        }
    }
}

impl std::error::Error for LoadError {}

/// Parse a document. Deterministic: identical input bytes yield identical
/// declarations and diagnostics. Empty input parses to nothing, successfully.
pub fn parse(text: &str) -> Parsed {
    let mut diagnostics = Vec::new();
    let tokens = Lexer::new(text).tokenize(&mut diagnostics);
    let mut parser = Parser {
        tokens,
        pos: 0,
        diagnostics,
        entered_block: false,
    };
    let (header, decls) = parser.parse_document();
    Parsed {
        header,
        decls,
        diagnostics: parser.diagnostics,
    }
}

/// Parse and build in one step.
pub fn parse_catalog(text: &str) -> Result<Catalog, LoadError> {
    let parsed = parse(text);
    if parsed.has_errors() {
        return Err(LoadError::Parse(parsed.diagnostics));
    }
    build_catalog(parsed.header.as_ref(), &parsed.decls).map_err(LoadError::Build)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diagnostics: Vec<Diagnostic>,
    /// Whether the catalog block's `{` was actually consumed; gates the
    /// unterminated-block diagnostic.
    entered_block: bool,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> Token {
        let token = self.tokens[self.pos.min(self.tokens.len() - 1)].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        token
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek().kind, TokenKind::Eof)
    }

    fn error_here(&mut self, expected: &str) {
        let found = self.peek().kind.describe();
        let span = self.peek().span;
        self.diagnostics.push(Diagnostic::error(
            "E004",
            span,
            format!("unexpected {found}, expected {expected}"),
        ));
    }

    /// Skip tokens until the next point a declaration can start.
    fn sync_to_item(&mut self) {
        loop {
            match &self.peek().kind {
                TokenKind::Eof | TokenKind::RBrace => return,
                TokenKind::Keyword(kw) if is_item_keyword(*kw) || *kw == Keyword::Catalog => {
                    return;
                }
                _ => {
                    self.advance();
                }
            }
        }
    }

    fn expect_ident(&mut self, what: &str) -> Option<(String, SourceSpan)> {
        match &self.peek().kind {
            TokenKind::Ident(_) => {
                let token = self.advance();
                let TokenKind::Ident(id) = token.kind else {
                    unreachable!()
                };
                Some((id, token.span))
            }
            _ => {
                self.error_here(what);
                None
            }
        }
    }

    fn expect_string(&mut self, what: &str) -> Option<String> {
        match &self.peek().kind {
            TokenKind::Str(_) => {
                let token = self.advance();
                let TokenKind::Str(s) = token.kind else {
                    unreachable!()
                };
                Some(s)
            }
            _ => {
                self.error_here(what);
                None
            }
        }
    }

    fn expect_keyword(&mut self, kw: Keyword) -> bool {
        if self.peek().kind == TokenKind::Keyword(kw) {
            self.advance();
            true
        } else {
            self.error_here(&format!("`{}`", kw.as_str()));
            false
        }
    }

    fn eat_keyword(&mut self, kw: Keyword) -> bool {
        if self.peek().kind == TokenKind::Keyword(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn parse_document(&mut self) -> (Option<CatalogHeader>, Vec<Declaration>) {
        if self.at_eof() {
            return (None, Vec::new());
        }

        let mut header = None;
        if self.peek().kind == TokenKind::Keyword(Keyword::Catalog) {
            header = self.parse_header();
        } else {
            self.error_here("`catalog`");
            self.sync_to_item();
            if self.peek().kind == TokenKind::Keyword(Keyword::Catalog) {
                header = self.parse_header();
            }
        }

        let decls = self.parse_items();

        if !self.at_eof() {
            self.error_here("end of input");
        }
        (header, decls)
    }

    fn parse_header(&mut self) -> Option<CatalogHeader> {
        let span = self.peek().span;
        self.expect_keyword(Keyword::Catalog);
        let name = self.expect_string("catalog name string")?;
        if !self.expect_keyword(Keyword::Dimension) {
            return None;
        }
        let dimension = self.expect_string("dimension string")?;
        let mut mode = None;
        if self.eat_keyword(Keyword::Mode) {
            mode = match &self.peek().kind {
                TokenKind::Keyword(Keyword::Sets) => {
                    self.advance();
                    Some(CatalogMode::Sets)
                }
                TokenKind::Keyword(Keyword::Declared) => {
                    self.advance();
                    Some(CatalogMode::Declared)
                }
                _ => {
                    self.error_here("`sets` or `declared`");
                    None
                }
            };
        }
        if matches!(self.peek().kind, TokenKind::LBrace) {
            self.advance();
            self.entered_block = true;
        } else {
            self.error_here("`{`");
            self.sync_to_item();
        }
        Some(CatalogHeader {
            name,
            dimension,
            mode,
            span: Some(span),
        })
    }

    fn parse_items(&mut self) -> Vec<Declaration> {
        let mut decls = Vec::new();
        loop {
            match self.peek().kind.clone() {
                TokenKind::RBrace => {
                    self.advance();
                    return decls;
                }
                TokenKind::Eof => {
                    if self.entered_block {
                        let span = self.peek().span;
                        self.diagnostics.push(Diagnostic::error(
                            "E006",
                            span,
                            "unterminated catalog block (missing `}`)",
                        ));
                    }
                    return decls;
                }
                TokenKind::Keyword(kw) if is_item_keyword(kw) => {
                    if let Some(decl) = self.parse_item(kw) {
                        decls.push(decl);
                    }
                }
                _ => {
                    self.error_here(
                        "a declaration keyword (`assumption`, `model`, `object`, `arrow`, \
                         `formulation`, `convertible`) or `}`",
                    );
                    self.advance();
                    self.sync_to_item();
                }
            }
        }
    }

    fn parse_item(&mut self, kw: Keyword) -> Option<Declaration> {
        let result = self.parse_item_inner(kw);
        if result.is_none() {
            self.sync_to_item();
        }
        result
    }

    fn parse_item_inner(&mut self, kw: Keyword) -> Option<Declaration> {
        let span = Some(self.peek().span);
        self.advance(); // the item keyword
        match kw {
            Keyword::Assumption => {
                let (id, _) = self.expect_ident("assumption identifier")?;
                let text = self.expect_string("assumption text string")?;
                Some(Declaration::Assumption { id, text, span })
            }
            Keyword::Model => {
                let (id, _) = self.expect_ident("model identifier")?;
                if !matches!(self.peek().kind, TokenKind::LBrace) {
                    self.error_here("`{`");
                    return None;
                }
                self.advance();
                if !self.expect_keyword(Keyword::Assumes) {
                    return None;
                }
                let mut assumes = Vec::new();
                while let TokenKind::Ident(_) = self.peek().kind {
                    let token = self.advance();
                    if let TokenKind::Ident(id) = token.kind {
                        assumes.push(id);
                    }
                }
                if assumes.is_empty() {
                    let at = self.peek().span;
                    self.diagnostics.push(Diagnostic::error(
                        "E005",
                        at,
                        "expected at least one assumption id",
                    ));
                    if matches!(self.peek().kind, TokenKind::RBrace) {
                        self.advance();
                    }
                    return None;
                }
                if !matches!(self.peek().kind, TokenKind::RBrace) {
                    self.error_here("`}`");
                    return None;
                }
                self.advance();
                Some(Declaration::Model { id, assumes, span })
            }
            Keyword::Object => {
                let mut ids = Vec::new();
                while let TokenKind::Ident(_) = self.peek().kind {
                    let token = self.advance();
                    if let TokenKind::Ident(id) = token.kind {
                        ids.push(id);
                    }
                }
                if ids.is_empty() {
                    self.error_here("at least one object identifier");
                    return None;
                }
                Some(Declaration::Objects { ids, span })
            }
            Keyword::Arrow => {
                let (id, _) = self.expect_ident("arrow identifier")?;
                if !matches!(self.peek().kind, TokenKind::Colon) {
                    self.error_here("`:`");
                    return None;
                }
                self.advance();
                let (source, _) = self.expect_ident("source object identifier")?;
                if !matches!(self.peek().kind, TokenKind::ArrowOp) {
                    self.error_here("`->`");
                    return None;
                }
                self.advance();
                let (target, _) = self.expect_ident("target object identifier")?;
                Some(Declaration::Arrow {
                    id,
                    source,
                    target,
                    span,
                })
            }
            Keyword::Formulation => {
                let (id, _) = self.expect_ident("formulation identifier")?;
                if !self.expect_keyword(Keyword::Of) {
                    return None;
                }
                let (of_model, _) = self.expect_ident("model identifier")?;
                let mapping_label = if self.eat_keyword(Keyword::Via) {
                    Some(self.expect_string("formalisation mapping string")?)
                } else {
                    None
                };
                if !self.expect_keyword(Keyword::Expr) {
                    return None;
                }
                let expr = self.expect_string("expression string")?;
                Some(Declaration::Formulation {
                    id,
                    of_model,
                    mapping_label,
                    expr,
                    span,
                })
            }
            Keyword::Convertible => {
                let mut members = Vec::new();
                while let TokenKind::Ident(_) = self.peek().kind {
                    let token = self.advance();
                    if let TokenKind::Ident(id) = token.kind {
                        members.push(id);
                    }
                }
                if members.len() < 2 {
                    self.error_here("at least two formulation identifiers");
                    return None;
                }
                Some(Declaration::Convertible { members, span })
            }
            _ => unreachable!("not an item keyword"),
        }
    }
}

fn is_item_keyword(kw: Keyword) -> bool {
    matches!(
        kw,
        Keyword::Assumption
            | Keyword::Model
            | Keyword::Object
            | Keyword::Arrow
            | Keyword::Formulation
            | Keyword::Convertible
    )
}
