//! The catalog text format.
//!
//! ```text
//! catalog     := "catalog" STRING "dimension" STRING ["mode" ("sets"|"declared")] "{" item* "}"
//! item        := assumption | model | object | arrow | formulation | convertible
//! assumption  := "assumption" IDENT STRING
//! model       := "model" IDENT "{" "assumes" IDENT+ "}"
//! object      := "object" IDENT+                          # declared mode only
//! arrow       := "arrow" IDENT ":" IDENT "->" IDENT       # declared mode only
//! formulation := "formulation" IDENT "of" IDENT ["via" STRING] "expr" STRING
//! convertible := "convertible" IDENT IDENT IDENT*
//! ```
//!
//! `#` starts a line comment. `IDENT` is `[A-Za-z_][A-Za-z0-9_-]*`; keywords
//! are reserved and case-sensitive. `STRING` is double-quoted with `\"` and
//! `\\` escapes and may not contain a raw newline. Files are UTF-8 with an
//! optional BOM; LF and CRLF are both accepted, the serializer emits LF.
//! String payloads are uninterpreted: assumption sentences and formulation
//! expressions may freely mix natural language and mathematical notation.

mod lexer;
mod parser;
mod serialize;

pub use parser::{parse, parse_catalog, LoadError, Parsed};
pub use serialize::serialize;
