//! Tower files, reports and the builtin verification corpus behind the
//! `fieldsep` command.

pub mod commands;
pub mod corpus;
pub mod parse;
